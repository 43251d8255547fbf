"""Builds the optional compiled kernels; the package works without them."""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"deltalp: compiled kernels skipped ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"deltalp: compiled kernels skipped ({exc})")


ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("deltalp._kernels", ["src/deltalp/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except Exception as exc:
    print(f"deltalp: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
