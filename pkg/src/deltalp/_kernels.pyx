# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; same semantics, typed loops.

Coefficients stay Python integers (they grow without bound), so the gain
comes from compiled loop control and direct list access.
"""

from fractions import Fraction

SPLITS = (8, 7, 9, 6, 10, 5, 11, 4, 12)
SPLIT_DEN = 16

cdef long long INF = 1 << 30


cpdef tuple taylor_shift(object M, object R, object c):
    cdef list m = list(M)
    cdef list r = list(R)
    cdef Py_ssize_t n = len(m), i, j
    cdef object ac = abs(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            m[j] = m[j] + c * m[j + 1]
            r[j] = r[j] + ac * r[j + 1]
    return m, r


cpdef tuple taylor_shift1(object M, object R):
    cdef list m = list(M)
    cdef list r = list(R)
    cdef Py_ssize_t n = len(m), i, j
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            m[j] = m[j] + m[j + 1]
            r[j] = r[j] + r[j + 1]
    return m, r


cpdef tuple scale(object M, object R, object u, object v):
    cdef Py_ssize_t d = len(M) - 1, i
    cdef list outM = [0] * (d + 1)
    cdef list outR = [0] * (d + 1)
    cdef list pv = [1] * (d + 1)
    cdef object pu = 1, f
    for i in range(1, d + 1):
        pv[i] = pv[i - 1] * v
    for i in range(d + 1):
        f = pu * pv[d - i]
        outM[i] = M[i] * f
        outR[i] = R[i] * f
        pu = pu * u
    return outM, outR


cpdef tuple negate_var(object M, object R):
    cdef list out = list(M)
    cdef Py_ssize_t i
    for i in range(1, len(out), 2):
        out[i] = -out[i]
    return out, list(R)


cdef inline int sign_set(object m, object r):
    cdef int s = 0
    cdef object lo = m - r
    cdef object hi = m + r
    if lo < 0:
        s |= 1
    if lo <= 0 and hi >= 0:
        s |= 2
    if hi > 0:
        s |= 4
    return s


cpdef tuple variation_bounds(object M, object R):
    cdef long long lo0 = 0, hi0 = 0
    cdef long long lon = INF, hin = -INF, lop = INF, hip = -INF
    cdef long long n_lo0, n_hi0, n_lon, n_hin, n_lop, n_hip, cand_lo, cand_hi
    cdef Py_ssize_t i, n = len(M)
    cdef int s
    for i in range(n):
        s = sign_set(M[i], R[i])
        n_lo0 = INF; n_hi0 = -INF
        n_lon = INF; n_hin = -INF
        n_lop = INF; n_hip = -INF
        if s & 2:
            n_lo0 = lo0; n_hi0 = hi0
            n_lon = lon; n_hin = hin
            n_lop = lop; n_hip = hip
        if s & 1:
            cand_lo = min(lo0, lon, lop + 1)
            cand_hi = max(hi0, hin, hip + 1)
            n_lon = min(n_lon, cand_lo)
            n_hin = max(n_hin, cand_hi)
        if s & 4:
            cand_lo = min(lo0, lop, lon + 1)
            cand_hi = max(hi0, hip, hin + 1)
            n_lop = min(n_lop, cand_lo)
            n_hip = max(n_hip, cand_hi)
        lo0 = n_lo0; hi0 = n_hi0; lon = n_lon; hin = n_hin; lop = n_lop; hip = n_hip
    return int(min(lo0, lon, lop)), int(max(hi0, hin, hip))


cpdef tuple descartes_bounds(object M, object R):
    cdef tuple t = taylor_shift1(list(M)[::-1], list(R)[::-1])
    return variation_bounds(t[0], t[1])


cdef object _sign(object vm, object vr):
    if vr == 0 and vm == 0:
        return 0
    if vm > vr:
        return 1
    if vm < -vr:
        return -1
    return None


cpdef object eval_sign(object M, object R, object num, object den):
    cdef Py_ssize_t d = len(M) - 1, i
    cdef object vm = 0, vr = 0, an = abs(num), pd = 1
    for i in range(d, -1, -1):
        vm = vm * num + M[i] * pd
        vr = vr * an + R[i] * pd
        pd = pd * den
    return _sign(vm, vr)


cpdef tuple split_right(object M, object R, object u, object v):
    cdef Py_ssize_t d = len(M) - 1, i
    cdef list AM = [0] * (d + 1)
    cdef list AR = [0] * (d + 1)
    cdef object pv = 1, pw = 1, w
    for i in range(d, -1, -1):
        AM[i] = M[i] * pv
        AR[i] = R[i] * pv
        pv = pv * v
    AM, AR = taylor_shift(AM, AR, u)
    w = v - u
    for i in range(d + 1):
        AM[i] = AM[i] * pw
        AR[i] = AR[i] * pw
        pw = pw * w
    return AM, AR


cpdef tuple normalize(object M, object R, Py_ssize_t keep=64):
    cdef object shift = None, b
    for r in R:
        if r == 0:
            return M, R
        b = r.bit_length() - keep
        if shift is None or b < shift:
            shift = b
    if shift is None or shift <= 0:
        return M, R
    return [m >> shift for m in M], [(r >> shift) + 2 for r in R]


cdef bint _all_ambiguous(object M, object R):
    cdef Py_ssize_t i
    for i in range(len(M)):
        if M[i] > R[i] or M[i] < -R[i]:
            return False
    return True


cdef tuple _reduce(object A, object B, long k):
    while k > 0 and not (A & 1) and not (B & 1):
        A >>= 1
        B >>= 1
        k -= 1
    return A, B, k


def _left_key(item):
    return Fraction(item[0], 1 << item[2])


def isolate01(M, R, long max_depth, long budget, max_roots):
    cdef list isolated = []
    cdef list clusters = []
    cdef list stack = [(M, R, 0, 1, 0)]
    cdef long nodes = 0, k, k2, width_bits, vmin, vmax
    cdef bint exhausted = False
    cdef object qM, qR, A, B, s, chosen, A2, B2, C2
    cdef int u, v
    while stack:
        qM, qR, A, B, k = stack.pop()
        nodes += 1
        vmin, vmax = descartes_bounds(qM, qR)
        if vmax == 0:
            continue
        if vmin == 1 and vmax == 1:
            isolated.append((A, B, k))
            if max_roots is not None and len(isolated) >= max_roots:
                break
            continue
        width_bits = k - (B - A).bit_length() + 1
        if width_bits > max_depth or nodes > budget or _all_ambiguous(qM, qR):
            clusters.append((A, B, k, vmin, vmax))
            if nodes > budget:
                exhausted = True
            continue
        chosen = None
        for u in SPLITS:
            s = eval_sign(qM, qR, u, SPLIT_DEN)
            if s is not None and s != 0:
                chosen = u
                break
        if chosen is None:
            clusters.append((A, B, k, vmin, vmax))
            continue
        u = chosen
        v = SPLIT_DEN
        LM, LR = scale(qM, qR, u, v)
        RM, RR = split_right(qM, qR, u, v)
        LM, LR = normalize(LM, LR)
        RM, RR = normalize(RM, RR)
        A2 = A * v
        B2 = B * v
        C2 = A2 + (B - A) * u
        k2 = k + 4
        stack.append((RM, RR) + _reduce(C2, B2, k2))
        stack.append((LM, LR) + _reduce(A2, C2, k2))
    isolated.sort(key=_left_key)
    clusters.sort(key=_left_key)
    return isolated, clusters, bool(exhausted)
