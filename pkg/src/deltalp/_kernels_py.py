"""Pure-Python hot kernels for Descartes root isolation.

A polynomial is a pair of integer lists ``(M, R)``: coefficient ``i`` of ``x**i``
lies in ``[M[i] - R[i], M[i] + R[i]]`` (all scaled by a common positive factor
that never matters for signs).  Every transform used here is linear; midpoints
go through the map itself and radii through the entrywise absolute value of the
map, so enclosures stay rigorous with no rounding at all.

The compiled twin in ``_kernels.pyx`` must keep identical semantics.
"""

from fractions import Fraction

SPLITS = (8, 7, 9, 6, 10, 5, 11, 4, 12)
SPLIT_DEN = 16


def taylor_shift(M, R, c):
    """Coefficients of ``q(x + c)`` for an integer ``c`` (radii shifted by ``|c|``)."""
    M = list(M)
    R = list(R)
    n = len(M)
    ac = abs(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            M[j] += c * M[j + 1]
            R[j] += ac * R[j + 1]
    return M, R


def taylor_shift1(M, R):
    M = list(M)
    R = list(R)
    n = len(M)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            M[j] += M[j + 1]
            R[j] += R[j + 1]
    return M, R


def scale(M, R, u, v):
    """Coefficients of ``v**d * q(u x / v)`` for positive integers ``u, v``."""
    d = len(M) - 1
    outM = [0] * (d + 1)
    outR = [0] * (d + 1)
    pu = 1
    pv = [1] * (d + 1)
    for i in range(1, d + 1):
        pv[i] = pv[i - 1] * v
    for i in range(d + 1):
        f = pu * pv[d - i]
        outM[i] = M[i] * f
        outR[i] = R[i] * f
        pu *= u
    return outM, outR


def negate_var(M, R):
    """Coefficients of ``q(-x)``."""
    return [(-m if i & 1 else m) for i, m in enumerate(M)], list(R)


def sign_set(m, r):
    """Bitmask of possible signs: 1 = negative, 2 = zero, 4 = positive."""
    lo = m - r
    hi = m + r
    s = 0
    if lo < 0:
        s |= 1
    if lo <= 0 <= hi:
        s |= 2
    if hi > 0:
        s |= 4
    return s


def variation_bounds(M, R):
    """Min and max sign variations over every coefficient vector in the box."""
    INF = 1 << 30
    # states: no nonzero seen yet, last nonzero negative, last nonzero positive
    lo0, hi0 = 0, 0
    lon, hin = INF, -INF
    lop, hip = INF, -INF
    for m, r in zip(M, R):
        s = sign_set(m, r)
        n_lo0, n_hi0 = INF, -INF
        n_lon, n_hin = INF, -INF
        n_lop, n_hip = INF, -INF
        if s & 2:
            n_lo0, n_hi0 = lo0, hi0
            n_lon, n_hin = lon, hin
            n_lop, n_hip = lop, hip
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
        lo0, hi0, lon, hin, lop, hip = n_lo0, n_hi0, n_lon, n_hin, n_lop, n_hip
    return min(lo0, lon, lop), max(hi0, hin, hip)


def descartes_bounds(M, R):
    """Bounds on the Descartes count of ``q`` on the open interval ``(0, 1)``."""
    TM, TR = taylor_shift1(M[::-1], R[::-1])
    return variation_bounds(TM, TR)


def eval_sign(M, R, num, den):
    """Sign of ``q(num/den)`` (``den > 0``), or ``None`` when it is not certain.

    An exactly zero value is reported as ``0``.
    """
    d = len(M) - 1
    vm = 0
    vr = 0
    an = abs(num)
    pd = 1
    # Horner on den**d * q(num/den)
    for i in range(d, -1, -1):
        vm = vm * num + M[i] * pd
        vr = vr * an + R[i] * pd
        pd *= den
    return _sign(vm, vr)


def _sign(vm, vr):
    if vr == 0 and vm == 0:
        return 0
    if vm > vr:
        return 1
    if vm < -vr:
        return -1
    return None


def split_right(M, R, u, v):
    """Coefficients of ``v**d * q((u + (v - u) x) / v)``."""
    d = len(M) - 1
    AM = [0] * (d + 1)
    AR = [0] * (d + 1)
    pv = 1
    for i in range(d, -1, -1):
        AM[i] = M[i] * pv
        AR[i] = R[i] * pv
        pv *= v
    AM, AR = taylor_shift(AM, AR, u)
    w = v - u
    pw = 1
    for i in range(d + 1):
        AM[i] *= pw
        AR[i] *= pw
        pw *= w
    return AM, AR


def normalize(M, R, keep=64):
    """Drop low bits once every radius is large; stays a rigorous enclosure."""
    shift = None
    for r in R:
        if r == 0:
            return M, R
        b = r.bit_length() - keep
        if shift is None or b < shift:
            shift = b
    if shift is None or shift <= 0:
        return M, R
    return [m >> shift for m in M], [(r >> shift) + 2 for r in R]


def isolate01(M, R, max_depth, budget, max_roots):
    """Isolate the roots of ``q`` in ``(0, 1)`` by Descartes bisection.

    Returns ``(isolated, clusters, exhausted)``; intervals are ``(A, B, k)``
    meaning ``[A / 2**k, B / 2**k]``; clusters additionally carry the variation
    bounds.  Endpoints of every emitted interval other than 0 and 1 are points
    where ``q`` has certified nonzero sign.
    """
    isolated = []
    clusters = []
    stack = [(M, R, 0, 1, 0)]
    nodes = 0
    exhausted = False
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
        # right child pushed first so the left one is processed first
        stack.append((RM, RR) + _reduce(C2, B2, k2))
        stack.append((LM, LR) + _reduce(A2, C2, k2))
    isolated.sort(key=_left_key)
    clusters.sort(key=_left_key)
    return isolated, clusters, exhausted


def _all_ambiguous(M, R):
    for m, r in zip(M, R):
        if m > r or m < -r:
            return False
    return True


def _reduce(A, B, k):
    while k > 0 and not (A & 1) and not (B & 1):
        A >>= 1
        B >>= 1
        k -= 1
    return A, B, k


def _left_key(item):
    return Fraction(item[0], 1 << item[2])
