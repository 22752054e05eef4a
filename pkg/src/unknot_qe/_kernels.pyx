# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled box classifier.  Same arithmetic, in the same order, as
``_kernels_py`` so both backends produce bit-identical bounds."""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY, fmin, fmax
from libc.string cimport memcpy

cnp.import_array()

DEF UNDECIDED = 0
DEF POSITIVE_P = 1
DEF SMALL_N = 2


# nextafter towards -inf / +inf by stepping the bit pattern; agrees with
# libm nextafter for every finite input and is much cheaper than the call
cdef inline double _down(double x) noexcept nogil:
    cdef unsigned long long u
    if x != x or x == -INFINITY:
        return x
    if x == 0.0:
        return -5e-324
    memcpy(&u, &x, 8)
    if x > 0.0:
        u -= 1
    else:
        u += 1
    memcpy(&x, &u, 8)
    return x


cdef inline double _up(double x) noexcept nogil:
    cdef unsigned long long u
    if x != x or x == INFINITY:
        return x
    if x == 0.0:
        return 5e-324
    memcpy(&u, &x, 8)
    if x > 0.0:
        u += 1
    else:
        u -= 1
    memcpy(&x, &u, 8)
    return x


cdef inline void _enclose(const double *lo, const double *hi,
                          const long long *ptr, const double *const_,
                          const double *coef, const long long *v1,
                          const long long *v2, Py_ssize_t i,
                          double *out_lo, double *out_hi) noexcept nogil:
    cdef double acc_lo = const_[i]
    cdef double acc_hi = const_[i]
    cdef double a, b, c, d, aa, bb, p1, p2, p3, p4, tl, th, sl, sh, k
    cdef long long t, w, u
    for t in range(ptr[i], ptr[i + 1]):
        u = v1[t]
        a = lo[u]
        b = hi[u]
        w = v2[t]
        if w < 0:
            tl = a
            th = b
        elif w == u:
            aa = a * a
            bb = b * b
            if a > 0:
                tl = _down(aa)
            elif b < 0:
                tl = _down(bb)
            else:
                tl = 0.0
            th = _up(fmax(aa, bb))
        else:
            c = lo[w]
            d = hi[w]
            p1 = a * c
            p2 = a * d
            p3 = b * c
            p4 = b * d
            tl = _down(fmin(fmin(p1, p2), fmin(p3, p4)))
            th = _up(fmax(fmax(p1, p2), fmax(p3, p4)))
        k = coef[t]
        if k > 0:
            sl = _down(k * tl)
            sh = _up(k * th)
        else:
            sl = _down(k * th)
            sh = _up(k * tl)
        acc_lo = _down(acc_lo + sl)
        acc_hi = _up(acc_hi + sh)
    out_lo[0] = acc_lo
    out_hi[0] = acc_hi


cdef void _classify(const double *lo, const double *hi, Py_ssize_t dim,
                    const long long *q_ptr, const double *q_const,
                    const double *q_coef, const long long *q_v1,
                    const long long *q_v2, Py_ssize_t nq,
                    const long long *n_ptr, const double *n_const,
                    const double *n_coef, const long long *n_v1,
                    const long long *n_v2, Py_ssize_t nn, double delta,
                    Py_ssize_t start, Py_ssize_t stop,
                    signed char *codes, double *p_lo, double *n_hi) noexcept nogil:
    cdef Py_ssize_t r, i
    cdef double ql, qh, sq, ll, hh, plo, nhi
    cdef const double *rl
    cdef const double *rh
    for r in range(start, stop):
        rl = lo + r * dim
        rh = hi + r * dim
        plo = 0.0
        for i in range(nq):
            _enclose(rl, rh, q_ptr, q_const, q_coef, q_v1, q_v2, i, &ql, &qh)
            ll = ql * ql
            hh = qh * qh
            if ql > 0:
                sq = _down(ll)
            elif qh < 0:
                sq = _down(hh)
            else:
                sq = 0.0
            plo = _down(plo + sq)
        nhi = 0.0
        for i in range(nn):
            _enclose(rl, rh, n_ptr, n_const, n_coef, n_v1, n_v2, i, &ql, &qh)
            ll = ql * ql
            hh = qh * qh
            nhi = _up(nhi + _up(fmax(ll, hh)))
        p_lo[r] = plo
        n_hi[r] = nhi
        if plo > 0.0:
            codes[r] = POSITIVE_P
        elif nhi < delta:
            codes[r] = SMALL_N
        else:
            codes[r] = UNDECIDED


def classify_boxes(lo, hi, q_ptr, q_const, q_coef, q_v1, q_v2,
                   n_ptr, n_const, n_coef, n_v1, n_v2, double delta, int threads=1):
    """Classify a batch of boxes; see ``_kernels_py.classify_boxes``."""
    lo_a = np.ascontiguousarray(lo, dtype=np.float64)
    hi_a = np.ascontiguousarray(hi, dtype=np.float64)
    cdef Py_ssize_t nb = lo_a.shape[0]
    cdef Py_ssize_t dim = lo_a.shape[1] if lo_a.ndim == 2 else 0
    codes = np.zeros(nb, dtype=np.int8)
    p_lo = np.zeros(nb)
    n_hi = np.zeros(nb)
    if nb == 0:
        return codes, p_lo, n_hi
    # keep contiguous copies alive for the raw pointers below
    arrs = [np.ascontiguousarray(x, dtype=np.int64) for x in (q_ptr, q_v1, q_v2, n_ptr, n_v1, n_v2)]
    flts = [np.ascontiguousarray(x, dtype=np.float64) for x in (q_const, q_coef, n_const, n_coef)]
    # pad empty arrays so taking an address is always valid
    arrs = [a if a.shape[0] else np.zeros(1, dtype=np.int64) for a in arrs]
    flts = [a if a.shape[0] else np.zeros(1) for a in flts]
    cdef Py_ssize_t nq = len(q_const)
    cdef Py_ssize_t nn = len(n_const)
    cdef const double[:, ::1] lo_v = lo_a
    cdef const double[:, ::1] hi_v = hi_a
    cdef const long long[::1] qp = arrs[0]
    cdef const long long[::1] q1 = arrs[1]
    cdef const long long[::1] q2 = arrs[2]
    cdef const long long[::1] np_ = arrs[3]
    cdef const long long[::1] n1 = arrs[4]
    cdef const long long[::1] n2 = arrs[5]
    cdef const double[::1] qc = flts[0]
    cdef const double[::1] qk = flts[1]
    cdef const double[::1] nc = flts[2]
    cdef const double[::1] nk = flts[3]
    cdef signed char[::1] codes_v = codes
    cdef double[::1] p_v = p_lo
    cdef double[::1] n_v = n_hi
    with nogil:
        _classify(&lo_v[0, 0], &hi_v[0, 0], dim,
                  &qp[0], &qc[0], &qk[0], &q1[0], &q2[0], nq,
                  &np_[0], &nc[0], &nk[0], &n1[0], &n2[0], nn, delta,
                  0, nb, &codes_v[0], &p_v[0], &n_v[0])
    return codes, p_lo, n_hi
