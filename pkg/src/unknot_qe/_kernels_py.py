"""Pure numpy box classifier; the fallback for ``_kernels``.

Mirrors the compiled kernel operation for operation so both backends
return identical bounds.  Every rounded operation is widened by one ulp
in the safe direction, which encloses round-to-nearest error.
"""
import numpy as np

UNDECIDED = 0
POSITIVE_P = 1
SMALL_N = 2

_NINF = -np.inf
_PINF = np.inf


def _down(x):
    return np.nextafter(x, _NINF)


def _up(x):
    return np.nextafter(x, _PINF)


def _enclose(lo, hi, ptr, const, coef, v1, v2):
    """Interval enclosures (lo, hi), each of shape (boxes, polys)."""
    nb = lo.shape[0]
    npoly = len(const)
    out_lo = np.empty((nb, npoly))
    out_hi = np.empty((nb, npoly))
    for i in range(npoly):
        acc_lo = np.full(nb, const[i])
        acc_hi = np.full(nb, const[i])
        for t in range(ptr[i], ptr[i + 1]):
            a = lo[:, v1[t]]
            b = hi[:, v1[t]]
            w = v2[t]
            if w < 0:
                tl, th = a, b
            elif w == v1[t]:
                aa = a * a
                bb = b * b
                tl = np.where(a > 0, _down(aa), np.where(b < 0, _down(bb), 0.0))
                th = _up(np.maximum(aa, bb))
            else:
                c = lo[:, w]
                d = hi[:, w]
                p1 = a * c
                p2 = a * d
                p3 = b * c
                p4 = b * d
                tl = _down(np.minimum(np.minimum(p1, p2), np.minimum(p3, p4)))
                th = _up(np.maximum(np.maximum(p1, p2), np.maximum(p3, p4)))
            k = coef[t]
            if k > 0:
                sl = _down(k * tl)
                sh = _up(k * th)
            else:
                sl = _down(k * th)
                sh = _up(k * tl)
            acc_lo = _down(acc_lo + sl)
            acc_hi = _up(acc_hi + sh)
        out_lo[:, i] = acc_lo
        out_hi[:, i] = acc_hi
    return out_lo, out_hi


def _square_bounds(lo, hi):
    ll = lo * lo
    hh = hi * hi
    sq_lo = np.where(lo > 0, _down(ll), np.where(hi < 0, _down(hh), 0.0))
    sq_hi = _up(np.maximum(ll, hh))
    return sq_lo, sq_hi


def classify_boxes(lo, hi, q_ptr, q_const, q_coef, q_v1, q_v2,
                   n_ptr, n_const, n_coef, n_v1, n_v2, delta, threads=1):
    """Classify a batch of boxes.

    Returns (codes, p_lo, n_hi): ``p_lo`` is a lower bound of the sum of
    squares of the equality members, ``n_hi`` an upper bound of the
    inequality polynomial.  ``threads`` is accepted for signature parity.
    """
    lo = np.ascontiguousarray(lo, dtype=np.float64)
    hi = np.ascontiguousarray(hi, dtype=np.float64)
    nb = lo.shape[0]
    qlo, qhi = _enclose(lo, hi, q_ptr, q_const, q_coef, q_v1, q_v2)
    sq_lo, _ = _square_bounds(qlo, qhi)
    p_lo = np.zeros(nb)
    for i in range(sq_lo.shape[1]):
        p_lo = _down(p_lo + sq_lo[:, i])
    nlo, nhi_ = _enclose(lo, hi, n_ptr, n_const, n_coef, n_v1, n_v2)
    _, sq_hi = _square_bounds(nlo, nhi_)
    n_hi = np.zeros(nb)
    for i in range(sq_hi.shape[1]):
        n_hi = _up(n_hi + sq_hi[:, i])
    codes = np.zeros(nb, dtype=np.int8)
    codes[n_hi < delta] = SMALL_N
    codes[p_lo > 0.0] = POSITIVE_P
    return codes, p_lo, n_hi
