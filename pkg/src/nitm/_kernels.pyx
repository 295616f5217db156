# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled integration kernel for the Blasius family.

Twin of nitm._kernels_py; see that module for the contract. Compiled
with -ffp-contract=off so the arithmetic matches the pure-Python
kernel bit for bit.
"""

DEF BLOWUP_LIMIT = 1e12


def fill_blasius_family(double beta, double[::1] f, double[::1] fp,
                        double[::1] fpp, double h, Py_ssize_t start,
                        Py_ssize_t stop):
    """Advance f''' = -beta*f*f'' from node start through node stop.

    Returns -1 on success, or the index of the first node whose state
    left [-1e12, 1e12] (that node is not written).
    """
    cdef double mb = -beta
    cdef double h2 = 0.5 * h
    cdef double h6 = h / 6.0
    cdef double cf = f[start]
    cdef double cp = fp[start]
    cdef double cq = fpp[start]
    cdef double k1f, k1p, k1q, k2f, k2p, k2q
    cdef double k3f, k3p, k3q, k4f, k4p, k4q
    cdef double tf, tp, tq
    cdef Py_ssize_t i
    for i in range(start, stop):
        k1f = cp
        k1p = cq
        k1q = mb * cf * cq
        tf = cf + h2 * k1f
        tp = cp + h2 * k1p
        tq = cq + h2 * k1q
        k2f = tp
        k2p = tq
        k2q = mb * tf * tq
        tf = cf + h2 * k2f
        tp = cp + h2 * k2p
        tq = cq + h2 * k2q
        k3f = tp
        k3p = tq
        k3q = mb * tf * tq
        tf = cf + h * k3f
        tp = cp + h * k3p
        tq = cq + h * k3q
        k4f = tp
        k4p = tq
        k4q = mb * tf * tq
        cf = cf + h6 * (k1f + 2.0 * (k2f + k3f) + k4f)
        cp = cp + h6 * (k1p + 2.0 * (k2p + k3p) + k4p)
        cq = cq + h6 * (k1q + 2.0 * (k2q + k3q) + k4q)
        if not (-BLOWUP_LIMIT <= cf <= BLOWUP_LIMIT
                and -BLOWUP_LIMIT <= cp <= BLOWUP_LIMIT
                and -BLOWUP_LIMIT <= cq <= BLOWUP_LIMIT):
            return i + 1
        f[i + 1] = cf
        fp[i + 1] = cp
        fpp[i + 1] = cq
    return -1
