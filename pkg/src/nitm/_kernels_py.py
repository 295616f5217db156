"""Pure-Python integration kernel for the Blasius family.

Fallback twin of the compiled module nitm._kernels. The two must stay
operation-for-operation identical (same evaluation order, no fused
multiply-add on the compiled side) so that trajectories do not depend
on which backend was imported.
"""

BLOWUP_LIMIT = 1e12


def fill_blasius_family(beta, f, fp, fpp, h, start, stop):
    """Advance f''' = -beta*f*f'' from node start through node stop.

    The arrays hold one value per grid node; node start must be filled
    on entry and nodes start+1 .. stop are written. Returns -1 on
    success, or the index of the first node whose state left
    [-BLOWUP_LIMIT, BLOWUP_LIMIT] (NaN counts as outside; nothing is
    written at or past that node).
    """
    mb = -beta
    h2 = 0.5 * h
    h6 = h / 6.0
    cf = float(f[start])
    cp = float(fp[start])
    cq = float(fpp[start])
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
        if not (abs(cf) <= BLOWUP_LIMIT and abs(cp) <= BLOWUP_LIMIT
                and abs(cq) <= BLOWUP_LIMIT):
            return i + 1
        f[i + 1] = cf
        fp[i + 1] = cp
        fpp[i + 1] = cq
    return -1
