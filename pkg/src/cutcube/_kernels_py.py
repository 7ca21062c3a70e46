"""Pure-Python kernels.  Same contracts as the compiled ``_kernels`` module."""


def principal_codes(point_masks):
    """Distinct majority orientations over all triples of points, sorted.

    ``point_masks[p]`` has bit ``i`` set when point ``p`` lies on the plus
    side of wall ``i``.  The majority of three masks is the orientation the
    triple chooses.
    """
    n = len(point_masks)
    out = set()
    for a in range(n):
        ma = point_masks[a]
        for b in range(a + 1, n):
            mb = point_masks[b]
            ab = ma & mb
            aob = ma | mb
            for c in range(b + 1, n):
                out.add(ab | (aob & point_masks[c]))
    return sorted(out)


def occupancy(codes, k):
    """``occ[i][j]`` has bit ``2*s + t`` set when some code has sign s on wall i and t on wall j
    (1 = plus)."""
    occ = [[0] * k for _ in range(k)]
    for code in codes:
        bits = [(code >> i) & 1 for i in range(k)]
        for i in range(k):
            row = occ[i]
            si = bits[i] << 1
            for j in range(k):
                row[j] |= 1 << (si | bits[j])
    return occ


def consistent_scan(k, bad_pp, bad_pm, bad_mp, bad_mm):
    """All orientations m in [0, 2**k) with no two chosen halfspaces disjoint.

    ``bad_st[i]`` is the mask of walls j whose sign-t halfspace is disjoint
    from the sign-s halfspace of wall i.
    """
    full = (1 << k) - 1
    out = []
    for m in range(1 << k):
        nm = full & ~m
        ok = True
        for i in range(k):
            if (m >> i) & 1:
                if bad_pp[i] & m or bad_pm[i] & nm:
                    ok = False
                    break
            elif bad_mp[i] & m or bad_mm[i] & nm:
                ok = False
                break
        if ok:
            out.append(m)
    return out
