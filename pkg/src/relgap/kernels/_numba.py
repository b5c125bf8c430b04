"""numba-compiled pairwise kernels. Same contracts as _numpy."""

import numpy as np
from numba import njit


@njit(cache=True)
def pair_cn_aa(indptr, indices, xs, ys):
    # Merge-intersect the sorted neighbour rows of each (x, y) pair.
    # Any common neighbour z of two distinct nodes has degree >= 2, so
    # log(degree) is always positive.
    m = xs.shape[0]
    cn = np.zeros(m, dtype=np.int64)
    aa = np.zeros(m, dtype=np.float64)
    for k in range(m):
        a = indptr[xs[k]]
        a_end = indptr[xs[k] + 1]
        b = indptr[ys[k]]
        b_end = indptr[ys[k] + 1]
        count = 0
        weight = 0.0
        while a < a_end and b < b_end:
            za = indices[a]
            zb = indices[b]
            if za == zb:
                count += 1
                weight += 1.0 / np.log(indptr[za + 1] - indptr[za])
                a += 1
                b += 1
            elif za < zb:
                a += 1
            else:
                b += 1
        cn[k] = count
        aa[k] = weight
    return cn, aa


@njit(cache=True)
def instance_common_total(indptr, indices, ix, iy):
    # Sum of common-neighbour counts over ordered cross pairs (i, j), i != j,
    # plus the number of pairs counted.
    total = 0
    pairs = 0
    for a in range(ix.shape[0]):
        i = ix[a]
        p0 = indptr[i]
        p1 = indptr[i + 1]
        for b in range(iy.shape[0]):
            j = iy[b]
            if i == j:
                continue
            pairs += 1
            p = p0
            q = indptr[j]
            q_end = indptr[j + 1]
            while p < p1 and q < q_end:
                zp = indices[p]
                zq = indices[q]
                if zp == zq:
                    total += 1
                    p += 1
                    q += 1
                elif zp < zq:
                    p += 1
                else:
                    q += 1
    return total, pairs
