"""Pure-numpy fallbacks for the pairwise kernels.

Work on dense boolean adjacency rows in fixed-size chunks; results agree
with the numba merge kernels exactly for counts and to float rounding for
the Adamic-Adar sums.
"""

import numpy as np

_CHUNK = 4096


def _dense_rows(indptr, indices, rows):
    n = indptr.shape[0] - 1
    out = np.zeros((rows.shape[0], n), dtype=bool)
    for k, v in enumerate(rows):
        out[k, indices[indptr[v] : indptr[v + 1]]] = True
    return out


def pair_cn_aa(indptr, indices, xs, ys):
    n = indptr.shape[0] - 1
    degrees = np.diff(indptr)
    weights = np.zeros(n, dtype=np.float64)
    # Degree-1 nodes can never be common neighbours of a distinct pair, so
    # leaving their weight at 0 never contributes.
    multi = degrees >= 2
    weights[multi] = 1.0 / np.log(degrees[multi])

    cn = np.empty(xs.shape[0], dtype=np.int64)
    aa = np.empty(xs.shape[0], dtype=np.float64)
    for start in range(0, xs.shape[0], _CHUNK):
        stop = min(start + _CHUNK, xs.shape[0])
        common = _dense_rows(indptr, indices, xs[start:stop]) & _dense_rows(
            indptr, indices, ys[start:stop]
        )
        cn[start:stop] = common.sum(axis=1)
        aa[start:stop] = common @ weights
    return cn, aa


def instance_common_total(indptr, indices, ix, iy):
    if ix.shape[0] == 0 or iy.shape[0] == 0:
        return 0, 0
    rows_y = _dense_rows(indptr, indices, iy).astype(np.int64)
    total = 0
    pairs = 0
    for start in range(0, ix.shape[0], _CHUNK):
        stop = min(start + _CHUNK, ix.shape[0])
        rows_x = _dense_rows(indptr, indices, ix[start:stop]).astype(np.int64)
        counts = rows_x @ rows_y.T
        same = ix[start:stop, None] == iy[None, :]
        total += int(counts.sum()) - int(counts[same].sum())
        pairs += counts.size - int(same.sum())
    return total, pairs
