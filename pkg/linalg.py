"""Row reduction over a finite field.

Only rank is needed (k-normality is n minus the rank of a Krylov matrix).
Two numpy paths cover the common fields:

- fields with at most ``NUMPY_TABLE_LIMIT`` elements use full q x q
  multiplication and subtraction tables and fancy indexing;
- prime fields with p < 2^31 reduce int64 products mod p.

Anything else falls back to scalar elimination through the field callables.
"""

from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from gf import FieldSpec, GaloisField

NUMPY_TABLE_LIMIT = 256


@lru_cache(maxsize=32)
def _tables(field: GaloisField) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    q = field.q
    mul_t = np.zeros((q, q), dtype=np.int64)
    sub_t = np.zeros((q, q), dtype=np.int64)
    inv_t = np.zeros(q, dtype=np.int64)
    for a in range(q):
        for b in range(q):
            mul_t[a, b] = field.mul(a, b)
            sub_t[a, b] = field.sub(a, b)
        if a:
            inv_t[a] = field.inv(a)
    return mul_t, sub_t, inv_t


def _rank_tables(field: GaloisField, m: np.ndarray) -> int:
    mul_t, sub_t, inv_t = _tables(field)
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(m[rank:, col])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        m[rank] = mul_t[inv_t[m[rank, col]], m[rank]]
        below = m[rank + 1:]
        if below.shape[0]:
            m[rank + 1:] = sub_t[below, mul_t[below[:, col][:, None], m[rank][None, :]]]
        rank += 1
    return rank


def _rank_mod_p(p: int, m: np.ndarray) -> int:
    m %= p
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(m[rank:, col])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        m[rank] = m[rank] * pow(int(m[rank, col]), -1, p) % p
        below = m[rank + 1:]
        if below.shape[0]:
            m[rank + 1:] = (below - below[:, col][:, None] * m[rank][None, :]) % p
        rank += 1
    return rank


def _rank_scalar(field: GaloisField, rows: List[List[int]]) -> int:
    fmul, fsub, finv = field.mul, field.sub, field.inv
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = finv(rows[rank][col])
        pivot = [fmul(inv, c) for c in rows[rank]]
        rows[rank] = pivot
        for i in range(rank + 1, nrows):
            factor = rows[i][col]
            if factor:
                rows[i] = [fsub(c, fmul(factor, pc)) for c, pc in zip(rows[i], pivot)]
        rank += 1
    return rank


def rank(field: GaloisField, rows: Sequence[Sequence[int]]) -> int:
    """Rank of the matrix whose rows hold element codes of *field*."""
    if not rows or not len(rows[0]):
        return 0
    if field.q <= NUMPY_TABLE_LIMIT:
        return _rank_tables(field, np.array(rows, dtype=np.int64))
    if isinstance(field, FieldSpec) and field.m == 1 and field.p < (1 << 31):
        return _rank_mod_p(field.p, np.array(rows, dtype=np.int64))
    return _rank_scalar(field, rows)
