"""Bitmask primitives for relations over index sets 0..n-1.

A relation is a sequence of integer rows; bit j of row i is set iff
(i, j) is related. Rows are plain Python ints, so nothing here caps n.
"""


def bit(i: int) -> int:
    return 1 << i


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits(mask: int):
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def transpose(rows, n: int) -> list[int]:
    cols = [0] * n
    for i, row in enumerate(rows):
        b = 1 << i
        for j in bits(row):
            cols[j] |= b
    return cols


def warshall(rows) -> list[int]:
    """Transitive closure of a relation given by row bitmasks."""
    rows = list(rows)
    n = len(rows)
    for k in range(n):
        bk = 1 << k
        for i in range(n):
            if rows[i] & bk:
                rows[i] |= rows[k]
    return rows


def is_transitive(rows) -> bool:
    for row in rows:
        acc = 0
        for j in bits(row):
            acc |= rows[j]
        if acc & ~row:
            return False
    return True
