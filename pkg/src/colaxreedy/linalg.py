"""Exact matrix arithmetic over F_p on immutable tuple-of-rows matrices."""

from __future__ import annotations

from .kernels import rref_mod_p

Matrix = tuple  # tuple of row tuples; shape carried separately


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def eye(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix, inner: int, cols: int, p: int) -> Matrix:
    """``a`` is r x inner, ``b`` is inner x cols."""
    bt = list(zip(*b)) if inner else [() for _ in range(cols)]
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
    )


def kron(a: Matrix, b: Matrix, p: int) -> Matrix:
    return tuple(
        tuple(x * y % p for x in ra for y in rb) for ra in a for rb in b
    )


def hstack(blocks, rows: int) -> Matrix:
    return tuple(tuple(v for blk in blocks for v in blk[i]) for i in range(rows))


def vstack(blocks) -> Matrix:
    return tuple(row for blk in blocks for row in blk)


def transpose(a: Matrix, cols: int) -> Matrix:
    if not a:
        return tuple(() for _ in range(cols))
    return tuple(zip(*a))


def rref(rows, ncols: int, p: int):
    return rref_mod_p([list(r) for r in rows], ncols, p)


def rank(a: Matrix, cols: int, p: int) -> int:
    return len(rref(a, cols, p)[1])


def nullspace(a: Matrix, cols: int, p: int) -> list[tuple[int, ...]]:
    """Basis of {x : a x = 0}, one vector per free column, in column order.

    Each basis vector has a 1 at its own free column and 0 at every other
    free column.
    """
    return nullspace_free(a, cols, p)[0]


def nullspace_free(a: Matrix, cols: int, p: int):
    """Like ``nullspace`` but also returns the free columns."""
    red, piv = rref(a, cols, p)
    pivset = set(piv)
    basis = []
    for f in range(cols):
        if f in pivset:
            continue
        v = [0] * cols
        v[f] = 1
        for row, pc in zip(red, piv):
            if row[f]:
                v[pc] = (-row[f]) % p
        basis.append(tuple(v))
    return basis, [f for f in range(cols) if f not in pivset]


def solve(a: Matrix, b: tuple, cols: int, p: int):
    """One solution of ``a x = b`` (free variables set to 0), or None."""
    aug = [list(r) + [bv] for r, bv in zip(a, b)]
    red, piv = rref(aug, cols + 1, p)
    if piv and piv[-1] == cols:
        return None
    x = [0] * cols
    for row, pc in zip(red, piv):
        x[pc] = row[cols]
    return tuple(x)
