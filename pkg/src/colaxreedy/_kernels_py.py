"""Pure-Python versions of the enumeration and elimination kernels.

These are the reference implementations; ``_kernels.pyx`` mirrors them
function for function and must return identical results.
"""

from __future__ import annotations


def rref_mod_p(rows, ncols, p):
    """Reduced row echelon form over F_p.

    ``rows`` is a sequence of integer rows of length ``ncols``.  Returns
    ``(reduced, pivots)`` where ``reduced`` holds only the nonzero rows
    (as lists) and ``pivots`` lists their pivot columns in increasing
    order.
    """
    m = [[v % p for v in r] for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            for k in range(c, ncols):
                row[k] = row[k] * inv % p
        for i in range(nrows):
            if i != r:
                other = m[i]
                f = other[c]
                if f:
                    for k in range(c, ncols):
                        if row[k]:
                            other[k] = (other[k] - f * row[k]) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def finset_limit(sizes, edges):
    """All tuples ``x`` with ``x[i] < sizes[i]`` and ``table[x[i]] == x[j]``
    for every edge ``(i, j, table)``, in lexicographic order."""
    n = len(sizes)
    if n == 0:
        return [()]
    # constraints checkable once position k is assigned
    checks = [[] for _ in range(n)]
    for i, j, table in edges:
        checks[max(i, j)].append((i, j, table))
    out = []
    x = [0] * n

    def rec(k):
        if k == n:
            out.append(tuple(x))
            return
        for v in range(sizes[k]):
            x[k] = v
            ok = True
            for i, j, table in checks[k]:
                if table[x[i]] != x[j]:
                    ok = False
                    break
            if ok:
                rec(k + 1)

    rec(0)
    return out
