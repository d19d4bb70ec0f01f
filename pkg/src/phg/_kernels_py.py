"""Pure-Python fraction-free elimination; reference twin of ``_kernels.pyx``."""


def echelon(rows, ncols):
    """Bareiss row echelon form of an integer matrix.

    Returns ``(rank, pivots, swaps, rows)`` where ``rows`` is a new list of
    lists.  Every entry stays an integer because each step divides exactly by
    the previous pivot.
    """
    a = [list(r) for r in rows]
    m = len(a)
    r = 0
    prev = 1
    swaps = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        p = r
        while p < m and not a[p][c]:
            p += 1
        if p == m:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            swaps += 1
        rowr = a[r]
        piv = rowr[c]
        for i in range(r + 1, m):
            rowi = a[i]
            f = rowi[c]
            if f:
                for j in range(c + 1, ncols):
                    rowi[j] = (piv * rowi[j] - f * rowr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    rowi[j] = (piv * rowi[j]) // prev
            rowi[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots, swaps, a


def det(rows):
    n = len(rows)
    if n == 0:
        return 1
    rank, _, swaps, a = echelon(rows, n)
    if rank < n:
        return 0
    d = a[n - 1][n - 1]
    return -d if swaps % 2 else d
