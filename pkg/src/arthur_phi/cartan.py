"""Root data built from Cartan matrices or from classical coordinates."""

from collections import deque
from itertools import combinations

CARTAN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -2], [-1, 2]],
    "G2": [[2, -1], [-3, 2]],
    "B3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
    "C3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "D4": [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
    "F4": [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    "B4": [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -2], [0, 0, -1, 2]],
    "E6": [[2, 0, -1, 0, 0, 0], [0, 2, 0, -1, 0, 0], [-1, 0, 2, -1, 0, 0],
           [0, -1, -1, 2, -1, 0], [0, 0, 0, -1, 2, -1], [0, 0, 0, 0, -1, 2]],
}


def from_cartan(a):
    """Adjoint root datum: weights are root-lattice coordinates in simple roots.

    ``a[i][j] = <alpha_i, coalpha_j>``.  Returns ``(roots, coroots)`` as
    integer tuples; the coroot of ``alpha_j`` has coordinates ``a[i][j]``.
    """
    n = len(a)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    cosimple = [tuple(a[k][j] for k in range(n)) for j in range(n)]
    pairs = {}
    queue = deque()
    for r, c in zip(simple, cosimple):
        pairs[r] = c
        queue.append(r)
    while queue:
        r = queue.popleft()
        c = pairs[r]
        for i in range(n):
            k = sum(r[m] * a[m][i] for m in range(n))       # <r, coalpha_i>
            nr = tuple(r[m] - k * simple[i][m] for m in range(n))
            kc = c[i]                                        # <alpha_i, c>
            nc = tuple(c[m] - kc * cosimple[i][m] for m in range(n))
            if nr not in pairs:
                pairs[nr] = nc
                queue.append(nr)
    roots = sorted(pairs, reverse=True)
    return roots, [pairs[r] for r in roots]


def classical(kind, n):
    """Roots and coroots of B_n, C_n or D_n in the standard ``e_i`` basis."""
    def e(i, c=1):
        return tuple(c if k == i else 0 for k in range(n))

    def plus(u, v):
        return tuple(x + y for x, y in zip(u, v))

    def neg(u):
        return tuple(-x for x in u)

    roots, coroots = [], []
    for i, j in combinations(range(n), 2):
        for s in (1, -1):
            r = plus(e(i), e(j, s))
            for t in (r, neg(r)):
                roots.append(t)
                coroots.append(t)
    for i in range(n):
        if kind == "B":
            short, co = e(i), e(i, 2)
        elif kind == "C":
            short, co = e(i, 2), e(i)
        else:
            continue
        for t, ct in ((short, co), (neg(short), neg(co))):
            roots.append(t)
            coroots.append(ct)
    order = sorted(range(len(roots)), key=lambda k: roots[k], reverse=True)
    return [roots[k] for k in order], [coroots[k] for k in order]
