"""Small exact linear algebra over the rationals.

Vectors are tuples, matrices are tuples of row tuples.  Entries may be
``int`` or ``fractions.Fraction``; results are normalised to ``Fraction``
unless stated otherwise.
"""

from fractions import Fraction
from math import gcd


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def is_zero(v):
    return all(a == 0 for a in v)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m)) if m else ()


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def matvec(m, v):
    return tuple(dot(row, v) for row in m)


def rref(rows):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows):
    rows = [row for row in rows if not is_zero(row)]
    if not rows:
        return 0
    return _int_rank(rows) if _all_int(rows) else len(rref(rows)[1])


def _all_int(rows):
    return all(type(x) is int for row in rows for x in row)


def _int_rank(rows):
    # fraction-free elimination; exact for integer input
    mat = [list(row) for row in rows]
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        p = mat[r][c]
        for i in range(r + 1, len(mat)):
            f = mat[i][c]
            if f:
                row = [p * x - f * y for x, y in zip(mat[i], mat[r])]
                g = 0
                for x in row:
                    g = gcd(g, x)
                mat[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(mat):
            break
    return r


def nullspace(rows, ncols=None):
    """Basis of ``{x : rows . x = 0}`` as a list of Fraction tuples."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def independent_subset(vectors):
    """Indices of a maximal linearly independent subset, greedy in order."""
    chosen = []
    current = []
    for i, v in enumerate(vectors):
        if rank(current + [tuple(v)]) > len(current):
            current.append(tuple(v))
            chosen.append(i)
    return chosen


def solve(a, b):
    """One solution ``x`` of ``a x = b`` or ``None`` when inconsistent."""
    ncols = len(a[0])
    aug = [tuple(row) + (rhs,) for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return tuple(x)


def inverse(m):
    n = len(m)
    aug = [tuple(row) + identity(n)[i] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def det(m):
    """Exact determinant by fraction Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            out = -out
        out *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return out


def primitive(v):
    """Positive rescaling of a rational vector to a primitive integer vector."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def canonical_line(v):
    """Primitive integer representative of the line through ``v``, first nonzero entry positive."""
    p = primitive(v)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    return p


def sign(x):
    return (x > 0) - (x < 0)


def frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
