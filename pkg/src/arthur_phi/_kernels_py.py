"""Pure-Python kernels.  Reference implementation for ``_kernels.pyx``.

Matrices are flat row-major tuples of ``n*n`` ints.  A reflection generator
is a pair ``(alpha, coalpha)`` of integer n-vectors and acts on weights by
``v -> v - <v, coalpha> alpha``, i.e. by the matrix ``I - alpha coalpha^T``.
"""

from collections import deque


def _left_reflect(mat, alpha, coalpha, n):
    # (I - alpha coalpha^T) @ mat
    row = [0] * n
    for k in range(n):
        c = coalpha[k]
        if c:
            base = k * n
            for j in range(n):
                row[j] += c * mat[base + j]
    out = list(mat)
    for i in range(n):
        a = alpha[i]
        if a:
            base = i * n
            for j in range(n):
                out[base + j] -= a * row[j]
    return tuple(out)


def _right_reflect(mat, alpha, coalpha, n):
    # mat @ (I - alpha coalpha^T)
    col = [0] * n
    for i in range(n):
        base = i * n
        s = 0
        for k in range(n):
            a = alpha[k]
            if a:
                s += mat[base + k] * a
        col[i] = s
    out = list(mat)
    for i in range(n):
        c = col[i]
        if c:
            base = i * n
            for j in range(n):
                out[base + j] -= c * coalpha[j]
    return tuple(out)


def weyl_closure(generators, n, cap):
    """Breadth-first closure of the group generated by simple reflections.

    Returns ``(matrices, inverses, lengths)`` in BFS order, or ``None`` once
    more than ``cap`` elements have been found.  Lengths are BFS depths,
    which equal Coxeter lengths when the generators are simple reflections.
    """
    ident = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    seen = {ident: 0}
    mats = [ident]
    invs = [ident]
    lengths = [0]
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        mat, inv, depth = mats[idx], invs[idx], lengths[idx]
        for alpha, coalpha in generators:
            new = _left_reflect(mat, alpha, coalpha, n)
            if new in seen:
                continue
            seen[new] = len(mats)
            mats.append(new)
            invs.append(_right_reflect(inv, alpha, coalpha, n))
            lengths.append(depth + 1)
            if len(mats) > cap:
                return None
            queue.append(len(mats) - 1)
    return mats, invs, lengths


def sign_rows(points, functionals):
    """Sign of every pairing: one tuple per point, one entry per functional."""
    out = []
    for p in points:
        row = []
        for f in functionals:
            s = 0
            for a, b in zip(p, f):
                s += a * b
            row.append((s > 0) - (s < 0))
        out.append(tuple(row))
    return out


def conformal_indices(ray_signs, chamber):
    """Indices of rays whose sign vector never disagrees with ``chamber``."""
    out = []
    for i, rs in enumerate(ray_signs):
        for a, b in zip(rs, chamber):
            if a and a != b:
                break
        else:
            out.append(i)
    return out
