# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels, a drop-in twin of ``_kernels_py``.

Integer inputs well inside the 64-bit range take the typed path; anything
else (rationals, huge entries) is handed to the exact pure-Python code.
"""

from array import array
from collections import deque

from . import _kernels_py

cdef long long SAFE = 1LL << 30


cdef bint _small_ints(seq):
    for x in seq:
        if type(x) is not int or x >= SAFE or x <= -SAFE:
            return False
    return True


def weyl_closure(generators, n, cap):
    cdef Py_ssize_t dim = n, nn = dim * dim, ng = len(generators)
    cdef Py_ssize_t i, j, k, g
    cdef long long s, c, a
    flat_a = [x for al, _ in generators for x in al]
    flat_c = [x for _, co in generators for x in co]
    if not (_small_ints(flat_a) and _small_ints(flat_c)):
        return _kernels_py.weyl_closure(generators, n, cap)
    cdef long long[:] A = array("q", flat_a or [0])
    cdef long long[:] C = array("q", flat_c or [0])
    cdef long long[:] row = array("q", [0] * (dim + 1))
    cdef long long[:] cur = array("q", [0] * (nn + 1))
    cdef long long[:] buf = array("q", [0] * (nn + 1))

    ident = tuple(1 if i == j else 0 for i in range(dim) for j in range(dim))
    seen = {ident: 0}
    mats = [ident]
    invs = [ident]
    lengths = [0]
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        mat = mats[idx]
        inv = invs[idx]
        depth = lengths[idx]
        for i in range(nn):
            cur[i] = mat[i]
        for g in range(ng):
            # (I - alpha coalpha^T) @ mat
            for j in range(dim):
                s = 0
                for k in range(dim):
                    c = C[g * dim + k]
                    if c:
                        s += c * cur[k * dim + j]
                row[j] = s
            for i in range(dim):
                a = A[g * dim + i]
                for j in range(dim):
                    buf[i * dim + j] = cur[i * dim + j] - a * row[j]
            new = tuple([buf[i] for i in range(nn)])
            if new in seen:
                continue
            seen[new] = len(mats)
            mats.append(new)
            # inv @ (I - alpha coalpha^T)
            for i in range(nn):
                buf[i] = inv[i]
            for i in range(dim):
                s = 0
                for k in range(dim):
                    a = A[g * dim + k]
                    if a:
                        s += buf[i * dim + k] * a
                if s:
                    for j in range(dim):
                        buf[i * dim + j] -= s * C[g * dim + j]
            invs.append(tuple([buf[i] for i in range(nn)]))
            lengths.append(depth + 1)
            if len(mats) > cap:
                return None
            queue.append(len(mats) - 1)
    return mats, invs, lengths


def sign_rows(points, functionals):
    cdef Py_ssize_t p, f, k, npt = len(points), nf = len(functionals), dim
    cdef long long s
    if npt == 0:
        return []
    dim = len(points[0])
    flat_p = [x for pt in points for x in pt]
    flat_f = [x for fn in functionals for x in fn]
    if not (_small_ints(flat_p) and _small_ints(flat_f)) or dim > 64:
        return _kernels_py.sign_rows(points, functionals)
    cdef long long[:] P = array("q", flat_p or [0])
    cdef long long[:] F = array("q", flat_f or [0])
    out = []
    for p in range(npt):
        row = []
        for f in range(nf):
            s = 0
            for k in range(dim):
                s += P[p * dim + k] * F[f * dim + k]
            row.append((s > 0) - (s < 0))
        out.append(tuple(row))
    return out


def conformal_indices(ray_signs, chamber):
    cdef Py_ssize_t i, k, m = len(chamber), nr = len(ray_signs)
    cdef long a
    cdef bint ok
    cdef signed char[:] CH = array("b", list(chamber) or [0])
    out = []
    for i in range(nr):
        rs = ray_signs[i]
        ok = True
        for k in range(m):
            a = rs[k]
            if a and a != CH[k]:
                ok = False
                break
        if ok:
            out.append(i)
    return out
