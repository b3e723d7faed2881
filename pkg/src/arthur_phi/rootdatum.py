"""Real root data, root systems and Weyl groups.

Weights live in ``X^*(T) = Z^n`` and coweights in ``X_*(T) = Z^n``; the
canonical pairing is the dot product.  A Galois involution is supplied as
an integer matrix acting on weights (column vectors); it acts on coweights
by the inverse transpose, which for an involution is the plain transpose.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import kernels
from .errors import DatumError, WeylCapExceeded
from .linalg import dot, identity, independent_subset, inverse, is_zero, matvec, nullspace, transpose

DEFAULT_WEYL_CAP = 60_000


class WeightVec(tuple):
    """Element of ``X^*(T) (x) Q``."""

    __slots__ = ()


class CoweightVec(tuple):
    """Element of ``X_*(T) (x) Q``."""

    __slots__ = ()


def pairing(weight, coweight):
    """Canonical pairing; refuses two vectors of the same kind."""
    if isinstance(weight, CoweightVec) or isinstance(coweight, WeightVec):
        raise TypeError("pairing takes a weight and a coweight, in that order")
    return dot(weight, coweight)


@dataclass(frozen=True)
class Involution:
    matrix: tuple

    @property
    def coweight_matrix(self):
        return transpose(self.matrix)

    def act(self, weight):
        return WeightVec(matvec(self.matrix, weight))

    def act_coweight(self, coweight):
        return CoweightVec(matvec(self.coweight_matrix, coweight))


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element as an integer matrix on weights."""

    matrix: tuple
    length: int
    sign: int
    inverse_matrix: tuple = field(repr=False, compare=False)

    @property
    def key(self):
        return tuple(x for row in self.matrix for x in row)

    def act(self, weight):
        return WeightVec(matvec(self.matrix, weight))

    def act_coweight(self, coweight):
        # inverse transpose of the weight action
        inv = self.inverse_matrix
        n = len(inv)
        return CoweightVec(sum(inv[k][i] * coweight[k] for k in range(n)) for i in range(n))

    def coweight_matrix(self):
        return transpose(self.inverse_matrix)

    def is_identity(self):
        return self.matrix == identity(len(self.matrix))


def _unflatten(flat, n):
    return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


class RootSystem:
    """Finite reduced root system given by paired integer roots and coroots.

    The ambient space is the whole coordinate space; roots need not span it
    (central directions are allowed and simply ride along).
    """

    def __init__(self, roots, coroots, name=""):
        self.roots = tuple(tuple(int(x) for x in r) for r in roots)
        self.coroots = tuple(tuple(int(x) for x in c) for c in coroots)
        self.name = name
        if self.roots:
            self.dim = len(self.roots[0])
        else:
            self.dim = None
        self._index = {r: i for i, r in enumerate(self.roots)}

    @classmethod
    def empty(cls, dim, name=""):
        rs = cls((), (), name)
        rs.dim = dim
        return rs

    def __len__(self):
        return len(self.roots)

    def __repr__(self):
        return f"RootSystem({self.name or '?'}, |R|={len(self.roots)}, rank={self.rank})"

    def index(self, root):
        return self._index[tuple(root)]

    def __contains__(self, root):
        return tuple(root) in self._index

    @cached_property
    def key(self):
        return tuple(sorted(zip(self.roots, self.coroots)))

    @cached_property
    def positive(self):
        """Indices of the lexicographically positive roots."""
        return tuple(i for i, r in enumerate(self.roots) if _lex_positive(r))

    @cached_property
    def simple(self):
        pos = [self.roots[i] for i in self.positive]
        sums = {tuple(a + b for a, b in zip(p, q)) for p in pos for q in pos}
        return tuple(i for i in self.positive if self.roots[i] not in sums)

    @cached_property
    def rank(self):
        if not self.coroots:
            return 0
        return len(independent_subset(self.coroots))

    @cached_property
    def span_basis(self):
        """Independent coroots spanning the essential coweight subspace."""
        return tuple(self.coroots[i] for i in independent_subset(self.coroots))

    def reflect(self, i, weight):
        a, c = self.roots[i], self.coroots[i]
        k = dot(weight, c)
        return tuple(w - k * x for w, x in zip(weight, a))

    def reflect_coweight(self, i, coweight):
        a, c = self.roots[i], self.coroots[i]
        k = dot(a, coweight)
        return tuple(w - k * x for w, x in zip(coweight, c))

    def weyl(self, cap=DEFAULT_WEYL_CAP):
        """All Weyl group elements ordered by (length, matrix)."""
        cached = self.__dict__.get("_weyl")
        if cached is not None:
            return cached
        n = self.dim if self.dim is not None else 0
        gens = [(self.roots[i], self.coroots[i]) for i in self.simple]
        out = kernels.weyl_closure(gens, n, cap)
        if out is None:
            raise WeylCapExceeded(f"Weyl group of {self.name or 'system'} exceeds cap {cap}")
        mats, invs, lengths = out
        elems = [
            WeylElement(_unflatten(m, n), ln, -1 if ln % 2 else 1, _unflatten(v, n))
            for m, v, ln in zip(mats, invs, lengths)
        ]
        elems.sort(key=lambda w: (w.length, w.key))
        self.__dict__["_weyl"] = elems
        return elems

    def minus_one_element(self, cap=DEFAULT_WEYL_CAP):
        """A Weyl element acting as -1 on the coroot span, or ``None``."""
        basis = self.span_basis
        for w in self.weyl(cap):
            if all(w.act_coweight(b) == tuple(-x for x in b) for b in basis):
                return w
        return None

    def subsystem(self, indices, name=""):
        idx = sorted(indices)
        rs = RootSystem([self.roots[i] for i in idx], [self.coroots[i] for i in idx], name)
        rs.dim = self.dim
        return rs

    def q(self):
        """``(|R^+| + rank) / 2`` on the coroot span."""
        return q_value(len(self.positive), self.rank)


def _lex_positive(v):
    for x in v:
        if x:
            return x > 0
    return False


def q_value(positive_root_count, dim):
    return Fraction(positive_root_count + dim, 2)


@dataclass(frozen=True)
class RootClassification:
    real: tuple
    imaginary: tuple
    complex: tuple


class RealRootDatum:
    """Root datum of ``(G, T)`` together with the Galois involution on ``X^*(T)``.

    Build instances through :func:`validate_datum`.
    """

    def __init__(self, rank, roots, coroots, sigma, name=""):
        self.rank = rank
        self.roots = tuple(WeightVec(r) for r in roots)
        self.coroots = tuple(CoweightVec(c) for c in coroots)
        self.sigma = Involution(tuple(tuple(row) for row in sigma))
        self.name = name
        self.system = RootSystem(self.roots, self.coroots, name)
        self.system.dim = rank

    def __repr__(self):
        return f"RealRootDatum({self.name or '?'}, rank={self.rank}, |R|={len(self.roots)})"

    def index(self, root):
        return self.system.index(root)

    def weyl(self, cap=DEFAULT_WEYL_CAP):
        return self.system.weyl(cap)

    @cached_property
    def classification(self):
        return classify_roots(self)

    @cached_property
    def real_system(self):
        return self.system.subsystem(self.classification.real, f"{self.name}:L")

    @cached_property
    def imaginary_system(self):
        return self.system.subsystem(self.classification.imaginary, f"{self.name}:M")

    @cached_property
    def aM_basis(self):
        """Rational basis of the sigma = +1 eigenspace of coweights."""
        s = self.sigma.coweight_matrix
        n = self.rank
        rows = [tuple(s[i][j] - (1 if i == j else 0) for j in range(n)) for i in range(n)]
        return tuple(nullspace(rows, n))

    @cached_property
    def compact_basis(self):
        """Rational basis of the sigma = -1 eigenspace of coweights."""
        s = self.sigma.coweight_matrix
        n = self.rank
        rows = [tuple(s[i][j] + (1 if i == j else 0) for j in range(n)) for i in range(n)]
        return tuple(nullspace(rows, n))

    @cached_property
    def aG_basis(self):
        """Basis of coweights fixed by sigma and killed by every root."""
        n = self.rank
        s = self.sigma.coweight_matrix
        rows = [tuple(s[i][j] - (1 if i == j else 0) for j in range(n)) for i in range(n)]
        rows += [tuple(r) for r in self.roots]
        return tuple(nullspace(rows, n))

    @cached_property
    def _pG_matrix(self):
        n = self.rank
        span = [tuple(self.roots[i]) for i in independent_subset(self.roots)]
        fixed = nullspace(list(self.coroots), n) if self.coroots else [identity(n)[i] for i in range(n)]
        cols = span + list(fixed)
        basis_inv = inverse(transpose(cols))
        keep = [Fraction(0)] * len(span) + [Fraction(1)] * len(fixed)
        # P_W = B diag(keep) B^{-1}
        b = transpose(cols)
        return tuple(
            tuple(sum(b[i][k] * keep[k] * basis_inv[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )

    def project_pM(self, v):
        return project_pM(self, v)

    def project_pG(self, v):
        return project_pG(self, v)

    def capability_flags(self):
        l_sys = self.real_system
        return {
            "has_minus_one_in_WL": has_minus_one_on_quotient(self),
            "has_discrete_series_torus": self.system.minus_one_element() is not None,
            "prop1_eligible": (self.system.rank > 0 and self.system.minus_one_element() is not None
                               and self.system.q().denominator == 1),
            "real_roots": len(l_sys.roots),
        }


def validate_datum(rank, roots, coroots, sigma, name=""):
    """Validate raw integer data and return a :class:`RealRootDatum`.

    Raises :class:`DatumError` listing every violated invariant.
    """
    violations = []

    def check_int_matrix(label, rows, width):
        for row in rows:
            if len(row) != width:
                violations.append(("ShapeMismatch", f"{label} row {list(row)} has length != {width}"))
                return False
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    if isinstance(x, Fraction) and x.denominator == 1:
                        continue
                    violations.append(("NotIntegral", f"{label} entry {x!r} is not an integer"))
                    return False
        return True

    if len(roots) != len(coroots):
        violations.append(("ShapeMismatch", f"{len(roots)} roots but {len(coroots)} coroots"))
    ok = check_int_matrix("root", roots, rank)
    ok &= check_int_matrix("coroot", coroots, rank)
    ok &= check_int_matrix("sigma", sigma, rank) and len(sigma) == rank
    if violations:
        raise DatumError(violations)
    roots = [tuple(int(x) for x in r) for r in roots]
    coroots = [tuple(int(x) for x in c) for c in coroots]
    sigma = [tuple(int(x) for x in row) for row in sigma]

    root_set = set(roots)
    if len(root_set) != len(roots):
        violations.append(("DuplicateRoot", "root list has repeated entries"))
    if any(is_zero(r) for r in roots):
        violations.append(("ZeroRoot", "zero vector in root list"))

    sq = [[sum(sigma[i][k] * sigma[k][j] for k in range(rank)) for j in range(rank)] for i in range(rank)]
    if sq != [list(row) for row in identity(rank)]:
        violations.append(("NotAnInvolution", "sigma o sigma != identity"))

    for a, c in zip(roots, coroots):
        if dot(a, c) != 2:
            violations.append(("PairingNotTwo", f"<{list(a)}, {list(c)}> = {dot(a, c)}"))

    coroot_of = dict(zip(roots, coroots))
    for a, c in zip(roots, coroots):
        for b, d in zip(roots, coroots):
            k = dot(b, c)
            img = tuple(x - k * y for x, y in zip(b, a))
            if img not in root_set:
                violations.append(("ReflectionEscapesRootSet", f"s_{list(a)}({list(b)}) = {list(img)}"))
                continue
            kc = dot(a, d)
            cimg = tuple(x - kc * y for x, y in zip(d, c))
            if coroot_of.get(img) != cimg:
                violations.append(("ReflectionEscapesRootSet",
                                   f"coroot of s_{list(a)}({list(b)}) is not s_{list(a)} of its coroot"))

    st = transpose(sigma)
    for a, c in zip(roots, coroots):
        img = tuple(matvec(sigma, a))
        if img not in root_set:
            violations.append(("SigmaNotRootPermutation", f"sigma({list(a)}) = {list(img)} is not a root"))
        elif coroot_of.get(img) != tuple(matvec(st, c)):
            violations.append(("SigmaNotRootPermutation", f"sigma does not carry the coroot of {list(a)} correctly"))

    if violations:
        raise DatumError(_dedupe(violations))
    return RealRootDatum(rank, roots, coroots, sigma, name)


def _dedupe(items):
    seen, out = set(), []
    for it in items:
        if it not in seen:
            seen.add(it)
            out.append(it)
    return out


def generate_weyl(datum, cap=DEFAULT_WEYL_CAP):
    return datum.weyl(cap)


def classify_roots(datum):
    real, imag, cplx = [], [], []
    for i, a in enumerate(datum.roots):
        img = datum.sigma.act(a)
        if img == a:
            real.append(i)
        elif img == tuple(-x for x in a):
            imag.append(i)
        else:
            cplx.append(i)
    return RootClassification(tuple(real), tuple(imag), tuple(cplx))


def weyl_subgroups(datum, cap=DEFAULT_WEYL_CAP):
    """``(W_L, W_M)``: Weyl groups of the real and of the imaginary roots."""
    return datum.real_system.weyl(cap), datum.imaginary_system.weyl(cap)


def project_pM(datum, v):
    """Projection of a weight onto the sigma-fixed part, ``(v + sigma v) / 2``."""
    sv = matvec(datum.sigma.matrix, v)
    return WeightVec(Fraction(a + b, 2) for a, b in zip(v, sv))


def project_pG(datum, v):
    """Projection onto weights fixed by sigma and by the whole Weyl group."""
    return WeightVec(matvec(datum._pG_matrix, project_pM(datum, v)))


def quotient_dim(datum):
    """``dim(a_M / a_G)``."""
    return len(datum.aM_basis) - len(datum.aG_basis)


def has_minus_one_on_quotient(datum, cap=DEFAULT_WEYL_CAP):
    """Whether some ``w_L`` in ``W_L`` acts as -1 on ``a_M / a_G``."""
    return minus_one_on_quotient(datum, cap) is not None


def minus_one_on_quotient(datum, cap=DEFAULT_WEYL_CAP):
    l_sys = datum.real_system
    if l_sys.rank != quotient_dim(datum):
        return None
    return l_sys.minus_one_element(cap)


def q_of_L(datum):
    """``q(L) = (|R_L^+| + dim(a_M / a_G)) / 2``."""
    return q_value(len(datum.real_system.positive), quotient_dim(datum))
