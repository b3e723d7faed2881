"""Torus elements, Borel choices, Weyl-group representatives and characters.

Torus elements are evaluated in double precision; everything combinatorial
(positive systems, representatives, weights, multiplicities) is exact.
"""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .chambers import l_arrangement, p_arrangement, parabolic_from_pchamber
from .errors import DegenerateProjection, IrregularElement, NotDominant, NotIntegral, ValidationError
from .linalg import dot, matvec, solve
from .rootdatum import WeightVec, project_pG

TWO_PI = 2 * math.pi


# -- torus elements --------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusElement:
    """``gamma(lam) = exp(2 pi i <lam, u>) * exp(<lam, s>) * exp(t <lam, x0>)``.

    ``u`` is the compact parameter, ``s`` the split central one and ``t * x0``
    an optional probe direction in ``a_M``.  Empty tuples mean zero.
    """

    u: tuple = ()
    s: tuple = ()
    x0: tuple = ()
    t: float = 0.0

    def log(self, weight):
        z = 0j
        if self.u:
            z += 2j * math.pi * float(dot(weight, self.u))
        if self.s:
            z += float(dot(weight, self.s))
        if self.t and self.x0:
            z += self.t * float(dot(weight, self.x0))
        return z

    def __call__(self, weight):
        return cmath.exp(self.log(weight))

    def inverse(self):
        neg = lambda v: tuple(-x for x in v)
        return TorusElement(neg(self.u), neg(self.s), self.x0, -self.t)

    def with_probe(self, x0, t):
        return TorusElement(self.u, self.s, tuple(x0), t)

    def without_probe(self):
        return TorusElement(self.u, self.s)

    def is_trivial_on(self, weight, tol=1e-12):
        """Whether ``gamma(weight) == 1`` (up to ``tol``)."""
        z = self.log(weight)
        turns = z.imag / TWO_PI
        return abs(z.real) <= tol and abs(turns - round(turns)) <= tol

    def in_elliptic_part(self, datum, tol=1e-12):
        """Whether the element lies in ``T_e(R)``: ``u`` compact, ``s`` central, no probe."""
        if self.t and self.x0 and any(x for x in self.x0):
            return False
        st = datum.sigma.coweight_matrix
        if self.u:
            su = matvec(st, self.u)
            if any(abs(float(a + b)) > tol for a, b in zip(su, self.u)):
                return False
        if self.s:
            ss = matvec(st, self.s)
            if any(abs(float(a - b)) > tol for a, b in zip(ss, self.s)):
                return False
            if any(abs(float(dot(r, self.s))) > tol for r in datum.roots):
                return False
        return True


def elliptic_element(datum, u_coords=(), s_coords=()):
    """Torus element from coordinates in the compact and central bases."""
    n = datum.rank
    u = [Fraction(0)] * n
    for c, b in zip(u_coords, datum.compact_basis):
        u = [x + Fraction(c) * y for x, y in zip(u, b)]
    s = [Fraction(0)] * n
    for c, b in zip(s_coords, datum.aG_basis):
        s = [x + Fraction(c) * y for x, y in zip(s, b)]
    return TorusElement(tuple(u), tuple(s))


# -- Borels ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class BorelChoice:
    """Positive system ``R^+ = R_M^+ | R_N`` with ``R_N`` the roots of a parabolic."""

    positive: tuple       # root indices of R^+
    m_positive: tuple     # R_M^+
    n_roots: tuple        # R_N
    pchamber: int         # index into p_chambers
    lchamber: int         # index into l_chambers
    l_positive: tuple = field(default=())  # R_L^+ = R_N cap R_L

    def positive_roots(self, datum):
        return tuple(datum.roots[i] for i in self.positive)


def is_positive_system(datum, indices):
    roots = datum.roots
    pos = {tuple(roots[i]) for i in indices}
    neg = {tuple(-x for x in r) for r in pos}
    if pos & neg or len(pos | neg) != len(roots):
        return False
    allr = {tuple(r) for r in roots}
    for a in pos:
        for b in pos:
            c = tuple(x + y for x, y in zip(a, b))
            if c in allr and c not in pos:
                return False
    return True


def make_borel(datum, positive):
    """Validate a positive system and attach its parabolic and L-chamber."""
    positive = tuple(sorted(set(int(i) for i in positive)))
    if not is_positive_system(datum, positive):
        raise ValidationError(f"root indices {list(positive)} do not form a positive system")
    imag = set(datum.classification.imaginary)
    real = set(datum.classification.real)
    m_pos = tuple(i for i in positive if i in imag)
    n_roots = tuple(i for i in positive if i not in imag)
    parr = p_arrangement(datum)
    for k, cp in enumerate(parr.chambers):
        if parabolic_from_pchamber(datum, cp) == n_roots:
            pidx = k
            break
    else:
        raise ValidationError("R^+ minus R_M^+ is not the root set of a parabolic with Levi M")
    lidx = l_arrangement(datum).locate(parr.chambers[pidx].point)
    return BorelChoice(positive, m_pos, n_roots, pidx, lidx, tuple(i for i in n_roots if i in real))


def _lex_positive_indices(datum, indices):
    return tuple(i for i in indices if next(x for x in datum.roots[i] if x) > 0)


def borel_from_pchamber(datum, pchamber_index, m_positive=None):
    """Borel inside the parabolic of a P-chamber; ``R_M^+`` defaults to lexicographic."""
    cp = p_arrangement(datum).chambers[pchamber_index]
    n_roots = parabolic_from_pchamber(datum, cp)
    if m_positive is None:
        m_positive = _lex_positive_indices(datum, datum.classification.imaginary)
    return make_borel(datum, tuple(n_roots) + tuple(m_positive))


def default_borel(datum):
    """Borel containing the first P-chamber inside the first L-chamber."""
    return borel_from_pchamber(datum, pchambers_in(datum, 0)[0])


def pchambers_in(datum, lchamber_index):
    larr = l_arrangement(datum)
    return [k for k, cp in enumerate(p_arrangement(datum).chambers) if larr.locate(cp.point) == lchamber_index]


def m_positive_systems(datum):
    """Every positive system of ``R_M``, as root-index tuples."""
    m_sys = datum.imaginary_system
    base = [datum.roots[i] for i in _lex_positive_indices(datum, datum.classification.imaginary)]
    out = set()
    for w in m_sys.weyl():
        out.add(tuple(sorted(datum.index(tuple(w.act(r))) for r in base)))
    return sorted(out)


def all_borels(datum, lchamber_index):
    """All Borels ``B`` with ``R_N cap R_L`` the positive system of the given L-chamber."""
    out = []
    for p in pchambers_in(datum, lchamber_index):
        for mp in m_positive_systems(datum):
            out.append(borel_from_pchamber(datum, p, mp))
    return out


def rho(roots, dim=None):
    """Half the sum of the given (positive) roots."""
    roots = list(roots)
    if not roots:
        return WeightVec(Fraction(0) for _ in range(dim or 0))
    n = len(roots[0])
    return WeightVec(Fraction(sum(r[j] for r in roots), 2) for j in range(n))


def rho_of(datum, indices):
    if not indices:
        return WeightVec(Fraction(0) for _ in range(datum.rank))
    return rho(datum.roots[i] for i in indices)


def simple_of(roots):
    pos = [tuple(r) for r in roots]
    sums = {tuple(a + b for a, b in zip(p, q)) for p in pos for q in pos}
    return [r for r in pos if r not in sums]


def dominant_conjugate(system, positive_roots, weight):
    """``(w, dominant)``: Weyl conjugate of ``weight`` dominant for ``positive_roots``.

    ``w`` is returned as a list of simple roots reflected in, in order.
    """
    coroot = dict(zip(system.roots, system.coroots))
    simple = simple_of(positive_roots)
    v = tuple(weight)
    word = []
    changed = True
    while changed:
        changed = False
        for a in simple:
            k = dot(v, coroot[a])
            if k < 0:
                v = tuple(x - k * y for x, y in zip(v, a))
                word.append(a)
                changed = True
    return word, v


def lambda_for_borel(datum, borel, lam_ref):
    """Highest weight w.r.t. ``borel`` of the representation with extreme weight ``lam_ref``."""
    return WeightVec(dominant_conjugate(datum.system, borel.positive_roots(datum), lam_ref)[1])


def is_dominant(datum, positive_indices, weight, strict=False):
    for i in positive_indices:
        k = dot(weight, datum.coroots[i])
        if k < 0 or (strict and k == 0):
            return False
    return True


# -- Delta functions ----------------------------------------------------------------------------


def _delta(gamma, roots):
    out = 1 + 0j
    for a in roots:
        if gamma.is_trivial_on(a):
            raise IrregularElement(f"gamma is trivial on the root {tuple(a)}")
        out *= 1 - cmath.exp(-gamma.log(a))
    return out


def eval_delta_B(gamma, datum, positive_indices):
    """``prod_{alpha > 0} (1 - alpha(gamma)^{-1})``."""
    return _delta(gamma, [datum.roots[i] for i in positive_indices])


def eval_delta_P(gamma, datum, n_roots):
    return _delta(gamma, [datum.roots[i] for i in n_roots])


def eval_modulus_deltaP(gamma, datum, n_roots):
    """Modulus character ``prod_{alpha in R_N} |alpha(gamma)|``."""
    return math.exp(sum(gamma.log(datum.roots[i]).real for i in n_roots))


def translate_positive(datum, w, positive_indices):
    """Indices of ``w R^+`` (the Borel ``w * B``)."""
    return tuple(sorted(datum.index(tuple(w.act(datum.roots[i]))) for i in positive_indices))


def delta_quotient(datum, w, positive_indices, gamma):
    """Both sides of ``Delta_{w*B} / Delta_B = eps(w) (rho_B - w rho_B)(gamma)``."""
    lhs = eval_delta_B(gamma, datum, translate_positive(datum, w, positive_indices)) / eval_delta_B(
        gamma, datum, positive_indices)
    r = rho_of(datum, positive_indices)
    rhs = w.sign * gamma(tuple(a - b for a, b in zip(r, w.act(r))))
    return lhs, rhs


def delta_quotient_identity_check(datum, w, positive_indices, gamma, tol=1e-9):
    lhs, rhs = delta_quotient(datum, w, positive_indices, gamma)
    return abs(lhs - rhs) <= tol * max(1.0, abs(rhs))


# -- Kostant and W^{LM} representatives ----------------------------------------------------------


def kostant_reps(datum, borel):
    """``W^M = {w : w^{-1} R_M^+ in R^+}`` in Weyl order."""
    pos = {tuple(datum.roots[i]) for i in borel.positive}
    m_pos = [datum.roots[i] for i in borel.m_positive]
    out = []
    for w in datum.weyl():
        inv = w.inverse_matrix
        if all(tuple(matvec(inv, a)) in pos for a in m_pos):
            out.append(w)
    return out


def kostant_rep_of(datum, borel, w):
    """The element of ``W^M`` in the coset ``W_M w``."""
    reps = {x.key: x for x in kostant_reps(datum, borel)}
    for wm in datum.imaginary_system.weyl():
        cand = _compose(wm.inverse_matrix, w.matrix)
        key = tuple(x for row in cand for x in row)
        if key in reps:
            return reps[key]
    raise ValidationError("coset has no Kostant representative")


def _compose(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def weyl_lookup(datum):
    cached = datum.__dict__.get("_wlookup")
    if cached is None:
        cached = {w.key: w for w in datum.weyl()}
        datum.__dict__["_wlookup"] = cached
    return cached


def multiply(datum, a, b):
    """The Weyl element ``a b``."""
    m = _compose(a.matrix, b.matrix)
    return weyl_lookup(datum)[tuple(x for row in m for x in row)]


def shifted_weight(datum, borel, omega, lam_B):
    """``omega(lam_B + rho_B) - rho_B``."""
    r = rho_of(datum, borel.positive)
    v = omega.act(tuple(a + b for a, b in zip(lam_B, r)))
    return WeightVec(a - b for a, b in zip(v, r))


def lambda0(datum, lam_B):
    """Central character ``lambda_0 = p_G(lam_B)``."""
    return project_pG(datum, lam_B)


def projected_shift(datum, borel, omega, lam_B):
    """``p_M(omega(lam_B + rho_B - lambda_0))`` as a weight."""
    r = rho_of(datum, borel.positive)
    l0 = lambda0(datum, lam_B)
    v = omega.act(tuple(a + b - c for a, b, c in zip(lam_B, r, l0)))
    return datum.project_pM(v)


def wlm_reps(datum, borel, lam_B, lchamber=None):
    """One ``W^M`` representative per ``W_L``-orbit, the one whose projected shift is C-dominant."""
    l_pos = borel.l_positive
    if lchamber is not None and lchamber != borel.lchamber:
        raise ValidationError(f"Borel lies over L-chamber {borel.lchamber}, not {lchamber}")
    wm = kostant_reps(datum, borel)
    keys = {w.key: k for k, w in enumerate(wm)}
    wl = datum.real_system.weyl()
    orbit = [-1] * len(wm)
    norb = 0
    for k, w in enumerate(wm):
        if orbit[k] >= 0:
            continue
        for x in wl:
            m = _compose(x.matrix, w.matrix)
            j = keys.get(tuple(v for row in m for v in row))
            if j is None:
                raise ValidationError("W_L does not preserve W^M")
            orbit[j] = norb
        norb += 1
    chosen = [None] * norb
    for k, w in enumerate(wm):
        lam = projected_shift(datum, borel, w, lam_B)
        pairs = [dot(lam, datum.coroots[i]) for i in l_pos]
        if any(p == 0 for p in pairs):
            raise DegenerateProjection(f"projected weight {tuple(lam)} lies on a real root wall")
        if all(p > 0 for p in pairs):
            if chosen[orbit[k]] is not None:
                raise DegenerateProjection("two C-dominant members in one W_L-orbit")
            chosen[orbit[k]] = w
    if any(c is None for c in chosen):
        raise DegenerateProjection("a W_L-orbit on W^M has no C-dominant member")
    order = {w.key: k for k, w in enumerate(datum.weyl())}
    return sorted(chosen, key=lambda w: order[w.key])


# -- weight multiplicities -------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightMultiplicityTable:
    highest: tuple
    weights: dict          # weight -> multiplicity

    @property
    def dimension(self):
        return sum(self.weights.values())

    def trace(self, gamma):
        return sum(m * gamma(w) for w, m in self.weights.items())


_MULT_CACHE = {}


def _form(coroots):
    def b(x, y):
        return sum(dot(x, c) * dot(y, c) for c in coroots)
    return b


def weight_multiplicities(system, positive_roots, mu):
    """Freudenthal's recursion for the irreducible module of highest weight ``mu``.

    ``system`` is the (possibly empty) root system of the reductive group,
    ``positive_roots`` a positive system in it; components of ``mu`` outside
    the root span are central and pass through unchanged.
    """
    for x in mu:
        if Fraction(x).denominator != 1:
            raise NotIntegral(f"highest weight {tuple(mu)} is not integral")
    mu = tuple(int(x) for x in mu)
    positive_roots = tuple(sorted(tuple(r) for r in positive_roots))
    key = (system.key, positive_roots, mu)
    hit = _MULT_CACHE.get(key)
    if hit is not None:
        return hit
    coroot = dict(zip(system.roots, system.coroots))
    for a in positive_roots:
        if dot(mu, coroot[a]) < 0:
            raise NotDominant(f"{mu} is not dominant: <mu, {coroot[a]}> < 0")
    if not positive_roots:
        table = WeightMultiplicityTable(mu, {mu: 1})
        _MULT_CACHE[key] = table
        return table
    form = _form(system.coroots)
    simple = simple_of(positive_roots)
    r = rho(positive_roots, len(mu))
    mr = tuple(a + b for a, b in zip(mu, r))
    top = form(mr, mr)

    def in_hull(v):
        _, dom = dominant_conjugate(system, positive_roots, v)
        diff = tuple(a - b for a, b in zip(mu, dom))
        return _nonneg_in_simple(diff, simple, coroot)

    mult = {mu: 1}
    level = [mu]
    while level:
        nxt = []
        seen = set()
        for v in level:
            for a in simple:
                w = tuple(x - y for x, y in zip(v, a))
                if w in seen or w in mult:
                    continue
                seen.add(w)
                if not in_hull(w):
                    continue
                total = 0
                for b in positive_roots:
                    k = 1
                    while True:
                        u = tuple(x + k * y for x, y in zip(w, b))
                        m = mult.get(u)
                        if m is None:
                            break
                        total += m * form(u, b)
                        k += 1
                wr = tuple(x + y for x, y in zip(w, r))
                denom = top - form(wr, wr)
                m = Fraction(2 * total) / denom
                if m.denominator != 1 or m < 0:
                    raise NotIntegral(f"Freudenthal produced multiplicity {m} at {w}")
                if m:
                    mult[w] = int(m)
                    nxt.append(w)
        level = nxt
    table = WeightMultiplicityTable(mu, mult)
    _MULT_CACHE[key] = table
    return table


def _nonneg_in_simple(diff, simple, coroot):
    """Whether ``diff`` is a non-negative integer combination of ``simple``."""
    if not any(diff):
        return True
    cols = list(zip(*simple))
    sol = solve([tuple(row) for row in cols], diff)
    if sol is None:
        return False
    return all(c >= 0 and c.denominator == 1 for c in sol)


def weyl_dimension(system, positive_roots, mu):
    coroot = dict(zip(system.roots, system.coroots))
    r = rho(positive_roots, len(mu))
    num = den = Fraction(1)
    for a in positive_roots:
        c = coroot[tuple(a)]
        num *= dot(tuple(x + y for x, y in zip(mu, r)), c)
        den *= dot(r, c)
    d = num / den
    if d.denominator != 1:
        raise NotIntegral(f"Weyl dimension {d} is not an integer")
    return int(d)


def trace(system, positive_roots, mu, gamma):
    """``tr(gamma; V_mu)`` from the weight multiplicities (valid at any gamma)."""
    return weight_multiplicities(system, positive_roots, mu).trace(gamma)


def wcf_trace(system, positive_roots, mu, gamma):
    """Weyl character formula quotient; needs ``gamma`` regular for ``system``."""
    r = rho(positive_roots, len(mu))
    mr = tuple(a + b for a, b in zip(mu, r))
    weyl = system.weyl()
    num = sum(w.sign * gamma(w.act(mr)) for w in weyl)
    den = sum(w.sign * gamma(w.act(r)) for w in weyl)
    if abs(den) < 1e-300:
        raise IrregularElement("Weyl denominator vanishes")
    return num / den


def lowest_weight_dual(system, positive_roots, mu):
    """Highest weight ``-w_0 mu`` of the dual module."""
    pos = {tuple(a) for a in positive_roots}
    neg = {tuple(-x for x in a) for a in pos}
    for w in system.weyl():
        if all(tuple(w.act(a)) in neg for a in pos):
            return tuple(-x for x in w.act(mu))
    raise ValidationError("no longest element found")
