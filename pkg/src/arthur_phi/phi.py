"""Arthur's Phi-function on the elliptic part of a maximal torus.

The pieces, in the order the evaluation chain uses them:

* :func:`eval_expression_raw` sums over every Borel containing ``T``;
* :func:`eval_expression_wcf` is the same sum collapsed onto Kostant
  representatives, with Levi characters computed from weight multiplicities;
* :func:`eval_expression_factored` multiplies by ``delta_P^{1/2}``, uses the
  stable constants as coefficients and regroups over ``W_L``-orbits;
* :func:`phi_theorem1` is the closed formula on ``T_e(R)``;
* :func:`limit_probe` approaches ``T_e(R)`` along ``exp(t x0)`` and measures
  the distance between the last two.
"""

import math
from dataclasses import dataclass, field

from .characters import (
    eval_delta_B,
    eval_delta_P,
    eval_modulus_deltaP,
    kostant_reps,
    lambda0,
    multiply,
    projected_shift,
    rho_of,
    shifted_weight,
    translate_positive,
    wlm_reps,
    weight_multiplicities,
)
from .chambers import l_arrangement, p_arrangement
from .constants import cbar
from .errors import (
    DegenerateProjection,
    IrregularCharacter,
    IrregularElement,
    MinusOneNotInWeylGroup,
    NonIntegralQ,
    ValidationError,
)
from .rootdatum import minus_one_on_quotient, q_of_L, q_value, quotient_dim

DEFAULT_T_SEQUENCE = (1e-1, 1e-2, 1e-3, 1e-4)


def levi_character(datum, borel, mu, gamma):
    """``tr(gamma; V^M_mu)`` for the Levi ``M`` with positive system ``R_M^+``."""
    m_pos = [datum.roots[i] for i in borel.m_positive]
    return weight_multiplicities(datum.imaginary_system, m_pos, mu).trace(gamma)


def D_M_G(datum, gamma):
    """``det(1 - Ad(gamma); Lie(G)/Lie(M)) = prod_{alpha not in R_M} (1 - alpha(gamma))``."""
    imag = set(datum.classification.imaginary)
    out = 1 + 0j
    for i, a in enumerate(datum.roots):
        if i not in imag:
            out *= 1 - gamma(a)
    return out


# -- coefficient maps ------------------------------------------------------------------------------


def _borel_cache(datum, borel):
    caches = datum.__dict__.setdefault("_phi_cache", {})
    return caches.setdefault(borel.positive + (-1,) + borel.m_positive, {})


def _coset_map(datum, borel):
    """Weyl key -> key of its Kostant representative."""
    cache = _borel_cache(datum, borel)
    if "coset" not in cache:
        reps = {w.key for w in kostant_reps(datum, borel)}
        wm = datum.imaginary_system.weyl()
        out = {}
        for w in datum.weyl():
            for x in wm:
                rep = multiply(datum, x, w).key
                if rep in reps:
                    out[w.key] = rep
                    break
            else:
                raise ValidationError("coset has no Kostant representative")
        cache["coset"] = out
    return cache["coset"]


def _translated_borels(datum, borel):
    cache = _borel_cache(datum, borel)
    if "translated" not in cache:
        cache["translated"] = {w.key: translate_positive(datum, w, borel.positive) for w in datum.weyl()}
    return cache["translated"]


def extend_from_kostant(datum, borel, values):
    """W_M-invariant coefficient map from values on ``W^M`` (dict keyed by Weyl key)."""
    return {k: values[rep] for k, rep in _coset_map(datum, borel).items()}


def is_wm_invariant(datum, m):
    for wm in datum.imaginary_system.weyl():
        if wm.is_identity():
            continue
        for w in datum.weyl():
            if m[multiply(datum, wm, w).key] != m[w.key]:
                return False
    return True


def eval_expression_raw(datum, borel, lam_B, m, gamma):
    """``sum_B m(B) Delta_P(gamma) lam_B(gamma) / Delta_B(gamma)`` over all Borels ``w * B``."""
    dp = eval_delta_P(gamma, datum, borel.n_roots)
    translated = _translated_borels(datum, borel)
    # one factor 1 - alpha(gamma)^{-1} per root, multiplied out afresh for every Borel
    factor = {}
    total = 0j
    for w in datum.weyl():
        c = m.get(w.key, 0)
        if not c:
            continue
        db = 1 + 0j
        for i in translated[w.key]:
            f = factor.get(i)
            if f is None:
                f = factor[i] = eval_delta_B(gamma, datum, (i,))
            db *= f
        total += c * dp * gamma(w.act(lam_B)) / db
    return total


def eval_expression_wcf(datum, borel, lam_B, m, gamma):
    """``sum_{omega in W^M} m(omega * B) eps(omega) tr(gamma; V^M_{omega(lam_B+rho_B)-rho_B})``."""
    cache = _borel_cache(datum, borel)
    key = ("wcf", tuple(lam_B))
    if key not in cache:
        m_sys = datum.imaginary_system
        m_pos = [datum.roots[i] for i in borel.m_positive]
        cache[key] = [(omega.key, omega.sign,
                       weight_multiplicities(m_sys, m_pos, shifted_weight(datum, borel, omega, lam_B)))
                      for omega in kostant_reps(datum, borel)]
    total = 0j
    for k, sign, table in cache[key]:
        c = m.get(k, 0)
        if c:
            total += c * sign * table.trace(gamma)
    return total


def n_coefficients(datum, borel, lam_B, x):
    """``w * B -> cbar_{R_L}(x, p_M(w(lam_B + rho_B) - lambda_0))`` for every ``w`` in ``W``."""
    l_sys = datum.real_system
    out = {}
    for w in datum.weyl():
        lam = projected_shift(datum, borel, w, lam_B)
        try:
            out[w.key] = cbar(l_sys, x, lam)
        except IrregularCharacter as exc:
            raise DegenerateProjection(str(exc)) from exc
    return out


def _probe_point(gamma):
    if not gamma.x0 or not gamma.t:
        raise ValidationError("factored expression needs a probe t * x0 with t > 0")
    return gamma.x0


def _check_g_regular(datum, gamma):
    imag = set(datum.classification.imaginary)
    for i, a in enumerate(datum.roots):
        if i not in imag and gamma.is_trivial_on(a):
            raise IrregularElement(f"gamma is trivial on the root {tuple(a)}")


@dataclass(frozen=True)
class FactoredTerm:
    omega: object
    highest_weight: tuple
    trace: complex
    inner_sum: complex


def factored_terms(datum, borel, lam_B, gamma):
    x = _probe_point(gamma)
    if gamma.t <= 0:
        raise ValidationError("probe parameter t must be positive")
    _check_g_regular(datum, gamma)
    if l_arrangement(datum).locate(x) != borel.lchamber:
        raise ValidationError("probe direction x0 is not inside the L-chamber of the Borel")
    n = n_coefficients(datum, borel, lam_B, x)
    terms = []
    for omega in wlm_reps(datum, borel, lam_B):
        mu = shifted_weight(datum, borel, omega, lam_B)
        base = omega.act(tuple(a + b for a, b in zip(lam_B, rho_of(datum, borel.positive))))
        inner = 0j
        for wl in datum.real_system.weyl():
            w = multiply(datum, wl, omega)
            chi = gamma(tuple(a - b for a, b in zip(wl.act(base), base)))
            inner += wl.sign * chi * n[w.key]
        terms.append(FactoredTerm(omega, tuple(mu), levi_character(datum, borel, mu, gamma), inner))
    return terms


def eval_expression_factored(datum, borel, lam_B, gamma):
    """``delta_P^{1/2}(gamma) sum_{W^{LM}} eps(omega) tr(...) sum_{W_L} eps(w_L) chi(gamma) n(gamma, w_L omega * B)``."""
    half = math.sqrt(eval_modulus_deltaP(gamma, datum, borel.n_roots))
    return half * sum(t.omega.sign * t.trace * t.inner_sum for t in factored_terms(datum, borel, lam_B, gamma))


# -- closed formula --------------------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiResult:
    value: complex
    contributions: tuple      # (omega, eps, highest weight, trace) per omega in W^{LM}
    q_L: int
    order_WL: int
    n_wlm: int
    meta: dict = field(default_factory=dict)


def q_L_integer(datum):
    q = q_of_L(datum)
    if q.denominator != 1:
        raise NonIntegralQ(f"q(L) = {q} is not an integer")
    return int(q)


def phi_theorem1(datum, borel, lam_B, gamma):
    """``(-1)^{q(L)} |W_L| sum_{omega in W^{LM}} eps(omega) tr(gamma; V^M_{omega(lam_B+rho_B)-rho_B})``."""
    if not gamma.in_elliptic_part(datum):
        raise ValidationError("gamma is not in the elliptic part T_e(R)")
    if minus_one_on_quotient(datum) is None:
        raise MinusOneNotInWeylGroup("-1 is not in W_L acting on a_M / a_G")
    q = q_L_integer(datum)
    order = len(datum.real_system.weyl())
    reps = wlm_reps(datum, borel, lam_B)
    contribs = []
    total = 0j
    for omega in reps:
        mu = shifted_weight(datum, borel, omega, lam_B)
        tr = levi_character(datum, borel, mu, gamma)
        contribs.append((omega, omega.sign, tuple(mu), tr))
        total += omega.sign * tr
    value = (-1) ** q * order * total
    return PhiResult(value, tuple(contribs), q, order, len(reps),
                     {"lambda0": tuple(lambda0(datum, lam_B)), "dim_aM_over_aG": quotient_dim(datum)})


def phi_split_central(datum, lam_B, gamma):
    """Closed form on a split torus: ``(-1)^{q(G)} |W| lambda_0(z)`` for central ``z``."""
    q = q_value(len(datum.system.positive), quotient_dim(datum))
    if q.denominator != 1:
        raise NonIntegralQ(f"q(G) = {q} is not an integer")
    return (-1) ** int(q) * len(datum.weyl()) * gamma(lambda0(datum, lam_B))


# -- limits ----------------------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeReport:
    target: complex
    ts: tuple
    values: tuple
    errors: tuple
    rate: float
    converges: bool


def default_x0(datum, borel):
    return p_arrangement(datum).chambers[borel.pchamber].point


RATE_MARGIN = 2.0


def limit_probe(datum, borel, lam_B, gamma_c, x0=None, t_seq=DEFAULT_T_SEQUENCE, abs_tol=1e-9,
                margin=RATE_MARGIN):
    """Evaluate the factored expression at ``gamma_c exp(t x0)`` and compare with the closed formula.

    The linear rate ``C`` is ``margin`` times the largest ``error / t`` over the
    first two ``t`` values; the rest must satisfy ``|value(t) - target| <= C t``
    (plus ``abs_tol`` for rounding).  The error is analytic in ``t``, so
    ``error / t`` tends to a finite limit but may still creep upwards between
    the fitting points and the small ``t``; the margin absorbs that drift while
    a wrong limit still blows the ratio up by orders of magnitude.
    """
    if x0 is None:
        x0 = default_x0(datum, borel)
    target = phi_theorem1(datum, borel, lam_B, gamma_c).value
    values, errors = [], []
    for t in t_seq:
        v = eval_expression_factored(datum, borel, lam_B, gamma_c.with_probe(x0, t))
        values.append(v)
        errors.append(abs(v - target))
    if len(t_seq) < 2:
        raise ValidationError("limit probe needs at least two t values")
    fit = t_seq[:2]
    rate = margin * max(e / t for e, t in zip(errors[:2], fit))
    slack = abs_tol * max(1.0, abs(target))
    ok = all(e <= rate * t + slack for e, t in zip(errors[2:], t_seq[2:]))
    return ProbeReport(target, tuple(t_seq), tuple(values), tuple(errors), rate, ok)


def dmg_factor(datum, borel, gamma):
    """``(|D_M^G(gamma)|^{1/2}, delta_P^{1/2}(gamma) |Delta_P(gamma)|)``."""
    lhs = math.sqrt(abs(D_M_G(datum, gamma)))
    rhs = math.sqrt(eval_modulus_deltaP(gamma, datum, borel.n_roots)) * abs(eval_delta_P(gamma, datum, borel.n_roots))
    return lhs, rhs


def dmg_factor_check(datum, borel, gamma, tol=1e-9):
    lhs, rhs = dmg_factor(datum, borel, gamma)
    return abs(lhs - rhs) <= tol * max(1.0, abs(rhs))
