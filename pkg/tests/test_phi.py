import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arthur_phi.cartan import CARTAN, from_cartan
from arthur_phi.characters import (
    TorusElement,
    all_borels,
    default_borel,
    eval_modulus_deltaP,
    kostant_reps,
    lambda_for_borel,
    trace,
    wcf_trace,
)
from arthur_phi.chambers import l_chambers
from arthur_phi.errors import IrregularElement, MinusOneNotInWeylGroup, ValidationError
from arthur_phi.phi import (
    D_M_G,
    default_x0,
    dmg_factor,
    dmg_factor_check,
    eval_expression_factored,
    eval_expression_raw,
    eval_expression_wcf,
    extend_from_kostant,
    factored_terms,
    is_wm_invariant,
    limit_probe,
    n_coefficients,
    phi_split_central,
    phi_theorem1,
    q_L_integer,
)
from arthur_phi.reports import random_elliptic, random_regular_element
from arthur_phi.rootdatum import validate_datum

from conftest import entry, sp4_swap

ENTRIES = ["sl2-split", "sl2-compact", "sp4-split", "sp4-swap", "sp4-mixed", "sp4-compact",
           "a1xa1-split", "gl2-split", "gl2-elliptic", "g2-split", "b3-split"]


def _zero(d):
    return (0,) * d.rank


def _swap_oracle(a):
    """Hand evaluation on the swap torus, trivial E, u = (-a, a):
    -2 [tr V_0 - tr V_{-2e2}] with tr V_{-2e2} = 1 + 2 cos(4 pi a)."""
    return 4 * math.cos(4 * math.pi * a)


# -- D_M^G -----------------------------------------------------------------------------------


def test_dmg_examples():
    d = entry("sl2-split").datum
    assert D_M_G(d, TorusElement()) == 0
    assert D_M_G(entry("sp4-compact").datum, TorusElement(u=(Fraction(1, 5), Fraction(2, 7)))) == 1
    t = 0.4
    g = TorusElement(x0=(1,), t=t / 2)  # alpha(gamma) = e^{t}
    assert D_M_G(d, g) == pytest.approx((1 - math.exp(t)) * (1 - math.exp(-t)))


def test_dmg_factor_rank_one():
    d = entry("sl2-split").datum
    t = 0.3
    g = TorusElement(x0=(1,), t=t)  # alpha(gamma) = e^{2t}
    lhs, rhs = dmg_factor(d, default_borel(d), g)
    assert lhs == pytest.approx(abs(math.exp(t) - math.exp(-t)))
    assert rhs == pytest.approx(lhs)
    d = entry("sp4-compact").datum
    assert dmg_factor(d, default_borel(d), random_elliptic(d, random.Random(1))) == (1.0, 1.0)


@pytest.mark.parametrize("name", ENTRIES)
def test_dmg_factor_random(name, rng):
    d = entry(name).datum
    b = default_borel(d)
    for _ in range(20):
        assert dmg_factor_check(d, b, random_regular_element(d, rng))


# -- the expression chain --------------------------------------------------------------------


def test_raw_zero_map():
    d = sp4_swap()
    b = default_borel(d)
    assert eval_expression_raw(d, b, _zero(d), {}, random_regular_element(d, random.Random(3))) == 0


def test_raw_single_borel_split():
    d = entry("sl2-split").datum
    b = default_borel(d)
    lam = (3,)
    m = {w.key: (1 if w.is_identity() else 0) for w in d.weyl()}
    g = TorusElement(x0=(1,), t=0.37)
    assert eval_expression_raw(d, b, lam, m, g) == pytest.approx(g(lam))


def test_wcf_elliptic_is_trace():
    d = entry("sp4-compact").datum
    b = default_borel(d)
    lam = lambda_for_borel(d, b, (2, 1))
    (e,) = kostant_reps(d, b)
    g = TorusElement(u=(Fraction(3, 17), Fraction(-5, 19)))
    pos = [d.roots[i] for i in b.positive]
    assert eval_expression_wcf(d, b, lam, {e.key: 1}, g) == pytest.approx(wcf_trace(d.system, pos, lam, g))


def test_wcf_split_identity_cancels():
    d = entry("sp4-split").datum
    b = default_borel(d)
    m = {w.key: 1 for w in d.weyl()}
    assert eval_expression_wcf(d, b, _zero(d), m, TorusElement()) == 0


@given(st.sampled_from(["sp4-swap", "sp4-mixed", "gl2-elliptic", "sp4-compact", "sl2-split", "g2-split"]),
       st.data())
def test_raw_equals_wcf(name, data):
    d = entry(name).datum
    b = default_borel(d)
    reps = kostant_reps(d, b)
    vals = {w.key: data.draw(st.integers(-3, 3)) for w in reps}
    m = extend_from_kostant(d, b, vals)
    assert is_wm_invariant(d, m)
    lam = lambda_for_borel(d, b, tuple(data.draw(st.integers(0, 2)) for _ in range(d.rank)))
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    for _ in range(4):
        g = random_regular_element(d, rng)
        raw, wcf = eval_expression_raw(d, b, lam, m, g), eval_expression_wcf(d, b, lam, m, g)
        assert abs(raw - wcf) <= 1e-9 * max(1, abs(wcf))


def test_n_coefficients_examples():
    d = entry("sp4-compact").datum
    n = n_coefficients(d, default_borel(d), _zero(d), ())
    assert set(n.values()) == {1}
    d = entry("sl2-split").datum
    b = default_borel(d)
    x = (1,) if d.roots[b.positive[0]][0] > 0 else (-1,)
    n = n_coefficients(d, b, (0,), x)
    by_id = {w.is_identity(): v for w, v in ((w, n[w.key]) for w in d.weyl())}
    assert by_id == {True: 0, False: 2}


def test_n_coefficients_wm_invariant_on_swap():
    d = sp4_swap()
    for b in all_borels(d, 0) + all_borels(d, 1):
        n = n_coefficients(d, b, lambda_for_borel(d, b, _zero(d)), default_x0(d, b))
        assert len(n) == 8
        assert is_wm_invariant(d, n)


@pytest.mark.parametrize("name", ["sl2-split", "sp4-split", "sp4-swap", "sp4-mixed", "gl2-split",
                                  "gl2-elliptic", "a1xa1-split", "g2-split", "b3-split"])
def test_factored_equals_wcf(name, rng):
    d = entry(name).datum
    b = default_borel(d)
    lam = lambda_for_borel(d, b, _zero(d))
    x0 = default_x0(d, b)
    n = n_coefficients(d, b, lam, x0)
    for _ in range(5):
        gc = random_regular_element(d, rng)
        g = TorusElement(gc.u, gc.s, x0, rng.uniform(0.05, 0.5))
        try:
            fac = eval_expression_factored(d, b, lam, g)
        except IrregularElement:
            continue
        wcf = math.sqrt(eval_modulus_deltaP(g, d, b.n_roots)) * eval_expression_wcf(d, b, lam, n, g)
        assert abs(fac - wcf) <= 1e-9 * max(1, abs(wcf))


@pytest.mark.parametrize("name", ["sl2-split", "sp4-split", "sp4-swap", "sp4-mixed", "gl2-split", "g2-split"])
def test_inner_sum_limit(name):
    d = entry(name).datum
    b = default_borel(d)
    u = tuple(Fraction(3, 31) * x for x in d.compact_basis[0]) if d.compact_basis else ()
    g = TorusElement(u=u).with_probe(default_x0(d, b), 1e-8)
    want = (-1) ** q_L_integer(d) * len(d.real_system.weyl())
    for term in factored_terms(d, b, _zero(d), g):
        assert term.inner_sum == pytest.approx(want, abs=1e-4)


# -- closed formula -------------------------------------------------------------------------------


def test_split_identity_values():
    assert phi_theorem1(*_args("sl2-split")).value == pytest.approx(-2)
    assert phi_theorem1(*_args("sp4-split")).value == pytest.approx(-8)
    assert phi_theorem1(*_args("g2-split")).value == pytest.approx(12)


def _args(name, lam=None, gamma=None):
    d = entry(name).datum
    b = default_borel(d)
    return d, b, lambda_for_borel(d, b, lam or _zero(d)), gamma or TorusElement()


def test_split_central_closed_form():
    d, b, lam, _ = _args("gl2-split", (1, 1))
    g = TorusElement(s=(Fraction(1, 2), Fraction(1, 2)))
    assert phi_theorem1(d, b, lam, g).value == pytest.approx(-2 * math.e)
    assert phi_split_central(d, lam, g) == pytest.approx(-2 * math.e)
    d, b, lam, _ = _args("gl2-split")
    assert phi_theorem1(d, b, lam, g).value == pytest.approx(-2)


@pytest.mark.parametrize("lam", [(0, 0), (1, 0), (2, 1)])
def test_elliptic_is_trace(lam, rng):
    d, b, lam, _ = _args("sp4-compact", lam)
    pos = [d.roots[i] for i in b.positive]
    for _ in range(5):
        g = random_elliptic(d, rng)
        assert phi_theorem1(d, b, lam, g).value == pytest.approx(trace(d.system, pos, lam, g), abs=1e-9)


def test_swap_identity_value():
    res = phi_theorem1(*_args("sp4-swap"))
    assert res.value == pytest.approx(4)
    assert res.q_L == 1 and res.order_WL == 2 and res.n_wlm == 2
    assert sorted(eps * round(tr.real) for _, eps, _, tr in res.contributions) == [-3, 1]


@given(st.integers(1, 96))
def test_swap_matches_hand_formula(k):
    a = Fraction(k, 97)
    d, b, lam, _ = _args("sp4-swap")
    v = phi_theorem1(d, b, lam, TorusElement(u=(-a, a))).value
    assert v == pytest.approx(_swap_oracle(float(a)), abs=1e-9)
    assert abs(v.imag) <= 1e-9 * max(1, abs(v))


@pytest.mark.parametrize("name", ENTRIES)
def test_choice_independence_and_reality(name, rng):
    d = entry(name).datum
    gammas = [random_elliptic(d, rng) for _ in range(3)]
    lam_ref = None
    for lc in range(len(l_chambers(d))):
        for b in all_borels(d, lc):
            lam = lambda_for_borel(d, b, _zero(d))
            vals = [phi_theorem1(d, b, lam, g).value for g in gammas]
            if lam_ref is None:
                lam_ref = vals
            for v, r in zip(vals, lam_ref):
                assert abs(v - r) <= 1e-9 * max(1, abs(r))
                assert abs(v.imag) <= 1e-9 * max(1, abs(v))


def test_not_elliptic_rejected():
    d, b, lam, _ = _args("sp4-swap")
    with pytest.raises(ValidationError):
        phi_theorem1(d, b, lam, TorusElement(u=(Fraction(1, 3), Fraction(1, 5))))
    with pytest.raises(ValidationError):
        phi_theorem1(d, b, lam, TorusElement(x0=(1, 1), t=0.1))


def test_minus_one_required():
    roots, coroots = from_cartan(CARTAN["A2"])
    d = validate_datum(2, roots, coroots, [[1, 0], [0, 1]], "sl3-split")
    b = default_borel(d)
    with pytest.raises(MinusOneNotInWeylGroup):
        phi_theorem1(d, b, (0, 0), TorusElement())


# -- limits ----------------------------------------------------------------------------------


def test_probe_split_a1():
    d, b, lam, g = _args("sl2-split")
    rep = limit_probe(d, b, lam, g)
    assert rep.converges
    assert rep.values[-1] == pytest.approx(-2, abs=1e-3)


def test_probe_swap():
    d, b, lam, g = _args("sp4-swap")
    rep = limit_probe(d, b, lam, g)
    assert rep.converges
    assert rep.target == pytest.approx(4)
    assert rep.errors[-1] < rep.errors[0]


def test_probe_elliptic_exact():
    d, b, lam, _ = _args("sp4-compact", (1, 0))
    g = TorusElement(u=(Fraction(1, 7), Fraction(2, 9)))
    pos = [d.roots[i] for i in b.positive]
    for t in (0.1, 0.01):
        value = eval_expression_factored(d, b, lam, g.with_probe((0, 0), t))
        assert value == pytest.approx(trace(d.system, pos, lam, g))


def test_probe_needs_two_points():
    d, b, lam, g = _args("sl2-split")
    with pytest.raises(ValidationError):
        limit_probe(d, b, lam, g, t_seq=(0.1,))
