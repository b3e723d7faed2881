from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arthur_phi.cartan import classical
from arthur_phi.errors import DatumError, WeylCapExceeded
from arthur_phi.linalg import det
from arthur_phi.rootdatum import (
    CoweightVec,
    WeightVec,
    classify_roots,
    generate_weyl,
    pairing,
    project_pG,
    project_pM,
    q_value,
    validate_datum,
    weyl_subgroups,
)

from conftest import entry, sp4_swap

C2 = classical("C", 2)
SWAP = [[0, 1], [1, 0]]


def c2(sigma):
    return validate_datum(2, C2[0], C2[1], sigma)


def test_a1_datum_valid():
    d = validate_datum(1, [(2,), (-2,)], [(1,), (-1,)], [[1]])
    assert len(generate_weyl(d)) == 2


def test_c2_swap_valid():
    d = c2(SWAP)
    assert d.rank == 2


def test_not_an_involution_reported():
    with pytest.raises(DatumError) as exc:
        c2([[1, 0], [0, 2]])
    assert "NotAnInvolution" in exc.value.codes


def test_every_violation_listed():
    with pytest.raises(DatumError) as exc:
        validate_datum(1, [(2,), (-2,)], [(2,), (-1,)], [[1]])
    assert "PairingNotTwo" in exc.value.codes
    assert "ReflectionEscapesRootSet" in exc.value.codes


def test_sigma_must_permute_roots():
    with pytest.raises(DatumError) as exc:
        validate_datum(2, [(2, 0), (-2, 0), (0, 2), (0, -2)], [(1, 0), (-1, 0), (0, 1), (0, -1)],
                       [[1, 1], [0, -1]])
    assert "SigmaNotRootPermutation" in exc.value.codes


def test_shape_and_integrality_errors():
    with pytest.raises(DatumError) as exc:
        validate_datum(1, [(2, 0)], [(1,)], [[1]])
    assert "ShapeMismatch" in exc.value.codes
    with pytest.raises(DatumError) as exc:
        validate_datum(1, [(Fraction(1, 2),)], [(4,)], [[1]])
    assert "NotIntegral" in exc.value.codes


@pytest.mark.parametrize("name,order", [("A1", 2), ("C2", 8), ("G2", 12), ("B3", 48), ("D4", 192)])
def test_weyl_orders(name, order):
    from conftest import system
    assert len(system(name).weyl()) == order


def test_weyl_order_and_identity_first():
    w = entry("g2-split").datum.weyl()
    assert w[0].is_identity() and w[0].length == 0
    keys = [(x.length, x.key) for x in w]
    assert keys == sorted(keys)
    assert len({x.key for x in w}) == len(w)


def test_weyl_cap():
    from conftest import system
    rs = system("F4")
    from arthur_phi.rootdatum import RootSystem
    fresh = RootSystem(rs.roots, rs.coroots, "F4")
    fresh.dim = 4
    with pytest.raises(WeylCapExceeded):
        fresh.weyl(cap=100)


def test_classification_identity_and_minus_identity():
    split = c2([[1, 0], [0, 1]])
    comp = c2([[-1, 0], [0, -1]])
    assert len(classify_roots(split).real) == 8
    assert len(classify_roots(comp).imaginary) == 8


def test_classification_swap():
    d = c2(SWAP)
    cls = classify_roots(d)
    real = {d.roots[i] for i in cls.real}
    imag = {d.roots[i] for i in cls.imaginary}
    cplx = {d.roots[i] for i in cls.complex}
    assert real == {(1, 1), (-1, -1)}
    assert imag == {(1, -1), (-1, 1)}
    assert cplx == {(2, 0), (-2, 0), (0, 2), (0, -2)}


def test_weyl_subgroups():
    wl, wm = weyl_subgroups(c2([[1, 0], [0, 1]]))
    assert (len(wl), len(wm)) == (8, 1)
    wl, wm = weyl_subgroups(c2([[-1, 0], [0, -1]]))
    assert (len(wl), len(wm)) == (1, 8)
    wl, wm = weyl_subgroups(c2(SWAP))
    assert (len(wl), len(wm)) == (2, 2)


def test_projections_examples():
    d = c2(SWAP)
    assert tuple(project_pM(d, (1, -1))) == (0, 0)
    assert tuple(project_pM(d, (1, 1))) == (1, 1)
    assert tuple(project_pM(d, (2, 0))) == (1, 1)
    assert tuple(project_pG(d, (2, 0))) == (0, 0)


def test_pG_on_gl2_keeps_centre():
    d = entry("gl2-split").datum
    assert tuple(project_pG(d, (3, 1))) == (2, 2)


def test_q_value_examples():
    assert q_value(4, 2) == 3
    assert q_value(1, 1) == 1
    assert q_value(0, 0) == 0
    assert q_value(1, 2) == Fraction(3, 2)


def test_pairing_types():
    w, c = WeightVec((1, 2)), CoweightVec((3, 4))
    assert pairing(w, c) == 11
    with pytest.raises(TypeError):
        pairing(c, w)


def test_coweight_action_is_transpose():
    d = sp4_swap()
    for i, (a, c) in enumerate(zip(d.roots, d.coroots)):
        assert tuple(d.sigma.act_coweight(c)) == tuple(d.coroots[d.index(d.sigma.act(a))])


# -- properties ---------------------------------------------------------------------------------

catalog_names = st.sampled_from(["sl2-split", "sp4-swap", "sp4-mixed", "sp4-compact", "gl2-split",
                                 "gl2-elliptic", "a1xa1-split", "g2-split", "b3-split"])


@given(catalog_names)
def test_det_equals_sign_equals_parity(name):
    for w in entry(name).datum.weyl():
        assert det(w.matrix) == w.sign == (-1) ** w.length


@given(catalog_names)
def test_weyl_preserves_roots(name):
    d = entry(name).datum
    roots = set(d.roots)
    for w in d.weyl():
        assert {tuple(w.act(a)) for a in roots} == roots


@given(catalog_names)
def test_WL_WM_commute_and_meet_trivially(name):
    d = entry(name).datum
    wl, wm = weyl_subgroups(d)
    from arthur_phi.characters import multiply
    for a in wl:
        for b in wm:
            assert multiply(d, a, b).key == multiply(d, b, a).key
    assert {x.key for x in wl} & {x.key for x in wm} == {wl[0].key}
    for a in wl:
        for i in d.classification.imaginary:
            assert tuple(a.act(d.roots[i])) == tuple(d.roots[i])


@given(catalog_names, st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_projection_properties(name, coords):
    d = entry(name).datum
    v = tuple(coords[: d.rank])
    pm = project_pM(d, v)
    assert tuple(project_pM(d, pm)) == tuple(pm)
    pg = tuple(project_pG(d, v))
    assert tuple(d.sigma.act(pg)) == pg
    assert all(tuple(w.act(pg)) == pg for w in d.weyl())


@given(catalog_names)
def test_pM_kernel_on_root_span_is_span_RM(name):
    from arthur_phi.linalg import nullspace, rank
    d = entry(name).datum
    span = [tuple(a) for a in d.roots]
    if not span:
        return
    from arthur_phi.linalg import independent_subset
    basis = [span[i] for i in independent_subset(span)]
    images = [tuple(project_pM(d, b)) for b in basis]
    cols = [[img[k] for img in images] for k in range(d.rank)]
    kernel = nullspace(cols, len(basis))
    kernel_vecs = [tuple(sum(c * b[k] for c, b in zip(vec, basis)) for k in range(d.rank)) for vec in kernel]
    rm = [tuple(d.roots[i]) for i in d.classification.imaginary]
    assert rank(kernel_vecs + rm) == rank(rm) == len(kernel_vecs)
