import os
import subprocess
import sys

from hypothesis import given
from hypothesis import strategies as st

from arthur_phi import _kernels_py, kernels

from conftest import system

try:
    from arthur_phi import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def _generators(rs):
    return [(rs.roots[i], rs.coroots[i]) for i in rs.simple]


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")
    if compiled is not None and os.environ.get("ARTHUR_PHI_PURE") is None:
        assert kernels.BACKEND == "compiled"


def test_pure_fallback_selected_by_env():
    code = "from arthur_phi import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, ARTHUR_PHI_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_weyl_orders_both_backends():
    for name, order in [("A1", 2), ("B2", 8), ("G2", 12), ("B3", 48), ("D4", 192)]:
        rs = system(name)
        mats, _, _ = _kernels_py.weyl_closure(_generators(rs), rs.dim, 10 ** 5)
        assert len(mats) == order
        if compiled is not None:
            assert compiled.weyl_closure(_generators(rs), rs.dim, 10 ** 5) == \
                _kernels_py.weyl_closure(_generators(rs), rs.dim, 10 ** 5)


def test_weyl_cap():
    rs = system("B3")
    assert _kernels_py.weyl_closure(_generators(rs), rs.dim, 10) is None
    if compiled is not None:
        assert compiled.weyl_closure(_generators(rs), rs.dim, 10) is None


vec = st.lists(st.integers(-50, 50), min_size=3, max_size=3).map(tuple)


@given(st.lists(vec, min_size=1, max_size=8), st.lists(vec, min_size=1, max_size=8))
def test_sign_rows_agree(points, functionals):
    want = _kernels_py.sign_rows(points, functionals)
    assert kernels.sign_rows(points, functionals) == want
    if compiled is not None:
        assert compiled.sign_rows(points, functionals) == want


@given(st.lists(st.lists(st.sampled_from([-1, 0, 1]), min_size=4, max_size=4).map(tuple), max_size=12),
       st.lists(st.sampled_from([-1, 1]), min_size=4, max_size=4).map(tuple))
def test_conformal_indices_agree(rays, chamber):
    want = _kernels_py.conformal_indices(rays, chamber)
    if compiled is not None:
        assert compiled.conformal_indices(rays, chamber) == want


def test_large_entries_fall_back():
    big = 1 << 40
    pts = [(big, 1)]
    fns = [(1, -big), (0, 1)]
    assert kernels.sign_rows(pts, fns) == _kernels_py.sign_rows(pts, fns) == [(0, 1)]
