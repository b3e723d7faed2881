"""Injected perturbations of the constant axioms and sign conventions must be caught by ``verify-all``."""

import dataclasses

import pytest

from arthur_phi import constants, phi
from arthur_phi.catalog import catalog_entry
from arthur_phi.reports import verify_all


@pytest.fixture
def fresh_tables():
    constants.clear_cache()
    yield
    constants.clear_cache()


def _run():
    return verify_all([catalog_entry("sl2-split"), catalog_entry("sp4-swap")], seed=0)


def test_unperturbed_passes(fresh_tables):
    assert _run()["pass"]


def test_rank_zero_value(monkeypatch, fresh_tables):
    real = constants.cbar_table

    def mutated(system, lam):
        table = real(system, lam)
        if table.values == (1,) and not table.facet_values:
            return dataclasses.replace(table, values=(2,))
        return table
    monkeypatch.setattr(constants, "cbar_table", mutated)
    assert not _run()["pass"]


def test_rank_one_vanishing_side(monkeypatch, fresh_tables):
    real = constants.cbar_table

    def mutated(system, lam):
        if system.rank == 1:
            return dataclasses.replace(real(system, tuple(-x for x in lam)), lam=tuple(lam))
        return real(system, lam)
    monkeypatch.setattr(constants, "cbar_table", mutated)
    report = _run()
    assert not report["pass"]
    assert any(not r["pass"] and r["check"].startswith("prop1") for r in report["checks"])


def test_q_sign(monkeypatch, fresh_tables):
    real = phi.q_L_integer
    monkeypatch.setattr(phi, "q_L_integer", lambda datum: real(datum) + 1)
    report = _run()
    assert not report["pass"]
    assert any(not r["pass"] and r["check"].startswith("phi.") for r in report["checks"])


def test_kostant_sign(monkeypatch, fresh_tables):
    real = phi.wlm_reps

    def mutated(*args, **kwargs):
        return [w if w.is_identity() else dataclasses.replace(w, sign=-w.sign) for w in real(*args, **kwargs)]
    monkeypatch.setattr(phi, "wlm_reps", mutated)
    assert not _run()["pass"]
