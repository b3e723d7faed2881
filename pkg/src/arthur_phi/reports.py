"""Report builders behind the command line, and the verification suite.

Every builder returns a plain dict of exact values (ints, Fractions, tuples)
plus floats/complex numbers where the computation is numerical; the CLI
serializes it with :func:`arthur_phi.catalog.dumps`.
"""

import math
import random
from fractions import Fraction

from . import kernels
from .catalog import builtin_catalog
from .chambers import (
    facet_orbits,
    l_arrangement,
    l_chambers,
    p_arrangement,
    root_arrangement,
    wall_subsystem,
)
from .characters import (
    TorusElement,
    all_borels,
    borel_from_pchamber,
    default_borel,
    dominant_conjugate,
    elliptic_element,
    eval_modulus_deltaP,
    is_dominant,
    kostant_reps,
    lambda_for_borel,
    lowest_weight_dual,
    make_borel,
    multiply,
    pchambers_in,
    wcf_trace,
    weight_multiplicities,
    weyl_dimension,
)
from .constants import (
    cbar,
    cbar_table,
    dual_chamber_point,
    facet_identity_check,
    prop1_alt_sum,
    prop1_lambda_orbit_variant,
    prop1_sum,
    q_integer,
)
from .errors import ArthurPhiError, NotDominant, ValidationError
from .linalg import det, dot
from .phi import (
    DEFAULT_T_SEQUENCE,
    default_x0,
    dmg_factor,
    eval_expression_factored,
    eval_expression_raw,
    eval_expression_wcf,
    extend_from_kostant,
    limit_probe,
    n_coefficients,
    phi_split_central,
    phi_theorem1,
)
from .rootdatum import quotient_dim

# -- single commands -------------------------------------------------------------------------------


def report_catalog():
    rows = []
    for e in builtin_catalog():
        d = e.datum
        cls = d.classification
        rows.append({
            "name": e.name,
            "description": e.config.description,
            "rank": d.rank,
            "roots": len(d.roots),
            "real": len(cls.real),
            "imaginary": len(cls.imaginary),
            "complex": len(cls.complex),
            "flags": e.flags,
        })
    return {"command": "catalog", "entries": rows}


def report_validate(cfg):
    d = cfg.datum
    cls = d.classification
    wl, wm = d.real_system.weyl(cfg.weyl_cap), d.imaginary_system.weyl(cfg.weyl_cap)
    return {
        "command": "validate",
        "name": cfg.name,
        "valid": True,
        "rank": d.rank,
        "classification": {"real": cls.real, "imaginary": cls.imaginary, "complex": cls.complex},
        "weyl_order": len(d.weyl(cfg.weyl_cap)),
        "WL_order": len(wl),
        "WM_order": len(wm),
        "dim_aM": len(d.aM_basis),
        "dim_aG": len(d.aG_basis),
        "flags": d.capability_flags(),
    }


def report_chambers(system, datum=None):
    arr = root_arrangement(system)
    out = {
        "command": "chambers",
        "system": system.name,
        "rank": system.rank,
        "weyl_order": len(system.weyl()),
        "hyperplanes": len(arr.hyperplanes),
        "chambers": len(arr.chambers),
        "facets": len(arr.facets),
        "expected_facets": Fraction(system.rank * len(system.weyl()), 2),
    }
    if system.rank:
        orb = facet_orbits(system)
        out["facet_orbits"] = orb.orbit_count
        out["stabilizer_orders"] = sorted(set(orb.stabilizer_orders))
        walls = []
        seen = set()
        for h in arr.hyperplanes:
            ws = wall_subsystem(system, h.labels[0])
            key = (ws.facet_count, ws.weyl_order, ws.n_alpha)
            walls.append({"root": system.roots[ws.root], "facets": ws.facet_count,
                          "wall_weyl_order": ws.weyl_order, "n_alpha": ws.n_alpha})
            seen.add(key)
        out["walls"] = walls
    if datum is not None:
        out["p_chambers"] = len(p_arrangement(datum).chambers)
        out["l_chambers"] = len(l_chambers(datum))
        out["kostant_reps"] = len(kostant_reps(datum, default_borel(datum)))
    return out


def report_constants(system, lam):
    table = cbar_table(system, lam)
    arr = table.arrangement
    chambers = [{"signs": ch.signs, "point": ch.point, "value": v} for ch, v in zip(arr.chambers, table.values)]
    facets = [{"wall": f.wall, "point": f.point, "chambers": f.chambers, "value": v}
              for f, v in zip(arr.facets, table.facet_values)]
    return {
        "command": "constants",
        "system": system.name,
        "lambda": tuple(lam),
        "hyperplanes": [h.functional for h in arr.hyperplanes],
        "chambers": chambers,
        "facets": facets,
        "seeds": table.seeds,
        "equations_checked": table.equations_checked,
    }


def report_prop1(system, lam, x0=None):
    if x0 is None:
        x0 = dual_chamber_point(system, lam)
    order = len(system.weyl())
    q = q_integer(system)
    total = prop1_sum(system, x0, lam, check=False)
    alt = prop1_alt_sum(system, x0, lam, check=False)
    orbit = prop1_lambda_orbit_variant(system, x0, lam, check=False)
    lhs, rhs = facet_identity_check(system, lam, check=False)
    expected = (order, (-1) ** q * order)
    ok = (total, alt) == expected and tuple(orbit) == expected and lhs == rhs
    return {
        "command": "prop1",
        "system": system.name,
        "lambda": tuple(lam),
        "x0": tuple(x0),
        "q": q,
        "sum": total,
        "alt_sum": alt,
        "orbit_variant": orbit,
        "expected": expected,
        "facet_identity": (lhs, rhs),
        "pass": ok,
    }


def resolve_borel(datum, borel_indices=None):
    if borel_indices:
        return make_borel(datum, borel_indices)
    return default_borel(datum)


def resolve_lambda(datum, borel, lam):
    lam = tuple(lam) if lam is not None else (0,) * datum.rank
    if len(lam) != datum.rank:
        raise ValidationError(f"lambda_B has length {len(lam)}, expected {datum.rank}")
    if not is_dominant(datum, borel.positive, lam):
        raise NotDominant(f"{lam} is not dominant for the chosen Borel")
    return lam


def resolve_gamma(datum, u=None, s=None):
    """Elliptic element ``exp(2 pi i u) exp(s)`` from ambient coweight vectors.

    ``u`` must lie in the ``sigma = -1`` eigenspace and ``s`` in ``a_G``.
    """
    vecs = []
    for label, v in (("gamma-u", u), ("gamma-s", s)):
        v = tuple(Fraction(x) for x in (v or ()))
        if v and len(v) != datum.rank:
            raise ValidationError(f"{label} has length {len(v)}, expected {datum.rank}")
        vecs.append(v)
    gamma = TorusElement(*vecs)
    if not gamma.in_elliptic_part(datum):
        raise ValidationError("gamma is not in T_e(R): u must be sigma-anti-invariant and s central and sigma-fixed")
    return gamma


def _contrib_rows(result):
    return [{"omega": w.matrix, "length": w.length, "sign": eps, "highest_weight": mu, "trace": tr}
            for w, eps, mu, tr in result.contributions]


def report_phi(cfg, lam_B=None, u=None, s=None, borel_indices=None):
    d = cfg.datum
    borel = resolve_borel(d, borel_indices or cfg.borel)
    lam = resolve_lambda(d, borel, lam_B if lam_B is not None else cfg.lambda_B)
    gamma = resolve_gamma(d, u if u is not None else cfg.gamma_u, s if s is not None else cfg.gamma_s)
    res = phi_theorem1(d, borel, lam, gamma)
    return {
        "command": "phi",
        "name": cfg.name,
        "lambda_B": lam,
        "gamma": {"u": gamma.u, "s": gamma.s},
        "borel": borel.positive,
        "q_L": res.q_L,
        "WL_order": res.order_WL,
        "WLM_size": res.n_wlm,
        "lambda0": res.meta["lambda0"],
        "contributions": _contrib_rows(res),
        "value": res.value,
    }


def report_probe(cfg, lam_B=None, u=None, s=None, borel_indices=None, t_seq=None, x0=None, tol=1e-9):
    d = cfg.datum
    borel = resolve_borel(d, borel_indices or cfg.borel)
    lam = resolve_lambda(d, borel, lam_B if lam_B is not None else cfg.lambda_B)
    gamma = resolve_gamma(d, u if u is not None else cfg.gamma_u, s if s is not None else cfg.gamma_s)
    rep = limit_probe(d, borel, lam, gamma, x0=x0, t_seq=tuple(t_seq or DEFAULT_T_SEQUENCE), abs_tol=tol)
    return {
        "command": "probe",
        "name": cfg.name,
        "lambda_B": lam,
        "gamma": {"u": gamma.u, "s": gamma.s},
        "target": rep.target,
        "t": rep.ts,
        "values": rep.values,
        "errors": rep.errors,
        "rate": rep.rate,
        "pass": rep.converges,
    }


# -- verification suite ----------------------------------------------------------------------------


class _Suite:
    def __init__(self, entry):
        self.entry = entry
        self.rows = []

    def check(self, name, fn):
        try:
            ok, detail = fn()
        except ArthurPhiError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        self.rows.append({"entry": self.entry, "check": name, "pass": bool(ok), "detail": detail})
        return ok


def _regular_weight(system, rng, size=4):
    while True:
        lam = tuple(rng.randint(-size, size) for _ in range(system.dim))
        if all(dot(lam, c) != 0 for c in system.coroots):
            return lam


def random_regular_element(datum, rng, scale=1.0, margin=0.25):
    """Random element of ``T(R)``: compact part in ``sigma = -1``, split part in ``sigma = +1``.

    Rejection-sampled so that ``|1 - alpha(gamma)| >= margin`` for every root;
    closer to the walls the Weyl character quotient loses digits to cancellation.
    """
    n = datum.rank
    tries = 0
    while True:
        u = [0.0] * n
        for b in datum.compact_basis:
            c = rng.random()
            u = [x + c * float(y) for x, y in zip(u, b)]
        s = [0.0] * n
        for b in datum.aM_basis:
            c = rng.uniform(-scale, scale)
            s = [x + c * float(y) for x, y in zip(s, b)]
        g = TorusElement(tuple(u), tuple(s))
        if all(abs(1 - g(a)) >= margin for a in datum.roots):
            return g
        tries += 1
        if tries % 20 == 0:
            scale *= 1.25


def random_elliptic(datum, rng):
    u = [Fraction(rng.randint(1, 97), 97) for _ in datum.compact_basis]
    s = [Fraction(rng.randint(-20, 20), 10) for _ in datum.aG_basis]
    return elliptic_element(datum, u, s)


def _close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def verify_datum_suite(suite, datum):
    weyl = datum.weyl()
    suite.check("weyl.det_equals_sign",
                lambda: (all(det(w.matrix) == w.sign for w in weyl), f"|W| = {len(weyl)}"))

    def commute():
        wl, wm = datum.real_system.weyl(), datum.imaginary_system.weyl()
        ok = all(multiply(datum, a, b).key == multiply(datum, b, a).key for a in wl for b in wm)
        inter = {w.key for w in wl} & {w.key for w in wm}
        fixes = all(tuple(a.act(datum.roots[i])) == tuple(datum.roots[i])
                    for a in wl for i in datum.classification.imaginary)
        return ok and len(inter) == 1 and fixes, f"|W_L| = {len(wl)}, |W_M| = {len(wm)}"
    suite.check("weyl.WL_WM_commute", commute)

    def projections():
        rng = random.Random(7)
        ok = True
        for _ in range(5):
            v = tuple(rng.randint(-5, 5) for _ in range(datum.rank))
            pm = datum.project_pM(v)
            ok &= tuple(datum.project_pM(pm)) == tuple(pm)
            pg = tuple(datum.project_pG(v))
            ok &= all(tuple(w.act(pg)) == pg for w in weyl)
            ok &= tuple(datum.sigma.act(pg)) == pg
        return ok, "p_M idempotent, p_G invariant"
    suite.check("datum.projections", projections)


def verify_chamber_suite(suite, system):
    if system.rank == 0:
        return
    order = len(system.weyl())
    r = system.rank

    def counts():
        arr = root_arrangement(system)
        orb = facet_orbits(system)
        ok = (len(arr.chambers) == order and 2 * len(arr.facets) == r * order
              and orb.orbit_count == r and set(orb.stabilizer_orders) == {2}
              and set(orb.representative_stabilizers) == {2}
              and set(orb.facets_per_chamber) == {r})
        return ok, f"{len(arr.chambers)} chambers, {len(arr.facets)} facets, {orb.orbit_count} orbits"
    suite.check("chambers.facet_counting", counts)

    def walls():
        arr = root_arrangement(system)
        bad = []
        for h in arr.hyperplanes:
            ws = wall_subsystem(system, h.labels[0])
            if ws.facet_count != ws.n_alpha * ws.weyl_order:
                bad.append(ws.root)
        return not bad, f"{len(arr.hyperplanes)} walls"
    suite.check("chambers.wall_facets", walls)


def verify_constants_suite(suite, system, rng, n_lambda=3, orbit_variant=True):
    lams = []
    while len(lams) < n_lambda:
        lam = _regular_weight(system, rng)
        if lam not in lams:
            lams.append(lam)
    for lam in lams:
        x0 = dual_chamber_point(system, lam)
        order = len(system.weyl())
        q = q_integer(system)
        suite.check(f"prop1.sum{lam}", lambda: (prop1_sum(system, x0, lam, check=False) == order, f"|W| = {order}"))
        suite.check(f"prop1.alt{lam}",
                    lambda: (prop1_alt_sum(system, x0, lam, check=False) == (-1) ** q * order, f"q = {q}"))
        if orbit_variant:
            suite.check(f"prop1.orbit{lam}",
                        lambda: (prop1_lambda_orbit_variant(system, x0, lam, check=False)
                                 == (order, (-1) ** q * order), "orbit of lambda"))
        suite.check(f"facets.sum_identity{lam}",
                    lambda: (lambda p: (p[0] == p[1], f"{p[0]} = {p[1]}"))(facet_identity_check(system, lam, False)))

        def equivariance():
            table = cbar_table(system, lam)
            arr = table.arrangement
            ok = True
            for w in system.weyl()[: min(len(system.weyl()), 48)]:
                wl = tuple(w.act(lam))
                for ch, v in zip(arr.chambers, table.values):
                    ok &= cbar(system, w.act_coweight(ch.point), wl) == v
            return ok, "cbar(w x, w lam) = cbar(x, lam)"
        suite.check(f"constants.equivariance{lam}", equivariance)
        suite.check(f"constants.loop_closure{lam}",
                    lambda: (lambda t: (t.equations_checked == len(t.facet_values),
                                        f"{t.equations_checked} wall equations"))(cbar_table(system, lam)))


def verify_character_suite(suite, datum, rng, n_weights=2, n_gamma=3):
    system = datum.system
    if system.rank == 0:
        return
    pos = [datum.roots[i] for i in default_borel(datum).positive]
    for _ in range(n_weights):
        mu = dominant_conjugate(system, pos, tuple(rng.randint(-2, 2) for _ in range(datum.rank)))[1]

        def check(mu=mu):
            table = weight_multiplicities(system, pos, mu)
            ok = table.dimension == weyl_dimension(system, pos, mu)
            dual = lowest_weight_dual(system, pos, mu)
            dual_table = weight_multiplicities(system, pos, dual)
            for _ in range(n_gamma):
                g = random_regular_element(datum, rng, scale=0.5)
                ok &= _close(table.trace(g), wcf_trace(system, pos, mu, g), 1e-9)
                ok &= _close(dual_table.trace(g.inverse()), table.trace(g), 1e-9)
            return ok, f"mu = {tuple(mu)}, dim = {table.dimension}"
        suite.check(f"characters.oracle{tuple(mu)}", check)


def verify_phi_suite(suite, entry, rng, n_maps=3, n_gamma=3, probe=True):
    datum = entry.datum
    borel = default_borel(datum)
    lam = lambda_for_borel(datum, borel, entry.config.lambda_B or (0,) * datum.rank)

    def chain():
        ok = True
        reps = kostant_reps(datum, borel)
        for _ in range(n_maps):
            m = extend_from_kostant(datum, borel, {w.key: rng.randint(-3, 3) for w in reps})
            for _ in range(n_gamma):
                g = random_regular_element(datum, rng, scale=0.5)
                ok &= _close(eval_expression_raw(datum, borel, lam, m, g),
                             eval_expression_wcf(datum, borel, lam, m, g), 1e-9)
        return ok, f"{len(reps)} Kostant representatives"
    suite.check("phi.raw_equals_wcf", chain)

    def dmg():
        ok = True
        for _ in range(n_gamma):
            g = random_regular_element(datum, rng, scale=0.5)
            lhs, rhs = dmg_factor(datum, borel, g)
            ok &= _close(lhs, rhs, 1e-9)
        return ok, "|D_M^G|^(1/2) = delta_P^(1/2) |Delta_P|"
    suite.check("phi.normalization", dmg)

    if datum.aM_basis:
        def regrouping():
            x0 = default_x0(datum, borel)
            n = n_coefficients(datum, borel, lam, x0)
            ok = True
            for _ in range(n_gamma):
                gc = random_regular_element(datum, rng, scale=0.5)
                g = TorusElement(gc.u, gc.s, x0, rng.uniform(0.05, 0.5))
                want = math.sqrt(eval_modulus_deltaP(g, datum, borel.n_roots)) * eval_expression_wcf(
                    datum, borel, lam, n, g)
                ok &= _close(eval_expression_factored(datum, borel, lam, g), want, 1e-9)
            return ok, "factored over W^LM = delta_P^(1/2) * Weyl-character form"
        suite.check("phi.factored_regrouping", regrouping)

    if not entry.flags["has_minus_one_in_WL"]:
        return
    gammas = [elliptic_element(datum)] + [random_elliptic(datum, rng) for _ in range(2)]

    def corollaries():
        if len(datum.classification.real) == len(datum.roots):
            ok = True
            for g in gammas:
                ok &= _close(phi_theorem1(datum, borel, lam, g).value, phi_split_central(datum, lam, g), 1e-9)
            return ok, "split torus closed form"
        if len(datum.classification.imaginary) == len(datum.roots):
            ok = True
            pos = [datum.roots[i] for i in borel.positive]
            for g in gammas:
                ok &= _close(phi_theorem1(datum, borel, lam, g).value,
                             weight_multiplicities(datum.system, pos, lam).trace(g), 1e-9)
            return ok, "elliptic torus: tr(gamma; E)"
        return True, "not applicable"
    suite.check("phi.corollaries", corollaries)

    def independence():
        refs = [phi_theorem1(datum, borel, lam, g).value for g in gammas]
        ok = True
        count = 0
        for c in range(len(l_arrangement(datum).chambers)):
            for b in all_borels(datum, c):
                lb = lambda_for_borel(datum, b, lam)
                for g, ref in zip(gammas, refs):
                    ok &= _close(phi_theorem1(datum, b, lb, g).value, ref, 1e-9)
                count += 1
        return ok, f"{count} Borel choices"
    suite.check("phi.choice_independence", independence)

    if probe and quotient_dim(datum) > 0:
        def probe_check():
            ok = True
            worst = 0.0
            for p in pchambers_in(datum, borel.lchamber):
                b = borel_from_pchamber(datum, p)
                lb = lambda_for_borel(datum, b, lam)
                for g in gammas:
                    rep = limit_probe(datum, b, lb, g)
                    ok &= rep.converges
                    worst = max(worst, rep.errors[-1])
            return ok, f"max error at smallest t: {worst:.3e}"
        suite.check("phi.limit_probe", probe_check)


def verify_entry(entry, seed=0):
    suite = _Suite(entry.name)
    rng = random.Random(f"{entry.name}:{seed}")
    datum = entry.datum
    full = entry.name != "f4-split"
    verify_datum_suite(suite, datum)
    verify_chamber_suite(suite, datum.system)
    if entry.flags["prop1_eligible"]:
        verify_constants_suite(suite, datum.system, rng, n_lambda=3 if full else 1, orbit_variant=full)
    if full:
        verify_character_suite(suite, datum, rng)
        verify_phi_suite(suite, entry, rng)
    return suite.rows


def verify_all(entries=None, seed=0):
    entries = builtin_catalog() if entries is None else entries
    rows = []
    for e in entries:
        rows.extend(verify_entry(e, seed))
    return {
        "command": "verify-all",
        "backend": kernels.BACKEND,
        "checks": rows,
        "passed": sum(r["pass"] for r in rows),
        "failed": sum(not r["pass"] for r in rows),
        "pass": all(r["pass"] for r in rows),
    }

