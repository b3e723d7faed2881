"""Stable discrete-series constants by wall recursion.

For a root system ``R`` on ``X`` (the coroot span), a regular coweight ``x``
and a regular weight ``lam``, ``cbar(R, x, lam)`` is the integer fixed by:

* it depends only on the chamber of ``x`` (and of ``lam``);
* it is ``1`` for the empty system;
* across a facet ``F`` between chambers ``C`` and ``C'`` lying in the wall
  ``Y``, ``c(C) + c(C') = 2 cbar(R_Y, y, lam)`` where ``R_Y`` is the root
  system on ``Y`` with coroots ``R^vee`` meeting ``Y`` and ``y`` is interior
  to ``F``;
* it vanishes on every chamber whose closure pairs non-negatively with ``lam``.

Tables are built by seeding the vanishing chambers and propagating across
walls; every wall equation is then re-checked, so a wrong axiom or bad input
surfaces as :class:`RecursionInconsistent` rather than a silent number.
"""

from collections import deque
from dataclasses import dataclass

from .chambers import root_arrangement, wall_root_system
from .errors import (
    IdentityViolated,
    IrregularCharacter,
    IrregularElement,
    Lambda0NotInDualCone,
    MinusOneNotInWeylGroup,
    NonIntegralQ,
    RecursionInconsistent,
)
from .linalg import dot

_TABLES = {}
_WALLS = {}


@dataclass(frozen=True)
class ConstantTable:
    system: object
    lam: tuple
    values: tuple          # per chamber of root_arrangement(system)
    facet_values: tuple    # per facet
    seeds: tuple           # chambers fixed to 0 by the vanishing rule
    equations_checked: int

    @property
    def arrangement(self):
        return root_arrangement(self.system)

    def value_at(self, x):
        c = self.arrangement.locate(x)
        if c is None:
            raise IrregularElement(f"{tuple(x)} lies on a root hyperplane")
        return self.values[c]

    def by_signs(self):
        arr = self.arrangement
        return {ch.signs: v for ch, v in zip(arr.chambers, self.values)}


def clear_cache():
    _TABLES.clear()
    _WALLS.clear()


def check_regular(system, lam):
    for c in system.coroots:
        if dot(lam, c) == 0:
            raise IrregularCharacter(f"<{tuple(lam)}, {c}> = 0")


def _wall_system(system, hyperplane):
    key = (system.key, hyperplane)
    sub = _WALLS.get(key)
    if sub is None:
        arr = root_arrangement(system)
        sub = wall_root_system(system, arr.hyperplanes[hyperplane].labels[0])
        _WALLS[key] = sub
    return sub


def cbar_table(system, lam):
    lam = tuple(lam)
    check_regular(system, lam)
    key = (system.key, lam)
    table = _TABLES.get(key)
    if table is not None:
        return table
    arr = root_arrangement(system)
    chambers = arr.chambers
    graph = arr.graph
    if arr.essential_rank == 0:
        table = ConstantTable(system, lam, (1,), (), (), 0)
        _TABLES[key] = table
        return table

    fvals = []
    for f in graph.facets:
        sub = _wall_system(system, f.wall)
        fvals.append(cbar_table(sub, lam).value_at(f.point))

    values = [None] * len(chambers)
    seeds = []
    for c in range(len(chambers)):
        if all(dot(lam, r) >= 0 for r in arr.chamber_rays(c)):
            values[c] = 0
            seeds.append(c)
    if not seeds:
        raise RecursionInconsistent("no chamber has lam in its closed dual cone")

    checked = 0
    queue = deque(seeds)
    while queue:
        c = queue.popleft()
        for f, nb in graph.neighbours(c):
            want = 2 * fvals[f] - values[c]
            if values[nb] is None:
                values[nb] = want
                queue.append(nb)
            elif values[nb] != want:
                raise RecursionInconsistent(
                    f"wall equation fails across facet {f}: {values[c]} + {values[nb]} != 2*{fvals[f]}")
    if any(v is None for v in values):
        raise RecursionInconsistent("chamber graph is disconnected")
    for f, facet in enumerate(graph.facets):
        a, b = facet.chambers
        if values[a] + values[b] != 2 * fvals[f]:
            raise RecursionInconsistent(f"residual wall equation fails at facet {f}")
        checked += 1
    table = ConstantTable(system, lam, tuple(values), tuple(fvals), tuple(seeds), checked)
    _TABLES[key] = table
    return table


def cbar(system, x, lam):
    """``cbar_R(x, lam)``."""
    table = cbar_table(system, lam)
    if root_arrangement(system).essential_rank == 0:
        return 1
    return table.value_at(x)


# -- sums over orbits ------------------------------------------------------------------------


def _require_minus_one(system):
    if system.minus_one_element() is None:
        raise MinusOneNotInWeylGroup(f"-1 is not in the Weyl group of {system.name or 'the system'}")


def q_integer(system):
    q = system.q()
    if q.denominator != 1:
        raise NonIntegralQ(f"q(R) = {q} is not an integer")
    return int(q)


def in_dual_chamber(system, x0, lam0):
    """``<lam0, coalpha> > 0`` for every root positive on ``x0``."""
    for a, c in zip(system.roots, system.coroots):
        if dot(a, x0) > 0 and dot(lam0, c) <= 0:
            return False
    return True


def dual_chamber_point(system, lam):
    """A regular coweight whose chamber has ``lam`` in its dual chamber: the sum of the coroots positive on ``lam``."""
    check_regular(system, lam)
    n = system.dim
    x = [0] * n
    for c in system.coroots:
        if dot(lam, c) > 0:
            x = [a + b for a, b in zip(x, c)]
    return tuple(x)


def _check_regular_point(system, x0):
    for a in system.roots:
        if dot(a, x0) == 0:
            raise IrregularElement(f"x0 = {tuple(x0)} lies on the wall of {a}")


def prop1_sum(system, x0, lam, check=True):
    """``sum_w cbar(w x0, lam)``; equals ``|W|``."""
    _require_minus_one(system)
    _check_regular_point(system, x0)
    table = cbar_table(system, lam)
    weyl = system.weyl()
    total = sum(table.value_at(w.act_coweight(x0)) for w in weyl)
    if check and total != len(weyl):
        raise IdentityViolated(f"sum of constants {total} != |W| = {len(weyl)}")
    return total


def prop1_alt_sum(system, x0, lam0, check=True):
    """``sum_w eps(w) cbar(w x0, lam0)`` for ``lam0`` in the dual chamber of ``x0``."""
    _require_minus_one(system)
    _check_regular_point(system, x0)
    if not in_dual_chamber(system, x0, lam0):
        raise Lambda0NotInDualCone(f"{tuple(lam0)} is not in the dual chamber of {tuple(x0)}")
    q = q_integer(system)
    table = cbar_table(system, lam0)
    weyl = system.weyl()
    total = sum(w.sign * table.value_at(w.act_coweight(x0)) for w in weyl)
    expected = (-1) ** q * len(weyl)
    if check and total != expected:
        raise IdentityViolated(f"alternating sum {total} != (-1)^{q}|W| = {expected}")
    return total


def prop1_lambda_orbit_variant(system, x0, lam, check=True):
    """Both sums taken over ``cbar(x0, w lam)`` instead of ``cbar(w x0, lam)``."""
    _require_minus_one(system)
    _check_regular_point(system, x0)
    if not in_dual_chamber(system, x0, lam):
        raise Lambda0NotInDualCone(f"{tuple(lam)} is not in the dual chamber of {tuple(x0)}")
    q = q_integer(system)
    weyl = system.weyl()
    plain = alt = 0
    for w in weyl:
        v = cbar(system, x0, w.act(lam))
        plain += v
        alt += w.sign * v
    expected = (len(weyl), (-1) ** q * len(weyl))
    if check and (plain, alt) != expected:
        raise IdentityViolated(f"orbit-swapped sums {(plain, alt)} != {expected}")
    return plain, alt


def facet_identity_check(system, lam, check=True):
    """``(r * sum_C c(C), 2 * sum_F c(F))``."""
    table = cbar_table(system, lam)
    lhs = system.rank * sum(table.values)
    rhs = 2 * sum(table.facet_values)
    if check and lhs != rhs:
        raise IdentityViolated(f"r*sum c(C) = {lhs} != 2*sum c(F) = {rhs}")
    return lhs, rhs
