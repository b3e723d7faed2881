"""Hyperplane arrangements, chambers and codimension-one facets.

Everything is exact.  An arrangement lives in a subspace ``V`` of the
coordinate space ``Q^n`` (given by a spanning list); its hyperplanes are the
kernels of integer functionals restricted to ``V``.  Chambers are found by
walking the chamber graph across walls, starting from a generic point; the
closure of each chamber is generated by its extreme rays, which come from the
one-dimensional flats of the arrangement, and the sum of those rays is the
interior witness.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import ArrangementCapExceeded, SimpleTransitivityFailure, IdentityViolated
from .linalg import canonical_line, dot, independent_subset, is_zero, nullspace, primitive, rank, sign

DEFAULT_HYPERPLANE_CAP = 64


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple      # primitive integer functional in V-coordinates
    functional: tuple  # representative functional on Q^n, oriented like ``normal``
    labels: tuple      # indices of the input functionals vanishing on it


@dataclass(frozen=True)
class Chamber:
    signs: tuple
    point: tuple       # interior witness in Q^n


@dataclass(frozen=True)
class Facet:
    wall: int          # hyperplane index
    signs: tuple       # sign vector with 0 at ``wall``
    point: tuple       # relative-interior witness in Q^n
    chambers: tuple    # indices of the two adjacent chambers


@dataclass(frozen=True)
class ChamberGraph:
    chambers: tuple
    facets: tuple
    chamber_facets: tuple  # facet indices incident to each chamber

    def neighbours(self, c):
        for f in self.chamber_facets[c]:
            a, b = self.facets[f].chambers
            yield f, (b if a == c else a)


class Arrangement:
    """Central hyperplane arrangement in a rational subspace of ``Q^n``.

    ``basis`` spans the ambient subspace; ``functionals`` are integer (or
    rational) covectors on ``Q^n``.  Functionals proportional on the subspace
    are merged into one hyperplane; functionals vanishing on it are kept in
    ``vanishing``.
    """

    def __init__(self, basis, functionals, cap=DEFAULT_HYPERPLANE_CAP, ambient_dim=None):
        basis = [tuple(b) for b in basis]
        self.basis = tuple(basis[i] for i in independent_subset(basis)) if basis else ()
        self.dim = len(self.basis)
        if ambient_dim is not None:
            self.n = ambient_dim
        else:
            self.n = len(functionals[0]) if functionals else (len(self.basis[0]) if self.basis else 0)
        groups = {}
        order = []
        vanishing = []
        for idx, f in enumerate(functionals):
            restricted = tuple(dot(f, b) for b in self.basis)
            if is_zero(restricted):
                vanishing.append(idx)
                continue
            line = canonical_line(restricted)
            if line not in groups:
                groups[line] = [idx]
                order.append((line, f, restricted))
            else:
                groups[line].append(idx)
        if len(order) > cap:
            raise ArrangementCapExceeded(f"{len(order)} hyperplanes exceeds cap {cap}")
        hyps = []
        for line, f, restricted in order:
            ratio = next(Fraction(r, l) for r, l in zip(restricted, line) if l)
            oriented = tuple(f) if ratio > 0 else tuple(-x for x in f)
            hyps.append(Hyperplane(line, oriented, tuple(groups[line])))
        self.hyperplanes = tuple(hyps)
        self.vanishing = tuple(vanishing)
        self._normals = [h.normal for h in self.hyperplanes]
        self.essential_rank = rank(self._normals) if self._normals else 0

    def __len__(self):
        return len(self.hyperplanes)

    # -- geometry in V-coordinates -------------------------------------------------

    def _to_ambient(self, coords):
        n = self.n
        out = [Fraction(0)] * n
        for c, b in zip(coords, self.basis):
            if c:
                for j in range(n):
                    out[j] += c * b[j]
        return primitive(out) if any(out) else tuple(0 for _ in range(n))

    def _essential_basis(self):
        return [self._normals[i] for i in independent_subset(self._normals)]

    def rays(self):
        """Primitive integer rays (both signs) spanning the one-dimensional flats."""
        cached = self.__dict__.get("_rays")
        if cached is not None:
            return cached
        d = self.essential_rank
        if d == 0:
            self.__dict__["_rays"] = []
            return []
        if d == 1:
            base = canonical_line(self._essential_basis()[0])
            rays = [base, tuple(-x for x in base)]
            self.__dict__["_rays"] = rays
            return rays
        # walk the intersection lattice from the essential space down to lines
        flats = {frozenset(): [tuple(Fraction(x) for x in b) for b in self._essential_basis()]}
        for _ in range(d - 1):
            nxt = {}
            for closed, fb in flats.items():
                for i, h in enumerate(self._normals):
                    if i in closed:
                        continue
                    vals = [dot(h, v) for v in fb]
                    kernel = nullspace([vals], len(fb))
                    newb = [tuple(sum(c * v[j] for c, v in zip(kv, fb)) for j in range(self.dim)) for kv in kernel]
                    key = frozenset(k for k, g in enumerate(self._normals)
                                    if all(dot(g, v) == 0 for v in newb))
                    if key not in nxt:
                        nxt[key] = newb
            flats = nxt
        rays = []
        for fb in flats.values():
            base = canonical_line(fb[0])
            rays.append(base)
            rays.append(tuple(-x for x in base))
        rays.sort()
        self.__dict__["_rays"] = rays
        return rays

    def _generic_point(self):
        ess = self._essential_basis()
        k = 2
        while True:
            p = [0] * self.dim
            for e, h in enumerate(ess):
                w = k ** e
                for j in range(self.dim):
                    p[j] += w * h[j]
            if all(dot(h, p) != 0 for h in self._normals):
                return tuple(p)
            k += 1

    def _build(self):
        if "_graph" in self.__dict__:
            return self.__dict__["_graph"]
        m = len(self._normals)
        if self.essential_rank == 0:
            chamber = Chamber((), tuple(0 for _ in range(self.n)))
            graph = ChamberGraph((chamber,), (), ((),))
            self.__dict__["_graph"] = graph
            self.__dict__["_coords"] = {(): tuple(0 for _ in range(self.dim))}
            return graph
        rays = self.rays()
        ray_signs = kernels.sign_rows(rays, self._normals)
        start = kernels.sign_rows([self._generic_point()], self._normals)[0]
        d = self.essential_rank
        seen = {start}
        queue = deque([start])
        interior = {}
        facet_data = {}
        while queue:
            s = queue.popleft()
            conf = kernels.conformal_indices(ray_signs, s)
            point = [0] * self.dim
            for r in conf:
                for j, x in enumerate(rays[r]):
                    point[j] += x
            point = primitive(point)
            if kernels.sign_rows([point], self._normals)[0] != s:
                raise IdentityViolated("interior witness does not realise its sign vector")
            interior[s] = point
            for i in range(m):
                on_wall = [r for r in conf if ray_signs[r][i] == 0]
                if len(on_wall) < d - 1 or rank([rays[r] for r in on_wall]) != d - 1:
                    continue
                fsigns = s[:i] + (0,) + s[i + 1:]
                if fsigns not in facet_data:
                    fp = [0] * self.dim
                    for r in on_wall:
                        for j, x in enumerate(rays[r]):
                            fp[j] += x
                    facet_data[fsigns] = (i, primitive(fp))
                t = s[:i] + (-s[i],) + s[i + 1:]
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        order = sorted(interior)
        cidx = {s: k for k, s in enumerate(order)}
        chambers = tuple(Chamber(s, self._to_ambient(interior[s])) for s in order)
        facets = []
        incid = [[] for _ in order]
        for fsigns in sorted(facet_data, key=lambda fs: (facet_data[fs][0], fs)):
            i, fp = facet_data[fsigns]
            a = fsigns[:i] + (1,) + fsigns[i + 1:]
            b = fsigns[:i] + (-1,) + fsigns[i + 1:]
            pair = (cidx[a], cidx[b])
            incid[pair[0]].append(len(facets))
            incid[pair[1]].append(len(facets))
            facets.append(Facet(i, fsigns, self._to_ambient(fp), pair))
        graph = ChamberGraph(chambers, tuple(facets), tuple(tuple(x) for x in incid))
        self.__dict__["_graph"] = graph
        self.__dict__["_coords"] = interior
        return graph

    # -- public ----------------------------------------------------------------------

    @property
    def chambers(self):
        return self._build().chambers

    @property
    def graph(self):
        return self._build()

    @property
    def facets(self):
        return self._build().facets

    def signs_of(self, point):
        """Sign vector of an ambient point (entries may be 0)."""
        return tuple(sign(dot(h.functional, point)) for h in self.hyperplanes)

    def locate(self, point):
        """Index of the chamber containing ``point``; ``None`` if it lies on a hyperplane."""
        s = self.signs_of(point)
        if 0 in s:
            return None
        return self._chamber_index()[s]

    def _chamber_index(self):
        if "_cindex" not in self.__dict__:
            self.__dict__["_cindex"] = {c.signs: k for k, c in enumerate(self.chambers)}
        return self.__dict__["_cindex"]

    def locate_facet(self, point):
        if "_findex" not in self.__dict__:
            self.__dict__["_findex"] = {f.signs: k for k, f in enumerate(self.facets)}
        return self.__dict__["_findex"].get(self.signs_of(point))

    def chamber_rays(self, c):
        """Extreme rays (ambient coordinates) of the closure of chamber ``c``."""
        self._build()
        if "_ray_signs" not in self.__dict__:
            rays = self.rays()
            self.__dict__["_ray_signs"] = kernels.sign_rows(rays, self._normals)
            self.__dict__["_ambient_rays"] = [self._to_ambient(r) for r in rays]
        conf = kernels.conformal_indices(self.__dict__["_ray_signs"], self.chambers[c].signs)
        amb = self.__dict__["_ambient_rays"]
        return [amb[r] for r in conf]


def enumerate_chambers(arr):
    return list(arr.chambers)


def enumerate_facets(arr):
    g = arr.graph
    return list(g.facets), g


_ROOT_ARRANGEMENTS = {}


def root_arrangement(system, cap=DEFAULT_HYPERPLANE_CAP):
    """Arrangement of root hyperplanes in the coroot span of ``system``.

    Cached by the system's root/coroot content, so equal wall systems reached
    from different parents share one arrangement.
    """
    cached = _ROOT_ARRANGEMENTS.get(system.key)
    if cached is None:
        cached = Arrangement(system.span_basis, system.roots, cap)
        _ROOT_ARRANGEMENTS[system.key] = cached
    return cached


# -- walls -------------------------------------------------------------------------


@dataclass(frozen=True)
class WallSystem:
    root: int            # index of the root whose hyperplane is the wall
    hyperplane: int      # index of the wall in the parent arrangement
    system: object       # RootSystem with coroots in the wall
    facet_count: int     # facets of the parent arrangement lying in the wall
    weyl_order: int
    n_alpha: int


def wall_root_system(system, root_index):
    """Root system on ``ker(alpha)`` with coroots ``R^vee`` meeting the wall."""
    alpha = system.roots[root_index]
    keep = [j for j, c in enumerate(system.coroots) if dot(alpha, c) == 0]
    return system.subsystem(keep, f"{system.name}|wall{root_index}")


def wall_subsystem(system, root_index, cap=DEFAULT_HYPERPLANE_CAP):
    arr = root_arrangement(system, cap)
    alpha = system.roots[root_index]
    h = next(k for k, hp in enumerate(arr.hyperplanes) if root_index in hp.labels)
    sub = wall_root_system(system, root_index)
    count = sum(1 for f in arr.facets if f.wall == h)
    order = len(sub.weyl())
    if count % order:
        raise IdentityViolated(f"{count} facets in wall of {alpha} not divisible by |W_alpha| = {order}")
    return WallSystem(root_index, h, sub, count, order, count // order)


# -- Weyl action on facets ------------------------------------------------------------------


@dataclass(frozen=True)
class FacetOrbitReport:
    facet_count: int
    orbit_count: int
    orbit_sizes: tuple
    stabilizer_orders: tuple  # one per facet
    representative_stabilizers: tuple  # explicit count for each orbit representative
    facets_per_chamber: tuple


def facet_orbits(system, cap=DEFAULT_HYPERPLANE_CAP):
    arr = root_arrangement(system, cap)
    facets = arr.facets
    weyl = system.weyl()
    gens = system.simple
    orbit_of = [-1] * len(facets)
    sizes = []
    reps = []
    for start in range(len(facets)):
        if orbit_of[start] >= 0:
            continue
        label = len(sizes)
        orbit_of[start] = label
        queue = deque([start])
        size = 1
        while queue:
            f = queue.popleft()
            y = facets[f].point
            for g in gens:
                img = arr.locate_facet(system.reflect_coweight(g, y))
                if img is None:
                    raise IdentityViolated("reflection of a facet point is not a facet point")
                if orbit_of[img] < 0:
                    orbit_of[img] = label
                    size += 1
                    queue.append(img)
        sizes.append(size)
        reps.append(start)
    rep_stab = []
    for f in reps:
        y = facets[f].point
        rep_stab.append(sum(1 for w in weyl if arr.locate_facet(w.act_coweight(y)) == f))
    stab = tuple(len(weyl) // sizes[orbit_of[f]] for f in range(len(facets)))
    per_chamber = tuple(len(x) for x in arr.graph.chamber_facets)
    return FacetOrbitReport(len(facets), len(sizes), tuple(sizes), stab, tuple(rep_stab), per_chamber)


# -- a_M chambers for a real root datum ------------------------------------------------------


def p_arrangement(datum):
    cached = datum.__dict__.get("_p_arr")
    if cached is None:
        imag = set(datum.classification.imaginary)
        idx = [i for i in range(len(datum.roots)) if i not in imag]
        arr = Arrangement(datum.aM_basis, [datum.roots[i] for i in idx], ambient_dim=datum.rank)
        bad = [idx[k] for k in arr.vanishing]
        if bad:
            raise IdentityViolated(f"non-imaginary roots {bad} vanish on a_M")
        arr.root_labels = tuple(tuple(idx[k] for k in h.labels) for h in arr.hyperplanes)
        datum.__dict__["_p_arr"] = cached = arr
    return cached


def l_arrangement(datum):
    cached = datum.__dict__.get("_l_arr")
    if cached is None:
        idx = list(datum.classification.real)
        arr = Arrangement(datum.aM_basis, [datum.roots[i] for i in idx], ambient_dim=datum.rank)
        arr.root_labels = tuple(tuple(idx[k] for k in h.labels) for h in arr.hyperplanes)
        datum.__dict__["_l_arr"] = cached = arr
    return cached


def p_chambers(datum):
    return list(p_arrangement(datum).chambers)


def l_chambers(datum):
    arr = l_arrangement(datum)
    chambers = list(arr.chambers)
    wl = datum.real_system.weyl()
    if len(wl) != len(chambers):
        raise SimpleTransitivityFailure(f"|W_L| = {len(wl)} but {len(chambers)} L-chambers")
    x = chambers[0].point
    images = {arr.locate(w.act_coweight(x)) for w in wl}
    if None in images or len(images) != len(chambers):
        raise SimpleTransitivityFailure("W_L does not act simply transitively on L-chambers")
    return chambers


def pchamber_to_lchamber(datum, cp):
    arr = l_arrangement(datum)
    idx = arr.locate(cp.point)
    if idx is None:
        raise IdentityViolated("P-chamber point lies on a real root hyperplane")
    return arr.chambers[idx]


def parabolic_from_pchamber(datum, cp):
    """Root indices ``R_N`` positive on the P-chamber ``cp``."""
    imag = set(datum.classification.imaginary)
    return tuple(i for i, a in enumerate(datum.roots) if i not in imag and dot(a, cp.point) > 0)
