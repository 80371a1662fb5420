"""Finite permutation groups acting simplicially on a complex.

Permutations are immutable maps on the complex's vertex set.  Groups are
enumerated exhaustively (everything here is desk scale; the cap guards
against runaway input).  The canonical order on group elements is the
lexicographic order of image tuples over the sorted vertex list; the
identity always sorts first under it.

The quotient of an action is the complex whose simplices are the orbits.
That only makes sense when the action is "without rotations" (a setwise
simplex stabilizer fixes the simplex pointwise) and no two distinct
orbits share a quotient vertex set; `refine_action` establishes both by
barycentric subdivision (at most two are ever needed).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from functools import cached_property

from .complexes import (
    SimplicialComplex,
    barycentric_subdivision,
    complex_from_json_obj,
    simplex,
)
from .errors import (
    GroupTooLarge,
    MalformedInput,
    NotABijection,
    NotSimplicial,
    OrbitCollision,
    PreconditionUnvalidated,
    RefinementFailed,
    UnknownVertex,
)

GROUP_CAP = 100_000


class Permutation:
    """A bijection of a fixed vertex domain, stored as an image tuple."""

    __slots__ = ("domain", "images", "_map", "_hash")

    def __init__(self, domain, images):
        self.domain = domain
        self.images = images
        self._map = dict(zip(domain, images))
        self._hash = hash((domain, images))

    @classmethod
    def identity(cls, domain):
        return cls(domain, domain)

    @classmethod
    def from_mapping(cls, domain, mapping):
        images = tuple(mapping.get(v, v) for v in domain)
        if sorted(images) != list(domain):
            raise NotABijection(f"images {images} do not permute the domain")
        return cls(domain, images)

    @classmethod
    def from_cycles(cls, domain, cycles):
        mapping = {}
        for cyc in cycles:
            cyc = list(cyc)
            if len(cyc) < 2:
                raise MalformedInput(f"cycle {cyc} too short")
            for v in cyc:
                if v not in domain:
                    raise UnknownVertex(v)
                if v in mapping:
                    raise MalformedInput(f"vertex {v!r} appears in two cycles")
            for a, b in zip(cyc, cyc[1:] + [cyc[0]]):
                mapping[a] = b
        return cls.from_mapping(domain, mapping)

    def __call__(self, v):
        return self._map[v]

    def apply(self, s):
        """Image of a simplex (sorted tuple in, sorted tuple out)."""
        return simplex(self._map[v] for v in s)

    def __mul__(self, other):
        # (a * b)(x) = a(b(x)): right factor acts first.
        return Permutation(self.domain, tuple(self._map[v] for v in other.images))

    def inverse(self):
        inv = {w: v for v, w in self._map.items()}
        return Permutation(self.domain, tuple(inv[v] for v in self.domain))

    def is_identity(self):
        return self.images == self.domain

    def cycles(self):
        """Disjoint cycles (fixed points omitted), canonically ordered."""
        seen = set()
        out = []
        for v in self.domain:
            if v in seen or self._map[v] == v:
                continue
            cyc = [v]
            seen.add(v)
            w = self._map[v]
            while w != v:
                cyc.append(w)
                seen.add(w)
                w = self._map[w]
            out.append(tuple(cyc))
        return out

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cycs)

    def __eq__(self, other):
        return (
            isinstance(other, Permutation)
            and self.domain == other.domain
            and self.images == other.images
        )

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({self.cycle_string()})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text):
    """Parse "(a b)(c d e)" into a list of name lists; "()" means identity."""
    text = text.strip()
    if text in ("", "()"):
        return []
    spans = _CYCLE_RE.findall(text)
    if "".join("(" + s + ")" for s in spans).replace(" ", "") != text.replace(" ", ""):
        raise MalformedInput(f"unparseable cycle notation: {text!r}")
    cycles = []
    for span in spans:
        names = span.split()
        if len(names) < 2:
            raise MalformedInput(f"cycle ({span}) too short")
        cycles.append(names)
    return cycles


def close_under_product(domain, perms, cap=GROUP_CAP):
    """Generate the subgroup containing the given permutations (BFS closure)."""
    identity = Permutation.identity(domain)
    elements = {identity}
    frontier = [identity]
    gens = list(perms)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = g * p
                if q not in elements:
                    if len(elements) >= cap:
                        raise GroupTooLarge(cap)
                    elements.add(q)
                    nxt.append(q)
        frontier = nxt
    return tuple(sorted(elements, key=lambda p: p.images))


class PermGroup:
    """A finite permutation group, fully enumerated on first use."""

    def __init__(self, domain, generators, cap=GROUP_CAP):
        self.domain = domain
        self.generators = tuple(generators)
        self.cap = cap

    @cached_property
    def elements(self):
        return close_under_product(self.domain, self.generators, self.cap)

    @cached_property
    def element_set(self):
        return frozenset(self.elements)

    @property
    def identity(self):
        return Permutation.identity(self.domain)

    def order(self):
        return len(self.elements)

    def __contains__(self, p):
        return p in self.element_set


@dataclass(frozen=True)
class GroupAction:
    """A validated simplicial action; flags record which checks have run."""

    complex: SimplicialComplex
    group: PermGroup
    validated_simplicial: bool = False
    validated_without_rotations: bool = False
    subdivisions: int = 0

    def act(self, g, s):
        return g.apply(s)


def validate_simplicial_action(K, generators, cap=GROUP_CAP):
    """Check each generator is a simplicial automorphism; enumerate the group."""
    domain = K.sorted_vertices
    perms = []
    for g in generators:
        if not isinstance(g, Permutation):
            g = Permutation.from_mapping(domain, g)
        if g.domain != domain:
            raise NotABijection("generator domain differs from complex vertices")
        perms.append(g)
    for g in perms:
        for e in K.sorted_edges:
            if g.apply(e) not in K.edges:
                raise NotSimplicial(g.cycle_string(), e)
        for t in K.sorted_triangles:
            if g.apply(t) not in K.triangles:
                raise NotSimplicial(g.cycle_string(), t)
    group = PermGroup(domain, perms, cap)
    group.elements  # force enumeration so GroupTooLarge surfaces here
    return GroupAction(K, group, validated_simplicial=True)


def check_without_rotations(A):
    """Does every setwise simplex stabilizer fix the simplex pointwise?

    Returns (True, None) or (False, (element, simplex)).
    """
    simps = list(A.complex.sorted_edges) + list(A.complex.sorted_triangles)
    for g in A.group.elements:
        if g.is_identity():
            continue
        for s in simps:
            if g.apply(s) == s and any(g(v) != v for v in s):
                return False, (g, s)
    return True, None


def simplex_string(s):
    return "{" + ",".join(str(v) for v in s) + "}"


def mark_without_rotations(A):
    ok, witness = check_without_rotations(A)
    if not ok:
        g, s = witness
        raise PreconditionUnvalidated(
            f"{g.cycle_string()} rotates simplex {simplex_string(s)}"
        )
    return replace(A, validated_without_rotations=True)


def orbit_of_vertex(A, v):
    if v not in A.complex.vertices:
        raise UnknownVertex(v)
    return tuple(sorted({g(v) for g in A.group.elements}))


def orbit_of_simplex(A, s):
    s = simplex(s)
    return tuple(sorted({g.apply(s) for g in A.group.elements}))


def stabilizer(A, v):
    """All elements fixing the vertex, identity first, canonical order."""
    if v not in A.complex.vertices:
        raise UnknownVertex(v)
    return tuple(g for g in A.group.elements if g(v) == v)


def edge_stabilizer(A, e):
    """Pointwise stabilizer of an edge (= setwise, when without rotations)."""
    u, w = simplex(e)
    return tuple(g for g in A.group.elements if g(u) == u and g(w) == w)


def transporter(A, subgroup, x, y):
    """First element of the subgroup (canonical order) sending x to y, or None."""
    for g in subgroup:
        if g not in A.group.element_set:
            raise PreconditionUnvalidated(f"{g.cycle_string()} is not a group element")
        if g(x) == y:
            return g
    return None


def all_transporters(A, subgroup, x, y):
    return tuple(g for g in subgroup if g(x) == y)


def _orbit_defect(A):
    """Witness string if simplex orbits fail to form a simplicial quotient."""
    proj = {}
    for v in A.complex.sorted_vertices:
        proj[v] = min(orbit_of_vertex(A, v))
    by_image = {}
    for s in list(A.complex.sorted_edges) + list(A.complex.sorted_triangles):
        img = tuple(sorted({proj[v] for v in s}))
        if len(img) < len(s):
            return f"orbit of {s} maps to degenerate vertex set {img}"
        by_image.setdefault(img, []).append(s)
    for img, pre in by_image.items():
        orbit = set(orbit_of_simplex(A, pre[0]))
        extra = [s for s in pre if s not in orbit]
        if extra:
            return f"distinct orbits of {pre[0]} and {extra[0]} share vertex set {img}"
    return None


def refine_action_tracked(A, max_subdivisions=2):
    """Subdivide (at most twice) until the action is without rotations and
    simplex orbits form a simplicial quotient.

    Returns (refined action, lift) where lift sends any element of the
    original group to the induced element of the refined group.
    """
    if not A.validated_simplicial:
        raise PreconditionUnvalidated("run validate_simplicial_action first")
    stages = []  # (complex, barycenter names, subdivided complex)
    current = A
    for round_ in range(max_subdivisions + 1):
        ok, _ = check_without_rotations(current)
        if ok and _orbit_defect(current) is None:
            refined = replace(current, validated_without_rotations=True)

            def lift(g, _stages=tuple(stages)):
                for K, names, sd in _stages:
                    mapping = {names[s]: names[g.apply(s)] for s in K.simplices()}
                    g = Permutation.from_mapping(sd.sorted_vertices, mapping)
                return g

            return refined, lift
        if round_ == max_subdivisions:
            break
        sd, names = barycentric_subdivision(current.complex)
        stages.append((current.complex, names, sd))
        gens = []
        for g in current.group.generators:
            mapping = {names[s]: names[g.apply(s)] for s in current.complex.simplices()}
            gens.append(Permutation.from_mapping(sd.sorted_vertices, mapping))
        nxt = validate_simplicial_action(sd, gens, cap=current.group.cap)
        current = replace(nxt, subdivisions=current.subdivisions + 1)
    ok, witness = check_without_rotations(current)
    if ok:
        detail = _orbit_defect(current)
    else:
        g, s = witness
        detail = f"{g.cycle_string()} rotates simplex {simplex_string(s)}"
    raise RefinementFailed(detail)


def refine_action(A, max_subdivisions=2):
    return refine_action_tracked(A, max_subdivisions)[0]


def subdivide_action(A):
    """Barycentric subdivision of the complex with the induced action."""
    sd, names = barycentric_subdivision(A.complex)
    domain = sd.sorted_vertices
    gens = []
    for g in A.group.generators:
        mapping = {names[s]: names[g.apply(s)] for s in A.complex.simplices()}
        gens.append(Permutation.from_mapping(domain, mapping))
    refined = validate_simplicial_action(sd, gens, cap=A.group.cap)
    return replace(refined, subdivisions=A.subdivisions + 1)


@dataclass(frozen=True)
class QuotientData:
    """Quotient complex, vertex projection, and simplex lift index."""

    quotient: SimplicialComplex
    projection: dict
    lift_index: dict = field(repr=False)

    def project_simplex(self, s):
        return tuple(sorted({self.projection[v] for v in s}))

    def project_path(self, vertices):
        return tuple(self.projection[v] for v in vertices)

    def lifts(self, s):
        return self.lift_index[simplex(s)]


def build_quotient(A):
    """Quotient complex whose simplices are the orbits.

    Quotient vertices are named by the minimum vertex in their orbit.
    Raises OrbitCollision if orbits do not form a simplicial complex.
    """
    if not (A.validated_simplicial and A.validated_without_rotations):
        raise PreconditionUnvalidated("action must be validated without rotations")
    proj = {}
    lift = {}
    for v in A.complex.sorted_vertices:
        orb = orbit_of_vertex(A, v)
        proj[v] = orb[0]
        lift.setdefault((orb[0],), tuple((u,) for u in orb))
    q_edges = set()
    q_tris = set()
    for s in list(A.complex.sorted_edges) + list(A.complex.sorted_triangles):
        img = tuple(sorted({proj[v] for v in s}))
        if len(img) < len(s):
            raise OrbitCollision(f"orbit of {s} maps to degenerate vertex set {img}")
        if img in lift:
            if s not in lift[img]:
                raise OrbitCollision(
                    f"distinct orbits of {lift[img][0]} and {s} share vertex set {img}"
                )
            continue
        lift[img] = orbit_of_simplex(A, s)
        (q_edges if len(img) == 2 else q_tris).add(img)
    quotient = SimplicialComplex(
        frozenset(proj[v] for v in A.complex.vertices),
        frozenset(q_edges),
        frozenset(q_tris),
    )
    return QuotientData(quotient, proj, lift)


def action_from_json_obj(obj, cap=GROUP_CAP):
    """Load {"complex": ..., "generators": [[[...cycle...], ...], ...]}."""
    if not isinstance(obj, dict):
        raise MalformedInput("action must be a JSON object")
    if "complex" not in obj or "generators" not in obj:
        raise MalformedInput('action object needs "complex" and "generators"')
    K = complex_from_json_obj(obj["complex"])
    gens_json = obj["generators"]
    if not isinstance(gens_json, list):
        raise MalformedInput("generators must be a list")
    domain = K.sorted_vertices
    gens = []
    for g in gens_json:
        if not isinstance(g, list) or not all(isinstance(c, list) for c in g):
            raise MalformedInput(f"generator {g!r} must be a list of cycles")
        cycles = [[str(v) for v in c] for c in g]
        gens.append(Permutation.from_cycles(domain, cycles))
    return validate_simplicial_action(K, gens, cap)


def action_to_json_obj(A):
    return {
        "complex": A.complex.to_json_obj(),
        "generators": [
            [[str(v) for v in c] for c in g.cycles()] for g in A.group.generators
        ],
    }


def load_action(path, cap=GROUP_CAP):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"bad JSON in {path}: {exc}") from exc
    return action_from_json_obj(obj, cap)
