"""Loop contraction by elementary moves, and the disc collapse calculus.

Two moves act on an edge loop:

  TriangleInsert ("tri"):  ... x1 - x2 ...  ->  ... x1 - y - x2 ...
      legal when {x1, x2, y} is a triangle of the complex.
  BacktrackDelete ("back"): ... x1 - x2 - x1 ...  ->  ... x1 ...
      legal when the middle vertex differs from the loop's basepoint.

These are the boundary traces of the two collapses of a disc spanning
the loop (a two-dimensional collapse pushes a boundary edge across its
triangle; a one-dimensional collapse retracts a boundary spur), so a
loop contracts to the constant loop exactly when it spans a disc.
`contract_loop` finds a move log by iterative-deepening search and
replay-verifies it before returning; no disc is ever constructed.

`collapse_disc` is the disc side of the same calculus: it collapses an
explicit (possibly degenerate) disc to its basepoint, emitting both the
per-step deletions and the induced boundary MoveLog.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .complexes import EdgePath, SimplicialComplex, simplex, validate_path
from .errors import (
    BadSize,
    BudgetExhausted,
    IllegalMove,
    MalformedInput,
    NotCollapsible,
)

TRI = "tri"
BACK = "back"

MAX_DISC_BOUNDARY = 64


@dataclass(frozen=True)
class Move:
    kind: str
    pos: int
    apex: object = None

    def to_json_obj(self):
        if self.kind == TRI:
            return {"kind": TRI, "pos": self.pos, "apex": str(self.apex)}
        return {"kind": BACK, "pos": self.pos}


@dataclass(frozen=True)
class MoveLog:
    initial: EdgePath
    moves: tuple

    def replay(self, K):
        """All intermediate loops, legality-checked; raises IllegalMove."""
        loop = self.initial
        states = [loop]
        for m in self.moves:
            loop = apply_move(K, loop, m)
            states.append(loop)
        return states

    def final_loop(self, K):
        return self.replay(K)[-1]

    def move_counts(self):
        tri = sum(1 for m in self.moves if m.kind == TRI)
        back = len(self.moves) - tri
        return tri, back

    def to_json_obj(self):
        return {
            "initial": [str(v) for v in self.initial.vertices],
            "moves": [m.to_json_obj() for m in self.moves],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2)


def move_log_from_json_obj(obj, K):
    try:
        initial = validate_path(K, obj["initial"])
        moves = []
        for m in obj["moves"]:
            if m["kind"] == TRI:
                moves.append(Move(TRI, int(m["pos"]), m["apex"]))
            elif m["kind"] == BACK:
                moves.append(Move(BACK, int(m["pos"])))
            else:
                raise MalformedInput(f"unknown move kind {m['kind']!r}")
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad move log: {exc}") from exc
    return MoveLog(initial, tuple(moves))


def apply_move(K, loop, move):
    """Apply one move to a based loop, checking legality."""
    vs = loop.vertices
    base = vs[0]
    if move.kind == TRI:
        i = move.pos
        if not 0 <= i <= len(vs) - 2:
            raise IllegalMove(f"tri position {i} out of range")
        tri = simplex((vs[i], vs[i + 1], move.apex))
        if len(set(tri)) != 3 or tri not in K.triangles:
            raise IllegalMove(f"{tri} is not a triangle")
        return EdgePath(vs[: i + 1] + (move.apex,) + vs[i + 1 :])
    if move.kind == BACK:
        i = move.pos
        if not 0 <= i <= len(vs) - 3:
            raise IllegalMove(f"back position {i} out of range")
        if vs[i] != vs[i + 2]:
            raise IllegalMove(f"no backtrack at {i}: {vs[i]!r} vs {vs[i + 2]!r}")
        if vs[i + 1] == base:
            raise IllegalMove("backtrack middle vertex is the basepoint")
        return EdgePath(vs[: i + 1] + vs[i + 3 :])
    raise IllegalMove(f"unknown move kind {move.kind!r}")


def default_budget(loop_len):
    return 6 * loop_len + 16


def contract_loop(K, loop, basepoint, budget=None, seed=0, max_len=None):
    """Find a move log taking the loop to the constant loop at its basepoint.

    Iterative-deepening search over move sequences; moves are tried in
    canonical order (backtrack deletes by position, then triangle inserts
    by position and apex) unless a nonzero seed shuffles candidate order.
    The returned log is replay-verified.  Raises BudgetExhausted when no
    log of length <= budget exists within the loop-length cap.
    """
    if not isinstance(loop, EdgePath):
        loop = validate_path(K, loop)
    else:
        validate_path(K, loop.vertices)
    if not loop.is_loop() or loop.start != basepoint:
        raise IllegalMove(f"not a loop based at {basepoint!r}")
    if budget is None:
        budget = default_budget(len(loop))
    if max_len is None:
        max_len = 3 * len(loop) + 8
    rng = random.Random(seed) if seed else None
    apexes = K.edge_apexes
    target = (basepoint,)
    start = tuple(loop.vertices)

    def candidates(state):
        out = []
        n = len(state)
        for i in range(n - 2):
            if state[i] == state[i + 2] and state[i + 1] != basepoint:
                out.append(Move(BACK, i))
        if n <= max_len:  # n-1 edges now, +1 after an insert
            for i in range(n - 1):
                e = simplex((state[i], state[i + 1]))
                for y in apexes.get(e, ()):
                    out.append(Move(TRI, i, y))
        if rng is not None:
            rng.shuffle(out)
        return out

    def child(state, m):
        i = m.pos
        if m.kind == BACK:
            return state[: i + 1] + state[i + 3 :]
        return state[: i + 1] + (m.apex,) + state[i + 1 :]

    for limit in range(budget + 1):
        visited = {}
        found = _dfs(start, target, limit, candidates, child, visited)
        if found is not None:
            log = MoveLog(loop, tuple(found))
            states = log.replay(K)
            assert states[-1].vertices == target, "contraction replay failed"
            return log
    raise BudgetExhausted(budget)


def _dfs(state, target, remaining, candidates, child, visited):
    if state == target:
        return []
    # each backtrack delete removes 2 edges; a perfect all-delete finish
    # still needs ceil(length/2) moves
    lb = (len(state)) // 2  # len(state)-1 edges; ceil((n-1)/2) == n//2
    if lb > remaining:
        return None
    if visited.get(state, -1) >= remaining:
        return None
    visited[state] = remaining
    for m in candidates(state):
        sub = _dfs(child(state, m), target, remaining - 1, candidates, child, visited)
        if sub is not None:
            return [m] + sub
    return None


# ---------------------------------------------------------------------------
# Disc collapse calculus


@dataclass(frozen=True)
class DegenerateDisc:
    """A contractible complex together with the boundary walk of the disc
    it degenerated from.  The walk's basepoint is the collapse target."""

    complex: SimplicialComplex
    boundary: EdgePath

    @property
    def basepoint(self):
        return self.boundary.start


@dataclass(frozen=True)
class CollapseStep:
    kind: str  # TRI = two-dimensional collapse, BACK = one-dimensional
    pos: int
    apex: object = None
    removed_edge: tuple = None
    removed_triangle: tuple = None
    removed_vertex: object = None


@dataclass(frozen=True)
class DiscCollapse:
    initial: DegenerateDisc
    steps: tuple
    boundary_log: MoveLog


def random_nondegenerate_disc(n, seed, max_n=MAX_DISC_BOUNDARY):
    """A random triangulated n-gon (no interior vertices) with its boundary
    loop; deterministic per seed."""
    if not 3 <= n <= max_n:
        raise BadSize(n, 3, max_n)
    rng = random.Random(seed)
    names = [f"d{i:02d}" for i in range(n)]
    edges = {simplex((names[i], names[(i + 1) % n])) for i in range(n)}
    triangles = set()

    def split(lo, hi):
        # triangulate the polygon span names[lo..hi] against base edge (lo, hi)
        if hi - lo < 2:
            return
        k = rng.randint(lo + 1, hi - 1)
        triangles.add(simplex((names[lo], names[k], names[hi])))
        edges.add(simplex((names[lo], names[k])))
        edges.add(simplex((names[k], names[hi])))
        split(lo, k)
        split(k, hi)

    split(0, n - 1)
    K = SimplicialComplex(frozenset(names), frozenset(edges), frozenset(triangles))
    boundary = EdgePath(tuple(names) + (names[0],))
    return DegenerateDisc(K, boundary)


def collapse_disc(disc):
    """Collapse a degenerate disc to its basepoint.

    Repeatedly performs two-dimensional collapses (push a boundary edge
    across its unique triangle, deleting both) until no triangles remain,
    then one-dimensional collapses (retract a spur, deleting its edge and
    freed vertex).  Returns a certificate whose steps strictly shrink the
    complex and whose induced boundary MoveLog replays on the original.
    """
    K = disc.complex
    vertices = set(K.vertices)
    edges = set(K.edges)
    triangles = set(K.triangles)
    walk = list(disc.boundary.vertices)
    base = disc.basepoint
    steps = []
    moves = []

    def walk_edge_count(e):
        return sum(
            1 for i in range(len(walk) - 1) if simplex((walk[i], walk[i + 1])) == e
        )

    while triangles:
        done = False
        for i in range(len(walk) - 1):
            e = simplex((walk[i], walk[i + 1]))
            tris = [t for t in triangles if set(e) <= set(t)]
            if len(tris) != 1 or walk_edge_count(e) != 1:
                continue
            t = tris[0]
            apex = next(v for v in t if v not in e)
            walk[i + 1 : i + 1] = [apex]
            edges.discard(e)
            triangles.discard(t)
            steps.append(CollapseStep(TRI, i, apex, e, t))
            moves.append(Move(TRI, i, apex))
            done = True
            break
        if not done:
            raise NotCollapsible(f"{len(triangles)} triangles left, no boundary edge free")

    while len(walk) > 1:
        done = False
        for i in range(len(walk) - 2):
            if walk[i] != walk[i + 2] or walk[i + 1] == base:
                continue
            e = simplex((walk[i], walk[i + 1]))
            if walk_edge_count(e) != 2:
                continue  # edge still traversed elsewhere; not yet free
            mid = walk[i + 1]
            del walk[i + 1 : i + 3]
            edges.discard(e)
            removed_vertex = None
            if not any(mid in e2 for e2 in edges):
                vertices.discard(mid)
                removed_vertex = mid
            steps.append(CollapseStep(BACK, i, None, e, None, removed_vertex))
            moves.append(Move(BACK, i))
            done = True
            break
        if not done:
            raise NotCollapsible(f"walk {walk} admits no spur retraction")

    assert walk == [base] and not edges and not triangles
    assert vertices == {base}, f"stray vertices {vertices - {base}}"
    log = MoveLog(disc.boundary, tuple(moves))
    return DiscCollapse(disc, tuple(steps), log)


def verify_collapse(cert):
    """Replay a DiscCollapse certificate; raises on any violation.

    Checks: each step deletes simplices present at that point and counts
    strictly decrease; the final complex is the single basepoint vertex;
    the induced boundary log replays legally on the original complex and
    ends at the constant loop.
    """
    disc = cert.initial
    vertices = set(disc.complex.vertices)
    edges = set(disc.complex.edges)
    triangles = set(disc.complex.triangles)
    for step in cert.steps:
        before = (len(vertices), len(edges), len(triangles))
        if step.kind == TRI:
            if step.removed_triangle not in triangles or step.removed_edge not in edges:
                raise NotCollapsible(f"step removes absent simplex: {step}")
            triangles.discard(step.removed_triangle)
            edges.discard(step.removed_edge)
        else:
            if step.removed_edge not in edges:
                raise NotCollapsible(f"step removes absent edge: {step}")
            edges.discard(step.removed_edge)
            if step.removed_vertex is not None:
                vertices.discard(step.removed_vertex)
        after = (len(vertices), len(edges), len(triangles))
        if not after < before:
            raise NotCollapsible(f"counts did not decrease at {step}")
    if (vertices, edges, triangles) != ({disc.basepoint}, set(), set()):
        raise NotCollapsible("final complex is not the basepoint")
    states = cert.boundary_log.replay(disc.complex)
    if states[-1].vertices != (disc.basepoint,):
        raise NotCollapsible("boundary log does not end at the constant loop")
    tri, back = cert.boundary_log.move_counts()
    if 2 * back - tri != len(cert.boundary_log.initial):
        raise NotCollapsible("move-count accounting identity violated")
    return True
