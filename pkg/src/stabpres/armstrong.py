"""Expressing a group element as a product of vertex-stabilizer elements.

Given a validated action with quotient data, an element g, and a
basepoint v:

  1. take any edge path in the complex from v to g(v);
  2. project it to a loop in the quotient and contract that loop by
     elementary moves (`homotopy.contract_loop`);
  3. lift each move back upstairs.  A triangle insert lifts to a choice
     of apex over the inserted vertex (contributing nothing).  A
     backtrack delete has a lifted window x1 - p - x1' with both edges
     in one orbit; swinging around the pivot p by the stabilizer element
     h with h(x1') = x1 replaces the tail of the lifted path by its
     h-image and deletes the window.

The lifted path shrinks with the loop and ends back at the basepoint,
so the recorded swing elements compose against g to a final basepoint
stabilizer; the inverses of all recorded elements, tagged with their
pivot vertices, form a word whose evaluation is exactly g.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .actions import (
    Permutation,
    all_transporters,
    stabilizer,
    transporter,
)
from .complexes import EdgePath, simplex
from .errors import (
    Disconnected,
    LetterInvariantViolated,
    LiftFailed,
    MalformedInput,
    PreconditionUnvalidated,
    UnknownVertex,
)
from .homotopy import BACK, TRI, MoveLog, contract_loop


@dataclass(frozen=True)
class StabilizerLetter:
    """One word letter: a group element tagged with a vertex it fixes."""

    element: Permutation
    vertex: object

    def __post_init__(self):
        if self.element(self.vertex) != self.vertex:
            raise LetterInvariantViolated(self.element.cycle_string(), self.vertex)

    def to_json_obj(self):
        return {
            "element": [[str(v) for v in c] for c in self.element.cycles()],
            "vertex": str(self.vertex),
        }


@dataclass(frozen=True)
class StabilizerWord:
    letters: tuple

    def normalize(self):
        return StabilizerWord(tuple(l for l in self.letters if not l.element.is_identity()))

    def __mul__(self, other):
        return StabilizerWord(self.letters + other.letters)

    def to_json_obj(self):
        return [l.to_json_obj() for l in self.letters]

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2)

    def __str__(self):
        return " . ".join(f"{l.element.cycle_string()}@{l.vertex}" for l in self.letters) or "1"


def word_from_json_obj(obj, A):
    domain = A.complex.sorted_vertices
    if not isinstance(obj, list):
        raise MalformedInput("stabilizer word must be a list")
    letters = []
    for entry in obj:
        try:
            cycles = [[str(v) for v in c] for c in entry["element"]]
            vertex = entry["vertex"]
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad word letter: {exc}") from exc
        letters.append(StabilizerLetter(Permutation.from_cycles(domain, cycles), vertex))
    return StabilizerWord(tuple(letters))


def psi_evaluate(word, identity=None):
    """Ordered product of the letters' elements ((a*b)(x) = a(b(x))).

    The empty word needs an explicit identity to fix the domain.
    """
    result = identity
    for letter in word.letters:
        result = letter.element if result is None else result * letter.element
    if result is None:
        raise MalformedInput("empty word needs an identity permutation for its domain")
    return result


@dataclass(frozen=True)
class LiftStep:
    kind: str
    pivot: object  # the swing vertex (BACK) or None (TRI)
    swing: Permutation  # identity for TRI steps
    apex_lift: object = None  # the chosen apex upstairs (TRI) or None


@dataclass(frozen=True)
class LiftedMoveLog:
    base: MoveLog
    lifted_paths: tuple  # EdgePath per state, aligned with base replay
    steps: tuple  # LiftStep per move

    @property
    def pivots(self):
        return tuple((s.pivot, s.swing) for s in self.steps if s.kind == BACK)

    @property
    def apexes(self):
        return tuple(s.apex_lift for s in self.steps if s.kind == TRI)


def find_path(K, u, w, seed=0):
    """Breadth-first shortest path; canonical tie-break, seed shuffles it."""
    for v in (u, w):
        if v not in K.vertices:
            raise UnknownVertex(v)
    adjacency = K.adjacency
    if seed:
        rng = random.Random(seed)
        shuffled = {}
        for v in sorted(adjacency):
            ns = list(adjacency[v])
            rng.shuffle(ns)
            shuffled[v] = ns
        adjacency = shuffled
    parent = {u: None}
    frontier = [u]
    while frontier:
        nxt = []
        for v in frontier:
            if v == w:
                path = []
                while v is not None:
                    path.append(v)
                    v = parent[v]
                return EdgePath(tuple(reversed(path)))
            for nb in adjacency[v]:
                if nb not in parent:
                    parent[nb] = v
                    nxt.append(nb)
        frontier = nxt
    raise Disconnected(u, w)


def lift_and_swing(A, Q, state, move, rng=None):
    """Extend a lifted log by one base move; canonical choices unless rng."""
    lifted = state.lifted_paths[-1].vertices
    base_states = state.base.replay(Q.quotient)
    k = len(state.steps)
    base_before = base_states[k].vertices
    assert Q.project_path(lifted) == base_before, "lift out of sync with base loop"
    i = move.pos
    if move.kind == TRI:
        x1, x2 = lifted[i], lifted[i + 1]
        candidates = [
            y[0]
            for y in Q.lifts((move.apex,))
            if simplex((x1, x2, y[0])) in A.complex.triangles
        ]
        if not candidates:
            raise LiftFailed(f"no apex over {move.apex!r} joins {x1!r}-{x2!r}")
        apex = rng.choice(sorted(candidates)) if rng else min(candidates)
        new_lifted = lifted[: i + 1] + (apex,) + lifted[i + 1 :]
        step = LiftStep(TRI, None, A.group.identity, apex)
    else:
        x1, pivot, x1p = lifted[i], lifted[i + 1], lifted[i + 2]
        stab = stabilizer(A, pivot)
        if rng:
            options = all_transporters(A, stab, x1p, x1)
            h = rng.choice(list(options)) if options else None
        elif x1 == x1p:
            h = A.group.identity
        else:
            h = transporter(A, stab, x1p, x1)
        if h is None:
            raise LiftFailed(f"no pivot stabilizer sends {x1p!r} to {x1!r}")
        new_lifted = lifted[: i + 1] + tuple(h(v) for v in lifted[i + 3 :])
        step = LiftStep(BACK, pivot, h)
    new_path = EdgePath(new_lifted)
    assert Q.project_path(new_lifted) == base_states[k + 1].vertices, (
        "projected lift disagrees with base loop after move"
    )
    return LiftedMoveLog(
        state.base,
        state.lifted_paths + (new_path,),
        state.steps + (step,),
    )


def armstrong_express(A, Q, basepoint, g, seed=0, budget=None):
    """Express g as a stabilizer word based at the given vertex.

    seed 0 makes every choice canonical; a nonzero seed randomizes the
    path, the contraction move order, and every lift choice (the result
    is still a valid expression of g).
    """
    if not (A.validated_simplicial and A.validated_without_rotations):
        raise PreconditionUnvalidated("action must be validated without rotations")
    if basepoint not in A.complex.vertices:
        raise UnknownVertex(basepoint)
    if g not in A.group:
        raise PreconditionUnvalidated(f"{g.cycle_string()} is not a group element")
    rng = random.Random(seed) if seed else None
    path_seed = rng.randrange(1, 2**31) if rng else 0
    contraction_seed = rng.randrange(1, 2**31) if rng else 0

    path = find_path(A.complex, basepoint, g(basepoint), seed=path_seed)
    base_loop = EdgePath(Q.project_path(path.vertices))
    log = contract_loop(
        Q.quotient, base_loop, Q.projection[basepoint], budget=budget, seed=contraction_seed
    )
    state = LiftedMoveLog(log, (path,), ())
    for move in log.moves:
        state = lift_and_swing(A, Q, state, move, rng=rng)

    final = state.lifted_paths[-1].vertices
    assert final == (basepoint,), f"lifted contraction ended at {final}"

    letters = []
    composite = g
    for step in state.steps:
        if not step.swing.is_identity():
            letters.append(StabilizerLetter(step.swing.inverse(), step.pivot))
        composite = step.swing * composite
    assert composite(basepoint) == basepoint, "endpoint recurrence broke"
    # closing letter: composite is h_{n-1}...h_1*g, the inverse of the final
    # swing; its own inverse is the final h, so the letter element is composite
    if not composite.is_identity():
        letters.append(StabilizerLetter(composite, basepoint))
    word = StabilizerWord(tuple(letters)).normalize()
    assert psi_evaluate(word, A.group.identity) == g, "word does not evaluate to g"
    return word
