"""Expressing group elements as stabilizer words."""

import pytest

from stabpres.actions import Permutation, refine_action, build_quotient
from stabpres.armstrong import (
    StabilizerLetter,
    StabilizerWord,
    armstrong_express,
    find_path,
    psi_evaluate,
    word_from_json_obj,
)
from stabpres.complexes import SimplicialComplex
from stabpres.errors import (
    Disconnected,
    LetterInvariantViolated,
    MalformedInput,
    PreconditionUnvalidated,
    UnknownVertex,
)
from stabpres.fixtures import f1_flip, interval_complex
from stabpres.presentation import word_to_coset


# -- letters and words --------------------------------------------------


def test_letter_invariant():
    dom = ("a", "b", "m")
    flip = Permutation.from_cycles(dom, [["a", "b"]])
    letter = StabilizerLetter(flip, "m")
    assert letter.vertex == "m"
    with pytest.raises(LetterInvariantViolated):
        StabilizerLetter(flip, "a")  # flip moves a


def test_psi_composes_left_to_right():
    dom = ("1", "2", "3")
    a = Permutation.from_cycles(dom, [["1", "2"]])
    b = Permutation.from_cycles(dom, [["1", "3"]])
    word = StabilizerWord(
        (StabilizerLetter(a, "3"), StabilizerLetter(b, "2"))
    )
    # psi(word) = a * b, i.e. b acts first: 3 -> 1 -> 2
    assert psi_evaluate(word) == a * b
    assert psi_evaluate(word)("3") == "2"
    assert str(word) == "(1 2)@3 . (1 3)@2"


def test_empty_word_needs_identity():
    dom = ("a", "b")
    empty = StabilizerWord(())
    assert str(empty) == "1"
    assert psi_evaluate(empty, Permutation.identity(dom)).is_identity()
    with pytest.raises(MalformedInput):
        psi_evaluate(empty)


def test_word_normalize_drops_identity_letters():
    dom = ("a", "b", "m")
    flip = Permutation.from_cycles(dom, [["a", "b"]])
    word = StabilizerWord(
        (
            StabilizerLetter(Permutation.identity(dom), "a"),
            StabilizerLetter(flip, "m"),
        )
    )
    assert [l.element for l in word.normalize().letters] == [flip]


def test_word_json_round_trip():
    A = refine_action(f1_flip())
    flip = next(g for g in A.group.elements if not g.is_identity())
    word = StabilizerWord((StabilizerLetter(flip, "m"),))
    assert word_from_json_obj(word.to_json_obj(), A) == word
    with pytest.raises(MalformedInput):
        word_from_json_obj({"not": "a list"}, A)
    with pytest.raises(MalformedInput):
        word_from_json_obj([{"element": [["a", "b"]]}], A)  # missing vertex


# -- paths --------------------------------------------------------------


def test_find_path_basics():
    K = interval_complex()
    assert find_path(K, "a", "b").vertices == ("a", "m", "b")
    assert find_path(K, "a", "a").vertices == ("a",)
    assert find_path(K, "a", "b", seed=0) == find_path(K, "a", "b", seed=0)


def test_find_path_disconnected():
    K = SimplicialComplex(frozenset({"a", "b"}), frozenset(), frozenset())
    with pytest.raises(Disconnected):
        find_path(K, "a", "b")


# -- the expression algorithm -------------------------------------------


def test_express_flip_exactly():
    A = refine_action(f1_flip())
    Q = build_quotient(A)
    flip = next(g for g in A.group.elements if not g.is_identity())
    word = armstrong_express(A, Q, "a", flip)
    assert str(word) == "(a b)@m"
    assert len(word.letters) == 1 and word.letters[0].vertex == "m"


def test_express_identity_is_empty():
    A = refine_action(f1_flip())
    Q = build_quotient(A)
    word = armstrong_express(A, Q, "a", A.group.identity)
    assert word.letters == ()


def test_express_validates_inputs():
    A = refine_action(f1_flip())
    Q = build_quotient(A)
    with pytest.raises(UnknownVertex):
        armstrong_express(A, Q, "zz", A.group.identity)
    outsider = Permutation.from_cycles(A.complex.sorted_vertices, [["a", "m"]])
    with pytest.raises(PreconditionUnvalidated):
        armstrong_express(A, Q, "a", outsider)


def test_express_every_element(f1, f2):
    for pipe in (f1, f2):
        A, Q = pipe.action, pipe.quotient
        basepoint = min(A.complex.vertices)
        for g in A.group.elements:
            word = armstrong_express(A, Q, basepoint, g)
            psi = psi_evaluate(word, A.group.identity)
            assert psi == g
            for letter in word.letters:
                assert not letter.element.is_identity()
                assert letter.vertex in A.complex.vertices


def test_express_randomized_seeds_still_express(f2):
    A, Q = f2.action, f2.quotient
    basepoint = min(A.complex.vertices)
    g = A.group.generators[0]
    for seed in range(6):
        word = armstrong_express(A, Q, basepoint, g, seed=seed)
        assert psi_evaluate(word, A.group.identity) == g


def test_express_is_homomorphic_on_cosets(f2):
    """Tracing words through the coset table respects multiplication."""
    A, Q, T = f2.action, f2.quotient, f2.table
    basepoint = min(A.complex.vertices)
    elems = A.group.elements

    def coset(word):
        return word_to_coset(T, word)

    words = {g: armstrong_express(A, Q, basepoint, g) for g in elems}
    for g in elems:
        for h in elems:
            combined = words[g] * words[h]
            assert coset(combined) == coset(words[g * h])
