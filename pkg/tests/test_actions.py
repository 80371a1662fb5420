"""Group actions on complexes: validation, orbits, refinement, quotients."""

import pytest

from stabpres.actions import (
    GroupAction,
    PermGroup,
    Permutation,
    action_from_json_obj,
    action_to_json_obj,
    all_transporters,
    build_quotient,
    check_without_rotations,
    close_under_product,
    edge_stabilizer,
    mark_without_rotations,
    orbit_of_simplex,
    orbit_of_vertex,
    parse_cycles,
    refine_action,
    refine_action_tracked,
    stabilizer,
    subdivide_action,
    transporter,
    validate_simplicial_action,
)
from stabpres.errors import (
    GroupTooLarge,
    MalformedInput,
    NotABijection,
    NotSimplicial,
    OrbitCollision,
    PreconditionUnvalidated,
    UnknownVertex,
)
from stabpres.fixtures import (
    c6_rotation,
    f1_flip,
    f2_s3,
    f3_octahedral,
    f4_rotation,
    f5_antipodal,
    interval_complex,
)


# -- permutations -------------------------------------------------------


def test_permutation_composition_convention():
    dom = ("1", "2", "3")
    a = Permutation.from_cycles(dom, [["1", "2"]])
    b = Permutation.from_cycles(dom, [["2", "3"]])
    # (a * b)(x) = a(b(x)): apply b first
    assert (a * b)("3") == a("2") == "1"
    assert (a * b).cycle_string() == "(1 2 3)"
    assert (b * a).cycle_string() == "(1 3 2)"


def test_permutation_basics():
    dom = ("a", "b", "m")
    e = Permutation.identity(dom)
    g = Permutation.from_cycles(dom, [["a", "b"]])
    assert e.is_identity() and not g.is_identity()
    assert g * g == e
    assert g.inverse() == g
    assert g.apply(("a", "m")) == ("b", "m")
    assert g.cycle_string() == "(a b)"
    assert e.cycle_string() == "()"
    assert Permutation.from_mapping(dom, {"a": "b", "b": "a", "m": "m"}) == g


def test_permutation_rejects_nonbijection():
    with pytest.raises(NotABijection):
        Permutation.from_mapping(("a", "b"), {"a": "a", "b": "a"})
    with pytest.raises(UnknownVertex):
        Permutation.from_cycles(("a", "b"), [["a", "zz"]])


def test_parse_cycles():
    assert parse_cycles("(a b)(c d e)") == [["a", "b"], ["c", "d", "e"]]
    assert parse_cycles("()") == []
    assert parse_cycles("") == []
    with pytest.raises(MalformedInput):
        parse_cycles("(a b")
    with pytest.raises(MalformedInput):
        parse_cycles("(a)")
    with pytest.raises(MalformedInput):
        parse_cycles("a b")


def test_close_under_product_s3():
    dom = ("1", "2", "3")
    gens = [
        Permutation.from_cycles(dom, [["1", "2"]]),
        Permutation.from_cycles(dom, [["1", "2", "3"]]),
    ]
    elems = close_under_product(dom, gens)
    assert len(elems) == 6
    assert Permutation.identity(dom) in elems
    # closure caps out rather than looping
    with pytest.raises(GroupTooLarge):
        close_under_product(dom, gens, cap=4)


# -- action validation --------------------------------------------------


def test_validate_action_rejects_nonsimplicial():
    K = interval_complex()
    # swapping an endpoint with the middle tears the other edge
    with pytest.raises(NotSimplicial):
        validate_simplicial_action(K, [Permutation.from_cycles(K.sorted_vertices, [["a", "m"]])])


def test_validate_action_rejects_wrong_domain():
    K = interval_complex()
    g = Permutation.from_cycles(("a", "b"), [["a", "b"]])
    with pytest.raises(NotABijection):
        validate_simplicial_action(K, [g])


def test_validate_action_group_cap():
    A = f3_octahedral()
    assert A.group.order() == 48
    with pytest.raises(GroupTooLarge):
        validate_simplicial_action(A.complex, A.group.generators, cap=10)


def test_without_rotations_witness():
    A = f4_rotation()
    ok, witness = check_without_rotations(A)
    assert not ok
    g, s = witness
    assert g.cycle_string() == "(1 2 3)" and s == ("1", "2", "3")
    with pytest.raises(PreconditionUnvalidated) as exc:
        mark_without_rotations(A)
    assert str(exc.value).endswith("(1 2 3) rotates simplex {1,2,3}")


def test_without_rotations_clean_cases():
    for build in (f1_flip, f5_antipodal, c6_rotation):
        ok, witness = check_without_rotations(build())
        assert ok and witness is None


# -- orbits, stabilizers, transporters ----------------------------------


def test_orbits_and_stabilizers_flip():
    A = mark_without_rotations(f1_flip())
    assert orbit_of_vertex(A, "a") == ("a", "b")
    assert orbit_of_vertex(A, "m") == ("m",)
    assert orbit_of_simplex(A, ("a", "m")) == (("a", "m"), ("b", "m"))
    stab = stabilizer(A, "m")
    assert [g.cycle_string() for g in stab] == ["()", "(a b)"]
    assert stab[0].is_identity()  # identity first, canonical order
    assert [g.cycle_string() for g in stabilizer(A, "a")] == ["()"]
    with pytest.raises(UnknownVertex):
        stabilizer(A, "zz")


def test_transporter_flip():
    A = f1_flip()
    elems = A.group.elements
    t = transporter(A, elems, "a", "b")
    assert t is not None and t("a") == "b"
    assert transporter(A, elems, "a", "m") is None
    assert all_transporters(A, elems, "m", "m") == elems
    outsider = Permutation.from_cycles(A.complex.sorted_vertices, [["a", "m"]])
    with pytest.raises(PreconditionUnvalidated):
        transporter(A, (outsider,), "a", "m")


def test_edge_stabilizer_is_intersection():
    for build in (f2_s3, f3_octahedral):
        A = refine_action(build())
        for e in A.complex.sorted_edges:
            u, w = e
            expect = [g for g in stabilizer(A, u) if g(w) == w]
            assert list(edge_stabilizer(A, e)) == expect


# -- refinement ---------------------------------------------------------


def test_refinement_round_counts():
    for build, rounds in [
        (f1_flip, 0),
        (f2_s3, 1),
        (f3_octahedral, 1),
        (f4_rotation, 2),
        (f5_antipodal, 1),
        (c6_rotation, 2),
    ]:
        R = refine_action(build())
        assert R.subdivisions == rounds
        assert R.validated_without_rotations


def test_refinement_preserves_group():
    A = f2_s3()
    R = refine_action(A)
    assert R.group.order() == A.group.order() == 6
    assert R.complex.counts() == (7, 12, 6)


def test_refinement_tracks_element_lift():
    A = f2_s3()
    R, lift = refine_action_tracked(A)
    for g in A.group.elements:
        lg = lift(g)
        assert lg in R.group.element_set
        # lifted element restricts to the original on original vertices
        for v in A.complex.sorted_vertices:
            assert lg(v) == g(v)
    a, b = A.group.generators
    assert lift(a * b) == lift(a) * lift(b)


def test_subdivide_action_once():
    A = f2_s3()
    S = subdivide_action(A)
    assert S.subdivisions == 1
    assert S.complex.counts() == (7, 12, 6)
    ok, _ = check_without_rotations(S)
    assert ok


# -- quotients ----------------------------------------------------------


def test_quotient_flip():
    Q = build_quotient(refine_action(f1_flip()))
    assert Q.quotient.counts() == (2, 1, 0)
    assert Q.projection == {"a": "a", "b": "a", "m": "m"}
    assert Q.lifts(("a",)) == (("a",), ("b",))
    assert Q.lifts(("a", "m")) == (("a", "m"), ("b", "m"))
    assert Q.project_simplex(("b", "m")) == ("a", "m")
    assert Q.project_path(("a", "m", "b")) == ("a", "m", "a")


def test_quotient_shapes():
    for build, counts in [
        (f2_s3, (3, 3, 1)),
        (f3_octahedral, (3, 3, 1)),
        (f4_rotation, (9, 20, 12)),
        (f5_antipodal, (13, 36, 24)),
        (c6_rotation, (4, 4, 0)),
    ]:
        Q = build_quotient(refine_action(build()))
        assert Q.quotient.counts() == counts


def test_projection_commutes_with_action():
    for build in (f1_flip, f2_s3, f3_octahedral):
        A = refine_action(build())
        Q = build_quotient(A)
        for g in A.group.elements:
            for v in A.complex.sorted_vertices:
                assert Q.projection[g(v)] == Q.projection[v]


def test_quotient_requires_validation():
    with pytest.raises(PreconditionUnvalidated):
        build_quotient(f1_flip())  # not marked without rotations


def test_orbit_collision_shared_vertex_set():
    A = mark_without_rotations(f5_antipodal())
    with pytest.raises(OrbitCollision) as exc:
        build_quotient(A)
    assert "share vertex set" in str(exc.value)


def test_orbit_collision_degenerate():
    A = mark_without_rotations(c6_rotation())
    with pytest.raises(OrbitCollision) as exc:
        build_quotient(A)
    assert "degenerate vertex set" in str(exc.value)


def test_refined_quotient_never_collides():
    for build in (f1_flip, f2_s3, f3_octahedral, f4_rotation, f5_antipodal, c6_rotation):
        Q = build_quotient(refine_action(build()))
        # lift index covers every quotient simplex
        for s in Q.quotient.simplices():
            assert len(Q.lifts(s)) >= 1


# -- serialization ------------------------------------------------------


def test_action_json_round_trip():
    for build in (f1_flip, f2_s3, f3_octahedral):
        A = build()
        B = action_from_json_obj(action_to_json_obj(A))
        assert B.complex == A.complex
        assert B.group.element_set == A.group.element_set


def test_action_from_json_rejects_malformed():
    with pytest.raises(MalformedInput):
        action_from_json_obj([])
    with pytest.raises(MalformedInput):
        action_from_json_obj({"complex": {"vertices": ["a"], "edges": [], "triangles": []}})
    with pytest.raises(MalformedInput):
        action_from_json_obj(
            {
                "complex": {"vertices": ["a"], "edges": [], "triangles": []},
                "generators": ["(a b)"],
            }
        )
