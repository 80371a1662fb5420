"""The canonical fixture corpus.

F1  order-2 flip on the subdivided interval a - m - b
F2  S3 permuting the corners of a solid triangle (needs one subdivision)
F3  full octahedral symmetry, order 48, on the octahedron boundary
    (needs one subdivision)
F4  Z/3 rotating a solid triangle: the rotation witness negative control
F5  the antipodal map on the octahedron boundary: quotient collision
    negative control (projective plane after one subdivision)

Each builder returns a simplicially validated but unrefined action, so
the negative controls still exhibit their obstructions.  Running
`python -m stabpres.fixtures [dir]` writes f1.json .. f5.json.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .actions import Permutation, action_to_json_obj, validate_simplicial_action
from .complexes import validate_complex


def interval_complex():
    """The unit interval subdivided once: a - m - b."""
    return validate_complex(["a", "m", "b"], [["a", "m"], ["b", "m"]])


def solid_triangle():
    return validate_complex(
        ["1", "2", "3"],
        [["1", "2"], ["1", "3"], ["2", "3"]],
        [["1", "2", "3"]],
    )


def octahedron_boundary():
    """Vertices p1..p3 / m1..m3 are the plus/minus unit vectors; the eight
    faces are the sign patterns, and the missing edges are the antipodes."""
    vertices = ["p1", "p2", "p3", "m1", "m2", "m3"]
    edges = []
    for i in range(1, 4):
        for j in range(i + 1, 4):
            for a in ("p", "m"):
                for b in ("p", "m"):
                    edges.append([f"{a}{i}", f"{b}{j}"])
    triangles = [
        [f"{a}1", f"{b}2", f"{c}3"]
        for a in ("p", "m")
        for b in ("p", "m")
        for c in ("p", "m")
    ]
    return validate_complex(vertices, edges, triangles)


def cycle_complex(n, prefix="v"):
    """The n-cycle graph (no triangles)."""
    names = [f"{prefix}{i}" for i in range(n)]
    edges = [[names[i], names[(i + 1) % n]] for i in range(n)]
    return validate_complex(names, edges)


def _action(K, cycle_lists):
    domain = K.sorted_vertices
    gens = [Permutation.from_cycles(domain, cycles) for cycles in cycle_lists]
    return validate_simplicial_action(K, gens)


def f1_flip():
    """Order-2 flip of the interval about its midpoint."""
    return _action(interval_complex(), [[["a", "b"]]])


def f2_s3():
    """S3 permuting the corners of the solid triangle."""
    return _action(solid_triangle(), [[["1", "2"]], [["1", "2", "3"]]])


def f3_octahedral():
    """The full octahedral symmetry group, order 48: two quarter-turn
    rotations plus the central inversion."""
    return _action(
        octahedron_boundary(),
        [
            [["p1", "p2", "m1", "m2"]],
            [["p2", "p3", "m2", "m3"]],
            [["p1", "m1"], ["p2", "m2"], ["p3", "m3"]],
        ],
    )


def f4_rotation():
    """Z/3 rotating the solid triangle: stabilizes the 2-simplex setwise
    while moving every vertex."""
    return _action(solid_triangle(), [[["1", "2", "3"]]])


def f5_antipodal():
    """The antipodal involution of the octahedron boundary: free, so
    without rotations, but distinct edge orbits share a vertex-set image."""
    return _action(octahedron_boundary(), [[["p1", "m1"], ["p2", "m2"], ["p3", "m3"]]])


def c6_rotation():
    """Z/6 rotating the hexagon: every vertex in one orbit, so the naive
    quotient degenerates; exactly two subdivisions repair it."""
    K = cycle_complex(6)
    return _action(K, [[[f"v{i}" for i in range(6)]]])


ALL = {
    "f1": f1_flip,
    "f2": f2_s3,
    "f3": f3_octahedral,
    "f4": f4_rotation,
    "f5": f5_antipodal,
}


def write_fixtures(directory):
    """Write f1.json .. f5.json; returns the written paths."""
    import json

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, builder in ALL.items():
        path = directory / f"{name}.json"
        obj = action_to_json_obj(builder())
        path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")
        paths.append(path)
    return paths


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    for p in write_fixtures(target):
        print(p)
