"""Bundled desk-scale instances: flow graphs, disks, and their posets.

These are the worked examples the acceptance suite replays: the tilted
torus (eight maximal broken trajectories), the two-maxima sphere with its
compactified disk, the 24-triangle stratified disk carrying essential
counts 4 and 2, and small deliberately broken inputs.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources
from pathlib import Path

from .complex_core import Chain, DeltaComplex, build_complex
from .morse import DescendingDiskPosets, FlowGraph
from .strat import Poset, Stratification


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled fixture text file."""
    path = Path(str(resources.files("stratmorse") / "fixtures" / name))
    if not path.exists():
        raise FileNotFoundError(f"no bundled fixture {name!r}")
    return path


def tilted_torus_flow() -> FlowGraph:
    """Height function of a slightly tilted torus: every multiplicity 2."""
    return FlowGraph(
        dim=2,
        points={"p": 2, "b1": 1, "b2": 1, "c": 0},
        edges={("p", "b1"): 2, ("p", "b2"): 2, ("b1", "c"): 2, ("b2", "c"): 2},
    )


def sphere_two_maxima_flow() -> FlowGraph:
    """Sphere with two maxima p and a, one saddle b, one minimum c."""
    return FlowGraph(
        dim=2,
        points={"p": 2, "a": 2, "b": 1, "c": 0},
        edges={("p", "b"): 1, ("a", "b"): 1, ("b", "c"): 2},
    )


def height_sphere_flow() -> FlowGraph:
    """Round sphere: one maximum, one minimum, no saddles."""
    return FlowGraph(dim=2, points={"top": 2, "bot": 0}, edges={})


def genus2_deficient_flow() -> FlowGraph:
    """Synthetic graph with only two maximal trajectories; too few for a
    genus-2 surface, so the bound check must report VIOLATED."""
    return FlowGraph(
        dim=2,
        points={"p": 2, "b": 1, "c": 0},
        edges={("p", "b"): 1, ("b", "c"): 2},
    )


def corrupted_flow() -> FlowGraph:
    """Odd multiplicities making the mod-2 differential square nonzero."""
    return FlowGraph(
        dim=2,
        points={"p": 2, "b": 1, "c": 0},
        edges={("p", "b"): 1, ("b", "c"): 1},
    )


def torus_complex() -> DeltaComplex:
    """One-vertex torus: edges a, b, c and two triangles."""
    return build_complex([
        ("v", 0, ()),
        ("a", 1, ("v", "v")),
        ("b", 1, ("v", "v")),
        ("c", 1, ("v", "v")),
        ("U", 2, ("a", "c", "b")),
        ("L", 2, ("b", "c", "a")),
    ])


def torus_fundamental_cycle(complex: DeltaComplex) -> Chain:
    return Chain.from_native(complex, 2, {"U": 1, "L": -1})


def torus_skeleton_stratification(complex: DeltaComplex) -> Stratification:
    return Stratification.by_name(complex, {
        "v": "S0", "a": "S1", "b": "S1", "c": "S1", "U": "S2", "L": "S2"})


def sphere_cw_complex() -> tuple[DeltaComplex, Stratification]:
    """Two-maxima sphere as a complex stratified by its descending cells.

    The 1-skeleton is a two-edge circle through the saddle vertex xb and
    the minimum vertex xc; each maximum contributes a two-triangle disk.
    """
    complex = build_complex([
        ("xc", 0, ()), ("xb", 0, ()), ("xp", 0, ()), ("xa", 0, ()),
        ("e1", 1, ("xb", "xc")),
        ("e2", 1, ("xb", "xc")),
        ("gp1", 1, ("xp", "xc")),
        ("gp2", 1, ("xp", "xb")),
        ("ga1", 1, ("xa", "xc")),
        ("ga2", 1, ("xa", "xb")),
        ("P1", 2, ("gp2", "gp1", "e1")),
        ("P2", 2, ("gp2", "gp1", "e2")),
        ("A1", 2, ("ga2", "ga1", "e1")),
        ("A2", 2, ("ga2", "ga1", "e2")),
    ])
    strat = Stratification.by_name(complex, {
        "xc": "S-c",
        "xb": "S-b", "e1": "S-b", "e2": "S-b",
        "xp": "S-p", "gp1": "S-p", "gp2": "S-p", "P1": "S-p", "P2": "S-p",
        "xa": "S-a", "ga1": "S-a", "ga2": "S-a", "A1": "S-a", "A2": "S-a",
    })
    return complex, strat


def sphere_fundamental_cycle(complex: DeltaComplex) -> Chain:
    """Both disks, oriented so the boundaries over the circle cancel."""
    return Chain.from_native(complex, 2, {"P1": 1, "P2": -1, "A1": -1, "A2": 1})


def sphere_one_skeleton() -> tuple[str, ...]:
    return ("xc", "xb", "e1", "e2")


# -- the 24-triangle stratified disk --------------------------------------

_DISK_COORDS = {
    "ctr": (0, 0),
    "mn": (0, 2), "me": (2, 0), "ms": (0, -2), "mw": (-2, 0),
    "sqne": (2, 2), "sqnw": (-2, 2), "sqse": (2, -2), "sqsw": (-2, -2),
    "n": (0, 5), "e": (5, 0), "s": (0, -5), "w": (-5, 0),
    "ne": (4, 4), "nw": (-4, 4), "se": (4, -4), "sw": (-4, -4),
}

_DISK_OCTANTS = [
    ("e", "ne", "me", "sqne"),
    ("n", "ne", "mn", "sqne"),
    ("n", "nw", "mn", "sqnw"),
    ("w", "nw", "mw", "sqnw"),
    ("w", "sw", "mw", "sqsw"),
    ("s", "sw", "ms", "sqsw"),
    ("s", "se", "ms", "sqse"),
    ("e", "se", "me", "sqse"),
]

_DISK_VERTEX_ORDER = list(_DISK_COORDS)

_RIGHT_ARC = ("ne", "e", "se")
_LEFT_ARC = ("nw", "w", "sw")
_ARC_EDGES_RIGHT = [("n", "ne"), ("e", "ne"), ("e", "se"), ("s", "se")]
_ARC_EDGES_LEFT = [("n", "nw"), ("nw", "w"), ("sw", "w"), ("s", "sw")]


def _disk_triangles() -> list[tuple[str, str, str]]:
    tris = []
    for r1, r2, mid, corner in _DISK_OCTANTS:
        tris.append((("ctr"), mid, corner))
        tris.append((mid, r1, corner))
        tris.append((r1, r2, corner))
    return tris


def _sorted_by_order(names: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(sorted(names, key=_DISK_VERTEX_ORDER.index))


def _edge_name(u: str, v: str) -> str:
    u, v = _sorted_by_order((u, v))
    return f"E-{u}-{v}"


def _tri_name(tri: tuple[str, str, str]) -> str:
    a, b, c = _sorted_by_order(tri)
    return f"T-{a}-{b}-{c}"


def _ccw_sign(tri: tuple[str, str, str]) -> int:
    (xa, ya), (xb, yb), (xc, yc) = (_DISK_COORDS[v] for v in tri)
    cross = (xb - xa) * (yc - ya) - (yb - ya) * (xc - xa)
    if cross == 0:
        raise AssertionError(f"degenerate fixture triangle {tri}")
    return 1 if cross > 0 else -1


def disk_complex() -> DeltaComplex:
    """Triangulated disk: square core, ring, and eight boundary arcs."""
    entries = [(name, 0, ()) for name in _DISK_VERTEX_ORDER]
    edges: set[tuple[str, str]] = set()
    for tri in _disk_triangles():
        a, b, c = _sorted_by_order(tri)
        edges.update({(a, b), (a, c), (b, c)})
    for u, v in sorted(edges, key=lambda p: (_DISK_VERTEX_ORDER.index(p[0]),
                                             _DISK_VERTEX_ORDER.index(p[1]))):
        entries.append((_edge_name(u, v), 1, (v, u)))
    for tri in _disk_triangles():
        a, b, c = _sorted_by_order(tri)
        entries.append((_tri_name(tri), 2,
                        (_edge_name(b, c), _edge_name(a, c), _edge_name(a, b))))
    return build_complex(entries)


def disk_chain(complex: DeltaComplex) -> Chain:
    """All 24 triangles with orientation-compatible unit coefficients."""
    coeffs = {}
    for tri in _disk_triangles():
        coeffs[_tri_name(tri)] = Fraction(_ccw_sign(_sorted_by_order(tri)))
    return Chain.from_native(complex, 2, coeffs)


def _disk_assignment(two_cells_split: bool) -> dict[str, str]:
    assignment: dict[str, str] = {}
    right_edges = {_edge_name(u, v) for u, v in _ARC_EDGES_RIGHT}
    left_edges = {_edge_name(u, v) for u, v in _ARC_EDGES_LEFT}
    for name in _DISK_VERTEX_ORDER:
        if name == "n":
            assignment[name] = "NPT" if two_cells_split else "LCL"
        elif name == "s":
            assignment[name] = "SPT" if two_cells_split else "LCL"
        elif name in _RIGHT_ARC:
            assignment[name] = "RARC"
        elif name in _LEFT_ARC:
            assignment[name] = "LARC" if two_cells_split else "LCL"
        else:
            assignment[name] = "INT"
    edges: set[str] = set()
    for tri in _disk_triangles():
        a, b, c = _sorted_by_order(tri)
        edges.update({_edge_name(a, b), _edge_name(a, c), _edge_name(b, c)})
        assignment[_tri_name(tri)] = "INT"
    for name in edges:
        if name in right_edges:
            assignment[name] = "RARC"
        elif name in left_edges:
            assignment[name] = "LARC" if two_cells_split else "LCL"
        else:
            assignment[name] = "INT"
    return assignment


def disk_stratification_corners(complex: DeltaComplex) -> Stratification:
    """Five strata: interior, two open arcs, two corner points."""
    return Stratification.by_name(complex, _disk_assignment(True))


def disk_stratification_cells(complex: DeltaComplex) -> Stratification:
    """Three strata: interior, right open arc, and the closed left cell
    swallowing both corner points."""
    return Stratification.by_name(complex, _disk_assignment(False))


def disk_strata_poset() -> Poset:
    """Corner-stratification poset of the disk with cell labels."""
    return Poset.from_relations(
        elements=["INT", "RARC", "LARC", "NPT", "SPT"],
        relations=[("NPT", "RARC"), ("NPT", "LARC"),
                   ("SPT", "RARC"), ("SPT", "LARC"),
                   ("RARC", "INT"), ("LARC", "INT")],
        labels={"INT": "p", "RARC": "b", "LARC": "c", "NPT": "c", "SPT": "c"},
        codims={"INT": 0, "RARC": 1, "LARC": 1, "NPT": 2, "SPT": 2},
    )


def sphere_disk_posets() -> DescendingDiskPosets:
    return DescendingDiskPosets("p", disk_strata_poset())


def tilted_torus_disk_posets() -> DescendingDiskPosets:
    """Compactified disk of the torus maximum: the boundary circle carries
    four saddle arcs alternating with four direct arcs, and eight corners.
    """
    arcs = ["B1A", "C1", "B1B", "C2", "B2A", "C3", "B2B", "C4"]
    labels = {"INT": "p", "B1A": "b1", "B1B": "b1", "B2A": "b2", "B2B": "b2",
              "C1": "c", "C2": "c", "C3": "c", "C4": "c"}
    elements = ["INT"] + arcs
    codims = {"INT": 0}
    relations = []
    for arc in arcs:
        relations.append((arc, "INT"))
        codims[arc] = 1
    for k in range(8):
        corner = f"K{k}"
        elements.append(corner)
        labels[corner] = "c"
        codims[corner] = 2
        relations.append((corner, arcs[k]))
        relations.append((corner, arcs[(k + 1) % 8]))
    poset = Poset.from_relations(elements, relations, labels, codims)
    return DescendingDiskPosets("p", poset)
