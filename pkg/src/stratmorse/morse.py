"""Morse-Smale flow graphs and broken-trajectory counting.

A flow graph records critical points with their indices and flow-line
multiplicities between points of adjacent index.  Maximal broken
trajectories (one critical point of every index, top down) are counted two
independent ways: direct enumeration over paths, and the product recursion
summing over next points one index down.  Counts are exact integers and
flow lines carry no signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .strat import Poset, count_chains, faces_label_check

# Supremal volume of a straight 3-simplex in hyperbolic 3-space, used to
# turn a hyperbolic volume into a simplicial-volume bound.
VOL_DELTA_3 = 1.0149416064096536
HYPERBOLIC_DIVISION_TOLERANCE = 1e-9


class FlowGraphError(ValueError):
    """Structural violation: bad index, bad edge, or unknown point."""


@dataclass(frozen=True)
class FlowGraph:
    """Critical points with Morse indices and adjacent-index multiplicities."""

    dim: int
    points: Mapping[str, int]
    edges: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        for name, index in self.points.items():
            if not 0 <= index <= self.dim:
                raise FlowGraphError(
                    f"point {name!r} has index {index} outside 0..{self.dim}")
        for (src, dst), mult in self.edges.items():
            if src not in self.points or dst not in self.points:
                raise FlowGraphError(f"edge {src!r}->{dst!r} on unknown point")
            if self.points[src] != self.points[dst] + 1:
                raise FlowGraphError(
                    f"edge {src!r}->{dst!r} must drop index by exactly 1 "
                    f"({self.points[src]} -> {self.points[dst]})")
            if mult < 0:
                raise FlowGraphError(
                    f"edge {src!r}->{dst!r} has negative multiplicity")

    def index_of(self, name: str) -> int:
        if name not in self.points:
            raise FlowGraphError(f"unknown critical point {name!r}")
        return self.points[name]

    def points_of_index(self, index: int) -> tuple[str, ...]:
        return tuple(sorted(n for n, i in self.points.items() if i == index))

    def multiplicity(self, src: str, dst: str) -> int:
        return self.edges.get((src, dst), 0)

    def successors(self, src: str) -> tuple[tuple[str, int], ...]:
        return tuple(sorted((dst, m) for (s, dst), m in self.edges.items()
                            if s == src and m > 0))

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * len(self.points_of_index(i))
                   for i in range(self.dim + 1))


@dataclass(frozen=True)
class FlowValidationReport:
    d_squared_ok: bool
    d_squared_witness: str | None
    euler_ok: bool | None
    euler_value: int

    @property
    def ok(self) -> bool:
        return self.d_squared_ok and self.euler_ok is not False


def validate_flow(fg: FlowGraph, euler: int | None = None) -> FlowValidationReport:
    """Necessary realizability checks: the mod-2 Morse differential must
    square to zero, and the signed point count must match a supplied Euler
    characteristic if one is given."""
    witness = None
    ok = True
    for p, ip in sorted(fg.points.items()):
        if ip < 2:
            continue
        for q in fg.points_of_index(ip - 2):
            total = sum(fg.multiplicity(p, r) * fg.multiplicity(r, q)
                        for r in fg.points_of_index(ip - 1))
            if total % 2 != 0:
                ok = False
                witness = (f"d2(d2({p})) hits {q} with odd count {total}")
                break
        if not ok:
            break
    chi = fg.euler_characteristic()
    euler_ok = None if euler is None else (chi == euler)
    return FlowValidationReport(ok, witness, euler_ok, chi)


@dataclass(frozen=True)
class TrajectoryCounts:
    per_point: Mapping[str, int]
    total: int


def count_trajectories(fg: FlowGraph) -> TrajectoryCounts:
    """Direct enumeration of maximal broken trajectories.

    Walks every descending path from each top-index point through one
    critical point of every index, multiplying flow-line multiplicities.
    """
    def walk(point: str) -> int:
        if fg.index_of(point) == 0:
            return 1
        total = 0
        for nxt, mult in fg.successors(point):
            total += mult * walk(nxt)
        return total

    per_point = {p: walk(p) for p in fg.points_of_index(fg.dim)}
    return TrajectoryCounts(per_point, sum(per_point.values()))


def count_trajectories_recursive(fg: FlowGraph) -> TrajectoryCounts:
    """Memoized recursion: N(p) = sum over r one index down of m(p,r)*N(r),
    with N = 1 at index 0.  Independent cross-check of the direct count."""
    memo: dict[str, int] = {}

    def n_of(point: str) -> int:
        if point in memo:
            return memo[point]
        index = fg.index_of(point)
        if index == 0:
            memo[point] = 1
            return 1
        value = sum(fg.multiplicity(point, r) * n_of(r)
                    for r in fg.points_of_index(index - 1))
        memo[point] = value
        return value

    per_point = {p: n_of(p) for p in fg.points_of_index(fg.dim)}
    return TrajectoryCounts(per_point, sum(per_point.values()))


@dataclass(frozen=True)
class DescendingDiskPosets:
    """Stratification poset of one compactified descending disk.

    Elements are the disk strata; each label names the critical point whose
    descending cell the stratum projects onto, and codims count how many
    times trajectories have broken (open disk at codimension 0).
    """

    point: str
    poset: Poset

    def __post_init__(self):
        missing = [e for e in self.poset.elements if e not in self.poset.labels]
        if missing:
            raise FlowGraphError(
                f"disk poset element {missing[0]!r} lacks a critical-point label")
        untagged = [e for e in self.poset.elements if e not in self.poset.codims]
        if untagged:
            raise FlowGraphError(
                f"disk poset element {untagged[0]!r} lacks a codim tag")


@dataclass(frozen=True)
class DiskCountReport:
    point: str
    index: int
    chain_count: int
    label_distinct_count: int
    trajectory_count: int
    label_checks: Mapping[str, bool]

    @property
    def ok(self) -> bool:
        return (self.label_distinct_count == self.trajectory_count
                and all(self.label_checks.values()))


def verify_disk_trajectory_count(posets: DescendingDiskPosets, fg: FlowGraph,
                                 point: str) -> DiskCountReport:
    """Check that label-distinct stratum chains count broken trajectories.

    Totally ordered chains of index+1 strata whose labels are pairwise
    distinct must equal the number of maximal broken trajectories from the
    point; the manifold-with-faces label check runs at every deepest
    (codimension index) element.
    """
    if posets.point != point:
        raise FlowGraphError(
            f"poset data is for {posets.point!r}, not {point!r}")
    index = fg.index_of(point)
    for element, label in posets.poset.labels.items():
        if label not in fg.points:
            raise FlowGraphError(
                f"poset element {element!r} labeled with unknown "
                f"critical point {label!r}")

    chains = count_chains(posets.poset, index + 1)
    distinct = count_chains(posets.poset, index + 1, distinct_labels=True)
    trajectories = count_trajectories_from(fg, point)

    checks = {}
    for vertex in posets.poset.elements_of_codim(index):
        checks[vertex] = bool(faces_label_check(posets.poset, vertex))
    return DiskCountReport(point, index, chains, distinct, trajectories, checks)


def count_trajectories_from(fg: FlowGraph, point: str) -> int:
    """Maximal broken trajectories starting at one critical point."""
    index = fg.index_of(point)
    if index == 0:
        return 1
    return sum(fg.multiplicity(point, r) * count_trajectories_from(fg, r)
               for r in fg.points_of_index(index - 1))


SIMPLICIAL_VOLUME_BY_GENUS_NOTE = "sphere and torus 0; genus g >= 2 gives 4g-4"


def surface_simplicial_volume(genus: int) -> Fraction:
    if genus < 0:
        raise FlowGraphError("genus must be nonnegative")
    if genus <= 1:
        return Fraction(0)
    return Fraction(4 * genus - 4)


@dataclass(frozen=True)
class BoundReport:
    total: int
    bound: Fraction | float
    satisfied: bool
    description: str

    @property
    def verdict(self) -> str:
        return "SATISFIED" if self.satisfied else "VIOLATED"


def check_bound(fg: FlowGraph, *, simplicial_volume: Fraction | None = None,
                surface_genus: int | None = None,
                hyperbolic_volume: float | None = None,
                dim: int | None = None) -> BoundReport:
    """Compare the total trajectory count against a simplicial-volume value.

    VIOLATED means the graph cannot arise from a genuine Morse-Smale flow
    on that manifold.  Exactly one volume source must be given; hyperbolic
    volumes are supported in dimension 3 only, dividing by the supremal
    straight-simplex volume with a 1e-9 tolerance.
    """
    given = [v is not None
             for v in (simplicial_volume, surface_genus, hyperbolic_volume)]
    if sum(given) != 1:
        raise FlowGraphError(
            "give exactly one of simplicial_volume, surface_genus, "
            "hyperbolic_volume")

    direct = count_trajectories(fg)
    cross = count_trajectories_recursive(fg)
    if direct.total != cross.total:
        raise FlowGraphError("internal error: trajectory counts disagree")
    total = direct.total

    if simplicial_volume is not None:
        bound = Fraction(simplicial_volume)
        ok = total >= bound
        desc = f"simplicial volume {bound}"
    elif surface_genus is not None:
        bound = surface_simplicial_volume(surface_genus)
        ok = total >= bound
        desc = f"genus {surface_genus} surface (volume {bound})"
    else:
        if dim != 3:
            raise FlowGraphError(
                "hyperbolic volume input is supported for dimension 3 only; "
                "supply an explicit simplicial volume otherwise")
        bound = hyperbolic_volume / VOL_DELTA_3
        ok = total >= bound - HYPERBOLIC_DIVISION_TOLERANCE
        desc = (f"hyperbolic volume {hyperbolic_volume} over "
                f"{VOL_DELTA_3} (dimension 3)")
    return BoundReport(total, bound, ok, desc)
