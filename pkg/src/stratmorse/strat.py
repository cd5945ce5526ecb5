"""Generalized stratifications, limit digraphs, and finite posets.

A stratification assigns every open simplex of a complex to a stratum.
Stratum S' limits to S when S meets the closure of S'; the resulting
digraph must be acyclic, and reachability defines the partial order
(S below S' means there is a directed path from S' to S).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .complex_core import DeltaComplex, FaceRef


class StratificationError(ValueError):
    """Raised for partial assignments, limit cycles, or bad posets."""


class Stratification:
    """Total assignment of simplices to named strata with acyclic limits."""

    def __init__(self, complex: DeltaComplex, assignment: Mapping[FaceRef, str]):
        self.complex = complex
        self._strata = dict(assignment)
        for ref in complex.all_simplices():
            if ref not in self._strata:
                raise StratificationError(f"no stratum assigned to {ref}")
        for ref in self._strata:
            if not complex.has(ref):
                raise StratificationError(f"assignment for unknown {ref}")
        self._digraph = _limit_edges(complex, self._strata)
        order = _topological_order(self.strata(), self._digraph)
        if order is None:
            raise StratificationError(
                "limit digraph has a directed cycle; not a stratification")
        self._reach = _reachability(self.strata(), self._digraph)

    @classmethod
    def by_name(cls, complex: DeltaComplex,
                named: Mapping[str, str]) -> "Stratification":
        """Assignment keyed by simplex name (names unique across dims)."""
        by_simplex: dict[FaceRef, str] = {}
        lookup = {ref.name: ref for ref in complex.all_simplices()}
        for name, stratum in named.items():
            if name not in lookup:
                raise StratificationError(f"unknown simplex {name!r}")
            by_simplex[lookup[name]] = stratum
        return cls(complex, by_simplex)

    def stratum_of(self, ref: FaceRef) -> str:
        return self._strata[ref]

    def strata(self) -> tuple[str, ...]:
        return tuple(sorted(set(self._strata.values())))

    def simplices_of(self, stratum: str) -> tuple[FaceRef, ...]:
        return tuple(sorted(r for r, s in self._strata.items() if s == stratum))

    def assignment(self) -> dict[FaceRef, str]:
        return dict(self._strata)

    def limit_digraph(self) -> dict[str, frozenset[str]]:
        return {s: frozenset(ts) for s, ts in self._digraph.items()}

    def leq(self, lower: str, upper: str) -> bool:
        """True when `lower` is below `upper`: a directed limit path runs
        from `upper` down to `lower` (every stratum is below itself)."""
        self._check_known(lower)
        self._check_known(upper)
        return lower == upper or lower in self._reach[upper]

    def incomparable(self, a: str, b: str) -> bool:
        return not self.leq(a, b) and not self.leq(b, a)

    def longest_chain(self, among: Iterable[str] | None = None) -> int:
        """Length (element count) of the longest totally ordered chain."""
        pool = set(self.strata()) if among is None else set(among)
        for s in pool:
            self._check_known(s)
        best = 0
        memo: dict[str, int] = {}

        def down(s: str) -> int:
            if s in memo:
                return memo[s]
            below = [t for t in self._reach[s] if t in pool]
            memo[s] = 1 + max((down(t) for t in below), default=0)
            return memo[s]

        for s in pool:
            best = max(best, down(s))
        return best

    def _check_known(self, s: str):
        if s not in set(self._strata.values()):
            raise StratificationError(f"unknown stratum {s!r}")


def _limit_edges(complex: DeltaComplex,
                 strata: Mapping[FaceRef, str]) -> dict[str, set[str]]:
    edges: dict[str, set[str]] = {s: set() for s in strata.values()}
    for ref, upper in strata.items():
        for face in complex.iterated_faces(ref):
            lower = strata[face]
            if lower != upper:
                edges[upper].add(lower)
    return edges


def _topological_order(nodes: Sequence[str],
                       edges: Mapping[str, set[str]]) -> list[str] | None:
    indeg = {n: 0 for n in nodes}
    for src, dsts in edges.items():
        for d in dsts:
            indeg[d] += 1
    ready = sorted(n for n, k in indeg.items() if k == 0)
    out = []
    while ready:
        n = ready.pop()
        out.append(n)
        for d in sorted(edges.get(n, ())):
            indeg[d] -= 1
            if indeg[d] == 0:
                ready.append(d)
    return out if len(out) == len(indeg) else None


def _reachability(nodes: Sequence[str],
                  edges: Mapping[str, set[str]]) -> dict[str, set[str]]:
    reach: dict[str, set[str]] = {}

    def walk(n: str) -> set[str]:
        if n in reach:
            return reach[n]
        reach[n] = set()
        for d in edges.get(n, ()):
            reach[n].add(d)
            reach[n] |= walk(d)
        return reach[n]

    for n in nodes:
        walk(n)
    return reach


def limit_digraph(complex: DeltaComplex,
                  strat: Stratification) -> dict[str, frozenset[str]]:
    """Edges S' -> S whenever S meets the closure of S' (S distinct)."""
    if strat.complex is not complex:
        raise StratificationError("stratification belongs to another complex")
    return strat.limit_digraph()


def leq(strat: Stratification, lower: str, upper: str) -> bool:
    return strat.leq(lower, upper)


def incomparable(strat: Stratification, a: str, b: str) -> bool:
    return strat.incomparable(a, b)


def refine_components(complex: DeltaComplex,
                      strat: Stratification) -> Stratification:
    """Split every stratum into its connected components.

    Two simplices of a stratum are connected when a chain of face/coface
    steps inside the stratum joins them.  Single-component strata keep
    their names, so refining twice is the same as refining once.
    """
    parent: dict[FaceRef, FaceRef] = {}

    def find(x: FaceRef) -> FaceRef:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: FaceRef, b: FaceRef):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for ref in complex.all_simplices():
        parent[ref] = ref
    for ref in complex.all_simplices():
        mine = strat.stratum_of(ref)
        for face in complex.iterated_faces(ref):
            if strat.stratum_of(face) == mine:
                union(ref, face)

    members: dict[str, dict[FaceRef, list[FaceRef]]] = {}
    for ref in complex.all_simplices():
        s = strat.stratum_of(ref)
        members.setdefault(s, {}).setdefault(find(ref), []).append(ref)

    assignment: dict[FaceRef, str] = {}
    for s, comps in members.items():
        if len(comps) == 1:
            for refs in comps.values():
                for r in refs:
                    assignment[r] = s
            continue
        for k, root in enumerate(sorted(comps)):
            name = f"{s}-c{k}"
            for r in comps[root]:
                assignment[r] = name
    return Stratification(complex, assignment)


@dataclass(frozen=True)
class Poset:
    """Finite poset with optional element labels and codimension tags."""

    elements: tuple[str, ...]
    _leq: frozenset[tuple[str, str]]
    labels: Mapping[str, str] = field(default_factory=dict)
    codims: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def from_relations(cls, elements: Iterable[str],
                       relations: Iterable[tuple[str, str]],
                       labels: Mapping[str, str] | None = None,
                       codims: Mapping[str, int] | None = None) -> "Poset":
        """Close (lower, upper) pairs reflexively and transitively; reject
        any closure that fails antisymmetry."""
        elems = tuple(dict.fromkeys(elements))
        known = set(elems)
        adj: dict[str, set[str]] = {e: set() for e in elems}
        for lo, hi in relations:
            if lo not in known or hi not in known:
                raise StratificationError(f"relation on unknown element {lo!r}/{hi!r}")
            adj[lo].add(hi)
        reach = _reachability(elems, adj)
        pairs = {(e, e) for e in elems}
        for lo in elems:
            for hi in reach[lo]:
                if lo != hi and lo in reach.get(hi, ()):
                    raise StratificationError(
                        f"relation cycle through {lo!r} and {hi!r}")
                pairs.add((lo, hi))
        for e, lab in (labels or {}).items():
            if e not in known:
                raise StratificationError(f"label for unknown element {e!r}")
        for e, k in (codims or {}).items():
            if e not in known:
                raise StratificationError(f"codim for unknown element {e!r}")
        return cls(elems, frozenset(pairs), dict(labels or {}), dict(codims or {}))

    def leq(self, lower: str, upper: str) -> bool:
        return (lower, upper) in self._leq

    def lt(self, lower: str, upper: str) -> bool:
        return lower != upper and self.leq(lower, upper)

    def up_set(self, e: str) -> tuple[str, ...]:
        return tuple(x for x in self.elements if self.leq(e, x))

    def elements_of_codim(self, k: int) -> tuple[str, ...]:
        return tuple(e for e in self.elements if self.codims.get(e) == k)

    def __len__(self):
        return len(self.elements)


def count_chains(poset: Poset, length: int, distinct_labels: bool = False) -> int:
    """Number of strictly increasing chains of `length` elements; with the
    flag, only chains whose labels are pairwise distinct."""
    if length < 1:
        raise StratificationError("chain length must be at least 1")
    if distinct_labels:
        missing = [e for e in poset.elements if e not in poset.labels]
        if missing:
            raise StratificationError(
                f"distinct-label counting needs labels on all elements; "
                f"missing on {missing[0]!r}")

    total = 0

    def grow(top: str, used_labels: frozenset[str], remaining: int):
        nonlocal total
        if remaining == 0:
            total += 1
            return
        for nxt in poset.elements:
            if not poset.lt(top, nxt):
                continue
            if distinct_labels:
                lab = poset.labels[nxt]
                if lab in used_labels:
                    continue
                grow(nxt, used_labels | {lab}, remaining - 1)
            else:
                grow(nxt, used_labels, remaining - 1)

    for start in poset.elements:
        lab = poset.labels.get(start, start) if distinct_labels else start
        grow(start, frozenset({lab} if distinct_labels else ()), length - 1)
    return total


@dataclass(frozen=True)
class LabelCheckReport:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self):
        return self.ok


def faces_label_check(poset: Poset, vertex: str) -> LabelCheckReport:
    """Manifold-with-faces consistency at a deepest vertex.

    Every element's set of codimension-1 elements above it must have size
    equal to its codimension, and elements of equal codimension above the
    given vertex must carry pairwise distinct such sets.
    """
    if vertex not in poset.elements:
        raise StratificationError(f"unknown element {vertex!r}")
    untagged = [e for e in poset.elements if e not in poset.codims]
    if untagged:
        raise StratificationError(
            f"missing codimension tag on {untagged[0]!r}")

    codim1 = set(poset.elements_of_codim(1))

    def labels(e: str) -> frozenset[str]:
        return frozenset(c for c in codim1 if poset.leq(e, c))

    failures: list[str] = []
    for e in poset.elements:
        want = poset.codims[e]
        got = labels(e)
        if len(got) != want:
            failures.append(
                f"{e} has codim {want} but touches {len(got)} "
                f"codimension-1 components ({', '.join(sorted(got)) or 'none'})")

    above = poset.up_set(vertex)
    by_codim: dict[int, list[str]] = {}
    for e in above:
        by_codim.setdefault(poset.codims[e], []).append(e)
    for k, group in sorted(by_codim.items()):
        if k == 0:
            continue
        seen: dict[frozenset[str], str] = {}
        for e in sorted(group):
            lab = labels(e)
            if lab in seen:
                failures.append(
                    f"{seen[lab]} and {e} above {vertex} share the "
                    f"codimension-1 set {{{', '.join(sorted(lab))}}}")
            else:
                seen[lab] = e
    return LabelCheckReport(not failures, tuple(failures))
