"""The stratified corner model: Freudenthal cubes and the chain bijection.

The unit cube stands in for a neighborhood of the corner of [0,inf)^n.  Its
faces are strictly monotone chains of 0/1 vectors; the stratum of an open
face is the set of coordinates vanishing identically on it, which is read
off the face's top vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .complex_core import DeltaComplex, FaceRef, barycentric_subdivide
from .strat import Poset, Stratification, count_chains

MAX_CORNER_DIM = 5


class CornerRangeError(ValueError):
    """Dimension outside the supported enumeration budget."""


def _vec_name(bits: tuple[int, ...]) -> str:
    return "v" + "".join(map(str, bits))


def _chain_name(vectors: tuple[tuple[int, ...], ...]) -> str:
    return "f-" + "-".join("".join(map(str, v)) for v in vectors)


def _zero_set(bits: tuple[int, ...]) -> frozenset[int]:
    return frozenset(i + 1 for i, b in enumerate(bits) if b == 0)


def stratum_name(zeros: frozenset[int]) -> str:
    return "Z" + "".join(str(i) for i in sorted(zeros))


@dataclass(frozen=True)
class CornerComplex:
    """Freudenthal triangulation of [0,1]^n with the vanishing stratification."""

    n: int
    complex: DeltaComplex
    stratification: Stratification

    def top_simplices(self) -> tuple[FaceRef, ...]:
        return self.complex.simplices(self.n)

    def strata_poset(self) -> Poset:
        """Strata ordered with deeper (larger vanishing set) below."""
        strata = self.stratification.strata()
        zeros = {s: frozenset(int(ch) for ch in s[1:]) for s in strata}
        relations = [(a, b) for a in strata for b in strata
                     if a != b and zeros[a] > zeros[b]]
        codims = {s: len(zeros[s]) for s in strata}
        return Poset.from_relations(strata, relations, codims=codims)


def build_corner(n: int) -> CornerComplex:
    """Order-simplex decomposition of the cube into n! top simplices."""
    if not 1 <= n <= MAX_CORNER_DIM:
        raise CornerRangeError(
            f"corner dimension must be between 1 and {MAX_CORNER_DIM}")

    chains: set[tuple[tuple[int, ...], ...]] = set()
    zero = tuple([0] * n)
    for perm in permutations(range(n)):
        path = [zero]
        for coord in perm:
            nxt = list(path[-1])
            nxt[coord] = 1
            path.append(tuple(nxt))
        full = tuple(path)
        m = len(full)
        for mask in range(1, 1 << m):
            sub = tuple(full[i] for i in range(m) if mask >> i & 1)
            chains.add(sub)

    entries = []
    assignment: dict[str, str] = {}
    for chain in sorted(chains, key=lambda c: (len(c), c)):
        d = len(chain) - 1
        name = _vec_name(chain[0]) if d == 0 else _chain_name(chain)
        if d == 0:
            entries.append((name, 0, ()))
        else:
            faces = []
            for i in range(d + 1):
                sub = chain[:i] + chain[i + 1:]
                faces.append(_vec_name(sub[0]) if d == 1 else _chain_name(sub))
            entries.append((name, d, tuple(faces)))
        assignment[name] = stratum_name(_zero_set(chain[-1]))

    complex = DeltaComplex.from_simplices(entries)
    strat = Stratification.by_name(complex, assignment)
    return CornerComplex(n, complex, strat)


@dataclass(frozen=True)
class CornerBijectionReport:
    """Essential top simplices of the subdivided corner vs stratum chains."""

    n: int
    essential_count: int
    chain_count: int
    bijection_ok: bool
    essential_flags: tuple[tuple[str, ...], ...]

    @property
    def ok(self) -> bool:
        return self.essential_count == self.chain_count and self.bijection_ok


def verify_corner_bijection(n: int) -> CornerBijectionReport:
    """Subdivide once and match essential n-simplices with totally ordered
    chains of n+1 strata, checking the vertex-strata map is a bijection."""
    corner = build_corner(n)
    K = corner.complex
    strat = corner.stratification
    sub = barycentric_subdivide(K)

    essential: list[tuple[FaceRef, tuple[str, ...]]] = []
    for top in sub.complex.simplices(n):
        flag = sub.flag_of[top]
        strata_along = tuple(
            strat.stratum_of(K.resolve(flag.carrier, slot))
            for slot in flag.slots)
        if len(set(strata_along)) == n + 1:
            essential.append((top, strata_along))

    poset = corner.strata_poset()
    expected = count_chains(poset, n + 1)

    # Injectivity and surjectivity of flag -> strata list, by brute force.
    seen: dict[tuple[str, ...], FaceRef] = {}
    injective = True
    for top, strata_along in essential:
        if strata_along in seen:
            injective = False
            break
        seen[strata_along] = top
    all_chains = _enumerate_chains(poset, n + 1)
    surjective = set(seen) == {tuple(reversed(c)) for c in all_chains}

    return CornerBijectionReport(
        n=n,
        essential_count=len(essential),
        chain_count=expected,
        bijection_ok=injective and surjective,
        essential_flags=tuple(sorted(s for _, s in essential)),
    )


def _enumerate_chains(poset: Poset, length: int) -> list[tuple[str, ...]]:
    out: list[tuple[str, ...]] = []

    def grow(chain: tuple[str, ...]):
        if len(chain) == length:
            out.append(chain)
            return
        for nxt in poset.elements:
            if poset.lt(chain[-1], nxt):
                grow(chain + (nxt,))

    for start in poset.elements:
        grow((start,))
    return out
