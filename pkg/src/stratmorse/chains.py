"""Cycle conditions, essential simplices, and combinatorial localization.

The four admissibility conditions (cellular, order, internality, loop) are
checked against a stratification; essential simplices are the ones whose
vertices land in pairwise distinct strata, and the essential norm sums the
absolute coefficients of exactly those.  `localize` rebuilds a relative
cycle into an honest cycle without touching its essential part, using the
subdivision operator and its homotopy on the subcomplex side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .complex_core import (
    Chain,
    ComplexError,
    DeltaComplex,
    FaceRef,
    FormalSimplex,
    boundary,
    embed,
    make_simplex,
    subdivide_chain,
    subdivision_homotopy,
)
from .strat import Stratification


class ConditionError(ValueError):
    """A chain failed the admissibility conditions; carries the report."""

    def __init__(self, report: "ConditionReport"):
        super().__init__(report.summary())
        self.report = report


class RelativeClassError(ValueError):
    """The relative-class hypothesis failed: no extension/certificate exists."""


@dataclass(frozen=True)
class PartialColoring:
    """Partial map from sigma-complex vertices (FaceRefs) to color names."""

    colors: Mapping[FaceRef, str]

    @classmethod
    def from_stratification(cls, strat: Stratification) -> "PartialColoring":
        return cls({ref: strat.stratum_of(ref)
                    for ref in strat.complex.all_simplices()})

    def color_of(self, vertex: FaceRef) -> str | None:
        return self.colors.get(vertex)


@dataclass(frozen=True)
class SigmaComplex:
    """Delta-complex glued from a cycle's simplices along equal faces.

    `simplex_for` maps each chain simplex (and each of its iterated faces)
    to the corresponding simplex of the glued complex; `chain_simplex_for`
    inverts it on top simplices.  `cycle` carries the coefficients over to
    the glued complex, and `self_loops` lists the 1-simplices whose two
    endpoints were identified.
    """

    complex: DeltaComplex
    simplex_for: Mapping[FormalSimplex, FaceRef]
    chain_simplex_for: Mapping[FaceRef, FormalSimplex]
    cycle: Mapping[FaceRef, Fraction]
    self_loops: tuple[FaceRef, ...]

    def loop_is_degenerate(self, loop: FaceRef) -> bool:
        """Single-point image: both vertex slots are the same barycenter."""
        s = self.chain_simplex_for[loop]
        return s.slots[0] == s.slots[1]


def _iterated_formal_faces(K: DeltaComplex, top: FormalSimplex
                           ) -> set[FormalSimplex]:
    out = {top}
    frontier = [top]
    while frontier:
        s = frontier.pop()
        if s.dim == 0:
            continue
        for i in range(s.dim + 1):
            face = make_simplex(K, s.carrier, s.slots[:i] + s.slots[i + 1:])
            if face not in out:
                out.add(face)
                frontier.append(face)
    return out


def sigma_construction(chain: Chain,
                       subcomplex: Iterable[FaceRef] | None = None,
                       allow_boundary: bool = False) -> SigmaComplex:
    """Glue one abstract simplex per chain term, identifying equal faces.

    The chain must be a cycle, unless `subcomplex` designates where
    uncancelled boundary may rest (a relative cycle) or `allow_boundary`
    waives the check entirely.
    """
    K = chain.complex
    if chain.dim >= 1 and not allow_boundary:
        excess = boundary(chain)
        if not excess.is_zero():
            if subcomplex is None:
                bad = excess.support()[0]
                raise ConditionError(ConditionReport(
                    cycle_ok=False,
                    witnesses={"cycle": f"face {bad!r} has uncancelled "
                                        f"coefficient {excess.coefficient(bad)}"}))
            allowed = set(subcomplex)
            for s in excess.support():
                if s.carrier not in allowed:
                    raise ConditionError(ConditionReport(
                        cycle_ok=False,
                        witnesses={"cycle": f"uncancelled face {s!r} lies "
                                            f"outside the subcomplex"}))

    collected: set[FormalSimplex] = set()
    for s in chain.support():
        collected |= _iterated_formal_faces(K, s)

    by_dim: dict[int, list[FormalSimplex]] = {}
    for s in sorted(collected):
        by_dim.setdefault(s.dim, []).append(s)
    names: dict[FormalSimplex, str] = {}
    for d in sorted(by_dim):
        for k, s in enumerate(by_dim[d]):
            names[s] = f"sg{d}-{k}"

    entries = []
    for d in sorted(by_dim):
        for s in by_dim[d]:
            if d == 0:
                entries.append((names[s], 0, ()))
            else:
                faces = [make_simplex(K, s.carrier, s.slots[:i] + s.slots[i + 1:])
                         for i in range(d + 1)]
                entries.append((names[s], d, tuple(names[f] for f in faces)))
    sigma = DeltaComplex.from_simplices(entries)

    simplex_for = {s: FaceRef(s.dim, n) for s, n in names.items()}
    chain_simplex_for = {ref: s for s, ref in simplex_for.items()}
    cycle = {simplex_for[s]: c for s, c in chain.items()}
    loops = tuple(sorted(
        ref for ref in sigma.simplices(1)
        if sigma.faces(ref)[0] == sigma.faces(ref)[1]))
    return SigmaComplex(sigma, simplex_for, chain_simplex_for, cycle, loops)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the four admissibility checks with first witnesses."""

    cellular_ok: bool = True
    order_ok: bool = True
    internality_ok: bool = True
    loop_ok: bool = True
    cycle_ok: bool = True
    witnesses: Mapping[str, str] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.witnesses is None:
            object.__setattr__(self, "witnesses", {})

    @property
    def ok(self) -> bool:
        return (self.cellular_ok and self.order_ok and self.internality_ok
                and self.loop_ok and self.cycle_ok)

    def summary(self) -> str:
        if self.ok:
            return "all conditions pass"
        bad = [f"{name}: {msg}" for name, msg in sorted(self.witnesses.items())]
        return "; ".join(bad)


def _face_tuples(n_slots: int) -> list[tuple[int, ...]]:
    out = []
    for mask in range(1, 1 << n_slots):
        out.append(tuple(i for i in range(n_slots) if mask >> i & 1))
    out.sort(key=lambda t: (len(t), t))
    return out


def _interior_stratum(K: DeltaComplex, strat: Stratification,
                      s: FormalSimplex, slots: Sequence[int]) -> str:
    span: set[int] = set()
    for i in slots:
        span.update(s.slots[i])
    return strat.stratum_of(K.resolve(s.carrier, span))


def check_conditions(chain: Chain, strat: Stratification,
                     subcomplex: Iterable[FaceRef] | None = None,
                     allow_boundary: bool = False) -> ConditionReport:
    """Check the cellular, order, internality, and loop conditions.

    Cellular holds by construction in this model (every face interior lies
    in the open cell it spans, which the stratification assigns somewhere);
    it is still evaluated so a report always carries all four verdicts.
    """
    K = chain.complex
    if strat.complex is not K:
        raise ComplexError("stratification belongs to a different complex")
    witnesses: dict[str, str] = {}
    order_ok = True
    internality_ok = True

    for s in chain.support():
        n = s.dim + 1
        strata_met: dict[tuple[int, ...], str] = {}
        for face in _face_tuples(n):
            strata_met[face] = _interior_stratum(K, strat, s, face)

        if order_ok:
            seen = sorted(set(strata_met.values()))
            for i in range(len(seen)):
                for j in range(i + 1, len(seen)):
                    if strat.incomparable(seen[i], seen[j]):
                        order_ok = False
                        witnesses["order"] = (
                            f"simplex {s!r} meets incomparable strata "
                            f"{seen[i]!r} and {seen[j]!r}")
                        break
                if not order_ok:
                    break

        if internality_ok:
            for face, interior in strata_met.items():
                if len(face) < 2:
                    continue
                proper = set()
                for idx in _face_tuples(len(face)):
                    if len(idx) < len(face):
                        proper.add(strata_met[tuple(face[i] for i in idx)])
                if len(proper) == 1:
                    (only,) = proper
                    if only != interior:
                        internality_ok = False
                        witnesses["internality"] = (
                            f"in {s!r} the boundary of face {face} lies in "
                            f"{only!r} but its interior lies in {interior!r}")
                        break

    loop_ok = True
    cycle_ok = True
    try:
        sigma = sigma_construction(chain, subcomplex, allow_boundary)
    except ConditionError as err:
        cycle_ok = False
        witnesses.update(err.report.witnesses)
        sigma = sigma_construction(chain, allow_boundary=True)
    for loop in sigma.self_loops:
        if not sigma.loop_is_degenerate(loop):
            loop_ok = False
            s = sigma.chain_simplex_for[loop]
            witnesses["loop"] = (
                f"self-loop edge {s!r} has a non-degenerate image")
            break

    return ConditionReport(
        cellular_ok=True,
        order_ok=order_ok,
        internality_ok=internality_ok,
        loop_ok=loop_ok,
        cycle_ok=cycle_ok,
        witnesses=witnesses,
    )


def classify_essential(chain: Chain, coloring: PartialColoring
                       ) -> dict[FormalSimplex, bool]:
    """Essential/non-essential per simplex under a partial coloring.

    Non-essential when two distinct vertices share a color, or when some
    edge is degenerate (both endpoints the same barycenter, so its image
    is a single point).  Colorless vertices never match any color.
    """
    K = chain.complex
    out: dict[FormalSimplex, bool] = {}
    for s in chain.support():
        verts = s.vertices(K)
        essential = True
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                if s.slots[i] == s.slots[j]:
                    essential = False
                    break
                ci = coloring.color_of(verts[i])
                cj = coloring.color_of(verts[j])
                if ci is not None and ci == cj and verts[i] != verts[j]:
                    essential = False
                    break
            if not essential:
                break
        out[s] = essential
    return out


def essential_part(chain: Chain, strat: Stratification) -> Chain:
    """Subchain of simplices whose vertex strata are pairwise distinct."""
    coloring = PartialColoring.from_stratification(strat)
    flags = classify_essential(chain, coloring)
    return Chain(chain.complex, chain.dim,
                 {s: c for s, c in chain.items() if flags[s]})


def essential_norm(chain: Chain, strat: Stratification,
                   subcomplex: Iterable[FaceRef] | None = None,
                   allow_boundary: bool = False) -> Fraction:
    """Sum of absolute coefficients over essential simplices, exact.

    The chain must pass all four conditions for the stratification first;
    a failure raises ConditionError with the report attached.
    """
    report = check_conditions(chain, strat, subcomplex, allow_boundary)
    if not report.ok:
        raise ConditionError(report)
    return essential_part(chain, strat).one_norm()


def subcomplex_closure(complex: DeltaComplex,
                       refs: Iterable[FaceRef]) -> frozenset[FaceRef]:
    """Close a set of simplices under iterated faces."""
    out: set[FaceRef] = set()
    for ref in refs:
        if not complex.has(ref):
            raise ComplexError(f"{ref} not in complex")
        out.add(ref)
        out |= complex.iterated_faces(ref)
    return frozenset(out)


def _chain_supported_on(chain: Chain, allowed: frozenset[FaceRef]) -> bool:
    return all(s.carrier in allowed for s in chain.support())


def _solve_exact(columns: Sequence[dict], rhs: dict) -> list[Fraction] | None:
    """Solve sum_j x_j * columns[j] == rhs over the rationals.

    Columns and rhs are sparse row->Fraction dicts.  Returns one solution
    with free variables pinned to zero, or None when inconsistent.
    """
    rows = sorted(set().union(rhs, *columns)) if columns or rhs else []
    row_index = {r: i for i, r in enumerate(rows)}
    m, n = len(rows), len(columns)
    mat = [[Fraction(0)] * (n + 1) for _ in range(m)]
    for j, col in enumerate(columns):
        for r, v in col.items():
            mat[row_index[r]][j] = v
    for r, v in rhs.items():
        mat[row_index[r]][n] = v

    pivot_of_col: dict[int, int] = {}
    rank = 0
    for j in range(n):
        pivot = next((i for i in range(rank, m) if mat[i][j] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = Fraction(1) / mat[rank][j]
        mat[rank] = [v * inv for v in mat[rank]]
        for i in range(m):
            if i != rank and mat[i][j] != 0:
                factor = mat[i][j]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[rank])]
        pivot_of_col[j] = rank
        rank += 1
        if rank == m:
            break
    for i in range(rank, m):
        if mat[i][n] != 0:
            return None
    if any(mat[i][n] != 0 and all(mat[i][j] == 0 for j in range(n))
           for i in range(m)):
        return None
    solution = [Fraction(0)] * n
    for j, i in pivot_of_col.items():
        solution[j] = mat[i][n]
    return solution


def _chain_to_rows(chain: Chain) -> dict:
    return {s: c for s, c in chain.items()}


def _basis_j_chains(K: DeltaComplex, A: frozenset[FaceRef],
                    dim: int) -> list[FormalSimplex]:
    """Native simplices plus top subdivision flags over A, dimension `dim`."""
    natives = [embed(K, ref) for ref in sorted(A) if ref.dim == dim]
    flags: list[FormalSimplex] = []
    for ref in sorted(A):
        if ref.dim != dim:
            continue
        for s in subdivide_chain(Chain(K, dim, {embed(K, ref): Fraction(1)})):
            flags.append(s)
    return sorted(set(natives + flags))


def _certificate_basis(K: DeltaComplex, dim: int) -> list[FormalSimplex]:
    """Dimension dim+1 search space: natives, top flags, homotopy images."""
    out: set[FormalSimplex] = set()
    for ref in K.simplices(dim + 1):
        out.add(embed(K, ref))
        out.update(subdivide_chain(
            Chain(K, dim + 1, {embed(K, ref): Fraction(1)})).support())
    for ref in K.simplices(dim):
        base = Chain(K, dim, {embed(K, ref): Fraction(1)})
        out.update(subdivision_homotopy(base).support())
        out.update(subdivision_homotopy(subdivide_chain(base)).support())
        for flag in subdivide_chain(base).support():
            out.update(subdivision_homotopy(
                Chain(K, dim, {flag: Fraction(1)})).support())
    return sorted(out)


@dataclass(frozen=True)
class Extension:
    chain_in_subcomplex: Chain
    certificate: Chain


def extend_relative_cycle(complex: DeltaComplex, subcomplex: Iterable[FaceRef],
                          c_rel: Chain, h: Chain) -> Chain:
    """Chain c_A in the subcomplex with boundary(c_A) == -boundary(c_rel)
    and c_rel + c_A homologous to h, found by exact rational solving.

    The search space is finite: native simplices plus first-subdivision
    flags over the subcomplex for c_A, and natives, flags, and subdivision
    homotopy images for the boundary certificate.  Raises
    RelativeClassError when no solution exists in that space.
    """
    return extend_relative_cycle_with_certificate(
        complex, subcomplex, c_rel, h).chain_in_subcomplex


def extend_relative_cycle_with_certificate(
        complex: DeltaComplex, subcomplex: Iterable[FaceRef],
        c_rel: Chain, h: Chain) -> Extension:
    K = complex
    A = subcomplex_closure(K, subcomplex)
    j = c_rel.dim
    if h.dim != j:
        raise ComplexError("h and c_rel must have equal dimension")
    if j >= 1 and not boundary(h).is_zero():
        raise ComplexError("h is not a cycle")
    if j >= 1 and not _chain_supported_on(boundary(c_rel), A):
        raise ComplexError("boundary of c_rel is not supported on the subcomplex")

    a_basis = _basis_j_chains(K, A, j)
    w_basis = _certificate_basis(K, j)
    one = Fraction(1)

    # Joint system: boundary rows force d(c_A) = -d(c_rel); class rows force
    # c_A - d(w) = h - c_rel.
    columns = []
    for s in a_basis:
        col: dict = {}
        if j >= 1:
            for t, c in boundary(Chain(K, j, {s: one})).items():
                col[("b", t)] = c
        col[("c", s)] = one
        columns.append(col)
    for s in w_basis:
        col = {}
        for t, c in boundary(Chain(K, j + 1, {s: one})).items():
            col[("c", t)] = -c
        columns.append(col)

    rhs: dict = {}
    if j >= 1:
        for t, c in boundary(c_rel).items():
            rhs[("b", t)] = -c
    for t, c in (h - c_rel).items():
        rhs[("c", t)] = rhs.get(("c", t), Fraction(0)) + c

    solution = _solve_exact(columns, rhs)
    if solution is None:
        raise RelativeClassError(
            "no extension found: the relative-class hypothesis fails "
            "(or the certificate lies outside the search space)")

    c_a = Chain(K, j, {s: solution[i] for i, s in enumerate(a_basis)})
    w = Chain(K, j + 1, {s: solution[len(a_basis) + i]
                         for i, s in enumerate(w_basis)})
    if j >= 1:
        assert (boundary(c_a) + boundary(c_rel)).is_zero()
    assert (c_rel + c_a - h - boundary(w)).is_zero()
    return Extension(c_a, w)


@dataclass(frozen=True)
class Localization:
    """Result of the localization pipeline with its verification data."""

    cycle: Chain
    extension: Chain
    homotopy_part: Chain
    subdivided_part: Chain
    certificate: Chain

    @property
    def added(self) -> Chain:
        return self.homotopy_part + self.subdivided_part


def localize(complex: DeltaComplex, subcomplex: Iterable[FaceRef],
             c_rel: Chain, h: Chain, strat: Stratification) -> Localization:
    """Close a relative cycle into a cycle without new essential simplices.

    Produces c = c_rel + T(boundary c_rel) + sd(c_A) where c_A extends the
    relative cycle inside the subcomplex.  Postconditions, all exact: the
    output is a cycle; it differs from c_rel + c_A by the boundary of the
    returned certificate; every added simplex is non-essential for the
    stratum coloring; and the essential part equals that of c_rel term for
    term.  Preconditions (four conditions on c_rel, bounded stratum chains
    in the subcomplex) are checked and raise on failure.
    """
    K = complex
    A = subcomplex_closure(K, subcomplex)
    j = c_rel.dim

    report = check_conditions(c_rel, strat, subcomplex=A)
    if not report.ok:
        raise ConditionError(report)
    strata_in_a = {strat.stratum_of(ref) for ref in A}
    if strata_in_a and strat.longest_chain(strata_in_a) > j:
        raise ValueError(
            f"subcomplex strata admit a totally ordered chain longer than {j}")

    ext = extend_relative_cycle_with_certificate(K, A, c_rel, h)
    c_a = ext.chain_in_subcomplex
    t_part = (subdivision_homotopy(boundary(c_rel)) if j >= 1
              else Chain.zero(K, j))
    sd_part = subdivide_chain(c_a)
    cycle = c_rel + t_part + sd_part

    if j >= 1:
        assert boundary(cycle).is_zero()
    # cycle - (c_rel + c_a) == d(T(c_a)): sd - id is the homotopy boundary
    # and T is linear, so T(d c_a) cancels T(d c_rel).
    certificate = subdivision_homotopy(c_a) if j >= 1 else Chain.zero(K, j + 1)
    assert (cycle - (c_rel + c_a) - boundary(certificate)).is_zero()

    coloring = PartialColoring.from_stratification(strat)
    added = t_part + sd_part
    for s, ok in classify_essential(added, coloring).items():
        if ok:
            raise AssertionError(f"added simplex {s!r} is essential")
    ess_before = essential_part(c_rel, strat)
    ess_after = essential_part(cycle, strat)
    if ess_before != ess_after:
        raise AssertionError("localization changed the essential part")

    return Localization(cycle, c_a, t_part, sd_part, ext.certificate)
