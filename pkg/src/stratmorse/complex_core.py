"""Delta-complexes, formal chains, and barycentric subdivision operators.

Everything in this module is exact: coefficients are `fractions.Fraction`
and the three operator identities (boundary squared zero, boundary commuting
with subdivision, and the subdivision homotopy contract) hold on the nose.

A formal simplex records its vertices positionally, as nonempty subsets of
the carrier's vertex positions; a subset stands for the barycenter of the
face it spans.  This keeps face cancellation well defined even on complexes
with identifications (self-loop edges, repeated faces), where bare face
references would be ambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence


class ComplexError(ValueError):
    """Raised for malformed complexes or simplices."""


@dataclass(frozen=True, order=True)
class FaceRef:
    """Reference to one simplex of a DeltaComplex (dimension + identifier).

    Geometrically a FaceRef names the barycenter of its open simplex, which
    is how it is used as a vertex of derived chains.
    """

    dim: int
    name: str

    def __repr__(self):
        return f"{self.name}[{self.dim}]"


class DeltaComplex:
    """A finite complex of simplices with ordered face identifications.

    Each d-simplex (d >= 1) carries an ordered tuple of d+1 faces; the i-th
    face is the (d-1)-simplex obtained by omitting vertex position i.  The
    constructor validates that all references resolve and that the face
    identities hold: face_i(face_j(s)) == face_{j-1}(face_i(s)) for i < j.
    """

    def __init__(self, names: Mapping[int, Sequence[str]],
                 faces: Mapping[FaceRef, Sequence[FaceRef]]):
        self._names = {d: tuple(ns) for d, ns in sorted(names.items()) if ns}
        self._faces = {ref: tuple(fs) for ref, fs in faces.items()}
        self._validate()

    @classmethod
    def from_simplices(cls, entries: Iterable[tuple[str, int, Sequence[str]]]
                       ) -> "DeltaComplex":
        """Build from (name, dim, face-names) triples; vertices pass ()."""
        names: dict[int, list[str]] = {}
        raw: dict[tuple[int, str], Sequence[str]] = {}
        for name, dim, face_names in entries:
            if dim < 0:
                raise ComplexError(f"negative dimension for {name!r}")
            if name in names.get(dim, ()):
                raise ComplexError(f"duplicate simplex {name!r} in dim {dim}")
            names.setdefault(dim, []).append(name)
            raw[(dim, name)] = tuple(face_names)
        faces: dict[FaceRef, tuple[FaceRef, ...]] = {}
        for (dim, name), face_names in raw.items():
            if dim == 0:
                if face_names:
                    raise ComplexError(f"vertex {name!r} cannot list faces")
                continue
            if len(face_names) != dim + 1:
                raise ComplexError(
                    f"{name!r} has {len(face_names)} faces, expected {dim + 1}")
            refs = []
            for fn in face_names:
                if fn not in names.get(dim - 1, ()):
                    raise ComplexError(
                        f"{name!r} references missing {dim - 1}-simplex {fn!r}")
                refs.append(FaceRef(dim - 1, fn))
            faces[FaceRef(dim, name)] = tuple(refs)
        return cls(names, faces)

    def _validate(self):
        for d, ns in self._names.items():
            for n in ns:
                ref = FaceRef(d, n)
                if d == 0:
                    continue
                fs = self._faces.get(ref)
                if fs is None:
                    raise ComplexError(f"missing face list for {ref}")
                if len(fs) != d + 1:
                    raise ComplexError(f"{ref} needs {d + 1} faces")
                for f in fs:
                    if f.dim != d - 1 or not self.has(f):
                        raise ComplexError(f"{ref} has dangling face {f}")
        for ref, fs in self._faces.items():
            if ref.name not in self._names.get(ref.dim, ()):
                raise ComplexError(f"face list for unknown simplex {ref}")
            if ref.dim < 2:
                continue
            for j in range(ref.dim + 1):
                for i in range(j):
                    left = self.faces(fs[j])[i]
                    right = self.faces(fs[i])[j - 1]
                    if left != right:
                        raise ComplexError(
                            f"face identity fails at {ref}: "
                            f"face {i} of face {j} is {left}, "
                            f"face {j - 1} of face {i} is {right}")

    def dims(self) -> tuple[int, ...]:
        return tuple(self._names)

    @property
    def dim(self) -> int:
        return max(self._names, default=-1)

    def simplices(self, dim: int) -> tuple[FaceRef, ...]:
        return tuple(FaceRef(dim, n) for n in self._names.get(dim, ()))

    def all_simplices(self) -> Iterator[FaceRef]:
        for d in self._names:
            yield from self.simplices(d)

    def has(self, ref: FaceRef) -> bool:
        return ref.name in self._names.get(ref.dim, ())

    def faces(self, ref: FaceRef) -> tuple[FaceRef, ...]:
        if ref.dim == 0:
            return ()
        return self._faces[ref]

    def resolve(self, ref: FaceRef, positions: Iterable[int]) -> FaceRef:
        """The iterated face of `ref` spanned by the given vertex positions."""
        keep = sorted(set(positions))
        if not keep or keep[0] < 0 or keep[-1] > ref.dim:
            raise ComplexError(f"bad position set {keep} for {ref}")
        cur = ref
        for pos in range(ref.dim, -1, -1):
            if pos not in keep:
                cur = self.faces(cur)[pos]
        return cur

    def zero_faces(self, ref: FaceRef) -> tuple[FaceRef, ...]:
        """Corner vertices of `ref` in position order (repeats possible)."""
        return tuple(self.resolve(ref, (i,)) for i in range(ref.dim + 1))

    def iterated_faces(self, ref: FaceRef) -> set[FaceRef]:
        """All proper iterated faces of `ref` (excluding `ref` itself)."""
        out: set[FaceRef] = set()
        stack = list(self.faces(ref))
        while stack:
            f = stack.pop()
            if f not in out:
                out.add(f)
                stack.extend(self.faces(f))
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(ns) for d, ns in self._names.items())

    def counts(self) -> dict[int, int]:
        return {d: len(ns) for d, ns in self._names.items()}

    def __repr__(self):
        sizes = ", ".join(f"{len(ns)}x{d}d" for d, ns in self._names.items())
        return f"DeltaComplex({sizes})"


def build_complex(entries: Iterable[tuple[str, int, Sequence[str]]]) -> DeltaComplex:
    """Validated DeltaComplex from (name, dim, face-names) descriptions."""
    return DeltaComplex.from_simplices(entries)


@dataclass(frozen=True, order=True)
class FormalSimplex:
    """A simplex given by vertex barycenters inside a carrier simplex.

    `slots` holds one nonempty position subset per vertex; subset P stands
    for the barycenter of the face of the carrier spanned by positions P.
    Instances are kept canonical (the union of all slots covers every
    carrier position); build them through `make_simplex` or `embed`.
    """

    carrier: FaceRef
    slots: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.slots) - 1

    def vertices(self, complex: DeltaComplex) -> tuple[FaceRef, ...]:
        """Vertex FaceRefs: each slot resolved to the face it spans."""
        return tuple(complex.resolve(self.carrier, p) for p in self.slots)

    def is_native(self, complex: DeltaComplex) -> bool:
        """True when this is the characteristic simplex of its carrier."""
        return self.slots == tuple((i,) for i in range(self.carrier.dim + 1))

    def __repr__(self):
        body = " ".join("".join(map(str, p)) for p in self.slots)
        return f"<{self.carrier.name}; {body}>"


def make_simplex(complex: DeltaComplex, carrier: FaceRef,
                 slots: Iterable[Iterable[int]]) -> FormalSimplex:
    """Canonical FormalSimplex: unused carrier positions are cut away."""
    if not complex.has(carrier):
        raise ComplexError(f"carrier {carrier} not in complex")
    cleaned = []
    for p in slots:
        t = tuple(sorted(set(p)))
        if not t or t[0] < 0 or t[-1] > carrier.dim:
            raise ComplexError(f"bad slot {t} for carrier {carrier}")
        cleaned.append(t)
    if not cleaned:
        raise ComplexError("a simplex needs at least one vertex")
    used = sorted(set().union(*cleaned))
    if len(used) == carrier.dim + 1:
        return FormalSimplex(carrier, tuple(cleaned))
    new_carrier = complex.resolve(carrier, used)
    renumber = {old: new for new, old in enumerate(used)}
    remapped = tuple(tuple(renumber[i] for i in p) for p in cleaned)
    return FormalSimplex(new_carrier, remapped)


def embed(complex: DeltaComplex, ref: FaceRef) -> FormalSimplex:
    """The native simplex `ref` as a FormalSimplex on its corner vertices."""
    if not complex.has(ref):
        raise ComplexError(f"{ref} not in complex")
    return FormalSimplex(ref, tuple((i,) for i in range(ref.dim + 1)))


class Chain:
    """Finite rational combination of equal-dimension formal simplices.

    Zero coefficients are never stored.  Chains are immutable; arithmetic
    returns new chains.  All simplices must live over the same complex.
    """

    __slots__ = ("complex", "dim", "_terms")

    def __init__(self, complex: DeltaComplex, dim: int,
                 terms: Mapping[FormalSimplex, Fraction] | None = None):
        self.complex = complex
        self.dim = dim
        clean: dict[FormalSimplex, Fraction] = {}
        for s, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            if s.dim != dim:
                raise ComplexError(f"{s} has dim {s.dim}, chain has dim {dim}")
            clean[s] = c
        self._terms = clean

    @classmethod
    def zero(cls, complex: DeltaComplex, dim: int) -> "Chain":
        return cls(complex, dim, {})

    @classmethod
    def from_native(cls, complex: DeltaComplex, dim: int,
                    coeffs: Mapping[str, Fraction | int]) -> "Chain":
        """Chain of native simplices given by name -> coefficient."""
        terms = {embed(complex, FaceRef(dim, n)): Fraction(c)
                 for n, c in coeffs.items()}
        return cls(complex, dim, terms)

    def items(self) -> list[tuple[FormalSimplex, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def coefficient(self, s: FormalSimplex) -> Fraction:
        return self._terms.get(s, Fraction(0))

    def support(self) -> list[FormalSimplex]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.support())

    def __eq__(self, other):
        return (isinstance(other, Chain) and other.complex is self.complex
                and other.dim == self.dim and other._terms == self._terms)

    def __hash__(self):
        return hash((id(self.complex), self.dim,
                     tuple(sorted(self._terms.items(), key=lambda kv: kv[0]))))

    def __add__(self, other: "Chain") -> "Chain":
        self._check_compatible(other)
        terms = dict(self._terms)
        for s, c in other._terms.items():
            terms[s] = terms.get(s, Fraction(0)) + c
        return Chain(self.complex, self.dim, terms)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-1) * other

    def __neg__(self) -> "Chain":
        return (-1) * self

    def __rmul__(self, scalar) -> "Chain":
        scalar = Fraction(scalar)
        return Chain(self.complex, self.dim,
                     {s: scalar * c for s, c in self._terms.items()})

    def _check_compatible(self, other: "Chain"):
        if other.complex is not self.complex:
            raise ComplexError("chains live over different complexes")
        if other.dim != self.dim:
            raise ComplexError("chains have different dimensions")

    def one_norm(self) -> Fraction:
        return sum((abs(c) for c in self._terms.values()), Fraction(0))

    def __repr__(self):
        if not self._terms:
            return f"Chain(0, dim={self.dim})"
        parts = [f"{c}*{s!r}" for s, c in self.items()]
        return "Chain(" + " + ".join(parts) + ")"


def _omissions(slots: tuple[tuple[int, ...], ...]
               ) -> list[tuple[int, tuple[tuple[int, ...], ...]]]:
    return [(1 if i % 2 == 0 else -1, slots[:i] + slots[i + 1:])
            for i in range(len(slots))]


def boundary(chain: Chain) -> Chain:
    """Alternating-sign boundary; terms with equal canonical form merge."""
    if chain.dim < 1:
        raise ComplexError("boundary needs chain dimension >= 1")
    K = chain.complex
    acc: dict[FormalSimplex, Fraction] = {}
    for s, coeff in chain._terms.items():
        for sign, rest in _omissions(s.slots):
            t = make_simplex(K, s.carrier, rest)
            acc[t] = acc.get(t, Fraction(0)) + sign * coeff
    return Chain(K, chain.dim - 1, acc)


def _sd_raw(slots: tuple[tuple[int, ...], ...]
            ) -> list[tuple[int, tuple[tuple[int, ...], ...]]]:
    # Cone recursion in carrier coordinates; canonicalization happens later.
    if len(slots) == 1:
        return [(1, slots)]
    apex = tuple(sorted(set().union(*slots)))
    out = []
    for sign, face in _omissions(slots):
        for s2, sub in _sd_raw(face):
            out.append((sign * s2, (apex,) + sub))
    return out


def _homotopy_raw(slots: tuple[tuple[int, ...], ...]
                  ) -> list[tuple[int, tuple[tuple[int, ...], ...]]]:
    # T(s) = -apex * (s + T(boundary s)); T vanishes on vertices.
    if len(slots) == 1:
        return []
    apex = tuple(sorted(set().union(*slots)))
    out = [(-1, (apex,) + slots)]
    for sign, face in _omissions(slots):
        for s2, sub in _homotopy_raw(face):
            out.append((-sign * s2, (apex,) + sub))
    return out


def _apply_raw(chain: Chain, raw, out_dim: int) -> Chain:
    K = chain.complex
    acc: dict[FormalSimplex, Fraction] = {}
    for s, coeff in chain._terms.items():
        for sign, slots in raw(s.slots):
            t = make_simplex(K, s.carrier, slots)
            acc[t] = acc.get(t, Fraction(0)) + sign * coeff
    return Chain(K, out_dim, acc)


def subdivide_chain(chain: Chain) -> Chain:
    """Barycentric subdivision operator; identity in dimension 0.

    Satisfies boundary(subdivide_chain(c)) == subdivide_chain(boundary(c))
    exactly, and every output carrier is a face of some input carrier.
    """
    return _apply_raw(chain, _sd_raw, chain.dim)


def subdivision_homotopy(chain: Chain) -> Chain:
    """Chain homotopy T between subdivision and the identity.

    Zero in dimension 0; otherwise boundary(T(c)) + T(boundary(c)) equals
    subdivide_chain(c) - c exactly.  Output simplices may repeat vertices;
    such degenerate simplices are retained, not normalized away.
    """
    if chain.dim == 0:
        return Chain.zero(chain.complex, 1)
    return _apply_raw(chain, _homotopy_raw, chain.dim + 1)


@dataclass(frozen=True)
class SubdividedComplex:
    """First barycentric subdivision with carrier and flag bookkeeping."""

    complex: DeltaComplex
    carrier_of: Mapping[FaceRef, FaceRef]
    flag_of: Mapping[FaceRef, FormalSimplex]
    ref_of_flag: Mapping[FormalSimplex, FaceRef]


def _flag_name(s: FormalSimplex) -> str:
    return s.carrier.name + "-" + "-".join("".join(map(str, p)) for p in s.slots)


def barycentric_subdivide(complex: DeltaComplex) -> SubdividedComplex:
    """Subdivided complex whose d-simplices are strictly nested flags of
    d+1 faces; the carrier map sends each new simplex to the smallest
    original face containing it."""
    flags: set[FormalSimplex] = set()

    def descend(carrier: FaceRef, chain: tuple[tuple[int, ...], ...]):
        flags.add(FormalSimplex(carrier, chain))
        last = chain[-1]
        if len(last) == 1:
            return
        for sub in _proper_subsets(last):
            descend(carrier, chain + (sub,))

    for ref in complex.all_simplices():
        full = tuple(range(ref.dim + 1))
        descend(ref, (full,))

    by_dim: dict[int, list[FormalSimplex]] = {}
    for s in sorted(flags):
        by_dim.setdefault(s.dim, []).append(s)

    entries = []
    names: dict[FormalSimplex, str] = {}
    for d in sorted(by_dim):
        for s in by_dim[d]:
            names[s] = _flag_name(s)
    for d in sorted(by_dim):
        for s in by_dim[d]:
            if d == 0:
                entries.append((names[s], 0, ()))
                continue
            face_names = []
            for _, rest in _omissions(s.slots):
                face = make_simplex(complex, s.carrier, rest)
                face_names.append(names[face])
            entries.append((names[s], d, tuple(face_names)))
    subdivided = DeltaComplex.from_simplices(entries)

    carrier_of = {}
    flag_of = {}
    ref_of_flag = {}
    for s, n in names.items():
        ref = FaceRef(s.dim, n)
        carrier_of[ref] = s.carrier
        flag_of[ref] = s
        ref_of_flag[s] = ref
    return SubdividedComplex(subdivided, carrier_of, flag_of, ref_of_flag)


def _proper_subsets(positions: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = []
    n = len(positions)
    for mask in range(1, (1 << n) - 1):
        out.append(tuple(positions[i] for i in range(n) if mask >> i & 1))
    out.sort(key=lambda t: (len(t), t))
    return out
