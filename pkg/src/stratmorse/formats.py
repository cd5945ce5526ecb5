"""Line-based text formats for complexes, chains, posets, and flow graphs.

All formats are UTF-8, one record per line, with `#` starting a comment.
Identifiers are nonempty alphanumeric-with-dashes tokens.  Parsing is
strict: malformed input raises FormatError with the offending line number.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .complex_core import (
    Chain,
    DeltaComplex,
    FaceRef,
    FormalSimplex,
    embed,
    make_simplex,
)
from .strat import Poset, Stratification
from .morse import FlowGraph

TOKEN = re.compile(r"^[A-Za-z0-9-]+$")


class FormatError(ValueError):
    """Malformed input text."""


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((lineno, body.split()))
    return out


def _check_token(tok: str, lineno: int) -> str:
    if not TOKEN.match(tok):
        raise FormatError(f"line {lineno}: bad identifier {tok!r}")
    return tok


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: expected integer, got {tok!r}") from None


# -- delta-complex v1 ----------------------------------------------------

def parse_complex(text: str) -> tuple[DeltaComplex, Stratification | None]:
    """Parse a complex file; returns the stratification too if any
    `stratum` lines are present (they must then cover every simplex)."""
    lines = _lines(text)
    if not lines or lines[0][1] != ["delta-complex", "v1"]:
        raise FormatError("missing 'delta-complex v1' header")
    entries = []
    strat_lines: dict[str, str] = {}
    for lineno, toks in lines[1:]:
        if toks[0] == "simplex":
            if len(toks) < 3:
                raise FormatError(f"line {lineno}: truncated simplex line")
            name = _check_token(toks[1], lineno)
            dim = _int(toks[2], lineno)
            if dim == 0:
                if len(toks) != 3:
                    raise FormatError(f"line {lineno}: vertex takes no faces")
                entries.append((name, 0, ()))
            else:
                if len(toks) < 4 or toks[3] != "faces":
                    raise FormatError(f"line {lineno}: expected 'faces'")
                faces = tuple(_check_token(t, lineno) for t in toks[4:])
                if len(faces) != dim + 1:
                    raise FormatError(
                        f"line {lineno}: {name!r} needs {dim + 1} faces, "
                        f"got {len(faces)}")
                entries.append((name, dim, faces))
        elif toks[0] == "stratum":
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: stratum takes simplex and name")
            strat_lines[_check_token(toks[1], lineno)] = _check_token(toks[2], lineno)
        else:
            raise FormatError(f"line {lineno}: unknown directive {toks[0]!r}")
    try:
        complex = DeltaComplex.from_simplices(entries)
    except ValueError as err:
        raise FormatError(str(err)) from err
    strat = None
    if strat_lines:
        try:
            strat = Stratification.by_name(complex, strat_lines)
        except ValueError as err:
            raise FormatError(str(err)) from err
    return complex, strat


def write_complex(complex: DeltaComplex,
                  strat: Stratification | None = None) -> str:
    out = ["delta-complex v1"]
    for d in complex.dims():
        for ref in complex.simplices(d):
            if d == 0:
                out.append(f"simplex {ref.name} 0")
            else:
                faces = " ".join(f.name for f in complex.faces(ref))
                out.append(f"simplex {ref.name} {d} faces {faces}")
    if strat is not None:
        for ref in sorted(complex.all_simplices()):
            out.append(f"stratum {ref.name} {strat.stratum_of(ref)}")
    return "\n".join(out) + "\n"


# -- chain v1 ------------------------------------------------------------

def _fraction(tok: str, lineno: int) -> Fraction:
    if "/" not in tok:
        raise FormatError(f"line {lineno}: coefficient must be num/den")
    num, _, den = tok.partition("/")
    try:
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"line {lineno}: bad coefficient {tok!r}") from None


def _ref_by_name(complex: DeltaComplex, name: str, lineno: int) -> FaceRef:
    for ref in complex.all_simplices():
        if ref.name == name:
            return ref
    raise FormatError(f"line {lineno}: unknown simplex {name!r}")


def _slots_for_vertices(complex: DeltaComplex, carrier: FaceRef,
                        vertex_refs: Sequence[FaceRef],
                        lineno: int) -> list[tuple[int, ...]]:
    # Each vertex token names a face of the carrier; recover position
    # subsets deterministically: smallest candidate nested in the previous
    # choice when possible, smallest overall otherwise.
    by_size: dict[int, list[tuple[int, ...]]] = {}
    positions = tuple(range(carrier.dim + 1))
    for mask in range(1, 1 << len(positions)):
        sub = tuple(p for p in positions if mask >> p & 1)
        by_size.setdefault(len(sub), []).append(sub)
    for subs in by_size.values():
        subs.sort()

    slots: list[tuple[int, ...]] = []
    prev: tuple[int, ...] | None = None
    for v in vertex_refs:
        candidates = [s for s in by_size.get(v.dim + 1, ())
                      if complex.resolve(carrier, s) == v]
        if not candidates:
            raise FormatError(
                f"line {lineno}: {v.name!r} is not a face of the carrier")
        chosen = None
        if prev is not None:
            nested = [s for s in candidates if set(s) <= set(prev)]
            if nested:
                chosen = nested[0]
        if chosen is None:
            chosen = candidates[0]
        slots.append(chosen)
        prev = chosen
    return slots


def parse_chain(text: str, complex: DeltaComplex) -> Chain:
    lines = _lines(text)
    if not lines or lines[0][1][:2] != ["chain", "v1"]:
        raise FormatError("missing 'chain v1' header")
    head = lines[0][1]
    if len(head) != 4 or head[2] != "dim":
        raise FormatError("chain header must be 'chain v1 dim <j>'")
    dim = _int(head[3], lines[0][0])
    terms: dict[FormalSimplex, Fraction] = {}
    for lineno, toks in lines[1:]:
        if toks[0] != "term":
            raise FormatError(f"line {lineno}: expected 'term'")
        if "=" not in toks:
            raise FormatError(f"line {lineno}: missing '='")
        eq = toks.index("=")
        if eq != len(toks) - 2:
            raise FormatError(f"line {lineno}: coefficient must follow '='")
        coeff = _fraction(toks[-1], lineno)
        body = toks[1:eq]
        if body and body[0] == "simplex":
            if len(body) != 2:
                raise FormatError(f"line {lineno}: native term takes one id")
            ref = _ref_by_name(complex, body[1], lineno)
            simplex = embed(complex, ref)
        else:
            if len(body) < 3 or body[1] != ":":
                raise FormatError(
                    f"line {lineno}: expected 'term <carrier> : <vertices...>'")
            carrier = _ref_by_name(complex, body[0], lineno)
            vertex_refs = [_ref_by_name(complex, t, lineno) for t in body[2:]]
            slots = _slots_for_vertices(complex, carrier, vertex_refs, lineno)
            simplex = make_simplex(complex, carrier, slots)
        if simplex.dim != dim:
            raise FormatError(
                f"line {lineno}: term has dimension {simplex.dim}, "
                f"chain header says {dim}")
        terms[simplex] = terms.get(simplex, Fraction(0)) + coeff
    return Chain(complex, dim, terms)


def write_chain(chain: Chain) -> str:
    out = [f"chain v1 dim {chain.dim}"]
    K = chain.complex
    for s, c in chain.items():
        coeff = f"{c.numerator}/{c.denominator}"
        if s.is_native(K):
            out.append(f"term simplex {s.carrier.name} = {coeff}")
        else:
            verts = " ".join(v.name for v in s.vertices(K))
            out.append(f"term {s.carrier.name} : {verts} = {coeff}")
    return "\n".join(out) + "\n"


# -- poset v1 ------------------------------------------------------------

def parse_poset(text: str) -> Poset:
    lines = _lines(text)
    if not lines or lines[0][1] != ["poset", "v1"]:
        raise FormatError("missing 'poset v1' header")
    elements: list[str] = []
    labels: dict[str, str] = {}
    codims: dict[str, int] = {}
    relations: list[tuple[str, str]] = []
    for lineno, toks in lines[1:]:
        if toks[0] == "elem":
            if len(toks) < 2:
                raise FormatError(f"line {lineno}: elem needs a name")
            name = _check_token(toks[1], lineno)
            elements.append(name)
            rest = toks[2:]
            while rest:
                if rest[0] == "label" and len(rest) >= 2:
                    labels[name] = _check_token(rest[1], lineno)
                    rest = rest[2:]
                elif rest[0] == "codim" and len(rest) >= 2:
                    codims[name] = _int(rest[1], lineno)
                    rest = rest[2:]
                else:
                    raise FormatError(
                        f"line {lineno}: unknown elem option {rest[0]!r}")
        elif toks[0] == "rel":
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: rel takes lower and upper")
            relations.append((toks[1], toks[2]))
        else:
            raise FormatError(f"line {lineno}: unknown directive {toks[0]!r}")
    try:
        return Poset.from_relations(elements, relations, labels, codims)
    except ValueError as err:
        raise FormatError(str(err)) from err


def write_poset(poset: Poset) -> str:
    out = ["poset v1"]
    for e in poset.elements:
        line = f"elem {e}"
        if e in poset.labels:
            line += f" label {poset.labels[e]}"
        if e in poset.codims:
            line += f" codim {poset.codims[e]}"
        out.append(line)
    for lo in poset.elements:
        for hi in poset.elements:
            if lo != hi and poset.leq(lo, hi):
                out.append(f"rel {lo} {hi}")
    return "\n".join(out) + "\n"


# -- morse-flow v1 -------------------------------------------------------

def parse_flow(text: str) -> FlowGraph:
    lines = _lines(text)
    if not lines or lines[0][1][:2] != ["morse-flow", "v1"]:
        raise FormatError("missing 'morse-flow v1' header")
    head = lines[0][1]
    if len(head) != 4 or head[2] != "dim":
        raise FormatError("flow header must be 'morse-flow v1 dim <n>'")
    dim = _int(head[3], lines[0][0])
    points: dict[str, int] = {}
    edges: dict[tuple[str, str], int] = {}
    for lineno, toks in lines[1:]:
        if toks[0] == "point":
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: point takes name and index")
            points[_check_token(toks[1], lineno)] = _int(toks[2], lineno)
        elif toks[0] == "edge":
            if len(toks) != 4:
                raise FormatError(
                    f"line {lineno}: edge takes from, to, multiplicity")
            key = (_check_token(toks[1], lineno), _check_token(toks[2], lineno))
            edges[key] = edges.get(key, 0) + _int(toks[3], lineno)
        else:
            raise FormatError(f"line {lineno}: unknown directive {toks[0]!r}")
    try:
        return FlowGraph(dim, points, edges)
    except ValueError as err:
        raise FormatError(str(err)) from err


def write_flow(fg: FlowGraph) -> str:
    out = [f"morse-flow v1 dim {fg.dim}"]
    for name, index in sorted(fg.points.items()):
        out.append(f"point {name} {index}")
    for (src, dst), mult in sorted(fg.edges.items()):
        out.append(f"edge {src} {dst} {mult}")
    return "\n".join(out) + "\n"
