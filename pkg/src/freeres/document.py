"""Plain-text session documents holding a ring, matrices, complexes and ideals.

Format, one declaration per line::

    ring 32003 x,y,z grevlex
    matrix f1 1 3
    x, y, z;
    complex koszul = f1 f2 f3
    ideal a = x^2, y*z

A matrix header is followed by exactly ``rows`` row lines, each holding
``cols`` comma-separated polynomials and ending in ``;``.  Blank lines and
lines starting with ``#`` are ignored.  Gradings are not stored: they are
inferred on load whenever every entry is homogeneous.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .free_linalg import FreeModuleSpec, IdealData, PolyMatrix, compose, infer_chain_degrees
from .groebner import ResolutionData
from .scalar_poly import ORDERS, Polynomial, PolynomialSyntaxError, RingSpec, format_polynomial, parse_polynomial

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")


class DocumentError(ValueError):
    """Syntax or validation error, located at a line and column (1-based)."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


@dataclass
class SessionDocument:
    ring: RingSpec
    matrices: dict[str, PolyMatrix] = field(default_factory=dict)
    complexes: dict[str, tuple[str, ...]] = field(default_factory=dict)
    ideals: dict[str, IdealData] = field(default_factory=dict)

    def complex(self, name: str) -> ResolutionData:
        """The named complex, with a grading inferred across all its maps."""
        if name not in self.complexes:
            raise KeyError(f"no complex named {name!r}")
        mats = [self.matrices[n] for n in self.complexes[name]]
        return ResolutionData(tuple(regrade_chain(mats)))

    def add_complex(self, name: str, res: ResolutionData, prefix: str) -> None:
        names = []
        for k, d in enumerate(res.differentials, start=1):
            mname = f"{prefix}{k}"
            self.matrices[mname] = d
            names.append(mname)
        self.complexes[name] = tuple(names)


# grading inference ------------------------------------------------------------------


def regrade_chain(mats: Sequence[PolyMatrix]) -> list[PolyMatrix]:
    """Re-spec composable matrices with one consistent grading, or none at all."""
    if not mats:
        return []
    degs = infer_chain_degrees(mats[0].ring, [m.entries for m in mats])
    out = []
    for k, m in enumerate(mats):
        if degs is None:
            out.append(m.ungraded())
        else:
            out.append(m.with_specs(FreeModuleSpec(m.ncols, degs[k + 1]),
                                    FreeModuleSpec(m.nrows, degs[k])))
    return out


def _graded_matrix(ring: RingSpec, rows: list[list[Polynomial]], ncols: int) -> PolyMatrix:
    degs = infer_chain_degrees(ring, [rows]) if rows and ncols else None
    if degs is None:
        return PolyMatrix(ring, FreeModuleSpec(ncols), FreeModuleSpec(len(rows)), rows)
    return PolyMatrix(ring, FreeModuleSpec(ncols, degs[1]), FreeModuleSpec(len(rows), degs[0]), rows)


# parsing -----------------------------------------------------------------------------


def _split_items(text: str, offset: int) -> list[tuple[str, int]]:
    """Comma-separated items with their 1-based starting columns."""
    items = []
    pos = 0
    for piece in text.split(","):
        lead = len(piece) - len(piece.lstrip())
        items.append((piece.strip(), offset + pos + lead))
        pos += len(piece) + 1
    return items


def _parse_poly(ring: RingSpec, text: str, line: int, column: int) -> Polynomial:
    if not text:
        raise DocumentError("empty polynomial", line, column)
    try:
        return parse_polynomial(ring, text, column - 1)
    except PolynomialSyntaxError as exc:
        raise DocumentError(exc.message, line, exc.column) from None


def _parse_ring(text: str, line: int) -> RingSpec:
    parts = text.split()
    if len(parts) != 4 or parts[0] != "ring":
        raise DocumentError("expected 'ring <p> <vars> <order>'", line)
    p_text, vars_text, order = parts[1:]
    if not p_text.isdigit():
        raise DocumentError(f"bad characteristic {p_text!r}", line, text.index(p_text) + 1)
    if order not in ORDERS:
        raise DocumentError(f"unknown monomial order {order!r}", line, text.rindex(order) + 1)
    try:
        return RingSpec(int(p_text), tuple(vars_text.split(",")), order)
    except ValueError as exc:
        raise DocumentError(str(exc), line, text.index(p_text) + 1) from None


def parse_document(text: str) -> SessionDocument:
    """Parse and validate a session document."""
    lines = [(n, raw.rstrip("\n")) for n, raw in enumerate(text.splitlines(), start=1)]
    lines = [(n, l) for n, l in lines if l.strip() and not l.lstrip().startswith("#")]
    if not lines:
        raise DocumentError("missing ring declaration", 1)
    n0, first = lines[0]
    ring = _parse_ring(first.strip(), n0)
    doc = SessionDocument(ring)
    names: set[str] = set()
    complex_lines: dict[str, int] = {}
    idx = 1

    def declare(name: str, line: int, column: int):
        if not _NAME.fullmatch(name):
            raise DocumentError(f"bad name {name!r}", line, column)
        if name in names:
            raise DocumentError(f"duplicate name {name!r}", line, column)
        names.add(name)

    while idx < len(lines):
        n, raw = lines[idx]
        idx += 1
        stripped = raw.strip()
        indent = len(raw) - len(raw.lstrip()) + 1
        keyword = stripped.split(None, 1)[0]
        if keyword == "matrix":
            parts = stripped.split()
            if len(parts) != 4 or not parts[2].isdigit() or not parts[3].isdigit():
                raise DocumentError("expected 'matrix <name> <rows> <cols>'", n, indent)
            name, nrows, ncols = parts[1], int(parts[2]), int(parts[3])
            declare(name, n, indent + stripped.index(name, 6))
            rows = []
            for _ in range(nrows):
                if idx >= len(lines):
                    raise DocumentError(f"matrix {name!r} needs {nrows} rows", n, indent)
                rn, rraw = lines[idx]
                idx += 1
                body = rraw.rstrip()
                if not body.endswith(";"):
                    raise DocumentError("row must end with ';'", rn, len(body) + 1)
                body = body[:-1]
                if not body.strip():
                    items = []
                else:
                    items = _split_items(body, 1)
                if len(items) != ncols:
                    raise DocumentError(f"row has {len(items)} entries, expected {ncols}", rn, 1)
                rows.append([_parse_poly(ring, t, rn, c) for t, c in items])
            doc.matrices[name] = _graded_matrix(ring, rows, ncols)
        elif keyword in ("complex", "ideal"):
            head, eq, rest = stripped.partition("=")
            hparts = head.split()
            if not eq or len(hparts) != 2:
                raise DocumentError(f"expected '{keyword} <name> = ...'", n, indent)
            name = hparts[1]
            declare(name, n, indent + head.index(name, len(keyword)))
            rest_col = indent + len(head) + 1
            if keyword == "complex":
                members = tuple(rest.split())
                if not members:
                    raise DocumentError("a complex needs at least one matrix", n, rest_col)
                doc.complexes[name] = members
                complex_lines[name] = n
            else:
                gens = []
                if rest.strip():
                    for t, c in _split_items(rest, rest_col + 1):
                        gens.append(_parse_poly(ring, t, n, c))
                doc.ideals[name] = IdealData(ring, tuple(gens))
        else:
            raise DocumentError(f"unknown declaration {keyword!r}", n, indent)

    for name, members in doc.complexes.items():
        line = complex_lines[name]
        for mname in members:
            if mname not in doc.matrices:
                raise DocumentError(f"complex {name!r} refers to unknown matrix {mname!r}", line)
        mats = [doc.matrices[m] for m in members]
        for k, (lower, upper) in enumerate(zip(mats, mats[1:]), start=1):
            if lower.ncols != upper.nrows:
                raise DocumentError(
                    f"complex {name!r}: dimension mismatch between {members[k - 1]!r} "
                    f"and {members[k]!r}", line)
            if not compose(lower.ungraded(), upper.ungraded()).is_zero():
                raise DocumentError(
                    f"complex {name!r}: {members[k - 1]!r} * {members[k]!r} is not zero", line)
    return doc


# emitting ----------------------------------------------------------------------------


def _format_row(row: Sequence[Polynomial]) -> str:
    return ", ".join(format_polynomial(e) for e in row) + ";"


def emit_document(doc: SessionDocument) -> str:
    """Canonical text of ``doc``; ``parse_document`` inverts it."""
    ring = doc.ring
    out = [f"ring {ring.characteristic} {','.join(ring.variables)} {ring.order}"]
    for name, f in doc.matrices.items():
        out.append(f"matrix {name} {f.nrows} {f.ncols}")
        out.extend(_format_row(row) for row in f.entries)
    for name, members in doc.complexes.items():
        out.append(f"complex {name} = {' '.join(members)}")
    for name, ideal in doc.ideals.items():
        gens = ", ".join(format_polynomial(g) for g in ideal.generators)
        out.append(f"ideal {name} = {gens}".rstrip())
    return "\n".join(out) + "\n"
