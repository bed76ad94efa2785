"""Plain-text formats: structures, certificates, share tables, schemes, reports."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .bounds import IndependentSequenceCertificate, formula_bound
from .errors import Duplicate, FormatError, OutOfRange, StructureError, WrongCardinality
from .gf import PrimeField
from .linear_scheme import LinearScheme, ShareTable, VectorAssignment
from .structure import AccessStructure, build, members, pset


# -- sets -------------------------------------------------------------------

def format_set(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


def parse_set(text: str, line: int | None = None) -> int:
    """Parse ``{1,2,3}``, ``1,2,3`` or ``1 2 3`` into a bitmask."""
    body = text.strip()
    if body.startswith("{"):
        if not body.endswith("}"):
            raise FormatError(f"unterminated set {text!r}", line)
        body = body[1:-1]
    items = [t for t in re.split(r"[,\s]+", body) if t]
    try:
        values = [int(t) for t in items]
    except ValueError:
        raise FormatError(f"bad set {text!r}", line) from None
    if any(v < 1 for v in values):
        raise FormatError(f"participants are positive integers: {text!r}", line)
    if len(set(values)) != len(values):
        raise FormatError(f"set {text!r} repeats a participant", line)
    return pset(*values)


def format_partition(classes) -> str:
    return "{" + ",".join("{" + ",".join(map(str, c)) + "}" for c in classes) + "}"


def format_values(values: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(values))) + "}"


# -- structure files --------------------------------------------------------

def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def parse_structure(text: str) -> AccessStructure:
    n = k = None
    sets: list[tuple[int, list[int]]] = []
    for number, line in _content_lines(text):
        head, *rest = line.split()
        if head == "participants" or head == "k":
            if len(rest) != 1 or not rest[0].isdigit():
                raise FormatError(f"'{head}' takes one non-negative integer", number)
            if head == "participants":
                if n is not None:
                    raise FormatError("'participants' given twice", number)
                n = int(rest[0])
            else:
                if k is not None:
                    raise FormatError("'k' given twice", number)
                k = int(rest[0])
        elif head == "minset":
            if n is None or k is None:
                raise FormatError("'minset' before the 'participants' and 'k' header", number)
            try:
                items = [int(t) for t in rest]
            except ValueError:
                raise FormatError(f"bad minset {line!r}", number) from None
            sets.append((number, items))
        else:
            raise FormatError(f"unknown directive {head!r}", number)
    if n is None or k is None:
        raise FormatError("missing 'participants'/'k' header")
    # validate one set at a time so errors carry the offending line
    for number, items in sets:
        try:
            _check_set(n, k, items)
        except StructureError as exc:
            located = type(exc)(f"line {number}: {exc}")
            located.line = number
            raise located from None
    seen = {}
    for number, items in sets:
        key = frozenset(items)
        if key in seen:
            dup = Duplicate(f"line {number}: minset repeats line {seen[key]}")
            dup.line = number
            raise dup
        seen[key] = number
    return build(n, k, [items for _, items in sets])


def _check_set(n: int, k: int, items: list[int]) -> None:
    for i in items:
        if not 1 <= i <= n:
            raise OutOfRange(f"participant {i} outside 1..{n}")
    if len(set(items)) != len(items) or len(items) != k:
        raise WrongCardinality(f"minset {items} does not have exactly {k} distinct members")


def format_structure(structure: AccessStructure, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(f"participants {structure.n}")
    lines.append(f"k {structure.k}")
    for b in structure.basis:
        lines.append("minset " + " ".join(map(str, members(b))))
    return "\n".join(lines) + "\n"


# -- certificates -----------------------------------------------------------

def format_certificate(cert: IndependentSequenceCertificate) -> str:
    lines = ["chain: " + " ".join(format_set(b) for b in cert.chain)]
    for i, x in enumerate(cert.witnesses, start=1):
        lines.append(f"witness {i}: {format_set(x)}")
    lines.append(f"A: {format_set(cert.a_set)}")
    lines.append(f"bound: {cert.bound.numerator}/{cert.bound.denominator}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> IndependentSequenceCertificate:
    chain = a_set = bound = None
    witnesses: dict[int, int] = {}
    for number, line in _content_lines(text):
        key, sep, value = line.partition(":")
        if not sep:
            raise FormatError(f"expected 'key: value', got {line!r}", number)
        key, value = key.strip(), value.strip()
        if key == "chain":
            chain = [parse_set(t, number) for t in re.findall(r"\{[^}]*\}", value)]
        elif key.startswith("witness"):
            try:
                index = int(key.split()[1])
            except (IndexError, ValueError):
                raise FormatError(f"bad witness label {key!r}", number) from None
            witnesses[index] = parse_set(value, number)
        elif key == "A":
            a_set = parse_set(value, number)
        elif key == "bound":
            try:
                bound = Fraction(value)
            except ValueError:
                raise FormatError(f"bad bound {value!r}", number) from None
        else:
            raise FormatError(f"unknown certificate field {key!r}", number)
    if chain is None or a_set is None or bound is None:
        raise FormatError("certificate needs chain, A and bound")
    if sorted(witnesses) != list(range(1, len(witnesses) + 1)):
        raise FormatError("witnesses must be numbered 1..m")
    wits = tuple(witnesses[i] for i in range(1, len(witnesses) + 1))
    qualified = bound == formula_bound(a_set.bit_count(), len(chain), True) if chain else False
    return IndependentSequenceCertificate(tuple(chain), wits, a_set, qualified, bound)


# -- share tables and schemes ------------------------------------------------

def format_share_table(table: ShareTable, include_secret: bool = True) -> str:
    lines = ["# share table", f"field {table.p}", f"k {table.k}"]
    if table.seed is not None:
        lines.append(f"seed {table.seed}")
    if include_secret and table.secret is not None:
        lines.append(f"secret {table.secret}")
    for i, s in enumerate(table.shares, start=1):
        lines.append(f"participant {i} share {s}")
    return "\n".join(lines) + "\n"


def parse_share_table(text: str) -> ShareTable:
    header: dict[str, int] = {}
    shares: dict[int, int] = {}
    for number, line in _content_lines(text):
        parts = line.split()
        try:
            if parts[0] in ("field", "k", "seed", "secret") and len(parts) == 2:
                header[parts[0]] = int(parts[1])
            elif parts[0] == "participant" and len(parts) == 4 and parts[2] == "share":
                who = int(parts[1])
                if who in shares:
                    raise FormatError(f"participant {who} listed twice", number)
                shares[who] = int(parts[3])
            else:
                raise FormatError(f"unrecognized line {line!r}", number)
        except ValueError:
            raise FormatError(f"bad integer in {line!r}", number) from None
    if "field" not in header or "k" not in header:
        raise FormatError("share table needs 'field' and 'k'")
    n = max(shares, default=0)
    if sorted(shares) != list(range(1, n + 1)):
        raise FormatError("shares must cover participants 1..n")
    return ShareTable(
        header["field"], header["k"], header.get("seed"), header.get("secret"),
        tuple(shares[i] for i in range(1, n + 1)),
    )


def format_scheme(scheme: LinearScheme) -> str:
    asg = scheme.assignment
    lines = ["# linear scheme", f"field {scheme.p}", f"k {asg.dimension}"]
    lines.append("dealer " + " ".join(map(str, asg.dealer)))
    for i, v in enumerate(asg.participants, start=1):
        lines.append(f"participant {i} " + " ".join(map(str, v)))
    return "\n".join(lines) + "\n"


def parse_scheme(text: str, structure: AccessStructure) -> LinearScheme:
    p = k = None
    dealer = None
    rows: dict[int, tuple[int, ...]] = {}
    for number, line in _content_lines(text):
        parts = line.split()
        try:
            values = [int(t) for t in parts[1:]]
        except ValueError:
            raise FormatError(f"bad integer in {line!r}", number) from None
        if parts[0] == "field" and len(values) == 1:
            p = values[0]
        elif parts[0] == "k" and len(values) == 1:
            k = values[0]
        elif parts[0] == "dealer":
            dealer = tuple(values)
        elif parts[0] == "participant" and values:
            rows[values[0]] = tuple(values[1:])
        else:
            raise FormatError(f"unrecognized line {line!r}", number)
    if p is None or k is None or dealer is None:
        raise FormatError("scheme needs 'field', 'k' and 'dealer'")
    if sorted(rows) != list(range(1, structure.n + 1)):
        raise FormatError(f"scheme must list participants 1..{structure.n}")
    field_ = PrimeField(p)
    asg = VectorAssignment(k, tuple(x % p for x in dealer),
                           tuple(tuple(x % p for x in rows[i]) for i in range(1, structure.n + 1)))
    return LinearScheme(field_, asg, structure)
