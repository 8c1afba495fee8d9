"""Plain-text matroid files.

    matroid NAME
    elements a b c d
    bases ab ac ad bc bd cd

or a GF(2) matrix, optionally followed by relaxations:

    matroid M4
    elements e1 e2 e3 e4 e5 e6 e7 e8
    gf2 4 8
    10000111
    01001011
    00101101
    00011110
    relax e2e3e4e5

Basis words are label concatenations (``-`` is the empty word). Lines
starting with ``#`` are comments.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Matroid, MatroidError, bits
from .gf2 import BinaryMatrix
from .relaxed import NotACircuitHyperplane, RelaxedBinaryMatroid, relax


class MatroidSyntaxError(SyntaxError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class ValidationError(MatroidError):
    pass


@dataclass
class MatroidDocument:
    name: str
    value: Matroid | RelaxedBinaryMatroid


def split_word(word: str, labels) -> list[str]:
    """Split a concatenation of labels; it must split in exactly one way."""
    if word == "-":
        return []
    labels = sorted(set(labels), key=len, reverse=True)
    found: list[list[str]] = []

    def walk(pos: int, acc: list[str]):
        if len(found) > 1:
            return
        if pos == len(word):
            found.append(list(acc))
            return
        for lab in labels:
            if word.startswith(lab, pos):
                acc.append(lab)
                walk(pos + len(lab), acc)
                acc.pop()

    walk(0, [])
    if not found:
        raise ValueError(f"{word!r} is not a word in the element labels")
    if len(found) > 1:
        raise ValueError(f"{word!r} splits into labels in more than one way")
    return found[0]


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def parse_many(text: str) -> list[MatroidDocument]:
    chunks: list[list[tuple[int, str]]] = []
    for no, line in _lines(text):
        if line.split()[0] == "matroid" or not chunks:
            chunks.append([])
        chunks[-1].append((no, line))
    return [_parse_chunk(c) for c in chunks]


def parse(text: str) -> MatroidDocument:
    docs = parse_many(text)
    if len(docs) != 1:
        raise MatroidSyntaxError(f"expected one matroid, found {len(docs)}")
    return docs[0]


def _parse_chunk(chunk: list[tuple[int, str]]) -> MatroidDocument:
    it = iter(chunk)
    no, line = next(it)
    head = line.split()
    if head[0] != "matroid":
        raise MatroidSyntaxError("expected 'matroid NAME'", no)
    name = " ".join(head[1:]) or "M"
    try:
        no, line = next(it)
    except StopIteration:
        raise MatroidSyntaxError("missing 'elements' line", no) from None
    parts = line.split()
    if parts[0] != "elements":
        raise MatroidSyntaxError("expected 'elements'", no)
    labels = parts[1:]
    if len(set(labels)) != len(labels):
        raise MatroidSyntaxError("repeated element label", no)
    if "-" in labels:
        raise MatroidSyntaxError("'-' cannot be a label", no)
    value = None
    relax_words: list[tuple[int, str]] = []
    rest = list(it)
    k = 0
    while k < len(rest):
        no, line = rest[k]
        parts = line.split()
        key = parts[0]
        if key == "bases":
            if value is not None:
                raise MatroidSyntaxError("second body section", no)
            bases = []
            for w in parts[1:]:
                try:
                    bases.append(split_word(w, labels))
                except ValueError as exc:
                    raise MatroidSyntaxError(str(exc), no) from None
            try:
                value = Matroid.from_sets(labels, bases, check=True)
            except MatroidError as exc:
                raise ValidationError(f"line {no}: {exc}") from exc
        elif key == "gf2":
            if value is not None:
                raise MatroidSyntaxError("second body section", no)
            try:
                r, n = int(parts[1]), int(parts[2])
            except (IndexError, ValueError):
                raise MatroidSyntaxError("expected 'gf2 ROWS COLS'", no) from None
            if n != len(labels):
                raise MatroidSyntaxError(f"{n} columns but {len(labels)} labels", no)
            rows = [line for _, line in rest[k + 1:k + 1 + r]]
            if len(rows) != r:
                raise MatroidSyntaxError("matrix ends early", no)
            for j, row in enumerate(rows):
                if len(row) != n or set(row) - {"0", "1"}:
                    raise MatroidSyntaxError("matrix rows must be 0/1 of full width", rest[k + 1 + j][0])
            value = BinaryMatrix.from_rows(rows, labels) if r else BinaryMatrix(0, (0,) * n, tuple(labels))
            k += r
        elif key == "relax":
            if len(parts) != 2:
                raise MatroidSyntaxError("expected 'relax WORD'", no)
            relax_words.append((no, parts[1]))
        else:
            raise MatroidSyntaxError(f"unknown keyword {key!r}", no)
        k += 1
    if value is None:
        raise MatroidSyntaxError("missing 'bases' or 'gf2' section", chunk[-1][0])
    if isinstance(value, BinaryMatrix):
        value = RelaxedBinaryMatroid(value)
    for no, w in relax_words:
        try:
            subset = split_word(w, labels)
        except ValueError as exc:
            raise MatroidSyntaxError(str(exc), no) from None
        try:
            value = value.relax(subset) if isinstance(value, RelaxedBinaryMatroid) else relax(value, subset)
        except (NotACircuitHyperplane, ValueError) as exc:
            raise ValidationError(f"line {no}: {exc}") from exc
    return MatroidDocument(name, value)


def _basis_order(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def emit(value, name: str = "M") -> str:
    if isinstance(value, MatroidDocument):
        name, value = value.name, value.value
    if isinstance(value, BinaryMatrix):
        value = RelaxedBinaryMatroid(value)
    lines = [f"matroid {name}", "elements " + " ".join(value.labels)]
    if isinstance(value, RelaxedBinaryMatroid):
        a = value.base
        lines.append(f"gf2 {a.rows} {a.ncols}")
        lines.extend(a.to_rows())
        for x in value.relaxed:
            lines.append("relax " + (value.word(x) or "-"))
    else:
        words = [value.word(b) or "-" for b in sorted(value.bases, key=_basis_order)]
        lines.append("bases " + " ".join(words))
    return "\n".join(lines) + "\n"
