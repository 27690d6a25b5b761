"""Built-in shape-operator datasets and the textual dataset format.

The four built-ins are the focal submanifolds of the isoparametric families
of S^7 and S^13 with six distinct principal curvatures (multiplicity 1 and 2),
each given pointwise by its shape operators in a fixed orthonormal frame.
Entries are stored with rationalized denominators: 1/sqrt(3) is (1/3)*sqrt3,
-2/sqrt(3) is -2/3*sqrt3.

Dataset file format (line-oriented, UTF-8, '#' starts a comment line):

    dataset <identifier>
    dim <n>
    codim <p>
    operator <label>
    <n rows of n whitespace-separated scalars>
    ... (p operator blocks in total)

Scalars inside rows use the scalar grammar of `exactnum` and must not contain
internal whitespace.  The serializer emits canonical scalar text, so
serialize -> parse -> serialize is byte-identical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .exactnum import QuadExt, ScalarParseError, format_scalar, parse_scalar
from .linalg import Matrix

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class DatasetFormatError(ValueError):
    """Malformed or invalid dataset text; `line` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass(frozen=True)
class ShapeOperatorSet:
    """A named point-datum: p symmetric n x n shape operators over Q(sqrt(3))."""

    name: str
    n: int
    p: int
    operators: tuple[Matrix, ...]
    labels: tuple[str, ...]
    g_tag: int | None = field(default=None, compare=False)
    m_tag: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.operators) != self.p:
            raise ValueError(f"expected {self.p} operators, got {len(self.operators)}")
        if len(self.labels) != self.p:
            raise ValueError(f"expected {self.p} labels, got {len(self.labels)}")
        for label, op in zip(self.labels, self.operators):
            if op.nrows != self.n or op.ncols != self.n:
                raise ValueError(f"operator {label} is {op.nrows}x{op.ncols}, expected {self.n}x{self.n}")
            if not op.is_symmetric():
                raise ValueError(f"operator {label} is not symmetric")


# Block cells are None (zero), ("I", q) or ("J", q); "I" expands to q times the
# identity stencil and "J" to q times the rotation generator [[0, -1], [1, 0]].
Cell = tuple[str, QuadExt] | None


@dataclass(frozen=True)
class BlockSpec:
    grid: tuple[tuple[Cell, ...], ...]
    block: int = 2


def expand_blocks(spec: BlockSpec) -> Matrix:
    if spec.block not in (1, 2):
        raise DatasetFormatError(f"block size must be 1 or 2, got {spec.block}")
    grid = spec.grid
    if not grid or any(len(row) != len(grid[0]) for row in grid):
        raise DatasetFormatError("ragged block grid")
    b = spec.block
    zero = QuadExt(0)
    out = [[zero] * (len(grid[0]) * b) for _ in range(len(grid) * b)]
    for gi, row in enumerate(grid):
        for gj, cell in enumerate(row):
            if cell is None:
                continue
            kind, q = cell
            if kind == "I":
                for t in range(b):
                    out[gi * b + t][gj * b + t] = q
            elif kind == "J":
                if b != 2:
                    raise DatasetFormatError("'J' cells need block size 2")
                out[gi * b][gj * b + 1] = -q
                out[gi * b + 1][gj * b] = q
            else:
                raise DatasetFormatError(f"unknown cell kind {kind!r}")
    return Matrix(out)


def _s(text: str) -> QuadExt:
    return parse_scalar(text)


def _sym(n: int, entries: dict[tuple[int, int], QuadExt]) -> Matrix:
    zero = QuadExt(0)
    rows = [[zero] * n for _ in range(n)]
    for (i, j), value in entries.items():
        rows[i][j] = value
        rows[j][i] = value
    return Matrix(rows)


def _build_m1_M1() -> ShapeOperatorSet:
    a6 = Matrix.diagonal([_s("sqrt3"), _s("1/3*sqrt3"), _s("0"), _s("-1/3*sqrt3"), _s("-sqrt3")])
    a7 = _sym(5, {(0, 4): _s("sqrt3"), (1, 3): _s("1/3*sqrt3")})
    return ShapeOperatorSet("g6_m1_M1", 5, 2, (a6, a7), ("A6", "A7"), g_tag=6, m_tag=1)


def _build_m1_M2() -> ShapeOperatorSet:
    a6 = Matrix.diagonal([_s("sqrt3"), _s("1/3*sqrt3"), _s("0"), _s("-1/3*sqrt3"), _s("-sqrt3")])
    a7 = _sym(5, {(0, 1): _s("1"), (1, 3): _s("-2/3*sqrt3"), (3, 4): _s("1")})
    return ShapeOperatorSet("g6_m1_M2", 5, 2, (a6, a7), ("A6", "A7"), g_tag=6, m_tag=1)


def _build_m2_M1() -> ShapeOperatorSet:
    s3 = _s("sqrt3")
    u = _s("1/3*sqrt3")
    Z = None
    a11 = expand_blocks(BlockSpec((
        (("I", s3), Z, Z, Z, Z),
        (Z, ("I", u), Z, Z, Z),
        (Z, Z, Z, Z, Z),
        (Z, Z, Z, ("I", -u), Z),
        (Z, Z, Z, Z, ("I", -s3)),
    )))
    a12 = expand_blocks(BlockSpec((
        (Z, Z, Z, Z, ("J", s3)),
        (Z, Z, Z, ("J", u), Z),
        (Z, Z, Z, Z, Z),
        (Z, ("J", -u), Z, Z, Z),
        (("J", -s3), Z, Z, Z, Z),
    )))
    a13 = expand_blocks(BlockSpec((
        (Z, Z, Z, Z, ("I", s3)),
        (Z, Z, Z, ("I", u), Z),
        (Z, Z, Z, Z, Z),
        (Z, ("I", u), Z, Z, Z),
        (("I", s3), Z, Z, Z, Z),
    )))
    return ShapeOperatorSet("g6_m2_M1", 10, 3, (a11, a12, a13), ("A11", "A12", "A13"), g_tag=6, m_tag=2)


def _build_m2_M2() -> ShapeOperatorSet:
    s3 = _s("sqrt3")
    u = _s("1/3*sqrt3")
    v = _s("2/3*sqrt3")
    one = _s("1")
    Z = None
    a11 = expand_blocks(BlockSpec((
        (("I", s3), Z, Z, Z, Z),
        (Z, ("I", u), Z, Z, Z),
        (Z, Z, Z, Z, Z),
        (Z, Z, Z, ("I", -u), Z),
        (Z, Z, Z, Z, ("I", -s3)),
    )))
    a12 = expand_blocks(BlockSpec((
        (Z, ("J", one), Z, Z, Z),
        (("J", -one), Z, Z, ("J", -v), Z),
        (Z, Z, Z, Z, Z),
        (Z, ("J", v), Z, Z, ("J", one)),
        (Z, Z, Z, ("J", -one), Z),
    )))
    a13 = expand_blocks(BlockSpec((
        (Z, ("I", -one), Z, Z, Z),
        (("I", -one), Z, Z, ("I", v), Z),
        (Z, Z, Z, Z, Z),
        (Z, ("I", v), Z, Z, ("I", -one)),
        (Z, Z, Z, ("I", -one), Z),
    )))
    return ShapeOperatorSet("g6_m2_M2", 10, 3, (a11, a12, a13), ("A11", "A12", "A13"), g_tag=6, m_tag=2)


_BUILTINS = {
    s.name: s
    for s in (_build_m1_M1(), _build_m1_M2(), _build_m2_M1(), _build_m2_M2())
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> ShapeOperatorSet:
    try:
        return _BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown dataset {name!r}; built-ins: {', '.join(BUILTIN_NAMES)}") from None


def serialize_dataset(data: ShapeOperatorSet) -> str:
    lines = [f"dataset {data.name}", f"dim {data.n}", f"codim {data.p}"]
    for label, op in zip(data.labels, data.operators):
        lines.append(f"operator {label}")
        for row in op.rows:
            lines.append(" ".join(format_scalar(e) for e in row))
    return "\n".join(lines) + "\n"


class _Lines:
    def __init__(self, text: str) -> None:
        self.items = [
            (number, line.strip())
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith("#")
        ]
        self.pos = 0
        self.last = self.items[-1][0] if self.items else 1

    def next(self, what: str) -> tuple[int, str]:
        if self.pos >= len(self.items):
            raise DatasetFormatError(f"unexpected end of file, expected {what}", self.last)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def done(self) -> bool:
        return self.pos >= len(self.items)


def _keyword_line(lines: _Lines, keyword: str) -> tuple[int, str]:
    number, line = lines.next(f"'{keyword} ...'")
    parts = line.split(None, 1)
    if len(parts) != 2 or parts[0] != keyword:
        raise DatasetFormatError(f"expected '{keyword} ...', got {line!r}", number)
    return number, parts[1].strip()


def _int_field(lines: _Lines, keyword: str) -> int:
    number, value = _keyword_line(lines, keyword)
    if not value.isdigit() or int(value) < 1:
        raise DatasetFormatError(f"{keyword} must be a positive integer, got {value!r}", number)
    return int(value)


def parse_dataset(text: str) -> ShapeOperatorSet:
    lines = _Lines(text)
    number, name = _keyword_line(lines, "dataset")
    if not _IDENT_RE.match(name):
        raise DatasetFormatError(f"bad dataset identifier {name!r}", number)
    n = _int_field(lines, "dim")
    p = _int_field(lines, "codim")
    operators: list[Matrix] = []
    labels: list[str] = []
    for _ in range(p):
        number, label = _keyword_line(lines, "operator")
        if not _IDENT_RE.match(label):
            raise DatasetFormatError(f"bad operator label {label!r}", number)
        rows: list[list[QuadExt]] = []
        row_lines: list[int] = []
        for _ in range(n):
            number, line = lines.next(f"a row of operator {label}")
            tokens = line.split()
            if tokens[0] in ("dataset", "dim", "codim", "operator"):
                raise DatasetFormatError(
                    f"operator {label} has {len(rows)} rows, expected {n}", number
                )
            if len(tokens) != n:
                raise DatasetFormatError(
                    f"row has {len(tokens)} scalars, expected {n}", number
                )
            try:
                rows.append([parse_scalar(tok) for tok in tokens])
            except ScalarParseError as exc:
                raise DatasetFormatError(f"bad scalar: {exc}", number) from exc
            row_lines.append(number)
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise DatasetFormatError(
                        f"operator {label} is not symmetric at ({i},{j})", row_lines[i]
                    )
        operators.append(Matrix(rows))
        labels.append(label)
    if not lines.done():
        number, line = lines.next("")
        raise DatasetFormatError(f"unexpected trailing content {line!r}", number)
    return ShapeOperatorSet(name, n, p, tuple(operators), tuple(labels))
