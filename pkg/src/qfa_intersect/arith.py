"""Exact rational scalars, vectors and square matrices.

Everything here is exact: scalars are :class:`fractions.Fraction` (arbitrary
precision, always in lowest terms), and matrices are immutable tuples of rows.
Indices are 0-based in the Python API; textual dumps use 1-based names.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, str]


class DimensionError(ValueError):
    pass


def parse_rational(text: Scalar) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats are refused: they would silently introduce binary rounding.
    """
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        s = text.strip()
        if "i" in s.lower() or "j" in s.lower():
            raise ValueError(
                f"complex value {text!r}: only real rational automata are supported; "
                "rewrite the automaton over the reals (doubling the dimension) first"
            )
        if "." in s or "e" in s.lower():
            raise ValueError(f"decimal literal {text!r} not allowed; write it as p/q")
        return Fraction(s)
    raise TypeError(f"cannot read a rational from {type(text).__name__}")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


class QVector:
    """Immutable row vector of rationals."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Scalar]):
        object.__setattr__(self, "entries", tuple(parse_rational(e) for e in entries))
        if not self.entries:
            raise DimensionError("vector must have positive dimension")

    def __setattr__(self, name, value):
        raise AttributeError("QVector is immutable")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, QVector) and self.entries == other.entries

    def __hash__(self):
        return hash(("QVector", self.entries))

    def __repr__(self):
        return f"QVector([{', '.join(map(str, self.entries))}])"

    def norm2(self) -> Fraction:
        return sum((e * e for e in self.entries), Fraction(0))

    def __matmul__(self, m: "QMatrix") -> "QVector":
        if not isinstance(m, QMatrix):
            return NotImplemented
        if m.dim != self.dim:
            raise DimensionError(f"vector of dim {self.dim} times matrix of dim {m.dim}")
        n = self.dim
        return QVector(
            sum((self.entries[i] * m.rows[i][j] for i in range(n)), Fraction(0)) for j in range(n)
        )

    def to_json(self) -> list[str]:
        return [format_rational(e) for e in self.entries]


class QMatrix:
    """Immutable dense square matrix over the rationals."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        data = tuple(tuple(parse_rational(e) for e in row) for row in rows)
        n = len(data)
        if n == 0:
            raise DimensionError("matrix must have positive dimension")
        for row in data:
            if len(row) != n:
                raise DimensionError("matrix must be square")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, rows: tuple) -> "QMatrix":
        # trusted constructor: rows already a square tuple of tuples of Fraction
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "QMatrix":
        return cls._raw(tuple((Fraction(0),) * n for _ in range(n)))

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "QMatrix":
        vals = [parse_rational(v) for v in values]
        n = len(vals)
        return cls._raw(
            tuple(tuple(vals[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def flat(self) -> tuple[Fraction, ...]:
        """Entries in row-major order."""
        return tuple(e for row in self.rows for e in row)

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in row) for row in self.rows)
        return f"QMatrix([{body}])"

    @property
    def T(self) -> "QMatrix":
        return QMatrix._raw(tuple(zip(*self.rows)))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if not isinstance(other, QMatrix):
            return NotImplemented
        return mat_mul(self, other)

    def __neg__(self):
        return QMatrix._raw(tuple(tuple(-e for e in row) for row in self.rows))

    def block(self, start: int, size: int) -> "QMatrix":
        """Diagonal sub-block of the given size starting at row/col ``start``."""
        return QMatrix._raw(tuple(row[start:start + size] for row in self.rows[start:start + size]))

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.rows for e in row)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(e) for e in row] for row in self.rows]


def mat_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    if a.dim != b.dim:
        raise DimensionError(f"cannot multiply {a.dim}x{a.dim} by {b.dim}x{b.dim}")
    cols = tuple(zip(*b.rows))
    zero = Fraction(0)
    return QMatrix._raw(
        tuple(
            tuple(sum((x * y for x, y in zip(row, col) if x and y), zero) for col in cols)
            for row in a.rows
        )
    )


def mat_prod(factors: Iterable[QMatrix], dim: int) -> QMatrix:
    out = QMatrix.identity(dim)
    for f in factors:
        out = mat_mul(out, f)
    return out


def direct_sum(blocks: Sequence[QMatrix]) -> QMatrix:
    """Block-diagonal matrix ``M1 ⊕ ... ⊕ Mk``."""
    if not blocks:
        raise DimensionError("direct sum of an empty list")
    n = sum(b.dim for b in blocks)
    zero = Fraction(0)
    rows = []
    offset = 0
    for b in blocks:
        for row in b.rows:
            rows.append((zero,) * offset + row + (zero,) * (n - offset - b.dim))
        offset += b.dim
    return QMatrix._raw(tuple(rows))


def is_orthogonal(a: QMatrix) -> bool:
    return mat_mul(a, a.T) == QMatrix.identity(a.dim)


IndexMap = Union[Mapping[tuple[int, int], tuple[int, int]], Callable[[int, int], tuple[int, int]]]


def permutation_table(pi: IndexMap, n: int) -> dict[tuple[int, int], tuple[int, int]]:
    """Normalise ``pi`` to a full table on ``{0..n-1}^2`` and check it is a bijection.

    A mapping may omit pairs; omitted pairs are fixed points.
    """
    pairs = [(i, j) for i in range(n) for j in range(n)]
    if callable(pi):
        table = {p: tuple(pi(*p)) for p in pairs}
    else:
        table = {p: tuple(pi.get(p, p)) for p in pairs}
    image = set(table.values())
    if image != set(pairs):
        raise ValueError("entry renaming is not a bijection on the index pairs")
    return table


def entry_rename(pi: IndexMap, a: QMatrix) -> QMatrix:
    """Return ``B`` with ``B[i, j] = a[pi(i, j)]``."""
    table = permutation_table(pi, a.dim)
    n = a.dim
    return QMatrix._raw(
        tuple(tuple(a.rows[table[(i, j)][0]][table[(i, j)][1]] for j in range(n)) for i in range(n))
    )


def inverse_table(table: Mapping[tuple[int, int], tuple[int, int]]) -> dict:
    return {v: k for k, v in table.items()}


def transpose_block_map(block_sizes: Sequence[int], transposed: Sequence[bool]) -> dict:
    """Index map transposing the chosen diagonal blocks of a block-diagonal layout."""
    table = {}
    offset = 0
    for size, flip in zip(block_sizes, transposed):
        if flip:
            for i in range(size):
                for j in range(size):
                    table[(offset + i, offset + j)] = (offset + j, offset + i)
        offset += size
    return table
