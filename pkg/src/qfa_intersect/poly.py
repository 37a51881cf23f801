"""Sparse multivariate polynomials over Q in indexed variables.

A polynomial lives in a fixed ring with ``nvars`` variables; monomials are
exponent tuples. Matrix-entry variables are laid out row-major, so entry
``(i, j)`` of the ``b``-th ``n×n`` block sits at index ``offset + i*n + j``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial):
    return m


def block_key(k: int) -> Callable[[Monomial], tuple]:
    """Elimination order: the first ``k`` variables dominate, grevlex inside each block."""
    def key(m: Monomial):
        return (grevlex_key(m[:k]), grevlex_key(m[k:]))
    return key


ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


def order_key(order) -> Callable[[Monomial], tuple]:
    if callable(order):
        return order
    if isinstance(order, str):
        if order.startswith("elimination-block:"):
            return block_key(int(order.split(":", 1)[1]))
        if order in ORDERS:
            return ORDERS[order]
    raise ValueError(f"unknown monomial order {order!r}")


class Poly:
    """Immutable polynomial; ``terms`` maps exponent tuples to non-zero Fractions."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction] | None = None):
        object.__setattr__(self, "nvars", nvars)
        clean = {}
        for m, c in (terms or {}).items():
            if c:
                if len(m) != nvars:
                    raise ValueError("monomial length does not match the ring")
                clean[tuple(m)] = Fraction(c)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "nvars", nvars)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = Fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        m = [0] * nvars
        m[i] = 1
        return cls._raw(nvars, {tuple(m): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def support(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t *= x ** e
                    if not t:
                        break
            total += t
        return total

    def substitute(self, images: Sequence["Poly"], nvars: int | None = None) -> "Poly":
        """Compose: replace variable ``i`` by ``images[i]`` (all in one target ring)."""
        target = images[0].nvars if images else (nvars or 0)
        out = Poly.const(target, 0)
        powers: dict = {}
        for m, c in self.terms.items():
            t = Poly.const(target, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    t = t * powers[key]
            out = out + t
        return out

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Move variable ``i`` to index ``positions[i]`` of a ring with ``nvars`` variables."""
        out = {}
        for m, c in self.terms.items():
            new = [0] * nvars
            for i, e in enumerate(m):
                if e:
                    new[positions[i]] = e
            out[tuple(new)] = c
        return Poly._raw(nvars, out)

    def leading(self, key) -> Monomial:
        return max(self.terms, key=key)

    def monic(self, key=grevlex_key) -> "Poly":
        if not self.terms:
            return self
        c = self.terms[self.leading(key)]
        return Poly._raw(self.nvars, {m: v / c for m, v in self.terms.items()})

    def format(self, names: Sequence[str] | None = None, key=grevlex_key) -> str:
        if not self.terms:
            return "0"
        names = names or [f"v{i}" for i in range(self.nvars)]
        parts = []
        for m in sorted(self.terms, key=key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Poly({self.format()})"


def matrix_var_names(n: int, tag: str = "x") -> list[str]:
    return [f"{tag}_{i + 1}_{j + 1}" for i in range(n) for j in range(n)]


def matrix_of_vars(n: int, nvars: int, offset: int = 0) -> list[list[Poly]]:
    return [[Poly.var(nvars, offset + i * n + j) for j in range(n)] for i in range(n)]


def matrix_product(a: Sequence[Sequence[Poly]], b: Sequence[Sequence[Poly]]) -> list[list[Poly]]:
    n = len(a)
    nv = a[0][0].nvars
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Poly.const(nv, 0)
            for t in range(n):
                if a[i][t].terms and b[t][j].terms:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def transpose(a: Sequence[Sequence[Poly]]) -> list[list[Poly]]:
    return [list(r) for r in zip(*a)]


def const_matrix(m, nvars: int) -> list[list[Poly]]:
    return [[Poly.const(nvars, m[i, j]) for j in range(m.dim)] for i in range(m.dim)]


def flatten(a: Iterable[Iterable[Poly]]) -> list[Poly]:
    return [p for row in a for p in row]
