"""Measure-once quantum finite automata over the rationals."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import QMatrix, QVector, format_rational, is_orthogonal, mat_mul, parse_rational


class AutomatonError(ValueError):
    pass


Word = Sequence[str]


@dataclass(frozen=True)
class QuantumAutomaton:
    """``(s, phi, P, lambda)``: start row vector, letter matrices, projection, threshold."""

    alphabet: tuple[str, ...]
    s: QVector
    phi: Mapping[str, QMatrix]
    P: QMatrix
    threshold: Fraction

    @property
    def dim(self) -> int:
        return self.s.dim

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "alphabet": list(self.alphabet),
            "s": self.s.to_json(),
            "phi": {a: self.phi[a].to_json() for a in self.alphabet},
            "P": self.P.to_json(),
            "lambda": format_rational(self.threshold),
        }


def validate(q: QuantumAutomaton) -> list[str]:
    """Return the list of violated invariants (empty when ``q`` is well formed)."""
    problems = []
    n = q.dim
    norm = q.s.norm2()
    if norm != 1:
        problems.append(f"start vector norm² = {norm} ≠ 1")
    if set(q.phi) != set(q.alphabet):
        problems.append("phi keys do not match the alphabet")
    for a in q.alphabet:
        m = q.phi.get(a)
        if m is None:
            continue
        if m.dim != n:
            problems.append(f"phi({a}) has dim {m.dim}, expected {n}")
        elif not is_orthogonal(m):
            problems.append(f"phi({a}) not orthogonal")
    if q.P.dim != n:
        problems.append(f"P has dim {q.P.dim}, expected {n}")
    elif q.P != q.P.T or mat_mul(q.P, q.P) != q.P:
        problems.append("P not idempotent-symmetric")
    return problems


def phi_of_word(q: QuantumAutomaton, word: Word) -> QMatrix:
    out = QMatrix.identity(q.dim)
    for a in word:
        try:
            m = q.phi[a]
        except KeyError:
            raise AutomatonError(f"unknown symbol {a!r}") from None
        out = mat_mul(out, m)
    return out


def acceptance_of_matrix(q: QuantumAutomaton, m: QMatrix) -> Fraction:
    """``‖s·M·P‖²`` for an arbitrary matrix ``M``."""
    v = (q.s @ m) @ q.P
    return v.norm2()


def accept_prob(q: QuantumAutomaton, word: Word) -> Fraction:
    return acceptance_of_matrix(q, phi_of_word(q, word))


def in_cutpoint(q: QuantumAutomaton, word: Word, mode: str = "strict") -> bool:
    p = accept_prob(q, word)
    if mode == "strict":
        return p > q.threshold
    if mode == "nonstrict":
        return p >= q.threshold
    raise ValueError(f"mode must be 'strict' or 'nonstrict', got {mode!r}")


def _matrix(value, what: str) -> QMatrix:
    if isinstance(value, Mapping):
        if "im" in value or "imag" in value:
            raise AutomatonError(
                f"{what}: complex amplitudes are not supported; only real rational "
                "automata are accepted (any complex automaton has a real simulation "
                "of twice the dimension, which must be supplied instead)"
            )
        if "diag" in value:
            return QMatrix.diag(value["diag"])
    if not isinstance(value, list):
        raise AutomatonError(f"{what}: expected a list of rows")
    try:
        return QMatrix(value)
    except (ValueError, TypeError) as exc:
        raise AutomatonError(f"{what}: {exc}") from None


def from_json(data: Mapping) -> QuantumAutomaton:
    """Build an automaton from the JSON object form; raises AutomatonError."""
    try:
        alphabet = tuple(data["alphabet"])
        s = QVector(data["s"])
        phi = {a: _matrix(data["phi"][a], f"phi[{a}]") for a in alphabet}
        P = _matrix(data["P"], "P")
        lam = parse_rational(data["lambda"])
    except KeyError as exc:
        raise AutomatonError(f"missing field {exc.args[0]!r}") from None
    except (ValueError, TypeError) as exc:
        raise AutomatonError(str(exc)) from None
    if "dim" in data and data["dim"] != s.dim:
        raise AutomatonError(f"declared dim {data['dim']} but s has length {s.dim}")
    if len(set(alphabet)) != len(alphabet):
        raise AutomatonError("alphabet has repeated symbols")
    return QuantumAutomaton(alphabet, s, phi, P, lam)


def loads(text: str) -> QuantumAutomaton:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AutomatonError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_json(data)


def load(path) -> QuantumAutomaton:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def with_threshold(q: QuantumAutomaton, threshold) -> QuantumAutomaton:
    return QuantumAutomaton(q.alphabet, q.s, q.phi, q.P, parse_rational(threshold))


def make(alphabet: Iterable[str], s, phi: Mapping, P, threshold) -> QuantumAutomaton:
    """Convenience constructor accepting raw lists/strings."""
    alphabet = tuple(alphabet)
    return QuantumAutomaton(
        alphabet,
        s if isinstance(s, QVector) else QVector(s),
        {a: m if isinstance(m, QMatrix) else QMatrix(m) for a, m in phi.items()},
        P if isinstance(P, QMatrix) else QMatrix(P),
        parse_rational(threshold),
    )
