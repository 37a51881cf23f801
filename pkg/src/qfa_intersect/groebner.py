"""Buchberger's algorithm over Q with a cooperative resource budget."""

from __future__ import annotations

import heapq
import threading
import time
from fractions import Fraction
from typing import Sequence

from .poly import Monomial, Poly, order_key


class ResourceError(RuntimeError):
    """A budget (steps, wall clock, cancellation) ran out; no partial basis is returned."""


class Budget:
    def __init__(self, max_steps: int | None = None, seconds: float | None = None,
                 cancel: threading.Event | None = None):
        self.max_steps = max_steps
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.cancel = cancel
        self.steps = 0

    def check(self, n: int = 1):
        self.steps += n
        if self.max_steps is not None and self.steps > self.max_steps:
            raise ResourceError(f"step budget of {self.max_steps} exhausted")
        if self.cancel is not None and self.cancel.is_set():
            raise ResourceError("cancelled")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceError("time budget exhausted")


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _monic(f: dict, key) -> tuple[Monomial, dict]:
    lm = max(f, key=key)
    c = f[lm]
    if c != 1:
        f = {m: v / c for m, v in f.items()}
    return lm, f


def _sub_multiple(f: dict, c: Fraction, shift: Monomial, g: dict):
    for gm, gc in g.items():
        mm = tuple(a + b for a, b in zip(gm, shift))
        v = f.get(mm, 0) - c * gc
        if v:
            f[mm] = v
        else:
            f.pop(mm, None)


def reduce_full(f: dict, basis: Sequence[tuple[Monomial, dict]], key, budget: Budget | None = None) -> dict:
    """Remainder of ``f`` on division by a list of monic ``(lm, poly)`` pairs."""
    f = dict(f)
    rem: dict = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                _sub_multiple(f, c, tuple(a - b for a, b in zip(m, lm)), g)
                if budget is not None:
                    budget.check()
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _interreduce(G: list[tuple[Monomial, dict]], key) -> list[tuple[Monomial, dict]]:
    G = sorted(G, key=lambda t: key(t[0]))
    minimal = []
    for i, (lm, g) in enumerate(G):
        if any(_divides(lm2, lm) for j, (lm2, _) in enumerate(G) if j != i and (lm2 != lm or j < i)):
            continue
        minimal.append((lm, g))
    out = []
    for i, (lm, g) in enumerate(minimal):
        others = [t for j, t in enumerate(minimal) if j != i]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = reduce_full(tail, others, key)
        tail[lm] = Fraction(1)
        out.append((lm, tail))
    return sorted(out, key=lambda t: key(t[0]))


def buchberger(polys: Sequence[dict], key, budget: Budget | None = None) -> list[tuple[Monomial, dict]]:
    """Reduced monic Gröbner basis of the ideal generated by ``polys`` (dict form)."""
    G: list[tuple[Monomial, dict]] = []
    for f in polys:
        if f:
            G.append(_monic(dict(f), key))
    if not G:
        return []
    if any(sum(lm) == 0 for lm, _ in G):
        n = len(G[0][0])
        return [((0,) * n, {(0,) * n: Fraction(1)})]
    heap: list = []
    pending: set = set()
    counter = 0

    def add_pairs(j: int):
        nonlocal counter
        for i in range(j):
            lc = _lcm(G[i][0], G[j][0])
            heapq.heappush(heap, (sum(lc), counter, i, j))
            counter += 1
            pending.add((i, j))

    for j in range(len(G)):
        add_pairs(j)
    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        if budget is not None:
            budget.check()
        lmi, gi = G[i]
        lmj, gj = G[j]
        if _coprime(lmi, lmj):
            continue
        lc = _lcm(lmi, lmj)
        if any(
            k != i and k != j and _divides(G[k][0], lc)
            and (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending
            for k in range(len(G))
        ):
            continue
        s: dict = {}
        _sub_multiple(s, Fraction(-1), tuple(a - b for a, b in zip(lc, lmi)), gi)
        _sub_multiple(s, Fraction(1), tuple(a - b for a, b in zip(lc, lmj)), gj)
        r = reduce_full(s, G, key, budget)
        if r:
            lm, r = _monic(r, key)
            if sum(lm) == 0:
                n = len(lm)
                return [((0,) * n, {(0,) * n: Fraction(1)})]
            G.append((lm, r))
            add_pairs(len(G) - 1)
    return _interreduce(G, key)


def groebner(gens: Sequence[Poly], order="grevlex", budget: Budget | None = None) -> list[Poly]:
    """Reduced Gröbner basis, sorted by increasing leading monomial."""
    if not gens:
        return []
    key = order_key(order)
    nv = gens[0].nvars
    basis = buchberger([g.terms for g in gens], key, budget)
    return [Poly._raw(nv, g) for _, g in basis]


def normal_form(f: Poly, basis: Sequence[Poly], order="grevlex") -> Poly:
    key = order_key(order)
    pairs = [(b.leading(key), b.terms) for b in basis if b.terms]
    return Poly._raw(f.nvars, reduce_full(f.terms, pairs, key))


def eliminate(gens: Sequence[Poly], k: int, budget: Budget | None = None) -> list[Poly]:
    """Basis of ``⟨gens⟩ ∩ Q[x_k, ...]``: drop the first ``k`` variables and return polys in the rest."""
    if not gens:
        return []
    nv = gens[0].nvars
    basis = groebner(gens, f"elimination-block:{k}", budget)
    out = []
    for b in basis:
        if all(not any(m[:k]) for m in b.terms):
            out.append(Poly._raw(nv - k, {m[k:]: c for m, c in b.terms.items()}))
    return out
