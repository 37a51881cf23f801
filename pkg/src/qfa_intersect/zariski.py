"""Polynomial ideals of matrix varieties: group closures, images and product chains.

Variables are the entries of an ``n×n`` matrix, row-major, printed ``x_i_j``
(1-based). A :class:`PolyIdeal` carries its generators plus flags describing how
trustworthy it is as the closure it stands for.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import QMatrix, mat_mul
from .cycles import GeneratorSet
from .groebner import Budget, eliminate, groebner, normal_form
from .poly import Poly, grevlex_key, matrix_of_vars, matrix_product, matrix_var_names

FINITE = "finite-count"
STABLE = "degree-stable"


@dataclass
class PolyIdeal:
    nvars: int
    gens: tuple[Poly, ...]
    certified: bool = True
    note: str = ""
    # exact member set when the variety is known to be finite
    points: tuple[QMatrix, ...] | None = None
    _gb: tuple[Poly, ...] | None = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        r = math.isqrt(self.nvars)
        return r if r * r == self.nvars else 0

    def basis(self, budget: Budget | None = None) -> tuple[Poly, ...]:
        """Reduced grevlex Gröbner basis (cached)."""
        if self._gb is None:
            self._gb = tuple(groebner(list(self.gens), "grevlex", budget)) if self.gens else ()
        return self._gb

    def is_unit(self) -> bool:
        return any(p.degree == 0 for p in self.basis())

    def contains(self, p: Poly) -> bool:
        return normal_form(p, self.basis()).is_zero()

    def dump(self, names: Sequence[str] | None = None) -> str:
        names = names or (matrix_var_names(self.n) if self.n else None)
        return "".join(p.format(names) + "\n" for p in self.basis())


def ideal_from(gens: Sequence[Poly], nvars: int, **flags) -> PolyIdeal:
    return PolyIdeal(nvars, tuple(g for g in gens if not g.is_zero()), **flags)


def point_ideal(m: QMatrix) -> PolyIdeal:
    N = m.dim * m.dim
    gens = tuple(Poly.var(N, k) - v for k, v in enumerate(m.flat()))
    return PolyIdeal(N, gens, points=(m,), _gb=tuple(sorted(gens, key=lambda p: grevlex_key(p.leading(grevlex_key)))))


def ideal_equal(I: PolyIdeal, J: PolyIdeal, budget: Budget | None = None) -> bool:
    if I.nvars != J.nvars:
        raise ValueError("ideals live in different rings")
    return set(I.basis(budget)) == set(J.basis(budget))


def contains_point(I: PolyIdeal, m: QMatrix) -> bool:
    if m.dim * m.dim != I.nvars:
        raise ValueError(f"point of dim {m.dim} for an ideal in {I.nvars} variables")
    flat = m.flat()
    return all(g.evaluate(flat) == 0 for g in I.gens)


# -- group closure ------------------------------------------------------------

def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _bm(points: Sequence[tuple], nvars: int, maxdeg: int, budget: Budget | None):
    """Buchberger–Möller: reduced grevlex basis of the vanishing ideal of ``points`` up to ``maxdeg``.

    Returns ``(basis, standard monomials, complete)``; ``complete`` means the
    whole basis was found (every basis element has degree ≤ maxdeg).
    """
    npts = len(points)
    zero = (0,) * nvars
    rows: list[tuple[int, list, dict]] = []
    evals: dict = {zero: [Fraction(1)] * npts}
    heap = [(grevlex_key(zero), zero, None, -1)]
    queued = {zero}
    gb, lms, std = [], [], []
    complete = True
    while heap:
        _, t, parent, var = heapq.heappop(heap)
        if sum(t) > maxdeg:
            complete = False
            break
        if any(_divides(lm, t) for lm in lms):
            continue
        if budget is not None:
            budget.check()
        if parent is None:
            v = list(evals[zero])
        else:
            v = [a * p[var] for a, p in zip(evals[parent], points)]
        vec = list(v)
        combo = {t: Fraction(1)}
        for piv, rv, rc in rows:
            c = vec[piv]
            if c:
                vec = [a - c * b for a, b in zip(vec, rv)]
                for m, cc in rc.items():
                    val = combo.get(m, 0) - c * cc
                    if val:
                        combo[m] = val
                    else:
                        combo.pop(m, None)
        piv = next((k for k, a in enumerate(vec) if a), None)
        if piv is None:
            gb.append(Poly._raw(nvars, combo))
            lms.append(t)
            continue
        scale = vec[piv]
        rows.append((piv, [a / scale for a in vec], {m: c / scale for m, c in combo.items()}))
        evals[t] = v
        std.append(t)
        for i in range(nvars):
            nt = t[:i] + (t[i] + 1,) + t[i + 1:]
            if nt not in queued:
                queued.add(nt)
                heapq.heappush(heap, (grevlex_key(nt), nt, t, i))
    return gb, std, complete


def _generators(E) -> list[QMatrix]:
    return list(E.generators) if isinstance(E, GeneratorSet) else list(E)


def group_closure(E, degree_cap: int = 4, dim: int | None = None, budget: Budget | None = None) -> PolyIdeal:
    """Ideal of the Zariski closure of the group generated by orthogonal matrices ``E``.

    Works on a growing finite subset ``B`` of the group: the degree-``d`` part of
    the vanishing ideal of ``B`` is recomputed, and ``e·b`` is added to ``B``
    whenever some ideal element fails to vanish there. At the fixed point that
    degree-``d`` part is translation invariant and vanishes at ``I``, hence on
    the whole group; it equals the degree-``d`` part of the group's ideal.

    Certification: ``finite-count`` when the vanishing ideal of ``B`` is
    complete within the cap (the group is then ``B`` itself), ``degree-stable``
    when two consecutive degrees give the same ideal. Otherwise the ideal is
    an upper approximation of the closure (its variety is larger), flagged
    ``certified=False``.
    """
    gens = _generators(E)
    if dim is not None:
        n = dim
    elif isinstance(E, GeneratorSet):
        n = E.dim
    elif gens:
        n = gens[0].dim
    else:
        raise ValueError("dimension unknown for an empty generator set")
    N = n * n
    ident = QMatrix.identity(n)
    B = [ident]
    seen = {ident}
    prev = None
    for d in range(1, max(1, degree_cap) + 1):
        frontier = list(B)
        while True:
            gb, _, complete = _bm([b.flat() for b in B], N, d, budget)
            new = []
            for b in frontier:
                for e in gens:
                    p = mat_mul(e, b)
                    if p in seen:
                        continue
                    pf = p.flat()
                    if any(g.evaluate(pf) for g in gb):
                        seen.add(p)
                        new.append(p)
            if not new:
                break
            B.extend(new)
            frontier = new
        if complete:
            return PolyIdeal(N, tuple(gb), True, f"{FINITE} at degree {d}", tuple(B), tuple(gb))
        if prev is not None and set(prev) == set(gb):
            return PolyIdeal(N, tuple(gb), True, f"{STABLE} at degree {d}", None, tuple(gb))
        prev = gb
    return PolyIdeal(N, tuple(prev or ()), False, f"upper-approximation at cap {degree_cap}", None, tuple(prev or ()))


def translated(p: Poly, e: QMatrix) -> Poly:
    """``p(e·X)`` as a polynomial in the entries of ``X``."""
    n = e.dim
    X = matrix_of_vars(n, p.nvars)
    images = []
    for i in range(n):
        for j in range(n):
            acc = Poly.const(p.nvars, 0)
            for t in range(n):
                if e[i, t]:
                    acc = acc + X[t][j] * e[i, t]
            images.append(acc)
    return p.substitute(images)


def translation_certificate(J: PolyIdeal, E) -> bool:
    """Every basis element ``p`` satisfies ``p(e·X) ∈ J`` for every generator ``e``, and ``J`` vanishes at I."""
    gens = _generators(E)
    basis = J.basis()
    n = J.n
    if not contains_point(J, QMatrix.identity(n)):
        return False
    return all(J.contains(translated(p, e)) for p in basis for e in gens)


# -- images and products ------------------------------------------------------

def _drop_linear(basis: Sequence[Poly], psi: Sequence[Poly]) -> tuple[list[Poly], list[Poly]]:
    """Use the linear members of a reduced basis to substitute variables away."""
    nv = basis[0].nvars if basis else (psi[0].nvars if psi else 0)
    images = [Poly.var(nv, i) for i in range(nv)]
    rest = []
    for g in basis:
        if g.degree == 1:
            lm = g.leading(grevlex_key)
            i = lm.index(1)
            images[i] = Poly.var(nv, i) - g
        else:
            rest.append(g)
    if all(images[i] == Poly.var(nv, i) for i in range(nv)):
        return list(rest), list(psi)
    # the basis is reduced, so substituted variables never occur in the rest
    return rest, [p.substitute(images) for p in psi]


def image_closure(I: PolyIdeal, psi: Sequence[Poly], budget: Budget | None = None) -> PolyIdeal:
    """Ideal of the Zariski closure of ``psi(V(I))`` (implicitization by elimination)."""
    n_out = len(psi)
    points = None
    if I.points is not None:
        points = tuple(sorted({tuple(p.evaluate(m.flat()) for p in psi) for m in I.points}))
    basis = list(I.basis(budget))
    if any(g.degree == 0 for g in basis):
        return PolyIdeal(n_out, (Poly.const(n_out, 1),), I.certified, I.note, ())
    rest, psi2 = _drop_linear(basis, psi)
    used = sorted(set().union(*(g.support() for g in rest), *(p.support() for p in psi2)))
    k = len(used)
    total = k + n_out
    pos = {v: i for i, v in enumerate(used)}
    src_positions = [pos.get(v, 0) for v in range(I.nvars)]
    gens = [g.embed(total, src_positions) for g in rest]
    for j, p in enumerate(psi2):
        gens.append(Poly.var(total, k + j) - p.embed(total, src_positions))
    out = eliminate(gens, k, budget)
    res = PolyIdeal(n_out, tuple(groebner(out, "grevlex", budget)), I.certified, I.note)
    res._gb = res.gens
    if points is not None:
        r = math.isqrt(n_out)
        if r * r == n_out:
            res.points = tuple(QMatrix([list(p[i * r:(i + 1) * r]) for i in range(r)]) for p in points)
    return res


def sum_ideal(parts: Sequence[PolyIdeal]) -> PolyIdeal:
    """Ideal of the cartesian product ``V(I1) × V(I2) × ...`` on concatenated variables."""
    total = sum(p.nvars for p in parts)
    gens = []
    offset = 0
    for p in parts:
        positions = list(range(offset, offset + p.nvars))
        gens.extend(g.embed(total, positions) for g in p.basis())
        offset += p.nvars
    return PolyIdeal(total, tuple(gens), all(p.certified for p in parts))


def intersect(I: PolyIdeal, J: PolyIdeal, budget: Budget | None = None) -> PolyIdeal:
    """``I ∩ J`` (ideal of the union of the varieties) via ``t·I + (1−t)·J``."""
    nv = I.nvars + 1
    shift = list(range(1, nv))
    t = Poly.var(nv, 0)
    gens = [t * g.embed(nv, shift) for g in I.basis(budget)]
    gens += [(1 - t) * g.embed(nv, shift) for g in J.basis(budget)]
    out = eliminate(gens, 1, budget)
    points = None
    if I.points is not None and J.points is not None:
        points = tuple(dict.fromkeys(I.points + J.points))
    res = PolyIdeal(I.nvars, tuple(groebner(out, "grevlex", budget)), I.certified and J.certified,
                    points=points)
    res._gb = res.gens
    return res


def product_closure(A: PolyIdeal, B: PolyIdeal, budget: Budget | None = None) -> PolyIdeal:
    """Ideal of the Zariski closure of ``{X·Y : X ∈ V(A), Y ∈ V(B)}``."""
    n = A.n
    src = sum_ideal([A, B])
    X = matrix_of_vars(n, 2 * n * n, 0)
    Y = matrix_of_vars(n, 2 * n * n, n * n)
    psi = [p for row in matrix_product(X, Y) for p in row]
    if A.points is not None and B.points is not None:
        src.points = None
    res = image_closure(src, psi, budget)
    if A.points is not None and B.points is not None:
        res.points = tuple(dict.fromkeys(mat_mul(a, b) for a in A.points for b in B.points))
    return res


@dataclass
class VarietyChain:
    ideals: list[PolyIdeal]
    union: PolyIdeal
    stabilized: bool
    steps_used: int


def product_chain(H1: PolyIdeal, cap: int | None = None, budget: Budget | None = None) -> VarietyChain:
    """Ascending powers ``H_{i+1} = closure(H_i · H_1)`` until their union stops growing.

    When ``V(H_1)`` contains the identity the powers ascend and the union is the
    last power; otherwise unions are formed by ideal intersection. The result's
    union is the closure of the monoid generated by ``V(H_1)`` when
    ``stabilized`` is true. Default cap is ``n²``.
    """
    n = H1.n
    cap = cap if cap is not None else max(1, n * n)
    has_identity = contains_point(H1, QMatrix.identity(n))
    chain = [H1]
    union = H1
    for step in range(1, cap + 1):
        nxt = product_closure(chain[-1], H1, budget)
        new_union = nxt if has_identity else intersect(union, nxt, budget)
        if ideal_equal(new_union, union, budget):
            return VarietyChain(chain, union, True, step)
        chain.append(nxt)
        union = new_union
    return VarietyChain(chain, union, False, cap)
