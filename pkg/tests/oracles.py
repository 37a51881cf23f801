"""Independent reference computations used by several test modules."""

import itertools
from collections import deque
from fractions import Fraction

import sympy

from qfa_intersect.arith import QMatrix, mat_mul
from qfa_intersect.groebner import groebner
from qfa_intersect.poly import Poly, grevlex_key
from qfa_intersect.zariski import PolyIdeal


def group_elements(gens, n, cap=10_000):
    ident = QMatrix.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        m = queue.popleft()
        for g in gens:
            p = mat_mul(g, m)
            if p not in seen:
                seen.add(p)
                queue.append(p)
                if len(seen) > cap:
                    raise RuntimeError("group too large")
    return seen


def _monomials(nvars, d):
    for total in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), total):
            m = [0] * nvars
            for i in combo:
                m[i] += 1
            yield tuple(m)


def _standard_count(basis, nvars, limit):
    lms = [b.leading(grevlex_key) for b in basis]
    start = (0,) * nvars
    if any(all(a <= b for a, b in zip(lm, start)) for lm in lms):
        return 0
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for i in range(nvars):
            nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
            if nxt in seen or any(all(a <= b for a, b in zip(lm, nxt)) for lm in lms):
                continue
            seen.add(nxt)
            if len(seen) > limit:
                return len(seen)
            queue.append(nxt)
    return len(seen)


def interpolated_ideal(points, max_degree=6):
    """Vanishing ideal of a finite point set from exact nullspaces of evaluation matrices.

    The degree grows until the quotient has exactly ``len(points)`` standard
    monomials, which pins the ideal down as the full vanishing ideal.
    """
    pts = [p.flat() for p in points]
    nvars = len(pts[0])
    for d in range(1, max_degree + 1):
        monos = list(_monomials(nvars, d))
        rows = [[sympy.Rational(1) * sympy.prod([sympy.Rational(x.numerator, x.denominator) ** e
                                                   for x, e in zip(pt, m)]) for m in monos] for pt in pts]
        null = sympy.Matrix(rows).nullspace()
        gens = []
        for vec in null:
            terms = {m: Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
                     for m, c in zip(monos, vec) if c != 0}
            gens.append(Poly(nvars, terms))
        if not gens:
            continue
        basis = groebner(gens)
        if _standard_count(basis, nvars, len(pts)) == len(pts):
            ideal = PolyIdeal(nvars, tuple(gens))
            ideal._gb = tuple(basis)
            return ideal
    raise RuntimeError("degree bound too small for the interpolation oracle")


def signed_permutations(n):
    out = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            rows = [[0] * n for _ in range(n)]
            for i, j in enumerate(perm):
                rows[i][j] = signs[i]
            out.append(QMatrix(rows))
    return out
