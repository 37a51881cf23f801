"""Closure of ``φ(L(G))`` as a semialgebraic set, for each supported grammar class.

Every builder returns a :class:`ClosureReport` holding the formula, a
certification flag, a provenance tree of construction steps and a sampler
``samples(max_len)`` mapping each word of ``L(G)`` up to that length to its
matrix and to bound-block values under which the formula accepts it.
"""

from __future__ import annotations

import threading
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .arith import QMatrix, direct_sum, mat_mul
from .automaton import QuantumAutomaton, phi_of_word
from .cycles import cycle_automaton_linear, cycle_automaton_matrix, group_generators, trim
from .grammars import (
    CFGrammar, LinearGrammar, Metalinear, MonoidalGrammar, RestrictedMatrixGrammar, Word,
)
from .groebner import Budget, ResourceError
from .poly import Poly, matrix_of_vars, matrix_product, transpose
from .semialg import (
    SemiAlgSet, blocks_product, blocks_product_witness, empty, from_points, from_variety,
    product, product_witness, rename, sandwich, sandwich_witness, union, union_witness,
)
from .zariski import PolyIdeal, group_closure, image_closure, point_ideal, product_chain, sum_ideal

Samples = dict  # word -> (QMatrix, witness dict)


class ClosureError(RuntimeError):
    pass


@dataclass
class ClosureConfig:
    degree_cap: int = 4
    chain_cap: int | None = None
    max_states: int = 64
    max_sequences: int = 20000
    seconds: float | None = None
    cancel: threading.Event | None = None

    def budget(self) -> Budget:
        return Budget(seconds=self.seconds, cancel=self.cancel)


@dataclass
class Step:
    name: str
    certified: bool = True
    detail: dict = field(default_factory=dict)
    children: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"step": self.name, "certified": self.certified}
        if self.detail:
            out["detail"] = self.detail
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass
class ClosureReport:
    formula: SemiAlgSet
    certified: bool
    provenance: Step
    timings: dict
    samples: Callable[[int], Samples] = field(repr=False, default=lambda n: {})

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "certified": self.certified,
            "formula": self.formula.to_json(),
            "provenance": self.provenance.to_json(),
        }
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


def _points(ms) -> SemiAlgSet:
    return from_points(list(ms))


def _closure_step(H: PolyIdeal, what: str, ngens: int) -> Step:
    return Step("group-closure", H.certified, {"of": what, "generators": ngens, "status": H.note})


def _safe_group_closure(gens, dim: int, cfg: ClosureConfig, budget: Budget) -> PolyIdeal:
    try:
        return group_closure(gens, cfg.degree_cap, dim=dim, budget=budget)
    except ResourceError as exc:
        # whole ambient space: sound, never certified
        return PolyIdeal(dim * dim, (), False, f"resource limit: {exc}")


def _transpose_second_half(n: int) -> dict:
    return {(n + i, n + j): (n + j, n + i) for i in range(n) for j in range(n)}


def _pairs_from(H: PolyIdeal, n: int) -> SemiAlgSet:
    """``{(P, Q) : P ⊕ Qᵀ ∈ V(H)}`` laid out as ``P ⊕ Q``."""
    return rename(_transpose_second_half(n), from_variety(H))


# -- linear -------------------------------------------------------------------------

def _linear_cycles(g: LinearGrammar, A: str, max_len: int) -> list[tuple[Word, Word]]:
    """All ``(u, v)`` with ``A ⇒* u A v`` and ``|u|+|v| ≤ max_len``."""
    rules = [(p.lhs, *g.split(p)) for p in g.productions]
    start = (A, (), ())
    seen = {start}
    queue = deque([start])
    out = [((), ())]
    while queue:
        state, u, v = queue.popleft()
        for lhs, a, C, b in rules:
            if lhs != state or C is None:
                continue
            nu, nv = u + a, b + v
            if len(nu) + len(nv) > max_len:
                continue
            item = (C, nu, nv)
            if item in seen:
                continue
            seen.add(item)
            queue.append(item)
            if C == A:
                out.append((nu, nv))
    return list(dict.fromkeys(out))


class _Linear:
    def __init__(self, g: LinearGrammar, q: QuantumAutomaton, cfg: ClosureConfig, budget: Budget):
        self.g, self.q, self.cfg, self.budget = g, q, cfg, budget
        self.memo: dict = {}
        self.sample_memo: dict = {}

    def build(self, variables: frozenset, A: str):
        key = (variables, A)
        if key in self.memo:
            return self.memo[key]
        q, n = self.q, self.q.dim
        sub = self.g.restricted(variables, A)
        if A not in sub.productive():
            res = (empty(n), True, Step("empty-language", True, {"variable": A}), [])
            self.memo[key] = res
            return res
        aut, _ = trim(cycle_automaton_linear(sub, q, A))
        steps = []
        H = None
        if aut.edges:
            gens = group_generators(aut)
            H = _safe_group_closure(gens, 2 * n, self.cfg, self.budget)
            steps.append(_closure_step(H, f"cycles of {A}", len(gens.generators)))
        branches, exits = [], []
        certified = H is None or H.certified
        for p in sub.rules_of(A):
            if A in p.rhs:
                continue
            u, C, v = sub.split(p)
            if C is None:
                branches.append(_points([phi_of_word(q, u)]))
                exits.append((u, None, ()))
                steps.append(Step("terminal-exit", True, {"rule": str(p)}))
                continue
            child, ccert, cstep, _ = self.build(variables - {A}, C)
            if child.is_empty_formula:
                continue
            certified = certified and ccert
            branches.append(product(product(_points([phi_of_word(q, u)]), child), _points([phi_of_word(q, v)])))
            exits.append((u, C, v))
            steps.append(Step("exit-branch", ccert, {"rule": str(p)}, [cstep]))
        inner = union(branches) if branches else empty(n)
        formula = inner
        if H is not None and not inner.is_empty_formula:
            formula = sandwich(_pairs_from(H, n), inner)
            name = "cycle-sandwich"
        else:
            name = "exit-union"
        res = (formula, certified, Step(name, certified, {"variable": A}, steps), exits)
        self.memo[key] = res
        return res

    def samples(self, variables: frozenset, A: str, max_len: int) -> Samples:
        key = (variables, A, max_len)
        if key in self.sample_memo:
            return self.sample_memo[key]
        formula, _, _, exits = self.build(variables, A)
        out: Samples = {}
        if formula.is_empty_formula:
            self.sample_memo[key] = out
            return out
        q = self.q
        sub = self.g.restricted(variables, A)
        has_cycles = bool(trim(cycle_automaton_linear(sub, q, A))[0].edges)
        inner: Samples = {}
        for i, (u, C, v) in enumerate(exits):
            pu, pv = phi_of_word(q, u), phi_of_word(q, v)
            if C is None:
                if len(u) <= max_len:
                    inner.setdefault(u, (pu, union_witness(i, {})))
                continue
            for x, (val, w) in self.samples(variables - {A}, C, max_len - len(u) - len(v)).items():
                left = mat_mul(pu, val)
                wit = product_witness(product_witness({}, w, pu, val), {}, left, pv)
                inner.setdefault(u + x + v, (mat_mul(left, pv), union_witness(i, wit)))
        if not has_cycles:
            self.sample_memo[key] = inner
            return inner
        for word, (val, w) in sorted(inner.items(), key=lambda t: (len(t[0]), t[0])):
            for cu, cv in _linear_cycles(sub, A, max_len - len(word)):
                full = cu + word + cv
                if full in out:
                    continue
                P, Q = phi_of_word(q, cu), phi_of_word(q, cv)
                out[full] = (mat_mul(mat_mul(P, val), Q), sandwich_witness({}, w, direct_sum([P, Q]), val))
        self.sample_memo[key] = out
        return out


def closure_linear(g: LinearGrammar, q: QuantumAutomaton, cfg: ClosureConfig | None = None) -> ClosureReport:
    cfg = cfg or ClosureConfig()
    t0 = time.perf_counter()
    b = _Linear(g, q, cfg, cfg.budget())
    V = frozenset(g.variables)
    formula, certified, step, _ = b.build(V, g.axiom)
    return ClosureReport(formula, certified, Step("linear-closure", certified, {}, [step]),
                         {"closure": time.perf_counter() - t0},
                         lambda N: b.samples(V, g.axiom, N))


# -- metalinear -------------------------------------------------------------------

def _product_samples(parts: list[Callable[[int], Samples]], max_len: int) -> Samples:
    """Samples of a left-nested product of sets, given each factor's sampler."""
    acc: Samples = {(): None}
    for k, f in enumerate(parts):
        nxt: Samples = {}
        used = min((len(w) for w in acc), default=0)
        fs = f(max_len - used)
        for w1, item in acc.items():
            for w2, (val, wit) in fs.items():
                if len(w1) + len(w2) > max_len:
                    continue
                word = w1 + w2
                if word in nxt:
                    continue
                if item is None:
                    nxt[word] = (val, wit)
                else:
                    v1, wit1 = item
                    nxt[word] = (mat_mul(v1, val), product_witness(wit1, wit, v1, val))
        acc = nxt
    return acc


def closure_metalinear(g: Metalinear, q: QuantumAutomaton, cfg: ClosureConfig | None = None) -> ClosureReport:
    cfg = cfg or ClosureConfig()
    t0 = time.perf_counter()
    fam_sets, fam_samplers, steps = [], [], []
    certified = True
    for fam in g.families:
        reports = [closure_linear(h, q, cfg) for h in fam]
        f = reports[0].formula
        for r in reports[1:]:
            f = product(f, r.formula)
        fam_sets.append(f)
        fam_samplers.append([r.samples for r in reports])
        c = all(r.certified for r in reports)
        certified = certified and c
        steps.append(Step("family-product", c, {"factors": len(fam)}, [r.provenance for r in reports]))
    formula = union(fam_sets)

    def samples(N):
        out: Samples = {}
        for i, parts in enumerate(fam_samplers):
            for w, (val, wit) in _product_samples(parts, N).items():
                out.setdefault(w, (val, union_witness(i, wit)))
        return out

    return ClosureReport(formula, certified, Step("metalinear-union", certified, {}, steps),
                         {"closure": time.perf_counter() - t0}, samples)


# -- restricted matrix --------------------------------------------------------------

def _ctx_point(q: QuantumAutomaton, ctx) -> QMatrix:
    return direct_sum([m for u, v in ctx for m in (phi_of_word(q, u), phi_of_word(q, v).T)])


def closure_matrix(g: RestrictedMatrixGrammar, q: QuantumAutomaton, cfg: ClosureConfig | None = None) -> ClosureReport:
    cfg = cfg or ClosureConfig()
    budget = cfg.budget()
    t0 = time.perf_counter()
    n, k = q.dim, g.k
    big = 2 * n * k
    starts = g.start_matrices()
    steps_m = g.step_matrices()
    stops = set(g.stop_states())
    # states reachable from a start state and co-reachable to a stop state
    fwd = {s for s, _ in starts}
    changed = True
    while changed:
        changed = False
        for src, _, dst in steps_m:
            if src in fwd and dst not in fwd:
                fwd.add(dst)
                changed = True
    bwd = set(stops)
    changed = True
    while changed:
        changed = False
        for src, _, dst in steps_m:
            if dst in bwd and src not in bwd:
                bwd.add(src)
                changed = True
    live = fwd & bwd
    order = sorted(live)
    index = {s: i for i, s in enumerate(order)}
    if len(order) > cfg.max_states:
        raise ClosureError(f"{len(order)} live states exceed the cap of {cfg.max_states}")
    if not any(s in live for s, _ in starts) or not (live & stops):
        report = ClosureReport(empty(n), True, Step("empty-language", True), {"closure": 0.0})
        return report

    provenance = []
    certified = True
    cyc: dict = {}
    cyc_ideal: dict = {}
    for p in order:
        aut, _ = trim(cycle_automaton_matrix(g, q, p))
        if aut.edges:
            gens = group_generators(aut)
            H = _safe_group_closure(gens, big, cfg, budget)
            cyc_ideal[p] = H
            cyc[p] = from_variety(H)
            certified = certified and H.certified
            provenance.append(_closure_step(H, f"cycles of {','.join(p)}", len(gens.generators)))
        else:
            cyc[p] = from_points([QMatrix.identity(big)])
    edges: dict = {}
    for src, ctx, dst in steps_m:
        if src in live and dst in live and src != dst:
            edges.setdefault((src, dst), []).append(_ctx_point(q, ctx))
    start_pts: dict = {}
    for s, ctx in starts:
        if s in live:
            start_pts.setdefault(s, []).append(_ctx_point(q, ctx))

    succ: dict = {}
    for (a, b) in sorted(edges, key=lambda e: (index[e[0]], index[e[1]])):
        succ.setdefault(a, []).append(b)
    sequences: list[tuple] = []

    def extend(seq):
        if len(sequences) > cfg.max_sequences:
            raise ClosureError(f"more than {cfg.max_sequences} repetition-free sequences")
        if seq[-1] in stops:
            sequences.append(tuple(seq))
        for nxt in succ.get(seq[-1], []):
            if nxt not in seq:
                extend(seq + [nxt])

    for s in sorted(start_pts, key=index.get):
        extend([s])
    seq_index = {s: i for i, s in enumerate(sequences)}
    parts = []
    for seq in sequences:
        f = product(from_points(start_pts[seq[0]]), cyc[seq[0]])
        for a, b in zip(seq, seq[1:]):
            f = product(product(f, from_points(edges[(a, b)])), cyc[b])
        parts.append(f)
    provenance.append(Step("repetition-free-sequences", True, {"count": len(sequences), "states": len(order)}))
    lifted = union(parts) if parts else empty(big)
    formula = blocks_product(lifted, n, [bool(i % 2) for i in range(2 * k)])
    provenance.append(Step("block-product", True, {"blocks": 2 * k}))

    def samples(N: int) -> Samples:
        out: Samples = {}
        for s_idx, (s, ctx) in enumerate(starts):
            if s not in live:
                continue
            base = sum(len(u) + len(v) for u, v in ctx)
            if base > N:
                continue
            init = (s, tuple(() for _ in range(k)), tuple(() for _ in range(k)), ())
            seen = {init[:3]}
            queue = deque([init])
            while queue:
                state, U, V, path = queue.popleft()
                size = base + sum(map(len, U)) + sum(map(len, V))
                if state in stops:
                    word = tuple(t for i, (u, v) in enumerate(ctx) for t in u + U[i] + V[i] + v)
                    if word not in out:
                        out[word] = _matrix_witness(s, ctx, path)
                for m_idx, (src, sctx, dst) in enumerate(steps_m):
                    if src != state or dst not in live:
                        continue
                    grow = sum(len(a) + len(b) for a, b in sctx)
                    if size + grow > N:
                        continue
                    nU = tuple(U[i] + sctx[i][0] for i in range(k))
                    nV = tuple(sctx[i][1] + V[i] for i in range(k))
                    if (dst, nU, nV) in seen:
                        continue
                    seen.add((dst, nU, nV))
                    queue.append((dst, nU, nV, path + (m_idx,)))
        return out

    def _matrix_witness(s, ctx, path):
        states = [s] + [steps_m[m][2] for m in path]
        labels = [_ctx_point(q, steps_m[m][1]) for m in path]
        # decompose by last visit: cycle at q1, edge, cycle at q2, ...
        seq, factors = [], []
        pos = 0
        while True:
            cur = states[pos]
            last = max(i for i in range(pos, len(states)) if states[i] == cur)
            cycle = QMatrix.identity(big)
            for lab in labels[pos:last]:
                cycle = mat_mul(cycle, lab)
            seq.append(cur)
            factors.append(("cycle", cycle))
            if last == len(states) - 1:
                break
            factors.append(("edge", labels[last]))
            pos = last + 1
        start = _ctx_point(q, ctx)
        val, wit = start, {}
        for _, m in factors:
            wit = product_witness(wit, {}, val, m)
            val = mat_mul(val, m)
        wit = union_witness(seq_index[tuple(seq)], wit)
        wit = blocks_product_witness(wit, val)
        word_matrix = QMatrix.identity(n)
        for i in range(2 * k):
            b = val.block(i * n, n)
            word_matrix = mat_mul(word_matrix, b.T if i % 2 else b)
        return word_matrix, wit

    return ClosureReport(formula, certified, Step("restricted-matrix-closure", certified, {"k": k}, provenance),
                         {"closure": time.perf_counter() - t0}, samples)


# -- monoidal -------------------------------------------------------------------------

def _psi_blocks(n: int, nvars: int, offset: int):
    """``X`` and ``Y`` blocks of a ``2n`` variable matrix at ``offset``."""
    W = matrix_of_vars(2 * n, nvars, offset)
    X = [row[:n] for row in W[:n]]
    Y = [row[n:] for row in W[n:]]
    return X, Y


def _const_poly_matrix(n: int, nvars: int, c) -> list[list[Poly]]:
    return [[Poly.const(nvars, c if i == j else 0) for j in range(n)] for i in range(n)]


class _Monoidal:
    def __init__(self, g: MonoidalGrammar, q: QuantumAutomaton, cfg: ClosureConfig, budget: Budget):
        self.g, self.q, self.cfg, self.budget = g, q, cfg, budget
        self.memo: dict = {}
        self.pair_memo: dict = {}
        self.chains: list = []

    def grammar(self, level: int, letter: str) -> LinearGrammar:
        return self.g.top if level == 0 else self.g.levels[level - 1][letter]

    def is_lowest(self, level: int) -> bool:
        return level == len(self.g.levels)

    def rules(self, G: LinearGrammar):
        return [(u, v) for p in G.productions for u, C, v in [G.split(p)] if C is not None]

    def closure(self, level: int, letter: str) -> tuple[PolyIdeal, Step]:
        key = (level, letter)
        if key in self.memo:
            return self.memo[key]
        q, n = self.q, self.q.dim
        G = self.grammar(level, letter)
        where = {"level": level + 1, "letter": letter or G.axiom}
        if self.is_lowest(level):
            aut = cycle_automaton_linear(G, q, G.axiom)
            gens = group_generators(aut)
            H = _safe_group_closure(gens, 2 * n, self.cfg, self.budget)
            res = (H, Step("group-closure", H.certified, {**where, "generators": len(gens.generators), "status": H.note}))
            self.memo[key] = res
            return res
        rules = [(u, v) for u, v in self.rules(G) if u or v]
        if not rules:
            H = point_ideal(QMatrix.identity(2 * n))
            res = (H, Step("trivial-cycles", True, where))
            self.memo[key] = res
            return res
        occ = [c for u, v in rules for c in u + v]
        children = [self.closure(level + 1, c) for c in dict.fromkeys(occ)]
        child_of = {c: self.closure(level + 1, c)[0] for c in occ}
        src = sum_ideal([child_of[c] for c in occ])
        nv = src.nvars
        blocks = [_psi_blocks(n, nv, 4 * n * n * i) for i in range(len(occ))]
        psis = [matrix_product(X, transpose(Y)) for X, Y in blocks]
        total = None
        i = 0
        for u, v in rules:
            A = _const_poly_matrix(n, nv, 1)
            for _ in u:
                A = matrix_product(A, psis[i])
                i += 1
            B = _const_poly_matrix(n, nv, 1)
            for _ in v:
                B = matrix_product(B, psis[i])
                i += 1
            lab = _direct_sum_poly(A, transpose(B), nv)
            total = lab if total is None else matrix_product(total, lab)
        psi = [p for row in total for p in row]
        try:
            H1 = image_closure(src, psi, self.budget)
            H1.points = _finite_image(rules, child_of, n)
            chain = product_chain(H1, self.cfg.chain_cap, self.budget)
            H = chain.union
            ok = H1.certified and chain.stabilized
            H = PolyIdeal(H.nvars, H.gens, ok, "chain", H.points, H._gb)
            self.chains.append(chain)
            detail = {**where, "chain_steps": chain.steps_used, "stabilized": chain.stabilized}
        except ResourceError as exc:
            H = PolyIdeal(4 * n * n, (), False, f"resource limit: {exc}")
            detail = {**where, "error": str(exc)}
        ok = H.certified and all(c[0].certified for c in children)
        res = (H, Step("product-chain", ok, detail, [c[1] for c in children]))
        self.memo[key] = res
        return res

    def pairs(self, level: int, letter: str, max_len: int) -> dict:
        """``(u', v')`` cycle expansions (as real words) with ``|u'|+|v'| ≤ max_len``."""
        key = (level, letter, max_len)
        if key in self.pair_memo:
            return self.pair_memo[key]
        G = self.grammar(level, letter)
        rules = self.rules(G)
        lowest = self.is_lowest(level)
        seen = {((), ())}
        queue = deque([((), ())])
        while queue:
            u, v = queue.popleft()
            room = max_len - len(u) - len(v)
            for a, b in rules:
                if lowest:
                    options = [(a, b)] if len(a) + len(b) <= room else []
                else:
                    options = self._expansions(level, a + b, room, len(a))
                for ea, eb in options:
                    item = (u + ea, eb + v)
                    if item not in seen:
                        seen.add(item)
                        queue.append(item)
        self.pair_memo[key] = seen
        return seen

    def words(self, level: int, letter: str, max_len: int) -> set:
        return {u + v for u, v in self.pairs(level, letter, max_len)}

    def _expansions(self, level: int, letters, room: int, split: int) -> list:
        combos = [()]
        for c in letters:
            child = sorted(self.words(level + 1, c, room), key=lambda w: (len(w), w))
            combos = [t + (w,) for t in combos for w in child if sum(map(len, t)) + len(w) <= room]
        out = []
        for t in combos:
            a = tuple(x for w in t[:split] for x in w)
            b = tuple(x for w in t[split:] for x in w)
            out.append((a, b))
        return out


def _finite_image(rules, child_of, n: int, cap: int = 5000):
    """Exact member list of the rule-product set when every child closure is finite."""
    if any(H.points is None for H in child_of.values()):
        return None
    psi = {c: list(dict.fromkeys(mat_mul(m.block(0, n), m.block(n, n).T) for m in H.points))
           for c, H in child_of.items()}
    acc = [QMatrix.identity(2 * n)]
    for u, v in rules:
        lefts = [QMatrix.identity(n)]
        for c in u:
            lefts = list(dict.fromkeys(mat_mul(a, b) for a in lefts for b in psi[c]))
        rights = [QMatrix.identity(n)]
        for c in v:
            rights = list(dict.fromkeys(mat_mul(a, b) for a in rights for b in psi[c]))
        labels = [direct_sum([a, b.T]) for a in lefts for b in rights]
        acc = list(dict.fromkeys(mat_mul(x, y) for x in acc for y in labels))
        if len(acc) > cap:
            return None
    return tuple(acc)


def _direct_sum_poly(A, B, nv: int):
    n = len(A)
    zero = Poly.const(nv, 0)
    rows = [list(A[i]) + [zero] * n for i in range(n)]
    rows += [[zero] * n + list(B[i]) for i in range(n)]
    return rows


def closure_monoidal(g: MonoidalGrammar, q: QuantumAutomaton, cfg: ClosureConfig | None = None) -> ClosureReport:
    cfg = cfg or ClosureConfig()
    t0 = time.perf_counter()
    b = _Monoidal(g, q, cfg, cfg.budget())
    n = q.dim
    H, step = b.closure(0, "")
    formula = blocks_product(from_variety(H), n, [False, True])
    certified = step.certified
    notes = {}
    lowest = b.g.lowest
    missing = [x for x in lowest if x not in g.irreducible]
    if missing:
        notes["warning"] = f"no irreducibility assertion for {missing}; chain stabilization is checked instead"
    prov = Step("monoidal-closure", certified, notes, [step])

    def samples(N: int) -> Samples:
        out: Samples = {}
        for u, v in sorted(b.pairs(0, "", N), key=lambda t: (len(t[0]) + len(t[1]), t)):
            w = u + v
            if w in out:
                continue
            P, Q = phi_of_word(q, u), phi_of_word(q, v)
            out[w] = (mat_mul(P, Q), blocks_product_witness({}, direct_sum([P, Q.T])))
        return out

    report = ClosureReport(formula, certified, prov, {"closure": time.perf_counter() - t0}, samples)
    report.chains = b.chains
    return report


# -- dispatch --------------------------------------------------------------------------

def closure(g, q: QuantumAutomaton, cfg: ClosureConfig | None = None) -> ClosureReport:
    if isinstance(g, LinearGrammar):
        return closure_linear(g, q, cfg)
    if isinstance(g, Metalinear):
        return closure_metalinear(g, q, cfg)
    if isinstance(g, RestrictedMatrixGrammar):
        return closure_matrix(g, q, cfg)
    if isinstance(g, MonoidalGrammar):
        return closure_monoidal(g, q, cfg)
    if isinstance(g, CFGrammar):
        raise ClosureError("general context-free grammars are not supported; supply a structured grammar")
    raise TypeError(type(g).__name__)
