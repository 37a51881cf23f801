"""Grammar classes, their derivation semantics, composition and the semilinear encoder.

Words are tuples of terminal symbols; symbols are arbitrary strings, which is
why productions are written with whitespace-separated tokens (``"S -> a S b"``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

Word = tuple[str, ...]
EPSILON_TOKENS = {"ε", "eps", "epsilon", "λ"}


class GrammarError(ValueError):
    """Invalid grammar text or structure; the message carries the location."""


class EnumerationBudgetError(RuntimeError):
    pass


def fmt_word(word: Iterable[str]) -> str:
    word = tuple(word)
    if all(len(a) == 1 for a in word):
        return "".join(word)
    return " ".join(word)


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: tuple[str, ...]

    def __str__(self):
        return f"{self.lhs} -> {' '.join(self.rhs)}".rstrip()


def parse_production(text: str, where: str = "") -> list[Production]:
    """Parse ``"A -> a B b | ε"`` into one production per alternative."""
    if "->" not in text:
        raise GrammarError(f"{where}: expected 'LHS -> RHS', got {text!r}")
    lhs, rhs = text.split("->", 1)
    lhs = lhs.strip()
    if not lhs or len(lhs.split()) != 1:
        raise GrammarError(f"{where}: left-hand side must be a single variable, got {lhs!r}")
    out = []
    for alt in rhs.split("|"):
        toks = tuple(t for t in alt.split() if t not in EPSILON_TOKENS)
        out.append(Production(lhs, toks))
    return out


@dataclass(frozen=True)
class CFGrammar:
    variables: tuple[str, ...]
    terminals: tuple[str, ...]
    productions: tuple[Production, ...]
    axiom: str

    def __post_init__(self):
        vs = set(self.variables)
        if self.axiom not in vs:
            raise GrammarError(f"axiom {self.axiom!r} is not a variable")
        if vs & set(self.terminals):
            raise GrammarError(f"symbols used both as variable and terminal: {sorted(vs & set(self.terminals))}")
        known = vs | set(self.terminals)
        for p in self.productions:
            if p.lhs not in vs:
                raise GrammarError(f"production {p}: {p.lhs!r} is not a variable")
            for t in p.rhs:
                if t not in known:
                    raise GrammarError(f"production {p}: undeclared symbol {t!r}")

    def is_variable(self, sym: str) -> bool:
        return sym in self._varset

    @property
    def _varset(self) -> frozenset:
        return frozenset(self.variables)

    def rules_of(self, var: str) -> list[Production]:
        return [p for p in self.productions if p.lhs == var]

    def productive(self) -> set[str]:
        """Variables deriving at least one terminal word."""
        vs = self._varset
        good: set[str] = set()
        changed = True
        while changed:
            changed = False
            for p in self.productions:
                if p.lhs not in good and all(t not in vs or t in good for t in p.rhs):
                    good.add(p.lhs)
                    changed = True
        return good

    def restricted(self, keep: Iterable[str], axiom: str) -> "CFGrammar":
        """Grammar on the variable subset ``keep``, dropping rules that mention others."""
        keep = [v for v in self.variables if v in set(keep)]
        ks = set(keep)
        vs = self._varset
        prods = tuple(
            p for p in self.productions if p.lhs in ks and all(t not in vs or t in ks for t in p.rhs)
        )
        cls = type(self) if isinstance(self, LinearGrammar) else CFGrammar
        return cls(tuple(keep), self.terminals, prods, axiom)

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "variables": list(self.variables),
            "terminals": list(self.terminals),
            "productions": [str(p) for p in self.productions],
        }


class LinearGrammar(CFGrammar):
    """Context-free grammar with at most one variable in every right-hand side."""

    def __post_init__(self):
        super().__post_init__()
        vs = self._varset
        for p in self.productions:
            if sum(1 for t in p.rhs if t in vs) > 1:
                raise GrammarError(f"production {p} has more than one variable; grammar is not linear")

    def split(self, p: Production) -> tuple[Word, str | None, Word]:
        """``A -> u B v`` as ``(u, B, v)``; terminal rules give ``(w, None, ())``."""
        vs = self._varset
        for i, t in enumerate(p.rhs):
            if t in vs:
                return p.rhs[:i], t, p.rhs[i + 1:]
        return p.rhs, None, ()

    @property
    def is_minimal(self) -> bool:
        return len(self.variables) == 1


@dataclass(frozen=True)
class Metalinear:
    """Finite union of finite products of linear languages."""

    families: tuple[tuple[LinearGrammar, ...], ...]

    def __post_init__(self):
        if not self.families:
            raise GrammarError("metalinear grammar needs at least one family")
        for fam in self.families:
            if not fam:
                raise GrammarError("empty family in metalinear grammar")

    @property
    def terminals(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for fam in self.families:
            for g in fam:
                for t in g.terminals:
                    seen.setdefault(t)
        return tuple(seen)


@dataclass(frozen=True)
class RestrictedMatrixGrammar:
    """Matrix grammar with ``k`` disjoint variable blocks and synchronised linear steps.

    Three matrix shapes: a start matrix ``S -> z0 X1 z1 ... Xk zk`` (one
    variable of each block, in block order; terminal words ``zi`` may be
    empty), step matrices ``(X1 -> u1 Y1 v1, ..., Xk -> uk Yk vk)`` and stop
    matrices ``(X1 -> ε, ..., Xk -> ε)``.
    """

    start: str
    blocks: tuple[tuple[str, ...], ...]
    terminals: tuple[str, ...]
    matrices: tuple[tuple[Production, ...], ...]

    def __post_init__(self):
        if not self.blocks:
            raise GrammarError("index k must be positive")
        seen: dict[str, int] = {}
        for i, blk in enumerate(self.blocks):
            for v in blk:
                if v in seen:
                    raise GrammarError(f"variable {v!r} appears in blocks {seen[v] + 1} and {i + 1}")
                seen[v] = i
        if self.start in seen:
            raise GrammarError("start symbol must not belong to a block")
        if set(seen) & set(self.terminals) or self.start in self.terminals:
            raise GrammarError("terminal symbols clash with variables")
        for idx, m in enumerate(self.matrices):
            self._classify(m, idx)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def block_of(self, var: str) -> int:
        for i, blk in enumerate(self.blocks):
            if var in blk:
                return i
        return -1

    def _classify(self, m: Sequence[Production], idx: int = 0) -> str:
        where = f"matrix {idx + 1}"
        if len(m) == 1 and m[0].lhs == self.start:
            vars_ = [t for t in m[0].rhs if t != self.start and t not in self.terminals]
            if self.start in m[0].rhs:
                raise GrammarError(f"{where}: start symbol on a right-hand side")
            if len(vars_) != self.k:
                raise GrammarError(f"{where}: start matrix must introduce exactly {self.k} variables")
            for i, v in enumerate(vars_):
                b = self.block_of(v)
                if b < 0:
                    raise GrammarError(f"{where}: undeclared symbol {v!r}")
                if b != i:
                    raise GrammarError(f"{where}: cross-block variable {v!r} in position {i + 1}")
            return "start"
        if len(m) != self.k:
            raise GrammarError(f"{where}: expected {self.k} rules, got {len(m)}")
        kinds = set()
        for i, p in enumerate(m):
            if self.block_of(p.lhs) != i:
                raise GrammarError(f"{where}: rule {p}: cross-block variable {p.lhs!r} in position {i + 1}")
            vs = [t for t in p.rhs if t not in self.terminals]
            if not vs:
                if p.rhs:
                    raise GrammarError(f"{where}: terminal rule {p} must be X -> ε")
                kinds.add("stop")
            elif len(vs) == 1:
                b = self.block_of(vs[0])
                if b < 0:
                    raise GrammarError(f"{where}: undeclared symbol {vs[0]!r}")
                if b != i:
                    raise GrammarError(f"{where}: rule {p}: cross-block variable {vs[0]!r}")
                kinds.add("step")
            else:
                raise GrammarError(f"{where}: rule {p} has several variables")
        if len(kinds) != 1:
            raise GrammarError(f"{where}: mixes step and stop rules")
        return kinds.pop()

    def start_matrices(self) -> list[tuple[tuple[str, ...], tuple[tuple[Word, Word], ...]]]:
        """Each start matrix as (state, ((prefix_i, suffix_i) per block)).

        Terminals between ``X_i`` and ``X_{i+1}`` are attached to the prefix of
        block ``i+1``; trailing terminals become the suffix of block ``k``.
        """
        out = []
        for m in self.matrices:
            if self._classify(m) != "start":
                continue
            state, prefixes, pending = [], [], []
            for t in m[0].rhs:
                if t in self.terminals:
                    pending.append(t)
                else:
                    state.append(t)
                    prefixes.append(tuple(pending))
                    pending = []
            ctx = [(prefixes[i], ()) for i in range(self.k)]
            ctx[-1] = (ctx[-1][0], tuple(pending))
            out.append((tuple(state), tuple(ctx)))
        return out

    def step_matrices(self) -> list[tuple[tuple[str, ...], tuple[tuple[Word, Word], ...], tuple[str, ...]]]:
        """Each step matrix as (source state, ((u_i, v_i) per block), target state)."""
        out = []
        for m in self.matrices:
            if self._classify(m) != "step":
                continue
            src, dst, ctx = [], [], []
            for p in m:
                src.append(p.lhs)
                i = next(j for j, t in enumerate(p.rhs) if t not in self.terminals)
                dst.append(p.rhs[i])
                ctx.append((p.rhs[:i], p.rhs[i + 1:]))
            out.append((tuple(src), tuple(ctx), tuple(dst)))
        return out

    def stop_states(self) -> list[tuple[str, ...]]:
        return [tuple(p.lhs for p in m) for m in self.matrices if self._classify(m) == "stop"]

    def to_json(self) -> dict:
        return {
            "kind": "restricted-matrix",
            "start": self.start,
            "blocks": [list(b) for b in self.blocks],
            "terminals": list(self.terminals),
            "matrices": [[str(p) for p in m] for m in self.matrices],
        }


@dataclass(frozen=True)
class MonoidalGrammar:
    """Composition ``G1 ∘ G2 ∘ ... ∘ Gk`` of families of minimal linear grammars.

    ``top`` is the level-1 grammar over abstract letters; ``levels[j]`` maps each
    letter produced at the level above to its minimal linear grammar. The last
    level produces real terminals. ``irreducible`` holds the user assertion for
    each lowest-level grammar.
    """

    top: LinearGrammar
    levels: tuple[Mapping[str, LinearGrammar], ...] = ()
    irreducible: Mapping[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        grammars = [("top", self.top)] + [
            (f"level {j + 2} letter {x!r}", g) for j, fam in enumerate(self.levels) for x, g in fam.items()
        ]
        for where, g in grammars:
            if not g.is_minimal:
                raise GrammarError(f"{where}: component must have exactly one variable (minimal linear)")
            for p in g.productions:
                if g.split(p)[1] is None and p.rhs:
                    raise GrammarError(f"{where}: terminal production {p} must be X -> ε")
        letters = set(self.top.terminals)
        for j, fam in enumerate(self.levels):
            missing = letters - set(fam)
            if missing:
                raise GrammarError(f"level {j + 2}: no grammar for letters {sorted(missing)}")
            letters = {t for g in fam.values() for t in g.terminals}

    @property
    def depth(self) -> int:
        return 1 + len(self.levels)

    @property
    def lowest(self) -> Mapping[str, LinearGrammar]:
        return self.levels[-1] if self.levels else {"": self.top}

    @property
    def terminals(self) -> tuple[str, ...]:
        if not self.levels:
            return self.top.terminals
        seen: dict[str, None] = {}
        for g in self.levels[-1].values():
            for t in g.terminals:
                seen.setdefault(t)
        return tuple(seen)

    def composed(self) -> CFGrammar:
        g: CFGrammar = self.top
        for fam in self.levels:
            g = compose(g, fam)
        return g


GrammarSpec = Union[LinearGrammar, Metalinear, RestrictedMatrixGrammar, MonoidalGrammar]


# -- composition ------------------------------------------------------------

def compose(g1: CFGrammar, family: Mapping[str, CFGrammar]) -> CFGrammar:
    """Grammar for ``θ(L(g1))`` where ``θ(x) = L(family[x])``.

    Variables of each substituted grammar are renamed ``A@x``; the copy
    morphism replaces each terminal ``x`` of ``g1`` by the renamed axiom of
    ``family[x]``.
    """
    missing = set(g1.terminals) - set(family)
    if missing:
        raise GrammarError(f"no substitution grammar for letters {sorted(missing)}")
    used = set(g1.variables)
    renames: dict[str, dict[str, str]] = {}
    for x in g1.terminals:
        gx = family[x]
        table = {}
        for v in gx.variables:
            name = f"{v}@{x}"
            while name in used:
                name += "'"
            used.add(name)
            table[v] = name
        renames[x] = table
    terminals: dict[str, None] = {}
    for x in g1.terminals:
        for t in family[x].terminals:
            terminals.setdefault(t)
    if used & set(terminals):
        raise GrammarError("renamed variables collide with terminals")
    prods = [Production(p.lhs, tuple(renames[t][family[t].axiom] if t in renames else t for t in p.rhs))
             for p in g1.productions]
    variables = list(g1.variables)
    for x in g1.terminals:
        gx, table = family[x], renames[x]
        variables.extend(table[v] for v in gx.variables)
        prods.extend(Production(table[p.lhs], tuple(table.get(t, t) for t in p.rhs)) for p in gx.productions)
    return CFGrammar(tuple(variables), tuple(terminals), tuple(prods), g1.axiom)


# -- bounded semilinear encoder ----------------------------------------------

def semilinear_to_restricted(
    words: Sequence[Sequence[str]], offset: Sequence[int], periods: Sequence[Sequence[int]]
) -> RestrictedMatrixGrammar:
    """Restricted grammar of index k for ``{u1^n1 ... uk^nk : n ∈ v0 + N·v1 + ... + N·vl}``."""
    k = len(words)
    if k == 0:
        raise GrammarError("need at least one word (k = 0)")
    if len(offset) != k or any(len(p) != k for p in periods):
        raise GrammarError("offset and period vectors must have length k")
    if any(c < 0 for c in offset) or any(c < 0 for p in periods for c in p):
        raise GrammarError("vectors must lie in N^k")
    words = [tuple(w) for w in words]
    terminals = tuple(dict.fromkeys(t for w in words for t in w))
    names = []
    for i in range(k):
        name = f"X{i + 1}"
        while name in terminals or name == "S":
            name += "'"
        names.append(name)
    start = "S" if "S" not in terminals else "S'"
    rhs: list[str] = []
    for i in range(k):
        rhs.extend(words[i] * offset[i])
        rhs.append(names[i])
    matrices = [(Production(start, tuple(rhs)),), tuple(Production(x, ()) for x in names)]
    for p in periods:
        matrices.append(tuple(Production(names[i], words[i] * p[i] + (names[i],)) for i in range(k)))
    return RestrictedMatrixGrammar(start, tuple((x,) for x in names), terminals, tuple(matrices))


# -- enumeration --------------------------------------------------------------

class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self, n: int = 1):
        self.used += n
        if self.used > self.cap:
            raise EnumerationBudgetError(f"enumeration exceeded the node cap of {self.cap}")


def _concat(sets: Sequence[set], max_len: int) -> set:
    acc = {()}
    for s in sets:
        acc = {a + b for a in acc for b in s if len(a) + len(b) <= max_len}
        if not acc:
            break
    return acc


def _cfg_fixpoint(g: CFGrammar, max_len: int, budget: _Budget) -> dict[str, set]:
    lang: dict[str, set] = {v: set() for v in g.variables}
    vs = set(g.variables)
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            parts = [lang[t] if t in vs else {(t,)} for t in p.rhs]
            new = _concat(parts, max_len) - lang[p.lhs]
            if new:
                budget.spend(len(new))
                lang[p.lhs] |= new
                changed = True
    return lang


def _matrix_fixpoint(g: RestrictedMatrixGrammar, max_len: int, budget: _Budget) -> dict:
    """For each state, the k-tuples of block words derivable down to ε."""
    steps = g.step_matrices()
    table: dict[tuple, set] = {}
    empty = tuple(() for _ in range(g.k))
    for q in g.stop_states():
        table.setdefault(q, set()).add(empty)
    changed = True
    while changed:
        changed = False
        for src, ctx, dst in steps:
            grow = sum(len(u) + len(v) for u, v in ctx)
            new = set()
            for tup in table.get(dst, ()):
                if sum(map(len, tup)) + grow > max_len:
                    continue
                cand = tuple(u + w + v for (u, v), w in zip(ctx, tup))
                if cand not in table.get(src, ()):
                    new.add(cand)
            if new:
                budget.spend(len(new))
                table.setdefault(src, set()).update(new)
                changed = True
    return table


def enumerate_words(g: GrammarSpec, max_len: int, node_cap: int = 2_000_000) -> set[Word]:
    """Exactly the words of ``L(g)`` of length at most ``max_len``.

    Computed as the least fixpoint of the derivation equations restricted to
    words of bounded length (any derivation of a short word only involves short
    sub-words, so the truncation is exact). Raises EnumerationBudgetError once
    more than ``node_cap`` words have been materialised.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    budget = _Budget(node_cap)
    if isinstance(g, MonoidalGrammar):
        g = g.composed()
    if isinstance(g, CFGrammar):
        return set(_cfg_fixpoint(g, max_len, budget)[g.axiom])
    if isinstance(g, Metalinear):
        out: set[Word] = set()
        for fam in g.families:
            parts = [enumerate_words(h, max_len, node_cap) for h in fam]
            out |= _concat(parts, max_len)
        return out
    if isinstance(g, RestrictedMatrixGrammar):
        table = _matrix_fixpoint(g, max_len, budget)
        out = set()
        for state, ctx in g.start_matrices():
            for tup in table.get(state, ()):
                w = tuple(t for (u, v), x in zip(ctx, tup) for t in u + x + v)
                if len(w) <= max_len:
                    out.add(w)
        return out
    raise TypeError(f"not a grammar: {type(g).__name__}")


def shortlex(words: Iterable[Word]) -> list[Word]:
    return sorted(words, key=lambda w: (len(w), w))


# -- parsing --------------------------------------------------------------------

def _productions(items, where: str) -> list[Production]:
    if isinstance(items, str):
        items = [line for line in items.splitlines() if line.strip()]
    if not isinstance(items, list):
        raise GrammarError(f"{where}: productions must be a list of strings")
    out = []
    for i, text in enumerate(items):
        if not isinstance(text, str):
            raise GrammarError(f"{where}[{i}]: production must be a string")
        out.extend(parse_production(text, f"{where}[{i}]"))
    return out


def _linear_from(obj: Mapping, where: str) -> LinearGrammar:
    if not isinstance(obj, Mapping):
        raise GrammarError(f"{where}: expected an object")
    prods = _productions(obj.get("productions", []), f"{where}.productions")
    variables = list(obj.get("variables") or dict.fromkeys(p.lhs for p in prods))
    axiom = obj.get("axiom", variables[0] if variables else None)
    if axiom is None:
        raise GrammarError(f"{where}: no axiom and no productions")
    if axiom not in variables:
        variables.insert(0, axiom)
    vs = set(variables)
    terminals = list(obj.get("terminals") or dict.fromkeys(t for p in prods for t in p.rhs if t not in vs))
    try:
        return LinearGrammar(tuple(variables), tuple(terminals), tuple(prods), axiom)
    except GrammarError as exc:
        raise GrammarError(f"{where}: {exc}") from None


def _matrix_from(obj: Mapping) -> RestrictedMatrixGrammar:
    start = obj.get("start", "S")
    raw = obj.get("matrices")
    if not isinstance(raw, list) or not raw:
        raise GrammarError("matrices: expected a non-empty list")
    matrices = []
    for i, m in enumerate(raw):
        if isinstance(m, str):
            m = [m]
        rules = []
        for j, text in enumerate(m):
            prods = parse_production(text, f"matrices[{i}][{j}]")
            if len(prods) != 1:
                raise GrammarError(f"matrices[{i}][{j}]: alternatives are not allowed inside a matrix")
            rules.append(prods[0])
        matrices.append(tuple(rules))
    if "blocks" in obj:
        blocks = tuple(tuple(b) for b in obj["blocks"])
    else:
        starts = [m for m in matrices if len(m) == 1 and m[0].lhs == start]
        if not starts:
            raise GrammarError("matrices: no start matrix, cannot infer blocks")
        lhs_vars = {p.lhs for m in matrices for p in m if p.lhs != start}
        k = sum(1 for t in starts[0][0].rhs if t in lhs_vars)
        blocks_l: list[dict] = [dict() for _ in range(k)]
        for m in matrices:
            if len(m) == 1 and m[0].lhs == start:
                pos = [t for t in m[0].rhs if t in lhs_vars]
                for i, v in enumerate(pos[:k]):
                    blocks_l[i].setdefault(v)
            else:
                for i, p in enumerate(m[:k]):
                    blocks_l[i].setdefault(p.lhs)
        blocks = tuple(tuple(b) for b in blocks_l)
    allvars = {v for b in blocks for v in b} | {start}
    terminals = obj.get("terminals")
    if terminals is None:
        lhs_vars = {p.lhs for m in matrices for p in m}
        terminals = list(dict.fromkeys(
            t for m in matrices for p in m for t in p.rhs if t not in allvars and t not in lhs_vars
        ))
    return RestrictedMatrixGrammar(start, blocks, tuple(terminals), tuple(matrices))


def from_json(obj: Mapping) -> GrammarSpec:
    if not isinstance(obj, Mapping):
        raise GrammarError("grammar file must hold a JSON object")
    kind = obj.get("kind")
    if kind == "linear":
        return _linear_from(obj, "grammar")
    if kind == "metalinear":
        fams = obj.get("families")
        if not isinstance(fams, list):
            raise GrammarError("families: expected a list of lists of linear grammars")
        return Metalinear(tuple(
            tuple(_linear_from(g, f"families[{i}][{j}]") for j, g in enumerate(fam))
            for i, fam in enumerate(fams)
        ))
    if kind == "restricted-matrix":
        return _matrix_from(obj)
    if kind == "monoidal":
        top = _linear_from(obj.get("top", {}), "top")
        levels = []
        irreducible: dict[str, bool] = {}
        raw_levels = obj.get("levels", [])
        for j, fam in enumerate(raw_levels):
            if not isinstance(fam, Mapping):
                raise GrammarError(f"levels[{j}]: expected an object keyed by letters")
            levels.append({x: _linear_from(g, f"levels[{j}][{x!r}]") for x, g in fam.items()})
        lowest = raw_levels[-1] if raw_levels else {"": obj.get("top", {})}
        for x, g in lowest.items():
            if isinstance(g, Mapping) and "irreducible" in g:
                irreducible[x] = bool(g["irreducible"])
        return MonoidalGrammar(top, tuple(levels), irreducible)
    raise GrammarError(f"kind: expected linear|metalinear|restricted-matrix|monoidal, got {kind!r}")


def parse_grammar(text: str) -> GrammarSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GrammarError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_json(obj)


def load(path) -> GrammarSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())


def to_json(g: GrammarSpec) -> dict:
    if isinstance(g, LinearGrammar):
        return {"kind": "linear", **g.to_json()}
    if isinstance(g, Metalinear):
        return {"kind": "metalinear", "families": [[h.to_json() for h in fam] for fam in g.families]}
    if isinstance(g, RestrictedMatrixGrammar):
        return g.to_json()
    if isinstance(g, MonoidalGrammar):
        levels = []
        for j, fam in enumerate(g.levels):
            lvl = {}
            for x, h in fam.items():
                entry = h.to_json()
                if j == len(g.levels) - 1 and x in g.irreducible:
                    entry["irreducible"] = g.irreducible[x]
                lvl[x] = entry
            levels.append(lvl)
        top = g.top.to_json()
        if not g.levels and "" in g.irreducible:
            top["irreducible"] = g.irreducible[""]
        return {"kind": "monoidal", "top": top, "levels": levels}
    raise TypeError(type(g).__name__)
