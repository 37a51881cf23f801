"""Group-labelled automata for cycle monoids and their generating sets.

For a linear grammar the states are variables and a rule ``B -> u C v`` is an
edge ``B -> C`` labelled ``φ(u) ⊕ φ(v)ᵀ``; root-to-root path labels are then
exactly the matrices ``φ(u1) ⊕ φ(u2)ᵀ`` over cycles ``A ⇒* u1 A u2``. Restricted
matrix grammars use tuples of variables as states and the k-fold direct sum.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable

from .arith import QMatrix, direct_sum, mat_mul
from .automaton import QuantumAutomaton, phi_of_word
from .grammars import LinearGrammar, RestrictedMatrixGrammar, Word


@dataclass(frozen=True)
class Edge:
    src: Hashable
    label: QMatrix
    dst: Hashable
    # terminal contexts of the rule(s): one (u, v) pair per block
    context: tuple[tuple[Word, Word], ...] = ()


@dataclass(frozen=True)
class GroupAutomaton:
    states: tuple
    root: Hashable
    edges: tuple[Edge, ...]
    dim: int

    def dump(self) -> str:
        """Line-oriented text: one ``src  --[id]-->  dst`` per edge, then the label table."""
        ids: dict[QMatrix, str] = {}
        lines = []
        for e in self.edges:
            mid = ids.setdefault(e.label, f"m{len(ids)}")
            lines.append(f"{_state_str(e.src)}  --[{mid}]-->  {_state_str(e.dst)}")
        lines.append("")
        for m, mid in ids.items():
            lines.append(f"{mid} =")
            lines.extend("  " + " ".join(str(x) for x in row) for row in m.rows)
        return "\n".join(lines) + "\n"


def _state_str(s) -> str:
    return ",".join(s) if isinstance(s, tuple) else str(s)


@dataclass(frozen=True)
class GeneratorSet:
    dim: int
    generators: tuple[QMatrix, ...]
    # for each generator: (tree path to src, edge index, tree path to dst), paths as edge indices
    witnesses: tuple[tuple[tuple[int, ...], int, tuple[int, ...]], ...] = ()
    trimmed: tuple = field(default=())


def _pair_label(q: QuantumAutomaton, u: Word, v: Word) -> QMatrix:
    return direct_sum([phi_of_word(q, u), phi_of_word(q, v).T])


def cycle_automaton_linear(g: LinearGrammar, q: QuantumAutomaton, A: str) -> GroupAutomaton:
    if A not in g.variables:
        raise ValueError(f"{A!r} is not a variable of the grammar")
    edges = []
    for p in g.productions:
        u, C, v = g.split(p)
        if C is None:
            continue
        edges.append(Edge(p.lhs, _pair_label(q, u, v), C, ((u, v),)))
    return GroupAutomaton(tuple(g.variables), A, tuple(edges), 2 * q.dim)


def cycle_automaton_matrix(g: RestrictedMatrixGrammar, q: QuantumAutomaton, state: tuple) -> GroupAutomaton:
    steps = g.step_matrices()
    seen = {state: None}
    queue = deque([state])
    edges = []
    while queue:
        p = queue.popleft()
        for src, ctx, dst in steps:
            if src != p:
                continue
            label = direct_sum([m for u, v in ctx for m in (phi_of_word(q, u), phi_of_word(q, v).T)])
            edges.append(Edge(src, label, dst, ctx))
            if dst not in seen:
                seen[dst] = None
                queue.append(dst)
    return GroupAutomaton(tuple(seen), state, tuple(edges), 2 * q.dim * g.k)


def trim(aut: GroupAutomaton) -> tuple[GroupAutomaton, tuple]:
    """Restrict to states reachable from the root and co-reachable to it."""
    fwd, bwd = {aut.root}, {aut.root}
    changed = True
    while changed:
        changed = False
        for e in aut.edges:
            if e.src in fwd and e.dst not in fwd:
                fwd.add(e.dst)
                changed = True
            if e.dst in bwd and e.src not in bwd:
                bwd.add(e.src)
                changed = True
    keep = fwd & bwd
    states = tuple(s for s in aut.states if s in keep)
    if aut.root not in states:
        states = (aut.root,) + states
    dropped = tuple(s for s in aut.states if s not in keep)
    edges = tuple(e for e in aut.edges if e.src in keep and e.dst in keep)
    return GroupAutomaton(states, aut.root, edges, aut.dim), dropped


def group_generators(aut: GroupAutomaton) -> GeneratorSet:
    """Generators ``t(src)·ℓ·t(dst)ᵀ`` over the non-tree edges of a BFS spanning tree.

    ``t(p)`` is the label of the tree path from the root to ``p``; labels are
    orthogonal so inverses are transposes. The generated group equals the group
    generated by the root-loop monoid.
    """
    aut, dropped = trim(aut)
    index = {s: i for i, s in enumerate(aut.states)}
    order = sorted(range(len(aut.edges)), key=lambda k: (index[aut.edges[k].src], index[aut.edges[k].dst], k))
    tree: dict = {aut.root: (QMatrix.identity(aut.dim), ())}
    tree_edges = set()
    queue = deque([aut.root])
    while queue:
        p = queue.popleft()
        for k in order:
            e = aut.edges[k]
            if e.src == p and e.dst not in tree:
                t, path = tree[p]
                tree[e.dst] = (mat_mul(t, e.label), path + (k,))
                tree_edges.add(k)
                queue.append(e.dst)
    gens: list[QMatrix] = []
    wits = []
    seen = set()
    ident = QMatrix.identity(aut.dim)
    for k in order:
        if k in tree_edges:
            continue
        e = aut.edges[k]
        ts, ps = tree[e.src]
        td, pd = tree[e.dst]
        gm = mat_mul(mat_mul(ts, e.label), td.T)
        if gm == ident or gm in seen:
            continue
        seen.add(gm)
        gens.append(gm)
        wits.append((ps, k, pd))
    return GeneratorSet(aut.dim, tuple(gens), tuple(wits), dropped)


def root_loops(aut: GroupAutomaton, max_edges: int) -> list[tuple[tuple[int, ...], QMatrix]]:
    """All root-to-root paths with at most ``max_edges`` edges, with their labels."""
    out = []
    frontier = [(aut.root, (), QMatrix.identity(aut.dim))]
    for _ in range(max_edges):
        nxt = []
        for state, path, m in frontier:
            for k, e in enumerate(aut.edges):
                if e.src == state:
                    item = (e.dst, path + (k,), mat_mul(m, e.label))
                    nxt.append(item)
                    if e.dst == aut.root:
                        out.append((item[1], item[2]))
        frontier = nxt
    return out
