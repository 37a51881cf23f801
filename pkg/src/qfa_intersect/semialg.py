"""Existentially quantified semialgebraic sets of square matrices.

A set is ``{X : ∃ bound blocks . body}`` where the body is an and/or tree of
atoms ``p = 0`` / ``p > 0`` over the entries of the free block ``X`` and of
the bound blocks. Nothing is ever negated or eliminated here; the decision
step hands the formula to an external real-arithmetic solver.

Sets optionally carry ``known`` members, each with bound-block values that
satisfy the body. When every member is known (finite sets built from finite
pieces) ``known_complete`` is set and membership is decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from .arith import QMatrix, direct_sum, entry_rename, is_orthogonal, mat_mul, permutation_table

Var = tuple[str, int, int]
Mono = tuple[tuple[Var, int], ...]
FREE = "X"
KNOWN_CAP = 5000


class NPoly:
    """Polynomial over named matrix-entry variables ``(block, i, j)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, Fraction] | None = None):
        object.__setattr__(self, "terms", {m: Fraction(c) for m, c in (terms or {}).items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("NPoly is immutable")

    @classmethod
    def _raw(cls, terms: dict) -> "NPoly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def const(cls, c) -> "NPoly":
        c = Fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, v: Var) -> "NPoly":
        return cls._raw({((v, 1),): Fraction(1)})

    def is_const(self) -> bool:
        return all(m == () for m in self.terms)

    def const_value(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[Var]:
        return {v for m in self.terms for v, _ in m}

    @property
    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def __eq__(self, other):
        return isinstance(other, NPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = other if isinstance(other, NPoly) else NPoly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return NPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = other if isinstance(other, NPoly) else NPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return NPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, NPoly):
            c = Fraction(other)
            return NPoly._raw({m: v * c for m, v in self.terms.items()} if c else {})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return NPoly._raw(out)

    __rmul__ = __mul__

    def evaluate(self, value: Callable[[Var], Fraction | None]) -> Fraction | None:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                x = value(v)
                if x is None:
                    return None
                t *= x ** e
            total += t
        return total

    def substitute(self, images: Callable[[Var], "NPoly | None"]) -> "NPoly":
        """Replace each variable ``v`` by ``images(v)`` (``None`` keeps it)."""
        out = NPoly.const(0)
        cache: dict = {}
        for m, c in self.terms.items():
            t = NPoly.const(c)
            for v, e in m:
                if v not in cache:
                    img = images(v)
                    cache[v] = img if img is not None else NPoly.var(v)
                for _ in range(e):
                    t = t * cache[v]
            out = out + t
        return out

    def rename_vars(self, fn: Callable[[Var], Var]) -> "NPoly":
        out: dict = {}
        for m, c in self.terms.items():
            nm = tuple(sorted((fn(v), e) for v, e in m))
            out[nm] = out.get(nm, 0) + c
        return NPoly._raw({m: c for m, c in out.items() if c})

    def format(self, name: Callable[[Var], str] = None) -> str:
        name = name or var_name
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m)):
            c = self.terms[m]
            mono = "*".join(name(v) if e == 1 else f"{name(v)}^{e}" for v, e in m)
            mag = abs(c)
            body = (mono if mag == 1 else f"{mag}*{mono}") if mono else str(mag)
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            text += f" {s} {b}"
        return text


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def var_name(v: Var) -> str:
    return f"{v[0]}_{v[1] + 1}_{v[2] + 1}"


# -- formula trees ------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    poly: NPoly
    rel: str  # "=" or ">"


@dataclass(frozen=True)
class And:
    items: tuple


@dataclass(frozen=True)
class Or:
    items: tuple


@dataclass(frozen=True)
class Const:
    value: bool


TRUE = Const(True)
FALSE = Const(False)
Node = Union[Atom, And, Or, Const]


def atom(p: NPoly, rel: str = "=") -> Node:
    if rel not in ("=", ">"):
        raise ValueError(f"relation must be '=' or '>', got {rel!r}")
    if p.is_const():
        c = p.const_value()
        return TRUE if (c == 0 if rel == "=" else c > 0) else FALSE
    return Atom(p, rel)


def conj(items: Iterable[Node]) -> Node:
    flat = []
    for it in items:
        if it == FALSE:
            return FALSE
        if it == TRUE:
            continue
        flat.extend(it.items if isinstance(it, And) else [it])
    if not flat:
        return TRUE
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(items: Iterable[Node]) -> Node:
    flat = []
    for it in items:
        if it == TRUE:
            return TRUE
        if it == FALSE:
            continue
        flat.extend(it.items if isinstance(it, Or) else [it])
    if not flat:
        return FALSE
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def map_polys(node: Node, fn: Callable[[NPoly], NPoly]) -> Node:
    if isinstance(node, Atom):
        return atom(fn(node.poly), node.rel)
    if isinstance(node, And):
        return conj(map_polys(n, fn) for n in node.items)
    if isinstance(node, Or):
        return disj(map_polys(n, fn) for n in node.items)
    return node


def eval3(node: Node, value: Callable[[Var], Fraction | None]) -> bool | None:
    """Three-valued evaluation: ``None`` when a needed variable has no value."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Atom):
        v = node.poly.evaluate(value)
        if v is None:
            return None
        return v == 0 if node.rel == "=" else v > 0
    results = [eval3(n, value) for n in node.items]
    if isinstance(node, And):
        if any(r is False for r in results):
            return False
        return True if all(r is True for r in results) else None
    if any(r is True for r in results):
        return True
    return False if all(r is False for r in results) else None


def atoms(node: Node) -> list[Atom]:
    if isinstance(node, Atom):
        return [node]
    if isinstance(node, (And, Or)):
        return [a for n in node.items for a in atoms(n)]
    return []


def node_size(node: Node) -> int:
    if isinstance(node, (And, Or)):
        return 1 + sum(node_size(n) for n in node.items)
    return 1


def node_to_json(node: Node, name=var_name):
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Atom):
        return {"atom": node.poly.format(name), "rel": node.rel}
    tag = "and" if isinstance(node, And) else "or"
    return {tag: [node_to_json(n, name) for n in node.items]}


def node_to_text(node: Node, name=var_name, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(node, Const):
        return pad + ("true" if node.value else "false")
    if isinstance(node, Atom):
        return f"{pad}{node.poly.format(name)} {node.rel} 0"
    tag = "and" if isinstance(node, And) else "or"
    return "\n".join([pad + tag] + [node_to_text(n, name, indent + 1) for n in node.items])


# -- sets -------------------------------------------------------------------------

Witness = dict  # block name -> QMatrix
Member = tuple  # (QMatrix, Witness)


@dataclass(frozen=True)
class SemiAlgSet:
    dim: int
    blocks: tuple[tuple[str, int], ...]
    body: Node
    known: tuple[Member, ...] | None = None
    known_complete: bool = False

    @property
    def is_empty_formula(self) -> bool:
        return self.body == FALSE

    def members(self) -> list[QMatrix] | None:
        """Exact member list when it is known to be complete, else ``None``."""
        if self.body == FALSE:
            return []
        if self.known_complete and self.known is not None:
            return list(dict.fromkeys(m for m, _ in self.known))
        return None

    def variables(self) -> list[Var]:
        out = [(FREE, i, j) for i in range(self.dim) for j in range(self.dim)]
        for name, d in self.blocks:
            out.extend((name, i, j) for i in range(d) for j in range(d))
        return out

    def canonical(self) -> "SemiAlgSet":
        """Rename bound blocks to ``B0, B1, ...`` in declaration order."""
        table = {name: f"B{k}" for k, (name, _) in enumerate(self.blocks)}
        fn = lambda v: (table.get(v[0], v[0]), v[1], v[2])
        known = None
        if self.known is not None:
            known = tuple((m, {table[k]: w[k] for k in w if k in table}) for m, w in self.known)
        return SemiAlgSet(
            self.dim,
            tuple((table[n], d) for n, d in self.blocks),
            map_polys(self.body, lambda p: p.rename_vars(fn)),
            known,
            self.known_complete,
        )

    def to_json(self) -> dict:
        c = self.canonical()
        return {
            "dim": c.dim,
            "bound_blocks": [{"name": n, "dim": d} for n, d in c.blocks],
            "body": node_to_json(c.body),
            "size": node_size(c.body),
        }

    def pretty(self) -> str:
        c = self.canonical()
        head = " ".join(f"∃{n}[{d}x{d}]" for n, d in c.blocks)
        return (head + " :\n" if head else "") + node_to_text(c.body) + "\n"


def _known(items: Iterable[Member]) -> tuple[tuple[Member, ...] | None, bool]:
    out = []
    seen = set()
    for m, w in items:
        if m in seen:
            continue
        seen.add(m)
        out.append((m, w))
        if len(out) > KNOWN_CAP:
            return None, False
    return tuple(out), True


def _free_to(block: str, offset: int = 0) -> Callable[[Var], Var]:
    return lambda v: (block, v[1] + offset, v[2] + offset) if v[0] == FREE else v


def _prefix(prefix: str) -> Callable[[Var], Var]:
    return lambda v: v if v[0] == FREE else (prefix + v[0], v[1], v[2])


def _relabel(s: SemiAlgSet, prefix: str, free_block: str | None = None) -> Node:
    pre = _prefix(prefix)
    if free_block is None:
        fn = pre
    else:
        fn = lambda v: (free_block, v[1], v[2]) if v[0] == FREE else pre(v)
    return map_polys(s.body, lambda p: p.rename_vars(fn))


def _prefixed_blocks(s: SemiAlgSet, prefix: str) -> tuple:
    return tuple((prefix + n, d) for n, d in s.blocks)


def prefixed(w: Mapping, prefix: str) -> dict:
    return {prefix + k: v for k, v in w.items()}


def _var_matrix(block: str, n: int, offset: int = 0) -> list[list[NPoly]]:
    return [[NPoly.var((block, offset + i, offset + j)) for j in range(n)] for i in range(n)]


def _const_matrix(m: QMatrix) -> list[list[NPoly]]:
    return [[NPoly.const(m[i, j]) for j in range(m.dim)] for i in range(m.dim)]


def _mmul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = NPoly.const(0)
            for t in range(n):
                if a[i][t].terms and b[t][j].terms:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def _mT(a):
    return [list(r) for r in zip(*a)]


def _equal_free(expr, n: int) -> Node:
    """Atoms ``X[i,j] - expr[i][j] = 0``."""
    return conj(atom(NPoly.var((FREE, i, j)) - expr[i][j]) for i in range(n) for j in range(n))


def _substitute_free(body: Node, expr) -> Node:
    """Replace the free block entries by the polynomial matrix ``expr``."""
    return map_polys(body, lambda p: p.substitute(lambda v: expr[v[1]][v[2]] if v[0] == FREE else None))


def _singleton(s: SemiAlgSet) -> QMatrix | None:
    if s.blocks or not s.known_complete or s.known is None or len(s.known) != 1:
        return None
    m = s.known[0][0]
    return m if is_orthogonal(m) else None


# -- constructors -----------------------------------------------------------------

def empty(n: int) -> SemiAlgSet:
    return SemiAlgSet(n, (), FALSE, (), True)


def whole(n: int) -> SemiAlgSet:
    return SemiAlgSet(n, (), TRUE, None, False)


def _poly_to_npoly(p, n: int, block: str = FREE) -> NPoly:
    terms = {}
    for m, c in p.terms.items():
        mono = tuple(sorted(((block, k // n, k % n), e) for k, e in enumerate(m) if e))
        terms[mono] = c
    return NPoly._raw(terms)


def from_variety(I) -> SemiAlgSet:
    """The zero set of a :class:`PolyIdeal` over ``n²`` entry variables."""
    n = I.n
    if not n:
        raise ValueError("ideal does not live on square-matrix entries")
    basis = I.basis()
    body = conj(atom(_poly_to_npoly(p, n)) for p in basis)
    if I.points is not None:
        known, complete = _known((m, {}) for m in I.points)
        return SemiAlgSet(n, (), body, known, complete)
    return SemiAlgSet(n, (), body)


def from_points(points: Sequence[QMatrix]) -> SemiAlgSet:
    if not points:
        raise ValueError("from_points needs at least one point (use empty(n))")
    n = points[0].dim
    pts = list(dict.fromkeys(points))
    body = disj(conj(atom(NPoly.var((FREE, i, j)) - m[i, j]) for i in range(n) for j in range(n)) for m in pts)
    known, complete = _known((m, {}) for m in pts)
    return SemiAlgSet(n, (), body, known, complete)


# -- calculus -------------------------------------------------------------------------

def _check_dims(sets: Sequence[SemiAlgSet]):
    dims = {s.dim for s in sets}
    if len(dims) > 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")


def union(*sets: SemiAlgSet) -> SemiAlgSet:
    """Disjunction; bound blocks of the ``i``-th set are renamed apart with prefix ``u{i}.``."""
    if len(sets) == 1 and isinstance(sets[0], (list, tuple)):
        sets = tuple(sets[0])
    if not sets:
        raise ValueError("union of nothing")
    _check_dims(sets)
    live = [(i, s) for i, s in enumerate(sets) if s.body != FALSE]
    blocks = tuple(b for i, s in live for b in _prefixed_blocks(s, f"u{i}."))
    body = disj(_relabel(s, f"u{i}.") for i, s in live)
    known, complete = None, False
    if all(s.known is not None for _, s in live):
        known, complete = _known((m, prefixed(w, f"u{i}.")) for i, s in live for m, w in s.known)
        complete = complete and all(s.known_complete for _, s in live)
    return SemiAlgSet(sets[0].dim, blocks, body, known, complete)


def union_witness(index: int, w: Mapping) -> dict:
    return prefixed(w, f"u{index}.")


def product(a: SemiAlgSet, b: SemiAlgSet) -> SemiAlgSet:
    """``{Y·Z : Y ∈ a, Z ∈ b}``; an orthogonal singleton factor is folded in by substitution."""
    _check_dims([a, b])
    n = a.dim
    if a.body == FALSE or b.body == FALSE:
        return empty(n)
    X = _var_matrix(FREE, n)
    mb, ma = _singleton(b), _singleton(a)
    blocks = _prefixed_blocks(a, "a.") + _prefixed_blocks(b, "b.")
    if mb is not None:
        body = _substitute_free(_relabel(a, "a."), _mmul(X, _mT(_const_matrix(mb))))
    elif ma is not None:
        body = _substitute_free(_relabel(b, "b."), _mmul(_mT(_const_matrix(ma)), X))
    else:
        Y, Z = _var_matrix("Y", n), _var_matrix("Z", n)
        body = conj([_relabel(a, "a.", "Y"), _relabel(b, "b.", "Z"), _equal_free(_mmul(Y, Z), n)])
        blocks = blocks + (("Y", n), ("Z", n))
    known, complete = None, False
    if a.known is not None and b.known is not None:
        known, complete = _known(
            (mat_mul(x, z), product_witness(wx, wz, x, z)) for x, wx in a.known for z, wz in b.known
        )
        complete = complete and a.known_complete and b.known_complete
    return SemiAlgSet(n, blocks, body, known, complete)


def product_witness(wa: Mapping, wb: Mapping, y: QMatrix, z: QMatrix) -> dict:
    return {**prefixed(wa, "a."), **prefixed(wb, "b."), "Y": y, "Z": z}


def product_all(sets: Sequence[SemiAlgSet]) -> SemiAlgSet:
    out = sets[0]
    for s in sets[1:]:
        out = product(out, s)
    return out


def sandwich(pairs: SemiAlgSet, b: SemiAlgSet) -> SemiAlgSet:
    """``{P·Y·Q : P ⊕ Q ∈ pairs, Y ∈ b}`` with ``pairs`` living in dimension ``2n``."""
    n = b.dim
    if pairs.dim != 2 * n:
        raise ValueError(f"pair set of dim {pairs.dim} against a set of dim {n}")
    if pairs.body == FALSE or b.body == FALSE:
        return empty(n)
    X = _var_matrix(FREE, n)
    mb = _singleton(b)
    blocks = _prefixed_blocks(pairs, "a.") + _prefixed_blocks(b, "b.")
    single_pair = None
    if not pairs.blocks and pairs.known_complete and pairs.known is not None and len(pairs.known) == 1:
        pm = pairs.known[0][0]
        P, Q = pm.block(0, n), pm.block(n, n)
        if is_orthogonal(P) and is_orthogonal(Q):
            single_pair = (P, Q)
    if single_pair is not None:
        P, Q = single_pair
        expr = _mmul(_mmul(_mT(_const_matrix(P)), X), _mT(_const_matrix(Q)))
        body = _substitute_free(_relabel(b, "b."), expr)
    else:
        W11 = _var_matrix("W", n, 0)
        W22 = _var_matrix("W", n, n)
        parts = [_relabel(pairs, "a.", "W")]
        if mb is not None:
            parts.append(_equal_free(_mmul(_mmul(W11, _const_matrix(mb)), W22), n))
        else:
            Y = _var_matrix("Y", n)
            parts += [_relabel(b, "b.", "Y"), _equal_free(_mmul(_mmul(W11, Y), W22), n)]
            blocks = blocks + (("Y", n),)
        body = conj(parts)
        blocks = blocks + (("W", 2 * n),)
    known, complete = None, False
    if pairs.known is not None and b.known is not None:
        known, complete = _known(
            (mat_mul(mat_mul(pm.block(0, n), y), pm.block(n, n)), sandwich_witness(wp, wy, pm, y))
            for pm, wp in pairs.known for y, wy in b.known
        )
        complete = complete and pairs.known_complete and b.known_complete
    return SemiAlgSet(n, blocks, body, known, complete)


def sandwich_witness(wp: Mapping, wb: Mapping, pair: QMatrix, y: QMatrix) -> dict:
    return {**prefixed(wp, "a."), **prefixed(wb, "b."), "W": pair, "Y": y}


def dsum(parts: Sequence[SemiAlgSet]) -> SemiAlgSet:
    """``{X1 ⊕ ... ⊕ Xk : Xi ∈ parts[i]}``."""
    if not parts:
        raise ValueError("direct sum of an empty list")
    total = sum(p.dim for p in parts)
    if any(p.body == FALSE for p in parts):
        return empty(total)
    items = []
    blocks: tuple = ()
    offsets = []
    off = 0
    for k, p in enumerate(parts):
        offsets.append(off)
        pre = _prefix(f"d{k}.")
        shift = off
        fn = lambda v, pre=pre, shift=shift: (FREE, v[1] + shift, v[2] + shift) if v[0] == FREE else pre(v)
        items.append(map_polys(p.body, lambda q, fn=fn: q.rename_vars(fn)))
        blocks += _prefixed_blocks(p, f"d{k}.")
        off += p.dim
    owner = []
    for k, p in enumerate(parts):
        owner.extend([k] * p.dim)
    zeros = [atom(NPoly.var((FREE, i, j))) for i in range(total) for j in range(total) if owner[i] != owner[j]]
    body = conj(items + zeros)
    known, complete = None, False
    if all(p.known is not None for p in parts):
        combos = [((), {})]
        for k, p in enumerate(parts):
            combos = [(ms + (m,), {**w, **prefixed(wm, f"d{k}.")}) for ms, w in combos for m, wm in p.known]
            if len(combos) > KNOWN_CAP:
                combos = None
                break
        if combos is not None:
            known, complete = _known((direct_sum(list(ms)), w) for ms, w in combos)
            complete = complete and all(p.known_complete for p in parts)
    return SemiAlgSet(total, blocks, body, known, complete)


def dsum_witness(ws: Sequence[Mapping]) -> dict:
    out = {}
    for k, w in enumerate(ws):
        out.update(prefixed(w, f"d{k}."))
    return out


def blocks_product(a: SemiAlgSet, block_dim: int, transposed: Sequence[bool] | None = None) -> SemiAlgSet:
    """``{Z1·Z2·...·Zk : X1 ⊕ ... ⊕ Xk ∈ a}`` with ``Zi = Xiᵀ`` where ``transposed[i]``."""
    if a.dim % block_dim:
        raise ValueError("block size does not divide the dimension")
    k = a.dim // block_dim
    flags = list(transposed or [False] * k)
    if len(flags) != k:
        raise ValueError("one transpose flag per block")
    n = block_dim
    if a.body == FALSE:
        return empty(n)
    expr = None
    for i in range(k):
        Wi = _var_matrix("W", n, i * n)
        if flags[i]:
            Wi = _mT(Wi)
        expr = Wi if expr is None else _mmul(expr, Wi)
    body = conj([_relabel(a, "a.", "W"), _equal_free(expr, n)])
    blocks = _prefixed_blocks(a, "a.") + (("W", a.dim),)
    known, complete = None, False
    if a.known is not None:
        known, complete = _known(
            (_block_prod(m, n, flags), blocks_product_witness(w, m)) for m, w in a.known
        )
        complete = complete and a.known_complete
    return SemiAlgSet(n, blocks, body, known, complete)


def _block_prod(m: QMatrix, n: int, flags: Sequence[bool]) -> QMatrix:
    out = QMatrix.identity(n)
    for i, f in enumerate(flags):
        b = m.block(i * n, n)
        out = mat_mul(out, b.T if f else b)
    return out


def blocks_product_witness(wa: Mapping, m: QMatrix) -> dict:
    return {**prefixed(wa, "a."), "W": m}


def rename(pi, a: SemiAlgSet) -> SemiAlgSet:
    """``{B : B[i,j] = A[pi(i,j)] for some A ∈ a}``."""
    table = permutation_table(pi, a.dim)
    # A[k,l] = B[pi^-1(k,l)]
    inv = {v: k for k, v in table.items()}
    fn = lambda v: (FREE,) + inv[(v[1], v[2])] if v[0] == FREE else v
    body = map_polys(a.body, lambda p: p.rename_vars(fn))
    known = None
    if a.known is not None:
        known = tuple((entry_rename(table, m), w) for m, w in a.known)
    return SemiAlgSet(a.dim, a.blocks, body, known, a.known_complete)


# -- membership --------------------------------------------------------------------

def _assignment(m: QMatrix, witnesses: Mapping | None):
    def value(v: Var):
        if v[0] == FREE:
            return m[v[1], v[2]]
        if witnesses is not None and v[0] in witnesses:
            w = witnesses[v[0]]
            return w[v[1], v[2]]
        return None
    return value


def probe(a: SemiAlgSet, m: QMatrix, witnesses: Mapping | None = None) -> bool | None:
    """Membership of ``m``: True, False, or None when it cannot be settled.

    With ``witnesses`` (bound-block values) the body is evaluated exactly.
    Without, recorded members are searched; a set without bound blocks is
    always evaluated exactly.
    """
    if m.dim != a.dim:
        raise ValueError(f"probe of dim {m.dim} against a set of dim {a.dim}")
    if witnesses is not None or not a.blocks:
        r = eval3(a.body, _assignment(m, witnesses))
        if r is not None:
            return r
    if a.known is not None:
        for km, kw in a.known:
            if km == m and eval3(a.body, _assignment(m, kw)) is True:
                return True
        if a.known_complete:
            return False
    return None
