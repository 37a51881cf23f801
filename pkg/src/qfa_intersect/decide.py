"""Emptiness of ``L(G) ∩ {w : ‖s·φ(w)·P‖² > λ}``.

Two branches run side by side. The symbolic branch builds the closure of
``φ(L)``, asks whether it meets the open set ``{X : ‖sXP‖² > λ}`` and hands
that existential sentence to an external real-arithmetic solver in SMT-LIB
form. The brute-force branch looks for a word of bounded length. The report
reconciles both; nonemptiness is only ever reported on exact evidence.
"""

from __future__ import annotations

import os
import shlex
import shutil
import subprocess
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Sequence

from .automaton import QuantumAutomaton, accept_prob, acceptance_of_matrix
from .grammars import EnumerationBudgetError, GrammarSpec, enumerate_words, fmt_word, shortlex
from .pipeline import ClosureConfig, ClosureError, ClosureReport, closure
from .groebner import ResourceError
from .semialg import FREE, And, Atom, Const, NPoly, SemiAlgSet, atom, conj, eval3, var_name

EMPTY, NONEMPTY, INCONCLUSIVE = "EMPTY", "NONEMPTY", "INCONCLUSIVE"
EXIT_CODES = {EMPTY: 0, NONEMPTY: 1, INCONCLUSIVE: 2}
EXIT_ERROR, EXIT_CONFLICT = 3, 4


@dataclass
class RunConfig:
    mode: str = "both"
    degree_cap: int = 4
    chain_cap: int | None = None
    max_len: int = 16
    smt_cmd: str | None = None
    timeout: float = 60.0
    node_cap: int = 2_000_000

    def __post_init__(self):
        if self.mode not in ("symbolic", "brute", "both"):
            raise ValueError(f"mode must be symbolic, brute or both, got {self.mode!r}")
        if self.degree_cap < 1 or self.max_len < 0 or self.timeout <= 0:
            raise ValueError("caps and timeout must be positive")
        if self.chain_cap is not None and self.chain_cap < 1:
            raise ValueError("chain cap must be positive")


def default_solver() -> str | None:
    cmd = os.environ.get("QFA_SMT_CMD")
    if cmd:
        return cmd
    if shutil.which("z3"):
        return "z3 -in"
    return None


# -- the query ---------------------------------------------------------------------

@dataclass(frozen=True)
class Query:
    closure: SemiAlgSet
    acceptance: NPoly
    threshold: Fraction

    @property
    def body(self):
        return conj([self.closure.body, atom(self.acceptance - self.threshold, ">")])


def acceptance_poly(q: QuantumAutomaton) -> NPoly:
    """``‖s·X·P‖²`` expanded over the entries of the free block."""
    n = q.dim
    total = NPoly.const(0)
    for j in range(n):
        comp = NPoly.const(0)
        for i in range(n):
            for t in range(n):
                c = q.s[i] * q.P[t, j]
                if c:
                    comp = comp + NPoly.var((FREE, i, t)) * c
        total = total + comp * comp
    return total


def build_decision_query(phi_closure: SemiAlgSet, q: QuantumAutomaton) -> Query:
    if phi_closure.dim != q.dim:
        raise ValueError(f"closure of dim {phi_closure.dim} for an automaton of dim {q.dim}")
    return Query(phi_closure.canonical(), acceptance_poly(q), q.threshold)


def _smt_num(c: Fraction) -> str:
    mag = abs(c)
    text = f"{mag.numerator}.0" if mag.denominator == 1 else f"(/ {mag.numerator}.0 {mag.denominator}.0)"
    return f"(- {text})" if c < 0 else text


def _smt_poly(p: NPoly) -> str:
    if not p.terms:
        return "0.0"
    parts = []
    for m in sorted(p.terms, key=lambda m: (-sum(e for _, e in m), m)):
        c = p.terms[m]
        factors = [var_name(v) for v, e in m for _ in range(e)]
        if c != 1 or not factors:
            factors.insert(0, _smt_num(c))
        parts.append(factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})")
    return parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})"


def _smt_node(node) -> str:
    if isinstance(node, Const):
        return "true" if node.value else "false"
    if isinstance(node, Atom):
        return f"({node.rel} {_smt_poly(node.poly)} 0.0)"
    tag = "and" if isinstance(node, And) else "or"
    return f"({tag} {' '.join(_smt_node(n) for n in node.items)})"


def emit_smtlib(query: Query) -> str:
    """Deterministic SMT-LIB 2 text: one real constant per entry, asserts, one check-sat."""
    lines = ["(set-logic QF_NRA)"]
    for v in query.closure.variables():
        lines.append(f"(declare-const {var_name(v)} Real)")
    body = query.body
    items = body.items if isinstance(body, And) else (body,)
    for it in items:
        lines.append(f"(assert {_smt_node(it)})")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def run_solver(text: str, command: str | Sequence[str] | None, timeout: float) -> tuple[str, str]:
    """Run the solver on ``text``; returns ``(status, raw stdout)``.

    Status is ``sat``, ``unsat``, ``unknown``, ``timeout`` or ``not-run``
    (no command, or the command could not be started).
    """
    if not command:
        return "not-run", ""
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    try:
        proc = subprocess.run(argv, input=text, capture_output=True, text=True, timeout=timeout)
    except subprocess.TimeoutExpired:
        return "timeout", ""
    except OSError:
        return "not-run", ""
    out = proc.stdout
    tokens = out.split()
    status = tokens[0] if tokens else ""
    return (status if status in ("sat", "unsat", "unknown") else "unknown"), out


# -- model recheck --------------------------------------------------------------------

def _sexprs(text: str):
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    stack: list = [[]]
    for t in tokens:
        if t == "(":
            stack.append([])
        elif t == ")":
            if len(stack) == 1:
                raise ValueError("unbalanced model text")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(t)
    return stack[0]


def _value(e) -> Fraction:
    if isinstance(e, str):
        try:
            return Fraction(Decimal(e))
        except InvalidOperation:
            raise ValueError(f"not a rational literal: {e}") from None
    head, *args = e
    vals = [_value(a) for a in args]
    if head == "/" and len(vals) == 2:
        return vals[0] / vals[1]
    if head == "-":
        return -vals[0] if len(vals) == 1 else vals[0] - sum(vals[1:])
    if head == "+":
        return sum(vals, Fraction(0))
    if head == "*":
        out = Fraction(1)
        for v in vals:
            out *= v
        return out
    raise ValueError(f"non-rational model value ({head} ...)")


def parse_model(text: str) -> dict[str, Fraction] | None:
    """Exact values of ``define-fun`` entries; ``None`` if any value is not a rational."""
    try:
        exprs = _sexprs(text)
    except ValueError:
        return None
    out = {}

    def walk(e):
        if isinstance(e, list):
            if len(e) == 5 and e[0] == "define-fun" and e[2] == [] and e[3] == "Real":
                out[e[1]] = _value(e[4])
            else:
                for x in e:
                    walk(x)
    try:
        walk(exprs)
    except (ValueError, ZeroDivisionError, TypeError):
        return None
    return out


def recheck_model(query: Query, model: dict[str, Fraction]) -> bool:
    """Exact check that the model satisfies the whole query."""
    return eval3(query.body, lambda v: model.get(var_name(v))) is True


# -- brute force ----------------------------------------------------------------------

def brute_force(g: GrammarSpec, q: QuantumAutomaton, max_len: int, node_cap: int = 2_000_000):
    """First word (shortlex) of ``L(g)`` up to ``max_len`` accepted strictly above λ, with its value."""
    for w in shortlex(enumerate_words(g, max_len, node_cap)):
        p = accept_prob(q, w)
        if p > q.threshold:
            return w, p
    return None


# -- decision -----------------------------------------------------------------------

@dataclass
class DecisionReport:
    verdict: str
    witness: tuple | None = None
    witness_prob: Fraction | None = None
    solver_outcome: str = "not-run"
    certified: bool = False
    cross_check: str = "agree"
    symbolic: str = "not-run"
    brute: str = "not-run"
    notes: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CONFLICT if self.cross_check == "conflict" else EXIT_CODES[self.verdict]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": None if self.witness is None else {
                "word": fmt_word(self.witness),
                "symbols": list(self.witness),
                "accept_prob": str(self.witness_prob),
            },
            "solver_outcome": self.solver_outcome,
            "certified": self.certified,
            "cross_check": self.cross_check,
            "branches": {"symbolic": self.symbolic, "brute": self.brute},
            "notes": list(self.notes),
        }


@dataclass
class _Symbolic:
    verdict: str = INCONCLUSIVE
    certified: bool = False
    solver: str = "not-run"
    notes: list = field(default_factory=list)
    report: ClosureReport | None = None


def _norm_bound_empty(q: QuantumAutomaton) -> str | None:
    if q.threshold >= 1:
        return "threshold ≥ 1: acceptance values never exceed 1"
    if q.threshold >= 0 and q.P.is_zero():
        return "projection is zero and threshold ≥ 0"
    return None


def symbolic_branch(g: GrammarSpec, q: QuantumAutomaton, cfg: RunConfig) -> _Symbolic:
    out = _Symbolic()
    reason = _norm_bound_empty(q)
    if reason:
        out.verdict, out.certified = EMPTY, True
        out.notes.append(reason)
        return out
    try:
        rep = closure(g, q, ClosureConfig(cfg.degree_cap, cfg.chain_cap))
    except (ClosureError, ResourceError) as exc:
        out.notes.append(f"closure failed: {exc}")
        return out
    out.report = rep
    if not rep.certified:
        out.notes.append("closure not certified (degree or chain cap reached)")
    query = build_decision_query(rep.formula, q)
    if rep.formula.is_empty_formula:
        out.verdict, out.certified = EMPTY, True
        out.notes.append("language is empty")
        return out
    members = rep.formula.members()
    if members is not None:
        # ground case: no solver needed
        hit = any(acceptance_of_matrix(q, m) > q.threshold for m in members)
        out.notes.append(f"finite closure with {len(members)} members evaluated exactly")
        if rep.certified:
            out.verdict, out.certified = (NONEMPTY if hit else EMPTY), True
        return out
    text = emit_smtlib(query) + "(get-model)\n"
    status, raw = run_solver(text, cfg.smt_cmd if cfg.smt_cmd is not None else default_solver(), cfg.timeout)
    out.solver = status
    if status == "unsat" and rep.certified:
        out.verdict, out.certified = EMPTY, True
    elif status == "sat" and rep.certified:
        model = parse_model(raw)
        if model is not None and recheck_model(query, model):
            out.verdict, out.certified = NONEMPTY, True
        else:
            out.notes.append("solver model could not be rechecked exactly")
    elif status in ("unknown", "timeout", "not-run"):
        out.notes.append(f"solver outcome {status}")
    return out


def decide(q: QuantumAutomaton, g: GrammarSpec, config: RunConfig | None = None) -> DecisionReport:
    cfg = config or RunConfig()
    sym = _Symbolic()
    brute_res, brute_note, brute_ran = None, None, False

    def run_brute():
        try:
            return brute_force(g, q, cfg.max_len, cfg.node_cap), None
        except EnumerationBudgetError as exc:
            return None, str(exc)

    # both branches are joined so the report does not depend on scheduling
    with ThreadPoolExecutor(max_workers=2) as pool:
        fs = pool.submit(symbolic_branch, g, q, cfg) if cfg.mode in ("symbolic", "both") else None
        fb = pool.submit(run_brute) if cfg.mode in ("brute", "both") else None
        if fs is not None:
            sym = fs.result()
        if fb is not None:
            brute_res, brute_note = fb.result()
            brute_ran = brute_note is None
    notes = list(sym.notes)
    if brute_note:
        notes.append(brute_note)
    rep = DecisionReport(INCONCLUSIVE, solver_outcome=sym.solver, notes=notes)
    rep.symbolic = sym.verdict if fs is not None else "not-run"
    if fb is None:
        rep.brute = "not-run"
    elif brute_res is not None:
        rep.brute = NONEMPTY
    else:
        rep.brute = f"no witness up to length {cfg.max_len}" if brute_ran else "budget exceeded"
    if brute_res is not None:
        rep.witness, rep.witness_prob = brute_res
    if brute_res is not None and sym.verdict == EMPTY:
        rep.verdict, rep.certified, rep.cross_check = NONEMPTY, False, "conflict"
        rep.notes.append("certified EMPTY contradicted by an exactly verified witness")
    elif brute_res is not None:
        rep.verdict, rep.certified = NONEMPTY, True
        rep.cross_check = "agree" if sym.verdict == NONEMPTY else "brute-only"
    elif sym.verdict in (EMPTY, NONEMPTY):
        rep.verdict, rep.certified = sym.verdict, sym.certified
        rep.cross_check = "agree" if (sym.verdict == EMPTY and fb is not None) else "symbolic-only"
    else:
        rep.cross_check = "brute-only" if fb is not None else "symbolic-only"
    return rep
