"""Command line entry point: ``qfa-intersect <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import automaton, grammars
from .arith import format_rational
from .automaton import AutomatonError, QuantumAutomaton
from .decide import EXIT_ERROR, DecisionReport, RunConfig, decide
from .grammars import EnumerationBudgetError, GrammarError, GrammarSpec
from .groebner import ResourceError
from .pipeline import ClosureConfig, ClosureError, closure


class InputError(ValueError):
    pass


def load_qfa(path, threshold=None) -> QuantumAutomaton:
    q = automaton.load(path)
    if threshold is not None:
        q = automaton.with_threshold(q, threshold)
    problems = automaton.validate(q)
    if problems:
        raise InputError(f"{path}: " + "; ".join(problems))
    return q


def check_alphabet(q: QuantumAutomaton, g: GrammarSpec):
    extra = sorted(set(g.terminals) - set(q.alphabet))
    if extra:
        raise InputError(f"grammar terminals {extra} are not in the automaton alphabet")


def parse_word(text: str) -> tuple[str, ...]:
    """``"abc"`` is three letters; space-separated text names multi-character symbols."""
    text = text.strip()
    if text in grammars.EPSILON_TOKENS or not text:
        return ()
    return tuple(text.split()) if " " in text else tuple(text)


# -- commands ---------------------------------------------------------------------------

def cmd_validate(paths) -> list[dict]:
    out = []
    for p in paths:
        entry = {"path": str(p), "kind": None, "ok": True, "problems": []}
        try:
            data = json.loads(Path(p).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            entry.update(ok=False, problems=[str(exc)])
            out.append(entry)
            continue
        try:
            if isinstance(data, dict) and "phi" in data:
                entry["kind"] = "automaton"
                entry["problems"] = automaton.validate(automaton.from_json(data))
            else:
                g = grammars.from_json(data)
                entry["kind"] = type(g).__name__
        except (AutomatonError, GrammarError, ValueError) as exc:
            entry["problems"] = [str(exc)]
        entry["ok"] = not entry["problems"]
        out.append(entry)
    return out


def cmd_accept_prob(qfa, word: str) -> Fraction:
    return automaton.accept_prob(load_qfa(qfa), parse_word(word))


def cmd_enumerate(grammar, n: int) -> list[str]:
    g = grammars.load(grammar)
    return [grammars.fmt_word(w) for w in grammars.shortlex(grammars.enumerate_words(g, n))]


def cmd_closure(qfa, grammar, config: RunConfig | None = None, timings: bool = True) -> dict:
    cfg = config or RunConfig()
    q = load_qfa(qfa)
    g = grammars.load(grammar)
    check_alphabet(q, g)
    rep = closure(g, q, ClosureConfig(cfg.degree_cap, cfg.chain_cap))
    return rep.to_json(timings=timings)


def cmd_decide(qfa, grammar, config: RunConfig | None = None, threshold=None) -> DecisionReport:
    q = load_qfa(qfa, threshold)
    g = grammars.load(grammar)
    check_alphabet(q, g)
    return decide(q, g, config or RunConfig())


# -- argument handling -------------------------------------------------------------------

def _emit(obj, dest: str | None, text: str):
    if dest:
        payload = json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
        if dest == "-":
            sys.stdout.write(payload)
            return
        Path(dest).write_text(payload, encoding="utf-8")
    print(text)


def _config(args) -> RunConfig:
    return RunConfig(
        mode=getattr(args, "mode", "both"),
        degree_cap=args.max_degree,
        chain_cap=args.chain_cap,
        max_len=getattr(args, "max_len", 16),
        smt_cmd=getattr(args, "smt_cmd", None),
        timeout=getattr(args, "timeout", 60.0),
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qfa-intersect",
        description="Emptiness of structured languages intersected with quantum cut-point languages.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check automaton and grammar files")
    p.add_argument("paths", nargs="+")
    p.add_argument("--json", metavar="OUT")

    p = sub.add_parser("accept-prob", help="exact acceptance probability of a word")
    p.add_argument("--qfa", required=True)
    p.add_argument("word", help='letters, e.g. "ab"; "" or ε for the empty word')
    p.add_argument("--json", metavar="OUT")

    p = sub.add_parser("enumerate", help="words of the grammar up to a length")
    p.add_argument("--grammar", required=True)
    p.add_argument("-n", "--max-len", type=int, required=True)
    p.add_argument("--json", metavar="OUT")

    for name in ("closure", "decide"):
        p = sub.add_parser(name, help="closure formula report" if name == "closure" else "decide emptiness")
        p.add_argument("--qfa", required=True)
        p.add_argument("--grammar", required=True)
        p.add_argument("--max-degree", type=int, default=4)
        p.add_argument("--chain-cap", type=int)
        p.add_argument("--json", metavar="OUT")
        if name == "closure":
            p.add_argument("--no-timings", action="store_true")
        else:
            p.add_argument("--mode", choices=("symbolic", "brute", "both"), default="both")
            p.add_argument("--max-len", type=int, default=16)
            p.add_argument("--smt-cmd", help="solver command reading SMT-LIB on stdin (default: $QFA_SMT_CMD, then z3)")
            p.add_argument("--timeout", type=float, default=60.0)
            p.add_argument("--lambda", dest="threshold", help="override the automaton threshold")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            diags = cmd_validate(args.paths)
            lines = [f"{d['path']}: " + ("ok" if d["ok"] else "; ".join(d["problems"])) for d in diags]
            _emit(diags, args.json, "\n".join(lines))
            return 0 if all(d["ok"] for d in diags) else EXIT_ERROR
        if args.command == "accept-prob":
            p = cmd_accept_prob(args.qfa, args.word)
            _emit({"word": args.word, "accept_prob": format_rational(p)}, args.json, format_rational(p))
            return 0
        if args.command == "enumerate":
            words = cmd_enumerate(args.grammar, args.max_len)
            _emit(words, args.json, "\n".join(w if w else "ε" for w in words))
            return 0
        if args.command == "closure":
            rep = cmd_closure(args.qfa, args.grammar, _config(args), timings=not args.no_timings)
            _emit(rep, args.json, json.dumps(rep, indent=2, ensure_ascii=False))
            return 0
        rep = cmd_decide(args.qfa, args.grammar, _config(args), args.threshold)
        summary = rep.verdict
        if rep.witness is not None:
            summary += f" witness={grammars.fmt_word(rep.witness) or 'ε'} p={rep.witness_prob}"
        summary += f" cross_check={rep.cross_check}"
        _emit(rep.to_json(), args.json, summary)
        if rep.cross_check == "conflict":
            print("conflict: a certified EMPTY closure excludes an exactly accepted word", file=sys.stderr)
        return rep.exit_code
    except (InputError, AutomatonError, GrammarError, ClosureError, ResourceError,
            EnumerationBudgetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
