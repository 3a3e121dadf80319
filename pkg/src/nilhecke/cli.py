"""Command-line front end: ``nilhecke <command> [options]``.

Exit codes: 0 ok, 1 negative verdict (verification or regression failed),
2 usage or input error, 3 budget exceeded.  Results go to stdout as JSON with
sorted keys; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import algebra, classifier, coxsys, diagmod, groupmodel, signedperm, wordengine
from .coxsys import INF, ComplexSystem, NilHeckeParams, ParameterError
from .wordengine import Budget, BudgetExceeded

OK, NEGATIVE, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _word(text: Optional[str]) -> tuple:
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(t) for t in text.split())
    except ValueError as exc:
        raise UsageError(f"bad generator word {text!r}: expected space-separated integers") from exc


def _k(text: str):
    if text.lower() in ("inf", "infinity"):
        return INF
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"bad cutoff {text!r}") from exc


def thread_cap() -> int:
    """Value of NILHECKE_THREADS (default: CPU count); the engines run single-threaded."""
    raw = os.environ.get("NILHECKE_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise UsageError(f"NILHECKE_THREADS must be a positive integer, got {raw!r}") from exc
    if value < 1:
        raise UsageError("NILHECKE_THREADS must be positive")
    return value


def _budget(args) -> Budget:
    base = wordengine.DEFAULT_BUDGET
    try:
        return Budget(
            max_word_length=args.budget_max_word_length or base.max_word_length,
            max_class_size=args.budget_max_class_size or base.max_class_size,
            max_class_count=args.budget_max_class_count or base.max_class_count,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _system(args):
    if getattr(args, "system", None):
        try:
            return coxsys.load_system(args.system)
        except OSError as exc:
            raise UsageError(f"cannot read {args.system}: {exc.strerror or exc}") from exc
        except (ParameterError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"invalid system file {args.system}: {exc}") from exc
    if getattr(args, "type", None):
        try:
            d = tuple(int(x) for x in args.d.split(",")) if args.d else None
            return coxsys.params(args.type, d=d, k=_k(args.k))
        except (ParameterError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError("a system is required: --system FILE or --type NAME [--d ...] [--k ...]")


def _coxeter_only(system) -> NilHeckeParams:
    if isinstance(system, ComplexSystem):
        raise UsageError("this command needs a Coxeter system, not a complex reflection group")
    return system


def _table(system, budget):
    return algebra.build_table(coxsys.presentation_of(system), budget, params=system)


def _words(ws) -> list:
    return [list(w) for w in ws]


# ---------------------------------------------------------------- commands

def cmd_classify(args):
    res = classifier.classify(_system(args))
    return OK, res.to_json()


def _use_group(system, backend: str) -> bool:
    if backend == "words":
        return False
    all_two = isinstance(system, NilHeckeParams) and all(x == 2 for x in system.d)
    if backend == "group":
        if not all_two:
            raise UsageError("the group backend needs a Coxeter system with every d_i = 2")
        return True
    return all_two


def _group_dim(system, budget):
    res = groupmodel.wj0_basis(system.matrix, coxsys.kept_pairs(system.matrix, system.truncation), budget)
    if not res.complete:
        raise BudgetExceeded("group backend hit the budget", at_length=res.at_length,
                             partial={"partial_count": res.count})
    return res.count


def _words_dim(system, budget):
    enum = wordengine.enumerate_basis(coxsys.presentation_of(system), budget)
    if not enum.complete:
        raise BudgetExceeded(f"word enumeration cut at length {enum.at_length}", at_length=enum.at_length,
                             partial=enum)
    return enum.dimension


def cmd_dim(args):
    system = _system(args)
    budget = _budget(args)
    group = _use_group(system, args.backend)
    if args.crosscheck:
        out = {"backends": {"words": _words_dim(system, budget)}}
        if isinstance(system, NilHeckeParams) and all(x == 2 for x in system.d):
            out["backends"]["group"] = _group_dim(system, budget)
        values = set(out["backends"].values())
        out["dimension"] = out["backends"]["group" if group else "words"]
        out["status"] = "complete"
        out["agree"] = len(values) == 1
        return (OK if out["agree"] else NEGATIVE), out
    dim = _group_dim(system, budget) if group else _words_dim(system, budget)
    return OK, {"dimension": dim, "status": "complete"}


def cmd_basis(args):
    system = _system(args)
    enum = wordengine.enumerate_basis(coxsys.presentation_of(system), _budget(args))
    body = enum.to_json()
    return (OK if enum.complete else BUDGET), body


def cmd_multiply(args):
    system = _system(args)
    table = _table(system, _budget(args))
    c = table.class_of(_word(args.left) + _word(args.right))
    if c == algebra.ZERO:
        return OK, {"result": "zero"}
    return OK, {"result": list(table.words[c])}


def cmd_nilpotency(args):
    table = _table(_system(args), _budget(args))
    n = algebra.nilpotency_index(table)
    top = max(table.lengths())
    witness = next(w for w in table.words if len(w) == top)
    return OK, {"nilpotency_index": n, "max_length": top, "longest_monomial": list(witness)}


def cmd_primitives(args):
    table = _table(_system(args), _budget(args))
    rep = algebra.primitive_spaces(table)
    return OK, rep.to_json(table)


def cmd_frobenius(args):
    system = _coxeter_only(_system(args))
    table = _table(system, _budget(args))
    structural = algebra.frobenius_predicate(system)
    randomized = algebra.frobenius_randomized(table, trials=args.trials)
    right_dim = algebra.primitive_spaces(table).right_dim
    body = {
        "frobenius": structural,
        "predicate": structural,
        "randomized": randomized,
        "right_primitive_dim": right_dim,
        "false_negative_bound": algebra.frobenius_error_bound(table, args.trials),
        "agree": structural == randomized == (right_dim == 1),
    }
    return (OK if body["agree"] else NEGATIVE), body


def cmd_signed_count(args):
    if args.n < 1:
        raise UsageError("--n must be positive")
    body = {"n": args.n, "formula": signedperm.avoiding_formula(args.n)}
    try:
        body["count"] = signedperm.count_avoiding(args.n, max_rank=args.max_rank)
    except OverflowError as exc:
        return BUDGET, dict(body, status="budget_exceeded", message=str(exc))
    body["status"] = "complete"
    return OK, body


def cmd_fc_count(args):
    system = _coxeter_only(_system(args))
    return OK, {"fc_count": groupmodel.fc_count(system.matrix, _budget(args))}


def cmd_verify_module(args):
    system = _system(args)
    try:
        diagram = diagmod.load_diagram(args.module)
    except OSError as exc:
        raise UsageError(f"cannot read {args.module}: {exc.strerror or exc}") from exc
    except diagmod.MalformedDiagram as exc:
        raise UsageError(str(exc)) from exc
    try:
        rep = diagmod.verify(diagram, coxsys.presentation_of(system))
    except diagmod.MalformedDiagram as exc:
        raise UsageError(str(exc)) from exc
    body = rep.to_json()
    if args.verbose:
        body["failures"] = [{"node": v, "relation": [list(l), list(r)], "lhs": a and list(a), "rhs": b and list(b)}
                            for v, (l, r), a, b in rep.failures]
        body["details"] = rep.details
    return (OK if rep.relations_ok and rep.is_witness else NEGATIVE), body


def cmd_regress(args):
    from . import acceptance

    numbers = [int(x) for x in args.only.split(",")] if args.only else None
    results = acceptance.run_all(numbers)
    for r in results:
        print(r.summary_line(), file=sys.stderr)
    body = {"passed": all(r.passed for r in results),
            "criteria": [r.to_json() if args.verbose else
                         {"number": r.number, "title": r.title, "passed": r.passed,
                          "failing": [c.name for c in r.failed_checks()]} for r in results]}
    return (OK if body["passed"] else NEGATIVE), body


# ---------------------------------------------------------------- parser

def _add_system(p):
    p.add_argument("--system", help="system JSON file")
    p.add_argument("--type", help="standard type shorthand, e.g. F4, I2(5)")
    p.add_argument("--d", help="comma-separated exponents, e.g. 3,2,2")
    p.add_argument("--k", default="infinity", help="cutoff k (integer or 'infinity')")


def _add_budget(p):
    p.add_argument("--budget-max-word-length", type=int)
    p.add_argument("--budget-max-class-size", type=int)
    p.add_argument("--budget-max-class-count", type=int)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nilhecke", description="Truncated nil-Hecke algebras of Coxeter systems")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="finite/infinite verdict and closed-form dimension")
    _add_system(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dim", help="dimension by enumeration")
    _add_system(p)
    _add_budget(p)
    p.add_argument("--backend", choices=("words", "group", "auto"), default="auto")
    p.add_argument("--crosscheck", action="store_true", help="report every applicable backend")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("basis", help="canonical monomial basis")
    _add_system(p)
    _add_budget(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("multiply", help="product of two monomials")
    _add_system(p)
    _add_budget(p)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_multiply)

    for name, fn, text in (("nilpotency", cmd_nilpotency, "nilpotency index of the augmentation ideal"),
                           ("primitives", cmd_primitives, "left/right/two-sided primitive spaces"),
                           ("fc-count", cmd_fc_count, "number of fully commutative elements")):
        p = sub.add_parser(name, help=text)
        _add_system(p)
        _add_budget(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("frobenius", help="structural and randomized Frobenius tests")
    _add_system(p)
    _add_budget(p)
    p.add_argument("--trials", type=int, default=3)
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("signed-count", help="signed permutations without a bad pair")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-rank", type=int, default=signedperm.MAX_EXHAUSTIVE_RANK)
    p.set_defaults(func=cmd_signed_count)

    p = sub.add_parser("verify-module", help="check a module diagram against a system")
    _add_system(p)
    p.add_argument("--module", required=True, help="diagram JSON file")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_verify_module)

    p = sub.add_parser("regress", help="run the acceptance suite")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_regress)
    return parser


def run(argv=None) -> tuple:
    """(exit code, stdout text) for one invocation."""
    try:
        args = build_parser().parse_args(argv)
        thread_cap()
        code, body = args.func(args)
        return code, _dump(body)
    except UsageError as exc:
        print(f"nilhecke: {exc}", file=sys.stderr)
        return USAGE, ""
    except BudgetExceeded as exc:
        body = {"status": "budget_exceeded", "message": str(exc), "at_length": exc.at_length}
        partial = exc.partial
        if isinstance(partial, wordengine.BasisEnumeration):
            body["partial_count"] = partial.dimension
            body["frontier_sizes"] = partial.frontier_sizes()
        elif isinstance(partial, dict):
            body.update(partial)
        print(f"nilhecke: {exc}", file=sys.stderr)
        return BUDGET, _dump(body)
    except algebra.FrobeniusMismatch as exc:
        print(f"nilhecke: {exc}", file=sys.stderr)
        return NEGATIVE, _dump({"status": "mismatch", "message": str(exc)})


def main(argv=None) -> int:
    code, out = run(argv)
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
