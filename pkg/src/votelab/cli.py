"""votelab command line.

Exit codes: 0 success, 1 usage/parse/bounds error, 2 empty winner set,
3 criterion violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .ballots import BallotParseError, read_profile, serialize_profile
from .corpus import export_corpus, run_corpus
from .criteria import (
    CRITERIA,
    BoundsError,
    CapExceeded,
    CriterionVerdict,
    SearchBounds,
    alternative_names,
    check_criterion,
    default_workers,
)
from .disappointment import UndefinedForProfile, sd_tainted
from .model import ProfileError
from .procedures import RULE_KINDS, RuleError, RuleSpec, evaluate
from .table import build_table

EXIT_OK, EXIT_USAGE, EXIT_EMPTY, EXIT_VIOLATED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _csv(text: str | None) -> tuple[str, ...] | None:
    if text is None:
        return None
    return tuple(t.strip() for t in text.split(",") if t.strip())


def _spec(args) -> RuleSpec:
    agenda = _csv(getattr(args, "agenda", None))
    return RuleSpec(
        args.rule,
        agenda=agenda,
        dictator=getattr(args, "dictator", None),
        condorcet_strict=getattr(args, "strict_condorcet", False),
    )


def _load(path: str):
    try:
        return read_profile(path)
    except BallotParseError as exc:
        raise UsageError(f"{path}:{exc.line}:{exc.column}: {exc.code}: {exc.message}") from None
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def cmd_tally(args, out) -> int:
    p = _load(args.file)
    spec = _spec(args)
    if spec.kind in ("seq-pairs", "seq-pairs-amend") and spec.agenda is None:
        raise UsageError(f"--rule {spec.kind} needs --agenda")
    if spec.kind == "dictator" and spec.dictator is None:
        raise UsageError("--rule dictator needs --dictator")
    outcome = evaluate(spec, p)
    winners = outcome.sorted_winners()
    if args.json:
        tainted = sorted(sd_tainted(p, outcome.winners)) if p.m >= 3 else None
        doc = {
            "rule": outcome.rule,
            "winners": winners,
            "rounds": [r.as_dict() for r in outcome.trace],
            "sd_tainted": tainted,
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write((" ".join(winners) if winners else "NO WINNER") + "\n")
        if args.trace:
            out.write(outcome.render_trace() + "\n")
    return EXIT_OK if winners else EXIT_EMPTY


def cmd_sd(args, out) -> int:
    p = _load(args.file)
    candidates = _csv(args.winners)
    if candidates is None:
        candidates = p.alternatives
    unknown = [c for c in candidates if c not in p.alt_set]
    if unknown:
        raise UsageError(f"unknown alternative(s): {', '.join(unknown)}")
    for x in sorted(sd_tainted(p, candidates)):
        out.write(x + "\n")
    return EXIT_OK


def _render_verdict(v: CriterionVerdict) -> str:
    head = f"(bounds: {v.bounds.describe()}, profiles={v.profiles_checked})"
    if not v.violated:
        return f"PASS {head}\n"
    w = v.witness
    lines = [
        f"VIOLATED {head}",
        f"criterion: {v.criterion}",
        f"rule: {w.rule}",
        f"witness: {w.source}",
        f"explanation: {w.explanation}",
        f"winners: {' '.join(sorted(w.winners)) or 'NO WINNER'}",
        "profile:",
        serialize_profile(w.profile).rstrip("\n"),
    ]
    if w.other_profile is not None:
        lines.append(f"changed winners: {' '.join(sorted(w.other_winners)) or 'NO WINNER'}")
        lines.append("changed profile:")
        lines.append(serialize_profile(w.other_profile).rstrip("\n"))
    return "\n".join(lines) + "\n"


def _verdict_dict(v: CriterionVerdict) -> dict:
    return {
        "status": v.status,
        "criterion": v.criterion,
        "rule": v.rule,
        "bounds": {"m": v.bounds.m, "n_min": v.bounds.n_min, "n_max": v.bounds.n_max},
        "profiles_checked": v.profiles_checked,
        "instances_checked": v.instances_checked,
        "witness": v.witness.as_dict() if v.witness else None,
    }


def _workers() -> int:
    try:
        return default_workers()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_check(args, out) -> int:
    bounds = SearchBounds(args.alts, args.voters, args.min_voters)
    spec = _spec(args)
    if args.agenda_all:
        spec = RuleSpec(spec.kind, None, spec.dictator, spec.condorcet_strict)
    if spec.agenda is not None and set(spec.agenda) != set(alternative_names(bounds.m)):
        raise UsageError(f"--agenda must list each of {','.join(alternative_names(bounds.m))}")
    seeds = [(path, _load(path)) for path in args.seed]
    verdict = check_criterion(spec, args.criterion, bounds, seeds, _workers())
    if args.json:
        out.write(json.dumps(_verdict_dict(verdict), indent=2) + "\n")
    else:
        out.write(_render_verdict(verdict))
    return EXIT_VIOLATED if verdict.violated else EXIT_OK


def cmd_search(args, out) -> int:
    bounds = SearchBounds(args.alts, args.voters, args.min_voters)
    rules = args.rule or list(RULE_KINDS)
    workers = _workers()
    verdicts = [check_criterion(RuleSpec(r), args.criterion, bounds, (), workers) for r in rules]
    if args.json:
        out.write(json.dumps([_verdict_dict(v) for v in verdicts], indent=2) + "\n")
    else:
        width = max(len(r) for r in rules)
        for rule, v in zip(rules, verdicts):
            shown = f"no via {v.witness.source}: {v.witness.explanation}" if v.violated else "yes"
            out.write(f"{rule.ljust(width)}  {shown}\n")
    return EXIT_VIOLATED if any(v.violated for v in verdicts) else EXIT_OK


def cmd_table(args, out) -> int:
    table = build_table(SearchBounds(args.alts, args.voters), _workers())
    out.write(table.to_json() if args.json else table.render())
    return EXIT_OK


def cmd_corpus(args, out) -> int:
    report = run_corpus()
    if args.export:
        export_corpus(args.export)
    out.write(report.to_json() if args.json else report.render())
    return EXIT_OK if report.ok else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="votelab", description="Voting procedures, social disappointment and axiom checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def rule_options(p, required=True):
        p.add_argument("--rule", required=required, choices=RULE_KINDS)
        p.add_argument("--agenda", help="comma-separated agenda for seq-pairs rules")
        p.add_argument("--dictator", type=int, help="1-based voter index for the dictator rule")
        p.add_argument("--strict-condorcet", action="store_true", help="require beating, not just tying, every rival")

    def bounds_options(p):
        p.add_argument("--alts", type=int, required=True, help="number of alternatives m")
        p.add_argument("--voters", type=int, required=True, help="maximum number of voters")
        p.add_argument("--min-voters", type=int, default=1)

    p = sub.add_parser("tally", help="compute the winners of a ballot file")
    p.add_argument("file")
    rule_options(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_tally)

    p = sub.add_parser("sd", help="list alternatives that would disappoint as winners")
    p.add_argument("file")
    p.add_argument("--winners", help="comma-separated subset to audit (default: all)")
    p.set_defaults(func=cmd_sd)

    p = sub.add_parser("check", help="search for a criterion violation by one rule")
    rule_options(p)
    p.add_argument("--criterion", required=True, choices=CRITERIA)
    bounds_options(p)
    p.add_argument("--agenda-all", action="store_true", help="quantify over every agenda (default when --agenda is absent)")
    p.add_argument("--seed", action="append", default=[], metavar="FILE", help="ballot file to try before enumerating")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="check one criterion for every rule (or the given ones)")
    p.add_argument("--criterion", required=True, choices=CRITERIA)
    p.add_argument("--rule", action="append", choices=RULE_KINDS)
    bounds_options(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("table", help="rule-by-criterion matrix with a diff against published claims")
    p.add_argument("--alts", type=int, required=True)
    p.add_argument("--voters", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("corpus", help="replay the reference fixtures")
    p.add_argument("--json", action="store_true")
    p.add_argument("--export", metavar="DIR", help="also write the fixtures as .ballots files into DIR")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BoundsError, RuleError, UndefinedForProfile, ProfileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
