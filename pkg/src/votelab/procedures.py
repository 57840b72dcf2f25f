"""The eleven social choice procedures.

Every procedure maps a profile to an ``Outcome``: the winner set (which may
be empty) and a round-by-round trace. Ties are never broken; whole sets of
maxima or minima are kept or deleted together.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .disappointment import sd_tainted
from .model import Alternative, Profile, restrict, tally

RULE_KINDS = (
    "plurality",
    "borda",
    "hare",
    "seq-pairs",
    "dictator",
    "condorcet",
    "lpr",
    "condorcet-amend",
    "seq-pairs-amend",
    "lu",
    "lur",
)
AGENDA_RULES = frozenset({"seq-pairs", "seq-pairs-amend"})
CONDORCET_RULES = frozenset({"condorcet", "condorcet-amend"})


class RuleError(ValueError):
    """Rule parameters missing or inconsistent with the profile."""


@dataclass(frozen=True)
class Round:
    index: int
    note: str
    counts: tuple[tuple[Alternative, int], ...] = ()

    def __str__(self) -> str:
        if self.counts:
            shown = " ".join(f"{a}={c}" for a, c in self.counts)
            return f"round {self.index}: [{shown}] {self.note}"
        return f"round {self.index}: {self.note}"

    def as_dict(self) -> dict:
        return {"round": self.index, "counts": dict(self.counts), "note": self.note}


@dataclass(frozen=True)
class Outcome:
    winners: frozenset[Alternative]
    trace: tuple[Round, ...]
    rule: str = ""

    def sorted_winners(self) -> list[Alternative]:
        return sorted(self.winners)

    def render_trace(self) -> str:
        lines = [f"rule: {self.rule}"] if self.rule else []
        lines.extend(str(r) for r in self.trace)
        return "\n".join(lines)


@dataclass(frozen=True)
class RuleSpec:
    """A procedure plus its parameters.

    ``agenda`` is required by the sequential-pairs rules and ``dictator``
    (1-based voter index) by dictatorship, but both may be left unset in a
    template handed to criterion checks.
    """

    kind: str
    agenda: tuple[Alternative, ...] | None = None
    dictator: int | None = None
    condorcet_strict: bool = False

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise RuleError(f"unknown rule {self.kind!r}; expected one of {', '.join(RULE_KINDS)}")
        if self.agenda is not None:
            object.__setattr__(self, "agenda", tuple(self.agenda))

    def label(self) -> str:
        parts = [self.kind]
        if self.agenda is not None:
            parts.append("agenda=" + ",".join(self.agenda))
        if self.dictator is not None:
            parts.append(f"dictator={self.dictator}")
        if self.condorcet_strict and self.kind in CONDORCET_RULES:
            parts.append("strict")
        return " ".join(parts)

    def with_agenda(self, agenda: Sequence[Alternative]) -> RuleSpec:
        return RuleSpec(self.kind, tuple(agenda), self.dictator, self.condorcet_strict)


def _counts(alts: Sequence[Alternative], values: Mapping[Alternative, int]):
    return tuple((a, values[a]) for a in alts)


def _fmt(alts) -> str:
    return "{" + ",".join(sorted(alts)) + "}"


def _argbest(alts, score, best=max) -> frozenset[Alternative]:
    target = best(score[a] for a in alts)
    return frozenset(a for a in alts if score[a] == target)


def plurality(p: Profile) -> Outcome:
    first = tally(p).first_counts
    winners = _argbest(p.alternatives, first)
    trace = (Round(1, f"most first places: {_fmt(winners)}", _counts(p.alternatives, first)),)
    return Outcome(winners, trace)


def borda(p: Profile) -> Outcome:
    score = dict.fromkeys(p.alternatives, 0)
    for weight, ranking in p.blocks:
        below = len(ranking) - 1
        for a in ranking:
            score[a] += weight * below
            below -= 1
    winners = _argbest(p.alternatives, score)
    trace = (Round(1, f"highest Borda score: {_fmt(winners)}", _counts(p.alternatives, score)),)
    return Outcome(winners, trace)


def _first_alive(p: Profile, alive) -> dict[Alternative, int]:
    counts = {a: 0 for a in p.alternatives if a in alive}
    for weight, ranking in p.blocks:
        for a in ranking:
            if a in alive:
                counts[a] += weight
                break
    return counts


def _last_alive(p: Profile, alive) -> dict[Alternative, int]:
    counts = {a: 0 for a in p.alternatives if a in alive}
    for weight, ranking in p.blocks:
        for a in reversed(ranking):
            if a in alive:
                counts[a] += weight
                break
    return counts


def hare(p: Profile) -> Outcome:
    alive = set(p.alternatives)
    rounds: list[Round] = []
    while True:
        k = len(rounds) + 1
        if len(alive) == 1:
            rounds.append(Round(k, f"{_fmt(alive)} is the only alternative left"))
            break
        first = _first_alive(p, alive)
        losers = _argbest(first, first, best=min)
        shown = _counts(list(first), first)
        if losers == alive:
            rounds.append(Round(k, f"all remaining tie for fewest first places; {_fmt(alive)} win", shown))
            break
        rounds.append(Round(k, f"delete {_fmt(losers)} (fewest first places)", shown))
        alive -= losers
    return Outcome(frozenset(alive), tuple(rounds))


def _check_agenda(p: Profile, agenda: Sequence[Alternative] | None) -> tuple[Alternative, ...]:
    if agenda is None:
        raise RuleError("this rule needs an agenda")
    agenda = tuple(agenda)
    if len(agenda) != p.m or set(agenda) != p.alt_set:
        raise RuleError(f"agenda {','.join(agenda)} is not a permutation of {','.join(p.alternatives)}")
    return agenda


def seq_pairs(p: Profile, agenda: Sequence[Alternative]) -> Outcome:
    """Sequential pairwise voting along ``agenda``.

    A one-on-one tie keeps both sides: survivors that do not lose to the
    newcomer stay, and the newcomer joins if it loses to none of them.
    """
    agenda = _check_agenda(p, agenda)
    if len(agenda) == 1:
        return Outcome(frozenset(agenda), (Round(1, f"{agenda[0]} is unopposed"),))
    margin = tally(p).pairwise
    survivors = [agenda[0]]
    rounds = []
    for k, x in enumerate(agenda[1:], start=1):
        kept = [s for s in survivors if margin[s, x] >= 0]
        if all(margin[x, s] >= 0 for s in survivors):
            kept.append(x)
        shown = " ".join(f"{s}-vs-{x}={margin[s, x]:+d}" for s in survivors)
        rounds.append(Round(k, f"{shown}; survivors {_fmt(kept)}"))
        survivors = kept
    return Outcome(frozenset(survivors), tuple(rounds))


def dictatorship(p: Profile, d: int) -> Outcome:
    if d is None or not 1 <= d <= p.n:
        raise RuleError(f"dictator index {d} outside 1..{p.n}")
    top = p.voter(d)[0]
    return Outcome(frozenset({top}), (Round(1, f"voter {d} ranks {top} first"),))


def _undefeated(p: Profile, strict: bool) -> tuple[frozenset[Alternative], Round]:
    margin = tally(p).pairwise
    alts = p.alternatives
    if strict:
        winners = frozenset(x for x in alts if all(margin[x, y] > 0 for y in alts if y != x))
        how = "beats every other alternative"
    else:
        winners = frozenset(x for x in alts if all(margin[x, y] >= 0 for y in alts if y != x))
        how = "is never defeated one-on-one"
    losses = {x: sum(1 for y in alts if y != x and margin[x, y] < 0) for x in alts}
    note = f"{_fmt(winners)} {how}" if winners else f"no alternative {how}"
    return winners, Round(1, note + " (counts = one-on-one defeats)", _counts(alts, losses))


def condorcet(p: Profile, strict: bool = False) -> Outcome:
    winners, rnd = _undefeated(p, strict)
    return Outcome(winners, (rnd,))


def lpr(p: Profile) -> Outcome:
    """Least public resentment: repeatedly delete whatever sits last on the most ballots.

    Bottom places are recounted on the truncated ballots each round.
    """
    alive = set(p.alternatives)
    rounds: list[Round] = []
    while True:
        k = len(rounds) + 1
        if len(alive) == 1:
            rounds.append(Round(k, f"{_fmt(alive)} is the only alternative left"))
            break
        last = _last_alive(p, alive)
        worst = _argbest(last, last)
        shown = _counts(list(last), last)
        if worst == alive:
            rounds.append(Round(k, f"all remaining tie for most last places; {_fmt(alive)} win", shown))
            break
        rounds.append(Round(k, f"delete {_fmt(worst)} (most last places)", shown))
        alive -= worst
    return Outcome(frozenset(alive), tuple(rounds))


def _amend(p: Profile, base: Outcome) -> Outcome:
    k = len(base.trace) + 1
    if p.m < 3:
        return base
    tainted = sd_tainted(p, base.winners)
    winners = base.winners - tainted
    note = f"remove disappointing {_fmt(tainted)}" if tainted else "no winner is disappointing"
    return Outcome(winners, base.trace + (Round(k, note),))


def condorcet_amend(p: Profile, strict: bool = False) -> Outcome:
    return _amend(p, condorcet(p, strict))


def seq_pairs_amend(p: Profile, agenda: Sequence[Alternative]) -> Outcome:
    return _amend(p, seq_pairs(p, agenda))


def lu(p: Profile) -> Outcome:
    """Least unpopular: fewest last places on the full ballots, single pass."""
    last = _last_alive(p, p.alt_set)
    winners = _argbest(p.alternatives, last, best=min)
    return Outcome(winners, (Round(1, f"fewest last places: {_fmt(winners)}", _counts(p.alternatives, last)),))


def lur(p: Profile) -> Outcome:
    """Least unpopular reselection: rerun ``lu`` on its own winners until nothing changes."""
    current = frozenset(p.alternatives)
    rounds: list[Round] = []
    while True:
        k = len(rounds) + 1
        last = _last_alive(p, current)
        chosen = _argbest(last, last, best=min)
        shown = _counts(list(last), last)
        if len(chosen) == 1:
            rounds.append(Round(k, f"{_fmt(chosen)} alone has fewest last places", shown))
            break
        if chosen == current:
            rounds.append(Round(k, f"selection stable; {_fmt(chosen)} win", shown))
            break
        rounds.append(Round(k, f"reselect among {_fmt(chosen)}", shown))
        current = chosen
    return Outcome(chosen, tuple(rounds))


def _needs_agenda(fn) -> Callable[[RuleSpec, Profile], Outcome]:
    return lambda spec, p: fn(p, _check_agenda(p, spec.agenda))


_DISPATCH: dict[str, Callable[[RuleSpec, Profile], Outcome]] = {
    "plurality": lambda spec, p: plurality(p),
    "borda": lambda spec, p: borda(p),
    "hare": lambda spec, p: hare(p),
    "seq-pairs": _needs_agenda(seq_pairs),
    "dictator": lambda spec, p: dictatorship(p, _need_dictator(spec)),
    "condorcet": lambda spec, p: condorcet(p, spec.condorcet_strict),
    "lpr": lambda spec, p: lpr(p),
    "condorcet-amend": lambda spec, p: condorcet_amend(p, spec.condorcet_strict),
    "seq-pairs-amend": _needs_agenda(seq_pairs_amend),
    "lu": lambda spec, p: lu(p),
    "lur": lambda spec, p: lur(p),
}


def _need_dictator(spec: RuleSpec) -> int:
    if spec.dictator is None:
        raise RuleError("dictator rule needs a voter index")
    return spec.dictator


def evaluate(spec: RuleSpec, p: Profile) -> Outcome:
    outcome = _DISPATCH[spec.kind](spec, p)
    return Outcome(outcome.winners, outcome.trace, spec.label())


def winners_of(spec: RuleSpec, p: Profile) -> frozenset[Alternative]:
    return _DISPATCH[spec.kind](spec, p).winners
