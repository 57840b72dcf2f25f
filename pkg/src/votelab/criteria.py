"""Axioms as per-profile predicates, and bounded exhaustive search for violations.

Canonical enumeration order
---------------------------
For ``m`` alternatives named ``a, b, c, ...`` the ``m!`` rankings are
numbered in lexicographic order (``itertools.permutations`` of the names).
A profile of ``n`` voters is the sequence of its voters' ranking numbers;
profiles are visited by ``n`` ascending, then lexicographically by that
sequence (voter 1 most significant). Profile ``i`` of size ``n`` therefore
has voter ``k``'s ranking at digit ``k`` of ``i`` written in base ``m!``.

A search visits optional seed profiles first, in the order given, then the
enumeration. Within one profile, rule variants (agendas) are tried in
permutation order, then the criterion's own instances (pairs, lifts). The
first violation in this order is the witness, whatever the worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import permutations
from typing import Callable, Iterable, Iterator, Sequence

from .disappointment import sd_tainted
from .model import Alternative, Profile, bottom_counts, tally
from .procedures import AGENDA_RULES, RuleError, RuleSpec, condorcet, winners_of

CRITERIA = ("aaw", "cwc", "pareto", "mono", "iia", "non-sd")
ENUMERATION_CAP = 10**8
CHUNK = 4096


class BoundsError(ValueError):
    pass


class CapExceeded(BoundsError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"search space of {count:,} profiles exceeds the cap of {cap:,}")
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class SearchBounds:
    m: int
    n_max: int
    n_min: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise BoundsError(f"need m >= 1, got m={self.m}")
        if not 1 <= self.n_min <= self.n_max:
            raise BoundsError(f"need 1 <= n_min <= n_max, got {self.n_min}..{self.n_max}")

    def count(self) -> int:
        per_voter = math.factorial(self.m)
        return sum(per_voter**n for n in range(self.n_min, self.n_max + 1))

    def describe(self) -> str:
        if self.n_min == 1:
            return f"m={self.m}, n<={self.n_max}"
        return f"m={self.m}, {self.n_min}<=n<={self.n_max}"


def alternative_names(m: int) -> tuple[Alternative, ...]:
    if m <= 26:
        return tuple(chr(ord("a") + i) for i in range(m))
    return tuple(f"x{i + 1}" for i in range(m))


def _rankings(alts: Sequence[Alternative]) -> list[tuple[Alternative, ...]]:
    return list(permutations(alts))


def _digits(index: int, base: int, n: int) -> list[int]:
    out = [0] * n
    for k in range(n - 1, -1, -1):
        index, out[k] = divmod(index, base)
    return out


def _profile_at(alts, rankings, n: int, index: int) -> Profile:
    return Profile(alts, tuple((1, rankings[d]) for d in _digits(index, len(rankings), n)))


def enumerate_profiles(bounds: SearchBounds, cap: int = ENUMERATION_CAP) -> Iterator[Profile]:
    """Every profile within ``bounds``, in canonical order, as weight-1 blocks."""
    total = bounds.count()
    if total > cap:
        raise CapExceeded(total, cap)
    alts = alternative_names(bounds.m)
    rankings = _rankings(alts)
    for n in range(bounds.n_min, bounds.n_max + 1):
        for index in range(len(rankings) ** n):
            yield _profile_at(alts, rankings, n, index)


def condorcet_winner(p: Profile) -> Alternative | None:
    winners = condorcet(p).winners
    if len(winners) == 1:
        return next(iter(winners))
    return None


def lift(p: Profile, voter: int, x: Alternative) -> Profile:
    """Move ``x`` one place up on voter ``voter``'s ballot (1-based).

    The block holding that voter is split so the other voters keep their
    ballots and order.
    """
    blocks = []
    seen = 0
    for weight, ranking in p.blocks:
        if seen < voter <= seen + weight:
            pos = ranking.index(x)
            if pos == 0:
                raise ValueError(f"{x} is already on top for voter {voter}")
            lifted = list(ranking)
            lifted[pos - 1], lifted[pos] = lifted[pos], lifted[pos - 1]
            before = voter - seen - 1
            after = weight - before - 1
            if before:
                blocks.append((before, ranking))
            blocks.append((1, tuple(lifted)))
            if after:
                blocks.append((after, ranking))
        else:
            blocks.append((weight, ranking))
        seen += weight
    return Profile(p.alternatives, tuple(blocks))


def _orientation(p: Profile, x: Alternative, y: Alternative) -> tuple[bool, ...]:
    return tuple(r.index(x) < r.index(y) for r in p.voters())


@dataclass(frozen=True)
class Witness:
    criterion: str
    spec: RuleSpec
    source: str
    profile: Profile
    winners: frozenset[Alternative]
    explanation: str
    other_profile: Profile | None = None
    other_winners: frozenset[Alternative] | None = None
    detail: tuple[tuple[str, str], ...] = ()

    @property
    def rule(self) -> str:
        return self.spec.label()

    def as_dict(self) -> dict:
        from .ballots import serialize_profile

        out = {
            "criterion": self.criterion,
            "rule": self.rule,
            "source": self.source,
            "profile": serialize_profile(self.profile),
            "winners": sorted(self.winners),
            "explanation": self.explanation,
            "detail": dict(self.detail),
        }
        if self.other_profile is not None:
            out["other_profile"] = serialize_profile(self.other_profile)
            out["other_winners"] = sorted(self.other_winners or ())
        return out


@dataclass(frozen=True)
class CriterionVerdict:
    status: str  # "pass-within-bounds" or "violated"
    criterion: str
    rule: str
    bounds: SearchBounds
    profiles_checked: int
    instances_checked: int
    witness: Witness | None = None
    seeds: int = 0

    @property
    def violated(self) -> bool:
        return self.status == "violated"


def _fmt(alts) -> str:
    return "{" + ",".join(sorted(alts)) + "}"


# --- single-profile predicates ------------------------------------------------
#
# Each returns (witness fields or None, instances examined). ``win`` maps a
# profile to its winner set under one fixed rule variant.

Winners = Callable[[Profile], frozenset]


def _find_aaw(p: Profile, win: Winners):
    w = win(p)
    if not w:
        return dict(winners=w, explanation="no winner"), 1
    return None, 1


def _find_non_sd(p: Profile, win: Winners):
    w = win(p)
    tainted = sd_tainted(p, w)
    if tainted:
        bottoms = bottom_counts(p)
        worst = sorted(tainted)[0]
        return dict(
            winners=w,
            explanation=f"winner {worst} is ranked last by {bottoms[worst]} of {p.n} voters",
            detail=(("tainted", ",".join(sorted(tainted))),),
        ), 1
    return None, 1


def _find_cwc(p: Profile, win: Winners):
    cw = condorcet_winner(p)
    if cw is None:
        return None, 1
    w = win(p)
    if w != frozenset({cw}):
        return dict(
            winners=w,
            explanation=f"{cw} is the Condorcet winner but the winners are {_fmt(w)}",
            detail=(("condorcet_winner", cw),),
        ), 1
    return None, 1


def _find_pareto(p: Profile, win: Winners):
    w = win(p)
    margin = tally(p).pairwise
    n = p.n
    checked = 0
    for x in p.alternatives:
        for y in p.alternatives:
            if x == y or margin[x, y] != n:
                continue
            checked += 1
            if y in w:
                return dict(
                    winners=w,
                    explanation=f"every voter ranks {x} above {y}, yet {y} wins",
                    detail=(("above", x), ("below", y)),
                ), checked
    return None, checked


def _find_mono(p: Profile, win: Winners):
    w = win(p)
    checked = 0
    for x in p.alternatives:
        if x not in w:
            continue
        for v, ranking in enumerate(p.voters(), start=1):
            pos = ranking.index(x)
            if pos == 0:
                continue
            checked += 1
            q = lift(p, v, x)
            wq = win(q)
            if x not in wq:
                return dict(
                    winners=w,
                    explanation=f"voter {v} moves {x} above {ranking[pos - 1]}; {x} then loses",
                    other_profile=q,
                    other_winners=wq,
                    detail=(("lifted", x), ("voter", str(v))),
                ), checked
    return None, checked


def _iia_explain(x, y):
    return f"{x} wins and {y} does not; no voter flips {x}-vs-{y}, yet {y} becomes a winner"


_DIRECT = {
    "aaw": _find_aaw,
    "non-sd": _find_non_sd,
    "cwc": _find_cwc,
    "pareto": _find_pareto,
    "mono": _find_mono,
}


def _variants(spec: RuleSpec, alts: Sequence[Alternative]) -> list[RuleSpec]:
    if spec.kind in AGENDA_RULES and spec.agenda is None:
        return [spec.with_agenda(a) for a in permutations(alts)]
    if spec.kind == "dictator" and spec.dictator is None:
        return [replace(spec, dictator=1)]
    return [spec]


def _check_compatible(spec: RuleSpec, criterion: str, m: int, alts) -> None:
    if criterion not in CRITERIA:
        raise BoundsError(f"unknown criterion {criterion!r}; expected one of {', '.join(CRITERIA)}")
    if criterion == "non-sd" and m < 3:
        raise BoundsError("non-sd checks need m >= 3 (social disappointment undefined for m<3)")
    if spec.agenda is not None and set(spec.agenda) != set(alts):
        raise RuleError(f"agenda {','.join(spec.agenda)} does not match alternatives {','.join(alts)}")


def _win_fn(spec: RuleSpec) -> Winners:
    return lambda q: winners_of(spec, q)


# --- worker tasks (module level so they pickle) -------------------------------


def _scan_chunk(task):
    """Direct predicate over profile indices [start, stop) of one level."""
    spec, criterion, m, n, start, stop = task
    alts = alternative_names(m)
    rankings = _rankings(alts)
    variants = _variants(spec, alts)
    find = _DIRECT[criterion]
    instances = 0
    for index in range(start, stop):
        p = _profile_at(alts, rankings, n, index)
        for variant in variants:
            found, k = find(p, _win_fn(variant))
            instances += k
            if found is not None:
                return index, variant, found, instances
    return None, None, None, instances


def _winners_chunk(task):
    spec, m, n, start, stop = task
    alts = alternative_names(m)
    rankings = _rankings(alts)
    return [winners_of(spec, _profile_at(alts, rankings, n, i)) for i in range(start, stop)]


def default_workers() -> int:
    raw = os.environ.get("VOTELAB_THREADS")
    if raw:
        value = int(raw)
        if value < 1:
            raise ValueError("VOTELAB_THREADS must be a positive integer")
        return value
    return os.cpu_count() or 1


class _Runner:
    """Maps chunk tasks in order, serially or over a process pool."""

    def __init__(self, workers: int):
        self.workers = workers
        self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        if self._pool is not None:
            self._pool.shutdown(cancel_futures=True)

    def map(self, fn, tasks: list):
        if self.workers <= 1 or len(tasks) <= 1:
            return map(fn, tasks)
        if self._pool is None:
            self._pool = ProcessPoolExecutor(max_workers=self.workers)
        return self._pool.map(fn, tasks)


def _chunks(total: int) -> list[tuple[int, int]]:
    return [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]


def _build(criterion, spec, source, p, found) -> Witness:
    return Witness(
        criterion=criterion,
        spec=spec,
        source=source,
        profile=p,
        winners=found["winners"],
        explanation=found["explanation"],
        other_profile=found.get("other_profile"),
        other_winners=found.get("other_winners"),
        detail=found.get("detail", ()),
    )


def _seed_iia(spec, seeds, i, p):
    """IIA for a seed: the changed profile ranges over the other seeds."""
    checked = 0
    for variant in _variants(spec, p.alternatives):
        w = winners_of(variant, p)
        for x in p.alternatives:
            if x not in w:
                continue
            for y in p.alternatives:
                if y in w:
                    continue
                checked += 1
                orient = _orientation(p, x, y)
                for j, (_, q) in enumerate(seeds):
                    if j == i or q.alternatives != p.alternatives or q.n != p.n:
                        continue
                    if _orientation(q, x, y) != orient:
                        continue
                    wq = winners_of(variant, q)
                    if y in wq:
                        found = dict(
                            winners=w,
                            explanation=_iia_explain(x, y),
                            other_profile=q,
                            other_winners=wq,
                            detail=(("winner", x), ("non_winner", y), ("changed", seeds[j][0])),
                        )
                        return variant, found, checked
    return None, None, checked


def _level_iia(spec, m, n, runner):
    """IIA over one enumeration level, using precomputed winner tables."""
    alts = alternative_names(m)
    rankings = _rankings(alts)
    total = len(rankings) ** n
    variants = _variants(spec, alts)
    tables = []
    for variant in variants:
        tasks = [(variant, m, n, s, e) for s, e in _chunks(total)]
        table = []
        for part in runner.map(_winners_chunk, tasks):
            table.extend(part)
        tables.append(table)

    digits = [_digits(i, len(rankings), n) for i in range(total)]
    pos = [{a: r.index(a) for a in alts} for r in rankings]

    def key(index, x, y):
        bits = 0
        for d in digits[index]:
            bits = (bits << 1) | (pos[d][x] < pos[d][y])
        return bits

    # first_win[v][(x, y)][orientation key] = smallest index where y wins
    first_win = []
    for table in tables:
        per_pair = {}
        for x in alts:
            for y in alts:
                if x == y:
                    continue
                seen = {}
                for index, w in enumerate(table):
                    if y in w:
                        seen.setdefault(key(index, x, y), index)
                per_pair[x, y] = seen
        first_win.append(per_pair)

    instances = 0
    for index in range(total):
        for v, variant in enumerate(variants):
            w = tables[v][index]
            for x in alts:
                if x not in w:
                    continue
                for y in alts:
                    if y in w:
                        continue
                    instances += 1
                    hit = first_win[v][x, y].get(key(index, x, y))
                    if hit is not None:
                        found = dict(
                            winners=w,
                            explanation=_iia_explain(x, y),
                            other_profile=_profile_at(alts, rankings, n, hit),
                            other_winners=tables[v][hit],
                            detail=(("winner", x), ("non_winner", y), ("changed", f"m{m}n{n}#{hit}")),
                        )
                        return index, variant, found, instances
    return None, None, None, instances


def check_criterion(
    spec: RuleSpec,
    criterion: str,
    bounds: SearchBounds,
    seeds: Iterable[Profile | tuple[str, Profile]] = (),
    workers: int | None = None,
    cap: int = ENUMERATION_CAP,
) -> CriterionVerdict:
    """Search for a violation of ``criterion`` by the rule ``spec``.

    ``spec`` is a template: sequential-pairs rules without an agenda are
    checked under every agenda, and a dictator without an index uses
    voter 1. Seeds are examined before the enumeration and must not be
    counted against ``cap``; the enumeration itself is refused (not
    truncated) when ``bounds`` exceed ``cap``.
    """
    named = []
    for k, s in enumerate(seeds, start=1):
        named.append(s if isinstance(s, tuple) else (f"seed-{k}", s))
    alts = alternative_names(bounds.m)
    _check_compatible(spec, criterion, bounds.m, alts)
    if workers is None:
        workers = default_workers()

    def verdict(status, profiles, instances, witness=None):
        return CriterionVerdict(status, criterion, spec.label(), bounds, profiles, instances, witness, len(named))

    profiles = instances = 0
    for i, (name, p) in enumerate(named):
        if criterion == "non-sd" and p.m < 3:
            continue
        if spec.agenda is not None and set(spec.agenda) != p.alt_set:
            continue
        profiles += 1
        if criterion == "iia":
            variant, found, k = _seed_iia(spec, named, i, p)
            instances += k
            if found is not None:
                return verdict("violated", profiles, instances, _build(criterion, variant, name, p, found))
            continue
        for variant in _variants(spec, p.alternatives):
            found, k = _DIRECT[criterion](p, _win_fn(variant))
            instances += k
            if found is not None:
                return verdict("violated", profiles, instances, _build(criterion, variant, name, p, found))

    total = bounds.count()
    if total > cap:
        raise CapExceeded(total, cap)
    rankings = _rankings(alts)
    with _Runner(workers) as runner:
        for n in range(bounds.n_min, bounds.n_max + 1):
            level = len(rankings) ** n
            if criterion == "iia":
                index, variant, found, k = _level_iia(spec, bounds.m, n, runner)
                instances += k
            else:
                tasks = [(spec, criterion, bounds.m, n, s, e) for s, e in _chunks(level)]
                index = None
                for result in runner.map(_scan_chunk, tasks):
                    index, variant, found, k = result
                    instances += k
                    if index is not None:
                        break
            if index is not None:
                profiles += index + 1
                p = _profile_at(alts, rankings, n, index)
                witness = _build(criterion, variant, f"m{bounds.m}n{n}#{index}", p, found)
                return verdict("violated", profiles, instances, witness)
            profiles += level
    return verdict("pass-within-bounds", profiles, instances)


def replay(witness: Witness) -> bool:
    """Recheck a witness from scratch, without any search machinery."""
    spec = witness.spec
    p = witness.profile
    w = winners_of(spec, p)
    if w != witness.winners:
        return False
    c = witness.criterion
    detail = dict(witness.detail)
    if c == "aaw":
        return not w
    if c == "non-sd":
        return bool(sd_tainted(p, w))
    if c == "cwc":
        cw = condorcet_winner(p)
        return cw is not None and w != {cw}
    if c == "pareto":
        x, y = detail["above"], detail["below"]
        return y in w and all(r.index(x) < r.index(y) for r in p.voters())
    if c == "mono":
        x, v = detail["lifted"], int(detail["voter"])
        q = lift(p, v, x)
        return q == witness.other_profile and x in w and x not in winners_of(spec, q)
    if c == "iia":
        x, y = detail["winner"], detail["non_winner"]
        q = witness.other_profile
        return (
            x in w
            and y not in w
            and q.n == p.n
            and _orientation(p, x, y) == _orientation(q, x, y)
            and y in winners_of(spec, q)
        )
    raise ValueError(f"unknown criterion {c!r}")


# --- the four-alternative impossibility profile --------------------------------


@dataclass(frozen=True)
class ImpossibilityReport:
    condorcet_winner: Alternative
    bottoms: int
    n: int
    tainted: frozenset[Alternative]


def impossibility_witness() -> tuple[Profile, ImpossibilityReport]:
    """A profile on which no Condorcet-consistent rule avoids disappointment.

    ``d`` ties every other alternative one-on-one while each of a, b, c
    loses to another, so ``d`` is the unique undefeated alternative; it is
    also last on exactly half of the six ballots.
    """
    from .model import profile_from

    p = profile_from((2, "dabc"), (1, "dcab"), (1, "cabd"), (2, "bcad"), alternatives="abcd")
    cw = condorcet_winner(p)
    bottoms = bottom_counts(p)
    tainted = sd_tainted(p, condorcet(p).winners)
    if cw != "d" or 2 * bottoms["d"] < p.n or tainted != {"d"}:
        raise RuntimeError("impossibility profile failed its self-check")
    return p, ImpossibilityReport(cw, bottoms["d"], p.n, tainted)
