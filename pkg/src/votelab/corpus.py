"""Named reference profiles with their expected outcomes.

Each fixture carries its profile as embedded ``.ballots`` text, one primary
rule with the expected winner set, and optionally further (rule, winners)
checks on the same profile. When the engine's answer is known to differ
from the outcome stated alongside the original example, the fixture keeps
the engine's value and records the difference in ``discrepancy``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .ballots import parse_profile
from .disappointment import socially_disappointing
from .model import Alternative, Profile
from .procedures import RuleSpec, evaluate


@dataclass(frozen=True)
class Fixture:
    name: str
    text: str
    rule: RuleSpec
    expected_winners: frozenset[Alternative]
    expected_sd: bool | None
    source: str
    discrepancy: str | None = None
    also: tuple[tuple[RuleSpec, frozenset[Alternative]], ...] = ()
    # (rule kind, criterion) cells this profile is the reference counterexample for
    witness_for: tuple[tuple[str, str], ...] = ()

    @property
    def profile(self) -> Profile:
        return parse_profile(self.text)


def _fx(name, text, rule, winners, sd, source, discrepancy=None, also=(), witness_for=()):
    return Fixture(
        name=name,
        text=text,
        rule=rule,
        expected_winners=frozenset(winners),
        expected_sd=sd,
        source=source,
        discrepancy=discrepancy,
        also=tuple((spec, frozenset(w)) for spec, w in also),
        witness_for=tuple(witness_for),
    )


_DRINKS = """\
alternatives: milk beer wine
4: milk > wine > beer
3: beer > wine > milk
2: wine > beer > milk
"""

_THM31 = """\
alternatives: a b c d
2: d > a > b > c
1: d > c > a > b
1: c > a > b > d
2: b > c > a > d
"""

_FIXTURES = [
    _fx("ex21-drinks", _DRINKS, RuleSpec("plurality"), {"milk"}, True,
        "drinks for lunch: plurality serves milk, which five of nine rank last",
        witness_for=[("plurality", "non-sd")]),
    _fx("claim22-borda", """\
alternatives: a b c
2: a > b > c
2: c > b > a
""", RuleSpec("borda"), {"a", "b", "c"}, True,
        "Borda three-way tie at 4 points; a and c are each last for half the voters",
        witness_for=[("borda", "non-sd")]),
    _fx("claim23-hare", """\
alternatives: a b c
4: a > b > c
3: c > b > a
3: b > c > a
""", RuleSpec("hare"), {"a"}, True,
        "Hare deletes b and c together; a wins while last on six of ten ballots",
        witness_for=[("hare", "non-sd")]),
    _fx("claim24-seqpairs", """\
alternatives: a b c
2: a > b > c
1: b > c > a
1: c > b > a
""", RuleSpec("seq-pairs", agenda=("b", "c", "a")), {"a", "b"}, True,
        "agenda b,c,a: b beats c, then a ties b; a is last on half the ballots",
        witness_for=[("seq-pairs", "non-sd")]),
    _fx("claim25-dictator", """\
alternatives: a b c
2: a > b > c
1: c > b > a
1: c > b > a
""", RuleSpec("dictator", dictator=1), {"a"}, True,
        "voter 1 dictates a, which the other half rank last",
        witness_for=[("dictator", "non-sd")]),
    _fx("ex23-lpr", _DRINKS, RuleSpec("lpr"), {"wine"}, False,
        "drinks for lunch under least public resentment: milk then beer deleted, wine served"),
    _fx("prop29-cwc", """\
alternatives: a b c
2: a > b > c
2: a > c > b
2: b > c > a
1: c > b > a
""", RuleSpec("lpr"), {"b"}, False,
        "least public resentment elects b although a beats both one-on-one",
        also=[(RuleSpec("condorcet"), {"a"})],
        witness_for=[("lpr", "cwc")]),
    _fx("prop29-mono-before", """\
alternatives: a b c
2: b > a > c
2: c > a > b
1: b > c > a
""", RuleSpec("lpr"), {"a"}, False,
        "before the lift: b and c deleted together, a wins",
        witness_for=[("lpr", "mono")]),
    _fx("prop29-mono-after", """\
alternatives: a b c
2: b > a > c
2: c > a > b
1: b > a > c
""", RuleSpec("lpr"), {"b"}, False,
        "voter 5 lifts a above c; c then a are deleted and b wins"),
    _fx("prop29-iia-before", """\
alternatives: a b c
1: b > a > c
1: a > c > b
2: b > c > a
""", RuleSpec("lpr"), {"b"}, False,
        "b wins, a does not",
        witness_for=[("lpr", "iia")]),
    _fx("prop29-iia-after", """\
alternatives: a b c
1: b > a > c
1: a > c > b
1: b > c > a
1: b > a > c
""", RuleSpec("lpr"), {"b"}, False,
        "voter 4 swaps a and c, keeping b above a",
        discrepancy=(
            "stated outcome is a and b tied, i.e. {a,b}; recounting last places on the "
            "truncated ballots deletes c (2 of 4), then a (3 of 4), giving {b}"
        )),
    _fx("thm31-paradox", _THM31, RuleSpec("condorcet"), {"d"}, True,
        "d ties a, b, c one-on-one while a, b, c form a cycle; d is last on 3 of 6 ballots",
        also=[(RuleSpec("condorcet", condorcet_strict=True), set()),
              (RuleSpec("condorcet-amend"), set())],
        witness_for=[("condorcet", "non-sd"), ("condorcet-amend", "aaw"), ("condorcet-amend", "cwc")]),
    _fx("prop32-agenda-abcd", _THM31, RuleSpec("seq-pairs-amend", agenda=tuple("abcd")), {"c"}, False,
        "agenda a,b,c,d leaves {c,d}; the amendment removes d",
        also=[(RuleSpec("seq-pairs", agenda=tuple("abcd")), {"c", "d"})],
        witness_for=[("seq-pairs-amend", "cwc")]),
    _fx("prop33-lu-pareto", """\
alternatives: a b c d
2: a > b > c > d
1: c > a > b > d
1: d > a > b > c
""", RuleSpec("lu"), {"a", "b"}, False,
        "a and b are never last, so both win although everyone prefers a to b",
        witness_for=[("lu", "pareto")]),
    _fx("prop33-lu-cwc-before", """\
alternatives: a b c
2: a > b > c
1: b > c > a
""", RuleSpec("lu"), {"b"}, False,
        "b is never last and wins; a is the Condorcet winner",
        also=[(RuleSpec("condorcet"), {"a"})],
        witness_for=[("lu", "cwc"), ("lu", "iia")]),
    _fx("prop33-lu-cwc-after", """\
alternatives: a b c
2: a > b > c
1: b > a > c
""", RuleSpec("lu"), {"a", "b"}, False,
        "voter 3 swaps a and c; a joins b as a winner with no a-vs-b flip"),
    _fx("cycle3", """\
alternatives: a b c
1: a > b > c
1: b > c > a
1: c > a > b
""", RuleSpec("condorcet"), set(), False,
        "the classic three-voter majority cycle: everyone loses one matchup",
        also=[(RuleSpec("condorcet", condorcet_strict=True), set()),
              (RuleSpec("lur"), {"a", "b", "c"})],
        witness_for=[("condorcet", "aaw")]),
]

FIXTURES: dict[str, Fixture] = {f.name: f for f in _FIXTURES}
FIXTURE_NAMES = tuple(sorted(FIXTURES))


class UnknownFixture(KeyError):
    pass


def load_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}") from None


def fixture_profiles(cell: tuple[str, str] | None = None) -> list[tuple[str, Profile]]:
    """Every distinct fixture profile once, in fixture-name order.

    With ``cell = (rule kind, criterion)`` the fixtures recorded as the
    reference counterexample for that cell come first.
    """
    names = list(FIXTURE_NAMES)
    if cell is not None:
        names.sort(key=lambda name: cell not in FIXTURES[name].witness_for)
    seen: dict[str, Profile] = {}
    for name in names:
        p = FIXTURES[name].profile
        if p not in seen.values():
            seen[name] = p
    return list(seen.items())


@dataclass(frozen=True)
class FixtureResult:
    name: str
    passed: bool
    lines: tuple[str, ...]
    discrepancy: str | None


@dataclass(frozen=True)
class CorpusReport:
    results: tuple[FixtureResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def discrepancies(self) -> list[tuple[str, str]]:
        return [(r.name, r.discrepancy) for r in self.results if r.discrepancy]

    def render(self) -> str:
        out = []
        for r in self.results:
            out.append(f"{'PASS' if r.passed else 'FAIL'} {r.name}")
            out.extend(f"  {line}" for line in r.lines)
        passed = sum(r.passed for r in self.results)
        out.append(f"{passed}/{len(self.results)} fixtures pass")
        out.append(f"discrepancies: {len(self.discrepancies)}")
        for name, note in self.discrepancies:
            out.append(f"  {name}: {note}")
        return "\n".join(out) + "\n"

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "fixtures": [
                {"name": r.name, "passed": r.passed, "checks": list(r.lines), "discrepancy": r.discrepancy}
                for r in self.results
            ],
            "discrepancies": [{"name": n, "note": d} for n, d in self.discrepancies],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"


def _fmt(winners) -> str:
    return "{" + ",".join(sorted(winners)) + "}"


def run_fixture(fx: Fixture, evaluator=evaluate) -> FixtureResult:
    p = fx.profile
    passed = True
    lines = []
    for spec, expected in ((fx.rule, fx.expected_winners),) + fx.also:
        got = evaluator(spec, p).winners
        ok = got == expected
        passed &= ok
        lines.append(f"{spec.label()}: got {_fmt(got)} expected {_fmt(expected)}{'' if ok else '  MISMATCH'}")
    if fx.expected_sd is not None:
        sd = socially_disappointing(p, fx.expected_winners)
        ok = sd == fx.expected_sd
        passed &= ok
        lines.append(f"disappointing: {str(sd).lower()} expected {str(fx.expected_sd).lower()}"
                     f"{'' if ok else '  MISMATCH'}")
    return FixtureResult(fx.name, passed, tuple(lines), fx.discrepancy)


def run_corpus(evaluator=evaluate) -> CorpusReport:
    return CorpusReport(tuple(run_fixture(FIXTURES[name], evaluator) for name in FIXTURE_NAMES))


def fixture_document(fx: Fixture) -> str:
    header = [
        f"# fixture: {fx.name}",
        f"# rule: {fx.rule.label()}",
        f"# expected winners: {_fmt(fx.expected_winners)}",
        f"# {fx.source}",
    ]
    return "\n".join(header) + "\n" + fx.text


def export_corpus(directory) -> list[Path]:
    """Write every fixture as ``<name>.ballots`` under ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name in FIXTURE_NAMES:
        path = directory / f"{name}.ballots"
        path.write_text(fixture_document(FIXTURES[name]), encoding="utf-8", newline="\n")
        written.append(path)
    return written
