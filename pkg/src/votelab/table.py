"""Regenerate the rule-by-criterion matrix and diff it against published claims.

Each cell is a bounded check: the reference profiles of the corpus are tried
first (so a published counterexample is cited when it still holds), then
the exhaustive enumeration within the bounds. "yes" therefore means only
"no violation within these bounds and seeds".
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .corpus import fixture_profiles
from .criteria import CRITERIA, ENUMERATION_CAP, BoundsError, CapExceeded, SearchBounds, check_criterion
from .procedures import RULE_KINDS, RuleSpec

# Published claims, True = the rule satisfies the criterion.
_Y, _N = True, False
SUMMARY_TABLE = {
    "condorcet": dict(zip(CRITERIA, (_N, _Y, _Y, _Y, _Y, _N))),
    "plurality": dict(zip(CRITERIA, (_Y, _N, _Y, _Y, _N, _N))),
    "borda": dict(zip(CRITERIA, (_Y, _N, _Y, _Y, _N, _N))),
    "hare": dict(zip(CRITERIA, (_Y, _N, _Y, _N, _N, _N))),
    "seq-pairs": dict(zip(CRITERIA, (_Y, _N, _N, _Y, _N, _N))),
    "dictator": dict(zip(CRITERIA, (_Y, _N, _Y, _Y, _N, _N))),
    "lpr": dict(zip(CRITERIA, (_Y, _N, _Y, _Y, _N, _Y))),
    "condorcet-amend": dict(zip(CRITERIA, (_N, _N, _Y, _Y, _Y, _Y))),
    "seq-pairs-amend": dict(zip(CRITERIA, (_Y, _N, _Y, _Y, _N, _Y))),
    "lu": dict(zip(CRITERIA, (_Y, _N, _N, _Y, _N, _Y))),
    "lur": dict(zip(CRITERIA, (_Y, _N, _Y, _Y, _N, _Y))),
}
LPR_TABLE = {"lpr": dict(zip(CRITERIA, (_Y, _N, _Y, _N, _N, _Y)))}
SD_TABLE = {k: {"non-sd": _N} for k in ("plurality", "borda", "hare", "seq-pairs", "dictator", "condorcet")}
AMENDMENT_TABLE = {
    "condorcet-amend": dict(zip(CRITERIA, (_N, _N, _Y, _Y, _Y, _Y))),
    "seq-pairs-amend": dict(zip(CRITERIA, (_Y, _N, _Y, _Y, _N, _Y))),
}
PUBLISHED = {
    "sd-table": SD_TABLE,
    "lpr-table": LPR_TABLE,
    "amendment-table": AMENDMENT_TABLE,
    "summary-table": SUMMARY_TABLE,
}


def _yn(value: bool) -> str:
    return "yes" if value else "no"


@dataclass(frozen=True)
class Cell:
    rule: str
    criterion: str
    satisfied: bool
    witness: str | None
    explanation: str | None

    def text(self) -> str:
        return "yes" if self.satisfied else f"no:{self.witness}"


@dataclass(frozen=True)
class DiffEntry:
    rule: str
    criterion: str
    computed: bool
    witness: str | None
    published: tuple[tuple[str, bool], ...]

    @property
    def tables_disagree(self) -> bool:
        return len({v for _, v in self.published}) > 1

    def text(self) -> str:
        claims = "; ".join(f"{name} {_yn(v)}" for name, v in self.published)
        computed = "yes" if self.computed else f"no via {self.witness}"
        line = f"{self.rule} {self.criterion}: computed {computed}; {claims}"
        if self.tables_disagree:
            line += "  [published tables disagree]"
        elif self.computed:
            line += "  [no counterexample within bounds]"
        else:
            line += "  [counterexample found]"
        return line


@dataclass(frozen=True)
class CriteriaTable:
    bounds: SearchBounds
    cells: dict[tuple[str, str], Cell]
    diff: tuple[DiffEntry, ...]

    def render(self) -> str:
        head = ["rule"] + list(CRITERIA)
        rows = [[rule] + [self.cells[rule, c].text() for c in CRITERIA] for rule in RULE_KINDS]
        widths = [max(len(r[i]) for r in [head] + rows) for i in range(len(head))]
        fmt = lambda row: "  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip()
        out = [f"criteria matrix ({self.bounds.describe()}, seeded with reference profiles)", fmt(head)]
        out.extend(fmt(r) for r in rows)
        out.append("")
        out.append("WITNESSES")
        for rule in RULE_KINDS:
            for c in CRITERIA:
                cell = self.cells[rule, c]
                if not cell.satisfied:
                    out.append(f"  {rule} {c}: {cell.witness}: {cell.explanation}")
        out.append("")
        out.append("PAPER-DIFF")
        if not self.diff:
            out.append("  (none)")
        out.extend(f"  {d.text()}" for d in self.diff)
        return "\n".join(out) + "\n"

    def as_dict(self) -> dict:
        return {
            "bounds": {"m": self.bounds.m, "n_min": self.bounds.n_min, "n_max": self.bounds.n_max},
            "rules": list(RULE_KINDS),
            "criteria": list(CRITERIA),
            "matrix": {
                rule: {
                    c: {
                        "value": "yes" if self.cells[rule, c].satisfied else "no",
                        "witness": self.cells[rule, c].witness,
                    }
                    for c in CRITERIA
                }
                for rule in RULE_KINDS
            },
            "paper_diff": [
                {
                    "rule": d.rule,
                    "criterion": d.criterion,
                    "computed": _yn(d.computed),
                    "witness": d.witness,
                    "published": {name: _yn(v) for name, v in d.published},
                    "tables_disagree": d.tables_disagree,
                }
                for d in self.diff
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


def published_claims(rule: str, criterion: str) -> tuple[tuple[str, bool], ...]:
    return tuple(
        (name, table[rule][criterion])
        for name, table in PUBLISHED.items()
        if criterion in table.get(rule, {})
    )


def build_table(bounds: SearchBounds, workers: int | None = None, cap: int = ENUMERATION_CAP) -> CriteriaTable:
    if bounds.m < 3:
        raise BoundsError("the criteria table needs m >= 3 (social disappointment undefined for m<3)")
    total = bounds.count()
    if total > cap:
        raise CapExceeded(total, cap)
    cells = {}
    for rule in RULE_KINDS:
        for c in CRITERIA:
            seeds = fixture_profiles((rule, c))
            verdict = check_criterion(RuleSpec(rule), c, bounds, seeds, workers, cap)
            w = verdict.witness
            cells[rule, c] = Cell(rule, c, not verdict.violated, w.source if w else None, w.explanation if w else None)
    diff = []
    for rule in RULE_KINDS:
        for c in CRITERIA:
            claims = published_claims(rule, c)
            cell = cells[rule, c]
            if any(v != cell.satisfied for _, v in claims):
                diff.append(DiffEntry(rule, c, cell.satisfied, cell.witness, claims))
    return CriteriaTable(bounds, cells, tuple(diff))
