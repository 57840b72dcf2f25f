"""Preference profiles and the tallies every procedure reads from them.

A profile is stored as weighted blocks of identical rankings, but every
count here is defined over the expanded multiset of voters: a block of
weight 3 behaves exactly like three single voters in a row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

Alternative = str
Ranking = tuple[Alternative, ...]

_FORBIDDEN = frozenset(">:,#")


class ProfileError(ValueError):
    """Raised when a candidate profile breaks a structural invariant.

    ``code`` is a short stable identifier so callers can tell error classes
    apart without parsing the message.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def check_token(name: str) -> None:
    if not isinstance(name, str) or not name:
        raise ProfileError("bad-token", f"alternative name must be a nonempty string, got {name!r}")
    if any(ch.isspace() or ch in _FORBIDDEN for ch in name):
        raise ProfileError("bad-token", f"alternative name {name!r} contains a reserved character")


@dataclass(frozen=True)
class Profile:
    """Validated, immutable preference profile.

    ``alternatives`` keeps declaration order (it drives serialization and
    enumeration order); set semantics are available through ``alt_set``.
    """

    alternatives: tuple[Alternative, ...]
    blocks: tuple[tuple[int, Ranking], ...]

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @property
    def n(self) -> int:
        return sum(w for w, _ in self.blocks)

    @property
    def alt_set(self) -> frozenset[Alternative]:
        return frozenset(self.alternatives)

    def voters(self) -> Iterator[Ranking]:
        """Yield one ranking per voter, in 1-based voter order."""
        for weight, ranking in self.blocks:
            for _ in range(weight):
                yield ranking

    def voter(self, index: int) -> Ranking:
        """Ranking of voter ``index`` (1-based, expanded block order)."""
        if not 1 <= index <= self.n:
            raise IndexError(f"voter index {index} outside 1..{self.n}")
        seen = 0
        for weight, ranking in self.blocks:
            seen += weight
            if index <= seen:
                return ranking
        raise AssertionError("unreachable")

    def expanded(self) -> Profile:
        """Same voters, one weight-1 block each."""
        return Profile(self.alternatives, tuple((1, r) for r in self.voters()))

    def __str__(self) -> str:
        parts = [f"{w}:({','.join(r)})" for w, r in self.blocks]
        return "{" + ", ".join(parts) + "}"


def validate_profile(
    alternatives: Iterable[Alternative] | None,
    blocks: Iterable[tuple[int, Sequence[Alternative]]],
) -> Profile:
    """Build a ``Profile`` or raise ``ProfileError``; nothing is repaired.

    When ``alternatives`` is None the set is taken from the first ranking,
    in its order.
    """
    blocks = [(w, tuple(r)) for w, r in blocks]
    if not blocks:
        raise ProfileError("empty-profile", "a profile needs at least one block")
    if alternatives is None:
        alternatives = blocks[0][1]
    alts = tuple(alternatives)
    if not alts:
        raise ProfileError("empty-profile", "a profile needs at least one alternative")
    for a in alts:
        check_token(a)
    if len(set(alts)) != len(alts):
        dup = next(a for a in alts if alts.count(a) > 1)
        raise ProfileError("duplicate-alternative", f"alternative {dup!r} declared twice")
    alt_set = set(alts)
    for i, (weight, ranking) in enumerate(blocks, start=1):
        if isinstance(weight, bool) or not isinstance(weight, int) or weight <= 0:
            raise ProfileError("bad-weight", f"block {i}: weight must be a positive integer, got {weight!r}")
        seen: set[Alternative] = set()
        for a in ranking:
            if a not in alt_set:
                raise ProfileError("unknown-alternative", f"block {i}: unknown alternative {a!r}")
            if a in seen:
                raise ProfileError("duplicate-in-ranking", f"block {i}: {a!r} ranked twice")
            seen.add(a)
        if seen != alt_set:
            missing = [a for a in alts if a not in seen]
            raise ProfileError("incomplete-ranking", f"block {i}: missing {', '.join(missing)}")
    return Profile(alts, tuple(blocks))


def profile_from(*blocks: tuple[int, str | Sequence[Alternative]], alternatives=None) -> Profile:
    """Shorthand for fixtures: ``profile_from((2, "abc"), (1, "cba"))``.

    A plain string ranking is split into single-character names.
    """
    return validate_profile(alternatives, [(w, tuple(r)) for w, r in blocks])


@dataclass(frozen=True)
class TallySummary:
    first_counts: Mapping[Alternative, int]
    bottom_counts: Mapping[Alternative, int]
    pairwise: Mapping[tuple[Alternative, Alternative], int]

    def margin(self, x: Alternative, y: Alternative) -> int:
        return self.pairwise[x, y]


def tally(p: Profile) -> TallySummary:
    alts = p.alternatives
    first = dict.fromkeys(alts, 0)
    bottom = dict.fromkeys(alts, 0)
    pairwise = {(x, y): 0 for x in alts for y in alts}
    for weight, ranking in p.blocks:
        first[ranking[0]] += weight
        bottom[ranking[-1]] += weight
        for i, x in enumerate(ranking):
            for y in ranking[i + 1:]:
                pairwise[x, y] += weight
                pairwise[y, x] -= weight
    return TallySummary(first, bottom, pairwise)


def bottom_counts(p: Profile) -> dict[Alternative, int]:
    counts = dict.fromkeys(p.alternatives, 0)
    for weight, ranking in p.blocks:
        counts[ranking[-1]] += weight
    return counts


def restrict(p: Profile, keep: Iterable[Alternative]) -> Profile:
    """Drop every alternative outside ``keep``; relative order and weights survive."""
    keep = set(keep)
    if not keep:
        raise ProfileError("empty-keep", "restriction needs at least one alternative")
    unknown = keep - p.alt_set
    if unknown:
        raise ProfileError("unknown-alternative", f"cannot keep unknown {sorted(unknown)}")
    alts = tuple(a for a in p.alternatives if a in keep)
    blocks = tuple((w, tuple(a for a in r if a in keep)) for w, r in p.blocks)
    return Profile(alts, blocks)
