"""Social disappointment: a winner that at least half the voters rank last."""

from __future__ import annotations

from typing import Iterable

from .model import Alternative, Profile, ProfileError, bottom_counts


class UndefinedForProfile(ProfileError):
    pass


def sd_tainted(p: Profile, candidates: Iterable[Alternative]) -> frozenset[Alternative]:
    """Members of ``candidates`` ranked last by at least half of the voters.

    Counts always come from the full ballots of ``p``. Only meaningful with
    three or more alternatives.
    """
    if p.m < 3:
        raise UndefinedForProfile(
            "sd-undefined", f"social disappointment undefined for m<3 (profile has m={p.m})"
        )
    bottoms = bottom_counts(p)
    n = p.n
    return frozenset(x for x in candidates if 2 * bottoms[x] >= n)


def socially_disappointing(p: Profile, winners: Iterable[Alternative]) -> bool:
    return bool(sd_tainted(p, winners))
