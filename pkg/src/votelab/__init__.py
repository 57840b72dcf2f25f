"""Voting procedures, the social disappointment audit, and bounded axiom checks."""

from .ballots import BallotParseError, parse_profile, serialize_profile
from .criteria import (
    CRITERIA,
    CriterionVerdict,
    SearchBounds,
    check_criterion,
    condorcet_winner,
    enumerate_profiles,
    impossibility_witness,
    replay,
)
from .corpus import load_fixture, run_corpus
from .disappointment import sd_tainted, socially_disappointing
from .model import Profile, ProfileError, TallySummary, profile_from, restrict, tally, validate_profile
from .procedures import RULE_KINDS, Outcome, RuleSpec, evaluate

__all__ = [
    "BallotParseError",
    "CRITERIA",
    "CriterionVerdict",
    "Outcome",
    "Profile",
    "ProfileError",
    "RULE_KINDS",
    "RuleSpec",
    "SearchBounds",
    "TallySummary",
    "check_criterion",
    "condorcet_winner",
    "enumerate_profiles",
    "evaluate",
    "impossibility_witness",
    "load_fixture",
    "parse_profile",
    "profile_from",
    "replay",
    "restrict",
    "run_corpus",
    "sd_tainted",
    "serialize_profile",
    "socially_disappointing",
    "tally",
    "validate_profile",
]
