"""Plain-text ``.ballots`` format.

::

    # comments run to end of line
    alternatives: milk beer wine
    4: milk > wine > beer
    3: beer > wine > milk

The first significant line declares the alternatives; every later one is a
block ``WEIGHT: top > ... > bottom`` covering all of them. LF and CRLF are
both read; only LF is written.
"""

from __future__ import annotations

import re

from .model import Profile, ProfileError, check_token

_WEIGHT = re.compile(r"[0-9]+")

# Stable codes, one per rejected error class.
ERROR_CODES = (
    "missing-alternatives",
    "duplicate-alternative",
    "bad-token",
    "bad-weight",
    "syntax",
    "unknown-alternative",
    "duplicate-in-ranking",
    "incomplete-ranking",
    "no-blocks",
)


class BallotParseError(ValueError):
    def __init__(self, code: str, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.code = code
        self.line = line
        self.column = column


def _significant(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        if raw.endswith("\r"):
            raw = raw[:-1]
        content = raw.split("#", 1)[0]
        if content.strip():
            yield lineno, content


def parse_profile(text: str) -> Profile:
    lines = _significant(text)
    header = next(lines, None)
    if header is None:
        raise BallotParseError("missing-alternatives", "expected an 'alternatives:' line", 1)
    lineno, content = header
    key, sep, rest = content.partition(":")
    if not sep or key.strip() != "alternatives":
        col = len(content) - len(content.lstrip()) + 1
        raise BallotParseError("missing-alternatives", "first line must start with 'alternatives:'", lineno, col)
    alternatives: list[str] = []
    base = len(key) + 1
    for match in re.finditer(r"\S+", rest):
        token = match.group()
        col = base + match.start() + 1
        try:
            check_token(token)
        except ProfileError as exc:
            raise BallotParseError("bad-token", str(exc), lineno, col) from None
        if token in alternatives:
            raise BallotParseError("duplicate-alternative", f"alternative {token!r} declared twice", lineno, col)
        alternatives.append(token)
    if not alternatives:
        raise BallotParseError("missing-alternatives", "no alternatives declared", lineno, base + 1)

    known = set(alternatives)
    blocks = []
    for lineno, content in lines:
        weight_text, sep, rest = content.partition(":")
        lead = len(weight_text) - len(weight_text.lstrip())
        if not sep:
            raise BallotParseError("syntax", "expected 'WEIGHT: a > b > ...'", lineno, lead + 1)
        weight_text = weight_text.strip()
        if not _WEIGHT.fullmatch(weight_text) or int(weight_text) <= 0:
            raise BallotParseError("bad-weight", f"weight must be a positive integer, got {weight_text!r}", lineno, lead + 1)
        ranking: list[str] = []
        offset = len(content) - len(rest)
        for part in rest.split(">"):
            token = part.strip()
            col = offset + (len(part) - len(part.lstrip())) + 1
            offset += len(part) + 1
            if not token or len(token.split()) > 1:
                raise BallotParseError("syntax", "expected one alternative between '>' separators", lineno, col)
            if token not in known:
                raise BallotParseError("unknown-alternative", f"unknown alternative {token!r}", lineno, col)
            if token in ranking:
                raise BallotParseError("duplicate-in-ranking", f"{token!r} ranked twice", lineno, col)
            ranking.append(token)
        if len(ranking) != len(alternatives):
            missing = ", ".join(a for a in alternatives if a not in ranking)
            raise BallotParseError("incomplete-ranking", f"ranking misses {missing}", lineno, len(content))
        blocks.append((int(weight_text), tuple(ranking)))
    if not blocks:
        raise BallotParseError("no-blocks", "at least one ballot block is required", lineno + 1)
    return Profile(tuple(alternatives), tuple(blocks))


def serialize_profile(p: Profile) -> str:
    lines = ["alternatives: " + " ".join(p.alternatives)]
    lines.extend(f"{w}: {' > '.join(r)}" for w, r in p.blocks)
    return "\n".join(lines) + "\n"


def read_profile(path) -> Profile:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_profile(fh.read())
