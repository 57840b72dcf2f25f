"""Deliberately naive reference implementations used as test oracles.

Everything works on plain lists of ballots (one per voter), recomputes from
scratch, and shares no code with the package.
"""

from itertools import permutations


def ballots(profile):
    out = []
    for weight, ranking in profile.blocks:
        out.extend([list(ranking)] * weight)
    return out


def beats_count(bs, x, y):
    return sum(1 for b in bs if b.index(x) < b.index(y))


def margin(bs, x, y):
    return beats_count(bs, x, y) - beats_count(bs, y, x)


def shrink(bs, keep):
    return [[a for a in b if a in keep] for b in bs]


def plurality(alts, bs):
    score = {a: sum(1 for b in bs if b[0] == a) for a in alts}
    top = max(score.values())
    return {a for a in alts if score[a] == top}


def borda(alts, bs):
    score = {a: sum(len(b) - 1 - b.index(a) for b in bs) for a in alts}
    top = max(score.values())
    return {a for a in alts if score[a] == top}


def hare(alts, bs):
    left = set(alts)
    while len(left) > 1:
        cur = shrink(bs, left)
        score = {a: sum(1 for b in cur if b[0] == a) for a in left}
        low = min(score.values())
        out = {a for a in left if score[a] == low}
        if out == left:
            break
        left -= out
    return left


def lpr(alts, bs):
    left = set(alts)
    while len(left) > 1:
        cur = shrink(bs, left)
        score = {a: sum(1 for b in cur if b[-1] == a) for a in left}
        high = max(score.values())
        out = {a for a in left if score[a] == high}
        if out == left:
            break
        left -= out
    return left


def lu(alts, bs):
    score = {a: sum(1 for b in bs if b[-1] == a) for a in alts}
    low = min(score.values())
    return {a for a in alts if score[a] == low}


def lur(alts, bs):
    current = set(alts)
    while True:
        nxt = lu(sorted(current), shrink(bs, current))
        if len(nxt) == 1 or nxt == current:
            return nxt
        current = nxt


def condorcet(alts, bs, strict=False):
    if strict:
        return {x for x in alts if all(margin(bs, x, y) > 0 for y in alts if y != x)}
    return {x for x in alts if all(margin(bs, x, y) >= 0 for y in alts if y != x)}


def seq_pairs(agenda, bs):
    alive = {agenda[0]}
    for x in agenda[1:]:
        stay = {s for s in alive if margin(bs, s, x) >= 0}
        if not any(margin(bs, x, s) < 0 for s in alive):
            stay.add(x)
        alive = stay
    return alive


def tainted(alts, bs, winners):
    return {x for x in winners if sum(1 for b in bs if b[-1] == x) * 2 >= len(bs)}


def winners(kind, alts, bs, agenda=None, dictator=1, strict=False):
    if kind == "plurality":
        return plurality(alts, bs)
    if kind == "borda":
        return borda(alts, bs)
    if kind == "hare":
        return hare(alts, bs)
    if kind == "lpr":
        return lpr(alts, bs)
    if kind == "lu":
        return lu(alts, bs)
    if kind == "lur":
        return lur(alts, bs)
    if kind == "dictator":
        return {bs[dictator - 1][0]}
    if kind == "condorcet":
        return condorcet(alts, bs, strict)
    if kind == "condorcet-amend":
        w = condorcet(alts, bs, strict)
        return w - tainted(alts, bs, w) if len(alts) >= 3 else w
    if kind == "seq-pairs":
        return seq_pairs(agenda, bs)
    if kind == "seq-pairs-amend":
        w = seq_pairs(agenda, bs)
        return w - tainted(alts, bs, w) if len(alts) >= 3 else w
    raise ValueError(kind)


def all_ballot_lists(alts, n):
    """Every voter-ordered list of n ballots, in lexicographic order."""
    rankings = [list(r) for r in permutations(alts)]

    def rec(k):
        if k == 0:
            yield []
            return
        for head in rankings:
            for rest in rec(k - 1):
                yield [head] + rest

    yield from rec(n)


def _agendas(kind, alts):
    if kind in ("seq-pairs", "seq-pairs-amend"):
        return [list(a) for a in permutations(alts)]
    return [None]


def _violates(crit, kind, alts, bs, agenda):
    w = winners(kind, alts, bs, agenda=agenda)
    if crit == "aaw":
        return not w
    if crit == "non-sd":
        return bool(tainted(alts, bs, w))
    if crit == "cwc":
        weak = condorcet(alts, bs)
        return len(weak) == 1 and w != weak
    if crit == "pareto":
        return any(all(b.index(x) < b.index(y) for b in bs) for y in w for x in alts if x != y)
    if crit == "mono":
        for x in w:
            for v, b in enumerate(bs):
                i = b.index(x)
                if i == 0:
                    continue
                nb = list(b)
                nb[i - 1], nb[i] = nb[i], nb[i - 1]
                if x not in winners(kind, alts, bs[:v] + [nb] + bs[v + 1:], agenda=agenda):
                    return True
        return False
    raise ValueError(crit)


def first_violation(kind, crit, m, n_max):
    """(n, index) of the first violating profile in enumeration order, or None."""
    alts = "abcdef"[:m]
    for n in range(1, n_max + 1):
        everything = list(all_ballot_lists(alts, n)) if crit == "iia" else None
        for index, bs in enumerate(everything or all_ballot_lists(alts, n)):
            for agenda in _agendas(kind, alts):
                if crit == "iia":
                    if _iia_at(kind, alts, bs, agenda, everything):
                        return n, index
                elif _violates(crit, kind, alts, bs, agenda):
                    return n, index
    return None


def _iia_at(kind, alts, bs, agenda, everything):
    w = winners(kind, alts, bs, agenda=agenda)
    for x in w:
        for y in set(alts) - w:
            pattern = [b.index(x) < b.index(y) for b in bs]
            for other in everything:
                if [b.index(x) < b.index(y) for b in other] == pattern:
                    if y in winners(kind, alts, other, agenda=agenda):
                        return True
    return False


def mono_lift_count(kind, alts, n_max, agenda=None):
    """Number of (profile, winner, voter) lifts the mono check must visit."""
    total = 0
    for n in range(1, n_max + 1):
        for bs in all_ballot_lists(alts, n):
            for x in winners(kind, alts, bs, agenda=agenda):
                total += sum(1 for b in bs if b[0] != x)
    return total
