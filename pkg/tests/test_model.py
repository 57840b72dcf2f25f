import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_ballot_lists, margin
from votelab.model import (
    Profile,
    ProfileError,
    bottom_counts,
    profile_from,
    restrict,
    tally,
    validate_profile,
)


@st.composite
def profiles(draw, max_m=5, max_blocks=6, max_weight=4):
    m = draw(st.integers(1, max_m))
    alts = tuple("abcde"[:m])
    k = draw(st.integers(1, max_blocks))
    blocks = [(draw(st.integers(1, max_weight)), tuple(draw(st.permutations(alts)))) for _ in range(k)]
    return Profile(alts, tuple(blocks))


def test_validate_builds_profile():
    p = validate_profile(["milk", "beer", "wine"], [(4, ["milk", "wine", "beer"]), (3, ["beer", "wine", "milk"])])
    assert p.m == 3
    assert p.n == 7
    assert p.voter(5) == ("beer", "wine", "milk")


def test_alternatives_default_to_first_ranking():
    p = validate_profile(None, [(1, "bca"), (1, "abc")])
    assert p.alternatives == ("b", "c", "a")


@pytest.mark.parametrize(
    "alts, blocks, code",
    [
        (["a", "b"], [], "empty-profile"),
        ([], [(1, [])], "empty-profile"),
        (["a", "a"], [(1, ["a", "a"])], "duplicate-alternative"),
        (["a b", "c"], [(1, ["a b", "c"])], "bad-token"),
        (["a>", "c"], [(1, ["a>", "c"])], "bad-token"),
        (["a", "b"], [(0, ["a", "b"])], "bad-weight"),
        (["a", "b"], [(-2, ["a", "b"])], "bad-weight"),
        (["a", "b"], [(True, ["a", "b"])], "bad-weight"),
        (["a", "b"], [(1.5, ["a", "b"])], "bad-weight"),
        (["a", "b"], [(1, ["a", "z"])], "unknown-alternative"),
        (["a", "b", "c"], [(1, ["a", "a", "b"])], "duplicate-in-ranking"),
        (["a", "b", "c"], [(1, ["a", "b"])], "incomplete-ranking"),
    ],
)
def test_validate_rejects(alts, blocks, code):
    with pytest.raises(ProfileError) as err:
        validate_profile(alts, blocks)
    assert err.value.code == code


def test_tally_drinks():
    p = validate_profile(
        ["milk", "beer", "wine"],
        [(4, ["milk", "wine", "beer"]), (3, ["beer", "wine", "milk"]), (2, ["wine", "beer", "milk"])],
    )
    t = tally(p)
    assert t.first_counts == {"milk": 4, "beer": 3, "wine": 2}
    assert t.bottom_counts == {"milk": 5, "beer": 4, "wine": 0}
    assert t.margin("wine", "milk") == 1
    assert t.margin("wine", "beer") == 3
    assert t.margin("beer", "milk") == 1
    assert bottom_counts(p) == t.bottom_counts


def test_restrict_keeps_order_and_weights():
    p = profile_from((2, "abc"), (1, "cab"))
    q = restrict(p, {"a", "c"})
    assert q.alternatives == ("a", "c")
    assert q.blocks == ((2, ("a", "c")), (1, ("c", "a")))


def test_restrict_errors():
    p = profile_from((1, "abc"))
    with pytest.raises(ProfileError) as err:
        restrict(p, [])
    assert err.value.code == "empty-keep"
    with pytest.raises(ProfileError) as err:
        restrict(p, ["z"])
    assert err.value.code == "unknown-alternative"


def test_voter_index_bounds():
    p = profile_from((2, "ab"))
    with pytest.raises(IndexError):
        p.voter(0)
    with pytest.raises(IndexError):
        p.voter(3)


@given(profiles())
def test_margins_antisymmetric_and_bounded(p):
    t = tally(p)
    for x in p.alternatives:
        assert t.margin(x, x) == 0
        for y in p.alternatives:
            assert t.margin(x, y) == -t.margin(y, x)
            assert abs(t.margin(x, y)) <= p.n
            assert (t.margin(x, y) - p.n) % 2 == 0 or x == y
    assert sum(t.first_counts.values()) == p.n
    assert sum(t.bottom_counts.values()) == p.n


@given(profiles(), st.randoms(use_true_random=False))
def test_tally_ignores_block_split_and_order(p, rnd):
    singles = list(p.expanded().blocks)
    rnd.shuffle(singles)
    q = Profile(p.alternatives, tuple(singles))
    assert tally(q) == tally(p)


@given(profiles(), st.data())
def test_restrict_matches_tally_on_pairs(p, data):
    keep = data.draw(st.sets(st.sampled_from(p.alternatives), min_size=1))
    q = restrict(p, keep)
    tp, tq = tally(p), tally(q)
    for x in keep:
        for y in keep:
            assert tq.margin(x, y) == tp.margin(x, y)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tally_against_brute_force(n):
    alts = ("a", "b", "c")
    for bs in all_ballot_lists(alts, n):
        p = Profile(alts, tuple((1, tuple(b)) for b in bs))
        t = tally(p)
        for x in alts:
            assert t.first_counts[x] == sum(b[0] == x for b in bs)
            assert t.bottom_counts[x] == sum(b[-1] == x for b in bs)
            for y in alts:
                if x != y:
                    assert t.margin(x, y) == margin(bs, x, y)
