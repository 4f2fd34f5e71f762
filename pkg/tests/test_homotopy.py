import pytest
from hypothesis import given, settings, strategies as st

from foxcover.cover import UNIVERSAL, PunctureConfig, QuotientSpec
from foxcover.homotopy import (
    PathWord,
    TargetMismatch,
    almost_homotopic,
    almost_trivial,
    equivalence_check,
    equivalence_mismatches,
    separating_level,
)
from foxcover.words import IDENTITY, Word

from oracles import all_reduced, naive_inverse, naive_reduce

CANON8 = PunctureConfig.canonical(8)
letters8 = st.integers(1, 8).flatmap(lambda k: st.sampled_from([k, -k]))
words8 = st.lists(letters8, max_size=6).map(Word)


def brute_same_coset(w1, w2, H):
    return all(abs(a) in H for a in naive_reduce(naive_inverse(w1.letters) + w2.letters))


def test_reflexive_example():
    p = PathWord(Word([3, -1]))
    assert almost_homotopic(p, p, CANON8, 8)


def test_g3_vs_g3g7():
    w1, w2 = Word([3]), Word([3, 7])
    for depth in range(1, 8):
        assert almost_homotopic(w1, w2, CANON8, depth)
    assert separating_level(w1, w2, CANON8, 8) == 8
    # oracle: equal cosets exactly for n <= 7
    assert [brute_same_coset(w1, w2, CANON8.disc(n)) for n in range(1, 9)] == [True] * 7 + [False]


def test_g3_vs_g2g3():
    w1, w2 = Word([3]), Word([2, 3])
    assert separating_level(w1, w2, CANON8, 8) == 3
    assert [brute_same_coset(w1, w2, CANON8.disc(n)) for n in (1, 2, 3)] == [True, True, False]
    for depth in range(3, 9):
        assert not almost_homotopic(w1, w2, CANON8, depth)


def test_target_mismatch():
    with pytest.raises(TargetMismatch):
        almost_homotopic(PathWord(IDENTITY, 1), PathWord(IDENTITY), CANON8, 2)


def test_almost_trivial():
    assert almost_trivial(IDENTITY, CANON8, 8)
    assert almost_trivial(Word([8]), CANON8, 8)  # g8 is in every disc
    assert almost_trivial(Word([8, -8]), CANON8, 8)
    assert not almost_trivial(Word([1]), CANON8, 2)
    assert separating_level(IDENTITY, Word([1]), CANON8, 8) == 2


def test_almost_trivial_quotient():
    q = QuotientSpec.z2_power(8)
    # g1^2 maps to 0 in (Z/2)^8 but is not in <g2..> in the free group
    assert almost_trivial(Word([1, 1]), CANON8, 8, q)
    assert not almost_trivial(Word([1, 1]), CANON8, 8)


@given(words8, words8, words8, st.integers(1, 8))
def test_equivalence_relation(a, b, c, depth):
    ab = almost_homotopic(a, b, CANON8, depth)
    assert almost_homotopic(a, a, CANON8, depth)
    assert ab == almost_homotopic(b, a, CANON8, depth)
    if ab and almost_homotopic(b, c, CANON8, depth):
        assert almost_homotopic(a, c, CANON8, depth)


@given(words8, st.lists(st.sampled_from([7, -7, 8, -8]), max_size=5).map(Word))
def test_right_multiplication_invariance(w, h):
    assert almost_homotopic(w, w * h, CANON8, 7)


@settings(max_examples=200)
@given(words8, words8, st.integers(1, 8))
def test_matches_coset_equality(a, b, depth):
    expected = all(brute_same_coset(a, b, CANON8.disc(n)) for n in range(1, depth + 1))
    assert almost_homotopic(a, b, CANON8, depth) == expected


def test_equivalence_singleton():
    assert equivalence_check([Word([1, 2])], CANON8, UNIVERSAL, 4)


def test_equivalence_exhaustive_small():
    cfg = PunctureConfig.canonical(4)
    sample = [Word._trusted(w) for w in all_reduced([1, 2, 3, 4], 2)]
    assert equivalence_check(sample, cfg, UNIVERSAL, 4)
    assert equivalence_check(sample, cfg, QuotientSpec.z2_power(4), 4)


def test_equivalence_adversarial_pair():
    cfg = PunctureConfig.canonical(4)
    w = Word([2, -1, 3])
    pair = [w, w * Word([4, 4, -4, 4])]
    assert almost_homotopic(*pair, cfg, 4)
    assert equivalence_check(pair, cfg, UNIVERSAL, 4)


def test_mismatch_detection_is_live():
    # a wrong quotient for the lift side must produce mismatches
    cfg = PunctureConfig.canonical(4)
    sample = [Word._trusted(w) for w in all_reduced([1, 2, 3, 4], 2)]
    from foxcover import homotopy

    real = homotopy.lift_endpoint
    try:
        homotopy.lift_endpoint = lambda w, c, q, d: real(w, c, QuotientSpec.z2_power(4), d)
        assert equivalence_mismatches(sample, cfg, UNIVERSAL, 4)
    finally:
        homotopy.lift_endpoint = real
