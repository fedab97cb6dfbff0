"""Braid words, closure components, linking numbers, and the meridian map."""

import pytest

from curvelink.abelian import quotient
from curvelink.braid import (
    CYCLE,
    DROPPED,
    BraidWord,
    StrandLabeling,
    closure_components,
    gamma_dot,
    hat_gamma,
    linking_matrix,
    linking_number,
)

from oracles import linking_number_reversed_roles

# Fiberwise closure over the second basis cycle of the tangent-cubic fixture
# (the braid drawn in the source diagram; the mirror word appears in some
# transcriptions and is exercised in test_mirror_word_flips_all_signs).
TANGENT_CUBIC_BRAID = BraidWord(3, [-1, -2, 1, -2, -1, 2])

SIGMA1 = BraidWord.from_text(8, "-1 2 4 3 -4 -4 3 4 5 5 1 1 2 -1")
SIGMA2 = BraidWord.from_text(8, "-1 2 5 5 -6 3 1 3 4 3 3 5 5 6 -4 -2 1 2")

RHO1 = {"s1": CYCLE, "s2": "L2", "s3": "L1", "s4": "L5", "s5": "L6",
        "s6": "L4", "s7": "L3", "s8": "L0"}
RHO2 = {"s1": CYCLE, "s2": "L3", "s3": "L4", "s4": "L5", "s5": "L6",
        "s6": "L2", "s7": "L1", "s8": "L0"}


def c7_h1():
    return quotient(7, [[1] * 7])


def c7_meridians(group):
    return {f"L{k}": group.generator(k) for k in range(7)}


def test_trivial_word_closure():
    p = closure_components(BraidWord(3))
    assert [sorted(c) for c in p.components] == [[1], [2], [3]]
    assert p.component_names == ("s1", "s2", "s3")


def test_tangent_cubic_braid_closure():
    p = closure_components(TANGENT_CUBIC_BRAID)
    assert [sorted(c) for c in p.components] == [[1], [2], [3]]
    assert p.component_of(2) == "s2"


def test_sigma1_closure_is_eight_singletons():
    p = closure_components(SIGMA1)
    assert len(p.components) == 8
    assert all(len(c) == 1 for c in p.components)
    assert p.component_of(1) == "s1"


def test_multi_strand_components():
    # sigma_1 in B_3 closes into a 2-strand component plus a singleton.
    p = closure_components(BraidWord(3, [1]))
    assert sorted(sorted(c) for c in p.components) == [[1, 2], [3]]
    assert p.component_names == ("s1", "s3")


def test_trivial_braid_has_zero_linking():
    b = BraidWord(4)
    p = closure_components(b)
    for a in p.component_names:
        for c in p.component_names:
            if a != c:
                assert linking_number(b, p, a, c) == 0


def test_tangent_cubic_linking_numbers():
    b = TANGENT_CUBIC_BRAID
    p = closure_components(b)
    assert linking_number(b, p, "s2", "s1") == -1
    assert linking_number(b, p, "s2", "s3") == 1
    assert linking_number(b, p, "s1", "s3") == 1


def test_linking_number_rejects_equal_components():
    b = BraidWord(3)
    p = closure_components(b)
    with pytest.raises(ValueError):
        linking_number(b, p, "s1", "s1")


def test_linking_symmetry_against_reversed_roles_oracle(rng):
    for _ in range(100):
        d = 6
        word = [rng.choice([1, -1]) * rng.randint(1, d - 1)
                for _ in range(rng.randint(0, 18))]
        b = BraidWord(d, word)
        p = closure_components(b)
        names = p.component_names
        for i, a in enumerate(names):
            for c in names[i + 1:]:
                lk = linking_number(b, p, a, c)
                assert lk == linking_number(b, p, c, a)
                assert lk == linking_number_reversed_roles(
                    d, word, p.component(a), p.component(c))


def test_gamma_dot_trivial_braid():
    b = BraidWord(3)
    labeling = StrandLabeling(closure_components(b),
                              {"s1": "T2", "s2": CYCLE, "s3": "T1"})
    assert gamma_dot(b, labeling) == {"s1": 0, "s3": 0}


def test_gamma_dot_tangent_cubic():
    labeling = StrandLabeling(closure_components(TANGENT_CUBIC_BRAID),
                              {"s1": "T2", "s2": CYCLE, "s3": "T1"})
    assert gamma_dot(TANGENT_CUBIC_BRAID, labeling) == {"s1": -1, "s3": 1}


def test_gamma_dot_sigma2():
    labeling = StrandLabeling(closure_components(SIGMA2), RHO2)
    dot = gamma_dot(SIGMA2, labeling)
    assert dot == {"s2": -1, "s3": 1, "s4": 1, "s5": 1,
                   "s6": 0, "s7": 0, "s8": 0}


def test_labeling_requires_exactly_one_cycle():
    p = closure_components(BraidWord(3))
    with pytest.raises(ValueError):
        StrandLabeling(p, {"s1": "A", "s2": "B", "s3": "C"})
    with pytest.raises(ValueError):
        StrandLabeling(p, {"s1": CYCLE, "s2": CYCLE, "s3": "C"})
    with pytest.raises(ValueError):
        StrandLabeling(p, {"s1": CYCLE, "s2": "B"})


def test_hat_gamma_tangent_cubic():
    h1 = quotient(2, [[1, 1]])
    labeling = StrandLabeling(closure_components(TANGENT_CUBIC_BRAID),
                              {"s1": "T2", "s2": CYCLE, "s3": "T1"})
    ghat = hat_gamma(TANGENT_CUBIC_BRAID, labeling, h1,
                     {"T1": h1.generator(0), "T2": h1.generator(1)})
    assert ghat == h1.element([1, -1])


def test_hat_gamma_sigma1():
    h1 = c7_h1()
    labeling = StrandLabeling(closure_components(SIGMA1), RHO1)
    ghat = hat_gamma(SIGMA1, labeling, h1, c7_meridians(h1))
    assert ghat == h1.element([0, 1, -1, 0, 0, -1, 1])


def test_hat_gamma_sigma2():
    h1 = c7_h1()
    labeling = StrandLabeling(closure_components(SIGMA2), RHO2)
    ghat = hat_gamma(SIGMA2, labeling, h1, c7_meridians(h1))
    assert ghat == h1.element([0, 0, 0, -1, 1, 1, 1])


def test_hat_gamma_trivial_braid_is_zero():
    h1 = quotient(2, [[1, 1]])
    b = BraidWord(3)
    labeling = StrandLabeling(closure_components(b),
                              {"s1": "T2", "s2": CYCLE, "s3": "T1"})
    assert hat_gamma(b, labeling, h1,
                     {"T1": h1.generator(0), "T2": h1.generator(1)}).is_zero()


def test_hat_gamma_dropped_strands_contribute_nothing():
    h1 = quotient(1, [[1]])
    labeling = StrandLabeling(closure_components(TANGENT_CUBIC_BRAID),
                              {"s1": DROPPED, "s2": CYCLE, "s3": "T1"})
    ghat = hat_gamma(TANGENT_CUBIC_BRAID, labeling, h1,
                     {"T1": h1.generator(0)})
    assert ghat == h1.element([1])


def test_hat_gamma_missing_meridian():
    h1 = quotient(1, [[1]])
    labeling = StrandLabeling(closure_components(TANGENT_CUBIC_BRAID),
                              {"s1": "T2", "s2": CYCLE, "s3": "T1"})
    with pytest.raises(ValueError):
        hat_gamma(TANGENT_CUBIC_BRAID, labeling, h1, {"T1": h1.generator(0)})


def test_mirror_word_flips_all_signs():
    # The mirror word appears in some transcriptions of the tangent-cubic
    # braid; it yields the negated class, never the documented one.
    mirror = BraidWord(3, [1, 2, -1, 2, 1, -2])
    p = closure_components(mirror)
    assert linking_number(mirror, p, "s2", "s1") == 1
    assert linking_number(mirror, p, "s2", "s3") == -1
    h1 = quotient(2, [[1, 1]])
    labeling = StrandLabeling(p, {"s1": "T2", "s2": CYCLE, "s3": "T1"})
    ghat = hat_gamma(mirror, labeling, h1,
                     {"T1": h1.generator(0), "T2": h1.generator(1)})
    assert ghat == h1.element([-1, 1])


def _random_word(rng, d, length):
    return [rng.choice([1, -1]) * rng.randint(1, d - 1) for _ in range(length)]


def _all_linking_numbers(word, d=6):
    b = BraidWord(d, word)
    return linking_matrix(b, closure_components(b))


def test_insertion_of_cancelling_pair_preserves_linking(rng):
    for _ in range(150):
        d = 6
        word = _random_word(rng, d, rng.randint(0, 14))
        base = _all_linking_numbers(word, d)
        i = rng.randint(1, d - 1)
        pos = rng.randint(0, len(word))
        inserted = word[:pos] + [i, -i] + word[pos:]
        assert _all_linking_numbers(inserted, d) == base


def test_braid_relation_preserves_linking(rng):
    for _ in range(150):
        d = 6
        i = rng.randint(1, d - 2)
        prefix = _random_word(rng, d, rng.randint(0, 8))
        suffix = _random_word(rng, d, rng.randint(0, 8))
        left = prefix + [i, i + 1, i] + suffix
        right = prefix + [i + 1, i, i + 1] + suffix
        assert _all_linking_numbers(left, d) == _all_linking_numbers(right, d)


def test_linking_conservation_against_direct_scan(rng):
    # Twice the sum of all pairwise linking numbers equals the signed count
    # of crossings between distinct components, counted directly.
    for _ in range(100):
        d = 5
        word = _random_word(rng, d, rng.randint(0, 16))
        b = BraidWord(d, word)
        p = closure_components(b)
        total = 2 * sum(linking_matrix(b, p).values())
        comp_of = {}
        for c in p.components:
            for pos in c:
                comp_of[pos] = min(c)
        direct = sum(sign for a, c, sign in b.crossings()
                     if comp_of[a] != comp_of[c])
        assert total == direct


def test_word_validation():
    with pytest.raises(ValueError):
        BraidWord(0)
    with pytest.raises(ValueError):
        BraidWord(3, [3])
    with pytest.raises(ValueError):
        BraidWord(3, [0])
    assert BraidWord.from_text(8, "-1 2 4").letters == (-1, 2, 4)
    assert BraidWord.from_text(3, "").letters == ()
