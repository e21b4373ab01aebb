import pytest

from ltlab.lyndon import (bracket_text, compositions, from_lyndon, is_lyndon, lyndon_poly,
                          lyndon_words, standard_factorization, t_bracket, to_lyndon)


def test_compositions_count():
    assert [len(compositions(k)) for k in range(8)] == [1, 1, 2, 4, 8, 16, 32, 64]


def test_lyndon_words_small():
    assert lyndon_words(3) == [(1, 2), (3,)]
    assert lyndon_words(4) == [(1, 1, 2), (1, 3), (4,)]
    assert not is_lyndon((1, 1)) and not is_lyndon(())


def test_lyndon_counts_weighted_alphabet():
    # one generator in each degree: the free Lie algebra has these graded ranks
    assert [len(lyndon_words(k)) for k in range(1, 9)] == [1, 1, 2, 3, 6, 9, 18, 30]


def test_lyndon_counts_two_letters():
    # words in letters 1 and 2 of length L <-> compositions filtered by alphabet;
    # Witt's formula for two letters gives 2, 1, 2, 3, 6 in lengths 1..5
    by_len = {}
    for k in range(1, 11):
        for w in lyndon_words(k, letters=(1, 2)):
            by_len[len(w)] = by_len.get(len(w), 0) + 1
    # length-L words of weight <= 10 cover all lengths up to 5
    assert [by_len[L] for L in range(1, 6)] == [2, 1, 2, 3, 6]


def test_standard_factorization():
    assert standard_factorization((1, 1, 2)) == ((1,), (1, 2))
    assert bracket_text((1, 1, 2)) == "[e1,[e1,e2]]"
    with pytest.raises(ValueError):
        standard_factorization((3,))


def test_round_trip_and_straightening():
    for k in range(1, 7):
        for w in lyndon_words(k):
            assert to_lyndon(lyndon_poly(w)) == {w: 1}
    # [e2, e1] = -[e1, e2]
    assert to_lyndon(t_bracket({(2,): 1}, {(1,): 1})) == {(1, 2): -1}
    # Jacobi-type straightening: [e2,[e1,e1]] vanishes, [[e1,e2],e1] = -[e1,[e1,e2]]
    br = t_bracket(lyndon_poly((1, 2)), {(1,): 1})
    assert to_lyndon(br) == {(1, 1, 2): -1}
    assert from_lyndon({(1, 1, 2): -1}) == br


def test_non_lie_rejected():
    with pytest.raises(ValueError):
        to_lyndon({(1, 1): 1})
