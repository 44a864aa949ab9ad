import pytest

from cnomial import apparition, seqcore
from cnomial.apparition import (
    PrimeClass,
    PrimeProfile,
    UndeterminedError,
    classify,
    classify_lucas_fast,
    is_prime,
    rank_of_apparition,
    ratio_sequence,
    sequence_valuation,
    valuation,
)
from cnomial.seqcore import FileBackedSpec, LucasSpec, NaturalsSpec


def test_valuation_examples():
    assert valuation(120785, 7) == 2
    assert valuation(1, 5) == 0
    assert valuation(-8, 2) == 3
    with pytest.raises(ValueError):
        valuation(0, 3)


def test_is_prime():
    assert [n for n in range(40) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    assert is_prime(2**31 - 1)
    assert not is_prime(2**31)


def test_rank_of_apparition_examples(lucas52, fib, naturals, eds14):
    assert rank_of_apparition(lucas52, 7) == 8
    assert rank_of_apparition(eds14, 2) == 5
    assert rank_of_apparition(fib, 2) == 3
    for pk in (8, 9, 25):
        assert rank_of_apparition(naturals, pk) == pk


def test_rank_of_apparition_not_found():
    # 2 divides Q, so every term of U(1, 2) is odd: provably no apparition.
    assert rank_of_apparition(LucasSpec(1, 2), 2) is None
    # U(1, 0) is constant 1.
    assert rank_of_apparition(LucasSpec(1, 0), 5) is None


def test_rank_of_apparition_undetermined():
    spec = FileBackedSpec((1, 1, 3), name="short")
    with pytest.raises(UndeterminedError):
        rank_of_apparition(spec, 2)


def test_ratio_sequence_examples(lucas52, fib, naturals):
    assert ratio_sequence(lucas52, 7, 5) == [8, 1, 7, 7, 7]
    assert ratio_sequence(fib, 2, 6) == [3, 2, 1, 2, 2, 2]
    assert ratio_sequence(naturals, 3, 4) == [3, 3, 3, 3]


def test_ratio_sequence_undetermined(eds14):
    assert ratio_sequence(eds14, 2, 2) == [5, 2]
    with pytest.raises(UndeterminedError):
        ratio_sequence(eds14, 2, 3)  # alpha(8) needs index 20, file has 14


def test_classify_lucas52(lucas52, profile_of):
    prof = profile_of(lucas52, 7)
    assert prof.prime_class is PrimeClass.IDEAL
    assert prof.s == 2
    assert prof.alpha == 8
    assert prof.alpha_powers == (8, 8)
    assert prof.ratios == (8, 1, 7, 7, 7)
    assert prof.evidence_kmax == 5


def test_classify_fibonacci(fib, profile_of):
    prof = profile_of(fib, 2)
    assert prof.prime_class is PrimeClass.ACCEPTABLE
    assert prof.s == 3
    assert prof.alpha_powers == (3, 6, 6)
    assert prof.ratios == (3, 2, 1, 2, 2, 2)
    assert prof.stable_modulus == 6


def test_classify_eds(eds14, eds150, profile_of):
    prof = profile_of(eds14, 2)
    assert prof.prime_class is PrimeClass.IDEAL
    assert prof.s == 1
    assert prof.alpha == 5
    assert prof.evidence_kmax == 2  # the 14 stored terms support no more
    long = profile_of(eds150, 2)
    assert long.prime_class is PrimeClass.IDEAL
    assert long.s == 1
    assert long.ratios == (5, 2, 2, 2)


def test_classify_naturals(naturals, profile_of):
    for p in (2, 3, 5):
        prof = profile_of(naturals, p)
        assert prof.prime_class is PrimeClass.IDEAL
        assert prof.s == 1
        assert prof.alpha == p


def test_classify_no_apparition(profile_of):
    prof = profile_of(LucasSpec(1, 2), 2)
    assert prof.prime_class is PrimeClass.NO_APPARITION
    assert prof.s is None
    assert prof.alpha_powers == ()
    with pytest.raises(ValueError):
        prof.alpha


def test_classify_acceptable_chain(make_chain_spec, profile_of):
    spec = make_chain_spec((1, 2, 6, 12, 24, 48, 96), 96)
    prof = profile_of(spec, 2)
    assert prof.prime_class is PrimeClass.ACCEPTABLE
    assert prof.s == 3
    assert prof.ratios == (1, 2, 3, 2, 2, 2)
    assert prof.alpha_powers == (1, 2, 6)


def test_classify_unacceptable_chain(make_chain_spec, profile_of):
    spec = make_chain_spec((1, 2, 6, 18, 54), 60)
    prof = profile_of(spec, 2, kmax=5)
    assert prof.prime_class is PrimeClass.UNACCEPTABLE
    assert prof.s is None
    assert prof.ratios == (1, 2, 3, 3, 3)


def test_classify_undetermined_chain(make_chain_spec):
    # Ratios still deviate from p when the stored terms run out.
    spec = make_chain_spec((1, 2, 6, 18, 54), 60)
    with pytest.raises(UndeterminedError):
        classify(spec, 2)


def test_classify_kmax_validation(fib):
    with pytest.raises(ValueError):
        classify(fib, 2, kmax=1)


def test_classify_lucas_fast_examples():
    assert classify_lucas_fast(5, -2, 7) is PrimeClass.IDEAL
    assert classify_lucas_fast(1, -1, 2) is PrimeClass.ACCEPTABLE
    assert classify_lucas_fast(2, -1, 2) is PrimeClass.IDEAL
    assert classify_lucas_fast(1, -3, 2) is PrimeClass.IDEAL  # U_3 = 4
    assert classify_lucas_fast(1, 2, 2) is PrimeClass.NO_APPARITION
    with pytest.raises(ValueError):
        classify_lucas_fast(2, 2, 3)
    with pytest.raises(ValueError):
        classify_lucas_fast(1, -1, 4)


@pytest.mark.parametrize("params", [(1, -1), (5, -2), (3, -1), (1, -3), (2, -1), (1, 2), (1, 3)])
def test_classify_lucas_fast_agrees_with_classify(params, profile_of):
    spec = LucasSpec(*params)
    for p in (2, 3, 5, 7, 11, 13):
        assert classify_lucas_fast(*params, p) is profile_of(spec, p).prime_class, (params, p)


def test_divisibility_law(fib, lucas52):
    # p^j | C_n exactly when alpha(p^j) | n; no apparition means no multiple.
    for spec in (fib, lucas52):
        for p in (2, 3, 5, 7):
            for j in (1, 2, 3):
                alpha = rank_of_apparition(spec, p**j)
                for n in range(1, 201):
                    divides = seqcore.term_mod(spec, n, p**j) == 0
                    expected = alpha is not None and n % alpha == 0
                    assert divides == expected, (spec.selector, p, j, n)


def test_s_two_ways_for_ideal(lucas52, naturals, eds14, fib, profile_of):
    # For ideal primes, s equals the valuation of the term at alpha(p) and
    # the stabilized chain is constant there.
    cases = [(lucas52, 7), (naturals, 3), (eds14, 2), (fib, 3), (fib, 5)]
    for spec, p in cases:
        prof = profile_of(spec, p)
        assert prof.prime_class is PrimeClass.IDEAL
        assert prof.s == sequence_valuation(spec, prof.alpha, p)
        assert set(prof.alpha_powers) == {prof.alpha}


def test_profile_invariants(fib, lucas52, naturals, profile_of):
    for spec, p in [(fib, 2), (fib, 3), (lucas52, 7), (naturals, 5)]:
        prof = profile_of(spec, p)
        assert prof.ratios[0] == prof.alpha_powers[0] == prof.alpha
        for a, b in zip(prof.alpha_powers, prof.alpha_powers[1:]):
            assert b % a == 0 and b >= a
        assert len(prof.alpha_powers) == prof.s
        assert prof.evidence_kmax == len(prof.ratios)


def test_profile_json_round_trip(fib, profile_of):
    prof = profile_of(fib, 2)
    data = prof.to_json_dict()
    assert data["class"] == "Acceptable"
    assert PrimeProfile.from_json_dict(data) == prof
    noapp = classify(LucasSpec(1, 2), 2)
    assert PrimeProfile.from_json_dict(noapp.to_json_dict()) == noapp


def test_alpha_chain_bounded(fib, eds150):
    assert apparition.alpha_chain(fib, 2, 50) == [3, 6, 6, 12, 24, 48]
    assert apparition.alpha_chain(eds150, 2, 120) == [5, 10, 20, 40, 80]
    assert apparition.alpha_chain(NaturalsSpec(), 3, 100) == [3, 9, 27, 81]
