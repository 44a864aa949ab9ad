"""Sequence-dependent initial row vectors for the matrix-product evaluation.

The digit matrices are universal; everything the sequence contributes to a
query enters through one row vector indexed by the residue r of the query
index modulo alpha(p) (ideal primes) or alpha(p^s) (acceptable primes).

For ideal primes the vector entries have a closed form: entry lam is
x^{(s-1)*lam} times the number of k-tuples of residues below alpha(p)
summing to r + lam*alpha(p).  For acceptable primes no closed form is
known; each qualifying residue tuple is enumerated and contributes a power
of x given by the carry exponent below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .apparition import PrimeClass, PrimeProfile
from .polyarith import PolyVector, ValPoly
from .transfer import digit_sum_count

IDEAL_PATH = "ideal"
ACCEPTABLE_PATH = "acceptable"


@dataclass(frozen=True)
class InitialVector:
    """Row vector for residue r, together with the modulus that defined r."""

    vector: PolyVector
    modulus: int
    residue: int

    def __post_init__(self):
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} not in [0, {self.modulus})")


def _require_class(profile: PrimeProfile, allowed: tuple[PrimeClass, ...]) -> None:
    if profile.prime_class not in allowed:
        raise ValueError(
            f"p={profile.p} is {profile.prime_class.value}; "
            f"this vector needs {' or '.join(c.value for c in allowed)}"
        )


def ideal_binomial_vector(profile: PrimeProfile, r: int) -> InitialVector:
    """[r+1, (alpha(p)-r-1) * x^(s-1)] for an ideal prime, modulus alpha(p)."""
    _require_class(profile, (PrimeClass.IDEAL,))
    alpha, s = profile.alpha, profile.s
    if not 0 <= r < alpha:
        raise ValueError(f"residue {r} not in [0, {alpha})")
    vec = PolyVector.row(ValPoly({0: r + 1}), ValPoly({s - 1: alpha - r - 1}))
    return InitialVector(vec, modulus=alpha, residue=r)


def ideal_multinomial_vector(profile: PrimeProfile, k: int, r: int) -> InitialVector:
    """Length-k row for an ideal prime, modulus alpha(p).

    Entry lam is x^{(s-1)*lam} with coefficient
    sum_{j=0..lam} (-1)^j C(k, j) C(r + (lam-j)*alpha + k - 1, k - 1),
    the count of k-tuples in [0, alpha)^k summing to r + lam*alpha.
    """
    _require_class(profile, (PrimeClass.IDEAL,))
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    alpha, s = profile.alpha, profile.s
    if not 0 <= r < alpha:
        raise ValueError(f"residue {r} not in [0, {alpha})")
    entries = [
        ValPoly({(s - 1) * lam: digit_sum_count(k, alpha, r + lam * alpha)})
        for lam in range(k)
    ]
    return InitialVector(PolyVector.row(*entries), modulus=alpha, residue=r)


def f_value(profile: PrimeProfile, k: int, lam: int, r: int,
            rtuple: tuple[int, ...]) -> int:
    """Carry exponent for one residue tuple of an acceptable (or ideal) prime.

    Equals lam * sum_{j=1..s} alpha(p^s)/alpha(p^j)
    + sum_{j=1..s} (floor(r/alpha(p^j)) - sum_i floor(r_i/alpha(p^j))).
    Requires every r_i in [0, alpha(p^s)) and sum(rtuple) = r + lam*alpha(p^s).
    """
    _require_class(profile, (PrimeClass.IDEAL, PrimeClass.ACCEPTABLE))
    powers = profile.alpha_powers
    base = powers[-1]
    if len(rtuple) != k:
        raise ValueError(f"need a {k}-tuple, got {len(rtuple)} entries")
    if not 0 <= lam < k:
        raise ValueError(f"lam {lam} not in [0, {k})")
    if not 0 <= r < base:
        raise ValueError(f"residue {r} not in [0, {base})")
    if any(not 0 <= ri < base for ri in rtuple):
        raise ValueError(f"tuple entries must lie in [0, {base})")
    if sum(rtuple) != r + lam * base:
        raise ValueError(
            f"tuple sums to {sum(rtuple)}, expected r + lam*alpha(p^s) = {r + lam * base}"
        )
    value = lam * sum(base // a for a in powers)
    for a in powers:
        value += r // a - sum(ri // a for ri in rtuple)
    return value


def _bounded_compositions(total: int, k: int, bound: int) -> Iterator[tuple[int, ...]]:
    # Compositions of total into k parts, each in [0, bound); branches that
    # cannot reach the total are pruned rather than filtered.
    if k == 1:
        if 0 <= total < bound:
            yield (total,)
        return
    lo = max(0, total - (k - 1) * (bound - 1))
    hi = min(bound - 1, total)
    for first in range(lo, hi + 1):
        for rest in _bounded_compositions(total - first, k - 1, bound):
            yield (first,) + rest


def acceptable_vector(profile: PrimeProfile, k: int, r: int) -> InitialVector:
    """Length-k row for an acceptable prime, modulus alpha(p^s).

    Entry lam sums x^(f - lam) over all k-tuples of residues below
    alpha(p^s) summing to r + lam*alpha(p^s), with f the carry exponent of
    the tuple.  Ideal primes are accepted too; the result then agrees with
    ideal_multinomial_vector.
    """
    _require_class(profile, (PrimeClass.IDEAL, PrimeClass.ACCEPTABLE))
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    base = profile.stable_modulus
    if not 0 <= r < base:
        raise ValueError(f"residue {r} not in [0, {base})")
    entries = []
    for lam in range(k):
        counts: dict[int, int] = {}
        for rtuple in _bounded_compositions(r + lam * base, k, base):
            e = f_value(profile, k, lam, r, rtuple) - lam
            if e < 0:
                raise ArithmeticError(
                    f"negative exponent {e} for tuple {rtuple}: "
                    f"inconsistent profile for p={profile.p}"
                )
            counts[e] = counts.get(e, 0) + 1
        entries.append(ValPoly(counts))
    return InitialVector(PolyVector.row(*entries), modulus=base, residue=r)


def vector_for(profile: PrimeProfile, k: int, r: int,
               path: str = "auto") -> InitialVector:
    """Initial vector for the requested evaluation path.

    ``auto`` picks the ideal closed form for ideal primes and tuple
    enumeration for acceptable ones; ``ideal`` and ``acceptable`` force a
    path (the acceptable path is valid for ideal primes as well).
    """
    if path == "auto":
        path = IDEAL_PATH if profile.prime_class is PrimeClass.IDEAL else ACCEPTABLE_PATH
    if path == IDEAL_PATH:
        return ideal_multinomial_vector(profile, k, r)
    if path == ACCEPTABLE_PATH:
        return acceptable_vector(profile, k, r)
    raise ValueError(f"unknown path {path!r}")
