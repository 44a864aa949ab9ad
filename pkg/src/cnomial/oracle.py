"""Independent brute-force ground truth.

Everything here is deliberately naive: valuations come from the
Legendre-style divisor count over the apparition chain, generating
polynomials from literal enumeration of index tuples, and an optional
sampling mode recomputes tuples from exact big-integer term products.
None of it touches the transfer matrices or initial vectors it is used to
check.
"""

from __future__ import annotations

import random
import threading

from . import apparition, seqcore
from .apparition import alpha_chain
from .polyarith import PolyVector, ValPoly
from .seqcore import SequenceSpec


class StrongDivisibilityError(ArithmeticError):
    """A quotient or valuation came out wrong: the input sequence is not a
    strong divisibility sequence (or its stored terms are corrupt)."""


def digit_sum(n: int, p: int) -> int:
    s = 0
    while n:
        n, d = divmod(n, p)
        s += d
    return s


def factorial_valuation(n: int, p: int) -> int:
    """nu_p(n!) by Legendre: (n - digit_sum(n)) / (p - 1)."""
    return (n - digit_sum(n, p)) // (p - 1)


def compositions(total: int, k: int):
    """All k-tuples of nonnegative integers summing to total, in
    colexicographic order (rightmost part varies slowest)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k == 1:
        yield (total,)
        return
    for last in range(total + 1):
        for rest in compositions(total - last, k - 1):
            yield rest + (last,)


def corial_valuation(spec: SequenceSpec, p: int, n: int) -> int:
    """nu_p of the term product C_n * C_{n-1} * ... * C_1.

    Equals sum over j of floor(n / alpha(p^j)), truncated once alpha(p^j)
    exceeds n (or does not exist).
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return 0
    return sum(n // a for a in alpha_chain(spec, p, n))


def corial_valuation_table(spec: SequenceSpec, p: int, nmax: int) -> list[int]:
    """corial_valuation for every n in 0..nmax, sharing one apparition chain."""
    chain = alpha_chain(spec, p, nmax)
    table = [0] * (nmax + 1)
    for a in chain:
        for n in range(a, nmax + 1):
            table[n] += n // a
    return table


def cmultinomial_bigint(spec: SequenceSpec, n: int, mtuple: tuple[int, ...]) -> int:
    """Exact generalized multinomial from big-integer term products.

    Sign included.  Raises StrongDivisibilityError if the division is not
    exact, which diagnoses an input that is not a strong divisibility
    sequence.
    """
    if any(m < 0 for m in mtuple):
        raise ValueError(f"tuple entries must be nonnegative: {mtuple}")
    if sum(mtuple) != n:
        raise ValueError(f"tuple {mtuple} sums to {sum(mtuple)}, expected {n}")
    terms = seqcore.terms_prefix(spec, n)
    orials = [1] * (n + 1)
    for i in range(1, n + 1):
        orials[i] = orials[i - 1] * terms[i - 1]
    denom = 1
    for m in mtuple:
        denom *= orials[m]
    q, rem = divmod(orials[n], denom)
    if rem != 0:
        raise StrongDivisibilityError(
            f"strong divisibility violated: C-multinomial ({n}; {mtuple}) is not an integer"
        )
    return q


def cmultinomial_valuation(spec: SequenceSpec, p: int, n: int,
                           mtuple: tuple[int, ...]) -> int:
    """nu_p of the generalized multinomial, via the apparition chain."""
    if sum(mtuple) != n:
        raise ValueError(f"tuple {mtuple} sums to {sum(mtuple)}, expected {n}")
    v = corial_valuation(spec, p, n) - sum(corial_valuation(spec, p, m) for m in mtuple)
    if v < 0:
        raise StrongDivisibilityError(
            f"negative valuation for ({n}; {mtuple}): sequence is not strong divisibility"
        )
    return v


def brute_generating_poly(spec: SequenceSpec, p: int, k: int, n: int, *,
                          bigint_samples: int = 0, rng: random.Random | None = None,
                          _table: list[int] | None = None) -> ValPoly:
    """Sum of x^valuation over all k-part compositions of n, by enumeration.

    The fast path reads valuations off the apparition-chain table; with
    bigint_samples > 0 that many random tuples are recomputed from literal
    big-integer products and cross-checked.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    table = _table if _table is not None else corial_valuation_table(spec, p, n)
    top = table[n]
    counts: dict[int, int] = {}
    for mtuple in compositions(n, k):
        v = top - sum(table[m] for m in mtuple)
        if v < 0:
            raise StrongDivisibilityError(
                f"negative valuation for ({n}; {mtuple}): sequence is not strong divisibility"
            )
        counts[v] = counts.get(v, 0) + 1
    if bigint_samples > 0:
        rng = rng or random.Random(0)
        pool = list(compositions(n, k))
        for mtuple in rng.sample(pool, min(bigint_samples, len(pool))):
            direct = apparition.valuation(cmultinomial_bigint(spec, n, mtuple), p)
            fast = top - sum(table[m] for m in mtuple)
            if direct != fast:
                raise StrongDivisibilityError(
                    f"valuation mismatch for ({n}; {mtuple}): "
                    f"big-integer {direct}, chain {fast}"
                )
    return ValPoly(counts)


# ---------------------------------------------------------------------------
# Tuple-counting polynomials for the plain naturals, used as the independent
# reference for the digit-matrix advancement identity.  Computed from digit
# sums alone: a k-part composition of n has multinomial valuation
# (sum of part digit sums - digit_sum(n)) / (p - 1).

_digit_count_cache: dict[tuple[int, int], list[dict[int, int]]] = {}
_digit_count_lock = threading.Lock()


def _extend_digit_sum_counts(p: int, k: int, nmax: int) -> list[dict[int, int]]:
    # Caller holds the lock.
    key = (p, k)
    rows = _digit_count_cache.setdefault(key, [])
    if k == 1:
        for n in range(len(rows), nmax + 1):
            rows.append({digit_sum(n, p): 1})
        return rows
    prev = _extend_digit_sum_counts(p, k - 1, nmax)
    for n in range(len(rows), nmax + 1):
        acc: dict[int, int] = {}
        for m in range(n + 1):
            shift = digit_sum(m, p)
            for d, c in prev[n - m].items():
                acc[d + shift] = acc.get(d + shift, 0) + c
        rows.append(acc)
    return rows


def _digit_sum_counts(p: int, k: int, nmax: int) -> list[dict[int, int]]:
    # rows[n] maps D -> number of k-part compositions of n whose parts have
    # base-p digit sums totalling D; extended incrementally under a lock so
    # concurrent sweeps see an idempotent fill.
    with _digit_count_lock:
        return _extend_digit_sum_counts(p, k, nmax)


def multinomial_count_poly(p: int, k: int, n: int) -> ValPoly:
    """Sum of x^nu_p(multinomial) over k-part compositions of n (naturals)."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rows = _digit_sum_counts(p, k, n)
    sn = digit_sum(n, p)
    counts = {}
    for d, c in rows[n].items():
        e, rem = divmod(d - sn, p - 1)
        if rem:
            raise AssertionError(f"digit-sum residue broke for n={n}, D={d}")
        counts[e] = c
    return ValPoly(counts)


def component_vector(p: int, k: int, n: int) -> PolyVector:
    """Column of k tuple-counting polynomials advanced by the digit matrices.

    Entry lam is 0 for n < lam, and otherwise
    x^(nu_p(n!/(n-lam)!) + lam) * multinomial_count_poly(p, k, n - lam).
    Built from ordinary factorial valuations only, independent of any
    sequence and of the matrix construction it is used to check.
    """
    entries = []
    for lam in range(k):
        if n < lam:
            entries.append(ValPoly.zero())
            continue
        shift = factorial_valuation(n, p) - factorial_valuation(n - lam, p) + lam
        entries.append(ValPoly.monomial(1, shift) * multinomial_count_poly(p, k, n - lam))
    return PolyVector.column(*entries)
