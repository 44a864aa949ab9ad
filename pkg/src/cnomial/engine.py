"""Top-level evaluation of the valuation-counting polynomials.

A query (sequence, p, k, N) is answered by writing N = modulus*n + r,
expanding n in base p, and contracting
row_vector(r) * M(n_0) * M(n_1) * ... * M(n_len) * e^T, where e^T is the
first standard basis column.  The product is accumulated right to left as
matrix-vector multiplications, so the work is k^2 polynomial products per
base-p digit of n: logarithmic in N where direct enumeration is
polynomial.

Primes with no usable matrix formula still get an answer: if p divides no
term every valuation is 0 and the polynomial is the constant
C(N+k-1, k-1); unacceptable primes fall back to the brute-force oracle and
the result is tagged accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

from . import initvec, oracle
from .apparition import PrimeClass, PrimeProfile
from .polyarith import PolyMatrix, PolyVector, ValPoly, mat_vec_mul, row_vec_mul
from .seqcore import SequenceSpec
from .transfer import digit_matrices


class EvalPath(str, Enum):
    IDEAL = "IdealMatrixProduct"
    ACCEPTABLE = "AcceptableMatrixProduct"
    TRIVIAL = "TrivialNoApparition"
    FALLBACK = "OracleFallback"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class QueryResult:
    """Answer polynomial plus how it was obtained.

    ``decomposition`` is (modulus, n, r, digits): N = modulus*n + r and
    digits is the base-p expansion of n, least significant first (empty for
    the non-matrix paths).
    """

    polynomial: ValPoly
    path: EvalPath
    decomposition: tuple[int, int, int, tuple[int, ...]]


def base_digits(n: int, p: int) -> list[int]:
    """Base-p digits of n, least significant first; n = 0 gives []."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if p < 2:
        raise ValueError(f"base must be >= 2, got {p}")
    digits = []
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    return digits


def decompose(n: int, modulus: int) -> tuple[int, int]:
    """(quotient, residue) with n = modulus*quotient + residue, 0 <= residue < modulus."""
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    return divmod(n, modulus)


def unit_column(k: int) -> PolyVector:
    """The column (1, 0, ..., 0)^T of length k."""
    return PolyVector.column(ValPoly.one(), *(ValPoly.zero() for _ in range(k - 1)))


def _matrix_product_apply(p: int, k: int, digits: list[int]) -> PolyVector:
    # M(d_0) * ... * M(d_last) * e^T, accumulated from the right.
    matrices = digit_matrices(p, k)
    v = unit_column(k)
    for d in reversed(digits):
        v = mat_vec_mul(matrices[d], v)
    return v


def eval_generating_poly(spec: SequenceSpec, profile: PrimeProfile, k: int, n: int,
                         *, force_path: str | None = None) -> QueryResult:
    """Polynomial counting k-part compositions of n by the p-adic valuation
    of their generalized multinomial coefficient.

    ``force_path`` ("ideal" or "acceptable") overrides the automatic route
    for classified primes; the acceptable route is valid for ideal primes
    too and must give the same polynomial.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    cls = profile.prime_class
    expected_total = comb(n + k - 1, k - 1)

    if cls is PrimeClass.NO_APPARITION:
        if force_path is not None:
            raise ValueError(f"p={profile.p} has no apparition; no matrix path applies")
        result = QueryResult(ValPoly({0: expected_total}), EvalPath.TRIVIAL,
                             (1, n, 0, ()))
    elif cls is PrimeClass.UNACCEPTABLE:
        if force_path is not None:
            raise ValueError(f"p={profile.p} is unacceptable; no matrix path applies")
        poly = oracle.brute_generating_poly(spec, profile.p, k, n)
        result = QueryResult(poly, EvalPath.FALLBACK, (1, n, 0, ()))
    else:
        route = force_path if force_path is not None else (
            initvec.IDEAL_PATH if cls is PrimeClass.IDEAL else initvec.ACCEPTABLE_PATH
        )
        if route == initvec.IDEAL_PATH:
            modulus = profile.alpha
        elif route == initvec.ACCEPTABLE_PATH:
            modulus = profile.stable_modulus
        else:
            raise ValueError(f"unknown path {route!r}")
        quot, r = decompose(n, modulus)
        u = initvec.vector_for(profile, k, r, route)
        digits = base_digits(quot, profile.p)
        v = _matrix_product_apply(profile.p, k, digits)
        poly = row_vec_mul(u.vector, v)
        path = EvalPath.IDEAL if route == initvec.IDEAL_PATH else EvalPath.ACCEPTABLE
        result = QueryResult(poly, path, (modulus, quot, r, tuple(digits)))

    total = result.polynomial.eval_at_one()
    if total != expected_total:
        raise AssertionError(
            f"normalization broken: coefficients sum to {total}, "
            f"expected C({n}+{k}-1, {k}-1) = {expected_total}"
        )
    return result


@dataclass(frozen=True)
class LinearRepresentation:
    """Finite data that evaluates every query for one (p, k): a row vector
    per residue, a matrix per digit, and the final column e^T."""

    p: int
    k: int
    modulus: int
    residue_vectors: dict[int, PolyVector]
    digit_matrices: dict[int, PolyMatrix]
    final_vector: PolyVector

    def evaluate(self, n: int, r: int) -> ValPoly:
        """The polynomial for index modulus*n + r."""
        if not 0 <= r < self.modulus:
            raise ValueError(f"residue {r} not in [0, {self.modulus})")
        v = self.final_vector
        for d in reversed(base_digits(n, self.p)):
            v = mat_vec_mul(self.digit_matrices[d], v)
        return row_vec_mul(self.residue_vectors[r], v)

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "modulus": self.modulus,
            "residue_vectors": {
                str(r): [e.to_json_dict() for e in vec.entries]
                for r, vec in sorted(self.residue_vectors.items())
            },
            "digit_matrices": {
                str(d): [[e.to_json_dict() for e in row] for row in mat.entries]
                for d, mat in sorted(self.digit_matrices.items())
            },
            "final_vector": [e.to_json_dict() for e in self.final_vector.entries],
        }


def linear_representation(profile: PrimeProfile, k: int,
                          *, force_path: str | None = None) -> LinearRepresentation:
    """Export the residue vectors and digit matrices witnessing that the
    polynomial subsequences indexed by each residue are p-regular."""
    if profile.prime_class not in (PrimeClass.IDEAL, PrimeClass.ACCEPTABLE):
        raise ValueError(
            f"p={profile.p} is {profile.prime_class.value}; no linear representation exists"
        )
    route = force_path if force_path is not None else (
        initvec.IDEAL_PATH if profile.prime_class is PrimeClass.IDEAL
        else initvec.ACCEPTABLE_PATH
    )
    if route == initvec.IDEAL_PATH:
        modulus = profile.alpha
    elif route == initvec.ACCEPTABLE_PATH:
        modulus = profile.stable_modulus
    else:
        raise ValueError(f"unknown path {route!r}")
    vectors = {r: initvec.vector_for(profile, k, r, route).vector
               for r in range(modulus)}
    matrices = {d: m for d, m in enumerate(digit_matrices(profile.p, k))}
    return LinearRepresentation(
        p=profile.p,
        k=k,
        modulus=modulus,
        residue_vectors=vectors,
        digit_matrices=matrices,
        final_vector=unit_column(k),
    )
