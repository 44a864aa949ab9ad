"""Ranks of apparition and prime classification for strong divisibility
sequences.

For a sequence C and a modulus m, the rank of apparition is the first index
whose term m divides.  Strong divisibility makes divisibility by m periodic
in the index, so the ranks of successive prime powers form a divisibility
chain alpha(p) | alpha(p^2) | ..., and the chain's ratio sequence
eventually determines how the p-adic valuation of the C-orial grows.

A prime p is classified from the ratios a_1 = alpha(p),
a_k = alpha(p^k)/alpha(p^{k-1}):

* ``Ideal``        ratios are 1 up to some index s, then exactly p forever;
* ``Acceptable``   ratios are positive integers up to s, then p forever;
* ``Unacceptable`` the stabilized-at-p pattern fails;
* ``NoApparition`` p divides no term at all.

Stabilization is a tail property, so classification of a finite term list
is evidence-bounded: profiles carry ``evidence_kmax``, the number of ratios
actually verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import seqcore
from .seqcore import SequenceSpec

# Ratios confirmed equal to p past the last deviation before classification
# stops, and the absolute cap on chain depth when no explicit kmax is given.
DEFAULT_TAIL = 3
DEFAULT_KMAX_CAP = 16


class UndeterminedError(Exception):
    """A file-backed sequence ran out of terms before the answer was decided."""


class PrimeClass(str, Enum):
    IDEAL = "Ideal"
    ACCEPTABLE = "Acceptable"
    UNACCEPTABLE = "Unacceptable"
    NO_APPARITION = "NoApparition"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PrimeProfile:
    """Per-(sequence, p) classification record.

    ``alpha_powers`` holds alpha(p), alpha(p^2), ..., alpha(p^s) for
    classified primes (the full observed chain for unacceptable ones);
    ``ratios`` holds a_1..a_{evidence_kmax}; ``s`` is None when no
    stabilization index was established.
    """

    p: int
    prime_class: PrimeClass
    alpha_powers: tuple[int, ...]
    s: int | None
    ratios: tuple[int, ...]
    evidence_kmax: int

    @property
    def alpha(self) -> int:
        """alpha(p), the rank of apparition of p itself."""
        if not self.alpha_powers:
            raise ValueError(f"p={self.p} has no apparition")
        return self.alpha_powers[0]

    @property
    def stable_modulus(self) -> int:
        """alpha(p^s), the index period once the ratio chain has stabilized."""
        if self.s is None or not self.alpha_powers:
            raise ValueError(f"p={self.p} has no stabilization evidence")
        return self.alpha_powers[self.s - 1]

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "class": self.prime_class.value,
            "alpha_powers": list(self.alpha_powers),
            "s": self.s,
            "ratios": list(self.ratios),
            "evidence_kmax": self.evidence_kmax,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PrimeProfile":
        return cls(
            p=int(data["p"]),
            prime_class=PrimeClass(data["class"]),
            alpha_powers=tuple(int(a) for a in data["alpha_powers"]),
            s=None if data["s"] is None else int(data["s"]),
            ratios=tuple(int(a) for a in data["ratios"]),
            evidence_kmax=int(data["evidence_kmax"]),
        )


def valuation(x: int, p: int) -> int:
    """Largest e with p^e dividing |x|."""
    if x == 0:
        raise ValueError("valuation of 0 is undefined")
    if p < 2:
        raise ValueError(f"base must be >= 2, got {p}")
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for anything a CLI will see."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _scan_apparition(spec: SequenceSpec, m: int, *, step: int = 1,
                     limit: int | None = None) -> int | None:
    """First index n with n a multiple of ``step`` and m | C_n.

    Unbounded mode (limit None): recurrence-backed sequences are scanned
    with cycle detection on the state (C_n, C_{n+1}, n mod step) mod m, so
    None means "provably no such index"; a file-backed sequence that ends
    first raises UndeterminedError.

    Bounded mode: the scan stops after index ``limit`` and returns None,
    which only means "none at or below limit".  File-backed sequences must
    store at least ``limit`` terms.
    """
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    stream = seqcore.residues(spec, m)
    file_backed = isinstance(spec, seqcore.FileBackedSpec)
    detect_cycle = limit is None and not file_backed
    # Brent cycle detection on the autonomous state (C_n, C_{n+1}, n mod step)
    # mod m: every state is inspected for a zero as it is visited, and by the
    # time the state matches the exponentially-spaced checkpoint the whole
    # orbit (pre-period plus cycle) has been covered, so a miss is a proof.
    checkpoint = None
    power, span = 1, 0
    prev = None
    n = 0
    for u in stream:
        n += 1
        if n % step == 0 and u == 0:
            return n
        if limit is not None and n >= limit:
            return None
        if detect_cycle and prev is not None:
            state = (prev, u, n % step)
            if state == checkpoint:
                return None
            span += 1
            if span == power:
                checkpoint = state
                power *= 2
                span = 0
        prev = u
    # Stream ended: file-backed sequence exhausted.
    if limit is not None:
        raise seqcore.InsufficientTermsError(
            f"insufficient terms: scan to {limit} needs more than "
            f"{len(spec.terms)} stored terms"
        )
    raise UndeterminedError(
        f"undetermined within available terms: no multiple of {step} with "
        f"{m} | C_n among {len(spec.terms)} stored terms"
    )


def rank_of_apparition(spec: SequenceSpec, m: int) -> int | None:
    """Smallest n with m | C_n, or None when provably no such n exists."""
    return _scan_apparition(spec, m)


def rank_within(spec: SequenceSpec, m: int, limit: int, *, step: int = 1) -> int | None:
    """Like rank_of_apparition but only searches indices <= limit."""
    if limit < 1:
        return None
    return _scan_apparition(spec, m, step=step, limit=limit)


def alpha_chain(spec: SequenceSpec, p: int, limit: int) -> list[int]:
    """All ranks alpha(p), alpha(p^2), ... that are <= limit.

    Each level scans only multiples of the previous rank, which strong
    divisibility guarantees is enough.
    """
    chain: list[int] = []
    pk, step = p, 1
    while True:
        a = rank_within(spec, pk, limit, step=step)
        if a is None:
            return chain
        chain.append(a)
        step = a
        pk *= p


def sequence_valuation(spec: SequenceSpec, n: int, p: int) -> int:
    """p-adic valuation of C_n, computed by modular reduction only."""
    e = 0
    pk = p
    while seqcore.term_mod(spec, n, pk) == 0:
        e += 1
        pk *= p
    return e


def ratio_sequence(spec: SequenceSpec, p: int, kmax: int) -> list[int]:
    """a_1 = alpha(p) and a_k = alpha(p^k)/alpha(p^{k-1}) for k <= kmax.

    Raises UndeterminedError if a file-backed sequence runs out before all
    kmax ratios are known, and ValueError if p has no apparition at all.
    """
    if kmax < 1:
        raise ValueError(f"kmax must be >= 1, got {kmax}")
    alpha = rank_of_apparition(spec, p)
    if alpha is None:
        raise ValueError(f"p={p} divides no term; ratio sequence undefined")
    ratios = [alpha]
    prev, pk = alpha, p
    for _ in range(kmax - 1):
        pk *= p
        nxt = _scan_apparition(spec, pk, step=prev)
        if nxt is None:
            raise ValueError(f"alpha({pk}) provably does not exist")
        ratios.append(nxt // prev)
        prev = nxt
    return ratios


def classify(spec: SequenceSpec, p: int, *, kmax: int | None = None,
             tail: int = DEFAULT_TAIL) -> PrimeProfile:
    """Build the PrimeProfile of p for the given sequence.

    The stabilization index s is the last ratio position (>= 2) where the
    ratio differs from p, or 1 when every observed ratio past the first
    equals p.  With the default kmax the chain is extended until ``tail``
    consecutive ratios equal to p confirm s (hard-capped at
    DEFAULT_KMAX_CAP); an explicit kmax fixes the number of ratios computed
    instead.

    A file-backed sequence that runs out of terms mid-chain keeps whatever
    evidence was gathered; if not even one stabilized ratio was confirmed
    the classification is refused with UndeterminedError.
    """
    if kmax is not None and kmax < 2:
        raise ValueError(f"kmax must be >= 2, got {kmax}")
    alpha = rank_of_apparition(spec, p)
    if alpha is None:
        return PrimeProfile(p=p, prime_class=PrimeClass.NO_APPARITION,
                            alpha_powers=(), s=None, ratios=(), evidence_kmax=0)
    chain = [alpha]
    ratios = [alpha]
    s_cand = 1
    exhausted = False
    proven_absent = False
    k = 2
    cap = kmax if kmax is not None else DEFAULT_KMAX_CAP
    while k <= cap:
        if kmax is None and len(ratios) - s_cand >= tail:
            break
        try:
            nxt = _scan_apparition(spec, p ** k, step=chain[-1])
        except UndeterminedError:
            exhausted = True
            break
        if nxt is None:
            proven_absent = True
            break
        ratios.append(nxt // chain[-1])
        chain.append(nxt)
        if ratios[-1] != p:
            s_cand = k
        k += 1

    evidence = len(ratios)
    tail_len = evidence - s_cand
    if proven_absent:
        # Some alpha(p^k) provably never occurs: the class definitions need
        # every power to appear, so the stabilization pattern cannot hold.
        return PrimeProfile(p=p, prime_class=PrimeClass.UNACCEPTABLE,
                            alpha_powers=tuple(chain), s=None,
                            ratios=tuple(ratios), evidence_kmax=evidence)
    if tail_len == 0:
        if exhausted:
            raise UndeterminedError(
                f"undetermined within available terms: last observed ratio "
                f"a_{evidence} != {p} and no later evidence is available"
            )
        return PrimeProfile(p=p, prime_class=PrimeClass.UNACCEPTABLE,
                            alpha_powers=tuple(chain), s=None,
                            ratios=tuple(ratios), evidence_kmax=evidence)
    s = s_cand
    ideal = all(r == 1 for r in ratios[1:s])
    return PrimeProfile(
        p=p,
        prime_class=PrimeClass.IDEAL if ideal else PrimeClass.ACCEPTABLE,
        alpha_powers=tuple(chain[:s]),
        s=s,
        ratios=tuple(ratios),
        evidence_kmax=evidence,
    )


def classify_lucas_fast(P: int, Q: int, p: int) -> PrimeClass:
    """Class of p for the Lucas sequence U(P, Q), without any term scans.

    Every odd prime with an apparition is ideal; p = 2 is ideal when U_2 is
    even or when U_2 is odd and U_3 = 0 mod 4, and acceptable otherwise.
    Lucas sequences have no unacceptable primes.  Primes dividing Q never
    divide any term (U_n = P*U_{n-1} mod such p, and U_1 = 1).
    """
    seqcore.LucasSpec(P, Q)  # validates the strong-divisibility hypothesis
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if Q % p == 0:
        return PrimeClass.NO_APPARITION
    if p != 2:
        return PrimeClass.IDEAL
    u2, u3 = P, P * P - Q
    if u2 % 2 == 0:
        return PrimeClass.IDEAL
    if u3 % 4 == 0:
        return PrimeClass.IDEAL
    return PrimeClass.ACCEPTABLE
