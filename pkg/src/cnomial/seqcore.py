"""Strong divisibility sequences: Lucas-type recurrences, the naturals, and
file-backed term lists.

A strong divisibility sequence of nonzero integers satisfies
gcd(|C_n|, |C_m|) = |C_gcd(n, m)| for all positive indices.  Terms may be
negative (elliptic divisibility sequences are); everything downstream that
cares about divisibility works with absolute values.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator, Union


class InsufficientTermsError(Exception):
    """A file-backed sequence does not store enough terms for the request."""


@dataclass(frozen=True)
class LucasSpec:
    """Second-order recurrence U_1 = 1, U_2 = P, U_n = P*U_{n-1} - Q*U_{n-2}.

    Construction requires gcd(U_2, U_3) = 1, the standing hypothesis for
    strong divisibility, and rejects parameter pairs whose recurrence hits a
    zero term (P = 0, or P^2 in {Q, 2Q, 3Q}, which zero out U_2, U_3, U_4 or
    U_6).
    """

    P: int
    Q: int

    def __post_init__(self):
        u2, u3 = self.P, self.P * self.P - self.Q
        if self.P == 0 or (self.Q != 0 and self.P * self.P in (self.Q, 2 * self.Q, 3 * self.Q)):
            raise ValueError(f"Lucas({self.P},{self.Q}) produces a zero term")
        if math.gcd(abs(u2), abs(u3)) != 1:
            raise ValueError(
                f"Lucas({self.P},{self.Q}): gcd(U_2, U_3) = "
                f"{math.gcd(abs(u2), abs(u3))} != 1, not a strong divisibility sequence"
            )

    @property
    def selector(self) -> str:
        return f"lucas:{self.P},{self.Q}"


@dataclass(frozen=True)
class NaturalsSpec:
    """The sequence C_n = n."""

    @property
    def selector(self) -> str:
        return "naturals"


@dataclass(frozen=True)
class FileBackedSpec:
    """Finite list of stored terms; terms[i] holds C_{i+1}."""

    terms: tuple[int, ...]
    name: str = "file"

    def __post_init__(self):
        if not self.terms:
            raise ValueError("file-backed sequence has no terms")
        for i, t in enumerate(self.terms, start=1):
            if t == 0:
                raise ValueError(f"term C_{i} is zero; terms must be nonzero integers")

    @property
    def selector(self) -> str:
        return f"file:{self.name}"


SequenceSpec = Union[LucasSpec, NaturalsSpec, FileBackedSpec]


def term(spec: SequenceSpec, n: int) -> int:
    """The exact n-th term (1-indexed, may be negative)."""
    if n < 1:
        raise ValueError(f"term index must be positive, got {n}")
    if isinstance(spec, NaturalsSpec):
        return n
    if isinstance(spec, FileBackedSpec):
        if n > len(spec.terms):
            raise InsufficientTermsError(
                f"insufficient terms: need C_{n}, {spec.name} stores {len(spec.terms)}"
            )
        return spec.terms[n - 1]
    # Lucas: plain big-integer recurrence, no closed forms.
    u, v = 1, spec.P
    if n == 1:
        return u
    for _ in range(n - 2):
        u, v = v, spec.P * v - spec.Q * u
    return v


def term_mod(spec: SequenceSpec, n: int, m: int) -> int:
    """term(spec, n) reduced mod m, as the nonnegative representative."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if n < 1:
        raise ValueError(f"term index must be positive, got {n}")
    if isinstance(spec, NaturalsSpec):
        return n % m
    if isinstance(spec, FileBackedSpec):
        return term(spec, n) % m
    u, v = 1 % m, spec.P % m
    if n == 1:
        return u
    for _ in range(n - 2):
        u, v = v, (spec.P * v - spec.Q * u) % m
    return v


def residues(spec: SequenceSpec, m: int) -> Iterator[int]:
    """Yield C_1 mod m, C_2 mod m, ... (stops at the last stored term for
    file-backed sequences, runs forever otherwise)."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if isinstance(spec, FileBackedSpec):
        for t in spec.terms:
            yield t % m
        return
    if isinstance(spec, NaturalsSpec):
        n = 1
        while True:
            yield n % m
            n += 1
    u, v = 1 % m, spec.P % m
    while True:
        yield u
        u, v = v, (spec.P * v - spec.Q * u) % m


def terms_prefix(spec: SequenceSpec, count: int) -> list[int]:
    """Terms C_1..C_count as a list (index 0 holds C_1)."""
    if isinstance(spec, FileBackedSpec):
        if count > len(spec.terms):
            raise InsufficientTermsError(
                f"insufficient terms: need C_{count}, {spec.name} stores {len(spec.terms)}"
            )
        return list(spec.terms[:count])
    if isinstance(spec, NaturalsSpec):
        return list(range(1, count + 1))
    out = []
    u, v = 1, spec.P
    for _ in range(count):
        out.append(u)
        u, v = v, spec.P * v - spec.Q * u
    return out


def validate_strong_divisibility(spec: SequenceSpec, bound: int) -> list[tuple[int, int]]:
    """All pairs 1 <= m < n <= bound violating gcd(|C_n|, |C_m|) = |C_gcd(n,m)|.

    An empty list means no violation was found up to the bound (it is not a
    proof for the infinite sequence).
    """
    ts = terms_prefix(spec, bound)
    bad = []
    for n in range(2, bound + 1):
        for m in range(1, n):
            g = math.gcd(abs(ts[n - 1]), abs(ts[m - 1]))
            if g != abs(ts[math.gcd(n, m) - 1]):
                bad.append((n, m))
    return bad


def load_terms_file(path: str) -> FileBackedSpec:
    """Read one decimal integer per line; line i holds C_i.

    Blank lines and lines starting with ``#`` are ignored.
    """
    terms = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                value = int(line)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not an integer: {line!r}") from None
            if value == 0:
                raise ValueError(f"{path}:{lineno}: zero term is not allowed")
            terms.append(value)
    if not terms:
        raise ValueError(f"{path}: no terms found")
    return FileBackedSpec(tuple(terms), name=os.path.basename(path))


def parse_selector(text: str) -> SequenceSpec:
    """Parse a CLI sequence selector.

    Accepted forms: ``fibonacci``, ``naturals``, ``lucas:P,Q``, ``file:PATH``.
    """
    if text == "fibonacci":
        return LucasSpec(1, -1)
    if text == "naturals":
        return NaturalsSpec()
    if text.startswith("lucas:"):
        body = text[len("lucas:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"lucas selector needs two integers, got {text!r}")
        try:
            return LucasSpec(int(parts[0]), int(parts[1]))
        except ValueError as e:
            raise ValueError(f"bad lucas selector {text!r}: {e}") from None
    if text.startswith("file:"):
        return load_terms_file(text[len("file:"):])
    raise ValueError(f"unknown sequence selector {text!r}")
