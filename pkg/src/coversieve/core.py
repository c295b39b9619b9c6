"""Integer foundations and the residue-system data model.

Everything downstream works with immutable values: residue classes
``r (mod n)``, ordered multisets of them, multisets of moduli, and exact
factorizations.  Densities and bounds are ``fractions.Fraction`` throughout;
no float ever enters an exact result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

ExactRational = Fraction

_SPF_LIMIT = 10**6
_spf_cache: np.ndarray | None = None

# Segment width for all segmented sieves (bools / bytes per block).
SEGMENT_SIZE = 1 << 22


class GuardExceeded(Exception):
    """Recoverable signal: a computation would exceed its resource guard.

    Carries enough context (`detail`, `estimate`) for the caller to pick a
    fallback (decomposition, bounds, sampling) instead of treating this as
    a failure.
    """

    def __init__(self, detail: str, estimate=None):
        super().__init__(detail)
        self.detail = detail
        self.estimate = estimate


@dataclass(frozen=True, order=True)
class ResidueClass:
    """One congruence class ``residue (mod modulus)``, stored canonically.

    The residue is always reduced into ``[0, modulus)`` so that equal
    classes compare equal.
    """

    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def contains(self, x: int) -> bool:
        return x % self.modulus == self.residue

    def density(self) -> Fraction:
        return Fraction(1, self.modulus)

    def __str__(self):
        return f"{self.residue} (mod {self.modulus})"


@dataclass(frozen=True)
class ResidueSystem:
    """A finite ordered multiset of residue classes.

    Repeated moduli and repeated identical pairs are both allowed, and the
    stored order matters: the refined pair-correction bound depends on it.
    """

    classes: tuple[ResidueClass, ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "ResidueSystem":
        return cls(tuple(ResidueClass(n, r) for n, r in pairs))

    def pairs(self) -> list[tuple[int, int]]:
        return [(c.modulus, c.residue) for c in self.classes]

    def moduli(self) -> "ModuliSet":
        return ModuliSet.from_iterable(c.modulus for c in self.classes)

    def multiplicity(self) -> int:
        """Largest number of classes sharing one modulus (0 if empty)."""
        counts: dict[int, int] = {}
        for c in self.classes:
            counts[c.modulus] = counts.get(c.modulus, 0) + 1
        return max(counts.values(), default=0)

    def lcm(self, guard_bits: int = 10**6) -> int:
        return lcm_guarded(ModuliSet.from_iterable(c.modulus for c in self.classes), guard_bits)

    def shifted(self, t: int) -> "ResidueSystem":
        """Translate every class by t; uncovered density is invariant."""
        return ResidueSystem(tuple(ResidueClass(c.modulus, c.residue + t) for c in self.classes))

    def reciprocal_sum(self) -> Fraction:
        return sum((Fraction(1, c.modulus) for c in self.classes), Fraction(0))

    def __len__(self):
        return len(self.classes)

    def __iter__(self) -> Iterator[ResidueClass]:
        return iter(self.classes)

    def __str__(self):
        return "{" + ", ".join(f"({c.modulus},{c.residue})" for c in self.classes) + "}"


@dataclass(frozen=True)
class ModuliSet:
    """A multiset of moduli >= 1, stored as a sorted tuple with repeats."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if any(n < 1 for n in self.moduli):
            raise ValueError("moduli must be >= 1")
        object.__setattr__(self, "moduli", tuple(sorted(self.moduli)))

    @classmethod
    def from_iterable(cls, values: Iterable[int]) -> "ModuliSet":
        return cls(tuple(values))

    @property
    def distinct(self) -> bool:
        return len(set(self.moduli)) == len(self.moduli)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for n in self.moduli:
            out[n] = out.get(n, 0) + 1
        return out

    def product(self) -> int:
        return math.prod(self.moduli)

    def __len__(self):
        return len(self.moduli)

    def __iter__(self) -> Iterator[int]:
        return iter(self.moduli)


@dataclass(frozen=True)
class Factorization:
    """Prime-power factorization as (prime, exponent) pairs, primes ascending."""

    pairs: tuple[tuple[int, int], ...]

    def value(self) -> int:
        return math.prod(p**e for p, e in self.pairs)

    def largest_prime(self) -> int:
        """P(n); the empty factorization (n = 1) yields the sentinel 0."""
        return self.pairs[-1][0] if self.pairs else 0

    def least_prime(self) -> float:
        """P^-(n); the empty factorization (n = 1) yields +inf."""
        return self.pairs[0][0] if self.pairs else math.inf

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


def _spf() -> np.ndarray:
    global _spf_cache
    if _spf_cache is None:
        spf = np.zeros(_SPF_LIMIT + 1, dtype=np.int32)
        spf[1] = 1
        for p in range(2, isqrt(_SPF_LIMIT) + 1):
            if spf[p] == 0:
                sl = spf[p * p :: p]
                sl[sl == 0] = p
        # remaining zeros are primes
        rest = np.flatnonzero(spf[2:] == 0) + 2
        spf[rest] = rest
        _spf_cache = spf
    return _spf_cache


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of composite n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed on {n}")  # pragma: no cover


def factorize(n: int) -> Factorization:
    """Exact factorization of n >= 1; n = 1 gives the empty factorization."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    out: dict[int, int] = {}

    def add(m: int):
        if m == 1:
            return
        if m <= _SPF_LIMIT:
            spf = _spf()
            while m > 1:
                p = int(spf[m])
                out[p] = out.get(p, 0) + 1
                m //= p
            return
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            return
        d = _pollard_rho(m)
        add(d)
        add(m // d)

    add(n)
    return Factorization(tuple(sorted(out.items())))


def largest_prime_factor(n: int) -> int:
    """P(n) with P(1) = 0, so that modulus 1 is Q-smooth for every Q."""
    return factorize(n).largest_prime()


def smooth_split(n: int, Q: float) -> tuple[int, int]:
    """Split n into (largest Q-smooth divisor, rough cofactor).

    The parts multiply back to n; every prime of the smooth part is <= Q
    and every prime of the rough part is > Q.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if Q < 1:
        raise ValueError("Q must be >= 1")
    smooth = 1
    rough = 1
    for p, e in factorize(n).pairs:
        if p <= Q:
            smooth *= p**e
        else:
            rough *= p**e
    return smooth, rough


def _prime_segments(lo: int, hi: int, segment: int = SEGMENT_SIZE) -> Iterator[np.ndarray]:
    """Yield int64 arrays of the primes in (lo, hi], in ascending blocks."""
    if hi <= max(lo, 1):
        return
    base_limit = isqrt(hi)
    base = np.ones(base_limit + 1, dtype=bool)
    base[:2] = False
    for p in range(2, isqrt(base_limit) + 1):
        if base[p]:
            base[p * p :: p] = False
    base_primes = np.flatnonzero(base)

    start = max(lo + 1, 2)
    while start <= hi:
        end = min(start + segment, hi + 1)
        seg = np.ones(end - start, dtype=bool)
        for p in base_primes:
            p = int(p)
            if p * p >= end:
                break
            first = max(p * p, ((start + p - 1) // p) * p)
            if first < end:
                seg[first - start :: p] = False
        yield np.flatnonzero(seg).astype(np.int64) + start
        start = end


def primes_in(a: float, b: float) -> list[int]:
    """All primes p with a < p <= b, ascending (possibly empty)."""
    if a >= b:
        raise ValueError("require a < b")
    lo = math.floor(a)
    hi = math.floor(b)
    out: list[int] = []
    for block in _prime_segments(lo, hi):
        out.extend(int(p) for p in block)
    return out


def lcm_guarded(moduli: ModuliSet | Iterable[int], guard_bits: int = 64) -> int:
    """Exact lcm of a multiset, or a GuardExceeded signal past guard_bits.

    The guard is measured in bits because an lcm over an interval of moduli
    explodes; the signal carries the bit length reached so callers can size
    a fallback.
    """
    if guard_bits < 1:
        raise ValueError("guard_bits must be >= 1")
    acc = 1
    for n in moduli:
        acc = lcm(acc, n)
        if acc.bit_length() > guard_bits:
            raise GuardExceeded(
                f"lcm exceeds {guard_bits} bits", estimate=acc.bit_length()
            )
    return acc


def crt_coprime(congruences: Sequence[tuple[int, int]]) -> int:
    """Smallest nonnegative solution of x = r (mod m) over pairwise coprime m."""
    x, mod = 0, 1
    for m, r in congruences:
        if m == 1:
            continue
        if gcd(mod, m) != 1:
            raise ValueError("moduli not pairwise coprime")
        inv = pow(mod % m, -1, m)
        x = x + mod * ((r - x) % m * inv % m)
        mod *= m
    return x % mod
