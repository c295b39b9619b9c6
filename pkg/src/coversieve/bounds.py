"""Exact lower-bound machinery for uncovered densities.

Centers on the pair-correction bound

    delta(C) >= alpha(C) - beta(C),

with alpha the independent-moduli product prod(1 - 1/n) and beta the sum of
1/(n_i n_j) over non-coprime index pairs, plus its order-sensitive
refinement, exactly computed smooth reciprocal tails, and the floating
threshold function used to parameterize experiments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .core import ModuliSet, ResidueSystem, primes_in


@dataclass(frozen=True)
class BoundCertificate:
    """A proved lower bound on delta(C) with its audit trail.

    conclusion is 'positive' exactly when lower_bound > 0; the components
    map records whatever intermediate quantities justify the bound.
    """

    kind: str  # 'pair-correction' | 'pair-correction-refined' | 'decomposed'
    lower_bound: Fraction
    components: dict = field(default_factory=dict)

    @property
    def conclusion(self) -> str:
        return "positive" if self.lower_bound > 0 else "inconclusive"


def _moduli_of(obj) -> list[int]:
    if isinstance(obj, ResidueSystem):
        return [c.modulus for c in obj.classes]
    if isinstance(obj, ModuliSet):
        return list(obj.moduli)
    return list(obj)


def alpha(obj) -> Fraction:
    """prod (1 - 1/n) over the moduli multiset; depends only on the moduli."""
    out = Fraction(1)
    for n in _moduli_of(obj):
        out *= Fraction(n - 1, n)
    return out


def beta(system: ResidueSystem) -> Fraction:
    """sum of 1/(n_i n_j) over index pairs i < j with gcd(n_i, n_j) > 1.

    Pairs are counted by multiset position, so repeated moduli contribute
    (two equal moduli > 1 are never coprime).
    """
    mods = [c.modulus for c in system.classes]
    out = Fraction(0)
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            if gcd(mods[i], mods[j]) > 1:
                out += Fraction(1, mods[i] * mods[j])
    return out


def pair_correction_bound(
    system: ResidueSystem,
    refined: bool = False,
    sort_desc: bool = False,
) -> BoundCertificate:
    """Exact pair-correction lower bound on delta(C).

    Plain form: alpha - beta.  Refined form scales each subtracted pair
    term 1/(n_i n_j) by prod_{u > j} (1 - 1/n_u) over the classes after j,
    so it is order sensitive and never worse than the plain form.
    ``sort_desc`` preprocesses the class order to descending modulus, which
    tends to shrink the factors on the largest subtracted terms.
    """
    classes = list(system.classes)
    if sort_desc:
        classes.sort(key=lambda c: (-c.modulus, c.residue))
    mods = [c.modulus for c in classes]
    a = alpha(mods)

    # suffix products prod_{u > j} (1 - 1/n_u)
    suffix = [Fraction(1)] * (len(mods) + 1)
    for u in range(len(mods) - 1, -1, -1):
        suffix[u] = suffix[u + 1] * Fraction(mods[u] - 1, mods[u])

    plain_sub = Fraction(0)
    refined_sub = Fraction(0)
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            if gcd(mods[i], mods[j]) > 1:
                term = Fraction(1, mods[i] * mods[j])
                plain_sub += term
                refined_sub += term * suffix[j + 1]

    if refined:
        return BoundCertificate(
            "pair-correction-refined",
            a - refined_sub,
            {"alpha": a, "beta": plain_sub, "refined_correction": refined_sub},
        )
    return BoundCertificate("pair-correction", a - plain_sub, {"alpha": a, "beta": plain_sub})


def smooth_numbers(limit: int, Q: float) -> list[int]:
    """All Q-smooth integers in [1, limit], ascending."""
    out = [1]
    for p in primes_in(1, Q):
        cur = list(out)
        for d in cur:
            v = d * p
            while v <= limit:
                out.append(v)
                v *= p
    return sorted(out)


def euler_product(Q: float) -> Fraction:
    """prod over primes p <= Q of (1 - 1/p)^-1, the full smooth reciprocal sum."""
    out = Fraction(1)
    for p in primes_in(1, Q):
        out *= Fraction(p, p - 1)
    return out


@dataclass(frozen=True)
class SmoothTail:
    value: Fraction  # exact sum of 1/n over Q-smooth n > N
    u: float  # log N / log Q
    asymptotic_shape: float  # (log Q) * exp(-u log u), constant 1


def smooth_tail_sum(N: int, Q: float) -> SmoothTail:
    """Exact reciprocal sum over Q-smooth integers above N.

    Computed as the Euler product minus the finite sum over smooth n <= N;
    both sides are exact rationals, so the whole infinite tail is a
    Fraction.  The asymptotic shape (log Q) e^{-u log u} is reported as a
    float purely for comparison; its implied constant is not effective.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if Q < 2:
        raise ValueError("Q must be >= 2 for the smooth sum to converge")
    finite = sum((Fraction(1, n) for n in smooth_numbers(N, Q)), Fraction(0))
    value = euler_product(Q) - finite
    u = math.log(N) / math.log(Q)
    shape = math.log(Q) * math.exp(-u * math.log(u)) if u > 0 else math.log(Q)
    return SmoothTail(value, u, shape)


def reciprocal_sum_threshold(N: int, s: int) -> float:
    """exp( log N * loglog(s log N) / log(s log N) ).

    Floating only: this function parameterizes experiment scales and never
    enters an exact certificate.
    """
    if N < 20:
        raise ValueError("N must be >= 20")
    if s < 1:
        raise ValueError("s must be a positive integer")
    x = s * math.log(N)
    if x <= math.e:
        raise ValueError("require s * log N > e")
    return math.exp(math.log(N) * math.log(math.log(x)) / math.log(x))
