"""Explicit constructions: greedy near-covers, exact covers, and witnesses.

Three builders live here.  A seeded random-then-greedy procedure covers as
much of a scan window as possible using each modulus in (N, KN] exactly
once.  An inductive block-replacement scheme produces exact covering
systems whose squarefree moduli all exceed a prescribed bound.  And a
CRT-based extension turns an uncovered residue of the smooth part of a
system into a verified uncovered integer for the whole system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .core import (
    GuardExceeded,
    ResidueSystem,
    crt_coprime,
    factorize,
    primes_in,
    _prime_segments,
)
from .decompose import SmoothCoverError
from .density import DEFAULT_CELL_GUARD, uncovered_witness


@dataclass(frozen=True)
class GreedyStep:
    j: int
    divisors: tuple[int, ...]  # divisors of j among the randomized moduli
    f: int  # admissible residue classes mod j
    residue: int
    uncovered_after: int


@dataclass(frozen=True)
class GreedyTrace:
    N: int
    K: int
    window: int
    seed: int
    random_residues: tuple[tuple[int, int], ...]  # (n, r) for N < n <= 2N
    uncovered_after_random: int
    steps: tuple[GreedyStep, ...]
    system: ResidueSystem
    final_uncovered_count: int

    @property
    def final_uncovered_fraction(self) -> Fraction:
        return Fraction(self.final_uncovered_count, self.window)


def greedy_cover(N: int, K: int, seed: int = 0, window: int | None = None) -> GreedyTrace:
    """Random residues on (N, 2N], then greedy choices on (2N, KN].

    Every integer modulus in (N, KN] is used exactly once.  The first phase
    draws each residue uniformly and independently from a seeded generator;
    the second picks, for each j, the residue class covering the most of
    the still-uncovered window, restricted to classes that avoid the
    already-chosen class of every divisor of j among the random moduli
    whenever any such class exists (smallest residue on ties).  Densities
    are measured as exact fractions of the window, so passing the full
    period as the window makes every count exact.
    """
    if N < 1 or K < 2:
        raise ValueError("require N >= 1 and K >= 2")
    if window is None:
        window = 10 * K * N
    if window < K * N:
        raise ValueError("window too small: need window >= K*N")

    rng = np.random.default_rng(seed)
    unc = np.ones(window, dtype=bool)
    chosen: dict[int, int] = {}
    for n in range(N + 1, 2 * N + 1):
        r = int(rng.integers(0, n))
        chosen[n] = r
        unc[r::n] = False
    after_random = int(unc.sum())

    steps = []
    for j in range(2 * N + 1, K * N + 1):
        divisors = tuple(d for d in range(N + 1, 2 * N + 1) if j % d == 0)
        admissible = np.ones(j, dtype=bool)
        for d in divisors:
            admissible[chosen[d] % d::d] = False
        f = int(admissible.sum())

        nrows = window // j
        counts = unc[: nrows * j].reshape(nrows, j).sum(axis=0, dtype=np.int64)
        tail = unc[nrows * j :]
        counts[: tail.size] += tail
        if f > 0:
            counts[~admissible] = -1
        r = int(np.argmax(counts))  # first maximum = smallest residue
        chosen[j] = r
        unc[r::j] = False
        steps.append(GreedyStep(j, divisors, f, r, int(unc.sum())))

    system = ResidueSystem.from_pairs(sorted(chosen.items()))
    return GreedyTrace(
        N, K, window, seed,
        tuple((n, chosen[n]) for n in range(N + 1, 2 * N + 1)),
        after_random, tuple(steps), system, int(unc.sum()),
    )


def greedy_step_invariant(trace: GreedyTrace, slack: int = 1) -> bool:
    """Check the per-step contraction of the uncovered window count.

    Each step with f admissible classes must remove at least a 1/f share
    of what was uncovered: after <= (1 - 1/f) * before, up to ``slack``
    window-edge elements.  f = 1 forces the count to zero, and f = 0 can
    only happen when nothing was uncovered.  Pass slack=0 for traces whose
    window is the full period.
    """
    before = trace.uncovered_after_random
    for step in trace.steps:
        after = step.uncovered_after
        if after > before:
            return False
        if step.f == 0:
            if before != 0:
                return False
        elif step.f == 1:
            if after != 0:
                return False
        elif Fraction(after) > Fraction(step.f - 1, step.f) * before + slack:
            return False
        before = after
    return True


@dataclass(frozen=True)
class BlockSupplyResult:
    j: int
    lhs: int  # sum over primes p in (X_{j-1}, X_j] of floor(X_j / p)
    rhs: int  # X_{j-1}
    holds: bool


def _block_bound(j: int) -> int:
    return (j + 1) ** (j + 1)


def block_supply_check(j: int, sieve_limit: int = 10**9) -> BlockSupplyResult:
    """Exact check of the prime-block supply inequality at level j.

    Sums floor(X_j / p) over primes in (X_{j-1}, X_j] with X_j =
    (j+1)^(j+1), by segmented sieve.  j <= 8 keeps X_j under 1e9.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    lo, hi = _block_bound(j - 1), _block_bound(j)
    if hi > sieve_limit:
        raise GuardExceeded(f"X_{j} = {hi} exceeds sieve limit", estimate=hi)
    lhs = 0
    for block in _prime_segments(lo, hi):
        lhs += int(np.sum(hi // block))
    return BlockSupplyResult(j, lhs, lo, lhs >= lo)


def minimal_block_schedule(J: int) -> list[int]:
    """Alternative schedule: each X_j is the least integer satisfying the
    block-supply inequality given X_{j-1} (X_0 = 1)."""
    xs = [1]
    for _ in range(J):
        prev = xs[-1]
        x = prev + 1
        while True:
            supply = sum(x // p for p in primes_in(prev, x))
            if supply >= prev:
                break
            x += 1
        xs.append(x)
    return xs


@dataclass(frozen=True)
class ExactCoverPlan:
    depth: int
    block_bounds: tuple[int, ...]  # level bounds, index 0 .. depth
    prime_blocks: tuple[tuple[int, ...], ...]  # primes per level, 1 .. depth
    min_modulus_bound: int  # every modulus exceeds this
    multiplicity_bound: int  # bound at the final level
    system: ResidueSystem


def exact_cover_construct(
    J: int, ceiling: int = 4, minimal_schedule: bool = False
) -> ExactCoverPlan:
    """Exact covering system of squarefree moduli, all past a prescribed floor.

    Starts from the two classes mod 2 and replaces pairs level by level:
    at level j, the pairs on each modulus n are consumed in blocks, the
    block for prime q (taken ascending through the j-th prime interval)
    replacing each of its floor(X_j / q) pairs (n, r) by the q pairs
    (nq, r + n*mu).  Each replacement splits a class into an exact
    partition, so exactness is preserved; the block-supply inequality
    guarantees the primes never run out.  J = 4 already produces on the
    order of 1e5 classes, hence the ceiling.
    """
    if J < 1:
        raise ValueError("J must be >= 1")
    if J > ceiling:
        raise GuardExceeded(f"J = {J} exceeds ceiling {ceiling}", estimate=J)
    xs = minimal_block_schedule(J) if minimal_schedule else [_block_bound(j) for j in range(J + 1)]
    blocks = [tuple(primes_in(xs[j - 1], xs[j])) for j in range(1, J + 1)]

    pairs: list[tuple[int, int]] = [(2, 0), (2, 1)]
    for level in range(2, J + 1):
        x = xs[level]
        primes_here = blocks[level - 1]
        by_mod: dict[int, list[int]] = {}
        for n, r in pairs:
            by_mod.setdefault(n, []).append(r)
        new_pairs: list[tuple[int, int]] = []
        for n in sorted(by_mod):
            residues = sorted(by_mod[n])
            at = 0
            for q in primes_here:
                if at >= len(residues):
                    break
                take = min(x // q, len(residues) - at)
                for r in residues[at : at + take]:
                    new_pairs.extend((n * q, r + n * mu) for mu in range(q))
                at += take
            if at < len(residues):
                raise RuntimeError(
                    f"prime block exhausted at level {level}"
                )  # impossible while the supply inequality holds
        pairs = new_pairs

    floor = math.prod(xs[:J])
    return ExactCoverPlan(
        J, tuple(xs), tuple(blocks), floor, xs[J], ResidueSystem.from_pairs(pairs)
    )


@dataclass(frozen=True)
class PrimeProductStats:
    N: int
    threshold: float  # exp(sqrt(log N)) * log N
    primes: tuple[int, ...]  # primes in (threshold, N]
    sigma_ratio: Fraction  # sigma(H)/H = prod (1 + 1/p), exact
    divisor_count: int | None = None
    alpha_all_divisors: float | None = None  # prod over d | H, d > 1 of (1 - 1/d)
    alpha_exact: Fraction | None = None
    beta_upper_bound: Fraction | None = None  # (sigma(H)/H)^2 * sum_{d|H, d>1} 1/d^2


def prime_product_moduli(
    N: int,
    full_divisor_set: bool = False,
    guard: int = 1 << 20,
    exact_alpha: bool = False,
) -> PrimeProductStats:
    """Primes in (exp(sqrt(log N)) log N, N] and the divisor-set statistics.

    H is the product of those primes.  With full_divisor_set, the residue
    system on all divisors d > 1 of H is profiled: alpha over the 2^k - 1
    divisors (as a log-sum float; exactly on request, the rational has
    enormous height) and the finite pair-sum bound
    beta <= (sigma(H)/H)^2 * sum_{d | H, d > 1} 1/d^2, exact because every
    d^2 divides H^2.  For suitable N the alpha value dwarfs the beta bound,
    which is what makes these systems provably non-covering.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    threshold = math.exp(math.sqrt(math.log(N))) * math.log(N)
    ps = tuple(primes_in(threshold, N))
    if not ps:
        raise ValueError(f"no primes in ({threshold:.2f}, {N}]")
    sigma_ratio = Fraction(1)
    for p in ps:
        sigma_ratio *= Fraction(p + 1, p)
    if not full_divisor_set:
        return PrimeProductStats(N, threshold, ps, sigma_ratio)

    if 2 ** len(ps) > guard:
        raise GuardExceeded(
            f"2^{len(ps)} divisors exceed guard {guard}", estimate=2 ** len(ps)
        )
    divisors = [1]
    for p in ps:
        divisors += [d * p for d in divisors]
    divisors = sorted(divisors)[1:]  # drop d = 1

    log_alpha = sum(math.log1p(-1.0 / d) for d in divisors)
    a_exact = None
    if exact_alpha:
        bits = sum(d.bit_length() for d in divisors)
        if bits > 10**6:
            raise GuardExceeded(
                f"exact alpha needs ~{bits} bits", estimate=bits
            )
        a_exact = Fraction(
            math.prod(d - 1 for d in divisors), math.prod(divisors)
        )
    inv_sq = sum(Fraction(1, d * d) for d in divisors)
    return PrimeProductStats(
        N, threshold, ps, sigma_ratio,
        divisor_count=len(divisors),
        alpha_all_divisors=math.exp(log_alpha),
        alpha_exact=a_exact,
        beta_upper_bound=sigma_ratio * sigma_ratio * inv_sq,
    )


def extend_witness(
    system: ResidueSystem, B: int, s: int, guard: int = DEFAULT_CELL_GUARD
) -> int:
    """A verified uncovered integer for C, found via its smooth part.

    With all moduli in (1, B] and multiplicities at most s, split off
    C_0 = classes whose modulus is sqrt(s*B)-smooth.  If C_0 leaves a
    residue a mod lcm(S(C_0)) uncovered, then each remaining prime p >
    sqrt(s*B) divides at most p - 1 of the moduli, so some b(p) avoids all
    their residues mod p; the CRT solution through a and the b(p) avoids
    every class of C.  The returned integer is re-verified against C
    before being returned.
    """
    for c in system.classes:
        if not (1 < c.modulus <= B):
            raise ValueError(f"modulus {c.modulus} outside (1, {B}]")
    if system.multiplicity() > s:
        raise ValueError(f"multiplicity exceeds {s}")

    cut = math.sqrt(s * B)
    smooth_cls = []
    rough_primes: dict[int, list[int]] = {}
    for c in system.classes:
        fac = factorize(c.modulus)
        if fac.largest_prime() <= cut:
            smooth_cls.append(c)
        for p, _ in fac.pairs:
            if p > cut:
                rough_primes.setdefault(p, []).append(c.residue % p)

    c0 = ResidueSystem(tuple(smooth_cls))
    a = uncovered_witness(c0, guard)
    if a is None:
        raise SmoothCoverError("smooth part covers all integers")
    L = 1
    for c in smooth_cls:
        L = lcm(L, c.modulus)

    congruences = [(L, a)]
    for p in sorted(rough_primes):
        taken = rough_primes[p]
        if len(taken) > p - 1:
            raise RuntimeError(
                f"{len(taken)} multiples of {p} among the moduli"
            )  # impossible when p > sqrt(s*B)
        forbidden = set(taken)
        b = next(x for x in range(p) if x not in forbidden)
        congruences.append((p, b))

    A = crt_coprime(congruences)
    for c in system.classes:
        if A % c.modulus == c.residue:
            raise RuntimeError("extension failed verification")  # must never happen
    return A
