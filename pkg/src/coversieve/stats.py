"""Random residue systems: exact moments, pair-correlation formula, sampling.

Over all residue choices for a fixed moduli multiset T, the mean uncovered
density is exactly prod(1 - 1/n), and for distinct moduli >= 3 the second
moment collapses to a subset sum over T that never enumerates the W(T) =
prod(n) systems.  Both identities are computable exactly and are
cross-checked against direct enumeration; a seeded Monte Carlo path covers
multisets whose W(T) is out of enumeration range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod

import numpy as np

from .bounds import alpha
from .core import GuardExceeded, ModuliSet, ResidueSystem
from .density import DEFAULT_CELL_GUARD, _class_masks, exact_density

DEFAULT_W_GUARD = 10**6


@dataclass(frozen=True)
class RandomModel:
    """The family of all residue systems on a fixed moduli multiset."""

    T: ModuliSet
    seed: int | None = None

    def W(self) -> int:
        return self.T.product()


@dataclass(frozen=True)
class MomentReport:
    mean: Fraction
    second_moment: Fraction
    variance: Fraction
    method: str  # 'enumeration' | 'pair-formula' | 'monte-carlo'
    sample_count: int | None = None
    std_error: float | None = None
    bound_ratio: float | None = None  # variance / (alpha^2 log N / N^2), N = min T


def expected_delta(T: ModuliSet) -> Fraction:
    """Mean of delta over all residue choices for T: exactly prod(1 - 1/n)."""
    return alpha(T)


def _variance_shape(T: ModuliSet, variance: Fraction) -> float | None:
    if len(T) == 0:
        return None
    N = min(T.moduli)
    a = alpha(T)
    if N < 2 or a == 0:
        return None
    shape = float(a) ** 2 * math.log(N) / N**2
    return float(variance) / shape


def _masks_for(T: ModuliSet, guard: int):
    L = 1
    for n in T.moduli:
        L = lcm(L, n)
        if L > guard:
            raise GuardExceeded(f"period exceeds guard {guard}", estimate=L)
    return L, {n: _class_masks(L, n) for n in set(T.moduli)}


def enumerate_moments(
    T: ModuliSet,
    guard_w: int = DEFAULT_W_GUARD,
    density_guard: int = DEFAULT_CELL_GUARD,
) -> MomentReport:
    """Exact mean, second moment and variance by enumerating all W(T) systems.

    Densities share the period L = lcm(T), so the sums run over integer
    uncovered counts and only the final normalization builds fractions.
    """
    W = T.product()
    if W > guard_w:
        raise GuardExceeded(f"W(T) = {W} exceeds guard {guard_w}", estimate=W)
    L, masks = _masks_for(T, density_guard)
    mods = list(T.moduli)
    full = (1 << L) - 1

    total = 0
    total_sq = 0

    def walk(idx: int, uncovered: int):
        nonlocal total, total_sq
        if idx == len(mods):
            c = uncovered.bit_count()
            total += c
            total_sq += c * c
            return
        for mask in masks[mods[idx]]:
            walk(idx + 1, uncovered & ~mask)

    walk(0, full)
    mean = Fraction(total, W * L)
    second = Fraction(total_sq, W * L * L)
    variance = second - mean * mean
    return MomentReport(
        mean, second, variance, "enumeration",
        bound_ratio=_variance_shape(T, variance),
    )


def pair_formula_moments(
    T: ModuliSet, guard_subsets: int = 1 << 22
) -> MomentReport:
    """Second moment from the pair-correlation subset expansion, no enumeration.

    For distinct moduli all >= 3,

        E[delta^2] = prod((n-2)/n) * sum over S subseteq T of 1 / (M(S) L(S))

    with M(S) = prod(n - 2) and L(S) = lcm(S).  The expansion rests on the
    count of systems leaving two fixed integers uncovered, which is a
    product of (n-1) or (n-2) factors; n = 2 breaks the division and is
    excluded (enumeration handles it).
    """
    mods = sorted(T.moduli)
    if not T.distinct:
        raise ValueError("pair formula requires distinct moduli")
    if mods and mods[0] < 3:
        raise ValueError("pair formula requires all moduli >= 3")
    if 2 ** len(mods) > guard_subsets:
        raise GuardExceeded(
            f"2^{len(mods)} subsets exceed guard", estimate=2 ** len(mods)
        )

    subtotal = Fraction(0)

    def walk(idx: int, m_prod: int, l_val: int):
        nonlocal subtotal
        if idx == len(mods):
            subtotal += Fraction(1, m_prod * l_val)
            return
        walk(idx + 1, m_prod, l_val)
        n = mods[idx]
        walk(idx + 1, m_prod * (n - 2), lcm(l_val, n))

    walk(0, 1, 1)
    prefactor = prod((Fraction(n - 2, n) for n in mods), start=Fraction(1))
    second = prefactor * subtotal
    mean = expected_delta(T)
    variance = second - mean * mean
    return MomentReport(
        mean, second, variance, "pair-formula",
        bound_ratio=_variance_shape(T, variance),
    )


def sample_moments(
    T: ModuliSet,
    trials: int,
    seed: int = 0,
    density_guard: int = DEFAULT_CELL_GUARD,
) -> MomentReport:
    """Seeded Monte Carlo estimate of the moments, with exact per-sample deltas.

    Trial t derives its generator from (seed, t), so any execution order
    (or a parallel run) produces bit-identical results.  Running sums stay
    rational; only the final standard error is floating.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    mods = list(T.moduli)
    use_masks = True
    try:
        L, masks = _masks_for(T, min(density_guard, 2 * 10**5))
        full = (1 << L) - 1
    except GuardExceeded:
        use_masks = False

    total = Fraction(0)
    total_sq = Fraction(0)
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        residues = [int(rng.integers(0, n)) for n in mods]
        if use_masks:
            uncovered = full
            for n, r in zip(mods, residues):
                uncovered &= ~masks[n][r]
            d = Fraction(uncovered.bit_count(), L)
        else:
            d = exact_density(
                ResidueSystem.from_pairs(zip(mods, residues)), density_guard
            ).value
        total += d
        total_sq += d * d

    mean = total / trials
    if trials >= 2:
        variance = (total_sq - trials * mean * mean) / (trials - 1)
        std_error = math.sqrt(float(variance) / trials)
    else:
        variance = Fraction(0)
        std_error = None
    return MomentReport(
        mean, total_sq / trials, variance, "monte-carlo",
        sample_count=trials, std_error=std_error,
        bound_ratio=_variance_shape(T, variance),
    )


@dataclass(frozen=True)
class VarianceScanRow:
    T: ModuliSet
    variance: Fraction
    bound_shape: float  # alpha^2 log N / N^2 with N = min T
    ratio: float


@dataclass(frozen=True)
class VarianceScanReport:
    rows: tuple[VarianceScanRow, ...]
    max_ratio: float


def variance_bound_scan(
    family: list[ModuliSet],
    guard_w: int = DEFAULT_W_GUARD,
    guard_subsets: int = 1 << 22,
) -> VarianceScanReport:
    """Tabulate variance against alpha^2 log N / N^2 across a family of T.

    The ratio column is diagnostic (the proportionality constant is not
    effective); the scan only asserts finiteness and reports the maximum.
    Prefers the pair formula, falling back to enumeration for multisets or
    moduli below 3.
    """
    rows = []
    max_ratio = 0.0
    for T in family:
        try:
            rep = pair_formula_moments(T, guard_subsets)
        except ValueError:
            rep = enumerate_moments(T, guard_w)
        N = min(T.moduli)
        shape = float(alpha(T)) ** 2 * math.log(N) / N**2
        ratio = float(rep.variance) / shape if shape > 0 else 0.0
        if not math.isfinite(ratio):
            raise ArithmeticError(f"non-finite ratio for {T}")
        rows.append(VarianceScanRow(T, rep.variance, shape, ratio))
        max_ratio = max(max_ratio, ratio)
    return VarianceScanReport(tuple(rows), max_ratio)
