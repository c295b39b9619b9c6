"""Smooth-part decomposition of a residue system.

Factoring each modulus n into its largest Q-smooth divisor times a rough
cofactor splits a system C into subsystems C_h indexed by h modulo
M = lcm of the smooth parts: C_h holds the rough cofactor of every class
whose smooth congruence admits h.  The uncovered density then satisfies
the exact identity delta(C) = (1/M) sum_h delta(C_h), and per-subsystem
pair-correction bounds average into a positivity certificate for systems
whose full period is far beyond any direct scan.

Many h share an identical C_h, so subsystems are stored sparsely as
distinct membership patterns with their h-counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np

from .bounds import BoundCertificate, alpha, beta
from .core import GuardExceeded, ResidueSystem, smooth_split
from .density import DEFAULT_CELL_GUARD, DensityReport, exact_density

DEFAULT_M_GUARD = 10**7

_CHUNK = 1 << 18


class SmoothCoverError(ValueError):
    """The Q-smooth part of the system already covers all integers."""


@dataclass(frozen=True)
class SubsystemGroup:
    """All h in [0, M) sharing one subsystem, stored once.

    class_indices are positions into the parent system of every class
    admitting these h (before merging); subsystem holds the rough-cofactor
    classes with duplicates merged, since identical pairs arising from
    different parent classes count once inside a subsystem.
    """

    count: int
    representative: int
    class_indices: tuple[int, ...]
    subsystem: ResidueSystem


@dataclass(frozen=True)
class Decomposition:
    system: ResidueSystem
    Q: float
    M: int
    splits: tuple[tuple[int, int], ...]  # (smooth, rough) per class
    groups: tuple[SubsystemGroup, ...]
    smooth_subsystem: ResidueSystem  # classes whose modulus is Q-smooth

    def subsystem_at(self, h: int) -> ResidueSystem:
        """C_h built directly from the membership rule (for spot checks)."""
        pairs = set()
        for c, (s, rough) in zip(self.system.classes, self.splits):
            if h % s == c.residue % s:
                pairs.add((rough, c.residue % rough))
        return ResidueSystem.from_pairs(sorted(pairs))


def _membership_groups(splits, residues, M):
    """Group h in [0, M) by which classes admit them; returns pattern -> [count, rep_h]."""
    found: dict[bytes, list[int]] = {}
    l = len(splits)
    if l == 0:
        return {b"": [M, 0]}
    for start in range(0, M, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, M), dtype=np.int64)
        masks = np.empty((l, idx.size), dtype=bool)
        for i, ((s, _), r) in enumerate(zip(splits, residues)):
            masks[i] = (idx % s) == (r % s)
        rows = np.packbits(masks, axis=0).T
        uniq, first, counts = np.unique(
            rows, axis=0, return_index=True, return_counts=True
        )
        for row, at, cnt in zip(uniq, first, counts):
            key = row.tobytes()
            entry = found.get(key)
            if entry is None:
                found[key] = [int(cnt), start + int(at)]
            else:
                entry[0] += int(cnt)
    return found


def decompose(
    system: ResidueSystem, Q: float, guard_m: int = DEFAULT_M_GUARD
) -> Decomposition:
    """Split C by Q-smooth parts into the family {C_h} modulo M.

    M is the lcm of the smooth parts of the moduli (guarded); each class
    (n, r) lands in C_h exactly when h matches r modulo the smooth part of
    n, contributing its rough cofactor.  Subsystem moduli are always
    coprime to M, which is verified structurally.
    """
    if Q < 2:
        raise ValueError("Q must be >= 2")
    splits = tuple(smooth_split(c.modulus, Q) for c in system.classes)
    M = 1
    for s, _ in splits:
        M = lcm(M, s)
        if M > guard_m:
            raise GuardExceeded(f"M exceeds guard {guard_m}", estimate=M)

    residues = [c.residue for c in system.classes]
    found = _membership_groups(splits, residues, M)

    l = len(splits)
    groups = []
    landings = 0
    for key, (cnt, rep) in sorted(found.items(), key=lambda kv: kv[1][1]):
        bits = np.unpackbits(np.frombuffer(key, dtype=np.uint8), count=l) if l else []
        indices = tuple(int(i) for i in np.flatnonzero(bits)) if l else ()
        landings += cnt * len(indices)
        pairs = set()
        for i in indices:
            rough = splits[i][1]
            if gcd(rough, M) != 1:
                raise RuntimeError("rough cofactor not coprime to M")
            pairs.add((rough, residues[i] % rough))
        groups.append(
            SubsystemGroup(cnt, rep, indices, ResidueSystem.from_pairs(sorted(pairs)))
        )

    # each class admits h exactly M / smooth-part times across [0, M)
    expected = sum(M // s for s, _ in splits)
    if landings != expected:
        raise RuntimeError("membership landings do not balance")

    smooth_cls = tuple(
        c for c, (_, rough) in zip(system.classes, splits) if rough == 1
    )
    return Decomposition(system, Q, M, splits, tuple(groups), ResidueSystem(smooth_cls))


@dataclass(frozen=True)
class IdentityReport:
    lhs: Fraction  # delta(C) by direct scan
    rhs: Fraction  # (1/M) sum_h delta(C_h)
    equal: bool
    M: int


def decomposition_identity(
    system: ResidueSystem,
    Q: float,
    guard_m: int = DEFAULT_M_GUARD,
    density_guard: int = DEFAULT_CELL_GUARD,
) -> IdentityReport:
    """Check delta(C) = (1/M) sum_h delta(C_h) exactly (both sides computed)."""
    dec = decompose(system, Q, guard_m)
    rhs = sum(
        (g.count * exact_density(g.subsystem, density_guard).value for g in dec.groups),
        Fraction(0),
    ) / dec.M
    lhs = exact_density(system, density_guard).value
    return IdentityReport(lhs, rhs, lhs == rhs, dec.M)


def density_decomposed(
    system: ResidueSystem,
    Q: float,
    guard_m: int = DEFAULT_M_GUARD,
    density_guard: int = DEFAULT_CELL_GUARD,
) -> DensityReport:
    """delta(C) through the decomposition identity, for periods too large to scan.

    Useful when lcm(S(C)) blows past the scan guard but M and the per-
    subsystem periods stay small.  The reported period is M times the lcm
    of all rough moduli encountered.
    """
    dec = decompose(system, Q, guard_m)
    total = Fraction(0)
    rough_period = 1
    for g in dec.groups:
        rep = exact_density(g.subsystem, density_guard)
        total += g.count * rep.value
        rough_period = lcm(rough_period, rep.period)
    value = total / dec.M
    period = dec.M * rough_period
    count = value * period
    assert count.denominator == 1
    return DensityReport(value, period, "decomposition", int(count))


def _diagnostic_shape(system: ResidueSystem, Q: float) -> float:
    """s^2 log^2(QK) / Q with K read off the modulus range (diagnostic only)."""
    mods = [c.modulus for c in system.classes]
    if not mods:
        return 0.0
    s = system.multiplicity()
    K = max(mods) / min(mods)
    return s * s * math.log(Q * max(K, 1.0)) ** 2 / Q


@dataclass(frozen=True)
class AveragedBeta:
    value: Fraction  # (1/M) sum_h beta(C_h), exact
    diagnostic_shape: float


def averaged_beta(
    system: ResidueSystem, Q: float, guard_m: int = DEFAULT_M_GUARD
) -> AveragedBeta:
    """Exact average of beta over the subsystems, with the asymptotic shape."""
    dec = decompose(system, Q, guard_m)
    total = sum((g.count * beta(g.subsystem) for g in dec.groups), Fraction(0))
    return AveragedBeta(total / dec.M, _diagnostic_shape(system, Q))


@dataclass(frozen=True)
class AveragedAlpha:
    avg_alpha: Fraction  # (1/M) sum_h alpha(C_h), exact
    floor: float  # alpha(C) ** ((1 + 1/Q) / delta(C')), floating
    holds: bool
    delta_smooth: Fraction  # delta(C'), exact


def averaged_alpha_floor(
    system: ResidueSystem,
    Q: float,
    guard_m: int = DEFAULT_M_GUARD,
    density_guard: int = DEFAULT_CELL_GUARD,
    slack: float = 1e-12,
) -> AveragedAlpha:
    """Average of alpha over subsystems against its proved floor.

    Requires the Q-smooth classes C' to leave something uncovered; when
    they cover everything the floor does not exist and SmoothCoverError is
    raised.  The floor has an irrational exponent, so it is evaluated in
    floating point and compared with a small slack.
    """
    dec = decompose(system, Q, guard_m)
    d_smooth = exact_density(dec.smooth_subsystem, density_guard).value
    if d_smooth == 0:
        raise SmoothCoverError("Q-smooth classes cover all integers")
    avg = sum(
        (g.count * alpha(g.subsystem) for g in dec.groups), Fraction(0)
    ) / dec.M
    exponent = (1 + 1 / Q) / float(d_smooth)
    floor = float(alpha(system)) ** exponent
    return AveragedAlpha(avg, floor, float(avg) >= floor - slack, d_smooth)


def positivity_certificate(
    system: ResidueSystem, Q: float, guard_m: int = DEFAULT_M_GUARD
) -> BoundCertificate:
    """Exact lower bound delta(C) >= (1/M) sum_h max(0, alpha(C_h) - beta(C_h)).

    Clipping each subsystem bound at zero is sound (densities are never
    negative) and strictly improves averaging alpha and beta separately.
    The certificate is positive only if delta(C) > 0, and it needs no scan
    of the full period.
    """
    dec = decompose(system, Q, guard_m)
    total = Fraction(0)
    audit = []
    for g in dec.groups:
        a = alpha(g.subsystem)
        b = beta(g.subsystem)
        term = max(Fraction(0), a - b)
        total += g.count * term
        audit.append(
            {"h_count": g.count, "representative": g.representative,
             "alpha": a, "beta": b, "term": term}
        )
    bound = total / dec.M
    return BoundCertificate(
        "decomposed", bound,
        {"Q": Q, "M": dec.M, "pattern_count": len(dec.groups), "per_pattern": audit},
    )


def suggest_Q(system: ResidueSystem) -> int:
    """Largest prime at most sqrt(max modulus), a serviceable default for Q."""
    mods = [c.modulus for c in system.classes]
    top = isqrt(max(mods, default=4))
    for q in range(max(top, 2), 1, -1):
        if all(q % p for p in range(2, isqrt(q) + 1)):
            return q
    return 2
