"""Shared helpers: seeded random-system generators and brute-force oracles.

The oracles here deliberately avoid the library's own fast paths: densities
are rechecked by naive per-integer scans, candidate modulus sets by direct
subset search, so that library results are confirmed by independent code.
"""

import random
from fractions import Fraction
from math import gcd, lcm

import coversieve as cs

# lcms <= 1e4 with rich divisor structure; random systems draw moduli
# from the divisors of one of these
LCM_POOL = [
    12, 24, 30, 36, 48, 60, 72, 90, 96, 120, 144, 180, 240, 280, 360,
    420, 504, 540, 630, 720, 840, 1080, 1260, 1680, 2160, 2520, 3360,
    3780, 5040, 6300, 7560, 9240, 10000,
]


def divisors_of(n: int) -> list[int]:
    out = [1]
    for p, e in cs.factorize(n).pairs:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def random_system(rnd: random.Random, max_classes: int = 8, allow_unit: bool = False):
    """A random residue system whose moduli all divide one pooled lcm <= 1e4."""
    L = rnd.choice(LCM_POOL)
    divs = [d for d in divisors_of(L) if d > 1]
    k = rnd.randint(1, max_classes)
    mods = [rnd.choice(divs) for _ in range(k)]
    if allow_unit and rnd.random() < 0.05:
        mods.append(1)
    return cs.ResidueSystem.from_pairs((n, rnd.randrange(n)) for n in mods)


def naive_density(system: cs.ResidueSystem) -> Fraction:
    """Per-integer scan over one period; the reference for exact_density."""
    L = 1
    for c in system.classes:
        L = lcm(L, c.modulus)
    unc = sum(
        1 for x in range(L)
        if all(x % c.modulus != c.residue for c in system.classes)
    )
    return Fraction(unc, L)


def unit_sum_distinct_sets(max_lcm: int) -> list[list[int]]:
    """All sets of distinct moduli > 1 with reciprocal sum exactly 1 and
    lcm at most max_lcm (enumerated as subsets of divisors per lcm value)."""
    out = []
    for L in range(2, max_lcm + 1):
        divs = [d for d in divisors_of(L) if d > 1]
        fr = [Fraction(1, d) for d in divs]
        suffix = [Fraction(0)] * (len(divs) + 1)
        for i in range(len(divs) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + fr[i]

        def dfs(i, cur, chosen, cur_lcm):
            if cur == 1:
                if cur_lcm == L:
                    out.append(list(chosen))
                return
            if i == len(divs) or cur > 1 or cur + suffix[i] < 1:
                return
            dfs(i + 1, cur, chosen, cur_lcm)
            chosen.append(divs[i])
            dfs(i + 1, cur + fr[i], chosen, lcm(cur_lcm, divs[i]))
            chosen.pop()

        dfs(0, Fraction(0), [], 1)
    return out


def exact_cover_exists(mods: list[int]) -> bool:
    """Backtracking search for pairwise-disjoint residues on the given moduli.

    The first residue is fixed to 0 (translation invariance), after which
    any coprime pair of moduli kills the branch immediately.
    """
    mods = sorted(mods)
    chosen: list[tuple[int, int]] = []

    def bt(i):
        if i == len(mods):
            return True
        n = mods[i]
        for r in range(1) if i == 0 else range(n):
            if all((r - rj) % gcd(n, nj) != 0 for nj, rj in chosen):
                chosen.append((n, r))
                if bt(i + 1):
                    return True
                chosen.pop()
        return False

    return bt(0)
