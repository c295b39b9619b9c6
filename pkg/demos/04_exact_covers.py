#!/usr/bin/env python3
"""Exact covering systems whose moduli are all enormous.

The construction walks levels j = 1, 2, ...: level j moduli are squarefree
products p_1 ... p_j with p_i drawn from consecutive prime blocks
(X_{i-1}, X_i], X_i = (i+1)^(i+1).  Each level replaces classes by exact
partitions into a prime's residues, so exactness is preserved while the
minimum modulus blows past prod X_i.  The prime supply per block is
guaranteed by an inequality checked exactly here.
"""

from collections import Counter

import coversieve as cs

print("Block supply inequality: sum over primes in (X_{j-1}, X_j] of [X_j/p] >= X_{j-1}")
print(f"  {'j':>2} {'X_j':>10} {'lhs':>10} {'rhs':>9} {'holds':>6}")
for j in range(1, 7):
    r = cs.block_supply_check(j)
    print(f"  {j:>2} {(j + 1) ** (j + 1):>10} {r.lhs:>10} {r.rhs:>9} {str(r.holds):>6}")

print("\nConstructed systems:")
for J in (1, 2, 3, 4):
    plan = cs.exact_cover_construct(J)
    check = cs.is_exact_cover(plan.system)
    mods = Counter(c.modulus for c in plan.system.classes)
    summary = ", ".join(f"{c}x mod {n}" for n, c in sorted(mods.items())[:3])
    if len(mods) > 3:
        summary += f", ... ({len(mods)} distinct moduli)"
    print(f"  J={J}: {len(plan.system):>6} classes ({summary})")
    print(f"        exact cover: {bool(check)}; min modulus "
          f"{min(mods):>6} > bound {plan.min_modulus_bound}; "
          f"multiplicity {plan.system.multiplicity()} <= {plan.multiplicity_bound}")

print("\nMinimal block schedule (smallest X_j satisfying the supply inequality):")
print(f"  standard: {[(j + 1) ** (j + 1) for j in range(5)]}")
print(f"  minimal:  {cs.minimal_block_schedule(4)}")
plan = cs.exact_cover_construct(3, minimal_schedule=True)
print(f"  J=3 with minimal schedule: {len(plan.system)} classes, "
      f"exact = {bool(cs.is_exact_cover(plan.system))}, "
      f"min modulus {min(c.modulus for c in plan.system)} > bound {plan.min_modulus_bound}")
