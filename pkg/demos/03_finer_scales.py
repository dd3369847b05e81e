"""Refining the scale: 16 steps, then 32, ... up to 512.

Each doubling embeds the old consonances by x -> 2x. A symmetry found in the
coarse scale proposes candidates in the fine one (translation doubled, linear
part lifted); the best candidate is kept. Successors must survive the move.
"""

from contrapunctus import Dichotomy, Embedding, chain_extend, counterpoint_symmetries, doubling_tower, extended_symmetries
from contrapunctus.extension import preservation_check

X6 = Dichotomy.parse(6, "0,2,3")
X12 = Dichotomy.parse(12, "0,1,4,5,6,9")
parents = counterpoint_symmetries(X6, 2).symmetries
step = extended_symmetries(parents, Embedding(2, X6, X12), 2)
print("Z_6 -> Z_12 for e.2:")
print("  ", ", ".join(map(str, step.extended.symmetries)), "with", step.extended.cardinality, "successors")
print("   successors preserved:", bool(preservation_check(step)))

tower = doubling_tower()
print("\nThe doubling tower:", " -> ".join(f"Z_{n}" for n in tower.moduli))
for k in tower.base:
    chain = chain_extend(tower, k)
    trail = " -> ".join(str(s.extended.cardinality) for s in chain.steps)
    print(f"  e.{k:<2} {chain.base.cardinality} -> {trail}   final {', '.join(map(str, chain.final.symmetries))}")
