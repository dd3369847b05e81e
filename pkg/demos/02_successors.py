"""From one consonant interval to its admitted successors.

Intervals live in the dual numbers Z_n[e]: c + e.d means cantus firmus c with
the discantus d steps above. For the interval e.k we search the symmetries
that move some dissonance onto it, commute with the polarity, and keep as
many consonant intervals consonant as possible.
"""

from contrapunctus import Dichotomy, counterpoint_symmetries, oracle_symmetries

X6 = Dichotomy.parse(6, "0,2,3")
s = counterpoint_symmetries(X6, 2)
print("Z_6 with consonances {0,2,3}, interval e.2")
for g in s.symmetries:
    print("  symmetry", g)
print("  admitted successors:", s.cardinality)
print("  ", " ".join(str(x) for x in sorted(s.successors)))

print("\nEach consonance of the 16-step model:")
U0 = Dichotomy.parse(16, "0,1,3,4,5,6,7,10")
for k in U0:
    s = counterpoint_symmetries(U0, k)
    print(f"  e.{k:<2} {s.cardinality:4d}  " + ", ".join(map(str, s.symmetries)))

print("\nThe brute force over the whole affine group agrees for e.0:")
res = oracle_symmetries(U0, 0)
print(f"  {res.cardinality} successors, {len(res.maximizers)} maximizers,"
      f" {len(res.successor_sets)} distinct successor sets")
