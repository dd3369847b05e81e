"""The limit of ever finer scales: intervals on a circle.

The octave is R/Z, consonances are [0, 1/2). For a consonance k we find the
symmetries y -> t +- y that move a dissonance onto k and overlap the
consonances the most. Everything is exact rational arithmetic.
"""

from fractions import Fraction as F

from contrapunctus.continuum import continuous_successors, h1_rank, maximizers, semitones_to_point, verify_claims

for name, semis in [("unison", "0"), ("quarter-tone", "0.5"), ("minor third", "3"), ("fourth", "5"), ("near tritone", "5.5")]:
    k = semitones_to_point(semis)
    r = maximizers(k)
    syms = ", ".join(f"{g} (H1 rank {h1_rank(g)})" for g in r.symmetries)
    print(f"{name:>12} k={str(k):<5} measure {str(r.measure):<5} {syms}")
    print(f"{'':>12} successors {continuous_successors(k)}")

print("\nQualitative checks on the grid j/200:")
for c in verify_claims(200):
    print(f"  {'ok  ' if c.passed else 'FAIL'} {c.name}: {c.detail}")
print("  (the unison, too, reaches every other consonance)")
print("\nsuccessors of 1/4 - 1/1000:", continuous_successors(F(1, 4) - F(1, 1000)))
