"""Which halves of a scale are "strong"?

A dichotomy splits Z_n into two equal halves. We look for affine maps that
swap the halves. When exactly one exists the dichotomy is strong and that map
is its polarity; it is what later tells consonant and dissonant intervals
apart.
"""

import itertools

from contrapunctus import Dichotomy, find_quasipolarities

print("The consonances of the 16-step model:")
U0 = Dichotomy.parse(16, "0,1,3,4,5,6,7,10")
rep = find_quasipolarities(U0)
print(f"  {{{U0}}}  strong={rep.strong}  polarity={rep.polarity}")

print("\nA half that is swapped in two different ways is not strong:")
rep = find_quasipolarities(Dichotomy.parse(6, "0,1,2"))
print("  {0,1,2} in Z_6 ->", ", ".join(map(str, rep.quasipolarities)))

print("\nHow rare are strong dichotomies?")
for n in (6, 8, 10, 12):
    total = strong = 0
    for members in itertools.combinations(range(n), n // 2):
        total += 1
        strong += find_quasipolarities(Dichotomy(n, members)).strong
    print(f"  Z_{n:<2}: {strong:3d} of {total} halves are strong")
