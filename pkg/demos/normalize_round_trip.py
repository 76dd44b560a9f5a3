"""Scramble a standard grading by a random automorphism, then recover its class."""

import random
from fractions import Fraction

from ujgrade import FiniteAbelianGroup, UTMatrix, apply_automorphism, canonicalize, parse_label
from ujgrade.jordan import slots

rng = random.Random(2)
G = FiniteAbelianGroup.parse("Z4")
source = parse_label("MT(2,(3,1))", G, 5)

# random invertible upper triangular matrix
entries = {}
for i, j in slots(5):
    entries[(i, j)] = Fraction(rng.choice([1, 2, -3])) if i == j else Fraction(rng.randint(-2, 2))
P = UTMatrix(5, entries)

scrambled = apply_automorphism(source.grading(), P, flip=True)
print("component of degree 1 before:", source.grading().component((1,)).basis[0])
print("component of degree 1 after: ", scrambled.component((1,)).basis[0])

label, iso = canonicalize(scrambled)
print("recovered label:", label)  # MT(2,(1,1)) is the canonical form of MT(2,(3,1))
print("certificate validates:", iso.validate(scrambled, label.grading()))
