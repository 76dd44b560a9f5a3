"""Graded identities that tell non-isomorphic gradings apart."""

from ujgrade import FiniteAbelianGroup, enumerate_classes, separating_identity

G = FiniteAbelianGroup.parse("Z2")
labels = enumerate_classes(G, 3)
for a in labels:
    for b in labels:
        if str(a) < str(b):
            sep = separating_identity(a, b)
            print(f"{str(a):18} {str(b):18} {sep.kind:8} holds in {sep.holds_in}, "
                  f"{len(sep.term.monomials)} monomials, verified={sep.verify()}")
