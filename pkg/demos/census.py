"""Count and list the isomorphism classes of gradings for a few small groups."""

from ujgrade import FiniteAbelianGroup, census, count_elementary, count_mt

for literal, n in [("Z2", 2), ("Z4", 3), ("Z2xZ2", 4)]:
    G = FiniteAbelianGroup.parse(literal)
    lines = census(G, n)
    print(f"{literal}, n={n}: {len(lines)} classes "
          f"({count_elementary(G.order, n)} elementary, {count_mt(G, n)} MT)")
    for line in lines[:6]:
        print("   ", line.format())
    if len(lines) > 6:
        print("    ...")
