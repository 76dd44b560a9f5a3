"""Jordan-good sequences and the polynomials f_mu on an elementary grading."""

import itertools

from ujgrade import FiniteAbelianGroup, elementary_grading, f_mu, is_graded_identity, is_jordan_good

G = FiniteAbelianGroup.parse("Z3")
eta = ((1,), (2,), (2,))
grading = elementary_grading(G, eta)

for mu in itertools.product(G.elements, repeat=2):
    good = is_jordan_good(G, eta, mu)
    identity = is_graded_identity(grading, f_mu(G, mu))
    print(f"mu={[g[0] for g in mu]}  good={good!s:5}  f_mu identity={identity}")
