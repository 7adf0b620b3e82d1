"""
Hochschild cohomology and homology
==================================

Tables are keyed by (total degree, weight).  Entries outside the safe
window are computed but flagged as not exact.
"""

from reflexdga.complexes import TruncationPolicy
from reflexdga.examples import dual_numbers, ground_field, m2
from reflexdga.hochschild import cup_product, hh_cohomology, hh_homology
from reflexdga.koszul import poly_t_truncated

policy = TruncationPolicy(max_weight=6, degree_window=(-2, 4))

############################################################
# HH^* of k[x]/x^2 with |x| = 1: one class in degrees 0 and 1 per weight

t = hh_cohomology(dual_numbers(1), policy)
for (m, n), d in t.nonzero().items():
    print(f"HH^({m}, weight {n}) = {d}")
print("Euler check:", t.euler_ok)

############################################################
# The cup product: powers of the weight-one degree-zero class

cup = cup_product(dual_numbers(1), policy)
(gen,) = cup.classes_at(0, 1)
print("t^i spans weight i:", cup.power_basis_check(gen, 6))

############################################################
# Morita invariance on a small example

p2 = TruncationPolicy(2)
print("HH(M2(k)) == HH(k):", hh_cohomology(m2(ground_field()), p2).comparable() ==
      hh_cohomology(ground_field(), p2).comparable())

############################################################
# Hochschild homology of k[t], |t| = 1, kept up to t^6.  Classes show up in
# negative homological degree (positive cohomological degree here).

h = hh_homology(poly_t_truncated(6), TruncationPolicy(3))
print({-m: d for (m, _), d in h.nonzero().items()})
print(h.caveats)
