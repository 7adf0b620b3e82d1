"""
Koszul duality, Tor and reflexivity
===================================

The Koszul dual of k[x]/x^2 is a power series ring in one variable; its
degree depends on |x|.  Tor_A(k, k) is one-dimensional in each index and
the reflexivity report collects the three pieces of evidence.
"""

from reflexdga.algebra import semisimple_module
from reflexdga.complexes import TruncationPolicy
from reflexdga.examples import a2_path_algebra, dual_numbers
from reflexdga.hochschild import cup_product, hh_cohomology
from reflexdga.koszul import (derived_tensor_k_k, hh_comparison_with_dual, koszul_dual, perfectness_probe,
                              polynomial_hh, reflexivity_report)

policy = TruncationPolicy(max_weight=6)

############################################################
# Ext algebras

for a in (dual_numbers(0), dual_numbers(1), a2_path_algebra()):
    ext = koszul_dual(a, policy)
    print(a.label, ext.dims_by_degree(), "|t| =", ext.polynomial_pattern())

############################################################
# k (x)^L_A k for |x| = 1, and the action of t on it

tor = derived_tensor_k_k(dual_numbers(1), TruncationPolicy(10))
print(tor.dims_by_index)
print("t shifts the index isomorphically:", tor.t_shifts_isomorphically())

############################################################
# HH of A against HH of k[t] from its two-term bimodule complex

a = dual_numbers(1)
cmp = hh_comparison_with_dual(hh_cohomology(a, policy), cup_product(a, policy), polynomial_hh(6))
print("agree:", cmp["agree"])
print(cmp["caveat"])

############################################################
# Reflexivity and the perfectness probe

rep = reflexivity_report(a, policy)
print("verdict:", rep.verdict)
for e in rep.evidence:
    print(f"  [{e.status}] {e.criterion}: {e.detail}")
probe = perfectness_probe(semisimple_module(a), policy)
print(probe.verdict, [tot for _, _, tot in probe.stages])
