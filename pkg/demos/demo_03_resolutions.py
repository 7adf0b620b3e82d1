"""
Bar resolutions and the shift totalization
==========================================

The bar resolution of k over k[x]/x^2 (|x| = 1) has a two-dimensional term
in every weight.  The explicit resolution built from shifted copies of A
gives the same answer with far fewer cells.
"""

from reflexdga.algebra import semisimple_module
from reflexdga.complexes import TruncationPolicy
from reflexdga.examples import dual_numbers
from reflexdga.resolutions import bar_resolution, bimodule_bar_resolution, shift_totalization_resolution

a = dual_numbers(1)
policy = TruncationPolicy(max_weight=6)

############################################################
# Bar resolution of the simple module

res = bar_resolution(semisimple_module(a), policy)
print("term dims:", res.term_dims())
print("homology :", res.homology_by_degree(), "resolves k:", res.is_resolution())

############################################################
# Unnormalized bar gives bigger terms, same homology

raw = bar_resolution(semisimple_module(a), policy, normalized=False)
print("unnormalized term dims:", raw.term_dims())
print("same homology:", raw.homology_by_degree() == res.homology_by_degree())

############################################################
# The shift totalization, one column per weight

st = shift_totalization_resolution(a, policy)
print("columns:", len(st.term_dims()), "homology:", st.homology_by_degree())

############################################################
# The bimodule bar resolution of the ungraded dual numbers

bim = bimodule_bar_resolution(dual_numbers(0), TruncationPolicy(3))
print("bimodule terms:", bim.term_dims(), "acyclic cone:", bim.is_resolution())
