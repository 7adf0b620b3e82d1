"""
DG algebras, radicals and semisimple quotients
==============================================

Build algebras from the catalogue or by hand, check the axioms, and split
off the semisimple part.
"""

from reflexdga.algebra import (DGAlgebra, cohomology_dims, j_plus, radical, semisimple_quotient,
                               separability_check, validate_dga)
from reflexdga.examples import a2_path_algebra, contractible, dual_numbers, gaussian_rationals

############################################################
# The dual numbers with |x| = 1 and a contractible algebra

for a in (dual_numbers(1), contractible()):
    print(a.label, "valid:", validate_dga(a).ok, "cohomology:", cohomology_dims(a))

############################################################
# A broken one: d(x) = x has the wrong degree and d^2 != 0

bad = DGAlgebra.from_tables([("1", 0), ("x", 1)], "1", {}, {"x": {"x": 1}})
for v in validate_dga(bad).violations:
    print(" ", v.kind, "-", v.message)

############################################################
# Radical, its DG closure, and the quotient for the A2 path algebra

a = a2_path_algebra()
print("dim J  =", radical(a).dim)
print("dim J+ =", j_plus(a).dim)
q = semisimple_quotient(a)
print("A/J+ has dim", q.dim, "and is", separability_check(q))

############################################################
# Q(i) is a field, but the separability test only certifies split cases

print("Q(i):", separability_check(gaussian_rationals()))
