"""
Reflexive and dualizable objects in small monoidal categories
=============================================================

Graded vector spaces and graded modules over k[x]/x^2.  In the module
category the simple module is reflexive but not dualizable, while free
modules are both.
"""

import random

from reflexdga.monoidal import (MonObject, direct_sum, dual_object, graded_vect, is_dualizable, is_projective,
                                is_reflexive, modules_over, probe_set, prop_equivalences_check, random_retract,
                                retract_closure_check, selftest, shift, unit_object)

gv = graded_vect()
mod = modules_over()

############################################################
# Duals flip degrees

print(dual_object(direct_sum(shift(gv, 1), shift(gv, -2))).degrees)

############################################################
# R, k and R (+) k over the dual numbers

r = unit_object(mod)
k = MonObject(mod, (0,), {}, label="k")
for x in (r, k, direct_sum(r, k)):
    print(x.dim, "reflexive:", is_reflexive(x)[0], "dualizable:", is_dualizable(x),
          "projective:", is_projective(x))

############################################################
# The six equivalent conditions, checked against a probe set

res = prop_equivalences_check(k, probe_set(mod, random.Random(0)))
print("conditions:", res.conditions, "agree:", res.agree)

############################################################
# A summand hidden by a random automorphism

x, f, g, n = random_retract(mod, random.Random(4))
print("retract closure holds:", retract_closure_check(x, f, g, n))

############################################################
# The seeded self-test

rep = selftest(seed=7, graded_trials=50, module_trials=20, retract_trials=20)
print("ok:", rep.ok, "module objects passing:", rep.passed_modules)
