import random

import pytest

from reflexdga.errors import PreconditionError
from reflexdga.linalg import SparseMatrix, FieldSpec
from reflexdga.monoidal import (MonObject, direct_sum, dual_hom_iso_check, dual_object, eval_naturality_check,
                                graded_vect, hom, is_dualizable, is_projective, is_reflexive,
                                lax_associativity_check, modules_over, prop_equivalences_check, probe_set,
                                random_morphism, random_object, random_retract, retract_closure_check, selftest,
                                shift, tensor, triangle_check, unit_object)

GV = graded_vect()
MOD = modules_over()


def simple(amb):
    return MonObject(amb, (0,), {}, label="k")


def test_duals_in_graded_vect():
    assert dual_object(shift(GV, 3)).degrees == (-3,)
    x = direct_sum(shift(GV, -1), shift(GV, 2))
    assert sorted(dual_object(x).degrees) == [-2, 1]
    assert is_reflexive(x)[0] and is_dualizable(x)


def test_module_examples():
    r = unit_object(MOD)
    k = simple(MOD)
    assert dual_object(r).dim == 2 and dual_object(k).dim == 1
    assert is_reflexive(k)[0]
    assert not is_dualizable(k)
    assert is_dualizable(r) and is_projective(r)
    assert not is_projective(k) and not is_projective(direct_sum(r, k))


@pytest.mark.parametrize("make", [lambda: unit_object(MOD), lambda: simple(MOD),
                                  lambda: direct_sum(unit_object(MOD), simple(MOD)),
                                  lambda: direct_sum(shift(GV, 0), shift(GV, 1))])
def test_equivalences_on_fixed_objects(make):
    x = make()
    res = prop_equivalences_check(x, probe_set(x.ambient, random.Random(0)))
    assert res.agree, res.counterexample()
    if res.projective is not None:
        assert res.projective == res.passed


def test_tensor_with_unit():
    x = random_object(MOD, random.Random(5))
    assert tensor(unit_object(MOD), x).obj.dim == x.dim
    assert tensor(simple(MOD), simple(MOD)).obj.dim == 1


def test_hom_dimensions():
    r, k = unit_object(MOD), simple(MOD)
    assert hom(r, k).obj.dim == 1
    assert hom(k, r).obj.dim == 1
    assert hom(r, r).obj.dim == 2


def test_dual_hom_iso():
    assert dual_hom_iso_check(unit_object(MOD), simple(MOD))
    assert dual_hom_iso_check(shift(GV, 1), shift(GV, 2))


def test_retract_needs_a_splitting():
    x = shift(GV, 0)
    with pytest.raises(PreconditionError):
        retract_closure_check(x, SparseMatrix.zeros(1, 1, x.field), SparseMatrix.zeros(1, 1, x.field), x)


@pytest.mark.parametrize("seed", range(8))
def test_retracts(seed):
    rng = random.Random(seed)
    for amb in (GV, MOD):
        x, f, g, n = random_retract(amb, rng)
        assert retract_closure_check(x, f, g, n)


@pytest.mark.parametrize("seed", range(6))
def test_naturality_triangle_associativity(seed):
    rng = random.Random(100 + seed)
    for amb in (GV, MOD):
        x = random_object(amb, rng, 3)
        y = random_object(amb, rng, 3)
        f = random_morphism(x, y, rng)
        assert eval_naturality_check(f, x, y)
        assert triangle_check(x)
    x, y, z = (random_object(MOD, rng, 2) for _ in range(3))
    assert lax_associativity_check(x, y, z)


def test_invalid_objects_rejected():
    x_act = SparseMatrix.from_dense([[0, 1], [0, 0]])
    with pytest.raises(PreconditionError):
        MonObject(MOD, (0, 1), {MOD.others()[0]: x_act})
    with pytest.raises(PreconditionError):
        MonObject(MOD, (0, 0), {MOD.others()[0]: SparseMatrix.identity(2)})


def test_selftest_small_and_prime_field():
    assert selftest(seed=1, graded_trials=20, module_trials=10, retract_trials=10).ok
    assert selftest(seed=2, graded_trials=10, module_trials=5, retract_trials=5, field=FieldSpec.prime(3)).ok
