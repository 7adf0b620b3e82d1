import pytest

from reflexdga.algebra import cone_of_identity, free_module, semisimple_module
from reflexdga.complexes import TruncationPolicy
from reflexdga.errors import PreconditionError
from reflexdga.examples import (a2_path_algebra, contractible, dual_numbers, gaussian_rationals, ground_field,
                                k_times_k)
from reflexdga.koszul import (derived_tensor_k_k, koszul_dual, perfectness_probe, poly_t_truncated, polynomial_hh,
                              reflexivity_report)

P4 = TruncationPolicy(4)


def test_koszul_dual_of_dual_numbers_is_polynomial():
    ext = koszul_dual(dual_numbers(0), P4)
    assert ext.dims_by_degree() == {n: 1 for n in range(5)}
    assert ext.polynomial_pattern() == 1
    assert koszul_dual(dual_numbers(1), P4).polynomial_pattern() == 0


def test_koszul_dual_finite_cases():
    ext = koszul_dual(a2_path_algebra(), P4)
    assert ext.dims_by_degree() == {0: 2, 1: 1}
    assert ext.finite_vanishing_weight() == 2
    assert koszul_dual(ground_field(), P4).dims_by_degree() == {0: 1}
    assert koszul_dual(k_times_k(), P4).dims_by_degree() == {0: 2}
    assert koszul_dual(contractible(), P4).dims() == {}


def test_tor_methods_agree():
    bar = derived_tensor_k_k(dual_numbers(1), P4, method="bar")
    shift = derived_tensor_k_k(dual_numbers(1), P4)
    assert shift.method == "shift_totalization"
    assert shift.dims_by_index == {i: 1 for i in range(-4, 1)}
    # the bar side is exact one weight lower
    assert bar.dims_by_index == {i: 1 for i in range(-3, 1)}
    assert derived_tensor_k_k(ground_field(), P4).dims_by_index == {0: 1}


def test_tor_needs_local_quotient():
    with pytest.raises(PreconditionError):
        derived_tensor_k_k(a2_path_algebra(), P4)
    with pytest.raises(ValueError):
        derived_tensor_k_k(dual_numbers(1), P4, method="magic")


def test_perfectness_probe():
    p = TruncationPolicy(6)
    assert perfectness_probe(free_module(dual_numbers(1)), p).verdict == "perfect_within_cutoff"
    assert perfectness_probe(cone_of_identity(free_module(dual_numbers(0))), p).verdict == "perfect_within_cutoff"
    assert perfectness_probe(semisimple_module(dual_numbers(0)), p).verdict == "not_perfect_within_cutoff"


def test_polynomial_hh():
    poly = polynomial_hh(5)
    assert poly.dims_by_degree_and_weight() == {(m, n): 1 for m in (0, 1) for n in range(6)}
    assert all(poly.t_multiplication_iso.values())
    assert poly_t_truncated(4).declared_top_degree == 4
    with pytest.raises(PreconditionError):
        poly_t_truncated(4, degree=0)


@pytest.mark.parametrize("a", [ground_field(), contractible(), dual_numbers(0), dual_numbers(1), a2_path_algebra()],
                         ids=lambda a: a.label)
def test_reflexive_examples(a):
    rep = reflexivity_report(a, P4)
    assert rep.verdict == "reflexive" and rep.positive()


def test_inseparable_quotient_is_inconclusive():
    rep = reflexivity_report(gaussian_rationals(), P4)
    assert rep.verdict == "inconclusive"
    assert rep.evidence[0].status == "inconclusive"
