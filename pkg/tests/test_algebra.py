import pytest

from reflexdga.algebra import (DGAlgebra, cohomology_dims, cone_of_identity, direct_product, free_module, j_plus,
                               radical, semisimple_quotient, separability_check, validate_dga)
from reflexdga.catalogue import catalogue
from reflexdga.examples import (a2_path_algebra, contractible, dual_numbers, gaussian_rationals, ground_field,
                                k_times_k, m2)
from reflexdga.io import read_document
from reflexdga.linalg import FieldSpec


def test_validate_examples():
    assert validate_dga(dual_numbers(1)).ok
    assert validate_dga(contractible()).ok
    bad = DGAlgebra.from_tables([("1", 0), ("x", 1)], "1", {("x", "x"): {}}, {"x": {"x": 1}})
    rep = validate_dga(bad)
    assert not rep.ok
    assert any("degree" in v.message for v in rep.violations)


def test_cohomology_examples():
    assert cohomology_dims(dual_numbers(1)) == {0: 1, 1: 1}
    assert cohomology_dims(contractible()) == {}
    assert cohomology_dims(k_times_k()) == {0: 2}


def _span_names(ideal):
    a = ideal.algebra
    return sorted(a.names[i] for v in ideal.basis for i in v)


def test_radical_examples():
    for F in (FieldSpec(0), FieldSpec.prime(5)):
        assert _span_names(radical(dual_numbers(0, F))) == ["x"]
    assert _span_names(radical(a2_path_algebra())) == ["e12"]
    assert radical(k_times_k()).dim == 0


def test_j_plus_examples():
    assert _span_names(j_plus(dual_numbers(0))) == ["x"]
    assert j_plus(contractible()).dim == 2
    assert _span_names(j_plus(a2_path_algebra())) == ["e12"]


def test_semisimple_quotient_examples():
    q = semisimple_quotient(dual_numbers(1))
    assert q.dim == 1 and q.degrees == (0,)
    assert semisimple_quotient(contractible()).dim == 0
    q = semisimple_quotient(a2_path_algebra())
    assert q.dim == 2 and radical(q).dim == 0
    assert separability_check(q) == "separable"


def test_separability_examples():
    assert separability_check(ground_field()) == "separable"
    assert separability_check(k_times_k()) == "separable"
    assert separability_check(gaussian_rationals()) == "unknown"


@pytest.mark.parametrize("name", catalogue().names())
def test_catalogue_properties(name):
    a = read_document([e for e in catalogue().entries if e.name == name][0].path).algebra
    assert validate_dga(a).ok
    assert validate_dga(a.opposite()).ok
    r = radical(a)
    assert r.is_nilpotent()
    assert radical(semisimple_quotient(a)).dim == 0


def test_radical_of_product():
    a, b = dual_numbers(0), a2_path_algebra()
    assert radical(direct_product(a, b)).dim == radical(a).dim + radical(b).dim


def test_cone_of_identity_acyclic():
    for a in (dual_numbers(1), a2_path_algebra(), m2(ground_field())):
        assert cohomology_dims(cone_of_identity(free_module(a))) == {}
