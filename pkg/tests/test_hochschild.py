import pytest

from reflexdga.catalogue import catalogue
from reflexdga.complexes import TruncationPolicy
from reflexdga.examples import a2_path_algebra, contractible, dual_numbers, ground_field, k_times_k, m2
from reflexdga.hochschild import cup_product, hh_cohomology, hh_homology
from reflexdga.io import read_document
from reflexdga.linalg import FieldSpec

from oracle import hh_cohomology_dims, hh_homology_dims

P3 = TruncationPolicy(3, (-10, 10))


def _by_degree(table):
    out = {}
    for (m, _), v in table.comparable().items():
        out[m] = out.get(m, 0) + v
    return out


def _algebras():
    return [pytest.param(read_document(e.path).algebra, id=e.name) for e in catalogue().entries]


@pytest.mark.parametrize("a", _algebras())
def test_euler_and_opposite(a):
    p = P3 if a.dim <= 4 else TruncationPolicy(2, (-10, 10))
    co = hh_cohomology(a, p)
    ho = hh_homology(a, p)
    assert co.euler_ok and ho.euler_ok
    assert hh_cohomology(a.opposite(), p).comparable() == co.comparable()
    assert hh_homology(a.opposite(), p).comparable() == ho.comparable()


def test_ground_field_and_products():
    assert hh_cohomology(ground_field(), P3).comparable() == {(0, 0): 1}
    assert _by_degree(hh_cohomology(k_times_k(), P3)) == {0: 2}
    assert _by_degree(hh_cohomology(a2_path_algebra(), P3)) == {0: 1}
    assert hh_cohomology(contractible(), P3).comparable() == {}


@pytest.mark.parametrize("base", [ground_field(), dual_numbers(0), dual_numbers(1)], ids=lambda a: a.label)
def test_morita_m2(base):
    p = TruncationPolicy(2, (-10, 10))
    assert hh_cohomology(m2(base), p).comparable() == hh_cohomology(base, p).comparable()


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_oracle_cohomology(N):
    t = hh_cohomology(dual_numbers(0), TruncationPolicy(N, (-10, 10)))
    # for |x| = 0 the table degree equals the weight
    assert _by_degree(t) == hh_cohomology_dims(N)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_oracle_homology(N):
    t = hh_homology(dual_numbers(0), TruncationPolicy(N, (-10, 10)))
    top = t.window.max_exact_weight
    ours = {-m: v for m, v in _by_degree(t).items()}
    assert ours == {m: v for m, v in hh_homology_dims(N).items() if m <= top}


def test_oracle_over_prime_field():
    F3 = FieldSpec.prime(3)
    t = hh_cohomology(dual_numbers(0, F3), TruncationPolicy(3, (-10, 10)))
    # the Q-values change in characteristic 2 only (2x = 0 there)
    assert _by_degree(t) == hh_cohomology_dims(3)


def test_dual_numbers_deg1_table():
    t = hh_cohomology(dual_numbers(1), TruncationPolicy(5, (-10, 10)))
    assert t.comparable() == {(m, n): 1 for m in (0, 1) for n in range(6)}
    assert t.stabilized


@pytest.mark.parametrize("a", [dual_numbers(0), dual_numbers(1), k_times_k()], ids=lambda a: a.label)
def test_cup_unital_associative(a):
    cup = cup_product(a, P3)
    assert cup.unital and cup.associative


def test_cup_on_diagonal_product():
    cup = cup_product(k_times_k(), P3)
    one, e = cup.classes_at(0, 0)
    assert cup.unit == {one: 1}
    # the second class is a nontrivial idempotent, so HH^0 = k x k
    assert cup.product(e, e) == {e: 1}
    assert cup.product(e, one) == cup.product(one, e) == {e: 1}
