import pytest

from reflexdga.algebra import free_module, semisimple_module
from reflexdga.complexes import TruncationPolicy
from reflexdga.errors import PreconditionError
from reflexdga.examples import a2_path_algebra, dual_numbers, ground_field, k_times_k
from reflexdga.resolutions import (bar_resolution, bimodule_bar_resolution, shift_totalization_resolution,
                                   t_action)


def test_bar_resolution_of_k_over_dual_numbers():
    res = bar_resolution(semisimple_module(dual_numbers(1)), TruncationPolicy(6))
    assert set(res.term_dims().values()) == {2}
    assert res.homology_by_degree() == {0: 1}
    assert res.is_resolution()


@pytest.mark.parametrize("a", [dual_numbers(0), dual_numbers(1), a2_path_algebra(), k_times_k()],
                         ids=lambda a: a.label)
def test_normalized_and_unnormalized_agree(a):
    m = semisimple_module(a)
    p = TruncationPolicy(3)
    norm = bar_resolution(m, p)
    raw = bar_resolution(m, p, normalized=False)
    assert norm.homology_by_degree() == raw.homology_by_degree()
    assert norm.is_resolution() and raw.is_resolution()
    assert sum(raw.term_dims().values()) >= sum(norm.term_dims().values())


def test_free_module_resolution():
    res = bar_resolution(free_module(dual_numbers(1)), TruncationPolicy(4))
    assert res.is_resolution()
    assert res.homology_by_degree() == {0: 1, 1: 1}


def test_bimodule_bar():
    res = bimodule_bar_resolution(dual_numbers(0), TruncationPolicy(3))
    assert set(res.term_dims().values()) == {4}
    assert res.is_resolution()
    assert bimodule_bar_resolution(ground_field(), TruncationPolicy(3)).is_resolution()


def test_shift_totalization():
    N = 8
    res = shift_totalization_resolution(dual_numbers(1), TruncationPolicy(N))
    assert len(res.term_dims()) == N + 1
    assert res.is_resolution()
    bar = bar_resolution(semisimple_module(dual_numbers(1)), TruncationPolicy(N))
    assert res.homology_by_degree() == bar.homology_by_degree() == {0: 1}
    t = t_action(res)
    assert all(dst[1] == src[1] - 1 for src, dst in t.items())


def test_shift_totalization_rejects_other_algebras():
    with pytest.raises(PreconditionError):
        shift_totalization_resolution(dual_numbers(0), TruncationPolicy(3))
