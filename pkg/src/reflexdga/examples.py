"""Constructors for the small algebras used throughout the package and tests."""

from __future__ import annotations

from .algebra import DGAlgebra, DGModule, cone, free_module, matrix_algebra_inflation
from .linalg import QQ, FieldSpec


def ground_field(field: FieldSpec = QQ) -> DGAlgebra:
    return DGAlgebra.from_tables([("1", 0)], "1", field=field, label="k")


def dual_numbers(degree: int = 0, field: FieldSpec = QQ) -> DGAlgebra:
    """k[x]/x^2 with |x| = degree and zero differential."""
    return DGAlgebra.from_tables([("1", 0), ("x", degree)], "1", {("x", "x"): {}}, field=field,
                                 label=f"dual_numbers_deg{degree}")


def contractible(field: FieldSpec = QQ) -> DGAlgebra:
    """Basis {1, u}, |u| = -1, u^2 = 0, d(u) = 1."""
    return DGAlgebra.from_tables([("1", 0), ("u", -1)], "1", {}, {"u": {"1": 1}}, field=field,
                                 label="contractible")


def k_times_k(field: FieldSpec = QQ) -> DGAlgebra:
    """k x k on the basis {1, e} with e^2 = e."""
    return DGAlgebra.from_tables([("1", 0), ("e", 0)], "1", {("e", "e"): {"e": 1}}, field=field,
                                 label="k_times_k")


def a2_path_algebra(field: FieldSpec = QQ) -> DGAlgebra:
    """Upper triangular 2x2 matrices on the basis {1, e11, e12}."""
    mult = {
        ("e11", "e11"): {"e11": 1},
        ("e11", "e12"): {"e12": 1},
        ("e12", "e11"): {},
        ("e12", "e12"): {},
    }
    return DGAlgebra.from_tables([("1", 0), ("e11", 0), ("e12", 0)], "1", mult, field=field,
                                 label="a2_path_algebra")


def truncated_polynomial(top: int, degree: int = 1, field: FieldSpec = QQ) -> DGAlgebra:
    """k[t]/t^(top+1) with |t| = degree: the degree-truncated presentation of k[t]."""
    names = ["1"] + [f"t{i}" for i in range(1, top + 1)]
    basis = [(n, i * degree) for i, n in enumerate(names)]
    mult = {}
    for i in range(1, top + 1):
        for j in range(1, top + 1):
            mult[(names[i], names[j])] = {names[i + j]: 1} if i + j <= top else {}
    return DGAlgebra.from_tables(basis, "1", mult, field=field, label=f"poly_t_deg{degree}_truncated")


def gaussian_rationals() -> DGAlgebra:
    """Q[i]/(i^2 + 1), a non-split semisimple Q-algebra."""
    return DGAlgebra.from_tables([("1", 0), ("i", 0)], "1", {("i", "i"): {"1": -1}}, field=QQ,
                                 label="gaussian_rationals")


def m2(a: DGAlgebra) -> DGAlgebra:
    return matrix_algebra_inflation(a, 2).with_unit_basis()


def ground_module(a: DGAlgebra) -> DGModule:
    """The simple module k = A / (non-unit basis) for an augmented local algebra."""
    u = a.unit_index()
    F = a.field
    action = {(u, 0): {0: F.one}}
    return DGModule(a, ("k",), (0,), action, {}, "k")


def multiplication_cone(a: DGAlgebra, name: str = "x") -> DGModule:
    """Cone of right multiplication by a basis element on the free module."""
    x = a.index(name)
    F = a.field
    A = free_module(a)
    f = {j: a.mul({j: F.one}, {x: F.one}) for j in range(a.dim)}
    return cone(f, A, A, a.degrees[x])
