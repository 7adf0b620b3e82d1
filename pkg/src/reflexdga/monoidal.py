"""Reflexive and dualizable objects in two small closed symmetric monoidal categories.

The ambient category is graded modules over a commutative algebra ``R``
concentrated in degree 0 with zero differential.  ``R = k`` gives graded vector
spaces; ``R = k[x]/x^2`` gives a category with reflexive objects that are not
dualizable.  Objects carry a homogeneous basis; morphisms are degree-0 matrices
commuting with the action.  Tensor products are quotients of ``x (x)_k y`` and
internal homs are subspaces of ``Hom_k(x, y)``, both with deterministic bases,
so every canonical map is an explicit matrix.

Koszul signs: ``(phi (x) y)(m) = (-1)^{|y||m|} phi(m) y`` and
``(phi (x) psi)(m (x) n) = (-1)^{|psi||m|} phi(m) psi(n)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import DGAlgebra, require_valid
from .errors import InvariantViolation, PreconditionError
from .examples import dual_numbers, ground_field
from .linalg import (Echelon, FieldSpec, QQ, SparseMatrix, Vector, is_invertible, kernel_basis, solve,
                     vec_iadd, vec_scale)

__all__ = ["Ambient", "MonObject", "CanonicalMaps", "graded_vect", "modules_over",
           "unit_object", "direct_sum", "shift", "tensor", "hom", "dual_object", "dual_map",
           "canonical_maps", "eval_map", "epsilon_map", "mu_map", "nu_map", "find_coevaluation",
           "is_reflexive", "is_dualizable", "is_projective", "is_morphism", "EquivalenceResult",
           "probe_set", "prop_equivalences_check", "retract_closure_check", "dual_hom_iso_check",
           "eval_naturality_check", "triangle_check", "lax_associativity_check",
           "random_object", "random_morphism", "random_retract", "SelftestReport", "selftest"]


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


# -- ambient categories ----------------------------------------------------------

@dataclass(frozen=True)
class Ambient:
    ring: DGAlgebra
    name: str

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def unit_index(self) -> int:
        return self.ring.unit_index()

    def others(self) -> List[int]:
        """Non-unit basis elements of R; acting by these is all R-linearity asks."""
        u = self.unit_index
        return [i for i in range(self.ring.dim) if i != u]


def graded_vect(field: FieldSpec = QQ) -> Ambient:
    return Ambient(ground_field(field), "GradedVect")


def modules_over(ring: Optional[DGAlgebra] = None) -> Ambient:
    """Modules over ``ring`` (default: k[x]/x^2 with |x| = 0)."""
    r = ring if ring is not None else dual_numbers(0)
    require_valid(r)
    if r.unit_index() is None:
        raise PreconditionError("the ring needs its unit as a basis element")
    if any(r.degrees) or r.diff:
        raise PreconditionError("the ring must sit in degree 0 with zero differential")
    for i in range(r.dim):
        for j in range(r.dim):
            if r.mult.get((i, j), {}) != r.mult.get((j, i), {}):
                raise PreconditionError("the ring must be commutative")
    return Ambient(r, f"ModulesOver({r.label or 'R'})")


@dataclass(eq=False)
class MonObject:
    """A finite-dimensional graded R-module; ``action[i]`` is the matrix of the i-th ring basis element."""

    ambient: Ambient
    degrees: Tuple[int, ...]
    action: Dict[int, SparseMatrix] = dc_field(default_factory=dict)
    label: str = ""
    _cache: Dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.degrees = tuple(int(d) for d in self.degrees)
        n = len(self.degrees)
        F = self.ambient.field
        for i in self.ambient.others():
            m = self.action.get(i, SparseMatrix.zeros(n, n, F))
            if m.shape != (n, n):
                raise PreconditionError("action matrix has the wrong shape")
            for (r, c) in m.entries:
                if self.degrees[r] != self.degrees[c]:
                    raise PreconditionError("the action must preserve degrees")
            self.action[i] = m
        R = self.ambient.ring
        for i in self.ambient.others():
            for j in self.ambient.others():
                lhs = self.action[i] @ self.action[j]
                rhs = self.act_vec(R.mul({i: F.one}, {j: F.one}))
                if lhs != rhs:
                    raise PreconditionError("the action is not associative")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def field(self) -> FieldSpec:
        return self.ambient.field

    def act(self, i: int) -> SparseMatrix:
        if i == self.ambient.unit_index:
            return SparseMatrix.identity(self.dim, self.field)
        return self.action[i]

    def act_vec(self, r: Vector) -> SparseMatrix:
        out = SparseMatrix.zeros(self.dim, self.dim, self.field)
        for i, c in r.items():
            out = out + self.act(i).scale(c)
        return out

    def __repr__(self) -> str:
        return f"MonObject({self.label or '?'}, dim={self.dim}, degrees={self.degrees})"


def unit_object(amb: Ambient) -> MonObject:
    R = amb.ring
    F = amb.field
    action = {i: R.left_mult_matrix({i: F.one}) for i in amb.others()}
    return MonObject(amb, tuple(R.degrees), action, "1")


def shift(amb: Ambient, degree: int) -> MonObject:
    """The ground field k (R acting through R/J) placed in one degree."""
    F = amb.field
    return MonObject(amb, (degree,), {i: SparseMatrix.zeros(1, 1, F) for i in amb.others()}, f"k[{degree}]")


def _block_diag(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    ent = dict(a.entries)
    for (r, c), v in b.entries.items():
        ent[(r + a.rows, c + a.cols)] = v
    return SparseMatrix(a.rows + b.rows, a.cols + b.cols, ent, a.field)


def direct_sum(x: MonObject, y: MonObject) -> MonObject:
    action = {i: _block_diag(x.act(i), y.act(i)) for i in x.ambient.others()}
    return MonObject(x.ambient, x.degrees + y.degrees, action, f"({x.label}+{y.label})")


def conjugate(x: MonObject, p: SparseMatrix) -> MonObject:
    """Same module in the basis given by the (degree-preserving, invertible) columns of ``p``."""
    from .linalg import inverse
    pi = inverse(p)
    action = {i: pi @ x.act(i) @ p for i in x.ambient.others()}
    return MonObject(x.ambient, x.degrees, action, x.label)


def is_morphism(f: SparseMatrix, x: MonObject, y: MonObject) -> bool:
    if f.shape != (y.dim, x.dim):
        return False
    if any(y.degrees[r] != x.degrees[c] for (r, c) in f.entries):
        return False
    return all(y.act(i) @ f == f @ x.act(i) for i in x.ambient.others())


# -- tensor and hom ----------------------------------------------------------------

@dataclass(eq=False)
class TensorObject:
    """``x (x)_R y`` as a quotient of ``x (x)_k y`` (pair ``(i, j)`` has index ``i * dim y + j``)."""

    obj: MonObject
    left: MonObject
    right: MonObject
    relations: Echelon
    basis: List[int]  # surviving pair indices, one per quotient basis element

    def pair(self, i: int, j: int) -> int:
        return i * self.right.dim + j

    def lift(self, q: int) -> Tuple[int, int]:
        return divmod(self.basis[q], self.right.dim)

    def project(self, v: Vector) -> Vector:
        rem, _ = self.relations.reduce(v)
        pos = self.__dict__.setdefault("_pos", {p: q for q, p in enumerate(self.basis)})
        return {pos[p]: c for p, c in rem.items()}

    def project_pair(self, i: int, j: int) -> Vector:
        return self.project({self.pair(i, j): self.obj.field.one})


def tensor(x: MonObject, y: MonObject) -> TensorObject:
    key = ("tensor", id(y))
    hit = x._cache.get(key)
    if hit is not None and hit[0] is y:
        return hit[1]
    amb = x.ambient
    F = amb.field
    ny = y.dim
    ech = Echelon(F)
    for r in amb.others():
        xr, yr = x.act(r), y.act(r)
        for i in range(x.dim):
            for j in range(ny):
                v: Vector = {}
                for (a, c), val in xr.entries.items():
                    if c == i:
                        vec_iadd(F, v, {a * ny + j: val})
                for (b, c), val in yr.entries.items():
                    if c == j:
                        vec_iadd(F, v, {i * ny + b: F.neg(val)})
                if v:
                    ech.add(v)
    basis = [p for p in range(x.dim * ny) if p not in ech.pivots]
    degrees = tuple(x.degrees[p // ny] + y.degrees[p % ny] for p in basis) if ny else ()
    t = TensorObject(None, x, y, ech, basis)
    pos = {p: q for q, p in enumerate(basis)}
    action = {}
    for r in amb.others():
        cols = []
        xr = x.act(r)
        for p in basis:
            i, j = divmod(p, ny)
            v: Vector = {}
            for (a, c), val in xr.entries.items():
                if c == i:
                    vec_iadd(F, v, {a * ny + j: val})
            rem, _ = ech.reduce(v)
            cols.append({pos[k]: c for k, c in rem.items()})
        action[r] = SparseMatrix.from_columns(cols, len(basis), F)
    t.obj = MonObject(amb, degrees, action, f"{x.label}*{y.label}")
    x._cache[key] = (y, t)
    return t


@dataclass(eq=False)
class HomObject:
    """R-linear maps ``x -> y`` of every degree; ``maps[k]`` is a ``dim y x dim x`` matrix."""

    obj: MonObject
    source: MonObject
    target: MonObject
    maps: List[SparseMatrix]
    echelon: Echelon

    def flatten(self, m: SparseMatrix) -> Vector:
        return {r * self.source.dim + c: v for (r, c), v in m.entries.items()}

    def coordinates(self, m: SparseMatrix) -> Vector:
        F = self.echelon.field
        rem, tag = self.echelon.reduce(self.flatten(m))
        if rem:
            raise InvariantViolation("matrix is not an R-linear map between these objects")
        return vec_scale(F, tag, F.neg(F.one))

    def element(self, v: Vector) -> SparseMatrix:
        F = self.echelon.field
        out = SparseMatrix.zeros(self.target.dim, self.source.dim, F)
        for k, c in v.items():
            out = out + self.maps[k].scale(c)
        return out


def hom(x: MonObject, y: MonObject) -> HomObject:
    key = ("hom", id(y))
    hit = x._cache.get(key)
    if hit is not None and hit[0] is y:
        return hit[1]
    amb = x.ambient
    F = amb.field
    nx, ny = x.dim, y.dim
    by_degree: Dict[int, List[Tuple[int, int]]] = {}
    for a in range(ny):
        for b in range(nx):
            by_degree.setdefault(y.degrees[a] - x.degrees[b], []).append((a, b))
    maps: List[SparseMatrix] = []
    degrees: List[int] = []
    for d in sorted(by_degree):
        var = by_degree[d]
        # rows: (r, a, b) entries of y_r F - F x_r
        rows: Dict[Tuple[int, int, int], Vector] = {}
        for r in amb.others():
            yr, xr = y.act(r), x.act(r)
            for k, (c, b) in enumerate(var):
                for (a, cc), val in yr.entries.items():
                    if cc == c:
                        vec_iadd(F, rows.setdefault((r, a, b), {}), {k: val})
                for (bb, b2), val in xr.entries.items():
                    if bb == b:
                        vec_iadd(F, rows.setdefault((r, c, b2), {}), {k: F.neg(val)})
        mat = SparseMatrix.from_rows([v for v in rows.values()], len(var), F) if rows else \
            SparseMatrix.zeros(0, len(var), F)
        for v in kernel_basis(mat):
            maps.append(SparseMatrix(ny, nx, {var[k]: c for k, c in v.items()}, F))
            degrees.append(d)
    ech = Echelon(F)
    for k, m in enumerate(maps):
        ech.add({r * nx + c: v for (r, c), v in m.entries.items()}, {k: F.one})
    h = HomObject(None, x, y, maps, ech)
    action = {r: SparseMatrix.from_columns([h.coordinates(y.act(r) @ m) for m in maps], len(maps), F)
              for r in amb.others()}
    h.obj = MonObject(amb, tuple(degrees), action, f"hom({x.label},{y.label})")
    x._cache[key] = (y, h)
    return h


def _unit(amb: Ambient) -> MonObject:
    key = ("unit", amb)
    obj = _UNITS.get(key)
    if obj is None:
        obj = _UNITS[key] = unit_object(amb)
    return obj


_UNITS: Dict = {}


def dual_hom(x: MonObject) -> HomObject:
    return hom(x, _unit(x.ambient))


def dual_object(x: MonObject) -> MonObject:
    """``Dx = hom(x, 1)``: the graded dual (degrees negated) or ``Hom_R(x, R)``."""
    d = dual_hom(x).obj
    d.label = f"D{x.label}"
    return d


def dual_map(f: SparseMatrix, x: MonObject, y: MonObject) -> SparseMatrix:
    """``Df : Dy -> Dx``, ``psi |-> psi o f`` for a degree-0 morphism ``f``."""
    dx, dy = dual_hom(x), dual_hom(y)
    cols = [dx.coordinates(psi @ f) for psi in dy.maps]
    return SparseMatrix.from_columns(cols, len(dx.maps), x.field)


# -- canonical maps ------------------------------------------------------------------

def _value(phi: SparseMatrix, i: int) -> Vector:
    """phi(e_i) as an element of R."""
    return {r: v for (r, c), v in phi.entries.items() if c == i}


def eval_map(x: MonObject) -> SparseMatrix:
    """``eval_x : x -> DDx``, ``m |-> (phi |-> (-1)^{|phi||m|} phi(m))``."""
    F = x.field
    dx = dual_hom(x)
    ddx = dual_hom(dx.obj)
    cols = []
    for i in range(x.dim):
        ent = {}
        for j, phi in enumerate(dx.maps):
            s = _sgn(dx.obj.degrees[j] * x.degrees[i])
            for r, v in _value(phi, i).items():
                ent[(r, j)] = v if s > 0 else F.neg(v)
        cols.append(ddx.coordinates(SparseMatrix(ddx.target.dim, dx.obj.dim, ent, F)))
    return SparseMatrix.from_columns(cols, ddx.obj.dim, F)


def epsilon_map(x: MonObject) -> SparseMatrix:
    """``epsilon_x : Dx (x) x -> 1``, ``phi (x) m |-> phi(m)``."""
    dx = dual_hom(x)
    t = tensor(dx.obj, x)
    cols = []
    for q in range(t.obj.dim):
        j, i = t.lift(q)
        cols.append(_value(dx.maps[j], i))
    return SparseMatrix.from_columns(cols, x.ambient.ring.dim, x.field)


def nu_map(x: MonObject, y: MonObject) -> SparseMatrix:
    """``nu_{x,y} : Dx (x) y -> hom(x, y)``, ``phi (x) n |-> (m |-> (-1)^{|n||m|} phi(m) n)``."""
    F = x.field
    dx = dual_hom(x)
    h = hom(x, y)
    t = tensor(dx.obj, y)
    cols = []
    for q in range(t.obj.dim):
        j, n = t.lift(q)
        m = SparseMatrix.zeros(y.dim, x.dim, F)
        ent: Dict[Tuple[int, int], object] = {}
        for i in range(x.dim):
            s = _sgn(y.degrees[n] * x.degrees[i])
            col: Vector = {}
            for r, v in _value(dx.maps[j], i).items():
                vec_iadd(F, col, y.act(r).apply({n: F.one}), v if s > 0 else F.neg(v))
            for a, v in col.items():
                ent[(a, i)] = v
        m = SparseMatrix(y.dim, x.dim, ent, F)
        cols.append(h.coordinates(m))
    return SparseMatrix.from_columns(cols, h.obj.dim, F)


def mu_map(x: MonObject, y: MonObject) -> SparseMatrix:
    """``mu_{x,y} : Dx (x) Dy -> D(x (x) y)``, ``phi (x) psi |-> (-1)^{|psi||m|} phi(m) psi(n)``."""
    F = x.field
    R = x.ambient.ring
    dx, dy = dual_hom(x), dual_hom(y)
    xy = tensor(x, y)
    dxy = dual_hom(xy.obj)
    t = tensor(dx.obj, dy.obj)
    cols = []
    for q in range(t.obj.dim):
        j, l = t.lift(q)
        ent = {}
        for p in range(xy.obj.dim):
            i, n = xy.lift(p)
            s = _sgn(dy.obj.degrees[l] * x.degrees[i])
            val = R.mul(_value(dx.maps[j], i), _value(dy.maps[l], n))
            for r, v in val.items():
                ent[(r, p)] = v if s > 0 else F.neg(v)
        cols.append(dxy.coordinates(SparseMatrix(R.dim, xy.obj.dim, ent, F)))
    return SparseMatrix.from_columns(cols, dxy.obj.dim, F)


def find_coevaluation(x: MonObject) -> Optional[Vector]:
    """A degree-0 ``c`` in ``x (x) Dx`` satisfying both snake identities, or None.

    The identities are linear in ``c``, so this is one exact linear solve:
    ``m |-> sum c_ab phi_b(m) x_a`` must be the identity of ``x`` and
    ``psi |-> sum c_ab psi(x_a) phi_b`` the identity of ``Dx``.
    """
    F = x.field
    dx = dual_hom(x)
    t = tensor(x, dx.obj)
    unknowns = [q for q in range(t.obj.dim) if t.obj.degrees[q] == 0]
    n, nd = x.dim, dx.obj.dim
    cols = []
    for q in unknowns:
        a, b = t.lift(q)
        col: Vector = {}
        for i in range(n):  # first identity, entry (., i)
            for r, v in _value(dx.maps[b], i).items():
                for row, w in x.act(r).apply({a: F.one}).items():
                    vec_iadd(F, col, {row * n + i: F.mul(v, w)})
        for l in range(nd):  # second identity, entry (., l)
            for r, v in _value(dx.maps[l], a).items():
                for row, w in dx.obj.act(r).apply({b: F.one}).items():
                    vec_iadd(F, col, {n * n + row * nd + l: F.mul(v, w)})
        cols.append(col)
    rhs: Vector = {i * n + i: F.one for i in range(n)}
    rhs.update({n * n + l * nd + l: F.one for l in range(nd)})
    mat = SparseMatrix.from_columns(cols, n * n + nd * nd, F)
    sol = solve(mat, rhs)
    if sol is None:
        return None
    return {unknowns[k]: c for k, c in sol.items()}


@dataclass
class CanonicalMaps:
    eval_x: SparseMatrix
    epsilon_x: SparseMatrix
    mu_xy: SparseMatrix
    nu_xy: SparseMatrix
    coeval: Optional[Vector]


def canonical_maps(x: MonObject, y: Optional[MonObject] = None) -> CanonicalMaps:
    y = x if y is None else y
    return CanonicalMaps(eval_map(x), epsilon_map(x), mu_map(x, y), nu_map(x, y), find_coevaluation(x))


def is_reflexive(x: MonObject) -> Tuple[bool, SparseMatrix]:
    """True iff ``eval_x`` is invertible; the matrix is returned as witness either way."""
    w = eval_map(x)
    return is_invertible(w), w


def is_dualizable(x: MonObject) -> bool:
    return is_invertible(nu_map(x, x))


def is_projective(x: MonObject) -> bool:
    """Independent projectivity test for a local ring R (R/J = k, J spanned by the non-unit basis).

    Over a local ring the only idempotents of R lift to 0 and 1, so projective
    means free: lift a basis of ``x / Jx`` to generators and check that the
    induced map ``R^r -> x`` is an isomorphism.
    """
    amb = x.ambient
    F = x.field
    R = amb.ring
    jx = Echelon(F)
    for r in amb.others():
        for v in x.act(r).col_dicts():
            if v:
                jx.add(v)
    gens = []
    for i in range(x.dim):
        if jx.add({i: F.one}):
            gens.append(i)
    cols = []
    for g in gens:
        for s in range(R.dim):
            cols.append(x.act(s).apply({g: F.one}))
    cover = SparseMatrix.from_columns(cols, x.dim, F)
    return is_invertible(cover)


# -- the six conditions ----------------------------------------------------------------

def probe_set(amb: Ambient, rng: Optional[random.Random] = None, extra: int = 2) -> List[MonObject]:
    """Simples and the free module, plus ``extra`` random objects.

    nu and mu are additive in y and every object here is a finite sum of
    indecomposables among {k[d], R[d]}, so this finite set decides (3) and (4).
    """
    probes = [shift(amb, d) for d in (-1, 0, 1)]
    if amb.others():
        probes.append(unit_object(amb))
    rng = rng or random.Random(0)
    for _ in range(extra):
        probes.append(random_object(amb, rng, max_dim=3))
    return probes


@dataclass
class EquivalenceResult:
    obj: MonObject
    conditions: Tuple[bool, bool, bool, bool, bool, bool]
    projective: Optional[bool] = None
    failing_probe: Dict[int, str] = dc_field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return len(set(self.conditions)) == 1

    @property
    def passed(self) -> bool:
        return self.agree and self.conditions[0]

    def counterexample(self) -> str:
        return (f"{self.obj!r}: conditions {['T' if c else 'F' for c in self.conditions]}, "
                f"action {{{', '.join(f'{i}: {m.to_dense()}' for i, m in self.obj.action.items())}}}")


def prop_equivalences_check(x: MonObject, probes: Optional[Sequence[MonObject]] = None) -> EquivalenceResult:
    """Evaluate the six equivalent characterizations of dualizability on ``x``."""
    probes = list(probes) if probes is not None else probe_set(x.ambient)
    refl, _ = is_reflexive(x)
    dx = dual_object(x)
    c1 = is_invertible(nu_map(x, x))
    c2 = find_coevaluation(x) is not None
    failing = {}
    c3 = True
    for y in probes:
        if not is_invertible(nu_map(x, y)):
            c3, failing[3] = False, y.label
            break
    c4 = refl
    if c4:
        for y in probes:
            if not is_invertible(mu_map(x, y)):
                c4, failing[4] = False, y.label
                break
    c5 = refl and is_invertible(mu_map(x, dx))
    c6 = refl and is_dualizable(dx)
    proj = is_projective(x) if x.ambient.others() else None
    return EquivalenceResult(x, (c1, c2, c3, c4, c5, c6), proj, failing)


def retract_closure_check(x: MonObject, f: SparseMatrix, g: SparseMatrix, n: MonObject) -> bool:
    """For a retraction ``g o f = id_x`` check that reflexivity and dualizability pass from n to x."""
    if not (is_morphism(f, x, n) and is_morphism(g, n, x)):
        raise PreconditionError("f and g must be morphisms x -> n and n -> x")
    if g @ f != SparseMatrix.identity(x.dim, x.field):
        raise PreconditionError("g o f is not the identity: not a retract")
    ok = True
    if is_reflexive(n)[0]:
        ok &= is_reflexive(x)[0]
    if is_dualizable(n):
        ok &= is_dualizable(x)
    return ok


def dual_hom_iso_check(x: MonObject, y: MonObject) -> bool:
    """For reflexive y, ``D : hom(x, y) -> hom(Dy, Dx)`` is an isomorphism."""
    if not is_reflexive(y)[0]:
        raise PreconditionError("y must be reflexive")
    F = x.field
    h = hom(x, y)
    dx, dy = dual_hom(x), dual_hom(y)
    hd = hom(dy.obj, dx.obj)
    cols = []
    for k, f in enumerate(h.maps):
        fdeg = h.obj.degrees[k]
        ccols = []
        for l, psi in enumerate(dy.maps):
            v = dx.coordinates(psi @ f)
            ccols.append(vec_scale(F, v, _sgn(fdeg * dy.obj.degrees[l])))
        cols.append(hd.coordinates(SparseMatrix.from_columns(ccols, dx.obj.dim, F)))
    return is_invertible(SparseMatrix.from_columns(cols, hd.obj.dim, F))


# -- structural identities ----------------------------------------------------------------

def eval_naturality_check(f: SparseMatrix, x: MonObject, y: MonObject) -> bool:
    """``DDf o eval_x == eval_y o f``."""
    dx, dy = dual_object(x), dual_object(y)
    df = dual_map(f, x, y)
    ddf = dual_map(df, dy, dx)
    return ddf @ eval_map(x) == eval_map(y) @ f


def triangle_check(x: MonObject) -> bool:
    """``D(eval_x) o eval_{Dx} == id_{Dx}`` (the triangle identity of the self-adjunction)."""
    dx = dual_object(x)
    ddx = dual_object(dx)
    lhs = dual_map(eval_map(x), x, ddx) @ eval_map(dx)
    return lhs == SparseMatrix.identity(dx.dim, x.field)


def lax_associativity_check(x: MonObject, y: MonObject, z: MonObject) -> bool:
    """Both ways of building ``Dx (x) Dy (x) Dz -> D(x (x) y (x) z)`` from mu agree.

    The two results are compared as functionals on every basis triple
    ``m (x) n (x) o``, which absorbs the associator.
    """
    F = x.field
    dx, dy, dz = dual_hom(x), dual_hom(y), dual_hom(z)
    xy, yz = tensor(x, y), tensor(y, z)
    xy_z, x_yz = tensor(xy.obj, z), tensor(x, yz.obj)
    d_xy, d_yz = dual_hom(xy.obj), dual_hom(yz.obj)
    d_xy_z, d_x_yz = dual_hom(xy_z.obj), dual_hom(x_yz.obj)
    mu_xy, mu_yz = mu_map(x, y), mu_map(y, z)
    mu_l, mu_r = mu_map(xy.obj, z), mu_map(x, yz.obj)
    t_dxdy, t_dydz = tensor(dx.obj, dy.obj), tensor(dy.obj, dz.obj)
    t_l, t_r = tensor(d_xy.obj, dz.obj), tensor(dx.obj, d_yz.obj)

    def embed(t: TensorObject, u: Vector, s: int, left_vec: bool) -> Vector:
        out: Vector = {}
        for k, c in u.items():
            p = t.pair(k, s) if left_vec else t.pair(s, k)
            vec_iadd(F, out, t.project({p: F.one}), c)
        return out

    def evaluate(h: HomObject, w: Vector, v: Vector) -> Vector:
        return h.element(w).apply(v)

    for j in range(dx.obj.dim):
        for l in range(dy.obj.dim):
            for s in range(dz.obj.dim):
                u = mu_xy.apply(t_dxdy.project_pair(j, l))
                left = mu_l.apply(embed(t_l, u, s, True))
                u2 = mu_yz.apply(t_dydz.project_pair(l, s))
                right = mu_r.apply(embed(t_r, u2, j, False))
                for i in range(x.dim):
                    for n in range(y.dim):
                        pxy = xy.project_pair(i, n)
                        for o in range(z.dim):
                            vl = evaluate(d_xy_z, left, embed(xy_z, pxy, o, True))
                            pyz = yz.project_pair(n, o)
                            vr = evaluate(d_x_yz, right, embed(x_yz, pyz, i, False))
                            if vl != vr:
                                return False
    return True


# -- random objects --------------------------------------------------------------------------

def _random_invertible(rng: random.Random, degrees: Sequence[int], F: FieldSpec) -> SparseMatrix:
    n = len(degrees)
    while True:
        ent = {}
        for r in range(n):
            for c in range(n):
                if degrees[r] == degrees[c]:
                    v = rng.randint(-2, 2)
                    if v:
                        ent[(r, c)] = v
        m = SparseMatrix(n, n, ent, F)
        if is_invertible(m):
            return m


def random_object(amb: Ambient, rng: random.Random, max_dim: int = 6) -> MonObject:
    """Seeded random object: a graded space, or a sum of shifted R's and k's in a scrambled basis."""
    F = amb.field
    if not amb.others():
        n = rng.randint(0, max_dim)
        degrees = tuple(rng.randint(-2, 2) for _ in range(n))
        return MonObject(amb, degrees, {}, f"V{list(degrees)}")
    R = amb.ring
    parts: List[MonObject] = []
    room = max_dim
    while room > 0 and rng.random() < 0.8:
        d = rng.randint(-1, 1)
        if room >= R.dim and rng.random() < 0.5:
            free = unit_object(amb)
            parts.append(MonObject(amb, tuple(g + d for g in free.degrees), dict(free.action), f"R[{d}]"))
            room -= R.dim
        else:
            parts.append(shift(amb, d))
            room -= 1
    if not parts:
        return MonObject(amb, (), {}, "0")
    obj = parts[0]
    for p in parts[1:]:
        obj = direct_sum(obj, p)
    label = "+".join(p.label for p in parts)
    obj = conjugate(obj, _random_invertible(rng, obj.degrees, F))
    obj.label = label
    return obj


def random_morphism(x: MonObject, y: MonObject, rng: random.Random) -> SparseMatrix:
    h = hom(x, y)
    F = x.field
    v = {k: F.coerce(rng.randint(-3, 3)) for k, d in enumerate(h.obj.degrees) if d == 0}
    return h.element({k: c for k, c in v.items() if c != 0})


def random_retract(amb: Ambient, rng: random.Random, max_dim: int = 4):
    """``(x, f, g, n)`` with ``g o f = id``: x a summand of n, hidden by a random automorphism of n."""
    from .linalg import inverse
    x = random_object(amb, rng, max_dim)
    z = random_object(amb, rng, max_dim)
    n = direct_sum(x, z)
    F = amb.field
    f = SparseMatrix(n.dim, x.dim, {(i, i): 1 for i in range(x.dim)}, F)
    g = SparseMatrix(x.dim, n.dim, {(i, i): 1 for i in range(x.dim)}, F)
    for _ in range(50):
        sigma = random_morphism(n, n, rng) + SparseMatrix.identity(n.dim, F)
        if is_invertible(sigma):
            return x, sigma @ f, g @ inverse(sigma), n
    return x, f, g, n


# -- self-test ------------------------------------------------------------------------------------

@dataclass
class SelftestReport:
    seed: int
    graded_trials: int
    module_trials: int
    retract_trials: int
    disagreements: List[str]
    projective_mismatches: List[str]
    retract_failures: List[str]
    identity_failures: List[str]
    passed_graded: int
    passed_modules: int

    @property
    def ok(self) -> bool:
        return not (self.disagreements or self.projective_mismatches or self.retract_failures
                    or self.identity_failures)


def selftest(seed: int = 7, graded_trials: int = 200, module_trials: int = 50, retract_trials: int = 50,
             field: FieldSpec = QQ) -> SelftestReport:
    """Seeded run of the six-way check, projectivity cross-check, retract closure and identities."""
    rng = random.Random(seed)
    gv = graded_vect(field)
    mods = modules_over(dual_numbers(0, field))
    dis: List[str] = []
    proj_bad: List[str] = []
    ret_bad: List[str] = []
    ident_bad: List[str] = []
    passed = {"g": 0, "m": 0}
    for amb, trials, tag in ((gv, graded_trials, "g"), (mods, module_trials, "m")):
        probes = probe_set(amb, random.Random(seed + 1))
        for _ in range(trials):
            x = random_object(amb, rng)
            res = prop_equivalences_check(x, probes)
            if not res.agree:
                dis.append(res.counterexample())
            if res.passed:
                passed[tag] += 1
            if tag == "g" and not res.passed:
                dis.append("graded object fails: " + res.counterexample())
            if res.projective is not None and res.projective != res.conditions[0]:
                proj_bad.append(res.counterexample())
    for amb, trials in ((gv, retract_trials), (mods, retract_trials)):
        for _ in range(trials):
            x, f, g, n = random_retract(amb, rng)
            if not retract_closure_check(x, f, g, n):
                ret_bad.append(f"{x!r} in {n!r}")
    for amb in (gv, mods):
        for _ in range(5):
            x = random_object(amb, rng, 3)
            y = random_object(amb, rng, 3)
            z = random_object(amb, rng, 2)
            f = random_morphism(x, y, rng)
            if not eval_naturality_check(f, x, y):
                ident_bad.append(f"eval naturality {x!r} -> {y!r}")
            if not triangle_check(x):
                ident_bad.append(f"triangle {x!r}")
            if not lax_associativity_check(x, y, z):
                ident_bad.append(f"mu associativity {x!r} {y!r} {z!r}")
    return SelftestReport(seed, graded_trials, module_trials, retract_trials, dis, proj_bad, ret_bad,
                          ident_bad, passed["g"], passed["m"])
