"""Finite-dimensional DG algebras and DG modules given by structure constants.

Grading is cohomological: the differential has degree +1.  Elements are sparse
vectors ``{basis index: scalar}``.  The unit is stored as a vector, so
algebras such as matrix algebras whose unit is not a basis element are
representable; :meth:`DGAlgebra.with_unit_basis` changes basis so the unit
becomes one (the bar constructions need that).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import InvariantViolation, PreconditionError
from .linalg import (
    QQ,
    Echelon,
    FieldSpec,
    SparseMatrix,
    Vector,
    echelon_of_rows,
    kernel_basis,
    rank,
    vec_add,
    vec_iadd,
    vec_scale,
)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


@dataclass(frozen=True, eq=False)
class DGAlgebra:
    field: FieldSpec
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    mult: Mapping[Tuple[int, int], Vector]
    diff: Mapping[int, Vector]
    unit: Vector
    label: str = ""

    # -- construction -----------------------------------------------------
    @classmethod
    def from_tables(cls, basis: Sequence[Tuple[str, int]], unit, mult=None, diff=None,
                    field: FieldSpec = QQ, label: str = "") -> "DGAlgebra":
        """Build from name-keyed tables.

        ``unit`` is a basis name or a ``{name: coeff}`` dict; ``mult`` maps
        ``(left, right)`` to ``{name: coeff}`` and ``diff`` maps a name to
        ``{name: coeff}``.  Missing entries are zero, except that products with
        a unit basis element default to the unit law.
        """
        names = tuple(n for n, _ in basis)
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        idx = {n: i for i, n in enumerate(names)}

        def vec(d: Mapping[str, object]) -> Vector:
            out: Vector = {}
            for n, c in d.items():
                if n not in idx:
                    raise KeyError(f"unknown basis name {n!r}")
                c = field.coerce(c)
                if c != 0:
                    out[idx[n]] = field.add(out.get(idx[n], field.zero), c)
                    if out[idx[n]] == 0:
                        del out[idx[n]]
            return out

        unit_vec = vec({unit: 1}) if isinstance(unit, str) else vec(unit)
        m: Dict[Tuple[int, int], Vector] = {}
        for (a, b), d in (mult or {}).items():
            v = vec(d)
            if v:
                m[(idx[a], idx[b])] = v
        if isinstance(unit, str):
            u = idx[unit]
            for i in range(len(names)):
                given = (mult or {})
                if (unit, names[i]) not in given:
                    m[(u, i)] = {i: field.one}
                if (names[i], unit) not in given:
                    m[(i, u)] = {i: field.one}
        dd = {}
        for a, d in (diff or {}).items():
            v = vec(d)
            if v:
                dd[idx[a]] = v
        return cls(field, names, tuple(int(g) for _, g in basis), m, dd, unit_vec, label)

    # -- basic access -----------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def element(self, coeffs: Mapping[str, object]) -> Vector:
        F = self.field
        out: Vector = {}
        for n, c in coeffs.items():
            vec_iadd(F, out, {self.index(n): F.coerce(c)})
        return out

    def basis_vector(self, name: str) -> Vector:
        return {self.index(name): self.field.one}

    def unit_index(self) -> Optional[int]:
        if len(self.unit) == 1:
            (i, c), = self.unit.items()
            if c == 1:
                return i
        return None

    def mul(self, u: Mapping[int, object], v: Mapping[int, object]) -> Vector:
        F = self.field
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                t = self.mult.get((i, j))
                if t:
                    vec_iadd(F, out, t, F.mul(a, b))
        return out

    def d(self, u: Mapping[int, object]) -> Vector:
        F = self.field
        out: Vector = {}
        for i, a in u.items():
            t = self.diff.get(i)
            if t:
                vec_iadd(F, out, t, a)
        return out

    def has_zero_differential(self) -> bool:
        return not self.diff

    def degree_support(self) -> Tuple[int, int]:
        if not self.degrees:
            return (0, 0)
        return (min(self.degrees), max(self.degrees))

    def left_mult_matrix(self, u: Mapping[int, object]) -> SparseMatrix:
        cols = [self.mul(u, {j: self.field.one}) for j in range(self.dim)]
        return SparseMatrix.from_columns(cols, self.dim, self.field)

    def right_mult_matrix(self, u: Mapping[int, object]) -> SparseMatrix:
        cols = [self.mul({j: self.field.one}, u) for j in range(self.dim)]
        return SparseMatrix.from_columns(cols, self.dim, self.field)

    def diff_matrix(self) -> SparseMatrix:
        return SparseMatrix.from_columns([self.diff.get(j, {}) for j in range(self.dim)], self.dim, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DGAlgebra):
            return NotImplemented
        return (self.field == other.field and self.names == other.names and self.degrees == other.degrees
                and _clean(self.mult) == _clean(other.mult) and _clean(self.diff) == _clean(other.diff)
                and self.unit == other.unit)

    def __hash__(self):
        return hash((self.field, self.names, self.degrees))

    def __repr__(self) -> str:
        lab = f" {self.label!r}" if self.label else ""
        return f"<DGAlgebra{lab} dim={self.dim} over {self.field}>"

    # -- derived algebras ---------------------------------------------------
    def with_unit_basis(self) -> "DGAlgebra":
        """An isomorphic algebra whose basis contains the unit.

        The replaced basis element is the first one in the unit's support.
        """
        if self.unit_index() is not None:
            return self
        if not self.unit:
            raise PreconditionError("the zero algebra has no unit basis element")
        F = self.field
        i = min(self.unit)
        ui = self.unit[i]
        inv = F.inv(ui)

        def to_new(v: Mapping[int, object]) -> Vector:
            out = dict(v)
            vi = out.pop(i, None)
            if vi is None:
                return out
            c = F.mul(vi, inv)
            out[i] = c
            for j, uj in self.unit.items():
                if j != i:
                    vec_iadd(F, out, {j: F.neg(F.mul(c, uj))})
            return {k: a for k, a in out.items() if a != 0}

        def new_to_old(j: int) -> Vector:
            return dict(self.unit) if j == i else {j: F.one}

        mult = {}
        diff = {}
        for a in range(self.dim):
            da = to_new(self.d(new_to_old(a)))
            if da:
                diff[a] = da
            for b in range(self.dim):
                p = to_new(self.mul(new_to_old(a), new_to_old(b)))
                if p:
                    mult[(a, b)] = p
        name = "1"
        while name in self.names and self.names[i] != name:
            name += "'"
        names = tuple(name if j == i else n for j, n in enumerate(self.names))
        return DGAlgebra(F, names, self.degrees, mult, diff, {i: F.one}, self.label)

    def opposite(self) -> "DGAlgebra":
        """Opposite algebra with the Koszul sign: a *op b = (-1)^{|a||b|} b a."""
        F = self.field
        mult = {}
        for (i, j), v in self.mult.items():
            s = _sign(self.degrees[i] * self.degrees[j])
            mult[(j, i)] = vec_scale(F, v, s)
        return DGAlgebra(F, self.names, self.degrees, mult, dict(self.diff), dict(self.unit),
                         (self.label + "_op") if self.label else "")

    def with_field(self, field: FieldSpec) -> "DGAlgebra":
        def conv(v):
            out = {}
            for k, c in v.items():
                c2 = field.coerce(c)
                if c2 != 0:
                    out[k] = c2
            return out
        mult = {k: conv(v) for k, v in self.mult.items()}
        diff = {k: conv(v) for k, v in self.diff.items()}
        return DGAlgebra(field, self.names, self.degrees, {k: v for k, v in mult.items() if v},
                         {k: v for k, v in diff.items() if v}, conv(self.unit), self.label)


def _clean(m: Mapping) -> Dict:
    return {k: dict(v) for k, v in m.items() if v}


# -- validation -------------------------------------------------------------

@dataclass
class Violation:
    kind: str
    message: str


@dataclass
class ValidationReport:
    violations: List[Violation] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]

    def __bool__(self) -> bool:
        return self.ok


def _fmt(a: DGAlgebra, v: Mapping[int, object]) -> str:
    if not v:
        return "0"
    return " + ".join(f"{a.field.format(c)}*{a.names[k]}" for k, c in sorted(v.items()))


def validate_dga(a: DGAlgebra) -> ValidationReport:
    """Check grading, d^2 = 0, Leibniz, associativity and unit laws."""
    F = a.field
    rep = ValidationReport()
    add = rep.violations.append
    n = a.dim
    deg = a.degrees
    nm = a.names
    for (i, j), v in sorted(a.mult.items()):
        for k in v:
            if deg[k] != deg[i] + deg[j]:
                add(Violation("mult-degree", f"{nm[i]}*{nm[j]} has component {nm[k]} of degree {deg[k]}, "
                                             f"expected {deg[i] + deg[j]}"))
    for i, v in sorted(a.diff.items()):
        for k in v:
            if deg[k] != deg[i] + 1:
                add(Violation("diff-degree", f"differential not degree +1: d({nm[i]}) has component "
                                             f"{nm[k]} of degree {deg[k]}"))
    for i in range(n):
        dd = a.d(a.d({i: F.one}))
        if dd:
            add(Violation("d-squared", f"d(d({nm[i]})) = {_fmt(a, dd)}"))
    for i in range(n):
        ei = {i: F.one}
        for j in range(n):
            ej = {j: F.one}
            lhs = a.d(a.mul(ei, ej))
            rhs = vec_add(F, a.mul(a.d(ei), ej), a.mul(ei, a.d(ej)), F.coerce(_sign(deg[i])))
            if lhs != rhs:
                add(Violation("leibniz", f"d({nm[i]}*{nm[j]}) = {_fmt(a, lhs)} but Leibniz gives {_fmt(a, rhs)}"))
    for i, j, k in iproduct(range(n), repeat=3):
        ei, ej, ek = {i: F.one}, {j: F.one}, {k: F.one}
        l = a.mul(a.mul(ei, ej), ek)
        r = a.mul(ei, a.mul(ej, ek))
        if l != r:
            add(Violation("associativity", f"({nm[i]}*{nm[j]})*{nm[k]} = {_fmt(a, l)} != {_fmt(a, r)}"))
    if not a.unit and n:
        add(Violation("unit", "unit undefined"))
    for i in range(n):
        ei = {i: F.one}
        if a.mul(a.unit, ei) != ei or a.mul(ei, a.unit) != ei:
            add(Violation("unit", f"unit law fails on {nm[i]}"))
    return rep


def require_valid(a: DGAlgebra) -> None:
    rep = validate_dga(a)
    if not rep.ok:
        raise PreconditionError("invalid DGA: " + "; ".join(v.message for v in rep.violations[:3]))


# -- cohomology -------------------------------------------------------------

def _graded_cohomology(field: FieldSpec, degrees: Sequence[int], diff: Mapping[int, Vector]) -> Dict[int, int]:
    by_deg: Dict[int, List[int]] = {}
    for i, g in enumerate(degrees):
        by_deg.setdefault(g, []).append(i)
    pos = {i: (g, k) for g, idxs in by_deg.items() for k, i in enumerate(idxs)}

    def dmat(g):
        src = by_deg.get(g, [])
        tgt = by_deg.get(g + 1, [])
        cols = []
        for i in src:
            col = {}
            for k, c in diff.get(i, {}).items():
                col[pos[k][1]] = c
            cols.append(col)
        return SparseMatrix.from_columns(cols, len(tgt), field)

    out = {}
    for g in sorted(by_deg):
        dim = len(by_deg[g])
        h = dim - rank(dmat(g)) - rank(dmat(g - 1))
        if h:
            out[g] = h
    return out


def cohomology_dims(a: "DGAlgebra | DGModule") -> Dict[int, int]:
    """Nonzero dimensions of the cohomology of the underlying complex."""
    return _graded_cohomology(a.field, a.degrees, a.diff)


# -- ideals, radical, semisimple quotient ----------------------------------

@dataclass
class IdealDescription:
    algebra: DGAlgebra
    basis: List[Vector]
    is_dg_ideal: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    def echelon(self) -> Echelon:
        return echelon_of_rows(self.basis, self.algebra.field)

    def contains(self, v: Mapping[int, object]) -> bool:
        return self.echelon().contains(v)

    def is_two_sided(self) -> bool:
        a = self.algebra
        ech = self.echelon()
        for v in self.basis:
            for j in range(a.dim):
                e = {j: a.field.one}
                if not ech.contains(a.mul(e, v)) or not ech.contains(a.mul(v, e)):
                    return False
        return True

    def is_d_closed(self) -> bool:
        ech = self.echelon()
        return all(ech.contains(self.algebra.d(v)) for v in self.basis)

    def is_nilpotent(self) -> bool:
        """Some power J^k with k <= dim A + 1 vanishes."""
        a = self.algebra
        power = list(self.basis)
        for _ in range(a.dim + 1):
            if not power:
                return True
            ech = Echelon(a.field)
            for u in power:
                for v in self.basis:
                    ech.add(a.mul(u, v))
            power = list(ech.pivots.values())
        return not power


def _trace_form_kernel(a: DGAlgebra) -> List[Vector]:
    F = a.field
    n = a.dim
    lm = [a.left_mult_matrix({i: F.one}) for i in range(n)]

    def tr(m: SparseMatrix):
        t = F.zero
        for (r, c), v in m.entries.items():
            if r == c:
                t = F.add(t, v)
        return t

    rows = []
    for i in range(n):
        rows.append({j: tr(lm[i] @ lm[j]) for j in range(n)})
    gram = SparseMatrix.from_rows(rows, n, F)
    return kernel_basis(gram)


def radical(a: DGAlgebra) -> IdealDescription:
    """Jacobson radical of the underlying ungraded algebra (trace-form method)."""
    F = a.field
    p = F.characteristic
    if p != 0 and p <= a.dim:
        raise PreconditionError(f"radical unsupported in this characteristic (p = {p} <= dim A = {a.dim})")
    J = _trace_form_kernel(a)
    # the kernel of the trace form is the radical when p = 0 or p > dim;
    # iterate on the quotient anyway so a failure shows up as a verified error
    while True:
        ideal = IdealDescription(a, J)
        if not ideal.is_two_sided():
            raise InvariantViolation("trace-form kernel is not a two-sided ideal")
        if not ideal.is_nilpotent():
            raise InvariantViolation("trace-form kernel is not nilpotent")
        q, proj, lift = _quotient(a, ideal, check_diff=False)
        extra = _trace_form_kernel(q) if q.dim else []
        if not extra:
            return IdealDescription(a, _echelon_basis(a.field, J))
        J = J + [lift(v) for v in extra]


def _echelon_basis(F: FieldSpec, vecs: Sequence[Vector]) -> List[Vector]:
    rows = echelon_of_rows(vecs, F).reduced_rows()
    return [rows[c] for c in sorted(rows)]


def j_plus(a: DGAlgebra) -> IdealDescription:
    """The DG ideal J + d(J)."""
    J = radical(a)
    span = _echelon_basis(a.field, J.basis + [a.d(v) for v in J.basis])
    ideal = IdealDescription(a, span, is_dg_ideal=True)
    if not ideal.is_d_closed():
        raise InvariantViolation("J + d(J) is not closed under d")
    if not ideal.is_two_sided():
        raise InvariantViolation("J + d(J) is not a two-sided ideal")
    return ideal


def _quotient(a: DGAlgebra, ideal: IdealDescription, check_diff: bool = True):
    """Quotient algebra on the complement of the ideal's pivot columns.

    Returns ``(quotient, project, lift)``: ``project`` sends an element of
    ``a`` to quotient coordinates and ``lift`` sends quotient coordinates back
    to the complement representative.
    """
    F = a.field
    ech = ideal.echelon()
    comp = [i for i in range(a.dim) if i not in ech.pivots]
    pos = {i: k for k, i in enumerate(comp)}

    def project(v: Mapping[int, object]) -> Vector:
        rem, _ = ech.reduce(v)
        return {pos[i]: c for i, c in rem.items()}

    def lift(v: Mapping[int, object]) -> Vector:
        return {comp[k]: c for k, c in v.items()}

    mult = {}
    diff = {}
    for x, i in enumerate(comp):
        dv = project(a.d({i: F.one}))
        if dv:
            diff[x] = dv
        for y, j in enumerate(comp):
            pv = project(a.mul({i: F.one}, {j: F.one}))
            if pv:
                mult[(x, y)] = pv
    if check_diff and diff:
        raise InvariantViolation("quotient by J_+ has a nonzero differential")
    q = DGAlgebra(F, tuple(a.names[i] for i in comp), tuple(a.degrees[i] for i in comp), mult, diff,
                  project(a.unit), (a.label + "/J+") if a.label else "")
    return q, project, lift


def semisimple_quotient(a: DGAlgebra, with_maps: bool = False):
    """A / J_+ on a deterministic complement basis; may be the zero algebra."""
    q, project, lift = _quotient(a, j_plus(a))
    if with_maps:
        return q, project, lift
    return q


# -- separability -----------------------------------------------------------

def _min_poly(alg: DGAlgebra, z: Vector, one: Vector) -> List:
    """Monic minimal polynomial coefficients [c0, ..., 1] of z (powers inside alg)."""
    F = alg.field
    ech = Echelon(F)
    powers = [one]
    ech.add(one, {0: F.one})
    while True:
        nxt = alg.mul(powers[-1], z)
        k = len(powers)
        rem, tag = ech.reduce(nxt, {k: F.one})
        if not rem:
            # tag expresses 0 = z^k - sum c_i z^i  (up to the reduction bookkeeping)
            lead = tag.get(k, F.zero)
            coeffs = [F.div(tag.get(i, F.zero), lead) for i in range(k)] + [F.one]
            return coeffs
        ech.add(nxt, {k: F.one})
        powers.append(nxt)


def _roots_in_field(F: FieldSpec, coeffs: Sequence) -> List:
    """Distinct roots in F of the polynomial sum coeffs[i] x^i."""
    p = F.characteristic
    if p:
        if p < 5000:
            roots = []
            for x in range(p):
                acc = 0
                for c in reversed(coeffs):
                    acc = (acc * x + c) % p
                if acc == 0:
                    roots.append(x)
            return roots
        import sympy
        X = sympy.Symbol("x")
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], X, modulus=p)
        return sorted({int(r) % p for r in poly.ground_roots()})
    import sympy
    X = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], X, domain="QQ")
    from fractions import Fraction
    return sorted(Fraction(int(r.p), int(r.q)) for r in poly.ground_roots())


def _split_by_generic(alg: DGAlgebra, candidates: Sequence[Vector], one: Vector, target_degree: int):
    """Find a candidate whose min poly has ``target_degree`` distinct roots in k."""
    for z in candidates:
        mp = _min_poly(alg, z, one)
        if len(mp) - 1 != target_degree:
            continue
        roots = _roots_in_field(alg.field, mp)
        if len(roots) == target_degree:
            return z, roots
    return None


def _candidates(F: FieldSpec, span: Sequence[Vector], count: int = 6) -> List[Vector]:
    """Deterministic trial elements: basis vectors, pairwise sums, then dense mixes."""
    out = [dict(b) for b in span]
    for i in range(len(span)):
        for j in range(i + 1, len(span)):
            out.append(vec_add(F, span[i], span[j], F.coerce(j + 1)))
    for t in range(count):
        v: Vector = {}
        for i, b in enumerate(span):
            c = F.coerce((i + 1) ** (t + 1) + t * i)
            if c:
                vec_iadd(F, v, b, c)
        out.append(v)
    return out


def center(a: DGAlgebra) -> List[Vector]:
    F = a.field
    n = a.dim
    rows = []
    # v is central iff v e_j - e_j v = 0 for all j (underlying ungraded algebra)
    for j in range(n):
        ej = {j: F.one}
        cols = [vec_add(F, a.mul({i: F.one}, ej), a.mul(ej, {i: F.one}), F.neg(F.one)) for i in range(n)]
        rows.extend(SparseMatrix.from_columns(cols, n, F).row_dicts())
    return kernel_basis(SparseMatrix.from_rows(rows, n, F))


def separability_check(s: DGAlgebra) -> str:
    """'separable' | 'inseparable' | 'unknown' for a semisimple, d = 0 algebra.

    Separable is certified by exhibiting s as a product of full matrix
    algebras over k; non-split quotients are reported 'unknown'.
    """
    F = s.field
    if not s.has_zero_differential():
        raise PreconditionError("separability_check needs a zero differential")
    if s.dim == 0:
        return "separable"
    if radical(s).dim:
        raise PreconditionError("separability_check needs a zero radical")
    Z = center(s)
    r = len(Z)
    found = _split_by_generic(s, _candidates(F, Z), s.unit, r)
    if found is None:
        return "unknown"
    z, roots = found
    idems = []
    for i, lam in enumerate(roots):
        e = dict(s.unit)
        for j, mu in enumerate(roots):
            if j == i:
                continue
            factor = vec_add(F, z, s.unit, F.neg(mu))
            e = vec_scale(F, s.mul(e, factor), F.inv(F.sub(lam, mu)))
        idems.append(e)
    for e in idems:
        block = _echelon_basis(F, [s.mul(e, {j: F.one}) for j in range(s.dim)])
        d = len(block)
        n = math.isqrt(d)
        if n * n != d:
            return "unknown"
        if n == 1:
            continue
        if _split_by_generic(s, [s.mul(e, c) for c in _candidates(F, block)], e, n) is None:
            return "unknown"
    return "separable"


# -- constructions ------------------------------------------------------------

def direct_product(a: DGAlgebra, b: DGAlgebra) -> DGAlgebra:
    """a x b on the union of the bases (unit = 1_a + 1_b, not a basis element)."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    off = a.dim
    mult = dict(a.mult)
    for (i, j), v in b.mult.items():
        mult[(i + off, j + off)] = {k + off: c for k, c in v.items()}
    diff = dict(a.diff)
    for i, v in b.diff.items():
        diff[i + off] = {k + off: c for k, c in v.items()}
    unit = dict(a.unit)
    unit.update({k + off: c for k, c in b.unit.items()})
    names = tuple(f"{n}@1" for n in a.names) + tuple(f"{n}@2" for n in b.names)
    return DGAlgebra(a.field, names, a.degrees + b.degrees, mult, diff, unit)


def matrix_algebra_inflation(a: DGAlgebra, n: int) -> DGAlgebra:
    """M_n(a) with entrywise differential; M_1(a) is a itself."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return a
    F = a.field
    m = a.dim
    idx = lambda i, j, k: (i * n + j) * m + k  # noqa: E731
    names, degs = [], []
    for i in range(n):
        for j in range(n):
            for k in range(m):
                names.append(f"E{i + 1}{j + 1}.{a.names[k]}")
                degs.append(a.degrees[k])
    mult = {}
    for i, j, l in iproduct(range(n), repeat=3):
        for (x, y), v in a.mult.items():
            mult[(idx(i, j, x), idx(j, l, y))] = {idx(i, l, z): c for z, c in v.items()}
    diff = {}
    for i, j in iproduct(range(n), repeat=2):
        for x, v in a.diff.items():
            diff[idx(i, j, x)] = {idx(i, j, z): c for z, c in v.items()}
    unit = {}
    for i in range(n):
        for k, c in a.unit.items():
            unit[idx(i, i, k)] = c
    lab = f"M{n}({a.label})" if a.label else ""
    return DGAlgebra(F, tuple(names), tuple(degs), mult, diff, unit, lab)


# -- DG modules ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DGModule:
    """Left DG module over ``algebra``; ``action[(a, m)]`` is the vector a.m."""

    algebra: DGAlgebra
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    action: Mapping[Tuple[int, int], Vector]
    diff: Mapping[int, Vector]
    label: str = ""

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return len(self.names)

    def act(self, u: Mapping[int, object], v: Mapping[int, object]) -> Vector:
        F = self.field
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                t = self.action.get((i, j))
                if t:
                    vec_iadd(F, out, t, F.mul(a, b))
        return out

    def d(self, v: Mapping[int, object]) -> Vector:
        F = self.field
        out: Vector = {}
        for i, a in v.items():
            t = self.diff.get(i)
            if t:
                vec_iadd(F, out, t, a)
        return out

    def has_zero_differential(self) -> bool:
        return not self.diff

    def action_matrix(self, u: Mapping[int, object]) -> SparseMatrix:
        cols = [self.act(u, {j: self.field.one}) for j in range(self.dim)]
        return SparseMatrix.from_columns(cols, self.dim, self.field)

    def __repr__(self) -> str:
        return f"<DGModule {self.label or ''} dim={self.dim} over {self.algebra!r}>"


def validate_module(m: DGModule) -> ValidationReport:
    A = m.algebra
    F = m.field
    rep = ValidationReport()
    add = rep.violations.append
    for (i, j), v in m.action.items():
        for k in v:
            if m.degrees[k] != A.degrees[i] + m.degrees[j]:
                add(Violation("action-degree", f"{A.names[i]}.{m.names[j]} hits {m.names[k]} in the wrong degree"))
    for j, v in m.diff.items():
        for k in v:
            if m.degrees[k] != m.degrees[j] + 1:
                add(Violation("diff-degree", f"d({m.names[j]}) not of degree +1"))
    for j in range(m.dim):
        ej = {j: F.one}
        if m.d(m.d(ej)):
            add(Violation("d-squared", f"d^2({m.names[j]}) != 0"))
        if m.act(A.unit, ej) != ej:
            add(Violation("unit", f"unit does not act as identity on {m.names[j]}"))
        for i in range(A.dim):
            ei = {i: F.one}
            lhs = m.d(m.act(ei, ej))
            rhs = vec_add(F, m.act(A.d(ei), ej), m.act(ei, m.d(ej)), F.coerce(_sign(A.degrees[i])))
            if lhs != rhs:
                add(Violation("leibniz", f"d({A.names[i]}.{m.names[j]}) violates Leibniz"))
            for k in range(A.dim):
                ek = {k: F.one}
                if m.act(ei, m.act(ek, ej)) != m.act(A.mul(ei, ek), ej):
                    add(Violation("associativity", f"action not associative at "
                                                   f"({A.names[i]}, {A.names[k]}, {m.names[j]})"))
    return rep


def free_module(a: DGAlgebra, shift: int = 0, prefix: str = "") -> DGModule:
    """The free module Sigma^shift A, i.e. generator in degree -shift."""
    names = tuple(f"{prefix}{n}" for n in a.names)
    degs = tuple(g - shift for g in a.degrees)
    F = a.field
    action = {}
    for (i, j), v in a.mult.items():
        action[(i, j)] = dict(v)
    diff = {i: vec_scale(F, v, _sign(shift)) for i, v in a.diff.items()}
    return DGModule(a, names, degs, action, diff, f"Sigma^{shift} A" if shift else "A")


def quotient_module(a: DGAlgebra, ideal: IdealDescription, label: str = "") -> DGModule:
    """A / I as a left module on the complement basis of a DG ideal I."""
    q, project, lift = _quotient(a, ideal, check_diff=False)
    F = a.field
    action = {}
    for i in range(a.dim):
        for y in range(q.dim):
            v = project(a.mul({i: F.one}, lift({y: F.one})))
            if v:
                action[(i, y)] = v
    return DGModule(a, q.names, q.degrees, action, dict(q.diff), label or "A/I")


def semisimple_module(a: DGAlgebra) -> DGModule:
    """A / J_+ as a left A-module."""
    return quotient_module(a, j_plus(a), "A/J+")


def cone(f: Mapping[int, Vector], source: DGModule, target: DGModule, degree: int = 0) -> DGModule:
    """Cone of an A-linear chain map ``f: source -> target`` of the given degree.

    Underlying space target + Sigma^{1-degree} source, with
    d(y, s x) = (d y + f(x), -s d x).
    """
    A = target.algebra
    F = A.field
    off = target.dim
    shift = 1 - degree
    names = target.names + tuple(f"s{n}" for n in source.names)
    degs = target.degrees + tuple(g - shift for g in source.degrees)
    action = dict(target.action)
    for (i, j), v in source.action.items():
        action[(i, j + off)] = {k + off: F.mul(c, F.coerce(_sign(A.degrees[i] * shift))) for k, c in v.items()}
    diff = dict(target.diff)
    for j in range(source.dim):
        v = {k + off: F.neg(c) for k, c in source.d({j: F.one}).items()}
        vec_iadd(F, v, f.get(j, {}))
        if v:
            diff[j + off] = v
    m = DGModule(A, names, degs, action, diff, "cone")
    rep = validate_module(m)
    if not rep.ok:
        raise PreconditionError("cone is not a DG module: " + rep.violations[0].message)
    return m


def cone_of_identity(m: DGModule) -> DGModule:
    F = m.field
    return cone({j: {j: F.one} for j in range(m.dim)}, m, m, 0)
