"""Normalized bar constructions as weight-truncated bigraded complexes.

Conventions (checked at runtime by ``check_d_squared`` rather than trusted):

* ``sa`` is the suspension of ``a``, ``|sa| = |a| - 1``; the interior letters
  run over the non-unit basis elements (the normalized bar construction).
* bar differential on ``[sa_1 | ... | sa_n]``:
  ``b1`` puts ``-(-1)^e s(d a_k)`` in slot ``k`` and ``b2`` merges slots
  ``k, k+1`` into ``-(-1)^e (-1)^{|sa_k|} s(a_k a_{k+1})``, where ``e`` is the
  degree of the letters before slot ``k``.
* cochains ``f: (sA-bar)^{(x)n} -> X`` carry
  ``D f = d_X f - (-1)^{|f|} f b + pi u f - (-1)^{|f|} f u pi`` with the cup
  product ``(f u g)(w) = (-1)^{|g| |w'|} f(w') g(w'')`` and ``pi(sa) = a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import DGAlgebra, DGModule
from .complexes import BigradedComplex, Key, SafeWindow, discarded_hull
from .errors import PreconditionError
from .linalg import FieldSpec, SparseMatrix, Vector, vec_iadd


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class Coefficients:
    """A DG bimodule over ``algebra`` given by action matrices.

    ``left[i]`` / ``right[i]`` are the matrices of ``a_i . -`` and ``- . a_i``
    (missing keys act by zero).  ``product``, when present, is a bilinear map
    ``(j, k) -> vector`` turning the bimodule into an algebra (used for cups).
    """

    algebra: DGAlgebra
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    left: Mapping[int, Mapping[int, Vector]]
    right: Mapping[int, Mapping[int, Vector]]
    diff: Mapping[int, Vector]
    product: Optional[Mapping[Tuple[int, int], Vector]] = None
    unit: Optional[Vector] = None
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.names)

    @classmethod
    def regular(cls, a: DGAlgebra) -> "Coefficients":
        left: Dict[int, Dict[int, Vector]] = {}
        right: Dict[int, Dict[int, Vector]] = {}
        for (i, j), v in a.mult.items():
            left.setdefault(i, {})[j] = v
            right.setdefault(j, {})[i] = v
        return cls(a, a.names, a.degrees, left, right, dict(a.diff), dict(a.mult), dict(a.unit), "A")

    @classmethod
    def left_module(cls, m: DGModule) -> "Coefficients":
        left: Dict[int, Dict[int, Vector]] = {}
        for (i, j), v in m.action.items():
            left.setdefault(i, {})[j] = v
        return cls(m.algebra, m.names, m.degrees, left, {}, dict(m.diff), label=m.label)

    @classmethod
    def augmentation(cls, m: DGModule) -> "Coefficients":
        """A one-dimensional module in degree 0, acting on both sides by the same scalars."""
        if m.dim != 1 or m.degrees != (0,):
            raise PreconditionError("augmentation coefficients need a one-dimensional module in degree 0")
        side: Dict[int, Dict[int, Vector]] = {}
        for (i, j), v in m.action.items():
            side.setdefault(i, {})[j] = v
        return cls(m.algebra, m.names, m.degrees, side, side, {}, label=m.label)

    @classmethod
    def hom(cls, m: DGModule, n: DGModule) -> "Coefficients":
        """``Hom_k(M, N)`` with ``(a phi b)(v) = a . phi(b . v)``.

        The basis element ``E[x,y]`` sends ``m_y`` to ``n_x``.  When ``M`` and
        ``N`` are the same module, composition makes this an algebra.
        """
        F = m.field
        A = m.algebra
        rm, rn = m.dim, n.dim
        names = tuple(f"E[{n.names[x]},{m.names[y]}]" for x in range(rn) for y in range(rm))
        degs = tuple(n.degrees[x] - m.degrees[y] for x in range(rn) for y in range(rm))

        def by_algebra(mod):
            act: Dict[int, Dict[int, Vector]] = {}
            for (i, j), v in mod.action.items():
                act.setdefault(i, {})[j] = v
            return act

        act_m, act_n = by_algebra(m), by_algebra(n)
        left: Dict[int, Dict[int, Vector]] = {}
        right: Dict[int, Dict[int, Vector]] = {}
        for i in range(A.dim):
            cn, cm = act_n.get(i, {}), act_m.get(i, {})
            L: Dict[int, Vector] = {}
            R: Dict[int, Vector] = {}
            for x in range(rn):
                for y in range(rm):
                    # a . E[x,y] = sum_c N_a[c,x] E[c,y]
                    lv = {c * rm + y: coef for c, coef in cn.get(x, {}).items()}
                    if lv:
                        L[x * rm + y] = lv
                    # E[x,y] . a = sum_c M_a[y,c] E[x,c]
                    rv = {x * rm + c: cm[c][y] for c in range(rm) if y in cm.get(c, {})}
                    if rv:
                        R[x * rm + y] = rv
            if L:
                left[i] = L
            if R:
                right[i] = R
        dm = [m.d({y: F.one}) for y in range(rm)]
        diff: Dict[int, Vector] = {}
        for x in range(rn):
            for y in range(rm):
                # d(phi) = d o phi - (-1)^{|phi|} phi o d
                v: Vector = {}
                for c, coef in n.d({x: F.one}).items():
                    vec_iadd(F, v, {c * rm + y: coef})
                sgn = F.coerce(-_sgn(n.degrees[x] - m.degrees[y]))
                for yy in range(rm):
                    coef = dm[yy].get(y)
                    if coef:
                        vec_iadd(F, v, {x * rm + yy: F.mul(sgn, coef)})
                if v:
                    diff[x * rm + y] = v
        prod = unit = None
        if m is n:
            prod = {}
            for x in range(rn):
                for y in range(rn):
                    for z in range(rn):
                        prod[(x * rn + y, y * rn + z)] = {x * rn + z: F.one}
            unit = {x * rn + x: F.one for x in range(rn)}
        return cls(A, names, degs, left, right, diff, prod, unit, f"Hom({m.label},{n.label})")

    @classmethod
    def endomorphisms(cls, m: DGModule) -> "Coefficients":
        return cls.hom(m, m)

    def act_left(self, i: int, o: int) -> Vector:
        return self.left.get(i, {}).get(o, {})

    def act_right(self, i: int, o: int) -> Vector:
        return self.right.get(i, {}).get(o, {})

    def multiply(self, u: Mapping[int, object], v: Mapping[int, object]) -> Vector:
        F = self.algebra.field
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                t = self.product.get((i, j)) if self.product else None
                if t:
                    vec_iadd(F, out, t, F.mul(a, b))
        return out


class Letters:
    """Interior letters of the bar construction of ``a``.

    Normalized (the default) uses the basis minus the unit and drops every
    term landing on the unit; ``normalized=False`` keeps all of ``A``.
    """

    def __init__(self, a: DGAlgebra, normalized: bool = True):
        u = a.unit_index()
        if u is None:
            raise PreconditionError("the unit must be a basis element; use with_unit_basis()")
        self.algebra = a
        self.field = a.field
        self.normalized = normalized
        self.unit = u if normalized else -1  # -1 never matches, so nothing is dropped
        self.letters = [i for i in range(a.dim) if i != u or not normalized]
        self.sdeg = {i: a.degrees[i] - 1 for i in self.letters}
        self.merge_into: Dict[int, List[Tuple[int, int, object]]] = {}
        self.diff_into: Dict[int, List[Tuple[int, object]]] = {}
        for i in self.letters:
            for j in self.letters:
                for l, c in a.mult.get((i, j), {}).items():
                    if l != self.unit:
                        self.merge_into.setdefault(l, []).append((i, j, c))
            for l, c in a.diff.get(i, {}).items():
                if l != self.unit:
                    self.diff_into.setdefault(l, []).append((i, c))

    def words(self, n: int) -> Iterable[Tuple[int, ...]]:
        return itertools.product(self.letters, repeat=n)

    def internal(self, w: Sequence[int]) -> int:
        return sum(self.algebra.degrees[i] for i in w)

    def wdeg(self, w: Sequence[int]) -> int:
        return sum(self.sdeg[i] for i in w)

    def bar_b(self, w: Tuple[int, ...]) -> List[Tuple[Tuple[int, ...], object]]:
        """The bar differential ``b = b1 + b2`` of a word (normalized: unit terms dropped)."""
        a = self.algebra
        F = self.field
        out: List[Tuple[Tuple[int, ...], object]] = []
        e = 0
        for k, i in enumerate(w):
            for l, c in a.diff.get(i, {}).items():
                if l != self.unit:
                    out.append((w[:k] + (l,) + w[k + 1:], F.mul(F.coerce(-_sgn(e)), c)))
            if k + 1 < len(w):
                j = w[k + 1]
                for l, c in a.mult.get((i, j), {}).items():
                    if l != self.unit:
                        out.append((w[:k] + (l,) + w[k + 2:], F.mul(F.coerce(-_sgn(e + self.sdeg[i])), c)))
            e += self.sdeg[i]
        return out

    def degree_support(self) -> Tuple[int, int]:
        degs = [self.algebra.degrees[i] for i in self.letters]
        return (min(degs), max(degs)) if degs else (0, 0)


def _assemble(F: FieldSpec, direction: int, cells: Dict[Key, List[tuple]],
              key_of: Callable[[tuple], Key],
              image: Callable[[tuple], Iterable[Tuple[tuple, object]]]) -> Tuple[dict, dict]:
    index = {k: {c: i for i, c in enumerate(v)} for k, v in cells.items()}
    internal: Dict[Key, SparseMatrix] = {}
    bar: Dict[Key, SparseMatrix] = {}
    for key, clist in cells.items():
        n, p = key
        ki, kb = (n, p + 1), (n + direction, p)
        ci: List[Vector] = []
        cb: List[Vector] = []
        for c in clist:
            vi: Vector = {}
            vb: Vector = {}
            for tc, coef in image(c):
                tk = key_of(tc)
                if tk == ki and tk in index:
                    vec_iadd(F, vi, {index[tk][tc]: coef})
                elif tk == kb and tk in index:
                    vec_iadd(F, vb, {index[tk][tc]: coef})
                elif tk not in (ki, kb):
                    raise AssertionError(f"differential leaves its bidegree: {key} -> {tk}")
            ci.append(vi)
            cb.append(vb)
        if ki in cells:
            internal[key] = SparseMatrix.from_columns(ci, len(cells[ki]), F)
        if kb in cells:
            bar[key] = SparseMatrix.from_columns(cb, len(cells[kb]), F)
    return internal, bar


# -- cochains ------------------------------------------------------------------

@dataclass
class CochainComplex:
    """``C^*(A; X)`` truncated at weight ``built`` (a quotient complex)."""

    letters: Letters
    coeffs: Coefficients
    complex: BigradedComplex

    def cell_degree(self, cell: tuple) -> int:
        w, o = cell
        return self.coeffs.degrees[o] - self.letters.wdeg(w)

    def key_of(self, cell: tuple) -> Key:
        w, o = cell
        return (len(w), self.coeffs.degrees[o] - self.letters.internal(w))

    def cup(self, f: Mapping[tuple, object], g: Mapping[tuple, object]) -> Dict[tuple, object]:
        """Cup product of cochains given as ``{cell: coeff}`` dicts."""
        F = self.letters.field
        X = self.coeffs
        out: Dict[tuple, object] = {}
        for (w1, o1), c1 in f.items():
            e = self.letters.wdeg(w1)
            for (w2, o2), c2 in g.items():
                s = _sgn(self.cell_degree((w2, o2)) * e)
                coef = F.mul(F.mul(c1, c2), F.coerce(s))
                w = w1 + w2
                for o, c in X.multiply({o1: F.one}, {o2: F.one}).items():
                    cell = (w, o)
                    v = F.add(out.get(cell, F.zero), F.mul(coef, c))
                    if v == 0:
                        out.pop(cell, None)
                    else:
                        out[cell] = v
        return out

    def unit_cochain(self) -> Dict[tuple, object]:
        if self.coeffs.unit is None:
            raise PreconditionError("coefficients carry no unit")
        return {((), o): c for o, c in self.coeffs.unit.items()}

    def to_vector(self, key: Key, cochain: Mapping[tuple, object]) -> Vector:
        idx = self.complex.index(key)
        return {idx[c]: v for c, v in cochain.items()}

    def from_vector(self, key: Key, v: Mapping[int, object]) -> Dict[tuple, object]:
        cells = self.complex.cells[key]
        return {cells[i]: c for i, c in v.items()}


def cochain_complex(a: DGAlgebra, coeffs: Coefficients, max_weight: int, label: str = "") -> CochainComplex:
    """Weight-truncated normalized Hochschild cochains with coefficients.

    Cells of weight ``0..max_weight + 1`` are built; spots of weight
    ``<= max_weight`` then see their full incoming and outgoing differential.
    """
    L = Letters(a)
    F = a.field
    X = coeffs
    built = max_weight + 1
    cells: Dict[Key, List[tuple]] = {}
    for n in range(built + 1):
        for w in L.words(n):
            s = L.internal(w)
            for o in range(X.dim):
                cells.setdefault((n, X.degrees[o] - s), []).append((w, o))
    cc = CochainComplex(L, X, None)  # type: ignore[arg-type]

    def image(cell):
        w, o = cell
        deg = X.degrees[o] - L.wdeg(w)
        out = []
        for o2, c in X.diff.get(o, {}).items():
            out.append(((w, o2), c))
        # -(-1)^|f| f o b: f o b evaluated at w' is nonzero when b(w') contains w
        sf = -_sgn(deg)
        # b1 part: words w' of the same length with d(w'_k) containing w_k
        e = 0
        for k, l in enumerate(w):
            for i, c in L.diff_into.get(l, ()):
                out.append(((w[:k] + (i,) + w[k + 1:], o), F.mul(F.coerce(sf * -_sgn(e)), c)))
            e += L.sdeg[l]
        # b2 part: split letter k into (i, j)
        e = 0
        for k, l in enumerate(w):
            for i, j, c in L.merge_into.get(l, ()):
                out.append(((w[:k] + (i, j) + w[k + 1:], o), F.mul(F.coerce(sf * -_sgn(e + L.sdeg[i])), c)))
            e += L.sdeg[l]
        # pi u f: (pi u f)(sa | w) = (-1)^{|f| |sa|} a . f(w)
        for i in L.letters:
            for o2, c in X.act_left(i, o).items():
                out.append((((i,) + w, o2), F.mul(F.coerce(_sgn(deg * L.sdeg[i])), c)))
        # -(-1)^|f| f u pi: (f u pi)(w | sa) = (-1)^{|w|} f(w) . a
        ew = L.wdeg(w)
        for i in L.letters:
            for o2, c in X.act_right(i, o).items():
                out.append(((w + (i,), o2), F.mul(F.coerce(-_sgn(deg) * _sgn(ew)), c)))
        return out

    internal, bar = _assemble(F, +1, cells, cc.key_of, image)
    cx = BigradedComplex(F, +1, cells, internal, bar, built, None, label)
    cx.window = cochain_window(L, X, max_weight, cx.is_bigraded())
    cc.complex = cx
    return cc


def cochain_window(L: Letters, X: Coefficients, max_weight: int, bigraded: bool) -> SafeWindow:
    if bigraded:
        return SafeWindow(True, max_exact_weight=max_weight)
    if not L.letters:
        return SafeWindow(False)
    lo_a, hi_a = L.degree_support()
    # total degree of a weight-n cochain: |o| - sum(|a_i| - 1)
    hull = discarded_hull(min(X.degrees), 1 - hi_a, max(X.degrees), 1 - lo_a, max_weight + 2)
    # degree m is exact when neither m nor m + 1 meets a discarded weight; the
    # weight max_weight + 1 is built but its outgoing differential is cut
    lo, hi = hull
    top = discarded_hull(min(X.degrees), 1 - hi_a, max(X.degrees), 1 - lo_a, max_weight + 1)
    lo, hi = min(lo, top[0]), max(hi, top[1])
    return SafeWindow(False, excluded=(lo - 1, hi))


# -- chains ----------------------------------------------------------------------

@dataclass
class ChainComplex:
    """Two-sided bar ``L (x) T(sA-bar) (x) R`` or cyclic chains ``X (x) T(sA-bar)``."""

    letters: Letters
    complex: BigradedComplex
    left_degrees: Tuple[int, ...]
    right_degrees: Tuple[int, ...]
    cyclic: bool = False

    def key_of(self, cell: tuple) -> Key:
        if self.cyclic:
            x, w = cell
            return (len(w), self.left_degrees[x] + self.letters.internal(w))
        l, w, r = cell
        return (len(w), self.left_degrees[l] + self.letters.internal(w) + self.right_degrees[r])


def chain_window(L: Letters, lo_ends: int, hi_ends: int, max_weight: int, bigraded: bool) -> SafeWindow:
    if bigraded:
        return SafeWindow(True, max_exact_weight=max_weight - 1)
    if not L.letters:
        return SafeWindow(False)
    lo_a, hi_a = L.degree_support()
    # total degree of a weight-n chain: ends + sum(|a_i| - 1)
    lo, hi = discarded_hull(lo_ends, lo_a - 1, hi_ends, hi_a - 1, max_weight + 1)
    # the cut removes weights > max_weight; degree m needs m and m - 1 clean
    return SafeWindow(False, excluded=(lo, hi + 1))


def two_sided_bar(a: DGAlgebra, left: Coefficients, right: Coefficients, max_weight: int,
                  label: str = "", normalized: bool = True) -> ChainComplex:
    """``B(L, A, R)`` with ``L`` a right and ``R`` a left DG module, weights ``0..max_weight``."""
    Lt = Letters(a, normalized)
    F = a.field
    cells: Dict[Key, List[tuple]] = {}
    ch = ChainComplex(Lt, None, left.degrees, right.degrees)  # type: ignore[arg-type]
    for n in range(max_weight + 1):
        for w in Lt.words(n):
            for l in range(left.dim):
                for r in range(right.dim):
                    cell = (l, w, r)
                    cells.setdefault(ch.key_of(cell), []).append(cell)

    def image(cell):
        l, w, r = cell
        sl = _sgn(left.degrees[l])
        out = []
        for l2, c in left.diff.get(l, {}).items():
            out.append(((l2, w, r), c))
        for w2, c in Lt.bar_b(w):
            out.append(((l, w2, r), F.mul(F.coerce(sl), c)))
        s = _sgn(left.degrees[l] + Lt.wdeg(w))
        for r2, c in right.diff.get(r, {}).items():
            out.append(((l, w, r2), F.mul(F.coerce(s), c)))
        if w:
            for l2, c in left.act_right(w[0], l).items():
                out.append(((l2, w[1:], r), F.mul(F.coerce(-sl), c)))
            s = _sgn(left.degrees[l] + Lt.wdeg(w[:-1]))
            for r2, c in right.act_left(w[-1], r).items():
                out.append(((l, w[:-1], r2), F.mul(F.coerce(s), c)))
        return out

    internal, bar = _assemble(F, -1, cells, ch.key_of, image)
    cx = BigradedComplex(F, -1, cells, internal, bar, max_weight, None, label)
    ends = [x + y for x in left.degrees for y in right.degrees] or [0]
    cx.window = chain_window(Lt, min(ends), max(ends), max_weight, cx.is_bigraded())
    ch.complex = cx
    return ch


def cyclic_chains(a: DGAlgebra, coeffs: Coefficients, max_weight: int, label: str = "") -> ChainComplex:
    """Hochschild chains ``X (x) T(sA-bar)``, weights ``0..max_weight``."""
    Lt = Letters(a)
    F = a.field
    X = coeffs
    cells: Dict[Key, List[tuple]] = {}
    ch = ChainComplex(Lt, None, X.degrees, (), cyclic=True)  # type: ignore[arg-type]
    for n in range(max_weight + 1):
        for w in Lt.words(n):
            for x in range(X.dim):
                cell = (x, w)
                cells.setdefault(ch.key_of(cell), []).append(cell)

    def image(cell):
        x, w = cell
        sx = _sgn(X.degrees[x])
        out = []
        for x2, c in X.diff.get(x, {}).items():
            out.append(((x2, w), c))
        for w2, c in Lt.bar_b(w):
            out.append(((x, w2), F.mul(F.coerce(sx), c)))
        if w:
            for x2, c in X.act_right(w[0], x).items():
                out.append(((x2, w[1:]), F.mul(F.coerce(-sx), c)))
            last = w[-1]
            s = _sgn(Lt.sdeg[last] * (X.degrees[x] + Lt.wdeg(w[:-1])))
            for x2, c in X.act_left(last, x).items():
                out.append(((x2, w[:-1]), F.mul(F.coerce(s), c)))
        return out

    internal, bar = _assemble(F, -1, cells, ch.key_of, image)
    cx = BigradedComplex(F, -1, cells, internal, bar, max_weight, None, label)
    cx.window = chain_window(Lt, min(X.degrees, default=0), max(X.degrees, default=0), max_weight,
                             cx.is_bigraded())
    ch.complex = cx
    return ch
