"""Hochschild cohomology and homology tables, and the cup product on HH^*."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Mapping, Optional, Tuple

from .algebra import DGAlgebra, matrix_algebra_inflation, require_valid
from .bar import CochainComplex, Coefficients, cochain_complex, cyclic_chains
from .complexes import BigradedComplex, SafeWindow, TruncationPolicy, require_nonempty_window
from .errors import InvariantViolation, PreconditionError
from .linalg import FieldSpec, HomologyBasis, Vector

__all__ = ["HHTable", "CupTable", "hh_cohomology", "hh_homology", "cup_product",
           "cochain_cup_table", "matrix_algebra_inflation"]


def _prepared(a: DGAlgebra) -> DGAlgebra:
    require_valid(a)
    return a if a.unit_index() is not None else a.with_unit_basis()


@dataclass
class HHTable:
    """Dimensions keyed by ``(total degree m, weight n)``.

    ``weight`` is ``None`` when the algebra has a nonzero differential and
    the table is computed per total degree only.  ``exact[key]`` is False
    for entries outside the safe window.
    """

    kind: str
    label: str
    field: FieldSpec
    policy: TruncationPolicy
    window: SafeWindow
    entries: Dict[Tuple[int, Optional[int]], int]
    exact: Dict[Tuple[int, Optional[int]], bool]
    stabilized: Dict[int, bool]
    euler_ok: bool
    euler_columns: List[Tuple[object, int, int]] = dc_field(default_factory=list)
    caveats: List[str] = dc_field(default_factory=list)

    @property
    def bigraded(self) -> bool:
        return self.window.bigraded

    def dim(self, m: int, n: Optional[int] = None) -> int:
        return self.entries.get((m, n), 0)

    def is_exact(self, m: int, n: Optional[int] = None) -> bool:
        if (m, n) in self.exact:
            return self.exact[(m, n)]
        return self.window.exact_entry(m, n)

    def exact_entries(self) -> Dict[Tuple[int, Optional[int]], int]:
        return {k: v for k, v in self.entries.items() if self.exact[k]}

    def nonzero(self, exact_only: bool = True) -> Dict[Tuple[int, Optional[int]], int]:
        return {k: v for k, v in sorted(self.entries.items(), key=_order)
                if v and (self.exact[k] or not exact_only)}

    def degrees(self) -> List[int]:
        return sorted({m for m, _ in self.entries})

    def weights(self) -> List[int]:
        return sorted({n for _, n in self.entries if n is not None})

    def comparable(self) -> Dict[Tuple[int, Optional[int]], int]:
        """Exact entries with zeros dropped; the natural equality test between tables."""
        return {k: v for k, v in self.exact_entries().items() if v}


def _order(item):
    (m, n), _ = item
    return (m, -1 if n is None else n)


def _euler(cx: BigradedComplex, raw: Mapping[Tuple[int, int], int]) -> Tuple[bool, List]:
    """Alternating sums of cell dims against homology dims, per internal-degree column."""
    cols = []
    ok = True
    if cx.window is not None and cx.window.bigraded:
        ps = sorted({p for (_, p), c in cx.cells.items() if c})
        for p in ps:
            chi_c = sum((-1) ** cx.total_degree(k) * len(c) for k, c in cx.cells.items() if k[1] == p)
            chi_h = sum((-1) ** cx.total_degree(k) * h for k, h in raw.items() if k[1] == p)
            cols.append((p, chi_c, chi_h))
            ok &= chi_c == chi_h
    else:
        chi_c = sum((-1) ** cx.total_degree(k) * len(c) for k, c in cx.cells.items())
        chi_h = sum((-1) ** m * h for m, h in raw.items())
        cols.append(("total", chi_c, chi_h))
        ok = chi_c == chi_h
    return ok, cols


def _raw_homology(cx: BigradedComplex) -> Dict:
    if cx.window.bigraded:
        return {k: cx.spot_basis(k).rank for k, c in sorted(cx.cells.items()) if c}
    return {m: cx.total_basis(m)[0].rank for m in cx.total_degrees()}


def _table(kind: str, label: str, cx: BigradedComplex, policy: TruncationPolicy, report_weight: int,
           rebuild=None) -> HHTable:
    cx.check_d_squared()
    w = cx.window
    require_nonempty_window(w, policy)
    raw = _raw_homology(cx)
    ok, cols = _euler(cx, raw)
    if not ok:
        raise InvariantViolation(f"Euler characteristic mismatch in {label}: {cols}")
    entries: Dict[Tuple[int, Optional[int]], int] = {}
    exact: Dict[Tuple[int, Optional[int]], bool] = {}
    if w.bigraded:
        for (n, p), h in raw.items():
            m = cx.total_degree((n, p))
            if n > report_weight or not policy.in_window(m):
                continue
            entries[(m, n)] = entries.get((m, n), 0) + h
            e = w.exact_entry(m, n, p)
            exact[(m, n)] = exact.get((m, n), True) and e
        # zero entries still carry a flag so "zero elsewhere" claims are checkable
        lo, hi = policy.degree_window
        for n in range(report_weight + 1):
            for m in range(lo, hi + 1):
                if (m, n) not in entries:
                    entries[(m, n)] = 0
                    exact[(m, n)] = w.exact_entry(m, n, None if w.max_internal is None else _internal_for(cx, m, n))
        stab = {}
        for m in range(lo, hi + 1):
            top = entries.get((m, w.max_exact_weight), 0)
            stab[m] = all(exact.get((m, n), False) for n in range(w.max_exact_weight + 1)) and top == 0
    else:
        lo, hi = policy.degree_window
        for m in range(lo, hi + 1):
            entries[(m, None)] = raw.get(m, 0)
            exact[(m, None)] = w.exact_total(m)
        stab = {}
        prev = rebuild() if rebuild is not None else None
        for m in range(lo, hi + 1):
            if prev is None:
                stab[m] = exact[(m, None)]
            else:
                stab[m] = exact[(m, None)] and prev.get(m, 0) == raw.get(m, 0)
    return HHTable(kind, label, cx.field, policy, w, entries, exact, stab, ok, cols)


def _internal_for(cx: BigradedComplex, m: int, n: int) -> int:
    return m - cx.direction * n


def hh_cohomology(a: DGAlgebra, policy: TruncationPolicy = TruncationPolicy()) -> HHTable:
    """Dimensions of HH^*(A) from normalized cochains ``Hom((sA-bar)^n, A)``, ``n <= N``.

    Per-weight entries are reported in bigraded mode (zero differential) and
    are never summed over weights.
    """
    a = _prepared(a)
    cc = cochain_complex(a, Coefficients.regular(a), policy.max_weight, a.label)
    rebuild = None
    if not cc.complex.window.bigraded and policy.max_weight > 0:
        def rebuild():
            small = cochain_complex(a, Coefficients.regular(a), policy.max_weight - 1).complex
            return {m: h for m, h in _raw_homology(small).items()}
    return _table("cohomology", a.label, cc.complex, policy, policy.max_weight, rebuild)


def hh_homology(a, policy: TruncationPolicy = TruncationPolicy()) -> HHTable:
    """Dimensions of HH_*(A) from chains ``A (x) (sA-bar)^n``, ``n <= N``.

    ``a`` may be a :class:`~reflexdga.koszul.TruncatedPresentation`; then only
    cells of internal degree at most the declared top degree count as exact.
    Degrees are cohomological (homological degree = minus total degree).
    """
    top = None
    caveats = []
    if hasattr(a, "declared_top_degree"):
        top = a.declared_top_degree
        caveats.append(f"truncated presentation: structure above internal degree {top} discarded")
        a = a.algebra
    a = _prepared(a)
    ch = cyclic_chains(a, Coefficients.regular(a), policy.max_weight, a.label)
    cx = ch.complex
    if top is not None:
        if not cx.window.bigraded:
            raise PreconditionError("truncated presentations must have zero differential")
        cx.window = SafeWindow(True, cx.window.max_exact_weight, max_internal=top)
    rebuild = None
    if not cx.window.bigraded and policy.max_weight > 0:
        def rebuild():
            return _raw_homology(cyclic_chains(a, Coefficients.regular(a), policy.max_weight - 1).complex)
    t = _table("homology", a.label, cx, policy, policy.max_weight, rebuild)
    t.caveats.extend(caveats)
    return t


# -- cup products -----------------------------------------------------------------

@dataclass
class ClassSpace:
    """Cohomology classes living at one spot (bigraded) or total degree."""

    degree: int
    weight: Optional[int]
    cells: List[tuple]
    basis: HomologyBasis
    exact: bool

    def vector(self, cochain: Mapping[tuple, object]) -> Optional[Vector]:
        idx = {c: i for i, c in enumerate(self.cells)}
        out: Vector = {}
        for c, v in cochain.items():
            if c not in idx:
                return None
            out[idx[c]] = v
        return out

    def cochain(self, k: int) -> Dict[tuple, object]:
        return {self.cells[i]: c for i, c in self.basis.representatives[k].items()}


@dataclass
class CupTable:
    """Structure constants of the cup product on truncated cohomology classes.

    ``classes`` lists ``(degree, weight, k)`` labels; ``constants[(x, y)]`` is
    the product expanded in class labels.  Products leaving the safe window
    are listed in ``skipped``.
    """

    label: str
    field: FieldSpec
    classes: List[Tuple[int, Optional[int], int]]
    constants: Dict[Tuple[tuple, tuple], Dict[tuple, object]]
    unit: Dict[tuple, object]
    skipped: List[Tuple[tuple, tuple]]
    unital: bool
    associative: bool
    spaces: Dict[Tuple[int, Optional[int]], ClassSpace] = dc_field(default_factory=dict, repr=False)
    complex: Optional[CochainComplex] = dc_field(default=None, repr=False)

    def product(self, x: tuple, y: tuple) -> Optional[Dict[tuple, object]]:
        if (x, y) in self.constants:
            return self.constants[(x, y)]
        return None

    def classes_at(self, m: int, n: Optional[int] = None) -> List[tuple]:
        return [c for c in self.classes if c[0] == m and c[1] == n]

    def multiply_cochains(self, f, g):
        return self.complex.cup(f, g)

    def class_of(self, cochain: Mapping[tuple, object]) -> Optional[Dict[tuple, object]]:
        """Coordinates of a cocycle in class labels, or None outside the computed spaces."""
        return _classify(self.complex, self.spaces, cochain)

    def power_basis_check(self, generator: tuple, top: int) -> Dict[int, bool]:
        """For each i <= top, whether generator^i is a nonzero class spanning its space."""
        cur = self.spaces[generator[:2]].cochain(generator[2])
        out = {1: _spans(self, cur)}
        for i in range(2, top + 1):
            cur = self.complex.cup(cur, self.spaces[generator[:2]].cochain(generator[2]))
            out[i] = _spans(self, cur)
        return out


def _spans(table: CupTable, cochain) -> bool:
    coords = table.class_of(cochain)
    if not coords:
        return False
    m, n = next(iter(coords))[:2]
    return len(table.classes_at(m, n)) == 1


def _key_of_cochain(cc: CochainComplex, cochain: Mapping[tuple, object]):
    keys = {cc.key_of(c) for c in cochain}
    return keys


def _classify(cc: CochainComplex, spaces: Mapping, cochain: Mapping[tuple, object]):
    if not cochain:
        return {}
    cx = cc.complex
    if cx.window.bigraded:
        keys = {cc.key_of(c) for c in cochain}
        out: Dict[tuple, object] = {}
        for key in keys:
            part = {c: v for c, v in cochain.items() if cc.key_of(c) == key}
            m = cx.total_degree(key)
            sp = spaces.get((m, key[0]))
            if sp is None:
                return None
            vec = sp.vector(part)
            if vec is None or not sp.basis.is_cycle(vec):
                raise InvariantViolation("cup product of cocycles is not a cocycle")
            for k, c in sp.basis.coordinates(vec).items():
                out[(m, key[0], k)] = c
        return out
    degs = {cc.cell_degree(c) for c in cochain}
    if len(degs) != 1:
        raise InvariantViolation("cochain is not homogeneous")
    m = degs.pop()
    sp = spaces.get((m, None))
    if sp is None:
        return None
    vec = sp.vector(cochain)
    if vec is None or not sp.basis.is_cycle(vec):
        raise InvariantViolation("cup product of cocycles is not a cocycle")
    return {(m, None, k): c for k, c in sp.basis.coordinates(vec).items()}


def _class_spaces(cc: CochainComplex, policy: TruncationPolicy) -> Dict[Tuple[int, Optional[int]], ClassSpace]:
    cx = cc.complex
    w = cx.window
    spaces: Dict[Tuple[int, Optional[int]], ClassSpace] = {}
    if w.bigraded:
        for key in sorted(cx.cells):
            n, p = key
            m = cx.total_degree(key)
            if n > policy.max_weight or not policy.in_window(m) or not cx.cells[key]:
                continue
            if (m, n) in spaces:
                raise PreconditionError("several internal degrees share one (degree, weight) spot")
            spaces[(m, n)] = ClassSpace(m, n, list(cx.cells[key]), cx.spot_basis(key), w.exact_entry(m, n, p))
    else:
        for m in cx.total_degrees():
            if not policy.in_window(m) or not w.exact_total(m):
                continue
            basis, keys = cx.total_basis(m)
            cells = [c for k in keys for c in cx.cells[k]]
            spaces[(m, None)] = ClassSpace(m, None, cells, basis, True)
    return spaces


def cochain_cup_table(cc: CochainComplex, policy: TruncationPolicy, label: str = "") -> CupTable:
    """Cup product structure constants for a cochain complex with algebra coefficients."""
    F = cc.letters.field
    spaces = {k: s for k, s in _class_spaces(cc, policy).items() if s.exact}
    classes = [(m, n, k) for (m, n), sp in sorted(spaces.items(), key=lambda kv: (kv[0][0], kv[0][1] or 0))
               for k in range(sp.basis.rank)]
    reps = {c: spaces[c[:2]].cochain(c[2]) for c in classes}
    constants: Dict[Tuple[tuple, tuple], Dict[tuple, object]] = {}
    skipped = []
    for x in classes:
        for y in classes:
            prod = cc.cup(reps[x], reps[y])
            coords = _classify(cc, spaces, prod)
            if coords is None:
                skipped.append((x, y))
                continue
            constants[(x, y)] = coords
    unit = {}
    unital = True
    if cc.coeffs.unit is not None:
        u = cc.unit_cochain()
        coords = _classify(cc, spaces, u)
        unit = coords or {}
        for x in classes:
            for side in (cc.cup(u, reps[x]), cc.cup(reps[x], u)):
                if _classify(cc, spaces, side) != {x: F.one}:
                    unital = False
    associative = True
    for x in classes:
        for y in classes:
            xy = constants.get((x, y))
            if xy is None:
                continue
            for z in classes:
                yz = constants.get((y, z))
                if yz is None:
                    continue
                left = _expand(constants, xy, z, F, right=True)
                right = _expand(constants, yz, x, F, right=False)
                if left is None or right is None:
                    continue
                if left != right:
                    associative = False
    if not unital:
        raise InvariantViolation(f"unit class is not a two-sided unit in {label}")
    if not associative:
        raise InvariantViolation(f"cup product not associative in {label}")
    return CupTable(label, F, classes, constants, unit, skipped, unital, associative, spaces, cc)


def _expand(constants, coords, other, F, right: bool):
    out: Dict[tuple, object] = {}
    for c, v in coords.items():
        key = (c, other) if right else (other, c)
        prod = constants.get(key)
        if prod is None:
            return None
        for d, w in prod.items():
            s = F.add(out.get(d, F.zero), F.mul(v, w))
            if s == 0:
                out.pop(d, None)
            else:
                out[d] = s
    return out


def cup_product(a: DGAlgebra, policy: TruncationPolicy = TruncationPolicy()) -> CupTable:
    """Cup product on HH^*(A) restricted to classes in the safe window."""
    a = _prepared(a)
    cc = cochain_complex(a, Coefficients.regular(a), policy.max_weight, a.label)
    cc.complex.check_d_squared()
    return cochain_cup_table(cc, policy, a.label)
