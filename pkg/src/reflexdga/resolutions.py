"""Truncated free resolutions: bar resolutions and the explicit resolution of k over k[x]/x^2.

A :class:`Resolution` holds the truncated resolution ``P`` (a chain-type
:class:`BigradedComplex`, bar part lowering weight), the module it resolves,
and the augmented complex in which the module sits at weight ``-1``.  Acyclicity
of the augmented complex inside the safe window is the certificate that ``P``
resolves the module there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import DGAlgebra, DGModule, require_valid, validate_module
from .bar import Coefficients, two_sided_bar
from .complexes import BigradedComplex, Key, SafeWindow, TruncationPolicy, require_nonempty_window
from .errors import InvariantViolation, PreconditionError
from .linalg import SparseMatrix, Vector, vec_iadd

__all__ = ["Resolution", "bar_resolution", "bimodule_bar_resolution", "shift_totalization_resolution",
           "is_dual_numbers_deg1"]


@dataclass
class Resolution:
    complex: BigradedComplex
    augmented: BigradedComplex
    module_degrees: Tuple[int, ...]
    policy: TruncationPolicy
    kind: str

    @property
    def window(self) -> SafeWindow:
        return self.complex.window

    def term_dims(self) -> Dict[int, int]:
        """Dimension of the weight-n term ``P_n`` for each built weight."""
        return self.complex.weight_dims()

    def homology(self) -> Dict[Tuple[int, Optional[int]], int]:
        """Exact nonzero homology of ``P``, keyed ``(total degree, weight)``."""
        out = {}
        for k, e in self.complex.homology(self.policy).items():
            if e.exact and e.dim:
                out[k] = e.dim
        return out

    def homology_by_degree(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (m, _), d in self.homology().items():
            out[m] = out.get(m, 0) + d
        return out

    def cone_homology(self) -> Dict[Tuple[int, Optional[int]], int]:
        """Nonzero exact homology of the augmented complex (empty when P resolves the module)."""
        return {k: e.dim for k, e in self.augmented.homology(self.policy).items() if e.exact and e.dim}

    def is_resolution(self) -> bool:
        return not self.cone_homology()


def _augment(P: BigradedComplex, module: Coefficients,
             eps: Dict[Key, List[Vector]]) -> BigradedComplex:
    """Attach the module at weight -1 (degree q sits at internal degree q)."""
    F = P.field
    cells = dict(P.cells)
    internal = dict(P.internal)
    bar = dict(P.bar)
    mcells: Dict[Key, List[tuple]] = {}
    for j, q in enumerate(module.degrees):
        mcells.setdefault((-1, q), []).append(("aug", j))
    cells.update(mcells)
    pos = {key: {c[1]: i for i, c in enumerate(cl)} for key, cl in mcells.items()}
    for key, cl in mcells.items():
        n, q = key
        tgt = (-1, q + 1)
        if tgt in mcells:
            cols = []
            for _, j in cl:
                v: Vector = {}
                for jj, c in module.diff.get(j, {}).items():
                    vec_iadd(F, v, {pos[tgt][jj]: F.neg(c)})
                cols.append(v)
            internal[key] = SparseMatrix.from_columns(cols, len(mcells[tgt]), F)
    for key, cols in eps.items():
        tgt = (-1, key[1])
        if tgt not in mcells:
            continue
        mapped = [{pos[tgt][j]: c for j, c in col.items()} for col in cols]
        bar[key] = SparseMatrix.from_columns(mapped, len(mcells[tgt]), F)
    w = P.window
    aug = BigradedComplex(F, -1, cells, internal, bar, P.built_weight, w, P.label + "+aug")
    aug.check_d_squared()
    return aug


def _bar_type(a: DGAlgebra, right: Coefficients, policy: TruncationPolicy, kind: str,
              normalized: bool = True) -> Resolution:
    left = Coefficients.regular(a)
    ch = two_sided_bar(a, left, right, policy.max_weight, f"{kind}({a.label})", normalized)
    P = ch.complex
    P.check_d_squared()
    require_nonempty_window(P.window, policy)
    # eps(a_l (x) [] (x) r) = a_l . r
    eps: Dict[Key, List[Vector]] = {}
    for key, cl in P.cells.items():
        if key[0] != 0:
            continue
        eps[key] = [dict(right.act_left(l, r)) for (l, _, r) in cl]
    aug = _augment(P, right, eps)
    res = Resolution(P, aug, right.degrees, policy, kind)
    if not res.is_resolution():
        raise InvariantViolation(f"{kind}: augmentation cone has homology {res.cone_homology()}")
    return res


def _prepared(a: DGAlgebra) -> DGAlgebra:
    require_valid(a)
    return a if a.unit_index() is not None else a.with_unit_basis()


def bar_resolution(m: DGModule, policy: TruncationPolicy = TruncationPolicy(),
                   normalized: bool = True) -> Resolution:
    """Bar resolution ``A (x) (sA-bar)^n (x) M``, ``n <= N``, with augmentation to ``M``.

    ``normalized=False`` uses all of ``A`` in the interior (for cross-checks).
    """
    rep = validate_module(m)
    if not rep.ok:
        raise PreconditionError("invalid module: " + rep.violations[0].message)
    a = m.algebra
    require_valid(a)
    if a.unit_index() is None:
        raise PreconditionError("the unit must be a basis element of the algebra")
    return _bar_type(a, Coefficients.left_module(m), policy, "bar_resolution", normalized)


def bimodule_bar_resolution(a: DGAlgebra, policy: TruncationPolicy = TruncationPolicy()) -> Resolution:
    """``A (x) (sA-bar)^n (x) A`` with the multiplication map to the diagonal bimodule."""
    a = _prepared(a)
    return _bar_type(a, Coefficients.regular(a), policy, "bimodule_bar_resolution")


def is_dual_numbers_deg1(a: DGAlgebra) -> bool:
    """True for the algebra on {1, x} with x^2 = 0, |x| = 1 and zero differential."""
    if a.dim != 2 or a.unit_index() is None or a.diff:
        return False
    u = a.unit_index()
    x = 1 - u
    return a.degrees[x] == 1 and a.degrees[u] == 0 and not a.mult.get((x, x))


def shift_totalization_resolution(a: DGAlgebra, policy: TruncationPolicy = TruncationPolicy()) -> Resolution:
    """Totalization of ``... -> S^{-i} A --x--> S^{-i+1} A -> ... -> A`` resolving k.

    Column ``c`` (``0 <= c <= N``) has generator ``g_c`` in total degree 0 and
    ``x g_c`` in total degree 1; ``d(g_c) = x g_{c-1}``.  Columns are placed at
    weight ``c`` and internal degree ``c`` (resp. ``c + 1``).
    """
    if not is_dual_numbers_deg1(a):
        raise PreconditionError("shift_totalization_resolution needs k[x]/x^2 with |x| = 1 and d = 0")
    F = a.field
    N = policy.max_weight
    cells: Dict[Key, List[tuple]] = {}
    for c in range(N + 1):
        cells[(c, c)] = [("g", c)]
        cells[(c, c + 1)] = [("xg", c)]
    internal: Dict[Key, SparseMatrix] = {}
    bar: Dict[Key, SparseMatrix] = {}
    for c in range(N + 1):
        internal[(c, c)] = SparseMatrix.zeros(1, 1, F)
        if c >= 1:
            bar[(c, c)] = SparseMatrix.identity(1, F)       # g_c -> x g_{c-1}
    P = BigradedComplex(F, -1, cells, internal, bar, N, SafeWindow(True, max_exact_weight=N - 1),
                        f"shift_totalization({a.label})")
    P.check_d_squared()
    require_nonempty_window(P.window, policy)
    ground = Coefficients(a, ("k",), (0,), {}, {}, {}, label="k")
    eps = {(0, 0): [{0: F.one}], (0, 1): [{}]}
    aug = _augment(P, ground, eps)
    res = Resolution(P, aug, (0,), policy, "shift_totalization")
    if not res.is_resolution():
        raise InvariantViolation("shift totalization does not resolve k in its window")
    return res


def t_action(res: Resolution) -> Dict[tuple, tuple]:
    """The chain map ``t: P -> P`` lowering the column index (cells to cells)."""
    out = {}
    for key, cl in res.complex.cells.items():
        for kind, c in cl:
            if c >= 1:
                out[(kind, c)] = (kind, c - 1)
    return out
