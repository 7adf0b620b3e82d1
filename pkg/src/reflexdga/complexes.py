"""Weight-truncated bigraded complexes and their (co)homology.

A cell block is indexed by ``(weight n, internal degree p)``; the total degree
is ``p + direction * n``.  Two differentials act on blocks:

* ``internal``: ``(n, p) -> (n, p + 1)`` (comes from the differentials of the
  algebra and modules),
* ``bar``: ``(n, p) -> (n + direction, p)`` (comes from products).

``direction = +1`` for cochain complexes (the bar part raises weight, and the
weight truncation is a quotient complex); ``direction = -1`` for resolutions
and chain complexes (the bar part lowers weight, the truncation is a
subcomplex).  When every internal block vanishes the complex splits along
``p`` and homology is computed per ``(n, p)`` spot; otherwise per total
degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .errors import InvariantViolation, WindowError
from .linalg import FieldSpec, HomologyBasis, SparseMatrix, block_matrix, homology_basis

Key = Tuple[int, int]
INF = float("inf")


@dataclass(frozen=True)
class TruncationPolicy:
    """Weight cutoff ``max_weight`` and the reported degree window ``[lo, hi]``."""

    max_weight: int = 6
    degree_window: Tuple[int, int] = (-10, 10)

    def __post_init__(self):
        lo, hi = self.degree_window
        if self.max_weight < 0:
            raise ValueError("max_weight must be nonnegative")
        if lo > hi:
            raise ValueError("degree window must satisfy lo <= hi")

    def in_window(self, m: int) -> bool:
        lo, hi = self.degree_window
        return lo <= m <= hi


@dataclass(frozen=True)
class SafeWindow:
    """Where truncated numbers equal untruncated ones.

    In bigraded mode an entry ``(m, n)`` is exact when ``n <= max_exact_weight``
    (and, for truncated presentations, its internal degree is at most
    ``max_internal``).  In total mode a degree ``m`` is exact when it lies
    outside ``excluded``, the hull of degrees the discarded weights can touch.
    """

    bigraded: bool
    max_exact_weight: Optional[int] = None
    excluded: Tuple[float, float] = (INF, -INF)  # empty hull by default
    max_internal: Optional[int] = None

    def exact_total(self, m: int) -> bool:
        lo, hi = self.excluded
        return not (lo <= m <= hi)

    def exact_entry(self, m: int, n: Optional[int], p: Optional[int] = None) -> bool:
        if self.bigraded:
            if n is None or self.max_exact_weight is None or n > self.max_exact_weight:
                return False
            if self.max_internal is not None and (p is None or p > self.max_internal):
                return False
            return True
        return self.exact_total(m)

    def describe(self) -> str:
        if self.bigraded:
            s = f"weights 0..{self.max_exact_weight} exact in every degree"
            if self.max_internal is not None:
                s += f", internal degree <= {self.max_internal}"
            return s
        lo, hi = self.excluded
        if lo > hi:
            return "all degrees exact"
        left = "" if lo == -INF else f"degrees <= {int(lo) - 1}"
        right = "" if hi == INF else f"degrees >= {int(hi) + 1}"
        return " and ".join(x for x in (left, right) if x) or "no exact degrees"


def discarded_hull(lo_const: int, lo_slope: int, hi_const: int, hi_slope: int, first: int) -> Tuple[float, float]:
    """Hull of the union over ``n >= first`` of ``[lo_const + n lo_slope, hi_const + n hi_slope]``."""
    lo = lo_const + first * lo_slope if lo_slope >= 0 else -INF
    hi = hi_const + first * hi_slope if hi_slope <= 0 else INF
    return (lo, hi)


@dataclass
class HomologyEntry:
    dim: int
    exact: bool
    internal: Optional[int] = None


@dataclass
class BigradedComplex:
    field: FieldSpec
    direction: int
    cells: Dict[Key, List[tuple]] = dc_field(default_factory=dict)
    internal: Dict[Key, SparseMatrix] = dc_field(default_factory=dict)
    bar: Dict[Key, SparseMatrix] = dc_field(default_factory=dict)
    built_weight: int = 0
    window: Optional[SafeWindow] = None
    label: str = ""

    # -- structure ----------------------------------------------------------
    def total_degree(self, key: Key) -> int:
        n, p = key
        return p + self.direction * n

    def dim(self, key: Key) -> int:
        return len(self.cells.get(key, ()))

    def index(self, key: Key) -> Dict[tuple, int]:
        cache = self.__dict__.setdefault("_index", {})
        if key not in cache:
            cache[key] = {c: i for i, c in enumerate(self.cells.get(key, ()))}
        return cache[key]

    def is_bigraded(self) -> bool:
        return all(m.is_zero() for m in self.internal.values())

    def weight_dims(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (n, p), c in self.cells.items():
            out[n] = out.get(n, 0) + len(c)
        return out

    def total_degrees(self) -> List[int]:
        return sorted({self.total_degree(k) for k, c in self.cells.items() if c})

    def keys_in_total(self, m: int) -> List[Key]:
        return sorted(k for k, c in self.cells.items() if c and self.total_degree(k) == m)

    def total_matrix(self, m: int) -> Tuple[SparseMatrix, List[Key], List[Key]]:
        src = self.keys_in_total(m)
        tgt = self.keys_in_total(m + 1)
        tpos = {k: i for i, k in enumerate(tgt)}
        blocks = [[None] * len(src) for _ in tgt]
        for j, (n, p) in enumerate(src):
            for blk, tk in ((self.internal.get((n, p)), (n, p + 1)),
                            (self.bar.get((n, p)), (n + self.direction, p))):
                if blk is not None and tk in tpos:
                    i = tpos[tk]
                    blocks[i][j] = blk if blocks[i][j] is None else blocks[i][j] + blk
        rows = [self.dim(k) for k in tgt]
        cols = [self.dim(k) for k in src]
        if not src or not tgt:
            return SparseMatrix.zeros(sum(rows), sum(cols), self.field), src, tgt
        return block_matrix(blocks, rows, cols, self.field), src, tgt

    def check_d_squared(self) -> None:
        for m in self.total_degrees():
            d0, _, mid = self.total_matrix(m)
            d1, mid2, _ = self.total_matrix(m + 1)
            if mid != mid2 or d0.rows == 0 or d1.rows == 0:
                continue
            comp = d1 @ d0
            if comp.entries:
                raise InvariantViolation(f"{self.label or 'complex'}: total differential squares to nonzero "
                                         f"in degree {m}")

    # -- homology -------------------------------------------------------------
    def spot_basis(self, key: Key) -> HomologyBasis:
        """Homology at a bigraded spot, using only bar blocks."""
        n, p = key
        d_in = self.bar.get((n - self.direction, p))
        d_out = self.bar.get((n, p))
        if d_out is not None and self.dim((n + self.direction, p)) == 0:
            d_out = None
        return homology_basis(d_in, d_out, self.dim(key), self.field)

    def total_basis(self, m: int) -> Tuple[HomologyBasis, List[Key]]:
        d_in, _, mid = self.total_matrix(m - 1)
        d_out, mid2, _ = self.total_matrix(m)
        dim = sum(self.dim(k) for k in mid2)
        if d_in.rows != dim:
            d_in = None
        return homology_basis(d_in if d_in is not None and d_in.cols else None,
                              d_out if d_out.rows else None, dim, self.field), mid2

    def homology(self, policy: Optional[TruncationPolicy] = None) -> Dict[Tuple[int, Optional[int]], HomologyEntry]:
        """Homology dims keyed ``(total degree, weight)``; weight is None in total mode."""
        w = self.window
        out: Dict[Tuple[int, Optional[int]], HomologyEntry] = {}
        if w is not None and w.bigraded:
            for key in sorted(self.cells):
                if not self.cells[key]:
                    continue
                m = self.total_degree(key)
                if policy is not None and not policy.in_window(m):
                    continue
                h = self.spot_basis(key).rank
                prev = out.get((m, key[0]))
                if prev is not None:
                    h += prev.dim
                out[(m, key[0])] = HomologyEntry(h, w.exact_entry(m, key[0], key[1]), key[1])
            return out
        for m in self.total_degrees():
            if policy is not None and not policy.in_window(m):
                continue
            h = self.total_basis(m)[0].rank
            out[(m, None)] = HomologyEntry(h, w.exact_total(m) if w else False)
        return out


def require_nonempty_window(window: SafeWindow, policy: TruncationPolicy) -> None:
    if window.bigraded:
        if window.max_exact_weight is None or window.max_exact_weight < 0:
            raise WindowError("empty safe window: increase --max-weight")
        return
    lo, hi = policy.degree_window
    if not any(window.exact_total(m) for m in range(lo, hi + 1)):
        raise WindowError("empty safe window: no degree in the requested window is exact; "
                          "increase --max-weight")
