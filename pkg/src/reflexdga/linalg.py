"""Exact linear algebra over Q and F_p.

Scalars are ``gmpy2.mpq`` over the rationals (``fractions.Fraction`` when
gmpy2 is missing) and plain ``int`` in ``range(p)`` over a prime field.  Matrices are stored sparsely as a mapping
``(row, col) -> nonzero scalar``; elimination works on rows held as dicts.

Pivoting is deterministic: rows are processed in index order and each new
row pivots on its smallest surviving column, so echelon forms (and therefore
every basis handed out by this module) depend only on the input matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import NotAComplexError

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

Scalar = object  # Fraction | int
Vector = Dict[int, Scalar]  # sparse vector: index -> nonzero scalar


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: rationals (``characteristic == 0``) or F_p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {self.characteristic}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    @property
    def tag(self) -> str:
        return "Q" if self.characteristic == 0 else f"Fp {self.characteristic}"

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"

    # -- scalar arithmetic ---------------------------------------------
    @property
    def zero(self):
        return _Q(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return _Q(1) if self.characteristic == 0 else 1

    def coerce(self, x) -> Scalar:
        """Bring an int, Fraction or ``"a/b"`` string into the field.

        Raises ``ArithmeticError`` when a denominator vanishes mod p.
        """
        if isinstance(x, str):
            x = Fraction(x.strip())
        p = self.characteristic
        if p == 0:
            return _Q(x)
        if isinstance(x, (Fraction, type(_Q(0)))):
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise ArithmeticError(f"{x} is not defined in F_{p}")
            return (num * pow(den, -1, p)) % p
        if isinstance(x, int):
            return x % p
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        p = self.characteristic
        if p == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / _Q(a)
        a %= p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a) -> str:
        if self.characteristic == 0:
            a = _Q(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a % self.characteristic)


QQ = FieldSpec(0)


# -- sparse vectors ---------------------------------------------------------

def vec_add(F: FieldSpec, u: Mapping[int, Scalar], v: Mapping[int, Scalar], scale=None) -> Vector:
    """Return ``u + scale * v`` as a new sparse vector."""
    out = dict(u)
    for k, c in v.items():
        if scale is not None:
            c = F.mul(c, scale)
        s = F.add(out.get(k, F.zero), c)
        if s == 0:
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_iadd(F: FieldSpec, u: Vector, v: Mapping[int, Scalar], scale=None) -> None:
    """In-place ``u += scale * v``."""
    for k, c in v.items():
        if scale is not None:
            c = F.mul(c, scale)
        s = F.add(u.get(k, F.zero), c)
        if s == 0:
            u.pop(k, None)
        else:
            u[k] = s


def vec_scale(F: FieldSpec, u: Mapping[int, Scalar], c) -> Vector:
    if c == 0:
        return {}
    return {k: F.mul(a, c) for k, a in u.items()}


# -- sparse matrices --------------------------------------------------------

@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Scalar] = dc_field(default_factory=dict)
    field: FieldSpec = QQ

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        clean = {}
        F = self.field
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = F.coerce(v)
            if v != 0:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    # -- constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QQ) -> "SparseMatrix":
        return cls(rows, cols, {}, field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, field)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], field: FieldSpec = QQ, cols: Optional[int] = None) -> "SparseMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if v != 0:
                    entries[(i, j)] = v
        return cls(rows, cols, entries, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Scalar]], rows: int, field: FieldSpec = QQ) -> "SparseMatrix":
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                entries[(i, j)] = v
        return cls(rows, len(columns), entries, field)

    @classmethod
    def from_rows(cls, row_vecs: Sequence[Mapping[int, Scalar]], cols: int, field: FieldSpec = QQ) -> "SparseMatrix":
        entries = {}
        for i, row in enumerate(row_vecs):
            for j, v in row.items():
                entries[(i, j)] = v
        return cls(len(row_vecs), cols, entries, field)

    # -- views ---------------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> List[List]:
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def row_dicts(self) -> List[Vector]:
        out: List[Vector] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def col_dicts(self) -> List[Vector]:
        out: List[Vector] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def __getitem__(self, rc: Tuple[int, int]):
        return self.entries.get(rc, self.field.zero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and dict(self.entries) == dict(other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    # -- algebra -------------------------------------------------------------
    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}, self.field)

    T = property(transpose)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        right = other.row_dicts()
        acc: Dict[Tuple[int, int], Scalar] = {}
        for (r, k), v in self.entries.items():
            for c, w in right[k].items():
                key = (r, c)
                acc[key] = F.add(acc.get(key, F.zero), F.mul(v, w))
        return SparseMatrix(self.rows, other.cols, acc, F)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        F = self.field
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = F.add(acc.get(k, F.zero), v)
        return SparseMatrix(self.rows, self.cols, acc, F)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, c) -> "SparseMatrix":
        F = self.field
        c = F.coerce(c)
        return SparseMatrix(self.rows, self.cols, {k: F.mul(v, c) for k, v in self.entries.items()}, F)

    def apply(self, v: Mapping[int, Scalar]) -> Vector:
        """Matrix times sparse column vector."""
        F = self.field
        cols = self.col_dicts()
        out: Vector = {}
        for j, a in v.items():
            vec_iadd(F, out, cols[j], a)
        return out

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        F = self.field
        entries = {}
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                entries[(r1 * other.rows + r2, c1 * other.cols + c2)] = F.mul(v1, v2)
        return SparseMatrix(self.rows * other.rows, self.cols * other.cols, entries, F)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMatrix":
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: j for j, c in enumerate(cols)}
        entries = {(rmap[r], cmap[c]): v for (r, c), v in self.entries.items() if r in rmap and c in cmap}
        return SparseMatrix(len(rows), len(cols), entries, self.field)


def block_matrix(blocks: Sequence[Sequence[Optional[SparseMatrix]]], row_sizes: Sequence[int],
                 col_sizes: Sequence[int], field: FieldSpec = QQ) -> SparseMatrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    entries = {}
    r0 = 0
    for bi, brow in enumerate(blocks):
        c0 = 0
        for bj, blk in enumerate(brow):
            if blk is not None:
                if blk.shape != (row_sizes[bi], col_sizes[bj]):
                    raise ValueError(f"block ({bi},{bj}) has shape {blk.shape}, expected "
                                     f"{(row_sizes[bi], col_sizes[bj])}")
                for (r, c), v in blk.entries.items():
                    entries[(r0 + r, c0 + c)] = v
            c0 += col_sizes[bj]
        r0 += row_sizes[bi]
    return SparseMatrix(sum(row_sizes), sum(col_sizes), entries, field)


# -- elimination -------------------------------------------------------------

class Echelon:
    """Incrementally built echelon basis of a subspace of ``F^n``.

    Each stored row has a distinct pivot column holding 1, and all entries of
    a stored row lie at or right of its pivot.  Rows may carry a *tag*, a
    sparse vector recording which labelled generators produced them, which is
    how coordinates modulo a subspace are recovered.
    """

    def __init__(self, field: FieldSpec):
        self.field = field
        self.pivots: Dict[int, Vector] = {}
        self.tags: Dict[int, Vector] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Mapping[int, Scalar], tag: Optional[Vector] = None) -> Tuple[Vector, Vector]:
        """Reduce ``v`` against the stored rows; returns (remainder, tag)."""
        F = self.field
        row = dict(v)
        tg = dict(tag) if tag is not None else {}
        pivots = self.pivots
        while row:
            hits = [c for c in row if c in pivots]
            if not hits:
                break
            c = min(hits)
            f = row[c]
            vec_iadd(F, row, pivots[c], F.neg(f))
            t = self.tags.get(c)
            if t:
                vec_iadd(F, tg, t, F.neg(f))
        return row, tg

    def add(self, v: Mapping[int, Scalar], tag: Optional[Vector] = None) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        F = self.field
        row, tg = self.reduce(v, tag)
        if not row:
            return False
        c = min(row)
        inv = F.inv(row[c])
        self.pivots[c] = vec_scale(F, row, inv)
        self.tags[c] = vec_scale(F, tg, inv)
        return True

    def contains(self, v: Mapping[int, Scalar]) -> bool:
        return not self.reduce(v)[0]

    def reduced_rows(self) -> Dict[int, Vector]:
        """Fully reduced (RREF) rows keyed by pivot column."""
        F = self.field
        out: Dict[int, Vector] = {}
        for c in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[c])
            for c2 in [k for k in row if k != c and k in out]:
                vec_iadd(F, row, out[c2], F.neg(row[c2]))
            out[c] = row
        return out


def echelon_of_rows(rows: Iterable[Mapping[int, Scalar]], field: FieldSpec) -> Echelon:
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    return ech


def rank(m: SparseMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    rows = m.row_dicts() if m.rows <= m.cols else m.col_dicts()
    return len(echelon_of_rows(rows, m.field))


def kernel_basis(m: SparseMatrix) -> List[Vector]:
    """Basis of ``{v : m v = 0}``; one vector per free column, in column order."""
    F = m.field
    rref = echelon_of_rows(m.row_dicts(), F).reduced_rows()
    basis = []
    for j in range(m.cols):
        if j in rref:
            continue
        v: Vector = {j: F.one}
        for c, row in rref.items():
            a = row.get(j)
            if a is not None:
                v[c] = F.neg(a)
        basis.append(v)
    for v in basis:
        if m.apply(v):
            raise AssertionError("kernel vector failed verification")
    return basis


def image_basis(m: SparseMatrix) -> List[Vector]:
    """Echelon basis of the column space of ``m``."""
    ech = echelon_of_rows(m.col_dicts(), m.field)
    return [ech.pivots[c] for c in sorted(ech.pivots)]


def solve(m: SparseMatrix, b: Mapping[int, Scalar]) -> Optional[Vector]:
    """One solution of ``m x = b`` or None when inconsistent."""
    F = m.field
    ech = Echelon(F)
    for j, col in enumerate(m.col_dicts()):
        ech.add(col, {j: F.one})
    rem, tag = ech.reduce(b)
    if rem:
        return None
    x = tag
    # tag records b - sum(x_j col_j) ... with sign: reduce subtracts
    x = vec_scale(F, x, F.neg(F.one))
    if m.apply(x) != {k: v for k, v in b.items() if v != 0}:
        raise AssertionError("solve failed verification")
    return x


def inverse(m: SparseMatrix) -> SparseMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    F = m.field
    cols = []
    for i in range(m.rows):
        x = solve(m, {i: F.one})
        if x is None:
            raise ZeroDivisionError("matrix is singular")
        cols.append(x)
    return SparseMatrix.from_columns(cols, m.rows, F)


def is_invertible(m: SparseMatrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def check_complex(d_in: SparseMatrix, d_out: SparseMatrix) -> None:
    comp = d_out @ d_in
    if comp.entries:
        (r, c), v = min(comp.entries.items())
        raise NotAComplexError(f"not a complex: (d_out d_in)[{r},{c}] = {comp.field.format(v)}")


def homology_at(d_in: Optional[SparseMatrix], d_out: Optional[SparseMatrix], dim: Optional[int] = None) -> int:
    """``dim ker(d_out) - rank(d_in)`` for the spot between two maps.

    Either map may be None (absent); ``dim`` is then needed when both are.
    """
    if dim is None:
        if d_out is not None:
            dim = d_out.cols
        elif d_in is not None:
            dim = d_in.rows
        else:
            raise ValueError("dimension of the middle term is unknown")
    if d_in is not None and d_in.rows != dim:
        raise ValueError("d_in does not land in the middle term")
    if d_out is not None and d_out.cols != dim:
        raise ValueError("d_out does not start at the middle term")
    if d_in is not None and d_out is not None:
        check_complex(d_in, d_out)
    ker = dim - (rank(d_out) if d_out is not None else 0)
    return ker - (rank(d_in) if d_in is not None else 0)


@dataclass
class HomologyBasis:
    """Cycles, boundaries and chosen class representatives at one spot."""

    field: FieldSpec
    dim: int
    representatives: List[Vector]
    _echelon: Echelon
    _cycles: Echelon

    @property
    def rank(self) -> int:
        return len(self.representatives)

    def is_cycle(self, v: Mapping[int, Scalar]) -> bool:
        return self._cycles.contains(v)

    def coordinates(self, v: Mapping[int, Scalar]) -> Vector:
        """Coordinates of the class of cycle ``v`` in the representative basis."""
        rem, tag = self._echelon.reduce(v)
        if rem:
            raise ValueError("vector is not a cycle")
        return vec_scale(self.field, tag, self.field.neg(self.field.one))


def homology_basis(d_in: Optional[SparseMatrix], d_out: Optional[SparseMatrix], dim: int,
                   field: FieldSpec) -> HomologyBasis:
    """Deterministic representatives for ``ker(d_out) / im(d_in)``."""
    F = field
    ech = Echelon(F)
    if d_in is not None:
        for col in d_in.col_dicts():
            ech.add(col)
    if d_out is not None:
        cycles = kernel_basis(d_out)
    else:
        cycles = [{j: F.one} for j in range(dim)]
    reps = []
    for z in cycles:
        k = len(reps)
        if ech.add(z, {k: F.one}):
            reps.append(z)
    cyc = echelon_of_rows(cycles, F)
    return HomologyBasis(F, dim, reps, ech, cyc)
