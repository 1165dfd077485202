"""Exact linear algebra over the rationals and the integers.

Everything in the package that touches a matrix goes through
:class:`ExactMatrix`.  Matrices are stored as sparse rows (``dict`` column
-> value, no stored zeros).  Two coefficient modes exist:

* ``"Q"`` -- entries are ``int`` or :class:`fractions.Fraction` (an integral
  rational is stored as ``int``);
* ``"Z"`` -- entries are ``int`` and no division ever happens outside the
  Smith normal form routines.

Elimination is fraction-free: rows are scaled to primitive integer vectors
and combined with integer multipliers, so fractions only appear when a
reduced echelon basis is normalised to leading ones at the very end.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import NotContainedError, ValidationError

RATIONAL = "Q"
INTEGER = "Z"

# Dense kernels are used below this size or above this fill ratio.
DENSE_DIM = 64
DENSE_FILL = 0.30

# When set, snf() re-verifies U·m·V = D on every call.
CHECK_INVARIANTS = os.environ.get("COLIMKIT_CHECK", "") == "1"


def scalar(value, ring: str = RATIONAL):
    """Coerce ``value`` (int, Fraction, ``"p/q"`` string) to a scalar of ``ring``."""
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            value = value.numerator
        elif ring == INTEGER:
            raise ValidationError(f"non-integral entry {value} in integer mode")
    elif isinstance(value, int):
        pass
    else:
        # numpy integers and the like
        try:
            iv = int(value)
        except (TypeError, ValueError):
            raise ValidationError(f"not an exact scalar: {value!r}") from None
        if iv != value:
            raise ValidationError(f"not an exact scalar: {value!r}")
        value = iv
    if ring not in (RATIONAL, INTEGER):
        raise ValidationError(f"unknown coefficient mode {ring!r}")
    return value


def format_scalar(value) -> str | int:
    """Serialise a scalar: ints stay ints, other rationals become ``"p/q"``."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return f"{value.numerator}/{value.denominator}"
    return int(value)


def _norm(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class ExactMatrix:
    """An ``nrows × ncols`` matrix over Q or Z in sparse-row form.

    Instances are treated as immutable; every operation returns a new
    matrix.  Matrices act on column vectors, so ``m @ x`` has
    ``len(x) == m.ncols``.
    """

    __slots__ = ("nrows", "ncols", "ring", "_rows")

    def __init__(self, nrows: int, ncols: int, entries: Mapping | None = None,
                 ring: str = RATIONAL):
        if nrows < 0 or ncols < 0:
            raise ValidationError("matrix dimensions must be nonnegative")
        if ring not in (RATIONAL, INTEGER):
            raise ValidationError(f"unknown coefficient mode {ring!r}")
        rows = [dict() for _ in range(nrows)]
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValidationError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            v = scalar(v, ring)
            if v:
                rows[i][j] = v
        self.nrows = nrows
        self.ncols = ncols
        self.ring = ring
        self._rows = rows

    # -- constructors -------------------------------------------------
    @classmethod
    def _wrap(cls, nrows: int, ncols: int, rows: list, ring: str) -> "ExactMatrix":
        """Trusted constructor: ``rows`` are clean dicts and are not copied."""
        m = cls.__new__(cls)
        m.nrows, m.ncols, m.ring, m._rows = nrows, ncols, ring, rows
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ring: str = RATIONAL,
                   ncols: int | None = None) -> "ExactMatrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValidationError("ragged matrix rows")
            row = {}
            for j, v in enumerate(r):
                v = scalar(v, ring)
                if v:
                    row[j] = v
            rows.append(row)
        return cls._wrap(len(rows), ncols, rows, ring)

    @classmethod
    def from_row_dicts(cls, rows: Iterable[Mapping[int, object]], ncols: int,
                       ring: str = RATIONAL) -> "ExactMatrix":
        out = []
        for r in rows:
            row = {}
            for j, v in r.items():
                if not 0 <= j < ncols:
                    raise ValidationError(f"column {j} outside width {ncols}")
                v = scalar(v, ring)
                if v:
                    row[j] = v
            out.append(row)
        return cls._wrap(len(out), ncols, out, ring)

    @classmethod
    def from_columns(cls, cols: Sequence[Mapping[int, object]], nrows: int,
                     ring: str = RATIONAL) -> "ExactMatrix":
        rows = [dict() for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls._wrap(nrows, len(cols), rows, ring)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, ring: str = RATIONAL) -> "ExactMatrix":
        return cls._wrap(nrows, ncols, [dict() for _ in range(nrows)], ring)

    @classmethod
    def identity(cls, n: int, ring: str = RATIONAL) -> "ExactMatrix":
        return cls._wrap(n, n, [{i: 1} for i in range(n)], ring)

    # -- access --------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, 0)

    def row(self, i: int) -> dict:
        return dict(self._rows[i])

    def row_dicts(self) -> list[dict]:
        """The sparse rows (shared, do not mutate)."""
        return self._rows

    def columns(self) -> list[dict]:
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def entries(self) -> dict:
        return {(i, j): v for i, r in enumerate(self._rows) for j, v in r.items()}

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def fill(self) -> float:
        cells = self.nrows * self.ncols
        return self.nnz() / cells if cells else 0.0

    def prefers_dense(self) -> bool:
        return max(self.nrows, self.ncols) < DENSE_DIM or self.fill() >= DENSE_FILL

    def is_zero(self) -> bool:
        return not any(self._rows)

    def to_dense(self) -> list[list]:
        out = []
        for r in self._rows:
            row = [0] * self.ncols
            for j, v in r.items():
                row[j] = v
            out.append(row)
        return out

    # -- algebra ------------------------------------------------------
    def _join_ring(self, other: "ExactMatrix") -> str:
        return RATIONAL if RATIONAL in (self.ring, other.ring) else INTEGER

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self.ncols, self.nrows, self.columns(), self.ring)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValidationError(f"shape mismatch {self.shape} @ {other.shape}")
            orows = other._rows
            out = []
            for r in self._rows:
                acc: dict = {}
                for k, a in r.items():
                    for j, b in orows[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                out.append({j: _norm(v) for j, v in acc.items() if v})
            return ExactMatrix._wrap(self.nrows, other.ncols, out, self._join_ring(other))
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValidationError("vector length mismatch")
        return [_norm(sum((a * vec[j] for j, a in r.items()), 0)) for r in self._rows]

    def apply(self, vec: Mapping[int, object]) -> dict:
        """Multiply by a sparse column vector given as ``{index: value}``."""
        out: dict = {}
        # row-wise is fine for the sizes this is used on
        for i, r in enumerate(self._rows):
            s = 0
            if len(r) < len(vec):
                for j, a in r.items():
                    b = vec.get(j)
                    if b:
                        s += a * b
            else:
                for j, b in vec.items():
                    a = r.get(j)
                    if a:
                        s += a * b
            if s:
                out[i] = _norm(s)
        return out

    def _combine(self, other: "ExactMatrix", sign: int) -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValidationError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for r, s in zip(self._rows, other._rows):
            acc = dict(r)
            for j, v in s.items():
                w = acc.get(j, 0) + sign * v
                if w:
                    acc[j] = _norm(w)
                else:
                    acc.pop(j, None)
            out.append(acc)
        return ExactMatrix._wrap(self.nrows, self.ncols, out, self._join_ring(other))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = scalar(c, self.ring)
        if not c:
            return ExactMatrix.zeros(self.nrows, self.ncols, self.ring)
        rows = [{j: _norm(c * v) for j, v in r.items()} for r in self._rows]
        return ExactMatrix._wrap(self.nrows, self.ncols, rows, self.ring)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product; row (i, k) -> i*other.nrows + k."""
        rows = []
        for r in self._rows:
            for s in other._rows:
                rows.append({j * other.ncols + l: _norm(a * b)
                             for j, a in r.items() for l, b in s.items()})
        return ExactMatrix._wrap(self.nrows * other.nrows, self.ncols * other.ncols,
                                 rows, self._join_ring(other))

    def take_rows(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._wrap(len(idx), self.ncols, [dict(self._rows[i]) for i in idx],
                                 self.ring)

    def take_cols(self, idx: Sequence[int]) -> "ExactMatrix":
        pos = {j: k for k, j in enumerate(idx)}
        rows = [{pos[j]: v for j, v in r.items() if j in pos} for r in self._rows]
        return ExactMatrix._wrap(self.nrows, len(idx), rows, self.ring)

    def as_ring(self, ring: str) -> "ExactMatrix":
        if ring == self.ring:
            return self
        if ring == INTEGER:
            for r in self._rows:
                for v in r.values():
                    if isinstance(v, Fraction):
                        raise ValidationError("matrix has non-integral entries")
        return ExactMatrix._wrap(self.nrows, self.ncols, [dict(r) for r in self._rows], ring)

    @staticmethod
    def vstack(mats: Sequence["ExactMatrix"], ncols: int | None = None,
               ring: str | None = None) -> "ExactMatrix":
        if not mats:
            return ExactMatrix.zeros(0, ncols or 0, ring or RATIONAL)
        ncols = mats[0].ncols
        rows = []
        for m in mats:
            if m.ncols != ncols:
                raise ValidationError("vstack width mismatch")
            rows.extend(dict(r) for r in m._rows)
        ring = ring or (RATIONAL if any(m.ring == RATIONAL for m in mats) else INTEGER)
        return ExactMatrix._wrap(len(rows), ncols, rows, ring)

    @staticmethod
    def hstack(mats: Sequence["ExactMatrix"], nrows: int | None = None,
               ring: str | None = None) -> "ExactMatrix":
        if not mats:
            return ExactMatrix.zeros(nrows or 0, 0, ring or RATIONAL)
        nrows = mats[0].nrows
        rows = [dict() for _ in range(nrows)]
        off = 0
        for m in mats:
            if m.nrows != nrows:
                raise ValidationError("hstack height mismatch")
            for i, r in enumerate(m._rows):
                for j, v in r.items():
                    rows[i][off + j] = v
            off += m.ncols
        ring = ring or (RATIONAL if any(m.ring == RATIONAL for m in mats) else INTEGER)
        return ExactMatrix._wrap(nrows, off, rows, ring)

    @staticmethod
    def block_diag(mats: Sequence["ExactMatrix"], ring: str = RATIONAL) -> "ExactMatrix":
        rows = []
        off = 0
        for m in mats:
            rows.extend({off + j: v for j, v in r.items()} for r in m._rows)
            off += m.ncols
        return ExactMatrix._wrap(len(rows), off, rows, ring)

    def __repr__(self):
        if self.nrows * self.ncols <= 64:
            body = "; ".join(" ".join(str(format_scalar(v)) for v in r) for r in self.to_dense())
            return f"ExactMatrix[{self.ring}]({self.nrows}x{self.ncols}: {body})"
        return f"ExactMatrix[{self.ring}]({self.nrows}x{self.ncols}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# fraction-free elimination kernels
# ---------------------------------------------------------------------------

def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def _integer_row(row: Mapping) -> dict:
    """Scale a rational row to a primitive integer row with the same span."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den == 1:
        return _primitive({k: int(v) for k, v in row.items()})
    return _primitive({k: int(v * den) for k, v in row.items()})


def _sparse_echelon(rows: Iterable[dict], piv: dict | None = None) -> dict:
    """Row echelon form keyed by pivot (leading) column; rows are primitive ints."""
    piv = {} if piv is None else piv
    for v in rows:
        while v:
            c = min(v)
            p = piv.get(c)
            if p is None:
                piv[c] = v
                break
            a = v[c]
            b = p[c]
            g = gcd(a, b)
            a //= g
            b //= g
            if b != 1:
                if b == -1:
                    v = {k: -x for k, x in v.items()}
                else:
                    v = {k: b * x for k, x in v.items()}
            else:
                v = dict(v)
            for k, x in p.items():
                y = v.get(k, 0) - a * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            v = _primitive(v)
    return piv


def _dense_echelon(rows: list[dict], ncols: int) -> dict:
    """Bareiss fraction-free elimination on a dense copy; same output shape."""
    M = []
    for r in rows:
        d = [0] * ncols
        for j, v in r.items():
            d[j] = v
        M.append(d)
    n = len(M)
    prev = 1
    r = 0
    piv = {}
    for c in range(ncols):
        if r == n:
            break
        best = -1
        for i in range(r, n):
            x = M[i][c]
            if x and (best < 0 or abs(x) < abs(M[best][c])):
                best = i
                if abs(x) == 1:
                    break
        if best < 0:
            continue
        M[r], M[best] = M[best], M[r]
        pr = M[r]
        p = pr[c]
        for i in range(r + 1, n):
            row = M[i]
            x = row[c]
            for j in range(c, ncols):
                row[j] = (p * row[j] - x * pr[j]) // prev
        prev = p
        piv[c] = _primitive({j: pr[j] for j in range(c, ncols) if pr[j]})
        r += 1
    return piv


def _echelon(rows: list[dict], ncols: int, dense: bool | None = None) -> dict:
    """Echelon form of integer rows, choosing the dense or sparse kernel."""
    rows = [r for r in rows if r]
    if dense is None:
        cells = len(rows) * ncols
        nnz = sum(len(r) for r in rows)
        dense = max(len(rows), ncols) < DENSE_DIM or (cells and nnz / cells >= DENSE_FILL)
    if dense and rows:
        return _dense_echelon(rows, ncols)
    return _sparse_echelon(rows)


def _back_substitute(piv: dict) -> list[tuple[int, dict]]:
    """Reduce an echelon form; returns ``(pivot, row)`` with leading 1, sorted."""
    done: dict = {}
    for c in sorted(piv, reverse=True):
        v = piv[c]
        hits = [k for k in v if k != c and k in done]
        if hits:
            v = dict(v)
            for k in hits:
                x = v.get(k)
                if not x:
                    continue
                p = done[k]
                b = p[k]
                g = gcd(x, b)
                a, b = x // g, b // g
                if b != 1:
                    v = {j: b * y for j, y in v.items()}
                for j, y in p.items():
                    z = v.get(j, 0) - a * y
                    if z:
                        v[j] = z
                    else:
                        v.pop(j, None)
            v = _primitive(v)
        done[c] = v
    out = []
    for c in sorted(done):
        v = done[c]
        lead = v[c]
        if lead == 1:
            row = v
        else:
            row = {j: (y // lead if y % lead == 0 else Fraction(y, lead)) for j, y in v.items()}
        out.append((c, row))
    return out


def _rows_of(m) -> list[dict]:
    return [_integer_row(r) for r in m.row_dicts() if r]


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """A subspace of Q^n held by its canonical reduced row echelon basis.

    Two equal subspaces have identical ``rows``, so equality is a plain
    comparison.
    """

    __slots__ = ("ambient_dim", "rows", "pivots")

    def __init__(self, ambient_dim: int, rref_rows: Sequence[tuple[int, dict]]):
        self.ambient_dim = ambient_dim
        self.pivots = tuple(c for c, _ in rref_rows)
        self.rows = tuple(r for _, r in rref_rows)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Mapping]) -> "Subspace":
        ints = []
        for v in vectors:
            if v:
                if any(not 0 <= k < ambient_dim for k in v):
                    raise ValidationError("vector index outside ambient space")
                ints.append(_integer_row(v))
        return cls(ambient_dim, _back_substitute(_echelon(ints, ambient_dim)))

    @classmethod
    def row_space(cls, m: ExactMatrix) -> "Subspace":
        return cls(m.ncols, _back_substitute(_echelon(_rows_of(m), m.ncols)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, [])

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [(i, {i: 1}) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def basis(self) -> ExactMatrix:
        return ExactMatrix._wrap(self.dim, self.ambient_dim, [dict(r) for r in self.rows],
                                 RATIONAL)

    def reduce(self, vec: Mapping) -> dict:
        """Remainder of ``vec`` after subtracting its projection on pivot columns."""
        v = {k: x for k, x in vec.items() if x}
        for c, r in zip(self.pivots, self.rows):
            x = v.get(c)
            if x:
                for j, y in r.items():
                    z = v.get(j, 0) - x * y
                    if z:
                        v[j] = _norm(z)
                    else:
                        v.pop(j, None)
        return v

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coordinates(self, vec: Mapping) -> list:
        """Coefficients of ``vec`` in the canonical basis (vec must lie in the space)."""
        if not self.contains(vec):
            raise NotContainedError("vector not in subspace", witness=dict(vec))
        return [_norm(vec.get(c, 0)) for c in self.pivots]

    def annihilator(self) -> "Subspace":
        """``{x : <x, v> = 0 for all v in self}``, i.e. the kernel of the basis."""
        return _kernel_from_rref(self.ambient_dim, list(zip(self.pivots, self.rows)))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    __hash__ = None

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _kernel_from_rref(ncols: int, rref_rows: list[tuple[int, dict]]) -> Subspace:
    pivset = {c for c, _ in rref_rows}
    free = [j for j in range(ncols) if j not in pivset]
    if not free:
        return Subspace.zero(ncols)
    where: dict[int, list] = {}
    for c, r in rref_rows:
        for j, v in r.items():
            if j != c:
                where.setdefault(j, []).append((c, v))
    vecs = []
    for f in free:
        v = {f: 1}
        for c, x in where.get(f, ()):
            v[c] = -x
        vecs.append(v)
    return Subspace.span(ncols, vecs)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RrefResult:
    rank: int
    row_space: Subspace
    kernel: Subspace


def rref(m: ExactMatrix) -> RrefResult:
    """Rank, canonical row space and canonical kernel ``{x : m x = 0}``."""
    if m.ring != RATIONAL:
        raise ValidationError("rref needs rational mode; use snf for integer matrices")
    rows = _back_substitute(_echelon(_rows_of(m), m.ncols))
    return RrefResult(len(rows), Subspace(m.ncols, rows), _kernel_from_rref(m.ncols, rows))


def rank(m: ExactMatrix) -> int:
    """Rank over Q (equal to the rank over Z); works in both modes."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.nrows > m.ncols * 2 and not m.prefers_dense():
        m = m.transpose()
    return len(_echelon(_rows_of(m), m.ncols))


def kernel(m: ExactMatrix) -> Subspace:
    rows = _back_substitute(_echelon(_rows_of(m), m.ncols))
    return _kernel_from_rref(m.ncols, rows)


def column_space(m: ExactMatrix) -> Subspace:
    return Subspace.row_space(m.transpose())


def solve(m: ExactMatrix, rhs: ExactMatrix) -> ExactMatrix | None:
    """A particular ``X`` with ``m @ X == rhs`` (free variables zero), or ``None``."""
    if rhs.nrows != m.nrows:
        raise ValidationError("solve: row count mismatch")
    n = m.ncols
    aug = ExactMatrix.hstack([m.as_ring(RATIONAL), rhs.as_ring(RATIONAL)])
    rows = _back_substitute(_echelon(_rows_of(aug), aug.ncols))
    out = [dict() for _ in range(n)]
    for c, r in rows:
        if c >= n:
            return None
        for j, v in r.items():
            if j >= n:
                out[c][j - n] = v
    return ExactMatrix._wrap(n, rhs.ncols, out, RATIONAL)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValidationError(f"ambient dimension mismatch {a.ambient_dim} vs {b.ambient_dim}")
    if a.is_full() or b.dim == 0:
        return a
    if b.is_full() or a.dim == 0:
        return b
    piv = {c: _integer_row(r) for c, r in zip(a.pivots, a.rows)}
    piv = _sparse_echelon((_integer_row(r) for r in b.rows), piv)
    return Subspace(a.ambient_dim, _back_substitute(piv))


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked annihilator bases."""
    if a.ambient_dim != b.ambient_dim:
        raise ValidationError(f"ambient dimension mismatch {a.ambient_dim} vs {b.ambient_dim}")
    if a.is_full() or b.dim == 0:
        return b
    if b.is_full() or a.dim == 0:
        return a
    stacked = subspace_sum(a.annihilator(), b.annihilator())
    return stacked.annihilator()


def quotient_dim(big: Subspace, small: Subspace) -> int:
    if big.ambient_dim != small.ambient_dim:
        raise ValidationError("ambient dimension mismatch")
    for r in small.rows:
        if not big.contains(r):
            raise NotContainedError("subspace not contained in the larger one", witness=dict(r))
    return big.dim - small.dim


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SNFResult:
    invariant_factors: tuple[int, ...]
    U: ExactMatrix
    V: ExactMatrix

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _dense_snf(A: list[list[int]], nrows: int, ncols: int, track: bool):
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if track else None
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if track else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        if track:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        a, b = A[dst], A[src]
        for k in range(ncols):
            if b[k]:
                a[k] -= q * b[k]
        if track:
            a, b = U[dst], U[src]
            for k in range(nrows):
                if b[k]:
                    a[k] -= q * b[k]

    def add_col(dst, src, q):  # col dst -= q * col src
        for r in A:
            if r[src]:
                r[dst] -= q * r[src]
        if track:
            for r in V:
                if r[src]:
                    r[dst] -= q * r[src]

    factors = []
    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            row = A[i]
            for j in range(t, ncols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            moved = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    if A[i][t]:
                        swap_rows(t, i)
                        moved = True
                        break
            if moved:
                continue
            p = A[t][t]
            for j in range(t + 1, ncols):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    if A[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            p = A[t][t]
            bad = None
            for i in range(t + 1, nrows):
                row = A[i]
                for j in range(t + 1, ncols):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if track:
                U[t] = [-x for x in U[t]]
        factors.append(A[t][t])
        t += 1
    return factors, U, V


def snf(m: ExactMatrix) -> SNFResult:
    """Smith normal form with unimodular transforms: ``U @ m @ V`` is diagonal."""
    if m.ring != INTEGER:
        raise ValidationError("snf needs integer mode")
    A = m.to_dense()
    factors, U, V = _dense_snf(A, m.nrows, m.ncols, track=True)
    res = SNFResult(tuple(factors), ExactMatrix.from_dense(U, INTEGER, m.nrows),
                    ExactMatrix.from_dense(V, INTEGER, m.ncols))
    if CHECK_INVARIANTS:
        check_snf(m, res)
    return res


def check_snf(m: ExactMatrix, res: SNFResult) -> None:
    from .errors import InvariantViolation
    D = res.U @ m @ res.V
    for (i, j), v in D.entries().items():
        if i != j or i >= res.rank or v != res.invariant_factors[i]:
            raise InvariantViolation(f"U·m·V not in Smith form at ({i}, {j})")
    fs = res.invariant_factors
    for a, b in zip(fs, fs[1:]):
        if b % a:
            raise InvariantViolation("invariant factors do not form a divisibility chain")


def invariant_factors(m: ExactMatrix) -> tuple[int, ...]:
    """Nonzero invariant factors without transforms.

    Unit pivots are eliminated sparsely first (each one contributes a
    factor 1 and removes a row and a column); whatever survives is handed
    to the dense Smith routine.
    """
    if m.ring != INTEGER:
        raise ValidationError("invariant_factors needs integer mode")
    rows = {i: dict(r) for i, r in enumerate(m.row_dicts()) if r}
    colidx: dict[int, set] = {}
    for i, r in rows.items():
        for j in r:
            colidx.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(rows, key=lambda k: len(rows[k])):
            r = rows.get(i)
            if r is None:
                continue
            best = None
            for j, v in r.items():
                if v == 1 or v == -1:
                    cnt = len(colidx[j])
                    if best is None or cnt < best[0]:
                        best = (cnt, j)
                        if cnt == 1:
                            break
            if best is None:
                continue
            j = best[1]
            u = r[j]
            for k in list(colidx[j]):
                if k == i:
                    continue
                rk = rows[k]
                f = rk[j] * u
                for jj, v in r.items():
                    w = rk.get(jj, 0) - f * v
                    if w:
                        if jj not in rk:
                            colidx[jj].add(k)
                        rk[jj] = w
                    else:
                        if jj in rk:
                            del rk[jj]
                            colidx[jj].discard(k)
                if not rk:
                    del rows[k]
            for jj in r:
                colidx[jj].discard(i)
            del rows[i]
            units += 1
            progress = True
    live_cols = sorted(j for j, s in colidx.items() if s)
    if not rows or not live_cols:
        return (1,) * units
    cpos = {j: k for k, j in enumerate(live_cols)}
    A = []
    for r in rows.values():
        d = [0] * len(live_cols)
        for j, v in r.items():
            d[cpos[j]] = v
        A.append(d)
    rest, _, _ = _dense_snf(A, len(A), len(live_cols), track=False)
    return (1,) * units + tuple(rest)


def determinant(m: ExactMatrix):
    """Exact determinant (used to certify unimodularity)."""
    if m.nrows != m.ncols:
        raise ValidationError("determinant of a non-square matrix")
    A = [[Fraction(x) for x in r] for r in m.to_dense()]
    n = m.nrows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return _norm(det)


def inverse(m: ExactMatrix) -> ExactMatrix:
    n = m.nrows
    x = solve(m, ExactMatrix.identity(n))
    if x is None or m.nrows != m.ncols or rank(m) != n:
        raise ValidationError("matrix is not invertible")
    return x
