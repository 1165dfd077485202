"""Chain complexes, double complexes and their homology.

Conventions: homological grading, ``d_n : C_n -> C_{n-1}`` is a
``dims[n-1] x dims[n]`` matrix acting on column vectors.  A complex is
zero outside its stored degree range, so homology in the top stored degree
is the homology of the bounded complex (callers that truncate a longer
complex build one extra degree and discard the top).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import exactla as la
from .errors import InvariantViolation, ValidationError
from .exactla import ExactMatrix, Subspace


class ChainComplex:
    """A bounded chain complex of finite free modules over Q or Z."""

    def __init__(self, dims: Mapping[int, int], differentials: Mapping[int, ExactMatrix] | None = None,
                 ring: str = la.RATIONAL, check: bool = True):
        if not dims:
            raise ValidationError("a chain complex needs at least one degree")
        lo, hi = min(dims), max(dims)
        if sorted(dims) != list(range(lo, hi + 1)):
            raise ValidationError("chain complex degrees must form a contiguous range")
        self.ring = ring
        self.lo, self.hi = lo, hi
        self.dims = {n: int(dims[n]) for n in range(lo, hi + 1)}
        self._d: dict[int, ExactMatrix] = {}
        for n, m in (differentials or {}).items():
            if not lo < n <= hi:
                if m.nrows * m.ncols and not m.is_zero():
                    raise ValidationError(f"differential d_{n} outside degree range {lo}..{hi}")
                continue
            if m.shape != (self.dims[n - 1], self.dims[n]):
                raise ValidationError(
                    f"d_{n} has shape {m.shape}, expected {(self.dims[n - 1], self.dims[n])}")
            if ring == la.INTEGER:
                m = m.as_ring(la.INTEGER)
            self._d[n] = m
        if check:
            self.check()

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> ExactMatrix:
        """The differential out of degree ``n`` (zero matrix when none stored)."""
        m = self._d.get(n)
        if m is None:
            return ExactMatrix.zeros(self.dim(n - 1), self.dim(n), self.ring)
        return m

    def check(self) -> None:
        for n in range(self.lo + 2, self.hi + 1):
            a, b = self._d.get(n - 1), self._d.get(n)
            if a is None or b is None:
                continue
            if not (a @ b).is_zero():
                raise InvariantViolation(f"d_{n - 1} ∘ d_{n} ≠ 0")

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * k for n, k in self.dims.items())

    def truncate(self, top: int) -> "ChainComplex":
        """Brutal truncation keeping degrees ``<= top`` (a quotient complex)."""
        top = min(top, self.hi)
        dims = {n: self.dims[n] for n in range(self.lo, top + 1)}
        ds = {n: m for n, m in self._d.items() if n <= top}
        return ChainComplex(dims, ds, self.ring, check=False)

    def __repr__(self):
        body = ", ".join(f"{n}:{k}" for n, k in self.dims.items())
        return f"ChainComplex[{self.ring}]({body})"


@dataclass(eq=False)
class HomologyClassSpace:
    """Homology in one degree.

    Over Q ``dim`` is the dimension and ``representatives`` (rows) are
    cycles whose classes form a basis.  Over Z ``betti`` and ``torsion``
    (invariant factors > 1) describe the group; ``dim`` equals ``betti``.
    """

    degree: int
    ring: str
    dim: int
    betti: int
    torsion: tuple = ()
    representatives: ExactMatrix | None = None
    # cached data for expressing cycles in the representative basis
    _boundaries: Subspace | None = field(default=None, repr=False)
    _reduced_reps: ExactMatrix | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        out = {"degree": self.degree, "dim": self.dim}
        if self.ring == la.INTEGER:
            out["betti"] = self.betti
            out["torsion"] = list(self.torsion)
        return out

    def describe(self) -> str:
        if self.ring == la.INTEGER:
            parts = []
            if self.betti:
                parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
            parts.extend(f"Z/{t}" for t in self.torsion)
            return " + ".join(parts) if parts else "0"
        return str(self.dim)

    def coordinates(self, cycle: Mapping[int, object]) -> list:
        """Coordinates of the class of ``cycle`` in the representative basis."""
        if self.representatives is None:
            raise ValidationError("homology computed without representatives")
        z = self._boundaries.reduce(cycle)
        if self.dim == 0:
            if z:
                raise InvariantViolation(f"cycle is not a boundary in degree {self.degree} "
                                         "although homology vanishes")
            return []
        x = la.solve(self._reduced_reps, ExactMatrix.from_columns([z], self._reduced_reps.nrows))
        if x is None:
            raise InvariantViolation(f"vector is not a cycle in degree {self.degree}")
        return [x[i, 0] for i in range(self.dim)]


def _cycles(c: ChainComplex, n: int) -> Subspace:
    if n == c.lo or c.dim(n - 1) == 0:
        return Subspace.full(c.dim(n))
    return la.kernel(c.d(n))


def _boundaries(c: ChainComplex, n: int) -> Subspace:
    if n + 1 > c.hi or c.dim(n + 1) == 0:
        return Subspace.zero(c.dim(n))
    return la.column_space(c.d(n + 1))


def _homology_q_degree(c: ChainComplex, n: int, representatives: bool) -> HomologyClassSpace:
    dim_n = c.dim(n)
    if not representatives:
        r_out = la.rank(c.d(n)) if n > c.lo and c.dim(n - 1) and dim_n else 0
        r_in = la.rank(c.d(n + 1)) if n < c.hi and c.dim(n + 1) and dim_n else 0
        h = dim_n - r_out - r_in
        return HomologyClassSpace(n, la.RATIONAL, h, h)
    z = _cycles(c, n)
    b = _boundaries(c, n)
    reps = []
    reduced = []
    span = b
    target = z.dim - b.dim
    for v in z.rows:
        if len(reps) == target:
            break
        w = span.reduce(v)
        if w:
            reps.append(v)
            reduced.append(b.reduce(v))
            span = la.subspace_sum(span, Subspace.span(dim_n, [w]))
    if len(reps) != target:
        raise InvariantViolation(f"boundaries not contained in cycles in degree {n}")
    rep_m = ExactMatrix.from_row_dicts(reps, dim_n)
    red_cols = ExactMatrix.from_columns(reduced, dim_n)
    return HomologyClassSpace(n, la.RATIONAL, target, target, (), rep_m, b, red_cols)


def homology_q(c: ChainComplex, degrees: Iterable[int] | None = None,
               representatives: bool = True) -> list[HomologyClassSpace]:
    """Rational homology; integer complexes are tensored with Q."""
    degs = list(c.degrees if degrees is None else degrees)
    return [_homology_q_degree(c, n, representatives) for n in degs]


def homology_z(c: ChainComplex, degrees: Iterable[int] | None = None) -> list[HomologyClassSpace]:
    """Integral homology: Betti numbers and torsion from invariant factors."""
    if c.ring != la.INTEGER:
        raise ValidationError("homology_z needs an integer complex")
    degs = list(c.degrees if degrees is None else degrees)
    factors: dict[int, tuple] = {}

    def fac(n):
        if n not in factors:
            if c.lo < n <= c.hi and c.dim(n) and c.dim(n - 1):
                factors[n] = la.invariant_factors(c.d(n))
            else:
                factors[n] = ()
        return factors[n]

    out = []
    for n in degs:
        f_in = fac(n + 1)
        betti = c.dim(n) - len(fac(n)) - len(f_in)
        torsion = tuple(x for x in f_in if x > 1)
        out.append(HomologyClassSpace(n, la.INTEGER, betti, betti, torsion))
    return out


# ---------------------------------------------------------------------------
# integral homology with generators
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class IntegralHomology:
    """H_n over Z as ``Z/orders[0] + ... `` (order 0 means a free summand).

    ``kernel`` is a Z-basis of the cycles (columns); ``transform`` maps
    kernel coordinates to coordinates on the cyclic generators.
    """

    degree: int
    orders: tuple
    kernel: ExactMatrix
    transform: ExactMatrix
    keep: tuple
    generators: ExactMatrix

    def coordinates(self, cycle: Mapping[int, object]) -> list[int]:
        col = ExactMatrix.from_columns([cycle], self.kernel.nrows)
        y = la.solve(self.kernel, col)
        if y is None:
            raise InvariantViolation(f"vector is not a cycle in degree {self.degree}")
        yz = [y[i, 0] for i in range(y.nrows)]
        if any(not isinstance(v, int) for v in yz):
            raise InvariantViolation("cycle has non-integral kernel coordinates")
        full = self.transform @ yz
        out = []
        for k, order in zip(self.keep, self.orders):
            v = full[k]
            out.append(v % order if order else v)
        return out


def integral_homology(c: ChainComplex, n: int) -> IntegralHomology:
    if c.ring != la.INTEGER:
        raise ValidationError("integral_homology needs an integer complex")
    dim_n = c.dim(n)
    if n > c.lo and c.dim(n - 1) and dim_n:
        s = la.snf(c.d(n))
        r = s.rank
        kernel = s.V.take_cols(list(range(r, dim_n)))
    else:
        kernel = ExactMatrix.identity(dim_n, la.INTEGER)
    k = kernel.ncols
    if n < c.hi and c.dim(n + 1) and k:
        coords = la.solve(kernel.as_ring(la.RATIONAL), c.d(n + 1).as_ring(la.RATIONAL))
        if coords is None:
            raise InvariantViolation(f"boundaries are not cycles in degree {n}")
        coords = coords.as_ring(la.INTEGER)
        s2 = la.snf(coords)
        U, facs = s2.U, s2.invariant_factors
    else:
        U, facs = ExactMatrix.identity(k, la.INTEGER), ()
    orders = [facs[i] if i < len(facs) else 0 for i in range(k)]
    keep = tuple(i for i in range(k) if orders[i] != 1)
    Uinv = la.inverse(U.as_ring(la.RATIONAL)).as_ring(la.INTEGER) if k else U
    gens = (kernel @ Uinv).take_cols(list(keep)) if k else kernel
    return IntegralHomology(n, tuple(orders[i] for i in keep), kernel, U, keep, gens)


# ---------------------------------------------------------------------------
# chain maps
# ---------------------------------------------------------------------------

class ChainMap:
    """Degreewise matrices ``f_n : S_n -> T_n`` commuting with differentials."""

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 maps: Mapping[int, ExactMatrix], check: bool = True):
        self.source, self.target = source, target
        self.maps = {}
        for n in source.degrees:
            m = maps.get(n)
            shape = (target.dim(n), source.dim(n))
            if m is None:
                m = ExactMatrix.zeros(*shape, target.ring)
            elif m.shape != shape:
                raise ValidationError(f"chain map in degree {n} has shape {m.shape}, expected {shape}")
            self.maps[n] = m
        if check:
            self.check()

    def __getitem__(self, n: int) -> ExactMatrix:
        m = self.maps.get(n)
        if m is None:
            return ExactMatrix.zeros(self.target.dim(n), self.source.dim(n), self.target.ring)
        return m

    def check(self) -> None:
        for n in self.source.degrees:
            if n - 1 < self.source.lo:
                continue
            lhs = self.target.d(n) @ self[n]
            rhs = self[n - 1] @ self.source.d(n)
            if lhs != rhs:
                raise InvariantViolation(f"chain map does not commute with d in degree {n}")

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self ∘ other``."""
        return ChainMap(other.source, self.target,
                        {n: self[n] @ other[n] for n in other.source.degrees}, check=False)


def induced_on_homology(f: ChainMap, degree: int, src: HomologyClassSpace | None = None,
                        tgt: HomologyClassSpace | None = None) -> ExactMatrix:
    """Matrix of ``H_n(f)`` in the stored representative bases (rational)."""
    if src is None:
        src = homology_q(f.source, [degree])[0]
    if tgt is None:
        tgt = homology_q(f.target, [degree])[0]
    cols = []
    fn = f[degree]
    dn = f.target.d(degree) if degree > f.target.lo else None
    for i in range(src.dim):
        rep = src.representatives.row(i)
        z = fn.apply(rep)
        if dn is not None and dn.apply(z):
            raise InvariantViolation(f"image of a representative is not a cycle in degree {degree}")
        cols.append({k: v for k, v in enumerate(tgt.coordinates(z)) if v})
    return ExactMatrix.from_columns(cols, tgt.dim)


def induced_on_homology_z(f: ChainMap, degree: int):
    """Integral version: returns ``(matrix, source orders, target orders)``.

    Column ``j`` holds the target coordinates (reduced mod the target
    orders) of the image of the ``j``-th source generator.
    """
    hs = integral_homology(f.source, degree)
    ht = integral_homology(f.target, degree)
    cols = []
    for j in range(hs.generators.ncols):
        g = {i: v for i, v in enumerate(hs.generators.take_cols([j]).to_dense()) if v[0]}
        g = {i: v[0] for i, v in g.items()}
        img = f[degree].apply(g)
        cols.append({k: v for k, v in enumerate(ht.coordinates(img)) if v})
    return ExactMatrix.from_columns(cols, len(ht.orders)).as_ring(la.INTEGER), hs.orders, ht.orders


def is_surjective_abelian(matrix: ExactMatrix, target_orders: Sequence[int]) -> bool:
    """Is the map into ``⊕ Z/order`` (0 = Z) described by ``matrix`` onto?"""
    k = len(target_orders)
    if k == 0:
        return True
    rel = ExactMatrix.from_row_dicts([{i: o} if o else {} for i, o in enumerate(target_orders)], k,
                                     la.INTEGER).transpose()
    big = ExactMatrix.hstack([matrix.as_ring(la.INTEGER), rel], ring=la.INTEGER)
    facs = la.invariant_factors(big)
    return len(facs) == k and all(x == 1 for x in facs)


# ---------------------------------------------------------------------------
# long exact sequences
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class LESNode:
    label: str
    dim: int
    rank_in: int
    rank_out: int
    exact: bool


@dataclass(eq=False)
class LESResult:
    exact: bool
    nodes: list
    maps: dict
    failures: list

    def raise_if_failed(self):
        if not self.exact:
            raise InvariantViolation("long exact sequence fails at " + ", ".join(self.failures))


def _check_ses(i: ChainMap, p: ChainMap) -> None:
    A, B, C = i.source, i.target, p.target
    if p.source is not B and (p.source.dims != B.dims):
        raise ValidationError("maps of the short exact sequence are not composable")
    for n in B.degrees:
        a, b, c = A.dim(n), B.dim(n), C.dim(n)
        fi, fp = i[n], p[n]
        if not (fp @ fi).is_zero():
            raise ValidationError(f"p∘i ≠ 0 in degree {n}", location=f"degree {n}")
        if a + c != b or la.rank(fi) != a or la.rank(fp) != c:
            raise ValidationError(f"sequence is not exact in degree {n}", location=f"degree {n}")


def connecting_map(i: ChainMap, p: ChainMap, n: int, hc: HomologyClassSpace,
                   ha: HomologyClassSpace) -> ExactMatrix:
    """Snake map ``H_n(C) -> H_{n-1}(A)``: lift, apply d, pull back along i."""
    B = i.target
    cols = []
    for k in range(hc.dim):
        c = hc.representatives.row(k)
        col = ExactMatrix.from_columns([c], p[n].nrows)
        lift = la.solve(p[n], col)
        if lift is None:
            raise InvariantViolation(f"cannot lift a class through p in degree {n}")
        b = {r: lift[r, 0] for r in range(lift.nrows) if lift[r, 0]}
        db = B.d(n).apply(b)
        pre = la.solve(i[n - 1], ExactMatrix.from_columns([db], i[n - 1].nrows))
        if pre is None:
            raise InvariantViolation(f"d(lift) does not come from A in degree {n - 1}")
        a = {r: pre[r, 0] for r in range(pre.nrows) if pre[r, 0]}
        cols.append({j: v for j, v in enumerate(ha.coordinates(a)) if v})
    return ExactMatrix.from_columns(cols, ha.dim)


def check_exact_sequence(labels: Sequence[str], spaces: Sequence[int],
                         maps: Sequence[ExactMatrix | None]) -> tuple[list, list]:
    """Exactness at every interior node of ``X_0 -> X_1 -> ... -> X_k``.

    ``maps[j]`` goes from ``X_j`` to ``X_{j+1}``; ``None`` means zero.
    """
    nodes, failures = [], []
    for j in range(1, len(spaces) - 1):
        f, g = maps[j - 1], maps[j]
        rf = la.rank(f) if f is not None and f.nrows and f.ncols else 0
        rg = la.rank(g) if g is not None and g.nrows and g.ncols else 0
        ok = rf + rg == spaces[j]
        if ok and f is not None and g is not None and f.ncols and g.nrows:
            ok = (g @ f).is_zero()
        nodes.append(LESNode(labels[j], spaces[j], rf, rg, ok))
        if not ok:
            failures.append(f"{labels[j]} (dim {spaces[j]}, rank in {rf}, rank out {rg})")
    return nodes, failures


def les_check(i: ChainMap, p: ChainMap, names: tuple = ("A", "B", "C")) -> LESResult:
    """Verify the long exact homology sequence of ``0 -> A -i-> B -p-> C -> 0``.

    The sequence must be degreewise exact (checked).  Nodes are listed from
    the top degree down; every interior node is checked.
    """
    _check_ses(i, p)
    A, B, C = i.source, i.target, p.target
    lo, hi = B.lo, B.hi
    HA = {h.degree: h for h in homology_q(A)}
    HB = {h.degree: h for h in homology_q(B)}
    HC = {h.degree: h for h in homology_q(C)}
    labels, spaces, maps = [], [], []
    allmaps = {}
    for n in range(hi, lo - 1, -1):
        hi_map = induced_on_homology(i, n, HA[n], HB[n])
        hp_map = induced_on_homology(p, n, HB[n], HC[n])
        allmaps[("i", n)] = hi_map
        allmaps[("p", n)] = hp_map
        if n > lo:
            delta = connecting_map(i, p, n, HC[n], HA[n - 1])
            allmaps[("delta", n)] = delta
        else:
            delta = None
        labels += [f"H_{n}({names[0]})", f"H_{n}({names[1]})", f"H_{n}({names[2]})"]
        spaces += [HA[n].dim, HB[n].dim, HC[n].dim]
        maps += [hi_map, hp_map, delta]
    # The sequence starts 0 -> H_hi(A) and ends H_lo(C) -> 0.
    labels = ["0"] + labels + ["0"]
    spaces = [0] + spaces + [0]
    maps = [None] + maps[:-1] + [None]
    nodes, failures = check_exact_sequence(labels, spaces, maps)
    return LESResult(not failures, nodes, allmaps, failures)


# ---------------------------------------------------------------------------
# double complexes
# ---------------------------------------------------------------------------

class DoubleComplex:
    """Finite double complex ``E_{p,q}`` with commuting differentials.

    ``horizontal[(p, q)] : E_{p,q} -> E_{p-1,q}`` and
    ``vertical[(p, q)] : E_{p,q} -> E_{p,q-1}``.  The two families are
    stored commuting; :func:`totalize` introduces the sign ``(-1)^p`` on
    the vertical part.
    """

    def __init__(self, dims: Mapping[tuple, int], horizontal: Mapping[tuple, ExactMatrix],
                 vertical: Mapping[tuple, ExactMatrix], ring: str = la.RATIONAL,
                 check: bool = True):
        self.dims = {k: int(v) for k, v in dims.items() if v}
        self.ring = ring
        self.h, self.v = {}, {}
        for name, src, dst in (("horizontal", horizontal, self.h), ("vertical", vertical, self.v)):
            for (p, q), m in src.items():
                tgt = (p - 1, q) if name == "horizontal" else (p, q - 1)
                shape = (self.dims.get(tgt, 0), self.dims.get((p, q), 0))
                if m.shape != shape:
                    raise ValidationError(f"{name} map at {(p, q)} has shape {m.shape}, expected {shape}")
                if not m.is_zero():
                    dst[(p, q)] = m
        if check:
            self.check()

    def _map(self, table, key, tgt):
        m = table.get(key)
        if m is None:
            return ExactMatrix.zeros(self.dims.get(tgt, 0), self.dims.get(key, 0), self.ring)
        return m

    def hmap(self, p, q):
        return self._map(self.h, (p, q), (p - 1, q))

    def vmap(self, p, q):
        return self._map(self.v, (p, q), (p, q - 1))

    def check(self) -> None:
        for (p, q) in self.dims:
            if not (self.hmap(p - 1, q) @ self.hmap(p, q)).is_zero():
                raise InvariantViolation(f"horizontal d² ≠ 0 at {(p, q)}")
            if not (self.vmap(p, q - 1) @ self.vmap(p, q)).is_zero():
                raise InvariantViolation(f"vertical d² ≠ 0 at {(p, q)}")
            if self.hmap(p, q - 1) @ self.vmap(p, q) != self.vmap(p - 1, q) @ self.hmap(p, q):
                raise InvariantViolation(f"differentials do not commute at {(p, q)}")

    def layout(self, n: int) -> list[tuple[int, int, int, int]]:
        """Summands of ``Tot_n`` as ``(p, q, offset, dim)``, ordered by p."""
        out = []
        off = 0
        for (p, q) in sorted(k for k in self.dims if k[0] + k[1] == n):
            d = self.dims[(p, q)]
            out.append((p, q, off, d))
            off += d
        return out

    def total_degrees(self) -> range:
        if not self.dims:
            return range(0, 1)
        tot = [p + q for p, q in self.dims]
        return range(min(tot), max(tot) + 1)


def totalize(dc: DoubleComplex, degrees: range | None = None) -> ChainComplex:
    """``Tot_n = ⊕_{p+q=n} E_{p,q}`` with ``d = h + (-1)^p v``."""
    degs = dc.total_degrees() if degrees is None else degrees
    layouts = {n: dc.layout(n) for n in degs}
    dims = {n: sum(x[3] for x in layouts[n]) for n in degs}
    diffs = {}
    for n in degs:
        if n - 1 not in layouts:
            continue
        tpos = {(p, q): off for p, q, off, _ in layouts[n - 1]}
        rows = [dict() for _ in range(dims[n - 1])]
        for p, q, off, d in layouts[n]:
            parts = []
            if (p, q) in dc.h and (p - 1, q) in tpos:
                parts.append((dc.h[(p, q)], tpos[(p - 1, q)], 1))
            if (p, q) in dc.v and (p, q - 1) in tpos:
                parts.append((dc.v[(p, q)], tpos[(p, q - 1)], -1 if p % 2 else 1))
            for m, toff, sign in parts:
                for i, r in enumerate(m.row_dicts()):
                    if r:
                        row = rows[toff + i]
                        for j, x in r.items():
                            row[off + j] = sign * x
        diffs[n] = ExactMatrix._wrap(dims[n - 1], dims[n], rows, dc.ring)
    return ChainComplex(dims, diffs, dc.ring)


def transpose(dc: DoubleComplex) -> DoubleComplex:
    dims = {(q, p): d for (p, q), d in dc.dims.items()}
    h = {(q, p): m for (p, q), m in dc.v.items()}
    v = {(q, p): m for (p, q), m in dc.h.items()}
    return DoubleComplex(dims, h, v, dc.ring, check=False)
