"""Finite rings, elementary matrices and Steinberg relations.

Only images of the Steinberg relations inside ``E_N(R)`` are checked; the
Steinberg group itself is never constructed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ValidationError

EXHAUSTIVE_CAP = 10 ** 7


class FiniteRing:
    """A finite unital ring on ``0..size-1`` given by operation tables."""

    def __init__(self, add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]],
                 zero: int = 0, one: int = 1, name: str = "", check: bool = True):
        n = len(add)
        if n == 0 or len(mul) != n:
            raise ValidationError("operation tables must be square and of equal size")
        for t, label in ((add, "add"), (mul, "mul")):
            for i, r in enumerate(t):
                if len(r) != n or any(not 0 <= int(x) < n for x in r):
                    raise ValidationError("malformed table", location=f"{label}[{i}]")
        self.size = n
        self.add_t = [list(map(int, r)) for r in add]
        self.mul_t = [list(map(int, r)) for r in mul]
        self.zero, self.one = zero, one
        self.name = name or f"R{n}"
        neg = []
        for a in range(n):
            c = [b for b in range(n) if self.add_t[a][b] == zero]
            if not c:
                raise ValidationError(f"element {a} has no additive inverse", location="add")
            neg.append(c[0])
        self.neg_t = neg
        if check:
            self.check_axioms()

    @classmethod
    def zmod(cls, m: int) -> "FiniteRing":
        if m < 1:
            raise ValidationError("modulus must be positive")
        ring = cls([[(a + b) % m for b in range(m)] for a in range(m)],
                   [[(a * b) % m for b in range(m)] for a in range(m)],
                   0, 1 % m, name=f"Z/{m}", check=False)
        return ring

    def add(self, a: int, b: int) -> int:
        return self.add_t[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_t[a][b]

    def neg(self, a: int) -> int:
        return self.neg_t[a]

    def elements(self) -> range:
        return range(self.size)

    def check_axioms(self) -> None:
        n, A, M, z, o = self.size, self.add_t, self.mul_t, self.zero, self.one
        for a in range(n):
            if A[a][z] != a or A[z][a] != a:
                raise ValidationError(f"{z} is not an additive identity for {a}", location="add")
            if M[a][o] != a or M[o][a] != a:
                raise ValidationError(f"{o} is not a multiplicative identity for {a}", location="mul")
            for b in range(n):
                if A[a][b] != A[b][a]:
                    raise ValidationError(f"addition not commutative at ({a}, {b})", location="add")
                ab, mab = A[a][b], M[a][b]
                for c in range(n):
                    if A[ab][c] != A[a][A[b][c]]:
                        raise ValidationError(f"addition not associative at ({a}, {b}, {c})",
                                              location="add")
                    if M[mab][c] != M[a][M[b][c]]:
                        raise ValidationError(f"multiplication not associative at ({a}, {b}, {c})",
                                              location="mul")
                    if M[a][A[b][c]] != A[mab][M[a][c]]:
                        raise ValidationError(f"left distributivity fails at ({a}, {b}, {c})",
                                              location="mul")
                    if M[ab][c] != A[M[a][c]][M[b][c]]:
                        raise ValidationError(f"right distributivity fails at ({a}, {b}, {c})",
                                              location="mul")

    def __repr__(self):
        return f"FiniteRing({self.name}, size={self.size})"


def check_homomorphism(src: FiniteRing, dst: FiniteRing, f: Sequence[int]) -> None:
    if len(f) != src.size or any(not 0 <= x < dst.size for x in f):
        raise ValidationError("map has the wrong length or values", location="map")
    if f[src.one] != dst.one:
        raise ValidationError("map does not preserve 1", location="map")
    for a in src.elements():
        for b in src.elements():
            if f[src.add(a, b)] != dst.add(f[a], f[b]):
                raise ValidationError(f"map is not additive at ({a}, {b})", location="map")
            if f[src.mul(a, b)] != dst.mul(f[a], f[b]):
                raise ValidationError(f"map is not multiplicative at ({a}, {b})", location="map")


@dataclass
class ElementaryMatrixGroupContext:
    ring: FiniteRing
    size: int = 3

    def __post_init__(self):
        if self.size < 3:
            raise ValidationError("Steinberg relations need matrices of size at least 3")


Matrix = tuple


def identity_matrix(ctx: ElementaryMatrixGroupContext) -> Matrix:
    r, n = ctx.ring, ctx.size
    return tuple(tuple(r.one if i == j else r.zero for j in range(n)) for i in range(n))


def e_matrix(ctx: ElementaryMatrixGroupContext, i: int, j: int, x: int) -> Matrix:
    """``e_{i,j}(x)``: identity plus ``x`` at row ``i``, column ``j`` (1-indexed)."""
    n = ctx.size
    if i == j:
        raise ValidationError("e_{i,j} needs i ≠ j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValidationError(f"indices must lie in 1..{n}")
    if not 0 <= x < ctx.ring.size:
        raise ValidationError("ring element out of range")
    rows = [list(r) for r in identity_matrix(ctx)]
    rows[i - 1][j - 1] = x
    return tuple(tuple(r) for r in rows)


def matmul(ctx: ElementaryMatrixGroupContext, a: Matrix, b: Matrix) -> Matrix:
    r, n = ctx.ring, ctx.size
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = r.zero
            for k in range(n):
                s = r.add(s, r.mul(a[i][k], b[k][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def _commutator_e(ctx, i, j, x, k, l, y) -> Matrix:
    """``[e_ij(x), e_kl(y)] = e_ij(x) e_kl(y) e_ij(-x) e_kl(-y)``."""
    r = ctx.ring
    g, h = e_matrix(ctx, i, j, x), e_matrix(ctx, k, l, y)
    gi, hi = e_matrix(ctx, i, j, r.neg(x)), e_matrix(ctx, k, l, r.neg(y))
    return matmul(ctx, matmul(ctx, matmul(ctx, g, h), gi), hi)


@dataclass
class Verdict:
    ok: bool
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "violations": self.violations[:10]}


def steinberg_relations_check(ctx: ElementaryMatrixGroupContext) -> Verdict:
    """Exhaustively verify the three Steinberg relation families in ``E_N(R)``."""
    r, n = ctx.ring, ctx.size
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    triples = [(i, j, k) for i, j in pairs for k in range(1, n + 1) if k != i and k != j]
    quads = [(p, q) for p in pairs for q in pairs if p[0] != q[1] and p[1] != q[0]]
    work = r.size ** 2 * (len(pairs) + len(triples) + len(quads))
    if work > EXHAUSTIVE_CAP:
        raise ValidationError(f"exhaustive check needs {work} cases, above the cap {EXHAUSTIVE_CAP}")
    ident = identity_matrix(ctx)
    bad = []
    counts = {"additive": 0, "commutator": 0, "commuting": 0}
    emat = {}

    def e(i, j, x):
        key = (i, j, x)
        if key not in emat:
            emat[key] = e_matrix(ctx, i, j, x)
        return emat[key]

    elems = list(r.elements())
    for i, j in pairs:
        for x in elems:
            for y in elems:
                counts["additive"] += 1
                if matmul(ctx, e(i, j, x), e(i, j, y)) != e(i, j, r.add(x, y)):
                    bad.append({"relation": "additive", "indices": [i, j], "x": x, "y": y})
    for i, j, k in triples:
        for x in elems:
            for y in elems:
                counts["commutator"] += 1
                if _commutator_e(ctx, i, j, x, j, k, y) != e(i, k, r.mul(x, y)):
                    bad.append({"relation": "commutator", "indices": [i, j, k], "x": x, "y": y})
    for (i, j), (k, l) in quads:
        for x in elems:
            for y in elems:
                counts["commuting"] += 1
                if _commutator_e(ctx, i, j, x, k, l, y) != ident:
                    bad.append({"relation": "commuting", "indices": [i, j, k, l], "x": x, "y": y})
    return Verdict(not bad, counts, bad)


@dataclass
class FiberProduct:
    ring: FiniteRing
    pairs: list          # element index -> (x, y)
    index: dict          # (x, y) -> element index
    projections: tuple   # two maps D -> B as lists


def fiber_product(b: FiniteRing, a: FiniteRing, f: Sequence[int]) -> FiberProduct:
    """``D = B ×_A B = {(x, y) : f(x) = f(y)}`` with componentwise operations."""
    check_homomorphism(b, a, f)
    if set(f) != set(a.elements()):
        raise ValidationError("map is not surjective", location="map")
    pairs = [(x, y) for x in b.elements() for y in b.elements() if f[x] == f[y]]
    index = {p: i for i, p in enumerate(pairs)}
    add = [[index[(b.add(p[0], q[0]), b.add(p[1], q[1]))] for q in pairs] for p in pairs]
    mul = [[index[(b.mul(p[0], q[0]), b.mul(p[1], q[1]))] for q in pairs] for p in pairs]
    ring = FiniteRing(add, mul, index[(b.zero, b.zero)], index[(b.one, b.one)],
                      name=f"{b.name}x_{a.name}{b.name}")
    proj = ([p[0] for p in pairs], [p[1] for p in pairs])
    for pr in proj:
        check_homomorphism(ring, b, pr)
    return FiberProduct(ring, pairs, index, proj)


def _map_matrix(m: Matrix, f: Sequence[int]) -> Matrix:
    return tuple(tuple(f[x] for x in row) for row in m)


def gamma_generators_trivial(b: FiniteRing, a: FiniteRing, f: Sequence[int], size: int = 3) -> Verdict:
    """For all ``x, y ∈ Ker f``: ``[e_12((x,0)), e_21((0,y))] = 1`` in ``E_N(D)``.

    Also checks ``(x,0)(0,y) = 0 = (0,y)(x,0)`` in ``D`` and that both
    projections send each commutator to the identity of ``E_N(B)``.
    """
    fp = fiber_product(b, a, f)
    d = fp.ring
    ctx = ElementaryMatrixGroupContext(d, size)
    bctx = ElementaryMatrixGroupContext(b, size)
    ident = identity_matrix(ctx)
    bident = identity_matrix(bctx)
    ker = [x for x in b.elements() if f[x] == a.zero]
    bad = []
    count = 0
    for x in ker:
        for y in ker:
            count += 1
            u, v = fp.index[(x, b.zero)], fp.index[(b.zero, y)]
            zero = d.zero
            if d.mul(u, v) != zero or d.mul(v, u) != zero:
                bad.append({"x": x, "y": y, "reason": "product of (x,0) and (0,y) is not zero"})
                continue
            c = _commutator_e(ctx, 1, 2, u, 2, 1, v)
            if c != ident:
                bad.append({"x": x, "y": y, "reason": "commutator is not the identity"})
                continue
            for k, pr in enumerate(fp.projections):
                if _map_matrix(c, pr) != bident:
                    bad.append({"x": x, "y": y, "reason": f"projection {k + 1} image is not trivial"})
    return Verdict(not bad, {"pairs": count, "fiber_product_size": d.size}, bad)


def zmod_quotient_map(m: int, k: int) -> list[int]:
    """Reduction ``Z/m -> Z/k`` (requires ``k | m``)."""
    if m % k:
        raise ValidationError(f"{k} does not divide {m}")
    return [x % k for x in range(m)]
