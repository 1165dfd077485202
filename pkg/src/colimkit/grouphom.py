"""Finite groups as one-object categories and their homology.

``group_homology`` goes through the nerve complex of :mod:`fincat`; the
2-periodic complex of a cyclic group is kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import exactla as la
from .complexes import ChainComplex, HomologyClassSpace, homology_q, homology_z
from .errors import ValidationError
from .exactla import ExactMatrix
from .fincat import DiagramFunctor, FinCategory, derived_colim

MAX_ORDER = 8
MAX_DEGREE = 4


class FinGroup:
    """A finite group given by its multiplication table ``table[i][j] = i·j``."""

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence | None = None):
        n = len(table)
        if n == 0:
            raise ValidationError("a group has at least one element")
        t = [list(map(int, r)) for r in table]
        for i, r in enumerate(t):
            if len(r) != n or any(not 0 <= x < n for x in r):
                raise ValidationError("malformed multiplication table", location=f"table[{i}]")
        ident = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
        if not ident:
            raise ValidationError("no identity element")
        e = ident[0]
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise ValidationError(f"associativity fails at ({a}, {b}, {c})",
                                              location="table")
        inv = []
        for a in range(n):
            cand = [b for b in range(n) if t[a][b] == e and t[b][a] == e]
            if not cand:
                raise ValidationError(f"element {a} has no inverse", location=f"table[{a}]")
            inv.append(cand[0])
        self.order = n
        self.table = t
        self.identity = e
        self.inverse = inv
        self.names = list(names) if names is not None else [f"g{i}" for i in range(n)]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_cyclic(self) -> int | None:
        """A generator when the group is cyclic, else ``None``."""
        for a in range(self.order):
            if self.element_order(a) == self.order:
                return a
        return None

    @classmethod
    def cyclic(cls, q: int) -> "FinGroup":
        return cls([[(i + j) % q for j in range(q)] for i in range(q)],
                   [f"t^{i}" for i in range(q)])

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]]) -> "FinGroup":
        """Closure of permutation generators (images of 0..k-1); identity first."""
        gens = [tuple(int(x) for x in g) for g in generators]
        if not gens:
            raise ValidationError("need at least one generator")
        k = len(gens[0])
        for g in gens:
            if len(g) != k or sorted(g) != list(range(k)):
                raise ValidationError(f"not a permutation of 0..{k - 1}: {list(g)}")
        ident = tuple(range(k))
        elems = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[p[i]] for i in range(k))  # g ∘ p
                    if q not in index:
                        index[q] = len(elems)
                        elems.append(q)
                        nxt.append(q)
            frontier = nxt
        table = [[index[tuple(a[b[i]] for i in range(k))] for b in elems] for a in elems]
        return cls(table, [str(list(p)) for p in elems])

    @classmethod
    def symmetric(cls, k: int) -> "FinGroup":
        if k < 2:
            return cls([[0]])
        gens = [[1, 0] + list(range(2, k)), list(range(1, k)) + [0]]
        return cls.from_permutations(gens)


@dataclass(eq=False)
class GModule:
    """``rank`` copies of Q or Z with an action matrix per group element."""

    group: FinGroup
    rank: int
    actions: list
    ring: str = la.INTEGER

    def __post_init__(self):
        g = self.group
        if len(self.actions) != g.order:
            raise ValidationError("need one action matrix per group element")
        acts = []
        for i, a in enumerate(self.actions):
            if not isinstance(a, ExactMatrix):
                a = ExactMatrix.from_dense(a, self.ring, ncols=self.rank) if self.rank else \
                    ExactMatrix.zeros(0, 0, self.ring)
            if a.shape != (self.rank, self.rank):
                raise ValidationError(f"action of element {i} has wrong shape", location=f"actions[{i}]")
            acts.append(a.as_ring(self.ring) if self.ring == la.INTEGER else a)
        self.actions = acts
        if acts[g.identity] != ExactMatrix.identity(self.rank, self.ring):
            raise ValidationError("identity does not act trivially")
        for a in range(g.order):
            for b in range(g.order):
                if acts[a] @ acts[b] != acts[g.mul(a, b)]:
                    raise ValidationError(f"action is not a homomorphism at ({a}, {b})",
                                          location=f"actions[{g.mul(a, b)}]")

    @classmethod
    def trivial(cls, group: FinGroup, rank: int = 1, ring: str = la.INTEGER) -> "GModule":
        ident = ExactMatrix.identity(rank, ring)
        return cls(group, rank, [ident] * group.order, ring)

    @classmethod
    def sign_cyclic(cls, group: FinGroup, ring: str = la.INTEGER) -> "GModule":
        """For even-order cyclic groups: the generator acts by -1."""
        gen = group.is_cyclic()
        if gen is None or group.order % 2:
            raise ValidationError("sign module needs a cyclic group of even order")
        acts = [None] * group.order
        x = group.identity
        for k in range(group.order):
            acts[x] = ExactMatrix.from_dense([[(-1) ** k]], ring)
            x = group.mul(x, gen)
        return cls(group, 1, acts, ring)


def as_category(g: FinGroup) -> FinCategory:
    """One object ``*``, morphisms the group elements, composition the product."""
    names = list(g.names)
    mors = [(names[i], "*", "*") for i in range(g.order)]
    comp = {(names[a], names[b]): names[g.mul(a, b)]
            for a in range(g.order) for b in range(g.order)}
    return FinCategory(["*"], mors, comp, identities={"*": names[g.identity]},
                       max_morphisms=max(64, g.order), check=False)


def module_functor(cat: FinCategory, m: GModule) -> DiagramFunctor:
    return DiagramFunctor(cat, {"*": m.rank}, {i: m.actions[i] for i in range(m.group.order)},
                          m.ring, check=False)


def group_homology(g: FinGroup, m: GModule, max_degree: int = MAX_DEGREE,
                   max_order: int = MAX_ORDER) -> list[HomologyClassSpace]:
    """``H_n(G, M)`` for ``n = 0..max_degree`` from the normalized nerve complex."""
    if g.order > max_order:
        raise ValidationError(f"group order {g.order} exceeds the cap {max_order}")
    cat = as_category(g)
    return derived_colim(cat, module_functor(cat, m), max_degree)


def cyclic_group_oracle(q: int, m: GModule, max_degree: int) -> list[HomologyClassSpace]:
    """Homology of ``... -N-> M -(t-1)-> M -N-> M -(t-1)-> M -> 0``."""
    g = m.group
    gen = g.is_cyclic()
    if gen is None or g.order != q:
        raise ValidationError(f"module is not over a cyclic group of order {q}")
    r = m.rank
    t = m.actions[gen]
    norm = ExactMatrix.zeros(r, r, m.ring)
    x = g.identity
    for _ in range(q):
        norm = norm + m.actions[x]
        x = g.mul(x, gen)
    tm1 = t - ExactMatrix.identity(r, m.ring)
    top = max_degree + 1
    dims = {n: r for n in range(top + 1)}
    diffs = {n: (tm1 if n % 2 else norm) for n in range(1, top + 1)}
    cx = ChainComplex(dims, diffs, m.ring)
    degs = range(0, max_degree + 1)
    return homology_z(cx, degs) if m.ring == la.INTEGER else homology_q(cx, degs, False)


def abelianization_invariants(g: FinGroup) -> tuple:
    """Invariant factors of ``G^ab`` (0 for free summands never occurs; G finite).

    The relation matrix has a row ``e_a + e_b - e_{ab}`` for every pair;
    its cokernel over Z^|G| is the abelianization.
    """
    n = g.order
    rows = []
    for a in range(n):
        for b in range(n):
            r: dict = {}
            for k, s in ((a, 1), (b, 1), (g.mul(a, b), -1)):
                r[k] = r.get(k, 0) + s
            rows.append({k: v for k, v in r.items() if v})
    rel = ExactMatrix.from_row_dicts(rows, n, la.INTEGER)
    facs = la.invariant_factors(rel)
    if len(facs) != n:
        raise ValidationError("relation matrix has unexpected rank")
    return tuple(x for x in facs if x > 1)


def quotient_map_chain(g: FinGroup, h: FinGroup, phi: Sequence[int], m_g: GModule, m_h: GModule,
                       max_degree: int):
    """Chain map on nerve complexes induced by a group homomorphism ``phi: G -> H``.

    Coefficient modules are both trivial of the same rank; chain
    ``(a_1..a_n)`` goes to ``(phi a_1 .. phi a_n)`` (zero if that contains
    the identity, as the complexes are normalized).
    """
    from .complexes import ChainMap
    from .fincat import _chain_tuples, colim_complex
    for a in range(g.order):
        for b in range(g.order):
            if phi[g.mul(a, b)] != h.mul(phi[a], phi[b]):
                raise ValidationError("phi is not a homomorphism")
    cg, ch = as_category(g), as_category(h)
    fg, fh = module_functor(cg, m_g), module_functor(ch, m_h)
    src = colim_complex(cg, fg, max_degree)
    tgt = colim_complex(ch, fh, max_degree)
    r = m_g.rank
    maps = {}
    for n in range(max_degree + 2):
        s_ch = _chain_tuples(cg, n, True)
        t_pos = {t: i for i, t in enumerate(_chain_tuples(ch, n, True))}
        cols = []
        for chn in s_ch:
            img = chn if n == 0 else tuple(phi[a] for a in chn)
            for k in range(r):
                if n > 0 and any(x == h.identity for x in img):
                    cols.append({})
                else:
                    cols.append({t_pos[img] * r + k: 1})
        maps[n] = ExactMatrix.from_columns(cols, tgt.dim(n), la.INTEGER)
    return ChainMap(src, tgt, maps)
