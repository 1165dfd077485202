"""Seeded random inputs for the property checks and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction

from . import exactla as la
from .algebras import StructAlgebra
from .exactla import ExactMatrix, Subspace
from .fincat import DiagramFunctor, FinCategory


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# -- categories with a terminal object ----------------------------------------

def poset_with_top(seed, max_objects: int = 5, max_morphisms: int = 20) -> FinCategory:
    """A random poset with a greatest element, plus monoid decorations.

    Some non-top objects get an extra idempotent or involutive endomorphism.
    Every composite involving a non-endomorphism is the unique morphism
    with the right endpoints, so the top object stays terminal.
    """
    rng = _rng(seed)
    while True:
        n = rng.randint(1, max_objects)
        top = n - 1
        # random order relation on 0..n-2 compatible with index order, then close
        le = {(i, i) for i in range(n)}
        for i in range(n):
            le.add((i, top))
        for i in range(n - 1):
            for j in range(i + 1, n - 1):
                if rng.random() < 0.4:
                    le.add((i, j))
        changed = True
        while changed:
            changed = False
            for (a, b) in list(le):
                for (c, d) in list(le):
                    if b == c and (a, d) not in le:
                        le.add((a, d))
                        changed = True
        objs = [f"o{i}" for i in range(n)]
        mors = [(f"{a}<{b}", objs[a], objs[b]) for (a, b) in sorted(le) if a != b]
        endo = {}
        for i in range(n - 1):
            r = rng.random()
            if r < 0.25:
                endo[i] = ("e", "idempotent")
            elif r < 0.45:
                endo[i] = ("s", "involution")
        for i, (name, _) in endo.items():
            mors.append((f"{name}{i}", objs[i], objs[i]))
        if len(mors) + n <= max_morphisms:
            break
    comp = {}
    for g, gd, gc in mors:
        for f, fd, fc in mors:
            if gd != fc:
                continue
            if fd == gc and f == g:  # endo squared
                kind = endo[int(g[1:])][1]
                comp[(g, f)] = g if kind == "idempotent" else f"1_{gd}"
            else:
                a, b = objs.index(fd), objs.index(gc)
                comp[(g, f)] = f"1_{fd}" if a == b else f"{a}<{b}"
    return FinCategory(objs, mors, comp)


def random_poset(seed, max_objects: int = 5, density: float = 0.4) -> FinCategory:
    """A random partial order on ``p0..p{n-1}`` (the transitive closure of
    random relations compatible with index order)."""
    rng = _rng(seed)
    n = rng.randint(1, max_objects)
    le = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(le):
            for (c, d) in list(le):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
    objs = [f"p{i}" for i in range(n)]
    mors = [(f"{a}<{b}", objs[a], objs[b]) for (a, b) in sorted(le)]
    comp = {(f"{b}<{c}", f"{a}<{b}"): f"{a}<{c}" for (a, b) in le for (b2, c) in le if b == b2}
    return FinCategory(objs, mors, comp)


# -- strongly connected categories -----------------------------------------------

def _random_invertible(rng, d: int) -> ExactMatrix:
    while True:
        m = ExactMatrix.from_dense([[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)])
        if la.rank(m) == d:
            return m


def _monoid(rng):
    """A small monoid as (elements, product table, identity index)."""
    kind = rng.choice(["trivial", "c2", "c3", "idempotent"])
    if kind == "trivial":
        return kind, 1, [[0]]
    if kind == "c2":
        return kind, 2, [[(a + b) % 2 for b in range(2)] for a in range(2)]
    if kind == "c3":
        return kind, 3, [[(a + b) % 3 for b in range(3)] for a in range(3)]
    return kind, 2, [[0, 1], [1, 1]]


def _representation(rng, kind: str, d: int) -> list:
    """Matrices (over Q, dimension d) for each monoid element."""
    ident = ExactMatrix.identity(d)
    if kind == "trivial" or d == 0:
        return [ident] * {"trivial": 1, "c2": 2, "c3": 3, "idempotent": 2}[kind]
    s = _random_invertible(rng, d)
    sinv = la.inverse(s)
    if kind == "c2":
        diag = [rng.choice([1, -1]) for _ in range(d)]
        g = ExactMatrix.from_dense([[diag[i] if i == j else 0 for j in range(d)] for i in range(d)])
        return [ident, s @ g @ sinv]
    if kind == "c3":
        # permutation action on blocks of size 3 (cyclic shift), the rest trivial
        perm = list(range(d))
        if d >= 3:
            perm[0], perm[1], perm[2] = 1, 2, 0
        g = ExactMatrix.from_dense([[1 if perm[j] == i else 0 for j in range(d)] for i in range(d)])
        g = s @ g @ sinv
        return [ident, g, g @ g]
    diag = [rng.choice([0, 1]) for _ in range(d)]
    e = ExactMatrix.from_dense([[diag[i] if i == j else 0 for j in range(d)] for i in range(d)])
    return [ident, s @ e @ sinv]


def strongly_connected(seed, max_objects: int = 3, max_dim: int = 3):
    """Codiscrete category times a small monoid, with a random functor.

    Returns ``(category, functor)``.  The functor is a representation of the
    monoid transported to each object by a random invertible matrix.
    """
    rng = _rng(seed)
    n = rng.randint(1, max_objects)
    kind, size, table = _monoid(rng)
    objs = [f"c{i}" for i in range(n)]
    mors, ident = [], {}
    for a in range(n):
        for b in range(n):
            for m in range(size):
                name = f"{a}{b}m{m}"
                mors.append((name, objs[a], objs[b]))
                if a == b and m == 0:
                    ident[objs[a]] = name
    comp = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for m1 in range(size):
                    for m2 in range(size):
                        comp[(f"{b}{c}m{m2}", f"{a}{b}m{m1}")] = f"{a}{c}m{table[m2][m1]}"
    cat = FinCategory(objs, mors, comp, identities=ident)
    d = rng.randint(0, max_dim)
    rho = _representation(rng, kind, d)
    ps = [_random_invertible(rng, d) if d else ExactMatrix.identity(0) for _ in range(n)]
    pinv = [la.inverse(p) if d else p for p in ps]
    maps = {}
    for a in range(n):
        for b in range(n):
            for m in range(size):
                maps[f"{a}{b}m{m}"] = pinv[b] @ rho[m] @ ps[a]
    return cat, DiagramFunctor(cat, {o: d for o in objs}, maps)


# -- join-semilattices -------------------------------------------------------------

def join_semilattice(seed, max_objects: int = 6, universe: int = 4) -> FinCategory:
    """The inclusion order on a random union-closed family of subsets."""
    rng = _rng(seed)
    while True:
        k = rng.randint(1, 3)
        fam = {frozenset(x for x in range(universe) if rng.random() < 0.5) for _ in range(k)}
        changed = True
        while changed:
            changed = False
            for a in list(fam):
                for b in list(fam):
                    if a | b not in fam:
                        fam.add(a | b)
                        changed = True
        if len(fam) <= max_objects:
            break
    elems = sorted(fam, key=lambda s: (len(s), sorted(s)))
    name = {s: "{" + ",".join(map(str, sorted(s))) + "}" for s in elems}
    mors = [(f"{name[a]}<{name[b]}", name[a], name[b]) for a in elems for b in elems if a < b]
    comp = {}
    for a in elems:
        for b in elems:
            for c in elems:
                if a < b < c:
                    comp[(f"{name[b]}<{name[c]}", f"{name[a]}<{name[b]}")] = f"{name[a]}<{name[c]}"
    return FinCategory([name[s] for s in elems], mors, comp)


def _is_convex(c: FinCategory, s: set) -> bool:
    for a in s:
        for b in s:
            for x in range(c.n_objects):
                if x not in s and c.hom(a, x) and c.hom(x, b):
                    return False
    return True


def poset_functor(seed, c: FinCategory, max_summands: int = 2) -> DiagramFunctor:
    """Sum of indicator functors of random convex subsets, disguised by a
    random change of basis at every object."""
    rng = _rng(seed)
    n = c.n_objects
    pieces = []
    for _ in range(rng.randint(1, max_summands)):
        while True:
            s = {x for x in range(n) if rng.random() < 0.5}
            if s and _is_convex(c, s):
                break
        pieces.append(s)
    dims = [sum(1 for s in pieces if x in s) for x in range(n)]
    slots = [[i for i, s in enumerate(pieces) if x in s] for x in range(n)]
    ps = [_random_invertible(rng, d) if d else ExactMatrix.identity(0) for d in dims]
    pinv = [la.inverse(p) if p.nrows else p for p in ps]
    maps = {}
    for f in range(c.n_morphisms):
        a, b = c.dom[f], c.cod[f]
        raw = [[1 if si == sj else 0 for sj in slots[a]] for si in slots[b]]
        m = ExactMatrix.from_dense(raw, ncols=dims[a]) if dims[b] else ExactMatrix.zeros(0, dims[a])
        maps[f] = ps[b] @ m @ pinv[a]
    return DiagramFunctor(c, {o: dims[i] for i, o in enumerate(c.objects)}, maps)


# -- associative algebras ------------------------------------------------------------

def _closure(gens: list, size: int, cap: int):
    """Span of all nonempty products of ``gens`` (flattened size x size matrices)."""
    def flat(m):
        return {i * size + j: x for i, row in enumerate(m) for j, x in enumerate(row) if x}

    def mat(v):
        return [[Fraction(v.get(i * size + j, 0)) for j in range(size)] for i in range(size)]

    def mul(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(size)) for j in range(size)] for i in range(size)]

    span = Subspace.span(size * size, [flat(g) for g in gens])
    while True:
        if span.dim > cap:
            return None
        basis = [mat(r) for r in span.rows]
        prods = [flat(mul(x, y)) for x in basis for y in basis]
        bigger = la.subspace_sum(span, Subspace.span(size * size, prods))
        if bigger.dim == span.dim:
            return span, basis, flat, mul
        span = bigger


def random_algebra(seed, max_dim: int = 3, unital: bool | None = None) -> StructAlgebra:
    """Subalgebra of a matrix algebra generated by random small integer matrices.

    Half of the samples (when ``unital`` is None) include the identity
    matrix and are unital; the rest are generated by non-invertible
    matrices and are usually non-unital.  Samples whose span exceeds
    ``max_dim`` are rejected.
    """
    rng = _rng(seed)
    want_unit = rng.random() < 0.5 if unital is None else unital
    while True:
        size = rng.randint(2, 3)
        ngen = rng.randint(1, 2)
        gens = []
        for _ in range(ngen):
            m = [[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(size)] for _ in range(size)]
            if rng.random() < 0.8:
                # mostly strictly upper triangular, so nilpotent parts are common
                m = [[m[i][j] if j > i else 0 for j in range(size)] for i in range(size)]
            gens.append(m)
        if want_unit:
            gens.append([[1 if i == j else 0 for j in range(size)] for i in range(size)])
        res = _closure(gens, size, max_dim)
        if res is None:
            continue
        span, basis, flat, mul = res
        d = span.dim
        if d == 0:
            continue
        table = {}
        for i, x in enumerate(basis):
            for j, y in enumerate(basis):
                co = span.coordinates(flat(mul(x, y)))
                v = {k: c for k, c in enumerate(co) if c}
                if v:
                    table[(i, j)] = v
        unit = None
        ident = flat([[1 if i == j else 0 for j in range(size)] for i in range(size)])
        if want_unit:
            unit = span.coordinates(ident)
        a = StructAlgebra(d, table, unit=unit, name=f"rand{d}")
        if unital is False and a.unital:
            continue
        return a
