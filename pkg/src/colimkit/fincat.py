"""Finite categories, diagram functors and derived colimits via the nerve.

A chain ``(a_1, ..., a_n)`` in degree ``n`` is a sequence of composable
morphisms ``x_0 <-a_1- x_1 <-a_2- ... <-a_n- x_n``, i.e.
``dom(a_i) == cod(a_{i+1})``.  Its summand in ``C_n(C, M)`` is
``M(dom a_n)``.  The faces are

* ``d_0`` drops ``a_1``;
* ``d_i`` (``0 < i < n``) replaces ``a_i, a_{i+1}`` by ``a_i ∘ a_{i+1}``;
* ``d_n`` drops ``a_n`` and moves the coefficient along ``M(a_n)``;

and the boundary is ``Σ (-1)^i d_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import exactla as la
from .complexes import ChainComplex, ChainMap, HomologyClassSpace, homology_q, homology_z
from .errors import ValidationError
from .exactla import ExactMatrix, Subspace

MAX_MORPHISMS = 64


class FinCategory:
    """A finite category given by objects, morphisms and a composition table.

    Objects and morphisms are referred to by index internally; labels are
    kept for I/O.  Identity morphisms are created automatically (named
    ``1_<obj>``) unless ``identities`` names existing morphisms.
    ``compose`` maps ``(g, f)`` (labels or indices) to ``g ∘ f`` for every
    composable pair with neither factor an identity.
    """

    def __init__(self, objects: Sequence, morphisms: Sequence[tuple], compose: Mapping,
                 identities: Mapping | None = None, max_morphisms: int = MAX_MORPHISMS,
                 check: bool = True):
        self.objects = list(objects)
        if len(set(self.objects)) != len(self.objects):
            raise ValidationError("duplicate object labels")
        self.obj_index = {o: i for i, o in enumerate(self.objects)}
        names, dom, cod = [], [], []
        for entry in morphisms:
            name, d, c = entry
            if d not in self.obj_index or c not in self.obj_index:
                raise ValidationError(f"morphism {name!r} has unknown endpoint", location=f"morphism {name}")
            names.append(name)
            dom.append(self.obj_index[d])
            cod.append(self.obj_index[c])
        ident = [None] * len(self.objects)
        for o, name in (identities or {}).items():
            if name not in names:
                raise ValidationError(f"identity {name!r} is not a listed morphism")
            k = names.index(name)
            if dom[k] != self.obj_index[o] or cod[k] != self.obj_index[o]:
                raise ValidationError(f"identity {name!r} is not an endomorphism of {o!r}")
            ident[self.obj_index[o]] = k
        for i, o in enumerate(self.objects):
            if ident[i] is None:
                name = f"1_{o}"
                if name in names:
                    raise ValidationError(f"morphism name {name!r} collides with an identity")
                ident[i] = len(names)
                names.append(name)
                dom.append(i)
                cod.append(i)
        if len(set(names)) != len(names):
            raise ValidationError("duplicate morphism labels")
        if len(names) > max_morphisms:
            raise ValidationError(f"{len(names)} morphisms exceed the cap of {max_morphisms}")
        self.morphisms = names
        self.mor_index = {n: i for i, n in enumerate(names)}
        self.dom = dom
        self.cod = cod
        self.identity = ident
        self._is_identity = set(ident)
        n = len(names)
        table: dict[tuple[int, int], int] = {}
        for (g, f), gf in compose.items():
            gi, fi, gfi = self._m(g), self._m(f), self._m(gf)
            if dom[gi] != cod[fi]:
                raise ValidationError(f"composite {g}∘{f} listed for non-composable pair",
                                      location=f"compose {g},{f}")
            if dom[gfi] != dom[fi] or cod[gfi] != cod[gi]:
                raise ValidationError(f"composite {g}∘{f} = {gf} has wrong endpoints",
                                      location=f"compose {g},{f}")
            if (gi, fi) in table and table[(gi, fi)] != gfi:
                raise ValidationError(f"composite {g}∘{f} listed twice with different values")
            table[(gi, fi)] = gfi
        for f in range(n):
            for key, val in (((ident[cod[f]], f), f), ((f, ident[dom[f]]), f)):
                if key in table and table[key] != val:
                    raise ValidationError(f"identity law fails for {names[f]}",
                                          location=f"morphism {names[f]}")
                table[key] = val
        self._comp = table
        self.out_of: list[list[int]] = [[] for _ in self.objects]  # by domain
        self.into: list[list[int]] = [[] for _ in self.objects]    # by codomain
        for f in range(n):
            self.out_of[dom[f]].append(f)
            self.into[cod[f]].append(f)
        if check:
            self.validate()

    def _m(self, ref) -> int:
        if isinstance(ref, int) and not isinstance(ref, bool) and ref not in self.mor_index:
            if 0 <= ref < len(self.morphisms):
                return ref
        if ref in self.mor_index:
            return self.mor_index[ref]
        raise ValidationError(f"unknown morphism {ref!r}")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def is_identity(self, f: int) -> bool:
        return f in self._is_identity

    def compose(self, g: int, f: int) -> int:
        """Index of ``g ∘ f``."""
        try:
            return self._comp[(g, f)]
        except KeyError:
            if self.dom[g] != self.cod[f]:
                raise ValidationError(f"{self.morphisms[g]} ∘ {self.morphisms[f]} not composable") from None
            raise ValidationError(f"composite {self.morphisms[g]} ∘ {self.morphisms[f]} missing "
                                  "from the table") from None

    def hom(self, a: int, b: int) -> list[int]:
        return [f for f in self.out_of[a] if self.cod[f] == b]

    def validate(self) -> None:
        """Exhaustive totality and associativity check."""
        n = self.n_morphisms
        for g in range(n):
            for f in self.into[self.dom[g]]:
                if (g, f) not in self._comp:
                    raise ValidationError(f"composite {self.morphisms[g]}∘{self.morphisms[f]} missing",
                                          location=f"compose {self.morphisms[g]},{self.morphisms[f]}")
        for h in range(n):
            for g in self.into[self.dom[h]]:
                hg = self._comp[(h, g)]
                for f in self.into[self.dom[g]]:
                    if self._comp[(hg, f)] != self._comp[(h, self._comp[(g, f)])]:
                        names = self.morphisms
                        raise ValidationError(
                            f"associativity fails for ({names[h]}, {names[g]}, {names[f]})",
                            location=f"compose {names[h]},{names[g]},{names[f]}")

    def __repr__(self):
        return f"FinCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"


class DiagramFunctor:
    """A functor ``M : C -> free modules`` (dims per object, a matrix per morphism).

    ``M(f)`` has shape ``dim(cod f) x dim(dom f)``.  Identity morphisms
    default to identity matrices; other missing morphisms are an error.
    """

    def __init__(self, category: FinCategory, dims: Mapping, maps: Mapping,
                 ring: str = la.RATIONAL, check: bool = True):
        self.category = category
        self.ring = ring
        c = category
        self.dims = []
        for o in c.objects:
            if o not in dims:
                raise ValidationError(f"no dimension given for object {o!r}", location=f"dims.{o}")
            d = int(dims[o])
            if d < 0:
                raise ValidationError("negative dimension", location=f"dims.{o}")
            self.dims.append(d)
        mats: list = [None] * c.n_morphisms
        for ref, m in maps.items():
            f = c._m(ref)
            if not isinstance(m, ExactMatrix):
                m = ExactMatrix.from_dense(m, ring, ncols=self.dims[c.dom[f]]) if m else \
                    ExactMatrix.zeros(self.dims[c.cod[f]], self.dims[c.dom[f]], ring)
            shape = (self.dims[c.cod[f]], self.dims[c.dom[f]])
            if m.shape != shape:
                raise ValidationError(f"matrix of {c.morphisms[f]} has shape {m.shape}, expected {shape}",
                                      location=f"maps.{c.morphisms[f]}")
            mats[f] = m.as_ring(ring) if ring == la.INTEGER else m
        for f in range(c.n_morphisms):
            if mats[f] is None:
                if c.is_identity(f):
                    mats[f] = ExactMatrix.identity(self.dims[c.dom[f]], ring)
                else:
                    raise ValidationError(f"no matrix for morphism {c.morphisms[f]}",
                                          location=f"maps.{c.morphisms[f]}")
        self.maps = mats
        if check:
            self.validate()

    def __call__(self, f: int) -> ExactMatrix:
        return self.maps[f]

    def validate(self) -> None:
        c = self.category
        for o, f in enumerate(c.identity):
            if self.maps[f] != ExactMatrix.identity(self.dims[o], self.ring):
                raise ValidationError(f"identity of {c.objects[o]!r} is not sent to the identity",
                                      location=f"maps.{c.morphisms[f]}")
        for (g, f), gf in c._comp.items():
            if c.is_identity(g) or c.is_identity(f):
                continue
            if self.maps[g] @ self.maps[f] != self.maps[gf]:
                raise ValidationError(
                    f"M({c.morphisms[g]})·M({c.morphisms[f]}) ≠ M({c.morphisms[gf]})",
                    location=f"maps.{c.morphisms[gf]}")


def constant_functor(c: FinCategory, d: int, ring: str = la.RATIONAL) -> DiagramFunctor:
    ident = ExactMatrix.identity(d, ring)
    return DiagramFunctor(c, {o: d for o in c.objects},
                          {f: ident for f in range(c.n_morphisms)}, ring, check=False)


# ---------------------------------------------------------------------------
# nerve
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NerveChain:
    """``(a_1, ..., a_n)`` with ``dom(a_i) = cod(a_{i+1})``; degree 0 is an object."""

    degree: int
    morphisms: tuple
    obj: int | None = None

    def source(self, c: FinCategory) -> int:
        """Object carrying the coefficient: ``dom(a_n)`` (or the object itself)."""
        return self.obj if self.degree == 0 else c.dom[self.morphisms[-1]]


def _chain_tuples(c: FinCategory, n: int, normalized: bool) -> list[tuple]:
    if n == 0:
        return [(o,) for o in range(c.n_objects)]
    mors = [f for f in range(c.n_morphisms) if not (normalized and c.is_identity(f))]
    level = [(f,) for f in mors]
    for _ in range(n - 1):
        nxt = []
        for ch in level:
            for f in c.into[c.dom[ch[-1]]]:
                if normalized and c.is_identity(f):
                    continue
                nxt.append(ch + (f,))
        level = nxt
    return level


def nerve_chains(c: FinCategory, n: int, normalized: bool = True) -> list[NerveChain]:
    if n < 0:
        raise ValidationError("degree must be nonnegative")
    if n == 0:
        return [NerveChain(0, (), o) for o in range(c.n_objects)]
    return [NerveChain(n, t) for t in _chain_tuples(c, n, normalized)]


def colim_complex(c: FinCategory, m: DiagramFunctor, max_degree: int,
                  normalized: bool = True) -> ChainComplex:
    """``C_•(C, M)`` through degree ``max_degree + 1``."""
    if max_degree < 0:
        raise ValidationError("max_degree must be nonnegative")
    top = max_degree + 1
    chains = [_chain_tuples(c, n, normalized) for n in range(top + 1)]
    offsets = []
    dims = {}
    for n, chs in enumerate(chains):
        off = {}
        pos = 0
        for ch in chs:
            src = ch[0] if n == 0 else c.dom[ch[-1]]
            off[ch] = pos
            pos += m.dims[src]
        offsets.append(off)
        dims[n] = pos
    diffs = {}
    for n in range(1, top + 1):
        rows = [dict() for _ in range(dims[n - 1])]
        toff = offsets[n - 1]
        for ch in chains[n]:
            src = c.dom[ch[-1]]
            d = m.dims[src]
            if d == 0:
                continue
            col0 = offsets[n][ch]
            if n == 1:
                f = ch[0]
                # d_0 leaves the vertex dom(a_1); d_1 leaves cod(a_1) and applies M(a_1)
                faces = [(1, (c.dom[f],), None), (-1, (c.cod[f],), f)]
            else:
                faces = [(1, ch[1:], None)]
                for i in range(1, n):
                    faces.append(((-1) ** i,
                                  ch[:i - 1] + (c.compose(ch[i - 1], ch[i]),) + ch[i + 1:], None))
                faces.append(((-1) ** n, ch[:-1], ch[-1]))
            for sign, key, mor in faces:
                if normalized and n > 1 and any(c.is_identity(g) for g in key):
                    continue
                r0 = toff[key]
                if mor is None:
                    for k in range(d):
                        row = rows[r0 + k]
                        v = row.get(col0 + k, 0) + sign
                        if v:
                            row[col0 + k] = v
                        else:
                            row.pop(col0 + k, None)
                else:
                    for k, mr in enumerate(m(mor).row_dicts()):
                        row = rows[r0 + k]
                        for j, x in mr.items():
                            v = row.get(col0 + j, 0) + sign * x
                            if v:
                                row[col0 + j] = v
                            else:
                                row.pop(col0 + j, None)
        diffs[n] = ExactMatrix._wrap(dims[n - 1], dims[n], rows, m.ring)
    return ChainComplex(dims, diffs, m.ring)


def derived_colim(c: FinCategory, m: DiagramFunctor, max_degree: int, normalized: bool = True,
                  representatives: bool = False) -> list[HomologyClassSpace]:
    """``colim_n M`` for ``n = 0..max_degree`` (with torsion over Z)."""
    cx = colim_complex(c, m, max_degree, normalized)
    degs = range(0, max_degree + 1)
    if m.ring == la.INTEGER:
        return homology_z(cx, degs)
    return homology_q(cx, degs, representatives=representatives)


# ---------------------------------------------------------------------------
# connectivity, coproducts, constant quotient
# ---------------------------------------------------------------------------

def is_strongly_connected(c: FinCategory) -> bool:
    return all(c.hom(a, b) for a in range(c.n_objects) for b in range(c.n_objects))


@dataclass(eq=False)
class ConstantQuotient:
    dim: int
    projection: ExactMatrix
    relations: Subspace
    torsion: tuple = ()


def colim0_coeq(c: FinCategory, m: DiagramFunctor, base_object=None) -> ConstantQuotient:
    """``M(c_0)`` modulo the images of ``M(a) - M(b)`` over parallel ``a, b : c -> c_0``.

    Over Q the result is a dimension plus a projection onto the quotient
    (rows = complement coordinates).  Over Z the quotient is described by
    its Betti number and torsion via Smith normal form; ``projection`` is
    then the relation matrix.
    """
    if not is_strongly_connected(c):
        raise ValidationError("colim0_coeq requires a strongly connected category")
    b = 0 if base_object is None else c.obj_index.get(base_object, base_object)
    if not isinstance(b, int) or not 0 <= b < c.n_objects:
        raise ValidationError(f"unknown base object {base_object!r}")
    d0 = m.dims[b]
    vecs = []
    for src in range(c.n_objects):
        par = c.hom(src, b)
        if len(par) < 2:
            continue
        first = m(par[0])
        for other in par[1:]:
            diff = (m(other) - first).transpose()
            vecs.extend(r for r in diff.row_dicts() if r)
    if m.ring == la.INTEGER:
        rel = ExactMatrix.from_row_dicts(vecs, d0, la.INTEGER) if vecs else ExactMatrix.zeros(0, d0, la.INTEGER)
        facs = la.invariant_factors(rel) if vecs else ()
        return ConstantQuotient(d0 - len(facs), rel, Subspace.span(d0, vecs),
                                tuple(x for x in facs if x > 1))
    rel = Subspace.span(d0, vecs)
    comp = [j for j in range(d0) if j not in set(rel.pivots)]
    # projection onto the non-pivot coordinates after reducing mod the relations
    rows = []
    for j in comp:
        row = {j: 1}
        for pc, r in zip(rel.pivots, rel.rows):
            x = r.get(j)
            if x:
                row[pc] = -x
        rows.append(row)
    proj = ExactMatrix.from_row_dicts(rows, d0)
    return ConstantQuotient(len(comp), proj, rel)


def has_pairwise_coproducts(c: FinCategory):
    """Brute-force search for coproducts of every ordered pair of objects.

    Returns ``(ok, table)`` where ``table[(a, b)] = (obj, i_a, i_b)`` for
    every pair that has a coproduct.  Checks the universal property: for
    every ``x`` and ``f: a -> x, g: b -> x`` there is exactly one
    ``h: s -> x`` with ``h∘i_a = f`` and ``h∘i_b = g``.
    """
    table = {}
    ok = True
    n = c.n_objects
    for a in range(n):
        for b in range(n):
            found = None
            for s in range(n):
                for ia in c.hom(a, s):
                    for ib in c.hom(b, s):
                        if _is_coproduct(c, a, b, s, ia, ib):
                            found = (s, ia, ib)
                            break
                    if found:
                        break
                if found:
                    break
            if found is None:
                ok = False
            else:
                table[(a, b)] = found
    return ok, table


def _is_coproduct(c, a, b, s, ia, ib) -> bool:
    for x in range(c.n_objects):
        hs = c.hom(s, x)
        seen = {}
        for h in hs:
            key = (c.compose(h, ia), c.compose(h, ib))
            if key in seen:
                return False
            seen[key] = h
        for f in c.hom(a, x):
            for g in c.hom(b, x):
                if (f, g) not in seen:
                    return False
    return True


# ---------------------------------------------------------------------------
# tensor products of functors
# ---------------------------------------------------------------------------

def external_tensor(c: FinCategory, phi: DiagramFunctor, psi: DiagramFunctor) -> DiagramFunctor:
    """Objectwise tensor product ``(Φ⊗Ψ)(x) = Φ(x)⊗Ψ(x)`` (Kronecker products)."""
    if phi.category is not c or psi.category is not c:
        raise ValidationError("functors live on different categories")
    if phi.ring != la.RATIONAL or psi.ring != la.RATIONAL:
        raise ValidationError("external_tensor is implemented over Q")
    dims = {o: phi.dims[i] * psi.dims[i] for i, o in enumerate(c.objects)}
    maps = {f: phi(f).kron(psi(f)) for f in range(c.n_morphisms)}
    return DiagramFunctor(c, dims, maps, la.RATIONAL, check=False)


def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    """``C × D`` with morphisms ``(f, g)``."""
    objs = [(x, y) for x in c.objects for y in d.objects]
    mors = []
    for f in range(c.n_morphisms):
        for g in range(d.n_morphisms):
            mors.append(((c.morphisms[f], d.morphisms[g]),
                         (c.objects[c.dom[f]], d.objects[d.dom[g]]),
                         (c.objects[c.cod[f]], d.objects[d.cod[g]])))
    ident = {(c.objects[i], d.objects[j]): (c.morphisms[c.identity[i]], d.morphisms[d.identity[j]])
             for i in range(c.n_objects) for j in range(d.n_objects)}
    comp = {}
    for (g1, f1), h1 in c._comp.items():
        for (g2, f2), h2 in d._comp.items():
            comp[((c.morphisms[g1], d.morphisms[g2]), (c.morphisms[f1], d.morphisms[f2]))] = \
                (c.morphisms[h1], d.morphisms[h2])
    return FinCategory(objs, mors, comp, identities=ident,
                       max_morphisms=max(MAX_MORPHISMS, len(mors)), check=False)


def nerve_chain_map(c: FinCategory, m: DiagramFunctor, n_: DiagramFunctor,
                    eta: Mapping[int, ExactMatrix], max_degree: int,
                    normalized: bool = True) -> ChainMap:
    """Chain map ``C_•(C, M) -> C_•(C, N)`` induced by a natural transformation ``eta``.

    ``eta[o]`` is the component at object index ``o``; naturality is checked.
    """
    for f in range(c.n_morphisms):
        if n_(f) @ eta[c.dom[f]] != eta[c.cod[f]] @ m(f):
            raise ValidationError(f"transformation is not natural at {c.morphisms[f]}")
    src = colim_complex(c, m, max_degree, normalized)
    tgt = colim_complex(c, n_, max_degree, normalized)
    maps = {}
    for k in range(max_degree + 2):
        chs = _chain_tuples(c, k, normalized)
        blocks = [eta[ch[0] if k == 0 else c.dom[ch[-1]]] for ch in chs]
        maps[k] = ExactMatrix.block_diag(blocks, m.ring)
    return ChainMap(src, tgt, maps)
