"""Hochschild and cyclic homology of small and weight-graded algebras.

Conventions (fixed here once):

* normalized Hochschild chains ``C_n(A, M) = M ⊗ Ā^{⊗n}`` with
  ``b(m, a_1..a_n) = (m a_1, a_2..) + Σ_{0<i<n} (-1)^i (.., a_i a_{i+1}, ..)
  + (-1)^n (a_n m, a_1..a_{n-1})``;
* Connes' operator on normalized chains
  ``B(a_0..a_n) = Σ_i (-1)^{n i} (1, a_i..a_n, a_0..a_{i-1})``
  (zero when ``a_0`` is the unit);
* the bicomplex has ``C_{q-p}`` at ``(p, q)`` for ``q ≥ p ≥ 0``, vertical
  ``b`` and horizontal ``B``; totalization gives ``d = b + B``;
* the cyclic operator on ``A^{⊗(n+1)}`` is
  ``t(a_0..a_n) = (-1)^n (a_n, a_0..a_{n-1})``.

All algebras follow the protocol described in :mod:`colimkit.algebras`.
Every chain group is split by the grade of its chains, and each block is
an independent complex.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Mapping

from . import exactla as la
from .algebras import Bimodule, RegularCoefficients, StructAlgebra, unitalize
from .complexes import (ChainComplex, ChainMap, DoubleComplex, homology_q,
                        les_check, totalize)
from .errors import ValidationError
from .exactla import ExactMatrix, Subspace

DEFAULT_MAX_DEGREE = 4


def _add_grade(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(x + y for x, y in zip(a, b))


def _by_weight(source, keys_filter: Callable | None, max_w: int | None) -> dict:
    """``{weight: [keys]}`` for the weights a source carries (up to ``max_w``)."""
    out = {}
    for w in source.weights(max_w):
        ks = source.keys_of_weight(w)
        if keys_filter is not None:
            ks = [k for k in ks if keys_filter(k)]
        if ks:
            out[w] = ks
    return out


def _enumerate(first: dict, rest: dict, length: int, weight: int | None, grade_first,
               grade_rest=None) -> dict:
    """Tuples ``(k_0, k_1..k_length)`` with ``k_0`` from ``first`` and the
    others from ``rest`` (both ``{weight: keys}``) of total weight ``weight``
    (any weight when ``None``), grouped by total grade."""
    grade_rest = grade_rest or grade_first
    blocks: dict = defaultdict(list)
    rest_ws = sorted(rest)
    min_rest = rest_ws[0] if rest_ws else 0

    def rec(prefix, grade, budget, slots):
        if slots == 0:
            if budget is None or budget == 0:
                blocks[grade].append(prefix)
            return
        for w in rest_ws:
            if budget is not None and w + min_rest * (slots - 1) > budget:
                break
            nb = None if budget is None else budget - w
            for k in rest[w]:
                rec(prefix + (k,), _add_grade(grade, grade_rest(k)), nb, slots - 1)

    for w, ks in sorted(first.items()):
        if weight is not None and w + min_rest * length > weight:
            continue
        if length and not rest:
            continue
        nb = None if weight is None else weight - w
        for k in ks:
            rec((k,), grade_first(k), nb, length)
    return blocks


@dataclass(eq=False)
class HochschildBlock:
    """Normalized Hochschild chains of one grade, degrees ``0..top``."""

    grade: tuple
    chains: list          # chains[j] = list of tuples (m, a_1..a_j)
    index: list           # index[j] = {chain: position}


class HochschildEngine:
    """Builds normalized Hochschild chain groups and the maps b, B on them."""

    def __init__(self, algebra, coefficients=None, max_weight: int | None = None):
        self.A = algebra
        self.M = coefficients if coefficients is not None else RegularCoefficients(algebra)
        self.unit = algebra.unit_key
        self.graded = getattr(algebra, "graded", True)
        self.max_weight = max_weight
        if self.graded and max_weight is None:
            raise ValidationError("graded computations need a maximal weight")
        unit = self.unit
        self._abar = _by_weight(algebra, (lambda k: k != unit) if unit is not None else None,
                                max_weight if self.graded else None)
        self._mkeys = _by_weight(self.M, None, max_weight if self.graded else None)

    def blocks(self, top: int, weight: int | None = None) -> dict:
        """``{grade: HochschildBlock}`` for chains of total weight ``weight``."""
        per_degree = []
        for j in range(top + 1):
            per_degree.append(_enumerate(self._mkeys, self._abar, j, weight if self.graded else None,
                                         self.M.grade, self.A.grade))
        grades = set()
        for d in per_degree:
            grades.update(d)
        out = {}
        for g in sorted(grades):
            chains = [per_degree[j].get(g, []) for j in range(top + 1)]
            index = [{c: i for i, c in enumerate(cs)} for cs in chains]
            out[g] = HochschildBlock(g, chains, index)
        return out

    def b_matrix(self, blk: HochschildBlock, j: int) -> ExactMatrix:
        """``b : C_j -> C_{j-1}`` on one block."""
        src, tgt = blk.chains[j], blk.index[j - 1]
        A, M, unit = self.A, self.M, self.unit
        rows_n = len(blk.chains[j - 1])
        cols = []
        for ch in src:
            col: dict = {}
            m, a = ch[0], ch[1:]
            for k, c in M.act_right(m, a[0]).items():
                key = (k,) + a[1:]
                _acc(col, tgt[key], c)
            for i in range(1, j):
                for k, c in A.mul(a[i - 1], a[i]).items():
                    if k == unit:
                        continue
                    key = (m,) + a[:i - 1] + (k,) + a[i + 1:]
                    _acc(col, tgt[key], c if i % 2 == 0 else -c)
            sign = -1 if j % 2 else 1
            for k, c in M.act_left(a[-1], m).items():
                key = (k,) + a[:-1]
                _acc(col, tgt[key], sign * c)
            cols.append(col)
        return ExactMatrix.from_columns(cols, rows_n)

    def B_matrix(self, blk: HochschildBlock, j: int) -> ExactMatrix:
        """Connes' ``B : C_j -> C_{j+1}`` on one block (coefficients in A)."""
        unit = self.unit
        if unit is None:
            raise ValidationError("Connes' operator needs a unital algebra")
        tgt = blk.index[j + 1]
        cols = []
        for ch in blk.chains[j]:
            col: dict = {}
            if ch[0] != unit:
                n = j
                for i in range(n + 1):
                    key = (unit,) + ch[i:] + ch[:i]
                    _acc(col, tgt[key], -1 if (n * i) % 2 else 1)
            cols.append(col)
        return ExactMatrix.from_columns(cols, len(blk.chains[j + 1]))

    def complex(self, blk: HochschildBlock) -> ChainComplex:
        top = len(blk.chains) - 1
        dims = {j: len(blk.chains[j]) for j in range(top + 1)}
        diffs = {j: self.b_matrix(blk, j) for j in range(1, top + 1) if dims[j] and dims[j - 1]}
        return ChainComplex(dims, diffs, check=la.CHECK_INVARIANTS)


def _acc(col: dict, k: int, c) -> None:
    v = col.get(k, 0) + c
    if v:
        col[k] = v
    else:
        col.pop(k, None)


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class GradedDims:
    """Homology dimensions, total and (for graded input) per weight."""

    max_degree: int
    total: list
    by_weight: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"max_degree": self.max_degree, "dims": list(self.total)}
        if self.by_weight:
            out["by_weight"] = {str(w): list(d) for w, d in sorted(self.by_weight.items())}
        return out


def _weights_to_scan(engine: HochschildEngine, max_weight: int | None) -> list:
    if not engine.graded:
        return [None]
    return list(range(0, max_weight + 1))


def _collect(per_weight: dict, max_degree: int) -> GradedDims:
    total = [0] * (max_degree + 1)
    for w, ds in per_weight.items():
        for n, d in enumerate(ds):
            total[n] += d
    if list(per_weight) == [None]:
        return GradedDims(max_degree, total)
    return GradedDims(max_degree, total, {w: ds for w, ds in per_weight.items()})


def _block_homology(cx: ChainComplex, max_degree: int) -> list:
    return [h.dim for h in homology_q(cx, range(0, max_degree + 1), representatives=False)]


# ---------------------------------------------------------------------------
# Hochschild homology
# ---------------------------------------------------------------------------

def hochschild(a, m=None, max_degree: int = DEFAULT_MAX_DEGREE,
               max_weight: int | None = None) -> GradedDims:
    """``HH_n(A, M)`` for ``n ≤ max_degree`` (``M = A`` by default).

    ``a`` must be unital.  Graded input is split by weight (and finer
    grades); chains of degree ``max_degree + 1`` are built so the top value
    is correct.
    """
    if a.unit_key is None:
        raise ValidationError("Hochschild homology is computed for unital algebras; "
                              "unitalize first")
    if isinstance(m, Bimodule) and m.algebra is not a:
        raise ValidationError("bimodule is over a different algebra")
    eng = HochschildEngine(a, m, max_weight)
    per_weight = {}
    for w in _weights_to_scan(eng, max_weight):
        acc = [0] * (max_degree + 1)
        for blk in eng.blocks(max_degree + 1, w).values():
            for n, d in enumerate(_block_homology(eng.complex(blk), max_degree)):
                acc[n] += d
        per_weight[w] = acc
    return _collect(per_weight, max_degree)


# ---------------------------------------------------------------------------
# cyclic homology via the (b, B) bicomplex
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class CyclicBicomplexSpec:
    algebra: object
    max_degree: int
    reduced: bool = False
    max_weight: int | None = None


def _bicomplex_block(eng: HochschildEngine, blk: HochschildBlock, top: int,
                     reduced: bool) -> DoubleComplex:
    unit = eng.unit
    chains = blk.chains
    # reduced: drop the unit 0-chain (the copy of B(k)) from the diagonal
    keep0 = [i for i, c in enumerate(chains[0]) if not (reduced and c == (unit,))]
    dims, hor, ver = {}, {}, {}
    bm = {j: eng.b_matrix(blk, j) for j in range(1, top + 1)}
    Bm = {j: eng.B_matrix(blk, j) for j in range(0, top)}
    if reduced:
        if 1 in bm:
            bm[1] = bm[1].take_rows(keep0)
        if 0 in Bm:
            Bm[0] = Bm[0].take_cols(keep0)
    for p in range(0, top // 2 + 1):
        for j in range(0, top - 2 * p + 1):
            q = p + j
            dims[(p, q)] = len(keep0) if j == 0 else len(chains[j])
            if j >= 1:
                m = bm[j]
                ver[(p, q)] = m if p % 2 == 0 else m.scale(-1)
            if p >= 1:
                hor[(p, q)] = Bm[j]
    # zero-dim entries are dropped by DoubleComplex; keep maps consistent
    hor = {k: v for k, v in hor.items() if dims.get(k) and dims.get((k[0] - 1, k[1]))}
    ver = {k: v for k, v in ver.items() if dims.get(k) and dims.get((k[0], k[1] - 1))}
    return DoubleComplex(dims, hor, ver, check=la.CHECK_INVARIANTS)


def cyclic_bicomplex(spec: CyclicBicomplexSpec) -> dict:
    """``{(weight, grade): DoubleComplex}`` truncated at total degree ``max_degree + 1``."""
    a = spec.algebra
    if a.unit_key is None:
        raise ValidationError("the bicomplex is built for unital algebras; use cyclic_nonunital")
    eng = HochschildEngine(a, None, spec.max_weight)
    top = spec.max_degree + 1
    out = {}
    for w in _weights_to_scan(eng, spec.max_weight):
        for g, blk in eng.blocks(top, w).items():
            out[(w, g)] = _bicomplex_block(eng, blk, top, spec.reduced)
    return out


def cyclic_homology(a, max_degree: int = DEFAULT_MAX_DEGREE, max_weight: int | None = None,
                    reduced: bool = False) -> GradedDims:
    """``HC_n(A)`` (or ``HC̄_n(A)``) from the totalized bicomplex."""
    spec = CyclicBicomplexSpec(a, max_degree, reduced, max_weight)
    per_weight: dict = {}
    for (w, _g), dc in cyclic_bicomplex(spec).items():
        acc = per_weight.setdefault(w, [0] * (max_degree + 1))
        tot = totalize(dc, range(0, max_degree + 2))
        for n, d in enumerate(_block_homology(tot, max_degree)):
            acc[n] += d
    if not per_weight:
        per_weight = {None: [0] * (max_degree + 1)}
    return _collect(per_weight, max_degree)


def cyclic_nonunital(a: StructAlgebra, max_degree: int = DEFAULT_MAX_DEGREE,
                     max_weight: int | None = None) -> GradedDims:
    """``HC_n(A) = HC̄_n(A_+)`` for a non-unital algebra."""
    if a.unit_key is not None:
        raise ValidationError("algebra is unital; use cyclic_homology")
    return cyclic_homology(unitalize(a), max_degree, max_weight, reduced=True)


# ---------------------------------------------------------------------------
# Connes' cyclic coinvariant complex
# ---------------------------------------------------------------------------

def _lambda_block(a, tuples_by_deg: dict, top: int) -> ChainComplex:
    """Coinvariants of ``A^{⊗(n+1)}`` under ``t`` with the induced ``b``."""
    orbit_of = []   # per degree: {tuple: (orbit index, sign)} for nonzero orbits
    reps = []
    for n in range(top + 1):
        s = -1 if n % 2 else 1
        where: dict = {}
        rep_list = []
        for tup in tuples_by_deg.get(n, []):
            if tup in where:
                continue
            # walk the orbit of t: t(x_0..x_n) = s·(x_n, x_0..x_{n-1})
            orbit = [tup]
            cur = tup
            while True:
                cur = (cur[-1],) + cur[:-1]
                if cur == tup:
                    break
                orbit.append(cur)
            length = len(orbit)
            killed = s == -1 and length % 2 == 1
            # after `length` steps the sign picked up is s^length
            idx = len(rep_list) if not killed else None
            for k, y in enumerate(orbit):
                # y = rot^k(tup) and t^k(tup) = s^k y, so [y] = s^k [tup]
                where[y] = (idx, s ** k if idx is not None else 0)
            if not killed:
                rep_list.append(tup)
        orbit_of.append(where)
        reps.append(rep_list)
    dims = {n: len(reps[n]) for n in range(top + 1)}
    diffs = {}
    for n in range(1, top + 1):
        cols = []
        tgt = orbit_of[n - 1]
        for tup in reps[n]:
            col: dict = {}
            for i in range(n):
                for k, c in a.mul(tup[i], tup[i + 1]).items():
                    y = tup[:i] + (k,) + tup[i + 2:]
                    idx, sg = tgt[y]
                    if idx is not None:
                        _acc(col, idx, (c if i % 2 == 0 else -c) * sg)
            sign = -1 if n % 2 else 1
            for k, c in a.mul(tup[n], tup[0]).items():
                y = (k,) + tup[1:n]
                idx, sg = tgt[y]
                if idx is not None:
                    _acc(col, idx, sign * c * sg)
            cols.append(col)
        diffs[n] = ExactMatrix.from_columns(cols, dims[n - 1])
    return ChainComplex(dims, diffs, check=la.CHECK_INVARIANTS)


def lambda_complexes(a, max_degree: int, max_weight: int | None = None) -> dict:
    """``{(weight, grade): ChainComplex}`` for Connes' complex ``C^λ(A)``."""
    allkeys = _by_weight(a, None, max_weight)
    graded = any(a.grade(k) for ks in allkeys.values() for k in ks)
    if graded and max_weight is None:
        raise ValidationError("graded computations need a maximal weight")
    top = max_degree + 1
    weights = range(0, max_weight + 1) if graded else [None]
    out = {}
    for w in weights:
        per_deg = {n: _enumerate(allkeys, allkeys, n, w, a.grade) for n in range(top + 1)}
        grades = set()
        for d in per_deg.values():
            grades.update(d)
        for g in sorted(grades):
            out[(w, g)] = _lambda_block(a, {n: per_deg[n].get(g, []) for n in per_deg}, top)
    return out


def lambda_complex(a, max_degree: int) -> ChainComplex:
    """Ungraded convenience wrapper: the single complex ``C^λ_0..C^λ_{N+1}``."""
    cxs = lambda_complexes(a, max_degree)
    if len(cxs) != 1:
        raise ValidationError("graded algebra: use lambda_complexes")
    return next(iter(cxs.values()))


def lambda_homology(a, max_degree: int = DEFAULT_MAX_DEGREE,
                    max_weight: int | None = None) -> GradedDims:
    per_weight: dict = {}
    for (w, _g), cx in lambda_complexes(a, max_degree, max_weight).items():
        acc = per_weight.setdefault(w, [0] * (max_degree + 1))
        for n, d in enumerate(_block_homology(cx, max_degree)):
            acc[n] += d
    if not per_weight:
        per_weight = {None: [0] * (max_degree + 1)}
    return _collect(per_weight, max_degree)


# ---------------------------------------------------------------------------
# SBI sequence
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class SBIResult:
    exact: bool
    hh: list
    hc: list
    blocks: list
    failures: list

    def as_dict(self) -> dict:
        return {"exact": self.exact, "HH": self.hh, "HC": self.hc, "failures": self.failures}


def sbi_sequence(a, max_degree: int = 5, max_weight: int | None = None) -> SBIResult:
    """Check exactness of ``… → HH_n → HC_n → HC_{n-2} → HH_{n-1} → …``.

    ``I`` is the inclusion of column 0 of the bicomplex and ``S`` the
    projection that forgets it (shifting the remaining columns by one);
    the connecting map of the resulting short exact sequence is ``B``.
    Complexes run to degree ``max_degree + 1``.
    """
    if a.unit_key is None:
        raise ValidationError("the SBI sequence is built for unital algebras")
    eng = HochschildEngine(a, None, max_weight)
    top = max_degree + 1
    hh = [0] * (max_degree + 1)
    hc = [0] * (max_degree + 1)
    results, failures = [], []
    for w in _weights_to_scan(eng, max_weight):
        for g, blk in eng.blocks(top, w).items():
            hcx = eng.complex(blk)
            dc = _bicomplex_block(eng, blk, top, reduced=False)
            tot = totalize(dc, range(0, top + 1))
            shifted_dims = {n: (tot.dim(n - 2) if n >= 2 else 0) for n in range(top + 1)}
            shifted_d = {n: tot.d(n - 2) for n in range(3, top + 1)}
            shifted = ChainComplex(shifted_dims, shifted_d, check=False)
            imaps, smaps = {}, {}
            for n in range(top + 1):
                lay = dc.layout(n)
                rows = {}
                for p, q, off, d in lay:
                    if p == 0:
                        rows = {off + k: k for k in range(d)}
                cols = [dict() for _ in range(hcx.dim(n))]
                for r, k in rows.items():
                    cols[k] = {r: 1}
                imaps[n] = ExactMatrix.from_columns(cols, tot.dim(n))
                # S: summand (p, q), p ≥ 1, goes to (p-1, q-1) in degree n-2
                target = {(p, q): off for p, q, off, _ in dc.layout(n - 2)} if n >= 2 else {}
                scols = []
                for p, q, off, d in lay:
                    for k in range(d):
                        if p >= 1:
                            scols.append({target[(p - 1, q - 1)] + k: 1})
                        else:
                            scols.append({})
                smaps[n] = ExactMatrix.from_columns(scols, shifted.dim(n))
            i_map = ChainMap(hcx, tot, imaps)
            s_map = ChainMap(tot, shifted, smaps)
            res = les_check(i_map, s_map, names=("HH", "HC", "HC[-2]"))
            results.append((w, g, res))
            failures += [f"weight {w}, grade {g}: {f}" for f in res.failures]
            for n, d in enumerate(_block_homology(hcx, max_degree)):
                hh[n] += d
            for n, d in enumerate(_block_homology(tot, max_degree)):
                hc[n] += d
    return SBIResult(not failures, hh, hc, results, failures)


# ---------------------------------------------------------------------------
# Ω(A) and H_1 through it
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Omega:
    """``Ω(A) = Ker(A⊗A -> A)``; ``basis`` rows live in ``A⊗A`` (index ``i·d + j``)."""

    algebra: StructAlgebra
    basis: Subspace

    @property
    def dim(self) -> int:
        return self.basis.dim

    def act(self, left: Mapping, x: Mapping, right: Mapping) -> dict:
        """``a'(Σ x_ij e_i⊗e_j)b' = Σ x_ij (a'e_i)⊗(e_j b')``."""
        a = self.algebra
        d = a.dim
        out: dict = {}
        for ij, c in x.items():
            i, j = divmod(ij, d)
            li = a.mul_vec(left, {i: 1})
            rj = a.mul_vec({j: 1}, right)
            for p, u in li.items():
                for q, v in rj.items():
                    _acc(out, p * d + q, c * u * v)
        return out


def omega(a: StructAlgebra) -> Omega:
    if a.unit_key is None:
        raise ValidationError("Ω(A) is formed for unital algebras")
    d = a.dim
    cols = [a.mul(i, j) for i in range(d) for j in range(d)]
    mult = ExactMatrix.from_columns(cols, d)
    return Omega(a, la.kernel(mult))


def h1_via_omega(a: StructAlgebra, m: Bimodule | None = None) -> int:
    """``dim Ker(α_M : Ω(A) ⊗_{A^e} M -> M)`` with ``α((x⊗y)⊗m) = y m x``.

    Everything is computed inside ``A⊗A⊗M``: ``Ω⊗M`` is spanned by
    ``ω⊗e_k``, the balancing relations by ``aω⊗m - ω⊗ma`` and
    ``ωa⊗m - ω⊗am``; α kills the relations, so
    ``dim H_1 = dim(Ω⊗M) - dim Rel - rank α|_{Ω⊗M}``.
    """
    if m is None:
        m = Bimodule.regular(a)
    om = omega(a)
    d, dm = a.dim, m.dim
    amb = d * d * dm

    def tensor(x: Mapping, mvec: Mapping) -> dict:
        return {ij * dm + k: c * v for ij, c in x.items() for k, v in mvec.items()}

    def act_m(mats, i, vec):
        out: dict = {}
        for k, c in vec.items():
            for r, v in mats[i].columns()[k].items():
                _acc(out, r, c * v)
        return out

    omega_rows = list(om.basis.rows)
    space = [tensor(x, {k: 1}) for x in omega_rows for k in range(dm)]
    rel = []
    for x in omega_rows:
        for i in range(d):
            ax = om.act({i: 1}, x, a.unit_vector())
            xa = om.act(a.unit_vector(), x, {i: 1})
            for k in range(dm):
                ek = {k: 1}
                v = tensor(ax, ek)
                _acc_all(v, tensor(x, act_m(m.right, i, ek)), -1)
                rel.append(v)
                v = tensor(xa, ek)
                _acc_all(v, tensor(x, act_m(m.left, i, ek)), -1)
                rel.append(v)
    # α on the basis of A⊗A⊗M: e_i⊗e_j⊗e_k ↦ e_j·e_k·e_i
    cols = []
    for i in range(d):
        for j in range(d):
            for k in range(dm):
                v = act_m(m.left, j, {k: 1})
                out: dict = {}
                for r, c in v.items():
                    for s, u in act_m(m.right, i, {r: 1}).items():
                        _acc(out, s, c * u)
                cols.append(out)
    alpha = ExactMatrix.from_columns(cols, dm)
    dim_space = Subspace.span(amb, space).dim
    dim_rel = Subspace.span(amb, rel).dim
    images = [alpha.apply(v) for v in space]
    rank_alpha = Subspace.span(dm, images).dim
    return dim_space - dim_rel - rank_alpha


def _acc_all(target: dict, vec: Mapping, c) -> None:
    for k, v in vec.items():
        _acc(target, k, c * v)


# ---------------------------------------------------------------------------
# H_1(F, A^e) against R/R²
# ---------------------------------------------------------------------------

class PulledBackOuter:
    """``A_+ ⊗ A_+`` as an ``F``-bimodule: ``f·(x⊗y)·g = π(f)x ⊗ yπ(g)``."""

    def __init__(self, aplus: StructAlgebra, pi: Callable):
        self.A = aplus
        self.pi = pi

    def grade(self, k):
        return (self.A.weight(k[0]) + self.A.weight(k[1]),)

    def keys_of_weight(self, w):
        A = self.A
        return [(x, y) for x in range(A.dim) for y in range(A.dim)
                if A.weight(x) + A.weight(y) == w]

    def weights(self, max_weight=None):
        A = self.A
        ws = sorted({A.weight(x) + A.weight(y) for x in range(A.dim) for y in range(A.dim)})
        return [w for w in ws if max_weight is None or w <= max_weight]

    def act_left(self, u, key):
        x, y = key
        return {(k, y): c for k, c in self.A.mul_vec(self.pi(u), {x: 1}).items()}

    def act_right(self, key, u):
        x, y = key
        return {(x, k): c for k, c in self.A.mul_vec({y: 1}, self.pi(u)).items()}


def magnus_check(p, w_max: int) -> dict:
    """Compare ``dim H_1(F, A^e)_w`` with ``dim (R/R²)_w`` for ``1 ≤ w ≤ w_max``."""
    from .freegraded import GradedFreeAlgebra, relations_modulo_square
    f = p.free
    alg = p.algebra
    if alg.unit_key is None:
        aplus = unitalize(alg)
        shift = 1

        def pi(u):
            if not u:
                return {0: 1}
            return {k + shift: c for k, c in p.evaluate(u).items()}
    else:
        aplus = alg

        def pi(u):
            return p.evaluate(u)
    tv = GradedFreeAlgebra(f.gen_weights, f.names, unital=True, max_weight=w_max, multigrade=False)
    eng = HochschildEngine(tv, PulledBackOuter(aplus, pi), w_max)
    h1 = {}
    for w in range(1, w_max + 1):
        tot = 0
        for blk in eng.blocks(2, w).values():
            tot += _block_homology(eng.complex(blk), 1)[1]
        h1[w] = tot
    rr = relations_modulo_square(p, w_max)
    rows = [{"weight": w, "H1": h1[w], "R/R2": rr[w], "ok": h1[w] == rr[w]} for w in h1]
    return {"ok": all(r["ok"] for r in rows), "rows": rows}
