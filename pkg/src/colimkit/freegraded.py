"""Weight-graded free algebras and per-weight ideal/commutator calculus.

The weight-``w`` component of ``T(V)`` has the words of total weight ``w``
as a basis, ordered by length and then lexicographically by generator
index.  Subspaces of a component are :class:`WeightSubspace` values; the
Hopf-type quotient ``(R^{n+1} ∩ [F,F]) / [R, R^n]`` is evaluated weight
by weight from these.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from . import exactla as la
from .algebras import StructAlgebra
from .errors import InvariantViolation, NotContainedError, ValidationError
from .exactla import ExactMatrix, Subspace

DEFAULT_MAX_WEIGHT = 8


class GradedFreeAlgebra:
    """``T(V)`` (``unital=True``) or ``T̄(V) = ⊕_{n≥1} V^{⊗n}`` truncated at ``max_weight``.

    Basis keys are words (tuples of generator indices); products are
    concatenation.  With ``multigrade`` the grade of a word records the
    weight contributed by each generator separately, which splits every
    complex built on the algebra into much smaller blocks.
    """

    graded = True

    def __init__(self, weights: Sequence[int], names: Sequence[str] | None = None,
                 unital: bool = False, max_weight: int = DEFAULT_MAX_WEIGHT,
                 multigrade: bool = True):
        ws = [int(w) for w in weights]
        if not ws:
            raise ValidationError("a free algebra needs at least one generator")
        if any(w < 1 for w in ws):
            raise ValidationError("generator weights must be positive")
        self.gen_weights = ws
        self.m = len(ws)
        self.names = list(names) if names is not None else \
            (list("xyzuvw")[:self.m] if self.m <= 6 else [f"x{i}" for i in range(self.m)])
        self.unital = unital
        self.max_weight = int(max_weight)
        self.multigrade = multigrade
        self.unit_key = () if unital else None
        self._words: dict[int, list] = {0: [()]}
        self._index: dict[int, dict] = {}

    # -- bases ---------------------------------------------------------
    def words(self, w: int) -> list[tuple]:
        """All words of weight ``w`` (including the empty word at weight 0)."""
        if w > self.max_weight:
            raise ValidationError(f"weight {w} exceeds the truncation weight {self.max_weight}")
        if w < 0:
            return []
        if w not in self._words:
            out = []
            for g, wg in enumerate(self.gen_weights):
                if wg <= w:
                    out.extend((g,) + rest for rest in self.words(w - wg))
            out.sort(key=lambda t: (len(t), t))
            self._words[w] = out
        return self._words[w]

    def index(self, w: int) -> dict:
        if w not in self._index:
            self._index[w] = {u: i for i, u in enumerate(self.words(w))}
        return self._index[w]

    def dim(self, w: int) -> int:
        if w == 0:
            return 1 if self.unital else 0
        return len(self.words(w))

    def word_weight(self, u: tuple) -> int:
        return sum(self.gen_weights[g] for g in u)

    def full(self, w: int) -> "WeightSubspace":
        return WeightSubspace(w, Subspace.full(self.dim(w)))

    def zero(self, w: int) -> "WeightSubspace":
        return WeightSubspace(w, Subspace.zero(self.dim(w)))

    def format_word(self, u: tuple) -> str:
        return "".join(self.names[g] for g in u) or "1"

    # -- algebra protocol ------------------------------------------------
    def grade(self, u: tuple) -> tuple:
        if self.multigrade:
            counts = [0] * self.m
            for g in u:
                counts[g] += self.gen_weights[g]
            return tuple(counts)
        return (self.word_weight(u),)

    def keys_of_weight(self, w: int) -> list:
        if w == 0:
            return [()] if self.unital else []
        return self.words(w)

    def weights(self, max_weight: int | None = None) -> list[int]:
        top = self.max_weight if max_weight is None else min(max_weight, self.max_weight)
        return [w for w in range(0 if self.unital else 1, top + 1)]

    def mul(self, u: tuple, v: tuple) -> dict:
        if self.word_weight(u) + self.word_weight(v) > self.max_weight:
            raise ValidationError("product lands above the truncation weight")
        return {u + v: 1}

    def __repr__(self):
        kind = "T" if self.unital else "T̄"
        return f"GradedFreeAlgebra({kind}, weights={self.gen_weights}, W={self.max_weight})"


@dataclass(eq=False)
class WeightSubspace:
    weight: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def is_full(self) -> bool:
        return self.space.is_full()

    def __add__(self, other: "WeightSubspace") -> "WeightSubspace":
        _same_weight(self, other)
        return WeightSubspace(self.weight, la.subspace_sum(self.space, other.space))

    def __and__(self, other: "WeightSubspace") -> "WeightSubspace":
        _same_weight(self, other)
        return WeightSubspace(self.weight, la.subspace_intersect(self.space, other.space))

    def contains(self, other: "WeightSubspace") -> bool:
        return self.space.contains_space(other.space)

    def __eq__(self, other):
        if not isinstance(other, WeightSubspace):
            return NotImplemented
        return self.weight == other.weight and self.space == other.space

    __hash__ = None


def _same_weight(a: WeightSubspace, b: WeightSubspace) -> None:
    if a.weight != b.weight:
        raise ValidationError(f"weight mismatch {a.weight} vs {b.weight}")


def _check_room(f: GradedFreeAlgebra, w: int) -> None:
    if w > f.max_weight:
        raise ValidationError(f"weight {w} exceeds the truncation weight {f.max_weight}")


def _basis_vectors(f: GradedFreeAlgebra, a: WeightSubspace) -> list[tuple[tuple, list]]:
    words = f.words(a.weight) if a.weight else ([()] if f.unital else [])
    return [[(words[i], c) for i, c in r.items()] for r in a.space.rows]


def component_product(f: GradedFreeAlgebra, a: WeightSubspace, b: WeightSubspace) -> WeightSubspace:
    """``span{xy : x ∈ a, y ∈ b}`` inside weight ``a.weight + b.weight``."""
    w = a.weight + b.weight
    _check_room(f, w)
    if a.dim == 0 or b.dim == 0:
        return f.zero(w)
    idx = f.index(w) if w else {(): 0}
    va, vb = _basis_vectors(f, a), _basis_vectors(f, b)
    vecs = []
    for x in va:
        for y in vb:
            v: dict = {}
            for u, c in x:
                for t, d in y:
                    k = idx[u + t]
                    v[k] = v.get(k, 0) + c * d
            vecs.append(v)
    return WeightSubspace(w, Subspace.span(f.dim(w), vecs))


def commutator_component(f: GradedFreeAlgebra, a: WeightSubspace, b: WeightSubspace) -> WeightSubspace:
    """``span{xy - yx : x ∈ a, y ∈ b}``."""
    w = a.weight + b.weight
    _check_room(f, w)
    if a.dim == 0 or b.dim == 0:
        return f.zero(w)
    idx = f.index(w) if w else {(): 0}
    va, vb = _basis_vectors(f, a), _basis_vectors(f, b)
    vecs = []
    for x in va:
        for y in vb:
            v: dict = {}
            for u, c in x:
                for t, d in y:
                    k1, k2 = idx[u + t], idx[t + u]
                    if k1 != k2:
                        v[k1] = v.get(k1, 0) + c * d
                        v[k2] = v.get(k2, 0) - c * d
            vecs.append({k: c for k, c in v.items() if c})
    return WeightSubspace(w, Subspace.span(f.dim(w), vecs))


def commutator_space(f: GradedFreeAlgebra, w: int, with_unit: bool = False) -> WeightSubspace:
    """``[F,F]_w`` from the word commutators ``uv - vu`` (plus ``k·1`` at weight 0)."""
    _check_room(f, w)
    if w == 0:
        if with_unit and f.unital:
            return f.full(0)
        return f.zero(0)
    idx = f.index(w)
    vecs = []
    for word in f.words(w):
        i = idx[word]
        for s in range(1, len(word)):
            j = idx[word[s:] + word[:s]]
            if j > i:
                vecs.append({i: 1, j: -1})
    return WeightSubspace(w, Subspace.span(f.dim(w), vecs))


def necklace_count(m: int, w: int) -> int:
    """Number of rotation orbits of length-``w`` words in ``m`` letters."""
    if m < 1 or w < 1:
        raise ValidationError("necklace_count needs m ≥ 1 and w ≥ 1")
    total = 0
    for d in range(1, w + 1):
        if w % d == 0:
            total += _phi(d) * m ** (w // d)
    return total // w


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if _gcd(k, n) == 1)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def lemma56_dimension_check(m: int, w_max: int) -> dict:
    """``m^w = necklaces(m, w) + dim [F,F]_w`` for ``1 ≤ w ≤ w_max``."""
    f = GradedFreeAlgebra([1] * m, max_weight=w_max)
    rows = []
    ok = True
    for w in range(1, w_max + 1):
        ff = commutator_space(f, w).dim
        neck = necklace_count(m, w)
        good = m ** w == neck + ff
        ok &= good
        rows.append({"weight": w, "component": m ** w, "necklaces": neck, "commutators": ff,
                     "ok": good})
    return {"m": m, "ok": ok, "rows": rows}


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

class GradedPresentation:
    """A weight-preserving surjection ``F -> A`` from a free algebra.

    ``images[g]`` is the image of generator ``g`` as a coefficient vector
    of ``algebra`` (a graded :class:`StructAlgebra`); it must be
    homogeneous of the generator's weight.  With a unital ``F`` the
    algebra must be unital and the empty word goes to its unit.
    """

    def __init__(self, free: GradedFreeAlgebra, algebra: StructAlgebra,
                 images: Mapping[int, Mapping[int, object]], check: bool = True):
        if not algebra.graded:
            raise ValidationError("presentations need a weight-graded algebra")
        if free.unital and not algebra.unital:
            raise ValidationError("a unital free algebra needs a unital target")
        self.free = free
        self.algebra = algebra
        self.images = []
        for g in range(free.m):
            if g not in images:
                raise ValidationError(f"no image for generator {free.names[g]}",
                                      location=f"images.{free.names[g]}")
            vec = {int(k): la.scalar(v) for k, v in images[g].items() if la.scalar(v)}
            for k in vec:
                if not 0 <= k < algebra.dim:
                    raise ValidationError("image coordinate outside the algebra",
                                          location=f"images.{free.names[g]}")
                if algebra.weight(k) != free.gen_weights[g]:
                    raise ValidationError(
                        f"image of {free.names[g]} is not homogeneous of weight {free.gen_weights[g]}",
                        location=f"images.{free.names[g]}")
            self.images.append(vec)
        self._eval: dict = {(): algebra.unit_vector()}
        self._lock = threading.Lock()
        self._cache: dict = {}
        if check:
            self.check_surjective()

    def evaluate(self, word: tuple) -> dict:
        """Image of a word in the algebra (prefix-memoized)."""
        got = self._eval.get(word)
        if got is not None:
            return got
        if len(word) == 1:
            val = self.images[word[0]]
        else:
            val = self.algebra.mul_vec(self.evaluate(word[:-1]), self.images[word[-1]])
        self._eval[word] = val
        return val

    def eval_matrix(self, w: int) -> ExactMatrix:
        keys = self.algebra.keys_of_weight(w)
        pos = {k: i for i, k in enumerate(keys)}
        cols = []
        for u in self.free.keys_of_weight(w):
            cols.append({pos[k]: c for k, c in self.evaluate(u).items()})
        return ExactMatrix.from_columns(cols, len(keys))

    def check_surjective(self) -> None:
        for w in range(0 if self.free.unital else 1, self.free.max_weight + 1):
            target = len(self.algebra.keys_of_weight(w))
            if target and la.rank(self.eval_matrix(w)) != target:
                raise ValidationError(f"presentation is not surjective in weight {w}",
                                      location=f"weight {w}")
        top = max(self.algebra.weights())
        if top > self.free.max_weight:
            raise ValidationError(f"algebra has weight {top} above the truncation weight",
                                  location="max_weight")

    def _memo(self, key, compute):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        val = compute()
        with self._lock:
            return self._cache.setdefault(key, val)


def kernel_component(p: GradedPresentation, w: int) -> WeightSubspace:
    """``R_w`` where ``R = Ker(F -> A)``."""
    _check_room(p.free, w)

    def compute():
        n = p.free.dim(w)
        if n == 0:
            return WeightSubspace(w, Subspace.zero(0))
        m = p.eval_matrix(w)
        if m.nrows == 0:
            return WeightSubspace(w, Subspace.full(n))
        return WeightSubspace(w, la.kernel(m))

    return p._memo(("R", w), compute)


def ideal_power_component(p: GradedPresentation, n: int, w: int) -> WeightSubspace:
    """``(R^n)_w = Σ_u R_u · (R^{n-1})_{w-u}`` (memoized)."""
    if n < 1:
        raise ValidationError("ideal powers start at n = 1")
    _check_room(p.free, w)
    if n == 1:
        return kernel_component(p, w)

    def compute():
        f = p.free
        acc = f.zero(w)
        for u in range(1, w):
            r_u = kernel_component(p, u)
            if r_u.dim == 0:
                continue
            rest = ideal_power_component(p, n - 1, w - u)
            if rest.dim == 0:
                continue
            acc = acc + component_product(f, r_u, rest)
            if acc.is_full():
                break
        return acc

    return p._memo(("Rn", n, w), compute)


def bracket_component(p: GradedPresentation, n: int, w: int) -> WeightSubspace:
    """``[R, R^n]_w = Σ_u [R_u, (R^n)_{w-u}]``."""
    _check_room(p.free, w)

    def compute():
        f = p.free
        acc = f.zero(w)
        for u in range(1, w):
            r_u = kernel_component(p, u)
            if r_u.dim == 0:
                continue
            rn = ideal_power_component(p, n, w - u)
            if rn.dim == 0:
                continue
            acc = acc + commutator_component(f, r_u, rn)
        return acc

    return p._memo(("RRn", n, w), compute)


def ff_component(p: GradedPresentation, w: int, with_unit: bool = False) -> WeightSubspace:
    return p._memo(("FF", w, with_unit), lambda: commutator_space(p.free, w, with_unit))


def hopf_hc_odd(p: GradedPresentation, n: int, w_max: int, unital: bool = False) -> dict:
    """Per-weight ``dim (R^{n+1} ∩ [F,F]) / [R, R^n]`` for ``w ≤ w_max``.

    With ``unital=True`` the numerator uses ``[F,F] + k·1``.  The
    containment of the denominator in the numerator is checked before the
    quotient is taken.
    """
    if n < 0:
        raise ValidationError("n must be nonnegative")
    _check_room(p.free, w_max)
    out = {}
    start = 0 if (unital and p.free.unital) else 1
    for w in range(start, w_max + 1):
        num = ideal_power_component(p, n + 1, w) & ff_component(p, w, with_unit=unital)
        den = bracket_component(p, n, w) if n >= 1 else _bracket_r_f(p, w)
        try:
            out[w] = la.quotient_dim(num.space, den.space)
        except NotContainedError as exc:
            raise InvariantViolation(
                f"[R,R^{n}] is not contained in R^{n + 1} ∩ [F,F] in weight {w}") from exc
    return out


def _bracket_r_f(p: GradedPresentation, w: int) -> WeightSubspace:
    """``[R, R^0] = [R, F]`` (the ``n = 0`` denominator)."""
    def compute():
        f = p.free
        acc = f.zero(w)
        for u in range(1, w + 1):
            r_u = kernel_component(p, u)
            if r_u.dim == 0 or f.dim(w - u) == 0:
                continue
            acc = acc + commutator_component(f, r_u, f.full(w - u))
        return acc
    return p._memo(("RF", w), compute)


def relations_modulo_square(p: GradedPresentation, w_max: int) -> dict:
    """``dim (R/R²)_w`` per weight."""
    out = {}
    for w in range(1, w_max + 1):
        r = kernel_component(p, w)
        r2 = ideal_power_component(p, 2, w)
        out[w] = la.quotient_dim(r.space, r2.space)
    return out


def unital_numerator_agrees(p: GradedPresentation, n: int, w_max: int) -> bool:
    """For ``w ≥ 1``: ``R^{n+1} ∩ ([F,F] + k·1) = R^{n+1} ∩ [F,F]`` (unit line in weight 0)."""
    for w in range(1, w_max + 1):
        a = ideal_power_component(p, n + 1, w) & ff_component(p, w, with_unit=True)
        b = ideal_power_component(p, n + 1, w) & ff_component(p, w, with_unit=False)
        if a != b:
            return False
    return True


def identity_presentation(m: int, max_weight: int) -> GradedPresentation:
    """``T̄(V)`` onto its truncation at weight ``W``: ``R_w = 0`` for ``w ≤ W``."""
    f = GradedFreeAlgebra([1] * m, max_weight=max_weight)
    words = [u for w in range(1, max_weight + 1) for u in f.words(w)]
    pos = {u: i for i, u in enumerate(words)}
    tab = {}
    for u in words:
        for v in words:
            if len(u) + len(v) <= max_weight:
                tab[(pos[u], pos[v])] = {pos[u + v]: 1}
    alg = StructAlgebra(len(words), tab, weights=[len(u) for u in words], check=False,
                        name=f"T̄(Q^{m})≤{max_weight}")
    return GradedPresentation(f, alg, {g: {pos[(g,)]: 1} for g in range(m)})


def standard_presentation(a: StructAlgebra, max_weight: int, names=None) -> GradedPresentation:
    """Minimal presentation: weight by weight, add a generator for each basis
    element (in basis order) not yet spanned by products of lower weights."""
    gens = []
    for w in a.weights():
        if w == 0:
            continue
        keys = a.keys_of_weight(w)
        # products of lower-weight elements landing in weight w
        prods = []
        for k1 in range(a.dim):
            for k2 in range(a.dim):
                if a.weight(k1) and a.weight(k2) and a.weight(k1) + a.weight(k2) == w:
                    prods.append(a.mul(k1, k2))
        span = Subspace.span(a.dim, prods) if prods else Subspace.zero(a.dim)
        for k in keys:
            if not span.contains({k: 1}):
                gens.append(k)
                span = la.subspace_sum(span, Subspace.span(a.dim, [{k: 1}]))
    f = GradedFreeAlgebra([a.weight(k) for k in gens], names=names, max_weight=max_weight)
    return GradedPresentation(f, a, {g: {k: 1} for g, k in enumerate(gens)})
