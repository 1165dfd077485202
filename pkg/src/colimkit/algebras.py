"""Finite-dimensional algebras by structure constants, and bimodules.

Algebras used by the Hochschild/cyclic code follow a small duck-typed
protocol (also implemented by :class:`colimkit.freegraded.GradedFreeAlgebra`):

``unit_key``
    key of the unit basis element, or ``None`` for non-unital algebras;
``grade(key)``
    a tuple of nonnegative integers, added componentwise under products
    (``()`` for ungraded algebras); the total weight is its sum;
``keys_of_weight(w)``
    basis keys of total weight ``w``;
``weights(max_weight)``
    total weights in ``0..max_weight`` carrying basis elements;
``mul(k1, k2)``
    product of two basis elements as ``{key: coefficient}``.

For unital algebras the unit is itself a basis element, so ``Ā = A/k·1``
has the remaining keys as a basis.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ValidationError
from .exactla import ExactMatrix, scalar


def _add_into(acc: dict, vec: Mapping, c=1) -> None:
    for k, v in vec.items():
        w = acc.get(k, 0) + c * v
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)


def _clean(vec: Mapping) -> dict:
    out = {}
    for k, v in vec.items():
        if v:
            if isinstance(v, Fraction) and v.denominator == 1:
                v = v.numerator
            out[k] = v
    return out


class StructAlgebra:
    """Associative algebra ``e_i e_j = Σ_k c_ijk e_k`` over Q.

    ``table`` maps ``(i, j)`` to ``{k: c}`` (missing pairs multiply to 0).
    ``weights`` (optional) is a nonnegative integer per basis element; the
    product must respect it.  A unital algebra is rebased on construction
    so that the unit is basis element 0: the new basis is the unit followed
    by the old basis vectors other than the first coordinate of the unit.
    """

    def __init__(self, dim: int, table: Mapping, unit: Sequence | None = None,
                 weights: Sequence[int] | None = None, check: bool = True, name: str = ""):
        if dim < 0:
            raise ValidationError("negative dimension")
        self.dim = dim
        self.name = name
        tab: dict = {}
        for (i, j), vec in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValidationError(f"table entry ({i}, {j}) outside dimension {dim}")
            v = {}
            for k, c in vec.items():
                if not 0 <= k < dim:
                    raise ValidationError(f"table entry ({i}, {j}) has component {k} outside dimension")
                c = scalar(c)
                if c:
                    v[k] = c
            if v:
                tab[(i, j)] = v
        self.table = tab
        if weights is not None:
            if len(weights) != dim or any(int(w) < 0 for w in weights):
                raise ValidationError("need one nonnegative weight per basis element")
            self._weights = [int(w) for w in weights]
        else:
            self._weights = None
        self.unit_key = None
        unit_vec = None
        if unit is not None:
            if len(unit) != dim:
                raise ValidationError("unit vector has wrong length")
            unit_vec = {k: scalar(c) for k, c in enumerate(unit) if scalar(c)}
            if not unit_vec:
                raise ValidationError("unit vector is zero")
        if check:
            self._check_assoc()
            if self._weights is not None:
                self._check_grading()
        if unit_vec is not None:
            if check:
                self._check_unit(unit_vec)
            self._rebase(unit_vec)

    # -- protocol ------------------------------------------------------
    @property
    def graded(self) -> bool:
        return self._weights is not None

    @property
    def unital(self) -> bool:
        return self.unit_key is not None

    def grade(self, k: int) -> tuple:
        return () if self._weights is None else (self._weights[k],)

    def weight(self, k: int) -> int:
        return 0 if self._weights is None else self._weights[k]

    def keys_of_weight(self, w: int) -> list[int]:
        return [k for k in range(self.dim) if self.weight(k) == w]

    def weights(self, max_weight: int | None = None) -> list[int]:
        ws = sorted({self.weight(k) for k in range(self.dim)})
        return [w for w in ws if max_weight is None or w <= max_weight]

    def mul(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def keys(self) -> range:
        return range(self.dim)

    # -- vectors -------------------------------------------------------
    def mul_vec(self, x: Mapping, y: Mapping) -> dict:
        acc: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                p = self.table.get((i, j))
                if p:
                    _add_into(acc, p, a * b)
        return _clean(acc)

    def left_matrix(self, i: int) -> ExactMatrix:
        """Matrix of ``x ↦ e_i x``."""
        cols = [self.table.get((i, j), {}) for j in range(self.dim)]
        return ExactMatrix.from_columns(cols, self.dim)

    def right_matrix(self, i: int) -> ExactMatrix:
        """Matrix of ``x ↦ x e_i``."""
        cols = [self.table.get((j, i), {}) for j in range(self.dim)]
        return ExactMatrix.from_columns(cols, self.dim)

    def unit_vector(self) -> dict:
        return {} if self.unit_key is None else {self.unit_key: 1}

    # -- checks --------------------------------------------------------
    def _check_assoc(self) -> None:
        d = self.dim
        for i in range(d):
            for j in range(d):
                ij = self.table.get((i, j), {})
                for k in range(d):
                    lhs = self.mul_vec(ij, {k: 1})
                    rhs = self.mul_vec({i: 1}, self.table.get((j, k), {}))
                    if lhs != rhs:
                        raise ValidationError(f"associativity fails for basis triple ({i}, {j}, {k})",
                                              location="table")

    def _check_grading(self) -> None:
        for (i, j), v in self.table.items():
            for k in v:
                if self._weights[k] != self._weights[i] + self._weights[j]:
                    raise ValidationError(f"product e_{i}·e_{j} leaves weight "
                                          f"{self._weights[i] + self._weights[j]}", location="weights")

    def _check_unit(self, u: dict) -> None:
        for i in range(self.dim):
            if self.mul_vec(u, {i: 1}) != {i: 1} or self.mul_vec({i: 1}, u) != {i: 1}:
                raise ValidationError(f"unit law fails for basis element {i}", location="unit")
        if self._weights is not None and any(self._weights[k] for k in u):
            raise ValidationError("unit must have weight 0", location="unit")

    def _rebase(self, u: dict) -> None:
        """Change basis so that the unit becomes basis element 0."""
        if u == {0: 1}:
            self.unit_key = 0
            return
        p = min(u)  # pivot coordinate of the unit
        up = u[p]
        others = [j for j in range(self.dim) if j != p]
        order = [p] + others
        newpos = {old: new for new, old in enumerate(order)}

        def to_new(v: Mapping) -> dict:
            c0 = Fraction(v.get(p, 0)) / up
            out = {0: c0} if c0 else {}
            for j in others:
                c = v.get(j, 0) - u.get(j, 0) * c0
                if c:
                    out[newpos[j]] = c
            return _clean(out)

        # new basis vectors in old coordinates
        basis = [u] + [{j: 1} for j in others]
        tab = {}
        for a, x in enumerate(basis):
            for b, y in enumerate(basis):
                v = to_new(self.mul_vec(x, y))
                if v:
                    tab[(a, b)] = v
        self.table = tab
        if self._weights is not None:
            self._weights = [self._weights[k] for k in order]
        self.unit_key = 0
        self._to_new = to_new

    def from_input_coordinates(self, v: Mapping) -> dict:
        """Rewrite a vector given in the constructor's basis in the internal one."""
        conv = getattr(self, "_to_new", None)
        v = {int(k): scalar(c) for k, c in v.items() if scalar(c)}
        return conv(v) if conv is not None else v

    def __repr__(self):
        kind = "unital" if self.unital else "non-unital"
        g = ", graded" if self.graded else ""
        return f"StructAlgebra({self.name or 'A'}, dim={self.dim}, {kind}{g})"


def unitalize(a: StructAlgebra) -> StructAlgebra:
    """``A_+ = k ⊕ A`` with the adjoined unit as basis element 0."""
    d = a.dim + 1
    tab = {(0, j): {j: 1} for j in range(d)}
    for j in range(1, d):
        tab[(j, 0)] = {j: 1}
    for (i, j), v in a.table.items():
        tab[(i + 1, j + 1)] = {k + 1: c for k, c in v.items()}
    weights = None if not a.graded else [0] + [a.weight(k) for k in range(a.dim)]
    return StructAlgebra(d, tab, unit=[1] + [0] * a.dim, weights=weights, check=False,
                         name=f"({a.name or 'A'})_+")


# -- a few named algebras ---------------------------------------------------

def ground_field() -> StructAlgebra:
    return StructAlgebra(1, {(0, 0): {0: 1}}, unit=[1], name="Q")


def dual_numbers() -> StructAlgebra:
    """``Q[ε]/(ε²)`` with basis 1, ε (graded with ε in weight 1)."""
    return StructAlgebra(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, unit=[1, 0],
                         weights=[0, 1], name="Q[e]")


def product_qq() -> StructAlgebra:
    return StructAlgebra(2, {(0, 0): {0: 1}, (1, 1): {1: 1}}, unit=[1, 1], name="QxQ")


def zero_mult(d: int) -> StructAlgebra:
    """``d``-dimensional non-unital algebra with zero multiplication, weight 1."""
    return StructAlgebra(d, {}, weights=[1] * d, name=f"zero{d}")


def truncated_polynomial(k: int) -> StructAlgebra:
    """``tQ[t]/(t^k)`` (non-unital), basis ``t, ..., t^{k-1}`` in weights 1..k-1."""
    d = k - 1
    tab = {}
    for i in range(d):
        for j in range(d):
            if i + j + 2 <= d:
                tab[(i, j)] = {i + j + 1: 1}
    return StructAlgebra(d, tab, weights=list(range(1, k)), name=f"tQ[t]/(t^{k})")


# -- bimodules ---------------------------------------------------------------

class Bimodule:
    """``dim``-dimensional bimodule: ``left[i]`` / ``right[i]`` are the
    matrices of ``m ↦ e_i m`` and ``m ↦ m e_i``."""

    def __init__(self, algebra: StructAlgebra, dim: int, left: Sequence[ExactMatrix],
                 right: Sequence[ExactMatrix], weights: Sequence[int] | None = None,
                 check: bool = True):
        self.algebra = algebra
        self.dim = dim
        self.left = list(left)
        self.right = list(right)
        self._weights = list(weights) if weights is not None else None
        if len(self.left) != algebra.dim or len(self.right) != algebra.dim:
            raise ValidationError("need one action matrix per algebra basis element")
        for m in self.left + self.right:
            if m.shape != (dim, dim):
                raise ValidationError("action matrix has wrong shape")
        if check:
            self.validate()

    @classmethod
    def regular(cls, a: StructAlgebra) -> "Bimodule":
        ws = [a.weight(k) for k in range(a.dim)] if a.graded else None
        return cls(a, a.dim, [a.left_matrix(i) for i in range(a.dim)],
                   [a.right_matrix(i) for i in range(a.dim)], ws, check=False)

    def _act(self, mats, vec_a: Mapping) -> ExactMatrix:
        out = ExactMatrix.zeros(self.dim, self.dim)
        for i, c in vec_a.items():
            out = out + mats[i].scale(c)
        return out

    def validate(self) -> None:
        a = self.algebra
        d = a.dim
        for i in range(d):
            for j in range(d):
                p = a.mul(i, j)
                if self.left[i] @ self.left[j] != self._act(self.left, p):
                    raise ValidationError(f"left action not associative at ({i}, {j})")
                if self.right[j] @ self.right[i] != self._act(self.right, p):
                    raise ValidationError(f"right action not associative at ({i}, {j})")
                if self.left[i] @ self.right[j] != self.right[j] @ self.left[i]:
                    raise ValidationError(f"left and right actions do not commute at ({i}, {j})")
        if a.unital:
            ident = ExactMatrix.identity(self.dim)
            if self.left[a.unit_key] != ident or self.right[a.unit_key] != ident:
                raise ValidationError("unit does not act as the identity")

    # protocol used by the Hochschild complex
    def grade(self, k: int) -> tuple:
        return () if self._weights is None else (self._weights[k],)

    def keys_of_weight(self, w: int) -> list[int]:
        if self._weights is None:
            return list(range(self.dim)) if w == 0 else []
        return [k for k in range(self.dim) if self._weights[k] == w]

    def weights(self, max_weight=None) -> list[int]:
        ws = sorted(set(self._weights)) if self._weights is not None else [0]
        return [w for w in ws if max_weight is None or w <= max_weight]

    def act_left(self, a: int, m: int) -> dict:
        return self._cols("l", self.left, a)[m]

    def act_right(self, m: int, a: int) -> dict:
        return self._cols("r", self.right, a)[m]

    def _cols(self, side, mats, a):
        cache = self.__dict__.setdefault("_colcache", {})
        key = (side, a)
        if key not in cache:
            cache[key] = mats[a].columns()
        return cache[key]


class RegularCoefficients:
    """An algebra viewed as a bimodule over itself (protocol adapter)."""

    def __init__(self, algebra):
        self.algebra = algebra

    def grade(self, k):
        return self.algebra.grade(k)

    def keys_of_weight(self, w):
        return self.algebra.keys_of_weight(w)

    def weights(self, max_weight=None):
        return self.algebra.weights(max_weight)

    def act_left(self, a, m):
        return self.algebra.mul(a, m)

    def act_right(self, m, a):
        return self.algebra.mul(m, a)

