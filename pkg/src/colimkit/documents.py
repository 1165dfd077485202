"""JSON input documents: parsing into library objects and back.

Rational numbers are written as integers or ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from . import exactla as la
from .algebras import StructAlgebra
from .errors import ValidationError
from .exactla import ExactMatrix, format_scalar
from .fincat import DiagramFunctor, FinCategory
from .freegraded import GradedFreeAlgebra, GradedPresentation
from .grouphom import FinGroup, GModule
from .steinberg import FiniteRing


def load_json(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}", location=str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON ({exc.msg}, line {exc.lineno})", location=str(path)) from exc


def _require(doc, key: str, kind: str):
    if not isinstance(doc, Mapping):
        raise ValidationError(f"{kind} document must be a JSON object")
    if key not in doc:
        raise ValidationError(f"missing field {key!r}", location=f"{kind}.{key}")
    return doc[key]


def parse_number(x, location: str = "") -> Fraction:
    if isinstance(x, bool):
        raise ValidationError("booleans are not numbers", location=location)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse rational {x!r}", location=location) from exc
    raise ValidationError(f"expected an integer or a 'p/q' string, got {x!r}", location=location)


def format_number(x) -> int | str:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else format_scalar(x)


def _matrix(rows, ring: str, ncols: int, location: str) -> ExactMatrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValidationError("matrix must be a list of rows", location=location)
    data = [[parse_number(x, location) for x in r] for r in rows]
    if any(len(r) != ncols for r in data):
        raise ValidationError(f"every row needs {ncols} entries", location=location)
    if ring == la.INTEGER and any(x.denominator != 1 for r in data for x in r):
        raise ValidationError("integer coefficients required", location=location)
    if not data:
        return ExactMatrix.zeros(0, ncols, ring)
    return ExactMatrix.from_dense(data, ring, ncols=ncols)


def _coeff(doc, default: str = la.RATIONAL) -> str:
    ring = doc.get("coeff", default)
    if ring not in (la.RATIONAL, la.INTEGER):
        raise ValidationError(f"coefficient mode must be 'Q' or 'Z', got {ring!r}", location="coeff")
    return ring


# -- categories and functors --------------------------------------------------

def category_from_doc(doc) -> FinCategory:
    objects = _require(doc, "objects", "category")
    morphisms = []
    for i, m in enumerate(_require(doc, "morphisms", "category")):
        try:
            morphisms.append((m["name"], m["dom"], m["cod"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError("morphism needs name, dom and cod", location=f"morphisms[{i}]") from exc
    compose = {}
    for i, entry in enumerate(doc.get("compose", [])):
        if not isinstance(entry, list) or len(entry) != 3:
            raise ValidationError("compose entries are [g, f, gf]", location=f"compose[{i}]")
        g, f, gf = entry
        if (g, f) in compose and compose[(g, f)] != gf:
            raise ValidationError(f"composite {g}∘{f} given twice", location=f"compose[{i}]")
        compose[(g, f)] = gf
    idents = doc.get("identities")
    return FinCategory(objects, morphisms, compose, identities=idents)


def category_to_doc(c: FinCategory) -> dict:
    ident = set(c.identity)
    return {
        "objects": list(c.objects),
        "morphisms": [{"name": c.morphisms[f], "dom": c.objects[c.dom[f]], "cod": c.objects[c.cod[f]]}
                      for f in range(c.n_morphisms)],
        "identities": {c.objects[o]: c.morphisms[f] for o, f in enumerate(c.identity)},
        "compose": [[c.morphisms[g], c.morphisms[f], c.morphisms[gf]]
                    for (g, f), gf in sorted(c._comp.items())
                    if g not in ident and f not in ident],
    }


def functor_from_doc(doc, c: FinCategory) -> DiagramFunctor:
    ring = _coeff(doc)
    dims = _require(doc, "dims", "functor")
    if not isinstance(dims, Mapping):
        raise ValidationError("dims must map objects to integers", location="functor.dims")
    maps = {}
    for name, rows in _require(doc, "maps", "functor").items():
        if name not in c.mor_index:
            raise ValidationError(f"unknown morphism {name!r}", location=f"maps.{name}")
        f = c.mor_index[name]
        d = dims.get(c.objects[c.dom[f]])
        if d is None:
            raise ValidationError("no dimension for the domain", location=f"maps.{name}")
        maps[name] = _matrix(rows, ring, int(d), f"maps.{name}")
    return DiagramFunctor(c, dims, maps, ring)


def functor_to_doc(m: DiagramFunctor) -> dict:
    c = m.category
    return {
        "coeff": m.ring,
        "dims": {c.objects[o]: m.dims[o] for o in range(len(c.objects))},
        "maps": {c.morphisms[f]: [[format_number(x) for x in row] for row in m.maps[f].to_dense()]
                 for f in range(c.n_morphisms) if not c.is_identity(f)},
    }


# -- groups and modules -------------------------------------------------------

def group_from_doc(doc) -> FinGroup:
    if isinstance(doc, Mapping) and "table" in doc:
        return FinGroup(doc["table"], doc.get("names"))
    if isinstance(doc, Mapping) and "perm_generators" in doc:
        return FinGroup.from_permutations(doc["perm_generators"])
    if isinstance(doc, Mapping) and "cyclic" in doc:
        return FinGroup.cyclic(int(doc["cyclic"]))
    raise ValidationError("group document needs 'table', 'perm_generators' or 'cyclic'", location="group")


def module_from_doc(doc, g: FinGroup, default_coeff: str = la.INTEGER) -> GModule:
    """``{"coeff", "rank", "actions": [matrix per element]}``; actions default to trivial."""
    if doc is None:
        return GModule.trivial(g, 1, default_coeff)
    ring = _coeff(doc, default_coeff)
    rank = int(doc.get("rank", 1))
    if rank < 0:
        raise ValidationError("rank must be nonnegative", location="module.rank")
    if "actions" not in doc:
        return GModule.trivial(g, rank, ring)
    acts = doc["actions"]
    if not isinstance(acts, list) or len(acts) != g.order:
        raise ValidationError(f"need {g.order} action matrices", location="module.actions")
    mats = [_matrix(a, ring, rank, f"module.actions[{i}]") for i, a in enumerate(acts)]
    return GModule(g, rank, mats, ring)


# -- algebras and presentations -----------------------------------------------

def algebra_from_doc(doc, name: str = "") -> StructAlgebra:
    """``{"dim", "unital", "unit", "table": [[[c_ijk]]], "weights"}``.

    ``table[i][j][k]`` is the coefficient of ``e_k`` in ``e_i e_j``.
    """
    dim = int(_require(doc, "dim", "algebra"))
    rows = _require(doc, "table", "algebra")
    if not isinstance(rows, list) or len(rows) != dim:
        raise ValidationError(f"table needs {dim} rows", location="algebra.table")
    table = {}
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != dim:
            raise ValidationError(f"table row needs {dim} entries", location=f"algebra.table[{i}]")
        for j, vec in enumerate(r):
            loc = f"algebra.table[{i}][{j}]"
            if not isinstance(vec, list) or len(vec) != dim:
                raise ValidationError(f"product vector needs {dim} coefficients", location=loc)
            v = {k: parse_number(c, loc) for k, c in enumerate(vec)}
            v = {k: c for k, c in v.items() if c}
            if v:
                table[(i, j)] = v
    unit = None
    if doc.get("unital", False):
        unit = doc.get("unit")
        if unit is None:
            raise ValidationError("unital algebra needs a unit vector", location="algebra.unit")
        unit = [parse_number(c, "algebra.unit") for c in unit]
    weights = doc.get("weights")
    return StructAlgebra(dim, table, unit=unit, weights=weights, name=doc.get("name", name))


def algebra_to_doc(a: StructAlgebra) -> dict:
    d = a.dim
    table = [[[format_number(a.table.get((i, j), {}).get(k, 0)) for k in range(d)]
              for j in range(d)] for i in range(d)]
    out = {"dim": d, "unital": a.unital, "table": table}
    if a.unital:
        out["unit"] = [1 if k == a.unit_key else 0 for k in range(d)]
    if a.graded:
        out["weights"] = [a.weight(k) for k in range(d)]
    if a.name:
        out["name"] = a.name
    return out


def presentation_from_doc(doc, max_weight: int) -> GradedPresentation:
    """Generators with weights, a graded target algebra and generator images.

    An image is either a full coefficient vector of the algebra or a
    ``{weight: vector}`` object whose vectors list coefficients of the basis
    elements of that weight, in basis order.
    """
    gens = _require(doc, "generators", "presentation")
    if not isinstance(gens, list) or not gens:
        raise ValidationError("need a nonempty generator list", location="presentation.generators")
    names, weights = [], []
    for i, g in enumerate(gens):
        try:
            names.append(str(g["name"]))
            weights.append(int(g["weight"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("generator needs name and weight",
                                  location=f"presentation.generators[{i}]") from exc
    if len(set(names)) != len(names):
        raise ValidationError("duplicate generator names", location="presentation.generators")
    alg = algebra_from_doc(_require(doc, "algebra", "presentation"))
    if not alg.graded:
        raise ValidationError("the target algebra needs weights", location="presentation.algebra")
    free = GradedFreeAlgebra(weights, names, unital=bool(doc.get("unital", False)), max_weight=max_weight)
    images_doc = _require(doc, "images", "presentation")
    images = {}
    for gi, name in enumerate(names):
        if name not in images_doc:
            raise ValidationError(f"no image for generator {name}", location=f"images.{name}")
        img = images_doc[name]
        loc = f"images.{name}"
        if isinstance(img, list):
            if len(img) != alg.dim:
                raise ValidationError(f"image needs {alg.dim} coefficients", location=loc)
            raw = {k: parse_number(c, loc) for k, c in enumerate(img)}
            vec = alg.from_input_coordinates(raw)
        elif isinstance(img, Mapping):
            if alg.unital:
                raise ValidationError("per-weight images need a non-unital target; "
                                      "give a full vector", location=loc)
            vec = {}
            for w, coeffs in img.items():
                keys = alg.keys_of_weight(int(w))
                if not isinstance(coeffs, list) or len(coeffs) != len(keys):
                    raise ValidationError(f"weight {w} part needs {len(keys)} coefficients", location=loc)
                for k, c in zip(keys, coeffs):
                    c = parse_number(c, loc)
                    if c:
                        vec[k] = c
        else:
            raise ValidationError("image must be a vector or a {weight: vector} object", location=loc)
        images[gi] = vec
    return GradedPresentation(free, alg, images)


def presentation_to_doc(p: GradedPresentation) -> dict:
    f = p.free
    return {
        "generators": [{"name": n, "weight": w} for n, w in zip(f.names, f.gen_weights)],
        "algebra": algebra_to_doc(p.algebra),
        "images": {n: [format_number(p.images[g].get(k, 0)) for k in range(p.algebra.dim)]
                   for g, n in enumerate(f.names)},
    }


# -- rings -----------------------------------------------------------------------

def ring_from_doc(doc) -> FiniteRing:
    if isinstance(doc, str):
        text = doc.strip()
        if text.startswith("Z/"):
            try:
                return FiniteRing.zmod(int(text[2:]))
            except ValueError as exc:
                raise ValidationError(f"bad ring shorthand {doc!r}", location="ring") from exc
        raise ValidationError(f"bad ring shorthand {doc!r}", location="ring")
    if isinstance(doc, Mapping) and "zmod" in doc:
        return FiniteRing.zmod(int(doc["zmod"]))
    add = _require(doc, "add", "ring")
    mul = _require(doc, "mul", "ring")
    return FiniteRing(add, mul, int(doc.get("zero", 0)), int(doc.get("one", 1)), name=doc.get("name", ""))


def homomorphism_from_doc(doc) -> list[int]:
    m = _require(doc, "map", "homomorphism")
    if not isinstance(m, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in m):
        raise ValidationError("map must be a list of element indices", location="homomorphism.map")
    return list(m)
