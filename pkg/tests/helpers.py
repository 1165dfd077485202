"""Small builders shared by several test modules."""

import random

from colimkit.exactla import ExactMatrix
from colimkit.fincat import DiagramFunctor


def upward_closure(c, start, within):
    out = set(start)
    changed = True
    while changed:
        changed = False
        for a in list(out):
            for b in within:
                if b not in out and c.hom(a, b):
                    out.add(b)
                    changed = True
    return out


def convex_subset(c, rng):
    n = c.n_objects
    while True:
        s = {x for x in range(n) if rng.random() < 0.6}
        if not s:
            continue
        ok = all(not (x not in s and c.hom(a, x) and c.hom(x, b))
                 for a in s for b in s for x in range(n))
        if ok:
            return s


def indicator(c, s):
    """``k`` on the convex set ``s``, zero elsewhere, identities inside."""
    dims = {o: int(i in s) for i, o in enumerate(c.objects)}
    maps = {}
    for f in range(c.n_morphisms):
        a, b = c.dom[f], c.cod[f]
        da, db = int(a in s), int(b in s)
        maps[f] = ExactMatrix.from_dense([[1]]) if da and db else ExactMatrix.zeros(db, da)
    return DiagramFunctor(c, dims, maps)


def inclusion_components(c, small, big):
    """Components of the evident map between indicator functors."""
    eta = {}
    for x in range(c.n_objects):
        ds, db = int(x in small), int(x in big)
        eta[x] = ExactMatrix.from_dense([[1]]) if ds and db else ExactMatrix.zeros(db, ds)
    return eta


def seeded(seed):
    return random.Random(seed)
