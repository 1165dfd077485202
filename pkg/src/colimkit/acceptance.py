"""The acceptance suite: eleven end-to-end checks with time limits.

Each ``criterion_k`` returns a :class:`CriterionResult`; ``run_all`` runs
them in order.  Used by ``colimkit selftest`` and the test suite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import generators as gen
from .algebras import dual_numbers, ground_field, product_qq, truncated_polynomial, zero_mult
from .fincat import (colim0_coeq, constant_functor, derived_colim, external_tensor,
                     has_pairwise_coproducts)
from .freegraded import (GradedFreeAlgebra, GradedPresentation, hopf_hc_odd,
                         lemma56_dimension_check, necklace_count, standard_presentation)
from .grouphom import (FinGroup, GModule, abelianization_invariants, cyclic_group_oracle,
                       group_homology)
from .hochcyclic import (cyclic_homology, cyclic_nonunital, hochschild, lambda_homology,
                         magnus_check, sbi_sequence)
from .steinberg import (ElementaryMatrixGroupContext, FiniteRing, gamma_generators_trivial,
                        steinberg_relations_check, zmod_quotient_map)

SEED = 20240


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    elapsed: float
    limit: float
    detail: dict = field(default_factory=dict)

    @property
    def within_time(self) -> bool:
        return self.elapsed < self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.within_time

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        extra = "" if self.within_time else " (time limit exceeded)"
        return (f"[{verdict}] {self.number:2d}. {self.title}: "
                f"{self.elapsed:.2f}s / {self.limit:.0f}s{extra}")

    def as_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "ok": self.ok, "elapsed": round(self.elapsed, 3), "limit": self.limit,
                "detail": self.detail}


def _timed(number, title, limit, body, seed=SEED) -> CriterionResult:
    t0 = time.perf_counter()
    passed, detail = body(seed)
    return CriterionResult(number, title, bool(passed), time.perf_counter() - t0, limit, detail)


# -- 1-3: derived colimits ---------------------------------------------------------

def _terminal(seed):
    rng = random.Random(seed)
    failures = []
    for trial in range(24):
        c = gen.poset_with_top(rng)
        d = rng.randint(1, 3)
        dims = [h.dim for h in derived_colim(c, constant_functor(c, d), 3)]
        if dims != [d, 0, 0, 0]:
            failures.append({"trial": trial, "objects": c.n_objects, "dims": dims, "d": d})
    return not failures, {"trials": 24, "failures": failures}


def criterion_1(seed=SEED):
    return _timed(1, "constant functors on categories with a terminal object", 10, _terminal, seed)


def _coeq(seed):
    rng = random.Random(seed + 1)
    failures = []
    for trial in range(24):
        c, m = gen.strongly_connected(rng)
        q = colim0_coeq(c, m).dim
        h0 = derived_colim(c, m, 0)[0].dim
        if q != h0:
            failures.append({"trial": trial, "coeq": q, "H0": h0})
    return not failures, {"trials": 24, "failures": failures}


def criterion_2(seed=SEED):
    return _timed(2, "largest constant quotient equals colim_0", 10, _coeq, seed)


def _kunneth(seed):
    rng = random.Random(seed + 2)
    failures = []
    trials = 0
    for lattice in range(6):
        c = gen.join_semilattice(rng)
        if not has_pairwise_coproducts(c)[0]:
            failures.append({"lattice": lattice, "reason": "no pairwise coproducts"})
            continue
        for _ in range(3):
            trials += 1
            phi, psi = gen.poset_functor(rng, c), gen.poset_functor(rng, c)
            a = [h.dim for h in derived_colim(c, phi, 3)]
            b = [h.dim for h in derived_colim(c, psi, 3)]
            t = [h.dim for h in derived_colim(c, external_tensor(c, phi, psi), 3)]
            expect = [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(4)]
            if t != expect:
                failures.append({"lattice": lattice, "tensor": t, "expected": expect})
    return not failures, {"lattices": 6, "pairs": trials, "failures": failures}


def criterion_3(seed=SEED):
    return _timed(3, "Kunneth formula on join-semilattices", 30, _kunneth, seed)


# -- 4: group homology ----------------------------------------------------------------

def _groups(_seed):
    detail = {}
    ok = True
    for q in (2, 3):
        g = FinGroup.cyclic(q)
        m = GModule.trivial(g)
        got = [(h.betti, tuple(h.torsion)) for h in group_homology(g, m, 4)]
        oracle = [(h.betti, tuple(h.torsion)) for h in cyclic_group_oracle(q, m, 4)]
        expect = [(1, ()), (0, (q,)), (0, ()), (0, (q,)), (0, ())]
        detail[f"C{q}"] = [h.describe() for h in group_homology(g, m, 4)]
        ok &= got == oracle == expect
    s3 = FinGroup.symmetric(3)
    h1 = group_homology(s3, GModule.trivial(s3), 1)[1]
    detail["S3_H1"] = h1.describe()
    ok &= (h1.betti, tuple(h1.torsion)) == (0, (2,)) and abelianization_invariants(s3) == (2,)
    return ok, detail


def criterion_4(seed=SEED):
    return _timed(4, "integral group homology of C2, C3, S3", 60, _groups, seed)


# -- 5-6: free algebras ---------------------------------------------------------------

def _free_cyclic(_seed):
    failures = []
    for m in (1, 2):
        f = GradedFreeAlgebra([1] * m, unital=True, max_weight=5)
        res = cyclic_homology(f, 4, 5, reduced=True)
        for w in range(1, 6):
            row = res.by_weight.get(w, [0] * 5)
            want = [necklace_count(m, w), 0, 0, 0, 0]
            if row != want:
                failures.append({"m": m, "weight": w, "got": row, "expected": want})
        if res.by_weight.get(0, [0] * 5) != [0] * 5:
            failures.append({"m": m, "weight": 0, "got": res.by_weight[0]})
    return not failures, {"failures": failures}


def criterion_5(seed=SEED):
    return _timed(5, "reduced cyclic homology of free algebras", 60, _free_cyclic, seed)


def _free_hochschild(_seed):
    failures = []
    for m in (1, 2, 3):
        lem = lemma56_dimension_check(m, 6)
        if not lem["ok"]:
            failures.append({"m": m, "lemma": lem["rows"]})
        f = GradedFreeAlgebra([1] * m, unital=True, max_weight=6)
        res = hochschild(f, None, 3, 6)
        for w in range(1, 7):
            row = res.by_weight.get(w, [0] * 4)
            if row[1] != necklace_count(m, w) or row[2] or row[3]:
                failures.append({"m": m, "weight": w, "HH": row})
    return not failures, {"failures": failures}


def criterion_6(seed=SEED):
    return _timed(6, "tensor power splitting and HH of free algebras", 60, _free_hochschild, seed)


# -- 7, 10: presentations ------------------------------------------------------------

def hopf_algebras():
    return [zero_mult(1), zero_mult(2), zero_mult(3), truncated_polynomial(3)]


def second_presentation_zero2(max_weight: int = 6) -> GradedPresentation:
    """``x, y, z ↦ e_0, e_1, e_0 - e_1`` onto the 2-dim zero-multiplication algebra."""
    f = GradedFreeAlgebra([1, 1, 1], ["x", "y", "z"], max_weight=max_weight)
    return GradedPresentation(f, zero_mult(2), {0: {0: 1}, 1: {1: 1}, 2: {0: 1, 1: -1}})


def _hopf(_seed, w_max=6):
    rows = []
    ok = True
    zero2_hc1 = None
    first = {}
    for a in hopf_algebras():
        p = standard_presentation(a, w_max)
        bic = cyclic_nonunital(a, 3, w_max).by_weight
        monogenic = p.free.m == 1
        for n in (0, 1):
            hopf = hopf_hc_odd(p, n, w_max)
            direct = {w: bic.get(w, [0] * 4)[2 * n + 1] for w in range(1, w_max + 1)}
            agree = hopf == direct
            ok &= agree
            if monogenic:
                ok &= not any(hopf.values())
            rows.append({"algebra": a.name, "n": n, "hopf": hopf, "bicomplex": direct, "agree": agree})
            if a.name == "zero2":
                first[n] = hopf
                if n == 0:
                    zero2_hc1 = direct
    ok &= zero2_hc1 == {1: 0, 2: 1, 3: 0, 4: 0, 5: 0, 6: 0}
    p2 = second_presentation_zero2(w_max)
    second = {n: hopf_hc_odd(p2, n, w_max) for n in (0, 1)}
    ok &= second == first
    return ok, {"rows": rows, "second_presentation_agrees": second == first}


def criterion_7(seed=SEED):
    return _timed(7, "Hopf formulas against the bicomplex", 120, _hopf, seed)


def _magnus(_seed):
    rows = []
    ps = [standard_presentation(a, 5) for a in hopf_algebras()] + [second_presentation_zero2(5)]
    ok = True
    for p in ps:
        res = magnus_check(p, 5)
        ok &= res["ok"]
        rows.append({"algebra": p.algebra.name, "generators": p.free.m, "rows": res["rows"]})
    return ok, {"presentations": rows}


def criterion_10(seed=SEED):
    return _timed(10, "H_1 with bimodule coefficients equals R/R^2", 60, _magnus, seed)


# -- 8-9: cyclic homology of small algebras ------------------------------------------

def _sbi(_seed):
    detail = {}
    ok = True
    for a in (ground_field(), dual_numbers(), product_qq()):
        # chains of degree n have weight at most n + 1 here
        res = sbi_sequence(a, 5, 6 if a.graded else None)
        detail[a.name] = {"exact": res.exact, "HH": res.hh, "HC": res.hc}
        ok &= res.exact
    return ok, detail


def criterion_8(seed=SEED):
    return _timed(8, "SBI sequence exactness", 60, _sbi, seed)


def _dual_path(seed):
    rng = random.Random(seed + 9)
    rows = []
    ok = True
    for _ in range(10):
        a = gen.random_algebra(rng)
        bic = (cyclic_homology(a, 4) if a.unital else cyclic_nonunital(a, 4)).total
        lam = lambda_homology(a, 4).total
        ok &= bic == lam
        rows.append({"dim": a.dim, "unital": a.unital, "bicomplex": bic, "lambda": lam})
    return ok, {"algebras": rows}


def criterion_9(seed=SEED):
    return _timed(9, "cyclic coinvariants against the bicomplex", 60, _dual_path, seed)


# -- 11: Steinberg ------------------------------------------------------------------------

def _steinberg(_seed):
    detail = {}
    ok = True
    for m in (4, 6):
        v = steinberg_relations_check(ElementaryMatrixGroupContext(FiniteRing.zmod(m), 3))
        detail[f"Z/{m}"] = v.checked
        ok &= v.ok
    for m, k in ((4, 2), (9, 3)):
        v = gamma_generators_trivial(FiniteRing.zmod(m), FiniteRing.zmod(k), zmod_quotient_map(m, k))
        detail[f"Z/{m}->Z/{k}"] = v.checked
        ok &= v.ok
    return ok, detail


def criterion_11(seed=SEED):
    return _timed(11, "Steinberg relations and fiber-product commutators", 10, _steinberg, seed)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def run_all(seed=SEED, only=None) -> list[CriterionResult]:
    out = []
    for k, fn in enumerate(CRITERIA, start=1):
        if only is None or k in only:
            out.append(fn(seed))
    return out
