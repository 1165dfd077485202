"""Command-line interface.

Exit status: 0 success, 1 unknown command, 2 invalid input, 3 internal
invariant violation (including a disagreement between two code paths).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import exactla as la
from .acceptance import SEED, run_all
from .algebras import dual_numbers, ground_field, product_qq
from .documents import (algebra_from_doc, category_from_doc, functor_from_doc, group_from_doc,
                        homomorphism_from_doc, load_json, module_from_doc, presentation_from_doc,
                        ring_from_doc)
from .errors import InvariantViolation, ValidationError
from .fincat import derived_colim
from .freegraded import hopf_hc_odd, lemma56_dimension_check
from .grouphom import group_homology
from .hochcyclic import (cyclic_homology, cyclic_nonunital, hochschild, magnus_check,
                         sbi_sequence)
from .steinberg import (ElementaryMatrixGroupContext, gamma_generators_trivial,
                        steinberg_relations_check, zmod_quotient_map)

COMMANDS = ("colim", "group-homology", "hochschild", "cyclic", "cyclic-reduced", "hopf",
            "lemma56", "magnus-check", "sbi", "steinberg-check", "gamma-check", "selftest")

BUILTIN_ALGEBRAS = {"Q": ground_field, "Q[e]": dual_numbers, "QxQ": product_qq}


@dataclass
class JobSpec:
    command: str
    inputs: dict = field(default_factory=dict)
    max_degree: int | None = None
    max_weight: int | None = None
    coeff: str | None = None
    json: bool = False
    seed: int = SEED
    threads: int = 1
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        for name in ("max_degree", "max_weight"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValidationError(f"--{name.replace('_', '-')} must be positive")
        if self.threads < 1:
            raise ValidationError("--threads must be positive")
        if self.coeff not in (None, la.RATIONAL, la.INTEGER):
            raise ValidationError("--coeff must be Q or Z")
        if self.coeff == la.INTEGER and self.command in (
                "hochschild", "cyclic", "cyclic-reduced", "hopf", "lemma56", "magnus-check", "sbi"):
            raise ValidationError(f"{self.command} works over the rationals only; use --coeff Q")


# -- helpers ------------------------------------------------------------------------

def _load(path_or_name, what: str):
    if path_or_name is None:
        raise ValidationError(f"missing --{what}")
    return load_json(path_or_name)


def _algebra(spec: str):
    if spec in BUILTIN_ALGEBRAS:
        return BUILTIN_ALGEBRAS[spec]()
    return algebra_from_doc(load_json(spec), name=Path(spec).stem)


def _ring(spec: str):
    if spec.startswith("Z/"):
        return ring_from_doc(spec)
    return ring_from_doc(load_json(spec))


def _dims_table(title: str, dims: dict) -> list[str]:
    lines = [title]
    if "by_weight" in dims:
        n = dims["max_degree"]
        lines.append("weight  " + "  ".join(f"n={k}" for k in range(n + 1)))
        for w, row in dims["by_weight"].items():
            lines.append(f"{w:>6}  " + "  ".join(f"{x:>3}" for x in row))
    lines.append("total   " + "  ".join(f"{x:>3}" for x in dims["dims"]))
    return lines


# -- commands -----------------------------------------------------------------------------

def cmd_colim(job: JobSpec):
    cat = category_from_doc(_load(job.inputs.get("category"), "category"))
    fdoc = _load(job.inputs.get("functor"), "functor")
    if job.coeff is not None:
        if "coeff" in fdoc and fdoc["coeff"] != job.coeff:
            raise ValidationError(f"functor document has coeff {fdoc['coeff']!r} but --coeff is {job.coeff}")
        fdoc = dict(fdoc, coeff=job.coeff)
    m = functor_from_doc(fdoc, cat)
    hs = derived_colim(cat, m, job.max_degree or 3)
    report = {"command": "colim", "coeff": m.ring, "degrees": [h.as_dict() for h in hs]}
    lines = [f"derived colimits ({m.ring})", "n  colim_n"]
    lines += [f"{h.degree}  {h.describe() if m.ring == la.INTEGER else h.dim}" for h in hs]
    return report, lines, 0


def cmd_group_homology(job: JobSpec):
    g = group_from_doc(_load(job.inputs.get("group"), "group"))
    coeff = job.coeff or la.INTEGER
    mdoc = load_json(job.inputs["module"]) if job.inputs.get("module") else None
    m = module_from_doc(mdoc, g, coeff)
    if job.coeff is not None and m.ring != job.coeff:
        raise ValidationError("module coefficients disagree with --coeff")
    hs = group_homology(g, m, job.max_degree or 4)
    report = {"command": "group-homology", "coeff": m.ring, "order": g.order,
              "degrees": [h.as_dict() for h in hs]}
    lines = [f"H_n(G; M) for |G| = {g.order} over {m.ring}", "n  H_n"]
    lines += [f"{h.degree}  {h.describe()}" for h in hs]
    return report, lines, 0


def _weight_for(a, job):
    if a.graded and job.max_weight is None:
        raise ValidationError("graded algebra: pass --max-weight")
    return job.max_weight if a.graded else None


def cmd_hochschild(job: JobSpec):
    a = _algebra(job.inputs.get("algebra") or "Q")
    res = hochschild(a, None, job.max_degree or 4, _weight_for(a, job))
    report = {"command": "hochschild", "result": res.as_dict()}
    return report, _dims_table("HH_n", res.as_dict()), 0


def cmd_cyclic(job: JobSpec, reduced: bool = False):
    a = _algebra(job.inputs.get("algebra") or "Q")
    n = job.max_degree or 4
    w = _weight_for(a, job)
    if reduced:
        res = cyclic_homology(a, n, w, reduced=True)
        title = "reduced HC_n"
    elif a.unital:
        res = cyclic_homology(a, n, w)
        title = "HC_n"
    else:
        res = cyclic_nonunital(a, n, w)
        title = "HC_n (non-unital, via the unitalization)"
    report = {"command": "cyclic-reduced" if reduced else "cyclic", "result": res.as_dict()}
    return report, _dims_table(title, res.as_dict()), 0


def cmd_hopf(job: JobSpec):
    w_max = job.max_weight or 6
    n = int(job.extra.get("n", 0))
    if n < 0:
        raise ValidationError("--n must be nonnegative")
    p = presentation_from_doc(_load(job.inputs.get("presentation"), "presentation"), w_max)
    hopf = hopf_hc_odd(p, n, w_max)
    direct = cyclic_nonunital(p.algebra, 2 * n + 1, w_max).by_weight
    rows = []
    for w in range(1, w_max + 1):
        b = direct.get(w, [0] * (2 * n + 2))[2 * n + 1]
        rows.append({"weight": w, "hopf": hopf[w], "bicomplex": b, "agree": hopf[w] == b})
    agree = all(r["agree"] for r in rows)
    report = {"command": "hopf", "n": n, "rows": rows, "verdict": "AGREE" if agree else "DISAGREE"}
    lines = [f"HC_{2 * n + 1} per weight: Hopf formula vs bicomplex", "weight  hopf  bicomplex"]
    lines += [f"{r['weight']:>6}  {r['hopf']:>4}  {r['bicomplex']:>9}" for r in rows]
    lines.append(report["verdict"])
    return report, lines, 0 if agree else 3


def cmd_lemma56(job: JobSpec):
    m = int(job.extra.get("m") or 2)
    if m < 1:
        raise ValidationError("--m must be positive")
    res = lemma56_dimension_check(m, job.max_weight or 6)
    report = {"command": "lemma56", **res}
    lines = [f"m^w = necklaces + dim [F,F]_w for m = {m}"]
    lines += [json.dumps(r, sort_keys=True) for r in res["rows"]]
    lines.append("OK" if res["ok"] else "FAILED")
    return report, lines, 0 if res["ok"] else 3


def cmd_magnus(job: JobSpec):
    w_max = job.max_weight or 5
    p = presentation_from_doc(_load(job.inputs.get("presentation"), "presentation"), w_max)
    res = magnus_check(p, w_max)
    report = {"command": "magnus-check", **res}
    lines = ["weight  H_1  R/R^2"]
    lines += [f"{r['weight']:>6}  {r['H1']:>3}  {r['R/R2']:>5}" for r in res["rows"]]
    lines.append("AGREE" if res["ok"] else "DISAGREE")
    return report, lines, 0 if res["ok"] else 3


def cmd_sbi(job: JobSpec):
    a = _algebra(job.inputs.get("algebra") or "Q")
    res = sbi_sequence(a, job.max_degree or 5, _weight_for(a, job))
    report = {"command": "sbi", **res.as_dict()}
    lines = ["n  HH_n  HC_n"]
    lines += [f"{k}  {h:>4}  {c:>4}" for k, (h, c) in enumerate(zip(res.hh, res.hc))]
    lines.append("EXACT" if res.exact else "NOT EXACT")
    lines += [f"  {f}" for f in res.failures]
    return report, lines, 0 if res.exact else 3


def cmd_steinberg(job: JobSpec):
    r = _ring(job.inputs.get("ring") or "Z/4")
    size = int(job.extra.get("size") or 3)
    v = steinberg_relations_check(ElementaryMatrixGroupContext(r, size))
    report = {"command": "steinberg-check", "ring": r.name, "size": size, **v.as_dict()}
    lines = [f"Steinberg relations in E_{size}({r.name})"]
    lines += [f"  {k}: {n} cases" for k, n in sorted(v.checked.items())]
    lines += [f"  violation: {x}" for x in v.violations[:10]]
    lines.append("PASS" if v.ok else "FAIL")
    return report, lines, 0 if v.ok else 3


def cmd_gamma(job: JobSpec):
    b = _ring(job.inputs.get("source") or "Z/4")
    a = _ring(job.inputs.get("target") or "Z/2")
    if job.inputs.get("map"):
        f = homomorphism_from_doc(load_json(job.inputs["map"]))
    else:
        if not (b.name.startswith("Z/") and a.name.startswith("Z/")):
            raise ValidationError("pass --map for rings given by tables")
        f = zmod_quotient_map(b.size, a.size)
    size = int(job.extra.get("size") or 3)
    v = gamma_generators_trivial(b, a, f, size)
    report = {"command": "gamma-check", "source": b.name, "target": a.name, **v.as_dict()}
    lines = [f"commutators over {b.name} x_{a.name} {b.name}: {v.checked['pairs']} pairs, "
             f"|D| = {v.checked['fiber_product_size']}"]
    lines += [f"  violation: {x}" for x in v.violations[:10]]
    lines.append("PASS" if v.ok else "FAIL")
    return report, lines, 0 if v.ok else 3


def cmd_selftest(job: JobSpec):
    only = None
    if job.extra.get("only"):
        try:
            only = {int(x) for x in str(job.extra["only"]).split(",")}
        except ValueError as exc:
            raise ValidationError("--only takes comma-separated criterion numbers") from exc
    results = run_all(job.seed, only)
    ok = all(r.ok for r in results)
    report = {"command": "selftest", "seed": job.seed, "ok": ok,
              "criteria": [dict(r.as_dict(), elapsed=None) for r in results]}
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} criteria passed")
    return report, lines, 0 if ok else 3


HANDLERS = {
    "colim": cmd_colim, "group-homology": cmd_group_homology, "hochschild": cmd_hochschild,
    "cyclic": cmd_cyclic, "cyclic-reduced": lambda j: cmd_cyclic(j, reduced=True),
    "hopf": cmd_hopf, "lemma56": cmd_lemma56, "magnus-check": cmd_magnus, "sbi": cmd_sbi,
    "steinberg-check": cmd_steinberg, "gamma-check": cmd_gamma, "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="colimkit", description="Exact homological algebra computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--max-degree", type=int)
        sp.add_argument("--max-weight", type=int)
        sp.add_argument("--coeff", choices=[la.RATIONAL, la.INTEGER])
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--seed", type=int, default=SEED)
        sp.add_argument("--threads", type=int, default=1)
        return sp

    common(sub.add_parser("colim")).add_argument("--category")
    sub.choices["colim"].add_argument("--functor")
    sp = common(sub.add_parser("group-homology"))
    sp.add_argument("--group")
    sp.add_argument("--module")
    for name in ("hochschild", "cyclic", "cyclic-reduced", "sbi"):
        common(sub.add_parser(name)).add_argument(
            "--algebra", help="algebra document, or one of Q, Q[e], QxQ")
    sp = common(sub.add_parser("hopf"))
    sp.add_argument("--presentation")
    sp.add_argument("--n", type=int, default=0)
    common(sub.add_parser("magnus-check")).add_argument("--presentation")
    common(sub.add_parser("lemma56")).add_argument("--m", type=int, default=2)
    sp = common(sub.add_parser("steinberg-check"))
    sp.add_argument("--ring", help="ring document or Z/m")
    sp.add_argument("--size", type=int, default=3)
    sp = common(sub.add_parser("gamma-check"))
    sp.add_argument("--source", help="ring document or Z/m")
    sp.add_argument("--target", help="ring document or Z/m")
    sp.add_argument("--map", help="homomorphism document")
    sp.add_argument("--size", type=int, default=3)
    common(sub.add_parser("selftest")).add_argument("--only", help="e.g. 1,4,7")
    return p


_INPUT_KEYS = ("category", "functor", "group", "module", "algebra", "presentation", "ring",
               "source", "target", "map")


def job_from_args(ns) -> JobSpec:
    d = vars(ns)
    inputs = {k: d[k] for k in _INPUT_KEYS if d.get(k) is not None}
    extra = {k: d[k] for k in ("n", "m", "size", "only") if d.get(k) is not None}
    return JobSpec(ns.command, inputs, ns.max_degree, ns.max_weight, ns.coeff, ns.json,
                   ns.seed, ns.threads, extra)


def run(job: JobSpec) -> tuple[int, str]:
    """Execute a job; returns ``(exit status, report text)``."""
    job.validate()
    report, lines, status = HANDLERS[job.command](job)
    if job.json:
        return status, json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)
    return status, "\n".join(lines)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        print(f"colimkit: unknown command {argv[0]!r}; choose from {', '.join(COMMANDS)}",
              file=sys.stderr)
        return 1
    ns = build_parser().parse_args(argv)
    try:
        status, text = run(job_from_args(ns))
    except ValidationError as exc:
        print(f"colimkit: invalid input: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"colimkit: invariant violated: {exc}", file=sys.stderr)
        return 3
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
