"""dualctl: batch front end for the quasi-norm engine and the real transforms.

Every subcommand reads JSON documents and prints one JSON report with sorted
keys.  Exit codes: 0 success, 1 input error, 2 contract violation.

    dualctl dual norm.json
    dualctl regularise norm.json --out report.json
    dualctl real-dual profile.json --samples 1,2,3 --csv samples.csv
    dualctl verify --orders 16 --draws 25 --seed 0
"""

import argparse
import csv
import json
import sys
import time

import numpy as np

from . import extended as ev
from .continuous import (DEFAULT, TransformConfig, is_quasiconcave, real_bidual,
                         real_bidual_fixpoint, real_dual, real_dual_closed)
from .documents import (digest, format_element, load_norm, load_real_norm, norm_document,
                        parse_element, read_json, real_norm_document)
from .errors import InputError, TheoremViolation
from .groups import FiniteAbelianGroup, subgroup_generate
from .quasinorm import (dual, is_regular, join, meet, product, regularise, regularise_formula,
                        restrict, validate)
from .structures import MetricStructure, check_prop_metrstr, check_structure
from .verify import run_verification

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


def _structure_witness(name, w):
    # directedness witnesses are member index pairs, the others are elements
    if name.endswith("directed"):
        return {"members": list(w)}
    return {"element": format_element(w)}


def _regularity(q):
    rep = is_regular(q)
    out = {"is_regular": rep.is_regular, "is_reflexive": rep.is_reflexive,
           "kappa_images": rep.kappa_images, "witness": None}
    if rep.witness is not None:
        x, reg, val = rep.witness
        out["witness"] = {"element": format_element(x), "regularised": ev.format_value(reg),
                          "value": ev.format_value(val)}
    return out


def _load_all(paths):
    docs = [read_json(p) for p in paths]
    return docs, [load_norm(d) for d in docs]


def cmd_validate(args):
    doc = read_json(args.doc)
    q = load_norm(doc, check=False)
    res = validate(q)
    return [doc], {"valid": res.ok, "axiom": res.axiom,
                   "witness": [format_element(w) for w in res.witness] if res.witness else None,
                   "_exit": EXIT_OK if res.ok else EXIT_INPUT}


def cmd_dual(args):
    doc = read_json(args.doc)
    d = dual(load_norm(doc))
    return [doc], {"result": norm_document(d), "dual_regular": _regularity(d)}


def cmd_regularise(args):
    doc = read_json(args.doc)
    q = load_norm(doc)
    reg, formula = regularise(q), regularise_formula(q)
    if reg != formula:
        bad = next(x for x, a, b in zip(q.domain.elements, reg.values, formula.values) if a != b)
        raise TheoremViolation(f"bidual and sup-inf formula disagree at {format_element(bad)}: "
                               f"{ev.format_value(reg(bad))} vs {ev.format_value(formula(bad))}")
    return [doc], {"result": norm_document(reg), "formula_agrees": True,
                   "input_regular": _regularity(q)}


def cmd_check(args):
    doc = read_json(args.doc)
    return [doc], _regularity(load_norm(doc))


def _lattice(op):
    def run(args):
        docs, qs = _load_all(args.docs)
        r = op(qs)
        return docs, {"result": norm_document(r), "regular": _regularity(r)}
    return run


def cmd_restrict(args):
    doc = read_json(args.doc)
    q = load_norm(doc)
    G = q.domain
    if not isinstance(G, FiniteAbelianGroup):
        raise InputError("restrict needs a norm on a whole group")
    gens = [G.element(parse_element(g)) for g in args.gens]
    H = subgroup_generate(G, gens)
    r = restrict(q, H)
    return [doc, {"gens": args.gens}], {
        "subgroup": [format_element(h) for h in H.elements],
        "result": norm_document(r), "regular": _regularity(r),
        "input_regular": is_regular(q).is_regular}


def cmd_product(args):
    docs, qs = _load_all(args.docs)
    r = product(qs)
    return docs, {"result": norm_document(r), "regular": _regularity(r)}


def cmd_structure(args):
    docs, qs = _load_all(args.docs)
    P = MetricStructure(qs)
    rep = check_structure(P)
    out = {"separating": rep.separating, "upward_directed": rep.upward_directed,
           "downward_directed": rep.downward_directed, "fin_covering": rep.fin_covering,
           "is_metric_structure": rep.is_metric_structure,
           "is_regular_structure": rep.is_regular_structure,
           "witnesses": {k: _structure_witness(k, w) for k, w in rep.witnesses.items()},
           "equivalence": None}
    if rep.is_regular_structure and rep.upward_directed and rep.separating:
        eq = check_prop_metrstr(P, strict=True)
        out["equivalence"] = {"condition_i": eq.condition_i, "condition_ii": eq.condition_ii,
                              "condition_iii": eq.condition_iii, "consistent": eq.consistent}
    return docs, out


def _samples(text):
    try:
        ts = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"--samples must be comma separated numbers: {exc}") from exc
    if not ts or any(not t > 0 for t in ts):
        raise InputError("--samples needs positive values")
    return ts


def cmd_real_dual(args):
    doc = read_json(args.doc)
    w = load_real_norm(doc)
    cfg = TransformConfig(grid=args.grid, rtol=args.tol)
    ts = np.array(_samples(args.samples))
    qc = is_quasiconcave(w, cfg)
    d = np.atleast_1d(real_dual(w, ts, cfg))
    bd = np.atleast_1d(real_bidual(w, ts, cfg))
    closed = np.atleast_1d(real_dual_closed(w, ts, cfg)) if qc else None
    rows = []
    for i, t in enumerate(ts):
        row = {"t": float(t), "dual": float(d[i]), "bidual": float(bd[i]),
               "closed_form": None, "abs_rel_gap": None}
        if closed is not None:
            row["closed_form"] = float(closed[i])
            row["abs_rel_gap"] = float(abs(d[i] - closed[i]) / closed[i])
        rows.append(row)
    fix = real_bidual_fixpoint(w, cfg)
    out = {"profile": real_norm_document(w), "tolerance": cfg.rtol, "grid": cfg.grid,
           "quasiconcave": qc.ok,
           "witness": list(qc.witness) if qc.witness else None, "reason": qc.reason,
           "samples": rows,
           "fixpoint": {"max_rel_deviation": fix.max_rel_deviation,
                        "bidual_quasiconcave": fix.bidual_quasiconcave,
                        "bidual_below": fix.bidual_below, "dual_gap": fix.dual_gap, "ok": fix.ok}}
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["t", "dual", "closed_form", "bidual", "abs_rel_gap"])
            for r in rows:
                wr.writerow([repr(r["t"]), repr(r["dual"]),
                             "" if r["closed_form"] is None else repr(r["closed_form"]),
                             repr(r["bidual"]),
                             "" if r["abs_rel_gap"] is None else repr(r["abs_rel_gap"])])
    bad = [r for r in rows if r["abs_rel_gap"] is not None and r["abs_rel_gap"] > cfg.rtol]
    if bad:
        raise TheoremViolation(f"numerical dual and closed form disagree at t={bad[0]['t']}: "
                               f"relative gap {bad[0]['abs_rel_gap']:.3g} > {cfg.rtol}",
                               out)
    return [doc, {"samples": [float(t) for t in ts], "grid": cfg.grid, "tol": cfg.rtol}], out


def cmd_verify(args):
    if args.orders < 1 or args.draws < 1:
        raise InputError("--orders and --draws must be positive")
    rep = run_verification(max_order=args.orders, draws=args.draws, seed=args.seed)
    out = {"checks": rep.checks, "failures": rep.failures, "groups": rep.groups,
           "skipped": rep.skipped, "counts": rep.counts, "ok": rep.ok, "_seconds": rep.seconds}
    if not rep.ok:
        raise TheoremViolation(f"{len(rep.failures)} property checks failed", out)
    return [{"orders": args.orders, "draws": args.draws, "seed": args.seed}], out


def build_parser():
    ap = argparse.ArgumentParser(prog="dualctl", description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="write the JSON report here instead of stdout")
    ap.add_argument("--timing", action="store_true", help="include wall-clock seconds in the report")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (("validate", cmd_validate, "check the quasi-norm axioms"),
                               ("dual", cmd_dual, "dual quasi-norm on the character group"),
                               ("regularise", cmd_regularise, "regularisation, cross-checked"),
                               ("check", cmd_check, "regularity and reflexivity report")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("doc")
        p.set_defaults(func=fn)

    for name, fn in (("join", _lattice(join)), ("meet", _lattice(meet)),
                     ("product", cmd_product), ("structure", cmd_structure)):
        p = sub.add_parser(name, help=f"{name} of several norm documents")
        p.add_argument("docs", nargs="+")
        p.set_defaults(func=fn)

    p = sub.add_parser("restrict", help="restrict to the subgroup generated by --gens")
    p.add_argument("doc")
    p.add_argument("--gens", nargs="*", default=[], help="generators like '(2)' or '(1,0)'")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("real-dual", help="dual of a profile on R at sample points")
    p.add_argument("doc")
    p.add_argument("--samples", default="0.01,0.1,1,10,100")
    p.add_argument("--csv", help="also write the samples as CSV")
    p.add_argument("--grid", type=int, default=DEFAULT.grid)
    p.add_argument("--tol", type=float, default=DEFAULT.rtol)
    p.set_defaults(func=cmd_real_dual)

    p = sub.add_parser("verify", help="run the randomised exact property suite")
    p.add_argument("--orders", type=int, default=64, help="largest group order")
    p.add_argument("--draws", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def _emit(report, args):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finish(args, inputs, body, start, status):
    seconds = body.pop("_seconds", None)
    report = {"command": args.command, "input_digest": digest(inputs), "status": status, **body}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start if seconds is None else seconds, 3)
    return report


def main(argv=None):
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        inputs, body = args.func(args)
    except TheoremViolation as exc:
        body = exc.args[1] if len(exc.args) > 1 and isinstance(exc.args[1], dict) else {}
        body["error"] = str(exc.args[0])
        echo = {k: v for k, v in vars(args).items() if k not in ("func", "out", "timing")}
        _emit(_finish(args, [echo], body, start, "violation"), args)
        print(f"dualctl: contract violation: {exc.args[0]}", file=sys.stderr)
        return EXIT_VIOLATION
    except InputError as exc:
        print(f"dualctl: {exc}", file=sys.stderr)
        return EXIT_INPUT
    code = body.pop("_exit", EXIT_OK)
    _emit(_finish(args, inputs, body, start, "ok" if code == EXIT_OK else "invalid"), args)
    return code


if __name__ == "__main__":
    sys.exit(main())
