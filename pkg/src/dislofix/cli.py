"""Command-line front end.

Exit codes: 0 success / verified, 1 mathematical refutation, 2 input error,
3 invalid comparison function.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .contraction import MT, NS, certify
from .errors import InstanceError, InvalidPhi, NoFixedPoint
from .fixed_point import FIXED_POINT, fixed_point_set, iterate, wellposedness_diagnostic
from .generate import GenConfig, run_campaign
from .graph import EDGE, PATH
from .hausdorff import excess
from .instance import dumps, load_instance
from .metric import check_axioms

OK, REFUTED, BAD_INPUT, BAD_PHI = 0, 1, 2, 3


def _s(x):
    return str(x)


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _emit(args, results, verdict, code, t0):
    if getattr(args, "json", None):
        report = {"command": args.command, "config": _echo(args), "results": results,
                  "verdict": verdict, "exit_code": code}
        if args.timings:
            report["timings"] = {"seconds": time.perf_counter() - t0}
        Path(args.json).write_text(dumps(report))
    return code


def _echo(args):
    skip = {"func", "json", "timings"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _require(inst, *names):
    missing = [n for n in names if getattr(inst, n) is None]
    if missing:
        raise InstanceError(f"instance is missing: {', '.join(missing)}", path=missing[0])


# -- commands -------------------------------------------------------------


def cmd_check(args, t0):
    inst = load_instance(args.file)
    rep = check_axioms(inst.space)
    for r in rep.results:
        line = f"axiom ({r.name}): {'pass' if r.passed else 'FAIL'}"
        if not r.passed:
            line += f"  witness {r.witness}  {r.detail}"
        print(line)
    print("dislocated metric: yes" if rep.passed else "dislocated metric: no")
    code = OK if rep.passed else REFUTED
    return _emit(args, rep.to_dict(), "pass" if rep.passed else "fail", code, t0)


def cmd_hausdorff(args, t0):
    inst = load_instance(args.file)
    _require(inst, "family")
    fam = inst.family
    try:
        u, v = fam.check_index(args.u), fam.check_index(args.v)
    except IndexError as exc:
        raise InstanceError(str(exc), path="--u/--v")
    U, V = fam[u], fam[v]
    d_uv, d_vu = excess(fam.space, U, V), excess(fam.space, V, U)
    h = fam.H(u, v)
    print(f"U = {U}  V = {V}")
    print(f"D(U, V) = {d_uv}\nD(V, U) = {d_vu}\nH(U, V) = {h}")
    res = {"u": u, "v": v, "excess_uv": _s(d_uv), "excess_vu": _s(d_vu), "hausdorff": _s(h)}
    return _emit(args, res, "ok", OK, t0)


def cmd_verify(args, t0):
    inst = load_instance(args.file)
    _require(inst, "family", "map", "graph", "phi")
    cert = certify(inst.family, inst.map, inst.graph, inst.phi, args.functional, args.mode)
    label = "M_T" if args.functional == MT else "N_S"
    print(f"functional {label}, preservation mode {args.mode}: {cert.edges_checked} edges checked")
    for (e, img) in cert.preservation.violations:
        print(f"  preservation violated: edge {e} maps to {img}")
    for v in cert.violations:
        print(f"  edge {v.edge}: H(TU, TV) = {v.lhs} > phi({label} = {v.functional_value}) "
              f"= {v.phi_value}")
    print(cert.verdict)
    code = OK if cert.certified else REFUTED
    return _emit(args, cert.to_dict(), cert.verdict, code, t0)


def cmd_iterate(args, t0):
    inst = load_instance(args.file)
    _require(inst, "family", "map", "phi")
    try:
        start = inst.family.check_index(args.start)
    except IndexError as exc:
        raise InstanceError(str(exc), path="--start")
    tr = iterate(inst.family, inst.map, inst.phi, start, args.max_iters)
    space = inst.space
    print(f"{'n':>4}  {'state':>6}  {'weight':>14}  {'phi^n bound':>14}  ok")
    for n, (s, w, b) in enumerate(zip(tr.states, tr.step_weights, tr.bound_values)):
        ok = "yes" if space.leq(w, b) else "NO"
        print(f"{n:>4}  {s:>6}  {_s(w):>14}  {_s(b):>14}  {ok}")
    term = tr.terminated
    print(f"terminated: {term.kind} (state {term.state}, period {term.period})")
    code = OK if term.kind == FIXED_POINT else REFUTED
    res = tr.to_dict()
    res["bound_violations"] = tr.bound_violations(space)
    return _emit(args, res, term.kind, code, t0)


def cmd_fixed_points(args, t0):
    inst = load_instance(args.file)
    _require(inst, "family", "map")
    rep = fixed_point_set(inst.family, inst.map)
    print(f"fixed points (H(TU, U) = 0): {rep.fixed_points}")
    print(f"fixed points (TU = U):       {rep.index_fixed_points}")
    res = rep.to_dict()
    if rep.fixed_points:
        tol = inst.space.number(args.tolerance) if args.tolerance is not None else None
        wp = wellposedness_diagnostic(inst.family, inst.map, tol)
        print(f"approximate fixed points within {wp.tolerance}: {wp.approximate}; "
              f"flagged: {wp.flagged}")
        res["wellposedness"] = wp.to_dict()
    return _emit(args, res, "singleton" if rep.singleton else f"{len(rep.fixed_points)} fixed points",
                 OK, t0)


def cmd_fuzz(args, t0):
    conf = {}
    if args.config:
        try:
            conf = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InstanceError(f"cannot read config: {exc}", path="--config")
        if not isinstance(conf, dict):
            raise InstanceError("config must be a JSON object", path="--config")
    if args.seed is not None:
        conf["rng_seed"] = args.seed
    if args.trials is not None:
        conf["trials"] = args.trials
    try:
        cfg = GenConfig.from_dict(conf)
    except (TypeError, ValueError) as exc:
        raise InstanceError(str(exc), path="--config")
    rep = run_campaign(cfg)
    print(f"trials {rep.trials_run}  certified {rep.certified_count} "
          f"({100 * rep.certified_fraction:.1f}%)  refuted {rep.refuted_count}  "
          f"counterexamples {len(rep.counterexamples)}  [{rep.wall_time:.1f}s]")
    if args.dump_dir and rep.counterexamples:
        d = Path(args.dump_dir)
        d.mkdir(parents=True, exist_ok=True)
        for k, cx in enumerate(rep.counterexamples):
            (d / f"counterexample_{k:04d}.json").write_text(dumps(cx))
    code = OK if not rep.counterexamples else REFUTED
    verdict = "no counterexamples" if code == OK else "COUNTEREXAMPLES FOUND"
    return _emit(args, rep.to_dict(), verdict, code, t0)


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dislofix",
                                description="Fixed-point checks on finite dislocated metric spaces")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, file=True):
        sp = sub.add_parser(name, help=help)
        if file:
            sp.add_argument("file", help="instance JSON file")
        sp.add_argument("--json", metavar="PATH", help="write the machine-readable report here")
        sp.add_argument("--timings", action="store_true",
                        help="include wall time in the JSON report (breaks byte determinism)")
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "validate the dislocated-metric axioms")
    sp = add("hausdorff", cmd_hausdorff, "Hausdorff distance between two family members")
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp = add("verify", cmd_verify, "certify a graph contraction")
    sp.add_argument("--functional", choices=[MT, NS], default=MT)
    sp.add_argument("--mode", choices=[EDGE, PATH], default=EDGE)
    sp = add("iterate", cmd_iterate, "Picard iteration with per-step bounds")
    sp.add_argument("--start", type=int, required=True)
    sp.add_argument("--max-iters", type=_positive_int, default=1000)
    sp = add("fixed-points", cmd_fixed_points, "fixed points under both criteria")
    sp.add_argument("--tolerance", help="approximate fixed-point tolerance (rational)")
    sp = add("fuzz", cmd_fuzz, "randomized falsification campaign", file=False)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--trials", type=_positive_int)
    sp.add_argument("--config", metavar="PATH", help="JSON object of generator settings")
    sp.add_argument("--dump-dir", metavar="DIR", help="write each counterexample as an instance file")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        return args.func(args, t0)
    except InvalidPhi as exc:
        print(f"invalid phi: {exc}", file=sys.stderr)
        return BAD_PHI
    except (InstanceError, NoFixedPoint) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
