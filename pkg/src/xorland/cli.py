"""Command-line interface: instance I/O, experiments, tables, verification.

Exit codes: 0 success, 1 check failure, 2 usage error.  All randomness is
controlled by --seed; per-trial streams make reports independent of
scheduling, so --threads never changes any reported number.
"""
from __future__ import annotations

import argparse
import dataclasses
import math
import sys

import numpy as np

from . import enumerator, expansion, frw, landscape, minima
from .gf2 import BitVector, kernel_basis, rank
from .instances import Report, export_cnf, read_instance, write_instance
from .landscape import Instance
from .rng import RngSpec


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed")
    parser.add_argument("--stream", type=int, default=0, help="RNG stream index")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker hint; results never depend on it")
    parser.add_argument("--json", metavar="PATH", help="write the report as JSON")
    parser.add_argument("--csv", metavar="PATH", help="write the report records as CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xorland",
        description="k-regular XORSAT instances and exact energy-landscape analytics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a k-regular instance and write it")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-tries", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("kernel", help="rank, kernel basis, and ground states")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--cap", type=int, default=1 << 16, help="kernel enumeration cap")
    _add_common(p)

    p = sub.add_parser("landscape", help="exhaustive local minima and barriers")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--cap", type=int, default=landscape.EXHAUSTIVE_CAP_DEFAULT,
                   help="exhaustive state cap (log2)")
    p.add_argument("--no-barriers", action="store_true", help="skip barrier computation")
    _add_common(p)

    p = sub.add_parser("minima", help="constructive local-minima families")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--d-cap", type=int, default=8)
    p.add_argument("--beta", default=None, help="far-minima distance parameter")
    p.add_argument("--gamma", default=None, help="far-minima generator density")
    p.add_argument("--count", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("walk", help="focused random walk runs and experiments")
    p.add_argument("--in", dest="infile", help="single-instance mode")
    p.add_argument("--experiment", action="store_true", help="hitting-time experiment")
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--n-list", default="12,18,24")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--max-tries", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("expand", help="boundary-expansion verification")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    p.add_argument("--budget", type=int, default=10**6)
    _add_common(p)

    p = sub.add_parser("coeffs", help="exact tables: B, S, U, and saddle bounds")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table", choices=("B", "S", "U", "bounds"), default="S")
    p.add_argument("--delta", default="0.5", help="delta for the U table")
    _add_common(p)

    p = sub.add_parser("cnf", help="export an instance as DIMACS CNF")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    _add_common(p)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--suite", choices=("acceptance",), default="acceptance")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    _add_common(p)

    return parser


def _finish(report: Report, args) -> int:
    if args.json:
        report.write_json(args.json)
    if args.csv:
        report.write_csv(args.csv)
    return 0


def _cmd_gen(args) -> int:
    spec = RngSpec(seed=args.seed, stream=args.stream)
    if args.k >= 7:
        expected = math.exp((args.k - 1) ** 2 / 2)
        print(f"warning: rejection sampling at k={args.k} needs ~{expected:.2e} tries per instance",
              file=sys.stderr)
    inst = Instance.random(args.k, args.n, spec, args.max_tries)
    write_instance(inst, args.out)
    report = Report(
        experiment="gen",
        parameters={"k": args.k, "n": args.n, "out": str(args.out)},
        rng=spec,
        summary={"written": str(args.out)},
    )
    print(f"wrote {args.k}-regular instance with n={args.n} to {args.out}")
    return _finish(report, args)


def _cmd_kernel(args) -> int:
    inst = read_instance(args.infile)
    r = rank(inst.matrix)
    basis = kernel_basis(inst.matrix)
    grounds = landscape.ground_states(inst, cap=args.cap)
    report = Report(
        experiment="kernel",
        parameters={"infile": args.infile, "k": inst.k, "n": inst.n},
        rng=inst.provenance if isinstance(inst.provenance, RngSpec) else None,
        records=[{"ground_state": g.to01(), "weight": g.weight} for g in grounds],
        summary={"rank": r, "corank": inst.n - r, "kernel_size": len(grounds),
                 "basis": [b.to01() for b in basis]},
    )
    print(f"rank {r}, corank {inst.n - r}, kernel size {len(grounds)}")
    return _finish(report, args)


def _cmd_landscape(args) -> int:
    inst = read_instance(args.infile)
    grounds = landscape.ground_states(inst)
    states = landscape.enumerate_local_minima(inst, cap_n=args.cap)
    records = []
    if args.no_barriers:
        for s in states:
            records.append({"state": s.to01(), "energy": landscape.energy(inst, s)})
    else:
        for res in landscape.barriers_to_ground(inst, states, cap_n=args.cap):
            records.append({
                "state": res.s.to01(),
                "energy": landscape.energy(inst, res.s),
                "height": res.height,
                "barrier": res.barrier,
                "ground": res.t.to01(),
            })
    report = Report(
        experiment="landscape",
        parameters={"infile": args.infile, "k": inst.k, "n": inst.n},
        rng=None,
        records=records,
        summary={
            "ground_states": [g.to01() for g in grounds],
            "local_minima": len(states),
            "barriers": sorted({r["barrier"] for r in records}) if records and not args.no_barriers else None,
        },
    )
    print(f"{len(grounds)} ground states, {len(states)} local minima")
    for rec in records[:16]:
        print("  " + " ".join(f"{k}={v}" for k, v in rec.items()))
    if len(records) > 16:
        print(f"  ... {len(records) - 16} more")
    return _finish(report, args)


def _cmd_minima(args) -> int:
    inst = read_instance(args.infile)
    fam = minima.build_family(inst.matrix, d_cap=args.d_cap)
    summary = {
        "corank": fam.corank,
        "group_size": fam.group_size,
        "m": fam.m,
        "m_lower_bound": fam.m_lower_bound,
        "meets_m_bound": fam.meets_m_bound,
        "selected_rows": list(fam.selected_rows),
    }
    records = []
    if args.beta is not None and args.gamma is not None:
        sel = minima.select_far_minima(fam, inst, args.beta, args.gamma, count=args.count)
        for e in sel.entries:
            records.append({
                "state": e.state.to01(),
                "energy": e.energy,
                "min_distance_to_ground": min(e.distances_to_ground),
                "corrected": e.corrected,
            })
        summary["gamma_count"] = sel.family.gamma_count
        summary["independent_set"] = list(sel.family.independent_set or ())
    report = Report(
        experiment="minima",
        parameters={"infile": args.infile, "beta": args.beta, "gamma": args.gamma},
        rng=None,
        records=records,
        summary=summary,
    )
    print(f"family: m={fam.m} (group {fam.group_size}, corank {fam.corank}); "
          f"far minima constructed: {len(records)}")
    return _finish(report, args)


def _cmd_walk(args) -> int:
    spec = RngSpec(seed=args.seed, stream=args.stream)
    if args.experiment:
        n_list = [int(tok) for tok in args.n_list.split(",") if tok]
        summaries = frw.frw_experiment(args.k, n_list, args.trials, args.cap, spec,
                                       max_tries=args.max_tries)
        records = [dataclasses.asdict(s) for s in summaries]
        for s in summaries:
            print(f"n={s.n}: median steps {s.median_steps_effective:.0f}, "
                  f"{s.censored}/{s.trials} censored at cap {s.cap}")
        report = Report("walk-experiment",
                        {"k": args.k, "n_list": n_list, "trials": args.trials, "cap": args.cap},
                        spec, records=records,
                        summary={"medians": [s.median_steps_effective for s in summaries]})
        return _finish(report, args)
    if not args.infile:
        print("error: walk needs --in or --experiment", file=sys.stderr)
        return 2
    inst = read_instance(args.infile)
    records = []
    for t in range(args.trials):
        trial = spec.with_stream(spec.stream + 1 + t)
        s0 = BitVector(inst.n, int(trial.generator(jump=1).integers(0, 1 << inst.n, dtype=np.uint64)))
        trace = frw.frw_run(inst, s0, trial, args.cap)
        records.append({"trial": t, "start": s0.to01(), "steps": trace.steps,
                        "hit_ground": trace.hit_ground})
        print(f"trial {t}: steps={trace.steps} hit_ground={trace.hit_ground}")
    hits = sum(1 for r in records if r["hit_ground"])
    report = Report("walk", {"infile": args.infile, "trials": args.trials, "cap": args.cap},
                    spec, records=records,
                    summary={"success_fraction": hits / len(records)})
    return _finish(report, args)


def _cmd_expand(args) -> int:
    inst = read_instance(args.infile)
    params = expansion.ExpansionParams(inst.k, args.omega, args.eta)
    spec = RngSpec(seed=args.seed, stream=args.stream)
    verdict = expansion.check_boundary_expander(inst.matrix, params, mode=args.mode,
                                                budget=args.budget, rng=spec)
    summary = {
        "holds": verdict.holds,
        "mode": verdict.mode,
        "subsets_checked": verdict.subsets_checked,
        "note": None if verdict.mode == "exact" else "sampled mode can only report 'not falsified'",
    }
    records = []
    if verdict.witness:
        records.append({"witness_cols": list(verdict.witness.cols),
                        "boundary": verdict.witness.boundary,
                        "required": verdict.witness.required})
    report = Report("expand", {"infile": args.infile, "omega": str(args.omega),
                               "eta": str(args.eta), "mode": args.mode}, spec,
                    records=records, summary=summary)
    verdict_text = "holds" if verdict.holds else "violated"
    if verdict.mode == "sampled" and verdict.holds:
        verdict_text = "not falsified"
    print(f"boundary expansion {verdict_text} ({verdict.subsets_checked} subsets checked)")
    _finish(report, args)
    return 0 if verdict.holds else 1


def _cmd_coeffs(args) -> int:
    k, n = args.k, args.n
    records = []
    if args.table == "B":
        table = enumerator.weight_enumerator_table(k, n)
        for w, b in enumerate(table):
            records.append({"w": w, "B": str(b)})
        summary = {"nonzero": sum(1 for b in table if b)}
    elif args.table == "S":
        total, regions = enumerator.kernel_bound_sum(k, n, with_regions=True)
        records.append({"n": n, "S_exact": f"{total.numerator}/{total.denominator}",
                        "S_decimal": float(total)})
        for tag, value in regions.items():
            records.append({"region": tag.value, "partial_decimal": float(value)})
        summary = {"S": float(total), "limit": 4 if k % 2 == 0 else 2}
    elif args.table == "U":
        for w in range(1, n + 1):
            u = expansion.expansion_failure_bound(k, n, w, args.delta)
            records.append({"w": w, "U_decimal": float(u)})
        summary = {"delta": str(args.delta)}
    else:
        table = enumerator.weight_enumerator_table(k, n)
        for w in range(1, n):
            if table[w] == 0:
                continue
            bound = enumerator.saddle_upper_bound(k, n, w, log=True)
            records.append({"w": w, "log_B": math.log(table[w]), "log_saddle_bound": bound})
        summary = {"dominated": all(r["log_B"] <= r["log_saddle_bound"] + 1e-12 for r in records)}
    report = Report("coeffs", {"k": k, "n": n, "table": args.table}, None,
                    records=records, summary=summary)
    for rec in records[: 8 if args.table != "S" else len(records)]:
        print("  " + " ".join(f"{key}={val}" for key, val in rec.items()))
    if len(records) > 8 and args.table != "S":
        print(f"  ... {len(records) - 8} more rows")
    return _finish(report, args)


def _cmd_cnf(args) -> int:
    inst = read_instance(args.infile)
    export_cnf(inst, args.out)
    print(f"wrote DIMACS CNF with {inst.n * (1 << (inst.k - 1))} clauses to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    from . import acceptance

    only = None
    if args.only:
        only = {int(tok) for tok in args.only.split(",") if tok}
    results = acceptance.run_criteria(only=only)
    failed = [r for r in results if not r.passed]
    report = Report("verify", {"suite": args.suite, "only": sorted(only) if only else None},
                    None,
                    records=[{"criterion": r.number, "title": r.title, "passed": r.passed,
                              "elapsed_s": round(r.elapsed, 2), "details": r.details}
                             for r in results],
                    summary={"passed": len(results) - len(failed), "failed": len(failed)})
    _finish(report, args)
    return 1 if failed else 0


_HANDLERS = {
    "gen": _cmd_gen,
    "kernel": _cmd_kernel,
    "landscape": _cmd_landscape,
    "minima": _cmd_minima,
    "walk": _cmd_walk,
    "expand": _cmd_expand,
    "coeffs": _cmd_coeffs,
    "cnf": _cmd_cnf,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
