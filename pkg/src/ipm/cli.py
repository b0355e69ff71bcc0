"""Command line harness.

    ipm run --suite thm1_openness --space grid_1d:64 --trials 50 --seed 42 \
        --out report.json [--plot-dir figs/]
    ipm eval --measure m.json --phi f.json [--space s.json]
    ipm retract --measure m.json [--space s.json] [--variant atom_clamp]
    ipm track --kind deformation --measure m.json --grid 101 --out track.json

Exit codes: 0 all checks pass, 1 property failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .harness import (SUITE_NAMES, Scenario, ScenarioError, emit_report,
                      replay_counterexample, run_suite)
from .homotopy import track, track_to_json_str, uniform_grid
from .measure import (MeasureError, evaluate, measure_from_json,
                      measure_to_json)
from .space import (ValidationError, build_function, discrete_space,
                    space_from_json)
from .subspace import neighborhood_retract, retract_to_dirac

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _resolve_space(args, *docs):
    """Use --space when given, else a discrete space over the ids in the docs."""
    if getattr(args, "space", None):
        return space_from_json(_load_json(args.space))
    ids = []
    for doc in docs:
        for p in doc:
            if p not in ids:
                ids.append(p)
    return discrete_space(ids)


def _cmd_run(args) -> int:
    if args.replay:
        cex = _load_json(args.replay)
        result = replay_counterexample(cex)
        status = "reproduced" if result["reproduced"] else "NOT reproduced"
        print(f"replay of trial {cex['trial']} ({cex['check']}): {status}")
        if args.out:
            emit_report(result["report"], args.out)
        return EXIT_FAIL if result["reproduced"] else EXIT_PASS

    sc = Scenario(suite=args.suite, space=args.space, trials=args.trials,
                  seed=args.seed, tolerance=args.tolerance,
                  variant=args.variant)
    report = run_suite(sc)
    for check in report["checks"]:
        mark = "PASS" if check["failures"] == 0 else "FAIL"
        print(f"[{mark}] {check['name']}: {check['trials']} trials, "
              f"{check['failures']} failures, "
              f"max residual {check['max_residual']:.3e}")
    print(f"suite {sc.suite}: {'PASS' if report['passed'] else 'FAIL'} "
          f"({report['wall_time_s']:.2f}s)")
    if args.out:
        emit_report(report, args.out)
    if args.plot_dir:
        from .plotting import render_report_plots
        for path in render_report_plots(report, args.plot_dir):
            print(f"wrote {path}")
    return EXIT_PASS if report["passed"] else EXIT_FAIL


def _cmd_eval(args) -> int:
    m_doc = _load_json(args.measure)
    f_doc = _load_json(args.phi)
    space = _resolve_space(args, [p for p, _ in m_doc["atoms"]],
                           f_doc["values"].keys())
    mu = measure_from_json(m_doc, space)
    phi = build_function(space, f_doc["values"], f_doc["lipschitz"])
    print(evaluate(mu, phi))
    return EXIT_PASS


def _cmd_retract(args) -> int:
    m_doc = _load_json(args.measure)
    space = _resolve_space(args, [p for p, _ in m_doc["atoms"]])
    mu = measure_from_json(m_doc, space)
    if args.neighborhood:
        out = neighborhood_retract(mu, args.variant)
    else:
        out = retract_to_dirac(mu)
    print(json.dumps(measure_to_json(out)))
    return EXIT_PASS


def _cmd_track(args) -> int:
    m_doc = _load_json(args.measure)
    space = _resolve_space(args, [p for p, _ in m_doc["atoms"]])
    mu = measure_from_json(m_doc, space)
    tr = track(args.kind, mu, uniform_grid(args.grid), x=args.x)
    payload = track_to_json_str(tr)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
        print(f"wrote {args.out}")
    else:
        print(payload, end="")
    if args.png or args.csv:
        from .plotting import plot_weight_series, write_weight_csv
        pts = sorted({p for st in tr.states for p, _ in st.atoms})
        data = {"t": list(tr.t_grid),
                "weights": {p: [st.weight(p) for st in tr.states] for p in pts}}
        if args.png:
            plot_weight_series(data, args.png)
            print(f"wrote {args.png}")
        if args.csv:
            write_weight_csv(data, args.csv)
            print(f"wrote {args.csv}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ipm", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a theorem-keyed property suite")
    run.add_argument("--suite", choices=SUITE_NAMES)
    run.add_argument("--space", default="grid_1d:16",
                     help="grid_1d:N | circle:N | random_points:D:N:SEED")
    run.add_argument("--trials", type=int, default=1000)
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--tolerance", type=float, default=1e-12)
    run.add_argument("--variant", choices=("atom_clamp", "paper_literal"),
                     default="atom_clamp")
    run.add_argument("--out", help="write the canonical JSON report here")
    run.add_argument("--plot-dir", help="render track figures and CSV here")
    run.add_argument("--replay", help="counterexample payload to replay")
    run.set_defaults(func=_cmd_run)

    ev = sub.add_parser("eval", help="evaluate a measure against a function")
    ev.add_argument("--measure", required=True)
    ev.add_argument("--phi", required=True)
    ev.add_argument("--space")
    ev.set_defaults(func=_cmd_eval)

    re_ = sub.add_parser("retract", help="retract a measure to its Dirac")
    re_.add_argument("--measure", required=True)
    re_.add_argument("--space")
    re_.add_argument("--neighborhood", action="store_true",
                     help="apply the Dirac-neighborhood retraction instead")
    re_.add_argument("--variant", choices=("atom_clamp", "paper_literal"),
                     default="atom_clamp")
    re_.set_defaults(func=_cmd_retract)

    tr = sub.add_parser("track", help="sample a homotopy on a uniform t-grid")
    tr.add_argument("--kind", choices=("fibre", "deformation"), required=True)
    tr.add_argument("--measure", required=True)
    tr.add_argument("--grid", type=int, default=101)
    tr.add_argument("--x", help="fibre point (fibre tracks only)")
    tr.add_argument("--space")
    tr.add_argument("--out")
    tr.add_argument("--png", help="render the weight-vs-t figure here")
    tr.add_argument("--csv", help="write the delimited weight table here")
    tr.set_defaults(func=_cmd_track)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "run" and not args.replay and not args.suite:
        parser.error("run needs --suite (or --replay)")
    try:
        return args.func(args)
    except (ScenarioError, ValidationError, MeasureError, FileNotFoundError,
            KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
