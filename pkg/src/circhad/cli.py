"""One executable, subcommand per task, file-based I/O.

Every output file is reproducible: all randomness flows through explicit
--seed flags (there are no entropy defaults), floats in CSVs are printed
with 17 significant digits, and each run writes a <out>.manifest.json
recording the exact command line, tool version, and parameters in force.

Exit codes: 0 success, 1 usage or validation failure, 2 I/O failure,
3 internal tolerance violation (an oracle or drift guard tripped).
"""

from __future__ import annotations

import argparse
import datetime
import json
import shlex
import sys
from pathlib import Path

from . import __version__
from .conjecture import legendre_statistics, moduli_histogram, scan_deviation
from .constructions import (
    CEF_LENGTH_CAP,
    LegendreParams,
    cef_iterate,
    cef_seed12,
    cef_start,
    legendre_modified,
    random_signs,
    rudin_shapiro,
)
from .errors import ToleranceViolation
from .search import (
    EXHAUSTIVE_CAP,
    AnnealSchedule,
    anneal,
    exhaustive_search,
    local_search,
)
from .signs import SignVector, from_json_dict
from .spectrum import circle_profile, eigenvalues_fft, report

TRACE_DEFAULT = (1.0, 1.05, 5000)


def _f17(x: float) -> str:
    return format(float(x), ".17g")


def _utc_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _write_manifest(out_path: str, argv: list[str], inputs: list[str], outputs: list[str], params: dict):
    manifest = {
        "command": shlex.join(["circhad"] + list(argv)),
        "argv": list(argv),
        "version": __version__,
        "timestamp": _utc_now(),
        "inputs": inputs,
        "outputs": outputs,
        "parameters": params,
    }
    _write_text(out_path + ".manifest.json", _dump_json(manifest))


def _read_sign_vector(path: str) -> SignVector:
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(
            "%s: parse error at line %d column %d: %s" % (path, exc.lineno, exc.colno, exc.msg)
        ) from exc
    return from_json_dict(obj)


def _vector_json(vec: SignVector, provenance: dict, as_hex: bool) -> str:
    if as_hex:
        body = {"n": vec.n, "bits": vec.to_hex()}
    else:
        body = vec.to_json_dict()
    body.update(provenance)
    return _dump_json(body)


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(r) for r in rows)
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    """argparse flavor whose usage errors exit with code 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circhad", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version="circhad %s" % __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[], help="emit a sign vector by a named construction")
    p.add_argument("--method", required=True, choices=["rudin-shapiro", "legendre", "cef", "random"])
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, help="rudin-shapiro: length is 2^k")
    p.add_argument("--q", type=int, help="legendre: prime dimension")
    p.add_argument("--seed", type=int, help="seed for the seeded methods")
    p.add_argument("--flips", type=int, help="legendre: -1 -> +1 flip count (default recipe if omitted)")
    p.add_argument("--n", type=int, help="random: dimension")
    p.add_argument("--generations", type=int, default=2, help="cef: squaring iterations from the degree-12 seed")
    p.add_argument("--hex", action="store_true", help="emit the compact hex bit form")

    p = sub.add_parser("analyze", help="spectral report (plus optional histogram / circle trace) of a vector file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--report", dest="report_path", required=True)
    p.add_argument("--hist", help="write an eigenvalue-moduli histogram CSV here")
    p.add_argument("--bins", type=int, default=60)
    p.add_argument(
        "--trace",
        nargs="*",
        type=float,
        default=None,
        metavar=("T0", "T1"),
        help="write a circle trace CSV over window T0 T1 SAMPLES (default %s %s %s)" % TRACE_DEFAULT,
    )
    p.add_argument("--trace-out", help="path for the trace CSV")

    p = sub.add_parser("search", help="optimize a vector for an objective")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--objective", required=True, choices=["condition", "deviation"])
    p.add_argument("--mode", required=True, choices=["exhaustive", "local", "anneal"])
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-iters", type=int, default=10_000)
    p.add_argument("--epochs", type=int, default=500)
    p.add_argument("--cooling", type=float, default=0.98)
    p.add_argument("--t0", type=float, help="initial annealing temperature (default: deviation of the start)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("scan", help="per-n minimal deviation scan")
    p.add_argument("--n-lo", type=int, required=True)
    p.add_argument("--n-hi", type=int, required=True)
    p.add_argument("--exact-cap", type=int, default=EXHAUSTIVE_CAP)
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int, default=4)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("stats", help="multi-seed Legendre statistics at a prime q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seeds", type=int, required=True)
    p.add_argument("--flips", type=int)
    p.add_argument("--hist-dir", help="write one moduli-histogram CSV per seed into this directory")
    p.add_argument("--bins", type=int, default=60)
    p.add_argument("--out", required=True)

    return parser


def _require(condition: bool, message: str):
    if not condition:
        raise ValueError(message)


def _cmd_construct(args, argv) -> int:
    method = args.method
    if method == "rudin-shapiro":
        _require(args.k is not None, "--k is required for rudin-shapiro")
        vec = rudin_shapiro(args.k)
        prov = {"method": "rudin-shapiro", "k": args.k}
    elif method == "random":
        _require(args.n is not None, "--n is required for random")
        _require(args.seed is not None, "--seed is required for random")
        vec = random_signs(args.n, args.seed)
        prov = {"method": "random", "seed": args.seed}
    elif method == "legendre":
        _require(args.q is not None, "--q is required for legendre")
        _require(args.seed is not None, "--seed is required for legendre")
        params = LegendreParams(args.q, args.seed, args.flips)
        vec = legendre_modified(params)
        prov = {"method": "legendre", "q": args.q, "seed": args.seed, "flips": params.resolved_flips()}
    else:
        _require(args.generations >= 0, "--generations must be nonnegative")
        state = cef_start(cef_seed12())
        for _ in range(args.generations):
            state = cef_iterate(state, CEF_LENGTH_CAP)
        vec = state.coefficients
        prov = {"method": "cef", "generations": args.generations, "degree": state.degree}
    _write_text(args.out, _vector_json(vec, prov, args.hex))
    _write_manifest(args.out, argv, [], [args.out], prov)
    return 0


def _cmd_analyze(args, argv) -> int:
    vec = _read_sign_vector(args.in_path)
    sp = eigenvalues_fft(vec)
    rep = report(sp)
    outputs = [args.report_path]
    _write_text(args.report_path, _dump_json(rep.to_json_dict()))
    if args.hist:
        lo, hi, counts = moduli_histogram(sp.moduli(), args.bins)
        rows = [(_f17(a), _f17(b), str(int(c))) for a, b, c in zip(lo, hi, counts)]
        _write_text(args.hist, _csv("bin_lo,bin_hi,count", rows))
        outputs.append(args.hist)
    if args.trace is not None:
        if len(args.trace) == 0:
            t0, t1, samples = TRACE_DEFAULT
        elif len(args.trace) == 3:
            t0, t1, samples = args.trace[0], args.trace[1], int(args.trace[2])
        else:
            raise ValueError("--trace takes zero or three values: T0 T1 SAMPLES")
        _require(args.trace_out is not None, "--trace-out is required with --trace")
        t, values = circle_profile(vec, samples, window=(t0, t1))
        rows = [
            (_f17(tt), _f17(v.real), _f17(v.imag), _f17(abs(v)))
            for tt, v in zip(t, values)
        ]
        _write_text(args.trace_out, _csv("t,re,im,abs", rows))
        outputs.append(args.trace_out)
    params = {"in": args.in_path, "bins": args.bins, "trace": args.trace}
    _write_manifest(args.report_path, argv, [args.in_path], outputs, params)
    return 0


def _cmd_search(args, argv) -> int:
    if args.mode == "exhaustive":
        outcome = exhaustive_search(args.n, args.objective, threads=args.threads)
    elif args.mode == "local":
        _require(args.seed is not None, "--seed is required for local mode")
        outcome = local_search(args.n, args.objective, args.seed, restarts=args.restarts, max_iters=args.max_iters)
    else:
        _require(args.seed is not None, "--seed is required for anneal mode")
        schedule = AnnealSchedule(t0=args.t0, cooling=args.cooling, epochs=args.epochs)
        outcome = anneal(args.n, args.objective, args.seed, schedule=schedule)
    _write_text(args.out, _dump_json(outcome.to_json_dict()))
    params = {
        "n": args.n,
        "objective": args.objective,
        "mode": args.mode,
        "seed": args.seed,
        "restarts": args.restarts,
        "max_iters": args.max_iters,
        "epochs": args.epochs,
        "cooling": args.cooling,
        "t0": args.t0,
        "threads": args.threads,
    }
    _write_manifest(args.out, argv, [], [args.out], params)
    return 0


def _cmd_scan(args, argv) -> int:
    seed = args.seed
    if args.n_hi > args.exact_cap:
        _require(seed is not None, "--seed is required when the scan range exceeds --exact-cap")
    records = scan_deviation(
        args.n_lo,
        args.n_hi,
        exact_cap=args.exact_cap,
        seed=0 if seed is None else seed,
        restarts=args.restarts,
        threads=args.threads,
    )
    rows = [
        (str(r.n), _f17(r.min_deviation), _f17(r.normalized), "true" if r.exact else "false", r.method)
        for r in records
    ]
    _write_text(args.out, _csv("n,min_deviation,normalized,exact,method", rows))
    params = {
        "n_lo": args.n_lo,
        "n_hi": args.n_hi,
        "exact_cap": args.exact_cap,
        "seed": seed,
        "restarts": args.restarts,
        "threads": args.threads,
    }
    _write_manifest(args.out, argv, [], [args.out], params)
    return 0


def _cmd_stats(args, argv) -> int:
    stats, _reports = legendre_statistics(args.q, args.seeds, flips=args.flips)
    _write_text(args.out, _dump_json(stats.to_json_dict()))
    outputs = [args.out]
    if args.hist_dir:
        hist_dir = Path(args.hist_dir)
        hist_dir.mkdir(parents=True, exist_ok=True)
        for seed in range(args.seeds):
            vec = legendre_modified(LegendreParams(args.q, seed, args.flips))
            mods = eigenvalues_fft(vec).moduli()
            lo, hi, counts = moduli_histogram(mods, args.bins)
            rows = [(_f17(a), _f17(b), str(int(c))) for a, b, c in zip(lo, hi, counts)]
            path = str(hist_dir / ("q%d_seed%d.csv" % (args.q, seed)))
            _write_text(path, _csv("bin_lo,bin_hi,count", rows))
            outputs.append(path)
    params = {"q": args.q, "seeds": args.seeds, "flips": args.flips, "bins": args.bins}
    _write_manifest(args.out, argv, [], outputs, params)
    return 0


_DISPATCH = {
    "construct": _cmd_construct,
    "analyze": _cmd_analyze,
    "search": _cmd_search,
    "scan": _cmd_scan,
    "stats": _cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args, argv)
    except ToleranceViolation as exc:
        print("circhad: tolerance violation: %s" % exc, file=sys.stderr)
        return 3
    except (ValueError, json.JSONDecodeError) as exc:
        print("circhad: error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("circhad: i/o error: %s" % exc, file=sys.stderr)
        return 2


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
