"""Command-line interface: label, learn, detect, verify, oracle, track.

Exit codes: 0 success, 1 validation or data failure, 2 usage error.
Diagnostics go to stderr; data goes to files or stdout.  Runs with a fixed
seed produce byte-identical JSON/CSV artifacts.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import equivalence, fileio, oracle
from .labels import default_sigma, gaussian_label
from .solver import filter_to_spatial, solve_filter
from .spectral import MODES, ConsistencyError, response
from .tracker import Tracker, TrackerConfig, TrackingLostError

__all__ = ["main", "entry"]


def _write_json(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_label(args) -> int:
    sigma = args.sigma if args.sigma is not None else default_sigma(args.m, args.n)
    fileio.write_sample(gaussian_label(args.m, args.n, sigma), args.out)
    return 0


def _cmd_learn(args) -> int:
    if not (args.out_spectral or args.out_spatial):
        raise ValueError("learn needs --out-spectral and/or --out-spatial")
    samples = [fileio.read_sample(p) for p in args.samples]
    shapes = {s.shape for s in samples}
    if len(shapes) != 1:
        raise ValueError(f"sample files disagree on shape: {sorted(shapes)}")
    stack = np.stack(samples)
    label = fileio.read_sample(args.label)
    if label.shape[0] != 1:
        raise ValueError(f"label file must hold a single channel, got {label.shape[0]}")
    weights = None
    if args.weights:
        weights = np.array([float(v) for v in args.weights.split(",")])
    fhat = solve_filter(stack, label[0], lam=args.lam, weights=weights, mode=args.mode)
    if args.out_spectral:
        fileio.write_spectral(fhat, args.out_spectral)
    if args.out_spatial:
        fileio.write_sample(filter_to_spatial(fhat), args.out_spatial)
    return 0


def _cmd_detect(args) -> int:
    sample = fileio.read_sample(args.sample)
    bank = fileio.read_bank(args.filter)
    fileio.write_sample(response(sample, bank, args.mode), args.out)
    return 0


def _cmd_verify(args) -> int:
    specs = equivalence.sweep_instances(
        kind=args.sweep, seed=args.seed, lam=args.lam, sigma=args.sigma
    )
    tol = equivalence.Tolerances(conj=args.tol_conj, flip=args.tol_flip, mse=args.tol_mse)
    result = equivalence.run_suite(specs, tol)
    _write_json(result.to_dict(), args.report)
    status = "pass" if result.passed else "FAIL"
    print(
        f"verify {status}: {len(result.reports)} instances, "
        f"worst conj {result.worst_conj:.3e}, flip {result.worst_flip:.3e}, "
        f"mse gap {result.worst_mse_gap:.3e}",
        file=sys.stderr,
    )
    return 0 if result.passed else 1


def _cmd_oracle(args) -> int:
    rng = np.random.default_rng(args.seed)
    samples = rng.standard_normal((args.t, args.d, args.m, args.n))
    label = gaussian_label(args.m, args.n, min(args.m, args.n) / 8.0)
    spectral = filter_to_spatial(solve_filter(samples, label, lam=args.lam, mode=args.mode))
    dense = oracle.dense_solve(oracle.build_dense(samples, label, lam=args.lam, mode=args.mode))
    report = oracle.compare(dense, spectral, tol=args.tol)
    payload = {
        "instance": {
            "m": args.m,
            "n": args.n,
            "d": args.d,
            "t": args.t,
            "seed": args.seed,
            "lam": args.lam,
            "mode": args.mode,
        },
        "max_abs": report.max_abs,
        "max_rel": report.max_rel,
        "tol": report.tol,
        "passed": report.passed,
    }
    _write_json(payload, args.report)
    return 0 if report.passed else 1


def _cmd_track(args) -> int:
    frame_paths = sorted(Path(args.frames).glob("*.pgm"))
    if not frame_paths:
        raise ValueError(f"no .pgm frames found in {args.frames}")
    try:
        box = tuple(float(v) for v in args.init.split(","))
    except ValueError:
        raise ValueError(f'--init must be "x,y,w,h", got {args.init!r}') from None
    if len(box) != 4:
        raise ValueError(f'--init must be "x,y,w,h", got {args.init!r}')
    config = TrackerConfig(mode=args.mode, lam=args.lam, eta=args.eta, sigma=args.sigma)
    tracker = Tracker(config)
    dump_dir = Path(args.dump_responses) if args.dump_responses else None
    if dump_dir:
        dump_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for index, path in enumerate(frame_paths):
        frame = fileio.read_pgm(path)
        if index == 0:
            (x, y, w, h), score = tracker.init(frame, box)
        else:
            (x, y, w, h), score = tracker.step(frame)
        rows.append(f"{index},{x + w / 2.0:.3f},{y + h / 2.0:.3f},{score:.6f}")
        if dump_dir is not None and tracker.last_response is not None:
            fileio.write_sample(tracker.last_response, dump_dir / f"response_{index:03d}.mct")
    text = "frame,cx,cy,score\n" + "\n".join(rows) + "\n"
    if args.out_csv:
        Path(args.out_csv).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circfilt",
        description="Learn and verify circular correlation/convolution filters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("label", help="write a centrosymmetric Gaussian label file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_label)

    p = sub.add_parser("learn", help="solve a filter bank from sample files")
    p.add_argument("--samples", nargs="+", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--weights", default=None, help="comma-separated per-sample weights")
    p.add_argument("--lambda", dest="lam", type=float, default=1e-2)
    p.add_argument("--mode", choices=MODES, default="correlation")
    p.add_argument("--out-spectral", default=None)
    p.add_argument("--out-spatial", default=None)
    p.set_defaults(func=_cmd_learn)

    p = sub.add_parser("detect", help="apply a filter file to a sample file")
    p.add_argument("--sample", required=True)
    p.add_argument("--filter", required=True)
    p.add_argument("--mode", choices=MODES, default="correlation")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("verify", help="run the formulation-equivalence suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sweep", choices=("small", "full"), default="full")
    p.add_argument("--lambda", dest="lam", type=float, default=1e-2)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--tol-conj", type=float, default=1e-9)
    p.add_argument("--tol-flip", type=float, default=1e-9)
    p.add_argument("--tol-mse", type=float, default=1e-10)
    p.add_argument("--report", default=None, help="JSON report path (default stdout)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="cross-check the solver against the dense reference")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=float, default=1e-2)
    p.add_argument("--mode", choices=MODES, default="correlation")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("track", help="track a box through a directory of PGM frames")
    p.add_argument("--frames", required=True)
    p.add_argument("--init", required=True, help='initial box "x,y,w,h"')
    p.add_argument("--mode", choices=MODES, default="correlation")
    p.add_argument("--eta", type=float, default=0.025)
    p.add_argument("--lambda", dest="lam", type=float, default=1e-2)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--out-csv", default=None)
    p.add_argument("--dump-responses", default=None, help="directory for per-frame response files")
    p.set_defaults(func=_cmd_track)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        fileio.FormatError,
        ConsistencyError,
        TrackingLostError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
