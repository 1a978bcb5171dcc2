"""Command-line front end: machine-first CSV / JSON-lines output.

Every subcommand echoes the effective configuration as '#' comment lines,
is deterministic given (config, inputs), and uses the exit codes
0 success, 2 usage, 3 precision failure, 4 data validation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .config import RunConfig, load_config
from .errors import (
    CheckpointMismatch,
    DataParseError,
    DataValidationError,
    PrecisionFailure,
    ZetalabError,
)

EXIT_USAGE = 2
EXIT_PRECISION = 3
EXIT_DATA = 4


class _Out:
    """Collects header comments and rows; renders csv or json-lines."""

    def __init__(self, fmt, columns, stream):
        self.fmt = fmt
        self.columns = columns
        self.stream = stream
        self.header_done = False

    def comment(self, line):
        if self.fmt == "csv":
            self.stream.write("# %s\n" % line if not line.startswith("#") else line + "\n")

    def comments(self, lines):
        for line in lines:
            self.comment(line.lstrip("# "))

    def row(self, values):
        if self.fmt == "jsonl":
            self.stream.write(json.dumps(dict(zip(self.columns, values))) + "\n")
            return
        if not self.header_done:
            self.stream.write(",".join(self.columns) + "\n")
            self.header_done = True
        self.stream.write(",".join(_fmt(v) for v in values) + "\n")


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _add_common(p):
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--format", choices=("csv", "jsonl"), help="output format override")
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="zetalab",
        description="Numerical laboratory for critical-line zeta moments.",
    )
    ap.add_argument("--version", action="version", version="zetalab " + __version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", help="zeta(1/2+it) with error estimate")
    p.add_argument("--t", required=True, type=float)
    _add_common(p)

    p = sub.add_parser("moment", help="running 2k-th moment with checkpointing")
    p.add_argument("--k", required=True, type=int, choices=(1, 2))
    p.add_argument("--T", required=True, type=float)
    p.add_argument("--resume", action="store_true",
                   help="extend the existing checkpoint (digest must match)")
    p.add_argument("--checkpoint", help="checkpoint file path override")
    _add_common(p)

    p = sub.add_parser("scan", help="sign-change / exceedance scan")
    p.add_argument("--target", required=True, choices=("e1", "e2", "intE2"))
    p.add_argument("--from", dest="t0", required=True, type=float)
    p.add_argument("--to", dest="t1", required=True, type=float)
    p.add_argument("--A", required=True, type=float)
    p.add_argument("--exp", required=True, type=float)
    _add_common(p)

    p = sub.add_parser("motohashi", help="smoothed fourth moment vs spectral sum")
    p.add_argument("--T", required=True, type=float)
    p.add_argument("--delta", required=True, type=float)
    p.add_argument("--spectral", help="spectral dataset path (default: bundled)")
    p.add_argument("--no-spectral", action="store_true",
                   help="direct side only (missing-dataset mode)")
    _add_common(p)

    p = sub.add_parser("laplace", help="L_k(s) over an s grid")
    p.add_argument("--k", required=True, type=int, choices=(1, 2))
    p.add_argument("--s-grid", required=True,
                   help="comma-separated positive sigma values")
    p.add_argument("--kober", action="store_true",
                   help="with k=1: also print the Kober main term at sigma = s/2")
    _add_common(p)

    p = sub.add_parser("divisor-corr", help="shifted divisor correlation sums")
    p.add_argument("--x", required=True, type=int)
    p.add_argument("--f-max", required=True, type=int)
    _add_common(p)

    p = sub.add_parser("kloosterman", help="Kloosterman sum S(m,n;c)")
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--c", required=True, type=int)
    _add_common(p)

    p = sub.add_parser("explore", help="exploratory tables (mean-square E2, "
                                       "twelfth moment, E2 zero gaps)")
    p.add_argument("--table", required=True, choices=("meansq-e2", "twelfth", "e2-gaps"))
    p.add_argument("--T-list", help="comma-separated T values (meansq-e2, twelfth)")
    p.add_argument("--from", dest="t0", type=float, default=500.0)
    p.add_argument("--to", dest="t1", type=float, default=3000.0)
    _add_common(p)

    p = sub.add_parser("calibrate", help="fit the lower fourth-moment coefficients")
    p.add_argument("--from", dest="t0", type=float, default=500.0)
    p.add_argument("--to", dest="t1", type=float, default=5000.0)
    p.add_argument("--points", type=int, default=40)
    _add_common(p)
    return ap


def _config_from(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if getattr(args, "format", None):
        cfg = replace(cfg, output_format=args.format)
    if getattr(args, "checkpoint", None):
        cfg = replace(cfg, checkpoint_path=args.checkpoint)
    return cfg


def _open_out(args, run_cfg, columns):
    stream = open(args.out, "w") if args.out else sys.stdout
    out = _Out(run_cfg.output_format, columns, stream)
    out.comments(run_cfg.echo_lines())
    return out, stream


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except PrecisionFailure as exc:
        print("precision-failure: %s" % exc, file=sys.stderr)
        return EXIT_PRECISION
    except (DataValidationError, DataParseError, CheckpointMismatch) as exc:
        print("data-error: %s" % exc, file=sys.stderr)
        return EXIT_DATA
    except ZetalabError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    return 0


def _dispatch(args) -> int:
    run_cfg = _config_from(args)
    ctx = run_cfg.context()
    cfg = run_cfg.quad

    if args.command == "zeta":
        from .zeta import zeta_sample

        sample = zeta_sample(args.t, ctx)
        out, stream = _open_out(args, run_cfg, ["t", "re_zeta", "im_zeta", "abs_zeta", "err"])
        out.row([sample.t, float(sample.value.real), float(sample.value.imag),
                 float(abs(sample.value)), sample.abs_err])
        _close(stream)
        return 0

    if args.command == "moment":
        return _cmd_moment(args, run_cfg, ctx, cfg)

    if args.command == "scan":
        from .scans import sign_change_scan

        rep = sign_change_scan(args.target, args.t0, args.t1, args.A, args.exp, ctx, cfg)
        out, stream = _open_out(args, run_cfg, ["kind", "t", "value"])
        out.comment("target=%s range=[%r,%r] A=%r exp=%r grid_points=%d"
                    % (rep.target, args.t0, args.t1, args.A, args.exp, rep.grid_points))
        for t, v in rep.exceed_plus:
            out.row(["exceed_plus", t, v])
        for t, v in rep.exceed_minus:
            out.row(["exceed_minus", t, v])
        for t in rep.crossings:
            out.row(["crossing", t, 0.0])
        _close(stream)
        return 0

    if args.command == "motohashi":
        return _cmd_motohashi(args, run_cfg, ctx, cfg)

    if args.command == "laplace":
        from .laplace import kober_main, laplace_moment_grid

        svals = [float(s) for s in args.s_grid.split(",") if s.strip()]
        results = laplace_moment_grid(args.k, svals, ctx, cfg)
        cols = ["s", "L_k", "err_bound", "panels"]
        if args.kober and args.k == 1:
            cols += ["kober_main", "difference"]
        out, stream = _open_out(args, run_cfg, cols)
        for s, r in zip(svals, results):
            row = [s, r.value, r.err_bound, r.panels]
            if args.kober and args.k == 1:
                km = kober_main(s / 2.0, ctx)
                row += [km, r.value - km]
            out.row(row)
        _close(stream)
        return 0

    if args.command == "divisor-corr":
        from .arith import additive_divisor

        out, stream = _open_out(args, run_cfg, ["f", "x", "sum"])
        for f in range(1, args.f_max + 1):
            out.row([f, args.x, additive_divisor(args.x, f)])
        _close(stream)
        return 0

    if args.command == "kloosterman":
        from .arith import kloosterman

        v = kloosterman(args.m, args.n, args.c)
        out, stream = _open_out(args, run_cfg, ["m", "n", "c", "re", "im"])
        out.row([args.m, args.n, args.c, v.value.real, v.value.imag])
        _close(stream)
        return 0

    if args.command == "explore":
        return _cmd_explore(args, run_cfg, ctx, cfg)

    if args.command == "calibrate":
        from .moments import calibrate_p4

        grid = np.exp(np.linspace(math.log(args.t0), math.log(args.t1), args.points))
        poly = calibrate_p4(grid, ctx, cfg)
        out, stream = _open_out(args, run_cfg, ["coefficient", "value", "provenance"])
        out.comment("residual_norm=%r split_drift=%r"
                    % (poly.fit.residual_norm, poly.fit.split_drift))
        names = ["a4", "a3", "c2", "c1", "c0"]
        for name, c, prov in zip(names, poly.coeffs, poly.provenance):
            out.row([name, c, prov])
        _close(stream)
        return 0

    raise AssertionError("unhandled command %r" % (args.command,))


def _cmd_moment(args, run_cfg, ctx, cfg) -> int:
    import fcntl

    from .checkpoint import extend_checkpoint
    from .moments import default_p4, main_term, p1_exact

    path = run_cfg.checkpoint_path
    lock = open(path + ".lock", "w")
    try:
        fcntl.flock(lock, fcntl.LOCK_EX | fcntl.LOCK_NB)
    except OSError:
        print("checkpoint %s is locked by another process" % path, file=sys.stderr)
        return EXIT_DATA
    try:
        out, stream = _open_out(args, run_cfg, ["T", "integral", "main_term", "E", "err_bound"])
        if args.T == 0:
            out.row([0.0, 0.0, 0.0, 0.0, 0.0])
            _close(stream)
            return 0
        cp, (value, err) = extend_checkpoint(path, args.k, args.T, cfg, resume=args.resume)
        poly = p1_exact(ctx) if args.k == 1 else default_p4(ctx)
        mt = main_term(args.k, args.T, poly)
        out.comment("checkpoint=%s rows=%d digest=%s" % (path, len(cp.grid), cp.config_digest))
        out.comment("P%d provenance: %s" % (args.k * args.k, ",".join(poly.provenance)))
        out.row([args.T, value, mt, value - mt, err])
        _close(stream)
        return 0
    finally:
        fcntl.flock(lock, fcntl.LOCK_UN)
        lock.close()


def _cmd_motohashi(args, run_cfg, ctx, cfg) -> int:
    from .moments import smoothed_fourth
    from .spectral import load_spectral_dataset, motohashi_spectral_sum

    direct = smoothed_fourth(args.T, args.delta, ctx, cfg)
    cols = ["T", "delta", "direct", "direct_err", "spectral", "difference",
            "truncation_bound", "terms_used", "variant"]
    out, stream = _open_out(args, run_cfg, cols)
    if args.no_spectral:
        out.comment("warning: no spectral dataset; direct side only")
        out.row([args.T, args.delta, direct.value, direct.err_bound, "", "", "", "", ""])
        _close(stream)
        return 0
    ds = load_spectral_dataset(args.spectral)
    spec = motohashi_spectral_sum(args.T, args.delta, ds, cfg=cfg, ctx=ctx)
    out.comment("spectral source checksum=%s" % ds.checksum)
    out.comment("delta admissible (A=1 window): %s" % spec.metadata["delta_admissible_A1"])
    out.row([args.T, args.delta, direct.value, direct.err_bound, spec.value,
             direct.value - spec.value, spec.truncation_bound, spec.terms_used,
             "smoothed-minus-spectral-includes-main-term"])
    _close(stream)
    return 0


def _cmd_explore(args, run_cfg, ctx, cfg) -> int:
    if args.table == "meansq-e2":
        from .moments import mean_square_e2

        ts = sorted(float(x) for x in (args.T_list or "250,500,1000,2000").split(","))
        _, table = mean_square_e2(max(ts), ctx, cfg, snapshots=ts)
        out, stream = _open_out(args, run_cfg, ["T", "int_E2_sq", "ratio_T2"])
        for t, v, ratio in table:
            out.row([t, v, ratio])
        _close(stream)
        return 0
    if args.table == "twelfth":
        from .moments import twelfth_moment_table

        ts = sorted(float(x) for x in (args.T_list or "250,500,1000,2000").split(","))
        rows = twelfth_moment_table(ts, ctx, cfg)
        out, stream = _open_out(args, run_cfg, ["T", "integral", "ratio_T2_log17", "err_bound"])
        for row in rows:
            out.row(list(row))
        _close(stream)
        return 0
    if args.table == "e2-gaps":
        from .scans import e2_zero_gap_table

        rows = e2_zero_gap_table(args.t0, args.t1, ctx, cfg)
        out, stream = _open_out(args, run_cfg, ["n", "u_n", "gap", "log_gap_over_log_u"])
        for row in rows:
            out.row(list(row))
        _close(stream)
        return 0
    raise AssertionError


def _close(stream):
    if stream is not sys.stdout:
        stream.close()


if __name__ == "__main__":
    sys.exit(main())
