"""Command-line front end.

Every run writes its data file plus <data>.manifest.json (resolved config,
library versions, seed, wall time, sha256 of the data).  Exit status: 0 ok,
1 acceptance failure, 2 invalid configuration.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import platform
import sys
import time

import numpy as np

from . import __version__
from .config import ConfigError, RunConfig, merge, read_config_file


def g17(x) -> str:
    return f"{float(x):.17g}"


def _range_list(s: str) -> list[int]:
    if ".." in s:
        a, b = s.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in s.split(",")]


def _float_list(s: str) -> list[float]:
    return [float(x) for x in s.split(",") if x.strip()]


def _cpu() -> int:
    return os.cpu_count() or 1


COMMON = [
    ("seed", int, 0, "64-bit seed for any random sampling"),
    ("out", str, None, "data file (default: <command>.<format> in the working directory)"),
    ("threads", int, None, "worker threads (default: all cores)"),
]

OPTIONS = {
    "gen": [("level", int, 3, "patch level n: the word rho^(2n)(0|0)"),
            ("weights", str, "1,1", "tile weights u0,u1 or 'balanced'"),
            ("emit", str, "csv", "csv or json")],
    "corr": [("base", bool, False, "only the base table |z| <= 1+lam"),
             ("radius", float, None, "extend the table to this radius"),
             ("emit", str, "csv", "csv or json")],
    "algebra": [("samples", str, "0.05,0.11,0.17", "k values generating the Kronecker algebra"),
                ("max_word_len", int, 2, "word length for the displacement algebra"),
                ("emit", str, "json", "json")],
    "lyapunov": [("direction", str, "in", "in or out"),
                 ("k", str, "0.02", "value or random:<seed>"),
                 ("steps", int, 300, "number of cocycle steps"),
                 ("start", str, "generic", "inward start vector: generic (1,1) or contracting"),
                 ("precision", str, "auto", "outward: auto, double, or a digit count"),
                 ("emit", str, "csv", "csv or json")],
    "torusmean": [("n", int, 4, "product length"),
                  ("tol", float, 1e-4, "refinement tolerance"),
                  ("order", int, 8, "Gauss-Legendre points per panel"),
                  ("emit", str, "json", "json")],
    "diffraction": [("u", str, "balanced", "weights u0,u1 or 'balanced'"),
                    ("xmax", float, 3.0, "F: upper end of [0, xmax]"),
                    ("grid", int, 1500, "F: number of grid cells"),
                    ("level", int, 8, "F: patch level"),
                    ("k", str, "0,0.5,1", "scan: comma separated k values"),
                    ("levels", str, "5..9", "scan: levels, a..b or comma list"),
                    ("emit", str, None, "csv (F) or json (scan)")],
    "verify-all": [("quick", bool, False, "acceptance criteria only, skip the extended diagnostics"),
                   ("only", str, None, "comma separated criterion ids"),
                   ("emit", str, "json", "json")],
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nonpisot",
        description="Inflation point sets, pair correlations, Fourier cocycles and diffraction.",
        epilog="Config files (--config) hold one 'key = value' per line; '#' starts a comment. "
               "Keys are the long option names with '_' for '-'. Flags override the file, "
               "the file overrides defaults.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for cmd, opts in OPTIONS.items():
        sp = sub.add_parser(cmd)
        if cmd == "diffraction":
            sp.add_argument("mode", choices=["F", "scan"])
        sp.add_argument("--config", help="flat key = value file")
        sp.add_argument("--stdout", action="store_true", help="also print the data to stdout")
        for name, typ, _, hlp in COMMON + opts:
            flag = "--" + name.replace("_", "-")
            if typ is bool:
                sp.add_argument(flag, dest=name, action="store_const", const=True, default=None, help=hlp)
            else:
                sp.add_argument(flag, dest=name, type=typ, default=None, help=hlp)
    return p


def _bool(s):
    if isinstance(s, bool):
        return s
    if s.lower() in ("1", "true", "yes", "on"):
        return True
    if s.lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s}")


def resolve(args: argparse.Namespace) -> RunConfig:
    cmd = args.command
    opts = COMMON + OPTIONS[cmd]
    defaults = {n: d for n, _, d, _ in opts}
    types = {n: (_bool if t is bool else t) for n, t, _, _ in opts}
    flags = {n: getattr(args, n) for n, *_ in opts}
    file_values = read_config_file(args.config) if args.config else {}
    vals = merge(flags, file_values, defaults, types)
    if cmd == "diffraction":
        vals["mode"] = args.mode
        if vals["emit"] is None:
            vals["emit"] = "csv" if args.mode == "F" else "json"
    threads = vals.pop("threads") or _cpu()
    seed = vals.pop("seed")
    out = vals.pop("out")
    fmt = vals.pop("emit")
    return RunConfig(cmd, vals, seed, out, fmt, threads)


# ---------------------------------------------------------------------------
# commands: each returns (text payload, summary dict, ok flag)

def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _weights(s):
    from .diffraction import parse_weights
    try:
        return parse_weights(s)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_gen(cfg: RunConfig):
    from .inflation import geometric_patch
    level = cfg.params["level"]
    if level < 1:
        raise ConfigError("level must be >= 1")
    patch = geometric_patch(level, _weights(cfg.params["weights"]))
    if cfg.fmt == "csv":
        text = patch.to_csv()
    else:
        text = json.dumps({"level": level, "points": [
            {"pos": patch.point(i).to_json(), "tile_type": int(patch.types[i])} for i in range(len(patch))],
            "weights": [[w.real, w.imag] for w in patch.tile_weights]})
    return text, {"points": len(patch), "length": g17(patch.length)}, True


def cmd_corr(cfg: RunConfig):
    from .correlation import BASE_RADIUS, base_system_solve, extend_table
    t = base_system_solve()
    R = cfg.params["radius"]
    if R is not None and not cfg.params["base"]:
        if R <= float(BASE_RADIUS):
            raise ConfigError("radius must exceed 1+lam (use --base for the base table)")
        t = extend_table(t, R)
    if cfg.fmt == "csv":
        text = t.to_csv()
    else:
        text = json.dumps({"radius": g17(float(t.radius)), "entries": [
            {"z": z.to_json(), "nu": [[str(v.p), str(v.q)] for v in vals]} for z, vals in sorted(t.entries.items())]})
    return text, {"distances": len(t.entries), "radius": g17(float(t.radius))}, True


def cmd_algebra(cfg: RunConfig):
    from .algebras import ida_dimension, kron_algebra_real_dimension, positivity_threshold
    from .cocycles import random_ks
    from .fourier import conjugation_commutator_residual, projector_residuals, u_realness_residual
    from .torus import frobenius_floor
    ks = random_ks(cfg.seed, 1000)
    rep = {
        "ida_dimension": {L: ida_dimension(L) for L in range(1, cfg.params["max_word_len"] + 1)},
        "kron_real_dimension": kron_algebra_real_dimension(_float_list(cfg.params["samples"])),
        "u_realness_residual": u_realness_residual(ks),
        "conjugation_commutator_residual": conjugation_commutator_residual(ks),
        "projector_residuals": projector_residuals(ks[:50]),
        "positivity_threshold": positivity_threshold(),
        "frobenius_floor": {n: frobenius_floor(n, 100) for n in (1, 2)},
    }
    return json.dumps(rep, indent=1, default=g17), rep, True


def _parse_k(s: str) -> float:
    from .cocycles import random_ks
    if s.startswith("random:"):
        return float(random_ks(int(s.split(":", 1)[1]), 1)[0])
    return float(s)


def cmd_lyapunov(cfg: RunConfig):
    from .cocycles import contracting_exponent, inward_lyapunov, outward_lyapunov
    k = _parse_k(cfg.params["k"])
    n = cfg.params["steps"]
    if n < 2:
        raise ConfigError("steps must be >= 2")
    d = cfg.params["direction"]
    if d == "in":
        if cfg.params["start"] == "contracting":
            slope, prod = contracting_exponent(k, n)
        elif cfg.params["start"] == "generic":
            slope, prod = inward_lyapunov(k, (1.0, 1.0), n)
        else:
            raise ConfigError("start must be generic or contracting")
        trace = prod.log_norm_trace
        summary = {"k": k, "steps": n, "exponent": slope, "fit_residual": prod.residual}
    elif d == "out":
        prec = cfg.params["precision"]
        if prec not in ("auto", "double") and not prec.isdigit():
            raise ConfigError("precision must be auto, double or a digit count")
        est = outward_lyapunov(k, n, None if prec == "double" else prec if prec == "auto" else int(prec))
        trace = est.log_norm_trace
        summary = {"k": k, "steps": n, "chi1": est.chi1, "chi2": est.chi2, "tilde_sum": est.tilde1 + est.tilde2,
                   "det_correction": est.det_correction, "consistency": est.consistency,
                   "precision": prec}
    else:
        raise ConfigError("direction must be in or out")
    steps = np.arange(trace.size)
    run = np.full(trace.size, np.nan)
    run[1:] = (trace[1:] - trace[0]) / steps[1:]
    if cfg.fmt == "csv":
        text = _csv(["step", "log_norm", "running_slope"],
                    [[int(s), g17(v), g17(r)] for s, v, r in zip(steps, trace, run)])
    else:
        text = json.dumps({"summary": summary, "log_norm": [g17(v) for v in trace]})
    return text, summary, True


def cmd_torusmean(cfg: RunConfig):
    from .torus import HALF_LOG_LAM, torus_mean_refinement
    res = torus_mean_refinement(cfg.params["n"], cfg.params["order"], cfg.params["tol"])
    rep = {"n": res.n, "value": res.value, "converged": res.converged,
           "history": [{"panels": p, "order": q, "value": v} for p, q, v in res.history],
           "half_log_lambda": HALF_LOG_LAM, "gap": HALF_LOG_LAM - res.value}
    return json.dumps(rep, indent=1, default=g17), rep, res.converged


def cmd_diffraction(cfg: RunConfig):
    from .diffraction import bragg_scan, distribution_function
    u = _weights(cfg.params["u"])
    if cfg.params["mode"] == "F":
        L = cfg.params["level"]
        if L < 2:
            raise ConfigError("level must be >= 2 (the previous level is reported too)")
        cur = distribution_function(u, cfg.params["xmax"], cfg.params["grid"], L, threads=cfg.threads)
        prev = distribution_function(u, cfg.params["xmax"], cfg.params["grid"], L - 1, threads=cfg.threads)
        rows = [[g17(x), g17(f), g17(fp), g17(f - fp)] for x, f, fp in zip(cur.xs, cur.Fs, prev.Fs)]
        summary = {"F_end": cur.Fs[-1], "slope": cur.slope_at_end(), "min_increment": cur.min_increment(),
                   "rel_level_change": abs(cur.Fs[-1] - prev.Fs[-1]) / cur.Fs[-1], "rule": cur.rule}
        if cfg.fmt == "csv":
            text = _csv(["x", "F", "F_prev_level", "delta"], rows)
        else:
            text = json.dumps({"summary": summary, "x": rows})
        return text, summary, True
    res = bragg_scan(u, _float_list(cfg.params["k"]), _range_list(cfg.params["levels"]))
    payload = [{"k": r.k, "levels": r.levels, "intensity": r.intensities, "slope": r.slope,
                "classification": r.classification} for r in res]
    bragg = [r.k for r in res if r.classification == "Bragg"]
    return json.dumps(payload, indent=1, default=g17), {"k_count": len(res), "bragg_count": len(bragg),
                                                         "bragg": bragg}, True


def cmd_verify(cfg: RunConfig):
    from .acceptance import CHECKS
    only = cfg.params["only"]
    ids = [s.strip() for s in only.split(",")] if only else list(CHECKS)
    results = []
    for cid in ids:
        if cid not in CHECKS:
            raise ConfigError(f"unknown criterion {cid}")
        res = CHECKS[cid](threads=cfg.threads) if cid == "10" else CHECKS[cid]()
        for r in res:
            print(r.line(), flush=True)
        results.extend(res)
    if not cfg.params["quick"] and not only:
        from .extended import extended_diagnostics
        for r in extended_diagnostics():
            print(r.line(), flush=True)
            results.append(r)
    ok = all(r.passed for r in results)
    npass = sum(r.passed for r in results)
    print(f"{npass}/{len(results)} checks passed", flush=True)
    payload = [r.__dict__ for r in results]
    return json.dumps(payload, indent=1), {"passed": npass, "total": len(results)}, ok


COMMAND_FUNCS = {"gen": cmd_gen, "corr": cmd_corr, "algebra": cmd_algebra, "lyapunov": cmd_lyapunov,
                 "torusmean": cmd_torusmean, "diffraction": cmd_diffraction, "verify-all": cmd_verify}


def _versions() -> dict:
    import mpmath
    import scipy
    return {"nonpisot": __version__, "python": platform.python_version(), "numpy": np.__version__,
            "scipy": scipy.__version__, "mpmath": mpmath.__version__}


def run(cfg: RunConfig, to_stdout: bool = False) -> int:
    t0 = time.time()
    func = COMMAND_FUNCS[cfg.command]
    text, summary, ok = func(cfg)
    wall = time.time() - t0
    name = cfg.command + (f"-{cfg.params['mode']}" if cfg.command == "diffraction" else "")
    out = cfg.out or f"{name}.{cfg.fmt}"
    with open(out, "w") as fh:
        fh.write(text)
    manifest = {
        "config": cfg.as_dict(), "seed": cfg.seed, "versions": _versions(), "wall_time_s": wall,
        "data_file": os.path.abspath(out), "sha256": hashlib.sha256(text.encode()).hexdigest(),
        "summary": summary, "ok": ok,
    }
    with open(out + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=1, default=g17)
    if to_stdout:
        sys.stdout.write(text)
    human = ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                      for k, v in summary.items() if not isinstance(v, (list, dict)))
    print(f"{cfg.command}: {human} -> {out} ({wall:.2f} s)", file=sys.stderr)
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        return run(cfg, args.stdout)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
