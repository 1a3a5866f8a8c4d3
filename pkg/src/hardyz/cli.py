"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or domain error, 3 I/O error.
"""
import argparse
import configparser
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from . import __version__, checks
from .errors import HardyError, UnstableScan
from .jet import parse_point
from .kernels import BACKEND
from .recursion import FamilyId, f_jet, g_jet, h_jet, z_derivatives
from .special import DomainSpec, chi, omega_jet, theta_jet
from .zeros import (
    Rectangle,
    ZEvaluator,
    count_zeros,
    interlace_check,
    scan_zeros,
    winding_count,
)
from .zeta import PrecisionConfig, zeta_jet

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    em_cutoff: int | None = None
    em_depth: int | None = None
    cauchy_radius: float = 0.2
    cauchy_nodes: int = 64
    target_eps: float = 1e-13
    delta: float = 0.1
    format: str = "json"
    output: str | None = None
    workers: int = 1
    seed: int = 0

    def precision(self):
        return PrecisionConfig(
            em_cutoff=self.em_cutoff,
            em_depth=self.em_depth,
            cauchy_radius=self.cauchy_radius,
            cauchy_nodes=self.cauchy_nodes,
            target_eps=self.target_eps,
        )

    def domain(self):
        return DomainSpec(self.delta)

    def validate(self):
        if self.format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.format!r}")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        # both constructors raise on invalid values
        self.precision()
        self.domain()
        return self


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _convert(key, raw):
    kind = _TYPES[key]
    if raw is None or (isinstance(raw, str) and raw.lower() in ("", "none", "auto")):
        if "None" in str(kind):
            return None
        raise UsageError(f"{key} needs a value")
    try:
        if kind in (int, "int") or str(kind).startswith("int"):
            return int(raw)
        if kind in (float, "float"):
            return float(raw)
        return str(raw)
    except ValueError as exc:
        raise UsageError(f"bad value for {key}: {raw!r}") from exc


def load_ini(path):
    """Parse ``key = value`` lines (an optional ``[run]`` header is allowed)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc}") from exc
    parser = configparser.ConfigParser(interpolation=None)
    if not text.lstrip().startswith("["):
        text = "[run]\n" + text
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise UsageError(f"malformed config file: {exc}") from exc
    out = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            key = key.replace("-", "_")
            if key not in _TYPES:
                raise UsageError(f"unknown config key {key!r}")
            out[key] = _convert(key, value)
    return out


def build_run_config(args):
    values = {}
    if getattr(args, "config", None):
        values.update(load_ini(args.config))
    for name in _TYPES:
        v = getattr(args, name, None)
        if v is not None:
            values[name] = _convert(name, v)
    return RunConfig(**values).validate()


# ----------------------------------------------------------------- formatting


def fmt(x):
    """Decimal string with 15 significant digits; complex as 're,im' pair."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if x == 0.0:
            return "0"
        return format(x, ".15g")
    return str(x)


def _expand(rows):
    """Split complex columns into ``<name>_re`` / ``<name>_im`` columns."""
    out = []
    for row in rows:
        r = {}
        for k, v in row.items():
            if isinstance(v, (complex, np.complexfloating)):
                r[f"{k}_re"] = fmt(float(v.real))
                r[f"{k}_im"] = fmt(float(v.imag))
            else:
                r[k] = fmt(v)
        out.append(r)
    return out


def render(command, run, summary, rows, extra_meta=None):
    summary_s = _expand([summary])[0] if summary else {}
    rows_s = _expand(rows)
    if run.format == "json":
        meta = {
            "command": command,
            "version": __version__,
            "backend": BACKEND,
            "config": {k: fmt(v) for k, v in asdict(run).items() if k not in ("output", "format")},
        }
        meta.update({k: fmt(v) for k, v in (extra_meta or {}).items()})
        doc = {"meta": meta, "data": {"summary": summary_s, "rows": rows_s}}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    for k, v in summary_s.items():
        buf.write(f"# {k}={v}\n")
    if rows_s:
        writer = csv.DictWriter(buf, fieldnames=list(rows_s[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows_s)
    return buf.getvalue()


def emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _range(text):
    try:
        a, b = (float(x) for x in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"range must look like LO:HI, got {text!r}") from exc
    if not a < b:
        raise UsageError(f"empty range {text!r}")
    return a, b


# ------------------------------------------------------------------ commands

COMPLEX_TARGETS = ("zeta", "chi", "omega", "f", "h", "g")


def cmd_eval(args, run):
    target = args.target
    cfg, dom = run.precision(), run.domain()
    n, K = args.n, args.K
    quality = None
    if target in ("theta", "Z"):
        if args.t is None:
            raise UsageError(f"eval {target} needs --t")
        t = float(args.t)
        point = t
        if target == "theta":
            jet = theta_jet(t, K)
            coeffs = [float(c.real) for c in jet.coeffs]
        else:
            vals, quality = z_derivatives(n + K, t, cfg, check=False)
            # Z-jet coefficients Z^(n+k)/k!
            coeffs = [float(vals[n + k]) / math.factorial(k) for k in range(K + 1)]
    else:
        if args.s is None:
            raise UsageError(f"eval {target} needs --s")
        s = parse_point(args.s)
        point = s
        if target == "zeta":
            coeffs = list(zeta_jet(s, K, cfg).coeffs)
        elif target == "chi":
            if K:
                raise UsageError("chi is evaluated at order 0 only")
            coeffs = [chi(s)]
        elif target == "omega":
            coeffs = list(omega_jet(s, K, dom).coeffs)
        elif target == "f":
            coeffs = list(f_jet(n, s, K, cfg, dom).coeffs)
        elif target == "h":
            coeffs = list(h_jet(n, s, K, dom).coeffs)
        else:
            coeffs = list(g_jet(n, s, K, cfg, dom).coeffs)
        coeffs = [complex(c) for c in coeffs]
    summary = {"target": target, "n": n, "point": point, "value": coeffs[0], "quality": quality}
    rows = [{"k": k, "coeff": c} for k, c in enumerate(coeffs)] if K > 0 else []
    emit(render("eval", run, summary, rows), run.output)
    return EXIT_OK


def cmd_zeros(args, run):
    lo, hi = _range(args.range)
    ev = ZEvaluator(args.n, run.precision(), run.workers)
    zs = scan_zeros(args.n, lo, hi, run.precision(), ev)
    rows = [
        {"t": z.t, "bracket_width": z.bracket_width, "sign_before": z.sign_before, "sign_after": z.sign_after}
        for z in zs
    ]
    summary = {"n": args.n, "t_lo": lo, "t_hi": hi, "zeros": len(zs), "quality": ev.quality}
    emit(render("zeros", run, summary, rows), run.output)
    if run.output is not None:
        print(f"zeros={len(zs)}")
    return EXIT_OK


def cmd_interlace(args, run):
    lo, hi = _range(args.range)
    try:
        rep = interlace_check(args.n, lo, hi, run.precision(), workers=run.workers)
    except UnstableScan as exc:
        print(f"unstable scan: {exc}", file=sys.stderr)
        return EXIT_CHECK
    rows = [
        {"left": g.left, "right": g.right, "count": g.count, "ambiguous": g.ambiguous,
         "violation": (g.count != 1) and not g.ambiguous}
        for g in rep.gaps
    ]
    summary = {
        "n": rep.n, "t_lo": lo, "t_hi": hi, "gaps": len(rep.gaps),
        "violations": len(rep.violations), "ambiguous": len(rep.ambiguous),
        "holds_from": rep.holds_from, "quality": rep.quality,
    }
    emit(render("interlace", run, summary, rows), run.output)
    line = f"gaps={len(rep.gaps)}, violations={len(rep.violations)}, ambiguous={len(rep.ambiguous)}"
    print(line, file=sys.stdout if run.output else sys.stderr)
    return EXIT_OK if rep.ok else EXIT_CHECK


def cmd_count(args, run):
    rep = count_zeros(args.n, float(args.T), run.precision(), workers=run.workers)
    summary = asdict(rep)
    emit(render("count", run, summary, []), run.output)
    return EXIT_OK


def cmd_winding(args, run):
    fam = FamilyId.parse(args.family)
    if args.square:
        c, side = args.square.rsplit(":", 1)
        rect = Rectangle.square(parse_point(c), float(side))
    elif args.rect:
        try:
            a, b, c, d = (float(x) for x in args.rect.split(":"))
        except ValueError as exc:
            raise UsageError("rect must look like SIG_LO:SIG_HI:T_LO:T_HI") from exc
        rect = Rectangle(a, b, c, d)
    else:
        raise UsageError("winding needs --rect or --square")
    w = winding_count(fam, rect, args.nodes, run.precision(), run.domain())
    summary = {"family": str(fam), **asdict(rect), "winding": w}
    emit(render("winding", run, summary, []), run.output)
    return EXIT_OK


def cmd_selfcheck(args, run):
    results = checks.run_suite(run.seed, run.precision(), quick=not args.full)
    rows = [
        {"invariant": r.name, "max_residual": r.max_residual, "tolerance": r.tolerance,
         "samples": r.samples, "passed": r.passed}
        for r in results
    ]
    failed = [r for r in results if not r.passed]
    summary = {"seed": run.seed, "checks": len(results), "failed": len(failed)}
    if run.output is not None:
        emit(render("selfcheck", run, summary, rows), run.output)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {fmt(r.max_residual):>22}  <= {fmt(r.tolerance):<8}  {status}")
    if failed:
        print("failing: " + "; ".join(r.name for r in failed))
        return EXIT_CHECK
    return EXIT_OK


def cmd_plotdata(args, run):
    lo, hi = _range(args.range)
    if not args.step > 0:
        raise UsageError("step must be positive")
    n = args.n
    m = int(round((hi - lo) / args.step))
    ts = lo + args.step * np.arange(m + 1)
    lines = []
    cfg = run.precision()
    for t in ts:
        t = float(t)
        if args.target == "Z":
            v = float(z_derivatives(n, t, cfg, check=False)[0][n])
        else:
            # g_n is complex on the line; its modulus is plotted
            v = abs(g_jet(n, complex(0.5, t), 0, cfg, run.domain()).value)
        lines.append(f"{fmt(t)} {fmt(v)}\n")
    emit("".join(lines), run.output)
    return EXIT_OK


# -------------------------------------------------------------------- parser


def _common(p):
    p.add_argument("--config", help="INI-style key=value file")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", dest="output")
    p.add_argument("--workers", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--delta", type=float, help="exclusion radius of D")
    p.add_argument("--em-cutoff", dest="em_cutoff", type=int)
    p.add_argument("--em-depth", dest="em_depth", type=int)
    p.add_argument("--cauchy-radius", dest="cauchy_radius", type=float)
    p.add_argument("--cauchy-nodes", dest="cauchy_nodes", type=int)
    p.add_argument("--target-eps", dest="target_eps", type=float)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": {"type": "UsageError", "message": message}}), file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def make_parser():
    p = _Parser(prog="hardyz", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate one function (and its jet)")
    e.add_argument("target", choices=COMPLEX_TARGETS + ("theta", "Z"))
    e.add_argument("--n", type=int, default=0)
    e.add_argument("--s")
    e.add_argument("--t", type=float)
    e.add_argument("--K", type=int, default=0)
    e.set_defaults(func=cmd_eval)

    z = sub.add_parser("zeros", help="zeros of Z^(n) in a range")
    z.add_argument("--n", type=int, default=0)
    z.add_argument("--range", required=True)
    z.set_defaults(func=cmd_zeros)

    i = sub.add_parser("interlace", help="interlacing of Z^(n) and Z^(n+1) zeros")
    i.add_argument("--n", type=int, default=0)
    i.add_argument("--range", required=True)
    i.set_defaults(func=cmd_interlace)

    c = sub.add_parser("count", help="zero census against the main term")
    c.add_argument("--n", type=int, default=0)
    c.add_argument("--T", type=float, required=True)
    c.set_defaults(func=cmd_count)

    w = sub.add_parser("winding", help="argument-principle count on a rectangle")
    w.add_argument("--family", required=True, help="e.g. F(1), H(2), G(0)")
    w.add_argument("--rect", help="SIG_LO:SIG_HI:T_LO:T_HI")
    w.add_argument("--square", help="CENTER:SIDE, e.g. 1:0.5")
    w.add_argument("--nodes", type=int, default=40, help="boundary nodes per unit length")
    w.set_defaults(func=cmd_winding)

    s = sub.add_parser("selfcheck", help="run the invariant suite")
    s.add_argument("--full", action="store_true", help="use the full sample counts")
    s.set_defaults(func=cmd_selfcheck)

    d = sub.add_parser("plotdata", help="two-column t/value data file")
    d.add_argument("target", choices=("Z", "g"))
    d.add_argument("--n", type=int, default=0)
    d.add_argument("--range", required=True)
    d.add_argument("--step", type=float, required=True)
    d.set_defaults(func=cmd_plotdata)

    for sp in (e, z, i, c, w, s, d):
        _common(sp)
    return p


def _error(kind, message):
    print(json.dumps({"error": {"type": kind, "message": message}}), file=sys.stderr)


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        run = build_run_config(args)
        return args.func(args, run)
    except (UsageError, HardyError, ValueError) as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
