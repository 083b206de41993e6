"""Command-line front end: ``eval``, ``sweep``, ``verify`` and ``ptg``.

Exit codes: 0 success, 1 usage error, 2 evaluation failure, 3 threshold
breach in ``sweep --assert``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import GaussHypError
from .hyp2f1 import HypParams, hyp_2f1_eval, test_2f1
from .oracle import cut_convention, ode_oracle, series_oracle
from .ptg import (
    PtgParams,
    effective_mass,
    effective_mass_der,
    ptg_pole,
    ptg_scat,
    ptg_test_calc,
    v_ptg,
)

EXIT_OK, EXIT_USAGE, EXIT_EVAL, EXIT_BREACH = 0, 1, 2, 3
CUT_EXCLUSION = 1e-6
DIVERGENCE_WARNING = 1e-8
HIST_FLOOR = -17

_COMPLEX = re.compile(
    r"""^(?:
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
        (?:(?P<im>[+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i)?
      | (?P<pure>[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i
    )$""",
    re.VERBOSE,
)


def parse_complex(text: str) -> complex:
    """Parse ``re``, ``re+imi``, ``re-imi`` or ``imi`` (no spaces)."""
    m = _COMPLEX.match(text.strip())
    if m is None:
        raise ValueError(f"not a complex literal: {text!r}")

    def coeff(s: str) -> float:
        return float(s + "1") if s in ("", "+", "-") else float(s)

    if m.group("pure") is not None:
        return complex(0.0, coeff(m.group("pure")))
    im = m.group("im")
    return complex(float(m.group("re")), coeff(im) if im is not None else 0.0)


def fmt_real(x: float) -> str:
    return format(x, ".17g")


def fmt_complex(z: complex) -> str:
    return f"{fmt_real(z.real)}{'+' if math.copysign(1.0, z.imag) > 0 else '-'}{fmt_real(abs(z.imag))}i"


# --- output -------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, float):
        return fmt_real(v)
    if isinstance(v, complex):
        return fmt_complex(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def render(rows: list[dict], fmt: str, header: dict | None = None) -> str:
    """Rows (and an optional header record) as csv, JSON lines or a text table."""
    out = io.StringIO()
    if fmt == "json":
        if header is not None:
            out.write(json.dumps({k: _jsonable(v) for k, v in header.items()}) + "\n")
        for row in rows:
            out.write(json.dumps({k: _jsonable(v) for k, v in row.items()}) + "\n")
        return out.getvalue()
    if header is not None:
        for k, v in header.items():
            out.write(f"# {k}={_cell(v)}\n")
    if not rows:
        return out.getvalue()
    keys = list(rows[0])
    cells = [[_cell(row[k]) for k in keys] for row in rows]
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(keys)
        writer.writerows(cells)
        return out.getvalue()
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    out.write("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip() + "\n")
    for c in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip() + "\n")
    return out.getvalue()


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- eval ---------------------------------------------------------------


def eval_record(a: complex, b: complex, c: complex, z: complex) -> dict:
    res = hyp_2f1_eval(a, b, c, z)
    return {
        "a": a,
        "b": b,
        "c": c,
        "z": z,
        "value": res.value,
        "method": res.method.value,
        "terms": res.terms_used,
        "residual": test_2f1(a, b, c, z, res.value),
    }


def cmd_eval(args) -> int:
    record = eval_record(args.a, args.b, args.c, args.z)
    _emit(render([record], args.format), args.out)
    return EXIT_OK


# --- sweep --------------------------------------------------------------


class SweepMode(str, Enum):
    GENERAL = "general"
    POLYNOMIAL = "polynomial"
    TAYLOR_ZONE = "taylor_zone"


@dataclass(frozen=True)
class SweepConfig:
    samples: int = 10_000
    re_band: tuple[float, float] = (0.0, 1.0)
    im_band: tuple[float, float] = (0.0, 1.0)
    z_box: float = 3.0
    seed: int = 0
    mode: SweepMode = SweepMode.GENERAL
    taylor_radius: float = 0.99
    max_degree: int = 10

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be positive")
        for lo, hi in (self.re_band, self.im_band):
            if not 0.0 <= lo <= hi:
                raise ValueError("bands need 0 <= low <= high")
        if self.mode is SweepMode.TAYLOR_ZONE and self.taylor_radius not in (0.99, 1.01):
            raise ValueError("taylor_zone radius must be 0.99 or 1.01")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class SweepReport:
    samples: int
    t_max: float
    t_av: float
    worst_case: HypParams | None
    worst_method: str
    histogram: list[tuple[int, int]]
    failures: int = 0
    methods: dict[str, int] = field(default_factory=dict)
    eval_seconds: float = 0.0

    def summary(self) -> dict:
        w = self.worst_case
        return {
            "samples": self.samples,
            "failures": self.failures,
            "t_av": self.t_av,
            "t_max": self.t_max,
            "worst_a": w.a if w else "",
            "worst_b": w.b if w else "",
            "worst_c": w.c if w else "",
            "worst_z": w.z if w else "",
            "worst_method": self.worst_method,
        }


def _signed_band(rng: np.random.Generator, band: tuple[float, float], size) -> np.ndarray:
    lo, hi = band
    return rng.choice((-1.0, 1.0), size=size) * rng.uniform(lo, hi, size=size)


def draw_samples(cfg: SweepConfig) -> list[HypParams]:
    """Parameter sets for a sweep; a pure function of the config.

    Two independent PCG64 streams spawned from the seed feed the parameters
    and the arguments, so changing the z protocol leaves parameters intact.
    """
    p_seq, z_seq = np.random.SeedSequence(cfg.seed).spawn(2)
    prng = np.random.Generator(np.random.PCG64(p_seq))
    zrng = np.random.Generator(np.random.PCG64(z_seq))
    n = cfg.samples
    re = _signed_band(prng, cfg.re_band, (n, 3))
    im = _signed_band(prng, cfg.im_band, (n, 3))
    params = re + 1j * im
    if cfg.mode is SweepMode.POLYNOMIAL:
        params[:, 0] = -prng.integers(0, cfg.max_degree + 1, size=n)
    if cfg.mode is SweepMode.TAYLOR_ZONE:
        sign = zrng.choice((-1.0, 1.0), size=n)
        zs = cfg.taylor_radius * np.exp(1j * sign * math.pi / 3.0)
    else:
        zs = np.empty(n, dtype=complex)
        for i in range(n):
            while True:
                z = complex(*zrng.uniform(-cfg.z_box, cfg.z_box, size=2))
                if abs(z) > CUT_EXCLUSION and abs(z - 1.0) > CUT_EXCLUSION:
                    break
            zs[i] = z
    return [HypParams(complex(a), complex(b), complex(c), complex(z)) for (a, b, c), z in zip(params, zs)]


def _decade(t: float) -> int:
    if t <= 0.0:
        return HIST_FLOOR
    return max(math.floor(math.log10(t)), HIST_FLOOR)


def run_sweep(cfg: SweepConfig) -> SweepReport:
    worst, worst_t, worst_method = None, -1.0, ""
    total = 0.0
    ok = 0
    hist: Counter[int] = Counter()
    methods: Counter[str] = Counter()
    failures = 0
    eval_time = 0.0
    for hp in draw_samples(cfg):
        try:
            t0 = time.perf_counter()
            res = hyp_2f1_eval(*hp.astuple())
            eval_time += time.perf_counter() - t0
            t = test_2f1(*hp.astuple(), res.value)
        except (GaussHypError, OverflowError, ZeroDivisionError):
            failures += 1
            continue
        if not math.isfinite(t):
            failures += 1
            continue
        ok += 1
        total += t
        hist[_decade(t)] += 1
        methods[res.method.value] += 1
        if t > worst_t:
            worst, worst_t, worst_method = hp, t, res.method.value
    histogram = sorted(hist.items())
    return SweepReport(
        samples=cfg.samples,
        t_max=max(worst_t, 0.0) if ok else math.nan,
        t_av=total / ok if ok else math.nan,
        worst_case=worst,
        worst_method=worst_method,
        histogram=histogram,
        failures=failures,
        methods=dict(sorted(methods.items())),
        eval_seconds=eval_time,
    )


def render_report(report: SweepReport, fmt: str) -> str:
    summary = report.summary()
    if fmt == "json":
        data = {k: _jsonable(v) for k, v in summary.items()}
        data["histogram"] = [{"decade": d, "count": c} for d, c in report.histogram]
        data["methods"] = report.methods
        return json.dumps(data) + "\n"
    rows = [{"section": "summary", "key": k, "value": _cell(v)} for k, v in summary.items()]
    rows += [{"section": "histogram", "key": f"1e{d}", "value": str(c)} for d, c in report.histogram]
    rows += [{"section": "method", "key": k, "value": str(c)} for k, c in report.methods.items()]
    return render(rows, fmt)


def cmd_sweep(args) -> int:
    cfg = SweepConfig(
        samples=args.samples,
        re_band=tuple(args.re_band),
        im_band=tuple(args.im_band),
        z_box=args.z_box,
        seed=args.seed,
        mode=SweepMode(args.mode),
        taylor_radius=args.radius,
        max_degree=args.max_degree,
    )
    report = run_sweep(cfg)
    _emit(render_report(report, args.format), args.out)
    rate = report.samples / report.eval_seconds if report.eval_seconds else math.inf
    print(f"{report.samples} evaluations, {report.eval_seconds:.2f} s in hyp_2f1 ({rate:.0f}/s)", file=sys.stderr)
    if args.assert_:
        breach = report.failures > 0
        if args.t_av_limit is not None and not report.t_av <= args.t_av_limit:
            breach = True
        if args.t_max_limit is not None and not report.t_max <= args.t_max_limit:
            breach = True
        if breach:
            print("sweep breached the requested accuracy limits", file=sys.stderr)
            return EXIT_BREACH
    return EXIT_OK


# --- verify -------------------------------------------------------------


def verify_record(a: complex, b: complex, c: complex, z: complex, oracle: str) -> dict:
    res = hyp_2f1_eval(a, b, c, z)
    z_used = cut_convention(z)
    ref = ode_oracle(a, b, c, z_used) if oracle == "ode" else series_oracle(a, b, c, z_used)
    diff = abs(res.value - ref) / abs(ref) if ref != 0 else abs(res.value)
    record = {
        "a": a,
        "b": b,
        "c": c,
        "z": z,
        "oracle": oracle,
        "value": res.value,
        "reference": ref,
        "rel_diff": diff,
        "method": res.method.value,
        "note": "",
    }
    if z_used != z:
        record["note"] = "real z >= 1 evaluated as z - 1e-307i (limit from below the cut)"
    return record


def cmd_verify(args) -> int:
    record = verify_record(args.a, args.b, args.c, args.z, args.oracle)
    _emit(render([record], args.format), args.out)
    if record["rel_diff"] > DIVERGENCE_WARNING:
        print(f"warning: oracle disagreement {record['rel_diff']:.3e} exceeds {DIVERGENCE_WARNING:g}", file=sys.stderr)
    return EXIT_OK


# --- ptg ----------------------------------------------------------------


def ptg_table(p: PtgParams, r_grid: list[float], pole: int | None = None, k: complex | None = None):
    """Header record and one row per radius for a pole or scattering state."""
    if pole is not None:
        spec, consts, samples = ptg_pole(p, pole, r_grid)
        k = spec.k
        header = {"state": "pole", "n": spec.n, "N": spec.big_n, "kind": spec.kind.value, "k": spec.k, "e": spec.e}
    else:
        consts, samples = ptg_scat(p, k, r_grid)
        header = {"state": "scattering", "k": complex(k), "e": complex(k) ** 2 / p.kin_fact}
    header.update(c0=consts.c0, c_plus=consts.c_plus, c_minus=consts.c_minus, r1=consts.r1)
    header["abs_c_plus"] = abs(consts.c_plus)
    header["abs_c_minus"] = abs(consts.c_minus)
    rows = []
    for r, w in zip(r_grid, samples):
        rows.append(
            {
                "r": r,
                "phi_re": w.phi.real,
                "phi_im": w.phi.imag,
                "dphi_re": w.dphi.real,
                "dphi_im": w.dphi.imag,
                "d2phi_re": w.d2phi.real,
                "d2phi_im": w.d2phi.imag,
                "v": v_ptg(p, r),
                "mu": effective_mass(p, r),
                "dmu": effective_mass_der(p, r),
                "residual": ptg_test_calc(p, k, r, w) if r > 0.0 else math.nan,
            }
        )
    return header, rows


def cmd_ptg(args) -> int:
    p = PtgParams(lam=args.lam, s=args.s, nu=args.nu, a_mass=args.a_mass, ell=args.ell, kin_fact=args.kin_fact)
    r_min, r_max, count = args.grid
    if count < 1 or r_min < 0.0 or r_max < r_min:
        raise ValueError("grid needs 0 <= r_min <= r_max and at least one point")
    r_grid = [float(r) for r in np.linspace(r_min, r_max, int(count))]
    header, rows = ptg_table(p, r_grid, pole=args.pole, k=args.scat)
    _emit(render(rows, args.format, header), args.out)
    return EXIT_OK


# --- argument parsing ---------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-0.7i" or "-2+1i" through as positionals instead of option flags
        self._negative_number_matcher = re.compile(r"^-(?:\d|\.\d|i$)[\d.eE+-]*i?$")

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gausshyp", description="Gauss hypergeometric function 2F1 and PTG wave functions")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("csv", "json", "table"), default="table")
        sp.add_argument("--out", help="write output to this file instead of stdout")

    def abcz(sp):
        for name in "abcz":
            sp.add_argument(name, type=_complex_arg, help=f"{name} as a complex literal, e.g. 1.5-2.25i")

    sp = sub.add_parser("eval", help="evaluate 2F1 at one point with its residual")
    abcz(sp)
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("sweep", help="randomized accuracy sweep")
    sp.add_argument("--mode", choices=[m.value for m in SweepMode], default="general")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--re-band", type=float, nargs=2, default=(0.0, 1.0), metavar=("LOW", "HIGH"))
    sp.add_argument("--im-band", type=float, nargs=2, default=(0.0, 1.0), metavar=("LOW", "HIGH"))
    sp.add_argument("--z-box", type=float, default=3.0)
    sp.add_argument("--radius", type=float, default=0.99, help="taylor_zone radius, 0.99 or 1.01")
    sp.add_argument("--max-degree", type=int, default=10)
    sp.add_argument("--assert", dest="assert_", action="store_true", help="exit 3 if a limit is breached")
    sp.add_argument("--t-av-limit", type=float)
    sp.add_argument("--t-max-limit", type=float)
    common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="compare against an independent oracle")
    abcz(sp)
    sp.add_argument("--oracle", choices=("ode", "series"), default="ode")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("ptg", help="PTG wave function on a uniform radial grid")
    sp.add_argument("--lam", type=float, required=True)
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--a-mass", type=float, default=0.0)
    sp.add_argument("--ell", type=int, default=0)
    sp.add_argument("--kin-fact", type=float, default=1.0)
    sp.add_argument("--grid", type=float, nargs=3, required=True, metavar=("R_MIN", "R_MAX", "N"))
    state = sp.add_mutually_exclusive_group(required=True)
    state.add_argument("--pole", type=int)
    state.add_argument("--scat", type=_complex_arg)
    common(sp)
    sp.set_defaults(func=cmd_ptg, format="csv")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GaussHypError, OverflowError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
