"""Command line: ``hyperbolism {transform,simulate,analyze,compare}``.

Each command reads an optional JSON config file whose keys are the fields
of the command's config dataclass; command-line flags override the file.
Everything is written below ``--out``.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.integrate import trapezoid

from . import analytic, geometry, pipeline, timedomain
from .analytic import LineSpec, Shape
from .errors import HyperbolismError, NoHalfCrossing
from .export import write_csv, write_json, write_svg
from .geometry import Kind, ProtocolOptions, TransitionState
from .spectrum import default_regions, measure_snr


class ConfigError(ValueError):
    pass


# -- configs ----------------------------------------------------------------


@dataclass
class TransformConfig:
    phi_deg: float = 0.0
    r: float = 0.5
    k: float = 0.4
    mx: float | None = None
    my: float | None = None
    center: float = 0.0
    kind: str = "A"
    powers: list[float] = field(default_factory=lambda: [1.0])
    p_sweep: list[float] | None = None  # [start, stop, step]
    n_theta: int = geometry.DEFAULT_N_THETA
    gyro_sign: int = 1
    u_max_fwhm: float | None = geometry.DEFAULT_U_MAX_FWHM

    def validate(self):
        Kind(self.kind)
        if (self.mx is None) != (self.my is None):
            raise ConfigError("give both mx and my or neither")
        if self.k <= 0 or self.r <= 0:
            raise ConfigError("k and r must be positive")
        if self.n_theta < 8:
            raise ConfigError("n_theta must be at least 8")
        if self.p_sweep is not None and (len(self.p_sweep) != 3 or self.p_sweep[2] <= 0):
            raise ConfigError("p_sweep is [start, stop, step] with step > 0")

    def state(self) -> TransitionState:
        if self.mx is not None:
            return TransitionState(self.mx, self.my, self.k, self.center, self.gyro_sign)
        return TransitionState.from_polar(self.r, math.radians(self.phi_deg), self.k, self.center, self.gyro_sign)

    def power_list(self) -> list[float]:
        if self.p_sweep is None:
            return [float(p) for p in self.powers]
        start, stop, step = self.p_sweep
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]


@dataclass
class SimulateConfig:
    center: float = 4000.0
    k: float = math.pi
    r: float = 1.0
    phi: float = 0.0
    dt: float = 1 / 8192
    n: int = 65536
    fwhm: float = 1.0
    roots: list[int] = field(default_factory=lambda: [3])
    t2_comp_factors: list[float] = field(default_factory=lambda: [1.0])
    zero_fill: int = 2**17
    target_snr: float | None = None
    noise_power: float | None = None
    seed: int = 0
    window_hz: float = 5.0

    def validate(self):
        if self.k <= 0 or self.r <= 0 or self.dt <= 0 or self.fwhm <= 0:
            raise ConfigError("k, r, dt and fwhm must be positive")
        if self.n < 2 or self.zero_fill < self.n:
            raise ConfigError("need n >= 2 and zero_fill >= n")
        if any(r < 1 for r in self.roots):
            raise ConfigError("roots are 1-based")
        if any(f <= 0 for f in self.t2_comp_factors):
            raise ConfigError("t2_comp_factors must be positive")
        if self.target_snr is not None and self.noise_power is not None:
            raise ConfigError("give target_snr or noise_power, not both")


@dataclass
class AnalyzeConfig:
    fwhm: float = 1.0
    deltas: list[float] | None = None
    k: float = 1.0
    r: float = 1.0
    grid_step: float = 1e-4
    doublet_separation: float = 0.3
    narrow_separation: float = 0.19
    triplet_separation_fwhm: float = 3.0
    span: float = 1.0

    def validate(self):
        if self.fwhm <= 0 or self.k <= 0 or self.r <= 0 or self.grid_step <= 0:
            raise ConfigError("fwhm, k, r and grid_step must be positive")

    def delta_list(self) -> list[float]:
        if self.deltas is not None:
            return [float(d) for d in self.deltas]
        grid = [round(0.05 * i, 10) for i in range(1, 61)]
        return sorted(set(grid) | {math.sqrt(2) * self.fwhm})


@dataclass
class CompareConfig:
    center: float = 4000.0
    k: float = math.pi
    r: float = 1.0
    dt: float = 1 / 8192
    n: int = 65536
    fwhm: float = 1.0
    zero_fill: int = 2**17
    target_snr: float = 10.0
    seed: int = 0
    roots: list[int] = field(default_factory=lambda: [2, 1])
    gaussian_taus: list[float] | None = None
    window_hz: float = 5.0

    def validate(self):
        if self.k <= 0 or self.r <= 0 or self.dt <= 0 or self.fwhm <= 0 or self.target_snr <= 0:
            raise ConfigError("k, r, dt, fwhm and target_snr must be positive")
        if self.n < 2 or self.zero_fill < self.n:
            raise ConfigError("need n >= 2 and zero_fill >= n")

    def tau_list(self) -> list[float]:
        if self.gaussian_taus is not None:
            return [float(t) for t in self.gaussian_taus]
        return [
            timedomain.gaussian_tau_for_fwhm(self.k / math.pi),
            timedomain.gaussian_tau_matching_parabola(self.fwhm),
        ]


def build_config(cls, file_values: dict | None, flag_values: dict):
    names = {f.name for f in dataclasses.fields(cls)}
    merged = {}
    for source in (file_values or {}, flag_values):
        unknown = set(source) - names
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        merged.update({k: v for k, v in source.items() if v is not None})
    try:
        cfg = cls(**merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    cfg.validate()
    return cfg


# -- commands ---------------------------------------------------------------


def _tag(p: float) -> str:
    return format(p, "g")


def cmd_transform(cfg: TransformConfig, out: Path, svg: bool = True) -> dict:
    state = cfg.state()
    powers = cfg.power_list()
    options = ProtocolOptions(u_max_fwhm=cfg.u_max_fwhm)
    summary = {"r": state.r, "phi_deg": math.degrees(state.phi), "k": state.k, "kind": cfg.kind, "curves": []}
    physical, transformed = [], []
    stages = None
    for p in powers:
        curves = geometry.run_protocol(state, p, cfg.kind, cfg.n_theta, options)
        if stages is None:
            stages = curves[:3]
            for c in stages:
                write_csv(out / f"{c.stage.label.replace('-', '_')}.csv", {"u": c.u, "v": c.v})
        tr, ph = curves[3], curves[4]
        write_csv(out / f"transformed_p{_tag(p)}.csv", {"u": tr.u, "v": tr.v})
        write_csv(out / f"curve_p{_tag(p)}.csv", {"u": ph.u, "v": ph.v})
        transformed.append((f"p={_tag(p)}", tr.u, tr.v))
        physical.append((f"p={_tag(p)}", ph.u, ph.v))
        summary["curves"].append({
            "p": p, "file": f"curve_p{_tag(p)}.csv", "points": len(ph),
            "dropped": ph.dropped, "clipped": ph.clipped, "max_v": float(ph.v.max()),
        })
        if p == -1:
            eta_x, eta_y = state.k / (2 * math.pi), state.r / state.k
            theta = geometry.theta_grid(cfg.n_theta)
            u, v = geometry.piriform_point(theta, eta_x, eta_y)
            write_csv(out / "piriform.csv", {"u": u + state.center, "v": v})
            summary["piriform"] = "piriform.csv"
        if p == 0 and abs(math.cos(state.phi)) < 1e-12:
            theta = geometry.theta_grid(cfg.n_theta)
            u, v = geometry.dispersion_semi_ellipse_point(theta, state.phi, state.r, state.k)
            write_csv(out / "semi_ellipse.csv", {"u": u + state.center, "v": v})
            summary["semi_ellipse"] = "semi_ellipse.csv"
    if svg:
        for c in stages:
            write_svg(out / f"{c.stage.label.replace('-', '_')}.svg", [(c.stage.label, c.u, c.v)],
                      title=c.stage.label, xlabel="x", ylabel="y")
        write_svg(out / "transformed.svg", transformed, title="transformed", xlabel="u", ylabel="v")
        write_svg(out / "curves.svg", physical, title="physical curves", xlabel="frequency / Hz", ylabel="amplitude")
    write_json(out / "summary.json", summary)
    return summary


def _write_case(out: Path, label: str, proc: pipeline.Processed, center: float, window_hz: float):
    sig = proc.signal
    write_csv(out / f"fid_{label}.csv", {"t": sig.times, "re": sig.samples.real, "im": sig.samples.imag})
    w = proc.spectrum.window(center - window_hz, center + window_hz)
    write_csv(out / f"spectrum_{label}.csv", {"nu": w.freq, "re": w.real, "im": w.bins.imag})
    return w


def _fwhm_or_none(spec, center: float, span: float):
    # noise can keep the line from dropping to half height inside the span
    try:
        return pipeline.spectral_fwhm(spec, center, span)
    except NoHalfCrossing:
        return None


def cmd_simulate(cfg: SimulateConfig, out: Path, svg: bool = True) -> dict:
    line = LineSpec(Shape.LORENTZIAN, cfg.r, cfg.k, cfg.phi, cfg.center)
    clean = timedomain.synthesize_fid([line], cfg.dt, cfg.n)
    noisy = None
    if cfg.target_snr is not None or cfg.noise_power is not None:
        spec = timedomain.NoiseSpec(cfg.seed, cfg.target_snr, cfg.noise_power, zero_fill=cfg.zero_fill)
        noisy = timedomain.add_white_noise(clean, spec)
    cases, plots = [], []
    for root in cfg.roots:
        for factor in cfg.t2_comp_factors:
            k_comp = cfg.k / factor
            label = f"root{root}_t2x{factor:.6g}"
            proc_clean = pipeline.parabolic(clean, k_comp, cfg.fwhm, root, cfg.zero_fill)
            proc = proc_clean if noisy is None else pipeline.parabolic(noisy, k_comp, cfg.fwhm, root, cfg.zero_fill)
            w = _write_case(out, label, proc, cfg.center, cfg.window_hz)
            fit = pipeline.parabola_residual(proc.spectrum, cfg.center, cfg.fwhm)
            case = {
                "label": label, "root": root, "t2_comp_factor": factor, "k_comp": k_comp,
                "truncated_at": proc.signal.truncated_at,
                "fwhm": _fwhm_or_none(proc.spectrum, cfg.center, 3 * cfg.fwhm),
                "peak_position": fit.peak_position,
                "parabola_rms": fit.rms, "parabola_beyond": fit.beyond,
                "tail_amplitude": pipeline.tail_amplitude(
                    proc.spectrum, cfg.center, cfg.fwhm / math.sqrt(2) + 5 * proc.spectrum.df),
                "snr": None,
            }
            if noisy is not None:
                peak, quiet = default_regions(proc_clean.spectrum)
                case["snr"] = measure_snr(proc.spectrum, peak, quiet, signal=proc_clean.spectrum)
            cases.append(case)
            plots.append((label, w.freq, w.real / np.max(np.abs(w.real))))
    summary = {"config": dataclasses.asdict(cfg), "cases": cases}
    write_json(out / "summary.json", summary)
    if svg:
        write_svg(out / "spectra.svg", plots, title="normalized spectra", xlabel="frequency / Hz", ylabel="real part")
    return summary


def cmd_analyze(cfg: AnalyzeConfig, out: Path, svg: bool = True) -> dict:
    r, k = cfg.r, cfg.k
    grid = np.arange(-cfg.span, cfg.span + cfg.grid_step / 2, cfg.grid_step)
    shapes = {
        "u": grid,
        "lorentzian": analytic.absorption(grid, r, k),
        "gaussian": analytic.gaussian(grid, r, k),
        "parabola": analytic.truncated_parabola(grid, r, k),
    }
    write_csv(out / "shapes.csv", shapes)

    by_fwhm = {s: LineSpec.from_fwhm(s, cfg.fwhm) for s in Shape}
    deltas = cfg.delta_list()
    chi = {
        "delta": deltas,
        "chi_L": [analytic.core_fraction(by_fwhm[Shape.LORENTZIAN], d) for d in deltas],
        "chi_G": [analytic.core_fraction(by_fwhm[Shape.GAUSSIAN], d) for d in deltas],
        "chi_P": [analytic.core_fraction(by_fwhm[Shape.TRUNCATED_PARABOLA], d) for d in deltas],
    }
    write_csv(out / "core_fraction.csv", chi)

    half = cfg.doublet_separation / 2
    report = {"true_separation": cfg.doublet_separation}
    doublets = {}
    for shape in (Shape.LORENTZIAN, Shape.TRUNCATED_PARABOLA):
        line = analytic.sum_lines([LineSpec(shape, r, k, 0, -half), LineSpec(shape, r, k, 0, half)], grid)
        peaks = analytic.maxima(line)
        doublets[shape.value] = line
        report[shape.value] = {
            "maxima": [p.position for p in peaks],
            "measured_separation": peaks[-1].position - peaks[0].position if len(peaks) > 1 else 0.0,
        }
    narrow = analytic.sum_lines([
        LineSpec(Shape.TRUNCATED_PARABOLA, r, k, 0, -cfg.narrow_separation / 2),
        LineSpec(Shape.TRUNCATED_PARABOLA, r, k, 0, cfg.narrow_separation / 2),
    ], grid)
    report["narrow_parabola"] = {
        "separation": cfg.narrow_separation,
        "maxima": [p.position for p in analytic.maxima(narrow)],
    }
    opposite = analytic.sum_lines([
        LineSpec(Shape.TRUNCATED_PARABOLA, r, k, 0, -half),
        LineSpec(Shape.TRUNCATED_PARABOLA, r, k, math.pi, half),
    ], grid)
    report["opposite_phase_max_curvature"] = overlap_curvature(opposite, -half, half, r, k)
    write_csv(out / "doublets.csv", {
        "u": grid,
        "lorentzian": doublets["lorentzian"].values,
        "parabola": doublets["truncated_parabola"].values,
        "parabola_narrow": narrow.values,
        "parabola_opposite": opposite.values,
    })

    sep = cfg.triplet_separation_fwhm * k / math.pi
    tgrid = np.arange(-2 * sep - cfg.span, 2 * sep + cfg.span + cfg.grid_step / 2, cfg.grid_step)
    triplet = {"u": tgrid}
    pair = {}
    for shape in Shape:
        parts = [analytic.evaluate(LineSpec(shape, r, k, 0, c), tgrid) for c in (-sep, 0.0, sep)]
        triplet[shape.value] = sum(parts)
        pair[shape.value] = max(
            float(trapezoid(parts[i] * parts[j], tgrid)) for i in range(3) for j in range(i + 1, 3))
    write_csv(out / "triplet.csv", triplet)
    report["triplet"] = {"separation": sep, "max_pairwise_overlap_integral": pair}
    write_json(out / "overlap.json", report)
    if svg:
        write_svg(out / "shapes.svg", [(n, grid, shapes[n]) for n in ("lorentzian", "gaussian", "parabola")],
                  title="line shapes", xlabel="u / Hz", ylabel="v")
        write_svg(out / "core_fraction.svg", [(n, chi["delta"], chi[n]) for n in ("chi_L", "chi_G", "chi_P")],
                  title="core fraction", xlabel="delta", ylabel="chi")
        write_svg(out / "doublets.svg", [("lorentzian", grid, doublets["lorentzian"].values),
                                         ("parabola", grid, doublets["truncated_parabola"].values),
                                         ("opposite", grid, opposite.values)],
                  title="overlapping doublets", xlabel="u / Hz", ylabel="v")
    return report


def overlap_curvature(line: analytic.SampledLine, c1: float, c2: float, r: float, k: float) -> float:
    """Largest |second difference| strictly inside the overlap of two
    parabolas centred at c1 < c2, relative to the single-line peak."""
    w = analytic.parabola_half_support(k)
    lo, hi = c2 - w, c1 + w
    h = line.step
    inside = np.flatnonzero((line.grid > lo + h) & (line.grid < hi - h))
    if inside.size == 0:
        return 0.0
    y = line.values
    d2 = y[inside - 1] - 2 * y[inside] + y[inside + 1]
    return float(np.max(np.abs(d2)) / (2 * r / k))


def cmd_compare(cfg: CompareConfig, out: Path, svg: bool = True) -> dict:
    line = LineSpec(Shape.LORENTZIAN, cfg.r, cfg.k, 0.0, cfg.center)
    clean = timedomain.synthesize_fid([line], cfg.dt, cfg.n)
    noise = timedomain.NoiseSpec(cfg.seed, target_snr=cfg.target_snr, zero_fill=cfg.zero_fill)
    noisy = timedomain.add_white_noise(clean, noise)
    runs = [("none", lambda s: pipeline.plain(s, cfg.zero_fill))]
    for tau in cfg.tau_list():
        runs.append((f"gaussian_tau{tau:.4g}", lambda s, tau=tau: pipeline.gaussian(s, cfg.k, tau, cfg.zero_fill)))
    for root in cfg.roots:
        runs.append((f"parabolic_root{root}",
                     lambda s, root=root: pipeline.parabolic(s, cfg.k, cfg.fwhm, root, cfg.zero_fill)))
    rows, plots = [], []
    for name, run in runs:
        pc, pn = run(clean), run(noisy)
        peak, quiet = default_regions(pc.spectrum)
        snr = measure_snr(pn.spectrum, peak, quiet, signal=pc.spectrum)
        _write_case(out, f"{name}_clean", pc, cfg.center, cfg.window_hz)
        w = _write_case(out, f"{name}_noisy", pn, cfg.center, cfg.window_hz)
        fit = pipeline.parabola_residual(pc.spectrum, cfg.center, cfg.fwhm)
        rows.append({
            "run": name, "snr": snr,
            "fwhm_clean": pipeline.spectral_fwhm(pc.spectrum, cfg.center, 3 * cfg.fwhm),
            "parabola_rms_clean": fit.rms,
        })
        plots.append((name, w.freq, w.real / np.max(np.abs(w.real))))
    write_csv(out / "snr.csv", {key: [row[key] for row in rows] for key in rows[0]})
    summary = {"config": dataclasses.asdict(cfg), "runs": rows}
    write_json(out / "summary.json", summary)
    if svg:
        write_svg(out / "spectra.svg", plots, title="noisy spectra", xlabel="frequency / Hz", ylabel="real part")
    return summary


# -- argument parsing -------------------------------------------------------


def _floats(text: str) -> list[float]:
    return [float(eval_number(x)) for x in text.split(",") if x.strip()]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def eval_number(text: str) -> float:
    """Parse a float, also accepting simple fractions such as ``1/8192``."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    p.add_argument("--config", type=Path, help="JSON file with config fields")
    p.add_argument("--seed", type=int)
    p.add_argument("--svg", action=argparse.BooleanOptionalAction, default=True, help="write SVG plots")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperbolism", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="circle/ellipse to line-shape curves")
    _common(p)
    p.add_argument("--phi-deg", type=float)
    p.add_argument("--r", type=float)
    p.add_argument("--k", type=float)
    p.add_argument("--mx", type=float)
    p.add_argument("--my", type=float)
    p.add_argument("--center", type=float)
    p.add_argument("--kind", choices=[k.value for k in Kind])
    p.add_argument("--p", dest="powers", type=_floats, help="comma separated transform powers")
    p.add_argument("--p-sweep", type=eval_number, nargs=3, metavar=("START", "STOP", "STEP"))
    p.add_argument("--n-theta", type=int)
    p.add_argument("--gyro-sign", type=int, choices=[1, -1])
    p.add_argument("--u-max-fwhm", type=float)

    p = sub.add_parser("simulate", help="FID synthesis and parabolic apodization sweeps")
    _common(p)
    for name in ("center", "k", "r", "phi", "fwhm", "target_snr", "noise_power", "window_hz"):
        p.add_argument("--" + name.replace("_", "-"), type=eval_number)
    p.add_argument("--dt", type=eval_number)
    p.add_argument("--n", type=int)
    p.add_argument("--zero-fill", type=int)
    p.add_argument("--roots", type=_ints)
    p.add_argument("--t2-comp-factors", type=_floats)

    p = sub.add_parser("analyze", help="line-shape comparison, core fractions, overlap study")
    _common(p)
    for name in ("fwhm", "k", "r", "grid_step", "doublet_separation", "narrow_separation",
                 "triplet_separation_fwhm", "span"):
        p.add_argument("--" + name.replace("_", "-"), type=eval_number)
    p.add_argument("--deltas", type=_floats)

    p = sub.add_parser("compare", help="noisy Lorentzian, Gaussian and parabolic apodizations")
    _common(p)
    for name in ("center", "k", "r", "fwhm", "target_snr", "window_hz"):
        p.add_argument("--" + name.replace("_", "-"), type=eval_number)
    p.add_argument("--dt", type=eval_number)
    p.add_argument("--n", type=int)
    p.add_argument("--zero-fill", type=int)
    p.add_argument("--roots", type=_ints)
    p.add_argument("--gaussian-taus", type=_floats)
    return parser


COMMANDS = {
    "transform": (TransformConfig, cmd_transform),
    "simulate": (SimulateConfig, cmd_simulate),
    "analyze": (AnalyzeConfig, cmd_analyze),
    "compare": (CompareConfig, cmd_compare),
}
_COMMON = {"command", "out", "config", "svg", "seed"}


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    cls, run = COMMANDS[args.command]
    flags = {k: v for k, v in vars(args).items() if k not in _COMMON}
    if args.seed is not None:
        if "seed" not in {f.name for f in dataclasses.fields(cls)}:
            print(f"warning: --seed has no effect on {args.command}", file=sys.stderr)
        else:
            flags["seed"] = args.seed
    try:
        file_values = json.loads(args.config.read_text(encoding="utf-8")) if args.config else None
        if file_values is not None and not isinstance(file_values, dict):
            raise ConfigError("config file must hold a JSON object")
        cfg = build_config(cls, file_values, flags)
        args.out.mkdir(parents=True, exist_ok=True)
        run(cfg, args.out, svg=args.svg)
    except (ConfigError, HyperbolismError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
