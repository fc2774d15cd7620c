"""Command-line interface: transforms, evolutions, smoothing and demos from config files.

Subcommands: ``wigner``, ``evolve``, ``husimi``, ``star``, ``expect``,
``demo-negativity``.  Runs are configured by a flat ``key = value`` text file
(``#`` starts a comment); unknown keys are rejected.  All numeric output uses
17-significant-digit scientific notation, so identical configs produce
byte-identical files.  Exit codes: 0 ok, 2 config/IO error, 3 numeric abort.

File formats
------------
Wigner/Husimi grid (value rows are position-major)::

    # wigner-grid v1
    # hbar <value>
    # q <min> <step> <count>
    # p <min> <step> <count>
    <count rows of count whitespace-separated values>

Wavefunction: same header scheme with one ``re im`` pair per row.
Potential table: ``# potential-table v1`` header plus one value per row.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np

from .dynamics import (
    EVOLVE_METHODS,
    Hamiltonian,
    NumericAbortError,
    Potential,
    evolve,
)
from .grids import (
    AxisGrid,
    Config,
    PhaseGrid,
    WaveFunction,
    WignerFunction,
    ho_eigenstate,
)
from .husimi import GaussianPacketSpec, husimi_smooth, minimum_uncertainty_packet, positivity_report
from .negativity import impossibility_demo, negativity_volume, two_interval_state
from .star import format_poly, parse_poly, star_product
from .transforms import (
    expectation,
    marginal_momentum,
    marginal_position,
    wigner_from_wavefunction,
)

__all__ = [
    "main",
    "ConfigError",
    "read_run_config",
    "write_wigner_grid",
    "read_wigner_grid",
    "write_wavefunction",
    "read_wavefunction",
    "write_potential_table",
    "read_potential_table",
]


class ConfigError(ValueError):
    """Configuration file problem; maps to exit code 2."""


def _fmt(x: float) -> str:
    return f"{x:.16e}"


# ---------------------------------------------------------------------------
# flat key = value config files
# ---------------------------------------------------------------------------

def read_run_config(path: Path) -> "ConfigView":
    entries: Dict[str, Tuple[str, int]] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{ln}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ConfigError(f"{path}:{ln}: empty key or value")
        if key in entries:
            raise ConfigError(f"{path}:{ln}: duplicate key {key!r}")
        entries[key] = (value, ln)
    return ConfigView(path=str(path), entries=entries)


class ConfigView:
    """Typed access to config entries with consumption tracking."""

    def __init__(self, path: str, entries: Dict[str, Tuple[str, int]]):
        self.path = path
        self.entries = entries
        self._used = set()

    def has(self, key: str) -> bool:
        return key in self.entries

    def _raw(self, key: str, default=None):
        if key in self.entries:
            self._used.add(key)
            return self.entries[key][0]
        return default

    def _fail(self, key: str, message: str):
        ln = self.entries[key][1]
        raise ConfigError(f"{self.path}:{ln}: field {key!r}: {message}")

    def get_str(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self._raw(key, default)

    def get_float(self, key: str, default: Optional[float] = None) -> Optional[float]:
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return float(raw)
        except ValueError:
            self._fail(key, f"expected a number, got {raw!r}")

    def get_int(self, key: str, default: Optional[int] = None) -> Optional[int]:
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            self._fail(key, f"expected an integer, got {raw!r}")

    def require(self, key: str, kind: str = "float"):
        if key not in self.entries:
            raise ConfigError(f"{self.path}: missing required key {key!r}")
        return {"float": self.get_float, "int": self.get_int, "str": self.get_str}[kind](key)

    def reject_unknown(self):
        unknown = sorted(set(self.entries) - self._used)
        if unknown:
            key = unknown[0]
            ln = self.entries[key][1]
            raise ConfigError(f"{self.path}:{ln}: unknown key {key!r}")


# ---------------------------------------------------------------------------
# grid file formats
# ---------------------------------------------------------------------------

def _axis_header(tag: str, axis: AxisGrid) -> str:
    return f"# {tag} {_fmt(axis.min)} {_fmt(axis.step)} {axis.count}"


def _parse_axis(line: str, tag: str, path) -> AxisGrid:
    parts = line.split()
    if len(parts) != 5 or parts[0] != "#" or parts[1] != tag:
        raise ConfigError(f"{path}: malformed '{tag}' header line: {line!r}")
    return AxisGrid(min=float(parts[2]), step=float(parts[3]), count=int(parts[4]))


def write_wigner_grid(path: Path, w: WignerFunction, kind: str = "wigner-grid") -> None:
    lines = [
        f"# {kind} v1",
        f"# hbar {_fmt(w.hbar)}",
        _axis_header("q", w.grid.q_axis),
        _axis_header("p", w.grid.p_axis),
    ]
    for row in w.values:
        lines.append(" ".join(_fmt(x) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def _write_grid_values(path: Path, grid: PhaseGrid, values: np.ndarray, hbar: float, kind: str) -> None:
    lines = [
        f"# {kind} v1",
        f"# hbar {_fmt(hbar)}",
        _axis_header("q", grid.q_axis),
        _axis_header("p", grid.p_axis),
    ]
    for row in values:
        lines.append(" ".join(_fmt(x) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_wigner_grid(path: Path, kind: str = "wigner-grid") -> WignerFunction:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 5 or lines[0] != f"# {kind} v1":
        raise ConfigError(f"{path}: not a '{kind} v1' file")
    hbar = float(lines[1].split()[2])
    q_axis = _parse_axis(lines[2], "q", path)
    p_axis = _parse_axis(lines[3], "p", path)
    values = np.array([[float(x) for x in line.split()] for line in lines[4 : 4 + q_axis.count]])
    return WignerFunction(grid=PhaseGrid(q_axis=q_axis, p_axis=p_axis), values=values, hbar=hbar)


def write_wavefunction(path: Path, psi: WaveFunction, hbar: float) -> None:
    lines = [
        "# wavefunction v1",
        f"# hbar {_fmt(hbar)}",
        _axis_header("q", psi.grid),
    ]
    for a in psi.amplitudes:
        lines.append(f"{_fmt(a.real)} {_fmt(a.imag)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_wavefunction(path: Path) -> Tuple[WaveFunction, float]:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 4 or lines[0] != "# wavefunction v1":
        raise ConfigError(f"{path}: not a 'wavefunction v1' file")
    hbar = float(lines[1].split()[2])
    axis = _parse_axis(lines[2], "q", path)
    rows = lines[3 : 3 + axis.count]
    if len(rows) != axis.count:
        raise ConfigError(f"{path}: expected {axis.count} amplitude rows, got {len(rows)}")
    amp = np.array([complex(float(r.split()[0]), float(r.split()[1])) for r in rows])
    return WaveFunction(grid=axis, amplitudes=amp), hbar


def write_potential_table(path: Path, grid: AxisGrid, values: np.ndarray) -> None:
    lines = ["# potential-table v1", _axis_header("q", grid)]
    lines += [_fmt(v) for v in values]
    Path(path).write_text("\n".join(lines) + "\n")


def read_potential_table(path: Path) -> Potential:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 3 or lines[0] != "# potential-table v1":
        raise ConfigError(f"{path}: not a 'potential-table v1' file")
    axis = _parse_axis(lines[1], "q", path)
    values = np.array([float(x) for x in lines[2 : 2 + axis.count]])
    return Potential.tabulated(axis, values)


def _write_marginal(path: Path, axis_name: str, axis: AxisGrid, values: np.ndarray) -> None:
    lines = ["# marginal v1", _axis_header(axis_name, axis)]
    lines += [_fmt(v) for v in values]
    Path(path).write_text("\n".join(lines) + "\n")


def _write_summary(path: Path, items) -> None:
    lines = [f"{k} = {v}" for k, v in items]
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# config -> objects
# ---------------------------------------------------------------------------

def _build_config(view: ConfigView) -> Config:
    return Config(hbar=view.get_float("hbar", 1.0))


def _build_grid(view: ConfigView) -> AxisGrid:
    try:
        return AxisGrid(
            min=view.require("q_min"),
            step=view.require("q_step"),
            count=view.require("q_count", "int"),
        )
    except ValueError as exc:
        raise ConfigError(f"{view.path}: invalid grid: {exc}") from None


def _build_state(view: ConfigView, grid: AxisGrid, config: Config) -> WaveFunction:
    spec = view.get_str("state")
    if spec is None:
        raise ConfigError(f"{view.path}: missing required key 'state'")
    if spec.startswith("ho:"):
        try:
            n = int(spec[3:])
        except ValueError:
            raise ConfigError(f"{view.path}: bad fixture {spec!r}") from None
        return ho_eigenstate(n, grid, config)
    if spec == "gaussian":
        packet = GaussianPacketSpec(
            center_q=view.get_float("center_q", 0.0),
            center_p=view.get_float("center_p", 0.0),
            width_b=view.get_float("width_b", math.sqrt(config.hbar / 2)),
        )
        return minimum_uncertainty_packet(packet, grid, config)
    if spec == "two_interval":
        theta = view.get_float("mix_angle", math.pi / 4)
        phi = view.get_float("rel_phase", 0.0)
        return two_interval_state(
            a=math.cos(theta),
            b=complex(math.cos(phi), math.sin(phi)) * math.sin(theta),
            gap=view.require("gap"),
            width=view.require("width"),
            grid=grid,
            config=config,
        )
    if spec.startswith("file:"):
        psi, _ = read_wavefunction(Path(spec[5:]))
        if psi.grid != grid:
            raise ConfigError(f"{view.path}: state file grid does not match the configured grid")
        return psi
    raise ConfigError(f"{view.path}: unknown state spec {spec!r}")


def _build_hamiltonian(view: ConfigView, grid: AxisGrid) -> Hamiltonian:
    spec = view.get_str("potential")
    if spec is None:
        raise ConfigError(f"{view.path}: missing required key 'potential'")
    if spec.startswith("poly:"):
        try:
            coeffs = [float(c) for c in spec[5:].split(",")]
        except ValueError:
            raise ConfigError(f"{view.path}: bad polynomial coefficients in {spec!r}") from None
        potential = Potential.polynomial(coeffs)
    elif spec.startswith("table:"):
        potential = read_potential_table(Path(spec[6:]))
        if potential.grid != grid:
            raise ConfigError(f"{view.path}: potential table grid does not match the configured grid")
    else:
        raise ConfigError(f"{view.path}: unknown potential spec {spec!r}")
    try:
        return Hamiltonian(mass=view.get_float("mass", 1.0), potential=potential)
    except ValueError as exc:
        raise ConfigError(f"{view.path}: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_wigner(args) -> int:
    view = read_run_config(args.config)
    config = _build_config(view)
    grid = _build_grid(view)
    psi = _build_state(view, grid, config)
    view.reject_unknown()

    w = wigner_from_wavefunction(psi, config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_wigner_grid(out / "wigner.txt", w)
    _write_marginal(out / "marginal_position.txt", "q", w.grid.q_axis, marginal_position(w))
    _write_marginal(out / "marginal_momentum.txt", "p", w.grid.p_axis, marginal_momentum(w))
    rep = positivity_report(w.values)
    q_at = w.grid.q_axis.points[rep.min_location[0]]
    p_at = w.grid.p_axis.points[rep.min_location[1]]
    mass = w.values.sum() * w.cell
    _write_summary(
        out / "summary.txt",
        [
            ("min_value", _fmt(rep.min_value)),
            ("min_q", _fmt(q_at)),
            ("min_p", _fmt(p_at)),
            ("negative_fraction", _fmt(rep.negative_fraction)),
            ("negativity_volume", _fmt(negativity_volume(w))),
            ("total_integral", _fmt(mass)),
            ("all_positive", str(rep.min_value >= -1e-12).lower()),
        ],
    )
    return 0


def _cmd_evolve(args) -> int:
    view = read_run_config(args.config)
    config = _build_config(view)
    grid = _build_grid(view)
    psi = _build_state(view, grid, config)
    h = _build_hamiltonian(view, grid)
    dt = view.require("dt")
    steps = view.require("steps", "int")
    method = view.get_str("method", "split_exact")
    stride = view.get_int("stride", max(1, steps // 10))
    lambda_max = view.get_int("lambda_max", None)
    compare = view.get_str("compare_methods", None)
    view.reject_unknown()

    if dt <= 0:
        raise ConfigError(f"{view.path}: dt must be positive, got {dt}")
    if method not in EVOLVE_METHODS:
        raise ConfigError(f"{view.path}: unknown method {method!r}")

    w0 = wigner_from_wavefunction(psi, config)
    traj = evolve(w0, h, dt, steps, method, config, stride=stride, lambda_max=lambda_max)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for j, frame in enumerate(traj.frames):
        write_wigner_grid(out / f"frame_{j:06d}.txt", frame)
    hs = h.phase_symbol(w0.grid, config)
    cell = w0.cell
    norms = [f.values.sum() * cell for f in traj.frames]
    energies = [expectation(f, hs) for f in traj.frames]
    summary = [
        ("method", method),
        ("frames", str(len(traj.frames))),
        ("final_time", _fmt(float(traj.times[-1]))),
        ("norm_drift", _fmt(max(abs(n - norms[0]) for n in norms))),
        ("energy_drift", _fmt(max(abs(e - energies[0]) for e in energies))),
        ("linf_vs_initial", _fmt(float(np.abs(traj.final.values - w0.values).max()))),
    ]
    if compare:
        others = [m.strip() for m in compare.split(",") if m.strip()]
        table = ["# method-compare v1", "# columns: time linf_vs_" + method]
        for other in others:
            if other not in EVOLVE_METHODS:
                raise ConfigError(f"{view.path}: unknown comparison method {other!r}")
            traj2 = evolve(w0, h, dt, steps, other, config, stride=stride, lambda_max=lambda_max)
            table.append(f"# {other}")
            for t, f1, f2 in zip(traj.times, traj.frames, traj2.frames):
                diff = float(np.abs(f1.values - f2.values).max())
                table.append(f"{_fmt(float(t))} {_fmt(diff)}")
        (out / "method_compare.txt").write_text("\n".join(table) + "\n")
    _write_summary(out / "summary.txt", summary)
    return 0


def _cmd_husimi(args) -> int:
    view = read_run_config(args.config)
    config = _build_config(view)
    grid = _build_grid(view)
    psi = _build_state(view, grid, config)
    smooth_b = view.get_float("smooth_width_b", math.sqrt(config.hbar / 2))
    view.reject_unknown()

    w = wigner_from_wavefunction(psi, config)
    smoothed = husimi_smooth(w, GaussianPacketSpec(width_b=smooth_b), config)
    rep = positivity_report(smoothed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_grid_values(out / "husimi.txt", w.grid, smoothed, config.hbar, "husimi-grid")
    _write_summary(
        out / "summary.txt",
        [
            ("smooth_width_b", _fmt(smooth_b)),
            ("min_value", _fmt(rep.min_value)),
            ("negative_fraction", _fmt(rep.negative_fraction)),
            ("total_integral", _fmt(smoothed.sum() * w.cell)),
            ("raw_min_value", _fmt(float(w.values.min()))),
            ("raw_negativity_volume", _fmt(negativity_volume(w))),
        ],
    )
    return 0


def _cmd_star(args) -> int:
    if args.config is not None:
        view = read_run_config(args.config)
        config = _build_config(view)
        view.reject_unknown()
    else:
        config = Config()
    a = parse_poly(args.a, config)
    b = parse_poly(args.b, config)
    print(format_poly(star_product(a, b, config)))
    return 0


def _cmd_expect(args) -> int:
    view = read_run_config(args.config)
    config = _build_config(view)
    grid = _build_grid(view)
    psi = _build_state(view, grid, config)
    view.reject_unknown()

    w = wigner_from_wavefunction(psi, config)
    poly = parse_poly(args.observable, config)
    value = expectation(w, poly.sample(w.grid))
    print(_fmt(value))
    return 0


def _cmd_demo_negativity(args) -> int:
    if args.config is not None:
        view = read_run_config(args.config)
        config = _build_config(view)
        grid = _build_grid(view)
        gap = view.get_float("gap", 2.0)
        width = view.get_float("width", 1.0)
        view.reject_unknown()
    else:
        config = Config()
        grid = AxisGrid(min=-8.0, step=1.0 / 16.0, count=256)
        gap, width = 2.0, 1.0

    report = impossibility_demo(gap, width, grid, config)
    print(f"max_cross_in_gap = {_fmt(report.max_cross_in_gap)}")
    for phi, mn in report.phase_minima:
        print(f"min_W[phi={phi:.10f}] = {_fmt(mn)}")
    print(f"min_over_sweep = {_fmt(report.min_over_sweep)}")
    print(f"phase_spread_of_min = {_fmt(report.phase_spread_of_min)}")
    print(f"max_momentum_product = {_fmt(report.max_momentum_product)}")
    print("PASS" if report.contradicts_positivity else "FAIL")
    return 0 if report.contradicts_positivity else 3


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="phasespace",
        description="Phase-space quantum mechanics: transforms, evolution, smoothing, demos.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_required=True):
        p.add_argument("--config", type=Path, required=config_required, help="flat key=value config file")
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")
        p.add_argument("--rng-seed", type=int, default=None, help="unused; commands are deterministic")

    p = sub.add_parser("wigner", help="Wigner transform of a configured state")
    add_common(p)
    p.set_defaults(func=_cmd_wigner)

    p = sub.add_parser("evolve", help="propagate a Wigner function in time")
    add_common(p)
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("husimi", help="Gaussian-smoothed distribution of a configured state")
    add_common(p)
    p.set_defaults(func=_cmd_husimi)

    p = sub.add_parser("star", help="star product of two polynomial symbols")
    p.add_argument("a", help="first polynomial, e.g. 'q^2*p + 0.5*i*p'")
    p.add_argument("b", help="second polynomial")
    p.add_argument("--config", type=Path, default=None, help="optional config supplying hbar")
    p.add_argument("--rng-seed", type=int, default=None, help="unused")
    p.set_defaults(func=_cmd_star)

    p = sub.add_parser("expect", help="expectation value of a polynomial observable")
    p.add_argument("observable", help="polynomial, e.g. '0.5*q^2 + 0.5*p^2'")
    add_common(p)
    p.set_defaults(func=_cmd_expect)

    p = sub.add_parser("demo-negativity", help="two-interval impossibility demonstration")
    add_common(p, config_required=False)
    p.set_defaults(func=_cmd_demo_negativity)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericAbortError as exc:
        print(f"error: numeric abort: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
