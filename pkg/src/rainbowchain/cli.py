"""Command-line front end: ``rainbowchain <command> [options]``.

Every command writes CSV (17 significant digits, header row, one ``#`` line
stamping the configuration) or a JSON summary.  Exit status is 0 on success,
2 for a bad configuration and 3 for a numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import cft
from ._io import config_comment, csv_text, emit, json_text
from .chains import ChainSpec, build_hopping_matrix, read_couplings_csv, site_positions
from .entanglement import (
    arc_diagram,
    block_entanglement,
    entanglement_spacing,
    entropy_profile,
)
from .fermions import (
    EigensolverError,
    FillingAmbiguityError,
    diagonalize,
    ground_state_correlations,
    thermal_correlations,
)
from .quench import InitialState, default_times, run_quench

COMMANDS = ("spectrum", "profile", "entspectrum", "arcs", "quench", "thermal")

DEFAULTS = {
    "sites": 32,
    "h": 1.0,
    "coupling": 1.0,
    "model": "rainbow",
    "renyi": "1",
    "format": "csv",
    "overlay_cft": False,
    "threshold": 0.05,
    "beta": None,
    "tmax": None,
    "dt": 0.25,
    "initial": "rainbow",
    "block": None,
    "out": None,
    "svg": None,
}


class ConfigError(ValueError):
    pass


class NumericalError(RuntimeError):
    pass


def read_config_file(path: str | Path) -> dict:
    """Flat ``key = value`` text; ``#`` starts a comment; dashes in keys become underscores."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        k = k.replace("-", "_")
        if k not in DEFAULTS:
            raise ConfigError(f"{path}:{lineno}: unknown key {k!r}")
        out[k] = v
    return out


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("chain")
    g.add_argument("--config", help="flat key=value file; flags override it")
    g.add_argument("--sites", type=int, help="number of sites N, even (default 32)")
    g.add_argument("--h", type=float, help="inhomogeneity h >= 0 (default 1.0)")
    g.add_argument("--coupling", type=float, help="energy scale J > 0 (default 1.0)")
    g.add_argument(
        "--model", help="rainbow | homogeneous | custom:FILE (one-column CSV 't'); default rainbow"
    )
    g.add_argument("--renyi", help="comma-separated Renyi orders (default 1)")
    g.add_argument("--out", help="output file (default stdout)")
    g.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    g.add_argument("--overlay-cft", dest="overlay_cft", action="store_true", default=None,
                   help="add continuum predictions next to the numerics")
    g.add_argument("--threshold", type=float, help="arc weight cut (default 0.05)")
    g.add_argument("--beta", type=float, help="inverse temperature (thermal; default inf)")
    g.add_argument("--tmax", type=float, help="final time (quench; default 2N)")
    g.add_argument("--dt", type=float, help="time step (quench; default 0.25)")
    g.add_argument("--initial", choices=("rainbow", "dimer", "gs"),
                   help="quench initial state (default rainbow, i.e. h=6 ground state)")
    g.add_argument("--block", help="block as START:STOP site range (entspectrum; default left half)")
    g.add_argument("--svg", help="also write an SVG arc diagram (arcs)")

    p = argparse.ArgumentParser(prog="rainbowchain", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "spectrum": "single-body energies of the chain",
        "profile": "left-block entropy profile, optionally with continuum overlay",
        "entspectrum": "entanglement spectrum of a block and its level spacing",
        "arcs": "correlation arc diagram as CSV and SVG",
        "quench": "entropy dynamics after a quench to the homogeneous chain",
        "thermal": "finite-temperature profile against the three-region prediction",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return p


def _coerce(cfg: dict) -> dict:
    try:
        out = dict(cfg)
        out["sites"] = int(out["sites"])
        out["h"] = float(out["h"])
        out["coupling"] = float(out["coupling"])
        out["threshold"] = float(out["threshold"])
        out["dt"] = float(out["dt"])
        for k in ("beta", "tmax"):
            out[k] = None if out[k] in (None, "", "None") else float(out[k])
        if isinstance(out["overlay_cft"], str):
            out["overlay_cft"] = out["overlay_cft"].lower() in ("1", "true", "yes", "on")
        out["renyi"] = [float(v) for v in str(out["renyi"]).split(",") if v.strip()]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value: {exc}") from exc
    if not out["renyi"] or any(n <= 0 for n in out["renyi"]):
        raise ConfigError("Renyi orders must be positive")
    if out["format"] not in ("csv", "json"):
        raise ConfigError("format must be csv or json")
    if out["initial"] not in ("rainbow", "dimer", "gs"):
        raise ConfigError("initial must be rainbow, dimer or gs")
    if out["dt"] <= 0:
        raise ConfigError("dt must be positive")
    if out["threshold"] < 0:
        raise ConfigError("threshold must be >= 0")
    if out["beta"] is not None and out["beta"] < 0:
        raise ConfigError("beta must be >= 0")
    return out


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            cfg.update(read_config_file(args.config))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
    for k in DEFAULTS:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    return _coerce(cfg)


def chain_spec(cfg: dict) -> ChainSpec:
    model = str(cfg["model"])
    try:
        if model == "rainbow":
            return ChainSpec(cfg["sites"], h=cfg["h"], J=cfg["coupling"], kind="rainbow")
        if model == "homogeneous":
            return ChainSpec(cfg["sites"], h=0.0, J=cfg["coupling"], kind="homogeneous")
        if model.startswith("custom:"):
            t = read_couplings_csv(model.split(":", 1)[1])
            return ChainSpec(len(t) + 1, h=0.0, J=cfg["coupling"], kind="custom",
                             custom_couplings=tuple(t))
    except (OSError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown model {model!r}")


def _stamp(command: str, cfg: dict) -> str:
    shown = {k: v for k, v in cfg.items() if k not in ("out", "svg")}
    shown["command"] = command
    return config_comment(shown)


def _ground_state(spec: ChainSpec) -> np.ndarray:
    return ground_state_correlations(diagonalize(build_hopping_matrix(spec.couplings())))


def _order_label(n: float) -> str:
    return f"{n:g}"


def cmd_spectrum(cfg: dict) -> str:
    spec = chain_spec(cfg)
    e = diagonalize(build_hopping_matrix(spec.couplings())).energies
    mirror = e + e[::-1]
    if cfg["format"] == "json":
        return json_text({"energies": e.tolist(), "max_mirror_sum": float(np.abs(mirror).max())})
    rows = zip(range(1, e.size + 1), e, mirror)
    return csv_text(["k", "energy", "mirror_sum"], rows, _stamp("spectrum", cfg))


def cmd_profile(cfg: dict) -> str:
    spec = chain_spec(cfg)
    C = _ground_state(spec)
    n = spec.n_sites
    L = n // 2
    profiles = [entropy_profile(C, order) for order in cfg["renyi"]]
    ell = profiles[0].ell
    x = ell - L
    header = ["ell", "x"] + [f"S{_order_label(p.order)}" for p in profiles]
    cols = [ell, x] + [p.values for p in profiles]
    fits = {}
    if cfg["overlay_cft"]:
        inner = np.abs(x) < L
        for p in profiles:
            pred = np.full(ell.size, np.nan)
            g = cft.edge_block_prediction(x[inner], p.order, L, spec.h)
            fit = cft.fit_constants(cft.smooth_part(p.values)[inner], g)
            pred[inner] = g + fit.constant
            header.append(f"S{_order_label(p.order)}_cft")
            cols.append(pred)
            fits[_order_label(p.order)] = {"constant": fit.constant, "rms": fit.rms}
    if cfg["format"] == "json":
        return json_text({
            "ell": ell.tolist(),
            "entropies": {_order_label(p.order): p.values.tolist() for p in profiles},
            "half_chain": float(profiles[0].values[L - 1]),
            "cft_fits": fits,
        })
    return csv_text(header, zip(*cols), _stamp("profile", cfg))


def _parse_block(text: str | None, n: int) -> range:
    if text is None:
        return range(n // 2)
    try:
        a, b = (int(s) for s in str(text).split(":"))
    except ValueError as exc:
        raise ConfigError(f"block must be START:STOP, got {text!r}") from exc
    if not 0 <= a < b <= n:
        raise ConfigError(f"block {text} out of range for N={n}")
    return range(a, b)


def cmd_entspectrum(cfg: dict) -> str:
    spec = chain_spec(cfg)
    C = _ground_state(spec)
    block = _parse_block(cfg["block"], spec.n_sites)
    data = block_entanglement(C, block, cfg["renyi"])
    m = len(block)
    fit = entanglement_spacing(data) if m >= 2 else None
    pred = (
        cft.thermofield_spacing_prediction(m, spec.h)
        if spec.kind == "rainbow" and spec.h > 0 and m == spec.n_sites // 2
        else float("nan")
    )
    summary = {
        "block": [block.start, block.stop],
        "entropy": data.vn_entropy,
        "renyi": {_order_label(k): v for k, v in data.renyi.items()},
        "f0": data.f0,
        "delta_fit": fit.delta if fit else float("nan"),
        "goodness": fit.goodness if fit else float("nan"),
        "ladder": fit.ladder if fit else "none",
        "delta_pred": pred,
    }
    if cfg["format"] == "json":
        return json_text(summary)
    p = fit.positions if fit and fit.positions is not None else np.arange(m) - (m - 1) / 2
    nu = np.sort(data.nu)[::-1]  # descending nu <-> ascending epsilon
    delta = fit.delta if fit else float("nan")
    rows = zip(range(m), nu, data.single_body_energies, p, delta * p, pred * p)
    comment = _stamp("entspectrum", cfg) + (
        f" delta_fit={delta:.17g} goodness={summary['goodness']:.17g} ladder={summary['ladder']}"
    )
    return csv_text(["k", "nu", "epsilon", "p", "fit", "thermofield"], rows, comment)


def cmd_arcs(cfg: dict) -> str:
    spec = chain_spec(cfg)
    arcs = arc_diagram(_ground_state(spec), cfg["threshold"])
    if cfg["svg"]:
        arcs.to_svg(cfg["svg"])
    if cfg["format"] == "json":
        return json_text({"n_sites": arcs.n_sites, "threshold": arcs.threshold,
                          "arcs": [[int(a), int(b), float(w)] for a, b, w in
                                   zip(arcs.i, arcs.j, arcs.weight)]})
    return arcs.to_csv(comment=_stamp("arcs", cfg))


def cmd_quench(cfg: dict) -> str:
    n = cfg["sites"]
    if cfg["initial"] == "gs":
        initial = InitialState("gs", n, spec=chain_spec(cfg))
    elif cfg["initial"] == "dimer":
        initial = InitialState("dimer", n)
    else:
        initial = InitialState("rainbow", n)
    try:
        final = ChainSpec(n, J=cfg["coupling"], kind="homogeneous")
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    times = default_times(n, cfg["dt"], cfg["tmax"])
    traj = run_quench(initial, final, times, order=cfg["renyi"][0])
    if cfg["format"] == "json":
        s = traj.summary()
        s["max_trace_error"] = float(traj.trace_error.max())
        s["max_purity_error"] = float(traj.purity_error.max())
        return json_text(s)
    return traj.to_csv(comment=_stamp("quench", cfg))


def cmd_thermal(cfg: dict) -> str:
    spec = chain_spec(cfg)
    beta = float("inf") if cfg["beta"] is None else cfg["beta"]
    C = thermal_correlations(diagonalize(build_hopping_matrix(spec.couplings())), beta)
    prof = entropy_profile(C, 1)
    L = spec.n_sites // 2
    x = prof.ell - L
    if spec.h > 0 and beta < np.inf:
        T = float("inf") if beta == 0 else 1.0 / beta
        pred = cft.finite_T_profile(x, T, L, spec.h, spec.J)
        x0 = cft.crossover_position(T, L, spec.h, spec.J)
    else:
        pred = np.full(x.size, np.nan)
        x0 = float("nan")
    if cfg["format"] == "json":
        return json_text({"x0": x0, "ell": prof.ell.tolist(), "S": prof.values.tolist(),
                          "S_pred": [None if np.isnan(v) else float(v) for v in pred]})
    comment = _stamp("thermal", cfg) + f" x0={x0:.17g}"
    return csv_text(["ell", "x", "S", "S_pred"], zip(prof.ell, x, prof.values, pred), comment)


HANDLERS = {
    "spectrum": cmd_spectrum,
    "profile": cmd_profile,
    "entspectrum": cmd_entspectrum,
    "arcs": cmd_arcs,
    "quench": cmd_quench,
    "thermal": cmd_thermal,
}


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        text = HANDLERS[args.command](cfg)
    except ConfigError as exc:
        print(f"rainbowchain: config error: {exc}", file=sys.stderr)
        return 2
    except (FillingAmbiguityError, EigensolverError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"rainbowchain: numerical error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"rainbowchain: config error: {exc}", file=sys.stderr)
        return 2
    if cfg["out"]:
        emit(text, cfg["out"])
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
