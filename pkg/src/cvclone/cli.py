"""Command-line front end: ``cvclone {nf,clone-sweep,phase-scan,find-crossing,sample-check}``.

Parameters come from built-in defaults, then an optional ``--config`` file,
then explicit flags (flags win). Exit codes: 0 success, 1 domain error or
failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import chain, core, io, metrics, noise_figure, sampler
from .chain import ChainConfig, SourceModel


class UsageError(Exception):
    pass


def _source_flags(p):
    p.add_argument("--squeezing-db", type=float, help="source noise reduction in dB (positive)")
    p.add_argument("--antisqueezing-db", type=float, help="source antisqueezing in dB; omit for a pure source")
    p.add_argument("--eta", type=float, help="homodyne detector efficiency")
    p.add_argument("--window-t", type=float, help="transmission per cell window")
    p.add_argument("--n-windows", type=int, help="windows per beam ahead of the amplifier")
    p.add_argument("--polarizer-t", type=float, help="polarizer transmission")


def _grid_flags(p):
    p.add_argument("--gain-min", type=float)
    p.add_argument("--gain-max", type=float)
    p.add_argument("--steps", type=int)


SOURCE_DEFAULTS = dict(
    squeezing_db=4.3, antisqueezing_db=None, eta=1.0, window_t=1.0, n_windows=2, polarizer_t=1.0
)

DEFAULTS = {
    "nf": dict(gain_min=1.0, gain_max=10.0, steps=10, eta=1.0, signal_power=100.0, out=None),
    "clone-sweep": dict(SOURCE_DEFAULTS, gain_min=1.0, gain_max=5.0, steps=41, out=None),
    "phase-scan": dict(SOURCE_DEFAULTS, gain=1.0, transmission=None, g=1.0, points=360, out=None),
    "find-crossing": dict(SOURCE_DEFAULTS, metric=None, g_hi=50.0, g_limit=1e4),
    "sample-check": dict(
        SOURCE_DEFAULTS, seed=42, shots=1_000_000, scenario="chain", gain=2.0, block_size=1024, batches=100, out=None
    ),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cvclone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parser.commands = {}

    def add(name, help_):
        p = sub.add_parser(name, help=help_, argument_default=None)
        p.add_argument("--config", help="key = value file; flags override its entries")
        parser.commands[name] = p
        return p

    p = add("nf", "noise figure versus gain")
    _grid_flags(p)
    p.add_argument("--eta", type=float)
    p.add_argument("--signal-power", type=float, help="input modulation power in shot-noise units")
    p.add_argument("--out")

    p = add("clone-sweep", "entanglement versus gain with unity gain-loss product")
    _source_flags(p)
    _grid_flags(p)
    p.add_argument("--out")

    p = add("phase-scan", "joint-quadrature noise versus common homodyne phase")
    _source_flags(p)
    p.add_argument("--gain", type=float)
    p.add_argument("--transmission", type=float, help="attenuator transmission (default 1/gain)")
    p.add_argument("--g", type=float, help="electronic gain on the conjugate signal")
    p.add_argument("--points", type=int)
    p.add_argument("--out")

    p = add("find-crossing", "gain where a criterion reaches its threshold")
    _source_flags(p)
    p.add_argument("--metric", choices=["insep", "epr12"])
    p.add_argument("--g-hi", type=float)
    p.add_argument("--g-limit", type=float)

    p = add("sample-check", "Monte-Carlo cross-check of the analytic metrics")
    _source_flags(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--shots", type=int)
    p.add_argument("--scenario", choices=["vacuum", "tmsv", "chain"])
    p.add_argument("--gain", type=float)
    p.add_argument("--block-size", type=int)
    p.add_argument("--batches", type=int)
    p.add_argument("--out")
    return parser


def _convert(parser, command, key, raw):
    for action in parser.commands[command]._actions:
        if action.dest == key:
            try:
                val = action.type(raw) if action.type else raw
            except ValueError:
                raise UsageError(f"config key {key!r}: cannot parse {raw!r}") from None
            if action.choices and val not in action.choices:
                raise UsageError(f"config key {key!r}: {val!r} not in {sorted(action.choices)}")
            return val
    raise UsageError(f"unknown config key {key!r} for command {command!r}")


def effective_config(parser, args) -> dict:
    cfg = dict(DEFAULTS[args.command])
    if args.config:
        for k, raw in io.read_config(args.config).items():
            cfg[k] = None if raw.lower() in ("", "none") else _convert(parser, args.command, k, raw)
    for k, v in vars(args).items():
        if k not in ("command", "config") and v is not None:
            cfg[k] = v
    return cfg


def _grid(cfg):
    lo, hi, n = cfg["gain_min"], cfg["gain_max"], cfg["steps"]
    if n < 1:
        raise ValueError(f"steps must be >= 1, got {n}")
    if lo > hi:
        raise ValueError(f"gain-min {lo} exceeds gain-max {hi}")
    if lo < 1.0:
        raise ValueError(f"gain-min must be >= 1, got {lo}")
    return np.linspace(lo, hi, n)


def _chain_config(cfg, gain=1.0, transmission=None, keep_ancilla=False) -> ChainConfig:
    if cfg["squeezing_db"] is None:
        raise ValueError("squeezing-db is required")
    source = SourceModel.from_db(cfg["squeezing_db"], cfg["antisqueezing_db"])
    return ChainConfig(
        source,
        gain=gain,
        transmission=transmission,
        window_t=cfg["window_t"],
        n_windows=cfg["n_windows"],
        polarizer_t=cfg["polarizer_t"],
        detector_eta=cfg["eta"],
        keep_ancilla=keep_ancilla,
    )


def _emit(cfg, text, out):
    if cfg.get("out"):
        path = io.write_atomic(cfg["out"], text)
        print(f"wrote {path}", file=sys.stderr)
    else:
        out.write(text)


def cmd_nf(cfg, out):
    gains = _grid(cfg)
    signal = noise_figure.SignalModel(signal_power=cfg["signal_power"], detector_eta=cfg["eta"])
    rows = noise_figure.nf_sweep(gains, cfg["eta"], signal)
    header = ["gain", "nf_ideal", "nf_detector", "nf_simulated", "nf_ideal_db", "nf_detector_db"]
    body = [(r.gain, r.nf_ideal, r.nf_detector, r.nf_simulated, r.nf_ideal_db, r.nf_detector_db) for r in rows]
    _emit(cfg, io.render_csv(header, body), out)
    return 0


def cmd_clone_sweep(cfg, out):
    gains = _grid(cfg)
    rows = chain.clone_sweep(_chain_config(cfg), gains)
    header = ["gain", "I", "g_insep", "E12", "E21", "inseparable", "epr"]
    body = [(r.gain, r.I, r.g_insep, r.E12, r.E21, r.inseparable, r.epr) for r in rows]
    _emit(cfg, io.render_csv(header, body), out)
    return 0


def cmd_phase_scan(cfg, out):
    if cfg["points"] < 1:
        raise ValueError("points must be >= 1")
    chain_cfg = _chain_config(cfg, gain=cfg["gain"], transmission=cfg["transmission"])
    thetas = 2.0 * np.pi * np.arange(cfg["points"]) / cfg["points"]
    scan = chain.phase_scan(chain_cfg, cfg["g"], thetas)
    body = [(th, metrics.db(vm), metrics.db(vp)) for th, vm, vp in scan]
    _emit(cfg, io.render_csv(["theta", "var_minus_db", "var_plus_db"], body), out)
    return 0


def cmd_find_crossing(cfg, out):
    if cfg["metric"] is None:
        raise UsageError("--metric is required")
    g_star = chain.find_crossing(_chain_config(cfg), cfg["metric"], g_hi=cfg["g_hi"], g_limit=cfg["g_limit"])
    out.write("no crossing\n" if g_star is None else f"G* = {g_star:.6f}\n")
    return 0


def _scenario_state(cfg):
    scen = cfg["scenario"]
    if scen == "vacuum":
        return core.vacuum(2)
    if scen == "tmsv":
        return chain.build_source(_chain_config(cfg).source)
    return chain.run_chain(_chain_config(cfg, gain=cfg["gain"]))


def cmd_sample_check(cfg, out):
    state = _scenario_state(cfg)
    scfg = sampler.SampleConfig(seed=cfg["seed"], shots=cfg["shots"], block_size=cfg["block_size"])
    samples = sampler.sample_quadratures(state, scfg)

    def on_cov(f):
        return lambda cov: f(core.GaussianState(np.zeros(cov.shape[0]), cov))

    quantities = {
        "var_x0": lambda s: metrics.quad_variance(s, 0, "x"),
        "var_x_minus_g1": lambda s: metrics.joint_variance_minus(s, 0, 1, 1.0),
        "var_y_plus_g1": lambda s: metrics.joint_variance_plus(s, 0, 1, 1.0),
        "I": lambda s: metrics.inseparability(s, 0, 1)[0],
        "E12": lambda s: metrics.epr(s, 0, 1)[0],
        "E21": lambda s: metrics.epr(s, 0, 1)[1],
    }
    rows, ok = [], True
    for name, f in quantities.items():
        analytic = f(state)
        emp, se = sampler.batch_estimate(samples, on_cov(f), n_batches=cfg["batches"])
        z = (emp - analytic) / se if se > 0 else 0.0
        passed = abs(z) <= 5.0
        ok &= passed
        rows.append((name, analytic, emp, se, z, passed))
    text = io.render_csv(["quantity", "analytic", "empirical", "stderr", "z", "pass"], rows)
    for name, analytic, emp, se, z, passed in rows:
        out.write(
            f"{name:>15s}  analytic {analytic:.6f}  empirical {emp:.6f} +/- {se:.6f}  "
            f"z {z:+.2f}  {'PASS' if passed else 'FAIL'}\n"
        )
    out.write(("PASS" if ok else "FAIL") + "\n")
    if cfg.get("out"):
        path = io.write_atomic(cfg["out"], text)
        print(f"wrote {path}", file=sys.stderr)
    return 0 if ok else 1


COMMANDS = {
    "nf": cmd_nf,
    "clone-sweep": cmd_clone_sweep,
    "phase-scan": cmd_phase_scan,
    "find-crossing": cmd_find_crossing,
    "sample-check": cmd_sample_check,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = effective_config(parser, args)
    except (UsageError, OSError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    print("# effective config: " + " ".join(f"{k}={v}" for k, v in sorted(cfg.items())), file=sys.stderr)
    try:
        return COMMANDS[args.command](cfg, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
