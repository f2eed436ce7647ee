"""Command-line interface: config ingestion, sweeps, yield tables, MC checks.

Subcommands:

* ``simulate``: one pipeline run per segment, printed as a rate report,
* ``sweep``: Cartesian (f_D, f_G) x memory-mode grid written to CSV/JSON,
* ``yields``: per-segment yield with and without memories, plus the ratio,
* ``mc-check``: every closed-form expectation against its sampling oracle.

Exit status is 0 on success, 1 when mc-check finds a deviation beyond
three standard errors, and 2 on validation or runtime errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np
import jsonschema
import yaml

from .mc import McResult, mc_coherence_near, mc_expected_max, mc_yield_memoryless
from .netmodel import (
    SPEED_OF_LIGHT_FIBER,
    LinkParams,
    MemoryParams,
    NodeParams,
    SourceParams,
    TrioConfig,
    _click_probs,
    expected_coherence_near,
    expected_max_geometric,
    transmission_from_db,
    yield_memoryless,
    yield_with_memory,
)
from .protocol import NoiseParams
from .rates import full_report

CSV_COLUMNS = (
    "segment",
    "f_D",
    "f_G",
    "memory",
    "T2_s",
    "yield",
    "fidelity",
    "Q_X",
    "Q_AB",
    "r_per_attempt",
    "r_per_second",
)

DEFAULT_CONFIG = "network_segments.yaml"


class ConfigError(ValueError):
    """Configuration rejected; ``problems`` lists every violation found."""

    def __init__(self, problems: list[str]) -> None:
        self.problems = list(problems)
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {p}" for p in self.problems))


def data_path(name: str = DEFAULT_CONFIG) -> Path:
    """Filesystem path of a bundled data file."""
    return Path(str(resources.files("ghzline") / "data" / name))


def _load_schema() -> dict:
    with (resources.files("ghzline") / "data" / "config.schema.json").open() as fh:
        return json.load(fh)


def validate_document(doc) -> list[str]:
    """All schema and consistency violations of a parsed config document."""
    validator = jsonschema.Draft202012Validator(_load_schema())
    problems = []
    for err in sorted(
        validator.iter_errors(doc), key=lambda e: [str(x) for x in e.absolute_path]
    ):
        where = ".".join(str(x) for x in err.absolute_path) or "<root>"
        problems.append(f"{where}: {err.message}")
    if problems:
        return problems
    # The schema cannot cross-check redundant fields.
    for i, seg in enumerate(doc["segments"]):
        for key in ("AB", "BC"):
            raw = seg["links"][key]
            if "transmission" in raw and "loss_db" in raw:
                implied = transmission_from_db(raw["loss_db"])
                if abs(implied - raw["transmission"]) > 1e-9:
                    problems.append(
                        f"segments.{i}.links.{key}: transmission {raw['transmission']} "
                        f"disagrees with loss_db {raw['loss_db']} (implies {implied:.9g})"
                    )
    return problems


def _build_link(raw: dict) -> LinkParams:
    if "loss_db" in raw:
        transmission = transmission_from_db(raw["loss_db"])
    else:
        transmission = raw["transmission"]
    return LinkParams(length=raw["length"], transmission=transmission)


def _build_node(key: str, raw: dict) -> NodeParams:
    return NodeParams(
        name=raw.get("name", key),
        detector_efficiency=raw["detector_efficiency"],
        dark_count_prob=raw.get("dark_count_prob", 0.0),
    )


def _build_segment(seg: dict) -> TrioConfig:
    mem = seg.get("memory")
    return TrioConfig(
        name=seg["name"],
        node_a=_build_node("A", seg["nodes"]["A"]),
        node_b=_build_node("B", seg["nodes"]["B"]),
        node_c=_build_node("C", seg["nodes"]["C"]),
        link_ab=_build_link(seg["links"]["AB"]),
        link_bc=_build_link(seg["links"]["BC"]),
        source=SourceParams(frequency=seg["source"]["frequency"]),
        memory=MemoryParams(efficiency=mem["efficiency"], t2=mem["T2"]) if mem else None,
        speed_of_light=seg.get("speed_of_light", SPEED_OF_LIGHT_FIBER),
    )


def load_config(path) -> list[TrioConfig]:
    """Parse and validate a segment configuration file.

    Violations are collected and reported all at once in a ConfigError
    instead of stopping at the first.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError([f"cannot read {p}: {exc}"]) from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError([f"{p}: parse error: {exc}"]) from exc
    problems = validate_document(doc)
    if problems:
        raise ConfigError(problems)
    return [_build_segment(seg) for seg in doc["segments"]]


@dataclass(frozen=True)
class SweepSpec:
    """Cartesian sweep over the noise knobs and memory settings.

    Each range is (min, max, steps).  t2_values applies to memory-on rows;
    empty means each segment's configured T2.  The emitted row schema is
    fixed, so ``outputs`` is validated as a statement of intent but does
    not change the columns.
    """

    fd_range: tuple[float, float, int] = (0.0, 0.3, 11)
    fg_range: tuple[float, float, int] = (0.0, 0.3, 11)
    memory_modes: tuple[str, ...] = ("off", "on")
    t2_values: tuple[float, ...] = ()
    outputs: tuple[str, ...] = ("yield", "fidelity", "key_rate")

    def __post_init__(self) -> None:
        for label, rng in (("fd_range", self.fd_range), ("fg_range", self.fg_range)):
            lo, hi, steps = rng
            if not 0.0 <= lo <= hi <= 1.0:
                raise ValueError(f"{label}: need 0 <= min <= max <= 1, got {lo}..{hi}")
            if int(steps) < 1:
                raise ValueError(f"{label}: steps must be >= 1, got {steps}")
        if not self.memory_modes or len(set(self.memory_modes)) != len(self.memory_modes):
            raise ValueError(f"memory_modes must be nonempty and distinct, got {self.memory_modes}")
        if any(m not in ("off", "on") for m in self.memory_modes):
            raise ValueError(f"memory_modes entries must be 'off' or 'on', got {self.memory_modes}")
        if any(t <= 0.0 for t in self.t2_values):
            raise ValueError(f"t2_values must be positive, got {self.t2_values}")
        if not self.outputs or any(o not in ("yield", "fidelity", "key_rate") for o in self.outputs):
            raise ValueError(
                f"outputs must be a nonempty subset of yield/fidelity/key_rate, got {self.outputs}"
            )


@dataclass(frozen=True)
class SweepRow:
    """One grid point; ``error`` is set (and the metrics NaN) if it failed."""

    segment: str
    f_d: float
    f_g: float
    memory: bool
    t2_s: float | None
    yield_per_attempt: float
    fidelity: float
    q_x: float
    q_ab: float
    r_per_attempt: float
    r_per_second: float
    error: str | None = None


def _axis(rng: tuple[float, float, int]) -> list[float]:
    lo, hi, steps = rng
    return [float(x) for x in np.linspace(lo, hi, int(steps))]


def _threads_from_env() -> int:
    raw = os.environ.get("THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise ValueError(f"THREADS must be an integer, got {raw!r}") from exc


def _eval_point(
    cfg: TrioConfig, fd: float, fg: float, memory: bool, t2: float | None
) -> SweepRow:
    try:
        if memory and cfg.memory is None:
            raise ValueError(f"segment {cfg.name} has no memory parameters")
        cfg_run = cfg
        if memory and t2 is not None:
            cfg_run = replace(cfg, memory=replace(cfg.memory, t2=t2))
        rep = full_report(cfg_run, NoiseParams(channel_depol=fd, gate_fail=fg), use_memory=memory)
        return SweepRow(
            segment=cfg.name,
            f_d=fd,
            f_g=fg,
            memory=memory,
            t2_s=cfg_run.memory.t2 if memory else None,
            yield_per_attempt=rep.yield_per_attempt,
            fidelity=rep.fidelity,
            q_x=rep.q_x,
            q_ab=rep.q_ab,
            r_per_attempt=rep.r_per_attempt,
            r_per_second=rep.r_per_second,
        )
    except Exception as exc:  # keep the sweep alive; the row records the failure
        nan = float("nan")
        return SweepRow(
            segment=cfg.name,
            f_d=fd,
            f_g=fg,
            memory=memory,
            t2_s=t2,
            yield_per_attempt=nan,
            fidelity=nan,
            q_x=nan,
            q_ab=nan,
            r_per_attempt=nan,
            r_per_second=nan,
            error=f"{type(exc).__name__}: {exc}",
        )


def run_sweep(
    configs, spec: SweepSpec = SweepSpec(), threads: int | None = None
) -> list[SweepRow]:
    """Evaluate the full grid, ordered by (segment, memory, T2, f_D, f_G).

    Grid points are independent, so they may fan out to worker threads
    (``threads`` argument, else the THREADS env var); assembly restores
    order, making the output independent of the worker count.
    """
    fds = _axis(spec.fd_range)
    fgs = _axis(spec.fg_range)
    points: list[tuple[TrioConfig, float, float, bool, float | None]] = []
    for cfg in sorted(configs, key=lambda c: c.name):
        for mode in ("off", "on"):
            if mode not in spec.memory_modes:
                continue
            if mode == "off":
                t2s: list[float | None] = [None]
            elif spec.t2_values:
                t2s = sorted(spec.t2_values)
            else:
                t2s = [cfg.memory.t2 if cfg.memory else None]
            for t2 in t2s:
                for fd in fds:
                    for fg in fgs:
                        points.append((cfg, fd, fg, mode == "on", t2))
    if threads is None:
        threads = _threads_from_env()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda args: _eval_point(*args), points))
    return [_eval_point(*args) for args in points]


def _g17(x: float) -> str:
    return f"{float(x):.17g}"


def _json_float(x: float) -> float | None:
    x = float(x)
    return x if math.isfinite(x) else None


def row_as_dict(row: SweepRow) -> dict:
    """Row as a JSON-ready mapping with the canonical column names."""
    d = {
        "segment": row.segment,
        "f_D": _json_float(row.f_d),
        "f_G": _json_float(row.f_g),
        "memory": bool(row.memory),
        "T2_s": None if row.t2_s is None else _json_float(row.t2_s),
        "yield": _json_float(row.yield_per_attempt),
        "fidelity": _json_float(row.fidelity),
        "Q_X": _json_float(row.q_x),
        "Q_AB": _json_float(row.q_ab),
        "r_per_attempt": _json_float(row.r_per_attempt),
        "r_per_second": _json_float(row.r_per_second),
    }
    if row.error is not None:
        d["error"] = row.error
    return d


def render_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.segment,
                _g17(r.f_d),
                _g17(r.f_g),
                "true" if r.memory else "false",
                "" if r.t2_s is None else _g17(r.t2_s),
                _g17(r.yield_per_attempt),
                _g17(r.fidelity),
                _g17(r.q_x),
                _g17(r.q_ab),
                _g17(r.r_per_attempt),
                _g17(r.r_per_second),
            ]
        )
    return buf.getvalue()


def render_json(rows) -> str:
    return json.dumps([row_as_dict(r) for r in rows], indent=1) + "\n"


def emit(rows, fmt: str, path) -> Path:
    """Write rows to ``path``.  CSV floats carry 17 significant digits;
    JSON uses shortest round-trip rendering, which loses nothing."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    out = Path(path)
    out.write_text(render_csv(rows) if fmt == "csv" else render_json(rows))
    return out


def _float_or_none(value) -> float | None:
    if value is None or value == "":
        return None
    return float(value)


def _require_float(value) -> float:
    return float("nan") if value is None else float(value)


def parse_rows(path, fmt: str | None = None) -> list[SweepRow]:
    """Read back an emit() file (format inferred from the suffix if omitted).

    CSV cannot carry error messages, so failed rows come back with NaN
    metrics and error=None.
    """
    p = Path(path)
    if fmt is None:
        fmt = "json" if p.suffix == ".json" else "csv"
    rows = []
    if fmt == "json":
        for d in json.loads(p.read_text()):
            rows.append(
                SweepRow(
                    segment=d["segment"],
                    f_d=_require_float(d["f_D"]),
                    f_g=_require_float(d["f_G"]),
                    memory=bool(d["memory"]),
                    t2_s=_float_or_none(d["T2_s"]),
                    yield_per_attempt=_require_float(d["yield"]),
                    fidelity=_require_float(d["fidelity"]),
                    q_x=_require_float(d["Q_X"]),
                    q_ab=_require_float(d["Q_AB"]),
                    r_per_attempt=_require_float(d["r_per_attempt"]),
                    r_per_second=_require_float(d["r_per_second"]),
                    error=d.get("error"),
                )
            )
        return rows
    with p.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != list(CSV_COLUMNS):
            raise ValueError(f"unexpected CSV header in {p}: {reader.fieldnames}")
        for d in reader:
            rows.append(
                SweepRow(
                    segment=d["segment"],
                    f_d=float(d["f_D"]),
                    f_g=float(d["f_G"]),
                    memory=d["memory"] == "true",
                    t2_s=_float_or_none(d["T2_s"]),
                    yield_per_attempt=float(d["yield"]),
                    fidelity=float(d["fidelity"]),
                    q_x=float(d["Q_X"]),
                    q_ab=float(d["Q_AB"]),
                    r_per_attempt=float(d["r_per_attempt"]),
                    r_per_second=float(d["r_per_second"]),
                )
            )
    return rows


def yields_report(configs) -> list[dict]:
    """Per-segment yield summary: memoryless, memory-assisted, and ratio."""
    out = []
    for cfg in sorted(configs, key=lambda c: c.name):
        y = yield_memoryless(cfg)
        if cfg.memory is not None:
            y_qm = yield_with_memory(cfg)
            ratio = y_qm / y
        else:
            y_qm = None
            ratio = None
        out.append({"segment": cfg.name, "yield": y, "yield_memory": y_qm, "ratio": ratio})
    return out


def _mc_check_entry(
    name: str,
    segment: str,
    formula: float,
    mc: McResult,
    null_stderr: float | None = None,
) -> dict:
    """Flag the check when the estimate sits > 3 standard errors off.

    ``null_stderr`` is the standard error implied by the formula itself
    (known exactly for Bernoulli estimators); it keeps the test valid in
    the rare-success regime, where the sample variance can be zero.  The
    1e-12 floor absorbs float noise of (near-)deterministic estimators.
    """
    deviation = mc.estimate - formula
    test_stderr = mc.standard_error if null_stderr is None else null_stderr
    z = deviation / test_stderr if test_stderr > 0.0 else None
    within = abs(deviation) <= max(3.0 * test_stderr, 1e-12)
    return {
        "check": name,
        "segment": segment,
        "formula": formula,
        "estimate": mc.estimate,
        "standard_error": mc.standard_error,
        "test_standard_error": test_stderr,
        "num_samples": mc.num_samples,
        "seed": mc.seed,
        "deviation": deviation,
        "z_score": z,
        "within_3_sigma": within,
    }


def mc_report(configs, num_samples: int = 10**6, seed: int = 0) -> dict:
    """Machine-readable comparison of every closed form with its MC oracle.

    A check is flagged when the sampled mean sits more than three standard
    errors from the formula (zero-variance estimators must agree to 1e-12).
    """
    checks = []
    for i, cfg in enumerate(sorted(configs, key=lambda c: c.name)):
        base = seed + 3 * i
        p = _click_probs(cfg, with_memory=False)
        checks.append(
            _mc_check_entry(
                "expected_max_outer",
                cfg.name,
                expected_max_geometric(p["A"], p["C"]),
                mc_expected_max(p["A"], p["C"], num_samples, base),
            )
        )
        y = yield_memoryless(cfg)
        checks.append(
            _mc_check_entry(
                "yield_memoryless",
                cfg.name,
                y,
                mc_yield_memoryless(cfg, num_samples, base + 1),
                null_stderr=math.sqrt(y * (1.0 - y) / num_samples),
            )
        )
        if cfg.memory is not None:
            checks.append(
                _mc_check_entry(
                    "coherence_near",
                    cfg.name,
                    expected_coherence_near(cfg),
                    mc_coherence_near(cfg, num_samples, base + 2),
                )
            )
    return {
        "num_samples": num_samples,
        "seed": seed,
        "num_checks": len(checks),
        "num_deviations": sum(1 for c in checks if not c["within_3_sigma"]),
        "checks": checks,
    }


def _write_out(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_configs(args) -> list[TrioConfig]:
    path = args.config if args.config is not None else data_path()
    configs = load_config(path)
    if args.segment is not None:
        configs = [c for c in configs if c.name == args.segment]
        if not configs:
            raise ValueError(f"no segment named {args.segment!r} in {path}")
    return configs


def _with_t2(cfg: TrioConfig, t2: float | None) -> TrioConfig:
    if t2 is None:
        return cfg
    if cfg.memory is None:
        raise ValueError(f"segment {cfg.name} has no memory parameters to override")
    return replace(cfg, memory=replace(cfg.memory, t2=t2))


def _format_report_text(row: SweepRow) -> str:
    mode = "on" if row.memory else "off"
    t2 = "" if row.t2_s is None else f", T2={row.t2_s:g} s"
    lines = [
        f"{row.segment}  (memory {mode}{t2}, f_D={row.f_d:g}, f_G={row.f_g:g})",
        f"  yield per attempt : {row.yield_per_attempt:.6g}",
        f"  fidelity          : {row.fidelity:.6g}",
        f"  Q_X               : {row.q_x:.6g}",
        f"  Q_AB              : {row.q_ab:.6g}",
        f"  key rate / attempt: {row.r_per_attempt:.6g}",
        f"  key rate / second : {row.r_per_second:.6g}",
    ]
    return "\n".join(lines) + "\n"


def _cmd_simulate(args) -> int:
    configs = _load_configs(args)
    noise = NoiseParams(channel_depol=args.fd, gate_fail=args.fg)
    rows = []
    for cfg in configs:
        cfg_run = _with_t2(cfg, args.t2)
        rep = full_report(cfg_run, noise, use_memory=args.memory)
        rows.append(
            SweepRow(
                segment=cfg.name,
                f_d=args.fd,
                f_g=args.fg,
                memory=args.memory,
                t2_s=cfg_run.memory.t2 if args.memory and cfg_run.memory else None,
                yield_per_attempt=rep.yield_per_attempt,
                fidelity=rep.fidelity,
                q_x=rep.q_x,
                q_ab=rep.q_ab,
                r_per_attempt=rep.r_per_attempt,
                r_per_second=rep.r_per_second,
            )
        )
    if args.format == "json":
        _write_out(render_json(rows), args.out)
    else:
        _write_out("".join(_format_report_text(r) for r in rows), args.out)
    return 0


def _parse_axis(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) == 1:
        x = float(parts[0])
        return (x, x, 1)
    if len(parts) == 3:
        return (float(parts[0]), float(parts[1]), int(parts[2]))
    raise ValueError(f"axis must be VALUE or MIN:MAX:STEPS, got {text!r}")


def _cmd_sweep(args) -> int:
    configs = _load_configs(args)
    if args.memory is None:
        modes: tuple[str, ...] = ("off", "on")
    else:
        modes = ("on",) if args.memory else ("off",)
    spec = SweepSpec(
        fd_range=_parse_axis(args.fd),
        fg_range=_parse_axis(args.fg),
        memory_modes=modes,
        t2_values=tuple(args.t2 or ()),
    )
    rows = run_sweep(configs, spec)
    out = emit(rows, args.format, args.out)
    failed = sum(1 for r in rows if r.error is not None)
    note = f" ({failed} rows failed)" if failed else ""
    print(f"wrote {len(rows)} rows to {out}{note}")
    return 0


def _cmd_yields(args) -> int:
    report = yields_report(_load_configs(args))
    if args.format == "json":
        _write_out(json.dumps(report, indent=1) + "\n", args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["segment", "yield", "yield_memory", "ratio"])
        for r in report:
            writer.writerow(
                [
                    r["segment"],
                    _g17(r["yield"]),
                    "" if r["yield_memory"] is None else _g17(r["yield_memory"]),
                    "" if r["ratio"] is None else _g17(r["ratio"]),
                ]
            )
        _write_out(buf.getvalue(), args.out)
    else:
        width = max(len(r["segment"]) for r in report)
        lines = [f"{'segment':<{width}}  {'yield':>10}  {'with memory':>12}  {'ratio':>8}"]
        for r in report:
            y_qm = "-" if r["yield_memory"] is None else f"{r['yield_memory']:.3g}"
            ratio = "-" if r["ratio"] is None else f"{r['ratio']:.3g}"
            lines.append(f"{r['segment']:<{width}}  {r['yield']:>10.3g}  {y_qm:>12}  {ratio:>8}")
        _write_out("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_mc_check(args) -> int:
    report = mc_report(_load_configs(args), num_samples=args.samples, seed=args.seed)
    _write_out(json.dumps(report, indent=1) + "\n", args.out)
    if report["num_deviations"]:
        print(
            f"{report['num_deviations']} of {report['num_checks']} checks "
            "deviate by more than 3 standard errors",
            file=sys.stderr,
        )
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghzline",
        description="Three-party entangled-state distribution over fiber segments: "
        "yields, fidelities, and conference key rates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        type=Path,
        default=None,
        help="segment configuration file (default: bundled four-segment line)",
    )
    common.add_argument("--segment", default=None, help="restrict to one segment by name")

    sim = sub.add_parser(
        "simulate", parents=[common], help="single-point pipeline run and rate report"
    )
    sim.add_argument("--fd", type=float, default=0.0, help="transit depolarization strength")
    sim.add_argument("--fg", type=float, default=0.0, help="merge-gate failure probability")
    sim.add_argument(
        "--memory",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="run the memory-assisted variant",
    )
    sim.add_argument("--t2", type=float, default=None, help="override memory T2 (seconds)")
    sim.add_argument("--format", choices=("text", "json"), default="text")
    sim.add_argument("--out", type=Path, default=None, help="write to file instead of stdout")
    sim.set_defaults(func=_cmd_simulate)

    sw = sub.add_parser("sweep", parents=[common], help="grid sweep over the noise knobs")
    sw.add_argument("--fd", default="0:0.3:11", help="f_D axis, VALUE or MIN:MAX:STEPS")
    sw.add_argument("--fg", default="0:0.3:11", help="f_G axis, VALUE or MIN:MAX:STEPS")
    sw.add_argument(
        "--memory",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="--memory for memory-only rows, --no-memory for memoryless only; default both",
    )
    sw.add_argument(
        "--t2",
        type=float,
        action="append",
        default=None,
        help="memory T2 in seconds (repeatable); default: each segment's configured T2",
    )
    sw.add_argument(
        "--seed",
        type=int,
        default=0,
        help="accepted for interface symmetry; the sweep itself is deterministic",
    )
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.add_argument("--out", type=Path, required=True, help="output file")
    sw.set_defaults(func=_cmd_sweep)

    yl = sub.add_parser(
        "yields", parents=[common], help="per-segment yields with and without memories"
    )
    yl.add_argument("--format", choices=("table", "csv", "json"), default="table")
    yl.add_argument("--out", type=Path, default=None, help="write to file instead of stdout")
    yl.set_defaults(func=_cmd_yields)

    mc = sub.add_parser(
        "mc-check", parents=[common], help="Monte Carlo oracles vs the closed forms"
    )
    mc.add_argument("--samples", type=int, default=10**6, help="samples per check")
    mc.add_argument("--seed", type=int, default=0, help="base RNG seed")
    mc.add_argument("--out", type=Path, default=None, help="write report to file")
    mc.set_defaults(func=_cmd_mc_check)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
