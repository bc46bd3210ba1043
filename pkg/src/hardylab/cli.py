"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 on configuration errors, 3 when a computation fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import acceptance
from ._util import rng, sample_halfplane
from .errors import ConfigError, HardyLabError, ParamError, UnknownCatalogEntry
from .hardy import e_n, hardy_norm, omega
from .operators import (Boundedness, classify_boundedness, empirical_norm_lower_bound, gamma_apply,
                        operator_norm, strong_continuity_probe)
from .semigroup import (FAMILIES, conjugate_generator_residual, delta_limit, family_lookup,
                        generator, model_function, sign_condition, verify_semigroup_law)
from .spectrum import (K_MAX, NuGrid, eigen_residual, exp_eigenfunction, point_spectrum,
                       power_eigenfunction)

SCHEMA_VERSION = "1.0"
COMMANDS = ("analyze", "norm", "semigroup-check", "spectrum", "suite", "sweep")
AXES = ("t", "p", "n", "nu")
CSV_HEADER = ("axis", "measured", "predicted", "abs_error")
CONTINUITY_TIMES = (1.0, 0.1, 0.01, 0.001)

DEFAULT_TOLERANCES = {
    "semigroup_law": 1e-9,
    "generator": 1e-6,
    "conjugate": 1e-6,
    "sign": 1e-9,
    "consistency": 1e-3,
    "norm": 1e-6,
    "continuity": 1e-2,
    "model": 1e-6,
    "eigen": 1e-6,
}

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_COMPUTE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    family: str = "dilation"
    params: dict = field(default_factory=dict)
    p: list = field(default_factory=lambda: [2.0])
    times: list = field(default_factory=lambda: [1.0])
    out: str | None = None
    fmt: str = "json"
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    k_max: int = K_MAX
    nu_grid: NuGrid | None = None
    spectrum: bool = False
    axis: str | None = None
    values: list = field(default_factory=list)
    criteria: list = field(default_factory=list)

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if any(not p > 0 for p in self.p):
            raise ConfigError("--p must be positive")
        if any(t < 0 for t in self.times):
            raise ConfigError("--t must be nonnegative")
        if any(not v > 0 for v in self.tolerances.values()):
            raise ConfigError("tolerances must be positive")
        if self.k_max < 0:
            raise ConfigError("--k-max must be >= 0")
        if self.command == "sweep":
            if self.axis not in AXES:
                raise ConfigError(f"--axis must be one of {', '.join(AXES)}")
            if not self.values:
                raise ConfigError("sweep needs a nonempty list of axis values")
        if (self.command == "spectrum" or self.spectrum) and any(p < 1 for p in self.p):
            raise ConfigError("the generator needs p >= 1")


# ---------------------------------------------------------------------------
# serialisation

def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and floats printed to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{dumps(str(k))}: {dumps(obj[k], indent, _level + 1)}" for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps([obj.real, obj.imag], indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if hasattr(obj, "as_json"):
        return dumps(obj.as_json(), indent, _level)
    if hasattr(obj, "value"):
        return dumps(obj.value, indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def check(name: str, value: float, tolerance: float, passed: bool) -> dict:
    return {"name": name, "value": float(value), "tolerance": float(tolerance), "pass": bool(passed)}


# ---------------------------------------------------------------------------
# commands

def _family(cfg: RunConfig):
    try:
        return family_lookup(cfg.family, cfg.params)
    except (UnknownCatalogEntry, ParamError) as exc:
        raise ConfigError(str(exc)) from exc


def _meta(cfg: RunConfig) -> dict:
    return {"name": cfg.family, "params": {k: v for k, v in sorted(cfg.params.items())}}


def _semigroup_checks(fam, tol) -> tuple[dict, list]:
    checks = []
    grid = sample_halfplane(100, rng(5))
    times = [(t, s) for t in (0.1, 0.5, 1.0) for s in (0.1, 0.5, 1.0)]
    law = verify_semigroup_law(fam, grid, times)
    checks.append(check("semigroup_law", law, tol["semigroup_law"], law < tol["semigroup_law"]))
    info = generator(fam)
    if info.closed_form_deviation is not None:
        dev = info.closed_form_deviation
        checks.append(check("generator_closed_form", dev, tol["generator"], dev <= tol["generator"]))
    conj = conjugate_generator_residual(fam, info=info)
    checks.append(check("conjugate_generator", conj, tol["conjugate"], conj <= tol["conjugate"]))
    sign = sign_condition(info)
    if sign is not None:
        checks.append(check("berkson_porta_sign", sign, tol["sign"], sign >= -tol["sign"]))
    summary = {"dw": info.dw.as_json() if info.dw is not None else None, "sign_condition": sign}
    try:
        summary["delta"] = delta_limit(info)
    except HardyLabError as exc:
        summary["delta"] = None
        summary["delta_note"] = f"{type(exc).__name__}: {exc}"
    return {"info": info, "summary": summary}, checks


def cmd_semigroup_check(cfg: RunConfig) -> dict:
    fam = _family(cfg)
    gen, checks = _semigroup_checks(fam, cfg.tolerances)
    report = {"family": _meta(cfg), "generator": gen["summary"], "checks": checks}
    if gen["info"].dw is not None:
        try:
            mf = model_function(fam, gen["info"])
            tol = cfg.tolerances["model"]
            checks.append(check("model_function_residual", mf.functional_residual, tol,
                                mf.functional_residual <= tol))
            report["model_function"] = {"kind": mf.kind, "coefficient": mf.coefficient}
        except HardyLabError as exc:
            report["model_function"] = {"error": f"{type(exc).__name__}: {exc}"}
    return report


def _norm_table(fam, cfg, verdict, checks) -> list:
    rows = []
    tol = cfg.tolerances["norm"]
    for p in cfg.p:
        for t in cfg.times:
            value = operator_norm(fam, p, t, verdict)
            row = {"p": p, "t": t, "norm": value}
            if verdict.delta is not None:
                predicted = math.exp(-verdict.delta * t / p)
                err = abs(value - predicted) / predicted
                row["delta_formula"] = predicted
                checks.append(check(f"norm_vs_delta[p={p:g},t={t:g}]", err, tol, err <= tol))
            rows.append(row)
    return rows


def cmd_norm(cfg: RunConfig) -> dict:
    fam = _family(cfg)
    verdict = classify_boundedness(fam, cfg.p[0])
    checks = []
    report = {"family": _meta(cfg), "boundedness": _verdict_json(verdict), "checks": checks}
    if verdict.verdict is Boundedness.BOUNDED:
        report["norm_table"] = _norm_table(fam, cfg, verdict, checks)
    return report


def _verdict_json(v) -> dict:
    return {"verdict": v.verdict.value, "phi1_inf": v.phi1_inf, "delta": v.delta,
            "phi1_inf_estimate": v.phi1_inf_estimate, "consistent": v.consistent, "note": v.note}


def cmd_analyze(cfg: RunConfig) -> dict:
    fam = _family(cfg)
    tol = cfg.tolerances
    gen, checks = _semigroup_checks(fam, tol)
    info = gen["info"]
    verdict = classify_boundedness(fam, cfg.p[0], info)
    report = {"family": _meta(cfg), "dw": gen["summary"]["dw"], "generator": gen["summary"],
              "boundedness": _verdict_json(verdict), "checks": checks}
    report["delta"] = gen["summary"]["delta"]
    report["phi1_inf"] = verdict.phi1_inf
    if verdict.verdict is Boundedness.BOUNDED:
        if verdict.consistent is not None:
            err = abs(math.exp(verdict.delta) - verdict.phi1_inf_estimate) / verdict.phi1_inf_estimate
            checks.append(check("phi1_inf_vs_exp_delta", err, tol["consistency"], err <= tol["consistency"]))
        report["norm_table"] = _norm_table(fam, cfg, verdict, checks)
        report["norm"] = report["norm_table"][0]["norm"]
        continuity = {}
        for p in cfg.p:
            if p < 1:
                continue
            f = e_n(0, p)
            res = strong_continuity_probe(fam, f, p, CONTINUITY_TIMES)
            final = res[-1] / hardy_norm(f, p).value
            decreasing = all(b < a for a, b in zip(res, res[1:])) or max(res) == 0
            continuity[f"p={p:g}"] = {"f": f.label, "t": list(CONTINUITY_TIMES), "residuals": res}
            checks.append(check(f"strong_continuity[p={p:g}]", final, tol["continuity"],
                                decreasing and final < tol["continuity"]))
        report["continuity"] = continuity
    if cfg.spectrum:
        report["spectrum"] = _spectrum(fam, cfg, info, checks)
    return report


def _spectrum(fam, cfg, info, checks) -> dict:
    rep = point_spectrum(fam, cfg.p[0], k_max=cfg.k_max, nu_grid=cfg.nu_grid, info=info)
    tol = cfg.tolerances["eigen"]
    for c in rep.candidates:
        if c.ode_residual is not None:
            worst = max(c.ode_residual, c.flow_residual)
            checks.append(check(f"eigen_residual[{c.label}]", worst, tol, worst <= tol))
    return rep.as_json()


def cmd_spectrum(cfg: RunConfig) -> dict:
    fam = _family(cfg)
    checks = []
    info = generator(fam)
    return {"family": _meta(cfg), "p": cfg.p[0], "spectrum": _spectrum(fam, cfg, info, checks),
            "checks": checks}


def cmd_suite(cfg: RunConfig, stream=None) -> dict:
    results = []
    for number in cfg.criteria or range(1, len(acceptance.CRITERIA) + 1):
        res = acceptance.run_criterion(number)
        if stream is not None:
            print(res.line(), file=stream, flush=True)
        results.append(res)
    checks = [check(f"criterion_{r.number:02d}", r.measured, r.tolerance, r.passed) for r in results]
    return {"criteria": [r.as_json() for r in results], "checks": checks}


# ---------------------------------------------------------------------------
# sweeps

def sweep_rows(cfg: RunConfig) -> list[tuple]:
    fam = _family(cfg)
    p = cfg.p[0]
    t = cfg.times[0]
    rows = []
    if cfg.axis in ("t", "p"):
        verdict = classify_boundedness(fam, p)
        for v in cfg.values:
            tt, pp = (float(v), p) if cfg.axis == "t" else (t, float(v))
            predicted = operator_norm(fam, pp, tt, verdict)
            measured = empirical_norm_lower_bound(fam, pp, tt, [e_n(0, pp)], verdict)
            rows.append((float(v), measured, predicted, abs(measured - predicted)))
    elif cfg.axis == "n":
        info = generator(fam, resolve_dw=False)
        g_omega = hardy_norm(gamma_apply(info, omega(p)), p).value
        for v in cfg.values:
            n = int(v)
            measured = hardy_norm(gamma_apply(info, e_n(n, p)), p).value
            predicted = n / math.pi ** (1 / p) * g_omega
            rows.append((n, measured, predicted, abs(measured - predicted)))
    else:
        info = generator(fam)
        model = model_function(fam, info)
        grid = sample_halfplane(40, rng(16))
        for v in cfg.values:
            nu = complex(v)
            if model.kind == "koenigs":
                if nu.imag != 0 or nu.real != int(nu.real) or nu.real < 0:
                    raise ConfigError("interior Denjoy-Wolff point: nu must be a nonnegative integer k")
                f, lam = power_eigenfunction(model.h, int(nu.real)), model.coefficient * nu
            else:
                f, lam = exp_eigenfunction(model.h, nu), model.coefficient * nu
            measured = max(eigen_residual(fam, f, lam, grid, info=info))
            rows.append((v, measured, 0.0, measured))
    return rows


def write_csv(rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for axis, measured, predicted, err in rows:
        writer.writerow([_csv_num(axis), _csv_num(measured), _csv_num(predicted), _csv_num(err)])


def _csv_num(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# argument handling

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _key_value(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise ConfigError(f"expected key=value, got {text!r}")
    return key.strip(), value.strip()


def _number(text: str, flag: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{flag}: not a number: {text!r}") from None


def _param_value(text: str):
    try:
        return float(text)
    except ValueError:
        try:
            return complex(text.replace("i", "j"))
        except ValueError:
            raise ConfigError(f"--param: not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hardylab", description="Composition semigroups on Hardy spaces of the upper half-plane.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--family", default="dilation", help="catalog family name")
        sp.add_argument("--param", action="append", default=[], metavar="K=V", help="family parameter (repeatable)")
        sp.add_argument("--p", action="append", default=[], help="Hardy exponent (repeatable)")
        sp.add_argument("--t", action="append", default=[], help="semigroup time (repeatable)")
        sp.add_argument("--k-max", type=int, default=K_MAX, help="largest power k for interior spectra")
        sp.add_argument("--nu-grid", default=None, help="re_min:re_max:n,im_min:im_max:n")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default=None)
        sp.add_argument("--tol", action="append", default=[], metavar="KEY=V", help="tolerance override")
        if name == "analyze":
            sp.add_argument("--spectrum", action="store_true", help="include the point spectrum")
        if name == "sweep":
            sp.add_argument("--axis", required=True, choices=AXES)
            sp.add_argument("--values", default=None, help="comma-separated axis values")
        if name == "suite":
            sp.add_argument("--criterion", type=int, action="append", default=[], help="run only these numbers")
    return parser


VALUE_FLAGS = ("--family", "--param", "--p", "--t", "--k-max", "--nu-grid", "--out", "--format",
               "--tol", "--axis", "--values", "--criterion")


def _attach_values(argv) -> list[str]:
    """Rewrite ``--flag value`` as ``--flag=value`` so values may start with '-'."""
    argv = list(argv)
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(_attach_values(argv))
    tolerances = dict(DEFAULT_TOLERANCES)
    for item in ns.tol:
        key, value = _key_value(item)
        if key not in tolerances:
            raise ConfigError(f"--tol: unknown key {key!r}; known: {', '.join(sorted(tolerances))}")
        tolerances[key] = _number(value, "--tol")
    params = {}
    for item in ns.param:
        key, value = _key_value(item)
        params[key] = _param_value(value)
    fmt = ns.format or ("csv" if ns.command == "sweep" else "json")
    if ns.command != "sweep" and fmt == "csv":
        raise ConfigError("--format csv is only available for sweep")
    cfg = RunConfig(
        command=ns.command, family=ns.family, params=params,
        p=[_number(v, "--p") for v in ns.p] or [2.0],
        times=[_number(v, "--t") for v in ns.t] or [1.0],
        out=ns.out, fmt=fmt, tolerances=tolerances, k_max=ns.k_max,
        nu_grid=NuGrid.parse(ns.nu_grid) if ns.nu_grid else None,
        spectrum=getattr(ns, "spectrum", False),
        axis=getattr(ns, "axis", None),
        criteria=getattr(ns, "criterion", []),
    )
    if ns.command == "sweep":
        cfg.values = _axis_values(ns, cfg)
    cfg.validate()
    return cfg


def _axis_values(ns, cfg) -> list:
    if ns.values is not None:
        raw = [v.strip() for v in ns.values.split(",") if v.strip()]
    elif cfg.axis == "t":
        raw = list(ns.t)
    elif cfg.axis == "p":
        raw = list(ns.p)
    else:
        raw = []
    if cfg.axis == "nu":
        try:
            return [complex(v.replace("i", "j")) for v in raw]
        except ValueError as exc:
            raise ConfigError(f"--values: {exc}") from None
    if cfg.axis == "n":
        vals = [_number(v, "--values") for v in raw]
        if any(v != int(v) or v < 1 for v in vals):
            raise ConfigError("n values must be positive integers")
        return [int(v) for v in vals]
    return [_number(v, "--values") for v in raw]


HANDLERS = {"analyze": cmd_analyze, "norm": cmd_norm, "semigroup-check": cmd_semigroup_check,
            "spectrum": cmd_spectrum}


def run(cfg: RunConfig, stream=None) -> tuple[str, int]:
    """Execute ``cfg`` and return (serialised output, exit status)."""
    if cfg.command == "sweep":
        buf = io.StringIO()
        rows = sweep_rows(cfg)
        if cfg.fmt == "csv":
            write_csv(rows, buf)
            return buf.getvalue(), EXIT_OK
        report = {"axis": cfg.axis, "rows": [dict(zip(CSV_HEADER, r)) for r in rows]}
        return _finish(report, cfg), EXIT_OK
    report = cmd_suite(cfg, stream) if cfg.command == "suite" else HANDLERS[cfg.command](cfg)
    failures = [c["name"] for c in report["checks"] if not c["pass"]]
    report["failures"] = failures
    return _finish(report, cfg), EXIT_FAILED if failures else EXIT_OK


def _finish(report: dict, cfg: RunConfig) -> str:
    report["schema_version"] = SCHEMA_VERSION
    report["command"] = cfg.command
    report["tolerances"] = dict(cfg.tolerances)
    return dumps(report) + "\n"


def _error_report(kind: str, exc: Exception, operation: str | None = None) -> str:
    return dumps({"schema_version": SCHEMA_VERSION, "error": kind, "type": type(exc).__name__,
                  "operation": operation, "message": str(exc)}) + "\n"


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        sys.stderr.write(_error_report("ConfigError", exc))
        return EXIT_CONFIG
    try:
        text, status = run(cfg, stream=sys.stderr if cfg.command == "suite" else None)
    except ConfigError as exc:
        sys.stderr.write(_error_report("ConfigError", exc))
        return EXIT_CONFIG
    except (HardyLabError, ArithmeticError, ValueError) as exc:
        sys.stderr.write(_error_report("ComputeError", exc, cfg.command))
        return EXIT_COMPUTE
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
