"""Command-line front end: JSON config in, schema-versioned JSON result out.

Exit codes: 0 success, 2 validation failure (config schema or precondition),
3 solver non-convergence.  Identical configs (including seeds) produce
byte-identical result files.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .densities import density_from_spec, density_to_spec, evaluate, fourier_coeffs
from .errors import ConvergenceError, ValidationError
from .extrapolate import extrapolate_noisy_gauss
from .factorization import factorize_reciprocal, impulse_residual
from .fourier import theta_grid
from .minimax import (
    DensityClassF,
    DensityClassG,
    least_favorable_eigen,
    least_favorable_stable,
    least_favorable_stable_noiseless,
)
from .montecarlo import SimulationConfig, simulate_gauss
from .stable import StableProblem, solve_stable_noiseless, solve_stable_noisy

SCHEMA_VERSION = "stable-extrap/1"

_NUM = {"type": "number"}
_POSINT = {"type": "integer", "minimum": 1}
_DENSITY_REF = {"$ref": "#/$defs/density"}
_DEFS = {
    "ma_density": {
        "type": "object",
        "properties": {
            "kind": {"const": "ma"},
            "coeffs": {"type": "array", "items": _NUM},
            "scale": {"type": "number", "minimum": 0},
        },
        "required": ["kind", "coeffs"],
        "additionalProperties": False,
    },
    "density": {
        "oneOf": [
            {
                "type": "object",
                "properties": {"kind": {"const": "white"},
                               "level": {"type": "number", "minimum": 0}},
                "required": ["kind", "level"],
                "additionalProperties": False,
            },
            {"$ref": "#/$defs/ma_density"},
            {
                "type": "object",
                "properties": {
                    "kind": {"const": "ar"},
                    "coeffs": {"type": "array", "items": _NUM},
                    "scale": {"type": "number", "minimum": 0},
                },
                "required": ["kind", "coeffs"],
                "additionalProperties": False,
            },
            {
                "type": "object",
                "properties": {
                    "kind": {"const": "rational"},
                    "numerator": {"$ref": "#/$defs/ma_density"},
                    "denominator": {"$ref": "#/$defs/ma_density"},
                },
                "required": ["kind", "numerator", "denominator"],
                "additionalProperties": False,
            },
            {
                "type": "object",
                "properties": {"kind": {"const": "tabulated"},
                               "values": {"type": "array", "items": _NUM}},
                "required": ["kind", "values"],
                "additionalProperties": False,
            },
            {
                "type": "object",
                "properties": {
                    "kind": {"const": "contaminated"},
                    "base": _DENSITY_REF,
                    "contamination": _DENSITY_REF,
                    "epsilon": {"type": "number", "minimum": 0, "maximum": 1},
                },
                "required": ["kind", "base", "contamination", "epsilon"],
                "additionalProperties": False,
            },
        ]
    },
}

_A_FIELD = {"type": "array", "items": _NUM, "minItems": 1}

COMMAND_SCHEMAS = {
    "fourier": {
        "type": "object",
        "$defs": _DEFS,
        "properties": {
            "f": _DENSITY_REF,
            "max_lag": {"type": "integer", "minimum": 0},
            "grid_size": _POSINT,
        },
        "required": ["f", "max_lag"],
        "additionalProperties": False,
    },
    "factorize": {
        "type": "object",
        "$defs": _DEFS,
        "properties": {
            "f": _DENSITY_REF,
            "order": _POSINT,
            "grid_size": _POSINT,
            "tol": _NUM,
        },
        "required": ["f"],
        "additionalProperties": False,
    },
    "extrapolate": {
        "type": "object",
        "$defs": _DEFS,
        "properties": {
            "alpha": {"type": "number", "exclusiveMinimum": 1, "maximum": 2},
            "f": _DENSITY_REF,
            "g": _DENSITY_REF,
            "a": _A_FIELD,
            "size": _POSINT,
            "num_coeffs": _POSINT,
            "grid_size": _POSINT,
            "max_iter": _POSINT,
            "csv_out": {"type": "string"},
        },
        "required": ["alpha", "f", "a"],
        "additionalProperties": False,
    },
    "minimax": {
        "type": "object",
        "$defs": _DEFS,
        "properties": {
            "route": {"enum": ["noisy", "noiseless", "eigen"]},
            "alpha": {"type": "number", "exclusiveMinimum": 1, "maximum": 2},
            "a": _A_FIELD,
            "beta": {"type": "number", "minimum": 1},
            "p1": {"type": "number", "exclusiveMinimum": 0},
            "epsilon": {"type": "number", "minimum": 0, "maximum": 1},
            "g1": _DENSITY_REF,
            "p2": {"type": "number", "exclusiveMinimum": 0},
            "p": {"type": "number", "exclusiveMinimum": 0},
            "mode": {"enum": ["lower-triangular", "symmetric"]},
            "size": _POSINT,
            "num_coeffs": _POSINT,
            "inner_size": _POSINT,
            "grid_size": _POSINT,
            "tol": _NUM,
            "max_iter": _POSINT,
            "seed": {"type": "integer"},
        },
        "required": ["route", "a"],
        "additionalProperties": False,
    },
    "simulate": {
        "type": "object",
        "$defs": _DEFS,
        "properties": {
            "f": _DENSITY_REF,
            "g": _DENSITY_REF,
            "a": _A_FIELD,
            "replicates": _POSINT,
            "horizon": _POSINT,
            "seed": {"type": "integer"},
            "size": _POSINT,
            "grid_size": _POSINT,
        },
        "required": ["f", "a"],
        "additionalProperties": False,
    },
}


def _complex_pair(values):
    arr = np.asarray(values, dtype=complex)
    return {"re": [float(v) for v in arr.real], "im": [float(v) for v in arr.imag]}


def _characteristic_dict(h):
    return {
        "alpha": h.alpha,
        "grid_size": h.grid_size,
        "negative_coeffs": _complex_pair(h.negative_coeffs),
        "grid_values": _complex_pair(h.grid_values),
        "one_sidedness": h.one_sidedness_residual(),
    }


def _clean(obj):
    """Make diagnostics JSON-serializable."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, float) and not np.isfinite(obj):
        return repr(obj)
    return obj


def _run_fourier(cfg):
    grid_size = cfg.setdefault("grid_size", 2048)
    f = density_from_spec(cfg["f"])
    coeffs = fourier_coeffs(evaluate(f, grid_size), cfg["max_lag"])
    return {"lags": coeffs.lags.tolist(), "coeffs": _complex_pair(coeffs.values)}


def _run_factorize(cfg):
    grid_size = cfg.setdefault("grid_size", 2048)
    order = cfg.setdefault("order", grid_size // 4)
    tol = cfg.setdefault("tol", 1e-6)
    f = density_from_spec(cfg["f"])
    fact = factorize_reciprocal(f, order=order, grid_size=grid_size, tol=tol)
    return {
        "psi": _complex_pair(fact.psi),
        "phi": _complex_pair(fact.phi),
        "residual": fact.residual,
        "impulse_residual": impulse_residual(fact),
    }


def _run_extrapolate(cfg):
    alpha = cfg["alpha"]
    f = density_from_spec(cfg["f"])
    g = density_from_spec(cfg["g"]) if "g" in cfg else None
    a = cfg["a"]
    grid_size = cfg.setdefault("grid_size", 2048)
    size = cfg.setdefault("size", 128)
    if alpha == 2.0:
        from .densities import White

        rep = extrapolate_noisy_gauss(f, g if g is not None else White(0.0), a,
                                      size=size, grid_size=grid_size)
        result = {
            "error": rep.error_value,
            "c": _complex_pair(rep.c),
            "h": _characteristic_dict(rep.h),
            "diagnostics": _clean(rep.diagnostics),
        }
        h = rep.h
    else:
        num_coeffs = cfg.setdefault("num_coeffs", 4 * len(a))
        problem = StableProblem(alpha=alpha, f=f, g=g, a=a,
                                num_coeffs=num_coeffs, grid_size=grid_size)
        max_iter = cfg.setdefault("max_iter", 80)
        if g is None:
            sol = solve_stable_noiseless(problem, max_iter=max_iter)
        else:
            sol = solve_stable_noisy(problem, max_iter=max_iter)
        result = {
            "error": sol.error_value,
            "c": _complex_pair(sol.c_coeffs),
            "h": _characteristic_dict(sol.h),
            "kkt_residual": sol.kkt_residual,
            "trace_summary": {
                "iterations": len(sol.solver_trace),
                "final": _clean(sol.solver_trace[-1]) if sol.solver_trace else None,
            },
            "diagnostics": _clean(sol.diagnostics),
        }
        h = sol.h
    if "csv_out" in cfg:
        theta = theta_grid(h.grid_size)
        with open(cfg["csv_out"], "w") as fh:
            fh.write("theta,re_h,im_h\n")
            for t, v in zip(theta, h.grid_values):
                fh.write(f"{t!r},{v.real!r},{v.imag!r}\n")
    return result


def _minimax_common(sol):
    out = {
        "error": sol.error_value,
        "f0": list(sol.f0.grid_values),
        "iterations": sol.iterations,
        "residuals": _clean(sol.residuals),
    }
    if sol.g0 is not None:
        out["g0"] = list(sol.g0.grid_values)
    if sol.h0 is not None:
        out["h0"] = _characteristic_dict(sol.h0)
    if sol.gamma1 is not None:
        out["gamma1"] = sol.gamma1
    if sol.gamma2 is not None:
        out["gamma2"] = sol.gamma2
    if sol.phi1 is not None:
        out["phi1"] = _clean(sol.phi1)
    if sol.certificate is not None:
        out["certificate"] = _clean(sol.certificate)
    return out


def _run_minimax(cfg, mode_override=None):
    route = cfg["route"]
    a = cfg["a"]
    grid_size = cfg.setdefault("grid_size", 512)
    seed = cfg.setdefault("seed", 20260809)
    if route == "eigen":
        mode = mode_override or cfg.setdefault("mode", "lower-triangular")
        cfg["mode"] = mode
        sol = least_favorable_eigen(a, p=cfg.setdefault("p", 1.0),
                                    size=cfg.get("size"), mode=mode,
                                    grid_size=grid_size)
        out = _minimax_common(sol)
        out.update({
            "mode": sol.mode,
            "top_value": sol.top_value,
            "phi": _complex_pair(sol.phi_vector),
            "ma_weights": _complex_pair(sol.ma_weights),
            "degenerate": sol.degenerate,
            "notes": list(sol.notes),
        })
        return out
    alpha = cfg.setdefault("alpha", 2.0)
    class_f = DensityClassF(beta=cfg.setdefault("beta", 2.0),
                            p1=cfg.setdefault("p1", 1.0))
    kwargs = dict(num_coeffs=cfg.get("num_coeffs"), grid_size=grid_size,
                  tol=cfg.setdefault("tol", 1e-6),
                  max_iter=cfg.setdefault("max_iter", 500),
                  certificate_seed=seed)
    if "inner_size" in cfg:
        kwargs["inner_size"] = cfg["inner_size"]
    if route == "noiseless":
        sol = least_favorable_stable_noiseless(alpha, class_f, a, **kwargs)
        return _minimax_common(sol)
    if "g1" not in cfg or "p2" not in cfg:
        raise ValidationError("noisy route requires 'g1' and 'p2' in the config")
    class_g = DensityClassG(epsilon=cfg.setdefault("epsilon", 0.0),
                            g1=density_from_spec(cfg["g1"]), p2=cfg["p2"])
    sol = least_favorable_stable(alpha, class_f, class_g, a, **kwargs)
    return _minimax_common(sol)


def _run_simulate(cfg):
    f = density_from_spec(cfg["f"])
    g = density_from_spec(cfg["g"]) if "g" in cfg else None
    sim = SimulationConfig(
        f=f, g=g, a=cfg["a"],
        replicates=cfg.setdefault("replicates", 100_000),
        horizon=cfg.get("horizon"),
        seed=cfg.setdefault("seed", 0),
        size=cfg.setdefault("size", 128),
        grid_size=cfg.setdefault("grid_size", 2048),
    )
    rep = simulate_gauss(sim)
    return {
        "empirical_mse": rep.empirical_mse,
        "theoretical": rep.theoretical,
        "standard_error": rep.standard_error,
        "z_score": rep.z_score,
        "replicates": rep.replicates,
        "seed": rep.seed,
        "diagnostics": _clean(rep.diagnostics),
    }


_RUNNERS = {
    "fourier": _run_fourier,
    "factorize": _run_factorize,
    "extrapolate": _run_extrapolate,
    "minimax": _run_minimax,
    "simulate": _run_simulate,
}


def _validate_config(command, cfg):
    import jsonschema

    try:
        jsonschema.validate(cfg, COMMAND_SCHEMAS[command])
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ValidationError(f"config field '{path}': {exc.message}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stable-extrap",
        description="Optimal and minimax-robust linear extrapolation "
                    "for heavy-tailed sequences with noisy observations",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("fourier", "Fourier coefficients of a spectral density"),
        ("factorize", "one-sided factorization of a density's reciprocal"),
        ("extrapolate", "optimal estimate: response, coefficients and error"),
        ("minimax", "least favorable densities and minimax response"),
        ("simulate", "Monte Carlo check of the alpha = 2 error value"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=True, help="path to the JSON config")
        p.add_argument("--out", help="result file (default: stdout)")
        p.add_argument("--verbose", action="store_true")
        if name == "minimax":
            p.add_argument("--mode", choices=["lower-triangular", "symmetric"],
                           help="matrix interpretation for the eigen route")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
        return 2

    try:
        _validate_config(args.command, cfg)
        if args.command == "minimax":
            result = _run_minimax(cfg, mode_override=getattr(args, "mode", None))
        else:
            result = _RUNNERS[args.command](cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: solver did not converge: {exc}", file=sys.stderr)
        return 3

    document = {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "config": cfg,
        "result": result,
    }
    payload = json.dumps(document, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
        if args.verbose:
            print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
