"""Command-line front end: ``podolsky <command> [options]``.

Every command writes either CSV or a JSON report of the form
``{"config": ..., "results": ..., "provenance": {"constants_version": ...}}``.
Floats are printed in scientific notation with 12 significant digits, so
identical configurations give byte-identical output.

Exit status: 0 on success, 1 on usage errors, 2 on domain or estimator errors.
"""
import argparse
import json
import math
import sys

import numpy as np

from . import fields, hydrogen, interferometry, radial_oracle, specfun
from .constants import CODATA2018, CONSTANTS_VERSION, Length, length_to_inverse_energy
from .errors import PodolskyError


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.11e}"


def _json_value(obj):
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_json_value(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in obj) + "]"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    x = float(obj)
    return fmt(x) if math.isfinite(x) else "null"


def dump_json(config, results):
    report = {"config": config, "results": results,
              "provenance": {"constants_version": CONSTANTS_VERSION}}
    return _json_value(report) + "\n"


def dump_csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _record_csv(record):
    return dump_csv(list(record), [list(record.values())])


# ---------------------------------------------------------------- option sets

GEOMETRY_KEYS = ("beam", "R", "r0", "s", "speed", "segment_length", "delta_v")
EPSILON_KEYS = ("epsilon", "one_minus_epsilon")

DEFAULTS = {
    "constants": {"format": "json"},
    "bessel": {"x": None, "start": 0.0, "stop": 10.0, "num": 11, "format": "csv"},
    "profile": {"beam": "H+", "R": None, "r0": None, "s": None, "speed": None,
                "segment_length": None, "delta_v": None, "a": None, "epsilon": None,
                "one_minus_epsilon": None, "v_total": 1.0, "samples": 100,
                "point_charge": False, "r_max": None, "format": "csv"},
    "phase": {"beam": "H+", "R": None, "r0": None, "s": None, "speed": None,
              "segment_length": None, "delta_v": None, "a": None, "epsilon": None,
              "one_minus_epsilon": None, "format": "json"},
    "estimate": {"beam": "H+", "R": None, "r0": None, "s": None, "speed": None,
                 "segment_length": None, "delta_v": None, "delta_phi": None,
                 "epsilon": None, "one_minus_epsilon": None, "format": "json"},
    "sweep": {"beam": "H+", "R": None, "r0": None, "s": None, "speed": None,
              "segment_length": None, "delta_v": None, "n_epsilon": 100, "n_phi": 100,
              "eps_min": 0.001, "eps_max": 0.999, "phi_min": 1e-4, "phi_max": 1e-2,
              "workers": 1, "format": "csv"},
    "mass": {"a": None, "format": "json"},
    "hydrogen": {"a": None, "sigma_rel": None, "format": "json"},
    "oracle": {"beam": "H+", "R": None, "r0": None, "s": None, "a": None,
               "epsilon": None, "one_minus_epsilon": None, "v_total": 1.0,
               "steps": 100_000, "tol": 1e-6, "format": "csv"},
}

REQUIRED = {"profile": ("a",), "phase": ("a",), "estimate": ("delta_phi",),
            "mass": ("a",), "oracle": ("a",)}


def _add_geometry(p, with_beam_kinematics=True):
    p.add_argument("--beam", help="preset: H+ or Cs+")
    p.add_argument("--R", help="inner tube radius, e.g. 27cm")
    p.add_argument("--r0", help="inner arm radius")
    p.add_argument("--s", help="arm separation")
    if with_beam_kinematics:
        p.add_argument("--speed", type=float, help="ion speed (m/s)")
        p.add_argument("--segment-length", help="horizontal segment length")
        p.add_argument("--delta-v", type=float, help="voltage step (V)")


def _add_epsilon(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--epsilon", type=float, help="phi(0) / V_total")
    g.add_argument("--one-minus-epsilon", type=float, help="1 - epsilon, for eps near 1")


def build_parser():
    parser = _Parser(prog="podolsky", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat JSON file of option values; flags override it")
        p.add_argument("--output", "-o", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"))
        return p

    command("constants", "dump the constants table")

    p = command("bessel", "tabulate I0, I1, K0, K1 and scaled forms")
    p.add_argument("--x", type=float, nargs="+", action="extend")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--num", type=int)

    p = command("profile", "sample the cylinder (or point-charge) potential and field")
    _add_geometry(p)
    p.add_argument("--a", help="Podolsky length, e.g. 0.069cm")
    _add_epsilon(p)
    p.add_argument("--v-total", type=float, help="V0 + Vg at r = R (V)")
    p.add_argument("--samples", type=int)
    p.add_argument("--point-charge", action="store_const", const=True,
                   help="sample -(1/r)(1 - exp(-r/a)) instead (natural units, fm)")
    p.add_argument("--r-max", help="outer radius for --point-charge (default 10 a)")

    p = command("phase", "phase difference for a voltage step")
    _add_geometry(p)
    p.add_argument("--a")
    _add_epsilon(p)

    p = command("estimate", "estimate a from a measured phase step")
    _add_geometry(p)
    p.add_argument("--delta-phi", type=float, help="phase step (rad)")
    _add_epsilon(p)

    p = command("sweep", "estimate a over an (epsilon, delta_phi) grid")
    _add_geometry(p)
    p.add_argument("--n-epsilon", type=int)
    p.add_argument("--n-phi", type=int)
    p.add_argument("--eps-min", type=float)
    p.add_argument("--eps-max", type=float)
    p.add_argument("--phi-min", type=float)
    p.add_argument("--phi-max", type=float)
    p.add_argument("--workers", type=int)

    p = command("mass", "photon mass hbar / (a c)")
    p.add_argument("--a")

    p = command("hydrogen", "variational hydrogen ground state or bound on a")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--a", help="Podolsky length (profile mode), e.g. 5fm")
    mode.add_argument("--sigma-rel", type=float, help="relative ground-state uncertainty (bound mode)")

    p = command("oracle", "integrate the radial ODE and compare with the closed form")
    _add_geometry(p, with_beam_kinematics=False)
    p.add_argument("--a")
    _add_epsilon(p)
    p.add_argument("--v-total", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--tol", type=float)
    return parser


def resolve_config(argv):
    """Parse ``argv``, merge a ``--config`` file, and return (command, config, output)."""
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise UsageError("a command is required")
    defaults = DEFAULTS[args.command]
    config = dict(defaults)
    if args.config:
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a flat JSON object")
        file_cfg = dict(file_cfg)
        if file_cfg.pop("command", args.command) != args.command:
            raise UsageError("config file is for a different command")
        unknown = sorted(set(file_cfg) - set(defaults))
        if unknown:
            raise UsageError(f"unknown config keys for {args.command}: {', '.join(unknown)}")
        config.update(file_cfg)
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    for key in REQUIRED.get(args.command, ()):
        if config.get(key) is None:
            raise UsageError(f"{args.command} requires --{key.replace('_', '-')}")
    if args.command == "hydrogen" and config["a"] is None and config["sigma_rel"] is None:
        config["sigma_rel"] = hydrogen.DEFAULT_SIGMA_REL
    if args.command == "hydrogen" and config["a"] is not None and config["sigma_rel"] is not None:
        raise UsageError("hydrogen takes either --a or --sigma-rel, not both")
    if config.get("epsilon") is not None and config.get("one_minus_epsilon") is not None:
        raise UsageError("give either epsilon or one_minus_epsilon, not both")
    if config.get("format") not in ("csv", "json"):
        raise UsageError("format must be csv or json")
    return args.command, config, args.output


# ---------------------------------------------------------------- handlers

def _length(text, default_unit="m"):
    return Length.parse(text, default_unit)


def _setup(config):
    preset = interferometry.get_preset(config.get("beam") or "H+")
    g = preset.geometry
    geom = fields.CylinderGeometry(
        R=_length(config["R"]).meters if config.get("R") else g.R,
        r0=_length(config["r0"]).meters if config.get("r0") else g.r0,
        s=_length(config["s"]).meters if config.get("s") else g.s,
    )
    b = preset.beam
    beam = interferometry.BeamSpec(
        b.label,
        speed=config.get("speed") or b.speed,
        segment_length=(_length(config["segment_length"]).meters
                        if config.get("segment_length") else b.segment_length),
        charge=b.charge,
    )
    delta_v = config.get("delta_v") or preset.delta_V
    return geom, beam, delta_v


def _eps_kwargs(config, required=True):
    if config.get("one_minus_epsilon") is not None:
        return {"one_minus_epsilon": config["one_minus_epsilon"]}
    if config.get("epsilon") is not None:
        return {"epsilon": config["epsilon"]}
    if required:
        raise UsageError("epsilon or one_minus_epsilon is required")
    return {}


def cmd_constants(config):
    table = CODATA2018.to_dict()
    if config["format"] == "csv":
        return dump_csv(["name", "value"], [[k, v] for k, v in table.items()])
    return dump_json(config, table)


def cmd_bessel(config):
    xs = config["x"] if config["x"] is not None else \
        np.linspace(config["start"], config["stop"], int(config["num"])).tolist()
    rows = [specfun.evaluate(x) for x in xs]
    keys = ["x", "i0", "i1", "k0", "k1", "i0_scaled", "i1_scaled", "k0_scaled", "k1_scaled"]
    if config["format"] == "json":
        return dump_json(config, [{k: r[k] for k in keys} for r in rows])
    return dump_csv(keys, [[r[k] for k in keys] for r in rows])


def cmd_profile(config):
    a_len = _length(config["a"])
    if config["point_charge"]:
        a_fm = a_len.fm
        r_max = _length(config["r_max"]).fm if config.get("r_max") else 10 * a_fm
        prof = fields.point_charge_profile(a_fm, r_max, config["samples"])
    else:
        geom, _, _ = _setup(config)
        sol = fields.CylinderSolution(a_len.meters, config["v_total"], **_eps_kwargs(config))
        prof = fields.cylinder_profile(sol, geom, config["samples"])
    if config["format"] == "json":
        return dump_json(config, {"header": list(prof.header), "rows": [list(r) for r in prof.rows()]})
    return dump_csv(prof.header, prof.rows())


def cmd_phase(config):
    geom, beam, delta_v = _setup(config)
    a = _length(config["a"]).meters
    eps = _eps_kwargs(config)
    record = {
        "a_m": a,
        "R_over_a": geom.R / a,
        "delta_phi_rad": interferometry.phase_difference(geom, beam, a, delta_V=delta_v, **eps),
        "delta_phi_asymptotic_rad": interferometry.phase_difference_asymptotic(
            geom, beam, a, delta_V=delta_v, **eps),
    }
    return _record_csv(record) if config["format"] == "csv" else dump_json(config, record)


def cmd_estimate(config):
    geom, beam, delta_v = _setup(config)
    eps = _eps_kwargs(config)
    a = interferometry.estimate_a(geom, beam, delta_v, config["delta_phi"], **eps)
    scale = interferometry.photon_mass(a)
    record = {"a_m": a, "a_cm": a * 100, "R_over_a": geom.R / a, "r0_over_a": geom.r0 / a,
              "denominator": interferometry.inversion_denominator(
                  geom, beam, delta_v, config["delta_phi"], **eps),
              "mass_kg": scale.mass_kg, "mass_eV": scale.mass_eV}
    return _record_csv(record) if config["format"] == "csv" else dump_json(config, record)


def cmd_sweep(config):
    geom, beam, delta_v = _setup(config)
    grid = interferometry.SweepGrid.default(
        config["n_epsilon"], config["n_phi"],
        (config["eps_min"], config["eps_max"]), (config["phi_min"], config["phi_max"]))
    table = interferometry.sweep(geom, beam, delta_v, grid, workers=config["workers"])
    header = ("epsilon", "delta_phi_rad", "a_m", "status")
    if config["format"] == "json":
        return dump_json(config, {"a_min_m": table.a_min, "a_max_m": table.a_max,
                                  "masked_cells": int(table.error_mask.sum()),
                                  "header": list(header), "rows": [list(r) for r in table.rows()]})
    return dump_csv(header, table.rows())


def cmd_mass(config):
    length = _length(config["a"])
    scale = interferometry.photon_mass(length.meters)
    record = {"a_m": scale.a, "mass_kg": scale.mass_kg, "mass_eV": scale.mass_eV,
              "mass_MeV": 1.0 / length_to_inverse_energy(length)}
    return _record_csv(record) if config["format"] == "csv" else dump_json(config, record)


def cmd_hydrogen(config):
    if config["a"] is not None:
        length = _length(config["a"], default_unit="fm")
        model = hydrogen.HydrogenModel.physical(length)
        res = hydrogen.minimize(model)
        g_plus, g_minus = hydrogen.truncated_roots(model)
        record = {
            "mode": "profile", "a_fm": length.fm, "a_over_bohr": model.reduced_a,
            "perturbative_regime": model.perturbative,
            "roots_MeV": res.roots, "root_energies_eV": [hydrogen.to_ev(e) for e in res.energies],
            "gamma_star_MeV": res.gamma_star, "gamma_bracket_MeV": res.gamma_bracket,
            "stationarity_residual": res.residual,
            "E_star_eV": hydrogen.to_ev(res.E_star),
            "E_star_quadrature_eV": hydrogen.to_ev(hydrogen.energy_quadrature(model, res.gamma_star)),
            "coulomb_shift_eV": hydrogen.to_ev(res.coulomb_shift),
            "perturbative_gamma_MeV": res.perturbative_gamma,
            "perturbative_E_eV": hydrogen.to_ev(res.perturbative_E),
            "perturbative_error_eV": hydrogen.to_ev(res.perturbative_error),
            "gamma_minus_first_order_MeV": g_minus,
            "E_gamma_minus_formula_eV": hydrogen.to_ev(hydrogen.negative_branch_energy(model)),
        }
    else:
        bound = hydrogen.bound_a(config["sigma_rel"])
        record = {"mode": "bound", "sigma_rel": bound.sigma_rel,
                  "a_max_fm": bound.a_max, "mass_min_MeV": bound.mass_min}
    if config["format"] == "csv":
        flat = {k: (";".join(fmt(x) for x in v) if isinstance(v, list) else v)
                for k, v in record.items()}
        return _record_csv(flat)
    return dump_json(config, record)


def cmd_oracle(config):
    geom, _, _ = _setup(config)
    a = _length(config["a"]).meters
    eps = _eps_kwargs(config)
    run = radial_oracle.integrate_radial(a, geom, v_total=config["v_total"], steps=config["steps"],
                                         tol=config["tol"], **eps)
    if config["format"] == "csv":
        return dump_csv(("r_m", "phi_numeric_V", "phi_closed_V", "rel_err"), run.rows())
    sol = fields.CylinderSolution(a, config["v_total"], **eps)
    samples = np.linspace(0.05, 0.95, 19) * geom.R
    result = {"max_rel_err": run.max_rel_err_vs_closed_form, "steps": config["steps"],
              "helmholtz_residual_i0": radial_oracle.check_modified_helmholtz(a, samples),
              "helmholtz_residual_k0": radial_oracle.check_modified_helmholtz(
                  a, samples, lambda r: specfun.bessel_k0(r / a))}
    if geom.R / a < 700:
        A, B, C, D = sol.constants(geom)
        r = 0.5 * geom.R
        general = fields.general_solution_value(a, A, B, C, D, r)
        result["reduction_rel_err"] = abs(general / fields.cylinder_potential(sol, geom, r) - 1)
    return dump_json(config, result)


# command -> (handler, operations it exercises)
COMMANDS = {
    "constants": (cmd_constants, ("PhysicalConstants",)),
    "bessel": (cmd_bessel, ("bessel_i0", "bessel_i1", "bessel_k0", "bessel_k1",
                            "bessel_i0_scaled", "bessel_i1_scaled",
                            "bessel_k0_scaled", "bessel_k1_scaled")),
    "profile": (cmd_profile, ("cylinder_potential", "cylinder_field", "point_charge_potential")),
    "phase": (cmd_phase, ("phase_difference", "phase_difference_asymptotic")),
    "estimate": (cmd_estimate, ("estimate_a", "photon_mass")),
    "sweep": (cmd_sweep, ("sweep", "estimate_a")),
    "mass": (cmd_mass, ("photon_mass", "length_to_inverse_energy")),
    "hydrogen": (cmd_hydrogen, ("energy", "energy_quadrature", "stationarity_roots",
                                "minimize", "bound_a", "length_to_inverse_energy")),
    "oracle": (cmd_oracle, ("integrate_radial", "check_modified_helmholtz",
                            "general_solution_value", "cylinder_potential")),
}


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        command, config, output = resolve_config(argv)
        text = COMMANDS[command][0](config)
    except UsageError as exc:
        print(f"podolsky: usage error: {exc}", file=stderr)
        return 1
    except PodolskyError as exc:
        print(f"podolsky: {type(exc).__name__}: {exc}", file=stderr)
        return 2
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
