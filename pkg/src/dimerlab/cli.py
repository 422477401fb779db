"""Command-line front end emitting figure-reproducing datasets.

All commands write CSV (default) or JSON with a '#'-prefixed manifest
before the header; identical invocations produce byte-identical dataset
bodies.  Exit codes: 0 success, 2 domain error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys

import numpy as np

from . import __version__, action, geometry, meanfield, oracles, quantum, semiclassics
from .errors import DomainError, NumericalError


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, np.integer):
        return str(int(x))
    return str(x)


def _emit(args, command: str, manifest: dict, columns: list[str], rows: list[tuple]):
    manifest = {"command": command, "version": __version__,
                "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
                **manifest}
    out = sys.stdout
    close = False
    if getattr(args, "out", None):
        out = open(args.out, "w")
        close = True
    try:
        if args.format == "json":
            for key, value in manifest.items():
                out.write(f"# {key}: {value}\n")
            body = {"columns": columns,
                    "rows": [[_fmt(x) for x in row] for row in rows]}
            out.write(json.dumps(body, indent=None, sort_keys=True))
            out.write("\n")
        else:
            for key, value in manifest.items():
                out.write(f"# {key}: {value}\n")
            out.write(",".join(columns) + "\n")
            for row in rows:
                out.write(",".join(_fmt(x) for x in row) + "\n")
    finally:
        if close:
            out.close()


def _interaction(args, n: int | None = None) -> float:
    """Resolve the mutually exclusive --g / --c flags to g."""
    if args.g is not None:
        return args.g
    if args.c is not None:
        if n is None:
            raise DomainError("--c requires a particle number")
        return args.c * n
    raise DomainError("one of --g or --c is required")


def cmd_curve(args):
    spec = geometry.CylinderSpec(args.a, args.r)
    cls = geometry.classify(spec)
    if cls is geometry.CurveClass.EMPTY:
        raise DomainError(f"empty intersection for a={args.a}, r={args.r}")
    manifest = {"a": args.a, "r": args.r, "class": cls.value, "samples": args.samples}
    phi0 = geometry.phi_gap(spec)
    manifest["phi0"] = "" if phi0 is None else _fmt(phi0)
    try:
        fp, fm, c = geometry.focal_points(spec)
        manifest["focal_plus"] = "({}; {}; {})".format(*map(_fmt, fp))
        manifest["focal_minus"] = "({}; {}; {})".format(*map(_fmt, fm))
        manifest["focal_half_sum"] = _fmt(c)
    except DomainError:
        pass
    rows = geometry.sample_curve(spec, args.samples)
    _emit(args, "curve", manifest, ["phi", "x", "y", "z", "hemisphere"], rows)


def cmd_area(args):
    if args.mode == "radius":
        r_max = args.r_max if args.r_max is not None else 1.0 + args.a
        grid = np.linspace(args.r_min, r_max, args.steps)
        rows = [(args.a,) + row for row in action.area_vs_radius_dataset(args.a, grid)]
        _emit(args, "area", {"mode": "radius", "a": args.a, "steps": args.steps},
              ["a", "r", "s", "s_over_4pi", "method", "est_error"], rows)
        return
    # families: pole-crossing (r = a) and separatrix (r = 1 - a) areas
    # versus 1/a, plus the pole-orbit period for v = 1.
    inv_a = np.linspace(args.inv_a_min, args.inv_a_max, args.steps)
    rows = []
    for ia in inv_a:
        if ia <= 0:
            continue
        a = 1.0 / ia
        s_poles = action.area(geometry.CylinderSpec(a, a)).s_inside
        s_sep = action.separatrix_area(a) if 0.0 < a < 1.0 else float("nan")
        # period of the r = a orbit for v = 1 (g = v/a)
        params = meanfield.ModelParams(v=1.0, g=1.0 / a)
        try:
            t = meanfield.pendulum_period(params, geometry.CylinderSpec(a, a))
        except DomainError:
            t = float("inf")
        four_pi = 4.0 * math.pi
        rows.append((float(ia), s_poles / four_pi, s_sep / four_pi, t / four_pi))
    _emit(args, "area", {"mode": "families", "v": 1.0, "steps": args.steps},
          ["inv_a", "s_poles_over_4pi", "s_separatrix_over_4pi", "t_over_4pi"], rows)


def _initial_state(args) -> np.ndarray:
    if args.s0 is not None:
        vals = [float(x) for x in args.s0.split(",")]
        if len(vals) != 3:
            raise DomainError("--s0 expects x,y,z")
        return np.array(vals)
    return np.array([0.0, 0.0, -1.0 if args.pole == "south" else 1.0])


def cmd_trajectory(args):
    params = meanfield.ModelParams(v=args.v, g=args.g, epsilon=args.epsilon)
    s0 = _initial_state(args)
    t_eval = np.linspace(0.0, args.t_end, args.samples)
    traj = meanfield.integrate(params, s0, args.t_end, rtol=args.rtol,
                               t_eval=t_eval, detect_period=True)
    manifest = {"v": args.v, "g": args.g, "epsilon": args.epsilon,
                "s0": ";".join(_fmt(x) for x in s0), "t_end": args.t_end,
                "rtol": args.rtol, "energy": _fmt(traj.energy),
                "energy_drift": _fmt(traj.energy_drift),
                "norm_drift": _fmt(traj.norm_drift),
                "period_ode": "" if traj.period is None else _fmt(traj.period)}
    if args.epsilon == 0.0 and args.g != 0.0:
        try:
            spec = meanfield.cylinder_from_energy(params, traj.energy)
            manifest["period_closed_form"] = _fmt(meanfield.pendulum_period(params, spec))
        except DomainError:
            pass
    rows = []
    for t, s in zip(traj.times, traj.states):
        p = s[2]
        q = 0.5 * math.atan2(s[1], s[0])
        e_drift = meanfield.energy(params, s) - traj.energy
        rows.append((float(t), s[0], s[1], s[2], p, q, e_drift))
    _emit(args, "trajectory", manifest,
          ["t", "x", "y", "z", "p", "q", "e_drift"], rows)


def cmd_period(args):
    params = meanfield.ModelParams(v=args.v, g=args.g)
    if args.r is not None:
        spec = geometry.CylinderSpec(params.a, args.r)
    elif args.e is not None:
        spec = meanfield.cylinder_from_energy(params, args.e)
    else:
        raise DomainError("one of --r or --e is required")
    m = meanfield.pendulum_parameter(spec)
    t_closed = meanfield.pendulum_period(params, spec)
    t_ode = oracles.period_by_ode(params, spec)
    _emit(args, "period", {"v": args.v, "g": args.g},
          ["a", "r", "m", "t_closed", "t_ode"],
          [(spec.a, spec.r, m, t_closed, t_ode)])


def _spectrum(args) -> quantum.Spectrum:
    g = _interaction(args, args.n)
    qp = quantum.QuantumParams.from_g(args.v, g, args.n, args.epsilon)
    return quantum.eigensystem(quantum.build_hamiltonian(qp))


def _parity(vec: np.ndarray) -> int:
    overlap = float(vec @ vec[::-1])
    return 1 if overlap >= 0.0 else -1


def cmd_spectrum(args):
    spec = _spectrum(args)
    g = _interaction(args, args.n)
    manifest = {"epsilon": args.epsilon, "v": args.v, "c": g / args.n, "g": g, "N": args.n}
    if args.what == "density":
        centers, rho = quantum.level_density(spec.energies, args.bins)
        rows = [(float(ec), float(ec) / args.n, float(d)) for ec, d in zip(centers, rho)]
        _emit(args, "spectrum", {**manifest, "bins": args.bins},
              ["e_center", "e_center_over_n", "rho"], rows)
    elif args.what == "counts":
        thr = args.threshold_e_per_n
        above = quantum.count_states_above(spec, thr)
        _emit(args, "spectrum", {**manifest, "threshold_e_per_n": thr},
              ["threshold_e_per_n", "n_above", "n_below"],
              [(thr, above, spec.energies.size - above)])
    else:
        rows = [(i, float(e), float(e) / args.n, _parity(spec.eigenvectors[:, i]))
                for i, e in enumerate(spec.energies)]
        _emit(args, "spectrum", manifest, ["n", "e", "e_over_n", "parity"], rows)


def cmd_husimi(args):
    g = _interaction(args, args.n)
    if args.state_index is not None:
        spec = _spectrum(args)
        state = spec.eigenvectors[:, args.state_index].astype(complex)
        which = f"eigenstate:{args.state_index}"
    elif args.coherent is not None:
        theta, phi = (float(x) for x in args.coherent.split(","))
        state = quantum.coherent_state(theta, phi, args.n)
        which = f"coherent:{theta},{phi}"
    else:
        raise DomainError("one of --state-index or --coherent is required")
    thetas = np.linspace(0.0, math.pi, args.n_theta)
    phis = np.linspace(-math.pi, math.pi, args.n_phi)
    grid = quantum.husimi(state, thetas, phis, args.n)
    norm = grid.normalized
    rows = []
    for i, th in enumerate(thetas):
        for j, ph in enumerate(phis):
            rows.append((float(th), float(ph), float(grid.values[i, j]), float(norm[i, j])))
    _emit(args, "husimi",
          {"epsilon": args.epsilon, "v": args.v, "c": g / args.n, "g": g,
           "N": args.n, "state": which},
          ["theta", "phi", "value_raw", "value_normalized"], rows)


def cmd_sweep(args):
    g_grid = np.linspace(args.g_min, args.g_max, args.g_steps)
    t_grid = np.linspace(0.0, args.t_end, args.t_steps)
    values = quantum.selftrapping_sweep(args.v, g_grid, t_grid,
                                        n_particles=args.n, mode=args.mode)
    rows = []
    for i, g in enumerate(g_grid):
        for j, t in enumerate(t_grid):
            rows.append((float(g), float(t), float(values[i, j])))
    _emit(args, "sweep",
          {"v": args.v, "mode": args.mode, "N": args.n if args.mode == "quantum" else ""},
          ["g", "t", "value"], rows)


def cmd_semiclassical(args):
    params = meanfield.ModelParams(v=args.v, g=args.g)
    rows = semiclassics.compare_spectra(params, args.n)
    _emit(args, "semiclassical", {"v": args.v, "g": args.g, "N": args.n},
          ["k", "e_semiclassical", "e_exact", "abs_error", "branch"], rows)


def cmd_oracle(args):
    if args.what == "mc-area":
        spec = geometry.CylinderSpec(args.a, args.r)
        mean, stderr = oracles.mc_spherical_area(spec, args.samples, args.seed)
        _emit(args, "oracle", {"what": "mc-area", "a": args.a, "r": args.r,
                               "samples": args.samples, "seed": args.seed},
              ["mean", "stderr"], [(mean, stderr)])
    elif args.what == "elliptic":
        _emit(args, "oracle", {"what": "elliptic", "kind": args.kind, "m": args.m},
              ["value"], [(oracles.quad_elliptic(args.kind, args.m),)])
    else:
        raise DomainError(f"unknown oracle {args.what!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dimerlab",
        description="Bose-Hubbard dimer datasets: Viviani curves, areas, "
                    "dynamics, spectra and semiclassics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("curve", help="sampled intersection curve")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--samples", type=int, default=400)
    common(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("area", help="enclosed areas (radius scan or families)")
    p.add_argument("--mode", choices=("radius", "families"), default="radius")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--r-min", type=float, default=0.0)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--inv-a-min", type=float, default=0.05)
    p.add_argument("--inv-a-max", type=float, default=4.0)
    p.add_argument("--steps", type=int, default=200)
    common(p)
    p.set_defaults(func=cmd_area)

    p = sub.add_parser("trajectory", help="mean-field Bloch trajectory")
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--s0", default=None, help="initial state x,y,z")
    p.add_argument("--pole", choices=("north", "south"), default="south")
    p.add_argument("--t-end", type=float, default=20.0)
    p.add_argument("--rtol", type=float, default=1e-10)
    p.add_argument("--samples", type=int, default=1000)
    common(p)
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("period", help="closed-form vs ODE-measured period")
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--e", type=float, default=None)
    common(p)
    p.set_defaults(func=cmd_period)

    def quantum_flags(p):
        p.add_argument("--v", type=float, required=True)
        p.add_argument("--g", type=float, default=None)
        p.add_argument("--c", type=float, default=None)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--epsilon", type=float, default=0.0)

    p = sub.add_parser("spectrum", help="exact spectrum, density or counts")
    quantum_flags(p)
    p.add_argument("--what", choices=("spectrum", "density", "counts"), default="spectrum")
    p.add_argument("--bins", type=int, default=30)
    p.add_argument("--threshold-e-per-n", type=float, default=1.0)
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("husimi", help="Husimi distribution on the Bloch sphere")
    quantum_flags(p)
    p.add_argument("--state-index", type=int, default=None)
    p.add_argument("--coherent", default=None, help="theta,phi")
    p.add_argument("--n-theta", type=int, default=100)
    p.add_argument("--n-phi", type=int, default=100)
    common(p)
    p.set_defaults(func=cmd_husimi)

    p = sub.add_parser("sweep", help="self-trapping sweep from the south pole")
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--g-min", type=float, default=0.0)
    p.add_argument("--g-max", type=float, default=4.0)
    p.add_argument("--g-steps", type=int, default=41)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--t-end", type=float, default=20.0)
    p.add_argument("--t-steps", type=int, default=200)
    p.add_argument("--mode", choices=("meanfield", "quantum"), default="meanfield")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("semiclassical", help="Bohr-Sommerfeld vs exact spectrum")
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_semiclassical)

    p = sub.add_parser("oracle", help="regenerate brute-force reference values")
    p.add_argument("--what", choices=("mc-area", "elliptic"), required=True)
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=20120417)
    p.add_argument("--kind", choices=("K", "E"), default="K")
    p.add_argument("--m", type=float, default=0.5)
    common(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    threads = os.environ.get("DIMERLAB_THREADS")
    if threads:
        os.environ.setdefault("OMP_NUM_THREADS", threads)
        os.environ.setdefault("NUMBA_NUM_THREADS", threads)
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except DomainError as exc:
        print(f"domain_error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical_error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
