"""Command-line surface: spinpair <eval|path|scan|gibbs|evolve|verify|classify>.

Commands emit JSON to stdout or CSV data files; figures are rendered by
the demo scripts, not here.  All outputs are deterministic given inputs,
seed and version: repeated runs are byte-identical, including under
different ``--jobs`` values.  File outputs get a ``<out>.manifest.json``
sidecar recording the command, an input digest, the seed and timing
(the sidecar, carrying wall time, is the only non-reproducible artifact).

Exit codes: 0 success, 1 verification failure, 2 input validation,
3 state invalidity, 4 empty result, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .entanglement import (
    closed_lambdas,
    eof_from_concurrence,
    oracle_lambdas,
    spin_flip,
    wootters_oracle,
    _concurrence_from_lambdas,
)
from .hamiltonians import GibbsSpec, HamiltonianSpec, build, evolve, gibbs
from .linalg import PSD_CLAMP
from .separability import ScanConfig, partial_transpose, scan_grid, write_scan_csv
from .states import (
    BlochState,
    PARAM_FIELDS,
    from_matrix,
    matrices_from_params,
    sample_domain_params,
    to_matrix,
    validity,
)
from .symmetry import FAMILIES, classify, commutator_norm

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_INVALID_STATE = 3
EXIT_EMPTY = 4
EXIT_IO = 5

VERIFY_TOL = 1e-9

_MINOR_NAMES = (
    "first_order_1", "first_order_2", "first_order_3", "first_order_4",
    "second_order_12", "second_order_13", "second_order_23", "third_order",
)


class CliError(Exception):
    """Error with a dedicated exit code; message goes to stderr."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _print_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _read_json(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_INPUT, f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise CliError(EXIT_INPUT, f"expected a JSON object in {path}")
    return obj


def _apply_overrides(data: dict, overrides: list[str]) -> dict:
    out = dict(data)
    for item in overrides or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise CliError(EXIT_INPUT, f"--set expects key=value, got {item!r}")
        if key == "family":
            out[key] = value
        else:
            try:
                out[key] = float(value)
            except ValueError as exc:
                raise CliError(EXIT_INPUT, f"--set {key}: {value!r} is not a number") from exc
    return out


def _load_state(path: str, overrides: list[str]) -> BlochState:
    data = _apply_overrides(_read_json(path), overrides)
    try:
        return BlochState.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"bad state description: {exc}") from exc


def _load_hamiltonian(path: str, overrides: list[str]) -> tuple[HamiltonianSpec, float | None]:
    data = _apply_overrides(_read_json(path), overrides)
    beta = data.pop("beta", None)
    try:
        return HamiltonianSpec.from_dict(data), beta
    except (TypeError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"bad Hamiltonian description: {exc}") from exc


def _require_valid(state: BlochState) -> None:
    report = validity(state)
    if report.valid:
        return
    violated = [f"{name} = {value:.17g}"
                for name, value in zip(_MINOR_NAMES, report.minor_values) if value < 0]
    raise CliError(
        EXIT_INVALID_STATE,
        "state fails positivity (min eigenvalue "
        f"{report.min_eigenvalue:.3e}); violated minors: {'; '.join(violated)}")


def _resolve_jobs(value) -> int:
    if value is not None:
        jobs = int(value)
    else:
        env = os.environ.get("SPINPAIR_JOBS")
        jobs = int(env) if env else (os.cpu_count() or 1)
    if jobs < 1:
        raise CliError(EXIT_INPUT, f"--jobs must be >= 1, got {jobs}")
    return jobs


def _open_out(path: str):
    try:
        return open(path, "w", encoding="ascii", newline="")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from exc


def _write_manifest(out_path: str, command: str, digest_parts: list, seed, started: float) -> None:
    h = hashlib.sha256()
    for part in digest_parts:
        h.update(part if isinstance(part, bytes) else str(part).encode())
        h.update(b"\x00")
    manifest = {
        "command": command,
        "input_digest": h.hexdigest(),
        "seed": seed,
        "version": __version__,
        "wall_time_s": round(time.monotonic() - started, 6),
    }
    with open(out_path + ".manifest.json", "w", encoding="ascii") as fh:
        fh.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _fmt(x: float) -> str:
    return "" if (x is None or np.isnan(x)) else f"{x:.17g}"


# ---------------------------------------------------------------- commands


def cmd_eval(args) -> int:
    state = _load_state(args.state, args.set)
    _require_valid(state)
    out = {"state": state.to_dict()}
    if args.method in ("closed", "both"):
        lam = closed_lambdas(state.family, state.params())
        conc = min(float(_concurrence_from_lambdas(lam)), 1.0)
        out["closed_form"] = {
            "lambdas": [float(v) for v in lam],
            "concurrence": conc,
            "eof": float(eof_from_concurrence(conc)),
            "method": "closed_form",
        }
    if args.method in ("oracle", "both"):
        out["oracle"] = wootters_oracle(to_matrix(state)).to_dict()
    if args.method == "both":
        delta = max(abs(a - b) for a, b in zip(out["closed_form"]["lambdas"],
                                               out["oracle"]["lambdas"]))
        out["max_delta_lambda"] = delta
    _print_json(out)
    return EXIT_OK


_TIE_RE = re.compile(
    r"^\s*(?P<field>[a-z_0-9]+)\s*=\s*(?P<a>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"\s*\*?\s*(?P<sign>[+-])?(?P<axis>[a-z_0-9]+)\s*(?P<b>[+-]\s*(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*$")


def _parse_tie(expr: str, axis: str) -> tuple[str, float, float]:
    """Parse a linear tie ``field = a*axis + b`` (a, b optional)."""
    m = _TIE_RE.match(expr)
    if not m or m.group("axis") != axis:
        raise CliError(EXIT_INPUT,
                       f"cannot parse tie {expr!r} (expected e.g. 'c2=-1*{axis}+0.1')")
    field = m.group("field")
    if field not in PARAM_FIELDS or field == axis:
        raise CliError(EXIT_INPUT, f"tie field {field!r} must be a parameter other than the axis")
    a = float(m.group("a")) if m.group("a") else 1.0
    if m.group("sign") == "-":
        a = -a
    b = float(m.group("b").replace(" ", "")) if m.group("b") else 0.0
    return field, a, b


def _path_rows(state: BlochState, axis: str, lo: float, hi: float, steps: int,
               tie: str | None, method: str):
    if axis not in PARAM_FIELDS:
        raise CliError(EXIT_INPUT, f"unknown axis {axis!r}")
    if not (-1.0 <= lo < hi <= 1.0):
        raise CliError(EXIT_INPUT, f"path range must satisfy -1 <= lo < hi <= 1, got [{lo}, {hi}]")
    if steps < 2:
        raise CliError(EXIT_INPUT, f"need at least 2 steps, got {steps}")
    us = np.linspace(lo, hi, steps)
    base = state.params()
    grid = np.tile(base, (steps, 1))
    grid[:, PARAM_FIELDS.index(axis)] = us
    if tie:
        field, a, b = _parse_tie(tie, axis)
        grid[:, PARAM_FIELDS.index(field)] = a * us + b
    inside_box = (np.abs(grid) <= 1.0).all(axis=1)
    rhos = matrices_from_params(state.family, grid)
    min_eig = np.linalg.eigvalsh(rhos)[:, 0]
    in_domain = inside_box & (min_eig >= -PSD_CLAMP)
    conc = np.full(steps, np.nan)
    ppt = np.full(steps, np.nan)
    if in_domain.any():
        if method == "oracle":
            lam = oracle_lambdas(rhos[in_domain])
        else:
            lam = closed_lambdas(state.family, grid[in_domain])
            if method == "both":
                delta = np.max(np.abs(lam - oracle_lambdas(rhos[in_domain])))
                if delta > VERIFY_TOL:
                    raise CliError(EXIT_VERIFY,
                                   f"closed form deviates from oracle by {delta:.3e}")
        conc[in_domain] = _concurrence_from_lambdas(lam)
        ppt[in_domain] = np.linalg.eigvalsh(partial_transpose(rhos[in_domain]))[:, 0]
    return us, in_domain, conc, ppt


def cmd_path(args) -> int:
    started = time.monotonic()
    state = _load_state(args.state, args.set)
    us, in_domain, conc, ppt = _path_rows(
        state, args.axis, args.lo, args.hi, args.steps, args.tie, args.method)
    if not in_domain.any():
        raise CliError(EXIT_EMPTY, "every path point lies outside the state domain")
    eof = np.full_like(conc, np.nan)
    eof[in_domain] = eof_from_concurrence(conc[in_domain])
    lines = ["u,in_domain,concurrence,eof,ppt_min_eig"]
    for k in range(len(us)):
        lines.append(f"{us[k]:.17g},{int(in_domain[k])},{_fmt(conc[k])},"
                     f"{_fmt(eof[k])},{_fmt(ppt[k])}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with _open_out(args.out) as fh:
            fh.write(text)
        _write_manifest(args.out, "path", [open(args.state, "rb").read(),
                                           args.axis, args.lo, args.hi, args.steps,
                                           args.tie or "", args.method], None, started)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _scan_config_from_json(data: dict) -> ScanConfig:
    try:
        fixed = BlochState.from_dict(data["fixed"])
        return ScanConfig(
            family=data["family"],
            fixed=fixed,
            axis1=data["axis1"],
            axis2=data["axis2"],
            range1=tuple(data["range1"]),
            range2=tuple(data["range2"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"bad scan config: {exc}") from exc


def cmd_scan(args) -> int:
    started = time.monotonic()
    raw = _read_json(args.config)
    cfg = _scan_config_from_json(raw)
    grid = scan_grid(cfg, jobs=_resolve_jobs(args.jobs))
    if args.method == "both":
        mask = grid.in_domain
        params = np.tile(cfg.fixed.params(), (int(mask.sum()), 1))
        # re-derive in-domain cell parameters in row-major order
        v1, v2 = cfg.axis_values()
        xs = np.tile(v1, len(v2)).reshape(mask.shape)
        ys = np.repeat(v2, len(v1)).reshape(mask.shape)
        params[:, PARAM_FIELDS.index(cfg.axis1)] = xs[mask]
        params[:, PARAM_FIELDS.index(cfg.axis2)] = ys[mask]
        delta = np.max(np.abs(closed_lambdas(cfg.family, params)
                              - oracle_lambdas(matrices_from_params(cfg.family, params))))
        if delta > VERIFY_TOL:
            raise CliError(EXIT_VERIFY, f"closed form deviates from oracle by {delta:.3e}")
    with _open_out(args.out) as fh:
        write_scan_csv(grid, fh)
    _write_manifest(args.out, "scan", [open(args.config, "rb").read(), args.method],
                    None, started)
    return EXIT_OK


def cmd_gibbs(args) -> int:
    started = time.monotonic()
    spec, _ = _load_hamiltonian(args.hamiltonian, args.set)
    if args.beta_lo < 0 or args.beta_hi < args.beta_lo:
        raise CliError(EXIT_INPUT, "beta range must satisfy 0 <= lo <= hi")
    if args.beta_steps < 1:
        raise CliError(EXIT_INPUT, "need at least 1 beta step")
    betas = np.linspace(args.beta_lo, args.beta_hi, args.beta_steps)
    lines = ["beta,concurrence,eof"]
    for beta in betas:
        rho = gibbs(GibbsSpec(spec, float(beta)))
        state = from_matrix(rho, spec.family)
        lam = closed_lambdas(spec.family, state.params())
        conc = min(float(_concurrence_from_lambdas(lam)), 1.0)
        lines.append(f"{beta:.17g},{conc:.17g},{float(eof_from_concurrence(conc)):.17g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with _open_out(args.out) as fh:
            fh.write(text)
        _write_manifest(args.out, "gibbs", [open(args.hamiltonian, "rb").read(),
                                            args.beta_lo, args.beta_hi, args.beta_steps],
                        None, started)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_evolve(args) -> int:
    started = time.monotonic()
    state = _load_state(args.state, args.set)
    spec, _ = _load_hamiltonian(args.hamiltonian, [])
    if state.family != spec.family:
        raise CliError(EXIT_INPUT,
                       f"state family {state.family} does not match Hamiltonian family {spec.family}")
    _require_valid(state)
    if args.steps < 1:
        raise CliError(EXIT_INPUT, "need at least 1 time step")
    rho0 = to_matrix(state)
    times = np.linspace(args.t_lo, args.t_hi, args.steps)
    lines = ["t,concurrence,eof,ppt_min_eig"]
    for t in times:
        rho_t = evolve(rho0, spec, float(t))
        evolved = from_matrix(rho_t, spec.family)
        lam = closed_lambdas(spec.family, evolved.params())
        conc = min(float(_concurrence_from_lambdas(lam)), 1.0)
        ppt = float(np.linalg.eigvalsh(partial_transpose(rho_t))[0])
        lines.append(f"{t:.17g},{conc:.17g},"
                     f"{float(eof_from_concurrence(conc)):.17g},{ppt:.17g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with _open_out(args.out) as fh:
            fh.write(text)
        _write_manifest(args.out, "evolve", [open(args.state, "rb").read(),
                                             open(args.hamiltonian, "rb").read(),
                                             args.t_lo, args.t_hi, args.steps], None, started)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _verify_chunk(task):
    family, params = task
    rhos = matrices_from_params(family, params)
    lam_closed = closed_lambdas(family, params)
    lam_oracle = oracle_lambdas(rhos)
    d_lam = np.max(np.abs(lam_closed - lam_oracle), axis=1)
    d_conc = np.abs(_concurrence_from_lambdas(lam_closed)
                    - _concurrence_from_lambdas(lam_oracle))
    det_rho = np.linalg.det(rhos)
    det_r = np.linalg.det(rhos @ spin_flip(rhos)).real
    d_det = np.abs(det_r - (det_rho * det_rho.conj()).real)
    score = np.maximum(d_lam, d_conc)
    worst = int(np.argmax(score))
    return (float(d_lam.max()), float(d_conc.max()), float(d_det.max()),
            worst, float(score[worst]))


def cmd_verify(args) -> int:
    families = args.families.split(",") if args.families else list(FAMILIES)
    for fam in families:
        if fam not in FAMILIES:
            raise CliError(EXIT_INPUT, f"unknown family {fam!r}; expected one of {FAMILIES}")
    if args.count < 1:
        raise CliError(EXIT_INPUT, "--count must be >= 1")
    jobs = _resolve_jobs(args.jobs)
    summary = {"count": args.count, "seed": args.seed, "tolerance": VERIFY_TOL,
               "families": {}, "version": __version__}
    overall = {"max_delta_lambda": 0.0, "max_delta_concurrence": 0.0, "max_det_drift": 0.0}
    worst_state = None
    worst_score = -1.0
    for offset, fam in enumerate(families):
        params = sample_domain_params(fam, seed=args.seed + offset, count=args.count)
        chunks = np.array_split(params, jobs) if jobs > 1 else [params]
        chunks = [c for c in chunks if len(c)]
        tasks = [(fam, c) for c in chunks]
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_verify_chunk, tasks))
        else:
            results = [_verify_chunk(t) for t in tasks]
        base = 0
        fam_stats = {"max_delta_lambda": 0.0, "max_delta_concurrence": 0.0, "max_det_drift": 0.0}
        for (dl, dc, dd, widx, wscore), chunk in zip(results, chunks):
            fam_stats["max_delta_lambda"] = max(fam_stats["max_delta_lambda"], dl)
            fam_stats["max_delta_concurrence"] = max(fam_stats["max_delta_concurrence"], dc)
            fam_stats["max_det_drift"] = max(fam_stats["max_det_drift"], dd)
            if wscore > worst_score:
                worst_score = wscore
                row = params[base + widx]
                worst_state = {"family": fam, **{k: float(v) for k, v in zip(PARAM_FIELDS, row)}}
            base += len(chunk)
        summary["families"][fam] = fam_stats
        for key in overall:
            overall[key] = max(overall[key], fam_stats[key])
    summary.update(overall)
    ok = all(overall[k] <= VERIFY_TOL for k in overall)
    summary["pass"] = ok
    summary["worst_state"] = worst_state
    _print_json(summary)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_classify(args) -> int:
    data = _read_json(args.matrix)
    try:
        re_part = np.array(data["re"], dtype=float)
        im_part = np.array(data.get("im", np.zeros_like(re_part)), dtype=float)
        rho = re_part + 1j * im_part
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"bad matrix JSON: {exc}") from exc
    if rho.shape != (4, 4):
        raise CliError(EXIT_INPUT, f"expected a 4x4 matrix, got {rho.shape}")
    asym = float(np.max(np.abs(rho - rho.conj().T)))
    if asym > 1e-8:
        raise CliError(EXIT_INVALID_STATE, f"not Hermitian: max |rho - rho^dagger| = {asym:.3e}")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > 1e-8:
        raise CliError(EXIT_INVALID_STATE, f"trace {tr!r} differs from 1 beyond 1e-8")
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    if min_eig < -1e-8:
        raise CliError(EXIT_INVALID_STATE, f"not PSD: min eigenvalue {min_eig:.3e}")
    tags = classify(rho, tol=args.tol)
    out = {
        "families": list(tags),
        "commutator_norms": {fam: commutator_norm(rho, fam) for fam in FAMILIES},
        "min_eigenvalue": min_eig,
        "bloch": from_matrix(rho, tags[0], tol=args.tol).to_dict() if tags else None,
    }
    _print_json(out)
    return EXIT_OK


# ---------------------------------------------------------------- wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinpair",
        description="Closed-form two-qubit entanglement for symmetry-classified states.")
    parser.add_argument("--version", action="version", version=f"spinpair {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="entanglement of a single state")
    p.add_argument("--state", required=True, help="BlochState JSON file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override a state field (repeatable)")
    p.add_argument("--method", choices=("closed", "oracle", "both"), default="both")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("path", help="1D parameter sweep")
    p.add_argument("--state", required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.add_argument("--axis", required=True, help="swept parameter name")
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--tie", help="linear tie, e.g. 'c2=-1*c1+0.1'")
    p.add_argument("--method", choices=("closed", "oracle", "both"), default="closed")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("scan", help="2D grid scan to CSV")
    p.add_argument("--config", required=True, help="ScanConfig JSON file")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--method", choices=("closed", "both"), default="closed")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("gibbs", help="thermal-state sweep over beta")
    p.add_argument("--hamiltonian", required=True, help="HamiltonianSpec JSON file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.add_argument("--beta-lo", type=float, required=True)
    p.add_argument("--beta-hi", type=float, required=True)
    p.add_argument("--beta-steps", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gibbs)

    p = sub.add_parser("evolve", help="unitary time evolution sweep")
    p.add_argument("--state", required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--t-lo", type=float, required=True)
    p.add_argument("--t-hi", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("verify", help="closed form vs oracle sweep")
    p.add_argument("--families", help="comma-separated subset (default: all)")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="symmetry families of a matrix")
    p.add_argument("--matrix", required=True, help="JSON file with 're' and 'im' 4x4 arrays")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"spinpair: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, RuntimeError) as exc:
        print(f"spinpair: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"spinpair: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
