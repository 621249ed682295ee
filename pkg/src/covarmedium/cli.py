"""Command line front end: config parsing, dispatch, CSV output.

Config files use a line-oriented ``key = value`` grammar with
``[section]`` headers; sections are medium, boost, sweep, output.
Unknown keys are hard errors.  CSV outputs are byte-stable: fixed float
formatting at 17 significant digits and "\\n" line endings.

Exit status: 0 success, 1 verification failure, 2 config error,
3 runtime/numerical error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .coupling import CouplingModel, LorentzianProfile
from .dispersion import assemble_L, dispersion_roots
from .greens import GreenSpec, green_position_regular, green_time_kernel
from .minkowski import (
    METRIC,
    METRIC_DIAG,
    SIGNATURE,
    Boost,
    FourVector,
    build_tetrad,
    eta_basis,
    minkowski_dot,
)
from .noisequantum import ModeGrid, commutator_KN_modesum, commutator_KN_reference
from .susceptibility import SusceptibilityEvaluator

THREADS_ENV = "COVAR_MEDIUM_THREADS"


class ConfigError(ValueError):
    pass


_ALLOWED_KEYS = {
    "medium": {
        "model",
        "c0",
        "omega0",
        "gamma",
        "e_c0",
        "e_omega0",
        "e_gamma",
        "m_c0",
        "m_omega0",
        "m_gamma",
        "table",
    },
    "boost": {"v"},
    "sweep": {
        "q4_min",
        "q4_max",
        "q4_count",
        "direction",
        "n_re_min",
        "n_re_max",
        "n_im_min",
        "n_im_max",
        "velocities",
        "omega",
        "k_max",
        "k_count",
        "t_max",
        "t_count",
        "r_count",
    },
    "output": {"dir"},
}

_SWEEP_DEFAULTS = {
    "q4_min": "0.1",
    "q4_max": "0.5",
    "q4_count": "5",
    "direction": "0 0 1",
    "n_re_min": "0.5",
    "n_re_max": "1.6",
    "n_im_min": "-0.2",
    "n_im_max": "0.2",
    "velocities": "0 0.1 0.2",
    "omega": "1.0",
    "k_max": "5.0",
    "k_count": "6",
    "t_max": "5.0",
    "t_count": "11",
    "r_count": "6",
}


@dataclass
class RunConfig:
    """Validated run description; sections holds the normalized key/values."""

    model: CouplingModel
    boost_v: np.ndarray
    sweep: dict
    out_dir: str
    sections: dict = field(default_factory=dict)


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split()]


def parse_config(text: str) -> RunConfig:
    """Parse and validate a config document; raises ConfigError."""
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#",)
    )
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax error: {exc}") from exc
    for section in parser.sections():
        if section not in _ALLOWED_KEYS:
            raise ConfigError(f"unknown section: {section}")
        for key in parser[section]:
            if key not in _ALLOWED_KEYS[section]:
                raise ConfigError(f"unknown key in [{section}]: {key}")
    if not parser.has_section("medium"):
        raise ConfigError("missing section: medium")
    med = parser["medium"]
    if "model" not in med:
        raise ConfigError("missing key: medium.model")
    variant = med["model"].strip()

    def need(key):
        if key not in med:
            raise ConfigError(f"missing key: medium.{key}")
        return float(med[key])

    try:
        if variant == "vacuum":
            model = CouplingModel.vacuum()
        elif variant == "isotropic_lorentzian":
            model = CouplingModel.isotropic_lorentzian(
                need("c0"), need("omega0"), need("gamma")
            )
        elif variant == "em_split":
            electric = LorentzianProfile(need("e_c0"), need("e_omega0"), need("e_gamma"))
            magnetic = None
            if "m_c0" in med:
                magnetic = LorentzianProfile(
                    need("m_c0"), need("m_omega0"), need("m_gamma")
                )
            model = CouplingModel.em_split(electric, magnetic)
        elif variant == "tabulated":
            if "table" not in med:
                raise ConfigError("missing key: medium.table")
            model = _load_table(med["table"].strip())
        else:
            raise ConfigError(f"unknown medium.model: {variant}")
    except ConfigError:
        raise
    except (ValueError, OSError) as exc:
        raise ConfigError(f"constraint violation in [medium]: {exc}") from exc

    boost_v = np.zeros(3)
    if parser.has_section("boost") and "v" in parser["boost"]:
        vals = _floats(parser["boost"]["v"])
        if len(vals) != 3:
            raise ConfigError("boost.v must have three components")
        boost_v = np.array(vals)
        if boost_v @ boost_v >= 1.0:
            raise ConfigError(f"constraint violation: |v| >= 1 (v = {vals})")

    sweep = dict(_SWEEP_DEFAULTS)
    if parser.has_section("sweep"):
        sweep.update({k: v for k, v in parser["sweep"].items()})
    direction = np.array(_floats(sweep["direction"]))
    if direction.shape != (3,) or not np.any(direction):
        raise ConfigError("sweep.direction must be a nonzero 3-vector")

    out_dir = "."
    if parser.has_section("output") and "dir" in parser["output"]:
        out_dir = parser["output"]["dir"].strip()

    sections = {s: dict(parser[s]) for s in parser.sections()}
    return RunConfig(
        model=model, boost_v=boost_v, sweep=sweep, out_dir=out_dir, sections=sections
    )


def serialize_config(cfg: RunConfig) -> str:
    """Round-trippable text form of a parsed config."""
    buf = io.StringIO()
    for section, kv in cfg.sections.items():
        buf.write(f"[{section}]\n")
        for k, v in kv.items():
            buf.write(f"{k} = {v}\n")
        buf.write("\n")
    return buf.getvalue()


def _load_table(path: str) -> CouplingModel:
    rows = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            w = float(row["omega"])
            rows.setdefault(w, np.zeros((6, 6)))[int(row["i"]), int(row["j"])] = float(
                row["value"]
            )
    omegas = np.array(sorted(rows))
    tensors = np.array([rows[w] for w in omegas])
    return CouplingModel.tabulated(omegas, tensors)


def _fmt(x) -> str:
    return f"{x:.17g}"


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
            fh.write("\n")


def _evaluator(cfg: RunConfig) -> SusceptibilityEvaluator:
    ev = SusceptibilityEvaluator(cfg.model)
    if np.any(cfg.boost_v):
        ev = ev.boost(cfg.boost_v)
    return ev


def _sweep_q4(cfg: RunConfig) -> np.ndarray:
    return np.linspace(
        float(cfg.sweep["q4_min"]),
        float(cfg.sweep["q4_max"]),
        int(cfg.sweep["q4_count"]),
    )


def _window(cfg: RunConfig):
    s = cfg.sweep
    return (
        float(s["n_re_min"]),
        float(s["n_re_max"]),
        float(s["n_im_min"]),
        float(s["n_im_max"]),
    )


def cmd_chi(cfg: RunConfig, out_dir: str, threads: int) -> int:
    ev = _evaluator(cfg)
    q4s = _sweep_q4(cfg)

    def one(q4):
        chi = ev.chi_momentum(FourVector(np.array([0.0, 0.0, 0.0, q4]))).m66
        return [
            (float(q4), i, j, float(chi[i, j].real), float(chi[i, j].imag))
            for i in range(6)
            for j in range(6)
        ]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(one, q4s))
    else:
        blocks = [one(q) for q in q4s]
    rows = [row for block in blocks for row in block]
    _write_csv(
        os.path.join(out_dir, "chi.csv"), ["q4", "pairI", "pairJ", "re", "im"], rows
    )
    return 0


def cmd_dispersion(cfg: RunConfig, out_dir: str, threads: int) -> int:
    ev = _evaluator(cfg)
    direction = np.array(_floats(cfg.sweep["direction"]))
    khat = direction / np.linalg.norm(direction)
    rows = []
    for q4 in _sweep_q4(cfg):
        for n, label in dispersion_roots(ev, khat, float(q4), window=_window(cfg)):
            rows.append(
                (
                    " ".join(_fmt(c) for c in khat),
                    float(q4),
                    float(n.real),
                    float(n.imag),
                    label,
                )
            )
    _write_csv(
        os.path.join(out_dir, "dispersion.csv"),
        ["direction", "q4", "re_n", "im_n", "class"],
        rows,
    )
    return 0


def cmd_green(cfg: RunConfig, out_dir: str, threads: int) -> int:
    s = cfg.sweep
    spec = GreenSpec(float(s["omega"]))
    ks = np.linspace(0.0, float(s["k_max"]), int(s["k_count"]))
    ts = np.linspace(0.0, float(s["t_max"]), int(s["t_count"]))
    rows = [
        (float(k), float(t), float(green_time_kernel(spec, k, t)))
        for k in ks
        for t in ts
    ]
    _write_csv(os.path.join(out_dir, "green_time_kernel.csv"), ["k", "t", "value"], rows)
    rs = np.linspace(0.0, float(s["t_max"]), int(s["r_count"]))
    rows = [
        (
            float(t),
            float(r),
            green_position_regular(spec, FourVector(np.array([0.0, 0.0, r, t]))),
        )
        for t in ts
        for r in rs
    ]
    _write_csv(os.path.join(out_dir, "green_position_tail.csv"), ["t", "r", "value"], rows)
    return 0


def cmd_boost_scan(cfg: RunConfig, out_dir: str, threads: int) -> int:
    base = SusceptibilityEvaluator(cfg.model)
    direction = np.array(_floats(cfg.sweep["direction"]))
    khat = direction / np.linalg.norm(direction)
    q4 = float(cfg.sweep["q4_min"])
    rows = []
    for v in _floats(cfg.sweep["velocities"]):
        ev = base.boost(v * khat) if v != 0.0 else base
        roots = dispersion_roots(ev, khat, q4, window=_window(cfg))
        physical = [n for n, label in roots if label == "physical"]
        for n in physical:
            rows.append((float(v), q4, float(n.real), float(n.imag)))
    _write_csv(
        os.path.join(out_dir, "boost_scan.csv"), ["v", "q4", "re_n", "im_n"], rows
    )
    return 0


# -- verification suites ---------------------------------------------------


def _suite_basis(rng, tol):
    worst = 0.0
    for _ in range(200):
        k = rng.normal(size=3)
        k /= np.linalg.norm(k)
        tet = build_tetrad(k)
        gram = tet.eps @ METRIC @ tet.eps.T
        worst = max(worst, float(np.max(np.abs(gram - METRIC))))
        comp = sum(
            METRIC_DIAG[lam] * np.outer(METRIC_DIAG * tet.eps[lam], METRIC_DIAG * tet.eps[lam])
            for lam in range(4)
        )
        worst = max(worst, float(np.max(np.abs(comp - METRIC))))
        etas = eta_basis(tet)
        ortho = np.array([[a.full_contract(b) for b in etas] for a in etas])
        worst = max(worst, float(np.max(np.abs(ortho - np.diag(SIGNATURE)))))
        complete = sum(
            2.0 * SIGNATURE[i] * np.outer(etas[i].six, etas[i].six) for i in range(6)
        )
        worst = max(worst, float(np.max(np.abs(complete - np.diag(SIGNATURE)))))
    return worst, tol


def _suite_causality(ev, tol):
    worst = 0.0
    pts = [
        (np.array([0.0, 0.0, 0.5, -1.0]), "past"),
        (np.array([0.0, 0.0, 2.0, 1.0]), "spacelike"),
        (np.array([0.3, 0.4, 0.0, 0.0]), "equal time"),
    ]
    origin = FourVector(np.zeros(4))
    for dx, _ in pts:
        chi = ev.chi_spacetime(FourVector(dx), origin)
        worst = max(worst, float(np.max(np.abs(chi.m66))))
    return worst, tol


def _suite_gauge(ev, rng, tol):
    worst = 0.0
    for _ in range(100):
        qc = rng.normal(size=4)
        q = FourVector(qc)
        lm = assemble_L(ev, q)
        qq = minkowski_dot(qc, qc)
        resid = lm @ qc + qq * (METRIC_DIAG * qc)
        scale = np.linalg.norm(lm) * np.linalg.norm(qc) + 1e-300
        worst = max(worst, float(np.linalg.norm(resid) / scale))
    return worst, tol


def _suite_commutator(ev, tol):
    x = FourVector(np.array([0.0, 0.0, 0.4, 2.0]))
    origin = FourVector(np.zeros(4))
    grid = ModeGrid.for_model(ev.model)
    ms = commutator_KN_modesum(ev, grid, x, origin).m66
    ref = commutator_KN_reference(ev, x, origin).m66
    scale = float(np.max(np.abs(ref)))
    if scale == 0.0:
        return float(np.max(np.abs(ms))), tol
    return float(np.max(np.abs(ms - ref)) / scale), tol


def fresnel_drag_residual(base_ev, v: float, q4: float) -> float:
    """Deviation of the moving-medium refractive index from the value
    predicted by mapping the rest-frame root through the boost."""
    khat = np.array([0.0, 0.0, 1.0])
    roots = dispersion_roots(base_ev, khat, q4)
    physical = [n for n, label in roots if label == "physical"]
    if not physical:
        raise RuntimeError("no physical rest-frame root to map")
    n_rest = physical[0]
    lam = Boost(v * khat).lam
    qp = lam @ np.array([0.0, 0.0, n_rest * q4, q4], dtype=complex)
    q4p = float(qp[3].real)
    n_pred = qp[2] / qp[3]
    ev_b = base_ev.boost(v * khat)
    half = 0.3
    window = (n_pred.real - half, n_pred.real + half, -half, half)
    roots_b = dispersion_roots(ev_b, khat, q4p, window=window)
    candidates = [n for n, label in roots_b if label == "physical"]
    if not candidates:
        return float("inf")
    return float(min(abs(n - n_pred) for n in candidates))


def _suite_boost_covariance(ev, tol):
    return fresnel_drag_residual(ev, v=0.2, q4=0.3), tol


def cmd_verify(cfg: RunConfig, out_dir: str, threads: int, seed: int, tol_override):
    ev = _evaluator(cfg)
    rng = np.random.default_rng(seed)
    checks = [
        ("basis_identities", lambda: _suite_basis(rng, 1e-13)),
        ("causality", lambda: _suite_causality(ev, 1e-15)),
        ("gauge_identity", lambda: _suite_gauge(ev, rng, 1e-12)),
        ("commutator_identity", lambda: _suite_commutator(ev, 1e-2)),
    ]
    if cfg.model.variant == "em_split" and not ev.is_boosted:
        checks.append(("boost_covariance", lambda: _suite_boost_covariance(ev, 1e-6)))
    lines = []
    failed = False
    for name, run in checks:
        measured, tol = run()
        if tol_override is not None:
            tol = tol_override
        ok = measured <= tol
        failed = failed or not ok
        lines.append(
            f"{'PASS' if ok else 'FAIL'} {name} measured={measured:.3e} tol={tol:.1e}"
        )
        print(lines[-1])
    with open(os.path.join(out_dir, "verify_report.txt"), "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return 1 if failed else 0


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covarmedium",
        description="susceptibility, dispersion and noise-commutator pipelines",
    )
    parser.add_argument("command", choices=["chi", "dispersion", "green", "verify", "boost-scan"])
    parser.add_argument("--config", required=True, help="path to the config document")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--tolerance", type=float, default=None, help="verify tolerance override")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--seed", type=int, default=42)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config) as fh:
            cfg = parse_config(fh.read())
    except (OSError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1"))
    out_dir = args.out if args.out is not None else cfg.out_dir
    try:
        os.makedirs(out_dir, exist_ok=True)
        if args.command == "chi":
            return cmd_chi(cfg, out_dir, threads)
        if args.command == "dispersion":
            return cmd_dispersion(cfg, out_dir, threads)
        if args.command == "green":
            return cmd_green(cfg, out_dir, threads)
        if args.command == "boost-scan":
            return cmd_boost_scan(cfg, out_dir, threads)
        return cmd_verify(cfg, out_dir, threads, args.seed, args.tolerance)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # numerical failures map to exit 3
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
