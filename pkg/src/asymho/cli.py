"""Command-line front end: spectra, coherent-state grids, evolution sweeps,
and the numerical check suite, all emitted as CSV/JSON for external plotting.

Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 check
failure.  Spectra are cached as JSON keyed by (s, count, tolerance) under
$ASYMHO_CACHE_DIR (default: the platform cache directory).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import coherent as ch
from . import fock as fk
from . import specfun as sf
from . import spectrum as sp
from . import wavefun as wf

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_CHECK = 4

# Regression fixture: lowest eight matched orders nu+ for selected
# frequency ratios.  The sqrt5 row is reproduced by s = sqrt(11), not
# s = sqrt(5) (finite-difference cross-check agrees with the matching
# solver); it is kept verbatim as the fixture and reported as failing.
TABLE1 = {
    "1.4": (1.4, [-0.0815, 0.7487, 1.5841, 2.4162,
                  3.25019, 4.08329, 4.91663, 5.75007]),
    "sqrt5": (math.sqrt(5.0), [-0.2565, 0.1920, 0.6562, 1.1221,
                               1.5858, 2.0482, 2.5112, 2.9749]),
    "4": (4.0, [-0.2867, 0.09827, 0.4973, 0.8995,
                1.3008, 1.7006, 2.09984, 2.49961]),
    "5": (5.0, [-0.3189, 0.0, 0.3307, 0.6651,
                1.0, 1.3340, 1.6672, 2.0]),
    "sqrt30": (math.sqrt(30.0), [-0.3309, -0.0361, 0.2695, 0.5789,
                                 0.8890, 1.1988, 1.5077, 1.8161]),
}


class ConfigError(Exception):
    pass


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp_", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cache_dir() -> str:
    env = os.environ.get("ASYMHO_CACHE_DIR")
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache"))
    return os.path.join(base, "asymho")


def _parse_s(text: str) -> float:
    """Frequency-ratio syntax: plain decimal ('1.4') or 'N:sqrt' for sqrt(N)."""
    if text.endswith(":sqrt"):
        return math.sqrt(float(text[:-5]))
    return float(text)


def _parse_alpha(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ConfigError(f"alpha must be 're' or 're,im', got {text!r}")


def _s_label(args) -> str:
    if getattr(args, "p", None) is not None:
        return f"p{args.p}q{args.q}"
    raw = args.s
    if raw.endswith(":sqrt"):
        return f"sqrt{raw[:-5]}"
    return f"s{raw.replace('.', '_')}"


def _resolve_ratio(args):
    """(s, rule_or_None) from --s or --p/--q flags."""
    has_s = getattr(args, "s", None) is not None
    has_pq = getattr(args, "p", None) is not None or getattr(args, "q", None) is not None
    if has_s == has_pq:
        raise ConfigError("provide exactly one of --s or the pair --p/--q")
    if has_s:
        return _parse_s(args.s), None
    if args.p is None or args.q is None:
        raise ConfigError("--p and --q must be given together")
    rule = sp.subspace_rule(args.p, args.q)
    return rule.s, rule


def _auto_trunc(alpha: complex, n_trunc) -> int:
    if n_trunc is not None:
        return n_trunc
    return max(64, int(math.ceil(4.0 * abs(alpha) ** 2)))


def cached_spectrum(s: float, count: int, tolerance: float = 1e-10) -> sp.Spectrum:
    """Compute-or-load a spectrum; cache hit requires exact parameters."""
    key = f"{s.hex()}|{count}|{tolerance.hex()}"
    digest = hashlib.sha1(key.encode()).hexdigest()[:16]
    path = os.path.join(_cache_dir(), f"spectrum_{digest}.json")
    if os.path.exists(path):
        with open(path) as fh:
            doc = json.load(fh)
        if (doc.get("cache_key") == key and len(doc["levels"]) == count):
            return sp.Spectrum.from_json(json.dumps(doc))
    spec = sp.find_eigenvalues(sp.OscillatorConfig(s=s), count,
                               tolerance=tolerance)
    doc = json.loads(spec.to_json())
    doc["cache_key"] = key
    _atomic_write(path, json.dumps(doc, indent=1))
    return spec


def _spectrum_csv(spec: sp.Spectrum, subspace_positions=None) -> str:
    lines = ["n,nu_plus,nu_minus,energy" +
             (",subspace_k" if subspace_positions is not None else "")]
    pos_to_k = {}
    if subspace_positions is not None:
        pos_to_k = {p: k for k, p in enumerate(subspace_positions)}
    for sol in spec.levels:
        row = (f"{sol.index},{sol.nu_plus:.17g},{sol.nu_minus:.17g},"
               f"{sol.energy:.17g}")
        if subspace_positions is not None:
            row += f",{pos_to_k.get(sol.index, '')}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def cmd_spectrum(args) -> int:
    s, rule = _resolve_ratio(args)
    try:
        spec = cached_spectrum(s, args.count, args.tolerance)
    except sp.ScanExhaustedError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    label = _s_label(args)
    positions = None
    if rule is not None and rule.valid:
        positions = sp.locate_subspace_in_spectrum(rule, spec)
    out = args.output
    _atomic_write(os.path.join(out, f"spectrum_{label}.json"), spec.to_json())
    _atomic_write(os.path.join(out, f"spectrum_{label}.csv"),
                  _spectrum_csv(spec, positions))
    print(f"wrote spectrum_{label}.json / .csv ({len(spec)} levels)")
    if positions is not None:
        print(f"subspace levels at full-spectrum positions {positions}")
    if args.compare_table1:
        row = None
        for name, (sval, levels) in TABLE1.items():
            if abs(sval - s) < 1e-12:
                row = (name, levels)
                break
        if row is None:
            print(f"no reference row for s={s!r}", file=sys.stderr)
            return EXIT_CONFIG
        name, levels = row
        delta = max(abs(a - b) for a, b in zip(spec.nu, levels))
        print(f"reference row {name}: max |dnu| = {delta:.3e}")
        if delta > 1e-3:
            print(f"reference mismatch on row {name}", file=sys.stderr)
            return EXIT_CHECK
    return EXIT_OK


def _build_state(args, s: float, rule, alpha: complex, n_trunc: int):
    if getattr(args, "subspace", False):
        if rule is None:
            raise ConfigError("--subspace requires --p/--q")
        if not rule.valid:
            raise ConfigError(
                f"(p, q) = ({rule.p}, {rule.q}) is not a valid sub-ladder "
                "(p and q must agree mod 4)")
        return ch.build_coherent(alpha, n_trunc, rule=rule), None
    spec = cached_spectrum(s, n_trunc, args.tolerance)
    return ch.build_coherent(alpha, n_trunc, spectrum=spec), spec


def _grid_from_args(args, state, spectrum):
    if args.grid_l is None and args.grid_dx is None:
        return ch.auto_grid(state, spectrum)
    auto = ch.auto_grid(state, spectrum)
    half = args.grid_l if args.grid_l is not None else auto.half_width
    dx = args.grid_dx if args.grid_dx is not None else auto.dx
    return wf.GridSpec(half_width=half, dx=dx)


def _fock_csv(vec: fk.FockVector) -> str:
    lines = ["n,re,im,prob"]
    for n, c in enumerate(vec.coeffs):
        lines.append(f"{n},{c.real:.17g},{c.imag:.17g},{abs(c)**2:.17g}")
    return "\n".join(lines) + "\n"


def cmd_coherent(args) -> int:
    s, rule = _resolve_ratio(args)
    alpha = _parse_alpha(args.alpha)
    n_trunc = _auto_trunc(alpha, args.n_trunc)
    try:
        state, spec = _build_state(args, s, rule, alpha, n_trunc)
    except sp.ScanExhaustedError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    grid = _grid_from_args(args, state, spec)
    fn = ch.wavefunction(state, spec, grid)
    norm = fn.quadrature_norm()
    label = _s_label(args) + ("_sub" if args.subspace else "")
    astr = f"{alpha.real:g}" + (f"+{alpha.imag:g}j" if alpha.imag else "")
    base = f"coherent_{label}_a{astr}".replace("+", "p")
    out = args.output
    fn.to_csv(os.path.join(out, f"{base}_grid.csv"))
    _atomic_write(os.path.join(out, f"{base}_fock.csv"), _fock_csv(state.fock))
    print(f"wrote {base}_grid.csv / {base}_fock.csv "
          f"(N_trunc={n_trunc}, grid L={grid.half_width}, dx={grid.dx})")
    print(f"norm = {norm:.12f} (tail mass {state.fock.tail_mass:.3e})")
    if abs(norm - 1.0) > 1e-5:
        print("norm deviates from 1 beyond 1e-5", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_evolve(args) -> int:
    s, rule = _resolve_ratio(args)
    alpha = _parse_alpha(args.alpha)
    n_trunc = _auto_trunc(alpha, args.n_trunc)
    try:
        state, spec = _build_state(args, s, rule, alpha, n_trunc)
    except sp.ScanExhaustedError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    times = np.linspace(0.0, args.t_max, args.samples)
    fid = ch.fidelity_trace(state, times)
    label = _s_label(args) + ("_sub" if args.subspace else "")
    base = f"evolve_{label}"
    out = args.output
    lines = ["t,F"] + [f"{t:.17g},{f:.17g}" for t, f in zip(times, fid)]
    _atomic_write(os.path.join(out, f"{base}_fidelity.csv"),
                  "\n".join(lines) + "\n")
    print(f"wrote {base}_fidelity.csv ({args.samples} samples)")
    print(f"fidelity min = {fid.min():.12f}  max = {fid.max():.12f}")
    if args.frames:
        grid = _grid_from_args(args, state, spec)
        frame_ts = np.linspace(0.0, args.t_max, args.frames)
        rows = ["t,x,re,im,prob"]
        for t in frame_ts:
            evolved = ch.CoherentState(alpha=state.alpha,
                                       fock=ch.evolve(state, float(t)),
                                       basis=state.basis,
                                       energies=state.energies)
            fr = ch.wavefunction(evolved, spec, grid)
            for x, v in zip(fr.xs, fr.values):
                rows.append(f"{t:.17g},{x:.17g},{v.real:.17g},"
                            f"{v.imag:.17g},{abs(v)**2:.17g}")
        _atomic_write(os.path.join(out, f"{base}_frames.csv"),
                      "\n".join(rows) + "\n")
        print(f"wrote {base}_frames.csv ({args.frames} frames)")
    return EXIT_OK


# ----------------------------------------------------------------------
# check suite
# ----------------------------------------------------------------------

def _check_specfun() -> dict:
    items = {}
    # Hermite reduction against the closed form
    worst = 0.0
    xg = np.arange(-6.0, 6.0 + 1e-9, 0.25)
    for n in range(13):
        ref = (2.0 ** (-0.5 * n) * np.exp(-xg ** 2 / 4.0)
               * sf.hermite_h(n, xg / math.sqrt(2.0)))
        got = np.array([sf.pcf_eval(float(n), float(x)).value for x in xg])
        err = np.max(np.abs(got - ref) / np.maximum(1.0, np.abs(ref)))
        worst = max(worst, float(err))
    items["specfun-hermite"] = {"value": worst, "threshold": 1e-10}
    # three-term recurrence and derivative identity
    worst_r, worst_d = 0.0, 0.0
    for nu in (0.3, 1.7, 4.2):
        for x in np.arange(-5.0, 5.0 + 1e-9, 0.5):
            em = sf.pcf_eval(nu - 1.0, float(x))
            e0 = sf.pcf_eval(nu, float(x))
            ep = sf.pcf_eval(nu + 1.0, float(x))
            scale = max(abs(ep.value), abs(x * e0.value), abs(nu * em.value))
            worst_r = max(worst_r, abs(ep.value - x * e0.value + nu * em.value)
                          / scale)
            scale_d = max(abs(e0.derivative), abs(0.5 * x * e0.value),
                          abs(nu * em.value))
            worst_d = max(worst_d, abs(e0.derivative + 0.5 * x * e0.value
                                       - nu * em.value) / scale_d)
    items["specfun-recurrence"] = {"value": worst_r, "threshold": 1e-8}
    items["specfun-derivative"] = {"value": worst_d, "threshold": 1e-8}
    # origin closed forms against the marched Weber solution
    rng = np.random.default_rng(20240901)
    worst_o = 0.0
    for _ in range(60):
        nu = float(rng.uniform(-1.45, 0.45))
        seed_v, seed_d, seed_ls = sf._asym_pos(nu, np.array([sf.X_ASYM]))
        v, d, ls = sf._weber_march(nu, sf.X_ASYM, float(seed_v[0]),
                                   float(seed_d[0]), float(seed_ls[0]),
                                   np.array([0.0]), 0.5)
        scale = math.exp(ls[0])
        cv, cd = sf.pcf_at_zero(nu)
        worst_o = max(worst_o,
                      abs(v[0] * scale - cv) / max(1e-3, abs(cv)),
                      abs(d[0] * scale - cd) / max(1e-3, abs(cd)))
    items["specfun-origin"] = {"value": worst_o, "threshold": 1e-10}
    return items


def _check_table1() -> dict:
    items = {}
    for name, (s, levels) in TABLE1.items():
        spec = sp.find_eigenvalues(sp.OscillatorConfig(s=s), 8)
        delta = max(abs(a - b) for a, b in zip(spec.nu, levels))
        items[f"table1-{name}"] = {"value": float(delta), "threshold": 1e-3}
    return items


def _check_properties(n_check: int, radius: float) -> dict:
    from scipy.special import gammainc

    items = {}
    n = 64
    # annihilation eigenvector: residual within the truncation tail bound
    # (tail from the analytic incomplete gamma; the float coefficient sum
    # rounds it to 0).  For small alpha the bound sits far below machine
    # epsilon, so the check floor is the roundoff of the shift itself.
    worst = 0.0
    float_floor = n * np.finfo(float).eps
    for alpha in (1.0, 2.0, 4.0, 1.5 + 1.0j):
        v = fk.coherent_coefficients(alpha, n)
        resid = np.linalg.norm(fk.ladder_lower(v).coeffs - alpha * v.coeffs)
        tail = float(gammainc(n, abs(alpha) ** 2))
        bound = 2.0 * math.sqrt(tail) * (abs(alpha) + math.sqrt(n))
        worst = max(worst, resid / max(bound, float_floor))
    items["coherent-annihilation"] = {"value": float(worst), "threshold": 1.0}
    # displacement orbit vs series
    worst = 0.0
    for alpha in (0.5, 2.0, 1.0 + 1.0j, 3.0):
        d = fk.displace(alpha, n).coeffs
        c = fk.coherent_coefficients(alpha, n).coeffs
        worst = max(worst, float(np.linalg.norm(d - c)))
    items["coherent-displacement"] = {"value": worst, "threshold": 1e-8}
    # overlap closed form
    worst = 0.0
    for a, b in ((1.0, -1.0), (2.0, 2.0j), (0.5 + 0.5j, 1.0)):
        va = fk.coherent_coefficients(a, n).coeffs
        vb = fk.coherent_coefficients(b, n).coeffs
        closed = np.exp(-(abs(a) ** 2 + abs(b) ** 2) / 2.0 + np.conj(a) * b)
        worst = max(worst, float(abs(np.vdot(va, vb) - closed)))
    items["coherent-overlap"] = {"value": worst, "threshold": 1e-8}
    # identity resolution on the truncated disk
    m = ch.identity_resolution_check(None, n_check, radius)
    target = ch.identity_resolution_target(n_check, radius)
    diag_err = float(np.max(np.abs(np.diag(m) - target)))
    off = m - np.diag(np.diag(m))
    items["coherent-idres-diag"] = {"value": diag_err, "threshold": 1e-6}
    items["coherent-idres-offdiag"] = {"value": float(np.max(np.abs(off))),
                                       "threshold": 1e-12}
    return items


def _check_subspace() -> dict:
    items = {}
    for p, q in ((5, 1), (7, 3)):
        rule = sp.subspace_rule(p, q)
        state = ch.build_coherent(2.0, 64, rule=rule)
        q_omega = q * rule.s
        times = np.linspace(0.0, 10.0 * 2.0 * math.pi / q_omega, 256)
        fid = ch.fidelity_trace(state, times)
        items[f"subspace-fidelity-{p}-{q}"] = {
            "value": float(np.max(np.abs(fid - 1.0))), "threshold": 1e-8}
        worst = 0.0
        for t in times[:: 16]:
            evolved = ch.evolve(state, float(t)).coeffs
            pred = (np.exp(-1j * q_omega * t / 2.0)
                    * fk.coherent_coefficients(
                        2.0 * np.exp(-1j * q_omega * t), 64).coeffs)
            worst = max(worst, float(np.max(np.abs(evolved - pred))))
        items[f"subspace-phase-{p}-{q}"] = {"value": worst, "threshold": 1e-10}
    return items


def _check_gram() -> dict:
    items = {}
    for name, (s, _levels) in TABLE1.items():
        spec = sp.find_eigenvalues(sp.OscillatorConfig(s=s), 8)
        g = wf.orthonormality_gram(spec, upto=8)
        err = float(np.max(np.abs(g - np.eye(8))))
        items[f"gram-{name}"] = {"value": err, "threshold": 1e-3}
    return items


CHECK_GROUPS = {
    "specfun": _check_specfun,
    "table1": _check_table1,
    "properties": None,  # needs args
    "subspace": _check_subspace,
    "gram": _check_gram,
    "identity-resolution": None,
}


def cmd_check(args) -> int:
    only = args.only
    items: dict = {}
    if only in (None, "specfun"):
        items.update(_check_specfun())
    if only in (None, "table1"):
        items.update(_check_table1())
    if only in (None, "properties"):
        items.update(_check_properties(args.n_check, args.radius))
    if only == "identity-resolution":
        m = ch.identity_resolution_check(None, args.n_check, args.radius)
        target = ch.identity_resolution_target(args.n_check, args.radius)
        items["coherent-idres-diag"] = {
            "value": float(np.max(np.abs(np.diag(m) - target))),
            "threshold": 1e-6}
        items["coherent-idres-offdiag"] = {
            "value": float(np.max(np.abs(m - np.diag(np.diag(m))))),
            "threshold": 1e-12}
    if only in (None, "subspace"):
        items.update(_check_subspace())
    if only in (None, "gram"):
        items.update(_check_gram())
    if not items:
        print(f"unknown check group {only!r}; choose from "
              f"{sorted(CHECK_GROUPS)}", file=sys.stderr)
        return EXIT_CONFIG

    failed = []
    for name, rec in items.items():
        rec["passed"] = bool(rec["value"] <= rec["threshold"])
        status = "pass" if rec["passed"] else "FAIL"
        print(f"{status:4s}  {name:28s} value={rec['value']:.3e} "
              f"threshold={rec['threshold']:.0e}")
        if not rec["passed"]:
            failed.append(name)
    report = {"items": items, "passed": not failed}
    if args.output:
        _atomic_write(os.path.join(args.output, "check_report.json"),
                      json.dumps(report, indent=1))
        print(f"wrote check_report.json")
    if failed:
        print(f"first failing item: {failed[0]}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_selftest(args) -> int:
    if args.module != "specfun":
        print(f"unknown selftest module {args.module!r}", file=sys.stderr)
        return EXIT_CONFIG
    items = _check_specfun()
    bad = False
    for name, rec in items.items():
        ok = rec["value"] <= rec["threshold"]
        bad |= not ok
        print(f"{'pass' if ok else 'FAIL'}  {name}: max error {rec['value']:.3e}")
    return EXIT_CHECK if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="asymho",
        description="Spectra, eigenfunctions, and coherent states of the "
                    "two-frequency (asymmetric) harmonic oscillator.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_ratio(p):
        p.add_argument("--s", help="frequency ratio: decimal or N:sqrt")
        p.add_argument("--p", type=int, help="rational ratio numerator (odd)")
        p.add_argument("--q", type=int, help="rational ratio denominator (odd)")
        p.add_argument("--tolerance", type=float, default=1e-10,
                       help="root refinement tolerance")
        p.add_argument("--output", default=".", help="output directory")

    p_spec = sub.add_parser("spectrum", help="solve and export a spectrum")
    add_ratio(p_spec)
    p_spec.add_argument("--count", type=int, default=8)
    p_spec.add_argument("--compare-table1", action="store_true",
                        help="compare against the built-in reference rows")
    p_spec.set_defaults(func=cmd_spectrum)

    def add_state(p):
        add_ratio(p)
        p.add_argument("--alpha", required=True, help="coherent parameter 're[,im]'")
        p.add_argument("--n-trunc", type=int, default=None,
                       help="truncation (default max(64, ceil(4|alpha|^2)))")
        p.add_argument("--subspace", action="store_true",
                       help="use the equidistant sub-ladder basis (needs --p/--q)")
        p.add_argument("--grid-l", type=float, default=None)
        p.add_argument("--grid-dx", type=float, default=None)

    p_coh = sub.add_parser("coherent", help="export a coherent-state grid")
    add_state(p_coh)
    p_coh.set_defaults(func=cmd_coherent)

    p_ev = sub.add_parser("evolve", help="fidelity trace under time evolution")
    add_state(p_ev)
    p_ev.add_argument("--t-max", type=float, required=True)
    p_ev.add_argument("--samples", type=int, default=256)
    p_ev.add_argument("--frames", type=int, default=0,
                      help="also export this many wavefunction frames")
    p_ev.set_defaults(func=cmd_evolve)

    p_chk = sub.add_parser("check", help="run the numerical check suite")
    p_chk.add_argument("--only", default=None,
                       help=f"restrict to one group: {sorted(CHECK_GROUPS)}")
    p_chk.add_argument("--n-check", type=int, default=8)
    p_chk.add_argument("--radius", type=float, default=8.0)
    p_chk.add_argument("--output", default=None)
    p_chk.set_defaults(func=cmd_check)

    p_st = sub.add_parser("selftest")
    p_st.add_argument("module")
    p_st.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except sp.ScanExhaustedError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
