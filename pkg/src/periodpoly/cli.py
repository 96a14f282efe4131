"""Command-line front end.

Subcommands
-----------
analyze     full pipeline for one dataset: ingest a coefficient file or a
            curve (with a symmetric-power index), compute completed special
            values, verify the axioms, build the period polynomials, run
            the sufficient-condition gate, locate roots against the unit
            circle, and push the result through the unit-circle-to-critical-
            line transform with its independent closed form.
disc-table  reproduce the disc-zero count table c_{d,N} over a conductor
            range, marking the transition conductors.
am-table    tabulate the gate constants A_m.
cache       inspect a special-values cache directory.

Exit codes: 0 all checks pass, 1 verification failure (a mathematical
assertion failed), 2 input error, 3 certification failure (a numerical
procedure could not certify its result).  Reports are canonical JSON:
identical inputs and settings produce byte-identical bytes.
"""

import argparse
import math
import os
import sys
import time
from dataclasses import dataclass

from mpmath import mp

from . import __version__
from .errors import (CertificationError, ConventionError, InputError,
                     InsufficientCoefficients, QuadratureError,
                     VerificationError)
from .files import (FORMAT_REPORT, SpecialValuesCache, canonical_report_text,
                    parse_coefficient_file, parse_curve_file,
                    parse_eps_overrides, sha256_file, write_report)
from .gates import compute_A_m, rouche_transfer, theorem_gate
from .lfunc import Precision, special_values, verify_hypothesis
from .numutil import fmt_mpf, log_gamma_c_real
from .polys import (build_P_poly, build_Q_poly, build_p_poly, l_value_ratios,
                    q_decomposition_residual, s_tail_parts)
from .rv import (check_zeta_properties, deflate_at_one, zeta_poly_closed_form,
                 zeta_polynomial)
from .sympow import determine_root_number, sym_lfunction_data
from .zeros import (circle_report, disc_transition_table, star_discrepancy,
                    trig_sign_changes)

_DEFAULT_BITS = 192
_DEFAULT_COEFFS = 10000


@dataclass(frozen=True)
class RunConfig:
    """Validated run settings shared by the subcommands."""

    subcommand: str
    coeffs_path: str = None
    curve_path: str = None
    sym: int = 0
    label: str = None
    eps_overrides_path: str = None
    precision_bits: int = _DEFAULT_BITS
    target_error: float = None
    coeff_limit: int = _DEFAULT_COEFFS
    cache_dir: str = None
    output: str = None
    radius: float = 1.0
    table: bool = False
    degree: int = 4
    n_max: int = 800
    m_max: int = 50

    def __post_init__(self):
        if int(self.precision_bits) < 64:
            raise InputError("precision must be at least 64 bits")
        if self.target_error is not None and not self.target_error > 0:
            raise InputError("target error must be positive")
        for path in (self.coeffs_path, self.curve_path,
                     self.eps_overrides_path):
            if path is not None and not os.path.exists(path):
                raise InputError("input file not found: %s" % path)


def _scale_estimate(data):
    """Rough magnitude of Lambda(w), used to set an absolute error target."""
    w = data.weight
    ln = 0.5 * w * math.log(data.conductor)
    for nu, h in enumerate(data.hodge):
        ln += h * log_gamma_c_real(w - nu)
    return max(1.0, math.exp(ln))


def _pair(v, e, digits):
    return [fmt_mpf(v, digits), fmt_mpf(e, digits)]


def _poly_obj(p, digits):
    with mp.workprec(p.bits + 16):
        return p.to_json_obj(digits)


def _emit(config, report, table_text):
    body = table_text if config.table else canonical_report_text(report)
    if config.output:
        if config.table:
            with open(config.output, "w", encoding="utf-8") as fh:
                fh.write(table_text)
        else:
            write_report(config.output, report)
    else:
        sys.stdout.write(body)


def _ingest(config, inputs):
    """Resolve the input files into (LFunctionData, sym, curve-or-None)."""
    if (config.coeffs_path is None) == (config.curve_path is None):
        raise InputError("exactly one of --coeffs or --curve is required")
    if config.coeffs_path:
        inputs[os.path.basename(config.coeffs_path)] = sha256_file(
            config.coeffs_path)
        data = parse_coefficient_file(config.coeffs_path,
                                      bits=config.precision_bits)
        return data, 0, None
    if config.sym < 1 or config.sym % 2 == 0:
        raise InputError("--sym must be an odd positive integer "
                         "(self-dual odd weight)")
    inputs[os.path.basename(config.curve_path)] = sha256_file(
        config.curve_path)
    curves = parse_curve_file(config.curve_path)
    if config.label:
        matches = [c for c in curves if c.label == config.label]
        if not matches:
            raise InputError("label %r not found in %s (have: %s)"
                             % (config.label, config.curve_path,
                                ", ".join(c.label for c in curves)))
        curve = matches[0]
    elif len(curves) == 1:
        curve = curves[0]
    else:
        raise InputError("curve file holds %d curves; pick one with --label"
                         % len(curves))

    eps = None
    if config.eps_overrides_path:
        inputs[os.path.basename(config.eps_overrides_path)] = sha256_file(
            config.eps_overrides_path)
        table = parse_eps_overrides(config.eps_overrides_path)
        eps = table.get((curve.label, config.sym))
    if eps is None:
        # No recorded sign: determine it by comparing the two-sided value
        # at s = w against the direct series.  Costly but self-contained.
        eps, _margin = determine_root_number(curve, config.sym)
    data = sym_lfunction_data(curve, config.sym, config.coeff_limit, eps)
    return data, config.sym, curve


def cmd_analyze(config):
    inputs = {}
    data, sym, curve = _ingest(config, inputs)
    bits = int(config.precision_bits)
    digits = int(bits * 0.30103) + 8
    label = data.label or "dataset"

    target = config.target_error
    if target is None:
        target = _scale_estimate(data) * 1e-25
    prec = Precision(mantissa_bits=bits, target_abs_error=target)

    cache = SpecialValuesCache(config.cache_dir) if config.cache_dir else None
    vals = None
    if cache is not None:
        vals = cache.load(label, sym, bits, data.weight)
    if vals is None:
        vals = special_values(data, prec)
        if cache is not None:
            cache.store(label, sym, vals)

    violations = verify_hypothesis(data, vals)

    p = build_p_poly(data, vals)
    ratios = l_value_ratios(data, vals)
    big_p = build_P_poly(data, vals)
    big_q = build_Q_poly(data, vals, ratios)

    forced_root = data.root_number == -1
    p_hat = deflate_at_one(p, data.root_number)
    circ = circle_report(p_hat)
    angles = circ.on_angles()
    if forced_root:
        angles = angles + [0.0]
    disc = star_discrepancy(sorted(angles))

    scan = trig_sign_changes(big_p, data.root_number)

    q_res, q_max_s = q_decomposition_residual(data, vals)
    s_parts = None
    if data.m >= 2:
        s_parts = s_tail_parts(data, ratios)

    sym_context = (2, sym, curve.conductor) if curve is not None else None
    gate = theorem_gate(data, vals, sym_context=sym_context)

    rouche_obj = {"skipped": "m = 1: the gate is unconditional"}
    if data.m >= 2:
        try:
            rt = rouche_transfer(data, vals)
            rouche_obj = {
                "certified": rt.certified,
                "min_t_on_circle": fmt_mpf(rt.min_t, 12),
                "remainder_bound": fmt_mpf(rt.remainder_bound, 12),
                "t_disc_zeros": rt.t_disc_zeros,
                "f_disc_zeros": rt.f_disc_zeros,
                "q_disc_zeros": rt.q_disc_zeros,
            }
        except (CertificationError, QuadratureError) as exc:
            rouche_obj = {"certified": False, "error": str(exc)}

    zp = zeta_polynomial(data, vals)
    zp_closed, winner, closed_report = zeta_poly_closed_form(data, vals)
    with mp.workprec(bits + 16):
        scale = max(abs(v) for v, _ in zp.coeffs)
        agreement = float(
            max(abs(a - b) for (a, _), (b, _) in
                zip(zp.coeffs, zp_closed.coeffs[:len(zp.coeffs)])) / scale)
    zcheck = check_zeta_properties(zp)
    zeta_fe_ok = zcheck.fe_residual <= 1e-18
    closed_ok = agreement <= 1e-9

    checks = {
        "hypothesis_clean": not violations,
        "zeta_fe_ok": zeta_fe_ok,
        "closed_form_ok": closed_ok,
    }
    checks["all_pass"] = all(checks.values())

    with mp.workprec(bits + 16):
        report = {
            "format": FORMAT_REPORT,
            "library_version": __version__,
            "command": "analyze",
            "inputs": inputs,
            "precision_bits": bits,
            "target_error_requested": (None if config.target_error is None
                                       else float(config.target_error)),
            "target_error_effective": float(vals.target),
            "label": label,
            "sym": sym,
            "weight": data.weight,
            "degree": data.degree,
            "conductor": data.conductor,
            "hodge": list(data.hodge),
            "root_number": data.root_number,
            "coefficients_used": len(data.coefficients),
            "special_values": {
                str(s): _pair(vals.values[s][0], vals.values[s][1], digits)
                for s in sorted(vals.values)
            },
            "hypothesis_violations": list(violations),
            "polynomials": {
                "p": _poly_obj(p, digits),
                "p_deflated": _poly_obj(p_hat, digits),
                "P": _poly_obj(big_p, digits),
                "Q": _poly_obj(big_q, digits),
                "forced_root_at_one": forced_root,
            },
            "ratios": {
                "r": [_pair(v, e, digits) for v, e in ratios.ratios],
                "central": _pair(ratios.central[0], ratios.central[1],
                                 digits),
            },
            "q_identity": {
                "residual": fmt_mpf(q_res, 12),
                "max_abs_remainder": fmt_mpf(q_max_s, 12),
                "remainder_bound": (None if s_parts is None else {
                    "series": fmt_mpf(s_parts.series, 12),
                    "central": fmt_mpf(s_parts.central, 12),
                    "corner": fmt_mpf(s_parts.corner, 12),
                    "total": fmt_mpf(s_parts.total, 12),
                }),
            },
            "circle": {
                "tolerance": circ.tolerance,
                "roots": [
                    {
                        "re": fmt_mpf(mp.re(z), digits),
                        "im": fmt_mpf(mp.im(z), digits),
                        "radius": fmt_mpf(r, 8),
                        "verdict": v,
                    }
                    for z, r, v in zip(circ.roots, circ.radii, circ.verdicts)
                ],
                "num_on": circ.num_on,
                "num_off": circ.num_off,
                "num_uncertain": circ.num_uncertain,
                "star_discrepancy": disc,
            },
            "trig_certificate": {
                "kind": scan.kind,
                "sign_changes": list(scan.changes),
                "certified_on_circle": scan.certified_on_circle,
                "failing_intervals": list(scan.failing),
                "boundary_zero": scan.boundary_zero,
            },
            "gate": {
                "case": gate.case,
                "satisfied": gate.satisfied,
                "m": gate.m,
                "hodge_ok": gate.hodge_ok,
                "hodge_lhs": gate.hodge_lhs,
                "hodge_rhs": gate.hodge_rhs,
                "a_m": (None if gate.a_m is None else fmt_mpf(gate.a_m, 12)),
                "a_m_power_d": (None if gate.a_m_power_d is None
                                else fmt_mpf(gate.a_m_power_d, 12)),
                "margins_11": [_pair(v, e, 12) for v, e in gate.margins_11],
                "margin_22": (None if gate.margin_22 is None
                              else _pair(gate.margin_22[0],
                                         gate.margin_22[1], 12)),
                "notes": list(gate.notes),
            },
            "rouche": rouche_obj,
            "zeta": {
                "e": zp.e,
                "eps": zp.eps,
                "coefficients": [_pair(v, err, digits)
                                 for v, err in zp.coeffs],
                "roots": [[fmt_mpf(mp.re(z), digits),
                           fmt_mpf(mp.im(z), digits)]
                          for z in zcheck.roots],
                "fe_residual": zcheck.fe_residual,
                "max_line_deviation": zcheck.max_line_deviation,
                "line_ok": zcheck.ok,
                "closed_form_winner": winner,
                "closed_form_agreement": agreement,
                "convention_report": {k: float(v)
                                      for k, v in closed_report.items()},
            },
            "checks": checks,
        }

    lines = [
        "dataset %s  (weight %d, degree %d, conductor %d, eps %+d)"
        % (label, data.weight, data.degree, data.conductor,
           data.root_number),
        "special values:",
    ]
    for s in sorted(vals.values):
        lines.append("  Lambda(%d) = %s +- %s"
                     % (s, fmt_mpf(vals.values[s][0], 20),
                        fmt_mpf(vals.values[s][1], 4)))
    lines.append("hypothesis violations: %s"
                 % (", ".join(violations) if violations else "none"))
    lines.append("gate: %s (satisfied: %s)" % (gate.case, gate.satisfied))
    lines.append("circle: %d on / %d off / %d uncertain, discrepancy %.4f"
                 % (circ.num_on, circ.num_off, circ.num_uncertain, disc))
    if forced_root:
        lines.append("forced root at z = 1 (eps = -1)")
    lines.append("trig certificate: %d roots certified on the circle"
                 % scan.certified_on_circle)
    lines.append("zeta: FE residual %.3e, line deviation %.3e, "
                 "closed form %s agrees to %.3e"
                 % (zcheck.fe_residual, zcheck.max_line_deviation, winner,
                    agreement))
    lines.append("checks: %s" % ("all pass" if checks["all_pass"]
                                 else "FAILED"))
    _emit(config, report, "\n".join(lines) + "\n")

    if not checks["all_pass"]:
        raise VerificationError(
            "analysis checks failed: "
            + ", ".join(k for k, v in checks.items() if not v and
                        k != "all_pass"))
    return 0


def cmd_disc_table(config):
    d = int(config.degree)
    if d % 2 != 0 or not 2 <= d <= 12:
        raise InputError("degree must be even with 2 <= d <= 12")
    n_max = int(config.n_max)
    if n_max < 1:
        raise InputError("--n-max must be positive")
    start = time.monotonic()
    failures = []
    try:
        transitions = disc_transition_table(d, n_max, radius=config.radius)
    except CertificationError as exc:
        failures.append(str(exc))
        transitions = []
    elapsed = time.monotonic() - start

    segments = []
    for i, (n0, count) in enumerate(transitions):
        n1 = (transitions[i + 1][0] - 1) if i + 1 < len(transitions) \
            else n_max
        segments.append({"from": n0, "to": n1, "count": count})
    report = {
        "format": FORMAT_REPORT,
        "library_version": __version__,
        "command": "disc-table",
        "degree": d,
        "n_max": n_max,
        "radius": float(config.radius),
        "transitions": [{"n": n, "count": c} for n, c in transitions],
        "segments": segments,
        "certification_failures": failures,
        "elapsed_seconds": round(elapsed, 3),
    }
    lines = ["disc-zero counts c_{%d,N} inside |z| < %g" % (d, config.radius)]
    for seg in segments:
        lines.append("  N in [%d, %d]: %d" % (seg["from"], seg["to"],
                                              seg["count"]))
    for f in failures:
        lines.append("  certification failure: %s" % f)
    _emit(config, report, "\n".join(lines) + "\n")
    if failures:
        raise CertificationError("; ".join(failures))
    return 0


def cmd_am_table(config):
    m_max = int(config.m_max)
    if m_max < 2:
        raise InputError("--m-max must be at least 2")
    bits = int(config.precision_bits)
    start = time.monotonic()
    rows = []
    with mp.workprec(bits):
        for m in range(2, m_max + 1):
            rows.append({"m": m, "a_m": fmt_mpf(compute_A_m(m, bits=bits),
                                                20)})
    elapsed = time.monotonic() - start
    report = {
        "format": FORMAT_REPORT,
        "library_version": __version__,
        "command": "am-table",
        "precision_bits": bits,
        "rows": rows,
        "elapsed_seconds": round(elapsed, 3),
    }
    lines = ["gate constants A_m (decreasing to 2 pi)"]
    for row in rows:
        lines.append("  A_%d = %s" % (row["m"], row["a_m"]))
    _emit(config, report, "\n".join(lines) + "\n")
    return 0


def cmd_cache(config):
    if not config.cache_dir:
        raise InputError("--dir is required")
    cache = SpecialValuesCache(config.cache_dir)
    keys = sorted(cache.existing_keys())
    groups = {}
    for label, sym, s, bits in keys:
        groups.setdefault((label, sym, bits), []).append(s)
    entries = [
        {"label": label, "sym": sym, "bits": bits,
         "s_values": sorted(ss), "records": len(ss)}
        for (label, sym, bits), ss in sorted(groups.items())
    ]
    report = {
        "format": FORMAT_REPORT,
        "library_version": __version__,
        "command": "cache",
        "path": cache.path,
        "total_records": len(keys),
        "entries": entries,
    }
    lines = ["cache %s: %d records" % (cache.path, len(keys))]
    for e in entries:
        lines.append("  %s sym=%d bits=%d s=%s"
                     % (e["label"], e["sym"], e["bits"], e["s_values"]))
    _emit(config, report, "\n".join(lines) + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="periodpoly",
        description="Completed special values of self-dual motivic "
                    "L-functions and the unit-circle geometry of their "
                    "period polynomials.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--precision-bits", type=int, default=_DEFAULT_BITS,
                       help="working mantissa bits (default %d, min 64)"
                            % _DEFAULT_BITS)
        p.add_argument("--json", dest="table", action="store_false",
                       default=False, help="emit a canonical JSON report "
                                           "(default)")
        p.add_argument("--table", dest="table", action="store_true",
                       help="emit a human-readable table instead of JSON")
        p.add_argument("--output", help="write the report here instead of "
                                        "stdout")

    pa = sub.add_parser("analyze", help="full pipeline for one dataset")
    pa.add_argument("--coeffs", dest="coeffs_path",
                    help="coefficient file (format=periodpoly-coeffs-1)")
    pa.add_argument("--curve", dest="curve_path",
                    help="curve file (format=periodpoly-curves-1)")
    pa.add_argument("--sym", type=int, default=0,
                    help="odd symmetric-power index (curve input only)")
    pa.add_argument("--label", help="curve label to pick from the file")
    pa.add_argument("--eps-overrides", dest="eps_overrides_path",
                    help="recorded root numbers (format=periodpoly-eps-1)")
    pa.add_argument("--target-error", type=float, default=None,
                    help="absolute error target for completed values "
                         "(default: value scale * 1e-25)")
    pa.add_argument("--coeff-limit", type=int, default=_DEFAULT_COEFFS,
                    help="how many Dirichlet coefficients to generate from "
                         "a curve (default %d)" % _DEFAULT_COEFFS)
    pa.add_argument("--cache-dir", help="special-values cache directory")
    common(pa)

    pd = sub.add_parser("disc-table", help="disc-zero count table c_{d,N}")
    pd.add_argument("--degree", type=int, required=True,
                    help="even degree d, 2 <= d <= 12")
    pd.add_argument("--n-max", type=int, default=800,
                    help="top of the conductor range (default 800)")
    pd.add_argument("--radius", type=float, default=1.0,
                    help="disc radius (default 1.0)")
    common(pd)

    pm = sub.add_parser("am-table", help="gate constants A_m")
    pm.add_argument("--m-max", type=int, default=50,
                    help="tabulate A_2..A_m (default 50)")
    common(pm)

    pc = sub.add_parser("cache", help="inspect a special-values cache")
    pc.add_argument("--dir", dest="cache_dir", required=True,
                    help="cache directory")
    common(pc)
    return parser


def _config_from_args(args):
    fields = ("coeffs_path", "curve_path", "sym", "label",
              "eps_overrides_path", "target_error", "coeff_limit",
              "cache_dir", "output", "radius", "table", "degree", "n_max",
              "m_max", "precision_bits")
    kwargs = {"subcommand": args.subcommand}
    for f in fields:
        if hasattr(args, f) and getattr(args, f) is not None:
            kwargs[f] = getattr(args, f)
    return RunConfig(**kwargs)


_DISPATCH = {
    "analyze": cmd_analyze,
    "disc-table": cmd_disc_table,
    "am-table": cmd_am_table,
    "cache": cmd_cache,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return _DISPATCH[config.subcommand](config)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    except (VerificationError, ConventionError) as exc:
        print("verification failure: %s" % exc, file=sys.stderr)
        return 1
    except (CertificationError, QuadratureError,
            InsufficientCoefficients) as exc:
        print("certification failure: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
