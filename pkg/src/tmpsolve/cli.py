"""Command-line front end: analyze, solve, verify and generate.

Exit codes: 0 success (a measure, a passing verification), 1 usage or
parse error, 2 no measure exists, 3 inconclusive.

File formats (JSON)::

    ProblemFile  {"degree": 6, "moments": [{"i": 0, "j": 0, "value": "1"}, ...],
                  "mode": "exact" | "float"}                       # mode optional
    MeasureFile  {"atoms": [{"x": "4", "y": "3", "density": "1/320"}, ...],
                  "algebraic_atoms": [{"g": [...], "x": [...], "y": [...],
                                       "n": [...], "approx": [...]}],   # optional
                  "provenance": {...}}

Values are "p/q" rationals, integers or decimal strings.  Without a mode
hint or ``--mode`` a problem is exact when no value is a decimal.
"""

import argparse
import dataclasses
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .algebraic import RootBlock
from .core import AtomicMeasure, MomentSequence, monomial_basis
from .errors import InconclusiveError
from .foundry import CONIC_KINDS, PAIR_CASES, TEMPLATES, GenSpec, InfeasibleSpec, generate
from .poly2d import BiPoly
from .solver import classify, solve, verify_measure
from .solver.common import matrix, ranks
from .solver.outcome import INCONCLUSIVE, MEASURE, NO_MEASURE
from .exactla import psd
from .variety import column_relations, compute_variety, consistency_check

EXIT_OK, EXIT_USAGE, EXIT_NO_MEASURE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
STATUS_EXIT = {MEASURE: EXIT_OK, NO_MEASURE: EXIT_NO_MEASURE, INCONCLUSIVE: EXIT_INCONCLUSIVE}


class FormatError(ValueError):
    """A problem or measure file that cannot be read."""


# --- values ---------------------------------------------------------------------

def _is_decimal(text):
    return any(c in text for c in ".eE") and "/" not in text


def parse_value(raw, mode=None):
    """Fraction or float from a JSON value; decimals stay float unless mode is exact."""
    text = str(raw).strip()
    if not text:
        raise FormatError("empty numeric value")
    try:
        if mode == "float":
            return float(Fraction(text)) if "/" in text else float(text)
        if mode == "exact" or not _is_decimal(text):
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad numeric value {raw!r}") from exc


def format_value(v):
    """Rationals as "p/q" (or an integer), floats with full precision."""
    if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(float(v))


# --- problem files ---------------------------------------------------------------

def problem_from_json(data, mode=None):
    if not isinstance(data, dict) or "moments" not in data or "degree" not in data:
        raise FormatError("problem file needs 'degree' and 'moments'")
    degree = data["degree"]
    if not isinstance(degree, int) or degree < 0 or degree % 2:
        raise FormatError("degree must be a nonnegative even integer")
    mode = mode or data.get("mode")
    if mode not in (None, "exact", "float"):
        raise FormatError(f"unknown mode {mode!r}")
    raw = {}
    for entry in data["moments"]:
        try:
            key = (int(entry["i"]), int(entry["j"]))
            val = entry["value"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad moment entry {entry!r}") from exc
        if key in raw:
            raise FormatError(f"duplicate moment {key}")
        raw[key] = val
    wanted = set(monomial_basis(degree))
    missing = sorted(wanted - set(raw), key=lambda m: (sum(m), -m[0]))
    if missing:
        raise FormatError(f"missing moment beta_{missing[0][0]}{missing[0][1]}")
    extra = set(raw) - wanted
    if extra:
        raise FormatError(f"moment index {sorted(extra)[0]} exceeds the degree")
    if mode is None:
        mode = "float" if any(_is_decimal(str(v)) for v in raw.values()) else "exact"
    beta = {k: parse_value(v, mode) for k, v in raw.items()}
    return MomentSequence(degree // 2, beta, mode)


def problem_to_json(beta):
    return {
        "degree": beta.order,
        "mode": beta.mode,
        "moments": [{"i": i, "j": j, "value": format_value(beta[(i, j)])} for i, j in monomial_basis(beta.order)],
    }


# --- measure files ---------------------------------------------------------------

def measure_to_json(mu, provenance=None):
    out = {"atoms": [{"x": format_value(x), "y": format_value(y), "density": format_value(w)}
                     for x, y, w in mu.atoms]}
    if mu.blocks:
        out["algebraic_atoms"] = [{
            "g": [format_value(c) for c in b.g],
            "x": [format_value(c) for c in b.X],
            "y": [format_value(c) for c in b.Y],
            "n": [format_value(c) for c in b.N],
            "approx": [{"x": x, "y": y, "density": w} for x, y, w in b.float_atoms()],
        } for b in mu.blocks]
    if provenance is not None:
        out["provenance"] = provenance
    return out


def measure_from_json(data):
    if not isinstance(data, dict) or "atoms" not in data:
        raise FormatError("measure file needs 'atoms'")
    atoms = []
    for a in data["atoms"]:
        try:
            atom = tuple(parse_value(a[k]) for k in ("x", "y", "density"))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad atom entry {a!r}") from exc
        if not atom[2] > 0:
            raise FormatError(f"density must be positive, got {a['density']!r}")
        atoms.append(atom)
    if any(isinstance(c, float) for a in atoms for c in a):
        atoms = [tuple(float(c) for c in a) for a in atoms]
    blocks = []
    for b in data.get("algebraic_atoms", []):
        try:
            blocks.append(RootBlock(*(tuple(parse_value(c, "exact") for c in b[k]) for k in ("g", "x", "y", "n"))))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad algebraic atom entry {b!r}") from exc
        if not blocks[-1].densities_positive():
            raise FormatError("algebraic atom densities must be positive")
    return AtomicMeasure(atoms, blocks)


# --- JSON rendering of certificates ---------------------------------------------------

def jsonable(obj):
    """Plain JSON data for certificate values (rationals become "p/q" strings)."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (Fraction, int)):
        return format_value(obj) if isinstance(obj, Fraction) else obj
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else ("inf" if f > 0 else "-inf" if f < 0 else "nan")
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()] if obj.dtype != object else [jsonable(v) for v in obj]
    if isinstance(obj, BiPoly):
        return str(obj)
    if isinstance(obj, AtomicMeasure):
        return measure_to_json(obj)
    if hasattr(obj, "describe"):
        return obj.describe()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [jsonable(v) for v in obj]
    return str(obj)


# bulky matrices stay out of the default certificate summary
_SUMMARY_SKIP = {"residual_matrix", "sub_certificate", "relations"}


def certificate_summary(cert):
    return {k: jsonable(v) for k, v in cert.items() if k not in _SUMMARY_SKIP}


def _emit(args, payload, text):
    if args.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def _load_problem(args):
    return problem_from_json(_read_json(args.problem), args.mode)


# --- commands ----------------------------------------------------------------------

def _v_text(v):
    return "∞" if v == math.inf else "?" if isinstance(v, float) and math.isnan(v) else str(v)


def cmd_analyze(args):
    beta = _load_problem(args)
    M = matrix(beta)
    is_psd = psd(M, args.tol)
    r, r_prev = ranks(beta, args.tol)
    report = {"n": beta.n, "mode": beta.mode, "rank": r, "rank_previous": r_prev, "psd": is_psd}
    rels, V, consistent = [], None, None
    try:
        rels = column_relations(M, args.tol)
        V = compute_variety(rels)
        if beta.exact and not V.exact:
            consistent = None
        else:
            consistent = consistency_check(beta, V, args.tol)
    except (InconclusiveError, ValueError) as exc:
        report["variety_error"] = str(exc)
    try:
        tag = classify(beta, args.tol)
    except InconclusiveError as exc:
        tag = None
        report["classify_error"] = exc.reason
    report["relations"] = [str(p) for p in rels]
    if V is not None:
        report["variety"] = {"kind": V.kind, "cardinality": _v_text(V.cardinality),
                             "points": jsonable(V.points), "components": [str(c) for c in V.components],
                             "description": V.describe()}
    report["consistent"] = consistent
    report["case"] = jsonable(tag)
    parts = [f"r={r}"]
    if not is_psd:
        parts.append("not psd")
    if V is not None:
        vt = _v_text(V.cardinality)
        if V.kind == "infinite":
            comps = " + ".join(str(c) for c in V.components) or "whole plane"
            extra = f" + {len(V.points)} points" if V.points else ""
            vt += f" ({'component' if len(V.components) == 1 else 'components'} {comps}{extra})"
        parts.append(f"v={vt}")
    if consistent is not None:
        parts.append("consistent" if consistent else "inconsistent")
    if tag is not None:
        parts.append("flat" if tag.route == "flat" else f"route {tag.route}")
    text = ", ".join(parts)
    if args.verbose and rels:
        text += "\nrelations:\n" + "\n".join(f"  {p} = 0" for p in rels)
    _emit(args, report, text)
    return EXIT_OK


def cmd_solve(args):
    beta = _load_problem(args)
    out = solve(beta, args.tol)
    summary = certificate_summary(out.certificate)
    payload = {"status": out.status, "reason": out.reason, "certificate": summary}
    if out.ok:
        payload["measure"] = measure_to_json(out.measure, provenance=summary)
        if args.measure_out:
            with open(args.measure_out, "w") as fh:
                json.dump(payload["measure"], fh, indent=2)
    tag = out.certificate.get("case")
    head = out.status + (f" ({out.reason})" if out.reason else "")
    if tag is not None:
        head += f"  r={tag.r} v={_v_text(tag.v)} route={tag.route}"
    lines = [head]
    if out.ok:
        lines.append(f"{out.measure.support_size} atoms:")
        lines.append(str(out.measure))
    _emit(args, payload, "\n".join(lines))
    return STATUS_EXIT[out.status]


def cmd_verify(args):
    beta = _load_problem(args)
    mu = measure_from_json(_read_json(args.measure))
    report = verify_measure(beta, mu, rank_tol=args.tol)
    text = (f"{'PASS' if report.passed else 'FAIL'}: support {report.support_size}, "
            f"max relative deviation {report.max_rel_deviation:.3g}"
            + (", exact match" if report.exact_match else "")
            + ("" if report.in_variety else ", atoms outside the variety")
            + ("" if report.densities_positive else ", nonpositive density"))
    _emit(args, jsonable(report), text)
    return EXIT_OK if report.passed else EXIT_NO_MEASURE


def cmd_generate(args):
    spec = GenSpec(args.atoms, args.template, args.range, args.mode or "exact", args.seed, args.variant or "")
    try:
        gen = generate(spec)
    except InfeasibleSpec as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    problem = problem_to_json(gen.beta)
    truth = measure_to_json(gen.measure, provenance={"template": spec.template, "variant": gen.variant,
                                                     "seed": spec.seed, "atoms": spec.atom_count})
    if args.measure_out:
        with open(args.measure_out, "w") as fh:
            json.dump(truth, fh, indent=2)
    text = json.dumps(problem, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        text = f"wrote {args.out}"
    print(text)
    return EXIT_OK


# --- entry point -----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float"), help="scalar mode (default: from the data)")
    common.add_argument("--tol", type=float, default=None, help="relative tolerance for float rank/psd decisions")
    common.add_argument("--output", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="tmpsolve", description="Atomic measures for bivariate truncated moment data.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="ranks, relations, variety and case of a problem")
    a.add_argument("problem")
    a.add_argument("-v", "--verbose", action="store_true", help="list the column relations")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("solve", parents=[common], help="find a representing measure or refute one")
    s.add_argument("problem")
    s.add_argument("--measure-out", help="also write the measure file here")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", parents=[common], help="check a measure file against a problem file")
    v.add_argument("problem")
    v.add_argument("measure")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", parents=[common], help="random problem with a known measure")
    g.add_argument("--template", choices=TEMPLATES, default="generic")
    g.add_argument("--atoms", type=int, default=6)
    g.add_argument("--range", type=int, default=4, help="coordinates lie in [-range, range]")
    g.add_argument("--variant", choices=CONIC_KINDS + tuple(c for c in PAIR_CASES if c not in CONIC_KINDS) + ("separated",),
                   help="conic kind (on-conic), case (on-cubic-pair) or separated (xy0, x2x)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="write the problem file here instead of stdout")
    g.add_argument("--measure-out", help="write the ground-truth measure file here")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
