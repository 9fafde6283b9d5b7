"""Command line interface.

Subcommands:
  classify  hermitian / Moore-Penrose / EP report for one matrix file
  product   EP product analysis for two matrix files
  suite     seeded property-suite runner
  examples  the fixed gallery of norm-dependence counterexamples

Matrix files are JSON objects {"rows": m, "cols": n, "entries": [[re, im],
...]} in row-major order; complex entries are [re, im] pairs so that
serialization round-trips bit-exactly.  Reports are deterministic for a
fixed input, seed, and flag set; ``--report json`` emits the structured
form the tests target.

Exit codes: 0 success, 2 parse or usage error, 3 tolerance breakdown,
4 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .ep import is_ep, product_ep_check
from .hermitian import is_hermitian, is_hermitian_idempotent
from .kernels import BACKEND
from .matcore import PreconditionError, ToleranceBreakdown, ToleranceProfile, as_matrix
from .moorepenrose import mp_inverse
from .norms import NormKind
from .suites import run_suite

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_TOLERANCE = 3
EXIT_PRECONDITION = 4


class ParseError(Exception):
    pass


# ---------------------------------------------------------------------------
# matrix file format


def matrix_to_obj(m):
    m = np.asarray(m, dtype=np.complex128)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def obj_to_matrix(obj):
    if not isinstance(obj, dict):
        raise ParseError("matrix object must be a JSON object")
    try:
        rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix object: {exc}") from exc
    if rows < 0 or cols < 0 or not isinstance(entries, list) or len(entries) != rows * cols:
        raise ParseError("entries length must equal rows * cols")
    flat = []
    for e in entries:
        if not (isinstance(e, list) and len(e) == 2):
            raise ParseError("each entry must be a [re, im] pair")
        flat.append(complex(float(e[0]), float(e[1])))
    m = np.array(flat, dtype=np.complex128).reshape(rows, cols)
    try:
        return as_matrix(m)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return obj_to_matrix(obj)


# ---------------------------------------------------------------------------
# report rendering


def _fmt(x):
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _is_flat(value):
    return isinstance(value, list) and not any(isinstance(x, (dict, list)) for x in value)


def _fmt_flat(value):
    return "[" + ", ".join(_fmt(x) for x in value) + "]"


def _render_text(obj, indent=0, lines=None):
    lines = [] if lines is None else lines
    pad = "  " * indent
    if isinstance(obj, dict):
        for key, value in obj.items():
            if _is_flat(value):
                lines.append(f"{pad}{key}: {_fmt_flat(value)}")
            elif isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                _render_text(value, indent + 1, lines)
            else:
                lines.append(f"{pad}{key}: {_fmt(value)}")
    elif isinstance(obj, list):
        for value in obj:
            if _is_flat(value):
                lines.append(f"{pad}- {_fmt_flat(value)}")
            elif isinstance(value, (dict, list)):
                _render_text(value, indent + 1, lines)
            else:
                lines.append(f"{pad}- {_fmt(value)}")
    return lines


def emit(report, fmt, stream=None):
    stream = sys.stdout if stream is None else stream
    if fmt == "json":
        stream.write(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        stream.write("\n".join(_render_text(report)) + "\n")


def _common_meta(args, tol):
    return {
        "version": __version__,
        "backend": BACKEND,
        "tolerances": {
            "herm_tol": tol.herm_tol,
            "rank_rel_tol": tol.rank_rel_tol,
            "zero_abs_tol": tol.zero_abs_tol,
        },
    }


# ---------------------------------------------------------------------------
# subcommands


def _classify_sections(m, kind, tol):
    sections = {}
    verdict = is_hermitian(m, kind, tol, sweep_points=201)
    sections["hermitian"] = {
        "is_hermitian": verdict.is_hermitian,
        "log_norm_plus": verdict.log_norm_plus,
        "log_norm_minus": verdict.log_norm_minus,
        "sweep_max_defect": verdict.sweep_max_defect,
        "is_hermitian_idempotent": is_hermitian_idempotent(m, kind, tol),
    }
    res = mp_inverse(m, kind, tol)
    if not res.exists:
        sections["moore_penrose"] = {"exists": False, "failure": res.failure.value}
        sections["ep"] = None
        return sections
    sections["moore_penrose"] = {
        "exists": True,
        "mp": matrix_to_obj(res.mp),
        "witness_p": matrix_to_obj(res.witness_p),
        "witness_q": matrix_to_obj(res.witness_q),
        "residual_axa": res.residual_axa,
        "residual_xax": res.residual_xax,
    }
    report = is_ep(m, kind, tol)
    ep_section = {
        "is_ep": report.is_ep,
        "commutator_norm": report.commutator_norm,
        "equivalences": {
            "commutes": report.checks.commutes,
            "nullspace_match": report.checks.nullspace_match,
            "range_match": report.checks.range_match,
            "witness_found": report.checks.witness_found,
        },
    }
    if report.is_ep:
        ep_section["witness_p"] = matrix_to_obj(report.witness_p)
        ep_section["witness_q"] = matrix_to_obj(report.witness_q)
    sections["ep"] = ep_section
    return sections


def cmd_classify(args):
    tol = ToleranceProfile.from_herm_tol(args.tol)
    kind = NormKind.from_label(args.norm)
    m = load_matrix(args.path)
    report = {
        "command": "classify",
        "input": {"path": args.path, "matrix": matrix_to_obj(m)},
        "norm": kind.value,
        **_common_meta(args, tol),
        **_classify_sections(m, kind, tol),
    }
    emit(report, args.report)
    return EXIT_OK


def cmd_product(args):
    tol = ToleranceProfile.from_herm_tol(args.tol)
    kind = NormKind.from_label(args.norm)
    s = load_matrix(args.path_s)
    t = load_matrix(args.path_t)
    result = product_ep_check(s, t, kind, tol)
    report = {
        "command": "product",
        "inputs": {"s": args.path_s, "t": args.path_t},
        "norm": kind.value,
        **_common_meta(args, tol),
        "product": {
            "hyp_range": result.hyp_range,
            "hyp_null": result.hyp_null,
            "null_sum_eq": result.null_sum_eq,
            "range_cap_eq": result.range_cap_eq,
            "product_ep": result.product_ep,
            "hyp_range_defect": result.hyp_range_defect,
            "hyp_null_defect": result.hyp_null_defect,
        },
    }
    emit(report, args.report)
    return EXIT_OK


def cmd_suite(args):
    tol = ToleranceProfile.from_herm_tol(args.tol)
    kind = NormKind.from_label(args.norm)
    suite = run_suite(seed=args.seed, instances=args.instances, norm=kind, size=args.size, tol=tol)
    report = {
        "command": "suite",
        "seed": args.seed,
        "instances": args.instances,
        "size": args.size,
        "norm": kind.value,
        **_common_meta(args, tol),
        "tolerance_supported": suite.tolerance_supported,
        "all_passed": suite.all_passed,
        "properties": [
            {
                "name": o.name,
                "passed": o.passed,
                "checked": o.checked,
                "failures": o.failures,
            }
            for o in suite.outcomes
        ],
    }
    if args.instances == 0 and suite.tolerance_supported:
        report["warning"] = "0 instances requested; all properties pass vacuously"
    if not suite.tolerance_supported:
        report["warning"] = (
            "herm_tol above the supported range; suite verdicts would be "
            "unreliable, refusing to certify"
        )
    emit(report, args.report)
    if not suite.tolerance_supported:
        return EXIT_TOLERANCE
    return EXIT_OK if suite.all_passed else 1


# the fixed gallery: the two classical norm-dependence counterexamples on
# C^2 and the projector pair whose product is not EP
_SYM_PROJECTOR = [[0.5, -0.5], [-0.5, 0.5]]
_DIFFERENCE_MAP = [[1.0, -1.0], [0.0, 0.0]]
_DIAG_PROJECTOR = [[1.0, 0.0], [0.0, 0.0]]
_AVERAGING_PROJECTOR = [[0.5, 0.5], [0.5, 0.5]]


def _gallery_entries():
    tol = ToleranceProfile()
    sym = np.array(_SYM_PROJECTOR, dtype=np.complex128)
    diff = np.array(_DIFFERENCE_MAP, dtype=np.complex128)
    entries = []

    def classify_entry(name, m, kind, expected):
        sections = _classify_sections(m, kind, tol)
        got = {
            "is_hermitian": sections["hermitian"]["is_hermitian"],
            "is_hermitian_idempotent": sections["hermitian"]["is_hermitian_idempotent"],
            "mp_exists": sections["moore_penrose"]["exists"],
        }
        if not got["mp_exists"]:
            got["failure"] = sections["moore_penrose"]["failure"]
        else:
            got["is_ep"] = sections["ep"]["is_ep"]
        entries.append(
            {
                "name": name,
                "norm": kind.value,
                "matrix": matrix_to_obj(m),
                "report": sections,
                "expected": expected,
                "matches": got == expected,
            }
        )

    classify_entry(
        "symmetric-line-projector",
        sym,
        NormKind.L2,
        {"is_hermitian": True, "is_hermitian_idempotent": True, "mp_exists": True, "is_ep": True},
    )
    classify_entry(
        "symmetric-line-projector",
        sym,
        NormKind.L1,
        {
            "is_hermitian": False,
            "is_hermitian_idempotent": False,
            "mp_exists": False,
            "failure": "nullspace_not_representable",
        },
    )
    classify_entry(
        "coordinate-difference-map",
        diff,
        NormKind.L2,
        {"is_hermitian": False, "is_hermitian_idempotent": False, "mp_exists": True, "is_ep": False},
    )
    classify_entry(
        "coordinate-difference-map",
        diff,
        NormKind.L1,
        {
            "is_hermitian": False,
            "is_hermitian_idempotent": False,
            "mp_exists": False,
            "failure": "nullspace_not_representable",
        },
    )

    s = np.array(_DIAG_PROJECTOR, dtype=np.complex128)
    t = np.array(_AVERAGING_PROJECTOR, dtype=np.complex128)
    result = product_ep_check(s, t, NormKind.L2, tol)
    got = {"hyp_range": result.hyp_range, "product_ep": result.product_ep}
    expected = {"hyp_range": False, "product_ep": False}
    entries.append(
        {
            "name": "projector-product-counterexample",
            "norm": "l2",
            "matrices": {"s": matrix_to_obj(s), "t": matrix_to_obj(t)},
            "report": {
                "hyp_range": result.hyp_range,
                "hyp_null": result.hyp_null,
                "null_sum_eq": result.null_sum_eq,
                "range_cap_eq": result.range_cap_eq,
                "product_ep": result.product_ep,
                "hyp_range_defect": result.hyp_range_defect,
                "hyp_null_defect": result.hyp_null_defect,
            },
            "expected": expected,
            "matches": got == expected,
        }
    )
    return entries


def cmd_examples(args):
    entries = _gallery_entries()
    report = {
        "command": "examples",
        "version": __version__,
        "backend": BACKEND,
        "entries": entries,
        "all_match": all(e["matches"] for e in entries),
    }
    emit(report, args.report)
    return EXIT_OK if report["all_match"] else 1


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(parser, norm=True):
    if norm:
        parser.add_argument("--norm", default="l2", choices=["l1", "l2", "linf"])
        parser.add_argument(
            "--tol",
            type=float,
            default=ToleranceProfile().herm_tol,
            help="hermitian tolerance; the other thresholds scale from it",
        )
    parser.add_argument("--report", default="text", choices=["text", "json"])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="banachmp",
        description=(
            "Hermitian, Moore-Penrose and EP classification for matrices "
            "acting on C^n under the l1/l2/linf norms"
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one matrix file")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("product", help="EP product analysis of two matrix files")
    p.add_argument("path_s")
    p.add_argument("path_t")
    _add_common(p)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("suite", help="run the seeded property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--size", type=int, default=4)
    _add_common(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("examples", help="run the fixed counterexample gallery")
    _add_common(p, norm=False)
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ToleranceBreakdown as exc:
        print(f"tolerance breakdown: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
