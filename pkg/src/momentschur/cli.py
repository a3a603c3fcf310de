"""Command line front end: schur | classify | interval | class-test.

Commands read UTF-8 JSON (a file path, or "-" for stdin) and write one JSON
report to stdout; diagnostics go to stderr.  Exit codes: 0 ok, 2 parse error,
3 not PSD (including Hankel/Stieltjes nonnegativity failures), 4 dimension
mismatch, 5 even-length input on the Hamburger path, 6 non-Hermitian input,
7 sequence shape mismatch.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotHermitian,
    NotPSD,
    OddOrderUnsupported,
    ParseError,
    ShapeMismatch,
    TooShort,
)
from .hamburger import (
    _class_conditions as _hamburger_conditions,
    classify_hamburger,
    in_extension_interval,
    r_upper,
    same_class,
    theta,
)
from .jsonio import (
    dumps,
    loads,
    matrix_json,
    parse_matrix,
    parse_schur_file,
    parse_sequence_file,
    sequence_json,
)
from .linalg import (
    Tolerance,
    as_matrix,
    herm_part,
    loewner_leq,
    numerical_rank,
    psd_verdict,
    range_included,
    ranges_intersect_trivially,
    subspace_from_columns,
)
from .schur import schur_complement
from .stieltjes import (
    _class_conditions as _stieltjes_conditions,
    classify_stieltjes,
    in_extension_interval_stieltjes,
    r_upper_stieltjes,
    same_class_stieltjes,
    u_lower,
)


def _read_json(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def _tolerance(args) -> Tolerance:
    return Tolerance(eps_rel=args.tol) if args.tol is not None else Tolerance()


def _resolve_alpha(args, *file_alphas):
    if args.alpha is not None:
        return float(args.alpha)
    for a in file_alphas:
        if a is not None:
            return a
    return None


def cmd_schur(args) -> dict:
    t = _tolerance(args)
    A, V_columns = parse_schur_file(_read_json(args.input))
    V = subspace_from_columns(V_columns, t)
    result = schur_complement(A, V, t)
    M = herm_part(as_matrix(A))
    rank_A = numerical_rank(M, t)
    rank_S = numerical_rank(result.S, t)
    intersection_dim = rank_A + V.dim - numerical_rank(np.hstack([M, V.basis]), t)
    return {
        "command": "schur",
        "tolerance": t.eps_rel,
        "q": M.shape[0],
        "dim_V": V.dim,
        "rank_A": rank_A,
        "rank_S": rank_S,
        "S": matrix_json(result.S),
        "P_fiber": matrix_json(result.P_fiber),
        "complement": matrix_json(result.complement),
        "checks": {
            "S_psd": psd_verdict(result.S, t),
            "S_leq_A": loewner_leq(result.S, M, t),
            "range_S_in_V": range_included(result.S, V.basis, t),
            "range_S_in_range_A": range_included(result.S, M, t),
            "rank_S_is_dim_of_range_A_cap_V": rank_S == intersection_dim,
            "complement_range_meets_V_trivially": ranges_intersect_trivially(
                result.complement, V.basis, t
            ),
        },
    }


def cmd_classify(args) -> dict:
    t = _tolerance(args)
    seq, file_alpha = parse_sequence_file(_read_json(args.input))
    alpha = _resolve_alpha(args, file_alpha)
    if alpha is None:
        rep = classify_hamburger(seq, t)
        return {
            "command": "classify",
            "mode": "hamburger",
            "tolerance": t.eps_rel,
            "q": rep.q,
            "n": rep.n,
            "is_hnnd": rep.is_hnnd,
            "is_hnnde": rep.is_hnnde,
            "theta": matrix_json(rep.theta),
            "L": matrix_json(rep.L),
            "L_prev": matrix_json(rep.L_prev) if rep.L_prev is not None else None,
            "R": matrix_json(rep.R) if rep.R is not None else None,
            "canonical": sequence_json(rep.canonical) if rep.canonical is not None else None,
        }
    rep = classify_stieltjes(seq, alpha, t)
    return {
        "command": "classify",
        "mode": "stieltjes",
        "tolerance": t.eps_rel,
        "q": rep.q,
        "m": rep.m,
        "alpha": rep.alpha,
        "is_knnd": rep.is_knnd,
        "is_knnde": rep.is_knnde,
        "kappa": [matrix_json(k) for k in rep.kappa],
        "u": [matrix_json(u) for u in rep.u],
        "R": matrix_json(rep.R) if rep.R is not None else None,
        "canonical": (
            sequence_json(rep.canonical, alpha) if rep.canonical is not None else None
        ),
    }


def cmd_interval(args) -> dict:
    t = _tolerance(args)
    seq, file_alpha = parse_sequence_file(_read_json(args.input))
    alpha = _resolve_alpha(args, file_alpha)
    T = parse_matrix(_read_json(args.last), scalar_ok=True)
    if alpha is None:
        n = seq.kappa // 2
        bound = "given_s2n" if args.bound == "given" else "r_upper"
        member = in_extension_interval(seq, T, bound, t)
        lower = theta(seq, n, t)
        upper = seq[2 * n] if args.bound == "given" else r_upper(seq, n, t)
        report = {
            "command": "interval",
            "mode": "hamburger",
            "tolerance": t.eps_rel,
            "q": seq.q,
            "bound": args.bound,
        }
    else:
        m = seq.kappa
        bound = "given_sm" if args.bound == "given" else "r_upper"
        member = in_extension_interval_stieltjes(seq, alpha, T, bound, t)
        lower = u_lower(seq, alpha, m - 1, t)
        upper = seq[m] if args.bound == "given" else r_upper_stieltjes(seq, alpha, m, t)
        report = {
            "command": "interval",
            "mode": "stieltjes",
            "tolerance": t.eps_rel,
            "q": seq.q,
            "alpha": alpha,
            "bound": args.bound,
        }
    report["lower"] = matrix_json(lower)
    report["upper"] = matrix_json(upper)
    report["member"] = member
    return report


def cmd_class_test(args) -> dict:
    t = _tolerance(args)
    s, alpha_s = parse_sequence_file(_read_json(args.input_s))
    r, alpha_r = parse_sequence_file(_read_json(args.input_r))
    alpha = _resolve_alpha(args, alpha_s, alpha_r)
    if alpha is None:
        verdict = same_class(s, r, t)
        prefix_equal, diff_psd, diff_disjoint = _hamburger_conditions(s, r, t)
        report = {
            "command": "class-test",
            "mode": "hamburger",
            "tolerance": t.eps_rel,
            "q": s.q,
        }
    else:
        verdict = same_class_stieltjes(s, r, alpha, t)
        prefix_equal, diff_psd, diff_disjoint = _stieltjes_conditions(s, r, alpha, t)
        report = {
            "command": "class-test",
            "mode": "stieltjes",
            "tolerance": t.eps_rel,
            "q": s.q,
            "alpha": alpha,
        }
    report["checks"] = {
        "prefix_equal": prefix_equal,
        "difference_psd": diff_psd,
        "difference_range_disjoint": diff_disjoint,
    }
    report["same_class"] = verdict
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentschur",
        description="Subspace Schur complements and moment sequence classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, alpha=True):
        sp.add_argument("--tol", type=float, default=None, metavar="EPS",
                        help="relative tolerance (default 1e-10)")
        if alpha:
            sp.add_argument("--alpha", type=float, default=None, metavar="A",
                            help="half-line endpoint; selects the Stieltjes path")

    sp = sub.add_parser("schur", help="Schur complement of A relative to span of V's columns")
    sp.add_argument("input", help="JSON file with fields A and V ('-' for stdin)")
    common(sp, alpha=False)
    sp.set_defaults(func=cmd_schur)

    sp = sub.add_parser("classify", help="nonnegative definiteness and extendability report")
    sp.add_argument("input", help="sequence file ('-' for stdin)")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("interval", help="test a candidate last block against the admissible interval")
    sp.add_argument("input", help="sequence file ('-' for stdin)")
    sp.add_argument("--last", required=True, metavar="PATH",
                    help="JSON file holding the candidate block (matrix or bare number)")
    sp.add_argument("--bound", choices=("given", "canonical"), default="given",
                    help="upper endpoint: the given last block, or the canonical bound R")
    common(sp)
    sp.set_defaults(func=cmd_interval)

    sp = sub.add_parser("class-test", help="do two sequences share one extension class?")
    sp.add_argument("input_s", help="reference sequence file ('-' for stdin)")
    sp.add_argument("input_r", help="competing sequence file")
    common(sp)
    sp.set_defaults(func=cmd_class_test)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except (ParseError, TooShort, IndexOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotPSD as exc:  # includes NotHNND and NotKNND
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OddOrderUnsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except NotHermitian as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 6
    except ShapeMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 7
    sys.stdout.write(dumps(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
