"""Command-line driver: ``spectrakit <subcommand> ...``.

Exit codes
  0  success / positive verdict
  1  negative verdict (e.g. SingularWitnessUnknown, failed check)
  2  input error (unreadable or malformed file, unmet preconditions)
"""

from __future__ import annotations

import argparse
import sys
import time

from . import balllab, cubiclab, groebner
from .errors import HypothesisViolation, InputError, SpectraError
from .matpoly import adjugate, format_pencil, normalized_det, pencil_to_matrix, read_pencil
from .polyring import Poly, parse_poly, read_poly_file
from .report import AnalysisReport, digest_bytes

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2

EXIT_HELP = """exit codes:
  0  success or positive verdict
  1  negative verdict or failed check
  2  input error (bad file, unmet precondition)
"""

EXAMPLES = ("e2.6", "e3.3", "e3.8a", "e3.8b")


class Negative(Exception):
    """A computation finished with a negative verdict; carries the report."""

    def __init__(self, report):
        super().__init__(report.command)
        self.report = report


def _digest_file(path):
    try:
        with open(path, "rb") as fh:
            return digest_bytes(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", None, str(path)) from None


def _load_pencil(path):
    P = read_pencil(path)
    return P, _digest_file(path)


def _fresh(name, taken):
    while name in taken:
        name += "_"
    return name


# -- subcommands ---------------------------------------------------------------


def cmd_det(args):
    P, dig = _load_pencil(args.file)
    rep = AnalysisReport("det", dig)
    if args.form == "homogeneous":
        if balllab.HVAR in P.var_names:
            raise InputError(f"variable name {balllab.HVAR} is reserved for homogenization")
        d = pencil_to_matrix(P, "homogeneous", balllab.HVAR).det()
    else:
        d = normalized_det(P)
    rep.add("determinant", form=args.form, ring=list(d.ring), det=d, degree=d.total_degree() if d else -1)
    return rep


def cmd_adj(args):
    P, dig = _load_pencil(args.file)
    rep = AnalysisReport("adj", dig)
    M = pencil_to_matrix(P, "affine")
    A = adjugate(M)
    entries = {f"adj[{i}][{j}]": A.entries[i][j] for i in range(A.rows) for j in range(A.cols)}
    rep.add("adjugate", size=A.rows, **entries)
    return rep


def cmd_ball_rep(args):
    if args.n < 1:
        raise InputError("--n must be at least 1")
    P = balllab.standard_ball_pencil(args.n)
    text = format_pencil(P, comment=f"standard representation of the unit ball in dimension {args.n}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return f"wrote {args.output}\n"
    return text


def _check_ball_vars(P):
    if balllab.HVAR in P.var_names:
        raise InputError(f"variable name {balllab.HVAR} is reserved for homogenization")


def cmd_ball_analyze(args):
    P, dig = _load_pencil(args.file)
    _check_ball_vars(P)
    rep = AnalysisReport("ball-analyze", dig)
    data = balllab.ball_report(P)
    rep.add("homogenization", matrix="A0*x0 + sum Ai*xi", h=data["h"])
    rep.add(
        "divisibility",
        m=data["m"],
        quotient=data["quotient"],
        minor_check_size=data["minor_check_size"],
    )
    negative = data["m"] == 0
    chk = data["minor_check"]
    if chk is not None:
        rep.add(
            "minor_divisibility",
            size=chk.size,
            checked=chk.checked,
            passed=chk.passed,
            first_failure=chk.first_failure,
        )
        m1, wit = data["adjugate_profile"]
        rep.add("adjugate_gcd", exponent=m1, witness_entry=list(wit))
        negative = negative or not chk.passed
    pw = data["principal_witness"]
    rep.add(
        "principal_witness",
        note=f"principal minor of size >= r-m not divisible by h (m+1 = {data['m'] + 1})",
        size=pw[0] if pw else None,
        rows=list(pw[1]) if pw else None,
    )
    rep.verdict("h_divides_det", data["m"] >= 1)
    if negative:
        raise Negative(rep)
    return rep


def cmd_sos_extract(args):
    P, dig = _load_pencil(args.file)
    _check_ball_vars(P)
    rep = AnalysisReport("sos-extract", dig)
    pair = balllab.extract_sos_pair(P)
    rep.add("selection", m=pair.m, column=pair.column)
    rep.add("sos_pair", a=pair.a, b=pair.b, g1=pair.g1, g2=pair.g2)
    q = " + ".join(f"{v}^2" for v in P.var_names)
    rep.add("identity", statement=f"({q}) * g1 = g2", verified=True)
    na, nb = pair.nonzero_squares()
    rep.verdict("squares_in_g1", na)
    rep.verdict("squares_in_g2", nb)
    return rep


def _symbolic(prefix, n):
    return [f"{prefix}{i}" for i in range(1, n + 1)]


def cmd_pfister(args):
    k = args.k
    if k not in (0, 1, 2, 3):
        raise InputError(f"k = {k} unsupported: bilinear 2^k-squares identities exist only for k <= 3")
    n = 2 ** k
    if args.u or args.v:
        if not (args.u and args.v):
            raise InputError("give both --u and --v, or neither")
        us = [s.strip() for s in args.u.split(",")]
        vs = [s.strip() for s in args.v.split(",")]
        if len(us) != n or len(vs) != n:
            raise InputError(f"--u and --v need {n} comma-separated entries each")
        ring = tuple(sorted({v for s in us + vs for v in parse_poly(s).ring}))
        u = [parse_poly(s, ring) for s in us]
        v = [parse_poly(s, ring) for s in vs]
    else:
        ring = tuple(_symbolic("u", n) + _symbolic("v", n))
        gens = Poly.gens(ring)
        u, v = list(gens[:n]), list(gens[n:])
    w = balllab.pfister_compose(k, u, v)
    lhs = balllab.sum_of_squares(w)
    rhs = balllab.sum_of_squares(u) * balllab.sum_of_squares(v)
    rep = AnalysisReport("pfister")
    rep.add("input", k=k, u=u, v=v)
    rep.add("composition", w=w)
    rep.add("identity", statement="sum w_i^2 = (sum u_i^2)(sum v_i^2)", verified=lhs == rhs)
    if lhs != rhs:
        raise Negative(rep)
    return rep


def _report_cubic(rep, a: cubiclab.CubicAnalysis):
    f = a.f
    rep.add("determinant", f=f, degree=f.total_degree())
    rep.add("kernel_reduction", reduced_size=a.reduced_size)
    rep.add("rank_bound", minor_size=a.rank_check.size, passed=a.rank_check.passed, vacuous=a.rank_check.vacuous)
    F = a.form
    rep.add(
        "canonical_form",
        r=F.r,
        alpha=F.alpha,
        beta=F.beta,
        l=F.l,
        g1=F.g1,
        g2=F.g2,
        g3=F.g3,
        gram=list(F.gram),
    )
    sp = a.points
    rep.add(
        "singular_points",
        quadratic=sp.quadratic,
        discriminant=sp.discriminant,
        line=sp.line,
        points=[list(p) for p in sp.points],
        multiplicity=sp.multiplicity,
        ranks=sp.ranks,
        classification=sp.classification,
    )
    rep.add("singularity_check", homogenized_at="(1 : p)", vanishing=a.singular_checks)
    rep.verdict("classification", sp.classification)
    rep.verdict("surface_singular", bool(sp.points) and all(a.singular_checks))
    rep.verdict(
        "consequence",
        "every monic symmetric pencil with cubic determinant has a singular surface; "
        "a cubic certified Smooth has no such representation",
    )


def cmd_cubic_analyze(args):
    P, dig = _load_pencil(args.file)
    rep = AnalysisReport("cubic-analyze", dig)
    _report_cubic(rep, cubiclab.cubic_pipeline(P, seed=args.seed))
    return rep


def cmd_reduce5(args):
    P, dig = _load_pencil(args.file)
    red = cubiclab.reduce_to_five(P, seed=args.seed)
    out = red.pencil
    note = "arrow normal form with the same normalized determinant"
    if not out.is_monic:
        note += "; constant is diagonal (no rational orthonormal basis was found)"
    text = format_pencil(out, comment=note)
    rep = AnalysisReport("reduce5", dig)
    rep.add("reduction", input_size=P.size, output_size=out.size, monic=out.is_monic, det_preserved=True)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        rep.add("output", file=args.output)
    else:
        rep.add("output", pencil=text.splitlines())
    return rep


def _smooth_report(rep, f, cap):
    if f.is_homogeneous():
        fh = f
        hvar = None
    else:
        hvar = _fresh("w", f.ring)
        fh = f.homogenize(hvar)
    rep.add("input", f=f, homogenized_with=hvar, f_h=fh, degree=fh.total_degree())
    try:
        res = groebner.is_projectively_smooth(fh, degree_cap=cap)
    except SpectraError as exc:
        if isinstance(exc, groebner.CapExceeded):
            rep.add_error("groebner", exc)
            rep.verdict("status", "CapExceeded")
            raise Negative(rep) from None
        raise
    gb = res.basis
    rep.add("groebner", order=gb.order, size=len(gb.basis), degree_cap=cap)
    rep.add("certificate", pure_powers={v: k for v, k in res.powers.items()})
    rep.verdict("status", res.status)
    return res


def cmd_smooth_check(args):
    f = read_poly_file(args.file)
    rep = AnalysisReport("smooth-check", _digest_file(args.file))
    if f.total_degree() < 2:
        raise InputError("polynomial must have degree at least 2")
    res = _smooth_report(rep, f, args.cap)
    if not res.smooth:
        raise Negative(rep)
    return rep


def cmd_verify_example(args):
    from . import fixtures

    name = args.name
    rep = AnalysisReport("verify-example")
    rep.add("example", name=name)
    ok = False
    if name == "e2.6":
        chk = balllab.verify_product_sos_identity()
        lhs, squares = fixtures.product_sos_identity()
        # flip the sign of the cross term in the last square: x1*x4 - x2*x3 -> x1*x4 + x2*x3
        x2, x3 = Poly.var(lhs.ring, "x2"), Poly.var(lhs.ring, "x3")
        mutated = squares[:2] + [squares[2] + 2 * x2 * x3]
        mut = balllab.verify_product_sos_identity(mutated)
        rep.add(
            "identity",
            statement="(x1^2+x2^2+x3^2+x4^2)(x1^2+x2^2) = (x1^2+x2^2)^2 + (x1*x3+x2*x4)^2 + (x1*x4-x2*x3)^2",
            lhs=chk.lhs,
            rhs=chk.rhs,
            equal=chk.passed,
        )
        rep.add("mutation", changed_square=mutated[2], detected=not mut.passed)
        ok = chk.passed and not mut.passed
    elif name == "e3.3":
        res = _smooth_report(rep, fixtures.smooth_cubic(), args.cap)
        ok = res.smooth
        if ok:
            rep.verdict("representation", "no monic symmetric 4x4 determinantal representation")
    elif name in ("e3.8a", "e3.8b"):
        P = fixtures.two_real_nodes_pencil() if name == "e3.8a" else fixtures.complex_nodes_pencil()
        rep.add("pencil", text=format_pencil(P).splitlines())
        a = cubiclab.cubic_pipeline(P, seed=args.seed)
        _report_cubic(rep, a)
        want = cubiclab.Classification.TWO_REAL_NODES if name == "e3.8a" else cubiclab.Classification.CONJUGATE_COMPLEX_PAIR
        ok = a.points.classification is want and all(a.singular_checks) and len(a.points.points) == 2
        rep.verdict("expected", want)
    rep.verdict("result", "PASS" if ok else "FAIL")
    if not ok:
        raise Negative(rep)
    return rep


# -- parser ---------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomized choices (default 0)")
    common.add_argument("--format", choices=("text", "structured"), default="text", help="report format")
    common.add_argument("--timing", action="store_true", help="append wall-clock timing to the report")

    p = argparse.ArgumentParser(
        prog="spectrakit",
        description="Exact tools for determinantal representations of spectrahedra.",
        epilog=EXIT_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_, epilog=EXIT_HELP,
                            formatter_class=argparse.RawDescriptionHelpFormatter, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("det", cmd_det, "determinant of a pencil file")
    sp.add_argument("file")
    sp.add_argument("--form", choices=("affine", "homogeneous"), default="affine")
    sp = add("adj", cmd_adj, "adjugate of the affine pencil matrix")
    sp.add_argument("file")
    sp = add("ball-rep", cmd_ball_rep, "emit the standard pencil of the n-dimensional unit ball")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("-o", "--output")
    sp = add("ball-analyze", cmd_ball_analyze, "divisibility profile against x0^2 - sum xi^2")
    sp.add_argument("file")
    sp = add("sos-extract", cmd_sos_extract, "sum-of-squares pair from the adjugate of a ball pencil")
    sp.add_argument("file")
    sp = add("pfister", cmd_pfister, "2^k-squares composition (k <= 3)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--u", help="comma-separated polynomials (default: symbolic u1..)")
    sp.add_argument("--v", help="comma-separated polynomials (default: symbolic v1..)")
    sp = add("cubic-analyze", cmd_cubic_analyze, "full analysis of a monic pencil with cubic determinant")
    sp.add_argument("file")
    sp = add("reduce5", cmd_reduce5, "congruent pencil of size <= 5 with the same cubic determinant")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp = add("smooth-check", cmd_smooth_check, "certify that a projective surface is smooth")
    sp.add_argument("file")
    sp.add_argument("--cap", type=int, default=20, help="degree cap for the Groebner computation")
    sp = add("verify-example", cmd_verify_example, "check one of the built-in examples")
    sp.add_argument("name", choices=EXAMPLES)
    sp.add_argument("--cap", type=int, default=20, help="degree cap for e3.3")
    return p


def _emit(result, args, elapsed):
    if isinstance(result, AnalysisReport):
        if args.timing:
            result.timing = {"total": elapsed}
        sys.stdout.write(result.render(args.format))
    elif result:
        sys.stdout.write(result)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    t0 = time.perf_counter()
    try:
        result = args.func(args)
    except Negative as neg:
        _emit(neg.report, args, time.perf_counter() - t0)
        return EXIT_NEGATIVE
    except (InputError, HypothesisViolation) as exc:
        print(f"spectrakit: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SpectraError as exc:
        print(f"spectrakit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    _emit(result, args, time.perf_counter() - t0)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
