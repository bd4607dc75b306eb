"""Command-line front end.

Exit status: 0 success, 1 a check found failures, 2 usage or parse error.
Output is deterministic for fixed arguments and --seed.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import hermline, jordan, jordan_lie, projline, structfile
from .rings import RingError
from .ringspec import GRAMMAR, SpecError, parse_element, parse_point_literal, parse_ring, tokenize_literal

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Out:
    """Collects output in human ("key: value") or lines (tab-separated records) mode."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.buf = []

    def field(self, key, value):
        self.buf.append(f"{key}: {value}" if self.fmt == "human" else f"{key}\t{value}")

    def record(self, kind, *values):
        if self.fmt == "human":
            self.buf.append("  " + " ".join(str(v) for v in values))
        else:
            self.buf.append("\t".join([kind] + [str(v) for v in values]))

    def text(self, s):
        if self.fmt == "human":
            self.buf.extend(s.splitlines())

    def report(self, rep: jordan.Report):
        if self.fmt == "human":
            self.buf.extend(rep.lines())
            return
        for r in rep.results:
            w = "" if r.witness is None else " ".join(map(str, r.witness))
            self.buf.append("\t".join(["axiom", r.name, "pass" if r.passed else "fail", str(r.checked), str(r.failures), w]))
        self.buf.append("\t".join(["result", "pass" if rep.passed else "fail"]))

    def render(self):
        return "\n".join(self.buf) + ("\n" if self.buf else "")


# ---------------------------------------------------------------------------
# helpers


def _ring(args, required=True):
    if not args.ring:
        if required:
            raise UsageError("--ring is required")
        return None
    return parse_ring(args.ring, args.involution)


def _point(A, text):
    A2, (s, r) = parse_point_literal(text, A)
    return projline.point(A2, s, r)


def _form(A, args):
    if args.matrix:
        obj = tokenize_literal(args.matrix)
        if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(r, list) and len(r) == 2 for r in obj)):
            raise UsageError("--matrix expects [[a,b],[c,d]]")
        return hermline.custom_form(A, [A.from_literal(x) for row in obj for x in row])
    return hermline.form_by_name(A, args.form)


def _line(A, args):
    return hermline.line_of_form(_form(A, args))


def _fmt_point(x):
    return repr(x)


def _fmt_frame(x):
    return projline.frame_ring(x.ring).fmt(x.frame)


# ---------------------------------------------------------------------------
# verbs


def cmd_enumerate(args, out):
    A = _ring(args)
    n = 0
    for n, x in enumerate(projline.enumerate_points(A), 1):
        if not args.count_only:
            out.record("point", n, _fmt_point(x))
    out.field("ring", repr(A))
    out.field("points", n)
    return EXIT_OK


def cmd_fixed_line(args, out):
    A = _ring(args)
    line = _line(A, args)
    n = 0
    for n, x in enumerate(hermline.enumerate_fixed_line(line), 1):
        if not args.count_only:
            out.record("point", n, _fmt_point(x))
    out.field("form", line.form.name)
    out.field("points", n)
    if line.kind == "u":
        u = hermline.unitary_image(A)
        out.field("unitary image", f"{u['unitaries']} of {u['line']}")
    return EXIT_OK


def cmd_orbit(args, out):
    A = _ring(args)
    line = _line(A, args)
    rep = hermline.orbit_report(line)
    out.field("form", line.form.name)
    out.field("group order", rep.group_order)
    out.field("fixed points", rep.line_size)
    out.field("X+", len(rep.plus))
    out.field("X-", len(rep.minus))
    out.field("orbits", rep.relation)
    out.field("transitive", "yes" if rep.transitive else "no")
    return EXIT_OK


def cmd_orthocomplement(args, out):
    A = _ring(args, required=False)
    if len(args.points) != 1:
        raise UsageError("orthocomplement takes one point literal")
    x = _point(A, args.points[0])
    form = _form(x.ring, args)
    y = hermline.orthocomplement(form, x)
    out.field("point", _fmt_point(x))
    out.field("orthocomplement", _fmt_point(y))
    out.field("frame", _fmt_frame(y))
    out.field("fixed", "yes" if projline.point_eq(x, y) else "no")
    return EXIT_OK


def cmd_transversal(args, out):
    A = _ring(args, required=False)
    if len(args.points) != 2:
        raise UsageError("transversal takes two point literals")
    x = _point(A, args.points[0])
    y = _point(A or x.ring, args.points[1])
    out.field("transversal", "yes" if projline.transversal(x, y) else "no")
    return EXIT_OK


def cmd_chart(args, out):
    A = _ring(args, required=False)
    if args.points:
        x = _point(A, args.points[0])
        chart = _point(x.ring, args.chart) if args.chart else None
        a = projline.affine_coord(x, chart)
        out.field("coordinate", "none (not transversal)" if a is None else x.ring.fmt(a))
        return EXIT_OK
    if A is None:
        raise UsageError("chart needs a point literal or --ring with --form")
    line = _line(A, args)
    y = _point(A, args.chart) if args.chart else projline.o_minus(A)
    n = len(hermline.chart_slice(line, y))
    model = hermline.aherm_elements(A) if line.kind == "sh" else hermline.herm_elements(A)
    out.field("chart", _fmt_point(y))
    out.field("points", n)
    out.field("model", f"{'Aherm' if line.kind == 'sh' else 'Herm'} {len(model)}")
    return EXIT_OK


def cmd_pid(args, out):
    A = _ring(args)
    if (args.to_point is None) == (args.to_fraction is None):
        raise UsageError("pid needs exactly one of --to-point Q or --to-fraction POINT")
    if args.to_point is not None:
        text = args.to_point.strip()
        if text in ("oo", "inf"):
            q = projline.INFINITY
        elif isinstance(A, projline.Integers):
            q = Fraction(text)
        else:
            parts = tokenize_literal(text if text.startswith("(") else f"({text})")
            if not (isinstance(parts, tuple) and len(parts) == 2):
                raise UsageError("over polynomial rings --to-point expects (s, r)")
            q = tuple(A.from_literal(p) for p in parts)
        x = projline.pid_from_fraction(A, q)
        G = projline.frame_ring(A)
        out.field("point", _fmt_point(x))
        out.field("frame", _fmt_frame(x))
        out.field("determinant", A.fmt(G.det(x.frame)))
        return EXIT_OK
    x = _point(A, args.to_fraction)
    q = projline.pid_to_fraction(x)
    if q is projline.INFINITY or isinstance(q, Fraction):
        out.field("fraction", str(q))
    else:
        out.field("fraction", f"({A.fmt(q[0])})/({A.fmt(q[1])})")
    return EXIT_OK


def _load(args):
    if not args.input:
        raise UsageError("--input FILE is required")
    return structfile.load(args.input)


def _check(s, args):
    if isinstance(s, jordan.TripleSystem):
        return jordan.check_jts(s, args.budget, args.seed)
    if isinstance(s, jordan.FiniteAlgebra):
        if s.flavor == "jordan":
            return jordan.check_jordan(s, seed=args.seed)
        rep = jordan.check_associative(s)
        if s.involution is not None:
            rep.results.append(jordan_lie.check_involution(s))
        return rep
    C = args.coupling
    if C is not None:
        C = parse_element(s.K, C)
    if s.flavor == jordan_lie.JORDAN_LIE:
        return jordan_lie.check_jordan_lie(s, C)
    return jordan_lie.check_lie_jordan(s, C, args.budget)


def cmd_check(args, out):
    s = _load(args)
    rep = _check(s, args)
    out.report(rep)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_detect_coupling(args, out):
    s = _load(args)
    if not isinstance(s, jordan_lie.TwoProductAlgebra):
        raise UsageError("detect-coupling needs a jordan-lie or lie-jordan file")
    c = jordan_lie.detect_coupling(s)
    out.field("status", c.status)
    out.field("C", "-" if c.value is None else s.K.fmt(c.value))
    if c.witness is not None:
        out.field("witness", " ".join(c.witness))
    return EXIT_OK


def cmd_quantize(args, out):
    s = _load(args)
    if not isinstance(s, jordan_lie.TwoProductAlgebra) or s.flavor != jordan_lie.JORDAN_LIE:
        raise UsageError("quantize needs a jordan-lie file")
    C = None if args.coupling is None else parse_element(s.K, args.coupling)
    try:
        Q = jordan_lie.quantize(s, C)
    except jordan_lie.QuantizationError as exc:
        out.text(str(exc))
        out.field("result", "fail")
        return EXIT_FAIL
    out.report(Q.checks)
    doc = structfile.dumps(Q.algebra)
    _emit_doc(args, out, doc)
    return EXIT_OK


def _emit_doc(args, out, doc):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(doc)
        out.field("written", args.output)
    else:
        out.buf.extend(doc.rstrip("\n").splitlines())


CONSTRUCTIONS = (
    "algebra",
    "jordan",
    "hermitian",
    "jordan-lie",
    "hermitian-jordan-lie",
    "lie-jordan",
    "jts",
    "rect-triple",
)


def cmd_construct(args, out):
    kind = args.kind
    if kind == "rect-triple":
        if args.p is None or args.q is None:
            raise UsageError("rect-triple needs --p and --q")
        K = _ring(args)
        s = jordan.rect_triple(args.p, args.q, K)
    else:
        A = jordan.algebra_from_ring(_ring(args))
        if kind == "algebra":
            s = A
        elif kind == "jordan":
            s = jordan.jordan_from_assoc(A)
        elif kind == "hermitian":
            s = jordan.hermitian_part(A)
        elif kind == "jordan-lie":
            s = jordan_lie.jordan_lie_from_assoc(A)
        elif kind == "hermitian-jordan-lie":
            s = jordan_lie.jordan_lie_from_hermitian(A)
        elif kind == "lie-jordan":
            s = jordan_lie.lie_jordan_from_involution(A)
        else:  # jts
            s = jordan.jts_from_jordan(jordan.jordan_from_assoc(A))
    _emit_doc(args, out, structfile.dumps(s))
    return EXIT_OK


VERBS = {
    "enumerate": (cmd_enumerate, "list the points of A P^1 for a finite ring"),
    "fixed-line": (cmd_fixed_line, "list the fixed points of an orthocomplement map"),
    "orbit": (cmd_orbit, "isometry-group orbits of the two base points"),
    "orthocomplement": (cmd_orthocomplement, "orthocomplement of a point"),
    "transversal": (cmd_transversal, "test whether two points are transversal"),
    "chart": (cmd_chart, "affine coordinate of a point, or the chart size of a fixed line"),
    "pid": (cmd_pid, "fractions <-> points over Z or Poly(F_p)"),
    "check": (cmd_check, "run the axiom checkers on a structure file"),
    "detect-coupling": (cmd_detect_coupling, "solve for the coupling constant"),
    "quantize": (cmd_quantize, "quantize a Jordan-Lie algebra"),
    "construct": (cmd_construct, "emit a structure file for a standard construction"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="ring in the grammar below, e.g. 'Mat(2,F2)'")
    common.add_argument("--involution", help="involution, e.g. transpose")
    common.add_argument("--form", default="omega", choices=hermline.FORM_NAMES)
    common.add_argument("--matrix", help="custom form matrix [[a,b],[c,d]]")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=jordan.BUDGET)
    common.add_argument("--format", default="human", choices=("human", "lines"))
    common.add_argument("--input", help="structure-constant file")
    common.add_argument("--output", help="write the resulting structure file here")
    common.add_argument("--coupling", help="coupling constant C")
    common.add_argument("--count-only", action="store_true", help="print counts only")

    parser = argparse.ArgumentParser(
        prog="projalg",
        description="Projective lines over rings and Jordan structures.",
        epilog="grammar:\n" + GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for name, (_, help_text) in VERBS.items():
        p = sub.add_parser(
            name, parents=[common], help=help_text, epilog="grammar:\n" + GRAMMAR,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        if name in ("orthocomplement", "transversal", "chart"):
            p.add_argument("points", nargs="*", metavar="POINT", help="point[s;r] @ RING")
        if name == "chart":
            p.add_argument("--chart", help="chart point (default o-)")
        if name == "pid":
            p.add_argument("--to-point", help="fraction s/r, 'oo', or (s, r) over Poly")
            p.add_argument("--to-fraction", help="point[s;r]")
        if name == "construct":
            p.add_argument("kind", choices=CONSTRUCTIONS)
            p.add_argument("--p", type=int)
            p.add_argument("--q", type=int)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Out(args.format)
    handler = VERBS[args.verb][0]
    try:
        status = handler(args, out)
    except structfile.StructFileError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (UsageError, SpecError) as exc:
        stderr.write(f"error: {exc}\n\ngrammar:\n{GRAMMAR}\n")
        return EXIT_USAGE
    except (RingError, ValueError, ZeroDivisionError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    stdout.write(out.render())
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
