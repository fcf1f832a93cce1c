"""Command-line interface.

Subcommands: generate (family -> array JSON), build (array -> system JSON),
verify (array or system JSON -> report), triple (array -> triple JSON +
report), selftest (built-in grid).  Exit codes: 0 success, 1 a mathematical
check failed, 2 malformed input or configuration.

The environment variable TB_TRIDIAG_MAX_D (default 64) caps the diameter.
"""

import argparse
import os
import sys as _sys

from . import serialize
from .arrays import (Family, aw_sequence_nonzero, fundamental_parameter,
                     is_self_dual, self_dualize, validate_array, ANY_BETA)
from .errors import InvalidArray, ParseError, TBTridiagError
from .fields import parse_field
from .report import CheckResult, VerificationReport, combine
from .system import (build_system, dagger_report, involutions_check,
                     verify_aw_relations, verify_axioms)
from .triple import (antiautomorphism_report, braid_check, build_C, build_W,
                     sigma_and_psl2z, triple_scalars)


def _max_d():
    try:
        return int(os.environ.get("TB_TRIDIAG_MAX_D", "64"))
    except ValueError:
        return 64


def _check_cap(d):
    cap = _max_d()
    if d > cap:
        raise ParseError(f"d = {d} exceeds TB_TRIDIAG_MAX_D = {cap}")
    if d < 1:
        raise ParseError("d must be at least 1")


def _write_out(text, path):
    if path is None or path == "-":
        _sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read_doc(path):
    if path == "-":
        text = _sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from None
    return serialize.loads(text)


def _report_table(report):
    lines = []
    for c in report:
        mark = "PASS" if c.passed else "FAIL"
        line = f"{mark}  {c.name}"
        if c.witness:
            line += f"  [{c.witness}]"
        lines.append(line)
    failed = len(report.failures())
    lines.append(f"{len(report.checks)} checks, {failed} failed")
    return "\n".join(lines) + "\n"


def _print_report(report, fmt):
    if fmt == "json":
        _sys.stdout.write(serialize.dumps(report.to_dict()))
    else:
        _sys.stdout.write(_report_table(report))


def _array_table(arr):
    lines = [f"field: {arr.field.descriptor()}", f"d: {arr.d}"]
    lines.append("theta: " + ", ".join(str(t) for t in arr.theta))
    lines.append("theta_star: " + ", ".join(str(t) for t in arr.theta_star))
    if arr.family is not None:
        tag = arr.family
        extra = f" (h={tag.h}, h_star={tag.h_star}"
        if tag.q is not None:
            extra += f", q={tag.q}"
        extra += ")"
        lines.append("family: " + tag.family.value + extra)
    return "\n".join(lines) + "\n"


def cmd_generate(args):
    from .arrays import generate_family

    fld = parse_field(args.field)
    _check_cap(args.d)
    arr = generate_family(fld, Family(args.family), args.d,
                          h=fld.parse(args.h),
                          h_star=fld.parse(args.h_star) if args.h_star else None,
                          q=fld.parse(args.q) if args.q else None)
    if args.format == "table":
        _write_out(_array_table(arr), args.output)
    else:
        _write_out(serialize.dumps(serialize.emit_array(arr)), args.output)
    return 0


def _load_array(doc):
    arr = serialize.decode_array(doc)
    _check_cap(arr.d)
    return arr


def cmd_build(args):
    doc = _read_doc(args.input)
    if "theta" not in doc:
        raise ParseError("build expects an eigenvalue-array document")
    arr = _load_array(doc)
    system = build_system(arr)
    _write_out(serialize.dumps(serialize.emit_system(system)), args.output)
    return 0


def _full_verification(system):
    reports = [verify_axioms(system)]
    try:
        seq = aw_sequence_nonzero(system.array)
        reports.append(verify_aw_relations(system, seq))
    except TBTridiagError as exc:
        reports.append(VerificationReport(
            (CheckResult("Askey-Wilson relations", False, str(exc)),)))
    if system.E is not None:
        reports.append(involutions_check(system))
    else:
        reports.append(VerificationReport((CheckResult(
            "involutions", False, "idempotents of A unavailable"),)))
    reports.append(dagger_report(system))
    return combine(*reports)


def cmd_verify(args):
    doc = _read_doc(args.input)
    try:
        if "A" in doc:
            system = serialize.decode_system(doc)
            _check_cap(system.d)
        elif "theta" in doc:
            system = build_system(_load_array(doc))
        else:
            raise ParseError("verify expects an array or system document")
    except InvalidArray as exc:
        report = VerificationReport(tuple(
            CheckResult(f"eigenvalue array condition", False, v)
            for v in exc.violations))
        _print_report(report, args.format)
        return 1
    report = _full_verification(system)
    _print_report(report, args.format)
    return 0 if report.passed else 1


def cmd_triple(args):
    doc = _read_doc(args.input)
    if "theta" not in doc:
        raise ParseError("triple expects an eigenvalue-array document")
    arr = _load_array(doc)
    if not is_self_dual(arr):
        arr = self_dualize(arr)
    system = build_system(arr)
    beta = system.field.parse(args.beta) if args.beta else None
    sc = triple_scalars(system, beta=beta)
    tri = build_C(system, sc)
    w = build_W(tri)
    report = combine(braid_check(w),
                     antiautomorphism_report(system, tri, w),
                     sigma_and_psl2z(system, tri, w))
    triple_doc = serialize.emit_triple(system, tri, w)
    if args.output:
        _write_out(serialize.dumps(triple_doc), args.output)
        _print_report(report, args.format)
    elif args.format == "json":
        _sys.stdout.write(serialize.dumps(
            {"triple": triple_doc, "report": report.to_dict()}))
    else:
        _print_report(report, args.format)
    return 0 if report.passed else 1


_SELFTEST_GRID = [
    ("Q", Family.SMALL_D1, 1, {}),
    ("Q", Family.SMALL_D2, 2, {}),
    ("Q", Family.KRAWTCHOUK, 3, {}),
    ("Q", Family.KRAWTCHOUK, 4, {"h": "2"}),
    ("Q", Family.BANNAI_ITO, 2, {}),
    ("Q", Family.BANNAI_ITO, 4, {}),
    ("Q", Family.QRACAH_EVEN, 4, {"q": "2"}),
    ("Q", Family.QRACAH_ODD, 3, {"q": "2"}),
    ("Fp:101", Family.KRAWTCHOUK, 3, {}),
    ("Fp:101", Family.BANNAI_ITO, 4, {}),
    ("Fp:101", Family.QRACAH_EVEN, 4, {"q": "5"}),
    ("Fp:101", Family.QRACAH_ODD, 3, {"q": "5"}),
]

_SELFTEST_TRIPLES = [
    ("Q(i)", Family.KRAWTCHOUK, 3, {}, None),
    ("Q", Family.BANNAI_ITO, 4, {}, None),
    ("Q(i)", Family.QRACAH_ODD, 3, {"q": "2"}, None),
    ("Fp:101", Family.KRAWTCHOUK, 3, {}, None),
]


def cmd_selftest(args):
    from .arrays import generate_family

    failed = 0
    for spec, family, d, kwargs in _SELFTEST_GRID:
        fld = parse_field(spec)
        arr = generate_family(fld, family, d,
                              **{k: fld.parse(v) for k, v in kwargs.items()})
        report = _full_verification(build_system(arr))
        ok = report.passed
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  verify {family.value} d={d} over {spec}")
    for spec, family, d, kwargs, beta in _SELFTEST_TRIPLES:
        fld = parse_field(spec)
        arr = generate_family(fld, family, d,
                              **{k: fld.parse(v) for k, v in kwargs.items()})
        system = build_system(arr)
        sc = triple_scalars(system, beta=fld.parse(beta) if beta else None)
        tri = build_C(system, sc)
        w = build_W(tri)
        report = combine(braid_check(w), antiautomorphism_report(system, tri, w),
                         sigma_and_psl2z(system, tri, w))
        ok = report.passed
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  triple {family.value} d={d} over {spec}")
    print(f"selftest: {failed} failures")
    return 1 if failed else 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tbtridiag",
        description="Construct and verify totally bipartite tridiagonal "
                    "systems over exact fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    fams = [f.value for f in Family]

    p = sub.add_parser("generate", help="emit a closed-form eigenvalue array")
    p.add_argument("--field", required=True, help="Q, Q(i), Q(sqrt:D), Fp:p, Fp2:p")
    p.add_argument("--family", required=True, choices=fams)
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--h", default="1")
    p.add_argument("--h-star", dest="h_star", default=None)
    p.add_argument("--q", default=None)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("build", help="build the system for an array document")
    p.add_argument("-i", "--input", required=True, help="array JSON path or -")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="verify an array or system document")
    p.add_argument("-i", "--input", required=True, help="JSON path or -")
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("triple", help="complete an array to a Leonard triple")
    p.add_argument("-i", "--input", required=True, help="array JSON path or -")
    p.add_argument("--beta", default=None,
                   help="fundamental-parameter choice for d <= 2")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_triple)

    p = sub.add_parser("selftest", help="run a built-in verification grid")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TBTridiagError as exc:
        print(f"{exc.name}: {exc}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
