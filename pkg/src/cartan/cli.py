"""Command-line front end: ``cartan {decompose,verify,descend,oracle,census}``.

Exit status is 0 on success, 1 when a verification fails, 2 on usage,
parse or input errors.
"""

import argparse
import json
import sys
from pathlib import Path

from .descent import approximate_decomposition, descend
from .errors import BudgetExceeded, DescentError, ParseError, PrecisionError
from .harness import coset_census, verify
from .matrices import GroupTag
from .parsing import parse_matrix
from .serialize import (
    decomposition_from_json,
    decomposition_to_json,
    dumps,
    matrix_from_json,
    matrix_to_json,
)
from .snf import divisor_invariant, snf_decompose
from .symplectic import sp_decompose, sp_divisor_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", choices=("gl", "sl", "sp"), default="gl")
    common.add_argument("--p", type=int, help="characteristic (prime)")
    common.add_argument("--n", type=int, help="rank (matrix size, or half of it for sp)")
    common.add_argument("--precision", type=int, help="working precision N")
    common.add_argument("--input", help="file path, '-' for stdin, or literal text/JSON")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="cartan", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, text in (
        ("decompose", "Cartan decomposition of a matrix"),
        ("descend", "exact decomposition over R via the completion"),
        ("oracle", "elementary divisors from minors"),
    ):
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("matrix", nargs="?", help="matrix text 'a,b;c,d'")
        if name == "descend":
            sp.add_argument("--approx", help="JSON file with an approximate decomposition")
    sp = sub.add_parser("verify", parents=[common], help="check a stored decomposition")
    sp.add_argument("matrix", nargs="?", help="decomposition JSON (or use --input)")
    sp = sub.add_parser("census", parents=[common], help="brute-force double-coset census")
    sp.add_argument("--vmax", type=int, default=1)
    return ap


def _read_source(args):
    if args.input is not None and args.matrix is not None:
        raise UsageError("give the input either positionally or with --input, not both")
    src = args.input if args.input is not None else args.matrix
    if src is None:
        raise UsageError("no input matrix given")
    if src == "-":
        return sys.stdin.read().strip()
    if args.input is not None and not src.lstrip().startswith("{"):
        path = Path(src)
        if path.is_file():
            return path.read_text().strip()
    return src.strip()


def _load_matrix(args):
    text = _read_source(args)
    if text.startswith("{"):
        obj = json.loads(text)
        if "entries" not in obj and "g" in obj:
            obj = obj["g"]
        m = matrix_from_json(obj, args.p)
    else:
        if args.p is None:
            raise UsageError("--p is required for matrix text")
        m = parse_matrix(text, args.p)
    tag = GroupTag.for_matrix(args.group, m)
    if args.n is not None and args.n != tag.n:
        raise UsageError(f"--n {args.n} does not match a matrix of size {m.size}")
    return m, tag


def _decompose(g, tag, precision=None):
    target = g if precision is None else g.expand(precision)
    if tag.family == "SP":
        return sp_decompose(target, tag.n)
    return snf_decompose(target, tag)


def _show(dec, g, as_json, out):
    if as_json:
        out.write(dumps(decomposition_to_json(dec, g)) + "\n")
        return
    out.write(f"group: {dec.group}\n")
    if dec.precision is not None:
        out.write(f"precision: {dec.precision}\n")
    out.write("lambda: " + ",".join(str(x) for x in dec.lam.weights) + "\n")
    for name, m in (("h1", dec.h1), ("h2", dec.h2)):
        out.write(f"{name}: " + ";".join(",".join(r) for r in matrix_to_json(m)["entries"]) + "\n")


def _finish(report, err):
    if report:
        return EXIT_OK
    err.write("verification failed:\n" + str(report) + "\n")
    return EXIT_FAIL


def cmd_decompose(args, out, err):
    g, tag = _load_matrix(args)
    dec = _decompose(g, tag, args.precision)
    _show(dec, g, args.json, out)
    return _finish(verify(g, dec), err)


def cmd_verify(args, out, err):
    text = _read_source(args)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"verify expects decomposition JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise UsageError("verify expects a JSON object")
    dec, g = decomposition_from_json(obj)
    if g is None:
        raise UsageError("decomposition JSON has no 'g' to verify against")
    report = verify(g, dec)
    if args.json:
        out.write(dumps({
            "passed": bool(report),
            "clauses": [{"name": c.name, "passed": c.passed, "witness": c.witness}
                        for c in report.clauses],
        }) + "\n")
    else:
        out.write(str(report) + "\n")
    return EXIT_OK if report else EXIT_FAIL


def cmd_descend(args, out, err):
    g, tag = _load_matrix(args)
    if args.approx:
        obj = json.loads(Path(args.approx).read_text())
        if "precision" not in obj:
            raise UsageError("approximate decomposition JSON needs a 'precision' field")
        approx, _ = decomposition_from_json(obj)
        if approx.group != tag:
            raise UsageError(f"approximation is for {approx.group}, input is in {tag}")
    else:
        approx = approximate_decomposition(g, tag, args.precision)
    try:
        dec, cert = descend(g, approx)
    except DescentError as exc:
        err.write(f"descent failed: {exc}\n")
        return EXIT_FAIL
    _show(dec, g, args.json, out)
    return _finish(verify(g, dec), err)


def cmd_oracle(args, out, err):
    g, tag = _load_matrix(args)
    if tag.family == "SP":
        d = sp_divisor_check(g, tag.n)
    else:
        if tag.family == "SL" and not (g.det() - 1).is_zero():
            raise UsageError("matrix is not in SL_n(K)")
        d = divisor_invariant(g)
    if args.json:
        out.write(json.dumps({"group": tag.family.lower(), "p": tag.p, "d": list(d)}) + "\n")
    else:
        out.write(",".join(str(x) for x in d) + "\n")
    return EXIT_OK


def cmd_census(args, out, err):
    if args.p is None or args.n is None or args.precision is None:
        raise UsageError("census needs --n, --p and --precision")
    if args.group != "gl":
        raise UsageError("census is implemented for --group gl only")
    res = coset_census(args.n, args.p, args.precision, args.vmax, seed=args.seed)
    if args.json:
        out.write(dumps({
            "n": res.n, "p": res.p, "N": res.N, "vmax": res.vmax, "level": res.level,
            "classes": [{"d": list(d), "size": s, "representative": r} for d, s, r in res.rows],
            "false_merges": len(res.false_merges), "false_splits": len(res.false_splits),
            "translate_checks": res.translate_checks,
            "translate_failures": res.translate_failures,
        }) + "\n")
    else:
        out.write(res.to_tsv())
    if not res.consistent:
        err.write(f"census inconsistent: {len(res.false_merges)} false merges, "
                  f"{len(res.false_splits)} false splits, "
                  f"{res.translate_failures} translate failures\n")
        return EXIT_FAIL
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "descend": cmd_descend,
    "oracle": cmd_oracle,
    "census": cmd_census,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out, err)
    except json.JSONDecodeError as exc:
        err.write(f"error: invalid JSON: {exc}\n")
    except (ParseError, UsageError, BudgetExceeded, PrecisionError) as exc:
        err.write(f"error: {exc}\n")
    except (ValueError, ArithmeticError, OSError) as exc:
        # singular input, wrong group, form violations, unreadable files
        err.write(f"error: {exc}\n")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
