"""Command-line interface: ``sandwich-is <command> --n N (--k K | --sandwich S)``.

Exit codes: 0 success, 1 invariant violation, 2 usage error, 3 size cap
exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import aut, congruence, core, invariants, oracle, sandwich
from .errors import CapExceeded, SandwichError

EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class UsageError(Exception):
    pass


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _one_line(p: core.PartialInjection) -> list[int]:
    return list(p.images)


def build_context(args) -> sandwich.SandwichContext:
    if (args.k is None) == (args.sandwich is None):
        raise UsageError("give exactly one of --k and --sandwich")
    if args.k is not None:
        if not 0 <= args.k <= args.n:
            raise UsageError(f"--k must lie in 0..{args.n}")
        return sandwich.context_k(args.n, args.k)
    try:
        a = core.parse(args.sandwich, args.n)
    except SandwichError as exc:
        raise UsageError(f"bad --sandwich: {exc}") from exc
    ctx = sandwich.context(args.n, a)
    if a != ctx.e:
        p, q, _ = sandwich.normalize(a)
        print(f"# sandwich {a or '(empty)'} normalized to rank {ctx.k}: "
              f"p={_one_line(p)} q={_one_line(q)}", file=sys.stderr)
    return ctx


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_elements(args, ctx, out):
    elements = core.enumerate_all(ctx.n)
    if args.format == "json":
        out.write(_dump([{"index": i, "rank": a.rank, "element": str(a)}
                         for i, a in enumerate(elements)]) + "\n")
    elif args.format == "csv":
        out.write(_csv([("index", "rank", "element")] +
                       [(i, a.rank, str(a)) for i, a in enumerate(elements)]))
    else:
        for i, a in enumerate(elements):
            out.write(f"{i}\t{a.rank}\t{a}\n")


def cmd_cayley(args, ctx, out):
    t = oracle.cayley(ctx)
    if args.format == "json":
        out.write(_dump(t.to_json()) + "\n")
    elif args.format == "csv":
        out.write(t.to_csv())
    else:
        width = len(str(t.size - 1))
        for row in t.table.tolist():
            out.write(" ".join(str(v).rjust(width) for v in row) + "\n")


def cmd_idempotents(args, ctx, out):
    elems = sandwich.idempotents(ctx)
    edges = sandwich.hasse_edges(ctx)
    if args.format == "json":
        out.write(_dump({"idempotents": [str(f) for f in elems],
                         "hasse": [[str(f), str(h)] for f, h in edges]}) + "\n")
    elif args.format == "csv":
        out.write(_csv([("below", "above")] + [(str(f), str(h)) for f, h in edges]))
    else:
        for f in elems:
            out.write(f"{f or '(empty)'}\n")
        for f, h in edges:
            out.write(f"{f or '(empty)'} < {h}\n")


def cmd_classes(args, ctx, out):
    data = congruence.classes_to_json(ctx)
    if args.format == "json":
        out.write(_dump(data) + "\n")
    elif args.format == "csv":
        out.write(_csv([("class", "key", "member")] +
                       [(i, c["key"], m) for i, c in enumerate(data) for m in c["members"]]))
    else:
        for i, c in enumerate(data):
            out.write(f"{i}\t{c['key']}\t{' '.join(m or '(empty)' for m in c['members'])}\n")


def cmd_aut(args, ctx, out):
    if args.method == "formula":
        order = aut.aut_order(ctx)
        if aut.is_degenerate(ctx):
            print(f"# k = 0: product is identically zero; order is ({core.universe_size(ctx.n)}-1)!, "
                  f"the semidirect formula would give {aut.semidirect_formula_order(ctx)}",
                  file=sys.stderr)
        if args.format == "json":
            out.write(_dump({"order": order, "degenerate": aut.is_degenerate(ctx),
                             "formula_order": aut.semidirect_formula_order(ctx)}) + "\n")
        else:
            out.write(f"{order}\n")
    elif args.method == "construct":
        for s in aut.enumerate_aut(ctx, limit=args.limit):
            out.write(json.dumps(s.to_json()) + "\n")
    else:
        table = oracle.cayley(ctx)
        out.write(f"{oracle.count_automorphisms(table)}\n")
        if args.limit:
            for p in oracle.magma_automorphisms(table, limit=args.limit):
                out.write(json.dumps({"images": list(p)}) + "\n")


def cmd_factorize(args, ctx, out):
    if args.input is None:
        raise UsageError("factorize needs --input FILE (or - for stdin)")
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        sigma = aut.Automorphism.from_json(json.loads(text))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read automorphism from {args.input}: {exc}") from exc
    t, cp = aut.factorize(ctx, sigma)
    out.write(_dump(aut.factorization_to_json(t, cp)) + "\n")


def cmd_normalize(args, ctx, out):
    p, q, _ = sandwich.normalize(ctx.sandwich)
    ok = not invariants.normalize_homomorphism(ctx, None)
    out.write(_dump({"k": ctx.k, "p": _one_line(p), "q": _one_line(q), "homomorphism": ok}) + "\n")
    return 0 if ok else EXIT_VIOLATION


def cmd_verify(args, ctx, out):
    status = 0
    for result in invariants.run_all(ctx, seed=args.seed, samples=args.samples):
        out.write(f"{'PASS' if result.passed else 'FAIL'}  {result.name}\n")
        for v in result.violations:
            out.write(f"      counterexample: {v}\n")
        if not result.passed:
            status = EXIT_VIOLATION
    return status


COMMANDS = {
    "elements": cmd_elements,
    "cayley": cmd_cayley,
    "idempotents": cmd_idempotents,
    "classes": cmd_classes,
    "aut": cmd_aut,
    "factorize": cmd_factorize,
    "normalize": cmd_normalize,
    "verify": cmd_verify,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sandwich-is", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--n", type=int, required=True, help="size of the base set")
    parser.add_argument("--k", type=int, help="use the identity on {1..k} as sandwich element")
    parser.add_argument("--sandwich", help='sandwich element, e.g. "1>3,2>1"')
    parser.add_argument("--format", choices=("json", "csv", "text"), default="text")
    parser.add_argument("--method", choices=("formula", "construct", "oracle"), default="formula")
    parser.add_argument("--limit", type=int, help="maximum number of automorphisms to print")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=10_000,
                        help="random triples for sampled associativity checks")
    parser.add_argument("--input", help="automorphism JSON for factorize")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.n < 1:
        parser.error("--n must be positive")
    out = sys.stdout
    try:
        ctx = build_context(args)
        status = COMMANDS[args.command](args, ctx, out)
    except UsageError as exc:
        parser.error(str(exc))
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except SandwichError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
