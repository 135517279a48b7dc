"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 domain error, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import errors
from .generators import BlowupSequence, blowup_build, cyclic_quotient, duval
from .ideals import factor, is_simple, simplicity_via_jn
from .jumping import PERIODICITY_NOTE, PairData, jumping_numbers, rees_divisors
from .numerics import fundamental_cycle, lattice, multiplicity_data, relative_canonical
from .oracle import crosscheck, multiplier_divisor, oracle_jumping_numbers
from .resolution_graph import format_rational

EXIT_OK, EXIT_INVALID, EXIT_DOMAIN, EXIT_USAGE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    return q


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise errors.ValidationError(f"{path} is not valid JSON: {exc}")


def _load(args) -> PairData:
    return PairData.from_json(_read_json(args.file), force=getattr(args, "force", False))


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def _fmt(values) -> str:
    return ", ".join(format_rational(v) for v in values) if values else "(none)"


def cmd_validate(args, out):
    pair = _load(args)
    g = pair.graph
    lat = lattice(g)
    out.write("valid\n")
    out.write(f"divisors: {len(g.ids)} ({len(g.exceptional_ids)} exceptional)\n")
    if g.exceptional_ids:
        out.write(f"det(-M): {(-1) ** lat.rank * lat.det()}\n")
    if pair.forced:
        out.write("warning: F is not antinef\n")
    return EXIT_OK


def cmd_jn(args, out):
    pair = _load(args)
    report = jumping_numbers(pair)
    bound = args.bound if args.bound is not None else Fraction(2)
    if args.json:
        _dump(report.to_json(bound), out)
        return EXIT_OK
    values = report.up_to(bound)
    out.write(f"jumping numbers in (0, {format_rational(bound)}]: {_fmt(values)}\n")
    out.write(f"lct: {'none' if report.lct is None else format_rational(report.lct)}\n")
    out.write(f"periodicity: {PERIODICITY_NOTE}; base in (1, 2]: "
              f"{_fmt(report.periodicity_base)}\n")
    if args.attribution:
        for lam in report.jumping_numbers:
            if lam > bound:
                continue
            labels = "; ".join(c.label() for c in report.contributors[lam])
            out.write(f"  {format_rational(lam)}: {labels}\n")
    return EXIT_OK


def cmd_lct(args, out):
    report = jumping_numbers(_load(args))
    out.write(("none" if report.lct is None else format_rational(report.lct)) + "\n")
    return EXIT_OK


def cmd_oracle(args, out):
    pair = _load(args)
    bound = args.bound if args.bound is not None else Fraction(2)
    values = oracle_jumping_numbers(pair, bound)
    if args.json:
        _dump([format_rational(v) for v in values], out)
    else:
        out.write(f"oracle jumping numbers in (0, {format_rational(bound)}]: {_fmt(values)}\n")
    return EXIT_OK


def cmd_crosscheck(args, out):
    report = crosscheck(_load(args))
    if args.json:
        _dump(report.to_json(), out)
    else:
        out.write(report.verdict + "\n")
        for m in report.mismatches:
            out.write(f"  mismatch at {m['lambda']}: engine={m['engine']} oracle={m['oracle']}\n")
    return EXIT_OK if report.agree else 1


def cmd_mult_divisor(args, out):
    pair = _load(args)
    if args.lam <= 0:
        raise UsageError("--lambda must be positive")
    d = multiplier_divisor(pair, args.lam)
    _dump(d.to_json(pair.graph.ids), out)
    return EXIT_OK


def cmd_gen(args, out):
    if args.family == "duval":
        pair = duval(args.type, args.n)
    else:
        pair = cyclic_quotient(args.n, args.k)
    _dump(pair.to_json(), out)
    return EXIT_OK


def cmd_build(args, out):
    seq = BlowupSequence.from_json(_read_json(args.file))
    _dump(blowup_build(seq, force=args.force).to_json(), out)
    return EXIT_OK


def cmd_factor(args, out):
    pair = _load(args)
    fac = factor(pair.graph, pair.F)
    _dump({"exponents": fac.to_json()}, out)
    return EXIT_OK


def cmd_simple(args, out):
    pair = _load(args)
    simple = is_simple(pair.graph, pair.F)
    via_jn = simplicity_via_jn(pair.graph, pair.F)
    _dump({"simple": simple, "one_is_jumping_number": not via_jn,
           "consistent": simple == via_jn}, out)
    return EXIT_OK


def cmd_invariants(args, out):
    pair = _load(args)
    g = pair.graph
    ids = g.ids
    data = {"K": relative_canonical(g).to_json(ids),
            "rees_divisors": sorted(rees_divisors(pair))}
    if g.exceptional_ids:
        mult, emb = multiplicity_data(g)
        data["fundamental_cycle"] = fundamental_cycle(g).to_json(ids)
        data["multiplicity"] = mult
        data["embedding_dimension"] = emb
    _dump(data, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="surfjump", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def with_file(name, help_, func):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="instance JSON, or - for stdin")
        sp.add_argument("--force", action="store_true", help="accept F that is not antinef")
        sp.set_defaults(func=func)
        return sp

    with_file("validate", "validate an instance", cmd_validate)
    sp = with_file("jn", "jumping numbers with contributors", cmd_jn)
    sp.add_argument("--bound", type=_rational)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--attribution", action="store_true")
    with_file("lct", "log canonical threshold", cmd_lct)
    sp = with_file("oracle", "jumping numbers by brute force", cmd_oracle)
    sp.add_argument("--bound", type=_rational)
    sp.add_argument("--json", action="store_true")
    sp = with_file("crosscheck", "compare the engine with the oracle", cmd_crosscheck)
    sp.add_argument("--json", action="store_true")
    sp = with_file("mult-divisor", "antinef divisor of the multiplier ideal", cmd_mult_divisor)
    sp.add_argument("--lambda", dest="lam", type=_rational, required=True)
    with_file("factor", "factor into simple ideals (smooth case)", cmd_factor)
    with_file("simple", "simplicity test, two ways (smooth case)", cmd_simple)
    with_file("invariants", "fundamental cycle, K, multiplicity, Rees divisors", cmd_invariants)

    gen = sub.add_parser("gen", help="emit a generated instance")
    gsub = gen.add_subparsers(dest="family", parser_class=_Parser)
    gsub.required = True
    dv = gsub.add_parser("duval")
    dv.add_argument("--type", required=True, choices=["A", "D", "E6", "E7", "E8"])
    dv.add_argument("--n", type=int)
    cq = gsub.add_parser("cyclic")
    cq.add_argument("--n", type=int, required=True)
    cq.add_argument("--k", type=int, required=True)
    gen.set_defaults(func=cmd_gen)

    sp = sub.add_parser("build", help="build an instance from a blow-up sequence")
    sp.add_argument("file")
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=cmd_build)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except errors.ValidationError as exc:
        err.write(f"invalid: {exc}\n")
        return EXIT_INVALID
    except errors.DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except (KeyError, TypeError, ValueError) as exc:
        err.write(f"invalid: malformed input: {exc}\n")
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
