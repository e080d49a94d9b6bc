"""Command line front end: ``wittsig {decide,sigfn,eval,gen,embeddings}``.

Exit codes: 0 success, 2 malformed input (schema, hermitian symmetry,
bad embedding or point), 3 singular form or evaluation at a pole, 1 when
root isolation runs out of its precision budget.
"""

import argparse
import os
import sys
from fractions import Fraction

from . import serialize
from .decide import is_trivial
from .errors import PoleError, RefinementBudgetExceeded, SingularFormError
from .field import DEFAULT_MAX_REFINE, Embedding, embeddings_G0
from .forms import HermitianForm, WittElement, make_canonical, make_metabolic
from .funcfield import parse_expr
from .sigfunc import evaluate_class_at, signature_step_function

EXIT_OK, EXIT_BUDGET, EXIT_INPUT, EXIT_SINGULAR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _precision():
    raw = os.environ.get("WITTSIG_PRECISION_START")
    if raw is None:
        return None
    try:
        bits = int(raw)
    except ValueError:
        raise InputError(f"WITTSIG_PRECISION_START must be an integer, got {raw!r}") from None
    if bits < 16:
        raise InputError("WITTSIG_PRECISION_START must be at least 16")
    return bits


def _embedding(w, k):
    try:
        return Embedding(w.m, k)
    except ValueError as exc:
        raise InputError(f"invalid embedding exponent {k} for m={w.m}: {exc}") from None


def cmd_decide(args, out):
    w = serialize.read_form_file(args.path)
    d = is_trivial(w, precision=_precision(), max_refine=args.max_refine)
    out.write(serialize.dumps(d.to_json(include_step_functions=not args.brief)) + "\n")


def cmd_sigfn(args, out):
    w = serialize.read_form_file(args.path)
    rho = _embedding(w, args.embedding)
    s = signature_step_function(w, rho, precision=_precision(), max_refine=args.max_refine)
    if args.out == "csv":
        out.write(s.to_csv())
    else:
        out.write(serialize.dumps(s.to_json()) + "\n")


def cmd_eval(args, out):
    w = serialize.read_form_file(args.path)
    rho = _embedding(w, args.embedding)
    N, j = args.point
    if N < 1:
        raise InputError("the order N of the point must be positive")
    out.write(str(evaluate_class_at(w, rho, (N, j))) + "\n")


def _parse_block(text):
    # N:j=r  for the point zeta_N^j with multiplicity r
    try:
        point, r = text.split("=")
        N, j = point.split(":")
        return (int(N), int(j)), Fraction(r)
    except ValueError:
        raise InputError(f"block must look like N:j=r, got {text!r}") from None


def cmd_gen(args, out):
    if args.kind == "metabolic":
        form = make_metabolic(args.n, seed=args.seed, m=args.m or 1, epsilon=args.epsilon)
        w = WittElement.from_form(form)
    elif args.kind == "canonical":
        blocks = [_parse_block(b) for b in args.block or []]
        try:
            w = make_canonical(Fraction(args.r0), blocks, m=args.m)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        if not args.m:
            raise InputError("gen constant needs --m")
        entries = [e for d in args.diag or [] for e in d.split(",") if e.strip()]
        if not entries:
            raise InputError("gen constant needs at least one --diag entry")
        try:
            diag = [parse_expr(e, args.m) for e in entries]
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad --diag entry: {exc}") from None
        w = WittElement.from_form(HermitianForm.diagonal(args.m, diag))
    out.write(serialize.dumps(serialize.form_file_from_witt(w)) + "\n")


def cmd_embeddings(args, out):
    if args.m < 1:
        raise InputError("m must be positive")
    out.write(serialize.dumps({"m": args.m, "G0": [rho.exponent for rho in embeddings_G0(args.m)]}) + "\n")


def build_parser():
    p = argparse.ArgumentParser(prog="wittsig", description="Signature invariants of hermitian forms over Q(zeta_m)(t).")
    sub = p.add_subparsers(dest="command", required=True)

    def add_refine(sp):
        sp.add_argument("--max-refine", type=int, default=DEFAULT_MAX_REFINE,
                        help="number of precision doublings allowed (default %(default)s)")

    d = sub.add_parser("decide", help="decide whether the class in a form file vanishes")
    d.add_argument("path")
    d.add_argument("--brief", action="store_true", help="omit the step functions from the output")
    add_refine(d)
    d.set_defaults(func=cmd_decide)

    s = sub.add_parser("sigfn", help="signature step function under one embedding")
    s.add_argument("path")
    s.add_argument("--embedding", "-k", type=int, default=1)
    s.add_argument("--out", choices=["json", "csv"], default="json")
    add_refine(s)
    s.set_defaults(func=cmd_sigfn)

    e = sub.add_parser("eval", help="signature of the class at t = zeta_N^j")
    e.add_argument("path")
    e.add_argument("--embedding", "-k", type=int, default=1)
    e.add_argument("--point", nargs=2, type=int, metavar=("N", "j"), required=True)
    e.set_defaults(func=cmd_eval)

    g = sub.add_parser("gen", help="write a generated form file to standard output")
    g.add_argument("kind", choices=["metabolic", "canonical", "constant"])
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int, default=2, help="half rank of a metabolic form")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--epsilon", type=int, choices=[1, -1], default=1)
    g.add_argument("--r0", default="0", help="multiplicity of <1> in a canonical class")
    g.add_argument("--block", action="append", help="canonical block N:j=r (repeatable)")
    g.add_argument("--diag", action="append", help="diagonal entry expression (repeatable)")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("embeddings", help="list the exponents k of G0(m)")
    b.add_argument("--m", type=int, required=True)
    b.set_defaults(func=cmd_embeddings)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except (InputError, serialize.FormFileError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except PoleError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SINGULAR
    except SingularFormError as exc:
        err.write(f"error: singular form: {exc}\n")
        return EXIT_SINGULAR
    except RefinementBudgetExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    return EXIT_OK


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
