"""Command-line front end.

Exit codes: 0 ok, 1 usage or schema error, 2 a checked property failed,
3 scope or arity error in a term.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import ArityError, BindsynError, ScopeError, UnknownOperation
from .laws import SUITES, run_suite
from .model import fold
from .quotient import check_compatibility
from .sexpr import ParseError, parse_ctx, parse_term, print_term
from .sigfile import load_mapping, load_signature
from .stdmodels import free_vars_model, redex_model, redexes, size, size_model

EXIT_OK, EXIT_USAGE, EXIT_PROPERTY, EXIT_SCOPE = 0, 1, 2, 3

MODELS = ("freevars", "size", "redexes")


class UsageError(BindsynError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _emit_reports(args, reports) -> int:
    ok = all(r.passed for r in reports)
    if args.json:
        print(json.dumps({"passed": ok, "reports": [r.to_json() for r in reports]}, sort_keys=True))
    else:
        for r in reports:
            print(r.summary())
            for w in r.failures[: r.max_failures]:
                print("  counterexample: " + ", ".join(f"{k}={v}" for k, v in w.items()))
    return EXIT_OK if ok else EXIT_PROPERTY


def _sig_ref(args):
    ref = getattr(args, "sigfile", None) or args.sig
    if not ref:
        raise UsageError("a signature is required (--sig FILE or a builtin name: LC, LJ, LL)")
    return ref


def _read_term(args, sig):
    ctx = parse_ctx(args.ctx)
    if len(set(ctx)) != len(ctx):
        raise UsageError(f"duplicate names in context {args.ctx!r}")
    return ctx, parse_term(args.term, sig, ctx)


def cmd_check(args) -> int:
    sf = load_signature(_sig_ref(args))
    report = check_compatibility(sf.presentation, args.samples, args.seed)
    if not sf.quotiented:
        report.name += " (no quotient)"
    return _emit_reports(args, [report])


def cmd_nf(args) -> int:
    sf = load_signature(_sig_ref(args))
    ctx, t = _read_term(args, sf.signature)
    out = print_term(sf.presentation.nf(t), sf.signature, ctx)
    _emit(args, out, {"term": out, "ctx": ctx})
    return EXIT_OK


def cmd_subst(args) -> int:
    sf = load_signature(_sig_ref(args))
    sig = sf.signature
    ctx, t = _read_term(args, sig)
    out_ctx = parse_ctx(args.out_ctx) if args.out_ctx is not None else ctx
    if len(set(out_ctx)) != len(out_ctx):
        raise UsageError(f"duplicate names in output context {args.out_ctx!r}")
    images = {}
    for b in args.bind:
        name, sep, text = b.partition(":=")
        name = name.strip()
        if not sep or not name:
            raise UsageError(f"bindings are written name:=term, got {b!r}")
        if name not in ctx:
            raise ScopeError(f"{name!r} is not in the context")
        if name in images:
            raise UsageError(f"{name!r} bound twice")
        images[name] = parse_term(text, sig, out_ctx)
    n = len(ctx)
    f = []
    for i in range(n):
        name = ctx[n - 1 - i]
        if name in images:
            f.append(images[name])
        elif name in out_ctx:
            f.append(parse_term(name, sig, out_ctx))
        else:
            raise ScopeError(f"{name!r} is neither bound nor in the output context")
    result = sf.presentation.quot_subst(t, f)
    out = print_term(result, sig, out_ctx)
    _emit(args, out, {"term": out, "ctx": out_ctx})
    return EXIT_OK


def _require_lc(sig, model):
    ok = sig.names == ["app", "abs"] and sig.arity("app") == (0, 0) and sig.arity("abs") == (1,)
    if not ok:
        raise UsageError(f"the {model} model is defined on the lambda-calculus signature (app, abs)")


def cmd_analyze(args) -> int:
    sf = load_signature(args.sig or "LC")
    sig = sf.signature
    ctx, t = _read_term(args, sig)
    n = len(ctx)
    match args.model:
        case "freevars":
            fv = fold(free_vars_model(sig), t, n)
            names = [ctx[n - 1 - i] for i in sorted(fv, reverse=True)]
            _emit(args, "{" + ", ".join(names) + "}", {"model": "freevars", "value": names})
        case "size":
            _require_lc(sig, "size")
            v = size(t, n)
            _emit(args, str(v), {"model": "size", "value": v})
        case "redexes":
            _require_lc(sig, "redexes")
            v = redexes(t, n)
            _emit(args, str(v), {"model": "redexes", "value": v})
    return EXIT_OK


def cmd_translate(args) -> int:
    if not args.map:
        raise UsageError("--map FILE is required")
    mf = load_mapping(args.map)
    ctx, t = _read_term(args, mf.src.signature)
    out = print_term(fold(mf.model(), t, len(ctx)), mf.dst.signature, ctx)
    _emit(args, out, {"term": out, "ctx": ctx})
    return EXIT_OK


def _analysis_model(name, sig):
    match name:
        case "freevars":
            return free_vars_model(sig)
        case "size":
            _require_lc(sig, "size")
            return size_model()
        case "redexes":
            _require_lc(sig, "redexes")
            return redex_model()


def cmd_laws(args) -> int:
    sf = load_signature(_sig_ref(args))
    model = _analysis_model(args.model or "freevars", sf.signature) if args.suite == "model" else None
    return _emit_reports(args, run_suite(args.suite, sf.presentation, args.samples, args.seed, model))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sig", help="signature file, or a builtin name (LC, LJ, LL)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    term_args = argparse.ArgumentParser(add_help=False)
    term_args.add_argument("term", help="term as an s-expression")
    term_args.add_argument("--ctx", default="", help='free variables, oldest first: "x,y,z"')

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--samples", type=int, default=1000)
    sampling.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="bindsyn", description="Syntax with variable binding: normalize, substitute, analyze, translate, check laws.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common, sampling], help="validate a signature file and its quotients")
    c.add_argument("sigfile", nargs="?", help="signature file (same as --sig)")
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("nf", parents=[common, term_args], help="canonical form of a term")
    c.set_defaults(run=cmd_nf)

    c = sub.add_parser("subst", parents=[common, term_args], help="simultaneous substitution")
    c.add_argument("--bind", action="append", default=[], metavar="NAME:=TERM")
    c.add_argument("--out-ctx", default=None, help="context of the result (default: --ctx)")
    c.set_defaults(run=cmd_subst)

    c = sub.add_parser("analyze", parents=[common, term_args], help="evaluate a term in a worked model")
    c.add_argument("--model", choices=MODELS, required=True)
    c.set_defaults(run=cmd_analyze)

    c = sub.add_parser("translate", parents=[common, term_args], help="translate a term along a mapping file")
    c.add_argument("--map", help="mapping file")
    c.set_defaults(run=cmd_translate)

    c = sub.add_parser("laws", parents=[common, sampling], help="run a sampled law suite")
    c.add_argument("--suite", choices=SUITES, required=True)
    c.add_argument("--model", choices=MODELS, default=None, help="model for the model suite (default freevars)")
    c.set_defaults(run=cmd_laws)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if getattr(args, "samples", 1) < 0:
        print("bindsyn: error: --samples must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.run(args)
    except (ScopeError, ArityError, UnknownOperation) as e:
        print(f"bindsyn: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_SCOPE
    except (ParseError, BindsynError, ValueError) as e:
        print(f"bindsyn: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
