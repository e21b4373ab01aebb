"""Command-line interface: ``ltlab <subcommand> [options]``.

stdout carries the report (json, tsv or text); stderr carries diagnostics.
Exit codes: 0 success, 1 a mathematical check failed, 2 usage error.
"""
import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import connection as cm
from . import qsym as Q
from .division_algebra import ODElem, center_check, conj_by_F, d_inverse, od_valuation
from .lubin_tate import (HondaFormalGroup, endo_frobenius_relation, fgl_axioms,
                         series_integral, verify_p_typical)
from .multizeta import (gamma_reciprocal_series, gamma_series_check, mzv, zeta,
                        zeta_even_check)
from .padic import UnramifiedElem, hensel_lift_modulus, is_prime

SCHEMA = "1"
DEFAULTS = {"p": 2, "n": 1, "prec": 12, "degree": 16, "digits": 30, "format": "json",
            "seed": 0}
ENV_PREFIX = "LTLAB_"


class UsageError(Exception):
    pass


# configuration -------------------------------------------------------------------


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--p", type=int, help="prime (default 2)")
    g.add_argument("--n", type=int, help="extension degree / height (default 1)")
    g.add_argument("--prec", type=int, help="p-adic precision N (default 12)")
    g.add_argument("--degree", type=int, help="series or Lie truncation D (default 16)")
    g.add_argument("--digits", type=int, help="decimal digits for numerics (default 30)")
    g.add_argument("--format", choices=["json", "tsv", "text"], help="output format")
    g.add_argument("--seed", type=int, help="seed for randomized checks (default 0)")
    return common


def resolve_config(args, environ=None):
    """Flag value, else LTLAB_<NAME> from the environment, else the default."""
    environ = os.environ if environ is None else environ
    cfg = {}
    for key, default in DEFAULTS.items():
        val = getattr(args, key, None)
        if val is None:
            raw = environ.get(ENV_PREFIX + key.upper())
            if raw is not None:
                try:
                    val = raw if key == "format" else int(raw)
                except ValueError:
                    raise UsageError(f"{ENV_PREFIX}{key.upper()} must be an integer") from None
            else:
                val = default
        cfg[key] = val
    if not is_prime(cfg["p"]):
        raise UsageError(f"--p {cfg['p']} is not prime")
    if cfg["n"] < 1:
        raise UsageError("--n must be >= 1")
    if cfg["prec"] < 4:
        raise UsageError("--prec must be >= 4")
    if cfg["degree"] < 2:
        raise UsageError("--degree must be >= 2")
    if not 10 <= cfg["digits"] <= 100:
        raise UsageError("--digits must be in [10, 100]")
    if cfg["format"] not in ("json", "tsv", "text"):
        raise UsageError("--format must be json, tsv or text")
    return cfg


# output ------------------------------------------------------------------------


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(x, (dict, list)) for x in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}.{i}")
    else:
        yield prefix, obj


def _cell(v):
    if isinstance(v, bool):
        return "pass" if v else "fail"
    if isinstance(v, (list, tuple)):
        return json.dumps(v)
    return "" if v is None else str(v)


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, indent=2)
    if fmt == "tsv":
        table = report.get("table")
        if table:
            cols = list(table[0])
            lines = ["\t".join(cols)]
            lines += ["\t".join(_cell(row.get(c)) for c in cols) for row in table]
            return "\n".join(lines)
        return "\n".join(f"{k}\t{_cell(v)}" for k, v in _flatten(report))
    text = report.get("text")
    if text is not None:
        return text
    width = max((len(k) for k, _ in _flatten(report)), default=0)
    return "\n".join(f"{k.ljust(width)}  {_cell(v)}" for k, v in _flatten(report))


# fgl -------------------------------------------------------------------------------


def cmd_fgl(args, cfg, rng):
    p, n, D = cfg["p"], cfg["n"], cfg["degree"]
    G = HondaFormalGroup(p, n, D, cfg["prec"])
    report = {
        "p": p, "n": n, "q": p ** n, "degree": D,
        "log": G.log.to_text("T"),
        "group_law": G.fgl.to_json(),
        "checks": {"integral": "pass" if series_integral(G.fgl, p) else "fail"},
    }
    ok = report["checks"]["integral"] == "pass"
    if args.endo is not None:
        a = Fraction(args.endo)
        f = G.mult_by(a)
        report["endo"] = {"a": str(a), "series": f.to_text("T"), "coeffs": f.to_json(),
                          "integral": series_integral(f, p)}
    if args.check_ptypical:
        if D < p ** n:
            raise UsageError(f"--check-ptypical needs --degree >= q = {p ** n}")
        rep = verify_p_typical(p, n, D)
        report["checks"]["ptypical"] = "pass" if rep["pass"] else "fail"
        report["ptypical_residual"] = rep["residual"]
        ok = ok and rep["pass"]
    if args.check_assoc:
        ax = fgl_axioms(G.fgl)
        for k, v in ax.items():
            report["checks"][k] = "pass" if v else "fail"
        ok = ok and all(ax.values())
    if args.check_frobenius:
        M = hensel_lift_modulus(p, n, cfg["prec"])
        a = M.random_element(rng)
        rep = endo_frobenius_relation(a, p, n, D)
        report["checks"]["frobenius_relation"] = "pass" if rep["pass"] else "fail"
        report["frobenius_relation"] = {"a": a.to_json(), "residual": rep["residual"]}
        ok = ok and rep["pass"]
    report["pass"] = ok
    report["text"] = "\n".join(
        [f"Honda formal group p={p} n={n} truncated at degree {D}",
         f"log(T) = {report['log']}",
         f"F(X,Y) = {G.fgl.to_text()}"]
        + ([f"[{report['endo']['a']}](T) = {report['endo']['series']}"] if args.endo else [])
        + [f"{k}: {v}" for k, v in report["checks"].items()])
    return report


# divalg ----------------------------------------------------------------------------


def _leaf(M, tok):
    if tok == "F":
        return ODElem.F(M)
    if tok in ("w", "omega"):
        return ODElem(M, [M.gen()])
    if tok == "p":
        return ODElem(M, [M.p])
    try:
        return ODElem(M, [Fraction(tok)])
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"unknown token {tok!r}") from None


def eval_rpn(M, text):
    """Evaluate a reverse-polish expression such as "F w * w ^3 +".

    Operands: integers and fractions, F, w (omega), p.  Operators: + - *
    (binary), ^k (power, k may be negative), inv, neg, sigma (conjugation
    by F).
    """
    stack = []
    for tok in text.split():
        if tok in ("+", "-", "*"):
            if len(stack) < 2:
                raise UsageError(f"'{tok}' needs two operands")
            b, a = stack.pop(), stack.pop()
            stack.append(a + b if tok == "+" else a - b if tok == "-" else a * b)
        elif tok.startswith("^"):
            try:
                k = int(tok[1:])
            except ValueError:
                raise UsageError(f"bad power {tok!r}; write e.g. ^3 or ^-1") from None
            if not stack:
                raise UsageError(f"'{tok}' needs an operand")
            stack.append(stack.pop() ** k)
        elif tok in ("inv", "neg", "sigma"):
            if not stack:
                raise UsageError(f"'{tok}' needs an operand")
            a = stack.pop()
            stack.append(d_inverse(a) if tok == "inv" else -a if tok == "neg" else conj_by_F(a))
        else:
            stack.append(_leaf(M, tok))
    if len(stack) != 1:
        raise UsageError(f"expression leaves {len(stack)} values on the stack")
    return stack[0]


def eval_tree(M, node):
    """Evaluate a JSON expression tree.

    Leaves: numbers, "F", "w", "p", or {"elem": <W(F_q) element JSON>}.
    Nodes: {"op": "add"|"sub"|"mul"|"pow"|"inv"|"neg"|"sigma", "args": [...]}.
    """
    if isinstance(node, (int, str)):
        return _leaf(M, str(node))
    if not isinstance(node, dict):
        raise UsageError(f"bad expression node {node!r}")
    if "elem" in node:
        a = UnramifiedElem.from_json(node["elem"])
        if a.modulus != M:
            raise UsageError("element does not match --p/--n/--prec")
        return ODElem(M, [a])
    op, args = node.get("op"), node.get("args", [])
    if op == "pow":
        return eval_tree(M, args[0]) ** int(args[1])
    vals = [eval_tree(M, a) for a in args]
    if op in ("add", "mul") and len(vals) >= 1:
        out = vals[0]
        for v in vals[1:]:
            out = out + v if op == "add" else out * v
        return out
    if op == "sub" and len(vals) == 2:
        return vals[0] - vals[1]
    if op in ("inv", "neg", "sigma") and len(vals) == 1:
        x = vals[0]
        return d_inverse(x) if op == "inv" else -x if op == "neg" else conj_by_F(x)
    raise UsageError(f"bad operator {op!r} with {len(vals)} arguments")


def _od_report(x):
    v = od_valuation(x)
    return {"value": repr(x), "valuation": None if v == float("inf") else str(v),
            "coeffs": [c.to_json() for c in x.coeffs]}


def cmd_divalg(args, cfg, rng):
    p, n = cfg["p"], cfg["n"]
    M = hensel_lift_modulus(p, n, cfg["prec"])
    exprs = list(args.expr)
    if args.file:
        with open(args.file) as fh:
            exprs += [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    results = []
    ok = True
    for e in exprs:
        try:
            if e.lstrip().startswith(("{", "[")):
                x = eval_tree(M, json.loads(e))
            else:
                x = eval_rpn(M, e)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON expression: {exc}") from None
        except (ZeroDivisionError, ArithmeticError, ValueError) as exc:
            results.append({"expr": e, "error": str(exc)})
            ok = False
            continue
        row = {"expr": e, **_od_report(x)}
        if args.check_center:
            row["central"] = center_check(x)
        results.append(row)
    report = {"p": p, "n": n, "prec": cfg["prec"], "modulus": list(M.m), "results": results}
    if args.check_relations:
        F = ODElem.F(M)
        w = ODElem(M, [M.gen()])
        a = M.random_element(rng, unit=True)
        rel = {
            "F^n = p": F ** n == ODElem(M, [p]),
            "F w = w^p F": F * w == ODElem(M, [M.gen() ** p]) * F,
            "F a F^-1 = sigma(a)": conj_by_F(a) == ODElem(M, [a.frobenius()]),
            "sigma^n = id": a.frobenius(n) == a,
            "w^(q-1) = 1": M.gen() ** (p ** n - 1) == M.one(),
        }
        report["relations"] = {k: "pass" if v else "fail" for k, v in rel.items()}
        ok = ok and all(rel.values())
    report["pass"] = ok
    report["table"] = [{"expr": r["expr"], "valuation": r.get("valuation"),
                        "value": r.get("value", r.get("error"))} for r in results] or None
    lines = [f"o_D over W(F_{p ** n}) mod p^{cfg['prec']}"]
    lines += [f"{r['expr']}  =>  {r.get('value', 'error: ' + r.get('error', ''))}"
              + (f"   [v = {r['valuation']}]" if r.get("valuation") is not None else "")
              + (f"   central={r['central']}" if "central" in r else "") for r in results]
    lines += [f"{k}: {v}" for k, v in report.get("relations", {}).items()]
    report["text"] = "\n".join(lines)
    return report


# qsym ------------------------------------------------------------------------------


def _parse_q(text):
    try:
        return Q.parse_element(text, Q.QSymElem)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_qsym(args, cfg, rng):
    op, operands = args.op, args.operands
    need = {"mul": 2, "comul": 1, "antipode": 1, "embed": 1, "dims": 1}[op]
    if op == "mul" and len(operands) < 2 or op != "mul" and len(operands) != need:
        raise UsageError(f"qsym {op} takes {need}{'+' if op == 'mul' else ''} operand(s)")
    report = {"op": op, "operands": operands}
    if op == "mul":
        x = _parse_q(operands[0])
        for o in operands[1:]:
            x = x * _parse_q(o)
        report.update(result=x.to_text(), terms=x.to_json())
        report["text"] = x.to_text()
    elif op == "comul":
        t = Q.qsym_comul(_parse_q(operands[0]))
        report.update(result=t.to_text(), terms=t.to_json())
        report["text"] = t.to_text()
    elif op == "antipode":
        x = Q.antipode(_parse_q(operands[0]))
        report.update(result=x.to_text(), terms=x.to_json())
        report["text"] = x.to_text()
    elif op == "embed":
        try:
            f = Q.parse_sym(operands[0])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        x = Q.embed_sym(f)
        report.update(result=x.to_text(), terms=x.to_json())
        report["text"] = x.to_text()
    else:
        try:
            K = int(operands[0])
        except ValueError:
            raise UsageError("dims takes a positive integer") from None
        if K < 1:
            raise UsageError("dims takes a positive integer")
        rows = []
        for k in range(1, K + 1):
            rows.append({"degree": k, "qsym": Q.graded_dimension(k),
                         "lie": Q.lie_generator_count(k),
                         "lie_odd": Q.lie_generator_count(k, odd=True,
                                                          include_one=not args.no_one)})
        report["table"] = rows
        report["dims"] = rows
        width = 8
        lines = ["degree".ljust(width) + "qsym".ljust(width) + "lie".ljust(width) + "lie_odd"]
        lines += [str(r["degree"]).ljust(width) + str(r["qsym"]).ljust(width)
                  + str(r["lie"]).ljust(width) + str(r["lie_odd"]) for r in rows]
        report["text"] = "\n".join(lines)
    if "terms" in report and op != "dims":
        report["table"] = [{"left": json.dumps(r[0]), "right": json.dumps(r[1]), "coeff": r[2]}
                           if len(r) == 3 else {"composition": json.dumps(r[0]), "coeff": r[1]}
                           for r in report["terms"]] or None
    report["pass"] = True
    return report


# mzv ---------------------------------------------------------------------------------


def _int_operand(s, what):
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"{what} must be an integer") from None


def cmd_mzv(args, cfg, rng):
    op, arg, digits = args.op, args.arg, cfg["digits"]
    report = {"op": op, "arg": arg, "digits": digits}
    ok = True
    try:
        if op == "zeta":
            n = _int_operand(arg, "N")
            v = zeta(n, digits)
            report.update(value=v.to_str(digits), err=v.err_str())
            report["table"] = [{"s": f"({n})", "value": v.to_str(digits), "err": v.err_str()}]
        elif op == "mzv":
            s = Q.parse_composition(arg)
            v = mzv(s, digits)
            report.update(value=v.to_str(digits), err=v.err_str())
            report["table"] = [{"s": Q.format_composition(s), "value": v.to_str(digits),
                                "err": v.err_str()}]
        elif op == "even-check":
            n = _int_operand(arg, "N")
            rep = zeta_even_check(n, digits)
            report.update(rep)
            ok = rep["pass"]
            report["table"] = [{"n": n, "zeta": rep["zeta"]["value"],
                                "formula": rep["formula"]["value"],
                                "residual": rep["residual"], "pass": rep["pass"]}]
        else:
            D = _int_operand(arg, "D")
            series = gamma_reciprocal_series(D, digits)
            rows = [{"k": k, "coeff": c.to_str(digits), "err": c.err_str()}
                    for k, c in enumerate(series.coeffs)]
            report["coefficients"] = rows
            report["table"] = rows
            if args.check:
                rep = gamma_series_check(D, ("0.1", "0.2"), digits)
                report["oracle"] = rep
                ok = rep["pass"]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report["pass"] = ok
    return report


# flatconn -----------------------------------------------------------------------------


def cmd_flatconn(args, cfg, rng):
    D = cfg["degree"]
    try:
        beta = cm.parse_beta(args.beta, D)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"bad --beta: {exc}") from None
    lam1 = cm.lambda1_from_beta(beta)
    report = {"beta": beta.to_json(), "degree": D, "lambda1": lam1.to_json()}
    try:
        lam0 = cm.solve_lambda0(lam1, args.depth)
    except cm.ConvergenceError as exc:
        report.update(error=str(exc), **{"pass": False})
        return report
    report["lambda0"] = lam0.to_json()
    ok = True
    if args.check:
        rep = cm.flatness_check(lam0, lam1)
        report["flatness"] = rep
        ok = rep["pass"]
    report["pass"] = ok
    lines = [f"beta     = {beta.to_text()}",
             f"lambda_1 = {lam1.to_text()}",
             f"lambda_0 = {lam0.to_text()}"]
    if args.check:
        lines.append(f"flat: {report['flatness']['flat']}  "
                     f"regular at u=0: {report['flatness']['regular_at_u0']}")
    report["text"] = "\n".join(lines)
    return report


# selftest ---------------------------------------------------------------------------


def cmd_selftest(args, cfg, rng):
    from .selftest import run_all
    only = set(args.only) if args.only else None
    results = run_all(cfg["seed"], only)
    for r in results:
        secs = r.pop("seconds", None)
        status = "PASS" if r["pass"] else "FAIL"
        print(f"[selftest] criterion {r['criterion']} {status} ({secs}s) {r['name']}",
              file=sys.stderr)
    failed = [f"criterion {r['criterion']} ({r['name']}): {f}"
              for r in results for f in r["failures"]]
    report = {"criteria": results, "failed": failed, "pass": not failed}
    report["table"] = [{"criterion": r["criterion"], "name": r["name"], "pass": r["pass"]}
                       for r in results]
    lines = [f"{r['criterion']}. {'PASS' if r['pass'] else 'FAIL'}  {r['name']}" for r in results]
    lines += [f"   - {f}" for f in failed]
    report["text"] = "\n".join(lines)
    return report


# parser ----------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _common_parser()
    parser = _Parser(prog="ltlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("fgl", parents=[common], help="Honda formal group laws")
    s.add_argument("--check-ptypical", action="store_true", help="[p](T) = T^q mod p")
    s.add_argument("--check-assoc", action="store_true", help="unit/commutativity/associativity")
    s.add_argument("--check-frobenius", action="store_true",
                   help="[sigma a](T^p) = [a](T)^p mod p for a random a in W(F_q)")
    s.add_argument("--endo", metavar="A", help="print [A](T) for a rational A")

    s = sub.add_parser("divalg", parents=[common], help="arithmetic in o_D and D")
    s.add_argument("expr", nargs="*", help="RPN (\"F w *\") or JSON expression trees")
    s.add_argument("--file", help="read one expression per line")
    s.add_argument("--check-relations", action="store_true")
    s.add_argument("--check-center", action="store_true")

    s = sub.add_parser("qsym", parents=[common], help="quasisymmetric functions")
    s.add_argument("op", choices=["mul", "comul", "antipode", "embed", "dims"])
    s.add_argument("operands", nargs="*")
    s.add_argument("--no-one", action="store_true",
                   help="dims: leave the weight-one generator out of the odd count")

    s = sub.add_parser("mzv", parents=[common], help="zeta values and 1/Gamma")
    s.add_argument("op", choices=["zeta", "mzv", "even-check", "gamma-series"])
    s.add_argument("arg")
    s.add_argument("--check", action="store_true", help="gamma-series: compare with 1/Gamma")

    s = sub.add_parser("flatconn", parents=[common], help="flat equisingular connections")
    s.add_argument("--beta", required=True, help='e.g. "1*e1+2*e2" or "e1 - [e1,e2]"')
    s.add_argument("--depth", type=int, default=None, help="cap on fixed-point rounds")
    s.add_argument("--check", action="store_true", help="verify flatness")

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    s.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    return parser


COMMANDS = {"fgl": cmd_fgl, "divalg": cmd_divalg, "qsym": cmd_qsym, "mzv": cmd_mzv,
            "flatconn": cmd_flatconn, "selftest": cmd_selftest}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        parser = build_parser()
        if not argv or argv[0] in ("-h", "--help"):
            parser.print_help()
            return 0 if argv else 2
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        cfg = resolve_config(args)
        rng = random.Random(cfg["seed"])
        t0 = time.perf_counter()
        report = COMMANDS[args.command](args, cfg, rng)
        print(f"[ltlab] {args.command} finished in {time.perf_counter() - t0:.2f}s",
              file=sys.stderr)
    except UsageError as exc:
        print(f"ltlab: error: {exc}", file=sys.stderr)
        return 2
    out = {"schema": SCHEMA, "command": args.command, "seed": cfg["seed"],
           "config": {k: cfg[k] for k in ("p", "n", "prec", "degree", "digits")}}
    fmt = cfg["format"]
    out.update({k: v for k, v in report.items() if k not in ("text", "table")})
    if fmt == "json":
        print(render(out, fmt))
    else:
        view = dict(out)
        if report.get("text") is not None:
            view["text"] = report["text"]
        if report.get("table"):
            view["table"] = report["table"]
        print(render(view, fmt))
    return 0 if report.get("pass", True) else 1


if __name__ == "__main__":
    sys.exit(main())
