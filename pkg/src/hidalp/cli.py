"""Command line: modsym, congruence and branch jobs with canonical JSON output.

Exit status 0 on success, 2 for usage or input errors, 3 when a checked
property is falsified by the data."""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .io import (SchemaError, branch_pair_from_json, dumps, eigen_symbol_to_json, family_from_json,
                 load_json, model_from_json, require, write_text)

EXIT_OK, EXIT_INPUT, EXIT_FALSIFIED = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive(name):
    def conv(s):
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer")
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be positive")
        return v
    return conv


def build_parser():
    ap = _Parser(prog="hidalp", description="Modular symbols, p-adic L-values and branch geometry.")
    ap.add_argument("--version", action="version", version=f"hidalp {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("modsym", help="eigen-symbols and q-expansions of a level and weight")
    m.add_argument("--level", type=int, required=True)
    m.add_argument("--weight", type=int, required=True)
    m.add_argument("--prime", type=int, required=True)
    m.add_argument("--p-precision", type=_positive("p-precision"), default=20)
    m.add_argument("--out")

    c = sub.add_parser("congruence", help="compare two eigen-symbols from modsym outputs (FILE or FILE#LABEL)")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--p-precision", type=_positive("p-precision"), default=None)
    c.add_argument("--char-bound", type=_positive("char-bound"), default=1000)
    c.add_argument("--out")

    b = sub.add_parser("branch", help="intersection multiplicity, Taylor agreement or ramification")
    b.add_argument("pair", help="branch-pair/1 or ramified-model/1 file")
    b.add_argument("family", nargs="?", help="l-family/1 file")
    b.add_argument("--t-precision", type=_positive("t-precision"), default=None)
    b.add_argument("--out")
    return ap


# modsym

def _group_for(k):
    return "gamma0" if k % 2 == 0 else "gamma1"


def _eigen_for(N, k, p, prec):
    from .eigen import eigen_symbols
    from .modsym import build_space
    space = build_space(N, k, _group_for(k))
    return space, {s: eigen_symbols(space, s, p, prec) for s in (1, -1)}


def cmd_modsym(args):
    from .modsym import build_space, sturm_bound
    from .io import ring_to_json
    N, k, p = args.level, args.weight, args.prime
    space, eig = _eigen_for(N, k, p, args.p_precision)
    full = build_space(N, k, "gamma1")
    bound = sturm_bound(N, k)
    symbols = []
    for s in (1, -1):
        for e in eig[s]:
            d = eigen_symbol_to_json(e, bound)
            d["ring"] = ring_to_json(e.ring)
            symbols.append(d)
    return {"schema": "modsym/1",
            "parameters": {"level": N, "weight": k, "prime": p, "p_precision": args.p_precision,
                           "group": space.group},
            "dimensions": {"gamma1_symbols": full.dimension, "gamma1_cuspidal": full.cuspidal_dimension(),
                           "space": space.dimension, "cuspidal": space.cuspidal_dimension()},
            "sturm_bound": bound,
            "symbols": symbols}, EXIT_OK


# congruence

def _load_symbol(ref):
    path, _, label = ref.partition("#")
    data = load_json(path, "modsym/1")
    require(data, ("parameters", "symbols"), path)
    par = data["parameters"]
    require(par, ("level", "weight", "prime", "p_precision"), f"{path} parameters")
    if not data["symbols"]:
        raise SchemaError(f"{path}: no eigen-symbols")
    labels = [s.get("label") for s in data["symbols"]]
    if label and label not in labels:
        raise SchemaError(f"{path}: no eigen-symbol labelled {label!r}")
    label = label or labels[0]
    _, eig = _eigen_for(par["level"], par["weight"], par["prime"], par["p_precision"])
    for s in (1, -1):
        for e in eig[s]:
            if e.label == label:
                return e
    raise SchemaError(f"{path}: eigen-symbol {label!r} could not be rebuilt")


def cmd_congruence(args):
    from .congruence import default_characters, equivalence_report
    f = _load_symbol(args.first)
    g = _load_symbol(args.second)
    if f.ring != g.ring:
        raise SchemaError("the two eigen-symbols live in different local rings")
    chars = default_characters(f, g, B=args.char_bound)
    rep = equivalence_report(f, g, precision=args.p_precision, characters=chars)
    code = EXIT_OK if rep.verdict == "consistent" else EXIT_FALSIFIED
    return rep.to_json(), code


# branch

def cmd_branch(args):
    from .branches import (intersection_multiplicity_ord, l_ideal_data, ramification_from_lfunction,
                           ramified_derivative_pole, taylor_agreement_check)
    data = load_json(args.pair, ("branch-pair/1", "ramified-model/1"))
    fam = family_from_json(load_json(args.family, "l-family/1")) if args.family else None
    out = {"schema": "branch-verdict/1", "input": data["schema"]}
    code = EXIT_OK
    if data["schema"] == "branch-pair/1":
        pair = branch_pair_from_json(data)
        if args.t_precision:
            pair.g1, pair.g2 = pair.g1.truncate(args.t_precision), pair.g2.truncate(args.t_precision)
        I = intersection_multiplicity_ord(pair)
        out["intersection_multiplicity"] = I.to_json() if hasattr(I, "to_json") else I
        if fam is not None:
            if "L1" not in fam:
                raise SchemaError("a branch pair needs L1 and L2 families")
            v = taylor_agreement_check(pair, l_ideal_data(fam["L1"], fam["L2"]))
            out["taylor_agreement"] = v.to_json()
            if v.verdict.startswith("falsified"):
                code = EXIT_FALSIFIED
    else:
        model = model_from_json(data)
        out["pole_order"] = ramified_derivative_pole(model)
        out["e"] = model.e
        if fam is not None:
            if "L" not in fam:
                raise SchemaError("a ramified model needs an L family")
            v = ramification_from_lfunction(model, fam["L"])
            out["ramification"] = v.to_json()
            if v.is_ramified and v.index > model.e:
                out["ramification"]["diagnostic"] = "falsified: index exceeds the model's ramification"
                code = EXIT_FALSIFIED
    return out, code


COMMANDS = {"modsym": cmd_modsym, "congruence": cmd_congruence, "branch": cmd_branch}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        result, code = COMMANDS[args.command](args)
    except (SchemaError, ValueError) as exc:
        print(f"hidalp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    write_text(dumps(result), args.out, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
