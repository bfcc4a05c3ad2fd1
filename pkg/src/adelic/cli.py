"""Command-line front end: ``adelic <subcommand> [flags]``.

Every subcommand prints one JSON object (keys sorted) or, with ``--text``,
an indented plain rendering.  Exit status is 0 on success, 1 when the
library reports a domain error (the error object is printed) and 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import __version__
from .adele import torsion_multiset
from .errors import AdelicError
from .grouprec import (
    UnipotentMatrix,
    compare_point_groups,
    is_divisible,
    is_fertile,
    parse_descriptor,
    reconstruct_local_fields,
    siegel_decompose,
    unipotent_nth_root,
    verify_certificate,
)
from .localfield import LocalField, decompose_unit, recompose_unit
from .numberfield import NumberField, arithmetically_equivalent, completion, decompose, non_isomorphism_certificate
from .padic import PAdicNumber, is_prime


def _default_precision() -> int:
    raw = os.environ.get("ADELIC_PRECISION")
    if raw is None:
        return 40
    try:
        return int(raw)
    except ValueError:
        return 40


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip().replace("−", "-"))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from exc


def _matrix(text: str) -> list[list[Fraction]]:
    try:
        rows = json.loads(text.replace("−", "-"))
        out = [[Fraction(str(x)) for x in row] for row in rows]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot read matrix {text!r}") from exc
    if not out or any(len(row) != len(out) for row in out):
        raise argparse.ArgumentTypeError("matrix must be a non-empty square list of rows")
    return out


def _padic_matrix(rows, p: int, N: int):
    return [[PAdicNumber.zero(p) if x == 0 else PAdicNumber.from_rational(x, p, N) for x in row] for row in rows]


def _rational_view(x: PAdicNumber) -> str:
    """A small rational equal to ``x`` at its precision, else the p-adic form."""
    r = x.rational()
    return str(r) if r is not None else str(x)


# -- subcommands --------------------------------------------------------------


def cmd_decompose(a) -> dict:
    K = NumberField(a.field)
    d = decompose(K, a.prime)
    out = {"field": str(K), **d.to_json()}
    if d.supported:
        out["kinds"] = [lf.kind for lf in d.factors]
    return out


def cmd_equiv(a) -> dict:
    K, L = NumberField(a.fieldK), NumberField(a.fieldL)
    rep = arithmetically_equivalent(K, L, a.bound, jobs=a.jobs)
    out = {"fieldK": str(K), "fieldL": str(L), **rep.to_json()}
    if a.certify and rep.equivalent:
        out["non_isomorphism"] = non_isomorphism_certificate(K, L)
    return out


def _local_field(a) -> LocalField:
    if a.field is not None:
        return completion(NumberField(a.field), a.prime, a.index, a.precision)
    return LocalField(a.prime, f=a.f, e=a.e, N=a.precision)


def cmd_units(a) -> dict:
    F = _local_field(a)
    out = {
        "field": F.to_json(),
        "invariants": {"p": F.p, "e": F.e, "f": F.f},
        "unit_group": F.unit_group_structure().to_json(),
        "mu_p_power": F.mu_p_power(),
    }
    if a.samples:
        rng = random.Random(a.seed)
        ok = 0
        for _ in range(a.samples):
            x = F.random_unit(rng)
            if recompose_unit(F, decompose_unit(x)) == x:
                ok += 1
        out["round_trip"] = {"samples": a.samples, "exact": ok, "seed": a.seed}
    return out


def cmd_torsion(a) -> dict:
    K = NumberField(a.field)
    rep = torsion_multiset(K, a.bound, a.precision)
    return {"field": str(K), **rep.to_json()}


def cmd_siegel(a) -> dict:
    z = a.z if a.prime is None else PAdicNumber.from_rational(a.z, a.prime, a.precision)
    dec = siegel_decompose(z, a.n)
    out = dec.to_json()
    out["z"] = str(a.z)
    out["ring"] = "Q" if a.prime is None else f"Q_{a.prime}"
    if a.prime is not None:
        out["terms"] = [{"coefficient": c, "base": _rational_view(b) if isinstance(b, PAdicNumber) else str(b)}
                        for c, b in dec.terms]
    out["verified"] = dec.check()
    return out


def cmd_root(a) -> dict:
    g = _padic_matrix(a.matrix, a.prime, a.precision)
    v = UnipotentMatrix.from_matrix(g)
    w = unipotent_nth_root(v, a.n)
    return {
        "n": a.n,
        "p": a.prime,
        "root": [[_rational_view(x) for x in row] for row in w.rows()],
        "precision": w.precision(),
        "verified": w ** a.n == v,
    }


def cmd_divisible(a) -> dict:
    g = _padic_matrix(a.matrix, a.prime, a.precision)
    rep = is_divisible(g, a.nmax)
    out = {"p": a.prime, **rep.to_json()}
    if rep.certificate is not None:
        out["certificate_verified"] = verify_certificate(g, rep.certificate)
    return out


def cmd_fertile(a) -> dict:
    G = parse_descriptor(a.group)
    return {"group": G.name, **is_fertile(G).to_json()}


def cmd_reconstruct(a) -> dict:
    G = parse_descriptor(a.group)
    return reconstruct_local_fields(G, NumberField(a.field), a.bound, a.precision, a.jobs).to_json()


def cmd_compare(a) -> dict:
    G = parse_descriptor(a.group)
    K, L = NumberField(a.fieldK), NumberField(a.fieldL)
    rep = compare_point_groups(G, K, L, a.bound, a.precision, a.jobs)
    return {"group": G.name, "fieldK": str(K), "fieldL": str(L), **rep.to_json()}


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_positive, default=_default_precision(),
                        help="p-adic precision N (default 40, or $ADELIC_PRECISION)")
    common.add_argument("--bound", type=int, default=100, help="prime bound B (default 100)")
    common.add_argument("--nmax", type=int, default=30, help="largest n tried for divisibility (default 30)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled demonstrations (default 0)")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for prime scans")
    common.add_argument("--text", action="store_true", help="plain text instead of JSON")

    parser = argparse.ArgumentParser(prog="adelic", description="Finite adeles, local fields and point groups.")
    parser.add_argument("--version", action="version", version=f"adelic {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("decompose", cmd_decompose, "decomposition type of a prime")
    sp.add_argument("--field", required=True)
    sp.add_argument("--prime", type=_prime, required=True)

    sp = add("equiv", cmd_equiv, "arithmetic equivalence up to the bound")
    sp.add_argument("--fieldK", required=True)
    sp.add_argument("--fieldL", required=True)
    sp.add_argument("--certify", action="store_true", help="also certify non-isomorphism")

    sp = add("units", cmd_units, "unit group of a local field")
    sp.add_argument("--prime", type=_prime, required=True)
    sp.add_argument("--f", type=_positive, default=1)
    sp.add_argument("--e", type=_positive, default=1)
    sp.add_argument("--field", help="take the completion of this number field instead")
    sp.add_argument("--index", type=int, default=0, help="which prime above p (with --field)")
    sp.add_argument("--samples", type=int, default=0, help="round-trip this many random units")

    sp = add("torsion", cmd_torsion, "torsion orders of local unit groups up to the bound")
    sp.add_argument("--field", required=True)

    sp = add("siegel", cmd_siegel, "z as an integer combination of n-th powers")
    sp.add_argument("--z", type=_rational, required=True)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--prime", type=_prime, help="work in Q_p instead of Q")

    sp = add("root", cmd_root, "n-th root of a unipotent matrix over Q_p")
    sp.add_argument("--matrix", type=_matrix, required=True)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--prime", type=_prime, required=True)

    sp = add("divisible", cmd_divisible, "divisibility of a matrix over Q_p")
    sp.add_argument("--matrix", type=_matrix, required=True)
    sp.add_argument("--prime", type=_prime, required=True)

    sp = add("fertile", cmd_fertile, "fertility of a group descriptor")
    sp.add_argument("--group", required=True)

    sp = add("reconstruct", cmd_reconstruct, "local fields of K recovered through a fertile group")
    sp.add_argument("--group", required=True)
    sp.add_argument("--field", required=True)

    sp = add("compare", cmd_compare, "compare point groups over two number fields")
    sp.add_argument("--group", required=True)
    sp.add_argument("--fieldK", required=True)
    sp.add_argument("--fieldL", required=True)
    return parser


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and any(isinstance(v, (dict, list)) for v in
                                                             (val.values() if isinstance(val, dict) else val)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(val, sort_keys=True)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _emit(obj, text: bool) -> None:
    if text:
        print("\n".join(_render_text(obj)))
    else:
        print(json.dumps(obj, sort_keys=True, default=str))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (AdelicError, ValueError, ArithmeticError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.text)
        return 1
    _emit(result, args.text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
