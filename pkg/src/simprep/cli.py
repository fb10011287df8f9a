"""Command-line entry points.

    simprep replace    --scene S.json | --catalog C.json --ell L [--out delta.json]
    simprep barcode    --filtration F.json --ell L [--out bars.csv]
    simprep sa-barcode --set "1 - X^2 >= 0" --poly "X^2" --ell 1 [--radius R]
    simprep nerve      --scene S.json [--ell L]
    simprep betti      --complex K.json --ell L

Exit codes: 0 success, 2 malformed input, 3 missing cover entry,
4 set not closed or unbounded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .covers import (DeclaredCoverOracle, DimensionMismatch, MissingCoverEntry, box_cover_oracle,
                     intersection_nonempty, load_scene)
from .formula import FormulaSyntaxError, NotClosed, parse_formula, parse_polynomial
from .persistence import Filtration, NotNested, barcode, barcodes_to_csv, label_to_json
from .replacement import DEFAULT_BUDGET, RecursionBudgetExceeded, TupleOfFormulas, simplicial_replacement
from .sa_filtration import SubLevelProblem, UnboundedSet, sa_barcode_1d
from .simplicial import SimplicialComplex, betti_numbers, nerve

EXIT_INPUT, EXIT_COVER, EXIT_SET = 2, 3, 4


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def _betti_line(K: SimplicialComplex, ell: int) -> str:
    if len(K) == 0:
        return "b:"
    return "b: " + " ".join(map(str, betti_numbers(K, ell)))


def _catalog_labels(obj) -> list[str]:
    if "labels" in obj:
        return [str(l) for l in obj["labels"]]
    keys = {str(i) for e in obj["entries"] for i in e["key"]}
    members = {str(i) for e in obj["entries"] for i in e["members"]}
    return sorted(keys - members)


def cmd_replace(args) -> int:
    if bool(args.scene) == bool(args.catalog):
        raise InputError("give exactly one of --scene and --catalog")
    try:
        if args.scene:
            scene = load_scene(_read_json(args.scene))
            labels = sorted(l for l, s in scene.items() if not s.is_empty())
            oracle = box_cover_oracle(scene)
        else:
            obj = _read_json(args.catalog)
            oracle = DeclaredCoverOracle.from_json(obj)
            labels = _catalog_labels(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed input: {e}") from None
    if not labels:
        K = SimplicialComplex()
        doc = {"ell": args.ell, "complex": K.to_json(), "poset": {"elements": [], "hasse": []}}
    else:
        res = simplicial_replacement(TupleOfFormulas.of(labels), args.ell, oracle, budget=args.budget)
        K = res.complex
        doc = res.to_json()
    if args.out:
        _emit(_dumps(doc), args.out)
    print(_betti_line(K, args.ell))
    return 0


def cmd_barcode(args) -> int:
    try:
        F = Filtration.from_json(_read_json(args.filtration))
    except NotNested as e:
        raise InputError(f"filtration is not nested: {e}") from None
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed filtration: {e}") from None
    bars = barcode(F, args.ell)
    _emit(_format_bars(bars, args.format, approx=False), args.out)
    return 0


def cmd_sa_barcode(args) -> int:
    try:
        phi = parse_formula(args.set)
        P = parse_polynomial(args.poly)
        radius = Fraction(args.radius) if args.radius is not None else None
    except (FormulaSyntaxError, ValueError, ZeroDivisionError) as e:
        raise InputError(str(e)) from None
    prob = SubLevelProblem(phi, P, args.ell, radius)
    bars = sa_barcode_1d(prob)
    _emit(_format_bars(bars, args.format, approx=True), args.out)
    return 0


def cmd_nerve(args) -> int:
    try:
        scene = load_scene(_read_json(args.scene))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed scene: {e}") from None
    labels = sorted(scene)
    K, _ = nerve(labels, lambda ls: intersection_nonempty(scene, ls))
    doc = {"labels": labels, "complex": K.to_json()}
    if args.out:
        _emit(_dumps(doc), args.out)
    print(_betti_line(K, args.ell))
    return 0


def cmd_betti(args) -> int:
    try:
        K = SimplicialComplex.from_json(_read_json(args.complex))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed complex: {e}") from None
    print(_betti_line(K, args.ell))
    return 0


def _format_bars(bars, fmt: str, approx: bool) -> str:
    if fmt == "json":
        def enc(x):
            return "inf" if x == float("inf") else label_to_json(x)

        rows = [{"p": B.p, "birth": enc(b), "death": enc(d), "multiplicity": m}
                for B in bars for b, d, m in B.entries]
        return _dumps({"bars": rows})
    return barcodes_to_csv(bars, approx=approx)


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # the copy on each subcommand must not overwrite values given before it
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        g = argparse.ArgumentParser(add_help=False)
        g.add_argument("--out", default=d(None), help="write the main artifact here instead of stdout")
        g.add_argument("--format", choices=("json", "csv"), default=d("csv"))
        g.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET), help="poset element cap")
        return g

    common = global_flags(True)
    ap = argparse.ArgumentParser(prog="simprep", description=__doc__.splitlines()[0],
                                 parents=[global_flags(False)])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("replace", parents=[common], help="simplicial replacement of a covered set")
    p.add_argument("--scene")
    p.add_argument("--catalog")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_replace)

    p = sub.add_parser("barcode", parents=[common], help="barcode of a finite filtration")
    p.add_argument("--filtration", required=True)
    p.add_argument("--ell", type=int, default=2)
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("sa-barcode", parents=[common], help="barcode of a 1-D sub-level-set filtration")
    p.add_argument("--set", required=True, help='closed formula in one variable, e.g. "1 - X^2 >= 0"')
    p.add_argument("--poly", required=True)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--radius")
    p.set_defaults(func=cmd_sa_barcode)

    p = sub.add_parser("nerve", parents=[common], help="nerve of a box scene")
    p.add_argument("--scene", required=True)
    p.add_argument("--ell", type=int, default=1)
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers of a complex file")
    p.add_argument("--complex", required=True)
    p.add_argument("--ell", type=int, default=2)
    p.set_defaults(func=cmd_betti)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "ell", 0) < 0:
        print("error: --ell must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except DimensionMismatch as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except MissingCoverEntry as e:
        print(f"error: missing cover entry for key {json.dumps(list(e.key))}", file=sys.stderr)
        return EXIT_COVER
    except RecursionBudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (NotClosed, UnboundedSet) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SET


if __name__ == "__main__":
    sys.exit(main())
