"""Command-line interface.

Exit codes: 0 means the property was verified (or a search found nothing
within budget), 1 means it was refuted and a witness was emitted, 2 means
the invocation or the input was unusable.  Machine reports are canonical
JSON, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import sys

from . import catfile, instances
from .canonical import (
    NAMED_CLASSES,
    named_class,
    verify_injectives_wfs,
    verify_sum_splitepi_wfs,
)
from .core import (
    AuditError,
    FinCat,
    MorClass,
    PreconditionError,
    ResourceBudgetError,
    StructuralError,
    UnsupportedStructureError,
    validate_category,
)
from .lifting import check_cancellation, check_fs, check_wfs
from .prefibration import check_prefibration, verify_prefibration_correspondence
from .reflection import (
    build_reflection,
    check_semi_left_exact,
    check_simple,
    fixed_subcategories,
    verify_firm_reflection,
)
from .search import SEARCH_TARGETS, run_search
from .structures import COLIMIT_KINDS, LIMIT_KINDS, colimit, limit
from .torsion import (
    build_nine_cell,
    check_normal,
    check_standard,
    check_torsion_theory,
    verify_annihilators,
    verify_standard_correspondence,
)

GENERATORS = ("finset", "pointed", "graph", "finab", "finab-div", "random")


def _generate(spec: str) -> FinCat:
    name, _, args = spec.partition(":")
    parts = [p for p in args.split(",") if p] if args else []
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise StructuralError(f"bad generator arguments in {spec!r}")
    if name == "finset" and len(nums) == 1:
        return instances.make_finset(nums[0])
    if name == "pointed" and len(nums) == 1:
        return instances.make_pointed_sets(nums[0])
    if name == "graph" and len(nums) == 2:
        return instances.make_fingraph(nums[0], nums[1])
    if name == "finab" and len(nums) == 1:
        return instances.make_finab(nums[0])
    if name == "finab-div" and len(nums) == 1:
        return instances.make_finab(nums[0], divisors_only=True, override_cap=True)
    if name == "random" and 1 <= len(nums) <= 3:
        return instances.random_category(*nums)
    raise StructuralError(
        f"unknown generator {spec!r}; expected one of {', '.join(GENERATORS)}"
    )


def _load_category(args) -> tuple[FinCat, dict]:
    if getattr(args, "cat", None):
        return catfile.load_category(args.cat)
    if getattr(args, "gen", None):
        return _generate(args.gen), {}
    raise StructuralError("pass --cat FILE or --gen SPEC")


def _resolve_class(cat: FinCat, doc: dict, name: str) -> MorClass:
    if name in NAMED_CLASSES:
        return named_class(cat, name)
    file_classes = catfile.classes_from_doc(cat, doc) if doc else {}
    if name in file_classes:
        return file_classes[name]
    raise StructuralError(
        f"unknown class {name!r}; named classes are {', '.join(NAMED_CLASSES)}"
    )


def _resolve_pair(cat, doc, args) -> tuple[MorClass, MorClass]:
    if getattr(args, "candidate", None):
        kind, _, arg = args.candidate.partition(":")
        if kind != "p-primary":
            raise StructuralError(f"unknown candidate kind {args.candidate!r}")
        return instances.p_primary_candidate(cat, int(arg))
    if not (getattr(args, "E", None) and getattr(args, "M", None)):
        raise StructuralError("pass --E and --M class names, or --candidate")
    return _resolve_class(cat, doc, args.E), _resolve_class(cat, doc, args.M)


def _objects_by_label(cat: FinCat, text: str) -> frozenset[int]:
    index = {cat.obj_label(o): o for o in cat.objects()}
    out = set()
    for label in text.split(","):
        if label not in index:
            raise StructuralError(f"unknown object label {label!r}")
        out.add(index[label])
    return frozenset(out)


def _emit(args, payload: dict, human_lines: list[str]) -> None:
    text = catfile.dumps(payload)
    for line in human_lines:
        print(line)
    if getattr(args, "json", None):
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as handle:
                handle.write(text)


def _torsion_pipeline(cat, left, right):
    report = check_torsion_theory(cat, left, right)
    if not report.is_torsion_theory:
        return report, None
    return report, report.data


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fincat",
        description="verify factorization, fibration and torsion structure "
        "on finite categories",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p):
        p.add_argument("--cat", help="category file (JSON)")
        p.add_argument("--gen", help="generator spec, e.g. finset:3 or finab-div:12")
        p.add_argument("--json", help="write the machine report here ('-' = stdout)")

    def add_pair(p):
        p.add_argument("--E", help="left class name")
        p.add_argument("--M", help="right class name")
        p.add_argument("--candidate", help="derived class pair, e.g. p-primary:2")

    p = sub.add_parser("validate", help="check the category tables")
    add_source(p)

    p = sub.add_parser("classes", help="compute named morphism classes")
    add_source(p)
    p.add_argument("--name", help="comma list of class names (default: all)")

    p = sub.add_parser("limits", help="compute one limit or colimit")
    add_source(p)
    p.add_argument("--kind", required=True)
    p.add_argument("--diagram", help="comma list of morphism or object labels")

    for cmd, helptext in (
        ("check-wfs", "weak factorization system verdict"),
        ("check-fs", "orthogonal factorization system verdict"),
        ("check-reflective", "reflective factorization system verdict"),
        ("check-simple", "simplicity of a reflective system"),
        ("check-sle", "semi-left-exactness of a reflective system"),
        ("check-torsion", "torsion theory verdict with annihilators"),
        ("check-normal", "normality of a torsion theory"),
    ):
        p = sub.add_parser(cmd, help=helptext)
        add_source(p)
        add_pair(p)

    p = sub.add_parser("check-prefib", help="prefibration checks")
    add_source(p)
    add_pair(p)
    p.add_argument("--functor", help="endofunctor name from the category file")

    p = sub.add_parser("diagram-48", help="nine-cell diagram of one object")
    add_source(p)
    add_pair(p)
    p.add_argument("--object", required=True, help="object label")

    for cmd in ("check-standard", "check-thm52"):
        p = sub.add_parser(cmd, help="standard torsion pair checks")
        add_source(p)
        p.add_argument("--T", required=True, help="comma list of torsion object labels")
        p.add_argument("--F", required=True, help="comma list of torsion-free labels")

    p = sub.add_parser("gen", help="generate an instance and export it")
    add_source(p)
    p.add_argument("--out", required=True, help="output category file")
    p.add_argument("--classes", help="comma list of named classes to embed")

    p = sub.add_parser("search", help="counterexample search")
    p.add_argument("--target", required=True, choices=SEARCH_TARGETS)
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--table-morphisms", type=int, default=4)
    p.add_argument("--out", help="write the witness category file here")
    p.add_argument("--json", help="write the machine report here ('-' = stdout)")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (
        StructuralError,
        UnsupportedStructureError,
        PreconditionError,
        ResourceBudgetError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AuditError as exc:
        print(f"internal audit failure: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    cmd = args.command

    if cmd == "search":
        result = run_search(
            args.target, args.budget, args.seed, table_morphisms=args.table_morphisms
        )
        payload = {"command": cmd, "report": result.doc()}
        lines = [
            f"search {args.target}: "
            + ("witness found" if result.found else "nothing found")
            + f" after {result.examined} candidates"
        ]
        _emit(args, payload, lines)
        if result.found and args.out:
            catfile.save_category(args.out, result.witness.category_doc)
        return 1 if result.found else 0

    cat, doc = _load_category(args)

    if cmd == "validate":
        report = validate_category(cat)
        payload = {"command": cmd, "report": report.doc()}
        lines = [
            f"validate: {'ok' if report.ok else 'INVALID'} "
            f"({cat.n_objects} objects, {cat.n_morphisms} morphisms)"
        ] + [f"  violation: {v}" for v in report.violations[:10]]
        _emit(args, payload, lines)
        return 0 if report.ok else 1

    if cmd == "classes":
        names = args.name.split(",") if args.name else list(NAMED_CLASSES)
        table = {}
        for name in names:
            try:
                table[name] = _resolve_class(cat, doc, name).labels()
            except UnsupportedStructureError as exc:
                table[name] = {"unsupported": str(exc)}
        payload = {"command": cmd, "report": table}
        lines = [
            f"{name}: "
            + (
                ", ".join(val)
                if isinstance(val, list)
                else f"unsupported ({val['unsupported']})"
            )
            for name, val in table.items()
        ]
        _emit(args, payload, lines)
        return 0

    if cmd == "limits":
        kind = args.kind
        mor_index = {cat.mor_label(m): m for m in cat.morphisms()}
        obj_index = {cat.obj_label(o): o for o in cat.objects()}
        diagram = []
        if args.diagram:
            for label in args.diagram.split(","):
                if kind in ("binary-product", "binary-coproduct"):
                    if label not in obj_index:
                        raise StructuralError(f"unknown object label {label!r}")
                    diagram.append(obj_index[label])
                else:
                    if label not in mor_index:
                        raise StructuralError(f"unknown morphism label {label!r}")
                    diagram.append(mor_index[label])
        if kind in LIMIT_KINDS:
            data = limit(cat, kind, tuple(diagram))
        elif kind in COLIMIT_KINDS:
            data = colimit(cat, kind, tuple(diagram))
        else:
            raise StructuralError(f"unknown kind {kind!r}")
        if data is None:
            payload = {"command": cmd, "report": {"exists": False, "kind": kind}}
            _emit(args, payload, [f"{kind}: does not exist in this table"])
            return 1
        payload = {
            "command": cmd,
            "report": {
                "exists": True,
                "kind": kind,
                "apex": cat.obj_label(data.apex),
                "legs": [cat.mor_label(m) for m in data.legs],
            },
        }
        _emit(
            args,
            payload,
            [f"{kind}: apex {cat.obj_label(data.apex)}, legs "
             + ", ".join(cat.mor_label(m) for m in data.legs)],
        )
        return 0

    if cmd in ("check-wfs", "check-fs"):
        left, right = _resolve_pair(cat, doc, args)
        if cmd == "check-wfs":
            report = check_wfs(cat, left, right)
            verdict = report.wfs
            label = "wfs"
        else:
            report = check_fs(cat, left, right)
            verdict = report.fs
            label = "fs"
        payload = {"command": cmd, "report": report.doc(cat)}
        _emit(args, payload, [f"{label}: {'verified' if verdict else 'refuted'}"])
        return 0 if verdict else 1

    if cmd == "check-reflective":
        left, right = _resolve_pair(cat, doc, args)
        fs_rep = check_fs(cat, left, right)
        cancel = check_cancellation(cat, left, "4")
        verdict = fs_rep.fs and cancel.ok
        payload = {
            "command": cmd,
            "report": {
                "reflective_fs": verdict,
                "fs": fs_rep.doc(cat),
                "cancellation_4": cancel.doc(cat),
            },
        }
        fixed = fixed_subcategories(cat, left, right)
        if verdict and fixed.over_terminal is not None:
            rd = build_reflection(cat, fixed.over_terminal)
            if rd is not None:
                payload["report"]["firm_reflection"] = verify_firm_reflection(
                    cat, left, right, rd
                ).doc(cat)
        _emit(args, payload, [f"reflective fs: {'verified' if verdict else 'refuted'}"])
        return 0 if verdict else 1

    if cmd in ("check-simple", "check-sle"):
        left, right = _resolve_pair(cat, doc, args)
        if not (check_fs(cat, left, right).fs and check_cancellation(cat, left, "4").ok):
            raise PreconditionError("the pair is not a reflective factorization system")
        fixed = fixed_subcategories(cat, left, right)
        if fixed.over_terminal is None:
            raise UnsupportedStructureError(fixed.over_terminal_reason)
        rd = build_reflection(cat, fixed.over_terminal)
        if rd is None:
            raise PreconditionError("the fixed subcategory is not reflective")
        if cmd == "check-simple":
            report = check_simple(cat, left, right, rd)
            verdict = report.simple
            label = "simple"
        else:
            report = check_semi_left_exact(cat, left, right, rd)
            verdict = report.semi_left_exact
            label = "semi-left-exact"
        payload = {"command": cmd, "report": report.doc(cat)}
        _emit(args, payload, [f"{label}: {'verified' if verdict else 'refuted'}"])
        return 0 if verdict else 1

    if cmd == "check-prefib":
        if args.functor:
            funs = catfile.functors_from_doc(cat, doc)
            if args.functor not in funs:
                raise StructuralError(f"no functor named {args.functor!r} in the file")
            report = check_prefibration(funs[args.functor])
            payload = {
                "command": cmd,
                "report": report.doc(cat, cat),
            }
            _emit(
                args,
                payload,
                [f"prefibration: {'verified' if report.ok else 'refuted'}"],
            )
            return 0 if report.ok else 1
        left, right = _resolve_pair(cat, doc, args)
        report = verify_prefibration_correspondence(cat, left, right)
        verdict = report.round_trip_exact
        payload = {"command": cmd, "report": report.doc(cat)}
        _emit(
            args,
            payload,
            [f"prefibration round trip: {'verified' if verdict else 'refuted'}"],
        )
        return 0 if verdict else 1

    if cmd == "check-torsion":
        left, right = _resolve_pair(cat, doc, args)
        report, data = _torsion_pipeline(cat, left, right)
        payload = {"command": cmd, "report": report.doc(cat)}
        verdict = report.is_torsion_theory
        if data is not None:
            ann = verify_annihilators(data)
            payload["report"]["annihilators"] = ann.doc(cat)
            verdict = verdict and ann.all_hold
        _emit(args, payload, [f"torsion theory: {'verified' if verdict else 'refuted'}"])
        return 0 if verdict else 1

    if cmd == "check-normal":
        left, right = _resolve_pair(cat, doc, args)
        report, data = _torsion_pipeline(cat, left, right)
        if data is None:
            payload = {"command": cmd, "report": report.doc(cat)}
            _emit(args, payload, ["normal: refuted (not a torsion theory)"])
            return 1
        normality = check_normal(data)
        payload = {
            "command": cmd,
            "report": {
                "torsion": report.doc(cat),
                "normality": normality.doc(cat),
            },
        }
        _emit(
            args,
            payload,
            [f"normal torsion theory: {'verified' if normality.normal else 'refuted'}"],
        )
        return 0 if normality.normal else 1

    if cmd == "diagram-48":
        left, right = _resolve_pair(cat, doc, args)
        report, data = _torsion_pipeline(cat, left, right)
        if data is None:
            raise PreconditionError("the pair is not a torsion theory")
        objs = _objects_by_label(cat, args.object)
        cells = {}
        verdict = True
        for o in sorted(objs):
            cell = build_nine_cell(data, o)
            cells[cat.obj_label(o)] = cell.doc(cat)
            verdict = verdict and all(cell.squares.values())
        payload = {"command": cmd, "report": {"cells": cells}}
        _emit(
            args,
            payload,
            [f"nine-cell squares: {'verified' if verdict else 'refuted'}"],
        )
        return 0 if verdict else 1

    if cmd == "check-standard":
        torsion = _objects_by_label(cat, args.T)
        free = _objects_by_label(cat, args.F)
        report = check_standard(cat, torsion, free)
        payload = {"command": cmd, "report": report.doc(cat)}
        _emit(
            args,
            payload,
            [f"standard torsion theory: {'verified' if report.standard else 'refuted'}"],
        )
        return 0 if report.standard else 1

    if cmd == "check-thm52":
        torsion = _objects_by_label(cat, args.T)
        free = _objects_by_label(cat, args.F)
        report = verify_standard_correspondence(cat, torsion, free)
        verdict = (
            report.fs_ok
            and report.reflective.ok
            and report.simple
            and report.fixed_free_matches
            and report.fixed_torsion_matches
            and (report.normal is not False)
            and (report.round_trip_exact is not False)
        )
        payload = {"command": cmd, "report": report.doc(cat)}
        _emit(
            args,
            payload,
            [f"standard correspondence: {'verified' if verdict else 'refuted'}"],
        )
        return 0 if verdict else 1

    if cmd == "gen":
        classes = {}
        if args.classes:
            for name in args.classes.split(","):
                classes[name] = _resolve_class(cat, doc, name)
        out_doc = catfile.category_to_doc(cat, classes=classes)
        catfile.save_category(args.out, out_doc)
        payload = {
            "command": cmd,
            "report": {
                "objects": cat.n_objects,
                "morphisms": cat.n_morphisms,
                "out": args.out,
            },
        }
        _emit(
            args,
            payload,
            [f"wrote {args.out} ({cat.n_objects} objects, {cat.n_morphisms} morphisms)"],
        )
        return 0

    raise StructuralError(f"unknown command {cmd!r}")


if __name__ == "__main__":
    sys.exit(main())
