"""
Batch command-line surface: ``hx <command> [options]``.

Commands: ``group``, ``weights``, ``hecke fprobe``, ``kl basis``,
``kl hconst``, ``kl afunction``, ``jring table|check|unit``,
``positivity``. All reports are deterministic for a given configuration
(including under ``--jobs N``); progress goes to stderr so piped JSON
stays clean.

Exit codes: 0 success; 1 usage or configuration error; 2 gating error
(an operation requested outside its domain, e.g. unbounded work on an
infinite system); 3 internal invariant violation (an implementation bug,
never bad input).

``HX_CACHE_DIR`` (environment) enables an on-disk report cache for the
expensive tables (``kl basis``, ``kl afunction``, ``jring table``): a
report is computed once per (matrix, weights, options) and replayed
byte-identically afterwards.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from typing import Optional

from .coxeter import (CoxeterSystem, Element, GatingError, InfiniteGroupError,
                      InternalCheckError, build_system)
from .hecke import HeckeAlgebra, WeightFunction, weight_catalog
from .klbasis import (KLBasis, a_function, j_associativity_check, j_find_unit,
                      j_table)
from .positivity import classify_positive

__all__ = ["main"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; our contract reserves 2
    # for gating errors, so surface usage problems as UsageError instead
    def error(self, message):
        raise UsageError(message)


def _word_arg(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad element word {text!r}: expected i,j,...")


def _build_parser() -> _Parser:
    parser = _Parser(prog="hx", description=__doc__.splitlines()[1])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, weights=True):
        p.add_argument("--type", dest="type_label", help="type label, e.g. B3 or ~F4")
        p.add_argument("--matrix", help="path to a JSON Coxeter matrix ('inf' for infinity)")
        if weights:
            p.add_argument("--weights", default=None,
                           help="comma-separated generator weights, or 'equal'")
        p.add_argument("--config", help="JSON file with default options")
        p.add_argument("--out", help="write the JSON (or CSV) report to this path")
        p.add_argument("--json", action="store_true", help="print the JSON report to stdout")
        p.add_argument("--jobs", type=int, default=None, help="worker pool degree (default 1)")
        p.add_argument("--seed", type=int, default=None, help="seed for sampled checks (default 0)")

    p = sub.add_parser("group", help="group order, conjugacy classes, special elements")
    common(p)
    p.add_argument("--max-length", type=int, default=None,
                   help="list the length ball instead (required for infinite systems)")

    p = sub.add_parser("weights", help="admissible weight catalog for an affine type")
    common(p, weights=False)

    p = sub.add_parser("hecke", help="T-basis level operations")
    hsub = p.add_subparsers(dest="subcommand", required=True)
    p = hsub.add_parser("fprobe", help="scan degrees of the structure constants f_{x,y,z}")
    common(p)
    p.add_argument("--radius", type=int, default=None,
                   help="length bound for the scan (omit to scan a whole finite group)")

    p = sub.add_parser("kl", help="Kazhdan-Lusztig basis computations")
    ksub = p.add_subparsers(dest="subcommand", required=True)
    pb = ksub.add_parser("basis", help="KL basis elements in T-coordinates")
    common(pb)
    pb.add_argument("--element", type=_word_arg, default=None,
                    help="generator word i,j,... of a single element")
    ph = ksub.add_parser("hconst", help="h-constants of a pair of basis elements")
    common(ph)
    ph.add_argument("--x", type=_word_arg, required=True, help="word of x")
    ph.add_argument("--y", type=_word_arg, required=True, help="word of y")
    pa = ksub.add_parser("afunction", help="the a-function table")
    common(pa)

    p = sub.add_parser("jring", help="the asymptotic ring J")
    jsub = p.add_subparsers(dest="subcommand", required=True)
    for name, hlp in [("table", "sparse gamma multiplication table"),
                      ("check", "associativity check over basis triples"),
                      ("unit", "solve for a two-sided unit")]:
        pj = jsub.add_parser(name, help=hlp)
        common(pj)
        if name == "check":
            pj.add_argument("--exhaustive", action="store_true",
                            help="force the full |W|^3 scan")

    p = sub.add_parser("positivity", help="conjugacy-class trace positivity")
    common(p)
    p.add_argument("--csv", action="store_true", help="emit the flat CSV table")
    p.add_argument("--max-cmin", type=int, default=None,
                   help="cap evaluated C_min members per class (rank-5 time budget)")
    p.add_argument("--trace-route", choices=["direct", "cyclic"], default="direct",
                   help="trace evaluation route (cyclic is much faster on long "
                        "elements; both are cross-checked in the test suite)")
    return parser


def _apply_config(args: argparse.Namespace) -> None:
    path = getattr(args, "config", None)
    if not path:
        return
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config {path}: {e}")
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    renames = {"type": "type_label"}
    for key, value in cfg.items():
        attr = renames.get(key, key.replace("-", "_"))
        if hasattr(args, attr) and getattr(args, attr) in (None, False):
            setattr(args, attr, value)


def _make_system(args) -> CoxeterSystem:
    label = getattr(args, "type_label", None)
    matrix = getattr(args, "matrix", None)
    if label and matrix:
        raise UsageError("--type and --matrix are mutually exclusive")
    if label:
        return build_system(label)
    if matrix:
        try:
            with open(matrix) as fh:
                rows = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read matrix {matrix}: {e}")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise UsageError(f"{matrix} must hold a JSON array of arrays")
        return build_system(rows)
    raise UsageError("one of --type or --matrix is required")


def _make_weight(system: CoxeterSystem, args) -> WeightFunction:
    raw = getattr(args, "weights", None)
    if raw in (None, "equal"):
        return WeightFunction.equal_parameters(system)
    if isinstance(raw, (list, tuple)):
        return WeightFunction(system, raw)
    return WeightFunction(system, _word_arg(raw))


def _dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _header(system: CoxeterSystem, weight: Optional[WeightFunction]) -> dict:
    head = {
        "type": system.type_label,
        "matrix": system.matrix_json(),
        "rank": system.rank,
        "is_finite": system.is_finite,
    }
    if weight is not None:
        head["weights"] = list(weight.values)
    return head


def _word(el: Element) -> list[int]:
    return list(el.word)


def _progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


# -- report cache -----------------------------------------------------------

def _cache_lookup(key_obj: dict) -> tuple[Optional[dict], Optional[str]]:
    cache_dir = os.environ.get("HX_CACHE_DIR")
    if not cache_dir:
        return None, None
    os.makedirs(cache_dir, exist_ok=True)
    digest = hashlib.sha256(
        json.dumps(key_obj, sort_keys=True).encode()).hexdigest()[:32]
    path = os.path.join(cache_dir, f"{digest}.json")
    if os.path.exists(path):
        try:
            with open(path) as fh:
                return json.load(fh), path
        except (OSError, json.JSONDecodeError):
            pass  # stale cache entry: recompute below
    return None, path


def _cache_store(path: Optional[str], report: dict) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(_dumps(report))


# -- commands -----------------------------------------------------------------

def _cmd_group(args) -> tuple[dict, list[str]]:
    system = _make_system(args)
    weight = _make_weight(system, args)
    report = _header(system, weight)
    text = [f"type {system.type_label or 'custom'}: rank {system.rank}, "
            f"{'finite' if system.is_finite else 'infinite'}"]
    if args.max_length is not None:
        ball = system.enumerate_elements(max_length=args.max_length)
        report["max_length"] = args.max_length
        report["elements"] = [_word(w) for w in ball]
        report["count"] = len(ball)
        text.append(f"{len(ball)} elements of length <= {args.max_length}")
        for w in ball:
            text.append(f"  [{','.join(map(str, w.word))}]" if w.word else "  e")
        return report, text
    if not system.is_finite:
        raise InfiniteGroupError(
            "an infinite system needs --max-length for enumeration")
    classes = system.conjugacy_classes()
    report["order"] = system.order()
    report["classes"] = [{
        "class_id": i,
        "representative": _word(c.representative),
        "size": c.size,
        "min_length": c.min_length,
        "centralizer_order": c.centralizer_order,
    } for i, c in enumerate(classes)]
    report["longest"] = _word(system.longest_element())
    report["coxeter"] = (_word(system.coxeter_element())
                         if system.is_irreducible else None)
    text.append(f"|W| = {report['order']}, {len(classes)} conjugacy classes")
    text.append(f"longest element (length {len(report['longest'])}): {report['longest']}")
    if report["coxeter"] is not None:
        text.append(f"coxeter element: {report['coxeter']}")
    for row in report["classes"]:
        text.append(f"  class {row['class_id']}: rep {row['representative']}, "
                    f"size {row['size']}, min length {row['min_length']}, "
                    f"centralizer {row['centralizer_order']}")
    return report, text


def _cmd_weights(args) -> tuple[dict, list[str]]:
    label = getattr(args, "type_label", None)
    if not label:
        raise UsageError("weights needs --type")
    catalog = weight_catalog(label)
    report = {"type": label, "catalog": [list(t) for t in catalog]}
    text = [f"admissible weight tuples for {label}:"]
    text.extend(f"  {tuple(t)}" for t in catalog)
    return report, text


def _cmd_fprobe(args) -> tuple[dict, list[str]]:
    system = _make_system(args)
    weight = _make_weight(system, args)
    algebra = HeckeAlgebra(system, weight)
    probe = algebra.f_bound_probe(radius=args.radius)
    report = _header(system, weight)
    report["radius"] = probe.radius
    report["n_emp"] = probe.n_emp
    report["witness"] = (None if probe.witness is None else
                         {"x": _word(probe.witness[0]),
                          "y": _word(probe.witness[1]),
                          "z": _word(probe.witness[2])})
    report["pairs_scanned"] = probe.pairs_scanned
    scope = "whole group" if probe.radius is None else f"radius {probe.radius}"
    text = [f"N_emp = {probe.n_emp} over {scope} ({probe.pairs_scanned} pairs)"]
    if probe.witness:
        text.append(f"witness: x={report['witness']['x']} y={report['witness']['y']} "
                    f"z={report['witness']['z']}")
    return report, text


def _poly_pairs(p) -> list[list[int]]:
    return p.to_pairs()


def _cmd_kl_basis(args) -> tuple[dict, list[str]]:
    system = _make_system(args)
    weight = _make_weight(system, args)
    key = {"command": "kl basis", "matrix": system.matrix_json(),
           "weights": list(weight.values),
           "element": list(args.element) if args.element is not None else None}
    cached, cache_path = _cache_lookup(key)
    if cached is not None:
        _progress("kl basis: cache hit")
        report = cached
    else:
        kl = KLBasis(HeckeAlgebra(system, weight))
        if args.element is not None:
            targets = [system.normal_form(args.element)]
        else:
            if not system.is_finite:
                raise InfiniteGroupError(
                    "listing the whole KL basis needs a finite system "
                    "(use --element on infinite ones)")
            targets = system.enumerate_elements()
        report = _header(system, weight)
        report["elements"] = [{
            "w": _word(w),
            "coords": [[_word(y), _poly_pairs(p)]
                       for y, p in sorted(kl.coords(w).items(),
                                          key=lambda kv: kv[0].sort_key)],
        } for w in targets]
        _cache_store(cache_path, report)
    text = []
    for entry in report["elements"]:
        text.append(f"c_{entry['w']}:")
        for yword, pairs in entry["coords"]:
            text.append(f"  {yword}: {pairs}")
    return report, text


def _cmd_kl_hconst(args) -> tuple[dict, list[str]]:
    system = _make_system(args)
    weight = _make_weight(system, args)
    kl = KLBasis(HeckeAlgebra(system, weight))
    x = system.normal_form(args.x)
    y = system.normal_form(args.y)
    constants = kl.h_constants(x, y)
    report = _header(system, weight)
    report["x"] = _word(x)
    report["y"] = _word(y)
    report["constants"] = [[_word(z), _poly_pairs(p)]
                           for z, p in sorted(constants.items(),
                                              key=lambda kv: kv[0].sort_key)]
    text = [f"c_{report['x']} * c_{report['y']}:"]
    text.extend(f"  h[z={zw}] = {pairs}" for zw, pairs in report["constants"])
    return report, text


def _cmd_kl_afunction(args) -> tuple[dict, list[str]]:
    system = _make_system(args)
    weight = _make_weight(system, args)
    key = {"command": "kl afunction", "matrix": system.matrix_json(),
           "weights": list(weight.values)}
    cached, cache_path = _cache_lookup(key)
    if cached is not None:
        _progress("kl afunction: cache hit")
        report = cached
    else:
        kl = KLBasis(HeckeAlgebra(system, weight))
        afn = a_function(kl, progress=lambda done, total: _progress(
            f"a-function: {done}/{total} pairs"))
        order = sorted(afn.values, key=lambda el: el.sort_key)
        report = _header(system, weight)
        report["values"] = [[_word(z), afn.values[z]] for z in order]
        report["witnesses"] = [[_word(z), _word(afn.witnesses[z][0]),
                                _word(afn.witnesses[z][1])] for z in order]
        _cache_store(cache_path, report)
    text = [f"a({zw}) = {a}" for zw, a in report["values"]]
    return report, text


def _build_jring(args):
    system = _make_system(args)
    weight = _make_weight(system, args)
    kl = KLBasis(HeckeAlgebra(system, weight))
    ring = j_table(kl, progress=lambda done, total: _progress(
        f"j-table: {done}/{total} pairs"))
    return system, weight, ring


def _jring_table_report(args) -> dict:
    system = _make_system(args)
    weight = _make_weight(system, args)
    key = {"command": "jring table", "matrix": system.matrix_json(),
           "weights": list(weight.values)}
    cached, cache_path = _cache_lookup(key)
    if cached is not None:
        _progress("jring table: cache hit")
        return cached
    _, _, ring = _build_jring(args)
    report = _header(system, weight)
    report["a_values"] = [[_word(z), ring.a.values[z]]
                          for z in sorted(ring.a.values, key=lambda el: el.sort_key)]
    triples = []
    for (x, y) in sorted(ring.table, key=lambda kv: (kv[0].sort_key, kv[1].sort_key)):
        row = ring.table[(x, y)]
        for z in sorted(row, key=lambda el: el.sort_key):
            triples.append([_word(x), _word(y), _word(z), row[z]])
    report["triples"] = triples
    _cache_store(cache_path, report)
    return report


def _cmd_jring(args) -> tuple[dict, list[str]]:
    if args.subcommand == "table":
        report = _jring_table_report(args)
        text = [f"{len(report['triples'])} nonzero structure constants"]
        return report, text
    system, weight, ring = _build_jring(args)
    if args.subcommand == "check":
        res = j_associativity_check(ring, seed=args.seed,
                                    force_exhaustive=bool(getattr(args, "exhaustive", False)))
        report = _header(system, weight)
        report["passed"] = res.passed
        report["triples_checked"] = res.triples_checked
        report["triples_total"] = res.triples_total
        report["exhaustive"] = res.exhaustive
        report["seed"] = res.seed
        report["counterexample"] = (None if res.counterexample is None else
                                    {"x": _word(res.counterexample[0]),
                                     "y": _word(res.counterexample[1]),
                                     "z": _word(res.counterexample[2])})
        text = [f"associativity {'PASS' if res.passed else 'FAIL'} "
                f"({res.triples_checked}/{res.triples_total} triples"
                f"{', exhaustive' if res.exhaustive else ''})"]
        if res.counterexample:
            text.append(f"counterexample: {report['counterexample']}")
        return report, text
    unit = j_find_unit(ring)
    report = _header(system, weight)
    report["unit"] = (None if unit is None else
                      [[_word(w), c] for w, c in sorted(unit.items(),
                                                        key=lambda kv: kv[0].sort_key)])
    text = (["no two-sided unit found"] if unit is None else
            [f"unit = sum of {len(unit)} terms:"]
            + [f"  {row[0]}: {row[1]}" for row in report["unit"]])
    return report, text


def _cmd_positivity(args) -> tuple[dict, list[str]]:
    system = _make_system(args)
    weight = _make_weight(system, args)
    algebra = HeckeAlgebra(system, weight)
    reports = classify_positive(
        algebra, jobs=max(1, args.jobs), max_cmin=args.max_cmin,
        route=args.trace_route,
        progress=lambda done, total: _progress(f"positivity: class {done}/{total}"))
    report = _header(system, weight)
    report["order"] = system.order()
    report["reports"] = [r.to_jsonable() for r in reports]
    report["positive_class_ids"] = [r.class_id for r in reports if r.positive]
    text = []
    for r in reports:
        text.append(f"class {r.class_id}: rep {_word(r.representative)}, "
                    f"size {r.size}, min length {r.min_length}, "
                    f"N(1) = {r.centralizer_order}, "
                    f"{'POSITIVE' if r.positive else 'not positive'}")
    text.append("positive classes: "
                + ", ".join(map(str, report["positive_class_ids"])))
    return report, text


def _positivity_csv(report: dict) -> str:
    lines = ["class,size,min_length,positive,n_at_1"]
    for row in report["reports"]:
        lines.append(f"{row['class_id']},{row['size']},{row['min_length']},"
                     f"{str(row['positive']).lower()},{row['centralizer_order']}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args)
        if args.jobs is None:
            args.jobs = 1
        if args.seed is None:
            args.seed = 0
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        command = args.command
        if command == "group":
            report, text = _cmd_group(args)
        elif command == "weights":
            report, text = _cmd_weights(args)
        elif command == "hecke":
            report, text = _cmd_fprobe(args)
        elif command == "kl":
            if args.subcommand == "basis":
                report, text = _cmd_kl_basis(args)
            elif args.subcommand == "hconst":
                report, text = _cmd_kl_hconst(args)
            else:
                report, text = _cmd_kl_afunction(args)
        elif command == "jring":
            report, text = _cmd_jring(args)
        else:
            report, text = _cmd_positivity(args)
    except UsageError as e:
        print(f"hx: error: {e}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as e:
        print(f"hx: error: {e}", file=sys.stderr)
        return 1
    except GatingError as e:
        print(f"hx: gated: {e}", file=sys.stderr)
        return 2
    except InternalCheckError as e:
        print(f"hx: INTERNAL INVARIANT VIOLATION: {e}", file=sys.stderr)
        return 3

    use_csv = bool(getattr(args, "csv", False))
    if args.out:
        payload = _positivity_csv(report) if use_csv else _dumps(report)
        with open(args.out, "w") as fh:
            fh.write(payload)
    if args.json:
        sys.stdout.write(_dumps(report))
    elif use_csv:
        sys.stdout.write(_positivity_csv(report))
    else:
        for line in text:
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
