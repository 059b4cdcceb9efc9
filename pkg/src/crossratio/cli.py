"""Command-line surface.

Commands compose through drawing documents: ``gen`` writes a graph document,
``draw`` adds a drawing section, ``check``/``cr``/``certify`` consume them,
``render`` emits figures, ``ratio`` runs the whole pipeline for one family
instance and writes a delimited report plus figures.

Exit codes: 0 verified/success, 1 claim refuted, 2 usage or budget error.
All outputs are deterministic for fixed inputs and flags; certificate
timings are zeroed unless ``--timings`` is given.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional

from . import families, formats, oracle, patterns, render
from .drawings import crossing_count, validate
from .graphs import GraphError
from .oracle import BudgetExceededError

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _read_document(path: str) -> formats.ParsedDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return formats.parse(fh.read())


def _generate(family: str, ell: int, k: Optional[int], mode: str):
    if family == "oneplanar":
        return families.gen_oneplanar(ell)
    if family == "oneplanar-multi":
        if not k:
            raise GraphError("--k is required for oneplanar-multi")
        return families.gen_oneplanar_multi_family(ell, k)
    if family == "quasi":
        return families.gen_quasi(ell)
    if family == "kquasi":
        if not k:
            raise GraphError("--k is required for kquasi")
        return families.gen_kquasi_family(ell, k, mode)
    if family == "fan":
        return families.gen_fan(ell)
    raise GraphError(f"unknown family {family!r}")


def cmd_gen(args) -> int:
    fam = _generate(args.family, args.ell, args.k, args.mode)
    meta = {"family": args.family, "ell": args.ell, "generator": oracle.TOOL_VERSION}
    if args.k:
        meta["k"] = args.k
    if args.family == "kquasi":
        meta["mode"] = args.mode
    warning = getattr(fam, "warning", None)
    if warning:
        print(f"warning: {warning}", file=sys.stderr)
        meta["warning"] = warning
    doc = formats.graph_document(fam.graph, meta)
    _write(args.output, formats.serialize(doc))
    if args.json:
        print(json.dumps({"vertices": fam.graph.num_vertices, "edges": fam.graph.num_edges}))
    return EXIT_OK


def _family_from_meta(doc: formats.ParsedDocument):
    meta = doc.meta
    family = meta.get("family")
    if not family:
        raise GraphError("document has no family metadata; run gen first")
    fam = _generate(
        family, int(meta["ell"]), meta.get("k"), meta.get("mode", "extend-all")
    )
    if formats.graph_to_dict(fam.graph) != formats.graph_to_dict(doc.graph):
        raise GraphError("document graph does not match its family metadata")
    return family, fam


def cmd_draw(args) -> int:
    doc = _read_document(args.input)
    family, fam = _family_from_meta(doc)
    drawing = families.build_drawing(fam, args.style)
    report = validate(drawing)
    if not report.ok:
        raise GraphError("drawing failed validation: " + "; ".join(report.failures()))
    meta = dict(doc.meta)
    meta["style"] = args.style
    meta["crossings"] = drawing.num_crossings
    _write(args.output, formats.serialize(formats.drawing_to_dict(drawing, meta)))
    if args.json:
        print(json.dumps({"style": args.style, "crossings": drawing.num_crossings}))
    return EXIT_OK


def _parse_pattern(spec: str):
    if spec == "fan":
        return ("fan", None)
    name, _, arg = spec.partition(":")
    if name in ("kplanar", "quasi") and arg.isdigit():
        return (name, int(arg))
    raise GraphError(f"bad pattern {spec!r}; use kplanar:K, quasi:K or fan")


def cmd_check(args) -> int:
    doc = _read_document(args.input)
    if doc.drawing is None:
        raise GraphError("document has no drawing section")
    kind, k = _parse_pattern(args.pattern)
    violations = []
    if kind == "kplanar":
        ok = patterns.check_k_planar(doc.drawing, k)
    elif kind == "quasi":
        ok = patterns.check_k_quasi_planar(doc.drawing, k)
    else:
        ok, viol = patterns.check_fan_planar(doc.drawing)
        violations = [
            {"crossed_edge": v.crossed_edge, "pair": list(v.pair), "reason": v.reason}
            for v in viol
        ]
    result = {
        "pattern": args.pattern,
        "holds": ok,
        "crossings": doc.drawing.num_crossings,
    }
    if violations:
        result["violations"] = violations
    print(json.dumps(result) if args.json else f"{args.pattern}: {'ok' if ok else 'violated'}")
    return EXIT_OK if ok else EXIT_REFUTED


def _parse_forced(items):
    out = []
    for item in items or ():
        if "," in item:
            a, _, b = item.partition(",")
        else:
            parts = item.split("x")
            if len(parts) != 2:
                raise GraphError(
                    f"bad forced pair {item!r}; use E1xE2 or E1,E2"
                )
            a, b = parts
        out.append((a, b))
    return out


def cmd_cr(args) -> int:
    doc = _read_document(args.input)
    cert = oracle.exact_cr(
        doc.graph,
        args.max_k,
        forced=_parse_forced(args.force),
        budget=args.budget,
        threads=args.threads,
    )
    _write(args.output, cert.to_json(include_timing=args.timings))
    value = cert.value
    summary = {
        "claim": cert.claim["type"],
        "value": value,
        "within_max_k": cert.claim["type"] in ("cr_exact", "cr_exact_forced"),
    }
    print(json.dumps(summary) if args.json else f"cr: {cert.claim['type']} value={value}")
    return EXIT_OK


def cmd_certify(args) -> int:
    doc = _read_document(args.input)
    cert = oracle.certify_lower(
        doc.graph,
        args.at_least,
        forced=_parse_forced(args.force),
        budget=args.budget,
        threads=args.threads,
    )
    _write(args.output, cert.to_json(include_timing=args.timings))
    if args.json:
        print(json.dumps({"claim": cert.claim, "ok": cert.ok}))
    else:
        print(f"cr >= {args.at_least}: {'certified' if cert.ok else 'REFUTED'}")
    return EXIT_OK if cert.ok else EXIT_REFUTED


def cmd_ratio(args) -> int:
    report, cert, restricted, minimum = oracle.ratio_report(
        args.family, args.ell, k=args.k, budget=args.budget, threads=args.threads
    )
    row = report.to_row()
    if args.json:
        print(json.dumps(row))
    else:
        print(
            f"{report.family} ell={report.ell}: {report.restricted_style} witness "
            f"{report.restricted_crossings} vs cr={report.cr_value} ({report.cr_kind}) "
            f"ratio={row['ratio']}"
        )
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        tag = f"{report.family}_{report.ell}" + (f"_k{report.k}" if report.k else "")
        csv_path = os.path.join(args.out_dir, f"ratio_{tag}.csv")
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(row.keys()))
            writer.writeheader()
            writer.writerow(row)
        render.render_figure(
            restricted,
            os.path.join(args.out_dir, f"{tag}_{report.restricted_style}.png"),
            title=f"{report.family} ell={report.ell}: "
            f"{report.restricted_crossings} crossings ({report.restricted_style})",
        )
        render.render_figure(
            minimum,
            os.path.join(args.out_dir, f"{tag}_min.png"),
            title=f"{report.family} ell={report.ell}: cr = {report.cr_value}",
        )
        _write(
            os.path.join(args.out_dir, f"{tag}_certificate.json"),
            cert.to_json(include_timing=args.timings),
        )
    return EXIT_OK


def cmd_render(args) -> int:
    doc = _read_document(args.input)
    if doc.drawing is None:
        raise GraphError("document has no drawing section")
    if args.output.endswith(".png"):
        render.render_figure(doc.drawing, args.output, outer_face=args.outer)
        return EXIT_OK
    svg = render.render_svg(
        doc.drawing, outer_face=args.outer, vertex_labels=args.labels
    )
    _write(args.output, svg)
    if args.json:
        print(json.dumps({"crossings": render.svg_crossing_count(svg)}))
    return EXIT_OK


def cmd_export(args) -> int:
    doc = _read_document(args.input)
    if args.format == "dot":
        _write(args.output, formats.to_dot(doc.graph))
    else:
        _write(args.output, formats.to_graphml(doc.graph))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="crossratio",
        description="Crossing-ratio gadget families, drawings and certificates.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output=True):
        sp.add_argument("--json", action="store_true", help="machine-readable stdout")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--timings", action="store_true", help="keep wall times in certificates")

    g = sub.add_parser("gen", help="generate a family graph")
    g.add_argument("--family", required=True,
                   choices=["oneplanar", "oneplanar-multi", "quasi", "kquasi", "fan"])
    g.add_argument("--ell", type=int, required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--mode", default="extend-all",
                   choices=["extend-all", "match-corollary"])
    g.add_argument("-o", "--output", required=True)
    common(g)
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("draw", help="build a named drawing of a generated graph")
    d.add_argument("--style", required=True,
                   choices=["saturated", "min", "quasi-planar", "fan-planar"])
    d.add_argument("-i", "--input", required=True)
    d.add_argument("-o", "--output", required=True)
    common(d)
    d.set_defaults(func=cmd_draw)

    c = sub.add_parser("check", help="validate a crossing pattern of a drawing")
    c.add_argument("--pattern", required=True, help="kplanar:K, quasi:K or fan")
    c.add_argument("-i", "--input", required=True)
    common(c)
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("cr", help="exact crossing number by scheme exhaustion")
    r.add_argument("--max-k", type=int, required=True)
    r.add_argument("--force", action="append", help="forced crossing pair E1xE2")
    r.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    r.add_argument("-i", "--input", required=True)
    r.add_argument("-o", "--output", required=True)
    common(r)
    r.set_defaults(func=cmd_cr)

    ce = sub.add_parser("certify", help="certify a crossing number lower bound")
    ce.add_argument("--at-least", type=int, required=True)
    ce.add_argument("--force", action="append")
    ce.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    ce.add_argument("-i", "--input", required=True)
    ce.add_argument("-o", "--output", required=True)
    common(ce)
    ce.set_defaults(func=cmd_certify)

    ra = sub.add_parser("ratio", help="restricted-vs-minimum crossing ratio report")
    ra.add_argument("--family", required=True,
                    choices=["oneplanar", "oneplanar-multi", "quasi", "fan"])
    ra.add_argument("--ell", type=int, required=True)
    ra.add_argument("--k", type=int)
    ra.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    ra.add_argument("--out-dir", help="write CSV, figures and certificate here")
    common(ra)
    ra.set_defaults(func=cmd_ratio)

    re_ = sub.add_parser("render", help="render a drawing to SVG (or PNG)")
    re_.add_argument("-i", "--input", required=True)
    re_.add_argument("-o", "--output", required=True)
    re_.add_argument("--outer", type=int, help="outer face index")
    re_.add_argument("--labels", action="store_true")
    common(re_)
    re_.set_defaults(func=cmd_render)

    ex = sub.add_parser("export", help="read-only DOT/GraphML export")
    ex.add_argument("--format", required=True, choices=["dot", "graphml"])
    ex.add_argument("-i", "--input", required=True)
    ex.add_argument("-o", "--output", required=True)
    common(ex)
    ex.set_defaults(func=cmd_export)

    return p


def cli(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, formats.FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
