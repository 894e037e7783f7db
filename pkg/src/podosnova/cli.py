"""Batch command line front door.

Exit codes: 0 success, 1 validation/domain failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .capsule import decode_capsule
from .catalog import (
    MarkFamily,
    UNMARKED,
    default_catalog,
    parse_mark_string,
    render_mark_string,
)
from .derive import derive_ceiling_plan, derive_foundation_plan, generate_section_display
from .drafting import DimLinear, DisplayList, generate_overall_dimension, generate_plan_display, generate_span_dimensions
from .dxf import emit_dxf
from .entities import Orientation
from .errors import KernelError, TooFewAxes
from .sectiondoc import load_section_document
from .svg import emit_svg
from .textdoc import load_text, save_text
from .validate import check_model


def _parse_scale(text: str) -> int:
    if not text.startswith("1:"):
        raise argparse.ArgumentTypeError(f"scale must look like 1:100, got {text!r}")
    try:
        denom = int(text[2:])
    except ValueError:
        raise argparse.ArgumentTypeError(f"scale must look like 1:100, got {text!r}")
    if denom <= 0:
        raise argparse.ArgumentTypeError("scale denominator must be positive")
    return denom


def _load_model(path_text: str):
    path = Path(path_text)
    if not path.exists():
        raise FileNotFoundError(path)
    if path.suffix == ".podo":
        model, _ = decode_capsule(path.read_bytes())
        return model
    return load_text(path.read_text(encoding="utf-8"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="podo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model document")
    p.add_argument("model")

    p = sub.add_parser("render", help="render a plan to SVG or DXF")
    p.add_argument("model")
    p.add_argument("--svg", metavar="OUT")
    p.add_argument("--dxf", metavar="OUT")
    p.add_argument("--scale", type=_parse_scale, default=100, metavar="1:N")
    p.add_argument(
        "--dims",
        choices=["both", "left", "right", "top", "bottom", "none"],
        default="both",
    )
    p.add_argument("--overall", action="store_true")
    p.add_argument("--ascii", action="store_true", help="transliterate DXF labels")

    p = sub.add_parser("derive", help="derive a foundation or ceiling plan")
    p.add_argument("target", choices=["foundation", "ceiling"])
    p.add_argument("model")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--bearing-only", action="store_true")

    p = sub.add_parser("section", help="generate a building section")
    p.add_argument("spec")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("catalog", help="query the mark catalog")
    cat_sub = p.add_subparsers(dest="catalog_command", required=True)
    cp = cat_sub.add_parser("parse")
    cp.add_argument("mark")
    cl = cat_sub.add_parser("list")
    cl.add_argument("family", choices=[f.value for f in MarkFamily])

    p = sub.add_parser("protos", help="list capsule prototypes in a directory")
    p.add_argument("directory")
    return parser


def _render_dims(model, side_mode: str, overall: bool) -> DisplayList:
    dl = generate_plan_display(model)
    if side_mode != "both":
        dl.primitives = [p for p in dl.primitives if not isinstance(p, DimLinear)]
        if side_mode != "none":
            orientation = (
                Orientation.H if side_mode in ("left", "right") else Orientation.V
            )
            try:
                dl.extend(generate_span_dimensions(model, orientation, side_mode))
            except TooFewAxes:
                pass
    if overall:
        for orientation in Orientation:
            try:
                dl.primitives.append(generate_overall_dimension(model, orientation))
            except TooFewAxes:
                pass
    return dl


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        if args.command == "validate":
            model = _load_model(args.model)
            problems = check_model(model)
            if problems:
                for problem in problems:
                    print(problem, file=sys.stderr)
                return 1
            print(f"{args.model}: valid {model.kind.value} plan")
            return 0

        if args.command == "render":
            if not args.svg and not args.dxf:
                print("render: need --svg or --dxf output", file=sys.stderr)
                return 2
            model = _load_model(args.model)
            dl = _render_dims(model, args.dims, args.overall)
            if args.svg:
                Path(args.svg).write_text(emit_svg(dl, args.scale), encoding="utf-8")
                print(f"wrote {args.svg}")
            if args.dxf:
                Path(args.dxf).write_text(
                    emit_dxf(dl, args.scale, ascii_labels=args.ascii), encoding="utf-8"
                )
                print(f"wrote {args.dxf}")
            return 0

        if args.command == "derive":
            model = _load_model(args.model)
            if args.target == "foundation":
                derived = derive_foundation_plan(model, bearing_only=args.bearing_only)
            else:
                derived = derive_ceiling_plan(model)
            Path(args.output).write_text(save_text(derived), encoding="utf-8")
            print(f"wrote {args.output}")
            return 0

        if args.command == "section":
            spec, models = load_section_document(args.spec)
            dl = generate_section_display(spec, models)
            Path(args.output).write_text(emit_svg(dl, spec.scale), encoding="utf-8")
            print(f"wrote {args.output}")
            return 0

        if args.command == "catalog":
            if args.catalog_command == "parse":
                parsed = parse_mark_string(args.mark)
                if parsed is UNMARKED:
                    print("unmarked")
                else:
                    dims = " ".join(str(d) for d in parsed.dims_mm)
                    line = f"{parsed.name}: dims {dims}"
                    if parsed.metric is not None:
                        line += f", metric {parsed.metric}"
                    if parsed.trailer:
                        line += f", suffix {parsed.trailer}"
                    print(line)
                return 0
            catalog = default_catalog()
            for record in catalog.family(MarkFamily(args.family)):
                note = f"\t{record.series_note}" if record.series_note else ""
                print(f"{render_mark_string(record)}{note}")
            return 0

        if args.command == "protos":
            directory = Path(args.directory)
            if not directory.is_dir():
                print(f"protos: {directory} is not a directory", file=sys.stderr)
                return 2
            for path in sorted(directory.glob("*.podo")):
                try:
                    model, stub = decode_capsule(path.read_bytes())
                except KernelError as exc:
                    print(f"{path.name}: unreadable ({exc.name})", file=sys.stderr)
                    continue
                counts = ", ".join(
                    f"{name} {len(items)}"
                    for name, items in model.entity_lists().items()
                    if items
                )
                h = sum(g.count for g in model.axis_groups_h)
                v = sum(g.count for g in model.axis_groups_v)
                print(
                    f"{path.name}: {model.kind.value} plan, {h}x{v} axes"
                    + (f", {counts}" if counts else "")
                    + f", stub {len(stub.primitives)} primitives"
                )
            return 0
    except FileNotFoundError as exc:
        print(f"file not found: {exc}", file=sys.stderr)
        return 2
    except KernelError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1
    return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
