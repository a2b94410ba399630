#!/usr/bin/env python3
"""
ExoFabric Compiler
Command-line front end: ontwerpbestand -> DST + SVG + instructieblad,
eigenschappen voorspellen, omgekeerd ontwerpen en tijd schatten.

Exit status: 0 succes, 1 domeinfout, 2 gebruiksfout (argumenten, ontbrekende bestanden).
Alle meldingen gaan naar stderr; stdout bevat alleen het gevraagde resultaat.
"""

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager
from pathlib import Path

from calibration_table import (
    GEOMETRY_TAGS,
    MODES,
    PropertyQuery,
    classify_formability,
    default_table,
    estimate_fabrication_time,
    load_calibration_file,
    merge_tables,
    predict_compression,
    predict_tensile,
    time_model,
)
from design_files import load_design_spec, load_requirements
from design_solver import feasibility_report, solve
from dst_codec import write_dst
from errors import ExoFabricError
from instruction_sheet import render_instructions
from stitch_geometry import compile_plan, validate_design
from svg_preview import write_svg

logger = logging.getLogger("exofab_compiler")

VERSION = "1.0.0"
CALIBRATION_ENV = "EXOFAB_CALIBRATION"

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Ongeldige aanroep: ontbrekend invoerbestand of uitvoerpad"""


class ExoFabricCompiler:
    """Verbindt ontwerpbestanden met geometrie, kalibratie, solver en uitvoer"""

    def __init__(self, calibration_path=None, stdout=None):
        """
        Initialiseer compiler

        Args:
            calibration_path: Extra kalibratietabel die over de meegeleverde wordt gelegd
            stdout: Stroom voor resultaten (default sys.stdout)
        """
        self.stdout = stdout or sys.stdout
        self.table = default_table()
        if calibration_path:
            with _input_context(calibration_path):
                extra = load_calibration_file(_existing(calibration_path))
            self.table = merge_tables(self.table, extra)
            logger.info(f"✓ Externe kalibratie geladen: {calibration_path}")
        self.model = time_model(self.table)

    def emit(self, text):
        self.stdout.write(text if text.endswith("\n") else text + "\n")

    def _compile(self, spec_path):
        with _input_context(spec_path):
            spec = load_design_spec(_existing(spec_path))
            diagnostics = validate_design(spec.config, spec.thread_spec, spec.fabric_spec)
            for diagnostic in diagnostics:
                if diagnostic.severity == "error":
                    logger.error(f"✗ {spec_path}: {diagnostic.message}")
                else:
                    logger.warning(f"⚠ {spec_path}: {diagnostic.message}")
            if any(d.severity == "error" for d in diagnostics):
                raise ExoFabricError("design fails validation")
            plan = compile_plan(spec.region, spec.config, spec.layers)
        return spec, plan

    # Subcommando's

    def generate(self, spec_path, out_dir=None, dst=None, svg=None, instructions=None):
        """Schrijf DST (+ SVG + instructieblad) voor een ontwerp"""
        if out_dir is None and dst is None:
            raise UsageError("generate needs --out-dir or --dst")
        targets = {"dst": dst, "svg": svg, "instructions": instructions}
        spec_name = Path(spec_path).stem
        if out_dir is not None:
            out_dir = Path(out_dir)
            out_dir.mkdir(parents=True, exist_ok=True)
            targets["dst"] = targets["dst"] or out_dir / f"{spec_name}.dst"
            targets["svg"] = targets["svg"] or out_dir / f"{spec_name}.svg"
            targets["instructions"] = targets["instructions"] or out_dir / f"{spec_name}.txt"
        for path in targets.values():
            if path is not None:
                _writable(path)

        spec, plan = self._compile(spec_path)
        Path(targets["dst"]).write_bytes(write_dst(plan, spec.name))
        logger.info(f"✓ DST geschreven: {targets['dst']} ({plan.stitch_count} steken per laag)")
        if targets["svg"] is not None:
            Path(targets["svg"]).write_text(write_svg(plan), encoding="utf-8")
            logger.info(f"✓ SVG geschreven: {targets['svg']}")
        if targets["instructions"] is not None:
            text = render_instructions(spec, plan, self.model)
            Path(targets["instructions"]).write_text(text, encoding="utf-8")
            logger.info(f"✓ Instructies geschreven: {targets['instructions']}")
        return EXIT_OK

    def predict(self, config, fabric, layers, displacement, mode="compression",
                geometry="swatch-100", extrapolate=False, layer_scaling=False, mold=None):
        """Voorspelde kracht (en optioneel vormbaarheid) naar stdout"""
        query = PropertyQuery(config, fabric, layers, displacement, mode, geometry)
        if mode == "tensile":
            prediction = predict_tensile(query, self.table, extrapolate, layer_scaling)
        else:
            prediction = predict_compression(query, self.table, extrapolate)
        line = str(prediction)
        if prediction.derived:
            line += " (derived)"
        self.emit(line)
        if mold is not None:
            result = classify_formability(config, fabric, mold, layers)
            self.emit(f"formability {result.classification}")
            for warning in result.warnings:
                logger.warning(f"⚠ {warning}")
        return EXIT_OK

    def solve(self, requirements_path, as_json=False, workers=1):
        """Haalbaarheidsrapport of JSON naar stdout; ook onhaalbaar is succes"""
        with _input_context(requirements_path):
            req = load_requirements(_existing(requirements_path))
            result = solve(req, self.table, workers=workers)
        if as_json:
            self.emit(json.dumps(result.to_dict(), indent=2, sort_keys=True))
        else:
            self.emit(feasibility_report(result))
        return EXIT_OK

    def preview(self, spec_path, svg):
        _writable(svg)
        _, plan = self._compile(spec_path)
        Path(svg).write_text(write_svg(plan), encoding="utf-8")
        logger.info(f"✓ SVG geschreven: {svg}")
        return EXIT_OK

    def time(self, spec_path):
        _, plan = self._compile(spec_path)
        minutes = estimate_fabrication_time(plan, self.model)
        self.emit(f"{minutes:.1f} min")
        return EXIT_OK

    def instructions(self, spec_path, output=None):
        if output is not None:
            _writable(output)
        spec, plan = self._compile(spec_path)
        text = render_instructions(spec, plan, self.model)
        if output is None:
            self.emit(text)
        else:
            Path(output).write_text(text, encoding="utf-8")
            logger.info(f"✓ Instructies geschreven: {output}")
        return EXIT_OK


@contextmanager
def _input_context(path):
    """Koppel domeinfouten aan het invoerbestand waar ze vandaan komen"""
    try:
        yield
    except ExoFabricError as e:
        if e.path is None:
            e.path = str(path)
        raise


def _existing(path):
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"input file not found: {path}")
    return path


def _writable(path):
    parent = Path(path).parent
    if not parent.is_dir():
        raise UsageError(f"output directory does not exist: {parent}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="exofab_compiler",
        description="Compile ExoFabric designs into embroidery files and predict their properties",
    )
    parser.add_argument("--version", action="store_true", help="print tool and calibration versions")
    parser.add_argument("--calibration", metavar="PATH",
                        help=f"extra calibration table merged over the bundled one (env {CALIBRATION_ENV})")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug output on stderr")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    generate = commands.add_parser("generate", help="write DST, SVG and instruction sheet")
    generate.add_argument("spec")
    generate.add_argument("--out-dir", metavar="DIR")
    generate.add_argument("--dst", metavar="PATH")
    generate.add_argument("--svg", metavar="PATH")
    generate.add_argument("--instructions", metavar="PATH")

    predict = commands.add_parser("predict", help="predict force for one configuration")
    predict.add_argument("--config", required=True, help="configuration id, e.g. L0.66_S1")
    predict.add_argument("--fabric", required=True)
    predict.add_argument("--layers", type=int, default=1)
    predict.add_argument("--displacement", type=float, required=True, help="displacement in mm")
    predict.add_argument("--mode", choices=MODES, default="compression")
    predict.add_argument("--geometry", choices=GEOMETRY_TAGS, default="swatch-100")
    predict.add_argument("--extrapolate", action="store_true",
                         help="clamp beyond the last knot instead of failing")
    predict.add_argument("--layer-scaling", action="store_true",
                         help="scale single-layer tensile data to more layers")
    predict.add_argument("--mold", type=float, metavar="MM", help="also classify formability")

    solve_cmd = commands.add_parser("solve", help="find minimal designs for a requirements file")
    solve_cmd.add_argument("requirements")
    solve_cmd.add_argument("--json", action="store_true", help="machine-readable output")
    solve_cmd.add_argument("--workers", type=int, default=1)

    preview = commands.add_parser("preview", help="write an SVG preview")
    preview.add_argument("spec")
    preview.add_argument("--svg", required=True, metavar="PATH")

    time_cmd = commands.add_parser("time", help="estimated embroidery minutes")
    time_cmd.add_argument("spec")

    instructions = commands.add_parser("instructions", help="molding instruction sheet")
    instructions.add_argument("spec")
    instructions.add_argument("-o", "--output", metavar="PATH")
    return parser


def configure_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, format="%(message)s", force=True)


def run(args, stdout=None):
    """Voer een geparste aanroep uit en geef de exit status terug"""
    compiler = ExoFabricCompiler(args.calibration or os.environ.get(CALIBRATION_ENV), stdout)
    if args.command == "generate":
        return compiler.generate(args.spec, args.out_dir, args.dst, args.svg, args.instructions)
    if args.command == "predict":
        return compiler.predict(args.config, args.fabric, args.layers, args.displacement, args.mode,
                                args.geometry, args.extrapolate, args.layer_scaling, args.mold)
    if args.command == "solve":
        return compiler.solve(args.requirements, args.json, max(1, args.workers))
    if args.command == "preview":
        return compiler.preview(args.spec, args.svg)
    if args.command == "time":
        return compiler.time(args.spec)
    return compiler.instructions(args.spec, args.output)


def main(argv=None, stdout=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    configure_logging(args.verbose, args.quiet)
    out = stdout or sys.stdout
    if args.version:
        try:
            table_version = default_table().version
        except ExoFabricError as e:
            table_version = f"unreadable ({e})"
        out.write(f"exofab_compiler {VERSION} (calibration table {table_version})\n")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        logger.error("✗ no command given")
        return EXIT_USAGE

    try:
        return run(args, out)
    except UsageError as e:
        logger.error(f"✗ {e}")
        return EXIT_USAGE
    except ExoFabricError as e:
        where = f"{e.path}: " if e.path else ""
        logger.error(f"✗ {where}{type(e).__name__}: {e}")
        return EXIT_DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
