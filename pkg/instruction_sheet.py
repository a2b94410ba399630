#!/usr/bin/env python3
"""
Instruction Sheet
Vorm-instructies bij een ontwerp: stof en draad, stapelen van lagen,
verwarm/koel protocol en draadzijde.
"""

import logging
from dataclasses import dataclass

from calibration_table import estimate_fabrication_time
from stitch_geometry import compile_plan, validate_design

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InstructionSheet:
    design_name: str
    fabric_summary: str
    thread_summary: str
    pattern_summary: str
    thread_direction: str
    layer_note: str
    protocol: str
    tg_note: str
    side_note: str
    stitch_count: int
    minutes: float
    diagnostics: tuple = ()

    def render(self):
        lines = [
            f"ExoFabric instructions: {self.design_name}",
            "=" * 50,
            f"Fabric:    {self.fabric_summary}",
            f"Thread:    {self.thread_summary}",
            f"Pattern:   {self.pattern_summary}",
            f"Direction: {self.thread_direction}",
            f"Stitches:  {self.stitch_count} per layer",
            f"Time:      about {self.minutes:.1f} min of embroidery",
            "",
            "Fabrication",
            f"  1. {self.side_note}",
            f"  2. {self.layer_note}",
            "",
            "Molding",
            f"  {self.tg_note}",
            f"  Protocol: {self.protocol}",
        ]
        if self.diagnostics:
            lines += ["", "Checks"]
            lines += [f"  {diagnostic}" for diagnostic in self.diagnostics]
        return "\n".join(lines) + "\n"


def _direction(config):
    if config.primitive == "linear":
        return (f"straight rows at {config.angle:g}° to the x-axis; "
                "align the rows with the bending direction")
    wave = f"wavy ({config.waviness_amplitude:g} mm amplitude, {config.waviness_period:g} mm period)"
    if config.waviness_amplitude == 0:
        wave = "straight"
    if config.primitive == "radial":
        return f"{wave} radial spokes from the center for doubly-curved molding"
    return f"{wave} concentric rings for doubly-curved molding"


def build_instruction_sheet(spec, plan=None, model=None):
    """
    Stel het instructieblad samen

    Args:
        spec: DesignSpec
        plan: Reeds gecompileerd StitchPlan (anders wordt het hier gecompileerd)
        model: TimeModel voor de tijdschatting (default: meegeleverde ankers)

    Returns:
        InstructionSheet
    """
    fabric = spec.fabric_spec
    thread = spec.thread_spec
    config = spec.config
    if plan is None:
        plan = compile_plan(spec.region, config, spec.layers)

    if spec.layers == 1:
        layer_note = "embroider 1 copy (single layer)"
    else:
        layer_note = (f"embroider {spec.layers} copies and stack; "
                      "mold the stack as one piece")
    if thread.side == "back":
        side_note = "load the thermoplastic thread in the bobbin so it lies on the back side of the fabric"
    else:
        side_note = ("thermoplastic thread on the front side; expect tension imbalance, "
                     "the back side is recommended")

    sheet = InstructionSheet(
        design_name=spec.name,
        fabric_summary=f"{fabric.name} ({fabric.stretch}, {fabric.gsm:g} GSM, {fabric.composition})",
        thread_summary=f"{thread.name} (Tex {thread.tex:g} {thread.material})",
        pattern_summary=(f"{config.primitive} {config.config_id} "
                         f"(line {config.line_spacing:.3g} mm, stitch {config.stitch_spacing:.3g} mm)"),
        thread_direction=_direction(config),
        layer_note=layer_note,
        protocol=thread.molding.describe(),
        tg_note=(f"Thermoplastic Tg {thread.tg_low:g}–{thread.tg_high:g} °C: "
                 "it softens above this range and locks its shape below it"),
        side_note=side_note,
        stitch_count=plan.stitch_count,
        minutes=estimate_fabrication_time(plan, model),
        diagnostics=tuple(validate_design(config, thread, fabric)),
    )
    logger.debug(f"✓ Instructieblad voor {spec.name!r}")
    return sheet


def render_instructions(spec, plan=None, model=None):
    return build_instruction_sheet(spec, plan, model).render()


# Test functie
if __name__ == "__main__":
    from pathlib import Path

    from design_files import load_design_spec

    print("Instruction Sheet Test")
    print("=" * 50)
    spec = load_design_spec(Path(__file__).with_name("cookbook") / "splint.spec")
    print(render_instructions(spec))
