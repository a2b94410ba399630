#!/usr/bin/env python3
"""
Design Files
Lezen en schrijven van ontwerpbestanden (.spec) en eisenbestanden (.req).

Formaat: secties als "[naam]", regels "key = value", "#" begint commentaar.
Sleutels zijn hoofdlettergevoelig; onbekende sleutels zijn een fout.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from calibration_table import DEFAULT_THREAD, GEOMETRY_TAGS, get_fabric, get_thread
from design_solver import FABRIC_CONSTRAINTS, FORMABILITY_INTENTS, Requirements
from errors import ExoFabricError, GeometryError, InvalidQuery, ParseError, UnknownKey
from stitch_geometry import EmbroideryConfig, Region

logger = logging.getLogger(__name__)

DESIGN_SECTIONS = ("design", "region", "pattern")

DESIGN_KEYS = ("name", "fabric", "layers", "thread", "thread_side")
REGION_KEYS = {
    "rectangle": ("shape", "width_mm", "height_mm", "origin"),
    "circle": ("shape", "radius_mm", "center"),
    "polygon": ("shape", "vertices"),
}
PATTERN_KEYS = ("primitive", "config", "line_spacing_mm", "stitch_spacing_mm", "angle_deg",
                "waviness_amp_mm", "waviness_period_mm")
REQUIREMENT_KEYS = ("geometry", "fabric", "max_layers", "min_compression_n", "min_compression_at_mm",
                    "max_tensile_n", "max_tensile_at_mm", "formability", "mold_diameter_mm")

DEFAULTS = {
    "design.layers": "1",
    "design.thread": DEFAULT_THREAD,
    "design.thread_side": "back",
    "region.origin": "0,0",
    "region.center": "0,0",
    "pattern.angle_deg": "0",
    "pattern.waviness_amp_mm": "1.5",
    "pattern.waviness_period_mm": "10",
}


class _Entry:
    __slots__ = ("value", "line")

    def __init__(self, value, line):
        self.value = value
        self.line = line


def _read_sections(text, allowed):
    """
    Splits tekst in secties

    Returns:
        (sections, section_lines): {sectie: {key: _Entry}} en {sectie: regelnummer}
    """
    sections = {}
    section_lines = {}
    current = None
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError(f"malformed section header {line!r}", line=line_number)
            current = line[1:-1].strip()
            if current not in allowed:
                raise UnknownKey(f"unknown section [{current}]", line=line_number)
            if current in sections:
                raise ParseError(f"duplicate section [{current}]", line=line_number)
            sections[current] = {}
            section_lines[current] = line_number
            continue
        if current is None:
            raise ParseError("entry outside of a section", line=line_number)
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"expected 'key = value', got {line!r}", line=line_number)
        key = key.strip()
        if key in sections[current]:
            raise ParseError(f"duplicate key {key!r} in [{current}]", line=line_number)
        sections[current][key] = _Entry(value.strip(), line_number)
    return sections, section_lines


def _format_number(value):
    value = float(value)
    if value.is_integer():
        return str(int(value))
    return repr(value)


def _format_point(point):
    x, y = point
    return f"{_format_number(x)},{_format_number(y)}"


class _SectionReader:
    """Typeconversie met regelnummers en registratie van defaults"""

    def __init__(self, name, entries, line, allowed):
        self.name = name
        self.entries = entries
        self.line = line
        self.defaulted = set()
        for key, entry in entries.items():
            if key not in allowed:
                raise UnknownKey(f"unknown key {key!r} in [{name}]", line=entry.line)

    def has(self, key):
        return key in self.entries

    def line_of(self, key):
        entry = self.entries.get(key)
        return entry.line if entry else self.line

    def text(self, key, required=True):
        if key in self.entries:
            return self.entries[key].value
        default = DEFAULTS.get(f"{self.name}.{key}")
        if default is not None:
            self.defaulted.add(f"{self.name}.{key}")
            return default
        if required:
            raise ParseError(f"missing required key {key!r} in [{self.name}]", line=self.line)
        return None

    def number(self, key, required=True, positive=False, minimum=None):
        text = self.text(key, required)
        if text is None:
            return None
        try:
            value = float(text)
        except ValueError:
            raise ParseError(f"{key} must be a number, got {text!r}", line=self.line_of(key)) from None
        if not math.isfinite(value):
            raise ParseError(f"{key} must be finite", line=self.line_of(key))
        if positive and value <= 0.0:
            raise ParseError(f"{key} must be positive, got {text}", line=self.line_of(key))
        if minimum is not None and value < minimum:
            raise ParseError(f"{key} must be >= {minimum:g}, got {text}", line=self.line_of(key))
        return value

    def integer(self, key, required=True):
        text = self.text(key, required)
        if text is None:
            return None
        try:
            return int(text)
        except ValueError:
            raise ParseError(f"{key} must be an integer, got {text!r}", line=self.line_of(key)) from None

    def point(self, key):
        text = self.text(key)
        try:
            x, y = (float(part) for part in text.split(","))
        except ValueError:
            raise ParseError(f"{key} must be 'x,y', got {text!r}", line=self.line_of(key)) from None
        return (x, y)

    def points(self, key):
        text = self.text(key)
        vertices = []
        for chunk in text.split(";"):
            if not chunk.strip():
                continue
            try:
                x, y = (float(part) for part in chunk.split(","))
            except ValueError:
                raise ParseError(f"{key} entries must be 'x,y', got {chunk.strip()!r}",
                                 line=self.line_of(key)) from None
            vertices.append((x, y))
        return vertices

    def choice(self, key, options, required=True):
        value = self.text(key, required)
        if value is not None and value not in options:
            raise ParseError(f"{key} must be one of {', '.join(options)}, got {value!r}",
                             line=self.line_of(key))
        return value


# Ontwerpbestand

@dataclass(frozen=True)
class DesignSpec:
    name: str
    fabric: str
    layers: int
    thread: str
    thread_side: str
    region: Region
    config: EmbroideryConfig
    config_label: str = None
    defaulted: frozenset = field(default_factory=frozenset)

    @property
    def fabric_spec(self):
        return get_fabric(self.fabric)

    @property
    def thread_spec(self):
        return get_thread(self.thread).on_side(self.thread_side)


def parse_design_spec(text):
    """
    Lees een ontwerpbestand

    Args:
        text: Inhoud met secties [design], [region] en [pattern]

    Returns:
        DesignSpec met defaults ingevuld en geregistreerd in `defaulted`
    """
    sections, section_lines = _read_sections(text, DESIGN_SECTIONS)
    for name in DESIGN_SECTIONS:
        if name not in sections:
            raise ParseError(f"missing [{name}] section")

    design = _SectionReader("design", sections["design"], section_lines["design"], DESIGN_KEYS)
    name = design.text("name")
    fabric = design.text("fabric")
    try:
        get_fabric(fabric)
    except ExoFabricError as e:
        raise type(e)(f"line {design.line_of('fabric')}: {e}") from None
    layers = design.integer("layers")
    if not 1 <= layers <= 4:
        raise ParseError(f"layers must be within 1..4, got {layers}", line=design.line_of("layers"))
    thread = design.text("thread")
    try:
        get_thread(thread)
    except ExoFabricError as e:
        raise type(e)(f"line {design.line_of('thread')}: {e}") from None
    thread_side = design.choice("thread_side", ("back", "front"))

    region_entries = sections["region"]
    shape_entry = region_entries.get("shape")
    if shape_entry is None:
        raise ParseError("missing required key 'shape' in [region]", line=section_lines["region"])
    if shape_entry.value not in REGION_KEYS:
        raise ParseError(f"shape must be one of {', '.join(REGION_KEYS)}, got {shape_entry.value!r}",
                         line=shape_entry.line)
    shape = shape_entry.value
    region_reader = _SectionReader("region", region_entries, section_lines["region"], REGION_KEYS[shape])
    try:
        if shape == "rectangle":
            region = Region.rectangle(region_reader.number("width_mm", positive=True),
                                      region_reader.number("height_mm", positive=True),
                                      region_reader.point("origin"))
        elif shape == "circle":
            region = Region.circle(region_reader.number("radius_mm", positive=True),
                                   region_reader.point("center"))
        else:
            region = Region.polygon(region_reader.points("vertices"))
    except GeometryError as e:
        raise ParseError(str(e), line=shape_entry.line) from None

    pattern = _SectionReader("pattern", sections["pattern"], section_lines["pattern"], PATTERN_KEYS)
    primitive = pattern.choice("primitive", ("linear", "radial", "concentric"))
    config_label = pattern.text("config", required=False)
    try:
        if config_label is not None:
            if pattern.has("line_spacing_mm") or pattern.has("stitch_spacing_mm"):
                raise ParseError("give either config or line_spacing_mm/stitch_spacing_mm, not both",
                                 line=pattern.line_of("config"))
            base = EmbroideryConfig.from_config_id(config_label, primitive=primitive)
            line_spacing, stitch_spacing = base.line_spacing, base.stitch_spacing
        else:
            line_spacing = pattern.number("line_spacing_mm", positive=True)
            stitch_spacing = pattern.number("stitch_spacing_mm", positive=True)
        config = EmbroideryConfig(
            primitive=primitive,
            line_spacing=line_spacing,
            stitch_spacing=stitch_spacing,
            angle=pattern.number("angle_deg"),
            waviness_amplitude=pattern.number("waviness_amp_mm", minimum=0.0),
            waviness_period=pattern.number("waviness_period_mm", positive=True),
        )
    except GeometryError as e:
        raise ParseError(str(e), line=section_lines["pattern"]) from None

    defaulted = frozenset(design.defaulted | region_reader.defaulted | pattern.defaulted)
    spec = DesignSpec(name, fabric, layers, thread, thread_side, region, config,
                      config_label, defaulted)
    logger.debug(f"✓ Ontwerp {name!r} gelezen ({config.config_id}, {shape})")
    return spec


def print_design_spec(spec):
    """Schrijf een DesignSpec terug als tekst; defaults worden weggelaten"""

    def emit(lines, section, key, value):
        if f"{section}.{key}" not in spec.defaulted:
            lines.append(f"{key} = {value}")

    lines = ["[design]", f"name = {spec.name}", f"fabric = {spec.fabric}"]
    emit(lines, "design", "layers", spec.layers)
    emit(lines, "design", "thread", spec.thread)
    emit(lines, "design", "thread_side", spec.thread_side)

    region = spec.region
    lines += ["", "[region]", f"shape = {region.kind}"]
    if region.kind == "rectangle":
        lines.append(f"width_mm = {_format_number(region.width)}")
        lines.append(f"height_mm = {_format_number(region.height)}")
        emit(lines, "region", "origin", _format_point(region.origin))
    elif region.kind == "circle":
        lines.append(f"radius_mm = {_format_number(region.radius)}")
        emit(lines, "region", "center", _format_point(region.center))
    else:
        lines.append("vertices = " + "; ".join(_format_point(v) for v in region.vertices))

    config = spec.config
    lines += ["", "[pattern]", f"primitive = {config.primitive}"]
    if spec.config_label is not None:
        lines.append(f"config = {spec.config_label}")
    else:
        lines.append(f"line_spacing_mm = {_format_number(config.line_spacing)}")
        lines.append(f"stitch_spacing_mm = {_format_number(config.stitch_spacing)}")
    emit(lines, "pattern", "angle_deg", _format_number(config.angle))
    emit(lines, "pattern", "waviness_amp_mm", _format_number(config.waviness_amplitude))
    emit(lines, "pattern", "waviness_period_mm", _format_number(config.waviness_period))
    return "\n".join(lines) + "\n"


# Eisenbestand

def parse_requirements(text):
    """
    Lees een eisenbestand met sectie [requirements]

    Returns:
        Requirements
    """
    sections, section_lines = _read_sections(text, ("requirements",))
    if "requirements" not in sections:
        raise ParseError("missing [requirements] section")
    reader = _SectionReader("requirements", sections["requirements"], section_lines["requirements"],
                            REQUIREMENT_KEYS)

    geometry = reader.choice("geometry", GEOMETRY_TAGS, required=False) or "swatch-100"
    fabric = reader.text("fabric", required=False) or "any"
    if fabric not in FABRIC_CONSTRAINTS:
        try:
            get_fabric(fabric)
        except ExoFabricError as e:
            raise type(e)(f"line {reader.line_of('fabric')}: {e}") from None
    max_layers = reader.integer("max_layers", required=False)
    if max_layers is None:
        max_layers = 4

    def pair(prefix):
        force = reader.number(f"{prefix}_n", required=False, minimum=0.0)
        at = reader.number(f"{prefix}_at_mm", required=False, minimum=0.0)
        if (force is None) != (at is None):
            raise ParseError(f"{prefix}_n and {prefix}_at_mm must be given together",
                             line=reader.line_of(f"{prefix}_n" if force is not None else f"{prefix}_at_mm"))
        return None if force is None else (force, at)

    min_compression = pair("min_compression")
    max_tensile = pair("max_tensile")
    formability = reader.choice("formability", FORMABILITY_INTENTS, required=False) or "none"
    mold = reader.number("mold_diameter_mm", required=False, positive=True)

    try:
        return Requirements(
            fabric_constraint=fabric,
            min_compression=min_compression,
            max_tensile=max_tensile,
            formability=formability,
            mold_diameter=mold,
            geometry_tag=geometry,
            max_layers=max_layers,
        )
    except InvalidQuery as e:
        raise ParseError(str(e), line=section_lines["requirements"]) from None


def print_requirements(req):
    lines = ["[requirements]", f"geometry = {req.geometry_tag}", f"fabric = {req.fabric_constraint}",
             f"max_layers = {req.max_layers}"]
    if req.min_compression is not None:
        lines.append(f"min_compression_n = {_format_number(req.min_compression[0])}")
        lines.append(f"min_compression_at_mm = {_format_number(req.min_compression[1])}")
    if req.max_tensile is not None:
        lines.append(f"max_tensile_n = {_format_number(req.max_tensile[0])}")
        lines.append(f"max_tensile_at_mm = {_format_number(req.max_tensile[1])}")
    lines.append(f"formability = {req.formability}")
    if req.mold_diameter is not None:
        lines.append(f"mold_diameter_mm = {_format_number(req.mold_diameter)}")
    return "\n".join(lines) + "\n"


def load_design_spec(path):
    return parse_design_spec(Path(path).read_text(encoding="utf-8"))


def load_requirements(path):
    return parse_requirements(Path(path).read_text(encoding="utf-8"))


# Test functie
if __name__ == "__main__":
    print("Design Files Test")
    print("=" * 50)

    cookbook = Path(__file__).with_name("cookbook")
    for spec_path in sorted(cookbook.glob("*.spec")):
        spec = load_design_spec(spec_path)
        print(f"  {spec_path.name:16s} {spec.config.config_id:9s} {spec.fabric} x{spec.layers}")

    print("\n✓ Test voltooid")
