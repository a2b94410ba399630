#!/usr/bin/env python3
"""
Calibration Table
Meetdata van de ExoFabric karakterisering als kalibratietabellen, plus
voorspellers voor compressie- en trekkracht, vormbaarheid, fabricagetijd
en ontwerprichtlijnen per eigenschap.

Tabellen zijn na het laden onveranderlijk; alle voorspellers zijn puur.
"""

import csv
import logging
import math
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from pathlib import Path
from typing import NamedTuple

import numpy as np

from errors import (
    CalibrationParseError,
    InsufficientCalibration,
    InvalidConfig,
    InvalidQuery,
    InvariantViolation,
    NonStretchFabric,
    UnknownAffordance,
    UnknownConfig,
    UnknownFabric,
    UnknownThread,
    UnsupportedMold,
)
from stitch_geometry import (
    EmbroideryConfig,
    Region,
    compile_plan,
    format_config_id,
    parse_config_id,
)

logger = logging.getLogger(__name__)

DEFAULT_TABLE_PATH = Path(__file__).with_name("default_calibration.csv")

GEOMETRY_TAGS = ("swatch-100", "splint", "bra-dome")
MODES = ("compression", "tensile")
PROVENANCES = ("paper", "derived", "external")
BOUNDS = ("exact", "upper")
COLUMNS = ("geometry_tag", "config", "fabric", "layers", "mode",
           "displacement_mm", "force_n", "provenance")
OPTIONAL_COLUMNS = ("bound",)

MAX_LAYERS = 4
MOLD_DIAMETERS = (10.0, 20.0, 30.0)

# Referentie spalk (commercieel product), alleen ter documentatie: deze
# waarden zijn gemeten bij 45° buiging en niet vergelijkbaar met de vlakke
# buigtest van de kalibratietabel.
SPLINT_REFERENCE_FLEXED_N = 13.7
SPLINT_REFERENCE_EXTENDED_N = 6.4
SPLINT_AFTER_WASH_N = 7.5


# Materialen

@dataclass(frozen=True)
class FabricSpec:
    name: str
    stretch: str  # 'non-stretch' | 'stretch'
    gsm: float
    composition: str
    primary: bool = False

    @property
    def is_stretch(self):
        return self.stretch == "stretch"


@dataclass(frozen=True)
class MoldingProtocol:
    """Warmte- en koelstappen voor het vormen boven Tg"""

    heat_temp_c: float = 70.0
    heat_seconds: float = 10.0
    cool_seconds: float = 20.0
    cool_temp_c: float = 22.0

    def describe(self):
        return (f"heat to {self.heat_temp_c:g} °C for {self.heat_seconds:g} s; "
                f"cool {self.cool_seconds:g} s to {self.cool_temp_c:g} °C")


@dataclass(frozen=True)
class ThreadSpec:
    name: str
    tex: float
    material: str
    tg_low: float = 47.0
    tg_high: float = 57.0
    side: str = "back"
    molding: MoldingProtocol = field(default_factory=MoldingProtocol)

    def __post_init__(self):
        if not self.tex > 0:
            raise InvalidConfig(f"thread tex must be positive, got {self.tex}")
        if not self.tg_low < self.tg_high:
            raise InvalidConfig("thread Tg range must satisfy tg_low < tg_high")
        if self.side not in ("front", "back"):
            raise InvalidConfig(f"thread side must be front or back, got {self.side!r}")

    def on_side(self, side):
        return replace(self, side=side)


FABRICS = {
    fabric.name: fabric
    for fabric in (
        FabricSpec("nonstretch-336", "non-stretch", 336, "98% cotton, 2% elastane twill", primary=True),
        FabricSpec("nonstretch-167", "non-stretch", 167, "100% cotton poplin"),
        FabricSpec("stretch-390", "stretch", 390, "62% rayon, 32% nylon, 6% spandex knit", primary=True),
        FabricSpec("stretch-189", "stretch", 189, "95% polyester, 5% spandex jersey"),
    )
}

THREADS = {
    thread.name: thread
    for thread in (
        ThreadSpec("tex35-nylon", 35, "thermoplastic nylon monofilament"),
        ThreadSpec("tex45-nylon", 45, "thermoplastic nylon monofilament"),
        ThreadSpec("tex50-nylon", 50, "thermoplastic nylon monofilament"),
        ThreadSpec("tex60-nylon", 60, "thermoplastic nylon monofilament"),
        ThreadSpec("tex80-nylon", 80, "thermoplastic nylon monofilament"),
    )
}

DEFAULT_THREAD = "tex60-nylon"


def get_fabric(name):
    try:
        return FABRICS[name]
    except KeyError:
        raise UnknownFabric(f"unknown fabric {name!r}, expected one of {sorted(FABRICS)}") from None


def get_thread(name):
    try:
        return THREADS[name]
    except KeyError:
        raise UnknownThread(f"unknown thread {name!r}, expected one of {sorted(THREADS)}") from None


def primary_fabrics():
    return [fabric for fabric in FABRICS.values() if fabric.primary]


# Tabel

class Knot(NamedTuple):
    displacement: float
    force: float
    provenance: str = "paper"
    bound: str = "exact"


@dataclass(frozen=True)
class CalibrationSeries:
    """Kracht-verplaatsing knopen voor één (geometrie, config, stof, lagen, modus)"""

    geometry_tag: str
    config_id: str
    fabric: str
    layers: int
    mode: str
    knots: tuple

    @property
    def key(self):
        return (self.geometry_tag, self.mode, self.config_id, self.fabric, self.layers)

    @property
    def displacements(self):
        return np.array([k.displacement for k in self.knots], dtype=float)

    @property
    def forces(self):
        return np.array([k.force for k in self.knots], dtype=float)

    @property
    def max_displacement(self):
        return self.knots[-1].displacement

    def interpolate(self, displacement, extrapolate=False):
        """
        Stuksgewijs lineaire interpolatie door de knopen

        Args:
            displacement: Verplaatsing in mm (>= 0)
            extrapolate: Voorbij de laatste knoop vlak doortrekken i.p.v. fout

        Returns:
            (kracht in N, upper_bound vlag)
        """
        last = self.max_displacement
        if displacement > last:
            if not extrapolate:
                raise InsufficientCalibration(
                    f"{displacement:g} mm exceeds last calibrated knot at {last:g} mm "
                    f"for {self.config_id} {self.fabric} x{self.layers} ({self.geometry_tag} {self.mode})"
                )
            logger.debug(f"⚠ Extrapolatie: {displacement:g} mm afgekapt op {last:g} mm")
            knot = self.knots[-1]
            return knot.force, knot.bound == "upper"

        force = float(np.interp(displacement, self.displacements, self.forces))
        index = int(np.searchsorted(self.displacements, displacement, side="left"))
        return force, self.knots[index].bound == "upper"


def _build_series(key, knots):
    """Sorteer, voeg het nulpunt toe en controleer monotonie"""
    geometry_tag, mode, config_id, fabric, layers = key
    label = f"{config_id} {fabric} x{layers} ({geometry_tag} {mode})"
    ordered = sorted(knots, key=lambda k: k.displacement)

    if not ordered or ordered[0].displacement > 0.0:
        ordered.insert(0, Knot(0.0, 0.0, "derived"))
    elif ordered[0].force != 0.0:
        raise InvariantViolation(f"{label}: knot at 0 mm must have 0 N, got {ordered[0].force:g} N")

    for prev, knot in zip(ordered, ordered[1:]):
        if knot.displacement <= prev.displacement:
            raise InvariantViolation(f"{label}: duplicate knot at {knot.displacement:g} mm")
        if knot.force < prev.force:
            raise InvariantViolation(
                f"{label}: force decreases from {prev.force:g} N to {knot.force:g} N "
                f"at {knot.displacement:g} mm"
            )
    return CalibrationSeries(geometry_tag, config_id, fabric, layers, mode, tuple(ordered))


@dataclass(frozen=True)
class CalibrationTable:
    series: tuple
    time_anchors: tuple = ()
    version: str = "unversioned"
    sources: tuple = ()

    @cached_property
    def _index(self):
        return {entry.key: entry for entry in self.series}

    def __len__(self):
        return len(self.series)

    def __iter__(self):
        return iter(self.series)

    def get(self, geometry_tag, mode, config_id, fabric, layers):
        return self._index.get((geometry_tag, mode, config_id, fabric, layers))

    def layer_series(self, geometry_tag, mode, config_id, fabric):
        """Alle gemeten laagaantallen voor deze combinatie: {layers: series}"""
        found = {}
        for (tag, m, cid, fab, layers), entry in self._index.items():
            if (tag, m, cid, fab) == (geometry_tag, mode, config_id, fabric):
                found[layers] = entry
        return dict(sorted(found.items()))

    def knot_count(self, provenance=None):
        return sum(1 for entry in self.series for knot in entry.knots
                   if provenance is None or knot.provenance == provenance)


def _canonical_config(config_id):
    return format_config_id(*parse_config_id(config_id))


def load_calibration(text, source="<string>"):
    """
    Lees een kalibratietabel (comma-separated, header verplicht)

    Regels die met '#' beginnen zijn commentaar; '# version: X' zet de
    tabelversie en '# time_anchor: <config> <minuten>' een tijdanker.

    Args:
        text: Inhoud van het bestand
        source: Naam voor foutmeldingen en logging

    Returns:
        CalibrationTable
    """
    version = "unversioned"
    anchors = []
    rows = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            directive, _, value = stripped[1:].partition(":")
            directive = directive.strip()
            if directive == "version":
                version = value.strip()
            elif directive == "time_anchor":
                parts = value.split()
                try:
                    anchors.append((_canonical_config(parts[0]), float(parts[1])))
                except (IndexError, ValueError, InvalidConfig):
                    raise CalibrationParseError(
                        f"malformed time anchor {value.strip()!r}", line=line_number) from None
            continue
        rows.append((line_number, next(csv.reader([line]))))

    if not rows:
        raise CalibrationParseError("missing header row", line=None)
    header_line, header = rows[0]
    header = [name.strip() for name in header]
    if tuple(header[:len(COLUMNS)]) != COLUMNS or any(
        name not in OPTIONAL_COLUMNS for name in header[len(COLUMNS):]
    ):
        raise CalibrationParseError(
            f"header must be {','.join(COLUMNS)}[,bound], got {','.join(header)}", line=header_line)

    grouped = {}
    for line_number, cells in rows[1:]:
        knot_key, knot = _parse_row(cells, header, line_number)
        grouped.setdefault(knot_key, []).append(knot)

    series = tuple(_build_series(key, knots) for key, knots in grouped.items())
    table = CalibrationTable(series, tuple(anchors), version, (source,))
    logger.debug(f"✓ Kalibratie geladen uit {source}: {len(series)} reeksen, versie {version}")
    return table


def _parse_row(cells, header, line_number):
    if len(cells) != len(header):
        raise CalibrationParseError(
            f"expected {len(header)} columns, got {len(cells)}", line=line_number)
    row = {name: cell.strip() for name, cell in zip(header, cells)}

    def fail(column, message):
        raise CalibrationParseError(message, line=line_number, column=column)

    tag = row["geometry_tag"]
    if tag not in GEOMETRY_TAGS:
        fail("geometry_tag", f"unknown geometry tag {tag!r}")
    try:
        config_id = _canonical_config(row["config"])
    except InvalidConfig as e:
        fail("config", str(e))
    if row["fabric"] not in FABRICS:
        fail("fabric", f"unknown fabric {row['fabric']!r}")
    try:
        layers = int(row["layers"])
    except ValueError:
        fail("layers", f"layers must be an integer, got {row['layers']!r}")
    if not 1 <= layers <= MAX_LAYERS:
        fail("layers", f"layers must be within 1..{MAX_LAYERS}, got {layers}")
    if row["mode"] not in MODES:
        fail("mode", f"unknown mode {row['mode']!r}")

    values = {}
    for column in ("displacement_mm", "force_n"):
        try:
            values[column] = float(row[column])
        except ValueError:
            fail(column, f"not a number: {row[column]!r}")
        if not math.isfinite(values[column]) or values[column] < 0.0:
            fail(column, f"must be finite and >= 0, got {row[column]}")

    if row["provenance"] not in PROVENANCES:
        fail("provenance", f"unknown provenance {row['provenance']!r}")
    bound = row.get("bound") or "exact"
    if bound not in BOUNDS:
        fail("bound", f"bound must be exact or upper, got {bound!r}")

    key = (tag, row["mode"], config_id, row["fabric"], layers)
    return key, Knot(values["displacement_mm"], values["force_n"], row["provenance"], bound)


def load_calibration_file(path):
    path = Path(path)
    return load_calibration(path.read_text(encoding="utf-8"), source=str(path))


@lru_cache(maxsize=1)
def default_table():
    """De meegeleverde tabel (alleen de gepubliceerde meetwaarden)"""
    return load_calibration_file(DEFAULT_TABLE_PATH)


def merge_tables(base, extra):
    """
    Voeg externe knopen toe aan een basistabel

    Alle knopen uit `extra` krijgen provenance 'external'. Een externe knoop
    op een verplaatsing die de basisreeks al heeft wordt genegeerd.

    Returns:
        Nieuwe CalibrationTable (opnieuw gevalideerd)
    """
    merged = {entry.key: list(entry.knots) for entry in base.series}
    for entry in extra.series:
        target = merged.setdefault(entry.key, [])
        taken = {knot.displacement for knot in target}
        for knot in entry.knots:
            if knot.provenance == "derived" and knot.displacement == 0.0:
                continue
            if knot.displacement in taken:
                logger.warning(
                    f"⚠ Externe knoop {entry.config_id} {entry.fabric} x{entry.layers} "
                    f"bij {knot.displacement:g} mm genegeerd: basistabel heeft al een waarde"
                )
                continue
            target.append(knot._replace(provenance="external"))
            taken.add(knot.displacement)

    series = []
    for key, knots in merged.items():
        base_knots = [k for k in knots if not (k.provenance == "derived" and k.displacement == 0.0)]
        series.append(_build_series(key, base_knots))

    table = CalibrationTable(tuple(series), base.time_anchors or extra.time_anchors,
                             base.version, base.sources + extra.sources)
    logger.info(f"✓ Kalibratie samengevoegd: {table.knot_count('external')} externe knopen")
    return table


# Voorspellers

@dataclass(frozen=True)
class PropertyQuery:
    config_id: str
    fabric: str
    layers: int
    displacement: float
    mode: str = None
    geometry_tag: str = "swatch-100"

    def __post_init__(self):
        if not math.isfinite(self.displacement) or self.displacement < 0.0:
            raise InvalidQuery(f"displacement must be >= 0, got {self.displacement}")
        if not 1 <= int(self.layers) <= MAX_LAYERS:
            raise InvalidQuery(f"layers must be within 1..{MAX_LAYERS}, got {self.layers}")
        if self.mode is not None and self.mode not in MODES:
            raise InvalidQuery(f"unknown mode {self.mode!r}")
        if self.geometry_tag not in GEOMETRY_TAGS:
            raise InvalidQuery(f"unknown geometry tag {self.geometry_tag!r}")


@dataclass(frozen=True)
class ForcePrediction:
    force_n: float
    upper_bound: bool = False
    derived: bool = False

    def __float__(self):
        return self.force_n

    def __str__(self):
        prefix = "< " if self.upper_bound else ""
        return f"{prefix}{self.force_n:.4g} N"


def _predict(query, table, mode, extrapolate):
    if query.mode is not None and query.mode != mode:
        raise InvalidQuery(f"query mode {query.mode} does not match {mode} prediction")
    table = table or default_table()
    get_fabric(query.fabric)
    config_id = _canonical_config(query.config_id)

    by_layers = table.layer_series(query.geometry_tag, mode, config_id, query.fabric)
    if not by_layers:
        raise UnknownConfig(
            f"no {mode} calibration for {config_id} on {query.fabric} ({query.geometry_tag})")

    if query.layers in by_layers:
        force, upper = by_layers[query.layers].interpolate(query.displacement, extrapolate)
        return ForcePrediction(force, upper, derived=False)

    below = [n for n in by_layers if n < query.layers]
    above = [n for n in by_layers if n > query.layers]
    if not below or not above:
        raise InsufficientCalibration(
            f"no calibrated layer counts around {query.layers} for {config_id} on "
            f"{query.fabric} ({query.geometry_tag} {mode}); measured: {sorted(by_layers)}"
        )
    low, high = max(below), min(above)
    force_low, upper_low = by_layers[low].interpolate(query.displacement, extrapolate)
    force_high, upper_high = by_layers[high].interpolate(query.displacement, extrapolate)
    weight = (query.layers - low) / (high - low)
    force = force_low + weight * (force_high - force_low)
    return ForcePrediction(force, upper_low or upper_high, derived=True)


def predict_compression(query, table=None, extrapolate=False):
    """
    Compressiekracht in N bij de gevraagde verplaatsing

    Ontbrekende laagaantallen worden lineair geïnterpoleerd tussen de
    dichtstbijzijnde gemeten laagaantallen.
    """
    return _predict(query, table, "compression", extrapolate)


def predict_tensile(query, table=None, extrapolate=False, layer_scaling=False):
    """
    Trekkracht in N; alleen voor rekbare stoffen

    Args:
        query: PropertyQuery
        table: CalibrationTable (default: meegeleverde tabel)
        extrapolate: Vlak doortrekken voorbij de laatste knoop
        layer_scaling: Schaal een enkellaagse reeks met 1 + 2(n-1)/3
    """
    if not get_fabric(query.fabric).is_stretch:
        raise NonStretchFabric(f"tensile data exists only for stretch fabrics, got {query.fabric}")
    try:
        return _predict(query, table, "tensile", extrapolate)
    except InsufficientCalibration:
        if not layer_scaling or query.layers == 1:
            raise
    single = _predict(replace(query, layers=1), table, "tensile", extrapolate)
    factor = 1.0 + 2.0 * (query.layers - 1) / 3.0
    return ForcePrediction(single.force_n * factor, single.upper_bound, derived=True)


def predict(query, table=None, extrapolate=False):
    """Voorspel volgens query.mode (default compressie)"""
    if query.mode == "tensile":
        return predict_tensile(query, table, extrapolate)
    return predict_compression(query, table, extrapolate)


# Vormbaarheid

@dataclass(frozen=True)
class FormabilityResult:
    classification: str  # 'good' | 'poor'
    warnings: tuple = ()

    @property
    def is_good(self):
        return self.classification == "good"


def _as_config(config):
    if isinstance(config, EmbroideryConfig):
        return config
    return EmbroideryConfig.from_config_id(config)


def classify_formability(config, fabric, mold_diameter, layers=1):
    """
    Regelgebaseerde vormbaarheid op een cilindermal

    Niet-rekbare stof vormt goed bij steekafstand <= 5 mm, rekbare stof bij
    lijnafstand <= 1 mm. Meerdere lagen verbeteren de vorm niet.
    """
    config = _as_config(config)
    fabric = fabric if isinstance(fabric, FabricSpec) else get_fabric(fabric)
    if not any(abs(float(mold_diameter) - d) < 1e-9 for d in MOLD_DIAMETERS):
        raise UnsupportedMold(
            f"no formability data for a {mold_diameter:g} mm mold; tested: 10, 20, 30 mm")

    if fabric.is_stretch:
        good = config.line_spacing <= 1.0 + 1e-9
    else:
        good = config.stitch_spacing <= 5.0 + 1e-9

    warnings = ()
    if layers >= 2:
        warnings = (f"{layers} layers: reduced mold conformance",)
    return FormabilityResult("good" if good else "poor", warnings)


# Fabricagetijd

SWATCH_SIDE_MM = 100.0


def anchor_stitch_count(config_id):
    """Steken van een lineair plan op de 100 x 100 mm swatch"""
    region = Region.rectangle(SWATCH_SIDE_MM, SWATCH_SIDE_MM)
    return compile_plan(region, EmbroideryConfig.from_config_id(config_id)).stitch_count


@dataclass(frozen=True)
class TimeModel:
    """minuten = (intercept + slope * steken per laag) * lagen"""

    intercept: float
    slope: float
    anchors: tuple = ()

    @classmethod
    def from_anchors(cls, anchors):
        """
        Los (intercept, slope) op uit twee ankers (config_id, minuten)

        De steekaantallen komen uit de geometrie van de swatch.
        """
        if len(anchors) != 2:
            raise InsufficientCalibration(f"time model needs exactly 2 anchors, got {len(anchors)}")
        counts = [anchor_stitch_count(config_id) for config_id, _ in anchors]
        if counts[0] == counts[1]:
            raise InvariantViolation("time anchors have equal stitch counts")
        matrix = np.array([[1.0, counts[0]], [1.0, counts[1]]])
        minutes = np.array([anchors[0][1], anchors[1][1]])
        intercept, slope = np.linalg.solve(matrix, minutes)
        resolved = tuple((cid, n, m) for (cid, m), n in zip(anchors, counts))
        logger.debug(f"Tijdmodel: {intercept:.4f} + {slope:.6f} * steken")
        return cls(float(intercept), float(slope), resolved)

    def minutes(self, stitch_count, layers=1):
        return (self.intercept + self.slope * stitch_count) * layers


@lru_cache(maxsize=8)
def _time_model_for(anchors):
    return TimeModel.from_anchors(anchors)


def time_model(table=None):
    table = table or default_table()
    return _time_model_for(tuple(table.time_anchors))


def estimate_fabrication_time(plan, model=None):
    """
    Geschatte borduurtijd in minuten voor alle lagen van het plan

    Args:
        plan: StitchPlan
        model: TimeModel (default: uit de meegeleverde ankers)
    """
    if not plan.points:
        logger.warning("⚠ Leeg plan: geen fabricagetijd")
        return 0.0
    model = model or time_model()
    return model.minutes(plan.stitch_count, plan.layer_count)


# Ontwerprichtlijnen per eigenschap

@dataclass(frozen=True)
class AffordanceHint:
    affordance: str
    parameters: tuple
    guidance: tuple
    recommended_configs: dict = field(default_factory=dict)


AFFORDANCE_HINTS = {
    "stiffness": AffordanceHint(
        "stiffness",
        ("thermoplastic quantity", "thermoplastic direction", "fabric type"),
        (
            "decrease line spacing or stitch spacing to add thermoplastic",
            "align continuous threads parallel to the molding direction",
            "heavier fabrics add stiffness",
            "stack layers for more force (4 layers: about 6x a single layer)",
        ),
        {
            "non-stretch": ("L0.66_S1", "L0.66_S5", "L1_S1", "L1_S5"),
            "stretch": ("L0.66_S1", "L0.66_S5", "L1_S1", "L1_S5"),
        },
    ),
    "formability": AffordanceHint(
        "formability",
        ("thermoplastic direction", "fabric type"),
        (
            "single curves: straight lines parallel to the molding direction on non-stretch fabric",
            "double curves: radial or concentric wavy layouts on stretch fabric",
            "non-stretch fabric forms well with stitch spacing S1 or S5",
            "stretch fabric forms well with line spacing L1 or L0.66",
        ),
        {
            "non-stretch": ("L2_S1", "L2_S5"),
            "stretch": ("L1_S15", "L0.66_S15"),
        },
    ),
    "stretchability": AffordanceHint(
        "stretchability",
        ("thermoplastic direction", "fabric type"),
        (
            "place threads perpendicular to the stretching direction",
            "use stretch fabric",
            "sparse configurations keep the tensile force low",
        ),
        {"stretch": ("L2_S15",)},
    ),
    "re-moldability": AffordanceHint(
        "re-moldability",
        ("thermoplastic property",),
        ("reheat above the glass transition (47–57 °C) to soften and remold",),
    ),
}

_AFFORDANCE_ALIASES = {
    "remoldability": "re-moldability",
    "geometrical formability": "formability",
    "stretch": "stretchability",
}


def affordance_hints(affordance):
    """
    Welke fabricageparameters een eigenschap beïnvloeden

    Args:
        affordance: stiffness, formability, stretchability of re-moldability

    Returns:
        AffordanceHint
    """
    name = str(affordance).strip().lower()
    name = _AFFORDANCE_ALIASES.get(name, name)
    try:
        return AFFORDANCE_HINTS[name]
    except KeyError:
        raise UnknownAffordance(
            f"unknown affordance {affordance!r}, expected one of {sorted(AFFORDANCE_HINTS)}") from None


# Test functie
if __name__ == "__main__":
    print("Calibration Table Test")
    print("=" * 50)

    table = default_table()
    print(f"Versie {table.version}: {len(table)} reeksen, {table.knot_count('paper')} meetknopen")

    for config_id in ("L2_S5", "L1_S5", "L0.66_S5"):
        query = PropertyQuery(config_id, "nonstretch-336", 1, 10.0)
        print(f"  {config_id:9s} @10mm: {predict_compression(query)}")

    model = time_model()
    print(f"\nTijdmodel: {model.intercept:.3f} + {model.slope:.6f} * steken")
    print("\n✓ Test voltooid")
