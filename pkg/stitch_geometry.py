#!/usr/bin/env python3
"""
Stitch Geometry
Genereert steekplannen voor de drie ExoFabric patronen (lineair, radiaal,
concentrisch), geknipt op een ontwerpgebied met een vaste padvolgorde.

Coördinaten in mm, y-as omhoog (zoals in DST).
"""

import logging
import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import NamedTuple

import numpy as np
import shapely
from shapely.geometry import LineString, Polygon, box

from errors import ConfigMismatch, InvalidConfig, RegionDegenerate, RegionInvalid
from waveform_generator import WaveformGenerator, arc_abscissae, sample_by_arc_length

logger = logging.getLogger(__name__)

TOLERANCE_MM = 1e-6
COORDINATE_LIMIT_MM = 10_000.0
DST_RECORD_RANGE_MM = 12.1

STITCH = "stitch"
JUMP = "jump"
PRIMITIVES = ("linear", "radial", "concentric")

# Het ontwerpraster: label -> afstand in mm. L0.66 staat voor 150 lijnen op 100 mm.
LINE_SPACINGS = {"L2": 2.0, "L1": 1.0, "L0.66": 2.0 / 3.0}
STITCH_SPACINGS = {"S1": 1.0, "S5": 5.0, "S15": 15.0}

# Volgorde A..I: per steekafstand de drie lijnafstanden
GRID_CONFIG_IDS = tuple(
    f"{line}_{stitch}" for stitch in STITCH_SPACINGS for line in LINE_SPACINGS
)

# Grenzen voor EmbroideryConfig en de geteste minima (kleiner = over-punch waarschuwing)
MAX_LINE_SPACING = 10.0
MAX_STITCH_SPACING = 15.0
MIN_TESTED_LINE_SPACING = 0.66
MIN_TESTED_STITCH_SPACING = 0.5

# Draadgrenzen voor validate_design
TEX_JAM_LIMIT = 60
TEX_SOFT_LIMIT = 45
LIGHTWEIGHT_GSM = 300


def _check_coordinate(value, label):
    value = float(value)
    if not math.isfinite(value):
        raise RegionInvalid(f"{label} is not finite: {value}")
    if abs(value) > COORDINATE_LIMIT_MM:
        raise RegionInvalid(f"{label} outside ±{COORDINATE_LIMIT_MM:g} mm: {value}")
    return value


@dataclass(frozen=True)
class Point2:
    """Punt in mm"""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", _check_coordinate(self.x, "x"))
        object.__setattr__(self, "y", _check_coordinate(self.y, "y"))

    def __iter__(self):
        yield self.x
        yield self.y

    @classmethod
    def of(cls, value):
        if isinstance(value, Point2):
            return value
        x, y = value
        return cls(x, y)


# Config ids

def format_spacing(value):
    """Afstand naar label-getal: 2/3 wordt '0.66', 5.0 wordt '5'"""
    if abs(value - 2.0 / 3.0) < 1e-9:
        return "0.66"
    return f"{value:g}"


def format_config_id(line_spacing, stitch_spacing):
    return f"L{format_spacing(line_spacing)}_S{format_spacing(stitch_spacing)}"


def parse_config_id(config_id):
    """
    Ontleed een config id zoals 'L0.66_S1'

    Args:
        config_id: Tekst in de vorm L<lijnafstand>_S<steekafstand>

    Returns:
        (line_spacing, stitch_spacing) in mm
    """
    text = str(config_id).strip()
    parts = text.split("_")
    if len(parts) != 2 or not parts[0].startswith("L") or not parts[1].startswith("S"):
        raise InvalidConfig(f"config id must look like L<line>_S<stitch>: {config_id!r}")
    line_label, stitch_label = parts
    try:
        line = LINE_SPACINGS.get(line_label, None) or float(line_label[1:])
        stitch = STITCH_SPACINGS.get(stitch_label, None) or float(stitch_label[1:])
    except ValueError:
        raise InvalidConfig(f"config id has non-numeric spacing: {config_id!r}") from None
    return line, stitch


# Regio

@dataclass(frozen=True)
class Region:
    """
    Ontwerpgebied: rechthoek, cirkel of polygoon

    Gebruik de constructors Region.rectangle(), Region.circle() en
    Region.polygon(); die valideren de invoer.
    """

    kind: str
    width: float = 0.0
    height: float = 0.0
    origin: Point2 = Point2(0.0, 0.0)
    center: Point2 = Point2(0.0, 0.0)
    radius: float = 0.0
    vertices: tuple = ()

    def __post_init__(self):
        if self.kind == "rectangle":
            self._check_dimension(self.width, "width")
            self._check_dimension(self.height, "height")
            _check_coordinate(self.origin.x + self.width, "rectangle corner x")
            _check_coordinate(self.origin.y + self.height, "rectangle corner y")
        elif self.kind == "circle":
            self._check_dimension(self.radius, "radius")
            for label, value in (
                ("circle extent x", self.center.x), ("circle extent y", self.center.y)
            ):
                _check_coordinate(abs(value) + self.radius, label)
        elif self.kind == "polygon":
            if len(self.vertices) < 3:
                raise RegionInvalid("polygon needs at least 3 vertices")
            polygon = Polygon([tuple(v) for v in self.vertices])
            if not polygon.is_valid or polygon.area <= 0.0:
                raise RegionInvalid("polygon must be simple with positive area")
            if not polygon.exterior.is_ccw:
                raise RegionInvalid("polygon vertices must be counterclockwise")
        else:
            raise RegionInvalid(f"unknown region kind: {self.kind!r}")

    @staticmethod
    def _check_dimension(value, label):
        if not math.isfinite(value) or value <= 0.0:
            raise RegionInvalid(f"{label} must be positive, got {value}")

    @classmethod
    def rectangle(cls, width, height, origin=(0.0, 0.0)):
        return cls("rectangle", width=float(width), height=float(height), origin=Point2.of(origin))

    @classmethod
    def circle(cls, radius, center=(0.0, 0.0)):
        return cls("circle", radius=float(radius), center=Point2.of(center))

    @classmethod
    def polygon(cls, vertices):
        return cls("polygon", vertices=tuple(Point2.of(v) for v in vertices))

    # Afgeleide geometrie

    @cached_property
    def geometry(self):
        """Shapely geometrie (voor cirkels een benadering, alleen voor weergave)"""
        if self.kind == "rectangle":
            geom = box(self.origin.x, self.origin.y,
                       self.origin.x + self.width, self.origin.y + self.height)
        elif self.kind == "circle":
            geom = shapely.Point(self.center.x, self.center.y).buffer(self.radius, quad_segs=64)
        else:
            geom = Polygon([tuple(v) for v in self.vertices])
        shapely.prepare(geom)
        return geom

    @cached_property
    def _tolerant_geometry(self):
        geom = self.geometry.buffer(TOLERANCE_MM)
        shapely.prepare(geom)
        return geom

    @property
    def is_convex(self):
        if self.kind != "polygon":
            return True
        geom = self.geometry
        return abs(geom.convex_hull.area - geom.area) <= 1e-9 * max(geom.area, 1.0)

    @property
    def bounds(self):
        """(minx, miny, maxx, maxy) in mm"""
        if self.kind == "circle":
            c, r = self.center, self.radius
            return (c.x - r, c.y - r, c.x + r, c.y + r)
        return tuple(self.geometry.bounds)

    @property
    def area(self):
        if self.kind == "circle":
            return math.pi * self.radius ** 2
        return self.geometry.area

    def corner_points(self):
        if self.kind == "rectangle":
            x0, y0 = self.origin
            x1, y1 = x0 + self.width, y0 + self.height
            return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        return [tuple(v) for v in self.vertices]

    def translated(self, dx, dy):
        if self.kind == "rectangle":
            return Region.rectangle(self.width, self.height,
                                    (self.origin.x + dx, self.origin.y + dy))
        if self.kind == "circle":
            return Region.circle(self.radius, (self.center.x + dx, self.center.y + dy))
        return Region.polygon([(v.x + dx, v.y + dy) for v in self.vertices])

    def rotated(self, angle_deg, about=(0.0, 0.0)):
        """Draai het gebied; een rechthoek wordt daarbij een polygoon"""
        if self.kind == "circle":
            (cx, cy), = rotate_points([tuple(self.center)], angle_deg, about)
            return Region.circle(self.radius, (cx, cy))
        return Region.polygon(rotate_points(self.corner_points(), angle_deg, about).tolist())

    # Bewerkingen voor de vullingen

    def projection_range(self, direction):
        """Minimum en maximum van het gebied geprojecteerd op `direction`"""
        d = np.asarray(direction, dtype=float)
        if self.kind == "circle":
            mid = float(np.dot(d, tuple(self.center)))
            return mid - self.radius, mid + self.radius
        values = np.asarray(self.corner_points(), dtype=float) @ d
        return float(values.min()), float(values.max())

    def chord_intervals(self, offset, u, n):
        """
        Snijd de lijn {p : n·p = offset} met het gebied

        Args:
            offset: Positie van de lijn langs de normaal n
            u: Richting van de lijn (eenheidsvector)
            n: Normaal (eenheidsvector loodrecht op u)

        Returns:
            Oplopende lijst (t0, t1) met t de positie langs u
        """
        if self.kind == "circle":
            center = np.array(tuple(self.center))
            distance = offset - float(np.dot(n, center))
            if abs(distance) > self.radius:
                return []
            half = math.sqrt(max(self.radius ** 2 - distance ** 2, 0.0))
            mid = float(np.dot(u, center))
            return [(mid - half, mid + half)]

        t_lo, t_hi = self.projection_range(u)
        base = np.asarray(n) * offset
        line = LineString([base + np.asarray(u) * (t_lo - 1.0), base + np.asarray(u) * (t_hi + 1.0)])
        pieces = []
        for part in _line_parts(line.intersection(self.geometry)):
            ends = np.asarray(part.coords, dtype=float) @ np.asarray(u)
            pieces.append((float(ends.min()), float(ends.max())))
        pieces.sort()

        merged = []
        for t0, t1 in pieces:
            if merged and t0 - merged[-1][1] <= TOLERANCE_MM:
                merged[-1] = (merged[-1][0], max(merged[-1][1], t1))
            else:
                merged.append((t0, t1))
        return merged

    def covers(self, points):
        """Bool array: welke punten (n, 2) binnen het gebied liggen, met tolerantie"""
        xy = np.asarray(points, dtype=float).reshape(-1, 2)
        if self.kind == "circle":
            distance = np.hypot(xy[:, 0] - self.center.x, xy[:, 1] - self.center.y)
            return distance <= self.radius + TOLERANCE_MM
        if len(xy) == 0:
            return np.zeros(0, dtype=bool)
        return shapely.dwithin(self.geometry, shapely.points(xy), TOLERANCE_MM)

    def covers_segment(self, a, b):
        if self.is_convex:
            return bool(self.covers([a, b]).all())
        return bool(self._tolerant_geometry.covers(LineString([a, b])))

    def clip_segment(self, a, b):
        """
        Delen van segment a-b binnen het gebied, in volgorde van a naar b

        Eindpunten die samenvallen met a of b worden exact a of b.
        """
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        delta = b - a
        length = float(np.hypot(*delta))
        if length < TOLERANCE_MM:
            return [(tuple(a), tuple(b))] if self.covers([a]).all() else []

        if self.kind == "circle":
            center = np.array(tuple(self.center))
            f = a - center
            qa = float(delta @ delta)
            qb = 2.0 * float(f @ delta)
            qc = float(f @ f) - self.radius ** 2
            disc = qb * qb - 4.0 * qa * qc
            if disc < 0.0:
                return []
            root = math.sqrt(disc)
            t0 = max(0.0, (-qb - root) / (2.0 * qa))
            t1 = min(1.0, (-qb + root) / (2.0 * qa))
            intervals = [(t0, t1)] if t1 - t0 > TOLERANCE_MM / length else []
        else:
            intervals = []
            for part in _line_parts(LineString([a, b]).intersection(self.geometry)):
                ends = (np.asarray(part.coords, dtype=float) - a) @ delta / (length ** 2)
                intervals.append((float(ends.min()), float(ends.max())))
            intervals.sort()

        pieces = []
        for t0, t1 in intervals:
            start = tuple(a) if t0 * length <= TOLERANCE_MM else tuple(a + t0 * delta)
            end = tuple(b) if (1.0 - t1) * length <= TOLERANCE_MM else tuple(a + t1 * delta)
            pieces.append((start, end))
        return pieces


def _line_parts(geom):
    """LineStrings met lengte uit een shapely resultaat"""
    parts = getattr(geom, "geoms", [geom])
    result = []
    for part in parts:
        if part.geom_type == "LineString" and part.length > TOLERANCE_MM:
            result.append(part)
        elif part.geom_type in ("MultiLineString", "GeometryCollection"):
            result.extend(_line_parts(part))
    return result


def rotate_points(points, angle_deg, about=(0.0, 0.0)):
    """Draai punten (n, 2) tegen de klok in rond `about`"""
    theta = math.radians(angle_deg)
    c, s = math.cos(theta), math.sin(theta)
    rotation = np.array([[c, -s], [s, c]])
    pivot = np.asarray(about, dtype=float)
    return (np.asarray(points, dtype=float) - pivot) @ rotation.T + pivot


# Configuratie

@dataclass(frozen=True)
class EmbroideryConfig:
    """Een punt uit het ontwerpraster plus patroonkeuze"""

    primitive: str = "linear"
    line_spacing: float = 1.0
    stitch_spacing: float = 5.0
    angle: float = 0.0
    waviness_amplitude: float = 1.5
    waviness_period: float = 10.0

    def __post_init__(self):
        if self.primitive not in PRIMITIVES:
            raise InvalidConfig(f"unknown primitive {self.primitive!r}, expected one of {PRIMITIVES}")
        for label, value, upper in (
            ("line_spacing", self.line_spacing, MAX_LINE_SPACING),
            ("stitch_spacing", self.stitch_spacing, MAX_STITCH_SPACING),
        ):
            if not math.isfinite(value) or value <= 0.0:
                raise InvalidConfig(f"{label} must be positive, got {value}")
            if value > upper + 1e-9:
                raise InvalidConfig(f"{label} {value:g} mm exceeds maximum {upper:g} mm")
        if not math.isfinite(self.angle):
            raise InvalidConfig("angle must be finite")
        if not math.isfinite(self.waviness_amplitude) or self.waviness_amplitude < 0.0:
            raise InvalidConfig("waviness_amplitude must be >= 0")
        if self.waviness_amplitude > 0.0 and not self.waviness_period > 0.0:
            raise InvalidConfig("waviness_period must be > 0 when amplitude > 0")

    @classmethod
    def from_config_id(cls, config_id, primitive="linear", **kwargs):
        line, stitch = parse_config_id(config_id)
        return cls(primitive=primitive, line_spacing=line, stitch_spacing=stitch, **kwargs)

    @property
    def config_id(self):
        return format_config_id(self.line_spacing, self.stitch_spacing)


# Steekplan

class StitchPoint(NamedTuple):
    """Punt in mm; `kind` beschrijft de beweging naar dit punt toe"""

    x: float
    y: float
    kind: str
    row: int = 0


@dataclass(frozen=True)
class StitchPlan:
    """Geordende reeks steek- en sprongpunten plus herkomst"""

    points: tuple = ()
    config: EmbroideryConfig = None
    region: Region = None
    layer_count: int = 1

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if int(self.layer_count) < 1:
            raise InvalidConfig("layer_count must be >= 1")

    def __len__(self):
        return len(self.points)

    @property
    def xy(self):
        if not self.points:
            return np.zeros((0, 2))
        return np.array([(p.x, p.y) for p in self.points], dtype=float)

    @property
    def stitch_count(self):
        """Aantal naaldsteken per laag"""
        return sum(1 for p in self.points if p.kind == STITCH)

    @property
    def bounds(self):
        if not self.points:
            return (0.0, 0.0, 0.0, 0.0)
        xy = self.xy
        return (*xy.min(axis=0).tolist(), *xy.max(axis=0).tolist())

    def max_stitch_length(self):
        longest = 0.0
        for prev, point in zip(self.points, self.points[1:]):
            if point.kind == STITCH:
                longest = max(longest, math.hypot(point.x - prev.x, point.y - prev.y))
        return longest

    def is_dst_ready(self):
        """Past elke steekbeweging in een enkel DST record (12.1 mm)?"""
        return self.max_stitch_length() <= DST_RECORD_RANGE_MM + TOLERANCE_MM

    def normalized(self):
        """Opeenvolgende sprongen samengevoegd tot de laatste"""
        merged = []
        for point in self.points:
            if point.kind == JUMP and merged and merged[-1].kind == JUMP:
                merged[-1] = point
            else:
                merged.append(point)
        return replace(self, points=tuple(merged))

    def quantized(self, units_per_mm=10):
        """Coördinaten afgerond op 1/units_per_mm mm (half van nul af)"""
        points = []
        for p in self.points:
            x = quantize(p.x, units_per_mm) / units_per_mm
            y = quantize(p.y, units_per_mm) / units_per_mm
            points.append(p._replace(x=x, y=y))
        return replace(self, points=tuple(points))

    def with_layers(self, layer_count):
        return replace(self, layer_count=int(layer_count))

    def translated(self, dx, dy):
        points = tuple(p._replace(x=p.x + dx, y=p.y + dy) for p in self.points)
        region = self.region.translated(dx, dy) if self.region else None
        return replace(self, points=points, region=region)


def quantize(value_mm, units_per_mm=10):
    """mm naar gehele machine-eenheden, half van nul af afgerond"""
    scaled = value_mm * units_per_mm
    return int(math.copysign(math.floor(abs(scaled) + 0.5), scaled))


# Vullingen

def _round_count(value):
    return int(math.floor(value + 0.5))


def _require_primitive(config, primitive):
    if config.primitive != primitive:
        raise ConfigMismatch(f"{primitive} fill needs primitive {primitive}, got {config.primitive}")


def _require_circle(region, name):
    if region.kind != "circle":
        raise RegionInvalid(f"{name} fill needs a circle region, got {region.kind}")


def linear_fill(region, config):
    """
    Parallelle lijnen op afstand line_spacing, serpentine geordend

    De lijnen lopen in richting `angle` en worden gecentreerd over de
    breedte van het gebied loodrecht daarop. Eindpunten van aangrenzende
    lijnen worden met een steek verbonden als die verbinding binnen het
    gebied ligt en niet langer is dan max(L, S), anders met een sprong.

    Args:
        region: Ontwerpgebied
        config: EmbroideryConfig met primitive 'linear'

    Returns:
        StitchPlan
    """
    _require_primitive(config, "linear")
    theta = math.radians(config.angle)
    u = np.array([math.cos(theta), math.sin(theta)])
    n = np.array([-math.sin(theta), math.cos(theta)])

    low, high = region.projection_range(n)
    extent = high - low
    if extent < TOLERANCE_MM:
        raise RegionDegenerate(f"region extent {extent:g} mm across the lines")

    spacing = config.line_spacing
    count = _round_count(extent / spacing)
    if count == 0:
        logger.warning(f"⚠ Gebied smaller dan één lijnafstand ({extent:.3f} mm): één centrale lijn")
        offsets = [low + extent / 2.0]
    else:
        margin = (extent - (count - 1) * spacing) / 2.0
        offsets = [low + margin + k * spacing for k in range(count)]

    connect_limit = max(config.line_spacing, config.stitch_spacing) + TOLERANCE_MM
    points = []
    for row, offset in enumerate(offsets):
        intervals = region.chord_intervals(offset, u, n)
        if row % 2 == 1:
            intervals = [(t1, t0) for t0, t1 in reversed(intervals)]

        for segment_index, (t_start, t_end) in enumerate(intervals):
            length = abs(t_end - t_start)
            if length < TOLERANCE_MM:
                continue
            direction = 1.0 if t_end >= t_start else -1.0
            along = t_start + direction * arc_abscissae(length, config.stitch_spacing)
            xy = offset * n + np.outer(along, u)

            first = (float(xy[0, 0]), float(xy[0, 1]))
            kind = JUMP
            if points and segment_index == 0:
                prev = (points[-1].x, points[-1].y)
                gap = math.hypot(first[0] - prev[0], first[1] - prev[1])
                if gap <= connect_limit and region.covers_segment(prev, first):
                    kind = STITCH
            points.append(StitchPoint(first[0], first[1], kind, row))
            points.extend(StitchPoint(x, y, STITCH, row) for x, y in xy[1:].tolist())

    plan = StitchPlan(points, config, region)
    logger.debug(f"✓ Lineaire vulling: {len(offsets)} lijnen, {plan.stitch_count} steken")
    return plan


def radial_fill(region, config):
    """
    Golvende spaken van middelpunt naar rand, tegen de klok in

    Even spaken lopen naar buiten, oneven naar binnen; aan de rand volgt
    een sprong, in het midden wordt doorgestikt.
    """
    _require_primitive(config, "radial")
    _require_circle(region, "radial")
    radius = region.radius
    if radius < TOLERANCE_MM:
        raise RegionDegenerate(f"radius {radius:g} mm too small")
    count = _round_count(2.0 * math.pi * radius / config.line_spacing)
    if count == 0:
        raise RegionDegenerate(f"radius {radius:g} mm yields no spokes at pitch {config.line_spacing:g} mm")

    wave = WaveformGenerator(config.waviness_amplitude, config.waviness_period)

    def spoke(s):
        offset = wave.generate(s) * wave.generate_ramp(s, radius, config.waviness_amplitude)
        return np.column_stack((s, offset))

    base = sample_by_arc_length(spoke, wave.dense_positions(radius), config.stitch_spacing)
    center = np.array(tuple(region.center))

    points = []
    for index in range(count):
        xy = rotate_points(base, 360.0 * index / count) + center
        if index % 2 == 1:
            xy = xy[::-1]
        coords = xy.tolist()
        if index % 2 == 0 and points:
            # Midden valt samen met het einde van de vorige spaak
            coords = coords[1:]
            kind = STITCH
        else:
            kind = JUMP
        for i, (x, y) in enumerate(coords):
            points.append(StitchPoint(x, y, kind if i == 0 else STITCH, index))

    plan = StitchPlan(points, config, region)
    logger.debug(f"✓ Radiale vulling: {count} spaken, {plan.stitch_count} steken")
    return plan


def concentric_fill(region, config):
    """
    Gesloten golvende ringen op k·line_spacing, van binnen naar buiten

    Elke ring krijgt een geheel aantal golven zodat hij sluit; de amplitude
    wordt begrensd door de afstand tot de rand en door de halve ringstraal,
    zodat een binnenring nooit door het middelpunt loopt.
    """
    _require_primitive(config, "concentric")
    _require_circle(region, "concentric")
    radius = region.radius
    ring_count = int(math.floor(radius / config.line_spacing + 1e-9))
    if ring_count == 0:
        raise RegionDegenerate(
            f"radius {radius:g} mm holds no ring at pitch {config.line_spacing:g} mm"
        )

    cx, cy = region.center
    points = []
    for k in range(1, ring_count + 1):
        ring_radius = k * config.line_spacing
        circumference = 2.0 * math.pi * ring_radius
        amplitude = min(config.waviness_amplitude, max(radius - ring_radius, 0.0),
                        0.5 * ring_radius)
        if amplitude <= 0:
            # Vlakke ring: exact op de cirkel, koorde <= boog
            phi = arc_abscissae(circumference, config.stitch_spacing) / ring_radius
            xy = np.column_stack((cx + ring_radius * np.cos(phi), cy + ring_radius * np.sin(phi)))
        else:
            waves = max(1, _round_count(circumference / config.waviness_period))
            wave = WaveformGenerator(amplitude, 1.0)

            def ring(phi, ring_radius=ring_radius, waves=waves, wave=wave):
                r = ring_radius + wave.generate(phi * waves / (2.0 * math.pi))
                return np.column_stack((cx + r * np.cos(phi), cy + r * np.sin(phi)))

            # Bovengrens van de golvende booglengte bepaalt de fijnheid
            wavy_length = circumference + 4.0 * amplitude * waves
            samples = max(WaveformGenerator.MIN_SAMPLES,
                          int(math.ceil(wavy_length * WaveformGenerator.SAMPLES_PER_MM)) + 1)
            xy = sample_by_arc_length(ring, np.linspace(0.0, 2.0 * math.pi, samples),
                                      config.stitch_spacing)
        for i, (x, y) in enumerate(xy.tolist()):
            points.append(StitchPoint(x, y, JUMP if i == 0 else STITCH, k - 1))

    plan = StitchPlan(points, config, region)
    logger.debug(f"✓ Concentrische vulling: {ring_count} ringen, {plan.stitch_count} steken")
    return plan


def clip_to_region(plan, region):
    """
    Verwijder steken buiten het gebied

    Doorgesneden stukken beginnen opnieuw met een sprong; de volgorde
    blijft behouden. Een plan dat volledig binnen ligt komt ongewijzigd terug.
    """
    source = plan.points
    if not source:
        return replace(plan, region=region)

    inside = region.covers(plan.xy)
    convex = region.is_convex
    clipped = []

    def last_is(xy):
        return bool(clipped) and (clipped[-1].x, clipped[-1].y) == tuple(xy)

    for i, point in enumerate(source):
        if i == 0 or point.kind == JUMP:
            if inside[i]:
                clipped.append(point._replace(kind=JUMP))
            continue

        prev = source[i - 1]
        a, b = (prev.x, prev.y), (point.x, point.y)
        if inside[i - 1] and inside[i] and (convex or region.covers_segment(a, b)):
            if not last_is(a):
                clipped.append(StitchPoint(a[0], a[1], JUMP, point.row))
            clipped.append(point)
            continue

        for start, end in region.clip_segment(a, b):
            if not last_is(start):
                clipped.append(StitchPoint(float(start[0]), float(start[1]), JUMP, point.row))
            if end == b:
                clipped.append(point)
            else:
                clipped.append(StitchPoint(float(end[0]), float(end[1]), STITCH, point.row))

    removed = len(source) - len(clipped)
    if removed > 0:
        logger.debug(f"Clip: {removed} punten verwijderd")
    return replace(plan, points=tuple(clipped), region=region)


# Validatie

@dataclass(frozen=True)
class Diagnostic:
    severity: str  # 'error' | 'warning'
    code: str
    message: str

    def __str__(self):
        return f"{self.severity}: {self.message}"


def validate_design(config, thread, fabric):
    """
    Controleer een ontwerp tegen de werkbare grenzen van machine en materiaal

    Args:
        config: EmbroideryConfig
        thread: ThreadSpec (gebruikt tex en side)
        fabric: FabricSpec (gebruikt gsm)

    Returns:
        Lijst met Diagnostic records, errors eerst
    """
    diagnostics = []
    if thread.tex > TEX_JAM_LIMIT:
        diagnostics.append(Diagnostic(
            "error", "thread-too-thick",
            f"Tex {thread.tex:g} thread: machine jam risk (maximum Tex {TEX_JAM_LIMIT})"))
    elif thread.tex < TEX_SOFT_LIMIT:
        diagnostics.append(Diagnostic(
            "error", "thread-too-thin",
            f"Tex {thread.tex:g} thread is too soft to stiffen the fabric (minimum Tex {TEX_SOFT_LIMIT})"))

    if config.stitch_spacing < MIN_TESTED_STITCH_SPACING:
        diagnostics.append(Diagnostic(
            "warning", "over-punch",
            f"stitch spacing {config.stitch_spacing:g} mm below {MIN_TESTED_STITCH_SPACING} mm: "
            "over-punch damage to the fabric"))
    if config.line_spacing < MIN_TESTED_LINE_SPACING:
        diagnostics.append(Diagnostic(
            "warning", "over-punch",
            f"line spacing {config.line_spacing:g} mm below {MIN_TESTED_LINE_SPACING} mm: "
            "over-punch damage to the fabric"))

    if thread.side == "front":
        diagnostics.append(Diagnostic(
            "warning", "thread-side",
            "thermoplastic on the front side: tension imbalance, place it on the back side"))
    if fabric.gsm < LIGHTWEIGHT_GSM:
        diagnostics.append(Diagnostic(
            "warning", "lightweight-fabric",
            f"{fabric.gsm:g} GSM fabric: lower mechanical stability than the 336/390 GSM fabrics"))
    return diagnostics


FILLS = {
    "linear": linear_fill,
    "radial": radial_fill,
    "concentric": concentric_fill,
}


def compile_plan(region, config, layers=1):
    """
    Vul het gebied met het gekozen patroon en knip het resultaat bij

    Args:
        region: Ontwerpgebied
        config: EmbroideryConfig
        layers: Aantal lagen (kopieën die gestapeld worden)

    Returns:
        StitchPlan met layer_count = layers
    """
    plan = FILLS[config.primitive](region, config)
    plan = clip_to_region(plan, region).with_layers(layers)
    logger.info(
        f"✓ Plan {config.config_id} ({config.primitive}): "
        f"{len(plan)} punten, {plan.stitch_count} steken, {layers} laag/lagen"
    )
    return plan


# Test functie
if __name__ == "__main__":
    print("Stitch Geometry Test")
    print("=" * 50)

    swatch = Region.rectangle(100.0, 100.0)
    for config_id in GRID_CONFIG_IDS:
        config = EmbroideryConfig.from_config_id(config_id)
        plan = linear_fill(swatch, config)
        rows = len({p.row for p in plan.points})
        print(f"  {config_id:10s} {rows:4d} lijnen  {plan.stitch_count:6d} steken")

    disc = Region.circle(50.0)
    plan = concentric_fill(disc, EmbroideryConfig("concentric", 5.0, 1.0))
    print(f"\nConcentrisch r=50: {len({p.row for p in plan.points})} ringen")

    print("\n✓ Test voltooid")
