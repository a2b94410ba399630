import math
from collections import defaultdict

import numpy as np
import pytest

from calibration_table import get_fabric, get_thread
from errors import ConfigMismatch, InvalidConfig, RegionDegenerate, RegionInvalid
from stitch_geometry import (
    GRID_CONFIG_IDS,
    JUMP,
    STITCH,
    EmbroideryConfig,
    Region,
    StitchPlan,
    StitchPoint,
    clip_to_region,
    compile_plan,
    concentric_fill,
    format_config_id,
    linear_fill,
    parse_config_id,
    quantize,
    radial_fill,
    rotate_points,
    validate_design,
)

SWATCH = Region.rectangle(100.0, 100.0)

EXPECTED_LINES = {"L2": 50, "L1": 100, "L0.66": 150}
EXPECTED_POINTS_PER_LINE = {"S1": 101, "S5": 21, "S15": 8}


def _rows(plan):
    rows = defaultdict(list)
    for point in plan.points:
        rows[point.row].append(point)
    return rows


def _walk(length, spacing):
    """Steekposities door vanaf 0 te lopen tot het einde van de lijn"""
    positions = [0.0]
    while length - positions[-1] > spacing + 1e-6:
        positions.append(positions[-1] + spacing)
    if length - positions[-1] > 1e-6:
        positions.append(length)
    else:
        positions[-1] = length
    return positions


def _stitch_moves(plan, same_row=True):
    for prev, point in zip(plan.points, plan.points[1:]):
        if point.kind != STITCH:
            continue
        if same_row and prev.row != point.row:
            continue
        yield prev, point


def _assert_same_points(actual, expected, tol=1e-6):
    assert len(actual) == len(expected)
    for a, e in zip(actual, expected):
        assert a.kind == e.kind
        assert a.x == pytest.approx(e.x, abs=tol)
        assert a.y == pytest.approx(e.y, abs=tol)


# Config ids

def test_grid_order_and_labels():
    assert GRID_CONFIG_IDS[:3] == ("L2_S1", "L1_S1", "L0.66_S1")
    assert GRID_CONFIG_IDS[-1] == "L0.66_S15"
    assert len(GRID_CONFIG_IDS) == 9
    assert parse_config_id("L0.66_S1") == (2.0 / 3.0, 1.0)
    assert format_config_id(2.0 / 3.0, 1.0) == "L0.66_S1"
    assert format_config_id(1.0, 5.0) == "L1_S5"
    assert EmbroideryConfig.from_config_id("L2_S15").config_id == "L2_S15"


@pytest.mark.parametrize("config_id", ["X1_S5", "L1", "L1_Sx", "L1_S5_S6", ""])
def test_parse_config_id_rejects_garbage(config_id):
    with pytest.raises(InvalidConfig):
        parse_config_id(config_id)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"primitive": "zigzag"},
        {"line_spacing": 12.0},
        {"line_spacing": 0.0},
        {"stitch_spacing": 16.0},
        {"stitch_spacing": float("nan")},
        {"waviness_amplitude": -1.0},
        {"waviness_amplitude": 1.0, "waviness_period": 0.0},
    ],
)
def test_config_rejects_out_of_range(kwargs):
    with pytest.raises(InvalidConfig):
        EmbroideryConfig(**kwargs)


def test_config_allows_untested_small_spacing():
    config = EmbroideryConfig(line_spacing=0.5, stitch_spacing=0.3)
    assert config.line_spacing == 0.5


# Regio

@pytest.mark.parametrize(
    "make",
    [
        lambda: Region.rectangle(0.0, 10.0),
        lambda: Region.rectangle(10.0, -1.0),
        lambda: Region.circle(-2.0),
        lambda: Region.circle(5.0, (float("inf"), 0.0)),
        lambda: Region.rectangle(10.0, 10.0, (20_000.0, 0.0)),
        lambda: Region.polygon([(0, 0), (10, 0)]),
        lambda: Region.polygon([(0, 0), (0, 10), (10, 10), (10, 0)]),
        lambda: Region.polygon([(0, 0), (10, 10), (10, 0), (0, 10)]),
        lambda: Region("ellipse"),
    ],
    ids=["zero-width", "negative-height", "negative-radius", "infinite-center", "far-origin",
         "two-vertices", "clockwise", "bowtie", "unknown-kind"],
)
def test_invalid_regions(make):
    with pytest.raises(RegionInvalid):
        make()


def test_region_basics():
    circle = Region.circle(5.0, (10.0, 10.0))
    assert circle.bounds == (5.0, 5.0, 15.0, 15.0)
    assert circle.area == pytest.approx(math.pi * 25.0)
    assert circle.covers([(10.0, 15.0), (10.0, 15.1)]).tolist() == [True, False]

    rect = Region.rectangle(20.0, 10.0, (5.0, 5.0))
    assert rect.bounds == (5.0, 5.0, 25.0, 15.0)
    assert rect.translated(1.0, 2.0).bounds == (6.0, 7.0, 26.0, 17.0)
    rotated = rect.rotated(90.0)
    assert rotated.kind == "polygon"
    assert rotated.area == pytest.approx(200.0)


# Lineaire vulling

@pytest.mark.parametrize("config_id", GRID_CONFIG_IDS)
def test_swatch_counts_match_grid(config_id):
    line_label, stitch_label = config_id.split("_")
    config = EmbroideryConfig.from_config_id(config_id)
    plan = linear_fill(SWATCH, config)
    rows = _rows(plan)

    assert len(rows) == EXPECTED_LINES[line_label]
    oracle = _walk(100.0, config.stitch_spacing)
    assert len(oracle) == EXPECTED_POINTS_PER_LINE[stitch_label]
    for row in rows.values():
        travel = [abs(p.x - row[0].x) for p in row]
        assert travel == pytest.approx(oracle, abs=1e-9)


def test_swatch_lines_are_centered_and_serpentine():
    plan = linear_fill(SWATCH, EmbroideryConfig.from_config_id("L1_S5"))
    rows = _rows(plan)
    ys = sorted({round(row[0].y, 9) for row in rows.values()})
    assert ys[0] == pytest.approx(0.5)
    assert ys[-1] == pytest.approx(99.5)
    assert rows[0][0].x == pytest.approx(0.0) and rows[0][-1].x == pytest.approx(100.0)
    assert rows[1][0].x == pytest.approx(100.0) and rows[1][-1].x == pytest.approx(0.0)


def test_swatch_plan_has_a_single_jump():
    plan = compile_plan(SWATCH, EmbroideryConfig.from_config_id("L0.66_S1"))
    kinds = [p.kind for p in plan.points]
    assert kinds[0] == JUMP
    assert kinds.count(JUMP) == 1
    assert plan.stitch_count == 150 * 101 - 1


def test_row_connectors_respect_connect_limit():
    config = EmbroideryConfig.from_config_id("L2_S15")
    plan = linear_fill(SWATCH, config)
    for prev, point in _stitch_moves(plan, same_row=False):
        if prev.row != point.row:
            assert math.hypot(point.x - prev.x, point.y - prev.y) <= 2.0 + 1e-6


def test_narrow_region_gets_single_centered_line():
    plan = linear_fill(Region.rectangle(100.0, 0.4), EmbroideryConfig(line_spacing=1.0))
    assert len(_rows(plan)) == 1
    assert all(p.y == pytest.approx(0.2) for p in plan.points)


def test_linear_fill_rejects_wrong_primitive():
    with pytest.raises(ConfigMismatch):
        linear_fill(SWATCH, EmbroideryConfig("radial"))


def test_rotation_equivariance():
    config = EmbroideryConfig.from_config_id("L1_S5")
    plan = linear_fill(SWATCH, config)
    turned = linear_fill(SWATCH.rotated(90.0), EmbroideryConfig.from_config_id("L1_S5", angle=90.0))

    expected = rotate_points(plan.xy, 90.0)
    assert turned.xy.shape == expected.shape
    assert np.abs(turned.xy - expected).max() <= 1e-6
    assert [p.kind for p in turned.points] == [p.kind for p in plan.points]


@pytest.mark.parametrize(
    "region, config",
    [
        (SWATCH, EmbroideryConfig.from_config_id("L2_S5")),
        (Region.circle(30.0), EmbroideryConfig.from_config_id("L2_S5", primitive="concentric")),
        (Region.circle(30.0), EmbroideryConfig(primitive="radial", line_spacing=3.0, stitch_spacing=5.0)),
        (Region.polygon([(0, 0), (80, 0), (60, 40), (20, 40)]), EmbroideryConfig(angle=30.0)),
    ],
    ids=["rectangle", "concentric", "radial", "trapezoid"],
)
def test_translation_equivariance(region, config):
    dx, dy = 12.5, -7.25
    plan = compile_plan(region, config)
    moved = compile_plan(region.translated(dx, dy), config)
    _assert_same_points(moved.points, plan.translated(dx, dy).points)


def test_compile_is_deterministic():
    config = EmbroideryConfig.from_config_id("L1_S5", primitive="concentric")
    first = compile_plan(Region.circle(40.0, (5.0, 5.0)), config, layers=2)
    second = compile_plan(Region.circle(40.0, (5.0, 5.0)), config, layers=2)
    assert first.points == second.points
    assert first.layer_count == 2


# Radiaal

def test_radial_spoke_count():
    config = EmbroideryConfig(primitive="radial", line_spacing=3.14, stitch_spacing=5.0)
    plan = radial_fill(Region.circle(50.0), config)
    assert len(_rows(plan)) == round(2 * math.pi * 50 / 3.14) == 100


def test_radial_zero_amplitude_spokes_are_straight():
    config = EmbroideryConfig(primitive="radial", line_spacing=5.0, stitch_spacing=5.0,
                              waviness_amplitude=0.0)
    region = Region.circle(50.0, (10.0, 20.0))
    plan = radial_fill(region, config)
    rows = _rows(plan)
    count = len(rows)
    for index, row in rows.items():
        angle = 2.0 * math.pi * index / count
        direction = np.array([math.cos(angle), math.sin(angle)])
        for point in row:
            rel = np.array([point.x - 10.0, point.y - 20.0])
            assert abs(rel[0] * direction[1] - rel[1] * direction[0]) <= 1e-6
            assert -1e-6 <= rel @ direction <= 50.0 + 1e-6
        ends = [row[0], row[-1]]
        assert any(math.hypot(p.x - 10.0, p.y - 20.0) == pytest.approx(50.0) for p in ends)


def test_radial_stitch_set_is_rotation_invariant():
    config = EmbroideryConfig(primitive="radial", line_spacing=6.0, stitch_spacing=4.0)
    plan = radial_fill(Region.circle(30.0), config)
    count = len(_rows(plan))
    xy = plan.xy
    turned = rotate_points(xy, 360.0 / count)
    distances = np.hypot(*(turned[:, None, :] - xy[None, :, :]).transpose(2, 0, 1))
    assert distances.min(axis=1).max() <= 1e-6


def test_radial_ordering_and_jumps():
    config = EmbroideryConfig(primitive="radial", line_spacing=10.0, stitch_spacing=5.0)
    plan = radial_fill(Region.circle(20.0), config)
    rows = _rows(plan)
    assert math.hypot(rows[0][0].x, rows[0][0].y) == pytest.approx(0.0)
    assert math.hypot(rows[1][-1].x, rows[1][-1].y) == pytest.approx(0.0)
    # Spaak 1 begint aan de rand met een sprong, spaak 2 stikt door vanuit het midden
    assert rows[1][0].kind == JUMP
    assert rows[2][0].kind == STITCH


def test_radial_needs_circle_and_primitive():
    with pytest.raises(RegionInvalid):
        radial_fill(SWATCH, EmbroideryConfig("radial"))
    with pytest.raises(ConfigMismatch):
        radial_fill(Region.circle(10.0), EmbroideryConfig("concentric"))


# Concentrisch

def test_concentric_rings_on_exact_radii():
    config = EmbroideryConfig("concentric", line_spacing=5.0, stitch_spacing=1.0, waviness_amplitude=0.0)
    plan = concentric_fill(Region.circle(50.0, (3.0, 4.0)), config)
    rows = _rows(plan)
    assert len(rows) == 10
    for index, row in rows.items():
        radii = np.hypot([p.x - 3.0 for p in row], [p.y - 4.0 for p in row])
        assert np.abs(radii - 5.0 * (index + 1)).max() <= 1e-6
        assert row[0].kind == JUMP
        assert all(p.kind == STITCH for p in row[1:])


def test_concentric_wavy_rings_stay_in_band():
    config = EmbroideryConfig("concentric", line_spacing=5.0, stitch_spacing=1.0,
                              waviness_amplitude=1.5, waviness_period=10.0)
    plan = concentric_fill(Region.circle(50.0), config)
    for index, row in _rows(plan).items():
        ring = 5.0 * (index + 1)
        radii = np.hypot([p.x for p in row], [p.y for p in row])
        # Punten liggen op de fijne polyline, net binnen de golf
        assert radii.min() >= ring - 1.5 - 1e-3
        assert radii.max() <= min(ring + 1.5, 50.0) + 1e-6
        assert (row[0].x, row[0].y) == pytest.approx((row[-1].x, row[-1].y), abs=1e-6)


def test_concentric_too_small_radius():
    with pytest.raises(RegionDegenerate):
        concentric_fill(Region.circle(4.9), EmbroideryConfig("concentric", line_spacing=5.0))


@pytest.mark.parametrize(
    "config",
    [
        EmbroideryConfig("concentric", line_spacing=2.0, stitch_spacing=5.0),
        EmbroideryConfig("radial", line_spacing=2.0, stitch_spacing=5.0),
        EmbroideryConfig("linear", line_spacing=2.0, stitch_spacing=15.0),
    ],
    ids=["concentric", "radial", "linear"],
)
def test_stitch_pitch_within_rows(config):
    plan = compile_plan(Region.circle(40.0), config)
    for prev, point in _stitch_moves(plan):
        assert math.hypot(point.x - prev.x, point.y - prev.y) <= config.stitch_spacing + 1e-6


@pytest.mark.parametrize(
    "config",
    [
        EmbroideryConfig.from_config_id("L2_S1", primitive="concentric"),
        EmbroideryConfig(primitive="radial", line_spacing=3.14, stitch_spacing=1.0),
        EmbroideryConfig("concentric", line_spacing=1.0, stitch_spacing=1.0, waviness_period=4.0),
    ],
    ids=["concentric-L2_S1", "radial-S1", "concentric-short-period"],
)
def test_wavy_pitch_never_exceeds_stitch_spacing(config):
    # Golvende ringen en spaken op de standaard golving, r = 50
    plan = compile_plan(Region.circle(50.0), config)
    pitches = [math.hypot(p.x - q.x, p.y - q.y) for q, p in _stitch_moves(plan)]
    assert pitches
    assert max(pitches) <= config.stitch_spacing + 1e-9


def test_inner_rings_never_reach_the_center():
    config = EmbroideryConfig("concentric", line_spacing=1.0, stitch_spacing=1.0,
                              waviness_amplitude=1.5, waviness_period=10.0)
    plan = concentric_fill(Region.circle(20.0), config)
    for index, row in _rows(plan).items():
        ring = 1.0 * (index + 1)
        radii = np.hypot([p.x for p in row], [p.y for p in row])
        assert radii.min() >= 0.5 * ring - 1e-3
        assert radii.max() <= 1.5 * ring + 1e-6


# Knippen

def test_clip_keeps_plan_inside_region():
    plan = linear_fill(SWATCH, EmbroideryConfig.from_config_id("L2_S5"))
    clipped = clip_to_region(plan, Region.rectangle(200.0, 200.0, (-50.0, -50.0)))
    assert clipped.points == plan.points


def test_clip_to_bounding_polygon_is_identity():
    plan = linear_fill(SWATCH, EmbroideryConfig.from_config_id("L2_S15"))
    x0, y0, x1, y1 = plan.bounds
    bounding = Region.polygon([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
    assert clip_to_region(plan, bounding).points == plan.points


def test_clip_line_through_circle():
    plan = StitchPlan([StitchPoint(-10.0, 0.0, JUMP), StitchPoint(10.0, 0.0, STITCH)])
    clipped = clip_to_region(plan, Region.circle(5.0))
    assert [p.kind for p in clipped.points] == [JUMP, STITCH]
    assert (clipped.points[0].x, clipped.points[0].y) == pytest.approx((-5.0, 0.0))
    assert (clipped.points[1].x, clipped.points[1].y) == pytest.approx((5.0, 0.0))


def test_clip_line_leaving_circle():
    plan = StitchPlan([StitchPoint(0.0, 0.0, JUMP), StitchPoint(10.0, 0.0, STITCH),
                       StitchPoint(10.0, 1.0, STITCH)])
    clipped = clip_to_region(plan, Region.circle(5.0))
    assert [(p.x, p.kind) for p in clipped.points] == [(0.0, JUMP), (pytest.approx(5.0), STITCH)]


def test_clip_line_across_notch_splits_into_runs():
    u_shape = Region.polygon([(0, 0), (30, 0), (30, 30), (20, 30), (20, 10), (10, 10), (10, 30), (0, 30)])
    plan = StitchPlan([StitchPoint(-5.0, 20.0, JUMP), StitchPoint(35.0, 20.0, STITCH)])
    clipped = clip_to_region(plan, u_shape)
    assert [p.kind for p in clipped.points] == [JUMP, STITCH, JUMP, STITCH]
    assert [p.x for p in clipped.points] == pytest.approx([0.0, 10.0, 20.0, 30.0])


def test_clip_empty_plan():
    assert clip_to_region(StitchPlan(), SWATCH).points == ()


def test_linear_fill_on_notched_region_never_crosses_notch():
    u_shape = Region.polygon([(0, 0), (30, 0), (30, 30), (20, 30), (20, 10), (10, 10), (10, 30), (0, 30)])
    plan = compile_plan(u_shape, EmbroideryConfig.from_config_id("L1_S5"))
    midpoints = [((a.x + b.x) / 2, (a.y + b.y) / 2) for a, b in _stitch_moves(plan, same_row=False)]
    assert u_shape.covers(midpoints).all()
    assert sum(1 for p in plan.points if p.kind == JUMP) > 1


# Plan

def test_plan_helpers():
    plan = StitchPlan([
        StitchPoint(0.0, 0.0, JUMP), StitchPoint(5.0, 5.0, JUMP), StitchPoint(5.0, 20.0, STITCH),
        StitchPoint(0.25, -0.25, STITCH),
    ])
    assert plan.stitch_count == 2
    assert plan.bounds == (0.0, -0.25, 5.0, 20.0)
    assert plan.max_stitch_length() == pytest.approx(math.hypot(4.75, 20.25))
    assert not plan.is_dst_ready()
    assert [p.kind for p in plan.normalized().points] == [JUMP, STITCH, STITCH]
    assert plan.normalized().points[0].x == 5.0
    assert plan.quantized().points[-1][:2] == (0.3, -0.3)
    assert plan.with_layers(3).layer_count == 3
    with pytest.raises(InvalidConfig):
        plan.with_layers(0)


def test_quantize_rounds_half_away_from_zero():
    assert quantize(0.25) == 3
    assert quantize(-0.25) == -3
    assert quantize(0.24) == 2
    assert quantize(12.1) == 121


def test_dst_ready_depends_on_stitch_spacing():
    assert compile_plan(SWATCH, EmbroideryConfig.from_config_id("L2_S5")).is_dst_ready()
    assert not compile_plan(SWATCH, EmbroideryConfig.from_config_id("L2_S15")).is_dst_ready()


# Validatie

def test_validate_design_operating_point_is_clean():
    config = EmbroideryConfig(line_spacing=1.0, stitch_spacing=5.0)
    assert validate_design(config, get_thread("tex60-nylon"), get_fabric("nonstretch-336")) == []


def test_validate_design_thick_thread():
    config = EmbroideryConfig()
    diagnostics = validate_design(config, get_thread("tex80-nylon"), get_fabric("stretch-390"))
    assert [d.severity for d in diagnostics] == ["error"]
    assert "machine jam risk" in diagnostics[0].message


def test_validate_design_thin_thread():
    diagnostics = validate_design(EmbroideryConfig(), get_thread("tex35-nylon"), get_fabric("stretch-390"))
    assert diagnostics[0].severity == "error"
    assert "too soft" in diagnostics[0].message


def test_validate_design_warnings():
    config = EmbroideryConfig(line_spacing=0.5, stitch_spacing=0.4)
    thread = get_thread("tex60-nylon").on_side("front")
    diagnostics = validate_design(config, thread, get_fabric("nonstretch-167"))
    assert all(d.severity == "warning" for d in diagnostics)
    assert [d.code for d in diagnostics] == ["over-punch", "over-punch", "thread-side", "lightweight-fabric"]
    assert "line spacing 0.5 mm" in diagnostics[1].message


# Eigenschappen op willekeurige gebieden

def _random_region(rng):
    kind = rng.choice(["rectangle", "circle", "polygon"])
    origin = rng.uniform(-100.0, 100.0, size=2)
    if kind == "rectangle":
        return Region.rectangle(rng.uniform(5.0, 60.0), rng.uniform(5.0, 60.0), origin)
    if kind == "circle":
        return Region.circle(rng.uniform(5.0, 30.0), origin)
    count = int(rng.integers(4, 9))
    angles = (np.arange(count) + rng.uniform(0.2, 0.8, size=count)) * 2.0 * math.pi / count
    radii = rng.uniform(8.0, 30.0, size=count)
    return Region.polygon(np.column_stack((origin[0] + radii * np.cos(angles),
                                           origin[1] + radii * np.sin(angles))).tolist())


def _random_config(rng, region):
    line, stitch = parse_config_id(rng.choice(["L2_S1", "L2_S5", "L1_S5", "L2_S15", "L1_S15"]))
    primitive = "linear"
    if region.kind == "circle":
        primitive = rng.choice(["linear", "radial", "concentric"])
    return EmbroideryConfig(primitive=str(primitive), line_spacing=line, stitch_spacing=stitch,
                            angle=float(rng.uniform(0.0, 180.0)) if primitive == "linear" else 0.0)


def test_random_regions_properties():
    rng = np.random.default_rng(20240611)
    for _ in range(100):
        region = _random_region(rng)
        config = _random_config(rng, region)
        plan = compile_plan(region, config)

        assert plan.points
        assert plan.points[0].kind == JUMP
        assert region.covers(plan.xy).all()
        x0, y0, x1, y1 = region.bounds
        assert plan.xy[:, 0].min() >= x0 - 1e-6 and plan.xy[:, 0].max() <= x1 + 1e-6
        assert plan.xy[:, 1].min() >= y0 - 1e-6 and plan.xy[:, 1].max() <= y1 + 1e-6
        for prev, point in _stitch_moves(plan):
            assert math.hypot(point.x - prev.x, point.y - prev.y) <= config.stitch_spacing + 1e-6
        assert compile_plan(region, config).points == plan.points
