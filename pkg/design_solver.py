#!/usr/bin/env python3
"""
Design Solver
Omgekeerd ontwerp: doorloop het raster (config x stof x lagen), toets elke
kandidaat aan de eisen via de kalibratietabel en geef het Pareto front
over (fabricagetijd, lagen, steken).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from calibration_table import (
    MAX_LAYERS,
    MOLD_DIAMETERS,
    FabricSpec,
    PropertyQuery,
    affordance_hints,
    classify_formability,
    default_table,
    get_fabric,
    predict_compression,
    predict_tensile,
    primary_fabrics,
    time_model,
)
from errors import InsufficientCalibration, InvalidQuery, NonStretchFabric, UnknownConfig
from stitch_geometry import (
    GRID_CONFIG_IDS,
    EmbroideryConfig,
    Region,
    compile_plan,
    parse_config_id,
)

logger = logging.getLogger(__name__)

FABRIC_CONSTRAINTS = ("any", "non-stretch", "stretch")
FORMABILITY_INTENTS = ("none", "single-curve", "double-curve")
DEFAULT_MOLD_DIAMETER = 30.0

# Referentieplannen voor de doelfuncties
REFERENCE_SWATCH_MM = 100.0
REFERENCE_RADIUS_MM = 50.0


@dataclass(frozen=True)
class Requirements:
    """
    Eisen voor het omgekeerde ontwerp

    min_compression en max_tensile zijn (kracht N, bij verplaatsing mm) of None.
    """

    fabric_constraint: str = "any"
    min_compression: tuple = None
    max_tensile: tuple = None
    formability: str = "none"
    mold_diameter: float = None
    geometry_tag: str = "swatch-100"
    max_layers: int = MAX_LAYERS

    def __post_init__(self):
        if self.min_compression is None and self.max_tensile is None and self.formability == "none":
            raise InvalidQuery("no constraint present")
        for label, constraint in (("min_compression", self.min_compression),
                                  ("max_tensile", self.max_tensile)):
            if constraint is None:
                continue
            force, displacement = constraint
            if not (math.isfinite(force) and math.isfinite(displacement)):
                raise InvalidQuery(f"{label} values must be finite")
            if displacement < 0.0 or force < 0.0:
                raise InvalidQuery(f"{label} force and displacement must be >= 0")
        if self.formability not in FORMABILITY_INTENTS:
            raise InvalidQuery(f"formability must be one of {FORMABILITY_INTENTS}")
        if self.mold_diameter is not None and self.mold_diameter not in MOLD_DIAMETERS:
            raise InvalidQuery(f"mold diameter must be one of 10, 20, 30 mm, got {self.mold_diameter:g}")
        if not 1 <= self.max_layers <= MAX_LAYERS:
            raise InvalidQuery(f"max_layers must be within 1..{MAX_LAYERS}")
        if self.fabric_constraint not in FABRIC_CONSTRAINTS:
            get_fabric(self.fabric_constraint)

    @property
    def primitive(self):
        return "concentric" if self.formability == "double-curve" else "linear"

    def admissible_fabrics(self):
        if self.fabric_constraint == "any":
            return primary_fabrics()
        if self.fabric_constraint == "non-stretch":
            return [f for f in primary_fabrics() if not f.is_stretch]
        if self.fabric_constraint == "stretch":
            return [f for f in primary_fabrics() if f.is_stretch]
        return [get_fabric(self.fabric_constraint)]

    def describe(self):
        parts = [f"fabric {self.fabric_constraint}", f"geometry {self.geometry_tag}"]
        if self.min_compression:
            parts.append(f">= {self.min_compression[0]:g} N compression at {self.min_compression[1]:g} mm")
        if self.max_tensile:
            parts.append(f"<= {self.max_tensile[0]:g} N tensile at {self.max_tensile[1]:g} mm")
        if self.formability != "none":
            parts.append(f"{self.formability} formability")
        parts.append(f"max {self.max_layers} layers")
        return ", ".join(parts)


@dataclass(frozen=True)
class Objectives:
    minutes: float
    layers: int
    stitches: int

    def as_tuple(self):
        return (self.minutes, self.layers, self.stitches)


@dataclass(frozen=True)
class Violation:
    constraint: str
    required: float
    actual: float
    relative: float

    def describe(self):
        if self.constraint == "min_compression":
            return f"compression {self.actual:.4g} N below required {self.required:g} N"
        if self.constraint == "max_tensile":
            return f"tensile {self.actual:.4g} N above allowed {self.required:g} N"
        if self.constraint == "fabric":
            return "double-curve formability needs a stretch fabric"
        return "formability classified poor"


@dataclass(frozen=True)
class CandidateDesign:
    config_id: str
    fabric: str
    layers: int
    primitive: str
    predictions: dict = field(default_factory=dict)
    formability: object = None
    objectives: Objectives = None
    violations: tuple = ()
    missing_calibration: str = None
    explanation: str = ""

    @property
    def evaluated(self):
        return self.missing_calibration is None

    @property
    def feasible(self):
        return self.evaluated and not self.violations

    @property
    def label(self):
        return f"{self.config_id} x{self.layers} {self.fabric}"

    def sort_key(self):
        line, stitch = parse_config_id(self.config_id)
        return (self.layers, -line, -stitch, self.fabric)

    def to_dict(self):
        data = {
            "config": self.config_id,
            "fabric": self.fabric,
            "layers": self.layers,
            "primitive": self.primitive,
            "predictions": {
                name: {"force_n": p.force_n, "upper_bound": p.upper_bound, "derived": p.derived}
                for name, p in self.predictions.items()
            },
        }
        if self.formability is not None:
            data["formability"] = self.formability.classification
            data["warnings"] = list(self.formability.warnings)
        if self.objectives is not None:
            data["objectives"] = {
                "minutes": round(self.objectives.minutes, 6),
                "layers": self.objectives.layers,
                "stitches": self.objectives.stitches,
            }
        if self.violations:
            data["violations"] = [v.describe() for v in self.violations]
        if self.missing_calibration:
            data["missing_calibration"] = self.missing_calibration
        return data


@dataclass(frozen=True)
class SolveResult:
    requirements: Requirements
    feasible: bool
    pareto_front: tuple
    rejected_count: int
    skipped_for_missing_calibration: tuple
    candidates: tuple = ()
    nearest_miss: CandidateDesign = None

    @property
    def binding_constraint(self):
        if self.nearest_miss is None or not self.nearest_miss.violations:
            return None
        return max(self.nearest_miss.violations, key=lambda v: v.relative)

    def to_dict(self):
        data = {
            "requirements": self.requirements.describe(),
            "feasible": self.feasible,
            "pareto_front": [c.to_dict() for c in self.pareto_front],
            "rejected_count": self.rejected_count,
            "skipped_for_missing_calibration": [
                {"config": c.config_id, "fabric": c.fabric, "layers": c.layers,
                 "reason": c.missing_calibration}
                for c in self.skipped_for_missing_calibration
            ],
        }
        if not self.feasible:
            data["reason"] = "infeasible"
            if self.nearest_miss is not None:
                data["nearest_miss"] = self.nearest_miss.to_dict()
                data["binding_constraint"] = self.binding_constraint.describe()
        return data


# Doelfuncties

@lru_cache(maxsize=64)
def reference_stitch_count(config_id, primitive):
    """Steken per laag op het referentieplan voor deze config"""
    config = EmbroideryConfig.from_config_id(config_id, primitive=primitive)
    if primitive == "linear":
        region = Region.rectangle(REFERENCE_SWATCH_MM, REFERENCE_SWATCH_MM)
    else:
        region = Region.circle(REFERENCE_RADIUS_MM)
    return compile_plan(region, config).stitch_count


def _objectives(config_id, primitive, layers, model):
    per_layer = reference_stitch_count(config_id, primitive)
    return Objectives(model.minutes(per_layer, layers), layers, per_layer * layers)


def dominates(a, b):
    """a domineert b: nergens slechter, ergens beter (alles minimaliseren)"""
    first, second = a.as_tuple(), b.as_tuple()
    return all(x <= y for x, y in zip(first, second)) and any(x < y for x, y in zip(first, second))


def pareto_front(candidates):
    """Niet-gedomineerde kandidaten in de vaste volgorde"""
    front = [
        c for c in candidates
        if not any(dominates(other.objectives, c.objectives) for other in candidates if other is not c)
    ]
    return sorted(front, key=CandidateDesign.sort_key)


# Evaluatie

def _relative(excess, reference):
    return excess / reference if reference > 0 else excess


def _explain(req, config_id, fabric, layers, predictions):
    lines = []
    if "compression" in predictions:
        hint = affordance_hints("stiffness")
        lines.append(
            f"stiffness <- {', '.join(hint.parameters)}: {predictions['compression']} "
            f"at {req.min_compression[1]:g} mm with {layers} layer(s)"
        )
    if "tensile" in predictions:
        hint = affordance_hints("stretchability")
        lines.append(
            f"stretchability <- {', '.join(hint.parameters)}: {predictions['tensile']} "
            f"at {req.max_tensile[1]:g} mm"
        )
    if req.formability != "none":
        hint = affordance_hints("formability")
        stretch_class = "stretch" if fabric.is_stretch else "non-stretch"
        recommended = hint.recommended_configs.get(stretch_class, ())
        lines.append(
            f"formability <- {', '.join(hint.parameters)}: {req.primitive} layout on "
            f"{stretch_class} fabric; formability-focused configs {', '.join(recommended)}"
        )
    return "; ".join(lines)


def evaluate_candidate(req, config_id, fabric, layers, table=None, model=None):
    """
    Voorspel de eigenschappen van één kandidaat en toets de eisen

    Ontbrekende kalibratie wordt vastgelegd in missing_calibration; er
    wordt dan niets geschat.
    """
    table = table or default_table()
    model = model or time_model(table)
    fabric = fabric if isinstance(fabric, FabricSpec) else get_fabric(fabric)
    primitive = req.primitive
    predictions = {}
    violations = []
    formability = None

    try:
        if req.min_compression is not None:
            required, at = req.min_compression
            query = PropertyQuery(config_id, fabric.name, layers, at, geometry_tag=req.geometry_tag)
            prediction = predict_compression(query, table)
            predictions["compression"] = prediction
            if prediction.force_n < required:
                violations.append(Violation("min_compression", required, prediction.force_n,
                                            _relative(required - prediction.force_n, required)))

        if req.max_tensile is not None:
            allowed, at = req.max_tensile
            query = PropertyQuery(config_id, fabric.name, layers, at, geometry_tag=req.geometry_tag)
            prediction = predict_tensile(query, table)
            predictions["tensile"] = prediction
            if prediction.force_n > allowed:
                violations.append(Violation("max_tensile", allowed, prediction.force_n,
                                            _relative(prediction.force_n - allowed, allowed)))
    except (UnknownConfig, InsufficientCalibration, NonStretchFabric) as e:
        return CandidateDesign(config_id, fabric.name, layers, primitive,
                               predictions=predictions, missing_calibration=str(e))

    if req.formability != "none":
        mold = req.mold_diameter if req.mold_diameter is not None else DEFAULT_MOLD_DIAMETER
        formability = classify_formability(config_id, fabric, mold, layers)
        if req.formability == "double-curve" and not fabric.is_stretch:
            violations.append(Violation("fabric", 1.0, 0.0, 1.0))
        if not formability.is_good:
            violations.append(Violation("formability", 1.0, 0.0, 1.0))

    return CandidateDesign(
        config_id, fabric.name, layers, primitive,
        predictions=predictions,
        formability=formability,
        objectives=_objectives(config_id, primitive, layers, model),
        violations=tuple(violations),
        explanation=_explain(req, config_id, fabric, layers, predictions),
    )


def candidate_grid(req):
    """(config_id, fabric, layers) in de vaste opsommingsvolgorde"""
    return [
        (config_id, fabric, layers)
        for config_id in GRID_CONFIG_IDS
        for fabric in req.admissible_fabrics()
        for layers in range(1, req.max_layers + 1)
    ]


def enumerate_candidates(req, table=None, workers=1):
    """
    Alle rasterkandidaten met voorspellingen

    Args:
        req: Requirements
        table: CalibrationTable (default: meegeleverde tabel)
        workers: Aantal threads voor de evaluatie (1 = sequentieel)

    Returns:
        Lijst CandidateDesign in opsommingsvolgorde
    """
    table = table or default_table()
    model = time_model(table)
    grid = candidate_grid(req)

    def evaluate(item):
        config_id, fabric, layers = item
        return evaluate_candidate(req, config_id, fabric, layers, table, model)

    if workers > 1:
        # Referentieplannen eerst, zodat de threads alleen uit de cache lezen
        for config_id in GRID_CONFIG_IDS:
            reference_stitch_count(config_id, req.primitive)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            candidates = list(pool.map(evaluate, grid))
    else:
        candidates = [evaluate(item) for item in grid]

    logger.debug(f"{len(candidates)} kandidaten geëvalueerd")
    return candidates


def solve(req, table=None, workers=1):
    """
    Zoek de minimale ontwerpen die aan alle eisen voldoen

    Returns:
        SolveResult; bij geen oplossing feasible=False met de dichtstbijzijnde misser
    """
    candidates = enumerate_candidates(req, table, workers)
    skipped = tuple(c for c in candidates if not c.evaluated)
    evaluated = [c for c in candidates if c.evaluated]
    feasible = [c for c in evaluated if c.feasible]
    rejected = [c for c in evaluated if not c.feasible]

    front = tuple(pareto_front(feasible))
    nearest = None
    if not front and rejected:
        nearest = min(
            enumerate(rejected),
            key=lambda item: (sum(v.relative for v in item[1].violations), item[0]),
        )[1]

    if front:
        logger.info(f"✓ {len(front)} ontwerp(en) op het Pareto front ({len(feasible)} haalbaar)")
    else:
        logger.info(f"⚠ Geen haalbaar ontwerp voor: {req.describe()}")
    if skipped:
        logger.info(f"⚠ {len(skipped)} kandidaten overgeslagen wegens ontbrekende kalibratie")

    return SolveResult(
        requirements=req,
        feasible=bool(front),
        pareto_front=front,
        rejected_count=len(rejected),
        skipped_for_missing_calibration=skipped,
        candidates=tuple(candidates),
        nearest_miss=nearest,
    )


def _prediction_cell(candidate):
    cells = [f"{name} {prediction}" for name, prediction in candidate.predictions.items()]
    if candidate.formability is not None:
        cells.append(f"formability {candidate.formability.classification}")
    return ", ".join(cells) or "-"


def feasibility_report(result):
    """Leesbaar rapport: front, misser en toelichting"""
    lines = [f"Requirements: {result.requirements.describe()}"]
    if result.feasible:
        lines.append(f"Result: feasible, {len(result.pareto_front)} design(s) on the Pareto front")
        lines.append("")
        lines.append(f"{'config':<10} {'fabric':<15} {'layers':>6} {'minutes':>8} {'stitches':>9}  predictions")
        for candidate in result.pareto_front:
            objectives = candidate.objectives
            lines.append(
                f"{candidate.config_id:<10} {candidate.fabric:<15} {candidate.layers:>6} "
                f"{objectives.minutes:>8.1f} {objectives.stitches:>9}  {_prediction_cell(candidate)}"
            )
        lines.append("")
        for candidate in result.pareto_front:
            lines.append(f"- {candidate.label}: {candidate.explanation}")
            if candidate.formability is not None:
                lines.extend(f"  warning: {w}" for w in candidate.formability.warnings)
    else:
        lines.append("Result: infeasible")
        if result.nearest_miss is not None:
            miss = result.nearest_miss
            lines.append(f"Nearest miss: {miss.label} ({_prediction_cell(miss)})")
            for violation in miss.violations:
                lines.append(f"  violated: {violation.describe()}")
            lines.append(f"Binding constraint: {result.binding_constraint.describe()}")
            lines.append(f"Hints: {miss.explanation}")
        else:
            lines.append("No candidate could be evaluated against the calibration table.")

    lines.append("")
    lines.append(f"Rejected: {result.rejected_count}; "
                 f"skipped for missing calibration: {len(result.skipped_for_missing_calibration)}")
    return "\n".join(lines) + "\n"


# Test functie
if __name__ == "__main__":
    print("Design Solver Test")
    print("=" * 50)

    splint = Requirements(fabric_constraint="non-stretch", min_compression=(6.4, 5.0),
                          geometry_tag="splint")
    print(feasibility_report(solve(splint)))

    print("✓ Test voltooid")
