#!/usr/bin/env python3
"""
SVG Preview
Voorvertoning van een StitchPlan als SVG: steekrijen als polylines,
overgangen tussen rijen als dunne lijnen en sprongen gestippeld.
1 user unit = 1 mm; de y-as wordt omgedraaid (plan y omhoog, SVG y omlaag).
"""

import io
import logging

import svgwrite

from stitch_geometry import JUMP

logger = logging.getLogger(__name__)


class SvgPreview:
    """Bouwt een SVG document voor een steekplan"""

    MARGIN_MM = 5.0
    MAX_DOTS = 2000
    DOT_RADIUS = 0.15
    STITCH_WIDTH = 0.2
    CONNECTOR_WIDTH = 0.05
    JUMP_WIDTH = 0.1
    JUMP_DASH = "0.8,0.4"

    STITCH_COLOR = "black"
    CONNECTOR_COLOR = "gray"
    JUMP_COLOR = "red"

    def __init__(self, margin=MARGIN_MM, max_dots=MAX_DOTS):
        self.margin = margin
        self.max_dots = max_dots

    def _runs(self, points):
        """
        Splits het pad in rijen

        Returns:
            (runs, connectors, jumps): lijsten met puntreeksen en segmenten
        """
        runs, connectors, jumps = [], [], []
        current = []
        for point in points:
            if not current:
                current = [point]
                continue
            prev = current[-1]
            if point.kind == JUMP:
                jumps.append((prev, point))
            elif point.row != prev.row:
                connectors.append((prev, point))
            else:
                current.append(point)
                continue
            runs.append(current)
            current = [point]
        if current:
            runs.append(current)
        return [run for run in runs if len(run) > 1], connectors, jumps

    def render(self, plan):
        """
        Genereer het SVG document

        Args:
            plan: StitchPlan

        Returns:
            SVG tekst
        """
        margin = self.margin
        if plan.points:
            min_x, min_y, max_x, max_y = plan.bounds
        else:
            min_x = min_y = max_x = max_y = 0.0
        width = (max_x - min_x) + 2 * margin
        height = (max_y - min_y) + 2 * margin

        def to_svg(point):
            return (round(point.x - min_x + margin, 3), round(max_y - point.y + margin, 3))

        drawing = svgwrite.Drawing(
            size=(f"{round(width, 3)}mm", f"{round(height, 3)}mm"),
            viewBox=f"0 0 {round(width, 3)} {round(height, 3)}",
            profile="full",
            debug=False,
        )

        runs, connectors, jumps = self._runs(plan.points)

        stitches = drawing.g(id="stitches", fill="none", stroke=self.STITCH_COLOR,
                             stroke_width=self.STITCH_WIDTH, stroke_linejoin="round")
        for run in runs:
            stitches.add(drawing.polyline([to_svg(p) for p in run]))
        drawing.add(stitches)

        connector_group = drawing.g(id="connectors", stroke=self.CONNECTOR_COLOR,
                                    stroke_width=self.CONNECTOR_WIDTH)
        for start, end in connectors:
            connector_group.add(drawing.line(to_svg(start), to_svg(end)))
        drawing.add(connector_group)

        jump_group = drawing.g(id="jumps", stroke=self.JUMP_COLOR, stroke_width=self.JUMP_WIDTH,
                               stroke_dasharray=self.JUMP_DASH)
        for start, end in jumps:
            jump_group.add(drawing.line(to_svg(start), to_svg(end)))
        drawing.add(jump_group)

        if 0 < len(plan.points) <= self.max_dots:
            dots = drawing.g(id="needle-points", fill=self.STITCH_COLOR)
            for point in plan.points:
                dots.add(drawing.circle(center=to_svg(point), r=self.DOT_RADIUS))
            drawing.add(dots)

        buffer = io.StringIO()
        drawing.write(buffer)
        logger.debug(f"✓ SVG: {len(runs)} rijen, {len(jumps)} sprongen")
        return buffer.getvalue() + "\n"


def write_svg(plan, margin=SvgPreview.MARGIN_MM):
    return SvgPreview(margin=margin).render(plan)


# Test functie
if __name__ == "__main__":
    from stitch_geometry import EmbroideryConfig, Region, compile_plan

    print("SVG Preview Test")
    print("=" * 50)

    plan = compile_plan(Region.rectangle(100.0, 100.0), EmbroideryConfig.from_config_id("L2_S15"))
    svg = write_svg(plan)
    print(f"  {svg.count('<polyline')} polylines, {len(svg)} tekens")
    print("\n✓ Test voltooid")
