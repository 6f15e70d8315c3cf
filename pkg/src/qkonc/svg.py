"""
Self-contained SVG line charts with a logarithmic y axis.
"""

# Imports
# ------------------------------------------------------------

import math
from dataclasses import dataclass, field
from html import escape
from typing import List, Optional, Sequence, Tuple

# Module constants
# ------------------------------------------------------------

WIDTH: int = 640
HEIGHT: int = 440
MARGIN_LEFT: int = 80
MARGIN_RIGHT: int = 170
MARGIN_TOP: int = 40
MARGIN_BOTTOM: int = 60

PALETTE: Tuple[str, ...] = ("#F44336", "#3F51B5", "#4CAF50", "#FF9800")

# Classes
# ------------------------------------------------------------


class SvgDocument(object):
    """
    Minimal SVG builder that accumulates elements as text.
    """

    def __init__(self, width: int, height: int) -> None:
        """
        Initialization.

        Arguments:
            width (int): The width of the document in pixels.
            height (int): The height of the document in pixels.
        """
        self._parts: List[str] = [
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n',
            '<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" '
            'viewBox="0 0 {0} {1}" font-family="sans-serif" font-size="12">\n'.format(width, height),
            '<rect x="0" y="0" width="{}" height="{}" fill="white"/>\n'.format(width, height),
        ]

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: str = "black", extra: str = "") -> None:
        """
        Adds a line segment. `extra` is inserted verbatim as additional attributes.
        """
        self._parts.append('<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="{}" {}/>\n'.format(
            x1, y1, x2, y2, stroke, extra))

    def polyline(self, points: Sequence[Tuple[float, float]], stroke: str, extra: str = "") -> None:
        """
        Adds an unfilled polyline through `points`.
        """
        coordinates = " ".join("{:.2f},{:.2f}".format(x, y) for x, y in points)
        self._parts.append('<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5" {}/>\n'.format(
            coordinates, stroke, extra))

    def circle(self, x: float, y: float, r: float, fill: str) -> None:
        """
        Adds a filled circle marker.
        """
        self._parts.append('<circle cx="{:.2f}" cy="{:.2f}" r="{}" fill="{}"/>\n'.format(x, y, r, fill))

    def text(self, x: float, y: float, content: str, extra: str = "") -> None:
        """
        Adds a text element; `content` is XML escaped.
        """
        self._parts.append('<text x="{:.2f}" y="{:.2f}" {}>{}</text>\n'.format(x, y, extra, escape(content)))

    def get_svg(self) -> str:
        """
        Returns the complete document.
        """
        return "".join(self._parts) + "</svg>\n"


@dataclass
class Series(object):
    """
    One data series of a chart.
    """

    label: str
    points: List[Tuple[float, float]] = field(default_factory=list)

    markers: bool = True
    """Whether the data points are drawn as dots."""

    dashed: bool = False


class LogPlot(object):
    """
    A line chart with a linear x axis and a base-10 logarithmic y axis.

    Non-positive y values cannot be shown on a log axis and are skipped.
    """

    # Initialization
    # ------------------------------------------------------------

    def __init__(self, title: str, x_label: str, y_label: str) -> None:
        """
        Initialization.

        Arguments:
            title (str): The chart title.
            x_label (str): The label of the x axis.
            y_label (str): The label of the y axis.
        """
        self.title: str = title
        self.x_label: str = x_label
        self.y_label: str = y_label
        self.series: List[Series] = []

    # Public methods
    # ------------------------------------------------------------

    def add(self, series: Series) -> None:
        """
        Adds a series to the chart. Series are drawn and listed in the legend in insertion order.
        """
        self.series.append(series)

    def render(self) -> str:
        """
        Renders the chart. A chart without plottable points is rendered with empty axes.
        """
        doc = SvgDocument(WIDTH, HEIGHT)
        left, top = MARGIN_LEFT, MARGIN_TOP
        right, bottom = WIDTH - MARGIN_RIGHT, HEIGHT - MARGIN_BOTTOM

        visible = [[(x, y) for x, y in s.points if y > 0 and math.isfinite(y)] for s in self.series]
        xs = [x for points in visible for x, _ in points]
        ys = [y for points in visible for _, y in points]

        x_min, x_max = (min(xs), max(xs)) if xs else (0.0, 1.0)
        if x_max == x_min:
            x_min, x_max = x_min - 1, x_max + 1
        decade_min = math.floor(math.log10(min(ys))) if ys else 0
        decade_max = math.ceil(math.log10(max(ys))) if ys else 1
        if decade_max == decade_min:
            decade_max += 1

        def to_x(x: float) -> float:
            return left + (x - x_min) / (x_max - x_min) * (right - left)

        def to_y(y: float) -> float:
            return bottom - (math.log10(y) - decade_min) / (decade_max - decade_min) * (bottom - top)

        doc.text(WIDTH / 2, top / 2 + 4, self.title, 'text-anchor="middle" font-size="14"')
        doc.line(left, bottom, right, bottom)
        doc.line(left, top, left, bottom)
        doc.text((left + right) / 2, HEIGHT - 15, self.x_label, 'text-anchor="middle"')
        doc.text(20, (top + bottom) / 2, self.y_label,
                 'text-anchor="middle" transform="rotate(-90 20 {:.2f})"'.format((top + bottom) / 2))

        for decade in range(decade_min, decade_max + 1):
            y = to_y(10.0 ** decade)
            doc.line(left - 5, y, left, y)
            doc.line(left, y, right, y, "#E0E0E0")
            doc.text(left - 8, y + 4, "1e{}".format(decade), 'text-anchor="end"')
            if decade < decade_max:
                for minor in range(2, 10):
                    doc.line(left - 3, to_y(minor * 10.0 ** decade), left, to_y(minor * 10.0 ** decade))

        for x in _x_ticks(xs):
            doc.line(to_x(x), bottom, to_x(x), bottom + 5)
            doc.text(to_x(x), bottom + 18, "{:g}".format(x), 'text-anchor="middle"')

        for index, (s, points) in enumerate(zip(self.series, visible)):
            color = PALETTE[index % len(PALETTE)]
            mapped = [(to_x(x), to_y(y)) for x, y in points]
            if len(mapped) > 1:
                doc.polyline(mapped, color, 'stroke-dasharray="6 4"' if s.dashed else "")
            if s.markers:
                for x, y in mapped:
                    doc.circle(x, y, 3, color)

            legend_y = top + 10 + 20 * index
            doc.line(right + 15, legend_y, right + 40, legend_y, color,
                     'stroke-width="2"' + (' stroke-dasharray="6 4"' if s.dashed else ""))
            doc.text(right + 46, legend_y + 4, s.label)

        return doc.get_svg()


# Functions
# ------------------------------------------------------------


def _x_ticks(xs: Sequence[float]) -> List[float]:
    """
    Returns the x tick positions: every distinct data x, thinned to at most 12 ticks.
    """
    distinct = sorted(set(xs))
    step = max(1, math.ceil(len(distinct) / 12))
    return distinct[::step]


def fitted_points(xs: Sequence[float],
                  C: float,
                  alpha: float,
                  samples: Optional[int] = None) -> List[Tuple[float, float]]:
    """
    Samples C e^{-alpha x} over the range of `xs` for drawing a fitted line.
    """
    if not xs:
        return []
    lo, hi = min(xs), max(xs)
    samples = samples or max(2, int(hi - lo) * 4 + 1)
    return [(x, C * math.exp(-alpha * x)) for x in (lo + (hi - lo) * i / (samples - 1) for i in range(samples))]
