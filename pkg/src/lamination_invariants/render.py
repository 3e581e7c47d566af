"""Minimal SVG chord diagrams of portraits and parameter wakes."""

from math import cos, pi, sin
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from loguru import logger

from .angles import Angle, DirectedArc, complementary_arcs
from .atlas import Atlas
from .config import settings
from .exceptions import LaminationError, PortraitError
from .portraits import OrbitPortrait, characteristic_arc, critical_arc

SVG_NS = "http://www.w3.org/2000/svg"
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]
STYLE = """
circle.boundary { fill: none; stroke: #444; stroke-width: 1.5; }
line.chord { stroke-width: 1.5; }
path.characteristic-arc { fill: none; stroke: #000; stroke-width: 5; stroke-opacity: 0.35; }
path.critical-arc { fill: none; stroke: #000; stroke-width: 2; stroke-dasharray: 6 4; }
"""


def _attrs(props: Dict[str, object]) -> str:
    return " ".join(f'{key.rstrip("_").replace("_", "-")}="{value}"' for key, value in props.items())


def _element(tag: str, **props) -> str:
    return f"<{tag} {_attrs(props)}/>"


class ChordDiagram:
    """Unit circle in a square canvas; angles run counterclockwise from the positive x-axis."""

    def __init__(self, size: Optional[int] = None):
        self.size = size or settings.render_size
        self.center = self.size / 2
        self.radius = self.size * 0.45
        self.elements: List[str] = [
            _element("circle", class_="boundary", cx=self._fmt(self.center), cy=self._fmt(self.center),
                     r=self._fmt(self.radius))
        ]

    @staticmethod
    def _fmt(x: float) -> str:
        return f"{x:.3f}"

    def point(self, theta: Angle) -> Tuple[str, str]:
        phase = 2 * pi * float(theta.value)
        return self._fmt(self.center + self.radius * cos(phase)), self._fmt(self.center - self.radius * sin(phase))

    def chord(self, a: Angle, b: Angle, color: str, title: str = "") -> None:
        (x1, y1), (x2, y2) = self.point(a), self.point(b)
        line = _element("line", class_="chord", x1=x1, y1=y1, x2=x2, y2=y2, stroke=color)
        if title:
            line = line[:-2] + f"><title>{title}</title></line>"
        self.elements.append(line)

    def arc(self, arc: DirectedArc, css_class: str) -> None:
        (x1, y1), (x2, y2) = self.point(arc.start), self.point(arc.end)
        large = 1 if arc.length > Angle(1, 2).value else 0
        radius = self._fmt(self.radius)
        # sweep flag 0 draws counterclockwise on screen because the y axis points down
        self.elements.append(
            _element("path", class_=css_class, d=f"M {x1} {y1} A {radius} {radius} 0 {large} 0 {x2} {y2}")
        )

    def to_svg(self) -> str:
        body = "\n  ".join(self.elements)
        return (
            f'<svg xmlns="{SVG_NS}" width="{self.size}" height="{self.size}" '
            f'viewBox="0 0 {self.size} {self.size}">\n'
            f"  <style>{STYLE}</style>\n  {body}\n</svg>\n"
        )


def _class_chords(group: Tuple[Angle, ...]) -> List[Tuple[Angle, Angle]]:
    if len(group) < 2:
        return []
    if len(group) == 2:
        return [(group[0], group[1])]
    return [(arc.start, arc.end) for arc in complementary_arcs(group)]


def render_portrait_svg(portrait: OrbitPortrait, size: Optional[int] = None) -> str:
    """One color per class; the characteristic arc highlighted, the critical arc dashed."""
    if portrait.valence < 2:
        raise PortraitError(f"portrait {portrait} has no chords to draw")
    diagram = ChordDiagram(size)
    for index, group in enumerate(portrait.classes):
        color = PALETTE[index % len(PALETTE)]
        for a, b in _class_chords(group):
            diagram.chord(a, b, color, title=f"A{index + 1}: {a} - {b}")
    diagram.arc(characteristic_arc(portrait), "characteristic-arc")
    diagram.arc(critical_arc(portrait), "critical-arc")
    return diagram.to_svg()


def render_wakes_svg(atlas: Atlas, max_period: Optional[int] = None, size: Optional[int] = None) -> str:
    """Root-pair chords of every component up to max_period, colored by period."""
    max_period = max_period or atlas.max_period
    if max_period > atlas.max_period:
        raise LaminationError(f"max_period {max_period} exceeds the atlas bound {atlas.max_period}")
    diagram = ChordDiagram(size)
    for component in atlas:
        if component.is_main_cardioid or component.period > max_period:
            continue
        low, high = component.root_pair
        diagram.chord(low, high, PALETTE[component.period % len(PALETTE)], title=str(component.address))
    return diagram.to_svg()


def count_chords(svg: str) -> int:
    return svg.count('class="chord"')


def write_svg(svg: str, out: Union[str, Path]) -> Path:
    path = Path(out)
    try:
        path.write_text(svg, encoding="utf-8")
    except OSError as e:
        logger.error(f"Error writing {path}: {str(e)}")
        raise LaminationError(f"cannot write {path}: {e}") from e
    logger.info(f"Wrote {count_chords(svg)} chords to {path}")
    return path
