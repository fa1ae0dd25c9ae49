"""Static SVG scatter plots of word maps."""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from xml.sax.saxutils import escape, quoteattr

from .corpus import XML_ILLEGAL
from .errors import ArgumentError, ValidationError

SVG_NS = "http://www.w3.org/2000/svg"
MARGIN = 0.05
POINT_RADIUS = 2.5
BASE_COLOR = "#8c8c8c"
PALETTE = (
    "#d62728",
    "#1f77b4",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#17becf",
    "#e377c2",
    "#8c564b",
)


class LabelPolicy(str, Enum):
    ALL = "all"
    TOP = "top"
    NONE = "none"


@dataclass(frozen=True)
class PlotPoint:
    """A labeled point in unit-square coordinates."""

    label: str
    x: float
    y: float


@dataclass(frozen=True)
class HighlightGroup:
    name: str
    labels: frozenset[str]
    color: str


@dataclass(frozen=True)
class PlotSpec:
    """Everything render_svg needs; points are listed most frequent first."""

    points: tuple[PlotPoint, ...]
    highlight_groups: tuple[HighlightGroup, ...] = ()
    width: int = 800
    height: int = 800
    label_policy: LabelPolicy = LabelPolicy.TOP
    label_top_n: int = 100
    title: str | None = None

    def validate(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ArgumentError(f"Canvas must be positive, got {self.width}x{self.height}")
        texts = [point.label for point in self.points]
        texts.extend(group.name for group in self.highlight_groups)
        if self.title is not None:
            texts.append(self.title)
        for text in texts:
            if XML_ILLEGAL.search(text):
                raise ValidationError(f"Text {text!r} contains characters XML cannot carry")

        seen: set[str] = set()
        for point in self.points:
            if point.label in seen:
                raise ValidationError(f"Duplicate point label: {point.label}")
            seen.add(point.label)
        for group in self.highlight_groups:
            unknown = sorted(group.labels - seen)
            if unknown:
                raise ValidationError(
                    f"Highlight group {group.name} references unknown labels: "
                    f"{', '.join(unknown[:5])}"
                )


def make_highlight_groups(groups: Mapping[str, Iterable[str]]) -> tuple[HighlightGroup, ...]:
    """Assign palette colors to named label sets in the given order."""
    return tuple(
        HighlightGroup(name=name, labels=frozenset(labels), color=PALETTE[i % len(PALETTE)])
        for i, (name, labels) in enumerate(groups.items())
    )


def _labeled(spec: PlotSpec) -> set[int]:
    if spec.label_policy is LabelPolicy.ALL:
        return set(range(len(spec.points)))
    if spec.label_policy is LabelPolicy.TOP:
        return set(range(min(spec.label_top_n, len(spec.points))))
    return set()


def render_svg(spec: PlotSpec) -> str:
    """Render a scatter plot as an SVG 1.1 document.

    Args:
        spec: Points, highlight groups, canvas and label policy

    Returns:
        SVG text; identical specs give identical bytes
    """
    spec.validate()
    width, height = spec.width, spec.height
    left, right = MARGIN * width, (1.0 - MARGIN) * width
    top, bottom = MARGIN * height, (1.0 - MARGIN) * height

    def to_canvas(point: PlotPoint) -> tuple[str, str]:
        cx = left + point.x * (right - left)
        cy = bottom - point.y * (bottom - top)
        return f"{cx:.3f}", f"{cy:.3f}"

    color_of: dict[str, str] = {}
    group_of: dict[str, str] = {}
    for group in spec.highlight_groups:
        for label in sorted(group.labels):
            color_of.setdefault(label, group.color)
            group_of.setdefault(label, group.name)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="{SVG_NS}" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    if spec.title:
        lines.append(f"<title>{escape(spec.title)}</title>")
    lines.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>')
    lines.append(
        f'<rect x="{left:.3f}" y="{top:.3f}" width="{right - left:.3f}" '
        f'height="{bottom - top:.3f}" fill="none" stroke="#dddddd"/>'
    )

    # Highlighted points are drawn last so they stay visible
    order = sorted(range(len(spec.points)), key=lambda i: spec.points[i].label in color_of)
    lines.append('<g class="points">')
    for i in order:
        point = spec.points[i]
        cx, cy = to_canvas(point)
        color = color_of.get(point.label, BASE_COLOR)
        group = group_of.get(point.label)
        group_attr = f" data-group={quoteattr(group)}" if group else ""
        lines.append(
            f'<circle cx="{cx}" cy="{cy}" r="{POINT_RADIUS}" fill="{color}"{group_attr}>'
            f"<title>{escape(point.label)}</title></circle>"
        )
    lines.append("</g>")

    labeled = _labeled(spec)
    lines.append('<g class="labels" font-family="sans-serif" font-size="10">')
    for i, point in enumerate(spec.points):
        if i not in labeled:
            continue
        cx, cy = to_canvas(point)
        color = color_of.get(point.label, "#333333")
        lines.append(
            f'<text x="{cx}" y="{cy}" dx="3" dy="-3" fill="{color}">{escape(point.label)}</text>'
        )
    lines.append("</g>")

    if spec.highlight_groups:
        lines.append('<g class="legend" font-family="sans-serif" font-size="12">')
        for row, group in enumerate(spec.highlight_groups):
            y = top + 6 + row * 16
            lines.append(
                f'<rect x="{left + 6:.3f}" y="{y:.3f}" width="10" height="10" fill="{group.color}"/>'
            )
            lines.append(
                f'<text x="{left + 20:.3f}" y="{y + 9:.3f}" fill="#000000">{escape(group.name)}</text>'
            )
        lines.append("</g>")

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
