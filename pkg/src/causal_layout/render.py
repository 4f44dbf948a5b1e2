"""Static SVG node-link drawings of layouts."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .metrics import top_fraction

CSS_NAMED_COLORS = frozenset("""
aliceblue antiquewhite aqua aquamarine azure beige bisque black blanchedalmond blue blueviolet brown
burlywood cadetblue chartreuse chocolate coral cornflowerblue cornsilk crimson cyan darkblue darkcyan
darkgoldenrod darkgray darkgreen darkgrey darkkhaki darkmagenta darkolivegreen darkorange darkorchid
darkred darksalmon darkseagreen darkslateblue darkslategray darkslategrey darkturquoise darkviolet
deeppink deepskyblue dimgray dimgrey dodgerblue firebrick floralwhite forestgreen fuchsia gainsboro
ghostwhite gold goldenrod gray green greenyellow grey honeydew hotpink indianred indigo ivory khaki
lavender lavenderblush lawngreen lemonchiffon lightblue lightcoral lightcyan lightgoldenrodyellow
lightgray lightgreen lightgrey lightpink lightsalmon lightseagreen lightskyblue lightslategray
lightslategrey lightsteelblue lightyellow lime limegreen linen magenta maroon mediumaquamarine
mediumblue mediumorchid mediumpurple mediumseagreen mediumslateblue mediumspringgreen
mediumturquoise mediumvioletred midnightblue mintcream mistyrose moccasin navajowhite navy oldlace
olive olivedrab orange orangered orchid palegoldenrod palegreen paleturquoise palevioletred
papayawhip peachpuff peru pink plum powderblue purple rebeccapurple red rosybrown royalblue
saddlebrown salmon sandybrown seagreen seashell sienna silver skyblue slateblue slategray slategrey
snow springgreen steelblue tan teal thistle tomato turquoise violet wheat white whitesmoke yellow
yellowgreen transparent
""".split())

_HEX = re.compile(r"^#(?:[0-9a-fA-F]{3,4}|[0-9a-fA-F]{6}|[0-9a-fA-F]{8})$")
_FUNC = re.compile(r"^(?:rgb|rgba|hsl|hsla)\(\s*[-+0-9.%\s,/deg]+\)$")

# categorical palette for integer labels (e.g. cluster ids)
PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def is_css_color(value: str) -> bool:
    v = value.strip()
    return bool(_HEX.match(v) or _FUNC.match(v) or v.lower() in CSS_NAMED_COLORS)


@dataclass(frozen=True)
class RenderStyle:
    node_radius: float = 4.0
    edge_width: float = 1.0
    color_map: Optional[Mapping[str, str]] = None
    highlight_set: Optional[frozenset] = None
    width: int = 800
    height: int = 800
    node_color: str = "#4c72b0"
    highlight_color: str = "#d62728"
    edge_color: str = "#b0b0b0"
    circle_color: str = "black"

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0 or self.node_radius <= 0 or self.edge_width <= 0:
            raise ValueError("canvas size, node radius and edge width must be positive")
        colors = [self.node_color, self.highlight_color, self.edge_color, self.circle_color]
        colors += list((self.color_map or {}).values())
        for c in colors:
            if not is_css_color(c):
                raise ValueError(f"not a CSS color literal: {c!r}")


def colors_from_labels(labels: Mapping[str, str]) -> dict[str, str]:
    """Turn ``vertex -> color or integer label`` into ``vertex -> CSS color``."""
    out = {}
    for v, value in labels.items():
        value = str(value).strip()
        if value.lstrip("-").isdigit():
            out[v] = PALETTE[int(value) % len(PALETTE)]
        else:
            out[v] = value
    return out


def _num(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(
    layout,
    edges: Iterable[tuple],
    style: RenderStyle = RenderStyle(),
    circle_gamma: Optional[float] = None,
) -> str:
    """Draw edges as lines beneath vertex circles.

    Positions are scaled uniformly into the canvas with a 5 % margin, y axis
    pointing up. With ``circle_gamma`` a circle around the layout barycentre
    encloses the ``gamma`` % of vertices closest to it.
    """
    vs = layout.vertices
    pts = layout.coords(vs) if vs else np.zeros((0, 2))
    if not np.all(np.isfinite(pts)):
        raise ValueError("layout has non-finite positions")
    edge_list = sorted({(v, w) for v, w in edges if v != w})
    missing = sorted({x for e in edge_list for x in e} - set(layout.positions))
    if missing:
        raise ValueError(f"edge endpoints without positions: {missing[:5]}")

    W, H = style.width, style.height
    margin = 0.05
    if len(pts):
        lo = pts.min(axis=0)
        span = pts.max(axis=0) - lo
        usable = np.array([W, H]) * (1 - 2 * margin)
        scale = float(np.min(usable / np.where(span > 0, span, 1.0)))
        centre = lo + span / 2
    else:
        lo = centre = np.zeros(2)
        scale = 1.0

    def to_canvas(p):
        x = W / 2 + (p[0] - centre[0]) * scale
        y = H / 2 - (p[1] - centre[1]) * scale
        return x, y

    canvas = {v: to_canvas(p) for v, p in zip(vs, pts)}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<g stroke={quoteattr(style.edge_color)} stroke-width="{_num(style.edge_width)}">',
    ]
    for v, w in edge_list:
        (x1, y1), (x2, y2) = canvas[v], canvas[w]
        out.append(f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}"/>')
    out.append("</g>")

    if circle_gamma is not None and len(pts):
        b = pts.mean(axis=0)
        dist = np.linalg.norm(pts - b, axis=1)
        closest = top_fraction({v: -d for v, d in zip(vs, dist)}, circle_gamma)
        radius = max(float(dist[vs.index(v)]) for v in closest) * scale
        cx, cy = to_canvas(b)
        out.append(f'<circle class="barycentre" cx="{_num(cx)}" cy="{_num(cy)}" r="{_num(radius)}" '
                   f'fill="none" stroke={quoteattr(style.circle_color)} stroke-width="1.5"/>')

    highlight = style.highlight_set or frozenset()
    colors = style.color_map or {}
    out.append("<g>")
    for v in vs:
        x, y = canvas[v]
        fill = style.highlight_color if v in highlight else colors.get(v, style.node_color)
        cls = ' class="highlight"' if v in highlight else ""
        out.append(f'<circle{cls} cx="{_num(x)}" cy="{_num(y)}" r="{_num(style.node_radius)}" '
                   f'fill={quoteattr(fill)}><title>{escape(v)}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
