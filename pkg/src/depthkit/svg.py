"""Deterministic SVG and JSON rendering of nested central-region contours.

The emitted bytes depend only on the document contents: no timestamps, no
environment lookups, fixed float formatting.  Layers are drawn from the
shallowest level upward so the innermost (deepest) region paints last and
darkest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .cloud import DataCloud
from .dataio import atomic_write_text
from .errors import EmptyRegionError
from .regions import RegionContour

_WIDTH = 720.0
_HEIGHT = 540.0
_MARGIN = 56.0
_LEGEND_WIDTH = 96.0

# color ramp endpoints (light for shallow levels, dark for deep ones)
_LIGHT = (226, 238, 252)
_DARK = (18, 62, 130)


@dataclass(frozen=True)
class ContourLayer:
    """All closed rings of one depth level."""

    alpha: float
    rings: tuple[np.ndarray, ...]  # each (m, 2), closed implicitly


@dataclass(frozen=True)
class ContourDocument:
    title: str
    layers: tuple[ContourLayer, ...]
    points: np.ndarray
    labels: tuple[str, ...] | None = None
    show_labels: bool = False

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        layers = tuple(sorted(self.layers, key=lambda la: la.alpha))
        object.__setattr__(self, "layers", layers)
        if self.labels is not None and len(self.labels) != pts.shape[0]:
            raise ValueError("label count must match point count")

    @property
    def is_empty(self) -> bool:
        return not self.layers and self.points.shape[0] == 0


def contour_rings(contour: RegionContour) -> tuple[np.ndarray, ...]:
    """Closed rings of a computed level set, exact or traced."""
    if contour.exact:
        region = contour.region
        if region is None or region.is_empty:
            return ()
        if region.dim == 1:
            raise ValueError("cannot render 1-dimensional regions")
        return (np.asarray(region.vertices, dtype=float),)
    return tuple(r.vertices for r in contour.rings if not r.is_empty)


def document_from_contours(cloud: DataCloud, contours, title: str,
                           show_labels: bool = False) -> ContourDocument:
    layers = []
    for contour in contours:
        rings = contour_rings(contour)
        if rings:
            layers.append(ContourLayer(alpha=contour.alpha, rings=rings))
    return ContourDocument(title=title, layers=tuple(layers),
                           points=cloud.points, labels=cloud.labels,
                           show_labels=show_labels)


def _ramp_color(rank: int, total: int) -> str:
    t = 0.5 if total <= 1 else rank / (total - 1)
    rgb = tuple(round(a + t * (b - a)) for a, b in zip(_LIGHT, _DARK))
    return f"#{rgb[0]:02x}{rgb[1]:02x}{rgb[2]:02x}"


def _fmt(v: float) -> str:
    out = f"{v:.2f}"
    return "0.00" if out == "-0.00" else out


def _data_bounds(doc: ContourDocument):
    xs, ys = [], []
    if doc.points.size:
        xs.extend(doc.points[:, 0])
        ys.extend(doc.points[:, 1])
    for layer in doc.layers:
        for ring in layer.rings:
            xs.extend(ring[:, 0])
            ys.extend(ring[:, 1])
    if not xs:
        raise EmptyRegionError("document has neither layers nor points")
    lo = np.array([min(xs), min(ys)])
    hi = np.array([max(xs), max(ys)])
    span = np.maximum(hi - lo, 1e-9)
    return lo - 0.05 * span, hi + 0.05 * span


class _Mapper:
    def __init__(self, lo, hi):
        self.lo = lo
        self.hi = hi
        self.plot_w = _WIDTH - 2 * _MARGIN - _LEGEND_WIDTH
        self.plot_h = _HEIGHT - 2 * _MARGIN

    def __call__(self, p):
        x = _MARGIN + (p[0] - self.lo[0]) / (self.hi[0] - self.lo[0]) * self.plot_w
        y = _HEIGHT - _MARGIN - (p[1] - self.lo[1]) / (self.hi[1] - self.lo[1]) * self.plot_h
        return x, y


def render_svg(doc: ContourDocument) -> str:
    """Standalone SVG text for a contour document."""
    lo, hi = _data_bounds(doc)
    to_px = _Mapper(lo, hi)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(_WIDTH)}" '
        f'height="{_fmt(_HEIGHT)}" viewBox="0 0 {_fmt(_WIDTH)} {_fmt(_HEIGHT)}">',
        f'<rect width="{_fmt(_WIDTH)}" height="{_fmt(_HEIGHT)}" fill="#ffffff"/>',
        f'<text x="{_fmt(_WIDTH / 2)}" y="28" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{_escape(doc.title)}</text>',
    ]
    total = len(doc.layers)
    for rank, layer in enumerate(doc.layers):
        color = _ramp_color(rank, total)
        for ring in layer.rings:
            pts = " ".join(f"{_fmt(x)},{_fmt(y)}"
                           for x, y in (to_px(p) for p in ring))
            parts.append(
                f'<polygon points="{pts}" fill="{color}" fill-opacity="0.85" '
                f'stroke="#123e82" stroke-width="0.8"/>')
    for i, p in enumerate(doc.points):
        x, y = to_px(p)
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.4" '
                     f'fill="#111111"/>')
        if doc.show_labels and doc.labels is not None:
            parts.append(
                f'<text x="{_fmt(x + 3.5)}" y="{_fmt(y - 3.0)}" '
                f'font-family="sans-serif" font-size="8" fill="#333333">'
                f'{_escape(doc.labels[i])}</text>')
    # legend, deepest level at the top
    lx = _WIDTH - _MARGIN - _LEGEND_WIDTH + 16
    ly = _MARGIN + 8
    parts.append(f'<text x="{_fmt(lx)}" y="{_fmt(ly - 12)}" '
                 f'font-family="sans-serif" font-size="11">level</text>')
    for rank, layer in enumerate(reversed(doc.layers)):
        color = _ramp_color(total - 1 - rank, total)
        y = ly + rank * 16
        parts.append(f'<rect x="{_fmt(lx)}" y="{_fmt(y)}" width="12" '
                     f'height="12" fill="{color}" stroke="#123e82" '
                     f'stroke-width="0.5"/>')
        parts.append(f'<text x="{_fmt(lx + 17)}" y="{_fmt(y + 10)}" '
                     f'font-family="sans-serif" font-size="10">'
                     f'{layer.alpha:.9g}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def export_region_svg(doc: ContourDocument, path: str):
    """Write the document as a standalone SVG file (atomic, deterministic)."""
    if doc.is_empty:
        raise EmptyRegionError("refusing to render an empty document")
    atomic_write_text(path, render_svg(doc))


def document_payload(doc: ContourDocument) -> dict:
    payload = {
        "title": doc.title,
        "points": [[float(v) for v in p] for p in doc.points],
        "labels": list(doc.labels) if doc.labels is not None else None,
        "layers": [
            {
                "alpha": layer.alpha,
                "polygons": [[[float(v) for v in p] for p in ring]
                             for ring in layer.rings],
            }
            for layer in doc.layers
        ],
    }
    return payload


def export_region_json(doc: ContourDocument, path: str):
    """Write the document as JSON mirroring the layer structure."""
    text = json.dumps(document_payload(doc), indent=2, sort_keys=True)
    atomic_write_text(path, text + "\n")
