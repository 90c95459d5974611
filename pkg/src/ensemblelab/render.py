"""SVG rasters of planar decision surfaces.

One filled rect per horizontal run of same-label cells (runs keep file sizes
sane at 400x400), two-color palette for the predicted label, and optional
training points overlaid as circles.  Output dimensions are fixed so figures
from different runs compare directly.
"""

from __future__ import annotations

from pathlib import Path

from .analysis import SurfaceGrid
from .datatypes import LabeledDataset

SIZE = 480  # square canvas, pixels
PLUS_FILL = "#bcd8ee"   # light blue: regions classified +1
MINUS_FILL = "#f5c4cf"  # pink: regions classified -1
PLUS_POINT = "#1d4f91"
MINUS_POINT = "#c0392b"
POINT_RADIUS = 2.4


def _runs(row):
    start = 0
    for j in range(1, len(row) + 1):
        if j == len(row) or row[j] != row[start]:
            yield start, j, row[start]
            start = j


def surface_svg(grid: SurfaceGrid, data: LabeledDataset | None = None) -> str:
    """Render a surface grid (and optional training points) as an SVG string.

    The grid's second-feature axis points up, matching the usual plot
    orientation, so row 0 lands at the bottom of the canvas.
    """
    r = grid.resolution
    cell = SIZE / r
    span = grid.hi - grid.lo
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="{PLUS_FILL}"/>',
    ]
    for i in range(r):
        y = SIZE - (i + 1) * cell
        for j0, j1, label in _runs(grid.labels[i]):
            if label == 1:
                continue  # background already +1 colored
            parts.append(
                f'<rect x="{j0 * cell:.2f}" y="{y:.2f}" '
                f'width="{(j1 - j0) * cell:.2f}" height="{cell + 0.05:.2f}" '
                f'fill="{MINUS_FILL}"/>'
            )
    if data is not None:
        if data.n_features != 2:
            raise ValueError("can only overlay planar training data")
        for (x1, x2), label in zip(data.features, data.labels):
            px = (x1 - grid.lo) / span * SIZE
            py = SIZE - (x2 - grid.lo) / span * SIZE
            color = PLUS_POINT if label == 1 else MINUS_POINT
            parts.append(
                f'<circle cx="{px:.2f}" cy="{py:.2f}" r="{POINT_RADIUS}" '
                f'fill="{color}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts)


def write_surface_svg(grid: SurfaceGrid, path, data: LabeledDataset | None = None) -> Path:
    path = Path(path)
    path.write_text(surface_svg(grid, data) + "\n")
    return path
