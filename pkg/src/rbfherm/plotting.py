"""Standalone SVG renderings of the experiment CSV tables.

The renderer is deliberately small and writes every byte itself, so that a
given CSV always produces an identical SVG.  Line plots draw one polyline
per series; axes, ticks and legend swatches use line/text elements only.
The sweep table renders as a colored grid instead.
"""

import math
from dataclasses import dataclass

from .experiments import CSV_COLUMNS, read_records


class PlotError(Exception):
    """Raised for unusable plot input (no rows, bad columns, bad scales)."""


WIDTH = 640
HEIGHT = 480
MARGIN_LEFT = 74
MARGIN_RIGHT = 96
MARGIN_TOP = 40
MARGIN_BOTTOM = 58

PALETTE = (
    "#1f4e8c",
    "#c23b22",
    "#2e7d32",
    "#7b1fa2",
    "#e09100",
    "#00696b",
    "#5d4037",
    "#455a64",
)

# Values at or below this floor are clamped before taking log10 so exact
# zeros (perfect reproduction) stay plottable.
LOG_FLOOR = 1e-18


@dataclass(frozen=True)
class PlotSpec:
    """What to draw from a record table.

    ``kind`` is "line" (``value`` against ``x``, one curve per distinct
    ``series`` key) or "heatmap" (``value`` colored over the ``x`` by ``y``
    grid).  When several records share a series key and x position, the
    minimum value is plotted.
    """

    kind: str
    x: str
    value: str = "err_f"
    y: str = ""
    series: tuple = ()
    x_log: bool = False
    value_log: bool = True
    title: str = ""


def infer_plot_spec(records):
    """Default spec for a runner CSV, chosen by its experiment column."""
    experiment = records[0].experiment
    if experiment == "eps_n_sweep":
        return PlotSpec(
            kind="heatmap",
            x="epsilon",
            y="n",
            x_log=True,
            title="eps_n_sweep: log10 err_f",
        )
    if experiment == "poly_compare":
        return PlotSpec(
            kind="line",
            x="epsilon",
            series=("l",),
            x_log=True,
            title="poly_compare: err_f vs epsilon",
        )
    if experiment == "method_compare":
        return PlotSpec(
            kind="line",
            x="epsilon",
            series=("method",),
            x_log=True,
            title="method_compare: err_f vs epsilon",
        )
    if experiment == "radius_scaling":
        return PlotSpec(
            kind="line",
            x="radius",
            series=("method",),
            x_log=True,
            title="radius_scaling: err_f vs radius",
        )
    if experiment == "cost_study":
        return PlotSpec(
            kind="line",
            x="unknowns",
            series=("radius", "epsilon", "method"),
            title="cost_study: min err_f vs unknowns",
        )
    raise PlotError(f"no default plot for experiment {experiment!r}")


# ---------------------------------------------------------------------------
# small geometry/formatting helpers

def _fmt_label(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


def _check_column(name, what):
    if name not in CSV_COLUMNS:
        raise PlotError(f"unknown {what} column {name!r}")


def _collect_series(records, spec):
    """Group (x, value) points per series key; min-collapse duplicate x."""
    _check_column(spec.x, "x")
    _check_column(spec.value, "value")
    for name in spec.series:
        _check_column(name, "series")
    grouped = {}
    for rec in records:
        key = tuple(getattr(rec, name) for name in spec.series)
        x = float(getattr(rec, spec.x))
        v = float(getattr(rec, spec.value))
        if not (math.isfinite(x) and math.isfinite(v)):
            continue
        cell = grouped.setdefault(key, {})
        cell[x] = min(cell[x], v) if x in cell else v
    series = {}
    for key in sorted(grouped, key=lambda k: tuple(str(p) for p in k)):
        label = ", ".join(
            f"{name}={_fmt_label(part)}" for name, part in zip(spec.series, key)
        )
        series[label or spec.value] = sorted(grouped[key].items())
    return series


def _scaled(value, log, what):
    if not log:
        return value
    if value <= 0:
        if what == "x":
            raise PlotError(f"log-scaled {what} axis requires positive values")
        value = max(value, LOG_FLOOR)
    return math.log10(max(value, LOG_FLOOR))


def _span(lo, hi, pad):
    if hi <= lo:
        return lo - pad, lo + pad
    return lo, hi


def _linear_ticks(lo, hi, max_ticks=6):
    if hi <= lo:
        return [(lo, f"{lo:g}")]
    raw = (hi - lo) / (max_ticks - 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(
        (mag * m for m in (1.0, 2.0, 5.0, 10.0) if (hi - lo) / (mag * m) <= max_ticks),
        mag * 10.0,
    )
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append((t, f"{t:g}"))
        t += step
    return ticks


def _log_ticks(lo, hi):
    """Decade ticks for an axis whose coordinates are already log10."""
    k0 = math.ceil(lo - 1e-9)
    k1 = math.floor(hi + 1e-9)
    if k1 < k0:
        return [(lo, f"1e{lo:g}")]
    step = max(1, (k1 - k0) // 8 + (1 if (k1 - k0) % 8 else 0))
    return [(float(k), f"1e{k}") for k in range(k0, k1 + 1, step)]


class _Axis:
    """Maps data coordinates (already log10-transformed if log) to pixels."""

    def __init__(self, lo, hi, px0, px1):
        self.lo = lo
        self.hi = hi
        self.px0 = px0
        self.px1 = px1

    def to_px(self, value):
        t = (value - self.lo) / (self.hi - self.lo)
        return self.px0 + t * (self.px1 - self.px0)


def _svg_open(parts):
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">'
    )
    parts.append(
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>'
    )


def _svg_text(parts, x, y, text, anchor="middle", size=12):
    parts.append(
        f'<text x="{x:.2f}" y="{y:.2f}" font-family="monospace" '
        f'font-size="{size}" text-anchor="{anchor}">{_escape(text)}</text>'
    )


def _escape(text):
    return (
        str(text)
        .replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
    )


def _svg_frame(parts, xaxis, yaxis, xticks, yticks, xlabel, ylabel, title):
    x0, x1 = xaxis.px0, xaxis.px1
    y0, y1 = yaxis.px0, yaxis.px1  # y0 is the bottom (larger pixel value)
    parts.append(
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y0:.2f}" '
        'stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x0:.2f}" y2="{y1:.2f}" '
        'stroke="black" stroke-width="1"/>'
    )
    for value, label in xticks:
        px = xaxis.to_px(value)
        parts.append(
            f'<line x1="{px:.2f}" y1="{y0:.2f}" x2="{px:.2f}" '
            f'y2="{y0 + 4:.2f}" stroke="black" stroke-width="1"/>'
        )
        _svg_text(parts, px, y0 + 18, label, size=11)
    for value, label in yticks:
        py = yaxis.to_px(value)
        parts.append(
            f'<line x1="{x0 - 4:.2f}" y1="{py:.2f}" x2="{x0:.2f}" '
            f'y2="{py:.2f}" stroke="black" stroke-width="1"/>'
        )
        _svg_text(parts, x0 - 8, py + 4, label, anchor="end", size=11)
    _svg_text(parts, (x0 + x1) / 2.0, HEIGHT - 12, xlabel)
    parts.append(
        f'<text x="16" y="{(y0 + y1) / 2.0:.2f}" font-family="monospace" '
        f'font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 16 {(y0 + y1) / 2.0:.2f})">{_escape(ylabel)}</text>'
    )
    if title:
        _svg_text(parts, WIDTH / 2.0, 20, title, size=13)


def render_line_plot(records, spec):
    """Render series of (x, value) points as one polyline per series."""
    series = _collect_series(records, spec)
    points = {
        label: [
            (_scaled(x, spec.x_log, "x"), _scaled(v, spec.value_log, "value"))
            for x, v in pts
        ]
        for label, pts in series.items()
    }
    all_pts = [p for pts in points.values() for p in pts]
    if not all_pts:
        raise PlotError("no finite data points to plot")
    xs = [p[0] for p in all_pts]
    vs = [p[1] for p in all_pts]
    xlo, xhi = _span(min(xs), max(xs), 0.5)
    vlo, vhi = _span(min(vs), max(vs), 0.5 if spec.value_log else 1.0)
    xaxis = _Axis(xlo, xhi, MARGIN_LEFT, WIDTH - MARGIN_RIGHT)
    yaxis = _Axis(vlo, vhi, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP)
    xticks = _log_ticks(xlo, xhi) if spec.x_log else _linear_ticks(xlo, xhi)
    yticks = _log_ticks(vlo, vhi) if spec.value_log else _linear_ticks(vlo, vhi)
    xlabel = spec.x + (" (log)" if spec.x_log else "")
    ylabel = spec.value + (" (log)" if spec.value_log else "")

    parts = []
    _svg_open(parts)
    _svg_frame(parts, xaxis, yaxis, xticks, yticks, xlabel, ylabel, spec.title)
    for i, (label, pts) in enumerate(points.items()):
        color = PALETTE[i % len(PALETTE)]
        if len(pts) == 1:
            px = xaxis.to_px(pts[0][0])
            py = yaxis.to_px(pts[0][1])
            parts.append(
                f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="{color}"/>'
            )
        else:
            coords = " ".join(
                f"{xaxis.to_px(x):.2f},{yaxis.to_px(v):.2f}" for x, v in pts
            )
            parts.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                f'points="{coords}"/>'
            )
        swatch_y = MARGIN_TOP + 8 + 15 * i
        swatch_x = WIDTH - MARGIN_RIGHT + 8
        parts.append(
            f'<line x1="{swatch_x:.2f}" y1="{swatch_y:.2f}" '
            f'x2="{swatch_x + 14:.2f}" y2="{swatch_y:.2f}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        _svg_text(parts, swatch_x + 18, swatch_y + 4, label, anchor="start", size=10)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _heat_color(t):
    c0 = (16, 48, 107)
    c1 = (243, 227, 90)
    r, g, b = (round(a + (b_ - a) * t) for a, b_ in zip(c0, c1))
    return f"#{r:02x}{g:02x}{b:02x}"


def render_heatmap(records, spec):
    """Render ``value`` as a colored grid over the (x, y) columns.

    Cells are laid out by grid index (the x grid is log-spaced, so index
    position equals log position); colors span the log10 range of the
    values, dark low to light high.
    """
    _check_column(spec.x, "x")
    _check_column(spec.y, "y")
    _check_column(spec.value, "value")
    cells = {}
    for rec in records:
        x = float(getattr(rec, spec.x))
        y = float(getattr(rec, spec.y))
        v = float(getattr(rec, spec.value))
        if not math.isfinite(v):
            continue
        key = (x, y)
        cells[key] = min(cells[key], v) if key in cells else v
    if not cells:
        raise PlotError("no finite data points to plot")
    xs = sorted({k[0] for k in cells})
    ys = sorted({k[1] for k in cells})
    logs = {k: math.log10(max(v, LOG_FLOOR)) for k, v in cells.items()}
    lo = min(logs.values())
    hi = max(logs.values())
    span = hi - lo if hi > lo else 1.0

    x0, x1 = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    y0, y1 = HEIGHT - MARGIN_BOTTOM, MARGIN_TOP
    cw = (x1 - x0) / len(xs)
    ch = (y0 - y1) / len(ys)
    parts = []
    _svg_open(parts)
    for (x, y), v in sorted(logs.items()):
        i = xs.index(x)
        j = ys.index(y)
        px = x0 + i * cw
        py = y0 - (j + 1) * ch
        parts.append(
            f'<rect x="{px:.2f}" y="{py:.2f}" width="{cw:.2f}" '
            f'height="{ch:.2f}" fill="{_heat_color((v - lo) / span)}"/>'
        )
    # tick a subset of columns so labels stay readable
    step = max(1, len(xs) // 8)
    for i in range(0, len(xs), step):
        px = x0 + (i + 0.5) * cw
        parts.append(
            f'<line x1="{px:.2f}" y1="{y0:.2f}" x2="{px:.2f}" y2="{y0 + 4:.2f}" '
            'stroke="black" stroke-width="1"/>'
        )
        _svg_text(parts, px, y0 + 18, f"{xs[i]:.3g}", size=10)
    for j, y in enumerate(ys):
        py = y0 - (j + 0.5) * ch
        _svg_text(parts, x0 - 8, py + 4, f"{y:g}", anchor="end", size=10)
    _svg_text(parts, (x0 + x1) / 2.0, HEIGHT - 12, spec.x + (" (log)" if spec.x_log else ""))
    parts.append(
        f'<text x="16" y="{(y0 + y1) / 2.0:.2f}" font-family="monospace" '
        f'font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 16 {(y0 + y1) / 2.0:.2f})">{_escape(spec.y)}</text>'
    )
    if spec.title:
        _svg_text(parts, WIDTH / 2.0, 20, spec.title, size=13)
    # colorbar with the log10 range at its ends
    bar_x = WIDTH - MARGIN_RIGHT + 24
    steps = 16
    bar_h = (y0 - y1) / steps
    for s in range(steps):
        parts.append(
            f'<rect x="{bar_x:.2f}" y="{y0 - (s + 1) * bar_h:.2f}" width="14" '
            f'height="{bar_h:.2f}" fill="{_heat_color(s / (steps - 1))}"/>'
        )
    _svg_text(parts, bar_x + 18, y0 + 4, f"{lo:.2f}", anchor="start", size=10)
    _svg_text(parts, bar_x + 18, y1 + 8, f"{hi:.2f}", anchor="start", size=10)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_plot(csv_path, out_path, spec=None):
    """Render a runner CSV as an SVG file.

    The output file is only written after the full document renders, so an
    empty or unusable table leaves no partial artifact behind.
    """
    _, records = read_records(csv_path)
    if not records:
        raise PlotError(f"{csv_path}: no data rows to plot")
    if spec is None:
        spec = infer_plot_spec(records)
    if spec.kind == "line":
        svg = render_line_plot(records, spec)
    elif spec.kind == "heatmap":
        svg = render_heatmap(records, spec)
    else:
        raise PlotError(f"unknown plot kind {spec.kind!r}")
    with open(out_path, "w", newline="") as fh:
        fh.write(svg)
    return out_path
