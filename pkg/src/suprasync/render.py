"""Static SVG rendering for sweep heatmaps and curve plots.

Deliberately dependency-free and deterministic: a fixed 8-stop color
ramp, fixed layout, values labeled with %.6g. The CSV outputs are the
canonical record; these renders exist so a run can be eyeballed.
"""

from xml.sax.saxutils import escape

import numpy as np

RAMP = ("#440154", "#46327e", "#365c8d", "#277f8e",
        "#1fa187", "#4ac16d", "#a0da39", "#fde725")


def _ramp_color(t):
    """Linear interpolation through the fixed stops, t in [0, 1]."""
    t = min(1.0, max(0.0, float(t)))
    pos = t * (len(RAMP) - 1)
    lo = int(pos)
    hi = min(lo + 1, len(RAMP) - 1)
    frac = pos - lo
    out = []
    for a, b in zip(_rgb(RAMP[lo]), _rgb(RAMP[hi])):
        out.append(round(a + (b - a) * frac))
    return "#{:02x}{:02x}{:02x}".format(*out)


def _rgb(color):
    return tuple(int(color[i:i + 2], 16) for i in (1, 3, 5))


def _fmt(v):
    return format(float(v), ".6g")


def _tick_indices(count, most=11):
    if count <= most:
        return list(range(count))
    step = (count - 1) / (most - 1)
    return sorted({round(i * step) for i in range(most)})


def heatmap_svg(row_values, col_values, matrix, row_label="p",
                col_label="d_x", value_label="lambda2", title=""):
    """Grid heatmap; rows bottom-up so both axes increase away from origin."""
    matrix = np.asarray(matrix, dtype=np.float64)
    nrows, ncols = matrix.shape
    lo, hi = float(matrix.min()), float(matrix.max())
    span = hi - lo if hi > lo else 1.0

    left, top, cell = 70, 40, max(12, min(48, 520 // max(nrows, ncols)))
    plot_w, plot_h = ncols * cell, nrows * cell
    width, height = left + plot_w + 110, top + plot_h + 60

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(f'<text x="{left + plot_w / 2}" y="22" font-size="14" '
                     f'text-anchor="middle" fill="#000000">{escape(title)}</text>')
    for r in range(nrows):
        y = top + (nrows - 1 - r) * cell
        for c in range(ncols):
            color = _ramp_color((matrix[r, c] - lo) / span)
            parts.append(f'<rect x="{left + c * cell}" y="{y}" width="{cell}" '
                         f'height="{cell}" fill="{color}"/>')
    for c in _tick_indices(ncols):
        x = left + c * cell + cell / 2
        parts.append(f'<text x="{x}" y="{top + plot_h + 16}" font-size="10" '
                     f'text-anchor="middle" fill="#000000">{_fmt(col_values[c])}</text>')
    for r in _tick_indices(nrows):
        y = top + (nrows - 1 - r) * cell + cell / 2 + 3
        parts.append(f'<text x="{left - 6}" y="{y}" font-size="10" '
                     f'text-anchor="end" fill="#000000">{_fmt(row_values[r])}</text>')
    parts.append(f'<text x="{left + plot_w / 2}" y="{top + plot_h + 38}" '
                 f'font-size="12" text-anchor="middle" fill="#000000">'
                 f'{escape(col_label)}</text>')
    parts.append(f'<text x="16" y="{top + plot_h / 2}" font-size="12" '
                 f'text-anchor="middle" fill="#000000" '
                 f'transform="rotate(-90 16 {top + plot_h / 2})">'
                 f'{escape(row_label)}</text>')

    # value legend: vertical ramp with min/mid/max labels
    bar_x, bar_h = left + plot_w + 24, plot_h
    strips = 48
    for s in range(strips):
        t = 1.0 - s / (strips - 1)
        y = top + s * bar_h / strips
        parts.append(f'<rect x="{bar_x}" y="{y:.2f}" width="14" '
                     f'height="{bar_h / strips + 0.5:.2f}" fill="{_ramp_color(t)}"/>')
    for t, val in ((1.0, hi), (0.5, lo + span / 2), (0.0, lo)):
        y = top + (1.0 - t) * bar_h + 3
        parts.append(f'<text x="{bar_x + 18}" y="{y:.2f}" font-size="10" '
                     f'fill="#000000">{_fmt(val)}</text>')
    parts.append(f'<text x="{bar_x}" y="{top - 8}" font-size="11" '
                 f'fill="#000000">{escape(value_label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def curves_svg(x_values, series, x_label="d_x", y_label="R", title="",
               marker=None):
    """Line plot of several named curves over shared x; optional marker.

    `series` is a list of (name, values); `marker` an (x, y, label).
    """
    x = np.asarray(x_values, dtype=np.float64)
    ys = [np.asarray(vals, dtype=np.float64) for _, vals in series]
    finite = np.concatenate([v[np.isfinite(v)] for v in ys])
    y_lo, y_hi = float(finite.min()), float(finite.max())
    if marker is not None:
        y_lo, y_hi = min(y_lo, marker[1]), max(y_hi, marker[1])
    y_span = y_hi - y_lo if y_hi > y_lo else 1.0
    x_lo, x_hi = float(x.min()), float(x.max())
    x_span = x_hi - x_lo if x_hi > x_lo else 1.0

    left, top, plot_w, plot_h = 70, 40, 520, 320
    width, height = left + plot_w + 150, top + plot_h + 60

    def px(v):
        return left + (v - x_lo) / x_span * plot_w

    def py(v):
        return top + plot_h - (v - y_lo) / y_span * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#888888"/>',
    ]
    if title:
        parts.append(f'<text x="{left + plot_w / 2}" y="22" font-size="14" '
                     f'text-anchor="middle" fill="#000000">{escape(title)}</text>')
    for k in range(5):
        val = y_lo + y_span * k / 4
        y = py(val)
        parts.append(f'<line x1="{left}" y1="{y:.2f}" x2="{left + plot_w}" '
                     f'y2="{y:.2f}" stroke="#dddddd"/>')
        parts.append(f'<text x="{left - 6}" y="{y + 3:.2f}" font-size="10" '
                     f'text-anchor="end" fill="#000000">{_fmt(val)}</text>')
    for k in range(5):
        val = x_lo + x_span * k / 4
        xp = px(val)
        parts.append(f'<text x="{xp:.2f}" y="{top + plot_h + 16}" font-size="10" '
                     f'text-anchor="middle" fill="#000000">{_fmt(val)}</text>')

    colors = [RAMP[0], RAMP[4], RAMP[6], RAMP[2], RAMP[5]]
    for idx, (name, _) in enumerate(series):
        pts = " ".join(f"{px(xv):.2f},{py(yv):.2f}"
                       for xv, yv in zip(x, ys[idx]) if np.isfinite(yv))
        color = colors[idx % len(colors)]
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="1.6"/>')
        ly = top + 14 + idx * 16
        parts.append(f'<rect x="{left + plot_w + 14}" y="{ly - 9}" width="10" '
                     f'height="10" fill="{color}"/>')
        parts.append(f'<text x="{left + plot_w + 30}" y="{ly}" font-size="11" '
                     f'fill="#000000">{escape(str(name))}</text>')
    if marker is not None:
        mx, my, label = px(marker[0]), py(marker[1]), marker[2]
        parts.append(f'<circle cx="{mx:.2f}" cy="{my:.2f}" r="4" '
                     f'fill="none" stroke="#000000" stroke-width="1.5"/>')
        parts.append(f'<text x="{mx + 8:.2f}" y="{my - 6:.2f}" font-size="11" '
                     f'fill="#000000">{escape(str(label))}</text>')
    parts.append(f'<text x="{left + plot_w / 2}" y="{top + plot_h + 38}" '
                 f'font-size="12" text-anchor="middle" fill="#000000">'
                 f'{escape(x_label)}</text>')
    parts.append(f'<text x="16" y="{top + plot_h / 2}" font-size="12" '
                 f'text-anchor="middle" fill="#000000" '
                 f'transform="rotate(-90 16 {top + plot_h / 2})">'
                 f'{escape(y_label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
