"""Minimal self-contained SVG line charts for sweep output.

One polyline per quantity: solid for the total, dashed for the direct
part, dotted for the indirect part.  No plotting dependencies.
"""

from __future__ import annotations

_W, _H = 640, 400
_ML, _MR, _MT, _MB = 60, 20, 20, 45

_DASHES = ("", "8,5", "2,4")


def render_line_chart(xs, series: dict[str, list], x_label: str = "") -> str:
    """``series`` maps a legend label to y values aligned with ``xs``;
    styles cycle solid / dashed / dotted in insertion order."""
    finite = [v for values in series.values() for v in values if v == v]
    if not xs or not finite:
        raise ValueError("nothing to plot")
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(finite + [0.0]), max(finite)
    if x_max == x_min:
        x_max = x_min + 1.0
    if y_max == y_min:
        y_max = y_min + 1.0
    span_x = x_max - x_min
    span_y = y_max - y_min

    def px(x):
        return _ML + (x - x_min) / span_x * (_W - _ML - _MR)

    def py(y):
        return _H - _MB - (y - y_min) / span_y * (_H - _MT - _MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_W} {_H}" '
        f'font-family="monospace" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" stroke="black"/>',
        f'<text x="{_ML}" y="{_H - _MB + 16}" text-anchor="middle">{x_min:g}</text>',
        f'<text x="{_W - _MR}" y="{_H - _MB + 16}" text-anchor="middle">{x_max:g}</text>',
        f'<text x="{_ML - 6}" y="{_H - _MB + 4}" text-anchor="end">{y_min:g}</text>',
        f'<text x="{_ML - 6}" y="{_MT + 4}" text-anchor="end">{y_max:g}</text>',
    ]
    if x_label:
        parts.append(
            f'<text x="{(_ML + _W - _MR) / 2}" y="{_H - 8}" text-anchor="middle">{x_label}</text>'
        )
    for i, (label, values) in enumerate(series.items()):
        dash = _DASHES[i % len(_DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        points = " ".join(
            f"{px(x):.2f},{py(v):.2f}" for x, v in zip(xs, values) if v == v
        )
        parts.append(
            f'<polyline fill="none" stroke="black"{dash_attr} points="{points}"/>'
        )
        parts.append(
            f'<text x="{_W - _MR - 150}" y="{_MT + 16 * (i + 1)}">'
            f'{"solid" if not dash else ("dashed" if dash == "8,5" else "dotted")}: {label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
