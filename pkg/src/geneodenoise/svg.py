"""Tiny SVG writer for signal overlays. Output is for human inspection only."""

from __future__ import annotations

import numpy as np

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"]


def plot_signals(path, signals, labels=None, width=800, height=400, pad=40):
    """Write an SVG overlaying the given signals as polylines with axes."""
    if not signals:
        raise ValueError("nothing to plot")
    x_lo = min(s.x_min for s in signals)
    x_hi = max(s.x_max for s in signals)
    y_lo = min(float(np.min(s.values)) for s in signals)
    y_hi = max(float(np.max(s.values)) for s in signals)
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def sx(x):
        return pad + (x - x_lo) / (x_hi - x_lo) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y_lo) / (y_hi - y_lo) * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" '
        'stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{pad}" y="{height - pad + 16}" font-size="11">{x_lo:.3g}</text>',
        f'<text x="{width - pad - 20}" y="{height - pad + 16}" font-size="11">'
        f'{x_hi:.3g}</text>',
        f'<text x="2" y="{height - pad}" font-size="11">{y_lo:.3g}</text>',
        f'<text x="2" y="{pad}" font-size="11">{y_hi:.3g}</text>',
    ]
    labels = labels or [f"signal {i}" for i in range(len(signals))]
    for i, (s, label) in enumerate(zip(signals, labels)):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{sx(x):.2f},{sy(v):.2f}"
                       for x, v in zip(s.grid, s.values))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     'stroke-width="1.2"/>')
        parts.append(f'<text x="{width - pad - 120}" y="{pad + 14 * (i + 1)}" '
                     f'font-size="12" fill="{color}">{label}</text>')
    parts.append("</svg>")
    with open(path, "w") as f:
        f.write("\n".join(parts))
