"""Minimal SVG scatter plots of biobjective fronts (no plotting dependency)."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")
WIDTH, HEIGHT = 640, 480
MARGIN = 60


def _ticks(lo, hi, count=5):
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def svg_scatter(series, title="Pareto fronts") -> str:
    """One point series per (label, points) pair; x = objective 1, y = objective 2."""
    pts = [np.asarray(p, dtype=np.float64).reshape(-1, 2) for _, p in series]
    allpts = np.vstack(pts) if any(len(p) for p in pts) else np.zeros((1, 2))
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    plot_w = WIDTH - 2 * MARGIN
    plot_h = HEIGHT - 2 * MARGIN

    def sx(x):
        return MARGIN + (x - lo[0]) / span[0] * plot_w

    def sy(y):
        return HEIGHT - MARGIN - (y - lo[1]) / span[1] * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{escape(title)}</text>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
    ]
    for t in _ticks(lo[0], hi[0]):
        x = sx(t)
        out.append(f'<line x1="{x:.2f}" y1="{HEIGHT - MARGIN}" x2="{x:.2f}" y2="{HEIGHT - MARGIN + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{HEIGHT - MARGIN + 18}" text-anchor="middle" font-family="sans-serif" font-size="11">{t:.0f}</text>')
    for t in _ticks(lo[1], hi[1]):
        y = sy(t)
        out.append(f'<line x1="{MARGIN - 5}" y1="{y:.2f}" x2="{MARGIN}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN - 8}" y="{y + 4:.2f}" text-anchor="end" font-family="sans-serif" font-size="11">{t:.0f}</text>')
    out.append(f'<text x="{WIDTH / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle" font-family="sans-serif" font-size="13">objective 1</text>')
    out.append(
        f'<text x="18" y="{HEIGHT / 2:.1f}" text-anchor="middle" font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {HEIGHT / 2:.1f})">objective 2</text>'
    )
    for idx, ((label, _), p) in enumerate(zip(series, pts)):
        color = PALETTE[idx % len(PALETTE)]
        out.append(f'<g fill="{color}" fill-opacity="0.8"><title>{escape(str(label))}</title>')
        out.extend(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.5"/>' for x, y in p)
        out.append("</g>")
        ly = MARGIN + 16 * idx
        out.append(f'<circle cx="{WIDTH - MARGIN - 110}" cy="{ly}" r="4" fill="{color}"/>')
        out.append(f'<text x="{WIDTH - MARGIN - 100}" y="{ly + 4}" font-family="sans-serif" font-size="11">{escape(str(label))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
