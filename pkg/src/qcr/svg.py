"""Minimal deterministic SVG 1.1 line plots."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

__all__ = ["Panel", "render"]

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2")
W, H = 420, 300
ML, MR, MT, MB = 62, 12, 28, 44


class Panel:
    def __init__(self, title: str, xlabel: str, ylabel: str):
        self.title, self.xlabel, self.ylabel = title, xlabel, ylabel
        self.series: list[tuple[str, list, list]] = []

    def add(self, label: str, xs, ys):
        self.series.append((label, [float(x) for x in xs], [float(y) for y in ys]))


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, k: int = 5) -> list:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / k
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw), default=10 * mag)
    t = math.ceil(lo / step) * step
    out = []
    while t <= hi + 1e-9 * step:
        out.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return out


def _panel_svg(p: Panel, ox: int, oy: int) -> list:
    pts = [(x, y) for _, xs, ys in p.series for x, y in zip(xs, ys) if math.isfinite(y)]
    if not pts:
        return [f'<text x="{ox + W / 2}" y="{oy + H / 2}" text-anchor="middle">no data</text>']
    x0, x1 = min(x for x, _ in pts), max(x for x, _ in pts)
    y0, y1 = min(y for _, y in pts), max(y for _, y in pts)
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    if y1 == y0:
        y0, y1 = y0 - 0.5 * max(abs(y0), 1), y1 + 0.5 * max(abs(y1), 1)
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    pw, ph = W - ML - MR, H - MT - MB

    def sx(x):
        return ox + ML + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return oy + MT + (1 - (y - y0) / (y1 - y0)) * ph

    out = [f'<rect x="{ox + ML}" y="{oy + MT}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>',
           f'<text x="{ox + W / 2}" y="{oy + 16}" text-anchor="middle" font-size="12">{escape(p.title)}</text>',
           f'<text x="{ox + ML + pw / 2}" y="{oy + H - 6}" text-anchor="middle" font-size="11">{escape(p.xlabel)}</text>',
           f'<text x="{ox + 12}" y="{oy + MT + ph / 2}" text-anchor="middle" font-size="11" '
           f'transform="rotate(-90 {ox + 12} {oy + MT + ph / 2})">{escape(p.ylabel)}</text>']
    for t in _ticks(x0, x1):
        out.append(f'<text x="{_fmt(sx(t))}" y="{oy + MT + ph + 14}" text-anchor="middle" font-size="9">{t:g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{ox + ML - 4}" y="{_fmt(sy(t) + 3)}" text-anchor="end" font-size="9">{t:.4g}</text>')
    for i, (label, xs, ys) in enumerate(p.series):
        colour = PALETTE[i % len(PALETTE)]
        seg = [f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in zip(xs, ys) if math.isfinite(y)]
        if len(seg) == 1:
            cx, cy = seg[0].split(",")
            out.append(f'<circle cx="{cx}" cy="{cy}" r="2" fill="{colour}"/>')
        elif seg:
            out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.2" points="{" ".join(seg)}"/>')
        ly = oy + MT + 12 + 12 * i
        out.append(f'<line x1="{ox + ML + 6}" y1="{ly - 4}" x2="{ox + ML + 20}" y2="{ly - 4}" stroke="{colour}"/>')
        out.append(f'<text x="{ox + ML + 24}" y="{ly}" font-size="9">{escape(label)}</text>')
    return out


def render(panels: list, title: str = "", columns: int = 2) -> str:
    cols = max(1, min(columns, len(panels)))
    rows = math.ceil(len(panels) / cols)
    top = 24 if title else 0
    width, height = cols * W, rows * H + top
    body = ['<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
            f'<rect width="{width}" height="{height}" fill="#fff"/>']
    if title:
        body.append(f'<text x="{width / 2}" y="17" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for k, p in enumerate(panels):
        body += _panel_svg(p, (k % cols) * W, top + (k // cols) * H)
    body.append("</svg>")
    return "\n".join(body) + "\n"
