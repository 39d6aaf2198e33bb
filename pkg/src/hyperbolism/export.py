"""CSV, JSON and SVG writers used by the command line."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#7f7f7f"]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(path, columns: dict) -> Path:
    """Write equal-length columns under a header row; numbers get 17 digits."""
    path = Path(path)
    names = list(columns)
    data = [np.asarray(columns[n]) for n in names]
    lengths = {d.size for d in data}
    if len(lengths) > 1:
        raise ValueError(f"columns differ in length: {sorted(lengths)}")
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names)
        for row in zip(*data):
            w.writerow([fmt(x) if isinstance(x, (float, int, np.floating, np.integer)) else x for x in row])
    return path


def read_csv(path) -> dict[str, np.ndarray]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    out = {}
    for i, name in enumerate(header):
        col = [r[i] for r in body]
        try:
            out[name] = np.array([float(c) for c in col])
        except ValueError:
            out[name] = np.array(col)
    return out


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(json.dumps(_clean(obj), indent=2) + "\n", encoding="utf-8")
    return path


def _ticks(lo, hi, n=5):
    if hi == lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    out = []
    x = start
    while x <= hi + 1e-12 * step:
        out.append(round(x, 12))
        x += step
    return out


def _segments(u, v, jump):
    """Split a polyline where consecutive abscissae jump by more than ``jump``."""
    breaks = np.flatnonzero(np.abs(np.diff(u)) > jump) + 1
    return [(a, b) for a, b in zip(np.split(u, breaks), np.split(v, breaks)) if a.size > 1]


def write_svg(path, series, title="", xlabel="u", ylabel="v", width=640, height=420) -> Path:
    """Plot ``series`` = [(label, u, v), ...] as polylines inside an axis box."""
    path = Path(path)
    series = [(lbl, np.asarray(u, float), np.asarray(v, float)) for lbl, u, v in series]
    us = np.concatenate([s[1] for s in series])
    vs = np.concatenate([s[2] for s in series])
    x0, x1 = float(us.min()), float(us.max())
    y0, y1 = float(vs.min()), float(vs.max())
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    if y1 == y0:
        y0, y1 = y0 - 1, y1 + 1
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    left, right, top, bottom = 70, 20, 40, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + (y1 - y) / (y1 - y0) * ph

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{width / 2}" y="22" text-anchor="middle" font-size="14">{title}</text>',
        f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle" font-size="12">{xlabel}</text>',
        f'<text x="15" y="{top + ph / 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 15 {top + ph / 2})">{ylabel}</text>',
    ]
    for t in _ticks(x0, x1):
        X = sx(t)
        parts.append(f'<line x1="{X:.2f}" y1="{top + ph}" x2="{X:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        parts.append(f'<text x="{X:.2f}" y="{top + ph + 18}" text-anchor="middle" font-size="10">{t:g}</text>')
    for t in _ticks(y0, y1):
        Y = sy(t)
        parts.append(f'<line x1="{left - 5}" y1="{Y:.2f}" x2="{left}" y2="{Y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{left - 8}" y="{Y + 3:.2f}" text-anchor="end" font-size="10">{t:g}</text>')
    jump = 0.25 * (x1 - x0)
    for i, (label, u, v) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        for su, sv in _segments(u, v, jump):
            pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(su, sv))
            parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"/>')
        parts.append(f'<text x="{left + pw - 5}" y="{top + 14 + 13 * i}" text-anchor="end" '
                     f'font-size="10" fill="{color}">{label}</text>')
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    return path
