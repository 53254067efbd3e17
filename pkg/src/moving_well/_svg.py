"""Minimal static SVG plots, written directly for byte-reproducible output."""

from __future__ import annotations

import numpy as np

_WIDTH = 640
_HEIGHT = 400
_MARGIN = 56


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def density_svg(xs: np.ndarray, density: np.ndarray, x_left: float, x_right: float,
                t: float) -> str:
    """Single-frame |ψ|² profile with the wall positions marked."""
    xs = np.asarray(xs, dtype=float)
    density = np.asarray(density, dtype=float)
    span = x_right - x_left
    x_lo = x_left - 0.05 * span
    x_hi = x_right + 0.05 * span
    y_hi = max(float(np.max(density)), 1e-300) * 1.08

    def px(x):
        return _MARGIN + (x - x_lo) / (x_hi - x_lo) * (_WIDTH - 2 * _MARGIN)

    def py(y):
        return _HEIGHT - _MARGIN - y / y_hi * (_HEIGHT - 2 * _MARGIN)

    points = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, density))
    wall_lines = "".join(
        f'<line x1="{_fmt(px(w))}" y1="{_fmt(py(0))}" x2="{_fmt(px(w))}" '
        f'y2="{_fmt(py(y_hi / 1.08))}" stroke="#b22222" stroke-dasharray="5,4"/>'
        for w in (x_left, x_right)
    )
    axis = (
        f'<line x1="{_fmt(px(x_lo))}" y1="{_fmt(py(0))}" x2="{_fmt(px(x_hi))}" '
        f'y2="{_fmt(py(0))}" stroke="#000"/>'
        f'<line x1="{_fmt(_MARGIN)}" y1="{_fmt(py(0))}" x2="{_fmt(_MARGIN)}" '
        f'y2="{_fmt(_MARGIN)}" stroke="#000"/>'
    )
    labels = (
        f'<text x="{_fmt(px(x_left))}" y="{_HEIGHT - _MARGIN + 18}" font-size="12" '
        f'text-anchor="middle">x_left={x_left:.6g}</text>'
        f'<text x="{_fmt(px(x_right))}" y="{_HEIGHT - _MARGIN + 18}" font-size="12" '
        f'text-anchor="middle">x_right={x_right:.6g}</text>'
        f'<text x="{_WIDTH // 2}" y="24" font-size="14" text-anchor="middle">'
        f'|psi|^2 at t={t:.6g}</text>'
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">'
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>'
        f"{axis}{wall_lines}"
        f'<polyline points="{points}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>'
        f"{labels}</svg>\n"
    )
