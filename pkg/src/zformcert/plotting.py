"""Diagnostic drawing of the trace-zero plane for a cubic field.

Floats are fine here: the drawing reads off the exact construction and
is never part of a certificate.
"""

from __future__ import annotations

import math
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .cubic import construct_deltas
from .errors import DegreeError
from .fields import FieldElement, NumberField
from .lattices import gauss_reduce, lambda_basis

# orthonormal frame of the trace-zero plane
_F1 = (1 / math.sqrt(2), -1 / math.sqrt(2), 0.0)
_F2 = (1 / math.sqrt(6), 1 / math.sqrt(6), -2 / math.sqrt(6))

_PLOT_WIDTH = Fraction(1, 2**40)


def _plane_xy(values: tuple[float, float, float]) -> tuple[float, float]:
    mean = sum(values) / 3.0
    centered = [v - mean for v in values]
    return (
        sum(c * f for c, f in zip(centered, _F1)),
        sum(c * f for c, f in zip(centered, _F2)),
    )


def _sorted_values(x: FieldElement, perm_desc) -> tuple[float, float, float]:
    encs = x.field.embedding_enclosures(x, _PLOT_WIDTH)
    vals = [float((iv.lo + iv.hi) / 2) for iv in encs]
    return tuple(vals[i] for i in perm_desc)


def plot_plane_H(field: NumberField, out_path: str) -> str:
    """Draw the projected lattice, the three cones, u, v, v1 and delta1.

    Lines carry SVG group ids (cone-boundary-line-*, vector-u, ...) so
    the drawing is machine-checkable.
    """
    if field.degree != 3:
        raise DegreeError("plane drawing requires a cubic field")
    lattice = lambda_basis(field)
    u, v = gauss_reduce(lattice)
    pair = construct_deltas(field, u)
    geo = pair.geometry
    perm = geo.perm_desc

    w2_xy = _plane_xy(_sorted_values(lattice.representatives[0], perm))
    w3_xy = _plane_xy(_sorted_values(lattice.representatives[1], perm))

    def lattice_xy(coords):
        return (
            coords[0] * w2_xy[0] + coords[1] * w3_xy[0],
            coords[0] * w2_xy[1] + coords[1] * w3_xy[1],
        )

    u_xy = lattice_xy(geo.u_coords)
    v_xy = lattice_xy(geo.v_coords)
    v1_xy = lattice_xy(geo.v1_coords)
    d1_xy = _plane_xy(_sorted_values(pair.delta1, perm))

    radius = 2.5 * math.hypot(*u_xy)
    fig, ax = plt.subplots(figsize=(7, 7))

    # the three coordinate-equality lines bound the six cones
    boundary_dirs = {
        "z1=z2": (1, 1, -2),
        "z1=z3": (1, -2, 1),
        "z2=z3": (2, -1, -1),
    }
    for idx, (label, direction) in enumerate(boundary_dirs.items()):
        dx, dy = _plane_xy(tuple(float(c) for c in direction))
        norm = math.hypot(dx, dy)
        dx, dy = dx / norm, dy / norm
        (line,) = ax.plot(
            [-radius * dx, radius * dx],
            [-radius * dy, radius * dy],
            color="0.6",
            lw=0.8,
            zorder=1,
        )
        line.set_gid(f"cone-boundary-line-{idx}")
        ax.annotate(label, (radius * dx * 0.92, radius * dy * 0.92), fontsize=7, color="0.4")

    span = 4
    pts = []
    for m in range(-span, span + 1):
        for n in range(-span, span + 1):
            x, y = lattice_xy((m, n))
            if math.hypot(x, y) <= radius:
                pts.append((x, y))
    dots = ax.scatter(
        [p[0] for p in pts], [p[1] for p in pts], s=6, color="black", zorder=2
    )
    dots.set_gid("lattice-points")

    for name, xy, color in (
        ("vector-u", u_xy, "tab:red"),
        ("vector-v", v_xy, "tab:blue"),
        ("vector-v1", v1_xy, "tab:green"),
    ):
        arrow = ax.annotate(
            "",
            xy=xy,
            xytext=(0, 0),
            arrowprops=dict(arrowstyle="->", color=color, lw=1.5),
        )
        arrow.arrow_patch.set_gid(name)
        ax.annotate(name.split("-")[1], xy, fontsize=9, color=color)

    marker = ax.scatter([d1_xy[0]], [d1_xy[1]], marker="*", s=90, color="tab:purple", zorder=3)
    marker.set_gid("delta1-marker")
    ax.annotate("delta1", d1_xy, fontsize=9, color="tab:purple")

    # line through v parallel to u
    ux, uy = u_xy
    un = math.hypot(ux, uy)
    lx, ly = ux / un, uy / un
    ell = ax.plot(
        [v_xy[0] - radius * lx, v_xy[0] + radius * lx],
        [v_xy[1] - radius * ly, v_xy[1] + radius * ly],
        color="tab:orange",
        lw=1.0,
        ls="--",
        zorder=1,
    )[0]
    ell.set_gid("line-through-v")

    ax.set_aspect("equal")
    ax.set_xlim(-radius, radius)
    ax.set_ylim(-radius, radius)
    ax.set_title(f"trace-zero plane of {field.defining.text()}")
    fig.savefig(out_path)
    plt.close(fig)
    return out_path
