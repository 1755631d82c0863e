"""Adaptive Gauss-Kronrod quadrature along complex contours.

Panels are G7/K15 pairs; an interval is bisected until the local Kronrod-Gauss
discrepancy falls below its share of the global tolerance.  Panel results are
accumulated in position order, so the reduction is deterministic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import PoleOnEndpoint, QuadratureFailure

# 15-point Kronrod extension of 7-point Gauss, positive nodes (QUADPACK dqk15).
_XK = (
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
)
_WK = (
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
)
_WG = (0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469)

KRONROD_NODES = [-x for x in _XK[:7]] + [0.0] + [x for x in reversed(_XK[:7])]
KRONROD_WEIGHTS = list(_WK[:7]) + [_WK[7]] + list(reversed(_WK[:7]))
GAUSS_WEIGHTS_AT = {1: _WG[0], 3: _WG[1], 5: _WG[2], 7: _WG[3],
                    9: _WG[2], 11: _WG[1], 13: _WG[0]}


def _kronrod_panel(f, a: float, b: float):
    """(K15, |K15-G7|) for int_a^b f(t) dt with f complex-valued on a real interval."""
    h = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    k15 = 0.0 + 0.0j
    g7 = 0.0 + 0.0j
    for i, (x, w) in enumerate(zip(KRONROD_NODES, KRONROD_WEIGHTS)):
        v = f(mid + h * x)
        k15 += w * v
        wg = GAUSS_WEIGHTS_AT.get(i)
        if wg is not None:
            g7 += wg * v
    return h * k15, abs(h * (k15 - g7))


def adaptive_quad(f, a: float, b: float, abs_tol: float = 1e-10,
                  rel_tol: float = 1e-9, max_panels: int = 10_000):
    """Integrate complex-valued f over the real interval [a, b] adaptively."""
    if a == b:
        return 0.0 + 0.0j
    total_len = abs(b - a)
    whole, _ = _kronrod_panel(f, a, b)
    scale = abs(whole)
    stack = [(a, b)]
    accepted: list[tuple[float, complex]] = []
    budget = max_panels
    while stack:
        lo, hi = stack.pop()
        val, err = _kronrod_panel(f, lo, hi)
        budget -= 1
        if budget <= 0:
            raise QuadratureFailure(
                f"panel budget {max_panels} exhausted on [{a}, {b}] (err {err:.3e})")
        tol_here = max(abs_tol, rel_tol * scale) * (abs(hi - lo) / total_len)
        if err <= tol_here or abs(hi - lo) < 1e-15 * total_len:
            accepted.append((lo, val))
            scale = max(scale, abs(val))
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi))
            stack.append((lo, mid))
    accepted.sort(key=lambda p: p[0])
    out = 0.0 + 0.0j
    for _, val in accepted:
        out += val
    return out


# --- contour segments ---

@dataclass(frozen=True)
class Line:
    start: complex
    end: complex

    def parametrize(self):
        d = self.end - self.start
        return (lambda t: self.start + t * d), (lambda t: d)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    phi_start: float
    phi_end: float

    def parametrize(self):
        span = self.phi_end - self.phi_start

        def z(t):
            return self.center + self.radius * cmath.exp(1j * (self.phi_start + t * span))

        def dz(t):
            return 1j * span * self.radius * cmath.exp(1j * (self.phi_start + t * span))

        return z, dz


@dataclass(frozen=True)
class ContourPath:
    """A piecewise path: straight pieces plus half-circle detours over real poles."""

    segments: tuple = field(default_factory=tuple)

    @property
    def start(self) -> complex:
        return self.segments[0].start if isinstance(self.segments[0], Line) else None

    def integrate(self, f, abs_tol: float = 1e-10, rel_tol: float = 1e-9,
                  max_panels: int = 10_000) -> complex:
        total = 0.0 + 0.0j
        for seg in self.segments:
            z, dz = seg.parametrize()
            total += adaptive_quad(lambda t: f(z(t)) * dz(t), 0.0, 1.0,
                                   abs_tol=abs_tol, rel_tol=rel_tol,
                                   max_panels=max_panels)
        return total


def real_path_with_detours(start: float, end: float, poles, radius: float = 0.05,
                           orientation: str = "upper") -> ContourPath:
    """Path along the real axis from start to end, arcing over each listed pole.

    The half-circles are placed in the upper half plane ("upper") or lower
    ("lower"); the radius shrinks automatically near endpoints and near
    neighbouring poles.
    """
    sign = 1.0 if end >= start else -1.0
    lo, hi = min(start, end), max(start, end)
    inner = sorted(p for p in poles if lo < p < hi)
    for p in (lo, hi):
        if any(abs(p - q) < 1e-13 for q in poles):
            raise PoleOnEndpoint(f"endpoint {p} coincides with an integrand pole")
    segs = []
    cur = start
    ordered = inner if sign > 0 else list(reversed(inner))
    up = orientation == "upper"
    for p in ordered:
        r = radius
        r = min(r, abs(p - start) / 2, abs(p - end) / 2)
        for q in poles:
            if q != p:
                r = min(r, abs(p - q) / 2)
        if r <= 0:
            raise PoleOnEndpoint(f"no room to detour around pole {p}")
        a = p - sign * r
        bpt = p + sign * r
        if abs(a - cur) > 0:
            segs.append(Line(cur, a))
        if sign > 0:
            phi0, phi1 = (math.pi, 0.0) if up else (-math.pi, 0.0)
        else:
            phi0, phi1 = (0.0, math.pi) if up else (0.0, -math.pi)
        segs.append(Arc(complex(p, 0.0), r, phi0, phi1))
        cur = bpt
    if cur != end or not segs:
        segs.append(Line(cur, end))
    return ContourPath(tuple(segs))


def straight_or_detoured(start: complex, end: complex, poles, radius: float = 0.05,
                         orientation: str = "upper") -> ContourPath:
    """Straight path, falling back to real-axis detours when both endpoints are real.

    Poles are assumed real.  A straight segment passing within ``radius/10`` of a
    pole is rerouted through two real waypoints around it.
    """
    if abs(start.imag) < 1e-13 and abs(end.imag) < 1e-13:
        return real_path_with_detours(start.real, end.real, poles, radius, orientation)
    d = end - start
    L2 = abs(d) ** 2
    for p in poles:
        t = ((p - start) * d.conjugate()).real / L2
        if 0.0 < t < 1.0:
            dist = abs(start + t * d - p)
            if dist < 1e-9:
                raise PoleOnEndpoint(f"segment passes through pole {p}")
    return ContourPath((Line(start, end),))
