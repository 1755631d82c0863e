"""Combinatorial data of a compact hyperbolic orbisurface of signature (g; nu_1..nu_s).

The Euler characteristic is kept as an exact rational; floating point enters
only at the area/quadrature boundary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidConeOrder, NonHyperbolic


@dataclass(frozen=True)
class OrbifoldSignature:
    """Signature (g; nu_1, ..., nu_s): genus g >= 0 and cone orders nu_j >= 2."""

    g: int
    nu: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.nu)

    @property
    def chi(self) -> Fraction:
        """Orbifold Euler characteristic 2 - 2g + sum(1/nu_j - 1), exact."""
        return Fraction(2 - 2 * self.g) + sum(
            (Fraction(1, v) - 1 for v in self.nu), start=Fraction(0)
        )

    @property
    def lcm_order(self) -> int:
        """N = lcm(1, nu_1, ..., nu_s)."""
        return math.lcm(1, *self.nu)

    @property
    def area(self) -> float:
        """Hyperbolic area -2*pi*chi (Gauss-Bonnet normalization)."""
        return -2.0 * math.pi * float(self.chi)

    def to_json(self) -> str:
        return json.dumps({"g": self.g, "nu": list(self.nu)})

    @staticmethod
    def from_json(text: str) -> "OrbifoldSignature":
        data = json.loads(text)
        return new_signature(int(data["g"]), [int(v) for v in data["nu"]])


@dataclass(frozen=True)
class EllipticClassDatum:
    """Elliptic conjugacy class [c_j^k]: angle theta = k*pi/nu_j, stabilizer order nu_j."""

    cone_index: int   # j, 1-based
    power: int        # k in 1..nu_j-1
    order: int        # nu_j

    @property
    def theta(self) -> float:
        return math.pi * self.power / self.order

    @property
    def theta_fraction(self) -> Fraction:
        """theta / pi as an exact rational k/nu_j."""
        return Fraction(self.power, self.order)

    @property
    def stabilizer_order(self) -> int:
        return self.order


def new_signature(g: int, nu) -> OrbifoldSignature:
    """Validated constructor; raises unless chi < 0 and all nu_j >= 2."""
    if g < 0:
        raise NonHyperbolic(f"genus must be nonnegative, got {g}")
    nu = tuple(int(v) for v in nu)
    for v in nu:
        if v < 2:
            raise InvalidConeOrder(f"cone orders must be >= 2, got {v}")
    sig = OrbifoldSignature(int(g), nu)
    if sig.chi >= 0:
        raise NonHyperbolic(f"signature ({g}; {list(nu)}) has chi = {sig.chi} >= 0")
    return sig


def euler_characteristic(sig: OrbifoldSignature) -> Fraction:
    return sig.chi


def hyperbolic_area(sig: OrbifoldSignature) -> float:
    return sig.area


def elliptic_classes(sig: OrbifoldSignature) -> list[EllipticClassDatum]:
    """All elliptic classes [c_j^k], k = 1..nu_j - 1, sorted by (j, k)."""
    out = []
    for j, v in enumerate(sig.nu, start=1):
        for k in range(1, v):
            out.append(EllipticClassDatum(cone_index=j, power=k, order=v))
    return out
