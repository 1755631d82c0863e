"""Exception hierarchy for orbizeta."""


class OrbizetaError(Exception):
    """Base class for all orbizeta errors."""


class InputError(OrbizetaError):
    """Invalid user input (bad signature, malformed representation, unknown preset)."""


class NumericalError(OrbizetaError):
    """A numerical procedure failed to reach its target accuracy."""


# --- orbifold signatures ---

class NonHyperbolic(InputError):
    """Orbifold Euler characteristic is >= 0."""


class InvalidConeOrder(InputError):
    """A cone order nu_j < 2 was supplied."""


# --- representations ---

class DimensionMismatch(InputError):
    """Matrix dimensions inconsistent with the stated dimension n."""


class NonUnitModulusLambda(InputError):
    """rho(t) = lambda*I with |lambda| != 1."""


class GenusZeroUnsupported(InputError):
    """Random representation generation requires genus >= 1; use catalog presets."""


class InfeasibleLambda(InputError):
    """No eigenvalue assignment for the c_j is compatible with the group relations."""


class UnknownPreset(InputError):
    """Preset name does not match any catalog entry."""


class NotDiagonalizable(NumericalError):
    """rho(c_j) failed the diagonalizability check; the relation c_j^nu = t is violated."""


# --- torsion ---

class NotAcyclic(OrbizetaError):
    """The twisted chain complex is not acyclic (e.g. rho(t) = I)."""


class NonAcyclicTorus(NotAcyclic):
    """det(I - core matrix) = 0 for a solid-torus piece."""


class IllConditioned(NumericalError):
    """All pivot choices produced determinants below the conditioning threshold."""


# --- quadrature / zeta ---

class QuadratureFailure(NumericalError):
    """Adaptive quadrature exceeded its panel budget before reaching tolerance."""


class PoleOnEndpoint(InputError):
    """An integration endpoint coincides with a pole of the integrand."""


class WeightZero(InputError):
    """Operation requires weight m != 0 (use the epsilon-truncated asymptotic route)."""


class WeightNonzero(InputError):
    """Operation requires weight m = 0."""


# --- geodesic spectrum ---

class CutoffTooSmall(InputError):
    """No hyperbolic conjugacy class was found below the requested cutoff."""


class NonConvergent(NumericalError):
    """Translation-number iteration did not stabilize within budget."""


class ConvergenceDomain(InputError):
    """Re(s) too small for the truncated Euler product at the requested tolerance."""


class EmptySpectrum(InputError):
    """A positive cutoff was requested but no spectrum data was supplied."""
