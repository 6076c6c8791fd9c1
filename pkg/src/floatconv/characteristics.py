"""Force-displacement laws for elastic elements.

A characteristic maps extension x (m) to tensile force F (N) on the
closed domain [0, x_max]. Supported laws:

    linear      F = k * x
    constant    F = f0
    power_law   F = c / (x + d)**p   (magnet-like decaying attraction)
    tabulated   piecewise-linear through (x, F) knots
    negated     F = -inner(x)        (the exact inverse characteristic)

Pairing a characteristic with its negation makes the net force vanish at
every displacement; that cancellation is what lets the balance point of a
series arrangement be moved with (ideally) zero external force.

Units are SI throughout: metres, newtons, joules. Instances are immutable
and every operation is pure, so they may be evaluated from concurrent
callers without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, ValidationError

# Composite-trapezoid resolution for laws without a closed-form energy
# integral.
DEFAULT_ENERGY_PANELS = 2048

_trapz = getattr(np, "trapezoid", None) or np.trapz

LINEAR = "linear"
CONSTANT = "constant"
POWER_LAW = "power_law"
TABULATED = "tabulated"
NEGATED = "negated"


def clip_domain(x, x_max: float):
    """Validate x against [0, x_max], clipping fp endpoint spill.

    Endpoints that round-trip through a division (x = R * (x_max / R)) can
    land an ulp outside the domain; a 1e-12 relative slack absorbs that
    without admitting genuinely out-of-range queries.

    Returns (clipped array, was_scalar).
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("displacement must be finite")
    slack = 1e-12 * max(abs(x_max), 1.0)
    if np.any(arr < -slack) or np.any(arr > x_max + slack):
        lo, hi = float(np.min(arr)), float(np.max(arr))
        raise DomainError(
            f"value range [{lo:g}, {hi:g}] outside domain [0, {x_max:g}]"
        )
    return np.clip(arr, 0.0, x_max), arr.ndim == 0


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ForceCharacteristic:
    """A force-vs-displacement law on the closed domain [0, x_max].

    Build instances through the factory classmethods (:meth:`linear`,
    :meth:`constant`, :meth:`power_law`, :meth:`tabulated`,
    :meth:`negated`) rather than the raw constructor.
    """

    kind: str
    x_max: float
    k: float = 0.0        # N/m, linear stiffness
    f0: float = 0.0       # N, constant force
    c: float = 0.0        # N*m^p, power-law numerator
    d: float = 0.0        # m, power-law offset (keeps the pole off-domain)
    p: float = 1.0        # power-law exponent
    points: tuple[tuple[float, float], ...] = ()
    inner: "ForceCharacteristic | None" = None

    def __post_init__(self):
        _finite("x_max", self.x_max)
        if self.x_max <= 0:
            raise ValidationError(f"x_max must be > 0, got {self.x_max}")
        if self.kind == LINEAR:
            _finite("k", self.k)
            if self.k <= 0:
                raise ValidationError(f"linear stiffness k must be > 0, got {self.k}")
        elif self.kind == CONSTANT:
            _finite("f0", self.f0)
            if self.f0 < 0:
                raise ValidationError(f"constant force f0 must be >= 0, got {self.f0}")
        elif self.kind == POWER_LAW:
            for name in ("c", "d", "p"):
                _finite(name, getattr(self, name))
            if self.c < 0:
                raise ValidationError(f"power-law c must be >= 0, got {self.c}")
            if self.d <= 0:
                raise ValidationError(f"power-law d must be > 0, got {self.d}")
            if self.p < 1:
                raise ValidationError(f"power-law p must be >= 1, got {self.p}")
        elif self.kind == TABULATED:
            self._validate_points()
        elif self.kind == NEGATED:
            if not isinstance(self.inner, ForceCharacteristic):
                raise ValidationError("negated characteristic requires an inner one")
        else:
            raise ValidationError(f"unknown characteristic kind {self.kind!r}")

    def _validate_points(self):
        pts = self.points
        if len(pts) < 2:
            raise ValidationError("tabulated characteristic needs at least 2 points")
        xs = [x for x, _ in pts]
        if xs[0] != 0.0:
            raise ValidationError(f"first tabulated x must be 0, got {xs[0]}")
        for i in range(1, len(xs)):
            if xs[i] <= xs[i - 1]:
                raise ValidationError(
                    f"tabulated x values must be strictly increasing, "
                    f"got {xs[i - 1]} then {xs[i]}"
                )
        for x, f in pts:
            _finite("tabulated x", x)
            _finite("tabulated F", f)
        if self.x_max > xs[-1] * (1 + 1e-12):
            raise ValidationError(
                f"x_max {self.x_max} exceeds last tabulated x {xs[-1]}"
            )

    # -- factories ---------------------------------------------------------

    @classmethod
    def linear(cls, k: float, x_max: float) -> "ForceCharacteristic":
        """Linear spring, F = k*x."""
        return cls(kind=LINEAR, x_max=float(x_max), k=float(k))

    @classmethod
    def constant(cls, f0: float, x_max: float) -> "ForceCharacteristic":
        """Constant-force element, F = f0 at any extension."""
        return cls(kind=CONSTANT, x_max=float(x_max), f0=float(f0))

    @classmethod
    def power_law(cls, c: float, d: float, p: float, x_max: float) -> "ForceCharacteristic":
        """Decaying attraction F = c / (x + d)**p, the magnet-like stand-in."""
        return cls(kind=POWER_LAW, x_max=float(x_max), c=float(c), d=float(d), p=float(p))

    @classmethod
    def tabulated(cls, points, x_max: float | None = None) -> "ForceCharacteristic":
        """Piecewise-linear law through (x m, F N) knots; first x must be 0."""
        pts = tuple((float(x), float(f)) for x, f in points)
        if x_max is None:
            if not pts:
                raise ValidationError("tabulated characteristic needs at least 2 points")
            x_max = pts[-1][0]
        return cls(kind=TABULATED, x_max=float(x_max), points=pts)

    @classmethod
    def negated(cls, inner: "ForceCharacteristic") -> "ForceCharacteristic":
        """Exact inverse characteristic, F = -inner(x)."""
        return cls(kind=NEGATED, x_max=inner.x_max, inner=inner)

    # -- evaluation --------------------------------------------------------

    @cached_property
    def _knots(self) -> tuple[np.ndarray, np.ndarray]:
        xs = np.array([x for x, _ in self.points], dtype=float)
        fs = np.array([f for _, f in self.points], dtype=float)
        return xs, fs

    def _eval(self, xs: np.ndarray) -> np.ndarray:
        if self.kind == LINEAR:
            return self.k * xs
        if self.kind == CONSTANT:
            return np.full_like(xs, self.f0)
        if self.kind == POWER_LAW:
            return self.c / (xs + self.d) ** self.p
        if self.kind == TABULATED:
            kx, kf = self._knots
            return np.interp(xs, kx, kf)
        return -self.inner._eval(xs)

    def force_at(self, x):
        """Force (N) at extension x (m); accepts a scalar or an ndarray.

        Raises DomainError outside [0, x_max].
        """
        xs, scalar = clip_domain(x, self.x_max)
        vals = self._eval(xs)
        return float(vals) if scalar else vals

    def stored_energy(self, x: float, panels: int = DEFAULT_ENERGY_PANELS) -> float:
        """Elastic energy (J) stored at extension x, the integral of force.

        Linear and constant laws use their closed forms; a negation
        delegates to its inner law; everything else uses composite
        trapezoid quadrature with ``panels`` panels.
        """
        xs, _ = clip_domain(x, self.x_max)
        xv = float(xs)
        if self.kind == LINEAR:
            return 0.5 * self.k * xv * xv
        if self.kind == CONSTANT:
            return self.f0 * xv
        if self.kind == NEGATED:
            return -self.inner.stored_energy(xv, panels)
        return self.quadrature_energy(xv, panels)

    def quadrature_energy(self, x: float, panels: int = DEFAULT_ENERGY_PANELS) -> float:
        """Trapezoid-quadrature energy, usable on any law (testing hook)."""
        if panels < 1:
            raise ValidationError(f"quadrature needs >= 1 panel, got {panels}")
        xs, _ = clip_domain(x, self.x_max)
        grid = np.linspace(0.0, float(xs), panels + 1)
        return float(_trapz(self._eval(grid), grid))

    def invert(self) -> "ForceCharacteristic":
        """The exact inverse characteristic: force_at flips sign pointwise."""
        return ForceCharacteristic.negated(self)
