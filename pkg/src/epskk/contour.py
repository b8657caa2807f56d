"""Numerical contour integration for the imaginary-axis representation.

The closed contour consists of the real axis (with small semicircular
detours of radius rho above the double pole at 0 and above both branch
points at -b and +b), and a large semicircle of radius R closing through
the upper half-plane.  Inside, the integrand

    omega * chi(omega) / (omega**2 + xi**2)

has a single simple pole at i*xi, so the contour sum must equal
pi*i*chi(i*xi).  This module evaluates each piece separately with the
analytic continuation of the response, exposing the small-radius limits
(the double-pole semicircle tends to a finite value, the branch-point
semicircles vanish) and the residue-identity defect.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import models as _m
from . import quadrature as _q
from .errors import RadiusTooLarge
from .models import eval_complex
from .quadrature import Integrand

ABS_TOL_INNER = 1e-12
REL_TOL_INNER = 1e-10


@dataclass(frozen=True)
class ContourSpec:
    """Geometry of one contour evaluation.

    ``rho`` is the small detour radius, ``big_radius`` the closing radius,
    ``xi`` the imaginary-axis point probed by the kernel.  The model must
    be one of the graphene responses (they own the branch points the
    contour is designed around).
    """

    model: object
    xi: float
    rho: float
    big_radius: float

    def __post_init__(self):
        if not isinstance(self.model, (_m.GrapheneLongitudinal, _m.GrapheneTransverse)):
            raise TypeError("contour verification applies to the graphene responses")
        b = self.model.params.b
        if not self.xi > 0:
            raise ValueError("xi must be positive")
        if not 0 < self.rho < b / 10.0:
            raise RadiusTooLarge(f"need 0 < rho < b/10 = {b / 10.0:g}")
        if not self.big_radius > 10.0 * max(b, self.xi):
            raise ValueError("big_radius must exceed 10*max(b, xi)")

    @property
    def b(self):
        return self.model.params.b


@dataclass
class ContourReport:
    """Values of the contour pieces, as traversed by the closed contour.

    The three small semicircles run clockwise (phi from pi to 0), the big
    arc counterclockwise.  ``residue_identity_defect`` is the sum of all
    pieces minus pi*i*chi(i*xi); ``residue_term`` is that reference value.
    """

    real_axis_part: complex
    pole_semicircle: complex
    left_branch_semicircle: complex
    right_branch_semicircle: complex
    big_arc: complex
    residue_term: complex
    residue_identity_defect: complex


def _kernel(model, xi):
    def h(z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(invalid="ignore", divide="ignore"):
            return z * model.chi_upper_half(z) / (z * z + xi * xi)
    return h


def _arc(model, xi, center, radius, phi_from, phi_to,
         abs_tol=ABS_TOL_INNER, rel_tol=REL_TOL_INNER):
    """Kernel integral along  z = center + radius*exp(i*phi)."""
    h = _kernel(model, xi)

    def psi(phi):
        phase = np.exp(1j * np.asarray(phi))
        z = center + radius * phase
        return h(z) * (1j * radius) * phase

    lo, hi = (phi_from, phi_to) if phi_from <= phi_to else (phi_to, phi_from)
    mid = 0.5 * (lo + hi)
    res = _q.quad_adaptive(Integrand(psi), lo, hi, points=(mid,),
                           abs_tol=abs_tol, rel_tol=rel_tol)
    value = res.value if phi_from <= phi_to else -res.value
    return complex(value)


def pole_semicircle(spec, *, abs_tol=ABS_TOL_INNER, rel_tol=REL_TOL_INNER):
    """Clockwise semicircle above omega = 0, radius rho.

    For the transverse response the double pole leaves a finite
    small-radius limit, i*pi*C/xi**2 with C the double-pole coefficient;
    for the longitudinal response the origin is regular and the integral
    vanishes with rho.
    """
    if spec.rho >= spec.xi / 10.0:
        raise RadiusTooLarge("rho must stay well below xi")
    return _arc(spec.model, spec.xi, 0.0, spec.rho, math.pi, 0.0,
                abs_tol=abs_tol, rel_tol=rel_tol)


def pole_semicircle_limit(spec):
    """Small-radius limit of :func:`pole_semicircle` from the pole class."""
    pc = spec.model.pole_class()
    if pc.order == 2:
        return 1j * math.pi * pc.coefficient / spec.xi ** 2
    return 0.0 + 0.0j


def branch_semicircle(spec, which, *, abs_tol=ABS_TOL_INNER, rel_tol=REL_TOL_INNER):
    """Clockwise semicircle above a branch point ('left' = -b, 'right' = +b).

    Magnitudes vanish as rho -> 0: like rho**(3/2) for the transverse
    response (the susceptibility itself vanishes at the branch point) and
    like rho**(1/2) for the longitudinal one (inverse-square-root growth
    beaten by the arc length).
    """
    if which not in ("left", "right"):
        raise ValueError("which must be 'left' or 'right'")
    center = -spec.b if which == "left" else spec.b
    return _arc(spec.model, spec.xi, center, spec.rho, math.pi, 0.0,
                abs_tol=abs_tol, rel_tol=rel_tol)


def big_arc(spec, *, abs_tol=ABS_TOL_INNER, rel_tol=REL_TOL_INNER):
    """Counterclockwise closing arc of radius R; decays like 1/R."""
    return _arc(spec.model, spec.xi, 0.0, spec.big_radius, 0.0, math.pi,
                abs_tol=abs_tol, rel_tol=rel_tol)


def _real_segment_pieces(model, xi, rho, R, abs_tol, rel_tol):
    """Right-half real-axis integrals [rho, b-rho] and [b+rho, R].

    Sub-intervals are reparametrized so that the steep behavior near the
    excluded singular points (inverse-power near 0, half-power near b)
    becomes smooth: logarithmic near the origin, t**2 anchored at the
    branch point, inverse near infinity.
    """
    b = model.params.b
    h = _kernel(model, xi)
    pieces = []

    def via(fn, lo, hi, points=()):
        res = _q.quad_adaptive(Integrand(fn), lo, hi, points=points,
                               abs_tol=abs_tol, rel_tol=rel_tol)
        pieces.append(complex(res.value))

    # [rho, b/2]: logarithmic stretch anchored at the origin
    via(lambda s: h(rho * np.exp(s)) * rho * np.exp(s), 0.0, math.log(b / (2.0 * rho)))
    # [b/2, b-rho]: x = b - t**2
    via(lambda t: h(b - t * t) * 2.0 * t, math.sqrt(rho), math.sqrt(b / 2.0))
    # [b+rho, 2b]: x = b + t**2
    via(lambda t: h(b + t * t) * 2.0 * t, math.sqrt(rho), math.sqrt(b))
    # [2b, R]: x = 2b / v
    via(lambda v: h(2.0 * b / v) * 2.0 * b / (v * v), 2.0 * b / R, 1.0)
    return sum(pieces)


def real_axis_part(spec, *, abs_tol=ABS_TOL_INNER, rel_tol=REL_TOL_INNER):
    """Real-axis contribution over [-R, R] minus the three rho-gaps."""
    model, xi, rho, R = spec.model, spec.xi, spec.rho, spec.big_radius
    right = _real_segment_pieces(model, xi, rho, R, abs_tol, rel_tol)

    class _Mirror:
        """Evaluate the model at -x (left half mapped onto the right)."""

        params = model.params

        @staticmethod
        def chi_upper_half(z):
            return model.chi_upper_half(-np.asarray(z, dtype=complex) + 0.0j)

    # x = -y maps the left segments onto the right ones; the kernel factor
    # omega flips sign under the reflection
    left = -_real_segment_pieces(_Mirror, xi, rho, R, abs_tol, rel_tol)
    return complex(right + left)


def residue_identity(spec, *, abs_tol=ABS_TOL_INNER, rel_tol=REL_TOL_INNER):
    """Assemble the full contour and report its defect against pi*i*chi(i*xi)."""
    kw = {"abs_tol": abs_tol, "rel_tol": rel_tol}
    real_part = real_axis_part(spec, **kw)
    pole = pole_semicircle(spec, **kw)
    left = branch_semicircle(spec, "left", **kw)
    right = branch_semicircle(spec, "right", **kw)
    arc = big_arc(spec, **kw)
    chi_i = eval_complex(spec.model, 1j * spec.xi).value - 1.0
    residue = 1j * math.pi * chi_i
    total = real_part + pole + left + right + arc
    return ContourReport(
        real_axis_part=real_part,
        pole_semicircle=pole,
        left_branch_semicircle=left,
        right_branch_semicircle=right,
        big_arc=arc,
        residue_term=residue,
        residue_identity_defect=total - residue,
    )


def loglog_slope(radii, magnitudes):
    """Least-squares slope of log|value| against log(radius)."""
    radii = np.asarray(radii, dtype=float)
    magnitudes = np.asarray(magnitudes, dtype=float)
    keep = magnitudes > 0
    return float(np.polyfit(np.log(radii[keep]), np.log(magnitudes[keep]), 1)[0])


def branch_convergence_sweep(model, xi, big_radius, rhos, which,
                             *, abs_tol=ABS_TOL_INNER, rel_tol=REL_TOL_INNER):
    """Branch-semicircle magnitudes over a radius sweep, plus fitted slope."""
    mags = []
    for rho in rhos:
        spec = ContourSpec(model, xi, rho, big_radius)
        mags.append(abs(branch_semicircle(spec, which, abs_tol=abs_tol, rel_tol=rel_tol)))
    return np.asarray(mags), loglog_slope(rhos, mags)
