"""Principal-value and singular-endpoint quadrature.

Four primitives on top of the adaptive Gauss-Kronrod core:

* :func:`pv_simple_pole` -- Cauchy principal values across an interior
  simple pole, by analytic subtraction of the pole term.
* :func:`pv_double_pole` -- principal values of ``f(x)/x**2`` where the
  even part of ``f`` vanishes at the origin (the only case in which the
  symmetric limit is finite).
* :func:`sqrt_endpoint_integral` -- integrands with half-power behavior
  ``(x - edge)**(+-1/2)`` at one endpoint, regularized by the substitution
  ``x = edge +- t**2``; an additional interior simple pole is supported.
* :func:`tail_integral` -- semi-infinite tails with algebraic decay,
  mapped onto a finite interval.

Integrands must be vectorized: ndarray in, equally-shaped ndarray out
(real or complex values).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _core
from .errors import DecayTooSlow, SingularityMisdeclared, ToleranceNotMet

#: default tolerance targets; two orders below the verification thresholds
ABS_TOL_DEFAULT = 1e-10
REL_TOL_DEFAULT = 1e-8

#: pole closer than this (relative to the interval span) to an interval
#: boundary or companion singularity gets a degraded-accuracy note
NEAR_COINCIDENCE = 1e-6

#: half-width of the guard zone around a subtracted pole, relative to the
#: distance to the nearest boundary; inside it the difference quotient is
#: replaced by a local Taylor form to dodge cancellation
_GUARD_FRAC = 1e-5
_STENCIL_FRAC = 5e-3


@dataclass(frozen=True)
class SimplePole:
    at: float


@dataclass(frozen=True)
class DoublePole:
    at: float = 0.0


@dataclass(frozen=True)
class SqrtEndpoint:
    at: float
    side: str  # 'lower' or 'upper'


@dataclass(frozen=True)
class Integrand:
    """A vectorized callable plus declared singularity descriptors.

    With ``from_edge_distance`` set (only meaningful for
    :func:`sqrt_endpoint_integral`), the callable receives the exact
    distance to the declared sqrt endpoint instead of the absolute
    coordinate; reconstructing that distance from a rounded coordinate
    would lose it to cancellation right where it matters.
    """

    func: object
    singularities: tuple = ()
    from_edge_distance: bool = False

    def __call__(self, x):
        return self.func(x)

    def poles(self):
        return [s for s in self.singularities if isinstance(s, SimplePole)]

    def sqrt_edges(self):
        return [s for s in self.singularities if isinstance(s, SqrtEndpoint)]


@dataclass
class QuadratureResult:
    value: object
    abs_error_estimate: float
    evaluations: int
    notes: tuple = field(default_factory=tuple)

    def __iter__(self):  # allows  value, err = result
        yield self.value
        yield self.abs_error_estimate


def _as_integrand(f):
    return f if isinstance(f, Integrand) else Integrand(f)


def _run(f, edges, abs_tol, rel_tol):
    value, err, n_evals, ok = _core.adaptive_quad(
        f, edges, abs_tol=abs_tol, rel_tol=rel_tol)
    if not (np.isfinite(complex(value)) and math.isfinite(err)):
        raise SingularityMisdeclared(
            "integrand produced non-finite values inside the interval")
    notes = ()
    if not ok:
        if err > 10.0 * max(abs_tol, rel_tol * abs(value)):
            raise ToleranceNotMet(
                f"refinement stalled at error estimate {err:.3e} "
                f"(requested abs {abs_tol:.1e} / rel {rel_tol:.1e})")
        notes = ("tolerance-marginal",)
    return value, err, n_evals, notes


def _edges_between(a, b, points):
    pts = sorted(p for p in points if a < p < b)
    return np.array([a, *pts, b])


def _integrate_plain(func, a, b, sq_lower, sq_upper, points, abs_tol, rel_tol):
    """Integrate over [a, b] honoring half-power endpoint declarations."""
    if a == b:
        return 0.0, 0.0, 0, ()
    if sq_lower and sq_upper:
        mid = 0.5 * (a + b)
        v1, e1, n1, t1 = _integrate_plain(
            func, a, mid, True, False, points, abs_tol, rel_tol)
        v2, e2, n2, t2 = _integrate_plain(
            func, mid, b, False, True, points, abs_tol, rel_tol)
        return v1 + v2, e1 + e2, n1 + n2, t1 + t2
    if sq_lower:
        def psi(t):
            return func(a + t * t) * (2.0 * t)
        t_pts = [math.sqrt(p - a) for p in points if a < p < b]
        return _run(psi, _edges_between(0.0, math.sqrt(b - a), t_pts), abs_tol, rel_tol)
    if sq_upper:
        def psi(t):
            return func(b - t * t) * (2.0 * t)
        t_pts = [math.sqrt(b - p) for p in points if a < p < b]
        return _run(psi, _edges_between(0.0, math.sqrt(b - a), t_pts), abs_tol, rel_tol)
    return _run(func, _edges_between(a, b, points), abs_tol, rel_tol)


def quad_adaptive(f, a, b, *, points=(), abs_tol=ABS_TOL_DEFAULT,
                  rel_tol=REL_TOL_DEFAULT):
    """Adaptive integral of a regular (or declared-sqrt-edge) integrand."""
    f = _as_integrand(f)
    lower = any(s.side == "lower" for s in f.sqrt_edges())
    upper = any(s.side == "upper" for s in f.sqrt_edges())
    v, e, n, notes = _integrate_plain(f.func, a, b, lower, upper, points,
                                      abs_tol, rel_tol)
    return QuadratureResult(v, e, n, notes)


def _derivatives_at(func, p, h):
    """Value, first and second derivative of a smooth callable at p."""
    x = np.array([p - 2 * h, p - h, p, p + h, p + 2 * h])
    v = np.asarray(func(x))
    d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h)
    d2 = (v[3] - 2.0 * v[2] + v[1]) / (h * h)
    return v[2], d1, d2


def _subtracted_quotient(func, p, f_p, d1, d2, guard):
    """(f(x) - f(p)) / (x - p) with a Taylor patch inside the guard zone."""
    def g(x):
        dx = np.asarray(x) - p
        with np.errstate(invalid="ignore", divide="ignore"):
            raw = (func(np.asarray(x)) - f_p) / dx
        near = np.abs(dx) < guard
        if np.any(near):
            raw = np.where(near, d1 + 0.5 * dx * d2, raw)
        return raw
    return g


def pv_simple_pole(f, pole, interval, *, abs_tol=ABS_TOL_DEFAULT,
                   rel_tol=REL_TOL_DEFAULT, points=()):
    """Principal value of ``f(x) / (x - pole)`` over ``interval``.

    ``f`` is the numerator: finite on the closed interval (half-power
    endpoint behavior may be declared via :class:`SqrtEndpoint`
    descriptors and is absorbed by substitution).  With the pole inside
    the interval, the pole term is subtracted analytically and re-added
    as ``f(pole) * log((b - pole)/(pole - a))``; with the pole outside,
    the integral is an ordinary one.
    """
    f = _as_integrand(f)
    a, b = float(interval[0]), float(interval[1])
    pole = float(pole)
    lower = any(s.side == "lower" for s in f.sqrt_edges())
    upper = any(s.side == "upper" for s in f.sqrt_edges())
    notes = []

    if pole <= a or pole >= b:
        if pole == a or pole == b:
            raise SingularityMisdeclared("pole sits exactly on an integration endpoint")
        def phi(x):
            return f.func(x) / (x - pole)
        dist = min(abs(pole - a), abs(pole - b))
        if dist < NEAR_COINCIDENCE * (b - a):
            notes.append("pole-near-boundary")
        v, e, n, t = _integrate_plain(phi, a, b, lower, upper, points, abs_tol, rel_tol)
        return QuadratureResult(v, e, n, tuple(notes) + t)

    w = min(pole - a, b - pole)
    if w < NEAR_COINCIDENCE * (b - a):
        notes.append("pole-near-boundary")
    h = _STENCIL_FRAC * w
    f_p, d1, d2 = _derivatives_at(f.func, pole, h)
    if not np.isfinite(complex(f_p)):
        raise SingularityMisdeclared("numerator is not finite at the pole")
    g = _subtracted_quotient(f.func, pole, f_p, d1, d2, _GUARD_FRAC * w)

    pts = list(points) + [pole - w, pole, pole + w]
    v, e, n, t = _integrate_plain(g, a, b, lower, upper, pts, abs_tol, rel_tol)
    log_term = f_p * math.log((b - pole) / (pole - a))
    return QuadratureResult(v + log_term, e, n + 5, tuple(notes) + t)


def _pv_interior_pole_full(psi, t_p, a, b, abs_tol, rel_tol, points=()):
    """PV of a full integrand with a declared simple pole at ``t_p``.

    The pole residue is recovered from the integrand itself:
    n(t) = psi(t) * (t - t_p) is smooth, and the principal value equals
    the smooth integral of psi(t) - n(t_p)/(t - t_p) plus the log term.
    """
    w = min(t_p - a, b - t_p)
    h = _STENCIL_FRAC * w

    def n_func(t):
        t = np.asarray(t)
        return psi(t) * (t - t_p)

    x = np.array([t_p - 2 * h, t_p - h, t_p + h, t_p + 2 * h])
    v = np.asarray(n_func(x))
    n_p = (2.0 * (v[1] + v[2]) - 0.5 * (v[0] + v[3])) / 3.0
    d1 = (v[0] - 8.0 * v[1] + 8.0 * v[2] - v[3]) / (12.0 * h)
    d2 = ((v[0] + v[3]) - (v[1] + v[2])) / (3.0 * h * h)
    guard = _GUARD_FRAC * w

    def g(t):
        t = np.asarray(t)
        dt = t - t_p
        with np.errstate(invalid="ignore", divide="ignore"):
            raw = (n_func(t) - n_p) / dt
        near = np.abs(dt) < guard
        if np.any(near):
            raw = np.where(near, d1 + 0.5 * dt * d2, raw)
        return raw

    pts = list(points) + [t_p - w, t_p, t_p + w]
    val, err, n_evals, notes = _integrate_plain(
        g, a, b, False, False, pts, abs_tol, rel_tol)
    log_term = n_p * math.log((b - t_p) / (t_p - a))
    return val + log_term, err, n_evals + 4, notes


def pv_double_pole(f, interval, *, abs_tol=ABS_TOL_DEFAULT,
                   rel_tol=REL_TOL_DEFAULT):
    """Principal value of ``f(x) / x**2`` over an interval containing 0.

    The odd part of ``f`` integrates to zero over the symmetric core of
    the interval (that cancellation is performed exactly by folding), and
    the even part must vanish at the origin -- otherwise the symmetric
    limit diverges and the singularity descriptor is wrong.  Divergent
    pieces are never formed: only the folded regular integrand is
    evaluated.
    """
    f = _as_integrand(f)
    a, b = float(interval[0]), float(interval[1])
    if not (a < 0.0 < b):
        raise SingularityMisdeclared("interval must contain the double pole at 0")
    for d in f.singularities:
        if isinstance(d, DoublePole) and d.at != 0.0:
            raise SingularityMisdeclared("only zero-centered double poles are supported")
    m = min(-a, b)

    def even_part(x):
        x = np.asarray(x)
        return 0.5 * (np.asarray(f.func(x)) + np.asarray(f.func(-x)))

    # removability: the even part must vanish at 0
    probes = m * np.array([1e-3, 1e-4])
    fe = np.abs(np.asarray(even_part(probes)))
    scale = max(np.max(np.abs(np.asarray(f.func(m * np.array([0.3, 0.7]))))), 1e-300)
    if fe[1] > 1e-6 * scale and fe[1] > 0.5 * fe[0]:
        raise SingularityMisdeclared(
            "even part of the numerator does not vanish at 0; "
            "PV of f(x)/x**2 diverges")

    def folded(x):
        x = np.asarray(x)
        return 2.0 * even_part(x) / (x * x)

    folded_edge = any(s.at in (m, -m) for s in f.sqrt_edges())
    v, e, n, notes = _integrate_plain(
        folded, 0.0, m, False, folded_edge, (0.5 * m,), abs_tol, rel_tol)

    def phi(x):
        x = np.asarray(x)
        return np.asarray(f.func(x)) / (x * x)

    # asymmetric remainder (outside the folded core) has no interior singularity
    if b > m:
        sq_up = any(s.at == b and s.side == "upper" for s in f.sqrt_edges())
        v2, e2, n2, t2 = _integrate_plain(phi, m, b, False, sq_up, (), abs_tol, rel_tol)
        v, e, n, notes = v + v2, e + e2, n + n2, notes + t2
    if a < -m:
        sq_lo = any(s.at == a and s.side == "lower" for s in f.sqrt_edges())
        v2, e2, n2, t2 = _integrate_plain(phi, a, -m, sq_lo, False, (), abs_tol, rel_tol)
        v, e, n, notes = v + v2, e + e2, n + n2, notes + t2
    return QuadratureResult(v, e, n + 4, notes)


def sqrt_endpoint_integral(f, interval, *, abs_tol=ABS_TOL_DEFAULT,
                           rel_tol=REL_TOL_DEFAULT, tail_split=None):
    """Integral of an integrand with half-power behavior at one endpoint.

    The declared edge is regularized with ``x = edge +- t**2``; a declared
    interior :class:`SimplePole` is taken as a principal value (it maps to
    a simple pole in ``t``).  Semi-infinite intervals are split at
    ``tail_split`` with the remainder delegated to :func:`tail_integral`.
    """
    f = _as_integrand(f)
    edges = f.sqrt_edges()
    if len(edges) != 1:
        raise SingularityMisdeclared("exactly one sqrt endpoint must be declared")
    edge = edges[0]
    a, b = float(interval[0]), float(interval[1])
    infinite = math.isinf(b)
    if edge.side == "upper" and infinite:
        raise SingularityMisdeclared("upper sqrt endpoint at infinity is meaningless")
    if edge.side == "lower" and edge.at != a:
        raise SingularityMisdeclared("declared lower edge does not match the interval")
    if edge.side == "upper" and edge.at != b:
        raise SingularityMisdeclared("declared upper edge does not match the interval")

    poles = f.poles()
    pole = poles[0].at if poles else None
    notes = []

    if f.from_edge_distance:
        def coordinate(t):
            return t * t
    elif edge.side == "lower":
        def coordinate(t):
            return a + t * t
    else:
        def coordinate(t):
            return b - t * t

    def psi(t):
        t = np.asarray(t)
        return np.asarray(f.func(coordinate(t))) * (2.0 * t)

    if edge.side == "lower":
        t_hi = math.inf if infinite else math.sqrt(b - a)
        t_p = math.sqrt(pole - a) if pole is not None and pole > a else None
    else:
        t_hi = math.sqrt(b - a)
        t_p = math.sqrt(b - pole) if pole is not None and pole < b else None

    if infinite:
        if tail_split is None:
            pole_span = 4.0 * (pole - a) if pole is not None and pole > a else 1.0
            tail_split = a + 100.0 * max(1.0, pole_span)
        t_cut = math.sqrt(tail_split - a)
        if t_p is not None and t_cut < 2.0 * t_p:
            t_cut = 2.0 * t_p
    else:
        t_cut = t_hi

    if t_p is not None and t_p * t_p < NEAR_COINCIDENCE * t_cut * t_cut:
        notes.append("pole-near-branch-point")

    if t_p is not None and 0.0 < t_p < t_cut:
        v, e, n, t = _pv_interior_pole_full(psi, t_p, 0.0, t_cut, abs_tol, rel_tol)
    else:
        v, e, n, t = _integrate_plain(psi, 0.0, t_cut, False, False, (),
                                      abs_tol, rel_tol)
    notes.extend(t)

    if infinite:
        tail = tail_integral(Integrand(psi), t_cut, abs_tol=abs_tol, rel_tol=rel_tol)
        v += tail.value
        e += tail.abs_error_estimate
        n += tail.evaluations
        notes.extend(tail.notes)
    return QuadratureResult(v, e, n, tuple(notes))


def tail_integral(f, cutoff, *, abs_tol=ABS_TOL_DEFAULT, rel_tol=REL_TOL_DEFAULT,
                  decay_check=True):
    """Integral of ``f`` over [cutoff, infinity) for algebraically decaying f.

    The tail is mapped onto (0, 1] via ``x = cutoff / s**2`` (the extra
    square removes the endpoint kink for decay exponents down to 1.5).
    The empirical decay exponent is estimated from samples; integrands
    decaying slower than x**-1.5 are rejected.
    """
    f = _as_integrand(f)
    cutoff = float(cutoff)
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")

    if decay_check:
        xs = cutoff * 2.0 ** np.arange(5)
        mags = np.abs(np.asarray(f.func(xs)))
        if np.all(mags < 1e-300):
            return QuadratureResult(0.0, 0.0, len(xs), ("tail-identically-zero",))
        with np.errstate(divide="ignore"):
            ratios = mags[:-1] / np.where(mags[1:] > 0, mags[1:], np.nan)
        slopes = np.log2(ratios[np.isfinite(ratios)])
        if slopes.size and np.median(slopes) < 1.5:
            raise DecayTooSlow(
                f"empirical decay exponent {np.median(slopes):.2f} < 1.5 "
                f"beyond cutoff {cutoff:g}")

    def mapped(s):
        s = np.asarray(s)
        x = cutoff / (s * s)
        return np.asarray(f.func(x)) * (2.0 * cutoff) / (s * s * s)

    v, e, n, notes = _run(mapped, np.array([0.0, 0.5, 1.0]), abs_tol, rel_tol)
    return QuadratureResult(v, e, n + 5, notes)
