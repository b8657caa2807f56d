"""Pole-class-aware dispersion-relation transforms.

Each transform reconstructs one part of the permittivity from the other
via a principal-value integral over the real frequency axis (or the
half-axis, after folding with the Re-even/Im-odd parity), plus the extra
term required by the model's behavior at zero frequency:

* regular:      no extra term in either direction
* simple pole:  Im-from-Re acquires  + coefficient / omega
* double pole:  Re-from-Im acquires  - coefficient / omega**2,
                Im-from-Re integrates the regularized combination
                Re chi(x) + coefficient / x**2,
                the imaginary-axis representation acquires
                + coefficient / xi**2

Reconstructions work on susceptibilities (eps - 1) to avoid loss of
significance where eps is close to 1; the 1 is added back in reports.
For graphene, frequencies are normalized internally to the branch
frequency b = v_F * k, which collapses the wave-vector dependence into a
single dimensionless coupling.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import models as _m
from . import quadrature as _q
from .errors import SingularEvaluationPoint
from .models import eval_complex, eval_real
from .quadrature import Integrand, SimplePole, SqrtEndpoint

RE_FROM_IM = "re-from-im"
IM_FROM_RE = "im-from-re"
IMAG_AXIS = "imag-axis"

RELATIONS = (RE_FROM_IM, IM_FROM_RE, IMAG_AXIS)

#: inner quadrature targets; the reconstruction thresholds are >= 1e-8
ABS_TOL_INNER = 1e-12
REL_TOL_INNER = 1e-10


@dataclass
class KKReport:
    """One reconstruction record.

    ``direct`` is the closed-form value of the reconstructed quantity
    (permittivity level for the real part, as-is for the imaginary part);
    ``subtraction_term`` is the canonical pole-class term of the relation
    evaluated at the frequency.  ``rel_residual`` is normalized by
    max(|direct|, 1).
    """

    omega: float
    direct: float
    reconstructed: float
    subtraction_term: float
    abs_residual: float
    rel_residual: float


def subtraction_term(pole, relation, at):
    """Extra term the named dispersion relation needs for a pole class.

    For a double pole the Im-from-Re value is the integrand augmentation
    ``+ coefficient / at**2`` (added inside the principal-value integral),
    not an additive term outside it.
    """
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    if at == 0.0:
        raise ValueError("evaluation point must be nonzero")
    if pole.order == 0:
        return 0.0
    if pole.order == 1:
        return pole.coefficient / at if relation == IM_FROM_RE else 0.0
    if relation == RE_FROM_IM:
        return -pole.coefficient / (at * at)
    return pole.coefficient / (at * at)


def _make_report(omega, direct, reconstructed, sub_term):
    abs_res = abs(direct - reconstructed)
    return KKReport(
        omega=float(omega),
        direct=float(direct),
        reconstructed=float(reconstructed),
        subtraction_term=float(sub_term),
        abs_residual=float(abs_res),
        rel_residual=float(abs_res / max(abs(direct), 1.0)),
    )


def _require_regular(model, omega):
    status = model.real_axis_status(float(omega))
    if status != _m.REGULAR:
        raise SingularEvaluationPoint(
            f"omega = {omega} lies on the singular set ({status})")


def _is_graphene(model):
    return isinstance(model, (_m.GrapheneLongitudinal, _m.GrapheneTransverse))


def _unit_graphene(model):
    """Same graphene model rescaled to b = 1 (same dimensionless coupling)."""
    p = model.params
    unit = _m.GrapheneParams(k=1.0, v_fermi=1.0, alpha=p.alpha, c=p.c / p.v_fermi)
    return type(model)(unit)


# ---------------------------------------------------------------------------
# half-axis integrals


def _halfline_breaks(w, scales):
    pts = sorted({s for s in scales if s > 0} | {0.5 * w, 2.0 * w} - {0.0})
    top = 100.0 * max([w, *scales, 1e-300])
    return [p for p in pts if p < top], top


def _generic_even_kernel_integral(values_fn, w_abs, scales, abs_tol, rel_tol):
    """PV of integral_0^inf  values(x) / (x**2 - w**2) dx  (pole at w_abs).

    ``values_fn`` must vanish linearly at 0 when ``w_abs`` is 0, in which
    case the apparent pole is removable and no principal value is needed.
    """
    points, top = _halfline_breaks(w_abs, scales)

    def far(x):
        x = np.asarray(x)
        return np.asarray(values_fn(x)) / (x * x - w_abs * w_abs)

    if w_abs == 0.0:
        res = _q.quad_adaptive(Integrand(far), 0.0, top, points=points,
                               abs_tol=abs_tol, rel_tol=rel_tol)
    else:
        def numerator(x):
            x = np.asarray(x)
            return np.asarray(values_fn(x)) / (x + w_abs)

        res = _q.pv_simple_pole(Integrand(numerator), w_abs, (0.0, top),
                                abs_tol=abs_tol, rel_tol=rel_tol, points=points)

    tail = _q.tail_integral(Integrand(far), top, abs_tol=abs_tol, rel_tol=rel_tol)
    return res.value + tail.value, res.abs_error_estimate + tail.abs_error_estimate


def _generic_imag_axis_integral(values_fn, xi, scales, abs_tol, rel_tol):
    """integral_0^inf values(x) / (x**2 + xi**2) dx (no pole)."""
    points, top = _halfline_breaks(xi, scales)

    def near(x):
        x = np.asarray(x)
        return np.asarray(values_fn(x)) / (x * x + xi * xi)

    res = _q.quad_adaptive(Integrand(near), 0.0, top, points=points,
                           abs_tol=abs_tol, rel_tol=rel_tol)
    tail = _q.tail_integral(Integrand(near), top, abs_tol=abs_tol, rel_tol=rel_tol)
    return res.value + tail.value, res.abs_error_estimate + tail.abs_error_estimate


# ---------------------------------------------------------------------------
# graphene-specific routes (computed at b = 1)


def _graphene_halfline(model, denom_shift, pole_u, scale, abs_tol, rel_tol):
    """integral_0^inf Im chi(sqrt(u+1)) / (u + 1 + denom_shift) du.

    The substitution u = x**2 - 1 absorbs the inverse-square-root branch
    behavior of Im chi at the branch point into the lower endpoint, which
    the sqrt-endpoint primitive then regularizes; ``pole_u`` marks the
    principal-value pole in u when the evaluation frequency exceeds b.
    """
    def phi(u):
        u = np.asarray(u)
        # Im chi parametrized by the branch distance sqrt(u): reconstructing
        # it from x = sqrt(u + 1) would lose the distance to rounding
        return model.chi_imag_above_branch(np.sqrt(u)) / (u + 1.0 + denom_shift)

    sing = [SqrtEndpoint(0.0, "lower")]
    if pole_u is not None:
        sing.append(SimplePole(pole_u))
    top_u = (100.0 * max(1.0, scale)) ** 2 - 1.0
    res = _q.sqrt_endpoint_integral(Integrand(phi, tuple(sing)), (0.0, math.inf),
                                    abs_tol=abs_tol, rel_tol=rel_tol,
                                    tail_split=top_u)
    return res.value, res.abs_error_estimate


def _graphene_re_from_im(model, w, abs_tol, rel_tol):
    """Reconstructed Re chi at |omega/b| = w for a unit-b graphene model."""
    pole_u = w * w - 1.0 if w > 1.0 else None
    val, err = _graphene_halfline(model, -w * w, pole_u, w, abs_tol, rel_tol)
    return val / math.pi, err


def _graphene_imag_axis(model, xi, abs_tol, rel_tol):
    val, err = _graphene_halfline(model, xi * xi, None, xi, abs_tol, rel_tol)
    return val / math.pi, err


def _transverse_im_from_re(model, w, abs_tol, rel_tol):
    """Im chi via the regularized combination for the transverse response.

    The double-pole augmentation and the compactly supported real part
    combine into two regular integrals: a principal value of
    sqrt(1-x^2)/(x-w) over (-1, 1) and the removable-integrand integral
    of (1 - sqrt(1-x^2))/x^2, plus an exactly known constant.  Divergent
    pieces are never evaluated separately.
    """
    g = model.params.coupling
    edges = (SqrtEndpoint(-1.0, "lower"), SqrtEndpoint(1.0, "upper"))

    def circle(x):
        x = np.asarray(x)
        return np.sqrt(np.maximum((1.0 - x) * (1.0 + x), 0.0))

    i1 = _q.pv_simple_pole(Integrand(circle, edges), w, (-1.0, 1.0),
                           abs_tol=abs_tol, rel_tol=rel_tol)

    def dome(x):
        x = np.asarray(x)
        return 1.0 - np.sqrt(np.maximum((1.0 - x) * (1.0 + x), 0.0))

    i2 = _q.pv_double_pole(Integrand(dome, edges), (-1.0, 1.0),
                           abs_tol=abs_tol, rel_tol=rel_tol)

    value = (g / math.pi) * (i1.value / (w * w) + (i2.value + 2.0) / w)
    err = (g / math.pi) * (i1.abs_error_estimate / (w * w)
                           + i2.abs_error_estimate / abs(w))
    return value, err


def _longitudinal_im_from_re(model, w, abs_tol, rel_tol):
    """Im chi from the compactly supported real part of the longitudinal response.

    The integrand is parametrized by the distance s = b - x below the
    branch point, where Re chi = g*b/sqrt(s*(2b - s)) is evaluated
    without cancellation.
    """
    w_abs = abs(w)
    g = model.params.coupling

    def phi_from_dist(s):
        s = np.asarray(s)
        x = 1.0 - s
        return g / (np.sqrt(s * (2.0 - s)) * ((x - w_abs) * (x + w_abs)))

    sing = [SqrtEndpoint(1.0, "upper")]
    if w_abs < 1.0:
        sing.append(SimplePole(w_abs))
    res = _q.sqrt_endpoint_integral(
        Integrand(phi_from_dist, tuple(sing), from_edge_distance=True),
        (0.0, 1.0), abs_tol=abs_tol, rel_tol=rel_tol)
    return -(2.0 * w / math.pi) * res.value, abs(2.0 * w / math.pi) * res.abs_error_estimate


# ---------------------------------------------------------------------------
# operations


def kk_re_from_im(model, omega, *, abs_tol=ABS_TOL_INNER, rel_tol=REL_TOL_INNER):
    """Reconstruct Re eps(omega) from Im eps via the dispersion relation."""
    omega = float(omega)
    _require_regular(model, omega)
    direct = eval_real(model, omega).value.real
    pc = model.pole_class()
    sub = subtraction_term(pc, RE_FROM_IM, omega) if omega != 0.0 else 0.0

    if model.imag_chi_is_zero:
        chi_re = sub
    elif _is_graphene(model):
        unit = _unit_graphene(model)
        w = abs(omega) / model.params.b
        val, _ = _graphene_re_from_im(unit, w, abs_tol, rel_tol)
        chi_re = val + (subtraction_term(unit.pole_class(), RE_FROM_IM, w)
                        if w != 0.0 else 0.0)
    else:
        def x_im_chi(x):
            return x * model.chi_real_axis(x).imag

        val, _ = _generic_even_kernel_integral(
            x_im_chi, abs(omega), model.frequency_scales(), abs_tol, rel_tol)
        chi_re = (2.0 / math.pi) * val + sub
    return _make_report(omega, direct, 1.0 + chi_re, sub)


def kk_im_from_re(model, omega, *, abs_tol=ABS_TOL_INNER, rel_tol=REL_TOL_INNER):
    """Reconstruct Im eps(omega) from Re eps via the inverse dispersion relation."""
    omega = float(omega)
    _require_regular(model, omega)
    direct = eval_real(model, omega).value.imag
    pc = model.pole_class()
    sub = subtraction_term(pc, IM_FROM_RE, omega) if omega != 0.0 else 0.0
    if omega == 0.0:
        # only models regular at 0 reach this point; Im eps(0) = 0 and the
        # folded integral carries a vanishing prefactor
        return _make_report(omega, direct, 0.0, sub)

    if model.imag_chi_is_zero and pc.order == 2:
        # lossless plasma-type response: the regularized integrand is
        # identically zero and the relation is an exact identity
        im_rec = 0.0
    elif isinstance(model, _m.GrapheneTransverse):
        unit = _unit_graphene(model)
        val, _ = _transverse_im_from_re(unit, omega / model.params.b, abs_tol, rel_tol)
        im_rec = val
    elif isinstance(model, _m.GrapheneLongitudinal):
        unit = _unit_graphene(model)
        val, _ = _longitudinal_im_from_re(unit, omega / model.params.b, abs_tol, rel_tol)
        im_rec = val
    else:
        if pc.order == 2:
            regularized = model.chi_real_regularized
        else:
            def regularized(x):
                return model.chi_real_axis(x).real

        val, _ = _generic_even_kernel_integral(
            regularized, abs(omega), model.frequency_scales(), abs_tol, rel_tol)
        im_rec = -(2.0 * omega / math.pi) * val
        if pc.order == 1:
            im_rec += sub
    return _make_report(omega, direct, im_rec, sub)


def kk_imag_axis(model, xi, *, abs_tol=ABS_TOL_INNER, rel_tol=REL_TOL_INNER):
    """Reconstruct eps(i xi) from Im eps on the positive real half-axis."""
    xi = float(xi)
    if not xi > 0.0:
        raise ValueError("imaginary-axis point xi must be positive")
    direct = eval_complex(model, 1j * xi).value.real
    pc = model.pole_class()
    sub = subtraction_term(pc, IMAG_AXIS, xi)

    if model.imag_chi_is_zero:
        chi_rec = sub
    elif _is_graphene(model):
        unit = _unit_graphene(model)
        xs = xi / model.params.b
        val, _ = _graphene_imag_axis(unit, xs, abs_tol, rel_tol)
        chi_rec = val + subtraction_term(unit.pole_class(), IMAG_AXIS, xs)
    else:
        def x_im_chi(x):
            return x * model.chi_real_axis(x).imag

        val, _ = _generic_imag_axis_integral(
            x_im_chi, xi, model.frequency_scales(), abs_tol, rel_tol)
        chi_rec = (2.0 / math.pi) * val + sub
    return _make_report(xi, direct, 1.0 + chi_rec, sub)


def reconstruct(model, relation, at, **kw):
    """Dispatch helper: run the named relation at one frequency."""
    if relation == RE_FROM_IM:
        return kk_re_from_im(model, at, **kw)
    if relation == IM_FROM_RE:
        return kk_im_from_re(model, at, **kw)
    if relation == IMAG_AXIS:
        return kk_imag_axis(model, at, **kw)
    raise ValueError(f"unknown relation {relation!r}")
