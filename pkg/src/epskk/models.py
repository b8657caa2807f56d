"""Closed-form response functions on the real axis, the upper half-plane
and the imaginary frequency axis.

Six models are provided: the longitudinal and transverse nonlocal
permittivities of pristine graphene at zero temperature (derived from the
one-loop polarization tensor), and four reference models from condensed
matter physics (oscillator/insulator, Drude, plasma, generalized plasma).
All are analytic in the open upper half-plane; they differ in their
behavior at zero frequency, which is what selects the applicable form of
the dispersion relations:

* regular at 0         -- oscillator, graphene longitudinal
* simple pole at 0     -- Drude (relaxation gamma > 0)
* double pole at 0     -- plasma, generalized plasma, graphene transverse

Graphene carries branch points at omega = +/- b with b = v_F * k; the
single analytic branch used off the real axis is fixed by S(0) = +b and
continuity in the upper half-plane.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchPointSingularity, DomainError, SingularEvaluationPoint

#: default fine-structure constant
ALPHA_DEFAULT = 1.0 / 137.036

#: relative half-width of the window around |omega| = b treated as singular
BRANCH_TOL = 1e-12

REGULAR = "regular"
AT_BRANCH_POINT = "at-branch-point"
AT_ZERO_FREQUENCY_POLE = "at-zero-frequency-pole"


# ---------------------------------------------------------------------------
# parameter records


@dataclass(frozen=True)
class GrapheneParams:
    """Wave vector and material constants for the graphene response.

    ``k`` is the magnitude of the two-dimensional wave vector, ``v_fermi``
    the Fermi velocity, ``c`` the speed of light, all in any consistent
    unit system.  The derived quantities are the branch frequency
    ``b = v_fermi * k`` and the dimensionless static longitudinal
    susceptibility ``coupling = pi * alpha * c / (2 * v_fermi)``.
    """

    k: float
    v_fermi: float = 1.0 / 300.0
    alpha: float = ALPHA_DEFAULT
    c: float = 1.0

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError("wave vector k must be positive")
        if not (0 < self.v_fermi < self.c):
            raise ValueError("need 0 < v_fermi < c")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    @property
    def b(self):
        return self.v_fermi * self.k

    @property
    def coupling(self):
        return math.pi * self.alpha * self.c / (2.0 * self.v_fermi)


@dataclass(frozen=True)
class DrudeParams:
    omega_p: float
    gamma: float = 0.0

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ValueError("plasma frequency must be positive")
        if self.gamma < 0:
            raise ValueError("relaxation parameter must be >= 0")


@dataclass(frozen=True)
class OscillatorParams:
    """Set of damped oscillators (strength, frequency, damping)."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((float(g), float(w), float(gm)) for g, w, gm in self.terms)
        object.__setattr__(self, "terms", terms)
        for _, w, gm in terms:
            if w == 0:
                raise ValueError("oscillator frequencies must be nonzero")
            if gm < 0:
                raise ValueError("oscillator damping must be >= 0")


# ---------------------------------------------------------------------------
# pole classification


@dataclass(frozen=True)
class PoleClass:
    """Behavior of the susceptibility at zero frequency.

    ``order`` is 0 (regular), 1 (simple pole) or 2 (double pole);
    ``coefficient`` is the strength of the leading singular term:
    Im chi ~ coefficient / omega for a simple pole, and
    Re chi ~ -coefficient / omega**2 for a double pole.
    """

    order: int
    coefficient: float = 0.0

    @classmethod
    def regular(cls):
        return cls(0, 0.0)

    @classmethod
    def simple(cls, coefficient):
        return cls(1, float(coefficient))

    @classmethod
    def double(cls, coefficient):
        return cls(2, float(coefficient))


@dataclass(frozen=True)
class ComplexPermittivity:
    """Permittivity value plus a validity flag.

    When ``status`` is not REGULAR the value is NaN and must not be used.
    """

    value: complex
    status: str = REGULAR

    @property
    def is_regular(self):
        return self.status == REGULAR


def _singular(status):
    return ComplexPermittivity(complex(float("nan"), float("nan")), status)


# ---------------------------------------------------------------------------
# model variants


class ResponseModel:
    """Base class; concrete models implement the vectorized susceptibility."""

    #: branch-point frequency, or None for spatially local models
    branch_point = None
    #: True when Im chi vanishes identically on the real axis
    imag_chi_is_zero = False

    def chi_real_axis(self, x):
        """Vectorized susceptibility chi = eps - 1 on the real axis.

        No singular-point bookkeeping: callers must stay off the singular
        set (values there come out inf/nan).
        """
        raise NotImplementedError

    def chi_upper_half(self, z):
        """Vectorized susceptibility for Im z >= 0 (no domain checks)."""
        raise NotImplementedError

    def pole_class(self):
        raise NotImplementedError

    def frequency_scales(self):
        """Characteristic positive frequencies, used to place quadrature breaks."""
        raise NotImplementedError

    def real_axis_status(self, omega):
        """Status flag for scalar evaluation at a real frequency."""
        return REGULAR


def _normalize_uhp(z):
    """Push signed-zero imaginary parts onto the upper edge of the cut."""
    z = np.asarray(z, dtype=complex)
    on_axis = z.imag == 0.0
    if np.any(on_axis):
        z = np.where(on_axis, z.real + 0.0j, z)
    return z


class _GrapheneBase(ResponseModel):
    def __init__(self, params):
        if not isinstance(params, GrapheneParams):
            params = GrapheneParams(**params)
        self.params = params

    @property
    def branch_point(self):
        return self.params.b

    def _branch_sqrt(self, z):
        """S(z): the analytic continuation of sqrt(b^2 - z^2) with S(0) = +b.

        Implemented as -i*sqrt(z - b)*sqrt(z + b) with principal roots,
        whose cuts both lie on the real axis, so S is analytic in the open
        upper half-plane and continuous onto the real axis from above.
        S(z) -> -i z for |z| -> inf in the upper half-plane, and S is real
        positive on the imaginary axis.
        """
        b = self.params.b
        z = _normalize_uhp(z)
        s = -1j * np.sqrt(z - b) * np.sqrt(z + b)
        imag_axis = z.real == 0.0
        if np.any(imag_axis):
            exact = np.sqrt(b * b + z.imag ** 2) + 0.0j
            s = np.where(imag_axis, exact, s)
        return s

    def real_axis_status(self, omega):
        b = self.params.b
        if abs(abs(omega) - b) < BRANCH_TOL * b:
            return AT_BRANCH_POINT
        return REGULAR

    def frequency_scales(self):
        return (self.params.b,)

    def chi_imag_above_branch(self, t):
        """Im chi at x = sqrt(b^2 + t^2), parametrized by t = sqrt(x^2 - b^2).

        Near the branch point the distance t cannot be recovered from a
        rounded x without catastrophic cancellation; integrands that live
        close to the branch point should be built from this form.
        """
        raise NotImplementedError


class GrapheneLongitudinal(_GrapheneBase):
    """Longitudinal (density-channel) permittivity of pristine graphene."""

    def chi_real_axis(self, x):
        x = np.asarray(x, dtype=float)
        p = self.params
        b = p.b
        gb = p.coupling * b
        out = np.empty(np.shape(x), dtype=complex)
        inside = np.abs(x) < b
        # factored branch distances stay accurate next to the branch point
        with np.errstate(invalid="ignore", divide="ignore"):
            xi = x[inside]
            out[inside] = gb / np.sqrt((b - xi) * (b + xi))
            xo = np.abs(x[~inside])
            out[~inside] = (1j * np.sign(x[~inside]) * gb
                            / np.sqrt((xo - b) * (xo + b)))
        return out

    def chi_imag_above_branch(self, t):
        p = self.params
        return p.coupling * p.b / np.asarray(t)

    def chi_upper_half(self, z):
        p = self.params
        with np.errstate(invalid="ignore", divide="ignore"):
            return p.coupling * p.b / self._branch_sqrt(z)

    def pole_class(self):
        return PoleClass.regular()


class GrapheneTransverse(_GrapheneBase):
    """Transverse (current-channel) permittivity of pristine graphene.

    Re chi carries a double pole at zero frequency for every nonzero wave
    vector; the coefficient enters the dispersion relations as an extra
    subtraction term.
    """

    def chi_real_axis(self, x):
        x = np.asarray(x, dtype=float)
        p = self.params
        b = p.b
        gb = p.coupling * b
        out = np.empty(np.shape(x), dtype=complex)
        inside = np.abs(x) < b
        with np.errstate(invalid="ignore", divide="ignore"):
            xi = x[inside]
            out[inside] = -gb * np.sqrt((b - xi) * (b + xi)) / (xi * xi)
            xo = x[~inside]
            axo = np.abs(xo)
            out[~inside] = (1j * np.sign(xo) * gb
                            * np.sqrt((axo - b) * (axo + b)) / (xo * xo))
        return out

    def chi_imag_above_branch(self, t):
        p = self.params
        t = np.asarray(t)
        return p.coupling * p.b * t / (t * t + p.b ** 2)

    def chi_upper_half(self, z):
        p = self.params
        z = _normalize_uhp(z)
        with np.errstate(invalid="ignore", divide="ignore"):
            return -p.coupling * p.b * self._branch_sqrt(z) / (z * z)

    def pole_class(self):
        p = self.params
        return PoleClass.double(p.coupling * p.b ** 2)

    def real_axis_status(self, omega):
        if omega == 0.0:
            return AT_ZERO_FREQUENCY_POLE
        return super().real_axis_status(omega)


class Oscillator(ResponseModel):
    """Insulator-type response: a finite sum of damped oscillators."""

    def __init__(self, params):
        if not isinstance(params, OscillatorParams):
            params = OscillatorParams(tuple(params))
        self.params = params

    def chi_real_axis(self, x):
        return self.chi_upper_half(np.asarray(x, dtype=float) + 0.0j)

    def chi_upper_half(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(np.shape(z), dtype=complex)
        for g, w, gm in self.params.terms:
            out = out + g / (w * w - z * z - 1j * gm * z)
        return out

    def pole_class(self):
        return PoleClass.regular()

    def frequency_scales(self):
        scales = []
        for _, w, gm in self.params.terms:
            scales.append(abs(w))
            if gm > 0:
                scales.append(gm)
        return tuple(scales)


class Drude(ResponseModel):
    """Conduction-electron response with relaxation.

    With gamma = 0 this degenerates to the plasma model and is classified
    as a double pole, not a simple one.
    """

    def __init__(self, params, gamma=None):
        if isinstance(params, DrudeParams):
            self.params = params
        else:
            self.params = DrudeParams(float(params), float(gamma or 0.0))

    def chi_real_axis(self, x):
        return self.chi_upper_half(np.asarray(x, dtype=float) + 0.0j)

    def chi_upper_half(self, z):
        z = np.asarray(z, dtype=complex)
        p = self.params
        with np.errstate(invalid="ignore", divide="ignore"):
            return -p.omega_p ** 2 / (z * (z + 1j * p.gamma))

    def pole_class(self):
        p = self.params
        if p.gamma == 0.0:
            return PoleClass.double(p.omega_p ** 2)
        return PoleClass.simple(p.omega_p ** 2 / p.gamma)

    def frequency_scales(self):
        p = self.params
        return (p.omega_p, p.gamma) if p.gamma > 0 else (p.omega_p,)

    def real_axis_status(self, omega):
        return AT_ZERO_FREQUENCY_POLE if omega == 0.0 else REGULAR

    @property
    def imag_chi_is_zero(self):
        return self.params.gamma == 0.0


class Plasma(ResponseModel):
    """Dissipationless free-electron response: chi = -omega_p^2 / omega^2."""

    imag_chi_is_zero = True

    def __init__(self, omega_p):
        if not omega_p > 0:
            raise ValueError("plasma frequency must be positive")
        self.omega_p = float(omega_p)

    def chi_real_axis(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(invalid="ignore", divide="ignore"):
            return -self.omega_p ** 2 / (x * x) + 0.0j

    def chi_upper_half(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(invalid="ignore", divide="ignore"):
            return -self.omega_p ** 2 / (z * z)

    def pole_class(self):
        return PoleClass.double(self.omega_p ** 2)

    def frequency_scales(self):
        return (self.omega_p,)

    def real_axis_status(self, omega):
        return AT_ZERO_FREQUENCY_POLE if omega == 0.0 else REGULAR


class GeneralizedPlasma(ResponseModel):
    """Plasma term plus oscillator terms for the core electrons."""

    def __init__(self, omega_p, oscillator_params):
        self.plasma = Plasma(omega_p)
        self.oscillator = Oscillator(oscillator_params)

    @property
    def omega_p(self):
        return self.plasma.omega_p

    def chi_real_axis(self, x):
        return self.plasma.chi_real_axis(x) + self.oscillator.chi_real_axis(x)

    def chi_upper_half(self, z):
        return self.plasma.chi_upper_half(z) + self.oscillator.chi_upper_half(z)

    def chi_real_regularized(self, x):
        """Re chi(x) + omega_p^2 / x^2: the double-pole term cancels exactly."""
        return self.oscillator.chi_real_axis(x).real

    def pole_class(self):
        return PoleClass.double(self.omega_p ** 2)

    def frequency_scales(self):
        return (self.omega_p,) + self.oscillator.frequency_scales()

    def real_axis_status(self, omega):
        return AT_ZERO_FREQUENCY_POLE if omega == 0.0 else REGULAR


# ---------------------------------------------------------------------------
# operations


def eval_real(model, omega):
    """Permittivity eps(omega, k) at a real frequency, with status flag."""
    status = model.real_axis_status(float(omega))
    if status != REGULAR:
        return _singular(status)
    value = complex(model.chi_real_axis(np.asarray([omega]))[0]) + 1.0
    return ComplexPermittivity(value, REGULAR)


def eval_complex(model, omega):
    """Permittivity at a complex frequency in the closed upper half-plane.

    On the real axis this reproduces :func:`eval_real` including the sign
    of the imaginary part; on the imaginary axis the value is real.
    """
    omega = complex(omega)
    if omega.imag < 0.0:
        raise DomainError("frequency must lie in the closed upper half-plane")
    if omega.imag == 0.0:
        status = model.real_axis_status(omega.real)
        if status != REGULAR:
            return _singular(status)
    value = complex(model.chi_upper_half(np.asarray([omega]))[0]) + 1.0
    return ComplexPermittivity(value, REGULAR)


def pole_class(model):
    """Classification of the model's susceptibility at zero frequency."""
    return model.pole_class()


def parity_defect(model, omega):
    """Deviation from Re-even / Im-odd symmetry at +/- omega.

    Returns (|Re eps(w) - Re eps(-w)|, |Im eps(w) + Im eps(-w)|); both
    should sit at machine-epsilon scale for every model.
    """
    plus = eval_real(model, omega)
    minus = eval_real(model, -omega)
    if not (plus.is_regular and minus.is_regular):
        raise SingularEvaluationPoint(
            f"omega = +/-{omega} touches the singular set ({plus.status}/{minus.status})")
    return (
        abs(plus.value.real - minus.value.real),
        abs(plus.value.imag + minus.value.imag),
    )


def _check_off_branch(params, omega):
    b = params.b
    if abs(abs(omega) - b) < BRANCH_TOL * b:
        raise BranchPointSingularity(f"|omega| = {abs(omega)} is at the branch point b = {b}")


def polarization_00(params, omega):
    """00-component of the graphene polarization tensor at T = 0, over hbar.

    Returned in units of hbar (i.e. the numerical value of Pi_00/hbar,
    dimension wave-vector squared times velocity over frequency).
    """
    _check_off_branch(params, omega)
    pref = math.pi * params.alpha * params.k ** 2 * params.c
    b = params.b
    if abs(omega) < b:
        return complex(pref / math.sqrt(b * b - omega * omega))
    root = math.sqrt(omega * omega - b * b)
    return (1j if omega > 0 else -1j) * pref / root


def polarization_combo(params, omega):
    """Combination k^2*Pi_tr + (omega^2 - c^2 k^2)/c^2 * Pi_00, over hbar.

    This is the combination that determines the transverse permittivity.
    """
    _check_off_branch(params, omega)
    pref = math.pi * params.alpha * params.k ** 2 / params.c
    b = params.b
    if abs(omega) < b:
        return complex(pref * math.sqrt(b * b - omega * omega))
    root = math.sqrt(omega * omega - b * b)
    return (-1j if omega > 0 else 1j) * pref * root
