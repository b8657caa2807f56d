"""Dispersion-relation reconstructions against the closed forms."""

import math

import numpy as np
import pytest

from epskk import kk
from epskk import models as M
from epskk.errors import SingularEvaluationPoint

OSC3 = [(2.0, 1.0, 0.3), (1.5, 3.0, 0.5), (0.8, 7.0, 1.0)]


def graphene_pair(k=1.0):
    p = M.GrapheneParams(k=k, v_fermi=1.0, alpha=M.ALPHA_DEFAULT, c=300.0)
    return M.GrapheneLongitudinal(p), M.GrapheneTransverse(p), p


# ---------------------------------------------------------------------------
# subtraction terms


def test_subtraction_term_table():
    reg = M.PoleClass.regular()
    simple = M.PoleClass.simple(8.0)
    double = M.PoleClass.double(5.0)
    for rel in kk.RELATIONS:
        assert kk.subtraction_term(reg, rel, 0.7) == 0.0
    assert kk.subtraction_term(simple, kk.RE_FROM_IM, 2.0) == 0.0
    assert kk.subtraction_term(simple, kk.IM_FROM_RE, 2.0) == 4.0
    assert kk.subtraction_term(simple, kk.IMAG_AXIS, 2.0) == 0.0
    assert kk.subtraction_term(double, kk.RE_FROM_IM, 2.0) == -1.25
    assert kk.subtraction_term(double, kk.IM_FROM_RE, 2.0) == 1.25
    assert kk.subtraction_term(double, kk.IMAG_AXIS, 2.0) == 1.25
    with pytest.raises(ValueError):
        kk.subtraction_term(double, kk.RE_FROM_IM, 0.0)
    with pytest.raises(ValueError):
        kk.subtraction_term(double, "sideways", 1.0)


def test_graphene_transverse_subtraction_coefficient():
    # the double-pole coefficient feeding the extra terms is pi*alpha*k^2*c*v_F/2
    _, T, p = graphene_pair(k=3.0)
    pc = M.pole_class(T)
    assert pc.coefficient == pytest.approx(
        math.pi * p.alpha * p.k ** 2 * p.c * p.v_fermi / 2.0, rel=1e-15)


# ---------------------------------------------------------------------------
# graphene, real axis


def test_transverse_re_from_im_below_branch():
    L, T, p = graphene_pair()
    r = kk.kk_re_from_im(T, 0.5)
    g = p.coupling
    assert r.direct == pytest.approx(1.0 - g * math.sqrt(0.75) / 0.25, rel=1e-14)
    assert r.rel_residual <= 1e-6
    assert r.subtraction_term == pytest.approx(-g / 0.25, rel=1e-14)


def test_transverse_re_from_im_above_branch():
    _, T, _ = graphene_pair()
    r = kk.kk_re_from_im(T, 3.0)
    assert r.direct == 1.0
    assert r.abs_residual <= 1e-6


def test_longitudinal_re_from_im():
    L, _, p = graphene_pair()
    r = kk.kk_re_from_im(L, 0.5)
    assert r.direct == pytest.approx(1.0 + p.coupling / math.sqrt(0.75), rel=1e-14)
    assert r.rel_residual <= 1e-6
    assert r.subtraction_term == 0.0


def test_transverse_im_from_re():
    _, T, p = graphene_pair()
    g = p.coupling
    r = kk.kk_im_from_re(T, 2.0)
    assert r.direct == pytest.approx(g * math.sqrt(3.0) / 4.0, rel=1e-14)
    assert r.abs_residual <= 1e-6
    r = kk.kk_im_from_re(T, 1.0 / 3.0)
    assert r.direct == 0.0
    assert abs(r.reconstructed) <= 1e-6
    r = kk.kk_im_from_re(T, -2.0)
    assert r.reconstructed == pytest.approx(-g * math.sqrt(3.0) / 4.0, abs=1e-8)


def test_longitudinal_im_from_re():
    L, _, p = graphene_pair()
    g = p.coupling
    r = kk.kk_im_from_re(L, -2.0)
    assert r.direct == pytest.approx(-g / math.sqrt(3.0), rel=1e-14)
    assert r.abs_residual <= 1e-6
    r = kk.kk_im_from_re(L, 0.5)
    assert r.direct == 0.0
    assert abs(r.reconstructed) <= 1e-6


def test_round_trip_small_grid():
    L, T, _ = graphene_pair()
    grid = np.geomspace(1e-2, 1e2, 21)
    grid = grid[np.abs(grid - 1.0) >= 0.05]
    for model in (L, T):
        for w in grid:
            assert kk.kk_re_from_im(model, float(w)).rel_residual <= 1e-6
            assert kk.kk_im_from_re(model, float(w)).rel_residual <= 1e-6


def test_wave_vector_parametricity():
    # identical dimensionless residual behavior across three decades of k
    for k in (0.03, 1.0, 30.0):
        L, T, _ = graphene_pair(k=k)
        b = k
        for w_over_b in (0.3, 2.5):
            assert kk.kk_re_from_im(T, w_over_b * b).rel_residual <= 1e-6
            assert kk.kk_im_from_re(L, w_over_b * b).rel_residual <= 1e-6


def test_branch_window_edge():
    # relations hold right at the edge of the testing exclusion window
    L, T, _ = graphene_pair()
    for w in (0.95, 1.05):
        assert kk.kk_re_from_im(L, w).rel_residual <= 1e-4
        assert kk.kk_re_from_im(T, w).rel_residual <= 1e-4
        assert kk.kk_im_from_re(L, w).rel_residual <= 1e-4
        assert kk.kk_im_from_re(T, w).rel_residual <= 1e-4


def test_singular_evaluation_points_rejected():
    L, T, _ = graphene_pair()
    with pytest.raises(SingularEvaluationPoint):
        kk.kk_re_from_im(L, 1.0)
    with pytest.raises(SingularEvaluationPoint):
        kk.kk_im_from_re(T, 0.0)
    with pytest.raises(ValueError):
        kk.kk_imag_axis(L, 0.0)
    with pytest.raises(ValueError):
        kk.kk_imag_axis(L, -1.0)


# ---------------------------------------------------------------------------
# graphene, imaginary axis


def test_imag_axis_spot_values():
    L, T, p = graphene_pair()
    g = p.coupling
    r = kk.kk_imag_axis(L, 1.0)
    assert r.direct == pytest.approx(1.0 + g / math.sqrt(2.0), rel=1e-14)
    assert r.rel_residual <= 1e-7
    r = kk.kk_imag_axis(T, 1.0)
    assert r.direct == pytest.approx(1.0 + g * math.sqrt(2.0), rel=1e-14)
    assert r.rel_residual <= 1e-7
    assert r.subtraction_term == pytest.approx(g, rel=1e-14)


def test_imag_axis_sweep_and_monotonicity():
    L, T, _ = graphene_pair()
    xis = np.geomspace(1e-2, 1e2, 17)
    prev = math.inf
    for xi in xis:
        rL = kk.kk_imag_axis(L, float(xi))
        rT = kk.kk_imag_axis(T, float(xi))
        assert rL.rel_residual <= 1e-7
        assert rT.rel_residual <= 1e-7
        # longitudinal response decreases monotonically along the axis
        assert rL.direct < prev
        prev = rL.direct


# ---------------------------------------------------------------------------
# reference models


def test_plasma_relations_are_exact_identities():
    P = M.Plasma(2.0)
    r = kk.kk_re_from_im(P, 0.7)
    assert r.abs_residual <= 1e-12
    assert r.reconstructed - 1.0 == r.subtraction_term  # zero integral part
    r = kk.kk_im_from_re(P, 0.7)
    assert r.direct == 0.0
    assert r.reconstructed == 0.0
    r = kk.kk_imag_axis(P, 1.3)
    assert r.abs_residual <= 1e-12
    assert r.reconstructed - 1.0 == pytest.approx(4.0 / 1.3 ** 2, rel=1e-15)


def test_drude_without_relaxation_behaves_as_plasma():
    D = M.Drude(2.0, 0.0)
    for w in (0.4, 3.0):
        r = kk.kk_re_from_im(D, w)
        assert r.abs_residual <= 1e-12
        assert r.reconstructed - 1.0 == r.subtraction_term
        r = kk.kk_im_from_re(D, w)
        assert r.reconstructed == 0.0
    r = kk.kk_imag_axis(D, 1.1)
    assert r.abs_residual <= 1e-12


def test_drude_inverse_relation_matches_algebra():
    D = M.Drude(2.0, 0.5)
    for w in (0.1, 0.5, 2.0, 10.0, -1.0):
        r = kk.kk_im_from_re(D, w)
        algebraic = 2.0 ** 2 * 0.5 / (w * (w * w + 0.25))
        assert r.direct == pytest.approx(algebraic, rel=1e-14)
        assert r.rel_residual <= 1e-8


def test_drude_direct_relation():
    D = M.Drude(2.0, 0.5)
    for w in (0.3, 1.7, 6.0):
        assert kk.kk_re_from_im(D, w).rel_residual <= 1e-8


def test_drude_imag_axis():
    D = M.Drude(2.0, 0.5)
    for xi in (0.2, 1.0, 8.0):
        r = kk.kk_imag_axis(D, xi)
        expect = 1.0 + 4.0 / (xi * (xi + 0.5))
        assert r.direct == pytest.approx(expect, rel=1e-14)
        assert r.rel_residual <= 1e-8
        assert r.subtraction_term == 0.0


def test_oscillator_relations():
    model = M.Oscillator(OSC3)
    for w in (0.4, 1.1, 2.8, 9.0):
        assert kk.kk_re_from_im(model, w).rel_residual <= 1e-8
        assert kk.kk_im_from_re(model, w).rel_residual <= 1e-8


def test_generalized_plasma_relations():
    model = M.GeneralizedPlasma(2.0, OSC3)
    for w in (0.3, 1.4, 4.0, 20.0):
        r = kk.kk_re_from_im(model, w)
        assert r.rel_residual <= 1e-6
        assert r.subtraction_term == pytest.approx(-4.0 / (w * w), rel=1e-15)
        r = kk.kk_im_from_re(model, w)
        assert r.rel_residual <= 1e-6
    r = kk.kk_imag_axis(model, 1.1)
    assert r.rel_residual <= 1e-7


def test_static_value_from_absorption():
    # at omega = 0 the direct relation reduces to a sum rule for the
    # static permittivity of models that are regular there
    L, _, p = graphene_pair()
    r = kk.kk_re_from_im(L, 0.0)
    assert r.direct == pytest.approx(1.0 + p.coupling, rel=1e-15)
    assert r.rel_residual <= 1e-8
    osc = M.Oscillator(OSC3)
    r = kk.kk_re_from_im(osc, 0.0)
    assert r.direct == pytest.approx(1.0 + 2.0 + 1.5 / 9.0 + 0.8 / 49.0, rel=1e-15)
    assert r.rel_residual <= 1e-8
    assert kk.kk_im_from_re(osc, 0.0).reconstructed == 0.0


def test_report_residual_definitions():
    L, _, _ = graphene_pair()
    r = kk.kk_re_from_im(L, 0.4)
    assert r.abs_residual == abs(r.direct - r.reconstructed)
    assert r.rel_residual == r.abs_residual / max(abs(r.direct), 1.0)
