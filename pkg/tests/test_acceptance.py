"""Acceptance suite: one test per criterion, at the stated tolerances.

Each test prints a single PASS line with its runtime; thresholds are fixed
here and are not meant to be tuned.
"""

import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from epskk import contour as C
from epskk import kk
from epskk import models as M
from epskk import quadrature as Q

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"
OSC3 = [(2.0, 1.0, 0.3), (1.5, 3.0, 0.5), (0.8, 7.0, 1.0)]


def graphene_pair(k=1.0):
    p = M.GrapheneParams(k=k, v_fermi=1.0, alpha=M.ALPHA_DEFAULT, c=300.0)
    return M.GrapheneLongitudinal(p), M.GrapheneTransverse(p), p


def _report(name, t0, detail=""):
    dt = time.time() - t0
    print(f"ACCEPTANCE {name}: PASS ({dt:.2f}s) {detail}")
    return dt


def test_criterion_1_closed_form_conformance():
    """10^4 random (omega, k) points, stratified as 100 random wave
    vectors with 100 random frequencies each.

    Conformance is checked at susceptibility level (that is where the
    piecewise closed forms live; the transverse permittivity itself
    crosses zero, where a relative comparison would be ill-posed), with
    an extended-precision oracle near the branch point, where double
    precision evaluation of the unfactored reference would cancel.
    """
    import mpmath

    t0 = time.time()
    rng = np.random.default_rng(2024)
    ks = 10.0 ** rng.uniform(-2, 2, 100)
    mpmath.mp.dps = 30

    def reference_chi(g, b, w):
        bw = mpmath.mpf(b) * mpmath.mpf(b) - mpmath.mpf(w) * mpmath.mpf(w)
        if abs(w) < b:
            root = mpmath.sqrt(bw)
            return (complex(g * b / root),
                    -complex(g * b * root / (mpmath.mpf(w) ** 2)))
        root = mpmath.sqrt(-bw)
        s = g * b / root if w > 0 else -g * b / root
        return 1j * complex(s), 1j * complex(s * (-bw) / (mpmath.mpf(w) ** 2))

    worst = 0.0
    worst_parity = 0.0
    n_checked = 0
    for k in ks:
        L, T, p = graphene_pair(k=float(k))
        g, b = p.coupling, p.b
        w_over_b = rng.uniform(-5.0, 5.0, 100)
        w_over_b = np.where(np.abs(np.abs(w_over_b) - 1.0) < 1e-6, 1.5, w_over_b)
        w_over_b = np.where(np.abs(w_over_b) < 1e-6, 0.5, w_over_b)
        w = w_over_b * b

        chiL = L.chi_real_axis(w)
        chiT = T.chi_real_axis(w)
        # Re even / Im odd under sign reversal, exactly
        worst_parity = max(worst_parity,
                           np.max(np.abs(chiL.real - L.chi_real_axis(-w).real)),
                           np.max(np.abs(chiL.imag + L.chi_real_axis(-w).imag)),
                           np.max(np.abs(chiT.real - T.chi_real_axis(-w).real)),
                           np.max(np.abs(chiT.imag + T.chi_real_axis(-w).imag)))

        near = np.abs(np.abs(w) - b) <= 0.05 * b
        aw = np.abs(w[~near])
        inside = aw < b
        root = np.sqrt(np.abs((b - aw) * (b + aw)))
        sgn = np.sign(w[~near])
        refL = np.where(inside, g * b / root + 0j, 1j * sgn * g * b / root)
        refT = np.where(inside, -g * b * root / (w[~near] ** 2) + 0j,
                        1j * sgn * g * b * root / (w[~near] ** 2))
        worst = max(worst,
                    np.max(np.abs(chiL[~near] - refL) / np.abs(refL)),
                    np.max(np.abs(chiT[~near] - refT) / np.abs(refT)))
        for wi, cL, cT in zip(w[near], chiL[near], chiT[near]):
            rL, rT = reference_chi(g, b, float(wi))
            worst = max(worst, abs(cL - rL) / abs(rL), abs(cT - rT) / abs(rT))
        n_checked += w.size

        # the scalar operation must agree with the vectorized path it wraps
        for wi, cL, cT in zip(w[:3], chiL[:3], chiT[:3]):
            assert M.eval_real(L, float(wi)).value == 1.0 + cL
            assert M.eval_real(T, float(wi)).value == 1.0 + cT
            dr, di = M.parity_defect(T, float(wi))
            worst_parity = max(worst_parity, dr, di)

    assert n_checked == 10_000
    assert worst <= 1e-14
    assert worst_parity <= 1e-14
    dt = _report("1 closed-form conformance", t0,
                 f"max rel dev {worst:.2e}, parity {worst_parity:.2e}")
    assert dt < 1.0


def test_criterion_2_quadrature_oracles():
    t0 = time.time()
    b = 1.0
    circle = Q.Integrand(
        lambda x: np.sqrt(np.maximum(b * b - np.asarray(x) ** 2, 0.0)),
        (Q.SqrtEndpoint(-b, "lower"), Q.SqrtEndpoint(b, "upper")))
    inv_circle = Q.Integrand(
        lambda x: 1.0 / np.sqrt(np.maximum(b * b - np.asarray(x) ** 2, 1e-300)),
        (Q.SqrtEndpoint(-b, "lower"), Q.SqrtEndpoint(b, "upper")))

    checks = []

    def close(tag, got, expect):
        rel = abs(got - expect) / max(abs(expect), 1.0)
        checks.append((tag, rel))
        assert rel <= 1e-10, f"{tag}: {got} vs {expect}"

    # PV of the circle numerator, all three regimes
    for w, expect in ((0.3, -math.pi * 0.3),
                      (2.0, -2.0 * math.pi + math.pi * math.sqrt(3.0)),
                      (-2.0, 2.0 * math.pi - math.pi * math.sqrt(3.0))):
        close(f"I1({w})", Q.pv_simple_pole(circle, w, (-b, b),
                                           abs_tol=1e-12, rel_tol=1e-10).value, expect)

    # removable double-pole integral
    dome = Q.Integrand(
        lambda x: b - np.sqrt(np.maximum(b * b - np.asarray(x) ** 2, 0.0)),
        (Q.SqrtEndpoint(-b, "lower"), Q.SqrtEndpoint(b, "upper")))
    close("I2", Q.pv_double_pole(dome, (-b, b),
                                 abs_tol=1e-12, rel_tol=1e-10).value, math.pi - 2.0)

    # inverse-circle PV, both regimes
    close("A(0.4)", Q.pv_simple_pole(inv_circle, 0.4, (-b, b),
                                     abs_tol=1e-12, rel_tol=1e-10).value, 0.0)
    close("A(2)", Q.pv_simple_pole(inv_circle, 2.0, (-b, b),
                                   abs_tol=1e-12, rel_tol=1e-10).value,
          -math.pi / math.sqrt(3.0))

    # half-line edge integral, both regimes
    for w in (0.5, 2.0):
        A = b * b - w * w
        sing = [Q.SqrtEndpoint(0.0, "lower")] + ([Q.SimplePole(-A)] if A < 0 else [])
        f = Q.Integrand(
            lambda u, A=A: 1.0 / ((np.asarray(u) + A)
                                  * np.sqrt(np.where(np.asarray(u) > 0,
                                                     np.asarray(u), np.inf))),
            tuple(sing))
        expect = math.pi / math.sqrt(A) if A > 0 else 0.0
        close(f"E({w})", Q.sqrt_endpoint_integral(
            f, (0.0, math.inf), abs_tol=1e-12, rel_tol=1e-10,
            tail_split=100.0 * max(1.0, w * w)).value, expect)

    # weighted half-line integral
    w = 0.5
    A = b * b - w * w
    fy = Q.Integrand(lambda y: np.sqrt(np.abs(np.asarray(y)))
                     / ((np.asarray(y) + b * b) * (np.asarray(y) + A)),
                     (Q.SqrtEndpoint(0.0, "lower"),))
    close("Y(0.5)", Q.sqrt_endpoint_integral(
        fy, (0.0, math.inf), abs_tol=1e-12, rel_tol=1e-10, tail_split=100.0).value,
        math.pi * (b - math.sqrt(A)) / (w * w))

    worst = max(rel for _, rel in checks)
    dt = _report("2 quadrature oracles", t0, f"{len(checks)} oracles, worst {worst:.2e}")
    assert dt < 10.0


def test_criterion_3_kk_round_trips():
    t0 = time.time()
    grid = np.geomspace(1e-2, 1e2, 200)
    grid = grid[np.abs(grid - 1.0) >= 0.05]
    worst = 0.0
    n = 0
    for k in (0.05, 1.0, 50.0):  # three decades of wave vector
        L, T, _ = graphene_pair(k=k)
        b = k
        for model in (L, T):
            for w_over_b in grid:
                w = float(w_over_b) * b
                worst = max(worst,
                            kk.kk_re_from_im(model, w).rel_residual,
                            kk.kk_im_from_re(model, w).rel_residual)
                n += 2
    assert worst <= 1e-6
    dt = _report("3 kk round trips", t0, f"{n} reconstructions, worst rel {worst:.2e}")
    assert dt < 120.0


def test_criterion_4_pole_class_correctness():
    t0 = time.time()
    # plasma: exact identity with exactly vanishing integral part
    P = M.Plasma(2.0)
    for w in (0.3, 1.0, 7.0):
        r = kk.kk_re_from_im(P, w)
        assert r.abs_residual <= 1e-12
        assert abs(r.reconstructed - 1.0 - r.subtraction_term) <= 1e-12
        r = kk.kk_im_from_re(P, w)
        assert r.abs_residual <= 1e-12
        assert r.reconstructed == 0.0

    # Drude inverse relation against the algebraic imaginary part
    D = M.Drude(2.0, 0.5)
    worst_d = 0.0
    for w in np.geomspace(0.05, 50.0, 25):
        r = kk.kk_im_from_re(D, float(w))
        worst_d = max(worst_d, r.rel_residual)
    assert worst_d <= 1e-8

    # generalized plasma with a three-oscillator core
    GP = M.GeneralizedPlasma(2.0, OSC3)
    worst_gp = 0.0
    for w in np.geomspace(0.1, 30.0, 15):
        worst_gp = max(worst_gp,
                       kk.kk_re_from_im(GP, float(w)).rel_residual,
                       kk.kk_im_from_re(GP, float(w)).rel_residual)
    assert worst_gp <= 1e-6
    dt = _report("4 pole classes", t0,
                 f"drude worst {worst_d:.2e}, gen-plasma worst {worst_gp:.2e}")
    assert dt < 60.0


def test_criterion_5_imaginary_axis():
    t0 = time.time()
    worst = 0.0
    worst_imag = 0.0
    for k in (0.1, 1.0, 10.0):
        L, T, _ = graphene_pair(k=k)
        for model in (L, T):
            for xi_over_b in np.geomspace(1e-2, 1e2, 30):
                xi = float(xi_over_b) * k
                r = kk.kk_imag_axis(model, xi)
                worst = max(worst, r.rel_residual)
                v = M.eval_complex(model, 1j * xi).value
                worst_imag = max(worst_imag, abs(v.imag) / max(abs(v.real), 1.0))
    assert worst <= 1e-7
    assert worst_imag <= 1e-14
    dt = _report("5 imaginary axis", t0,
                 f"worst rel {worst:.2e}, worst imag part {worst_imag:.2e}")
    assert dt < 60.0


def test_criterion_6_contour_suite():
    t0 = time.time()
    L, T, p = graphene_pair()
    xi, big_r = 1.0, 1e4
    rhos = np.geomspace(1e-5, 1e-2, 7)

    # small-radius limit of the double-pole semicircle
    vals = [C.pole_semicircle(C.ContourSpec(T, xi, float(r), big_r)) for r in rhos]
    expect = 1j * math.pi ** 2 * p.alpha * p.k * p.c * p.b / (2.0 * xi * xi)
    extrapolated = vals[0]
    pole_rel = abs(extrapolated - expect) / abs(expect)
    assert pole_rel <= 1e-6

    # branch semicircles vanish with the expected orders
    slopes = {}
    for model, name, expected in ((T, "Tr", 1.5), (L, "L", 0.5)):
        for which in ("left", "right"):
            _, slope = C.branch_convergence_sweep(model, xi, big_r, rhos, which)
            slopes[f"{name}/{which}"] = slope
            assert abs(slope - expected) <= 0.1

    # residue identity at the reference geometry
    worst_defect = 0.0
    for model in (T, L):
        rep = C.residue_identity(C.ContourSpec(model, xi, 1e-4, big_r))
        worst_defect = max(worst_defect,
                           abs(rep.residue_identity_defect) / abs(rep.residue_term))
    assert worst_defect <= 1e-5
    dt = _report("6 contour suite", t0,
                 f"pole rel {pole_rel:.2e}, slopes {slopes}, defect {worst_defect:.2e}")
    assert dt < 120.0


def test_criterion_7_cli_determinism():
    t0 = time.time()
    import tempfile

    configs = sorted(CONFIG_DIR.glob("*.json"))
    assert configs
    with tempfile.TemporaryDirectory() as tmp:
        for cfg in configs:
            command = ("contour" if cfg.name.startswith("contour")
                       else "eval" if cfg.name.startswith("eval") else "kk")
            outs = []
            for run in (1, 2):
                out = Path(tmp) / f"{cfg.stem}.{run}"
                cp = subprocess.run(
                    [sys.executable, "-m", "epskk.cli", command,
                     "--config", str(cfg), "--check", "--out", str(out)],
                    capture_output=True, text=True)
                assert cp.returncode == 0, f"{cfg.name}: {cp.stderr}"
                outs.append(out.read_bytes())
            assert outs[0] == outs[1], f"{cfg.name} output not byte-identical"
    dt = _report("7 cli determinism", t0, f"{len(configs)} configs, two runs each")
    assert dt < 120.0
