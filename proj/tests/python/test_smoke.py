import cmath
import json
import pathlib

import lkflow

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def test_koebe_coefficients():
    rows = lkflow.solve_coefficients(0.1, [([0.0, 0.1], [0.0, 0.1])], [0.05, 0.1], 10)
    for t, a in zip([0.05, 0.1], rows):
        for n in range(1, 11):
            assert abs(a[n] - t ** (n - 1)) < 1e-14


def test_grunsky_quadratic():
    a = 0.3 + 0.1j
    coeffs = [0, 1, a] + [0] * 23
    b = lkflow.grunsky_coefficients(coeffs, 12)
    assert abs(b[0][0] - a * a) < 1e-15
    assert abs(b[0][1] + a ** 3) < 1e-15
    B = lkflow.grunsky_operator(coeffs, 12)
    assert lkflow.spectral_norm(B) < 1


def test_projection_idempotent():
    B = lkflow.grunsky_operator([0, 1, 0.4] + [0] * 13, 7)
    P = lkflow.projection(B)
    n = len(P)
    for i in range(n):
        for j in range(n):
            pp = sum(P[i][k] * P[k][j] for k in range(n))
            assert abs(pp - P[i][j]) < 1e-12


def test_ward_and_gue():
    alpha = lkflow.ward_alpha(3)
    assert abs(alpha[0][0] - 1) < 1e-14
    assert alpha[0][1] == 0
    a1, se1 = lkflow.gue_cov(20, 100, 2, 5)
    a2, se2 = lkflow.gue_cov(20, 100, 2, 5)
    assert a1 == a2 and se1 == se2


def test_disc_moments():
    pts = [1.5 * cmath.exp(2j * cmath.pi * k / 128) for k in range(128)]
    t0, tk, vn = lkflow.harmonic_moments(pts, 4)
    assert abs(t0 - 2.25) < 1e-12
    assert max(abs(t) for t in tk) < 1e-12


def test_campaign_from_python():
    passed, csv, summary = lkflow.run_campaign(str(DATA / "flows" / "koebe.json"), "solve")
    assert passed
    assert csv.startswith("t,n,re,im")
    assert json.loads(summary)["campaign"] == "solve"
