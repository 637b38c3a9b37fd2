import math

import numpy as np
import pytest

from legladder.alp import GridFunction, gauss_legendre, sample_T, t_values
from legladder.algebra import generator
from legladder.modes import ModeIndex, Truncation
from legladder.transforms import (ChannelSpectrum, analyze, coeffs_to_spectrum,
                                  completeness_kernel, grid_from_json,
                                  grid_to_json, inner_product, parseval_check,
                                  spectrum_from_json, spectrum_to_coeffs,
                                  spectrum_to_json, synthesize)

RULE = gauss_legendre(24)
X = np.asarray(RULE.nodes)


def test_analyze_linear_function():
    spec = analyze(GridFunction(RULE, 0, X.copy()), 3)
    assert spec.coeff(1) == pytest.approx(0.816496580927726, abs=1e-14)
    for l in (0, 2, 3):
        assert abs(spec.coeff(l)) < 1e-14


def test_analyze_single_mode():
    spec = analyze(sample_T(2, 1, RULE), 5)
    assert spec.coeff(2) == pytest.approx(0.6324555320336759, abs=1e-13)
    for l in (1, 3, 4, 5):
        assert abs(spec.coeff(l)) < 1e-13


def test_analyze_zero():
    spec = analyze(GridFunction(RULE, 0, np.zeros(RULE.order)), 4)
    assert all(c == 0.0 for c in spec.coeffs.values())


def test_analyze_needs_enough_nodes():
    with pytest.raises(ValueError):
        analyze(GridFunction(gauss_legendre(4), 0, np.zeros(4)), 4)


def test_synthesize_inverts_first_example():
    spec = ChannelSpectrum(0, {1: math.sqrt(2.0 / 3.0)}, 3)
    grid = synthesize(spec, RULE)
    assert np.max(np.abs(grid.values - X)) < 1e-13


def test_synthesize_empty_spectrum():
    grid = synthesize(ChannelSpectrum(2, {}, 5), RULE)
    assert np.all(grid.values == 0.0)


def test_roundtrip_random_bandlimited():
    rng = np.random.default_rng(11)
    for m in (-3, 0, 2):
        degrees = list(range(abs(m), 9))
        spec = ChannelSpectrum(m, {l: float(c) for l, c in
                                   zip(degrees, rng.standard_normal(len(degrees)))}, 8)
        back = analyze(synthesize(spec, RULE), 8)
        assert all(abs(back.coeff(l) - spec.coeff(l)) < 1e-11 for l in degrees)


def test_inner_product_grid_examples():
    f = GridFunction(RULE, 0, X.copy())
    assert inner_product(f, f) == pytest.approx(2.0 / 3.0, abs=1e-15)
    for l, m in ((3, 1), (5, -4)):
        g = sample_T(l, m, RULE)
        assert inner_product(g, g) == pytest.approx(1.0 / (l + 0.5), abs=1e-13)
    zero = GridFunction(RULE, 0, np.zeros(RULE.order))
    assert inner_product(f, zero) == 0.0


def test_inner_product_spectral_equals_grid():
    f = GridFunction(RULE, 0, X ** 3 - 0.2 * X)
    spec = analyze(f, 5)
    assert inner_product(spec, spec) == pytest.approx(inner_product(f, f), abs=1e-13)


def test_inner_product_channel_lists():
    fs = [GridFunction(RULE, 0, X.copy()), sample_T(3, 1, RULE)]
    gs = [sample_T(3, 1, RULE), GridFunction(RULE, 0, X.copy())]
    total = inner_product(fs, gs)
    assert total == pytest.approx(2.0 / 3.0 + 1.0 / 3.5, abs=1e-13)
    with pytest.raises(ValueError):
        inner_product(fs, [GridFunction(RULE, 2, X.copy())])


def test_inner_product_usage_errors():
    f = GridFunction(RULE, 0, X.copy())
    g = GridFunction(RULE, 1, X.copy())
    with pytest.raises(ValueError):
        inner_product(f, g)
    with pytest.raises(ValueError):
        inner_product(analyze(f, 3), ChannelSpectrum(0, {1: 1.0}, 5))
    with pytest.raises(TypeError):
        inner_product(f, 3.0)


def test_parseval_linear():
    res = parseval_check(GridFunction(RULE, 0, X.copy()), 6)
    assert res.lhs == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert res.rhs == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert res.band_limited


def test_parseval_orthonormal_mode():
    phi = math.sqrt(3.5) * sample_T(3, 2, RULE).values
    res = parseval_check(GridFunction(RULE, 2, phi), 6)
    assert res.lhs == pytest.approx(1.0, abs=1e-12)
    assert res.rhs == pytest.approx(1.0, abs=1e-12)


def test_parseval_zero():
    res = parseval_check(GridFunction(RULE, 0, np.zeros(RULE.order)), 4)
    assert (res.lhs, res.rhs) == (0.0, 0.0)


def test_parseval_flags_non_bandlimited():
    res = parseval_check(GridFunction(RULE, 0, np.exp(5 * X)), 4)
    assert not res.band_limited
    assert res.roundtrip_residual > 1e-10


def test_parseval_duplicate_channel_rejected():
    f = GridFunction(RULE, 0, X.copy())
    with pytest.raises(ValueError):
        parseval_check([f, f], 4)


def test_completeness_kernel_trivia():
    assert completeness_kernel(0, 0, 0.3, -0.8) == pytest.approx(0.5, abs=1e-15)
    # symmetric bitwise, not merely to roundoff
    assert completeness_kernel(2, 6, 0.1, 0.7) == completeness_kernel(2, 6, 0.7, 0.1)
    assert completeness_kernel(-3, 9, -0.44, 0.21) == completeness_kernel(-3, 9, 0.21, -0.44)


def test_completeness_kernel_reproduces_bandlimited():
    l_max = 10
    rule = gauss_legendre(l_max + 1)
    rng = np.random.default_rng(3)
    for m in (0, -2):
        degrees = list(range(abs(m), l_max + 1))
        spec = ChannelSpectrum(m, {l: float(c) for l, c in
                                   zip(degrees, rng.standard_normal(len(degrees)))},
                               l_max)
        f = synthesize(spec, rule)
        for xi in (-0.71, 0.05, 0.66):
            kern = completeness_kernel(m, l_max, xi, np.asarray(rule.nodes))
            got = float(np.dot(rule.weights, kern * f.values))
            want = sum(spec.coeff(l) * math.sqrt(l + 0.5)
                       * float(t_values(m, l_max, np.array([xi]))[l - abs(m), 0])
                       for l in degrees)
            assert abs(got - want) < 1e-10


def test_projector_idempotent():
    f = GridFunction(RULE, 0, np.tanh(2 * X))
    once = synthesize(analyze(f, 8), RULE)
    twice = synthesize(analyze(once, 8), RULE)
    assert np.max(np.abs(twice.values - once.values)) < 1e-12


def test_orthonormal_gram_identity():
    l_max = 12
    rule = gauss_legendre(l_max + 1)
    w = np.asarray(rule.weights)
    for m in (-5, 0, 7):
        t = t_values(m, l_max, rule.nodes)
        scale = np.sqrt(np.arange(abs(m), l_max + 1) + 0.5)
        phi = scale[:, None] * t
        gram = (phi * w) @ phi.T
        assert np.max(np.abs(gram - np.eye(len(scale)))) < 1e-11


def test_basis_conversions_roundtrip():
    spec = ChannelSpectrum(1, {1: 0.3, 4: -1.2}, 5)
    vec = spectrum_to_coeffs(spec)
    assert vec.get(ModeIndex(4, 1)) == pytest.approx(-1.2 * math.sqrt(4.5))
    back = coeffs_to_spectrum(vec, 1)
    assert back.coeff(1) == pytest.approx(0.3)
    assert back.coeff(4) == pytest.approx(-1.2)


def test_ladder_action_consistent_across_representations():
    # apply Kp in coefficient space vs differentially on the grid
    l_max = 8
    trunc = Truncation(l_max + 1)
    big = gauss_legendre(l_max + 2)
    from legladder.diffops import apply_diff

    for l, m in ((3, 1), (5, -2)):
        # unit amplitude on the bare T mode, so synthesis is T_l^m itself
        spec = ChannelSpectrum(m, {l: 1.0 / math.sqrt(l + 0.5)}, l_max + 1)
        path_a = coeffs_to_spectrum(generator("Kp", trunc).apply(spectrum_to_coeffs(spec)), m)
        out = apply_diff("Kp", l, m, sample_T(l, m, big))
        path_b = analyze(out, l_max + 1)
        for lp in range(abs(m), l_max + 2):
            assert abs(path_a.coeff(lp) - path_b.coeff(lp)) < 1e-9


def test_grid_json_roundtrip():
    f = sample_T(4, -2, RULE)
    data = grid_to_json(f)
    back = grid_from_json(data)
    assert back.m == -2
    assert np.allclose(back.values, f.values, atol=0)
    assert np.allclose(back.rule.nodes, RULE.nodes, atol=0)


def test_grid_json_rejects_bad_nodes():
    with pytest.raises(ValueError):
        grid_from_json({"m": 0, "nodes": [0.0, 1.0], "weights": [1, 1], "values": [0, 0]})


def test_spectrum_json_roundtrip():
    spec = ChannelSpectrum(-1, {2: 0.5, 3: -0.25}, 4)
    data = spectrum_to_json(spec)
    assert data["basis"] == "orthonormal"
    back = spectrum_from_json(data)
    assert back.m == -1 and back.l_max == 4
    assert back.coeff(3) == -0.25
