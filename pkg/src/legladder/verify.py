"""Verification suites over the algebraic identities the package rests on.

Each suite returns a plain dict report: per-check records with the identity
checked, the largest deviation observed, the validity window it was
measured on, and a pass flag. Reports are deterministic (fixed random
seeds, no timestamps), so identical invocations serialize to identical
bytes.
"""

from __future__ import annotations

import math

import numpy as np

from . import __version__
from .algebra import (DIAGONAL_GENERATORS, GENERATORS, LADDER_SHIFTS,
                      SparseOperator, casimir, casimir_eigenvalue, commutator,
                      diagonal_value, generate_mode, generator,
                      ladder_product, operator_deviation, spectrum)
from .alp import GridFunction, gauss_legendre, phase_relation_check, t_values
from .diffops import (ROUTES, _ab, casimir_route_nodes,
                      ladder_diff_consistency, legendre_ode_bracket,
                      legendre_ode_residual, route_prefactor,
                      x_dx_commutator_residual)
from .modes import CoeffVector, ModeIndex, Truncation, lattice
from .sphere import (SphereField, casimir_sphere_residual,
                     primed_element_deviation, sample_Y, sht_analyze,
                     sht_synthesize, standard_grid)
from .transforms import (ChannelSpectrum, analyze, coeffs_to_spectrum,
                         completeness_kernel, inner_product, parseval_check,
                         spectrum_to_coeffs, synthesize, synthesize_derivative)

SUITES = ("algebra", "casimir", "diffops", "orthogonality", "parseval", "sphere")

_SEED = 20270314

# Commutator table: ([a, b], factor, rhs generator or None for zero).
COMMUTATOR_TABLE = (
    ("K3", "Kp", 1.0, "Kp"), ("K3", "Km", -1.0, "Km"), ("Kp", "Km", -2.0, "K3"),
    ("J3", "Jp", 1.0, "Jp"), ("J3", "Jm", -1.0, "Jm"), ("Jp", "Jm", 2.0, "J3"),
    ("Rp", "Rm", -4.0, "R3"), ("R3", "Rp", 2.0, "Rp"), ("R3", "Rm", -2.0, "Rm"),
    ("Sp", "Sm", -4.0, "S3"), ("S3", "Sp", 2.0, "Sp"), ("S3", "Sm", -2.0, "Sm"),
    ("Jp", "Kp", 1.0, "Rp"), ("Jm", "Km", -1.0, "Rm"),
    ("Jm", "Kp", 1.0, "Sp"), ("Jp", "Km", -1.0, "Sm"),
    ("J3", "Kp", 0.0, None), ("J3", "Km", 0.0, None), ("J3", "K3", 0.0, None),
    ("Jp", "Rp", 0.0, None), ("Jm", "Rm", 0.0, None),
    ("Jm", "Rp", 2.0, "Kp"), ("Jp", "Rm", -2.0, "Km"),
    ("J3", "Rp", 1.0, "Rp"), ("J3", "Rm", -1.0, "Rm"),
    ("Jp", "Sp", 2.0, "Kp"), ("Jm", "Sm", -2.0, "Km"),
    ("Jm", "Sp", 0.0, None), ("Jp", "Sm", 0.0, None),
    ("J3", "Sp", -1.0, "Sp"), ("J3", "Sm", 1.0, "Sm"),
    ("Kp", "Rp", 0.0, None), ("Km", "Rm", 0.0, None),
    ("Km", "Rp", 2.0, "Jp"), ("Kp", "Rm", -2.0, "Jm"),
    ("K3", "Rp", 1.0, "Rp"), ("K3", "Rm", -1.0, "Rm"),
    ("Kp", "Sp", 0.0, None), ("Km", "Sm", 0.0, None),
    ("Km", "Sp", 2.0, "Jm"), ("Kp", "Sm", -2.0, "Jp"),
    ("K3", "Sp", 1.0, "Sp"), ("K3", "Sm", -1.0, "Sm"),
    ("Rp", "Sp", 0.0, None), ("Rm", "Sm", 0.0, None),
    ("Rm", "Sp", 0.0, None), ("Rp", "Sm", 0.0, None),
)


def _check(cid: str, statement: str, deviation: float, tol: float,
           window: str = "") -> dict:
    return {
        "id": cid,
        "statement": statement,
        "max_deviation": float(deviation),
        "tolerance": float(tol),
        "window": window,
        "pass": bool(deviation <= tol),
    }


def _tol(default: float, override: float | None) -> float:
    return default if override is None else override


def _report(suite: str, checks: list, params: dict) -> dict:
    return {
        "suite": suite,
        "version": __version__,
        "parameters": params,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def suite_algebra(l_max: int = 12, tol: float | None = None, **_) -> dict:
    trunc = Truncation(l_max)
    gens = {name: generator(name, trunc) for name in GENERATORS}
    checks = []

    dev = 0.0
    for mode in lattice(trunc):
        for name in LADDER_SHIFTS:
            if mode in gens[name].overflow_sources:
                continue
            stored = 0.0
            col = gens[name].columns.get(mode, {})
            if col:
                stored = next(iter(col.values()))
            exact = math.sqrt(ladder_product(name, mode.l, mode.m))
            gap = abs(stored - exact) / exact if exact else abs(stored)
            dev = max(dev, gap)
        for name in DIAGONAL_GENERATORS:
            target = diagonal_value(name, mode.l, mode.m)
            stored = gens[name].columns.get(mode, {}).get(mode, 0.0)
            gap = abs(stored - target) / abs(target) if target else abs(stored)
            dev = max(dev, gap)
    checks.append(_check("elements", "ladder coefficients are exact integer-product roots",
                         dev, _tol(1e-14, tol), f"l <= {l_max}"))

    window = max(l_max - 2, 0)
    for a, b, factor, rhs in COMMUTATOR_TABLE:
        got = commutator(gens[a], gens[b])
        want = gens[rhs].scaled(factor) if rhs else SparseOperator.zero(trunc)
        dev = operator_deviation(got, want, window)
        label = f"[{a},{b}] = {factor:g}*{rhs}" if rhs else f"[{a},{b}] = 0"
        checks.append(_check(f"comm_{a}_{b}", label, dev, _tol(1e-12, tol),
                             f"l <= {window}"))

    for pair, form in (("KpKm", lambda l, m: l * l - m * m),
                       ("KmKp", lambda l, m: (l + 1) ** 2 - m * m),
                       ("JpJm", lambda l, m: (l + m) * (l - m + 1)),
                       ("JmJp", lambda l, m: (l - m) * (l + m + 1))):
        op = gens[pair[:2]] @ gens[pair[2:]]
        dev = 0.0
        for mode in lattice(trunc):
            if mode.l > window:
                continue
            got = op.columns.get(mode, {}).get(mode, 0.0)
            dev = max(dev, abs(got - form(mode.l, mode.m)))
        checks.append(_check(f"factor_{pair}",
                             f"{pair[:2]}*{pair[2:]} is the stated diagonal product",
                             dev, _tol(1e-12, tol), f"l <= {window}"))

    dev = 0.0
    for plus, minus in (("Jp", "Jm"), ("Kp", "Km"), ("Rp", "Rm"), ("Sp", "Sm")):
        dev = max(dev, float(np.max(np.abs(gens[minus].to_matrix()
                                           - gens[plus].to_matrix().T))))
    checks.append(_check("adjoint", "lowering matrices are transposes of raising matrices",
                         dev, _tol(1e-13, tol), f"l <= {l_max}"))

    dev = 0.0
    gen_cap = min(l_max, 10)
    for l in range(gen_cap + 1):
        for m in range(-l, l + 1):
            diff = generate_mode(l, m, trunc) - CoeffVector.unit(l, m, trunc)
            dev = max(dev, diff.norm())
    checks.append(_check("generate", "repeated raising reproduces every unit mode",
                         dev, _tol(1e-10, tol), f"l <= {gen_cap}"))

    spec_ok = True
    for m in range(-3, 4):
        want = [abs(m) + 0.5 + k for k in range(l_max - abs(m) + 1)]
        spec_ok &= spectrum("K3", trunc, m=m) == want
    r_even = spectrum("R3", trunc, parity="even")
    r_odd = spectrum("R3", trunc, parity="odd")
    spec_ok &= r_even == [0.5 + 2.0 * k for k in range(len(r_even))]
    spec_ok &= r_odd == [1.5 + 2.0 * k for k in range(len(r_odd))]
    if l_max >= 2:
        spec_ok &= spectrum("J3", trunc, l=2) == [-2.0, -1.0, 0.0, 1.0, 2.0]
    checks.append(_check("spectra",
                         "K3, R3 (by parity) and J3 spectra take the exact half-integer ladders",
                         0.0 if spec_ok else 1.0, 0.0, f"l <= {l_max}"))

    return _report("algebra", checks, {"l_max": l_max, "tol": tol})


def suite_casimir(l_max: int = 12, tol: float | None = None, **_) -> dict:
    trunc = Truncation(l_max)
    checks = []
    window = max(l_max - 1, 0)
    cas = {name: casimir(name, trunc) for name in
           ("so21_K", "so3_J", "so21_R", "so21_S", "so32")}
    for name, op in cas.items():
        dev = 0.0
        for mode in lattice(trunc):
            if mode.l > window:
                continue
            col = op.columns.get(mode, {})
            for dst, val in col.items():
                want = casimir_eigenvalue(name, mode.l, mode.m) if dst == mode else 0.0
                dev = max(dev, abs(val - want))
            if mode not in col:
                dev = max(dev, abs(casimir_eigenvalue(name, mode.l, mode.m)))
        checks.append(_check(f"diag_{name}",
                             f"{name} invariant is diagonal with its stated eigenvalue",
                             dev, _tol(1e-11, tol), f"l <= {window}"))

    c32 = cas["so32"]
    comm_window = max(l_max - 3, 0)
    for name in GENERATORS:
        dev = operator_deviation(commutator(c32, generator(name, trunc)),
                                 SparseOperator.zero(trunc), comm_window)
        checks.append(_check(f"central_{name}", f"full invariant commutes with {name}",
                             dev, _tol(1e-10, tol), f"l <= {comm_window}"))

    return _report("casimir", checks, {"l_max": l_max, "tol": tol})


def suite_diffops(l_max: int = 12, tol: float | None = None,
                  nodes: int = 32, **_) -> dict:
    rule = gauss_legendre(nodes)
    checks = []

    cap = min(l_max, 10)
    dev_by_gen = {name: 0.0 for name in GENERATORS}
    for l in range(cap + 1):
        for m in range(-l, l + 1):
            for name in GENERATORS:
                dev_by_gen[name] = max(dev_by_gen[name],
                                       ladder_diff_consistency(name, l, m, rule))
    for name, dev in dev_by_gen.items():
        checks.append(_check(f"ladder_diff_{name}",
                             f"differential and ladder action of {name} agree on every mode",
                             dev, _tol(1e-9, tol), f"l <= {cap}, {nodes} nodes"))

    rng = np.random.default_rng(_SEED)
    dev = 0.0
    for _ in range(5):
        dev = max(dev, x_dx_commutator_residual(rng.standard_normal(7), rule))
    checks.append(_check("x_dx", "x p' - (x p)' = -p node-wise on polynomial data",
                         dev, _tol(1e-12, tol), f"degree <= 6, {nodes} nodes"))

    for which in ROUTES:
        dev = 0.0
        for l in range(l_max + 1):
            for m in range(-l, l + 1):
                dev = max(dev, float(np.max(np.abs(
                    casimir_route_nodes(which, l, m, rule)))))
        checks.append(_check(f"ode_{which}",
                             f"defining equation residual vanishes along the {which} route",
                             dev, _tol(1e-9, tol), f"l <= {l_max}, {nodes} nodes"))

    dev = 0.0
    for l in range(l_max + 1):
        for m in (-l, 0, l) if l else (0,):
            dev = max(dev, legendre_ode_residual(l, m, rule))
    checks.append(_check("ode_direct", "defining equation residual vanishes evaluated directly",
                         dev, _tol(1e-9, tol), f"l <= {l_max}, {nodes} nodes"))

    x = np.asarray(rule.nodes)
    probe, dprobe, ddprobe = np.cosh(x), np.sinh(x), np.cosh(x)
    dev = 0.0
    for which in ROUTES:
        for l, m in ((2, 1), (5, -3), (8, 0)):
            got = casimir_route_nodes(which, l, m, rule, probe, dprobe, ddprobe)
            if which == "so32":
                # The full invariant is the constant -5/4 on the whole
                # representation, so its route annihilates arbitrary data.
                want = np.zeros_like(x)
            else:
                want = route_prefactor(which, x) * legendre_ode_bracket(
                    l, m, x, probe, dprobe, ddprobe)
            scale = 1.0 + float(np.max(np.abs(want)))
            dev = max(dev, float(np.max(np.abs(got - want))) / scale)
    checks.append(_check("route_prefactors",
                         "subalgebra routes equal their stated multiples of the bare bracket; "
                         "the full route annihilates arbitrary data",
                         dev, _tol(1e-9, tol), f"{nodes} nodes"))

    dev = 0.0
    for l, m in ((3, 2), (7, -4), (l_max, 0)):
        residues = {which: casimir_route_nodes(which, l, m, rule) for which in ROUTES}
        prefs = {which: route_prefactor(which, x) for which in ROUTES}
        for a in ROUTES:
            for b in ROUTES:
                cross = residues[a] * prefs[b] - residues[b] * prefs[a]
                dev = max(dev, float(np.max(np.abs(cross))))
    checks.append(_check("route_agreement",
                         "on eigenfunction data the four residual profiles differ only by the stated prefactors",
                         dev, _tol(1e-9, tol), f"{nodes} nodes"))

    return _report("diffops", checks, {"l_max": l_max, "nodes": nodes, "tol": tol})


def suite_orthogonality(l_max: int = 12, tol: float | None = None, **_) -> dict:
    checks = []
    n = l_max + 1
    rule = gauss_legendre(n)
    x = np.asarray(rule.nodes)
    w = np.asarray(rule.weights)

    dev = abs(float(np.sum(w)) - 2.0)
    checks.append(_check("quad_sum", "quadrature weights sum to 2", dev,
                         _tol(1e-13, tol), f"n = {n}"))

    dev = float(np.max(np.abs(x + x[::-1])))
    checks.append(_check("quad_symmetry", "quadrature nodes are symmetric about 0",
                         dev, _tol(1e-14, tol), f"n = {n}"))

    dev = 0.0
    for degree in range(2 * n):
        exact = 2.0 / (degree + 1) if degree % 2 == 0 else 0.0
        dev = max(dev, abs(float(np.dot(w, x ** degree)) - exact))
    checks.append(_check("quad_exactness",
                         "quadrature integrates monomials of degree < 2n exactly",
                         dev, _tol(1e-13, tol), f"degree <= {2 * n - 1}"))

    dev = 0.0
    for m in range(-l_max, l_max + 1):
        t = t_values(m, l_max, x)
        weight = np.arange(abs(m), l_max + 1) + 0.5
        gram = (t * w) @ (weight[:, None] * t).T
        dev = max(dev, float(np.max(np.abs(gram - np.eye(len(weight))))))
    checks.append(_check("gram", "weighted discrete orthogonality holds in every channel",
                         dev, _tol(1e-11, tol), f"l <= {l_max}, n = {n}"))

    ok = all(phase_relation_check(l, m, 0.37)
             for l in range(min(l_max, 8) + 1) for m in range(l + 1))
    checks.append(_check("phase", "negative orders are the stated sign flip of positive orders",
                         0.0 if ok else 1.0, 0.0, f"l <= {min(l_max, 8)}"))

    return _report("orthogonality", checks, {"l_max": l_max, "tol": tol})


def _random_spectrum(m: int, l_max: int, rng) -> ChannelSpectrum:
    degrees = list(range(abs(m), l_max + 1))
    return ChannelSpectrum(m, {l: float(c) for l, c in
                               zip(degrees, rng.standard_normal(len(degrees)))},
                           l_max)


def _point_rule(xi: float):
    """Single-point evaluation rule; the weight plays no role in synthesis."""
    from .alp import QuadratureRule

    return QuadratureRule(nodes=np.array([xi]), weights=np.array([2.0]))


def _ladder_on_spectrum_deviation(l_max: int, rng) -> float:
    """Spectrum-side generator action vs grid-side differential action.

    The J ladders carry no degree operator, so they are exercised on mixed
    spectra; the degree-bearing ladders act mode by mode, so they are
    exercised on unit spectra and extend by linearity.
    """
    big = gauss_legendre(l_max + 2)
    x = np.asarray(big.nodes)
    s = np.sqrt((1.0 - x) * (1.0 + x))
    trunc = Truncation(l_max + 1)
    dev = 0.0

    def compare(name, spec, l_sub):
        nonlocal dev
        dm = LADDER_SHIFTS[name][1]
        vec = spectrum_to_coeffs(spec)
        path_a = coeffs_to_spectrum(generator(name, trunc).apply(vec), spec.m + dm)
        fvals = synthesize(spec, big).values
        dfvals = synthesize_derivative(spec, big)
        a, b = _ab(name, l_sub, spec.m, x, s)
        path_b = analyze(GridFunction(big, spec.m + dm, a * dfvals + b * fvals),
                         l_max + 1)
        for lp in range(abs(spec.m + dm), l_max + 2):
            dev = max(dev, abs(path_a.coeff(lp) - path_b.coeff(lp)))

    for name in ("Jp", "Jm"):
        spec = _random_spectrum(1, l_max, rng)
        mixed = ChannelSpectrum(spec.m, spec.coeffs, l_max + 1)
        compare(name, mixed, 0)

    for name in ("Kp", "Km", "Rp", "Rm", "Sp", "Sm"):
        for m in (-1, 0, 2):
            for l in range(max(abs(m), 1), l_max):
                compare(name, ChannelSpectrum(m, {l: 1.0}, l_max + 1), l)
    return dev


def suite_parseval(l_max: int = 16, tol: float | None = None, **_) -> dict:
    checks = []
    rule = gauss_legendre(l_max + 1)
    x = np.asarray(rule.nodes)
    rng = np.random.default_rng(_SEED)

    dev = 0.0
    for _ in range(100):
        m = int(rng.integers(-l_max, l_max + 1))
        f = synthesize(_random_spectrum(m, l_max, rng), rule)
        result = parseval_check(f, l_max)
        dev = max(dev, abs(result.lhs - result.rhs) / (1.0 + result.lhs))
    checks.append(_check("parseval",
                         "coefficient energy equals quadrature energy on random band-limited data",
                         dev, _tol(1e-10, tol), f"l_max = {l_max}, 100 draws"))

    dev = 0.0
    for m in (-2, 0, 3):
        spec = _random_spectrum(m, l_max, rng)
        back = analyze(synthesize(spec, rule), l_max)
        dev = max(dev, max(abs(back.coeff(l) - spec.coeff(l))
                           for l in range(abs(m), l_max + 1)))
    checks.append(_check("roundtrip", "analyze inverts synthesize on band-limited spectra",
                         dev, _tol(1e-11, tol), f"l_max = {l_max}"))

    raw = GridFunction(rule, 0, np.exp(x))
    once = synthesize(analyze(raw, l_max), rule)
    twice = synthesize(analyze(once, l_max), rule)
    dev = float(np.max(np.abs(twice.values - once.values)))
    checks.append(_check("idempotent", "the band-limited projector is idempotent",
                         dev, _tol(1e-12, tol), f"l_max = {l_max}"))

    f = GridFunction(rule, 0, x.copy())
    spec = analyze(f, l_max)
    dev = abs(inner_product(spec, spec) - inner_product(f, f))
    checks.append(_check("inner_product", "coefficient and quadrature inner products agree",
                         dev, _tol(1e-12, tol), "f(x) = x"))

    dev = 0.0
    for m in (0, 2):
        spec = _random_spectrum(m, l_max, rng)
        f = synthesize(spec, rule)
        for xi in (-0.63, 0.11, 0.58):
            kern = completeness_kernel(m, l_max, xi, x)
            got = float(np.dot(np.asarray(rule.weights), kern * f.values))
            direct = float(synthesize(spec, _point_rule(xi)).values[0])
            dev = max(dev, abs(got - direct))
    checks.append(_check("kernel",
                         "the truncated kernel reproduces band-limited data under quadrature",
                         dev, _tol(1e-10, tol), f"l_max = {l_max}"))

    dev = _ladder_on_spectrum_deviation(min(l_max, 10), rng)
    checks.append(_check("ladder_spectrum", "generators act identically on spectra and on grids",
                         dev, _tol(1e-9, tol), f"l_max = {min(l_max, 10)}"))

    return _report("parseval", checks, {"l_max": l_max, "tol": tol})


def suite_sphere(l_max: int = 12, tol: float | None = None, **_) -> dict:
    checks = []
    cap = min(l_max, 8)
    grid = standard_grid(cap + 2, 2 * cap + 3)

    modes = [(l, m) for l in range(cap + 1) for m in range(-l, l + 1)]
    zmat = np.empty((len(modes), grid.theta_rule.order * grid.n_phi), dtype=complex)
    for i, (l, m) in enumerate(modes):
        zmat[i] = (math.sqrt(l + 0.5) * sample_Y(l, m, grid).values).ravel()
    wflat = np.outer(grid.theta_rule.weights,
                     np.full(grid.n_phi, 2.0 * np.pi / grid.n_phi)).ravel()
    gram = (zmat.conj() * wflat) @ zmat.T
    dev = float(np.max(np.abs(gram - np.eye(len(modes)))))
    checks.append(_check("gram", "weighted spherical orthonormality holds discretely",
                         dev, _tol(1e-10, tol), f"l <= {cap}"))

    rng = np.random.default_rng(_SEED)
    coeffs = {}
    for l in range(cap + 1):
        for m in range(-l, l + 1):
            re, im = rng.standard_normal(2)
            coeffs[ModeIndex(l, m)] = complex(re, im)
    back = sht_analyze(sht_synthesize(coeffs, grid), cap)
    dev = max(abs(back[k] - coeffs[k]) for k in coeffs)
    checks.append(_check("roundtrip",
                         "spherical analysis inverts synthesis on band-limited fields",
                         dev, _tol(1e-10, tol), f"l_max = {cap}"))

    pcap = min(l_max, 6)
    dev = 0.0
    for l in range(pcap + 1):
        for m in range(-l, l + 1):
            for name in GENERATORS:
                dev = max(dev, primed_element_deviation(name, l, m, grid))
    checks.append(_check("primed_elements",
                         "primed operators reproduce the flat-lattice coefficients",
                         dev, _tol(1e-9, tol), f"l <= {pcap}"))

    ccap = min(l_max, 5)
    dev = 0.0
    for l in range(ccap + 1):
        for m in range(-l, l + 1):
            dev = max(dev, casimir_sphere_residual(l, m, grid))
    checks.append(_check("casimir", "the full invariant takes -5/4 on every harmonic",
                         dev, _tol(1e-8, tol), f"l <= {ccap}"))

    real_vals = rng.standard_normal(grid.shape)
    cs = sht_analyze(SphereField(grid, real_vals.astype(complex)), cap)
    dev = 0.0
    for l in range(cap + 1):
        for m in range(l + 1):
            lhs = cs[ModeIndex(l, -m)]
            rhs = (-1.0) ** m * cs[ModeIndex(l, m)].conjugate()
            dev = max(dev, abs(lhs - rhs))
    checks.append(_check("hermiticity", "real fields give conjugate-symmetric coefficients",
                         dev, _tol(1e-11, tol), f"l <= {cap}"))

    return _report("sphere", checks, {"l_max": l_max, "tol": tol})


_SUITE_FUNCS = {
    "algebra": suite_algebra,
    "casimir": suite_casimir,
    "diffops": suite_diffops,
    "orthogonality": suite_orthogonality,
    "parseval": suite_parseval,
    "sphere": suite_sphere,
}


def run_suite(name: str, l_max: int = 12, tol: float | None = None,
              nodes: int = 32) -> dict:
    if name not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from "
                         f"{', '.join(SUITES)} or 'all'")
    return _SUITE_FUNCS[name](l_max=l_max, tol=tol, nodes=nodes)


def run_all(l_max: int = 12, tol: float | None = None, nodes: int = 32) -> dict:
    suites = [run_suite(name, l_max=l_max, tol=tol, nodes=nodes) for name in SUITES]
    return {
        "suite": "all",
        "version": __version__,
        "parameters": {"l_max": l_max, "nodes": nodes, "tol": tol},
        "suites": suites,
        "pass": all(s["pass"] for s in suites),
    }
