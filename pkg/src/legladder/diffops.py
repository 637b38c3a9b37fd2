"""Differential realizations of the generators on grid samples.

Each ladder generator acts on a single mode as A(x) d/dx + B(x), where the
degree and order operators inside A and B are replaced by the numbers of
the operand mode (and l+1 where the raising forms carry the shifted degree
factor). With s = sqrt(1 - x^2):

    Jp: A = -s        B = -(x/s) m
    Jm: A = +s        B = -(x/s) m
    Kp: A = -(1-x^2)  B = x (l+1)
    Km: A = +(1-x^2)  B = x l
    Rp: A = -x s      B = -m/s - s (l+1)
    Rm: A = +x s      B = -m/s - s l
    Sp: A = +x s      B = -m/s + s (l+1)
    Sm: A = -x s      B = -m/s + s l

Diagonal generators multiply by m, l+1/2, l+m+1/2, l-m+1/2. Everything is
restricted to the open interval; nodes with 1-x^2 below 1e-10 are refused
because of the 1/s factors.

Second-order compositions (the Casimir routes to the defining differential
equation) are evaluated by chaining two first-order forms, tracking the
derivative of the intermediate analytically, so no finite differencing and
no ladder matrix element enters the computation.
"""

from __future__ import annotations

import numpy as np

from .alp import (GridFunction, QuadratureRule, ddt_values, dt_values,
                  sample_T, t_values)
from .algebra import DIAGONAL_GENERATORS, LADDER_SHIFTS, diagonal_value, element
from .modes import is_admissible

_MIN_ONE_MINUS_X2 = 1e-10

ROUTES = ("so21_K", "so3_J", "so21_R", "so32")


def _guard_nodes(x: np.ndarray):
    if np.min((1.0 - x) * (1.0 + x)) < _MIN_ONE_MINUS_X2:
        raise ValueError("grid contains nodes too close to the endpoints")


def _ab(name: str, l: int, m: int, x: np.ndarray, s: np.ndarray):
    """Coefficient functions (A, B) of the first-order form for an operand
    carrying degree l and order m."""
    if name == "Jp":
        return -s, -(x / s) * m
    if name == "Jm":
        return s, -(x / s) * m
    if name == "Kp":
        return -(s * s), x * (l + 1.0)
    if name == "Km":
        return s * s, x * float(l)
    if name == "Rp":
        return -x * s, -m / s - s * (l + 1.0)
    if name == "Rm":
        return x * s, -m / s - s * float(l)
    if name == "Sp":
        return x * s, -m / s + s * (l + 1.0)
    if name == "Sm":
        return -x * s, -m / s + s * float(l)
    if name in DIAGONAL_GENERATORS:
        return np.zeros_like(x), np.full_like(x, diagonal_value(name, l, m))
    raise ValueError(f"unknown generator {name!r}")


def _ab_dx(name: str, l: int, m: int, x: np.ndarray, s: np.ndarray):
    """x derivatives (A', B') of the coefficient functions above."""
    s3 = s * s * s
    if name == "Jp":
        return x / s, -m / s3
    if name == "Jm":
        return -x / s, -m / s3
    if name == "Kp":
        return 2.0 * x, np.full_like(x, l + 1.0)
    if name == "Km":
        return -2.0 * x, np.full_like(x, float(l))
    if name == "Rp":
        return (2.0 * x * x - 1.0) / s, -m * x / s3 + (l + 1.0) * x / s
    if name == "Rm":
        return (1.0 - 2.0 * x * x) / s, -m * x / s3 + l * x / s
    if name == "Sp":
        return (1.0 - 2.0 * x * x) / s, -m * x / s3 - (l + 1.0) * x / s
    if name == "Sm":
        return (2.0 * x * x - 1.0) / s, -m * x / s3 - l * x / s
    if name in DIAGONAL_GENERATORS:
        return np.zeros_like(x), np.zeros_like(x)
    raise ValueError(f"unknown generator {name!r}")


def apply_diff(name: str, l: int, m: int, grid: GridFunction) -> GridFunction:
    """Apply the differential form of a generator to samples of T_l^m.

    The grid must hold exact T_l^m values in channel m; the derivative is
    taken analytically, not by differencing. The result is tagged with the
    image channel.
    """
    if not is_admissible(l, m):
        raise ValueError(f"inadmissible (l, m) = ({l}, {m})")
    if grid.m != m:
        raise ValueError(f"grid channel {grid.m} does not match operand order {m}")
    x = np.asarray(grid.rule.nodes)
    _guard_nodes(x)
    s = np.sqrt((1.0 - x) * (1.0 + x))
    a, b = _ab(name, l, m, x, s)
    dt = dt_values(m, l, x)[-1]
    out = a * dt + b * grid.values
    dm = 0 if name in DIAGONAL_GENERATORS else LADDER_SHIFTS[name][1]
    return GridFunction(grid.rule, m + dm, out)


def _chain(outer: str, inner: str, l: int, m: int, x: np.ndarray,
           t: np.ndarray, dt: np.ndarray, ddt: np.ndarray) -> np.ndarray:
    """outer(inner(f)) for operand samples (f, f', f'') in mode (l, m).

    The intermediate carries the shifted degree and order of the image of
    inner, which fixes the coefficient functions of outer.
    """
    s = np.sqrt((1.0 - x) * (1.0 + x))
    a1, b1 = _ab(inner, l, m, x, s)
    da1, db1 = _ab_dx(inner, l, m, x, s)
    g = a1 * dt + b1 * t
    dg = da1 * dt + a1 * ddt + db1 * t + b1 * dt
    if inner in DIAGONAL_GENERATORS:
        dl, dm = 0, 0
    else:
        dl, dm = LADDER_SHIFTS[inner]
    a2, b2 = _ab(outer, l + dl, m + dm, x, s)
    return a2 * dg + b2 * g


def ladder_diff_consistency(name: str, l: int, m: int,
                            rule: QuadratureRule) -> float:
    """Max node-wise gap between the differential action on T_l^m and the
    ladder coefficient times the image function."""
    grid = sample_T(l, m, rule)
    lhs = apply_diff(name, l, m, grid).values
    coeff = element(name, l, m)
    if name in DIAGONAL_GENERATORS:
        rhs = coeff * grid.values
    elif coeff == 0.0:
        rhs = np.zeros_like(lhs)
    else:
        dl, dm = LADDER_SHIFTS[name]
        rhs = coeff * t_values(m + dm, l + dl, rule.nodes)[-1]
    return float(np.max(np.abs(lhs - rhs)))


def legendre_ode_bracket(l: int, m: int, x: np.ndarray, t: np.ndarray,
                         dt: np.ndarray, ddt: np.ndarray) -> np.ndarray:
    """(1-x^2) f'' - 2x f' + (l(l+1) - m^2/(1-x^2)) f at the nodes."""
    one_minus = (1.0 - x) * (1.0 + x)
    return one_minus * ddt - 2.0 * x * dt + (l * (l + 1.0) - m * m / one_minus) * t


def legendre_ode_residual(l: int, m: int, rule: QuadratureRule) -> float:
    """Max absolute defining-equation residual of T_l^m at the nodes, with
    the second derivative from the analytic formula applied twice."""
    x = np.asarray(rule.nodes)
    t = t_values(m, l, x)[-1]
    dt = dt_values(m, l, x)[-1]
    ddt = ddt_values(m, l, x)[-1]
    return float(np.max(np.abs(legendre_ode_bracket(l, m, x, t, dt, ddt))))


def route_prefactor(which: str, x: np.ndarray) -> np.ndarray:
    """Multiplier relating each Casimir route to the bare bracket.

    For the three subalgebra routes the chained realization equals
    prefactor * bracket identically in the operand, so the factor can be
    exercised on arbitrary smooth data. The full-invariant route carries
    the same x^2 factor on its eigenfunction domain, but composed with
    right-ordered scalar substitution it annihilates arbitrary data
    outright: the subalgebra contributions cancel the bracket,
    -1 + (1 - x^2) + x^2/2 + x^2/2 = 0, which is the grid-side face of the
    invariant acting as the constant -5/4 on the whole representation.
    """
    if which == "so21_K":
        return (1.0 - x) * (1.0 + x)
    if which == "so3_J":
        return -np.ones_like(x)
    if which in ("so21_R", "so32"):
        return x * x
    raise ValueError(f"unknown route {which!r}")


def casimir_route_nodes(which: str, l: int, m: int, rule: QuadratureRule,
                        values: np.ndarray | None = None,
                        deriv: np.ndarray | None = None,
                        second: np.ndarray | None = None) -> np.ndarray:
    """Node values of (Casimir minus eigenvalue) applied through the
    differential realization, built from chained first-order forms.

    By default the operand is T_l^m itself, giving the residual of the
    defining equation along that route. Supplying (values, deriv, second)
    applies the same composed operator to arbitrary smooth data, which is
    how the route-vs-bracket prefactor identity can be exercised on
    functions that do not satisfy the equation.
    """
    if not is_admissible(l, m):
        raise ValueError(f"inadmissible (l, m) = ({l}, {m})")
    x = np.asarray(rule.nodes)
    _guard_nodes(x)
    if values is None:
        values = t_values(m, l, x)[-1]
        deriv = dt_values(m, l, x)[-1]
        second = ddt_values(m, l, x)[-1]
    t, dt, ddt = values, deriv, second

    def half_anti(p, q):
        return 0.5 * (_chain(p, q, l, m, x, t, dt, ddt)
                      + _chain(q, p, l, m, x, t, dt, ddt))

    if which == "so21_K":
        return (l + 0.5) ** 2 * t - half_anti("Kp", "Km") - (m * m - 0.25) * t
    if which == "so3_J":
        return m * m * t + half_anti("Jp", "Jm") - l * (l + 1.0) * t
    if which == "so21_R":
        return (l + m + 0.5) ** 2 * t - half_anti("Rp", "Rm") + 0.75 * t
    if which == "so32":
        return (m * m * t + (l + 0.5) ** 2 * t
                + half_anti("Jp", "Jm") - half_anti("Kp", "Km")
                - 0.5 * half_anti("Rp", "Rm") - 0.5 * half_anti("Sp", "Sm")
                + 1.25 * t)
    raise ValueError(f"unknown route {which!r}")


def ode_residual_from_casimir(which: str, l: int, m: int,
                              rule: QuadratureRule) -> float:
    """Max absolute residual of the named Casimir route on T_l^m."""
    return float(np.max(np.abs(casimir_route_nodes(which, l, m, rule))))


def x_dx_commutator_residual(poly_coeffs, rule: QuadratureRule) -> float:
    """Node-wise check of [X, D_x] = -1 on polynomial data p:

        x p'(x) - (x p(x))' = -p(x),

    with both derivatives taken analytically on the coefficient form."""
    from numpy.polynomial import polynomial as P

    c = np.asarray(poly_coeffs, dtype=float)
    x = np.asarray(rule.nodes)
    p = P.polyval(x, c)
    dp = P.polyval(x, P.polyder(c))
    dxp = P.polyval(x, P.polyder(P.polymulx(c)))
    return float(np.max(np.abs(x * dp - dxp + p)))
