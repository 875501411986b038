"""Gamma and real-order Bessel functions of the first and second kinds.

Self-contained double-precision implementations sized for the needs of the
inverse constructions: gamma via the Lanczos approximation (g = 7, nine
coefficients, reflection below 1/2), J_nu by the ascending power series up
to x = max(12, 2|nu|) and Hankel large-argument asymptotics beyond, and
Y_nu through the connection formula (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi)
with near-integer orders evaluated at nu +- 1e-6 and linearly interpolated.

Accuracy notes: J is good to ~1e-10 absolute for nu in [0, 5], x in (0, 50].
Y degrades as x -> 0 where |Y_nu| itself blows up; there the error is small
relative to |Y_nu| rather than absolutely.  Negative x and complex anything
are out of scope.

The functions are registered with the expression layer as ``besselj(nu, u)``
and ``bessely(nu, u)`` (constant order), so coefficient functions built from
Bessel factors print, re-parse and differentiate like any other expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import expr
from .expr import Const, FunctionHook, Mul, Sub, _call, register_function


class SpecialFunctionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# gamma

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Gamma function for real x away from the poles at 0, -1, -2, ..."""
    if x <= 0.0 and float(x).is_integer():
        raise SpecialFunctionError(f"gamma pole at nonpositive integer {x}")
    if x < 0.5:
        # reflection keeps the Lanczos sum on the well-conditioned half-line
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def _rgamma(x: float) -> float:
    """1/gamma, zero at the poles (so series terms vanish there)."""
    if x <= 0.0 and float(x).is_integer():
        return 0.0
    return 1.0 / gamma_fn(x)


# ---------------------------------------------------------------------------
# Bessel functions


def _series_j(nu: float, x: float) -> float:
    # ascending series; caller guarantees nu is not a negative integer
    half = 0.5 * x
    term = half**nu * _rgamma(nu + 1.0)
    total = term
    q = half * half
    for m in range(1, 400):
        term *= -q / (m * (nu + m))
        total += term
        if abs(term) <= 1e-17 * (1.0 + abs(total)):
            return total
    raise SpecialFunctionError(f"Bessel series did not converge (nu={nu}, x={x})")


def _hankel_pq(nu: float, x: float) -> tuple[float, float]:
    # large-argument amplitude series, optimally truncated
    mu = 4.0 * nu * nu
    p_sum, q_sum = 1.0, 0.0
    c = 1.0
    j = 0
    while j < 80:
        c_next = c * (mu - (2 * j + 1) ** 2) / (8.0 * x * (j + 1))
        if j >= 2 and abs(c_next) >= abs(c):
            break
        c = c_next
        j += 1
        r = j % 4
        if r == 0:
            p_sum += c
        elif r == 1:
            q_sum += c
        elif r == 2:
            p_sum -= c
        else:
            q_sum -= c
        if abs(c) < 1e-18:
            break
    return p_sum, q_sum


def _hankel_jy(nu: float, x: float) -> tuple[float, float]:
    p_sum, q_sum = _hankel_pq(nu, x)
    chi = x - (0.5 * nu + 0.25) * math.pi
    amp = math.sqrt(2.0 / (math.pi * x))
    cj = amp * (p_sum * math.cos(chi) - q_sum * math.sin(chi))
    cy = amp * (p_sum * math.sin(chi) + q_sum * math.cos(chi))
    return cj, cy


def _crossover(nu: float) -> float:
    return max(12.0, 2.0 * abs(nu))


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind, real order, x > 0."""
    if x <= 0.0:
        raise SpecialFunctionError(f"bessel_j requires x > 0, got {x}")
    n = round(nu)
    if nu == n and n < 0:
        sign = -1.0 if n % 2 else 1.0
        return sign * bessel_j(float(-n), x)
    if x <= _crossover(nu):
        return _series_j(nu, x)
    return _hankel_jy(nu, x)[0]


def _y_connection(nu: float, x: float) -> float:
    s = math.sin(math.pi * nu)
    c = math.cos(math.pi * nu)
    return (_series_j(nu, x) * c - _series_j(-nu, x)) / s


_EULER_GAMMA = 0.5772156649015329


def _y_integer_series(n: int, x: float) -> float:
    # ascending series with the logarithmic term, nonnegative integer order
    half = 0.5 * x
    log_part = (2.0 / math.pi) * math.log(half) * _series_j(float(n), x)
    finite = 0.0
    for m in range(n):
        finite += math.factorial(n - m - 1) / math.factorial(m) * half ** (2 * m - n)
    finite /= math.pi
    # sum of (-1)^m [psi(m+1) + psi(m+n+1)] / (m! (m+n)!) * half^(2m+n)
    h_m = 0.0
    h_mn = sum(1.0 / i for i in range(1, n + 1))
    term = half**n / math.factorial(n)
    total = (-2.0 * _EULER_GAMMA + h_m + h_mn) * term
    q = half * half
    sign = 1.0
    for m in range(1, 400):
        term *= q / (m * (m + n))
        sign = -sign
        h_m += 1.0 / m
        h_mn += 1.0 / (m + n)
        piece = sign * (-2.0 * _EULER_GAMMA + h_m + h_mn) * term
        total += piece
        if abs(piece) <= 1e-17 * (1.0 + abs(total)):
            break
    return log_part - finite - total / math.pi


def bessel_y(nu: float, x: float) -> float:
    """Bessel function of the second kind, real order, x > 0."""
    if x <= 0.0:
        raise SpecialFunctionError(f"bessel_y requires x > 0, got {x}")
    if nu < 0.0:
        # Y_{-v} = cos(v pi) Y_v + sin(v pi) J_v
        v = -nu
        return math.cos(math.pi * v) * bessel_y(v, x) + math.sin(math.pi * v) * bessel_j(v, x)
    if x > _crossover(nu):
        return _hankel_jy(nu, x)[1]
    n = round(nu)
    delta = nu - n
    if delta == 0.0:
        return _y_integer_series(n, x)
    # the connection formula loses ~1/|delta| in accuracy close to integer
    # orders; blend through the integer-order series across a small window
    window = 2e-4
    if abs(delta) < window:
        y_mid = _y_integer_series(n, x)
        y_lo = _y_connection(n - window, x)
        y_hi = _y_connection(n + window, x)
        curv = (y_hi - 2.0 * y_mid + y_lo) / (2.0 * window * window)
        slope = (y_hi - y_lo) / (2.0 * window)
        return y_mid + slope * delta + curv * delta * delta
    return _y_connection(nu, x)


def _zeros_of(fn, lo: float, hi: float, step: float = 0.05) -> list[float]:
    """Zeros of a smooth oscillatory function by scan + bisection."""
    zeros = []
    if hi <= lo:
        return zeros
    count = max(2, int(math.ceil((hi - lo) / step)) + 1)
    prev_x = lo
    prev_f = fn(prev_x)
    for i in range(1, count):
        cur_x = lo + (hi - lo) * i / (count - 1)
        cur_f = fn(cur_x)
        if prev_f == 0.0:
            zeros.append(prev_x)
        elif prev_f * cur_f < 0.0:
            a, b, fa = prev_x, cur_x, prev_f
            for _ in range(80):
                mid = 0.5 * (a + b)
                fm = fn(mid)
                if fa * fm <= 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            zeros.append(0.5 * (a + b))
        prev_x, prev_f = cur_x, cur_f
    return zeros


def bessel_j_zeros(nu: float, lo: float, hi: float) -> list[float]:
    return _zeros_of(lambda z: bessel_j(nu, z), max(lo, 1e-9), hi)


def bessel_y_zeros(nu: float, lo: float, hi: float) -> list[float]:
    return _zeros_of(lambda z: bessel_y(nu, z), max(lo, 1e-2), hi)


# ---------------------------------------------------------------------------
# Bowman's transformed Bessel equation


@dataclass(frozen=True)
class BowmanParams:
    """Parameters of the power-scaled Bessel equation

        x^2 w'' + (2 p_bar + 1) x w' + (alpha_bar^2 x^(2 r_bar) + beta_bar_sq) w = 0

    whose solutions are x^(-p_bar) [C1 J_{q/r}(alpha x^r / r) + C2 Y_{q/r}(...)],
    with q_bar = sqrt(p_bar^2 - beta_bar_sq).
    """

    p_bar: float
    alpha_bar: float
    beta_bar_sq: float
    r_bar: float
    q_bar: float = field(init=False)

    def __post_init__(self):
        disc = self.p_bar**2 - self.beta_bar_sq
        if disc < 0.0:
            raise SpecialFunctionError(
                f"complex Bessel order: p_bar^2 - beta_bar_sq = {disc} < 0")
        object.__setattr__(self, "q_bar", math.sqrt(disc))
        if self.r_bar == 0.0:
            raise SpecialFunctionError("r_bar must be nonzero")


def _bowman_solution(params: BowmanParams, c1: float, c2: float, x: float) -> float:
    order = params.q_bar / params.r_bar
    arg = params.alpha_bar / params.r_bar * x**params.r_bar
    val = 0.0
    if c1 != 0.0:
        val += c1 * bessel_j(order, arg)
    if c2 != 0.0:
        val += c2 * bessel_y(order, arg)
    return x ** (-params.p_bar) * val


def bessel_ode_residual(params: BowmanParams, c1: float, c2: float, x: float,
                        candidate=None) -> float:
    """Residual of the transformed Bessel equation at a candidate solution.

    Derivatives are formed with five-point central differences, so a small
    residual certifies the candidate numerically.  `candidate` defaults to
    the equation's closed-form solution with coefficients (c1, c2).
    """
    if x <= 0.0:
        raise SpecialFunctionError(f"residual check requires x > 0, got {x}")
    if candidate is None:
        if c1 == 0.0 and c2 == 0.0:
            return 0.0
        def candidate(z):
            return _bowman_solution(params, c1, c2, z)
    h = min(0.01 * max(1.0, x), 0.125 * x)
    f_m2 = candidate(x - 2 * h)
    f_m1 = candidate(x - h)
    f_0 = candidate(x)
    f_p1 = candidate(x + h)
    f_p2 = candidate(x + 2 * h)
    d1 = (f_m2 - 8 * f_m1 + 8 * f_p1 - f_p2) / (12 * h)
    d2 = (-f_m2 + 16 * f_m1 - 30 * f_0 + 16 * f_p1 - f_p2) / (12 * h * h)
    return (x * x * d2
            + (2.0 * params.p_bar + 1.0) * x * d1
            + (params.alpha_bar**2 * x ** (2.0 * params.r_bar) + params.beta_bar_sq) * f_0)


# ---------------------------------------------------------------------------
# expression-layer hooks: besselj(nu, u), bessely(nu, u) with constant order


def _d_besselj(args, dargs):
    nu = args[0].ev(0.0)
    inner = args[1]
    lower = _call("besselj", (Const(nu - 1.0), inner))
    upper = _call("besselj", (Const(nu + 1.0), inner))
    return Mul(Mul(Const(0.5), Sub(lower, upper)), dargs[1])


def _d_bessely(args, dargs):
    nu = args[0].ev(0.0)
    inner = args[1]
    lower = _call("bessely", (Const(nu - 1.0), inner))
    upper = _call("bessely", (Const(nu + 1.0), inner))
    return Mul(Mul(Const(0.5), Sub(lower, upper)), dargs[1])


register_function(FunctionHook(
    "besselj", 2, lambda v: bessel_j(v[0], v[1]), _d_besselj, constant_args=(0,)))
register_function(FunctionHook(
    "bessely", 2, lambda v: bessel_y(v[0], v[1]), _d_bessely, constant_args=(0,)))
