"""Disc-integral representation of trace-class Hankel matrices.

For a coefficient sequence (c_n) the Hankel matrix h[i,j] = c_{i+j} is trace
class iff g(z) = sum (n+1)(n+2) c_n z^n is integrable on the unit disc, with

    ||H||_1  <=  (1/pi) int_D |g|  <=  (8/pi) ||H||_1,

and the entries are recovered from the moments
h[i,j] = (1/pi) int_D g(conj z) z^(i+j) (1-|z|^2) dA.  Atomic measures on the
disc give computable Schur-norm upper bounds for radial kernels:
phi(n) = c+ + c-(-1)^n + int z^n dmu implies
||phi||_S <= |c+| + |c-| + int |1-z^2|/(1-|z|^2) d|mu|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, UndeclaredTail
from .spectral import DEFAULT_TOL, trace_norm
from .symbols import (
    INF,
    FiniteSupport,
    Geometric,
    HankelMatrix,
    ParityLimit,
    RadialSymbol,
    _effective_geometric,
    _unwrap_parity,
    check_degree,
    schur_norm,
)

EIGHT_OVER_PI = 8.0 / math.pi


# ---------------------------------------------------------------------------
# gamma coefficients of (1-z)^(-3/2)
# ---------------------------------------------------------------------------

def gamma_coeffs(n: int) -> np.ndarray:
    """gamma_0..gamma_n with gamma_0 = 1 and gamma_k = gamma_{k-1} (k+1/2)/k."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = np.empty(n + 1)
    out[0] = 1.0
    for k in range(1, n + 1):
        out[k] = out[k - 1] * (k + 0.5) / k
    return out


def gamma_convolution_check(n: int) -> bool:
    """sum_i gamma_i gamma_{n-i} == (n+1)(n+2)/2 to 1e-10 relative."""
    g = gamma_coeffs(n)
    conv = float(np.sum(g * g[::-1]))
    target = (n + 1.0) * (n + 2.0) / 2.0
    return abs(conv - target) <= 1e-10 * target


# ---------------------------------------------------------------------------
# coefficient sequences and the analytic function g
# ---------------------------------------------------------------------------

def difference_sequence(sym: RadialSymbol) -> RadialSymbol:
    """c_n = phi(n) - phi(n+2); parity layers cancel, tails transform."""
    fn, tail = _unwrap_parity(sym.fn, sym.tail)
    if isinstance(tail, Geometric):
        r, c = _effective_geometric(fn, tail)
        new_tail = Geometric(ratio=r, bound=c * (1.0 + r * r) * (1 + 1e-12))
    elif isinstance(tail, FiniteSupport):
        new_tail = FiniteSupport(tail.end)
    else:
        raise UndeclaredTail("difference sequence needs a Geometric or FiniteSupport tail")

    def values_fn(count, _s=sym):
        vals = _s.values(count + 2)
        return vals[:count] - vals[2:]

    return RadialSymbol(
        fn=lambda n: fn(n) - fn(n + 2),
        tail=new_tail,
        name=f"diff[{sym.name}]" if sym.name else "",
        values_fn=values_fn,
    )


@dataclass(frozen=True)
class AnalyticDiscFunction:
    """g(z) = sum_n coeffs[n] z^n with |g_n| <= tail_bound (n+1)(n+2) tail_ratio^n
    for n >= len(coeffs) (tail_bound = 0 when the truncation is exact)."""

    coeffs: np.ndarray
    tail_ratio: float = 0.0
    tail_bound: float = 0.0

    def eval(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if len(self.coeffs) == 0:
            return np.zeros_like(z)
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def remainder_bound(self, rho: float) -> float:
        """Bound on the dropped tail sup_{|z|<=rho} |sum_{n>=M} g_n z^n|."""
        if self.tail_bound == 0.0:
            return 0.0
        x = self.tail_ratio * rho
        if x >= 1.0:
            return math.inf
        m = len(self.coeffs)
        # sum_{n>=m} (n+1)(n+2) x^n = x^m [ (m+1)(m+2)/(1-x) + (2m+3)x/(1-x)^2 + x(1+x)/(1-x)^3 ]
        head = (
            (m + 1) * (m + 2) / (1 - x)
            + (2 * m + 3) * x / (1 - x) ** 2
            + x * (1 + x) / (1 - x) ** 3
        )
        return self.tail_bound * x ** m * head


def g_from_symbol(coeff_seq: RadialSymbol, extra_terms: int = 32) -> AnalyticDiscFunction:
    """g_n = (n+1)(n+2) c_n from a tail-certified coefficient sequence."""
    fn, tail = _unwrap_parity(coeff_seq.fn, coeff_seq.tail)
    if isinstance(tail, FiniteSupport):
        m = tail.end
        ratio, bound = 0.0, 0.0
    elif isinstance(tail, Geometric):
        ratio, bound = _effective_geometric(fn, tail)
        if ratio == 0.0:
            m, bound = max(tail.onset, 1), 0.0
        else:
            # cut where the coefficient bound alone drops below 1e-22
            m = 64
            while bound * (m + 1) * (m + 2) * ratio ** m > 1e-22 and m < 200_000:
                m *= 2
            m += extra_terms
    else:
        raise UndeclaredTail("g requires a Geometric or FiniteSupport coefficient tail")
    n = np.arange(m)
    coeffs = (n + 1.0) * (n + 2.0) * coeff_seq.values(m)
    return AnalyticDiscFunction(coeffs=coeffs, tail_ratio=ratio, tail_bound=bound)


# ---------------------------------------------------------------------------
# polar quadrature on the unit disc
# ---------------------------------------------------------------------------

class PolarQuadrature:
    """Tensor quadrature for (1/pi) int_D F(z) dA.

    Radially Gauss-Legendre in u = r^2 (so z^a conj(z)^b (1-|z|^2) is integrated
    exactly for a = b <= 2 n_r - 2), uniform trapezoid in the angle (exact for
    |a - b| < n_theta).  All nodes are strictly interior, so integrands with
    boundary blow-up are only ever sampled inside the disc.
    """

    def __init__(self, n_r: int = 80, n_theta: int = 256, validate: bool = True):
        if n_r < 2 or n_theta < 4:
            raise ValueError("quadrature needs n_r >= 2 and n_theta >= 4")
        self.n_r = n_r
        self.n_theta = n_theta
        x, w = np.polynomial.legendre.leggauss(n_r)
        u = 0.5 * (x + 1.0)
        wu = 0.5 * w
        theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
        radii = np.sqrt(u)
        self.nodes = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
        self.weights = np.repeat(wu / n_theta, n_theta)
        self.max_radius = float(radii.max())
        if validate:
            self._validate()

    def _validate(self, max_deg: int = 12, tol: float = 1e-12):
        powers = np.empty((max_deg + 1, self.nodes.size), dtype=complex)
        powers[0] = 1.0
        for a in range(1, max_deg + 1):
            powers[a] = powers[a - 1] * self.nodes
        wfac = self.weights * (1.0 - np.abs(self.nodes) ** 2)
        moments = (powers * wfac) @ powers.conj().T
        expect = np.zeros_like(moments)
        for a in range(max_deg + 1):
            expect[a, a] = 1.0 / ((a + 1.0) * (a + 2.0))
        if not np.allclose(moments, expect, atol=tol):
            worst = float(np.max(np.abs(moments - expect)))
            raise NoConvergence(f"quadrature failed moment validation: max error {worst:.3e}")

    def integrate(self, values: np.ndarray) -> complex:
        return complex(np.sum(self.weights * values))


@dataclass(frozen=True)
class DiscIntegral:
    value: float
    error_estimate: float
    n_r: int
    n_theta: int


def disc_l1_norm(
    g: AnalyticDiscFunction,
    quad: PolarQuadrature | None = None,
    target_err: float = 1e-9,
    max_doublings: int = 4,
) -> DiscIntegral:
    """(1/pi) int_D |g| with a Richardson error estimate from node doubling."""
    if quad is None:
        quad = PolarQuadrature()
    prev = float(np.sum(quad.weights * np.abs(g.eval(quad.nodes))))
    n_r, n_theta = quad.n_r, quad.n_theta
    for _ in range(max_doublings):
        n_r *= 2
        n_theta *= 2
        fine_quad = PolarQuadrature(n_r, n_theta, validate=False)
        fine = float(np.sum(fine_quad.weights * np.abs(g.eval(fine_quad.nodes))))
        err = abs(fine - prev) + g.remainder_bound(fine_quad.max_radius)
        if err <= target_err:
            return DiscIntegral(value=fine, error_estimate=err, n_r=n_r, n_theta=n_theta)
        prev = fine
    raise NoConvergence(f"disc integral error estimate stayed above {target_err:.1e} at the node cap")


def moments_from_g(g: AnalyticDiscFunction, quad: PolarQuadrature, maxdeg: int) -> np.ndarray:
    """moment[n] = (1/pi) int_D g(conj z) z^n (1-|z|^2) dA for n <= maxdeg;
    the Hankel entries are h[i,j] = moment[i+j]."""
    base = quad.weights * g.eval(np.conj(quad.nodes)) * (1.0 - np.abs(quad.nodes) ** 2)
    out = np.empty(maxdeg + 1, dtype=complex)
    zpow = np.ones_like(quad.nodes)
    for n in range(maxdeg + 1):
        out[n] = np.sum(base * zpow)
        zpow = zpow * quad.nodes
    return out


# ---------------------------------------------------------------------------
# the trace-norm sandwich
# ---------------------------------------------------------------------------

def coeff_hankel(coeff_seq: RadialSymbol, n: int) -> HankelMatrix:
    """Plain coefficient Hankel window h[i,j] = c_{i+j} with its tail bound."""
    if n < 1:
        raise ValueError("truncation size must be >= 1")
    probe = coeff_seq.tail
    while isinstance(probe, ParityLimit):
        if abs(probe.c_plus) + abs(probe.c_minus) > 0:
            raise UndeclaredTail(
                "a nonzero parity part makes the plain coefficient Hankel non-trace-class"
            )
        probe = probe.rest
    vals = coeff_seq.values(2 * n - 1)
    idx = np.add.outer(np.arange(n), np.arange(n))
    entries = vals[idx]
    fn, tail = _unwrap_parity(coeff_seq.fn, coeff_seq.tail)
    if isinstance(tail, FiniteSupport):
        if n >= tail.end:
            bound = 0.0
        else:
            c_abs = np.abs(np.array([fn(k) for k in range(tail.end)]))
            m = np.arange(len(c_abs), dtype=float)
            bound = float(np.sum((m[n:] + 1.0) * c_abs[n:]))
    elif isinstance(tail, Geometric) and tail.ratio > 0.0:
        r, c = _effective_geometric(fn, tail)
        one_minus = 1.0 - r
        bound = c * r ** n * ((n + 1) * one_minus + r) / (one_minus * one_minus)
    elif isinstance(tail, Geometric):
        bound = 0.0
    else:
        bound = math.inf
    return HankelMatrix(n=n, entries=entries, tail_bound=bound)


@dataclass(frozen=True)
class SandwichReport:
    lhs: float
    mid: float
    rhs: float
    holds: bool
    slack: float


def peller_sandwich(
    h: HankelMatrix,
    g: AnalyticDiscFunction,
    quad: PolarQuadrature | None = None,
    target_err: float = 1e-9,
    tol: float = DEFAULT_TOL,
) -> SandwichReport:
    """Checks ||H||_1 <= (1/pi) int |g| <= (8/pi) ||H||_1 for matching data."""
    lhs = trace_norm(h.entries, tol=tol)
    integral = disc_l1_norm(g, quad, target_err=target_err)
    mid = integral.value
    slack = h.tail_bound + tol * h.n + integral.error_estimate
    rhs = EIGHT_OVER_PI * lhs
    holds = (lhs - slack <= mid) and (mid <= rhs + EIGHT_OVER_PI * slack)
    return SandwichReport(lhs=lhs, mid=mid, rhs=rhs, holds=holds, slack=slack)


# ---------------------------------------------------------------------------
# atomic measures on the disc
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscMeasure:
    """Finitely many atoms (z_j, w_j), all strictly inside the disc."""

    atoms_z: np.ndarray
    atoms_w: np.ndarray
    c_plus: complex = 0.0
    c_minus: complex = 0.0

    def __post_init__(self):
        z = np.asarray(self.atoms_z, dtype=complex)
        w = np.asarray(self.atoms_w, dtype=complex)
        if z.shape != w.shape or z.ndim != 1:
            raise ValueError("atoms_z and atoms_w must be matching 1-D arrays")
        if z.size and np.max(np.abs(z)) >= 1.0:
            raise ValueError("all atoms must satisfy |z| < 1")
        object.__setattr__(self, "atoms_z", z)
        object.__setattr__(self, "atoms_w", w)

    def moment(self, n: int) -> complex:
        return complex(self.c_plus + self.c_minus * (-1) ** n + np.sum(self.atoms_w * self.atoms_z ** n))

    def mass(self) -> float:
        """sum |w_j| |1-z_j^2| / (1-|z_j|^2), the Hankel part of the norm bound."""
        z, w = self.atoms_z, self.atoms_w
        if not z.size:
            return 0.0
        return float(np.sum(np.abs(w) * np.abs(1.0 - z * z) / (1.0 - np.abs(z) ** 2)))


def optimal_measure(
    g: AnalyticDiscFunction,
    quad: PolarQuadrature,
    c_plus: complex = 0.0,
    c_minus: complex = 0.0,
    series_order: int | None = None,
) -> DiscMeasure:
    """Discretize d mu = (1/pi) (1-|z|^2)/(1-z^2) g(conj z) dA on the grid.

    The density factor 1/(1-z^2) is applied through its degree-2K Taylor
    polynomial (1 - z^(2K+2))/(1 - z^2): the raw factor has an angular peak of
    width 1-|z|^2 near z = +-1 that no fixed grid resolves, while the
    polynomial form is integrated exactly and differs from it by the
    telescoped coefficient tail beyond index 2K.  The atoms reproduce the
    vanishing part of the symbol and their mass equals (1/pi) int |g| up to
    the same tail, realizing the (8/pi)-optimal representation.
    """
    if series_order is None:
        if g.tail_bound > 0.0 and g.tail_ratio > 0.0:
            r = g.tail_ratio
            target = 1e-10 * (1.0 - r * r) / max(g.tail_bound, 1.0)
            series_order = int(min(512, max(8, math.ceil(math.log(target) / (2.0 * math.log(r))))))
        else:
            series_order = len(g.coeffs) // 2 + 1
    z = quad.nodes
    factor = (1.0 - z ** (2 * series_order + 2)) / (1.0 - z * z)
    w = quad.weights * (1.0 - np.abs(z) ** 2) * factor * g.eval(np.conj(z))
    return DiscMeasure(atoms_z=z, atoms_w=w, c_plus=c_plus, c_minus=c_minus)


@dataclass(frozen=True)
class MeasureBoundReport:
    matches: bool
    max_mismatch: float
    upper: float
    schur_total: float | None
    bound_holds: bool | None
    finite_q_constant: float | None


def measure_bound(
    sym_target: RadialSymbol,
    mu: DiscMeasure,
    q=None,
    check_n: int = 64,
    match_tol: float = 1e-9,
    target_err: float = 1e-8,
) -> MeasureBoundReport:
    """Verify phi(n) = c+ + c-(-1)^n + int z^n dmu and bound the Schur norm.

    When the moments match, the infinite-degree Schur norm is computed through
    the Hankel pipeline and checked against |c+| + |c-| + mass(mu).  With a
    finite q supplied, the recovery constant (8/pi)(q+1)/(q-1) relating the
    optimal measure to the finite-degree norm is reported as well.
    """
    vals = sym_target.values(check_n + 1)
    mismatch = 0.0
    z, w = mu.atoms_z, mu.atoms_w
    zpow = np.ones_like(z) if z.size else z
    for n in range(check_n + 1):
        atom_part = complex(np.sum(w * zpow)) if z.size else 0.0
        got = mu.c_plus + mu.c_minus * (-1) ** n + atom_part
        mismatch = max(mismatch, abs(got - vals[n]))
        if z.size:
            zpow = zpow * z
    matches = mismatch <= match_tol
    upper = abs(mu.c_plus) + abs(mu.c_minus) + mu.mass()
    schur_total = None
    bound_holds = None
    if matches:
        rep = schur_norm(sym_target, INF, target_err=target_err)
        schur_total = rep.total
        bound_holds = rep.total <= upper + rep.certified_error + match_tol * (check_n + 1)
    constant = None
    if q is not None:
        q = check_degree(q)
        if q == INF:
            constant = EIGHT_OVER_PI
        else:
            constant = EIGHT_OVER_PI * (q + 1.0) / (q - 1.0)
    return MeasureBoundReport(
        matches=matches,
        max_mismatch=mismatch,
        upper=upper,
        schur_total=schur_total,
        bound_holds=bound_holds,
        finite_q_constant=constant,
    )
