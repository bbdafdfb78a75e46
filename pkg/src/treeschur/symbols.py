"""Radial symbols on the non-negative integers and their Schur-norm pipeline.

A radial kernel on a homogeneous tree of degree q+1 is determined by a
sequence phi: N0 -> C; it is a Schur multiplier exactly when the Hankel matrix
h[i,j] = phi(i+j) - phi(i+j+2) is trace class, and its norm is

    |c+| + |c-| + ||H||_1                          (q = inf)
    |c+| + |c-| + (1-1/q) ||(I - tau/q)^{-1} H||_1 (q finite),

with c+- the parity limits of phi and tau(A) = S A S* the shift conjugation.
This module computes those quantities from finite truncations with certified
truncation error driven by a declared tail model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import (
    DivergentDiagonals,
    DivergentSeries,
    NoConvergence,
    UndeclaredTail,
)
from .spectral import DEFAULT_TOL, as_cmatrix, trace_norm

INF = math.inf

N_START = 32
N_CAP = 4096


def check_degree(q) -> int | float:
    """Validate a tree degree parameter: an integer >= 2 or math.inf."""
    if q == INF:
        return INF
    if isinstance(q, (int, np.integer)) and not isinstance(q, bool) and q >= 2:
        return int(q)
    raise ValueError(f"degree parameter must be an integer >= 2 or inf, got {q!r}")


# ---------------------------------------------------------------------------
# tail models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteSupport:
    """phi(n) == 0 for all n >= end."""

    end: int


@dataclass(frozen=True)
class Geometric:
    """|phi(n)| <= bound * ratio**n for all n >= onset."""

    ratio: float
    bound: float
    onset: int = 0


@dataclass(frozen=True)
class ParityLimit:
    """phi(n) = c_plus + c_minus*(-1)**n + psi(n) with psi covered by ``rest``."""

    c_plus: complex
    c_minus: complex
    rest: "TailModel"


@dataclass(frozen=True)
class LacunarySupport:
    """Support on powers of two with weights 1/(k*2**k).

    Certifies the (n+1)^2-weighted square series (the multiplier-algebra
    bound) but deliberately certifies nothing about trace-class membership:
    the associated Hankel matrix is not trace class.
    """


@dataclass(frozen=True)
class Undeclared:
    """No tail information; certified bounds are refused."""


TailModel = Union[FiniteSupport, Geometric, ParityLimit, LacunarySupport, Undeclared]

_SPOT_CHECK_OFFSETS = tuple(range(16)) + (
    20, 26, 34, 44, 57, 74, 96, 125, 162, 211, 274, 356, 463, 602, 782, 1017,
)


def _unwrap_parity(fn: Callable[[int], complex], tail: TailModel):
    """Strip ParityLimit layers, returning the vanishing part and its tail."""
    while isinstance(tail, ParityLimit):
        cp, cm = complex(tail.c_plus), complex(tail.c_minus)
        fn = (lambda n, _f=fn, _cp=cp, _cm=cm: _f(n) - _cp - _cm * (-1) ** n)
        tail = tail.rest
    return fn, tail


def _spot_check_tail(fn, tail: TailModel):
    """Sample the sequence at 32 indices and verify the declared decay."""
    fn, tail = _unwrap_parity(fn, tail)
    if isinstance(tail, Geometric):
        if not (0.0 <= tail.ratio < 1.0):
            raise ValueError(f"geometric ratio must lie in [0, 1), got {tail.ratio}")
        if tail.bound < 0:
            raise ValueError("geometric bound must be non-negative")
        # absolute slack absorbs float residue of parity subtraction deep in the tail
        slack = 1e-9 * max(1.0, tail.bound) + 1e-300
        for off in _SPOT_CHECK_OFFSETS:
            n = tail.onset + off
            cap = tail.bound * tail.ratio ** n
            if abs(fn(n)) > cap * (1.0 + 1e-9) + slack:
                raise ValueError(
                    f"declared geometric tail violated at n={n}: |phi(n)|={abs(fn(n)):.3e} > {cap:.3e}"
                )
    elif isinstance(tail, FiniteSupport):
        for off in _SPOT_CHECK_OFFSETS:
            n = tail.end + off
            if abs(fn(n)) > 1e-9:
                raise ValueError(f"declared finite support violated at n={n}")


# ---------------------------------------------------------------------------
# radial symbols
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RadialSymbol:
    """A total, deterministic sequence phi: N0 -> C with a declared tail model.

    ``values_fn`` may supply a vectorized evaluation of phi(0..count-1); the
    scalar ``fn`` is always authoritative.
    """

    fn: Callable[[int], complex]
    tail: TailModel = Undeclared()
    name: str = ""
    values_fn: Callable[[int], np.ndarray] | None = None

    def __post_init__(self):
        _spot_check_tail(self.fn, self.tail)

    def eval(self, n: int) -> complex:
        if n < 0:
            raise ValueError("radial symbols are defined on n >= 0")
        return complex(self.fn(int(n)))

    __call__ = eval

    def values(self, count: int) -> np.ndarray:
        """phi(0), ..., phi(count-1) as a complex array."""
        if count <= 0:
            return np.zeros(0, dtype=complex)
        if self.values_fn is not None:
            vals = np.asarray(self.values_fn(count), dtype=complex)
            if vals.shape != (count,):
                raise ValueError("values_fn returned wrong length")
            return vals
        return np.array([self.fn(n) for n in range(count)], dtype=complex)


def explicit_symbol(values, tail: TailModel | None = None, name: str = "") -> RadialSymbol:
    """Symbol from an explicit list, zero beyond the list."""
    vals = np.asarray(values, dtype=complex)
    if tail is None:
        tail = FiniteSupport(len(vals))

    def fn(n, _v=vals):
        return complex(_v[n]) if n < len(_v) else 0.0

    def values_fn(count, _v=vals):
        out = np.zeros(count, dtype=complex)
        take = min(count, len(_v))
        out[:take] = _v[:take]
        return out

    return RadialSymbol(fn=fn, tail=tail, name=name, values_fn=values_fn)


def power_symbol(s: complex, name: str = "") -> RadialSymbol:
    """phi(n) = s**n for |s| < 1 (geometric tail with ratio |s|)."""
    s = complex(s)
    if abs(s) >= 1:
        raise ValueError("power_symbol requires |s| < 1")

    def values_fn(count, _s=s):
        return _s ** np.arange(count)

    return RadialSymbol(
        fn=lambda n: s ** n,
        tail=Geometric(ratio=abs(s), bound=1.0),
        name=name or f"power({s})",
        values_fn=values_fn,
    )


def parity_symbol(c_plus: complex, c_minus: complex, psi: RadialSymbol, name: str = "") -> RadialSymbol:
    """phi(n) = c_plus + c_minus*(-1)**n + psi(n)."""
    cp, cm = complex(c_plus), complex(c_minus)

    def values_fn(count, _psi=psi):
        signs = np.where(np.arange(count) % 2 == 0, 1.0, -1.0)
        return cp + cm * signs + _psi.values(count)

    return RadialSymbol(
        fn=lambda n: cp + cm * (-1) ** n + psi.fn(n),
        tail=ParityLimit(cp, cm, psi.tail),
        name=name,
        values_fn=values_fn,
    )


def constant_symbol(c: complex = 1.0) -> RadialSymbol:
    return parity_symbol(c, 0.0, explicit_symbol([]), name=f"constant({c})")


def scale_symbol(sym: RadialSymbol, alpha: complex) -> RadialSymbol:
    """alpha * phi with the tail bound rescaled accordingly."""
    alpha = complex(alpha)

    def scaled_tail(tail):
        if isinstance(tail, Geometric):
            return Geometric(ratio=tail.ratio, bound=tail.bound * abs(alpha), onset=tail.onset)
        if isinstance(tail, ParityLimit):
            return ParityLimit(tail.c_plus * alpha, tail.c_minus * alpha, scaled_tail(tail.rest))
        return tail

    return RadialSymbol(
        fn=lambda n: alpha * sym.fn(n),
        tail=scaled_tail(sym.tail),
        name=f"{alpha}*{sym.name}" if sym.name else "",
        values_fn=(lambda count: alpha * sym.values_fn(count)) if sym.values_fn else None,
    )


def lacunary_counterexample() -> RadialSymbol:
    """The power-of-two lacunary symbol: phi(2**k) = 1/(k*2**k) for k >= 1, else 0.

    It satisfies the square-summability bound of the multiplier algebra but its
    Hankel matrix is not trace class, so it is not a Schur multiplier.
    """

    def fn(n: int) -> complex:
        if n >= 2 and (n & (n - 1)) == 0:
            k = n.bit_length() - 1
            return 1.0 / (k * 2.0 ** k)
        return 0.0

    def values_fn(count: int) -> np.ndarray:
        out = np.zeros(count, dtype=complex)
        k = 1
        while 2 ** k < count:
            out[2 ** k] = 1.0 / (k * 2.0 ** k)
            k += 1
        return out

    return RadialSymbol(fn=fn, tail=LacunarySupport(), name="lacunary", values_fn=values_fn)


# ---------------------------------------------------------------------------
# certified truncation bounds
# ---------------------------------------------------------------------------

def _effective_geometric(fn, tail: Geometric) -> tuple[float, float]:
    """Fold the onset region into the bound so that |phi(n)| <= c * r**n for all n."""
    r, bound = tail.ratio, tail.bound
    for n in range(tail.onset):
        v = abs(fn(n))
        if v > 0:
            bound = max(bound, v / r ** n)
    return r, bound


def _abs_hankel_coeffs(fn, end: int) -> np.ndarray:
    """|h_m| = |phi(m) - phi(m+2)| for m = 0 .. end-1 (phi finitely supported)."""
    vals = np.array([fn(n) for n in range(end + 2)], dtype=complex)
    return np.abs(vals[:-2] - vals[2:])


def hankel_tail_bound_ft(fn, tail: TailModel, n: int) -> float:
    fn, tail = _unwrap_parity(fn, tail)
    if isinstance(tail, FiniteSupport):
        if n >= tail.end:
            return 0.0
        h = _abs_hankel_coeffs(fn, tail.end)
        m = np.arange(len(h), dtype=float)
        return float(np.sum((m[n:] + 1.0) * h[n:]))
    if isinstance(tail, Geometric):
        if tail.ratio == 0.0:
            return hankel_tail_bound_ft(fn, FiniteSupport(max(tail.onset, 1)), n)
        r, c = _effective_geometric(fn, tail)
        # sum_{m >= n} (m+1) * c(1+r^2) r^m, closed form
        one_minus = 1.0 - r
        return c * (1.0 + r * r) * r ** n * ((n + 1) * one_minus + r) / (one_minus * one_minus)
    return INF


def hankel_tail_bound(sym: RadialSymbol, n: int) -> float:
    """Upper bound on || H_infinity - (N-window padded by zeros) ||_1.

    Rank-one-per-antidiagonal majorization: the antidiagonal i+j = m has trace
    norm (m+1)|h_m|, and every discarded entry lies on an antidiagonal m >= N.
    """
    return hankel_tail_bound_ft(sym.fn, sym.tail, n)


def resolvent_spill_bound(sym: RadialSymbol, n: int, q: int) -> float:
    """Trace-norm mass that (1-1/q)(I - tau/q)^{-1} pushes outside the N-window.

    Window entries of the resolvent image are exact, but the image of even a
    finitely supported H has entries on all deeper diagonals: the shift tau^k
    relocates the width-k border of the window outside it, so

        spill <= (1-1/q) * sum_{k>=1} q^{-k} * l1(border of width k)

    with the entrywise l1 norm dominating the trace norm.
    """
    fn, tail = _unwrap_parity(sym.fn, sym.tail)
    if isinstance(tail, Geometric) and tail.ratio == 0.0:
        tail = FiniteSupport(max(tail.onset, 1))
    if isinstance(tail, FiniteSupport):
        h = _abs_hankel_coeffs(fn, tail.end)
        # suffix[i] = sum_{m >= i} |h_m|; row i of the window has l1 <= suffix[i]
        full_suffix = np.concatenate([np.cumsum(h[::-1])[::-1], [0.0]])
        suffix = np.zeros(n + 1)
        take = min(len(full_suffix), n + 1)
        suffix[:take] = full_suffix[:take]
        border_cum = np.concatenate([[0.0], np.cumsum(suffix[:n][::-1])])  # width k border row sum
        full = 2.0 * border_cum[-1]
        total = 0.0
        closed = False
        for k in range(1, n + 1):
            border = 2.0 * border_cum[min(k, n)]
            total += q ** (-k) * border
            if q ** (-k) * full < 1e-22:
                total += q ** (-k) * full / (q - 1.0)
                closed = True
                break
        if not closed:
            total += full * q ** float(-n) / (q - 1.0)
        return (1.0 - 1.0 / q) * total
    if isinstance(tail, Geometric):
        r, c = _effective_geometric(fn, tail)
        k_full = 2.0 * c * (1.0 + r * r) / (1.0 - r) ** 2
        total = 0.0
        closed = False
        for k in range(1, n + 1):
            total += q ** (-k) * k_full * r ** (n - k)
            if q ** (-k) * k_full < 1e-22:
                total += q ** (-k) * k_full / (q - 1.0)
                closed = True
                break
        if not closed:
            total += k_full * q ** float(-n) / (q - 1.0)
        return (1.0 - 1.0 / q) * total
    return INF


def _diag_series_tail(sym: RadialSymbol, n: int) -> float:
    """Bound on the discarded parts of sum h[i,i] and sum h[i+1,i] past the window."""
    fn, tail = _unwrap_parity(sym.fn, sym.tail)
    if isinstance(tail, Geometric) and tail.ratio == 0.0:
        tail = FiniteSupport(max(tail.onset, 1))
    if isinstance(tail, FiniteSupport):
        if 2 * n - 1 >= tail.end:
            return 0.0
        h = _abs_hankel_coeffs(fn, tail.end)
        return 2.0 * float(np.sum(h[max(2 * n - 1, 0):]))
    if isinstance(tail, Geometric):
        r, c = _effective_geometric(fn, tail)
        # even series discards m >= 2n, odd series m >= 2n-1
        return c * (1.0 + r * r) * (r ** (2 * n) + r ** max(2 * n - 1, 0)) / (1.0 - r * r)
    return INF


# ---------------------------------------------------------------------------
# Hankel windows and the resolvent
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HankelMatrix:
    """N x N window of h[i,j] = phi(i+j) - phi(i+j+2) with truncation metadata.

    ``tail_bound`` dominates the trace norm of the discarded infinite part of
    H itself (math.inf when the tail model certifies nothing).
    """

    n: int
    entries: np.ndarray
    tail_bound: float


def build_hankel(sym: RadialSymbol, n: int, require_certified: bool = False) -> HankelMatrix:
    """The N x N Hankel window of phi(i+j) - phi(i+j+2)."""
    if n < 1:
        raise ValueError("truncation size must be >= 1")
    vals = sym.values(2 * n + 1)
    idx = np.add.outer(np.arange(n), np.arange(n))
    entries = vals[idx] - vals[idx + 2]
    bound = hankel_tail_bound(sym, n)
    if require_certified and not math.isfinite(bound):
        raise UndeclaredTail(
            "certified truncation requested but the symbol's tail model certifies no decay"
        )
    return HankelMatrix(n=n, entries=entries, tail_bound=bound)


def apply_resolvent(h: HankelMatrix | np.ndarray, q: int) -> np.ndarray:
    """H' = (1-1/q) sum_k q^{-k} S^k H S*^k restricted to the window (exact there).

    h'[i,j] = (1-1/q) * sum_{k=0..min(i,j)} q^{-k} h[i-k, j-k]; the sum
    terminates inside the window, so no truncation error is introduced here.
    """
    q = check_degree(q)
    if q == INF:
        raise ValueError("the resolvent step applies to finite degree only")
    entries = h.entries if isinstance(h, HankelMatrix) else as_cmatrix(h)
    n = entries.shape[0]
    acc = np.empty_like(entries)
    acc[0] = entries[0]
    inv_q = 1.0 / q
    for i in range(1, n):
        acc[i, 0] = entries[i, 0]
        acc[i, 1:] = entries[i, 1:] + inv_q * acc[i - 1, :-1]
    return (1.0 - inv_q) * acc


# ---------------------------------------------------------------------------
# parity limits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParityDecomposition:
    """phi(n) = c_plus + c_minus*(-1)**n + psi(n) with psi -> 0."""

    c_plus: complex
    c_minus: complex
    psi: RadialSymbol
    certified_error: float


def extract_parity(sym: RadialSymbol, h: HankelMatrix, tol: float = 1e-9) -> ParityDecomposition:
    """Parity limits via the absolutely convergent diagonal series of H:

    lim phi(2i) = phi(0) - sum_i h[i,i],  lim phi(2i+1) = phi(1) - sum_i h[i+1,i].
    """
    entries = h.entries
    n = h.n
    diag_sum = complex(np.sum(np.diagonal(entries)))
    sub_sum = complex(np.sum(np.diagonal(entries, offset=-1)))
    tail_err = _diag_series_tail(sym, n)
    if not math.isfinite(tail_err):
        # no certificate: require the Cauchy criterion on the half window
        half = max(n // 2, 1)
        diag_half = complex(np.sum(np.diagonal(entries)[:half]))
        sub_half = complex(np.sum(np.diagonal(entries, offset=-1)[: max(half - 1, 0)]))
        tail_err = abs(diag_sum - diag_half) + abs(sub_sum - sub_half)
        if tail_err > tol:
            raise DivergentDiagonals(
                f"diagonal partial sums fail the Cauchy criterion at tolerance ({tail_err:.3e} > {tol:.1e})"
            )
    lim_even = sym.eval(0) - diag_sum
    lim_odd = sym.eval(1) - sub_sum
    c_plus = 0.5 * (lim_even + lim_odd)
    c_minus = 0.5 * (lim_even - lim_odd)

    def psi_fn(k, _s=sym, _cp=c_plus, _cm=c_minus):
        return _s.fn(k) - _cp - _cm * (-1) ** k

    psi_tail: TailModel = sym.tail.rest if isinstance(sym.tail, ParityLimit) else Undeclared()
    if isinstance(sym.tail, (Geometric, FiniteSupport)) and abs(c_plus) + abs(c_minus) == 0.0:
        psi_tail = sym.tail
    psi = RadialSymbol(fn=psi_fn, tail=psi_tail, name=f"psi[{sym.name}]" if sym.name else "")
    return ParityDecomposition(c_plus=c_plus, c_minus=c_minus, psi=psi, certified_error=tail_err)


# ---------------------------------------------------------------------------
# the Schur norm
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchurNormReport:
    q: float
    c_plus: complex
    c_minus: complex
    hankel_term: float
    total: float
    truncation_n: int
    certified_error: float
    certified: bool


def hankel_term_at(sym: RadialSymbol, q, n: int, tol: float = DEFAULT_TOL) -> float:
    """Trace norm of the window: of H' for finite q, of H for q = inf."""
    q = check_degree(q)
    h = build_hankel(sym, n)
    if q == INF:
        return trace_norm(h.entries, tol=tol)
    return trace_norm(apply_resolvent(h, q), tol=tol)


def schur_norm(
    sym: RadialSymbol,
    q,
    target_err: float = 1e-8,
    n_start: int = N_START,
    n_cap: int = N_CAP,
    tol: float = DEFAULT_TOL,
) -> SchurNormReport:
    """Adaptive doubling of the truncation until the result is settled.

    Convergence requires |result(2N) - result(N)| plus the certified tail
    bounds to drop below ``target_err``.  Symbols without a decay certificate
    are accepted, but the report is flagged uncertified, and non-shrinking
    increments of the partial trace norms raise DivergentDiagonals.
    """
    q = check_degree(q)
    n = max(8, n_start)
    prev_total = None
    prev_term = None
    diffs: list[float] = []
    while n <= n_cap:
        h = build_hankel(sym, n)
        if q == INF:
            term = trace_norm(h.entries, tol=tol)
            spill = 0.0
        else:
            term = trace_norm(apply_resolvent(h, q), tol=tol)
            spill = resolvent_spill_bound(sym, n, q)
        parity = extract_parity(sym, h, tol=max(target_err, 1e-9))
        total = abs(parity.c_plus) + abs(parity.c_minus) + term
        certified = math.isfinite(h.tail_bound) and math.isfinite(spill)
        if prev_total is not None:
            diff = abs(total - prev_total)
            diffs.append(abs(term - prev_term))
            if certified:
                err = diff + h.tail_bound + spill + parity.certified_error + tol * n
                if err <= target_err:
                    return SchurNormReport(
                        q=float(q), c_plus=parity.c_plus, c_minus=parity.c_minus,
                        hankel_term=term, total=total, truncation_n=n,
                        certified_error=err, certified=True,
                    )
            else:
                if (
                    len(diffs) >= 3
                    and diffs[-1] > 0.7 * diffs[-2]
                    and diffs[-2] > 0.7 * diffs[-3]
                    and diffs[-1] > target_err
                ):
                    raise DivergentDiagonals(
                        "partial trace norms fail the Cauchy criterion at tolerance; "
                        f"window {n} adds {diffs[-1]:.3e} after {diffs[-2]:.3e}"
                    )
                if diff + parity.certified_error <= target_err:
                    return SchurNormReport(
                        q=float(q), c_plus=parity.c_plus, c_minus=parity.c_minus,
                        hankel_term=term, total=total, truncation_n=n,
                        certified_error=diff + parity.certified_error + tol * n, certified=False,
                    )
        prev_total = total
        prev_term = term
        n *= 2
    raise NoConvergence(f"truncation cap {n_cap} reached before target error {target_err:.1e}")


def ma_upper_bound(sym: RadialSymbol) -> float:
    """sqrt( sum (n+1)^2 |phi(n)|^2 ), summed to certified absolute error 1e-12.

    This dominates the (not necessarily completely bounded) radial multiplier
    norm; it is finite for the lacunary counterexample even though the Schur
    norm is not.
    """
    # any nonzero parity limit alone makes the weighted series diverge
    probe = sym.tail
    while isinstance(probe, ParityLimit):
        if abs(probe.c_plus) + abs(probe.c_minus) > 0:
            raise DivergentSeries("nonzero parity limits make the weighted series diverge")
        probe = probe.rest
    fn, tail = _unwrap_parity(sym.fn, sym.tail)
    if isinstance(tail, Geometric) and tail.ratio == 0.0:
        tail = FiniteSupport(max(tail.onset, 1))
    if isinstance(tail, FiniteSupport):
        vals = np.array([fn(k) for k in range(tail.end)], dtype=complex)
        w = (np.arange(len(vals)) + 1.0) ** 2
        return math.sqrt(float(np.sum(w * np.abs(vals) ** 2)))
    if isinstance(tail, Geometric):
        r, c = _effective_geometric(fn, tail)
        x = r * r
        total = 0.0
        m = 0
        while True:
            total += (m + 1) ** 2 * abs(fn(m)) ** 2
            m += 1
            rem = c * c * x ** m * (
                (m + 1) ** 2 / (1 - x) + 2 * (m + 1) * x / (1 - x) ** 2 + x * (1 + x) / (1 - x) ** 3
            )
            if rem <= 5e-13 and m >= 8:
                return math.sqrt(total)
            if m > 10_000_000:
                raise NoConvergence("weighted series did not certify within the term cap")
    if isinstance(tail, LacunarySupport):
        # terms are (1 + 2^-k)^2 / k^2; direct iteration cannot certify 1e-12
        # (the 1/k^2 part converges like 1/K), so split off zeta(2) exactly
        extra = 0.0
        k = 1
        while True:
            term = (2.0 ** (1 - k) + 4.0 ** (-k)) / k ** 2
            extra += term
            if term < 1e-18:
                break
            k += 1
        return math.sqrt(math.pi ** 2 / 6.0 + extra)
    raise DivergentSeries("tail model does not certify the weighted square series")


def counterexample_block_lower_bound(n: int) -> float:
    """Analytic lower bound for the truncated trace norm of the lacunary Hankel.

    The principal block for k occupies indices 3*2^(k-3) .. 5*2^(k-3); once it
    fits inside the window its antidiagonal alone forces trace norm >= 1/(4k),
    and distinct blocks pinch orthogonally.
    """
    total = 0.0
    k = 3
    while 5 * 2 ** (k - 3) <= n - 1:
        total += 1.0 / (4.0 * k)
        k += 1
    return total


@dataclass(frozen=True)
class SubtreeSandwichReport:
    norm_q: float
    norm_inf: float
    holds: bool


def subtree_sandwich_check(sym: RadialSymbol, q: int, target_err: float = 1e-8) -> SubtreeSandwichReport:
    """Restriction to a degree-(q+1) subtree: (q-1)/(q+1) ||.||_inf <= ||.||_q <= ||.||_inf."""
    q = check_degree(q)
    if q == INF:
        raise ValueError("the sandwich compares a finite degree against infinite degree")
    rep_q = schur_norm(sym, q, target_err=target_err)
    rep_inf = schur_norm(sym, INF, target_err=target_err)
    slack = rep_q.certified_error + rep_inf.certified_error + target_err
    holds = ((q - 1.0) / (q + 1.0) * rep_inf.total <= rep_q.total + slack) and (
        rep_q.total <= rep_inf.total + slack
    )
    return SubtreeSandwichReport(norm_q=rep_q.total, norm_inf=rep_inf.total, holds=holds)
