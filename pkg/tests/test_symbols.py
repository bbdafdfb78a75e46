"""Radial symbols, Hankel windows, resolvent, parity limits, Schur norms."""

import math

import numpy as np
import pytest

from treeschur.errors import DivergentDiagonals, DivergentSeries, UndeclaredTail
from treeschur.spectral import trace_norm
from treeschur.symbols import (
    INF,
    FiniteSupport,
    Geometric,
    RadialSymbol,
    Undeclared,
    apply_resolvent,
    build_hankel,
    constant_symbol,
    counterexample_block_lower_bound,
    explicit_symbol,
    extract_parity,
    hankel_tail_bound,
    lacunary_counterexample,
    ma_upper_bound,
    parity_symbol,
    power_symbol,
    scale_symbol,
    schur_norm,
    subtree_sandwich_check,
)


def half_symbol():
    return power_symbol(0.5)


def parity_plus_half():
    # phi(n) = 2 + 3(-1)^n + 2^-n
    return parity_symbol(2.0, 3.0, half_symbol())


# ---------------------------------------------------------------------------
# symbols and tail models
# ---------------------------------------------------------------------------

def test_geometric_spot_check_rejects_bad_bound():
    with pytest.raises(ValueError):
        RadialSymbol(fn=lambda n: 1.0, tail=Geometric(ratio=0.5, bound=1.0))


def test_finite_support_spot_check():
    with pytest.raises(ValueError):
        RadialSymbol(fn=lambda n: 1.0, tail=FiniteSupport(3))


def test_explicit_symbol_values():
    sym = explicit_symbol([1.0, 2.0, 3.0])
    assert sym(1) == 2.0
    assert sym(17) == 0.0
    assert np.allclose(sym.values(5), [1, 2, 3, 0, 0])


def test_lacunary_values():
    sym = lacunary_counterexample()
    assert sym(2) == pytest.approx(0.5)        # k = 1
    assert sym(3) == 0.0                       # not a power of two
    assert sym(8) == pytest.approx(1.0 / 24.0)  # k = 3
    assert sym(1) == 0.0
    vec = sym.values(40)
    assert vec[4] == pytest.approx(1.0 / 8.0)
    assert vec[32] == pytest.approx(1.0 / (5 * 32))


# ---------------------------------------------------------------------------
# Hankel windows
# ---------------------------------------------------------------------------

def test_build_hankel_half_symbol_entry():
    h = build_hankel(half_symbol(), 4)
    assert h.entries[0, 0] == pytest.approx(0.75)
    # Hankel structure: entries constant on antidiagonals
    for m in range(4):
        vals = [h.entries[i, m - i] for i in range(m + 1)]
        assert max(abs(v - vals[0]) for v in vals) == 0.0


def test_build_hankel_constant_and_alternating_are_zero():
    h1 = build_hankel(constant_symbol(1.0), 8)
    assert np.all(h1.entries == 0)
    alt = parity_symbol(0.0, 1.0, explicit_symbol([]))
    h2 = build_hankel(alt, 8)
    assert np.all(h2.entries == 0)


def test_tail_bound_decreases_and_certifies():
    sym = half_symbol()
    b8, b16 = hankel_tail_bound(sym, 8), hankel_tail_bound(sym, 16)
    assert 0 < b16 < b8 < 1.0
    # bound really dominates the discarded trace norm (rank-one exact tail)
    big, small = 400, 8
    h_big = build_hankel(sym, big).entries
    padded = np.zeros_like(h_big)
    padded[:small, :small] = h_big[:small, :small]
    discarded = trace_norm(h_big - padded)
    assert discarded <= hankel_tail_bound(sym, small) + 1e-12


def test_uncertified_tail_raises_when_required():
    with pytest.raises(UndeclaredTail):
        build_hankel(lacunary_counterexample(), 16, require_certified=True)


# ---------------------------------------------------------------------------
# resolvent
# ---------------------------------------------------------------------------

def test_apply_resolvent_window_values():
    h = build_hankel(half_symbol(), 6)
    hp = apply_resolvent(h, 3)
    assert hp[0, 0] == pytest.approx(0.5)       # (2/3)(3/4)
    assert hp[1, 1] == pytest.approx(7.0 / 24.0)  # (2/3)(3/16 + 1/4)


def test_apply_resolvent_zero():
    hp = apply_resolvent(np.zeros((5, 5), dtype=complex), 4)
    assert np.all(hp == 0)


def test_resolvent_inverse_recovers_window():
    # (I - tau/q) applied entrywise undoes the window recurrence exactly
    rng = np.random.default_rng(3)
    t = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
    q = 5
    tp = apply_resolvent(t, q) / (1.0 - 1.0 / q)
    back = tp.copy()
    back[1:, 1:] -= tp[:-1, :-1] / q
    assert np.max(np.abs(back - t)) <= 1e-13


def test_shift_conjugation_preserves_trace_norm():
    rng = np.random.default_rng(4)
    for _ in range(5):
        t = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
        shifted = np.zeros((8, 8), dtype=complex)
        shifted[1:, 1:] = t
        assert abs(trace_norm(shifted) - trace_norm(t)) <= 1e-10


# ---------------------------------------------------------------------------
# parity extraction
# ---------------------------------------------------------------------------

def test_extract_parity_examples():
    sym = parity_plus_half()
    h = build_hankel(sym, 64)
    dec = extract_parity(sym, h)
    assert dec.c_plus == pytest.approx(2.0, abs=1e-12)
    assert dec.c_minus == pytest.approx(3.0, abs=1e-12)

    one = constant_symbol(1.0)
    dec1 = extract_parity(one, build_hankel(one, 16))
    assert dec1.c_plus == pytest.approx(1.0, abs=1e-14)
    assert dec1.c_minus == pytest.approx(0.0, abs=1e-14)
    assert all(abs(dec1.psi(n)) < 1e-14 for n in range(10))

    geo = power_symbol(0.7)
    decg = extract_parity(geo, build_hankel(geo, 128))
    assert abs(decg.c_plus) < 1e-12 and abs(decg.c_minus) < 1e-12


def test_parity_reconstruction_consistency():
    sym = parity_symbol(0.4 - 0.1j, -0.25j, power_symbol(0.6j))
    dec = extract_parity(sym, build_hankel(sym, 128))
    for n in range(64):
        rebuilt = dec.c_plus + dec.c_minus * (-1) ** n + dec.psi(n)
        assert abs(rebuilt - sym(n)) <= 1e-12


# ---------------------------------------------------------------------------
# Schur norm
# ---------------------------------------------------------------------------

def test_schur_norm_parity_plus_half_infinite_degree():
    rep = schur_norm(parity_plus_half(), INF, target_err=1e-9)
    assert rep.total == pytest.approx(6.0, abs=1e-8)
    assert rep.hankel_term == pytest.approx(1.0, abs=1e-8)
    assert rep.certified


def test_schur_norm_constant_any_degree():
    for q in (2, 5, INF):
        rep = schur_norm(constant_symbol(1.0), q)
        assert rep.total == pytest.approx(1.0, abs=1e-10)


def test_schur_norm_spherical_style_power():
    rep = schur_norm(power_symbol(0.5j), INF, target_err=1e-9)
    assert rep.total == pytest.approx(5.0 / 3.0, abs=1e-8)


def test_schur_norm_homogeneity_and_entry_domination():
    sym = power_symbol(0.4 + 0.3j)
    rep = schur_norm(sym, 3, target_err=1e-9)
    rep2 = schur_norm(scale_symbol(sym, -2.5j), 3, target_err=1e-9)
    assert rep2.total == pytest.approx(2.5 * rep.total, abs=1e-7)
    sup = max(abs(sym(n)) for n in range(32))
    assert rep.total >= sup - 1e-9


def test_schur_norm_lacunary_diverges():
    with pytest.raises(DivergentDiagonals):
        schur_norm(lacunary_counterexample(), INF, target_err=1e-8)


def test_lacunary_truncated_norms_grow_past_block_bound():
    sym = lacunary_counterexample()
    prev = 0.0
    for n in (64, 128, 256):
        t = trace_norm(build_hankel(sym, n).entries)
        assert t > prev
        assert t >= counterexample_block_lower_bound(n)
        prev = t


# ---------------------------------------------------------------------------
# multiplier-algebra bound and the counterexample
# ---------------------------------------------------------------------------

def test_ma_upper_bound_indicator():
    assert ma_upper_bound(explicit_symbol([1.0])) == pytest.approx(1.0)


def test_ma_upper_bound_half_symbol():
    # sum (n+1)^2 4^-n = (1+x)/(1-x)^3 at x=1/4  ->  80/27
    assert ma_upper_bound(half_symbol()) == pytest.approx(math.sqrt(80.0 / 27.0), abs=1e-12)


def test_ma_upper_bound_lacunary_within_analytic_bound():
    val = ma_upper_bound(lacunary_counterexample())
    assert val ** 2 <= 3.0 * math.pi ** 2 / 8.0 + 1e-9
    assert val <= 1.9245
    # independent oracle: direct term summation over the support
    direct = sum((2.0 ** k + 1) ** 2 / (k * 2.0 ** k) ** 2 for k in range(1, 40))
    assert val ** 2 >= direct
    assert val ** 2 - direct <= 1.0 / 39.0  # remaining 1/k^2 mass


def test_ma_upper_bound_divergent_for_parity():
    with pytest.raises(DivergentSeries):
        ma_upper_bound(constant_symbol(1.0))


def test_block_lower_bound_values():
    assert counterexample_block_lower_bound(64) == pytest.approx(0.2375, abs=1e-12)
    assert counterexample_block_lower_bound(40) == pytest.approx(0.25 * (1 / 3 + 1 / 4 + 1 / 5), abs=1e-12)
    assert counterexample_block_lower_bound(5) == 0.0


# ---------------------------------------------------------------------------
# subtree sandwich
# ---------------------------------------------------------------------------

def test_subtree_sandwich_examples():
    rep = subtree_sandwich_check(constant_symbol(1.0), 2)
    assert rep.holds and rep.norm_q == pytest.approx(1.0, abs=1e-9)

    rep2 = subtree_sandwich_check(half_symbol(), 3, target_err=1e-9)
    assert rep2.holds and rep2.norm_q <= rep2.norm_inf + 1e-8

    sym = power_symbol(-0.3)
    rep3 = subtree_sandwich_check(sym, 2, target_err=1e-9)
    assert rep3.holds


# ---------------------------------------------------------------------------
# degenerate degrees and uncertified paths
# ---------------------------------------------------------------------------

def test_degenerate_degrees_rejected():
    from treeschur.symbols import check_degree

    for bad in (0, 1, -3, 2.5, True):
        with pytest.raises(ValueError):
            check_degree(bad)
    assert check_degree(2) == 2
    assert check_degree(INF) == INF
    with pytest.raises(ValueError):
        schur_norm(half_symbol(), 1)


def test_schur_norm_uncertified_tail_converges_with_flag():
    sym = RadialSymbol(fn=lambda n: 0.5 ** n, tail=Undeclared())
    rep = schur_norm(sym, INF, target_err=1e-8)
    assert not rep.certified
    assert rep.total == pytest.approx(1.0, abs=1e-7)


def test_schur_norm_cap_raises_no_convergence():
    from treeschur.errors import NoConvergence

    with pytest.raises(NoConvergence):
        schur_norm(power_symbol(0.9), INF, target_err=1e-14, n_cap=64)


def test_hankel_term_at_matches_closed_form():
    from treeschur.symbols import hankel_term_at

    assert hankel_term_at(power_symbol(0.5), INF, 64) == pytest.approx(1.0, abs=1e-9)
    # finite-q value approaches the closed form as the window grows
    from treeschur.spherical import schur_norm_in_s, spherical_symbol

    sym = spherical_symbol(3, s=0.4j)
    assert hankel_term_at(sym, 3, 256) == pytest.approx(schur_norm_in_s(3, 0.4j), abs=1e-6)


def test_tail_plus_spill_budget_dominates_window_gap():
    # the certified budget (Hankel tail + resolvent spill) must dominate the
    # true window-to-window change in the resolvent trace norm, up to the
    # spectral accuracy term tol*n that schur_norm accounts separately
    from treeschur.spherical import spherical_symbol
    from treeschur.symbols import hankel_tail_bound, resolvent_spill_bound

    for q, s in ((3, 0.4j), (2, 0.2j), (5, -0.5 + 0.2j)):
        sym = spherical_symbol(q, s=s)
        t_big = trace_norm(apply_resolvent(build_hankel(sym, 640), q))
        for n in (48, 64, 96):
            t_n = trace_norm(apply_resolvent(build_hankel(sym, n), q))
            budget = hankel_tail_bound(sym, n) + resolvent_spill_bound(sym, n, q)
            assert abs(t_big - t_n) <= budget + 1e-12 * n, (q, s, n)


def test_resolvent_trace_norm_sandwich_on_random_windows():
    # (q-1)/(q+1) ||T||_1 <= ||T'||_1 <= ||T||_1 for T' the resolvent image;
    # T' is read off a padded window wide enough that the neglected geometric
    # tail is far below the tolerance
    rng = np.random.default_rng(5)
    pad = 120
    for q in (2, 3, 7):
        for _ in range(4):
            size = int(rng.integers(3, 10))
            t = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
            padded = np.zeros((size + pad, size + pad), dtype=complex)
            padded[:size, :size] = t
            t_norm = trace_norm(t)
            tp_norm = trace_norm(apply_resolvent(padded, q))
            assert (q - 1.0) / (q + 1.0) * t_norm <= tp_norm + 1e-10
            assert tp_norm <= t_norm + 1e-10
