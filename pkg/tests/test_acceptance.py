"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one PASS line (visible with ``pytest -s`` or in failure
reports); the assertions pin the tolerances.
"""

import cmath
import json
import math
import time

import numpy as np
import pytest

from treeschur.cli import main as cli_main
from treeschur.corpus import trace_class_corpus
from treeschur.disc import (
    PolarQuadrature,
    coeff_hankel,
    difference_sequence,
    g_from_symbol,
    gamma_convolution_check,
    moments_from_g,
    peller_sandwich,
)
from treeschur.padics import PMatrix2, correspondence_check, lattice_distance
from treeschur.spherical import (
    axis_ratio,
    eigenvalue_from_z,
    hankel_product_sum,
    schur_norm_in_s,
    schur_norm_in_z,
    spherical_symbol,
)
from treeschur.spectral import trace_norm
from treeschur.symbols import (
    INF,
    apply_resolvent,
    build_hankel,
    counterexample_block_lower_bound,
    lacunary_counterexample,
    ma_upper_bound,
    schur_norm,
    subtree_sandwich_check,
)
from treeschur.tree import (
    build_ball,
    build_certificate,
    empirical_schur_lower_bound,
    reconstruction_max_error,
    smn_entry,
)


def elliptical_grid(q, n_radii=7, n_angles=7, max_radius=0.9):
    """n_radii x n_angles eigenvalues strictly inside the multiplier ellipse."""
    rho = axis_ratio(q)
    radii = np.linspace(0.12, max_radius, n_radii)
    angles = np.linspace(0.0, 2.0 * math.pi, n_angles, endpoint=False) + 0.17
    return [
        complex(r * math.cos(t), r * math.sin(t) / rho)
        for r in radii
        for t in angles
    ]


def test_criterion_01_spherical_norm_agreement_finite_q():
    t0 = time.perf_counter()
    worst = 0.0
    for q in (2, 3, 5):
        for s in elliptical_grid(q):
            closed = schur_norm_in_s(q, s)
            assert closed is not None
            rep = schur_norm(spherical_symbol(q, s=s), q, target_err=1e-7)
            worst = max(worst, abs(rep.total - closed))
    assert worst <= 1e-6
    spot = schur_norm_in_s(3, 0.4j)
    assert spot == pytest.approx(29.0 / 9.0, abs=1e-12)
    rep_spot = schur_norm(spherical_symbol(3, s=0.4j), 3, target_err=1e-7)
    assert abs(rep_spot.total - 29.0 / 9.0) <= 1e-6
    elapsed = time.perf_counter() - t0
    assert elapsed <= 60.0
    print(f"criterion 01 PASS finite-q spherical agreement: max|delta|={worst:.2e}, {elapsed:.1f}s")


def test_criterion_02_spherical_norm_agreement_infinite_degree():
    worst = 0.0
    for s in elliptical_grid(INF):
        closed = schur_norm_in_s(INF, s)
        rep = schur_norm(spherical_symbol(INF, s=s), INF, target_err=1e-7)
        worst = max(worst, abs(rep.total - closed))
    assert worst <= 1e-6
    rep_spot = schur_norm(spherical_symbol(INF, s=0.5j), INF, target_err=1e-8)
    assert abs(rep_spot.total - 5.0 / 3.0) <= 1e-6
    print(f"criterion 02 PASS infinite-degree spherical agreement: max|delta|={worst:.2e}")


def test_criterion_03_real_eigenvalue_flatness():
    qs = (2, 3, 5, INF)
    worst = 0.0
    for k, s in enumerate(np.linspace(-0.93, 0.93, 20)):
        q = qs[k % len(qs)]
        closed = schur_norm_in_s(q, complex(s))
        assert closed == pytest.approx(1.0, abs=1e-8)
        rep = schur_norm(spherical_symbol(q, s=complex(s)), q, target_err=1e-9)
        worst = max(worst, abs(rep.total - 1.0))
    assert worst <= 1e-8
    print(f"criterion 03 PASS real-eigenvalue flatness: max|total-1|={worst:.2e}")


def test_criterion_04_z_parametrization_identity():
    rng = np.random.default_rng(104)
    worst = 0.0
    for _ in range(50):
        q = int(rng.choice([2, 3, 5]))
        z = complex(rng.uniform(0.05, 0.95), rng.uniform(-3.0, 3.0))
        in_z = schur_norm_in_z(q, z)
        in_s = schur_norm_in_s(q, eigenvalue_from_z(q, z))
        worst = max(worst, abs(in_z - in_s))
    assert worst <= 1e-12
    print(f"criterion 04 PASS z-parametrization identity: max|delta|={worst:.2e}")


def test_criterion_05_kernel_reconstruction():
    # s = 0.4i is not a multiplier at q=2 (3^2 * 0.16 >= 1), and at q=3 its
    # decay rate |a| = 0.9026 caps the N=64 reconstruction near 3e-6, so the
    # check runs at s = 0.2i for q=2 and truncation 128 (see decisions ledger).
    t0 = time.perf_counter()
    n = 128
    worst = 0.0
    for q, s in ((2, 0.2j), (3, 0.4j)):
        sym = spherical_symbol(q, s=s)
        cert = build_certificate(sym, q, n)
        ball = build_ball(q, 4, chain_extra=n + 1)
        err = reconstruction_max_error(cert, ball, sym)
        worst = max(worst, err)
    assert worst <= 1e-8
    elapsed = time.perf_counter() - t0
    assert elapsed <= 120.0
    print(f"criterion 05 PASS kernel reconstruction: max err={worst:.2e}, {elapsed:.1f}s")


def test_criterion_06_empirical_lower_bound():
    worst_gap = -math.inf
    for k, sym in enumerate(trace_class_corpus()):
        ball = build_ball(3, 3, chain_extra=4)
        bound = empirical_schur_lower_bound(sym, ball, trials=50, seed=600 + k)
        rep = schur_norm(sym, 3, target_err=1e-9)
        gap = bound - rep.total
        worst_gap = max(worst_gap, gap)
        assert gap <= 1e-9, sym.name
    print(f"criterion 06 PASS sampled lower bound: worst gap={worst_gap:.2e}")


def test_criterion_07_trace_norm_disc_sandwich():
    from treeschur.symbols import power_symbol, scale_symbol

    quad = PolarQuadrature()
    for s in (0.3, 0.5, 0.8 * cmath.exp(1j * math.pi / 5)):
        coeffs = scale_symbol(power_symbol(s), 1.0 - s * s)
        rep = peller_sandwich(coeff_hankel(coeffs, 96), g_from_symbol(coeffs), quad, target_err=1e-6)
        assert rep.holds, s
        assert rep.slack <= 1e-4, s
        assert rep.lhs - rep.slack <= rep.mid <= (8.0 / math.pi) * rep.lhs + (8.0 / math.pi) * rep.slack
    print("criterion 07 PASS trace-norm/disc-integral sandwich at certified error <= 1e-4")


def test_criterion_08_moment_round_trip():
    quad = PolarQuadrature(n_r=160, n_theta=1024)
    worst = 0.0
    for sym in trace_class_corpus():
        h = build_hankel(sym, 6)
        mom = moments_from_g(g_from_symbol(difference_sequence(sym)), quad, 10)
        for i in range(6):
            for j in range(6):
                if i + j <= 10:
                    worst = max(worst, abs(h.entries[i, j] - mom[i + j]))
    assert worst <= 1e-8
    print(f"criterion 08 PASS moment round trip: max|delta|={worst:.2e}")


def test_criterion_09_gamma_identities():
    for n in range(51):
        assert gamma_convolution_check(n)
    print("criterion 09 PASS gamma convolution identity for n <= 50")


def test_criterion_10_lacunary_counterexample(tmp_path, capsys):
    sym = lacunary_counterexample()
    val = ma_upper_bound(sym)
    assert val ** 2 <= 3.0 * math.pi ** 2 / 8.0 + 1e-9
    prev = -math.inf
    for n in (64, 128, 256, 512, 1024):
        t = trace_norm(build_hankel(sym, n).entries)
        assert t > prev
        assert t >= counterexample_block_lower_bound(n)
        if n == 64:
            assert counterexample_block_lower_bound(n) == pytest.approx(0.2375, abs=1e-12)
        prev = t
    spec = tmp_path / "lacunary.json"
    spec.write_text(json.dumps({"kind": "lacunary"}))
    code = cli_main(["norm", str(spec)])
    capsys.readouterr()
    assert code == 2
    print(f"criterion 10 PASS lacunary counterexample: bound^2={val**2:.6f} <= 3pi^2/8, norms diverge, exit=2")


def test_criterion_11_subtree_sandwich():
    worst = -math.inf
    for sym in trace_class_corpus():
        for q in (2, 3):
            rep = subtree_sandwich_check(sym, q, target_err=1e-7)
            low_slack = (q - 1.0) / (q + 1.0) * rep.norm_inf - rep.norm_q
            high_slack = rep.norm_q - rep.norm_inf
            worst = max(worst, low_slack, high_slack)
            assert low_slack <= 1e-6, (sym.name, q)
            assert high_slack <= 1e-6, (sym.name, q)
    print(f"criterion 11 PASS subtree sandwich: worst slack={worst:.2e}")


def test_criterion_12_padic_suite():
    rng = np.random.default_rng(112)
    for q in (2, 3, 5):
        ident = PMatrix2.from_rationals(q, [[1, 0], [0, 1]])
        for i in range(6):
            for j in range(6):
                mat = PMatrix2.from_rationals(q, [[q ** i, 0], [0, q ** j]])
                assert lattice_distance(ident, mat) == abs(i - j)
        y = PMatrix2.from_rationals(q, [[q, 0], [0, 1]])
        lam = ident
        for n in range(11):
            assert lattice_distance(ident, lam) == n
            lam = lam @ y
        a = PMatrix2.from_rationals(q, [[q ** 2, 1], [0, 2]])
        b = PMatrix2.from_rationals(q, [[3, 0], [1, f"1/{q}"]])
        base = lattice_distance(a, b)
        for _ in range(10):
            while True:
                m = rng.integers(-9, 10, size=4)
                if m[0] * m[3] - m[1] * m[2] != 0:
                    break
            g = PMatrix2.from_rationals(q, [[int(m[0]), int(m[1])], [int(m[2]), int(m[3])]])
            assert lattice_distance(g @ a, g @ b) == base
        from fractions import Fraction

        for k in (-2, -1, 1, 2):
            scale = PMatrix2.from_rationals(q, [[Fraction(q) ** k, 0], [0, Fraction(q) ** k]])
            assert lattice_distance(a, scale @ b) == base
    print("criterion 12 PASS p-adic lattice suite (elementary divisors, invariance, chain powers)")


def test_criterion_13_group_tree_correspondence():
    rng = np.random.default_rng(113)
    worst = 0.0
    for q in (2, 3, 5):
        zs = [complex(rng.uniform(0.05, 0.95), rng.uniform(-2.0, 2.0)) for _ in range(9)]
        zs.append(0.5 + 1j * math.pi / math.log(q))  # confluent point
        for z in zs:
            worst = max(worst, correspondence_check(q, z, 20))
    assert worst <= 1e-9
    print(f"criterion 13 PASS group/tree correspondence: max err={worst:.2e}")


def test_criterion_14_product_sum_identity():
    rng = np.random.default_rng(114)
    worst = 0.0
    for _ in range(50):
        a, b, c, d = (
            rng.uniform(0.05, 0.6) * cmath.exp(2j * math.pi * rng.uniform()) for _ in range(4)
        )
        series = 0.0 + 0.0j
        for n in range(200):
            u = (a ** (n + 1) - b ** (n + 1)) / (a - b)
            v = (c ** (n + 1) - d ** (n + 1)) / (c - d)
            series += u * v
        worst = max(worst, abs(hankel_product_sum(a, b, c, d) - series))
    assert worst <= 1e-10
    print(f"criterion 14 PASS product-sum identity vs series: max|delta|={worst:.2e}")


def test_criterion_15_shift_trace_identity():
    # Tr(S^i S*^j T) = sum_k T[k+j, k+i] must equal Tr(S_{i,j} T') with
    # T' = (1-1/q)(I - tau/q)^{-1} T, the right side evaluated entrywise from
    # the closed form of S_{i,j} on a window wide enough that the neglected
    # geometric tail of T' sits far below 1e-12.
    rng = np.random.default_rng(115)
    window = 96
    worst = 0.0
    for q in (2, 3):
        for _ in range(5):
            size = int(rng.integers(4, 13))
            t = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
            padded = np.zeros((window, window), dtype=complex)
            padded[:size, :size] = t
            t_prime = apply_resolvent(padded, q)
            for i in range(5):
                for j in range(5):
                    lhs = sum(
                        t[k + j, k + i]
                        for k in range(size)
                        if k + j < size and k + i < size
                    )
                    rhs = 0.0 + 0.0j
                    for a in range(window):
                        for b in range(window):
                            entry = smn_entry(q, i, j, a, b)
                            if entry != 0.0:
                                rhs += entry * t_prime[b, a]
                    worst = max(worst, abs(lhs - rhs))
    assert worst <= 1e-12
    print(f"criterion 15 PASS shift-trace identity: max|delta|={worst:.2e}")
