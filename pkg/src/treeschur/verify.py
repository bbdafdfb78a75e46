"""Cross-module verification suites behind the ``verify`` CLI command."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import trace_class_corpus
from .disc import (
    coeff_hankel,
    difference_sequence,
    g_from_symbol,
    gamma_convolution_check,
    measure_bound,
    moments_from_g,
    optimal_measure,
    peller_sandwich,
    PolarQuadrature,
)
from .padics import PMatrix2, correspondence_check, lattice_distance
from .spherical import spherical_symbol
from .symbols import build_hankel, power_symbol, scale_symbol, schur_norm, subtree_sandwich_check
from .tree import (
    build_ball,
    build_certificate,
    deltaprime_gram,
    empirical_schur_lower_bound,
    meeting_indices,
    reconstruction_max_error,
    smn_entry,
)

SUITES = ("tree", "peller", "padic", "sandwich", "all")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_err: float
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _tree_suite(seed: int) -> list[CheckResult]:
    checks = []
    tree = build_ball(3, 3, chain_extra=4)
    m_arr, n_arr = tree.all_pairs_meeting()
    worst = 0
    for x in range(tree.n_ball):
        for y in range(tree.n_ball):
            worst = max(worst, abs(m_arr[x, y] + n_arr[x, y] - tree.distance(x, y)))
            worst = max(worst, abs(m_arr[x, y] - n_arr[y, x]))
    checks.append(CheckResult("meeting-indices-vs-distance", worst == 0, float(worst)))

    rng = np.random.default_rng(seed)
    gram_worst = 0.0
    nodes = rng.choice(tree.n_ball, size=10, replace=False)
    ext = build_ball(3, 3, chain_extra=9)
    for x in nodes:
        for y in nodes:
            m, n = meeting_indices(ext, int(x), int(y))
            node_x = int(x)
            for i in range(5):
                node_y = int(y)
                for j in range(5):
                    gram_worst = max(
                        gram_worst,
                        abs(smn_entry(3, m, n, i, j) - deltaprime_gram(ext, node_x, node_y)),
                    )
                    node_y = ext.climb_step(node_y)
                node_x = ext.climb_step(node_x)
    checks.append(CheckResult("chain-gram-closed-form", gram_worst == 0.0, gram_worst))

    for q, s in ((2, 0.2j), (3, 0.4j)):
        sym = spherical_symbol(q, s=s)
        n = 128
        cert = build_certificate(sym, q, n)
        ball = build_ball(q, 3, chain_extra=n + 1)
        err = reconstruction_max_error(cert, ball, sym)
        checks.append(CheckResult(f"kernel-reconstruction-q{q}", err <= 1e-8, err))

    bound_worst = 0.0
    ok = True
    for sym in trace_class_corpus()[:6]:
        ball = build_ball(2, 3, chain_extra=4)
        bound = empirical_schur_lower_bound(sym, ball, trials=20, seed=seed)
        rep = schur_norm(sym, 2, target_err=1e-8)
        gap = bound - rep.total
        bound_worst = max(bound_worst, gap)
        ok = ok and gap <= 1e-9
    checks.append(CheckResult("sampled-lower-bound", ok, max(bound_worst, 0.0)))
    return checks


def _peller_suite(seed: int) -> list[CheckResult]:
    checks = []
    ok = all(gamma_convolution_check(n) for n in range(51))
    checks.append(CheckResult("gamma-convolution", ok, 0.0 if ok else 1.0))

    quad = PolarQuadrature()
    worst_hold = True
    for s in (0.3, 0.5, 0.8 * cmath.exp(1j * math.pi / 5)):
        coeffs = scale_symbol(power_symbol(s), 1.0 - s * s)
        rep = peller_sandwich(coeff_hankel(coeffs, 96), g_from_symbol(coeffs), quad, target_err=1e-6)
        worst_hold = worst_hold and rep.holds
    checks.append(CheckResult("trace-norm-sandwich", worst_hold, 0.0 if worst_hold else 1.0))

    worst = 0.0
    for sym in (power_symbol(0.5), power_symbol(0.37 + 0.4j)):
        h = build_hankel(sym, 6)
        mom = moments_from_g(g_from_symbol(difference_sequence(sym)), quad, 10)
        for i in range(6):
            for j in range(6):
                if i + j <= 10:
                    worst = max(worst, abs(h.entries[i, j] - mom[i + j]))
    checks.append(CheckResult("moment-round-trip", worst <= 1e-8, worst))

    sym = power_symbol(0.45 - 0.3j)
    mu = optimal_measure(g_from_symbol(difference_sequence(sym)), quad)
    vals = sym.values(31)
    worst_mu = max(abs(mu.moment(n) - vals[n]) for n in range(31))
    rep = measure_bound(sym, mu, match_tol=1e-6)
    checks.append(CheckResult("optimal-measure", worst_mu <= 1e-6 and bool(rep.bound_holds), worst_mu))
    return checks


def _padic_suite(seed: int) -> list[CheckResult]:
    checks = []
    rng = np.random.default_rng(seed)
    worst = 0
    for q in (2, 3, 5):
        ident = PMatrix2.from_rationals(q, [[1, 0], [0, 1]])
        for i in range(4):
            for j in range(4):
                d = lattice_distance(ident, PMatrix2.from_rationals(q, [[q ** i, 0], [0, q ** j]]))
                worst = max(worst, abs(d - abs(i - j)))
    checks.append(CheckResult("elementary-divisor-distance", worst == 0, float(worst)))

    q = 3
    ident = PMatrix2.from_rationals(q, [[1, 0], [0, 1]])
    y = PMatrix2.from_rationals(q, [[q, 0], [0, 1]])
    lam, worst_chain = ident, 0
    for n in range(11):
        worst_chain = max(worst_chain, abs(lattice_distance(ident, lam) - n))
        lam = lam @ y
    checks.append(CheckResult("chain-powers-distance", worst_chain == 0, float(worst_chain)))

    ok = True
    a = PMatrix2.from_rationals(q, [[9, 1], [0, 2]])
    b = PMatrix2.from_rationals(q, [[3, 0], [1, "1/3"]])
    base = lattice_distance(a, b)
    for _ in range(8):
        while True:
            m = rng.integers(-9, 10, size=4)
            if m[0] * m[3] - m[1] * m[2] != 0:
                break
        g = PMatrix2.from_rationals(q, [[int(m[0]), int(m[1])], [int(m[2]), int(m[3])]])
        ok = ok and lattice_distance(g @ a, g @ b) == base
    checks.append(CheckResult("left-invariance", ok, 0.0 if ok else 1.0))

    worst_corr = 0.0
    for q in (2, 3, 5):
        for _ in range(4):
            z = complex(rng.uniform(0.05, 0.95), rng.uniform(-1.5, 1.5))
            worst_corr = max(worst_corr, correspondence_check(q, z, 20))
        worst_corr = max(worst_corr, correspondence_check(q, 0.5 + 1j * math.pi / math.log(q), 20))
    checks.append(CheckResult("group-tree-correspondence", worst_corr <= 1e-9, worst_corr))
    return checks


def _sandwich_suite(seed: int) -> list[CheckResult]:
    checks = []
    for q in (2, 3):
        ok = True
        worst = 0.0
        for sym in trace_class_corpus():
            rep = subtree_sandwich_check(sym, q, target_err=1e-7)
            low = (q - 1.0) / (q + 1.0) * rep.norm_inf - rep.norm_q
            high = rep.norm_q - rep.norm_inf
            worst = max(worst, low, high)
            ok = ok and rep.holds
        checks.append(CheckResult(f"subtree-sandwich-q{q}", ok and worst <= 1e-6, max(worst, 0.0)))
    return checks


_RUNNERS = {
    "tree": _tree_suite,
    "peller": _peller_suite,
    "padic": _padic_suite,
    "sandwich": _sandwich_suite,
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    if name == "all":
        checks = []
        for key in ("tree", "peller", "padic", "sandwich"):
            checks.extend(_RUNNERS[key](seed))
        return SuiteReport(suite="all", checks=checks)
    return SuiteReport(suite=name, checks=_RUNNERS[name](seed))
