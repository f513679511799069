#!/usr/bin/env python3
"""Smoke tests for the qdarwin python module."""

import math
import sys

import qdarwin


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    # special functions
    approx(qdarwin.digamma(1.0), -0.5772156649015329, 1e-12)
    approx(qdarwin.trigamma(1.0), math.pi**2 / 6, 1e-12)

    # Page's formula
    approx(qdarwin.page_mean_entropy(2, 2), 1.0 / 3.0, 1e-12)
    approx(qdarwin.page_mean_entropy(2, 4), 1 / 5 + 1 / 6 + 1 / 7, 1e-12)

    # analytic uniform-ensemble PIP: antisymmetric, endpoint = 2 H_S
    pip = qdarwin.haar_pip_analytic(2, 2, 12)
    assert pip.n_env == 12
    for m in range(13):
        approx(pip.i_mean[m] + pip.i_mean[12 - m], 2 * pip.h_sys, 1e-9)

    # Monte Carlo agrees loosely with the closed form
    mc = qdarwin.haar_pip_montecarlo(2, 2, 4, n_samples=200, seed=11)
    for m in range(5):
        se = mc.i_std[m] / math.sqrt(200)
        assert abs(mc.i_mean[m] - qdarwin.haar_pip_analytic(2, 2, 4).i_mean[m]) <= 5 * se + 1e-9

    # branching ensemble: GHZ plateau is exact
    ghz = qdarwin.branch_pip(2, 2, 6, initial_state="ghz", n_states=2, n_fragments=2, seed=3)
    for m in range(1, 6):
        approx(ghz.i_mean[m], math.log(2), 1e-12)
    approx(ghz.i_mean[6], 2 * math.log(2), 1e-12)

    # entropy of a density matrix
    approx(qdarwin.von_neumann_entropy([[0.5, 0], [0, 0.5]]), math.log(2), 1e-12)

    # redundancy of a GHZ universe
    report = qdarwin.redundancy_report(2, 2, 16, initial_state="ghz", delta=0.1,
                                       n_states=2, n_permutations=4, seed=5)
    approx(report.n_delta_mean, 16.0, 1e-12)
    approx(report.r_delta, 13.4, 1e-9)

    # theory formulas
    stats = qdarwin.d_factor_stats(4)
    approx(stats.mean_d, 11 / 12, 1e-12)
    approx(stats.std_d, 7 / 12, 1e-12)
    approx(qdarwin.h_series([0.25] * 4), 4.0, 1e-8)
    approx(qdarwin.thumbnail_specific_redundancy(2, 2, 0.01), 0.130824, 1e-5)
    value, degenerate = qdarwin.mean_fragment_size(2, 2, 0.1, math.log(2))
    assert not degenerate
    approx(qdarwin.approx_specific_redundancy(2, 2, 0.1, math.log(2)) * value, 0.9, 1e-12)

    # decomposition on the GHZ curve
    parts = qdarwin.decompose_information(ghz, 0.1)
    approx(parts.i_redundant, math.log(2), 1e-12)
    approx(parts.i_quantum, math.log(2), 1e-12)

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
