import math
from itertools import combinations

import numpy as np
import pytest

from isonet import (
    SpectrumIndex,
    bipartition_r_index,
    depolarized_ghz_component,
    ghz_basis,
    is_ppt,
    is_ppt_teleported_ghz,
    min_eigenvalue_teleported_ghz,
    noise_overlap_closed,
    noise_overlap_direct,
    normalize_bipartition,
    partial_transpose,
    partial_transpose_eigenvalue,
    ppt_crossover,
    teleported_ghz_closed_form,
    teleported_ghz_spectrum,
)
from isonet.spectra import spectrum_trace_by_weight


def test_normalize_bipartition():
    assert normalize_bipartition(4, [0, 2]) == frozenset({0, 2})
    # qubit n-1 inside the subset gets swapped with the smallest one outside
    assert normalize_bipartition(4, [1, 3]) == frozenset({0, 1})
    assert normalize_bipartition(5, [0, 4]) == frozenset({0, 1})
    with pytest.raises(ValueError):
        normalize_bipartition(3, [])
    with pytest.raises(ValueError):
        normalize_bipartition(3, [0, 1, 2])
    with pytest.raises(ValueError):
        normalize_bipartition(3, [5])


def test_r_index_bits():
    # qubit q flags bit with weight 2^(n-2-q)
    assert bipartition_r_index(4, frozenset({0})) == 4
    assert bipartition_r_index(4, frozenset({2})) == 1
    assert bipartition_r_index(4, frozenset({0, 1, 2})) == 7


def test_noise_overlap_zero_index_vanishes_at_unit_visibility():
    for n in (2, 5, 9):
        assert abs(noise_overlap_closed(n, 1.0, 0)) < 1e-15
        assert noise_overlap_direct(n, 1.0, 0) == 0.0


@pytest.mark.parametrize("n", [2, 3, 4, 6, 9, 12])
def test_noise_overlap_closed_equals_direct(n):
    for p in [round(0.1 * i, 1) for i in range(11)]:
        for j in range(2 ** (n - 1)):
            closed = noise_overlap_closed(n, p, j)
            direct = noise_overlap_direct(n, p, j)
            assert abs(closed - direct) <= 1e-12, (n, p, j)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_noise_overlap_matches_dense_expectation(n):
    # slow second oracle: sandwich every depolarized component densely
    for p in (0.25, 0.8):
        sigmas = [
            (k, depolarized_ghz_component(n, noisy).matrix)
            for k in range(1, n)
            for noisy in combinations(range(n), k)
        ]
        for j in range(2 ** (n - 1)):
            vec = ghz_basis(n, j, 1).vector
            dense = sum(
                p ** (n - k) * (1 - p) ** k * np.vdot(vec, sig @ vec).real
                for k, sig in sigmas
            )
            assert abs(dense - noise_overlap_closed(n, p, j)) < 1e-12


def test_spectrum_index_validation():
    subset = frozenset({0})
    idx = SpectrumIndex(4, 3, -1, subset)
    assert idx.hamming_weight == 2
    assert idx.r == 4
    with pytest.raises(ValueError):
        SpectrumIndex(4, 8, 1, subset)
    with pytest.raises(ValueError):
        SpectrumIndex(4, 1, 2, subset)


def test_eigenvalue_at_unit_visibility():
    # the perfect GHZ state: the critical eigenvalue is -1/2, its partner +1/2
    subset = normalize_bipartition(5, [1])
    r = bipartition_r_index(5, subset)
    assert partial_transpose_eigenvalue(SpectrumIndex(5, r, -1, subset), 1.0) == -0.5
    assert partial_transpose_eigenvalue(SpectrumIndex(5, r, 1, subset), 1.0) == 0.5
    assert partial_transpose_eigenvalue(SpectrumIndex(5, 0, 1, subset), 1.0) == 0.5
    with pytest.raises(ValueError):
        partial_transpose_eigenvalue(SpectrumIndex(5, 0, 1, subset), 0.0)


def test_only_critical_pair_can_be_negative():
    for n in (3, 5, 7):
        subset = normalize_bipartition(n, [0, 1])
        r = bipartition_r_index(n, subset)
        for p in (0.2, 0.5, 0.9):
            for j in range(2 ** (n - 1)):
                for sign in (1, -1):
                    value = partial_transpose_eigenvalue(
                        SpectrumIndex(n, j, sign, subset), p
                    )
                    if (j, sign) != (r, -1):
                        assert value > 0.0


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_eigenvalues_match_dense_decomposition(n):
    for p in (0.3, 0.9):
        state = teleported_ghz_closed_form(n, p)
        for cut in [(0,)] + ([(0, 1)] if n >= 3 else []):
            subset = normalize_bipartition(n, cut)
            dense = np.sort(np.linalg.eigvalsh(partial_transpose(state, cut)))
            closed = np.sort(
                [
                    partial_transpose_eigenvalue(SpectrumIndex(n, j, s, subset), p)
                    for j in range(2 ** (n - 1))
                    for s in (1, -1)
                ]
            )
            assert np.abs(dense - closed).max() < 1e-9


def test_spectrum_table_sums_to_one():
    for n, p, cut in ((4, 0.37, [1]), (8, 0.9, [0, 2]), (12, 0.55, [3])):
        spectrum = teleported_ghz_spectrum(n, p, cut)
        assert len(spectrum.eigenvalues) == 2**n
        assert abs(math.fsum(spectrum.eigenvalues.values()) - 1.0) <= 1e-12
    for n in (16, 20):
        for p in (0.3, 0.8):
            assert abs(spectrum_trace_by_weight(n, p) - 1.0) <= 1e-12


def test_min_eigenvalue_agrees_with_dense():
    for n in (3, 5, 7):
        for p in (0.4, 0.8):
            state = teleported_ghz_closed_form(n, p)
            dense = np.linalg.eigvalsh(partial_transpose(state, [0]))[0]
            fast = min_eigenvalue_teleported_ghz(n, p, [0])
            assert abs(dense - fast) < 1e-10


def test_is_ppt_fast_path_matches_dense():
    for n in range(2, 9):
        for p in (0.3, 0.6, 0.9):
            state = teleported_ghz_closed_form(n, p)
            for w in (1, 2):
                if n - 1 < w:
                    continue
                cut = tuple(range(w))
                dense = is_ppt(state, cut)
                fast = is_ppt_teleported_ghz(n, p, cut)
                scan = is_ppt_teleported_ghz(n, p, cut, full_scan=True)
                assert dense == fast == scan, (n, p, w)


def test_perfect_ghz_is_npt_everywhere():
    for n in (2, 4, 6):
        for w in range(1, n):
            assert not is_ppt_teleported_ghz(n, 1.0, tuple(range(w)))


def test_crossover_anchor_and_boundaries():
    assert ppt_crossover(0.9, 1) == 55
    for p, w in ((0.5, 1), (0.5, 2), (0.7, 1), (0.7, 2), (0.9, 1), (0.9, 2)):
        n0 = ppt_crossover(p, w)
        cut = tuple(range(w))
        assert is_ppt_teleported_ghz(n0, p, cut)
        if n0 - 1 >= w + 1:
            assert not is_ppt_teleported_ghz(n0 - 1, p, cut)
    with pytest.raises(ValueError):
        ppt_crossover(1.0, 1)
    with pytest.raises(ValueError):
        ppt_crossover(0.9, 0)


def test_crossover_monotone_in_cut_size_and_visibility():
    sizes = [ppt_crossover(0.7, w) for w in (1, 2, 3, 4)]
    assert sizes == sorted(sizes)
    thresholds = [ppt_crossover(p, 1) for p in (0.5, 0.7, 0.9, 0.95, 0.99)]
    assert all(b >= a for a, b in zip(thresholds, thresholds[1:]))
    assert thresholds[-1] > thresholds[0]


def test_spectrum_handles_last_qubit_in_cut():
    # permutation invariance: a cut containing the last qubit relabels cleanly
    n, p = 5, 0.6
    state = teleported_ghz_closed_form(n, p)
    dense = np.sort(np.linalg.eigvalsh(partial_transpose(state, [1, 4])))
    subset = normalize_bipartition(n, [1, 4])
    closed = np.sort(
        [
            partial_transpose_eigenvalue(SpectrumIndex(n, j, s, subset), p)
            for j in range(2 ** (n - 1))
            for s in (1, -1)
        ]
    )
    assert np.abs(dense - closed).max() < 1e-10
