import math

import numpy as np
import pytest

from subblock import (Channel, Composition, DomainError, EmptyFeasibleSet,
                      SizeLimit, asymmetry_witness, cscc_capacity,
                      cscc_composition_rate, per_input_information,
                      secc_capacity, secc_uniform_rate, super_alphabet)


def brute_force_uniform_rate(ch, sequences):
    """Independent oracle: I(X_1^L; Y_1^L) / L with X uniform on the listed
    sequences, computed from the raw product channel."""
    seqs = np.asarray(sequences)
    length = seqs.shape[1]
    n_out = ch.output_size ** length
    outputs = np.array([[(j // ch.output_size ** (length - 1 - k)) % ch.output_size
                         for k in range(length)] for j in range(n_out)])
    matrix = np.ones((seqs.shape[0], n_out))
    for k in range(length):
        matrix *= ch.w[seqs[:, k][:, None], outputs[None, :, k]]
    p_y = matrix.mean(axis=0)
    h_out = -sum(q * math.log2(q) for q in p_y if q > 0)
    h_cond = -sum(matrix[i, j] * math.log2(matrix[i, j])
                  for i in range(matrix.shape[0])
                  for j in range(n_out) if matrix[i, j] > 0) / matrix.shape[0]
    return (h_out - h_cond) / length


def test_super_alphabet_size():
    ch = Channel.noiseless(2, (0.0, 1.0))
    alpha = super_alphabet(ch, 2, 0.5)
    assert alpha.size == 3
    # classes in lexicographic composition order, rows lexicographic within:
    # composition (0, 2) holds (1, 1); composition (1, 1) holds (0, 1), (1, 0)
    assert [tuple(s) for s in alpha.sequences().tolist()] == [(1, 1), (0, 1), (1, 0)]
    assert {tuple(s) for s in alpha.sequences().tolist()} == {(0, 1), (1, 0), (1, 1)}
    with pytest.raises(EmptyFeasibleSet):
        super_alphabet(ch, 2, 1.5)
    with pytest.raises(SizeLimit):
        super_alphabet(ch, 22, 0.0).sequences(cap=100)


def test_secc_uniform_rate_examples():
    noiseless = Channel.noiseless(2, (0.0, 1.0))
    assert abs(secc_uniform_rate(noiseless, 2, 0.5) - math.log2(3) / 2) < 1e-12
    # vacuous constraint: uniform over all sequences of a noiseless channel
    assert abs(secc_uniform_rate(noiseless, 2, 0.0) - 1.0) < 1e-12
    ch = Channel.bsc(0.1)
    oracle = brute_force_uniform_rate(ch, super_alphabet(ch, 2, 0.5).sequences())
    assert abs(secc_uniform_rate(ch, 2, 0.5) - oracle) <= 1e-9


def test_secc_uniform_rate_matches_bruteforce_binary():
    for p0 in (0.05, 0.2, 0.35):
        ch = Channel.bsc(p0)
        for length, threshold in ((2, 0.5), (3, 0.4), (4, 0.5), (4, 0.7)):
            seqs = super_alphabet(ch, length, threshold).sequences()
            oracle = brute_force_uniform_rate(ch, seqs)
            assert abs(secc_uniform_rate(ch, length, threshold) - oracle) <= 1e-9


def test_secc_capacity_examples():
    noiseless = Channel.noiseless(2, (0.0, 1.0))
    result = secc_capacity(noiseless, 2, 0.5, tol=1e-12)
    assert abs(result.rate - math.log2(3) / 2) <= 1e-12
    assert np.abs(result.distribution - 1.0 / 3.0).max() < 1e-6
    # a single feasible composition reduces the super-alphabet to one type
    # class, where the uniform input is optimal
    ch = Channel.bsc(0.3)
    single = secc_capacity(ch, 2, 1.0, tol=1e-11)
    fixed = cscc_composition_rate(ch, Composition((0, 2))).rate
    assert abs(single.rate - fixed) <= 1e-8
    lower = max(secc_uniform_rate(ch, 2, 0.5), cscc_capacity(ch, 2, 0.5).rate)
    assert secc_capacity(ch, 2, 0.5, tol=1e-10).rate >= lower - 1e-9


def test_secc_dominates_both_lower_bounds():
    for p0 in (0.1, 0.25):
        ch = Channel.bsc(p0)
        for length, threshold in ((2, 0.5), (3, 0.4), (4, 0.6)):
            exact = secc_capacity(ch, length, threshold, tol=1e-10).rate
            assert exact >= secc_uniform_rate(ch, length, threshold) - 1e-9
            assert exact >= cscc_capacity(ch, length, threshold).rate - 1e-9


def test_asymmetry_witness_near_noiseless():
    i01, i11 = asymmetry_witness(1e-6)
    assert abs(i01 - math.log2(3)) < 1e-3
    assert abs(i11 - math.log2(3)) < 1e-3
    assert abs(i01 - i11) < 1e-3


def test_asymmetry_witness_interior():
    for p0 in (0.1, 0.25, 0.4):
        i01, i11 = asymmetry_witness(p0)
        assert abs(i01 - i11) > 1e-4


def test_asymmetry_witness_swap_symmetry_exact():
    for p0 in (0.1, 0.25, 0.4):
        info = per_input_information(Channel.bsc(p0), [(0, 1), (1, 0), (1, 1)])
        assert info[0] == info[1]


def test_asymmetry_witness_domain():
    with pytest.raises(DomainError):
        asymmetry_witness(0.0)
    with pytest.raises(DomainError):
        asymmetry_witness(0.5)


def test_uniform_vs_cscc_crossover_at_L8():
    low_gap = secc_uniform_rate(Channel.bsc(0.01), 8, 0.6) \
        - cscc_capacity(Channel.bsc(0.01), 8, 0.6).rate
    high_gap = secc_uniform_rate(Channel.bsc(0.2), 8, 0.6) \
        - cscc_capacity(Channel.bsc(0.2), 8, 0.6).rate
    assert low_gap > 0.0
    assert high_gap < 0.0
