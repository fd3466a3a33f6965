"""Subblock energy-constrained codes: the enlarged super-letter alphabet, the
uniform-input rate, exact capacity via Blahut-Arimoto on the induced vector
channel, and the uniform-input asymmetry witness.

Unlike the CSCC vector channel, the SECC vector channel mixes several type
classes and need not be symmetric, so the uniform super-letter distribution is
only a lower bound; the exact capacity comes from Blahut-Arimoto.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capacity import (CapacityResult, OUTPUT_TYPE_CAP, _class_output_probability,
                       all_output_sequences, blahut_arimoto, output_types)
from .channel import Channel, conditional_entropy
from .errors import DomainError, SizeLimit
from .typeclass import (Composition, feasible_compositions,
                        materialize_type_class, type_class_size)

ALPHABET_CAP = 10**5       # super-letters materialized
OUTPUT_SEQ_CAP = 10**5     # output sequences of the vector channel
MATRIX_CAP = 2 * 10**7     # entries of the materialized vector channel
LN2 = math.log(2.0)


@dataclass(frozen=True)
class SuperAlphabet:
    """The union of energy-feasible type classes for one subblock length."""

    length: int
    threshold: float
    compositions: tuple[Composition, ...]
    class_sizes: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.class_sizes)

    def sequences(self, cap: int = ALPHABET_CAP) -> np.ndarray:
        """Materialize all member sequences, classes in lexicographic
        composition order and rows lexicographic within each class."""
        if self.size > cap:
            raise SizeLimit(
                f"super-alphabet has {self.size} sequences, above the cap of {cap}"
            )
        blocks = [materialize_type_class(c, cap=cap) for c in self.compositions]
        out = np.concatenate([np.asarray(b, dtype=np.int16) for b in blocks], axis=0)
        out.setflags(write=False)
        return out

    def symbol_marginal(self) -> np.ndarray:
        """Scalar input marginal under the uniform super-letter distribution:
        sum_P (|T_P| / |A|) P(x)."""
        weights = np.zeros(self.compositions[0].alphabet_size)
        for comp, size in zip(self.compositions, self.class_sizes):
            weights += size * np.array(comp.counts, dtype=float)
        weights /= self.size * self.length
        weights.setflags(write=False)
        return weights


def super_alphabet(ch: Channel, length: int, threshold: float) -> SuperAlphabet:
    feasible = feasible_compositions(ch, length, threshold)
    comps = feasible.members
    return SuperAlphabet(length=length, threshold=threshold, compositions=comps,
                         class_sizes=tuple(type_class_size(c) for c in comps))


def secc_uniform_rate(ch: Channel, length: int, threshold: float, *,
                      alphabet_cap: int = ALPHABET_CAP,
                      output_type_cap: int = OUTPUT_TYPE_CAP) -> float:
    """Rate (bits/use) achieved by the uniform distribution over the
    super-alphabet.

    Output vectors sharing a composition are equiprobable, so the output
    entropy is one evaluation per output type class; H(Y|X) comes from the
    mixture pairwise law sum_P (|T_P|/|A|) P(x) w(y|x).
    """
    alpha = super_alphabet(ch, length, threshold)
    sequences = alpha.sequences(cap=alphabet_cap)
    terms = []
    for otype in output_types(ch.output_size, length, cap=output_type_cap):
        p_y = _class_output_probability(ch.w, sequences, otype.representative)
        if p_y > 0.0:
            terms.append(otype.size * p_y * (-math.log2(p_y)))
    h_out = math.fsum(terms)
    return h_out / length - conditional_entropy(ch, alpha.symbol_marginal())


def _vector_matrix(ch: Channel, sequences: np.ndarray, length: int,
                   output_cap: int, matrix_cap: int) -> np.ndarray:
    n_out = ch.output_size ** length
    if n_out > output_cap:
        raise SizeLimit(f"{n_out} output sequences exceed the cap of {output_cap}")
    if sequences.shape[0] * n_out > matrix_cap:
        raise SizeLimit(
            f"vector channel needs {sequences.shape[0] * n_out} entries, "
            f"above the cap of {matrix_cap}"
        )
    outputs = all_output_sequences(ch.output_size, length)
    matrix = np.ones((sequences.shape[0], n_out), dtype=float)
    for k in range(length):
        matrix *= ch.w[sequences[:, k, None], outputs[None, :, k]]
    return matrix


def secc_capacity(ch: Channel, length: int, threshold: float,
                  tol: float = 1e-9, *, alphabet_cap: int = ALPHABET_CAP,
                  output_cap: int = OUTPUT_SEQ_CAP,
                  matrix_cap: int = MATRIX_CAP,
                  max_iter: int = 100_000) -> CapacityResult:
    """Exact SECC capacity (bits/use): Blahut-Arimoto over the materialized
    vector channel on the super-alphabet, duality-gap certified to ``tol``.

    The returned distribution is over super-letters in the canonical order of
    :meth:`SuperAlphabet.sequences`.
    """
    alpha = super_alphabet(ch, length, threshold)
    sequences = alpha.sequences(cap=alphabet_cap)
    matrix = _vector_matrix(ch, sequences, length, output_cap, matrix_cap)
    p, info_nats, iterations, gap = blahut_arimoto(
        matrix, tol_nats=max(tol * length * LN2, 1e-14), max_iter=max_iter)
    return CapacityResult(rate=info_nats / LN2 / length, distribution=p,
                          iterations=iterations, residual=gap / LN2 / length)


def per_input_information(ch: Channel, sequences) -> np.ndarray:
    """I(X_1^L = x; Y_1^L) for each listed input sequence, with the input
    uniform over the listed sequences.  Sums use fsum, so permuting a
    sequence's coordinates permutes terms without changing the result."""
    seq = np.asarray(sequences, dtype=np.int64)
    if seq.ndim != 2:
        raise DomainError("sequences must be a 2-D array of symbol indices")
    matrix = np.ones((seq.shape[0], ch.output_size ** seq.shape[1]), dtype=float)
    outputs = all_output_sequences(ch.output_size, seq.shape[1])
    for k in range(seq.shape[1]):
        matrix *= ch.w[seq[:, k, None], outputs[None, :, k]]
    p_y = matrix.mean(axis=0)
    out = np.empty(seq.shape[0])
    for i in range(seq.shape[0]):
        out[i] = math.fsum(
            m * math.log2(m / q)
            for m, q in zip(matrix[i], p_y) if m > 0.0
        )
    return out


def asymmetry_witness(p0: float) -> tuple[float, float]:
    """The canonical uniform-input asymmetry check: BSC(p0), b = (0, 1),
    threshold 0.5, subblocks of length 2, so the super-alphabet is
    {01, 10, 11}.  Returns (I(01; Y), I(11; Y)) under the uniform input;
    the two differ for 0 < p0 < 0.5, so uniform is not capacity-achieving
    even though the underlying channel is symmetric."""
    if not 0.0 < p0 < 0.5:
        raise DomainError("crossover probability must lie in (0, 0.5)")
    ch = Channel.bsc(p0)
    info = per_input_information(ch, [(0, 1), (1, 0), (1, 1)])
    return float(info[0]), float(info[2])
