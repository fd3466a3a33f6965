"""CSCC and CCC capacities over a DMC, plus the capacity-power function.

A constant subblock-composition code transmits, per subblock, a uniformly
random element of one type class.  The induced L-use vector channel is
symmetric, so its capacity needs only one output-probability evaluation per
output type class:

    rate = (1/L) * sum_Q |T_Q| * P(y_Q) * log2(1 / P(y_Q))  -  H(Y|X)

where y_Q is a canonical representative (symbols sorted ascending) of output
class Q, P(y_Q) is the uniform-input output probability, and H(Y|X) comes
from the pairwise law p(x) w(y|x).  A brute-force materialization of the full
vector channel is kept alongside as the certifying oracle at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .channel import (Channel, as_distribution, conditional_entropy, entropy,
                      mutual_information)
from .errors import DomainError, Infeasible, NoConvergence, SizeLimit
from .typeclass import (Composition, composition_count, enumerate_compositions,
                        feasible_compositions, materialize_type_class,
                        type_class_size)

CLASS_CAP = 10**6          # sequences materialized per input type class
OUTPUT_TYPE_CAP = 10**5    # number of output type classes
ORACLE_CAP = 10**7         # entries of the fully materialized vector channel
RATE_TIE_TOL = 1e-12
LN2 = math.log(2.0)
_CHUNK = 1 << 16


@dataclass(frozen=True)
class CapacityResult:
    """A rate in bits per channel use together with its optimizer and solver
    diagnostics (iteration count and certified residual)."""

    rate: float
    composition: Composition | None = None
    distribution: np.ndarray | None = None
    iterations: int = 0
    residual: float = 0.0


@dataclass(frozen=True)
class OutputType:
    """One output type class: its composition, canonical representative
    (symbols sorted non-decreasing), and cardinality."""

    composition: Composition
    representative: np.ndarray
    size: int


def output_types(output_size: int, length: int,
                 cap: int = OUTPUT_TYPE_CAP) -> Iterator[OutputType]:
    """Iterate over output type classes with canonical representatives."""
    if composition_count(output_size, length) > cap:
        raise SizeLimit(
            f"{composition_count(output_size, length)} output type classes "
            f"exceed the cap of {cap}"
        )
    symbols = np.arange(output_size, dtype=np.int16)
    for comp in enumerate_compositions(output_size, length):
        rep = np.repeat(symbols, comp.counts)
        rep.setflags(write=False)
        yield OutputType(comp, rep, type_class_size(comp))


def _class_output_probability(w: np.ndarray, sequences: np.ndarray,
                              rep: np.ndarray) -> float:
    """Uniform-input probability of the representative output vector:
    mean over the type class of prod_i w(rep_i | x_i)."""
    n = sequences.shape[0]
    parts = []
    for start in range(0, n, _CHUNK):
        block = w[sequences[start:start + _CHUNK], rep]
        parts.append(math.fsum(block.prod(axis=1)))
    return math.fsum(parts) / n


def cscc_composition_rate(ch: Channel, composition: Composition, *,
                          class_cap: int = CLASS_CAP,
                          output_type_cap: int = OUTPUT_TYPE_CAP) -> CapacityResult:
    """CSCC rate (bits/use) for a fixed subblock composition, via the
    symmetry-reduced output-type sum."""
    if composition.alphabet_size != ch.input_size:
        raise DomainError("composition alphabet does not match the channel")
    length = composition.length
    sequences = materialize_type_class(composition, cap=class_cap)
    terms = []
    for otype in output_types(ch.output_size, length, cap=output_type_cap):
        p_y = _class_output_probability(ch.w, sequences, otype.representative)
        if p_y > 0.0:
            terms.append(otype.size * p_y * (-math.log2(p_y)))
    rate = math.fsum(terms) / length - conditional_entropy(ch, composition.probabilities())
    return CapacityResult(rate=max(rate, 0.0), composition=composition)


def all_output_sequences(output_size: int, length: int) -> np.ndarray:
    """All length-L output sequences in lexicographic order, as an
    (output_size**L, L) integer array."""
    n = output_size ** length
    idx = np.arange(n, dtype=np.int64)
    powers = output_size ** np.arange(length - 1, -1, -1, dtype=np.int64)
    out = ((idx[:, None] // powers[None, :]) % output_size).astype(np.int16)
    out.setflags(write=False)
    return out


def vector_channel(ch: Channel, composition: Composition, *,
                   cap: int = ORACLE_CAP) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Materialize the induced L-use channel restricted to one type class.

    Returns ``(inputs, outputs, matrix)`` where ``matrix[i, j]`` is the
    product transition probability from input sequence i to output sequence j.
    """
    length = composition.length
    n_in = type_class_size(composition)
    n_out = ch.output_size ** length
    if n_in * n_out > cap:
        raise SizeLimit(
            f"vector channel needs {n_in * n_out} entries, above the cap of {cap}"
        )
    inputs = materialize_type_class(composition, cap=cap)
    outputs = all_output_sequences(ch.output_size, length)
    matrix = np.ones((n_in, n_out), dtype=float)
    for k in range(length):
        matrix *= ch.w[inputs[:, k, None], outputs[None, :, k]]
    return inputs, outputs, matrix


def cscc_composition_rate_bruteforce(ch: Channel, composition: Composition, *,
                                     cap: int = ORACLE_CAP) -> float:
    """Oracle for :func:`cscc_composition_rate`: (1/L) I(X_1^L; Y_1^L) with the
    input uniform on the type class, from the fully materialized vector channel."""
    _, _, matrix = vector_channel(ch, composition, cap=cap)
    length = composition.length
    p_y = matrix.mean(axis=0)
    h_out = -math.fsum(q * math.log2(q) for q in p_y if q > 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        row_terms = np.where(matrix > 0.0, matrix * np.log2(np.where(matrix > 0.0, matrix, 1.0)), 0.0)
    h_cond = -math.fsum(row_terms.sum(axis=1)) / matrix.shape[0]
    return (h_out - h_cond) / length


def cscc_capacity(ch: Channel, length: int, threshold: float, *,
                  class_cap: int = CLASS_CAP,
                  output_type_cap: int = OUTPUT_TYPE_CAP) -> CapacityResult:
    """CSCC capacity: the best fixed composition among the energy-feasible set.

    Ties within ``RATE_TIE_TOL`` go to the composition with the larger mean
    energy, then to the lexicographically smallest counts vector.
    """
    feasible = feasible_compositions(ch, length, threshold)
    best: CapacityResult | None = None
    best_energy = -1.0
    for comp in feasible:
        res = cscc_composition_rate(ch, comp, class_cap=class_cap,
                                    output_type_cap=output_type_cap)
        if best is None or res.rate > best.rate + RATE_TIE_TOL:
            best, best_energy = res, comp.mean_energy(ch.energy)
            continue
        if abs(res.rate - best.rate) <= RATE_TIE_TOL:
            energy = comp.mean_energy(ch.energy)
            if energy > best_energy + RATE_TIE_TOL:
                best, best_energy = res, energy
            elif abs(energy - best_energy) <= RATE_TIE_TOL and \
                    comp.counts < best.composition.counts:
                best = res
    return best


def ccc_composition_rate(ch: Channel, composition) -> float:
    """CCC rate for a codeword composition: plain mutual information I(P, W)."""
    p = composition.probabilities() if isinstance(composition, Composition) \
        else as_distribution(composition, ch.input_size)
    return mutual_information(p, ch)


# -- constrained Blahut-Arimoto ------------------------------------------------


def blahut_arimoto(w: np.ndarray, *, tol_nats: float = 1e-12,
                   max_iter: int = 100_000, bonus: np.ndarray | None = None,
                   p_init: np.ndarray | None = None):
    """Alternating maximization of I(p, W) [+ p . bonus] over input priors.

    Stops when the duality gap max_x score_x - E_p[score] drops below
    ``tol_nats``; the gap certifies the distance to the true maximum.
    Returns ``(p, mutual_information_nats, iterations, gap_nats)``.
    """
    w = np.asarray(w, dtype=float)
    n_in = w.shape[0]
    positive = w > 0.0
    logw = np.where(positive, np.log(np.where(positive, w, 1.0)), 0.0)
    p = np.full(n_in, 1.0 / n_in) if p_init is None else np.asarray(p_init, float).copy()
    p = np.clip(p, 0.0, None)
    p /= p.sum()
    iterations = 0
    info = 0.0
    gap = math.inf
    for iterations in range(1, max_iter + 1):
        pw = p @ w
        log_pw = np.log(np.maximum(pw, 1e-300))
        d = np.where(positive, w * (logw - log_pw[None, :]), 0.0).sum(axis=1)
        score = d if bonus is None else d + bonus
        objective = float(p @ score)
        info = float(p @ d)
        gap = float(score.max() - objective)
        if gap <= tol_nats:
            break
        with np.errstate(divide="ignore"):
            log_p = np.where(p > 0.0, np.log(np.where(p > 0.0, p, 1.0)), -math.inf) + score
        log_p -= log_p.max()
        p = np.exp(log_p)
        p /= p.sum()
    return p, info, iterations, gap


def capacity_power(ch: Channel, threshold: float, tol: float = 1e-10, *,
                   max_iter: int = 100_000) -> CapacityResult:
    """Capacity-power function: max I(P, W) subject to E_P[b] >= threshold.

    Solved by Blahut-Arimoto with a Lagrange bonus lam * b(x) on the energy,
    the multiplier located by outer bisection.  The two bracketing optimizers
    are blended so the returned distribution meets the energy constraint with
    equality (concavity of I makes the blend at least as good as either end).
    ``residual`` reports the certified duality gap in bits.
    """
    if threshold > ch.b_max + 1e-12:
        raise Infeasible(
            f"threshold {threshold} exceeds the largest symbol energy {ch.b_max}"
        )
    b = ch.energy
    tol_nats = max(tol * LN2 / 2.0, 1e-14)

    p, info, iters, gap = blahut_arimoto(ch.w, tol_nats=tol_nats, max_iter=max_iter)
    total_iters = iters
    if float(p @ b) >= threshold - 1e-12:
        return CapacityResult(rate=info / LN2, distribution=p,
                              iterations=total_iters, residual=gap / LN2)

    if ch.b_max - threshold <= 1e-12:
        # only the maximum-energy symbols are feasible
        keep = b >= ch.b_max - 1e-12
        sub_p, sub_info, iters, gap = blahut_arimoto(
            ch.w[keep], tol_nats=tol_nats, max_iter=max_iter)
        full = np.zeros(ch.input_size)
        full[keep] = sub_p
        return CapacityResult(rate=sub_info / LN2, distribution=full,
                              iterations=total_iters + iters, residual=gap / LN2)

    # bracket the multiplier: energy of the optimizer grows with lam
    lam_lo, p_lo = 0.0, p
    e_lo = float(p @ b)
    lam = 1.0
    p_hi, e_hi = None, -1.0
    for _ in range(200):
        p_hi, _, iters, _ = blahut_arimoto(ch.w, tol_nats=tol_nats,
                                           max_iter=max_iter,
                                           bonus=lam * b, p_init=p_lo)
        total_iters += iters
        e_hi = float(p_hi @ b)
        if e_hi >= threshold:
            break
        lam_lo, p_lo, e_lo = lam, p_hi, e_hi
        lam *= 2.0
    else:
        raise NoConvergence("energy constraint could not be bracketed")

    lam_hi = lam
    for _ in range(300):
        if e_hi - threshold <= 1e-10 or lam_hi - lam_lo <= 1e-14 * (1.0 + lam_hi):
            break
        mid = 0.5 * (lam_lo + lam_hi)
        p_mid, _, iters, _ = blahut_arimoto(ch.w, tol_nats=tol_nats,
                                            max_iter=max_iter,
                                            bonus=mid * b, p_init=p_hi)
        total_iters += iters
        e_mid = float(p_mid @ b)
        if e_mid >= threshold:
            lam_hi, p_hi, e_hi = mid, p_mid, e_mid
        else:
            lam_lo, p_lo, e_lo = mid, p_mid, e_mid

    if e_hi - e_lo > 1e-15:
        theta = min(max((threshold - e_lo) / (e_hi - e_lo), 0.0), 1.0)
    else:
        theta = 1.0
    p_star = theta * p_hi + (1.0 - theta) * p_lo
    p_star = np.clip(p_star, 0.0, None)
    p_star /= p_star.sum()
    rate = mutual_information(p_star, ch)

    # weak-duality certificate at (p_star, lam_hi)
    pw = p_star @ ch.w
    log_pw = np.log(np.maximum(pw, 1e-300))
    positive = ch.w > 0.0
    logw = np.where(positive, np.log(np.where(positive, ch.w, 1.0)), 0.0)
    d = np.where(positive, ch.w * (logw - log_pw[None, :]), 0.0).sum(axis=1)
    upper = float(np.max(d + lam_hi * b)) - lam_hi * threshold
    residual = max(upper / LN2 - rate, 0.0)
    return CapacityResult(rate=rate, distribution=p_star,
                          iterations=total_iters, residual=residual)
