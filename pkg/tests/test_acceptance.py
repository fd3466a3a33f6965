"""Acceptance gate: one test per criterion, each printing its pass/fail line.

The underlying checks live in subblock.validation so the ``subblock validate``
command runs exactly the same suite.  Tolerances are pinned inside the checks:

  1. reduced CSCC rate == brute-force vector-channel rate to 1e-9 over 50
     randomized instances (binary/ternary, L in 2..6), under 60 s
  2. noiseless closed forms to 1e-12 (log2|T|/L and log2|A|/L)
  3. CSCC <= SECC <= CCC with slack >= -1e-9 on a B x p0 grid, with the
     uniform-vs-CSCC crossover at L=8, B=0.6
  4. 0 <= penalty <= sharpened bound <= r(L, P) on BSC/BEC/Z grids
  5. sphere packing vs grid oracle to 1e-5, convexity to 1e-8, zero exactly
     at R >= I, knee continuity to 1e-9, KKT rate match to 1e-8
  6. balanced L=8 survives 1000 random codewords at E(1)=G; one length past
     the bound the adversarial codeword forces an outage; under 5 s
  7. |I(01) - I(11)| > 1e-4 with I(01) == I(10) exactly
  8. (C - rate) * sqrt(n) stable within 2% from n=2^10 to 2^12; the 1e-3
     rate at n=128 sits below the joint-decoding bound
  9. capacity-power non-increasing, midpoint-concave within 1e-9, equal to
     the unconstrained capacity while the constraint is slack
"""

from subblock import validation


def _run(check, *args):
    result = check(*args)
    print(result.line())
    assert result.passed, result.detail
    return result


def test_criterion_1_symmetry_reduction():
    _run(validation.check_symmetry_reduction, validation.DEFAULT_SEED)


def test_criterion_2_noiseless_closed_forms():
    _run(validation.check_noiseless_closed_forms)


def test_criterion_3_sandwich_chain():
    _run(validation.check_sandwich_chain)


def test_criterion_4_penalty_bounds():
    _run(validation.check_penalty_bounds)


def test_criterion_5_error_exponents():
    _run(validation.check_exponents)


def test_criterion_6_energy_bound_tightness():
    _run(validation.check_energy_bound, validation.DEFAULT_SEED)


def test_criterion_7_asymmetry_witness():
    _run(validation.check_asymmetry_witness)


def test_criterion_8_lsd_scaling():
    _run(validation.check_lsd_scaling)


def test_criterion_9_capacity_power():
    _run(validation.check_capacity_power)
