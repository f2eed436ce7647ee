"""Error rates and asymptotic conference-key rates of the delivered state.

Two error probabilities feed the rate: the parity error of the dealer's
three-party stabilizer test (Z on qubit 0, Y on qubit 1, Z on qubit 3) and
the bit error of the dealer-to-A bipartite test, taken as one minus the
weight on the two-dimensional error-free correlation subspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .density import BASIS_EIGENVECTORS, DensityMatrix, PauliString
from .netmodel import TrioConfig, yield_memoryless, yield_with_memory
from .protocol import NoiseParams, ProtocolOutcome, run_pipeline, target_state

PARITY_TEST = PauliString("ZYZ")


@dataclass(frozen=True)
class RateReport:
    """Per-attempt and per-second rate summary of one protocol setting."""

    protocol_label: str
    yield_per_attempt: float
    fidelity: float
    q_x: float
    q_ab: float
    r_per_attempt: float
    r_per_second: float


def binary_entropy(x: float) -> float:
    """Base-2 binary entropy, with h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"argument must be in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x))


def _correlated_states() -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal basis of the subspace where the dealer-A bits agree.

    The first vector is the ideal +1-outcome state; the second flips the
    relative phase.  Any weight outside their span shows up as a bit error
    in the bipartite test.
    """
    plus = BASIS_EIGENVECTORS[("X", +1)]
    minus = BASIS_EIGENVECTORS[("X", -1)]
    ket0 = BASIS_EIGENVECTORS[("Z", +1)]
    ket1 = BASIS_EIGENVECTORS[("Z", -1)]
    y_pos = BASIS_EIGENVECTORS[("Y", +1)]
    y_neg = BASIS_EIGENVECTORS[("Y", -1)]
    a = np.kron(np.kron(plus, ket0), y_pos)
    b = np.kron(np.kron(minus, ket1), y_neg)
    psi_plus = 0.5 * ((1.0 - 1.0j) * a + (1.0 + 1.0j) * b)
    psi_minus = 0.5 * ((1.0 - 1.0j) * a - (1.0 + 1.0j) * b)
    return psi_plus, psi_minus


def qber_bipartite(rho: DensityMatrix) -> float:
    """Dealer-to-A bit error: weight outside the correlated subspace."""
    psi_plus, psi_minus = _correlated_states()
    q = 1.0 - rho.fidelity(psi_plus) - rho.fidelity(psi_minus)
    return min(1.0, max(0.0, q))


def qber_parity(rho: DensityMatrix) -> float:
    """Failure probability of the three-party parity test.

    Sums the weight on the odd-parity eigenvectors of Z (x) Y (x) Z, i.e.
    the product basis states whose eigenvalue product is -1.
    """
    bases = ("Z", "Y", "Z")
    total = 0.0
    for signs in product((1, -1), repeat=3):
        if signs[0] * signs[1] * signs[2] != -1:
            continue
        vec = np.array([1.0 + 0.0j])
        for basis, s in zip(bases, signs):
            vec = np.kron(vec, BASIS_EIGENVECTORS[(basis, s)])
        total += rho.fidelity(vec)
    return min(1.0, max(0.0, total))


def qber_parity_from_expectation(rho: DensityMatrix) -> float:
    """Same parity error via (1 - <Z Y Z>) / 2; a cross-check of qber_parity."""
    return 0.5 * (1.0 - rho.expectation(PARITY_TEST))


def key_rate(yield_per_attempt: float, q_x: float, q_ab: float) -> float:
    """Asymptotic conference key per attempt, clamped at zero.

    r = Y (1 - h(Q_X) - h(Q_AB)); the parity error erodes the secrecy term
    and the bipartite error the correctness term.
    """
    if not 0.0 <= yield_per_attempt <= 1.0:
        raise ValueError(f"yield must be in [0, 1], got {yield_per_attempt}")
    r = yield_per_attempt * (1.0 - binary_entropy(q_x) - binary_entropy(q_ab))
    return max(0.0, r)


def report_for_outcome(
    outcome: ProtocolOutcome, cfg: TrioConfig, label: str = "CKA"
) -> RateReport:
    """Rates of an already-run pipeline under the segment's link budget."""
    y = yield_with_memory(cfg) if outcome.used_memory else yield_memoryless(cfg)
    q_x = qber_parity(outcome.rho_out)
    q_ab = qber_bipartite(outcome.rho_out)
    r = key_rate(y, q_x, q_ab)
    return RateReport(
        protocol_label=label,
        yield_per_attempt=y,
        fidelity=outcome.fidelity,
        q_x=q_x,
        q_ab=q_ab,
        r_per_attempt=r,
        r_per_second=r * cfg.source.frequency,
    )


def full_report(
    cfg: TrioConfig,
    noise: NoiseParams = NoiseParams(),
    *,
    use_memory: bool = False,
    outcome: int = +1,
    label: str = "CKA",
) -> RateReport:
    """Run the pipeline on ``cfg`` and summarize yield, errors, and rates."""
    run = run_pipeline(cfg, noise, use_memory=use_memory, outcome=outcome)
    return report_for_outcome(run, cfg, label=label)
