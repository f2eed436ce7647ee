"""The three-party extraction pipeline.

Station B holds one entangled pair shared with A (qubits 0, 1) and one
shared with C (qubits 2, 3); qubits 0 and 3 fly outward while 1 and 2 stay
at B.  Merging is a CZ between B's two qubits followed by a Y measurement
of qubit 2, which leaves a three-qubit state on (0, 1, 3) that is locally
equivalent to GHZ.  Noise enters as depolarization of the transit qubits,
dephasing of the stored qubits (memory operation), a noisy merge gate, and
dark-count depolarization of every qubit whose detector fired.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import BASIS_EIGENVECTORS, DensityMatrix, PauliString, PureState
from .netmodel import (
    TrioConfig,
    click_prob,
    dark_count_depolarization,
    dephasing_prob,
    detection_prob,
    expected_coherence_near,
    storage_times,
)

MEASURED_QUBIT = 2  # B's C-side qubit, measured in Y to complete the merge

STABILIZER_FACTORS = ("XZI", "XIY", "YXZ", "YYX", "ZXX", "ZYZ", "IZY", "III")

# Signs making each string a +1 stabilizer of target_state(outcome).  The
# four strings with a Y or Z acting on qubit 0 together with support on
# qubit 3 pick up the measurement outcome; the rest are outcome-blind.
_STABILIZER_SIGNS = {
    +1: (1, 1, -1, 1, 1, 1, 1, 1),
    -1: (1, -1, 1, 1, 1, -1, -1, 1),
}


@dataclass(frozen=True)
class NoiseParams:
    """Adjustable noise knobs of one pipeline run.

    channel_depol is the depolarization strength applied to each transit
    qubit; gate_fail is the failure probability of the merge CZ.
    """

    channel_depol: float = 0.0
    gate_fail: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.channel_depol <= 1.0:
            raise ValueError(
                f"channel_depol must be in [0, 1], got {self.channel_depol}"
            )
        if not 0.0 <= self.gate_fail <= 1.0:
            raise ValueError(f"gate_fail must be in [0, 1], got {self.gate_fail}")


@dataclass(frozen=True, eq=False)
class ProtocolOutcome:
    """Result of one pipeline run, conditioned on the selected Y outcome."""

    rho_out: DensityMatrix  # three-qubit state on (0, 1, 3)
    outcome: int  # +1 or -1
    outcome_prob: float  # probability of that Y outcome
    fidelity: float  # overlap with target_state(outcome)
    stabilizer_expectations: tuple[tuple[PauliString, float], ...]
    used_memory: bool


def _kron3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.kron(np.kron(a, b), c)


def source_pair_state() -> DensityMatrix:
    """The two-qubit state each source emits: CZ applied to |+>|+>."""
    plus = BASIS_EIGENVECTORS[("X", +1)]
    pair = DensityMatrix.from_pure(np.kron(plus, plus))
    return pair.apply_cz(0, 1)


def target_state(outcome: int = +1) -> PureState:
    """Ideal post-merge state on qubits (0, 1, 3) for the given Y outcome.

    Written in the bases that diagonalize the dealer's stabilizer test:
    X on qubit 0, Z on qubit 1, Y on qubit 3.  The -1 state is the complex
    conjugate of the +1 state, as it must be for a Y outcome flip.
    """
    _check_outcome(outcome)
    plus = BASIS_EIGENVECTORS[("X", +1)]
    minus = BASIS_EIGENVECTORS[("X", -1)]
    ket0 = BASIS_EIGENVECTORS[("Z", +1)]
    ket1 = BASIS_EIGENVECTORS[("Z", -1)]
    y_pos = BASIS_EIGENVECTORS[("Y", +1)]
    y_neg = BASIS_EIGENVECTORS[("Y", -1)]
    if outcome == +1:
        vec = 0.5 * (
            (1.0 - 1.0j) * _kron3(plus, ket0, y_pos)
            + (1.0 + 1.0j) * _kron3(minus, ket1, y_neg)
        )
    else:
        vec = 0.5 * (
            (1.0 + 1.0j) * _kron3(plus, ket0, y_neg)
            + (1.0 - 1.0j) * _kron3(minus, ket1, y_pos)
        )
    return PureState(vec)


def stabilizer_suite(outcome: int = +1) -> tuple[PauliString, ...]:
    """Eight signed Pauli strings with expectation +1 on target_state(outcome).

    The signed non-identity strings multiply out to the identity, so they
    form (with signs absorbed) the full stabilizer group of the state.
    """
    _check_outcome(outcome)
    signs = _STABILIZER_SIGNS[outcome]
    return tuple(
        PauliString(f, s) for f, s in zip(STABILIZER_FACTORS, signs)
    )


def _check_outcome(outcome: int) -> None:
    if outcome not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome!r}")


def run_pipeline(
    cfg: TrioConfig,
    noise: NoiseParams = NoiseParams(),
    *,
    use_memory: bool = False,
    outcome: int = +1,
) -> ProtocolOutcome:
    """Run one merge attempt and return the conditional three-qubit state.

    Steps, in order: prepare both source pairs; depolarize the transit
    qubits (0 and 3) with noise.channel_depol; if use_memory, dephase B's
    stored qubits by their expected storage decoherence; apply the noisy
    merge CZ between qubits 1 and 2; depolarize every qubit by its
    dark-count junk fraction; measure qubit 2 in Y and keep ``outcome``.
    """
    _check_outcome(outcome)
    if use_memory and cfg.memory is None:
        raise ValueError(f"segment {cfg.name} has no memory parameters")

    rho = source_pair_state().tensor(source_pair_state())
    rho = rho.depolarize(0, noise.channel_depol)
    rho = rho.depolarize(3, noise.channel_depol)

    if use_memory:
        times = storage_times(cfg)
        # Far-side memory only waits out its own confirmation signal; the
        # near-side one also idles through the attempt-count gap, which is
        # folded in as the expected coherence factor.
        lam_near = 0.5 * (1.0 - expected_coherence_near(cfg))
        lam_far = dephasing_prob(times.t_far, cfg.memory.t2)
        near_qubit, far_qubit = (2, 1) if times.far_node == "A" else (1, 2)
        rho = rho.dephase(near_qubit, lam_near)
        rho = rho.dephase(far_qubit, lam_far)

    rho = rho.noisy_cz(1, 2, noise.gate_fail)

    for qubit, node in ((0, "A"), (1, "B"), (2, "B"), (3, "C")):
        node_params = {"A": cfg.node_a, "B": cfg.node_b, "C": cfg.node_c}[node]
        xi = detection_prob(cfg, node, with_memory=use_memory and node == "B")
        xi_click = click_prob(xi, node_params.dark_count_prob)
        alpha = dark_count_depolarization(xi, xi_click, node_params.dark_count_prob)
        rho = rho.depolarize(qubit, alpha)

    prob, rho_out = rho.measure(MEASURED_QUBIT, "Y", outcome)
    fid = rho_out.fidelity(target_state(outcome))
    return ProtocolOutcome(
        rho_out=rho_out,
        outcome=outcome,
        outcome_prob=prob,
        fidelity=fid,
        stabilizer_expectations=tuple(
            (p, rho_out.expectation(p)) for p in stabilizer_suite(outcome)
        ),
        used_memory=use_memory,
    )
