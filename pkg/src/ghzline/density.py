"""Dense density-matrix engine for registers of up to four qubits.

States are explicit 2^n x 2^n complex matrices, so every gate, noise
channel, and measurement is applied exactly (no sampling, no truncation).
Qubit 0 is the most significant bit of a computational-basis index; a
product register is laid out as ``kron(q0, q1, ..., q_{n-1})``.

Three channel families cover everything the extraction pipeline needs:

* ``depolarize`` replaces one qubit by the maximally mixed state with some
  probability (fiber transit noise, dark-count noise),
* ``dephase`` applies a Z flip with some probability (memory storage),
* ``noisy_cz`` is a CZ gate that fails outright with some probability,
  dumping both participating qubits into the maximally mixed state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 4

# Numerical tolerances.  State invariants (trace, Hermiticity) are held
# tighter than derived scalars, which accumulate error over a pipeline.
TRACE_TOL = 1e-12
HERMITICITY_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10
UNITARITY_TOL = 1e-10
ZERO_PROB_TOL = 1e-12

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

# +1 / -1 eigenvectors of the three single-qubit measurement bases.
BASIS_EIGENVECTORS = {
    ("Z", +1): np.array([1.0, 0.0], dtype=complex),
    ("Z", -1): np.array([0.0, 1.0], dtype=complex),
    ("X", +1): np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0),
    ("X", -1): np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0),
    ("Y", +1): np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0),
    ("Y", -1): np.array([1.0, -1.0j], dtype=complex) / np.sqrt(2.0),
}


class ZeroProbabilityError(ValueError):
    """Raised when a measurement branch has numerically zero probability."""


def _qubit_count(dim: int, *, allow_scalar: bool = False) -> int:
    """Number of qubits for a Hilbert-space dimension, or raise ValueError."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim or n > MAX_QUBITS:
        raise ValueError(f"dimension {dim} is not 2**n with n <= {MAX_QUBITS}")
    if n == 0 and not allow_scalar:
        raise ValueError("dimension 1 (zero qubits) is not a valid state size here")
    return n


@dataclass(frozen=True)
class PauliString:
    """Signed tensor product of single-qubit Paulis, e.g. -X(0) Z(1) I(2).

    ``factors`` holds one letter per qubit, most significant qubit first,
    so ``PauliString("ZYZ")`` is Z on qubit 0, Y on qubit 1, Z on qubit 2.
    """

    factors: str
    sign: int = 1

    def __post_init__(self) -> None:
        if not self.factors or any(c not in PAULI for c in self.factors):
            raise ValueError(
                f"factors must be a nonempty string over IXYZ, got {self.factors!r}"
            )
        if len(self.factors) > MAX_QUBITS:
            raise ValueError(f"at most {MAX_QUBITS} qubits, got {len(self.factors)}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    @property
    def num_qubits(self) -> int:
        return len(self.factors)

    def matrix(self) -> np.ndarray:
        out = np.array([[complex(self.sign)]])
        for c in self.factors:
            out = np.kron(out, PAULI[c])
        return out


class PureState:
    """Normalized state vector over one to four qubits.

    The input is renormalized on construction; a (numerically) zero vector
    is rejected.  Amplitudes are stored read-only.
    """

    def __init__(self, amplitudes) -> None:
        vec = np.asarray(amplitudes, dtype=complex).reshape(-1)
        self.num_qubits = _qubit_count(vec.size)
        norm = float(np.linalg.norm(vec))
        if norm < 1e-12:
            raise ValueError("cannot normalize a zero state vector")
        vec = vec / norm
        vec.flags.writeable = False
        self.amplitudes = vec

    @property
    def dim(self) -> int:
        return self.amplitudes.size


def _as_amplitudes(state, dim: int) -> np.ndarray:
    """Normalized amplitude vector from a PureState or raw array, checked to length dim."""
    if not isinstance(state, PureState):
        state = PureState(state)
    if state.dim != dim:
        raise ValueError(f"state has dimension {state.dim}, expected {dim}")
    return state.amplitudes


def _permute_qubits(data: np.ndarray, order: list[int]) -> np.ndarray:
    """Rearrange register slots so the qubit at slot s (holding original
    index order[s]) returns to slot order[s]."""
    n = len(order)
    axes = [order.index(j) for j in range(n)]
    t = data.reshape((2,) * (2 * n))
    t = t.transpose(axes + [a + n for a in axes])
    return np.ascontiguousarray(t).reshape(2**n, 2**n)


class DensityMatrix:
    """Mixed state of ``num_qubits`` qubits as a dense complex matrix.

    Instances are immutable: every channel or measurement returns a new
    object and the underlying array is read-only.  A zero-qubit (1 x 1)
    matrix is allowed as the residue of measuring out a lone qubit.
    """

    def __init__(self, data, *, _copy: bool = True) -> None:
        mat = np.array(data, dtype=complex, copy=_copy)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        self.num_qubits = _qubit_count(mat.shape[0], allow_scalar=True)
        mat.flags.writeable = False
        self.data = mat

    @classmethod
    def from_pure(cls, state) -> "DensityMatrix":
        """Rank-1 projector |psi><psi| from a PureState or raw amplitudes."""
        v = state.amplitudes if isinstance(state, PureState) else PureState(state).amplitudes
        return cls(np.outer(v, v.conj()), _copy=False)

    @classmethod
    def maximally_mixed(cls, num_qubits: int) -> "DensityMatrix":
        """Identity / 2^n."""
        if not 1 <= num_qubits <= MAX_QUBITS:
            raise ValueError(f"num_qubits must be 1..{MAX_QUBITS}, got {num_qubits}")
        dim = 2**num_qubits
        return cls(np.eye(dim, dtype=complex) / dim, _copy=False)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def trace(self) -> float:
        return float(np.real(np.trace(self.data)))

    def validate(self) -> None:
        """Raise ValueError unless trace, Hermiticity, and positivity hold."""
        tr = complex(np.trace(self.data))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace deviates from 1 by {abs(tr - 1.0):.3e}")
        herm = float(np.max(np.abs(self.data - self.data.conj().T))) if self.dim > 1 else abs(
            self.data[0, 0].imag
        )
        if herm > HERMITICITY_TOL:
            raise ValueError(f"Hermiticity violated by {herm:.3e}")
        lo = float(np.linalg.eigvalsh(self.data).min())
        if lo < EIGENVALUE_FLOOR:
            raise ValueError(f"negative eigenvalue {lo:.3e}")

    def _check_qubit(self, qubit: int) -> None:
        if not 0 <= qubit < self.num_qubits:
            raise ValueError(
                f"qubit index {qubit} out of range for {self.num_qubits} qubits"
            )

    def _embed_single(self, op: np.ndarray, qubit: int) -> np.ndarray:
        left = np.eye(2**qubit, dtype=complex)
        right = np.eye(2 ** (self.num_qubits - 1 - qubit), dtype=complex)
        return np.kron(np.kron(left, op), right)

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        """Tensor product self (x) other; self's qubits come first."""
        if self.num_qubits + other.num_qubits > MAX_QUBITS:
            raise ValueError("tensor product exceeds the four-qubit register limit")
        return DensityMatrix(np.kron(self.data, other.data), _copy=False)

    def apply_unitary(self, qubit: int, unitary) -> "DensityMatrix":
        """Conjugate by a single-qubit unitary acting on ``qubit``."""
        self._check_qubit(qubit)
        u = np.asarray(unitary, dtype=complex)
        if u.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {u.shape}")
        if float(np.max(np.abs(u.conj().T @ u - np.eye(2)))) > UNITARITY_TOL:
            raise ValueError("matrix is not unitary")
        full = self._embed_single(u, qubit)
        return DensityMatrix(full @ self.data @ full.conj().T, _copy=False)

    def _cz_signs(self, q1: int, q2: int) -> np.ndarray:
        idx = np.arange(self.dim)
        b1 = (idx >> (self.num_qubits - 1 - q1)) & 1
        b2 = (idx >> (self.num_qubits - 1 - q2)) & 1
        return 1.0 - 2.0 * (b1 & b2)

    def apply_cz(self, q1: int, q2: int) -> "DensityMatrix":
        """Controlled-Z between two distinct qubits (symmetric in its arguments)."""
        self._check_qubit(q1)
        self._check_qubit(q2)
        if q1 == q2:
            raise ValueError("CZ needs two distinct qubits")
        signs = self._cz_signs(q1, q2)
        return DensityMatrix(self.data * np.outer(signs, signs), _copy=False)

    def depolarize(self, qubit: int, strength: float) -> "DensityMatrix":
        """Replace ``qubit`` by the maximally mixed state with probability ``strength``.

        The map (1-a) rho + a Tr_q(rho) (x) I/2 equals the uniform Pauli
        twirl (1-a) rho + (a/4) sum_P P rho P, which is how it is applied.
        """
        self._check_qubit(qubit)
        if not 0.0 <= strength <= 1.0:
            raise ValueError(f"depolarize strength must be in [0, 1], got {strength}")
        twirled = np.zeros_like(self.data)
        for p in PAULI.values():
            full = self._embed_single(p, qubit)
            twirled += full @ self.data @ full.conj().T
        out = (1.0 - strength) * self.data + (strength / 4.0) * twirled
        return DensityMatrix(out, _copy=False)

    def dephase(self, qubit: int, strength: float) -> "DensityMatrix":
        """Apply a Z flip on ``qubit`` with probability ``strength`` in [0, 0.5].

        0.5 erases all coherence with the rest of the register; values above
        0.5 would overshoot into a net phase flip and are rejected.
        """
        self._check_qubit(qubit)
        if not 0.0 <= strength <= 0.5:
            raise ValueError(f"dephase strength must be in [0, 0.5], got {strength}")
        z = self._embed_single(PAULI["Z"], qubit)
        out = (1.0 - strength) * self.data + strength * (z @ self.data @ z)
        return DensityMatrix(out, _copy=False)

    def _replace_with_mixed(self, qubits: tuple[int, ...]) -> np.ndarray:
        """Tr_qubits(rho) (x) I/2^k, with the mixed factors back in place."""
        removed = sorted(qubits)
        if len(removed) == self.num_qubits:
            return self.trace() * np.eye(self.dim, dtype=complex) / self.dim
        reduced = self.partial_trace(list(removed))
        k = len(removed)
        grown = np.kron(reduced.data, np.eye(2**k, dtype=complex) / 2**k)
        remaining = [q for q in range(self.num_qubits) if q not in removed]
        return _permute_qubits(grown, remaining + removed)

    def noisy_cz(self, q1: int, q2: int, fail_prob: float) -> "DensityMatrix":
        """CZ that with probability ``fail_prob`` scrambles both qubits instead.

        The failure branch traces out q1 and q2 and reinserts them maximally
        mixed, so a fully failed gate carries no correlation at all.
        """
        self._check_qubit(q1)
        self._check_qubit(q2)
        if q1 == q2:
            raise ValueError("CZ needs two distinct qubits")
        if not 0.0 <= fail_prob <= 1.0:
            raise ValueError(f"fail_prob must be in [0, 1], got {fail_prob}")
        ideal = self.apply_cz(q1, q2).data
        if fail_prob == 0.0:
            return DensityMatrix(ideal, _copy=False)
        scrambled = self._replace_with_mixed((q1, q2))
        out = (1.0 - fail_prob) * ideal + fail_prob * scrambled
        return DensityMatrix(out, _copy=False)

    def partial_trace(self, qubits: list[int]) -> "DensityMatrix":
        """Trace out the listed qubits; the rest keep their relative order."""
        removed = sorted(set(qubits))
        if len(removed) != len(qubits):
            raise ValueError("qubits to trace out must be distinct")
        for q in removed:
            self._check_qubit(q)
        if len(removed) == self.num_qubits:
            raise ValueError("cannot trace out every qubit")
        t = self.data.reshape((2,) * (2 * self.num_qubits))
        m = self.num_qubits
        for q in reversed(removed):
            t = np.trace(t, axis1=q, axis2=q + m)
            m -= 1
        return DensityMatrix(t.reshape(2**m, 2**m), _copy=False)

    def measure(self, qubit: int, basis: str, outcome: int) -> tuple[float, "DensityMatrix"]:
        """Project ``qubit`` onto the ``outcome`` eigenvector of ``basis``.

        Returns (probability, post-measurement state); the measured qubit is
        removed from the register.  A branch with probability below
        ZERO_PROB_TOL raises ZeroProbabilityError instead of renormalizing
        numerical noise.
        """
        self._check_qubit(qubit)
        if basis not in ("X", "Y", "Z"):
            raise ValueError(f"basis must be one of X, Y, Z, got {basis!r}")
        if outcome not in (1, -1):
            raise ValueError(f"outcome must be +1 or -1, got {outcome!r}")
        e = BASIS_EIGENVECTORS[(basis, outcome)]
        n = self.num_qubits
        t = self.data.reshape((2,) * (2 * n))
        t = np.tensordot(e.conj(), t, axes=([0], [qubit]))
        t = np.tensordot(t, e, axes=([n - 1 + qubit], [0]))
        mat = t.reshape(2 ** (n - 1), 2 ** (n - 1))
        prob = float(np.real(np.trace(mat)))
        if prob < ZERO_PROB_TOL:
            raise ZeroProbabilityError(
                f"outcome {outcome:+d} of a {basis} measurement on qubit {qubit} "
                f"has probability {prob:.3e}"
            )
        return prob, DensityMatrix(mat / prob, _copy=False)

    def expectation(self, pauli: PauliString) -> float:
        """Expectation value Tr(P rho) of a signed Pauli string."""
        if pauli.num_qubits != self.num_qubits:
            raise ValueError(
                f"operator acts on {pauli.num_qubits} qubits, state has {self.num_qubits}"
            )
        val = complex(np.trace(pauli.matrix() @ self.data))
        if abs(val.imag) > 1e-9:
            raise ValueError(f"expectation has imaginary part {val.imag:.3e}")
        return float(val.real)

    def fidelity(self, state) -> float:
        """Overlap <psi| rho |psi> with a pure state."""
        v = _as_amplitudes(state, self.dim)
        return float(np.real(np.vdot(v, self.data @ v)))
