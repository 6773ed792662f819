"""Stabilizer code model shared by every concrete code."""

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from qftlab.errors import CodeConstructionError, ShapeError
from qftlab.gates import QUBIT_GATES, QUTRIT_GATES
from qftlab.simulator import PRUNE_THRESHOLD, StateVector, apply_matrix

CODESPACE_TOLERANCE = 1e-9
COMMUTATION_TOLERANCE = 1e-9

PAULI_ELEMENTS: Dict[int, Dict[str, np.ndarray]] = {
    2: {"I": np.eye(2, dtype=complex), "X": QUBIT_GATES["X"], "Z": QUBIT_GATES["Z"]},
    3: {"I": np.eye(3, dtype=complex), **{k: QUTRIT_GATES[k] for k in ("X1", "X2", "Z1", "Z2")}},
}

PauliString = Tuple[str, ...]


def pauli(text: str) -> PauliString:
    """Parse a space-separated Pauli string such as ``"I X1 X1 I"``."""
    return tuple(text.split())


def pauli_matrices(string: PauliString, radix: int) -> Tuple[np.ndarray, ...]:
    """Per-wire matrices of a Pauli string, checked against the code radix."""
    elements = PAULI_ELEMENTS[radix]
    try:
        return tuple(elements[e] for e in string)
    except KeyError as exc:
        raise CodeConstructionError(
            f"Pauli element {exc.args[0]} is not defined for radix {radix}; use one of {', '.join(elements)}"
        ) from exc


def commutator_norm(a: Sequence[np.ndarray], b: Sequence[np.ndarray]) -> float:
    """Frobenius norm of [A, B] for tensor products A = ⊗a_k, B = ⊗b_k, scaled by 1/√dim.

    Uses ‖⊗P_k − ⊗Q_k‖² = ∏‖P_k‖² + ∏‖Q_k‖² − 2·Re ∏tr(P_k†Q_k) so the full
    operators are never formed.
    """
    ab = [x @ y for x, y in zip(a, b)]
    ba = [y @ x for x, y in zip(a, b)]
    norm_ab = reduce(lambda acc, m: acc * np.vdot(m, m).real, ab, 1.0)
    norm_ba = reduce(lambda acc, m: acc * np.vdot(m, m).real, ba, 1.0)
    overlap = reduce(lambda acc, pair: acc * np.vdot(pair[0], pair[1]), zip(ab, ba), 1.0 + 0j)
    dim = reduce(lambda acc, m: acc * m.shape[0], a, 1)
    squared = max(norm_ab + norm_ba - 2 * overlap.real, 0.0)
    return float(np.sqrt(squared / dim))


@dataclass(frozen=True)
class StabilizerCode:
    """A stabilizer code over wires of a single radix.

    ``zero_fixers`` are extra commuting operators whose +1 eigenspace picks |0⟩_L inside
    the codespace; codes whose |0…0⟩ seed already projects onto |0⟩_L leave it empty.
    """

    name: str
    wire_radix: int
    n_physical: int
    generators: Tuple[PauliString, ...]
    logical_x: PauliString
    distance: int
    zero_fixers: Tuple[PauliString, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.wire_radix not in (2, 3):
            raise CodeConstructionError(f"Code {self.name}: radix {self.wire_radix} is not supported")
        for string in self.generators + self.zero_fixers + (self.logical_x,):
            if len(string) != self.n_physical:
                raise CodeConstructionError(
                    f"Code {self.name}: Pauli string {' '.join(string)} has length {len(string)},"
                    f" expected {self.n_physical}"
                )
            pauli_matrices(string, self.wire_radix)
        self._check_commutation()

    @property
    def correctable(self) -> int:
        """t = ⌊d/2⌋."""
        return self.distance // 2

    @property
    def radices(self) -> Tuple[int, ...]:
        return (self.wire_radix,) * self.n_physical

    @property
    def dimension(self) -> int:
        return self.wire_radix**self.n_physical

    def _check_commutation(self) -> None:
        stabilizers = self.generators + self.zero_fixers
        for first, second in combinations(stabilizers, 2):
            norm = commutator_norm(pauli_matrices(first, self.wire_radix), pauli_matrices(second, self.wire_radix))
            if norm > COMMUTATION_TOLERANCE:
                raise CodeConstructionError(
                    f"Code {self.name}: {' '.join(first)} and {' '.join(second)} do not commute "
                    f"(‖[S,S']‖={norm:.3g})"
                )
        logical = pauli_matrices(self.logical_x, self.wire_radix)
        for generator in self.generators:
            if commutator_norm(logical, pauli_matrices(generator, self.wire_radix)) > COMMUTATION_TOLERANCE:
                raise CodeConstructionError(
                    f"Code {self.name}: logical X does not commute with generator {' '.join(generator)}"
                )


def apply_pauli(tensor: np.ndarray, string: PauliString, radix: int, offset: int = 0) -> np.ndarray:
    """Apply a Pauli string to wires ``offset .. offset+len-1`` of ``tensor``."""
    for position, (element, matrix) in enumerate(zip(string, pauli_matrices(string, radix))):
        if element != "I":
            tensor = apply_matrix(tensor, matrix, offset + position)
    return tensor


def project(tensor: np.ndarray, strings: Iterable[PauliString], radix: int, offset: int = 0) -> np.ndarray:
    """Apply ∏ (1/r)·Σ_m S^m over the given commuting strings (the +1 eigenspace projector)."""
    for string in strings:
        total = tensor
        power = tensor
        for _ in range(radix - 1):
            power = apply_pauli(power, string, radix, offset)
            total = total + power
        tensor = total / radix
    return tensor


def _fix_phase(amplitudes: np.ndarray) -> np.ndarray:
    flat = amplitudes.reshape(-1)
    first = flat[np.argmax(np.abs(flat) > PRUNE_THRESHOLD)]
    return amplitudes * (abs(first) / first)


def codeword(code: StabilizerCode, j: int) -> StateVector:
    """Logical basis state |j⟩_L.

    |0⟩_L is the normalized projection of |0…0⟩; |j⟩_L is logical X applied j times, with the
    first nonzero amplitude made real and positive.
    """
    if not 0 <= j < code.wire_radix:
        raise CodeConstructionError(f"Logical digit {j} is out of range for radix {code.wire_radix}")
    seed = np.zeros(code.radices, dtype=complex)
    seed[(0,) * code.n_physical] = 1.0
    tensor = project(seed, code.generators + code.zero_fixers, code.wire_radix)
    norm = np.linalg.norm(tensor)
    if norm < PRUNE_THRESHOLD:
        raise CodeConstructionError(f"Code {code.name}: projector annihilates the |0…0⟩ seed")
    tensor = tensor / norm
    for _ in range(j):
        tensor = apply_pauli(tensor, code.logical_x, code.wire_radix)
    return StateVector(code.radices, _fix_phase(tensor))


def codespace_residual(code: StabilizerCode, tensor: np.ndarray, offset: int = 0) -> float:
    """‖P·ψ − ψ‖ with P the codespace projector acting at ``offset``."""
    projected = project(tensor, code.generators, code.wire_radix, offset)
    return float(np.linalg.norm(projected - tensor))


def in_codespace(code: StabilizerCode, state: StateVector, tol: float = CODESPACE_TOLERANCE) -> bool:
    """True iff ``state`` lies in the simultaneous +1 eigenspace of the generators."""
    if state.radices != code.radices:
        raise ShapeError(f"State radices {list(state.radices)} do not match code {code.name} ({list(code.radices)})")
    return codespace_residual(code, state.tensor) <= tol
