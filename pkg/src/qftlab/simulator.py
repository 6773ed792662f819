"""Dense statevector simulation over mixed-radix wires.

Amplitudes are stored flat with wire 0 as the most significant digit. Internally every
operation works on the amplitude tensor of shape ``radices`` (optionally followed by
batch axes, which is how :func:`extract_unitary` pushes all basis columns through a
circuit at once).
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from qftlab.circuit import Circuit, Control
from qftlab.errors import (
    DimensionLimit,
    FactorizationError,
    InvalidBasisState,
    InvalidState,
    InvalidWire,
    ShapeError,
)
from qftlab.gates import check_control_level, gate_matrix

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-9
PRUNE_THRESHOLD = 1e-12
UNITARY_DIMENSION_LIMIT = 2**20


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalized pure state over wires of the given radices."""

    radices: Tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        radices = tuple(int(r) for r in self.radices)
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size != int(np.prod(radices, dtype=np.int64)):
            raise ShapeError(f"{amplitudes.size} amplitudes do not fit radices {list(radices)}")
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise InvalidState(f"State norm is {norm:.12g}, expected 1")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "radices", radices)
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def normalized(cls, radices: Sequence[int], amplitudes: np.ndarray) -> "StateVector":
        """Build a state from unnormalized amplitudes."""
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amplitudes)
        if norm < PRUNE_THRESHOLD:
            raise InvalidState("Cannot normalize a zero vector")
        return cls(tuple(radices), amplitudes / norm)

    @property
    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per wire."""
        return self.amplitudes.reshape(self.radices)

    @property
    def dimension(self) -> int:
        return self.amplitudes.size

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def tensor_with(self, other: "StateVector") -> "StateVector":
        """Return self ⊗ other, with ``other``'s wires appended after ours."""
        return StateVector(self.radices + other.radices, np.kron(self.amplitudes, other.amplitudes))


def basis_index(radices: Sequence[int], digits: Sequence[int]) -> int:
    """Mixed-radix positional index of ``digits`` (wire 0 most significant)."""
    index = 0
    for radix, digit in zip(radices, digits):
        index = index * radix + digit
    return index


def parse_digits(radices: Sequence[int], digits: Union[str, Sequence[int]]) -> List[int]:
    """Validate a basis label such as ``"12"`` against the wire radices."""
    values = [int(d) for d in digits] if not isinstance(digits, str) else []
    if isinstance(digits, str):
        for position, char in enumerate(digits):
            if not char.isdigit():
                raise InvalidBasisState(f"Digit {char!r} at position {position} is not a number")
            values.append(int(char))
    if len(values) != len(radices):
        raise InvalidBasisState(f"Expected {len(radices)} digits, got {len(values)}")
    for wire, (radix, digit) in enumerate(zip(radices, values)):
        if not 0 <= digit < radix:
            raise InvalidBasisState(f"Digit {digit} on wire {wire} is out of range for radix {radix}")
    return values


def init_state(radices: Sequence[int], digits: Union[str, Sequence[int]]) -> StateVector:
    """Return the computational basis state labelled by ``digits``."""
    values = parse_digits(radices, digits)
    amplitudes = np.zeros(int(np.prod(radices, dtype=np.int64)), dtype=complex)
    amplitudes[basis_index(radices, values)] = 1.0
    return StateVector(tuple(radices), amplitudes)


def _as_control(control) -> Control:
    if isinstance(control, Control):
        return control
    wire, level = control
    return Control(int(wire), int(level))


def apply_matrix(
    tensor: np.ndarray, matrix: np.ndarray, target: int, controls: Iterable[Control] = ()
) -> np.ndarray:
    """Apply ``matrix`` to axis ``target`` of ``tensor`` on the subspace selected by ``controls``.

    Axes after the wire axes are treated as batch axes and left alone. Returns a new array.
    """
    controls = list(controls)
    result = np.array(tensor, dtype=complex, copy=True)
    selector: List[Union[int, slice]] = [slice(None)] * result.ndim
    for control in controls:
        selector[control.wire] = control.level
    view = result[tuple(selector)]
    axis = target - sum(1 for c in controls if c.wire < target)
    updated = np.tensordot(matrix, view, axes=([1], [axis]))
    view[...] = np.moveaxis(updated, 0, axis)
    return result


def _check_wire(radices: Sequence[int], wire: int) -> int:
    if not 0 <= wire < len(radices):
        raise InvalidWire(f"Wire {wire} does not exist (state has {len(radices)} wires)")
    return radices[wire]


def apply_gate(
    state: StateVector, kind: str, controls: Sequence[Union[Control, Tuple[int, int]]], target: int
) -> StateVector:
    """Apply gate ``kind`` to ``target``, conditioned on every control wire sitting at its level."""
    radices = state.radices
    matrix = gate_matrix(kind, _check_wire(radices, target))
    resolved = [_as_control(c) for c in controls]
    for control in resolved:
        check_control_level(control.level, _check_wire(radices, control.wire))
        if control.wire == target:
            raise InvalidWire(f"Wire {target} cannot control itself")
    tensor = apply_matrix(state.tensor, matrix, target, resolved)
    return StateVector(radices, tensor)


def _run(circuit: Circuit, tensor: np.ndarray, classical_bits: Mapping[int, int]) -> np.ndarray:
    for gate in circuit.gates:
        if gate.classical is not None and classical_bits.get(gate.classical, 0) != 1:
            continue
        matrix = gate_matrix(gate.kind, circuit.wires[gate.target].radix)
        tensor = apply_matrix(tensor, matrix, gate.target, gate.controls)
    return tensor


def apply_circuit(
    circuit: Circuit, state: StateVector, classical_bits: Optional[Mapping[int, int]] = None
) -> StateVector:
    """Run ``circuit`` on ``state``.

    Gates with a classical condition fire only when ``classical_bits[wire] == 1``; missing
    bits read as 0.
    """
    if tuple(circuit.radices) != state.radices:
        raise ShapeError(f"Circuit radices {circuit.radices} do not match state radices {list(state.radices)}")
    tensor = _run(circuit, state.tensor, classical_bits or {})
    return StateVector(state.radices, tensor)


def extract_unitary(circuit: Circuit, max_dimension: int = UNITARY_DIMENSION_LIMIT) -> np.ndarray:
    """Return the matrix U with U·e_b = circuit applied to basis state b.

    Classically conditioned gates are treated as not firing.
    """
    dim = circuit.dimension
    if dim > max_dimension:
        raise DimensionLimit(f"Circuit dimension {dim} exceeds the limit {max_dimension}")
    radices = circuit.radices
    columns = np.eye(dim, dtype=complex).reshape(radices + [dim])
    return _run(circuit, columns, {}).reshape(dim, dim)


@dataclass(frozen=True)
class Branch:
    """One outcome of a projective measurement."""

    outcome: int
    probability: float
    state: StateVector


def measure_branches(state: StateVector, wire: int) -> List[Branch]:
    """Enumerate every measurement outcome of ``wire`` with its collapsed state.

    Outcomes with probability below 1e-12 are dropped.
    """
    radix = _check_wire(state.radices, wire)
    tensor = state.tensor
    branches = []
    for outcome in range(radix):
        selector: List[Union[int, slice]] = [slice(None)] * tensor.ndim
        keep = np.zeros_like(tensor)
        selector[wire] = outcome
        keep[tuple(selector)] = tensor[tuple(selector)]
        probability = float(np.vdot(keep, keep).real)
        if probability < PRUNE_THRESHOLD:
            continue
        branches.append(Branch(outcome, probability, StateVector.normalized(state.radices, keep)))
    logger.debug("Measured wire %d: %d branch(es)", wire, len(branches))
    return branches


def _raw(value: Union[StateVector, np.ndarray]) -> np.ndarray:
    if isinstance(value, StateVector):
        return value.amplitudes
    return np.asarray(value, dtype=complex)


def equal_up_to_global_phase(
    a: Union[StateVector, np.ndarray], b: Union[StateVector, np.ndarray], tol: float = NORM_TOLERANCE
) -> bool:
    """True iff ‖a − λ·b‖ ≤ tol for the unit-modulus λ fixed by the largest entry of ``b``."""
    left, right = _raw(a), _raw(b)
    if left.shape != right.shape:
        raise ShapeError(f"Shapes {left.shape} and {right.shape} differ")
    pivot = np.unravel_index(np.argmax(np.abs(right)), right.shape)
    if abs(right[pivot]) < PRUNE_THRESHOLD:
        return bool(np.linalg.norm(left) <= tol)
    ratio = left[pivot] / right[pivot]
    phase = ratio / abs(ratio) if abs(ratio) > PRUNE_THRESHOLD else 1.0
    return bool(np.linalg.norm(left - phase * right) <= tol)


def fidelity(a: Union[StateVector, np.ndarray], b: Union[StateVector, np.ndarray]) -> float:
    """|<a|b>|² for two pure states."""
    left, right = _raw(a), _raw(b)
    if left.shape != right.shape:
        raise ShapeError(f"Shapes {left.shape} and {right.shape} differ")
    return float(abs(np.vdot(left, right)) ** 2)


def factor_product(state: StateVector, split: int, tol: float = NORM_TOLERANCE) -> Tuple[StateVector, StateVector]:
    """Split ``state`` into (first ``split`` wires) ⊗ (remaining wires).

    The second factor gets its first nonzero amplitude real and positive; the first factor
    carries the global phase. Raises FactorizationError when the state is entangled.
    """
    left_radices, right_radices = state.radices[:split], state.radices[split:]
    matrix = state.amplitudes.reshape(int(np.prod(left_radices)), int(np.prod(right_radices)))
    _, _, vh = np.linalg.svd(matrix)
    right = vh[0]
    first = right[np.argmax(np.abs(right) > PRUNE_THRESHOLD)]
    right = right * (abs(first) / first)
    left = matrix @ right.conj()
    residual = float(np.linalg.norm(matrix - np.outer(left, right)))
    if residual > tol:
        raise FactorizationError(f"State is not a product across wire {split} (residual {residual:.3g})")
    return StateVector.normalized(left_radices, left), StateVector.normalized(right_radices, right)


def subspace_indices(radices: Sequence[int], allowed: Sequence[Sequence[int]]) -> np.ndarray:
    """Flat indices of basis states whose digit on wire ``i`` lies in ``allowed[i]``."""
    grids = np.meshgrid(*[np.asarray(a) for a in allowed], indexing="ij")
    digits = [g.reshape(-1) for g in grids]
    return np.ravel_multi_index(digits, tuple(radices))
