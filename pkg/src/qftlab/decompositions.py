"""Toffoli decomposition passes.

Two ways to realise a Toffoli on qubits ``c0, c1 → t``:

* :func:`decompose_toffoli_clifford_t`: the standard Clifford+T network (T-count 7,
  six CNOTs, two Hadamards).
* :func:`decompose_toffoli_qutrit`: three generalized ternary CNOTs that borrow level
  |2⟩ of ``c1`` instead of an ancilla.
"""

from typing import Sequence

import numpy as np

from qftlab.circuit import Circuit, Control, GateInstance, WireSpec
from qftlab.errors import InvalidWire, RadixMismatch
from qftlab.simulator import NORM_TOLERANCE, extract_unitary, subspace_indices


def _wires(c0: int, c1: int, t: int, radices: Sequence[int]) -> Circuit:
    if len({c0, c1, t}) != 3:
        raise InvalidWire(f"Toffoli wires must be distinct, got {c0}, {c1}, {t}")
    return Circuit(tuple(WireSpec(i, r) for i, r in enumerate(radices)))


def _default_radices(c0: int, c1: int, t: int, qutrit_wire: int = -1) -> list:
    size = max(c0, c1, t) + 1
    return [3 if w == qutrit_wire else 2 for w in range(size)]


def decompose_toffoli_clifford_t(c0: int = 0, c1: int = 1, t: int = 2, radices: Sequence[int] = ()) -> Circuit:
    """Toffoli over Clifford+T on three qubit wires."""
    radices = list(radices) or _default_radices(c0, c1, t)
    base = _wires(c0, c1, t, radices)
    for wire in (c0, c1, t):
        if base.wires[wire].radix != 2:
            raise RadixMismatch(f"Clifford+T Toffoli needs qubit wires; wire {wire} has radix {radices[wire]}")

    def cx(control: int, target: int) -> GateInstance:
        return GateInstance("X", target, (Control(control, 1),))

    gates = [
        GateInstance("H", t),
        cx(c1, t),
        GateInstance("Tdg", t),
        cx(c0, t),
        GateInstance("T", t),
        cx(c1, t),
        GateInstance("Tdg", t),
        cx(c0, t),
        GateInstance("T", c1),
        GateInstance("T", t),
        GateInstance("H", t),
        cx(c0, c1),
        GateInstance("T", c0),
        GateInstance("Tdg", c1),
        cx(c0, c1),
    ]
    return Circuit(base.wires, tuple(gates))


def decompose_toffoli_qutrit(c0: int = 0, c1: int = 1, t: int = 2, radices: Sequence[int] = ()) -> Circuit:
    """Toffoli with ``c1`` as an intermediate qutrit.

    ``c1`` is lifted to |2⟩ only when both controls are |1⟩, the target flips on
    ``c1 = |2⟩``, and the lift is undone.
    """
    radices = list(radices) or _default_radices(c0, c1, t, qutrit_wire=c1)
    base = _wires(c0, c1, t, radices)
    expected = {c0: 2, c1: 3, t: 2}
    for wire, radix in expected.items():
        if base.wires[wire].radix != radix:
            raise RadixMismatch(f"Qutrit Toffoli needs wire {wire} with radix {radix}, got {base.wires[wire].radix}")
    gates = (
        GateInstance("X1", c1, (Control(c0, 1),)),
        GateInstance("X", t, (Control(c1, 2),)),
        GateInstance("X2", c1, (Control(c0, 1),)),
    )
    return Circuit(base.wires, gates)


def toffoli_matrix() -> np.ndarray:
    """The 8×8 Toffoli permutation on qubits (c0, c1, t), c0 most significant."""
    matrix = np.eye(8, dtype=complex)
    matrix[[6, 7]] = matrix[[7, 6]]
    return matrix


def qubit_subspace_unitary(circuit: Circuit) -> np.ndarray:
    """Block of the circuit unitary acting on inputs and outputs with every digit in {0, 1}."""
    indices = subspace_indices(circuit.radices, [[0, 1]] * len(circuit.wires))
    return extract_unitary(circuit)[np.ix_(indices, indices)]


def matches_toffoli(circuit: Circuit, tol: float = NORM_TOLERANCE) -> bool:
    """True iff a three-wire circuit acts as Toffoli on the qubit subspace, up to global phase.

    The block must be unitary by itself, so no amplitude may be left on a level-2 digit.
    """
    if len(circuit.wires) != 3:
        raise InvalidWire(f"Toffoli comparison needs three wires, got {len(circuit.wires)}")
    block = qubit_subspace_unitary(circuit)
    expected = toffoli_matrix()
    pivot = np.argmax(np.abs(block[:, 0]))
    if abs(expected[pivot, 0]) < 0.5:
        return False
    phase = block[pivot, 0] / expected[pivot, 0]
    if abs(abs(phase) - 1) > tol:
        return False
    return bool(np.max(np.abs(block - phase * expected)) <= tol)
