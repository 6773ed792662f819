"""Gate library for mixed-radix wires.

Binary gates act on radix-2 wires, ternary gates on radix-3 wires. Controlled gates are
expressed by attaching ``(wire, level)`` controls to one of these base kinds; the
simulator applies the base matrix on the subspace where every control digit equals its
activation level.
"""

from typing import Dict, Tuple

import numpy as np

from qftlab.errors import RadixMismatch

OMEGA = np.exp(2j * np.pi / 3)

_SQRT2_INV = 1 / np.sqrt(2)
_T_PHASE = np.exp(1j * np.pi / 4)

QUBIT_GATES: Dict[str, np.ndarray] = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "T": np.array([[1, 0], [0, _T_PHASE]], dtype=complex),
    "Tdg": np.array([[1, 0], [0, np.conj(_T_PHASE)]], dtype=complex),
    # S·X: X first, then S. Closes the measurement branch of the T gadget.
    "SX": np.array([[0, 1], [1j, 0]], dtype=complex),
}

# X1|j> = |j+1 mod 3>, the cyclic matrix of the leakage argument; X2 is its inverse.
_X1 = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
_Z1 = np.diag([1, OMEGA, OMEGA**2]).astype(complex)

QUTRIT_GATES: Dict[str, np.ndarray] = {
    "X1": _X1,
    "X2": _X1.T.copy(),
    "Z1": _Z1,
    "Z2": _Z1 @ _Z1,
    "X01": np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex),
}

GATE_KINDS: Tuple[str, ...] = tuple(QUBIT_GATES) + tuple(QUTRIT_GATES)


def radix_of_kind(kind: str) -> int:
    """Return the only wire radix on which ``kind`` is legal."""
    if kind in QUBIT_GATES:
        return 2
    if kind in QUTRIT_GATES:
        return 3
    raise RadixMismatch(f"Unknown gate kind: {kind}. Supported: {', '.join(GATE_KINDS)}")


def gate_matrix(kind: str, radix: int) -> np.ndarray:
    """Return the matrix of ``kind`` after checking it is legal on ``radix``."""
    expected = radix_of_kind(kind)
    if expected != radix:
        raise RadixMismatch(f"Gate {kind} requires a radix-{expected} wire, got radix {radix}")
    table = QUBIT_GATES if radix == 2 else QUTRIT_GATES
    return table[kind]


def check_control_level(level: int, radix: int) -> None:
    """Raise unless ``level`` is a digit of a radix-``radix`` wire."""
    if not 0 <= level < radix:
        raise RadixMismatch(f"Control level {level} is illegal on a radix-{radix} wire")
