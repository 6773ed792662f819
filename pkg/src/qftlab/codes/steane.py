"""Seven-wire Steane codes.

The X-type checks use the rows of the Hamming parity-check matrix. The ternary Z-type
checks carry Z1/Z2 exponents chosen so every X-row has zero inner product mod 3 with every
Z-row; the binary code uses plain X and Z on the same rows.
"""

from .base import StabilizerCode, pauli

_HAMMING_ROWS = (
    (0, 0, 0, 1, 1, 1, 1),
    (0, 1, 1, 0, 0, 1, 1),
    (1, 0, 1, 0, 1, 0, 1),
)

_TERNARY_Z_CHECKS = (
    pauli("I I I Z1 Z2 Z2 Z1"),
    pauli("I Z1 Z2 I I Z2 Z1"),
    pauli("Z1 I Z2 I Z2 I Z1"),
)


def _row_string(row, element: str):
    return tuple(element if bit else "I" for bit in row)


def steane_code(radix: int) -> StabilizerCode:
    """The [[7,1,3]] Steane code over qubits or qutrits."""
    if radix == 2:
        generators = tuple(_row_string(r, "X") for r in _HAMMING_ROWS) + tuple(
            _row_string(r, "Z") for r in _HAMMING_ROWS
        )
        return StabilizerCode(
            name="steane7-b",
            wire_radix=2,
            n_physical=7,
            generators=generators,
            logical_x=("X",) * 7,
            distance=3,
        )
    generators = tuple(_row_string(r, "X1") for r in _HAMMING_ROWS) + _TERNARY_Z_CHECKS
    return StabilizerCode(
        name="steane7-t",
        wire_radix=3,
        n_physical=7,
        generators=generators,
        logical_x=("X1",) * 7,
        distance=3,
    )
