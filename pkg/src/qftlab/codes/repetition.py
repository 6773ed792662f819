"""Three-wire repetition codes."""

from .base import StabilizerCode, pauli


def repetition_code(radix: int) -> StabilizerCode:
    """|j⟩_L = |jjj⟩ on qubits (radix 2) or qutrits (radix 3)."""
    if radix == 2:
        return StabilizerCode(
            name="rep3-b",
            wire_radix=2,
            n_physical=3,
            generators=(pauli("Z Z I"), pauli("I Z Z")),
            logical_x=pauli("X X X"),
            distance=3,
        )
    # Z1⊗Z2 has eigenvalue ω^(a−b) on |ab⟩, so +1 exactly when neighbouring digits agree.
    return StabilizerCode(
        name="rep3-t",
        wire_radix=3,
        n_physical=3,
        generators=(pauli("Z1 Z2 I"), pauli("I Z1 Z2")),
        logical_x=pauli("X1 X1 X1"),
        distance=3,
    )
