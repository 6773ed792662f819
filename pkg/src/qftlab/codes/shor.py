"""Shor codes: the 3-wire phase block and the full 9-wire code built from three blocks.

Ternary blocks follow block_j = (1/√3)·Σ_m ω^(j·m)|mmm⟩, which gives the binary
|000⟩ ± |111⟩ pair at radix 2.
"""

from .base import StabilizerCode, pauli


def _block_z_checks(radix: int, offset: int, n: int):
    z_pair = ("Z", "Z") if radix == 2 else ("Z1", "Z2")
    checks = []
    for first in (offset, offset + 1):
        string = ["I"] * n
        string[first], string[first + 1] = z_pair
        checks.append(tuple(string))
    return checks


def shor_block(radix: int) -> StabilizerCode:
    """One 3-wire block of the Shor code."""
    if radix == 2:
        return StabilizerCode(
            name="shor-block-b",
            wire_radix=2,
            n_physical=3,
            generators=tuple(_block_z_checks(2, 0, 3)),
            logical_x=pauli("Z I I"),
            distance=1,
            zero_fixers=(pauli("X X X"),),
        )
    return StabilizerCode(
        name="shor-block-t",
        wire_radix=3,
        n_physical=3,
        generators=tuple(_block_z_checks(3, 0, 3)),
        logical_x=pauli("Z1 I I"),
        distance=1,
        zero_fixers=(pauli("X1 X1 X1"),),
    )


def shor_code(radix: int) -> StabilizerCode:
    """The 9-wire Shor code as three tensor blocks tied together by block-parity checks."""
    z_checks = []
    for block in range(3):
        z_checks.extend(_block_z_checks(radix, 3 * block, 9))
    if radix == 2:
        up, down, phase = "X", "X", "Z"
    else:
        # block_j picks up ω^(−j) under X1^⊗3 and ω^(+j) under X2^⊗3, so pairs must mix them.
        up, down, phase = "X1", "X2", "Z1"
    x_checks = [
        (up,) * 3 + (down,) * 3 + ("I",) * 3,
        ("I",) * 3 + (up,) * 3 + (down,) * 3,
    ]
    logical_x = (phase, "I", "I") * 3
    return StabilizerCode(
        name="shor9-b" if radix == 2 else "shor9-t",
        wire_radix=radix,
        n_physical=9,
        generators=tuple(z_checks) + tuple(x_checks),
        logical_x=logical_x,
        distance=3,
        zero_fixers=((up,) * 3 + ("I",) * 6,),
    )
