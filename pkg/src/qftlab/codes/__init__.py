"""Stabilizer codes used by the verification experiments."""

from typing import Callable, Dict

from qftlab.errors import CodeConstructionError

from .base import (
    StabilizerCode,
    codespace_residual,
    codeword,
    in_codespace,
    pauli,
)
from .repetition import repetition_code
from .shor import shor_block, shor_code
from .steane import steane_code

CODE_BUILDERS: Dict[str, Callable[[], StabilizerCode]] = {
    "rep3-b": lambda: repetition_code(2),
    "rep3-t": lambda: repetition_code(3),
    "shor-block-b": lambda: shor_block(2),
    "shor-block-t": lambda: shor_block(3),
    "shor9-b": lambda: shor_code(2),
    "shor9-t": lambda: shor_code(3),
    "steane7-b": lambda: steane_code(2),
    "steane7-t": lambda: steane_code(3),
}

CODE_NAMES = tuple(CODE_BUILDERS)


def get_code(name: str) -> StabilizerCode:
    """Build the code registered under ``name``."""
    try:
        builder = CODE_BUILDERS[name]
    except KeyError as exc:
        raise CodeConstructionError(f"Unknown code: {name}. Supported: {', '.join(CODE_NAMES)}") from exc
    return builder()


__all__ = [
    "CODE_NAMES",
    "StabilizerCode",
    "codespace_residual",
    "codeword",
    "get_code",
    "in_codespace",
    "pauli",
    "repetition_code",
    "shor_block",
    "shor_code",
    "steane_code",
]
