"""Verification experiments on hybrid qubit-qutrit error-correcting codes.

* leakage of a binary-encoded wire that visits |2⟩ (why such wires need a qutrit code)
* the transversal 1-controlled ternary CNOT between Shor blocks (codespace deviation)
* brute-force transversality of a controlled gate between two codes
* the measurement-and-correction T gadget
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from qftlab.circuit import Circuit, Control, GateInstance
from qftlab.codes import StabilizerCode, codespace_residual, codeword, get_code, in_codespace
from qftlab.errors import DimensionLimit, InvalidState, ShapeError, UnknownGateType
from qftlab.gates import QUBIT_GATES, gate_matrix, radix_of_kind
from qftlab.simulator import (
    NORM_TOLERANCE,
    PRUNE_THRESHOLD,
    StateVector,
    apply_circuit,
    basis_index,
    equal_up_to_global_phase,
    factor_product,
    init_state,
    measure_branches,
)

logger = logging.getLogger(__name__)

FIDELITY_TOLERANCE = 1e-9
TRANSVERSAL_DIMENSION_LIMIT = 3**14
PHASE_MODES = ("strict", "per-basis")


@dataclass(frozen=True)
class LeakageResult:
    """Outcome of a single bit flip striking a binary repetition block while it sits in |2⟩."""

    final: StateVector
    leaked: bool
    in_binary_codespace: bool


def leakage_experiment(alpha: complex, beta: complex) -> LeakageResult:
    """Encode α|000⟩+β|111⟩ on qutrits, lift with X1^⊗3, flip wire 0 with X1, lower with X2^⊗3.

    The result is α|100⟩ + β|211⟩: any β ≠ 0 leaves amplitude on a digit 2.
    """
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise InvalidState(f"|α|²+|β|² = {norm:.12g}, expected 1")
    radices = (3, 3, 3)
    amplitudes = np.zeros(27, dtype=complex)
    amplitudes[basis_index(radices, (0, 0, 0))] = alpha
    amplitudes[basis_index(radices, (1, 1, 1))] = beta
    encoded = StateVector(radices, amplitudes)

    gates = [GateInstance("X1", w) for w in range(3)]
    gates.append(GateInstance("X1", 0))
    gates.extend(GateInstance("X2", w) for w in range(3))
    final = apply_circuit(Circuit.from_radices(radices, gates), encoded)

    probabilities = final.probabilities().reshape(radices)
    leaked_weight = float(probabilities.sum() - probabilities[:2, :2, :2].sum())
    code_weight = float(probabilities[0, 0, 0] + probabilities[1, 1, 1])
    return LeakageResult(
        final=final,
        leaked=leaked_weight > PRUNE_THRESHOLD,
        in_binary_codespace=abs(code_weight - 1.0) <= NORM_TOLERANCE,
    )


@dataclass(frozen=True)
class ShorCnotResult:
    """Factored outputs of the transversal CNOT from a binary Shor block onto a ternary one."""

    control_out: StateVector
    target_out: StateVector
    control_in_codespace: bool
    control_in_block_span: bool
    target_unchanged: bool


def shor_cnot_experiment() -> ShorCnotResult:
    """Apply Controlled{1, X1} wire-by-wire from |0⟩_L (binary block) onto |2⟩_L (ternary block).

    The control block comes out as (|000⟩ + ω|111⟩)/√2. That vector still lies in the span
    of the block's own two codewords, so codespace membership is judged on the 9-qubit
    Shor code the block belongs to: every block receives the same phase, giving the control
    state ``control_out^⊗3``, which the block-parity checks reject.
    """
    control_block = get_code("shor-block-b")
    target_block = get_code("shor-block-t")
    control_in = codeword(control_block, 0)
    target_in = codeword(target_block, 2)
    joint = control_in.tensor_with(target_in)

    n = control_block.n_physical
    gates = [GateInstance("X1", n + w, (Control(w, 1),)) for w in range(n)]
    output = apply_circuit(Circuit.from_radices(joint.radices, gates), joint)
    control_out, target_out = factor_product(output, n)

    full_control = control_out.tensor_with(control_out).tensor_with(control_out)
    return ShorCnotResult(
        control_out=control_out,
        target_out=target_out,
        control_in_codespace=in_codespace(get_code("shor9-b"), full_control),
        control_in_block_span=in_codespace(control_block, control_out),
        target_unchanged=equal_up_to_global_phase(target_out, target_in),
    )


def controlled_gate_for(label: str, target_radix: int) -> Tuple[str, int]:
    """Resolve a two-wire census label to (base kind on the target, control level)."""
    if label == "CNOT":
        return "X", 1
    if label == "c1-ternary-cnot":
        return ("X1" if target_radix == 3 else "X"), 1
    if label == "c2-ternary-cnot":
        # On a qutrit target the 2-controlled gate swaps |0⟩,|1⟩ and leaves |2⟩ alone.
        return ("X01" if target_radix == 3 else "X"), 2
    raise UnknownGateType(f"Unknown two-wire gate: {label}. Supported: CNOT, c1-ternary-cnot, c2-ternary-cnot")


def _digit_map(kind: str, radix: int) -> List[int]:
    matrix = gate_matrix(kind, radix)
    return [int(np.argmax(np.abs(matrix[:, j]))) for j in range(radix)]


@dataclass
class BasisOutcome:
    """Result for one logical basis input |i⟩_L|j⟩_L."""

    inputs: Tuple[int, int]
    fidelity: float
    reversed_fidelity: Optional[float]
    in_codespace: bool
    overlap: complex = 0j
    reversed_overlap: Optional[complex] = None


@dataclass
class TransversalReport:
    """Verdict of applying a physical two-wire gate across every aligned pair of two code blocks."""

    ctrl_code: str
    tgt_code: str
    physical_gate: str
    expected_gate: str
    phase_mode: str
    logical_action_matches: bool
    reversed_action_matches: Optional[bool]
    stays_in_codespace: bool
    outcomes: List[BasisOutcome] = field(default_factory=list)

    @property
    def fidelities(self) -> List[float]:
        return [o.fidelity for o in self.outcomes]

    @property
    def worst_fidelity(self) -> float:
        return min(self.fidelities, default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready view of the report."""
        return {
            "ctrl": self.ctrl_code,
            "tgt": self.tgt_code,
            "gate": self.physical_gate,
            "expect": self.expected_gate,
            "phase_mode": self.phase_mode,
            "logical_action_matches": self.logical_action_matches,
            "reversed_action_matches": self.reversed_action_matches,
            "stays_in_codespace": self.stays_in_codespace,
            "worst_fidelity": self.worst_fidelity,
            "fidelities": [
                {
                    "input": list(o.inputs),
                    "fidelity": o.fidelity,
                    "reversed_fidelity": o.reversed_fidelity,
                    "in_codespace": o.in_codespace,
                }
                for o in self.outcomes
            ],
        }


def _verdict(overlaps: List[complex], phase_mode: str) -> bool:
    if any(abs(o) ** 2 < 1 - FIDELITY_TOLERANCE for o in overlaps):
        return False
    if phase_mode == "per-basis":
        return True
    reference = overlaps[0]
    return all(abs(o - reference) <= np.sqrt(FIDELITY_TOLERANCE) for o in overlaps)


def transversal_check(
    ctrl_code: StabilizerCode,
    tgt_code: StabilizerCode,
    physical_gate: str,
    expected_logical_gate: str,
    phase_mode: str = "strict",
    max_dimension: int = TRANSVERSAL_DIMENSION_LIMIT,
) -> TransversalReport:
    """Apply ``physical_gate`` on each aligned (control wire, target wire) pair and compare.

    Every logical basis product |i⟩_L|j⟩_L is pushed through the transversal circuit. The
    image is compared with the expected logical gate in both orientations: the control
    block driving the target block, and the reversed reading where the target block acts
    as logical control. ``phase_mode`` "strict" demands one common phase over all inputs.
    """
    if phase_mode not in PHASE_MODES:
        raise ValueError(f"Unknown phase mode: {phase_mode}. Supported: {', '.join(PHASE_MODES)}")
    if ctrl_code.n_physical != tgt_code.n_physical:
        raise ShapeError(
            f"Codes {ctrl_code.name} and {tgt_code.name} have {ctrl_code.n_physical} and"
            f" {tgt_code.n_physical} wires; transversal gates need equal block sizes"
        )
    dimension = ctrl_code.dimension * tgt_code.dimension
    if dimension > max_dimension:
        raise DimensionLimit(f"Joint dimension {dimension} exceeds the limit {max_dimension}")

    n = ctrl_code.n_physical
    r_ctrl, r_tgt = ctrl_code.wire_radix, tgt_code.wire_radix
    kind, level = controlled_gate_for(physical_gate, r_tgt)
    gates = [GateInstance(kind, n + w, (Control(w, level),)) for w in range(n)]
    circuit = Circuit.from_radices(ctrl_code.radices + tgt_code.radices, gates)

    expected_kind, expected_level = controlled_gate_for(expected_logical_gate, r_tgt)
    forward = _digit_map(expected_kind, r_tgt)
    # Reversed reading: the target block controls and the control block is shifted.
    reversed_kind, reversed_level = controlled_gate_for(expected_logical_gate, r_ctrl)
    backward = None
    if reversed_level < r_tgt and radix_of_kind(reversed_kind) == r_ctrl:
        backward = _digit_map(reversed_kind, r_ctrl)

    ctrl_words = [codeword(ctrl_code, i) for i in range(r_ctrl)]
    tgt_words = [codeword(tgt_code, j) for j in range(r_tgt)]

    outcomes: List[BasisOutcome] = []
    for i, ctrl_word in enumerate(ctrl_words):
        for j, tgt_word in enumerate(tgt_words):
            output = apply_circuit(circuit, ctrl_word.tensor_with(tgt_word)).amplitudes
            j_out = forward[j] if i == expected_level else j
            overlap = complex(np.vdot(ctrl_word.tensor_with(tgt_words[j_out]).amplitudes, output))
            reversed_overlap = None
            if backward is not None:
                i_out = backward[i] if j == reversed_level else i
                reversed_overlap = complex(np.vdot(ctrl_words[i_out].tensor_with(tgt_word).amplitudes, output))
            tensor = output.reshape(circuit.radices)
            residual = codespace_residual(ctrl_code, tensor) + codespace_residual(tgt_code, tensor, offset=n)
            outcomes.append(
                BasisOutcome(
                    inputs=(i, j),
                    fidelity=abs(overlap) ** 2,
                    reversed_fidelity=None if reversed_overlap is None else abs(reversed_overlap) ** 2,
                    in_codespace=residual <= NORM_TOLERANCE,
                    overlap=overlap,
                    reversed_overlap=reversed_overlap,
                )
            )
            logger.debug(
                "%s→%s |%d,%d⟩: fidelity %.12f, residual %.3g", ctrl_code.name, tgt_code.name, i, j,
                abs(overlap) ** 2, residual,
            )

    reversed_matches = None
    if backward is not None:
        reversed_matches = _verdict([o.reversed_overlap for o in outcomes], phase_mode)
    return TransversalReport(
        ctrl_code=ctrl_code.name,
        tgt_code=tgt_code.name,
        physical_gate=physical_gate,
        expected_gate=expected_logical_gate,
        phase_mode=phase_mode,
        logical_action_matches=_verdict([o.overlap for o in outcomes], phase_mode),
        reversed_action_matches=reversed_matches,
        stays_in_codespace=all(o.in_codespace for o in outcomes),
        outcomes=outcomes,
    )


@dataclass(frozen=True)
class GadgetBranch:
    """One measurement branch of the T gadget."""

    outcome: int
    probability: float
    output: StateVector
    matches: bool


def t_gadget_branches(psi: StateVector) -> List[GadgetBranch]:
    """Run the T gadget on ``psi`` and return every measurement branch.

    Wire 0 is the ancilla (|0⟩, H, T), wire 1 carries ψ. After the ancilla-controlled CNOT
    onto ψ's wire that wire is measured; on outcome 1 the ancilla receives SX. The ancilla
    ends in T|ψ⟩ up to a global phase.
    """
    if psi.radices != (2,):
        raise ShapeError(f"The T gadget takes a single qubit, got radices {list(psi.radices)}")
    start = init_state((2,), "0").tensor_with(psi)
    prepare = Circuit.from_radices(
        (2, 2),
        (GateInstance("H", 0), GateInstance("T", 0), GateInstance("X", 1, (Control(0, 1),))),
    )
    correct = Circuit.from_radices((2, 2), (GateInstance("SX", 0, classical=1),))
    expected = StateVector((2,), QUBIT_GATES["T"] @ psi.amplitudes)

    branches = []
    for branch in measure_branches(apply_circuit(prepare, start), wire=1):
        corrected = apply_circuit(correct, branch.state, {1: branch.outcome})
        ancilla = StateVector.normalized((2,), corrected.tensor[:, branch.outcome])
        branches.append(
            GadgetBranch(
                outcome=branch.outcome,
                probability=branch.probability,
                output=ancilla,
                matches=equal_up_to_global_phase(ancilla, expected),
            )
        )
    return branches


def t_gadget_check(psi: StateVector) -> bool:
    """True iff every branch of the T gadget yields T|ψ⟩ up to global phase."""
    return all(branch.matches for branch in t_gadget_branches(psi))
