"""Mixed-radix circuit representation."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from qftlab.errors import InvalidWire, RadixMismatch
from qftlab.gates import QUTRIT_GATES, check_control_level, gate_matrix

# Labels used by gate_census and by the resource model. T and T† share "T".
CANONICAL_LABELS: Tuple[str, ...] = (
    "X",
    "Z",
    "H",
    "S",
    "T",
    "Tdg",
    "SX",
    "X01",
    "X1",
    "X2",
    "Z1",
    "Z2",
    "CNOT",
    "c1-ternary-cnot",
    "c2-ternary-cnot",
)

_SHIFT_KINDS = ("X", "X1", "X2", "X01")


@dataclass(frozen=True)
class WireSpec:
    """A wire with its radix (2 for a qubit, 3 for a qutrit)."""

    id: int
    radix: int

    def __post_init__(self):
        if self.radix not in (2, 3):
            raise RadixMismatch(f"Wire {self.id} has radix {self.radix}; only 2 and 3 are supported")


@dataclass(frozen=True)
class Control:
    """A control wire that activates the gate when its digit equals ``level``."""

    wire: int
    level: int = 1


@dataclass(frozen=True)
class GateInstance:
    """One gate application: a base kind, its controls, target and optional classical bit."""

    kind: str
    target: int
    controls: Tuple[Control, ...] = ()
    classical: Optional[int] = None

    @property
    def wires(self) -> Tuple[int, ...]:
        """Quantum wires the gate touches, controls first."""
        return tuple(c.wire for c in self.controls) + (self.target,)


class GateCensus(dict):
    """Mapping from gate-type label to count n_g."""

    def total(self) -> float:
        """Sum of all counts."""
        return sum(self.values())


@dataclass(frozen=True)
class Circuit:
    """An ordered list of gates over mixed-radix wires.

    Construction validates every gate against the wire radices, so a ``Circuit`` value is
    always legal.
    """

    wires: Tuple[WireSpec, ...]
    gates: Tuple[GateInstance, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(self.wires))
        object.__setattr__(self, "gates", tuple(self.gates))
        for index, wire in enumerate(self.wires):
            if wire.id != index:
                raise InvalidWire(f"Wire ids must be contiguous from 0; position {index} has id {wire.id}")
        for gate in self.gates:
            self._check_gate(gate)

    @classmethod
    def from_radices(cls, radices: Iterable[int], gates: Iterable[GateInstance] = ()) -> "Circuit":
        """Build a circuit whose wire ``i`` has radix ``radices[i]``."""
        return cls(tuple(WireSpec(i, r) for i, r in enumerate(radices)), tuple(gates))

    @property
    def radices(self) -> List[int]:
        return [w.radix for w in self.wires]

    @property
    def dimension(self) -> int:
        """Size of the mixed-radix product space."""
        dim = 1
        for w in self.wires:
            dim *= w.radix
        return dim

    @property
    def depth(self) -> int:
        """Greedy layer count: each gate lands one layer after the latest gate sharing a wire."""
        frontier: Dict[int, int] = {}
        depth = 0
        for gate in self.gates:
            touched = list(gate.wires)
            if gate.classical is not None:
                touched.append(gate.classical)
            layer = 1 + max((frontier.get(w, 0) for w in touched), default=0)
            for w in touched:
                frontier[w] = layer
            depth = max(depth, layer)
        return depth

    def then(self, other: "Circuit") -> "Circuit":
        """Return this circuit followed by ``other`` (same wires)."""
        if self.wires != other.wires:
            raise InvalidWire("Cannot compose circuits over different wires")
        return Circuit(self.wires, self.gates + other.gates)

    def _radix(self, wire: int) -> int:
        if not 0 <= wire < len(self.wires):
            raise InvalidWire(f"Wire {wire} does not exist (circuit has {len(self.wires)} wires)")
        return self.wires[wire].radix

    def _check_gate(self, gate: GateInstance) -> None:
        gate_matrix(gate.kind, self._radix(gate.target))
        seen = {gate.target}
        for control in gate.controls:
            check_control_level(control.level, self._radix(control.wire))
            if control.wire in seen:
                raise InvalidWire(f"Wire {control.wire} is used twice by gate {gate.kind}")
            seen.add(control.wire)
        if gate.classical is not None:
            self._radix(gate.classical)


def census_label(circuit: Circuit, gate: GateInstance) -> str:
    """Return the canonical census label of ``gate`` within ``circuit``."""
    base = "T" if gate.kind in ("T", "Tdg") else gate.kind
    if not gate.controls:
        return base
    if len(gate.controls) == 1 and gate.kind in _SHIFT_KINDS:
        control = gate.controls[0]
        control_radix = circuit.wires[control.wire].radix
        target_radix = circuit.wires[gate.target].radix
        if control_radix == 2 and target_radix == 2:
            if control.level == 1 and gate.kind == "X":
                return "CNOT"
        else:
            return f"c{control.level}-ternary-cnot"
    levels = "".join(str(c.level) for c in gate.controls)
    return f"C{levels}-{base}"


def gate_census(circuit: Circuit) -> GateCensus:
    """Count gates by canonical label."""
    census = GateCensus()
    for gate in circuit.gates:
        label = census_label(circuit, gate)
        census[label] = census.get(label, 0) + 1
    return census


def qutrit_encoded_wires(circuit: Circuit) -> Set[int]:
    """Wires that reach level 2 at some point and so must be qutrit-encoded from the start.

    A wire qualifies when it is the target of a ternary gate or a control activating on |2>.
    Under error correction such a wire cannot switch between binary and ternary codes
    mid-circuit: a bit flip while it sits in |2> leaks out of the binary codespace.
    """
    wires: Set[int] = set()
    for gate in circuit.gates:
        if gate.kind in QUTRIT_GATES:
            wires.add(gate.target)
        wires.update(c.wire for c in gate.controls if c.level == 2)
    return wires
