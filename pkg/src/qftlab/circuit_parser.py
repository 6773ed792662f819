"""Circuit JSON reader and writer."""

import json
from typing import Any, Dict

from qftlab.circuit import Circuit, Control, GateInstance, WireSpec
from qftlab.errors import ParseError, QftLabError, ValidationError

WIRE_KEYS = {"id", "radix"}
GATE_KEYS = {"kind", "controls", "target", "classical"}
CONTROL_KEYS = {"wire", "level"}


def circuit_to_dict(circuit: Circuit) -> Dict[str, Any]:
    """Convert a circuit to its JSON document form."""
    return {
        "wires": [{"id": w.id, "radix": w.radix} for w in circuit.wires],
        "gates": [
            {
                "kind": g.kind,
                "controls": [{"wire": c.wire, "level": c.level} for c in g.controls],
                "target": g.target,
                "classical": g.classical,
            }
            for g in circuit.gates
        ],
    }


def serialize(circuit: Circuit, indent: int = 2) -> str:
    """Render ``circuit`` as JSON text."""
    return json.dumps(circuit_to_dict(circuit), indent=indent)


class CircuitParser:
    """Parser for circuit JSON documents.

    Malformed JSON raises :class:`ParseError` carrying the line and column reported by the
    decoder. Documents that decode but break the schema, or describe an illegal circuit,
    raise :class:`ValidationError`. Unknown top-level keys are ignored so that annotated
    output (for example a verification flag) can be read back.
    """

    def parse_file(self, filepath: str) -> Circuit:
        """Parse a circuit JSON file."""
        with open(filepath, "r", encoding="utf-8") as f:
            content = f.read()
        return self.parse_content(content)

    def parse_content(self, content: str) -> Circuit:
        """Parse circuit JSON text."""
        try:
            document = json.loads(content)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno) from e
        return self.parse_document(document)

    def parse_document(self, document: Any) -> Circuit:
        """Build a circuit from an already-decoded JSON value."""
        if not isinstance(document, dict):
            raise ValidationError("Circuit document must be a JSON object")
        for key in ("wires", "gates"):
            if not isinstance(document.get(key), list):
                raise ValidationError(f"Circuit document requires a '{key}' array")

        wires = [self._handle_wire(i, item) for i, item in enumerate(document["wires"])]
        gates = [self._handle_gate(i, item) for i, item in enumerate(document["gates"])]
        try:
            return Circuit(tuple(wires), tuple(gates))
        except ValidationError:
            raise
        except QftLabError as e:
            raise ValidationError(str(e)) from e

    def _handle_wire(self, index: int, item: Any) -> WireSpec:
        fields = self._object(f"wires[{index}]", item, WIRE_KEYS, WIRE_KEYS)
        try:
            return WireSpec(
                self._int(f"wires[{index}].id", fields["id"]), self._int(f"wires[{index}].radix", fields["radix"])
            )
        except QftLabError as e:
            raise ValidationError(f"wires[{index}]: {e}") from e

    def _handle_gate(self, index: int, item: Any) -> GateInstance:
        where = f"gates[{index}]"
        fields = self._object(where, item, GATE_KEYS, {"kind", "target"})
        kind = fields["kind"]
        if not isinstance(kind, str):
            raise ValidationError(f"{where}.kind must be a string")
        controls = fields.get("controls", [])
        if not isinstance(controls, list):
            raise ValidationError(f"{where}.controls must be an array")
        classical = fields.get("classical")
        return GateInstance(
            kind=kind,
            target=self._int(f"{where}.target", fields["target"]),
            controls=tuple(self._handle_control(f"{where}.controls[{i}]", c) for i, c in enumerate(controls)),
            classical=None if classical is None else self._int(f"{where}.classical", classical),
        )

    def _handle_control(self, where: str, item: Any) -> Control:
        fields = self._object(where, item, CONTROL_KEYS, CONTROL_KEYS)
        return Control(self._int(f"{where}.wire", fields["wire"]), self._int(f"{where}.level", fields["level"]))

    @staticmethod
    def _object(where: str, item: Any, allowed: set, required: set) -> Dict[str, Any]:
        if not isinstance(item, dict):
            raise ValidationError(f"{where} must be an object")
        unknown = sorted(set(item) - allowed)
        if unknown:
            raise ValidationError(f"{where} has unknown field(s): {', '.join(unknown)}")
        missing = sorted(required - set(item))
        if missing:
            raise ValidationError(f"{where} is missing field(s): {', '.join(missing)}")
        return item

    @staticmethod
    def _int(where: str, value: Any) -> int:
        # bool is an int subclass; true/false is never a valid index.
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{where} must be an integer, got {value!r}")
        return value


def parse(text: str) -> Circuit:
    """Parse circuit JSON text."""
    return CircuitParser().parse_content(text)

