"""Fault-tolerant gate-count models for the in-place adder.

Counts are real-valued: log2 is never floored, so a count formula is carried around as a
:class:`LogLinear` a·n + b·log2(n) + c·log2(n−1) + d whose coefficients can be compared
exactly.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from qftlab.circuit import GateCensus, gate_census
from qftlab.concat import NoiseParams, level_gap_argument
from qftlab.decompositions import decompose_toffoli_clifford_t, decompose_toffoli_qutrit
from qftlab.errors import InvalidParameters, InvalidWidth, UnknownGateType

logger = logging.getLogger(__name__)

DECOMPOSITIONS = ("qubit", "qutrit")
TABLE_MODES = ("paper-table", "compositional")
COUNT_MODES = ("paper-simplified", "exact")

STEANE_DISTANCE = 7
STEANE_T_KAPPA = 4 * STEANE_DISTANCE

FIG4_KAPPAS: Tuple[int, ...] = (2, 3, 4, 5, 6)
FIG4_K2S: Tuple[int, ...] = (1, 2, 3, 4, 5)
FIG4_LINE_PAIRS: Tuple[Tuple[float, float], ...] = ((0.45, 2), (0.3, 3), (0.18, 5), (0.25, 2), (0.1, 5))

# The printed constant of the qubit-only total under the Steane model.
PRINTED_QUBIT_TOTAL_CONSTANT = -798


@dataclass(frozen=True)
class LogLinear:
    """a·n + b·log2(n) + c·log2(n−1) + d."""

    a: float
    b: float
    c: float
    d: float

    def __call__(self, n: float) -> float:
        return self.a * n + self.b * math.log2(n) + self.c * math.log2(n - 1) + self.d

    def __add__(self, other: "LogLinear") -> "LogLinear":
        return LogLinear(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def scaled(self, factor: float) -> "LogLinear":
        return LogLinear(self.a * factor, self.b * factor, self.c * factor, self.d * factor)

    @property
    def coefficients(self) -> Tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


ZERO = LogLinear(0, 0, 0, 0)

# Gate counts of the qubit-only adder as tabulated.
QUBIT_ADDER_TABLE: Dict[str, LogLinear] = {
    "CNOT": LogLinear(24, -18, -18, -24),
    "H": LogLinear(8, -6, -6, -8),
    "T": LogLinear(14, -28, -28, -21),
}

SIMPLIFIED_TOFFOLI_COUNT = LogLinear(4, -3, -3, -4)


def _tabulated_min_width() -> int:
    """Smallest width from which every tabulated row is a nonnegative count."""
    n = 2
    while any(term(n) < 0 for term in QUBIT_ADDER_TABLE.values()):
        n += 1
    return n


# The T row is negative for small n; below this width the table gives no census.
TABULATED_MIN_WIDTH = _tabulated_min_width()


def _per_toffoli(decomposition: str) -> Dict[str, int]:
    """Census of a single Toffoli under ``decomposition``."""
    if decomposition == "qubit":
        return dict(gate_census(decompose_toffoli_clifford_t()))
    return dict(gate_census(decompose_toffoli_qutrit()))


def _hamming_weight(value: int) -> int:
    return bin(value).count("1")


@dataclass(frozen=True)
class AdderCountModel:
    """Toffoli count of the in-place adder of two ``n``-qubit registers.

    ``paper-simplified`` replaces both Hamming weights with their argument; ``exact`` uses
    the true weights.
    """

    n: int
    mode: str = "paper-simplified"

    def __post_init__(self):
        if self.n < 2:
            raise InvalidWidth(f"Adder width must be at least 2, got {self.n}")
        if self.mode not in COUNT_MODES:
            raise InvalidParameters(f"Unknown count mode: {self.mode}. Supported: {', '.join(COUNT_MODES)}")

    def toffoli_count(self) -> float:
        n = self.n
        if self.mode == "paper-simplified":
            return SIMPLIFIED_TOFFOLI_COUNT(n)
        weights = _hamming_weight(n) + _hamming_weight(n - 1)
        return 10 * n - 3 * weights - 3 * math.log2(n) - 3 * math.log2(n - 1) - 7


def adder_toffoli_count(n: int, mode: str = "paper-simplified") -> float:
    return AdderCountModel(n, mode).toffoli_count()


def _check_choice(value: str, choices: Sequence[str], what: str) -> None:
    if value not in choices:
        raise InvalidParameters(f"Unknown {what}: {value}. Supported: {', '.join(choices)}")


def adder_census_terms(decomposition: str, table_mode: str = "paper-table") -> Dict[str, LogLinear]:
    """Census of the adder as closed-form terms in n (simplified Toffoli count)."""
    _check_choice(decomposition, DECOMPOSITIONS, "decomposition")
    _check_choice(table_mode, TABLE_MODES, "table mode")
    if decomposition == "qubit" and table_mode == "paper-table":
        return dict(QUBIT_ADDER_TABLE)
    return {label: SIMPLIFIED_TOFFOLI_COUNT.scaled(count) for label, count in _per_toffoli(decomposition).items()}


def adder_census(
    n: int, decomposition: str, table_mode: str = "paper-table", count_mode: str = "paper-simplified"
) -> GateCensus:
    """Gate census of the n-qubit in-place adder.

    The tabulated qubit census is only defined for the simplified count and for
    n >= TABULATED_MIN_WIDTH; other combinations multiply the per-Toffoli census of the
    chosen decomposition by the Toffoli count.
    """
    model = AdderCountModel(n, count_mode)
    _check_choice(decomposition, DECOMPOSITIONS, "decomposition")
    _check_choice(table_mode, TABLE_MODES, "table mode")
    if decomposition == "qubit" and table_mode == "paper-table":
        counts = {label: term(n) for label, term in QUBIT_ADDER_TABLE.items()}
        negative = sorted(label for label, count in counts.items() if count < 0)
        if negative:
            raise InvalidWidth(
                f"Tabulated qubit census is negative for {', '.join(negative)} at n = {n}; "
                f"it needs n >= {TABULATED_MIN_WIDTH}, or table mode 'compositional'"
            )
        return GateCensus(counts)
    toffolis = model.toffoli_count()
    return GateCensus({label: count * toffolis for label, count in _per_toffoli(decomposition).items()})


def census_metadata(decomposition: str, table_mode: str) -> Dict[str, Any]:
    """Known discrepancies attached to an adder census."""
    notes: Dict[str, Any] = {}
    if decomposition != "qubit":
        return notes
    compositional_t = SIMPLIFIED_TOFFOLI_COUNT.scaled(_per_toffoli("qubit")["T"])
    notes["t_row"] = {
        "tabulated": list(QUBIT_ADDER_TABLE["T"].coefficients),
        "compositional": list(compositional_t.coefficients),
        "consistent": QUBIT_ADDER_TABLE["T"] == compositional_t,
    }
    if table_mode == "paper-table":
        total = nft_terms(QUBIT_ADDER_TABLE, steane_cost_model())
        notes["total_constant"] = {"computed": total.d, "printed": PRINTED_QUBIT_TOTAL_CONSTANT}
        notes["min_width"] = TABULATED_MIN_WIDTH
    logger.info("Census metadata for %s/%s: %s", decomposition, table_mode, notes)
    return notes


@dataclass(frozen=True)
class GateCostModel:
    """Fault-tolerant expansion κ_g per gate label.

    ``expansion_bound`` is G, the most physical gates any single encoded gate takes;
    labels in ``transversal`` must expand to exactly ``distance`` gates.
    """

    kappa: Mapping[str, float]
    distance: int
    transversal: FrozenSet[str] = field(default_factory=frozenset)
    expansion_bound: Optional[float] = None

    def __post_init__(self):
        for label, value in self.kappa.items():
            if value < 1:
                raise InvalidParameters(f"κ for {label} must be >= 1, got {value}")
        for label in self.transversal:
            if self.kappa.get(label) != self.distance:
                raise InvalidParameters(f"Transversal gate {label} must have κ = {self.distance}")
        if self.expansion_bound is None:
            object.__setattr__(self, "expansion_bound", max(self.kappa.values(), default=1))
        elif self.expansion_bound < max(self.kappa.values(), default=1):
            raise InvalidParameters(f"G = {self.expansion_bound} is below the largest κ")

    def kappa_for(self, label: str) -> float:
        try:
            return self.kappa[label]
        except KeyError as exc:
            raise UnknownGateType(f"No κ for gate type: {label}. Known: {', '.join(sorted(self.kappa))}") from exc


def steane_cost_model(kappa_g: float = 1) -> GateCostModel:
    """Steane-code costs: transversal gates take 7, T takes 4×7, the 2-controlled ternary CNOT 7·κ_g."""
    if kappa_g < 1:
        raise InvalidParameters(f"κ_g must be >= 1, got {kappa_g}")
    transversal = ("X", "Z", "H", "S", "SX", "CNOT", "c1-ternary-cnot")
    kappa = {label: STEANE_DISTANCE for label in transversal}
    kappa["T"] = STEANE_T_KAPPA
    kappa["c2-ternary-cnot"] = STEANE_DISTANCE * kappa_g
    return GateCostModel(kappa=kappa, distance=STEANE_DISTANCE, transversal=frozenset(transversal))


def cost_sum(census: Mapping[str, float], model: GateCostModel) -> float:
    """Σ κ_g·n_g."""
    return sum(model.kappa_for(label) * count for label, count in census.items())


def nft(census: Mapping[str, float], model: GateCostModel, k: int) -> float:
    """Total fault-tolerant gate count (Σ κ_g·n_g)^k after ``k`` levels."""
    if k < 1:
        raise InvalidParameters(f"Level count must be >= 1, got {k}")
    return cost_sum(census, model) ** k


def nft_terms(terms: Mapping[str, LogLinear], model: GateCostModel) -> LogLinear:
    """Σ κ_g·n_g as a closed form, for censuses given as :class:`LogLinear` terms."""
    total = ZERO
    for label, term in terms.items():
        total = total + term.scaled(model.kappa_for(label))
    return total


def n23_closed(n: int, kappa_g: float) -> float:
    """Single-level gate count of the qutrit-decomposed adder under the Steane model."""
    AdderCountModel(n)
    if kappa_g < 1:
        raise InvalidParameters(f"κ_g must be >= 1, got {kappa_g}")
    transversal_part = LogLinear(56, -42, -42, -56)
    controlled_part = LogLinear(28, -21, -21, -28)
    return transversal_part(n) + kappa_g * controlled_part(n)


def size_bound_holds(r2: float, r23: float, expansion_bound: float, k2: float, k3: float) -> bool:
    """R23 <= R2 / G^⌈k3 − k2⌉."""
    if expansion_bound <= 1:
        raise InvalidParameters(f"G must exceed 1, got {expansion_bound}")
    if k3 < k2:
        raise InvalidParameters(f"k3 = {k3} is below k2 = {k2}")
    return r23 <= r2 / expansion_bound ** math.ceil(k3 - k2)


def fault_tolerant_size(r: float, expansion_bound: float, k: int) -> float:
    """Upper bound G^k·R on the size of a ``k``-level encoding of an R-gate circuit."""
    if k < 0:
        raise InvalidParameters(f"Level count must be >= 0, got {k}")
    return expansion_bound**k * r


def qubits_with_t_ancillas(n: int, m: int) -> int:
    """Qubits needed for an ``n``-qubit circuit with ``m`` T gates, one ancilla per gadget."""
    if n < 0 or m < 0:
        raise InvalidParameters(f"Counts must be non-negative, got n={n}, m={m}")
    return n + m


@dataclass(frozen=True)
class SizeComparison:
    """Both sides of the condition under which the hybrid decomposition needs fewer gates."""

    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def thm5_lhs(noise: NoiseParams, k2: int) -> float:
    """log2 of the level-gap argument; −inf when level 0 already suffices."""
    argument = level_gap_argument(noise, k2)
    return math.log2(argument) if argument > 0 else -math.inf


def thm5_rhs(k2: int, binary_total: float, hybrid_total: float) -> float:
    """k2·log(Σ₂κn / Σ₂₃κn) / log(Σ₂₃κn)."""
    if k2 < 0:
        raise InvalidParameters(f"k2 must be >= 0, got {k2}")
    if binary_total <= 0:
        raise InvalidParameters(f"Binary gate total must be positive, got {binary_total}")
    if hybrid_total <= 1:
        raise InvalidParameters(f"Hybrid gate total must exceed 1, got {hybrid_total}")
    return k2 * math.log(binary_total / hybrid_total) / math.log(hybrid_total)


def thm5_check(
    noise: NoiseParams,
    k2: int,
    census2: Mapping[str, float],
    census23: Mapping[str, float],
    model2: GateCostModel,
    model23: GateCostModel,
) -> SizeComparison:
    """Compare the level gap a hybrid circuit pays with the size it saves per level."""
    lhs = thm5_lhs(noise, k2)
    rhs = thm5_rhs(k2, cost_sum(census2, model2), cost_sum(census23, model23))
    return SizeComparison(lhs=lhs, rhs=rhs)


@dataclass(frozen=True)
class Fig4Row:
    """A bar (rhs at κ_g, k2) or a line (lhs at c·p2, δ); unused fields are None."""

    n: int
    kind: str
    kappa: Optional[float]
    k2: Optional[int]
    cp2: Optional[float]
    delta: Optional[float]
    value: float


def fig4_data(
    n: int,
    kappa_list: Sequence[float] = FIG4_KAPPAS,
    k2_list: Sequence[int] = FIG4_K2S,
    line_pairs: Sequence[Tuple[float, float]] = FIG4_LINE_PAIRS,
) -> List[Fig4Row]:
    """Sweep both sides of the size comparison for the n-qubit adder.

    Bars compare the qubit-only adder (tabulated census) with the qutrit-decomposed one
    under the Steane model. Lines use equal inverse thresholds, so c·p2 and δ fix them.
    """
    rows: List[Fig4Row] = []
    binary_census = adder_census(n, "qubit", "paper-table")
    hybrid_census = adder_census(n, "qutrit")
    for kappa_g in kappa_list:
        model = steane_cost_model(kappa_g)
        binary_total = cost_sum(binary_census, model)
        hybrid_total = cost_sum(hybrid_census, model)
        for k2 in k2_list:
            rows.append(Fig4Row(n, "bar", kappa_g, k2, None, None, thm5_rhs(k2, binary_total, hybrid_total)))
    for cp2, delta in line_pairs:
        noise = NoiseParams.from_delta(c2=1.0, p2=cp2, c3=1.0, delta=delta)
        rows.append(Fig4Row(n, "line", None, None, cp2, delta, thm5_lhs(noise, 0)))
    return rows
