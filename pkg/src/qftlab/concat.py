"""Concatenation-level arithmetic for binary, ternary and hybrid circuits.

A code with inverse threshold ``c`` fails with probability (1/c)·(c·p)^(2^k) after ``k``
levels. Every comparison below is made on log2 of that quantity, which stays finite long
after the probability itself underflows.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from qftlab.errors import AboveThreshold, InvalidParameters, OracleOverflow, QutritAboveThreshold

logger = logging.getLogger(__name__)

LOG_SLACK = 1e-12
ORACLE_MAX_LEVEL = 64
RELATIVE_TOLERANCE = 1e-12

# (c·p23, δ) rows of the level-gap table.
GAP_TABLE_ROWS: Tuple[Tuple[float, float], ...] = (
    (0.9, 1.5),
    (0.9, 2),
    (0.9, 3),
    (0.9, 4),
    (0.9, 5),
    (0.5, 1.5),
    (0.5, 2),
    (0.5, 3),
    (0.5, 4),
    (0.5, 5),
)


@dataclass(frozen=True)
class NoiseParams:
    """Noise model of a hybrid circuit.

    ``c2``/``c3`` are the inverse thresholds of the binary and ternary codes, ``p2``/``p23``
    the physical error probabilities of qubit and qutrit gates.
    """

    c2: float
    p2: float
    c3: float
    p23: float
    epsilon: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.p2 <= self.p23 < 1:
            raise InvalidParameters(f"Need 0 < p2 <= p23 < 1, got p2={self.p2}, p23={self.p23}")
        if self.c2 < 1 or self.c3 < 1:
            raise InvalidParameters(f"Inverse thresholds must be >= 1, got c2={self.c2}, c3={self.c3}")
        if self.epsilon is not None and self.epsilon <= 0:
            raise InvalidParameters(f"Target accuracy must be positive, got {self.epsilon}")

    @classmethod
    def from_delta(
        cls, c2: float, p2: float, c3: float, delta: float, epsilon: Optional[float] = None
    ) -> "NoiseParams":
        """Build parameters from the qubit error rate and the ratio δ = p23/p2."""
        if delta < 1:
            raise InvalidParameters(f"δ must be >= 1, got {delta}")
        return cls(c2=c2, p2=p2, c3=c3, p23=delta * p2, epsilon=epsilon)

    @property
    def delta(self) -> float:
        return self.p23 / self.p2

    def require_below_threshold(self) -> None:
        _check_threshold(self.c2, self.p2, "binary")
        _check_threshold(self.c3, self.p23, "ternary")


def _check_threshold(c: float, p: float, species: str = "") -> None:
    if c * p >= 1:
        label = f" ({species})" if species else ""
        raise AboveThreshold(f"c·p = {c * p:.6g} is not below 1{label}; concatenation does not converge")
    if not (c >= 1 and 0 < p < 1):
        raise InvalidParameters(f"Need c >= 1 and 0 < p < 1, got c={c}, p={p}")


def _check_levels(k: int, name: str = "Level count") -> None:
    if k < 0:
        raise InvalidParameters(f"{name} must be >= 0, got {k}")


def log2_accuracy(c: float, p: float, k: int) -> float:
    """log2 of (1/c)·(c·p)^(2^k)."""
    _check_levels(k)
    _check_threshold(c, p)
    return (2**k) * math.log2(c * p) - math.log2(c)


def accuracy_after_levels(c: float, p: float, k: int) -> float:
    """Failure probability (1/c)·(c·p)^(2^k) after ``k`` levels of concatenation."""
    _check_levels(k)
    _check_threshold(c, p)
    return (c * p) ** (2**k) / c


def levels_for_accuracy(c: float, p: float, epsilon: float) -> int:
    """Smallest ``k`` with accuracy_after_levels(c, p, k) <= epsilon.

    Starts from ⌈log2(log_{cp}(c·ε))⌉ and corrects it against the exact inequality.
    """
    if not all(math.isfinite(value) for value in (c, p, epsilon)):
        raise InvalidParameters(f"Parameters must be finite, got c={c}, p={p}, epsilon={epsilon}")
    _check_threshold(c, p)
    if epsilon <= 0:
        raise InvalidParameters(f"Target accuracy must be positive, got {epsilon}")
    if epsilon >= p:
        return 0
    target = math.log2(epsilon)

    def reaches(k: int) -> bool:
        return log2_accuracy(c, p, k) <= target + LOG_SLACK

    ratio = math.log2(c * epsilon) / math.log2(c * p) if c * epsilon < 1 else 0.0
    k = max(0, math.ceil(math.log2(ratio))) if ratio > 0 else 0
    while k > 0 and reaches(k - 1):
        k -= 1
    while not reaches(k):
        k += 1
    return k


def delta_for_equal_levels(params: NoiseParams, k: int) -> float:
    """δ such that qutrit accuracy equals δ times qubit accuracy, both after ``k`` levels.

    log2 δ = 2^k·log2(c3·p23 / (c2·p2)) + log2(c2/c3).
    """
    _check_levels(k)
    params.require_below_threshold()
    log_delta = (2**k) * math.log2((params.c3 * params.p23) / (params.c2 * params.p2)) + math.log2(
        params.c2 / params.c3
    )
    return 2**log_delta


def level_gap_argument(params: NoiseParams, k2: int) -> float:
    """(log2(c2·p2) − 2^−k2·log2(c2/c3)) / (log2 δ + log2(c3·p2)); its log2 is the real-valued k3 − k2."""
    _check_levels(k2, "k2")
    _check_threshold(params.c2, params.p2, "binary")
    delta = params.delta
    if delta * params.c3 * params.p2 >= 1:
        raise AboveThreshold(f"δ·c3·p2 = {delta * params.c3 * params.p2:.6g} is not below 1")
    denominator = math.log2(delta) + math.log2(params.c3 * params.p2)
    if denominator >= 0:
        raise QutritAboveThreshold(f"log2 δ + log2(c3·p2) = {denominator:.6g} is not negative")
    numerator = math.log2(params.c2 * params.p2) - math.log2(params.c2 / params.c3) / 2**k2
    return numerator / denominator


def k3_for_same_accuracy(params: NoiseParams, k2: int) -> int:
    """Ternary levels k3 needed to match the accuracy binary code reaches after ``k2`` levels.

    k3 = ⌈k2 + log2(level_gap_argument)⌉, clamped at 0. A non-positive argument means
    level 0 already suffices.
    """
    argument = level_gap_argument(params, k2)
    if argument <= 0:
        return 0
    return max(0, math.ceil(k2 + math.log2(argument)))


def min_levels_oracle(params: NoiseParams, k2: int) -> int:
    """Brute-force k3: the first level whose ternary accuracy reaches the binary accuracy at ``k2``."""
    _check_levels(k2, "k2")
    params.require_below_threshold()
    target = log2_accuracy(params.c2, params.p2, k2)
    for k3 in range(ORACLE_MAX_LEVEL + 1):
        if log2_accuracy(params.c3, params.p23, k3) <= target + LOG_SLACK:
            return k3
    raise OracleOverflow(f"No k3 <= {ORACLE_MAX_LEVEL} reaches the accuracy of k2={k2}")


def closed_form_disagreement(params: NoiseParams, k2: int) -> int:
    """k3_for_same_accuracy minus min_levels_oracle, logged when nonzero."""
    difference = k3_for_same_accuracy(params, k2) - min_levels_oracle(params, k2)
    if abs(difference) > 1:
        logger.warning("Closed form and oracle disagree by %+d level(s) for %s, k2=%d", difference, params, k2)
    elif difference:
        logger.debug("Closed form and oracle disagree by %+d level for %s, k2=%d", difference, params, k2)
    return difference


@dataclass(frozen=True)
class GapRow:
    """One row of the level-gap table: c·p23, δ, c·p2 and ⌈k3 − k2⌉."""

    cp23: float
    delta: float
    cp2: float
    gap: int


def concat_gap_table(rows: Iterable[Tuple[float, float]] = GAP_TABLE_ROWS) -> List[GapRow]:
    """Level gap for equal inverse thresholds, one entry per (c·p23, δ).

    The products are given directly, so the inverse thresholds are taken as 1.
    """
    table = []
    for cp23, delta in rows:
        params = NoiseParams.from_delta(c2=1.0, p2=cp23 / delta, c3=1.0, delta=delta)
        gap = k3_for_same_accuracy(params, 0)
        table.append(GapRow(cp23=cp23, delta=delta, cp2=params.p2, gap=gap))
    return table


def hybrid_required_levels(params: NoiseParams) -> int:
    """Common level count for a hybrid circuit: both species are encoded with the same k."""
    if params.epsilon is None:
        raise InvalidParameters("Hybrid level count needs a target accuracy")
    params.require_below_threshold()
    return max(
        levels_for_accuracy(params.c2, params.p2, params.epsilon),
        levels_for_accuracy(params.c3, params.p23, params.epsilon),
    )


def block_failure_probability(n: int, p: float) -> float:
    """Probability that two or more of ``n`` independent wires fail, each with probability ``p``."""
    if n < 1 or not 0 <= p <= 1:
        raise InvalidParameters(f"Need n >= 1 and 0 <= p <= 1, got n={n}, p={p}")
    return 1 - ((1 - p) ** n + n * p * (1 - p) ** (n - 1))


def pairwise_fault_count(n: int) -> int:
    """Number of fault pairs in an ``n``-wire block, the leading coefficient of its failure rate."""
    if n < 2:
        raise InvalidParameters(f"Need at least two wires, got {n}")
    return math.comb(n, 2)
