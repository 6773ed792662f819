"""
Unit tests for the fault-tolerant resource model.

Tests cover:
- Adder Toffoli counts in both count modes
- Adder gate censuses from the table and by composition
- Cost models, N_FT and the closed qutrit count
- The size bound and the hybrid size comparison
- Sweep data for the bar and line comparison
"""

import math

import numpy as np
import pytest

from qftlab.concat import NoiseParams
from qftlab.errors import InvalidParameters, InvalidWidth, UnknownGateType
from qftlab.resources import (
    FIG4_KAPPAS,
    FIG4_K2S,
    FIG4_LINE_PAIRS,
    PRINTED_QUBIT_TOTAL_CONSTANT,
    QUBIT_ADDER_TABLE,
    TABULATED_MIN_WIDTH,
    GateCostModel,
    LogLinear,
    adder_census,
    adder_census_terms,
    adder_toffoli_count,
    census_metadata,
    cost_sum,
    fault_tolerant_size,
    fig4_data,
    n23_closed,
    nft,
    nft_terms,
    qubits_with_t_ancillas,
    size_bound_holds,
    steane_cost_model,
    thm5_check,
    thm5_lhs,
    thm5_rhs,
)


def _hamming(value):
    return bin(value).count("1")


class TestAdderToffoliCount:
    """Test suite for adder_toffoli_count."""

    def test_simplified_smallest_width(self):
        """4·2 − 0 − 0 − 4 = 4."""
        assert adder_toffoli_count(2) == pytest.approx(4)

    def test_exact_smallest_width(self):
        """20 − 3 − 3 − 0 − 0 − 7 = 7."""
        assert adder_toffoli_count(2, "exact") == pytest.approx(7)

    @pytest.mark.parametrize("n", [2, 3, 8, 50, 63, 64, 1000])
    def test_modes_differ_by_hamming_deficit(self, n):
        """exact − simplified = 3(n − w(n)) + 3((n − 1) − w(n − 1))."""
        difference = adder_toffoli_count(n, "exact") - adder_toffoli_count(n)
        expected = 3 * (n - _hamming(n)) + 3 * ((n - 1) - _hamming(n - 1))
        assert difference == pytest.approx(expected)

    def test_width_below_two(self):
        """A one-qubit adder is rejected."""
        with pytest.raises(InvalidWidth):
            adder_toffoli_count(1)

    def test_unknown_mode(self):
        """Only the two count modes exist."""
        with pytest.raises(InvalidParameters):
            adder_toffoli_count(4, "rounded")


class TestAdderCensus:
    """Test suite for adder_census and its closed-form terms."""

    def test_qubit_table_rows(self):
        """The tabulated CNOT row is 24n − 18log2 n − 18log2(n−1) − 24."""
        terms = adder_census_terms("qubit", "paper-table")
        assert terms["CNOT"].coefficients == (24, -18, -18, -24)
        assert set(terms) == {"CNOT", "H", "T"}

    def test_qubit_table_values(self):
        """The numeric census evaluates the table rows."""
        census = adder_census(50, "qubit", "paper-table")
        assert census["H"] == pytest.approx(QUBIT_ADDER_TABLE["H"](50))

    @pytest.mark.parametrize("n", [2, 5, 50, 1024])
    def test_qutrit_ratio(self, n):
        """There are twice as many 1-controlled as 2-controlled ternary CNOTs."""
        census = adder_census(n, "qutrit")
        assert census["c1-ternary-cnot"] == pytest.approx(2 * census["c2-ternary-cnot"])
        assert census["c2-ternary-cnot"] == pytest.approx(adder_toffoli_count(n))

    def test_qutrit_terms(self):
        """8n − 6log2 n − 6log2(n−1) − 8 for the 1-controlled gate."""
        terms = adder_census_terms("qutrit")
        assert terms["c1-ternary-cnot"].coefficients == (8, -6, -6, -8)
        assert terms["c2-ternary-cnot"].coefficients == (4, -3, -3, -4)

    def test_compositional_t_row(self):
        """Seven T gates per Toffoli."""
        census = adder_census(50, "qubit", "compositional")
        assert census["T"] == pytest.approx(7 * adder_toffoli_count(50))
        assert adder_census_terms("qubit", "compositional")["T"].coefficients == (28, -21, -21, -28)

    def test_unknown_choices(self):
        """Unknown decompositions and table modes are rejected."""
        with pytest.raises(InvalidParameters):
            adder_census(8, "ququart")
        with pytest.raises(InvalidParameters):
            adder_census_terms("qubit", "guessed")

    def test_invalid_width(self):
        """n >= 2."""
        with pytest.raises(InvalidWidth):
            adder_census(1, "qutrit")

    def test_table_needs_nonnegative_rows(self):
        """The tabulated T row is negative up to n = 18, so the table starts at n = 19."""
        assert TABULATED_MIN_WIDTH == 19
        assert QUBIT_ADDER_TABLE["T"](18) < 0 < QUBIT_ADDER_TABLE["T"](19)
        with pytest.raises(InvalidWidth, match="negative for T at n = 5"):
            adder_census(5, "qubit", "paper-table")
        assert all(count >= 0 for count in adder_census(19, "qubit", "paper-table").values())

    @pytest.mark.parametrize("n", [2, 3, 5, 18])
    def test_composed_censuses_nonnegative_at_small_widths(self, n):
        """Composed censuses are valid counts for every n >= 2."""
        for decomposition in ("qubit", "qutrit"):
            for count_mode in ("paper-simplified", "exact"):
                census = adder_census(n, decomposition, "compositional", count_mode)
                assert all(count >= 0 for count in census.values())

    def test_metadata_for_qubit_table(self):
        """The T-row and constant discrepancies are reported."""
        notes = census_metadata("qubit", "paper-table")
        assert notes["t_row"]["tabulated"] == [14, -28, -28, -21]
        assert notes["t_row"]["compositional"] == [28, -21, -21, -28]
        assert notes["t_row"]["consistent"] is False
        assert notes["total_constant"] == {"computed": -812, "printed": PRINTED_QUBIT_TOTAL_CONSTANT}
        assert notes["min_width"] == TABULATED_MIN_WIDTH

    def test_metadata_for_qutrit(self):
        """The qutrit census carries no discrepancy notes."""
        assert census_metadata("qutrit", "paper-table") == {}


class TestCostModel:
    """Test suite for GateCostModel and N_FT."""

    def test_steane_defaults(self):
        """Transversal gates cost 7, T costs 28 and the 2-controlled gate 7·κ_g."""
        model = steane_cost_model(2)
        assert model.kappa_for("CNOT") == 7
        assert model.kappa_for("c1-ternary-cnot") == 7
        assert model.kappa_for("T") == 28
        assert model.kappa_for("c2-ternary-cnot") == 14
        assert model.expansion_bound == 28
        assert steane_cost_model(6).expansion_bound == 42

    def test_unknown_label(self):
        """Labels without a κ raise UnknownGateType."""
        with pytest.raises(UnknownGateType):
            nft({"C11-X": 1}, steane_cost_model(), 1)

    def test_validation(self):
        """κ >= 1, transversal κ = d and G >= max κ."""
        with pytest.raises(InvalidParameters):
            GateCostModel(kappa={"X": 0.5}, distance=7)
        with pytest.raises(InvalidParameters):
            GateCostModel(kappa={"X": 5}, distance=7, transversal=frozenset({"X"}))
        with pytest.raises(InvalidParameters):
            GateCostModel(kappa={"X": 7, "T": 28}, distance=7, expansion_bound=10)
        with pytest.raises(InvalidParameters):
            steane_cost_model(0.5)

    def test_nft_single_gate(self):
        """One CNOT at κ = 7 costs 7; two levels square it."""
        model = steane_cost_model()
        assert nft({"CNOT": 1}, model, 1) == pytest.approx(7)
        assert nft({"CNOT": 1}, model, 2) == pytest.approx(49)

    def test_nft_needs_a_level(self):
        """k >= 1."""
        with pytest.raises(InvalidParameters):
            nft({"CNOT": 1}, steane_cost_model(), 0)

    def test_qubit_total_closed_form(self):
        """The tabulated qubit census totals 616n − 952log2 n − 952log2(n−1) − 812."""
        total = nft_terms(QUBIT_ADDER_TABLE, steane_cost_model())
        assert total.coefficients == (616, -952, -952, -812)
        assert total.d != PRINTED_QUBIT_TOTAL_CONSTANT

    def test_qubit_total_numeric(self):
        """The closed form and the numeric census agree."""
        census = adder_census(50, "qubit", "paper-table")
        assert cost_sum(census, steane_cost_model()) == pytest.approx(19269.845, abs=1e-2)

    def test_n23_example(self):
        """n = 50 and κ_g = 2."""
        assert n23_closed(50, 2) == pytest.approx(4542.28, abs=1e-2)

    def test_n23_transversal_limit(self):
        """κ_g = 1 gives 84n − 63log2 n − 63log2(n−1) − 84."""
        limit = LogLinear(84, -63, -63, -84)
        for n in (2, 7, 50, 333):
            assert n23_closed(n, 1) == pytest.approx(limit(n))

    def test_n23_linear_in_kappa(self):
        """The 2-controlled term scales linearly with κ_g."""
        step = n23_closed(50, 3) - n23_closed(50, 2)
        assert n23_closed(50, 5) - n23_closed(50, 4) == pytest.approx(step)

    def test_n23_matches_compositional_path(self):
        """The closed form equals N_FT over the qutrit census."""
        rng = np.random.default_rng(5)
        for _ in range(200):
            n = int(rng.integers(2, 10_001))
            kappa_g = float(rng.uniform(1, 64))
            composed = nft(adder_census(n, "qutrit"), steane_cost_model(kappa_g), 1)
            assert n23_closed(n, kappa_g) == pytest.approx(composed, rel=1e-9)

    def test_n23_validation(self):
        """n >= 2 and κ_g >= 1."""
        with pytest.raises(InvalidWidth):
            n23_closed(1, 2)
        with pytest.raises(InvalidParameters):
            n23_closed(8, 0)


class TestSizeBounds:
    """Test suite for size bounds and encoded sizes."""

    def test_gap_one(self):
        """100/7 ≈ 14.3 separates 10 from 20."""
        assert size_bound_holds(100, 10, 7, 0, 1)
        assert not size_bound_holds(100, 20, 7, 0, 1)

    def test_equal_levels(self):
        """k3 = k2 reduces to R23 <= R2."""
        assert size_bound_holds(100, 100, 7, 2, 2)
        assert not size_bound_holds(100, 101, 7, 2, 2)

    def test_fractional_gap_rounds_up(self):
        """A gap of 0.3 costs a full factor of G."""
        assert size_bound_holds(100, 14, 7, 0, 0.3)
        assert not size_bound_holds(100, 15, 7, 0, 0.3)

    def test_validation(self):
        """G > 1 and k3 >= k2."""
        with pytest.raises(InvalidParameters):
            size_bound_holds(100, 10, 1, 0, 1)
        with pytest.raises(InvalidParameters):
            size_bound_holds(100, 10, 7, 2, 1)

    def test_fault_tolerant_size(self):
        """G^k·R."""
        assert fault_tolerant_size(10, 7, 2) == pytest.approx(490)
        assert fault_tolerant_size(10, 7, 0) == pytest.approx(10)

    def test_t_ancillas(self):
        """One ancilla per T gadget."""
        assert qubits_with_t_ancillas(5, 3) == 8
        with pytest.raises(InvalidParameters):
            qubits_with_t_ancillas(-1, 3)


class TestSizeComparison:
    """Test suite for the hybrid size comparison."""

    def setup_method(self):
        """Set up the n = 50 adder under κ_g = 2."""
        self.model = steane_cost_model(2)
        self.census2 = adder_census(50, "qubit", "paper-table")
        self.census23 = adder_census(50, "qutrit")

    def test_example(self):
        """c·p2 = 0.45, δ = 2 and k2 = 1 do not favour the hybrid circuit."""
        noise = NoiseParams.from_delta(c2=1, p2=0.45, c3=1, delta=2)
        result = thm5_check(noise, 1, self.census2, self.census23, self.model, self.model)
        assert result.lhs == pytest.approx(2.92196, abs=1e-2)
        assert result.rhs == pytest.approx(0.171604, abs=1e-3)
        assert not result.holds

    def test_identical_noise(self):
        """δ = 1 leaves only the raw size comparison."""
        noise = NoiseParams(c2=3, p2=0.1, c3=3, p23=0.1)
        assert thm5_lhs(noise, 2) == pytest.approx(0.0)
        result = thm5_check(noise, 2, self.census2, self.census23, self.model, self.model)
        assert result.holds
        swapped = thm5_check(noise, 2, self.census23, self.census2, self.model, self.model)
        assert not swapped.holds

    def test_monotone_in_k2(self):
        """Once the comparison holds, more binary levels keep it holding."""
        noise = NoiseParams.from_delta(c2=1, p2=0.1, c3=1, delta=1.5)
        verdicts = [
            thm5_check(noise, k2, self.census2, self.census23, self.model, self.model).holds for k2 in range(1, 30)
        ]
        first = verdicts.index(True)
        assert all(verdicts[first:])

    def test_rhs_matches_direct_exponentiation(self):
        """lhs <= rhs exactly when Σ23^(k2 + lhs) <= Σ2^k2."""
        rng = np.random.default_rng(3)
        for _ in range(200):
            binary_total = float(rng.uniform(2, 60))
            hybrid_total = float(rng.uniform(2, 60))
            k2 = int(rng.integers(1, 4))
            lhs = float(rng.uniform(-1, 2))
            rhs = thm5_rhs(k2, binary_total, hybrid_total)
            direct = hybrid_total ** (k2 + lhs) <= binary_total**k2
            if math.isclose(lhs, rhs, abs_tol=1e-9):
                continue
            assert (lhs <= rhs) == direct

    def test_rhs_needs_hybrid_total_above_one(self):
        """log Σ23 must be positive."""
        with pytest.raises(InvalidParameters):
            thm5_rhs(1, 10, 1)

    def test_rhs_needs_non_negative_k2(self):
        """k2 counts levels."""
        with pytest.raises(InvalidParameters, match="k2"):
            thm5_rhs(-1, 100, 10)

    def test_rhs_needs_positive_binary_total(self):
        """A non-positive binary total has no logarithm."""
        with pytest.raises(InvalidParameters, match="Binary gate total"):
            thm5_rhs(1, -72.0, 10)
        with pytest.raises(InvalidParameters):
            thm5_rhs(1, 0.0, 10)


class TestFig4Data:
    """Test suite for the bar and line sweep."""

    def test_default_row_count(self):
        """Every (κ_g, k2) bar and every line pair gets a row."""
        rows = fig4_data(50)
        assert len(rows) == len(FIG4_KAPPAS) * len(FIG4_K2S) + len(FIG4_LINE_PAIRS)
        assert len(rows) == 30
        assert {row.kind for row in rows} == {"bar", "line"}

    @pytest.mark.parametrize("n", [50, 100, 300, 800])
    def test_bars_grow_with_k2(self, n):
        """Bar heights strictly increase with k2 at fixed κ_g."""
        rows = [row for row in fig4_data(n) if row.kind == "bar"]
        for kappa_g in FIG4_KAPPAS:
            heights = [row.value for row in rows if row.kappa == kappa_g]
            assert all(later > earlier for earlier, later in zip(heights, heights[1:]))

    @pytest.mark.parametrize("n", [50, 100, 300, 800])
    def test_bars_shrink_with_kappa(self, n):
        """Bar heights strictly decrease with κ_g at fixed k2."""
        rows = [row for row in fig4_data(n) if row.kind == "bar"]
        for k2 in FIG4_K2S:
            heights = [row.value for row in rows if row.k2 == k2]
            assert all(later < earlier for earlier, later in zip(heights, heights[1:]))

    def test_lines_grow_with_delta(self):
        """Line values increase with δ at fixed c·p2."""
        pairs = [(0.1, 1.5), (0.1, 3), (0.1, 5), (0.1, 9)]
        rows = fig4_data(50, kappa_list=[], k2_list=[], line_pairs=pairs)
        values = [row.value for row in rows]
        assert len(values) == 4
        assert all(later > earlier for earlier, later in zip(values, values[1:]))

    def test_line_value(self):
        """The 0.45/δ=2 line sits at log2 of the level-gap argument."""
        rows = fig4_data(50, kappa_list=[], k2_list=[], line_pairs=[(0.45, 2)])
        assert rows[0].value == pytest.approx(2.92196, abs=1e-3)
        assert rows[0].kappa is None
