"""
Tests for the qftlab command-line interface.

Each test runs ``main()`` with a patched ``sys.argv`` and inspects the exit status and
the text written to stdout and stderr.
"""

import json
import os
import sys
import tempfile

import numpy as np
import pytest

from qftlab.circuit_parser import serialize
from qftlab.cli import main
from qftlab.common import FLOAT_DIGITS_ENV
from qftlab.decompositions import decompose_toffoli_qutrit


@pytest.fixture(autouse=True)
def default_digits(monkeypatch):
    """Run every command with the default float precision."""
    monkeypatch.delenv(FLOAT_DIGITS_ENV, raising=False)


@pytest.fixture
def run_cli(monkeypatch, capsys):
    """Return a function that runs the CLI and gives back (exit code, stdout, stderr)."""

    def run(*argv):
        monkeypatch.setattr(sys, "argv", ["qftlab", *argv])
        code = 0
        try:
            main()
        except SystemExit as e:
            code = e.code
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


class TestReproduce:
    """Test suite for the reproduce command."""

    def test_table1(self, run_cli):
        """The level-gap table is printed as CSV."""
        code, out, _ = run_cli("reproduce", "table1")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "cp23,delta,cp2,gap"
        assert lines[1] == "0.9,1.5,0.6,3"
        assert [line.split(",")[3] for line in lines[1:]] == ["3", "3", "4", "4", "5", "1", "1", "2", "2", "2"]

    def test_table1_deterministic(self, run_cli):
        """Two runs print identical bytes."""
        _, first, _ = run_cli("reproduce", "table1")
        _, second, _ = run_cli("reproduce", "table1")
        assert first == second

    def test_fig4(self, run_cli):
        """Default sweep: 25 bars and 5 lines."""
        code, out, _ = run_cli("reproduce", "fig4", "--n", "50")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "n,kind,kappa,k2,cp2,delta,value"
        assert len(lines) == 31
        assert sum(1 for line in lines[1:] if ",line," in line) == 5

    def test_fig4_custom_grid(self, run_cli):
        """Grids can be given on the command line."""
        code, out, _ = run_cli("reproduce", "fig4", "--n", "100", "--kappa", "2,3", "--k2", "1", "--pairs", "0.45:2")
        assert code == 0
        assert len(out.splitlines()) == 1 + 2 + 1

    def test_fig4_values(self, run_cli):
        """n = 50, κ_g = 2, k2 = 1: the bar sits near 0.1716 and the 0.45/2 line near 2.92."""
        _, out, _ = run_cli("reproduce", "fig4", "--n", "50", "--kappa", "2", "--k2", "1", "--pairs", "0.45:2")
        bar, line = out.splitlines()[1:]
        assert bar.split(",")[:4] == ["50", "bar", "2", "1"]
        assert float(bar.split(",")[-1]) == pytest.approx(0.1716, abs=1e-3)
        assert float(line.split(",")[-1]) == pytest.approx(2.922, abs=1e-3)

    def test_fig4_needs_width(self, run_cli):
        """fig4 without --n is a usage error."""
        code, _, err = run_cli("reproduce", "fig4")
        assert code == 2
        assert "--n" in err

    def test_fig4_below_table_width(self, run_cli):
        """Widths where the tabulated qubit census is negative are refused with a domain error."""
        code, out, err = run_cli("reproduce", "fig4", "--n", "5")
        assert code == 1
        assert out == ""
        assert "InvalidWidth" in err
        assert "math domain error" not in err

    def test_fig4_deterministic(self, run_cli):
        """Two sweeps print identical bytes."""
        _, first, _ = run_cli("reproduce", "fig4", "--n", "50")
        _, second, _ = run_cli("reproduce", "fig4", "--n", "50")
        assert first == second

    def test_output_file(self, run_cli):
        """-o writes the printed CSV to disk."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "table1.csv")
            code, out, _ = run_cli("reproduce", "table1", "-o", path)
            with open(path, "r", encoding="utf-8") as f:
                assert f.read() == out
        assert code == 0


class TestDecompose:
    """Test suite for the decompose command."""

    def test_qutrit_verify(self, run_cli):
        """The qutrit decomposition is emitted and verified."""
        code, out, _ = run_cli("decompose", "toffoli", "--mode", "qutrit", "--verify")
        document = json.loads(out)
        assert code == 0
        assert document["unitary_matches_toffoli"] is True
        assert len(document["gates"]) == 3

    def test_clifford_t(self, run_cli):
        """The Clifford+T decomposition has fifteen gates."""
        code, out, _ = run_cli("decompose", "toffoli", "--mode", "clifford-t")
        assert code == 0
        assert len(json.loads(out)["gates"]) == 15

    def test_unknown_mode(self, run_cli):
        """An unknown mode is a usage error."""
        code, _, _ = run_cli("decompose", "toffoli", "--mode", "bogus")
        assert code == 2


class TestQecc:
    """Test suite for the qecc command."""

    def test_leakage(self, run_cli):
        """The default amplitudes leak into |2>."""
        code, out, _ = run_cli("qecc", "leakage")
        document = json.loads(out)
        assert code == 0
        assert document["leaked"] is True
        assert set(document["final"]) == {"100", "211"}

    def test_leakage_unnormalized(self, run_cli):
        """Unnormalized amplitudes are a domain error."""
        code, _, err = run_cli("qecc", "leakage", "--alpha", "1", "--beta", "1")
        assert code == 1
        assert "InvalidState" in err

    def test_shor_cnot(self, run_cli):
        """The control block leaves the 9-qubit codespace."""
        code, out, _ = run_cli("qecc", "shor-cnot")
        document = json.loads(out)
        assert code == 0
        assert document["control_in_codespace"] is False
        assert document["target_unchanged"] is True

    def test_transversal(self, run_cli):
        """Repetition codes support the 1-controlled ternary CNOT."""
        code, out, _ = run_cli(
            "qecc", "transversal", "--ctrl", "rep3-b", "--tgt", "rep3-t", "--gate", "c1-ternary-cnot",
            "--expect", "c1-ternary-cnot",
        )
        document = json.loads(out)
        assert code == 0
        assert document["matches"] is True
        assert document["stays_in_codespace"] is True

    def test_transversal_unknown_code(self, run_cli):
        """Code names are checked by the parser."""
        code, _, _ = run_cli(
            "qecc", "transversal", "--ctrl", "surface17", "--tgt", "rep3-t", "--gate", "CNOT", "--expect", "CNOT"
        )
        assert code == 2

    def test_t_gadget(self, run_cli):
        """Every branch reproduces T|+>."""
        code, out, _ = run_cli("qecc", "t-gadget")
        document = json.loads(out)
        assert code == 0
        assert document["matches"] is True
        assert [b["outcome"] for b in document["branches"]] == [0, 1]

    @pytest.mark.parametrize("state", ["0", "1", "plus", "minus", "plus-i", "minus-i"])
    def test_t_gadget_named_states(self, run_cli, state):
        """Every named state can be passed on the command line."""
        code, out, _ = run_cli("qecc", "t-gadget", "--state", state)
        assert code == 0
        assert json.loads(out)["matches"] is True

    def test_t_gadget_angles(self, run_cli):
        """Bloch angles override the named state."""
        code, out, _ = run_cli("qecc", "t-gadget", "--theta", "1.1", "--phi", "0.3")
        assert code == 0
        assert json.loads(out)["matches"] is True


class TestConcat:
    """Test suite for the concat command."""

    def test_gap(self, run_cli):
        """c·p23 = 0.9 and δ = 2 give a gap of three levels."""
        code, out, _ = run_cli("concat", "gap", "--cp23", "0.9", "--delta", "2")
        assert code == 0
        assert json.loads(out)["gap"] == 3

    def test_gap_with_oracle(self, run_cli):
        """The closed form and the oracle agree for c·p23 = 0.5, δ = 2, k2 = 3."""
        code, out, _ = run_cli("concat", "gap", "--cp23", "0.5", "--delta", "2", "--k2", "3")
        document = json.loads(out)
        assert code == 0
        assert document["k3"] == document["oracle_k3"] == 4

    def test_gap_negative_k2(self, run_cli):
        """A negative binary level count is a domain error."""
        code, out, err = run_cli("concat", "gap", "--cp23", "0.9", "--delta", "2", "--k2", "-1")
        assert code == 1
        assert out == ""
        assert "InvalidParameters" in err

    def test_levels(self, run_cli):
        """c = 36, p = 0.0138888 and ε = 1.74e-3 need two levels."""
        code, out, _ = run_cli("concat", "levels", "--c", "36", "--p", "0.0138888", "--epsilon", "1.74e-3")
        assert code == 0
        assert json.loads(out)["k"] == 2

    def test_levels_above_threshold(self, run_cli):
        """c·p >= 1 exits with status 1 and names the error."""
        code, out, err = run_cli("concat", "levels", "--c", "10", "--p", "0.2", "--epsilon", "1e-6")
        assert code == 1
        assert out == ""
        assert "AboveThreshold" in err

    def test_delta(self, run_cli):
        """Equal thresholds at k = 1 square the error ratio."""
        code, out, _ = run_cli("concat", "delta", "--c2", "5", "--p2", "0.05", "--c3", "5", "--p23", "0.1", "--k", "1")
        assert code == 0
        assert json.loads(out)["delta"] == pytest.approx(4)

    def test_hybrid(self, run_cli):
        """The worse species decides the common level count."""
        code, out, _ = run_cli(
            "concat", "hybrid", "--c2", "36", "--p2", "0.0138888", "--c3", "36", "--p23", "0.0138888",
            "--epsilon", "1.74e-3",
        )
        assert code == 0
        assert json.loads(out)["k"] == 2


class TestEstimate:
    """Test suite for the estimate command."""

    def test_qutrit_adder(self, run_cli):
        """n = 50 and κ_g = 2 give about 4542.28 gates."""
        code, out, _ = run_cli("estimate", "adder", "--n", "50", "--decomp", "qutrit", "--kappa", "2")
        document = json.loads(out)
        assert code == 0
        assert document["nft"] == pytest.approx(4542.28, abs=1e-2)
        assert set(document["census"]) == {"c1-ternary-cnot", "c2-ternary-cnot"}

    def test_qubit_metadata(self, run_cli):
        """The qubit table carries its discrepancy notes."""
        code, out, _ = run_cli("estimate", "adder", "--n", "50", "--decomp", "qubit")
        document = json.loads(out)
        assert code == 0
        assert document["metadata"]["total_constant"] == {"computed": -812, "printed": -798}
        assert document["nft"] == pytest.approx(19269.8, abs=0.1)

    def test_invalid_width(self, run_cli):
        """n = 1 exits with status 1."""
        code, _, err = run_cli("estimate", "adder", "--n", "1", "--decomp", "qutrit")
        assert code == 1
        assert "InvalidWidth" in err

    def test_qubit_table_below_min_width(self, run_cli):
        """Small widths need the composed census."""
        code, out, err = run_cli("estimate", "adder", "--n", "5", "--decomp", "qubit")
        assert code == 1
        assert out == ""
        assert "compositional" in err
        code, out, _ = run_cli("estimate", "adder", "--n", "5", "--decomp", "qubit", "--table-mode", "compositional")
        document = json.loads(out)
        assert code == 0
        assert all(count >= 0 for count in document["census"].values())

    def test_total_gates(self, run_cli):
        """The payload carries the summed census."""
        _, out, _ = run_cli("estimate", "adder", "--n", "50", "--decomp", "qutrit")
        document = json.loads(out)
        assert document["total_gates"] == pytest.approx(sum(document["census"].values()), rel=1e-5)

    def test_deterministic(self, run_cli):
        """Two estimates print identical bytes."""
        argv = ("estimate", "adder", "--n", "64", "--decomp", "qubit", "--count-mode", "exact", "--k", "2")
        _, first, _ = run_cli(*argv)
        _, second, _ = run_cli(*argv)
        assert first == second


class TestSim:
    """Test suite for the sim command."""

    def setup_method(self):
        """Write the qutrit Toffoli to a temporary circuit file."""
        self.tmpdir = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.tmpdir.name, "toffoli.json")
        with open(self.path, "w", encoding="utf-8") as f:
            f.write(serialize(decompose_toffoli_qutrit()))

    def teardown_method(self):
        """Remove the temporary directory."""
        self.tmpdir.cleanup()

    def test_run(self, run_cli):
        """|110> goes to |111>."""
        code, out, _ = run_cli("sim", "run", self.path, "--initial", "110")
        document = json.loads(out)
        assert code == 0
        assert list(document["amplitudes"]) == ["111"]
        assert document["depth"] == 3
        assert document["total_gates"] == 3

    def test_bad_digits(self, run_cli):
        """A digit too large for its wire is rejected."""
        code, _, err = run_cli("sim", "run", self.path, "--initial", "210")
        assert code == 1
        assert "InvalidBasisState" in err

    def test_missing_file(self, run_cli):
        """Unreadable files exit with status 1."""
        code, _, _ = run_cli("sim", "run", os.path.join(self.tmpdir.name, "absent.json"), "--initial", "000")
        assert code == 1


class TestGeneral:
    """Test suite for top-level behaviour."""

    def test_version(self, run_cli):
        """version prints the package version."""
        code, out, _ = run_cli("version")
        assert code == 0
        assert out.strip() == "qftlab version 0.1.0"

    def test_version_quiet(self, run_cli):
        """--quiet prints only the number."""
        _, out, _ = run_cli("--quiet", "version")
        assert out.strip() == "0.1.0"

    def test_no_subcommand(self, run_cli):
        """Running without a subcommand is a usage error."""
        code, _, err = run_cli()
        assert code == 2
        assert "usage" in err

    def test_help(self, run_cli):
        """help prints the full help and exits cleanly."""
        code, out, _ = run_cli("help")
        assert code == 0
        assert "reproduce" in out

    def test_float_digits_env(self, run_cli, monkeypatch):
        """QFT_LAB_FLOAT_DIGITS changes printed precision."""
        monkeypatch.setenv(FLOAT_DIGITS_ENV, "3")
        _, out, _ = run_cli("estimate", "adder", "--n", "50", "--decomp", "qutrit", "--kappa", "2")
        assert json.loads(out)["nft"] == 4540.0


FUZZ_COMMANDS = {
    ("concat", "levels"): ["--c", "--p", "--epsilon"],
    ("concat", "gap"): ["--cp23", "--delta", "--k2"],
    ("concat", "delta"): ["--c2", "--p2", "--c3", "--p23", "--k"],
    ("concat", "hybrid"): ["--c2", "--p2", "--c3", "--p23", "--epsilon"],
    ("estimate", "adder"): ["--n", "--decomp", "--table-mode", "--count-mode", "--kappa", "--k"],
    ("reproduce", "fig4"): ["--n", "--kappa", "--k2", "--pairs"],
    ("qecc", "leakage"): ["--alpha", "--beta"],
}
FUZZ_VALUES = [
    "0", "1", "2", "3", "5", "36", "50", "-1", "0.5", "0.45", "0.01", "1e-3", "1e-300", "1e300",
    "nan", "inf", "x", "qubit", "qutrit", "exact", "compositional", "0.45:2", "2,3",
]


class TestExitCodes:
    """The exit status is 0 on success, 1 for domain errors and 2 for usage errors."""

    @pytest.mark.parametrize(
        "argv, expected",
        [
            (["concat", "levels", "--c", "36", "--p", "0.01", "--epsilon", "1e-6"], 0),
            (["concat", "levels", "--c", "36", "--p", "-0.01", "--epsilon", "1e-6"], 1),
            (["concat", "levels", "--c", "36", "--p", "nan", "--epsilon", "1e-6"], 2),
            (["concat", "levels", "--c", "36", "--p", "0.01"], 2),
            (["concat", "gap", "--cp23", "0.9", "--delta", "0"], 1),
            (["concat", "delta", "--c2", "1", "--p2", "0.1", "--c3", "1", "--p23", "0.5", "--k", "5000"], 1),
            (["estimate", "adder", "--n", "50", "--decomp", "qubit", "--kappa", "inf"], 2),
            (["estimate", "adder", "--n", "50", "--decomp", "qutrit", "--k", "1000"], 1),
            (["reproduce", "fig4", "--n", "50", "--pairs", "0.45"], 2),
            (["reproduce", "fig4", "--n", "50", "--k2", "-1"], 1),
            (["qecc", "t-gadget", "--state", "-i"], 2),
            (["--bogus"], 2),
        ],
    )
    def test_known_cases(self, run_cli, argv, expected):
        """Representative arguments map to their exit status."""
        code, _, err = run_cli(*argv)
        assert code == expected
        assert "Traceback" not in err

    def test_random_flags(self, run_cli):
        """Random flag subsets and values never escape the 0/1/2 contract."""
        rng = np.random.default_rng(99)
        commands = list(FUZZ_COMMANDS)
        for _ in range(300):
            command = commands[int(rng.integers(len(commands)))]
            argv = list(command)
            for flag in FUZZ_COMMANDS[command]:
                if rng.random() < 0.85:
                    argv += [flag, FUZZ_VALUES[int(rng.integers(len(FUZZ_VALUES)))]]
            if rng.random() < 0.05:
                argv.append("--unknown")
            code, out, err = run_cli(*argv)
            assert code in (0, 1, 2), argv
            assert "Traceback" not in err, argv
            if code == 0:
                assert out, argv
            elif code == 1:
                assert "Error:" in err, argv
            else:
                assert "usage" in err, argv
