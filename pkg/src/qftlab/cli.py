"""Command-line interface for qftlab."""

import argparse
import logging
import sys

import numpy as np

from qftlab import concat, experiments, resources
from qftlab.circuit import gate_census
from qftlab.circuit_parser import CircuitParser, circuit_to_dict
from qftlab.codes import CODE_NAMES, get_code
from qftlab.common import perror
from qftlab.decompositions import decompose_toffoli_clifford_t, decompose_toffoli_qutrit, matches_toffoli
from qftlab.errors import QftLabError
from qftlab.report_builder import emit_csv, emit_json
from qftlab.simulator import PRUNE_THRESHOLD, StateVector, apply_circuit, init_state
from qftlab.version import print_version

TWO_WIRE_GATES = ("CNOT", "c1-ternary-cnot", "c2-ternary-cnot")
NAMED_STATES = {
    "0": (1, 0),
    "1": (0, 1),
    "plus": (1 / np.sqrt(2), 1 / np.sqrt(2)),
    "minus": (1 / np.sqrt(2), -1 / np.sqrt(2)),
    "plus-i": (1 / np.sqrt(2), 1j / np.sqrt(2)),
    "minus-i": (1 / np.sqrt(2), -1j / np.sqrt(2)),
}


class HelpException(Exception):
    """Exception raised to trigger help display."""


class ArgumentParserWithDefaults(argparse.ArgumentParser):
    """Argument parser with default value handling."""

    def add_argument(self, *args, help_text=None, default=None, **kwargs):
        """Add an argument with help text and default value."""
        if help_text is not None:
            kwargs['help'] = help_text
        if default is not None and args[0] != '-h':
            kwargs['default'] = default
            if help_text is not None and help_text != "==SUPPRESS==":
                kwargs['help'] += f' (default: {default})'
        return super().add_argument(*args, **kwargs)


def get_description():
    """Get the description for the CLI tool."""
    return """\
Fault-tolerance verification and gate-count modelling for hybrid qubit-qutrit circuits
"""


def configure_arguments(parser):
    """Configure the command-line arguments for the parser."""
    verbosity_group = parser.add_mutually_exclusive_group()
    verbosity_group.add_argument(
        "--debug",
        action="store_true",
        help="display debug messages",
    )
    verbosity_group.add_argument("--quiet", "-q", dest="quiet", action="store_true", help="reduce output.")


def create_argument_parser(description):
    """Create and configure the argument parser."""
    parser = ArgumentParserWithDefaults(
        prog="qftlab",
        description=description,
        formatter_class=argparse.RawTextHelpFormatter,
    )
    configure_arguments(parser)
    return parser


def output_option(parser):
    """Add the -o/--output option shared by every payload-producing command."""
    parser.add_argument("-o", "--output", help_text="Also write the payload to this file")


def post_parse_setup(args):
    """Route library logging to stderr at the verbosity the flags ask for."""
    if getattr(args, "debug", False):
        level = logging.DEBUG
    elif getattr(args, "quiet", False):
        level = logging.ERROR
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def finite_float(text):
    """Parse a finite number; nan and inf are rejected."""
    try:
        value = float(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from e
    if not np.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def float_list(text):
    """Parse a comma-separated list of finite numbers."""
    return [finite_float(item) for item in text.split(",") if item]


def int_list(text):
    """Parse a comma-separated list of integers."""
    try:
        return [int(item) for item in text.split(",") if item]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def pair_list(text):
    """Parse ``cp:delta`` pairs separated by commas, e.g. ``0.45:2,0.1:5``."""
    pairs = []
    for item in text.split(","):
        try:
            cp, delta = item.split(":")
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"expected cp:delta pairs, got {item!r}") from e
        pairs.append((finite_float(cp), finite_float(delta)))
    return pairs


def amplitude_map(state):
    """Nonzero amplitudes keyed by their digit string."""
    result = {}
    for index in np.flatnonzero(np.abs(state.amplitudes) > PRUNE_THRESHOLD):
        digits = np.unravel_index(index, state.radices)
        result["".join(str(int(d)) for d in digits)] = complex(state.amplitudes[index])
    return result


def reproduce_cli(args):
    """Emit the level-gap table or the size-comparison sweep as CSV."""
    if args.target == "table1":
        rows = [(r.cp23, r.delta, r.cp2, r.gap) for r in concat.concat_gap_table()]
        emit_csv(["cp23", "delta", "cp2", "gap"], rows, args.output)
        return
    if args.n is None:
        raise argparse.ArgumentTypeError("reproduce fig4 requires --n")
    data = resources.fig4_data(
        args.n,
        kappa_list=args.kappa or resources.FIG4_KAPPAS,
        k2_list=args.k2 or resources.FIG4_K2S,
        line_pairs=args.pairs or resources.FIG4_LINE_PAIRS,
    )
    rows = [(r.n, r.kind, r.kappa, r.k2, r.cp2, r.delta, r.value) for r in data]
    emit_csv(["n", "kind", "kappa", "k2", "cp2", "delta", "value"], rows, args.output)


def reproduce_parser(subparsers):
    """Configure the reproduce subcommand parser."""
    parser = subparsers.add_parser("reproduce", help="Reproduce the level-gap table or the size-comparison sweep")
    parser.add_argument("target", choices=["table1", "fig4"], help="Which table to emit")
    parser.add_argument("--n", type=int, help="Adder width (fig4 only)")
    parser.add_argument("--kappa", type=float_list, help="κ_g values, comma-separated (fig4)")
    parser.add_argument("--k2", type=int_list, help="Binary concatenation levels, comma-separated (fig4)")
    parser.add_argument("--pairs", type=pair_list, help="c·p2:δ pairs for the lines, comma-separated (fig4)")
    output_option(parser)
    parser.set_defaults(func=reproduce_cli)


def decompose_cli(args):
    """Emit a Toffoli decomposition as circuit JSON."""
    if args.mode == "clifford-t":
        circuit = decompose_toffoli_clifford_t()
    else:
        circuit = decompose_toffoli_qutrit()
    payload = circuit_to_dict(circuit)
    if args.verify:
        matches = matches_toffoli(circuit)
        payload["unitary_matches_toffoli"] = matches
        emit_json(payload, args.output)
        if not matches:
            perror(f"Error: the {args.mode} decomposition does not reproduce Toffoli")
            sys.exit(1)
        return
    emit_json(payload, args.output)


def decompose_parser(subparsers):
    """Configure the decompose subcommand parser."""
    parser = subparsers.add_parser("decompose", help="Decompose a gate into a circuit")
    parser.add_argument("gate", choices=["toffoli"], help="Gate to decompose")
    parser.add_argument(
        "--mode", choices=["clifford-t", "qutrit"], default="clifford-t", help_text="Decomposition to emit"
    )
    parser.add_argument("--verify", action="store_true", help="Compare the circuit unitary with Toffoli")
    output_option(parser)
    parser.set_defaults(func=decompose_cli)


def leakage_cli(args):
    """Run the leakage experiment."""
    result = experiments.leakage_experiment(args.alpha, args.beta)
    emit_json(
        {
            "final": amplitude_map(result.final),
            "leaked": result.leaked,
            "in_binary_codespace": result.in_binary_codespace,
        },
        args.output,
    )


def shor_cnot_cli(args):
    """Run the transversal CNOT between Shor blocks."""
    result = experiments.shor_cnot_experiment()
    emit_json(
        {
            "control_out": amplitude_map(result.control_out),
            "target_out": amplitude_map(result.target_out),
            "control_in_codespace": result.control_in_codespace,
            "control_in_block_span": result.control_in_block_span,
            "target_unchanged": result.target_unchanged,
        },
        args.output,
    )


def transversal_cli(args):
    """Check a transversal two-wire gate between two codes."""
    report = experiments.transversal_check(
        get_code(args.ctrl), get_code(args.tgt), args.gate, args.expect, phase_mode=args.phase_mode
    )
    payload = {"matches": report.logical_action_matches}
    payload.update(report.to_dict())
    emit_json(payload, args.output)


def gadget_input(args):
    """Single-qubit input of the T gadget, from a named state or Bloch angles."""
    if args.theta is not None:
        phi = args.phi or 0.0
        amplitudes = [np.cos(args.theta / 2), np.exp(1j * phi) * np.sin(args.theta / 2)]
    else:
        amplitudes = NAMED_STATES[args.state]
    return StateVector((2,), np.array(amplitudes, dtype=complex))


def t_gadget_cli(args):
    """Run the T gadget on every measurement branch."""
    branches = experiments.t_gadget_branches(gadget_input(args))
    emit_json(
        {
            "matches": all(b.matches for b in branches),
            "branches": [
                {
                    "outcome": b.outcome,
                    "probability": b.probability,
                    "output": amplitude_map(b.output),
                    "matches": b.matches,
                }
                for b in branches
            ],
        },
        args.output,
    )


def qecc_parser(subparsers):
    """Configure the qecc subcommand parser."""
    parser = subparsers.add_parser("qecc", help="Run error-correction verification experiments")
    experiments_parsers = parser.add_subparsers(dest="experiment")
    experiments_parsers.required = True

    leakage = experiments_parsers.add_parser("leakage", help="Bit flip on a binary block sitting in |2>")
    leakage.add_argument("--alpha", type=finite_float, default=0.6, help_text="Amplitude of |000>")
    leakage.add_argument("--beta", type=finite_float, default=0.8, help_text="Amplitude of |111>")
    output_option(leakage)
    leakage.set_defaults(func=leakage_cli)

    shor = experiments_parsers.add_parser("shor-cnot", help="Transversal ternary CNOT between Shor blocks")
    output_option(shor)
    shor.set_defaults(func=shor_cnot_cli)

    transversal = experiments_parsers.add_parser("transversal", help="Brute-force transversality check")
    transversal.add_argument("--ctrl", required=True, choices=CODE_NAMES, help="Control code")
    transversal.add_argument("--tgt", required=True, choices=CODE_NAMES, help="Target code")
    transversal.add_argument("--gate", required=True, choices=TWO_WIRE_GATES, help="Physical gate")
    transversal.add_argument("--expect", required=True, choices=TWO_WIRE_GATES, help="Expected logical gate")
    transversal.add_argument(
        "--phase-mode", choices=experiments.PHASE_MODES, default="strict", help_text="Global phase handling"
    )
    output_option(transversal)
    transversal.set_defaults(func=transversal_cli)

    gadget = experiments_parsers.add_parser("t-gadget", help="T gate by measurement and correction")
    gadget.add_argument("--state", choices=list(NAMED_STATES), default="plus", help_text="Named input state")
    gadget.add_argument("--theta", type=finite_float, help="Bloch polar angle (overrides --state)")
    gadget.add_argument("--phi", type=finite_float, help="Bloch azimuthal angle")
    output_option(gadget)
    gadget.set_defaults(func=t_gadget_cli)


def concat_levels_cli(args):
    """Levels needed to reach a target accuracy."""
    k = concat.levels_for_accuracy(args.c, args.p, args.epsilon)
    accuracy = concat.accuracy_after_levels(args.c, args.p, k)
    emit_json({"k": k, "epsilon": args.epsilon, "accuracy": accuracy}, args.output)


def concat_gap_cli(args):
    """Level gap between binary and ternary code for equal inverse thresholds."""
    params = concat.NoiseParams.from_delta(c2=1.0, p2=args.cp23 / args.delta, c3=1.0, delta=args.delta)
    k3 = concat.k3_for_same_accuracy(params, args.k2)
    oracle = concat.min_levels_oracle(params, args.k2)
    emit_json(
        {"gap": k3 - args.k2, "k2": args.k2, "k3": k3, "oracle_k3": oracle, "cp23": args.cp23, "delta": args.delta},
        args.output,
    )


def concat_delta_cli(args):
    """Error-rate ratio that equal level counts tolerate."""
    params = concat.NoiseParams(c2=args.c2, p2=args.p2, c3=args.c3, p23=args.p23)
    emit_json({"delta": concat.delta_for_equal_levels(params, args.k), "k": args.k}, args.output)


def concat_hybrid_cli(args):
    """Common level count of a hybrid circuit."""
    params = concat.NoiseParams(c2=args.c2, p2=args.p2, c3=args.c3, p23=args.p23, epsilon=args.epsilon)
    emit_json({"k": concat.hybrid_required_levels(params), "epsilon": args.epsilon}, args.output)


def noise_options(parser):
    """Add the qubit and qutrit noise flags."""
    parser.add_argument("--c2", type=finite_float, required=True, help="Inverse threshold of the binary code")
    parser.add_argument("--p2", type=finite_float, required=True, help="Qubit error probability")
    parser.add_argument("--c3", type=finite_float, required=True, help="Inverse threshold of the ternary code")
    parser.add_argument("--p23", type=finite_float, required=True, help="Qutrit error probability")


def concat_parser(subparsers):
    """Configure the concat subcommand parser."""
    parser = subparsers.add_parser("concat", help="Concatenation-level calculator")
    queries = parser.add_subparsers(dest="query")
    queries.required = True

    levels = queries.add_parser("levels", help="Levels for a target accuracy")
    levels.add_argument("--c", type=finite_float, required=True, help="Inverse threshold")
    levels.add_argument("--p", type=finite_float, required=True, help="Physical error probability")
    levels.add_argument("--epsilon", type=finite_float, required=True, help="Target accuracy")
    output_option(levels)
    levels.set_defaults(func=concat_levels_cli)

    gap = queries.add_parser("gap", help="Level gap k3 - k2 for equal inverse thresholds")
    gap.add_argument("--cp23", type=finite_float, required=True, help="c·p23")
    gap.add_argument("--delta", type=finite_float, required=True, help="p23 / p2")
    gap.add_argument("--k2", type=int, default=0, help_text="Binary levels")
    output_option(gap)
    gap.set_defaults(func=concat_gap_cli)

    delta = queries.add_parser("delta", help="δ for equal level counts")
    noise_options(delta)
    delta.add_argument("--k", type=int, required=True, help="Level count")
    output_option(delta)
    delta.set_defaults(func=concat_delta_cli)

    hybrid = queries.add_parser("hybrid", help="Common level count of a hybrid circuit")
    noise_options(hybrid)
    hybrid.add_argument("--epsilon", type=finite_float, required=True, help="Target accuracy")
    output_option(hybrid)
    hybrid.set_defaults(func=concat_hybrid_cli)


def estimate_cli(args):
    """Gate census and fault-tolerant total of the in-place adder."""
    census = resources.adder_census(args.n, args.decomp, args.table_mode, args.count_mode)
    model = resources.steane_cost_model(args.kappa)
    payload = {
        "n": args.n,
        "mode": args.decomp,
        "table_mode": args.table_mode,
        "count_mode": args.count_mode,
        "kappa": args.kappa,
        "k": args.k,
        "census": dict(census),
        "total_gates": census.total(),
        "nft": resources.nft(census, model, args.k),
        "metadata": resources.census_metadata(args.decomp, args.table_mode),
    }
    emit_json(payload, args.output)


def estimate_parser(subparsers):
    """Configure the estimate subcommand parser."""
    parser = subparsers.add_parser("estimate", help="Fault-tolerant gate counts")
    parser.add_argument("circuit", choices=["adder"], help="Circuit family")
    parser.add_argument("--n", type=int, required=True, help="Register width")
    parser.add_argument("--decomp", choices=resources.DECOMPOSITIONS, required=True, help="Toffoli decomposition")
    parser.add_argument(
        "--table-mode", choices=resources.TABLE_MODES, default="paper-table", help_text="Qubit census source"
    )
    parser.add_argument(
        "--count-mode", choices=resources.COUNT_MODES, default="paper-simplified", help_text="Toffoli count formula"
    )
    parser.add_argument("--kappa", type=finite_float, default=1.0, help_text="κ_g of the 2-controlled ternary CNOT")
    parser.add_argument("--k", type=int, default=1, help_text="Concatenation levels")
    output_option(parser)
    parser.set_defaults(func=estimate_cli)


def sim_run_cli(args):
    """Simulate a circuit file from a basis state."""
    circuit = CircuitParser().parse_file(args.circuit)
    final = apply_circuit(circuit, init_state(circuit.radices, args.initial))
    census = gate_census(circuit)
    emit_json(
        {
            "radices": circuit.radices,
            "initial": args.initial,
            "depth": circuit.depth,
            "census": dict(census),
            "total_gates": census.total(),
            "amplitudes": amplitude_map(final),
        },
        args.output,
    )


def sim_parser(subparsers):
    """Configure the sim subcommand parser."""
    parser = subparsers.add_parser("sim", help="Statevector simulation")
    actions = parser.add_subparsers(dest="action")
    actions.required = True
    run = actions.add_parser("run", help="Run a circuit JSON file")
    run.add_argument("circuit", help="Path to the circuit JSON")
    run.add_argument("--initial", required=True, help="Initial basis digits, wire 0 first")
    output_option(run)
    run.set_defaults(func=sim_run_cli)


def version_parser(subparsers):
    """Configure the version subcommand parser."""
    parser = subparsers.add_parser("version", help="Show the qftlab version information")
    parser.set_defaults(func=print_version)


def help_cli(args):
    """Handle the help command by raising HelpException."""
    raise HelpException()


def help_parser(subparsers):
    """Configure the help subcommand parser."""
    parser = subparsers.add_parser("help")
    parser.set_defaults(func=help_cli)


def configure_subcommands(parser):
    """Add subcommand parsers to the main argument parser."""
    subparsers = parser.add_subparsers(dest="subcommand", parser_class=ArgumentParserWithDefaults)
    subparsers.required = False
    reproduce_parser(subparsers)
    decompose_parser(subparsers)
    qecc_parser(subparsers)
    concat_parser(subparsers)
    estimate_parser(subparsers)
    sim_parser(subparsers)
    help_parser(subparsers)
    version_parser(subparsers)


def parse_arguments(parser):
    """Parse command line arguments."""
    return parser.parse_args()


def init_cli():
    """Initialize the CLI by setting up argument parser and parsing arguments."""
    description = get_description()
    parser = create_argument_parser(description)
    configure_subcommands(parser)
    args = parse_arguments(parser)
    post_parse_setup(args)
    return parser, args


def main():
    """Main entry point for the CLI application."""
    parser, args = init_cli()

    def eprint(e, exit_code):
        perror("Error: " + str(e).strip("'\""))
        sys.exit(exit_code)

    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        perror("qftlab: requires a subcommand")
        sys.exit(2)

    try:
        args.func(args)
    except HelpException:
        parser.print_help()
        sys.exit(0)
    except argparse.ArgumentTypeError as e:
        parser.print_usage(sys.stderr)
        eprint(e, 2)
    except QftLabError as e:
        if args.debug:
            raise
        eprint(f"{type(e).__name__}: {e}", 1)
    except KeyboardInterrupt:
        sys.exit(0)
    except (ValueError, ArithmeticError, OSError) as e:
        if args.debug:
            raise
        eprint(e, 1)
