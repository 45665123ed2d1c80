"""
Bench Agent

Entry point of the benchmark CLI. Parses the flags, selects operators from the
unified operator pool (UOP) and composes them into an execution plan
(LangGraph StateGraph):

    classify_sweep -> coeffs: dump_coeffs -> emit_csv
                   -> suite:  plan -> generate_suite -> instruction_router <-> execute_instruction
                              -> order_records -> emit_csv

Usage:
    python -m agent.benchAgent.BenchAgent --sweep fp --dim 64 --suite-size 100
"""
import argparse
import os
import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

from typing import List, Optional

from langgraph.graph import StateGraph

from agent.executionAgent.ExecutionAgent import ExecutionAgent
from agent.shared.state import BenchState, SweepConfig, get_init_bench_state
from common.config_loader import get_section, get_thread_count
from common.errors import ConfigError, MatRootError
from common.logger import banner, get_logger
from operators import OPERATOR_REGISTRY, get_operator
from operators.bench.sweep_planner import SWEEPS, plan_instructions

logger = get_logger("BenchAgent")

TARGET_CHOICES = {"sqrt": ["sqrt"], "isqrt": ["isqrt"], "both": ["sqrt", "isqrt"]}


class BenchArgumentParser(argparse.ArgumentParser):
    """argparse parser reporting bad flags as ConfigError instead of exiting."""

    def error(self, message):
        raise ConfigError(message)


def _int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got '{text}'") from None


def _name_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def build_parser() -> BenchArgumentParser:
    parser = BenchArgumentParser(prog="matroot", description="Matrix square root / inverse square root benchmarks")
    parser.add_argument("--sweep", required=True, choices=SWEEPS)
    parser.add_argument("--dim", type=int)
    parser.add_argument("--batch", type=_int_list, help="batch sizes of the batch sweep, e.g. 1,4,16,64")
    parser.add_argument("--suite-size", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--reps", type=int)
    parser.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    parser.add_argument("--methods", type=_name_list)
    parser.add_argument("--target", choices=sorted(TARGET_CHOICES))
    parser.add_argument("--degrees", type=_int_list, help="MTP / MPA degrees of the fp sweep")
    parser.add_argument("--iterations", type=_int_list, help="Newton-Schulz iteration counts")
    parser.add_argument("--lyapunov-iterations", type=_int_list)
    parser.add_argument("--dims", type=_int_list, help="dimensions of the dim sweep")
    parser.add_argument("--degree-m", type=int)
    parser.add_argument("--degree-n", type=int)
    parser.add_argument("--samples-factor", type=int)
    parser.add_argument("--epsilon", type=float)
    parser.add_argument("--threads", type=int, help="worker threads, 0 = one per CPU")
    return parser


def resolve_config(args: argparse.Namespace) -> SweepConfig:
    """Merge parsed flags over the bench section of config.yaml."""
    bench = get_section("bench")

    def pick(value, key):
        return bench[key] if value is None else value

    threads = get_thread_count() if args.threads is None else args.threads
    if threads < 0:
        raise ConfigError(f"--threads must be >= 0, got {threads}")
    methods = args.methods if args.methods is not None else list(bench["methods"].get(args.sweep, []))

    return SweepConfig(
        sweep=args.sweep,
        suite_size=int(pick(args.suite_size, "suite_size")),
        dim=int(pick(args.dim, "dim")),
        seed=int(pick(args.seed, "seed")),
        reps=int(pick(args.reps, "reps")),
        samples_factor=int(pick(args.samples_factor, "samples_factor")),
        epsilon=float(pick(args.epsilon, "epsilon")),
        threads=threads or os.cpu_count() or 1,
        methods=methods,
        targets=TARGET_CHOICES[pick(args.target, "target")],
        degrees=list(pick(args.degrees, "degrees")),
        iterations=list(pick(args.iterations, "iterations")),
        lyapunov_iterations=list(pick(args.lyapunov_iterations, "lyapunov_iterations")),
        batch_sizes=list(pick(args.batch, "batch_sizes")),
        dims=list(pick(args.dims, "dims")),
        degree_m=int(pick(args.degree_m, "degree_m")),
        degree_n=int(pick(args.degree_n, "degree_n")),
        out=args.out,
    )


class BenchAgent:
    """
    Bench Agent: selects operators from the unified operator pool (UOP) and
    composes the benchmark execution plan.

    Responsibilities:
    - Classify the sweep (coefficient dump or matrix suite)
    - Plan one execution instruction per CSV row
    - Hand instructions to the Execution Agent, then order and emit the records
    """

    def __init__(self, threads: int = 1):
        self.execution_agent = ExecutionAgent(threads=threads)
        # Operator registry (UOP - Unified Operator Pool)
        self.operator_registry = OPERATOR_REGISTRY

    def classify_sweep(self, state: BenchState) -> BenchState:
        logger.info(banner("BenchAgent"))
        result_state = get_operator("bench", "sweep_classifier")(state)
        logger.info("Sweep: %s", result_state["sweep"])
        return result_state

    def plan(self, state: BenchState) -> BenchState:
        result_state = get_operator("bench", "sweep_planner")(state)
        logger.info("Planned %d instructions", len(result_state["instructions"]))
        return result_state

    def emit(self, state: BenchState) -> BenchState:
        result_state = get_operator("bench", "csv_emitter")(state)
        logger.info("Wrote %d rows to %s", len(result_state["rows"]),
                    "stdout" if result_state["output"] == "-" else result_state["output"])
        return result_state

    def _select_operators(self):
        """Select operators from operator pool to build the execution plan."""
        return {
            "sweep_classifier": self.classify_sweep,
            "sweep_router": get_operator("bench", "sweep_router"),
            "coeff_dumper": get_operator("bench", "coeff_dumper"),
            "sweep_planner": self.plan,
            # Execution operators (called through Execution Agent)
            "suite_generator": self.execution_agent.generate_suite,
            "instruction_router": get_operator("bench", "instruction_router"),
            "instruction_router_condition": get_operator("bench", "instruction_router_condition"),
            "instruction_executor": self.execution_agent.execute_instruction,
            "record_sorter": get_operator("bench", "record_sorter"),
            "csv_emitter": self.emit,
        }

    def build_graph(self):
        operators = self._select_operators()

        graph = StateGraph(BenchState)
        graph.add_node("classify_sweep", operators["sweep_classifier"])
        graph.add_node("dump_coeffs", operators["coeff_dumper"])
        graph.add_node("plan", operators["sweep_planner"])
        graph.add_node("generate_suite", operators["suite_generator"])
        graph.add_node("instruction_router", operators["instruction_router"])
        graph.add_node("execute_instruction", operators["instruction_executor"])
        graph.add_node("order_records", operators["record_sorter"])
        graph.add_node("emit_csv", operators["csv_emitter"])

        graph.set_entry_point("classify_sweep")
        graph.add_conditional_edges("classify_sweep", operators["sweep_router"], {
            "coeffs": "dump_coeffs",
            "suite": "plan",
        })
        graph.add_edge("dump_coeffs", "emit_csv")

        graph.add_edge("plan", "generate_suite")
        graph.add_edge("generate_suite", "instruction_router")
        graph.add_edge("execute_instruction", "instruction_router")
        graph.add_conditional_edges("instruction_router", operators["instruction_router_condition"], {
            "continue": "execute_instruction",
            "done": "order_records",
        })
        graph.add_edge("order_records", "emit_csv")

        graph.set_finish_point("emit_csv")
        return graph.compile()

    def run(self, config: SweepConfig) -> BenchState:
        state = get_init_bench_state(config)
        # Each instruction visits instruction_router and execute_instruction once
        planned = len(plan_instructions(config))
        graph = self.build_graph()
        return graph.invoke(state, {"recursion_limit": 2 * planned + 20})


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = resolve_config(args)
        BenchAgent(threads=config["threads"]).run(config)
    except (MatRootError, OSError, KeyError) as exc:
        message = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
        print(f"matroot: error: {message}", file=sys.stderr)
        return 2
    return 0


if __name__ == '__main__':
    sys.exit(main())
