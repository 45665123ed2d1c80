"""
Sweep Planning Operator (Logical Operator)

Validates a sweep configuration, routes coefficient dumps away from the
matrix-suite path, and expands every other sweep into one execution
instruction per CSV row.
"""
from typing import List

from agent.shared.state import BenchState, ExecutionInstruction, SweepConfig
from common.config_loader import get_section
from common.errors import ConfigError

SWEEPS = ("fp", "bp", "batch", "dim", "whiten", "coeffs")

SWEEP_METHODS = {
    "fp": {"mtp", "mpa", "ns", "ns_onevar", "spectral"},
    "bp": {"lyapunov", "ns_backward"},
    "batch": {"mpa_lya", "mtp_lya", "ns", "spectral_bs"},
    "dim": {"mpa_lya", "mtp_lya", "ns", "spectral_bs"},
    "whiten": {"mtp", "mpa", "ns", "ns_onevar", "spectral"},
    "coeffs": set(),
}

MIN_TIMING_REPS = 5  # timed sweeps

DEGREE_METHODS = {"mtp", "mpa"}
ITERATION_METHODS = {"ns", "ns_onevar"}


def _require_positive(config: SweepConfig, *keys: str):
    for key in keys:
        if config[key] < 1:
            raise ConfigError(f"{key} must be >= 1, got {config[key]}")


def _require_range(config: SweepConfig, key: str):
    values = config[key]
    if not values:
        raise ConfigError(f"{key} must not be empty")
    if any(value < 1 for value in values):
        raise ConfigError(f"{key} must hold positive integers, got {values}")


def validate_config(config: SweepConfig):
    """Raise ConfigError on any inconsistent setting of the chosen sweep."""
    sweep = config["sweep"]
    if sweep not in SWEEPS:
        raise ConfigError(f"unknown sweep '{sweep}', expected one of {', '.join(SWEEPS)}")
    if not config["targets"] or any(target not in ("sqrt", "isqrt") for target in config["targets"]):
        raise ConfigError(f"targets must be sqrt and/or isqrt, got {config['targets']}")
    if sweep == "coeffs":
        _require_positive(config, "degree_m", "degree_n")
        return

    _require_positive(config, "suite_size", "dim", "samples_factor")
    if config["reps"] < MIN_TIMING_REPS:
        raise ConfigError(f"reps must be >= {MIN_TIMING_REPS}, got {config['reps']}")
    unknown = sorted(set(config["methods"]) - SWEEP_METHODS[sweep])
    if not config["methods"] or unknown:
        raise ConfigError(f"methods {unknown or '[]'} are not available for the {sweep} sweep")
    if not config["epsilon"] > 0:
        raise ConfigError(f"epsilon must be > 0, got {config['epsilon']}")

    if sweep == "fp":
        if DEGREE_METHODS & set(config["methods"]):
            _require_range(config, "degrees")
        if "mpa" in config["methods"] and any(k < 3 or k % 2 == 0 for k in config["degrees"]):
            raise ConfigError(f"MPA degrees must be odd and >= 3, got {config['degrees']}")
        if ITERATION_METHODS & set(config["methods"]):
            _require_range(config, "iterations")
    elif sweep == "bp":
        _require_range(config, "lyapunov_iterations")
        _require_range(config, "iterations")
    elif sweep == "batch":
        _require_range(config, "batch_sizes")
    elif sweep == "dim":
        _require_range(config, "dims")


def classify_sweep_operator(state: BenchState) -> BenchState:
    """
    LangGraph node function: validate the configuration and record the sweep kind

    :param state: Bench state
    :return: Updated state (contains sweep)
    """
    config = state["config"]
    validate_config(config)
    new_state = state.copy()
    new_state["sweep"] = config["sweep"]
    return new_state


def route_sweep_condition(state: BenchState) -> str:
    """
    Routing condition function: "coeffs" for coefficient dumps, "suite" for everything else
    """
    return "coeffs" if state.get("sweep") == "coeffs" else "suite"


def _instruction(sweep: str, category: str, operator: str, target: str, param, **params) -> ExecutionInstruction:
    return ExecutionInstruction(sweep=sweep, category=category, operator=operator, target=target,
                                param=param, params=params)


def plan_instructions(config: SweepConfig) -> List[ExecutionInstruction]:
    """Expand a validated sweep into execution instructions, one per CSV row."""
    sweep = config["sweep"]
    targets = config["targets"]
    instructions: List[ExecutionInstruction] = []

    if sweep == "fp":
        for method in config["methods"]:
            if method in DEGREE_METHODS:
                grid = [("degree_k", k) for k in config["degrees"]]
            elif method in ITERATION_METHODS:
                grid = [("iterations", n) for n in config["iterations"]]
            else:
                grid = [(None, 0)]
            for key, param in grid:
                for target in targets:
                    if method == "ns_onevar" and target != "isqrt":
                        continue
                    params = {key: param} if key else {}
                    instructions.append(_instruction(sweep, "forward", method, target, param, **params))

    elif sweep == "bp":
        for method in config["methods"]:
            grid = config["lyapunov_iterations"] if method == "lyapunov" else config["iterations"]
            for param in grid:
                for target in targets:
                    instructions.append(_instruction(sweep, "backward", method, target, param, iterations=param))

    elif sweep == "batch":
        for method in config["methods"]:
            for size in config["batch_sizes"]:
                for target in targets:
                    instructions.append(_instruction(sweep, "pipeline", method, target, size, batch=size))

    elif sweep == "dim":
        for method in config["methods"]:
            for dim in config["dims"]:
                for target in targets:
                    instructions.append(_instruction(sweep, "pipeline", method, target, dim, dim=dim))

    elif sweep == "whiten":
        forward = get_section("forward")
        for method in config["methods"]:
            if method in DEGREE_METHODS:
                params = {"degree_k": int(forward["degree"])}
            elif method in ITERATION_METHODS:
                params = {"iterations": int(forward["iterations"])}
            else:
                params = {}
            param = next(iter(params.values()), 0)
            instructions.append(_instruction(sweep, "forward", method, "isqrt", param, **params))

    return instructions


def plan_instructions_operator(state: BenchState) -> BenchState:
    """
    LangGraph node function: compose the execution plan of a matrix sweep

    :param state: Bench state
    :return: Updated state (contains instructions)
    """
    new_state = state.copy()
    new_state["instructions"] = plan_instructions(state["config"])
    new_state["executed_count"] = 0
    return new_state
