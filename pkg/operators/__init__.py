"""
Unified Operator Pool (UOP)

Every numerical building block and every step of the benchmark harness is
registered here and resolved by name, so agents compose execution plans from
the pool instead of importing concrete functions.

Operator classification:
- Numerical operators: forward approximants, gradient solvers, exact oracles, error metrics
- Logical operators: sweep classification, planning, instruction routing, record writing
"""
import importlib
from typing import Any, Callable, Dict, Optional

# Operator registry: Records all available operators
OPERATOR_REGISTRY: Dict[str, Dict[str, Any]] = {
    # Forward approximants of A^{1/2} / A^{-1/2}
    "forward": {
        "mtp": {
            "name": "Matrix Taylor Polynomial Operator",
            "type": "numerical",
            "module": "operators.forward.mtp",
            "function": "mtp",
            "description": "Truncated binomial series in Z = I - A/||A||_F, K-1 matmuls"
        },
        "mpa": {
            "name": "Matrix Padé Approximant Operator",
            "type": "numerical",
            "module": "operators.forward.mpa",
            "function": "mpa",
            "description": "Diagonal Padé approximant evaluated through one linear solve"
        },
        "ns": {
            "name": "Coupled Newton-Schulz Operator",
            "type": "numerical",
            "module": "operators.forward.newton_schulz",
            "function": "ns_coupled",
            "description": "Coupled Newton-Schulz iteration returning both A^{1/2} and A^{-1/2}"
        },
        "ns_onevar": {
            "name": "One-variable Newton-Schulz Operator",
            "type": "numerical",
            "module": "operators.forward.newton_schulz",
            "function": "ns_onevar",
            "description": "Newton-Schulz iteration on Z alone, A^{-1/2} only"
        },
        "spectral": {
            "name": "Spectral Oracle Operator",
            "type": "numerical",
            "module": "operators.forward.spectral",
            "function": "spectral",
            "description": "Exact U diag(lambda^{+-1/2}) U^T through the Jacobi eigensolver"
        }
    },
    # Gradient solvers
    "backward": {
        "lyapunov": {
            "name": "Iterative Lyapunov Gradient Operator",
            "type": "numerical",
            "module": "operators.backward.lyapunov",
            "function": "lyapunov_grad",
            "description": "Coupled sign-function iteration for the gradient Lyapunov equation"
        },
        "ns_backward": {
            "name": "Newton-Schulz Reverse-mode Operator",
            "type": "numerical",
            "module": "operators.backward.ns_backward",
            "function": "ns_backward",
            "description": "Reverse mode through the stored coupled Newton-Schulz iterates"
        },
        "sign_block": {
            "name": "Block Sign-function Operator",
            "type": "numerical",
            "module": "operators.backward.sign_function",
            "function": "lyapunov_sign_block",
            "description": "Lyapunov solution from sign([[B, C], [0, -B]])"
        }
    },
    # Exact Lyapunov oracles
    "oracle": {
        "bartels_stewart": {
            "name": "Bartels-Stewart Operator",
            "type": "numerical",
            "module": "operators.backward.bartels_stewart",
            "function": "bartels_stewart",
            "description": "Exact Lyapunov solve in the eigenbasis of B"
        },
        "kron_solve": {
            "name": "Kronecker Closed-form Operator",
            "type": "numerical",
            "module": "operators.backward.bartels_stewart",
            "function": "kron_solve",
            "description": "Dense solve of (B (x) I + I (x) B) vec X = vec C, dim <= 8"
        },
        "finite_diff": {
            "name": "Finite-difference Gradient Operator",
            "type": "numerical",
            "module": "operators.diffcheck.finite_diff",
            "function": "finite_diff_grad",
            "description": "Central differences of <G, f(A)> under symmetric perturbation"
        }
    },
    # Forward + backward pipelines
    "pipeline": {
        "mpa_lya": {
            "name": "MPA + Lyapunov Pipeline",
            "type": "numerical",
            "module": "operators.bench.pipelines",
            "function": "mpa_lya",
            "description": "MPA forward with the iterative Lyapunov backward"
        },
        "mtp_lya": {
            "name": "MTP + Lyapunov Pipeline",
            "type": "numerical",
            "module": "operators.bench.pipelines",
            "function": "mtp_lya",
            "description": "MTP forward with the iterative Lyapunov backward"
        },
        "ns": {
            "name": "Newton-Schulz Pipeline",
            "type": "numerical",
            "module": "operators.bench.pipelines",
            "function": "ns_pipeline",
            "description": "Coupled Newton-Schulz forward with reverse-mode backward"
        },
        "spectral_bs": {
            "name": "Spectral + Bartels-Stewart Pipeline",
            "type": "numerical",
            "module": "operators.bench.pipelines",
            "function": "spectral_bs",
            "description": "Exact spectral forward with the Bartels-Stewart backward"
        }
    },
    # Benchmark harness (logical operators)
    "bench": {
        "sweep_classifier": {
            "name": "Sweep Classification Operator",
            "type": "logical",
            "module": "operators.bench.sweep_planner",
            "function": "classify_sweep_operator",
            "description": "Validate the sweep configuration and record the sweep kind"
        },
        "sweep_router": {
            "name": "Sweep Routing Operator",
            "type": "logical",
            "module": "operators.bench.sweep_planner",
            "function": "route_sweep_condition",
            "description": "Route coefficient dumps away from the matrix-suite path"
        },
        "sweep_planner": {
            "name": "Sweep Planning Operator",
            "type": "logical",
            "module": "operators.bench.sweep_planner",
            "function": "plan_instructions_operator",
            "description": "Expand a sweep into one execution instruction per CSV row"
        },
        "instruction_router": {
            "name": "Instruction Routing Operator",
            "type": "logical",
            "module": "operators.bench.instruction_router",
            "function": "instruction_router_step",
            "description": "Select the next instruction to execute"
        },
        "instruction_router_condition": {
            "name": "Instruction Routing Condition Operator",
            "type": "logical",
            "module": "operators.bench.instruction_router",
            "function": "route_instruction_condition",
            "description": "Determine if there are more instructions to execute"
        },
        "coeff_dumper": {
            "name": "Coefficient Dump Operator",
            "type": "logical",
            "module": "operators.bench.record_writer",
            "function": "dump_coeffs_operator",
            "description": "Tabulate Padé coefficients as CSV rows"
        },
        "record_sorter": {
            "name": "Record Ordering Operator",
            "type": "logical",
            "module": "operators.bench.record_writer",
            "function": "order_records_operator",
            "description": "Sort records by (method, param, target)"
        },
        "csv_emitter": {
            "name": "CSV Emission Operator",
            "type": "logical",
            "module": "operators.bench.record_writer",
            "function": "emit_csv_operator",
            "description": "Write records to stdout or the --out file"
        }
    }
}


def get_operator(category: str, operator_name: str) -> Callable:
    """
    Get specified operator from operator pool.

    :param category: Operator category (forward, backward, oracle, pipeline, bench)
    :param operator_name: Operator name
    :return: Operator function
    """
    if category not in OPERATOR_REGISTRY:
        raise ValueError(f"Unknown operator category: {category}")
    if operator_name not in OPERATOR_REGISTRY[category]:
        raise ValueError(f"Operator {operator_name} does not exist in category {category}")

    operator_info = OPERATOR_REGISTRY[category][operator_name]
    module = importlib.import_module(operator_info["module"])
    return getattr(module, operator_info["function"])


def list_operators(category: Optional[str] = None) -> Dict[str, Dict[str, Any]]:
    """
    List all available operators in operator pool.

    :param category: Optional, specify category
    :return: Operator information dictionary
    """
    if category:
        return OPERATOR_REGISTRY.get(category, {})
    return OPERATOR_REGISTRY
