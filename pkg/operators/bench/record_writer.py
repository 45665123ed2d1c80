"""
Record Writing Operators (Logical Operators)

Orders benchmark records, tabulates Padé coefficients and emits CSV.
"""
import csv
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List

from agent.shared.state import COEFF_HEADER, CSV_HEADER, BenchRecord, BenchState
from operators.coeffs.pade import pade_table
from operators.matcore.types import Target


def coefficient_rows(target: Target, degree_m: int, degree_n: int) -> List[Dict[str, Any]]:
    """CSV rows target,M,N,kind,index,value of one Padé table; index starts at 1."""
    table = pade_table(target, degree_m, degree_n)
    rows = []
    for kind, values in (("p", table.p), ("q", table.q)):
        for index, value in enumerate(values, 1):
            rows.append({"target": target.value, "M": degree_m, "N": degree_n,
                         "kind": kind, "index": index, "value": float(value)})
    return rows


def dump_coeffs_operator(state: BenchState) -> BenchState:
    """
    LangGraph node function: tabulate the requested Padé tables

    :param state: Bench state
    :return: Updated state (contains header and rows)
    """
    config = state["config"]
    rows = []
    for target in config["targets"]:
        rows.extend(coefficient_rows(Target(target), config["degree_m"], config["degree_n"]))
    new_state = state.copy()
    new_state["header"] = COEFF_HEADER
    new_state["rows"] = rows
    return new_state


def order_records(records: Iterable[BenchRecord]) -> List[BenchRecord]:
    """Fixed CSV order regardless of execution order."""
    return sorted(records, key=lambda record: (record["method"], record["param"], record["target"]))


def order_records_operator(state: BenchState) -> BenchState:
    """
    LangGraph node function: sort records by (method, param, target)

    :param state: Bench state
    :return: Updated state (contains header and rows)
    """
    new_state = state.copy()
    new_state["header"] = CSV_HEADER
    new_state["rows"] = [dict(record) for record in order_records(state.get("records") or [])]
    return new_state


def write_csv(stream, header: List[str], rows: Iterable[Dict[str, Any]]):
    writer = csv.DictWriter(stream, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def emit_csv_operator(state: BenchState) -> BenchState:
    """
    LangGraph node function: write rows to stdout or the --out file

    :param state: Bench state
    :return: Updated state (contains output)
    """
    out = state["config"].get("out") or "-"
    if out == "-":
        write_csv(sys.stdout, state["header"], state["rows"])
        sys.stdout.flush()
    else:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            write_csv(f, state["header"], state["rows"])
    new_state = state.copy()
    new_state["output"] = out
    return new_state
