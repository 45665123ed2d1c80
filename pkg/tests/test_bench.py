"""Benchmark CLI: sweep planning, record writing and end-to-end CSV output."""
import csv
import io

import numpy as np
import pytest

from agent.benchAgent.BenchAgent import build_parser, main, resolve_config
from agent.shared.state import COEFF_HEADER, CSV_HEADER, get_init_bench_state
from common.errors import ConfigError
from operators.bench.instruction_router import instruction_router_step, route_instruction_condition
from operators.bench.pipelines import mpa_lya, ns_pipeline
from operators.bench.record_writer import coefficient_rows, order_records, write_csv
from operators.bench.sweep_planner import plan_instructions, validate_config
from operators.diffcheck import mae, nrmse
from operators.forward import spectral
from operators.matcore import Target

SMALL = ["--suite-size", "3", "--reps", "5", "--threads", "1"]


def _config(*argv):
    return resolve_config(build_parser().parse_args(list(argv)))


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    assert code == 0, captured.err
    return list(csv.DictReader(io.StringIO(captured.out)))


def _rows_by(rows, *keys):
    return {tuple(row[key] for key in keys): row for row in rows}


class TestPlanner:

    def test_forward_grid(self):
        config = _config("--sweep", "fp", "--methods", "mtp,ns_onevar", "--degrees", "3,5", "--iterations", "2")
        instructions = plan_instructions(config)
        assert [(i["operator"], i["param"], i["target"]) for i in instructions] == [
            ("mtp", 3, "sqrt"), ("mtp", 3, "isqrt"), ("mtp", 5, "sqrt"), ("mtp", 5, "isqrt"),
            ("ns_onevar", 2, "isqrt"),
        ]
        assert instructions[0]["params"] == {"degree_k": 3}

    def test_backward_grid(self):
        config = _config("--sweep", "bp", "--target", "sqrt", "--lyapunov-iterations", "5,8", "--iterations", "4")
        instructions = plan_instructions(config)
        assert [(i["operator"], i["param"]) for i in instructions] == [
            ("lyapunov", 5), ("lyapunov", 8), ("ns_backward", 4),
        ]

    def test_whiten_is_inverse_only(self):
        instructions = plan_instructions(_config("--sweep", "whiten", "--target", "sqrt"))
        assert {i["target"] for i in instructions} == {"isqrt"}
        assert len(instructions) == 5

    def test_coeffs_has_no_instructions(self):
        assert plan_instructions(_config("--sweep", "coeffs")) == []

    @pytest.mark.parametrize("argv", [
        ["--sweep", "fp", "--methods", "mpa", "--degrees", "8"],
        ["--sweep", "fp", "--methods", "lyapunov"],
        ["--sweep", "bp", "--methods", "mpa"],
        ["--sweep", "fp", "--epsilon", "0"],
        ["--sweep", "dim", "--dims", "0,4"],
        ["--sweep", "fp", "--suite-size", "0"],
        ["--sweep", "fp", "--reps", "4"],
        ["--sweep", "coeffs", "--degree-m", "0"],
    ])
    def test_invalid_configs(self, argv):
        with pytest.raises(ConfigError):
            validate_config(_config(*argv))

    def test_parser_errors(self):
        with pytest.raises(ConfigError):
            build_parser().parse_args(["--dim", "4"])
        with pytest.raises(ConfigError):
            build_parser().parse_args(["--sweep", "fp", "--degrees", "3,x"])
        with pytest.raises(ConfigError):
            _config("--sweep", "fp", "--threads", "-1")

    def test_defaults_from_config(self):
        config = _config("--sweep", "fp")
        assert (config["dim"], config["suite_size"], config["seed"]) == (64, 100, 0)
        assert config["methods"] == ["mtp", "mpa", "ns"]
        assert config["targets"] == ["sqrt", "isqrt"]
        assert config["out"] == "-"


class TestInstructionRouter:

    def test_walks_the_plan(self):
        state = get_init_bench_state(_config("--sweep", "bp", "--target", "sqrt", "--lyapunov-iterations", "5",
                                             "--iterations", "3"))
        state["instructions"] = plan_instructions(state["config"])
        routed = instruction_router_step(state)
        assert routed["current_instruction"]["operator"] == "lyapunov"
        assert route_instruction_condition(routed) == "continue"
        routed["executed_count"] = 2
        assert route_instruction_condition(routed) == "done"
        assert instruction_router_step(routed) is routed


class TestRecordWriter:

    def test_coefficient_rows(self):
        rows = coefficient_rows(Target.SQRT, 1, 1)
        assert [(row["kind"], row["index"]) for row in rows] == [("p", 1), ("q", 1)]
        assert rows[0]["value"] == pytest.approx(0.75)
        assert rows[1]["value"] == pytest.approx(0.25)

    def test_order(self):
        records = [
            {"method": "ns", "param": 3, "target": "sqrt"},
            {"method": "mpa", "param": 11, "target": "sqrt"},
            {"method": "mpa", "param": 7, "target": "sqrt"},
            {"method": "mpa", "param": 7, "target": "isqrt"},
        ]
        ordered = [(r["method"], r["param"], r["target"]) for r in order_records(records)]
        assert ordered == [("mpa", 7, "isqrt"), ("mpa", 7, "sqrt"), ("mpa", 11, "sqrt"), ("ns", 3, "sqrt")]

    def test_write_csv(self):
        stream = io.StringIO()
        write_csv(stream, ["a", "b"], [{"a": 1, "b": 0.5}])
        assert stream.getvalue() == "a,b\n1,0.5\n"


class TestPipelines:

    @pytest.mark.parametrize("target", list(Target))
    @pytest.mark.parametrize("dim", [4, 8, 16, 32])
    def test_pade_forward_beats_newton_schulz(self, spd_suite, upstreams, target, dim):
        suite = spd_suite(20, dim)
        errors = {"mpa_lya": [], "ns": []}
        for a, g in zip(suite, upstreams(20, dim)):
            exact = spectral(a, target).value
            for name, pipeline in (("mpa_lya", mpa_lya), ("ns", ns_pipeline)):
                forward, _ = pipeline(a, g, target)
                errors[name].append((mae(forward.value, exact), nrmse(forward.value, exact)))
        pade, newton = np.mean(errors["mpa_lya"], axis=0), np.mean(errors["ns"], axis=0)
        assert pade[0] < newton[0]
        assert pade[1] < newton[1]


class TestCli:

    def test_coeffs(self, capsys):
        rows = _run(capsys, "--sweep", "coeffs", "--target", "sqrt", "--degree-m", "1", "--degree-n", "1")
        assert list(rows[0]) == COEFF_HEADER
        assert [(r["kind"], r["index"]) for r in rows] == [("p", "1"), ("q", "1")]
        assert float(rows[0]["value"]) == pytest.approx(0.75)

    def test_coeffs_both_targets(self, capsys):
        rows = _run(capsys, "--sweep", "coeffs")
        assert len(rows) == 2 * (5 + 5)
        assert {r["target"] for r in rows} == {"sqrt", "isqrt"}

    def test_forward_scalar_suite_is_exact(self, capsys):
        rows = _run(capsys, "--sweep", "fp", "--dim", "1", "--methods", "mpa", "--degrees", "11",
                    "--target", "sqrt", *SMALL)
        assert list(rows[0]) == CSV_HEADER
        assert len(rows) == 1
        assert float(rows[0]["mae"]) == 0.0
        assert float(rows[0]["time_ns_mean"]) > 0.0
        assert (rows[0]["matmul_count"], rows[0]["solve_count"]) == ("4", "1")

    def test_forward_errors_are_deterministic(self, capsys):
        argv = ["--sweep", "fp", "--dim", "6", "--methods", "ns,mpa", "--degrees", "7,11", "--iterations", "5",
                "--suite-size", "4", "--reps", "5"]
        first = _run(capsys, *argv, "--threads", "1")
        second = _run(capsys, *argv, "--threads", "2")
        columns = ("method", "target", "param", "mae", "nrmse", "defining_residual", "matmul_count")
        assert [tuple(r[c] for c in columns) for r in first] == [tuple(r[c] for c in columns) for r in second]
        assert [(r["method"], r["param"], r["target"]) for r in first] == [
            ("mpa", "7", "isqrt"), ("mpa", "7", "sqrt"), ("mpa", "11", "isqrt"), ("mpa", "11", "sqrt"),
            ("ns", "5", "isqrt"), ("ns", "5", "sqrt"),
        ]

    def test_backward_sweep(self, capsys):
        rows = _run(capsys, "--sweep", "bp", "--dim", "4", "--lyapunov-iterations", "5,8", "--iterations", "3",
                    *SMALL)
        by_key = _rows_by(rows, "method", "param", "target")
        for t in (5, 8):
            assert by_key[("lyapunov", str(t), "sqrt")]["matmul_count"] == str(6 * t)
            assert by_key[("lyapunov", str(t), "isqrt")]["matmul_count"] == str(3 + 6 * t)
        assert by_key[("ns_backward", "3", "sqrt")]["matmul_count"] == "27"
        for target in ("sqrt", "isqrt"):
            early = float(by_key[("lyapunov", "5", target)]["defining_residual"])
            late = float(by_key[("lyapunov", "8", target)]["defining_residual"])
            assert early > late
            assert float(by_key[("lyapunov", "8", target)]["nrmse"]) < float(by_key[("lyapunov", "5", target)]["nrmse"])

    def test_batch_sweep(self, capsys):
        rows = _run(capsys, "--sweep", "batch", "--dim", "4", "--batch", "1,2", "--target", "sqrt", *SMALL)
        assert len(rows) == 8
        by_key = _rows_by(rows, "method", "param")
        for method in ("mpa_lya", "mtp_lya", "ns", "spectral_bs"):
            assert by_key[(method, "1")]["mae"] == by_key[(method, "2")]["mae"]
            assert float(by_key[(method, "2")]["time_ns_mean"]) > 0.0

    def test_dim_sweep(self, capsys):
        rows = _run(capsys, "--sweep", "dim", "--dims", "2,3", "--target", "isqrt",
                    "--methods", "mpa_lya,spectral_bs", *SMALL)
        assert [(r["method"], r["param"]) for r in rows] == [
            ("mpa_lya", "2"), ("mpa_lya", "3"), ("spectral_bs", "2"), ("spectral_bs", "3"),
        ]
        for row in rows:
            assert float(row["nrmse"]) < 1.0
        assert all(float(r["mae"]) < 1e-12 for r in rows if r["method"] == "spectral_bs")

    def test_whiten_sweep(self, capsys):
        rows = _run(capsys, "--sweep", "whiten", "--dim", "4", "--methods", "spectral,mpa,mtp", *SMALL)
        by_method = _rows_by(rows, "method")
        assert {r["target"] for r in rows} == {"isqrt"}
        assert float(by_method[("spectral",)]["defining_residual"]) < 1e-8
        assert float(by_method[("mpa",)]["defining_residual"]) < float(by_method[("mtp",)]["defining_residual"])

    def test_out_file(self, capsys, tmp_path):
        out = tmp_path / "results" / "coeffs.csv"
        assert main(["--sweep", "coeffs", "--target", "isqrt", "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        rows = list(csv.DictReader(out.open(encoding="utf-8")))
        assert len(rows) == 10
        assert {r["target"] for r in rows} == {"isqrt"}

    @pytest.mark.parametrize("argv", [
        ["--sweep", "fp", "--epsilon", "0", "--dim", "2"],
        ["--sweep", "fp", "--methods", "svd", "--dim", "2"],
        ["--dim", "2"],
        ["--sweep", "bp", "--iterations", "3,a"],
    ])
    def test_errors_exit_nonzero(self, capsys, argv):
        assert main(argv) != 0
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "matroot: error:" in captured.err
