import json

import pydot
import pytest
from click.testing import CliRunner

from ratlam.cli import Invocation, Subcommand, format_tables, main, run
from ratlam.cpo import build_tower, constant_map
from ratlam.term_core import Context
from ratlam.tests.replay_tests.cases import golden_path

Y = golden_path("y.scheme")
PAIR = golden_path("pair.scheme")
STREAM = golden_path("stream.scheme")
UNGUARDED = golden_path("unguarded.scheme")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("RATLAM_CONFIG", raising=False)
    monkeypatch.delenv("RATLAM_LOG_LEVEL", raising=False)


@pytest.fixture
def runner():
    return CliRunner()


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestInvocation:
    """Test cases for command-line validation."""

    def test_valid(self):
        inv = Invocation(subcommand=Subcommand.UNFOLD, inputs=["a.scheme"], depth=3)
        assert inv.depth == 3

    def test_input_count(self):
        with pytest.raises(ValueError):
            Invocation(subcommand=Subcommand.ALPHAEQ, inputs=["a.scheme"])
        with pytest.raises(ValueError):
            Invocation(subcommand=Subcommand.CHECK, inputs=["a.scheme", "b.scheme"])

    def test_flags_belong_to_their_subcommand(self):
        with pytest.raises(ValueError, match="--depth is not valid for check"):
            Invocation(subcommand=Subcommand.CHECK, inputs=["a.scheme"], depth=2)
        with pytest.raises(ValueError):
            Invocation(subcommand=Subcommand.SOLVE, inputs=["a.scheme"], model="tower:2")

    def test_negative_depth(self):
        with pytest.raises(ValueError):
            Invocation(subcommand=Subcommand.UNFOLD, inputs=["a.scheme"], depth=-1)
        with pytest.raises(ValueError):
            Invocation(subcommand=Subcommand.INTERPRET, inputs=["a.scheme"], approx=-2)

    def test_verify_needs_a_solution(self):
        with pytest.raises(ValueError):
            Invocation(subcommand=Subcommand.VERIFY, inputs=["a.scheme"])


class TestRun:
    """Test cases for exit statuses."""

    def test_ok(self):
        assert run(["check", Y]) == 0

    def test_negative(self):
        assert run(["check", UNGUARDED]) == 2

    def test_usage_errors_exit_one(self):
        assert run(["unfold", Y, "--depth", "-1"]) == 1
        assert run(["no-such-command"]) == 1

    def test_missing_file(self, tmp_path):
        assert run(["check", str(tmp_path / "missing.scheme")]) == 1

    def test_syntax_error(self, tmp_path):
        assert run(["check", write(tmp_path / "bad.scheme", "p = \\x. x @\n")]) == 1


class TestCommands:
    """Test cases for individual subcommands."""

    def test_errors_go_to_stderr(self, runner, tmp_path):
        result = runner.invoke(main, ["solve", write(tmp_path / "bad.scheme", "p = q\n")])
        assert result.exit_code == 1
        assert "error:" in result.output

    def test_inline_makes_alias_schemes_guarded(self, runner, tmp_path):
        path = write(tmp_path / "alias.scheme", "context { y }\np = q\nq = y @ q\n")
        assert runner.invoke(main, ["check", path]).exit_code == 2
        result = runner.invoke(main, ["check", "--inline", path])
        assert result.exit_code == 0
        assert result.stdout == "guarded\n"

    def test_solve_dot(self, runner):
        result = runner.invoke(main, ["solve", Y, "--format", "dot"])
        assert result.exit_code == 0
        [graph] = pydot.graph_from_dot_data(result.stdout)
        assert graph.get_name() == "term_Y"

    def test_solve_out(self, runner, tmp_path):
        out = tmp_path / "y.sol"
        result = runner.invoke(main, ["solve", Y, "--out", str(out)])
        assert result.exit_code == 0
        assert result.stdout == ""
        with open(golden_path("y.solve.txt"), encoding="utf-8") as f:
            assert out.read_text(encoding="utf-8") == f.read()

    def test_unfold_unknown_nonterminal(self, runner):
        result = runner.invoke(main, ["unfold", Y, "-n", "Z"])
        assert result.exit_code == 1

    def test_alphaeq(self, runner, tmp_path):
        doubled = write(tmp_path / "y2.scheme", "Y = \\f. f @ (Z @ f)\nZ = \\g. g @ (Y @ g)\n")
        other = write(tmp_path / "w.scheme", "W = \\f. f @ f\n")
        result = runner.invoke(main, ["alphaeq", Y, doubled])
        assert (result.exit_code, result.stdout) == (0, "equal\n")
        result = runner.invoke(main, ["alphaeq", Y, other])
        assert (result.exit_code, result.stdout) == (2, "different\n")
        result = runner.invoke(main, ["alphaeq", Y, other, "--depth", "1"])
        assert (result.exit_code, result.stdout) == (0, "equal\n")

    def test_verify(self, runner, tmp_path):
        solution = tmp_path / "pair.sol"
        assert runner.invoke(main, ["solve", PAIR, "--out", str(solution)]).exit_code == 0
        result = runner.invoke(main, ["verify", PAIR, "--solution", str(solution)])
        assert (result.exit_code, result.stdout) == (0, "pass\n")

        wrong = write(tmp_path / "y.sol", "[Y]\nn0 = \\f. n1\nn1 = %0\n")
        result = runner.invoke(main, ["verify", Y, "--solution", wrong])
        assert (result.exit_code, result.stdout) == (2, "fail\n")

    def test_verify_requires_solution_flag(self, runner):
        assert runner.invoke(main, ["verify", Y]).exit_code != 0

    def test_interpret_golden_round_trip(self, runner, tmp_path):
        golden = tmp_path / "y.out"
        args = ["interpret", Y, "--model", "tower:2", "--golden", str(golden)]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert "wrote golden file" in result.output
        assert golden.read_text(encoding="utf-8") == result.stdout.replace(f"wrote golden file {golden}\n", "")

        assert runner.invoke(main, args).exit_code == 0
        golden.write_text("iterations 1\n", encoding="utf-8")
        result = runner.invoke(main, args)
        assert result.exit_code == 2
        assert "differs from golden file" in result.output

    def test_interpret_approximation(self, runner):
        result = runner.invoke(main, ["interpret", Y, "--model", "tower:2", "--approx", "4"])
        assert result.exit_code == 0
        assert "approx Y depth 4: agrees, increasing" in result.output

    def test_interpret_approximation_skips_unguarded(self, runner):
        result = runner.invoke(main, ["interpret", UNGUARDED, "--approx", "3"])
        assert result.exit_code == 0
        assert "approximation skipped" in result.output

    def test_interpret_needs_operation_tables(self, runner):
        result = runner.invoke(main, ["interpret", STREAM, "--model", "tower:2"])
        assert result.exit_code == 1
        assert "no table" in result.output

    def test_interpret_height_limit(self, runner):
        result = runner.invoke(main, ["interpret", Y, "--model", "tower:9"])
        assert result.exit_code == 1
        assert "exceeds the configured maximum" in result.output

    def test_interpret_bad_model_spec(self, runner):
        assert runner.invoke(main, ["interpret", Y, "--model", "pomega"]).exit_code == 1


class TestConfiguration:
    """Test cases for --config and --log-level."""

    def test_default_depth_from_config(self, runner, tmp_path):
        config = write(tmp_path / "config.json", json.dumps({"cli": {"default_depth": 2}}))
        result = runner.invoke(main, ["--config", config, "unfold", Y])
        assert result.exit_code == 0
        assert result.stdout == "\\f. _|_ @ _|_\n"

    def test_invalid_config(self, runner, tmp_path):
        config = write(tmp_path / "config.json", json.dumps({"cli": {"default_depth": -1}}))
        result = runner.invoke(main, ["--config", config, "check", Y])
        assert result.exit_code == 1
        assert "cli.default_depth" in result.output

    def test_log_level(self, runner):
        result = runner.invoke(main, ["--log-level", "debug", "check", Y])
        assert result.exit_code == 0

    def test_unknown_log_level(self, runner):
        assert runner.invoke(main, ["--log-level", "loud", "check", Y]).exit_code == 2


class TestFormatTables:
    """Test cases for the interpreted-solution text."""

    def test_layout(self):
        m = build_tower(1)
        text = format_tables({"p": constant_map(Context.of("y"), m.size, 0)}, 1, m)
        assert text == "iterations 1\n\n[p]\n#0 -> #0\n#1 -> #0\n#2 -> #0\n"

    def test_empty_context(self):
        m = build_tower(1)
        assert format_tables({"Y": constant_map(Context(), m.size, 2)}, 2, m) == "iterations 2\n\n[Y]\n() -> #2\n"
