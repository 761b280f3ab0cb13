import json
import math

import pytest

from renyisharp.core.errors import DomainError
from renyisharp.scripting import COMMANDS, ExecutionContext, QueryCommand, ScriptExecutor, command_from_dict
from renyisharp.scripting.commands import BoundCommand, CurveCommand, EntropyCommand, VerifyCommand
from renyisharp.scripting.commands.bound import THEOREMS, evaluate_bound
from renyisharp.scripting.simple_parser import SimpleScriptParser, parse_simple_script


class TestParser:
    def test_parse(self):
        script = """
        # comment line
        entropy masses=0.5,0.5 order=2
        bound theorem=uv a=inf b=1 value=0.9   # trailing comment
        curve region=h2-vs-hhalf n=8 out="my curve.csv"
        """
        data = parse_simple_script(script)
        assert [c["command"] for c in data["commands"]] == ["entropy", "bound", "curve"]
        assert data["commands"][0] == {"command": "entropy", "masses": "0.5,0.5", "order": "2"}
        assert data["commands"][2]["out"] == "my curve.csv"

    def test_keys_are_normalized(self):
        data = parse_simple_script("verify Theorem=binary random-budget=3")
        assert data["commands"][0] == {"command": "verify", "theorem": "binary", "random_budget": "3"}

    def test_errors_name_every_line(self):
        with pytest.raises(ValueError) as exc:
            parse_simple_script("launch x=1\nentropy order\nentropy order=\"2")
        message = str(exc.value)
        assert "Line 1" in message and "Line 2" in message and "Line 3" in message

    def test_empty_script(self):
        assert SimpleScriptParser().parse("  \n# nothing\n")["commands"] == []


class TestCommandTable:
    def test_builtin_commands(self):
        assert sorted(COMMANDS.names()) == ["bound", "curve", "entropy", "verify"]
        assert COMMANDS.get("bound") is BoundCommand

    def test_unknown(self):
        with pytest.raises(ValueError, match="Unknown command: launch"):
            command_from_dict({"command": "launch"})

    def test_entry_without_command_key(self):
        with pytest.raises(ValueError, match="command"):
            command_from_dict({"theorem": "uv"})

    def test_dispatch_builds_from_dict(self):
        cmd = command_from_dict({"command": "entropy", "masses": "0.5,0.5", "order": "2"})
        assert isinstance(cmd, EntropyCommand)
        assert cmd.to_dict()["command"] == "entropy"

    def test_register_and_unregister(self):
        @COMMANDS.entry("echo")
        class Echo(QueryCommand):
            def execute(self, context):
                return {"echo": True}

            @classmethod
            def from_dict(cls, data):
                return cls()

            def to_dict(self):
                return {"command": "echo"}

        try:
            assert "echo" in COMMANDS
            with pytest.raises(ValueError):
                COMMANDS.register("echo", Echo)
            assert isinstance(command_from_dict({"command": "echo"}), Echo)
        finally:
            COMMANDS.unregister("echo")
        assert "echo" not in COMMANDS


class TestEntropyCommand:
    def test_masses(self):
        result = EntropyCommand.from_dict({"masses": "0.5,0.5", "order": "2"}).execute(ExecutionContext())
        assert result["value"] == pytest.approx(math.log(2))

    def test_source_file(self, tmp_path):
        path = tmp_path / "bsc.csv"
        path.write_text("p_y,x0,x1\n0.5,0.9,0.1\n0.5,0.1,0.9\n", encoding="utf-8")
        ctx = ExecutionContext()
        pe = EntropyCommand(source=str(path), quantity="pe").execute(ctx)
        z = EntropyCommand(source=str(path), quantity="Z").execute(ctx)
        h2 = EntropyCommand(source=str(path), order="2").execute(ctx)
        assert pe["value"] == pytest.approx(0.1)
        assert z["value"] == pytest.approx(0.6)
        assert h2["value"] == pytest.approx(-math.log(0.82))

    def test_validation(self):
        with pytest.raises(DomainError):
            EntropyCommand(order="2")
        with pytest.raises(DomainError):
            EntropyCommand(order="2", masses=[1.0], source="x.csv")
        with pytest.raises(DomainError):
            EntropyCommand(masses=[1.0], quantity="volume")
        with pytest.raises(DomainError):
            EntropyCommand(masses=[1.0])
        with pytest.raises(DomainError):
            EntropyCommand.from_dict({"masses": "0.5,0.5", "order": "-1"})

    def test_to_dict(self):
        cmd = EntropyCommand.from_dict({"masses": [0.25, 0.75], "order": "inf"})
        assert cmd.to_dict() == {"command": "entropy", "quantity": "entropy", "order": "inf", "masses": [0.25, 0.75]}


class TestBoundCommand:
    def test_every_theorem_is_described(self):
        assert {"uv", "st", "feasible", "h2-hhalf", "pe-z"} <= set(THEOREMS)

    def test_uv(self):
        result = BoundCommand.from_dict(
            {"theorem": "uv", "a": "inf", "b": "1", "value": str(-math.log(0.4))}
        ).execute(ExecutionContext())
        (bound,) = result["bounds"]
        assert bound["kind"] == "lower"
        assert bound["value"] == pytest.approx(0.4 * math.log(2) + 0.6 * math.log(3))
        assert bound["witness"]["m"] == 2

    def test_fano_pair(self):
        results = evaluate_bound("fano", a="2", eps=0.5, n=4)
        assert [r.kind for r in results] == ["lower", "upper"]
        assert results[0].value == pytest.approx(math.log(2))

    def test_pe_with_and_without_n(self):
        assert len(evaluate_bound("pe", a="2", value=0.5)) == 1
        assert [r.kind for r in evaluate_bound("pe", a="2", value=0.5, n=3)] == ["lower", "upper"]

    def test_bhattacharyya(self):
        lower, upper = evaluate_bound("z_pe", eps=0.1, n=2)
        assert (lower.value, upper.value) == pytest.approx((0.2, 0.6))

    def test_missing_parameter(self):
        with pytest.raises(DomainError, match="'n'"):
            evaluate_bound("pe-z", z=0.4)
        with pytest.raises(DomainError):
            evaluate_bound("sideways")

    def test_unknown_parameter(self):
        with pytest.raises(DomainError):
            BoundCommand("uv", speed=3)

    def test_from_dict_requires_theorem(self):
        with pytest.raises(ValueError):
            BoundCommand.from_dict({"a": "2"})

    def test_to_dict_drops_unset(self):
        cmd = BoundCommand.from_dict({"theorem": "h2-hhalf", "value": "0.8", "n": "4"})
        assert cmd.to_dict() == {"command": "bound", "theorem": "h2-hhalf", "value": 0.8, "n": 4}


class TestCurveCommand:
    def test_inline(self):
        result = CurveCommand("Z_vs_Pe", 3, points=5).execute(ExecutionContext())
        assert result["points"] == len(result["curve"]["points"])
        assert "violations" not in result

    def test_writes_file(self, settings, tmp_path):
        out = tmp_path / "curves" / "h2.csv"
        cmd = CurveCommand.from_dict({"region": "h2-vs-hhalf", "n": "8", "out": str(out)})
        result = cmd.execute(ExecutionContext(settings))
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "x,y_lower,y_upper"
        # settings curve_points plus the spliced regime boundaries
        assert result["points"] == len(lines) - 1 > 11

    def test_json_format(self, tmp_path):
        out = tmp_path / "z.json"
        CurveCommand("Z_vs_Pe", 2, points=3, out=str(out), fmt="json").execute(ExecutionContext())
        assert json.loads(out.read_text(encoding="utf-8"))["y_label"] == "Z"

    def test_validation(self):
        with pytest.raises(DomainError):
            CurveCommand("Z_vs_Pe", 3, fmt="xml")
        with pytest.raises(ValueError):
            CurveCommand.from_dict({"n": 3})
        with pytest.raises(ValueError):
            CurveCommand.from_dict({"region": "Z_vs_Pe"})


class TestVerifyCommand:
    def test_execute(self, settings):
        result = VerifyCommand.from_dict({"theorem": "identities", "budget": "5", "threads": "1"}).execute(
            ExecutionContext(settings)
        )
        assert result["pass"] is True
        assert result["theorem_id"] == "identities"

    def test_seed_parsing(self):
        assert VerifyCommand.from_dict({"theorem": "uv", "seed": "0x10"}).seed == 16

    def test_unknown_check(self):
        with pytest.raises(ValueError):
            VerifyCommand("no-such-check")


class TestExecutor:
    def test_runs_json(self, settings):
        ctx = ExecutionContext(settings)
        executor = ScriptExecutor(ctx)
        executor.load_from_json(
            {
                "commands": [
                    {"command": "entropy", "masses": "0.5,0.5", "order": "inf"},
                    {"command": "bound", "theorem": "pe-z", "z": 1.0, "n": 2},
                ]
            }
        )
        assert executor.errors == []
        assert executor.execute()
        assert [r["ok"] for r in ctx.results] == [True, True]
        assert ctx.results[0]["result"]["value"] == pytest.approx(math.log(2))
        assert ctx.results[1]["index"] == 1

    def test_load_errors_are_collected(self):
        executor = ScriptExecutor()
        executor.load_from_json({"commands": [{"theorem": "uv"}, {"command": "launch"}]})
        assert len(executor.errors) == 2
        with pytest.raises(ValueError):
            executor.load_from_json({"steps": []})

    def test_failures_continue_by_default(self):
        executor = ScriptExecutor()
        executor.load_from_json(
            {
                "commands": [
                    {"command": "bound", "theorem": "pe-z", "z": 2.0, "n": 2},
                    {"command": "entropy", "masses": "1", "order": "2"},
                ]
            }
        )
        assert not executor.execute()
        assert [r["ok"] for r in executor.context.results] == [False, True]
        (index, _, message), = executor.get_errors()
        assert index == 0 and "Bhattacharyya" in message

    def test_stop_on_error(self):
        ctx = ExecutionContext()
        ctx.stop_on_error = True
        executor = ScriptExecutor(ctx)
        executor.load_from_json(
            {
                "commands": [
                    {"command": "bound", "theorem": "pe-z", "z": 2.0, "n": 2},
                    {"command": "entropy", "masses": "1", "order": "2"},
                ]
            }
        )
        assert not executor.execute()
        assert len(ctx.results) == 1

    def test_progress_callback(self):
        seen = []
        executor = ScriptExecutor()
        executor.load_from_json({"commands": [{"command": "entropy", "masses": "1", "order": "2"}]})
        executor.execute(on_progress=lambda i, total, desc: seen.append((i, total)))
        assert seen == [(0, 1)]

    def test_files(self, tmp_path):
        script = tmp_path / "queries.txt"
        script.write_text("entropy masses=0.25,0.75 order=1\nbound theorem=z-pe eps=0.1 n=2\n", encoding="utf-8")
        executor = ScriptExecutor()
        executor.load_from_file(str(script))
        assert len(executor.commands) == 2

        saved = tmp_path / "queries.json"
        executor.save_to_file(str(saved))
        again = ScriptExecutor()
        again.load_from_file(str(saved))
        assert [c.to_dict() for c in again.commands] == [c.to_dict() for c in executor.commands]

    def test_file_errors(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            ScriptExecutor().load_from_file(str(tmp_path / "missing.json"))
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        with pytest.raises(ValueError):
            ScriptExecutor().load_from_file(str(bad))

    def test_log_lines(self, settings):
        ctx = ExecutionContext(settings)
        ctx.log("hello")
        ctx.log("broken", level="ERROR")
        assert len(ctx.get_logs()) == 2
        text = settings.get_log_file_path().read_text(encoding="utf-8")
        assert "[Script] hello" in text and "ERROR [Script] broken" in text
        ctx.clear_logs()
        assert ctx.get_logs() == []
