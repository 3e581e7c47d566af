import json

import pytest
from typer.testing import CliRunner

from lamination_invariants.cli import app, cmd_orbit, cmd_portrait, run
from lamination_invariants.schemas import CommandStatus

runner = CliRunner()


def invoke(*args):
    result = runner.invoke(app, list(args))
    lines = [line for line in result.stdout.splitlines() if line.startswith("{")]
    return result, (json.loads(lines[-1]) if lines else None)


@pytest.fixture(scope="module")
def atlas_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("atlas") / "atlas.ndjson"
    result, body = invoke("atlas", "build", "--max-period", "4", "--atlas", str(path))
    assert result.exit_code == 0, result.output
    return path


class TestAngleCommands:
    def test_orbit(self):
        result, body = invoke("orbit", "1/7")
        assert result.exit_code == 0
        assert body["status"] == "ok"
        assert body["payload"][0]["cycle"] == ["1/7", "2/7", "4/7"]
        assert body["payload"][0]["period"] == 3

    def test_bad_angle(self):
        result, body = invoke("orbit", "x")
        assert result.exit_code == 2
        assert body["status"] == "error" and body["diagnostics"]

    def test_address(self):
        _, body = invoke("address", "11/31")
        assert body["payload"][0]["address"] == [1, 2, 5]

    def test_kneading(self):
        _, body = invoke("kneading", "3/7")
        assert body["payload"][0]["kneading"] == "(10*)"

    def test_portrait(self):
        result, body = invoke("portrait", "3/7", "4/7")
        record = body["payload"][0]
        assert result.exit_code == 0
        assert record["kind"] == "primitive"
        assert record["classes"] == [["3/7", "4/7"], ["1/7", "6/7"], ["2/7", "5/7"]]
        assert record["characteristic_arc"] == ["3/7", "4/7"]
        assert record["critical_arc"] == ["5/7", "2/7"]
        assert record["rotation"] is None
        assert record["critical_arc_branch"] == "shifted_start"

    def test_portrait_with_shifted_end_critical_arc(self):
        result, body = invoke("portrait", "2/5", "3/5")
        record = body["payload"][0]
        assert result.exit_code == 0, body
        assert record["kind"] == "satellite"
        assert record["critical_arc"] == ["1/5", "4/5"]
        assert record["critical_arc_branch"] == "shifted_end"

    def test_not_realizable(self):
        result, body = invoke("portrait", "1/7", "3/7")
        assert result.exit_code == 2
        assert "not realizable" in body["diagnostics"][0]

    def test_pretty(self):
        result = runner.invoke(app, ["orbit", "1/3", "--pretty"])
        assert result.exit_code == 0
        assert "ok" in result.stdout and "cycle" in result.stdout


class TestAtlasCommands:
    def test_build_reports_counts(self, atlas_file):
        _, body = invoke("atlas", "info", "--atlas", str(atlas_file))
        info = body["payload"][0]
        assert info["max_period"] == 4
        assert info["components"] == 11
        assert info["counts"] == {"1": 1, "2": 1, "3": 3, "4": 6}

    def test_query_by_angle(self, atlas_file):
        _, body = invoke("atlas", "query", "--angle", "3/7", "--atlas", str(atlas_file))
        [record] = body["payload"]
        assert record["root_pair"] == ["3/7", "4/7"]
        assert [entry["label"] for entry in record["address"]] == [None, "1/2", None]

    def test_query_enclosing(self, atlas_file):
        _, body = invoke("atlas", "query", "--angle", "1/2", "--enclosing", "--atlas", str(atlas_file))
        assert body["payload"][0]["root_pair"] == ["7/15", "8/15"]

    def test_query_by_address(self, atlas_file):
        _, body = invoke("atlas", "query", "--address", "1,3", "--atlas", str(atlas_file))
        assert sorted(record["root_pair"][0] for record in body["payload"]) == ["1/7", "5/7"]

    def test_query_needs_a_key(self, atlas_file):
        result, _ = invoke("atlas", "query", "--atlas", str(atlas_file))
        assert result.exit_code == 2

    def test_missing_atlas(self, tmp_path):
        result, body = invoke("atlas", "info", "--atlas", str(tmp_path / "absent.ndjson"))
        assert result.exit_code == 2
        assert body["status"] == "error"


class TestVerify:
    def test_ok(self):
        result, body = invoke("verify", "--max-period", "3", "--depth", "6")
        assert result.exit_code == 0
        report = body["payload"][0]
        assert report["status"] == "ok"
        assert report["components_checked"] == 5

    @pytest.mark.slow
    def test_ok_at_period_six(self):
        result, body = invoke("verify", "--max-period", "6", "--depth", "16")
        report = body["payload"][0]
        assert result.exit_code == 0, body["diagnostics"]
        assert report["status"] == "ok"
        assert report["components_checked"] == 53

    def test_depth_too_small(self):
        result, body = invoke("verify", "--max-period", "3", "--depth", "4")
        assert result.exit_code == 2
        assert "depth" in body["diagnostics"][0]


class TestRender:
    def test_portrait(self, tmp_path):
        out = tmp_path / "rabbit.svg"
        result, body = invoke("render", "portrait", "--angles", "1/7,2/7", "--out", str(out))
        assert result.exit_code == 0
        assert body["payload"][0]["chords"] == 3
        assert out.read_text().startswith("<svg")

    def test_portrait_needs_two_angles(self, tmp_path):
        result, _ = invoke("render", "portrait", "--angles", "1/7", "--out", str(tmp_path / "x.svg"))
        assert result.exit_code == 2

    def test_wakes_from_file(self, tmp_path, atlas_file):
        out = tmp_path / "wakes.svg"
        result, body = invoke("render", "wakes", "--max-period", "3", "--out", str(out), "--atlas", str(atlas_file))
        assert result.exit_code == 0
        assert body["payload"][0]["chords"] == 4


class TestBundle:
    def test_builds_an_atlas_when_none_is_given(self):
        result, body = invoke("bundle", "--angle", "11/31")
        bundle = body["payload"][0]
        assert result.exit_code == 0
        assert bundle["irregular_points"] == 6
        assert [entry["label"] for entry in bundle["labelled_address"]] == [None, "1/2", "1/3"]

    def test_from_file(self, atlas_file):
        _, body = invoke("bundle", "--angle", "1/3", "--atlas", str(atlas_file))
        bundle = body["payload"][0]
        assert bundle["kind"] == "satellite"
        assert [(entry["leaf_count"], entry["unbounded_count"]) for entry in bundle["lu_profile"]] == [(2, 4)]


def test_guarded_commands_return_results():
    result = cmd_orbit("1/0")
    assert result.status is CommandStatus.ERROR
    assert result.exit_code == 2


def test_guarded_portrait_of_a_satellite_bulb():
    result = cmd_portrait("2/5", "3/5")
    assert result.status is CommandStatus.OK
    assert result.payload[0]["critical_arc"] == ["1/5", "4/5"]


class TestEntryPoint:
    def last_record(self, capsys):
        lines = [line for line in capsys.readouterr().out.splitlines() if line.startswith("{")]
        return json.loads(lines[-1])

    def test_success(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            run(["orbit", "1/3"])
        assert exit_info.value.code == 0
        assert self.last_record(capsys)["payload"][0]["cycle"] == ["1/3", "2/3"]

    def test_missing_option_is_an_error_result(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            run(["render", "wakes"])
        body = self.last_record(capsys)
        assert exit_info.value.code == 2
        assert body["status"] == "error"
        assert "--max-period" in body["diagnostics"][0]

    def test_bad_option_value_is_an_error_result(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            run(["atlas", "build", "--max-period", "zero"])
        assert exit_info.value.code == 2
        assert self.last_record(capsys)["status"] == "error"

    def test_library_error_keeps_its_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            run(["orbit", "x"])
        assert exit_info.value.code == 2
        assert self.last_record(capsys)["status"] == "error"
