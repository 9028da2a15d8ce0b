"""Command-line workflows and exit-code contract."""

import json

import pytest

from trielect.cli import main
from trielect.configuration import is_connected, parse_config

TWO_STACKED = '{"particles": [{"nodes": [[0, 0]]}, {"nodes": [[0, 1]]}]}'


def _write_config(tmp_path, text, name="config.json"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_gen_is_deterministic_and_connected(tmp_path, capsys):
    args = ["gen", "--n", "12", "--expanded-frac", "0.3", "--hole-bias", "0.5", "--seed", "4"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    config = parse_config(first)
    assert len(config) == 12 and is_connected(config)


def test_run_final_config_zero_steps(tmp_path, capsys):
    path = _write_config(tmp_path, '{"particles": [{"nodes": [[0, 0]]}]}')
    assert main(["run", "--config", path]) == 0
    out = capsys.readouterr().out
    assert "steps: 0" in out and "terminal: True" in out


def test_run_writes_trace_and_check_accepts_it(tmp_path, capsys):
    config = _write_config(tmp_path, TWO_STACKED)
    trace = str(tmp_path / "trace.jsonl")
    code = main(
        ["run", "--config", config, "--strategy", "roundrobin", "--verify",
         "--trace-out", trace]
    )
    assert code == 0
    capsys.readouterr()
    assert main(["check", "--trace", trace]) == 0
    out = capsys.readouterr().out
    assert "passed" in out


def test_check_rejects_tampered_trace(tmp_path, capsys):
    config = _write_config(tmp_path, TWO_STACKED)
    trace_path = tmp_path / "trace.jsonl"
    main(["run", "--config", config, "--trace-out", str(trace_path)])
    capsys.readouterr()
    lines = trace_path.read_text().splitlines()
    lines = [line.replace('"condition":"E1"', '"condition":"E2"') for line in lines]
    trace_path.write_text("\n".join(lines) + "\n")
    assert main(["check", "--trace", str(trace_path)]) == 1
    out = capsys.readouterr().out
    assert "FAILED" in out


def test_run_rejects_disconnected(tmp_path, capsys):
    path = _write_config(
        tmp_path, '{"particles": [{"nodes": [[0, 0]]}, {"nodes": [[7, 7]]}]}'
    )
    assert main(["run", "--config", path]) == 1


def test_mc_small_sweep(tmp_path, capsys):
    assert main(["mc", "--n", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert payload["all_passed"] is True
    assert payload["instances"] == 76


def test_mc_single_config(tmp_path, capsys):
    path = _write_config(tmp_path, TWO_STACKED)
    assert main(["mc", "--config", path]) == 0
    out = capsys.readouterr().out
    assert "states=3" in out and "pass" in out


def test_render_ascii_and_svg(tmp_path, capsys):
    path = _write_config(tmp_path, TWO_STACKED)
    assert main(["render", "--config", path, "--annotate", "conditions"]) == 0
    ascii_out = capsys.readouterr().out
    assert "o" in ascii_out and "C1" in ascii_out
    svg_path = str(tmp_path / "out.svg")
    assert main(["render", "--config", path, "--format", "svg", "--out", svg_path]) == 0
    assert (tmp_path / "out.svg").read_text().startswith("<svg")


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["run", "--no-such-flag"])
    assert exc.value.code == 2


def test_unknown_config_file_is_reported(capsys):
    assert main(["run", "--config", "/nonexistent/config.json"]) == 1


def test_scripted_run_via_cli(tmp_path, capsys):
    path = _write_config(tmp_path, TWO_STACKED)
    assert main(
        ["run", "--config", path, "--strategy", "scripted", "--script", "0,0"]
    ) == 0
    out = capsys.readouterr().out
    assert "steps: 2" in out
