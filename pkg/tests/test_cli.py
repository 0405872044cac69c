import json

import pytest

from errors import ContractViolation, EnumerationLimitError, InputError, SamplingExhausted
from experiments import settings
from experiments.cli import EXIT_CONFIG, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK, exit_code_for, main
from experiments.config import ExperimentConfig
from storage.results_store import load_records
from storage.word_files import load_words, save_words


def _config(tmp_path, text: str) -> str:
    path = tmp_path / "run.cfg"
    path.write_text(text)
    return str(path)


# ========================================
# OUTPUT
# ========================================

def test_show_config_prints_defaults(capsys):
    assert main(["show-config"]) == EXIT_OK
    assert capsys.readouterr().out == ExperimentConfig().to_text()


def test_seed_flag_overrides_config(tmp_path, capsys):
    cfg = _config(tmp_path, "seed = 4\n")
    assert main(["show-config", "--config", cfg, "--seed", "77"]) == EXIT_OK
    assert "seed = 77" in capsys.readouterr().out


def test_encode_then_decode(tmp_path):
    messages = tmp_path / "messages.txt"
    codewords = tmp_path / "codewords.txt"
    report = tmp_path / "decoded.csv"
    save_words(messages, [[1, 2, 3, 4, 5], [0, 0, 0, 0, 0], [15, 0, 7, 0, 9]])

    assert main(["encode", "--input", str(messages), "--out", str(codewords)]) == EXIT_OK
    words = load_words(codewords, q=16, n=15)
    assert len(words) == 3
    assert words[1].tolist() == [0] * 15

    assert main(["decode", "--input", str(codewords), "--out", str(report)]) == EXIT_OK
    rows = load_records(report)
    assert [row["message"] for row in rows] == ["1 2 3 4 5", "0 0 0 0 0", "15 0 7 0 9"]
    assert all(row["success"] == "True" for row in rows)


def test_repeated_runs_are_byte_identical(tmp_path):
    cfg = _config(tmp_path, "channel = adversarial\nerrors = 4\ntrials = 6\nseed = 31\n")
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["decode", "--config", cfg, "--out", str(first)]) == EXIT_OK
    assert main(["decode", "--config", cfg, "--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    rows = load_records(first)
    assert [row["trial"] for row in rows] == [str(t) for t in range(6)]
    assert all(row["correct"] == "True" for row in rows)


def test_simulate_json_is_byte_identical(tmp_path):
    cfg = _config(tmp_path, "sweep = 0.0, 0.05\ntrials = 5\nformat = json\n")
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["simulate", "--config", cfg, "--out", str(first)]) == EXIT_OK
    assert main(["simulate", "--config", cfg, "--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    rows = load_records(first)
    assert [row["parameter"] for row in rows] == [0.0, 0.05]
    assert rows[0]["success_rate"] == 1.0
    assert all(row["schema_version"] == 1 for row in rows)
    # RS[15, 5] reads every received symbol.
    assert all(row["mean_queries"] == 15.0 for row in rows)


@pytest.mark.slow
def test_decode_corrects_full_budget_every_trial(tmp_path):
    cfg = _config(tmp_path, "channel = adversarial\nerrors = 5\ntrials = 1000\n")
    out = tmp_path / "decoded.csv"
    assert main(["decode", "--config", cfg, "--out", str(out)]) == EXIT_OK
    rows = load_records(out)
    assert len(rows) == 1000
    assert all(row["success"] == "True" and row["correct"] == "True" for row in rows)


def test_relative_out_resolves_against_output_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "OUTPUT_DIR", str(tmp_path))
    assert main(["show-config", "--out", "runs/config.txt"]) == EXIT_OK
    written = tmp_path / "runs" / "config.txt"
    assert written.read_text() == ExperimentConfig.build(out="runs/config.txt").to_text()


def test_empty_sweep_writes_header_only(capsys):
    assert main(["simulate"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out == "schema_version,parameter,trials,successes,success_rate,ci_low,ci_high,mean_queries\n"


def test_pir_demo_document(capsys):
    assert main(["pir-demo", "--format", "json", "--seed", "8"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["schema_version"] == 1
    assert document["recovery_exact"] is True
    assert document["communication_bits"] == 12
    assert document["trivial_bits"] == 5
    assert len(document["transcripts"]) == 10
    assert all(audit["exact"] and audit["distance"] == 0 for audit in document["privacy"])


def test_gl_demo_rows(tmp_path):
    cfg = _config(tmp_path, "k = 6\ntrials = 3\n")
    out = tmp_path / "gl.csv"
    assert main(["gl-demo", "--config", cfg, "--out", str(out)]) == EXIT_OK
    rows = load_records(out)
    assert [row["trial"] for row in rows] == ["0", "1", "2"]


def test_learn_fourier_rows(tmp_path):
    cfg = _config(tmp_path, "k = 6\ntrials = 2\n")
    out = tmp_path / "heavy.csv"
    assert main(["learn-fourier", "--config", cfg, "--out", str(out)]) == EXIT_OK
    rows = load_records(out)
    assert rows
    assert all(len(row["a"]) == 6 for row in rows)


# ========================================
# EXIT CODES
# ========================================

def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as caught:
        main(["transmogrify"])
    assert caught.value.code == 2


def test_seed_out_of_range_exits_2():
    with pytest.raises(SystemExit) as caught:
        main(["show-config", "--seed", "-1"])
    assert caught.value.code == 2


def test_config_errors_exit_2(tmp_path, capsys):
    assert main(["show-config", "--config", str(tmp_path / "absent.cfg")]) == EXIT_CONFIG
    assert main(["encode", "--config", _config(tmp_path, "family = gv\nn = 14\nk = 3\nd = 4\n")]) == EXIT_CONFIG
    assert "error:" in capsys.readouterr().err


def test_pir_index_out_of_range_exits_2(tmp_path):
    cfg = _config(tmp_path, "pir_index = 5\n")
    assert main(["pir-demo", "--config", cfg]) == EXIT_CONFIG


def test_input_errors_exit_3(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1\nseven\n")
    assert main(["decode", "--input", str(bad)]) == EXIT_INPUT
    short = tmp_path / "short.txt"
    save_words(short, [[1, 2, 3]])
    assert main(["encode", "--input", str(short)]) == EXIT_INPUT


def test_exit_code_mapping():
    assert exit_code_for(InputError("x")) == EXIT_INPUT
    assert exit_code_for(EnumerationLimitError("x")) == EXIT_CONFIG
    assert exit_code_for(SamplingExhausted("x", 3)) == EXIT_CONFIG
    assert exit_code_for(ContractViolation("x")) == EXIT_INTERNAL
    assert exit_code_for(RuntimeError("x")) == EXIT_INTERNAL
