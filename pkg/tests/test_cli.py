import csv
import io
import json

import pytest

from sepcycles import cli, counting
from sepcycles.partitions import IntegerPartition


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_count_p_ncycle(capsys):
    record = run_json(capsys, "count", "p-ncycle", "--n", "4", "--m", "2", "--k", "2")
    assert record["value"] == "16"
    assert record["source"] == "closed_form"
    assert record["query"]["n"] == 4
    assert "time_seconds" in record


def test_count_stirling_and_alpha(capsys):
    assert run_json(capsys, "count", "stirling", "--n", "4", "--k", "2")["value"] == "11"
    assert run_json(capsys, "count", "alpha", "--alpha", "1,3")["value"] == "12"


def test_count_k_all_emits_one_record_per_k(capsys):
    records = run_json(capsys, "count", "p-ncycle", "--n", "4", "--m", "0", "--k", "all")
    assert [r["query"]["k"] for r in records] == [1, 2, 3, 4]
    assert [r["value"] for r in records] == ["0", "30", "0", "6"]


def test_count_lambda_quantities(capsys):
    record = run_json(
        capsys, "count", "p-lambda", "--lambda", "2+1+1", "--m", "1", "--k", "2",
    )
    assert record["value"] == "36"
    assert record["source"] == "recurrence"
    record = run_json(
        capsys, "count", "i-lambda", "--lambda", "2+2", "--m", "1", "--k", "1",
    )
    assert record["source"] == "recurrence"


def test_count_oracle_source(capsys):
    record = run_json(
        capsys, "count", "p-ncycle", "--n", "4", "--m", "2", "--k", "2",
        "--source", "oracle",
    )
    assert record["value"] == "16"
    assert record["source"] == "oracle"


def test_prob_commands(capsys):
    assert run_json(capsys, "prob", "separation", "--n", "4", "--m", "2")["value"] == "11/18"
    assert run_json(capsys, "prob", "isolation", "--n", "5", "--m", "2")["value"] == "1/12"
    assert run_json(capsys, "prob", "fpf", "--n", "3")["value"] == "1/2"
    records = run_json(capsys, "prob", "moments", "--n", "3")
    by_stat = {r["query"]["statistic"]: r["value"] for r in records}
    assert by_stat == {"mean": "3/2", "variance": "9/4"}


def test_prob_decimal_rendering(capsys):
    record = run_json(capsys, "prob", "separation", "--n", "4", "--m", "2",
                      "--decimal", "6")
    assert record["decimal"] == "0.611111"


def test_csv_and_json_values_agree(capsys):
    json_records = run_json(
        capsys, "count", "i-ncycle", "--n", "5", "--m", "1", "--k", "all",
    )
    code, out, _ = run_cli(
        capsys, "count", "i-ncycle", "--n", "5", "--m", "1", "--k", "all",
        "--format", "csv",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["value"] for r in rows] == [r["value"] for r in json_records]
    assert [int(r["k"]) for r in rows] == [r["query"]["k"] for r in json_records]


def test_table_command(capsys):
    data = run_json(capsys, "table", "--n", "4", "--m", "2", "--kind", "p")
    entries = {(e["lambda"], e["k"]): e["value"] for e in data["entries"]}
    assert entries[("4", 2)] == "16"
    assert data["source"] == "recurrence"
    oracle_data = run_json(
        capsys, "table", "--n", "4", "--m", "2", "--kind", "p",
        "--table-source", "oracle",
    )
    assert oracle_data["source"] == "oracle"
    assert oracle_data["entries"] == data["entries"]


def test_out_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run_cli(
        capsys, "count", "stirling", "--n", "5", "--k", "3", "--out", str(target),
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["value"] == "35"


def test_parse_error_reports_position(capsys):
    code, _, err = run_cli(capsys, "count", "p-lambda", "--lambda", "2+x",
                           "--m", "0", "--k", "1")
    assert code == 2
    assert "position 2" in err


def test_precondition_errors_surface(capsys):
    code, _, err = run_cli(capsys, "count", "i-ncycle", "--n", "4", "--m", "4",
                           "--k", "2")
    assert code == 2
    assert "m must satisfy" in err


def test_config_file(tmp_path, capsys):
    config = tmp_path / "sepcycles.cfg"
    config.write_text("# defaults\nformat = csv\noracle_cap = 5\n")
    code, out, _ = run_cli(
        capsys, "count", "stirling", "--n", "4", "--k", "2", "--config", str(config),
    )
    assert code == 0
    assert out.splitlines()[0].startswith("command,")
    # flags override the config
    code, out, _ = run_cli(
        capsys, "count", "stirling", "--n", "4", "--k", "2", "--config", str(config),
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["value"] == "11"
    # the configured cap refuses a deeper verify run
    code, _, err = run_cli(
        capsys, "verify", "--max-n", "6", "--suite", "closed-forms",
        "--config", str(config),
    )
    assert code == 2
    assert "cap" in err


def test_verify_passes_and_reports(capsys):
    code, out, _ = run_cli(capsys, "verify", "--max-n", "3", "--suite", "all")
    assert code == 0
    assert "0 mismatches" in out
    assert "ok" in out
    # every record carries formula and oracle values
    assert "formula=" in out and "oracle=" in out


def test_verify_quiet(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--max-n", "3", "--suite", "closed-forms", "--quiet",
    )
    assert code == 0
    assert len(out.splitlines()) == 1


def test_verify_rejects_max_n_beyond_cap(capsys):
    code, _, err = run_cli(capsys, "verify", "--max-n", "8", "--suite", "identities")
    assert code == 2
    assert "cap" in err


def test_verify_detects_injected_fault(capsys, monkeypatch):
    real = counting.p_ncycle
    bad_triple = (4, 2, 2)

    def tampered(n, m, k):
        value = real(n, m, k)
        if (n, m, k) == bad_triple:
            return value + 1
        return value

    monkeypatch.setattr(counting, "p_ncycle", tampered)
    code, out, _ = run_cli(capsys, "verify", "--max-n", "4",
                           "--suite", "closed-forms", "--quiet")
    assert code == 1
    fail_lines = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert len(fail_lines) == 1
    assert "n=4" in fail_lines[0] and "m=2" in fail_lines[0] and "k=2" in fail_lines[0]
    assert "formula=17" in fail_lines[0] and "oracle=16" in fail_lines[0]


def test_unknown_format_rejected(capsys):
    with pytest.raises(SystemExit):
        cli.main(["count", "stirling", "--n", "4", "--k", "2", "--format", "xml"])
    capsys.readouterr()
