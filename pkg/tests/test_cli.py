import csv
import io
import json

import pytest

from app.cli import EXIT_INTERNAL, EXIT_INVALID, EXIT_OK, EXIT_ROUTE, EXIT_TOLERANCE, main
from app.schemas.result import ComparisonReport, MeanReport, ResultTable, SimulationReport

from tests.conftest import THREE_STATE, TWO_STATE

LABELLED = {"states": ["state0", "state1"], "P": TWO_STATE, "U": ["state0"]}


def read_csv(text: str) -> list:
    return list(csv.reader(io.StringIO(text)))


def test_dist_csv(chain_file, capsys):
    """
    dp table for p = 0.2, q = 0.4 at n = 2, with the documented header.
    """
    code = main(["dist", chain_file(LABELLED), "--n", "2"])
    rows = read_csv(capsys.readouterr().out)
    assert code == EXIT_OK
    assert rows[0] == ["state", "k=0", "k=1", "k=2"]
    assert rows[1][0] == "state0"
    assert [float(v) for v in rows[1][1:]] == pytest.approx([0.12, 0.24, 0.64], abs=1e-15)
    assert [float(v) for v in rows[2][1:]] == pytest.approx([0.36, 0.32, 0.32], abs=1e-15)


def test_dist_horizon_zero(chain_file, capsys):
    code = main(["dist", chain_file({"P": THREE_STATE, "U": [0]}), "--n", "0"])
    rows = read_csv(capsys.readouterr().out)
    assert code == EXIT_OK
    assert rows[0] == ["state", "k=0"]
    assert [float(row[1]) for row in rows[1:]] == [1.0, 1.0, 1.0]


def test_dist_json_round_trip_and_csv_agreement(chain_file, capsys):
    """
    JSON re-parses to the same values that the CSV prints.
    """
    path = chain_file(LABELLED)
    main(["dist", path, "--n", "7", "--route", "gf", "--format", "json"])
    result = ResultTable.model_validate_json(capsys.readouterr().out)
    main(["dist", path, "--n", "7", "--route", "gf"])
    rows = read_csv(capsys.readouterr().out)
    assert result.route == "gf"
    assert result.meta["truncation_order"] == 7
    for row in rows[1:]:
        assert [float(v) for v in row[1:]] == result.table[row[0]]
    assert ResultTable.model_validate_json(result.model_dump_json()) == result


def test_dist_all_layers(chain_file, capsys):
    code = main(["dist", chain_file(LABELLED), "--n", "3", "--all-layers"])
    rows = read_csv(capsys.readouterr().out)
    assert code == EXIT_OK
    assert rows[0] == ["state", "n", "k=0", "k=1", "k=2", "k=3"]
    assert len(rows) == 1 + 4 * 2


def test_dist_closed_on_three_states(chain_file, capsys, caplog):
    """
    The closed forms only exist for two states.
    """
    code = main(["dist", chain_file({"P": THREE_STATE, "U": [0]}), "--n", "4", "--route", "closed"])
    assert code == EXIT_ROUTE
    assert capsys.readouterr().out == ""
    assert "2-state" in caplog.text


def test_dist_closed_long_horizon(chain_file, capsys):
    """
    A 2-state chain at n = 400 is served by the closed forms and agrees with dp.
    """
    path = chain_file({"P": [[0.1, 0.9], [0.2, 0.8]], "U": [0]})
    assert main(["dist", path, "--n", "400", "--route", "closed", "--format", "json"]) == EXIT_OK
    closed = ResultTable.model_validate_json(capsys.readouterr().out)
    assert main(["dist", path, "--n", "400", "--format", "json"]) == EXIT_OK
    dp = ResultTable.model_validate_json(capsys.readouterr().out)
    for label, row in dp.table.items():
        assert closed.table[label] == pytest.approx(row, abs=1e-9)


def test_unexpected_failure_is_not_a_tolerance_breach(chain_file, monkeypatch, caplog):
    """
    An unforeseen exception inside a route exits with its own code, never 1.
    """
    def explode(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr("app.services.routes.RouteService.table", explode)
    code = main(["dist", chain_file({"P": TWO_STATE, "U": [0]}), "--n", "3"])
    assert code == EXIT_INTERNAL
    assert code not in (EXIT_OK, EXIT_TOLERANCE, EXIT_INVALID, EXIT_ROUTE)
    assert "boom" in caplog.text


def test_dist_enum_guard(chain_file, monkeypatch):
    monkeypatch.setattr("app.config.settings.MAX_ENUMERATED_PATHS", 100)
    assert main(["dist", chain_file({"P": THREE_STATE, "U": [0]}), "--n", "6", "--route", "enum"]) == EXIT_ROUTE


@pytest.mark.parametrize("payload", [
    '{"P": [[0.8, 0.2], [0.4, 0.6]], "U": [0]',
    {"P": [[0.8, 0.2], [0.4, 0.5]], "U": [0]},
    {"P": [[1.2, -0.2], [0.4, 0.6]], "U": [0]},
    {"P": [[0.8, 0.2], [0.4, 0.6]], "U": [0, "1"]},
    {"P": [[0.8, 0.2], [0.4, 0.6]], "U": ["missing"]},
    {"states": ["a"], "P": [[0.8, 0.2], [0.4, 0.6]], "U": [0]},
])
def test_invalid_chain_files(chain_file, payload):
    """
    Malformed JSON, bad rows and bad subsets all exit 2.
    """
    assert main(["dist", chain_file(payload), "--n", "3"]) == EXIT_INVALID


def test_missing_file():
    assert main(["dist", "/nonexistent/chain.json", "--n", "3"]) == EXIT_INVALID


def test_mean(chain_file, capsys):
    path = chain_file(LABELLED)
    assert main(["mean", path, "--n", "1", "--format", "json"]) == EXIT_OK
    report = MeanReport.model_validate_json(capsys.readouterr().out)
    assert report.mean == pytest.approx({"state0": 0.8, "state1": 0.4})
    assert main(["mean", path, "--n", "2"]) == EXIT_OK
    rows = read_csv(capsys.readouterr().out)
    assert rows[0] == ["state", "mean", "variance"]
    assert float(rows[1][1]) == pytest.approx(1.52)


def test_mean_full_subset(chain_file, capsys):
    main(["mean", chain_file({"P": THREE_STATE, "U": [0, 1, 2]}), "--n", "5", "--format", "json"])
    report = MeanReport.model_validate_json(capsys.readouterr().out)
    assert list(report.mean.values()) == pytest.approx([5.0, 5.0, 5.0])


def test_compare_passes(chain_file, capsys):
    code = main(["compare", chain_file(LABELLED), "--n", "30", "--routes", "dp,closed,gf", "--tol", "1e-9"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.strip().endswith("PASS")


def test_compare_three_state_enumeration(chain_file, capsys):
    code = main(["compare", chain_file({"P": THREE_STATE, "U": [1]}), "--n", "8",
                 "--routes", "dp,enum", "--tol", "1e-12", "--format", "json"])
    report = ComparisonReport.model_validate_json(capsys.readouterr().out)
    assert code == EXIT_OK
    assert report.passed
    assert report.pairs[0].max_abs_diff <= 1e-12


def test_compare_needs_two_routes(chain_file):
    assert main(["compare", chain_file(LABELLED), "--n", "5", "--routes", "dp"]) == EXIT_INVALID
    assert main(["compare", chain_file(LABELLED), "--n", "5", "--routes", "dp,dp"]) == EXIT_INVALID


def test_compare_breach_still_prints(chain_file, capsys):
    """
    A tolerance breach exits 1 and the report is still written.
    """
    sticky = {"P": [[0.9, 0.1], [0.1, 0.9]], "U": [0]}
    code = main(["compare", chain_file(sticky), "--n", "40", "--routes", "dp,closed", "--tol", "0"])
    assert code == EXIT_TOLERANCE
    assert "FAIL" in capsys.readouterr().out


def test_compare_unknown_route(chain_file):
    assert main(["compare", chain_file(LABELLED), "--n", "5", "--routes", "dp,magic"]) == EXIT_INVALID


def test_simulate_reproducible(chain_file, capsys):
    """
    The same seed gives byte-identical output.
    """
    args = ["simulate", chain_file(LABELLED), "--n", "6", "--samples", "5000", "--seed", "13", "--start", "state1"]
    assert main(args) == EXIT_OK
    first = capsys.readouterr().out
    assert main(args + ["--workers", "2"]) == EXIT_OK
    assert capsys.readouterr().out == first
    rows = read_csv(first)
    assert rows[0] == ["k", "count", "empirical", "dp", "z"]
    assert sum(int(row[1]) for row in rows[1:]) == 5000


def test_simulate_json_metadata(chain_file, capsys):
    main(["simulate", chain_file(LABELLED), "--n", "10", "--samples", "20000", "--seed", "5", "--format", "json"])
    report = SimulationReport.model_validate_json(capsys.readouterr().out)
    assert report.generator == "PCG64"
    assert report.seed == 5
    assert report.start == "state0"
    assert "numpy" in report.meta
    assert len(report.z_scores) == 11


def test_simulate_rejects_zero_samples(chain_file):
    assert main(["simulate", chain_file(LABELLED), "--n", "5", "--samples", "0"]) == EXIT_INVALID


def test_simulate_unknown_start(chain_file):
    assert main(["simulate", chain_file(LABELLED), "--n", "5", "--start", "nowhere"]) == EXIT_INVALID


def test_json_output_is_plain_json(chain_file, capsys):
    main(["dist", chain_file(LABELLED), "--n", "2", "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) >= {"route", "n", "table", "meta"}
