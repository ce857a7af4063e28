"""
CSV / JSON emission of reports.

Floats are written with repr(), the shortest string that round-trips to the
same double, so CSV and JSON carry identical values and route comparisons are
never limited by formatting.
"""
import io
from typing import Dict, List

import pandas as pd
from pydantic import BaseModel

from app.schemas.result import ComparisonReport, MeanReport, ResultTable, SimulationReport


def format_float(value: float) -> str:
    return repr(float(value))


def _to_csv(frame: pd.DataFrame, index_label: str = None) -> str:
    buffer = io.StringIO()
    frame.map(lambda v: format_float(v) if isinstance(v, float) else v).to_csv(
        buffer, index=index_label is not None, index_label=index_label, lineterminator="\n"
    )
    return buffer.getvalue()


def _table_frame(table: Dict[str, List[float]], n: int) -> pd.DataFrame:
    columns = [f"k={k}" for k in range(n + 1)]
    rows = {label: list(values) + [0.0] * (n + 1 - len(values)) for label, values in table.items()}
    return pd.DataFrame.from_dict(rows, orient="index", columns=columns, dtype=object)


def result_table_csv(result: ResultTable) -> str:
    """Header "state,k=0,...,k=n"; with layers, a leading "n" column and one block per horizon."""
    if not result.layers:
        return _to_csv(_table_frame(result.table, result.n), index_label="state")
    frames = []
    for horizon, layer in enumerate(result.layers):
        frame = _table_frame(layer, result.n)
        frame.insert(0, "n", horizon)
        frames.append(frame)
    return _to_csv(pd.concat(frames), index_label="state")


def mean_report_csv(report: MeanReport) -> str:
    frame = pd.DataFrame(
        {"mean": report.mean, "variance": report.variance}, dtype=object
    )
    return _to_csv(frame, index_label="state")


def comparison_report_csv(report: ComparisonReport) -> str:
    """Pairwise maxima, then the per (state, k) spread table, then the verdict line."""
    frame = pd.DataFrame([pair.model_dump() for pair in report.pairs], dtype=object)
    text = _to_csv(frame) + _to_csv(_table_frame(report.cells, report.n), index_label="state")
    verdict = "PASS" if report.passed else "FAIL"
    return text + f"# max_discrepancy={format_float(report.max_discrepancy)} tolerance={format_float(report.tolerance)} {verdict}\n"


def simulation_report_csv(report: SimulationReport) -> str:
    frame = pd.DataFrame(
        {
            "k": list(range(report.n + 1)),
            "count": report.counts,
            "empirical": report.empirical,
            "dp": report.reference,
            "z": report.z_scores,
        },
        dtype=object,
    )
    return _to_csv(frame)


def to_json(report: BaseModel) -> str:
    return report.model_dump_json(indent=2) + "\n"


CSV_WRITERS = {
    ResultTable: result_table_csv,
    MeanReport: mean_report_csv,
    ComparisonReport: comparison_report_csv,
    SimulationReport: simulation_report_csv,
}


def render(report: BaseModel, fmt: str = "csv") -> str:
    """Render any report as "csv" or "json"."""
    if fmt == "json":
        return to_json(report)
    return CSV_WRITERS[type(report)](report)
