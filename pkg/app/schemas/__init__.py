from .chain import ChainFile
from .result import ResultTable, MeanReport, ComparisonReport, RouteDiscrepancy, SimulationReport
from .response import APIResponse
