import itertools
import logging
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from app import __version__
from app.config import Settings, settings as default_settings
from app.exceptions import InvalidParametersError, RouteMismatchError
from app.models.chain import StochasticMatrix, SubsetMask
from app.models.occupancy import OccupancyTable
from app.models.simulation import SimConfig
from app.schemas.chain import ChainFile
from app.schemas.result import ComparisonReport, MeanReport, ResultTable, RouteDiscrepancy, SimulationReport
from app.services import oracle
from app.services.chain_core import lifted_pair
from app.services.moments import expected_occupancy
from app.services.occupancy_dp import occupancy_distribution, occupancy_layers, occupancy_moments
from app.services.series_gf import gf_table, vw_table
from app.services.two_state import closed_form_table

logger = logging.getLogger(__name__)

TableRoute = Callable[[StochasticMatrix, SubsetMask, int], OccupancyTable]


class RouteService:
    """
    Service that runs the occupancy routes on a parsed chain file.

    Routes:
      - "dp": layered recursion (reference).
      - "gf": generating-function coefficients.
      - "vw": generating functions through the V/W reduction.
      - "closed": two-state closed forms.
      - "enum": exhaustive path enumeration.
    """
    def __init__(self, config: Settings = None) -> None:
        self.settings = config or default_settings
        self.logger = logger
        self.routes: Dict[str, TableRoute] = {
            "dp": occupancy_distribution,
            "gf": gf_table,
            "vw": vw_table,
            "closed": closed_form_table,
            "enum": lambda P, U, n: oracle.enumerate_table(P, U, n, self.settings.MAX_ENUMERATED_PATHS),
        }

    def tolerance(self, route: str) -> float:
        """Declared accuracy of a route against exact arithmetic."""
        if route == "closed":
            return self.settings.CLOSED_FORM_TOLERANCE
        return self.settings.ROUTE_TOLERANCE

    def load(self, chain: ChainFile) -> Tuple[StochasticMatrix, SubsetMask]:
        return chain.to_chain(tolerance=self.settings.ROW_SUM_TOLERANCE)

    def _meta(self, route: str, n: int) -> dict:
        meta = {"route": route, "tolerance": self.tolerance(route), "version": __version__}
        if route in ("gf", "vw"):
            meta["truncation_order"] = n
        if route == "enum":
            meta["max_paths"] = self.settings.MAX_ENUMERATED_PATHS
        return meta

    def table(self, P: StochasticMatrix, U: SubsetMask, n: int, route: str) -> OccupancyTable:
        if route not in self.routes:
            raise RouteMismatchError(route, f"unknown route, choose from {sorted(self.routes)}")
        if n < 0:
            raise InvalidParametersError(f"Horizon must be non-negative, got {n}")
        self.logger.debug(f"Running route {route} on {P.size} states, horizon {n}")
        return self.routes[route](P, U, n)

    def dist(self, chain: ChainFile, n: int, route: str = "dp", all_layers: bool = False) -> ResultTable:
        """
        Compute the occupancy table of a chain with one route.

        :param all_layers: Also return the tables of every horizon 0..n (dp only).
        :raises RouteMismatchError: If the route cannot serve this chain.
        """
        P, U = self.load(chain)
        table = self.table(P, U, n, route)
        layers = None
        if all_layers:
            if route != "dp":
                raise RouteMismatchError(route, "all layers are only retained by the dp route")
            layers = [layer.as_dict() for layer in occupancy_layers(P, U, n)]
        return ResultTable(route=route, n=n, table=table.as_dict(), layers=layers, meta=self._meta(route, n))

    def mean(self, chain: ChainFile, n: int) -> MeanReport:
        """Expected occupancy e(n) and Var(N_n) per state."""
        P, U = self.load(chain)
        pair = lifted_pair(P, U)
        means = expected_occupancy(P, pair, n)
        _, variances = occupancy_moments(occupancy_distribution(P, U, n))
        return MeanReport(
            n=n,
            mean={label: float(v) for label, v in zip(P.labels, means)},
            variance={label: float(v) for label, v in zip(P.labels, variances)},
            meta={"version": __version__},
        )

    def compare(self, chain: ChainFile, n: int, routes: List[str], tolerance: Optional[float] = None) -> ComparisonReport:
        """
        Run several routes and report the largest pairwise discrepancies.

        :param tolerance: Pass threshold; defaults to the loosest declared tolerance of the routes.
        :raises InvalidParametersError: If fewer than two distinct routes are given.
        """
        routes = list(dict.fromkeys(routes))
        if len(routes) < 2:
            raise InvalidParametersError("compare needs at least two distinct routes")
        tolerance = max(self.tolerance(r) for r in routes) if tolerance is None else tolerance
        P, U = self.load(chain)
        values = {route: self.table(P, U, n, route).values for route in routes}

        pairs = []
        for left, right in itertools.combinations(routes, 2):
            diff = np.abs(values[left] - values[right])
            i, k = np.unravel_index(int(np.argmax(diff)), diff.shape)
            pairs.append(RouteDiscrepancy(
                left=left, right=right, max_abs_diff=float(diff[i, k]), state=P.labels[i], k=int(k),
            ))
        stacked = np.stack(list(values.values()))
        spread = stacked.max(axis=0) - stacked.min(axis=0)
        worst = max(pair.max_abs_diff for pair in pairs)
        passed = worst <= tolerance
        if not passed:
            self.logger.warning(f"Route discrepancy {worst!r} exceeds tolerance {tolerance!r}")
        return ComparisonReport(
            n=n,
            routes=routes,
            tolerance=tolerance,
            pairs=pairs,
            cells={label: [float(v) for v in row] for label, row in zip(P.labels, spread)},
            max_discrepancy=worst,
            passed=passed,
            meta={"version": __version__, "truncation_order": n},
        )

    def simulate(self, chain: ChainFile, n: int, samples: Optional[int] = None, seed: Optional[int] = None,
                 start=0, workers: Optional[int] = None) -> SimulationReport:
        """
        Monte Carlo tally of N_n from one start state, with z-scores against DP.
        """
        P, U = self.load(chain)
        start_index = chain.resolve_state(start)
        cfg = SimConfig(
            samples=self.settings.DEFAULT_SAMPLES if samples is None else samples,
            seed=self.settings.DEFAULT_SEED if seed is None else seed,
            start_state=start_index,
            workers=self.settings.SIMULATION_WORKERS if workers is None else workers,
        )
        empirical = oracle.simulate(P, U, n, cfg)
        reference = occupancy_distribution(P, U, n).row(start_index)
        statistic, p_value = oracle.chi_square(empirical, reference)
        return SimulationReport(
            n=n,
            start=P.labels[start_index],
            samples=cfg.samples,
            seed=cfg.seed,
            generator=empirical.generator,
            counts=[int(c) for c in empirical.counts],
            empirical=[float(v) for v in empirical.pmf],
            reference=[float(v) for v in reference],
            z_scores=[float(v) for v in oracle.z_scores(empirical, reference)],
            chi_square=statistic,
            p_value=p_value,
            meta={
                "version": __version__,
                "numpy": np.__version__,
                "chunk_size": self.settings.SIMULATION_CHUNK_SIZE,
            },
        )
