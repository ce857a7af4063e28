from .chain import StochasticMatrix, SubsetMask, BlockDecomposition, LiftedPair
from .occupancy import OccupancyTable
from .series import MatrixSeries, VectorSeries
from .two_state import TwoStateParams, ProofCoefficients
from .moments import PgfEvaluation, CostFunction
from .simulation import SimConfig, EmpiricalDistribution
