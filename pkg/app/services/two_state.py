"""
Closed forms for the two-state chain P = [[1 - p, p], [q, 1 - q]] with U = {0}.

With r = 1 - p - q:
  - r = 0 (p + q = 1): g_i(n, k) = C(n, k) q^k p^(n-k) for both starting states;
  - otherwise g_1 follows from expanding G_1(t, k) = (1 - rt)(1 - p - rt)^(k-1) q / (1 - (1 - q)t)^(k+1),
    and g_0 from swapping p and q and replacing k by n - k.

The (-r)^j terms alternate in sign and can exceed the result by many orders of
magnitude (about 1e14 at n = 50, p = q = 0.1). Every term is formed in log
space, with the prefactor folded in, so no partial product overflows at long
horizons. When the bound sum |t_j| says double rounding could reach the
closed-form tolerance, the sum is redone with mpmath at a working precision
wide enough to absorb the cancellation.
"""
import functools
import logging
import math
from typing import Callable, Iterable

import numpy as np
from mpmath import mp
from scipy import special, stats

from app.config import settings
from app.exceptions import IndexOutOfRangeError, InvalidParametersError, RouteMismatchError
from app.models.chain import StochasticMatrix, SubsetMask
from app.models.occupancy import OccupancyTable
from app.models.two_state import ProofCoefficients, TwoStateParams

logger = logging.getLogger(__name__)

DOUBLE_EPSILON = float(np.finfo(float).eps)


@functools.lru_cache(maxsize=None)
def binomial(n: int, k: int) -> float:
    """C(n, k) in double precision by the multiplicative recurrence."""
    if k < 0 or k > n:
        return 0.0
    k = min(k, n - k)
    result = 1.0
    for i in range(1, k + 1):
        result = result * (n - k + i) / i
    return result


def _exact_binomial(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


def _log_binomial(n, k) -> np.ndarray:
    return special.gammaln(n + 1) - special.gammaln(k + 1) - special.gammaln(n - k + 1)


def _needs_extended(log_magnitude: float, count: float) -> bool:
    """True when double rounding on terms of size exp(log_magnitude) could approach the closed-form tolerance."""
    return log_magnitude + math.log(count * DOUBLE_EPSILON) > math.log(1e-3 * settings.CLOSED_FORM_TOLERANCE)


def _working_digits(log_magnitude: float) -> int:
    return max(mp.dps, int(math.ceil(max(log_magnitude, 0.0) / math.log(10))) + settings.CLOSED_FORM_GUARD_DIGITS)


def _stable_sum(log_terms: np.ndarray, signs: np.ndarray, exact_terms: Callable[[], Iterable], n: int) -> float:
    """
    Sum of signs * exp(log_terms), with precision chosen from the term magnitudes.

    Terms are kept in log space so that no partial product overflows at long
    horizons. When the bound sum |t_j| says double rounding is unsafe, the sum
    is redone from exact_terms() under mpmath.
    """
    log_bound = float(special.logsumexp(log_terms))
    # a log built from gammaln values up to log(n!) is off by about that many ulps
    ulps = len(log_terms) + float(special.gammaln(n + 1)) + float(np.max(np.abs(log_terms)))
    if not _needs_extended(log_bound, ulps):
        return math.fsum(signs * np.exp(log_terms))
    digits = _working_digits(log_bound)
    logger.debug(f"Extended-precision sum of {len(log_terms)} terms at {digits} digits")
    with mp.workdps(digits):
        return float(mp.fsum(exact_terms()))


def _check_index(n: int, k: int) -> None:
    if n < 0 or not 0 <= k <= n:
        raise IndexOutOfRangeError(n, k)


def _is_binomial(params: TwoStateParams) -> bool:
    return abs(params.r) < settings.BINOMIAL_R_EPSILON


def _warn_cancellation(params: TwoStateParams, n: int) -> None:
    if abs(params.r) > settings.CANCELLATION_R_THRESHOLD and n > settings.CANCELLATION_N_THRESHOLD:
        logger.warning(
            f"Closed form with |r|={abs(params.r):.3f} and n={n}: alternating terms cancel heavily"
        )


def binomial_branch(params: TwoStateParams, n: int, k: int) -> float:
    """g_i(n, k) = C(n, k) q^k p^(n-k), the law when p + q = 1."""
    _check_index(n, k)
    return float(stats.binom.pmf(k, n, params.q))


def g1_closed(params: TwoStateParams, n: int, k: int) -> float:
    """
    Pr(N_n = k | X_0 = 1) for U = {0}.

    Term j is C(k, j) C(n-j, n-k-j) (1 - jp/k) q (1-q)^(n-k-j) (1-p)^(k-1-j) (-r)^j.
    """
    _check_index(n, k)
    if _is_binomial(params):
        return binomial_branch(params, n, k)
    if k == 0:
        return (1.0 - params.q) ** n
    _warn_cancellation(params, n)
    p, q, r = params.p, params.q, params.r
    j = np.arange(min(k, n - k) + 1)
    log_terms = (
        math.log(q) + _log_binomial(k, j) + _log_binomial(n - j, n - k - j) + np.log1p(-j * p / k)
        + (n - k - j) * math.log1p(-q) + (k - 1 - j) * math.log1p(-p) + j * math.log(abs(r))
    )
    signs = np.sign(-r) ** j

    def exact_terms():
        one = mp.mpf(1)
        p, q, r = one * params.p, one * params.q, one * params.r
        for i in range(len(j)):
            yield (_exact_binomial(k, i) * _exact_binomial(n - i, n - k - i) * (one - i * p / k)
                   * q * (one - q) ** (n - k - i) * (one - p) ** (k - 1 - i) * (-r) ** i)

    return _stable_sum(log_terms, signs, exact_terms, n)


def g0_closed(params: TwoStateParams, n: int, k: int) -> float:
    """
    Pr(N_n = k | X_0 = 0) for U = {0}.

    Term j is C(n-k, j) C(n-j, k-j) (1 - jq/(n-k)) p (1-q)^(n-k-1-j) (1-p)^(k-j) (-r)^j.
    """
    _check_index(n, k)
    if _is_binomial(params):
        return binomial_branch(params, n, k)
    if k == n:
        return (1.0 - params.p) ** n
    _warn_cancellation(params, n)
    p, q, r = params.p, params.q, params.r
    j = np.arange(min(k, n - k) + 1)
    log_terms = (
        math.log(p) + _log_binomial(n - k, j) + _log_binomial(n - j, k - j) + np.log1p(-j * q / (n - k))
        + (n - k - 1 - j) * math.log1p(-q) + (k - j) * math.log1p(-p) + j * math.log(abs(r))
    )
    signs = np.sign(-r) ** j

    def exact_terms():
        one = mp.mpf(1)
        p, q, r = one * params.p, one * params.q, one * params.r
        for i in range(len(j)):
            yield (_exact_binomial(n - k, i) * _exact_binomial(n - i, k - i) * (one - i * q / (n - k))
                   * p * (one - q) ** (n - k - 1 - i) * (one - p) ** (k - i) * (-r) ** i)

    return _stable_sum(log_terms, signs, exact_terms, n)


def swap_symmetry(params: TwoStateParams, n: int, k: int) -> float:
    """g_0(n, k) computed as g_1(n, n - k) of the chain with p and q swapped."""
    return g1_closed(params.swapped(), n, n - k)


def _a_coefficients(params: TwoStateParams, k: int, one, comb) -> list:
    """a_0(k) .. a_k(k) through the split form C(k, i) - p C(k-1, i-1)."""
    p, r = one * params.p, one * params.r
    a = [(one - p) ** (k - 1)]
    for i in range(1, k):
        a.append((comb(k, i) - p * comb(k - 1, i - 1)) * (one - p) ** (k - 1 - i) * (-r) ** i)
    a.append((-r) ** k)
    return a


def _b_coefficients(params: TwoStateParams, k: int, T: int, one, comb) -> list:
    q = one * params.q
    return [comb(k + i, i) * q * (one - q) ** i for i in range(T + 1)]


def proof_coefficients(params: TwoStateParams, k: int, T: int) -> ProofCoefficients:
    """
    The a, b, c coefficient arrays of G_1(t, k), k >= 1.

    a_i uses the split form C(k, i) - p C(k-1, i-1), independent of the
    (1 - i p / k) factor used by g1_closed. c is the truncated convolution of a
    and b; entries whose magnitude bound makes double rounding unsafe are
    recomputed with mpmath.
    """
    if k < 1:
        raise InvalidParametersError(f"proof_coefficients needs k >= 1, got {k}")
    if T < 0:
        raise InvalidParametersError(f"Truncation order must be non-negative, got {T}")
    a = np.array(_a_coefficients(params, k, 1.0, binomial))
    b = np.array(_b_coefficients(params, k, T, 1.0, binomial))
    c = np.convolve(a, b)[: T + 1]

    bound = np.convolve(np.abs(a), np.abs(b))[: T + 1]
    unsafe = [i for i in range(T + 1) if bound[i] > 0 and _needs_extended(math.log(bound[i]), k + 1)]
    if unsafe:
        with mp.workdps(_working_digits(math.log(bound.max()))):
            one = mp.mpf(1)
            a_mp = _a_coefficients(params, k, one, _exact_binomial)
            b_mp = _b_coefficients(params, k, T, one, _exact_binomial)
            for i in unsafe:
                c[i] = float(mp.fsum(a_mp[j] * b_mp[i - j] for j in range(min(i, k) + 1)))
    return ProofCoefficients(k=k, a=a, b=b, c=c)


def g1_series(params: TwoStateParams, k: int, T: int) -> np.ndarray:
    """Coefficients 0..T of G_1(t, k)."""
    if k == 0:
        return (1.0 - params.q) ** np.arange(T + 1)
    return np.array(proof_coefficients(params, k, T).c)


def g0_from_g1_series(params: TwoStateParams, k: int, T: int) -> np.ndarray:
    """
    Coefficients 0..T of G_0(t, k) obtained from G_1(t, k).

    For k >= 1, G_0 = (1 - p - rt) q^-1 G_1. For k = 0 the two series are
    (1 - rt) / (1 - (1 - q)t) and 1 / (1 - (1 - q)t), so the multiplier is (1 - rt).
    Coefficient m equals g_0(m + k, k).
    """
    if k < 0:
        raise InvalidParametersError(f"Occupancy count must be non-negative, got {k}")
    c = g1_series(params, k, T)
    shifted = np.concatenate([[0.0], c[:-1]])
    if k == 0:
        return c - params.r * shifted
    return ((1.0 - params.p) * c - params.r * shifted) / params.q


def two_state_params(P: StochasticMatrix) -> TwoStateParams:
    """Read (p, q) off a 2x2 transition matrix."""
    if P.size != 2:
        raise RouteMismatchError("closed", f"closed forms require a 2-state chain, got {P.size} states")
    return TwoStateParams(P.entries[0, 1], P.entries[1, 0])


def closed_form_table(P: StochasticMatrix, U: SubsetMask, n: int) -> OccupancyTable:
    """
    Full table g(n, k) of a two-state chain from the closed forms.

    U = {1} is handled by relabelling the states so that U is state 0.

    :raises RouteMismatchError: If the chain is not 2-state or p, q lie on {0, 1}.
    """
    if P.size != 2:
        raise RouteMismatchError("closed", f"closed forms require a 2-state chain, got {P.size} states")
    U.check_length(P.size)
    if n < 0:
        raise InvalidParametersError(f"Horizon must be non-negative, got {n}")
    values = np.zeros((2, n + 1))
    if U.is_empty or U.is_full:
        values[:, n if U.is_full else 0] = 1.0
        return OccupancyTable(n, values, P.labels)

    inside = int(U.indices[0])
    outside = 1 - inside
    try:
        params = TwoStateParams(P.entries[inside, outside], P.entries[outside, inside])
    except InvalidParametersError as e:
        raise RouteMismatchError("closed", str(e))
    for k in range(n + 1):
        values[inside, k] = g0_closed(params, n, k)
        values[outside, k] = g1_closed(params, n, k)
    return OccupancyTable(n, values, P.labels)
