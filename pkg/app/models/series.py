from dataclasses import dataclass

import numpy as np

from app.models._frozen import frozen_array


@dataclass(frozen=True)
class MatrixSeries:
    """
    Truncated power series in t with matrix coefficients.

    coeffs[m] is the coefficient of t^m; everything above `order` is dropped.
    Coefficients are usually square; rectangular series appear as the W block
    of the V/W reduction.

    Attributes:
      coeffs (np.ndarray): (order + 1, rows, cols) array.
    """
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = frozen_array(self.coeffs)
        if coeffs.ndim != 3:
            raise ValueError(f"MatrixSeries coefficients must be 3-dimensional, got shape {coeffs.shape}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def shape(self) -> tuple:
        return self.coeffs.shape[1:]

    @classmethod
    def identity(cls, dim: int, order: int) -> "MatrixSeries":
        coeffs = np.zeros((order + 1, dim, dim))
        coeffs[0] = np.eye(dim)
        return cls(coeffs)

    @classmethod
    def polynomial(cls, terms, order: int) -> "MatrixSeries":
        """Build the series sum_m terms[m] t^m, padded or cut to `order`."""
        terms = [np.atleast_2d(np.asarray(term, dtype=float)) for term in terms]
        coeffs = np.zeros((order + 1,) + terms[0].shape)
        for m, term in enumerate(terms[: order + 1]):
            coeffs[m] = term
        return cls(coeffs)

    def __add__(self, other: "MatrixSeries") -> "MatrixSeries":
        from app.services.series_gf import series_add
        return series_add(self, other)

    def __sub__(self, other: "MatrixSeries") -> "MatrixSeries":
        from app.services.series_gf import series_add
        return series_add(self, MatrixSeries(-other.coeffs))

    def __mul__(self, other: "MatrixSeries") -> "MatrixSeries":
        from app.services.series_gf import series_mul
        return series_mul(self, other)


@dataclass(frozen=True)
class VectorSeries:
    """
    Truncated power series with vector coefficients, G(t, k) for one k.

    Attributes:
      coeffs (np.ndarray): (order + 1, dim) array; coeffs[m, i] is the
        coefficient of t^m in G_i(t, k), i.e. g_i(m + k, k).
      k (int): The occupancy count the series was built for.
    """
    coeffs: np.ndarray
    k: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", frozen_array(self.coeffs))

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]
