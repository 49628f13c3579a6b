"""
Ito differentials as triangular matrices on Minkowski index space.

Rows and columns are ordered (-, 1, ..., d, +). The differential
dLambda_mu^nu is the matrix unit at row mu in {-, 1..d} and column nu in
{1..d, +}; dt is dLambda_-^+. The last row and the first column are always
zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple, Union

import numpy as np

from .exceptions import IndexRangeError, NoiseDimensionError

MINUS = "-"
PLUS = "+"

Index = Union[str, int]
Pair = Tuple[Index, Index]

# d = 1 names of the four canonical differentials
D1_LABELS: Dict[Pair, str] = {
    (MINUS, PLUS): "dt",
    (MINUS, 1): "e_minus",
    (1, PLUS): "e_plus",
    (1, 1): "e",
}
D1_ORDER = [(MINUS, PLUS), (MINUS, 1), (1, PLUS), (1, 1)]


def row_position(mu: Index, noise_dim: int) -> int:
    if mu == MINUS:
        return 0
    if isinstance(mu, (int, np.integer)) and not isinstance(mu, bool) and 1 <= mu <= noise_dim:
        return int(mu)
    raise IndexRangeError(f"lower index {mu!r} not in {{-, 1..{noise_dim}}}")


def column_position(nu: Index, noise_dim: int) -> int:
    if nu == PLUS:
        return noise_dim + 1
    if isinstance(nu, (int, np.integer)) and not isinstance(nu, bool) and 1 <= nu <= noise_dim:
        return int(nu)
    raise IndexRangeError(f"upper index {nu!r} not in {{1..{noise_dim}, +}}")


def row_index(position: int, noise_dim: int) -> Index:
    return MINUS if position == 0 else position


def column_index(position: int, noise_dim: int) -> Index:
    return PLUS if position == noise_dim + 1 else position


@dataclass(frozen=True, eq=False)
class ItoElement:
    """Element of the (d+2)x(d+2) triangular matrix Ito algebra"""
    noise_dim: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.noise_dim < 1:
            raise NoiseDimensionError("noise dimension must be positive")
        size = self.noise_dim + 2
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.shape != (size, size):
            raise NoiseDimensionError(f"expected a {size}x{size} matrix, got {matrix.shape}")
        if np.any(matrix[-1, :] != 0) or np.any(matrix[:, 0] != 0):
            raise IndexRangeError("entries in the + row or the - column are not representable")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def zero(cls, noise_dim: int = 1) -> 'ItoElement':
        return cls(noise_dim, np.zeros((noise_dim + 2, noise_dim + 2)))

    def _check(self, other: 'ItoElement'):
        if self.noise_dim != other.noise_dim:
            raise NoiseDimensionError(f"noise dimensions differ: {self.noise_dim} vs {other.noise_dim}")

    def __mul__(self, other: Union['ItoElement', complex]) -> 'ItoElement':
        if isinstance(other, ItoElement):
            self._check(other)
            return ItoElement(self.noise_dim, self.matrix @ other.matrix)
        return ItoElement(self.noise_dim, self.matrix * other)

    def __rmul__(self, scalar: complex) -> 'ItoElement':
        return ItoElement(self.noise_dim, self.matrix * scalar)

    def __add__(self, other: 'ItoElement') -> 'ItoElement':
        self._check(other)
        return ItoElement(self.noise_dim, self.matrix + other.matrix)

    def __sub__(self, other: 'ItoElement') -> 'ItoElement':
        self._check(other)
        return ItoElement(self.noise_dim, self.matrix - other.matrix)

    def __neg__(self) -> 'ItoElement':
        return ItoElement(self.noise_dim, -self.matrix)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ItoElement):
            return NotImplemented
        return self.noise_dim == other.noise_dim and bool(np.array_equal(self.matrix, other.matrix))

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def star(self) -> 'ItoElement':
        """Involution a* = J a^dagger J, J reversing the Minkowski index order"""
        return ItoElement(self.noise_dim, self.matrix.conj().T[::-1, ::-1])

    def expansion(self) -> 'ItoExpansion':
        coefficients = {}
        rows, columns = np.nonzero(self.matrix)
        for r, c in zip(rows, columns):
            key = (row_index(int(r), self.noise_dim), column_index(int(c), self.noise_dim))
            coefficients[key] = complex(self.matrix[r, c])
        return ItoExpansion(self.noise_dim, coefficients)

    def integer_matrix(self) -> np.ndarray:
        """Real part as integers, for comparison against displayed tables"""
        return self.matrix.real.astype(int)


@dataclass(frozen=True, eq=False)
class ItoExpansion:
    """Sparse coefficients over the labelled differentials dLambda_mu^nu"""
    noise_dim: int
    coefficients: Dict[Pair, complex] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for (mu, nu), value in self.coefficients.items():
            row_position(mu, self.noise_dim)
            column_position(nu, self.noise_dim)
            if value != 0:
                cleaned[(mu, nu)] = complex(value)
        object.__setattr__(self, "coefficients", cleaned)

    @classmethod
    def single(cls, mu: Index, nu: Index, noise_dim: int = 1, coefficient: complex = 1.0) -> 'ItoExpansion':
        return cls(noise_dim, {(mu, nu): coefficient})

    def coefficient(self, mu: Index, nu: Index) -> complex:
        return self.coefficients.get((mu, nu), 0j)

    def to_element(self) -> ItoElement:
        size = self.noise_dim + 2
        matrix = np.zeros((size, size), dtype=np.complex128)
        for (mu, nu), value in self.coefficients.items():
            matrix[row_position(mu, self.noise_dim), column_position(nu, self.noise_dim)] += value
        return ItoElement(self.noise_dim, matrix)

    def _check(self, other: 'ItoExpansion'):
        if self.noise_dim != other.noise_dim:
            raise NoiseDimensionError(f"noise dimensions differ: {self.noise_dim} vs {other.noise_dim}")

    def __add__(self, other: 'ItoExpansion') -> 'ItoExpansion':
        self._check(other)
        merged = dict(self.coefficients)
        for key, value in other.coefficients.items():
            merged[key] = merged.get(key, 0j) + value
        return ItoExpansion(self.noise_dim, merged)

    def __sub__(self, other: 'ItoExpansion') -> 'ItoExpansion':
        return self + other.scaled(-1)

    def scaled(self, scalar: complex) -> 'ItoExpansion':
        return ItoExpansion(self.noise_dim, {k: v * scalar for k, v in self.coefficients.items()})

    def __mul__(self, other: Union['ItoExpansion', complex]) -> 'ItoExpansion':
        if not isinstance(other, ItoExpansion):
            return self.scaled(other)
        self._check(other)
        # dLambda_mu^iota dLambda_kappa^nu = delta_kappa^iota dLambda_mu^nu
        product: Dict[Pair, complex] = {}
        for (mu, iota), left in self.coefficients.items():
            for (kappa, nu), right in other.coefficients.items():
                if iota == kappa:
                    product[(mu, nu)] = product.get((mu, nu), 0j) + left * right
        return ItoExpansion(self.noise_dim, product)

    def __rmul__(self, scalar: complex) -> 'ItoExpansion':
        return self.scaled(scalar)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ItoExpansion):
            return NotImplemented
        return self.noise_dim == other.noise_dim and self.coefficients == other.coefficients

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coefficients
