import numpy as np

from .models import Operator

SIGMA_X = Operator(np.array([[0, 1], [1, 0]]))
SIGMA_Y = Operator(np.array([[0, -1j], [1j, 0]]))
SIGMA_Z = Operator(np.array([[1, 0], [0, -1]]))
IDENTITY_2 = Operator.identity(2)


def basis_projector(dim: int, index: int) -> Operator:
    """Diagonal projector |index><index|"""
    matrix = np.zeros((dim, dim))
    matrix[index, index] = 1.0
    return Operator(matrix)
