import logging

import numpy as np

from .exceptions import InvalidParameterError, NoiseDimensionError, UnknownBasisError
from .models import ItoElement

logger = logging.getLogger(__name__)

# d = 1 matrices in the (-, o, +) ordering
_BASIS_MATRICES = {
    "dt": [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    "dw": [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
    "dm": [[0, 1, 0], [0, 1, 1], [0, 0, 0]],
    "e_minus": [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
    "e_plus": [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
    "e": [[0, 0, 0], [0, 1, 0], [0, 0, 0]],
}

BASIS_NAMES = tuple(_BASIS_MATRICES)


def basis(name: str) -> ItoElement:
    """One of the d = 1 differentials dt, dw, dm, e_minus, e_plus, e"""
    try:
        return ItoElement(1, np.array(_BASIS_MATRICES[name]))
    except KeyError:
        raise UnknownBasisError(f"unknown basis differential '{name}', expected one of {BASIS_NAMES}")


def multiply(a: ItoElement, b: ItoElement) -> ItoElement:
    """Ito product of two differentials: the matrix product"""
    if a.noise_dim != b.noise_dim:
        raise NoiseDimensionError(f"cannot multiply noise dims {a.noise_dim} and {b.noise_dim}")
    return a * b


def involution(a: ItoElement) -> ItoElement:
    return a.star()


def standard_process(epsilon: float) -> ItoElement:
    """
    dy = dLambda^+ + dLambda_- + epsilon dLambda with (dy)^2 - dt = epsilon dy.

    epsilon = 0 is the Wiener differential dw, epsilon = 1 the compensated
    Poisson differential dm.
    """
    if epsilon < 0:
        raise InvalidParameterError(f"epsilon must be nonnegative, got {epsilon}")
    return basis("e_plus") + basis("e_minus") + epsilon * basis("e")


def counting_standard_process(nu: float) -> ItoElement:
    """Standard process of a Poisson counter with intensity nu: epsilon = nu^(-1/2)"""
    if nu <= 0:
        raise InvalidParameterError(f"intensity must be positive, got {nu}")
    return standard_process(nu ** -0.5)
