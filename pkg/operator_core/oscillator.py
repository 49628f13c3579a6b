from typing import Tuple

import numpy as np

from .models import Operator


def annihilation(n: int) -> Operator:
    """Ladder operator a truncated to the lowest n number states"""
    return Operator(np.diag(np.sqrt(np.arange(1, n, dtype=float)), k=1))


def truncated_oscillator(n: int, hbar: float = 1.0) -> Tuple[Operator, Operator]:
    """
    Position and momentum Q = (hbar/2)^(1/2)(a + a^+), P = i(hbar/2)^(1/2)(a^+ - a).

    [Q, P] = i hbar I holds on the leading (n-1)-block; the last diagonal
    entry carries the truncation error.
    """
    if n < 2:
        raise ValueError("oscillator truncation needs at least two levels")
    if hbar <= 0:
        raise ValueError("hbar must be positive")
    a = annihilation(n).data
    scale = np.sqrt(hbar / 2.0)
    Q = scale * (a + a.conj().T)
    P = 1j * scale * (a.conj().T - a)
    return Operator(Q), Operator(P)
