"""Hudson-Parthasarathy multiplication table for noise dimension d"""
from .exceptions import IndexRangeError
from .models import MINUS, PLUS, Index, ItoExpansion, column_position, row_position


def differential(mu: Index, nu: Index, noise_dim: int = 1) -> ItoExpansion:
    """dLambda_mu^nu; dLambda_-^+ is dt"""
    return ItoExpansion.single(mu, nu, noise_dim)


def dt(noise_dim: int = 1) -> ItoExpansion:
    return differential(MINUS, PLUS, noise_dim)


def hp_product(iota: Index, mu: Index, nu: Index, kappa: Index, noise_dim: int = 1) -> ItoExpansion:
    """dLambda_mu^iota dLambda_kappa^nu = delta_kappa^iota dLambda_mu^nu"""
    if noise_dim < 1:
        raise IndexRangeError("noise dimension must be positive")
    row_position(mu, noise_dim)
    row_position(kappa, noise_dim)
    column_position(iota, noise_dim)
    column_position(nu, noise_dim)
    if iota != kappa:
        return ItoExpansion(noise_dim)
    return differential(mu, nu, noise_dim)


def annihilation(noise_dim: int = 1, channel: int = 1) -> ItoExpansion:
    return differential(MINUS, channel, noise_dim)


def creation(noise_dim: int = 1, channel: int = 1) -> ItoExpansion:
    return differential(channel, PLUS, noise_dim)


def exchange(noise_dim: int = 1, row: int = 1, column: int = 1) -> ItoExpansion:
    """Counting (row == column) or exchange differential dLambda_row^column"""
    return differential(row, column, noise_dim)
