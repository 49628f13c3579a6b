import math
from dataclasses import dataclass
from typing import Tuple

from .exceptions import InvalidParameterError
from .hp_table import annihilation, creation, dt
from .models import ItoExpansion


@dataclass(frozen=True)
class HeisenbergTable:
    """Products of the error differential dw and the force differential df"""
    hbar: float
    df_dw: ItoExpansion
    dw_df: ItoExpansion
    dw_dw: ItoExpansion
    df_df: ItoExpansion

    @property
    def commutator(self) -> ItoExpansion:
        """df dw - dw df = 2 i hbar dt"""
        return self.df_dw - self.dw_df


@dataclass(frozen=True)
class UncertaintyReport:
    sigma: float
    tau: float
    hbar: float
    product: float
    bound: float
    slack: float
    satisfies: bool


def heisenberg_pair_check(hbar: float) -> HeisenbergTable:
    """
    Multiplication table of dw = dLambda_- + dLambda^+ and
    df = i hbar (dLambda_- - dLambda^+).
    """
    if hbar <= 0:
        raise InvalidParameterError(f"hbar must be positive, got {hbar}")
    dw = annihilation() + creation()
    df = (annihilation() - creation()).scaled(1j * hbar)
    return HeisenbergTable(
        hbar=hbar,
        df_dw=df * dw,
        dw_df=dw * df,
        dw_dw=dw * dw,
        df_df=df * df,
    )


def uncertainty_product(sigma: float, tau: float, hbar: float, abs_tol: float = 1e-10) -> UncertaintyReport:
    """Check the white-noise uncertainty relation sigma * tau >= hbar / 2"""
    if sigma <= 0 or tau <= 0 or hbar <= 0:
        raise InvalidParameterError("sigma, tau and hbar must all be positive")
    product = sigma * tau
    bound = hbar / 2.0
    slack = product - bound
    return UncertaintyReport(
        sigma=sigma,
        tau=tau,
        hbar=hbar,
        product=product,
        bound=bound,
        slack=slack,
        satisfies=slack >= -abs_tol,
    )


def position_observation_intensities(lam: float, hbar: float) -> Tuple[float, float]:
    """
    Error and force intensities of the minimal-perturbation position
    observation: sigma^2 = (2 lam)^(-1), tau^2 = lam hbar^2 / 2.
    """
    if lam <= 0 or hbar <= 0:
        raise InvalidParameterError("accuracy and hbar must be positive")
    return math.sqrt(1.0 / (2.0 * lam)), math.sqrt(lam * hbar * hbar / 2.0)
