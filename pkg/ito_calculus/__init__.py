from .models import ItoElement, ItoExpansion, MINUS, PLUS
from .algebra import basis, multiply, involution, standard_process, counting_standard_process, BASIS_NAMES
from .hp_table import hp_product, differential, dt, annihilation, creation, exchange
from .heisenberg import (
    heisenberg_pair_check,
    uncertainty_product,
    position_observation_intensities,
    HeisenbergTable,
    UncertaintyReport,
)
from .rendering import render_expansion, render_product_table, product_rows
from .exceptions import (
    ItoAlgebraError,
    UnknownBasisError,
    NoiseDimensionError,
    IndexRangeError,
    InvalidParameterError,
)

__version__ = "1.0.0"
__all__ = [
    "ItoElement",
    "ItoExpansion",
    "MINUS",
    "PLUS",
    "basis",
    "multiply",
    "involution",
    "standard_process",
    "counting_standard_process",
    "BASIS_NAMES",
    "hp_product",
    "differential",
    "dt",
    "annihilation",
    "creation",
    "exchange",
    "heisenberg_pair_check",
    "uncertainty_product",
    "position_observation_intensities",
    "HeisenbergTable",
    "UncertaintyReport",
    "render_expansion",
    "render_product_table",
    "product_rows",
    "ItoAlgebraError",
    "UnknownBasisError",
    "NoiseDimensionError",
    "IndexRangeError",
    "InvalidParameterError",
]
