from typing import List, Tuple

from jinja2 import Environment

from .algebra import BASIS_NAMES, basis, multiply
from .models import D1_LABELS, D1_ORDER, ItoExpansion

_environment = Environment(trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)

_PRODUCT_TABLE = _environment.from_string(
    "# Ito products for one-dimensional noise\n"
    "# basis: {{ names | join(', ') }}\n"
    "{% for left, right, result in rows %}\n"
    "{{ left }} * {{ right }} = {{ result }}\n"
    "{% endfor %}\n"
)


def format_coefficient(value: complex) -> str:
    real, imag = value.real, value.imag
    if imag == 0:
        return f"{real:g}"
    if real == 0:
        return f"{imag:g}j"
    return f"({real:g}{imag:+g}j)"


def _term_label(expansion: ItoExpansion, key) -> str:
    if expansion.noise_dim == 1 and key in D1_LABELS:
        return D1_LABELS[key]
    mu, nu = key
    return f"dL[{mu},{nu}]"


def _ordered_keys(expansion: ItoExpansion) -> List[Tuple]:
    if expansion.noise_dim == 1:
        return [key for key in D1_ORDER if key in expansion.coefficients]

    def rank(index, low, high):
        return low if index == "-" else high if index == "+" else index

    size = expansion.noise_dim + 1
    return sorted(expansion.coefficients, key=lambda k: (rank(k[0], 0, size), rank(k[1], 0, size)))


def render_expansion(expansion: ItoExpansion) -> str:
    """Text form such as 'dt + 0.5*e' or '1j*dt'"""
    if expansion.is_zero():
        return "0"
    text = ""
    for key in _ordered_keys(expansion):
        value = expansion.coefficients[key]
        label = _term_label(expansion, key)
        negative = value.imag == 0 and value.real < 0
        magnitude = -value if negative else value
        term = label if magnitude == 1 else f"{format_coefficient(magnitude)}*{label}"
        if not text:
            text = f"-{term}" if negative else term
        else:
            text += f" - {term}" if negative else f" + {term}"
    return text


def product_rows() -> List[Tuple[str, str, str]]:
    rows = []
    for left in BASIS_NAMES:
        for right in BASIS_NAMES:
            result = multiply(basis(left), basis(right)).expansion()
            rows.append((left, right, render_expansion(result)))
    return rows


def render_product_table() -> str:
    """All d = 1 basis products as deterministic text"""
    return _PRODUCT_TABLE.render(names=BASIS_NAMES, rows=product_rows())
