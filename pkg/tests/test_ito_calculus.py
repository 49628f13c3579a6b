from pathlib import Path

import numpy as np
import pytest

from ito_calculus import (
    BASIS_NAMES,
    InvalidParameterError,
    ItoElement,
    ItoExpansion,
    IndexRangeError,
    MINUS,
    NoiseDimensionError,
    PLUS,
    UnknownBasisError,
    annihilation,
    basis,
    counting_standard_process,
    creation,
    differential,
    dt,
    exchange,
    heisenberg_pair_check,
    hp_product,
    involution,
    multiply,
    position_observation_intensities,
    product_rows,
    render_expansion,
    render_product_table,
    standard_process,
    uncertainty_product,
)

GOLDEN = Path(__file__).parent / "golden" / "ito_tables.txt"


@pytest.fixture
def d():
    return {name: basis(name) for name in BASIS_NAMES}


class TestBasisProducts:
    """All identities here are exact: integer matrices, no tolerance"""

    def test_wiener_square(self, d):
        assert multiply(d["dw"], d["dw"]) == d["dt"]

    def test_poisson_square(self, d):
        assert d["dm"] * d["dm"] == d["dm"] + d["dt"]

    def test_wiener_and_poisson_do_not_commute(self, d):
        assert not d["dw"] * d["dm"] == d["dm"] * d["dw"]

    def test_off_diagonal_units(self, d):
        assert d["e_minus"] == d["dw"] * d["dm"] - d["dt"]
        assert d["e_plus"] == d["dm"] * d["dw"] - d["dt"]
        assert d["e"] == d["dm"] - d["dw"]

    def test_dt_annihilates_everything(self, d):
        for name in BASIS_NAMES:
            assert (d["dt"] * d[name]).is_zero()
            assert (d[name] * d["dt"]).is_zero()

    def test_integer_matrices(self, d):
        np.testing.assert_array_equal(d["dm"].integer_matrix(), [[0, 1, 0], [0, 1, 1], [0, 0, 0]])

    def test_unknown_name(self):
        with pytest.raises(UnknownBasisError):
            basis("dq")

    def test_unrepresentable_entry(self):
        with pytest.raises(IndexRangeError):
            ItoElement(1, np.eye(3))

    def test_noise_dimension_mismatch(self, d):
        with pytest.raises(NoiseDimensionError):
            multiply(d["dt"], ItoElement.zero(2))


class TestInvolution:

    def test_real_differentials_are_self_adjoint(self, d):
        for name in ("dt", "dw", "dm", "e"):
            assert involution(d[name]) == d[name]

    def test_creation_and_annihilation_swap(self, d):
        assert involution(d["e_minus"]) == d["e_plus"]

    def test_antimultiplicative(self, d):
        assert involution(d["dw"] * d["dm"]) == involution(d["dm"]) * involution(d["dw"])


class TestStandardProcess:

    @pytest.mark.parametrize("epsilon", [0.0, 0.5, 1.0, 2.0])
    def test_square_relation(self, epsilon, d):
        y = standard_process(epsilon)
        assert y * y - d["dt"] == epsilon * y

    def test_endpoints(self, d):
        assert standard_process(0.0) == d["dw"]
        assert standard_process(1.0) == d["dm"]

    def test_counting_process(self, d):
        y = counting_standard_process(4.0)
        assert y * y - d["dt"] == 0.5 * y

    def test_negative_epsilon(self):
        with pytest.raises(InvalidParameterError):
            standard_process(-0.1)


class TestHudsonParthasarathy:

    def test_annihilation_creation(self):
        assert annihilation() * creation() == dt()
        assert (creation() * annihilation()).is_zero()

    def test_exchange_is_idempotent(self):
        assert exchange() * exchange() == exchange()

    def test_table_rule(self):
        assert hp_product(1, MINUS, PLUS, 1) == differential(MINUS, PLUS)
        assert hp_product(1, MINUS, PLUS, MINUS).is_zero()

    @pytest.mark.parametrize("noise_dim", [2, 3])
    def test_multichannel_creation_annihilation(self, noise_dim):
        for j in range(1, noise_dim + 1):
            for k in range(1, noise_dim + 1):
                product = annihilation(noise_dim, j) * creation(noise_dim, k)
                expected = dt(noise_dim) if j == k else ItoExpansion(noise_dim)
                assert product == expected

    def test_expansion_matches_matrix_product(self, d):
        product = (d["dw"] * d["dm"]).expansion()
        assert product == d["dw"].expansion() * d["dm"].expansion()

    def test_index_out_of_range(self):
        with pytest.raises(IndexRangeError):
            differential(2, PLUS, noise_dim=1)


class TestHeisenberg:

    @pytest.mark.parametrize("hbar", [1.0, 2.0])
    def test_force_and_error_differentials(self, hbar):
        table = heisenberg_pair_check(hbar)
        assert table.df_dw == dt().scaled(1j * hbar)
        assert table.dw_df == dt().scaled(-1j * hbar)
        assert table.commutator == dt().scaled(2j * hbar)
        assert table.dw_dw == dt()
        assert table.df_df == dt().scaled(hbar * hbar)

    def test_minimal_intensities_saturate_the_bound(self):
        sigma, tau = position_observation_intensities(2.0, 1.0)
        report = uncertainty_product(sigma, tau, 1.0)
        assert report.product == 0.5
        assert report.satisfies

    def test_sub_minimal_noise_violates(self):
        report = uncertainty_product(0.1, 0.1, 1.0)
        assert not report.satisfies
        assert report.slack == pytest.approx(-0.49)

    def test_nonpositive_hbar(self):
        with pytest.raises(InvalidParameterError):
            heisenberg_pair_check(0.0)


class TestRendering:

    def test_render_expansion(self):
        assert render_expansion(dt().scaled(1j)) == "1j*dt"
        assert render_expansion(ItoExpansion(1)) == "0"
        assert render_expansion((basis("dm") * basis("dm")).expansion()) == "dt + e_minus + e_plus + e"

    def test_every_pair_listed(self):
        assert len(product_rows()) == len(BASIS_NAMES) ** 2

    def test_golden_table(self):
        assert render_product_table() == GOLDEN.read_text(encoding="utf-8")
