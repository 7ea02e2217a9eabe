"""
Testes para o motor marginal.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fiq_aritmetica.erros import ArgumentError, ContractError
from fiq_aritmetica.models import Fiq, Tail, WideMarginal
from fiq_aritmetica.motor_marginal import (
    CarryModel,
    DecompositionOrder,
    add_marginal,
    adder_truth_row,
    mul_constant_marginal,
    propagate_carry,
    propagate_sum,
    set_bits,
    shift,
)

MEIO = Fraction(1, 2)
propensoes = st.fractions(min_value=0, max_value=1, max_denominator=1000)

# (Q_k, R_k, C_k+1) -> (S_k, C_k), na ordem da tabela do somador completo
TABELA_SOMADOR = [
    ((0, 0, 0), (0, 0)),
    ((0, 0, 1), (1, 0)),
    ((0, 1, 0), (1, 0)),
    ((0, 1, 1), (0, 1)),
    ((1, 0, 0), (1, 0)),
    ((1, 0, 1), (0, 1)),
    ((1, 1, 0), (0, 1)),
    ((1, 1, 1), (1, 1)),
]


def _eq3(q3: Fraction) -> Fiq:
    return Fiq((Fraction(0), Fraction(0), q3), Tail.FAIR)


def _deterministica(codigo: int, m: int) -> Fiq:
    bits = [(codigo >> (m - k)) & 1 for k in range(1, m + 1)]
    return Fiq(tuple(Fraction(b) for b in bits), Tail.ZERO)


class TestSomadorCompleto:
    """Testes para a tabela verdade e as recursões de soma e carry."""

    @pytest.mark.parametrize("entrada,saida", TABELA_SOMADOR)
    def test_truth_row(self, entrada, saida):
        """Cada linha reproduz a tabela do somador completo."""
        assert adder_truth_row(*entrada) == saida

    @pytest.mark.parametrize("entrada,saida", TABELA_SOMADOR)
    def test_recursoes_nos_bits_degenerados(self, entrada, saida):
        """As recursões avaliadas em 0/1 coincidem com as colunas S e C."""
        q, r, c = (Fraction(b) for b in entrada)
        assert (propagate_sum(q, r, c), propagate_carry(q, r, c)) == saida

    def test_bit_invalido(self):
        """Entradas precisam ser bits."""
        with pytest.raises(ArgumentError):
            adder_truth_row(2, 0, 0)

    def test_substituicao_direta(self):
        """(1/3, 1/5, 1/2) dá soma 1/2."""
        assert propagate_sum(Fraction(1, 3), Fraction(1, 5), MEIO) == MEIO

    def test_ponto_fixo_justo(self):
        """q = r = c = 1/2 é estacionário."""
        assert propagate_sum(MEIO, MEIO, MEIO) == MEIO
        assert propagate_carry(MEIO, MEIO, MEIO) == MEIO

    @settings(max_examples=100)
    @given(propensoes, propensoes)
    def test_carry_meio(self, q, r):
        """Com carry 1/2: s = 1/2 e c = (q + r)/2, exatamente."""
        assert propagate_sum(q, r, MEIO) == MEIO
        assert propagate_carry(q, r, MEIO) == (q + r) / 2

    @given(propensoes, propensoes, propensoes)
    def test_saida_no_intervalo(self, q, r, c):
        """As recursões são combinações convexas."""
        assert 0 <= propagate_sum(q, r, c) <= 1
        assert 0 <= propagate_carry(q, r, c) <= 1


class TestAddMarginal:
    """Testes para add_marginal."""

    def test_binario_deterministico(self):
        """0.1 + 0.1 = 1.0 com caudas zero."""
        q = Fiq((Fraction(1),), Tail.ZERO)
        resultado = add_marginal(q, q, CarryModel.TRUNCATE_ZERO)
        assert resultado == WideMarginal((Fraction(1),), (Fraction(0),), Tail.ZERO)

    def test_caudas_justas(self):
        """0.1 + 0.1 com caudas justas: bit inteiro 1, s1 = 1/2."""
        q = Fiq((Fraction(1),), Tail.FAIR)
        resultado = add_marginal(q, q, CarryModel.FAIR_TAIL_FIXED_POINT)
        assert resultado.integer_propensities == (Fraction(1),)
        assert resultado.fractional_propensities == (MEIO,)
        assert resultado.tail is Tail.FAIR

    def test_um_terco_mais_um_quinto(self):
        """q = [1/3], r = [1/5]: s1 = 1/2 e carry c1 = 4/15."""
        resultado = add_marginal(Fiq((Fraction(1, 3),)), Fiq((Fraction(1, 5),)))
        assert resultado.fractional_propensities == (MEIO,)
        assert resultado.integer_propensities == (Fraction(4, 15),)

    def test_contrato_caudas(self):
        """Ponto fixo com cauda zero é violação de contrato."""
        with pytest.raises(ContractError):
            add_marginal(Fiq((), Tail.FAIR), Fiq((), Tail.ZERO), CarryModel.FAIR_TAIL_FIXED_POINT)

    def test_profundidades_diferentes(self):
        """A parcela mais curta é completada pela sua cauda."""
        resultado = add_marginal(Fiq((Fraction(0), Fraction(1))), Fiq(()))
        # posição 2: q = 1, r = 1/2, c = 1/2
        assert resultado.fractional_propensities[1] == MEIO
        assert resultado.depth == 2

    def test_so_caudas(self):
        """Duas FIQs totalmente desconhecidas: bit inteiro com propensão 1/2."""
        resultado = add_marginal(Fiq(()), Fiq(()))
        assert resultado.integer_propensities == (MEIO,)
        assert resultado.fractional_propensities == ()

    def test_marginal_larga_como_entrada(self):
        """Aceita WideMarginal com posições inteiras."""
        a = WideMarginal((Fraction(1),), (Fraction(1),), Tail.ZERO)
        resultado = add_marginal(a, a, CarryModel.TRUNCATE_ZERO)
        # 1.1 + 1.1 = 11.0
        assert resultado.integer_propensities == (Fraction(1), Fraction(1))
        assert resultado.fractional_propensities == (Fraction(0),)

    def test_embutimento_binario(self, valor_de):
        """1000 pares determinísticos: a soma marginal é a soma binária."""
        rng = random.Random(1001)
        for _ in range(1000):
            m = rng.randint(1, 8)
            a, b = rng.randrange(1 << m), rng.randrange(1 << m)
            resultado = add_marginal(
                _deterministica(a, m), _deterministica(b, m), CarryModel.TRUNCATE_ZERO
            )
            assert valor_de(resultado) == Fraction(a + b, 1 << m)


class TestShift:
    """Testes para shift."""

    def test_segunda_parcela_da_tabela(self):
        """shift([0, 0, q3], 1) = 0.0 q3 ..."""
        q3 = Fraction(1, 3)
        resultado = shift(_eq3(q3), 1)
        assert resultado.fractional_propensities == (Fraction(0), q3)
        assert resultado.integer_propensities == ()
        assert resultado.tail is Tail.FAIR

    def test_identidade(self):
        """Deslocamento zero não altera a FIQ."""
        q = _eq3(Fraction(1, 4))
        assert shift(q, 0) == q.as_wide()

    def test_cruza_o_ponto(self):
        """shift([1], 1) põe propensão 1 na posição 0."""
        resultado = shift(Fiq((Fraction(1),)), 1)
        assert resultado.integer_propensities == (Fraction(1),)
        assert resultado.fractional_propensities == ()

    def test_cauda_cruza_o_ponto(self):
        """Bits da cauda justa que cruzam o ponto continuam justos."""
        resultado = shift(Fiq(()), 2)
        assert resultado.integer_propensities == (MEIO, MEIO)

    def test_negativo(self):
        """Deslocamento negativo é rejeitado."""
        with pytest.raises(ArgumentError):
            shift(Fiq(()), -1)


class TestMulConstantMarginal:
    """Testes para mul_constant_marginal."""

    @pytest.mark.parametrize(
        "q3",
        [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)],
    )
    def test_polinomios_por_tres(self, q3):
        """L = 3 e q = [0, 0, q3]: p1 = q3²/2 + q3/4, p2 = q3 - q3² + 1/4, p3 = 1/2."""
        resultado = mul_constant_marginal(_eq3(q3), 3, CarryModel.FAIR_TAIL_FIXED_POINT)
        assert resultado.integer_propensities == ()
        assert resultado.fractional_propensities == (
            q3**2 / 2 + q3 / 4,
            q3 - q3**2 + Fraction(1, 4),
            MEIO,
        )
        assert resultado.tail is Tail.FAIR

    def test_q3_meio(self):
        """q3 = 1/2 dá (1/4, 1/2, 1/2)."""
        resultado = mul_constant_marginal(_eq3(MEIO), 3)
        assert resultado.fractional_propensities == (Fraction(1, 4), MEIO, MEIO)

    def test_q3_um_quarto(self):
        """q3 = 1/4 dá (3/32, 7/16, 1/2)."""
        resultado = mul_constant_marginal(_eq3(Fraction(1, 4)), 3)
        assert resultado.fractional_propensities == (Fraction(3, 32), Fraction(7, 16), MEIO)

    @given(propensoes)
    def test_polinomios_para_todo_q3(self, q3):
        """A identidade vale para qualquer racional q3."""
        resultado = mul_constant_marginal(_eq3(q3), 3)
        assert resultado.fractional_propensities[:2] == (
            q3**2 / 2 + q3 / 4,
            q3 - q3**2 + Fraction(1, 4),
        )

    def test_deterministico(self):
        """0.001 × 3 = 0.011 com cauda zero."""
        q = Fiq((Fraction(0), Fraction(0), Fraction(1)), Tail.ZERO)
        resultado = mul_constant_marginal(q, 3, CarryModel.TRUNCATE_ZERO)
        assert resultado.fractional_propensities == (Fraction(0), Fraction(1), Fraction(1))
        assert resultado.integer_propensities == ()

    def test_l_zero(self):
        """L = 0 é erro de argumento."""
        with pytest.raises(ArgumentError):
            mul_constant_marginal(_eq3(MEIO), 0)

    def test_contrato_cauda_zero(self):
        """Ponto fixo exige cauda justa."""
        with pytest.raises(ContractError):
            mul_constant_marginal(Fiq((Fraction(1),), Tail.ZERO), 3)

    def test_l_um(self):
        """L = 1 devolve a própria FIQ."""
        q = _eq3(Fraction(1, 3))
        assert mul_constant_marginal(q, 1) == q.as_wide()

    def test_set_bits(self):
        """Bits de L em ordem crescente de significância."""
        assert set_bits(11) == [0, 1, 3]

    def test_ordem_padrao(self):
        """A ordem padrão é a crescente."""
        q = Fiq((Fraction(1, 3), Fraction(2, 5), Fraction(3, 4)))
        assert mul_constant_marginal(q, 7) == mul_constant_marginal(
            q, 7, order=DecompositionOrder.INCREASING
        )

    def test_ordem_decrescente_valida(self):
        """A ordem decrescente também produz propensões em [0, 1]."""
        q = Fiq((Fraction(1, 3), Fraction(2, 5), Fraction(3, 4)))
        resultado = mul_constant_marginal(q, 7, order="decreasing")
        assert all(0 <= p <= 1 for _, p in resultado.positions())

    def test_embutimento_binario(self, valor_de):
        """1000 pares determinísticos: o produto marginal é o produto binário."""
        rng = random.Random(2002)
        for _ in range(1000):
            m = rng.randint(1, 8)
            a, L = rng.randrange(1 << m), rng.randint(1, 15)
            resultado = mul_constant_marginal(
                _deterministica(a, m), L, CarryModel.TRUNCATE_ZERO
            )
            assert valor_de(resultado) == Fraction(L * a, 1 << m)
