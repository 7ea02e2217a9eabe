"""
Testes para o motor exato (lei conjunta).
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fiq_aritmetica.erros import ArgumentError, ResourceError
from fiq_aritmetica.models import Fiq, Tail, TailNote, WideMarginal
from fiq_aritmetica.motor_exato import (
    TailCarrySpec,
    independence_defect,
    joint_add,
    joint_mul_constant,
    marginal_of,
    pattern_propensity,
    project_to_marginal,
    tail_carry_distribution,
)
from fiq_aritmetica.motor_marginal import CarryModel, add_marginal, mul_constant_marginal

MEIO = Fraction(1, 2)
TERCO = Fraction(1, 3)


def eq3_fiq(q3: Fraction) -> Fiq:
    return Fiq((Fraction(0), Fraction(0), q3), Tail.FAIR)


def _deterministica(codigo: int, m: int) -> Fiq:
    return Fiq(tuple(Fraction((codigo >> (m - k)) & 1) for k in range(1, m + 1)), Tail.ZERO)


class TestTailCarry:
    """Testes para a lei do carry da cauda."""

    def test_bernoulli(self):
        assert tail_carry_distribution(TailCarrySpec.BERNOULLI_HALF) == [(0, MEIO), (1, MEIO)]

    def test_uniforme(self):
        assert tail_carry_distribution(TailCarrySpec.UNIFORM_0_TO_LMINUS1, 3) == [
            (0, TERCO),
            (1, TERCO),
            (2, TERCO),
        ]

    def test_nenhum(self):
        assert tail_carry_distribution(TailCarrySpec.NONE) == [(0, Fraction(1))]


class TestJointAdd:
    """Testes para joint_add."""

    def test_deterministico(self):
        """0.1 + 0.1 = 1.0 com probabilidade 1."""
        q = Fiq((Fraction(1),), Tail.ZERO)
        lei = joint_add(q, q)
        assert lei.window == (1, 1)
        assert lei.as_dict() == {2: Fraction(1)}
        assert lei.tail_note is TailNote.ZERO

    def test_caudas_justas_sem_bits(self):
        """Duas caudas justas: o bit inteiro é Bernoulli(1/2)."""
        lei = joint_add(Fiq(()), Fiq(()))
        assert lei.window == (1, 0)
        assert lei.as_dict() == {0: MEIO, 1: MEIO}
        assert lei.tail_note is TailNote.FAIR_MARGINALS_ONLY

    def test_caudas_mistas(self):
        """Cauda justa mais cauda zero: sem carry da cauda."""
        lei = joint_add(Fiq((MEIO,), Tail.FAIR), Fiq((), Tail.ZERO))
        assert lei.window == (0, 1)
        assert lei.as_dict() == {0: MEIO, 1: MEIO}
        assert lei.tail_note is TailNote.FAIR_MARGINALS_ONLY

    def test_janela_rasa(self):
        """Janela de profundidade 0 guarda só a parte inteira."""
        q = Fiq((Fraction(1), Fraction(1)), Tail.ZERO)
        lei = joint_add(q, q, window_depth=0)
        # 0.11 + 0.11 = 1.10
        assert lei.as_dict() == {1: Fraction(1)}

    def test_janela_profunda_demais(self):
        with pytest.raises(ArgumentError):
            joint_add(Fiq((MEIO,)), Fiq(()), window_depth=2)

    def test_limite_de_enumeracao(self):
        """Mais bits indeterminados que o limite: ResourceError."""
        q = Fiq((MEIO,) * 13)
        r = Fiq((TERCO,) * 12)
        with pytest.raises(ResourceError):
            joint_add(q, r)

    def test_limite_configuravel(self):
        with pytest.raises(ResourceError):
            joint_add(Fiq((MEIO, MEIO)), Fiq((MEIO,)), limite=2)

    @pytest.mark.parametrize("cauda", [Tail.FAIR, Tail.ZERO])
    def test_projecao_coincide_com_motor_marginal(self, cauda, fiq_aleatoria):
        """Para uma única soma de parcelas independentes, as marginais são exatas."""
        rng = random.Random(3003)
        modelo = (
            CarryModel.FAIR_TAIL_FIXED_POINT if cauda is Tail.FAIR else CarryModel.TRUNCATE_ZERO
        )
        for _ in range(100):
            q = fiq_aleatoria(rng, 6, cauda)
            r = fiq_aleatoria(rng, 6, cauda)
            assert project_to_marginal(joint_add(q, r)) == add_marginal(q, r, modelo)


class TestJointMulConstant:
    """Testes para joint_mul_constant."""

    def test_lei_por_tres(self):
        """q = [0, 0, 1/2]: seis padrões equiprováveis."""
        lei = joint_mul_constant(eq3_fiq(MEIO), 3)
        assert lei.window == (0, 3)
        assert lei.as_dict() == {c: Fraction(1, 6) for c in range(6)}
        assert lei.tail_note is TailNote.UNIFORM_INDEPENDENT

    @pytest.mark.parametrize("q3", [Fraction(i, 19) for i in range(20)])
    def test_p12_nulo(self, q3):
        """Os bits 1 e 2 de 3·q nunca valem 1 juntos."""
        lei = joint_mul_constant(eq3_fiq(q3), 3)
        assert pattern_propensity(lei, {1: 1, 2: 1}) == 0

    @given(st.fractions(min_value=0, max_value=1, max_denominator=1000))
    def test_marginais_exatas(self, q3):
        """Marginais exatas: (2q3/3, 1/3, (1 + q3)/3)."""
        lei = joint_mul_constant(eq3_fiq(q3), 3)
        assert marginal_of(lei, 1) == 2 * q3 / 3
        assert marginal_of(lei, 2) == TERCO
        assert marginal_of(lei, 3) == (1 + q3) / 3

    @given(st.fractions(min_value=0, max_value=1, max_denominator=1000).filter(lambda q: q > 0))
    def test_dependencia_detectada(self, q3):
        """Para q3 > 0 os bits 1 e 2 são dependentes."""
        lei = joint_mul_constant(eq3_fiq(q3), 3)
        defeito = independence_defect(lei, {1, 2})
        assert defeito.max_defect > 0
        assert not defeito.independent

    def test_defeito_um_nono(self):
        """Com q3 = 1/2 o defeito do par {1, 2} é 1/9."""
        lei = joint_mul_constant(eq3_fiq(MEIO), 3)
        assert independence_defect(lei, [1, 2]).max_defect == Fraction(1, 9)

    def test_difere_do_motor_marginal(self):
        """Motor marginal (1/4, 1/2, 1/2) contra marginais exatas (1/3, 1/3, 1/2)."""
        q = eq3_fiq(MEIO)
        exatas = project_to_marginal(joint_mul_constant(q, 3))
        marginal = mul_constant_marginal(q, 3)
        assert exatas == WideMarginal((), (TERCO, TERCO, MEIO), Tail.FAIR)
        assert marginal.fractional_propensities == (Fraction(1, 4), MEIO, MEIO)

    def test_deterministico(self):
        """0.001 × 3 = 0.011 com certeza."""
        q = Fiq((Fraction(0), Fraction(0), Fraction(1)), Tail.ZERO)
        lei = joint_mul_constant(q, 3)
        assert lei.as_dict() == {3: Fraction(1)}
        assert independence_defect(lei, [1, 2, 3]).independent

    def test_l_um_preserva_marginais(self):
        """L = 1 devolve as próprias propensões."""
        q = Fiq((TERCO, Fraction(3, 4), Fraction(1)))
        exatas = project_to_marginal(joint_mul_constant(q, 1))
        assert exatas == q.as_wide()

    def test_posicoes_inteiras(self):
        """L = 5 com q = [1]: o resultado 2.1 ocupa posições inteiras."""
        lei = joint_mul_constant(Fiq((Fraction(1),), Tail.ZERO), 5)
        assert lei.window == (2, 1)
        assert lei.as_dict() == {5: Fraction(1)}
        assert marginal_of(lei, -1) == 1
        assert marginal_of(lei, 0) == 0

    def test_janela_parcial(self):
        """Janela de profundidade 1 agrega os padrões abaixo dela."""
        lei = joint_mul_constant(eq3_fiq(MEIO), 3, window_depth=1)
        assert lei.as_dict() == {0: Fraction(2, 3), 1: TERCO}

    def test_l_invalido(self):
        with pytest.raises(ArgumentError):
            joint_mul_constant(eq3_fiq(MEIO), 0)


class TestEmbutimentoBinario:
    """Com caudas zero e bits determinísticos o motor exato é aritmética binária."""

    def test_pares_aleatorios(self):
        rng = random.Random(6006)
        for _ in range(1000):
            m = rng.randint(1, 8)
            a, b = rng.randrange(1 << m), rng.randrange(1 << m)
            L = rng.randint(1, 15)
            qa, qb = _deterministica(a, m), _deterministica(b, m)
            assert joint_add(qa, qb).as_dict() == {a + b: Fraction(1)}
            assert joint_mul_constant(qa, L).as_dict() == {L * a: Fraction(1)}


class TestConsultas:
    """Testes para as consultas sobre a lei conjunta."""

    @pytest.fixture
    def lei(self):
        return joint_mul_constant(eq3_fiq(MEIO), 3)

    def test_pattern_propensity_parcial(self, lei):
        assert pattern_propensity(lei, {3: 1}) == MEIO
        assert pattern_propensity(lei, {1: 0, 2: 0}) == TERCO
        assert pattern_propensity(lei, {}) == 1

    def test_posicao_fora_da_janela(self, lei):
        with pytest.raises(ArgumentError):
            pattern_propensity(lei, {0: 1})
        with pytest.raises(ArgumentError):
            marginal_of(lei, 4)

    def test_bit_invalido(self, lei):
        with pytest.raises(ArgumentError):
            pattern_propensity(lei, {1: 2})

    def test_defeito_exige_duas_posicoes(self, lei):
        with pytest.raises(ArgumentError):
            independence_defect(lei, {1})

    def test_par_independente(self, lei):
        """Os bits 2 e 3 são independentes quando q3 = 1/2."""
        # p(2=1, 3=1) = P({3}) = 1/6 = 1/3 · 1/2
        assert independence_defect(lei, {2, 3}).independent

    def test_projecao_cauda(self, lei):
        assert project_to_marginal(lei).tail is Tail.FAIR
