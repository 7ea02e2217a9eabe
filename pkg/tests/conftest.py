"""
Fixtures compartilhadas pelos testes.
"""

import random
from collections.abc import Callable
from fractions import Fraction

import pytest

from fiq_aritmetica.models import Fiq, Tail, WideMarginal

# Propensões sorteadas pelos corpora aleatórios: metade determinística.
POOL_PROPENSOES = [
    Fraction(0),
    Fraction(1),
    Fraction(0),
    Fraction(1),
    Fraction(1, 2),
    Fraction(1, 3),
    Fraction(2, 3),
    Fraction(1, 4),
    Fraction(3, 4),
    Fraction(2, 5),
]


def eq3_fiq(q3: Fraction) -> Fiq:
    """FIQ q = [0, 0, q3, 1/2, ...]."""
    return Fiq((Fraction(0), Fraction(0), q3), Tail.FAIR)


@pytest.fixture
def eq3() -> Callable[[Fraction], Fiq]:
    """Fábrica da FIQ de entrada da tabela de multiplicação por 3."""
    return eq3_fiq


@pytest.fixture
def fiq_aleatoria() -> Callable[..., Fiq]:
    """Sorteia uma FIQ com M <= m_max a partir de um random.Random."""

    def sorteia(rng: random.Random, m_max: int = 8, tail: Tail = Tail.FAIR) -> Fiq:
        m = rng.randint(0, m_max)
        return Fiq(tuple(rng.choice(POOL_PROPENSOES) for _ in range(m)), tail)

    return sorteia


@pytest.fixture
def valor_de() -> Callable[[WideMarginal], Fraction]:
    """Valor de uma marginal larga determinística (todas as propensões 0 ou 1)."""

    def valor(w: WideMarginal) -> Fraction:
        total = Fraction(0)
        for posicao, q in w.positions():
            assert q in (0, 1), f"posição {posicao} não é determinística: {q}"
            total += q * Fraction(2) ** (-posicao)
        return total

    return valor


@pytest.fixture
def arquivo_fiq(tmp_path):
    """Grava um documento .fiq em tmp_path e devolve o caminho."""

    def grava(nome: str, conteudo: str):
        caminho = tmp_path / nome
        caminho.write_text(conteudo, encoding="utf-8")
        return caminho

    return grava
