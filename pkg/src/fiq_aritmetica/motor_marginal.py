"""
Motor marginal: propagação de propensões bit a bit pelo somador completo.

Cada soma aplica a hipótese de independência entre os bits das parcelas e o
carry que chega de baixo. A multiplicação por uma constante inteira L é feita
por deslocamento e soma, sempre sob essa mesma hipótese, mesmo quando as
parcelas são cópias deslocadas da mesma FIQ.
"""

import logging
from enum import Enum

from fiq_aritmetica.erros import ArgumentError, ContractError
from fiq_aritmetica.models import (
    MEIO,
    ZERO,
    Fiq,
    Propensity,
    Tail,
    WideMarginal,
    as_wide,
)

logger = logging.getLogger(__name__)


class CarryModel(str, Enum):
    """
    Carry que entra abaixo da posição explícita mais profunda.

    - truncate_zero: carry 0, resultado com cauda zero;
    - fair_tail_fixed_point: carry 1/2, ponto fixo da recursão para caudas justas.
    """

    TRUNCATE_ZERO = "truncate_zero"
    FAIR_TAIL_FIXED_POINT = "fair_tail_fixed_point"


class DecompositionOrder(str, Enum):
    """Ordem em que os bits de L são somados."""

    INCREASING = "increasing"
    DECREASING = "decreasing"


def adder_truth_row(q_bit: int, r_bit: int, carry_in: int) -> tuple[int, int]:
    """
    Linha da tabela verdade do somador completo.

    Returns:
        (bit de soma, carry de saída)
    """
    for nome, bit in (("q_bit", q_bit), ("r_bit", r_bit), ("carry_in", carry_in)):
        if bit not in (0, 1):
            raise ArgumentError(f"{nome} deve ser 0 ou 1, recebido {bit!r}")
    total = q_bit + r_bit + carry_in
    return total & 1, total >> 1


def _confere(p: Propensity) -> Propensity:
    assert 0 <= p <= 1, f"propensão fora de [0, 1]: {p}"
    return p


def propagate_sum(q_k: Propensity, r_k: Propensity, c_next: Propensity) -> Propensity:
    """Propensão do bit de soma: soma das quatro linhas com S = 1."""
    return _confere(
        q_k + r_k + c_next
        - 2 * (q_k * r_k + q_k * c_next + r_k * c_next)
        + 4 * q_k * r_k * c_next
    )


def propagate_carry(q_k: Propensity, r_k: Propensity, c_next: Propensity) -> Propensity:
    """Propensão do carry de saída."""
    return _confere(q_k * r_k + q_k * c_next + r_k * c_next - 2 * q_k * r_k * c_next)


def add_marginal(
    Q: Fiq | WideMarginal,
    R: Fiq | WideMarginal,
    model: CarryModel | str = CarryModel.FAIR_TAIL_FIXED_POINT,
) -> WideMarginal:
    """
    Soma marginal de duas FIQs (ou marginais largas).

    A recursão parte da posição explícita mais profunda D e sobe até as
    posições inteiras; o último carry vira uma nova posição inteira.

    Args:
        Q: Primeira parcela.
        R: Segunda parcela.
        model: Modelo do carry que entra abaixo de D.

    Returns:
        WideMarginal com cauda 'fair' (ponto fixo) ou 'zero' (truncamento).

    Raises:
        ContractError: Ponto fixo pedido com alguma cauda zero.
    """
    model = CarryModel(model)
    a, b = as_wide(Q), as_wide(R)
    if model is CarryModel.FAIR_TAIL_FIXED_POINT and Tail.ZERO in (a.tail, b.tail):
        raise ContractError("fair_tail_fixed_point exige as duas caudas 'fair'")

    profundidade = max(a.depth, b.depth)
    bits_inteiros = max(a.integer_bits, b.integer_bits)
    carry = MEIO if model is CarryModel.FAIR_TAIL_FIXED_POINT else ZERO

    fracionarias: list[Propensity] = [ZERO] * profundidade
    for k in range(profundidade, 0, -1):
        q, r = a.propensity(k), b.propensity(k)
        fracionarias[k - 1] = propagate_sum(q, r, carry)
        carry = propagate_carry(q, r, carry)

    inteiras: list[Propensity] = []
    for j in range(0, -bits_inteiros, -1):
        q, r = a.propensity(j), b.propensity(j)
        inteiras.append(propagate_sum(q, r, carry))
        carry = propagate_carry(q, r, carry)
    if carry != ZERO:
        inteiras.append(carry)

    cauda = Tail.FAIR if model is CarryModel.FAIR_TAIL_FIXED_POINT else Tail.ZERO
    return WideMarginal(tuple(inteiras), tuple(fracionarias), cauda).trimmed()


def shift(Q: Fiq | WideMarginal, j: int) -> WideMarginal:
    """
    Desloca a FIQ j posições para a esquerda (multiplica por 2^j).

    A propensão da posição k passa para a posição k - j; bits da cauda que
    cruzam o ponto binário mantêm a propensão da cauda.
    """
    if j < 0:
        raise ArgumentError(f"deslocamento negativo: {j}")
    w = as_wide(Q)
    fracionarias = list(w.fractional_propensities)
    if len(fracionarias) < j:
        fracionarias += [w.tail.propensity] * (j - len(fracionarias))
    inteiras = fracionarias[:j][::-1] + list(w.integer_propensities)
    return WideMarginal(tuple(inteiras), tuple(fracionarias[j:]), w.tail).trimmed()


def set_bits(L: int) -> list[int]:
    """Expoentes dos bits 1 de L, do menos para o mais significativo."""
    return [j for j in range(L.bit_length()) if (L >> j) & 1]


def mul_constant_marginal(
    Q: Fiq | WideMarginal,
    L: int,
    model: CarryModel | str = CarryModel.FAIR_TAIL_FIXED_POINT,
    order: DecompositionOrder | str = DecompositionOrder.INCREASING,
) -> WideMarginal:
    """
    Multiplica uma FIQ pela constante inteira L por deslocamento e soma.

    As cópias deslocadas Q·2^j são somadas da esquerda para a direita com
    add_marginal, na ordem pedida. Com q = [0, 0, q3] e L = 3 o resultado é
    p1 = q3²/2 + q3/4, p2 = q3 - q3² + 1/4, p3 = 1/2.

    Raises:
        ArgumentError: L < 1.
        ContractError: Ponto fixo pedido para uma FIQ de cauda zero.
    """
    if L < 1:
        raise ArgumentError(f"L deve ser >= 1 (recebido {L}); use a FIQ determinística zero")
    model = CarryModel(model)
    order = DecompositionOrder(order)
    if model is CarryModel.FAIR_TAIL_FIXED_POINT and as_wide(Q).tail is Tail.ZERO:
        raise ContractError("fair_tail_fixed_point exige cauda 'fair'")

    expoentes = set_bits(L)
    if order is DecompositionOrder.DECREASING:
        expoentes.reverse()
    logger.debug("L=%d decomposto em 2^%s (%s, %s)", L, expoentes, order.value, model.value)

    acumulado = shift(Q, expoentes[0])
    for j in expoentes[1:]:
        acumulado = add_marginal(acumulado, shift(Q, j), model)
    return acumulado
