"""
Motor exato: lei conjunta dos bits do resultado.

Enumera os bits indeterminados explícitos das entradas e o carry que vem da
cauda, cuja lei é conhecida analiticamente:

- soma de duas caudas justas independentes: carry Bernoulli(1/2);
- cauda justa multiplicada por L: carry uniforme em {0, ..., L-1}, independente
  da parte fracionária que continua uniforme;
- cauda zero: carry 0.

Cada realização é somada ou multiplicada com aritmética inteira exata e os
padrões iguais da janela são agregados.
"""

import logging
from collections import defaultdict
from collections.abc import Iterator, Mapping, Sequence
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from fiq_aritmetica.constants import LIMITE_ENUMERACAO
from fiq_aritmetica.erros import ArgumentError, ResourceError
from fiq_aritmetica.models import (
    UM,
    ZERO,
    Fiq,
    JointLaw,
    Propensity,
    Tail,
    TailNote,
    WideMarginal,
)

logger = logging.getLogger(__name__)


class TailCarrySpec(str, Enum):
    """Lei do carry que entra na região explícita vindo da cauda."""

    NONE = "none"
    BERNOULLI_HALF = "bernoulli_half"
    UNIFORM_0_TO_LMINUS1 = "uniform_0_to_Lminus1"


class IndependenceDefect(NamedTuple):
    max_defect: Fraction
    independent: bool


def tail_carry_distribution(spec: TailCarrySpec, L: int = 1) -> list[tuple[int, Fraction]]:
    """Suporte e probabilidades do carry da cauda."""
    if spec is TailCarrySpec.BERNOULLI_HALF:
        return [(0, Fraction(1, 2)), (1, Fraction(1, 2))]
    if spec is TailCarrySpec.UNIFORM_0_TO_LMINUS1:
        return [(kappa, Fraction(1, L)) for kappa in range(L)]
    return [(0, UM)]


def _realizacoes(
    propensities: Sequence[Propensity],
) -> Iterator[tuple[int, Fraction]]:
    """
    Realizações dos bits explícitos como (valor * 2^D, probabilidade).

    Bits determinísticos entram fixos; só os indeterminados são enumerados.
    """
    profundidade = len(propensities)
    base = 0
    indeterminados: list[tuple[int, Propensity]] = []
    for k, q in enumerate(propensities, start=1):
        deslocamento = profundidade - k
        if q == UM:
            base |= 1 << deslocamento
        elif q != ZERO:
            indeterminados.append((deslocamento, q))

    for bits in product((0, 1), repeat=len(indeterminados)):
        valor, peso = base, UM
        for (deslocamento, q), b in zip(indeterminados, bits):
            if b:
                valor |= 1 << deslocamento
                peso *= q
            else:
                peso *= 1 - q
        yield valor, peso


def _conta_indeterminados(*vetores: Sequence[Propensity]) -> int:
    return sum(1 for v in vetores for q in v if q not in (ZERO, UM))


def _verifica_limite(indeterminados: int, limite: int) -> None:
    if indeterminados > limite:
        raise ResourceError(
            f"{indeterminados} bits indeterminados excedem o limite de enumeração ({limite})"
        )


def _janela(window_depth: int | None, profundidade: int) -> int:
    if window_depth is None:
        return profundidade
    if not 0 <= window_depth <= profundidade:
        raise ArgumentError(
            f"janela {window_depth} fora de 0..{profundidade} (profundidade explícita)"
        )
    return window_depth


def joint_add(
    Q: Fiq,
    R: Fiq,
    window_depth: int | None = None,
    limite: int = LIMITE_ENUMERACAO,
) -> JointLaw:
    """
    Lei conjunta exata de Q + R para parcelas independentes entre si.

    Args:
        Q: Primeira parcela.
        R: Segunda parcela, independente de Q.
        window_depth: Profundidade fracionária da janela (padrão: D).
        limite: Máximo de bits indeterminados enumerados.

    Returns:
        JointLaw com todas as posições inteiras e `window_depth` fracionárias.

    Raises:
        ArgumentError: Janela mais profunda que D.
        ResourceError: Enumeração acima do limite.
    """
    profundidade = max(Q.M, R.M)
    janela = _janela(window_depth, profundidade)
    qs = [Q.propensity(k) for k in range(1, profundidade + 1)]
    rs = [R.propensity(k) for k in range(1, profundidade + 1)]
    _verifica_limite(_conta_indeterminados(qs, rs), limite)

    if Q.tail is Tail.FAIR and R.tail is Tail.FAIR:
        spec, nota = TailCarrySpec.BERNOULLI_HALF, TailNote.FAIR_MARGINALS_ONLY
    elif Q.tail is Tail.ZERO and R.tail is Tail.ZERO:
        spec, nota = TailCarrySpec.NONE, TailNote.ZERO
    else:
        # uma cauda uniforme sozinha nunca gera carry
        spec, nota = TailCarrySpec.NONE, TailNote.FAIR_MARGINALS_ONLY
    carries = tail_carry_distribution(spec)
    logger.debug("joint_add: D=%d, janela=%d, carry da cauda %s", profundidade, janela, spec.value)

    descarte = profundidade - janela
    realizacoes_r = list(_realizacoes(rs))
    pesos: dict[int, Fraction] = defaultdict(Fraction)
    for xq, wq in _realizacoes(qs):
        for xr, wr in realizacoes_r:
            for carry, wc in carries:
                pesos[(xq + xr + carry) >> descarte] += wq * wr * wc
    return JointLaw.from_weights(pesos, janela, nota)


def joint_mul_constant(
    Q: Fiq,
    L: int,
    window_depth: int | None = None,
    limite: int = LIMITE_ENUMERACAO,
) -> JointLaw:
    """
    Lei conjunta exata de L·Q.

    Cada realização dos bits explícitos vale X·2^(-D); o resultado escalado é
    L·X + κ, com κ o carry da cauda.

    Raises:
        ArgumentError: L < 1 ou janela mais profunda que M.
        ResourceError: Enumeração acima do limite.
    """
    if L < 1:
        raise ArgumentError(f"L deve ser >= 1 (recebido {L})")
    profundidade = Q.M
    janela = _janela(window_depth, profundidade)
    _verifica_limite(_conta_indeterminados(Q.propensities), limite)

    if Q.tail is Tail.FAIR:
        spec, nota = TailCarrySpec.UNIFORM_0_TO_LMINUS1, TailNote.UNIFORM_INDEPENDENT
    else:
        spec, nota = TailCarrySpec.NONE, TailNote.ZERO
    carries = tail_carry_distribution(spec, L)
    logger.debug(
        "joint_mul_constant: L=%d, M=%d, janela=%d, %s", L, profundidade, janela, spec.value
    )

    descarte = profundidade - janela
    pesos: dict[int, Fraction] = defaultdict(Fraction)
    for x, w in _realizacoes(Q.propensities):
        for kappa, wk in carries:
            pesos[(L * x + kappa) >> descarte] += w * wk
    return JointLaw.from_weights(pesos, janela, nota)


def _confere_posicoes(law: JointLaw, posicoes: Sequence[int]) -> None:
    for p in posicoes:
        if not law.contains(p):
            raise ArgumentError(
                f"posição {p} fora da janela {1 - law.integer_bits}..{law.depth}"
            )


def marginal_of(law: JointLaw, position: int) -> Propensity:
    """Probabilidade de o bit da posição valer 1."""
    _confere_posicoes(law, [position])
    return sum((p for padrao, p in law.support if padrao.bit(position)), ZERO)


def pattern_propensity(law: JointLaw, partial_assignment: Mapping[int, int]) -> Propensity:
    """
    Probabilidade total dos padrões compatíveis com uma atribuição parcial.

    Example:
        >>> pattern_propensity(lei, {1: 1, 2: 1})  # p12
    """
    _confere_posicoes(law, list(partial_assignment))
    for posicao, bit in partial_assignment.items():
        if bit not in (0, 1):
            raise ArgumentError(f"bit inválido na posição {posicao}: {bit!r}")
    return sum(
        (
            p
            for padrao, p in law.support
            if all(padrao.bit(pos) == bit for pos, bit in partial_assignment.items())
        ),
        ZERO,
    )


def project_to_marginal(law: JointLaw) -> WideMarginal:
    """
    Projeção da lei conjunta nas propensões individuais dos bits.

    A projeção descarta as dependências entre bits.
    """
    inteiras = tuple(marginal_of(law, -i) for i in range(law.integer_bits))
    fracionarias = tuple(marginal_of(law, k) for k in range(1, law.depth + 1))
    cauda = Tail.ZERO if law.tail_note is TailNote.ZERO else Tail.FAIR
    return WideMarginal(inteiras, fracionarias, cauda).trimmed()


def independence_defect(law: JointLaw, positions: set[int] | Sequence[int]) -> IndependenceDefect:
    """
    Maior diferença absoluta entre a probabilidade conjunta de uma atribuição e
    o produto das marginais, sobre todas as atribuições das posições dadas.

    Raises:
        ArgumentError: Menos de duas posições ou posição fora da janela.
    """
    posicoes = sorted(set(positions))
    if len(posicoes) < 2:
        raise ArgumentError("independence_defect exige ao menos duas posições")
    _confere_posicoes(law, posicoes)

    marginais = [marginal_of(law, p) for p in posicoes]
    conjunta: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    for padrao, p in law.support:
        conjunta[tuple(padrao.bit(pos) for pos in posicoes)] += p

    pior = ZERO
    for bits in product((0, 1), repeat=len(posicoes)):
        produto = UM
        for m, b in zip(marginais, bits):
            produto *= m if b else 1 - m
        pior = max(pior, abs(conjunta.get(bits, ZERO) - produto))
    return IndependenceDefect(pior, pior == ZERO)
