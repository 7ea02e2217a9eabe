"""
Módulo de análise: métricas de informação, auditoria de troca de unidade e
histogramas da distribuição dos dígitos.

A auditoria roda os dois motores sobre {Q'} = L{Q} e mostra o que a
representação marginal perde: as propensões individuais dos bits de Q' não
carregam as dependências entre eles.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any

import numpy as np

from fiq_aritmetica.constants import LIMITE_ENUMERACAO, TOLERANCIA_ENTROPIA
from fiq_aritmetica.erros import ArgumentError
from fiq_aritmetica.models import UM, ZERO, Fiq, JointLaw, Propensity, Tail, WideMarginal, as_wide
from fiq_aritmetica.motor_exato import (
    independence_defect,
    joint_mul_constant,
    marginal_of,
    project_to_marginal,
)
from fiq_aritmetica.motor_marginal import CarryModel, mul_constant_marginal

logger = logging.getLogger(__name__)


def bit_entropy(q: Propensity) -> float:
    """Entropia binária H2(q) em bits, com H2(0) = H2(1) = 0."""
    if q in (ZERO, UM):
        return 0.0
    p = float(q)
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def information_content(Q: Fiq | WideMarginal) -> float:
    """
    Informação carregada pelas posições explícitas: soma de 1 - H2(q_k).

    A cauda não contribui.
    """
    return sum(1.0 - bit_entropy(q) for _, q in as_wide(Q).positions())


def joint_entropy(law: JointLaw) -> float:
    """Entropia de Shannon da lei conjunta da janela, em bits."""
    p = np.array([float(prob) for _, prob in law.support], dtype=np.float64)
    return float(-(p * np.log2(p)).sum()) if p.size else 0.0


def marginal_entropies(law: JointLaw) -> dict[int, float]:
    """Entropia de cada bit da janela, pela sua marginal."""
    return {pos: bit_entropy(marginal_of(law, pos)) for pos in law.positions()}


def _mesmas_marginais(a: WideMarginal, b: WideMarginal) -> bool:
    posicoes = {p for p, _ in a.positions()} | {p for p, _ in b.positions()}
    return a.tail == b.tail and all(a.propensity(p) == b.propensity(p) for p in posicoes)


@dataclass
class AuditReport:
    """
    Comparação lado a lado dos dois motores para {Q'} = L{Q}.

    Attributes:
        input_fiq: FIQ auditada
        L: Fator da troca de unidade U' = U/L
        marginal_engine: Propensões do motor marginal
        exact_marginals: Marginais exatas, projetadas da lei conjunta
        pair_defects: Defeito de independência de cada par de posições da janela
        joint_entropy: Entropia da lei conjunta (bits)
        marginal_entropy_sum: Soma das entropias dos bits (bits)
        information_before: information_content de Q
        information_after_marginal: information_content do motor marginal
        information_after_exact: information_content das marginais exatas
        marginals_disagree: Os dois vetores de marginais diferem
        dependence_detected: Algum par tem defeito positivo
        unit_label: Rótulo da nova unidade
        law: Lei conjunta exata de Q'
    """

    input_fiq: Fiq
    L: int
    marginal_engine: WideMarginal
    exact_marginals: WideMarginal
    pair_defects: dict[tuple[int, int], Fraction]
    joint_entropy: float
    marginal_entropy_sum: float
    information_before: float
    information_after_marginal: float
    information_after_exact: float
    marginals_disagree: bool
    dependence_detected: bool
    unit_label: str | None = None
    law: JointLaw | None = field(default=None, repr=False)

    @property
    def information_loss(self) -> float:
        """Informação de dependência descartada pela projeção marginal (bits)."""
        return self.marginal_entropy_sum - self.joint_entropy

    def to_dict(self) -> dict[str, Any]:
        """Versão serializável, campo a campo igual ao resumo textual."""
        return {
            "input": {
                "propensities": [str(q) for q in self.input_fiq.propensities],
                "tail": self.input_fiq.tail.value,
                "unit": self.input_fiq.unit_label,
            },
            "L": self.L,
            "unit": self.unit_label,
            "marginal_engine": {str(p): str(q) for p, q in self.marginal_engine.positions()},
            "exact_marginals": {str(p): str(q) for p, q in self.exact_marginals.positions()},
            "pair_defects": {f"{a},{b}": str(d) for (a, b), d in self.pair_defects.items()},
            "joint_entropy": self.joint_entropy,
            "marginal_entropy_sum": self.marginal_entropy_sum,
            "information_loss": self.information_loss,
            "information_before": self.information_before,
            "information_after_marginal": self.information_after_marginal,
            "information_after_exact": self.information_after_exact,
            "marginals_disagree": self.marginals_disagree,
            "dependence_detected": self.dependence_detected,
        }

    def resumo(self) -> str:
        """Resumo textual da auditoria."""
        d = self.to_dict()
        linhas = [
            "=" * 60,
            f"📊 AUDITORIA DE TROCA DE UNIDADE: L = {self.L}",
            "=" * 60,
            "",
            f"Entrada: {self.input_fiq}",
            f"Nova unidade: {self.unit_label or '-'}",
            "",
            "Propensões por posição (motor marginal | marginais exatas):",
        ]
        posicoes = {p for p, _ in self.marginal_engine.positions()}
        posicoes |= {p for p, _ in self.exact_marginals.positions()}
        for posicao in sorted(posicoes):
            linhas.append(
                f"  {posicao:>3}: {self.marginal_engine.propensity(posicao)!s:>12} | "
                f"{self.exact_marginals.propensity(posicao)!s:>12}"
            )
        linhas.extend(["", "Defeitos de independência por par:"])
        for par, defeito in d["pair_defects"].items():
            linhas.append(f"  {{{par}}}: {defeito}")
        linhas.extend(
            [
                "",
                f"joint_entropy: {self.joint_entropy:.9f}",
                f"marginal_entropy_sum: {self.marginal_entropy_sum:.9f}",
                f"information_loss: {self.information_loss:.9f}",
                f"information_before: {self.information_before:.9f}",
                f"information_after_marginal: {self.information_after_marginal:.9f}",
                f"information_after_exact: {self.information_after_exact:.9f}",
                f"marginals_disagree: {str(self.marginals_disagree).lower()}",
                f"dependence_detected: {str(self.dependence_detected).lower()}",
                "=" * 60,
            ]
        )
        return "\n".join(linhas)


def unit_change_audit(
    Q: Fiq,
    L: int,
    new_unit: str | None = None,
    limite: int = LIMITE_ENUMERACAO,
) -> AuditReport:
    """
    Audita a troca de unidade U' = U/L, que implica {Q'} = L{Q}.

    O motor marginal usa o ponto fixo da cauda justa (ou truncamento, para
    cauda zero); o motor exato fornece a lei conjunta na janela completa.

    Raises:
        ArgumentError: L < 1.
        ResourceError: Enumeração acima do limite.
    """
    modelo = CarryModel.FAIR_TAIL_FIXED_POINT if Q.tail is Tail.FAIR else CarryModel.TRUNCATE_ZERO
    marginal = mul_constant_marginal(Q, L, modelo)
    lei = joint_mul_constant(Q, L, limite=limite)
    exatas = project_to_marginal(lei)

    defeitos = {
        (a, b): independence_defect(lei, (a, b)).max_defect
        for a, b in combinations(lei.positions(), 2)
    }
    h_conjunta = joint_entropy(lei)
    h_marginais = sum(marginal_entropies(lei).values())
    assert h_conjunta <= h_marginais + TOLERANCIA_ENTROPIA, "subaditividade violada"

    relatorio = AuditReport(
        input_fiq=Q,
        L=L,
        marginal_engine=marginal,
        exact_marginals=exatas,
        pair_defects=defeitos,
        joint_entropy=h_conjunta,
        marginal_entropy_sum=h_marginais,
        information_before=information_content(Q),
        information_after_marginal=information_content(marginal),
        information_after_exact=information_content(exatas),
        marginals_disagree=not _mesmas_marginais(marginal, exatas),
        dependence_detected=any(d > 0 for d in defeitos.values()),
        unit_label=new_unit,
        law=lei,
    )
    logger.debug(
        "auditoria L=%d: dependência=%s, marginais divergem=%s",
        L,
        relatorio.dependence_detected,
        relatorio.marginals_disagree,
    )
    return relatorio


@dataclass(frozen=True)
class Histogram:
    """
    Massas exatas dos bins de [0, 1) para a soma truncada dos dígitos.

    Attributes:
        depth: Profundidade de truncamento da expansão
        bin_count: Número de bins, potência de 2
        masses: Massa racional de cada bin, em ordem crescente
    """

    depth: int
    bin_count: int
    masses: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.masses) != self.bin_count:
            raise ArgumentError("número de massas diferente de bin_count")
        if sum(self.masses, ZERO) != UM:
            raise ArgumentError("massas não somam 1")

    @property
    def truncation_bound(self) -> Fraction:
        """Cota do erro de massa por bin induzido pelo truncamento: bins·2^(-depth)/2."""
        return Fraction(self.bin_count, 1 << (self.depth + 1))

    def rows(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """(início, fim, massa) de cada bin."""
        largura = Fraction(1, self.bin_count)
        return [(i * largura, (i + 1) * largura, m) for i, m in enumerate(self.masses)]


def digit_histogram(Q: Fiq | WideMarginal, depth: int, bins: int) -> Histogram:
    """
    Histograma exato de Σ Q_k 2^(-k), k <= depth, com dígitos independentes.

    Um bin de largura 2^(-b) é determinado pelos b primeiros dígitos; os mais
    profundos nunca cruzam a fronteira de um bin.

    Raises:
        ArgumentError: bins não é potência de 2, bins > 2^depth ou Q tem parte inteira.
    """
    if depth < 1:
        raise ArgumentError(f"depth deve ser >= 1 (recebido {depth})")
    if bins < 1 or bins & (bins - 1):
        raise ArgumentError(f"bins deve ser potência de 2 (recebido {bins})")
    if bins > 1 << depth:
        raise ArgumentError(f"bins = {bins} excede 2^depth = {1 << depth}")
    w = as_wide(Q)
    if any(q != ZERO for q in w.integer_propensities):
        raise ArgumentError("histograma definido apenas para valores em [0, 1)")

    massas = [UM]
    for k in range(1, bins.bit_length()):
        q = w.propensity(k)
        massas = [m * s for m in massas for s in (1 - q, q)]
    return Histogram(depth, bins, tuple(massas))
