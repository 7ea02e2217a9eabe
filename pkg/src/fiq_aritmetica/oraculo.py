"""
Oráculos de referência para validar os motores.

Nada aqui reaproveita código dos motores. As caudas justas são trocadas por E
bits justos explícitos seguidos de cauda zero, e tudo é calculado com inteiros
escalados (valor * 2^(D+E)):

- truncation_law_add / truncation_law_mul: enumeração exaustiva exata;
- sample_law: Monte Carlo com semente fixa.

Gerador pseudoaleatório: PCG64 do numpy (`numpy.random.Generator(PCG64(seed))`),
cujo algoritmo e fluxo são estáveis entre plataformas para a mesma semente.
"""

import logging
import math
from collections import defaultdict
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import pandas as pd

from fiq_aritmetica.constants import (
    AMOSTRAS_PADRAO,
    FATOR_Z,
    LIMITE_ENUMERACAO,
    PROFUNDIDADE_EXTENSAO,
    SEMENTE_PADRAO,
)
from fiq_aritmetica.erros import ArgumentError, ResourceError
from fiq_aritmetica.models import Fiq, JointLaw, Tail, TailNote

logger = logging.getLogger(__name__)

# int64 dos vetores do numpy
_BITS_VETOR = 62


@dataclass(frozen=True)
class OracleConfig:
    """
    Parâmetros do oráculo.

    Attributes:
        extension_depth: Bits justos explícitos que substituem a cauda justa
        sample_count: Número de amostras do Monte Carlo
        seed: Semente de 64 bits do PCG64
    """

    extension_depth: int = PROFUNDIDADE_EXTENSAO
    sample_count: int = AMOSTRAS_PADRAO
    seed: int = SEMENTE_PADRAO

    def __post_init__(self) -> None:
        if self.extension_depth < 1:
            raise ArgumentError("extension_depth deve ser >= 1")
        if self.sample_count < 1:
            raise ArgumentError("sample_count deve ser >= 1")
        if not 0 <= self.seed < 1 << 64:
            raise ArgumentError("seed deve caber em 64 bits sem sinal")


@dataclass(frozen=True)
class OperationSpec:
    """Operação aplicada pelo amostrador: 'mul' por L ou 'add' com R."""

    kind: str
    L: int = 1
    R: Fiq | None = None
    window_depth: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("mul", "add"):
            raise ArgumentError(f"operação desconhecida: {self.kind!r}")
        if self.kind == "mul" and self.L < 1:
            raise ArgumentError(f"L deve ser >= 1 (recebido {self.L})")
        if self.kind == "add" and self.R is None:
            raise ArgumentError("'add' exige a segunda parcela R")

    @classmethod
    def mul(cls, L: int, window_depth: int | None = None) -> "OperationSpec":
        return cls("mul", L=L, window_depth=window_depth)

    @classmethod
    def add(cls, R: Fiq, window_depth: int | None = None) -> "OperationSpec":
        return cls("add", R=R, window_depth=window_depth)


@dataclass
class SampleEstimate:
    """
    Resultado do Monte Carlo.

    Attributes:
        integer_bits: Bits inteiros da janela
        depth: Profundidade fracionária da janela
        estimates: Posição -> propensão estimada
        half_widths: Posição -> meia-largura z·sqrt(p(1-p)/n)
        pattern_counts: Código do padrão -> contagem
        config: Configuração usada
    """

    integer_bits: int
    depth: int
    estimates: dict[int, float]
    half_widths: dict[int, float]
    pattern_counts: dict[int, int] = field(default_factory=dict)
    config: OracleConfig = field(default_factory=OracleConfig)

    def within(self, reference: Mapping[int, Fraction]) -> dict[int, bool]:
        """Indica, por posição, se a referência cai dentro da meia-largura."""
        return {
            p: abs(self.estimates[p] - float(reference[p])) <= self.half_widths[p]
            for p in self.estimates
            if p in reference
        }


def _enumera_explicitos(propensities: Sequence[Fraction]) -> Iterator[tuple[int, Fraction]]:
    """(valor * 2^D, probabilidade) para cada realização dos bits explícitos."""
    profundidade = len(propensities)
    livres = [k for k, q in enumerate(propensities) if q not in (0, 1)]
    fixo = sum(1 << (profundidade - 1 - k) for k, q in enumerate(propensities) if q == 1)
    for m in range(1 << len(livres)):
        x, w = fixo, Fraction(1)
        for i, k in enumerate(livres):
            if (m >> i) & 1:
                x += 1 << (profundidade - 1 - k)
                w *= propensities[k]
            else:
                w *= 1 - propensities[k]
        if w:
            yield x, w


def _explicitos(fiq: Fiq, profundidade: int) -> list[Fraction]:
    return [fiq.propensity(k) for k in range(1, profundidade + 1)]


def _livres(*vetores: Sequence[Fraction]) -> int:
    return sum(1 for v in vetores for q in v if q not in (0, 1))


def _confere_recursos(bits_enumerados: int, bits_valor: int, limite: int) -> None:
    if bits_enumerados > limite:
        raise ResourceError(
            f"{bits_enumerados} bits enumerados excedem o limite de enumeração ({limite})"
        )
    if bits_valor > _BITS_VETOR:
        raise ResourceError(f"valores de {bits_valor} bits não cabem em inteiros de 64 bits")


def _janela(window_depth: int | None, profundidade: int) -> int:
    janela = profundidade if window_depth is None else window_depth
    if not 0 <= janela <= profundidade:
        raise ArgumentError(f"janela {janela} fora de 0..{profundidade}")
    return janela


def truncation_law_mul(
    Q: Fiq,
    L: int,
    window_depth: int | None = None,
    extension_depth: int = PROFUNDIDADE_EXTENSAO,
    limite: int = LIMITE_ENUMERACAO,
) -> JointLaw:
    """
    Lei de L·Q com a cauda justa truncada em E bits explícitos.

    Fica a no máximo L·2^(-E) (variação total) da lei exata.
    """
    if L < 1:
        raise ArgumentError(f"L deve ser >= 1 (recebido {L})")
    if extension_depth < 1:
        raise ArgumentError("extension_depth deve ser >= 1")
    profundidade = Q.M
    janela = _janela(window_depth, profundidade)
    justa = Q.tail is Tail.FAIR
    extensao = extension_depth if justa else 0
    _confere_recursos(
        _livres(Q.propensities) + extensao,
        profundidade + extensao + L.bit_length(),
        limite,
    )

    cauda = np.arange(1 << extensao, dtype=np.int64)
    descarte = profundidade + extensao - janela
    pesos: dict[int, Fraction] = defaultdict(Fraction)
    for x, w in _enumera_explicitos(Q.propensities):
        codigos = (((x << extensao) + cauda) * L) >> descarte
        unicos, contagens = np.unique(codigos, return_counts=True)
        for codigo, n in zip(unicos.tolist(), contagens.tolist()):
            pesos[codigo] += w * Fraction(n, 1 << extensao)

    nota = TailNote.UNIFORM_INDEPENDENT if justa else TailNote.ZERO
    logger.debug("truncation_law_mul: L=%d, E=%d, %d padrões", L, extensao, len(pesos))
    return JointLaw.from_weights(pesos, janela, nota)


def truncation_law_add(
    Q: Fiq,
    R: Fiq,
    window_depth: int | None = None,
    extension_depth: int = PROFUNDIDADE_EXTENSAO,
    limite: int = LIMITE_ENUMERACAO,
) -> JointLaw:
    """
    Lei de Q + R com as caudas justas truncadas em E bits explícitos.

    Os E bits de cada cauda formam um inteiro uniforme em [0, 2^E); quando as
    duas caudas são justas, a soma s = t1 + t2 é tabulada pelo número exato de
    pares (t1, t2) que a produzem. Fica a no máximo 2^(-E+1) da lei exata.
    """
    if extension_depth < 1:
        raise ArgumentError("extension_depth deve ser >= 1")
    profundidade = max(Q.M, R.M)
    janela = _janela(window_depth, profundidade)
    qs, rs = _explicitos(Q, profundidade), _explicitos(R, profundidade)
    justas = (Q.tail is Tail.FAIR) + (R.tail is Tail.FAIR)
    extensao = extension_depth if justas else 0
    _confere_recursos(
        _livres(qs, rs) + extensao + (justas == 2),
        profundidade + extensao + 1,
        limite,
    )

    lado = 1 << extensao
    if justas == 2:
        somas = np.arange(2 * lado - 1, dtype=np.int64)
        contagens = lado - np.abs(somas - (lado - 1))
        total = lado * lado
    else:
        somas = np.arange(lado, dtype=np.int64)
        contagens = np.ones(lado, dtype=np.int64)
        total = lado

    descarte = profundidade + extensao - janela
    realizacoes_r = list(_enumera_explicitos(rs))
    pesos: dict[int, Fraction] = defaultdict(Fraction)
    for xq, wq in _enumera_explicitos(qs):
        for xr, wr in realizacoes_r:
            codigos = (((xq + xr) << extensao) + somas) >> descarte
            tabela = pd.Series(contagens, index=codigos).groupby(level=0).sum()
            w = wq * wr
            for codigo, n in tabela.items():
                pesos[int(codigo)] += w * Fraction(int(n), total)

    nota = TailNote.ZERO if justas == 0 else TailNote.FAIR_MARGINALS_ONLY
    logger.debug("truncation_law_add: E=%d, %d padrões", extensao, len(pesos))
    return JointLaw.from_weights(pesos, janela, nota)


def total_variation(a: JointLaw, b: JointLaw) -> Fraction:
    """Metade da distância L1 entre duas leis da mesma profundidade de janela."""
    if a.depth != b.depth:
        raise ArgumentError(f"profundidades diferentes: {a.depth} e {b.depth}")
    pa, pb = a.as_dict(), b.as_dict()
    zero = Fraction(0)
    diferencas = (abs(pa.get(c, zero) - pb.get(c, zero)) for c in pa.keys() | pb.keys())
    return sum(diferencas, zero) / 2


def _amostra_bernoulli(rng: np.random.Generator, q: Fraction, n: int) -> np.ndarray:
    if q == 0:
        return np.zeros(n, dtype=np.int64)
    if q == 1:
        return np.ones(n, dtype=np.int64)
    if q.denominator < 1 << _BITS_VETOR:
        return (rng.integers(0, q.denominator, size=n) < q.numerator).astype(np.int64)
    return (rng.random(n) < float(q)).astype(np.int64)


def _amostra_fiq(
    rng: np.random.Generator, fiq: Fiq, profundidade: int, extensao: int, n: int
) -> np.ndarray:
    """Amostras de valor * 2^(profundidade + extensao)."""
    valores = np.zeros(n, dtype=np.int64)
    for k in range(1, profundidade + 1):
        valores = (valores << 1) | _amostra_bernoulli(rng, fiq.propensity(k), n)
    valores <<= extensao
    if fiq.tail is Tail.FAIR:
        valores |= rng.integers(0, 1 << extensao, size=n, dtype=np.int64)
    return valores


def sample_law(
    Q: Fiq, operation: OperationSpec, config: OracleConfig | None = None
) -> SampleEstimate:
    """
    Estima as propensões dos bits do resultado por Monte Carlo.

    Determinístico para uma semente fixa. Meia-largura: z·sqrt(p(1-p)/n), z = 4.
    """
    config = config or OracleConfig()
    n, extensao = config.sample_count, config.extension_depth
    rng = np.random.Generator(np.random.PCG64(config.seed))

    if operation.kind == "mul":
        profundidade = Q.M
        bits_inteiros = (operation.L - 1).bit_length()
        _confere_recursos(0, profundidade + extensao + operation.L.bit_length(), _BITS_VETOR)
        valores = _amostra_fiq(rng, Q, profundidade, extensao, n) * operation.L
    else:
        assert operation.R is not None
        profundidade = max(Q.M, operation.R.M)
        bits_inteiros = 1
        _confere_recursos(0, profundidade + extensao + 1, _BITS_VETOR)
        valores = _amostra_fiq(rng, Q, profundidade, extensao, n) + _amostra_fiq(
            rng, operation.R, profundidade, extensao, n
        )

    janela = _janela(operation.window_depth, profundidade)
    codigos = valores >> (profundidade + extensao - janela)
    logger.debug("sample_law: %d amostras, semente %d", n, config.seed)

    estimativas: dict[int, float] = {}
    meias: dict[int, float] = {}
    for posicao in range(1 - bits_inteiros, janela + 1):
        p = float(((codigos >> (janela - posicao)) & 1).mean())
        estimativas[posicao] = p
        meias[posicao] = FATOR_Z * math.sqrt(p * (1 - p) / n)

    unicos, contagens = np.unique(codigos, return_counts=True)
    return SampleEstimate(
        integer_bits=bits_inteiros,
        depth=janela,
        estimates=estimativas,
        half_widths=meias,
        pattern_counts=dict(zip(unicos.tolist(), contagens.tolist())),
        config=config,
    )


def tv_table(
    exact: JointLaw,
    truncated: Mapping[int, JointLaw],
    bound_factor: int,
) -> pd.DataFrame:
    """
    Tabela motor × oráculo: uma linha por profundidade de extensão E.

    Colunas: extension_depth, tv (racional), tv_decimal, bound, within_bound.
    """
    linhas = []
    for extensao, lei in sorted(truncated.items()):
        tv = total_variation(exact, lei)
        limite = Fraction(bound_factor, 1 << extensao)
        linhas.append(
            {
                "extension_depth": extensao,
                "tv": str(tv),
                "tv_decimal": float(tv),
                "bound": str(limite),
                "within_bound": tv <= limite,
            }
        )
    return pd.DataFrame(linhas)
