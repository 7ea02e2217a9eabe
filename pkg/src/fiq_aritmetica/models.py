"""
Modelos de dados: propensões racionais exatas, FIQs, marginais largas e leis
conjuntas sobre padrões de bits.

Convenção de posições compartilhada por todos os motores:

- posição fracionária k >= 1 tem peso 2^(-k) (Q = 0.Q1 Q2 Q3 ...);
- posição inteira j <= 0 tem peso 2^(-j) (posição 0 vale 1, posição -1 vale 2).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from fiq_aritmetica.erros import ArgumentError, RangeError

Propensity = Fraction

MEIO = Fraction(1, 2)
ZERO = Fraction(0)
UM = Fraction(1)


class Tail(str, Enum):
    """Modelo dos bits além da última posição explícita."""

    FAIR = "fair"
    ZERO = "zero"

    @property
    def propensity(self) -> Propensity:
        """Propensão de cada bit da cauda."""
        return MEIO if self is Tail.FAIR else ZERO


class TailNote(str, Enum):
    """Semântica dos bits abaixo da janela de uma lei conjunta."""

    UNIFORM_INDEPENDENT = "uniform_independent"
    FAIR_MARGINALS_ONLY = "fair_marginals_only"
    ZERO = "zero"


def make_propensity(numerator: int | Fraction | str, denominator: int = 1) -> Propensity:
    """
    Constrói uma propensão exata, reduzida e validada.

    Args:
        numerator: Numerador (ou um racional/texto "a/b" já pronto).
        denominator: Denominador, diferente de zero.

    Returns:
        Fraction em [0, 1] nos menores termos.

    Raises:
        ArgumentError: Denominador zero ou texto que não é um racional.
        RangeError: Valor fora de [0, 1].
    """
    if denominator == 0:
        raise ArgumentError("denominador zero")
    try:
        valor = Fraction(numerator) / denominator
    except (ValueError, ZeroDivisionError) as e:
        raise ArgumentError(f"racional inválido: {numerator!r}") from e
    if not 0 <= valor <= 1:
        raise RangeError(f"propensão {valor} fora de [0, 1]")
    return valor


def _como_propensao(valor: object) -> Propensity:
    if isinstance(valor, bool) or not isinstance(valor, (int, Fraction, str)):
        raise ArgumentError(f"propensão deve ser racional exato, recebido {valor!r}")
    return make_propensity(valor)


def _como_cauda(tail: Tail | str) -> Tail:
    try:
        return Tail(tail)
    except ValueError as e:
        raise ArgumentError(f"cauda desconhecida: {tail!r}") from e


@dataclass(frozen=True)
class Fiq:
    """
    Quantidade de informação finita em [0, 1].

    Attributes:
        propensities: Propensões das posições 1..M (posição k pesa 2^(-k))
        tail: Cauda além de M; 'fair' é a FIQ usual, 'zero' embute binários determinísticos
        unit_label: Rótulo de unidade, apenas metadado
    """

    propensities: tuple[Propensity, ...] = ()
    tail: Tail = Tail.FAIR
    unit_label: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "propensities", tuple(_como_propensao(q) for q in self.propensities)
        )
        object.__setattr__(self, "tail", _como_cauda(self.tail))

    @property
    def M(self) -> int:
        """Número de propensões explícitas."""
        return len(self.propensities)

    @property
    def deterministic(self) -> bool:
        """Verdadeiro quando todos os bits valem 0 ou 1 com certeza."""
        return self.tail is Tail.ZERO and all(q in (ZERO, UM) for q in self.propensities)

    def propensity(self, k: int) -> Propensity:
        """Propensão da posição fracionária k >= 1, incluindo a cauda."""
        if k < 1:
            return ZERO
        if k <= self.M:
            return self.propensities[k - 1]
        return self.tail.propensity

    def with_unit(self, unit_label: str | None) -> Fiq:
        return Fiq(self.propensities, self.tail, unit_label)

    def as_wide(self) -> WideMarginal:
        return WideMarginal((), self.propensities, self.tail)

    def __str__(self) -> str:
        corpo = ", ".join(str(q) for q in self.propensities)
        unidade = f" [{self.unit_label}]" if self.unit_label else ""
        return f"FIQ[{corpo}; cauda {self.tail.value}]{unidade}"


def fiq_validate(raw: Iterable[object], tail: Tail | str = Tail.FAIR) -> Fiq:
    """
    Valida uma lista crua de propensões e devolve a FIQ correspondente.

    Entradas 1/2 no fim da lista são preservadas como vieram.

    Raises:
        RangeError: Alguma propensão fora de [0, 1].
    """
    return Fiq(tuple(_como_propensao(q) for q in raw), _como_cauda(tail))


@dataclass(frozen=True)
class WideMarginal:
    """
    Vetor marginal de propensões cobrindo posições inteiras e fracionárias.

    Attributes:
        integer_propensities: Posições 0, -1, -2, ... (pesos 1, 2, 4, ...)
        fractional_propensities: Posições 1, 2, ... como em Fiq
        tail: Cauda fracionária
    """

    integer_propensities: tuple[Propensity, ...] = ()
    fractional_propensities: tuple[Propensity, ...] = ()
    tail: Tail = Tail.FAIR

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "integer_propensities",
            tuple(_como_propensao(q) for q in self.integer_propensities),
        )
        object.__setattr__(
            self,
            "fractional_propensities",
            tuple(_como_propensao(q) for q in self.fractional_propensities),
        )
        object.__setattr__(self, "tail", _como_cauda(self.tail))

    @property
    def integer_bits(self) -> int:
        return len(self.integer_propensities)

    @property
    def depth(self) -> int:
        return len(self.fractional_propensities)

    def propensity(self, position: int) -> Propensity:
        """Propensão de uma posição qualquer; inteiras além da lista valem 0."""
        if position <= 0:
            indice = -position
            if indice < self.integer_bits:
                return self.integer_propensities[indice]
            return ZERO
        if position <= self.depth:
            return self.fractional_propensities[position - 1]
        return self.tail.propensity

    def positions(self) -> list[tuple[int, Propensity]]:
        """Pares (posição, propensão) explícitos, do mais significativo ao menos."""
        inteiras = [(-i, q) for i, q in enumerate(self.integer_propensities)][::-1]
        fracionarias = [(k, q) for k, q in enumerate(self.fractional_propensities, start=1)]
        return inteiras + fracionarias

    def trimmed(self) -> WideMarginal:
        """Remove posições inteiras do topo com propensão zero."""
        inteiras = list(self.integer_propensities)
        while inteiras and inteiras[-1] == ZERO:
            inteiras.pop()
        return WideMarginal(tuple(inteiras), self.fractional_propensities, self.tail)

    def __str__(self) -> str:
        inteiras = " ".join(str(q) for q in reversed(self.integer_propensities)) or "0"
        fracionarias = " ".join(str(q) for q in self.fractional_propensities)
        return f"[{inteiras} . {fracionarias}; cauda {self.tail.value}]"


def as_wide(valor: Fiq | WideMarginal) -> WideMarginal:
    """Vista larga de uma FIQ ou marginal."""
    return valor.as_wide() if isinstance(valor, Fiq) else valor


@dataclass(frozen=True)
class BitPattern:
    """
    Realização dos bits de uma janela (I bits inteiros, W fracionários).

    O padrão é guardado como o inteiro `code` = valor * 2^W; o bit da posição p
    é o bit de ordem W - p de `code`.
    """

    code: int
    integer_bits: int
    depth: int

    def __post_init__(self) -> None:
        if self.code < 0 or self.code >= 1 << self.width:
            raise ArgumentError(f"padrão {self.code} não cabe em {self.width} bits")

    @property
    def width(self) -> int:
        return self.integer_bits + self.depth

    def bit(self, position: int) -> int:
        if not 1 - self.integer_bits <= position <= self.depth:
            raise ArgumentError(f"posição {position} fora da janela")
        return (self.code >> (self.depth - position)) & 1

    @property
    def value(self) -> Fraction:
        return Fraction(self.code, 1 << self.depth)

    def __str__(self) -> str:
        if self.width == 0:
            return ""
        inteiro = "0"
        if self.integer_bits:
            inteiro = format(self.code >> self.depth, f"0{self.integer_bits}b")
        fracao = ""
        if self.depth:
            fracao = format(self.code & ((1 << self.depth) - 1), f"0{self.depth}b")
        return f"{inteiro}.{fracao}"


@dataclass(frozen=True)
class JointLaw:
    """
    Lei de probabilidade exata sobre os padrões de uma janela de bits.

    Attributes:
        integer_bits: Número I de posições inteiras (0, -1, ..., 1-I)
        depth: Profundidade fracionária W (posições 1..W)
        support: Pares (padrão, probabilidade), ordenados pelo valor do padrão
        tail_note: O que se sabe dos bits abaixo da janela
    """

    integer_bits: int
    depth: int
    support: tuple[tuple[BitPattern, Propensity], ...]
    tail_note: TailNote = TailNote.ZERO
    _indice: dict[int, Propensity] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "tail_note", TailNote(self.tail_note))
        vistos: dict[int, Propensity] = {}
        for padrao, p in self.support:
            if (padrao.integer_bits, padrao.depth) != self.window:
                raise ArgumentError(f"padrão {padrao} não pertence à janela {self.window}")
            if padrao.code in vistos:
                raise ArgumentError(f"padrão repetido: {padrao}")
            if p <= 0:
                raise ArgumentError(f"probabilidade não positiva para {padrao}: {p}")
            vistos[padrao.code] = p
        if sum(vistos.values(), ZERO) != UM:
            raise ArgumentError("probabilidades não somam 1")
        object.__setattr__(self, "_indice", vistos)

    @classmethod
    def from_weights(
        cls,
        weights: Mapping[int, Fraction],
        depth: int,
        tail_note: TailNote,
        integer_bits: int | None = None,
    ) -> JointLaw:
        """
        Monta a lei a partir de pesos por código (valor * 2^depth).

        Sem `integer_bits`, usa o menor número de bits inteiros que comporta o
        suporte. Pesos nulos são descartados.
        """
        positivos = {c: p for c, p in weights.items() if p != 0}
        if integer_bits is None:
            maior = max(positivos, default=0)
            integer_bits = (maior >> depth).bit_length()
        suporte = tuple(
            (BitPattern(c, integer_bits, depth), Fraction(positivos[c])) for c in sorted(positivos)
        )
        return cls(integer_bits, depth, suporte, tail_note)

    @property
    def window(self) -> tuple[int, int]:
        return (self.integer_bits, self.depth)

    def positions(self) -> list[int]:
        """Posições da janela, da mais significativa para a menos."""
        return list(range(1 - self.integer_bits, self.depth + 1))

    def contains(self, position: int) -> bool:
        return 1 - self.integer_bits <= position <= self.depth

    def probability(self, code: int) -> Propensity:
        return self._indice.get(code, ZERO)

    def as_dict(self) -> dict[int, Propensity]:
        return dict(self._indice)

    def __len__(self) -> int:
        return len(self.support)
