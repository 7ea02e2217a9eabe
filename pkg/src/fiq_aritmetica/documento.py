"""
Formato de arquivo .fiq e emissão de tabelas.

Um documento .fiq é JSON UTF-8:

    {
      "propensities": ["0", "0", "1/2"],
      "tail": "fair",
      "unit": "m"
    }

Racionais viajam como texto "a/b" (ou "0"/"1"), nunca como float.
"""

import json
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

import pandas as pd

from fiq_aritmetica.analisador import Histogram
from fiq_aritmetica.constants import DIGITOS_DECIMAIS
from fiq_aritmetica.erros import DocumentError, RangeError
from fiq_aritmetica.models import Fiq, JointLaw, Tail, WideMarginal

_RACIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")
_CAMPOS = {"propensities", "tail", "unit"}


def decimal_text(valor: Fraction, digitos: int = DIGITOS_DECIMAIS) -> str:
    """Aproximação decimal em notação fixa com `digitos` algarismos significativos."""
    with localcontext() as ctx:
        ctx.prec = digitos
        aproximado = Decimal(valor.numerator) / Decimal(valor.denominator)
    return format(aproximado, "f")


def _parse_racional(texto: object, campo: str) -> Fraction:
    if not isinstance(texto, str):
        raise DocumentError(f"esperado texto 'a/b', recebido {texto!r}", campo=campo)
    m = _RACIONAL.match(texto)
    if not m:
        raise DocumentError(f"racional malformado: {texto!r}", campo=campo)
    numerador, denominador = int(m.group(1)), int(m.group(2) or 1)
    if denominador == 0:
        raise DocumentError(f"denominador zero: {texto!r}", campo=campo)
    valor = Fraction(numerador, denominador)
    if not 0 <= valor <= 1:
        raise RangeError(f"{campo}: propensão {valor} fora de [0, 1]")
    return valor


def parse_fiq(text: str) -> Fiq:
    """
    Lê um documento .fiq.

    Raises:
        DocumentError: JSON inválido, campo ausente/desconhecido, racional malformado
            ou cauda desconhecida; a mensagem traz linha ou campo.
        RangeError: Propensão negativa ou maior que 1.
    """
    try:
        dados = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, linha=e.lineno) from e
    if not isinstance(dados, dict):
        raise DocumentError("o documento deve ser um objeto JSON")

    desconhecidos = sorted(set(dados) - _CAMPOS)
    if desconhecidos:
        raise DocumentError("campo desconhecido", campo=desconhecidos[0])
    if "propensities" not in dados:
        raise DocumentError("campo obrigatório ausente", campo="propensities")
    if "tail" not in dados:
        raise DocumentError("campo obrigatório ausente", campo="tail")

    brutas = dados["propensities"]
    if not isinstance(brutas, list):
        raise DocumentError("esperada uma lista", campo="propensities")
    propensoes = tuple(
        _parse_racional(texto, f"propensities[{i}]") for i, texto in enumerate(brutas)
    )

    cauda = dados["tail"]
    if cauda not in (t.value for t in Tail):
        raise DocumentError(f"cauda desconhecida: {cauda!r} (use 'fair' ou 'zero')", campo="tail")

    unidade = dados.get("unit")
    if unidade is not None and not isinstance(unidade, str):
        raise DocumentError("esperado texto", campo="unit")

    return Fiq(propensoes, Tail(cauda), unidade)


def serialize_fiq(fiq: Fiq) -> str:
    """Forma canônica do documento (indentação 2, LF final, 'unit' só quando há rótulo)."""
    dados: dict[str, object] = {
        "propensities": [str(q) for q in fiq.propensities],
        "tail": fiq.tail.value,
    }
    if fiq.unit_label is not None:
        dados["unit"] = fiq.unit_label
    return json.dumps(dados, indent=2, ensure_ascii=False) + "\n"


def load_fiq(caminho: str | Path) -> Fiq:
    """Carrega um arquivo .fiq."""
    caminho = Path(caminho)
    try:
        texto = caminho.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise DocumentError(f"arquivo não encontrado: {caminho}") from e
    except UnicodeDecodeError as e:
        raise DocumentError(f"{caminho} não é UTF-8 válido") from e
    except OSError as e:
        raise DocumentError(f"não foi possível ler {caminho}: {e.strerror or e}") from e
    return parse_fiq(texto)


def write_text(caminho: str | Path, texto: str) -> None:
    """Grava texto UTF-8 com fim de linha LF; falhas de disco viram DocumentError."""
    caminho = Path(caminho)
    try:
        caminho.write_text(texto, encoding="utf-8", newline="\n")
    except OSError as e:
        raise DocumentError(f"não foi possível gravar {caminho}: {e.strerror or e}") from e


def emit_joint_law(law: JointLaw) -> str:
    """
    Tabela da lei conjunta: padrão, probabilidade exata e decimal.

    Uma linha por padrão, em ordem crescente de valor, mais a linha de total.
    """
    linhas = [(str(padrao), str(p), decimal_text(p)) for padrao, p in law.support]
    total = sum((p for _, p in law.support), Fraction(0))
    linhas.append(("total", str(total), decimal_text(total)))

    cabecalho = ("pattern", "probability", "decimal")
    larguras = [max(len(c), *(len(linha[i]) for linha in linhas)) for i, c in enumerate(cabecalho)]
    formata = "  ".join(f"{{:<{w}}}" for w in larguras)
    saida = [formata.format(*cabecalho)]
    saida.extend(formata.format(*linha) for linha in linhas)
    return "\n".join(s.rstrip() for s in saida) + "\n"


def emit_marginal(marginal: WideMarginal) -> str:
    """Tabela posição → propensão de uma marginal larga."""
    linhas = [(str(p), str(q), decimal_text(q)) for p, q in marginal.positions()]
    saida = [f"{'position':>8}  {'propensity':<14}  decimal"]
    saida.extend(f"{p:>8}  {q:<14}  {d}" for p, q, d in linhas)
    saida.append(f"{'tail':>8}  {marginal.tail.value}")
    return "\n".join(saida) + "\n"


def histogram_frame(hist: Histogram) -> pd.DataFrame:
    """Histograma como DataFrame com as colunas do CSV."""
    return pd.DataFrame(
        [
            {
                "bin_start": decimal_text(inicio),
                "bin_end": decimal_text(fim),
                "mass_rational": str(massa),
                "mass_decimal": decimal_text(massa),
            }
            for inicio, fim, massa in hist.rows()
        ],
        columns=["bin_start", "bin_end", "mass_rational", "mass_decimal"],
    )


def emit_histogram_csv(hist: Histogram, caminho: str | Path | None = None) -> str:
    """
    CSV do histograma (separador decimal '.', fim de linha LF).

    Quando `caminho` é dado o CSV também é gravado em disco.
    """
    texto = histogram_frame(hist).to_csv(index=False, lineterminator="\n")
    if caminho is not None:
        write_text(caminho, texto)
    return texto
