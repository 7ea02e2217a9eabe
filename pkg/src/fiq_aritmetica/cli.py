#!/usr/bin/env python3
"""
Interface de linha de comando da aritmética de FIQs.

Uso:
    fiq add Q.fiq R.fiq [--model fair|zero] [--engine marginal|exact]
    fiq mul Q.fiq --by L [--engine marginal|exact] [--window W]
    fiq audit Q.fiq --by L [--unit NOME] [--out relatorio.json]
    fiq hist Q.fiq --depth D --bins B [--csv saida.csv]
    fiq oracle-check Q.fiq --by L --extension E [--samples N --seed S]
    fiq info Q.fiq

--window e --query exigem --engine exact; --model e --order, o motor marginal.
Códigos de saída: 0 sucesso, 2 erro de uso, 3 erro de domínio ou de recurso.
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence

import pandas as pd

try:
    from colorama import Fore, Style, init
    init(autoreset=True)
except ImportError:
    # Fallback simples se colorama não estiver instalado
    class Fore:  # type: ignore[no-redef]
        GREEN = "\033[92m"
        RED = "\033[91m"
        YELLOW = "\033[93m"
        BLUE = "\033[94m"
        RESET = "\033[0m"

    class Style:  # type: ignore[no-redef]
        BRIGHT = "\033[1m"
        RESET_ALL = "\033[0m"

from fiq_aritmetica.analisador import (
    bit_entropy,
    digit_histogram,
    information_content,
    unit_change_audit,
)
from fiq_aritmetica.constants import (
    AMOSTRAS_PADRAO,
    PROFUNDIDADE_EXTENSAO,
    SAIDA_DOMINIO,
    SAIDA_OK,
    SAIDA_USO,
    SEMENTE_PADRAO,
)
from fiq_aritmetica.documento import (
    decimal_text,
    emit_histogram_csv,
    emit_joint_law,
    emit_marginal,
    load_fiq,
    write_text,
)
from fiq_aritmetica.erros import ArgumentError, FiqError
from fiq_aritmetica.models import Fiq, JointLaw, Tail
from fiq_aritmetica.motor_exato import (
    joint_add,
    joint_mul_constant,
    pattern_propensity,
    project_to_marginal,
)
from fiq_aritmetica.motor_marginal import (
    CarryModel,
    DecompositionOrder,
    add_marginal,
    mul_constant_marginal,
)
from fiq_aritmetica.oraculo import (
    OperationSpec,
    OracleConfig,
    sample_law,
    truncation_law_mul,
    tv_table,
)

logger = logging.getLogger(__name__)

_MODELOS = {"fair": CarryModel.FAIR_TAIL_FIXED_POINT, "zero": CarryModel.TRUNCATE_ZERO}


def parse_query(texto: str) -> dict[int, int]:
    """Converte '1:1,2:1' em {1: 1, 2: 1}."""
    atribuicao: dict[int, int] = {}
    for item in filter(None, (parte.strip() for parte in texto.split(","))):
        try:
            posicao, bit = item.split(":")
            atribuicao[int(posicao)] = int(bit)
        except ValueError as e:
            raise ArgumentError(f"consulta malformada: {item!r} (use posição:bit)") from e
    return atribuicao


def _modelo(nome: str | None, *fiqs: Fiq) -> CarryModel:
    if nome is not None:
        return _MODELOS[nome]
    if all(f.tail is Tail.FAIR for f in fiqs):
        return CarryModel.FAIR_TAIL_FIXED_POINT
    return CarryModel.TRUNCATE_ZERO


def _imprime_lei(lei: JointLaw, consulta: str | None) -> None:
    titulo = f"Lei conjunta (janela {lei.window}, cauda {lei.tail_note.value})"
    print(f"{Style.BRIGHT}{titulo}{Style.RESET_ALL}")
    print(emit_joint_law(lei), end="")
    if consulta:
        atribuicao = parse_query(consulta)
        p = pattern_propensity(lei, atribuicao)
        print(f"pattern_propensity({consulta}) = {p}")


def comando_add(args: argparse.Namespace) -> int:
    """Comando CLI para somar duas FIQs."""
    q, r = load_fiq(args.q), load_fiq(args.r)
    if args.engine == "exact":
        _imprime_lei(joint_add(q, r, args.window), args.query)
        return SAIDA_OK
    modelo = _modelo(args.model, q, r)
    print(f"{Style.BRIGHT}Soma marginal ({modelo.value}){Style.RESET_ALL}")
    print(emit_marginal(add_marginal(q, r, modelo)), end="")
    return SAIDA_OK


def comando_mul(args: argparse.Namespace) -> int:
    """Comando CLI para multiplicar uma FIQ por L."""
    q = load_fiq(args.q)
    if args.engine == "exact":
        _imprime_lei(joint_mul_constant(q, args.by, args.window), args.query)
        return SAIDA_OK
    modelo = _modelo(args.model, q)
    ordem = DecompositionOrder(args.order or DecompositionOrder.INCREASING)
    resultado = mul_constant_marginal(q, args.by, modelo, ordem)
    print(f"{Style.BRIGHT}Produto marginal por L = {args.by} ({modelo.value}){Style.RESET_ALL}")
    print(emit_marginal(resultado), end="")
    return SAIDA_OK


def comando_audit(args: argparse.Namespace) -> int:
    """Comando CLI para auditar a troca de unidade."""
    q = load_fiq(args.q)
    relatorio = unit_change_audit(q, args.by, args.unit)
    if args.out:
        write_text(args.out, json.dumps(relatorio.to_dict(), indent=2, ensure_ascii=False) + "\n")
    print(relatorio.resumo())
    if relatorio.dependence_detected:
        aviso = "A projeção marginal descarta dependências entre bits"
        print(f"{Fore.YELLOW}⚠️  {aviso}{Style.RESET_ALL}")
    if args.out:
        print(f"{Fore.GREEN}✅ Relatório gravado em {args.out}{Style.RESET_ALL}")
    return SAIDA_OK


def comando_hist(args: argparse.Namespace) -> int:
    """Comando CLI para o histograma dos dígitos."""
    q = load_fiq(args.q)
    histograma = digit_histogram(q, args.depth, args.bins)
    texto = emit_histogram_csv(histograma, args.csv)
    print(f"# truncation_bound = {histograma.truncation_bound}")
    if args.csv:
        print(f"{Fore.GREEN}✅ CSV gravado em {args.csv}{Style.RESET_ALL}")
    else:
        print(texto, end="")
    return SAIDA_OK


def comando_oracle_check(args: argparse.Namespace) -> int:
    """Comando CLI para comparar o motor exato com os oráculos."""
    q = load_fiq(args.q)
    exata = joint_mul_constant(q, args.by)
    truncada = truncation_law_mul(q, args.by, extension_depth=args.extension)
    print(f"{Style.BRIGHT}Motor exato × oráculo de truncamento (L = {args.by}){Style.RESET_ALL}")
    tabela = tv_table(exata, {args.extension: truncada}, args.by)
    print(tabela.to_string(index=False))

    if args.samples:
        config = OracleConfig(args.extension, args.samples, args.seed)
        estimativa = sample_law(q, OperationSpec.mul(args.by), config)
        marginais = project_to_marginal(exata)
        referencia = {p: marginais.propensity(p) for p in estimativa.estimates}
        dentro = estimativa.within(referencia)
        linhas = [
            {
                "position": p,
                "estimate": f"{estimativa.estimates[p]:.6f}",
                "half_width": f"{estimativa.half_widths[p]:.6f}",
                "exact": str(referencia[p]),
                "exact_decimal": decimal_text(referencia[p]),
                "within": dentro[p],
            }
            for p in estimativa.estimates
        ]
        print()
        titulo = f"Monte Carlo (n = {args.samples}, semente {args.seed})"
        print(f"{Style.BRIGHT}{titulo}{Style.RESET_ALL}")
        print(pd.DataFrame(linhas).to_string(index=False))
    return SAIDA_OK


def comando_info(args: argparse.Namespace) -> int:
    """Comando CLI com o resumo de informação de uma FIQ."""
    q = load_fiq(args.q)
    print(f"M: {q.M}")
    print(f"tail: {q.tail.value}")
    if q.unit_label:
        print(f"unit: {q.unit_label}")
    print(f"information_content: {information_content(q):.9f}")
    print("entropias por bit:")
    for k, p in enumerate(q.propensities, start=1):
        print(f"  {k:>3}: q = {p!s:<10} H2 = {bit_entropy(p):.9f}")
    return SAIDA_OK


# Opções que só fazem sentido com um dos motores.
_SO_EXATO = ("window", "query")
_SO_MARGINAL = ("model", "order")


def _confere_motor(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    """Rejeita opções de um motor usadas com o outro (erro de uso)."""
    if args.comando not in ("add", "mul"):
        return
    proibidas = _SO_EXATO if args.engine == "marginal" else _SO_MARGINAL
    usadas = [f"--{nome}" for nome in proibidas if getattr(args, nome, None) is not None]
    if usadas:
        opcoes = ", ".join(usadas)
        parser.error(f"{opcoes} não se aplica(m) a --engine {args.engine}")


def _inteiro_positivo(texto: str) -> int:
    valor = int(texto)
    if valor < 1:
        raise argparse.ArgumentTypeError(f"esperado inteiro >= 1, recebido {texto}")
    return valor


def criar_parser() -> argparse.ArgumentParser:
    """Monta o parser com todos os subcomandos."""
    parser = argparse.ArgumentParser(
        prog="fiq", description="Aritmética de quantidades de informação finita (FIQ)"
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Modo detalhado")
    subparsers = parser.add_subparsers(dest="comando", help="Comandos disponíveis")

    p_add = subparsers.add_parser("add", help="Soma duas FIQs")
    p_add.add_argument("q", help="Arquivo .fiq da primeira parcela")
    p_add.add_argument("r", help="Arquivo .fiq da segunda parcela")
    p_add.add_argument("--model", choices=sorted(_MODELOS), help="Carry abaixo de D")
    p_add.add_argument("--engine", choices=["marginal", "exact"], default="marginal")
    p_add.add_argument("--window", type=int, help="Profundidade da janela (motor exato)")
    p_add.add_argument("--query", help="Atribuição 'posição:bit,...' (motor exato)")
    p_add.set_defaults(executar=comando_add)

    p_mul = subparsers.add_parser("mul", help="Multiplica uma FIQ por L")
    p_mul.add_argument("q", help="Arquivo .fiq")
    p_mul.add_argument("--by", type=int, required=True, help="Constante inteira L")
    p_mul.add_argument("--engine", choices=["marginal", "exact"], default="marginal")
    p_mul.add_argument("--window", type=int, help="Profundidade da janela (motor exato)")
    p_mul.add_argument("--model", choices=sorted(_MODELOS), help="Carry abaixo de D")
    p_mul.add_argument(
        "--order",
        choices=[o.value for o in DecompositionOrder],
        help="Ordem de soma dos bits de L (motor marginal, padrão increasing)",
    )
    p_mul.add_argument("--query", help="Atribuição 'posição:bit,...' (motor exato)")
    p_mul.set_defaults(executar=comando_mul)

    p_audit = subparsers.add_parser("audit", help="Audita a troca de unidade U' = U/L")
    p_audit.add_argument("q", help="Arquivo .fiq")
    p_audit.add_argument("--by", type=int, required=True, help="Constante inteira L")
    p_audit.add_argument("--unit", help="Rótulo da nova unidade")
    p_audit.add_argument("--out", help="Arquivo JSON com o relatório")
    p_audit.set_defaults(executar=comando_audit)

    p_hist = subparsers.add_parser("hist", help="Histograma dos dígitos")
    p_hist.add_argument("q", help="Arquivo .fiq")
    p_hist.add_argument("--depth", type=_inteiro_positivo, required=True)
    p_hist.add_argument("--bins", type=_inteiro_positivo, required=True)
    p_hist.add_argument("--csv", help="Arquivo CSV de saída")
    p_hist.set_defaults(executar=comando_hist)

    p_oracle = subparsers.add_parser("oracle-check", help="Compara motor exato e oráculos")
    p_oracle.add_argument("q", help="Arquivo .fiq")
    p_oracle.add_argument("--by", type=int, required=True, help="Constante inteira L")
    p_oracle.add_argument("--extension", type=_inteiro_positivo, default=PROFUNDIDADE_EXTENSAO)
    p_oracle.add_argument("--samples", type=_inteiro_positivo, help=f"ex: {AMOSTRAS_PADRAO}")
    p_oracle.add_argument("--seed", type=int, default=SEMENTE_PADRAO)
    p_oracle.set_defaults(executar=comando_oracle_check)

    p_info = subparsers.add_parser("info", help="Informação carregada por uma FIQ")
    p_info.add_argument("q", help="Arquivo .fiq")
    p_info.set_defaults(executar=comando_info)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Ponto de entrada principal do CLI."""
    parser = criar_parser()
    try:
        args = parser.parse_args(argv)
        _confere_motor(parser, args)
    except SystemExit as e:
        return SAIDA_OK if e.code in (0, None) else SAIDA_USO

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    if args.comando is None:
        parser.print_help()
        return SAIDA_USO

    try:
        return int(args.executar(args))
    except FiqError as e:
        print(f"{Fore.RED}❌ {e}{Style.RESET_ALL}", file=sys.stderr)
        logger.debug("falha em %s", args.comando, exc_info=True)
        return SAIDA_DOMINIO


if __name__ == "__main__":
    sys.exit(main())
