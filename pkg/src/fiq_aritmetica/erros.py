"""
Exceções do pacote.

Todas derivam de FiqError, o que permite à CLI distinguir erros de domínio
(código de saída 3) de erros de uso (código 2).
"""


class FiqError(Exception):
    """Erro base de aritmética de FIQs."""


class RangeError(FiqError, ValueError):
    """Propensão fora do intervalo [0, 1]."""


class ArgumentError(FiqError, ValueError):
    """Argumento inválido (denominador zero, L = 0, janela ou posição inválida)."""


class ContractError(FiqError):
    """Pré-condição violada, por exemplo cauda incompatível com o modelo de carry."""


class ResourceError(FiqError):
    """Enumeração maior do que o limite configurado."""


class DocumentError(FiqError, ValueError):
    """
    Documento .fiq malformado.

    Attributes:
        campo: Campo onde o erro foi detectado (ex: 'propensities[2]')
        linha: Linha do texto, quando conhecida
    """

    def __init__(self, mensagem: str, campo: str | None = None, linha: int | None = None):
        self.campo = campo
        self.linha = linha
        prefixo = ""
        if linha is not None:
            prefixo += f"linha {linha}: "
        if campo is not None:
            prefixo += f"{campo}: "
        super().__init__(prefixo + mensagem)
