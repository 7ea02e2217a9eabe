"""
Permite executar o pacote como módulo: python -m fiq_aritmetica
"""

import sys

from fiq_aritmetica.cli import main

if __name__ == "__main__":
    sys.exit(main())
