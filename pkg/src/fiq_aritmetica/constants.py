"""
Constantes compartilhadas do projeto.
"""

# Máximo de bits indeterminados enumerados pelos motores exatos e pelo oráculo.
LIMITE_ENUMERACAO = 24

# Oráculo
PROFUNDIDADE_EXTENSAO = 16
AMOSTRAS_PADRAO = 1_000_000
SEMENTE_PADRAO = 20191227
FATOR_Z = 4.0

# Comparações em ponto flutuante (entropias)
TOLERANCIA_ENTROPIA = 1e-9

# Dígitos significativos da coluna decimal das tabelas
DIGITOS_DECIMAIS = 12

# Códigos de saída da CLI
SAIDA_OK = 0
SAIDA_USO = 2
SAIDA_DOMINIO = 3
