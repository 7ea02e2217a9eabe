"""
FIQ Aritmética - Aritmética de Quantidades de Informação Finita

Este pacote fornece dois motores para somar FIQs e multiplicá-las por uma
constante inteira (o motor marginal, que propaga propensões bit a bit, e o
motor exato, que calcula a lei conjunta dos bits), oráculos de referência e
a auditoria da informação perdida numa troca de unidade.
"""

__version__ = "1.0.0"

from .analisador import AuditReport, Histogram, digit_histogram, unit_change_audit
from .documento import emit_joint_law, parse_fiq, serialize_fiq
from .models import Fiq, JointLaw, Tail, TailNote, WideMarginal, fiq_validate, make_propensity
from .motor_exato import joint_add, joint_mul_constant, pattern_propensity, project_to_marginal
from .motor_marginal import CarryModel, add_marginal, mul_constant_marginal

__all__ = [
    "Fiq",
    "WideMarginal",
    "JointLaw",
    "Tail",
    "TailNote",
    "make_propensity",
    "fiq_validate",
    "CarryModel",
    "add_marginal",
    "mul_constant_marginal",
    "joint_add",
    "joint_mul_constant",
    "pattern_propensity",
    "project_to_marginal",
    "AuditReport",
    "Histogram",
    "unit_change_audit",
    "digit_histogram",
    "parse_fiq",
    "serialize_fiq",
    "emit_joint_law",
]
