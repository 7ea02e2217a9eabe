"""Pacote de testes para fiq_aritmetica."""
