# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""Fehlerklassen von PyPASS.

Alle Fehler der Bibliothek erben von :class:`PassError`. Das Kommandozeilen-Tool
bildet :class:`NumericalError` auf Exit-Code 3 und alle anderen auf Exit-Code 2 ab.
"""


class PassError(Exception):
    """Basisklasse aller Fehler von PyPASS"""


class DomainError(PassError, ValueError):
    """Ungültiger Zahlenwert, z.B. eine nicht positive Leistung in Watt oder eine negative Distanz"""


class PreconditionError(PassError, ValueError):
    """Die Voraussetzung eines analytischen Ergebnisses ist verletzt, z.B. d0 > N·λ oder h > D.
    Die Meldung nennt die verletzte Bedingung."""


class ContractError(PassError, ValueError):
    """Argumente passen nicht zusammen, z.B. Szenario und Platzierung oder Szenario und Methode"""


class NumericalError(PassError, ArithmeticError):
    """Ein numerisches Verfahren ist nicht konvergiert"""


class ConfigError(PassError):
    """Fehlerhafte Konfiguration oder fehlerhafter Override"""
