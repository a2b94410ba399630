#!/usr/bin/env python3
"""
Foutklassen voor de ExoFabric compiler

Alle domeinfouten erven van ExoFabricError zodat de command-line
front end ze met exit status 1 kan afhandelen.
"""


class ExoFabricError(Exception):
    """Basisklasse voor alle domeinfouten"""

    # Invoerbestand waarin de fout optrad; gezet door de front end
    path = None


# Geometrie

class GeometryError(ExoFabricError):
    pass


class RegionInvalid(GeometryError):
    pass


class RegionDegenerate(GeometryError):
    pass


class ConfigMismatch(GeometryError):
    pass


class InvalidConfig(GeometryError):
    pass


# Bestanden (spec, requirements, calibratie)

class ParseError(ExoFabricError):
    """
    Fout bij het inlezen van een tekstbestand

    Args:
        message: Beschrijving van de fout
        line: Regelnummer (1-based) of None
        column: Kolomnaam of -nummer of None
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")


class UnknownKey(ParseError):
    pass


# Calibratie

class CalibrationError(ExoFabricError):
    pass


class CalibrationParseError(ParseError, CalibrationError):
    pass


class InvariantViolation(CalibrationError):
    pass


class InvalidQuery(CalibrationError):
    pass


class InsufficientCalibration(CalibrationError):
    pass


class UnknownConfig(CalibrationError):
    pass


class UnknownFabric(CalibrationError):
    pass


class UnknownThread(CalibrationError):
    pass


class NonStretchFabric(CalibrationError):
    pass


class UnsupportedMold(CalibrationError):
    pass


class UnknownAffordance(CalibrationError):
    pass


# Tajima DST

class DstError(ExoFabricError):
    pass


class NameTooLong(DstError):
    pass


class CoordinateOverflow(DstError):
    pass


class BadHeader(DstError):
    pass


class BadRecord(DstError):
    """Ongeldig of ontbrekend movement record op byte offset `offset`"""

    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"offset {offset}: {message}")


class ExtentMismatch(DstError):
    pass
