"""
Enumerations and constants for the PPM link analysis package.
"""

from enum import Enum


class Scheme(Enum):
    """Схема модуляции"""
    PPM = "ppm"  # pulse position modulation
    OOK = "ook"  # обобщенный on-off keying


class Method(Enum):
    """Способ получения результата"""
    EXACT = "exact"              # точная формула / численная оптимизация
    ANALYTIC = "analytic"        # замкнутые приближенные формулы
    MONTE_CARLO = "monte-carlo"  # стохастический оракул


class SweepMethod(Enum):
    """Методы в таблице sweep (порядок определяет порядок строк)"""
    ANALYTIC = "analytic"
    NUMERIC = "numeric"
    MONTECARLO = "montecarlo"


class OrderMode(Enum):
    """Режим порядка PPM"""
    CONTINUOUS = "continuous"
    INTEGER = "integer"


class FigureId(Enum):
    """Поддерживаемые графики"""
    FIG2A = "fig2a"
    FIG2B = "fig2b"
    FIG3 = "fig3"
    FIG5 = "fig5"
    FIG6 = "fig6"


class Verdict(Enum):
    """Вердикт проверки Monte Carlo"""
    PASS = "pass"
    FAIL = "fail"
