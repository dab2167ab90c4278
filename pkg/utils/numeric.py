"""
Numeric helpers shared by the sweep, figure and command-line layers.
"""

import math
import os
from typing import List, Optional

import numpy as np

from utils.config_keys import THREADS_ENV_VAR
from utils.errors import DomainError


def log_grid(start: float, stop: float, points_per_decade: int) -> List[float]:
    """
    Логарифмическая сетка с включенными концами.

    Args:
        start: Левый конец (> 0)
        stop: Правый конец (> start)
        points_per_decade: Число интервалов на декаду

    Returns:
        list[float]: узлы сетки по возрастанию
    """
    if not (math.isfinite(start) and math.isfinite(stop)) or start <= 0 or stop <= start:
        raise DomainError(f"invalid grid range [{start}, {stop}]")
    if points_per_decade < 1:
        raise DomainError("points_per_decade must be >= 1")

    decades = math.log10(stop) - math.log10(start)
    intervals = max(1, int(round(decades * points_per_decade)))
    grid = np.logspace(math.log10(start), math.log10(stop), intervals + 1)
    grid[0], grid[-1] = start, stop
    return [float(v) for v in grid]


def format_float(value: Optional[float], digits: int = 12) -> str:
    """Форматирует число с заданным числом значащих цифр; None -> пустая ячейка"""
    if value is None:
        return ''
    return f"{float(value) + 0.0:.{digits}g}"


def resolve_threads(requested: Optional[int] = None) -> int:
    """
    Определяет число рабочих потоков.

    Переменная окружения PPM_LINK_THREADS ограничивает сверху любое запрошенное значение.
    """
    threads = requested if requested else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV_VAR)
    if cap:
        try:
            threads = min(threads, int(cap))
        except ValueError:
            raise DomainError(f"{THREADS_ENV_VAR} must be an integer, got {cap!r}")
    return max(1, int(threads))
