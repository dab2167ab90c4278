"""
Numerical optimizer module.

Maximizes the exact mutual information over the free parameter of each scheme
(PPM order M, OOK pulse probability q). The search runs in the logarithm of the
parameter: a coarse grid scan localizes the peak, golden-section search refines it.
"""

import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from core.channels import LinkBudget, ook_noisy_nats, ppm_noisy_nats
from core.special_functions import LOG2E
from utils.config import get_section
from utils.config_keys import ConfigKeys, ConfigSections
from utils.enums import OrderMode, Scheme
from utils.errors import DomainError
from utils.logger import get_logger


@dataclass(frozen=True)
class OptimizerSettings:
    """Параметры численного поиска"""
    coarse_points: int = 64
    xtol: float = 1e-8
    bracket_factor: float = 20.0
    integer_window: int = 2
    maxiter: int = 500

    @classmethod
    def from_config(cls, config: Optional[Dict[str, Any]]) -> 'OptimizerSettings':
        """Создает настройки из секции optimizer конфигурации"""
        section = get_section(config, ConfigSections.OPTIMIZER)
        return cls(
            coarse_points=int(section[ConfigKeys.Optimizer.COARSE_POINTS]),
            xtol=float(section[ConfigKeys.Optimizer.XTOL]),
            bracket_factor=float(section[ConfigKeys.Optimizer.BRACKET_FACTOR]),
            integer_window=int(section[ConfigKeys.Optimizer.INTEGER_WINDOW]),
            maxiter=int(section[ConfigKeys.Optimizer.MAXITER])
        )


@dataclass(frozen=True)
class OptimizationReport:
    """Результат численной оптимизации"""
    scheme: Scheme
    mode: OrderMode
    best_param: float
    best_bits_per_bin: float
    best_pie: float
    evaluations: int
    bracket: Tuple[float, float]
    converged: bool
    multimodal: bool = False

    def to_dict(self) -> Dict[str, Any]:
        """Конвертация в словарь для JSON сериализации"""
        return {
            "scheme": self.scheme.value,
            "mode": self.mode.value,
            "best_param": self.best_param,
            "best_bits_per_bin": self.best_bits_per_bin,
            "best_pie": self.best_pie,
            "evaluations": self.evaluations,
            "bracket": list(self.bracket),
            "converged": self.converged,
            "multimodal": self.multimodal
        }


def scan_objective(objective: Callable[[float], float], lo: float, hi: float,
                   points: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Грубое сканирование функции на равномерной сетке [lo, hi].

    Returns:
        Tuple (узлы сетки, значения функции)
    """
    grid = np.linspace(lo, hi, max(3, int(points)))
    values = np.array([objective(float(t)) for t in grid])
    return grid, values


def count_local_maxima(values: np.ndarray) -> int:
    """Число локальных максимумов на сетке (включая граничные)"""
    count = 0
    last = len(values) - 1
    for i, value in enumerate(values):
        left = values[i - 1] if i > 0 else -np.inf
        right = values[i + 1] if i < last else -np.inf
        if value > left and value >= right:
            count += 1
    return count


def _refine(negated: Callable[[float], float], grid: np.ndarray, idx: int,
            settings: OptimizerSettings):
    """Уточнение максимума золотым сечением (или ограниченным поиском на краю сетки)"""
    if 0 < idx < len(grid) - 1:
        try:
            return minimize_scalar(
                negated,
                bracket=(grid[idx - 1], grid[idx], grid[idx + 1]),
                method='golden',
                options={'xtol': settings.xtol, 'maxiter': settings.maxiter}
            )
        except ValueError:
            # Плоская вершина: тройка точек не образует скобку
            bounds = (grid[idx - 1], grid[idx + 1])
    else:
        bounds = (grid[0], grid[1]) if idx == 0 else (grid[-2], grid[-1])

    scale = max(1.0, abs(grid[idx]))
    return minimize_scalar(
        negated,
        bounds=bounds,
        method='bounded',
        options={'xatol': settings.xtol * scale, 'maxiter': settings.maxiter}
    )


def _maximize_in_log(objective: Callable[[float], float], lo: float, hi: float,
                     settings: OptimizerSettings):
    """
    Максимизирует objective(param) по log(param) на [lo, hi].

    Returns:
        Tuple (param, value, evaluations, converged, multimodal)
    """
    t_lo, t_hi = math.log(lo), math.log(hi)

    def clamp(t: float) -> float:
        return min(max(math.exp(t), lo), hi)

    grid, values = scan_objective(lambda t: objective(clamp(t)), t_lo, t_hi, settings.coarse_points)
    evaluations = len(grid)
    idx = int(np.argmax(values))
    multimodal = count_local_maxima(values) > 1

    result = _refine(lambda t: -objective(clamp(t)), grid, idx, settings)
    evaluations += int(getattr(result, 'nfev', 0))
    converged = bool(getattr(result, 'success', True))

    # Итог не хуже лучшего узла сетки; значение пересчитывается в возвращаемой точке
    best_param, best_value = None, -np.inf
    for candidate in (clamp(float(result.x)), clamp(float(grid[idx]))):
        value = objective(candidate)
        evaluations += 1
        if value > best_value:
            best_param, best_value = candidate, value

    return best_param, best_value, evaluations, converged, multimodal


def _report_warnings(report: OptimizationReport, budget: LinkBudget):
    logger = get_logger()
    if not report.converged:
        logger.warning(
            f"Оптимизация {report.scheme.value} не сошлась (n_a={budget.n_a:g}, n_b={budget.n_b:g}), "
            f"лучшее значение параметра {report.best_param:.6g}"
        )
    if report.multimodal:
        logger.warning(
            f"Найдено несколько локальных максимумов для {report.scheme.value} "
            f"(n_a={budget.n_a:g}, n_b={budget.n_b:g})"
        )
    logger.debug(
        f"{report.scheme.value}: параметр {report.best_param:.6g}, "
        f"PIE {report.best_pie:.6g} бит/фотон, вычислений {report.evaluations}"
    )


def ppm_bracket(budget: LinkBudget, settings: OptimizerSettings) -> Tuple[float, float]:
    """Интервал поиска порядка PPM: [2, bracket_factor / (gamma n_a)]"""
    gamma = 1.0 + 2.0 * budget.n_b / budget.n_a
    return 2.0, max(settings.bracket_factor / (gamma * budget.n_a), 4.0)


def ook_bracket(budget: LinkBudget, settings: OptimizerSettings) -> Tuple[float, float]:
    """Интервал поиска вероятности импульса OOK: [n_a / bracket_factor, 1/2]"""
    return min(budget.n_a / settings.bracket_factor, 0.25), 0.5


def maximize_ppm_order(budget: LinkBudget, mode: OrderMode = OrderMode.CONTINUOUS,
                       settings: Optional[OptimizerSettings] = None) -> OptimizationReport:
    """
    Численно максимизирует информацию PPM (с фоном, приемник простого решения) по порядку M.

    Args:
        budget: Рабочая точка (n_a > 0)
        mode: Непрерывный или целочисленный порядок
        settings: Параметры поиска

    Returns:
        OptimizationReport
    """
    if not budget.n_a > 0.0:
        raise DomainError("n_a must be positive")
    settings = settings or OptimizerSettings()
    n_a, n_b = budget.n_a, budget.n_b

    def objective(m: float) -> float:
        return ppm_noisy_nats(n_a, n_b, m) * LOG2E

    lo, hi = ppm_bracket(budget, settings)
    best_m, best_bits, evaluations, converged, multimodal = _maximize_in_log(objective, lo, hi, settings)

    if mode is OrderMode.INTEGER:
        window = settings.integer_window
        first = max(2, math.floor(best_m) - window)
        last = math.ceil(best_m) + window
        candidates = [m for m in range(first, last + 1) if m <= hi] or [max(2, math.floor(best_m))]
        best_bits = -np.inf
        for m in candidates:
            bits = objective(float(m))
            evaluations += 1
            if bits > best_bits:
                best_m, best_bits = float(m), bits

    report = OptimizationReport(
        scheme=Scheme.PPM,
        mode=mode,
        best_param=best_m,
        best_bits_per_bin=best_bits,
        best_pie=best_bits / n_a,
        evaluations=evaluations,
        bracket=(lo, hi),
        converged=converged,
        multimodal=multimodal
    )
    _report_warnings(report, budget)
    return report


def maximize_ook_prior(budget: LinkBudget,
                       settings: Optional[OptimizerSettings] = None) -> OptimizationReport:
    """
    Численно максимизирует информацию обобщенного OOK (с фоном) по вероятности импульса q.

    Args:
        budget: Рабочая точка (n_a > 0)
        settings: Параметры поиска

    Returns:
        OptimizationReport
    """
    if not budget.n_a > 0.0:
        raise DomainError("n_a must be positive")
    settings = settings or OptimizerSettings()
    n_a, n_b = budget.n_a, budget.n_b

    def objective(q: float) -> float:
        return ook_noisy_nats(n_a, n_b, q) * LOG2E

    lo, hi = ook_bracket(budget, settings)
    best_q, best_bits, evaluations, converged, multimodal = _maximize_in_log(objective, lo, hi, settings)

    report = OptimizationReport(
        scheme=Scheme.OOK,
        mode=OrderMode.CONTINUOUS,
        best_param=best_q,
        best_bits_per_bin=best_bits,
        best_pie=best_bits / n_a,
        evaluations=evaluations,
        bracket=(lo, hi),
        converged=converged,
        multimodal=multimodal
    )
    _report_warnings(report, budget)
    return report
