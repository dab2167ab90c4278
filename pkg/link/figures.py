"""
Data tables behind the efficiency and optimal-order plots.

Every table is a header plus rows of numbers; rendering to CSV is done by
link.sweep.render_csv.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.approximations import (
    capacity_pie_bound,
    gamma_factor,
    mean_pulse_photons_asymptotic,
    mi_ppm_quadratic,
    opt_order_noisy,
    pie_ook_noisy,
    pie_ppm_noisy,
)
from core.channels import LinkBudget, PpmOrder, mi_ppm_noiseless
from core.optimizer import OptimizerSettings, maximize_ook_prior, maximize_ppm_order
from link.sweep import run_ordered
from utils.config import get_section
from utils.config_keys import ConfigKeys, ConfigSections
from utils.enums import FigureId
from utils.logger import get_logger
from utils.numeric import log_grid

FIGURE_HEADERS: Dict[FigureId, Tuple[str, ...]] = {
    FigureId.FIG2A: ('na', 'M', 'pie_exact', 'pie_quadratic'),
    FigureId.FIG2B: ('na', 'r', 'm_numeric', 'm_analytic'),
    FigureId.FIG3: ('na', 'r', 'mna_numeric', 'mna_analytic', 'mna_asymptotic'),
    FigureId.FIG5: ('na', 'r', 'pie_numeric', 'pie_analytic', 'capacity'),
    FigureId.FIG6: ('na', 'r', 'pie_numeric', 'pie_analytic', 'capacity'),
}


@dataclass(frozen=True)
class FigureSettings:
    """Сетки графиков"""
    noise_ratios: Tuple[float, ...] = (0.2, 0.5, 1.0)
    na_start: float = 1e-7
    na_stop: float = 1e-2
    points_per_decade: int = 10
    order_curve_na: Tuple[float, ...] = (1e-3, 1e-4, 1e-5)
    order_curve_points: int = 64

    @classmethod
    def from_config(cls, config: Optional[Dict[str, Any]]) -> 'FigureSettings':
        """Создает настройки из секции figures конфигурации"""
        section = get_section(config, ConfigSections.FIGURES)
        return cls(
            noise_ratios=tuple(float(r) for r in section[ConfigKeys.Figures.NOISE_RATIOS]),
            na_start=float(section[ConfigKeys.Figures.NA_START]),
            na_stop=float(section[ConfigKeys.Figures.NA_STOP]),
            points_per_decade=int(section[ConfigKeys.Figures.POINTS_PER_DECADE]),
            order_curve_na=tuple(float(v) for v in section[ConfigKeys.Figures.ORDER_CURVE_NA]),
            order_curve_points=int(section[ConfigKeys.Figures.ORDER_CURVE_POINTS])
        )

    def ratios(self) -> List[float]:
        """Без фона (r = 0) плюс значения легенды"""
        return sorted({0.0, *self.noise_ratios})

    def grid_points(self) -> List[Tuple[float, float]]:
        """Пары (n_a, r): n_a по возрастанию, затем r"""
        grid = log_grid(self.na_start, self.na_stop, self.points_per_decade)
        return [(na, r) for na in grid for r in self.ratios()]


def _order_curve(settings: FigureSettings, optimizer: OptimizerSettings) -> List[Tuple[float, ...]]:
    """PIE без фона как функция непрерывного M: точная формула и квадратичное разложение"""
    rows = []
    for na in sorted(settings.order_curve_na):
        budget = LinkBudget(na)
        m_max = max(optimizer.bracket_factor / na, 4.0)
        for m in np.geomspace(2.0, m_max, settings.order_curve_points):
            order = PpmOrder(float(m))
            rows.append((na, float(m), mi_ppm_noiseless(budget, order).pie,
                         mi_ppm_quadratic(budget, order).pie))
    return rows


def _order_row(point: Tuple[float, float], optimizer: OptimizerSettings) -> Tuple[float, ...]:
    na, r = point
    budget = LinkBudget(na, r * na)
    m_numeric = maximize_ppm_order(budget, settings=optimizer).best_param
    gamma = gamma_factor(na, budget.n_b)
    m_analytic = opt_order_noisy(na, gamma)
    return na, r, m_numeric, m_analytic, mean_pulse_photons_asymptotic(gamma.gamma * na)


def _pie_row(point: Tuple[float, float], figure: FigureId, optimizer: OptimizerSettings) -> Tuple[float, ...]:
    na, r = point
    budget = LinkBudget(na, r * na)
    if figure is FigureId.FIG5:
        numeric = maximize_ppm_order(budget, settings=optimizer).best_pie
        analytic = pie_ppm_noisy(na, budget.n_b)
    else:
        numeric = maximize_ook_prior(budget, settings=optimizer).best_pie
        analytic = pie_ook_noisy(na, r)
    return na, r, numeric, analytic, capacity_pie_bound(na)


def figure_table(figure: FigureId, settings: Optional[FigureSettings] = None,
                 optimizer: Optional[OptimizerSettings] = None,
                 threads: int = 1) -> Tuple[Tuple[str, ...], List[Sequence[Any]]]:
    """
    Таблица данных графика.

    Args:
        figure: Идентификатор графика
        settings: Сетки
        optimizer: Настройки численной оптимизации
        threads: Число рабочих потоков

    Returns:
        Tuple (заголовок, строки)
    """
    settings = settings or FigureSettings()
    optimizer = optimizer or OptimizerSettings()
    header = FIGURE_HEADERS[figure]
    get_logger().info(f"Построение таблицы {figure.value}")

    if figure is FigureId.FIG2A:
        return header, _order_curve(settings, optimizer)

    points = settings.grid_points()
    if figure in (FigureId.FIG2B, FigureId.FIG3):
        rows = run_ordered(lambda p: _order_row(p, optimizer), points, threads)
        if figure is FigureId.FIG2B:
            return header, [row[:4] for row in rows]
        return header, [(na, r, m_num * na, m_an * na, asym) for na, r, m_num, m_an, asym in rows]

    rows = run_ordered(lambda p: _pie_row(p, figure, optimizer), points, threads)
    return header, rows
