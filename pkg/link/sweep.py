"""
Parameter sweeps over (n_a, r) grids and atomic CSV output.

Rows are produced in a fixed order (n_a ascending, then r, then scheme, then
method) no matter how many worker threads evaluate them.
"""

import csv
import io
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from core.approximations import analytic_ook, analytic_ppm
from core.channels import LinkBudget
from core.montecarlo import MonteCarloSettings, SimConfig, empirical_info, simulate
from core.optimizer import OptimizerSettings, maximize_ook_prior, maximize_ppm_order
from utils.enums import OrderMode, Scheme, SweepMethod
from utils.errors import DomainError
from utils.logger import get_logger
from utils.numeric import format_float, log_grid

SWEEP_HEADER = ('na', 'nb', 'scheme', 'method', 'param', 'bits_per_bin', 'pie')

# Ключ потока SeedSequence для зерен точек Monte Carlo
_SWEEP_SEED_STREAM = 2

T = TypeVar('T')
R = TypeVar('R')


@dataclass(frozen=True)
class SweepSpec:
    """Описание сетки sweep"""
    na_start: float
    na_stop: float
    points_per_decade: int
    noise_ratios: Tuple[float, ...] = (0.0,)
    schemes: Tuple[Scheme, ...] = (Scheme.PPM, Scheme.OOK)
    methods: Tuple[SweepMethod, ...] = (SweepMethod.ANALYTIC, SweepMethod.NUMERIC)
    frames: int = 1_000_000
    seed: int = 12345
    mode: OrderMode = OrderMode.CONTINUOUS

    def __post_init__(self):
        if not (self.na_start > 0.0 and self.na_stop > self.na_start):
            raise DomainError(f"sweep requires 0 < na_start < na_stop, got [{self.na_start}, {self.na_stop}]")
        if int(self.points_per_decade) != self.points_per_decade or self.points_per_decade < 1:
            raise DomainError("points_per_decade must be a positive integer")
        ratios = tuple(sorted(set(float(r) for r in self.noise_ratios)))
        if not ratios or any(not math.isfinite(r) or r < 0.0 for r in ratios):
            raise DomainError(f"noise ratios must be finite and >= 0, got {self.noise_ratios!r}")
        if not self.schemes or not self.methods:
            raise DomainError("sweep requires at least one scheme and one method")
        object.__setattr__(self, 'noise_ratios', ratios)
        object.__setattr__(self, 'schemes', tuple(s for s in Scheme if s in set(self.schemes)))
        object.__setattr__(self, 'methods', tuple(m for m in SweepMethod if m in set(self.methods)))

    def grid(self) -> List[float]:
        """Узлы n_a по возрастанию, концы включены"""
        return log_grid(self.na_start, self.na_stop, int(self.points_per_decade))

    def points(self) -> List[Tuple[float, float, Scheme, SweepMethod]]:
        """Все точки (n_a, r, схема, метод) в порядке строк таблицы"""
        return [
            (na, r, scheme, method)
            for na in self.grid()
            for r in self.noise_ratios
            for scheme in self.schemes
            for method in self.methods
        ]


@dataclass(frozen=True)
class SweepRow:
    """Строка таблицы sweep"""
    na: float
    nb: float
    scheme: Scheme
    method: SweepMethod
    param: Optional[float]
    bits_per_bin: float
    pie: Optional[float]

    def cells(self) -> Tuple[Any, ...]:
        return (self.na, self.nb, self.scheme.value, self.method.value,
                self.param, self.bits_per_bin, self.pie)


@dataclass
class SweepContext:
    """Общие настройки вычисления точек"""
    optimizer: OptimizerSettings = field(default_factory=OptimizerSettings)
    montecarlo: MonteCarloSettings = field(default_factory=MonteCarloSettings)


def run_ordered(func: Callable[[T], R], items: Sequence[T], threads: int = 1) -> List[R]:
    """Вычисляет func для всех элементов; порядок результатов совпадает с порядком items"""
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def point_seeds(seed: int, count: int) -> List[int]:
    """Независимые зерна для точек Monte Carlo в порядке сетки"""
    children = np.random.SeedSequence([int(seed), _SWEEP_SEED_STREAM]).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint32)[0]) for child in children]


def analytic_sim_config(budget: LinkBudget, scheme: Scheme, frames: int, seed: int) -> SimConfig:
    """
    Конфигурация Monte Carlo в аналитически оптимальной точке:
    целое округление M* для PPM, q = 1/M* для OOK.
    """
    if scheme is Scheme.PPM:
        order = max(2, int(round(analytic_ppm(budget).param)))
        return SimConfig(budget=budget, scheme=scheme, frames=frames, seed=seed, order=order)
    return SimConfig(budget=budget, scheme=scheme, frames=frames, seed=seed, prior=analytic_ook(budget).param)


def evaluate_point(na: float, r: float, scheme: Scheme, method: SweepMethod, context: SweepContext,
                   mode: OrderMode = OrderMode.CONTINUOUS, frames: int = 0, seed: int = 0) -> SweepRow:
    """Вычисляет одну строку таблицы"""
    budget = LinkBudget(na, r * na)

    if method is SweepMethod.ANALYTIC:
        result = analytic_ppm(budget) if scheme is Scheme.PPM else analytic_ook(budget)
        param, bits, pie = result.param, result.bits_per_bin, result.pie
    elif method is SweepMethod.NUMERIC:
        if scheme is Scheme.PPM:
            report = maximize_ppm_order(budget, mode, context.optimizer)
        else:
            report = maximize_ook_prior(budget, context.optimizer)
        param, bits, pie = report.best_param, report.best_bits_per_bin, report.best_pie
    else:
        sim = analytic_sim_config(budget, scheme, frames, seed)
        result = empirical_info(sim, simulate(sim, context.montecarlo, threads=1))
        param, bits, pie = result.param, result.bits_per_bin, result.pie

    return SweepRow(na=na, nb=budget.n_b, scheme=scheme, method=method, param=param,
                    bits_per_bin=bits, pie=pie)


def run_sweep(spec: SweepSpec, context: Optional[SweepContext] = None, threads: int = 1) -> List[SweepRow]:
    """
    Вычисляет все строки sweep.

    Args:
        spec: Описание сетки
        context: Настройки оптимизатора и Monte Carlo
        threads: Число рабочих потоков

    Returns:
        list[SweepRow] в детерминированном порядке
    """
    context = context or SweepContext()
    points = spec.points()
    mc_count = sum(1 for point in points if point[3] is SweepMethod.MONTECARLO)
    seeds = iter(point_seeds(spec.seed, mc_count))
    tasks = [
        (point, next(seeds) if point[3] is SweepMethod.MONTECARLO else 0)
        for point in points
    ]

    logger = get_logger()
    logger.info(f"Sweep: {len(tasks)} строк, потоков {threads}")

    def evaluate(task) -> SweepRow:
        (na, r, scheme, method), seed = task
        return evaluate_point(na, r, scheme, method, context, spec.mode, spec.frames, seed)

    return run_ordered(evaluate, tasks, threads)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], digits: int = 12) -> str:
    """Форматирует таблицу в CSV; числа - с заданным числом значащих цифр"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([
            cell if isinstance(cell, str) else format_float(cell, digits)
            for cell in row
        ])
    return buffer.getvalue()


def write_output(text: str, out: Optional[Union[str, Path]] = None):
    """
    Записывает текст в файл атомарно (временный файл + переименование) или в stdout.

    При ошибке частичный файл не остается.
    """
    if out is None or str(out) == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    target = Path(out)
    directory = target.parent if str(target.parent) else Path('.')
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=f".{target.name}.", suffix='.tmp', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp_path, target)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    get_logger().info(f"Записан файл {target}")


def sweep_csv(rows: Iterable[SweepRow], digits: int = 12) -> str:
    """CSV таблица sweep с фиксированным заголовком"""
    return render_csv(SWEEP_HEADER, (row.cells() for row in rows), digits)
