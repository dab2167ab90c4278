"""
Tests for numerical maximization over PPM order and OOK pulse probability
"""

import math

import numpy as np
import pytest

from core.approximations import (
    capacity_pie_bound,
    gamma_factor,
    opt_order_noiseless,
    opt_order_noisy,
    pie_ook_noisy,
    pie_ppm_noisy,
)
from core.channels import LinkBudget, ook_noisy_nats, ppm_noisy_nats
from core.optimizer import (
    OptimizerSettings,
    count_local_maxima,
    maximize_ook_prior,
    maximize_ppm_order,
    ook_bracket,
    ppm_bracket,
    scan_objective,
)
from core.special_functions import LOG2E
from utils.enums import OrderMode, Scheme
from utils.errors import DomainError

GRID_NA = (1e-6, 1e-5, 1e-4, 1e-3)
GRID_R = (0.0, 0.2, 0.5, 1.0)


class TestOptimizerHelpers:
    """Тесты вспомогательных функций"""

    def test_scan_objective(self):
        """Равномерная сетка и значения функции"""
        grid, values = scan_objective(lambda t: -(t - 1.0) ** 2, 0.0, 2.0, 5)
        assert list(grid) == [0.0, 0.5, 1.0, 1.5, 2.0]
        assert values[2] == 0.0

    def test_count_local_maxima(self):
        """Граничные и внутренние максимумы"""
        assert count_local_maxima(np.array([0.0, 1.0, 0.0])) == 1
        assert count_local_maxima(np.array([0.0, 1.0, 0.0, 2.0, 0.0])) == 2
        assert count_local_maxima(np.array([3.0, 2.0, 1.0])) == 1

    def test_settings_from_config(self):
        """Секция optimizer дополняется значениями по умолчанию"""
        settings = OptimizerSettings.from_config({'optimizer': {'coarse_points': 16}})
        assert settings.coarse_points == 16
        assert settings.xtol == OptimizerSettings().xtol
        assert OptimizerSettings.from_config(None) == OptimizerSettings()


class TestPpmOrder:
    """Тесты оптимизации порядка PPM"""

    def test_matches_dense_grid(self):
        """Оптимум не хуже плотной сетки по M"""
        budget = LinkBudget(1e-3)
        report = maximize_ppm_order(budget)
        grid = np.geomspace(2.0, 1e5, 20001)
        best = max(ppm_noisy_nats(1e-3, 0.0, float(m)) for m in grid) * LOG2E
        assert report.best_bits_per_bin >= best - 1e-12
        assert report.best_bits_per_bin <= best * (1 + 1e-6)
        assert report.best_pie == pytest.approx(7.131, rel=1e-3)
        assert report.converged
        assert not report.multimodal

    def test_noiseless_order_consistent_with_closed_form(self):
        """Численный порядок без фона в пределах 25% от M*"""
        for n_a in (1e-7, 1e-5, 1e-3):
            report = maximize_ppm_order(LinkBudget(n_a))
            assert report.best_param == pytest.approx(opt_order_noiseless(n_a), rel=0.25)

    def test_noisy_order(self):
        """С фоном r = 1: в пределах 40% от M*, расхождение убывает с n_a, порядок меньше, чем без фона"""
        deviations = []
        for n_a in (1e-3, 1e-5, 1e-7):
            budget = LinkBudget(n_a, n_a)
            noisy = maximize_ppm_order(budget).best_param
            analytic = opt_order_noisy(n_a, gamma_factor(n_a, n_a))
            deviations.append(abs(noisy - analytic) / analytic)
            assert noisy < maximize_ppm_order(LinkBudget(n_a)).best_param
        assert max(deviations) <= 0.40
        assert deviations[0] > deviations[1] > deviations[2]

    @pytest.mark.parametrize("n_a, n_b", [(1e-3, 0.0), (1e-3, 1e-4), (1e-2, 1e-2), (0.05, 0.01), (1e-5, 5e-6)])
    def test_integer_mode(self, n_a, n_b):
        """Целочисленный порядок не лучше непрерывного и не хуже целых в окне +-10"""
        budget = LinkBudget(n_a, n_b)
        report = maximize_ppm_order(budget, OrderMode.INTEGER)
        m = report.best_param
        assert m == int(m)
        assert report.mode is OrderMode.INTEGER
        assert report.best_bits_per_bin <= maximize_ppm_order(budget).best_bits_per_bin * (1.0 + 1e-12)
        for other in range(max(2, int(m) - 10), int(m) + 11):
            assert ppm_noisy_nats(n_a, n_b, float(other)) * LOG2E <= report.best_bits_per_bin

    def test_zero_signal_raises(self):
        """n_a = 0"""
        with pytest.raises(DomainError, match="n_a must be positive"):
            maximize_ppm_order(LinkBudget(0.0))

    def test_report_dict(self):
        """Ключи отчета"""
        report = maximize_ppm_order(LinkBudget(1e-4))
        data = report.to_dict()
        assert data['scheme'] == 'ppm'
        assert data['mode'] == 'continuous'
        assert set(data) == {'scheme', 'mode', 'best_param', 'best_bits_per_bin', 'best_pie',
                             'evaluations', 'bracket', 'converged', 'multimodal'}
        assert data['evaluations'] > OptimizerSettings().coarse_points


class TestOokPrior:
    """Тесты оптимизации вероятности импульса OOK"""

    def test_noiseless_value(self):
        """n_a = 1e-3: PIE около 7.35"""
        report = maximize_ook_prior(LinkBudget(1e-3))
        assert report.scheme is Scheme.OOK
        assert report.best_pie == pytest.approx(7.346, rel=3e-3)
        assert 0.0 < report.best_param < 0.5

    def test_matches_dense_grid(self):
        """Оптимум не хуже плотной сетки по q"""
        n_a, n_b = 1e-4, 1e-4
        report = maximize_ook_prior(LinkBudget(n_a, n_b))
        best = max(ook_noisy_nats(n_a, n_b, float(q)) for q in np.geomspace(1e-6, 0.5, 20001)) * LOG2E
        assert report.best_bits_per_bin >= best - 1e-12

    def test_ook_beats_ppm(self):
        """Обобщенный OOK не хуже PPM в той же точке"""
        budget = LinkBudget(1e-4, 1e-4)
        assert maximize_ook_prior(budget).best_pie >= maximize_ppm_order(budget).best_pie

    def test_zero_signal_raises(self):
        """n_a = 0"""
        with pytest.raises(DomainError, match="n_a must be positive"):
            maximize_ook_prior(LinkBudget(0.0))


class TestAnalyticAgreement:
    """Согласие замкнутых формул с численной оптимизацией"""

    @pytest.mark.parametrize('r', GRID_R)
    def test_ppm(self, r):
        """PPM: 6% без фона, 20% с фоном"""
        tolerance = 0.06 if r == 0.0 else 0.20
        errors = []
        for n_a in GRID_NA:
            numeric = maximize_ppm_order(LinkBudget(n_a, r * n_a)).best_pie
            analytic = pie_ppm_noisy(n_a, r * n_a)
            errors.append(abs(analytic - numeric) / numeric)
        assert max(errors) <= tolerance
        assert errors[0] < errors[-1]

    @pytest.mark.parametrize('r', GRID_R)
    def test_ook(self, r):
        """OOK: 6% без фона, 20% с фоном"""
        tolerance = 0.06 if r == 0.0 else 0.20
        errors = []
        for n_a in GRID_NA:
            numeric = maximize_ook_prior(LinkBudget(n_a, r * n_a)).best_pie
            analytic = pie_ook_noisy(n_a, r)
            errors.append(abs(analytic - numeric) / numeric)
        assert max(errors) <= tolerance
        assert errors[0] < errors[-1]

    def test_capacity_exceeds_numeric(self):
        """Предельная эффективность выше численных PIE обеих схем"""
        for n_a in GRID_NA:
            capacity = capacity_pie_bound(n_a)
            for r in GRID_R:
                budget = LinkBudget(n_a, r * n_a)
                assert capacity > maximize_ppm_order(budget).best_pie
                assert capacity > maximize_ook_prior(budget).best_pie

    def test_closed_form_tightens(self):
        """При n_a <= 1e-5 и r = 0 расхождение не больше 5%"""
        for n_a in (1e-6, 1e-5):
            numeric = maximize_ppm_order(LinkBudget(n_a)).best_pie
            assert pie_ppm_noisy(n_a, 0.0) == pytest.approx(numeric, rel=0.05)
            assert math.isfinite(numeric)


def _ppm_bits_on_grid(n_a: float, n_b: float, m: np.ndarray) -> np.ndarray:
    """Векторная трехчленная формула PPM в битах на бин (независимая от core реализация)"""
    p_c = -np.expm1(-(m * n_a + n_b))
    p_e = np.exp(-(m - 1.0) * n_b) * p_c
    p_d = np.exp(-(m * n_a + n_b)) * -np.expm1(-n_b) * np.exp(-(m - 2.0) * n_b)
    wrong = (m - 1.0) * p_d
    nats = p_e * np.log(m)
    if n_b > 0.0:
        nats = nats + wrong * np.log(m * p_d / p_e) - (p_e + wrong) * np.log1p(wrong / p_e)
    return nats / m * LOG2E


def _ook_bits_on_grid(n_a: float, n_b: float, q: np.ndarray) -> np.ndarray:
    """Векторная информация бинарного асимметричного канала в битах на бин"""
    def entropy(x):
        return -x * np.log(x) - (1.0 - x) * np.log1p(-x)

    def click_entropy(t):
        p = -np.expm1(-t)
        return -p * np.log(p) + t * np.exp(-t)

    exponent = n_a / q + n_b
    mixed = q * -np.expm1(-exponent) + (1.0 - q) * -np.expm1(-n_b)
    nats = entropy(mixed) - q * click_entropy(exponent)
    if n_b > 0.0:
        nats = nats - (1.0 - q) * click_entropy(n_b)
    return nats * LOG2E


def _random_budgets(count: int = 20, seed: int = 2024):
    rng = np.random.default_rng(seed)
    n_a = 10.0 ** rng.uniform(-6.0, -2.0, size=count)
    r = rng.uniform(0.0, 2.0, size=count)
    return [LinkBudget(float(a), float(a * ratio)) for a, ratio in zip(n_a, r)]


class TestBruteForceOracle:
    """Сверка непрерывного оптимума с перебором по лог-сетке из 1e5 точек"""

    GRID_POINTS = 100_000

    @pytest.mark.parametrize("budget", _random_budgets())
    def test_ppm(self, budget):
        """Порядок в пределах шага сетки, информация в пределах 1e-6"""
        report = maximize_ppm_order(budget)
        lo, hi = ppm_bracket(budget, OptimizerSettings())
        grid = np.geomspace(lo, hi, self.GRID_POINTS)
        values = _ppm_bits_on_grid(budget.n_a, budget.n_b, grid)
        idx = int(np.argmax(values))
        step = math.log(hi / lo) / (self.GRID_POINTS - 1)

        assert abs(math.log(report.best_param / grid[idx])) <= 1.01 * step
        assert report.best_bits_per_bin >= values[idx] * (1.0 - 1e-12)
        assert report.best_bits_per_bin == pytest.approx(values[idx], rel=1e-6)

    @pytest.mark.parametrize("budget", _random_budgets(seed=2025))
    def test_ook(self, budget):
        """Вероятность импульса в пределах шага сетки, информация в пределах 1e-6"""
        report = maximize_ook_prior(budget)
        lo, hi = ook_bracket(budget, OptimizerSettings())
        grid = np.geomspace(lo, hi, self.GRID_POINTS)
        values = _ook_bits_on_grid(budget.n_a, budget.n_b, grid)
        idx = int(np.argmax(values))
        step = math.log(hi / lo) / (self.GRID_POINTS - 1)

        assert abs(math.log(report.best_param / grid[idx])) <= 1.01 * step
        assert report.best_bits_per_bin >= values[idx] * (1.0 - 1e-12)
        assert report.best_bits_per_bin == pytest.approx(values[idx], rel=1e-6)


class TestDeterminism:
    """Одинаковые входы дают побитно одинаковые отчеты"""

    @pytest.mark.parametrize("budget", [LinkBudget(1e-4), LinkBudget(1e-3, 5e-4), LinkBudget(1e-6, 2e-6)])
    def test_reports_identical(self, budget):
        """Повторный вызов оптимизатора"""
        for mode in OrderMode:
            assert maximize_ppm_order(budget, mode) == maximize_ppm_order(budget, mode)
        first = maximize_ook_prior(budget)
        second = maximize_ook_prior(budget)
        assert first == second
        assert first.to_dict() == second.to_dict()
        assert first.best_pie.hex() == second.best_pie.hex()
