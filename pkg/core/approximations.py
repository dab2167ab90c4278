"""
Closed-form approximations for optimized PPM and generalized OOK links.

Optimal PPM order and photon information efficiency are expressed through the
principal branch of the Lambert W function. All efficiencies are in bits per photon.
"""

import math
from dataclasses import dataclass
from typing import Union

from core.channels import InfoResult, LinkBudget, PpmOrder, PulseProbability, noisy_ook_terms
from core.special_functions import E, LOG2E, lambert_w0, noise_penalty_g
from utils.enums import Method
from utils.errors import DomainError
from utils.logger import get_logger

TWO_E = 2.0 * E


@dataclass(frozen=True)
class NoiseRatio:
    """Отношение фона к сигналу r = n_b / n_a"""
    r: float

    def __post_init__(self):
        r = float(self.r)
        if not math.isfinite(r) or r < 0.0:
            raise DomainError(f"noise ratio must be finite and >= 0, got {self.r!r}")
        object.__setattr__(self, 'r', r)


@dataclass(frozen=True)
class GammaFactor:
    """Поправочный множитель второго порядка gamma = 1 + 2 n_b / n_a"""
    gamma: float

    def __post_init__(self):
        gamma = float(self.gamma)
        if not math.isfinite(gamma) or gamma < 1.0:
            raise DomainError(f"gamma factor must be finite and >= 1, got {self.gamma!r}")
        object.__setattr__(self, 'gamma', gamma)


def _ratio_value(r: Union[NoiseRatio, float]) -> float:
    return r.r if isinstance(r, NoiseRatio) else NoiseRatio(r).r


def _gamma_value(gamma: Union[GammaFactor, float]) -> float:
    return gamma.gamma if isinstance(gamma, GammaFactor) else GammaFactor(gamma).gamma


def _check_open(value: float, lo: float, hi: float, name: str) -> float:
    value = float(value)
    if not (math.isfinite(value) and lo < value < hi):
        raise DomainError(f"{name} must satisfy {lo:g} < {name} < {hi:g}, got {value!r}")
    return value


def gamma_factor(n_a: float, n_b: float) -> GammaFactor:
    """gamma = 1 + 2 n_b / n_a"""
    if not n_a > 0.0:
        raise DomainError("n_a must be positive")
    return GammaFactor(1.0 + 2.0 * n_b / n_a)


def _optimal_order(nu: float) -> float:
    order = (2.0 / nu) / lambert_w0(TWO_E / nu)
    if order < 2.0:
        get_logger().warning(f"Аналитический порядок M* = {order:.4g} < 2 вне рабочего режима (nu = {nu:.4g})")
    return order


def opt_order_noiseless(n_a: float) -> float:
    """
    Оптимальный порядок PPM без фона: M* = (2 / n_a) / W(2e / n_a).

    Raises:
        DomainError: n_a вне (0, 1)
    """
    n_a = _check_open(n_a, 0.0, 1.0, 'n_a')
    return _optimal_order(n_a)


def opt_order_noisy(n_a: float, gamma: Union[GammaFactor, float]) -> float:
    """
    Оптимальный порядок PPM с фоном: M* = (2 / (gamma n_a)) / W(2e / (gamma n_a)).

    При gamma = 1 совпадает с opt_order_noiseless.
    """
    if not n_a > 0.0:
        raise DomainError("n_a must be positive")
    nu = _check_open(_gamma_value(gamma) * float(n_a), 0.0, 1.0, 'gamma*n_a')
    return _optimal_order(nu)


def opt_prior_ook(n_a: float) -> float:
    """Приближенно оптимальная вероятность импульса OOK q* = 1 / M*(n_a)"""
    return 1.0 / opt_order_noiseless(n_a)


def pie_function_Pi(nu: float) -> float:
    """
    Эффективность оптимизированного PPM без фона, бит/фотон:
    Pi(nu) = {W(2e/nu) - 2 + 1/W(2e/nu)} log2 e.

    Строго убывает при 0 < nu < 2, где W(2e/nu) > 1.
    """
    nu = _check_open(nu, 0.0, TWO_E, 'nu')
    w = lambert_w0(TWO_E / nu)
    return (w - 2.0 + 1.0 / w) * LOG2E


def pie_expansion_Pi(n_a: float) -> float:
    """Асимптотика Pi: log2(1/n_a) - log2 ln(2e/n_a) - log2(e/2), справедлива при n_a << 1"""
    n_a = _check_open(n_a, 0.0, 2.0, 'n_a')
    return math.log2(1.0 / n_a) - math.log2(math.log(TWO_E / n_a)) - math.log2(E / 2.0)


def capacity_pie_bound(n_a: float) -> float:
    """
    Предельная эффективность канала с потерями g(n_a) / n_a, бит/фотон:
    (1 + 1/n_a) log2(1 + n_a) - log2 n_a.
    """
    n_a = float(n_a)
    if not (math.isfinite(n_a) and n_a > 0.0):
        raise DomainError("n_a must be positive")
    return noise_penalty_g(n_a) / n_a


def capacity_pie_expansion(n_a: float) -> float:
    """Двучленное разложение предельной эффективности: log2(1/n_a) + log2 e"""
    n_a = float(n_a)
    if not (math.isfinite(n_a) and n_a > 0.0):
        raise DomainError("n_a must be positive")
    return math.log2(1.0 / n_a) + LOG2E


def pie_ook_noisy(n_a: float, r: Union[NoiseRatio, float]) -> float:
    """PIE обобщенного OOK с фоном: Pi(n_a) - g(r)"""
    ratio = _ratio_value(r)
    return pie_function_Pi(n_a) - noise_penalty_g(ratio)


def pie_ppm_noisy(n_a: float, n_b: float) -> float:
    """PIE PPM с фоном и приемником простого решения: Pi(n_a + 2 n_b) - g(n_b / n_a)"""
    n_a, n_b = float(n_a), float(n_b)
    if not (math.isfinite(n_a) and n_a > 0.0):
        raise DomainError("n_a must be positive")
    if not (math.isfinite(n_b) and n_b >= 0.0):
        raise DomainError(f"n_b must be non-negative, got {n_b!r}")
    return pie_function_Pi(n_a + 2.0 * n_b) - noise_penalty_g(n_b / n_a)


def ppm_ook_gap(n_a: float, n_b: float) -> float:
    """Разрыв между аналитическими PIE OOK и PPM: Pi(n_a) - Pi(n_a + 2 n_b)"""
    return pie_function_Pi(n_a) - pie_function_Pi(n_a + 2.0 * n_b)


def ppm_ook_gap_asymptotic(r: Union[NoiseRatio, float]) -> float:
    """Предел разрыва при n_a -> 0: log2(1 + 2r)"""
    return math.log2(1.0 + 2.0 * _ratio_value(r))


def mean_pulse_photons_asymptotic(n_a: float) -> float:
    """Оптимальная энергия импульса M* n_a ~ 2 / ln(2e / n_a)"""
    n_a = _check_open(n_a, 0.0, 2.0, 'n_a')
    return 2.0 / math.log(TWO_E / n_a)


def quadratic_coefficient(gamma: Union[GammaFactor, float] = 1.0) -> float:
    """
    Знаковый коэффициент квадратичного члена вероятности щелчка: -gamma / 2.

    gamma = 1 дает разложение без фона M n_a - (M n_a)^2 / 2.
    """
    return -0.5 * _gamma_value(gamma)


def click_prob_quadratic(m_na: float, coefficient: float) -> float:
    """Разложение второго порядка вероятности щелчка: m_na + coefficient * m_na^2"""
    m_na = float(m_na)
    if not (math.isfinite(m_na) and m_na >= 0.0):
        raise DomainError(f"mean pulse photon number must be >= 0, got {m_na!r}")
    return m_na + coefficient * m_na * m_na


def mi_ppm_quadratic(budget: LinkBudget, order: PpmOrder) -> InfoResult:
    """
    Главный член информации PPM с квадратичным разложением вероятности щелчка:
    I ~ (p / M) log2 M, p = M n_a - (gamma / 2) (M n_a)^2 (отрицательное p обрезается до нуля).
    """
    if budget.n_a == 0.0:
        return InfoResult(bits_per_bin=0.0, pie=None, param=order.m, method=Method.ANALYTIC)
    coefficient = quadratic_coefficient(gamma_factor(budget.n_a, budget.n_b))
    p = max(0.0, click_prob_quadratic(order.m * budget.n_a, coefficient))
    bits = p * math.log2(order.m) / order.m
    return InfoResult(bits_per_bin=bits, pie=bits / budget.n_a, param=order.m, method=Method.ANALYTIC)


def ook_rearranged_info(budget: LinkBudget, q: PulseProbability) -> InfoResult:
    """Сумма трех явных слагаемых перегруппированной формы OOK (без остатка)"""
    terms = noisy_ook_terms(budget, q)
    bits = terms.pulse + terms.background + terms.correction
    pie = bits / budget.n_a if budget.n_a > 0.0 else None
    return InfoResult(bits_per_bin=bits, pie=pie, param=q.q, method=Method.ANALYTIC, terms=terms.to_dict())


def analytic_ppm(budget: LinkBudget) -> InfoResult:
    """Аналитически оптимизированный PPM: параметр M* с учетом gamma, PIE по формуле с g(r)"""
    gamma = gamma_factor(budget.n_a, budget.n_b)
    order = opt_order_noisy(budget.n_a, gamma)
    pie = pie_ppm_noisy(budget.n_a, budget.n_b)
    return InfoResult(bits_per_bin=budget.n_a * pie, pie=pie, param=order, method=Method.ANALYTIC)


def analytic_ook(budget: LinkBudget) -> InfoResult:
    """Аналитически оптимизированный OOK: q* = 1/M*(n_a), PIE = Pi(n_a) - g(r)"""
    if not budget.n_a > 0.0:
        raise DomainError("n_a must be positive")
    prior = opt_prior_ook(budget.n_a)
    pie = pie_ook_noisy(budget.n_a, budget.n_b / budget.n_a)
    return InfoResult(bits_per_bin=budget.n_a * pie, pie=pie, param=prior, method=Method.ANALYTIC)
