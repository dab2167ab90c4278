"""
Special functions kernel: principal-branch Lambert W, entropy functions and the
background-noise penalty g(x).

All internal arithmetic is done in natural logarithms; conversion to bits happens
once, by multiplication with LOG2E, at the public boundary.
"""

import math
from dataclasses import dataclass
from typing import Union

from utils.errors import DomainError

LOG2E = 1.0 / math.log(2.0)
E = math.e

# Точка ветвления главной ветви W
BRANCH_POINT = -math.exp(-1.0)
DOMAIN_TOLERANCE = 1e-12

# Параметры итерации Галлея
HALLEY_STEP_TOLERANCE = 1e-14
HALLEY_MAX_ITERATIONS = 50


def _require_finite(x: float, name: str = 'x') -> float:
    value = float(x)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return value


@dataclass(frozen=True)
class WArgument:
    """Аргумент главной ветви функции Ламберта, x >= -1/e"""
    x: float

    def __post_init__(self):
        value = _require_finite(self.x)
        if value < BRANCH_POINT - DOMAIN_TOLERANCE:
            raise DomainError(f"Lambert W0 is undefined for x < -1/e, got {value!r}")
        object.__setattr__(self, 'x', value)


def lambert_w0_asymptotic(x: float) -> float:
    """
    Двучленное асимптотическое разложение W(x) = log x - log log x.

    Используется как начальное приближение для итерации и в асимптотических проверках.

    Raises:
        DomainError: x <= e (log log x не положителен)
    """
    value = _require_finite(x)
    if value <= E:
        raise DomainError(f"asymptotic expansion requires x > e, got {value!r}")
    log_x = math.log(value)
    return log_x - math.log(log_x)


def _initial_guess(x: float) -> float:
    """Начальное приближение для итерации Галлея по диапазону аргумента"""
    if x > E:
        return lambert_w0_asymptotic(x)
    if x < -0.25:
        # Ряд в окрестности точки ветвления
        p = math.sqrt(max(0.0, 2.0 * (E * x + 1.0)))
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    if x <= 0.25:
        return x * (1.0 - x)
    log_term = math.log1p(x)
    return log_term * (1.0 - math.log1p(log_term) / (2.0 + log_term))


def lambert_w0(x: Union[float, WArgument]) -> float:
    """
    Главная ветвь функции Ламберта: решение w * exp(w) = x, w >= -1.

    Итерация Галлея (кубическая сходимость) до относительного шага 1e-14
    или 50 итераций.

    Args:
        x: Аргумент (x >= -1/e) или WArgument

    Returns:
        float: W0(x)

    Raises:
        DomainError: x < -1/e или не конечное число
    """
    value = x.x if isinstance(x, WArgument) else WArgument(x).x

    if value == 0.0:
        return 0.0
    if value <= BRANCH_POINT:
        return -1.0

    w = _initial_guess(value)
    for _ in range(HALLEY_MAX_ITERATIONS):
        exp_w = math.exp(w)
        residual = w * exp_w - value
        if residual == 0.0:
            break
        w_plus_one = w + 1.0
        if w_plus_one == 0.0:
            break
        step = residual / (exp_w * w_plus_one - (w + 2.0) * residual / (2.0 * w_plus_one))
        w -= step
        if abs(step) <= HALLEY_STEP_TOLERANCE * abs(w):
            break

    return max(w, -1.0)


def one_minus_exp(x: float) -> float:
    """Устойчивое вычисление 1 - exp(-x) для x >= 0 (через expm1)"""
    value = float(x)
    if math.isnan(value) or value < 0.0:
        raise DomainError(f"1 - exp(-x) requires x >= 0, got {x!r}")
    return -math.expm1(-value)


def xlogx(x: float) -> float:
    """x * ln(x) с явным соглашением 0 * ln 0 = 0"""
    if x == 0.0:
        return 0.0
    return x * math.log(x)


def xlog2x(x: float) -> float:
    """
    x * log2(x) для x > 0 и ровно 0 при x = 0.

    Raises:
        DomainError: x < 0
    """
    value = _require_finite(x)
    if value < 0.0:
        raise DomainError(f"x log2 x requires x >= 0, got {value!r}")
    return xlogx(value) * LOG2E


def binary_entropy_nats(x: float) -> float:
    """Бинарная энтропия в натах без проверки области (внутреннее ядро)"""
    if x == 0.0 or x == 1.0:
        return 0.0
    return -xlogx(x) - (1.0 - x) * math.log1p(-x)


def binary_entropy(x: float) -> float:
    """
    Бинарная энтропия H(x) = -x log2 x - (1-x) log2(1-x).

    Raises:
        DomainError: x вне [0, 1]
    """
    value = _require_finite(x)
    if value < 0.0 or value > 1.0:
        raise DomainError(f"binary entropy requires 0 <= x <= 1, got {value!r}")
    return min(1.0, max(0.0, binary_entropy_nats(value) * LOG2E))


def noise_penalty_nats(x: float) -> float:
    """g(x) в натах: (x+1) ln(x+1) - x ln x = x ln(1 + 1/x) + ln(1 + x)"""
    if x == 0.0:
        return 0.0
    return x * math.log1p(1.0 / x) + math.log1p(x)


def noise_penalty_g(x: float) -> float:
    """
    Штраф фонового шума g(x) = (x+1) log2(x+1) - x log2 x, g(0) = 0.

    Неотрицательна, возрастает и вогнута при x >= 0.

    Raises:
        DomainError: x < 0
    """
    value = _require_finite(x)
    if value < 0.0:
        raise DomainError(f"noise penalty requires x >= 0, got {value!r}")
    return noise_penalty_nats(value) * LOG2E
