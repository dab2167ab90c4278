"""
Channel models of direct-detection links: click probabilities and exact Shannon
mutual information for PPM and generalized OOK, with and without background counts.

Every mutual information value is expressed in bits per time bin. The photon
information efficiency (PIE) is that value divided by n_a.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from core.special_functions import LOG2E, binary_entropy_nats, one_minus_exp, xlogx
from utils.enums import Method, OrderMode
from utils.errors import DomainError, LinkError

# Допуск на отрицательные значения информации из-за округления
NEGATIVE_CLIP_TOLERANCE = 1e-12


def _finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class LinkBudget:
    """Рабочая точка линии: средние числа сигнальных фотонов и фоновых отсчетов на бин"""
    n_a: float
    n_b: float = 0.0

    def __post_init__(self):
        n_a = _finite(self.n_a, 'n_a')
        n_b = _finite(self.n_b, 'n_b')
        if n_a < 0.0:
            raise DomainError(f"n_a must be non-negative, got {n_a!r}")
        if n_b < 0.0:
            raise DomainError(f"n_b must be non-negative, got {n_b!r}")
        object.__setattr__(self, 'n_a', n_a)
        object.__setattr__(self, 'n_b', n_b)

    @property
    def noise_ratio(self) -> Optional[float]:
        """r = n_b / n_a (None при n_a = 0)"""
        return self.n_b / self.n_a if self.n_a > 0.0 else None


@dataclass(frozen=True)
class PpmOrder:
    """Порядок PPM: длина кадра M в бинах, M >= 2"""
    m: float
    mode: OrderMode = OrderMode.CONTINUOUS

    def __post_init__(self):
        m = _finite(self.m, 'M')
        if m < 2.0:
            raise DomainError(f"PPM order must be >= 2, got {m!r}")
        if self.mode is OrderMode.INTEGER and not m.is_integer():
            raise DomainError(f"integer PPM order must be a whole number, got {m!r}")
        object.__setattr__(self, 'm', m)


@dataclass(frozen=True)
class PulseProbability:
    """Априорная вероятность импульса в бине для обобщенного OOK, 0 < q < 1"""
    q: float

    def __post_init__(self):
        q = _finite(self.q, 'q')
        if not 0.0 < q < 1.0:
            raise DomainError(f"pulse probability must satisfy 0 < q < 1, got {q!r}")
        object.__setattr__(self, 'q', q)


@dataclass(frozen=True)
class ClickProbabilities:
    """Вероятности срабатывания детектора"""
    p_p: float  # только импульс
    p_b: float  # только фон
    p_c: float  # импульс + фон
    p_e: float  # единственный щелчок в правильном бине кадра PPM
    p_d: float  # единственный щелчок в конкретном неправильном бине

    def __post_init__(self):
        for name in ('p_p', 'p_b', 'p_c', 'p_e', 'p_d'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {value!r}")

    def to_dict(self) -> Dict[str, float]:
        """Конвертация в словарь для JSON сериализации"""
        return {
            "p_p": self.p_p,
            "p_b": self.p_b,
            "p_c": self.p_c,
            "p_e": self.p_e,
            "p_d": self.p_d
        }


@dataclass(frozen=True)
class InfoResult:
    """Взаимная информация на бин, PIE и параметр, при котором она получена"""
    bits_per_bin: float
    pie: Optional[float]
    param: Optional[float]
    method: Method
    terms: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """Конвертация в словарь для JSON сериализации"""
        return {
            "bits_per_bin": self.bits_per_bin,
            "pie": self.pie,
            "param": self.param,
            "method": self.method.value,
            "terms": dict(self.terms)
        }


@dataclass(frozen=True)
class OokTerms:
    """Разложение информации OOK на три явных слагаемых и остаток"""
    pulse: float
    background: float
    correction: float
    residual: float

    def total(self) -> float:
        return self.pulse + self.background + self.correction + self.residual

    def to_dict(self) -> Dict[str, float]:
        return {
            "pulse": self.pulse,
            "background": self.background,
            "correction": self.correction,
            "residual": self.residual
        }


def non_negative(bits: float) -> float:
    """Обрезает отрицательный шум округления; большие отрицательные значения - ошибка"""
    if bits < -NEGATIVE_CLIP_TOLERANCE:
        raise LinkError(f"negative mutual information {bits!r} bits/bin")
    return bits if bits > 0.0 else 0.0


def make_info_result(bits: float, n_a: float, param: Optional[float], method: Method,
                     terms: Optional[Dict[str, float]] = None) -> InfoResult:
    """Собирает InfoResult; PIE отсутствует при n_a = 0"""
    bits = non_negative(bits)
    pie = bits / n_a if n_a > 0.0 else None
    return InfoResult(bits_per_bin=bits, pie=pie, param=param, method=method, terms=terms or {})


# --- Непроверяемые скалярные ядра (используются оптимизатором) ---

def _entropy_of_click(exponent: float) -> float:
    """H(1 - exp(-t)) в натах; ln(1 - p) = -t берется точно"""
    p = one_minus_exp(exponent)
    return -xlogx(p) + exponent * math.exp(-exponent)


def ppm_noiseless_nats(n_a: float, m: float) -> float:
    """(p_p / M) ln M"""
    if n_a == 0.0:
        return 0.0
    p_p = one_minus_exp(m * n_a)
    return p_p * math.log(m) / m


def ppm_noisy_nats(n_a: float, n_b: float, m: float) -> float:
    """Трехчленная формула PPM с приемником простого решения, в натах на бин"""
    if n_a == 0.0:
        return 0.0
    p_c = one_minus_exp(m * n_a + n_b)
    p_e = math.exp(-(m - 1.0) * n_b) * p_c
    if p_e == 0.0:
        return 0.0
    p_d = math.exp(-(m * n_a + n_b)) * one_minus_exp(n_b) * math.exp(-(m - 2.0) * n_b)

    wrong = (m - 1.0) * p_d
    first = p_e * math.log(m)
    second = wrong * math.log(m * p_d / p_e) if p_d > 0.0 else 0.0
    third = (p_e + wrong) * math.log1p(wrong / p_e) if p_d > 0.0 else 0.0
    return (first + second - third) / m


def ook_noiseless_nats(n_a: float, q: float) -> float:
    """H(q p_p) - q H(p_p) в натах на бин"""
    if n_a == 0.0:
        return 0.0
    exponent = n_a / q
    p_p = one_minus_exp(exponent)
    return binary_entropy_nats(q * p_p) - q * _entropy_of_click(exponent)


def ook_noisy_nats(n_a: float, n_b: float, q: float) -> float:
    """Информация бинарного асимметричного канала H(a) - q H(p_c) - (1-q) H(p_b), в натах"""
    if n_a == 0.0:
        return 0.0
    exponent = n_a / q + n_b
    p_c = one_minus_exp(exponent)
    p_b = one_minus_exp(n_b)
    mixed = q * p_c + (1.0 - q) * p_b
    return binary_entropy_nats(mixed) - q * _entropy_of_click(exponent) - (1.0 - q) * _entropy_of_click(n_b)


# --- Публичные операции ---

def click_probs_ppm(budget: LinkBudget, order: PpmOrder) -> ClickProbabilities:
    """
    Вероятности срабатывания для кадра PPM.

    p_p = 1 - exp(-M n_a), p_b = 1 - exp(-n_b), p_c = 1 - exp(-M n_a - n_b),
    p_e = exp(-(M-1) n_b) - exp(-M (n_a + n_b)), p_d = (1 - p_c) p_b (1 - p_b)^(M-2).
    """
    m, n_a, n_b = order.m, budget.n_a, budget.n_b
    p_p = one_minus_exp(m * n_a)
    p_b = one_minus_exp(n_b)
    p_c = one_minus_exp(m * n_a + n_b)
    p_e = math.exp(-(m - 1.0) * n_b) * p_c
    p_d = math.exp(-(m * n_a + n_b)) * p_b * math.exp(-(m - 2.0) * n_b)
    return ClickProbabilities(p_p=p_p, p_b=p_b, p_c=p_c, p_e=p_e, p_d=p_d)


def click_probs_ook(budget: LinkBudget, q: PulseProbability) -> ClickProbabilities:
    """Вероятности срабатывания для одного бина OOK; p_e = p_c, p_d = p_b"""
    exponent = budget.n_a / q.q
    p_p = one_minus_exp(exponent)
    p_b = one_minus_exp(budget.n_b)
    p_c = one_minus_exp(exponent + budget.n_b)
    return ClickProbabilities(p_p=p_p, p_b=p_b, p_c=p_c, p_e=p_c, p_d=p_b)


def mi_ppm_noiseless(budget: LinkBudget, order: PpmOrder) -> InfoResult:
    """
    Информация PPM без фона: канал со стиранием, I = (p_p / M) log2 M.

    Поле n_b бюджета игнорируется.
    """
    bits = ppm_noiseless_nats(budget.n_a, order.m) * LOG2E
    return make_info_result(bits, budget.n_a, order.m, Method.EXACT)


def mi_ppm_noisy(budget: LinkBudget, order: PpmOrder) -> InfoResult:
    """
    Информация PPM с фоновыми отсчетами для приемника простого решения:
    кадры с несколькими щелчками считаются стираниями.
    """
    bits = ppm_noisy_nats(budget.n_a, budget.n_b, order.m) * LOG2E
    return make_info_result(bits, budget.n_a, order.m, Method.EXACT)


def ook_decomposition(budget: LinkBudget, q: PulseProbability) -> OokTerms:
    """
    Разложение информации OOK без фона на три слагаемых:
    q p_p log2(1/q) + q (1-p_p) log2(1-p_p) - (1 - q p_p) log2(1 - q p_p).

    Первое слагаемое совпадает с информацией PPM при q = 1/M.
    """
    qv, n_a = q.q, budget.n_a
    exponent = n_a / qv
    p_p = one_minus_exp(exponent)
    pulse = -qv * p_p * math.log(qv)
    background = -n_a * math.exp(-exponent)
    correction = -(1.0 - qv * p_p) * math.log1p(-qv * p_p)
    exact = ook_noiseless_nats(n_a, qv)
    residual = exact - (pulse + background + correction)
    return OokTerms(
        pulse=pulse * LOG2E,
        background=background * LOG2E,
        correction=correction * LOG2E,
        residual=residual * LOG2E
    )


def noisy_ook_terms(budget: LinkBudget, q: PulseProbability) -> OokTerms:
    """
    Явные слагаемые перегруппированной формы информации OOK с фоном:
    q p_c log2(1/q) + (1-q) p_b log2(p_b / (q p_c)) - a log2(1 + (1-q) p_b / (q p_c)),
    a = q p_c + (1-q) p_b. Остаток - отброшенные члены высшего порядка.
    """
    qv, n_a, n_b = q.q, budget.n_a, budget.n_b
    p_c = one_minus_exp(n_a / qv + n_b)
    p_b = one_minus_exp(n_b)
    if p_c == 0.0:
        return OokTerms(pulse=0.0, background=0.0, correction=0.0, residual=0.0)

    pulsed = qv * p_c
    empty = (1.0 - qv) * p_b
    pulse = -pulsed * math.log(qv)
    background = empty * math.log(p_b / pulsed) if p_b > 0.0 else 0.0
    correction = -(pulsed + empty) * math.log1p(empty / pulsed)
    exact = ook_noisy_nats(n_a, n_b, qv)
    residual = exact - (pulse + background + correction)
    return OokTerms(
        pulse=pulse * LOG2E,
        background=background * LOG2E,
        correction=correction * LOG2E,
        residual=residual * LOG2E
    )


def mi_ook_noiseless(budget: LinkBudget, q: PulseProbability) -> InfoResult:
    """
    Информация обобщенного OOK без фона (Z-канал): I = H(q p_p) - q H(p_p),
    p_p = 1 - exp(-n_a / q). В terms - трехчленное разложение.
    """
    bits = ook_noiseless_nats(budget.n_a, q.q) * LOG2E
    terms = ook_decomposition(budget, q).to_dict()
    return make_info_result(bits, budget.n_a, q.q, Method.EXACT, terms)


def mi_ook_noisy(budget: LinkBudget, q: PulseProbability) -> InfoResult:
    """
    Точная информация бинарного асимметричного канала OOK с фоном:
    I = H(q p_c + (1-q) p_b) - q H(p_c) - (1-q) H(p_b).

    Перегруппированная форма с отброшенными членами для расчета не используется.
    """
    bits = ook_noisy_nats(budget.n_a, budget.n_b, q.q) * LOG2E
    return make_info_result(bits, budget.n_a, q.q, Method.EXACT)
