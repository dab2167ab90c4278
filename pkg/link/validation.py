"""
Monte Carlo cross-check of the closed-form mutual information.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional

from core.channels import PpmOrder, PulseProbability, mi_ook_noisy, mi_ppm_noisy
from core.montecarlo import MonteCarloSettings, SimConfig, bootstrap_mi, simulate
from utils.enums import OrderMode, Scheme, Verdict
from utils.logger import get_logger


@dataclass(frozen=True)
class ValidationReport:
    """Результат сравнения точной формулы с оракулом Monte Carlo"""
    scheme: Scheme
    na: float
    nb: float
    param_name: str
    param: float
    frames: int
    seed: int
    analytic_bits_per_bin: float
    empirical_bits_per_bin: float
    bootstrap_sigma: float
    plugin_bias: float
    deviation_sigmas: Optional[float]
    verdict: Verdict

    def to_dict(self) -> Dict[str, Any]:
        """Конвертация в словарь для JSON сериализации"""
        return {
            "scheme": self.scheme.value,
            "na": self.na,
            "nb": self.nb,
            "param_name": self.param_name,
            "param": self.param,
            "frames": self.frames,
            "seed": self.seed,
            "analytic_bits_per_bin": self.analytic_bits_per_bin,
            "empirical_bits_per_bin": self.empirical_bits_per_bin,
            "bootstrap_sigma": self.bootstrap_sigma,
            "plugin_bias": self.plugin_bias,
            "deviation_sigmas": self.deviation_sigmas,
            "verdict": self.verdict.value
        }


def exact_bits(config: SimConfig) -> float:
    """Точная информация на бин в точке симуляции"""
    if config.scheme is Scheme.PPM:
        return mi_ppm_noisy(config.budget, PpmOrder(config.order, OrderMode.INTEGER)).bits_per_bin
    return mi_ook_noisy(config.budget, PulseProbability(config.prior)).bits_per_bin


def validate_point(config: SimConfig, settings: Optional[MonteCarloSettings] = None,
                   threads: int = 1) -> ValidationReport:
    """
    Симулирует канал и сравнивает plug-in оценку (за вычетом смещения) с точной формулой.

    Вердикт PASS, если отклонение не превышает sigma_threshold бутстреп-ошибок.
    """
    settings = settings or MonteCarloSettings()
    analytic = exact_bits(config)
    channel = simulate(config, settings, threads)
    estimate = bootstrap_mi(channel, settings.bootstrap_resamples, config.seed)

    deviation = abs(estimate.bits_per_bin - estimate.bias - analytic)
    if estimate.sigma > 0.0:
        deviation_sigmas = deviation / estimate.sigma
        passed = deviation_sigmas <= settings.sigma_threshold
    else:
        # Вырожденный канал: все исходы одинаковы
        deviation_sigmas = 0.0 if deviation == 0.0 else None
        passed = deviation == 0.0

    verdict = Verdict.PASS if passed else Verdict.FAIL
    report = ValidationReport(
        scheme=config.scheme,
        na=config.budget.n_a,
        nb=config.budget.n_b,
        param_name='M' if config.scheme is Scheme.PPM else 'q',
        param=config.param,
        frames=config.frames,
        seed=int(config.seed),
        analytic_bits_per_bin=analytic,
        empirical_bits_per_bin=estimate.bits_per_bin,
        bootstrap_sigma=estimate.sigma,
        plugin_bias=estimate.bias,
        deviation_sigmas=deviation_sigmas,
        verdict=verdict
    )

    logger = get_logger()
    if verdict is Verdict.FAIL:
        logger.warning(f"Monte Carlo расходится с формулой: {report.to_dict()}")
    else:
        logger.debug(f"Monte Carlo согласуется с формулой ({deviation_sigmas} sigma)")
    return report
