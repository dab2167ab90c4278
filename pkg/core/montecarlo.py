"""
Monte Carlo oracle module.

Simulates Poissonian direct detection frame by frame, accumulates the empirical
joint distribution of input symbols and receiver outcomes, and estimates the
mutual information with the plug-in estimator.

Frames are simulated in fixed-size blocks; block i always uses the i-th child
stream of the seed, so results do not depend on the number of worker threads.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy import sparse

from core.channels import (
    InfoResult,
    LinkBudget,
    PpmOrder,
    PulseProbability,
    click_probs_ook,
    click_probs_ppm,
    make_info_result,
)
from utils.config import get_section
from utils.config_keys import ConfigKeys, ConfigSections
from utils.enums import Method, OrderMode, Scheme
from utils.errors import DomainError, SimulationError
from utils.logger import get_logger

# Индексы выходов OOK
NO_CLICK, CLICK = 0, 1

# Ключи потоков SeedSequence
_SIMULATION_STREAM = 0
_BOOTSTRAP_STREAM = 1


@dataclass(frozen=True)
class MonteCarloSettings:
    """Параметры симуляции"""
    block_frames: int = 1 << 20
    bootstrap_resamples: int = 50
    sigma_threshold: float = 3.0

    @classmethod
    def from_config(cls, config: Optional[Dict[str, Any]]) -> 'MonteCarloSettings':
        """Создает настройки из секции montecarlo конфигурации"""
        section = get_section(config, ConfigSections.MONTECARLO)
        return cls(
            block_frames=int(section[ConfigKeys.MonteCarlo.BLOCK_FRAMES]),
            bootstrap_resamples=int(section[ConfigKeys.MonteCarlo.BOOTSTRAP_RESAMPLES]),
            sigma_threshold=float(section[ConfigKeys.MonteCarlo.SIGMA_THRESHOLD])
        )


@dataclass(frozen=True)
class SimConfig:
    """Конфигурация одного прогона Monte Carlo"""
    budget: LinkBudget
    scheme: Scheme
    frames: int
    seed: int
    order: Optional[int] = None    # M для PPM
    prior: Optional[float] = None  # q для OOK

    def __post_init__(self):
        if isinstance(self.frames, bool) or int(self.frames) != self.frames or self.frames < 1:
            raise DomainError(f"frames must be a positive integer, got {self.frames!r}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise DomainError(f"seed must be a non-negative integer, got {self.seed!r}")
        if self.scheme is Scheme.PPM:
            if self.order is None:
                raise DomainError("PPM simulation requires an order M")
            PpmOrder(self.order, OrderMode.INTEGER)
        else:
            if self.prior is None:
                raise DomainError("OOK simulation requires a pulse probability q")
            PulseProbability(self.prior)

    @property
    def param(self) -> float:
        return float(self.order) if self.scheme is Scheme.PPM else float(self.prior)


@dataclass(frozen=True)
class EmpiricalChannel:
    """
    Эмпирический канал: разреженная матрица счетчиков вход x выход.

    PPM: строки - символы 0..M-1, столбцы - бины 0..M-1 и стирание (столбец M).
    OOK: строки - пустой бин / импульс, столбцы - нет щелчка / щелчок.
    """
    joint_counts: sparse.csr_matrix
    scheme: Scheme
    bins_per_frame: int
    frames: int

    def __post_init__(self):
        counts = self.joint_counts
        if counts.nnz and counts.data.min() < 0:
            raise SimulationError("negative joint counts")
        if int(counts.sum()) != self.frames:
            raise SimulationError(f"joint counts sum to {int(counts.sum())}, expected {self.frames}")


@dataclass(frozen=True)
class MiEstimate:
    """Оценка информации с бутстреп-ошибкой и смещением plug-in оценки"""
    bits_per_bin: float
    sigma: float
    bias: float
    resamples: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bits_per_bin": self.bits_per_bin,
            "sigma": self.sigma,
            "bias": self.bias,
            "resamples": self.resamples
        }


def _ppm_block(rng: np.random.Generator, frames: int, m: int, p_c: float, p_b: float) -> sparse.csr_matrix:
    """
    Блок кадров PPM: щелчок в бине импульса ~ Bernoulli(p_c), число щелчков в остальных
    M-1 бинах ~ Binomial(M-1, p_b), положение единственного ложного щелчка равновероятно.
    """
    symbols = rng.integers(0, m, size=frames)
    pulse_click = rng.random(frames) < p_c
    other_clicks = rng.binomial(m - 1, p_b, size=frames)
    offsets = rng.integers(1, m, size=frames)

    outcome = np.full(frames, m, dtype=np.int64)
    correct = pulse_click & (other_clicks == 0)
    wrong = ~pulse_click & (other_clicks == 1)
    outcome[correct] = symbols[correct]
    outcome[wrong] = (symbols[wrong] + offsets[wrong]) % m

    ones = np.ones(frames, dtype=np.int64)
    return sparse.coo_matrix((ones, (symbols, outcome)), shape=(m, m + 1)).tocsr()


def _ook_block(rng: np.random.Generator, frames: int, q: float, p_c: float, p_b: float) -> sparse.csr_matrix:
    """Блок бинов OOK: импульс с вероятностью q, щелчок с вероятностью p_c или p_b"""
    pulses = rng.random(frames) < q
    uniform = rng.random(frames)
    clicks = np.where(pulses, uniform < p_c, uniform < p_b)

    ones = np.ones(frames, dtype=np.int64)
    rows = pulses.astype(np.int64)
    cols = clicks.astype(np.int64)
    return sparse.coo_matrix((ones, (rows, cols)), shape=(2, 2)).tocsr()


def simulate(config: SimConfig, settings: Optional[MonteCarloSettings] = None,
             threads: int = 1) -> EmpiricalChannel:
    """
    Симулирует канал и накапливает эмпирическую совместную таблицу.

    Args:
        config: Конфигурация прогона
        settings: Размер блока и прочие параметры
        threads: Число рабочих потоков (на результат не влияет)

    Returns:
        EmpiricalChannel
    """
    settings = settings or MonteCarloSettings()
    block = max(1, int(settings.block_frames))
    frames = int(config.frames)
    sizes = [block] * (frames // block)
    if frames % block:
        sizes.append(frames % block)
    streams = np.random.SeedSequence([int(config.seed), _SIMULATION_STREAM]).spawn(len(sizes))

    if config.scheme is Scheme.PPM:
        m = int(config.order)
        probs = click_probs_ppm(config.budget, PpmOrder(m, OrderMode.INTEGER))

        def run_block(i: int) -> sparse.csr_matrix:
            return _ppm_block(np.random.default_rng(streams[i]), sizes[i], m, probs.p_c, probs.p_b)

        bins_per_frame = m
    else:
        q = float(config.prior)
        probs = click_probs_ook(config.budget, PulseProbability(q))

        def run_block(i: int) -> sparse.csr_matrix:
            return _ook_block(np.random.default_rng(streams[i]), sizes[i], q, probs.p_c, probs.p_b)

        bins_per_frame = 1

    logger = get_logger()
    logger.debug(f"Monte Carlo {config.scheme.value}: {frames} кадров, {len(sizes)} блоков, потоков {threads}")

    if threads > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(run_block, range(len(sizes))))
    else:
        blocks = [run_block(i) for i in range(len(sizes))]

    joint = blocks[0]
    for counts in blocks[1:]:
        joint = joint + counts
    joint = joint.tocsr().astype(np.int64)
    joint.sum_duplicates()

    return EmpiricalChannel(joint_counts=joint, scheme=config.scheme, bins_per_frame=bins_per_frame, frames=frames)


def _triplets(channel: EmpiricalChannel) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    coo = channel.joint_counts.tocoo()
    keep = coo.data > 0
    return coo.row[keep], coo.col[keep], coo.data[keep].astype(np.float64)


def _plugin_mi_nats(rows: np.ndarray, cols: np.ndarray, counts: np.ndarray,
                    shape: Tuple[int, int]) -> float:
    """Plug-in оценка I(X;Y) в натах по счетчикам ненулевых ячеек"""
    total = counts.sum()
    if total <= 0:
        raise DomainError("mutual information estimate requires at least one count")
    keep = counts > 0
    rows, cols, counts = rows[keep], cols[keep], counts[keep]
    row_totals = np.bincount(rows, weights=counts, minlength=shape[0])
    col_totals = np.bincount(cols, weights=counts, minlength=shape[1])
    ratio = counts * total / (row_totals[rows] * col_totals[cols])
    return max(0.0, float(np.sum(counts * np.log(ratio)) / total))


def estimate_mi_per_frame(channel: EmpiricalChannel) -> float:
    """Plug-in взаимная информация в битах на кадр (символ)"""
    rows, cols, counts = _triplets(channel)
    return _plugin_mi_nats(rows, cols, counts, channel.joint_counts.shape) / math.log(2.0)


def estimate_mi(channel: EmpiricalChannel) -> float:
    """
    Plug-in взаимная информация в битах на бин: биты на кадр, деленные на M для PPM.

    Смещение оценки порядка (K_x - 1)(K_y - 1) / (2 N ln 2), см. plugin_bias.
    """
    return estimate_mi_per_frame(channel) / channel.bins_per_frame


def empirical_info(config: SimConfig, channel: EmpiricalChannel) -> InfoResult:
    """Оценка MI в виде InfoResult с меткой monte-carlo"""
    return make_info_result(estimate_mi(channel), config.budget.n_a, config.param, Method.MONTE_CARLO)


def plugin_bias(channel: EmpiricalChannel) -> float:
    """Главный член смещения plug-in оценки, бит на бин (по занятым строкам и столбцам)"""
    rows, cols, _ = _triplets(channel)
    occupied_rows = len(np.unique(rows))
    occupied_cols = len(np.unique(cols))
    bias = (occupied_rows - 1) * (occupied_cols - 1) / (2.0 * channel.frames * math.log(2.0))
    return max(0.0, bias) / channel.bins_per_frame


def bootstrap_mi(channel: EmpiricalChannel, resamples: int = 50, seed: int = 0) -> MiEstimate:
    """
    Бутстреп-ошибка plug-in оценки: мультиномиальные перевыборки совместной таблицы.

    Args:
        channel: Эмпирический канал
        resamples: Число перевыборок (>= 2)
        seed: Зерно генератора перевыборок

    Returns:
        MiEstimate
    """
    if resamples < 2:
        raise DomainError("bootstrap requires at least 2 resamples")
    rows, cols, counts = _triplets(channel)
    shape = channel.joint_counts.shape
    total = int(counts.sum())
    probabilities = counts / counts.sum()
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), _BOOTSTRAP_STREAM]))

    estimates = np.empty(resamples)
    for i in range(resamples):
        resampled = rng.multinomial(total, probabilities).astype(np.float64)
        estimates[i] = _plugin_mi_nats(rows, cols, resampled, shape)

    scale = math.log(2.0) * channel.bins_per_frame
    return MiEstimate(
        bits_per_bin=estimate_mi(channel),
        sigma=float(np.std(estimates, ddof=1)) / scale,
        bias=plugin_bias(channel),
        resamples=resamples
    )


def empirical_rates(channel: EmpiricalChannel) -> Dict[str, float]:
    """
    Эмпирические частоты исходов.

    PPM: correct (оценка p_e), wrong_per_bin (оценка p_d), erasure.
    OOK: pulse_fraction, click_given_pulse (p_c), click_given_empty (p_b).
    """
    dense = channel.joint_counts.toarray().astype(np.float64)
    frames = float(channel.frames)
    if channel.scheme is Scheme.PPM:
        m = channel.bins_per_frame
        correct = float(np.trace(dense[:, :m]))
        erasure = float(dense[:, m].sum())
        wrong = frames - correct - erasure
        return {
            "correct": correct / frames,
            "wrong_per_bin": wrong / (frames * (m - 1)),
            "erasure": erasure / frames
        }

    pulses = dense[1].sum()
    empties = dense[0].sum()
    return {
        "pulse_fraction": pulses / frames,
        "click_given_pulse": dense[1, CLICK] / pulses if pulses else 0.0,
        "click_given_empty": dense[0, CLICK] / empties if empties else 0.0
    }


def wrong_offset_counts(channel: EmpiricalChannel) -> np.ndarray:
    """Счетчики ложных щелчков по смещению (y - x) mod M = 1..M-1 (только PPM)"""
    if channel.scheme is not Scheme.PPM:
        raise DomainError("wrong-bin offsets are defined for PPM only")
    m = channel.bins_per_frame
    coo = channel.joint_counts.tocoo()
    in_frame = (coo.col < m) & (coo.col != coo.row)
    offsets = (coo.col[in_frame] - coo.row[in_frame]) % m
    return np.bincount(offsets, weights=coo.data[in_frame], minlength=m)[1:].astype(np.int64)
