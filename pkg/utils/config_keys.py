"""
Configuration keys constants for the PPM link analysis package.

This module defines constants for configuration keys to improve code maintainability
and prevent typos in configuration key access.
"""


# Interface / logging configuration keys
class InterfaceKeys:
    """Ключи конфигурации интерфейса и логирования"""
    INTERFACE = 'interface'
    USE_EMOJI = 'use_emoji'
    VERBOSE = 'verbose'


# Numerical optimizer configuration keys
class OptimizerKeys:
    """Ключи конфигурации численного оптимизатора"""
    OPTIMIZER = 'optimizer'
    COARSE_POINTS = 'coarse_points'
    XTOL = 'xtol'
    BRACKET_FACTOR = 'bracket_factor'
    INTEGER_WINDOW = 'integer_window'
    MAXITER = 'maxiter'


# Monte Carlo configuration keys
class MonteCarloKeys:
    """Ключи конфигурации Monte Carlo оракула"""
    MONTECARLO = 'montecarlo'
    BLOCK_FRAMES = 'block_frames'
    BOOTSTRAP_RESAMPLES = 'bootstrap_resamples'
    SIGMA_THRESHOLD = 'sigma_threshold'
    DEFAULT_FRAMES = 'default_frames'
    DEFAULT_SEED = 'default_seed'


# Sweep configuration keys
class SweepKeys:
    """Ключи конфигурации табличного расчета"""
    SWEEP = 'sweep'
    SIGNIFICANT_DIGITS = 'significant_digits'
    THREADS = 'threads'


# Figure configuration keys
class FigureKeys:
    """Ключи конфигурации графиков"""
    FIGURES = 'figures'
    NOISE_RATIOS = 'noise_ratios'
    NA_START = 'na_start'
    NA_STOP = 'na_stop'
    POINTS_PER_DECADE = 'points_per_decade'
    ORDER_CURVE_NA = 'order_curve_na'
    ORDER_CURVE_POINTS = 'order_curve_points'


# Configuration sections (string identifiers)
class ConfigSections:
    """Идентификаторы секций конфигурации"""
    INTERFACE = InterfaceKeys.INTERFACE
    OPTIMIZER = OptimizerKeys.OPTIMIZER
    MONTECARLO = MonteCarloKeys.MONTECARLO
    SWEEP = SweepKeys.SWEEP
    FIGURES = FigureKeys.FIGURES


# Aggregate class for easy access to all keys
class ConfigKeys:
    """Главный класс со всеми ключами конфигурации"""

    # Interface keys
    Interface = InterfaceKeys

    # Optimizer keys
    Optimizer = OptimizerKeys

    # Monte Carlo keys
    MonteCarlo = MonteCarloKeys

    # Sweep keys
    Sweep = SweepKeys

    # Figure keys
    Figures = FigureKeys


# Environment variable capping the worker threads
THREADS_ENV_VAR = 'PPM_LINK_THREADS'
