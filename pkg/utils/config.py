"""
Configuration utilities for the PPM link analysis package.
"""

import copy
import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from utils.config_keys import ConfigKeys, ConfigSections
from utils.errors import ConfigurationError
from utils.logger import log_warning

DEFAULT_CONFIG_FILE = 'config.json'

# Значения по умолчанию, поверх которых накладывается config.json
DEFAULT_CONFIG: Dict[str, Any] = {
    ConfigSections.INTERFACE: {
        ConfigKeys.Interface.USE_EMOJI: True,
        ConfigKeys.Interface.VERBOSE: False,
    },
    ConfigSections.OPTIMIZER: {
        ConfigKeys.Optimizer.COARSE_POINTS: 64,
        ConfigKeys.Optimizer.XTOL: 1e-8,
        ConfigKeys.Optimizer.BRACKET_FACTOR: 20.0,
        ConfigKeys.Optimizer.INTEGER_WINDOW: 2,
        ConfigKeys.Optimizer.MAXITER: 500,
    },
    ConfigSections.MONTECARLO: {
        ConfigKeys.MonteCarlo.BLOCK_FRAMES: 1 << 20,
        ConfigKeys.MonteCarlo.BOOTSTRAP_RESAMPLES: 50,
        ConfigKeys.MonteCarlo.SIGMA_THRESHOLD: 3.0,
        ConfigKeys.MonteCarlo.DEFAULT_FRAMES: 1_000_000,
        ConfigKeys.MonteCarlo.DEFAULT_SEED: 12345,
    },
    ConfigSections.SWEEP: {
        ConfigKeys.Sweep.SIGNIFICANT_DIGITS: 12,
        ConfigKeys.Sweep.THREADS: None,
    },
    ConfigSections.FIGURES: {
        ConfigKeys.Figures.NOISE_RATIOS: [0.2, 0.5, 1.0],
        ConfigKeys.Figures.NA_START: 1e-7,
        ConfigKeys.Figures.NA_STOP: 1e-2,
        ConfigKeys.Figures.POINTS_PER_DECADE: 10,
        ConfigKeys.Figures.ORDER_CURVE_NA: [1e-3, 1e-4, 1e-5],
        ConfigKeys.Figures.ORDER_CURVE_POINTS: 64,
    },
}


def default_config() -> Dict[str, Any]:
    """Возвращает копию конфигурации по умолчанию"""
    return copy.deepcopy(DEFAULT_CONFIG)


def load_config(config_file: Optional[Union[str, Path]] = DEFAULT_CONFIG_FILE) -> Dict[str, Any]:
    """
    Загружает конфигурацию из JSON файла и накладывает ее на значения по умолчанию

    Args:
        config_file: Путь к файлу конфигурации (None - только значения по умолчанию)

    Returns:
        Словарь конфигурации

    Raises:
        ConfigurationError: файл поврежден или содержит неизвестную структуру
    """
    base = OmegaConf.create(DEFAULT_CONFIG)
    if config_file is None:
        return default_config()

    path = Path(config_file)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            loaded = json.load(f)
    except FileNotFoundError:
        log_warning(f"Файл конфигурации {path} не найден, используются значения по умолчанию")
        return default_config()
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Ошибка в файле конфигурации {path}: {e}") from e

    if not isinstance(loaded, dict):
        raise ConfigurationError(f"Файл конфигурации {path} должен содержать JSON объект")

    try:
        merged = OmegaConf.merge(base, OmegaConf.create(loaded))
    except OmegaConfBaseException as e:
        raise ConfigurationError(f"Некорректная конфигурация {path}: {e}") from e

    return OmegaConf.to_container(merged, resolve=True)


def get_section(config: Optional[Dict[str, Any]], section: str) -> Dict[str, Any]:
    """Возвращает секцию конфигурации, дополняя отсутствующие ключи значениями по умолчанию"""
    values = dict(DEFAULT_CONFIG.get(section, {}))
    if config:
        values.update(config.get(section) or {})
    return values
