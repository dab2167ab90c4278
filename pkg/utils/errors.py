"""
Exception hierarchy for the PPM link analysis package.
"""


class LinkError(Exception):
    """Базовая ошибка пакета"""


class DomainError(LinkError, ValueError):
    """Аргумент вне области определения формулы"""


class ConfigurationError(LinkError):
    """Некорректный или нечитаемый файл конфигурации"""


class SimulationError(LinkError, RuntimeError):
    """Сбой Monte Carlo симуляции"""
