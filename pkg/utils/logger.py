"""
Unified logging module for the PPM link analysis package.
Provides centralized logging configuration and emoji-enhanced formatters.

Все сообщения идут в stderr: stdout зарезервирован под CSV/JSON вывод.
"""

import logging
import sys
from typing import Optional


class EmojiFormatter(logging.Formatter):
    """Custom formatter that adds emojis to log messages based on level"""

    EMOJI_MAP = {
        'DEBUG': '🔍',
        'INFO': 'ℹ️',
        'WARNING': '⚠️',
        'ERROR': '❌',
        'CRITICAL': '💥'
    }

    def format(self, record):
        # Добавляем эмодзи в начало сообщения
        emoji = self.EMOJI_MAP.get(record.levelname, '📝')
        original_msg = super().format(record)
        return f"{emoji} {original_msg}"


class StderrHandler(logging.StreamHandler):
    """Хендлер, который всегда пишет в текущий sys.stderr (поток может подменяться)"""

    def __init__(self):
        super().__init__(sys.stderr)

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


class LinkLogger:
    """Централизованный логгер пакета"""

    def __init__(self, name: str = 'ppm_link', level: str = 'INFO', use_emoji: bool = True):
        self.logger = logging.getLogger(name)
        self.use_emoji = use_emoji

        # Предотвращаем дублирование хендлеров
        if not self.logger.handlers:
            self._setup_logger(level)

    def _setup_logger(self, level: str):
        """Настраивает логгер с выводом в stderr"""
        self.logger.setLevel(getattr(logging, level.upper(), logging.INFO))

        console_handler = StderrHandler()
        console_handler.setLevel(logging.DEBUG)

        # Выбираем форматтер
        if self.use_emoji:
            formatter = EmojiFormatter('%(message)s')
        else:
            formatter = logging.Formatter('%(levelname)s - %(name)s - %(message)s')

        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

    def set_level(self, level: str):
        """Меняет уровень логирования"""
        self.logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    def debug(self, message: str):
        """Отладочное сообщение"""
        self.logger.debug(message)

    def info(self, message: str):
        """Информационное сообщение"""
        self.logger.info(message)

    def warning(self, message: str):
        """Предупреждение"""
        self.logger.warning(message)

    def error(self, message: str):
        """Ошибка"""
        self.logger.error(message)


# Создаем глобальный экземпляр логгера
_global_logger: Optional[LinkLogger] = None


def get_logger(name: str = 'ppm_link', level: str = 'INFO', use_emoji: bool = True) -> LinkLogger:
    """
    Получает экземпляр логгера с заданными параметрами

    Args:
        name: Имя логгера
        level: Уровень логирования (DEBUG, INFO, WARNING, ERROR)
        use_emoji: Использовать эмодзи в сообщениях

    Returns:
        Экземпляр LinkLogger
    """
    global _global_logger

    if _global_logger is None:
        _global_logger = LinkLogger(name, level, use_emoji)

    return _global_logger


def setup_logging_from_config(config: dict, verbose: bool = False) -> LinkLogger:
    """
    Настраивает логирование на основе конфигурации

    Args:
        config: Словарь конфигурации
        verbose: Принудительно включить отладочный вывод

    Returns:
        Настроенный логгер
    """
    interface_config = config.get('interface', {})

    use_emoji = interface_config.get('use_emoji', True)
    level = 'DEBUG' if (verbose or interface_config.get('verbose', False)) else 'INFO'

    logger = get_logger('ppm_link', level, use_emoji)
    logger.set_level(level)
    return logger


# Convenience функция для модулей без собственного логгера
def log_warning(message: str):
    """Быстрое логирование предупреждения"""
    get_logger().warning(message)
