#!/usr/bin/env python3
"""
Test runner for the PPM link analysis package

Запускает pytest по каждому тестовому модулю и печатает сводку.
Использование: python tests/run_tests.py [--fast]

--fast пропускает длинные проверки Monte Carlo на 1e7 кадров.
"""

import sys
from pathlib import Path

import pytest

# Добавляем корневую директорию в путь
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


class _Counter:
    """Плагин pytest для подсчета пройденных тестов"""

    def __init__(self):
        self.passed = 0
        self.total = 0

    def pytest_runtest_logreport(self, report):
        if report.when == 'call':
            self.total += 1
            if report.passed:
                self.passed += 1
        elif report.failed:
            self.total += 1


def run_test_module(module_path: Path, fast: bool = False) -> tuple[int, int]:
    """
    Запускает тесты из модуля

    Returns:
        Tuple (passed_tests, total_tests)
    """
    counter = _Counter()
    args = ['-q', '--no-header', '-p', 'no:cacheprovider', str(module_path)]
    if fast:
        args += ['-k', 'not TestOracleEquivalence']
    pytest.main(args, plugins=[counter])
    return counter.passed, counter.total


def main():
    """Основная функция запуска тестов"""
    fast = '--fast' in sys.argv[1:]
    print("🧪 Запуск тестов PPM/OOK")
    print("=" * 50)

    tests_dir = Path(__file__).parent
    test_files = sorted(tests_dir.glob("test_*.py"))

    if not test_files:
        print("❌ Тестовые файлы не найдены")
        return 1

    total_passed = 0
    total_tests = 0

    for test_file in test_files:
        print(f"\n📝 Запуск {test_file.name}:")
        passed, tests = run_test_module(test_file, fast)
        total_passed += passed
        total_tests += tests

        if tests > 0:
            percentage = (passed / tests) * 100
            status = "✅" if passed == tests else "⚠️"
            print(f"  {status} {passed}/{tests} тестов пройдено ({percentage:.1f}%)")
        else:
            print("  ⚠️ Тесты не найдены")

    print("\n" + "=" * 50)
    print(f"📊 Итого: {total_passed}/{total_tests} тестов пройдено")

    if total_tests == 0:
        print("❌ Тесты не найдены или не выполнены")
        return 1
    if total_passed == total_tests:
        print("🎉 Все тесты пройдены успешно!")
        return 0
    print(f"⚠️ Провалено тестов: {total_tests - total_passed}")
    return 1


if __name__ == "__main__":
    try:
        exit_code = main()
        sys.exit(exit_code)
    except KeyboardInterrupt:
        print("\n⏹️ Тестирование прервано пользователем")
        sys.exit(0)
