#!/usr/bin/env python3
"""
PPM / OOK photon information efficiency toolkit

Подкоманды:
1. pie      - информация и PIE в одной точке (точная формула или приближение)
2. sweep    - таблица по сетке n_a x r x схема x метод
3. figure   - данные графиков эффективности и оптимального порядка
4. validate - сверка точной формулы с оракулом Monte Carlo

CSV/JSON выводится в stdout или в файл --out, диагностика - только в stderr.
Коды возврата: 0 - успех, 1 - ошибка области определения, 2 - неверные аргументы.

Использование: python main.py pie --na 1e-4 --nb 0 --scheme ppm
"""

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from core.approximations import analytic_ook, analytic_ppm, mi_ppm_quadratic, ook_rearranged_info
from core.channels import LinkBudget, PpmOrder, PulseProbability, mi_ook_noisy, mi_ppm_noisy
from core.montecarlo import MonteCarloSettings, SimConfig
from core.optimizer import OptimizerSettings, maximize_ook_prior, maximize_ppm_order
from link.figures import FigureSettings, figure_table
from link.sweep import SweepContext, SweepSpec, analytic_sim_config, render_csv, run_sweep, sweep_csv, write_output
from link.validation import validate_point
from utils.config import get_section, load_config
from utils.config_keys import ConfigKeys, ConfigSections
from utils.enums import FigureId, Method, OrderMode, Scheme, SweepMethod
from utils.errors import DomainError, LinkError
from utils.logger import setup_logging_from_config
from utils.numeric import resolve_threads

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1

PIE_METHODS = (Method.EXACT.value, Method.ANALYTIC.value)


def create_parser() -> argparse.ArgumentParser:
    """Создает парсер аргументов командной строки"""
    parser = argparse.ArgumentParser(
        description="Эффективность использования фотонов (PIE) для PPM и обобщенного OOK",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Примеры использования:

  # PIE оптимизированного PPM по замкнутой формуле
  python main.py pie --na 1e-4 --nb 0 --scheme ppm --method analytic

  # Численный оптимум OOK с фоном
  python main.py pie --na 1e-4 --nb 1e-4 --scheme ook

  # Таблица на три декады с двумя уровнями фона
  python main.py sweep --na-start 1e-6 --na-stop 1e-3 --ratios 0 1 --out sweep.csv

  # Данные графика
  python main.py figure fig5

  # Проверка Monte Carlo
  python main.py validate --scheme ppm --na 1e-2 --nb 1e-3 --order 64 --frames 10000000
        """
    )

    parser.add_argument(
        '--config', '-c',
        type=str,
        default='config.json',
        help='Путь к файлу конфигурации (по умолчанию: config.json)'
    )

    parser.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Подробный вывод в stderr'
    )

    parser.add_argument(
        '--threads',
        type=int,
        default=None,
        help='Число рабочих потоков (по умолчанию: из конфигурации или число CPU)'
    )

    subparsers = parser.add_subparsers(dest='command', required=True)

    pie = subparsers.add_parser('pie', help='Информация и PIE в одной точке')
    pie.add_argument('--na', type=float, required=True, help='Среднее число сигнальных фотонов на бин')
    pie.add_argument('--nb', type=float, default=0.0, help='Среднее число фоновых отсчетов на бин')
    pie.add_argument('--scheme', choices=[s.value for s in Scheme], required=True)
    fixed = pie.add_mutually_exclusive_group()
    fixed.add_argument('--order', type=float, default=None, help='Фиксированный порядок PPM M')
    fixed.add_argument('--prior', type=float, default=None, help='Фиксированная вероятность импульса OOK q')
    pie.add_argument('--method', choices=PIE_METHODS, default=Method.EXACT.value)
    pie.add_argument('--integer', action='store_true', help='Оптимизировать только по целым M')
    pie.add_argument('--out', type=str, default=None, help='Файл для JSON (по умолчанию: stdout)')

    sweep = subparsers.add_parser('sweep', help='Таблица по сетке параметров')
    sweep.add_argument('--na-start', type=float, default=None)
    sweep.add_argument('--na-stop', type=float, default=None)
    sweep.add_argument('--ppd', type=int, default=None, help='Точек на декаду')
    sweep.add_argument('--ratios', type=float, nargs='+', default=None, help='Отношения r = n_b / n_a')
    sweep.add_argument('--schemes', choices=[s.value for s in Scheme], nargs='+',
                       default=[s.value for s in Scheme])
    sweep.add_argument('--methods', choices=[m.value for m in SweepMethod], nargs='+',
                       default=[SweepMethod.ANALYTIC.value, SweepMethod.NUMERIC.value])
    sweep.add_argument('--frames', type=int, default=None, help='Кадров на точку Monte Carlo')
    sweep.add_argument('--seed', type=int, default=None)
    sweep.add_argument('--integer', action='store_true', help='Целочисленный порядок PPM')
    sweep.add_argument('--out', type=str, default=None, help='Файл для CSV (по умолчанию: stdout)')

    figure = subparsers.add_parser('figure', help='Данные графика')
    figure.add_argument('id', choices=[f.value for f in FigureId])
    figure.add_argument('--out', type=str, default=None, help='Файл для CSV (по умолчанию: stdout)')

    validate = subparsers.add_parser('validate', help='Сверка с Monte Carlo')
    validate.add_argument('--scheme', choices=[s.value for s in Scheme], required=True)
    validate.add_argument('--na', type=float, required=True)
    validate.add_argument('--nb', type=float, default=0.0)
    param = validate.add_mutually_exclusive_group()
    param.add_argument('--order', type=int, default=None, help='Порядок PPM (по умолчанию: округленный M*)')
    param.add_argument('--prior', type=float, default=None, help='Вероятность импульса (по умолчанию: 1/M*)')
    validate.add_argument('--frames', type=int, default=None)
    validate.add_argument('--seed', type=int, default=None)
    validate.add_argument('--out', type=str, default=None, help='Файл для JSON (по умолчанию: stdout)')

    return parser


def _require_positive_na(na: float):
    if not na > 0.0:
        raise DomainError("n_a must be positive")


def _dump_json(report: Dict[str, Any], out: Optional[str]):
    write_output(json.dumps(report, ensure_ascii=False, indent=2) + '\n', out)


def cmd_pie(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    """Информация и PIE в одной точке"""
    _require_positive_na(args.na)
    budget = LinkBudget(args.na, args.nb)
    scheme = Scheme(args.scheme)
    method = Method(args.method)

    if scheme is Scheme.PPM and args.prior is not None:
        raise DomainError("--prior applies to the ook scheme only")
    if scheme is Scheme.OOK and args.order is not None:
        raise DomainError("--order applies to the ppm scheme only")

    fixed = args.order if scheme is Scheme.PPM else args.prior
    converged = None

    if fixed is not None:
        if scheme is Scheme.PPM:
            order = PpmOrder(fixed)
            result = mi_ppm_noisy(budget, order) if method is Method.EXACT else mi_ppm_quadratic(budget, order)
        else:
            prior = PulseProbability(fixed)
            result = mi_ook_noisy(budget, prior) if method is Method.EXACT else ook_rearranged_info(budget, prior)
        param, bits, pie = result.param, result.bits_per_bin, result.pie
    elif method is Method.ANALYTIC:
        result = analytic_ppm(budget) if scheme is Scheme.PPM else analytic_ook(budget)
        param, bits, pie = result.param, result.bits_per_bin, result.pie
    else:
        settings = OptimizerSettings.from_config(config)
        if scheme is Scheme.PPM:
            mode = OrderMode.INTEGER if args.integer else OrderMode.CONTINUOUS
            report = maximize_ppm_order(budget, mode, settings)
        else:
            report = maximize_ook_prior(budget, settings)
        param, bits, pie, converged = report.best_param, report.best_bits_per_bin, report.best_pie, report.converged

    return {
        "scheme": scheme.value,
        "method": method.value,
        "na": budget.n_a,
        "nb": budget.n_b,
        "param_name": 'M' if scheme is Scheme.PPM else 'q',
        "param": param,
        "optimized": fixed is None,
        "bits_per_bin": bits,
        "pie": pie,
        "converged": converged
    }


def cmd_sweep(args: argparse.Namespace, config: Dict[str, Any], threads: int) -> str:
    """CSV таблица sweep"""
    figures = FigureSettings.from_config(config)
    montecarlo = get_section(config, ConfigSections.MONTECARLO)
    ratios = args.ratios if args.ratios is not None else [0.0, *figures.noise_ratios]

    spec = SweepSpec(
        na_start=args.na_start if args.na_start is not None else figures.na_start,
        na_stop=args.na_stop if args.na_stop is not None else figures.na_stop,
        points_per_decade=args.ppd if args.ppd is not None else figures.points_per_decade,
        noise_ratios=tuple(ratios),
        schemes=tuple(Scheme(s) for s in args.schemes),
        methods=tuple(SweepMethod(m) for m in args.methods),
        frames=args.frames if args.frames is not None else int(montecarlo[ConfigKeys.MonteCarlo.DEFAULT_FRAMES]),
        seed=args.seed if args.seed is not None else int(montecarlo[ConfigKeys.MonteCarlo.DEFAULT_SEED]),
        mode=OrderMode.INTEGER if args.integer else OrderMode.CONTINUOUS
    )
    context = SweepContext(
        optimizer=OptimizerSettings.from_config(config),
        montecarlo=MonteCarloSettings.from_config(config)
    )
    rows = run_sweep(spec, context, threads)
    return sweep_csv(rows, _digits(config))


def cmd_figure(args: argparse.Namespace, config: Dict[str, Any], threads: int) -> str:
    """CSV таблица данных графика"""
    header, rows = figure_table(
        FigureId(args.id),
        FigureSettings.from_config(config),
        OptimizerSettings.from_config(config),
        threads
    )
    return render_csv(header, rows, _digits(config))


def cmd_validate(args: argparse.Namespace, config: Dict[str, Any], threads: int) -> Dict[str, Any]:
    """Сверка точной формулы с Monte Carlo"""
    _require_positive_na(args.na)
    budget = LinkBudget(args.na, args.nb)
    scheme = Scheme(args.scheme)
    montecarlo = get_section(config, ConfigSections.MONTECARLO)
    frames = args.frames if args.frames is not None else int(montecarlo[ConfigKeys.MonteCarlo.DEFAULT_FRAMES])
    seed = args.seed if args.seed is not None else int(montecarlo[ConfigKeys.MonteCarlo.DEFAULT_SEED])

    if scheme is Scheme.PPM and args.prior is not None:
        raise DomainError("--prior applies to the ook scheme only")
    if scheme is Scheme.OOK and args.order is not None:
        raise DomainError("--order applies to the ppm scheme only")

    if args.order is None and args.prior is None:
        sim = analytic_sim_config(budget, scheme, frames, seed)
    else:
        sim = SimConfig(budget=budget, scheme=scheme, frames=frames, seed=seed,
                        order=args.order, prior=args.prior)

    return validate_point(sim, MonteCarloSettings.from_config(config), threads).to_dict()


def _digits(config: Dict[str, Any]) -> int:
    return int(get_section(config, ConfigSections.SWEEP)[ConfigKeys.Sweep.SIGNIFICANT_DIGITS])


def main(argv: Optional[List[str]] = None) -> int:
    """Основная функция"""
    parser = create_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
        setup_logging_from_config(config, verbose=args.verbose)
        threads = resolve_threads(
            args.threads or get_section(config, ConfigSections.SWEEP)[ConfigKeys.Sweep.THREADS]
        )

        if args.command == 'pie':
            _dump_json(cmd_pie(args, config), args.out)
        elif args.command == 'sweep':
            write_output(cmd_sweep(args, config, threads), args.out)
        elif args.command == 'figure':
            write_output(cmd_figure(args, config, threads), args.out)
        else:
            _dump_json(cmd_validate(args, config, threads), args.out)

    except LinkError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR

    return EXIT_OK


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n👋 Прервано пользователем", file=sys.stderr)
        sys.exit(130)
