"""
Tests for sweep tables, figure data and CSV output
"""

import csv
import io
import os

import pytest

from core.approximations import analytic_ppm, opt_order_noiseless, pie_function_Pi
from core.channels import LinkBudget
from core.montecarlo import MonteCarloSettings
from core.optimizer import maximize_ook_prior, maximize_ppm_order
from link.figures import FIGURE_HEADERS, FigureSettings, figure_table
from link.sweep import (
    SWEEP_HEADER,
    SweepContext,
    SweepSpec,
    point_seeds,
    render_csv,
    run_sweep,
    sweep_csv,
    write_output,
)
from utils.enums import FigureId, Scheme, SweepMethod
from utils.errors import DomainError
from utils.numeric import format_float

SMALL_FIGURES = FigureSettings(na_start=1e-6, na_stop=1e-3, points_per_decade=2)


def _parse(text: str):
    return list(csv.DictReader(io.StringIO(text)))


class TestSweepSpec:
    """Тесты описания сетки"""

    def test_row_count(self):
        """3 декады x 10 точек x 2 r x 2 схемы x 2 метода"""
        spec = SweepSpec(na_start=1e-6, na_stop=1e-3, points_per_decade=10, noise_ratios=(0.0, 1.0))
        assert len(spec.grid()) == 31
        assert len(spec.points()) == 31 * 2 * 2 * 2

    def test_canonical_order(self):
        """Отношения сортируются, схемы и методы - в фиксированном порядке"""
        spec = SweepSpec(na_start=1e-4, na_stop=1e-3, points_per_decade=1, noise_ratios=(1.0, 0.0, 1.0),
                         schemes=(Scheme.OOK, Scheme.PPM),
                         methods=(SweepMethod.NUMERIC, SweepMethod.ANALYTIC))
        assert spec.noise_ratios == (0.0, 1.0)
        assert spec.schemes == (Scheme.PPM, Scheme.OOK)
        assert spec.methods == (SweepMethod.ANALYTIC, SweepMethod.NUMERIC)

    def test_invalid_spec(self):
        """Некорректные сетки отклоняются"""
        with pytest.raises(DomainError):
            SweepSpec(na_start=1e-3, na_stop=1e-4, points_per_decade=10)
        with pytest.raises(DomainError):
            SweepSpec(na_start=1e-4, na_stop=1e-3, points_per_decade=0)
        with pytest.raises(DomainError):
            SweepSpec(na_start=1e-4, na_stop=1e-3, points_per_decade=1, noise_ratios=(-1.0,))

    def test_point_seeds(self):
        """Зерна детерминированы и различны"""
        seeds = point_seeds(7, 5)
        assert seeds == point_seeds(7, 5)
        assert len(set(seeds)) == 5


class TestSweep:
    """Тесты вычисления sweep"""

    def test_rows_match_direct_evaluation(self):
        """Строки sweep совпадают с прямым вызовом оптимизатора и формул"""
        spec = SweepSpec(na_start=1e-4, na_stop=1e-3, points_per_decade=1, noise_ratios=(0.5,))
        rows = run_sweep(spec)
        assert [(row.na, row.scheme, row.method) for row in rows] == [
            (1e-4, Scheme.PPM, SweepMethod.ANALYTIC),
            (1e-4, Scheme.PPM, SweepMethod.NUMERIC),
            (1e-4, Scheme.OOK, SweepMethod.ANALYTIC),
            (1e-4, Scheme.OOK, SweepMethod.NUMERIC),
            (1e-3, Scheme.PPM, SweepMethod.ANALYTIC),
            (1e-3, Scheme.PPM, SweepMethod.NUMERIC),
            (1e-3, Scheme.OOK, SweepMethod.ANALYTIC),
            (1e-3, Scheme.OOK, SweepMethod.NUMERIC),
        ]
        budget = LinkBudget(1e-4, 5e-5)
        assert rows[0].pie == analytic_ppm(budget).pie
        assert rows[1].pie == maximize_ppm_order(budget).best_pie
        assert rows[3].param == maximize_ook_prior(budget).best_param

    def test_thread_count_does_not_change_output(self):
        """CSV одинаков при 1 и 4 потоках, включая Monte Carlo"""
        spec = SweepSpec(na_start=1e-3, na_stop=1e-2, points_per_decade=2, noise_ratios=(0.0, 0.5),
                         methods=(SweepMethod.ANALYTIC, SweepMethod.MONTECARLO), frames=20_000, seed=99)
        context = SweepContext(montecarlo=MonteCarloSettings(block_frames=4096))
        single = sweep_csv(run_sweep(spec, context, threads=1))
        parallel = sweep_csv(run_sweep(spec, context, threads=4))
        assert single == parallel

    def test_csv_round_trip(self):
        """Повторное вычисление по CSV воспроизводит pie в пределах точности печати"""
        spec = SweepSpec(na_start=1e-5, na_stop=1e-3, points_per_decade=1, noise_ratios=(0.0, 1.0),
                         methods=(SweepMethod.ANALYTIC,))
        text = sweep_csv(run_sweep(spec))
        assert text.splitlines()[0] == ','.join(SWEEP_HEADER)
        for row in _parse(text):
            budget = LinkBudget(float(row['na']), float(row['nb']))
            if row['scheme'] == 'ppm':
                assert analytic_ppm(budget).pie == pytest.approx(float(row['pie']), rel=1e-11)

    def test_figure5_sweep_agreement(self):
        """Численные и аналитические pie PPM без фона близки при n_a <= 1e-3"""
        spec = SweepSpec(na_start=1e-6, na_stop=1e-3, points_per_decade=1, schemes=(Scheme.PPM,))
        rows = run_sweep(spec)
        for analytic, numeric in zip(rows[::2], rows[1::2]):
            assert analytic.pie == pytest.approx(numeric.pie, rel=0.05)


class TestCsvOutput:
    """Тесты форматирования и записи CSV"""

    def test_significant_digits(self):
        """12 значащих цифр, пустая ячейка для None"""
        assert format_float(1.0 / 3.0) == '0.333333333333'
        assert format_float(None) == ''
        assert format_float(-0.0) == '0'
        assert render_csv(('a', 'b'), [(0.5, None)]) == 'a,b\n0.5,\n'

    def test_atomic_write(self, tmp_path):
        """Файл записывается целиком, временных файлов не остается"""
        target = tmp_path / 'out' / 'table.csv'
        write_output('na,pie\n1,2\n', target)
        assert target.read_text(encoding='utf-8') == 'na,pie\n1,2\n'
        assert os.listdir(target.parent) == ['table.csv']

    def test_failed_write_leaves_nothing(self, tmp_path, monkeypatch):
        """При ошибке частичный файл не создается"""
        def broken_replace(src, dst):
            raise OSError("disk full")

        monkeypatch.setattr(os, 'replace', broken_replace)
        target = tmp_path / 'table.csv'
        with pytest.raises(OSError):
            write_output('na,pie\n', target)
        assert os.listdir(tmp_path) == []

    def test_stdout(self, capsys):
        """Без --out текст идет в stdout"""
        write_output('x\n')
        assert capsys.readouterr().out == 'x\n'


class TestFigures:
    """Тесты таблиц графиков"""

    def test_headers(self):
        """Фиксированные заголовки"""
        for figure in FigureId:
            header, _ = figure_table(figure, FigureSettings(
                na_start=1e-4, na_stop=1e-3, points_per_decade=1, order_curve_na=(1e-3,), order_curve_points=4))
            assert header == FIGURE_HEADERS[figure]

    def test_order_curve(self):
        """fig2a: точная PIE максимальна около M*, квадратичная кривая ниже при больших M"""
        settings = FigureSettings(order_curve_na=(1e-3,), order_curve_points=200)
        _, rows = figure_table(FigureId.FIG2A, settings)
        assert len(rows) == 200
        best = max(rows, key=lambda row: row[2])
        assert best[1] == pytest.approx(opt_order_noiseless(1e-3), rel=0.3)
        assert all(row[3] <= row[2] + 1e-12 for row in rows)

    def test_pulse_energy_ratio(self):
        """fig3: M* n_a меняется не более чем в ~4 раза"""
        _, rows = figure_table(FigureId.FIG3, FigureSettings(points_per_decade=2))
        for column in (2, 3):
            values = [row[column] for row in rows if row[1] == 0.0]
            assert max(values) / min(values) <= 4.5

    def test_figure5(self):
        """fig5: r = 0 аналитика равна Pi, все PIE ниже предела"""
        _, rows = figure_table(FigureId.FIG5, SMALL_FIGURES)
        assert len(rows) == 7 * 4
        for na, r, numeric, analytic, capacity in rows:
            if r == 0.0:
                assert analytic == pie_function_Pi(na)
            assert numeric < capacity
            assert analytic < capacity

    def test_figure6(self):
        """fig6: OOK не хуже PPM при тех же точках"""
        _, ook_rows = figure_table(FigureId.FIG6, SMALL_FIGURES)
        _, ppm_rows = figure_table(FigureId.FIG5, SMALL_FIGURES)
        for ook, ppm in zip(ook_rows, ppm_rows):
            assert ook[:2] == ppm[:2]
            assert ook[2] >= ppm[2]
            assert ook[2] < ook[4]

    def test_figure2b_thread_independent(self):
        """fig2b: порядок строк и значения не зависят от числа потоков"""
        assert figure_table(FigureId.FIG2B, SMALL_FIGURES, threads=1) == \
            figure_table(FigureId.FIG2B, SMALL_FIGURES, threads=4)
