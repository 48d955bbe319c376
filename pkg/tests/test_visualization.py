"""
Тесты построения графиков Plotly и записи HTML.
"""
import os
import tempfile
import unittest

from core.ff import field_create
from core.fverify import bound_report, make_fat_point
from core.gb import Scheme
from core.incidence import radon_transform, restriction_sides
from core.poly import PolyRing
from viz.visualizer import (
    create_bound_figure, create_radon_figure, create_restriction_figure,
    create_staircase_figure, show_visualization,
)


class TestFigures(unittest.TestCase):
    """Тесты фигур"""

    def setUp(self):
        ring = PolyRing.standard(field_create(3), 2)
        self.S = Scheme.from_strings(ring, ["x1", "x2^4"], "line_4")

    def test_radon_figure(self):
        """Тест графика преобразования Радона"""
        fig = create_radon_figure(radon_transform(self.S, 1), m=2)
        self.assertEqual(len(fig.data), 2)
        self.assertEqual(list(fig.data[0].y), [1, 1, 1, 4])
        self.assertEqual(list(fig.data[1].y), [0, 3, 0, 0, 1])
        self.assertIn("GF(3)", fig.layout.title.text)

    def test_restriction_figure(self):
        """Тест графика сторон неравенства"""
        sides = restriction_sides(self.S, 1)
        fig = create_restriction_figure([sides], ["line_4"])
        self.assertEqual(len(fig.data), 2)
        self.assertAlmostEqual(fig.data[0].y[0], sides.lhs)
        self.assertAlmostEqual(fig.data[1].y[0], sides.rhs)

    def test_staircase_figure(self):
        """Тест лестницы в размерностях 2 и 3"""
        fig2 = create_staircase_figure([(0, 0), (1, 0), (0, 1)], ("x", "y"))
        self.assertEqual(len(fig2.data[0].x), 3)
        fig3 = create_staircase_figure(make_fat_point(3, 1).standard)
        self.assertEqual(len(fig3.data[0].x), 4)
        with self.assertRaises(ValueError):
            create_staircase_figure([(0, 0, 0, 0)])

    def test_bound_figure(self):
        """Тест графика оценки"""
        report = bound_report(make_fat_point(2, 2), 1, C=0.5)
        fig = create_bound_figure([report])
        self.assertEqual(len(fig.data), 2)
        self.assertEqual(list(fig.data[0].y), [6])

    def test_write_html(self):
        """Тест записи HTML"""
        fig = create_radon_figure(radon_transform(self.S, 1))
        with tempfile.TemporaryDirectory() as tmp:
            path = show_visualization(fig, os.path.join(tmp, "nested", "radon.html"))
            self.assertTrue(os.path.exists(path))
            with open(path, "r", encoding="utf-8") as f:
                self.assertIn("plotly", f.read().lower())


if __name__ == "__main__":
    unittest.main()
