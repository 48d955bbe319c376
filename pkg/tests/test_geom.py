"""
Тесты конечной геометрии: направления, плоскости, координаты Плюккера, карты.
"""
import unittest

from core.errors import ChartError, EnumerationCapError
from core.ff import field_create
from core.geom import (
    AffinePlane, Chart, Direction, chart_coordinates, default_chart, direction_from_chart,
    enumerate_charts, enumerate_directions, enumerate_parallel, gaussian_binomial,
    plane_linear_forms, plane_parametrization, plane_points,
)
from core.poly import PolyRing


class TestDirections(unittest.TestCase):
    """Тесты перечисления точек грассманиана"""

    def test_gaussian_binomial(self):
        """Тест числа подпространств"""
        self.assertEqual(gaussian_binomial(4, 2, 2), 35)
        self.assertEqual(gaussian_binomial(2, 1, 5), 6)
        self.assertEqual(gaussian_binomial(3, 0, 7), 1)
        self.assertEqual(gaussian_binomial(3, 4, 7), 0)

    def test_enumeration_count(self):
        """Тест: перечисление даёт все точки Gr(k,n) без повторов"""
        F = field_create(2)
        dirs = list(enumerate_directions(4, 2, F))
        self.assertEqual(len(dirs), 35)
        self.assertEqual(len(set(dirs)), 35)
        F3 = field_create(3)
        self.assertEqual(len(list(enumerate_directions(2, 1, F3))), 4)

    def test_plucker_relation(self):
        """Тест трёхчленного соотношения Плюккера на Gr(2,4)(F_3)"""
        F = field_create(3)
        for d in enumerate_directions(4, 2, F):
            self.assertTrue(d.plucker.satisfies_plucker_relation())

    def test_coordinate_plucker(self):
        """Тест координат Плюккера координатной плоскости"""
        F = field_create(5)
        d = Direction.coordinate(F, 4, [0, 1])
        self.assertEqual(d.plucker.coord((0, 1)), 1)
        self.assertEqual(sum(d.plucker.coords), 1)
        self.assertTrue(str(d.plucker).startswith("p12=1,p13=0"))

    def test_dependent_rows(self):
        """Тест линейно зависимых строк"""
        F = field_create(3)
        with self.assertRaises(ValueError):
            Direction.from_rows(F, [[1, 2, 0], [2, 1, 0]])

    def test_canonical_form(self):
        """Тест: разные базисы одного подпространства совпадают"""
        F = field_create(5)
        a = Direction.from_rows(F, [[1, 2, 0], [0, 1, 1]])
        b = Direction.from_rows(F, [[1, 3, 1], [0, 2, 2]])
        self.assertEqual(a, b)
        self.assertTrue(a.contains_vector([1, 3, 1]))
        self.assertFalse(a.contains_vector([0, 0, 1]))

    def test_bad_k_and_cap(self):
        """Тест недопустимого k и лимита перебора"""
        F = field_create(5)
        with self.assertRaises(ValueError):
            list(enumerate_directions(3, 3, F))
        with self.assertRaises(EnumerationCapError):
            list(enumerate_directions(4, 2, F, cap=10))


class TestAffinePlanes(unittest.TestCase):
    """Тесты аффинных плоскостей"""

    def setUp(self):
        self.F = field_create(3)

    def test_parallel_classes_partition(self):
        """Тест: параллельные прямые разбивают плоскость F_3^2"""
        d = Direction.from_rows(self.F, [[1, 2]])
        planes = list(enumerate_parallel(d))
        self.assertEqual(len(planes), 3)
        self.assertTrue(planes[0].is_linear())
        points = [p for V in planes for p in plane_points(V)]
        self.assertEqual(len(points), 9)
        self.assertEqual(len(set(points)), 9)

    def test_through(self):
        """Тест плоскости через заданную точку"""
        d = Direction.from_rows(self.F, [[1, 2, 0]])
        V = AffinePlane.through(d, (1, 1, 1))
        self.assertTrue(V.contains((1, 1, 1)))
        self.assertTrue(V.contains((2, 0, 1)))
        self.assertFalse(V.contains((0, 0, 0)))
        self.assertEqual(len(plane_points(V)), 3)

    def test_linear_forms_vanish(self):
        """Тест: n−k линейных форм обращаются в нуль ровно на плоскости"""
        d = Direction.from_rows(self.F, [[1, 2, 0]])
        V = AffinePlane.through(d, (1, 1, 1))
        forms = plane_linear_forms(V)
        self.assertEqual(len(forms), 2)
        for p in plane_points(V):
            self.assertTrue(all(f.evaluate(p) == 0 for f in forms))
        self.assertTrue(any(f.evaluate((0, 0, 0)) != 0 for f in forms))

    def test_parametrization(self):
        """Тест параметризации плоскости"""
        d = Direction.from_rows(self.F, [[1, 0, 2], [0, 1, 1]])
        V = AffinePlane.through(d, (0, 0, 2))
        images = plane_parametrization(V)
        points = set(plane_points(V))
        for t1 in range(3):
            for t2 in range(3):
                self.assertIn(tuple(f.evaluate((t1, t2)) for f in images), points)


class TestCharts(unittest.TestCase):
    """Тесты карт грассманиана"""

    def test_variable_names(self):
        """Тест имён координат карты {1,2} на Gr(2,4)"""
        chart = Chart(4, 2, (0, 1))
        self.assertEqual(chart.variable_names, ("c23", "c24", "c13", "c14"))
        self.assertEqual(chart.plane_pivots, (2, 3))
        self.assertEqual(chart.label(), "{1,2}")
        ring = chart.ring(field_create(5))
        self.assertIsInstance(ring, PolyRing)
        self.assertEqual(ring.variables, chart.variable_names)

    def test_parse_and_validation(self):
        """Тест разбора карты и ошибок"""
        self.assertEqual(Chart.parse("2, 1", 4, 2).cutting, (0, 1))
        with self.assertRaises(ChartError):
            Chart(4, 2, (0,))
        with self.assertRaises(ChartError):
            Chart(4, 2, (0, 4))
        with self.assertRaises(ChartError):
            Chart.parse("a,b", 4, 2)
        self.assertEqual(len(enumerate_charts(4, 2)), 6)

    def test_chart_round_trip(self):
        """Тест: координаты карты однозначно задают направление"""
        F = field_create(2)
        for d in enumerate_directions(4, 2, F):
            self.assertTrue(default_chart(d).contains(d))
            for chart in enumerate_charts(4, 2):
                if chart.contains(d):
                    values = chart_coordinates(d, chart)
                    self.assertEqual(direction_from_chart(chart, values, F), d)
                else:
                    with self.assertRaises(ChartError):
                        chart_coordinates(d, chart)

    def test_charts_cover(self):
        """Тест: каждое направление лежит хотя бы в одной карте"""
        F = field_create(3)
        charts = enumerate_charts(3, 1)
        for d in enumerate_directions(3, 1, F):
            self.assertTrue(any(c.contains(d) for c in charts))


if __name__ == "__main__":
    unittest.main()
