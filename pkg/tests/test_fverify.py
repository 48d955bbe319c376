"""
Тесты проверки оценок для множеств Фюрстенберга и поиска малых множеств.
"""
import unittest

import numpy as np

from core.errors import EnumerationCapError, NotHomogeneousError
from core.ff import field_create
from core.fverify import (
    IncidenceIndex, bound_report, dimension_chain, induction_step_check, make_fat_point,
    make_point_scheme, make_rotations_union, random_monomial_scheme, random_point_scheme,
    refined_ratio, search_furstenberg_sets,
)
from core.incidence import check_furstenberg


class TestConstructors(unittest.TestCase):
    """Тесты конструкторов схем"""

    def test_fat_point_degree(self):
        """Тест |(x_1..x_n)^{d+1}| = binom(d+n, n)"""
        self.assertEqual(make_fat_point(2, 1).degree, 3)
        S = make_fat_point(4, 2)
        self.assertEqual(S.degree, 15)
        self.assertEqual(S.name, "fat_4_2")
        self.assertTrue(S.is_homogeneous)

    def test_fat_point_errors(self):
        """Тест некорректной толщины и лимита"""
        with self.assertRaises(ValueError):
            make_fat_point(2, -1)
        with self.assertRaises(EnumerationCapError):
            make_fat_point(3, 10, cap=100)

    def test_rotations_union(self):
        """Тест объединения поворотов: каждое направление N-богато"""
        F = field_create(3)
        self.assertEqual(make_rotations_union(F, 1).degree, 1)
        S = make_rotations_union(F, 2)
        self.assertEqual(S.degree, 3)
        self.assertTrue(check_furstenberg(S, 1, 2))
        with self.assertRaises(ValueError):
            make_rotations_union(F, 0)

    def test_random_schemes(self):
        """Тест случайных схем"""
        F = field_create(3)
        rng = np.random.default_rng(7)
        self.assertEqual(random_point_scheme(F, 2, 4, rng).degree, 4)
        S = random_monomial_scheme(F, 2, 3, rng)
        self.assertTrue(S.is_monomial)
        self.assertLessEqual(S.degree, 20)


class TestBoundReports(unittest.TestCase):
    """Тесты отчёта об оценке"""

    def test_fat_point_ratio(self):
        """Тест m^3 на плоскости: m* = 3, |S| = 6"""
        S = make_fat_point(2, 2)
        report = bound_report(S, 1, C=0.5)
        self.assertEqual((report.m_star, report.N, report.q), (3, 6, 3))
        self.assertAlmostEqual(report.ratio, 6 / 9)
        self.assertAlmostEqual(report.refined_ratio, 6 / 4.5)
        self.assertTrue(report.passed)
        self.assertFalse(bound_report(S, 1, C=1.0).passed)
        self.assertEqual(report.to_dict()["scheme"], "fat_2_2")

    def test_refined_ratio(self):
        """Тест отношения к m^{n/k}/n!"""
        self.assertAlmostEqual(refined_ratio(15, 6, 4, 2), 15 / (36 / 24))


class TestInduction(unittest.TestCase):
    """Тесты шага индукции по размерности"""

    def setUp(self):
        self.S = make_fat_point(3, 2)

    def test_step(self):
        """Тест: прямые 3-богаты, плоскости дают не меньше binom(4,2) = 6"""
        report = induction_step_check(self.S, 1)
        self.assertEqual((report.m, report.b, report.required, report.minimum), (3, 3, 6, 6))
        self.assertTrue(report.hypothesis_holds)
        self.assertTrue(report.holds)
        self.assertIsNone(report.failing)

    def test_explicit_b(self):
        """Тест заданного b"""
        report = induction_step_check(self.S, 1, b=2)
        self.assertEqual(report.required, 3)
        self.assertTrue(report.holds)

    def test_chain(self):
        """Тест цепочки размерностей до |S|"""
        chain = dimension_chain(self.S, 1)
        self.assertEqual([row["minimum"] for row in chain], [3, 6, 10])
        self.assertEqual([row["predicted"] for row in chain], [3, 6, 10])
        self.assertTrue(all(row["holds"] for row in chain))

    def test_errors(self):
        """Тест неоднородной схемы и недопустимого k"""
        F = field_create(3)
        points = make_point_scheme(F, [(1, 1), (2, 0)])
        with self.assertRaises(NotHomogeneousError):
            induction_step_check(points, 1)
        with self.assertRaises(NotHomogeneousError):
            dimension_chain(points, 1)
        with self.assertRaises(ValueError):
            induction_step_check(self.S, 3)


class TestSearch(unittest.TestCase):
    """Тесты поиска множеств Фюрстенберга"""

    def setUp(self):
        self.F = field_create(2)

    def test_incidence_index(self):
        """Тест богатства по индексу плоскостей"""
        index = IncidenceIndex(field_create(3), 2, 1)
        mask = np.zeros(9, dtype=bool)
        mask[[0, 3, 6]] = True
        richness = index.richness(mask)
        self.assertEqual(list(richness), [3, 1, 1, 1])
        self.assertEqual(index.deficit(mask, 2), 3)
        self.assertFalse(index.is_furstenberg(mask, 2))
        self.assertTrue(index.is_furstenberg(mask, 1))

    def test_exhaustive(self):
        """Тест полного перебора: минимум три точки в F_2^2"""
        result = search_furstenberg_sets(self.F, 2, 1, 2, mode="exhaustive")
        self.assertTrue(result.found)
        self.assertEqual(result.size, 3)
        self.assertTrue(result.optimal)
        self.assertTrue(result.certified)
        self.assertEqual(result.bound.m_star, 2)

    def test_heuristics(self):
        """Тест эвристических режимов"""
        for mode in ("greedy", "random", "genetic"):
            result = search_furstenberg_sets(self.F, 2, 1, 2, mode=mode, budget=5, seed=3)
            self.assertTrue(result.found, mode)
            self.assertEqual(result.size, 3, mode)
            self.assertFalse(result.optimal)
            self.assertEqual(len(result.to_dict()["points"]), 3)

    def test_infeasible(self):
        """Тест m > q^k"""
        result = search_furstenberg_sets(self.F, 2, 1, 3)
        self.assertFalse(result.found)
        self.assertTrue(result.message)

    def test_errors(self):
        """Тест неизвестного режима и лимита полного перебора"""
        with self.assertRaises(ValueError):
            search_furstenberg_sets(self.F, 2, 1, 2, mode="annealing")
        with self.assertRaises(EnumerationCapError):
            search_furstenberg_sets(field_create(3), 3, 1, 2, mode="exhaustive")


if __name__ == "__main__":
    unittest.main()
