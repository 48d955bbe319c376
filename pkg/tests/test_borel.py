"""
Тесты борелевских множеств и леммы о фронтире.
"""
import unittest

from core.borel import (
    BorelSet, borel_closure, borel_violation, enumerate_borel_sets, enumerate_staircases,
    frontier, lambda_slice, largest_a, largest_b, verify_all, verify_frontier_lemma,
)
from core.errors import EnumerationCapError
from core.poly import monomials_up_to

SECTION8_STANDARD = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 0, 2)]


class TestBorelMoves(unittest.TestCase):
    """Тесты проверки борелевости"""

    def test_simple_sets(self):
        """Тест {1, x1} — борелевское, {1, x2} — нет"""
        self.assertIsNone(borel_violation([(0, 0), (1, 0)]))
        self.assertEqual(borel_violation([(0, 0), (0, 1)]), ("move", (0, 1), (1, 0)))

    def test_divisor_violation(self):
        """Тест нарушения замкнутости относительно делимости"""
        self.assertEqual(borel_violation([(0, 0), (2, 0)]), ("divisor", (2, 0), (1, 0)))

    def test_section8_witness(self):
        """Тест: x4^2 -> x1*x4 отсутствует в стандартном множестве"""
        self.assertEqual(borel_violation(SECTION8_STANDARD), ("move", (0, 0, 0, 2), (1, 0, 0, 1)))

    def test_reversed_section8(self):
        """Тест: после обращения порядка переменных множество борелевское"""
        reversed_set = [tuple(reversed(m)) for m in SECTION8_STANDARD]
        self.assertIsNone(borel_violation(reversed_set))

    def test_validation(self):
        """Тест проверки при построении BorelSet"""
        with self.assertRaises(ValueError):
            BorelSet.of(2, [(0, 0), (0, 1)])
        L = BorelSet.of(2, [(0, 0), (1, 0), (0, 1)])
        self.assertTrue(L.is_borel())
        self.assertEqual(L.max_x1_degree(), 1)

    def test_closure(self):
        """Тест борелевского замыкания"""
        L = borel_closure([(0, 2)])
        self.assertEqual(set(L.monomials), {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)})
        self.assertTrue(L.is_borel())


class TestFrontierLemma(unittest.TestCase):
    """Тесты леммы о фронтире"""

    def test_slice_and_frontier(self):
        """Тест фронтира нулевого среза: {x2, x3, x4^2}"""
        L = BorelSet.of(4, SECTION8_STANDARD, validate=False)
        slice0 = lambda_slice(L, 0)
        self.assertEqual(set(slice0.monomials), {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 2)})
        self.assertEqual(set(frontier(slice0).monomials), {(1, 0, 0), (0, 1, 0), (0, 0, 2)})

    def test_bounds(self):
        """Тест наибольших a и b"""
        self.assertEqual(largest_a(10, 3), 5)
        self.assertEqual(largest_a(9, 3), 4)
        self.assertEqual(largest_b(6, 2), 4)
        self.assertIsNone(largest_b(5, 0))

    def test_full_simplex(self):
        """Тест мономов степени <= 2 от двух переменных"""
        L = BorelSet.of(2, monomials_up_to(2, 2))
        verdict = verify_frontier_lemma(L)
        self.assertEqual((verdict.size, verdict.size_0, verdict.a, verdict.lemma_bound), (6, 3, 4, 3))
        self.assertEqual((verdict.b, verdict.corollary_bound), (3, 3))
        self.assertTrue(verdict.properties_hold)

    def test_one_variable(self):
        """Тест n = 1: следствие неприменимо"""
        verdict = verify_frontier_lemma(BorelSet.of(1, [(0,), (1,), (2,)]))
        self.assertIsNone(verdict.b)
        self.assertTrue(verdict.holds)

    def test_verify_all_small(self):
        """Тест отсутствия контрпримеров при n <= 3"""
        for n, size in ((1, 8), (2, 12), (3, 10)):
            summary = verify_all(n, size)
            self.assertGreater(summary.checked, 0)
            self.assertEqual(summary.violations, [])


class TestEnumeration(unittest.TestCase):
    """Тесты перечисления"""

    def test_two_variables_count(self):
        """Тест: борелевские множества от двух переменных — разбиения на различные части"""
        sets = list(enumerate_borel_sets(2, 5))
        self.assertEqual(len(sets), 9)
        self.assertEqual(len({s.monomials for s in sets}), 9)
        self.assertTrue(all(s.is_borel() for s in sets))

    def test_one_variable_count(self):
        """Тест: от одной переменной по одному множеству каждого размера"""
        self.assertEqual(len(list(enumerate_borel_sets(1, 6))), 6)

    def test_matches_filtered_staircases(self):
        """Тест совпадения с фильтрацией всех лестниц"""
        borel = {s.monomials for s in enumerate_borel_sets(3, 7)}
        staircases = list(enumerate_staircases(3, 7))
        self.assertEqual(len(staircases), len(set(staircases)))
        filtered = {s for s in staircases if borel_violation(s) is None}
        self.assertEqual(borel, filtered)

    def test_staircase_count(self):
        """Тест: лестницы от двух переменных — разбиения"""
        self.assertEqual(len(list(enumerate_staircases(2, 4))), 11)

    def test_caps(self):
        """Тест лимитов перебора"""
        with self.assertRaises(EnumerationCapError):
            list(enumerate_borel_sets(5, 3))
        with self.assertRaises(EnumerationCapError):
            list(enumerate_borel_sets(2, 100))


if __name__ == "__main__":
    unittest.main()
