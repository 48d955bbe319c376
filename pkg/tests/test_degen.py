"""
Тесты дилатации, леммы о дилатации, проверки борелевости и gin.
"""
import unittest

from core.errors import GinError, InfiniteQuotientError
from core.ff import field_create
from core.gb import Ideal, Scheme, ideal_of_points
from core.degen import (
    degenerate_family_check, dilate, gin, gin_order, hyperplane_criterion, is_borel_fixed,
    verify_capdilate,
)
from core.poly import MonomialOrder, PolyRing

SECTION8 = ["x1^2", "x1*x2", "x1*x3", "x1*x4", "x2^2", "x2*x3", "x2*x4", "x3^2", "x3*x4", "x4^3"]


def section8(p: int = 5) -> Scheme:
    return Scheme.from_strings(PolyRing.standard(field_create(p), 4), SECTION8, "section8")


class TestDilation(unittest.TestCase):
    """Тесты дилатации"""

    def setUp(self):
        self.F = field_create(3)
        self.R = PolyRing.standard(self.F, 2)
        self.S = Scheme(ideal_of_points(self.R, [(0, 0), (1, 0), (0, 1)]), "three")

    def test_three_points(self):
        """Тест: три точки вырождаются в m^2"""
        result = dilate(self.S)
        S0 = result.degenerate
        self.assertEqual(S0.degree, 3)
        self.assertTrue(S0.is_homogeneous)
        self.assertEqual(set(S0.standard), {(0, 0), (1, 0), (0, 1)})
        self.assertTrue(result.certificate["supported_at_origin"])
        self.assertEqual(result.certificate["hilbert_function"], [1, 2])
        self.assertEqual(result.certificate["pure_powers"], [2, 2])
        self.assertEqual(S0.name, "three_0")

    def test_homogeneous_is_fixed(self):
        """Тест: однородная схема не меняется"""
        S = section8()
        result = dilate(S)
        self.assertEqual(result.degenerate.standard, S.standard)
        self.assertEqual(len(result.to_dict()["degenerate"]), len(S.basis.elements))

    def test_infinite(self):
        """Тест дилатации бесконечномерной схемы"""
        x, y = self.R.gens()
        with self.assertRaises(InfiniteQuotientError):
            dilate(Scheme(Ideal(self.R, (x * y,))))

    def test_flat_family(self):
        """Тест согласования слоёв семейства"""
        report = degenerate_family_check(self.S)
        self.assertTrue(report["flat"])
        self.assertEqual(report["degree_initial"], 3)

    def test_capdilate(self):
        """Тест неравенства |S_0 ∩ V_0| >= |S ∩ V| для всех прямых"""
        report = verify_capdilate(self.S, 1)
        self.assertEqual(report.checked, 12)
        self.assertTrue(report.holds)
        self.assertEqual(report.to_dict()["violations"], [])

    def test_capdilate_bad_k(self):
        """Тест недопустимого k"""
        with self.assertRaises(ValueError):
            verify_capdilate(self.S, 2)


class TestBorelFixed(unittest.TestCase):
    """Тесты проверки борелевости идеалов"""

    def test_section8_not_borel(self):
        """Тест: однородная схема степени 6 не борелевская"""
        S = section8()
        check = is_borel_fixed(S)
        self.assertFalse(check)
        self.assertEqual(check.witness, ("move", (0, 0, 0, 2), (1, 0, 0, 1)))
        self.assertEqual(check.describe(S.ring.variables), "move: x4^2 -> x1*x4 отсутствует")

    def test_reversed_section8_borel(self):
        """Тест: после обращения переменных идеал борелевский"""
        R = PolyRing.standard(field_create(5), 4)
        swap = {"x1": "x4", "x2": "x3", "x3": "x2", "x4": "x1"}
        texts = []
        for t in SECTION8:
            texts.append("*".join(swap[v[:2]] + v[2:] for v in t.split("*")))
        I = Ideal.from_strings(R, texts)
        self.assertTrue(is_borel_fixed(I))
        self.assertEqual(is_borel_fixed(I).describe(R.variables), "борелевское")

    def test_power_of_maximal_ideal(self):
        """Тест: (x1,x2,x3)^2 борелевский как идеал и как схема"""
        R = PolyRing.standard(field_create(3), 3)
        texts = ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]
        self.assertTrue(is_borel_fixed(Ideal.from_strings(R, texts)))
        S = Scheme.from_strings(R, texts, "m2")
        self.assertTrue(is_borel_fixed(S))
        self.assertEqual(S.degree, 4)

    def test_non_monomial(self):
        """Тест отказа для немономиального идеала"""
        R = PolyRing.standard(field_create(3), 2)
        S = Scheme(ideal_of_points(R, [(1, 1)]))
        with self.assertRaises(ValueError):
            is_borel_fixed(S)

    def test_monomial_list(self):
        """Тест набора мономов"""
        self.assertTrue(is_borel_fixed([(0, 0), (1, 0)]))
        self.assertFalse(is_borel_fixed([(0, 0), (0, 1)]))

    def test_hyperplane_criterion(self):
        """Тест: |Λ_0| равно степени пересечения с x1 = 0"""
        R = PolyRing.standard(field_create(5), 4)
        texts = ["x4^2", "x3*x4", "x2*x4", "x1*x4", "x3^2", "x2*x3", "x1*x3", "x2^2", "x1*x2", "x1^3"]
        report = hyperplane_criterion(Scheme.from_strings(R, texts, "reversed"))
        self.assertEqual(report["slice_size"], 4)
        self.assertEqual(report["intersection_degree"], 4)
        self.assertTrue(report["holds"])
        with self.assertRaises(ValueError):
            hyperplane_criterion(section8())


class TestGin(unittest.TestCase):
    """Тесты генерического начального идеала"""

    def test_order(self):
        """Тест порядка x_1 ⪯ … ⪯ x_n"""
        self.assertEqual(gin_order(3).priority(3), (2, 1, 0))

    def test_section8_gin(self):
        """Тест: gin однородной схемы степени 6 — борелевская лестница с x1^2"""
        result = gin(section8(), trials=6, seed=1)
        G = result.gin
        self.assertEqual(G.degree, 6)
        self.assertTrue(is_borel_fixed(G))
        self.assertEqual(set(G.standard), {(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0),
                                           (0, 0, 1, 0), (0, 0, 0, 1), (2, 0, 0, 0)})
        self.assertGreaterEqual(result.trials_used, 2)
        self.assertGreater(result.field_extension_degree, 1)

    def test_two_points(self):
        """Тест gin двух точек на плоскости"""
        R = PolyRing.standard(field_create(3), 2)
        S = Scheme(ideal_of_points(R, [(0, 0), (1, 1)]), "pair")
        result = gin(S, trials=6)
        self.assertEqual(set(result.gin.standard), {(0, 0), (1, 0)})
        self.assertEqual(result.to_dict()["degree"], 2)

    def test_curvilinear_triple_point(self):
        """Тест gin схемы (x2 − x1^2, x1^3) над GF(5)"""
        R = PolyRing.standard(field_create(5), 2)
        S = Scheme.from_strings(R, ["x2 - x1^2", "x1^3"], "curvilinear")
        self.assertEqual(S.degree, 3)
        result = gin(S, trials=8)
        self.assertEqual(result.gin.degree, 3)
        self.assertTrue(is_borel_fixed(result.gin))
        self.assertGreaterEqual(result.trials_used, 2)

    def test_one_variable(self):
        """Тест gin схемы (x^2 − x) от одной переменной"""
        R = PolyRing.standard(field_create(5), 1)
        result = gin(Scheme.from_strings(R, ["x1^2 - x1"], "two_points"), trials=8)
        self.assertEqual(result.gin.degree, 2)
        self.assertEqual(set(result.gin.standard), {(0,), (1,)})

    def test_no_stabilisation(self):
        """Тест: за одну попытку повторения нет, GinError сообщает число попыток"""
        R = PolyRing.standard(field_create(5), 2)
        S = Scheme.from_strings(R, ["x2 - x1^2", "x1^3"], "curvilinear")
        with self.assertRaises(GinError) as ctx:
            gin(S, trials=1)
        self.assertEqual(ctx.exception.trials_used, 1)
        self.assertEqual(len(ctx.exception.seen), 1)

    def test_wrong_order(self):
        """Тест порядка, не согласованного с борелевской подгруппой"""
        with self.assertRaises(ValueError):
            gin(section8(), order=MonomialOrder.lex())


if __name__ == "__main__":
    unittest.main()
