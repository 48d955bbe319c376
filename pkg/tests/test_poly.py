"""
Тесты многочленов, мономиальных порядков и разбора выражений.
"""
import unittest

from core.errors import PolynomialSyntaxError, RingMismatchError
from core.ff import field_create
from core.poly import (
    MonomialOrder, PolyRing, ZERO_DEGREE, monomials_of_degree, monomials_up_to,
    poly_parse, standard_sort_key, substitute, top_degree_form,
)


class TestMonomialOrder(unittest.TestCase):
    """Тесты мономиальных порядков"""

    def test_grevlex(self):
        """Тест grevlex: x1*x3 < x2^2 при равной степени"""
        order = MonomialOrder.grevlex()
        self.assertEqual(order.compare((1, 0, 1), (0, 2, 0)), -1)
        self.assertEqual(order.compare((0, 0, 3), (1, 0, 0)), 1)

    def test_lex(self):
        """Тест lex: x1 > x2^5"""
        order = MonomialOrder.lex()
        self.assertEqual(order.compare((1, 0), (0, 5)), 1)

    def test_ascending(self):
        """Тест порядка с последней переменной в роли старшей"""
        order = MonomialOrder.ascending(3, "lex")
        self.assertEqual(order.priority(3), (2, 1, 0))
        self.assertEqual(order.compare((0, 0, 1), (5, 5, 0)), 1)

    def test_priority_mismatch(self):
        """Тест несовпадения длины приоритета и числа переменных"""
        with self.assertRaises(RingMismatchError):
            MonomialOrder.lex((1, 0)).priority(3)

    def test_unknown_kind(self):
        """Тест неизвестного порядка"""
        with self.assertRaises(ValueError):
            MonomialOrder("deglex")

    def test_monomial_enumeration(self):
        """Тест числа мономов степени d"""
        self.assertEqual(len(list(monomials_of_degree(3, 2))), 6)
        self.assertEqual(len(list(monomials_up_to(4, 2))), 15)

    def test_standard_sort_key(self):
        """Тест порядка вывода стандартных мономов: 1, x1, x2, x3, x4, x4^2"""
        mons = [(0, 0, 0, 2), (0, 0, 1, 0), (1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 1), (0, 1, 0, 0)]
        self.assertEqual(sorted(mons, key=standard_sort_key),
                         [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 0, 2)])


class TestPolynomial(unittest.TestCase):
    """Тесты арифметики многочленов"""

    def setUp(self):
        self.F = field_create(3)
        self.R = PolyRing.standard(self.F, 2)
        self.x, self.y = self.R.gens()

    def test_parse_reduces_coefficients(self):
        """Тест: x1^2 - x1 над GF(3) даёт коэффициенты {x1^2: 1, x1: 2}"""
        R = PolyRing.standard(self.F, 1)
        f = R.parse("x1^2 - x1")
        self.assertEqual(f.terms, {(2,): 1, (1,): 2})

    def test_arithmetic(self):
        """Тест (x + y)^3 = x^3 + y^3 в характеристике 3"""
        x, y = self.x, self.y
        self.assertEqual((x + y) ** 3, x ** 3 + y ** 3)
        self.assertTrue((x - x).is_zero())
        self.assertEqual((x * y).degree(), 2)

    def test_zero_degree(self):
        """Тест степени нулевого многочлена"""
        self.assertEqual(self.R.zero().degree(), ZERO_DEGREE)

    def test_leading_monomial(self):
        """Тест старшего монома по разным порядкам"""
        f = self.x * self.y + self.y ** 3
        self.assertEqual(f.leading_monomial(MonomialOrder.grevlex()), (0, 3))
        self.assertEqual(f.leading_monomial(MonomialOrder.lex()), (1, 1))
        with self.assertRaises(ValueError):
            self.R.zero().leading_monomial()

    def test_monic(self):
        """Тест нормировки старшего коэффициента"""
        f = self.x.scale(2) + 1
        self.assertEqual(f.monic().leading_coefficient(), 1)

    def test_homogeneity(self):
        """Тест однородности и старшей формы"""
        f = self.x ** 2 + self.x * self.y + self.y
        self.assertFalse(f.is_homogeneous())
        self.assertEqual(top_degree_form(f), self.x ** 2 + self.x * self.y)
        with self.assertRaises(ValueError):
            top_degree_form(self.R.zero())

    def test_evaluate_and_translate(self):
        """Тест значения в точке и сдвига"""
        f = self.x ** 2 + self.y
        self.assertEqual(f.evaluate((2, 1)), 2)
        g = f.translate((1, 2))
        self.assertEqual(g.evaluate((0, 0)), f.evaluate((1, 2)))
        self.assertEqual((self.x - 1).translate((1, 0)).order_at_origin(), 1)

    def test_substitute(self):
        """Тест подстановки в кольцо от одной переменной"""
        T = PolyRing(self.F, ("t",))
        t = T.gen(0)
        f = self.x * self.y + self.y ** 2
        self.assertEqual(substitute(f, [t, t + 1]), t * (t + 1) + (t + 1) ** 2)
        with self.assertRaises(RingMismatchError):
            substitute(f, [t])

    def test_ring_mismatch(self):
        """Тест сложения многочленов из разных колец"""
        other = PolyRing.standard(field_create(5), 2)
        with self.assertRaises(RingMismatchError):
            _ = self.x + other.gen(0)

    def test_print_parse(self):
        """Тест печати и повторного разбора"""
        f = self.x ** 2 * self.y.scale(2) + self.y + 1
        self.assertEqual(self.R.parse(str(f)), f)


class TestParser(unittest.TestCase):
    """Тесты разбора многочленов"""

    def setUp(self):
        self.R = PolyRing.standard(field_create(5), 3)

    def test_implicit_multiplication(self):
        """Тест неявного умножения и '**'"""
        self.assertEqual(self.R.parse("2x1 x2"), self.R.parse("2*x1*x2"))
        self.assertEqual(self.R.parse("x3**2"), self.R.parse("x3^2"))

    def test_parentheses(self):
        """Тест скобок и унарного минуса"""
        f = self.R.parse("-(x1 + 1)^2")
        x1 = self.R.gen(0)
        self.assertEqual(f, -(x1 + 1) ** 2)

    def test_unknown_variable(self):
        """Тест неизвестной переменной с позицией"""
        with self.assertRaises(PolynomialSyntaxError) as ctx:
            self.R.parse("x1 + y")
        self.assertEqual(ctx.exception.position, 5)

    def test_bad_exponent(self):
        """Тест нецелой степени"""
        with self.assertRaises(PolynomialSyntaxError):
            self.R.parse("x1^x2")

    def test_unbalanced(self):
        """Тест незакрытой скобки"""
        with self.assertRaises(PolynomialSyntaxError):
            self.R.parse("(x1 + x2")

    def test_empty(self):
        """Тест пустой строки"""
        with self.assertRaises(PolynomialSyntaxError):
            poly_parse("   ", self.R)

    def test_generator_coefficient(self):
        """Тест коэффициента из расширения и отказа в простом поле"""
        E = field_create(5, 2)
        R = PolyRing.standard(E, 1)
        f = R.parse("(g+1)*x1^2")
        self.assertEqual(f.terms, {(2,): E.parse("g+1")})
        self.assertEqual(R.parse(str(f)), f)
        with self.assertRaises(PolynomialSyntaxError):
            self.R.parse("g*x1")


if __name__ == "__main__":
    unittest.main()
