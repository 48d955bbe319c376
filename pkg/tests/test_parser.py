"""
Тесты для модуля чтения файлов идеалов и записи результатов.
"""
import json
import os
import tempfile
import unittest

from core.errors import FieldError, PolynomialSyntaxError
from core.parser import (
    format_ideal, parse_ideal_json, parse_ideal_text, parse_input_file, save_ideal,
    save_output, scheme_summary, build_scheme,
)

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


class TestIdealText(unittest.TestCase):
    """Тесты текстового формата .ideal"""

    def setUp(self):
        self.text = "\n".join([
            "# пример",
            "field: 5",
            "vars: x,y",
            "name: demo",
            "x^2 - y   # коника",
            "",
            "y^2 - x",
        ])

    def test_valid_text(self):
        """Тест разбора корректного описания"""
        desc = parse_ideal_text(self.text)
        self.assertEqual(desc.field_spec, "5")
        self.assertEqual(desc.variables, ["x", "y"])
        self.assertEqual(desc.name, "demo")
        self.assertEqual(desc.generators, ["x^2 - y", "y^2 - x"])
        self.assertEqual(desc.comments, ["пример"])

    def test_build_scheme(self):
        """Тест построения схемы"""
        S = build_scheme(parse_ideal_text(self.text))
        self.assertEqual(S.degree, 4)
        self.assertEqual(S.name, "demo")

    def test_missing_headers(self):
        """Тест отсутствующих заголовков"""
        with self.assertRaises(ValueError):
            parse_ideal_text("vars: x\nx^2")
        with self.assertRaises(ValueError):
            parse_ideal_text("field: 5\n")
        with self.assertRaises(ValueError):
            parse_ideal_text("x^2\nfield: 5\nvars: x")

    def test_duplicate_variables(self):
        """Тест повторяющихся переменных"""
        with self.assertRaises(ValueError):
            parse_ideal_text("field: 5\nvars: x,x\nx")

    def test_syntax_error(self):
        """Тест синтаксической ошибки в образующей"""
        with self.assertRaises(PolynomialSyntaxError):
            build_scheme(parse_ideal_text("field: 5\nvars: x\nx^^2"))

    def test_bad_field(self):
        """Тест некорректного поля"""
        with self.assertRaises(FieldError):
            build_scheme(parse_ideal_text("field: 6\nvars: x\nx"))


class TestFiles(unittest.TestCase):
    """Тесты файлов и записи"""

    def test_data_files(self):
        """Тест примеров из каталога data"""
        S = parse_input_file(os.path.join(DATA_DIR, "section8.ideal"))
        self.assertEqual(S.degree, 6)
        self.assertEqual(S.name, "section8")
        T = parse_input_file(os.path.join(DATA_DIR, "three_points.json"))
        self.assertEqual(T.degree, 3)
        E = parse_input_file(os.path.join(DATA_DIR, "gf9_curve.ideal"))
        self.assertEqual(E.field.q, 9)
        self.assertEqual(E.degree, 4)

    def test_missing_file(self):
        """Тест отсутствующего файла"""
        with self.assertRaises(FileNotFoundError):
            parse_input_file("/nonexistent/file.ideal")
        with self.assertRaises(FileNotFoundError):
            parse_ideal_json("/nonexistent/file.json")

    def test_bad_json(self):
        """Тест некорректного JSON"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write("{not json")
            with self.assertRaises(ValueError):
                parse_ideal_json(path)
            with open(path, "w", encoding="utf-8") as f:
                json.dump({"vars": ["x"]}, f)
            with self.assertRaises(ValueError):
                parse_ideal_json(path)

    def test_save_and_reload(self):
        """Тест записи идеала и повторного чтения"""
        S = parse_input_file(os.path.join(DATA_DIR, "gf9_curve.ideal"))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "copy.ideal")
            save_ideal(path, S, "копия")
            T = parse_input_file(path)
        self.assertEqual(T.ideal.generators, S.ideal.generators)
        self.assertIn("field: 3^2", format_ideal(S))

    def test_save_output(self):
        """Тест записи JSON-результата"""
        S = parse_input_file(os.path.join(DATA_DIR, "section8.ideal"))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "out", "summary.json")
            save_output(path, scheme_summary(S))
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        self.assertEqual(data["degree"], 6)
        self.assertEqual(data["standard_monomials"], ["1", "x1", "x2", "x3", "x4", "x4^2"])


if __name__ == "__main__":
    unittest.main()
