"""
Тесты загрузки настроек.
"""
import json
import os
import tempfile
import unittest

from core.config import DEFAULT_SETTINGS, load_settings


class TestSettings(unittest.TestCase):
    """Тесты load_settings"""

    def test_file_and_overrides(self):
        """Тест чтения файла, неизвестных ключей и переопределений"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "settings.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump({"gin_trials": 3, "seed": 5, "unknown_key": 1}, f)
            settings = load_settings(path, {"seed": 9, "log_level": None})
        self.assertEqual(settings.gin_trials, 3)
        self.assertEqual(settings.seed, 9)
        self.assertEqual(settings.log_level, DEFAULT_SETTINGS.log_level)

    def test_missing_explicit_file(self):
        """Тест явно указанного отсутствующего файла"""
        with self.assertRaises(FileNotFoundError):
            load_settings("/nonexistent/settings.json")

    def test_bad_json(self):
        """Тест некорректного JSON"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "settings.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write("{")
            with self.assertRaises(ValueError):
                load_settings(path)


if __name__ == "__main__":
    unittest.main()
