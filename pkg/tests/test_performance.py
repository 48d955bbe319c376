"""
Тесты мониторинга ресурсов.
"""
import unittest

from core.config import Settings
from core.performance import PerformanceMonitor, process_memory_mb


class TestPerformanceMonitor(unittest.TestCase):
    """Тесты PerformanceMonitor"""

    def test_stage_records_time(self):
        """Тест замера этапа"""
        monitor = PerformanceMonitor()
        with monitor.stage("sum") as record:
            sum(range(1000))
        self.assertEqual(record["stage"], "sum")
        self.assertGreaterEqual(record["seconds"], 0.0)
        self.assertIn("memory_delta_mb", record)
        self.assertEqual(len(monitor.stages), 1)

    def test_stage_records_on_error(self):
        """Тест: этап записывается и при исключении"""
        monitor = PerformanceMonitor()
        with self.assertRaises(ZeroDivisionError):
            with monitor.stage("fail"):
                1 / 0
        self.assertEqual(monitor.stages[0]["stage"], "fail")

    def test_caps_reduced_on_low_memory(self):
        """Тест: при нехватке памяти лимиты делятся на reduction"""
        settings = Settings(enumeration_cap=100, minor_work_cap=200, groebner_step_cap=3, seed=7)
        reduced = PerformanceMonitor(low_memory_gb=2.0, reduction=4).apply_caps(settings, available_gb=1.0)
        self.assertEqual(reduced.enumeration_cap, 25)
        self.assertEqual(reduced.minor_work_cap, 50)
        self.assertEqual(reduced.groebner_step_cap, 1)
        self.assertEqual(reduced.seed, 7)

    def test_caps_kept_with_enough_memory(self):
        """Тест: при достатке памяти настройки не меняются"""
        settings = Settings(enumeration_cap=100)
        self.assertIs(PerformanceMonitor().apply_caps(settings, available_gb=8.0), settings)

    def test_process_memory(self):
        """Тест замера памяти процесса"""
        self.assertGreater(process_memory_mb(), 0.0)


if __name__ == "__main__":
    unittest.main()
