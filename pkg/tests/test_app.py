"""
Тесты командной строки без сети и GUI: вызов main() с аргументами и
чтение JSON-результата.
"""
import json
import os
import tempfile
import unittest

from main import build_parser, main

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


class TestCommandLine(unittest.TestCase):
    """Тесты команд"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def run_command(self, *argv):
        out = os.path.join(self.tmp.name, "result.json")
        code = main(["--log-level", "WARNING", "--output", out] + list(argv))
        self.assertEqual(code, 0)
        with open(out, "r", encoding="utf-8") as f:
            return json.load(f)

    def ideal(self, name: str) -> str:
        return os.path.join(DATA_DIR, name)

    def test_parser(self):
        """Тест разбора глобальных флагов"""
        args = build_parser().parse_args(["--seed", "4", "radon", "--ideal", "x.ideal", "--k", "1"])
        self.assertEqual(args.seed, 4)
        self.assertEqual(args.command, "radon")

    def test_dilate(self):
        """Тест команды dilate"""
        payload = self.run_command("dilate", self.ideal("three_points.json"))
        self.assertEqual(payload["certificate"]["degree"], 3)
        self.assertTrue(payload["certificate"]["supported_at_origin"])
        self.assertEqual(payload["command"], "dilate")

    def write_config(self, **values) -> str:
        path = os.path.join(self.tmp.name, "settings.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump(values, f)
        return path

    def test_groebner_step_cap_from_config(self):
        """Тест: лимит шагов Бухбергера из настроек доходит до схемы"""
        config = self.write_config(groebner_step_cap=1)
        code = main(["--log-level", "CRITICAL", "--config", config, "dilate", self.ideal("three_points.json")])
        self.assertEqual(code, 1)

    def test_export_html_to_output_dir(self):
        """Тест: export_html пишет HTML в output_dir без --html"""
        html_dir = os.path.join(self.tmp.name, "html")
        config = self.write_config(export_html=True, output_dir=html_dir)
        self.run_command("--config", config, "radon", "--ideal", self.ideal("line_power.ideal"), "--k", "1")
        self.assertTrue(os.path.exists(os.path.join(html_dir, "radon.html")))

    def test_dilate_staircase_html(self):
        """Тест: dilate --html рисует лестницу вырожденной схемы"""
        path = os.path.join(self.tmp.name, "staircase.html")
        self.run_command("dilate", self.ideal("three_points.json"), "--html", path)
        self.assertTrue(os.path.exists(path))

    def test_borel_check(self):
        """Тест команды borel check"""
        payload = self.run_command("borel", "check", self.ideal("section8.ideal"))
        self.assertFalse(payload["borel_fixed"])
        payload = self.run_command("borel", "check", self.ideal("section8_reversed.ideal"))
        self.assertTrue(payload["borel_fixed"])
        self.assertTrue(payload["hyperplane"]["holds"])

    def test_borel_verify(self):
        """Тест команды borel verify"""
        payload = self.run_command("borel", "verify", "--vars", "2", "--max-size", "8")
        self.assertEqual(payload["violations"], [])

    def test_radon_with_csv(self):
        """Тест команды radon с выгрузкой CSV"""
        csv_path = os.path.join(self.tmp.name, "radon.csv")
        payload = self.run_command("radon", "--ideal", self.ideal("line_power.ideal"), "--k", "1", "--csv", csv_path)
        self.assertEqual(sorted(d["richness"] for d in payload["directions"]), [1, 1, 1, 4])
        with open(csv_path, "r", encoding="utf-8") as f:
            self.assertTrue(f.readline().startswith("direction_id,direction,plucker,richness"))

    def test_incidence_direction(self):
        """Тест степени пересечения с заданным направлением"""
        payload = self.run_command("incidence", "--ideal", self.ideal("line_power.ideal"), "--k", "1",
                                   "--direction", "0,1")
        self.assertEqual(payload["degree"], 4)

    def test_restriction(self):
        """Тест команды restriction"""
        payload = self.run_command("restriction", "--ideal", self.ideal("line_power.ideal"), "--k", "1")
        self.assertFalse(payload["holds"])

    def test_xgr(self):
        """Тест команды xgr-test"""
        payload = self.run_command("xgr-test", "--ideal", self.ideal("section8.ideal"), "--k", "2", "--m", "3")
        self.assertTrue(payload["equal"])
        self.assertEqual(payload["bound"]["bound"], 5)

    def test_xmatrix(self):
        """Тест команды xmatrix: общий и минимальный ранг"""
        payload = self.run_command("xmatrix", "--ideal", self.ideal("section8.ideal"), "--k", "2")
        self.assertEqual(len(payload["rows"]), 6)
        self.assertEqual(payload["generic_rank"], 3)
        self.assertEqual(payload["minimum_rank"], 2)

    def test_planes(self):
        """Тест команды planes"""
        payload = self.run_command("planes", "--n", "4", "--k", "2", "--field", "2")
        self.assertEqual(payload["count"], 35)

    def test_search(self):
        """Тест команды search"""
        payload = self.run_command("search", "--q", "2", "--n", "2", "--k", "1", "--m", "2", "--mode", "exhaustive")
        self.assertEqual(payload["size"], 3)
        self.assertTrue(payload["optimal"])

    def test_verify_fatpoint(self):
        """Тест команды verify fatpoint"""
        payload = self.run_command("verify", "fatpoint", "--n", "3", "--d", "2", "--k", "1")
        self.assertEqual(payload["report"]["N"], 10)
        self.assertTrue(payload["induction"]["holds"])

    def test_errors(self):
        """Тест кодов возврата при ошибках"""
        self.assertEqual(main(["--log-level", "CRITICAL", "dilate", "/nonexistent/file.ideal"]), 2)
        self.assertEqual(main(["--log-level", "CRITICAL", "xmatrix", "--ideal", self.ideal("three_points.json"),
                               "--k", "1"]), 1)


if __name__ == "__main__":
    unittest.main()
