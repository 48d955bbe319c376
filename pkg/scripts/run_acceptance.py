#!/usr/bin/env python3
"""
Приёмочные проверки: эталонная схема степени 6, толстые точки, лемма о
фронтире, дилатация, gin, сравнение миноров/ранга/степени, локальная
структура, неравенство ограничения, объединение поворотов и поиск множеств
Фюрстенберга.

Запуск: python scripts/run_acceptance.py [номер ...] [--json путь]
"""

import argparse
import json
import logging
import math
import os
import sys
import time
from math import comb
from typing import Any, Callable, Dict, List

import numpy as np

# Добавляем путь к модулям
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.borel import verify_all
from core.degen import dilate, gin, is_borel_fixed, verify_capdilate
from core.errors import GinError
from core.ff import field_create
from core.fverify import (
    make_fat_point, make_rotations_union, random_monomial_scheme,
    random_point_scheme, search_furstenberg_sets,
)
from core.gb import Scheme
from core.incidence import check_furstenberg, radon_transform, restriction_sides
from core.poly import PolyRing
from core.xscheme import (
    bound_from_equality, build_chart_matrix, local_structure_check, minor_ideal,
    three_way_check, x_equals_grassmannian,
)

logger = logging.getLogger("FURST.acceptance")

SECTION8 = ["x1^2", "x1*x2", "x1*x3", "x1*x4", "x2^2", "x2*x3", "x2*x4", "x3^2", "x3*x4", "x4^3"]


def section8(p: int = 5, e: int = 1) -> Scheme:
    return Scheme.from_strings(PolyRing.standard(field_create(p, e), 4), SECTION8, "section8")


def golden_section8() -> Dict[str, Any]:
    S = section8()
    M = build_chart_matrix(S, 2)
    R = M.ring
    one, x4 = (0, 0, 0, 0), (0, 0, 0, 1)
    expected = {
        ((1, 0, 0, 0), (0, one)): "1", ((0, 0, 1, 0), (0, one)): "c23", ((0, 0, 0, 1), (0, one)): "c24",
        ((0, 1, 0, 0), (1, one)): "1", ((0, 0, 1, 0), (1, one)): "c13", ((0, 0, 0, 1), (1, one)): "c14",
        ((0, 0, 0, 2), (0, x4)): "c24", ((0, 0, 0, 2), (1, x4)): "c14",
    }
    matrix_ok = M.shape == (6, 12)
    for row in M.rows:
        for col in M.cols:
            text = expected.get((row, col))
            entry = M.entry(row, col)
            matrix_ok &= entry == R.parse(text) if text else entry.is_zero()
    J4 = minor_ideal(M, 4)
    J5 = minor_ideal(M, 5)
    J5_ext = minor_ideal(build_chart_matrix(section8(5, 2), 2), 5)
    checks = {
        "standard": S.standard == [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 0, 2)],
        "degree": S.degree == 6,
        "matrix": matrix_ok,
        "m3_zero": minor_ideal(M, 3).is_identically_zero(),
        "m4_ideal": set(J4.groebner().elements) == {R.parse("c24"), R.parse("c14")},
        "m5_empty_gf5": J5.zero_set_empty() and not J5.zero_set_points(),
        "m5_empty_gf25": J5_ext.zero_set_empty(),
    }
    return {"passed": all(checks.values()), "checks": checks}


def fat_point_sharpness() -> Dict[str, Any]:
    rows = []
    for n, d, k in ((3, 2, 1), (4, 2, 2), (4, 3, 1)):
        S = make_fat_point(n, d, field_create(3))
        m = comb(d + k, k)
        values = set(radon_transform(S, k).values.values())
        row = {
            "n": n, "d": d, "k": k,
            "richness": sorted(values),
            "degree": S.degree,
            "equal_at_m": x_equals_grassmannian(S, m, k),
            "equal_at_m_plus_1": x_equals_grassmannian(S, m + 1, k),
            "bound": bound_from_equality(m, k, n).bound,
        }
        row["passed"] = (values == {m} and row["degree"] == comb(d + n, n) and row["equal_at_m"]
                         and not row["equal_at_m_plus_1"] and row["bound"] == row["degree"])
        rows.append(row)
    return {"passed": all(r["passed"] for r in rows), "rows": rows}


def frontier_exhaustive() -> Dict[str, Any]:
    summaries = [verify_all(n, size, 4, 30).to_dict() for n, size in ((1, 20), (2, 20), (3, 20), (4, 12))]
    return {"passed": all(not s["violations"] for s in summaries),
            "checked": {s["n"]: s["checked"] for s in summaries}}


def degeneration_flatness(samples_plane: int = 200, samples_space: int = 100) -> Dict[str, Any]:
    rng = np.random.default_rng(2024)
    violations = []
    checked = 0
    for F, n, count in ((field_create(5), 2, samples_plane), (field_create(3), 3, samples_space)):
        for _ in range(count):
            S = random_point_scheme(F, n, int(rng.integers(1, 7)), rng)
            if dilate(S).degenerate.degree != S.degree:
                violations.append({"q": F.q, "points": S.rational_points(), "kind": "degree"})
            for k in range(1, n):
                report = verify_capdilate(S, k)
                checked += report.checked
                violations.extend(report.violations)
    return {"passed": not violations, "planes_checked": checked, "violations": violations[:10]}


def gin_certification(samples: int = 100) -> Dict[str, Any]:
    rng = np.random.default_rng(7)
    F = field_create(3)
    accepted, failures, trials_used = 0, [], []
    for i in range(samples):
        n = int(rng.integers(2, 4))
        if i % 2:
            S = random_point_scheme(F, n, int(rng.integers(1, 7)), rng)
        else:
            S = random_monomial_scheme(F, n, 3, rng, max_size=12)
        try:
            result = gin(S, trials=8, seed=i)
        except GinError as e:
            failures.append({"sample": i, "error": str(e), "trials_used": e.trials_used})
            continue
        if not is_borel_fixed(result.gin) or result.gin.degree != S.degree:
            failures.append({"sample": i, "error": "не борелевский или другая степень"})
            continue
        accepted += 1
        trials_used.append(result.trials_used)
    distribution = {int(t): trials_used.count(t) for t in sorted(set(trials_used))}
    passed = all("trials_used" in f for f in failures)
    return {"passed": passed, "accepted": accepted, "rate": accepted / samples,
            "trials_used": distribution, "failures": failures[:10]}


def _point_instances() -> List[Scheme]:
    instances = [section8(2), section8(3)]
    rng = np.random.default_rng(11)
    F = field_create(2)
    while len(instances) < 22:
        n = 3 if len(instances) % 2 else 4
        S = random_monomial_scheme(F, n, 3, rng, max_size=10)
        instances.append(S)
    return instances


def three_way() -> Dict[str, Any]:
    rows = []
    for S in _point_instances():
        k = 2 if S.n == 4 else 1
        report = three_way_check(S, k)
        rows.append({"scheme": S.name, "q": S.field.q, "n": S.n, "N": S.degree, "checked": report.checked,
                     "disagreements": len(report.disagreements), "skipped_m": report.skipped_m})
    return {"passed": all(r["disagreements"] == 0 for r in rows), "rows": rows}


def local_structure() -> Dict[str, Any]:
    rows = []
    for S in _point_instances():
        k = 2 if S.n == 4 else 1
        report = local_structure_check(S, k)
        rows.append({"scheme": S.name, "q": S.field.q, "checked": report.checked,
                     "violations": len(report.disagreements)})
    return {"passed": all(r["violations"] == 0 for r in rows), "rows": rows}


def restriction_counterexample() -> Dict[str, Any]:
    F = field_create(5)
    ring = PolyRing.standard(F, 2)
    rows = []
    for N in (25, 2):
        sides = restriction_sides(Scheme.from_strings(ring, ["x1", f"x2^{N}"], f"line_{N}"), 1)
        lhs_closed = math.sqrt(N ** 2 + F.q)
        rhs_closed = math.sqrt(F.q + 1) * math.sqrt(N)
        rows.append({
            "N": N, "lhs": sides.lhs, "rhs": sides.rhs,
            "closed_forms_match": math.isclose(sides.lhs, lhs_closed, rel_tol=1e-9)
            and math.isclose(sides.rhs, rhs_closed, rel_tol=1e-9),
        })
    passed = (all(r["closed_forms_match"] for r in rows)
              and rows[0]["lhs"] > rows[0]["rhs"] and rows[1]["lhs"] < rows[1]["rhs"])
    return {"passed": passed, "rows": rows}


def rotations_union() -> Dict[str, Any]:
    F = field_create(3)
    N = 9
    S = make_rotations_union(F, N)
    all_rich = check_furstenberg(S, 1, N).holds
    size = S.degree
    passed = all_rich and N <= size <= 2 * N * F.q and size < N ** 2
    return {"passed": passed, "degree": size, "all_rich": all_rich, "N": N, "q": F.q}


def furstenberg_search() -> Dict[str, Any]:
    F = field_create(2)
    exhaustive = search_furstenberg_sets(F, 2, 1, 2, mode="exhaustive")
    rows = [exhaustive.to_dict()]
    for mode in ("greedy", "random", "genetic"):
        rows.append(search_furstenberg_sets(F, 2, 1, 2, mode=mode, budget=10, seed=1).to_dict())
    for row in rows:
        if row["bound"]:
            logger.info(f"Режим {row['mode']}: |S| = {row['size']}, отношение {row['bound']['ratio']:.4f}")
    passed = (exhaustive.optimal and all(r["certified"] for r in rows)
              and all(r["bound"]["ratio"] > 0 for r in rows)
              and all(r["size"] >= exhaustive.size for r in rows))
    return {"passed": passed, "minimum": exhaustive.size,
            "sizes": {r["mode"]: r["size"] for r in rows}}


CRITERIA: Dict[int, Callable[[], Dict[str, Any]]] = {
    1: golden_section8,
    2: fat_point_sharpness,
    3: frontier_exhaustive,
    4: degeneration_flatness,
    5: gin_certification,
    6: three_way,
    7: local_structure,
    8: restriction_counterexample,
    9: rotations_union,
    10: furstenberg_search,
}


def main():
    """Основная функция приёмочных проверок"""
    parser = argparse.ArgumentParser(description="Приёмочные проверки")
    parser.add_argument("criteria", nargs="*", type=int, help="Номера проверок (по умолчанию все)")
    parser.add_argument("--json", help="Записать результаты в JSON-файл")
    args = parser.parse_args()
    logging.basicConfig(level=logging.WARNING, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    print("🧪 Приёмочные проверки")
    print("=" * 60)
    results = {}
    for number in args.criteria or sorted(CRITERIA):
        start = time.time()
        result = CRITERIA[number]()
        result["seconds"] = time.time() - start
        results[number] = result
        mark = "✅" if result["passed"] else "❌"
        print(f"{mark} {number:2d}. {CRITERIA[number].__name__:<28} {result['seconds']:8.2f} с")

    if args.json:
        with open(args.json, "w", encoding="utf-8") as f:
            json.dump(results, f, indent=2, ensure_ascii=False, default=str)
        print(f"\n💾 Результаты сохранены: {args.json}")

    failed = [n for n, r in results.items() if not r["passed"]]
    print("=" * 60)
    print("🎉 ВСЕ ПРОВЕРКИ ПРОЙДЕНЫ" if not failed else f"❌ НЕ ПРОЙДЕНЫ: {failed}")
    return 0 if not failed else 1


if __name__ == "__main__":
    sys.exit(main())
