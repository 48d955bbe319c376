import argparse
import json
import logging
import os
import sys
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional

import pandas as pd

from core.borel import verify_all
from core.config import Settings, load_settings
from core.degen import dilate, gin, gin_order, hyperplane_criterion, is_borel_fixed
from core.errors import FurstError
from core.ff import field_from_spec
from core.fverify import (
    bound_report, dimension_chain, induction_step_check, make_fat_point,
    make_rotations_union, search_furstenberg_sets,
)
from core.gb import Scheme
from core.geom import AffinePlane, Chart, Direction, enumerate_directions
from core.incidence import (
    check_furstenberg, incidence_table, intersection_degree, radon_transform,
    restriction_sides, rich_directions,
)
from core.parser import parse_input_file, save_output, scheme_summary
from core.performance import performance_monitor
from core.xscheme import (
    bound_from_equality, build_chart_matrix, ci_probe, grassmannian_report,
    minimum_rank, minor_degree_stats, minor_ideal, three_way_check,
)
from viz.visualizer import (
    create_bound_figure, create_radon_figure, create_restriction_figure, create_staircase_figure,
    show_visualization,
)


# Настройка системы логирования
def setup_logging(level: str = "INFO", log_dir: str = "logs") -> str:
    """Файл logs/furst_<timestamp>.log (DEBUG) и консоль (заданный уровень)"""
    if not os.path.exists(log_dir):
        os.makedirs(log_dir)

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    log_file = os.path.join(log_dir, f"furst_{timestamp}.log")

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    root_logger = logging.getLogger("FURST")
    root_logger.setLevel(logging.DEBUG)
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        handler.close()

    file_handler = logging.FileHandler(log_file, encoding='utf-8')
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)

    # консоль пишет в stderr, stdout отдан под JSON
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level.upper(), logging.INFO))
    console_handler.setFormatter(formatter)

    root_logger.addHandler(file_handler)
    root_logger.addHandler(console_handler)
    return log_file


logger = logging.getLogger("FURST.main")


# ---- ВСПОМОГАТЕЛЬНЫЕ ----
def _load(args, settings: Settings) -> Scheme:
    return parse_input_file(args.ideal, seed=settings.seed, cap=settings.field_size_cap,
                            step_cap=settings.groebner_step_cap)


def _parse_direction(text: str, S: Scheme) -> Direction:
    """Строки базиса через ';', элементы через ',': "1,0,0;0,1,0" """
    try:
        rows = [[int(v) for v in row.split(",")] for row in text.replace(" ", "").split(";") if row]
    except ValueError:
        raise ValueError(f"Некорректная запись направления: '{text}'")
    for row in rows:
        if len(row) != S.n:
            raise ValueError(f"Строка направления {row} не из {S.n} координат")
    return Direction.from_rows(S.field, rows)


def _write_csv(path: str, frame: pd.DataFrame) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    frame.to_csv(path, index=False)
    logger.info(f"Таблица сохранена в {path}")


def _write_html(args, settings: Settings, figure_factory: Callable) -> Optional[str]:
    """--html или, при export_html, <output_dir>/<команда>.html"""
    path = getattr(args, "html", None)
    if not path and settings.export_html:
        path = os.path.join(settings.output_dir, f"{args.command}.html")
    if not path:
        return None
    return show_visualization(figure_factory(), path)


def _write_staircase(args, settings: Settings, S: Scheme) -> None:
    if S.n not in (2, 3):
        if getattr(args, "html", None):
            logger.warning(f"Лестница рисуется только для n = 2 или 3, у {S.name} n = {S.n}")
        return
    _write_html(args, settings, lambda: create_staircase_figure(S.standard, S.ring.variables))


# ---- КОМАНДЫ ----
def cmd_dilate(args, settings: Settings) -> Dict[str, Any]:
    S = _load(args, settings)
    result = dilate(S)
    _write_staircase(args, settings, result.degenerate)
    payload = result.to_dict()
    payload["scheme"] = scheme_summary(S)
    payload["degenerate_scheme"] = scheme_summary(result.degenerate)
    return payload


def cmd_gin(args, settings: Settings) -> Dict[str, Any]:
    S = _load(args, settings)
    seed = args.seed if args.seed is not None else settings.seed
    result = gin(S, order=gin_order(S.n, args.order), trials=args.trials or settings.gin_trials, seed=seed,
                 min_field_size=settings.gin_min_field_size)
    _write_staircase(args, settings, result.gin)
    payload = result.to_dict()
    payload["borel_fixed"] = bool(is_borel_fixed(result.gin))
    return payload


def cmd_borel(args, settings: Settings) -> Dict[str, Any]:
    if args.borel_command == "verify":
        max_size = args.max_size or settings.borel_max_size
        return verify_all(args.vars, max_size, settings.borel_max_vars, settings.borel_max_size).to_dict()
    S = _load(args, settings)
    check = is_borel_fixed(S)
    payload = {"scheme": S.name, "borel_fixed": check.holds, "witness": check.describe(S.ring.variables)}
    if check and S.n >= 2:
        payload["hyperplane"] = hyperplane_criterion(S)
    return payload


def cmd_planes(args, settings: Settings) -> Dict[str, Any]:
    F = field_from_spec(args.field, settings.seed, settings.field_size_cap)
    records = []
    for i, d in enumerate(enumerate_directions(args.n, args.k, F, settings.enumeration_cap)):
        records.append({"direction_id": i, "direction": d.label(), "plucker": str(d.plucker)})
    if args.csv:
        _write_csv(args.csv, pd.DataFrame.from_records(records, columns=["direction_id", "direction", "plucker"]))
    return {"n": args.n, "k": args.k, "field": F.spec, "count": len(records), "directions": records}


def cmd_incidence(args, settings: Settings) -> Dict[str, Any]:
    S = _load(args, settings)
    if args.direction:
        direction = _parse_direction(args.direction, S)
        if direction.k != args.k:
            raise ValueError(f"Направление размерности {direction.k}, ожидалось {args.k}")
        V = AffinePlane.linear(direction)
        return {"direction": direction.label(), "plucker": str(direction.plucker),
                "degree": intersection_degree(S, V)}
    table = incidence_table(S, args.k, full=args.full, cap=settings.enumeration_cap)
    if args.csv:
        _write_csv(args.csv, table.to_dataframe(full=args.full))
    _write_html(args, settings, lambda: create_radon_figure(table))
    return table.to_dict()


def cmd_radon(args, settings: Settings) -> Dict[str, Any]:
    S = _load(args, settings)
    table = radon_transform(S, args.k, settings.enumeration_cap)
    if args.csv:
        _write_csv(args.csv, table.to_dataframe())
    _write_html(args, settings, lambda: create_radon_figure(table))
    return table.to_dict()


def cmd_rich(args, settings: Settings) -> Dict[str, Any]:
    S = _load(args, settings)
    rich = rich_directions(S, args.m, args.k, settings.enumeration_cap)
    check = check_furstenberg(S, args.k, args.m, settings.enumeration_cap)
    return {"m": args.m, "k": args.k, "count": len(rich), "directions": [d.label() for d in rich],
            "furstenberg": check.holds}


def cmd_restriction(args, settings: Settings) -> Dict[str, Any]:
    S = _load(args, settings)
    sides = restriction_sides(S, args.k, settings.enumeration_cap)
    _write_html(args, settings, lambda: create_restriction_figure(
        [sides], [S.name or "S"]))
    return sides.to_dict()


def _chart(args, S: Scheme, k: int) -> Optional[Chart]:
    return Chart.parse(args.chart, S.n, k) if getattr(args, "chart", None) else None


def cmd_xmatrix(args, settings: Settings) -> Dict[str, Any]:
    S = _load(args, settings)
    M = build_chart_matrix(S, args.k, _chart(args, S, args.k))
    payload = M.to_dict()
    payload["generic_rank"] = M.generic_rank()
    payload["minimum_rank"] = minimum_rank(M, settings.minor_work_cap)
    return payload


def cmd_minors(args, settings: Settings) -> Dict[str, Any]:
    S = _load(args, settings)
    M = build_chart_matrix(S, args.k, _chart(args, S, args.k))
    J = minor_ideal(M, args.m, settings.minor_work_cap)
    payload = J.to_dict()
    payload["degree_stats"] = minor_degree_stats(J)
    if args.check_points:
        payload["three_way"] = three_way_check(S, args.k, M.chart, settings.minor_work_cap).to_dict()
    return payload


def cmd_xgr_test(args, settings: Settings) -> Dict[str, Any]:
    S = _load(args, settings)
    report = grassmannian_report(S, args.m, args.k, settings.minor_work_cap)
    payload = report.to_dict()
    if report.equal:
        payload["bound"] = bound_from_equality(args.m, args.k, S.n).to_dict()
    return payload


def cmd_verify(args, settings: Settings) -> Dict[str, Any]:
    if args.verify_command == "fatpoint":
        F = field_from_spec(args.field, settings.seed, settings.field_size_cap)
        S = make_fat_point(args.n, args.d, F, settings.enumeration_cap, settings.groebner_step_cap)
        return {"report": bound_report(S, args.k, args.C, settings.enumeration_cap).to_dict(),
                "induction": induction_step_check(S, args.k, cap=settings.enumeration_cap).to_dict()
                if args.k < S.n else None}
    if args.verify_command == "rotations":
        F = field_from_spec(str(args.q), settings.seed, settings.field_size_cap)
        S = make_rotations_union(F, args.N, settings.groebner_step_cap)
        check = check_furstenberg(S, 1, args.N, settings.enumeration_cap)
        return {"q": F.q, "N": args.N, "degree": S.degree, "all_rich": check.holds,
                "ratio_to_Nq": S.degree / (args.N * F.q)}
    S = _load(args, settings)
    if args.verify_command == "bound":
        report = bound_report(S, args.k, args.C, settings.enumeration_cap)
        _write_html(args, settings, lambda: create_bound_figure([report]))
        return report.to_dict()
    if args.verify_command == "induction":
        return {"step": induction_step_check(S, args.k, args.b, settings.enumeration_cap).to_dict(),
                "chain": dimension_chain(S, args.k, settings.enumeration_cap)}
    raise ValueError(f"Неизвестная проверка: {args.verify_command}")


def cmd_search(args, settings: Settings) -> Dict[str, Any]:
    F = field_from_spec(args.field, settings.seed, settings.field_size_cap)
    seed = args.seed if args.seed is not None else settings.seed
    result = search_furstenberg_sets(F, args.n, args.k, args.m, args.mode, args.budget, seed,
                                     settings.enumeration_cap, settings.exhaustive_search_max_points)
    return result.to_dict()


def cmd_ci_probe(args, settings: Settings) -> Dict[str, Any]:
    S = _load(args, settings)
    return ci_probe(S, args.k, settings.enumeration_cap)


# ---- РАЗБОР АРГУМЕНТОВ ----
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="furst", description="Схемы над конечными полями и оценки Фюрстенберга")
    parser.add_argument("--config", help="JSON-файл настроек")
    parser.add_argument("--log-level", default=None, help="Уровень логирования консоли")
    parser.add_argument("--seed", type=int, default=None, help="Зерно генератора")
    parser.add_argument("--output", help="Записать JSON в файл вместо stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_ideal(p, positional: bool = False):
        if positional:
            p.add_argument("ideal", help="Файл идеала (.ideal или .json)")
        else:
            p.add_argument("--ideal", required=True, help="Файл идеала (.ideal или .json)")
        return p

    p = with_ideal(sub.add_parser("dilate", help="Дилатация схемы"), positional=True)
    p.add_argument("--html", help="Лестница вырожденной схемы (n = 2, 3)")
    p.set_defaults(handler=cmd_dilate)

    p = with_ideal(sub.add_parser("gin", help="Генерический начальный идеал"), positional=True)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--order", choices=["lex", "grevlex"], default="lex", help="Порядок с x_1 наименьшей")
    p.add_argument("--html", help="Лестница gin (n = 2, 3)")
    p.set_defaults(handler=cmd_gin)

    p = sub.add_parser("borel", help="Борелевские множества")
    borel_sub = p.add_subparsers(dest="borel_command", required=True)
    q = borel_sub.add_parser("verify", help="Лемма о фронтире на всех множествах")
    q.add_argument("--vars", type=int, required=True)
    q.add_argument("--max-size", type=int, default=None)
    q = with_ideal(borel_sub.add_parser("check", help="Проверка борелевости мономиального идеала"), positional=True)
    p.set_defaults(handler=cmd_borel)

    p = sub.add_parser("planes", help="Направления Gr(k,n)(F_q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--field", default="2")
    p.add_argument("--csv")
    p.set_defaults(handler=cmd_planes)

    p = with_ideal(sub.add_parser("incidence", help="Таблица инцидентности"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--direction", help="Базис направления: \"1,0,0;0,1,0\"")
    p.add_argument("--full", action="store_true")
    p.add_argument("--csv")
    p.add_argument("--html")
    p.set_defaults(handler=cmd_incidence)

    p = with_ideal(sub.add_parser("radon", help="Преобразование Радона"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--csv")
    p.add_argument("--html")
    p.set_defaults(handler=cmd_radon)

    p = with_ideal(sub.add_parser("rich", help="m-богатые направления"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(handler=cmd_rich)

    p = with_ideal(sub.add_parser("restriction", help="Стороны неравенства ограничения"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--html")
    p.set_defaults(handler=cmd_restriction)

    p = with_ideal(sub.add_parser("xmatrix", help="Матрица инцидентности на карте"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--chart", help="Номера секущих форм: \"1,2\"")
    p.set_defaults(handler=cmd_xmatrix)

    p = with_ideal(sub.add_parser("minors", help="Идеал миноров X_{m,k}"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--chart")
    p.add_argument("--check-points", action="store_true")
    p.set_defaults(handler=cmd_minors)

    p = with_ideal(sub.add_parser("xgr-test", help="Проверка X_{m,k} = Gr(k,n)"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(handler=cmd_xgr_test)

    p = sub.add_parser("verify", help="Проверки оценок")
    verify_sub = p.add_subparsers(dest="verify_command", required=True)
    q = verify_sub.add_parser("fatpoint")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--field", default="3")
    q.add_argument("--C", type=float, default=1.0)
    q = verify_sub.add_parser("rotations")
    q.add_argument("--q", type=int, required=True)
    q.add_argument("--N", type=int, required=True)
    q = with_ideal(verify_sub.add_parser("bound"))
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--C", type=float, default=1.0)
    q.add_argument("--html")
    q = with_ideal(verify_sub.add_parser("induction"))
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--b", type=int, default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("search", help="Поиск малых множеств Фюрстенберга")
    p.add_argument("--field", "--q", dest="field", default="2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "greedy", "random", "genetic"], default="greedy")
    p.add_argument("--budget", type=int, default=20)
    p.set_defaults(handler=cmd_search)

    p = with_ideal(sub.add_parser("ci-probe", help="Эксперимент о полных пересечениях"))
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=cmd_ci_probe)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Главная функция для запуска приложения"""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings(args.config, {"log_level": args.log_level, "seed": args.seed})
    except (FileNotFoundError, ValueError) as e:
        print(f"Ошибка настроек: {e}", file=sys.stderr)
        return 2

    log_file = setup_logging(settings.log_level)
    logger.info(f"Команда {args.command}, лог: {log_file}")
    settings = performance_monitor.apply_caps(settings)

    try:
        with performance_monitor.stage(args.command) as stage:
            payload = args.handler(args, settings)
        payload = dict(payload)
        payload.setdefault("command", args.command)
        payload["seconds"] = stage["seconds"]
        payload["memory_delta_mb"] = stage["memory_delta_mb"]
    except FileNotFoundError as e:
        logger.error(f"Файл не найден: {e}")
        print(f"Файл не найден: {e}", file=sys.stderr)
        return 2
    except (FurstError, ValueError) as e:
        logger.error(f"Ошибка выполнения {args.command}: {e}")
        print(f"Ошибка: {e}", file=sys.stderr)
        return 1

    if args.output:
        save_output(args.output, payload)
    else:
        print(json.dumps(payload, indent=2, ensure_ascii=False, default=str))
    return 0


if __name__ == "__main__":
    sys.exit(main())
