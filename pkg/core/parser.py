import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from core.errors import PolynomialSyntaxError
from core.ff import FieldCtx, field_from_spec
from core.gb import Ideal, Scheme
from core.poly import PolyRing

# Настройка логгера для модуля парсинга
logger = logging.getLogger("FURST.parser")


# ---- ОПИСАНИЕ СТРУКТУР ----
@dataclass
class IdealFile:
    field_spec: str
    variables: List[str]
    generators: List[str]
    name: str = ""
    comments: List[str] = field(default_factory=list)


# ---- ПАРСЕР ВХОДА ----
def parse_ideal_text(text: str, source: str = "<text>") -> IdealFile:
    """
    Разбирает текстовое описание идеала.
    Формат (UTF-8):
        # комментарий
        field: 5^2
        vars: x1,x2,x3
        name: пример          (необязательно)
        x1^2 - x2
        (g+1)*x3^2
    Одна образующая на строку; заголовки field и vars обязательны и
    должны предшествовать образующим.
    """
    field_spec = None
    variables: Optional[List[str]] = None
    name = ""
    generators: List[str] = []
    comments: List[str] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        if "#" in line:
            line = line.split("#", 1)[0].strip()
        lower = line.lower()
        if lower.startswith("field:"):
            field_spec = line.split(":", 1)[1].strip()
        elif lower.startswith("vars:"):
            variables = [v.strip() for v in line.split(":", 1)[1].split(",") if v.strip()]
            if len(set(variables)) != len(variables):
                raise ValueError(f"{source}:{lineno}: повторяющиеся имена переменных")
        elif lower.startswith("name:"):
            name = line.split(":", 1)[1].strip()
        else:
            if field_spec is None or variables is None:
                raise ValueError(f"{source}:{lineno}: образующая до заголовков 'field:' и 'vars:'")
            generators.append(line)

    if field_spec is None:
        raise ValueError(f"{source}: отсутствует заголовок 'field:'")
    if not variables:
        raise ValueError(f"{source}: отсутствует заголовок 'vars:'")
    logger.debug(f"{source}: поле {field_spec}, переменные {variables}, {len(generators)} образующих")
    return IdealFile(field_spec, variables, generators, name, comments)


def build_scheme(desc: IdealFile, seed: int = 0, cap: Optional[int] = None,
                 F: Optional[FieldCtx] = None, step_cap: Optional[int] = None) -> Scheme:
    """Создаёт схему по разобранному описанию"""
    F = F or field_from_spec(desc.field_spec, seed=seed, cap=cap)
    ring = PolyRing(F, tuple(desc.variables))
    polys = []
    for i, text in enumerate(desc.generators):
        try:
            polys.append(ring.parse(text))
        except PolynomialSyntaxError as e:
            logger.error(f"Ошибка в образующей {i + 1} '{text}': {e}")
            raise
    return Scheme(Ideal(ring, tuple(polys)), desc.name, step_cap=step_cap)


def parse_ideal_file(path: str, seed: int = 0, cap: Optional[int] = None,
                     step_cap: Optional[int] = None) -> Scheme:
    """Загружает схему из файла .ideal"""
    try:
        logger.info(f"Начинаем загрузку файла: {path}")
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        logger.error(f"Не удалось открыть файл {path}: {e}")
        raise FileNotFoundError(f"Файл не найден или недоступен: {e}")

    desc = parse_ideal_text(text, path)
    if not desc.name:
        desc.name = os.path.splitext(os.path.basename(path))[0]
    scheme = build_scheme(desc, seed, cap, step_cap=step_cap)
    logger.info(f"Файл {path} загружен: {len(scheme.ideal.generators)} образующих в {scheme.ring}")
    return scheme


def parse_ideal_json(path: str, seed: int = 0, cap: Optional[int] = None,
                     step_cap: Optional[int] = None) -> Scheme:
    """
    Загружает схему из JSON:
    {"field": "3^2", "vars": ["x", "y"], "generators": ["x^2", "y - x"], "name": "..."}
    """
    try:
        logger.info(f"Начинаем загрузку файла: {path}")
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        logger.error(f"Ошибка разбора JSON в файле {path}: {e}")
        raise ValueError(f"Некорректный формат JSON: {e}")
    except OSError as e:
        logger.error(f"Не удалось открыть файл {path}: {e}")
        raise FileNotFoundError(f"Файл не найден или недоступен: {e}")

    try:
        desc = IdealFile(
            field_spec=str(data["field"]),
            variables=list(data["vars"]),
            generators=list(data.get("generators", [])),
            name=data.get("name", os.path.splitext(os.path.basename(path))[0]),
        )
    except KeyError as e:
        logger.error(f"Отсутствует обязательное поле {e} в файле {path}")
        raise ValueError(f"Некорректные данные идеала: отсутствует поле {e}")
    return build_scheme(desc, seed, cap, step_cap=step_cap)


def parse_input_file(path: str, seed: int = 0, cap: Optional[int] = None,
                     step_cap: Optional[int] = None) -> Scheme:
    """Определяет формат по расширению и вызывает соответствующий парсер."""
    if path.lower().endswith(".json"):
        return parse_ideal_json(path, seed, cap, step_cap)
    return parse_ideal_file(path, seed, cap, step_cap)


# ---- ЗАПИСЬ ----
def format_ideal(S: Scheme, comment: str = "") -> str:
    """Текст файла .ideal, который снова читается parse_ideal_text"""
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"field: {S.field.spec}")
    lines.append(f"vars: {','.join(S.ring.variables)}")
    if S.name:
        lines.append(f"name: {S.name}")
    lines.extend(str(g) for g in S.ideal.generators)
    return "\n".join(lines) + "\n"


def save_ideal(path: str, S: Scheme, comment: str = "") -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_ideal(S, comment))
    logger.info(f"Идеал сохранён в {path}")


def scheme_summary(S: Scheme) -> Dict[str, Any]:
    """Краткое JSON-описание схемы"""
    N = S.degree
    summary = {
        "name": S.name,
        "field": S.field.spec,
        "vars": list(S.ring.variables),
        "generators": [str(g) for g in S.ideal.generators],
        "groebner_basis": [str(g) for g in S.basis.elements],
        "order": str(S.order),
        "degree": N,
        "homogeneous": S.is_homogeneous,
    }
    if N != "infinite":
        summary["standard_monomials"] = [monomial_string(S.ring, m) for m in S.standard]
    return summary


def monomial_string(ring: PolyRing, m) -> str:
    return str(ring.monomial(m))


def save_output(path: str, payload: Dict[str, Any]) -> None:
    """Сохраняет результат команды в JSON."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, ensure_ascii=False, default=str)
    logger.info(f"Результат сохранён в {path}")
