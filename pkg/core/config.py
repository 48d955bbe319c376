import json
import logging
import os
from dataclasses import dataclass, fields, asdict
from typing import Any, Dict, Optional

# Настройка логгера для модуля конфигурации
logger = logging.getLogger("FURST.config")

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                                   "config", "settings.json")


@dataclass(frozen=True)
class Settings:
    """Параметры вычислений и лимиты ресурсов"""
    field_size_cap: int = 2 ** 20
    groebner_step_cap: int = 10 ** 6
    enumeration_cap: int = 2 ** 20
    minor_work_cap: int = 10 ** 7
    borel_max_size: int = 30
    borel_max_vars: int = 4
    exhaustive_search_max_points: int = 16
    gin_min_field_size: int = 64
    gin_trials: int = 8
    seed: int = 0
    log_level: str = "INFO"
    output_dir: str = "outputs/results"
    export_html: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


DEFAULT_SETTINGS = Settings()


def load_settings(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> Settings:
    """
    Загружает настройки из JSON-файла.

    Неизвестные ключи игнорируются (с предупреждением в логе), отсутствующий
    файл по умолчанию даёт значения DEFAULT_SETTINGS. Явно указанный, но
    отсутствующий файл — ошибка FileNotFoundError.
    """
    explicit = path is not None
    path = path or DEFAULT_CONFIG_PATH
    data: Dict[str, Any] = {}

    if os.path.exists(path):
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
            logger.info(f"Настройки загружены из {path}")
        except json.JSONDecodeError as e:
            logger.error(f"Ошибка разбора JSON в файле настроек {path}: {e}")
            raise ValueError(f"Некорректный формат файла настроек: {e}")
    elif explicit:
        logger.error(f"Файл настроек не найден: {path}")
        raise FileNotFoundError(f"Файл настроек не найден: {path}")
    else:
        logger.debug("Файл настроек по умолчанию отсутствует, используются значения по умолчанию")

    if overrides:
        data.update({k: v for k, v in overrides.items() if v is not None})

    known = {f.name: f.type for f in fields(Settings)}
    clean: Dict[str, Any] = {}
    for key, value in data.items():
        if key not in known:
            logger.warning(f"Неизвестный параметр настроек проигнорирован: {key}")
            continue
        clean[key] = value

    settings = Settings(**clean)
    logger.debug(f"Итоговые настройки: {settings.to_dict()}")
    return settings
