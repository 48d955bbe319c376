# -*- coding: utf-8 -*-
"""
Мониторинг ресурсов при длинных вычислениях (базисы Грёбнера, перебор
направлений, идеалы миноров)
"""

import logging
import time
from contextlib import contextmanager
from dataclasses import replace
from typing import Any, Dict, Iterator, List, Optional

import psutil

from core.config import Settings

# Лимиты, которые снижаются при нехватке памяти
MEMORY_BOUND_CAPS = ("enumeration_cap", "minor_work_cap", "groebner_step_cap")


def process_memory_mb() -> float:
    """Резидентная память текущего процесса"""
    return psutil.Process().memory_info().rss / (1024 ** 2)


def available_memory_gb() -> float:
    return psutil.virtual_memory().available / (1024 ** 3)


class PerformanceMonitor:
    """Замер времени и памяти по этапам вычислений"""

    def __init__(self, low_memory_gb: float = 2.0, reduction: int = 4):
        self.logger = logging.getLogger("FURST.performance")
        self.low_memory_gb = low_memory_gb
        self.reduction = reduction
        self.stages: List[Dict[str, Any]] = []

    @contextmanager
    def stage(self, name: str) -> Iterator[Dict[str, Any]]:
        """Замер этапа: время и прирост памяти процесса"""
        before = process_memory_mb()
        record: Dict[str, Any] = {'stage': name}
        start = time.perf_counter()
        try:
            yield record
        finally:
            record['seconds'] = time.perf_counter() - start
            record['memory_delta_mb'] = process_memory_mb() - before
            self.stages.append(record)
            self.logger.debug(f"Этап {name}: {record['seconds']:.3f} с, память {record['memory_delta_mb']:+.1f} МБ")

    def apply_caps(self, settings: Settings, available_gb: Optional[float] = None) -> Settings:
        """
        Настройки с лимитами, уменьшенными в reduction раз, если свободной
        памяти меньше low_memory_gb. Иначе настройки возвращаются без изменений.
        """
        available = available_memory_gb() if available_gb is None else available_gb
        if available >= self.low_memory_gb:
            return settings
        caps = {name: max(1, getattr(settings, name) // self.reduction) for name in MEMORY_BOUND_CAPS}
        self.logger.warning(f"Мало свободной памяти ({available:.1f} ГБ), лимиты снижены: {caps}")
        return replace(settings, **caps)


# Глобальный экземпляр монитора
performance_monitor = PerformanceMonitor()
