"""
Иерархия исключений FURST.

Все ошибки библиотеки наследуются от FurstError и одновременно от
встроенного исключения подходящего типа (ValueError / RuntimeError),
поэтому вызывающий код может ловить их привычным способом.
"""
from typing import Any, List, Optional


class FurstError(Exception):
    """Базовое исключение проекта"""


class FieldError(FurstError, ValueError):
    """Некорректные параметры конечного поля или элемента поля"""


class PolynomialSyntaxError(FurstError, ValueError):
    """Синтаксическая ошибка при разборе многочлена"""

    def __init__(self, message: str, position: int = -1, text: str = ""):
        self.position = position
        self.text = text
        if position >= 0:
            message = f"{message} (позиция {position})"
        super().__init__(message)


class RingMismatchError(FurstError, ValueError):
    """Операция над многочленами из разных колец"""


class GroebnerLimitError(FurstError, RuntimeError):
    """Превышен лимит шагов алгоритма Бухбергера"""

    def __init__(self, message: str, steps: int = 0):
        self.steps = steps
        super().__init__(message)


class InfiniteQuotientError(FurstError, ValueError):
    """Факторкольцо бесконечномерно (схема не 0-мерна)"""


class EnumerationCapError(FurstError, RuntimeError):
    """Превышен лимит перебора"""


class ChartError(FurstError, ValueError):
    """Плоскость не лежит в выбранной карте Плюккера"""


class MinorExplosionError(FurstError, RuntimeError):
    """Слишком большой объём вычисления миноров"""

    def __init__(self, message: str, work: int = 0):
        self.work = work
        super().__init__(message)


class NotHomogeneousError(FurstError, ValueError):
    """Идеал не однороден, а операция требует схему с носителем в нуле"""


class GinError(FurstError, RuntimeError):
    """Генерический начальный идеал не стабилизировался или не борелевский"""

    def __init__(self, message: str, seen: Optional[List[Any]] = None, trials_used: int = 0):
        self.seen = seen or []
        self.trials_used = trials_used
        super().__init__(message)
