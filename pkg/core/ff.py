import logging
import re
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from core.config import DEFAULT_SETTINGS
from core.errors import FieldError

# Настройка логгера для модуля конечных полей
logger = logging.getLogger("FURST.ff")

# Таблица сложения строится только для небольших расширений
_ADD_TABLE_LIMIT = 1024


# ---- ВСПОМОГАТЕЛЬНАЯ АРИФМЕТИКА МНОГОЧЛЕНОВ НАД GF(p) ----
# Многочлены хранятся списками коэффициентов от младшего к старшему.

def is_prime(p: int) -> bool:
    """Проверка простоты пробным делением (p ограничено лимитом поля)"""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _trim(f: List[int]) -> List[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mod(f: List[int], g: List[int], p: int) -> List[int]:
    """Остаток от деления f на унитарный g над GF(p)"""
    f = _trim(list(f))
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1]
        shift = len(f) - 1 - dg
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
        _trim(f)
    return f


def _poly_mulmod(f: Sequence[int], g: Sequence[int], modulus: Sequence[int], p: int) -> List[int]:
    prod = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            prod[i + j] = (prod[i + j] + a * b) % p
    return _poly_mod(prod, list(modulus), p)


def _monic_polys(degree: int, p: int):
    """Все унитарные многочлены степени degree в порядке кодирования"""
    for code in range(p ** degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % p)
            c //= p
        yield coeffs + [1]


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """
    Проверка неприводимости унитарного многочлена перебором делителей
    степени не выше deg(f)/2.
    """
    n = len(f) - 1
    if n <= 1:
        return n == 1
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(d, p):
            if not _poly_mod(list(f), g, p):
                return False
    return True


# ---- КОНТЕКСТ ПОЛЯ ----
@dataclass(frozen=True)
class FieldCtx:
    """
    Конечное поле GF(p^e).

    Элементы кодируются целыми числами 0..q-1: цифры числа в системе
    счисления с основанием p — коэффициенты многочлена от образующей
    (младшая цифра — свободный член). Элементы простого подполя совпадают
    с числами 0..p-1.
    """
    p: int
    e: int = 1
    modulus_poly: Optional[Tuple[int, ...]] = None
    generator_name: str = "g"
    _exp: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    _log: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    _add: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.e > 1:
            self._build_tables()

    # -- построение таблиц --
    def _build_tables(self) -> None:
        p, q = self.p, self.q
        modulus = list(self.modulus_poly)
        primitive = None
        exp_table = None
        for candidate in range(p, q):
            base = self.coeffs(candidate)
            powers = [1]
            current = [1]
            ok = True
            for _ in range(1, q - 1):
                current = _poly_mulmod(current, base, modulus, p)
                value = self._encode(current)
                if value == 1:
                    ok = False
                    break
                powers.append(value)
            if ok:
                primitive = candidate
                exp_table = powers
                break
        if primitive is None:
            raise FieldError(f"Не найден примитивный элемент для GF({p}^{self.e})")

        exp_arr = np.array(exp_table + exp_table, dtype=np.int64)
        log_arr = np.zeros(q, dtype=np.int64)
        for i, v in enumerate(exp_table):
            log_arr[v] = i
        object.__setattr__(self, "_exp", exp_arr)
        object.__setattr__(self, "_log", log_arr)

        if q <= _ADD_TABLE_LIMIT:
            a = np.arange(q, dtype=np.int64)
            object.__setattr__(self, "_add", self._digit_add(a[:, None], a[None, :], 1))
        logger.debug(f"Таблицы GF({p}^{self.e}) построены, примитивный элемент {self.format(primitive)}")

    def _encode(self, coeffs: Sequence[int]) -> int:
        value = 0
        for c in reversed(list(coeffs)):
            value = value * self.p + (c % self.p)
        return value

    def _digit_add(self, a, b, sign: int):
        result = 0
        scale = 1
        for _ in range(self.e):
            da = (a // scale) % self.p
            db = (b // scale) % self.p
            result = result + ((da + sign * db) % self.p) * scale
            scale *= self.p
        return result

    # -- свойства --
    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def spec(self) -> str:
        return str(self.p) if self.e == 1 else f"{self.p}^{self.e}"

    def coeffs(self, a: int) -> Tuple[int, ...]:
        """Коэффициенты элемента как многочлена от образующей"""
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if self.e == 1:
            return coeffs[0] % self.p if coeffs else 0
        if len(coeffs) > self.e:
            # приведение по модулю неприводимого многочлена
            return self._encode(_poly_mod(list(coeffs), list(self.modulus_poly), self.p))
        return self._encode(coeffs)

    # -- скалярная арифметика на кодах --
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._add is not None:
            return int(self._add[a, b])
        return int(self._digit_add(a, b, 1))

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return int(self._digit_add(0, a, -1))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("Обращение нуля в конечном поле")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.e == 1:
            return pow(a, n, self.p)
        return int(self._exp[(int(self._log[a]) * n) % (self.q - 1)])

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def from_int(self, n: int) -> int:
        """Образ целого числа в простом подполе"""
        return n % self.p

    # -- векторизованные операции для массивов numpy --
    def vadd(self, a: np.ndarray, b) -> np.ndarray:
        if self.e == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a, b]
        return self._digit_add(np.asarray(a), np.asarray(b), 1)

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (-a) % self.p
        return self._digit_add(np.zeros_like(a), np.asarray(a), -1)

    def vsub(self, a: np.ndarray, b) -> np.ndarray:
        return self.vadd(a, self.vneg(np.asarray(b)))

    def vmul(self, a, b) -> np.ndarray:
        if self.e == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        prod = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    # -- элементы, перечисление, строки --
    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value % self.q if self.e > 1 else value % self.p)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def codes(self) -> List[int]:
        return list(range(self.q))

    def format(self, a: int) -> str:
        """Запись элемента многочленом от образующей, например "g+1" """
        if self.e == 1:
            return str(a)
        coeffs = self.coeffs(a)
        parts = []
        for power in range(self.e - 1, -1, -1):
            c = coeffs[power]
            if c == 0:
                continue
            if power == 0:
                parts.append(str(c))
            else:
                mono = self.generator_name if power == 1 else f"{self.generator_name}^{power}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"

    def parse(self, text: str) -> int:
        """Разбор элемента поля: целое число или многочлен от образующей"""
        text = text.strip().replace(" ", "")
        if not text:
            raise FieldError("Пустая запись элемента поля")
        if re.fullmatch(r"[+-]?\d+", text):
            return int(text) % self.p
        name = re.escape(self.generator_name)
        term_re = re.compile(rf"([+-]?)(\d*)\*?({name}(?:\^(\d+))?)?")
        pos = 0
        value = 0
        while pos < len(text):
            match = term_re.match(text, pos)
            if not match or match.end() == pos:
                raise FieldError(f"Некорректный элемент поля '{text}' (позиция {pos})")
            sign, digits, gen, power = match.groups()
            if not digits and not gen:
                raise FieldError(f"Некорректный элемент поля '{text}' (позиция {pos})")
            coeff = int(digits) if digits else 1
            if sign == "-":
                coeff = -coeff
            if gen:
                if self.e == 1:
                    raise FieldError(f"Образующая '{self.generator_name}' не определена в простом поле GF({self.p})")
                exponent = int(power) if power else 1
                term = self.mul(self.from_int(coeff), self.pow(self.p, exponent))
            else:
                term = self.from_int(coeff)
            value = self.add(value, term)
            pos = match.end()
        return value

    def embedding_into(self, other: "FieldCtx") -> Callable[[int], int]:
        """
        Вложение self -> other. Для расширения образ образующей — корень
        неприводимого многочлена self в other.
        """
        if other.p != self.p or other.e % self.e != 0:
            raise FieldError(f"GF({self.spec}) не вкладывается в GF({other.spec})")
        if self.e == 1:
            return lambda a: a
        root = None
        for r in range(other.q):
            acc = 0
            for c in reversed(self.modulus_poly):
                acc = other.add(other.mul(acc, r), c)
            if acc == 0:
                root = r
                break
        if root is None:
            raise FieldError(f"Не найден корень модуля GF({self.spec}) в GF({other.spec})")
        table = []
        for a in range(self.q):
            acc = 0
            for c in reversed(self.coeffs(a)):
                acc = other.add(other.mul(acc, root), c)
            table.append(acc)
        return lambda a: table[a]

    def __str__(self) -> str:
        return f"GF({self.spec})"


@dataclass(frozen=True)
class FieldElement:
    """Элемент конечного поля (значение — код элемента в FieldCtx)"""
    ctx: FieldCtx
    value: int

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.ctx.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldError("Элементы разных полей")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return self.ctx.format(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.ctx.format(self.value)} in {self.ctx})"


# ---- ПОСТРОЕНИЕ ПОЛЕЙ ----
def find_irreducible(p: int, e: int, seed: int = 0) -> Tuple[int, ...]:
    """
    Детерминированный поиск унитарного неприводимого многочлена степени e.
    Кандидаты перебираются по коду, начиная со смещения seed; принимается
    первый неприводимый.
    """
    total = p ** e
    start = seed % total
    for step in range(total):
        code = (start + step) % total
        coeffs = []
        c = code
        for _ in range(e):
            coeffs.append(c % p)
            c //= p
        candidate = coeffs + [1]
        if coeffs[0] == 0:
            continue
        if is_irreducible(candidate, p):
            return tuple(candidate)
    raise FieldError(f"Не найден неприводимый многочлен степени {e} над GF({p})")


def field_create(p: int, e: int = 1, seed: int = 0, cap: Optional[int] = None,
                 generator_name: str = "g") -> FieldCtx:
    """Создание поля GF(p^e); одинаковые входные данные дают одно и то же поле"""
    cap = cap if cap is not None else DEFAULT_SETTINGS.field_size_cap
    if not is_prime(p):
        raise FieldError(f"Характеристика {p} не является простым числом")
    if e < 1:
        raise FieldError(f"Степень расширения должна быть >= 1, получено {e}")
    if p ** e > cap:
        raise FieldError(f"Поле GF({p}^{e}) превышает лимит размера {cap}")
    modulus = find_irreducible(p, e, seed) if e > 1 else None
    ctx = FieldCtx(p=p, e=e, modulus_poly=modulus, generator_name=generator_name)
    logger.debug(f"Создано поле {ctx}, модуль {modulus}")
    return ctx


def field_enumerate(F: FieldCtx) -> List[FieldElement]:
    """Все элементы поля: 0, 1, затем по возрастанию кода"""
    return [FieldElement(F, a) for a in range(F.q)]


def parse_field_spec(spec: str) -> Tuple[int, int]:
    """Разбор строки поля "p" или "p^e" """
    match = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", spec)
    if not match:
        raise FieldError(f"Некорректная запись поля: '{spec}'")
    p = int(match.group(1))
    e = int(match.group(2)) if match.group(2) else 1
    return p, e


def field_from_spec(spec: str, seed: int = 0, cap: Optional[int] = None) -> FieldCtx:
    """Разбор записи вида "5", "5^2", "25" (степень простого числа)"""
    p, e = parse_field_spec(spec)
    if e == 1 and not is_prime(p):
        # "25" трактуется как 5^2
        for base in range(2, p + 1):
            if is_prime(base):
                power, k = base, 1
                while power < p:
                    power *= base
                    k += 1
                if power == p:
                    p, e = base, k
                    break
    return field_create(p, e, seed=seed, cap=cap)


def extension_for_size(F: FieldCtx, min_size: int, seed: int = 0) -> FieldCtx:
    """Наименьшее расширение F размера не меньше min_size"""
    degree = 1
    while F.q ** degree < min_size:
        degree += 1
    if degree == 1:
        return F
    return field_create(F.p, F.e * degree, seed=seed)
