import logging
import re
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from core.errors import PolynomialSyntaxError, RingMismatchError
from core.ff import FieldCtx, FieldElement

# Настройка логгера для модуля многочленов
logger = logging.getLogger("FURST.poly")

Monomial = Tuple[int, ...]

# Степень нулевого многочлена
ZERO_DEGREE = -1


# ---- МОНОМЫ ----
def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """a делит b (покомпонентно a <= b)"""
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def unit_monomial(n: int, i: int, power: int = 1) -> Monomial:
    return tuple(power if j == i else 0 for j in range(n))


def monomials_of_degree(n: int, d: int) -> Iterator[Monomial]:
    """Все мономы степени d от n переменных (по убыванию лексикографически)"""
    for combo in combinations_with_replacement(range(n), d):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        yield tuple(exps)


def monomials_up_to(n: int, d: int) -> Iterator[Monomial]:
    for k in range(d + 1):
        yield from monomials_of_degree(n, k)


def standard_sort_key(m: Monomial):
    """Порядок вывода стандартных мономов: по степени, затем x1 раньше x2"""
    return (sum(m), tuple(-e for e in m))


# ---- МОНОМИАЛЬНЫЕ ПОРЯДКИ ----
@dataclass(frozen=True)
class MonomialOrder:
    """
    Мономиальный порядок grevlex или lex.

    variable_priority — индексы переменных от самой старшей к самой младшей;
    пустой кортеж означает естественный порядок x1 > x2 > ... > xn.
    """
    kind: str = "grevlex"
    variable_priority: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"Неизвестный мономиальный порядок: {self.kind}")
        if self.variable_priority and sorted(self.variable_priority) != list(range(len(self.variable_priority))):
            raise ValueError(f"variable_priority не является перестановкой: {self.variable_priority}")

    def priority(self, n: int) -> Tuple[int, ...]:
        if self.variable_priority:
            if len(self.variable_priority) != n:
                raise RingMismatchError(f"Порядок задан для {len(self.variable_priority)} переменных, а кольцо имеет {n}")
            return self.variable_priority
        return tuple(range(n))

    def key(self, m: Monomial):
        """Ключ сортировки: больший ключ — больший моном"""
        prio = self.variable_priority or range(len(m))
        if self.kind == "lex":
            return tuple(m[i] for i in prio)
        return (sum(m), tuple(-m[i] for i in reversed(tuple(prio))))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def is_degree_compatible(self) -> bool:
        return self.kind == "grevlex"

    @classmethod
    def grevlex(cls, priority: Sequence[int] = ()) -> "MonomialOrder":
        return cls("grevlex", tuple(priority))

    @classmethod
    def lex(cls, priority: Sequence[int] = ()) -> "MonomialOrder":
        return cls("lex", tuple(priority))

    @classmethod
    def ascending(cls, n: int, kind: str = "lex") -> "MonomialOrder":
        """Порядок x1 < x2 < ... < xn (старшая переменная — последняя)"""
        return cls(kind, tuple(range(n - 1, -1, -1)))

    def __str__(self) -> str:
        if not self.variable_priority:
            return self.kind
        return f"{self.kind}[{','.join(str(i + 1) for i in self.variable_priority)}]"


# ---- КОЛЬЦО ----
@dataclass(frozen=True)
class PolyRing:
    """Кольцо многочленов F[x1..xn] с порядком по умолчанию"""
    field: FieldCtx
    variables: Tuple[str, ...]
    order: MonomialOrder = field(default_factory=MonomialOrder)

    @classmethod
    def standard(cls, F: FieldCtx, n: int, prefix: str = "x", order: Optional[MonomialOrder] = None) -> "PolyRing":
        return cls(F, tuple(f"{prefix}{i + 1}" for i in range(n)), order or MonomialOrder())

    @property
    def n(self) -> int:
        return len(self.variables)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.variables, order)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise PolynomialSyntaxError(f"Неизвестная переменная '{name}'")

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: c})

    def gen(self, i: int) -> "Polynomial":
        return Polynomial(self, {unit_monomial(self.n, i): 1})

    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.n)]

    def var(self, name: str) -> "Polynomial":
        return self.gen(self.index(name))

    def monomial(self, m: Monomial, c: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(m): c})

    def parse(self, text: str) -> "Polynomial":
        return poly_parse(text, self)

    def __str__(self) -> str:
        return f"{self.field}[{','.join(self.variables)}]"


# ---- МНОГОЧЛЕН ----
class Polynomial:
    """
    Разреженный многочлен: словарь моном -> ненулевой код коэффициента.
    Значение неизменяемо; все операции возвращают новый объект.
    """
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, int]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._hash = None

    # -- базовые свойства --
    @property
    def field(self) -> FieldCtx:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.constant(self.field.from_int(other))
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def coeff(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def degree(self) -> int:
        """Полная степень; для нуля — ZERO_DEGREE"""
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(m) for m in self.terms)

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def variables_used(self) -> List[int]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    # -- порядок --
    def _order(self, order: Optional[MonomialOrder]) -> MonomialOrder:
        return order or self.ring.order

    def leading_monomial(self, order: Optional[MonomialOrder] = None) -> Monomial:
        if not self.terms:
            raise ValueError("Старший моном нулевого многочлена не определён")
        return max(self.terms, key=self._order(order).key)

    def leading_coefficient(self, order: Optional[MonomialOrder] = None) -> int:
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: Optional[MonomialOrder] = None) -> List[Tuple[Monomial, int]]:
        key = self._order(order).key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading_coefficient(order)))

    # -- арифметика --
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.field != self.ring.field or other.ring.variables != self.ring.variables:
                raise RingMismatchError(f"Кольца не совпадают: {self.ring} и {other.ring}")
            return other
        if isinstance(other, FieldElement):
            return self.ring.constant(other.value)
        if isinstance(other, int):
            return self.ring.constant(self.field.from_int(other))
        raise TypeError(f"Неподдерживаемый операнд: {type(other)}")

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        F = self.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = F.add(terms.get(m, 0), c)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        F = self.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        F = self.field
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                terms[m] = F.add(terms.get(m, 0), F.mul(c1, c2))
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("Отрицательная степень многочлена")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        if c == 0:
            return self.ring.zero()
        F = self.field
        return Polynomial(self.ring, {m: F.mul(v, c) for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: int) -> "Polynomial":
        """Умножение на член c * mono"""
        F = self.field
        return Polynomial(self.ring, {mono_mul(m, mono): F.mul(v, c) for m, v in self.terms.items()})

    # -- однородные компоненты --
    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def top_degree_form(self) -> "Polynomial":
        return top_degree_form(self)

    # -- вычисления --
    def evaluate(self, point: Sequence[int]) -> int:
        """Значение в точке (коды элементов поля)"""
        F = self.field
        total = 0
        for m, c in self.terms.items():
            value = c
            for a, e in zip(point, m):
                if e:
                    value = F.mul(value, F.pow(a, e))
            total = F.add(total, value)
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        return substitute(self, images)

    def translate(self, point: Sequence[int]) -> "Polynomial":
        """Сдвиг переменных x_i -> x_i + a_i (точка становится началом координат)"""
        images = [self.ring.gen(i) + self.ring.constant(a) for i, a in enumerate(point)]
        return substitute(self, images)

    def order_at_origin(self) -> int:
        """Наименьшая степень ненулевого члена (порядок обращения в нуль в начале координат)"""
        if not self.terms:
            return ZERO_DEGREE
        return min(sum(m) for m in self.terms)

    def map_coefficients(self, ring: PolyRing, fn) -> "Polynomial":
        """Перенос в кольцо с теми же переменными над другим полем"""
        return Polynomial(ring, {m: fn(c) for m, c in self.terms.items()})

    def change_ring(self, ring: PolyRing, positions: Sequence[int]) -> "Polynomial":
        """Перенос в кольцо с большим числом переменных: переменная i -> positions[i]"""
        terms = {}
        for m, c in self.terms.items():
            new = [0] * ring.n
            for i, e in enumerate(m):
                new[positions[i]] += e
            terms[tuple(new)] = c
        return Polynomial(ring, terms)

    # -- строки --
    def to_string(self, order: Optional[MonomialOrder] = None) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.variables, m) if e
            )
            coeff = F.format(c)
            if F.e > 1 and ("+" in coeff or "*" in coeff or F.generator_name in coeff):
                coeff = f"({coeff})"
            if not mono:
                parts.append(coeff)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return "+".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()} in {self.ring})"


# ---- ОПЕРАЦИИ ----
def top_degree_form(f: Polynomial) -> Polynomial:
    """Однородная компонента максимальной полной степени"""
    if f.is_zero():
        raise ValueError("Старшая форма нулевого многочлена не определена")
    return f.homogeneous_component(f.degree())


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """
    Гомоморфизм колец x_i -> images[i]; образы могут лежать в другом кольце
    над тем же полем.
    """
    if len(images) != f.ring.n:
        raise RingMismatchError(f"Ожидалось {f.ring.n} образов переменных, получено {len(images)}")
    if not images:
        return f
    target = images[0].ring
    for img in images:
        if img.ring != target:
            raise RingMismatchError("Образы переменных лежат в разных кольцах")
    if target.field != f.ring.field:
        raise RingMismatchError(f"Поле образов {target.field} не совпадает с полем {f.ring.field}")

    power_cache: Dict[Tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        key = (i, e)
        if key not in power_cache:
            power_cache[key] = images[i] ** e
        return power_cache[key]

    result = target.zero()
    for m, c in f.terms.items():
        term = target.constant(c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


# ---- РАЗБОР ----
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise PolynomialSyntaxError(f"Недопустимый символ '{text[pos]}'", pos, text)
        number, ident, op = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(("num", number, start))
        elif ident is not None:
            tokens.append(("id", ident, start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Рекурсивный спуск: expr := term (±term)*, term := factor (*? factor)*"""

    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(message, tok[2], self.text)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("Пустое выражение")
        result = self.expr()
        if self.peek()[0] != "end":
            self.error(f"Лишний символ '{self.peek()[1]}'")
        return result

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            sign = -1
        elif self.peek()[0] == "op" and self.peek()[1] == "+":
            self.take()
        result = self.term()
        if sign < 0:
            result = -result
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                result = result * self.factor()
            elif tok[0] in ("num", "id") or (tok[0] == "op" and tok[1] == "("):
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("После '^' ожидается целая степень", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, value, pos = tok
        F = self.ring.field
        if kind == "num":
            return self.ring.constant(F.from_int(int(value)))
        if kind == "id":
            if value in self.ring.variables:
                return self.ring.var(value)
            if value == F.generator_name:
                if F.e == 1:
                    raise PolynomialSyntaxError(f"Коэффициент '{value}' не принадлежит полю {F}", pos, self.text)
                return self.ring.constant(F.p)
            raise PolynomialSyntaxError(f"Неизвестная переменная '{value}'", pos, self.text)
        if kind == "op" and value == "(":
            inner = self.expr()
            closing = self.take()
            if closing[0] != "op" or closing[1] != ")":
                self.error("Ожидается ')'", closing)
            return inner
        if kind == "op" and value == "-":
            return -self.factor()
        self.error(f"Неожиданный символ '{value}'", tok)


def poly_parse(text: str, ring: PolyRing) -> Polynomial:
    """
    Разбор многочлена. Грамматика: переменные кольца, целые коэффициенты,
    степени '^', необязательный '*', коэффициенты расширения в скобках
    через образующую, например "(g+1)*x1^2".
    """
    return _Parser(text, ring).parse()


def poly_print(f: Polynomial) -> str:
    return f.to_string()
