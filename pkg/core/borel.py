"""
Комбинаторика борелевских множеств мономов.

Множество Λ борелевское, если оно замкнуто относительно делимости и
относительно борелевских ходов x_j -> x_i (i < j). Здесь проверяется лемма о
фронтире, её следствие и тождество телескопирования на всех множествах
ограниченного размера.
"""
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from core.config import DEFAULT_SETTINGS
from core.errors import EnumerationCapError
from core.poly import Monomial, standard_sort_key

# Настройка логгера для модуля борелевских множеств
logger = logging.getLogger("FURST.borel")


# ---- ХОДЫ ----
def _divisors_one_step(m: Monomial) -> Iterator[Monomial]:
    for i, e in enumerate(m):
        if e:
            yield m[:i] + (e - 1,) + m[i + 1:]


def borel_moves(m: Monomial) -> Iterator[Tuple[int, int, Monomial]]:
    """Все ходы x_j -> x_i (i < j): тройки (i, j, результат)"""
    n = len(m)
    for j in range(n):
        if not m[j]:
            continue
        for i in range(j):
            moved = list(m)
            moved[j] -= 1
            moved[i] += 1
            yield i, j, tuple(moved)


def borel_violation(monomials: Iterable[Monomial]) -> Optional[Tuple[str, Monomial, Monomial]]:
    """
    Первое нарушение борелевости или None.
    Возвращает ("divisor" | "move", исходный моном, недостающий моном).
    """
    members = set(monomials)
    for m in sorted(members, key=standard_sort_key):
        for d in _divisors_one_step(m):
            if d not in members:
                return "divisor", m, d
        for _, _, moved in borel_moves(m):
            if moved not in members:
                return "move", m, moved
    return None


# ---- ТИПЫ ----
@dataclass(frozen=True)
class BorelSet:
    """Конечное борелевское множество мономов от n переменных"""
    n: int
    monomials: FrozenSet[Monomial]

    @classmethod
    def of(cls, n: int, monomials: Iterable[Monomial], validate: bool = True) -> "BorelSet":
        mons = frozenset(tuple(m) for m in monomials)
        for m in mons:
            if len(m) != n:
                raise ValueError(f"Моном {m} не от {n} переменных")
        result = cls(n, mons)
        if validate:
            bad = borel_violation(mons)
            if bad:
                kind, m, missing = bad
                raise ValueError(f"Множество не борелевское: {kind} {m} -> {missing}")
        return result

    def __len__(self) -> int:
        return len(self.monomials)

    def __contains__(self, m) -> bool:
        return tuple(m) in self.monomials

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> List[Monomial]:
        return sorted(self.monomials, key=standard_sort_key)

    def max_x1_degree(self) -> int:
        return max((m[0] for m in self.monomials), default=-1)

    def is_borel(self) -> bool:
        return borel_violation(self.monomials) is None


def lambda_slice(L: BorelSet, j: int) -> BorelSet:
    """Λ_j: мономы m от x_2..x_n, для которых x_1^j·m ∈ Λ"""
    if L.n == 0:
        raise ValueError("Срез определён только для n >= 1")
    return BorelSet(L.n - 1, frozenset(m[1:] for m in L.monomials if m[0] == j))


def frontier(L: BorelSet) -> BorelSet:
    """Элементы m ∈ Λ, у которых m·x_i ∉ Λ для всех переменных"""
    result = set()
    for m in L.monomials:
        if all(m[:i] + (m[i] + 1,) + m[i + 1:] not in L.monomials for i in range(L.n)):
            result.add(m)
    return BorelSet(L.n, frozenset(result))


def borel_closure(monomials: Iterable[Monomial], n: Optional[int] = None) -> BorelSet:
    """Наименьшее борелевское множество, содержащее данные мономы"""
    seeds = [tuple(m) for m in monomials]
    if n is None:
        if not seeds:
            raise ValueError("Для пустого множества нужно указать n")
        n = len(seeds[0])
    closed: Set[Monomial] = set()
    stack = list(seeds)
    while stack:
        m = stack.pop()
        if m in closed:
            continue
        closed.add(m)
        stack.extend(_divisors_one_step(m))
        stack.extend(moved for _, _, moved in borel_moves(m))
    return BorelSet(n, frozenset(closed))


# ---- ГРАНИЦЫ ----
def largest_a(size: int, n: int) -> int:
    """Наибольшее a с binom(a, n) <= size (size >= 1)"""
    a = n
    while comb(a + 1, n) <= size:
        a += 1
    return a


def largest_b(size: int, r: int) -> Optional[int]:
    """Наибольшее b с binom(b, r) <= size; None при r = 0 (граница не ограничена)"""
    if r == 0:
        return None
    if size < 1:
        return None
    b = r
    while comb(b + 1, r) <= size:
        b += 1
    return b


@dataclass
class FrontierVerdict:
    """Результат проверки леммы о фронтире и сопутствующих свойств"""
    size: int
    size_0: int
    a: int
    lemma_bound: int
    b: Optional[int]
    corollary_bound: Optional[int]
    lemma_holds: bool
    corollary_holds: bool
    telescoping_holds: bool
    slices_monotone: bool
    frontier_step_holds: bool
    witness: Optional[str] = None

    @property
    def holds(self) -> bool:
        return self.lemma_holds and self.corollary_holds

    @property
    def properties_hold(self) -> bool:
        return self.holds and self.telescoping_holds and self.slices_monotone and self.frontier_step_holds

    def to_dict(self) -> Dict:
        d = dict(self.__dict__)
        d["holds"] = self.holds
        return d


def verify_frontier_lemma(L: BorelSet) -> FrontierVerdict:
    """
    Проверяет |Λ| − |Λ_0| >= binom(a−1, n) для наибольшего a с |Λ| >= binom(a, n)
    и следствие: |Λ_0| >= binom(b, n−1) влечёт |Λ| − |Λ_0| >= binom(b, n).
    Заодно проверяются монотонность срезов, тождество телескопирования и
    включение Λ_j \\ Λ_{j+1} в фронтир Λ_j.
    """
    n = L.n
    size = len(L)
    slices = [lambda_slice(L, j) for j in range(L.max_x1_degree() + 2)]
    size_0 = len(slices[0])
    diff = size - size_0

    a = largest_a(size, n)
    lemma_bound = comb(a - 1, n)
    lemma_holds = diff >= lemma_bound

    b = largest_b(size_0, n - 1)
    if b is None:
        corollary_bound = None
        corollary_holds = True
    else:
        corollary_bound = comb(b, n)
        corollary_holds = diff >= corollary_bound

    telescoping = diff == sum(len(s) for s in slices[1:])
    monotone = all(slices[j + 1].monomials <= slices[j].monomials for j in range(len(slices) - 1))
    frontier_ok = True
    if n >= 2:
        for j in range(len(slices) - 1):
            if not (slices[j].monomials - slices[j + 1].monomials) <= frontier(slices[j]).monomials:
                frontier_ok = False
                break

    witness = None
    if not lemma_holds:
        witness = f"|Λ|−|Λ_0| = {diff} < binom({a - 1},{n}) = {lemma_bound}"
    elif not corollary_holds:
        witness = f"|Λ|−|Λ_0| = {diff} < binom({b},{n}) = {corollary_bound}"
    elif not (telescoping and monotone and frontier_ok):
        witness = "нарушено свойство срезов"
    if witness:
        logger.warning(f"Лемма о фронтире: {witness} для Λ = {L.sorted()}")

    return FrontierVerdict(size, size_0, a, lemma_bound, b, corollary_bound,
                           lemma_holds, corollary_holds, telescoping, monotone, frontier_ok, witness)


# ---- ПЕРЕЧИСЛЕНИЕ ----
def _canonical_key(m: Monomial):
    # ходы и деление уменьшают ключ
    return (sum(m),) + tuple(reversed(m))


def _check_caps(n: int, max_size: int, max_vars: Optional[int], cap_size: Optional[int]) -> None:
    max_vars = max_vars if max_vars is not None else DEFAULT_SETTINGS.borel_max_vars
    cap_size = cap_size if cap_size is not None else DEFAULT_SETTINGS.borel_max_size
    if n < 1 or n > max_vars:
        raise EnumerationCapError(f"Число переменных {n} вне допустимого диапазона 1..{max_vars}")
    if max_size > cap_size:
        raise EnumerationCapError(f"Размер {max_size} превышает лимит перебора {cap_size}")


def enumerate_borel_sets(n: int, max_size: int, max_vars: Optional[int] = None,
                         cap_size: Optional[int] = None) -> Iterator[BorelSet]:
    """
    Все борелевские множества размера 1..max_size, каждое ровно один раз.
    Обратный поиск: родитель множества получается удалением элемента с
    наибольшим каноническим ключом. Порядок выдачи детерминирован.
    """
    _check_caps(n, max_size, max_vars, cap_size)
    root = frozenset({(0,) * n})
    stack: List[Tuple[FrozenSet[Monomial], Tuple]] = [(root, _canonical_key((0,) * n))]
    count = 0
    while stack:
        members, top = stack.pop()
        count += 1
        yield BorelSet(n, members)
        if len(members) >= max_size:
            continue
        candidates = set()
        for m in members:
            for i in range(n):
                c = m[:i] + (m[i] + 1,) + m[i + 1:]
                if c not in members:
                    candidates.add(c)
        children = []
        for c in candidates:
            key = _canonical_key(c)
            if key <= top:
                continue
            if all(d in members for d in _divisors_one_step(c)) and \
                    all(moved in members for _, _, moved in borel_moves(c)):
                children.append((key, c))
        for key, c in sorted(children, reverse=True):
            stack.append((members | {c}, key))
    logger.debug(f"Перечислено {count} борелевских множеств (n={n}, размер <= {max_size})")


def enumerate_staircases(n: int, max_size: int) -> Iterator[FrozenSet[Monomial]]:
    """Все множества мономов, замкнутые относительно делимости (без борелевского условия)"""
    root = frozenset({(0,) * n})
    stack = [(root, _staircase_key((0,) * n))]
    while stack:
        members, top = stack.pop()
        yield members
        if len(members) >= max_size:
            continue
        candidates = {m[:i] + (m[i] + 1,) + m[i + 1:] for m in members for i in range(n)}
        for c in sorted(candidates - members, key=_staircase_key, reverse=True):
            key = _staircase_key(c)
            if key > top and all(d in members for d in _divisors_one_step(c)):
                stack.append((members | {c}, key))


def _staircase_key(m: Monomial):
    return (sum(m),) + tuple(m)


@dataclass
class BorelSummary:
    n: int
    max_size: int
    checked: int = 0
    violations: List[Dict] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {"n": self.n, "max_size": self.max_size, "checked": self.checked,
                "violations": self.violations}


def verify_all(n: int, max_size: int, max_vars: Optional[int] = None,
               cap_size: Optional[int] = None) -> BorelSummary:
    """Проверка леммы о фронтире на всех борелевских множествах"""
    logger.info(f"Проверка леммы о фронтире: n={n}, |Λ| <= {max_size}")
    summary = BorelSummary(n, max_size)
    for L in enumerate_borel_sets(n, max_size, max_vars, cap_size):
        verdict = verify_frontier_lemma(L)
        summary.checked += 1
        if not verdict.properties_hold:
            summary.violations.append({"set": [list(m) for m in L.sorted()], "witness": verdict.witness})
    logger.info(f"Проверено {summary.checked} множеств, нарушений: {len(summary.violations)}")
    return summary
