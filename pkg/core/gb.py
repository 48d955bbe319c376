"""
Алгоритм Бухбергера и операции с 0-мерными схемами.

|S| вычисляется как размерность факторкольца k[x]/I, то есть как число
стандартных мономов относительно редуцированного базиса Грёбнера.
"""
import heapq
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.config import DEFAULT_SETTINGS
from core.errors import GroebnerLimitError, InfiniteQuotientError, RingMismatchError
from core.ff import FieldCtx
from core.linalg import IncrementalEchelon
from core.poly import (
    Monomial, MonomialOrder, Polynomial, PolyRing,
    mono_divides, mono_div, mono_lcm, mono_mul, standard_sort_key, unit_monomial,
)

# Настройка логгера для модуля базисов Грёбнера
logger = logging.getLogger("FURST.gb")

INFINITE = "infinite"

Terms = Dict[Monomial, int]


# ---- ДЕЛЕНИЕ С ОСТАТКОМ ----
def _reduce_terms(terms: Terms, basis: Sequence[Tuple[Monomial, Terms]], F: FieldCtx, key) -> Terms:
    """Полная редукция по списку (старший моном, унитарный многочлен)"""
    f = dict(terms)
    remainder: Terms = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for g_lm, g in basis:
            if mono_divides(g_lm, lm):
                shift = mono_div(lm, g_lm)
                for m, v in g.items():
                    mm = mono_mul(m, shift)
                    nv = F.sub(f.get(mm, 0), F.mul(c, v))
                    if nv:
                        f[mm] = nv
                    else:
                        f.pop(mm, None)
                break
        else:
            remainder[lm] = c
            del f[lm]
    return remainder


def _monic_terms(terms: Terms, F: FieldCtx, key) -> Tuple[Monomial, Terms]:
    lm = max(terms, key=key)
    inv = F.inv(terms[lm])
    return lm, {m: F.mul(c, inv) for m, c in terms.items()}


def _s_polynomial(f: Tuple[Monomial, Terms], g: Tuple[Monomial, Terms], F: FieldCtx) -> Terms:
    lcm = mono_lcm(f[0], g[0])
    uf, ug = mono_div(lcm, f[0]), mono_div(lcm, g[0])
    s: Terms = {}
    for m, c in f[1].items():
        s[mono_mul(m, uf)] = c
    for m, c in g[1].items():
        mm = mono_mul(m, ug)
        nv = F.sub(s.get(mm, 0), c)
        if nv:
            s[mm] = nv
        else:
            s.pop(mm, None)
    return s


# ---- ТИПЫ ----
@dataclass(frozen=True)
class Ideal:
    """Идеал, заданный образующими (нулевые образующие отбрасываются)"""
    ring: PolyRing
    generators: Tuple[Polynomial, ...]

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ring.field != self.ring.field or g.ring.variables != self.ring.variables:
                raise RingMismatchError(f"Образующая {g} не лежит в кольце {self.ring}")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def from_strings(cls, ring: PolyRing, texts: Iterable[str]) -> "Ideal":
        return cls(ring, tuple(ring.parse(t) for t in texts))

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def groebner(self, order: Optional[MonomialOrder] = None, step_cap: Optional[int] = None) -> "GroebnerBasis":
        return groebner(self, order, step_cap)

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().contains(f)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    """Редуцированный базис Грёбнера: унитарные элементы, хвосты редуцированы"""
    ring: PolyRing
    order: MonomialOrder
    elements: Tuple[Polynomial, ...]
    steps: int = 0

    @cached_property
    def _pairs(self) -> List[Tuple[Monomial, Terms]]:
        return [(g.leading_monomial(self.order), g.terms) for g in self.elements]

    @property
    def leading_monomials(self) -> List[Monomial]:
        return [lm for lm, _ in self._pairs]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def is_unit(self) -> bool:
        """Базис {1}: идеал совпадает со всем кольцом"""
        return any(sum(lm) == 0 for lm in self.leading_monomials)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.elements)

    def initial_ideal(self) -> Ideal:
        return Ideal(self.ring, tuple(self.ring.monomial(lm) for lm in self.leading_monomials))

    def satisfies_buchberger_criterion(self) -> bool:
        """Все S-многочлены редуцируются к нулю"""
        F = self.ring.field
        pairs = self._pairs
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                s = _s_polynomial(pairs[i], pairs[j], F)
                if _reduce_terms(s, pairs, F, self.order.key):
                    return False
        return True

    def is_reduced(self) -> bool:
        lms = self.leading_monomials
        for g, lm in zip(self.elements, lms):
            if g.leading_coefficient(self.order) != 1:
                return False
            for m in g.terms:
                if any(mono_divides(other, m) for other in lms if other != lm):
                    return False
        return True

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


# ---- АЛГОРИТМ БУХБЕРГЕРА ----
def groebner(ideal: Ideal, order: Optional[MonomialOrder] = None, step_cap: Optional[int] = None) -> GroebnerBasis:
    """
    Редуцированный базис Грёбнера.

    Пары выбираются нормальной стратегией (наименьший НОК старших мономов,
    при равенстве — по индексам), применяются критерии Бухбергера.
    Превышение step_cap редукций пар — ошибка GroebnerLimitError.
    """
    ring = ideal.ring
    order = order or ring.order
    order.priority(ring.n)
    if step_cap is None:
        step_cap = DEFAULT_SETTINGS.groebner_step_cap
    F = ring.field
    key = order.key

    basis: List[Tuple[Monomial, Terms]] = []
    seen = set()
    for g in ideal.generators:
        lm, terms = _monic_terms(g.terms, F, key)
        frozen = frozenset(terms.items())
        if frozen in seen:
            continue
        seen.add(frozen)
        if sum(lm) == 0:
            logger.debug("Идеал содержит константу: базис {1}")
            return GroebnerBasis(ring, order, (ring.one(),))
        basis.append((lm, terms))

    if not basis:
        return GroebnerBasis(ring, order, ())

    heap: List[Tuple] = []
    pending = set()

    def push_pairs(j: int) -> None:
        for i in range(j):
            lcm = mono_lcm(basis[i][0], basis[j][0])
            heapq.heappush(heap, (key(lcm), j, i))
            pending.add((i, j))

    for j in range(1, len(basis)):
        push_pairs(j)

    steps = 0
    while heap:
        _, j, i = heapq.heappop(heap)
        pending.discard((i, j))
        lm_i, lm_j = basis[i][0], basis[j][0]
        # Первый критерий: взаимно простые старшие мономы
        if all(a == 0 or b == 0 for a, b in zip(lm_i, lm_j)):
            continue
        lcm = mono_lcm(lm_i, lm_j)
        # Цепной критерий
        chain = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(basis[k][0], lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue

        steps += 1
        if steps > step_cap:
            logger.error(f"Превышен лимит шагов Бухбергера: {step_cap}")
            raise GroebnerLimitError(f"Превышен лимит шагов алгоритма Бухбергера ({step_cap})", steps)

        h = _reduce_terms(_s_polynomial(basis[i], basis[j], F), basis, F, key)
        if h:
            lm, h = _monic_terms(h, F, key)
            basis.append((lm, h))
            if sum(lm) == 0:
                logger.debug("В базисе появилась константа: базис {1}")
                return GroebnerBasis(ring, order, (ring.one(),), steps)
            push_pairs(len(basis) - 1)

    # Минимизация и редукция хвостов
    basis.sort(key=lambda t: key(t[0]))
    minimal: List[Tuple[Monomial, Terms]] = []
    for lm, terms in basis:
        if not any(mono_divides(other, lm) for other, _ in minimal):
            minimal.append((lm, terms))
    reduced = []
    for idx, (lm, terms) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = {m: c for m, c in terms.items() if m != lm}
        tail = _reduce_terms(tail, others, F, key)
        tail[lm] = 1
        reduced.append(Polynomial(ring, tail))

    logger.debug(f"Базис Грёбнера ({order}): {len(reduced)} элементов, {steps} редукций пар")
    return GroebnerBasis(ring, order, tuple(reduced), steps)


def normal_form(f: Polynomial, B: GroebnerBasis) -> Polynomial:
    """Остаток от деления f на базис B"""
    if f.ring.variables != B.ring.variables or f.ring.field != B.ring.field:
        raise RingMismatchError(f"Многочлен из {f.ring}, базис из {B.ring}")
    return Polynomial(B.ring, _reduce_terms(f.terms, B._pairs, B.ring.field, B.order.key))


# ---- СТАНДАРТНЫЕ МОНОМЫ ----
def _has_pure_powers(leading: Sequence[Monomial], n: int) -> bool:
    for i in range(n):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in leading):
            return False
    return True


def staircase(leading: Sequence[Monomial], n: int) -> List[Monomial]:
    """
    Мономы вне мономиального идеала с данными образующими.
    Обход: потомки m получаются увеличением переменных с индексом не меньше
    последней ненулевой; лестница замкнута относительно делимости.
    """
    if any(sum(lm) == 0 for lm in leading):
        return []
    if not _has_pure_powers(leading, n):
        raise InfiniteQuotientError("Факторкольцо бесконечномерно: нет чистой степени у некоторой переменной")
    result = []
    stack: List[Tuple[Monomial, int]] = [((0,) * n, 0)]
    while stack:
        m, last = stack.pop()
        if any(mono_divides(lm, m) for lm in leading):
            continue
        result.append(m)
        for i in range(last, n):
            stack.append((mono_mul(m, unit_monomial(n, i)), i))
    result.sort(key=standard_sort_key)
    return result


# ---- СХЕМА ----
class Scheme:
    """
    0-мерная подсхема S = Spec k[x]/I с ленивыми кэшами базиса, стандартных
    мономов и степени N = |S|. Изменение идеала создаёт новую схему.
    """

    def __init__(self, ideal: Ideal, name: str = "", order: Optional[MonomialOrder] = None,
                 step_cap: Optional[int] = None):
        self.ideal = ideal
        self.name = name
        self.order = order or ideal.ring.order
        self.step_cap = step_cap

    @classmethod
    def from_strings(cls, ring: PolyRing, texts: Iterable[str], name: str = "") -> "Scheme":
        return cls(Ideal.from_strings(ring, texts), name)

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def field(self) -> FieldCtx:
        return self.ring.field

    @property
    def n(self) -> int:
        return self.ring.n

    @cached_property
    def basis(self) -> GroebnerBasis:
        return groebner(self.ideal, self.order, self.step_cap)

    @cached_property
    def degree(self) -> Union[int, str]:
        return quotient_dim(self)

    @cached_property
    def standard(self) -> List[Monomial]:
        return staircase(self.basis.leading_monomials, self.n)

    @cached_property
    def standard_index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.standard)}

    @cached_property
    def is_homogeneous(self) -> bool:
        if self.ideal.is_homogeneous():
            return True
        if self.order.is_degree_compatible():
            return all(g.is_homogeneous() for g in self.basis.elements)
        return all(g.is_homogeneous() for g in groebner(self.ideal, MonomialOrder.grevlex()).elements)

    @cached_property
    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.basis.elements)

    def is_finite(self) -> bool:
        return self.degree != INFINITE

    def coordinates(self, f: Polynomial) -> np.ndarray:
        """Координаты нормальной формы f в базисе стандартных мономов"""
        vec = np.zeros(len(self.standard), dtype=np.int64)
        for m, c in normal_form(f, self.basis).terms.items():
            vec[self.standard_index[m]] = c
        return vec

    def contains(self, f: Polynomial) -> bool:
        return self.basis.contains(f)

    def with_ideal(self, ideal: Ideal, name: str = "") -> "Scheme":
        return Scheme(ideal, name or self.name, self.order, self.step_cap)

    def rational_points(self) -> List[Tuple[int, ...]]:
        """Точки носителя над F_q (перебор F_q^n)"""
        gens = self.basis.elements
        return [pt for pt in product(range(self.field.q), repeat=self.n)
                if all(g.evaluate(pt) == 0 for g in gens)]

    def __str__(self) -> str:
        label = self.name or "S"
        return f"{label} = Spec {self.ring}/{self.ideal}"

    def __repr__(self) -> str:
        return f"Scheme({self.name or self.ideal})"


def quotient_dim(S: Scheme) -> Union[int, str]:
    """dim_k k[x]/I или INFINITE"""
    leading = S.basis.leading_monomials
    if any(sum(lm) == 0 for lm in leading):
        return 0
    if not _has_pure_powers(leading, S.n):
        return INFINITE
    return len(S.standard)


def standard_monomials(S: Scheme, order: Optional[MonomialOrder] = None) -> List[Monomial]:
    """Стандартные мономы относительно order (по умолчанию — порядок схемы)"""
    if order is None or order == S.order:
        if quotient_dim(S) == INFINITE:
            raise InfiniteQuotientError(f"Схема {S.name or S.ideal} не 0-мерна")
        return list(S.standard)
    B = groebner(S.ideal, order, S.step_cap)
    return staircase(B.leading_monomials, S.n)


def hilbert_function(S: Scheme) -> List[int]:
    """
    Число стандартных мономов каждой степени относительно grevlex.
    Для неоднородного идеала это функция Гильберта его дилатации.
    """
    if S.order.is_degree_compatible():
        std = S.standard
    else:
        std = standard_monomials(S, MonomialOrder.grevlex())
    if not std:
        return []
    counts = [0] * (max(sum(m) for m in std) + 1)
    for m in std:
        counts[sum(m)] += 1
    return counts


def univariate_degrees(S: Scheme) -> List[int]:
    """Степени минимальных многочленов каждой переменной в k[x]/I"""
    N = quotient_dim(S)
    if N == INFINITE:
        raise InfiniteQuotientError("Минимальные многочлены определены только для 0-мерных схем")
    degrees = []
    for i in range(S.n):
        echelon = IncrementalEchelon(S.field, N)
        x = S.ring.gen(i)
        power = S.ring.one()
        d = 0
        while echelon.add(S.coordinates(power)):
            power = power * x
            d += 1
        degrees.append(d)
    return degrees


# ---- ОПЕРАЦИИ С ИДЕАЛАМИ ----
def _check_same_ring(I: Ideal, J: Ideal) -> None:
    if I.ring.field != J.ring.field or I.ring.variables != J.ring.variables:
        raise RingMismatchError(f"Идеалы из разных колец: {I.ring} и {J.ring}")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    return Ideal(I.ring, I.generators + J.generators)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    return Ideal(I.ring, tuple(f * g for f in I.generators for g in J.generators))


def ideal_power(I: Ideal, k: int) -> Ideal:
    """I^k; для мономиального идеала образующие не повторяются"""
    result = Ideal(I.ring, (I.ring.one(),))
    for _ in range(k):
        gens = []
        seen = set()
        for f in result.generators:
            for g in I.generators:
                h = f * g
                if h not in seen:
                    seen.add(h)
                    gens.append(h)
        result = Ideal(I.ring, tuple(gens))
    return result


def maximal_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, tuple(ring.gens()))


def point_ideal(ring: PolyRing, point: Sequence[int]) -> Ideal:
    """Идеал (x_1 − a_1, …, x_n − a_n) точки a"""
    return Ideal(ring, tuple(ring.gen(i) - ring.constant(a) for i, a in enumerate(point)))


def eliminate(I: Ideal, drop: Sequence[int], step_cap: Optional[int] = None) -> Ideal:
    """Пересечение I с подкольцом переменных, не входящих в drop (лексикографическое исключение)"""
    ring = I.ring
    drop = list(drop)
    keep = [i for i in range(ring.n) if i not in drop]
    B = groebner(I, MonomialOrder.lex(drop + keep), step_cap)
    sub = PolyRing(ring.field, tuple(ring.variables[i] for i in keep), ring.order)
    gens = []
    for g in B.elements:
        if all(m[i] == 0 for m in g.terms for i in drop):
            gens.append(Polynomial(sub, {tuple(m[i] for i in keep): c for m, c in g.terms.items()}))
    return Ideal(sub, tuple(gens))


def ideal_intersection(I: Ideal, J: Ideal, step_cap: Optional[int] = None) -> Ideal:
    """I ∩ J = (t·I + (1−t)·J) ∩ k[x] по методу исключения"""
    _check_same_ring(I, J)
    ring = I.ring
    name = "t"
    while name in ring.variables:
        name = "_" + name
    big = PolyRing(ring.field, (name,) + ring.variables, ring.order)
    positions = list(range(1, big.n))
    t = big.gen(0)
    gens = [t * f.change_ring(big, positions) for f in I.generators]
    gens += [(big.one() - t) * g.change_ring(big, positions) for g in J.generators]
    result = eliminate(Ideal(big, tuple(gens)), [0], step_cap)
    return Ideal(ring, tuple(Polynomial(ring, g.terms) for g in result.generators))


def ideal_of_points(ring: PolyRing, points: Iterable[Sequence[int]],
                    order: Optional[MonomialOrder] = None) -> Ideal:
    """
    Идеал приведённого набора точек (алгоритм Бухбергера–Мёллера).
    Возвращаемые образующие образуют редуцированный базис Грёбнера.
    """
    order = order or ring.order
    key = order.key
    F = ring.field
    pts = list(dict.fromkeys(tuple(p) for p in points))
    if not pts:
        return Ideal(ring, (ring.one(),))

    def values(m: Monomial) -> List[int]:
        out = []
        for p in pts:
            v = 1
            for a, e in zip(p, m):
                if e:
                    v = F.mul(v, F.pow(a, e))
            out.append(v)
        return out

    echelon = IncrementalEchelon(F, len(pts))
    standard: List[Monomial] = []
    leading: List[Monomial] = []
    gens: List[Polynomial] = []
    zero = (0,) * ring.n
    heap = [(key(zero), zero)]
    queued = {zero}
    while heap:
        _, m = heapq.heappop(heap)
        if any(mono_divides(lm, m) for lm in leading):
            continue
        v = values(m)
        coeffs = echelon.express(v)
        if coeffs is None:
            echelon.add(v)
            standard.append(m)
            for i in range(ring.n):
                child = mono_mul(m, unit_monomial(ring.n, i))
                if child not in queued:
                    queued.add(child)
                    heapq.heappush(heap, (key(child), child))
        else:
            terms = {m: 1}
            for s, c in zip(standard, coeffs):
                if c:
                    terms[s] = F.neg(c)
            gens.append(Polynomial(ring, terms))
            leading.append(m)
    logger.debug(f"Идеал {len(pts)} точек: {len(gens)} образующих")
    return Ideal(ring, tuple(gens))


def scheme_union(schemes: Sequence[Scheme], name: str = "") -> Scheme:
    """Объединение схем: пересечение их идеалов"""
    ideal = schemes[0].ideal
    for S in schemes[1:]:
        ideal = ideal_intersection(ideal, S.ideal, S.step_cap)
    return Scheme(ideal, name)
