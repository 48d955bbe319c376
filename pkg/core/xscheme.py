"""
Схема X_{m,k}^S на картах Плюккера.

Матрица Φ̄ отображения (секущие формы) ⊗ O_S -> O_S записывается в базисе
стандартных мономов; её (N−m+1)-миноры задают X_{m,k}^S на карте.
"""
import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.config import DEFAULT_SETTINGS
from core.errors import InfiniteQuotientError, MinorExplosionError, NotHomogeneousError
from core.gb import INFINITE, Ideal, Scheme, groebner, univariate_degrees
from core.geom import Chart, direction_from_chart, enumerate_chart_points, enumerate_charts
from core.incidence import generic_intersection_degree, intersection_degree, radon_transform
from core.linalg import rank
from core.poly import Monomial, MonomialOrder, Polynomial, PolyRing

# Настройка логгера для модуля схем X_m
logger = logging.getLogger("FURST.xscheme")


# ---- МАТРИЦА КАРТЫ ----
@dataclass
class ChartMatrix:
    """
    Строки — стандартные мономы S, столбцы — пары (секущая форма a, моном β).
    Столбец (a, β) — координаты NF(ℓ_a·β) в базисе стандартных мономов.
    Элементы — аффинно-линейные многочлены от координат карты.
    """
    scheme: Scheme
    chart: Chart
    ring: PolyRing
    rows: List[Monomial]
    cols: List[Tuple[int, Monomial]]
    entries: List[List[Polynomial]]
    constant: np.ndarray
    linear: np.ndarray

    @property
    def N(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    def entry(self, row: Monomial, col: Tuple[int, Monomial]) -> Polynomial:
        return self.entries[self.rows.index(row)][self.cols.index(col)]

    def evaluate(self, point: Sequence[int]) -> np.ndarray:
        """Скалярная матрица в точке карты"""
        F = self.ring.field
        A = self.constant.copy()
        for v, value in enumerate(point):
            if value:
                A = F.vadd(A, F.vmul(self.linear[v], int(value)))
        return A

    def rank_at(self, point: Sequence[int]) -> int:
        return rank(self.evaluate(point), self.ring.field)

    def max_entry_degree(self) -> int:
        return max((e.degree() for row in self.entries for e in row), default=0)

    def generic_rank(self) -> int:
        return chart_matrix_rank_generic(self)

    def row_labels(self) -> List[str]:
        return [str(self.scheme.ring.monomial(m)) for m in self.rows]

    def col_labels(self) -> List[str]:
        return [f"(l{a + 1},{self.scheme.ring.monomial(b)})" for a, b in self.cols]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "chart": self.chart.label(),
            "chart_variables": list(self.ring.variables),
            "rows": self.row_labels(),
            "cols": self.col_labels(),
            "entries": [[str(e) for e in row] for row in self.entries],
        }


def build_chart_matrix(S: Scheme, k: int, chart: Optional[Chart] = None) -> ChartMatrix:
    """Матрица Φ̄ на карте для однородной 0-мерной схемы"""
    if S.degree == INFINITE:
        raise InfiniteQuotientError(f"Схема {S.name} не 0-мерна")
    if not S.is_homogeneous:
        raise NotHomogeneousError(f"Идеал схемы {S.name} не однороден")
    n = S.n
    chart = chart or Chart(n, k, tuple(range(n - k)))
    if chart.n != n or chart.k != k:
        raise ValueError(f"Карта {chart} не соответствует (k,n) = ({k},{n})")
    F = S.field
    ring = chart.ring(F)
    rows = list(S.standard)
    N = len(rows)
    cols = [(a, beta) for a in chart.cutting for beta in rows]
    C = len(cols)
    nvars = len(chart.pairs)

    constant = np.zeros((N, C), dtype=np.int64)
    linear = np.zeros((nvars, N, C), dtype=np.int64)
    cache: Dict[Tuple[int, Monomial], np.ndarray] = {}

    def coords(var: int, beta: Monomial) -> np.ndarray:
        key = (var, beta)
        if key not in cache:
            cache[key] = S.coordinates(S.ring.gen(var) * S.ring.monomial(beta))
        return cache[key]

    for j, (a, beta) in enumerate(cols):
        constant[:, j] = coords(a, beta)
        for b in chart.plane_pivots:
            linear[chart.var_index(a, b), :, j] = coords(b, beta)

    entries = []
    for i in range(N):
        row = []
        for j in range(C):
            terms = {(0,) * nvars: int(constant[i, j])}
            for v in range(nvars):
                if linear[v, i, j]:
                    terms[tuple(1 if u == v else 0 for u in range(nvars))] = int(linear[v, i, j])
            row.append(Polynomial(ring, terms))
        entries.append(row)
    logger.debug(f"Матрица карты {chart}: {N}x{C}")
    return ChartMatrix(S, chart, ring, rows, cols, entries, constant, linear)


def chart_matrix_rank_generic(M: ChartMatrix) -> int:
    """Ранг Φ̄ в общей точке карты: N − общая степень пересечения"""
    return M.N - generic_intersection_degree(M.scheme, M.chart)


# ---- ИДЕАЛ МИНОРОВ ----
@dataclass
class MinorIdeal:
    m: int
    size: int
    generators: List[Polynomial]
    chart: Chart
    ring: PolyRing
    matrix_N: int
    stats: Dict[str, int] = field(default_factory=dict)
    max_entry_degree: int = 1

    def ideal(self) -> Ideal:
        return Ideal(self.ring, tuple(self.generators))

    def is_identically_zero(self) -> bool:
        return not self.generators

    def groebner(self, step_cap: Optional[int] = None):
        return groebner(self.ideal(), MonomialOrder.grevlex(), step_cap)

    def vanishes_at(self, point: Sequence[int]) -> bool:
        return all(g.evaluate(point) == 0 for g in self.generators)

    def zero_set_empty(self) -> bool:
        """Пустота множества нулей над всеми расширениями: базис Грёбнера равен {1}"""
        return bool(self.generators) and self.groebner().is_unit()

    def zero_set_points(self) -> List[Tuple[int, ...]]:
        F = self.ring.field
        return [tuple(p) for p in enumerate_chart_points(self.chart, F) if self.vanishes_at(p)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "size": self.size,
            "chart": self.chart.label(),
            "generators": [str(g) for g in self.generators],
            "stats": self.stats,
        }


def _has_perfect_matching(rows: Sequence[int], cols: Sequence[int], support: set) -> bool:
    match: Dict[int, int] = {}

    def augment(r: int, visited: set) -> bool:
        for c in cols:
            if (r, c) in support and c not in visited:
                visited.add(c)
                if c not in match or augment(match[c], visited):
                    match[c] = r
                    return True
        return False

    return all(augment(r, set()) for r in rows)


def minor_work(M: ChartMatrix, m: int) -> int:
    s = M.N - m + 1
    rows = [i for i in range(M.N) if any(not e.is_zero() for e in M.entries[i])]
    cols = [j for j in range(len(M.cols)) if any(not M.entries[i][j].is_zero() for i in range(M.N))]
    return comb(len(rows), s) * comb(len(cols), s)


def minor_ideal(M: ChartMatrix, m: int, cap: Optional[int] = None) -> MinorIdeal:
    """
    Все (N−m+1)-миноры Φ̄ без структурно нулевых (нулевые строки и столбцы,
    отсутствие полного паросочетания в носителе). Определители — разложение
    Лапласа с мемоизацией по оставшимся столбцам. Пропорциональные миноры
    остаются одной образующей.
    """
    N = M.N
    if not 1 <= m <= N:
        raise ValueError(f"Требуется 1 <= m <= N = {N}, получено m={m}")
    cap = cap if cap is not None else DEFAULT_SETTINGS.minor_work_cap
    s = N - m + 1
    entries = M.entries
    rows_nz = [i for i in range(N) if any(not e.is_zero() for e in entries[i])]
    cols_nz = [j for j in range(len(M.cols)) if any(not entries[i][j].is_zero() for i in range(N))]
    work = comb(len(rows_nz), s) * comb(len(cols_nz), s)
    if work > cap:
        raise MinorExplosionError(f"Объём вычисления {s}x{s}-миноров {work} превышает лимит {cap}", work)
    support = {(i, j) for i in rows_nz for j in cols_nz if not entries[i][j].is_zero()}
    ring = M.ring
    grevlex = MonomialOrder.grevlex()

    stats = {"total": comb(N, s) * comb(len(M.cols), s), "evaluated": 0,
             "structural_zero": 0, "identically_zero": 0}
    generators: List[Polynomial] = []
    seen = set()
    for R in combinations(rows_nz, s):
        memo: Dict[Tuple[int, ...], Polynomial] = {}

        def det(depth: int, cols: Tuple[int, ...]) -> Polynomial:
            if depth == s:
                return ring.one()
            if cols in memo:
                return memo[cols]
            total = ring.zero()
            r = R[depth]
            for idx, c in enumerate(cols):
                e = entries[r][c]
                if e.is_zero():
                    continue
                sub = det(depth + 1, cols[:idx] + cols[idx + 1:])
                if sub.is_zero():
                    continue
                term = e * sub
                total = total + term if idx % 2 == 0 else total - term
            memo[cols] = total
            return total

        for Cc in combinations(cols_nz, s):
            if not _has_perfect_matching(R, Cc, support):
                stats["structural_zero"] += 1
                continue
            stats["evaluated"] += 1
            d = det(0, Cc)
            if d.is_zero():
                stats["identically_zero"] += 1
                continue
            monic = d.monic(grevlex)
            if monic not in seen:
                seen.add(monic)
                generators.append(monic)
    logger.debug(f"Миноры {s}x{s} (m={m}) на карте {M.chart}: {len(generators)} образующих, {stats}")
    return MinorIdeal(m, s, generators, M.chart, ring, N, stats, max(M.max_entry_degree(), 0))


def is_rich_via_rank(M: ChartMatrix, point: Sequence[int], m: int) -> bool:
    """rank Φ̄(point) <= N − m"""
    return M.rank_at(point) <= M.N - m


def minimum_rank(M: ChartMatrix, cap: Optional[int] = None) -> int:
    """
    Наибольшее r, при котором rank Φ̄ >= r во всех точках карты над всеми
    расширениями: идеал r×r-миноров единичный.
    """
    generic = M.generic_rank()
    r = 0
    while r < generic and minor_ideal(M, M.N - r, cap).zero_set_empty():
        r += 1
    return r


# ---- КРИТЕРИЙ X = Gr ----
@dataclass
class GrassmannianReport:
    m: int
    k: int
    equal: bool
    chart_degrees: Dict[str, int]
    explicit_checked: bool = False
    explicit_zero: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def grassmannian_report(S: Scheme, m: int, k: int, cap: Optional[int] = None,
                        explicit: bool = True) -> GrassmannianReport:
    """
    X_{m,k}^S = Gr(k,n) на каждой карте: общая степень пересечения >= m,
    что равносильно тождественному обращению в нуль всех (N−m+1)-миноров.
    Явные миноры сверяются, когда укладываются в лимит.
    """
    if not S.is_homogeneous:
        raise NotHomogeneousError(f"Идеал схемы {S.name} не однороден")
    N = S.degree
    if N == INFINITE:
        raise InfiniteQuotientError(f"Схема {S.name} не 0-мерна")
    degrees = {}
    for chart in enumerate_charts(S.n, k):
        degrees[chart.label()] = generic_intersection_degree(S, chart)
    if len(set(degrees.values())) != 1:
        raise RuntimeError(f"Общие степени различаются по картам: {degrees}")
    generic = next(iter(degrees.values()))
    equal = generic >= m
    report = GrassmannianReport(m, k, equal, degrees)

    if explicit and 1 <= m <= N:
        cap = cap if cap is not None else DEFAULT_SETTINGS.minor_work_cap
        M = build_chart_matrix(S, k)
        if minor_work(M, m) <= cap:
            J = minor_ideal(M, m, cap)
            report.explicit_checked = True
            report.explicit_zero = J.is_identically_zero()
            if report.explicit_zero != equal:
                raise RuntimeError(f"Явные миноры ({report.explicit_zero}) расходятся с общей степенью ({equal})")
        else:
            logger.debug(f"Явные миноры m={m} пропущены: объём больше {cap}")
    return report


def x_equals_grassmannian(S: Scheme, m: int, k: int, cap: Optional[int] = None) -> bool:
    return grassmannian_report(S, m, k, cap).equal


@dataclass
class EqualityBound:
    m: int
    k: int
    n: int
    b: int
    bound: int
    asymptotic: float

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def bound_from_equality(m: int, k: int, n: int) -> EqualityBound:
    """
    |S| >= binom(b + n − k, n) для наибольшего b с binom(b, k) <= m;
    asymptotic = (k!·m)^{n/k} / n!.
    """
    if m < 1:
        raise ValueError("Требуется m >= 1")
    b = k
    while comb(b + 1, k) <= m:
        b += 1
    bound = comb(b + n - k, n)
    asymptotic = (factorial(k) * m) ** (n / k) / factorial(n)
    return EqualityBound(m, k, n, b, bound, asymptotic)


# ---- ПОРЯДКИ ОБРАЩЕНИЯ В НУЛЬ И СТЕПЕНИ ----
def vanishing_order_at(J: MinorIdeal, point: Sequence[int]) -> float:
    """Минимальный по образующим порядок обращения в нуль; math.inf для нулевого идеала"""
    order = math.inf
    for g in J.generators:
        value = g.translate(point).order_at_origin()
        order = min(order, value)
        if order == 0:
            break
    return order


def homogenize_plucker(g: Polynomial, chart: Chart) -> Polynomial:
    """
    g(c) -> p_J^{deg g}·g(p/p_J): координата карты c_K есть p_K / p_J, где
    p_J отвечает секущему набору карты.
    """
    ring = g.ring
    pivot = "p" + "".join(str(a + 1) for a in chart.cutting)
    ring_p = PolyRing(ring.field, (pivot,) + tuple("p" + v[1:] for v in ring.variables))
    d = g.degree()
    return Polynomial(ring_p, {(d - sum(m),) + tuple(m): c for m, c in g.terms.items()})


def minor_degree_stats(J: MinorIdeal) -> Dict[str, Any]:
    """Максимальная степень образующих на карте и после гомогенизации по Плюккеру"""
    chart_degree = max((g.degree() for g in J.generators), default=0)
    forms = [homogenize_plucker(g, J.chart) for g in J.generators]
    plucker_degree = max((h.degree() for h in forms), default=0)
    ratio = chart_degree / J.size if J.size else 0.0
    return {
        "m": J.m,
        "size": J.size,
        "chart_degree": chart_degree,
        "plucker_degree": plucker_degree,
        "plucker_homogeneous": all(h.is_homogeneous() for h in forms),
        "ratio": ratio,
        "entry_bound_holds": chart_degree <= J.size * J.max_entry_degree,
    }


# ---- ПРОВЕРКИ В ТОЧКАХ КАРТЫ ----
@dataclass
class PointCheckReport:
    chart: str
    checked: int = 0
    disagreements: List[Dict[str, Any]] = field(default_factory=list)
    skipped_m: List[int] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> Dict[str, Any]:
        return {"chart": self.chart, "checked": self.checked, "holds": self.holds,
                "disagreements": self.disagreements, "skipped_m": self.skipped_m}


def _minor_ideals(M: ChartMatrix, cap: Optional[int], report: PointCheckReport) -> Dict[int, MinorIdeal]:
    ideals = {}
    for m in range(1, M.N + 1):
        try:
            ideals[m] = minor_ideal(M, m, cap)
        except MinorExplosionError as e:
            logger.warning(f"m={m} пропущено: {e}")
            report.skipped_m.append(m)
    return ideals


def three_way_check(S: Scheme, k: int, chart: Optional[Chart] = None,
                    cap: Optional[int] = None) -> PointCheckReport:
    """
    В каждой F_q-точке карты и для каждого m:
    миноры обращаются в нуль ⟺ rank <= N − m ⟺ |S∩V| >= m.
    """
    M = build_chart_matrix(S, k, chart)
    report = PointCheckReport(M.chart.label())
    ideals = _minor_ideals(M, cap, report)
    F = S.field
    for point in enumerate_chart_points(M.chart, F):
        r = M.rank_at(point)
        degree = intersection_degree(S, direction_from_chart(M.chart, point, F))
        for m, J in ideals.items():
            report.checked += 1
            minors = J.vanishes_at(point)
            by_rank = r <= M.N - m
            by_degree = degree >= m
            if not (minors == by_rank == by_degree):
                report.disagreements.append({"point": list(point), "m": m, "minors": minors,
                                             "rank": by_rank, "degree": by_degree})
    logger.info(f"Трёхстороннее сравнение на карте {M.chart}: {report.checked} проверок, "
                f"расхождений {len(report.disagreements)}")
    return report


def local_structure_check(S: Scheme, k: int, chart: Optional[Chart] = None,
                          cap: Optional[int] = None) -> PointCheckReport:
    """
    В каждой m-богатой F_q-точке карты: порядок обращения в нуль J_{X_ℓ}
    не меньше m − ℓ + 1 для всех ℓ <= m.
    """
    M = build_chart_matrix(S, k, chart)
    report = PointCheckReport(M.chart.label())
    ideals = _minor_ideals(M, cap, report)
    F = S.field
    for point in enumerate_chart_points(M.chart, F):
        richness = M.N - M.rank_at(point)
        for level, J in ideals.items():
            if level > richness:
                continue
            report.checked += 1
            order = vanishing_order_at(J, point)
            if order < richness - level + 1:
                report.disagreements.append({"point": list(point), "m": richness, "l": level, "order": order})
    logger.info(f"Локальная структура на карте {M.chart}: {report.checked} проверок, "
                f"нарушений {len(report.disagreements)}")
    return report


def chain_property_holds(M: ChartMatrix, cap: Optional[int] = None) -> bool:
    """Нули J_{X_{m+1}} содержатся в нулях J_{X_m} на F_q-точках карты"""
    F = M.ring.field
    ideals = {m: minor_ideal(M, m, cap) for m in range(1, M.N + 1)}
    for point in enumerate_chart_points(M.chart, F):
        for m in range(1, M.N):
            if ideals[m + 1].vanishes_at(point) and not ideals[m].vanishes_at(point):
                return False
    return True


def ci_probe(S: Scheme, k: int, cap: Optional[int] = None) -> Dict[str, Any]:
    """
    Эксперимент к вопросу о полных пересечениях: Q = максимальная степень
    минимального многочлена переменной и |Σ_{m,k}^S| для каждого m.
    """
    degrees = univariate_degrees(S)
    table = radon_transform(S, k, cap)
    N = S.degree
    counts = {m: len(table.rich(m)) for m in range(1, N + 1)}
    return {
        "scheme": S.name,
        "degree": N,
        "univariate_degrees": degrees,
        "Q": max(degrees) if degrees else 0,
        "directions": len(table),
        "rich_counts": counts,
    }
