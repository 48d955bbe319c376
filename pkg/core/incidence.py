"""
Степени пересечения |S∩V|, богатые направления, преобразование Радона
T_{n,k}(S) и эксперименты с неравенством ограничения.
"""
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import pandas as pd

from core.errors import InfiniteQuotientError
from core.ff import FieldCtx
from core.gb import INFINITE, Ideal, Scheme, groebner, ideal_intersection, ideal_power, point_ideal, staircase
from core.geom import (
    AffinePlane, Chart, Direction, Point, enumerate_directions, enumerate_parallel,
    gaussian_binomial, generic_parametrization, parameter_ring, plane_linear_forms,
    plane_parametrization, plane_points,
)
from core.poly import PolyRing, substitute

# Настройка логгера для модуля инцидентности
logger = logging.getLogger("FURST.incidence")


# ---- СТЕПЕНЬ ПЕРЕСЕЧЕНИЯ ----
def _degree_or_fail(S: Scheme) -> int:
    N = S.degree
    if N == INFINITE:
        raise InfiniteQuotientError(f"Пересечение {S.name} бесконечномерно")
    return N


def intersection_degree(S: Scheme, V: Union[AffinePlane, Direction], route: str = "substitute") -> int:
    """
    |S∩V| = dim k[t_1..t_k]/(I_S ∘ параметризация V).
    route="forms" считает dim k[x]/(I_S + (ℓ_1..ℓ_{n−k})); оба способа совпадают.
    """
    V = V if isinstance(V, AffinePlane) else AffinePlane.linear(V)
    if route == "forms":
        return intersection_degree_via_forms(S, V)
    if route != "substitute":
        raise ValueError(f"Неизвестный способ вычисления: {route}")
    ring_t = parameter_ring(S.field, V.k)
    images = plane_parametrization(V, ring_t)
    gens = tuple(substitute(f, images) for f in S.basis.elements)
    return _degree_or_fail(Scheme(Ideal(ring_t, gens), step_cap=S.step_cap))


def intersection_degree_via_forms(S: Scheme, V: AffinePlane) -> int:
    forms = plane_linear_forms(V, ring=S.ring)
    ideal = Ideal(S.ring, S.basis.elements + tuple(forms))
    return _degree_or_fail(Scheme(ideal, order=S.order, step_cap=S.step_cap))


def generic_intersection_degree(S: Scheme, chart: Chart) -> int:
    """
    Степень S ∩ V для плоскости общего положения карты (через начало координат).

    Базис Грёбнера в K[t, c] для порядка lex с t ≫ c является базисом над
    полем K(c); степень равна числу t-стандартных мономов. Элемент из K[c]
    означает пустое общее пересечение.
    """
    ring, images = generic_parametrization(chart, S.field)
    gens = tuple(substitute(f, images) for f in S.basis.elements)
    B = groebner(Ideal(ring, gens), ring.order, S.step_cap)
    k = chart.k
    t_parts = []
    for lm in B.leading_monomials:
        t_part = lm[:k]
        if sum(t_part) == 0:
            logger.debug(f"Общее пересечение в карте {chart} пусто")
            return 0
        t_parts.append(t_part)
    degree = len(staircase(t_parts, k))
    logger.debug(f"Общая степень пересечения в карте {chart}: {degree}")
    return degree


# ---- ТАБЛИЦА ИНЦИДЕНТНОСТИ ----
@dataclass
class IncidenceTable:
    """
    T_{n,k}(S): направление -> (лучшая плоскость, богатство).
    rows — необязательная полная таблица (направление, плоскость, степень).
    """
    scheme_name: str
    n: int
    k: int
    q: int
    scheme_degree: int
    values: Dict[Direction, int] = field(default_factory=dict)
    best: Dict[Direction, AffinePlane] = field(default_factory=dict)
    rows: List[Tuple[Direction, AffinePlane, int]] = field(default_factory=list)

    def __getitem__(self, direction: Direction) -> int:
        return self.values[direction]

    def __len__(self) -> int:
        return len(self.values)

    def directions(self) -> List[Direction]:
        return list(self.values)

    def rich(self, m: int) -> List[Direction]:
        return [d for d, v in self.values.items() if v >= m]

    def minimum(self) -> int:
        return min(self.values.values())

    def to_dataframe(self, full: bool = False) -> pd.DataFrame:
        """CSV-совместимая таблица: direction_id, plucker, richness (или построчно по плоскостям)"""
        ids = {d: i for i, d in enumerate(self.values)}
        if full and self.rows:
            records = [{
                "direction_id": ids[d],
                "direction": d.label(),
                "plucker": str(d.plucker),
                "plane": V.label(),
                "degree": deg,
            } for d, V, deg in self.rows]
            return pd.DataFrame.from_records(records)
        records = [{
            "direction_id": ids[d],
            "direction": d.label(),
            "plucker": str(d.plucker),
            "richness": v,
            "best_plane": self.best[d].label() if d in self.best else "",
        } for d, v in self.values.items()]
        return pd.DataFrame.from_records(records, columns=["direction_id", "direction", "plucker", "richness", "best_plane"])

    def to_dict(self) -> Dict:
        return {
            "scheme": self.scheme_name,
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "degree": self.scheme_degree,
            "directions": [
                {"direction": d.label(), "plucker": str(d.plucker), "richness": v}
                for d, v in self.values.items()
            ],
        }


def incidence_table(S: Scheme, k: int, full: bool = False, cap: Optional[int] = None,
                    route: str = "substitute") -> IncidenceTable:
    """
    Полный перебор направлений и параллельных плоскостей. Для однородного S
    носитель — начало координат: считается только плоскость через 0, прочие
    плоскости класса получают 0.
    """
    N = _degree_or_fail(S)
    F = S.field
    homogeneous = S.is_homogeneous
    table = IncidenceTable(S.name, S.n, k, F.q, N)
    logger.info(f"Таблица инцидентности {S.name or 'S'}: n={S.n}, k={k}, q={F.q}, |S|={N}")
    for direction in enumerate_directions(S.n, k, F, cap):
        best_value, best_plane = -1, None
        for V in enumerate_parallel(direction):
            if homogeneous and not V.is_linear():
                if full:
                    table.rows.append((direction, V, 0))
                continue
            value = intersection_degree(S, V, route)
            if full:
                table.rows.append((direction, V, value))
            if value > best_value:
                best_value, best_plane = value, V
        table.values[direction] = best_value
        table.best[direction] = best_plane
    logger.debug(f"Значения T: {sorted(table.values.values())}")
    return table


def radon_transform(S: Scheme, k: int, cap: Optional[int] = None) -> IncidenceTable:
    """T_{n,k}(S)(ω) = max по плоскостям V ∥ ω степени |S∩V|"""
    return incidence_table(S, k, full=False, cap=cap)


def rich_directions(S: Scheme, m: int, k: int, cap: Optional[int] = None) -> List[Direction]:
    """Σ_{m,k}^S: направления с m-богатой параллельной плоскостью"""
    return radon_transform(S, k, cap).rich(m)


@dataclass
class FurstenbergCheck:
    holds: bool
    failing_direction: Optional[Direction] = None
    failing_value: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds


def check_furstenberg(S: Scheme, k: int, m: int, cap: Optional[int] = None) -> FurstenbergCheck:
    """Каждое направление m-богато; возвращает первое нарушающее направление"""
    if m <= 0:
        return FurstenbergCheck(True)
    F = S.field
    homogeneous = S.is_homogeneous
    for direction in enumerate_directions(S.n, k, F, cap):
        best = 0
        for V in enumerate_parallel(direction):
            if homogeneous and not V.is_linear():
                continue
            best = max(best, intersection_degree(S, V))
            if best >= m:
                break
        if best < m:
            logger.debug(f"Направление {direction} не {m}-богато: максимум {best}")
            return FurstenbergCheck(False, direction, best)
    return FurstenbergCheck(True)


# ---- ПРИВЕДЁННЫЕ НАБОРЫ ТОЧЕК ----
def point_set_richness(points: Iterable[Point], direction: Direction) -> int:
    """max по параллельным плоскостям числа точек набора на плоскости"""
    counts: Dict[Point, int] = {}
    for p in points:
        key = AffinePlane.through(direction, p).offset
        counts[key] = counts.get(key, 0) + 1
    return max(counts.values(), default=0)


# ---- ФОРМАЛЬНЫЕ ОБЪЕДИНЕНИЯ ТОЛСТЫХ ТОЧЕК ----
def integer_root(value: int, k: int) -> int:
    """⌊value^{1/k}⌋ в целых числах"""
    if value <= 0:
        return 0
    d = int(round(value ** (1.0 / k)))
    while d ** k > value:
        d -= 1
    while (d + 1) ** k <= value:
        d += 1
    return d


@dataclass(frozen=True)
class FormalFatUnion:
    """Объединение толстых точек m_x^{d_x} с попарно различными носителями"""
    field: FieldCtx
    n: int
    points: Tuple[Tuple[Point, int], ...]
    weights: Tuple[Tuple[Point, int], ...] = ()

    def __post_init__(self):
        supports = [p for p, _ in self.points]
        if len(set(supports)) != len(supports):
            raise ValueError("Носители толстых точек должны быть различны")
        if any(d < 1 for _, d in self.points):
            raise ValueError("Толщина толстой точки должна быть >= 1")

    def size(self) -> int:
        """|S_f| = Σ binom(d_x − 1 + n, n)"""
        return sum(comb(d - 1 + self.n, self.n) for _, d in self.points)

    def incidence(self, V: AffinePlane) -> int:
        """Σ_{x ∈ V} binom(d_x − 1 + k', k')"""
        return sum(comb(d - 1 + V.k, V.k) for p, d in self.points if V.contains(p))

    def weight_sum(self, V: AffinePlane) -> int:
        """Σ_{v ∈ V} f(v) для исходной функции"""
        return sum(w for p, w in self.weights if V.contains(p))

    def radon(self, k: int, cap: Optional[int] = None) -> Dict[Direction, int]:
        result = {}
        for direction in enumerate_directions(self.n, k, self.field, cap):
            result[direction] = max(self.incidence(V) for V in enumerate_parallel(direction))
        return result

    def materialize(self, ring: Optional[PolyRing] = None, name: str = "") -> Scheme:
        """Идеал объединения: пересечение степеней идеалов точек"""
        ring = ring or PolyRing.standard(self.field, self.n)
        ideal = None
        for p, d in self.points:
            fat = ideal_power(point_ideal(ring, p), d)
            ideal = fat if ideal is None else ideal_intersection(ideal, fat)
        if ideal is None:
            ideal = Ideal(ring, (ring.one(),))
        return Scheme(ideal, name or "fat_union")


def fat_union(f: Mapping[Point, int], k: int, F: FieldCtx, n: Optional[int] = None) -> FormalFatUnion:
    """Толщина d_x = ⌊f(x)^{1/k}⌋ в каждой точке с f(x) >= 1"""
    if any(v < 0 for v in f.values()):
        raise ValueError("Функция f должна быть неотрицательной")
    if n is None:
        n = len(next(iter(f))) if f else 0
    points = []
    weights = []
    for p in sorted(f):
        value = f[p]
        if value >= 1:
            points.append((tuple(p), integer_root(value, k)))
            weights.append((tuple(p), value))
    return FormalFatUnion(F, n, tuple(points), tuple(weights))


# ---- НЕРАВЕНСТВО ОГРАНИЧЕНИЯ ----
@dataclass
class RestrictionSides:
    lhs: float
    rhs: float
    n: int
    k: int
    q: int
    size: int
    values: List[int]

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1 + 1e-9)

    def to_dict(self) -> Dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "n": self.n, "k": self.k, "q": self.q,
                "size": self.size, "holds": self.holds, "values": self.values}


def restriction_sides(obj: Union[Scheme, FormalFatUnion], k: int, cap: Optional[int] = None) -> RestrictionSides:
    """
    lhs = (Σ_ω T(ω)^n)^{1/n}, rhs = |Gr(k,n)(F_q)|^{1/n} · |S|^{k/n}.
    """
    if isinstance(obj, FormalFatUnion):
        values = list(obj.radon(k, cap).values())
        size = obj.size()
        n, q = obj.n, obj.field.q
    else:
        values = list(radon_transform(obj, k, cap).values.values())
        size = _degree_or_fail(obj)
        n, q = obj.n, obj.field.q
    lhs = sum(float(v) ** n for v in values) ** (1.0 / n)
    rhs = gaussian_binomial(n, k, q) ** (1.0 / n) * float(size) ** (k / n)
    logger.info(f"Неравенство ограничения: lhs={lhs:.6f}, rhs={rhs:.6f}")
    return RestrictionSides(lhs, rhs, n, k, q, size, values)


def lower_bound_observation(size: int, q: int, n: int, c: float) -> float:
    """Отношение |S| / ((1/4)·q^{c+(n−1)/2}); наблюдение, не утверждение"""
    return size / (0.25 * q ** (c + (n - 1) / 2))
