"""
Конечная геометрия над F_q: направления (точки Gr(k,n)), аффинные k-плоскости,
координаты Плюккера и карты.

Карта задаётся множеством J из n−k индексов секущих форм:
    ℓ_a = x_a + Σ_{b∉J} c_{a,b} x_b,   a ∈ J.
Плоскость лежит в карте J тогда и только тогда, когда её координата Плюккера
на дополнении J отлична от нуля.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.config import DEFAULT_SETTINGS
from core.errors import ChartError, EnumerationCapError
from core.ff import FieldCtx
from core.linalg import determinant, rref
from core.poly import MonomialOrder, Polynomial, PolyRing

# Настройка логгера для модуля геометрии
logger = logging.getLogger("FURST.geom")

Point = Tuple[int, ...]


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Число k-мерных подпространств в F_q^n"""
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# ---- НАПРАВЛЕНИЯ ----
@dataclass(frozen=True)
class Direction:
    """k-мерное подпространство F_q^n, заданное базисом в приведённом ступенчатом виде"""
    field: FieldCtx
    n: int
    basis: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, F: FieldCtx, rows: Sequence[Sequence[int]]) -> "Direction":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("Направление должно иметь хотя бы одну строку базиса")
        n = len(rows[0])
        R, pivots = rref(np.array(rows, dtype=np.int64), F)
        if len(pivots) != len(rows):
            raise ValueError(f"Строки базиса линейно зависимы: ранг {len(pivots)} < {len(rows)}")
        return cls(F, n, tuple(tuple(int(v) for v in R[i]) for i in range(len(pivots))))

    @classmethod
    def coordinate(cls, F: FieldCtx, n: int, indices: Sequence[int]) -> "Direction":
        """Координатное подпространство span(e_i : i ∈ indices)"""
        rows = [[1 if j == i else 0 for j in range(n)] for i in sorted(indices)]
        return cls.from_rows(F, rows)

    @property
    def k(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(row) if v) for row in self.basis)

    @cached_property
    def plucker(self) -> "PluckerVector":
        return plucker(self)

    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.k, self.n)

    def contains_vector(self, v: Sequence[int]) -> bool:
        """v лежит в подпространстве"""
        F = self.field
        residual = list(v)
        for row, piv in zip(self.basis, self.pivots):
            c = residual[piv]
            if c:
                residual = [F.sub(x, F.mul(c, y)) for x, y in zip(residual, row)]
        return not any(residual)

    def label(self) -> str:
        F = self.field
        return "[" + "; ".join(" ".join(F.format(v) for v in row) for row in self.basis) + "]"

    def __str__(self) -> str:
        return self.label()


def enumerate_directions(n: int, k: int, F: FieldCtx, cap: Optional[int] = None) -> Iterator[Direction]:
    """
    Все точки Gr(k,n)(F_q): перебор множеств ведущих столбцов, затем свободных
    элементов приведённой матрицы.
    """
    if not 1 <= k < n:
        raise ValueError(f"Требуется 1 <= k < n, получено k={k}, n={n}")
    cap = cap if cap is not None else DEFAULT_SETTINGS.enumeration_cap
    total = gaussian_binomial(n, k, F.q)
    if total > cap:
        raise EnumerationCapError(f"|Gr({k},{n})(F_{F.q})| = {total} превышает лимит {cap}")
    for pivots in combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for values in product(range(F.q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield Direction(F, n, tuple(tuple(row) for row in rows))


# ---- АФФИННЫЕ ПЛОСКОСТИ ----
@dataclass(frozen=True)
class AffinePlane:
    """offset + rowspace(direction); offset имеет нули в ведущих координатах направления"""
    direction: Direction
    offset: Point

    @classmethod
    def through(cls, direction: Direction, point: Sequence[int]) -> "AffinePlane":
        F = direction.field
        offset = list(point)
        for row, piv in zip(direction.basis, direction.pivots):
            c = offset[piv]
            if c:
                offset = [F.sub(x, F.mul(c, y)) for x, y in zip(offset, row)]
        return cls(direction, tuple(offset))

    @classmethod
    def linear(cls, direction: Direction) -> "AffinePlane":
        return cls(direction, (0,) * direction.n)

    @property
    def field(self) -> FieldCtx:
        return self.direction.field

    @property
    def n(self) -> int:
        return self.direction.n

    @property
    def k(self) -> int:
        return self.direction.k

    def is_linear(self) -> bool:
        return not any(self.offset)

    def contains(self, point: Sequence[int]) -> bool:
        F = self.field
        return self.direction.contains_vector([F.sub(a, b) for a, b in zip(point, self.offset)])

    def label(self) -> str:
        return f"{self.direction.label()} + ({', '.join(self.field.format(v) for v in self.offset)})"

    def __str__(self) -> str:
        return self.label()


def enumerate_parallel(direction: Direction) -> Iterator[AffinePlane]:
    """q^{n−k} параллельных плоскостей; начинается с плоскости через начало координат"""
    F = direction.field
    free = [j for j in range(direction.n) if j not in direction.pivots]
    for values in product(range(F.q), repeat=len(free)):
        offset = [0] * direction.n
        for j, v in zip(free, values):
            offset[j] = v
        yield AffinePlane(direction, tuple(offset))


def plane_points(V: AffinePlane) -> List[Point]:
    """Все q^k точек плоскости"""
    F = V.field
    B = V.direction.matrix()
    coeffs = np.array(list(product(range(F.q), repeat=V.k)), dtype=np.int64).reshape(-1, V.k)
    pts = np.broadcast_to(np.array(V.offset, dtype=np.int64), (coeffs.shape[0], V.n)).copy()
    for r in range(V.k):
        pts = F.vadd(pts, F.vmul(coeffs[:, r:r + 1], B[r][None, :]))
    return [tuple(int(v) for v in row) for row in pts]


# ---- КООРДИНАТЫ ПЛЮККЕРА ----
@dataclass(frozen=True)
class PluckerVector:
    """Координаты p_I по k-подмножествам I в лексикографическом порядке; первая ненулевая равна 1"""
    field: FieldCtx
    n: int
    k: int
    coords: Tuple[int, ...]

    @cached_property
    def index(self) -> Dict[Tuple[int, ...], int]:
        return {I: i for i, I in enumerate(combinations(range(self.n), self.k))}

    def coord(self, subset: Sequence[int]) -> int:
        """p_I для I из 0-базных индексов"""
        return self.coords[self.index[tuple(sorted(subset))]]

    def satisfies_plucker_relation(self) -> bool:
        """Соотношение p12·p34 − p13·p24 + p14·p23 = 0 для Gr(2,4)"""
        if (self.n, self.k) != (4, 2):
            raise ValueError("Трёхчленное соотношение определено для Gr(2,4)")
        F = self.field
        p = self.coord
        value = F.mul(p((0, 1)), p((2, 3)))
        value = F.sub(value, F.mul(p((0, 2)), p((1, 3))))
        value = F.add(value, F.mul(p((0, 3)), p((1, 2))))
        return value == 0

    def __str__(self) -> str:
        F = self.field
        parts = []
        for I, v in zip(combinations(range(self.n), self.k), self.coords):
            parts.append(f"p{''.join(str(i + 1) for i in I)}={F.format(v)}")
        return ",".join(parts)


def plucker(direction: Direction) -> PluckerVector:
    """k×k миноры базисной матрицы, нормированные по первой ненулевой координате"""
    F = direction.field
    M = direction.matrix()
    coords = [determinant(M[:, list(I)], F) for I in combinations(range(direction.n), direction.k)]
    lead = next(c for c in coords if c)
    inv = F.inv(lead)
    return PluckerVector(F, direction.n, direction.k, tuple(F.mul(c, inv) for c in coords))


# ---- КАРТЫ ----
@dataclass(frozen=True)
class Chart:
    """
    Карта с секущими формами ℓ_a (a ∈ cutting) и координатами c_{a,b},
    b ∈ plane_pivots. Имя координаты c_{a,b}: "c" + номера (cutting \\ {a}) ∪ {b}.
    """
    n: int
    k: int
    cutting: Tuple[int, ...]

    def __post_init__(self):
        cutting = tuple(sorted(self.cutting))
        if len(cutting) != self.n - self.k or len(set(cutting)) != len(cutting):
            raise ChartError(f"Карта требует {self.n - self.k} различных секущих индексов, получено {self.cutting}")
        if any(not 0 <= a < self.n for a in cutting):
            raise ChartError(f"Индексы карты вне диапазона: {self.cutting}")
        object.__setattr__(self, "cutting", cutting)

    @classmethod
    def from_plane_pivots(cls, n: int, pivots: Sequence[int]) -> "Chart":
        """Карта {p_K ≠ 0} по k-подмножеству K"""
        k = len(pivots)
        return cls(n, k, tuple(a for a in range(n) if a not in pivots))

    @classmethod
    def parse(cls, text: str, n: int, k: int) -> "Chart":
        """Разбор "1,2" (номера секущих форм, с единицы)"""
        try:
            indices = [int(t) - 1 for t in text.replace(" ", "").split(",") if t]
        except ValueError:
            raise ChartError(f"Некорректная запись карты: '{text}'")
        return cls(n, k, tuple(indices))

    @property
    def plane_pivots(self) -> Tuple[int, ...]:
        return tuple(b for b in range(self.n) if b not in self.cutting)

    @cached_property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((a, b) for a in self.cutting for b in self.plane_pivots)

    @cached_property
    def variable_names(self) -> Tuple[str, ...]:
        sep = "_" if self.n >= 10 else ""
        names = []
        for a, b in self.pairs:
            subset = sorted((set(self.cutting) - {a}) | {b})
            names.append("c" + sep + sep.join(str(i + 1) for i in subset))
        return tuple(names)

    def var_index(self, a: int, b: int) -> int:
        return self.pairs.index((a, b))

    def ring(self, F: FieldCtx) -> PolyRing:
        return PolyRing(F, self.variable_names, MonomialOrder.grevlex())

    def contains(self, direction: Direction) -> bool:
        return direction.plucker.coord(self.plane_pivots) != 0

    def label(self) -> str:
        return "{" + ",".join(str(a + 1) for a in self.cutting) + "}"

    def __str__(self) -> str:
        return self.label()


def enumerate_charts(n: int, k: int) -> List[Chart]:
    return [Chart(n, k, J) for J in combinations(range(n), n - k)]


def default_chart(direction: Direction) -> Chart:
    """Карта по ведущим столбцам приведённого базиса (всегда содержит направление)"""
    return Chart.from_plane_pivots(direction.n, direction.pivots)


def chart_coordinates(direction: Direction, chart: Chart) -> Tuple[int, ...]:
    """Значения c_{a,b} направления в карте"""
    F = direction.field
    K = list(chart.plane_pivots)
    J = list(chart.cutting)
    M = direction.matrix()
    R, pivots = rref(M[:, K + J], F)
    if pivots != list(range(direction.k)):
        raise ChartError(f"Направление {direction} не лежит в карте {chart}")
    values = []
    for a, b in chart.pairs:
        r = K.index(b)
        col = direction.k + J.index(a)
        values.append(F.neg(int(R[r, col])))
    return tuple(values)


def direction_from_chart(chart: Chart, values: Sequence[int], F: FieldCtx) -> Direction:
    """Обратное отображение: строки e_b − Σ_a c_{a,b} e_a, b ∈ plane_pivots"""
    rows = []
    for b in chart.plane_pivots:
        row = [0] * chart.n
        row[b] = 1
        for a in chart.cutting:
            row[a] = F.neg(values[chart.var_index(a, b)])
        rows.append(row)
    return Direction.from_rows(F, rows)


def enumerate_chart_points(chart: Chart, F: FieldCtx) -> Iterator[Tuple[int, ...]]:
    """Все F_q-точки карты (q^{k(n−k)} штук)"""
    return product(range(F.q), repeat=len(chart.pairs))


# ---- ЛИНЕЙНЫЕ ФОРМЫ И ПАРАМЕТРИЗАЦИИ ----
def _as_plane(V) -> AffinePlane:
    return V if isinstance(V, AffinePlane) else AffinePlane.linear(V)


def plane_linear_forms(V, chart: Optional[Chart] = None, ring: Optional[PolyRing] = None) -> List[Polynomial]:
    """
    n−k аффинно-линейных форм, обращающихся в нуль ровно на V:
    ℓ_a = x_a + Σ c_{a,b} x_b − ℓ_a(offset).
    """
    V = _as_plane(V)
    F = V.field
    chart = chart or default_chart(V.direction)
    ring = ring or PolyRing.standard(F, V.n)
    values = chart_coordinates(V.direction, chart)
    forms = []
    for a in chart.cutting:
        form = ring.gen(a)
        for b in chart.plane_pivots:
            c = values[chart.var_index(a, b)]
            if c:
                form = form + ring.gen(b).scale(c)
        shift = form.evaluate(V.offset)
        if shift:
            form = form - ring.constant(shift)
        forms.append(form)
    return forms


def parameter_ring(F: FieldCtx, k: int) -> PolyRing:
    return PolyRing.standard(F, k, prefix="t")


def plane_parametrization(V, ring: Optional[PolyRing] = None) -> List[Polynomial]:
    """x = offset + Σ t_r · basis_r: n многочленов от t_1..t_k"""
    V = _as_plane(V)
    F = V.field
    ring = ring or parameter_ring(F, V.k)
    images = []
    for j in range(V.n):
        img = ring.constant(V.offset[j])
        for r, row in enumerate(V.direction.basis):
            if row[j]:
                img = img + ring.gen(r).scale(row[j])
        images.append(img)
    return images


def generic_parametrization(chart: Chart, F: FieldCtx) -> Tuple[PolyRing, List[Polynomial]]:
    """
    Параметризация плоскости общего положения карты над K[t, c]:
    x_b = t_b (b — ведущий индекс плоскости), x_a = −Σ_b c_{a,b} t_b.
    Переменные t идут первыми, порядок lex с t ≫ c.
    """
    k = chart.k
    names = tuple(f"t{r + 1}" for r in range(k)) + chart.variable_names
    ring = PolyRing(F, names, MonomialOrder.lex())
    t = {b: ring.gen(r) for r, b in enumerate(chart.plane_pivots)}
    images = []
    for j in range(chart.n):
        if j in t:
            images.append(t[j])
        else:
            img = ring.zero()
            for b in chart.plane_pivots:
                img = img - ring.gen(k + chart.var_index(j, b)) * t[b]
            images.append(img)
    return ring, images
