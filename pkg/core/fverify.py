"""
Проверка оценок для множеств Фюрстенберга на малых примерах: конструкторы
схем, отчёты об оценке |S| через богатство направлений, шаг индукции по
размерности и поиск малых множеств.
"""
import logging
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb, factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.config import DEFAULT_SETTINGS
from core.errors import EnumerationCapError, NotHomogeneousError
from core.ff import FieldCtx, field_create
from core.gb import Ideal, Scheme, ideal_intersection, ideal_of_points
from core.geom import AffinePlane, Direction, enumerate_directions, plane_linear_forms
from core.incidence import check_furstenberg, intersection_degree, radon_transform
from core.poly import PolyRing, monomials_of_degree

# Настройка логгера для модуля проверки оценок
logger = logging.getLogger("FURST.fverify")


# ---- КОНСТРУКТОРЫ ----
def make_fat_point(n: int, d: int, F: Optional[FieldCtx] = None, cap: Optional[int] = None,
                   step_cap: Optional[int] = None) -> Scheme:
    """Толстая точка (x_1..x_n)^{d+1}; |S| = binom(d+n, n)"""
    if d < 0:
        raise ValueError("Требуется d >= 0")
    cap = cap if cap is not None else DEFAULT_SETTINGS.enumeration_cap
    if comb(d + n, n) > cap:
        raise EnumerationCapError(f"|S| = {comb(d + n, n)} превышает лимит {cap}")
    F = F or field_create(3)
    ring = PolyRing.standard(F, n)
    gens = tuple(ring.monomial(m) for m in monomials_of_degree(n, d + 1))
    return Scheme(Ideal(ring, gens), f"fat_{n}_{d}", step_cap=step_cap)


def make_rotations_union(F: FieldCtx, N: int, step_cap: Optional[int] = None) -> Scheme:
    """
    Объединение q+1 поворотов схемы (μ, ν^N) по всем прямым μ = 0 через начало
    координат в A^2; ν — координата вдоль прямой.
    """
    if N < 1:
        raise ValueError("Требуется N >= 1")
    ring = PolyRing.standard(F, 2)
    ideal = None
    for direction in enumerate_directions(2, 1, F):
        mu = plane_linear_forms(direction, ring=ring)[0]
        nu = ring.gen(direction.pivots[0])
        piece = Ideal(ring, (mu, nu ** N))
        ideal = piece if ideal is None else ideal_intersection(ideal, piece, step_cap)
    S = Scheme(ideal, f"rotations_q{F.q}_N{N}", step_cap=step_cap)
    logger.info(f"Объединение поворотов q={F.q}, N={N}: |S| = {S.degree}")
    return S


def make_point_scheme(F: FieldCtx, points: Sequence[Sequence[int]], name: str = "") -> Scheme:
    """Приведённая схема конечного набора F_q-точек"""
    n = len(points[0]) if points else 0
    ring = PolyRing.standard(F, n)
    return Scheme(ideal_of_points(ring, points), name or f"points_{len(points)}")


def random_point_scheme(F: FieldCtx, n: int, size: int, rng: np.random.Generator) -> Scheme:
    total = F.q ** n
    idx = rng.choice(total, size=min(size, total), replace=False)
    points = [tuple(int(v) for v in np.unravel_index(int(i), (F.q,) * n)) for i in sorted(idx)]
    return make_point_scheme(F, points)


def random_monomial_scheme(F: FieldCtx, n: int, max_degree: int, rng: np.random.Generator,
                           max_size: int = 20) -> Scheme:
    """Случайный 0-мерный мономиальный идеал: чистые степени плюс случайные мономы"""
    ring = PolyRing.standard(F, n)
    while True:
        gens = [ring.gen(i) ** int(rng.integers(1, max_degree + 1)) for i in range(n)]
        for _ in range(int(rng.integers(0, 4))):
            exps = tuple(int(v) for v in rng.integers(0, max_degree, size=n))
            if sum(exps):
                gens.append(ring.monomial(exps))
        S = Scheme(Ideal(ring, tuple(gens)), "random_monomial")
        if S.degree <= max_size:
            return S


# ---- ОТЧЁТ ОБ ОЦЕНКЕ ----
@dataclass
class BoundReport:
    q: int
    n: int
    k: int
    m_star: int
    N: int
    ratio: float
    refined_ratio: float
    C: float
    passed: bool
    scheme: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def refined_ratio(N: int, m: int, n: int, k: int) -> float:
    """|S| / (m^{n/k} / n!)"""
    return N / (m ** (n / k) / factorial(n))


def bound_report(S: Scheme, k: int, C: float = 1.0, cap: Optional[int] = None) -> BoundReport:
    """
    m_star = min T_{n,k}(S); ratio = |S| / m_star^{n/k}. Флаг passed — ratio >= C;
    отрицательный результат фиксируется как данные.
    """
    table = radon_transform(S, k, cap)
    m_star = table.minimum()
    N = S.degree
    if m_star <= 0:
        ratio = float("inf")
        refined = float("inf")
    else:
        ratio = N / m_star ** (S.n / k)
        refined = refined_ratio(N, m_star, S.n, k)
    report = BoundReport(S.field.q, S.n, k, m_star, N, ratio, refined, C, ratio >= C, S.name)
    logger.info(f"Оценка {S.name or 'S'}: m*={m_star}, |S|={N}, отношение {ratio:.4f}")
    return report


# ---- ИНДУКЦИЯ ПО РАЗМЕРНОСТИ ----
def _largest_b(m: int, k: int) -> int:
    b = k
    while comb(b + 1, k) <= m:
        b += 1
    return b


def _min_linear_degree(S: Scheme, dim: int, cap: Optional[int]) -> Tuple[int, Optional[Direction]]:
    if dim == S.n:
        return S.degree, None
    best, worst = None, None
    for direction in enumerate_directions(S.n, dim, S.field, cap):
        value = intersection_degree(S, AffinePlane.linear(direction))
        if best is None or value < best:
            best, worst = value, direction
    return best, worst


@dataclass
class InductionReport:
    k: int
    m: int
    b: int
    required: int
    minimum: int
    hypothesis_holds: bool
    holds: bool
    failing: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def induction_step_check(S: Scheme, k: int, b: Optional[int] = None,
                         cap: Optional[int] = None) -> InductionReport:
    """
    Если каждая k-плоскость через 0 m-богата и binom(b,k) <= m, то каждая
    (k+1)-плоскость W через 0 даёт |S∩W| >= binom(b+1, k+1).
    """
    if not S.is_homogeneous:
        raise NotHomogeneousError(f"Шаг индукции требует однородную схему: {S.name}")
    if not 1 <= k < S.n:
        raise ValueError(f"Требуется 1 <= k < n, получено k={k}")
    m, _ = _min_linear_degree(S, k, cap)
    largest = _largest_b(m, k)
    b = largest if b is None else b
    hypothesis = comb(b, k) <= m
    required = comb(b + 1, k + 1)
    minimum, witness = _min_linear_degree(S, k + 1, cap)
    holds = minimum >= required
    report = InductionReport(k, m, b, required, minimum, hypothesis, holds,
                             None if holds or witness is None else witness.label())
    if hypothesis and not holds:
        logger.warning(f"Шаг индукции нарушен: {report}")
    else:
        logger.debug(f"Шаг индукции k={k}: минимум {minimum} >= {required}")
    return report


def dimension_chain(S: Scheme, k: int, cap: Optional[int] = None) -> List[Dict[str, Any]]:
    """
    Итерация шага индукции k -> k+1 -> … -> n: на уровне j предсказание
    binom(b + j − k, j) сравнивается с минимумом |S∩W| по j-плоскостям W.
    """
    if not S.is_homogeneous:
        raise NotHomogeneousError(f"Цепочка размерностей требует однородную схему: {S.name}")
    m, _ = _min_linear_degree(S, k, cap)
    b = _largest_b(m, k)
    chain = []
    for j in range(k, S.n + 1):
        minimum, _ = _min_linear_degree(S, j, cap)
        predicted = comb(b + j - k, j)
        chain.append({"dim": j, "minimum": minimum, "predicted": predicted, "holds": minimum >= predicted})
    return chain


# ---- ПОИСК МНОЖЕСТВ ФЮРСТЕНБЕРГА ----
class IncidenceIndex:
    """Номера параллельных плоскостей каждой точки для всех направлений"""

    def __init__(self, F: FieldCtx, n: int, k: int, cap: Optional[int] = None):
        self.F = F
        self.n = n
        self.k = k
        self.points = [tuple(p) for p in product(range(F.q), repeat=n)]
        self.directions = list(enumerate_directions(n, k, F, cap))
        self.plane_ids = np.zeros((len(self.directions), len(self.points)), dtype=np.int64)
        for d, direction in enumerate(self.directions):
            ids: Dict[Tuple[int, ...], int] = {}
            for i, p in enumerate(self.points):
                key = AffinePlane.through(direction, p).offset
                self.plane_ids[d, i] = ids.setdefault(key, len(ids))
        self.planes_per_direction = F.q ** (n - k)

    def richness(self, mask: np.ndarray) -> np.ndarray:
        """Богатство каждого направления для множества точек (булев вектор)"""
        counts = np.zeros((len(self.directions), self.planes_per_direction), dtype=np.int64)
        selected = np.nonzero(mask)[0]
        for d in range(len(self.directions)):
            np.add.at(counts[d], self.plane_ids[d, selected], 1)
        return counts.max(axis=1) if len(selected) else np.zeros(len(self.directions), dtype=np.int64)

    def deficit(self, mask: np.ndarray, m: int) -> int:
        return int(np.maximum(0, m - self.richness(mask)).sum())

    def is_furstenberg(self, mask: np.ndarray, m: int) -> bool:
        return bool((self.richness(mask) >= m).all())


@dataclass
class SearchResult:
    q: int
    n: int
    k: int
    m: int
    mode: str
    found: bool
    points: List[Tuple[int, ...]] = field(default_factory=list)
    size: int = 0
    optimal: bool = False
    certified: bool = False
    evaluations: int = 0
    seconds: float = 0.0
    bound: Optional[BoundReport] = None
    message: str = ""

    def to_dict(self) -> Dict[str, Any]:
        d = dict(self.__dict__)
        d["points"] = [list(p) for p in self.points]
        d["bound"] = self.bound.to_dict() if self.bound else None
        return d


def _prune(index: IncidenceIndex, mask: np.ndarray, m: int, order: Sequence[int]) -> np.ndarray:
    """Удаляет лишние точки, пока множество остаётся множеством Фюрстенберга"""
    mask = mask.copy()
    for i in order:
        if mask[i]:
            mask[i] = False
            if not index.is_furstenberg(mask, m):
                mask[i] = True
    return mask


def _greedy(index: IncidenceIndex, m: int, rng: np.random.Generator) -> Tuple[np.ndarray, int]:
    """Жадное покрытие: добавляется точка с наибольшим уменьшением дефицита"""
    P = len(index.points)
    mask = np.zeros(P, dtype=bool)
    evaluations = 0
    current = index.deficit(mask, m)
    while current > 0:
        best_gain, best = -1, []
        for i in np.nonzero(~mask)[0]:
            mask[i] = True
            gain = current - index.deficit(mask, m)
            mask[i] = False
            evaluations += 1
            if gain > best_gain:
                best_gain, best = gain, [int(i)]
            elif gain == best_gain:
                best.append(int(i))
        choice = best[int(rng.integers(0, len(best)))]
        mask[choice] = True
        current = index.deficit(mask, m)
        logger.debug(f"Жадный шаг: точка {index.points[choice]}, дефицит {current}")
    order = np.nonzero(mask)[0][::-1]
    return _prune(index, mask, m, order), evaluations


def _random_restarts(index: IncidenceIndex, m: int, budget: int,
                     rng: np.random.Generator) -> Tuple[np.ndarray, int]:
    P = len(index.points)
    best = np.ones(P, dtype=bool)
    evaluations = 0
    for _ in range(budget):
        perm = rng.permutation(P)
        mask = np.zeros(P, dtype=bool)
        for i in perm:
            mask[i] = True
            evaluations += 1
            if index.is_furstenberg(mask, m):
                break
        mask = _prune(index, mask, m, perm)
        if mask.sum() < best.sum():
            best = mask
    return best, evaluations


@dataclass
class GeneticIndividual:
    """Индивид — булева маска подмножества F_q^n"""
    mask: np.ndarray
    fitness: float = 0.0
    size: int = 0
    deficit: int = 0


class GeneticSearch:
    """Генетический поиск малого множества Фюрстенберга"""

    def __init__(self, index: IncidenceIndex, m: int, rng: np.random.Generator,
                 population_size: int = 40, generations: int = 60,
                 mutation_rate: float = 0.1, crossover_rate: float = 0.8):
        self.index = index
        self.m = m
        self.rng = rng
        self.population_size = population_size
        self.generations = generations
        self.mutation_rate = mutation_rate
        self.crossover_rate = crossover_rate
        self.population: List[GeneticIndividual] = []
        self.best_individual: Optional[GeneticIndividual] = None
        self.evaluations = 0
        logger.info(f"Генетический поиск: популяция={population_size}, поколения={generations}")

    def initialize_population(self) -> None:
        P = len(self.index.points)
        self.population = []
        for _ in range(self.population_size):
            density = self.rng.uniform(0.3, 0.9)
            self.population.append(GeneticIndividual(mask=self.rng.random(P) < density))

    def evaluate_fitness(self, individual: GeneticIndividual) -> float:
        """Меньше точек и меньше дефицит — выше приспособленность"""
        individual.size = int(individual.mask.sum())
        individual.deficit = self.index.deficit(individual.mask, self.m)
        penalty = len(self.index.points) + 1
        individual.fitness = -(individual.size + penalty * individual.deficit)
        self.evaluations += 1
        return individual.fitness

    def selection(self) -> List[GeneticIndividual]:
        """Турнирная селекция"""
        tournament_size = 3
        selected = []
        for _ in range(self.population_size):
            idx = self.rng.choice(len(self.population), size=min(tournament_size, len(self.population)), replace=False)
            selected.append(max((self.population[i] for i in idx), key=lambda x: x.fitness))
        return selected

    def crossover(self, parent1: GeneticIndividual,
                  parent2: GeneticIndividual) -> Tuple[GeneticIndividual, GeneticIndividual]:
        """Одноточечное скрещивание"""
        if self.rng.random() > self.crossover_rate:
            return GeneticIndividual(parent1.mask.copy()), GeneticIndividual(parent2.mask.copy())
        point = int(self.rng.integers(1, len(parent1.mask)))
        child1 = np.concatenate([parent1.mask[:point], parent2.mask[point:]])
        child2 = np.concatenate([parent2.mask[:point], parent1.mask[point:]])
        return GeneticIndividual(child1), GeneticIndividual(child2)

    def mutation(self, individual: GeneticIndividual) -> None:
        """Мутация — инверсия случайных битов"""
        flips = self.rng.random(len(individual.mask)) < self.mutation_rate / 2
        individual.mask = individual.mask ^ flips

    def evolve(self) -> GeneticIndividual:
        logger.info("Начинаем эволюцию генетического поиска")
        self.initialize_population()
        for individual in self.population:
            self.evaluate_fitness(individual)
        self.best_individual = max(self.population, key=lambda x: x.fitness)

        for generation in range(self.generations):
            selected = self.selection()
            # элитизм
            new_population = [GeneticIndividual(self.best_individual.mask.copy(), self.best_individual.fitness,
                                                self.best_individual.size, self.best_individual.deficit)]
            while len(new_population) < self.population_size:
                parent1 = selected[int(self.rng.integers(0, len(selected)))]
                parent2 = selected[int(self.rng.integers(0, len(selected)))]
                child1, child2 = self.crossover(parent1, parent2)
                self.mutation(child1)
                self.mutation(child2)
                self.evaluate_fitness(child1)
                self.evaluate_fitness(child2)
                new_population.extend([child1, child2])
            self.population = new_population[:self.population_size]
            current_best = max(self.population, key=lambda x: x.fitness)
            if current_best.fitness > self.best_individual.fitness:
                self.best_individual = current_best
            if generation % 10 == 0 or generation == self.generations - 1:
                logger.info(f"Поколение {generation}: размер {self.best_individual.size}, "
                            f"дефицит {self.best_individual.deficit}")
        return self.best_individual


def _repair(index: IncidenceIndex, mask: np.ndarray, m: int) -> np.ndarray:
    """Достраивает маску до множества Фюрстенберга добавлением точек"""
    mask = mask.copy()
    for i in range(len(mask)):
        if index.is_furstenberg(mask, m):
            break
        mask[i] = True
    return mask


def search_furstenberg_sets(F: FieldCtx, n: int, k: int, m: int, mode: str = "greedy",
                            budget: int = 20, seed: int = 0, cap: Optional[int] = None,
                            max_points: Optional[int] = None, certify: bool = True) -> SearchResult:
    """
    Поиск наименьшего приведённого S ⊆ F_q^n, у которого каждое направление
    m-богато. Режимы: exhaustive (истинный минимум, q^n <= max_points),
    greedy, random (budget перезапусков), genetic (budget поколений).
    """
    start = time.time()
    max_points = max_points if max_points is not None else DEFAULT_SETTINGS.exhaustive_search_max_points
    result = SearchResult(F.q, n, k, m, mode, found=False)
    if m > F.q ** k:
        result.message = f"m = {m} > q^k = {F.q ** k}: допустимых множеств нет"
        logger.warning(result.message)
        return result

    index = IncidenceIndex(F, n, k, cap)
    rng = np.random.default_rng(seed)
    P = len(index.points)
    logger.info(f"Поиск множества Фюрстенберга: q={F.q}, n={n}, k={k}, m={m}, режим {mode}")

    if mode == "exhaustive":
        if P > max_points:
            raise EnumerationCapError(f"Полный перебор допустим при q^n <= {max_points}, получено {P}")
        best = None
        for size in range(0, P + 1):
            for subset in combinations(range(P), size):
                mask = np.zeros(P, dtype=bool)
                mask[list(subset)] = True
                result.evaluations += 1
                if index.is_furstenberg(mask, m):
                    best = mask
                    break
            if best is not None:
                break
        result.optimal = best is not None
    elif mode == "greedy":
        best, result.evaluations = _greedy(index, m, rng)
    elif mode == "random":
        best, result.evaluations = _random_restarts(index, m, budget, rng)
    elif mode == "genetic":
        ga = GeneticSearch(index, m, rng, generations=budget)
        individual = ga.evolve()
        best = _repair(index, individual.mask, m)
        best = _prune(index, best, m, rng.permutation(P))
        result.evaluations = ga.evaluations
    else:
        raise ValueError(f"Неизвестный режим поиска: {mode}")

    if best is None or not index.is_furstenberg(best, m):
        result.message = "бюджет исчерпан без допустимого множества"
        logger.warning(result.message)
        return result

    result.found = True
    result.points = [index.points[i] for i in np.nonzero(best)[0]]
    result.size = len(result.points)
    if certify:
        S = make_point_scheme(F, result.points, f"furstenberg_{mode}")
        result.certified = check_furstenberg(S, k, m, cap).holds
        if not result.certified:
            raise RuntimeError(f"Найденное множество не прошло проверку: {result.points}")
        result.bound = bound_report(S, k, cap=cap)
    result.seconds = time.time() - start
    logger.info(f"Найдено множество из {result.size} точек ({mode}), сертификат: {result.certified}")
    return result
