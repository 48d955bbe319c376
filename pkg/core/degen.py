"""
Две деградации схем: дилатация (идеал старших форм, носитель в нуле) и
генерический начальный идеал относительно борелевской подгруппы.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.borel import BorelSet, borel_violation, lambda_slice
from core.config import DEFAULT_SETTINGS
from core.errors import GinError, InfiniteQuotientError, NotHomogeneousError
from core.ff import extension_for_size
from core.gb import INFINITE, Ideal, Scheme, groebner, hilbert_function, staircase
from core.geom import AffinePlane, Direction, enumerate_directions, enumerate_parallel
from core.incidence import intersection_degree
from core.poly import Monomial, MonomialOrder, Polynomial, PolyRing, substitute, top_degree_form

# Настройка логгера для модуля деградаций
logger = logging.getLogger("FURST.degen")


# ---- ДИЛАТАЦИЯ ----
@dataclass
class DilationResult:
    original: Scheme
    degenerate: Scheme
    certificate: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "original": [str(g) for g in self.original.ideal.generators],
            "degenerate": [str(g) for g in self.degenerate.ideal.generators],
            "certificate": self.certificate,
        }


def dilate(S: Scheme) -> DilationResult:
    """
    I_0 порождается старшими формами элементов grevlex-базиса I_S.
    Проверяются |S_0| = |S| и сосредоточенность S_0 в начале координат.
    """
    N = S.degree
    if N == INFINITE:
        raise InfiniteQuotientError(f"Дилатация требует 0-мерную схему: {S.name}")
    grevlex = MonomialOrder.grevlex()
    B = S.basis if S.order == grevlex else groebner(S.ideal, grevlex, S.step_cap)
    forms = tuple(top_degree_form(g) for g in B.elements)
    ideal_0 = Ideal(S.ring, forms)
    S0 = Scheme(ideal_0, f"{S.name}_0" if S.name else "S_0", grevlex, S.step_cap)
    N0 = S0.degree
    if N0 != N:
        raise RuntimeError(f"Дилатация изменила степень: |S| = {N}, |S_0| = {N0}")

    leading = S0.basis.leading_monomials
    pure = []
    for i in range(S.n):
        powers = [lm[i] for lm in leading if lm[i] > 0 and sum(lm) == lm[i]]
        pure.append(min(powers) if powers else None)
    degree_zero = [m for m in S0.standard if sum(m) == 0]
    supported_at_origin = all(p is not None for p in pure) and len(degree_zero) == (1 if N else 0)
    certificate = {
        "degree": N,
        "degree_0": N0,
        "homogeneous": S0.is_homogeneous,
        "pure_powers": pure,
        "supported_at_origin": supported_at_origin,
        "hilbert_function": hilbert_function(S0),
    }
    logger.debug(f"Дилатация {S.name}: |S| = |S_0| = {N}")
    return DilationResult(S, S0, certificate)


def degenerate_family_check(S: Scheme) -> Dict[str, Any]:
    """
    Проверка обоих слоёв плоского семейства: |S_0| = |S| = |in(I)| и
    совпадение функций Гильберта дилатации и начального мономиального идеала.
    """
    result = dilate(S)
    grevlex = MonomialOrder.grevlex()
    B = S.basis if S.order == grevlex else groebner(S.ideal, grevlex, S.step_cap)
    initial = Scheme(B.initial_ideal(), f"in({S.name})", grevlex)
    report = {
        "degree": S.degree,
        "degree_dilation": result.degenerate.degree,
        "degree_initial": initial.degree,
        "hilbert_dilation": hilbert_function(result.degenerate),
        "hilbert_initial": hilbert_function(initial),
    }
    report["flat"] = (report["degree"] == report["degree_dilation"] == report["degree_initial"]
                      and report["hilbert_dilation"] == report["hilbert_initial"])
    return report


# ---- ЛЕММА О ДИЛАТАЦИИ ----
@dataclass
class CapDilateReport:
    scheme_name: str
    k: int
    rows: List[Dict[str, Any]] = field(default_factory=list)
    violations: List[Dict[str, Any]] = field(default_factory=list)
    degree: int = 0
    degree_0: int = 0

    @property
    def checked(self) -> int:
        return len(self.rows)

    @property
    def holds(self) -> bool:
        return not self.violations and self.degree == self.degree_0

    def to_dict(self) -> Dict[str, Any]:
        return {"scheme": self.scheme_name, "k": self.k, "checked": self.checked,
                "degree": self.degree, "degree_0": self.degree_0,
                "violations": self.violations, "holds": self.holds}


def verify_capdilate(S: Scheme, k: int, cap: Optional[int] = None) -> CapDilateReport:
    """Для каждой аффинной k-плоскости V: |S_0 ∩ V_0| >= |S ∩ V|"""
    if not 1 <= k < S.n:
        raise ValueError(f"Требуется 1 <= k < n, получено k={k}")
    result = dilate(S)
    S0 = result.degenerate
    report = CapDilateReport(S.name, k, degree=S.degree, degree_0=S0.degree)
    for direction in enumerate_directions(S.n, k, S.field, cap):
        m0 = intersection_degree(S0, AffinePlane.linear(direction))
        for V in enumerate_parallel(direction):
            m = intersection_degree(S, V)
            row = {"direction": direction.label(), "plane": V.label(), "m": m, "m0": m0}
            report.rows.append(row)
            if m0 < m:
                logger.warning(f"Нарушение |S_0 ∩ V_0| >= |S ∩ V|: {row}")
                report.violations.append(row)
    logger.debug(f"Лемма о дилатации: проверено {report.checked} плоскостей")
    return report


# ---- БОРЕЛЕВОСТЬ ----
@dataclass
class BorelCheck:
    holds: bool
    witness: Optional[Tuple[str, Monomial, Monomial]] = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self, variables: Sequence[str]) -> str:
        if self.holds:
            return "борелевское"
        kind, m, missing = self.witness
        fmt = lambda mono: "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(variables, mono) if e) or "1"
        return f"{kind}: {fmt(m)} -> {fmt(missing)} отсутствует"


def is_borel_fixed(obj: Union[Ideal, Scheme, BorelSet, Iterable[Monomial]]) -> BorelCheck:
    """
    Проверка замкнутости множества стандартных мономов относительно
    делимости и ходов x_j -> x_i (i < j). Для идеала и схемы требуется
    мономиальность; набор мономов трактуется как множество стандартных мономов.
    """
    if isinstance(obj, Scheme):
        if not obj.is_monomial:
            raise ValueError("Проверка борелевости требует мономиальный идеал")
        monomials = obj.standard
    elif isinstance(obj, Ideal):
        if not obj.is_monomial():
            raise ValueError("Проверка борелевости требует мономиальный идеал")
        leading = [next(iter(g.terms)) for g in obj.generators]
        monomials = staircase(leading, obj.ring.n)
    elif isinstance(obj, BorelSet):
        monomials = obj.monomials
    else:
        monomials = [tuple(m) for m in obj]
    violation = borel_violation(monomials)
    return BorelCheck(violation is None, violation)


def hyperplane_criterion(S: Scheme) -> Dict[str, Any]:
    """|Λ_0| против |S ∩ {x_1 = 0}| для борелевской мономиальной схемы"""
    if S.n < 2:
        raise ValueError("Критерий гиперплоскости требует n >= 2")
    check = is_borel_fixed(S)
    if not check:
        raise ValueError(f"Схема {S.name} не борелевская: {check.describe(S.ring.variables)}")
    L = BorelSet.of(S.n, S.standard, validate=False)
    slice_size = len(lambda_slice(L, 0))
    hyperplane = AffinePlane.linear(Direction.coordinate(S.field, S.n, range(1, S.n)))
    degree = intersection_degree(S, hyperplane)
    logger.debug(f"{S.name}: |Λ_0| = {slice_size}, |S∩{{x1=0}}| = {degree}")
    return {"slice_size": slice_size, "intersection_degree": degree, "holds": slice_size == degree}


# ---- ГЕНЕРИЧЕСКИЙ НАЧАЛЬНЫЙ ИДЕАЛ ----
@dataclass
class GinResult:
    input: Scheme
    gin: Scheme
    trials_used: int
    field_extension_degree: int
    seen: List[List[Monomial]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "input": [str(g) for g in self.input.ideal.generators],
            "gin": [str(g) for g in self.gin.ideal.generators],
            "degree": self.gin.degree,
            "trials_used": self.trials_used,
            "field_extension_degree": self.field_extension_degree,
            "distinct_initial_ideals": len(self.seen),
        }


def gin_order(n: int, kind: str = "lex") -> MonomialOrder:
    """Порядок x_1 ⪯ x_2 ⪯ … ⪯ x_n"""
    return MonomialOrder.ascending(n, kind)


def _random_borel_images(ring: PolyRing, rng: np.random.Generator) -> List[Polynomial]:
    """x_i -> g_ii x_i + Σ_{j>i} g_ij x_j, g_ii ≠ 0"""
    q = ring.field.q
    images = []
    for i in range(ring.n):
        img = ring.gen(i).scale(int(rng.integers(1, q)))
        for j in range(i + 1, ring.n):
            c = int(rng.integers(0, q))
            if c:
                img = img + ring.gen(j).scale(c)
        images.append(img)
    return images


def gin(S: Scheme, order: Optional[MonomialOrder] = None, trials: Optional[int] = None,
        seed: int = 0, min_field_size: Optional[int] = None) -> GinResult:
    """
    Генерический начальный идеал: случайные верхнетреугольные замены над
    расширением GF(q^e) с q^e >= min_field_size. Результат принимается, когда
    начальный идеал повторился и прошёл проверку борелевости.
    """
    n = S.n
    order = order or gin_order(n)
    if order.priority(n) != tuple(range(n - 1, -1, -1)):
        raise ValueError(f"Порядок {order} не удовлетворяет x_1 ⪯ … ⪯ x_n")
    trials = trials if trials is not None else DEFAULT_SETTINGS.gin_trials
    min_field_size = min_field_size if min_field_size is not None else DEFAULT_SETTINGS.gin_min_field_size
    N = S.degree
    if N == INFINITE:
        raise InfiniteQuotientError("gin вычисляется только для 0-мерных схем")

    F = S.field
    E = extension_for_size(F, min_field_size, seed)
    embed = F.embedding_into(E)
    ring_E = PolyRing(E, S.ring.variables, order)
    gens_E = [g.map_coefficients(ring_E, embed) for g in S.basis.elements]
    rng = np.random.default_rng(seed)
    logger.info(f"gin {S.name or 'S'}: поле {E}, порядок {order}, до {trials} попыток")

    seen: List[FrozenSet[Monomial]] = []
    for trial in range(1, trials + 1):
        images = _random_borel_images(ring_E, rng)
        moved = Ideal(ring_E, tuple(substitute(g, images) for g in gens_E))
        B = groebner(moved, order, S.step_cap)
        initial = frozenset(B.leading_monomials)
        if initial in seen:
            monomials = sorted(initial, key=order.key)
            gin_ideal = Ideal(S.ring, tuple(S.ring.monomial(m) for m in monomials))
            check = is_borel_fixed(gin_ideal)
            if not check:
                logger.warning(f"Устойчивый начальный идеал не борелевский: {check.witness}")
                raise GinError(
                    f"Устойчивый начальный идеал не борелевский ({check.witness}); "
                    f"увеличьте степень расширения",
                    [sorted(s) for s in seen], trial)
            result = Scheme(gin_ideal, f"gin({S.name})" if S.name else "gin", order)
            if result.degree != N:
                raise RuntimeError(f"gin изменил степень: {N} -> {result.degree}")
            logger.info(f"gin стабилизировался за {trial} попыток")
            return GinResult(S, result, trial, E.e // F.e, [sorted(s) for s in seen])
        seen.append(initial)
        logger.debug(f"Попытка {trial}: новый начальный идеал из {len(initial)} мономов")

    logger.warning(f"gin не стабилизировался за {trials} попыток, различных идеалов: {len(seen)}")
    raise GinError(f"gin не стабилизировался за {trials} попыток", [sorted(s) for s in seen], trials)
