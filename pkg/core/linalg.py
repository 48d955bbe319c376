"""
Точная линейная алгебра над конечным полем FieldCtx.

Матрицы — массивы numpy с кодами элементов поля; операции над строками
векторизованы через FieldCtx.vadd / vmul.
"""
import logging
from typing import List, Sequence, Tuple

import numpy as np

from core.ff import FieldCtx

# Настройка логгера для модуля линейной алгебры
logger = logging.getLogger("FURST.linalg")


def as_matrix(rows: Sequence[Sequence[int]], ncols: int = 0) -> np.ndarray:
    """Преобразует список строк в двумерный массив (пустой список допустим)"""
    if len(rows) == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(rows, dtype=np.int64).reshape(len(rows), -1)


def rref(matrix, F: FieldCtx) -> Tuple[np.ndarray, List[int]]:
    """
    Приведённый ступенчатый вид матрицы над F.

    Returns:
        (R, pivots) — матрица и список ведущих столбцов
    """
    A = np.array(matrix, dtype=np.int64, copy=True)
    if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
        return A, []
    nrows, ncols = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = F.vmul(A[r], F.inv(int(A[r, c])))
        mask = A[:, c] != 0
        mask[r] = False
        if mask.any():
            factors = A[mask, c][:, None]
            A[mask] = F.vsub(A[mask], F.vmul(factors, A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(matrix, F: FieldCtx) -> int:
    """Ранг матрицы над F"""
    A = np.asarray(matrix)
    if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    _, pivots = rref(A, F)
    return len(pivots)


def determinant(matrix, F: FieldCtx) -> int:
    """Определитель квадратной матрицы над F методом Гаусса"""
    A = np.array(matrix, dtype=np.int64, copy=True)
    n = A.shape[0]
    if n == 0:
        return 1
    det = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            A[[c, i]] = A[[i, c]]
            det = F.neg(det)
        pivot = int(A[c, c])
        det = F.mul(det, pivot)
        inv = F.inv(pivot)
        below = A[c + 1:, c] != 0
        if below.any():
            idx = np.nonzero(below)[0] + c + 1
            factors = F.vmul(A[idx, c], inv)[:, None]
            A[idx] = F.vsub(A[idx], F.vmul(factors, A[c][None, :]))
    return det


class IncrementalEchelon:
    """
    Накопитель линейно независимых векторов.

    Каждая сохранённая строка выражена через исходные векторы, поэтому для
    зависимого вектора можно восстановить коэффициенты разложения
    (используется в алгоритме Бухбергера–Мёллера).
    """

    def __init__(self, F: FieldCtx, length: int):
        self.F = F
        self.length = length
        self.rows: List[np.ndarray] = []
        self.pivots: List[int] = []
        self.combos: List[np.ndarray] = []
        self.count = 0

    def reduce(self, v: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
        """
        Returns:
            (residual, combo), где residual = v + sum(combo[i] * orig[i])
        """
        F = self.F
        residual = np.array(v, dtype=np.int64)
        combo = np.zeros(self.count, dtype=np.int64)
        for row, pivot, row_combo in zip(self.rows, self.pivots, self.combos):
            c = int(residual[pivot])
            if c == 0:
                continue
            residual = F.vsub(residual, F.vmul(row, c))
            padded = np.zeros(self.count, dtype=np.int64)
            padded[:row_combo.size] = row_combo
            combo = F.vsub(combo, F.vmul(padded, c))
        return residual, combo

    def express(self, v: Sequence[int]):
        """Коэффициенты v в базисе исходных векторов или None, если v независим"""
        residual, combo = self.reduce(v)
        if np.any(residual != 0):
            return None
        return [self.F.neg(int(c)) for c in combo]

    def add(self, v: Sequence[int]) -> bool:
        """Добавляет вектор как новый исходный; False, если он зависим"""
        residual, combo = self.reduce(v)
        nz = np.nonzero(residual)[0]
        if nz.size == 0:
            return False
        pivot = int(nz[0])
        inv = self.F.inv(int(residual[pivot]))
        full = np.zeros(self.count + 1, dtype=np.int64)
        full[:self.count] = combo
        full[self.count] = 1
        self.rows.append(self.F.vmul(residual, inv))
        self.combos.append(self.F.vmul(full, inv))
        self.pivots.append(pivot)
        self.count += 1
        return True
