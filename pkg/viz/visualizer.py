import logging
import os
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
import plotly.graph_objects as go
from plotly.subplots import make_subplots

from core.fverify import BoundReport
from core.incidence import IncidenceTable, RestrictionSides

# Настройка логгера для модуля визуализации
logger = logging.getLogger("FURST.visualizer")

COLORS = ['blue', 'red', 'green', 'orange', 'purple', 'brown', 'pink', 'gray']


def create_radon_figure(table: IncidenceTable, m: Optional[int] = None) -> go.Figure:
    """
    Гистограмма богатства по направлениям и распределение значений T(ω).
    Порог m, если задан, отмечается линией.
    """
    logger.info(f"Создание графика преобразования Радона для {table.scheme_name or 'S'}")
    labels = [d.label() for d in table.values]
    values = list(table.values.values())

    fig = make_subplots(
        rows=2, cols=1,
        subplot_titles=("Richness per direction", "Distribution of T(ω)"),
        vertical_spacing=0.15
    )
    colors = [COLORS[1] if m is not None and v < m else COLORS[0] for v in values]
    fig.add_trace(go.Bar(x=list(range(len(values))), y=values, marker_color=colors,
                         hovertext=labels, name="T(ω)"), row=1, col=1)
    if m is not None:
        fig.add_hline(y=m, line_dash="dash", line_color="gray", row=1, col=1)

    counts = np.bincount(np.asarray(values, dtype=np.int64)) if values else np.zeros(0, dtype=np.int64)
    fig.add_trace(go.Bar(x=list(range(len(counts))), y=counts.tolist(), marker_color=COLORS[2],
                         name="count"), row=2, col=1)

    fig.update_layout(
        title=f"Radon transform T_{{{table.n},{table.k}}} over GF({table.q}), |S| = {table.scheme_degree}",
        height=600,
        margin=dict(l=0, r=0, b=0, t=50),
        template="plotly_white",
        showlegend=False
    )
    fig.update_xaxes(title_text="Direction", row=1, col=1)
    fig.update_xaxes(title_text="Richness", row=2, col=1)
    fig.update_yaxes(title_text="T(ω)", row=1, col=1)
    fig.update_yaxes(title_text="Directions", row=2, col=1)
    return fig


def create_restriction_figure(sides: Sequence[RestrictionSides], labels: Optional[Sequence[str]] = None) -> go.Figure:
    """Левая и правая части неравенства ограничения по набору объектов"""
    logger.info(f"Создание графика неравенства ограничения: {len(sides)} объектов")
    labels = list(labels) if labels else [f"#{i}" for i in range(len(sides))]
    fig = go.Figure()
    fig.add_trace(go.Bar(x=labels, y=[s.lhs for s in sides], name="(Σ T^n)^{1/n}", marker_color=COLORS[0]))
    fig.add_trace(go.Bar(x=labels, y=[s.rhs for s in sides], name="|Gr|^{1/n}·|S|^{k/n}", marker_color=COLORS[3]))
    fig.update_layout(
        title="Restriction inequality",
        barmode="group",
        height=450,
        margin=dict(l=0, r=0, b=0, t=50),
        template="plotly_white"
    )
    return fig


def create_staircase_figure(monomials: Iterable[Sequence[int]], variables: Sequence[str] = ("x1", "x2", "x3")) -> go.Figure:
    """Лестница стандартных мономов: точки решётки для n = 2 или 3"""
    points = [tuple(m) for m in monomials]
    n = len(points[0]) if points else 2
    if n not in (2, 3):
        raise ValueError(f"Лестница рисуется только для n = 2 или 3, получено n={n}")
    logger.info(f"Создание графика лестницы из {len(points)} мономов")
    arr = np.asarray(points, dtype=np.int64).reshape(-1, n)
    degrees = arr.sum(axis=1)
    if n == 2:
        fig = go.Figure(go.Scatter(x=arr[:, 0], y=arr[:, 1], mode="markers",
                                   marker=dict(size=14, color=degrees, colorscale="Viridis", symbol="square")))
        fig.update_xaxes(title_text=variables[0], dtick=1)
        fig.update_yaxes(title_text=variables[1], dtick=1)
    else:
        fig = go.Figure(go.Scatter3d(x=arr[:, 0], y=arr[:, 1], z=arr[:, 2], mode="markers",
                                     marker=dict(size=6, color=degrees, colorscale="Viridis", symbol="square")))
        fig.update_layout(scene=dict(xaxis_title=variables[0], yaxis_title=variables[1],
                                     zaxis_title=variables[2], aspectmode="data"))
    fig.update_layout(title=f"Staircase ({len(points)} standard monomials)",
                      height=500, margin=dict(l=0, r=0, b=0, t=50), template="plotly_white")
    return fig


def create_bound_figure(reports: Sequence[BoundReport]) -> go.Figure:
    """|S| против m*^{n/k} по отчётам об оценке, с диагональю отношения C"""
    logger.info(f"Создание графика оценки: {len(reports)} отчётов")
    xs = [r.m_star ** (r.n / r.k) for r in reports]
    ys = [r.N for r in reports]
    text = [r.scheme or f"q={r.q}" for r in reports]
    fig = go.Figure()
    fig.add_trace(go.Scatter(x=xs, y=ys, mode="markers+text", text=text, textposition="top center",
                             marker=dict(size=9, color=[COLORS[0] if r.passed else COLORS[1] for r in reports]),
                             name="schemes"))
    if reports:
        top = max(xs + [1.0])
        C = reports[0].C
        fig.add_trace(go.Scatter(x=[0, top], y=[0, C * top], mode="lines",
                                 line=dict(color="gray", dash="dash"), name=f"|S| = {C}·m^{{n/k}}"))
    fig.update_layout(title="Size versus richness", height=500,
                      margin=dict(l=0, r=0, b=0, t=50), template="plotly_white")
    fig.update_xaxes(title_text="m*^{n/k}")
    fig.update_yaxes(title_text="|S|")
    return fig


def show_visualization(fig: go.Figure, path: str, open_browser: bool = False) -> str:
    """Записывает фигуру в HTML-файл; при open_browser открывает его"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    plotly_config = {
        "scrollZoom": True,
        "displaylogo": False,
        "displayModeBar": True,
        "responsive": True
    }
    # PlotlyJS из CDN, чтобы ускорить запись HTML
    fig.write_html(path, auto_open=False, config=plotly_config, include_plotlyjs='cdn', full_html=True)
    logger.info(f"Визуализация записана: {path}")
    if open_browser:
        try:
            import webbrowser
            webbrowser.open(f"file://{os.path.abspath(path)}")
        except Exception as browser_error:
            logger.warning(f"Не удалось открыть в браузере: {browser_error}")
    return path
