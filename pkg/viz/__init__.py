# Модули визуализации (plotly)
