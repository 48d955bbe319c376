# Тесты
