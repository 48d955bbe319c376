# FURST - Проверка границ для множеств Фюрстенберга над конечными полями
