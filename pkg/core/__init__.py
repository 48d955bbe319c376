# Алгебраические модули: поля, многочлены, базисы Грёбнера, схемы
