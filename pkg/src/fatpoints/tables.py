"""Published exception tables for degrees 10 and 9.

Columns: w, x, y, z, min(deg, N), e, r, d -- with e the expected dimension,
r the rank of the condition matrix and d the dimension of the linear system.
Rows are kept exactly as printed, including the degree-9 row (5,1,1,0) whose
e and d entries disagree with its own degree and rank columns (205 and 204
force e = 14 and d = 15).
"""

COLUMNS = ("w", "x", "y", "z", "min(deg,N)", "e", "r", "d")

DEGREE_10 = [
    (9, 0, 0, 0, 286, -1, 285, 0),
    (8, 1, 0, 0, 286, -1, 284, 1),
    (8, 0, 1, 1, 286, -1, 285, 0),
    (8, 0, 1, 0, 286, -1, 283, 2),
    (8, 0, 0, 2, 286, -1, 284, 1),
    (8, 0, 0, 1, 284, 1, 282, 3),
    (7, 2, 0, 1, 286, -1, 284, 1),
    (7, 1, 2, 0, 285, 0, 284, 1),
    (7, 2, 0, 0, 285, 0, 280, 5),
]

DEGREE_9 = [
    (6, 0, 1, 1, 220, -1, 219, 0),
    (6, 0, 1, 0, 220, -1, 216, 3),
    (6, 0, 0, 3, 220, -1, 218, 1),
    (6, 0, 0, 2, 218, 1, 214, 5),
    (6, 0, 0, 1, 214, 5, 210, 9),
    (6, 0, 0, 0, 210, 9, 206, 13),
    (5, 2, 0, 1, 219, 0, 217, 2),
    (5, 2, 0, 0, 215, 4, 213, 6),
    (5, 1, 2, 1, 219, 0, 218, 1),
    (5, 1, 2, 0, 215, 4, 214, 5),
    (5, 1, 1, 3, 217, 2, 216, 3),
    (5, 1, 1, 2, 213, 6, 212, 7),
    (5, 1, 1, 1, 209, 10, 208, 11),
    (5, 1, 1, 0, 205, 4, 204, 5),
    (5, 1, 0, 6, 219, 0, 218, 1),
    (5, 1, 0, 5, 215, 4, 214, 5),
    (5, 1, 0, 4, 211, 8, 210, 9),
    (5, 1, 0, 3, 207, 12, 206, 13),
    (5, 1, 0, 2, 203, 16, 202, 17),
    (5, 1, 0, 1, 199, 20, 198, 21),
    (5, 1, 0, 0, 195, 24, 194, 25),
    (4, 3, 2, 0, 220, -1, 218, 1),
    (3, 6, 0, 0, 220, -1, 218, 1),
    (3, 5, 1, 1, 219, 0, 218, 1),
    (3, 5, 1, 0, 215, 4, 214, 5),
]

PUBLISHED = {10: DEGREE_10, 9: DEGREE_9}

# rows whose printed e/d columns are inconsistent with their deg and r columns
MISPRINTED = {9: {(5, 1, 1, 0)}}


def known_exceptions(d: int) -> set[tuple[int, int, int, int]]:
    return {row[:4] for row in PUBLISHED.get(d, [])}
