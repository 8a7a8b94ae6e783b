"""Reference tangent-space dimensions, weight 1 upward, used by the table checks."""

REFERENCE_DIMS = {
    "dmrd": {
        1: (0, 1, 1, 0, 1, 0, 1, 1, 1, 1, 2),
        2: (1, 1, 1, 1, 2, 2, 4),
        3: (2, 1, 2, 3, 6),
        4: (2, 1, 3, 6),
        5: (3, 2, 6, 13),
        6: (3, 2, 7),
        7: (4, 4, 13),
        8: (3, 4, 15),
        9: (5, 7, 23),
        10: (4, 6, 26),
        11: (6, 10),
    },
    "dmr": {
        2: (1, 1, 1, 1, 2, 2, 4),
        3: (2, 1, 2, 3, 6),
        4: (3, 1, 3, 7),
        5: (4, 2, 6, 13),
        6: (5, 3, 8),
        7: (6, 4, 13),
        8: (7, 5, 17),
        9: (8, 7, 23),
        10: (9, 8, 31),
        11: (10, 10),
    },
}


def reference_dagger(order: int) -> int:
    """Weight carrying the exceptional direction."""
    return 2 if order <= 2 else 1


def reference_dims(order: int, relations: str = "dmrd") -> tuple:
    table = REFERENCE_DIMS[relations]
    if relations == "dmr" and order == 1:
        table = REFERENCE_DIMS["dmrd"]   # no distribution relations for the trivial group
    return table.get(order, ())
