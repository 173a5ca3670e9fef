"""Global enumeration bounds.

Every brute-force operation in the library is desk-scale by design: it either
finishes quickly or rejects its input with :class:`~framebundles.errors.BoundExceeded`.
The knobs below are module-level so a session can raise them deliberately.
"""

from .errors import BoundExceeded

# Largest order for which a dense Cayley table may be materialized (7! = 5040).
MAX_TABLE_ORDER = 5040

# Largest n accepted by the symmetric-group constructor.
MAX_SYMMETRIC_N = 8

# Largest number of objects an exhaustive enumeration (frames, wreath
# elements, automorphisms of a group-set) may produce.
MAX_ENUMERATION = 20_000


def check_table_order(order: int, what: str = "group") -> None:
    if order > MAX_TABLE_ORDER:
        raise BoundExceeded(
            f"{what} of order {order} exceeds the table bound {MAX_TABLE_ORDER}"
        )


def check_enumeration(count: int, what: str) -> None:
    if count > MAX_ENUMERATION:
        raise BoundExceeded(
            f"enumerating {count} {what} exceeds the bound {MAX_ENUMERATION}"
        )
