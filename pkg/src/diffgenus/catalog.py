"""Built-in catalog of nilpotent groups up to order 200: every cyclic group
plus all products of a fixed list of small 2-groups with a fixed list of odd
prime-power groups, deduplicated up to isomorphism (first listing wins, so
cyclic names survive)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groups import GroupTable, build_group, group_isomorphic

MAX_CATALOG_ORDER = 200

TWO_GROUP_ATOMS = [
    "Z2", "Z4", "Z8",
    "Z2 x Z2", "Z2 x Z2 x Z2",
    "Z4 x Z2", "Z4 x Z4", "Z4 x Z2 x Z2",
    "D8", "D16", "Q8", "Q16", "SD16",
    "D8 x Z2", "Q8 x Z2",
]

ODD_ATOMS = ["Z3", "Z9", "Z3 x Z3", "Z5", "Z7", "Z11", "Z13", "Z25"]


@dataclass
class CatalogEntry:
    name: str
    group: GroupTable

    @property
    def order(self) -> int:
        return self.group.order


@lru_cache(maxsize=1)
def _full_catalog() -> tuple[CatalogEntry, ...]:
    entries: list[CatalogEntry] = []
    for n in range(1, MAX_CATALOG_ORDER + 1):
        entries.append(CatalogEntry(f"Z{n}", build_group(f"Z{n}")))
    for two in TWO_GROUP_ATOMS:
        for odd in ODD_ATOMS:
            name = f"{two} x {odd}"
            if _descriptor_order(name) > MAX_CATALOG_ORDER:
                continue
            entries.append(CatalogEntry(name, build_group(name)))

    deduped: list[CatalogEntry] = []
    by_order: dict[int, list[CatalogEntry]] = {}
    for e in entries:
        duplicate = False
        for prev in by_order.get(e.order, []):
            found, _ = group_isomorphic(e.group, prev.group, cap=MAX_CATALOG_ORDER + 1)
            if found:
                duplicate = True
                break
        if not duplicate:
            deduped.append(e)
            by_order.setdefault(e.order, []).append(e)
    return tuple(deduped)


def _descriptor_order(descriptor: str) -> int:
    from .groups import parse_group_descriptor

    total = 1
    for _, n in parse_group_descriptor(descriptor):
        total *= n
    return total


def builtin_catalog(max_order: int = MAX_CATALOG_ORDER) -> list[CatalogEntry]:
    if max_order > MAX_CATALOG_ORDER:
        raise ValueError(f"catalog is built up to order {MAX_CATALOG_ORDER}")
    return [e for e in _full_catalog() if e.order <= max_order]
