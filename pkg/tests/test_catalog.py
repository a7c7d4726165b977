import math

import pytest

from diffgenus import groups as gr
from diffgenus.catalog import MAX_CATALOG_ORDER, builtin_catalog


def test_catalog_orders_and_names():
    cat = builtin_catalog()
    assert all(e.order <= MAX_CATALOG_ORDER for e in cat)
    names = [e.name for e in cat]
    assert len(names) == len(set(names))
    assert "Z12" in names and "Q8 x Z3" in names
    # cyclic listings win the dedup, so redundant product spellings are gone
    assert "Z4 x Z3" not in names and "Z2 x Z5" not in names


def test_catalog_max_order_filter():
    assert all(e.order <= 30 for e in builtin_catalog(30))
    with pytest.raises(ValueError):
        builtin_catalog(500)


def test_catalog_every_entry_nilpotent():
    for e in builtin_catalog():
        assert gr.is_nilpotent(e.group), e.name


def test_catalog_dedup_no_isomorphic_pairs():
    by_order: dict[int, list] = {}
    for e in builtin_catalog(60):
        by_order.setdefault(e.order, []).append(e)
    for order, entries in by_order.items():
        for i, a in enumerate(entries):
            for b in entries[i + 1 :]:
                found, _ = gr.group_isomorphic(a.group, b.group, cap=order + 1)
                assert not found, (a.name, b.name)


def test_catalog_coprime_orders_commute():
    for e in builtin_catalog(60):
        g = e.group
        orders = g.orders()
        for x in range(g.order):
            for y in range(x + 1, g.order):
                if math.gcd(orders[x], orders[y]) == 1:
                    assert g.mult(x, y) == g.mult(y, x), e.name


def test_catalog_sylow_projection_full_check_small():
    """Full multiplicativity check of the Sylow projection for orders <= 64."""
    for e in builtin_catalog(64):
        g = e.group
        dec = gr.sylow_decomposition(g)
        proj = dec.projection
        for x in range(g.order):
            for y in range(g.order):
                want = tuple(g.mult(a, b) for a, b in zip(proj[x], proj[y]))
                assert proj[g.mult(x, y)] == want, e.name


def test_catalog_exponent_p_squared_dichotomy():
    """Catalog p-groups of exponent p^2 have one order-p^2 cyclic subgroup or
    two meeting in order p."""
    for e in builtin_catalog():
        g = e.group
        if not gr.is_p_group(g) or g.order == 1:
            continue
        p = gr._prime_factors(g.order)[0]
        if g.exponent() != p * p:
            continue
        chains = [s for s in gr.cyclic_subgroups(g) if s.order == p * p]
        if len(chains) > 1:
            assert any(
                len(a.members & b.members) == p
                for i, a in enumerate(chains)
                for b in chains[i + 1 :]
            ), e.name
