import random

import pytest

from helpers import (FIG5_BUTTERFLIES, brute_force_butterflies, fig5_window,
                     random_bipartite_window)
from sgdrift.butterfly import (BipartiteWindow, ButterflyKey, enumerate_young,
                               young_timestamps)


# --- canonical keys ------------------------------------------------------------

def test_key_canonical_form():
    k1 = ButterflyKey.make("b", "a", "y", "x")
    k2 = ButterflyKey.make("a", "b", "x", "y")
    assert k1 == k2
    assert (k1.i_lo, k1.i_hi, k1.j_lo, k1.j_hi) == ("a", "b", "x", "y")


def test_key_rejects_degenerate_vertices():
    with pytest.raises(ValueError):
        ButterflyKey.make("a", "a", "x", "y")
    with pytest.raises(ValueError):
        ButterflyKey.make("a", "b", "x", "x")


# --- youth suffix ---------------------------------------------------------------

def test_young_full_fraction_is_whole_history():
    history = [3, 1, 4, 1, 5]  # caller deduplicates; order list is unique
    assert young_timestamps([3, 1, 4, 5], 1.0) == {3, 1, 4, 5}


def test_young_quarter_of_eight():
    assert young_timestamps(list(range(1, 9)), 0.25) == {7, 8}


def test_young_single_element_ceiling():
    assert young_timestamps([5], 0.25) == {5}


def test_young_empty_history():
    assert young_timestamps([], 0.25) == set()


def test_young_rejects_bad_fraction():
    with pytest.raises(ValueError):
        young_timestamps([1], 0.0)
    with pytest.raises(ValueError):
        young_timestamps([1], 1.5)


# --- window bookkeeping ----------------------------------------------------------

def test_window_deduplicates_edges_but_tracks_touches():
    window = BipartiteWindow()
    assert window.add("a", "x", 1)
    assert not window.add("a", "x", 9)  # repeated payload, still a touch
    assert window.j_last_tau["x"] == 9
    assert len(window) == 1


def test_window_clear_is_total():
    window, young = fig5_window()
    window.clear()
    assert len(window) == 0 and not window.j_last_tau
    assert enumerate_young(window, young) == []


# --- enumeration -----------------------------------------------------------------

def _complete_window(ni, nj):
    window = BipartiteWindow()
    for a in range(ni):
        for b in range(nj):
            window.add(f"i{a}", f"j{b}", 1)
    return window


def test_complete_2x2_single_butterfly():
    window = _complete_window(2, 2)
    assert len(enumerate_young(window, {1})) == 1


def test_complete_3x2_three_butterflies():
    window = _complete_window(3, 2)
    keys = enumerate_young(window, {1})
    assert len(keys) == 3
    edges = set(window.edges)
    assert keys == brute_force_butterflies(edges, {j for _, j in edges})


def test_fig5_window_yields_exactly_the_eight():
    window, young = fig5_window()
    assert enumerate_young(window, young) == FIG5_BUTTERFLIES


def test_fig5_without_youth_filter_includes_j0_butterflies():
    window, _ = fig5_window()
    keys = enumerate_young(window, {1, 2})
    assert len(keys) == 10
    extra = [k for k in keys if "j0" in k.j_vertices]
    assert len(extra) == 2


def test_matches_brute_force_on_random_windows():
    for seed in range(120):
        rng = random.Random(seed)
        window = random_bipartite_window(rng)
        young = {2}
        young_js = {j for j, tau in window.j_last_tau.items() if tau in young}
        expected = brute_force_butterflies(set(window.edges), young_js)
        assert enumerate_young(window, young) == expected


def test_no_duplicate_keys():
    for seed in range(30):
        window = random_bipartite_window(random.Random(1000 + seed))
        keys = enumerate_young(window, {1, 2})
        assert len(keys) == len(set(keys))


def test_monotone_under_edge_addition():
    rng = random.Random(5)
    window = BipartiteWindow()
    previous: set[ButterflyKey] = set()
    for _ in range(300):
        window.add(f"i{rng.randint(0, 9)}", f"j{rng.randint(0, 9)}", 1)
        current = set(enumerate_young(window, {1}))
        assert previous <= current
        previous = current
