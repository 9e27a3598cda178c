import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from phaseweb.algebra import Multivector
from phaseweb.coex import Event


def naive_word_product(word, squares):
    """Reduce a word of basis indices to (sorted blade, sign in {+1,-1}).

    Independent of the library: bubble-sort adjacent pairs, counting swaps,
    and cancel adjacent equal indices using their squares.
    """
    w = list(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                w[k], w[k + 1] = w[k + 1], w[k]
                sign = -sign
                changed = True
                break
            if w[k] == w[k + 1]:
                sign *= squares[w[k]]
                del w[k:k + 2]
                changed = True
                break
    return tuple(w), sign


def all_blades(n):
    return [b for g in range(n + 1) for b in combinations(range(1, n + 1), g)]


@st.composite
def multivectors(draw, n, max_terms=6):
    blades = all_blades(n)
    terms = draw(st.lists(st.tuples(st.sampled_from(blades), st.sampled_from([1, 2])), max_size=max_terms))
    return Multivector(n, terms)


def random_trace(seed, n_events, sensors=200, p_same_time=0.3):
    """Genuine flips with clustered timestamps on a half-unit grid."""
    rng = random.Random(seed)
    names = [f"s{i}" for i in range(1, sensors + 1)]
    state = {}
    t = 0.0
    out = []
    for _ in range(n_events):
        if rng.random() >= p_same_time:
            t += rng.choice([0.5, 0.5, 1.0, 1.5, 2.0, 3.0, 7.0])
        name = rng.choice(names)
        value = -state[name] if name in state else rng.choice([1, -1])
        state[name] = value
        out.append(Event(name, value, t))
    return out


def oracle_pairs(events, window):
    """All co-excluding pairs, by scanning event pairs in time order.

    A pair (i, j), i before j, counts when the two sensors differ, j arrives
    within ``window`` of i, and i's sensor did not flip again in between. The
    scan for j stops once the window is exceeded, which on time-sorted input
    drops only pairs that would fail the window test anyway.
    """
    found = set()
    N = len(events)
    for i, a in enumerate(events):
        for j in range(i + 1, N):
            b = events[j]
            if b.t - a.t > window:
                break
            if b.sensor == a.sensor:
                break
            (n1, v1), (n2, v2) = sorted([(a.sensor, a.value), (b.sensor, b.value)])
            found.add(((n1, n2), (v1, v2) if v1 == 1 else (-v1, -v2)))
    return found


def oracle_pairs_full(events, window):
    """Same relation as ``oracle_pairs`` with no pruning at all: every pair is examined."""
    found = set()
    N = len(events)
    for i in range(N):
        for j in range(N):
            if j <= i:
                continue
            a, b = events[i], events[j]
            if a.sensor == b.sensor or b.t - a.t > window:
                continue
            if any(events[k].sensor == a.sensor for k in range(i + 1, j)):
                continue
            (n1, v1), (n2, v2) = sorted([(a.sensor, a.value), (b.sensor, b.value)])
            found.add(((n1, n2), (v1, v2) if v1 == 1 else (-v1, -v2)))
    return found


def registry_pairs(registry):
    out = set()
    for m in registry.metas:
        out.add((tuple(m.constituent_keys()), m.dual_id))
    return out


@pytest.fixture
def trace_factory():
    return random_trace
