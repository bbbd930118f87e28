"""Seeded random inputs shared by the property tests."""

import random

from hypothesis import strategies as st

from graphfa.generate import random_atom, random_blank
from graphfa.graph import RankedAlphabet

SIGMA = RankedAlphabet({"a": 1, "b": 2, "c": 3, "d": 0})

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_of(seed):
    return random.Random(seed)


def random_symbol(rng, i, j, sigma=SIGMA, blank_prob=0.2):
    """Any symbol of type ``(i, j)``; falls back to a blank when no atom fits."""
    if rng.random() < blank_prob and j <= i:
        return random_blank(rng, i, j)
    labels = list(sigma)
    rng.shuffle(labels)
    for lab in labels:
        s = random_atom(rng, lab, sigma[lab], i, j)
        if s is not None:
            return s
    return random_blank(rng, i, min(i, j)) if j <= i else None


def random_string(rng, length, start=None, max_rank=3, sigma=SIGMA):
    """A typed symbol string of the given length."""
    i = rng.randint(0, max_rank) if start is None else start
    w = []
    while len(w) < length:
        j = rng.randint(0, max_rank)
        s = random_symbol(rng, i, j, sigma)
        if s is None:
            continue
        w.append(s)
        i = j
    return w
