"""Permutation helpers."""

from itertools import permutations

__all__ = ["perm_sign", "permutations_with_sign", "sort_sign"]


def perm_sign(p):
    """Sign of a sequence of distinct comparable items (inversion count)."""
    p = list(p)
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def permutations_with_sign(items):
    """Yield ``(sign, arrangement)`` for all arrangements of ``items``.

    The sign is taken relative to the given order of ``items``.
    """
    items = list(items)
    n = len(items)
    for p in permutations(range(n)):
        yield perm_sign(p), [items[k] for k in p]


def sort_sign(seq):
    """``(sign, sorted tuple)``; sign is 0 when ``seq`` has a repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, tuple(sorted(seq))
    return perm_sign(seq), tuple(sorted(seq))
