"""Independent reference implementations used only by the tests."""
from __future__ import annotations

import itertools

from holkit.words import Alphabet, Word


def stack_reduce(letters):
    """Push letters one at a time, popping on cancellation."""
    out = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def rewrite_reduce(letters):
    """Delete the first cancelling pair until none is left."""
    w = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                del w[i:i + 2]
                changed = True
                break
    return tuple(w)


def all_words(rank: int, max_length: int):
    letters = [s * g for g in range(1, rank + 1) for s in (1, -1)]
    for n in range(max_length + 1):
        for t in itertools.product(letters, repeat=n):
            if all(t[i] != -t[i + 1] for i in range(n - 1)):
                yield t


def brute_conjugator(pairs, max_length: int = 4):
    """Search all ``c`` up to ``max_length`` with ``g' = c g c^-1``."""
    alphabet = pairs[0][0].alphabet
    for t in all_words(alphabet.rank, max_length):
        c = Word(alphabet, t)
        if all(c * g * ~c == img for g, img in pairs):
            return c
    return None


def substitute_naive(w: Word, images):
    """Concatenate raw images, then reduce."""
    raw = []
    for l in w.tietze:
        img = images[abs(l) - 1].tietze
        raw.extend(img if l > 0 else [-x for x in reversed(img)])
    return Word(images[0].alphabet, stack_reduce(raw))


def normal_form_words(max_u: int, max_w: int):
    """All (r, u, s, w) with u alternating x and y^{+-1} and w reduced."""
    us = [()]
    frontier = [(1,), (2,), (-2,)]
    for _ in range(max_u):
        us.extend(frontier)
        nxt = []
        for t in frontier:
            if abs(t[-1]) == 1:
                nxt.extend([t + (2,), t + (-2,)])
            else:
                nxt.append(t + (1,))
        frontier = nxt
    ws = list(all_words(2, max_w))
    for r in (0, 1):
        for u in us:
            for s in (0, 1):
                for w in ws:
                    yield r, u, s, w
