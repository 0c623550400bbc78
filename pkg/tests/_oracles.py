"""Independent reference computations used by the acceptance tests.

These deliberately avoid the engine's algorithms: conjugacy classes are
enumerated by brute rotation/inversion canonicalization, and translation
lengths are recovered by minimizing the displacement function over a net
of vertices along the lifted basepoint path (the displacement of a tree
isometry is linear on every edge and its minimum is attained on the axis,
which the path from any point to its image must cross).
"""

from __future__ import annotations

from grouptrees.core import Scalar, Word, letter_key

ZERO = Scalar.of(0)


def _reduce_darts(darts):
    out = []
    for d in darts:
        if out and out[-1] == -d:
            out.pop()
        else:
            out.append(d)
    return out


def _lifted_path(graph, w: Word):
    """Dart path of the tightened basepoint loop reading w, built locally."""
    darts: list[int] = []
    for letter in w.letters:
        darts = _reduce_darts(darts + list(graph.letter_loop(letter)))
    return darts


def net_translation_length(graph, w: Word) -> Scalar:
    """min over net vertices x on the lifted path of d(x, w x), all exact."""
    path = _lifted_path(graph, w)
    if not path:
        return ZERO
    best = None
    for i in range(len(path) + 1):
        route = _reduce_darts(path[i:] + path[:i])
        disp = ZERO
        for d in route:
            disp = disp + graph.dart_length(d)
        if best is None or (disp - best).sign() < 0:
            best = disp
    return best


def _cyclically_reduced(rank: int, max_len: int):
    """All cyclically reduced letter tuples of length 1..max_len."""
    alphabet = [s * i for i in range(1, rank + 1) for s in (1, -1)]

    def extend(prefix, remaining):
        yield prefix
        if remaining == 0:
            return
        for letter in alphabet:
            if prefix and letter == -prefix[-1]:
                continue
            yield from extend(prefix + (letter,), remaining - 1)

    for first in alphabet:
        for letters in extend((first,), max_len - 1):
            if len(letters) == 1 or letters[0] != -letters[-1]:
                yield letters


def class_rep(letters) -> tuple[int, ...]:
    """Canonical form of a cyclically reduced tuple up to rotation/inversion."""
    inverse = tuple(-l for l in reversed(letters))
    best = None
    best_key = None
    for base in (tuple(letters), inverse):
        keys = [letter_key(l) for l in base]
        for i in range(len(base)):
            key = keys[i:] + keys[:i]
            if best_key is None or key < best_key:
                best_key = key
                best = base[i:] + base[:i]
    return best


def brute_omega(graph, epsilon, max_len: int) -> set[tuple[int, ...]]:
    """Canonical reps of every class shorter than epsilon, by exhaustion."""
    epsilon = Scalar.of(epsilon)
    seen = set()
    reps = set()
    for letters in _cyclically_reduced(graph.rank, max_len):
        rep = class_rep(letters)
        if rep in seen:
            continue
        seen.add(rep)
        w = Word(rep, graph.rank)
        if (net_translation_length(graph, w) - epsilon).sign() < 0:
            reps.add(rep)
    return reps
