"""Fixed test matrices and a seeded generator of random valid inputs."""

from __future__ import annotations

import random

from .intlin import IntegerMatrix, rank

CORPUS = {
    "identity2": [[1, 0], [0, 1]],
    "one_two": [[1, 2]],
    "two_three": [[2, 3]],
    "conic": [[1, 1, 1], [0, 1, 2]],
    "twisted_cubic": [[1, 1, 1, 1], [0, 1, 2, 3]],
    "triangular2": [[1, 1], [0, 1]],
    "triangular3": [[1, 1, 1], [0, 1, 1], [0, 0, 1]],
}


def corpus_matrices() -> dict[str, IntegerMatrix]:
    return {name: IntegerMatrix(rows) for name, rows in CORPUS.items()}


def random_matrix(rng: random.Random, max_d: int = 3, max_n: int = 5, max_entry: int = 4) -> IntegerMatrix:
    """A full-row-rank matrix with no zero column and entries in ``0..max_entry``."""
    while True:
        d = rng.randint(1, max_d)
        n = rng.randint(d, max_n)
        rows = [[rng.randint(0, max_entry) for _ in range(n)] for _ in range(d)]
        A = IntegerMatrix(rows)
        if all(any(c) for c in A.columns) and rank(A) == d:
            return A


def random_battery(count: int = 20, seed: int = 0, **kwargs) -> list[IntegerMatrix]:
    rng = random.Random(seed)
    return [random_matrix(rng, **kwargs) for _ in range(count)]
