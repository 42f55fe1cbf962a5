"""Random sampling helpers shared by the test modules."""

from __future__ import annotations

import random
from functools import lru_cache

from diagalg.diagram import Diagram, enumerate_all
from diagalg.ghostalg import GhostDiagram, enumerate_ghost
from diagalg.labelalg import E, FDown, FUp, Generator, WDown, WUp
from diagalg.presentation import Word
from diagalg.sympblob import BlobDiagram, enumerate_blob


@lru_cache(maxsize=None)
def all_diagrams(n: int, X: tuple[str, ...]) -> tuple[Diagram, ...]:
    return tuple(enumerate_all(n, X))


@lru_cache(maxsize=None)
def all_ghosts(n: int) -> tuple[GhostDiagram, ...]:
    return tuple(enumerate_ghost(n))


@lru_cache(maxsize=None)
def all_blobs(n: int) -> tuple[BlobDiagram, ...]:
    return tuple(enumerate_blob(n))


def all_generators(n: int, X: tuple[str, ...]) -> list[Generator]:
    gens = [E(i) for i in range(1, n)]
    for a in X:
        for b in X:
            gens += [FUp(a, b), FDown(a, b), WUp(a, b), WDown(a, b)]
    return gens


def random_word(rng: random.Random, n: int, X: tuple[str, ...], max_len: int = 10) -> Word:
    gens = all_generators(n, X)
    return Word(rng.choice(gens) for _ in range(rng.randint(0, max_len)))
