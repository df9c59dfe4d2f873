"""Self-maps of a finite set, tuples of such maps, and their combinatorics.

``TransFn`` values are the per-letter transition actions of DFAs;
``TransTuple`` values are the letters of monster automata and the states
of standard-modifier builds.  The ranking helpers fix one global
enumeration order (lexicographic by image list) that every full-space
construction in this package shares.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Iterator

from .errors import ParseError


@dataclass(frozen=True)
class TransFn:
    """A total function from {0..n-1} into itself, stored as its images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n == 0:
            raise ValueError("a TransFn needs a nonempty domain")
        for x, v in enumerate(images):
            if not 0 <= v < n:
                raise ValueError(f"image {v!r} of {x} outside [0, {n})")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_constant(self) -> bool:
        return all(v == self.images[0] for v in self.images)

    def is_identity(self) -> bool:
        return all(v == x for x, v in enumerate(self.images))


@dataclass(frozen=True)
class TransTuple:
    """A tuple of TransFn, one per coordinate (sizes may differ)."""

    components: tuple[TransFn, ...]

    def __post_init__(self) -> None:
        components = tuple(self.components)
        object.__setattr__(self, "components", components)
        if not components:
            raise ValueError("a TransTuple needs at least one component")

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(f.n for f in self.components)


@dataclass(frozen=True)
class RhoShape:
    """Orbit of a start point under a TransFn: a tail leading into a cycle.

    ``orbit`` lists the distinct visited states; the first ``tail`` entries
    are visited once, the remaining ``cycle`` entries repeat forever.
    """

    tail: int
    cycle: int
    orbit: tuple[int, ...]


def identity(n: int) -> TransFn:
    return TransFn(tuple(range(n)))


def constant(n: int, value: int) -> TransFn:
    return TransFn((value,) * n)


def compose(f: TransFn, g: TransFn) -> TransFn:
    """Function composition: (f o g)(x) = f(g(x))."""
    if f.n != g.n:
        raise ValueError(f"size mismatch: {f.n} vs {g.n}")
    return TransFn(tuple(f.images[v] for v in g.images))


def tuple_identity(sizes: Iterable[int]) -> TransTuple:
    return TransTuple(tuple(identity(n) for n in sizes))


def tuple_compose(f: TransTuple, g: TransTuple) -> TransTuple:
    """Componentwise composition of two tuples of matching shape."""
    if f.sizes != g.sizes:
        raise ValueError(f"shape mismatch: {f.sizes} vs {g.sizes}")
    return TransTuple(tuple(compose(a, b) for a, b in zip(f.components, g.components)))


def rho_shape(f: TransFn, start: int) -> RhoShape:
    """Walk start, f(start), ... until the first revisit.

    The returned (tail, cycle) pair is minimal: no shorter tail or cycle
    describes the orbit, and tail + cycle <= n.
    """
    if not 0 <= start < f.n:
        raise ValueError(f"start {start} outside [0, {f.n})")
    pos: dict[int, int] = {}
    seq: list[int] = []
    x = start
    while x not in pos:
        pos[x] = len(seq)
        seq.append(x)
        x = f.images[x]
    tail = pos[x]
    return RhoShape(tail, len(seq) - tail, tuple(seq))


def tn_generators(n: int) -> list[TransFn]:
    """A fixed generating set of the monoid of all self-maps of {0..n-1}.

    n = 1: the identity alone; n = 2: the swap and the constant 0; n >= 3:
    the cyclic shift x -> x+1, the transposition of 0 and 1, and the
    rank-dropping map sending n-1 to 0 and fixing everything else.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return [identity(1)]
    if n == 2:
        return [TransFn((1, 0)), TransFn((0, 0))]
    cycle = TransFn(tuple((x + 1) % n for x in range(n)))
    swap01 = TransFn((1, 0) + tuple(range(2, n)))
    drop = TransFn(tuple(range(n - 1)) + (0,))
    return [cycle, swap01, drop]


_TOKEN_GROUP_RE = re.compile(r"\[(\d+(?:,\d+)*)\]")
_TOKEN_RE = re.compile(r"(?:\[\d+(?:,\d+)*\])+")


def fn_token(ft: TransTuple) -> str:
    """Render a tuple as a letter token, e.g. ``[1,0][0,1,2]``."""
    return "".join("[" + ",".join(map(str, f.images)) + "]" for f in ft.components)


def token_fn(token: str) -> TransTuple:
    """Inverse of fn_token; raises ParseError on malformed tokens."""
    if not _TOKEN_RE.fullmatch(token):
        raise ParseError(f"malformed function token {token!r}")
    components = []
    for group in _TOKEN_GROUP_RE.findall(token):
        images = tuple(int(t) for t in group.split(","))
        if any(v >= len(images) for v in images):
            raise ParseError(f"malformed function token {token!r}: image out of range")
        components.append(TransFn(images))
    return TransTuple(tuple(components))


def fn_rank(f: TransFn) -> int:
    """Position of f in the lexicographic enumeration of all n^n maps."""
    r = 0
    for v in f.images:
        r = r * f.n + v
    return r


def fn_unrank(n: int, rank: int) -> TransFn:
    if not 0 <= rank < n**n:
        raise ValueError(f"rank {rank} outside [0, {n**n})")
    images = [0] * n
    for x in range(n - 1, -1, -1):
        rank, images[x] = divmod(rank, n)
    return TransFn(tuple(images))


@lru_cache(maxsize=None)
def all_fns(n: int) -> tuple[TransFn, ...]:
    """All self-maps of {0..n-1} in rank (lexicographic) order."""
    return tuple(TransFn(im) for im in itertools.product(range(n), repeat=n))


def tuple_space_size(sizes: Iterable[int]) -> int:
    return prod(n**n for n in sizes)


def tuple_rank(ft: TransTuple) -> int:
    """Mixed-radix rank of a tuple; consistent with all_tuples order."""
    r = 0
    for f in ft.components:
        r = r * f.n**f.n + fn_rank(f)
    return r


def tuple_unrank(sizes: tuple[int, ...], rank: int) -> TransTuple:
    total = tuple_space_size(sizes)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} outside [0, {total})")
    parts: list[TransFn] = []
    for n in reversed(sizes):
        rank, r = divmod(rank, n**n)
        parts.append(fn_unrank(n, r))
    return TransTuple(tuple(reversed(parts)))


def all_tuples(sizes: tuple[int, ...]) -> Iterator[TransTuple]:
    """All tuples over the given sizes, in tuple_rank order."""
    for combo in itertools.product(*(all_fns(n) for n in sizes)):
        yield TransTuple(combo)
