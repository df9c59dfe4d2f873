"""Monster witness automata.

The k coordinates of a monster share one alphabet whose letters are (or
generate) all tuples of self-maps of the coordinate state sets; the
letter named by a tuple acts on coordinate j as the tuple's j-th
component.  Coordinate j has states 0..n_j-1, initial state 0 and the
single final state n_j-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automata import Dfa
from .errors import CapExceeded
from .transforms import (
    TransFn,
    TransTuple,
    all_tuples,
    fn_token,
    identity,
    tn_generators,
    tuple_compose,
    tuple_identity,
    tuple_space_size,
)

DEFAULT_MAX_LETTERS = 10**6


@dataclass(frozen=True)
class MonsterSpec:
    """Sizes of the coordinates plus the alphabet flavor.

    "full" uses one letter per function tuple; "generators" uses, per
    coordinate, a fixed generating set of its transformation monoid
    (identity elsewhere), at most 3k letters after deduplication.
    """

    sizes: tuple[int, ...]
    alphabet_kind: str = "generators"

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if not self.sizes or any(n < 1 for n in self.sizes):
            raise ValueError("sizes must be positive")
        if self.alphabet_kind not in ("full", "generators"):
            raise ValueError(f"unknown alphabet kind {self.alphabet_kind!r}")


def monster(spec: MonsterSpec, *, max_letters: int = DEFAULT_MAX_LETTERS) -> tuple[Dfa, ...]:
    """Build the coordinate DFAs of a monster on their common alphabet."""
    sizes = spec.sizes
    if spec.alphabet_kind == "full":
        total = tuple_space_size(sizes)
        if total > max_letters:
            raise CapExceeded(f"full alphabet has {total} letters, cap is {max_letters}")
        letter_tuples = list(all_tuples(sizes))
    else:
        letter_tuples = []
        seen: set[TransTuple] = set()
        for j, n in enumerate(sizes):
            for g in tn_generators(n):
                t = TransTuple(tuple(g if jj == j else identity(nn) for jj, nn in enumerate(sizes)))
                if t not in seen:
                    seen.add(t)
                    letter_tuples.append(t)
    alphabet = tuple(fn_token(t) for t in letter_tuples)
    dfas = []
    for j, n in enumerate(sizes):
        rows = tuple(t.components[j].images for t in letter_tuples)
        dfas.append(Dfa(alphabet, n, 0, frozenset({n - 1}), rows))
    return tuple(dfas)


def reachable_tuples(dfas: Sequence[Dfa]) -> int:
    """Size of the joint transition monoid of automata on one alphabet.

    Counts the tuples of transition functions reachable from the identity
    tuple by composing letter actions on the left; for monsters of either
    alphabet kind this is the full product of the coordinate monoids.
    """
    if not dfas:
        raise ValueError("need at least one input automaton")
    alphabet = dfas[0].alphabet
    for d in dfas[1:]:
        if d.alphabet != alphabet:
            raise ValueError("alphabet mismatch across inputs")
    letters = [
        TransTuple(tuple(TransFn(d.trans[li]) for d in dfas)) for li in range(len(alphabet))
    ]
    start = tuple_identity(d.n_states for d in dfas)
    seen = {start}
    frontier = [start]
    while frontier:
        f = frontier.pop()
        for lt in letters:
            g = tuple_compose(lt, f)
            if g not in seen:
                seen.add(g)
                frontier.append(g)
    return len(seen)
