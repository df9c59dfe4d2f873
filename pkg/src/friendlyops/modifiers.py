"""DFA constructions given by four maps over state configurations.

A ``Modifier`` packages, for any tuple of input state configurations, the
output state count, initial state, finality predicate, and the per-letter
transition action.  Output states are integers; where they encode richer
objects (function tuples, pairs) the encoding is fixed by the ranking
order of :mod:`friendlyops.transforms`, and ``label`` renders it.

``build_standard`` is the central construction: the output states are
tuples of transition functions, the initial state is the identity tuple,
a letter acts by composing its own function tuple on the left, and a
state is final exactly when its characteristic tuple satisfies the given
predicate.  ``standardize`` rebuilds any composition-compatible modifier
in that shape without changing the recognized language.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .automata import Dfa
from .errors import CapExceeded
from .friendly import DEFAULT_SCAN_CAP, EPredicate, eval_pred
from .transforms import (
    TransFn,
    TransTuple,
    all_tuples,
    compose,
    fn_rank,
    fn_token,
    fn_unrank,
    identity,
    tuple_compose,
    tuple_identity,
    tuple_rank,
    tuple_space_size,
    tuple_unrank,
)
from .upseq import char_tuple

DEFAULT_MAX_STATES = 10**6


@dataclass(frozen=True)
class StateConfig:
    """The state configurations (sizes, initial states, final sets) of inputs."""

    sizes: tuple[int, ...]
    initials: tuple[int, ...]
    finals: tuple[frozenset[int], ...]

    @classmethod
    def from_dfas(cls, dfas: Sequence[Dfa]) -> "StateConfig":
        return cls(
            tuple(d.n_states for d in dfas),
            tuple(d.initial for d in dfas),
            tuple(frozenset(d.finals) for d in dfas),
        )


@dataclass(frozen=True)
class Modifier:
    """A k-ary DFA construction.

    ``action`` realizes the transition map: given the transition functions
    of one letter on the k inputs, it returns the induced function on the
    output states [0, n_states).  For composition-compatible ("friendly")
    modifiers, action turns composition of letter tuples into composition
    of output functions.
    """

    arity: int
    n_states: Callable[[StateConfig], int]
    initial: Callable[[StateConfig], int]
    is_final: Callable[[StateConfig, int], bool]
    action: Callable[[StateConfig, TransTuple], TransFn]
    label: Callable[[StateConfig, int], str] | None = None


def _common_alphabet(dfas: Sequence[Dfa]) -> tuple[str, ...]:
    if not dfas:
        raise ValueError("need at least one input automaton")
    alphabet = dfas[0].alphabet
    for d in dfas[1:]:
        if d.alphabet != alphabet:
            raise ValueError("alphabet mismatch across inputs")
    return alphabet


def _letter_tuples(dfas: Sequence[Dfa]) -> list[TransTuple]:
    return [
        TransTuple(tuple(TransFn(d.trans[li]) for d in dfas))
        for li in range(len(dfas[0].alphabet))
    ]


def apply_modifier(m: Modifier, dfas: Sequence[Dfa], *, max_states: int = DEFAULT_MAX_STATES) -> Dfa:
    """Materialize the modifier's output DFA on concrete inputs."""
    if len(dfas) != m.arity:
        raise ValueError(f"arity mismatch: {len(dfas)} automata, modifier needs {m.arity}")
    alphabet = _common_alphabet(dfas)
    cfg = StateConfig.from_dfas(dfas)
    n = m.n_states(cfg)
    if n > max_states:
        raise CapExceeded(f"output would have {n} states, cap is {max_states}")
    rows = tuple(m.action(cfg, lt).images for lt in _letter_tuples(dfas))
    finals = frozenset(s for s in range(n) if m.is_final(cfg, s))
    return Dfa(alphabet, n, m.initial(cfg), finals, rows)


def sqrt_mod() -> Modifier:
    """Square-root construction: states are all self-maps of the input.

    A letter with action d sends the state map p to d o p; the map p is
    final when p(p(i)) is final in the input.
    """

    def n_states(cfg: StateConfig) -> int:
        (n,) = cfg.sizes
        return n**n

    def initial(cfg: StateConfig) -> int:
        (n,) = cfg.sizes
        return fn_rank(identity(n))

    def is_final(cfg: StateConfig, s: int) -> bool:
        (n,) = cfg.sizes
        phi = fn_unrank(n, s)
        return phi.images[phi.images[cfg.initials[0]]] in cfg.finals[0]

    def action(cfg: StateConfig, dt: TransTuple) -> TransFn:
        (n,) = cfg.sizes
        delta = dt.components[0]
        return TransFn(tuple(fn_rank(compose(delta, fn_unrank(n, s))) for s in range(n**n)))

    def label(cfg: StateConfig, s: int) -> str:
        (n,) = cfg.sizes
        return fn_token(TransTuple((fn_unrank(n, s),)))

    return Modifier(1, n_states, initial, is_final, action, label)


def xor_mod() -> Modifier:
    """Product construction for symmetric difference."""

    def n_states(cfg: StateConfig) -> int:
        n1, n2 = cfg.sizes
        return n1 * n2

    def initial(cfg: StateConfig) -> int:
        i1, i2 = cfg.initials
        return i1 * cfg.sizes[1] + i2

    def is_final(cfg: StateConfig, s: int) -> bool:
        q1, q2 = divmod(s, cfg.sizes[1])
        return (q1 in cfg.finals[0]) != (q2 in cfg.finals[1])

    def action(cfg: StateConfig, dt: TransTuple) -> TransFn:
        n1, n2 = cfg.sizes
        d1, d2 = dt.components
        return TransFn(
            tuple(d1.images[q1] * n2 + d2.images[q2] for q1 in range(n1) for q2 in range(n2))
        )

    def label(cfg: StateConfig, s: int) -> str:
        q1, q2 = divmod(s, cfg.sizes[1])
        return f"({q1},{q2})"

    return Modifier(2, n_states, initial, is_final, action, label)


def compl_mod() -> Modifier:
    """Complement: same automaton with the final set flipped."""

    def n_states(cfg: StateConfig) -> int:
        return cfg.sizes[0]

    def initial(cfg: StateConfig) -> int:
        return cfg.initials[0]

    def is_final(cfg: StateConfig, s: int) -> bool:
        return s not in cfg.finals[0]

    def action(cfg: StateConfig, dt: TransTuple) -> TransFn:
        return dt.components[0]

    return Modifier(1, n_states, initial, is_final, action, lambda cfg, s: str(s))


def compose_mod(m1: Modifier, p: int, m2: Modifier) -> Modifier:
    """Feed the output of m2 as the p-th input of m1.

    The result takes m1.arity + m2.arity - 1 inputs: the block of
    m2.arity inputs starting at position p is consumed by m2; its output
    configuration and per-letter actions stand in for input p of m1.
    """
    if not 1 <= p <= m1.arity:
        raise ValueError(f"position {p} out of range for arity {m1.arity}")
    k = m2.arity
    cache: dict[StateConfig, tuple[StateConfig, StateConfig]] = {}

    def split(cfg: StateConfig) -> tuple[StateConfig, StateConfig]:
        if cfg not in cache:
            inner = StateConfig(
                cfg.sizes[p - 1 : p - 1 + k],
                cfg.initials[p - 1 : p - 1 + k],
                cfg.finals[p - 1 : p - 1 + k],
            )
            nq = m2.n_states(inner)
            fset = frozenset(s for s in range(nq) if m2.is_final(inner, s))
            outer = StateConfig(
                cfg.sizes[: p - 1] + (nq,) + cfg.sizes[p - 1 + k :],
                cfg.initials[: p - 1] + (m2.initial(inner),) + cfg.initials[p - 1 + k :],
                cfg.finals[: p - 1] + (fset,) + cfg.finals[p - 1 + k :],
            )
            cache[cfg] = (inner, outer)
        return cache[cfg]

    def n_states(cfg: StateConfig) -> int:
        return m1.n_states(split(cfg)[1])

    def initial(cfg: StateConfig) -> int:
        return m1.initial(split(cfg)[1])

    def is_final(cfg: StateConfig, s: int) -> bool:
        return m1.is_final(split(cfg)[1], s)

    def action(cfg: StateConfig, dt: TransTuple) -> TransFn:
        inner, outer = split(cfg)
        mid = m2.action(inner, TransTuple(dt.components[p - 1 : p - 1 + k]))
        return m1.action(outer, TransTuple(dt.components[: p - 1] + (mid,) + dt.components[p - 1 + k :]))

    return Modifier(m1.arity + k - 1, n_states, initial, is_final, action)


def _std_n_states(cfg: StateConfig) -> int:
    return tuple_space_size(cfg.sizes)


def _std_initial(cfg: StateConfig) -> int:
    return tuple_rank(tuple_identity(cfg.sizes))


def _std_action(cfg: StateConfig, dt: TransTuple) -> TransFn:
    return TransFn(tuple(tuple_rank(tuple_compose(dt, psi)) for psi in all_tuples(cfg.sizes)))


def _std_label(cfg: StateConfig, s: int) -> str:
    return fn_token(tuple_unrank(cfg.sizes, s))


def _random_tuple(rng: random.Random, sizes: tuple[int, ...]) -> TransTuple:
    return TransTuple(tuple(TransFn(tuple(rng.randrange(n) for _ in range(n))) for n in sizes))


def standardize(m: Modifier, *, samples: int = 16, seed: int = 0) -> Modifier:
    """Rebuild a modifier in standard shape; the language is preserved.

    The result's states are full function tuples, its initial state the
    identity tuple, and a letter composes on the left; a tuple is final
    when the original modifier, letting the tuple act as if it were a
    letter, would move its initial state into its final set.

    Composition-compatibility of the original's action is a precondition;
    it is checked on ``samples`` seeded random pairs per configuration and
    a violation raises ValueError with the counterexample.
    """
    checked: set[StateConfig] = set()

    def ensure(cfg: StateConfig) -> None:
        if cfg in checked:
            return
        rng = random.Random(seed)
        for _ in range(samples):
            phi = _random_tuple(rng, cfg.sizes)
            psi = _random_tuple(rng, cfg.sizes)
            left = m.action(cfg, tuple_compose(phi, psi))
            right = compose(m.action(cfg, phi), m.action(cfg, psi))
            if left != right:
                raise ValueError(
                    "modifier is not friendly: action splits differently on "
                    f"{fn_token(phi)} o {fn_token(psi)}"
                )
        checked.add(cfg)

    def initial(cfg: StateConfig) -> int:
        ensure(cfg)
        return _std_initial(cfg)

    def is_final(cfg: StateConfig, s: int) -> bool:
        ensure(cfg)
        phi = tuple_unrank(cfg.sizes, s)
        moved = m.action(cfg, phi).images[m.initial(cfg)]
        return m.is_final(cfg, moved)

    def action(cfg: StateConfig, dt: TransTuple) -> TransFn:
        ensure(cfg)
        return _std_action(cfg, dt)

    return Modifier(m.arity, _std_n_states, initial, is_final, action, _std_label)


def predicate_modifier(pred: EPredicate, *, scan_cap: int = DEFAULT_SCAN_CAP) -> Modifier:
    """The standard modifier whose final tuples satisfy the predicate."""

    def is_final(cfg: StateConfig, s: int) -> bool:
        phi = tuple_unrank(cfg.sizes, s)
        return eval_pred(pred, char_tuple(phi, cfg.initials, cfg.finals), scan_cap=scan_cap)

    return Modifier(pred.arity, _std_n_states, _std_initial, is_final, _std_action, _std_label)


@dataclass(frozen=True)
class StandardBuild:
    """A built standard DFA plus the function tuple behind each state."""

    dfa: Dfa
    states: tuple[TransTuple, ...]

    def labels(self) -> tuple[str, ...]:
        return tuple(fn_token(t) for t in self.states)


def build_standard_detailed(
    pred: EPredicate,
    dfas: Sequence[Dfa],
    mode: str = "accessible",
    *,
    max_states: int = DEFAULT_MAX_STATES,
    scan_cap: int = DEFAULT_SCAN_CAP,
) -> StandardBuild:
    """Standard-modifier build that also reports the state encodings.

    In "accessible" mode states are discovered breadth-first from the
    identity tuple (letters in alphabet order), so the output is already
    canonically numbered.  In "full" mode every function tuple becomes a
    state, enumerated in ranking order, and the build refuses to start if
    that space exceeds ``max_states``.
    """
    if mode not in ("accessible", "full"):
        raise ValueError(f"unknown build mode {mode!r}")
    if pred.arity != len(dfas):
        raise ValueError(f"arity mismatch: {len(dfas)} automata, predicate needs {pred.arity}")
    alphabet = _common_alphabet(dfas)
    cfg = StateConfig.from_dfas(dfas)
    letters = _letter_tuples(dfas)

    if mode == "full":
        total = tuple_space_size(cfg.sizes)
        if total > max_states:
            raise CapExceeded(f"full state space has {total} tuples, cap is {max_states}")
        order = list(all_tuples(cfg.sizes))
        rows = tuple(tuple(tuple_rank(tuple_compose(lt, f)) for f in order) for lt in letters)
        init = tuple_rank(tuple_identity(cfg.sizes))
    else:
        start = tuple_identity(cfg.sizes)
        order = [start]
        index = {start: 0}
        grow: list[list[int]] = [[] for _ in letters]
        i = 0
        while i < len(order):
            f = order[i]
            i += 1
            for li, lt in enumerate(letters):
                g = tuple_compose(lt, f)
                sid = index.get(g)
                if sid is None:
                    if len(order) >= max_states:
                        raise CapExceeded(f"more than {max_states} reachable tuples")
                    sid = len(order)
                    index[g] = sid
                    order.append(g)
                grow[li].append(sid)
        rows = tuple(tuple(r) for r in grow)
        init = 0

    memo: dict = {}
    final_ids = []
    for sid, f in enumerate(order):
        chi = char_tuple(f, cfg.initials, cfg.finals)
        hit = memo.get(chi)
        if hit is None:
            hit = memo[chi] = eval_pred(pred, chi, scan_cap=scan_cap)
        if hit:
            final_ids.append(sid)
    dfa = Dfa(alphabet, len(order), init, frozenset(final_ids), rows)
    return StandardBuild(dfa, tuple(order))


def build_standard(
    pred: EPredicate,
    dfas: Sequence[Dfa],
    mode: str = "accessible",
    *,
    max_states: int = DEFAULT_MAX_STATES,
    scan_cap: int = DEFAULT_SCAN_CAP,
) -> Dfa:
    """Standard-modifier build; see build_standard_detailed."""
    return build_standard_detailed(pred, dfas, mode, max_states=max_states, scan_cap=scan_cap).dfa
