"""Complete deterministic finite automata.

A ``Dfa`` is immutable and always complete: one transition per state and
letter.  Alphabet order is part of the value; it drives the canonical
breadth-first state numbering used by ``accessible_part`` and
``minimize``, so two accessible automata are isomorphic exactly when
their canonical forms compare equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ParseError

_FORBIDDEN_IN_TOKEN = set(':#"')


def _valid_token(tok: str) -> bool:
    return bool(tok) and not any(c.isspace() or c in _FORBIDDEN_IN_TOKEN for c in tok)


@dataclass(frozen=True)
class Dfa:
    """A complete DFA over an ordered token alphabet.

    ``trans`` holds one row per letter, aligned with ``alphabet``;
    ``trans[li][q]`` is the successor of state q under letter li.
    """

    alphabet: tuple[str, ...]
    n_states: int
    initial: int
    finals: frozenset[int]
    trans: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        alphabet = tuple(self.alphabet)
        finals = frozenset(self.finals)
        trans = tuple(tuple(row) for row in self.trans)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "finals", finals)
        object.__setattr__(self, "trans", trans)
        n = self.n_states
        if n < 1:
            raise ValueError("a Dfa needs at least one state")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("duplicate letter in alphabet")
        for tok in alphabet:
            if not _valid_token(tok):
                raise ValueError(f"invalid letter token {tok!r}")
        if len(trans) != len(alphabet):
            raise ValueError("one transition row per letter required")
        for tok, row in zip(alphabet, trans):
            if len(row) != n:
                raise ValueError(f"row for {tok!r} has length {len(row)}, expected {n}")
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"image {v} out of range in row for {tok!r}")
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        for q in finals:
            if not 0 <= q < n:
                raise ValueError(f"final state {q} out of range")

    def letter_index(self, letter: str) -> int:
        try:
            return self.alphabet.index(letter)
        except ValueError:
            raise ValueError(f"unknown letter {letter!r}") from None

    def row(self, letter: str) -> tuple[int, ...]:
        return self.trans[self.letter_index(letter)]


def accepts(d: Dfa, word: Sequence[str]) -> bool:
    """Run the word from the initial state; true iff it lands on a final."""
    index = {tok: li for li, tok in enumerate(d.alphabet)}
    q = d.initial
    for tok in word:
        li = index.get(tok)
        if li is None:
            raise ValueError(f"unknown letter {tok!r}")
        q = d.trans[li][q]
    return q in d.finals


def accessible_part(d: Dfa) -> Dfa:
    """Restrict to states reachable from the initial one, BFS-renumbered.

    On a fully accessible automaton this is a pure canonical renumbering:
    states appear in breadth-first discovery order, letters scanned in
    alphabet order.
    """
    order = [d.initial]
    index = {d.initial: 0}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for row in d.trans:
            t = row[q]
            if t not in index:
                index[t] = len(order)
                order.append(t)
    rows = tuple(tuple(index[row[q]] for q in order) for row in d.trans)
    finals = frozenset(index[q] for q in d.finals if q in index)
    return Dfa(d.alphabet, len(order), 0, finals, rows)


def nerode_partition(d: Dfa) -> list[int]:
    """Nerode class of every state, via Moore's refinement.

    Classes are numbered by first occurrence in state order.  States are
    merged iff no word distinguishes them; reachability is not required.
    """
    cls = [1 if q in d.finals else 0 for q in range(d.n_states)]
    n_classes = len(set(cls))
    while True:
        remap: dict[tuple[int, ...], int] = {}
        new = []
        for q in range(d.n_states):
            sig = (cls[q],) + tuple(cls[row[q]] for row in d.trans)
            new.append(remap.setdefault(sig, len(remap)))
        if len(remap) == n_classes:
            return new
        cls, n_classes = new, len(remap)


def _hopcroft_partition(d: Dfa) -> list[int]:
    """Nerode classes via Hopcroft's splitter-worklist refinement."""
    n = d.n_states
    pre: list[list[list[int]]] = [[[] for _ in range(n)] for _ in d.alphabet]
    for li, row in enumerate(d.trans):
        for q, t in enumerate(row):
            pre[li][t].append(q)

    finals = set(d.finals)
    first = {q for q in range(n) if q in finals}
    second = set(range(n)) - first
    blocks: list[set[int]] = []
    for blk in (first, second):
        if blk:
            blocks.append(blk)
    block_of = [0] * n
    for bi, blk in enumerate(blocks):
        for q in blk:
            block_of[q] = bi

    worklist: set[int] = set()
    if len(blocks) == 2:
        worklist.add(0 if len(blocks[0]) <= len(blocks[1]) else 1)

    while worklist:
        ai = worklist.pop()
        splitter = tuple(blocks[ai])  # snapshot: blocks[ai] may be split below
        for li in range(len(d.alphabet)):
            touched: dict[int, set[int]] = {}
            for t in splitter:
                for q in pre[li][t]:
                    touched.setdefault(block_of[q], set()).add(q)
            for bi, hit in touched.items():
                blk = blocks[bi]
                if len(hit) == len(blk):
                    continue
                rest = blk - hit
                ni = len(blocks)
                blocks[bi] = hit
                blocks.append(rest)
                for q in rest:
                    block_of[q] = ni
                if bi in worklist:
                    worklist.add(ni)
                else:
                    worklist.add(bi if len(hit) <= len(rest) else ni)
    return block_of


def minimize(d: Dfa, algo: str = "hopcroft") -> Dfa:
    """Minimal complete DFA for the language of d, canonically numbered.

    ``algo`` picks the refinement engine ("hopcroft" or "moore"); both
    always yield the identical canonical automaton, and the number of
    states of the result is the state complexity of the language.
    """
    if algo not in ("hopcroft", "moore"):
        raise ValueError(f"unknown algorithm {algo!r}")
    h = accessible_part(d)
    part = _hopcroft_partition(h) if algo == "hopcroft" else nerode_partition(h)

    # relabel classes by first occurrence, pick the first state as representative
    relabel: dict[int, int] = {}
    reps: list[int] = []
    for q in range(h.n_states):
        if part[q] not in relabel:
            relabel[part[q]] = len(reps)
            reps.append(q)
    cls = [relabel[c] for c in part]

    rows = tuple(tuple(cls[row[rep]] for rep in reps) for row in h.trans)
    finals = frozenset(c for c, rep in enumerate(reps) if rep in h.finals)
    quotient = Dfa(h.alphabet, len(reps), cls[h.initial], finals, rows)
    return accessible_part(quotient)


def _with_alphabet_order(d: Dfa, order: tuple[str, ...]) -> Dfa:
    rows = tuple(d.row(tok) for tok in order)
    return Dfa(order, d.n_states, d.initial, d.finals, rows)


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    """True iff the two automata recognize the same language.

    The alphabets must carry the same tokens; both are reordered to the
    sorted token order internally, then minimized and compared.
    """
    if set(d1.alphabet) != set(d2.alphabet):
        raise ValueError("alphabet mismatch")
    order = tuple(sorted(d1.alphabet))
    return minimize(_with_alphabet_order(d1, order)) == minimize(_with_alphabet_order(d2, order))


def preimage_dfa(d: Dfa, letter_map: Mapping[str, str]) -> Dfa:
    """Inverse image of the language under a letter-to-letter substitution.

    The result reads the keys of ``letter_map`` (in mapping order) and
    behaves on each as d behaves on its image letter.
    """
    alphabet = tuple(letter_map.keys())
    if not alphabet:
        raise ValueError("letter map must be nonempty")
    rows = []
    for a in alphabet:
        img = letter_map[a]
        if img not in d.alphabet:
            raise ValueError(f"letter {a!r} maps to unknown letter {img!r}")
        rows.append(d.row(img))
    return Dfa(alphabet, d.n_states, d.initial, d.finals, tuple(rows))


_HEADER = ("alphabet", "states", "initial", "final")


def parse_dfa(text: str) -> Dfa:
    """Parse the "dfa v1" text format.

    Tokens are whitespace-separated; ``#`` starts a comment.  The header
    lines (alphabet, states, initial, final) must each appear exactly
    once, transition rows exactly once per letter, in any order.
    """
    lines: list[tuple[int, list[str]]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            lines.append((ln, toks))
    if not lines:
        raise ParseError("line 1: malformed header, expected 'dfa v1'")
    ln, toks = lines[0]
    if toks != ["dfa", "v1"]:
        raise ParseError(f"line {ln}: malformed header, expected 'dfa v1'")
    last_ln = lines[-1][0]

    header: dict[str, tuple[int, list[str]]] = {}
    trans_lines: list[tuple[int, list[str]]] = []
    for ln, toks in lines[1:]:
        key = toks[0]
        if key == "trans":
            trans_lines.append((ln, toks))
        elif key in _HEADER:
            if key in header:
                raise ParseError(f"line {ln}: duplicate '{key}' line")
            header[key] = (ln, toks[1:])
        else:
            raise ParseError(f"line {ln}: unknown directive {key!r}")
    for key in _HEADER:
        if key not in header:
            raise ParseError(f"line {last_ln}: missing '{key}' line")

    def one_int(key: str) -> tuple[int, int]:
        ln, toks = header[key]
        if len(toks) != 1 or not toks[0].lstrip("-").isdigit():
            raise ParseError(f"line {ln}: '{key}' expects a single integer")
        return ln, int(toks[0])

    ln, alphabet_toks = header["alphabet"]
    seen = set()
    for tok in alphabet_toks:
        if tok in seen:
            raise ParseError(f"line {ln}: duplicate letter {tok!r}")
        if not _valid_token(tok):
            raise ParseError(f"line {ln}: invalid letter token {tok!r}")
        seen.add(tok)
    alphabet = tuple(alphabet_toks)

    sln, n = one_int("states")
    if n < 1:
        raise ParseError(f"line {sln}: state count must be positive")
    iln, initial = one_int("initial")
    if not 0 <= initial < n:
        raise ParseError(f"line {iln}: initial out of range")
    fln, final_toks = header["final"]
    finals = set()
    for tok in final_toks:
        if not tok.isdigit():
            raise ParseError(f"line {fln}: 'final' expects integers")
        q = int(tok)
        if not 0 <= q < n:
            raise ParseError(f"line {fln}: final out of range")
        finals.add(q)

    rows: dict[str, tuple[int, ...]] = {}
    for ln, toks in trans_lines:
        if len(toks) < 2 or not toks[1].endswith(":"):
            raise ParseError(f"line {ln}: expected 'trans <letter>: <images>'")
        letter = toks[1][:-1]
        if letter not in seen:
            raise ParseError(f"line {ln}: unknown letter {letter!r}")
        if letter in rows:
            raise ParseError(f"line {ln}: duplicate transition row for {letter!r}")
        imgs = toks[2:]
        if len(imgs) != n:
            raise ParseError(f"line {ln}: expected {n} images, got {len(imgs)}")
        row = []
        for tok in imgs:
            if not tok.isdigit():
                raise ParseError(f"line {ln}: images must be integers")
            v = int(tok)
            if v >= n:
                raise ParseError(f"line {ln}: image out of range")
            row.append(v)
        rows[letter] = tuple(row)
    for letter in alphabet:
        if letter not in rows:
            raise ParseError(f"line {last_ln}: missing transition row for {letter!r}")

    return Dfa(alphabet, n, initial, frozenset(finals), tuple(rows[a] for a in alphabet))


def print_dfa(d: Dfa) -> str:
    """Canonical "dfa v1" document; parse_dfa(print_dfa(d)) == d."""
    out = ["dfa v1"]
    out.append("alphabet " + " ".join(d.alphabet) if d.alphabet else "alphabet")
    out.append(f"states {d.n_states}")
    out.append(f"initial {d.initial}")
    finals = " ".join(str(q) for q in sorted(d.finals))
    out.append(f"final {finals}" if finals else "final")
    for tok, row in zip(d.alphabet, d.trans):
        out.append(f"trans {tok}: " + " ".join(map(str, row)))
    return "\n".join(out) + "\n"


def to_dot(d: Dfa) -> str:
    """Graphviz digraph with the initial state marked by an external arrow.

    Output is deterministic: nodes in id order, edge labels grouping
    letters in alphabet order.
    """
    out = ["digraph dfa {", "  rankdir=LR;", '  __init [shape=none label=""];']
    out.append(f"  __init -> {d.initial};")
    for q in range(d.n_states):
        shape = "doublecircle" if q in d.finals else "circle"
        out.append(f"  {q} [shape={shape}];")
    for q in range(d.n_states):
        grouped: dict[int, list[str]] = {}
        for tok, row in zip(d.alphabet, d.trans):
            grouped.setdefault(row[q], []).append(tok)
        for t, toks in grouped.items():
            label = ",".join(toks)
            out.append(f'  {q} -> {t} [label="{label}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def words_up_to(alphabet: Iterable[str], max_len: int) -> Iterable[tuple[str, ...]]:
    """All words up to the given length, in length-then-lex order."""
    letters = tuple(alphabet)
    for length in range(max_len + 1):
        yield from itertools.product(letters, repeat=length)
