"""Words, generating lists and list-level transformations.

Symbols are plain strings (tokens without whitespace) and words are tuples of
symbols, so ``("a", "a", "b")`` is the word *aab*.  Lists of single-character
symbols can be written compactly as strings: ``GeneratingList.of("aa", "aaa", "b")``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    EmptyList,
    EmptyWord,
    FreshSymbolCollision,
    MalformedLine,
    NotInLanguage,
    SymbolNotInAlphabet,
)

Word = tuple

EMPTY: Word = ()


def as_word(w) -> Word:
    """Coerce ``w`` to a word.

    Strings containing whitespace are split into tokens, other strings into
    characters; tuples and lists are taken as given.
    """
    if isinstance(w, str):
        return tuple(w.split()) if any(c.isspace() for c in w) else tuple(w)
    return tuple(w)


def show(w: Sequence[str]) -> str:
    """Render a word compactly; multi-character tokens force space separation."""
    if not w:
        return "ε"
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return " ".join(w)


def reverse(w: Sequence[str]) -> Word:
    return tuple(reversed(w))


@dataclass(frozen=True)
class GeneratingList:
    """A finite set of non-empty words generating the renewal system X(L).

    Words are stored de-duplicated in lexicographic order, so generator
    indices (as used by :class:`Partitioning`) are stable.
    """

    words: tuple
    alphabet_disjoint: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        words = tuple(sorted({tuple(w) for w in self.words}))
        if not words:
            raise EmptyList()
        if any(len(w) == 0 for w in words):
            raise EmptyWord()
        object.__setattr__(self, "words", words)

    @classmethod
    def of(cls, *words) -> "GeneratingList":
        if len(words) == 1 and not isinstance(words[0], (str, tuple)):
            words = tuple(words[0])
        return cls(tuple(as_word(w) for w in words))

    @property
    def alphabet(self) -> tuple:
        return tuple(sorted({s for w in self.words for s in w}))

    @property
    def total_length(self) -> int:
        return sum(len(w) for w in self.words)

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return as_word(w) in self.words

    def reversed(self) -> "GeneratingList":
        return GeneratingList(tuple(reverse(w) for w in self.words))

    def to_text(self) -> str:
        """Serialise in the list file format (one word per line, tokens spaced)."""
        return "".join(" ".join(w) + "\n" for w in self.words)

    def __str__(self):
        return "{" + ", ".join(show(w) for w in self.words) + "}"


def parse_list(text: str, multichar: bool = False) -> GeneratingList:
    """Parse a list document: one word per line, ``#`` starts a comment line.

    Tokens are separated by spaces.  A line without spaces is split into
    single characters unless ``multichar`` is set, in which case it is one
    symbol.
    """
    words = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if any(not c.isprintable() for c in line):
            raise MalformedLine(no, raw)
        if " " in line or "\t" in line:
            tokens = tuple(line.split())
        elif multichar:
            tokens = (line,)
        else:
            tokens = tuple(line)
        if any(t.startswith("#") for t in tokens):
            raise MalformedLine(no, raw)
        words.append(tokens)
    if not words:
        raise EmptyList()
    return GeneratingList(tuple(words))


def read_list(path, multichar: bool = False) -> GeneratingList:
    with open(path, encoding="utf-8") as fh:
        return parse_list(fh.read(), multichar=multichar)


def fresh_names(s: str, k: int) -> tuple:
    return tuple(f"{s}#{i}" for i in range(1, k + 1))


def _check_fresh(lst: GeneratingList, s, fresh, k):
    if s not in lst.alphabet:
        raise SymbolNotInAlphabet(s)
    fresh = fresh_names(s, k) if fresh is None else tuple(fresh)
    if len(fresh) != k or len(set(fresh)) != k:
        raise FreshSymbolCollision(f"need {k} distinct fresh symbols, got {fresh!r}")
    clash = set(fresh) & set(lst.alphabet)
    if clash:
        raise FreshSymbolCollision(f"fresh symbols already in alphabet: {sorted(clash)}")
    return fresh


def fragment(lst: GeneratingList, s: str, k: int, fresh=None) -> GeneratingList:
    """Fragment the symbol ``s`` into ``k`` new symbols.

    Returns the full preimage of ``lst`` under the map collapsing every fresh
    symbol to ``s``; a word with l occurrences of ``s`` yields k**l words.
    """
    if k < 1:
        raise ValueError("fragmentation count must be positive")
    fresh = _check_fresh(lst, s, fresh, k)
    out = []
    for w in lst:
        choices = [fresh if t == s else (t,) for t in w]
        out.extend(itertools.product(*choices))
    return GeneratingList(tuple(out))


def collapse(lst: GeneratingList, mapping: dict) -> GeneratingList:
    """Apply a letter-to-letter map to every word (e.g. undo a fragmentation)."""
    return GeneratingList(tuple(tuple(mapping.get(t, t) for t in w) for w in lst))


def sum_lists(l1: GeneratingList, l2: GeneratingList) -> GeneratingList:
    disjoint = not (set(l1.alphabet) & set(l2.alphabet))
    return GeneratingList(l1.words + l2.words, alphabet_disjoint=disjoint)


def symbol_expand(lst: GeneratingList, s: str, p: int, fresh=None) -> GeneratingList:
    """Replace every occurrence of ``s`` by the word fresh_1 ... fresh_p."""
    if p < 2:
        raise ValueError("symbol expansion needs p >= 2")
    fresh = _check_fresh(lst, s, fresh, p)
    out = []
    for w in lst:
        nw = []
        for t in w:
            nw.extend(fresh if t == s else (t,))
        out.append(tuple(nw))
    return GeneratingList(tuple(out))


@dataclass(frozen=True)
class Partitioning:
    """A window into a concatenation of generators.

    ``generators`` are indices into ``GeneratingList.words``.  The beginning
    is a proper prefix of the first generator and the end a proper suffix of
    the last.  Ray partitionings additionally carry a non-empty ``cycle`` that
    repeats forever after ``generators``; their ``end`` is always empty.
    """

    beginning: Word
    generators: tuple
    end: Word
    cycle: tuple = ()

    def concatenation(self, lst: GeneratingList) -> Word:
        return tuple(s for i in self.generators for s in lst.words[i])

    def reassemble(self, lst: GeneratingList) -> Word:
        v = self.concatenation(lst)
        return v[len(self.beginning): len(v) - len(self.end)]


def enumerate_partitionings(lst: GeneratingList, w, max_generators: int | None = None) -> set:
    """All partitionings of the word ``w`` using at most ``max_generators`` generators.

    With the default bound (``len(w)``) the enumeration is complete, since
    every generator used contributes at least one letter of ``w``.
    """
    w = as_word(w)
    if max_generators is None:
        max_generators = max(len(w), 1)
    if max_generators < 1:
        raise ValueError("max_generators must be >= 1")
    gens = lst.words
    found = set()
    if not w:
        return found

    def extend(pos, used, beginning):
        # w[:pos] is covered; continue with a generator read from its start
        for i, g in enumerate(gens):
            rest = w[pos:]
            if len(g) >= len(rest):
                if g[: len(rest)] == rest:
                    found.add(Partitioning(beginning, used + (i,), g[len(rest):]))
            elif len(used) + 1 < max_generators and rest[: len(g)] == g:
                extend(pos + len(g), used + (i,), beginning)

    for i, g in enumerate(gens):
        for p in range(len(g)):
            tail = g[p:]
            if len(tail) >= len(w):
                if tail[: len(w)] == w:
                    found.add(Partitioning(g[:p], (i,), tail[len(w):]))
            elif max_generators > 1 and w[: len(tail)] == tail:
                extend(len(tail), (i,), g[:p])
    return found


class Bordering(enum.Enum):
    STRONGLY = "strongly_bordering"
    BORDERING = "bordering"
    NOT = "not_bordering"

    def __str__(self):
        return self.value


def bordering_status(lst: GeneratingList, w, side: str = "left", max_generators: int | None = None) -> Bordering:
    """Classify a word as strongly / plainly / not left- (or right-) bordering."""
    w = as_word(w)
    if side == "right":
        return bordering_status(lst.reversed(), reverse(w), "left", max_generators)
    if side != "left":
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    parts = enumerate_partitionings(lst, w, max_generators)
    if not parts:
        raise NotInLanguage(f"{show(w)} has no partitioning over {lst}")
    empty = [p for p in parts if not p.beginning]
    if len(empty) == len(parts):
        return Bordering.STRONGLY
    return Bordering.BORDERING if empty else Bordering.NOT
