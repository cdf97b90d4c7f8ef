"""Finite words, morphisms and lazily extended infinite words.

Letters are small non-negative integers.  Infinite words are represented by
:class:`MorphicStream`, a prefix cache that grows on demand either by
re-applying a prolongable morphism or by pulling from a letter generator.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

STAR = 2  # letter used for '*' in the star-annotated trace

DEFAULT_ALIASES = {0: "0", 1: "1", 2: "2"}
STAR_ALIASES = {0: "0", 1: "1", STAR: "*"}


class DomainError(ValueError):
    """A letter is outside the domain alphabet of a morphism."""


class LimitDoesNotExist(ValueError):
    """``m^n(a)`` does not converge to an infinite word."""


class InsufficientOnes(ValueError):
    """The gap map needs at least two occurrences of 1."""


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self) -> None:
        for a in self.letters:
            if not 0 <= a < self.alphabet_size:
                raise ValueError(f"letter {a} outside alphabet of size {self.alphabet_size}")

    @classmethod
    def of(cls, letters: Iterable[int], alphabet_size: int | None = None) -> Word:
        letters = tuple(letters)
        if alphabet_size is None:
            alphabet_size = max(letters, default=-1) + 1
        return cls(letters, alphabet_size)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i], self.alphabet_size)
        return self.letters[i]

    def __add__(self, other: Word) -> Word:
        return Word(self.letters + other.letters, max(self.alphabet_size, other.alphabet_size))

    def __mul__(self, times: int) -> Word:
        return Word(self.letters * times, self.alphabet_size)

    def __eq__(self, other: object) -> bool:
        # Alphabet bookkeeping does not take part in equality of words.
        if isinstance(other, Word):
            return self.letters == other.letters
        if isinstance(other, (tuple, list)):
            return self.letters == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)


class Morphism:
    """A non-erasing morphism given by one image per domain letter.

    ``images`` maps letters to their images.  Letters absent from the map are
    outside the domain; applying the morphism to them raises
    :class:`DomainError`.
    """

    def __init__(self, images: Mapping[int, Sequence[int]], alphabet_size: int | None = None):
        if not images:
            raise ValueError("a morphism needs at least one image")
        table: dict[int, tuple[int, ...]] = {}
        for a, img in images.items():
            img = tuple(img)
            if not img:
                raise ValueError(f"image of {a} is empty; erasing morphisms are not supported")
            table[a] = img
        top = max(max(img) for img in table.values()) + 1
        if alphabet_size is None:
            alphabet_size = top
        elif top > alphabet_size:
            raise ValueError("image letter outside the codomain alphabet")
        self.images = table
        self.alphabet_size = alphabet_size
        self._lookup = [table.get(a) for a in range(max(table) + 1)]

    @classmethod
    def from_strings(cls, images: Mapping[str, str]) -> Morphism:
        """Build from single-digit strings, e.g. ``{"0": "01", "1": "00"}``."""
        return cls({int(a): [int(c) for c in img] for a, img in images.items()})

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.images)

    def image(self, a: int) -> tuple[int, ...]:
        try:
            img = self._lookup[a] if a >= 0 else None
        except IndexError:
            img = None
        if img is None:
            raise DomainError(f"letter {a} is not in the domain {sorted(self.images)}")
        return img

    def apply(self, letters: Iterable[int]) -> list[int]:
        out: list[int] = []
        lookup = self._lookup
        try:
            for a in letters:
                img = lookup[a]
                if img is None or a < 0:
                    raise IndexError
                out.extend(img)
        except (IndexError, TypeError):
            raise DomainError(f"letter {a} is not in the domain {sorted(self.images)}") from None
        return out

    def __call__(self, word):
        if isinstance(word, Word):
            return apply_morphism(self, word)
        return self.apply(word)

    def power(self, n: int, letters: Iterable[int]) -> list[int]:
        out = list(letters)
        for _ in range(n):
            out = self.apply(out)
        return out

    def compose(self, inner: Morphism) -> Morphism:
        """Return ``self ∘ inner`` (apply ``inner`` first)."""
        return Morphism({a: self.apply(img) for a, img in inner.images.items()}, self.alphabet_size)

    def is_prolongable(self, a: int) -> bool:
        img = self.images.get(a)
        return img is not None and len(img) >= 2 and img[0] == a

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Morphism) and self.images == other.images

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{format_word(img)}" for a, img in sorted(self.images.items()))
        return f"Morphism({body})"


def apply_morphism(m: Morphism, w: Word) -> Word:
    return Word(tuple(m.apply(w.letters)), m.alphabet_size)


class MorphicStream:
    """An infinite word known through an extendable prefix cache.

    Exactly one of ``morphism``/``generator`` is used.  A morphic stream grows
    its cache by re-applying the morphism to the current cache (the cache is a
    prefix of the fixed point, so its image is a longer prefix).  A generator
    stream calls ``generator(i)`` for each new 0-based position.

    ``index_base`` only affects :meth:`at`; :meth:`prefix` and ``stream[i]``
    are always 0-based offsets into the word.
    """

    def __init__(
        self,
        *,
        morphism: Morphism | None = None,
        seed: int | None = None,
        generator: Callable[[int], int] | None = None,
        index_base: int = 0,
        alphabet_size: int | None = None,
        name: str = "",
    ):
        if (morphism is None) == (generator is None):
            raise ValueError("give exactly one of morphism or generator")
        if index_base not in (0, 1):
            raise ValueError("index_base must be 0 or 1")
        self.morphism = morphism
        self.seed = seed
        self.generator = generator
        self.index_base = index_base
        self.name = name
        self._lock = threading.Lock()
        if morphism is not None:
            if seed is None or not morphism.is_prolongable(seed):
                raise LimitDoesNotExist(f"{morphism!r} is not prolongable on {seed}")
            self.alphabet_size = morphism.alphabet_size
            self._cache: list[int] = [seed]
        else:
            self.alphabet_size = alphabet_size if alphabet_size is not None else 2
            self._cache = []

    def __repr__(self) -> str:
        src = f"fixed point of {self.morphism!r} at {self.seed}" if self.morphism else "generator"
        return f"MorphicStream({self.name or src}, cached={len(self._cache)})"

    @property
    def cached(self) -> int:
        return len(self._cache)

    def _extend(self, n: int) -> None:
        with self._lock:
            cache = self._cache
            if len(cache) >= n:
                return
            if self.morphism is not None:
                while len(cache) < n:
                    cache = self.morphism.apply(cache)
            else:
                target = max(n, 2 * len(cache), 64)
                gen = self.generator
                cache.extend(gen(i) for i in range(len(cache), target))
            self._cache = cache

    def prefix(self, n: int) -> Word:
        return Word(self.letters(n), self.alphabet_size)

    def letters(self, n: int) -> tuple[int, ...]:
        """First ``n`` letters as a plain tuple."""
        if n < 0:
            raise ValueError("prefix length must be non-negative")
        self._extend(n)
        return tuple(self._cache[:n])

    def __getitem__(self, i):
        if isinstance(i, slice):
            if i.stop is None or i.stop < 0 or (i.start or 0) < 0:
                raise IndexError("stream slices need non-negative explicit bounds")
            self._extend(i.stop)
            return tuple(self._cache[i])
        if i < 0:
            raise IndexError("streams have no end to index from")
        self._extend(i + 1)
        return self._cache[i]

    def at(self, n: int) -> int:
        """Letter at index ``n`` in the stream's own indexing convention."""
        return self[n - self.index_base]

    def __iter__(self) -> Iterator[int]:
        i = 0
        while True:
            yield self[i]
            i += 1


def fixed_point(m: Morphism, a: int, *, index_base: int = 0, name: str = "") -> MorphicStream:
    """The infinite word ``lim m^n(a)``.

    If ``m`` is prolongable on ``a`` this is the usual fixed point.  Otherwise,
    when the first letter ``b`` of ``m(a)`` is prolongable, ``m^n(a)`` starts
    with ``m^(n-1)(b)`` and the limit is the fixed point at ``b``.
    """
    if m.is_prolongable(a):
        return MorphicStream(morphism=m, seed=a, index_base=index_base, name=name)
    b = m.image(a)[0]
    if m.is_prolongable(b):
        return MorphicStream(morphism=m, seed=b, index_base=index_base, name=name)
    raise LimitDoesNotExist(f"no prolongable letter reachable from {a} under {m!r}")


def prefix(s: MorphicStream, n: int) -> Word:
    return s.prefix(n)


def gamma(w: Iterable[int]) -> tuple[int, ...]:
    """Lengths of the zero runs strictly between consecutive 1's of ``w``."""
    ones = [i for i, a in enumerate(w) if a == 1]
    if len(ones) < 2:
        raise InsufficientOnes(f"need at least two 1's, found {len(ones)}")
    return tuple(j - i - 1 for i, j in zip(ones, ones[1:]))


def format_word(letters: Iterable[int], aliases: Mapping[int, str] | None = None, sep: str | None = None) -> str:
    """Serialize a word on one line.

    Without ``sep``, single-digit letters are concatenated and anything wider
    falls back to commas.  ``aliases`` overrides individual letters (e.g. the
    star letter).
    """
    letters = list(letters)
    if aliases:
        symbols = [aliases.get(a, str(a)) for a in letters]
    else:
        symbols = [str(a) for a in letters]
    if sep is None:
        sep = "" if all(len(s) == 1 for s in symbols) else ","
    return sep.join(symbols)


def parse_word(text: str, aliases: Mapping[str, int] | None = None) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    tokens = text.split(",") if "," in text else list(text)
    aliases = aliases or {}
    return tuple(aliases[t] if t in aliases else int(t) for t in (tok.strip() for tok in tokens))


def stream_csv(s: MorphicStream, n: int) -> str:
    """``index,letter`` lines for the first ``n`` letters in the stream's indexing."""
    return "".join(f"{i + s.index_base},{a}\n" for i, a in enumerate(s.letters(n)))
