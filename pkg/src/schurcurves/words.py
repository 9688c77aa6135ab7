"""Words over the mutation alphabet.

A word is a finite sequence of letters from {1, ..., n} in which no two
consecutive letters are equal.  Words name both mutation sequences and
crossing sequences of plane curves, so they are used by every other module.
Letters are 1-based throughout the package.
"""

from __future__ import annotations

from typing import Iterable, Iterator

Word = tuple[int, ...]


class WordError(ValueError):
    """Raised for sequences that are not valid words."""


def word(letters: Iterable[int] | str, n: int = 3) -> Word:
    """Validate and normalize a word given as an iterable or digit string."""
    w = parse_word(letters) if isinstance(letters, str) else tuple(letters)
    check_word(w, n)
    return w


def parse_word(s: str) -> Word:
    """Parse a digit string like "3213212312" (only for alphabets up to 9)."""
    if not all(c.isdigit() for c in s):
        raise WordError(f"not a digit string: {s!r}")
    return tuple(int(c) for c in s)


def format_word(w: Word) -> str:
    if any(c > 9 for c in w):
        return ".".join(str(c) for c in w)
    return "".join(str(c) for c in w)


def check_word(w: Word, n: int = 3) -> None:
    for c in w:
        if not 1 <= c <= n:
            raise WordError(f"letter {c} outside alphabet 1..{n}")
    for a, b in zip(w, w[1:]):
        if a == b:
            raise WordError(f"repeated letter {a} in {format_word(w)}")


def free_reduce(w: Word) -> Word:
    """Cancel adjacent equal letters until no pair remains (stack pass)."""
    out: list[int] = []
    for c in w:
        if out and out[-1] == c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def is_palindrome(w: Word) -> bool:
    return w == w[::-1]


def enumerate_words(max_len: int, n: int = 3, min_len: int = 1) -> Iterator[Word]:
    """All words of length min_len..max_len in lexicographic order per length."""
    letters = range(1, n + 1)

    def extend(w: list[int], remaining: int) -> Iterator[Word]:
        if remaining == 0:
            yield tuple(w)
            return
        for c in letters:
            if w and w[-1] == c:
                continue
            w.append(c)
            yield from extend(w, remaining - 1)
            w.pop()

    for length in range(min_len, max_len + 1):
        yield from extend([], length)


def count_words(length: int, n: int = 3) -> int:
    """Number of words of exactly the given length: n * (n-1)^(length-1)."""
    if length == 0:
        return 1
    return n * (n - 1) ** (length - 1)
