"""Freely reduced words in a finitely generated free group.

Letters are nonzero ints: +k is the k-th generator, -k its inverse.
Generator 1 prints as ``a``, 2 as ``b``, and so on; uppercase means
inverse, so the word a*b*a^-1*b^-1 is written "abAB".
"""

from __future__ import annotations

from .errors import InvalidInputError

_ALPHABET = "abcdefghij"


def _reduce(letters) -> tuple[int, ...]:
    out: list[int] = []
    for g in letters:
        if g == 0:
            raise InvalidInputError("0 is not a generator letter")
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


class Word:
    """A freely reduced word; immutable and hashable."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        object.__setattr__(self, "letters", _reduce(letters))

    def __setattr__(self, *a):
        raise AttributeError("Word is immutable")

    @classmethod
    def from_string(cls, s: str) -> "Word":
        letters = []
        for ch in s.strip():
            low = ch.lower()
            if low not in _ALPHABET:
                raise InvalidInputError(f"unknown generator letter {ch!r}")
            g = _ALPHABET.index(low) + 1
            letters.append(-g if ch.isupper() else g)
        return cls(letters)

    def __str__(self) -> str:
        bits = []
        for g in self.letters:
            ch = _ALPHABET[abs(g) - 1]
            bits.append(ch.upper() if g < 0 else ch)
        return "".join(bits) or "1"

    def __repr__(self):
        return f"Word({str(self)!r})"

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-g for g in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        return Word(base.letters * abs(n))

    def reversed(self) -> "Word":
        """Letters in reverse order, signs kept."""
        return Word(tuple(reversed(self.letters)))

    def conjugate_by(self, u: "Word") -> "Word":
        return u * self * u.inverse()

    def rank(self) -> int:
        return max((abs(g) for g in self.letters), default=0)

    def exponent_sum(self, gen: int) -> int:
        return sum(1 if g == gen else -1 if g == -gen else 0 for g in self.letters)

    def total_exponent(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.letters)

    def cyclic_reduce(self) -> "Word":
        ls = list(self.letters)
        while len(ls) >= 2 and ls[0] == -ls[-1]:
            ls = ls[1:-1]
        return Word(ls)

    def conjugacy_key(self) -> tuple[int, ...]:
        """Canonical key, shared by all conjugates of the word and its inverse.

        Representatives with fewer inverse letters win, which is what the
        trace recursion's termination argument relies on.
        """
        w = self.cyclic_reduce()
        ls = w.letters
        if not ls:
            return ()
        candidates = []
        for seq in (ls, Word(ls).inverse().letters):
            for i in range(len(seq)):
                candidates.append(seq[i:] + seq[:i])

        def sort_key(seq):
            return (sum(1 for g in seq if g < 0),
                    tuple((g < 0, abs(g)) for g in seq))

        return min(candidates, key=sort_key)


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()
