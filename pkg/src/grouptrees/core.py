"""Exact arithmetic and free-group words.

Two foundations live here:

* :class:`Scalar` — exact numbers of the form p + q*sqrt(D) with rational p, q
  and a square-free natural D, with decidable sign and total order.  Every
  length, measure, and translation length in the library is a Scalar; floats
  never enter any computation (they appear only in cosmetic ``approx`` report
  fields).

* :class:`Word` — reduced words over the letters {±1, .., ±n} representing
  elements of a free group of rank n, plus the canonical word enumeration that
  drives every budgeted search.

Determinism contract: all orders used anywhere downstream (letter order, word
order, enumeration order) are defined in this module and nowhere else.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import MixedFieldError, ParseError

# --------------------------------------------------------------------------
# scalars
# --------------------------------------------------------------------------


def _is_square_free(d: int) -> bool:
    if d <= 0:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        if d % p == 0:
            d //= p
        p += 1
    return True


_RAT = r"-?\d+(?:/\d+)?"
# Accepted spellings (whitespace-insensitive):  "3",  "-1/2",  "3/2-1/2*sqrt5",
# "sqrt5", "-sqrt5", "1/2*sqrt5", "2+sqrt2".  Nothing else — in particular no
# floating-point literals.
_SCALAR_RE = re.compile(
    rf"(?P<rat>{_RAT})?"
    rf"(?:(?<=\d)(?P<op>[+-])|(?P<lead>-)?)"
    rf"(?:(?P<coef>{_RAT})\*)?sqrt(?P<d>\d+)"
)


@dataclass(frozen=True, slots=True)
class Scalar:
    """Exact value rat + irr*sqrt(d), normalized so that rationals have d == 1.

    Normalization rules enforced on construction:
      * d must be a square-free natural number;
      * d == 1 folds the irrational part into the rational part;
      * irr == 0 resets d to 1, so equal rationals compare and hash equal no
        matter which field their document declared.
    """

    rat: Fraction
    irr: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self) -> None:
        rat = self.rat if isinstance(self.rat, Fraction) else Fraction(self.rat)
        irr = self.irr if isinstance(self.irr, Fraction) else Fraction(self.irr)
        d = self.d
        if not isinstance(d, int) or not _is_square_free(d):
            raise ValueError(f"field tag must be a square-free natural, got {d!r}")
        if d == 1:
            rat, irr = rat + irr, Fraction(0)
        if irr == 0:
            d = 1
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "irr", irr)
        object.__setattr__(self, "d", d)

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def of(value: "Scalar | Fraction | int | str") -> "Scalar":
        """Coerce ints, Fractions, and strings. Strings go through :meth:`parse`."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return Scalar.parse(value)
        if isinstance(value, (int, Fraction)):
            return Scalar(Fraction(value))
        raise TypeError(f"cannot make a Scalar from {type(value).__name__}")

    @staticmethod
    def parse(text: str) -> "Scalar":
        """Parse "p/q", "p/q + r/s*sqrtD", "r/s*sqrtD", "sqrtD" and signed variants.

        Floats are rejected; whitespace is ignored.  The canonical ``str`` form
        of every Scalar parses back to an equal Scalar.
        """
        compact = "".join(text.split())
        if not compact:
            raise ParseError("empty scalar string")
        if "sqrt" not in compact:
            if not re.fullmatch(_RAT, compact):
                raise ParseError(f"bad rational {text!r} (integers and p/q only, no floats)")
            try:
                return Scalar(Fraction(compact))
            except ZeroDivisionError:
                raise ParseError(f"bad rational {text!r}: zero denominator") from None
        m = _SCALAR_RE.fullmatch(compact)
        if m is None:
            raise ParseError(f"bad scalar {text!r}")
        try:
            rat = Fraction(m.group("rat")) if m.group("rat") else Fraction(0)
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {text!r}: {exc}") from None
        if m.group("op") == "-" or m.group("lead") == "-":
            coef = -coef
        d = int(m.group("d"))
        if not _is_square_free(d):
            raise ParseError(f"sqrt argument must be square-free, got {d}")
        return Scalar(rat, coef, d)

    # -- field bookkeeping ---------------------------------------------------

    def _join(self, other: "Scalar") -> int:
        if self.d == other.d:
            return self.d
        if self.d == 1:
            return other.d
        if other.d == 1:
            return self.d
        raise MixedFieldError(
            f"cannot mix sqrt{self.d} and sqrt{other.d} values in one computation"
        )

    @staticmethod
    def _coerce(value) -> "Scalar | None":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(Fraction(value))
        return None

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.rat + o.rat, self.irr + o.irr, self._join(o))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.rat, -self.irr, self.d)

    def __sub__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join(o)
        return Scalar(
            self.rat * o.rat + self.irr * o.irr * d,
            self.rat * o.irr + self.irr * o.rat,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        d = self._join(o)
        # multiply by the conjugate: 1/(p+q√d) = (p−q√d)/(p²−q²d)
        norm = o.rat * o.rat - o.irr * o.irr * d
        conj = Scalar(o.rat / norm, -o.irr / norm, d)
        return self * conj

    def __rtruediv__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __abs__(self) -> "Scalar":
        return -self if self.sign() < 0 else self

    # -- order -----------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}, decided by integer arithmetic only."""
        p, q = self.rat, self.irr
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if q > 0 else -1
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # opposite signs: compare p² with q²·d  (sign of p wins iff |p| > |q|√d)
        lhs, rhs = p * p, q * q * self.d
        if p > 0:  # q < 0
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)  # p < 0 < q

    def is_zero(self) -> bool:
        return self.rat == 0 and self.irr == 0

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare Scalar with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    # dataclass __eq__/__hash__ on (rat, irr, d) are exactly right thanks to
    # the normalization in __post_init__.

    # -- rendering ---------------------------------------------------------------

    def __str__(self) -> str:
        if self.irr == 0:
            return str(self.rat)
        if self.irr == 1:
            tail = f"sqrt{self.d}"
        elif self.irr == -1:
            tail = f"-sqrt{self.d}"
        elif self.irr < 0:
            tail = f"-{-self.irr}*sqrt{self.d}"
        else:
            tail = f"{self.irr}*sqrt{self.d}"
        if self.rat == 0:
            return tail
        sep = "+" if not tail.startswith("-") else ""
        return f"{self.rat}{sep}{tail}"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def to_float(self) -> float:
        """Approximation for report cosmetics only; never used in decisions."""
        return float(self.rat) + float(self.irr) * (self.d ** 0.5)


ZERO = Scalar(Fraction(0))
ONE = Scalar(Fraction(1))


def scalar_min(values: Iterable[Scalar]) -> Scalar:
    it = iter(values)
    best = next(it)
    for v in it:
        if v < best:
            best = v
    return best


# --------------------------------------------------------------------------
# words
# --------------------------------------------------------------------------

_LOWER = "abcdefghijklmnopqrstuvwxyz"


def letter_key(letter: int) -> tuple[int, int]:
    """Canonical letter order: a < a⁻¹ < b < b⁻¹ < ...  (1, -1, 2, -2, ...)."""
    return (abs(letter), 1 if letter < 0 else 0)


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Free reduction by stack: delete adjacent inverse pairs until none remain."""
    out: list[int] = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Word:
    """A reduced word over {±1..±n}; the identity is the empty word.

    Construction validates reducedness and letter range; use :meth:`make` to
    build from a raw (possibly unreduced) letter sequence.
    """

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        for l in self.letters:
            if not isinstance(l, int) or l == 0 or abs(l) > self.rank:
                raise ValueError(f"letter {l!r} out of range for rank {self.rank}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError(f"word {self.letters} is not reduced")

    @staticmethod
    def make(letters: Iterable[int], rank: int) -> "Word":
        return Word(reduce_letters(letters), rank)

    @staticmethod
    def identity(rank: int) -> "Word":
        return Word((), rank)

    # -- group operations -------------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise ValueError("rank mismatch in word multiplication")
        return Word.make(self.letters + other.letters, self.rank)

    def inverse(self) -> "Word":
        return Word(tuple(-l for l in reversed(self.letters)), self.rank)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word.identity(self.rank)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def is_cyclically_reduced(self) -> bool:
        return len(self.letters) < 2 or self.letters[0] != -self.letters[-1]

    def cyclic_reduce(self) -> tuple["Word", "Word"]:
        """Split as (conjugator, core): self = conjugator * core * conjugator⁻¹,
        with the core cyclically reduced (strip matching ends to a fixed point)."""
        letters = list(self.letters)
        conj: list[int] = []
        while len(letters) >= 2 and letters[0] == -letters[-1]:
            conj.append(letters[0])
            letters = letters[1:-1]
        return Word(tuple(conj), self.rank), Word(tuple(letters), self.rank)

    def sort_key(self) -> tuple:
        return (len(self.letters), tuple(letter_key(l) for l in self.letters))

    # -- I/O ----------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.letters:
            return ""
        if self.rank > 26:
            return "<" + ",".join(str(l) for l in self.letters) + ">"
        out = []
        for l in self.letters:
            ch = _LOWER[abs(l) - 1]
            out.append(ch if l > 0 else ch.upper())
        return "".join(out)

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, rank={self.rank})"


def parse_word(text: str, rank: int) -> Word:
    """Read a word in letter notation: a–z are basis letters, A–Z inverses.

    The input is freely reduced (so "aA" is accepted and means the identity);
    anything but ASCII letters within the rank is rejected.
    """
    letters = []
    for ch in text.strip():
        idx = _LOWER.find(ch.lower())
        if idx < 0 or idx + 1 > rank:
            raise ParseError(f"bad letter {ch!r} in word {text!r} (rank {rank})")
        letters.append(-(idx + 1) if ch.isupper() else idx + 1)
    return Word.make(letters, rank)


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------


def _extensions(letters: tuple[int, ...], alphabet: list[int]) -> Iterator[tuple[int, ...]]:
    last = letters[-1] if letters else None
    for l in alphabet:
        if last is None or l != -last:
            yield letters + (l,)


def _conjugacy_representative(letters: tuple[int, ...]) -> bool:
    """True iff `letters` (cyclically reduced) is the canonical representative of
    its conjugacy-and-inversion class: minimal among all rotations of itself and
    of its inverse under the letter-key lexicographic order."""
    n = len(letters)
    key = tuple(letter_key(l) for l in letters)
    inv = tuple(-l for l in reversed(letters))
    for word in (letters, inv):
        for shift in range(n):
            rot = word[shift:] + word[:shift]
            if word is letters and shift == 0:
                continue
            if tuple(letter_key(l) for l in rot) < key:
                return False
    return True


def enumerate_words(rank: int, max_len: int, mode: str = "reduced") -> Iterator[Word]:
    """Canonical deterministic stream of words of length ≤ max_len.

    mode="reduced": all reduced words including the identity, ordered by length
    then lexicographically (letter order a < a⁻¹ < b < b⁻¹ ...).

    mode="conjugacy": exactly one representative per conjugacy-and-inversion
    class of nontrivial cyclically reduced words, in the same global order.
    """
    if mode not in ("reduced", "conjugacy"):
        raise ValueError(f"unknown enumeration mode {mode!r}")
    alphabet = [l for a in range(1, rank + 1) for l in (a, -a)]
    layer: list[tuple[int, ...]] = [()]
    if mode == "reduced":
        yield Word((), rank)
    for _ in range(max_len):
        next_layer: list[tuple[int, ...]] = []
        for letters in layer:
            for ext in _extensions(letters, alphabet):
                next_layer.append(ext)
                if mode == "reduced":
                    yield Word(ext, rank)
                else:
                    if (len(ext) < 2 or ext[0] != -ext[-1]) and _conjugacy_representative(ext):
                        yield Word(ext, rank)
        layer = next_layer
