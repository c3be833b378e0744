"""Positive words, free-group words and their integer invariants.

Text format: ``a`` and ``b`` are the generators, ``A`` and ``B`` their
inverses.  Positive words are never reduced (they contain no inverses);
group words are freely reduced on construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    EqualWords,
    InvalidPrefixSequence,
    NotInCommutatorImage,
    ParseError,
    UnequalAbelianization,
)

_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}


def free_reduce(letters: str) -> str:
    out: list[str] = []
    for ch in letters:
        if out and out[-1] == _INVERSE[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


@dataclass(frozen=True)
class AbelianImage:
    m: int
    n: int

    def __add__(self, other: AbelianImage) -> AbelianImage:
        return AbelianImage(self.m + other.m, self.n + other.n)

    def __neg__(self) -> AbelianImage:
        return AbelianImage(-self.m, -self.n)

    def is_zero(self) -> bool:
        return self.m == 0 and self.n == 0

    def as_list(self) -> list[int]:
        return [self.m, self.n]


@dataclass(frozen=True)
class PositiveWord:
    letters: str = ""

    def __post_init__(self) -> None:
        for i, ch in enumerate(self.letters):
            if ch not in "ab":
                raise ParseError(self.letters, i, "'a', 'b'")

    def __str__(self) -> str:
        return self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: PositiveWord) -> PositiveWord:
        return PositiveWord(self.letters + other.letters)

    @property
    def count_a(self) -> int:
        return self.letters.count("a")

    @property
    def count_b(self) -> int:
        return self.letters.count("b")

    def ab(self) -> AbelianImage:
        return AbelianImage(self.count_a, self.count_b)

    def to_group(self) -> GroupWord:
        return GroupWord(self.letters)


@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word over ``a, A, b, B``; the empty word is the identity."""

    letters: str = ""

    def __post_init__(self) -> None:
        for i, ch in enumerate(self.letters):
            if ch not in _INVERSE:
                raise ParseError(self.letters, i, "'a', 'b', 'A', 'B'")
        object.__setattr__(self, "letters", free_reduce(self.letters))

    def __str__(self) -> str:
        return self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return GroupWord("".join(_INVERSE[ch] for ch in reversed(self.letters)))

    def __pow__(self, k: int) -> GroupWord:
        if k < 0:
            return self.inverse() ** (-k)
        return GroupWord(self.letters * k)

    def substitute(self, image_a: GroupWord, image_b: GroupWord) -> GroupWord:
        """Image under the endomorphism ``a -> image_a``, ``b -> image_b``."""
        table = {
            "a": image_a.letters,
            "b": image_b.letters,
            "A": image_a.inverse().letters,
            "B": image_b.inverse().letters,
        }
        return GroupWord("".join(table[ch] for ch in self.letters))


def commutator(x: GroupWord, y: GroupWord) -> GroupWord:
    """``[x, y] = x^-1 y^-1 x y``."""
    return x.inverse() * y.inverse() * x * y


def parse_positive(text: str) -> PositiveWord:
    return PositiveWord(text)


def parse_group_word(text: str) -> GroupWord:
    return GroupWord(text)


def abelianization(x: GroupWord | PositiveWord) -> AbelianImage:
    s = x.letters
    return AbelianImage(s.count("a") - s.count("A"), s.count("b") - s.count("B"))


def _check_pair(u: PositiveWord, v: PositiveWord) -> None:
    if u.ab() != v.ab():
        raise UnequalAbelianization(f"ab({u}) = {u.ab().as_list()} != ab({v}) = {v.ab().as_list()}")
    if u == v:
        raise EqualWords(f"u and v are both {u.letters!r}")


def difference_word(u: PositiveWord, v: PositiveWord) -> GroupWord:
    """Freely reduced ``u^-1 v``."""
    _check_pair(u, v)
    return u.to_group().inverse() * v.to_group()


def prefix_counts(x: PositiveWord) -> list[int]:
    """``A_x(j)``: number of a's before the j-th b."""
    out = []
    seen_a = 0
    for ch in x.letters:
        if ch == "a":
            seen_a += 1
        else:
            out.append(seen_a)
    return out


def reconstruct_from_prefix(m: int, n: int, A: Sequence[int]) -> PositiveWord:
    if len(A) != n:
        raise InvalidPrefixSequence(f"expected {n} prefix counts, got {len(A)}")
    prev = 0
    parts = []
    for j, val in enumerate(A):
        if val < prev or val > m:
            raise InvalidPrefixSequence(f"prefix count {val} at row {j + 1} out of range")
        parts.append("a" * (val - prev) + "b")
        prev = val
    parts.append("a" * (m - prev))
    return PositiveWord("".join(parts))


@dataclass(frozen=True)
class RowData:
    n: int
    delta: tuple[int, ...]
    alpha: tuple[int, ...]
    eta: tuple[int, ...]
    active: frozenset[int]  # 1-based row indices

    @property
    def active_sorted(self) -> list[int]:
        return sorted(self.active)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def row_data(u: PositiveWord, v: PositiveWord) -> RowData:
    _check_pair(u, v)
    Au, Av = prefix_counts(u), prefix_counts(v)
    delta = tuple(y - x for x, y in zip(Au, Av))
    alpha = tuple(min(x, y) for x, y in zip(Au, Av))
    eta = tuple(_sign(d) for d in delta)
    active = frozenset(j + 1 for j, d in enumerate(delta) if d != 0)
    # distinct words with equal counts always differ in some prefix count
    assert active, "empty active set for distinct words"
    return RowData(len(delta), delta, alpha, eta, active)


def delta0(u: PositiveWord, v: PositiveWord) -> int:
    """Alternating row-prefix invariant ``sum_j (-1)^(j-1) delta_j``."""
    rows = row_data(u, v)
    return sum(d if j % 2 == 0 else -d for j, d in enumerate(rows.delta))


def signed_a_count(x: PositiveWord) -> int:
    """Each a counts +1 or -1 by parity of the number of preceding b's."""
    total = 0
    parity = 1
    for ch in x.letters:
        if ch == "a":
            total += parity
        else:
            parity = -parity
    return total


@dataclass(frozen=True)
class DihedralElement:
    """Affine map ``x -> eps*x + k`` of the integers; composition ``(gh)(x) = g(h(x))``."""

    eps: int = 1
    k: int = 0

    def __mul__(self, other: DihedralElement) -> DihedralElement:
        return DihedralElement(self.eps * other.eps, self.k + self.eps * other.k)

    def inverse(self) -> DihedralElement:
        # x = eps*y + k  =>  y = eps*x - eps*k
        return DihedralElement(self.eps, -self.eps * self.k)

    def __call__(self, x: int) -> int:
        return self.eps * x + self.k


DIHEDRAL_S = DihedralElement(-1, 0)
DIHEDRAL_T = DihedralElement(-1, 1)
DIHEDRAL_R = DIHEDRAL_S * DIHEDRAL_T  # x -> x - 1


def kappa(w: GroupWord) -> int:
    """Integer with ``rho(w) = r^(2*kappa)`` where ``rho: a -> s, b -> t`` and ``r = s t``.

    With ``s(x) = -x`` and ``t(x) = 1 - x`` one has ``r(x) = x - 1``, so
    ``r^(2 kappa)`` is translation by ``-2 kappa``.
    """
    images = {"a": DIHEDRAL_S, "A": DIHEDRAL_S, "b": DIHEDRAL_T, "B": DIHEDRAL_T}
    g = DihedralElement()
    for ch in w.letters:
        g = g * images[ch]
    if g.eps != 1 or g.k % 2:
        raise NotInCommutatorImage(f"image of {w} is {g}, not an even rotation")
    return -g.k // 2


@dataclass(frozen=True)
class SingleRowDecomposition:
    """``u = P b a^d Q, v = P a^d b Q`` when ``epsilon = +1``; swapped when ``-1``.

    In both cases ``u^-1 v = Q^-1 [a^d, b]^epsilon Q``.
    """

    P: PositiveWord
    Q: PositiveWord
    d: int
    epsilon: int

    def words(self) -> tuple[PositiveWord, PositiveWord]:
        left = self.P + PositiveWord("b" + "a" * self.d) + self.Q
        right = self.P + PositiveWord("a" * self.d + "b") + self.Q
        return (left, right) if self.epsilon == 1 else (right, left)

    def conjugated_commutator(self) -> GroupWord:
        core = commutator(GroupWord("a" * self.d), GroupWord("b")) ** self.epsilon
        q = self.Q.to_group()
        return q.inverse() * core * q


def single_row_decomposition(u: PositiveWord, v: PositiveWord) -> SingleRowDecomposition | None:
    rows = row_data(u, v)
    if len(rows.active) != 1:
        return None
    (j0,) = rows.active
    delta = rows.delta[j0 - 1]
    d = abs(delta)
    b_positions = [i for i, ch in enumerate(u.letters) if ch == "b"]
    pos = b_positions[j0 - 1]
    if delta > 0:
        P, Q = u.letters[:pos], u.letters[pos + 1 + d:]
        eps = 1
    else:
        P, Q = u.letters[:pos - d], u.letters[pos + 1:]
        eps = -1
    return SingleRowDecomposition(PositiveWord(P), PositiveWord(Q), d, eps)


def words_with_counts(na: int, nb: int) -> Iterator[PositiveWord]:
    """All positive words with exactly ``na`` a's and ``nb`` b's, lexicographic."""
    if na == 0 and nb == 0:
        yield PositiveWord("")
        return
    if na:
        for rest in words_with_counts(na - 1, nb):
            yield PositiveWord("a" + rest.letters)
    if nb:
        for rest in words_with_counts(na, nb - 1):
            yield PositiveWord("b" + rest.letters)


def hard_pairs(max_a: int, max_b: int) -> Iterator[tuple[PositiveWord, PositiveWord]]:
    """Every ordered pair of distinct positive words with equal counts up to the bounds."""
    for na in range(max_a + 1):
        for nb in range(max_b + 1):
            ws = list(words_with_counts(na, nb))
            for u in ws:
                for v in ws:
                    if u != v:
                        yield u, v
