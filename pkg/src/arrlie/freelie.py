"""Free Lie algebra machinery over the integers.

Degree-r components are handled in the Lyndon basis: the bracketed Lyndon
words of length r over the alphabet {0, ..., n-1} form a Z-basis of the
degree-r part of the free Lie ring on n generators.  Words are plain tuples
of ints; elements are sparse {word: coefficient} maps.

Bracket expansion goes through the tensor algebra: a bracketed Lyndon word
equals its word plus lexicographically larger shuffles, so a Lie element
written in word coordinates can be peeled off greedily, smallest word first.
This keeps all arithmetic in Z (the leading coefficient is always 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb


Word = tuple  # tuple of int letters


def is_lyndon(word) -> bool:
    """A nonempty word is Lyndon when it is strictly smaller than every
    proper rotation."""
    n = len(word)
    if n == 0:
        return False
    for i in range(1, n):
        if word[i:] + word[:i] <= word:
            return False
    return True


def lyndon_words(n: int, r: int) -> list:
    """All Lyndon words of length exactly r over {0..n-1}, lex sorted.

    Duval's generation: repeatedly extend w periodically and bump the last
    letter, emitting each Lyndon word of length <= r once, in lex order.
    """
    if n < 1 or r < 1:
        raise ValueError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == r:
            out.append(tuple(w))
        # extend periodically up to length r
        while len(w) < r:
            w.append(w[len(w) - m])
        # strip trailing maximal letters
        while w and w[-1] == n - 1:
            w.pop()
    return out


@lru_cache(maxsize=None)
def _lyndon_basis_cached(n: int, r: int) -> tuple:
    return tuple(lyndon_words(n, r))


def lyndon_basis(n: int, r: int) -> tuple:
    """Ordered (lex) Lyndon-word basis of the degree-r component of the
    free Lie ring on n generators."""
    return _lyndon_basis_cached(n, r)


@lru_cache(maxsize=None)
def word_index(n: int, r: int) -> dict:
    """Word -> position in lyndon_basis(n, r)."""
    return {w: i for i, w in enumerate(lyndon_basis(n, r))}


def _mobius(d: int) -> int:
    m = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            m = -m
        else:
            p += 1
    if d > 1:
        m = -m
    return m


def witt_rank(n: int, r: int) -> int:
    """Number of Lyndon words of length r on n letters: the degree-r rank
    of the free Lie algebra, (1/r) * sum_{d|r} mobius(d) n^(r/d)."""
    if n < 0 or r < 1:
        raise ValueError(f"need n >= 0 and r >= 1, got n={n}, r={r}")
    total = sum(_mobius(d) * n ** (r // d) for d in range(1, r + 1) if r % d == 0)
    assert total % r == 0
    return total // r


def chen_free_rank(n: int, r: int) -> int:
    """Rank of the degree-r piece of the free group's Chen Lie algebra:
    (r-1) * binom(n+r-2, r), for r >= 2."""
    if n < 0 or r < 2:
        raise ValueError(f"need n >= 0 and r >= 2, got n={n}, r={r}")
    return (r - 1) * comb(n + r - 2, r)


@lru_cache(maxsize=None)
def standard_factorization(word) -> tuple:
    """Split a Lyndon word of length >= 2 as (u, v) with v the longest
    proper Lyndon suffix (equivalently the lex-least proper suffix);
    then u is Lyndon, u < v, and [u, v] is the bracketing of the word."""
    if len(word) < 2:
        raise ValueError(f"no factorization for {word!r}")
    v = min(word[i:] for i in range(1, len(word)))
    return word[: len(word) - len(v)], v


@lru_cache(maxsize=None)
def tensor_of_lyndon(word) -> tuple:
    """Tensor-algebra expansion of the bracketed Lyndon word, as a tuple of
    (word, coeff) pairs.  The given word itself always carries coefficient 1
    and every other word in the support is lexicographically larger."""
    if len(word) == 1:
        return ((word, 1),)
    u, v = standard_factorization(word)
    tu, tv = tensor_of_lyndon(u), tensor_of_lyndon(v)
    acc = {}
    for wu, cu in tu:
        for wv, cv in tv:
            key = wu + wv
            acc[key] = acc.get(key, 0) + cu * cv
            key = wv + wu
            acc[key] = acc.get(key, 0) - cu * cv
    return tuple((w, c) for w, c in acc.items() if c)


def lie_from_tensor(tensor: dict) -> dict:
    """Rewrite a homogeneous Lie element given in tensor (word) coordinates
    into Lyndon-basis coordinates.

    Peels the lex-smallest remaining word, which for a genuine Lie element
    is always Lyndon with unit leading coefficient in its bracketed word.
    Raises ValueError if the input is not a Lie element.
    """
    work = {w: c for w, c in tensor.items() if c}
    out = {}
    while work:
        w = min(work)
        if not is_lyndon(w):
            raise ValueError(f"not a Lie element: leading word {w!r} is not Lyndon")
        c = work.pop(w)
        out[w] = c
        for wb, cb in tensor_of_lyndon(w):
            if wb == w:
                continue
            nv = work.get(wb, 0) - c * cb
            if nv:
                work[wb] = nv
            else:
                work.pop(wb, None)
    return out


@lru_cache(maxsize=None)
def basis_bracket(w1, w2) -> tuple:
    """[b(w1), b(w2)] of two bracketed Lyndon words, expanded in the Lyndon
    basis; returned as a tuple of (word, coeff) pairs."""
    if w1 == w2:
        return ()
    if w2 < w1:
        return tuple((w, -c) for w, c in basis_bracket(w2, w1))
    t1, t2 = tensor_of_lyndon(w1), tensor_of_lyndon(w2)
    acc = {}
    for wa, ca in t1:
        for wb, cb in t2:
            key = wa + wb
            acc[key] = acc.get(key, 0) + ca * cb
            key = wb + wa
            acc[key] = acc.get(key, 0) - ca * cb
    return tuple(sorted(lie_from_tensor(acc).items()))


@lru_cache(maxsize=None)
def letter_bracket(letter: int, word) -> tuple:
    """[x_letter, b(word)] in the Lyndon basis, as (word, coeff) pairs.
    This is the hot operation of the ideal recursion, hence its own cache."""
    return basis_bracket((letter,), word)


@dataclass(frozen=True)
class LieElement:
    """Homogeneous element of the free Lie ring on n generators, degree r,
    stored sparsely in the Lyndon basis.  Coefficients are exact (int, or
    Fraction when a characteristic-0 context forces a division)."""

    n: int
    degree: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {w: c for w, c in self.coeffs.items() if c}
        for w in clean:
            if len(w) != self.degree:
                raise ValueError(f"word {w!r} has length {len(w)}, expected {self.degree}")
            if any(x < 0 or x >= self.n for x in w):
                raise ValueError(f"word {w!r} out of alphabet range 0..{self.n - 1}")
            if not is_lyndon(w):
                raise ValueError(f"word {w!r} is not Lyndon")
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def generator(cls, n: int, letter: int) -> "LieElement":
        return cls(n, 1, {(letter,): 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LieElement") -> "LieElement":
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("degree/alphabet mismatch in addition")
        acc = dict(self.coeffs)
        for w, c in other.coeffs.items():
            acc[w] = acc.get(w, 0) + c
        return LieElement(self.n, self.degree, acc)

    def __neg__(self) -> "LieElement":
        return LieElement(self.n, self.degree, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, k) -> "LieElement":
        return LieElement(self.n, self.degree, {w: k * c for w, c in self.coeffs.items()})

    def vector(self) -> dict:
        """Sparse {basis index: coeff} over lyndon_basis(n, degree)."""
        idx = word_index(self.n, self.degree)
        return {idx[w]: c for w, c in self.coeffs.items()}


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """Lie bracket, expanded into the Lyndon basis.  Bilinear, antisymmetric,
    satisfies Jacobi; the degree of the result is deg a + deg b."""
    if a.n != b.n:
        raise ValueError(f"alphabet mismatch: {a.n} vs {b.n}")
    acc = {}
    for w1, c1 in a.coeffs.items():
        for w2, c2 in b.coeffs.items():
            for w, c in basis_bracket(w1, w2):
                acc[w] = acc.get(w, 0) + c1 * c2 * c
    return LieElement(a.n, a.degree + b.degree, acc)
