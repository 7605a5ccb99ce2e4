"""The graded holonomy Lie algebra of an arrangement.

The algebra is the free Lie ring on one generator per hyperplane modulo the
ideal generated by the quadratic pencil relations: for every rank-2 flat X
and every H in X, the bracket of x_H with the sum of the x_H' over H' in X.

Degreewise, the ideal is built by the recursion J_2 = span(quadratic
relations), J_{r+1} = [generators, J_r]; this exhausts the ideal because
the ambient free Lie algebra is generated in degree 1 and J is generated
in degree 2 (Jacobi induction).  Each degree keeps a lattice-faithful
integer echelon, so ranks over Q, Smith invariant factors (hence ranks
over every finite field), and coset bases all come from one pass.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .freelie import (
    LieElement,
    letter_bracket,
    lyndon_basis,
    witt_rank,
    word_index,
)
from .intlinalg import SparseEchelon, bad_primes
from .lattice import Arrangement, Rank2Flat, localization, restrict, validate

DEFAULT_MAX_DIM = 10**6
_ENV_GUARD = "ARRLIE_MAX_DIM"


class ResourceGuardError(RuntimeError):
    """Requested degree would exceed the dimension guard."""


class CertificateError(RuntimeError):
    """A well-definedness certificate failed; this indicates a bug, not
    bad input."""


def _max_dim() -> int:
    value = os.environ.get(_ENV_GUARD)
    return int(value) if value else DEFAULT_MAX_DIM


def _guard(b1: int, r: int) -> None:
    dim = witt_rank(b1, r)
    if dim > _max_dim():
        raise ResourceGuardError(
            f"degree {r} needs {dim} Lyndon words on {b1} letters "
            f"(guard {_max_dim()}; override via {_ENV_GUARD})"
        )


def quadratic_relations(arr: Arrangement) -> list:
    """The degree-2 relations, one per (flat, member) pair, expanded in the
    Lyndon basis; a flat of size 2 yields its single commutator once."""
    n = arr.b1
    rels = []
    for flat in arr.flats:
        members = flat.members
        if len(members) == 2:
            a, b = members
            rels.append(LieElement(n, 2, {(a, b): 1}))
            continue
        for h in members:
            coeffs = {}
            for k in members:
                if k == h:
                    continue
                if h < k:
                    coeffs[(h, k)] = coeffs.get((h, k), 0) + 1
                else:
                    coeffs[(k, h)] = coeffs.get((k, h), 0) - 1
            rels.append(LieElement(n, 2, coeffs))
    return rels


def _letter_ops(n: int, r: int) -> list:
    """For each letter l, a per-basis-index table of [x_l, b(w)] at degree
    r, as tuples of (target column, coeff).  Degree r-1 basis -> degree r."""
    src = lyndon_basis(n, r - 1)
    idx = word_index(n, r)
    ops = []
    for letter in range(n):
        table = []
        for w in src:
            table.append(tuple((idx[v], c) for v, c in letter_bracket(letter, w)))
        ops.append(table)
    return ops


class HolonomyGraded:
    """Degreewise data of the holonomy Lie algebra up to a degree cap:
    ranks over Q, Smith invariant factors of the ideal, and a coset basis
    (the non-pivot Lyndon words of a fixed echelon).  Extended lazily,
    degree by degree; treat instances as immutable."""

    def __init__(self, arr: Arrangement):
        validate(arr)
        self.arrangement = arr
        self.max_degree = 1
        self._echelons = {}  # degree -> SparseEchelon of J_r
        self._factors = {}  # degree -> tuple of invariant factors

    # -- construction ---------------------------------------------------

    def extend(self, r_max: int) -> "HolonomyGraded":
        n = self.arrangement.b1
        for r in range(self.max_degree + 1, r_max + 1):
            _guard(n, r)
            if r == 2:
                ech = SparseEchelon(witt_rank(n, 2), lattice=True)
                idx = word_index(n, 2)
                for rel in quadratic_relations(self.arrangement):
                    ech.insert({idx[w]: c for w, c in rel.coeffs.items()})
            else:
                ops = _letter_ops(n, r)
                ech = SparseEchelon(witt_rank(n, r), lattice=True)
                for row in self._echelons[r - 1].rows():
                    for letter in range(n):
                        table = ops[letter]
                        acc = {}
                        for col, c in row.items():
                            for col2, c2 in table[col]:
                                nv = acc.get(col2, 0) + c * c2
                                if nv:
                                    acc[col2] = nv
                                else:
                                    del acc[col2]
                        ech.insert(acc)
            self._echelons[r] = ech
            self.max_degree = r
        return self

    # -- queries ---------------------------------------------------------

    def _need(self, r: int) -> None:
        if r < 1:
            raise ValueError(f"degree must be >= 1, got {r}")
        if r > self.max_degree:
            self.extend(r)

    def ideal_rank(self, r: int) -> int:
        self._need(r)
        return 0 if r == 1 else self._echelons[r].rank

    def rank(self, r: int) -> int:
        """dim_Q of the degree-r component."""
        self._need(r)
        n = self.arrangement.b1
        return n if r == 1 else witt_rank(n, r) - self._echelons[r].rank

    def invariant_factors(self, r: int) -> tuple:
        """Smith invariant factors of the degree-r ideal matrix."""
        self._need(r)
        if r == 1:
            return ()
        if r not in self._factors:
            self._factors[r] = tuple(self._echelons[r].invariant_factors())
        return self._factors[r]

    def bad_primes(self, r: int) -> list:
        """Primes where the F_p rank differs from the Q rank."""
        return bad_primes(self.invariant_factors(r))

    def rank_mod_p(self, r: int, p: int) -> int:
        """dim over F_p: the Q rank plus the number of invariant factors
        divisible by p (those ideal rows die mod p)."""
        self._need(r)
        if r == 1:
            return self.arrangement.b1
        dying = sum(1 for f in self.invariant_factors(r) if f % p == 0)
        return self.rank(r) + dying

    def basis_words(self, r: int) -> tuple:
        """Coset basis of the degree-r component: the Lyndon words at the
        non-pivot columns of the ideal echelon (all words in degree 1)."""
        self._need(r)
        n = self.arrangement.b1
        words = lyndon_basis(n, r)
        if r == 1:
            return words
        pivots = self._echelons[r].pivots
        return tuple(w for i, w in enumerate(words) if i not in pivots)

    def reduce(self, r: int, coeffs: dict) -> dict:
        """Image of a degree-r free-Lie element (sparse {word: coeff}) in
        the coset basis, as {word: coeff}; exact, Fraction where forced."""
        self._need(r)
        n = self.arrangement.b1
        idx = word_index(n, r)
        if r == 1:
            return {w: c for w, c in coeffs.items() if c}
        res = self._echelons[r].residue({idx[w]: c for w, c in coeffs.items()})
        words = lyndon_basis(n, r)
        return {words[i]: c for i, c in res.items()}

    def coords(self, r: int, coeffs: dict) -> list:
        """Like reduce, but as a dense coordinate list over basis_words(r)."""
        red = self.reduce(r, coeffs)
        return [red.get(w, 0) for w in self.basis_words(r)]


_CACHE: dict = {}


def holonomy_ranks(arr: Arrangement, r_max: int) -> HolonomyGraded:
    """Holonomy data of the arrangement through degree r_max (cached per
    arrangement; extending an existing computation is incremental)."""
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    state = _CACHE.get(arr)
    if state is None:
        state = HolonomyGraded(arr)
        _CACHE[arr] = state
    state.extend(max(r_max, 2))
    return state


def ideal_component(arr: Arrangement, r: int):
    """A spanning set of the degree-r ideal component as sparse integer
    rows ({column: coeff} over the degree-r Lyndon basis)."""
    if r < 2:
        raise ValueError("the ideal starts in degree 2")
    hg = holonomy_ranks(arr, r)
    return [dict(row) for row in hg._echelons[r].rows()]


# -- graded linear maps --------------------------------------------------


@dataclass(frozen=True)
class GradedLinearMap:
    """Matrix of a degree-r map between holonomy components, in the stored
    coset bases: (target dim) x (source dim), acting on coordinate columns.
    Construction always certifies well-definedness on the ideal."""

    degree: int
    matrix: tuple  # rows, each a tuple of exact entries
    source_label: str
    target_label: str

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def is_identity(self) -> bool:
        return self.target_dim == self.source_dim and all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(self.target_dim)
            for j in range(self.source_dim)
        )

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.matrix for v in row)


def compose(f: GradedLinearMap, g: GradedLinearMap) -> GradedLinearMap:
    """f after g."""
    if f.degree != g.degree or f.source_dim != g.target_dim:
        raise ValueError("maps do not compose")
    rows = tuple(
        tuple(
            sum(f.matrix[i][k] * g.matrix[k][j] for k in range(f.source_dim))
            for j in range(g.source_dim)
        )
        for i in range(f.target_dim)
    )
    return GradedLinearMap(f.degree, rows, g.source_label, f.target_label)


def _project_word(word, keep: dict):
    """Apply the generator projection to a bracketed Lyndon word: the word
    survives (relabelled) when all its letters are kept, else it dies."""
    out = []
    for letter in word:
        k = keep.get(letter)
        if k is None:
            return None
        out.append(k)
    return tuple(out)


def _matrix_from_images(images, target_words) -> tuple:
    pos = {w: i for i, w in enumerate(target_words)}
    cols = len(images)
    rows = [[0] * cols for _ in target_words]
    for j, img in enumerate(images):
        for w, c in img.items():
            rows[pos[w]][j] = c
    return tuple(tuple(r) for r in rows)


def projection_map(arr: Arrangement, ids, r: int) -> GradedLinearMap:
    """Matrix of the map induced in degree r by sending generators outside
    the sub-arrangement to zero.  Certifies that the ambient ideal lands in
    the sub-arrangement's ideal before trusting the matrix."""
    if r < 2:
        raise ValueError("maps are built in degrees >= 2")
    ids = sorted(set(ids))
    source = holonomy_ranks(arr, r)
    sub = restrict(arr, ids)
    target = holonomy_ranks(sub, r)
    keep = {h: k for k, h in enumerate(ids)}
    n = arr.b1
    words = lyndon_basis(n, r)
    # certificate: every ideal row maps into the target ideal
    for row in source._echelons[r].rows():
        image = {}
        for col, c in row.items():
            w = _project_word(words[col], keep)
            if w is not None:
                image[w] = image.get(w, 0) + c
        if any(target.reduce(r, image).values()):
            raise CertificateError(
                f"projection to {ids} does not preserve the ideal in degree {r}"
            )
    images = []
    for w in source.basis_words(r):
        v = _project_word(w, keep)
        images.append(target.reduce(r, {v: 1}) if v is not None else {})
    label_a = arr.label or f"A({arr.b1})"
    return GradedLinearMap(
        r,
        _matrix_from_images(images, target.basis_words(r)),
        label_a,
        f"{label_a}|{tuple(ids)}",
    )


def inclusion_map(arr: Arrangement, flat: Rank2Flat, r: int) -> GradedLinearMap:
    """Matrix of the map induced in degree r by including the pencil at a
    flat (localizations are closed, so generators map to generators).
    Certifies that the local ideal lands in the ambient ideal."""
    if r < 2:
        raise ValueError("maps are built in degrees >= 2")
    if flat not in arr.flats:
        raise ValueError(f"{flat.members} is not a flat of the arrangement")
    target = holonomy_ranks(arr, r)
    loc = localization(arr, flat)
    source = holonomy_ranks(loc, r)
    lift = flat.members  # local letter k -> ambient letter
    m = loc.b1
    loc_words = lyndon_basis(m, r)
    for row in source._echelons[r].rows():
        image = {}
        for col, c in row.items():
            w = tuple(lift[letter] for letter in loc_words[col])
            image[w] = image.get(w, 0) + c
        if any(target.reduce(r, image).values()):
            raise CertificateError(
                f"inclusion of {flat.members} does not preserve the ideal in degree {r}"
            )
    images = []
    for w in source.basis_words(r):
        v = tuple(lift[letter] for letter in w)
        images.append(target.reduce(r, {v: 1}))
    label_a = arr.label or f"A({arr.b1})"
    return GradedLinearMap(
        r,
        _matrix_from_images(images, target.basis_words(r)),
        f"{label_a}_loc{flat.members}",
        label_a,
    )


def pi_assembled(arr: Arrangement, r: int) -> GradedLinearMap:
    """Block-stack of the localization projections over all flats, in
    canonical flat order: the degree-r comparison map onto the direct sum
    of the pencils' holonomy components."""
    blocks = [projection_map(arr, f.members, r) for f in arr.flats]
    rows = tuple(row for b in blocks for row in b.matrix)
    label_a = arr.label or f"A({arr.b1})"
    return GradedLinearMap(r, rows, label_a, f"sum over flats of {label_a}")
