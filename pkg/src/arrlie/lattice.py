"""Arrangements and their rank-2 intersection data.

An arrangement is modelled combinatorially: a hyperplane set together with
the partition of unordered hyperplane pairs into codimension-2 flats.  This
is the only input the holonomy Lie algebra depends on, so normals are
optional; when present they are validated against the declared flats.

Flats are kept in a canonical order (size descending, then lexicographic
member list) so that every matrix built downstream is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd


class ArrangementError(ValueError):
    """Invalid arrangement data."""


def _primitive(vec) -> tuple:
    """Scale an integer vector to content 1 with first nonzero entry > 0."""
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g == 0:
        raise ArrangementError("zero normal vector")
    out = tuple(v // g for v in vec)
    for v in out:
        if v:
            return out if v > 0 else tuple(-x for x in out)
    raise ArrangementError("zero normal vector")


@dataclass(frozen=True)
class Hyperplane:
    """A hyperplane: its 0-based index, plus an optional primitive,
    sign-normalized integer normal when the arrangement is realized."""

    id: int
    normal: tuple = None

    def __post_init__(self):
        if self.normal is not None:
            object.__setattr__(self, "normal", _primitive(tuple(self.normal)))


@dataclass(frozen=True)
class Rank2Flat:
    """A codimension-2 flat, recorded as the sorted tuple of ids of the
    hyperplanes containing it; mu = multiplicity = len(members) - 1."""

    members: tuple

    def __post_init__(self):
        members = tuple(sorted(self.members))
        if len(members) < 2 or len(set(members)) != len(members):
            raise ArrangementError(f"flat needs >= 2 distinct members, got {members}")
        object.__setattr__(self, "members", members)

    @property
    def mu(self) -> int:
        return len(self.members) - 1

    def __len__(self):
        return len(self.members)

    def __contains__(self, h):
        return h in self.members


def _flat_sort_key(f: Rank2Flat):
    return (-len(f.members), f.members)


@dataclass(frozen=True)
class Arrangement:
    """Hyperplanes plus the rank-2 flat partition of their pairs."""

    hyperplanes: tuple
    flats: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        object.__setattr__(
            self, "flats", tuple(sorted(self.flats, key=_flat_sort_key))
        )

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    @property
    def b1(self) -> int:
        return len(self.hyperplanes)

    @property
    def b2(self) -> int:
        return sum(f.mu for f in self.flats)

    def normals(self):
        """Tuple of normals, or None if any hyperplane lacks one."""
        vecs = tuple(h.normal for h in self.hyperplanes)
        return None if any(v is None for v in vecs) else vecs

    def flat_of_pair(self, a: int, b: int) -> Rank2Flat:
        for f in self.flats:
            if a in f and b in f:
                return f
        raise ArrangementError(f"pair ({a},{b}) not covered by any flat")

    def multi_flats(self) -> list:
        """Flats of size >= 3 (the data that determines everything)."""
        return [f for f in self.flats if len(f) >= 3]

    @classmethod
    def from_flats(cls, n: int, multi_flats, label: str = "") -> "Arrangement":
        """Build from hyperplane count and the size >= 3 flats only; the
        size-2 flats are completed automatically from uncovered pairs."""
        flats = [Rank2Flat(tuple(m)) for m in multi_flats]
        covered = set()
        for f in flats:
            if max(f.members) >= n or min(f.members) < 0:
                raise ArrangementError(f"flat {f.members} out of range 0..{n - 1}")
            for p in combinations(f.members, 2):
                if p in covered:
                    raise ArrangementError(f"pair {p} lies in two declared flats")
                covered.add(p)
        for p in combinations(range(n), 2):
            if p not in covered:
                flats.append(Rank2Flat(p))
        arr = cls(tuple(Hyperplane(i) for i in range(n)), tuple(flats), label)
        validate(arr)
        return arr

    @classmethod
    def from_normals(cls, normals, label: str = "") -> "Arrangement":
        """Build from integer normal vectors; flats are computed."""
        hyps = tuple(Hyperplane(i, tuple(v)) for i, v in enumerate(normals))
        flats = compute_rank2_flats([h.normal for h in hyps])
        arr = cls(hyps, tuple(flats), label)
        validate(arr)
        return arr


def _subspace_key(v1: tuple, v2: tuple) -> tuple:
    """Canonical form of the rational row space of two independent integer
    vectors: fraction-free reduced echelon, rows primitive and sign-fixed.
    Raises if the vectors are proportional."""
    a, b = list(v1), list(v2)
    d = len(a)
    p1 = next(i for i, v in enumerate(a) if v)
    if b[p1]:
        # clear b at p1: b <- a[p1]*b - b[p1]*a
        b = [a[p1] * y - b[p1] * x for x, y in zip(a, b)]
    if not any(b):
        raise ArrangementError("proportional normals span no rank-2 subspace")
    p2 = next(i for i, v in enumerate(b) if v)
    # clear a at p2
    if a[p2]:
        a = [b[p2] * x - a[p2] * y for x, y in zip(a, b)]
    return tuple(sorted((_primitive(tuple(a)), _primitive(tuple(b)))))


def compute_rank2_flats(normals) -> list:
    """Rank-2 flats of a central arrangement given by integer normals: two
    hyperplanes share a flat exactly when their normals span the same
    rational plane.  Every unordered pair lands in exactly one flat."""
    prims = []
    seen = {}
    for i, v in enumerate(normals):
        p = _primitive(tuple(v))
        if p in seen:
            raise ArrangementError(
                f"normals {seen[p]} and {i} are proportional (duplicate hyperplane)"
            )
        seen[p] = i
        prims.append(p)
    groups = {}
    for i, j in combinations(range(len(prims)), 2):
        key = _subspace_key(prims[i], prims[j])
        groups.setdefault(key, set()).update((i, j))
    flats = [Rank2Flat(tuple(sorted(g))) for g in groups.values()]
    return sorted(flats, key=_flat_sort_key)


def validate(arr: Arrangement) -> None:
    """Check the pair-partition invariant, mu consistency, and (when
    normals are present) agreement with compute_rank2_flats.  Raises
    ArrangementError on the first violation."""
    n = arr.n
    if n < 1:
        raise ArrangementError("empty arrangement")
    ids = [h.id for h in arr.hyperplanes]
    if ids != list(range(n)):
        raise ArrangementError(f"hyperplane ids must be 0..{n - 1}, got {ids}")
    covered = {}
    for f in arr.flats:
        if f.mu != len(f.members) - 1:
            raise ArrangementError(f"mu mismatch on flat {f.members}")
        if min(f.members) < 0 or max(f.members) >= n:
            raise ArrangementError(f"flat {f.members} out of range")
        for p in combinations(f.members, 2):
            if p in covered:
                raise ArrangementError(f"pair {p} covered by two flats")
            covered[p] = f
    if n >= 2:
        missing = [p for p in combinations(range(n), 2) if p not in covered]
        if missing:
            raise ArrangementError(f"pairs not covered by any flat: {missing[:5]}")
    vecs = arr.normals()
    if vecs is not None:
        expected = compute_rank2_flats(vecs)
        if [f.members for f in expected] != [f.members for f in arr.flats]:
            raise ArrangementError("declared flats disagree with the normals")


def localization(arr: Arrangement, flat: Rank2Flat) -> Arrangement:
    """The pencil of hyperplanes through a flat, reindexed from 0; its
    single flat has the same multiplicity."""
    if flat not in arr.flats:
        raise ArrangementError(f"{flat.members} is not a flat of the arrangement")
    hyps = tuple(
        Hyperplane(k, arr.hyperplanes[h].normal) for k, h in enumerate(flat.members)
    )
    sub = Arrangement(
        hyps,
        (Rank2Flat(tuple(range(len(hyps)))),),
        label=f"{arr.label}|{flat.members}" if arr.label else f"loc{flat.members}",
    )
    return sub


def restrict(arr: Arrangement, ids) -> Arrangement:
    """Sub-arrangement on a subset of hyperplanes.  Its flats are the traces
    of ambient flats that still contain at least two of the chosen ids."""
    ids = sorted(set(ids))
    if not ids:
        raise ArrangementError("empty hyperplane subset")
    if ids[0] < 0 or ids[-1] >= arr.n:
        raise ArrangementError(f"ids out of range 0..{arr.n - 1}: {ids}")
    pos = {h: k for k, h in enumerate(ids)}
    flats = []
    for f in arr.flats:
        trace = [pos[h] for h in f.members if h in pos]
        if len(trace) >= 2:
            flats.append(Rank2Flat(tuple(trace)))
    hyps = tuple(Hyperplane(k, arr.hyperplanes[h].normal) for k, h in enumerate(ids))
    sub = Arrangement(hyps, tuple(flats), label=f"{arr.label}|sub" if arr.label else "")
    validate(sub)
    return sub
