"""Exact linear algebra over Z and Q on sparse integer rows.

Rows are {column: int} dicts.  Two elimination regimes share one class:

* lattice mode (default): only unimodular row operations, so the row
  lattice is preserved and Smith invariant factors can be extracted.
* content mode: rows may additionally be divided by their content, which
  is faster and keeps entries small but only preserves the Q-row-space
  (enough for ranks and coset bases).

Everything is deterministic given the insertion order and column order.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd


def ext_gcd(a: int, b: int) -> tuple:
    """(g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def row_content(row: dict) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def _combine(row: dict, other: dict, k) -> dict:
    """row + k*other, dropping zeros."""
    out = {c: v for c, v in row.items() if v}
    if k:
        for c, v in other.items():
            nv = out.get(c, 0) + k * v
            if nv:
                out[c] = nv
            else:
                out.pop(c, None)
    return out


class SparseEchelon:
    """Incremental sparse echelon form of integer rows.

    Pivot rows are kept by leading column.  Rows whose fully reduced leading
    coefficient is not a unit are parked rather than installed: unit pivots
    never need gcd rewrites, so the bulk of the elimination runs without
    coefficient swell, and the parked leftovers form a small subproblem
    that is resolved (with gcd-combining, unimodular on each pair) once no
    more unit pivots appear.  All operations are unimodular in lattice
    mode; content mode may also divide rows by their content, which only
    preserves the Q-row space.
    """

    def __init__(self, ncols: int, lattice: bool = True):
        self.ncols = ncols
        self.lattice = lattice
        self.pivots: dict = {}  # leading column -> row dict
        self._parked: list = []
        self._dirty = False

    @property
    def rank(self) -> int:
        self._finalize()
        return len(self.pivots)

    def _reduce_units(self, row: dict):
        """In-place forward reduction against unit pivots only; returns the
        leading column (with row[c] left unreduced) or None if row died."""
        heap = list(row)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            v = row.get(c)
            if not v:
                row.pop(c, None)
                continue
            piv = self.pivots.get(c)
            if piv is None:
                return c
            a = piv[c]
            if v % a:
                return c  # non-unit pivot that does not divide (phase 3 only)
            q = v // a
            for cc, vv in piv.items():
                nv = row.get(cc)
                if nv is None:
                    row[cc] = -q * vv
                    heapq.heappush(heap, cc)
                else:
                    nv -= q * vv
                    if nv:
                        row[cc] = nv
                    else:
                        del row[cc]
        return None

    def _normalized(self, row: dict, c: int) -> dict:
        if not self.lattice:
            g = row_content(row)
            if g > 1:
                row = {k: v // g for k, v in row.items()}
        if row[c] < 0:
            row = {k: -v for k, v in row.items()}
        return row

    def insert(self, row: dict) -> bool:
        """Reduce row against the echelon; non-unit leftovers are parked
        until finalization.  Returns True unless the row visibly died."""
        row = {c: v for c, v in row.items() if v}
        c = self._reduce_units(row)
        if c is None:
            return False
        if c not in self.pivots and abs(row[c]) == 1:
            self.pivots[c] = self._normalized(row, c)
        else:
            self._parked.append(row)
            self._dirty = True
        return True

    def extend(self, rows) -> None:
        for row in rows:
            self.insert(row)

    def _install_gcd(self, row: dict) -> None:
        """Insert with full gcd handling (may rewrite non-unit pivots)."""
        while row:
            c = self._reduce_units(row)
            if c is None:
                return
            piv = self.pivots.get(c)
            if piv is None:
                self.pivots[c] = self._normalized(row, c)
                return
            a, b = piv[c], row[c]
            if b % a == 0:
                row = _combine(row, piv, -(b // a))
            else:
                g, x, y = ext_gcd(a, b)
                new_piv = _combine({k: x * v for k, v in piv.items()} if x else {}, row, y)
                row = _combine({k: (a // g) * v for k, v in row.items()}, piv, -(b // g))
                if not self.lattice:
                    gg = row_content(new_piv)
                    if gg > 1:
                        new_piv = {k: v // gg for k, v in new_piv.items()}
                self.pivots[c] = new_piv
            if not self.lattice and row:
                g = row_content(row)
                if g > 1:
                    row = {k: v // g for k, v in row.items()}

    def _finalize(self) -> None:
        """Resolve parked rows: keep re-reducing them while new unit pivots
        appear, then run gcd elimination on whatever is left."""
        if not self._dirty:
            return
        parked = self._parked
        self._parked = []
        progress = True
        while progress:
            progress = False
            remaining = []
            for row in parked:
                c = self._reduce_units(row)
                if c is None:
                    continue
                if c not in self.pivots and abs(row[c]) == 1:
                    self.pivots[c] = self._normalized(row, c)
                    progress = True
                else:
                    remaining.append(row)
            parked = remaining
        for row in parked:
            self._install_gcd(row)
        self._dirty = False

    def pivot_columns(self) -> list:
        self._finalize()
        return sorted(self.pivots)

    def rows(self) -> list:
        """Echelon rows in pivot-column order."""
        self._finalize()
        return [self.pivots[c] for c in sorted(self.pivots)]

    def contains(self, row: dict) -> bool:
        """Q-span membership test (does not modify the echelon)."""
        return not self.residue(row)

    def residue(self, row: dict) -> dict:
        """row minus its projection onto the pivot coordinates, i.e. the
        canonical representative supported on non-pivot columns.  Exact:
        coefficients become Fraction when a pivot does not divide."""
        self._finalize()
        work = {c: v for c, v in row.items() if v}
        out = {}
        while work:
            c = min(work)
            v = work.pop(c)
            piv = self.pivots.get(c)
            if piv is None:
                out[c] = v
                continue
            q = Fraction(v, piv[c])
            if q.denominator == 1:
                q = int(q)
            for cc, vv in piv.items():
                if cc == c:
                    continue
                nv = work.get(cc, 0) - q * vv
                if nv:
                    work[cc] = nv
                else:
                    work.pop(cc, None)
        return out

    def invariant_factors(self) -> list:
        """Smith invariant factors of the row lattice (lattice mode only).

        Pivots that are +-1 split off factors of 1 directly; whatever is
        left lands in a small dense residual handled classically.
        """
        if not self.lattice:
            raise ValueError("invariant factors need lattice mode")
        self._finalize()
        unit_cols = [c for c, r in self.pivots.items() if abs(r[c]) == 1]
        if len(unit_cols) == self.rank:
            return [1] * self.rank
        unit_set = set(unit_cols)
        # Clear unit-pivot columns out of the non-unit rows (unimodular),
        # then the unit rows split off as invariant factors 1.
        residual = []
        for c, r in self.pivots.items():
            if c in unit_set:
                continue
            row = dict(r)
            for uc in sorted(unit_set):
                v = row.get(uc)
                if v:
                    upiv = self.pivots[uc]
                    row = _combine(row, upiv, -v * upiv[uc])  # upiv[uc] is +-1
            residual.append(row)
        support = sorted({c for row in residual for c in row})
        colmap = {c: i for i, c in enumerate(support)}
        dense = [[0] * len(support) for _ in residual]
        for i, row in enumerate(residual):
            for c, v in row.items():
                dense[i][colmap[c]] = v
        factors = smith_normal_form_dense(dense)
        return sorted([1] * len(unit_cols) + factors)


def rank_of_rows(rows, ncols: int) -> int:
    ech = SparseEchelon(ncols, lattice=False)
    ech.extend(rows)
    return ech.rank


def smith_normal_form_dense(m) -> list:
    """Invariant factors (each > 0, divisibility chain) of a dense integer
    matrix given as a list of row lists.  Classical alternating row/column
    gcd elimination; intended for small residual blocks."""
    m = [list(r) for r in m]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    factors = []
    top = 0
    while top < min(nr, nc):
        # find a nonzero entry with smallest absolute value to pivot on
        best = None
        for i in range(top, nr):
            for j in range(top, nc):
                v = abs(m[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[bj], row[top] = row[top], row[bj]
        while True:
            # clear column
            for i in range(top + 1, nr):
                while m[i][top]:
                    a, b = m[top][top], m[i][top]
                    if b % a == 0:
                        q = b // a
                        for j in range(top, nc):
                            m[i][j] -= q * m[top][j]
                    else:
                        g, x, y = ext_gcd(a, b)
                        r_top = [x * m[top][j] + y * m[i][j] for j in range(nc)]
                        r_i = [(a // g) * m[i][j] - (b // g) * m[top][j] for j in range(nc)]
                        m[top][:], m[i][:] = r_top, r_i
            # clear row
            dirty = False
            for j in range(top + 1, nc):
                while m[top][j]:
                    a, b = m[top][top], m[top][j]
                    if b % a == 0:
                        q = b // a
                        for i in range(top, nr):
                            m[i][j] -= q * m[i][top]
                    else:
                        g, x, y = ext_gcd(a, b)
                        for i in range(top, nr):
                            vi, vj = m[i][top], m[i][j]
                            m[i][top] = x * vi + y * vj
                            m[i][j] = (a // g) * vj - (b // g) * vi
                        dirty = True
            if not dirty and all(m[i][top] == 0 for i in range(top + 1, nr)):
                break
        factors.append(abs(m[top][top]))
        top += 1
    factors = [f for f in factors if f]
    # enforce the divisibility chain: diag(a, b) ~ diag(gcd, lcm)
    changed = True
    while changed:
        changed = False
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                a, b = factors[i], factors[j]
                if b % a:
                    g = gcd(a, b)
                    factors[i], factors[j] = g, a * b // g
                    changed = True
    return sorted(factors)


def det_int(m) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    m = [list(r) for r in m]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def bad_primes(factors) -> list:
    """Sorted primes dividing some invariant factor > 1."""
    primes = set()
    for f in factors:
        f = abs(f)
        p = 2
        while p * p <= f:
            if f % p == 0:
                primes.add(p)
                while f % p == 0:
                    f //= p
            p += 1
        if f > 1:
            primes.add(f)
    return sorted(primes)
