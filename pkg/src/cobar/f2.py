"""Sparse linear algebra over F2 with bitmask rows.

A vector over n unknowns is a Python int whose bit k is the k-th
coordinate. Right-hand sides are ints as well, so a single system can
carry several right-hand columns at once (used for quotient coordinates).
"""

from __future__ import annotations


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits(x: int):
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Inconsistent(Exception):
    pass


class F2System:
    """Incremental echelon form keyed by leading bit.

    Every stored row has its pivot as its highest set bit, so reducing a
    row is a walk down the leading bits.
    """

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}

    def __len__(self):
        return len(self.rows)

    def copy(self) -> "F2System":
        out = F2System()
        out.rows = dict(self.rows)
        return out

    def reduce(self, row: int, rhs: int = 0) -> tuple[int, int]:
        rows = self.rows
        while row:
            p = row.bit_length() - 1
            hit = rows.get(p)
            if hit is None:
                break
            row ^= hit[0]
            rhs ^= hit[1]
        return row, rhs

    def add(self, row: int, rhs: int = 0) -> bool:
        """Add an equation; return True if it was independent.

        Raises Inconsistent when the row reduces to 0 with nonzero rhs.
        """
        row, rhs = self.reduce(row, rhs)
        if row == 0:
            if rhs:
                raise Inconsistent
            return False
        self.rows[row.bit_length() - 1] = (row, rhs)
        return True

    def try_add(self, row: int, rhs: int = 0) -> bool:
        """Add the equation if consistent; return whether it was consistent."""
        try:
            self.add(row, rhs)
        except Inconsistent:
            return False
        return True

    def pivots(self) -> set[int]:
        return set(self.rows)

    def solve(self, n: int, free: int = 0) -> int:
        """Back-substitute with the given values for the free variables."""
        x = free & ~self._pivot_mask()
        for p in sorted(self.rows):
            row, rhs = self.rows[p]
            rest = row ^ (1 << p)
            if (rhs ^ parity(rest & x)) & 1:
                x |= 1 << p
        return x & ((1 << n) - 1)

    def _pivot_mask(self) -> int:
        m = 0
        for p in self.rows:
            m |= 1 << p
        return m

    def nullspace(self, n: int) -> list[int]:
        """Basis of the homogeneous solution space over ``n`` unknowns."""
        pm = self._pivot_mask()
        homog = F2System()
        homog.rows = {p: (r, 0) for p, (r, _) in self.rows.items()}
        basis = []
        for f in range(n):
            if pm >> f & 1:
                continue
            basis.append(homog.solve(n, 1 << f))
        return basis

    def lex_least(self, n: int) -> int:
        """Solution minimising (x_0, x_1, ...) lexicographically."""
        work = self.copy()
        for k in range(n):
            if not work.try_add(1 << k, 0):
                work.add(1 << k, 1)
        return work.solve(n)


def solve(rows: list[tuple[int, int]], n: int):
    """Solve a list of (row, rhs) equations; None if inconsistent.

    Returns (particular solution, nullspace basis).
    """
    sysm = F2System()
    for row, rhs in rows:
        if not sysm.try_add(row, rhs):
            return None
    return sysm.solve(n), sysm.nullspace(n)


def rank(rows) -> int:
    sysm = F2System()
    r = 0
    for row in rows:
        if sysm.add(row):
            r += 1
    return r


def span_contains(basis, v: int) -> bool:
    sysm = F2System()
    for b in basis:
        sysm.add(b)
    return sysm.reduce(v)[0] == 0
