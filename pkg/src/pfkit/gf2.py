"""Linear systems over GF(2) with rows packed into Python ints."""

from __future__ import annotations

from typing import Sequence


class GF2System:
    """Incremental Gaussian elimination for equations ``<mask, x> = rhs``.

    Each stored pivot row remembers which input equations it combines, so an
    inconsistency comes with a certificate: a set of equations whose masks sum
    to zero while their right-hand sides sum to one.
    """

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.pivots: dict[int, tuple[int, int, int]] = {}  # pivot bit -> (mask, rhs, combo)
        self.count = 0
        self.conflict: int | None = None

    def add(self, mask: int, rhs: int) -> bool:
        """Add an equation; return False once the system is inconsistent."""
        combo = 1 << self.count
        self.count += 1
        if self.conflict is not None:
            return False
        rhs &= 1
        while mask:
            top = mask.bit_length() - 1
            row = self.pivots.get(top)
            if row is None:
                self.pivots[top] = (mask, rhs, combo)
                return True
            mask ^= row[0]
            rhs ^= row[1]
            combo ^= row[2]
        if rhs:
            self.conflict = combo
            return False
        return True

    @property
    def consistent(self) -> bool:
        return self.conflict is None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def certificate(self) -> list[int]:
        """Indices of equations forming a contradiction (empty if consistent)."""
        if self.conflict is None:
            return []
        c = self.conflict
        return [i for i in range(c.bit_length()) if c >> i & 1]

    def solution(self) -> int | None:
        """One solution with free variables set to zero, or None if inconsistent."""
        if self.conflict is not None:
            return None
        x = 0
        for top in sorted(self.pivots):
            mask, rhs, _ = self.pivots[top]
            rest = mask & ~(1 << top)
            val = rhs ^ (bin(rest & x).count("1") & 1)
            if val:
                x |= 1 << top
        return x


def solve(rows: Sequence[tuple[int, int]], nvars: int) -> int | None:
    sys_ = GF2System(nvars)
    for mask, rhs in rows:
        if not sys_.add(mask, rhs):
            return None
    return sys_.solution()
