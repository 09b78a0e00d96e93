"""GF(2) linear algebra on int bitsets.

A vector of length ``n`` is a Python int whose bit ``i`` is coordinate ``i``.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def bits(vec: int) -> list[int]:
    """Indices of the set bits of ``vec``, ascending."""
    out = []
    i = 0
    while vec:
        if vec & 1:
            out.append(i)
        vec >>= 1
        i += 1
    return out


def from_indices(indices: Iterable[int]) -> int:
    vec = 0
    for i in indices:
        vec ^= 1 << int(i)
    return vec


def parity(vec: int) -> int:
    return bin(vec).count("1") & 1


def echelon(rows: Iterable[int]) -> dict[int, int]:
    """Reduced basis of the row span, keyed by pivot (highest set bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        r = reduce(r, basis)
        if r:
            basis[r.bit_length() - 1] = r
    return basis


def reduce(vec: int, basis: dict[int, int]) -> int:
    """Residue of ``vec`` modulo an :func:`echelon` basis; 0 iff in the span."""
    for top in sorted(basis, reverse=True):
        if (vec >> top) & 1:
            vec ^= basis[top]
    return vec


def rank(rows: Iterable[int]) -> int:
    return len(echelon(rows))


def in_span(vec: int, rows: Iterable[int]) -> bool:
    return reduce(vec, echelon(rows)) == 0


def solve(rows: Sequence[int], target: int) -> int | None:
    """Find a subset of ``rows`` summing to ``target``.

    Returns the subset as a bitmask over row indices, or ``None`` if
    ``target`` is outside the span.
    """
    # Track combinations alongside each basis vector.
    basis: dict[int, tuple[int, int]] = {}
    for idx, r in enumerate(rows):
        combo = 1 << idx
        while r:
            top = r.bit_length() - 1
            if top in basis:
                br, bc = basis[top]
                r ^= br
                combo ^= bc
            else:
                basis[top] = (r, combo)
                break
    combo = 0
    while target:
        top = target.bit_length() - 1
        if top not in basis:
            return None
        br, bc = basis[top]
        target ^= br
        combo ^= bc
    return combo


def nullspace(rows: Sequence[int]) -> list[int]:
    """Basis of ``{c : sum_i c_i rows[i] = 0}`` as bitmasks over row indices."""
    basis: dict[int, tuple[int, int]] = {}
    kernel = []
    for idx, r in enumerate(rows):
        combo = 1 << idx
        while r:
            top = r.bit_length() - 1
            if top in basis:
                br, bc = basis[top]
                r ^= br
                combo ^= bc
            else:
                basis[top] = (r, combo)
                break
        if r == 0:
            kernel.append(combo)
    return kernel


class Gf2Matrix:
    """Rectangular GF(2) matrix stored as bit-packed rows."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[int], ncols: int):
        self.rows = tuple(rows)
        self.ncols = ncols
        limit = 1 << ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} does not fit in {ncols} columns")

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> "Gf2Matrix":
        ncols = len(data[0]) if data else 0
        rows = []
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(from_indices(j for j, x in enumerate(row) if x & 1))
        return cls(rows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def rank(self) -> int:
        return rank(self.rows)

    def contains(self, vec: int) -> bool:
        """Whether ``vec`` lies in the row space."""
        return in_span(vec, self.rows)

    def solve(self, target: int) -> int | None:
        return solve(self.rows, target)

    def left_nullspace(self) -> list[int]:
        return nullspace(self.rows)

    def transpose(self) -> "Gf2Matrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in bits(r):
                cols[j] |= 1 << i
        return Gf2Matrix(cols, len(self.rows))

    def __eq__(self, other):
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        return f"Gf2Matrix({self.to_lists()!r})"

    def __str__(self):
        return "\n".join("".join(str(x) for x in row) for row in self.to_lists())
