"""Finite groups whose elements are the integers ``0 .. n-1``.

Cyclic groups use modular arithmetic; any other finite group is given by its
multiplication table (validated on construction).
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterable, Sequence


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group on ``range(order)``.

    Use :func:`cyclic_group` or :func:`table_group` rather than calling this
    directly.
    """

    def __init__(self, order: int, table: Sequence[Sequence[int]] | None = None, identity: int = 0):
        self.order = order
        self.table = None if table is None else tuple(tuple(row) for row in table)
        self.identity = identity
        if table is None:
            self._inv = tuple((-a) % order for a in range(order))
        else:
            inv = [None] * order
            for a in range(order):
                for b in range(order):
                    if self.table[a][b] == identity:
                        inv[a] = b
                        break
            self._inv = tuple(inv)

    @property
    def is_cyclic_descriptor(self) -> bool:
        return self.table is None

    def mul(self, a: int, b: int) -> int:
        if self.table is None:
            return (a + b) % self.order
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def pow(self, a: int, k: int) -> int:
        if self.table is None:
            return (a * k) % self.order
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def product(self, elements: Iterable[int]) -> int:
        out = self.identity
        for x in elements:
            out = self.mul(out, x)
        return out

    @property
    def elements(self) -> range:
        return range(self.order)

    def check(self, a: int) -> int:
        if not (isinstance(a, int) and 0 <= a < self.order):
            raise GroupError(f"{a!r} is not an element of a group of order {self.order}")
        return a

    def element_order(self, a: int) -> int:
        self.check(a)
        if self.table is None:
            return self.order // gcd(a, self.order)
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def generated_subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        """Closure of ``gens`` under multiplication."""
        gens = [self.check(g) for g in gens]
        if self.table is None:
            step = self.order
            for g in gens:
                step = gcd(step, g)
            return frozenset(range(0, self.order, step))
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        h = set(subset)
        if self.identity not in h:
            return False
        return all(self.mul(a, self.inv(b)) in h for a in h for b in h)

    def left_cosets(self, subgroup: Iterable[int]) -> list[frozenset[int]]:
        """Partition into cosets ``aH``, ordered by smallest element."""
        h = frozenset(subgroup)
        if not self.is_subgroup(h):
            raise GroupError("not a subgroup")
        out, seen = [], set()
        for a in self.elements:
            if a in seen:
                continue
            coset = frozenset(self.mul(a, x) for x in h)
            seen |= coset
            out.append(coset)
        return out

    @cached_property
    def is_abelian(self) -> bool:
        if self.table is None:
            return True
        return all(self.table[a][b] == self.table[b][a] for a in self.elements for b in self.elements)

    def to_json(self) -> dict:
        if self.table is None:
            return {"type": "cyclic", "order": self.order}
        return {"type": "table", "table": [list(r) for r in self.table]}

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (self.order, self.table, self.identity) == (other.order, other.table, other.identity)

    def __hash__(self):
        return hash((self.order, self.table, self.identity))

    def __repr__(self):
        if self.table is None:
            return f"cyclic_group({self.order})"
        return f"table_group(<order {self.order}>)"


def cyclic_group(n: int) -> FiniteGroup:
    """The integers mod ``n`` under addition."""
    if not isinstance(n, int) or n < 1:
        raise GroupError(f"cyclic group order must be a positive integer, got {n!r}")
    return FiniteGroup(n)


def table_group(table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Validate a Cayley table and wrap it as a group."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise GroupError("table must be square and non-empty")
    if any(not (isinstance(x, int) and 0 <= x < n) for row in table for x in row):
        raise GroupError("table entries must lie in range(n)")
    ident = None
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            ident = e
            break
    if ident is None:
        raise GroupError("table has no identity")
    for a in range(n):
        if not any(table[a][b] == ident and table[b][a] == ident for b in range(n)):
            raise GroupError(f"element {a} has no inverse")
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupError(f"table is not associative at {(a, b, c)}")
    return FiniteGroup(n, table, ident)


def group_from_json(obj: dict) -> FiniteGroup:
    kind = obj.get("type")
    if kind == "cyclic":
        return cyclic_group(obj["order"])
    if kind == "table":
        return table_group(obj["table"])
    raise GroupError(f"unknown group type {kind!r}")


def symmetric_group_s3() -> FiniteGroup:
    """S3 as a table group (a small non-abelian test case)."""
    from itertools import permutations

    perms = list(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return table_group(table)


def cosets(subgroup: Iterable[int], group: FiniteGroup) -> list[frozenset[int]]:
    return group.left_cosets(subgroup)
