"""Finite sets and their morphisms as index sequences.

A finite set is identified with its size n, the elements being 0..n-1.
A morphism is a table of indices into the codomain, one per domain
element.  Everything downstream of this module is built out of these
tables, so all values here are immutable and all functions pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DomainMismatch, IllTyped


@dataclass(frozen=True)
class FinSet:
    """A finite set with elements 0..size-1."""

    size: int

    def __post_init__(self):
        if self.size < 0:
            raise IllTyped(f"finite set size must be >= 0, got {self.size}")

    def __iter__(self):
        return iter(range(self.size))


@dataclass(frozen=True)
class FinMap:
    """A map between finite sets, stored as an index sequence.

    ``table[j]`` is the image of j; every entry must be < cod.
    """

    dom: int
    cod: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if self.dom < 0 or self.cod < 0:
            raise IllTyped("dom and cod must be non-negative")
        if len(self.table) != self.dom:
            raise IllTyped(
                f"table length {len(self.table)} does not match dom {self.dom}")
        for j, v in enumerate(self.table):
            if not (0 <= v < self.cod):
                raise IllTyped(
                    f"table entry {v} at index {j} is out of range for cod {self.cod}")

    def __call__(self, x: int) -> int:
        return self.table[x]


def identity(n: int) -> FinMap:
    return FinMap(n, n, tuple(range(n)))


def constant(dom: int, cod: int, value: int) -> FinMap:
    return FinMap(dom, cod, (value,) * dom)


def compose(g: FinMap, f: FinMap) -> FinMap:
    """g after f.  Requires f.cod == g.dom."""
    if f.cod != g.dom:
        raise DomainMismatch(
            f"cannot compose: middle objects differ ({f.cod} vs {g.dom})")
    return FinMap(f.dom, g.cod, tuple(g.table[v] for v in f.table))


def compose_all(*maps: FinMap) -> FinMap:
    """Compose left to right in diagrammatic order: compose_all(f, g) = g after f."""
    out = maps[0]
    for m in maps[1:]:
        out = compose(m, out)
    return out


def is_mono(f: FinMap) -> bool:
    return len(set(f.table)) == f.dom


def is_epi(f: FinMap) -> bool:
    return len(set(f.table)) == f.cod


def split_epi_section(f: FinMap) -> Optional[FinMap]:
    """The least-preimage section of f when f is surjective, else None."""
    if not is_epi(f):
        return None
    section = [0] * f.cod
    seen = set()
    for j, v in enumerate(f.table):
        if v not in seen:
            seen.add(v)
            section[v] = j
    return FinMap(f.cod, f.dom, tuple(section))


def is_split_epi(f: FinMap) -> tuple[bool, Optional[FinMap]]:
    s = split_epi_section(f)
    return (s is not None), s


@dataclass(frozen=True)
class IsMemberResult:
    """Membership flags plus least matching positions, Matlab-style."""

    flags: tuple[bool, ...]
    positions: tuple[Optional[int], ...]


def ismember(f: Sequence[int], u: Sequence[int]) -> IsMemberResult:
    """For each f[i], whether it occurs in u and the least index where."""
    first = {}
    for j, v in enumerate(u):
        if v not in first:
            first[v] = j
    flags = tuple(v in first for v in f)
    positions = tuple(first.get(v) for v in f)
    return IsMemberResult(flags, positions)


def ismember_pullback(f: FinMap, u: FinMap) -> tuple[FinMap, FinMap]:
    """The pullback projections of f along a mono u, read off ismember.

    Requires u injective; returns (p_f, p_u) out of the apex of pairs
    (i, j) with f(i) = u(j), ordered by i.
    """
    if not is_mono(u):
        raise IllTyped("pullback reading of ismember requires unique entries in u")
    if f.cod != u.cod:
        raise DomainMismatch("f and u must share a codomain")
    res = ismember(f.table, u.table)
    idx = [i for i in range(f.dom) if res.flags[i]]
    p_f = FinMap(len(idx), f.dom, tuple(idx))
    p_u = FinMap(len(idx), u.dom, tuple(res.positions[i] for i in idx))
    return p_f, p_u


def pairing_is_injective(p1: FinMap, p2: FinMap) -> Optional[tuple[int, int]]:
    """None if x -> (p1 x, p2 x) is injective, else a witness pair."""
    seen = {}
    for x in range(p1.dom):
        key = (p1.table[x], p2.table[x])
        if key in seen:
            return (seen[key], x)
        seen[key] = x
    return None


def jointly_monic(p1: FinMap, p2: FinMap) -> bool:
    if p1.dom != p2.dom:
        raise DomainMismatch("jointly_monic requires a common domain")
    return pairing_is_injective(p1, p2) is None


def jointly_epic(e1: FinMap, e2: FinMap) -> bool:
    if e1.cod != e2.cod:
        raise DomainMismatch("jointly_epic requires a common codomain")
    return set(e1.table) | set(e2.table) == set(range(e1.cod))


def maps(dom: int, cod: int) -> Iterable[FinMap]:
    """All maps dom -> cod in lexicographic table order."""
    if dom == 0:
        yield FinMap(0, cod, ())
        return
    if cod == 0:
        return
    from itertools import product
    for table in product(range(cod), repeat=dom):
        yield FinMap(dom, cod, table)
