"""Finite left group-sets: actions, orbits, freeness, division, equivariant maps.

A group-set is a carrier ``0 .. size-1`` with an action table ``act[g][f]``.
The orbit partition is canonical: orbit indices are assigned in order of the
smallest carrier representative, so quotient data is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoQuotient, NotFree
from .groups import FiniteGroup, GroupHom, compose_hom, identity_hom


@dataclass(frozen=True)
class GSet:
    """A finite set with a left action of a finite group."""

    group: FiniteGroup
    size: int
    act: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        G = self.group
        if len(self.act) != G.order or any(len(r) != self.size for r in self.act):
            raise ValueError("action table has wrong shape")
        ide = self.act[G.identity]
        if any(ide[f] != f for f in range(self.size)):
            raise ValueError("identity does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul[g][h]
                row_g, row_h, row_gh = self.act[g], self.act[h], self.act[gh]
                if any(row_g[row_h[f]] != row_gh[f] for f in range(self.size)):
                    raise ValueError(f"action law fails for pair ({g},{h})")

    def __repr__(self) -> str:
        return f"GSet({self.group.label} on {self.size} points)"


@dataclass(frozen=True)
class OrbitPartition:
    """Canonical orbit decomposition of a group-set.

    ``orbit_of[f]`` is the orbit index of carrier point ``f`` and
    ``representatives[k]`` the smallest point of orbit ``k``.
    """

    orbit_of: tuple[int, ...]
    orbit_count: int
    representatives: tuple[int, ...]


def make_gset(group: FiniteGroup, act, label_check: bool = True) -> GSet:
    """Build and validate a group-set from an action table."""
    table = tuple(tuple(row) for row in act)
    size = len(table[0]) if table else 0
    F = GSet(group, size, table)
    F.validate()
    return F


def trivial_gset(n: int) -> GSet:
    """n points acted on by the one-element group (a plain finite set)."""
    from .groups import make_cyclic

    return GSet(make_cyclic(1), n, (tuple(range(n)),))


def orbits(F: GSet) -> OrbitPartition:
    orbit_of = [-1] * F.size
    reps = []
    for f in range(F.size):
        if orbit_of[f] >= 0:
            continue
        k = len(reps)
        reps.append(f)
        stack = [f]
        orbit_of[f] = k
        while stack:
            p = stack.pop()
            for g in range(F.group.order):
                q = F.act[g][p]
                if orbit_of[q] < 0:
                    orbit_of[q] = k
                    stack.append(q)
    return OrbitPartition(tuple(orbit_of), len(reps), tuple(reps))


def is_free(F: GSet) -> bool:
    """True when (g, f) -> (gf, f) is injective, i.e. all stabilizers are trivial."""
    for f in range(F.size):
        seen = set()
        for g in range(F.group.order):
            q = F.act[g][f]
            if q in seen:
                return False
            seen.add(q)
    return True


def is_transitive(F: GSet) -> bool:
    """True when (g, f) -> (gf, f) is surjective: a single orbit."""
    return orbits(F).orbit_count == 1 and F.size > 0


def is_semitorsor(F: GSet) -> bool:
    """Free with discrete orbit space; for finite carriers this is freeness."""
    return is_free(F)


def standard_semitorsor(G: FiniteGroup, n: int) -> GSet:
    """The canonical free group-set G x I_n with action g(h, x) = (gh, x).

    The pair (h, x) is packed as ``h * n + x``, so orbit x is
    ``{x, n + x, ...}`` and the canonical orbit index of (h, x) is x.
    """
    if n < 1:
        raise ValueError("need at least one orbit")
    act = tuple(
        tuple(G.mul[g][h] * n + x for h in range(G.order) for x in range(n))
        for g in range(G.order)
    )
    return GSet(G, G.order * n, act)


def semitorsor_point(g: int, x: int, n: int) -> int:
    return g * n + x


def semitorsor_coords(p: int, n: int) -> tuple[int, int]:
    return divmod(p, n)


def divide(F: GSet, f_prime: int, f: int) -> int:
    """The unique group element carrying f to f_prime within one orbit.

    Defined only for free actions; points in different orbits raise
    :class:`NoQuotient`.
    """
    if not is_free(F):
        raise NotFree("division requires a free action")
    for g in range(F.group.order):
        if F.act[g][f] == f_prime:
            return g
    raise NoQuotient(f"points {f_prime} and {f} lie in different orbits")


def division_table(F: GSet) -> dict[tuple[int, int], int]:
    """Lookup (f_prime, f) -> g for all same-orbit pairs of a free group-set."""
    if not is_free(F):
        raise NotFree("division requires a free action")
    out: dict[tuple[int, int], int] = {}
    for f in range(F.size):
        for g in range(F.group.order):
            out[(F.act[g][f], f)] = g
    return out


@dataclass(frozen=True)
class EquivariantMap:
    """A map of group-sets, equivariant over a homomorphism of their groups.

    ``value[f]`` is the image of carrier point ``f`` and the defining law is
    ``value[g . f] = xi(g) . value[f]``.
    """

    source: GSet
    target: GSet
    xi: GroupHom
    value: tuple[int, ...]

    def __call__(self, f: int) -> int:
        return self.value[f]

    def is_bijective(self) -> bool:
        return (
            self.source.size == self.target.size
            and len(set(self.value)) == self.source.size
        )


def equivariant_map(source: GSet, target: GSet, xi: GroupHom, value) -> EquivariantMap:
    """Build an equivariant map and verify the law exhaustively."""
    a = EquivariantMap(source, target, xi, tuple(value))
    if xi.source != source.group or xi.target != target.group:
        raise ValueError("group homomorphism does not match the group-sets")
    if len(a.value) != source.size:
        raise ValueError("value table has wrong length")
    if any(not (0 <= v < target.size) for v in a.value):
        raise ValueError("value out of range")
    if not check_equivariant(a):
        raise ValueError("map is not equivariant")
    return a


def check_equivariant(a: EquivariantMap) -> bool:
    """Exhaustive test of value[g f] = xi(g) value[f]."""
    src, tgt, xi, val = a.source, a.target, a.xi, a.value
    for g in range(src.group.order):
        img_row = tgt.act[xi.image[g]]
        src_row = src.act[g]
        if any(val[src_row[f]] != img_row[val[f]] for f in range(src.size)):
            return False
    return True


def identity_map(F: GSet) -> EquivariantMap:
    return EquivariantMap(F, F, identity_hom(F.group), tuple(range(F.size)))


def compose_equivariant(a: EquivariantMap, b: EquivariantMap) -> EquivariantMap:
    """The composite a after b; sources/targets must chain."""
    if b.target != a.source:
        raise ValueError("compose_equivariant: inner target does not match outer source")
    return EquivariantMap(
        b.source,
        a.target,
        compose_hom(a.xi, b.xi),
        tuple(a.value[x] for x in b.value),
    )


def induced_orbit_map(a: EquivariantMap) -> tuple[int, ...]:
    """The unique map on orbit indices making the quotient square commute."""
    q1 = orbits(a.source)
    q2 = orbits(a.target)
    table = [-1] * q1.orbit_count
    for k, rep in enumerate(q1.representatives):
        table[k] = q2.orbit_of[a.value[rep]]
    # the map is well defined by equivariance; verify the square exhaustively
    for f in range(a.source.size):
        if q2.orbit_of[a.value[f]] != table[q1.orbit_of[f]]:
            raise ValueError("orbit map is not constant on orbits")
    return tuple(table)


def is_orbit_bijection(a: EquivariantMap) -> bool:
    table = induced_orbit_map(a)
    return len(set(table)) == len(table) == orbits(a.target).orbit_count
