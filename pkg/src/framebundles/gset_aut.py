"""The automorphism group of a free group-set.

For a free ``F`` with ``n`` orbits, the id-equivariant bijections ``F -> F``
form a group ``Aut(F)`` of size ``|G|^n n!``.  It fits in a right-split short
exact sequence

    1 -> Aut(q) -> Aut(F) -> Sym(n) -> 1

where ``Aut(q)`` is the orbit-preserving (deck-transformation) part, and is
isomorphic to the wreath product via the explicit map

    I(g, s): (h, x) -> (h . g[s(x)]^-1, s(x))

on the standard semi-torsor.  The inverse appears because the map describes
how *coordinates* change under a change of frame; the pairing tests pin this
orientation down.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import config
from .errors import NotFree
from .frames import (
    Frame,
    FrameSpace,
    Permutation,
    WreathElement,
    associated_map,
    associated_map_inverse,
    enumerate_frames,
    is_basis,
    perm_inverse,
)
from .groups import FiniteGroup
from .gsets import (
    EquivariantMap,
    GSet,
    divide,
    identity_hom,
    is_free,
    orbits,
    standard_semitorsor,
)

# An automorphism of a group-set is an id-equivariant bijective self-map.
GSetAut = EquivariantMap


def is_gset_aut(a: EquivariantMap) -> bool:
    return (
        a.source == a.target
        and a.xi.image == tuple(range(a.source.group.order))
        and a.is_bijective()
    )


def aut_group_of_gset(F: GSet) -> tuple[FiniteGroup, tuple[GSetAut, ...]]:
    """Enumerate Aut(F) and realize it as a Cayley-table group.

    Every automorphism carries the canonical (lexicographically smallest)
    frame to some other frame, and is determined by it, so the group is
    enumerated by composing associated maps through the canonical frame.
    The returned list is sorted by value table.
    """
    if not is_free(F):
        raise NotFree("only free group-sets have wreath-sized automorphism groups")
    fs = enumerate_frames(F)
    config.check_enumeration(len(fs.frames), "group-set automorphisms")
    canonical_inv = associated_map_inverse(F, fs.frames[0])
    auts = []
    for t in fs.frames:
        phi_t = associated_map(F, t)
        value = tuple(phi_t.value[canonical_inv.value[f]] for f in range(F.size))
        auts.append(EquivariantMap(F, F, identity_hom(F.group), value))
    auts.sort(key=lambda a: a.value)
    index = {a.value: i for i, a in enumerate(auts)}
    order = len(auts)
    config.check_table_order(order, what="group-set automorphism group")
    mul = tuple(
        tuple(index[tuple(a.value[x] for x in b.value)] for b in auts) for a in auts
    )
    identity = index[tuple(range(F.size))]
    inv = []
    for a in auts:
        q = [0] * F.size
        for x, y in enumerate(a.value):
            q[y] = x
        inv.append(index[tuple(q)])
    table = FiniteGroup(order, mul, identity, tuple(inv), f"Aut({F.group.label}-set)")
    return table, tuple(auts)


def cq(psi: GSetAut) -> Permutation:
    """The permutation of orbit indices induced by an automorphism.

    Satisfies q . psi = cq(psi) . q and is a homomorphism onto Sym(n).
    """
    q = orbits(psi.source)
    return tuple(q.orbit_of[psi.value[rep]] for rep in q.representatives)


def section_from_frame(F: GSet, f: Frame, sigma: Permutation) -> GSetAut:
    """The automorphism h f[x] -> h f[sigma(x)] defined by a frame.

    For a fixed frame this is a homomorphism in sigma; when the frame is a
    section of the orbit map (slot x inside orbit x) it splits cq.
    """
    if not is_basis(F, f):
        raise ValueError("section_from_frame needs a basis")
    n = len(f)
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise ValueError("sigma is not a permutation of the slots")
    value = [0] * F.size
    for h in range(F.group.order):
        row = F.act[h]
        for x in range(n):
            value[row[f[x]]] = row[f[sigma[x]]]
    return EquivariantMap(F, F, identity_hom(F.group), tuple(value))


def autq_component(psi: GSetAut, f: Frame) -> tuple[int, ...]:
    """The group tuple identifying an orbit-preserving automorphism.

    Component x is the division f[x] / psi(f[x]), i.e. the *inverse* of the
    element translating f[x] to its image; with this orientation the
    assignment psi -> tuple is a homomorphism onto G^n.
    """
    n = len(f)
    if cq(psi) != tuple(range(n)):
        raise ValueError("automorphism does not preserve orbits")
    F = psi.source
    return tuple(divide(F, f[x], psi.value[f[x]]) for x in range(n))


def autq_reconstruct(F: GSet, f: Frame, component: tuple[int, ...]) -> GSetAut:
    """Inverse of :func:`autq_component` for a fixed frame."""
    n = len(f)
    inv = F.group.inv
    value = [0] * F.size
    for h in range(F.group.order):
        row = F.act[h]
        for x in range(n):
            value[row[f[x]]] = F.act[F.group.mul[h][inv[component[x]]]][f[x]]
    return EquivariantMap(F, F, identity_hom(F.group), tuple(value))


def wreath_to_aut(w: WreathElement, n: int, G: FiniteGroup) -> GSetAut:
    """The isomorphism from the wreath product onto Aut(G x I_n).

    (h, x) maps to (h . g[s(x)]^-1, s(x)); right translation keeps the maps
    left-equivariant, and the whole assignment is a group homomorphism.
    """
    if w.group != G or w.n != n:
        raise ValueError("wreath element does not match the target semi-torsor")
    F = standard_semitorsor(G, n)
    mul, inv = G.mul, G.inv
    value = [0] * F.size
    for h in range(G.order):
        for x in range(n):
            sx = w.sigma[x]
            value[h * n + x] = mul[h][inv[w.g_tuple[sx]]] * n + sx
    return EquivariantMap(F, F, identity_hom(G), tuple(value))


def aut_to_wreath(psi: GSetAut) -> WreathElement:
    """Recover the wreath element of an automorphism of a standard semi-torsor.

    The permutation is cq(psi); the group tuple comes from evaluating at the
    identity section, inverting the right-translation convention of
    :func:`wreath_to_aut`.
    """
    F = psi.source
    G = F.group
    if F.size % G.order != 0:
        raise ValueError("carrier is not a standard semi-torsor")
    n = F.size // G.order
    if F != standard_semitorsor(G, n):
        raise ValueError("carrier is not a standard semi-torsor")
    sigma = cq(psi)
    s_inv = perm_inverse(sigma)
    e = G.identity
    g = []
    for x in range(n):
        image = psi.value[e * n + s_inv[x]]
        gc, xc = divmod(image, n)
        if xc != x:
            raise AssertionError("orbit permutation mismatch")
        g.append(G.inv[gc])
    return WreathElement(G, tuple(g), sigma)


@dataclass
class SesReport:
    """Verified sizes and splitting data of the automorphism sequence."""

    group_label: str
    orbit_count: int
    aut_order: int
    autq_order: int
    sym_order: int
    product_matches: bool
    kernel_is_autq: bool
    cq_surjective: bool
    section_splits: bool
    section_frame: Frame

    @property
    def ok(self) -> bool:
        return (
            self.product_matches
            and self.kernel_is_autq
            and self.cq_surjective
            and self.section_splits
        )


def ses_report(F: GSet) -> SesReport:
    """Exhaustively verify the short exact sequence for a free group-set.

    Checks that the orbit-projection homomorphism has the orbit-preserving
    automorphisms as kernel, is surjective onto Sym(n), and is split by the
    section built from the canonical section frame; reports all cardinalities.
    """
    if not is_free(F):
        raise NotFree("the sequence closes only for free group-sets")
    table, auts = aut_group_of_gset(F)
    q = orbits(F)
    n = q.orbit_count
    identity_perm = tuple(range(n))
    perms = set(itertools.permutations(range(n)))

    cq_values = [cq(a) for a in auts]
    autq_order = sum(1 for p in cq_values if p == identity_perm)
    # kernel of cq = the maps fixing every orbit setwise, checked point by point
    kernel_is_autq = all(
        (p == identity_perm)
        == all(q.orbit_of[a.value[f]] == q.orbit_of[f] for f in range(F.size))
        for a, p in zip(auts, cq_values)
    ) and autq_order == F.group.order**n
    cq_surjective = set(cq_values) == perms

    fs = enumerate_frames(F)
    section_frame = fs.frames[0]
    section_splits = all(
        cq(section_from_frame(F, section_frame, sigma)) == sigma
        for sigma in itertools.permutations(range(n))
    )
    return SesReport(
        group_label=F.group.label,
        orbit_count=n,
        aut_order=table.order,
        autq_order=autq_order,
        sym_order=math.factorial(n),
        product_matches=table.order == autq_order * math.factorial(n),
        kernel_is_autq=kernel_is_autq,
        cq_surjective=cq_surjective,
        section_splits=section_splits,
        section_frame=section_frame,
    )
