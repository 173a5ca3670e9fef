"""Bases (frames) of free group-sets and the wreath-product symmetry.

A frame of a free group-set ``F`` with ``n`` orbits is a tuple
``t = (t[0], ..., t[n-1])`` of carrier points whose orbit assignment
``x -> orbit_of(t[x])`` is a bijection.  The collection of all frames is a
torsor under the wreath product ``G wr I_n = G^n x| Sym(n)``, acting by

    ((g, s) . t)[x] = g[x] . t[s^-1(x)]

with multiplication ``(g, s)(g', s') = (x -> g[x] g'[s^-1(x)], s s')``.  The
``s^-1`` in the action formula is the convention everything else here hinges
on; it is computed from the stored forward image table, never stored.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

from . import config
from .errors import NotFree, OrbitObstruction
from .groups import FiniteGroup
from .gsets import (
    EquivariantMap,
    GSet,
    OrbitPartition,
    division_table,
    identity_hom,
    is_free,
    is_orbit_bijection,
    orbits,
    semitorsor_coords,
    standard_semitorsor,
)

Frame = tuple[int, ...]
Permutation = tuple[int, ...]


def perm_inverse(sigma: Permutation) -> Permutation:
    out = [0] * len(sigma)
    for x, y in enumerate(sigma):
        out[y] = x
    return tuple(out)


def perm_compose(s: Permutation, t: Permutation) -> Permutation:
    """s after t, as image tables: (s t)(x) = s(t(x))."""
    return tuple(s[t[x]] for x in range(len(t)))


@dataclass(frozen=True)
class WreathElement:
    """An element (g_tuple, sigma) of G wr I_n.

    ``sigma`` is a forward image table; ``g_tuple`` holds element indices of
    the base group, which is carried along so products can be validated.
    """

    group: FiniteGroup
    g_tuple: tuple[int, ...]
    sigma: Permutation

    @property
    def n(self) -> int:
        return len(self.sigma)

    def __repr__(self) -> str:
        return f"WreathElement(g={self.g_tuple}, sigma={self.sigma})"


def wreath_identity(G: FiniteGroup, n: int) -> WreathElement:
    return WreathElement(G, (G.identity,) * n, tuple(range(n)))


def _check_same_wreath(a: WreathElement, b: WreathElement) -> None:
    if a.group != b.group or a.n != b.n:
        raise ValueError("wreath elements live in different wreath products")


def wreath_mul(a: WreathElement, b: WreathElement) -> WreathElement:
    """(g, s)(g', s') = (x -> g[x] g'[s^-1(x)], s s')."""
    _check_same_wreath(a, b)
    s_inv = perm_inverse(a.sigma)
    mul = a.group.mul
    g = tuple(mul[a.g_tuple[x]][b.g_tuple[s_inv[x]]] for x in range(a.n))
    return WreathElement(a.group, g, perm_compose(a.sigma, b.sigma))


def wreath_inv(a: WreathElement) -> WreathElement:
    s_inv = perm_inverse(a.sigma)
    inv = a.group.inv
    # (g, s)^-1 = (x -> g[s(x)]^-1, s^-1)
    g = tuple(inv[a.g_tuple[a.sigma[x]]] for x in range(a.n))
    return WreathElement(a.group, g, s_inv)


def wreath_act(F: GSet, w: WreathElement, t: Frame) -> Frame:
    """Apply (g, s) to a tuple of carrier points: slot x gets g[x] . t[s^-1(x)]."""
    if len(t) != w.n:
        raise ValueError("tuple length does not match the wreath element")
    s_inv = perm_inverse(w.sigma)
    act = F.act
    return tuple(act[w.g_tuple[x]][t[s_inv[x]]] for x in range(w.n))


def is_basis(F: GSet, t: Frame) -> bool:
    """Basis criterion: the orbit assignment of the tuple is a bijection."""
    if not is_free(F):
        raise NotFree("bases are defined for free group-sets only")
    q = orbits(F)
    if len(t) != q.orbit_count:
        return False
    hit = {q.orbit_of[p] for p in t}
    return len(hit) == q.orbit_count


def associated_map(F: GSet, t: Frame) -> EquivariantMap:
    """The isomorphism G x I_n -> F induced by a frame: (g, x) -> g . t[x].

    Its inverse sends f to (f / t[x], x) where x is the slot whose orbit
    contains f.
    """
    if not is_basis(F, t):
        raise ValueError("tuple is not a basis")
    n = len(t)
    model = standard_semitorsor(F.group, n)
    value = [0] * model.size
    for g in range(F.group.order):
        row = F.act[g]
        for x in range(n):
            value[g * n + x] = row[t[x]]
    return EquivariantMap(model, F, identity_hom(F.group), tuple(value))


def associated_map_inverse(F: GSet, t: Frame) -> EquivariantMap:
    """The inverse of :func:`associated_map`, as a map F -> G x I_n."""
    phi = associated_map(F, t)
    value = [0] * F.size
    for p, f in enumerate(phi.value):
        value[f] = p
    return EquivariantMap(F, phi.source, identity_hom(F.group), tuple(value))


@dataclass
class FrameSpace:
    """All frames of a free group-set, eagerly enumerated and lexicographically sorted.

    The list is closed under the wreath action, which is free and transitive
    on it, so the space is a ``G wr I_n`` torsor of size ``|G|^n n!``.
    """

    base_gset: GSet
    n: int
    frames: tuple[Frame, ...]
    index: dict[Frame, int]
    partition: OrbitPartition
    _div: dict[tuple[int, int], int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.frames)

    def divide_points(self, f_prime: int, f: int) -> int:
        return self._div[(f_prime, f)]


def enumerate_frames(F: GSet) -> FrameSpace:
    """Enumerate every basis tuple of a free group-set.

    Frames are generated orbit-permutation by orbit-permutation (slot x draws
    from orbit sigma(x)), which produces exactly the tuples passing the basis
    criterion.
    """
    if not is_free(F):
        raise NotFree("frame spaces exist for free group-sets only")
    q = orbits(F)
    n = q.orbit_count
    members: list[list[int]] = [[] for _ in range(n)]
    for p in range(F.size):
        members[q.orbit_of[p]].append(p)
    count = math.factorial(n)
    for m in members:
        count *= len(m)
    config.check_enumeration(count, "frames")
    frames: list[Frame] = []
    for sigma in itertools.permutations(range(n)):
        pools = [members[sigma[x]] for x in range(n)]
        frames.extend(itertools.product(*pools))
    frames.sort()
    return FrameSpace(
        base_gset=F,
        n=n,
        frames=tuple(frames),
        index={t: i for i, t in enumerate(frames)},
        partition=q,
        _div=division_table(F),
    )


def frame_divide(fs: FrameSpace, f2: Frame, f1: Frame) -> WreathElement:
    """The unique wreath element w with w . f1 = f2.

    The permutation part is s = (q f2)^-1 (q f1); the group part divides
    slot-wise: g[x] = f2[x] / f1[s^-1(x)].
    """
    if f1 not in fs.index or f2 not in fs.index:
        raise ValueError("frames do not belong to this frame space")
    q = fs.partition.orbit_of
    n = fs.n
    q1 = [q[p] for p in f1]
    q2 = [q[p] for p in f2]
    inv_q2 = [0] * n
    for x, k in enumerate(q2):
        inv_q2[k] = x
    sigma = tuple(inv_q2[q1[x]] for x in range(n))
    s_inv = perm_inverse(sigma)
    g = tuple(fs.divide_points(f2[x], f1[s_inv[x]]) for x in range(n))
    return WreathElement(fs.base_gset.group, g, sigma)


def frame_functor_map(a: EquivariantMap, verify: bool = False) -> Callable[[Frame], Frame]:
    """Lift an equivariant map to frames, t -> a . t.

    Only maps inducing a bijection on orbits lift; the lift is equivariant for
    (xi^n, id) between the wreath products.  ``verify=True`` checks that
    equivariance exhaustively over the source frame space, which catches any
    mix-up in the orientation of the inverse-permutation convention.
    """
    if not is_orbit_bijection(a):
        raise OrbitObstruction(
            "map does not induce a bijection on orbits, so it has no frame lift"
        )
    if not (is_free(a.source) and is_free(a.target)):
        raise NotFree("frame lifts are defined between free group-sets")
    value = a.value

    def lift(t: Frame) -> Frame:
        return tuple(value[p] for p in t)

    if verify:
        fs = enumerate_frames(a.source)
        fs2 = enumerate_frames(a.target)
        wg = wreath_group(a.source.group, fs.n)
        xi = a.xi.image
        for w in wg.elements:
            pushed = WreathElement(
                a.target.group, tuple(xi[g] for g in w.g_tuple), w.sigma
            )
            for t in fs.frames:
                lifted = lift(wreath_act(a.source, w, t))
                if lifted != wreath_act(a.target, pushed, lift(t)) or lifted not in fs2.index:
                    raise AssertionError("frame lift failed the equivariance check")
    return lift


@dataclass
class WreathGroup:
    """G wr I_n materialized as a Cayley-table group with indexed elements."""

    group: FiniteGroup
    base: FiniteGroup
    n: int
    elements: tuple[WreathElement, ...]
    index: dict[tuple[tuple[int, ...], Permutation], int]

    def element_index(self, w: WreathElement) -> int:
        return self.index[(w.g_tuple, w.sigma)]


def wreath_group(G: FiniteGroup, n: int) -> WreathGroup:
    """Materialize the wreath product, elements sorted by (g_tuple, sigma)."""
    order = G.order**n * math.factorial(n)
    config.check_enumeration(order, "wreath elements")
    config.check_table_order(order, what="wreath product")
    elements = tuple(
        WreathElement(G, g, s)
        for g in itertools.product(range(G.order), repeat=n)
        for s in itertools.permutations(range(n))
    )
    index = {(w.g_tuple, w.sigma): i for i, w in enumerate(elements)}

    def idx(w: WreathElement) -> int:
        return index[(w.g_tuple, w.sigma)]

    mul = tuple(
        tuple(idx(wreath_mul(a, b)) for b in elements) for a in elements
    )
    identity = index[((G.identity,) * n, tuple(range(n)))]
    inv = tuple(idx(wreath_inv(w)) for w in elements)
    table = FiniteGroup(order, mul, identity, inv, f"{G.label}wr{n}")
    return WreathGroup(table, G, n, elements, index)


def frames_as_torsor(fs: FrameSpace, wg: WreathGroup) -> GSet:
    """The frame space as a group-set of the materialized wreath product."""
    F = fs.base_gset
    act = tuple(
        tuple(fs.index[wreath_act(F, w, t)] for t in fs.frames) for w in wg.elements
    )
    return GSet(wg.group, len(fs.frames), act)


@dataclass
class Reconstruction:
    """Result of collapsing a frame space back to a group-set.

    ``gset`` is the quotient by the slot-stabilizer subgroup,
    ``class_of_frame[i]`` the quotient class of ``fs.frames[i]``, and
    ``to_standard`` an isomorphism witness onto the standard semi-torsor.
    """

    gset: GSet
    class_of_frame: tuple[int, ...]
    to_standard: EquivariantMap


def reconstruct_semitorsor(fs: FrameSpace, x: int) -> Reconstruction:
    """Quotient the frame space by the subgroup leaving slot x untouched.

    The subgroup consists of the wreath elements with sigma(x) = x and
    identity group entry at slot x.  Its orbits biject with the base
    group-set via evaluation at slot x, and the induced action of G (acting
    on slot x only) makes the quotient isomorphic to G x I_n.
    """
    F = fs.base_gset
    G = F.group
    n = fs.n
    if not (0 <= x < n):
        raise ValueError("slot index out of range")

    # orbits of the slot stabilizer, found by BFS over its generators
    others = [y for y in range(n) if y != x]
    gens: list[WreathElement] = []
    for y in others:
        for g in range(G.order):
            tup = tuple(g if z == y else G.identity for z in range(n))
            gens.append(WreathElement(G, tup, tuple(range(n))))
    for y in others:
        for z in others:
            if y < z:
                sigma = list(range(n))
                sigma[y], sigma[z] = sigma[z], sigma[y]
                gens.append(WreathElement(G, (G.identity,) * n, tuple(sigma)))

    class_of = [-1] * len(fs.frames)
    classes: list[int] = []  # representative frame index per class
    for i in range(len(fs.frames)):
        if class_of[i] >= 0:
            continue
        k = len(classes)
        classes.append(i)
        stack = [i]
        class_of[i] = k
        while stack:
            j = stack.pop()
            t = fs.frames[j]
            for w in gens:
                m = fs.index[wreath_act(F, w, t)]
                if class_of[m] < 0:
                    class_of[m] = k
                    stack.append(m)

    # G acts on classes through the slot-x embedding g -> (delta_x g, id)
    act_rows = []
    for g in range(G.order):
        tup = tuple(g if z == x else G.identity for z in range(n))
        w = WreathElement(G, tup, tuple(range(n)))
        row = [-1] * len(classes)
        for k, rep in enumerate(classes):
            row[k] = class_of[fs.index[wreath_act(F, w, fs.frames[rep])]]
        act_rows.append(tuple(row))
    quotient = GSet(G, len(classes), tuple(act_rows))
    quotient.validate()

    # evaluation at slot x is constant on classes and lands in F; composing
    # with the inverse of the canonical frame's associated map gives G x I_n
    canonical = fs.frames[0]
    to_model = associated_map_inverse(F, canonical)
    value = tuple(to_model.value[fs.frames[rep][x]] for rep in classes)
    witness = EquivariantMap(
        quotient, standard_semitorsor(G, n), identity_hom(G), value
    )
    if not (witness.is_bijective() and _recheck(witness)):
        raise AssertionError("reconstruction witness failed verification")
    return Reconstruction(quotient, tuple(class_of), witness)


def _recheck(a: EquivariantMap) -> bool:
    from .gsets import check_equivariant

    return check_equivariant(a)


@dataclass
class EquivalenceReport:
    """Outcome of comparing group-set morphisms with frame-torsor morphisms."""

    gset_hom_count: int
    torsor_hom_count: int
    functor_injective: bool
    functor_surjective: bool

    @property
    def bijective(self) -> bool:
        return self.functor_injective and self.functor_surjective

    @property
    def ok(self) -> bool:
        return self.bijective and self.gset_hom_count == self.torsor_hom_count


def _wreath_generators(G: FiniteGroup, n: int) -> list[WreathElement]:
    """A generating set of G wr I_n: slot-wise group elements and adjacent swaps."""
    out = []
    for x in range(n):
        for g in range(G.order):
            if g == G.identity:
                continue
            tup = tuple(g if y == x else G.identity for y in range(n))
            out.append(WreathElement(G, tup, tuple(range(n))))
    for x in range(n - 1):
        sigma = list(range(n))
        sigma[x], sigma[x + 1] = sigma[x + 1], sigma[x]
        out.append(WreathElement(G, (G.identity,) * n, tuple(sigma)))
    return out


def gset_homs(F: GSet, F2: GSet) -> list[EquivariantMap]:
    """All id-equivariant maps F -> F2 that are bijections on orbits.

    A map out of a free group-set is fixed by the images of one basis, and
    the orbit condition holds exactly when those images form a basis of the
    target; so the morphisms biject with the frames of F2.
    """
    if F.group != F2.group:
        raise ValueError("morphism enumeration needs a common group")
    fs1 = enumerate_frames(F)
    fs2 = enumerate_frames(F2)
    if fs1.n != fs2.n:
        return []
    base = fs1.frames[0]
    phi_inv = associated_map_inverse(F, base)
    n = fs1.n
    out = []
    for image in fs2.frames:
        value = [0] * F.size
        for f in range(F.size):
            g, x = semitorsor_coords(phi_inv.value[f], n)
            value[f] = F2.act[g][image[x]]
        out.append(EquivariantMap(F, F2, identity_hom(F.group), tuple(value)))
    return out


def check_equivalence(F: GSet, F2: GSet) -> EquivalenceReport:
    """Exhaustively verify that lifting to frames is fully faithful.

    Enumerates the id-equivariant orbit-bijective morphisms F -> F2 and the
    wreath-equivariant maps between the frame torsors, applies the frame lift
    to each morphism, and checks the lift is a bijection between the two sets.
    """
    if F.group != F2.group:
        raise ValueError("equivalence check needs a common group")
    if not (is_free(F) and is_free(F2)):
        raise NotFree("equivalence check applies to free group-sets")
    fs1 = enumerate_frames(F)
    fs2 = enumerate_frames(F2)
    if fs1.n != fs2.n:
        return EquivalenceReport(0, 0, True, True)

    homs = gset_homs(F, F2)
    lifted: set[tuple[int, ...]] = set()
    for a in homs:
        lift = frame_functor_map(a)
        table = tuple(fs2.index[lift(t)] for t in fs1.frames)
        lifted.add(table)

    # torsor morphisms: each is w . base -> w . target_frame, one per target
    base = fs1.frames[0]
    torsor_tables: set[tuple[int, ...]] = set()
    for target in fs2.frames:
        table = []
        for t in fs1.frames:
            w = frame_divide(fs1, t, base)
            table.append(fs2.index[wreath_act(F2, w, target)])
        torsor_tables.add(tuple(table))

    # each constructed table really is wreath-equivariant: checking the
    # generators suffices, equivariance under products follows inductively
    gens = _wreath_generators(F.group, fs1.n)
    for table in torsor_tables:
        for w in gens:
            for i, t in enumerate(fs1.frames):
                moved = fs1.index[wreath_act(F, w, t)]
                expected = fs2.index[
                    wreath_act(F2, w, fs2.frames[table[i]])
                ]
                if table[moved] != expected:
                    raise AssertionError("torsor morphism failed equivariance")

    return EquivalenceReport(
        gset_hom_count=len(homs),
        torsor_hom_count=len(torsor_tables),
        functor_injective=len(lifted) == len(homs),
        functor_surjective=lifted == torsor_tables,
    )
