"""Explicit finite groups.

Groups are multiplication tables over element ids ``0..order-1`` with 0 the
identity.  Construction from permutation generators numbers elements
breadth-first from the identity, multiplying on the right by the generators
in input order, which makes every derived object (conjugacy classes, coset
lists, reports) canonical.

Also here: group actions by automorphisms, semidirect products, 1-cocycles
for the twisting construction, and the twisted sections they induce.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

from .errors import (
    ClosureTooLarge,
    GroupMismatch,
    InvalidCocycle,
    NotAHomomorphism,
    NotAPermutation,
    NotASubgroup,
)

__all__ = [
    "FiniteGroup",
    "GroupAction",
    "GroupHom",
    "SemidirectProduct",
    "Cocycle",
    "CocycleCheck",
    "group_from_generators",
    "conjugacy_classes",
    "class_index_map",
    "cyclic_subgroup_class_reps",
    "subgroup_closure",
    "is_subgroup",
    "all_subgroups",
    "subgroup_conjugacy_reps",
    "left_cosets",
    "fixed_coset_counts",
    "bfs_words",
    "semidirect_product",
    "validate_cocycle",
    "twisted_section",
    "enumerate_cocycles",
    "automorphisms",
    "all_actions",
    "same_group",
    "trivial_group",
]

DEFAULT_MAX_ORDER = 10080


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group as explicit multiplication and inverse tables.

    Element ids run from 0 to order-1 and 0 is the identity.  ``labels``
    are optional display strings, one per element.
    """

    order: int
    mul_table: tuple[tuple[int, ...], ...]
    inv_table: tuple[int, ...]
    generator_ids: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        n = self.order
        if n < 1:
            raise ValueError("group order must be positive")
        if len(self.mul_table) != n or any(len(row) != n for row in self.mul_table):
            raise ValueError("multiplication table has the wrong shape")
        for row in self.mul_table:
            for x in row:
                if not 0 <= x < n:
                    raise ValueError(f"table entry {x} out of range")
        if len(self.inv_table) != n:
            raise ValueError("inverse table has the wrong shape")
        for g in range(n):
            if self.mul_table[0][g] != g or self.mul_table[g][0] != g:
                raise ValueError("element 0 is not the identity")
            gi = self.inv_table[g]
            if self.mul_table[g][gi] != 0 or self.mul_table[gi][g] != 0:
                raise ValueError(f"inverse table wrong at element {g}")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must cover every element")
        reached = self._generated_set()
        if len(reached) != n:
            raise ValueError("generator_ids do not generate the group")

    def _generated_set(self) -> set[int]:
        seen = {0}
        queue = [0]
        while queue:
            g = queue.pop()
            for s in self.generator_ids:
                h = self.mul_table[g][s]
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        return seen

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def conjugate(self, g: int, by: int) -> int:
        """``by * g * by^-1``."""
        return self.mul(self.mul(by, g), self.inv(by))

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, g: int) -> int:
        k = 1
        x = g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def label(self, g: int) -> str:
        if self.labels is not None:
            return self.labels[g]
        return str(g)

    def is_abelian(self) -> bool:
        return all(
            self.mul_table[a][b] == self.mul_table[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def validate(self) -> None:
        """Exhaustive associativity check on top of the constructor checks."""
        n = self.order
        mt = self.mul_table
        for a in range(n):
            for b in range(n):
                ab = mt[a][b]
                row_ab = mt[ab]
                row_b = mt[b]
                for c in range(n):
                    if row_ab[c] != mt[a][row_b[c]]:
                        raise ValueError(f"associativity fails at ({a}, {b}, {c})")


def same_group(a: FiniteGroup, b: FiniteGroup) -> bool:
    """Structural identity: equal order and multiplication table."""
    return a is b or (a.order == b.order and a.mul_table == b.mul_table)


def _check_permutation(perm: Sequence[int], npoints: int, which: int) -> tuple[int, ...]:
    arr = tuple(int(x) for x in perm)
    if len(arr) != npoints:
        raise NotAPermutation(f"generator {which} has length {len(arr)}, expected {npoints}")
    seen = [False] * npoints
    for x in arr:
        if not 0 <= x < npoints or seen[x]:
            raise NotAPermutation(f"generator {which} is not a bijection on 0..{npoints - 1}")
        seen[x] = True
    return arr


_GENERATOR_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def group_from_generators(
    perms: Sequence[Sequence[int]],
    *,
    max_order: int = DEFAULT_MAX_ORDER,
    generator_letters: Optional[Sequence[str]] = None,
) -> FiniteGroup:
    """Close a list of permutations (image arrays) into a FiniteGroup.

    Elements are numbered breadth-first from the identity, multiplying known
    elements on the right by the generators in input order.  Composition is
    ``(a*b)[i] = a[b[i]]`` (apply b, then a).  Raises NotAPermutation on
    malformed input and ClosureTooLarge past ``max_order`` elements.
    """
    if not perms:
        raise NotAPermutation("empty generator list")
    npoints = len(perms[0])
    gens = [_check_permutation(p, npoints, i) for i, p in enumerate(perms)]
    if generator_letters is None:
        letters = [
            _GENERATOR_LETTERS[i] if i < len(_GENERATOR_LETTERS) else f"g{i}" for i in range(len(gens))
        ]
    else:
        letters = [str(s) for s in generator_letters]
        if len(letters) != len(gens):
            raise ValueError("generator_letters must match the generator count")

    identity = tuple(range(npoints))
    index: dict[tuple[int, ...], int] = {identity: 0}
    elems: list[tuple[int, ...]] = [identity]
    words: list[str] = ["e"]
    cursor = 0
    while cursor < len(elems):
        current = elems[cursor]
        for gi, g in enumerate(gens):
            nxt = tuple(current[g[i]] for i in range(npoints))
            if nxt not in index:
                index[nxt] = len(elems)
                elems.append(nxt)
                words.append(letters[gi] if cursor == 0 else words[cursor] + letters[gi])
                if len(elems) > max_order:
                    raise ClosureTooLarge(f"closure exceeded {max_order} elements")
        cursor += 1

    n = len(elems)
    mul_table = tuple(
        tuple(index[tuple(ea[eb[i]] for i in range(npoints))] for eb in elems) for ea in elems
    )
    inv_table = []
    for e in elems:
        inv = [0] * npoints
        for i, img in enumerate(e):
            inv[img] = i
        inv_table.append(index[tuple(inv)])
    generator_ids = tuple(index[tuple(g)] for g in gens)
    return FiniteGroup(n, mul_table, tuple(inv_table), generator_ids, tuple(words))


def trivial_group() -> FiniteGroup:
    """The one-element group."""
    return group_from_generators([[0]])


@lru_cache(maxsize=None)
def bfs_words(group: FiniteGroup) -> tuple[Optional[tuple[int, int]], ...]:
    """Breadth-first construction words over ``generator_ids``.

    Entry g is ``(parent, k)`` meaning ``g = parent * generator_ids[k]``,
    or None for the identity.  Used to extend generator data (matrices,
    automorphisms) to the whole group.
    """
    out: list[Optional[tuple[int, int]]] = [None] * group.order
    seen = [False] * group.order
    seen[0] = True
    queue = [0]
    cursor = 0
    while cursor < len(queue):
        g = queue[cursor]
        cursor += 1
        for k, s in enumerate(group.generator_ids):
            h = group.mul(g, s)
            if not seen[h]:
                seen[h] = True
                out[h] = (g, k)
                queue.append(h)
    return tuple(out)


@lru_cache(maxsize=None)
def conjugacy_classes(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """Conjugacy classes, each a sorted id tuple.

    Classes are ordered by (class size, minimal element id); the identity
    class is therefore always first.
    """
    seen = [False] * group.order
    classes = []
    for g in range(group.order):
        if seen[g]:
            continue
        orbit = {group.conjugate(g, h) for h in range(group.order)}
        for x in orbit:
            seen[x] = True
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda cls: (len(cls), cls[0]))
    return tuple(classes)


@lru_cache(maxsize=None)
def class_index_map(group: FiniteGroup) -> tuple[int, ...]:
    """Element id -> index of its conjugacy class in canonical order."""
    out = [0] * group.order
    for idx, cls in enumerate(conjugacy_classes(group)):
        for g in cls:
            out[g] = idx
    return tuple(out)


def subgroup_closure(group: FiniteGroup, seed: Sequence[int]) -> frozenset[int]:
    """Subgroup generated by ``seed``."""
    seen = {0}
    queue = [0]
    gens = [int(g) for g in seed]
    while queue:
        g = queue.pop()
        for s in gens:
            h = group.mul(g, s)
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return frozenset(seen)


def is_subgroup(group: FiniteGroup, ids: Sequence[int]) -> bool:
    s = set(int(x) for x in ids)
    if 0 not in s or any(not 0 <= x < group.order for x in s):
        return False
    return all(group.mul(a, b) in s for a in s for b in s)


def _conjugate_subgroup(group: FiniteGroup, sub: frozenset[int], by: int) -> frozenset[int]:
    return frozenset(group.conjugate(g, by) for g in sub)


@lru_cache(maxsize=None)
def cyclic_subgroup_class_reps(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """One cyclic subgroup per conjugacy class of cyclic subgroups.

    Each representative is the lexicographically smallest member of its
    class (as a sorted id tuple); the list is ordered by (subgroup order,
    element tuple), so the trivial subgroup comes first.
    """
    cyclic: set[frozenset[int]] = set()
    for g in range(group.order):
        cyclic.add(subgroup_closure(group, [g]))
    assigned: set[frozenset[int]] = set()
    reps = []
    for sub in sorted(cyclic, key=lambda s: (len(s), tuple(sorted(s)))):
        if sub in assigned:
            continue
        orbit = {_conjugate_subgroup(group, sub, h) for h in range(group.order)}
        assigned |= orbit
        reps.append(min(tuple(sorted(s)) for s in orbit))
    reps.sort(key=lambda r: (len(r), r))
    return tuple(reps)


@lru_cache(maxsize=None)
def all_subgroups(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """Every subgroup, as sorted id tuples ordered by (order, tuple)."""
    found: set[frozenset[int]] = {frozenset({0})}
    work = [frozenset({0})]
    while work:
        sub = work.pop()
        for g in range(1, group.order):
            if g in sub:
                continue
            bigger = subgroup_closure(group, list(sub) + [g])
            if bigger not in found:
                found.add(bigger)
                work.append(bigger)
    subs = sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))
    return tuple(subs)


@lru_cache(maxsize=None)
def subgroup_conjugacy_reps(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """One subgroup per conjugacy class, ordered by (order, element tuple)."""
    assigned: set[frozenset[int]] = set()
    reps = []
    for sub_tuple in all_subgroups(group):
        sub = frozenset(sub_tuple)
        if sub in assigned:
            continue
        orbit = {_conjugate_subgroup(group, sub, h) for h in range(group.order)}
        assigned |= orbit
        reps.append(min(tuple(sorted(s)) for s in orbit))
    reps.sort(key=lambda r: (len(r), r))
    return tuple(reps)


@lru_cache(maxsize=None)
def left_cosets(group: FiniteGroup, delta: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Left cosets of the subgroup ``delta``, ordered by minimal representative."""
    if not is_subgroup(group, delta):
        raise NotASubgroup(f"{delta} is not a subgroup")
    dset = sorted(set(delta))
    seen = [False] * group.order
    cosets = []
    for g in range(group.order):
        if seen[g]:
            continue
        coset = tuple(sorted(group.mul(g, d) for d in dset))
        for x in coset:
            seen[x] = True
        cosets.append(coset)
    return tuple(cosets)


def fixed_coset_counts(group: FiniteGroup, delta: tuple[int, ...]) -> tuple[int, ...]:
    """Per conjugacy class: how many left cosets of ``delta`` the class fixes.

    The count is evaluated at the class representative of minimal id; it is
    constant on classes because coset permutation actions are.
    """
    cosets = left_cosets(group, delta)
    coset_of = {}
    for idx, coset in enumerate(cosets):
        for x in coset:
            coset_of[x] = idx
    counts = []
    for cls in conjugacy_classes(group):
        g = cls[0]
        fixed = 0
        for idx, coset in enumerate(cosets):
            if coset_of[group.mul(g, coset[0])] == idx:
                fixed += 1
        counts.append(fixed)
    return tuple(counts)


@dataclass(frozen=True)
class GroupHom:
    """Group homomorphism given by its full image table; validated eagerly."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.source.order:
            raise NotAHomomorphism("image table has the wrong length")
        for x in self.images:
            if not 0 <= x < self.target.order:
                raise NotAHomomorphism(f"image {x} out of range")
        if self.images[0] != 0:
            raise NotAHomomorphism("identity does not map to identity")
        for a in range(self.source.order):
            for b in range(self.source.order):
                if self.images[self.source.mul(a, b)] != self.target.mul(
                    self.images[a], self.images[b]
                ):
                    raise NotAHomomorphism(f"multiplicativity fails at ({a}, {b})")

    def apply(self, g: int) -> int:
        return self.images[g]


@dataclass(frozen=True)
class GroupAction:
    """Action of ``actor`` on ``target`` by group automorphisms.

    ``table[g][f]`` is the image of target element f under actor element g.
    Use ``validate`` (or the checked factories) to confirm the automorphism
    and homomorphism laws.
    """

    actor: FiniteGroup
    target: FiniteGroup
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.actor.order:
            raise ValueError("action table must have one row per actor element")
        for row in self.table:
            if len(row) != self.target.order:
                raise ValueError("action table row has the wrong length")
        if self.table[0] != tuple(range(self.target.order)):
            raise NotAHomomorphism("identity must act as the identity map")

    def act(self, g: int, f: int) -> int:
        return self.table[g][f]

    def is_trivial(self) -> bool:
        idrow = tuple(range(self.target.order))
        return all(row == idrow for row in self.table)

    @staticmethod
    def trivial(actor: FiniteGroup, target: FiniteGroup) -> "GroupAction":
        idrow = tuple(range(target.order))
        return GroupAction(actor, target, tuple(idrow for _ in range(actor.order)))

    @staticmethod
    def from_generator_images(
        actor: FiniteGroup, target: FiniteGroup, images: Sequence[Sequence[int]]
    ) -> "GroupAction":
        """Extend automorphisms given on ``actor.generator_ids`` to all of actor.

        The extension follows the breadth-first words of the actor; the result
        is validated exhaustively.
        """
        if len(images) != len(actor.generator_ids):
            raise NotAHomomorphism("need one automorphism per actor generator")
        perms = [_check_permutation(p, target.order, i) for i, p in enumerate(images)]
        table: list[Optional[tuple[int, ...]]] = [None] * actor.order
        table[0] = tuple(range(target.order))
        words = bfs_words(actor)
        for g in sorted(
            (g for g in range(actor.order) if words[g] is not None),
            key=lambda g: _bfs_depth(words, g),
        ):
            parent, k = words[g]  # type: ignore[misc]
            base = table[parent]
            assert base is not None
            gen = perms[k]
            table[g] = tuple(base[gen[i]] for i in range(target.order))
        action = GroupAction(actor, target, tuple(t for t in table if t is not None))
        action.validate()
        for k, gid in enumerate(actor.generator_ids):
            if action.table[gid] != perms[k]:
                raise NotAHomomorphism(f"generator {k} image conflicts with the extension")
        return action

    def validate(self) -> None:
        """Check that every row is an automorphism and the map is a hom."""
        n = self.target.order
        for g, row in enumerate(self.table):
            if sorted(row) != list(range(n)):
                raise NotAHomomorphism(f"actor element {g} does not act bijectively")
            for a in range(n):
                for b in range(n):
                    if row[self.target.mul(a, b)] != self.target.mul(row[a], row[b]):
                        raise NotAHomomorphism(
                            f"actor element {g} does not act by an automorphism at ({a}, {b})"
                        )
        for g in range(self.actor.order):
            for h in range(self.actor.order):
                gh = self.actor.mul(g, h)
                for f in range(n):
                    if self.table[gh][f] != self.table[g][self.table[h][f]]:
                        raise NotAHomomorphism(f"action is not a homomorphism at ({g}, {h})")


def _bfs_depth(words: tuple[Optional[tuple[int, int]], ...], g: int) -> int:
    depth = 0
    while words[g] is not None:
        g = words[g][0]  # type: ignore[index]
        depth += 1
    return depth


@dataclass(frozen=True)
class SemidirectProduct:
    """Semidirect product ``F x| Gamma`` for an action of Gamma on F.

    Element ``(f, g)`` gets id ``f * |Gamma| + g``; multiplication is
    ``(f1, g1)(f2, g2) = (f1 * act(g1, f2), g1 * g2)``.  ``embed_f`` and
    ``section`` are the canonical injections of F and Gamma, ``projection``
    the quotient map onto Gamma.
    """

    group: FiniteGroup
    action: GroupAction
    embed_f: tuple[int, ...]
    section: tuple[int, ...]
    projection: tuple[int, ...]
    factor: tuple[tuple[int, int], ...]

    def pair_id(self, f: int, g: int) -> int:
        return f * self.action.actor.order + g


def semidirect_product(action: GroupAction) -> SemidirectProduct:
    """Build the semidirect product of a validated action."""
    action.validate()
    f_grp = action.target
    g_grp = action.actor
    nf, ng = f_grp.order, g_grp.order
    n = nf * ng

    def pid(f: int, g: int) -> int:
        return f * ng + g

    mul_rows = []
    for a in range(n):
        f1, g1 = divmod(a, ng)
        row = []
        for b in range(n):
            f2, g2 = divmod(b, ng)
            row.append(pid(f_grp.mul(f1, action.act(g1, f2)), g_grp.mul(g1, g2)))
        mul_rows.append(tuple(row))
    inv = []
    for a in range(n):
        f, g = divmod(a, ng)
        gi = g_grp.inv(g)
        inv.append(pid(action.act(gi, f_grp.inv(f)), gi))
    generator_ids = tuple(pid(f, 0) for f in f_grp.generator_ids) + tuple(
        pid(0, g) for g in g_grp.generator_ids
    )
    labels = None
    if f_grp.labels is not None and g_grp.labels is not None:
        labels = tuple(
            f"({f_grp.labels[a // ng]},{g_grp.labels[a % ng]})" for a in range(n)
        )
    group = FiniteGroup(n, tuple(mul_rows), tuple(inv), generator_ids, labels)
    return SemidirectProduct(
        group=group,
        action=action,
        embed_f=tuple(pid(f, 0) for f in range(nf)),
        section=tuple(pid(0, g) for g in range(ng)),
        projection=tuple(a % ng for a in range(n)),
        factor=tuple(divmod(a, ng) for a in range(n)),
    )


@dataclass(frozen=True)
class Cocycle:
    """1-cocycle for a group action: a map ``g -> x_g`` into the target.

    The defining law is ``x_(g*h) = x_g * act(g, x_h)``; use
    ``validate_cocycle`` to check it.
    """

    base: GroupAction
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.base.actor.order:
            raise ValueError("cocycle must assign a value to every actor element")
        for x in self.values:
            if not 0 <= x < self.base.target.order:
                raise ValueError(f"cocycle value {x} out of range")


@dataclass(frozen=True)
class CocycleCheck:
    ok: bool
    witness: Optional[tuple[int, int]]


def validate_cocycle(x: Cocycle) -> CocycleCheck:
    """Check the cocycle law at every pair; report the first violation.

    Pairs are scanned in ascending (g, h) order, so the witness is canonical.
    The identity condition ``x_e = e`` is implied by the law at (0, 0).
    """
    act = x.base
    f_grp = act.target
    g_grp = act.actor
    for g in range(g_grp.order):
        for h in range(g_grp.order):
            lhs = x.values[g_grp.mul(g, h)]
            rhs = f_grp.mul(x.values[g], act.act(g, x.values[h]))
            if lhs != rhs:
                return CocycleCheck(False, (g, h))
    return CocycleCheck(True, None)


def twisted_section(x: Cocycle, product: Optional[SemidirectProduct] = None) -> GroupHom:
    """The homomorphic section ``g -> (x_g, g)`` of the semidirect projection.

    Raises InvalidCocycle when the cocycle law fails.  ``product`` may be
    passed to reuse an already-built semidirect product of ``x.base``.
    """
    check = validate_cocycle(x)
    if not check.ok:
        raise InvalidCocycle(f"cocycle law fails at pair {check.witness}")
    if product is None:
        product = semidirect_product(x.base)
    elif product.action != x.base:
        raise GroupMismatch("semidirect product was built from a different action")
    gamma = x.base.actor
    images = tuple(product.pair_id(x.values[g], g) for g in range(gamma.order))
    return GroupHom(gamma, product.group, images)


def enumerate_cocycles(action: GroupAction) -> tuple[Cocycle, ...]:
    """All valid cocycles for ``action``, in lexicographic value order."""
    gamma = action.actor
    f_grp = action.target
    out = []
    for tail in product(range(f_grp.order), repeat=gamma.order - 1):
        candidate = Cocycle(action, (0,) + tail)
        if validate_cocycle(candidate).ok:
            out.append(candidate)
    return tuple(out)


@lru_cache(maxsize=None)
def automorphisms(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """All automorphisms as image tuples, lexicographically sorted.

    Brute force over permutations fixing the identity; intended for the
    small groups used in twisting sweeps (order <= 8).
    """
    if group.order > 8:
        raise ValueError("automorphism enumeration is limited to order <= 8")
    n = group.order
    out = []
    from itertools import permutations

    for rest in permutations(range(1, n)):
        phi = (0,) + rest
        if all(
            phi[group.mul(a, b)] == group.mul(phi[a], phi[b])
            for a in range(n)
            for b in range(n)
        ):
            out.append(phi)
    return tuple(sorted(out))


def all_actions(actor: FiniteGroup, target: FiniteGroup) -> tuple[GroupAction, ...]:
    """Every action of ``actor`` on ``target`` by automorphisms.

    Enumerates automorphism choices for each actor generator, extends along
    breadth-first words, and keeps the assignments that define homomorphisms.
    Results are deduplicated by table and sorted, so the order is canonical.
    """
    auts = automorphisms(target)
    seen = set()
    actions = []
    for choice in product(range(len(auts)), repeat=len(actor.generator_ids)):
        try:
            action = GroupAction.from_generator_images(
                actor, target, [auts[i] for i in choice]
            )
        except NotAHomomorphism:
            continue
        if action.table not in seen:
            seen.add(action.table)
            actions.append(action)
    actions.sort(key=lambda a: a.table)
    return tuple(actions)
