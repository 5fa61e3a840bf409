"""Congruences on semimodules and quotient construction.

Congruences are stored as flattened partitions (class id per element),
built with a union-find pass and renumbered canonically: class ids follow
the order of each class's smallest member, which keeps the class of zero
at id 0. Quotient tables are re-verified to be representative-independent
even though a valid congruence guarantees it; the check is cheap and
catches hand-authored fixture bugs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Semimodule, Subsemimodule, subtractive_closure_set
from .errors import StructureError


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            x, p[x] = p[x], p[p[x]]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def flatten(self):
        return [self.find(x) for x in range(len(self.parent))]


def canonical_partition(class_ids):
    """Renumber so ids appear in first-occurrence order (0, 1, 2, ...)."""
    remap = {}
    out = []
    for c in class_ids:
        if c not in remap:
            remap[c] = len(remap)
        out.append(remap[c])
    return tuple(out)


@dataclass(frozen=True)
class Congruence:
    module: Semimodule
    classes: tuple

    def __post_init__(self):
        object.__setattr__(self, "classes", canonical_partition(self.classes))
        M = self.module
        if len(self.classes) != M.size:
            raise StructureError(f"congruence on {M.name}: wrong partition length")
        cls = self.classes
        for a in M.elements():
            for b in M.elements():
                if cls[a] != cls[b]:
                    continue
                for c in M.elements():
                    if cls[M.add[a][c]] != cls[M.add[b][c]]:
                        raise StructureError(
                            f"congruence on {M.name}: not compatible with add "
                            f"(a={a},b={b},c={c})")
                for s in range(M.semiring.size):
                    if cls[M.action[a][s]] != cls[M.action[b][s]]:
                        raise StructureError(
                            f"congruence on {M.name}: not compatible with action "
                            f"(a={a},b={b},s={s})")

    @property
    def class_count(self):
        return max(self.classes) + 1

    def class_members(self):
        out = [[] for _ in range(self.class_count)]
        for m, c in enumerate(self.classes):
            out[c].append(m)
        return [tuple(ms) for ms in out]

    def related(self, a, b):
        return self.classes[a] == self.classes[b]


def identity_congruence(M: Semimodule) -> Congruence:
    return Congruence(M, tuple(range(M.size)))


def bourne_congruence(L: Subsemimodule) -> Congruence:
    """m1 ~ m2 iff m1 + l1 = m2 + l2 for some l1, l2 in L.

    The pairwise relation is already transitive because L is closed under
    addition; union-find only flattens it into a partition.
    """
    M = L.parent
    uf = _UnionFind(M.size)
    members = L.members
    for m1 in M.elements():
        reach1 = {M.add[m1][l] for l in members}
        for m2 in range(m1 + 1, M.size):
            if any(M.add[m2][l] in reach1 for l in members):
                uf.union(m1, m2)
    return Congruence(M, tuple(uf.flatten()))


def kernel_pair_congruence(f) -> Congruence:
    """Partition of the domain by equal images; a congruence by linearity."""
    return Congruence(f.domain, canonical_partition(f.map))


@dataclass(frozen=True)
class QuotientModule:
    base: Semimodule
    congruence: Congruence
    quotient: Semimodule
    projection: object  # Morphism base -> quotient


def quotient(M: Semimodule, rho: Congruence, name=None) -> QuotientModule:
    """Quotient module by a validated congruence, with its projection.

    Tables are induced on smallest-member representatives and verified to
    be independent of the representative choice.
    """
    from .morphisms import Morphism

    if rho.module != M:
        raise StructureError("congruence does not live on the module being quotiented")
    members = rho.class_members()
    reps = [ms[0] for ms in members]
    n = len(reps)
    cls = rho.classes
    add = [[cls[M.add[reps[a]][reps[b]]] for b in range(n)] for a in range(n)]
    action = [[cls[M.action[reps[a]][s]] for s in range(M.semiring.size)] for a in range(n)]
    for a in range(n):
        for x in members[a]:
            for b in range(n):
                for y in members[b]:
                    assert cls[M.add[x][y]] == add[a][b], \
                        f"quotient of {M.name}: add not representative-independent"
            for s in range(M.semiring.size):
                assert cls[M.action[x][s]] == action[a][s], \
                    f"quotient of {M.name}: action not representative-independent"
    if name is None:
        zero_class = ",".join(map(str, members[0]))
        name = f"{M.name}/{{{zero_class}}}"
    Q = Semimodule(name, M.semiring, n, add, action)
    pi = Morphism(f"pi[{name}]", M, Q, tuple(cls))
    return QuotientModule(M, rho, Q, pi)


def projection_kernel_is_closure(L: Subsemimodule) -> bool:
    """Kernel of the Bourne projection equals the subtractive closure of L."""
    M = L.parent
    rho = bourne_congruence(L)
    kernel = {m for m in M.elements() if rho.classes[m] == rho.classes[M.zero]}
    return kernel == set(subtractive_closure_set(M, L.members))
