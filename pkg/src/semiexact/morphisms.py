"""Linear maps between semimodules and their derived objects.

A Morphism validates its own linearity on construction, so every value of
the type is a genuine map of semimodules. classify() evaluates the raw
defining condition of each flag; the lemma-level equivalences these flags
satisfy live in the test suite, keeping implementation and oracle apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .core import Element, Semimodule, Subsemimodule, is_cancellable, \
    subtractive_closure_set
from .errors import PreconditionError, StructureError
from .quotients import QuotientModule, bourne_congruence, kernel_pair_congruence, quotient


@dataclass(frozen=True)
class Morphism:
    name: str
    domain: Semimodule
    codomain: Semimodule
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        dom, cod = self.domain, self.codomain
        if dom.semiring != cod.semiring:
            raise StructureError(f"morphism {self.name}: domain and codomain semirings differ")
        if len(self.map) != dom.size:
            raise StructureError(f"morphism {self.name}: map has {len(self.map)} entries, "
                                 f"expected {dom.size}")
        for v in self.map:
            if not 0 <= v < cod.size:
                raise StructureError(f"morphism {self.name}: value {v} out of range")
        f = self.map
        if f[dom.zero] != cod.zero:
            raise StructureError(f"morphism {self.name}: does not preserve zero")
        for a in dom.elements():
            for b in dom.elements():
                if f[dom.add[a][b]] != cod.add[f[a]][f[b]]:
                    raise StructureError(
                        f"morphism {self.name}: not additive at ({a},{b})")
        for a in dom.elements():
            for s in range(dom.semiring.size):
                if f[dom.action[a][s]] != cod.action[f[a]][s]:
                    raise StructureError(
                        f"morphism {self.name}: not equivariant at ({a},s={s})")

    def __call__(self, m):
        return self.map[m]

    def __repr__(self):
        return f"Morphism({self.name!r}: {self.domain.name} -> {self.codomain.name})"


def is_linear_table(dom: Semimodule, cod: Semimodule, f) -> bool:
    """Linearity predicate on a raw table, used by enumeration without exceptions."""
    if f[dom.zero] != cod.zero:
        return False
    for a in dom.elements():
        fa = f[a]
        add_a = dom.add[a]
        for b in dom.elements():
            if f[add_a[b]] != cod.add[fa][f[b]]:
                return False
        act_a = dom.action[a]
        for s in range(dom.semiring.size):
            if f[act_a[s]] != cod.action[fa][s]:
                return False
    return True


def identity_morphism(M: Semimodule) -> Morphism:
    return Morphism(f"id[{M.name}]", M, M, tuple(range(M.size)))


def zero_morphism(M: Semimodule, N: Semimodule) -> Morphism:
    return Morphism(f"0[{M.name}->{N.name}]", M, N, (N.zero,) * M.size)


def compose(g: Morphism, f: Morphism) -> Morphism:
    if f.codomain != g.domain:
        raise PreconditionError(f"cannot compose {g.name} after {f.name}: objects differ")
    return Morphism(f"{g.name}*{f.name}", f.domain, g.codomain,
                    tuple(g.map[v] for v in f.map))


def hom_add(f: Morphism, g: Morphism) -> Morphism:
    """Pointwise sum; Hom(M, N) is a commutative monoid under this."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise PreconditionError("hom_add: mismatched hom-set")
    cod = f.codomain
    return Morphism(f"({f.name}+{g.name})", f.domain, cod,
                    tuple(cod.add[a][b] for a, b in zip(f.map, g.map)))


def is_injective(f: Morphism) -> bool:
    return len(set(f.map)) == f.domain.size


def is_surjective(f: Morphism) -> bool:
    return len(set(f.map)) == f.codomain.size


def is_isomorphism(f: Morphism) -> bool:
    return is_injective(f) and is_surjective(f)


def is_zero_morphism(f: Morphism) -> bool:
    return all(v == f.codomain.zero for v in f.map)


def is_cancellative_morphism(f: Morphism) -> bool:
    """Every image element is cancellable in the codomain."""
    return all(is_cancellable(Element(f.codomain, v)) for v in set(f.map))


def submodule_as_module(X: Subsemimodule, name=None) -> tuple[Semimodule, Morphism]:
    """A subsemimodule reindexed as a module in its own right, with inclusion."""
    M = X.parent
    members = X.members
    pos = {m: i for i, m in enumerate(members)}
    add = [[pos[M.add[a][b]] for b in members] for a in members]
    action = [[pos[M.action[a][s]] for s in range(M.semiring.size)] for a in members]
    if name is None:
        name = f"{M.name}|{{{','.join(map(str, members))}}}"
    sub = Semimodule(name, M.semiring, len(members), add, action)
    incl = Morphism(f"incl[{name}]", sub, M, members)
    return sub, incl


def kernel_set(f: Morphism) -> frozenset:
    return frozenset(m for m in f.domain.elements() if f.map[m] == f.codomain.zero)


def kernel(f: Morphism) -> Subsemimodule:
    """{m | f(m) = 0} exactly as defined; no closure is applied."""
    return Subsemimodule(f.domain, tuple(sorted(kernel_set(f))))


def kernel_module(f: Morphism) -> tuple[Semimodule, Morphism]:
    return submodule_as_module(kernel(f), name=f"Ker({f.name})")


def image_set(f: Morphism) -> frozenset:
    return frozenset(f.map)


def image(f: Morphism) -> Subsemimodule:
    return Subsemimodule(f.codomain, tuple(sorted(image_set(f))))


def image_module(f: Morphism) -> tuple[Semimodule, Morphism]:
    return submodule_as_module(image(f), name=f"Im({f.name})")


def cokernel(f: Morphism) -> QuotientModule:
    """Codomain modulo the Bourne congruence of the image."""
    return quotient(f.codomain, bourne_congruence(image(f)), name=f"Coker({f.name})")


def coimage(f: Morphism) -> QuotientModule:
    """Domain modulo the equal-image congruence."""
    return quotient(f.domain, kernel_pair_congruence(f), name=f"Coim({f.name})")


def canonical_iso(f: Morphism) -> Morphism:
    """The canonical map Coim(f) -> Im(f), [x] |-> f(x); always bijective."""
    co = coimage(f)
    img, incl = image_module(f)
    pos = {m: i for i, m in enumerate(incl.map)}
    table = [0] * co.quotient.size
    for x in f.domain.elements():
        table[co.projection.map[x]] = pos[f.map[x]]
    d = Morphism(f"d[{f.name}]", co.quotient, img, table)
    assert is_isomorphism(d), f"canonical map of {f.name} failed to be bijective"
    return d


def is_k_uniform(f: Morphism, witness=False):
    """Equal images are explained by kernel elements:
    f(x1) = f(x2) implies x1 + k1 = x2 + k2 with k1, k2 in the kernel."""
    dom = f.domain
    ker = sorted(kernel_set(f))
    by_value = {}
    for x in dom.elements():
        by_value.setdefault(f.map[x], []).append(x)
    for xs in by_value.values():
        for i, x1 in enumerate(xs):
            reach1 = {dom.add[x1][k] for k in ker}
            for x2 in xs[i + 1:]:
                if not any(dom.add[x2][k] in reach1 for k in ker):
                    return (False, (x1, x2)) if witness else False
    return (True, None) if witness else True


def is_i_uniform(f: Morphism, witness=False):
    """The image equals its subtractive closure in the codomain."""
    img = image_set(f)
    closure = subtractive_closure_set(f.codomain, img)
    extra = sorted(closure - img)
    if extra:
        return (False, extra[0]) if witness else False
    return (True, None) if witness else True


@dataclass(frozen=True)
class MorphismClassification:
    injective: bool
    surjective: bool
    k_uniform: bool
    i_uniform: bool
    uniform: bool
    semi_mono: bool
    semi_epi: bool
    semi_iso: bool
    cancellative: bool
    epimorphism_in_cs: object  # bool when both modules cancellative, else None
    witnesses: tuple  # (flag, witness-string) pairs for the false flags

    def flags(self):
        out = {k: getattr(self, k) for k in
               ("injective", "surjective", "k_uniform", "i_uniform", "uniform",
                "semi_mono", "semi_epi", "semi_iso", "cancellative")}
        out["epimorphism_in_cs"] = self.epimorphism_in_cs
        return out


def classify(f: Morphism) -> MorphismClassification:
    """All flags from their raw defining conditions, with witnesses for failures."""
    from .core import is_cancellative_module

    dom, cod = f.domain, f.codomain
    wit = {}

    injective = True
    seen = {}
    for x in dom.elements():
        v = f.map[x]
        if v in seen:
            injective = False
            wit["injective"] = f"f({seen[v]})=f({x})={v}"
            break
        seen[v] = x

    img = image_set(f)
    surjective = len(img) == cod.size
    if not surjective:
        missing = min(set(cod.elements()) - img)
        wit["surjective"] = f"{missing} not in image"

    k_ok, k_wit = is_k_uniform(f, witness=True)
    if not k_ok:
        wit["k_uniform"] = f"pair ({k_wit[0]},{k_wit[1]})"
    i_ok, i_wit = is_i_uniform(f, witness=True)
    if not i_ok:
        wit["i_uniform"] = f"{i_wit} in closure(image) only"

    ker = kernel_set(f)
    semi_mono = ker == {dom.zero}
    if not semi_mono:
        wit["semi_mono"] = f"kernel contains {min(ker - {dom.zero})}"

    closure = subtractive_closure_set(cod, img)
    semi_epi = len(closure) == cod.size
    if not semi_epi:
        wit["semi_epi"] = f"{min(set(cod.elements()) - closure)} outside closure(image)"

    cancellative = is_cancellative_morphism(f)
    if not cancellative:
        bad = min(v for v in img if not is_cancellable(Element(cod, v)))
        wit["cancellative"] = f"f-image {bad} not cancellable"

    both_cs = is_cancellative_module(dom) and is_cancellative_module(cod)
    return MorphismClassification(
        injective=injective,
        surjective=surjective,
        k_uniform=k_ok,
        i_uniform=i_ok,
        uniform=k_ok and i_ok,
        semi_mono=semi_mono,
        semi_epi=semi_epi,
        semi_iso=semi_mono and semi_epi,
        cancellative=cancellative,
        epimorphism_in_cs=semi_epi if both_cs else None,
        witnesses=tuple(sorted(wit.items())),
    )


def induced_to_kernel(f: Morphism, g: Morphism, name=None) -> Morphism:
    """f': L -> Ker(g) with the same values as f; requires g∘f = 0."""
    if f.codomain != g.domain:
        raise PreconditionError("induced_to_kernel: f and g do not compose")
    if not is_zero_morphism(compose(g, f)):
        raise PreconditionError("induced_to_kernel: g∘f is not the zero morphism")
    kmod, incl = kernel_module(g)
    pos = {m: i for i, m in enumerate(incl.map)}
    return Morphism(name or f"{f.name}'", f.domain, kmod, tuple(pos[v] for v in f.map))


def induced_from_cokernel(f: Morphism, g: Morphism, name=None) -> tuple[Morphism, QuotientModule]:
    """g'': Coker(f) -> N, [m] |-> g(m); requires g∘f = 0.

    Well-definedness over all representatives is re-verified even though
    g∘f = 0 guarantees it.
    """
    if f.codomain != g.domain:
        raise PreconditionError("induced_from_cokernel: f and g do not compose")
    if not is_zero_morphism(compose(g, f)):
        raise PreconditionError("induced_from_cokernel: g∘f is not the zero morphism")
    coker = cokernel(f)
    table = [None] * coker.quotient.size
    for m in g.domain.elements():
        c = coker.projection.map[m]
        if table[c] is None:
            table[c] = g.map[m]
        else:
            assert table[c] == g.map[m], \
                f"induced map from {coker.quotient.name} not well-defined at class {c}"
    return Morphism(name or f"{g.name}''", coker.quotient, g.codomain, table), coker


def _generating_sequence(M: Semimodule):
    """Greedy generators plus a derivation for every element, for hom pruning."""
    derivation = {M.zero: ("zero",)}
    order = [M.zero]
    gens = []

    def close():
        changed = True
        while changed:
            changed = False
            for a in list(order):
                for b in list(order):
                    c = M.add[a][b]
                    if c not in derivation:
                        derivation[c] = ("add", a, b)
                        order.append(c)
                        changed = True
                for s in range(M.semiring.size):
                    c = M.action[a][s]
                    if c not in derivation:
                        derivation[c] = ("act", a, s)
                        order.append(c)
                        changed = True

    close()
    for m in M.elements():
        if m not in derivation:
            gens.append(m)
            derivation[m] = ("gen", len(gens) - 1)
            order.append(m)
            close()
    return gens, order, derivation


@lru_cache(maxsize=None)
def enumerate_hom(M: Semimodule, N: Semimodule) -> tuple:
    """Every linear map M -> N, pruned by generator images, in a fixed order.

    Candidate maps are determined by images of a greedy generating set and
    then checked against the full linearity predicate, which also rejects
    assignments that break the generators' relations. Results are cached;
    everything involved is immutable.
    """
    if M.semiring != N.semiring:
        raise PreconditionError("enumerate_hom: modules over different semirings")
    gens, order, derivation = _generating_sequence(M)
    out = []
    for images in product(range(N.size), repeat=len(gens)):
        table = [None] * M.size
        for m in order:
            d = derivation[m]
            if d[0] == "zero":
                table[m] = N.zero
            elif d[0] == "gen":
                table[m] = images[d[1]]
            elif d[0] == "add":
                table[m] = N.add[table[d[1]]][table[d[2]]]
            else:
                table[m] = N.action[table[d[1]]][d[2]]
        if is_linear_table(M, N, table):
            out.append(tuple(table))
    out.sort()
    return tuple(Morphism(f"h{i}[{M.name}->{N.name}]", M, N, t)
                 for i, t in enumerate(out))
