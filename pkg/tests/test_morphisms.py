"""Morphism machinery: kernels, images, classification, induced maps, Hom."""

import pytest
from hypothesis import given, settings, strategies as st

from semiexact.core import (Subsemimodule, is_cancellative_module, make_zmod,
                            self_module, subtractive_closure_set, zero_module)
from semiexact.enumeration import (is_epimorphism, is_monomorphism,
                                   universe_with_free_module, UniverseSpec)
from semiexact.errors import PreconditionError, StructureError
from semiexact.morphisms import (Morphism, canonical_iso, classify, cokernel, coimage,
                                 compose, enumerate_hom, hom_add, identity_morphism,
                                 image, image_set, induced_from_cokernel,
                                 induced_to_kernel, is_injective, is_isomorphism,
                                 is_surjective, kernel, kernel_set, submodule_as_module,
                                 zero_morphism)
from semiexact.quotients import bourne_congruence, quotient


@pytest.fixture(scope="module")
def squash(sat3, chain2):
    return Morphism("squash", sat3, chain2, (0, 1, 1))


def test_morphism_validation(sat3, chain2):
    with pytest.raises(StructureError):
        Morphism("bad", sat3, chain2, (0, 1, 0))  # not additive: f(1+1) != f(1)+f(1)
    with pytest.raises(StructureError):
        Morphism("bad", sat3, chain2, (1, 1, 1))  # does not preserve zero
    with pytest.raises(StructureError):
        Morphism("bad", sat3, chain2, (0, 1))  # wrong length
    z2 = self_module(make_zmod(2))
    with pytest.raises(StructureError):
        Morphism("bad", z2, chain2, (0, 1))  # different semirings


def test_kernel_image_examples(squash, sat3, max3):
    z2 = self_module(make_zmod(2))
    assert kernel(identity_morphism(z2)).members == (0,)
    assert kernel(squash).members == (0,)
    assert kernel(zero_morphism(sat3, max3)).members == (0, 1, 2)
    assert image(squash).members == (0, 1)
    assert image(zero_morphism(sat3, max3)).members == (0,)


def test_cokernel_examples(max3, chain2):
    sub, incl = submodule_as_module(Subsemimodule(max3, (0, 1)))
    ck = cokernel(incl)
    assert ck.congruence.class_members() == [(0, 1), (2,)]
    surj = Morphism("s", max3, chain2, (0, 0, 1))
    assert cokernel(surj).quotient.size == 1
    z = zero_module(max3.semiring)
    ck = cokernel(zero_morphism(z, max3))
    assert ck.quotient.size == max3.size


def test_coimage_and_canonical_iso(squash):
    co = coimage(squash)
    assert co.quotient.size == 2
    d = canonical_iso(squash)
    assert is_isomorphism(d)
    ident = identity_morphism(squash.domain)
    assert canonical_iso(ident).domain.size == squash.domain.size
    z = zero_morphism(squash.domain, squash.codomain)
    assert coimage(z).quotient.size == 1
    assert image(z).members == (0,)


def test_classify_examples(squash, sat3):
    c = classify(squash)
    assert not c.injective and c.surjective
    assert not c.k_uniform and c.i_uniform
    assert c.semi_mono and c.semi_epi and c.semi_iso
    assert not c.uniform
    assert dict(c.witnesses)["k_uniform"] == "pair (1,2)"

    # the inclusion of {0,2} as a two-element saturating monoid
    sub, incl = submodule_as_module(Subsemimodule(sat3, (0, 2)))
    ci = classify(incl)
    assert not ci.i_uniform and ci.injective and ci.k_uniform

    ident = classify(identity_morphism(sat3))
    assert ident.injective and ident.surjective and ident.uniform \
        and ident.semi_iso and ident.cancellative is not None


def test_classification_invariants(nat3_universe):
    for M in nat3_universe:
        for N in nat3_universe:
            for f in enumerate_hom(M, N):
                c = classify(f)
                assert c.uniform == (c.k_uniform and c.i_uniform)
                assert c.semi_iso == (c.semi_mono and c.semi_epi)
                if c.injective:
                    assert c.semi_mono and c.k_uniform
                if c.surjective:
                    assert c.i_uniform and c.semi_epi
                both = is_cancellative_module(M) and is_cancellative_module(N)
                assert (c.epimorphism_in_cs is None) == (not both)


def test_kernels_always_subtractive(nat3_universe):
    for M in nat3_universe:
        for N in nat3_universe:
            for f in enumerate_hom(M, N):
                k = kernel_set(f)
                assert k == set(subtractive_closure_set(M, k)), f.name


def _costead_candidate(f):
    """[x] -> f(x) on the Bourne quotient of the kernel; (map, quotient)."""
    q = quotient(f.domain, bourne_congruence(kernel(f)))
    table = {}
    for x in f.domain.elements():
        c = q.projection.map[x]
        table.setdefault(c, set()).add(f.map[x])
    return q, table


def test_costead_blocks(nat3_universe):
    """k-uniform iff the canonical map X/Ker -> im is an isomorphism;
    i-uniform iff im equals the kernel of the cokernel projection;
    uniform iff the canonical map onto the closure is an isomorphism."""
    for M in nat3_universe:
        for N in nat3_universe:
            for f in enumerate_hom(M, N):
                c = classify(f)
                q, table = _costead_candidate(f)
                well_defined = all(len(v) == 1 for v in table.values())
                if well_defined:
                    values = {min(v) for v in table.values()}
                    bijective = len(values) == q.quotient.size == len(image_set(f))
                else:
                    bijective = False
                assert c.k_uniform == bijective, f.name

                ck = cokernel(f)
                assert c.i_uniform == (kernel_set(ck.projection) == image_set(f))

                closure = subtractive_closure_set(N, image_set(f))
                onto_closure = well_defined and bijective and \
                    image_set(f) == closure
                assert c.uniform == onto_closure, f.name


def test_mono_iff_injective(nat3_universe):
    pool = universe_with_free_module(
        UniverseSpec(nat3_universe[0].semiring, 3))
    for M in nat3_universe:
        for N in nat3_universe:
            for f in enumerate_hom(M, N):
                assert is_monomorphism(f, pool) == is_injective(f), f.name


def test_cs_epi_closure_criterion(nat3_universe):
    """Over cancellative modules, brute-force epi testing against cancellative
    codomains agrees with closure(image) = codomain."""
    cs = [m for m in nat3_universe if is_cancellative_module(m)]
    for M in cs:
        for N in cs:
            for f in enumerate_hom(M, N):
                closure_says = len(subtractive_closure_set(N, image_set(f))) == N.size
                assert is_epimorphism(f, cs) == closure_says, f.name


def test_regular_epi_proxies(nat3_universe):
    """surjective iff Coker = 0 and i-uniform."""
    for M in nat3_universe:
        for N in nat3_universe:
            for f in enumerate_hom(M, N):
                c = classify(f)
                proxy = cokernel(f).quotient.size == 1 and c.i_uniform
                assert proxy == c.surjective, f.name


def test_induced_to_kernel_examples(max3):
    sub, incl = submodule_as_module(Subsemimodule(max3, (0, 1)))
    q = quotient(max3, bourne_congruence(Subsemimodule(max3, (0, 1))))
    f_prime = induced_to_kernel(incl, q.projection)
    assert is_surjective(f_prime)
    assert f_prime.codomain.size == 2

    z2 = self_module(make_zmod(2))
    z = zero_module(z2.semiring)
    fp = induced_to_kernel(zero_morphism(z, z2), identity_morphism(z2))
    assert fp.codomain.size == 1
    fp = induced_to_kernel(identity_morphism(z2), zero_morphism(z2, z))
    assert is_isomorphism(fp)


def test_induced_from_cokernel_examples(max3):
    sub, incl = submodule_as_module(Subsemimodule(max3, (0, 1)))
    q = quotient(max3, bourne_congruence(Subsemimodule(max3, (0, 1))))
    g2, coker = induced_from_cokernel(incl, q.projection)
    assert is_injective(g2)

    z2 = self_module(make_zmod(2))
    z = zero_module(z2.semiring)
    gz, _ = induced_from_cokernel(zero_morphism(z, z2), identity_morphism(z2))
    assert is_isomorphism(gz)


def test_induced_preconditions(max3):
    ident = identity_morphism(max3)
    with pytest.raises(PreconditionError):
        induced_to_kernel(ident, ident)  # composite is the identity, not zero
    with pytest.raises(PreconditionError):
        induced_from_cokernel(ident, ident)


def test_enumerate_hom_examples(chain2, max3):
    z2 = self_module(make_zmod(2))
    assert len(enumerate_hom(z2, z2)) == 2
    z = zero_module(max3.semiring)
    assert len(enumerate_hom(max3, z)) == 1
    maps = [h.map for h in enumerate_hom(chain2, max3)]
    assert maps == [(0, 0), (0, 1), (0, 2)]


def test_hom_monoid(chain2, max3):
    homs = enumerate_hom(chain2, max3)
    zero = zero_morphism(chain2, max3)
    for f in homs:
        assert hom_add(f, zero).map == f.map
        for g in homs:
            assert hom_add(f, g).map == hom_add(g, f).map
            assert hom_add(f, g).map in {h.map for h in homs}


def test_composition_laws(nat3_universe):
    """Transfer of k/i-uniformity along composition with injective g or
    surjective f, all six directions."""
    small = [m for m in nat3_universe if m.size <= 3]
    for L in small:
        for M in small:
            for f in enumerate_hom(L, M):
                cf = classify(f)
                for N in small:
                    for g in enumerate_hom(M, N):
                        cg = classify(g)
                        gf = classify(compose(g, f))
                        if is_injective(g):
                            assert cf.k_uniform == gf.k_uniform
                            if gf.i_uniform:
                                assert cf.i_uniform
                            if gf.uniform:
                                assert cf.uniform
                            if cg.i_uniform:
                                assert cf.i_uniform == gf.i_uniform
                                assert cf.uniform == gf.uniform
                        if is_surjective(f):
                            assert cg.i_uniform == gf.i_uniform
                            if gf.k_uniform:
                                assert cg.k_uniform
                            if gf.uniform:
                                assert cg.uniform
                            if cf.k_uniform:
                                assert cg.k_uniform == gf.k_uniform
                                assert cg.uniform == gf.uniform


@settings(max_examples=60)
@given(data=st.data())
def test_hom_linearity_random(nat3_universe, data):
    """Every enumerated hom passes full linearity; every non-enumerated total
    map fails it (enumerate_hom is complete)."""
    small = [m for m in nat3_universe if m.size <= 3]
    M = data.draw(st.sampled_from(small))
    N = data.draw(st.sampled_from(small))
    table = tuple(data.draw(st.integers(0, N.size - 1)) for _ in range(M.size))
    enumerated = {h.map for h in enumerate_hom(M, N)}
    try:
        Morphism("cand", M, N, table)
        valid = True
    except StructureError:
        valid = False
    assert valid == (table in enumerated)
