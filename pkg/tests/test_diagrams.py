"""Diagram verifiers: trivial instances, gates, snake invariants."""

from itertools import permutations

import pytest

from semiexact.core import (Semimodule, Subsemimodule, make_zmod, self_module,
                            zero_module)
from semiexact.diagrams import (Diagram, snake, verify_short_five_half, verify_five,
                                verify_five_parts, verify_lemma_diagram,
                                verify_lemma_short, verify_nine, verify_nine_first,
                                verify_nine_third, verify_short_five)
from semiexact.errors import HypothesisError
from semiexact.morphisms import (Morphism, identity_morphism, submodule_as_module,
                                 zero_morphism)
from semiexact.quotients import bourne_congruence, quotient


@pytest.fixture(scope="module")
def z2mod():
    return self_module(make_zmod(2))


@pytest.fixture(scope="module")
def z2zero(z2mod):
    return zero_module(z2mod.semiring)


def _identity_2x3(max3):
    """Rows {0,1} -> max3 -> max3/{0,1} twice, identity verticals."""
    sub, incl = submodule_as_module(Subsemimodule(max3, (0, 1)))
    q = quotient(max3, bourne_congruence(Subsemimodule(max3, (0, 1))))
    ids = [identity_morphism(sub), identity_morphism(max3),
           identity_morphism(q.quotient)]
    return Diagram.from_arrows("ident", [[incl, q.projection],
                                         [incl, q.projection]], [ids])


def test_lemma_short_identity(max3):
    d = _identity_2x3(max3)
    for direction in (1, 2, 3):
        assert verify_lemma_short(d, direction).ok


def test_lemma_diagram_identity(max3):
    d = _identity_2x3(max3)
    for clause in ("1a", "1b", "2a", "3"):
        assert verify_lemma_diagram(d, clause).ok


def test_lemma_diagram_2b_identity(z2mod, z2zero):
    ids = [identity_morphism(z2zero), identity_morphism(z2mod),
           identity_morphism(z2mod)]
    d = Diagram.from_arrows(
        "i2b", [[zero_morphism(z2zero, z2mod), identity_morphism(z2mod)],
                [zero_morphism(z2zero, z2mod), identity_morphism(z2mod)]], [ids])
    assert verify_lemma_diagram(d, "2b").ok


def test_short_five_identity(z2mod, z2zero):
    # rows 0 -> Z2 -(id)-> Z2 -> 0: genuinely short exact
    into = zero_morphism(z2zero, z2mod)
    idm = identity_morphism(z2mod)
    idz = identity_morphism(z2zero)
    d = Diagram.from_arrows("sf", [[into, idm], [into, idm]],
                            [[idz, idm, idm]])
    cert = verify_short_five(d)
    assert cert.ok
    for clause in (1, 2):
        assert verify_short_five_half(d, clause).ok


def test_short_five_missing_cancellativity(sat3):
    ident = identity_morphism(sat3)
    z = zero_module(sat3.semiring)
    into = zero_morphism(z, sat3)
    out = zero_morphism(sat3, z)
    d = Diagram.from_arrows("nc", [[into, out], [into, out]],
                            [[identity_morphism(z), ident, identity_morphism(z)]])
    with pytest.raises(HypothesisError) as err:
        verify_short_five(d)
    assert "cancellative" in str(err.value)
    assert "violated by element" in str(err.value)


def test_broken_commutativity_is_hypothesis_error(z2mod):
    ident = identity_morphism(z2mod)
    flip = Morphism("flip", z2mod, z2mod, (0, 1))
    zero = zero_morphism(z2mod, z2mod)
    with pytest.raises(HypothesisError):
        Diagram.from_arrows("bad", [[ident, ident], [ident, ident]],
                            [[ident, zero, ident]])


def test_declared_tag_verified(z2mod):
    ident = identity_morphism(z2mod)
    zero = zero_morphism(z2mod, z2mod)
    with pytest.raises(HypothesisError):
        Diagram.from_arrows("tagged", [[zero, zero], [zero, zero]],
                            [[zero, zero, zero]],
                            hypotheses=("surjective " + zero.name,))
    d = Diagram.from_arrows("tagged2", [[ident, ident], [ident, ident]],
                            [[ident, ident, ident]],
                            hypotheses=(f"iso {ident.name}", "commutes",
                                        f"cancellative {z2mod.name}"))
    assert d.hypotheses


def test_five_identity(z2mod, z2zero):
    # 0 -> 0 -> Z2 -(id)-> Z2 -> 0 is exact at the three interior objects
    into = zero_morphism(z2zero, z2mod)
    out = zero_morphism(z2mod, z2zero)
    idz = identity_morphism(z2zero)
    idm = identity_morphism(z2mod)
    row = [zero_morphism(z2zero, z2zero), into, idm, out]
    d = Diagram.from_arrows("five", [row, row], [[idz, idz, idm, idm, idz]])
    for clause in ("1a", "1b", "2", "3"):
        assert verify_five_parts(d, clause).ok
    for clause in (1, 2, 3):
        assert verify_five(d, clause).ok


def test_nine_identity(z2mod, z2zero):
    # rows Z2 -(id)-> Z2 -> 0 (short exact), bottom row zero modules,
    # identity columns ending in the zero module: every column short exact
    out = zero_morphism(z2mod, z2zero)
    idz = identity_morphism(z2zero)
    idm = identity_morphism(z2mod)
    rows = [[idm, out], [idm, out], [idz, idz]]
    cols = [[idm, idm, idz], [out, out, idz]]
    d = Diagram.from_arrows("nine", rows, cols)
    for clause in (1, 2):
        assert verify_nine_first(d, clause).ok
        assert verify_nine_third(d, clause).ok
    for direction in ("first-from-third", "third-from-first", "iff"):
        assert verify_nine(d, direction).ok


def test_nine_gate_on_broken_middle_row(z2mod, z2zero):
    # middle row not exact: 0 -> Z2 -0-> Z2 has image {0} but kernel Z2
    idm = identity_morphism(z2mod)
    zz = zero_morphism(z2mod, z2mod)
    rows = [[zz, zz], [zz, zz], [zz, zz]]
    cols = [[idm, idm, idm], [idm, idm, idm]]
    d = Diagram.from_arrows("bad9", rows, cols)
    with pytest.raises(HypothesisError):
        verify_nine(d, "iff")


def _snake_identity_diagram(z2mod, z2zero):
    return Diagram.from_arrows(
        "snake-id",
        [[zero_morphism(z2zero, z2mod), identity_morphism(z2mod)],
         [identity_morphism(z2mod), zero_morphism(z2mod, z2zero)]],
        [[zero_morphism(z2zero, z2mod), identity_morphism(z2mod),
          zero_morphism(z2mod, z2zero)]])


def test_snake_identity_delta(z2mod, z2zero):
    res = snake(_snake_identity_diagram(z2mod, z2zero))
    assert res.delta.map == (0, 1)
    assert res.ok and res.columns_exact
    assert res.cert_kernel_row is not None and res.cert_four_term is not None


def test_snake_zero_verticals(z2mod, z2zero):
    d = Diagram.from_arrows(
        "snake-zero",
        [[identity_morphism(z2mod), zero_morphism(z2mod, z2zero)],
         [zero_morphism(z2zero, z2mod), identity_morphism(z2mod)]],
        [[zero_morphism(z2mod, z2zero), zero_morphism(z2mod, z2mod),
          zero_morphism(z2zero, z2mod)]])
    res = snake(d)
    assert res.ok
    assert res.delta.domain.size == 1 and res.delta.map == (0,)


def test_snake_gate_failure(sat3):
    # alpha2 = inclusion of the saturating {0,2} submonoid: k-uniform but
    # not i-uniform, so the uniform gate on the middle vertical must fire
    sub, incl = submodule_as_module(Subsemimodule(sat3, (0, 2)))
    z = zero_module(sat3.semiring)
    d = Diagram.from_arrows(
        "snake-bad",
        [[identity_morphism(sub), zero_morphism(sub, z)],
         [identity_morphism(sat3), zero_morphism(sat3, z)]],
        [[incl, incl, identity_morphism(z)]])
    with pytest.raises(HypothesisError) as err:
        snake(d)
    assert "alpha2 uniform" in str(err.value)


def _relabel_module(m, perm):
    inv = [0] * m.size
    for old, new in enumerate(perm):
        inv[new] = old
    add = [[perm[m.add[inv[a]][inv[b]]] for b in range(m.size)] for a in range(m.size)]
    action = [[perm[m.action[inv[a]][s]] for s in range(m.semiring.size)]
              for a in range(m.size)]
    return Semimodule(f"{m.name}~", m.semiring, m.size, add, action)


def _transport(f, dom2, cod2, p_dom, p_cod):
    inv = [0] * f.domain.size
    for old, new in enumerate(p_dom):
        inv[new] = old
    return Morphism(f"{f.name}~", dom2, cod2,
                    tuple(p_cod[f.map[inv[x]]] for x in range(f.domain.size)))


def test_snake_delta_independent_of_m1_enumeration(z2mod, z2zero, max3):
    """Permuting the carrier of the middle-top module changes the set of
    lifts but never the connecting map."""
    base = _snake_identity_diagram(z2mod, z2zero)
    f1, g1 = base.horizontal(0, 0), base.horizontal(0, 1)
    f2, g2 = base.horizontal(1, 0), base.horizontal(1, 1)
    a1, a2, a3 = (base.vertical(0, c) for c in range(3))
    reference = snake(base).delta.map
    M1 = f1.codomain
    for tail in permutations(range(1, M1.size)):
        perm = (0,) + tail
        M1p = _relabel_module(M1, perm)
        f1p = _transport(f1, f1.domain, M1p, tuple(range(f1.domain.size)), perm)
        g1p = _transport(g1, M1p, g1.codomain, perm, tuple(range(g1.codomain.size)))
        a2p = _transport(a2, M1p, a2.codomain, perm, tuple(range(a2.codomain.size)))
        d = Diagram.from_arrows("perm", [[f1p, g1p], [f2, g2]], [[a1, a2p, a3]])
        assert snake(d).delta.map == reference


def test_snake_naturality_under_relabeling(max3):
    """Relabeling every module by zero-fixing permutations conjugates delta."""
    from semiexact.harness import HarnessSpec, gen_snake

    spec = HarnessSpec(make_zmod(4), 4, seed=7, quota=12)
    for d in gen_snake(spec):
        res = snake(d)
        mods = {}
        perms = {}
        for r in range(2):
            for c in range(3):
                m = d.node(r, c)
                if m not in perms:
                    # deterministic non-identity permutation when possible
                    tails = sorted(permutations(range(1, m.size)))
                    perm = (0,) + tails[-1]
                    perms[m] = perm
                    mods[m] = _relabel_module(m, perm)

        def t(f):
            return _transport(f, mods[f.domain], mods[f.codomain],
                              perms[f.domain], perms[f.codomain])

        d2 = Diagram.from_arrows(
            f"{d.name}~",
            [[t(d.horizontal(0, 0)), t(d.horizontal(0, 1))],
             [t(d.horizontal(1, 0)), t(d.horizontal(1, 1))]],
            [[t(d.vertical(0, 0)), t(d.vertical(0, 1)), t(d.vertical(0, 2))]])
        res2 = snake(d2)

        # kernel elements correspond through the N1 permutation
        n1 = d.node(0, 2)
        ker_old = res.kernel_inclusions[2].map
        ker_new = res2.kernel_inclusions[2].map
        p_n1 = perms[n1]
        assert sorted(p_n1[k] for k in ker_old) == sorted(ker_new)
        # cokernel classes correspond through the L2 permutation
        p_l2 = perms[d.node(1, 0)]
        old_classes = res.cokernels[0].congruence.class_members()
        new_cls = res2.cokernels[0].congruence.classes
        for ki, parent in enumerate(ker_old):
            new_pos = ker_new.index(p_n1[parent])
            image_class_members = old_classes[res.delta.map[ki]]
            expected = new_cls[p_l2[image_class_members[0]]]
            assert res2.delta.map[new_pos] == expected
