"""Commutative diagrams and mechanical verifiers for the homological lemmas.

A verifier never trusts declared tags: it re-checks every hypothesis from
the raw tables (raising HypothesisError if one fails) and only then
evaluates the lemma's conclusions, returning a certificate that carries a
witness for anything that failed. A failed conclusion on a
hypothesis-satisfying instance is an implementation bug, never new
mathematics.

Grid layout: nodes[r][c] with horizontals (r,c): nodes[r][c] -> nodes[r][c+1]
and verticals (r,c): nodes[r][c] -> nodes[r+1][c].
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import is_cancellative_module, subtractive_closure_set
from .errors import HypothesisError, LemmaRefuted, StructureError
from .exactness import Sequence, analyze
from .morphisms import (Morphism, classify, compose, image_set, is_cancellative_morphism,
                        is_injective, is_isomorphism, is_k_uniform, is_surjective,
                        kernel_module, kernel_set, cokernel)


@dataclass(frozen=True)
class Assertion:
    id: str
    ok: bool
    witness: str = "-"


@dataclass(frozen=True)
class Certificate:
    lemma: str
    hypotheses: tuple
    conclusions: tuple

    @property
    def ok(self):
        return all(a.ok for a in self.conclusions)

    def failures(self):
        return tuple(a for a in self.conclusions if not a.ok)


class _Check:
    def __init__(self, lemma):
        self.lemma = lemma
        self.hyps = []
        self.concls = []

    def gate(self, cond, aid, witness="-"):
        self.hyps.append(Assertion(aid, bool(cond), "-" if cond else witness))
        if not cond:
            raise HypothesisError(f"{self.lemma}: {aid}", witness)

    def gate_cancellative(self, M, aid):
        from .core import Element, is_cancellable

        bad = next((m for m in M.elements() if not is_cancellable(Element(M, m))), None)
        self.gate(bad is None, aid, f"violated by element {bad} of {M.name}")

    def conclude(self, cond, aid, witness="-"):
        self.concls.append(Assertion(aid, bool(cond), "-" if cond else witness))

    def done(self):
        return Certificate(self.lemma, tuple(self.hyps), tuple(self.concls))


class Diagram:
    """Labeled grid of semimodules and morphisms.

    Every complete square is checked to commute on the nose at
    construction time, and every declared hypothesis tag is re-verified;
    both failures raise HypothesisError.
    """

    def __init__(self, name, nodes, horizontals, verticals, hypotheses=()):
        self.name = name
        self.nodes = tuple(tuple(row) for row in nodes)
        self.horizontals = dict(horizontals)
        self.verticals = dict(verticals)
        self.hypotheses = tuple(hypotheses)
        self.rows = len(self.nodes)
        self.cols = max((len(r) for r in self.nodes), default=0)
        self._validate_shape()
        self._check_squares()
        for tag in self.hypotheses:
            ok, witness = self.check_tag(tag)
            if not ok:
                raise HypothesisError(f"diagram {self.name}: declared '{tag}'", witness)

    @classmethod
    def from_arrows(cls, name, row_arrows, gap_verticals, hypotheses=()):
        """Build a full grid from per-row horizontal lists and per-gap vertical lists."""
        nodes = []
        horizontals = {}
        verticals = {}
        for r, arrows in enumerate(row_arrows):
            row = [arrows[0].domain] + [a.codomain for a in arrows]
            nodes.append(row)
            for c, a in enumerate(arrows):
                horizontals[(r, c)] = a
        for r, verts in enumerate(gap_verticals):
            for c, v in enumerate(verts):
                verticals[(r, c)] = v
        return cls(name, nodes, horizontals, verticals, hypotheses)

    def node(self, r, c):
        return self.nodes[r][c]

    def horizontal(self, r, c):
        return self.horizontals[(r, c)]

    def vertical(self, r, c):
        return self.verticals[(r, c)]

    def _validate_shape(self):
        for (r, c), f in self.horizontals.items():
            a, b = self._at(r, c), self._at(r, c + 1)
            if a is None or b is None or f.domain != a or f.codomain != b:
                raise StructureError(
                    f"diagram {self.name}: horizontal at ({r},{c}) does not match its nodes")
        for (r, c), f in self.verticals.items():
            a, b = self._at(r, c), self._at(r + 1, c)
            if a is None or b is None or f.domain != a or f.codomain != b:
                raise StructureError(
                    f"diagram {self.name}: vertical at ({r},{c}) does not match its nodes")

    def _at(self, r, c):
        if 0 <= r < self.rows and 0 <= c < len(self.nodes[r]):
            return self.nodes[r][c]
        return None

    def _check_squares(self):
        for (r, c) in self.horizontals:
            if (r, c) in self.verticals and (r, c + 1) in self.verticals \
                    and (r + 1, c) in self.horizontals:
                top = self.horizontals[(r, c)]
                bottom = self.horizontals[(r + 1, c)]
                left = self.verticals[(r, c)]
                right = self.verticals[(r, c + 1)]
                down_then_right = compose(bottom, left)
                right_then_down = compose(right, top)
                if down_then_right.map != right_then_down.map:
                    bad = next(x for x in range(top.domain.size)
                               if down_then_right.map[x] != right_then_down.map[x])
                    raise HypothesisError(
                        f"diagram {self.name}: square ({r},{c}) does not commute",
                        f"element {bad} of {top.domain.name}")

    def morphism_by_name(self, name):
        for key in sorted(self.horizontals):
            if self.horizontals[key].name == name:
                return self.horizontals[key]
        for key in sorted(self.verticals):
            if self.verticals[key].name == name:
                return self.verticals[key]
        raise StructureError(f"diagram {self.name}: no morphism named {name!r}")

    def node_by_name(self, name):
        for row in self.nodes:
            for m in row:
                if m is not None and m.name == name:
                    return m
        raise StructureError(f"diagram {self.name}: no node named {name!r}")

    def row_sequence(self, r):
        arrows = [self.horizontals[(r, c)] for c in range(len(self.nodes[r]) - 1)]
        return Sequence(f"{self.name}.row{r}", tuple(arrows))

    def col_sequence(self, c):
        arrows = [self.verticals[(r, c)] for r in range(self.rows - 1)]
        return Sequence(f"{self.name}.col{c}", tuple(arrows))

    def check_tag(self, tag):
        """Re-verify one declared hypothesis tag; (ok, witness)."""
        parts = tag.split()
        kind = parts[0]
        if kind == "commutes":
            return True, "-"  # squares are always re-checked at construction
        if kind in ("row-exact", "col-exact"):
            idx = int(parts[1])
            seq = self.row_sequence(idx) if kind == "row-exact" else self.col_sequence(idx)
            v = analyze(seq)
            return v.exact, f"{kind} {idx} fails"
        if kind == "cancellative":
            M = self.node_by_name(parts[1])
            return is_cancellative_module(M), f"module {parts[1]} not cancellative"
        f = self.morphism_by_name(parts[1])
        checks = {
            "injective": lambda: is_injective(f),
            "surjective": lambda: is_surjective(f),
            "iso": lambda: is_isomorphism(f),
            "k-uniform": lambda: classify(f).k_uniform,
            "i-uniform": lambda: classify(f).i_uniform,
            "uniform": lambda: classify(f).uniform,
            "semi-mono": lambda: classify(f).semi_mono,
            "semi-epi": lambda: classify(f).semi_epi,
            "cancellative-morphism": lambda: is_cancellative_morphism(f),
        }
        if kind not in checks:
            raise StructureError(f"diagram {self.name}: unknown hypothesis tag {tag!r}")
        return checks[kind](), f"{kind} {parts[1]} fails"


def _require_grid(d: Diagram, rows, cols, lemma):
    if d.rows != rows or any(len(r) != cols for r in d.nodes):
        raise StructureError(f"{lemma}: expected a {rows}x{cols} diagram, got {d.name}")
    for r in range(rows):
        for c in range(cols - 1):
            if (r, c) not in d.horizontals:
                raise StructureError(f"{lemma}: missing horizontal at ({r},{c})")
    for r in range(rows - 1):
        for c in range(cols):
            if (r, c) not in d.verticals:
                raise StructureError(f"{lemma}: missing vertical at ({r},{c})")


def _exact_middle(f, g):
    """Exactness of X -f-> Y -g-> Z at Y: image = kernel and g k-uniform."""
    img, ker = image_set(f), kernel_set(g)
    if img != ker:
        return False, f"element {min(img ^ ker)} separates image({f.name}) from kernel({g.name})"
    ok, wit = is_k_uniform(g, witness=True)
    if not ok:
        return False, f"{g.name} not k-uniform at {wit}"
    return True, "-"


def _row_exact_witness(seq):
    v = analyze(seq)
    if v.exact:
        return True, "-"
    bad = next(p for p in v.positions if not p.exact)
    return False, f"position {bad.position}: {bad.witness}"


# ------------------------------------------------------------- Lemma: short

def verify_lemma_short(d: Diagram, direction: int) -> Certificate:
    """2x3 diagram, first column surjective and third injective; exactness of
    one row transfers to the other along the middle vertical."""
    _require_grid(d, 2, 3, "lemma short")
    ck = _Check(f"short.{direction}")
    f1, g1 = d.horizontal(0, 0), d.horizontal(0, 1)
    f2, g2 = d.horizontal(1, 0), d.horizontal(1, 1)
    a1, a2, a3 = d.vertical(0, 0), d.vertical(0, 1), d.vertical(0, 2)
    ck.gate(is_surjective(a1), "alpha1 surjective", f"{a1.name} misses part of {a1.codomain.name}")
    ck.gate(is_injective(a3), "alpha3 injective", f"{a3.name} identifies two elements")
    row1 = _exact_middle(f1, g1)
    row2 = _exact_middle(f2, g2)
    if direction == 1:
        ck.gate(is_surjective(a2), "alpha2 surjective", a2.name)
        ck.gate(row1[0], "first row exact", row1[1])
        ck.conclude(row2[0], "second row exact", row2[1])
    elif direction == 2:
        ck.gate(is_injective(a2), "alpha2 injective", a2.name)
        ck.gate(row2[0], "second row exact", row2[1])
        ck.conclude(row1[0], "first row exact", row1[1])
    elif direction == 3:
        ck.gate(is_isomorphism(a2), "alpha2 isomorphism", a2.name)
        ck.conclude(row1[0] == row2[0], "rows equi-exact",
                    f"first={row1[0]} second={row2[0]}")
    else:
        raise StructureError("lemma short: direction must be 1, 2 or 3")
    return ck.done()


# ----------------------------------------------------------- Lemma: diagram

def verify_lemma_diagram(d: Diagram, clause: str) -> Certificate:
    """2x3 diagram with both rows exact; clause-specific transfer of
    injectivity/surjectivity across the verticals."""
    _require_grid(d, 2, 3, "lemma diagram")
    ck = _Check(f"diagram.{clause}")
    f1, g1 = d.horizontal(0, 0), d.horizontal(0, 1)
    f2, g2 = d.horizontal(1, 0), d.horizontal(1, 1)
    a1, a2, a3 = d.vertical(0, 0), d.vertical(0, 1), d.vertical(0, 2)
    ok, wit = _exact_middle(f1, g1)
    ck.gate(ok, "first row exact", wit)
    ok, wit = _exact_middle(f2, g2)
    ck.gate(ok, "second row exact", wit)
    c2 = classify(a2)
    if clause == "1a":
        ck.gate(is_surjective(g1), "g1 surjective", g1.name)
        ck.gate(is_surjective(a1), "alpha1 surjective", a1.name)
        ck.gate(is_injective(a2), "alpha2 injective", a2.name)
        ck.conclude(is_injective(a3), "alpha3 injective",
                    dict(classify(a3).witnesses).get("injective", "-"))
    elif clause == "1b":
        ck.gate(is_injective(f2), "f2 injective", f2.name)
        ck.gate(classify(a3).semi_mono, "alpha3 semi-mono", a3.name)
        ck.gate(is_surjective(a2), "alpha2 surjective", a2.name)
        ck.conclude(is_surjective(a1), "alpha1 surjective", a1.name)
    elif clause == "2a":
        ck.gate(classify(f2).semi_mono, "f2 semi-mono", f2.name)
        ck.gate(classify(a1).semi_mono, "alpha1 semi-mono", a1.name)
        ck.gate(classify(a3).semi_mono, "alpha3 semi-mono", a3.name)
        ck.conclude(c2.semi_mono, "alpha2 semi-mono", dict(c2.witnesses).get("semi_mono", "-"))
    elif clause == "2b":
        ck.gate(is_cancellative_morphism(f1), "f1 cancellative", f1.name)
        ck.gate(is_cancellative_morphism(a2), "alpha2 cancellative", a2.name)
        ck.gate(is_injective(a1), "alpha1 injective", a1.name)
        ck.gate(is_injective(a3), "alpha3 injective", a3.name)
        ck.gate(is_injective(f2), "f2 injective", f2.name)
        ck.conclude(c2.injective, "alpha2 injective", dict(c2.witnesses).get("injective", "-"))
    elif clause == "3":
        ck.gate(is_surjective(a1), "alpha1 surjective", a1.name)
        ck.gate(is_surjective(a3), "alpha3 surjective", a3.name)
        ck.gate(is_surjective(g1), "g1 surjective", g1.name)
        ck.conclude(c2.semi_epi, "alpha2 semi-epi", dict(c2.witnesses).get("semi_epi", "-"))
        if c2.i_uniform:
            ck.conclude(c2.surjective, "alpha2 surjective (i-uniform case)",
                        dict(c2.witnesses).get("surjective", "-"))
    else:
        raise StructureError("lemma diagram: clause must be 1a, 1b, 2a, 2b or 3")
    return ck.done()


# ------------------------------------------------- Corollary: short-five aux

def _gate_row_right_exact(ck, f, g, label):
    """Row L -f-> M -g-> N -> 0: exact at M and at N (g surjective)."""
    ok, wit = _exact_middle(f, g)
    ck.gate(ok, f"{label} exact at middle", wit)
    ck.gate(is_surjective(g), f"{label}: g surjective", g.name)


def _gate_row_left_exact(ck, f, g, label):
    """Row 0 -> L -f-> M -g-> N: f injective and exact at M."""
    ck.gate(is_injective(f), f"{label}: f injective", f.name)
    ok, wit = _exact_middle(f, g)
    ck.gate(ok, f"{label} exact at middle", wit)


def verify_short_five_half(d: Diagram, clause: int) -> Certificate:
    """2x3 diagram, top row right-exact, bottom row left-exact, cancellative
    middles; isomorphism bookkeeping around the middle vertical."""
    _require_grid(d, 2, 3, "short-five-half")
    ck = _Check(f"short-five-half.{clause}")
    f1, g1 = d.horizontal(0, 0), d.horizontal(0, 1)
    f2, g2 = d.horizontal(1, 0), d.horizontal(1, 1)
    a1, a2, a3 = d.vertical(0, 0), d.vertical(0, 1), d.vertical(0, 2)
    ck.gate_cancellative(d.node(0, 1), "M1 cancellative")
    ck.gate_cancellative(d.node(1, 1), "M2 cancellative")
    _gate_row_right_exact(ck, f1, g1, "first row")
    _gate_row_left_exact(ck, f2, g2, "second row")
    if clause == 1:
        ck.gate(is_isomorphism(a2), "alpha2 isomorphism", a2.name)
        ck.conclude(is_surjective(a1) == is_injective(a3),
                    "alpha1 surjective iff alpha3 injective",
                    f"alpha1-surj={is_surjective(a1)} alpha3-inj={is_injective(a3)}")
    elif clause == 2:
        ck.gate(classify(a2).i_uniform, "alpha2 i-uniform", a2.name)
        ck.gate(is_isomorphism(a1), "alpha1 isomorphism", a1.name)
        ck.gate(is_isomorphism(a3), "alpha3 isomorphism", a3.name)
        ck.conclude(is_isomorphism(a2), "alpha2 isomorphism", a2.name)
    else:
        raise StructureError("short-five-half: clause must be 1 or 2")
    return ck.done()


def verify_short_five(d: Diagram) -> Certificate:
    """Both rows short exact, cancellative middles, outer verticals
    isomorphisms: the middle vertical is an isomorphism exactly when it is
    i-uniform.

    The outer isomorphisms must be hypotheses, not part of the iff: with
    rows 0 -> 0 -> M -> M -> 0 and 0 -> M -> M -> 0 -> 0 the identity
    middle is an isomorphism while the outer verticals never are.
    """
    _require_grid(d, 2, 3, "short-five")
    ck = _Check("short-five")
    f1, g1 = d.horizontal(0, 0), d.horizontal(0, 1)
    f2, g2 = d.horizontal(1, 0), d.horizontal(1, 1)
    a1, a2, a3 = d.vertical(0, 0), d.vertical(0, 1), d.vertical(0, 2)
    ck.gate_cancellative(d.node(0, 1), "M1 cancellative")
    ck.gate_cancellative(d.node(1, 1), "M2 cancellative")
    for f, g, label in ((f1, g1, "first row"), (f2, g2, "second row")):
        _gate_row_left_exact(ck, f, g, label)
        ck.gate(is_surjective(g), f"{label}: g surjective", g.name)
    ck.gate(is_isomorphism(a1), "alpha1 isomorphism", a1.name)
    ck.gate(is_isomorphism(a3), "alpha3 isomorphism", a3.name)
    lhs = classify(a2).i_uniform
    rhs = is_isomorphism(a2)
    ck.conclude(lhs == rhs, "alpha2 i-uniform iff alpha2 iso", f"lhs={lhs} rhs={rhs}")
    ck.conclude((not lhs) or rhs, "i-uniform implies iso", f"lhs={lhs} rhs={rhs}")
    ck.conclude((not rhs) or lhs, "iso implies i-uniform", f"lhs={lhs} rhs={rhs}")
    return ck.done()


# -------------------------------------------------------- Lemma:
#                                                           five-parts, five

def _fd_parts(d):
    row1 = [d.horizontal(0, c) for c in range(4)]
    row2 = [d.horizontal(1, c) for c in range(4)]
    verts = [d.vertical(0, c) for c in range(5)]
    return row1, row2, verts


def verify_five_parts(d: Diagram, clause: str) -> Certificate:
    """2x5 diagram with exact rows; the four working clauses behind the Five
    Lemma, each gated on its own hypotheses."""
    _require_grid(d, 2, 5, "five-parts")
    ck = _Check(f"five-parts.{clause}")
    row1, row2, verts = _fd_parts(d)
    gamma, a1, a2, a3, delta = verts
    ok, wit = _row_exact_witness(Sequence("r1", tuple(row1)))
    ck.gate(ok, "first row exact", wit)
    ok, wit = _row_exact_witness(Sequence("r2", tuple(row2)))
    ck.gate(ok, "second row exact", wit)
    c2 = classify(a2)
    if clause == "1a":
        ck.gate(is_surjective(gamma), "gamma surjective", gamma.name)
        ck.gate(is_injective(a1), "alpha1 injective", a1.name)
        ck.gate(classify(a3).semi_mono, "alpha3 semi-mono", a3.name)
        ck.conclude(c2.semi_mono, "alpha2 semi-mono", dict(c2.witnesses).get("semi_mono", "-"))
    elif clause == "1b":
        ck.gate(is_surjective(gamma), "gamma surjective", gamma.name)
        ck.gate(is_cancellative_morphism(row1[1]), "f1 cancellative", row1[1].name)
        ck.gate(is_cancellative_morphism(a2), "alpha2 cancellative", a2.name)
        ck.gate(is_injective(a1), "alpha1 injective", a1.name)
        ck.gate(is_injective(a3), "alpha3 injective", a3.name)
        ck.conclude(c2.injective, "alpha2 injective", dict(c2.witnesses).get("injective", "-"))
    elif clause == "2":
        ck.gate(classify(delta).semi_mono, "delta semi-mono", delta.name)
        ck.gate(is_surjective(a1), "alpha1 surjective", a1.name)
        ck.gate(is_surjective(a3), "alpha3 surjective", a3.name)
        ck.conclude(c2.semi_epi, "alpha2 semi-epi", dict(c2.witnesses).get("semi_epi", "-"))
        if c2.i_uniform:
            ck.conclude(c2.surjective, "alpha2 surjective (i-uniform case)",
                        dict(c2.witnesses).get("surjective", "-"))
    elif clause == "3":
        ck.gate(is_cancellative_morphism(row1[1]), "f1 cancellative", row1[1].name)
        ck.gate(is_cancellative_morphism(a2), "alpha2 cancellative", a2.name)
        ck.gate(is_surjective(gamma), "gamma surjective", gamma.name)
        ck.gate(is_injective(delta), "delta injective", delta.name)
        ck.gate(is_isomorphism(a1), "alpha1 isomorphism", a1.name)
        ck.gate(is_isomorphism(a3), "alpha3 isomorphism", a3.name)
        ck.conclude(c2.injective, "alpha2 injective", dict(c2.witnesses).get("injective", "-"))
        ck.conclude(c2.semi_epi, "alpha2 semi-epi", dict(c2.witnesses).get("semi_epi", "-"))
    else:
        raise StructureError("five-parts: clause must be 1a, 1b, 2 or 3")
    return ck.done()


def verify_five(d: Diagram, clause: int) -> Certificate:
    """The Five Lemma: 2x5 exact rows, surjective left edge, injective right
    edge, cancellative middles."""
    _require_grid(d, 2, 5, "five")
    ck = _Check(f"five.{clause}")
    row1, row2, verts = _fd_parts(d)
    gamma, a1, a2, a3, delta = verts
    ok, wit = _row_exact_witness(Sequence("r1", tuple(row1)))
    ck.gate(ok, "first row exact", wit)
    ok, wit = _row_exact_witness(Sequence("r2", tuple(row2)))
    ck.gate(ok, "second row exact", wit)
    ck.gate(is_surjective(gamma), "gamma surjective", gamma.name)
    ck.gate(is_injective(delta), "delta injective", delta.name)
    ck.gate_cancellative(d.node(0, 2), "M1 cancellative")
    ck.gate_cancellative(d.node(1, 2), "M2 cancellative")
    c2 = classify(a2)
    if clause == 1:
        ck.gate(is_injective(a1), "alpha1 injective", a1.name)
        ck.gate(is_injective(a3), "alpha3 injective", a3.name)
        ck.conclude(c2.injective, "alpha2 injective", dict(c2.witnesses).get("injective", "-"))
    elif clause == 2:
        ck.gate(c2.i_uniform, "alpha2 i-uniform", a2.name)
        ck.gate(is_surjective(a1), "alpha1 surjective", a1.name)
        ck.gate(is_surjective(a3), "alpha3 surjective", a3.name)
        ck.conclude(c2.surjective, "alpha2 surjective", dict(c2.witnesses).get("surjective", "-"))
    elif clause == 3:
        ck.gate(c2.i_uniform, "alpha2 i-uniform", a2.name)
        ck.gate(is_isomorphism(a1), "alpha1 isomorphism", a1.name)
        ck.gate(is_isomorphism(a3), "alpha3 isomorphism", a3.name)
        ck.conclude(is_isomorphism(a2), "alpha2 isomorphism",
                    f"inj={c2.injective} surj={c2.surjective}")
    else:
        raise StructureError("five: clause must be 1, 2 or 3")
    return ck.done()


# ---------------------------------------------------------------- Nine lemma

def _nine_parts(d):
    rows = [[d.horizontal(r, 0), d.horizontal(r, 1)] for r in range(3)]
    alphas = [d.vertical(0, c) for c in range(3)]
    betas = [d.vertical(1, c) for c in range(3)]
    return rows, alphas, betas


def verify_nine_first(d: Diagram, clause: int) -> Certificate:
    """Kernel-side three-by-three lemma: columns exact with zeros on top of
    the middle and right columns, middle row exact."""
    _require_grid(d, 3, 3, "nine-first")
    ck = _Check(f"nine-first.{clause}")
    rows, alphas, betas = _nine_parts(d)
    (f1, g1), (f2, g2), (f3, g3) = rows
    a1, a2, a3 = alphas
    b1, b2, b3 = betas
    ok, wit = _exact_middle(a1, b1)
    ck.gate(ok, "left column exact at middle", wit)
    ck.gate(is_injective(a2), "alpha2 injective", a2.name)
    ok, wit = _exact_middle(a2, b2)
    ck.gate(ok, "middle column exact at middle", wit)
    ck.gate(is_injective(a3), "alpha3 injective", a3.name)
    ok, wit = _exact_middle(a3, b3)
    ck.gate(ok, "right column exact at middle", wit)
    ok, wit = _exact_middle(f2, g2)
    ck.gate(ok, "second row exact", wit)
    if clause == 1:
        ck.gate(is_injective(f3), "f3 injective", f3.name)
        ck.gate(is_cancellative_morphism(f2), "f2 cancellative", f2.name)
        ok, wit = _exact_middle(f1, g1)
        ck.conclude(ok, "first row exact", wit)
    elif clause == 2:
        ck.gate(is_surjective(g2), "g2 surjective", g2.name)
        ck.gate(is_surjective(b1), "beta1 surjective", b1.name)
        ok, wit = _exact_middle(f3, g3)
        ck.gate(ok, "third row exact", wit)
        c = classify(g1)
        ck.conclude(c.semi_epi, "g1 semi-epi", dict(c.witnesses).get("semi_epi", "-"))
        if c.i_uniform:
            ck.conclude(c.surjective, "g1 surjective (i-uniform case)",
                        dict(c.witnesses).get("surjective", "-"))
    else:
        raise StructureError("nine-first: clause must be 1 or 2")
    return ck.done()


def verify_nine_third(d: Diagram, clause: int) -> Certificate:
    """Cokernel-side three-by-three lemma: columns exact with zeros under the
    left and middle columns, middle row exact."""
    _require_grid(d, 3, 3, "nine-third")
    ck = _Check(f"nine-third.{clause}")
    rows, alphas, betas = _nine_parts(d)
    (f1, g1), (f2, g2), (f3, g3) = rows
    a1, a2, a3 = alphas
    b1, b2, b3 = betas
    ok, wit = _exact_middle(a1, b1)
    ck.gate(ok, "left column exact at middle", wit)
    ck.gate(is_surjective(b1), "beta1 surjective", b1.name)
    ok, wit = _exact_middle(a2, b2)
    ck.gate(ok, "middle column exact at middle", wit)
    ck.gate(is_surjective(b2), "beta2 surjective", b2.name)
    ok, wit = _exact_middle(a3, b3)
    ck.gate(ok, "right column exact at middle", wit)
    ok, wit = _exact_middle(f2, g2)
    ck.gate(ok, "second row exact", wit)
    if clause == 1:
        ck.gate(is_surjective(g1), "g1 surjective", g1.name)
        ck.gate(classify(f3).i_uniform, "f3 i-uniform", f3.name)
        ok, wit = _exact_middle(f3, g3)
        ck.conclude(ok, "third row exact", wit)
    elif clause == 2:
        ck.gate(is_injective(f2), "f2 injective", f2.name)
        ck.gate(is_injective(a3), "alpha3 injective", a3.name)
        ck.gate(is_cancellative_morphism(a2), "alpha2 cancellative", a2.name)
        ok, wit = _exact_middle(f1, g1)
        ck.gate(ok, "first row exact", wit)
        ck.conclude(is_injective(f3), "f3 injective", f3.name)
    else:
        raise StructureError("nine-third: clause must be 1 or 2")
    return ck.done()


def _short_exact_row(f, g):
    """f injective, image = kernel, g surjective and k-uniform; (ok, witness)."""
    if not is_injective(f):
        return False, f"{f.name} not injective"
    ok, wit = _exact_middle(f, g)
    if not ok:
        return False, wit
    if not is_surjective(g):
        return False, f"{g.name} not surjective"
    return True, "-"


def verify_nine(d: Diagram, direction: str = "iff") -> Certificate:
    """The Nine Lemma on a 3x3 grid with short exact columns, short exact
    middle row, cancellative center, and i-uniform f3, g1."""
    _require_grid(d, 3, 3, "nine")
    ck = _Check(f"nine.{direction}")
    rows, alphas, betas = _nine_parts(d)
    (f1, g1), (f2, g2), (f3, g3) = rows
    for c in range(3):
        ok, wit = _short_exact_row(alphas[c], betas[c])
        ck.gate(ok, f"column {c} short exact", wit)
    ok, wit = _short_exact_row(f2, g2)
    ck.gate(ok, "second row short exact", wit)
    ck.gate_cancellative(d.node(1, 1), "M2 cancellative")
    ck.gate(classify(f3).i_uniform, "f3 i-uniform", f3.name)
    ck.gate(classify(g1).i_uniform, "g1 i-uniform", g1.name)
    first = _short_exact_row(f1, g1)
    third = _short_exact_row(f3, g3)
    if direction == "first-from-third":
        ck.gate(third[0], "third row short exact", third[1])
        ck.conclude(first[0], "first row short exact", first[1])
    elif direction == "third-from-first":
        ck.gate(first[0], "first row short exact", first[1])
        ck.conclude(third[0], "third row short exact", third[1])
    elif direction == "iff":
        ck.conclude(first[0] == third[0], "first row exact iff third row exact",
                    f"first={first[0]} third={third[0]}")
    else:
        raise StructureError("nine: direction must be first-from-third, "
                             "third-from-first or iff")
    return ck.done()


# --------------------------------------------------------------- Snake lemma

@dataclass(frozen=True)
class SnakeResult:
    diagram_name: str
    f_k: Morphism
    g_k: Morphism
    f_c: Morphism
    g_c: Morphism
    delta: Morphism
    kernel_inclusions: tuple
    cokernels: tuple
    columns_exact: bool  # strong hypothesis (every vertical uniform) held
    cert_induced: Certificate
    cert_kernel_row: object      # Certificate, or None if f1 not cancellative
    cert_cokernel_row: object    # Certificate, or None if f_C not i-uniform
    cert_delta: Certificate
    cert_four_term: object       # Certificate, or None unless applicable

    @property
    def certificates(self):
        return tuple(c for c in (self.cert_induced, self.cert_kernel_row,
                                 self.cert_cokernel_row, self.cert_delta,
                                 self.cert_four_term) if c is not None)

    @property
    def ok(self):
        return all(c.ok for c in self.certificates)


def snake(d: Diagram) -> SnakeResult:
    """Construct the full snake from a 2x3 diagram: top row right-exact,
    bottom row left-exact, weak column hypotheses (outer verticals k-uniform,
    middle vertical uniform).

    The connecting morphism is built by the lifting procedure and validated
    against every admissible lift; its kernel, image and k-uniformity
    certificates follow.
    """
    _require_grid(d, 2, 3, "snake")
    ck = _Check("snake.gates")
    f1, g1 = d.horizontal(0, 0), d.horizontal(0, 1)
    f2, g2 = d.horizontal(1, 0), d.horizontal(1, 1)
    a1, a2, a3 = d.vertical(0, 0), d.vertical(0, 1), d.vertical(0, 2)
    _gate_row_right_exact(ck, f1, g1, "first row")
    _gate_row_left_exact(ck, f2, g2, "second row")
    c1, c2m, c3 = classify(a1), classify(a2), classify(a3)
    ck.gate(c1.k_uniform, "alpha1 k-uniform", a1.name)
    ck.gate(c3.k_uniform, "alpha3 k-uniform", a3.name)
    ck.gate(c2m.uniform, "alpha2 uniform", a2.name)
    columns_exact = c1.uniform and c2m.uniform and c3.uniform

    kmods = []
    kincls = []
    for a in (a1, a2, a3):
        km, ki = kernel_module(a)
        kmods.append(km)
        kincls.append(ki)
    cokers = tuple(cokernel(a) for a in (a1, a2, a3))

    def restrict(f, src_incl, dst_incl, name):
        pos = {m: i for i, m in enumerate(dst_incl.map)}
        table = []
        for parent in src_incl.map:
            v = f.map[parent]
            if v not in pos:
                raise LemmaRefuted(f"snake: {name} does not restrict through the kernels")
            table.append(pos[v])
        return Morphism(name, src_incl.domain, dst_incl.domain, table)

    def descend(f, src_q, dst_q, name):
        table = [None] * src_q.quotient.size
        for x in f.domain.elements():
            c = src_q.projection.map[x]
            v = dst_q.projection.map[f.map[x]]
            if table[c] is None:
                table[c] = v
            elif table[c] != v:
                raise LemmaRefuted(f"snake: {name} is not well-defined on cokernel classes")
        return Morphism(name, src_q.quotient, dst_q.quotient, table)

    f_k = restrict(f1, kincls[0], kincls[1], "f_K")
    g_k = restrict(g1, kincls[1], kincls[2], "g_K")
    f_c = descend(f2, cokers[0], cokers[1], "f_C")
    g_c = descend(g2, cokers[1], cokers[2], "g_C")

    ind = _Check("snake.1")
    ind.conclude(compose(f1, kincls[0]).map == compose(kincls[1], f_k).map,
                 "kernel square over f commutes")
    ind.conclude(compose(g1, kincls[1]).map == compose(kincls[2], g_k).map,
                 "kernel square over g commutes")
    ind.conclude(compose(f_c, cokers[0].projection).map
                 == compose(cokers[1].projection, f2).map,
                 "cokernel square under f commutes")
    ind.conclude(compose(g_c, cokers[1].projection).map
                 == compose(cokers[2].projection, g2).map,
                 "cokernel square under g commutes")
    # uniqueness: forced pointwise by injective inclusions / surjective projections
    ind.conclude(all(is_injective(ki) for ki in kincls), "kernel inclusions injective")
    ind.conclude(all(is_surjective(q.projection) for q in cokers),
                 "cokernel projections surjective")
    cert_induced = ind.done()

    # connecting morphism by exhaustive lifting
    kmod3 = kmods[2]
    delta_table = [None] * kmod3.size
    well_defined = True
    bad_witness = "-"
    for ki, n1 in enumerate(kincls[2].map):
        classes = set()
        for m1 in g1.domain.elements():
            if g1.map[m1] != n1:
                continue
            target = a2.map[m1]
            for l2 in f2.domain.elements():
                if f2.map[l2] == target:
                    classes.add(cokers[0].projection.map[l2])
        if not classes:
            raise LemmaRefuted("snake: no admissible lift; gates should prevent this")
        if len(classes) > 1:
            well_defined = False
            bad_witness = f"kernel element {ki} maps to classes {sorted(classes)}"
        delta_table[ki] = min(classes)
    try:
        delta = Morphism("delta", kmod3, cokers[0].quotient, delta_table)
    except StructureError as exc:
        raise LemmaRefuted(f"snake: connecting map not linear: {exc}") from exc

    cd = _Check("snake.4")
    cd.conclude(well_defined, "delta independent of lift choice", bad_witness)
    ker_delta = kernel_set(delta)
    gk_image = image_set(g_k)
    closure_gk = subtractive_closure_set(kmod3, gk_image)
    cd.conclude(ker_delta == closure_gk, "Ker(delta) = closure(g_K(Ker alpha2))",
                f"ker={sorted(ker_delta)} closure={sorted(closure_gk)}")
    cd.conclude(image_set(delta) == kernel_set(f_c), "delta(Ker alpha3) = Ker(f_C)",
                f"im={sorted(image_set(delta))} ker={sorted(kernel_set(f_c))}")
    k_ok, k_wit = is_k_uniform(delta, witness=True)
    cd.conclude(k_ok, "delta k-uniform", f"pair {k_wit}")
    cert_delta = cd.done()

    cert_kernel_row = None
    if is_cancellative_morphism(f1):
        c = _Check("snake.2")
        ok, wit = _exact_middle(f_k, g_k)
        c.conclude(ok, "kernel row exact at Ker(alpha2)", wit)
        cert_kernel_row = c.done()

    cert_cokernel_row = None
    if classify(f_c).i_uniform:
        c = _Check("snake.3")
        ok, wit = _exact_middle(f_c, g_c)
        c.conclude(ok, "cokernel row exact at Coker(alpha2)", wit)
        cert_cokernel_row = c.done()

    cert_four_term = None
    if is_cancellative_morphism(a2) and classify(g_k).i_uniform:
        c = _Check("snake.5")
        ok, wit = _exact_middle(g_k, delta)
        c.conclude(ok, "four-term sequence exact at Ker(alpha3)", wit)
        ok, wit = _exact_middle(delta, f_c)
        c.conclude(ok, "four-term sequence exact at Coker(alpha1)", wit)
        cert_four_term = c.done()

    return SnakeResult(d.name, f_k, g_k, f_c, g_c, delta, tuple(kincls), cokers,
                       columns_exact, cert_induced, cert_kernel_row,
                       cert_cokernel_row, cert_delta, cert_four_term)
