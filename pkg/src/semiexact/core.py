"""Finite semirings and semimodules as dense operation tables.

Elements are indices 0..n-1. Index 0 is the additive zero in every
structure this package builds itself; hand-written inputs may declare a
different zero and validation is relative to the declared constants.
All tables are row-major tuples, so every structure is immutable,
hashable and safe to share.

Validation reports every violated law (one witness each) instead of
stopping at the first: fixtures are authored by hand and full reports
make table typos obvious.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ParameterError, StructureError


def freeze_table(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


def _check_table(table, nrows, ncols, vmax, what):
    if len(table) != nrows:
        raise StructureError(f"{what}: expected {nrows} rows, got {len(table)}")
    for i, row in enumerate(table):
        if len(row) != ncols:
            raise StructureError(f"{what}: row {i} has {len(row)} entries, expected {ncols}")
        for x in row:
            if not 0 <= x < vmax:
                raise StructureError(f"{what}: entry {x} in row {i} out of range 0..{vmax - 1}")


@dataclass(frozen=True)
class Violation:
    law: str
    witness: str

    def __str__(self):
        return f"{self.law} [{self.witness}]"


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    violations: tuple

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        if self.ok:
            return f"{self.subject}: ok"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


@dataclass(frozen=True)
class Semiring:
    """(S, +, *, 0, 1) with dense addition and multiplication tables."""

    name: str
    size: int
    add: tuple
    mul: tuple
    zero: int = 0
    one: int = 1

    def __post_init__(self):
        object.__setattr__(self, "add", freeze_table(self.add))
        object.__setattr__(self, "mul", freeze_table(self.mul))
        if self.size < 1:
            raise StructureError(f"semiring {self.name}: size must be >= 1")
        _check_table(self.add, self.size, self.size, self.size, f"semiring {self.name} add")
        _check_table(self.mul, self.size, self.size, self.size, f"semiring {self.name} mul")
        for c in (self.zero, self.one):
            if not 0 <= c < self.size:
                raise StructureError(f"semiring {self.name}: constant {c} out of range")

    def __repr__(self):
        return f"Semiring({self.name!r}, size={self.size})"


@dataclass(frozen=True)
class Semimodule:
    """Right semimodule: commutative monoid plus a right action table.

    action[m][s] is m acted on by semiring element s.
    """

    name: str
    semiring: Semiring
    size: int
    add: tuple
    action: tuple
    zero: int = 0

    def __post_init__(self):
        object.__setattr__(self, "add", freeze_table(self.add))
        object.__setattr__(self, "action", freeze_table(self.action))
        if self.size < 1:
            raise StructureError(f"module {self.name}: size must be >= 1")
        _check_table(self.add, self.size, self.size, self.size, f"module {self.name} add")
        _check_table(self.action, self.size, self.semiring.size, self.size,
                      f"module {self.name} action")
        if not 0 <= self.zero < self.size:
            raise StructureError(f"module {self.name}: zero {self.zero} out of range")

    def __repr__(self):
        return f"Semimodule({self.name!r}, size={self.size}, over={self.semiring.name!r})"

    def elements(self):
        return range(self.size)


@dataclass(frozen=True)
class Subsemimodule:
    """Subset of a module carrier closed under + and the action."""

    parent: Semimodule
    members: tuple

    def __post_init__(self):
        members = tuple(sorted(set(int(m) for m in self.members)))
        object.__setattr__(self, "members", members)
        M = self.parent
        if not members:
            raise StructureError(f"subsemimodule of {M.name}: empty member list")
        for m in members:
            if not 0 <= m < M.size:
                raise StructureError(f"subsemimodule of {M.name}: member {m} out of range")
        if M.zero not in members:
            raise StructureError(f"subsemimodule of {M.name}: missing zero {M.zero}")
        inside = set(members)
        for a in members:
            for b in members:
                if M.add[a][b] not in inside:
                    raise StructureError(
                        f"subsemimodule of {M.name}: not closed under add ({a}+{b}={M.add[a][b]})")
            for s in range(M.semiring.size):
                if M.action[a][s] not in inside:
                    raise StructureError(
                        f"subsemimodule of {M.name}: not closed under action ({a}.{s}={M.action[a][s]})")

    def __repr__(self):
        return f"Subsemimodule({self.parent.name!r}, {{{','.join(map(str, self.members))}}})"


@dataclass(frozen=True)
class Element:
    module: Semimodule
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.module.size:
            raise StructureError(f"element {self.index} out of range in {self.module.name}")


def _witness(**kv):
    return ",".join(f"{k}={v}" for k, v in kv.items())


def _monoid_violations(size, add, zero, label):
    """Commutative-monoid laws with one witness per violated law."""
    found = []
    rng = range(size)
    for a in rng:
        for b in rng:
            if add[a][b] != add[b][a]:
                found.append(Violation(f"{label} addition not commutative", _witness(a=a, b=b)))
                break
        else:
            continue
        break
    done = False
    for a in rng:
        for b in rng:
            for c in rng:
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    found.append(Violation(f"{label} addition not associative",
                                           _witness(a=a, b=b, c=c)))
                    done = True
                    break
            if done:
                break
        if done:
            break
    for a in rng:
        if add[a][zero] != a or add[zero][a] != a:
            found.append(Violation(f"{label} zero not neutral for addition", _witness(a=a)))
            break
    return found


def validate_semiring(s: Semiring) -> ValidationReport:
    """Check every semiring law, returning all violated laws with witnesses."""
    found = list(_monoid_violations(s.size, s.add, s.zero, "semiring"))
    rng = range(s.size)
    done = False
    for a in rng:
        for b in rng:
            for c in rng:
                if s.mul[s.mul[a][b]][c] != s.mul[a][s.mul[b][c]]:
                    found.append(Violation("multiplication not associative",
                                           _witness(a=a, b=b, c=c)))
                    done = True
                    break
            if done:
                break
        if done:
            break
    for a in rng:
        if s.mul[a][s.one] != a or s.mul[s.one][a] != a:
            found.append(Violation("one not neutral for multiplication", _witness(a=a)))
            break
    done = False
    for a in rng:
        for b in rng:
            for c in rng:
                if s.mul[a][s.add[b][c]] != s.add[s.mul[a][b]][s.mul[a][c]]:
                    found.append(Violation("left distributivity fails", _witness(a=a, b=b, c=c)))
                    done = True
                    break
            if done:
                break
        if done:
            break
    done = False
    for a in rng:
        for b in rng:
            for c in rng:
                if s.mul[s.add[b][c]][a] != s.add[s.mul[b][a]][s.mul[c][a]]:
                    found.append(Violation("right distributivity fails", _witness(a=a, b=b, c=c)))
                    done = True
                    break
            if done:
                break
        if done:
            break
    for a in rng:
        if s.mul[s.zero][a] != s.zero or s.mul[a][s.zero] != s.zero:
            found.append(Violation("zero not absorbing", _witness(a=a)))
            break
    if s.zero == s.one:
        found.append(Violation("zero equals one", _witness(zero=s.zero)))
    return ValidationReport(f"semiring {s.name}", tuple(found))


def validate_semimodule(m: Semimodule) -> ValidationReport:
    """Check every right-semimodule law over the module's semiring."""
    s = m.semiring
    found = list(_monoid_violations(m.size, m.add, m.zero, "module"))
    mrng = range(m.size)
    srng = range(s.size)
    done = False
    for a in mrng:
        for x in srng:
            for y in srng:
                if m.action[m.action[a][x]][y] != m.action[a][s.mul[x][y]]:
                    found.append(Violation("(ms)s' != m(ss')", _witness(m=a, s=x, t=y)))
                    done = True
                    break
            if done:
                break
        if done:
            break
    done = False
    for a in mrng:
        for b in mrng:
            for x in srng:
                if m.action[m.add[a][b]][x] != m.add[m.action[a][x]][m.action[b][x]]:
                    found.append(Violation("(m+m')s != ms+m's", _witness(m=a, n=b, s=x)))
                    done = True
                    break
            if done:
                break
        if done:
            break
    done = False
    for a in mrng:
        for x in srng:
            for y in srng:
                if m.action[a][s.add[x][y]] != m.add[m.action[a][x]][m.action[a][y]]:
                    found.append(Violation("m(s+s') != ms+ms'", _witness(m=a, s=x, t=y)))
                    done = True
                    break
            if done:
                break
        if done:
            break
    for a in mrng:
        if m.action[a][s.one] != a:
            found.append(Violation("m.1 != m", _witness(m=a)))
            break
    for a in mrng:
        if m.action[a][s.zero] != m.zero:
            found.append(Violation("m.0_S != 0_M", _witness(m=a)))
            break
    for x in srng:
        if m.action[m.zero][x] != m.zero:
            found.append(Violation("0_M.s != 0_M", _witness(s=x)))
            break
    return ValidationReport(f"module {m.name}", tuple(found))


def is_cancellable(el: Element) -> bool:
    """True iff el + x = el + y forces x = y."""
    M = el.module
    seen = {}
    for x in M.elements():
        v = M.add[el.index][x]
        if v in seen:
            return False
        seen[v] = x
    return True


def is_cancellative_module(M: Semimodule) -> bool:
    return all(is_cancellable(Element(M, m)) for m in M.elements())


def subtractive_closure_set(M: Semimodule, members) -> frozenset:
    """{m | m + x1 = x2 for some x1, x2 in members}, as a plain set."""
    inside = set(members)
    out = set()
    for m in M.elements():
        if any(M.add[m][x1] in inside for x1 in inside):
            out.add(m)
    return frozenset(out)


def subtractive_closure(X: Subsemimodule) -> Subsemimodule:
    return Subsemimodule(X.parent, tuple(sorted(subtractive_closure_set(X.parent, X.members))))


def is_subtractive(X: Subsemimodule) -> bool:
    return set(X.members) == subtractive_closure_set(X.parent, X.members)


def generated_subsemimodule(M: Semimodule, seeds) -> Subsemimodule:
    """Smallest subsemimodule of M containing the seed elements."""
    inside = {M.zero} | set(seeds)
    frontier = list(inside)
    while frontier:
        a = frontier.pop()
        for b in list(inside):
            c = M.add[a][b]
            if c not in inside:
                inside.add(c)
                frontier.append(c)
        for s in range(M.semiring.size):
            c = M.action[a][s]
            if c not in inside:
                inside.add(c)
                frontier.append(c)
    return Subsemimodule(M, tuple(sorted(inside)))


def all_subsemimodules(M: Semimodule):
    """Every subsemimodule, ordered by (size, members)."""
    from itertools import combinations

    rest = [m for m in M.elements() if m != M.zero]
    out = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            members = {M.zero, *extra}
            if all(M.add[a][b] in members for a in members for b in members) and \
               all(M.action[a][s] in members for a in members for s in range(M.semiring.size)):
                out.append(Subsemimodule(M, tuple(sorted(members))))
    out.sort(key=lambda X: (len(X.members), X.members))
    return out


# ---------------------------------------------------------------- builders

def _built(s: Semiring) -> Semiring:
    report = validate_semiring(s)
    assert report.ok, f"builder produced an invalid semiring:\n{report}"
    return s


@lru_cache(maxsize=None)
def make_boolean() -> Semiring:
    """Two-element lattice: OR as addition, AND as multiplication."""
    return _built(Semiring("B", 2, ((0, 1), (1, 1)), ((0, 0), (0, 1))))


@lru_cache(maxsize=None)
def make_zmod(n: int) -> Semiring:
    """The ring of integers mod n presented as tables."""
    if n < 2:
        raise ParameterError("make_zmod: n must be >= 2")
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return _built(Semiring(f"Z{n}", n, add, mul))


@lru_cache(maxsize=None)
def make_saturating_naturals(k: int) -> Semiring:
    """T_k: carrier 0..k with addition and multiplication clamped at k."""
    if k < 1:
        raise ParameterError("make_saturating_naturals: k must be >= 1")
    n = k + 1
    add = [[min(a + b, k) for b in range(n)] for a in range(n)]
    mul = [[min(a * b, k) for b in range(n)] for a in range(n)]
    return _built(Semiring(f"T{k}", n, add, mul))


@lru_cache(maxsize=None)
def make_truncated_minplus(k: int) -> Semiring:
    """Min-plus on 0..k with a top element.

    Index 0 is top (the min-neutral, hence the additive zero); index i >= 1
    carries the value i-1. Addition is min, multiplication is value addition
    clamped at k, with top absorbing.
    """
    if k < 1:
        raise ParameterError("make_truncated_minplus: k must be >= 1")
    n = k + 2
    top = 0

    def val(i):
        return i - 1

    def idx(v):
        return v + 1

    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a == top:
                add[a][b] = b
            elif b == top:
                add[a][b] = a
            else:
                add[a][b] = idx(min(val(a), val(b)))
            if a == top or b == top:
                mul[a][b] = top
            else:
                mul[a][b] = idx(min(val(a) + val(b), k))
    return _built(Semiring(f"minplus{k}", n, add, mul, zero=top, one=idx(0)))


@lru_cache(maxsize=None)
def make_product(s1: Semiring, s2: Semiring) -> Semiring:
    """Componentwise product semiring on lexicographically indexed pairs."""
    n1, n2 = s1.size, s2.size

    def pack(a, b):
        return a * n2 + b

    n = n1 * n2
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for a1 in range(n1):
        for a2 in range(n2):
            for b1 in range(n1):
                for b2 in range(n2):
                    i, j = pack(a1, a2), pack(b1, b2)
                    add[i][j] = pack(s1.add[a1][b1], s2.add[a2][b2])
                    mul[i][j] = pack(s1.mul[a1][b1], s2.mul[a2][b2])
    return _built(Semiring(f"{s1.name}x{s2.name}", n, add, mul,
                           zero=pack(s1.zero, s2.zero), one=pack(s1.one, s2.one)))


@lru_cache(maxsize=None)
def make_natural_quotient(index: int, period: int) -> Semiring:
    """Quotient of the natural numbers by identifying index with index+period.

    Carrier 0..index+period-1 with clock arithmetic past the index.
    make_natural_quotient(0, n) is the ring Z/n; make_natural_quotient(k, 1)
    is the saturating semiring T_k.
    """
    if index < 0 or period < 1 or index + period < 2:
        raise ParameterError("make_natural_quotient: need index >= 0, period >= 1, size >= 2")
    n = index + period

    def rep(x):
        return x if x < n else index + (x - index) % period

    add = [[rep(a + b) for b in range(n)] for a in range(n)]
    mul = [[rep(a * b) for b in range(n)] for a in range(n)]
    return _built(Semiring(f"N{index}_{period}", n, add, mul))


@lru_cache(maxsize=None)
def monoid_semiring(max_size: int) -> Semiring:
    """Smallest natural-quotient semiring acting on every commutative monoid
    with at most max_size elements (index max_size, period lcm(1..max_size))."""
    if max_size < 1:
        raise ParameterError("monoid_semiring: max_size must be >= 1")
    return make_natural_quotient(max_size, math.lcm(*range(1, max_size + 1)))


def natural_action(semiring: Semiring, add, zero=0):
    """Action forced by repeated addition, for semirings additively generated by 1.

    Returns the action table, or None when 1 does not additively generate
    the semiring (then actions are genuinely free choices).
    """
    reach = {semiring.zero: 0}
    x, j = semiring.zero, 0
    while True:
        x = semiring.add[x][semiring.one]
        j += 1
        if x in reach:
            break
        reach[x] = j
    if len(reach) != semiring.size:
        return None
    n = len(add)
    action = [[0] * semiring.size for _ in range(n)]
    for m in range(n):
        folds = [zero]
        for _ in range(max(reach.values())):
            folds.append(add[folds[-1]][m])
        for s, j in reach.items():
            action[m][s] = folds[j]
    return freeze_table(action)


def module_from_monoid(add, name, semiring=None) -> Semimodule:
    """Wrap a commutative-monoid table as a module with the repeated-addition
    action; the default semiring is monoid_semiring(len(add))."""
    if semiring is None:
        semiring = monoid_semiring(len(add))
    action = natural_action(semiring, add)
    if action is None:
        raise StructureError(
            f"module {name}: semiring {semiring.name} is not additively generated by 1")
    return Semimodule(name, semiring, len(add), freeze_table(add), action)


def self_module(s: Semiring) -> Semimodule:
    """A semiring as a right module over itself (action = multiplication)."""
    return Semimodule(s.name, s, s.size, s.add, s.mul, zero=s.zero)


@lru_cache(maxsize=None)
def zero_module(s: Semiring) -> Semimodule:
    """The one-element module over s, cached per semiring."""
    return Semimodule("0", s, 1, ((0,),), tuple((0,) * s.size for _ in range(1)))
