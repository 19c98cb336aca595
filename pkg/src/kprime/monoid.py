"""Finite pointed monoids given by multiplication tables.

Elements are the integers ``0..n-1``. Index 0 is the absorbing element
``*`` and index 1 is the identity. The one-element zero monoid, where
``* = 1``, is the only exception and has ``one == 0``.
"""

from collections import deque
from itertools import product
from math import lcm
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    BadUnit,
    BadZero,
    NonAssociative,
    NotAutomorphism,
    NotDenominatorSet,
    NotMonoidMap,
    NotPc,
)

STAR = 0


class Decision(NamedTuple):
    """A yes/no answer with an optional counterexample."""

    holds: bool
    witness: Optional[tuple] = None
    note: str = ""

    def __bool__(self):
        return self.holds


class FiniteMonoid:
    """A pointed monoid stored as an ``n x n`` table of indices.

    Construction validates the table unless ``check=False``; use
    :func:`validate_monoid` when you want the specific error class.
    """

    __slots__ = ("mul", "name", "names", "_hash", "_gens")

    def __init__(self, mul, name="A", names=None, check=True):
        self.mul = tuple(tuple(int(v) for v in row) for row in mul)
        self.name = name
        n = len(self.mul)
        if names is not None:
            names = tuple(names)
            if len(names) != n:
                raise ValueError("names must match the number of elements")
        self.names = names
        self._hash = None
        self._gens = None
        if check:
            _check_table(self.mul)

    @property
    def n(self):
        return len(self.mul)

    @property
    def one(self):
        return 1 if len(self.mul) > 1 else 0

    @property
    def star(self):
        return STAR

    @property
    def elements(self):
        return range(len(self.mul))

    def __len__(self):
        return len(self.mul)

    def __call__(self, a, b):
        return self.mul[a][b]

    def power(self, a, k):
        r = self.one
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def label(self, a):
        if self.names is not None:
            return self.names[a]
        return "*" if a == 0 else ("1" if a == self.one else f"e{a}")

    def is_commutative(self):
        m = np.asarray(self.mul)
        return bool((m == m.T).all())

    def generators(self):
        """A small generating set of ``A \\ {*}`` under multiplication."""
        if self._gens is None:
            gens = []
            reached = submonoid_closure(self, [])
            for a in self.elements:
                if a not in reached:
                    gens.append(a)
                    reached = submonoid_closure(self, gens)
            self._gens = tuple(gens)
        return self._gens

    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return self.name == other.name and self.mul == other.mul

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.name, self.mul))
        return self._hash

    def __repr__(self):
        return f"FiniteMonoid({self.name!r}, n={self.n})"


def _check_table(mul):
    n = len(mul)
    if n == 0:
        raise ValueError("a pointed monoid needs at least the element *")
    for i, row in enumerate(mul):
        if len(row) != n:
            raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
        for v in row:
            if not 0 <= v < n:
                raise ValueError(f"entry {v} in row {i} out of range")
    for a in range(n):
        if mul[0][a] != 0 or mul[a][0] != 0:
            raise BadZero(f"* is not absorbing at {a}", witness=(a,))
    one = 1 if n > 1 else 0
    for a in range(n):
        if mul[one][a] != a or mul[a][one] != a:
            raise BadUnit(f"1 is not an identity at {a}", witness=(a,))
    m = np.asarray(mul, dtype=np.intp)
    left = m[m, :]  # left[a, b, c] = (ab)c
    right = m[np.arange(n)[:, None, None], m[None, :, :]]  # a(bc)
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NonAssociative(f"(a b) c != a (b c) for {(a, b, c)}", witness=(a, b, c))


def validate_monoid(table, name="A", names=None):
    """Validate a raw multiplication table and wrap it.

    Raises :class:`BadZero`, :class:`BadUnit` or :class:`NonAssociative`
    with a witness when the table is not a pointed monoid.
    """
    return FiniteMonoid(table, name=name, names=names, check=True)


class MonoidMap:
    __slots__ = ("source", "target", "map")

    def __init__(self, source, target, mapping, check=True):
        self.source = source
        self.target = target
        self.map = tuple(int(v) for v in mapping)
        if check:
            bad = monoid_map_defect(source, target, self.map)
            if bad is not None:
                raise NotMonoidMap(f"not a monoid map: {bad}", witness=bad)

    def __call__(self, a):
        return self.map[a]

    def compose(self, other):
        """``self`` after ``other``."""
        return MonoidMap(other.source, self.target, [self.map[v] for v in other.map], check=False)

    def is_bijective(self):
        return sorted(self.map) == list(range(self.target.n))

    def __repr__(self):
        return f"MonoidMap({self.source.name} -> {self.target.name}, {self.map})"


def monoid_map_defect(source, target, f):
    if len(f) != source.n:
        return ("length",)
    if f[0] != 0:
        return ("star",)
    if f[source.one] != target.one:
        return ("one",)
    for a in source.elements:
        for b in source.elements:
            if f[source.mul[a][b]] != target.mul[f[a]][f[b]]:
                return ("mul", a, b)
    return None


def identity_map(A):
    return MonoidMap(A, A, range(A.n), check=False)


def submonoid_closure(A, gens):
    """Elements reachable from 1 by multiplying by ``gens``, plus ``*``."""
    seen = {0, A.one}
    todo = deque([A.one])
    while todo:
        a = todo.popleft()
        for g in gens:
            for b in (A.mul[g][a], A.mul[a][g]):
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
    return seen


# -- constructors ---------------------------------------------------------


def zero_monoid(name="0"):
    return FiniteMonoid([[0]], name=name, names=["*"])


def f1(name="F1"):
    """The initial pointed monoid ``{*, 1}``."""
    return FiniteMonoid([[0, 0], [0, 1]], name=name, names=["*", "1"])


def _power_name(i):
    return "1" if i == 0 else ("t" if i == 1 else f"t^{i}")


def truncated_polynomial(n, name=None):
    """``N/t^n``: elements ``*, 1, t, ..., t^(n-1)`` with ``t^n = *``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = n + 1

    def idx(i):
        return 0 if i >= n else i + 1

    mul = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            mul[i + 1][j + 1] = idx(i + j)
    names = ["*"] + [_power_name(i) for i in range(n)]
    return FiniteMonoid(mul, name=name or f"N/t^{n}", names=names, check=False)


def cyclic_monoid(index, period, name=None):
    """``{*, 1, t, ..., t^(index+period-1)}`` with ``t^index = t^(index+period)``.

    ``index=0`` gives the pointed cyclic group of order ``period``.
    """
    if index < 0 or period < 1:
        raise ValueError("need index >= 0 and period >= 1")
    count = index + period

    def reduce(i):
        if i < count:
            return i
        return index + (i - index) % period

    mul = [[0] * (count + 1) for _ in range(count + 1)]
    for i in range(count):
        for j in range(count):
            mul[i + 1][j + 1] = reduce(i + j) + 1
    names = ["*"] + [_power_name(i) for i in range(count)]
    return FiniteMonoid(mul, name=name or f"C({index},{period})", names=names, check=False)


def prototype(N, name=None):
    """``{*, 1, t, ..., t^N = t^(N+1)}``."""
    return cyclic_monoid(N, 1, name=name or f"proto{N}")


def group_plus(table, name="G+", names=None):
    """``G_+`` for a group table with identity at index 0."""
    k = len(table)
    mul = [[0] * (k + 1) for _ in range(k + 1)]
    for g in range(k):
        for h in range(k):
            mul[g + 1][h + 1] = table[g][h] + 1
    if names is not None:
        names = ["*"] + list(names)
    return validate_monoid(mul, name=name, names=names)


def cyclic_group_table(k):
    return [[(g + h) % k for h in range(k)] for g in range(k)]


def symmetric_group_table(d):
    """Multiplication table of S_d, identity first; ``(pq)(i) = p(q(i))``."""
    from itertools import permutations

    perms = sorted(permutations(range(d)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[i]] for i in range(d))] for q in perms] for p in perms]


def is_group_table(table):
    k = len(table)
    try:
        group_plus(table)
    except Exception:
        return False
    return all(sorted(row) == list(range(k)) for row in table)


# -- structure ------------------------------------------------------------


def is_pc_monoid(A):
    """Partial cancellation: ``ac = bc != *`` or ``ca = cb != *`` forces ``a = b``.

    Finite monoids are noetherian, so only the cancellation clauses are checked.
    """
    m = np.asarray(A.mul)
    n = A.n
    for c in range(n):
        for side, col in (("right", m[:, c]), ("left", m[c, :])):
            seen = {}
            for a in range(n):
                v = int(col[a])
                if v == 0:
                    continue
                if v in seen:
                    b = seen[v]
                    return Decision(False, (b, a, c), f"{side} cancellation")
                seen[v] = a
    return Decision(True)


def units(A):
    """Indices of the invertible elements, in increasing order."""
    one = A.one
    if A.n == 1:
        return (0,)
    result = []
    for a in A.elements:
        for b in A.elements:
            if A.mul[a][b] == one:
                # finite monoids: a right inverse is two-sided
                assert A.mul[b][a] == one
                result.append(a)
                break
    return tuple(result)


def unit_group(A):
    """``G_+`` for the unit group ``G`` of ``A`` and its inclusion into ``A``."""
    us = units(A)
    if A.n == 1:
        return zero_monoid(), MonoidMap(zero_monoid(), A, [0], check=False)
    elems = (0,) + us
    pos = {a: i for i, a in enumerate(elems)}
    mul = [[pos[A.mul[a][b]] for b in elems] for a in elems]
    names = [A.label(a) for a in elems]
    G = FiniteMonoid(mul, name=f"U({A.name})", names=names)
    return G, MonoidMap(G, A, elems)


class Ideal:
    """A two-sided ideal of a finite monoid (always contains ``*``)."""

    __slots__ = ("parent", "members")

    def __init__(self, parent, members, check=True):
        self.parent = parent
        self.members = frozenset(members) | {0}
        if check and not is_ideal(parent, self.members):
            raise ValueError(f"{sorted(self.members)} is not a two-sided ideal")

    def __contains__(self, a):
        return a in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"Ideal({sorted(self.members)})"


def is_ideal(A, members):
    members = set(members)
    if 0 not in members:
        return False
    for x in members:
        for a in A.elements:
            if A.mul[a][x] not in members or A.mul[x][a] not in members:
                return False
    return True


def ideal_generated(A, gens):
    """The two-sided ideal ``A g A`` generated by ``gens``."""
    members = {0}
    for g in gens:
        for a in A.elements:
            for b in A.elements:
                members.add(A.mul[A.mul[a][g]][b])
    return Ideal(A, members, check=False)


def principal_ideal(A, s):
    """``sA``; two-sided whenever ``s`` generates a denominator set in a commutative monoid."""
    return {A.mul[s][a] for a in A.elements}


def maximal_ideal(A):
    """Non-units together with ``*``; requires a pc monoid."""
    if not is_pc_monoid(A):
        raise NotPc(f"{A.name} is not partially cancellative", witness=is_pc_monoid(A).witness)
    us = set(units(A))
    members = {a for a in A.elements if a not in us} | {0}
    return Ideal(A, members, check=True)


def ideal_product(A, I, J):
    return {A.mul[a][b] for a in I for b in J} | {0}


def finite_length(A):
    """Smallest ``n`` with ``m^n = {*}`` for the maximal ideal ``m``, or None."""
    m = maximal_ideal(A).members
    power = set(m)
    n = 1
    while True:
        if power == {0}:
            return n
        nxt = ideal_product(A, power, m)
        if nxt == power:
            return None
        power = nxt
        n += 1


# -- constructions --------------------------------------------------------


def _relabelled_quotient(A, cls, name):
    """Monoid structure on the classes ``cls[a]`` of a two-sided congruence."""
    order = []
    seen = {}
    for a in [0, A.one] + list(A.elements):
        c = cls[a]
        if c not in seen:
            seen[c] = len(order)
            order.append(a)
    mul = [[seen[cls[A.mul[a][b]]] for b in order] for a in order]
    names = [A.label(a) for a in order]
    Q = FiniteMonoid(mul, name=name, names=names)
    return Q, MonoidMap(A, Q, [seen[cls[a]] for a in A.elements])


def quotient_monoid(A, I, name=None):
    """``A/I``: ``A \\ I`` plus ``*``; products landing in ``I`` become ``*``."""
    members = I.members if isinstance(I, Ideal) else frozenset(I) | {0}
    if not is_ideal(A, members):
        raise ValueError("not a two-sided ideal")
    cls = [0 if a in members else a for a in A.elements]
    return _relabelled_quotient(A, cls, name or f"{A.name}/I")


def congruence_classes(A, pairs):
    """Smallest two-sided congruence containing ``pairs``; returns a class id per element."""
    parent = list(A.elements)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    todo = list(pairs)
    while todo:
        a, b = todo.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[max(ra, rb)] = min(ra, rb)
        for c in A.elements:
            todo.append((A.mul[c][a], A.mul[c][b]))
            todo.append((A.mul[a][c], A.mul[b][c]))
    return [find(a) for a in A.elements]


def power_cycle(A, s):
    """Return ``(index, period)`` of the sequence ``s^0, s^1, ...``."""
    seen = {}
    k = 0
    x = A.one
    while x not in seen:
        seen[x] = k
        x = A.mul[x][s]
        k += 1
    return seen[x], k - seen[x]


def idempotent_power(A, s):
    """The unique idempotent ``s^k`` with ``k >= 1`` in the cycle of powers of ``s``."""
    index, period = power_cycle(A, s)
    k = period * max(1, -(-index // period))
    return A.power(s, k)


def powers(A, s):
    index, period = power_cycle(A, s)
    return [A.power(s, k) for k in range(index + period)]


def check_denominator_set(A, s):
    """Brute-force two-sided Ore and reversibility conditions for ``{s^n}``."""
    S = powers(A, s)
    E = A.elements
    mul = A.mul
    for a in E:
        for u in S:
            if not any(mul[v][a] == mul[b][u] for v in S for b in E):
                return Decision(False, ("left Ore", a, u))
            if not any(mul[a][v] == mul[u][b] for v in S for b in E):
                return Decision(False, ("right Ore", a, u))
    for a in E:
        for b in E:
            for u in S:
                if mul[a][u] == mul[b][u] and not any(mul[v][a] == mul[v][b] for v in S):
                    return Decision(False, ("left reversible", a, b, u))
                if mul[u][a] == mul[u][b] and not any(mul[a][v] == mul[b][v] for v in S):
                    return Decision(False, ("right reversible", a, b, u))
    return Decision(True)


def localize(A, s, name=None):
    """``A[1/s]`` together with the canonical map ``A -> A[1/s]``.

    The powers of ``s`` run into a cycle whose idempotent ``e`` must become
    ``1`` once ``s`` is invertible; conversely identifying ``e`` with ``1``
    makes ``s`` a unit, so the quotient by the congruence generated by
    ``e ~ 1`` has the universal property of the localization.
    """
    dec = check_denominator_set(A, s)
    if not dec:
        raise NotDenominatorSet(f"powers of {s} are not a denominator set", witness=dec.witness)
    e = idempotent_power(A, s)
    cls = congruence_classes(A, [(e, A.one)])
    return _relabelled_quotient(A, cls, name or f"{A.name}[1/{A.label(s)}]")


def smash(A, B, name=None):
    """``A ^ B``: pairs of non-zero elements, with any ``*`` component collapsing to ``*``."""
    pa = [a for a in A.elements if a != 0]
    pb = [b for b in B.elements if b != 0]
    pa.sort(key=lambda a: a != A.one)
    pb.sort(key=lambda b: b != B.one)
    pairs = [(a, b) for a in pa for b in pb]
    pos = {p: i + 1 for i, p in enumerate(pairs)}
    n = len(pairs) + 1
    mul = [[0] * n for _ in range(n)]
    for (a, b), i in pos.items():
        for (c, d), j in pos.items():
            ac, bd = A.mul[a][c], B.mul[b][d]
            mul[i][j] = 0 if ac == 0 or bd == 0 else pos[(ac, bd)]
    names = ["*"] + [f"({A.label(a)},{B.label(b)})" for a, b in pairs]
    return FiniteMonoid(mul, name=name or f"{A.name}^{B.name}", names=names)


def is_automorphism(A, phi):
    return monoid_map_defect(A, A, phi) is None and sorted(phi) == list(A.elements)


def twisted_truncated_extension(A, phi, k, name=None):
    """Elements ``a t^i`` (``0 <= i < k``) with ``t a = phi(a) t`` and ``t^k = *``."""
    f = tuple(phi.map if isinstance(phi, MonoidMap) else phi)
    if not is_automorphism(A, f):
        raise NotAutomorphism("phi is not an automorphism", witness=f)
    if k < 1:
        raise ValueError("k must be >= 1")
    iters = [tuple(A.elements)]
    for _ in range(k):
        prev = iters[-1]
        iters.append(tuple(f[prev[a]] for a in A.elements))
    pa = [a for a in A.elements if a != 0]
    pa.sort(key=lambda a: a != A.one)
    elems = [(a, i) for i in range(k) for a in pa]
    pos = {p: j + 1 for j, p in enumerate(elems)}
    n = len(elems) + 1
    mul = [[0] * n for _ in range(n)]
    for (a, i), x in pos.items():
        for (b, j), y in pos.items():
            if i + j >= k:
                continue
            c = A.mul[a][iters[i][b]]
            if c != 0:
                mul[x][y] = pos[(c, i + j)]
    names = ["*"] + [A.label(a) + ("" if i == 0 else f"t^{i}") for a, i in elems]
    return FiniteMonoid(mul, name=name or f"{A.name}x|t^{k}", names=names)


# -- isomorphism ----------------------------------------------------------


def _words(A):
    """BFS tree from 1 under left multiplication by generators: ``a = g * parent``."""
    gens = A.generators()
    parent = {A.one: None}
    order = [A.one]
    todo = deque([A.one])
    while todo:
        a = todo.popleft()
        for g in gens:
            b = A.mul[g][a]
            if b not in parent:
                parent[b] = (g, a)
                order.append(b)
                todo.append(b)
    return gens, parent, order


def find_isomorphism(A, B):
    """A monoid isomorphism ``A -> B`` as an index tuple, or None."""
    if A.n != B.n:
        return None
    if A.n == 1:
        return (0,)
    gens, parent, order = _words(A)
    targets = [b for b in B.elements if b not in (0, B.one)]
    for images in product(targets, repeat=len(gens)):
        g_img = dict(zip(gens, images))
        f = [None] * A.n
        f[0] = 0
        f[A.one] = B.one
        for a in order[1:]:
            g, p = parent[a]
            f[a] = B.mul[g_img[g]][f[p]]
        if None in f or len(set(f)) != A.n:
            continue
        if monoid_map_defect(A, B, f) is None:
            return tuple(f)
    return None


def is_isomorphic(A, B):
    return find_isomorphism(A, B) is not None


def monoid_maps(A, B):
    """All monoid maps ``A -> B`` (generator images extended along words)."""
    gens, parent, order = _words(A)
    out = []
    for images in product(list(B.elements), repeat=len(gens)):
        g_img = dict(zip(gens, images))
        f = [None] * A.n
        f[0] = 0
        f[A.one] = B.one
        for a in order[1:]:
            g, p = parent[a]
            f[a] = B.mul[g_img[g]][f[p]]
        if None in f:
            continue
        if monoid_map_defect(A, B, f) is None:
            out.append(tuple(f))
    return out


def loop_monoid_for(preperiod, cycle_lengths):
    """The cyclic monoid ``t^N = t^(N+L)`` acting on a functional graph with the given shape."""
    N = max(1, preperiod)
    L = lcm(*cycle_lengths) if cycle_lengths else 1
    return cyclic_monoid(N, L)
