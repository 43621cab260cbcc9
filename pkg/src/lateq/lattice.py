"""Finite posets and lattices.

Elements are opaque hashable ids (strings, ints, fractions, tuples for
products).  Internally every structure works on dense indices into
``elements``; the order is stored as a full boolean matrix and lattices carry
precomputed meet/join tables, so all later checks are table lookups.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Hashable, Iterable, Sequence

from .errors import EmptyFactorList, NotALattice, NotAPoset


@dataclass(frozen=True)
class Verdict:
    """Outcome of a property check.

    ``witness`` is present whenever ``holds`` is false and names the
    quantified variables at which the definition breaks; ``clause`` says which
    part of a multi-clause definition was violated.
    """

    holds: bool
    witness: tuple | None = None
    clause: str | None = None
    detail: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.holds


HOLDS = Verdict(True)


class FinitePoset:
    """A finite partially ordered set given by its full order relation."""

    def __init__(self, elements: Iterable[Hashable], leq: Sequence[Sequence[bool]],
                 *, validate: bool = True):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate element ids")
        self._leq = tuple(tuple(bool(v) for v in row) for row in leq)
        n = len(self.elements)
        if len(self._leq) != n or any(len(row) != n for row in self._leq):
            raise ValueError("order matrix shape does not match the element list")
        if validate:
            self._check_axioms()

    @classmethod
    def from_relation(cls, elements, pairs):
        """Build from a list of pairs ``(a, b)`` meaning ``a <= b``.

        The diagonal is added; antisymmetry and transitivity are validated,
        not repaired.
        """
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        m = [[i == j for j in range(n)] for i in range(n)]
        for a, b in pairs:
            m[_lookup(idx, a)][_lookup(idx, b)] = True
        return cls(elements, m)

    @classmethod
    def from_covers(cls, elements, covers):
        """Build from covering pairs; the reflexive-transitive closure is taken."""
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        m = [[i == j for j in range(n)] for i in range(n)]
        for a, b in covers:
            m[_lookup(idx, a)][_lookup(idx, b)] = True
        for k in range(n):
            mk = m[k]
            for i in range(n):
                if m[i][k]:
                    mi = m[i]
                    for j in range(n):
                        if mk[j]:
                            mi[j] = True
        return cls(elements, m)

    def _check_axioms(self):
        le = self._leq
        n = len(le)
        el = self.elements
        for i in range(n):
            if not le[i][i]:
                raise NotAPoset("reflexive", (el[i], el[i]))
        for i in range(n):
            for j in range(i + 1, n):
                if le[i][j] and le[j][i]:
                    raise NotAPoset("antisymmetric", (el[i], el[j]))
        for i in range(n):
            for j in range(n):
                if le[i][j]:
                    for k in range(n):
                        if le[j][k] and not le[i][k]:
                            raise NotAPoset("transitive", (el[i], el[k]))

    # -- container protocol -------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and self.leq_matrix == other.leq_matrix

    def __hash__(self):
        return hash((self.elements, self.leq_matrix))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.elements)!r})"

    # -- order queries --------------------------------------------------------

    @property
    def leq_matrix(self):
        return self._leq

    def leq_idx(self, i: int, j: int) -> bool:
        return self._leq[i][j]

    def leq(self, a, b) -> bool:
        return self.leq_idx(self.index[a], self.index[b])

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    @cached_property
    def strict_pairs(self) -> tuple[tuple[int, int], ...]:
        """All index pairs ``(i, j)`` with ``elements[i] < elements[j]``."""
        n = len(self.elements)
        return tuple((i, j) for i in range(n) for j in range(n)
                     if i != j and self.leq_idx(i, j))

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Indices in a topological order of the order, ties by element position."""
        n = len(self.elements)
        indeg = [0] * n
        for i, j in self.strict_pairs:
            indeg[j] += 1
        succ = [[] for _ in range(n)]
        for i, j in self.strict_pairs:
            succ[i].append(j)
        heap = [i for i in range(n) if indeg[i] == 0]
        heapq.heapify(heap)
        out = []
        while heap:
            i = heapq.heappop(heap)
            out.append(i)
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, j)
        return tuple(out)

    def is_chain(self) -> bool:
        n = len(self.elements)
        return all(self.leq_idx(i, j) or self.leq_idx(j, i)
                   for i in range(n) for j in range(i + 1, n))

    @cached_property
    def height(self) -> int:
        """Number of strict steps in a longest chain (0 for an antichain)."""
        longest = [0] * len(self.elements)
        for j in self.linear_extension:
            for i in range(len(self.elements)):
                if i != j and self.leq_idx(i, j):
                    longest[j] = max(longest[j], longest[i] + 1)
        return max(longest, default=0)

    def maximal(self, members: Iterable) -> list:
        ms = list(members)
        return [x for x in ms if not any(y != x and self.leq(x, y) for y in ms)]

    def minimal(self, members: Iterable) -> list:
        ms = list(members)
        return [x for x in ms if not any(y != x and self.leq(y, x) for y in ms)]

    def opposite(self) -> FinitePoset:
        n = len(self.elements)
        m = [[self.leq_idx(j, i) for j in range(n)] for i in range(n)]
        return FinitePoset(self.elements, m, validate=False)


class FiniteLattice(FinitePoset):
    """A finite lattice with meet/join tables over element indices.

    Use :func:`validate_lattice` to build one from a poset; the constructor
    trusts the tables it is handed.
    """

    def __init__(self, elements, leq, meet_table, join_table, *, validate=False):
        super().__init__(elements, leq, validate=validate)
        self.meet_table = tuple(tuple(row) for row in meet_table)
        self.join_table = tuple(tuple(row) for row in join_table)

    def meet(self, a, b):
        return self.elements[self.meet_table[self.index[a]][self.index[b]]]

    def join(self, a, b):
        return self.elements[self.join_table[self.index[a]][self.index[b]]]

    def meet_idx(self, i, j):
        return self.meet_table[i][j]

    def join_idx(self, i, j):
        return self.join_table[i][j]

    @cached_property
    def bottom(self):
        b = 0
        for i in range(1, len(self.elements)):
            b = self.meet_idx(b, i)
        return self.elements[b]

    @cached_property
    def top(self):
        t = 0
        for i in range(1, len(self.elements)):
            t = self.join_idx(t, i)
        return self.elements[t]

    def meet_all(self, members: Iterable):
        ms = [self.index[x] for x in members]
        if not ms:
            return self.top
        acc = ms[0]
        for i in ms[1:]:
            acc = self.meet_idx(acc, i)
        return self.elements[acc]

    def join_all(self, members: Iterable):
        ms = [self.index[x] for x in members]
        if not ms:
            return self.bottom
        acc = ms[0]
        for i in ms[1:]:
            acc = self.join_idx(acc, i)
        return self.elements[acc]

    def opposite(self) -> FiniteLattice:
        cached = getattr(self, "_opposite", None)
        if cached is not None:
            return cached
        n = len(self.elements)
        m = [[self.leq_idx(j, i) for j in range(n)] for i in range(n)]
        op = FiniteLattice(self.elements, m, self.join_table, self.meet_table)
        op._opposite = self
        self._opposite = op
        return op


class ProductLattice(FiniteLattice):
    """Cartesian product with componentwise order.

    Element ids are tuples of factor ids.  Order, meet and join are evaluated
    componentwise on demand; the full tables materialise only when asked for,
    since joint strategy spaces are often only probed at a few pairs.
    """

    def __init__(self, factors: Sequence[FiniteLattice]):
        self.factors = tuple(factors)
        self._digits = tuple(itertools.product(*(range(len(f)) for f in self.factors)))
        self.elements = tuple(tuple(f.elements[d] for f, d in zip(self.factors, ds))
                              for ds in self._digits)
        self.index = {e: i for i, e in enumerate(self.elements)}
        radix = []
        acc = 1
        for f in reversed(self.factors):
            radix.append(acc)
            acc *= len(f)
        self._radix = tuple(reversed(radix))

    def _encode(self, ds):
        return sum(d * r for d, r in zip(ds, self._radix))

    def leq_idx(self, i, j):
        return all(f._leq[a][b] for f, a, b in zip(self.factors, self._digits[i], self._digits[j]))

    def meet_idx(self, i, j):
        return self._encode([f.meet_table[a][b] for f, a, b in
                             zip(self.factors, self._digits[i], self._digits[j])])

    def join_idx(self, i, j):
        return self._encode([f.join_table[a][b] for f, a, b in
                             zip(self.factors, self._digits[i], self._digits[j])])

    @cached_property
    def _leq(self):
        n = len(self.elements)
        return tuple(tuple(self.leq_idx(i, j) for j in range(n)) for i in range(n))

    @cached_property
    def meet_table(self):
        n = len(self.elements)
        return tuple(tuple(self.meet_idx(i, j) for j in range(n)) for i in range(n))

    @cached_property
    def join_table(self):
        n = len(self.elements)
        return tuple(tuple(self.join_idx(i, j) for j in range(n)) for i in range(n))

    @cached_property
    def bottom(self):
        return tuple(f.bottom for f in self.factors)

    @cached_property
    def top(self):
        return tuple(f.top for f in self.factors)

    def opposite(self):
        return FiniteLattice.opposite(self)


def _lookup(idx, a):
    try:
        return idx[a]
    except KeyError:
        raise ValueError(f"unknown element {a!r}") from None


def validate_lattice(poset: FinitePoset) -> FiniteLattice:
    """Check that every pair has a glb and a lub; return the lattice with tables.

    Raises NotALattice naming the first pair (in element order) without a
    meet or without a join.
    """
    le = poset.leq_matrix
    n = len(le)
    el = poset.elements
    if n == 0:
        raise NotALattice("elements", ())
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lower = [z for z in range(n) if le[z][i] and le[z][j]]
            glb = [z for z in lower if all(le[w][z] for w in lower)]
            if not glb:
                raise NotALattice("meet", (el[i], el[j]))
            upper = [z for z in range(n) if le[i][z] and le[j][z]]
            lub = [z for z in upper if all(le[z][w] for w in upper)]
            if not lub:
                raise NotALattice("join", (el[i], el[j]))
            meet[i][j] = meet[j][i] = glb[0]
            join[i][j] = join[j][i] = lub[0]
    return FiniteLattice(el, le, meet, join)


def product(factors: Sequence[FiniteLattice]) -> ProductLattice:
    factors = list(factors)
    if not factors:
        raise EmptyFactorList("product of zero lattices")
    return ProductLattice(factors)


def opposite(lattice: FinitePoset) -> FinitePoset:
    return lattice.opposite()


# -- named lattices ------------------------------------------------------------

def chain(values: int | Sequence[Hashable]) -> FiniteLattice:
    """Chain on ``range(values)`` or on the given ids in increasing order."""
    vals = tuple(range(values)) if isinstance(values, int) else tuple(values)
    n = len(vals)
    leq = [[i <= j for j in range(n)] for i in range(n)]
    meet = [[min(i, j) for j in range(n)] for i in range(n)]
    join = [[max(i, j) for j in range(n)] for i in range(n)]
    return FiniteLattice(vals, leq, meet, join)


def grid(k: int) -> FiniteLattice:
    """The chain ``{0, 1/k, ..., 1}`` with Fraction ids."""
    return chain([Fraction(i, k) for i in range(k + 1)])


def diamond() -> FiniteLattice:
    """``{0, a, b, 1}`` with ``a``, ``b`` incomparable."""
    return validate_lattice(FinitePoset.from_covers(
        ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]))


def pentagon() -> FiniteLattice:
    """N5: ``0 < a < c < 1`` and ``0 < b < 1`` with ``b`` incomparable to ``a``, ``c``."""
    return validate_lattice(FinitePoset.from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")]))


def m3() -> FiniteLattice:
    """M3: three pairwise incomparable atoms between 0 and 1."""
    return validate_lattice(FinitePoset.from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]))


def boolean_lattice(n: int) -> ProductLattice:
    return product([chain(2)] * n)


@lru_cache(maxsize=None)
def all_lattices(max_size: int) -> tuple[FiniteLattice, ...]:
    """Every lattice with at most ``max_size`` elements, one per isomorphism class.

    Elements are ``0..n-1`` with bottom ``0`` and top ``n-1``.  Sizes up to 6
    enumerate in well under a second.
    """
    out = []
    for n in range(1, max_size + 1):
        if n <= 2:
            out.append(chain(n))
            continue
        k = n - 2
        mid_pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
        seen = set()
        for bits in range(1 << len(mid_pairs)):
            rel = {mid_pairs[b] for b in range(len(mid_pairs)) if bits >> b & 1}
            if not _is_strict_order(rel):
                continue
            canon = min(tuple(sorted((p[i], p[j]) for i, j in rel))
                        for p in itertools.permutations(range(k)))
            if canon in seen:
                continue
            seen.add(canon)
            leq = [[False] * n for _ in range(n)]
            for i in range(n):
                leq[0][i] = leq[i][n - 1] = leq[i][i] = True
            for i, j in canon:
                leq[i + 1][j + 1] = True
            try:
                out.append(validate_lattice(FinitePoset(range(n), leq, validate=False)))
            except NotALattice:
                pass
    return tuple(out)


def _is_strict_order(rel):
    for i, j in rel:
        if (j, i) in rel:
            return False
        for a, b in rel:
            if a == j and (i, b) not in rel:
                return False
    return True


# -- subsets ----------------------------------------------------------------

@dataclass(frozen=True)
class Subset:
    carrier: FinitePoset
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        bad = [m for m in self.members if m not in self.carrier]
        if bad:
            raise ValueError(f"elements {bad!r} are not in the carrier")

    def __iter__(self):
        """Members in carrier order."""
        return iter(self.sorted())

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def sorted(self) -> list:
        idx = self.carrier.index
        return sorted(self.members, key=idx.__getitem__)


def is_quasisublattice(lattice: FiniteLattice, s: Subset | Iterable) -> Verdict:
    members = s.members if isinstance(s, Subset) else frozenset(s)
    idx = lattice.index
    ordered = sorted(members, key=idx.__getitem__)
    ids = {idx[m] for m in members}
    for a in ordered:
        for b in ordered:
            i, j = idx[a], idx[b]
            if lattice.meet_idx(i, j) not in ids and lattice.join_idx(i, j) not in ids:
                return Verdict(False, (a, b))
    return HOLDS


def is_sublattice(lattice: FiniteLattice, s: Subset | Iterable) -> Verdict:
    """Closure under the carrier's meet and join."""
    members = s.members if isinstance(s, Subset) else frozenset(s)
    idx = lattice.index
    ordered = sorted(members, key=idx.__getitem__)
    ids = {idx[m] for m in members}
    for a in ordered:
        for b in ordered:
            i, j = idx[a], idx[b]
            if lattice.meet_idx(i, j) not in ids:
                return Verdict(False, (a, b), "meet")
            if lattice.join_idx(i, j) not in ids:
                return Verdict(False, (a, b), "join")
    return HOLDS


@dataclass(frozen=True)
class StructureFlags:
    has_largest: bool
    largest: Any
    has_least: bool
    least: Any
    is_lattice_induced: bool
    is_complete_lattice_induced: bool
    minimal_elements: tuple
    maximal_elements: tuple
    witness: tuple | None = None  # (x, y, "meet"|"join") for the first pair lacking a bound


class _InducedOrder:
    """Bitset view of a subset under the inherited order.

    Bit ``k`` stands for ``order[k]``, the k-th member along a linear
    extension of the carrier, so the least element of any up-closed family
    (if it exists) is its lowest set bit and the greatest its highest.
    """

    def __init__(self, carrier: FinitePoset, members):
        pos = {i: r for r, i in enumerate(carrier.linear_extension)}
        order = sorted((carrier.index[m] for m in members), key=pos.__getitem__)
        self.carrier = carrier
        self.order = order
        self.elements = [carrier.elements[i] for i in order]
        m = len(order)
        self.up = [0] * m
        self.down = [0] * m
        for a in range(m):
            ia = order[a]
            for b in range(a, m):
                if carrier.leq_idx(ia, order[b]):
                    self.up[a] |= 1 << b
                    self.down[b] |= 1 << a

    def least_of(self, mask):
        if not mask:
            return None
        k = (mask & -mask).bit_length() - 1
        return k if mask & ~self.up[k] == 0 else None

    def greatest_of(self, mask):
        if not mask:
            return None
        k = mask.bit_length() - 1
        return k if mask & ~self.down[k] == 0 else None


def induced_structure(carrier: FinitePoset, s: Subset | Iterable) -> StructureFlags:
    """Order structure of ``s`` under the order inherited from ``carrier``.

    Bounds are computed inside ``s``; the carrier's meet and join are never
    consulted, so a subset can be a lattice without being a sublattice.
    """
    members = s.members if isinstance(s, Subset) else frozenset(s)
    io = _InducedOrder(carrier, members)
    m = len(io.order)
    full = (1 << m) - 1
    largest = io.greatest_of(full)
    least = io.least_of(full)
    minimal = tuple(io.elements[a] for a in range(m) if io.down[a] == 1 << a)
    maximal = tuple(io.elements[a] for a in range(m) if io.up[a] == 1 << a)
    witness = None
    for a in range(m):
        for b in range(a + 1, m):
            if io.least_of(io.up[a] & io.up[b]) is None:
                witness = (io.elements[a], io.elements[b], "join")
                break
            if io.greatest_of(io.down[a] & io.down[b]) is None:
                witness = (io.elements[a], io.elements[b], "meet")
                break
        if witness:
            break
    is_lattice = witness is None
    idx = carrier.index
    return StructureFlags(
        has_largest=largest is not None,
        largest=None if largest is None else io.elements[largest],
        has_least=least is not None,
        least=None if least is None else io.elements[least],
        is_lattice_induced=is_lattice,
        is_complete_lattice_induced=is_lattice and m > 0,
        minimal_elements=tuple(sorted(minimal, key=idx.__getitem__)),
        maximal_elements=tuple(sorted(maximal, key=idx.__getitem__)),
        witness=witness,
    )


@dataclass(frozen=True)
class ChainReport:
    chain_complete_down: bool
    chain_complete_up: bool
    chain_bounded_above: bool
    chain_bounded_below: bool
    admits_maximal: bool
    admits_minimal: bool
    chains_examined: int


def iter_chains(carrier: FinitePoset, members):
    """Every nonempty chain of ``members``, as tuples listed bottom-up."""
    io = _InducedOrder(carrier, members)
    m = len(io.order)

    def extend(prefix, last):
        for b in range(last + 1, m):
            if io.up[last] >> b & 1:
                chain_ = prefix + (b,)
                yield chain_
                yield from extend(chain_, b)

    for a in range(m):
        yield (io.elements[a],)
        for c in extend((a,), a):
            yield tuple(io.elements[k] for k in c)


def chain_predicates(carrier: FinitePoset, s: Subset | Iterable) -> ChainReport:
    """Evaluate the chain-completeness and chain-boundedness conditions literally.

    Every nonempty chain of ``s`` is enumerated; infima, suprema and bounds are
    sought inside ``s`` itself.  All four hold for any finite subset (vacuously
    for the empty one); the enumeration is exponential in the width of ``s``
    and meant for level sets of small lattices.
    """
    members = s.members if isinstance(s, Subset) else frozenset(s)
    io = _InducedOrder(carrier, members)
    m = len(io.order)
    full = (1 << m) - 1
    pos = {e: k for k, e in enumerate(io.elements)}
    down_ok = up_ok = above_ok = below_ok = True
    count = 0
    for c in iter_chains(carrier, members):
        count += 1
        ks = [pos[e] for e in c]
        ubs = full
        lbs = full
        for k in ks:
            ubs &= io.up[k]
            lbs &= io.down[k]
        if io.greatest_of(lbs) is None:
            down_ok = False
        if io.least_of(ubs) is None:
            up_ok = False
        if not ubs:
            above_ok = False
        if not lbs:
            below_ok = False
    return ChainReport(down_ok, up_ok, above_ok, below_ok,
                       admits_maximal=any(io.up[a] == 1 << a for a in range(m)),
                       admits_minimal=any(io.down[a] == 1 << a for a in range(m)),
                       chains_examined=count)
