"""Finite groups as dense Cayley tables, plus the structural queries the rest
of the package needs: element orders, cyclic and maximal cyclic subgroups,
Sylow decomposition, and isomorphism testing.

Elements are indices 0..n-1 with the identity fixed at 0.
"""

from __future__ import annotations

import math
import random
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np


class GroupError(ValueError):
    """Base class for invalid group input."""


class DescriptorError(GroupError):
    """Malformed group descriptor or parameter out of family range."""


class TableParseError(GroupError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LatinSquareError(GroupError):
    """A row or column of the table is not a permutation of 0..n-1."""


class AssociativityError(GroupError):
    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        a, b, c = triple
        super().__init__(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})")


class IdentityError(GroupError):
    """No two-sided identity element exists."""


class InverseError(GroupError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotNilpotentError(ValueError):
    def __init__(self, prime: int, witness: tuple[int, int]):
        self.prime = prime
        self.witness = witness
        x, y = witness
        super().__init__(
            f"{prime}-elements are not closed under multiplication "
            f"(witness product {x}*{y})"
        )


class IsomorphismCapError(ValueError):
    """Group order exceeds the isomorphism search cap."""


FULL_ASSOC_CHECK_MAX = 256
ASSOC_SAMPLE_COUNT = 1_000_000
ISO_DEFAULT_CAP = 128


class GroupTable:
    """A finite group given by its full multiplication table.

    mult[a][b] is the index of the product a*b; index 0 is the identity.
    Instances are immutable after construction and cache derived data
    (element orders, cyclic subgroups, Sylow decomposition).
    """

    def __init__(
        self,
        mult: Sequence[Sequence[int]],
        names: Optional[Sequence[str]] = None,
        source: str = "",
        _validated: bool = False,
    ):
        self._mult = tuple(tuple(int(x) for x in row) for row in mult)
        self.order = len(self._mult)
        self.names = list(names) if names is not None else None
        self.source = source
        if not _validated:
            _validate_table(self._mult)
        self._orders: Optional[list[int]] = None
        self._inverses: Optional[list[int]] = None
        self._cyclic_subs: Optional[list[Subgroup]] = None
        self._maximal_cyclic: Optional[list[Subgroup]] = None
        self._sylow: Optional[SylowDecomposition] = None
        self._sylow_error: Optional[NotNilpotentError] = None

    def mult(self, a: int, b: int) -> int:
        return self._mult[a][b]

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._mult

    def inverse(self, a: int) -> int:
        if self._inverses is None:
            inv = [0] * self.order
            for i, row in enumerate(self._mult):
                inv[i] = row.index(0)
            self._inverses = inv
        return self._inverses[a]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse(g), -k)
        acc = 0
        base = g
        while k:
            if k & 1:
                acc = self._mult[acc][base]
            base = self._mult[base][base]
            k >>= 1
        return acc

    def element_order(self, g: int) -> int:
        if not 0 <= g < self.order:
            raise IndexError(f"element index {g} out of range 0..{self.order - 1}")
        if self._orders is None:
            self._orders = [0] * self.order
        if self._orders[g] == 0:
            k, x = 1, g
            while x != 0:
                x = self._mult[x][g]
                k += 1
            self._orders[g] = k
        return self._orders[g]

    def orders(self) -> list[int]:
        return [self.element_order(g) for g in range(self.order)]

    def exponent(self) -> int:
        return math.lcm(*self.orders()) if self.order else 1

    def order_spectrum(self) -> dict[int, int]:
        """Multiset of element orders, as {order: count}."""
        return dict(sorted(Counter(self.orders()).items()))

    def cyclic_span(self, g: int) -> frozenset[int]:
        members = [0]
        x = g
        while x != 0:
            members.append(x)
            x = self._mult[x][g]
        return frozenset(members)

    def is_abelian(self) -> bool:
        m = self._mult
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a))

    def name_of(self, g: int) -> str:
        if self.names is not None:
            return self.names[g]
        return str(g)

    def __repr__(self) -> str:
        src = f" {self.source!r}" if self.source else ""
        return f"<GroupTable order={self.order}{src}>"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a GroupTable given by its member set.

    generator is set when the subgroup was produced as a cyclic span.
    """

    parent: GroupTable
    members: frozenset[int]
    generator: Optional[int] = None

    @property
    def order(self) -> int:
        return len(self.members)

    @classmethod
    def cyclic(cls, parent: GroupTable, g: int) -> "Subgroup":
        return cls(parent, parent.cyclic_span(g), generator=g)

    @classmethod
    def from_members(cls, parent: GroupTable, members: Iterable[int]) -> "Subgroup":
        mem = frozenset(int(x) for x in members)
        if 0 not in mem:
            raise GroupError("subgroup must contain the identity")
        for a in mem:
            if parent.inverse(a) not in mem:
                raise GroupError(f"subgroup not closed under inverse at {a}")
            for b in mem:
                if parent.mult(a, b) not in mem:
                    raise GroupError(f"subgroup not closed at {a}*{b}")
        return cls(parent, mem)

    def as_group(self) -> tuple[GroupTable, list[int]]:
        """Relabel this subgroup as a standalone GroupTable.

        Returns the new table and the list mapping new indices to parent
        element indices (identity stays at 0).
        """
        elems = [0] + sorted(self.members - {0})
        index = {e: i for i, e in enumerate(elems)}
        mult = [[index[self.parent.mult(a, b)] for b in elems] for a in elems]
        names = [self.parent.name_of(e) for e in elems]
        sub = GroupTable(mult, names=names, source=f"subgroup of {self.parent.source}")
        return sub, elems


@dataclass
class SylowDecomposition:
    """Sylow components of a nilpotent group and the product bijection."""

    group: GroupTable
    primes: list[int]
    components: list[Subgroup]
    projection: dict[int, tuple[int, ...]]

    def component_for(self, p: int) -> Subgroup:
        return self.components[self.primes.index(p)]


# ---------------------------------------------------------------------------
# Table validation


def _validate_table(mult: tuple[tuple[int, ...], ...]) -> None:
    n = len(mult)
    if n == 0:
        raise GroupError("empty table")
    target = frozenset(range(n))
    for i, row in enumerate(mult):
        if len(row) != n:
            raise LatinSquareError(f"row {i} has length {len(row)}, expected {n}")
        if frozenset(row) != target:
            raise LatinSquareError(f"row {i} is not a permutation of 0..{n - 1}")
    arr = np.array(mult, dtype=np.int64)
    for j in range(n):
        if frozenset(arr[:, j].tolist()) != target:
            raise LatinSquareError(f"column {j} is not a permutation of 0..{n - 1}")
    if not (np.array_equal(arr[0], np.arange(n)) and np.array_equal(arr[:, 0], np.arange(n))):
        raise IdentityError("index 0 is not a two-sided identity")
    # two-sided inverses
    for i in range(n):
        j = int(np.where(arr[i] == 0)[0][0])
        if arr[j][i] != 0:
            raise InverseError(i)
    _check_associativity(arr)


def _check_associativity(arr: np.ndarray) -> None:
    n = len(arr)
    if n <= FULL_ASSOC_CHECK_MAX:
        for a in range(n):
            left = arr[arr[a], :]       # (a*b)*c
            right = arr[a][arr]         # a*(b*c)
            if not np.array_equal(left, right):
                b, c = map(int, np.argwhere(left != right)[0])
                raise AssociativityError((a, b, c))
    else:
        rng = random.Random(0xA55)
        for _ in range(ASSOC_SAMPLE_COUNT):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if arr[arr[a][b]][c] != arr[a][arr[b][c]]:
                raise AssociativityError((a, b, c))


# ---------------------------------------------------------------------------
# Descriptor parsing and family constructions


_ATOM_RE = re.compile(r"(SD|[ZDQ])(\d+)$", re.IGNORECASE)

_FAMILY_NAMES = {"Z": "Z", "D": "D", "Q": "Q", "SD": "SD"}


def parse_group_descriptor(text: str) -> list[tuple[str, int]]:
    """Parse a descriptor like "Z4 x Z2 x Z3" into [(family, order), ...].

    Families: Z(n) cyclic, D(m) dihedral (m = 2^k >= 8), Q(m) generalized
    quaternion (m = 2^k >= 8), SD(m) semidihedral (m = 2^k >= 16); the
    parameter is always the group order. Separator "x", case-insensitive.
    """
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise DescriptorError("empty descriptor")
    atoms = []
    for part in re.split(r"[x×]", compact, flags=re.IGNORECASE):
        if not part:
            raise DescriptorError(f"empty factor in descriptor {text!r}")
        m = _ATOM_RE.match(part)
        if not m:
            raise DescriptorError(f"unrecognized factor {part!r} in {text!r}")
        family = m.group(1).upper()
        order = int(m.group(2))
        _check_atom(family, order, text)
        atoms.append((family, order))
    return atoms


def _check_atom(family: str, order: int, text: str) -> None:
    if family == "Z":
        if order < 1:
            raise DescriptorError(f"Z{order} in {text!r}: order must be >= 1")
        return
    if order < 8 or order & (order - 1):
        raise DescriptorError(
            f"{family}{order} in {text!r}: order must be a power of two >= 8"
        )
    if family == "SD" and order < 16:
        raise DescriptorError(f"SD{order} in {text!r}: smallest semidihedral is SD16")


def normalize_descriptor(text: str) -> str:
    return " x ".join(f"{f}{n}" for f, n in parse_group_descriptor(text))


def _cyclic_atom(n: int) -> tuple[list[list[int]], list[str]]:
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    return mult, [str(i) for i in range(n)]


def _two_generator_atom(family: str, order: int) -> tuple[list[list[int]], list[str]]:
    """Dihedral, quaternion, or semidihedral group of the given 2-power order.

    Elements are x^i*y^j encoded as i + half*j, with x of order `half`.
    The defining twist is y^-1 x y = x^r; quaternion additionally has
    y^2 = x^(half/2).
    """
    half = order // 2
    if family == "D":
        r, ysq = half - 1, 0
    elif family == "Q":
        r, ysq = half - 1, half // 2
    else:  # SD
        r, ysq = half // 2 - 1, 0
    mult = [[0] * order for _ in range(order)]
    for a in range(half):
        for b in (0, 1):
            for c in range(half):
                for d in (0, 1):
                    i = (a + c * pow(r, b, half) + (ysq if b and d else 0)) % half
                    j = (b + d) % 2
                    mult[a + half * b][c + half * d] = i + half * j
    names = [f"x{i}" if j == 0 else f"x{i}y" for j in (0, 1) for i in range(half)]
    return mult, names


def _direct_product(
    tables: list[list[list[int]]], names: list[list[str]]
) -> tuple[list[list[int]], list[str]]:
    mult, nms = tables[0], names[0]
    for t, nm in zip(tables[1:], names[1:]):
        nb = len(t)
        na = len(mult)
        combined = [[0] * (na * nb) for _ in range(na * nb)]
        for a1 in range(na):
            for b1 in range(nb):
                row = combined[a1 * nb + b1]
                mrow = mult[a1]
                trow = t[b1]
                for a2 in range(na):
                    base = mrow[a2] * nb
                    for b2 in range(nb):
                        row[a2 * nb + b2] = base + trow[b2]
        mult = combined
        nms = [f"({x},{y})" for x in nms for y in nm]
    return mult, nms


def build_group(descriptor: str) -> GroupTable:
    """Build the direct product of family groups named by the descriptor."""
    atoms = parse_group_descriptor(descriptor)
    tables, names = [], []
    for family, order in atoms:
        if family == "Z":
            t, nm = _cyclic_atom(order)
        else:
            t, nm = _two_generator_atom(family, order)
        tables.append(t)
        names.append(nm)
    mult, nms = _direct_product(tables, names)
    return GroupTable(mult, names=nms, source=normalize_descriptor(descriptor))


# ---------------------------------------------------------------------------
# Cayley-table file ingestion


def ingest_table(text: str, source: str = "<table>") -> GroupTable:
    """Parse and validate a Cayley table file.

    Format: first data line is n; the next n lines hold n space-separated
    0-based indices each (row i is the products i*j); '#' starts a comment
    line. If the identity is found at an index other than 0 the table is
    relabeled so it lands at 0.
    """
    rows: list[list[int]] = []
    n: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise TableParseError(f"expected group order, got {line!r}", lineno)
            if n < 1:
                raise TableParseError(f"order must be positive, got {n}", lineno)
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise TableParseError(f"non-integer entry in {line!r}", lineno)
        if len(row) != n:
            raise TableParseError(f"expected {n} entries, got {len(row)}", lineno)
        for x in row:
            if not 0 <= x < n:
                raise TableParseError(f"entry {x} out of range 0..{n - 1}", lineno)
        rows.append(row)
        if len(rows) == n:
            break
    if n is None:
        raise TableParseError("empty table file")
    if len(rows) != n:
        raise TableParseError(f"expected {n} rows, found {len(rows)}")
    rows = _relabel_identity_to_zero(rows)
    return GroupTable(rows, source=source)


def _relabel_identity_to_zero(rows: list[list[int]]) -> list[list[int]]:
    n = len(rows)
    identity = None
    for e in range(n):
        if all(rows[e][j] == j for j in range(n)) and all(rows[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise IdentityError("no two-sided identity element in table")
    if identity == 0:
        return rows
    perm = list(range(n))
    perm[0], perm[identity] = identity, 0
    inv = perm  # a transposition is its own inverse
    return [[inv[rows[perm[i]][perm[j]]] for j in range(n)] for i in range(n)]


def table_to_text(g: GroupTable) -> str:
    lines = [f"# order {g.order}" + (f" ({g.source})" if g.source else ""), str(g.order)]
    for i in range(g.order):
        lines.append(" ".join(str(x) for x in g.rows()[i]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Structural queries


def element_order(g: GroupTable, x: int) -> int:
    return g.element_order(x)


def exponent(g: GroupTable) -> int:
    return g.exponent()


def cyclic_subgroups(g: GroupTable) -> list[Subgroup]:
    """All distinct cyclic subgroups, trivial included, each with a generator."""
    if g._cyclic_subs is None:
        seen: dict[frozenset[int], Subgroup] = {}
        for x in range(g.order):
            members = g.cyclic_span(x)
            if members not in seen:
                seen[members] = Subgroup(g, members, generator=x)
        g._cyclic_subs = sorted(
            seen.values(), key=lambda s: (s.order, sorted(s.members))
        )
    return list(g._cyclic_subs)


def cyclic_subgroup_counts(g: GroupTable) -> dict[int, int]:
    """Number of cyclic subgroups of each order."""
    counts: Counter[int] = Counter(s.order for s in cyclic_subgroups(g))
    return dict(sorted(counts.items()))


def maximal_cyclic_subgroups(g: GroupTable) -> list[Subgroup]:
    """Cyclic subgroups not properly contained in another cyclic subgroup."""
    if g._maximal_cyclic is None:
        subs = cyclic_subgroups(g)
        maximal = []
        for s in subs:
            if any(s.order < t.order and s.members < t.members for t in subs):
                continue
            maximal.append(s)
        g._maximal_cyclic = maximal
    return list(g._maximal_cyclic)


def intersection_pattern(subs: Sequence[Subgroup]) -> list[list[int]]:
    """Matrix of pairwise intersection orders; diagonal holds subgroup orders."""
    if subs:
        parent = subs[0].parent
        if any(s.parent is not parent for s in subs):
            raise GroupError("subgroups have mixed parents")
    k = len(subs)
    out = [[0] * k for _ in range(k)]
    for i in range(k):
        out[i][i] = subs[i].order
        for j in range(i):
            v = len(subs[i].members & subs[j].members)
            out[i][j] = out[j][i] = v
    return out


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def sylow_decomposition(g: GroupTable) -> SylowDecomposition:
    """Split a nilpotent group into its Sylow components.

    Raises NotNilpotentError when, for some prime p, the p-elements are not
    closed under multiplication.
    """
    if g._sylow is not None:
        return g._sylow
    if g._sylow_error is not None:
        raise g._sylow_error

    primes = _prime_factors(g.order)
    components = []
    for p in primes:
        members = [x for x in range(g.order) if _is_power_of(g.element_order(x), p)]
        mem_set = frozenset(members)
        for a in members:
            for b in members:
                if g.mult(a, b) not in mem_set:
                    err = NotNilpotentError(p, (a, b))
                    g._sylow_error = err
                    raise err
        components.append(Subgroup(g, mem_set))

    projection: dict[int, tuple[int, ...]] = {}
    for x in range(g.order):
        m = g.element_order(x)
        parts = []
        for p in primes:
            q = 1
            while m % (q * p) == 0:
                q *= p
            if q == 1:
                parts.append(0)
            else:
                cofactor = m // q
                parts.append(g.power(x, cofactor * pow(cofactor, -1, q)))
        projection[x] = tuple(parts)
    if len(set(projection.values())) != g.order:
        raise GroupError("Sylow projection is not a bijection")
    dec = SylowDecomposition(g, primes, components, projection)
    g._sylow = dec
    return dec


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def is_nilpotent(g: GroupTable) -> bool:
    try:
        sylow_decomposition(g)
        return True
    except NotNilpotentError:
        return False


def is_p_group(g: GroupTable) -> bool:
    return len(_prime_factors(g.order)) <= 1


def is_eppo(g: GroupTable) -> bool:
    """True when every element order is a prime power (1 included)."""
    return all(len(_prime_factors(g.element_order(x))) <= 1 for x in range(g.order))


def lcm_witness(g: GroupTable, s: int, t: int) -> int:
    """An element of order lcm(s, t); exists in every nilpotent group in which
    s and t are realized as element orders."""
    sylow_decomposition(g)  # NotNilpotentError propagates
    orders = set(g.orders())
    if s not in orders or t not in orders:
        raise GroupError(f"orders {s}, {t} not both realized in the group")
    target = math.lcm(s, t)
    for x in range(g.order):
        if g.element_order(x) == target:
            return x
    raise RuntimeError(f"no element of order {target} found in nilpotent group")


# ---------------------------------------------------------------------------
# Isomorphism testing


def group_isomorphic(
    a: GroupTable, b: GroupTable, cap: int = ISO_DEFAULT_CAP
) -> tuple[bool, Optional[list[int]]]:
    """Decide isomorphism by backtracking over generator images.

    Returns (found, mapping) where mapping[x] is the image of x when found.
    Order mismatch returns (False, None); orders above `cap` raise
    IsomorphismCapError. Deterministic: candidates are tried in index order.
    """
    if a.order != b.order:
        return False, None
    if a.order > cap:
        raise IsomorphismCapError(f"order {a.order} exceeds cap {cap}")
    if a.order == 1:
        return True, [0]
    if a.order_spectrum() != b.order_spectrum():
        return False, None
    if cyclic_subgroup_counts(a) != cyclic_subgroup_counts(b):
        return False, None
    if a.is_abelian() != b.is_abelian():
        return False, None

    gens = _generating_sequence(a)
    by_order: dict[int, list[int]] = {}
    for y in range(b.order):
        by_order.setdefault(b.element_order(y), []).append(y)

    mapping = _extend_isomorphism(a, b, {0: 0}, gens, 0, by_order)
    if mapping is None:
        return False, None
    return True, [mapping[x] for x in range(a.order)]


def _generating_sequence(g: GroupTable) -> list[int]:
    gens: list[int] = []
    span = {0}
    while len(span) < g.order:
        nxt = min(x for x in range(g.order) if x not in span)
        gens.append(nxt)
        span = _closure(g, span | {nxt})
    return gens


def _closure(g: GroupTable, seed: set[int]) -> set[int]:
    span = set(seed)
    frontier = list(seed)
    while frontier:
        x = frontier.pop()
        for y in list(span):
            for z in (g.mult(x, y), g.mult(y, x)):
                if z not in span:
                    span.add(z)
                    frontier.append(z)
    return span


def _extend_isomorphism(
    a: GroupTable,
    b: GroupTable,
    phi: dict[int, int],
    gens: list[int],
    k: int,
    by_order: dict[int, list[int]],
) -> Optional[dict[int, int]]:
    if len(phi) == a.order:
        return phi
    g = gens[k]
    used = set(phi.values())
    for h in by_order.get(a.element_order(g), []):
        if h in used:
            continue
        extended = _try_extend(a, b, phi, g, h)
        if extended is None:
            continue
        result = _extend_isomorphism(a, b, extended, gens, k + 1, by_order)
        if result is not None:
            return result
    return None


def _try_extend(
    a: GroupTable, b: GroupTable, phi: dict[int, int], g: int, h: int
) -> Optional[dict[int, int]]:
    new = dict(phi)
    image = set(new.values())
    if h in image:
        return None
    new[g] = h
    image.add(h)
    queue = [g]
    while queue:
        x = queue.pop()
        for y in list(new):
            for p, q in (
                (a.mult(x, y), b.mult(new[x], new[y])),
                (a.mult(y, x), b.mult(new[y], new[x])),
            ):
                if p in new:
                    if new[p] != q:
                        return None
                else:
                    if q in image:
                        return None
                    new[p] = q
                    image.add(q)
                    queue.append(p)
    return new
