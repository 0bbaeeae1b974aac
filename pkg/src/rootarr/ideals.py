"""Order ideals of the root poset and their block candidates.

An ideal is a downward-closed set of positive roots, stored as a bitmask
over root indices.  This module enumerates all ideals of a system,
computes the two kinds of candidate top blocks used by the supersolvability
search (principal filters of simple roots, and the complement-of-multiples
sets attached to a bonded pair of simple roots), restricts ideals into root
subsystems, and detects the two minimal obstructions: the star
configuration around a degree-3 Dynkin node, and the F4 ideal of all roots
of height at most four.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .rootsystem import _RootTable, RootSystem, _bits, format_root, parse_root


@dataclass(frozen=True)
class Ideal:
    """A downward-closed set of positive roots of one table.

    ``system`` may be a :class:`RootSystem` or a :class:`SubsystemView`;
    ``mask`` is a bitmask over that table's root indices.  Validated on
    construction.
    """

    system: _RootTable
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask > self.system.full_mask:
            raise ValueError("ideal mask out of range")
        if not self.system.is_downward_closed(self.mask):
            raise ValueError("set is not downward closed")

    @classmethod
    def from_roots(cls, system: _RootTable, roots: Sequence[int]) -> "Ideal":
        mask = 0
        for r in roots:
            mask |= 1 << r
        return cls(system, mask)

    @classmethod
    def from_generators(cls, system: _RootTable, roots: Sequence[int]) -> "Ideal":
        """The downward closure of the given root indices."""
        mask = 0
        for r in roots:
            mask |= system.down_masks[r]
        return cls(system, mask)

    @classmethod
    def parse(cls, system: _RootTable, text: str) -> "Ideal":
        """Parse generator roots, e.g. "1110,1101,0111".

        Generators are comma-separated digit strings; use ';' between
        generators if the roots themselves need the comma coordinate form.
        A single comma-form root ("1,2,1,1") is also accepted.
        """
        text = text.strip()
        if not text:
            return cls(system, 0)
        if ";" in text:
            tokens = [t for t in text.split(";") if t.strip()]
        else:
            tokens = [t for t in text.split(",") if t.strip()]
        try:
            roots = [parse_root(system, t) for t in tokens]
        except ValueError:
            # Fall back to reading the whole text as one comma-form root.
            roots = [parse_root(system, text)]
        return cls.from_generators(system, roots)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def members(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    def coordinate_strings(self) -> tuple[str, ...]:
        return tuple(format_root(self.system, i) for i in self.members())

    def __contains__(self, idx: int) -> bool:
        return bool(self.mask >> idx & 1)

    def __len__(self) -> int:
        return self.size


def enumerate_ideals(rs: _RootTable) -> Iterator[Ideal]:
    """Yield every order ideal exactly once, smallest first.

    Depth-first extension over the minimal addable elements (the antichain
    frontier) with bit-set deduplication; the output is then sorted by
    (size, mask) so the order is deterministic.  The empty ideal and the
    whole positive system are always included.
    """
    seen = {0}
    stack = [0]
    down = rs.down_masks
    m = rs.nroots
    while stack:
        cur = stack.pop()
        for i in range(m):
            if cur >> i & 1:
                continue
            # addable: everything strictly below i is already present
            if down[i] & ~cur == 1 << i:
                nxt = cur | 1 << i
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    for mask in sorted(seen, key=lambda x: (x.bit_count(), x)):
        yield Ideal(rs, mask)


def principal_filter(ideal: Ideal, alpha: int) -> frozenset[int]:
    """The order filter in the ideal generated by a simple root.

    ``alpha`` is the root index of a simple root and must belong to the
    ideal; the result is every member lying above it.
    """
    sys_ = ideal.system
    v = sys_.coords[alpha]
    if sum(v) != 1:
        raise ValueError("filter generator must be a simple root")
    if alpha not in ideal:
        raise ValueError("filter generator does not belong to the ideal")
    return frozenset(_bits(ideal.mask & sys_.up_masks[alpha]))


def filter_mask(table: _RootTable, mask: int, alpha_pos: int) -> int:
    """Bitmask form of the principal filter, no validation."""
    return mask & table.up_masks[alpha_pos]


def g_set(ideal: Ideal, alpha: int, beta: int, a: int, b: int) -> frozenset[int]:
    """Members whose (alpha, beta)-coordinate pair is not a multiple of (a, b).

    ``alpha`` and ``beta`` are root indices of distinct simple roots and
    ``a * alpha + b * beta`` must be a positive root.  Multiples include the
    zero multiple, so members supported away from both simple roots are
    excluded as well.
    """
    sys_ = ideal.system
    ai, bi = _simple_coordinate_axis(sys_, alpha), _simple_coordinate_axis(sys_, beta)
    if ai == bi:
        raise ValueError("the two simple roots must be distinct")
    _require_bond_root(sys_, ai, bi, a, b)
    return frozenset(_bits(g_set_mask(sys_, ideal.mask, ai, bi, a, b)))


def g_set_mask(table: _RootTable, mask: int, ai: int, bi: int, a: int, b: int) -> int:
    """g_set as a bitmask; ``ai``/``bi`` are coordinate axes, not root indices."""
    out = 0
    for i in _bits(mask):
        v = table.coords[i]
        ca, cb = v[ai], v[bi]
        if ca % a == 0 and cb == (ca // a) * b:
            continue  # the multiple k = ca // a works, so i is excluded
        out |= 1 << i
    return out


def _simple_coordinate_axis(table: _RootTable, root_idx: int) -> int:
    v = table.coords[root_idx]
    if sum(v) != 1:
        raise ValueError(f"root {v} is not simple")
    return v.index(1)


def _require_bond_root(table: _RootTable, ai: int, bi: int, a: int, b: int) -> None:
    if a < 1 or b < 1:
        raise ValueError("multipliers must be positive")
    target = tuple(
        a if k == ai else b if k == bi else 0 for k in range(table.rank)
    )
    if target not in table.index_of:
        raise ValueError(
            f"{a}*alpha + {b}*beta is not a positive root for this pair"
        )


def candidate_ab_pairs(rs: _RootTable, alpha: int, beta: int) -> list[tuple[int, int]]:
    """All (a, b) with a, b >= 1 making a*alpha + b*beta a positive root.

    Found by scanning the roots supported exactly on the two coordinate
    axes, so triple bonds need no special casing.  Empty when the two
    simple roots are not bonded.
    """
    ai, bi = _simple_coordinate_axis(rs, alpha), _simple_coordinate_axis(rs, beta)
    if ai == bi:
        raise ValueError("the two simple roots must be distinct")
    pairs = []
    for v in rs.coords:
        if v[ai] >= 1 and v[bi] >= 1 and sum(v) == v[ai] + v[bi]:
            pairs.append((v[ai], v[bi]))
    return sorted(pairs)


@dataclass(frozen=True)
class BadIdealWitness:
    """Witness for one of the two minimal non-supersolvable configurations.

    ``kind`` is "star" (three height-3 roots around a degree-3 Dynkin node)
    or "f4" (the full height<=4 ideal of F4).  ``simple_roots`` are the root
    indices of the participating simple roots; ``generators`` the three
    witnessing roots.
    """

    kind: str
    simple_roots: tuple[int, ...]
    generators: tuple[int, ...]


def find_star_ideal(ideal: Ideal) -> BadIdealWitness | None:
    """Find a star configuration: a degree-3 node whose three 'centre plus
    two arms' height-3 roots all belong to the ideal.

    Only meaningful for simply laced systems; returns None for multiply
    laced ones (F4 has no degree-3 node anyway, and B/C/G ideals carry no
    obstruction at all).
    """
    rs = ideal.system
    if not isinstance(rs, RootSystem) or rs.lacing != 1:
        return None
    n = rs.rank
    for centre in range(n):
        arms = rs.dynkin_neighbours(centre)
        if len(arms) < 3:
            continue
        # No crystallographic diagram has degree > 3, but stay general.
        for trio in combinations(sorted(arms), 3):
            gens = []
            for left, right in ((trio[0], trio[1]), (trio[0], trio[2]), (trio[1], trio[2])):
                v = tuple(
                    1 if k in (left, centre, right) else 0 for k in range(n)
                )
                idx = rs.index_of.get(v)
                if idx is None or idx not in ideal:
                    gens = None
                    break
                gens.append(idx)
            if gens is not None:
                simples = (
                    rs.simple_positions[trio[0]],
                    rs.simple_positions[centre],
                    rs.simple_positions[trio[1]],
                    rs.simple_positions[trio[2]],
                )
                return BadIdealWitness("star", simples, tuple(gens))
    return None


def f4_height4_mask(rs: RootSystem) -> int:
    """Mask of the 13 F4 roots of height at most four."""
    if str(rs.label) != "F4":
        raise ValueError("only defined for F4")
    return sum(1 << i for i, h in enumerate(rs.heights) if h <= 4)


def contains_f4_bad_ideal(ideal: Ideal) -> bool:
    """Whether the ideal contains all 13 F4 roots of height at most four.

    False for every non-F4 system.
    """
    rs = ideal.system
    if not isinstance(rs, RootSystem) or str(rs.label) != "F4":
        return False
    bad = f4_height4_mask(rs)
    return ideal.mask & bad == bad


def f4_bad_witness(rs: RootSystem) -> BadIdealWitness:
    """The F4 witness: all four simple roots plus the three height-4 roots."""
    gens = tuple(i for i, h in enumerate(rs.heights) if h == 4)
    return BadIdealWitness("f4", rs.simple_positions, gens)


def is_path_root(rs: RootSystem, gamma: int) -> bool:
    """Whether the root's support is a Dynkin path with all coordinates 1."""
    v = rs.coords[gamma]
    supp = [i for i, x in enumerate(v) if x]
    if any(v[i] != 1 for i in supp):
        return False
    # Supports are connected subtrees of the Dynkin tree, so a path is
    # exactly: no support node with three support neighbours.
    supp_set = set(supp)
    return all(
        sum(1 for j in rs.dynkin_neighbours(i) if j in supp_set) <= 2 for i in supp
    )


class SubsystemView(_RootTable):
    """A root subsystem presented like a standalone root table.

    Spanned by an independent set of parent positive roots; holds the
    subsystem's positive roots with coordinates over its own simple basis,
    plus the bijection back to parent root indices.  The induced order
    agrees with the parent order restricted to the subsystem's roots.
    Construct via ``RootSystem.subsystem_view`` (which caches canonically).
    """

    def __init__(self, base: RootSystem, delta_base: Sequence[int]):
        self.base = base
        self.delta_base = tuple(sorted(delta_base))
        self.rank = len(self.delta_base)
        basis = [base.coords[i] for i in self.delta_base]
        members: list[tuple[int, tuple[int, ...]]] = []
        for idx, v in enumerate(base.coords):
            c = _solve_in_basis(basis, v, base.rank)
            if c is not None:
                members.append((idx, c))
        coords = [c for _, c in members]
        self._by_coord_parent = {c: idx for idx, c in members}
        self._finish(coords)
        self.parent_indices = tuple(
            self._by_coord_parent[self.coords[p]] for p in range(self.nroots)
        )
        self.position_of_base = {b: p for p, b in enumerate(self.parent_indices)}

    def base_index(self, pos: int) -> int:
        return self.parent_indices[pos]

    @property
    def lacing(self) -> int:
        """1, 2 or 3 from the squared-length ratio of the member roots."""
        lengths = {
            self.base.form_value(self.base.coords[i], self.base.coords[i])
            for i in self.parent_indices
        }
        if not lengths:
            return 1
        ratio = max(lengths) / min(lengths)
        return {Fraction(1): 1, Fraction(2): 2, Fraction(3): 3}[ratio]

    def __repr__(self) -> str:
        delta = ",".join(format_root(self.base, i) for i in self.delta_base)
        return f"SubsystemView({self.base.label}: <{delta}>, {self.nroots} roots)"


def _solve_in_basis(
    basis: list[tuple[int, ...]], v: tuple[int, ...], dim: int
) -> tuple[int, ...] | None:
    """Express v over the basis with nonnegative integer coefficients.

    Returns None when v is outside the span; positive roots of a subsystem
    always come out with nonnegative integral coordinates over its simple
    set, which is asserted.
    """
    k = len(basis)
    rows = [
        [Fraction(basis[j][t]) for j in range(k)] + [Fraction(v[t])]
        for t in range(dim)
    ]
    piv_rows: list[list[Fraction]] = []
    piv_cols: list[int] = []
    for col in range(k):
        pivot = None
        for r in rows:
            if r[col] != 0 and all(r[c] == 0 for c in piv_cols):
                pivot = r
                break
        if pivot is None:
            continue
        rows.remove(pivot)
        pivot = [x / pivot[col] for x in pivot]
        for r in rows:
            if r[col] != 0:
                f = r[col]
                for t in range(k + 1):
                    r[t] -= f * pivot[t]
        for pr in piv_rows:
            if pr[col] != 0:
                f = pr[col]
                for t in range(k + 1):
                    pr[t] -= f * pivot[t]
        piv_rows.append(pivot)
        piv_cols.append(col)
    if len(piv_cols) != k:
        raise ValueError("subsystem spanning set must be linearly independent")
    # Any leftover row with a nonzero right-hand side means v is not in span.
    if any(r[k] != 0 for r in rows):
        return None
    coeffs = [Fraction(0)] * k
    for pr, col in zip(piv_rows, piv_cols):
        coeffs[col] = pr[k]
    out = []
    for c in coeffs:
        assert c.denominator == 1 and c >= 0, "subsystem coordinates must be nonneg integers"
        out.append(int(c))
    return tuple(out)


def restrict_without_g(
    ideal: Ideal, alpha: int, beta: int, a: int, b: int
) -> tuple[SubsystemView, Ideal]:
    """Drop the g_set block and land in the rank-lowered subsystem.

    The subsystem is spanned by ``a*alpha + b*beta`` together with the
    other simple roots; the surviving members form an order ideal of the
    subsystem's own root poset (which coincides with the induced parent
    order).  Returns the view and the reindexed ideal.
    """
    table = ideal.system
    base = table.base
    ai, bi = _simple_coordinate_axis(table, alpha), _simple_coordinate_axis(table, beta)
    _require_bond_root(table, ai, bi, a, b)
    bond = tuple(a if k == ai else b if k == bi else 0 for k in range(table.rank))
    bond_base = table.base_index(table.index_of[bond])
    delta = [bond_base] + [
        table.base_index(p)
        for k, p in enumerate(table.simple_positions)
        if k not in (ai, bi)
    ]
    view = base.subsystem_view(delta)
    g_mask = g_set_mask(table, ideal.mask, ai, bi, a, b)
    rest_mask = 0
    for pos in _bits(ideal.mask & ~g_mask):
        rest_mask |= 1 << view.position_of_base[table.base_index(pos)]
    return view, Ideal(view, rest_mask)
