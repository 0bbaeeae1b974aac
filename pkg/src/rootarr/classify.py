"""Executable classifiers for root ideal arrangements.

Four predicates are computed independently for every ideal and must agree:

* chain peelability: the ideal can be emptied by repeatedly removing an
  order filter that is a chain through a minimal element (backtracking
  search with memoization; greediness is never assumed);
* supersolvability, decided twice: by a generic matroid search over
  modular coatom flats, and by the root-ideal fast path whose top-block
  candidates are restricted to chain filters of simple roots and to the
  bonded-pair complement blocks, recursing into root subsystems after the
  latter;
* line-closedness of the arrangement;
* absence of the two minimal obstructions (star configuration / the F4
  height<=4 ideal).

Any disagreement raises :class:`EquivalenceViolation`; it signals an
implementation bug and is never swallowed.  The Koszul verdict of a record
is definitionally tied to supersolvability and is not an independent
algebraic computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .rootsystem import RootSystem, _RootTable, _bits, format_root
from .ideals import (
    Ideal,
    contains_f4_bad_ideal,
    f4_bad_witness,
    find_star_ideal,
    g_set_mask,
    BadIdealWitness,
)
from .matroid import Arrangement, _echelon


class EquivalenceViolation(RuntimeError):
    """The classification predicates disagreed on some ideal."""


@dataclass(frozen=True)
class PartitionCertificate:
    """An ordered partition witnessing a peeling or a supersolving partition.

    ``blocks`` are tuples of base root indices, listed bottom-up: the block
    peeled (or split off) first is the last one.  ``block_meta`` parallels
    ``blocks``: ("F", alpha) for the chain filter of simple root ``alpha``,
    ("G", alpha, beta, a, b) for a bonded-pair complement block, or None
    when the generic search found the block as a coatom complement.
    """

    kind: str  # "peeling" or "supersolving"
    blocks: tuple[tuple[int, ...], ...]
    block_meta: tuple[Optional[tuple], ...]

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(b) for b in self.blocks))

    def to_dict(self, system: RootSystem) -> dict:
        def root(i: int) -> str:
            return format_root(system, i)

        metas = []
        for m in self.block_meta:
            if m is None:
                metas.append(None)
            elif m[0] == "F":
                metas.append(["F", root(m[1])])
            else:
                metas.append(["G", root(m[1]), root(m[2]), m[3], m[4]])
        return {
            "kind": self.kind,
            "blocks": [[root(i) for i in b] for b in self.blocks],
            "block_meta": metas,
        }


def _mask_to_base(table: _RootTable, mask: int) -> int:
    out = 0
    for pos in _bits(mask):
        out |= 1 << table.base_index(pos)
    return out


def _base_tuple(table: _RootTable, mask: int) -> tuple[int, ...]:
    return tuple(sorted(table.base_index(pos) for pos in _bits(mask)))


# -- chain peeling -----------------------------------------------------------


def _peel_minimals(table: _RootTable, mask: int) -> list[int]:
    """Minimal elements of an ideal, in simple-root index order.

    The minimal elements of a root-poset ideal are exactly its simple
    roots: anything of height two or more covers a root, which downward
    closure keeps in the ideal.
    """
    return [
        table.simple_positions[k]
        for k in range(table.rank)
        if mask >> table.simple_positions[k] & 1
    ]


def _peel_search(table: _RootTable, mask: int) -> Optional[tuple[tuple[int, int], ...]]:
    """Peel order as ((minimal position, filter mask), ...) or None."""
    if mask == 0:
        return ()
    memo = table._peel_memo
    if mask in memo:
        return memo[mask]
    result = None
    for m in _peel_minimals(table, mask):
        fmask = mask & table.up_masks[m]
        if not table.is_chain_mask(fmask):
            continue
        rest = _peel_search(table, mask & ~fmask)
        if rest is not None:
            result = ((m, fmask),) + rest
            break
    memo[mask] = result
    return result


def _peel_certificate(table: _RootTable, peel: tuple[tuple[int, int], ...]) -> PartitionCertificate:
    blocks = []
    meta = []
    for m, fmask in reversed(peel):  # first peeled block is the last one
        blocks.append(_base_tuple(table, fmask))
        meta.append(("F", table.base_index(m)))
    return PartitionCertificate("peeling", tuple(blocks), tuple(meta))


def chain_peeling(ideal: Ideal) -> Optional[PartitionCertificate]:
    """Find a chain peeling, or None if no peeling exists.

    Repeatedly selects a minimal element whose filter inside the remaining
    ideal is a chain, with memoized backtracking over the choice; a chain
    poset is its own (single-block) peeling.
    """
    peel = _peel_search(ideal.system, ideal.mask)
    if peel is None:
        return None
    return _peel_certificate(ideal.system, peel)


def chain_peeling_greedy(ideal: Ideal) -> Optional[PartitionCertificate]:
    """Greedy variant: always peel the first workable minimal element.

    Used to log whether greediness can get stuck where backtracking
    succeeds; correctness of the library never assumes it cannot.
    """
    table = ideal.system
    mask = ideal.mask
    peel = []
    while mask:
        for m in _peel_minimals(table, mask):
            fmask = mask & table.up_masks[m]
            if table.is_chain_mask(fmask):
                peel.append((m, fmask))
                mask &= ~fmask
                break
        else:
            return None
    return _peel_certificate(table, tuple(peel))


def validate_chain_peeling(ideal: Ideal, cert: PartitionCertificate) -> bool:
    """Check a certificate against the definition of a chain peeling."""
    table = ideal.system
    base_to_pos = (
        {table.base_index(p): p for p in range(table.nroots)}
    )
    mask = ideal.mask
    blocks = list(cert.blocks)
    while blocks:
        block = blocks.pop()  # peeled first
        bmask = 0
        for b in block:
            pos = base_to_pos.get(b)
            if pos is None or not mask >> pos & 1:
                return False
            bmask |= 1 << pos
        if not table.is_chain_mask(bmask):
            return False
        # order filter of the current poset
        for pos in _bits(bmask):
            if table.up_masks[pos] & mask & ~bmask:
                return False
        if not any(
            table.down_masks[pos] & mask == 1 << pos for pos in _bits(bmask)
        ):
            return False  # must contain a minimal element
        mask &= ~bmask
    return mask == 0


# -- generic supersolvability (modular coatom chain) -------------------------


def _arr(system: RootSystem, mask: int) -> Arrangement:
    cache = getattr(system, "_arrangements", None)
    if cache is None:
        cache = system._arrangements = {}
    arr = cache.get(mask)
    if arr is None:
        arr = Arrangement(system, _bits(mask))
        cache[mask] = arr
    return arr


def _generic_search(system: RootSystem, mask: int) -> Optional[tuple[int, ...]]:
    """Blocks as masks, bottom-up, or None; memoized on the ground mask."""
    memo = getattr(system, "_generic_ss_memo", None)
    if memo is None:
        memo = system._generic_ss_memo = {}
    if mask in memo:
        return memo[mask]
    if mask == 0:
        memo[mask] = ()
        return ()
    arr = _arr(system, mask)
    r = arr.rank()
    result = None
    for f in arr.flats():
        if f.rank != r - 1:
            continue
        pi = mask & ~f.members
        ok = True
        members = list(_bits(pi))
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                span = system.pair_span_mask(members[a], members[b])
                if not span & mask & f.members:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        sub = _generic_search(system, f.members)
        if sub is not None:
            result = sub + (pi,)
            break
    memo[mask] = result
    return result


def is_supersolvable_generic(arr: Arrangement) -> Optional[PartitionCertificate]:
    """Type-agnostic supersolvability: search over modular coatom flats.

    Valid for any arrangement; the top block is the complement of a coatom
    flat met by the pair-closure of each of the block's pairs, recursing on
    the flat.  Deterministic: coatoms are tried in flat order.
    """
    blocks = _generic_search(arr.system, arr.ground_mask)
    if blocks is None:
        return None
    return PartitionCertificate(
        "supersolving",
        tuple(tuple(_bits(m)) for m in blocks),
        tuple(None for _ in blocks),
    )


def validate_supersolving(system: RootSystem, blocks: Sequence[Sequence[int]]) -> bool:
    """Check an ordered partition against the supersolving conditions.

    Stage i (the first i blocks) must have rank i, and no rank-2 flat of
    stage i may sit inside block i.
    """
    stage = 0
    for i, block in enumerate(blocks, start=1):
        bmask = 0
        for x in block:
            if stage >> x & 1 or bmask >> x & 1:
                return False
            bmask |= 1 << x
        if not bmask:
            return False
        stage |= bmask
        rows = _echelon(system.coords[x] for x in _bits(stage))
        if len(rows) != i:
            return False
        members = list(_bits(bmask))
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                span = system.pair_span_mask(members[a], members[b])
                if not span & stage & ~bmask:
                    return False
    return True


# -- root-ideal supersolvability fast path ------------------------------------


def _table_ab_pairs(table: _RootTable, ai: int, bi: int) -> list[tuple[int, int]]:
    pairs = []
    for v in table.coords:
        if v[ai] >= 1 and v[bi] >= 1 and sum(v) == v[ai] + v[bi]:
            pairs.append((v[ai], v[bi]))
    return sorted(pairs)


def _rootideal_search(
    table: _RootTable, mask: int
) -> Optional[tuple[tuple[tuple[int, ...], tuple], ...]]:
    """Blocks (base indices) with meta, bottom-up, or None."""
    if mask == 0:
        return ()
    memo = table._ss_memo
    if mask in memo:
        return memo[mask]
    base = table.base

    # Essentialize: restrict to the parabolic subsystem spanned by the
    # simple roots the ideal actually contains.
    present = [k for k in range(table.rank) if mask >> table.simple_positions[k] & 1]
    if len(present) < table.rank:
        delta = tuple(table.base_index(table.simple_positions[k]) for k in present)
        view = base.subsystem_view(delta)
        vmask = 0
        for pos in _bits(mask):
            vmask |= 1 << view.position_of_base[table.base_index(pos)]
        result = _rootideal_search(view, vmask)
        memo[mask] = result
        return result

    ideal_base = _mask_to_base(table, mask)
    result = None

    # Case (a): the filter of a simple root, provided it is a chain.
    for k in range(table.rank):
        pos = table.simple_positions[k]
        fmask = mask & table.up_masks[pos]
        if not table.is_chain_mask(fmask):
            continue
        sub = _rootideal_search(table, mask & ~fmask)
        if sub is not None:
            meta = ("F", table.base_index(pos))
            result = sub + ((_base_tuple(table, fmask), meta),)
            break

    # Case (b): the complement of the multiples of a bonded pair; the
    # remainder is an ideal of the rank-lowered subsystem.
    if result is None:
        for k1 in range(table.rank):
            for k2 in range(k1 + 1, table.rank):
                for a, b in _table_ab_pairs(table, k1, k2):
                    bond = tuple(
                        a if t == k1 else b if t == k2 else 0
                        for t in range(table.rank)
                    )
                    bond_pos = table.index_of[bond]
                    if not mask >> bond_pos & 1:
                        continue  # remainder would lose a full rank
                    gmask = g_set_mask(table, mask, k1, k2, a, b)
                    if not gmask:
                        continue
                    g_base = _mask_to_base(table, gmask)
                    members = list(_bits(g_base))
                    ok = True
                    for x in range(len(members)):
                        for y in range(x + 1, len(members)):
                            span = base.pair_span_mask(members[x], members[y])
                            if not span & ideal_base & ~g_base:
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        continue
                    delta = (table.base_index(bond_pos),) + tuple(
                        table.base_index(table.simple_positions[t])
                        for t in range(table.rank)
                        if t not in (k1, k2)
                    )
                    view = base.subsystem_view(delta)
                    vmask = 0
                    for pos in _bits(mask & ~gmask):
                        vmask |= 1 << view.position_of_base[table.base_index(pos)]
                    assert view.is_downward_closed(vmask)
                    sub = _rootideal_search(view, vmask)
                    if sub is not None:
                        meta = (
                            "G",
                            table.base_index(table.simple_positions[k1]),
                            table.base_index(table.simple_positions[k2]),
                            a,
                            b,
                        )
                        result = sub + ((tuple(members), meta),)
                        break
                if result is not None:
                    break
            if result is not None:
                break

    memo[mask] = result
    return result


def is_supersolvable_rootideal(ideal: Ideal) -> Optional[PartitionCertificate]:
    """Supersolvability via the root-ideal block structure.

    Same verdict as the generic search, but top-block candidates are only
    the chain filters of simple roots and the bonded-pair complement
    blocks; after the latter the search continues inside the rank-lowered
    root subsystem.  Candidates are tried in simple-root order, filters
    before pair blocks, so certificates are reproducible.
    """
    found = _rootideal_search(ideal.system, ideal.mask)
    if found is None:
        return None
    return PartitionCertificate(
        "supersolving",
        tuple(b for b, _ in found),
        tuple(m for _, m in found),
    )


def exponents(cert: PartitionCertificate) -> tuple[int, ...]:
    """The multiset (sorted tuple) of block sizes of a supersolving partition.

    Chain peelings qualify: every peeling is a supersolving partition.
    """
    if cert is None:
        raise ValueError("no certificate")
    return cert.block_sizes()


# -- the combined classifier ---------------------------------------------------


@dataclass(frozen=True)
class ClassificationRecord:
    """Per-ideal verdicts plus witnesses and certificates.

    The four verdict fields always agree (their equality is asserted at
    classification time); ``koszul`` repeats ``supersolvable`` by the
    proven equivalence and is not an independent algebraic computation.
    """

    ideal: tuple[str, ...]
    size: int
    chain_peelable: bool
    supersolvable: bool
    line_closed: bool
    koszul: bool
    bad_ideal: Optional[BadIdealWitness]
    exponents: Optional[tuple[int, ...]]
    peeling: Optional[PartitionCertificate]
    supersolving: Optional[PartitionCertificate]
    non_flat_witness: Optional[tuple[str, ...]]

    def to_dict(self, system: RootSystem) -> dict:
        bad = None
        if self.bad_ideal is not None:
            bad = {
                "kind": self.bad_ideal.kind,
                "simple_roots": [format_root(system, i) for i in self.bad_ideal.simple_roots],
                "generators": [format_root(system, i) for i in self.bad_ideal.generators],
            }
        return {
            "ideal": list(self.ideal),
            "size": self.size,
            "chain_peelable": self.chain_peelable,
            "supersolvable": self.supersolvable,
            "line_closed": self.line_closed,
            "koszul": self.koszul,
            "bad_ideal": bad,
            "exponents": list(self.exponents) if self.exponents is not None else None,
            "peeling": self.peeling.to_dict(system) if self.peeling else None,
            "supersolving": self.supersolving.to_dict(system) if self.supersolving else None,
            "non_flat_witness": list(self.non_flat_witness) if self.non_flat_witness else None,
        }


def _bad_ideal(ideal: Ideal) -> Optional[BadIdealWitness]:
    system = ideal.system
    if not isinstance(system, RootSystem):
        raise ValueError("classification runs on ideals of a full root system")
    if system.lacing == 1:
        return find_star_ideal(ideal)
    if str(system.label) == "F4" and contains_f4_bad_ideal(ideal):
        return f4_bad_witness(system)
    return None  # B/C/G carry no obstruction


def classify_ideal(ideal: Ideal) -> ClassificationRecord:
    """Run all predicates on one ideal and assert their agreement.

    Raises :class:`EquivalenceViolation` if chain peelability, the two
    supersolvability searches, line-closedness and bad-ideal absence do
    not all coincide.
    """
    system = ideal.system
    bad = _bad_ideal(ideal)
    peel = chain_peeling(ideal)
    ss_fast = is_supersolvable_rootideal(ideal)
    arr = _arr(system, ideal.mask)
    ss_generic = is_supersolvable_generic(arr)
    line_closed, lc_witness = arr.is_line_closed()

    verdicts = {
        "chain_peelable": peel is not None,
        "supersolvable": ss_fast is not None,
        "supersolvable_generic": ss_generic is not None,
        "line_closed": line_closed,
        "bad_ideal_free": bad is None,
    }
    if len(set(verdicts.values())) != 1:
        raise EquivalenceViolation(
            f"predicates disagree on ideal {ideal.coordinate_strings()}: {verdicts}"
        )

    supersolvable = ss_fast is not None
    return ClassificationRecord(
        ideal=ideal.coordinate_strings(),
        size=ideal.size,
        chain_peelable=peel is not None,
        supersolvable=supersolvable,
        line_closed=line_closed,
        koszul=supersolvable,
        bad_ideal=bad,
        exponents=exponents(ss_fast) if supersolvable else None,
        peeling=peel,
        supersolving=ss_fast,
        non_flat_witness=(
            tuple(format_root(system, i) for i in sorted(lc_witness))
            if lc_witness is not None
            else None
        ),
    )
