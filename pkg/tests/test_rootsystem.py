"""Root system construction, the bilinear form, reflections and the poset.

Oracles used here are independent of the construction path: closed-form
root counts, Euclidean coordinate models for the inner product, the orbit
of the simple roots under all simple reflections, and direct Dynkin-graph
reasoning for support connectivity.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest

from rootarr import (
    TypeLabel,
    format_root,
    inner_product,
    parse_root,
    rank2_subsystem,
    reflect,
    root_poset,
)
from conftest import get_system

ALL_TYPES = (
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 9)]
    + [f"C{n}" for n in range(2, 9)]
    + [f"D{n}" for n in range(3, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)

RANK4_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "F4", "G2"]


def closed_form_count(label: TypeLabel) -> int:
    n = label.rank
    if label.family == "A":
        return n * (n + 1) // 2
    if label.family in ("B", "C"):
        return n * n
    if label.family == "D":
        return n * (n - 1)
    if label.family == "E":
        return {6: 36, 7: 63, 8: 120}[n]
    return 24 if label.family == "F" else 6


# -- admissibility ------------------------------------------------------------


@pytest.mark.parametrize("bad", ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "F5", "G3", "H3"])
def test_inadmissible_types_rejected(bad):
    with pytest.raises(ValueError):
        TypeLabel.parse(bad)


def test_type_parse_roundtrip():
    assert str(TypeLabel.parse("d4")) == "D4"
    with pytest.raises(ValueError):
        TypeLabel.parse("Dfour")


# -- construction: counts, orbit oracle, frozen tables -------------------------------


@pytest.mark.parametrize("label", ALL_TYPES)
def test_positive_root_counts(label):
    rs = get_system(label)
    assert rs.nroots == closed_form_count(rs.label)


@pytest.mark.parametrize("label", ALL_TYPES)
def test_reflection_orbit_oracle(label):
    # Closing the simple roots under all simple reflections must reproduce
    # the generated positive roots exactly.
    rs = get_system(label)
    simple = [tuple(1 if k == i else 0 for k in range(rs.rank)) for i in range(rs.rank)]
    orbit = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                w = rs.reflect_vector(i, v)
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(w)
        frontier = nxt
    positives = {v for v in orbit if all(x >= 0 for x in v)}
    assert positives == set(rs.coords)
    # and the orbit is symmetric: every root's negative appears
    assert {tuple(-x for x in v) for v in orbit} == orbit


def test_a2_roots():
    rs = get_system("A2")
    assert {format_root(rs, i) for i in range(rs.nroots)} == {"10", "01", "11"}


D4_KNOWN_ROOTS = {
    "1000", "0100", "0010", "0001",
    "1100", "0110", "0101",
    "1110", "1101", "0111",
    "1111", "1211",
}

F4_KNOWN_ROOTS = {
    "1000", "0100", "0010", "0001",
    "1100", "0110", "0011",
    "1110", "0210", "0111",
    "1210", "1111", "0211",
    "2210", "1211", "0221",
    "2211", "1221",
    "2221", "1321",
    "2321", "2421", "2431", "2432",
}


def test_d4_matches_known_table():
    rs = get_system("D4")
    assert {format_root(rs, i) for i in range(rs.nroots)} == D4_KNOWN_ROOTS


def test_f4_matches_known_table():
    rs = get_system("F4")
    assert {format_root(rs, i) for i in range(rs.nroots)} == F4_KNOWN_ROOTS
    height4 = {format_root(rs, i) for i in range(rs.nroots) if rs.heights[i] == 4}
    assert height4 == {"1210", "1111", "0211"}


def test_root_order_is_height_then_lex():
    rs = get_system("F4")
    keys = [(rs.heights[i], rs.coords[i]) for i in range(rs.nroots)]
    assert keys == sorted(keys)


# -- bilinear form ---------------------------------------------------------------


def euclid_model(label: str) -> tuple[int, list[tuple[Fraction, ...]]]:
    """Simple roots in a standard Euclidean coordinate model.

    Returns (scale, vectors): the symmetrized Cartan form with the minimal
    integer symmetrizer equals ``scale`` times the Euclidean dot product of
    the model vectors (scale 2 where the model's short roots have squared
    length 1).
    """
    h = Fraction(1, 2)

    def e(i, dim):
        return tuple(Fraction(1) if k == i else Fraction(0) for k in range(dim))

    def sub(u, v):
        return tuple(a - b for a, b in zip(u, v))

    def add(u, v):
        return tuple(a + b for a, b in zip(u, v))

    def scale(c, u):
        return tuple(c * a for a in u)

    fam, n = label[0], int(label[1:])
    if fam == "A":
        dim = n + 1
        return 1, [sub(e(i, dim), e(i + 1, dim)) for i in range(n)]
    if fam == "B":
        # short root e_n has squared length 1 in this model
        return 2, [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [e(n - 1, n)]
    if fam == "C":
        return 1, [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [scale(2, e(n - 1, n))]
    if fam == "D":
        return 1, [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [
            add(e(n - 2, n), e(n - 1, n))
        ]
    if fam == "F":
        # alpha_1, alpha_2 short (squared length 1 here); alpha_3, alpha_4 long
        alpha1 = scale(h, sub(sub(sub(e(0, 4), e(1, 4)), e(2, 4)), e(3, 4)))
        alpha2 = e(3, 4)
        alpha3 = sub(e(2, 4), e(3, 4))
        alpha4 = sub(e(1, 4), e(2, 4))
        return 2, [alpha1, alpha2, alpha3, alpha4]
    raise ValueError(label)


@pytest.mark.parametrize("label", ["A2", "A3", "B2", "B3", "C3", "D4", "D5", "F4"])
def test_form_matches_euclidean_model(label):
    rs = get_system(label)
    factor, model = euclid_model(label)
    dim = len(model[0])

    def embed(v):
        acc = tuple(Fraction(0) for _ in range(dim))
        for c, m in zip(v, model):
            acc = tuple(a + c * b for a, b in zip(acc, m))
        return acc

    for i in range(rs.nroots):
        u = embed(rs.coords[i])
        for j in range(rs.nroots):
            w = embed(rs.coords[j])
            assert inner_product(rs, i, j) == factor * sum(a * b for a, b in zip(u, w))


def test_a2_inner_products():
    rs = get_system("A2")
    a1, a2 = parse_root(rs, "10"), parse_root(rs, "01")
    assert inner_product(rs, a1, a2) == -1
    assert inner_product(rs, a1, a1) == 2 == inner_product(rs, a2, a2)


def test_d4_inner_product_exact_value():
    # (1110, 0111) expands to 0 over the D4 form: the two roots are e1-e4
    # and e2+e3 in the Euclidean model.
    rs = get_system("D4")
    assert inner_product(rs, parse_root(rs, "1110"), parse_root(rs, "0111")) == 0


@pytest.mark.parametrize("label", ["A3", "B3", "D4", "F4", "G2"])
def test_form_symmetric_positive_definite(label):
    rs = get_system(label)
    n = rs.rank
    B = [[Fraction(rs.form[i][j]) for j in range(n)] for i in range(n)]
    assert all(B[i][j] == B[j][i] for i in range(n) for j in range(n))
    for k in range(1, n + 1):
        assert _det([row[:k] for row in B[:k]]) > 0
    for i in range(rs.nroots):
        assert inner_product(rs, i, i) > 0


def _det(m):
    if len(m) == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det(minor)
    return total


# -- reflections ----------------------------------------------------------------


def test_reflection_examples():
    a2 = get_system("A2")
    s, idx = reflect(a2, parse_root(a2, "10"), parse_root(a2, "01"))
    assert (s, format_root(a2, idx)) == (1, "11")
    s, idx = reflect(a2, parse_root(a2, "10"), parse_root(a2, "10"))
    assert (s, format_root(a2, idx)) == (-1, "10")

    f4 = get_system("F4")
    # alpha_2 is short, so s_{a2}(a3) climbs two steps to 0210
    s, idx = reflect(f4, parse_root(f4, "0100"), parse_root(f4, "0010"))
    assert (s, format_root(f4, idx)) == (1, "0210")
    s, idx = reflect(f4, parse_root(f4, "0100"), parse_root(f4, "0100"))
    assert s == -1


@pytest.mark.parametrize("label", ["A3", "B3", "C3", "D4", "F4", "G2"])
def test_simple_reflections_permute_other_positives(label):
    rs = get_system(label)
    for k in range(rs.rank):
        alpha = rs.simple_root_index(k)
        images = set()
        for g in range(rs.nroots):
            sign, idx = reflect(rs, alpha, g)
            if g == alpha:
                assert sign == -1 and idx == alpha
            else:
                assert sign == 1
                images.add(idx)
        assert images == set(range(rs.nroots)) - {alpha}


def test_reflect_requires_simple_root():
    rs = get_system("A2")
    with pytest.raises(ValueError):
        reflect(rs, parse_root(rs, "11"), 0)


# -- rank-2 subsystems -------------------------------------------------------------


def _bruteforce_span_members(rs, i, j):
    """Independent exact span test via 2x2 solving over Fractions."""
    u, v = rs.coords[i], rs.coords[j]
    out = set()
    for k, w in enumerate(rs.coords):
        for a, b in combinations(range(rs.rank), 2):
            det = Fraction(u[a] * v[b] - u[b] * v[a])
            if det:
                x = Fraction(w[a] * v[b] - w[b] * v[a], det)
                y = Fraction(u[a] * w[b] - u[b] * w[a], det)
                if all(x * u[t] + y * v[t] == w[t] for t in range(rs.rank)):
                    out.add(k)
                break
    return out


def test_rank2_subsystem_a2_is_everything():
    rs = get_system("A2")
    assert rank2_subsystem(rs, 0, 1) == frozenset(range(3))


def test_rank2_subsystem_d4_pair():
    rs = get_system("D4")
    i, j = parse_root(rs, "1110"), parse_root(rs, "0111")
    got = rank2_subsystem(rs, i, j)
    assert got == frozenset(_bruteforce_span_members(rs, i, j))
    assert {format_root(rs, k) for k in got} == {"1110", "0111"}


def test_rank2_subsystem_f4_contains_eta_sum():
    rs = get_system("F4")
    i, j = parse_root(rs, "1210"), parse_root(rs, "1111")
    got = rank2_subsystem(rs, i, j)
    assert parse_root(rs, "2321") in got
    assert got == frozenset(_bruteforce_span_members(rs, i, j))


@pytest.mark.parametrize("label", ["A3", "B3", "D4", "G2"])
def test_rank2_subsystem_agrees_with_bruteforce(label):
    rs = get_system(label)
    for i in range(rs.nroots):
        for j in range(i + 1, rs.nroots):
            assert rank2_subsystem(rs, i, j) == frozenset(_bruteforce_span_members(rs, i, j))


def test_rank2_subsystem_rejects_equal_roots():
    rs = get_system("A2")
    with pytest.raises(ValueError):
        rank2_subsystem(rs, 1, 1)


@pytest.mark.parametrize("label", RANK4_TYPES)
def test_subsystem_lacing_never_exceeds_parent(label):
    rs = get_system(label)
    for i in range(rs.nroots):
        for j in range(i + 1, rs.nroots):
            view = rs.subsystem_view(sorted(rank2_subsystem(rs, i, j))[:2])
            assert view.lacing <= rs.lacing


# -- the root poset -----------------------------------------------------------------


def test_poset_a2_covers():
    rs = get_system("A2")
    poset = root_poset(rs)
    named = {(format_root(rs, a), format_root(rs, b)) for a, b in poset.covers}
    assert named == {("10", "11"), ("01", "11")}


def test_poset_d4_1111_covered_only_by_1211():
    rs = get_system("D4")
    poset = root_poset(rs)
    i = parse_root(rs, "1111")
    uppers = [b for a, b in poset.covers if a == i]
    assert [format_root(rs, b) for b in uppers] == ["1211"]


def test_poset_f4_height3_roots_covered_twice():
    rs = get_system("F4")
    poset = root_poset(rs)
    for name in ["1110", "0210", "0111"]:
        i = parse_root(rs, name)
        assert sum(1 for a, _ in poset.covers if a == i) == 2


@pytest.mark.parametrize("label", ALL_TYPES)
def test_cover_height_consistency(label):
    # every cover raises height by one and differs by a simple root
    rs = get_system(label)
    poset = root_poset(rs)
    for a, b in poset.covers:
        assert poset.heights[b] == poset.heights[a] + 1
        diff = tuple(x - y for x, y in zip(rs.coords[b], rs.coords[a]))
        assert sum(diff) == 1 and all(x in (0, 1) for x in diff)
    # the order is the reflexive-transitive closure of the covers
    above = [set() for _ in range(rs.nroots)]
    for a, b in poset.covers:
        above[a].add(b)
    reach = [None] * rs.nroots
    for i in sorted(range(rs.nroots), key=lambda x: -poset.heights[x]):
        acc = {i}
        for b in above[i]:
            acc |= reach[b]
        reach[i] = acc
    for i in range(rs.nroots):
        assert reach[i] == {j for j in range(rs.nroots) if poset.leq(i, j)}


@pytest.mark.parametrize("label", ALL_TYPES)
def test_support_connectivity_both_directions(label):
    rs = get_system(label)
    adjacency = {i: set(rs.dynkin_neighbours(i)) for i in range(rs.rank)}

    def connected(nodes: frozenset[int]) -> bool:
        if not nodes:
            return False
        seen = {next(iter(nodes))}
        frontier = list(seen)
        while frontier:
            x = frontier.pop()
            for y in adjacency[x] & nodes:
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen == set(nodes)

    # every root's support induces a connected subgraph
    for v in rs.coords:
        assert connected(frozenset(i for i, x in enumerate(v) if x))
    # and every connected subgraph's node-sum is a positive root
    for r in range(1, rs.rank + 1):
        for nodes in combinations(range(rs.rank), r):
            if connected(frozenset(nodes)):
                v = tuple(1 if i in nodes else 0 for i in range(rs.rank))
                assert v in rs.index_of


# -- text format ----------------------------------------------------------------------


def test_parse_root_both_forms():
    rs = get_system("D4")
    assert parse_root(rs, "1211") == parse_root(rs, "1,2,1,1")
    with pytest.raises(ValueError):
        parse_root(rs, "9999")
    with pytest.raises(ValueError):
        parse_root(rs, "121")
    with pytest.raises(ValueError):
        parse_root(rs, "1,2,1")


def test_format_root_roundtrip():
    rs = get_system("E8")
    for i in range(rs.nroots):
        assert parse_root(rs, format_root(rs, i)) == i
