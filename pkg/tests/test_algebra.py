import itertools
import math
import random

import pytest

from sigmanets.algebra import (
    CapacityError,
    Multiset,
    PermGroup,
    all_pairs,
    all_perms,
    apply_perm_word,
    compose_pair,
    compose_perm,
    coset_reps,
    coset_rep_of,
    extend_place_map,
    full_group,
    group_closure,
    identity_pair,
    identity_perm,
    invert_pair,
    invert_perm,
    stabilizer,
    trivial_group,
)


def test_apply_identity_and_swap():
    assert apply_perm_word((0, 1), ("p", "q")) == ("p", "q")
    assert apply_perm_word((1, 0), ("p", "q")) == ("q", "p")


def test_apply_three_cycle():
    # hand-applied left action: out[s(i)] = w[i] with 0->1->2->0
    s = (1, 2, 0)
    assert apply_perm_word(s, ("a", "b", "c")) == ("c", "a", "b")


def test_apply_is_left_action():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(0, 5)
        w = tuple(rng.choice("xyz") for _ in range(n))
        p = tuple(rng.sample(range(n), n))
        q = tuple(rng.sample(range(n), n))
        assert apply_perm_word(identity_perm(n), w) == w
        assert apply_perm_word(compose_perm(p, q), w) == apply_perm_word(
            p, apply_perm_word(q, w)
        )


def test_apply_length_mismatch():
    with pytest.raises(ValueError):
        apply_perm_word((0, 1), ("p",))


def test_closure_trivial_and_swap():
    assert group_closure([], (2, 0)).order == 1
    swap = ((1, 0), ())
    assert group_closure([swap], (2, 0)).order == 2


def test_closure_generates_s3():
    gens = [((1, 0, 2), ()), ((0, 2, 1), ())]
    g = group_closure(gens, (3, 0))
    # brute-force oracle: repeated products until no growth
    els = set(gens) | {identity_pair((3, 0))}
    while True:
        new = {compose_pair(a, b) for a in els for b in els} | {
            invert_pair(a) for a in els
        }
        if new <= els:
            break
        els |= new
    assert set(g.elements) == els
    assert g.order == 6


def test_closure_contains_inverses_and_divides():
    rng = random.Random(3)
    for _ in range(20):
        m, n = rng.randrange(0, 4), rng.randrange(0, 4)
        gens = []
        for _ in range(rng.randrange(0, 3)):
            gens.append(
                (tuple(rng.sample(range(m), m)), tuple(rng.sample(range(n), n)))
            )
        g = group_closure(gens, (m, n))
        assert (math.factorial(m) * math.factorial(n)) % g.order == 0
        for el in g.elements:
            assert invert_pair(el) in g
        assert identity_pair((m, n)) in g


def test_closure_degree_mismatch():
    with pytest.raises(ValueError):
        group_closure([((1, 0), (0,))], (2, 0))


def test_stabilizer_examples():
    assert stabilizer(("p", "q"), ()).order == 1
    assert stabilizer(("p", "p"), ()).order == 2
    g = stabilizer(("a", "a", "a", "b", "b"), ("c", "c", "c", "c"))
    assert g.order == math.factorial(3) * math.factorial(2) * math.factorial(4)


def test_stabilizer_fixes_words():
    a, b = ("x", "y", "x"), ("z",)
    for s, t in stabilizer(a, b).elements:
        assert apply_perm_word(s, a) == a
        assert apply_perm_word(t, b) == b


def test_stabilizer_degree_cap():
    with pytest.raises(CapacityError):
        stabilizer(tuple("abcdefg"), ())


def test_coset_reps_counts():
    full = stabilizer(("p", "p"), ())
    assert len(coset_reps(full)) == 1
    assert len(coset_reps(trivial_group((2, 0)))) == 2
    g = stabilizer(("a", "a", "a", "b", "b"), ("c", "c", "c", "c"))
    assert len(coset_reps(g)) == 2880 // 288


def test_coset_reps_partition_and_least():
    rng = random.Random(11)
    for _ in range(10):
        m, n = rng.randrange(0, 4), rng.randrange(0, 3)
        gens = [
            (tuple(rng.sample(range(m), m)), tuple(rng.sample(range(n), n)))
            for _ in range(rng.randrange(0, 3))
        ]
        g = group_closure(gens, (m, n))
        reps = coset_reps(g)
        assert len(reps) * g.order == math.factorial(m) * math.factorial(n)
        covered = set()
        for r in reps:
            coset = {compose_pair(r, el) for el in g.elements}
            assert min(coset) == r
            assert not (covered & coset)
            covered |= coset
        assert covered == set(all_pairs((m, n)))
        for r in reps:
            assert coset_rep_of(g, r) == r


def test_full_group():
    assert full_group((3, 2)).order == 12
    assert full_group((0, 0)).order == 1


def test_extend_place_map():
    f = {"A": "Z", "B": "Z"}
    assert extend_place_map(f, Multiset({"A": 1, "B": 1})) == Multiset({"Z": 2})
    assert extend_place_map({"A": "A", "B": "B"}, ("A", "B", "A")) == ("A", "B", "A")
    assert extend_place_map({"A": "B", "B": "B", "C": "C"}, ("A", "B", "A")) == (
        "B",
        "B",
        "B",
    )
    with pytest.raises(KeyError):
        extend_place_map({}, ("A",))


def test_extend_place_map_is_homomorphic():
    rng = random.Random(5)
    places = ["a", "b", "c"]
    for _ in range(30):
        f = {p: rng.choice(places) for p in places}
        x = Multiset({p: rng.randrange(0, 3) for p in places})
        y = Multiset({p: rng.randrange(0, 3) for p in places})
        assert extend_place_map(f, x + y) == extend_place_map(f, x) + extend_place_map(
            f, y
        )
        u = tuple(rng.choice(places) for _ in range(rng.randrange(0, 4)))
        v = tuple(rng.choice(places) for _ in range(rng.randrange(0, 4)))
        assert extend_place_map(f, u + v) == extend_place_map(f, u) + extend_place_map(
            f, v
        )


def test_multiset_basics():
    m = Multiset({"a": 2, "b": 0})
    assert m.items() == (("a", 2),)
    assert m + Multiset({"a": 1}) == Multiset({"a": 3})
    assert Multiset({"a": 1}) <= m
    assert not (m <= Multiset({"a": 1}))
    with pytest.raises(ValueError):
        m - Multiset({"a": 3})
    assert Multiset.from_word(("b", "a", "b")).sorted_word() == ("a", "b", "b")


def test_generating_set_regenerates():
    g = stabilizer(("a", "a", "b", "b"), ("c", "c"))
    regen = group_closure(g.generating_set(), g.degree_pair)
    assert regen == g
    assert identity_pair(g.degree_pair) not in g.generating_set()


def test_perm_inverse():
    for p in all_perms(4):
        assert compose_perm(p, invert_perm(p)) == identity_perm(4)
