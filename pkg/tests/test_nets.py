import itertools
import math
import random

import pytest

from sigmanets import fixtures
from sigmanets.algebra import (
    Multiset,
    apply_pair,
    compose_pair,
    extend_place_map,
    group_closure,
    identity_pair,
    trivial_group,
)
from sigmanets.nets import (
    NetMorphism,
    PetriNet,
    PreNet,
    SigmaNet,
    SigmaNetPresheaf,
    TransitionClass,
    compose_morphisms,
    hom_set,
    identity_morphism,
    net_isomorphic,
    to_groupoid,
    to_presheaf,
    validate_morphism,
    validate_net,
)
from sigmanets.randomnets import random_sigma, rng_for


def test_fixture_nets_validate():
    for name in ("intro", "pq", "pp-full", "pp-free", "mixed", "xyz", "dup", "n32"):
        assert validate_net(fixtures.load(name)) == []


def test_validate_rejects_unknown_place():
    bad = PetriNet(["a"], ["t"], {"t": Multiset({"zzz": 1})}, {"t": Multiset()})
    assert any("unknown place" in e for e in validate_net(bad))


def test_validate_rejects_nonfixing_isotropy():
    swap_on_pq = group_closure([((1, 0), ())], (2, 0))
    bad = SigmaNet(["p", "q"], [TransitionClass("t", ("p", "q"), (), swap_on_pq)])
    assert any("not word-fixing" in e for e in validate_net(bad))


def test_identity_morphism_validates():
    for name in ("intro", "pq", "pp-full", "mixed", "xyz"):
        net = fixtures.load(name)
        assert validate_morphism(identity_morphism(net), net, net) == []


def test_ordering_obstruction():
    v1 = fixtures.load("morph-v1")
    v2 = fixtures.load("morph-v2")
    m = NetMorphism("prenet", {"A": "A", "B": "B", "C": "C"}, {"u": "u"})
    errors = validate_morphism(m, v1, v2)
    assert any("source square" in e for e in errors)
    assert hom_set(v1, v2) == []


def _erase(prenet):
    return PetriNet(
        prenet.places,
        prenet.transitions,
        {t: Multiset.from_word(prenet.src[t]) for t in prenet.transitions},
        {t: Multiset.from_word(prenet.tgt[t]) for t in prenet.transitions},
    )


def test_erased_versions_admit_exactly_one_morphism():
    v1, v2 = _erase(fixtures.load("morph-v1")), _erase(fixtures.load("morph-v2"))
    m = NetMorphism("petri", {"A": "A", "B": "B", "C": "C"}, {"u": "u"})
    assert validate_morphism(m, v1, v2) == []
    homs = hom_set(v1, v2)
    assert len(homs) == 1
    # independent oracle: walk all 27 place maps by hand
    count = 0
    for images in itertools.product("ABC", repeat=3):
        f = dict(zip("ABC", images))
        src_ok = extend_place_map(f, Multiset({"A": 2, "B": 1})) == Multiset(
            {"A": 2, "B": 1}
        )
        tgt_ok = extend_place_map(f, Multiset({"C": 1})) == Multiset({"C": 1})
        if src_ok and tgt_ok:
            count += 1
    assert count == 1


def test_hom_set_contains_identity_and_is_monoid():
    for name in ("intro", "xyz", "pp-full", "mixed"):
        net = fixtures.load(name)
        homs = hom_set(net, net)
        ident = identity_morphism(net)
        assert ident in homs
        for m1 in homs:
            for m2 in homs:
                comp = compose_morphisms(m1, m2, net)
                assert validate_morphism(comp, net, net) == []
                assert comp in homs


def test_to_presheaf_pp_full():
    p = to_presheaf(fixtures.load("pp-full"))
    assert p.cells == {(("p", "p"), ()): ("t#0",)}
    swap = ((1, 0), ())
    assert p.act(swap, "t#0") == "t#0"


def test_to_presheaf_pp_free():
    p = to_presheaf(fixtures.load("pp-free"))
    assert p.cells == {(("p", "p"), ()): ("t#0", "t#1")}
    swap = ((1, 0), ())
    assert p.act(swap, "t#0") == "t#1"
    assert p.act(swap, "t#1") == "t#0"


def test_to_presheaf_pq():
    p = to_presheaf(fixtures.load("pq"))
    assert p.cells[(("p", "q"), ())] == ("t#0",)
    assert p.cells[(("q", "p"), ())] == ("t#1",)
    swap = ((1, 0), ())
    assert p.act(swap, "t#0") == "t#1"


def test_counting_law_on_fixtures():
    for name in ("pq", "pp-full", "pp-free", "mixed"):
        net = fixtures.load(name)
        p = to_presheaf(net)
        for c in net.classes:
            orbit = [
                t for t in p.cell_of if t.startswith(f"{c.id}#")
            ]
            m, n = c.degree_pair
            assert len(orbit) * c.isotropy.order == math.factorial(m) * math.factorial(n)


def test_presheaf_roundtrip_mixed():
    net = fixtures.load("mixed")
    back = to_groupoid(to_presheaf(net))
    assert net_isomorphic(net, back) is not None


def test_presheaf_roundtrip_random():
    for i in range(25):
        net = random_sigma(rng_for(424, i))
        back = to_groupoid(to_presheaf(net))
        iso = net_isomorphic(net, back)
        assert iso is not None
        assert validate_morphism(iso, net, back) == []


def test_roundtrip_other_direction():
    # presheaf built by hand, then to_groupoid, then back
    cells = {(("p", "q"), ()): ("t1",), (("q", "p"), ()): ("t2",)}
    swap = ((1, 0), ())
    ident = ((0, 1), ())
    action = {
        (ident, "t1"): "t1",
        (ident, "t2"): "t2",
        (swap, "t1"): "t2",
        (swap, "t2"): "t1",
    }
    p = SigmaNetPresheaf(["p", "q"], cells, action)
    assert validate_net(p) == []
    g = to_groupoid(p)
    assert len(g.classes) == 1
    assert g.classes[0].isotropy.is_trivial()
    p2 = to_presheaf(g)
    assert sorted(len(v) for v in p2.cells.values()) == [1, 1]


def test_two_class_presheaf_from_relabeled_action():
    # four transitions over (pq, eps)/(qp, eps); both choices of the swap
    # action give isomorphic two-class sigma nets with trivial isotropy
    cells = {(("p", "q"), ()): ("t1", "u1"), (("q", "p"), ()): ("t2", "u2")}
    swap = ((1, 0), ())
    ident = ((0, 1), ())

    def build(swap_images):
        action = {(ident, t): t for t in ("t1", "t2", "u1", "u2")}
        for t, out in swap_images.items():
            action[(swap, t)] = out
        return SigmaNetPresheaf(["p", "q"], cells, action)

    straight = build({"t1": "t2", "t2": "t1", "u1": "u2", "u2": "u1"})
    crossed = build({"t1": "u2", "u2": "t1", "u1": "t2", "t2": "u1"})
    g1, g2 = to_groupoid(straight), to_groupoid(crossed)
    assert len(g1.classes) == len(g2.classes) == 2
    assert all(c.isotropy.is_trivial() for c in g1.classes)
    assert net_isomorphic(g1, g2) is not None


def test_empty_presheaf():
    g = to_groupoid(SigmaNetPresheaf(["p"], {}, {}))
    assert g.classes == ()


def test_iso_distinguishes_isotropy_orders():
    full = fixtures.load("pp-full")
    free = fixtures.load("pp-free")
    assert net_isomorphic(full, free) is None


def test_iso_place_count_mismatch():
    assert net_isomorphic(fixtures.load("pq"), fixtures.load("pp-full")) is None


def test_iso_on_relabeled_petri():
    intro = fixtures.load("intro")
    relabeled = PetriNet(
        ["x", "y", "z"],
        ["s1", "s2"],
        {"s1": Multiset({"x": 1, "y": 1}), "s2": Multiset({"z": 1})},
        {"s1": Multiset({"z": 1}), "s2": Multiset({"y": 2})},
    )
    iso = net_isomorphic(intro, relabeled)
    assert iso is not None
    assert validate_morphism(iso, intro, relabeled) == []


def test_sigma_morphism_witness_semantics():
    # collective class cannot map to a free class, but the converse works
    full, free = fixtures.load("pp-full"), fixtures.load("pp-free")
    assert hom_set(full, free) == []
    homs = hom_set(free, full)
    assert len(homs) == 1
    assert validate_morphism(homs[0], free, full) == []


def test_sigma_hom_set_matches_validation():
    for i in range(10):
        n1 = random_sigma(rng_for(77, 2 * i))
        n2 = random_sigma(rng_for(77, 2 * i + 1))
        for m in hom_set(n1, n2):
            assert validate_morphism(m, n1, n2) == []


def test_sigma_validation_rejects_bad_witness():
    # a witness that reorders the image words is caught
    pq = fixtures.load("pq")
    good = hom_set(pq, pq)
    assert identity_morphism(pq) in good
    swapped = NetMorphism(
        "sigma", {"p": "p", "q": "q"}, {"t": ("t", (((1, 0)), ()))}
    )
    swapped.transition_map["t"] = ("t", ((1, 0), ()))
    assert validate_morphism(swapped, pq, pq) != []


def test_wholegrain_roundtrip_and_validation():
    from sigmanets.translate import z1

    wg = z1(fixtures.load("xyz"))
    assert validate_net(wg) == []
    ident = identity_morphism(wg)
    assert validate_morphism(ident, wg, wg) == []
    homs = hom_set(wg, wg)
    assert ident in homs
