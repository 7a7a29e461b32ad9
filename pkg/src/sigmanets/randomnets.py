"""Seeded random nets, markings and morphisms for the property suites.

Every value is deterministic from (seed, index): trial i of a run uses
``rng_for(seed, i)``.  Sizes are kept small on purpose (at most 3
places, 3 transitions or classes, word length 3) so that exhaustive
hom-set enumeration stays instant.
"""

from __future__ import annotations

import random

from .algebra import Multiset, group_closure, stabilizer, trivial_group
from .nets import (
    PetriNet,
    PreNet,
    SigmaNet,
    TransitionClass,
    WholeGrainNet,
    hom_set,
)

PLACE_POOL = ("p0", "p1", "p2")


def rng_for(seed, index) -> random.Random:
    return random.Random(f"{seed}:{index}")


def _places(rng, lo=1, hi=3):
    return list(PLACE_POOL[: rng.randint(lo, hi)])


def _word(rng, places, max_len=3):
    return tuple(rng.choice(places) for _ in range(rng.randint(0, max_len)))


def random_petri(rng, max_trans=3) -> PetriNet:
    places = _places(rng)
    n = rng.randint(0, max_trans)
    transitions = [f"t{i}" for i in range(n)]
    src = {t: Multiset(_word(rng, places)) for t in transitions}
    tgt = {t: Multiset(_word(rng, places)) for t in transitions}
    return PetriNet(places, transitions, src, tgt)


def random_prenet(rng, max_trans=3, max_len=3) -> PreNet:
    places = _places(rng)
    n = rng.randint(0, max_trans)
    transitions = [f"t{i}" for i in range(n)]
    src = {t: _word(rng, places, max_len) for t in transitions}
    tgt = {t: _word(rng, places, max_len) for t in transitions}
    return PreNet(places, transitions, src, tgt)


def random_sigma(rng, max_classes=3, max_len=3) -> SigmaNet:
    places = _places(rng)
    classes = []
    for i in range(rng.randint(0, max_classes)):
        a = _word(rng, places, max_len)
        b = _word(rng, places, max_len)
        fixing = stabilizer(a, b)
        gens = [rng.choice(fixing.elements) for _ in range(rng.randint(0, 2))]
        iso = group_closure(gens, (len(a), len(b)))
        classes.append(TransitionClass(f"c{i}", a, b, iso))
    return SigmaNet(places, classes)


def random_wholegrain(rng, max_trans=2, max_fiber=2) -> WholeGrainNet:
    places = _places(rng, 1, 2)
    n = rng.randint(0, max_trans)
    transitions = [f"t{i}" for i in range(n)]
    in_ports, out_ports = [], []
    in_place, in_trans, out_trans, out_place = {}, {}, {}, {}
    for t in transitions:
        for k in range(rng.randint(0, max_fiber)):
            p = f"{t}.i{k}"
            in_ports.append(p)
            in_place[p] = rng.choice(places)
            in_trans[p] = t
        for k in range(rng.randint(0, max_fiber)):
            p = f"{t}.o{k}"
            out_ports.append(p)
            out_place[p] = rng.choice(places)
            out_trans[p] = t
    return WholeGrainNet(
        places, transitions, in_ports, out_ports, in_place, in_trans, out_trans, out_place
    )


def random_marking(rng, places, max_total=4) -> Multiset:
    total = rng.randint(0, max_total)
    return Multiset(rng.choice(places) for _ in range(total))


def random_morphism(rng, src, dst):
    """A uniformly chosen element of hom(src, dst), or None if empty."""
    homs = hom_set(src, dst)
    if not homs:
        return None
    return homs[rng.randrange(len(homs))]
