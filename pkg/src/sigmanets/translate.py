"""Translations between the net kinds, on nets and on morphisms.

Net-level maps (all pure):

* ``f_pre``  pre-net -> sigma net: one free class per transition.
* ``g_pre``  sigma net -> pre-net: explode each class into one
  transition per isotropy coset, with its concrete word pair.
* ``h_pre``  pre-net -> sigma net: bundle transitions into classes by
  matching complete permutation families.
* ``f_pet``  sigma net -> Petri net: one transition per class, words
  collapsed to multisets.
* ``g_pet``  Petri net -> sigma net: lift each transition to its sorted
  word pair with the full word-fixing isotropy group.
* ``z1``     pre-net -> whole-grain net: one port per word position.
* ``z2``     whole-grain net -> sigma net: transitions with all linear
  orderings of their port fibers, permutations acting by reordering.
* ``erase_ordering`` / ``saturate_orderings``: the two composites
  pre-net -> Petri net and back, computed directly.

Each map has an ``<name>_mor`` companion acting on morphisms, so
functoriality is testable without re-deriving anything.
"""

from __future__ import annotations

import itertools

from .algebra import (
    CapacityError,
    DEGREE_CAP,
    Multiset,
    SEARCH_CAP,
    all_pairs,
    apply_pair,
    apply_perm_word,
    compose_pair,
    coset_rep_of,
    coset_reps,
    extend_place_map,
    identity_pair,
    invert_perm,
    stabilizer,
    trivial_group,
)
from .nets import (
    NetMorphism,
    PETRI,
    PRENET,
    PRESHEAF,
    SIGMA,
    WHOLEGRAIN,
    PetriNet,
    PreNet,
    SigmaNet,
    SigmaNetPresheaf,
    TransitionClass,
    WholeGrainNet,
    to_groupoid_with_map,
    to_presheaf,
    to_presheaf_with_elements,
)

#: Orientation of the permutation-family construction in ``h_pre``.
#: "cov": a family phi over base words (a, b) satisfies
#: src(phi(s, t)) = s.a and the action translates arguments on the
#: right.  The alternative "contra" uses inverse arguments throughout.
#: The adjunction bijection suite pins "cov"; "contra" breaks it.
H_PRE_VARIANT = "cov"


# pre-net <-> sigma net -------------------------------------------------


def f_pre(q: PreNet) -> SigmaNet:
    """Embed a pre-net as the sigma net with one trivial-isotropy class
    per transition (fully individual tokens)."""
    classes = [
        TransitionClass(t, q.src[t], q.tgt[t], trivial_group((len(q.src[t]), len(q.tgt[t]))))
        for t in q.transitions
    ]
    return SigmaNet(q.places, classes)


def f_pre_mor(m: NetMorphism, src: PreNet, dst: PreNet) -> NetMorphism:
    tmap = {}
    for t, u in m.transition_map.items():
        dp = (len(src.src[t]), len(src.tgt[t]))
        tmap[t] = (u, identity_pair(dp))
    return NetMorphism(SIGMA, dict(m.place_map), tmap)


def g_pre(n: SigmaNet) -> PreNet:
    """Explode a sigma net into the pre-net of its concrete transitions:
    one per isotropy coset of each class."""
    p = to_presheaf(n)
    tids = sorted(p.cell_of)
    return PreNet(
        n.places,
        tids,
        {t: p.cell_of[t][0] for t in tids},
        {t: p.cell_of[t][1] for t in tids},
    )


def g_pre_mor(m: NetMorphism, src: SigmaNet, dst: SigmaNet) -> NetMorphism:
    _, elems_src = to_presheaf_with_elements(src)
    _, elems_dst = to_presheaf_with_elements(dst)
    tmap = {}
    for c in src.classes:
        c2_id, w = m.transition_map[c.id]
        group2 = dst.class_by_id[c2_id].isotropy
        for rep, tid in elems_src[c.id].items():
            tmap[tid] = elems_dst[c2_id][coset_rep_of(group2, compose_pair(rep, w))]
    return NetMorphism(PRENET, dict(m.place_map), tmap)


def _family_words(base_words, pair):
    """Source/target words every family value must carry at argument
    ``pair``, per the configured orientation."""
    if H_PRE_VARIANT == "cov":
        return apply_pair(pair, base_words)
    inv = (invert_perm(pair[0]), invert_perm(pair[1]))
    return apply_pair(inv, base_words)


def _translate_argument(pair, g):
    """Argument of the original family that the translate-by-``g``
    family reads at ``pair``."""
    if H_PRE_VARIANT == "cov":
        return compose_pair(pair, g)
    return compose_pair((invert_perm(g[0]), invert_perm(g[1])), pair)


def h_pre_presheaf(q: PreNet, cap: int = SEARCH_CAP):
    """The presheaf of complete permutation families over a pre-net.

    A family over base words (a, b) with |a| = m, |b| = n assigns to
    every element of S_m x S_n a transition whose words are the
    correspondingly permuted base words.  Returns the presheaf and a
    lookup from (cell, family values in sorted-argument order) to the
    generated transition id.
    """
    signatures = sorted(
        {
            (Multiset.from_word(q.src[t]).items(), Multiset.from_word(q.tgt[t]).items())
            for t in q.transitions
        }
    )
    elements = {}  # (cell, values) -> family dict
    for sig_src, sig_tgt in signatures:
        a0 = Multiset(dict(sig_src)).sorted_word()
        b0 = Multiset(dict(sig_tgt)).sorted_word()
        dp = (len(a0), len(b0))
        if max(dp) > DEGREE_CAP:
            raise CapacityError(f"transition words longer than degree cap {DEGREE_CAP}")
        pairs = all_pairs(dp)
        candidates = []
        total = 1
        for pair in pairs:
            want_src, want_tgt = _family_words((a0, b0), pair)
            cand = [
                t
                for t in sorted(q.transitions)
                if q.src[t] == want_src and q.tgt[t] == want_tgt
            ]
            if not cand:
                total = 0
                break
            total *= len(cand)
            if total > cap:
                raise CapacityError("family search space too large")
            candidates.append(cand)
        if total == 0:
            continue
        base_families = [
            dict(zip(pairs, combo)) for combo in itertools.product(*candidates)
        ]
        for g in pairs:
            cell = _family_words((a0, b0), g)
            for fam in base_families:
                translated = {p: fam[_translate_argument(p, g)] for p in pairs}
                key = (cell, tuple(translated[p] for p in pairs))
                elements.setdefault(key, translated)
    order = sorted(elements)
    tid_of = {key: f"h{k}" for k, key in enumerate(order)}
    cells: dict = {}
    action: dict = {}
    for key, tid in tid_of.items():
        cell, _ = key
        cells.setdefault(cell, []).append(tid)
    for key, tid in tid_of.items():
        cell, _ = key
        fam = elements[key]
        dp = (len(cell[0]), len(cell[1]))
        pairs = all_pairs(dp)
        for g in pairs:
            target_cell = _family_words(cell, g)
            translated = {p: fam[_translate_argument(p, g)] for p in pairs}
            target_key = (target_cell, tuple(translated[p] for p in pairs))
            action[(g, tid)] = tid_of[target_key]
    lookup = {key: tid for key, tid in tid_of.items()}
    return SigmaNetPresheaf(q.places, cells, action), lookup


def h_pre_with_families(q: PreNet, cap: int = SEARCH_CAP):
    """``h_pre`` plus, per resulting class, the representative family as
    a mapping from perm pair to source transition."""
    presheaf, lookup = h_pre_presheaf(q, cap)
    net, elem_map = to_groupoid_with_map(presheaf)
    fam_of_tid = {tid: key for key, tid in lookup.items()}
    families = {}
    for c in net.classes:
        cell, values = fam_of_tid[c.id]
        pairs = all_pairs((len(cell[0]), len(cell[1])))
        families[c.id] = dict(zip(pairs, values))
    return net, families


def h_pre(q: PreNet, cap: int = SEARCH_CAP) -> SigmaNet:
    """Bundle pre-net transitions into classes wherever they complete a
    full permutation family; transitions that cannot be matched produce
    nothing."""
    return h_pre_with_families(q, cap)[0]


def h_pre_mor(m: NetMorphism, src: PreNet, dst: PreNet) -> NetMorphism:
    p_src, lookup_src = h_pre_presheaf(src)
    p_dst, lookup_dst = h_pre_presheaf(dst)
    net_src, _ = to_groupoid_with_map(p_src)
    net_dst, elem_map_dst = to_groupoid_with_map(p_dst)
    fam_of_tid = {tid: key for key, tid in lookup_src.items()}
    f, g = m.place_map, m.transition_map
    tmap = {}
    for c in net_src.classes:
        cell, values = fam_of_tid[c.id]
        image_cell = (
            extend_place_map(f, cell[0]),
            extend_place_map(f, cell[1]),
        )
        image_values = tuple(g[t] for t in values)
        image_tid = lookup_dst[(image_cell, image_values)]
        tmap[c.id] = elem_map_dst[image_tid]
    return NetMorphism(SIGMA, dict(f), tmap)


# sigma net <-> Petri net -----------------------------------------------


def f_pet(n: SigmaNet) -> PetriNet:
    """Collapse a sigma net to the Petri net of its transition classes."""
    return PetriNet(
        n.places,
        [c.id for c in n.classes],
        {c.id: Multiset.from_word(c.src_word) for c in n.classes},
        {c.id: Multiset.from_word(c.tgt_word) for c in n.classes},
    )


def f_pet_mor(m: NetMorphism, src: SigmaNet, dst: SigmaNet) -> NetMorphism:
    return NetMorphism(
        PETRI,
        dict(m.place_map),
        {c: c2 for c, (c2, _) in m.transition_map.items()},
    )


def _matching_perm(target_word, image_word):
    """A permutation w with w . target_word == image_word, matching equal
    letters in order."""
    positions: dict = {}
    for j, letter in enumerate(image_word):
        positions.setdefault(letter, []).append(j)
    w = [None] * len(target_word)
    taken = {k: 0 for k in positions}
    for i, letter in enumerate(target_word):
        js = positions.get(letter)
        if js is None or taken[letter] >= len(js):
            raise ValueError("words are not permutations of each other")
        w[i] = js[taken[letter]]
        taken[letter] += 1
    return tuple(w)


def g_pet(p: PetriNet) -> SigmaNet:
    """Lift a Petri net into the sigma net with the largest possible
    isotropy: sorted words fixed by their full stabilizer."""
    classes = []
    for t in p.transitions:
        a = p.src[t].sorted_word()
        b = p.tgt[t].sorted_word()
        if max(len(a), len(b)) > DEGREE_CAP:
            raise CapacityError(f"transition {t!r} exceeds the degree cap")
        classes.append(TransitionClass(t, a, b, stabilizer(a, b)))
    return SigmaNet(p.places, classes)


def g_pet_mor(m: NetMorphism, src: PetriNet, dst: PetriNet) -> NetMorphism:
    f = m.place_map
    tmap = {}
    for t, u in m.transition_map.items():
        a1 = src.src[t].sorted_word()
        b1 = src.tgt[t].sorted_word()
        a2 = dst.src[u].sorted_word()
        b2 = dst.tgt[u].sorted_word()
        w = (
            _matching_perm(a2, extend_place_map(f, a1)),
            _matching_perm(b2, extend_place_map(f, b1)),
        )
        group2 = stabilizer(a2, b2)
        tmap[t] = (u, coset_rep_of(group2, w))
    return NetMorphism(SIGMA, dict(f), tmap)


# pre-net <-> whole-grain net -------------------------------------------


def z1(q: PreNet) -> WholeGrainNet:
    """One input/output port per word position of each transition."""
    in_ports, out_ports = [], []
    in_place, in_trans, out_trans, out_place = {}, {}, {}, {}
    for t in q.transitions:
        for k, place in enumerate(q.src[t]):
            port = f"{t}.i{k}"
            in_ports.append(port)
            in_place[port] = place
            in_trans[port] = t
        for k, place in enumerate(q.tgt[t]):
            port = f"{t}.o{k}"
            out_ports.append(port)
            out_place[port] = place
            out_trans[port] = t
    return WholeGrainNet(
        q.places, q.transitions, in_ports, out_ports, in_place, in_trans, out_trans, out_place
    )


def z1_mor(m: NetMorphism, src: PreNet, dst: PreNet) -> NetMorphism:
    gi, go = {}, {}
    for t, u in m.transition_map.items():
        for k in range(len(src.src[t])):
            gi[f"{t}.i{k}"] = f"{u}.i{k}"
        for k in range(len(src.tgt[t])):
            go[f"{t}.o{k}"] = f"{u}.o{k}"
    return NetMorphism(
        WHOLEGRAIN, dict(m.place_map), dict(m.transition_map), gi, go
    )


def z2_presheaf(w: WholeGrainNet, cap: int = SEARCH_CAP):
    """Presheaf whose transitions are whole-grain transitions equipped
    with linear orderings of their port fibers; permutations reorder.

    Returns the presheaf plus a lookup from (transition, input-port
    order, output-port order) to generated transition id.
    """
    elements = []
    for t in sorted(w.transitions):
        fin, fout = w.in_fiber(t), w.out_fiber(t)
        if max(len(fin), len(fout)) > DEGREE_CAP:
            raise CapacityError(f"fiber of {t!r} exceeds the degree cap")
        count = 1
        for k in range(2, len(fin) + 1):
            count *= k
        for k in range(2, len(fout) + 1):
            count *= k
        if count > cap:
            raise CapacityError("ordering space too large")
        for oi in itertools.permutations(fin):
            for oo in itertools.permutations(fout):
                elements.append((t, oi, oo))
    elements.sort()
    tid_of = {}
    counters: dict = {}
    for el in elements:
        t = el[0]
        k = counters.get(t, 0)
        counters[t] = k + 1
        tid_of[el] = f"{t}@{k}"
    cells: dict = {}
    action: dict = {}
    for (t, oi, oo), tid in tid_of.items():
        cell = (
            tuple(w.in_place[p] for p in oi),
            tuple(w.out_place[p] for p in oo),
        )
        cells.setdefault(cell, []).append(tid)
        dp = (len(oi), len(oo))
        for g in all_pairs(dp):
            inv_s, inv_t = invert_perm(g[0]), invert_perm(g[1])
            new_oi = tuple(oi[inv_s[j]] for j in range(len(oi)))
            new_oo = tuple(oo[inv_t[j]] for j in range(len(oo)))
            action[(g, tid)] = tid_of[(t, new_oi, new_oo)]
    return SigmaNetPresheaf(w.places, cells, action), tid_of


def z2(w: WholeGrainNet, cap: int = SEARCH_CAP) -> SigmaNet:
    presheaf, _ = z2_presheaf(w, cap)
    return to_groupoid_with_map(presheaf)[0]


def z2_mor(m: NetMorphism, src: WholeGrainNet, dst: WholeGrainNet) -> NetMorphism:
    p_src, lookup_src = z2_presheaf(src)
    p_dst, lookup_dst = z2_presheaf(dst)
    net_src, _ = to_groupoid_with_map(p_src)
    _, elem_map_dst = to_groupoid_with_map(p_dst)
    el_of_tid = {tid: el for el, tid in lookup_src.items()}
    tmap = {}
    for c in net_src.classes:
        t, oi, oo = el_of_tid[c.id]
        image = (
            m.transition_map[t],
            tuple(m.in_port_map[p] for p in oi),
            tuple(m.out_port_map[p] for p in oo),
        )
        tmap[c.id] = elem_map_dst[lookup_dst[image]]
    return NetMorphism(SIGMA, dict(m.place_map), tmap)


# direct composites ------------------------------------------------------


def erase_ordering(q: PreNet) -> PetriNet:
    """Forget input/output orderings: words become multisets."""
    return PetriNet(
        q.places,
        q.transitions,
        {t: Multiset.from_word(q.src[t]) for t in q.transitions},
        {t: Multiset.from_word(q.tgt[t]) for t in q.transitions},
    )


def erase_ordering_mor(m: NetMorphism, src: PreNet, dst: PreNet) -> NetMorphism:
    return NetMorphism(PETRI, dict(m.place_map), dict(m.transition_map))


def saturate_orderings(p: PetriNet) -> PreNet:
    """Give every transition all possible input/output orderings: one
    pre-net transition per coset of the full word stabilizer."""
    transitions = []
    src, tgt = {}, {}
    for t in sorted(p.transitions):
        a = p.src[t].sorted_word()
        b = p.tgt[t].sorted_word()
        if max(len(a), len(b)) > DEGREE_CAP:
            raise CapacityError(f"transition {t!r} exceeds the degree cap")
        for k, rep in enumerate(coset_reps(stabilizer(a, b))):
            tid = f"{t}#{k}"
            transitions.append(tid)
            src[tid], tgt[tid] = apply_pair(rep, (a, b))
    return PreNet(p.places, transitions, src, tgt)


def saturate_orderings_mor(m: NetMorphism, src: PetriNet, dst: PetriNet) -> NetMorphism:
    lifted = g_pet_mor(m, src, dst)
    return g_pre_mor(lifted, g_pet(src), g_pet(dst))


# registry for the CLI and the adjunction lab ---------------------------

FUNCTORS = {
    "f_pre": (PRENET, SIGMA, f_pre),
    "g_pre": (SIGMA, PRENET, g_pre),
    "h_pre": (PRENET, SIGMA, h_pre),
    "f_pet": (SIGMA, PETRI, f_pet),
    "g_pet": (PETRI, SIGMA, g_pet),
    "z1": (PRENET, WHOLEGRAIN, z1),
    "z2": (WHOLEGRAIN, SIGMA, z2),
    "erase_ordering": (PRENET, PETRI, erase_ordering),
    "saturate_orderings": (PETRI, PRENET, saturate_orderings),
    "to_presheaf": (SIGMA, PRESHEAF, to_presheaf),
    "to_groupoid": (PRESHEAF, SIGMA, lambda p: to_groupoid_with_map(p)[0]),
}

FUNCTORS_MOR = {
    "f_pre": f_pre_mor,
    "g_pre": g_pre_mor,
    "h_pre": h_pre_mor,
    "f_pet": f_pet_mor,
    "g_pet": g_pet_mor,
    "z1": z1_mor,
    "z2": z2_mor,
    "erase_ordering": erase_ordering_mor,
    "saturate_orderings": saturate_orderings_mor,
}


def apply_functor(name: str, net):
    if name not in FUNCTORS:
        raise KeyError(f"unknown translation {name!r}")
    src_kind, _, fn = FUNCTORS[name]
    if net.kind != src_kind:
        raise ValueError(f"{name} expects a {src_kind} net, got {net.kind}")
    return fn(net)


def apply_functor_mor(name: str, m: NetMorphism, src, dst) -> NetMorphism:
    if name not in FUNCTORS_MOR:
        raise KeyError(f"no morphism action for {name!r}")
    return FUNCTORS_MOR[name](m, src, dst)
