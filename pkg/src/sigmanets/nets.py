"""The four net data types, their morphisms, morphism enumeration and
validation, isomorphism testing, and the groupoid <-> presheaf
conversion for sigma nets.

Sigma nets come in two interchangeable views:

* the groupoid view (``SigmaNet``): one record per transition class,
  carrying a representative word pair and the isotropy subgroup that
  fixes the representative;
* the presheaf view (``SigmaNetPresheaf``): concrete transitions placed
  in cells indexed by word pairs, with the symmetric-group action spelled
  out as a table.

The presheaf view is quotient-free, so sigma-net morphisms are always
validated there; the groupoid view stores morphisms compactly as a class
map plus one witness perm pair per class (the coset of the witness is
what matters, so witnesses are canonicalized to coset representatives).
"""

from __future__ import annotations

import itertools
import math
from typing import Mapping, Optional

from .algebra import (
    CapacityError,
    Multiset,
    PermGroup,
    SEARCH_CAP,
    _greedy_generators,
    all_pairs,
    apply_pair,
    compose_pair,
    coset_rep_of,
    coset_reps,
    coset_table,
    extend_place_map,
    full_group,
    identity_pair,
    stabilizer,
)

PETRI = "petri"
PRENET = "prenet"
SIGMA = "sigma"
PRESHEAF = "sigma-presheaf"
WHOLEGRAIN = "wholegrain"


class PetriNet:
    """Places plus transitions typed by source/target multisets."""

    kind = PETRI

    def __init__(self, places, transitions, src: Mapping, tgt: Mapping):
        self.places = tuple(places)
        self.transitions = tuple(transitions)
        self.src = {t: Multiset(src[t]) for t in self.transitions}
        self.tgt = {t: Multiset(tgt[t]) for t in self.transitions}

    def __eq__(self, other):
        return (
            isinstance(other, PetriNet)
            and sorted(self.places) == sorted(other.places)
            and sorted(self.transitions) == sorted(other.transitions)
            and self.src == other.src
            and self.tgt == other.tgt
        )

    def __repr__(self):
        return f"PetriNet(places={len(self.places)}, transitions={len(self.transitions)})"


class PreNet:
    """Places plus transitions typed by source/target words."""

    kind = PRENET

    def __init__(self, places, transitions, src: Mapping, tgt: Mapping):
        self.places = tuple(places)
        self.transitions = tuple(transitions)
        self.src = {t: tuple(src[t]) for t in self.transitions}
        self.tgt = {t: tuple(tgt[t]) for t in self.transitions}

    def __eq__(self, other):
        return (
            isinstance(other, PreNet)
            and sorted(self.places) == sorted(other.places)
            and sorted(self.transitions) == sorted(other.transitions)
            and self.src == other.src
            and self.tgt == other.tgt
        )

    def __repr__(self):
        return f"PreNet(places={len(self.places)}, transitions={len(self.transitions)})"


class TransitionClass:
    """One transition class: representative word pair + isotropy group."""

    __slots__ = ("id", "src_word", "tgt_word", "isotropy")

    def __init__(self, id, src_word, tgt_word, isotropy: PermGroup):
        self.id = id
        self.src_word = tuple(src_word)
        self.tgt_word = tuple(tgt_word)
        self.isotropy = isotropy

    @property
    def degree_pair(self):
        return (len(self.src_word), len(self.tgt_word))

    def __eq__(self, other):
        return (
            isinstance(other, TransitionClass)
            and self.id == other.id
            and self.src_word == other.src_word
            and self.tgt_word == other.tgt_word
            and self.isotropy == other.isotropy
        )

    def __repr__(self):
        return (
            f"TransitionClass({self.id}: {self.src_word}->{self.tgt_word}, "
            f"|G|={self.isotropy.order})"
        )


class SigmaNet:
    kind = SIGMA

    def __init__(self, places, classes):
        self.places = tuple(places)
        self.classes = tuple(classes)
        self.class_by_id = {c.id: c for c in self.classes}

    # sigma nets keep "transitions" naming for the class ids so generic
    # code can treat all net kinds uniformly
    @property
    def transitions(self):
        return tuple(c.id for c in self.classes)

    def __eq__(self, other):
        return (
            isinstance(other, SigmaNet)
            and sorted(self.places) == sorted(other.places)
            and sorted(self.class_by_id) == sorted(other.class_by_id)
            and all(self.class_by_id[k] == other.class_by_id[k] for k in self.class_by_id)
        )

    def __repr__(self):
        return f"SigmaNet(places={len(self.places)}, classes={len(self.classes)})"


class SigmaNetPresheaf:
    """Concrete transitions in word-pair cells with an explicit action.

    ``cells`` maps (src_word, tgt_word) to a sorted tuple of transition
    ids; ``action`` maps (perm_pair, tid) to a tid.  The action must be
    total over S_m x S_n for the degrees of each occupied cell.
    """

    kind = PRESHEAF

    def __init__(self, places, cells: Mapping, action: Mapping):
        self.places = tuple(places)
        self.cells = {k: tuple(sorted(v)) for k, v in cells.items() if len(tuple(v))}
        self.action = dict(action)
        self.cell_of = {}
        for cell, tids in self.cells.items():
            for tid in tids:
                if tid in self.cell_of:
                    raise ValueError(f"transition id {tid!r} occurs in two cells")
                self.cell_of[tid] = cell

    @property
    def transitions(self):
        return tuple(sorted(self.cell_of))

    def act(self, pair, tid):
        return self.action[(pair, tid)]

    def __eq__(self, other):
        return (
            isinstance(other, SigmaNetPresheaf)
            and sorted(self.places) == sorted(other.places)
            and self.cells == other.cells
            and self.action == other.action
        )

    def __repr__(self):
        return (
            f"SigmaNetPresheaf(places={len(self.places)}, "
            f"transitions={len(self.cell_of)}, cells={len(self.cells)})"
        )


class WholeGrainNet:
    """Span-shaped net: places <- inputs -> transitions <- outputs -> places."""

    kind = WHOLEGRAIN

    def __init__(
        self,
        places,
        transitions,
        in_ports,
        out_ports,
        in_place: Mapping,
        in_trans: Mapping,
        out_trans: Mapping,
        out_place: Mapping,
    ):
        self.places = tuple(places)
        self.transitions = tuple(transitions)
        self.in_ports = tuple(in_ports)
        self.out_ports = tuple(out_ports)
        self.in_place = dict(in_place)
        self.in_trans = dict(in_trans)
        self.out_trans = dict(out_trans)
        self.out_place = dict(out_place)

    def in_fiber(self, t):
        return tuple(sorted(p for p in self.in_ports if self.in_trans[p] == t))

    def out_fiber(self, t):
        return tuple(sorted(p for p in self.out_ports if self.out_trans[p] == t))

    def __eq__(self, other):
        return (
            isinstance(other, WholeGrainNet)
            and sorted(self.places) == sorted(other.places)
            and sorted(self.transitions) == sorted(other.transitions)
            and sorted(self.in_ports) == sorted(other.in_ports)
            and sorted(self.out_ports) == sorted(other.out_ports)
            and self.in_place == other.in_place
            and self.in_trans == other.in_trans
            and self.out_trans == other.out_trans
            and self.out_place == other.out_place
        )

    def __repr__(self):
        return (
            f"WholeGrainNet(places={len(self.places)}, transitions="
            f"{len(self.transitions)}, ports={len(self.in_ports)}+{len(self.out_ports)})"
        )


class NetMorphism:
    """A morphism of nets of one kind.

    ``transition_map`` holds, per kind:

    * petri / prenet: transition id -> transition id;
    * sigma: class id -> (class id, witness perm pair), the witness
      canonicalized to the representative of its coset in the target
      class's isotropy group;
    * wholegrain: transition id -> transition id, with the port maps in
      ``in_port_map`` / ``out_port_map``.
    """

    def __init__(self, kind, place_map, transition_map, in_port_map=None, out_port_map=None):
        self.kind = kind
        self.place_map = dict(place_map)
        self.transition_map = dict(transition_map)
        self.in_port_map = dict(in_port_map) if in_port_map is not None else None
        self.out_port_map = dict(out_port_map) if out_port_map is not None else None

    def __eq__(self, other):
        return (
            isinstance(other, NetMorphism)
            and self.kind == other.kind
            and self.place_map == other.place_map
            and self.transition_map == other.transition_map
            and self.in_port_map == other.in_port_map
            and self.out_port_map == other.out_port_map
        )

    def __hash__(self):
        frozen = (
            self.kind,
            frozenset(self.place_map.items()),
            frozenset(self.transition_map.items()),
            frozenset(self.in_port_map.items()) if self.in_port_map is not None else None,
            frozenset(self.out_port_map.items()) if self.out_port_map is not None else None,
        )
        return hash(frozen)

    def __repr__(self):
        return f"NetMorphism({self.kind}, f={self.place_map}, g={self.transition_map})"


def identity_morphism(net) -> NetMorphism:
    f = {p: p for p in net.places}
    if net.kind == SIGMA:
        tmap = {
            c.id: (c.id, coset_rep_of(c.isotropy, identity_pair(c.degree_pair)))
            for c in net.classes
        }
        return NetMorphism(SIGMA, f, tmap)
    if net.kind == WHOLEGRAIN:
        return NetMorphism(
            WHOLEGRAIN,
            f,
            {t: t for t in net.transitions},
            {p: p for p in net.in_ports},
            {p: p for p in net.out_ports},
        )
    return NetMorphism(net.kind, f, {t: t for t in net.transitions})


def compose_morphisms(first: NetMorphism, then: NetMorphism, dst=None) -> NetMorphism:
    """Diagrammatic composite: ``first`` followed by ``then``.

    For sigma morphisms the composite witness is the composite of
    witnesses, re-canonicalized, which needs the final target net.
    """
    if first.kind != then.kind:
        raise ValueError("kind mismatch")
    f = {p: then.place_map[v] for p, v in first.place_map.items()}
    if first.kind == SIGMA:
        if dst is None:
            raise ValueError("sigma composition needs the target net")
        tmap = {}
        for c, (c2, w1) in first.transition_map.items():
            c3, w2 = then.transition_map[c2]
            group = dst.class_by_id[c3].isotropy
            tmap[c] = (c3, coset_rep_of(group, compose_pair(w1, w2)))
        return NetMorphism(SIGMA, f, tmap)
    g = {t: then.transition_map[v] for t, v in first.transition_map.items()}
    if first.kind == WHOLEGRAIN:
        gi = {p: then.in_port_map[v] for p, v in first.in_port_map.items()}
        go = {p: then.out_port_map[v] for p, v in first.out_port_map.items()}
        return NetMorphism(WHOLEGRAIN, f, g, gi, go)
    return NetMorphism(first.kind, f, g)


# validation -----------------------------------------------------------


def validate_net(net) -> list:
    """All invariant violations of a net value; empty means valid."""
    errors = []
    places = set(net.places)
    if len(places) != len(net.places):
        errors.append("duplicate place ids")

    def check_support(label, value):
        support = value.support() if isinstance(value, Multiset) else set(value)
        for p in support:
            if p not in places:
                errors.append(f"{label} references unknown place {p!r}")

    if net.kind == PETRI or net.kind == PRENET:
        if len(set(net.transitions)) != len(net.transitions):
            errors.append("duplicate transition ids")
        for t in net.transitions:
            check_support(f"transition {t!r} source", net.src[t])
            check_support(f"transition {t!r} target", net.tgt[t])
    elif net.kind == SIGMA:
        if len(net.class_by_id) != len(net.classes):
            errors.append("duplicate class ids")
        for c in net.classes:
            check_support(f"class {c.id!r} source", c.src_word)
            check_support(f"class {c.id!r} target", c.tgt_word)
            if c.isotropy.degree_pair != c.degree_pair:
                errors.append(f"class {c.id!r}: isotropy degrees do not match words")
                continue
            fixing = stabilizer(c.src_word, c.tgt_word)
            if not all(g in fixing for g in c.isotropy.elements):
                errors.append(f"class {c.id!r}: isotropy not word-fixing")
    elif net.kind == PRESHEAF:
        errors.extend(_validate_presheaf(net))
    elif net.kind == WHOLEGRAIN:
        for p in net.in_ports:
            if net.in_place.get(p) not in places:
                errors.append(f"input port {p!r} maps to unknown place")
            if net.in_trans.get(p) not in set(net.transitions):
                errors.append(f"input port {p!r} maps to unknown transition")
        for p in net.out_ports:
            if net.out_place.get(p) not in places:
                errors.append(f"output port {p!r} maps to unknown place")
            if net.out_trans.get(p) not in set(net.transitions):
                errors.append(f"output port {p!r} maps to unknown transition")
    else:
        errors.append(f"unknown net kind {net.kind!r}")
    return errors


def _validate_presheaf(net: SigmaNetPresheaf) -> list:
    errors = []
    places = set(net.places)
    degree_pairs = set()
    for (a, b), tids in net.cells.items():
        if any(p not in places for p in a + b):
            errors.append(f"cell {(a, b)} references unknown place")
        degree_pairs.add((len(a), len(b)))
    # the action must be total, cell-consistent and bijective per pair
    for (a, b), tids in net.cells.items():
        dp = (len(a), len(b))
        for pair in all_pairs(dp):
            target_cell = apply_pair(pair, (a, b))
            for tid in tids:
                got = net.action.get((pair, tid))
                if got is None:
                    errors.append(f"action missing for {pair} on {tid!r}")
                    continue
                if net.cell_of.get(got) != target_cell:
                    errors.append(
                        f"action of {pair} sends {tid!r} outside cell {target_cell}"
                    )
        ident = identity_pair(dp)
        for tid in tids:
            if net.action.get((ident, tid)) != tid:
                errors.append(f"identity does not fix {tid!r}")
    if errors:
        return errors
    # functoriality: generators against all pairs suffices by induction
    for dp in degree_pairs:
        gens = full_group(dp).generators or ()
        pairs = all_pairs(dp)
        tids = [t for t, cell in net.cell_of.items() if (len(cell[0]), len(cell[1])) == dp]
        for g in gens:
            for h in pairs:
                gh = compose_pair(g, h)
                for tid in tids:
                    if net.action[(gh, tid)] != net.action[(g, net.action[(h, tid)])]:
                        errors.append(
                            f"action not functorial at {g} o {h} on {tid!r}"
                        )
        # bijectivity cell-by-cell
        for g in gens:
            for (a, b), cell_tids in net.cells.items():
                if (len(a), len(b)) != dp:
                    continue
                image = {net.action[(g, t)] for t in cell_tids}
                if len(image) != len(cell_tids):
                    errors.append(f"action of {g} not injective on cell {(a, b)}")
    return errors


def validate_morphism(m: NetMorphism, src, dst) -> list:
    """Kind-specific commuting conditions; empty list means valid."""
    errors = []
    if m.kind != src.kind or src.kind != dst.kind:
        return ["kind mismatch"]
    for p in src.places:
        if m.place_map.get(p) not in set(dst.places):
            errors.append(f"place {p!r} not mapped into target places")
    if errors:
        return errors
    f = m.place_map
    if src.kind in (PETRI, PRENET):
        for t in src.transitions:
            u = m.transition_map.get(t)
            if u not in set(dst.transitions):
                errors.append(f"transition {t!r} not mapped into target transitions")
                continue
            if extend_place_map(f, src.src[t]) != dst.src[u]:
                errors.append(f"source square fails at {t!r}")
            if extend_place_map(f, src.tgt[t]) != dst.tgt[u]:
                errors.append(f"target square fails at {t!r}")
        return errors
    if src.kind == SIGMA:
        return _validate_sigma_morphism(m, src, dst)
    if src.kind == WHOLEGRAIN:
        return _validate_wholegrain_morphism(m, src, dst)
    return [f"unsupported kind {src.kind!r}"]


def _validate_sigma_morphism(m, src, dst) -> list:
    # check in the presheaf view: the induced cell maps must form a
    # natural transformation
    errors = []
    f = m.place_map
    for c in src.classes:
        entry = m.transition_map.get(c.id)
        if entry is None:
            errors.append(f"class {c.id!r} unmapped")
            continue
        c2_id, witness = entry
        c2 = dst.class_by_id.get(c2_id)
        if c2 is None:
            errors.append(f"class {c.id!r} maps to unknown class {c2_id!r}")
            continue
        if c.degree_pair != c2.degree_pair:
            errors.append(f"class {c.id!r}: degree mismatch with target {c2_id!r}")
            continue
        image_words = (
            extend_place_map(f, c.src_word),
            extend_place_map(f, c.tgt_word),
        )
        if apply_pair(witness, (c2.src_word, c2.tgt_word)) != image_words:
            errors.append(f"class {c.id!r}: witness does not match image words")
            continue
        if not c.isotropy.conjugate_into(witness, c2.isotropy):
            errors.append(
                f"class {c.id!r}: isotropy does not transport into target isotropy"
            )
    if errors:
        return errors
    # full naturality check on the presheaf translations
    p_src, elems_src = to_presheaf_with_elements(src)
    p_dst, elems_dst = to_presheaf_with_elements(dst)
    elem_map = {}
    for c in src.classes:
        c2_id, witness = m.transition_map[c.id]
        group2 = dst.class_by_id[c2_id].isotropy
        for rep, tid in elems_src[c.id].items():
            target_rep = coset_rep_of(group2, compose_pair(rep, witness))
            elem_map[tid] = elems_dst[c2_id][target_rep]
    for tid, cell in p_src.cell_of.items():
        image_cell = (
            extend_place_map(f, cell[0]),
            extend_place_map(f, cell[1]),
        )
        if p_dst.cell_of[elem_map[tid]] != image_cell:
            errors.append(f"presheaf element {tid!r} lands in the wrong cell")
    for (pair, tid), out in p_src.action.items():
        if elem_map[p_src.action[(pair, tid)]] != p_dst.action[(pair, elem_map[tid])]:
            errors.append(f"naturality fails at {pair} on {tid!r}")
            break
    return errors


def _validate_wholegrain_morphism(m, src, dst) -> list:
    errors = []
    f, g = m.place_map, m.transition_map
    if m.in_port_map is None or m.out_port_map is None:
        return ["wholegrain morphism needs port maps"]
    for t in src.transitions:
        if g.get(t) not in set(dst.transitions):
            errors.append(f"transition {t!r} unmapped")
    if errors:
        return errors
    for p in src.in_ports:
        q = m.in_port_map.get(p)
        if q is None or q not in set(dst.in_ports):
            errors.append(f"input port {p!r} unmapped")
            continue
        if dst.in_trans[q] != g[src.in_trans[p]]:
            errors.append(f"input square (ports over transitions) fails at {p!r}")
        if dst.in_place[q] != f[src.in_place[p]]:
            errors.append(f"input square (ports over places) fails at {p!r}")
    for p in src.out_ports:
        q = m.out_port_map.get(p)
        if q is None or q not in set(dst.out_ports):
            errors.append(f"output port {p!r} unmapped")
            continue
        if dst.out_trans[q] != g[src.out_trans[p]]:
            errors.append(f"output square (ports over transitions) fails at {p!r}")
        if dst.out_place[q] != f[src.out_place[p]]:
            errors.append(f"output square (ports over places) fails at {p!r}")
    if errors:
        return errors
    # etale condition: the port squares are pullbacks, i.e. the port map
    # restricts to a bijection on each fiber
    for t in src.transitions:
        for fiber, port_map, label in (
            (src.in_fiber(t), m.in_port_map, "input"),
            (src.out_fiber(t), m.out_port_map, "output"),
        ):
            tgt_fiber = dst.in_fiber(g[t]) if label == "input" else dst.out_fiber(g[t])
            image = [port_map[p] for p in fiber]
            if sorted(image) != sorted(tgt_fiber) or len(set(image)) != len(image):
                errors.append(f"{label} square at {t!r} is not a pullback")
    return errors


# presheaf <-> groupoid ------------------------------------------------


def to_presheaf_with_elements(net: SigmaNet):
    """Presheaf view of a sigma net plus, per class, the map from coset
    representative to generated transition id."""
    cells: dict = {}
    action: dict = {}
    elements: dict = {}
    for c in net.classes:
        reps = coset_reps(c.isotropy)
        if len(reps) * len(all_pairs(c.degree_pair)) > SEARCH_CAP:
            raise CapacityError(f"presheaf for class {c.id!r} too large")
        table = coset_table(c.isotropy)
        rep_to_tid = {}
        for k, rep in enumerate(reps):
            tid = f"{c.id}#{k}"
            rep_to_tid[rep] = tid
            cell = apply_pair(rep, (c.src_word, c.tgt_word))
            cells.setdefault(cell, []).append(tid)
        for pair in all_pairs(c.degree_pair):
            for rep, tid in rep_to_tid.items():
                action[(pair, tid)] = rep_to_tid[table[compose_pair(pair, rep)]]
        elements[c.id] = rep_to_tid
    return SigmaNetPresheaf(net.places, cells, action), elements


def to_presheaf(net: SigmaNet) -> SigmaNetPresheaf:
    return to_presheaf_with_elements(net)[0]


def to_groupoid_with_map(p: SigmaNetPresheaf):
    """Skeletal groupoid view plus the element correspondence.

    Returns ``(net, elem_map)`` where ``elem_map[tid] = (class_id, w)``
    and ``tid`` is the image of the class representative under the
    action of ``w`` (``w`` canonicalized to a coset representative of
    the class isotropy).
    """
    assigned: dict = {}
    classes = []
    elem_map: dict = {}
    all_elems = sorted(p.cell_of, key=lambda t: (p.cell_of[t], t))
    for tid in all_elems:
        if tid in assigned:
            continue
        cell = p.cell_of[tid]
        dp = (len(cell[0]), len(cell[1]))
        # orbit sweep records, for each member, one pair mapping the
        # representative onto it
        orbit: dict = {tid: identity_pair(dp)}
        frontier = [tid]
        while frontier:
            nxt = []
            for u in frontier:
                for g in all_pairs(dp):
                    v = p.action[(g, u)]
                    if v not in orbit:
                        orbit[v] = compose_pair(g, orbit[u])
                        nxt.append(v)
            frontier = nxt
        iso_elems = tuple(
            sorted(g for g in all_pairs(dp) if p.action[(g, tid)] == tid)
        )
        group = PermGroup(_greedy_generators(iso_elems, dp), dp)
        group._elements = iso_elems
        cls = TransitionClass(tid, cell[0], cell[1], group)
        classes.append(cls)
        for member, g in orbit.items():
            assigned[member] = tid
            elem_map[member] = (tid, coset_rep_of(group, g))
    net = SigmaNet(p.places, classes)
    return net, elem_map


def to_groupoid(p: SigmaNetPresheaf) -> SigmaNet:
    errors = validate_net(p)
    if errors:
        raise ValueError("invalid presheaf: " + "; ".join(errors[:3]))
    return to_groupoid_with_map(p)[0]


# hom-set enumeration --------------------------------------------------


def _place_maps(src_places, dst_places, cap):
    src_places = list(src_places)
    dst_places = sorted(dst_places)
    if src_places and not dst_places:
        return
    total = len(dst_places) ** len(src_places) if src_places else 1
    if total > cap:
        raise CapacityError("too many place maps")
    for images in itertools.product(dst_places, repeat=len(src_places)):
        yield dict(zip(src_places, images))


def hom_set(src, dst, cap: int = SEARCH_CAP) -> list:
    """All morphisms from ``src`` to ``dst``, by exhaustive search,
    in a deterministic order."""
    if src.kind != dst.kind:
        raise ValueError("kind mismatch")
    out = []
    if src.kind in (PETRI, PRENET):
        for f in _place_maps(src.places, dst.places, cap):
            candidates = []
            for t in sorted(src.transitions):
                cand = [
                    u
                    for u in sorted(dst.transitions)
                    if dst.src[u] == extend_place_map(f, src.src[t])
                    and dst.tgt[u] == extend_place_map(f, src.tgt[t])
                ]
                if not cand:
                    break
                candidates.append((t, cand))
            else:
                _expand_product(out, src.kind, f, candidates, cap)
        return out
    if src.kind == SIGMA:
        for f in _place_maps(src.places, dst.places, cap):
            candidates = []
            for c in sorted(src.classes, key=lambda c: c.id):
                image_words = (
                    extend_place_map(f, c.src_word),
                    extend_place_map(f, c.tgt_word),
                )
                cand = []
                for c2 in sorted(dst.classes, key=lambda c: c.id):
                    if c2.degree_pair != c.degree_pair:
                        continue
                    for w in coset_reps(c2.isotropy):
                        if apply_pair(w, (c2.src_word, c2.tgt_word)) != image_words:
                            continue
                        if c.isotropy.conjugate_into(w, c2.isotropy):
                            cand.append((c2.id, w))
                if not cand:
                    break
                candidates.append((c.id, cand))
            else:
                _expand_product(out, SIGMA, f, candidates, cap)
        return out
    if src.kind == WHOLEGRAIN:
        return _wholegrain_homs(src, dst, cap)
    raise ValueError(f"hom_set unsupported for kind {src.kind!r}")


def _expand_product(out, kind, f, candidates, cap):
    total = 1
    for _, cand in candidates:
        total *= len(cand)
        if total > cap:
            raise CapacityError("transition assignment space too large")
    keys = [t for t, _ in candidates]
    for combo in itertools.product(*[cand for _, cand in candidates]):
        out.append(NetMorphism(kind, f, dict(zip(keys, combo))))


def _wholegrain_homs(src, dst, cap):
    out = []
    for f in _place_maps(src.places, dst.places, cap):
        trans_opts = []
        for t in sorted(src.transitions):
            opts = []
            for u in sorted(dst.transitions):
                fibers = _fiber_bijections(src, dst, f, t, u)
                if fibers:
                    opts.append((u, fibers))
            if not opts:
                break
            trans_opts.append((t, opts))
        else:
            total = 1
            for _, opts in trans_opts:
                total *= sum(len(fib) for _, fib in opts)
                if total > cap:
                    raise CapacityError("wholegrain hom search too large")
            choices_per_t = [
                [(u, gi, go) for u, fibs in opts for gi, go in fibs]
                for _, opts in trans_opts
            ]
            keys = [t for t, _ in trans_opts]
            for combo in itertools.product(*choices_per_t):
                g, gi, go = {}, {}, {}
                for t, (u, bi, bo) in zip(keys, combo):
                    g[t] = u
                    gi.update(bi)
                    go.update(bo)
                out.append(NetMorphism(WHOLEGRAIN, f, g, gi, go))
    return out


def _fiber_bijections(src, dst, f, t, u):
    """All place-compatible fiber bijection pairs for t -> u."""
    fin, fout = src.in_fiber(t), src.out_fiber(t)
    gin, gout = dst.in_fiber(u), dst.out_fiber(u)
    if len(fin) != len(gin) or len(fout) != len(gout):
        return []
    ins = _port_bijections(fin, gin, src.in_place, dst.in_place, f)
    if not ins:
        return []
    outs = _port_bijections(fout, gout, src.out_place, dst.out_place, f)
    return [(bi, bo) for bi in ins for bo in outs]


def _port_bijections(fiber, tgt_fiber, place_of, tgt_place_of, f):
    result = []
    for perm in itertools.permutations(tgt_fiber):
        if all(tgt_place_of[q] == f[place_of[p]] for p, q in zip(fiber, perm)):
            result.append(dict(zip(fiber, perm)))
    return result


# isomorphism ----------------------------------------------------------


def net_isomorphic(n1, n2, cap: int = SEARCH_CAP) -> Optional[NetMorphism]:
    """An invertible morphism n1 -> n2 whose inverse is also a morphism,
    or None.  Backtracking over place/transition bijections."""
    if n1.kind != n2.kind:
        raise ValueError("kind mismatch")
    if len(n1.places) != len(n2.places):
        return None
    if len(n1.transitions) != len(n2.transitions):
        return None
    if math.factorial(len(n1.places)) > cap:
        raise CapacityError("too many place bijections")
    places2 = sorted(n2.places)
    for image in itertools.permutations(places2):
        f = dict(zip(sorted(n1.places), image))
        m = _iso_extend(n1, n2, f)
        if m is not None:
            return m
    return None


def _iso_extend(n1, n2, f) -> Optional[NetMorphism]:
    """Extend a place bijection to a full iso if possible."""
    if n1.kind in (PETRI, PRENET):
        cands = {}
        for t in sorted(n1.transitions):
            cands[t] = [
                u
                for u in sorted(n2.transitions)
                if n2.src[u] == extend_place_map(f, n1.src[t])
                and n2.tgt[u] == extend_place_map(f, n1.tgt[t])
            ]
        match = _perfect_matching(cands)
        if match is None:
            return None
        return NetMorphism(n1.kind, f, match)
    if n1.kind == SIGMA:
        cands = {}
        witness_for = {}
        for c in sorted(n1.classes, key=lambda c: c.id):
            image_words = (
                extend_place_map(f, c.src_word),
                extend_place_map(f, c.tgt_word),
            )
            opts = []
            for c2 in sorted(n2.classes, key=lambda c: c.id):
                if c2.degree_pair != c.degree_pair:
                    continue
                if c2.isotropy.order != c.isotropy.order:
                    continue
                for w in coset_reps(c2.isotropy):
                    if apply_pair(w, (c2.src_word, c2.tgt_word)) != image_words:
                        continue
                    if c.isotropy.conjugate_into(w, c2.isotropy):
                        opts.append(c2.id)
                        witness_for[(c.id, c2.id)] = w
                        break
            cands[c.id] = opts
        match = _perfect_matching(cands)
        if match is None:
            return None
        tmap = {c: (c2, witness_for[(c, c2)]) for c, c2 in match.items()}
        return NetMorphism(SIGMA, f, tmap)
    if n1.kind == WHOLEGRAIN:
        cands = {}
        fiber_for = {}
        for t in sorted(n1.transitions):
            opts = []
            for u in sorted(n2.transitions):
                fibs = _fiber_bijections(n1, n2, f, t, u)
                if fibs:
                    opts.append(u)
                    fiber_for[(t, u)] = fibs[0]
            cands[t] = opts
        match = _perfect_matching(cands)
        if match is None:
            return None
        gi, go = {}, {}
        for t, u in match.items():
            bi, bo = fiber_for[(t, u)]
            gi.update(bi)
            go.update(bo)
        return NetMorphism(WHOLEGRAIN, f, match, gi, go)
    raise ValueError(f"iso unsupported for kind {n1.kind!r}")


def _perfect_matching(cands: dict) -> Optional[dict]:
    """A perfect matching keys -> candidate values, injective, or None."""
    keys = sorted(cands, key=lambda k: (len(cands[k]), str(k)))
    used: set = set()
    chosen: dict = {}

    def backtrack(i):
        if i == len(keys):
            return True
        k = keys[i]
        for v in cands[k]:
            if v in used:
                continue
            used.add(v)
            chosen[k] = v
            if backtrack(i + 1):
                return True
            used.discard(v)
            del chosen[k]
        return False

    return dict(chosen) if backtrack(0) else None
