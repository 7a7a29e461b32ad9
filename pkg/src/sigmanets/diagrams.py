"""Anchored port graphs for morphisms of free (symmetric) strict
monoidal categories.

A diagram has an input interface (one port per source-word position), an
output interface, one node per generator occurrence with ordered in/out
ports, and a set of wires forming a bijection from producers (input
interface positions and node out-ports) to consumers (node in-ports and
output interface positions).

Equality of diagrams is anchored port-graph isomorphism: interfaces are
fixed pointwise, nodes may be permuted label-preservingly, and a node
whose generator carries a nontrivial isotropy group may additionally
twist its own ports by any group element.  The twist is what quotients
terms by the transition-class action of a sigma net.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import apply_perm_word, identity_perm


@dataclass(frozen=True)
class Diagram:
    src_word: tuple
    tgt_word: tuple
    nodes: tuple  # generator names, index = node id
    wires: frozenset  # (producer port, consumer port)

    def wire_map(self) -> dict:
        return dict(self.wires)


# ports: ("in", k) interface input, ("out", k) interface output,
# ("ni", node, k) node in-port, ("no", node, k) node out-port


def _shift_port(port, dn, d_in, d_out):
    tag = port[0]
    if tag == "in":
        return ("in", port[1] + d_in)
    if tag == "out":
        return ("out", port[1] + d_out)
    if tag == "ni":
        return ("ni", port[1] + dn, port[2])
    return ("no", port[1] + dn, port[2])


def identity_diagram(word) -> Diagram:
    wires = frozenset((("in", k), ("out", k)) for k in range(len(word)))
    return Diagram(tuple(word), tuple(word), (), wires)


def generator_diagram(name, src_word, tgt_word) -> Diagram:
    wires = {(("in", k), ("ni", 0, k)) for k in range(len(src_word))}
    wires |= {(("no", 0, j), ("out", j)) for j in range(len(tgt_word))}
    return Diagram(tuple(src_word), tuple(tgt_word), (name,), frozenset(wires))


def symmetry_diagram(perm, word) -> Diagram:
    wires = frozenset((("in", i), ("out", perm[i])) for i in range(len(word)))
    return Diagram(tuple(word), apply_perm_word(perm, word), (), wires)


def tensor_diagrams(d1: Diagram, d2: Diagram) -> Diagram:
    dn, d_in, d_out = len(d1.nodes), len(d1.src_word), len(d1.tgt_word)
    wires = set(d1.wires)
    for a, b in d2.wires:
        wires.add((_shift_port(a, dn, d_in, d_out), _shift_port(b, dn, d_in, d_out)))
    return Diagram(
        d1.src_word + d2.src_word,
        d1.tgt_word + d2.tgt_word,
        d1.nodes + d2.nodes,
        frozenset(wires),
    )


def compose_diagrams(d1: Diagram, d2: Diagram) -> Diagram:
    """d1 followed by d2; d1's outputs splice onto d2's inputs."""
    if d1.tgt_word != d2.src_word:
        raise ValueError("interfaces do not match")
    dn = len(d1.nodes)
    into_out = {}  # k -> producer in d1 feeding output k
    for a, b in d1.wires:
        if b[0] == "out":
            into_out[b[1]] = a
    wires = {(a, b) for a, b in d1.wires if b[0] != "out"}
    for a, b in d2.wires:
        a2 = _shift_port(a, dn, 0, 0) if a[0] != "in" else a
        b2 = _shift_port(b, dn, 0, 0) if b[0] != "in" else b
        if a[0] == "in":
            a2 = into_out[a[1]]
        wires.add((a2, b2))
    return Diagram(d1.src_word, d2.tgt_word, d1.nodes + d2.nodes, frozenset(wires))


def diagram_equal(d1: Diagram, d2: Diagram, isotropy=None) -> bool:
    """Anchored iso with optional per-generator isotropy twists.

    ``isotropy`` maps generator name to a PermGroup (or is None); a
    matched node pair may twist in-ports by s and out-ports by t for any
    (s, t) in its generator's group.
    """
    if d1.src_word != d2.src_word or d1.tgt_word != d2.tgt_word:
        return False
    if sorted(d1.nodes) != sorted(d2.nodes):
        return False
    if len(d1.wires) != len(d2.wires):
        return False
    isotropy = isotropy or {}
    n = len(d1.nodes)
    by_label: dict = {}
    for j, label in enumerate(d2.nodes):
        by_label.setdefault(label, []).append(j)
    arity_in = [0] * n
    arity_out = [0] * n
    for a, b in d1.wires:
        if b[0] == "ni":
            arity_in[b[1]] += 1
        if a[0] == "no":
            arity_out[a[1]] += 1

    twists = {}
    match = {}
    used = set()

    def port_image(port):
        tag = port[0]
        if tag in ("in", "out"):
            return port
        node = match[port[1]]
        s, t = twists[port[1]]
        if tag == "ni":
            return ("ni", node, s[port[2]])
        return ("no", node, t[port[2]])

    wires2 = d2.wires

    def wires_ok():
        for a, b in d1.wires:
            if (port_image(a), port_image(b)) not in wires2:
                return False
        return True

    def backtrack(i):
        if i == n:
            return wires_ok()
        label = d1.nodes[i]
        group = isotropy.get(label)
        for j in by_label.get(label, ()):
            if j in used:
                continue
            used.add(j)
            match[i] = j
            options = (
                group.elements
                if group is not None and not group.is_trivial()
                else ((identity_perm(arity_in[i]), identity_perm(arity_out[i])),)
            )
            for twist in options:
                twists[i] = twist
                if backtrack(i + 1):
                    return True
            used.discard(j)
            del match[i]
        return False

    return backtrack(0)


def is_acyclic(d: Diagram) -> bool:
    """No directed cycle through the nodes (wires run producer to
    consumer)."""
    succ: dict = {i: set() for i in range(len(d.nodes))}
    for a, b in d.wires:
        if a[0] == "no" and b[0] == "ni":
            succ[a[1]].add(b[1])
    state: dict = {}

    def visit(v):
        state[v] = 1
        for w in succ[v]:
            if state.get(w) == 1:
                return False
            if state.get(w) is None and not visit(w):
                return False
        state[v] = 2
        return True

    return all(state.get(v) == 2 or visit(v) for v in succ)


def canonical_wire_key(d: Diagram):
    return tuple(sorted(d.wires))
