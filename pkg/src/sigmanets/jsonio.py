"""JSON interchange for nets, open nets, terms and finite target
categories.  One value per document, discriminated by "kind"; every
collection is sorted on output so serialization is byte-stable."""

from __future__ import annotations

import json

from .algebra import Multiset, PermGroup, group_closure
from .nets import (
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
)

FORMAT = 1


class FormatError(ValueError):
    """Malformed or unsupported JSON document."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _multiset_to_json(m: Multiset) -> dict:
    return {k: v for k, v in m.items()}


def _group_to_json(g: PermGroup) -> list:
    return sorted([list(s), list(t)] for s, t in g.generators)


def _group_from_json(data, degree_pair) -> PermGroup:
    gens = [(tuple(s), tuple(t)) for s, t in data]
    return group_closure(gens, degree_pair)


def net_to_json(net) -> dict:
    if net.kind == PETRI:
        return {
            "format": FORMAT,
            "kind": PETRI,
            "places": sorted(net.places),
            "transitions": [
                {
                    "id": t,
                    "src": _multiset_to_json(net.src[t]),
                    "tgt": _multiset_to_json(net.tgt[t]),
                }
                for t in sorted(net.transitions)
            ],
        }
    if net.kind == PRENET:
        return {
            "format": FORMAT,
            "kind": PRENET,
            "places": sorted(net.places),
            "transitions": [
                {"id": t, "src": list(net.src[t]), "tgt": list(net.tgt[t])}
                for t in sorted(net.transitions)
            ],
        }
    if net.kind == SIGMA:
        return {
            "format": FORMAT,
            "kind": SIGMA,
            "places": sorted(net.places),
            "classes": [
                {
                    "id": c.id,
                    "src": list(c.src_word),
                    "tgt": list(c.tgt_word),
                    "isotropy": _group_to_json(c.isotropy),
                }
                for c in sorted(net.classes, key=lambda c: c.id)
            ],
        }
    if net.kind == PRESHEAF:
        cells = [
            {"src": list(a), "tgt": list(b), "transitions": list(tids)}
            for (a, b), tids in sorted(net.cells.items())
        ]
        action = [
            {"perm": [list(p[0]), list(p[1])], "on": tid, "to": out}
            for (p, tid), out in sorted(
                net.action.items(), key=lambda kv: (kv[0][1], kv[0][0])
            )
        ]
        return {
            "format": FORMAT,
            "kind": PRESHEAF,
            "places": sorted(net.places),
            "cells": cells,
            "action": action,
        }
    if net.kind == WHOLEGRAIN:
        return {
            "format": FORMAT,
            "kind": WHOLEGRAIN,
            "places": sorted(net.places),
            "transitions": sorted(net.transitions),
            "inputs": [
                {"id": p, "place": net.in_place[p], "transition": net.in_trans[p]}
                for p in sorted(net.in_ports)
            ],
            "outputs": [
                {"id": p, "place": net.out_place[p], "transition": net.out_trans[p]}
                for p in sorted(net.out_ports)
            ],
        }
    raise FormatError("unknown-kind", f"cannot serialize kind {net.kind!r}")


def net_from_json(data: dict):
    if not isinstance(data, dict) or "kind" not in data:
        raise FormatError("bad-document", "net document must have a 'kind' field")
    kind = data["kind"]
    try:
        if kind == PETRI:
            return PetriNet(
                data["places"],
                [t["id"] for t in data["transitions"]],
                {t["id"]: Multiset(t["src"]) for t in data["transitions"]},
                {t["id"]: Multiset(t["tgt"]) for t in data["transitions"]},
            )
        if kind == PRENET:
            return PreNet(
                data["places"],
                [t["id"] for t in data["transitions"]],
                {t["id"]: tuple(t["src"]) for t in data["transitions"]},
                {t["id"]: tuple(t["tgt"]) for t in data["transitions"]},
            )
        if kind == SIGMA:
            classes = []
            for c in data["classes"]:
                src, tgt = tuple(c["src"]), tuple(c["tgt"])
                group = _group_from_json(c["isotropy"], (len(src), len(tgt)))
                classes.append(TransitionClass(c["id"], src, tgt, group))
            return SigmaNet(data["places"], classes)
        if kind == PRESHEAF:
            cells = {
                (tuple(c["src"]), tuple(c["tgt"])): tuple(c["transitions"])
                for c in data["cells"]
            }
            action = {
                ((tuple(e["perm"][0]), tuple(e["perm"][1])), e["on"]): e["to"]
                for e in data["action"]
            }
            return SigmaNetPresheaf(data["places"], cells, action)
        if kind == WHOLEGRAIN:
            return WholeGrainNet(
                data["places"],
                data["transitions"],
                [p["id"] for p in data["inputs"]],
                [p["id"] for p in data["outputs"]],
                {p["id"]: p["place"] for p in data["inputs"]},
                {p["id"]: p["transition"] for p in data["inputs"]},
                {p["id"]: p["transition"] for p in data["outputs"]},
                {p["id"]: p["place"] for p in data["outputs"]},
            )
    except (KeyError, TypeError) as exc:
        raise FormatError("bad-document", f"malformed {kind} document: {exc}") from exc
    raise FormatError("unknown-kind", f"unknown net kind {kind!r}")


def open_net_to_json(o) -> dict:
    return {
        "format": FORMAT,
        "kind": "open",
        "net_kind": o.body.kind,
        "left_boundary": sorted(o.left_boundary),
        "right_boundary": sorted(o.right_boundary),
        "body": net_to_json(o.body),
        "left_leg": {x: o.left_leg[x] for x in sorted(o.left_boundary)},
        "right_leg": {y: o.right_leg[y] for y in sorted(o.right_boundary)},
    }


def open_net_from_json(data: dict):
    from .opennets import OpenNet

    if data.get("kind") != "open":
        raise FormatError("bad-document", "not an open-net document")
    try:
        return OpenNet(
            data["left_boundary"],
            data["right_boundary"],
            net_from_json(data["body"]),
            data["left_leg"],
            data["right_leg"],
        )
    except (KeyError, TypeError) as exc:
        raise FormatError("bad-document", f"malformed open net: {exc}") from exc


def any_from_json(data: dict):
    if isinstance(data, dict) and data.get("kind") == "open":
        return open_net_from_json(data)
    return net_from_json(data)


def dumps(value) -> str:
    if hasattr(value, "body"):
        doc = open_net_to_json(value)
    else:
        doc = net_to_json(value)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("bad-json", f"not valid JSON: {exc}") from exc
    return any_from_json(data)
