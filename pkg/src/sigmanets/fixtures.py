"""Bundled example nets used by the test suite and handy for the CLI.

Names mirror the worked examples this library reproduces:

* ``intro``    -- the two-transition Petri net whose token game the
                  README walks through (a+b -> c, c -> 2b)
* ``pq``       -- sigma net, one class (p,q) -> () with trivial isotropy
* ``pp-full``  -- one class (p,p) -> () fixed by the swap (collective)
* ``pp-free``  -- same class with trivial isotropy (individual)
* ``mixed``    -- one free class and one swap-fixed class side by side
* ``xyz``      -- pre-net with transitions x:(A,B), y:(B,A), z:(B,A) -> C
* ``dup``      -- pre-net with the repeated-input transition d:(A,A) -> C
* ``lone``     -- pre-net with the lone transition l:(A,B) -> C
* ``morph-v1`` / ``morph-v2`` -- the ordered triples (A,B,A) vs (A,A,B)
                  that admit no pre-net morphism
* ``n32``      -- Petri net with u: 3a+2b -> 4c
* ``open-p`` / ``open-q`` -- composable open Petri nets
* ``fincmc-z2`` / ``fincmc-mono2`` -- finite commutative monoidal
                  categories given by explicit tables
"""

from __future__ import annotations

import json
from importlib import resources

from . import jsonio

NET_NAMES = (
    "intro",
    "pq",
    "pp-full",
    "pp-free",
    "mixed",
    "xyz",
    "dup",
    "lone",
    "morph-v1",
    "morph-v2",
    "n32",
    "open-p",
    "open-q",
)

FINCMC_NAMES = ("fincmc-z2", "fincmc-mono2")


def raw(name: str) -> dict:
    path = resources.files(__package__) / "fixtures" / f"{name}.json"
    return json.loads(path.read_text())


def load(name: str):
    """A fixture net or open net by name."""
    if name not in NET_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {', '.join(NET_NAMES)}")
    return jsonio.any_from_json(raw(name))


def load_fincmc(name: str):
    from .fincmc import FinCMC

    if name not in FINCMC_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {', '.join(FINCMC_NAMES)}")
    return FinCMC.from_json(raw(name))
