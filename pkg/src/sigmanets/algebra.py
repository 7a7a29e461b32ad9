"""Finite combinatorics substrate: multisets, words, permutations and
permutation subgroups of S_m x S_n, plus homomorphism extensions of
place maps.

Conventions used throughout the package:

* A word is a tuple of place ids; the empty word is ().
* A permutation is a tuple of images: ``p[i]`` is the image of position i.
* Permutations act on words on the left: ``(p . w)[p[i]] = w[i]``, so
  ``apply_perm_word(compose_perm(p, q), w) ==
  apply_perm_word(p, apply_perm_word(q, w))``.
* A perm pair acts componentwise on a pair of words (source word, target
  word) and composes componentwise.

All values are immutable after construction and every operation here is
pure, so everything in this module is safe to share between threads.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Mapping, Union

Word = tuple  # tuple of place ids (strings)
Perm = tuple  # tuple of ints, images by position
PermPair = tuple  # (Perm, Perm)

#: Largest word length accepted by brute-force group computations.
DEGREE_CAP = 6

#: Default ceiling for enumeration search spaces (number of candidates).
SEARCH_CAP = 10**7


class CapacityError(Exception):
    """A brute-force computation would exceed its configured bound."""


class Multiset:
    """Finite multiset of place ids; the free-commutative-monoid element.

    Immutable and hashable.  Zero counts are never stored; equality is
    key-by-key count equality.
    """

    __slots__ = ("_items",)

    def __init__(self, counts: Union[Mapping, Iterable, None] = None):
        if counts is None:
            items = ()
        elif isinstance(counts, Multiset):
            items = counts._items
        elif isinstance(counts, Mapping):
            items = tuple(sorted((k, int(v)) for k, v in counts.items() if v))
        else:
            acc: dict = {}
            for k in counts:
                acc[k] = acc.get(k, 0) + 1
            items = tuple(sorted(acc.items()))
        for _, v in items:
            if v < 0:
                raise ValueError("negative multiplicity")
        object.__setattr__(self, "_items", items)

    @classmethod
    def from_word(cls, word: Word) -> "Multiset":
        return cls(word)

    def items(self):
        return self._items

    def get(self, place, default: int = 0) -> int:
        for k, v in self._items:
            if k == place:
                return v
        return default

    def support(self) -> tuple:
        return tuple(k for k, _ in self._items)

    def total(self) -> int:
        return sum(v for _, v in self._items)

    def sorted_word(self) -> Word:
        """The canonical word listing each place count times, sorted."""
        return tuple(k for k, v in self._items for _ in range(v))

    def __add__(self, other: "Multiset") -> "Multiset":
        acc = dict(self._items)
        for k, v in other._items:
            acc[k] = acc.get(k, 0) + v
        return Multiset(acc)

    def __sub__(self, other: "Multiset") -> "Multiset":
        acc = dict(self._items)
        for k, v in other._items:
            acc[k] = acc.get(k, 0) - v
            if acc[k] < 0:
                raise ValueError("multiset difference would be negative")
        return Multiset(acc)

    def __le__(self, other: "Multiset") -> bool:
        return all(other.get(k) >= v for k, v in self._items)

    def __eq__(self, other) -> bool:
        return isinstance(other, Multiset) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __iter__(self) -> Iterator:
        return iter(self.sorted_word())

    def __repr__(self) -> str:
        body = "+".join(f"{v}{k}" if v > 1 else str(k) for k, v in self._items)
        return f"Multiset({body or '0'})"


# permutations ---------------------------------------------------------


def is_perm(p: Perm) -> bool:
    return sorted(p) == list(range(len(p)))


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose_perm(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p(q(i)): apply q first, then p."""
    if len(p) != len(q):
        raise ValueError("degree mismatch")
    return tuple(p[q[i]] for i in range(len(p)))


def invert_perm(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def apply_perm_word(p: Perm, w: Word) -> Word:
    """Left action on words: the letter at position i moves to p(i)."""
    if len(p) != len(w):
        raise ValueError(f"permutation degree {len(p)} != word length {len(w)}")
    out = [None] * len(w)
    for i, letter in enumerate(w):
        out[p[i]] = letter
    return tuple(out)


def all_perms(n: int) -> list:
    """All of S_n, lexicographically ordered by image tuple."""
    return list(itertools.permutations(range(n)))


# perm pairs -----------------------------------------------------------


def identity_pair(degree_pair: tuple) -> PermPair:
    m, n = degree_pair
    return (identity_perm(m), identity_perm(n))


def compose_pair(p: PermPair, q: PermPair) -> PermPair:
    return (compose_perm(p[0], q[0]), compose_perm(p[1], q[1]))


def invert_pair(p: PermPair) -> PermPair:
    return (invert_perm(p[0]), invert_perm(p[1]))


def apply_pair(p: PermPair, words: tuple) -> tuple:
    a, b = words
    return (apply_perm_word(p[0], a), apply_perm_word(p[1], b))


def all_pairs(degree_pair: tuple) -> list:
    m, n = degree_pair
    return [(s, t) for s in all_perms(m) for t in all_perms(n)]


def _check_degrees(degree_pair: tuple) -> None:
    m, n = degree_pair
    if m < 0 or n < 0:
        raise ValueError("negative degree")
    if m > DEGREE_CAP or n > DEGREE_CAP:
        raise CapacityError(
            f"word length {max(m, n)} exceeds the degree cap {DEGREE_CAP}"
        )


class PermGroup:
    """A subgroup of S_m x S_n, given by generators, with cached closure.

    ``elements`` is the full closure, lexicographically sorted, so the
    serialized form (generators only) and every derived enumeration are
    deterministic.
    """

    __slots__ = ("degree_pair", "generators", "_elements")

    def __init__(self, generators: Iterable, degree_pair: tuple):
        _check_degrees(degree_pair)
        m, n = degree_pair
        gens = []
        for s, t in generators:
            s, t = tuple(s), tuple(t)
            if len(s) != m or len(t) != n or not (is_perm(s) and is_perm(t)):
                raise ValueError(f"generator {(s, t)} is not a pair on {degree_pair}")
            gens.append((s, t))
        self.degree_pair = (m, n)
        self.generators = tuple(gens)
        self._elements = None

    @property
    def elements(self) -> tuple:
        if self._elements is None:
            ident = identity_pair(self.degree_pair)
            closed = {ident}
            frontier = [g for g in self.generators if g != ident]
            closed.update(frontier)
            while frontier:
                nxt = []
                for g in self.generators:
                    for h in frontier:
                        prod = compose_pair(g, h)
                        if prod not in closed:
                            closed.add(prod)
                            nxt.append(prod)
                frontier = nxt
            # generators of a finite group close into the full subgroup,
            # inverses included, once products stabilize
            self._elements = tuple(sorted(closed))
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, pair: PermPair) -> bool:
        return pair in set(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PermGroup)
            and self.degree_pair == other.degree_pair
            and set(self.elements) == set(other.elements)
        )

    def __hash__(self) -> int:
        return hash((self.degree_pair, frozenset(self.elements)))

    def __repr__(self) -> str:
        return f"PermGroup(order={self.order}, degrees={self.degree_pair})"

    def is_trivial(self) -> bool:
        return self.order == 1

    def generating_set(self) -> tuple:
        """A reduced generating set: greedy sweep over sorted elements.

        Deterministic; never contains the identity.  Used when a small
        set of group relations is wanted.
        """
        ident = identity_pair(self.degree_pair)
        chosen: list = []
        have = {ident}
        for el in self.elements:
            if el in have:
                continue
            chosen.append(el)
            have = set(PermGroup(chosen, self.degree_pair).elements)
            if len(have) == self.order:
                break
        return tuple(chosen)

    def conjugate_into(self, w: PermPair, other: "PermGroup") -> bool:
        """True when w^-1 . self . w is contained in ``other``."""
        w_inv = invert_pair(w)
        others = set(other.elements)
        return all(
            compose_pair(compose_pair(w_inv, g), w) in others for g in self.elements
        )


def trivial_group(degree_pair: tuple) -> PermGroup:
    return PermGroup((), degree_pair)


def full_group(degree_pair: tuple) -> PermGroup:
    """The whole of S_m x S_n, generated by adjacent transpositions."""
    _check_degrees(degree_pair)
    m, n = degree_pair
    gens = []
    for i in range(m - 1):
        s = list(range(m))
        s[i], s[i + 1] = s[i + 1], s[i]
        gens.append((tuple(s), identity_perm(n)))
    for j in range(n - 1):
        t = list(range(n))
        t[j], t[j + 1] = t[j + 1], t[j]
        gens.append((identity_perm(m), tuple(t)))
    return PermGroup(gens, degree_pair)


def group_closure(gens: Iterable, degree_pair: tuple) -> PermGroup:
    g = PermGroup(gens, degree_pair)
    g.elements  # force the closure so errors surface here
    return g


def stabilizer(a: Word, b: Word) -> PermGroup:
    """All (s, t) in S_|a| x S_|b| with s.a = a and t.b = b, by brute force."""
    degree_pair = (len(a), len(b))
    _check_degrees(degree_pair)
    fix_a = [p for p in all_perms(len(a)) if apply_perm_word(p, a) == a]
    fix_b = [p for p in all_perms(len(b)) if apply_perm_word(p, b) == b]
    elements = tuple(sorted((s, t) for s in fix_a for t in fix_b))
    # carry a small generating set instead of the raw element dump
    group = PermGroup(_greedy_generators(elements, degree_pair), degree_pair)
    group._elements = elements
    return group


def _greedy_generators(elements: tuple, degree_pair: tuple) -> tuple:
    ident = identity_pair(degree_pair)
    chosen: list = []
    have = {ident}
    for el in elements:
        if el in have:
            continue
        chosen.append(el)
        have = set(PermGroup(chosen, degree_pair).elements)
        if len(have) == len(elements):
            break
    return tuple(chosen)


def coset_reps(group: PermGroup) -> list:
    """Left-coset representatives of ``group`` in S_m x S_n.

    Exactly m!n!/|G| pairs, each the lexicographically least member of
    its coset xG, listed in lexicographic order.
    """
    m, n = group.degree_pair
    total = math.factorial(m) * math.factorial(n)
    if total // group.order > SEARCH_CAP:
        raise CapacityError("coset enumeration too large")
    seen = set()
    reps = []
    for pair in all_pairs(group.degree_pair):
        if pair in seen:
            continue
        reps.append(pair)  # sorted sweep: first unseen member is the least
        for g in group.elements:
            seen.add(compose_pair(pair, g))
    return reps


def coset_table(group: PermGroup) -> dict:
    """Map each element of S_m x S_n to the representative of its coset."""
    table = {}
    for rep in coset_reps(group):
        for g in group.elements:
            table[compose_pair(rep, g)] = rep
    return table


def coset_rep_of(group: PermGroup, pair: PermPair) -> PermPair:
    """Lexicographically least member of pair.G."""
    return min(compose_pair(pair, g) for g in group.elements)


# place-map extensions -------------------------------------------------


def extend_place_map(f: Mapping, x):
    """Extend a place map homomorphically: sum counts on multisets, map
    letterwise on words."""
    if isinstance(x, Multiset):
        acc: dict = {}
        for k, v in x.items():
            if k not in f:
                raise KeyError(f"place {k!r} not in the domain of the map")
            acc[f[k]] = acc.get(f[k], 0) + v
        return Multiset(acc)
    out = []
    for letter in x:
        if letter not in f:
            raise KeyError(f"place {letter!r} not in the domain of the map")
        out.append(f[letter])
    return tuple(out)
