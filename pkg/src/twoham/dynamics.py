"""Bounded exploration of what a tile assembly system can build.

Exploration uses set semantics: every supertile present is treated as
available in unlimited supply, matching the usual convention that initial
counts are infinite.  Finite-count bookkeeping lives in StateMultiset and
is only used to replay explicit assembly sequences, never during closure.
"""

from __future__ import annotations

import random
from collections import deque

from .errors import BoundTooSmall, NotProducible
from .model import INFINITE, Supertile, combine


class ProducibleSet:
    """Supertiles producible within a size bound, plus the step relation.

    ``edges`` holds (parentA, parentB, child) fingerprint triples with the
    parents in sorted order; it records every combination discovered among
    members whose union stayed within the bound.  ``overflow`` counts the
    member pairs that were set aside unevaluated because their union would
    have exceeded the bound, so callers can tell a true fixed point from a
    clipped one.
    """

    __slots__ = ("tas", "size_bound", "supertiles", "edges", "overflow",
                 "steps", "complete", "_children", "_parents")

    def __init__(self, tas, size_bound, supertiles, edges, overflow, steps, complete):
        self.tas = tas
        self.size_bound = size_bound
        self.supertiles = dict(supertiles)
        self.edges = frozenset(edges)
        self.overflow = overflow
        self.steps = steps
        self.complete = complete
        self._children = None
        self._parents = None

    def __contains__(self, s):
        fp = s.fingerprint if isinstance(s, Supertile) else s
        return fp in self.supertiles

    def __len__(self):
        return len(self.supertiles)

    def members(self):
        return sorted(self.supertiles.values(), key=lambda s: s.sort_key)

    def get(self, fingerprint):
        return self.supertiles[fingerprint]

    def children_of(self, fingerprint):
        if self._children is None:
            by_parent = {}
            for pa, pb, child in self.edges:
                by_parent.setdefault(pa, set()).add(child)
                by_parent.setdefault(pb, set()).add(child)
            self._children = by_parent
        return self._children.get(fingerprint, frozenset())

    def parents_of(self, fingerprint):
        if self._parents is None:
            by_child = {}
            for pa, pb, child in self.edges:
                by_child.setdefault(child, set()).add((pa, pb))
            self._parents = by_child
        return self._parents.get(fingerprint, frozenset())


def explore(tas, size_bound, step_bound=None, shuffle_seed=None):
    """Close the initial state under pairwise combination, up to size_bound.

    Deterministic worklist in fingerprint order; shuffle_seed reorders the
    worklist to exercise confluence, without changing the resulting set.
    One step is the full pairing of one supertile against everything
    processed before it (and itself).
    """
    if size_bound < 1:
        raise BoundTooSmall("size bound must be at least 1")
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    supers = {}
    for st, _ in tas.initial_state:
        if st.size > size_bound:
            raise BoundTooSmall(
                f"size bound {size_bound} below initial supertile of {st.size} tiles")
        supers[st.fingerprint] = st
    pending = sorted(supers)
    if rng is not None:
        rng.shuffle(pending)
    queue = deque(pending)
    done = []
    edges = set()
    overflow = 0
    steps = 0
    while queue:
        if step_bound is not None and steps >= step_bound:
            break
        steps += 1
        fp = queue.popleft()
        st = supers[fp]
        discovered = []
        for ofp in done + [fp]:
            other = supers[ofp]
            if st.size + other.size > size_bound:
                overflow += 1
                continue
            lo, hi = (fp, ofp) if fp <= ofp else (ofp, fp)
            for child in combine(st, other, tas.tile_set, tas.tau):
                edges.add((lo, hi, child.fingerprint))
                if child.fingerprint not in supers:
                    supers[child.fingerprint] = child
                    discovered.append(child.fingerprint)
        done.append(fp)
        discovered.sort()
        if rng is not None:
            rng.shuffle(discovered)
        queue.extend(discovered)
    return ProducibleSet(tas, size_bound, supers, edges, overflow, steps,
                         complete=not queue)


def is_terminal(s, p: ProducibleSet) -> bool:
    """Bounded terminality: s combines with no explored member.

    The verdict is only as strong as the explored set; a supertile can be
    terminal here yet combine with something beyond the bound.
    """
    fp = s.fingerprint if isinstance(s, Supertile) else s
    if fp not in p.supertiles:
        raise NotProducible(f"{fp[:10]} is not in the explored set")
    st = p.supertiles[fp]
    for other in p.members():
        if combine(st, other, p.tas.tile_set, p.tas.tau):
            return False
    return True


def single_step_reachable(a, b, p: ProducibleSet, reflexive=False) -> bool:
    """Whether one recorded combination turns a into b.

    With reflexive=True this is the length-at-most-one relation, which
    also accepts a == b.
    """
    fpa = a.fingerprint if isinstance(a, Supertile) else a
    fpb = b.fingerprint if isinstance(b, Supertile) else b
    for fp in (fpa, fpb):
        if fp not in p.supertiles:
            raise NotProducible(f"{fp[:10]} is not in the explored set")
    if reflexive and fpa == fpb:
        return True
    for pa, pb in p.parents_of(fpb):
        if fpa == pa or fpa == pb:
            return True
    return False


class StateMultiset:
    """Finite-count state of a system; immutable, stepped by combination."""

    __slots__ = ("counts",)

    def __init__(self, counts):
        self.counts = {}
        for fp, c in counts.items():
            if c == INFINITE:
                self.counts[fp] = INFINITE
            elif isinstance(c, int) and not isinstance(c, bool) and c >= 0:
                if c:
                    self.counts[fp] = c
            else:
                raise ValueError(f"count must be non-negative or INFINITE, got {c!r}")

    @classmethod
    def from_tas(cls, tas):
        return cls({st.fingerprint: c for st, c in tas.initial_state})

    def count(self, fp):
        return self.counts.get(fp, 0)

    def step(self, a: Supertile, b: Supertile, child: Supertile, ts, tau):
        """Consume a and b, produce child; child must be a legal combination."""
        if child not in combine(a, b, ts, tau):
            raise ValueError("child is not a combination of the two reactants")
        need = {a.fingerprint: 1}
        need[b.fingerprint] = need.get(b.fingerprint, 0) + 1
        for fp, k in need.items():
            have = self.count(fp)
            if have != INFINITE and have < k:
                raise ValueError(f"state holds {have} of {fp[:10]}, needs {k}")
        counts = dict(self.counts)
        for fp, k in need.items():
            if counts[fp] != INFINITE:
                counts[fp] -= k
        have = counts.get(child.fingerprint, 0)
        if have != INFINITE:
            counts[child.fingerprint] = have + 1
        return StateMultiset(counts)
