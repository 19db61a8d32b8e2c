"""Diagrams on a line: admissibility, signed canonical forms, enumeration.

A diagram has n external vertices (labeled 1..n, lying on the line) and q
unlabeled internal vertices, joined by segments.  Segments between two
external vertices are chords, all others are edges.  Internal vertices must
have valence >= 3, no segment is a loop, and every internal vertex must be
connected by a path to an external vertex.

Orientation conventions (fixed here once, certified by the d^2 = 0 and
chain-map test suites):

* the orientation set of a diagram consists of its internal vertices
  (degree -d), all of its segments including chords (degree d-1) and, in
  totalizations only, its external points (degree -1);
* the normal order of the orientation set is [points 1..n] ++
  [internal vertices 1..q] ++ [segments, sorted with external endpoints
  before internal ones];
* reversing one segment multiplies a diagram by (-1)^d, reordering the
  orientation set multiplies by the Koszul sign of the permutation.

Endpoints are encoded as signed integers: +k is the external vertex k,
-v is the internal vertex v.  Only the parity of d ever enters a sign.

The text format for a diagram is::

    n_ext n_int ; a-b a-b ... ; v1 v2 ... s0 s1 ...

with endpoints written e<k> / i<v> and orientation entries v<k> (internal
vertex), s<idx> (segment by position), p<k> (external point).  Canonical
diagrams always carry their orientation in normal order.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import NamedTuple


class TruncationError(Exception):
    """A requested computation exceeds the configured truncation bounds."""


@dataclass(frozen=True)
class Config:
    """Ambient dimension and truncation bounds.

    d >= 3; only its parity affects signs, its value affects reported
    degrees.  The default bounds max_points = max_internal =
    2 * max_complexity are exactly wide enough for every complex truncated
    at max_complexity.
    """

    d: int
    max_complexity: int = 3
    max_points: int | None = None
    max_internal: int | None = None

    def __post_init__(self):
        if self.d < 3:
            raise ValueError("ambient dimension d must be at least 3")
        if self.max_complexity < 1:
            raise ValueError("max_complexity must be at least 1")
        if self.max_points is None:
            object.__setattr__(self, "max_points", 2 * self.max_complexity)
        if self.max_internal is None:
            object.__setattr__(self, "max_internal", 2 * self.max_complexity)

    @property
    def parity(self):
        return self.d % 2

    @property
    def segment_parity(self):
        return (self.d - 1) % 2

    @property
    def vertex_parity(self):
        return self.d % 2


class OrientationElement(NamedTuple):
    """One entry of the orientation set: kind 'p', 'v' or 's' plus an index."""

    kind: str
    index: int

    def degree(self, d):
        if self.kind == "p":
            return -1
        if self.kind == "v":
            return -d
        return d - 1

    def parity(self, d):
        return self.degree(d) % 2


def _is_external(endpoint):
    return endpoint > 0


def _endpoint_key(endpoint):
    # externals sort before internals, each block ascending
    return (0, endpoint) if endpoint > 0 else (1, -endpoint)


def _endpoint_text(endpoint):
    return f"e{endpoint}" if endpoint > 0 else f"i{-endpoint}"


def _parse_endpoint(token):
    if token[0] == "e":
        return int(token[1:])
    if token[0] == "i":
        return -int(token[1:])
    raise ValueError(f"bad endpoint token {token!r}")


def koszul_sign(parities, positions):
    """Koszul sign of moving items (with given mod-2 parities) from list
    order to the ascending order of `positions`."""
    sign = 1
    k = len(parities)
    for a in range(k):
        if not parities[a]:
            continue
        for b in range(a + 1, k):
            if parities[b] and positions[a] > positions[b]:
                sign = -sign
    return sign


def sort_with_sign(items, parity, key=None):
    """Stable-sort items of equal parity, returning (sorted, Koszul sign)."""
    decorated = sorted(range(len(items)),
                       key=(lambda t: key(items[t])) if key else (lambda t: items[t]))
    out = [items[t] for t in decorated]
    if parity % 2 == 0:
        return out, 1
    positions = [0] * len(items)
    for new_pos, old_pos in enumerate(decorated):
        positions[old_pos] = new_pos
    return out, koszul_sign([1] * len(items), positions)


@dataclass(frozen=True)
class Diagram:
    """A canonical diagram.

    segments is a sorted tuple of endpoint pairs, each pair ordered with the
    smaller endpoint key first; the orientation set is implicitly in normal
    order.  Instances are produced by `canonicalize` and are immutable.
    """

    n_ext: int
    n_int: int
    segments: tuple

    @property
    def n_segments(self):
        return len(self.segments)

    @property
    def complexity(self):
        return len(self.segments) - self.n_int

    def degree(self, d):
        """Internal degree: (d-1) per segment, -d per internal vertex."""
        return (d - 1) * len(self.segments) - d * self.n_int

    def valences(self):
        val = {}
        for a, b in self.segments:
            val[a] = val.get(a, 0) + 1
            val[b] = val.get(b, 0) + 1
        return val

    def external_valences(self):
        val = self.valences()
        return [val.get(k, 0) for k in range(1, self.n_ext + 1)]

    def orientation(self, with_points=False):
        items = []
        if with_points:
            items += [OrientationElement("p", k) for k in range(1, self.n_ext + 1)]
        items += [OrientationElement("v", k) for k in range(1, self.n_int + 1)]
        items += [OrientationElement("s", idx) for idx in range(len(self.segments))]
        return items

    def sort_key(self):
        return (self.n_ext, self.n_int, self.segments)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def to_text(self):
        segs = " ".join(f"{_endpoint_text(a)}-{_endpoint_text(b)}"
                        for a, b in self.segments)
        orient = " ".join(f"{el.kind}{el.index}" for el in self.orientation()
                          ).replace("s", "s")
        return f"{self.n_ext} {self.n_int} ; {segs} ; {orient}"

    @classmethod
    def from_text(cls, text):
        head, segs, orient = (part.strip() for part in text.split(";"))
        n_ext, n_int = map(int, head.split())
        segments = []
        for token in segs.split():
            a, b = token.split("-")
            segments.append((_parse_endpoint(a), _parse_endpoint(b)))
        diagram = cls(n_ext, n_int, tuple(segments))
        expected = " ".join(f"{el.kind}{el.index}" for el in diagram.orientation())
        if orient and orient != expected:
            raise ValueError("orientation is not in normal order; "
                             "canonicalize the diagram before serializing")
        return diagram


#: A formal Q-combination of canonical diagrams.
DiagramCombination = dict


def _structurally_valid(n_ext, n_int, segments):
    for a, b in segments:
        for e in (a, b):
            if e == 0:
                return False
            if e > 0 and e > n_ext:
                return False
            if e < 0 and -e > n_int:
                return False
    return True


def _admissible(n_ext, n_int, segments):
    # (2) no loops
    for a, b in segments:
        if a == b:
            return False
    # (1) internal valence >= 3
    val = {}
    for a, b in segments:
        val[a] = val.get(a, 0) + 1
        val[b] = val.get(b, 0) + 1
    for v in range(1, n_int + 1):
        if val.get(-v, 0) < 3:
            return False
    # (3) every internal vertex reaches an external one
    adjacency = {}
    for a, b in segments:
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)
    reached = set(e for e in adjacency if e > 0)
    frontier = list(reached)
    while frontier:
        node = frontier.pop()
        for nbr in adjacency.get(node, ()):
            if nbr not in reached:
                reached.add(nbr)
                frontier.append(nbr)
    for v in range(1, n_int + 1):
        if -v not in reached:
            return False
    return True


def is_admissible(g):
    """The three admissibility conditions: internal valences >= 3, no loops,
    internal vertices tethered to the line.  Malformed indices are rejected."""
    if not _structurally_valid(g.n_ext, g.n_int, g.segments):
        raise ValueError("diagram has out-of-range endpoint indices")
    return _admissible(g.n_ext, g.n_int, g.segments)


def canonicalize(n_ext, n_int, segments, orientation, cfg):
    """Canonical representative of a raw diagram, with its Koszul sign.

    `segments` may be in any order and orientation; `orientation` lists the
    ('v', label) and ('s', index) entries of the orientation set in their
    current order (external points are bookkept by the caller).  Returns
    (Diagram, sign) for the lexicographically least relabeling of internal
    vertices, or None when the diagram cancels against itself (some
    automorphism acts by -1 on the orientation set).
    """
    d = cfg.d
    segments = [tuple(s) for s in segments]
    if not _structurally_valid(n_ext, n_int, segments):
        raise ValueError("diagram has out-of-range endpoint indices")
    if not _admissible(n_ext, n_int, segments):
        raise ValueError("cannot canonicalize an inadmissible diagram")
    m = len(segments)
    q = n_int
    seen_v = sorted(el.index for el in orientation if el[0] == "v")
    seen_s = sorted(el.index for el in orientation if el[0] == "s")
    if seen_v != list(range(1, q + 1)) or seen_s != list(range(m)):
        raise ValueError("orientation must list each internal vertex and "
                         "each segment exactly once")

    parities = [OrientationElement(*el).parity(d) for el in orientation]
    best_key = None
    best_sign = None
    cancelled = False
    for perm in permutations(range(1, q + 1)):
        relabel = {-old: -perm[old - 1] for old in range(1, q + 1)}
        oriented = []
        reversals = 0
        for a, b in segments:
            a2 = relabel.get(a, a)
            b2 = relabel.get(b, b)
            if _endpoint_key(a2) <= _endpoint_key(b2):
                oriented.append((a2, b2))
            else:
                oriented.append((b2, a2))
                reversals += 1
        order = sorted(range(m), key=lambda t: (
            _endpoint_key(oriented[t][0]), _endpoint_key(oriented[t][1]), t))
        key = tuple(oriented[t] for t in order)
        seg_position = {old: new for new, old in enumerate(order)}
        positions = []
        for el in orientation:
            if el[0] == "v":
                positions.append(perm[el[1] - 1] - 1)
            else:
                positions.append(q + seg_position[el[1]])
        sign = koszul_sign(parities, positions)
        if d % 2 == 1 and reversals % 2 == 1:
            sign = -sign
        if best_key is None or key < best_key:
            best_key, best_sign, cancelled = key, sign, False
        elif key == best_key and sign != best_sign:
            cancelled = True
    if cancelled:
        return None
    if d % 2 == 0:
        # parallel segments are interchangeable odd orientation entries
        if len(set(best_key)) != len(best_key):
            return None
    return Diagram(n_ext, q, best_key), best_sign


def empty_diagram(n_ext):
    return Diagram(n_ext, 0, ())


@functools.lru_cache(maxsize=None)
def _stratum(n_ext, q, m, d_parity):
    """All canonical admissible diagrams with q internal vertices and m
    segments on n_ext external vertices (d of the given parity)."""
    cfg = Config(d=3 + d_parity + (d_parity == 0) * 1, max_complexity=max(1, m))
    # cfg above only matters through its parity; reconstruct honestly:
    cfg = Config(d=4 if d_parity == 0 else 3, max_complexity=max(1, m))
    endpoints = [k for k in range(1, n_ext + 1)] + [-v for v in range(1, q + 1)]
    pairs = []
    for ia in range(len(endpoints)):
        for ib in range(ia + 1, len(endpoints)):
            pairs.append((endpoints[ia], endpoints[ib]))
    pairs.sort(key=lambda p: (_endpoint_key(p[0]), _endpoint_key(p[1])))
    last_touch = {}
    for idx, (a, b) in enumerate(pairs):
        for e in (a, b):
            if e < 0:
                last_touch[e] = idx
    found = {}

    def deficit(val):
        return sum(max(0, 3 - val.get(-v, 0)) for v in range(1, q + 1))

    def dfs(idx, remaining, val, chosen, max_label_used):
        if deficit(val) > 2 * remaining:
            return
        if remaining == 0:
            segs = tuple(chosen)
            if not _admissible(n_ext, q, segs):
                return
            orientation = ([OrientationElement("v", k) for k in range(1, q + 1)]
                           + [OrientationElement("s", t) for t in range(len(segs))])
            result = canonicalize(n_ext, q, segs, orientation, cfg)
            if result is not None:
                found.setdefault(result[0], None)
            return
        if idx == len(pairs):
            return
        a, b = pairs[idx]
        # valences of vertices with no later pair are final
        for e in (a, b):
            if e < 0 and last_touch[e] == idx - 1:
                pass
        for e, last in last_touch.items():
            if last == idx - 1 and val.get(e, 0) < 3:
                return
        # skipping this pair entirely
        dfs(idx + 1, remaining, val, chosen, max_label_used)
        # using it with multiplicity >= 1; internal labels first-used in order
        for e in (a, b):
            if e < 0 and -e > max_label_used + 1:
                return
        new_max = max(max_label_used, *(-e for e in (a, b) if e < 0), 0) \
            if (a < 0 or b < 0) else max_label_used
        count = 0
        while count < remaining:
            count += 1
            val = dict(val)
            val[a] = val.get(a, 0) + 1
            val[b] = val.get(b, 0) + 1
            chosen.append((a, b))
            dfs(idx + 1, remaining - count, val, chosen, new_max)
        for _ in range(count):
            chosen.pop()

    if q == 0 and m == 0:
        return (empty_diagram(n_ext),)
    if 3 * q > 2 * m:
        return ()
    dfs(0, m, {}, [], 0)
    return tuple(sorted(found))


def enumerate_diagrams(n_ext, complexity, cfg):
    """One canonical representative per nonzero class of admissible diagrams
    with the given number of external vertices and complexity
    (#segments - #internal vertices).  Exhaustive within n_int <= 2 * complexity."""
    if complexity < 0 or n_ext < 0:
        raise ValueError("complexity and n_ext must be non-negative")
    if complexity > cfg.max_complexity:
        raise TruncationError(
            f"complexity {complexity} exceeds bound {cfg.max_complexity}")
    if n_ext > cfg.max_points:
        raise TruncationError(f"n_ext {n_ext} exceeds bound {cfg.max_points}")
    out = []
    for q in range(0, 2 * complexity + 1):
        if q > cfg.max_internal:
            raise TruncationError(f"internal vertex count {q} exceeds bound "
                                  f"{cfg.max_internal}")
        out.extend(_stratum(n_ext, q, q + complexity, cfg.parity))
    return out


def diagrams_by_internal(n_ext, complexity, cfg):
    """Canonical diagrams of the given complexity, grouped by n_int."""
    groups = {}
    for q in range(0, 2 * complexity + 1):
        if q > cfg.max_internal:
            break
        stratum = _stratum(n_ext, q, q + complexity, cfg.parity)
        if stratum:
            groups[q] = list(stratum)
    return groups


def contract(g, segment_index, cfg):
    """Contract one segment with an internal endpoint.

    Merges the two endpoints, deletes the segment, and carries the Koszul
    sign of moving the contracted segment and the disappearing internal
    vertex to the front of the orientation set.  Returns a (possibly empty)
    combination: the result is dropped when a loop appears or the canonical
    form cancels.  Contracting a chord is rejected.
    """
    a, b = g.segments[segment_index]
    if a > 0 and b > 0:
        raise ValueError("chords (external-external segments) are never "
                         "contracted")
    if a < 0 and b < 0:
        survivor, dier = (a, b) if -a < -b else (b, a)
    else:
        survivor, dier = (a, b) if a > 0 else (b, a)

    d = cfg.d
    q, m = g.n_int, g.n_segments
    # Koszul sign of moving the dying segment and vertex to the front of
    # the normal order [v_1..v_q, s_0..s_{m-1}]
    seg_pos = q + segment_index
    vert_pos = -dier - 1
    sign = 1
    seg_par = (d - 1) % 2
    vert_par = d % 2
    if seg_par:
        jumped = sum(1 for t in range(vert_pos) if vert_par) \
            + sum(1 for t in range(q, seg_pos) if seg_par)
        # segment jumps all vertices before its slot except the dying one
        # handled below; compute directly instead:
        jumped = 0
    # compute directly with the generic helper: dying items go to positions
    # -2 (segment) and -1 (vertex), everything else keeps relative order
    items = ([OrientationElement("v", k) for k in range(1, q + 1)]
             + [OrientationElement("s", t) for t in range(m)])
    parities = [el.parity(d) for el in items]
    positions = []
    shift = 2
    for el in items:
        if el == ("s", segment_index):
            positions.append(0)
        elif el == ("v", -dier):
            positions.append(1)
        else:
            positions.append(shift)
            shift += 1
    sign = koszul_sign(parities, positions)

    def relabel(e):
        if e == dier:
            return survivor
        if e < 0 and -e > -dier:
            return e + 1
        return e

    new_segments = []
    new_orientation = []
    for t, (x, y) in enumerate(g.segments):
        if t == segment_index:
            continue
        x2, y2 = relabel(x), relabel(y)
        if x2 == y2:
            return {}
        new_segments.append((x2, y2))
        new_orientation.append(OrientationElement("s", len(new_segments) - 1))
    vert_orientation = [OrientationElement("v", k) for k in range(1, q)]
    result = canonicalize(g.n_ext, q - 1, new_segments,
                          vert_orientation + new_orientation, cfg)
    if result is None:
        return {}
    canon, extra = result
    return {canon: Fraction(sign * extra)}
