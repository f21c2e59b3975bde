"""Planar diagram calculus: the brute-force evaluation engine.

Diagrams are non-crossing perfect matchings on the boundary points of a
rectangle, read top to bottom: `n` points on the top edge and `m` on the
bottom, n + m even.  Boundary points are numbered clockwise, so top points
left to right are indices 0..n-1 and the bottom point at position b (left
to right) is index n + (m-1-b).  In that cyclic order planarity is exactly
the balanced-bracket condition, which is how it is checked.

Skein elements are formal linear combinations of diagrams with cyclotomic
coefficients.  Closed loops produced by composition or closure are removed
immediately, each contributing a factor of the loop value -A^2 - A^-2, so
stored diagrams are always loop-free and equality of elements is literal
dictionary equality.

Everything downstream (recoupling nets, structure constants, forms) is
ultimately checked against values computed here.
"""

from __future__ import annotations

from functools import lru_cache

from coribbon.cyclotomic import (
    CycloScalar,
    loop_value,
    one,
    quantum_int,
    root_power,
    zero,
)


class PlanarDiagram:
    """Immutable non-crossing matching on n top and m bottom points.

    `pairing` is an involution on range(n + m) without fixed points, in the
    clockwise index convention above.  `loop_count` records closed loops
    carried by the bare diagram; the skein layer strips them into scalars.
    """

    __slots__ = ("n", "m", "pairing", "loop_count", "_hash")

    def __init__(self, n, m, pairing, loop_count=0):
        pairing = tuple(pairing)
        if (n + m) % 2 != 0:
            raise ValueError("boundary point count must be even")
        if len(pairing) != n + m:
            raise ValueError("pairing length %d != %d" % (len(pairing), n + m))
        for i, j in enumerate(pairing):
            if not 0 <= j < n + m or j == i or pairing[j] != i:
                raise ValueError("pairing is not a fixed-point-free involution")
        if loop_count < 0:
            raise ValueError("loop_count must be nonnegative")
        if not _is_noncrossing(pairing):
            raise ValueError("pairing has crossing arcs")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "pairing", pairing)
        object.__setattr__(self, "loop_count", loop_count)
        object.__setattr__(self, "_hash", hash((n, m, pairing, loop_count)))

    def __setattr__(self, name, value):
        raise AttributeError("PlanarDiagram is immutable")

    def bottom_index(self, position):
        """Boundary index of the bottom point at `position` (left to right)."""
        return self.n + (self.m - 1 - position)

    def strip_loops(self):
        if self.loop_count == 0:
            return self
        return PlanarDiagram(self.n, self.m, self.pairing, 0)

    def transpose(self):
        """Vertical flip: top and bottom edges exchanged."""
        n, m = self.n, self.m
        old_of_new = [0] * (n + m)
        for j in range(m):
            old_of_new[j] = self.bottom_index(j)
        for b in range(n):
            old_of_new[m + (n - 1 - b)] = b
        new_of_old = [0] * (n + m)
        for new, old in enumerate(old_of_new):
            new_of_old[old] = new
        pairing = [0] * (n + m)
        for new, old in enumerate(old_of_new):
            pairing[new] = new_of_old[self.pairing[old]]
        return PlanarDiagram(m, n, pairing, self.loop_count)

    def __eq__(self, other):
        if not isinstance(other, PlanarDiagram):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and self.pairing == other.pairing
            and self.loop_count == other.loop_count
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        arcs = []
        for i, j in enumerate(self.pairing):
            if i < j:
                a, b = sorted(
                    (self._point_name(i), self._point_name(j)),
                    key=lambda s: (s[0] != "t", int(s[1:])),
                )
                arcs.append("%s-%s" % (a, b))
        text = "PlanarDiagram(%d->%d: %s" % (self.n, self.m, ", ".join(arcs))
        if self.loop_count:
            text += ", loops=%d" % self.loop_count
        return text + ")"

    def _point_name(self, idx):
        if idx < self.n:
            return "t%d" % idx
        return "b%d" % (self.m - 1 - (idx - self.n))


def _is_noncrossing(pairing):
    stack = []
    for i, j in enumerate(pairing):
        if j > i:
            stack.append(j)
        else:
            if not stack or stack[-1] != i:
                return False
            stack.pop()
    return not stack


def _pairing_from_arcs(n, m, arcs):
    def index(point):
        side, pos = point
        if side == "t":
            if not 0 <= pos < n:
                raise ValueError("top position out of range: %r" % (pos,))
            return pos
        if side == "b":
            if not 0 <= pos < m:
                raise ValueError("bottom position out of range: %r" % (pos,))
            return n + (m - 1 - pos)
        raise ValueError("side must be 't' or 'b'")

    pairing = [-1] * (n + m)
    for p1, p2 in arcs:
        i, j = index(p1), index(p2)
        if pairing[i] != -1 or pairing[j] != -1:
            raise ValueError("boundary point used twice")
        pairing[i], pairing[j] = j, i
    if any(p == -1 for p in pairing):
        raise ValueError("some boundary points are unmatched")
    return pairing


def diagram_from_arcs(n, m, arcs, loop_count=0):
    """Diagram from arcs given as ((side, position), (side, position)) pairs."""
    return PlanarDiagram(n, m, _pairing_from_arcs(n, m, arcs), loop_count)


@lru_cache(maxsize=None)
def identity_diagram(n):
    arcs = [(("t", i), ("b", i)) for i in range(n)]
    return diagram_from_arcs(n, n, arcs)


@lru_cache(maxsize=None)
def cap_cup_diagram(n, i):
    """The Temperley-Lieb generator e_i on n strands (0 <= i < n-1)."""
    if not 0 <= i < n - 1:
        raise ValueError("generator position out of range")
    arcs = [(("t", i), ("t", i + 1)), (("b", i), ("b", i + 1))]
    arcs += [(("t", k), ("b", k)) for k in range(n) if k not in (i, i + 1)]
    return diagram_from_arcs(n, n, arcs)


@lru_cache(maxsize=None)
def nested_caps_diagram(left, right, count):
    """left+right points in, left+right-2*count out; `count` nested caps
    joining the innermost points of the two groups."""
    n = left + right
    if count < 0 or count > min(left, right):
        raise ValueError("cap count out of range")
    m = n - 2 * count
    arcs = [(("t", left - 1 - k), ("t", left + k)) for k in range(count)]
    passthrough = [p for p in range(n) if not (left - count <= p < left + count)]
    arcs += [(("t", p), ("b", b)) for b, p in enumerate(passthrough)]
    return diagram_from_arcs(n, m, arcs)


def nested_cups_diagram(left, right, count):
    """Transpose of nested_caps_diagram: cups growing two inner groups."""
    return nested_caps_diagram(left, right, count).transpose()


def compose_diagrams(upper, lower):
    """Stack `upper` on top of `lower`; returns the glued diagram with any
    closed loops recorded in its loop_count."""
    if upper.m != lower.n:
        raise ValueError(
            "arity mismatch: upper has %d bottom points, lower has %d top points"
            % (upper.m, lower.n)
        )
    n, mid, m = upper.n, upper.m, lower.m

    # Node labels: ("u", idx) in upper, ("l", idx) in lower.
    def step(node):
        """Follow the strand through the gluing from one diagram into the other."""
        diag, idx = node
        if diag == "u":
            # idx is an upper bottom index; continue at the lower top.
            return ("l", mid - 1 - (idx - n))
        # idx is a lower top index; continue at the upper bottom.
        return ("u", n + (mid - 1 - idx))

    def external_name(node):
        diag, idx = node
        if diag == "u" and idx < n:
            return ("t", idx)
        if diag == "l" and idx >= lower.n:
            return ("b", m - 1 - (idx - lower.n))
        return None

    visited = set()
    arcs = []
    for start_diag, start_idx in [("u", i) for i in range(n)] + [
        ("l", lower.n + k) for k in range(m)
    ]:
        node = (start_diag, start_idx)
        if node in visited:
            continue
        origin = external_name(node)
        visited.add(node)
        while True:
            diag, idx = node
            partner = (diag, (upper if diag == "u" else lower).pairing[idx])
            visited.add(partner)
            end = external_name(partner)
            if end is not None:
                arcs.append((origin, end))
                break
            node = step(partner)
            visited.add(node)

    loops = upper.loop_count + lower.loop_count
    for k in range(mid):
        node = ("u", n + k)
        if node in visited:
            continue
        loops += 1
        while node not in visited:
            visited.add(node)
            diag, idx = node
            partner = (diag, (upper if diag == "u" else lower).pairing[idx])
            visited.add(partner)
            node = step(partner)

    return diagram_from_arcs(n, m, arcs, loops)


def tensor_diagrams(left, right):
    """Horizontal juxtaposition, left then right."""
    n, m = left.n + right.n, left.m + right.m
    arcs = []

    def name(diag, top_offset, bottom_offset, idx):
        if idx < diag.n:
            return ("t", top_offset + idx)
        return ("b", bottom_offset + diag.m - 1 - (idx - diag.n))

    for diag, t_off, b_off in ((left, 0, 0), (right, left.n, left.m)):
        for i, j in enumerate(diag.pairing):
            if i < j:
                arcs.append(
                    (name(diag, t_off, b_off, i), name(diag, t_off, b_off, j))
                )
    return diagram_from_arcs(n, m, arcs, left.loop_count + right.loop_count)


class SkeinElement:
    """Sparse cyclotomic-linear combination of loop-free planar diagrams."""

    __slots__ = ("level", "n", "m", "terms")

    def __init__(self, level, n, m, terms=()):
        collected = {}
        for diagram, coeff in dict(terms).items():
            if diagram.n != n or diagram.m != m:
                raise ValueError("diagram arity differs from element arity")
            if diagram.loop_count:
                coeff = coeff * loop_value(level) ** diagram.loop_count
                diagram = diagram.strip_loops()
            if diagram in collected:
                coeff = collected[diagram] + coeff
            if coeff.is_zero():
                collected.pop(diagram, None)
            else:
                collected[diagram] = coeff
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "terms", collected)

    def __setattr__(self, name, value):
        raise AttributeError("SkeinElement is immutable")

    @classmethod
    def from_diagram(cls, level, diagram, coeff=None):
        if coeff is None:
            coeff = one(level)
        return cls(level, diagram.n, diagram.m, {diagram: coeff})

    @classmethod
    def zero_element(cls, level, n, m):
        return cls(level, n, m)

    def is_zero(self):
        return not self.terms

    def _require_compatible(self, other):
        if self.level != other.level:
            raise ValueError("level mismatch: %d vs %d" % (self.level, other.level))
        if self.n != other.n or self.m != other.m:
            raise ValueError("arity mismatch between skein elements")

    def __add__(self, other):
        self._require_compatible(other)
        merged = dict(self.terms)
        for diagram, coeff in other.terms.items():
            merged[diagram] = merged.get(diagram, zero(self.level)) + coeff
        return SkeinElement(self.level, self.n, self.m, merged)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SkeinElement(
            self.level, self.n, self.m,
            {d: -c for d, c in self.terms.items()},
        )

    def scale(self, scalar):
        if isinstance(scalar, int):
            scalar = CycloScalar.from_rational(self.level, scalar)
        return SkeinElement(
            self.level, self.n, self.m,
            {d: c * scalar for d, c in self.terms.items()},
        )

    def compose(self, lower):
        """Stack self on top of `lower` (self is applied first, reading down)."""
        self._require_level(lower)
        if self.m != lower.n:
            raise ValueError(
                "arity mismatch: cannot glue %d bottom points to %d top points"
                % (self.m, lower.n)
            )
        out = {}
        level = self.level
        delta = loop_value(level)
        for d1, c1 in self.terms.items():
            for d2, c2 in lower.terms.items():
                glued = compose_diagrams(d1, d2)
                coeff = c1 * c2
                if glued.loop_count:
                    coeff = coeff * delta ** glued.loop_count
                    glued = glued.strip_loops()
                if glued in out:
                    out[glued] = out[glued] + coeff
                else:
                    out[glued] = coeff
        out = {d: c for d, c in out.items() if not c.is_zero()}
        return SkeinElement(level, self.n, lower.m, out)

    def _require_level(self, other):
        if self.level != other.level:
            raise ValueError("level mismatch: %d vs %d" % (self.level, other.level))

    def tensor(self, right):
        self._require_level(right)
        out = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in right.terms.items():
                d = tensor_diagrams(d1, d2)
                coeff = c1 * c2
                if d in out:
                    out[d] = out[d] + coeff
                else:
                    out[d] = coeff
        return SkeinElement(self.level, self.n + right.n, self.m + right.m, out)

    def transpose(self):
        return SkeinElement(
            self.level, self.m, self.n,
            {d.transpose(): c for d, c in self.terms.items()},
        )

    def closure(self):
        """Markov closure: join top i to bottom position i; returns a scalar."""
        if self.n != self.m:
            raise ValueError("closure needs equal top and bottom arity")
        level = self.level
        delta = loop_value(level)
        total = zero(level)
        for diagram, coeff in self.terms.items():
            loops = _closure_loop_count(diagram)
            total = total + coeff * delta ** loops
        return total

    def __eq__(self, other):
        if not isinstance(other, SkeinElement):
            return NotImplemented
        return (
            self.level == other.level
            and self.n == other.n
            and self.m == other.m
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.level, self.n, self.m, frozenset(self.terms.items()))
        )

    def __repr__(self):
        if not self.terms:
            return "SkeinElement(r=%d, %d->%d, 0)" % (self.level, self.n, self.m)
        bits = ["(%s)*%r" % (c, d) for d, c in self.terms.items()]
        return "SkeinElement(r=%d, %s)" % (self.level, " + ".join(bits))


def _closure_loop_count(diagram):
    n = diagram.n
    closure_partner = list(range(diagram.n + diagram.m))
    for i in range(n):
        j = diagram.bottom_index(i)
        closure_partner[i], closure_partner[j] = j, i
    seen = [False] * (diagram.n + diagram.m)
    loops = 0
    for start in range(diagram.n + diagram.m):
        if seen[start]:
            continue
        loops += 1
        node = start
        while not seen[node]:
            seen[node] = True
            partner = diagram.pairing[node]
            seen[partner] = True
            node = closure_partner[partner]
    return loops


def identity_element(level, n):
    return SkeinElement.from_diagram(level, identity_diagram(n))


def generator_element(level, n, i):
    """The Temperley-Lieb generator e_i as a skein element."""
    return SkeinElement.from_diagram(level, cap_cup_diagram(n, i))


def crossing_element(level, n, i, positive=True):
    """Resolution of a crossing of strands i, i+1 under blackboard framing:
    A * identity + A^-1 * e_i for the positive crossing, mirrored otherwise."""
    a_exp = 1 if positive else -1
    return identity_element(level, n).scale(root_power(level, a_exp)) + (
        generator_element(level, n, i).scale(root_power(level, -a_exp))
    )


@lru_cache(maxsize=None)
def _signed_dimension(level, n):
    """(-1)^n [n+1]: closure value of the n-strand projector."""
    value = quantum_int(level, n + 1)
    return -value if n % 2 else value


@lru_cache(maxsize=None)
def jones_wenzl(level, n):
    """The n-strand Jones-Wenzl projector, 0 <= n <= level-1.

    Built by the signed-dimension recursion
    p_n = p_{n-1}x1 - (D_{n-2}/D_{n-1}) (p_{n-1}x1) e_{n-1} (p_{n-1}x1),
    with D_k = (-1)^k [k+1], which is the form compatible with the loop
    value -A^2 - A^-2 (it is the unique cap-killed idempotent; the tests
    assert both properties directly).
    """
    if n < 0:
        raise ValueError("strand count must be nonnegative")
    if n >= level:
        raise ValueError(
            "quantum integer vanishes: no %d-strand projector at level %d"
            % (n, level)
        )
    if n == 0:
        return SkeinElement.from_diagram(
            level, PlanarDiagram(0, 0, ()), one(level)
        )
    if n == 1:
        return identity_element(level, 1)
    prev = jones_wenzl(level, n - 1).tensor(identity_element(level, 1))
    ratio = _signed_dimension(level, n - 2) / _signed_dimension(level, n - 1)
    correction = prev.compose(generator_element(level, n, n - 2)).compose(prev)
    return prev - correction.scale(ratio)
