"""Labeled recoupling data built on the planar diagram engine.

Labels live in I = {0, ..., r-2}; a labeled edge means a bundle of that
many strands through a Jones-Wenzl projector.  Trivalent vertices are the
join (two bundles capped together down to one) and its transpose split.
From these come the closed theta and tetrahedral networks, quantum
6j-symbols, crossing eigenvalues, framing twists and Hopf link values.

Closed formulas exist for dimensions, thetas, crossing eigenvalues and
twists; each is cross-checked against the diagram evaluation in the test
suite before anything downstream trusts it.  Tetrahedra are evaluated
diagrammatically only, memoized up to the full symmetry of the tetrahedron.

All values are memoized per level on a `RecouplingTables` instance; use
the module-level `tables(r)` factory to share tables across callers.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from coribbon.cyclotomic import (
    one,
    quantum_factorial,
    quantum_int,
    root_power,
    zero,
)
from coribbon.skein import (
    SkeinElement,
    crossing_element,
    identity_element,
    jones_wenzl,
    nested_caps_diagram,
    nested_cups_diagram,
)


def admissible(level, a, b, c):
    """True iff (a, b, c) is an admissible label triple at this level.

    Requires labels in range, even parity, the triangle inequalities and
    the level cutoff a + b + c <= 2r - 4.  Out-of-range labels simply give
    False so callers can probe freely.
    """
    top = level - 2
    for x in (a, b, c):
        if not isinstance(x, int) or x < 0 or x > top:
            return False
    if (a + b + c) % 2 != 0:
        return False
    if a + b < c or b + c < a or c + a < b:
        return False
    return a + b + c <= 2 * level - 4


# Edge slots of the tetrahedral network, identified by the pair of
# vertices each edge connects; the four vertices carry the label triples
# (a,b,j), (c,d,j), (a,d,i), (b,c,i) in slot order (a, b, c, d, i, j).
_TET_EDGE_PAIRS = (
    frozenset((1, 3)),  # a
    frozenset((1, 4)),  # b
    frozenset((2, 4)),  # c
    frozenset((2, 3)),  # d
    frozenset((3, 4)),  # i
    frozenset((1, 2)),  # j
)


@lru_cache(maxsize=None)
def _tet_symmetry_maps():
    """For each vertex permutation, the induced permutation of edge slots."""
    maps = []
    for perm in permutations((1, 2, 3, 4)):
        relabel = {v: perm[v - 1] for v in (1, 2, 3, 4)}
        image = []
        for pair in _TET_EDGE_PAIRS:
            moved = frozenset(relabel[v] for v in pair)
            image.append(_TET_EDGE_PAIRS.index(moved))
        maps.append(tuple(image))
    return tuple(maps)


class RecouplingTables:
    """Memoized recoupling data at a fixed level."""

    def __init__(self, level):
        if not isinstance(level, int) or level < 2:
            raise ValueError("level must be an integer >= 2, got %r" % (level,))
        self.level = level
        self._memo = {}

    # -- label bookkeeping ---------------------------------------------------

    @property
    def labels(self):
        return range(self.level - 1)

    def admissible(self, a, b, c):
        return admissible(self.level, a, b, c)

    def require_admissible(self, *triples):
        for triple in triples:
            if not self.admissible(*triple):
                raise ValueError(
                    "inadmissible triple %r at level %d" % (triple, self.level)
                )

    def fusion_channels(self, a, b):
        """Labels c with (a, b, c) admissible, ascending."""
        return self._cached(
            ("channels", a, b),
            lambda: tuple(c for c in self.labels if self.admissible(a, b, c)),
        )

    def admissible_pairs(self, j):
        """All (p, q) with (p, q, j) admissible, lexicographic."""
        return self._cached(
            ("pairs", j),
            lambda: tuple(
                (p, q)
                for p in self.labels
                for q in self.labels
                if self.admissible(p, q, j)
            ),
        )

    def _cached(self, key, thunk):
        try:
            return self._memo[key]
        except KeyError:
            value = thunk()
            self._memo[key] = value
            return value

    # -- closed formulas -----------------------------------------------------

    def dim(self, j):
        """Quantum dimension of the simple object j: (-1)^j [j+1]."""
        if j not in self.labels:
            raise ValueError("label %r out of range at level %d" % (j, self.level))
        value = quantum_int(self.level, j + 1)
        return -value if j % 2 else value

    def theta(self, a, b, c):
        """Closed-formula value of the theta network on (a, b, c)."""
        self.require_admissible((a, b, c))
        return self._cached(
            ("theta",) + tuple(sorted((a, b, c))), lambda: self._theta(a, b, c)
        )

    def _theta(self, a, b, c):
        level = self.level
        x = (a + b - c) // 2
        y = (b + c - a) // 2
        z = (c + a - b) // 2
        num = (
            quantum_factorial(level, x + y + z + 1)
            * quantum_factorial(level, x)
            * quantum_factorial(level, y)
            * quantum_factorial(level, z)
        )
        den = (
            quantum_factorial(level, x + y)
            * quantum_factorial(level, y + z)
            * quantum_factorial(level, z + x)
        )
        value = num / den
        return -value if (x + y + z) % 2 else value

    def crossing_coeff(self, a, b, c):
        """Eigenvalue of the positive bundle crossing on the c-channel."""
        self.require_admissible((a, b, c))
        exponent = (c * (c + 2) - a * (a + 2) - b * (b + 2)) // 2
        value = root_power(self.level, exponent)
        return -value if ((a + b - c) // 2) % 2 else value

    def twist(self, j):
        """Framing twist of the simple object j: (-1)^j A^(j(j+2))."""
        if j not in self.labels:
            raise ValueError("label %r out of range at level %d" % (j, self.level))
        value = root_power(self.level, j * (j + 2))
        return -value if j % 2 else value

    # -- vertices and networks ----------------------------------------------

    def projector(self, n):
        return jones_wenzl(self.level, n)

    def join(self, a, b, c):
        """Vertex taking the bundles a, b (top) down to c, all projected."""
        self.require_admissible((a, b, c))
        return self._cached(("join", a, b, c), lambda: self._join(a, b, c))

    def _join(self, a, b, c):
        level = self.level
        caps = SkeinElement.from_diagram(
            level, nested_caps_diagram(a, b, (a + b - c) // 2)
        )
        top = self.projector(a).tensor(self.projector(b))
        return top.compose(caps).compose(self.projector(c))

    def split(self, c, a, b):
        """Vertex taking c (top) up into the bundles a, b: transposed join."""
        return self._cached(
            ("split", c, a, b), lambda: self.join(a, b, c).transpose()
        )

    def identity_bundle(self, n):
        return identity_element(self.level, n)

    def theta_net(self, a, b, c):
        """Diagram evaluation of the theta network (the oracle for theta)."""
        self.require_admissible((a, b, c))
        return self.split(c, a, b).compose(self.join(a, b, c)).closure()

    def dim_net(self, j):
        """Diagram evaluation of the dimension loop (closure of the projector)."""
        if j not in self.labels:
            raise ValueError("label %r out of range at level %d" % (j, self.level))
        return self.projector(j).closure()

    def tet(self, a, b, c, d, i, j):
        """Tetrahedral network with vertex triples (a,b,j), (c,d,j), (a,d,i),
        (b,c,i), evaluated diagrammatically; memoized over the full order-24
        symmetry of the tetrahedron."""
        self.require_admissible((a, b, j), (c, d, j), (a, d, i), (b, c, i))
        labels = (a, b, c, d, i, j)
        canonical = min(
            tuple(labels[slot] for slot in image)
            for image in _tet_symmetry_maps()
        )
        return self._cached(("tet", canonical), lambda: self.tet_net(*canonical))

    def tet_net(self, a, b, c, d, i, j):
        """Raw diagram evaluation of the tetrahedral network (no symmetry)."""
        net = self.split(i, a, d)
        net = net.compose(self.split(a, b, j).tensor(self.identity_bundle(d)))
        net = net.compose(self.identity_bundle(b).tensor(self.join(j, d, c)))
        net = net.compose(self.join(b, c, i))
        return net.closure()

    def sixj(self, a, b, i, c, d, j):
        """Quantum 6j-symbol: dim(i) * tet(a,b,c,d,i,j) / (theta(a,d,i) theta(b,c,i))."""
        return self.dim(i) * self.tet(a, b, c, d, i, j) / (
            self.theta(a, d, i) * self.theta(b, c, i)
        )

    def sixj_or_zero(self, a, b, i, c, d, j):
        """The 6j-symbol, or zero when any defining vertex is inadmissible."""
        for triple in ((a, b, j), (c, d, j), (a, d, i), (b, c, i)):
            if not self.admissible(*triple):
                return zero(self.level)
        return self.sixj(a, b, i, c, d, j)

    # -- braiding oracles ----------------------------------------------------

    def bundle_crossing(self, a, b, positive=True):
        """Crossing word moving an a-bundle across a b-bundle (a+b strands);
        no projectors included."""
        element = self.identity_bundle(a + b)
        for start in range(a - 1, -1, -1):
            for k in range(b):
                element = element.compose(
                    crossing_element(self.level, a + b, start + k, positive)
                )
        return element

    def crossing_coeff_net(self, a, b, c):
        """Oracle for crossing_coeff: project, braid, rejoin, close, normalize."""
        self.require_admissible((a, b, c))
        net = self.split(c, a, b)
        net = net.compose(self.bundle_crossing(a, b))
        net = net.compose(self.join(b, a, c))
        return net.closure() / self.theta(a, b, c)

    def curl(self, j, positive=True):
        """Kink on a projected j-bundle: wrap the bundle once around itself.

        With positive crossings the single-strand curl evaluates to -A^3,
        the inverse of the single-strand partial closure of one crossing;
        the twist convention is pinned to the positive curl."""
        level = self.level
        cups = SkeinElement.from_diagram(level, nested_cups_diagram(j, j, j))
        caps = SkeinElement.from_diagram(level, nested_caps_diagram(j, j, j))
        net = self.projector(j).tensor(cups)
        net = net.compose(
            self.bundle_crossing(j, j, positive).tensor(self.identity_bundle(j))
        )
        return net.compose(self.projector(j).tensor(caps))

    def twist_net(self, j):
        """Oracle for twist: close the kinked projector, divide by the loop."""
        if j == 0:
            return one(self.level)
        return self.curl(j).closure() / self.dim(j)

    def hopf_link(self, i, j):
        """Doubly projected Hopf link value (categorical S-matrix entry)."""
        if i not in self.labels or j not in self.labels:
            raise ValueError(
                "labels %r out of range at level %d" % ((i, j), self.level)
            )
        key = ("hopf", min(i, j), max(i, j))
        return self._cached(key, lambda: self._hopf_link(i, j))

    def _hopf_link(self, i, j):
        net = self.projector(i).tensor(self.projector(j))
        net = net.compose(self.bundle_crossing(i, j))
        net = net.compose(self.bundle_crossing(j, i))
        return net.closure()


@lru_cache(maxsize=None)
def tables(level):
    """Shared RecouplingTables instance per level."""
    return RecouplingTables(level)
