"""Named verification checks with structured, deterministic reports.

Every invariant of the recoupling, algebra, and comodule layers is an
addressable check, grouped into suites.  Checks quantified over basis
vectors iterate exhaustively or by seeded sampling; a failure carries
the offending tuple together with both sides' exact values, re-tested
in isolation and greedily shrunk to a minimal failing tuple.  Reports
serialize to canonical JSON with timing excluded, so identical inputs
produce identical bytes.

The module also re-derives the two pictorial sign conventions by
elimination: exactly one flag combination satisfies the convolution and
compatibility axioms of the universal pairing and the twist.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

from coribbon.cyclotomic import CycloScalar, one, zero
from coribbon.linalg import identity_matrix, mat_mul, matrix_rank
from coribbon.weak_hopf import (
    WeakHopfAlgebra,
    add_elements,
    algebra,
    prune,
    scale_element,
)
from coribbon import comodules


class CheckSpec(NamedTuple):
    """A request to run one named check at one level."""

    name: str
    level: int
    scope: str = "exhaustive"
    sample: int = 500
    seed: int = 42


class CheckResult(NamedTuple):
    name: str
    scope: str
    status: str
    checked: int
    witness: dict | None
    duration: float


class VerificationReport(NamedTuple):
    level: int
    dimension: int
    conventions: dict
    results: tuple

    @property
    def passed(self):
        return all(result.status == "pass" for result in self.results)


# ---------------------------------------------------------------------------
# witness plumbing


def _element_json(wha, element):
    return [
        [list(vector), str(value)]
        for vector, value in sorted(
            element.items(), key=lambda item: wha.index[item[0]]
        )
    ]


def _tensor_json(wha, element):
    return [
        [[list(left), list(right)], str(value)]
        for (left, right), value in sorted(
            element.items(),
            key=lambda item: (wha.index[item[0][0]], wha.index[item[0][1]]),
        )
    ]


def _triple_json(wha, element):
    return [
        [[list(a), list(b), list(c)], str(value)]
        for (a, b, c), value in sorted(
            element.items(),
            key=lambda item: tuple(wha.index[v] for v in item[0]),
        )
    ]


def _shrink(wha, found, evaluate):
    """Greedily lower each tuple slot to the smallest still-failing vector."""
    current = list(found)
    improved = True
    while improved:
        improved = False
        for slot in range(len(current)):
            bound = wha.index[current[slot]]
            for candidate in wha.basis:
                if wha.index[candidate] >= bound:
                    break
                trial = list(current)
                trial[slot] = candidate
                if evaluate(tuple(trial)) is not None:
                    current = trial
                    improved = True
                    break
    return tuple(current)


def _scan(wha, tuples, evaluate):
    """Run evaluate over tuples; stop at the first failure and shrink it."""
    checked = 0
    for candidate in tuples:
        checked += 1
        if evaluate(candidate) is None:
            continue
        minimal = _shrink(wha, candidate, evaluate)
        left, right = evaluate(minimal)
        return checked, {
            "tuple": [list(vector) for vector in minimal],
            "left": left,
            "right": right,
        }
    return checked, None


def _bump(store, key, value):
    if key in store:
        value = store[key] + value
    if value.is_zero():
        store.pop(key, None)
    else:
        store[key] = value


def _sweedler2(wha, vector):
    return wha.comultiply_basis(vector).items()


def _sweedler3(wha, vector):
    for (first, middle), outer in wha.comultiply_basis(vector).items():
        for (second, third), inner in wha.comultiply_basis(middle).items():
            yield first, second, third, outer * inner


def _mismatch(wha, left, right):
    if prune(left) == prune(right):
        return None
    return _element_json(wha, left), _element_json(wha, right)


def _scalar_mismatch(left, right):
    if left == right:
        return None
    return str(left), str(right)


# ---------------------------------------------------------------------------
# check registry


class _Check(NamedTuple):
    name: str
    suite: str
    arity: int
    run: object


_REGISTRY = {}


def _register(name, suite, arity):
    def wrap(func):
        _REGISTRY[name] = _Check(name, suite, arity, func)
        return func

    return wrap


def check_names(suite=None):
    names = [
        check.name
        for check in _REGISTRY.values()
        if suite is None or check.suite == suite
    ]
    return sorted(names)


def suite_names():
    return sorted({check.suite for check in _REGISTRY.values()})


# -- recoupling layer -------------------------------------------------------


@_register("recoupling.dimension_matches_network", "recoupling", 0)
def _check_dimension_network(wha, tuples):
    tab = wha.tables
    checked = 0
    for j in tab.labels:
        checked += 1
        closed, network = tab.dim(j), tab.dim_net(j)
        if closed != network:
            return checked, {"label": j, "left": str(closed), "right": str(network)}
    return checked, None


@_register("recoupling.theta_matches_network", "recoupling", 0)
def _check_theta_network(wha, tuples):
    tab = wha.tables
    checked = 0
    for a in tab.labels:
        for b in tab.labels:
            for c in tab.labels:
                if not tab.admissible(a, b, c):
                    continue
                checked += 1
                closed, network = tab.theta(a, b, c), tab.theta_net(a, b, c)
                if closed != network:
                    return checked, {
                        "labels": [a, b, c],
                        "left": str(closed),
                        "right": str(network),
                    }
    return checked, None


@_register("recoupling.pentagon_identity", "recoupling", 0)
def _check_pentagon(wha, tuples):
    tab = wha.tables
    level = wha.level
    checked = 0
    for labels in itertools.product(tab.labels, repeat=9):
        e1, e2, e3, e4, e0, x, y, z, w = labels
        checked += 1
        lhs = tab.sixj_or_zero(x, e3, z, e4, e0, y) * tab.sixj_or_zero(
            e1, e2, w, z, e0, x
        )
        rhs = zero(level)
        for v in tab.labels:
            rhs = rhs + (
                tab.sixj_or_zero(e1, e2, v, e3, y, x)
                * tab.sixj_or_zero(e1, v, w, e4, e0, y)
                * tab.sixj_or_zero(e2, e3, z, e4, w, v)
            )
        if lhs != rhs:
            return checked, {
                "labels": list(labels),
                "left": str(lhs),
                "right": str(rhs),
            }
    return checked, None


@_register("recoupling.sixj_orthogonality", "recoupling", 0)
def _check_orthogonality(wha, tuples):
    tab = wha.tables
    level = wha.level
    checked = 0
    for a in tab.labels:
        for b in tab.labels:
            for c in tab.labels:
                for d in tab.labels:
                    columns = [
                        j
                        for j in tab.labels
                        if tab.admissible(a, b, j) and tab.admissible(c, d, j)
                    ]
                    for j in columns:
                        for j2 in columns:
                            checked += 1
                            total = zero(level)
                            for i in tab.labels:
                                total = total + tab.sixj_or_zero(
                                    a, b, i, c, d, j
                                ) * tab.sixj_or_zero(d, a, j2, b, c, i)
                            expected = one(level) if j == j2 else zero(level)
                            if total != expected:
                                return checked, {
                                    "labels": [a, b, c, d, j, j2],
                                    "left": str(total),
                                    "right": str(expected),
                                }
    return checked, None


@_register("recoupling.crossing_twist_relation", "recoupling", 0)
def _check_crossing_twist(wha, tuples):
    tab = wha.tables
    checked = 0
    for a in tab.labels:
        for b in tab.labels:
            for c in tab.labels:
                if not tab.admissible(a, b, c):
                    continue
                checked += 1
                left = tab.crossing_coeff(a, b, c) * tab.crossing_coeff(b, a, c)
                right = tab.twist(c) / (tab.twist(a) * tab.twist(b))
                if left != right:
                    return checked, {
                        "labels": [a, b, c],
                        "left": str(left),
                        "right": str(right),
                    }
    return checked, None


# -- weak bialgebra axioms --------------------------------------------------


@_register("wba.associativity", "wba", 3)
def _check_associativity(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        x, y, z = candidate
        left = wha.multiply(wha.multiply_basis(x, y), {z: one(level)})
        right = wha.multiply({x: one(level)}, wha.multiply_basis(y, z))
        return _mismatch(wha, left, right)

    return _scan(wha, tuples, evaluate)


@_register("wba.unit_identity", "wba", 1)
def _check_unit_identity(wha, tuples):
    level = wha.level
    unit = wha.unit()

    def evaluate(candidate):
        (x,) = candidate
        singleton = {x: one(level)}
        bad = _mismatch(wha, wha.multiply(unit, singleton), singleton)
        if bad is not None:
            return bad
        return _mismatch(wha, wha.multiply(singleton, unit), singleton)

    return _scan(wha, tuples, evaluate)


@_register("wba.coassociativity", "wba", 1)
def _check_coassociativity(wha, tuples):
    def evaluate(candidate):
        (x,) = candidate
        left = {}
        right = {}
        for (first, second), outer in _sweedler2(wha, x):
            for (a, b), inner in _sweedler2(wha, first):
                _bump(left, (a, b, second), outer * inner)
            for (a, b), inner in _sweedler2(wha, second):
                _bump(right, (first, a, b), outer * inner)
        if left == right:
            return None
        return _triple_json(wha, left), _triple_json(wha, right)

    return _scan(wha, tuples, evaluate)


@_register("wba.counit_laws", "wba", 1)
def _check_counit_laws(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        (x,) = candidate
        singleton = {x: one(level)}
        absorbed_left = {}
        absorbed_right = {}
        for (first, second), value in _sweedler2(wha, x):
            _bump(absorbed_left, second, value * wha.counit_basis(first))
            _bump(absorbed_right, first, value * wha.counit_basis(second))
        bad = _mismatch(wha, absorbed_left, singleton)
        if bad is not None:
            return bad
        return _mismatch(wha, absorbed_right, singleton)

    return _scan(wha, tuples, evaluate)


@_register("wba.comultiplication_homomorphism", "wba", 2)
def _check_comultiplication_homomorphism(wha, tuples):
    def evaluate(candidate):
        x, y = candidate
        left = wha.comultiply(wha.multiply_basis(x, y))
        right = wha.multiply_tensor(
            wha.comultiply_basis(x), wha.comultiply_basis(y)
        )
        if prune(left) == prune(right):
            return None
        return _tensor_json(wha, left), _tensor_json(wha, right)

    return _scan(wha, tuples, evaluate)


@_register("wba.unit_comultiplication_exchange", "wba", 0)
def _check_unit_comultiplication(wha, tuples):
    legs = wha.comultiply(wha.unit())
    iterated = {}
    for (first, second), outer in legs.items():
        for (a, b), inner in _sweedler2(wha, first):
            _bump(iterated, (a, b, second), outer * inner)
    ordered = {}
    swapped = {}
    for (a, b), outer in legs.items():
        for (c, d), inner in legs.items():
            weight = outer * inner
            for mid, value in wha.multiply_basis(b, c).items():
                _bump(ordered, (a, mid, d), weight * value)
            for mid, value in wha.multiply_basis(c, b).items():
                _bump(swapped, (a, mid, d), weight * value)
    for variant, name in ((ordered, "ordered"), (swapped, "swapped")):
        if iterated != variant:
            return 2, {
                "variant": name,
                "left": _triple_json(wha, iterated),
                "right": _triple_json(wha, variant),
            }
    return 2, None


@_register("wba.counit_weak_multiplicativity", "wba", 3)
def _check_counit_weak_multiplicativity(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        x, y, z = candidate
        full = wha.counit(wha.multiply(wha.multiply_basis(x, y), {z: one(level)}))
        straight = zero(level)
        crossed = zero(level)
        for (first, second), value in _sweedler2(wha, y):
            straight = straight + value * wha.counit(
                wha.multiply_basis(x, first)
            ) * wha.counit(wha.multiply_basis(second, z))
            crossed = crossed + value * wha.counit(
                wha.multiply_basis(x, second)
            ) * wha.counit(wha.multiply_basis(first, z))
        bad = _scalar_mismatch(full, straight)
        if bad is not None:
            return bad
        return _scalar_mismatch(full, crossed)

    return _scan(wha, tuples, evaluate)


# -- weak Hopf axioms -------------------------------------------------------


@_register("wha.antipode_target_projection", "wha", 1)
def _check_antipode_target(wha, tuples):
    def evaluate(candidate):
        (x,) = candidate
        total = {}
        for (first, second), value in _sweedler2(wha, x):
            image, weight = wha.antipode_basis(second)
            total = add_elements(
                total,
                scale_element(wha.multiply_basis(first, image), value * weight),
            )
        return _mismatch(wha, total, wha.counital_target({x: one(wha.level)}))

    return _scan(wha, tuples, evaluate)


@_register("wha.antipode_source_projection", "wha", 1)
def _check_antipode_source(wha, tuples):
    def evaluate(candidate):
        (x,) = candidate
        total = {}
        for (first, second), value in _sweedler2(wha, x):
            image, weight = wha.antipode_basis(first)
            total = add_elements(
                total,
                scale_element(wha.multiply_basis(image, second), value * weight),
            )
        return _mismatch(wha, total, wha.counital_source({x: one(wha.level)}))

    return _scan(wha, tuples, evaluate)


@_register("wha.antipode_sandwich", "wha", 1)
def _check_antipode_sandwich(wha, tuples):
    def evaluate(candidate):
        (x,) = candidate
        total = {}
        for first, second, third, value in _sweedler3(wha, x):
            left, lw = wha.antipode_basis(first)
            right, rw = wha.antipode_basis(third)
            middle = wha.multiply(
                wha.multiply_basis(left, second), {right: one(wha.level)}
            )
            total = add_elements(total, scale_element(middle, value * lw * rw))
        return _mismatch(wha, total, wha.antipode({x: one(wha.level)}))

    return _scan(wha, tuples, evaluate)


@_register("wha.antipode_antihomomorphism", "wha", 2)
def _check_antipode_antihomomorphism(wha, tuples):
    def evaluate(candidate):
        x, y = candidate
        left = wha.antipode(wha.multiply_basis(x, y))
        xi, xw = wha.antipode_basis(x)
        yi, yw = wha.antipode_basis(y)
        right = scale_element(wha.multiply_basis(yi, xi), yw * xw)
        return _mismatch(wha, left, right)

    return _scan(wha, tuples, evaluate)


@_register("wha.antipode_comultiplication_antihomomorphism", "wha", 1)
def _check_antipode_coalgebra(wha, tuples):
    def evaluate(candidate):
        (x,) = candidate
        image, weight = wha.antipode_basis(x)
        left = {
            pair: value * weight
            for pair, value in wha.comultiply_basis(image).items()
        }
        right = {}
        for (first, second), value in _sweedler2(wha, x):
            fi, fw = wha.antipode_basis(first)
            si, sw = wha.antipode_basis(second)
            _bump(right, (si, fi), value * fw * sw)
        if prune(left) == prune(right):
            return None
        return _tensor_json(wha, left), _tensor_json(wha, right)

    return _scan(wha, tuples, evaluate)


@_register("wha.antipode_preserves_counit", "wha", 1)
def _check_antipode_counit(wha, tuples):
    def evaluate(candidate):
        (x,) = candidate
        image, weight = wha.antipode_basis(x)
        return _scalar_mismatch(
            weight * wha.counit_basis(image), wha.counit_basis(x)
        )

    return _scan(wha, tuples, evaluate)


@_register("wha.counital_maps_idempotent", "wha", 1)
def _check_counital_idempotent(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        (x,) = candidate
        singleton = {x: one(level)}
        target = wha.counital_target(singleton)
        bad = _mismatch(wha, wha.counital_target(target), target)
        if bad is not None:
            return bad
        source = wha.counital_source(singleton)
        return _mismatch(wha, wha.counital_source(source), source)

    return _scan(wha, tuples, evaluate)


@_register("wha.base_algebra_shape", "wha", 0)
def _check_base_algebra_shape(wha, tuples):
    level = wha.level
    count = wha.label_count
    observed = {
        "target_dimension": len(wha.base_algebra_target()),
        "source_dimension": len(wha.base_algebra_source()),
        "intersection_dimension": len(wha.base_intersection()),
        "minimal_block_size": len(wha.minimal_subalgebra()),
        "counit_of_unit": str(wha.counit(wha.unit())),
        "antipode_fixes_unit": prune(wha.antipode(wha.unit()))
        == prune(wha.unit()),
    }
    expected = {
        "target_dimension": count,
        "source_dimension": count,
        "intersection_dimension": 1,
        "minimal_block_size": count * count,
        "counit_of_unit": str(CycloScalar.from_rational(level, count)),
        "antipode_fixes_unit": True,
    }
    if observed == expected:
        return len(observed), None
    return len(observed), {"left": observed, "right": expected}


@_register("wha.minimal_block_idempotents", "wha", 0)
def _check_minimal_block(wha, tuples):
    level = wha.level
    block = wha.minimal_subalgebra()
    checked = 0
    for x in block:
        checked += 1
        if wha.antipode_squared_scalar(x) != one(level):
            return checked, {
                "vector": list(x),
                "left": str(wha.antipode_squared_scalar(x)),
                "right": str(one(level)),
            }
        for y in block:
            checked += 1
            product = wha.multiply_basis(x, y)
            expected = {x: one(level)} if x == y else {}
            if prune(product) != expected:
                return checked, {
                    "tuple": [list(x), list(y)],
                    "left": _element_json(wha, product),
                    "right": _element_json(wha, expected),
                }
    return checked, None


# -- pivotal grouplike form -------------------------------------------------


def _grouplike_sandwich(wha, x, first_form, third_form):
    total = {}
    for first, second, third, value in _sweedler3(wha, x):
        _bump(total, second, value * first_form(first) * third_form(third))
    return total


@_register("pivotal.form_invertible", "pivotal", 1)
def _check_pivotal_invertible(wha, tuples):
    forward = wha.convolve(wha.pivotal_form_basis, wha.pivotal_bar_basis)
    backward = wha.convolve(wha.pivotal_bar_basis, wha.pivotal_form_basis)

    def evaluate(candidate):
        (x,) = candidate
        expected = wha.counit_basis(x)
        bad = _scalar_mismatch(forward(x), expected)
        if bad is not None:
            return bad
        return _scalar_mismatch(backward(x), expected)

    return _scan(wha, tuples, evaluate)


@_register("pivotal.sandwich_form_first", "pivotal", 1)
def _check_pivotal_form_first(wha, tuples):
    def evaluate(candidate):
        (x,) = candidate
        total = _grouplike_sandwich(
            wha, x, wha.pivotal_form_basis, wha.pivotal_bar_basis
        )
        return _mismatch(wha, total, {x: wha.antipode_squared_scalar(x)})

    return _scan(wha, tuples, evaluate)


@_register("pivotal.sandwich_bar_first", "pivotal", 1)
def _check_pivotal_bar_first(wha, tuples):
    """Transposed sandwich; yields the inverse eigenvalue, so it can only
    agree with the antipode square while every block scalar is involutive
    (levels two and three)."""

    def evaluate(candidate):
        (x,) = candidate
        total = _grouplike_sandwich(
            wha, x, wha.pivotal_bar_basis, wha.pivotal_form_basis
        )
        return _mismatch(wha, total, {x: wha.antipode_squared_scalar(x)})

    return _scan(wha, tuples, evaluate)


# -- coquasitriangular pairing ----------------------------------------------


@_register("coquasi.pairing_counit_left", "coquasi", 2)
def _check_pairing_counit_left(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        x, y = candidate
        total = zero(level)
        for (x1, x2), cx in _sweedler2(wha, x):
            for (y1, y2), cy in _sweedler2(wha, y):
                total = total + cx * cy * wha.counit(
                    wha.multiply_basis(x1, y1)
                ) * wha.r_form_basis(x2, y2)
        return _scalar_mismatch(total, wha.r_form_basis(x, y))

    return _scan(wha, tuples, evaluate)


@_register("coquasi.pairing_counit_right", "coquasi", 2)
def _check_pairing_counit_right(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        x, y = candidate
        total = zero(level)
        for (x1, x2), cx in _sweedler2(wha, x):
            for (y1, y2), cy in _sweedler2(wha, y):
                total = total + cx * cy * wha.r_form_basis(
                    x1, y1
                ) * wha.counit(wha.multiply_basis(y2, x2))
        return _scalar_mismatch(total, wha.r_form_basis(x, y))

    return _scan(wha, tuples, evaluate)


@_register("coquasi.pairing_inverse_left", "coquasi", 2)
def _check_pairing_inverse_left(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        x, y = candidate
        total = zero(level)
        for (x1, x2), cx in _sweedler2(wha, x):
            for (y1, y2), cy in _sweedler2(wha, y):
                total = total + cx * cy * wha.r_bar_basis(
                    x1, y1
                ) * wha.r_form_basis(x2, y2)
        return _scalar_mismatch(total, wha.counit(wha.multiply_basis(y, x)))

    return _scan(wha, tuples, evaluate)


@_register("coquasi.pairing_inverse_right", "coquasi", 2)
def _check_pairing_inverse_right(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        x, y = candidate
        total = zero(level)
        for (x1, x2), cx in _sweedler2(wha, x):
            for (y1, y2), cy in _sweedler2(wha, y):
                total = total + cx * cy * wha.r_form_basis(
                    x1, y1
                ) * wha.r_bar_basis(x2, y2)
        return _scalar_mismatch(total, wha.counit(wha.multiply_basis(x, y)))

    return _scan(wha, tuples, evaluate)


@_register("coquasi.pairing_almost_commutative", "coquasi", 2)
def _check_pairing_almost_commutative(wha, tuples):
    def evaluate(candidate):
        x, y = candidate
        flipped = {}
        straight = {}
        for (x1, x2), cx in _sweedler2(wha, x):
            for (y1, y2), cy in _sweedler2(wha, y):
                weight = cx * cy * wha.r_form_basis(x2, y2)
                if not weight.is_zero():
                    flipped = add_elements(
                        flipped,
                        scale_element(wha.multiply_basis(x1, y1), weight),
                    )
                weight = cx * cy * wha.r_form_basis(x1, y1)
                if not weight.is_zero():
                    straight = add_elements(
                        straight,
                        scale_element(wha.multiply_basis(y2, x2), weight),
                    )
        return _mismatch(wha, flipped, straight)

    return _scan(wha, tuples, evaluate)


@_register("coquasi.pairing_product_left", "coquasi", 3)
def _check_pairing_product_left(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        x, y, z = candidate
        lhs = zero(level)
        for vector, value in wha.multiply_basis(x, y).items():
            lhs = lhs + value * wha.r_form_basis(vector, z)
        rhs = zero(level)
        for (z1, z2), cz in _sweedler2(wha, z):
            rhs = rhs + cz * wha.r_form_basis(y, z1) * wha.r_form_basis(x, z2)
        return _scalar_mismatch(lhs, rhs)

    return _scan(wha, tuples, evaluate)


@_register("coquasi.pairing_product_right", "coquasi", 3)
def _check_pairing_product_right(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        x, y, z = candidate
        lhs = zero(level)
        for vector, value in wha.multiply_basis(y, z).items():
            lhs = lhs + value * wha.r_form_basis(x, vector)
        rhs = zero(level)
        for (x1, x2), cx in _sweedler2(wha, x):
            rhs = rhs + cx * wha.r_form_basis(x1, y) * wha.r_form_basis(x2, z)
        return _scalar_mismatch(lhs, rhs)

    return _scan(wha, tuples, evaluate)


# -- coribbon twist ---------------------------------------------------------


@_register("coribbon.twist_multiplicative", "coribbon", 2)
def _check_twist_multiplicative(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        x, y = candidate
        twisted = wha.ribbon_form(wha.multiply_basis(x, y))
        built = zero(level)
        for x1, x2, x3, cx in _sweedler3(wha, x):
            nx = wha.ribbon_form_basis(x1)
            if nx.is_zero():
                continue
            for y1, y2, y3, cy in _sweedler3(wha, y):
                ny = wha.ribbon_form_basis(y1)
                if ny.is_zero():
                    continue
                built = built + cx * cy * nx * ny * wha.r_form_basis(
                    x2, y2
                ) * wha.r_form_basis(y3, x3)
        return _scalar_mismatch(twisted, built)

    return _scan(wha, tuples, evaluate)


@_register("coribbon.twist_central", "coribbon", 1)
def _check_twist_central(wha, tuples):
    def evaluate(candidate):
        (x,) = candidate
        acting_left = {}
        acting_right = {}
        for (first, second), value in _sweedler2(wha, x):
            _bump(acting_left, second, value * wha.ribbon_form_basis(first))
            _bump(acting_right, first, value * wha.ribbon_form_basis(second))
        return _mismatch(wha, acting_left, acting_right)

    return _scan(wha, tuples, evaluate)


@_register("coribbon.twist_invertible", "coribbon", 1)
def _check_twist_invertible(wha, tuples):
    forward = wha.convolve(wha.ribbon_form_basis, wha.ribbon_bar_basis)
    backward = wha.convolve(wha.ribbon_bar_basis, wha.ribbon_form_basis)

    def evaluate(candidate):
        (x,) = candidate
        expected = wha.counit_basis(x)
        bad = _scalar_mismatch(forward(x), expected)
        if bad is not None:
            return bad
        return _scalar_mismatch(backward(x), expected)

    return _scan(wha, tuples, evaluate)


@_register("coribbon.twist_antipode_invariant", "coribbon", 1)
def _check_twist_antipode(wha, tuples):
    def evaluate(candidate):
        (x,) = candidate
        image, weight = wha.antipode_basis(x)
        return _scalar_mismatch(
            weight * wha.ribbon_form_basis(image), wha.ribbon_form_basis(x)
        )

    return _scan(wha, tuples, evaluate)


# -- derived forms ----------------------------------------------------------


@_register("forms.double_braiding_from_pairing", "forms", 2)
def _check_double_braiding_form(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        x, y = candidate
        total = zero(level)
        for (x1, x2), cx in _sweedler2(wha, x):
            for (y1, y2), cy in _sweedler2(wha, y):
                total = total + cx * cy * wha.r_form_basis(
                    x1, y1
                ) * wha.r_form_basis(y2, x2)
        return _scalar_mismatch(wha.q_form_basis(x, y), total)

    return _scan(wha, tuples, evaluate)


@_register("forms.dual_vectors_from_pairing", "forms", 1)
def _check_dual_vectors(wha, tuples):
    level = wha.level

    def evaluate(candidate):
        (x,) = candidate
        u_built = zero(level)
        v_built = zero(level)
        for (x1, x2), value in _sweedler2(wha, x):
            image, weight = wha.antipode_basis(x2)
            u_built = u_built + value * weight * wha.r_form_basis(image, x1)
            image, weight = wha.antipode_basis(x1)
            v_built = v_built + value * weight * wha.r_form_basis(image, x2)
        bad = _scalar_mismatch(wha.drinfeld_u_basis(x), u_built)
        if bad is not None:
            return bad
        return _scalar_mismatch(wha.drinfeld_v_basis(x), v_built)

    return _scan(wha, tuples, evaluate)


@_register("forms.grouplike_from_dual_and_twist", "forms", 1)
def _check_grouplike_factorization(wha, tuples):
    built = wha.convolve(wha.drinfeld_v_basis, wha.ribbon_form_basis)

    def evaluate(candidate):
        (x,) = candidate
        return _scalar_mismatch(wha.pivotal_form_basis(x), built(x))

    return _scan(wha, tuples, evaluate)


@_register("forms.dual_product_is_double_inverse_twist", "forms", 1)
def _check_dual_product(wha, tuples):
    left = wha.convolve(wha.drinfeld_u_basis, wha.drinfeld_v_basis)
    right = wha.convolve(wha.ribbon_bar_basis, wha.ribbon_bar_basis)

    def evaluate(candidate):
        (x,) = candidate
        return _scalar_mismatch(left(x), right(x))

    return _scan(wha, tuples, evaluate)


# -- modular data -----------------------------------------------------------


@_register("modular.smatrix_invertible", "modular", 0)
def _check_smatrix_invertible(wha, tuples):
    if wha.is_weakly_cofactorizable():
        return 1, None
    return 1, {"left": "0", "right": "a nonzero determinant"}


@_register("modular.smatrix_matches_hopf_links", "modular", 0)
def _check_smatrix_hopf(wha, tuples):
    tab = wha.tables
    matrix = wha.qtilde_matrix()
    checked = 0
    for i, a in enumerate(tab.labels):
        for j, b in enumerate(tab.labels):
            checked += 1
            expected = tab.hopf_link(a, b)
            if matrix[i][j] != expected:
                return checked, {
                    "labels": [a, b],
                    "left": str(matrix[i][j]),
                    "right": str(expected),
                }
    return checked, None


# -- comodule layer ---------------------------------------------------------


def _named_comodules(wha):
    yield "unit", comodules.unit_comodule(wha)
    blocks = {}
    for j in wha.tables.labels:
        blocks[j] = comodules.irreducible_comodule(wha, j)
        yield f"block({j})", blocks[j]
        yield f"dual(block({j}))", comodules.dual_comodule(blocks[j])
    for a in wha.tables.labels:
        for b in wha.tables.labels:
            yield (
                f"truncated(block({a}),block({b}))",
                comodules.truncated_tensor(blocks[a], blocks[b]),
            )


@_register("comodule.coaction_axioms", "comodule", 0)
def _check_coaction_axioms(wha, tuples):
    checked = 0
    for name, comodule in _named_comodules(wha):
        checked += 1
        defect = comodules.counit_defect(comodule)
        if defect is not None:
            return checked, {
                "comodule": name,
                "left": f"counit defect at {defect}",
                "right": "identity",
            }
        defect = comodules.coassociativity_defect(comodule)
        if defect is not None:
            return checked, {
                "comodule": name,
                "left": f"coassociativity defect at {defect}",
                "right": "equal iterated coactions",
            }
    return checked, None


@_register("comodule.truncation_decomposition", "comodule", 0)
def _check_truncation(wha, tuples):
    tab = wha.tables
    blocks = {j: comodules.irreducible_comodule(wha, j) for j in tab.labels}
    checked = 0
    for a in tab.labels:
        for b in tab.labels:
            checked += 1
            product = comodules.truncated_tensor(blocks[a], blocks[b])
            projector = product.projector
            if mat_mul(projector, projector) != projector:
                return checked, {
                    "labels": [a, b],
                    "left": "projector is not idempotent",
                    "right": "idempotent",
                }
            channels = [c for c in tab.labels if tab.admissible(a, b, c)]
            expected = sum(blocks[c].dimension for c in channels)
            if product.dimension != expected or matrix_rank(
                wha.level, projector
            ) != expected:
                return checked, {
                    "labels": [a, b],
                    "left": str(product.dimension),
                    "right": str(expected),
                }
            character = {}
            for c in channels:
                character = add_elements(character, blocks[c].character())
            if prune(product.character()) != prune(character):
                return checked, {
                    "labels": [a, b],
                    "left": _element_json(wha, product.character()),
                    "right": _element_json(wha, character),
                }
    return checked, None


@_register("comodule.braiding_invertible", "comodule", 0)
def _check_braiding_invertible(wha, tuples):
    tab = wha.tables
    level = wha.level
    blocks = {j: comodules.irreducible_comodule(wha, j) for j in tab.labels}
    checked = 0
    for a in tab.labels:
        for b in tab.labels:
            checked += 1
            forward = comodules.truncated_tensor(blocks[a], blocks[b])
            backward = comodules.truncated_tensor(blocks[b], blocks[a])
            sigma = comodules.braiding_map(
                blocks[a], blocks[b], source=forward, target=backward
            )
            sigma_inv = comodules.braiding_inverse_map(
                blocks[a], blocks[b], source=backward, target=forward
            )
            if mat_mul(sigma_inv, sigma) != identity_matrix(
                level, forward.dimension
            ) or mat_mul(sigma, sigma_inv) != identity_matrix(
                level, backward.dimension
            ):
                return checked, {
                    "labels": [a, b],
                    "left": "braiding composed with inverse",
                    "right": "identity",
                }
    return checked, None


@_register("comodule.ribbon_twist_eigenvalues", "comodule", 0)
def _check_comodule_ribbon(wha, tuples):
    tab = wha.tables
    level = wha.level
    checked = 0
    for j in tab.labels:
        checked += 1
        block = comodules.irreducible_comodule(wha, j)
        twist = tab.twist(j)
        expected = [
            [twist if row == col else zero(level) for col in range(block.dimension)]
            for row in range(block.dimension)
        ]
        if comodules.ribbon_map(block) != expected:
            return checked, {
                "label": j,
                "left": "ribbon map",
                "right": "twist eigenvalue times identity",
            }
    return checked, None


@_register("comodule.trace_quantum_dimensions", "comodule", 0)
def _check_trace_dimensions(wha, tuples):
    tab = wha.tables
    level = wha.level
    checked = 0
    unit = comodules.unit_comodule(wha)
    trace = comodules.comodule_trace(
        identity_matrix(level, unit.dimension), unit
    )
    checked += 1
    if trace != one(level):
        return checked, {"comodule": "unit", "left": str(trace), "right": "1"}
    for j in tab.labels:
        checked += 1
        block = comodules.irreducible_comodule(wha, j)
        trace = comodules.comodule_trace(
            identity_matrix(level, block.dimension), block
        )
        if trace != tab.dim(j):
            return checked, {
                "label": j,
                "left": str(trace),
                "right": str(tab.dim(j)),
            }
    return checked, None


@_register("comodule.triangle_identities", "comodule", 0)
def _check_triangles(wha, tuples):
    tab = wha.tables
    level = wha.level
    unit = comodules.unit_comodule(wha)
    checked = 0
    for j in tab.labels:
        checked += 1
        block = comodules.irreducible_comodule(wha, j)
        dual = comodules.dual_comodule(block)
        pair = comodules.truncated_tensor(block, dual)
        swapped = comodules.truncated_tensor(dual, block)
        ev = comodules.ev_map(block, source=swapped, unit=unit)
        coev = comodules.coev_map(block, target=pair, unit=unit)
        size = block.dimension
        identity = identity_matrix(level, size)

        with_unit = comodules.truncated_tensor(unit, block)
        left_nested = comodules.truncated_tensor(pair, block)
        right_nested = comodules.truncated_tensor(block, swapped)
        unit_after = comodules.truncated_tensor(block, unit)
        first = mat_mul(
            comodules.unit_right_map(unit_after),
            mat_mul(
                comodules.tensor_morphism(
                    identity, ev, right_nested, unit_after
                ),
                mat_mul(
                    comodules.associator_map(left_nested, right_nested),
                    mat_mul(
                        comodules.tensor_morphism(
                            coev, identity, with_unit, left_nested
                        ),
                        comodules.unit_left_inverse(with_unit),
                    ),
                ),
            ),
        )
        if first != identity:
            return checked, {
                "label": j,
                "left": "first triangle composite",
                "right": "identity",
            }
        dual_before = comodules.truncated_tensor(dual, unit)
        dual_nested = comodules.truncated_tensor(dual, pair)
        swapped_nested = comodules.truncated_tensor(swapped, dual)
        dual_after = comodules.truncated_tensor(unit, dual)
        second = mat_mul(
            comodules.unit_left_map(dual_after),
            mat_mul(
                comodules.tensor_morphism(
                    ev, identity, swapped_nested, dual_after
                ),
                mat_mul(
                    comodules.associator_inverse_map(
                        swapped_nested, dual_nested
                    ),
                    mat_mul(
                        comodules.tensor_morphism(
                            identity, coev, dual_before, dual_nested
                        ),
                        comodules.unit_right_inverse(dual_before),
                    ),
                ),
            ),
        )
        if second != identity:
            return checked, {
                "label": j,
                "left": "second triangle composite",
                "right": "identity",
            }
    return checked, None


@_register("comodule.double_braiding_trace_modular", "comodule", 0)
def _check_double_braiding_trace(wha, tuples):
    tab = wha.tables
    blocks = {j: comodules.irreducible_comodule(wha, j) for j in tab.labels}
    matrix = wha.qtilde_matrix()
    checked = 0
    for i, a in enumerate(tab.labels):
        for k, b in enumerate(tab.labels):
            checked += 1
            forward = comodules.truncated_tensor(blocks[a], blocks[b])
            backward = comodules.truncated_tensor(blocks[b], blocks[a])
            double = mat_mul(
                comodules.braiding_map(
                    blocks[b], blocks[a], source=backward, target=forward
                ),
                comodules.braiding_map(
                    blocks[a], blocks[b], source=forward, target=backward
                ),
            )
            trace = comodules.comodule_trace(double, forward)
            if trace != matrix[i][k]:
                return checked, {
                    "labels": [a, b],
                    "left": str(trace),
                    "right": str(matrix[i][k]),
                }
    return checked, None


# ---------------------------------------------------------------------------
# runner


def _tuple_stream(wha, arity, spec):
    if spec.scope == "exhaustive":
        return itertools.product(wha.basis, repeat=arity)
    rng = random.Random(spec.seed)
    return [
        tuple(rng.choice(wha.basis) for _ in range(arity))
        for _ in range(spec.sample)
    ]


def _scope_label(check, spec):
    if check.arity == 0 or spec.scope == "exhaustive":
        return "exhaustive"
    return f"sampled(count={spec.sample},seed={spec.seed})"


def _worker_count(spec_count):
    override = os.environ.get("CORIBBON_WORKERS")
    if override:
        return max(1, int(override))
    return max(1, min(4, os.cpu_count() or 1, spec_count))


def run_suite(specs):
    """Run the requested checks and assemble a deterministic report."""
    specs = list(specs)
    if not specs:
        raise ValueError("no checks requested")
    for spec in specs:
        if spec.name not in _REGISTRY:
            raise ValueError(f"unknown check: {spec.name}")
        if spec.scope not in ("exhaustive", "sampled"):
            raise ValueError(f"unknown scope: {spec.scope}")
    levels = {spec.level for spec in specs}
    if len(levels) > 1:
        raise ValueError("all checks in one suite must share a level")
    level = levels.pop()
    wha = algebra(level)
    if any(
        spec.name.startswith("modular.")
        or spec.name == "comodule.double_braiding_trace_modular"
        for spec in specs
    ):
        # shared expensive table; computed once before workers race for it
        wha.qtilde_matrix()

    def execute(spec):
        check = _REGISTRY[spec.name]
        start = time.perf_counter()
        tuples = _tuple_stream(wha, check.arity, spec) if check.arity else None
        checked, witness = check.run(wha, tuples)
        return CheckResult(
            name=spec.name,
            scope=_scope_label(check, spec),
            status="pass" if witness is None else "fail",
            checked=checked,
            witness=witness,
            duration=time.perf_counter() - start,
        )

    workers = _worker_count(len(specs))
    if workers == 1:
        results = [execute(spec) for spec in specs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(execute, specs))
    results.sort(key=lambda result: result.name)
    return VerificationReport(
        level=level,
        dimension=wha.dimension,
        conventions={
            "crossing_positive": wha.crossing_positive,
            "insertion_on_closure": wha.insertion_on_closure,
        },
        results=tuple(results),
    )


def suite_specs(level, suites=None, scope=None, sample=500, seed=42):
    """CheckSpecs for whole suites with scope defaults chosen by arity.

    Exhaustive iteration is the default for ternary checks up to level 4,
    binary up to 5, and unary up to 6; beyond that the check samples.
    """
    chosen = suite_names() if suites is None else list(suites)
    unknown = [name for name in chosen if name not in suite_names()]
    if unknown:
        raise ValueError(f"unknown suite: {unknown[0]}")
    specs = []
    for name in sorted(_REGISTRY):
        check = _REGISTRY[name]
        if check.suite not in chosen:
            continue
        if scope is not None:
            style = scope
        elif check.arity == 0:
            style = "exhaustive"
        else:
            bound = {1: 6, 2: 5, 3: 4}[check.arity]
            style = "exhaustive" if level <= bound else "sampled"
        specs.append(
            CheckSpec(name=name, level=level, scope=style, sample=sample, seed=seed)
        )
    return specs


def report_json(report):
    """Canonical JSON payload; timing excluded so equal runs give equal bytes."""
    payload = {
        "r": report.level,
        "dim": report.dimension,
        "conventions": report.conventions,
        "checks": [
            {
                "check": result.name,
                "scope": result.scope,
                "status": result.status,
                "checked": result.checked,
                **({"witness": result.witness} if result.witness else {}),
            }
            for result in report.results
        ],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def pin_conventions(level=3):
    """Re-derive the two pictorial sign conventions by elimination.

    Runs the pairing and twist axiom batteries exhaustively for all four
    flag combinations; exactly one must survive, otherwise the
    implementation itself is at fault.
    """
    battery = check_names("coquasi") + check_names("coribbon")
    survivors = []
    for crossing in (True, False):
        for insertion in (True, False):
            candidate = WeakHopfAlgebra(
                level,
                crossing_positive=crossing,
                insertion_on_closure=insertion,
            )
            passed = True
            for name in battery:
                check = _REGISTRY[name]
                tuples = itertools.product(candidate.basis, repeat=check.arity)
                _, witness = check.run(candidate, tuples)
                if witness is not None:
                    passed = False
                    break
            if passed:
                survivors.append((crossing, insertion))
    if len(survivors) != 1:
        raise ValueError("conventions unresolvable")
    crossing, insertion = survivors[0]
    return {"crossing_positive": crossing, "insertion_on_closure": insertion}
