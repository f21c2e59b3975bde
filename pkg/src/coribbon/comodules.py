"""Right comodules over the weak Hopf algebra, with exact coefficients.

A comodule stores, for every basis column a, the sparse algebra elements
c_{ba} with β(v_a) = Σ_b v_b ⊗ c_{ba}.  On top of that representation the
module builds the block corepresentations, the base algebra H_s as the
unit object, truncated tensor products (images of an explicit idempotent,
with the induced coaction solved exactly), braiding and twist maps from
the universal forms, duals with evaluation/coevaluation, the unit and
associativity constraints of the truncated product, and the trace that
identifies an endomorphism of the unit object with a scalar.

Maps between comodules are plain coefficient matrices over the chosen
bases.  Maps involving a truncated tensor product are computed in the
flattened ambient tensor coordinates first and then expressed over the
image basis; the expression step solves an exact linear system and
raises if the map ever leaves the image, so no check is silently lost.
"""

from __future__ import annotations

from coribbon.cyclotomic import one, zero
from coribbon.linalg import (
    column_space_basis,
    identity_matrix,
    mat_mul,
    matrix_inverse,
    nullspace,
    solve_many,
)
from coribbon.weak_hopf import add_elements, prune, scale_element


def _accumulate(store, key, value):
    if key in store:
        value = store[key] + value
    if value.is_zero():
        store.pop(key, None)
    else:
        store[key] = value


class Comodule:
    """A right comodule with a distinguished basis and sparse coefficients."""

    def __init__(self, wha, dimension, coefficients, carrier=None, label=None):
        self.wha = wha
        self.level = wha.level
        self.dimension = dimension
        self._coefficients = {}
        for key, value in coefficients.items():
            pruned = prune(value)
            if pruned:
                self._coefficients[key] = pruned
        # carrier: optional algebra elements realizing the basis (the unit
        # comodule keeps its base-algebra basis here); label: the block
        # index for an irreducible comodule.
        self.carrier = carrier
        self.label = label

    def coefficient(self, row, col):
        """The algebra element c_{row,col}; {} when the entry vanishes."""
        return dict(self._coefficients.get((row, col), {}))

    def coaction(self, col):
        """Sparse coaction column: pairs (row, c_{row,col}), zero rows omitted."""
        out = []
        for row in range(self.dimension):
            element = self._coefficients.get((row, col))
            if element:
                out.append((row, dict(element)))
        return out

    def character(self):
        """Sum of the diagonal coefficients; additive on direct summands."""
        out = {}
        for k in range(self.dimension):
            for vector, value in self.coefficient(k, k).items():
                _accumulate(out, vector, value)
        return out

    # Plain comodules are their own ambient space; truncated tensor
    # products override both hooks with a genuine embedding.

    def embedding_matrix(self):
        return identity_matrix(self.level, self.dimension)

    def express_matrix(self, ambient_columns):
        if len(ambient_columns) != self.dimension:
            raise ValueError("ambient height does not match the comodule")
        return [list(row) for row in ambient_columns]


def counit_defect(comodule):
    """First (row, col) where (id ⊗ ε)∘β fails to be the identity, else None."""
    wha = comodule.wha
    for col in range(comodule.dimension):
        for row in range(comodule.dimension):
            value = wha.counit(comodule.coefficient(row, col))
            expect = one(wha.level) if row == col else zero(wha.level)
            if value != expect:
                return (row, col)
    return None


def coassociativity_defect(comodule):
    """First (row, col) where (β ⊗ id)∘β and (id ⊗ Δ)∘β differ, else None."""
    wha = comodule.wha
    for col in range(comodule.dimension):
        for row in range(comodule.dimension):
            want = wha.comultiply(comodule.coefficient(row, col))
            got = {}
            for mid in range(comodule.dimension):
                left = comodule._coefficients.get((row, mid))
                right = comodule._coefficients.get((mid, col))
                if not left or not right:
                    continue
                for x, first in left.items():
                    for y, second in right.items():
                        _accumulate(got, (x, y), first * second)
            if got != prune(want):
                return (row, col)
    return None


def irreducible_comodule(wha, j):
    """The corepresentation carried by block j, on the admissible pairs."""
    pairs = wha.tables.admissible_pairs(j)
    unit_scalar = one(wha.level)
    coefficients = {
        (row, col): {wha.coaction_coefficient(j, pairs[row], pairs[col]): unit_scalar}
        for row in range(len(pairs))
        for col in range(len(pairs))
    }
    return Comodule(wha, len(pairs), coefficients, label=j)


def unit_comodule(wha):
    """The base algebra H_s under the restricted comultiplication.

    The left comultiplication legs of a base element stay inside H_s, so
    the coefficients are recovered by expressing those legs over the base
    basis; the solve is exact and raises if the legs ever left the span.
    """
    basis = wha.base_algebra_source()
    count = len(basis)
    level = wha.level
    images = [wha.comultiply(element) for element in basis]
    support = sorted(
        {vector for element in basis for vector in element}
        | {pair[0] for image in images for pair in image},
        key=wha.index.__getitem__,
    )
    matrix = [
        [basis[k].get(vector, zero(level)) for k in range(count)]
        for vector in support
    ]
    jobs = []
    columns = []
    for col, image in enumerate(images):
        grouped = {}
        for (left, right), value in image.items():
            grouped.setdefault(right, {})[left] = value
        for right in sorted(grouped, key=wha.index.__getitem__):
            legs = grouped[right]
            jobs.append((col, right))
            columns.append([legs.get(vector, zero(level)) for vector in support])
    solutions = solve_many(level, matrix, columns)
    coefficients = {}
    for (col, right), solution in zip(jobs, solutions):
        for row, value in enumerate(solution):
            if not value.is_zero():
                coefficients.setdefault((row, col), {})[right] = value
    return Comodule(wha, count, coefficients, carrier=[dict(el) for el in basis])


def _carrier_coordinates(unit, elements):
    """Coordinates of algebra elements over the unit comodule's carrier."""
    wha = unit.wha
    level = wha.level
    carrier = unit.carrier
    if carrier is None:
        raise ValueError("comodule has no carrier basis")
    support = sorted(
        {vector for element in carrier for vector in element}
        | {vector for element in elements for vector in element},
        key=wha.index.__getitem__,
    )
    matrix = [
        [carrier[k].get(vector, zero(level)) for k in range(len(carrier))]
        for vector in support
    ]
    columns = [
        [element.get(vector, zero(level)) for vector in support]
        for element in elements
    ]
    return solve_many(level, matrix, columns)


def truncation_idempotent(left, right):
    """Matrix of (v ⊗ w) ↦ (v_V ⊗ w_W)·ε(v_H w_H) on the plain tensor square."""
    wha = left.wha
    level = wha.level
    size = left.dimension * right.dimension
    rows = [[zero(level)] * size for _ in range(size)]
    for col_l in range(left.dimension):
        for row_l in range(left.dimension):
            first = left._coefficients.get((row_l, col_l))
            if not first:
                continue
            for col_r in range(right.dimension):
                for row_r in range(right.dimension):
                    second = right._coefficients.get((row_r, col_r))
                    if not second:
                        continue
                    value = wha.counit(wha.multiply(first, second))
                    if not value.is_zero():
                        rows[row_l * right.dimension + row_r][
                            col_l * right.dimension + col_r
                        ] = value
    return rows


class TruncatedTensor(Comodule):
    """Image of the truncation idempotent, with the induced coaction.

    The basis is the deterministic pivot-column basis of the idempotent;
    coefficients are solved from the ambient tensor-product coaction
    (coefficient products), which must preserve the image.
    """

    def __init__(self, left, right):
        if left.wha is not right.wha:
            raise ValueError("factors live over different algebras")
        wha = left.wha
        level = wha.level
        projector = truncation_idempotent(left, right)
        image = column_space_basis(level, projector)
        count = len(image)
        ambient = left.dimension * right.dimension
        embedding = [[image[k][i] for k in range(count)] for i in range(ambient)]
        jobs = []
        columns = []
        for k in range(count):
            lifted = {}
            for flat, weight in enumerate(image[k]):
                if weight.is_zero():
                    continue
                col_l, col_r = divmod(flat, right.dimension)
                for row_l in range(left.dimension):
                    first = left._coefficients.get((row_l, col_l))
                    if not first:
                        continue
                    for row_r in range(right.dimension):
                        second = right._coefficients.get((row_r, col_r))
                        if not second:
                            continue
                        product = scale_element(wha.multiply(first, second), weight)
                        target = row_l * right.dimension + row_r
                        for vector, value in product.items():
                            _accumulate(
                                lifted.setdefault(vector, {}), target, value
                            )
            for vector in sorted(lifted, key=wha.index.__getitem__):
                legs = lifted[vector]
                jobs.append((k, vector))
                columns.append(
                    [legs.get(i, zero(level)) for i in range(ambient)]
                )
        solutions = solve_many(level, embedding, columns) if columns else []
        coefficients = {}
        for (k, vector), solution in zip(jobs, solutions):
            for row, value in enumerate(solution):
                if not value.is_zero():
                    coefficients.setdefault((row, k), {})[vector] = value
        super().__init__(wha, count, coefficients)
        self.factors = (left, right)
        self.projector = projector
        self.embedded_basis = image
        self._embedding = embedding

    def embedding_matrix(self):
        return [list(row) for row in self._embedding]

    def express_matrix(self, ambient_columns):
        """Image-basis coordinates of ambient columns; raises if one leaves it."""
        width = len(ambient_columns[0]) if ambient_columns else 0
        columns = [
            [ambient_columns[i][k] for i in range(len(ambient_columns))]
            for k in range(width)
        ]
        solutions = solve_many(self.level, self._embedding, columns)
        return [
            [solutions[k][row] for k in range(width)]
            for row in range(self.dimension)
        ]


def truncated_tensor(left, right):
    """The truncated tensor product of two comodules."""
    return TruncatedTensor(left, right)


def kron(first, second):
    """Kronecker product acting on row-major flattened tensor coordinates."""
    if not first or not second:
        return []
    return [
        [x * y for x in row_f for y in row_s]
        for row_f in first
        for row_s in second
    ]


def restricted_map(matrix, source, target):
    """View an ambient-coordinate map as a map between truncated bases."""
    return target.express_matrix(mat_mul(matrix, source.embedding_matrix()))


def tensor_morphism(first, second, source, target):
    """The truncated tensor product of two coefficient-matrix morphisms."""
    return restricted_map(kron(first, second), source, target)


def braiding_map(left, right, source=None, target=None):
    """The braiding on the truncated product, from the universal pairing.

    Sends v ⊗ w to (w_W ⊗ v_V)·r(w_H ⊗ v_H); `source` and `target` default
    to the truncated products left⊗right and right⊗left.
    """
    return _braiding(left, right, source, target, left.wha.r_form_basis)


def braiding_inverse_map(left, right, source=None, target=None):
    """Inverse braiding (right⊗left → left⊗right), from the inverse pairing."""
    return _braiding(right, left, source, target, _flipped_bar(left.wha))


def _flipped_bar(wha):
    return lambda first, second: wha.r_bar_basis(second, first)


def _braiding(left, right, source, target, pairing):
    wha = left.wha
    level = wha.level
    if source is None:
        source = truncated_tensor(left, right)
    if target is None:
        target = truncated_tensor(right, left)
    rows = [
        [zero(level)] * (left.dimension * right.dimension)
        for _ in range(right.dimension * left.dimension)
    ]
    for col_l in range(left.dimension):
        for col_r in range(right.dimension):
            col = col_l * right.dimension + col_r
            for row_l in range(left.dimension):
                first = left._coefficients.get((row_l, col_l))
                if not first:
                    continue
                for row_r in range(right.dimension):
                    second = right._coefficients.get((row_r, col_r))
                    if not second:
                        continue
                    total = zero(level)
                    for x, weight_x in second.items():
                        for y, weight_y in first.items():
                            total = total + weight_x * weight_y * pairing(x, y)
                    if not total.is_zero():
                        rows[row_r * left.dimension + row_l][col] = total
    return restricted_map(rows, source, target)


def ribbon_map(comodule):
    """The twist v ↦ v_V·ν(v_H) as a matrix on the comodule basis."""
    wha = comodule.wha
    level = wha.level
    size = comodule.dimension
    rows = [[zero(level)] * size for _ in range(size)]
    for col in range(size):
        for row in range(size):
            element = comodule._coefficients.get((row, col))
            if element:
                rows[row][col] = wha.ribbon_form(element)
    return rows


def dual_comodule(comodule):
    """The dual comodule: coefficients are antipodes of the transposes."""
    wha = comodule.wha
    size = comodule.dimension
    coefficients = {}
    for (row, col), element in comodule._coefficients.items():
        coefficients[(col, row)] = wha.antipode(element)
    return Comodule(wha, size, coefficients)


def ev_map(comodule, source=None, unit=None):
    """Evaluation dual⊗comodule → unit: (θ ⊗ v) ↦ θ(v_V)·ε_s(v_H).

    Returns the matrix into the unit comodule's basis; `source` defaults
    to the truncated product of the dual with the comodule.
    """
    wha = comodule.wha
    level = wha.level
    if unit is None:
        unit = unit_comodule(wha)
    if source is None:
        source = truncated_tensor(dual_comodule(comodule), comodule)
    size = comodule.dimension
    jobs = []
    elements = []
    for row in range(size):
        for col in range(size):
            jobs.append((row, col))
            elements.append(wha.counital_source(comodule.coefficient(row, col)))
    coordinates = _carrier_coordinates(unit, elements)
    rows = [[zero(level)] * (size * size) for _ in range(unit.dimension)]
    for (row, col), coords in zip(jobs, coordinates):
        for k, value in enumerate(coords):
            rows[k][row * size + col] = value
    return mat_mul(rows, source.embedding_matrix())


def coev_map(comodule, target=None, unit=None):
    """Coevaluation unit → comodule⊗dual: x ↦ Σ (e_t ⊗ e^j)·ε(x c_{tj})."""
    wha = comodule.wha
    level = wha.level
    if unit is None:
        unit = unit_comodule(wha)
    if target is None:
        target = truncated_tensor(comodule, dual_comodule(comodule))
    size = comodule.dimension
    rows = [[zero(level)] * unit.dimension for _ in range(size * size)]
    for x, carrier_element in enumerate(unit.carrier):
        for row in range(size):
            for col in range(size):
                element = comodule._coefficients.get((row, col))
                if not element:
                    continue
                value = wha.counit(wha.multiply(carrier_element, element))
                if not value.is_zero():
                    rows[row * size + col][x] = value
    return target.express_matrix(rows)


def unit_left_map(source):
    """λ: H_s ⊗̂ V → V, (h ⊗ v) ↦ v_V·ε(h v_H), on the truncated basis."""
    unit, comodule = source.factors
    wha = source.wha
    level = wha.level
    if unit.carrier is None:
        raise ValueError("left factor must carry the unit comodule basis")
    size = comodule.dimension
    rows = [[zero(level)] * (unit.dimension * size) for _ in range(size)]
    for x, carrier_element in enumerate(unit.carrier):
        for col in range(size):
            for row in range(size):
                element = comodule._coefficients.get((row, col))
                if not element:
                    continue
                value = wha.counit(wha.multiply(carrier_element, element))
                if not value.is_zero():
                    rows[row][x * size + col] = value
    return mat_mul(rows, source.embedding_matrix())


def unit_right_map(source):
    """ρ: V ⊗̂ H_s → V, (v ⊗ h) ↦ v_V·ε(v_H h), on the truncated basis."""
    comodule, unit = source.factors
    wha = source.wha
    level = wha.level
    if unit.carrier is None:
        raise ValueError("right factor must carry the unit comodule basis")
    size = comodule.dimension
    rows = [[zero(level)] * (size * unit.dimension) for _ in range(size)]
    for x, carrier_element in enumerate(unit.carrier):
        for col in range(size):
            for row in range(size):
                element = comodule._coefficients.get((row, col))
                if not element:
                    continue
                value = wha.counit(wha.multiply(element, carrier_element))
                if not value.is_zero():
                    rows[row][col * unit.dimension + x] = value
    return mat_mul(rows, source.embedding_matrix())


def unit_left_inverse(target):
    """λ⁻¹: V → H_s ⊗̂ V, v ↦ (1′ ⊗ v_V)·ε(1″ v_H).

    Only the grouped left slices of the comultiplied unit lie in the base
    algebra, so each H_s-component is assembled before being expressed
    over the carrier basis.
    """
    unit, comodule = target.factors
    wha = target.wha
    level = wha.level
    if unit.carrier is None:
        raise ValueError("left factor must carry the unit comodule basis")
    size = comodule.dimension
    unit_legs = wha.comultiply(wha.unit())
    jobs = []
    elements = []
    for col in range(size):
        for row in range(size):
            element = comodule._coefficients.get((row, col))
            if not element:
                continue
            piece = {}
            for (left, right), weight in unit_legs.items():
                value = weight * wha.counit(
                    wha.multiply({right: one(level)}, element)
                )
                if not value.is_zero():
                    _accumulate(piece, left, value)
            if piece:
                jobs.append((row, col))
                elements.append(piece)
    coordinates = _carrier_coordinates(unit, elements)
    rows = [[zero(level)] * size for _ in range(unit.dimension * size)]
    for (row, col), coords in zip(jobs, coordinates):
        for x, value in enumerate(coords):
            if not value.is_zero():
                rows[x * size + row][col] = value
    return target.express_matrix(rows)


def unit_right_inverse(target):
    """ρ⁻¹: V → V ⊗̂ H_s, v ↦ v_V ⊗ ε_s(v_H)."""
    comodule, unit = target.factors
    wha = target.wha
    level = wha.level
    if unit.carrier is None:
        raise ValueError("right factor must carry the unit comodule basis")
    size = comodule.dimension
    jobs = []
    elements = []
    for row in range(size):
        for col in range(size):
            jobs.append((row, col))
            elements.append(wha.counital_source(comodule.coefficient(row, col)))
    coordinates = _carrier_coordinates(unit, elements)
    rows = [[zero(level)] * size for _ in range(size * unit.dimension)]
    for (row, col), coords in zip(jobs, coordinates):
        for x, value in enumerate(coords):
            if not value.is_zero():
                rows[row * unit.dimension + x][col] = value
    return target.express_matrix(rows)


def associator_map(left_associated, right_associated):
    """Coordinate change (U⊗̂V)⊗̂W → U⊗̂(V⊗̂W) through the flat triple space."""
    inner_left, third = left_associated.factors
    first, inner_right = right_associated.factors
    level = left_associated.level
    left_flat = mat_mul(
        kron(
            inner_left.embedding_matrix(),
            identity_matrix(level, third.dimension),
        ),
        left_associated.embedding_matrix(),
    )
    right_flat = mat_mul(
        kron(
            identity_matrix(level, first.dimension),
            inner_right.embedding_matrix(),
        ),
        right_associated.embedding_matrix(),
    )
    width = len(left_flat[0]) if left_flat else 0
    columns = [
        [left_flat[i][k] for i in range(len(left_flat))] for k in range(width)
    ]
    solutions = solve_many(level, right_flat, columns)
    return [
        [solutions[k][row] for k in range(width)]
        for row in range(len(right_flat[0]) if right_flat else 0)
    ]


def associator_inverse_map(left_associated, right_associated):
    """Inverse coordinate change U⊗̂(V⊗̂W) → (U⊗̂V)⊗̂W."""
    return matrix_inverse(
        left_associated.level,
        associator_map(left_associated, right_associated),
    )


def endomorphism_basis(comodule):
    """Deterministic basis of the comodule endomorphisms, as matrices.

    A matrix f is a morphism exactly when it commutes with the coaction:
    Σ_m f_{bm}·c_{ma} = Σ_m c_{bm}·f_{ma} for all (b, a).  Each algebra
    basis vector appearing in those elements contributes one linear row;
    the morphisms are the nullspace.
    """
    wha = comodule.wha
    level = wha.level
    size = comodule.dimension
    width = size * size
    rows = []
    for b in range(size):
        for a in range(size):
            slices = {}
            for m in range(size):
                left = comodule._coefficients.get((m, a))
                if left:
                    col = b * size + m
                    for vector, value in left.items():
                        row = slices.setdefault(vector, [zero(level)] * width)
                        row[col] = row[col] + value
                right = comodule._coefficients.get((b, m))
                if right:
                    col = m * size + a
                    for vector, value in right.items():
                        row = slices.setdefault(vector, [zero(level)] * width)
                        row[col] = row[col] - value
            for vector in sorted(slices, key=wha.index.__getitem__):
                row = slices[vector]
                if any(not entry.is_zero() for entry in row):
                    rows.append(row)
    return [
        [[vec[m * size + a] for a in range(size)] for m in range(size)]
        for vec in nullspace(level, rows)
    ]


def comodule_trace(matrix, comodule):
    """The scalar c with tr_V(f) = c·id on the unit object.

    `matrix` must be a comodule endomorphism (commute with the coaction);
    evaluates Σ f_{jℓ}·ε_s(S(c_{ℓj}′))·w(c_{ℓj}″) — the trace applied to
    the algebra unit — and extracts c by exact proportionality with the
    unit element, raising when proportionality fails.
    """
    wha = comodule.wha
    level = wha.level
    total = {}
    for j in range(comodule.dimension):
        for ell in range(comodule.dimension):
            weight = matrix[j][ell]
            if weight.is_zero():
                continue
            element = comodule._coefficients.get((ell, j))
            if not element:
                continue
            for (first, second), value in wha.comultiply(element).items():
                scalar = weight * value * wha.pivotal_form_basis(second)
                if scalar.is_zero():
                    continue
                piece = wha.counital_source(
                    wha.antipode({first: one(level)})
                )
                for vector, coeff in piece.items():
                    _accumulate(total, vector, coeff * scalar)
    return _unit_multiple(wha, total)


def unit_endomorphism_scalar(unit, matrix):
    """The scalar c with f = c·id for a matrix on the unit comodule.

    Uses the one-dimensionality of the unit object's endomorphism space:
    apply the map to the algebra unit and read off the multiple.
    """
    wha = unit.wha
    (unit_coords,) = _carrier_coordinates(unit, [wha.unit()])
    mapped = {}
    for col, value in enumerate(unit_coords):
        if value.is_zero():
            continue
        for row in range(unit.dimension):
            entry = matrix[row][col]
            if not entry.is_zero():
                _accumulate(mapped, row, entry * value)
    image = {}
    for row, value in mapped.items():
        for vector, coeff in unit.carrier[row].items():
            _accumulate(image, vector, coeff * value)
    return _unit_multiple(wha, image)


def _unit_multiple(wha, element):
    """The scalar c with element = c·η(1); raises if not proportional."""
    unit = wha.unit()
    lead = min(unit, key=wha.index.__getitem__)
    value = element.get(lead, zero(wha.level))
    scalar = value / unit[lead]
    if prune(element) != prune(scale_element(unit, scalar)):
        raise ValueError("element is not a multiple of the unit")
    return scalar
