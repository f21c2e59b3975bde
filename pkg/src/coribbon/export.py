"""Lossless serialization of the structure tables, and reconstruction.

A document freezes the basis, the field description, both conventions, the
structural tables (product, coproduct, antipode, counit, unit), the dense
universal forms, and the modularity matrix, with every scalar written as
exact rational coordinates in decimal strings — no floats anywhere.  The
byte encoding is canonical (sorted keys, fixed separators), so building the
same level twice gives identical files.

``DocumentAlgebra`` re-exposes the full structure-map interface over a
loaded document alone: nothing is recomputed from diagrams, and the
convolution-inverse forms, which the format deliberately omits, are
completed by exact linear solves from the stored data.  The axiom battery
therefore runs over a reloaded file exactly as it runs in memory.
"""

from __future__ import annotations

import json

from coribbon.cyclotomic import CycloScalar, field_degree
from coribbon.linalg import solve_linear
from coribbon.weak_hopf import BasisVector, WeakHopfAlgebra, algebra, prune

FORMAT_VERSION = "1"
DOCUMENT_KIND = "coribbon-tables"
SECTION_NAMES = ("mu", "delta", "s", "forms", "smatrix")

#: suites whose primitives a full document contains; the recoupling and
#: comodule layers and the diagram side of the modularity comparison need
#: the skein oracles and stay in-memory only
DOCUMENT_SUITES = ("coquasi", "coribbon", "forms", "pivotal", "wba", "wha")


def _check_sections(sections):
    if sections is None:
        return frozenset(SECTION_NAMES)
    chosen = frozenset(sections)
    unknown = sorted(chosen - frozenset(SECTION_NAMES))
    if unknown:
        raise ValueError(f"unknown table section: {unknown[0]}")
    return chosen


class ExportDocument:
    """A validated table document, held as JSON-ready payload data."""

    def __init__(self, payload):
        self.payload = payload

    @property
    def level(self):
        return self.payload["level"]

    @property
    def conventions(self):
        return dict(self.payload["conventions"])

    @property
    def dimension(self):
        return len(self.payload["basis"])

    @property
    def sections(self):
        tables = self.payload["tables"]
        present = set()
        if "mu" in tables:
            present.add("mu")
        if "delta" in tables:
            present.add("delta")
        if "antipode" in tables:
            present.add("s")
        if "forms" in self.payload:
            present.add("forms")
        if "smatrix" in self.payload:
            present.add("smatrix")
        return frozenset(present)

    def to_json(self):
        return json.dumps(self.payload, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text):
        payload = json.loads(text)
        if not isinstance(payload, dict):
            raise ValueError("document payload must be an object")
        if payload.get("kind") != DOCUMENT_KIND:
            raise ValueError("not a table document")
        if payload.get("format_version") != FORMAT_VERSION:
            raise ValueError(
                "unsupported document format version: %r"
                % (payload.get("format_version"),)
            )
        level = payload.get("level")
        if not isinstance(level, int) or level < 2:
            raise ValueError("document level must be an integer of at least 2")
        for key in ("conventions", "field", "basis", "tables"):
            if key not in payload:
                raise ValueError(f"document is missing {key!r}")
        expected_field = {
            "cyclotomic_index": 4 * level,
            "degree": field_degree(level),
        }
        if payload["field"] != expected_field:
            raise ValueError("field description does not match the level")
        tables = payload["tables"]
        for key in ("counit", "unit"):
            if key not in tables:
                raise ValueError(f"document is missing the {key} table")
        return cls(payload)


def build_document(level, sections=None):
    """Serialize the algebra at a level, optionally restricted to sections."""
    chosen = _check_sections(sections)
    wha = algebra(level)
    index = wha.index

    def scalar(value):
        return value.to_json()

    def element(mapping):
        return [
            [index[vector], scalar(value)]
            for vector, value in sorted(
                prune(mapping).items(), key=lambda item: index[item[0]]
            )
        ]

    tables = {
        "counit": [scalar(wha.counit_basis(v)) for v in wha.basis],
        "unit": element(wha.unit()),
    }
    if "mu" in chosen:
        mu = []
        for i, first in enumerate(wha.basis):
            for k, second in enumerate(wha.basis):
                entries = element(wha.multiply_basis(first, second))
                if entries:
                    mu.append([i, k, entries])
        tables["mu"] = mu
    if "delta" in chosen:
        delta = []
        for i, vector in enumerate(wha.basis):
            entries = [
                [index[left], index[right], scalar(value)]
                for (left, right), value in sorted(
                    wha.comultiply_basis(vector).items(),
                    key=lambda item: (index[item[0][0]], index[item[0][1]]),
                )
            ]
            delta.append([i, entries])
        tables["delta"] = delta
    if "s" in chosen:
        antipode = []
        for i, vector in enumerate(wha.basis):
            image, weight = wha.antipode_basis(vector)
            antipode.append([i, index[image], scalar(weight)])
        tables["antipode"] = antipode
    payload = {
        "format_version": FORMAT_VERSION,
        "kind": DOCUMENT_KIND,
        "level": level,
        "conventions": {
            "crossing_positive": wha.crossing_positive,
            "insertion_on_closure": wha.insertion_on_closure,
        },
        "field": {
            "cyclotomic_index": 4 * level,
            "degree": field_degree(level),
        },
        "basis": [list(vector) for vector in wha.basis],
        "tables": tables,
    }
    if "forms" in chosen:
        payload["forms"] = {
            "r_form": [
                [scalar(wha.r_form_basis(x, y)) for y in wha.basis]
                for x in wha.basis
            ],
            "q_form": [
                [scalar(wha.q_form_basis(x, y)) for y in wha.basis]
                for x in wha.basis
            ],
            "nu": [scalar(wha.ribbon_form_basis(v)) for v in wha.basis],
            "u": [scalar(wha.drinfeld_u_basis(v)) for v in wha.basis],
            "v": [scalar(wha.drinfeld_v_basis(v)) for v in wha.basis],
            "w": [scalar(wha.pivotal_form_basis(v)) for v in wha.basis],
        }
    if "smatrix" in chosen:
        payload["smatrix"] = [
            [scalar(value) for value in row] for row in wha.qtilde_matrix()
        ]
    return ExportDocument(payload)


class _LabelShim:
    """Label and admissible-pair bookkeeping rebuilt from the stored basis."""

    def __init__(self, basis):
        pairs = {}
        for vector in basis:
            slot = pairs.setdefault(vector.j, [])
            if (vector.p, vector.q) not in slot:
                slot.append((vector.p, vector.q))
        self.labels = sorted(pairs)
        self._pairs = {j: tuple(slot) for j, slot in pairs.items()}
        self._sets = {j: frozenset(slot) for j, slot in pairs.items()}

    def admissible_pairs(self, j):
        return self._pairs[j]

    def admissible(self, a, b, c):
        return c in self._sets and (a, b) in self._sets[c]


class DocumentAlgebra(WeakHopfAlgebra):
    """The structure maps read back from a document, nothing rederived.

    Primitive tables come straight from the stored payload; derived maps
    (counital projections, base algebras, convolution) inherit the generic
    implementations, and the inverse forms are solved exactly from the
    stored data.  Accessing a section the document was built without
    raises ``ValueError``.
    """

    supported_suites = DOCUMENT_SUITES

    def __init__(self, document):
        level = document.level
        self.level = level
        conventions = document.conventions
        self.crossing_positive = conventions["crossing_positive"]
        self.insertion_on_closure = conventions["insertion_on_closure"]
        self._memo = {}
        self.basis = tuple(
            BasisVector(*row) for row in document.payload["basis"]
        )
        self.index = {vector: k for k, vector in enumerate(self.basis)}
        self.tables = _LabelShim(self.basis)

        def scalar(payload):
            return CycloScalar.from_json(level, payload)

        def element(entries):
            return {
                self.basis[k]: scalar(payload) for k, payload in entries
            }

        stored = document.payload["tables"]
        self._counit = [scalar(payload) for payload in stored["counit"]]
        self._unit = element(stored["unit"])
        self._mu = None
        if "mu" in stored:
            self._mu = {
                (self.basis[i], self.basis[k]): element(entries)
                for i, k, entries in stored["mu"]
            }
        self._delta = None
        if "delta" in stored:
            self._delta = {
                self.basis[i]: {
                    (self.basis[a], self.basis[b]): scalar(payload)
                    for a, b, payload in entries
                }
                for i, entries in stored["delta"]
            }
        self._antipode = None
        if "antipode" in stored:
            self._antipode = {
                self.basis[i]: (self.basis[k], scalar(payload))
                for i, k, payload in stored["antipode"]
            }
        self._forms = None
        if "forms" in document.payload:
            forms = document.payload["forms"]
            self._forms = {
                "r": [[scalar(entry) for entry in row] for row in forms["r_form"]],
                "q": [[scalar(entry) for entry in row] for row in forms["q_form"]],
                "nu": [scalar(entry) for entry in forms["nu"]],
                "u": [scalar(entry) for entry in forms["u"]],
                "v": [scalar(entry) for entry in forms["v"]],
                "w": [scalar(entry) for entry in forms["w"]],
            }
        self._smatrix = None
        if "smatrix" in document.payload:
            self._smatrix = [
                [scalar(entry) for entry in row]
                for row in document.payload["smatrix"]
            ]

    def _stored(self, table, name):
        if table is None:
            raise ValueError(f"document lacks the {name} section")
        return table

    def _form_vector(self, name):
        return self._stored(self._forms, "forms")[name]

    # -- primitive tables, straight from the document -------------------------

    def counit_basis(self, vector):
        return self._counit[self.index[vector]]

    def unit(self):
        return dict(self._unit)

    def multiply_basis(self, first, second):
        table = self._stored(self._mu, "mu")
        return dict(table.get((first, second), {}))

    def comultiply_basis(self, vector):
        return dict(self._stored(self._delta, "delta")[vector])

    def antipode_basis(self, vector):
        return self._stored(self._antipode, "antipode")[vector]

    def r_form_basis(self, first, second):
        return self._form_vector("r")[self.index[first]][self.index[second]]

    def q_form_basis(self, first, second):
        return self._form_vector("q")[self.index[first]][self.index[second]]

    def ribbon_form_basis(self, vector):
        return self._form_vector("nu")[self.index[vector]]

    def drinfeld_u_basis(self, vector):
        return self._form_vector("u")[self.index[vector]]

    def drinfeld_v_basis(self, vector):
        return self._form_vector("v")[self.index[vector]]

    def pivotal_form_basis(self, vector):
        return self._form_vector("w")[self.index[vector]]

    def qtilde_matrix(self):
        stored = self._stored(self._smatrix, "smatrix")
        return [row[:] for row in stored]

    def rebuilt_smatrix(self):
        """The modularity matrix recomputed from the stored forms alone."""
        return WeakHopfAlgebra.qtilde_matrix(self)

    # -- inverse forms, completed by exact solves ------------------------------

    def _unary_inverse(self, tag, form, vector):
        key = (tag, vector)
        if key not in self._memo:
            j, p, q = vector.j, vector.p, vector.q
            pairs = self.tables.admissible_pairs(j)
            rows = []
            rhs = []
            for rr, ss in pairs:
                rows.append(
                    [form(BasisVector(j, u, t, rr, ss)) for (t, u) in pairs]
                )
                rhs.append(self.counit_basis(BasisVector(j, p, q, rr, ss)))
            solution = solve_linear(self.level, rows, rhs)
            for (t, u), value in zip(pairs, solution):
                self._memo[(tag, BasisVector(j, p, q, t, u))] = value
        return self._memo[key]

    def ribbon_bar_basis(self, vector):
        return self._unary_inverse("nubar", self.ribbon_form_basis, vector)

    def r_bar_basis(self, first, second):
        key = ("rbar", first, second)
        if key not in self._memo:
            j, p, q = first.j, first.p, first.q
            k, a, b = second.j, second.p, second.q
            left_pairs = self.tables.admissible_pairs(j)
            right_pairs = self.tables.admissible_pairs(k)
            unknowns = [
                (tu, tu2) for tu in left_pairs for tu2 in right_pairs
            ]
            rows = []
            rhs = []
            for rr, ss in left_pairs:
                for rr2, ss2 in right_pairs:
                    rows.append(
                        [
                            self.r_form_basis(
                                BasisVector(j, u, t, rr, ss),
                                BasisVector(k, u2, t2, rr2, ss2),
                            )
                            for (t, u), (t2, u2) in unknowns
                        ]
                    )
                    rhs.append(
                        self.counit(
                            self.multiply_basis(
                                BasisVector(k, a, b, rr2, ss2),
                                BasisVector(j, p, q, rr, ss),
                            )
                        )
                    )
            solution = solve_linear(self.level, rows, rhs)
            for ((t, u), (t2, u2)), value in zip(unknowns, solution):
                self._memo[
                    (
                        "rbar",
                        BasisVector(j, p, q, t, u),
                        BasisVector(k, a, b, t2, u2),
                    )
                ] = value
        return self._memo[key]


def document_algebra(document):
    """An algebra object backed entirely by a loaded document."""
    return DocumentAlgebra(document)
