"""Tropical plane curves over Puiseux series and their motivic volumes.

Conventions: min-plus, ``v(t) = 1``. For ``f = sum c_m x^m`` with
``v(c_m) = w_m`` the tropical curve is the corner locus of
``X -> min_m (w_m + m.X)``. It is dual to the regular subdivision of the
Newton polygon induced by the lift ``m -> w_m``: 2-cells give vertices,
interior edges give bounded edges, boundary edges give rays. Every edge
leaves its vertex along the inner normal of the dual edge, and its weight
is the lattice length of that dual edge.

Initial degenerations use the standard description of non-degenerate
curves. For a vertex dual to a cell with ``i`` interior and ``b`` boundary
lattice points the initial degeneration is a genus ``i`` curve with ``b``
punctures,

    [in_v X] = (1 - b) - i*u - i*v + u*v,

and for an edge of weight ``l`` it is ``l`` disjoint copies of ``G_m``,
``l*(uv - 1)``. Both rely on the curve being schön; see
:func:`schoen_sanity`.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence

from .errors import (
    DegenerateSupportError,
    InvariantViolation,
    MotivicError,
    NonSimpleCurveError,
    SchemaError,
    SchoenError,
)
from .motivic_ring import LaurentY, MotivicClass, lefschetz
from .polyhedral import Cell, QPolyhedron, lattice_counts, regular_subdivision
from .polyhedral.lattice import cross
from .polyhedral.subdivision import RegularSubdivision
from .rational import fmt_q, parse_q
from .vf_classes import VFClass, theta_poly, theta_var

PASS = "PASS"
CONDITIONAL = "CONDITIONAL"
UNKNOWN = "UNKNOWN"
FAIL = "FAIL"

Vec = tuple[int, int]
QPoint = tuple[Fraction, Fraction]


# input -------------------------------------------------------------------------

@dataclass(frozen=True)
class PuiseuxTerm:
    m: Vec
    w: Fraction
    lead: tuple[Fraction, Fraction] | None = None


@dataclass(frozen=True)
class PuiseuxPoly:
    """Laurent polynomial with Puiseux-series coefficients, by valuations.

    ``lead`` optionally records the leading complex coefficient of each
    term as a pair (real, imaginary) of rationals.
    """

    terms: tuple[PuiseuxTerm, ...]

    def __post_init__(self):
        if not self.terms:
            raise MotivicError("empty support")
        seen = set()
        for t in self.terms:
            if t.m in seen:
                raise MotivicError(f"repeated exponent {t.m}")
            seen.add(t.m)
            if t.lead is not None and t.lead == (0, 0):
                raise MotivicError(f"leading coefficient of {t.m} is zero")

    @classmethod
    def from_terms(cls, items) -> "PuiseuxPoly":
        """``items``: iterables ``(m, w)`` or ``(m, w, lead)``."""
        terms = []
        for it in items:
            m, w = it[0], it[1]
            lead = it[2] if len(it) > 2 else None
            if lead is not None:
                lead = (Fraction(lead[0]), Fraction(lead[1]))
            terms.append(PuiseuxTerm((int(m[0]), int(m[1])), Fraction(w), lead))
        return cls(tuple(terms))

    @property
    def has_leads(self) -> bool:
        return all(t.lead is not None for t in self.terms)

    def to_json(self) -> dict:
        out = []
        for t in self.terms:
            rec = {"m": list(t.m), "w": fmt_q(t.w)}
            if t.lead is not None:
                rec["lead"] = [fmt_q(t.lead[0]), fmt_q(t.lead[1])]
            out.append(rec)
        return {"terms": out}

    @classmethod
    def from_json(cls, doc) -> "PuiseuxPoly":
        if not isinstance(doc, dict) or not isinstance(doc.get("terms"), list):
            raise SchemaError("terms", "expected a list of terms")
        if not doc["terms"]:
            raise SchemaError("terms", "support must be nonempty")
        terms = []
        seen = set()
        for k, rec in enumerate(doc["terms"]):
            where = f"terms[{k}]"
            if not isinstance(rec, dict) or not {"m", "w"} <= set(rec) or set(rec) - {"m", "w", "lead"}:
                raise SchemaError(where, "expected keys m, w and optional lead")
            m = rec["m"]
            if (
                not isinstance(m, list)
                or len(m) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in m)
            ):
                raise SchemaError(where + ".m", "expected two integers")
            if tuple(m) in seen:
                raise SchemaError(where + ".m", f"repeated exponent {m}")
            seen.add(tuple(m))
            w = parse_q(rec["w"], where + ".w")
            lead = None
            if "lead" in rec:
                raw = rec["lead"]
                if not isinstance(raw, list) or len(raw) != 2:
                    raise SchemaError(where + ".lead", "expected [re, im]")
                lead = (parse_q(raw[0], where + ".lead[0]"), parse_q(raw[1], where + ".lead[1]"))
                if lead == (0, 0):
                    raise SchemaError(where + ".lead", "leading coefficient must be nonzero")
            terms.append(PuiseuxTerm((m[0], m[1]), w, lead))
        return cls(tuple(terms))


# tropical curve --------------------------------------------------------------------

@dataclass(frozen=True)
class TropicalVertex:
    position: QPoint
    dual_cell: int


@dataclass(frozen=True)
class TropicalEdge:
    """A bounded edge, a ray, or (collinear support only) a full line.

    ``start`` is a vertex index for bounded edges and rays; for lines it is
    None and ``anchor`` is a point on the line. ``length`` is the lattice
    length of a bounded edge.
    """

    kind: str
    weight: int
    direction: Vec
    dual_edge: int
    start: int | None = None
    end: int | None = None
    anchor: QPoint | None = None
    length: Fraction | None = None

    @property
    def bounded(self) -> bool:
        return self.kind == "bounded"


class CellRef(NamedTuple):
    kind: str  # "vertex" or "edge"
    index: int


@dataclass(frozen=True)
class TropicalPlaneCurve:
    vertices: tuple[TropicalVertex, ...]
    edges: tuple[TropicalEdge, ...]
    subdivision: RegularSubdivision

    @property
    def degenerate(self) -> bool:
        return self.subdivision.degenerate

    @property
    def betti_number(self) -> int:
        """First Betti number of the bounded part."""
        if not self.vertices:
            return 0
        nb = sum(1 for e in self.edges if e.bounded)
        return nb - len(self.vertices) + 1

    def cells(self) -> list[CellRef]:
        return [CellRef("vertex", k) for k in range(len(self.vertices))] + [
            CellRef("edge", k) for k in range(len(self.edges))
        ]

    def incident(self, v: int) -> list[tuple[int, Vec]]:
        """(weight, outgoing primitive direction) of edges at vertex ``v``."""
        out = []
        for e in self.edges:
            if e.start == v:
                out.append((e.weight, e.direction))
            if e.end == v:
                out.append((e.weight, (-e.direction[0], -e.direction[1])))
        return out

    def edge_polyhedron(self, k: int) -> QPolyhedron:
        """Closed edge ``k`` as a polyhedron in R^2."""
        e = self.edges[k]
        d = e.direction
        normal = (-d[1], d[0])
        p = self.vertices[e.start].position if e.start is not None else e.anchor
        c = normal[0] * p[0] + normal[1] * p[1]
        P = QPolyhedron(2).with_equalities([(normal, c)])
        t0 = d[0] * p[0] + d[1] * p[1]
        if e.kind == "line":
            return P
        rows = [((-d[0], -d[1]), -t0)]
        if e.kind == "bounded":
            q = self.vertices[e.end].position
            rows.append((d, d[0] * q[0] + d[1] * q[1]))
        return P.intersect(QPolyhedron(2, rows))

    def relative_interior_cell(self, ref: CellRef) -> Cell:
        """The open cell embedded in R^dim along its lattice."""
        if ref.kind == "vertex":
            return Cell.point(0)
        e = self.edges[ref.index]
        if e.kind == "bounded":
            return Cell(QPolyhedron.interval(0, e.length), open=True)
        if e.kind == "ray":
            return Cell(QPolyhedron.interval(0, None), open=True)
        return Cell(QPolyhedron(1), open=True)

    def to_json(self) -> dict:
        sub = self.subdivision
        verts = []
        for v in self.vertices:
            verts.append(
                {
                    "position": [fmt_q(v.position[0]), fmt_q(v.position[1])],
                    "dual_cell": [list(p) for p in sub.cells[v.dual_cell].vertices],
                }
            )
        edges = []
        for e in self.edges:
            rec = {
                "kind": e.kind,
                "weight": e.weight,
                "direction": list(e.direction),
                "dual_edge": [list(p) for p in sub.edges[e.dual_edge].endpoints],
            }
            if e.start is not None:
                rec["start"] = e.start
            if e.end is not None:
                rec["end"] = e.end
            if e.anchor is not None:
                rec["anchor"] = [fmt_q(e.anchor[0]), fmt_q(e.anchor[1])]
            if e.length is not None:
                rec["length"] = fmt_q(e.length)
            edges.append(rec)
        return {
            "vertices": verts,
            "edges": edges,
            "betti_number": self.betti_number,
            "degenerate": self.degenerate,
        }


def _primitive(v) -> Vec:
    g = gcd(int(v[0]), int(v[1]))
    return (int(v[0]) // g, int(v[1]) // g)


def tropicalize(f: PuiseuxPoly) -> tuple[TropicalPlaneCurve, RegularSubdivision]:
    if len(f.terms) < 2:
        raise DegenerateSupportError("a single monomial has no zeros in the torus")
    sub = regular_subdivision([(t.m, t.w) for t in f.terms])
    if sub.degenerate:
        return _tropicalize_lines(sub), sub

    vertices = tuple(TropicalVertex(c.dual_position, k) for k, c in enumerate(sub.cells))
    edges = []
    for k, e in enumerate(sub.edges):
        a, b = e.endpoints
        d = _primitive((b[0] - a[0], b[1] - a[1]))
        left = (-d[1], d[0])

        def inner(cell_id):
            cell = sub.cells[cell_id]
            side = next(cross(a, b, v) for v in cell.vertices if cross(a, b, v) != 0)
            return left if side > 0 else (-left[0], -left[1])

        if e.is_boundary:
            (s,) = e.cells
            edges.append(TropicalEdge("ray", e.lattice_length, inner(s), k, start=s))
        else:
            s, t = e.cells
            n = inner(s)
            ps, pt = vertices[s].position, vertices[t].position
            delta = (pt[0] - ps[0], pt[1] - ps[1])
            length = delta[0] / n[0] if n[0] else delta[1] / n[1]
            if length <= 0 or delta != (length * n[0], length * n[1]):
                raise InvariantViolation(f"bounded edge dual to {e.endpoints} is not along its normal")
            edges.append(TropicalEdge("bounded", e.lattice_length, n, k, start=s, end=t, length=length))
    curve = TropicalPlaneCurve(vertices, tuple(edges), sub)
    for v in range(len(vertices)):
        total = [0, 0]
        for w, d in curve.incident(v):
            total[0] += w * d[0]
            total[1] += w * d[1]
        if total != [0, 0]:
            raise InvariantViolation(f"balancing fails at vertex {v}")
    return curve, sub


def _tropicalize_lines(sub: RegularSubdivision) -> TropicalPlaneCurve:
    edges = []
    w_of = {p.m: p.w for p in sub.points}
    for k, e in enumerate(sub.edges):
        a, b = e.endpoints
        ell = e.lattice_length
        d = _primitive((b[0] - a[0], b[1] - a[1]))
        c = (w_of[a] - w_of[b]) / ell
        norm2 = d[0] ** 2 + d[1] ** 2
        anchor = (c * d[0] / norm2, c * d[1] / norm2)
        edges.append(TropicalEdge("line", ell, (-d[1], d[0]), k, anchor=anchor))
    return TropicalPlaneCurve((), tuple(edges), sub)


# classes -------------------------------------------------------------------------

def _check_ref(curve: TropicalPlaneCurve, ref) -> CellRef:
    ref = CellRef(*ref)
    if ref.kind not in ("vertex", "edge"):
        raise MotivicError(f"unsupported cell kind {ref.kind!r}")
    n = len(curve.vertices) if ref.kind == "vertex" else len(curve.edges)
    if not 0 <= ref.index < n:
        raise MotivicError(f"no {ref.kind} with index {ref.index}")
    return ref


def stratum_class(curve: TropicalPlaneCurve, ref) -> MotivicClass:
    """Class of the stratum of the special fiber attached to a cell."""
    ref = _check_ref(curve, ref)
    if ref.kind == "edge":
        return MotivicClass.coerce(curve.edges[ref.index].weight)
    cell = curve.subdivision.cells[curve.vertices[ref.index].dual_cell]
    i, b, _ = lattice_counts(cell.polygon)
    return MotivicClass({(0, 0): 1 - b, (1, 0): -i, (0, 1): -i, (1, 1): 1})


def initial_class(curve: TropicalPlaneCurve, ref) -> MotivicClass:
    """Class of the initial degeneration at a cell."""
    ref = _check_ref(curve, ref)
    if ref.kind == "edge":
        return curve.edges[ref.index].weight * (lefschetz() - 1)
    return stratum_class(curve, ref)


def _gate(f: PuiseuxPoly, assume_schoen: bool) -> None:
    if assume_schoen:
        return
    report = schoen_sanity(f)
    if report.status not in (PASS, CONDITIONAL):
        detail = "; ".join(report.messages) or "no certificate"
        raise SchoenError(f"schön check {report.status}: {detail} (pass assume_schoen to override)")


def vf_class_of_curve(f: PuiseuxPoly, assume_schoen: bool = False) -> VFClass:
    """Sum over cells of Theta(stratum, 1 - dim) * Theta(open cell, dim)."""
    _gate(f, assume_schoen)
    curve, _ = tropicalize(f)
    total = VFClass.zero()
    for ref in curve.cells():
        dim = 0 if ref.kind == "vertex" else 1
        total = total + theta_var(stratum_class(curve, ref), 1 - dim) * theta_poly(
            curve.relative_interior_cell(ref), dim
        )
    return total


def _cell_contribution(curve: TropicalPlaneCurve, ref: CellRef) -> MotivicClass:
    if ref.kind == "vertex":
        return initial_class(curve, ref)
    kind = curve.edges[ref.index].kind
    if kind == "bounded":
        return -initial_class(curve, ref)
    if kind == "line":
        # relative interior of a line has chi' = 1
        return initial_class(curve, ref)
    return MotivicClass()


def motivic_volume_curve(
    f: PuiseuxPoly, assume_schoen: bool = False, threads: int = 1
) -> MotivicClass:
    """Signed sum of initial-degeneration classes over the bounded cells."""
    _gate(f, assume_schoen)
    curve, _ = tropicalize(f)
    refs = curve.cells()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: _cell_contribution(curve, r), refs))
    else:
        parts = [_cell_contribution(curve, r) for r in refs]
    total = MotivicClass()
    for p in parts:
        total = total + p
    return total


# schön sanity ---------------------------------------------------------------------

@dataclass(frozen=True)
class SchoenReport:
    status: str
    messages: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"status": self.status, "messages": list(self.messages)}


def _sympy_coeff(lead):
    import sympy

    return sympy.Rational(lead[0].numerator, lead[0].denominator) + sympy.I * sympy.Rational(
        lead[1].numerator, lead[1].denominator
    )


def _domain(leads) -> str:
    return "QQ_I" if any(l[1] != 0 for l in leads) else "QQ"


def edge_form_squarefree(positions: Sequence[int], leads: Sequence) -> bool:
    """Is ``sum lead_k z^(positions_k - min)`` squarefree?"""
    import sympy

    z = sympy.Symbol("z")
    base = min(positions)
    expr = sum(_sympy_coeff(c) * z ** (p - base) for p, c in zip(positions, leads))
    poly = sympy.Poly(expr, z, domain=_domain(leads))
    return sympy.gcd(poly, poly.diff(z)).degree() == 0


def cell_form_smooth(exponents: Sequence[Vec], leads: Sequence) -> bool:
    """Is ``{sum lead_m x^m = 0}`` smooth in the 2-torus?"""
    import sympy

    x, y, t = sympy.symbols("x y t")
    bx = min(m[0] for m in exponents)
    by = min(m[1] for m in exponents)
    g = sum(_sympy_coeff(c) * x ** (m[0] - bx) * y ** (m[1] - by) for m, c in zip(exponents, leads))
    G = sympy.groebner(
        [g, sympy.diff(g, x), sympy.diff(g, y), 1 - x * y * t],
        x, y, t, order="grevlex", domain=_domain(leads),
    )
    return list(G.exprs) == [1]


def schoen_sanity(f: PuiseuxPoly) -> SchoenReport:
    """Report whether every initial degeneration is smooth.

    PASS needs no coefficients: every 2-cell carries exactly three lifted
    points and every edge exactly two. Otherwise, with leading coefficients
    the initial forms are checked exactly (CONDITIONAL or FAIL); without
    them the answer is UNKNOWN.
    """
    _, sub = tropicalize(f)
    if all(len(c.support) == 3 for c in sub.cells) and all(len(e.support) == 2 for e in sub.edges):
        return SchoenReport(PASS)
    if not f.has_leads:
        bad = [
            f"cell {list(map(list, c.vertices))} has {len(c.support)} supported points"
            for c in sub.cells if len(c.support) != 3
        ] + [
            f"edge {list(map(list, e.endpoints))} has {len(e.support)} supported points"
            for e in sub.edges if len(e.support) != 2
        ]
        return SchoenReport(UNKNOWN, tuple(bad))

    pts = sub.points
    lead = {t.m: t.lead for t in f.terms}
    failures = []
    for e in sub.edges:
        if len(e.support) == 2:
            continue
        a, b = e.endpoints
        ell = e.lattice_length
        step = ((b[0] - a[0]) // ell, (b[1] - a[1]) // ell)
        positions, coeffs = [], []
        for k in e.support:
            m = pts[k].m
            positions.append((m[0] - a[0]) // step[0] if step[0] else (m[1] - a[1]) // step[1])
            coeffs.append(lead[m])
        if not edge_form_squarefree(positions, coeffs):
            failures.append(f"edge {list(map(list, e.endpoints))}: initial form not squarefree")
    for c in sub.cells:
        if len(c.support) == 3:
            continue
        ms = [pts[k].m for k in c.support]
        if not cell_form_smooth(ms, [lead[m] for m in ms]):
            failures.append(f"cell {list(map(list, c.vertices))}: initial form singular in the torus")
    if failures:
        return SchoenReport(FAIL, tuple(failures))
    return SchoenReport(CONDITIONAL)


# multiplicities --------------------------------------------------------------------

def vertex_multiplicity(curve: TropicalPlaneCurve, v: int) -> int:
    """Mikhalkin multiplicity ``|det(w1 e1, w2 e2)|`` of a trivalent vertex."""
    inc = curve.incident(v)
    if len(inc) != 3:
        raise NonSimpleCurveError(f"vertex {v} has valence {len(inc)}")
    (w1, e1), (w2, e2), _ = inc
    return abs(w1 * w2 * (e1[0] * e2[1] - e1[1] * e2[0]))


def _require_simple(curve: TropicalPlaneCurve) -> None:
    if curve.degenerate:
        raise NonSimpleCurveError("curve has no vertices (collinear support)")
    for k, c in enumerate(curve.subdivision.cells):
        if len(c.vertices) != 3:
            raise NonSimpleCurveError(f"vertex {k} is dual to a {len(c.vertices)}-gon")


def mikhalkin_multiplicity(curve: TropicalPlaneCurve) -> int:
    _require_simple(curve)
    n = 1
    for v in range(len(curve.vertices)):
        n *= vertex_multiplicity(curve, v)
    return n


def quantum_number(m: int) -> LaurentY:
    """``(y^(m/2) - y^(-m/2)) / (y^(1/2) - y^(-1/2))``."""
    if m < 1:
        raise ValueError("quantum numbers need m >= 1")
    return LaurentY({m - 1 - 2 * k: 1 for k in range(m)})


def bg_from_multiplicities(ms: Sequence[int]) -> LaurentY:
    out = LaurentY({0: 1})
    for m in ms:
        out = out * quantum_number(m)
    return out


def bg_multiplicity(curve: TropicalPlaneCurve) -> LaurentY:
    """Block–Göttsche refined multiplicity, a product of quantum numbers."""
    _require_simple(curve)
    return bg_from_multiplicities([vertex_multiplicity(curve, v) for v in range(len(curve.vertices))])
