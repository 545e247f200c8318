"""Secant lines of rational space curves through a query point.

A degree-d rational curve in projective 3-space turns the question "which
secant lines pass through u?" into a plane problem: an unordered pair of
parameter values is a binary quadric a s^2 + b st + c t^2 with coordinates
(a : b : c), the line coordinates of the spanned secant are polynomials of
degree d - 1 in (a, b, c), and membership of u imposes four homogeneous
equations.  A real solution whose quadric has positive discriminant is a
secant meeting the curve in two real points, which certifies real rank two
for u; scanning a segment localizes the parameter values where that
certificate appears or disappears and matches them against the tangential
and edge boundary surfaces.
"""

from __future__ import annotations

import cmath
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import exactsolve as xs
from .multipoly import MultiPoly, NotDivisible, as_fraction
from .unipoly import UniPoly, poly_gcd, real_roots


class BadCurve(ValueError):
    """The parametrization does not span projective 3-space."""


class RewriteFailed(RuntimeError):
    """A symmetric pair polynomial failed to rewrite in (a, b, c)."""


class DegenerateQuery(ValueError):
    """The query point is zero or lies on the curve."""


class ResultantIdenticallyZero(RuntimeError):
    """Elimination collapsed: the secant system has no isolated solutions."""


PAIR_VARS = ("a", "b", "c")
POINT_VARS = ("w", "x", "y", "z")
INDEX_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

REAL_RANK_LE_2 = "REAL_RANK_LE_2"
REAL_RANK_GE_3 = "REAL_RANK_GE_3"

TWO_REAL_POINTS = "TWO_REAL_POINTS"
CONJUGATE_POINTS = "CONJUGATE_POINTS"
TANGENT_CONTACT = "TANGENT_CONTACT"

TANGENTIAL = "TANGENTIAL"
EDGE = "EDGE"
NO_RANK_CHANGE = "NO_RANK_CHANGE"
UNLABELED = "UNLABELED"

DISC_DEAD_ZONE_SCALE = 1e-10
DEDUP_TOL = 1e-6
LINE_NORM_FLOOR = 1e-9
BISECTION_WIDTH = 1e-12
FIXTURE_MATCH_WINDOW = 1e-5
MAX_ELIMINATION_RETRIES = 8


@dataclass(frozen=True)
class CurveParam:
    """Rational curve (s : t) -> (F0 : F1 : F2 : F3) of degree d in 3-space.

    Row k of F lists the coefficients of F_k on s^d, s^{d-1} t, ..., t^d.
    """

    d: int
    F: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.d < 1:
            raise BadCurve("degree must be positive")
        rows = tuple(tuple(as_fraction(c) for c in row) for row in self.F)
        if len(rows) != 4 or any(len(row) != self.d + 1 for row in rows):
            raise BadCurve("need four coefficient rows of length d + 1")
        object.__setattr__(self, "F", rows)
        if xs.exact_rank(rows) != 4:
            raise BadCurve("coefficient matrix must have rank 4 to span 3-space")

    def point(self, s, t):
        """Image of the parameter value (s : t) as an unnormalized 4-vector."""
        if isinstance(s, (int, Fraction)) and isinstance(t, (int, Fraction)):
            cast = as_fraction
        elif isinstance(s, complex) or isinstance(t, complex):
            cast = complex
        else:
            cast = float
        powers = [s ** (self.d - k) * t ** k for k in range(self.d + 1)]
        return [sum(cast(c) * p for c, p in zip(row, powers)) for row in self.F]


@dataclass(frozen=True)
class PluckerMap:
    """Line coordinates of the secant spanned by the pair (a : b : c)."""

    d: int
    polys: tuple[MultiPoly, ...]

    def __post_init__(self):
        if len(self.polys) != 6:
            raise RewriteFailed("a line in 3-space has six coordinates")
        p01, p02, p03, p12, p13, p23 = self.polys
        if not (p01 * p23 - p02 * p13 + p03 * p12).is_zero():
            raise RewriteFailed("line coordinates must satisfy the quadratic line relation")

    def __getitem__(self, pair: tuple[int, int]) -> MultiPoly:
        return self.polys[INDEX_PAIRS.index(tuple(pair))]

    def evaluate(self, abc) -> list:
        point = dict(zip(PAIR_VARS, abc))
        return [p.evaluate(point) for p in self.polys]


def _degree_exponents(deg: int) -> list[tuple[int, int, int]]:
    return [(i, j, deg - i - j) for i in range(deg, -1, -1) for j in range(deg - i, -1, -1)]


@lru_cache(maxsize=16)
def plucker_map(curve: CurveParam) -> PluckerMap:
    """Build the six secant-line coordinates as degree d-1 polynomials.

    Each divided difference of two curve points is exactly divisible by
    s1 t2 - s2 t1; the symmetric quotient rewrites uniquely in the elementary
    pair coordinates a = s1 s2, b = s1 t2 + s2 t1, c = t1 t2, found here by an
    exact linear solve over the degree d-1 monomial basis.
    """
    d = curve.d
    ring = ("s1", "t1", "s2", "t2")
    s1, t1, s2, t2 = (MultiPoly.variable(v, ring) for v in ring)
    points = []
    for sv, tv in ((s1, t1), (s2, t2)):
        powers = [sv ** (d - k) * tv ** k for k in range(d + 1)]
        points.append([
            sum((p * c for c, p in zip(row, powers)), MultiPoly.zero(ring))
            for row in curve.F
        ])
    den = s1 * t2 - s2 * t1
    quotients = []
    for i, j in INDEX_PAIRS:
        try:
            quotients.append((points[0][i] * points[1][j] - points[1][i] * points[0][j]).exact_div(den))
        except NotDivisible as exc:
            raise RewriteFailed("divided difference not divisible by the pair resolvent") from exc

    basis_exps = _degree_exponents(d - 1)
    a_sub, b_sub, c_sub = s1 * s2, s1 * t2 + s2 * t1, t1 * t2
    expanded = [a_sub ** i * b_sub ** j * c_sub ** k for i, j, k in basis_exps]
    support: set[tuple] = set()
    for poly in expanded + quotients:
        support.update(poly.terms)
    rows = sorted(support)
    matrix = [[m.terms.get(e, Fraction(0)) for m in expanded] for e in rows]
    polys = []
    for q in quotients:
        rhs = [q.terms.get(e, Fraction(0)) for e in rows]
        try:
            solution, nullspace = xs.solve_exact(matrix, rhs)
        except xs.Inconsistent as exc:
            raise RewriteFailed("quotient is not symmetric in the two parameter points") from exc
        if nullspace:
            raise RewriteFailed("pair-coordinate monomials became dependent")
        polys.append(MultiPoly(PAIR_VARS, {e: v for e, v in zip(basis_exps, solution) if v}))
    return PluckerMap(d, tuple(polys))


def secant_system(pm: PluckerMap, u) -> list[MultiPoly]:
    """The four point-on-line equations for u, degree d-1 in (a, b, c)."""
    uu = [as_fraction(c) for c in u]
    if len(uu) != 4:
        raise DegenerateQuery("query point must have four coordinates")
    if all(c == 0 for c in uu):
        raise DegenerateQuery("query point must be nonzero")
    p01, p02, p03, p12, p13, p23 = pm.polys
    w, x, y, z = uu
    return [
        p23 * x - p13 * y + p12 * z,
        p03 * y - p02 * z - p23 * w,
        p13 * w - p03 * x + p01 * z,
        p02 * x - p12 * w - p01 * y,
    ]


@dataclass(frozen=True)
class SecantSolution:
    """One real secant line through the query point.

    abc is the unit-normalized quadric whose two linear factors are the
    parameter points; contact says whether those points are real (positive
    discriminant), conjugate, or inside the tangency dead zone.
    """

    abc: tuple[float, float, float]
    discriminant: float
    contact: str
    roots: tuple[tuple, tuple]
    curve_points: tuple[tuple, ...]
    residual: float
    line_norm: float | None = None
    multiplicity: int = 1

    def to_json(self) -> dict:
        return {
            "abc": list(self.abc),
            "discriminant": self.discriminant,
            "contact": self.contact,
            "roots": [[_num_json(v) for v in pt] for pt in self.roots],
            "curve_points": [[_num_json(v) for v in pt] for pt in self.curve_points],
            "residual": self.residual,
            "line_norm": self.line_norm,
            "multiplicity": self.multiplicity,
        }


def _num_json(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return float(value)


def _prepare_row(poly: MultiPoly) -> tuple[np.ndarray, np.ndarray]:
    exps = np.array(sorted(poly.terms), dtype=np.int64)
    scale = max(abs(c) for c in poly.terms.values())
    coeffs = np.array([float(poly.terms[tuple(e)] / scale) for e in exps])
    return exps, coeffs


def _eval_prepared(row: tuple[np.ndarray, np.ndarray], p):
    exps, coeffs = row
    monomials = np.prod(np.asarray(p)[None, :] ** exps, axis=1)
    return complex(np.dot(coeffs, monomials))


def _gradient_rows(poly: MultiPoly) -> list[tuple[np.ndarray, np.ndarray]]:
    grads = []
    scale = max(abs(c) for c in poly.terms.values())
    for k in range(3):
        terms = {}
        for e, c in poly.terms.items():
            if e[k]:
                lowered = tuple(ei - (i == k) for i, ei in enumerate(e))
                terms[lowered] = terms.get(lowered, 0.0) + float(c / scale) * e[k]
        exps = np.array(sorted(terms) or [(0, 0, 0)], dtype=np.int64)
        coeffs = np.array([terms.get(tuple(e), 0.0) for e in exps])
        grads.append((exps, coeffs))
    return grads


def _polish(prepared, gradients, p: np.ndarray) -> np.ndarray:
    for _ in range(4):
        residual = np.array([_eval_prepared(row, p) for row in prepared])
        jac = np.array([[_eval_prepared(g, p) for g in grow] for grow in gradients])
        step, *_ = np.linalg.lstsq(jac, -residual, rcond=None)
        step = step - p * (np.vdot(p, step) / np.vdot(p, p))
        if np.linalg.norm(step) < 1e-15:
            break
        p = p + step
        p = p / np.linalg.norm(p)
    return p


def _projective_match(p: np.ndarray, q: np.ndarray) -> bool:
    return 1.0 - abs(np.vdot(p, q)) < DEDUP_TOL


def _canonical_real(p: np.ndarray) -> np.ndarray:
    out = np.real(p)
    out = out / np.linalg.norm(out)
    for v in out:
        if abs(v) > LINE_NORM_FLOOR:
            return out if v > 0 else -out
    return out


def _quadric_parameter_points(a: float, b: float, c: float) -> tuple[tuple, tuple]:
    """Parameter points (s, t) of the two linear factors of a s^2 + b st + c t^2.

    A root (x0 : y0) of the quadric in (x, y) corresponds to the linear factor
    vanishing there, i.e. the parameter point (s, t) = (y0, -x0).
    """
    disc = b * b - 4.0 * a * c
    sq = math.sqrt(disc) if disc >= 0 else cmath.sqrt(complex(disc))
    quot = -(b + (sq if b >= 0 else -sq)) / 2.0
    if abs(quot) > 0.0:
        roots_xy = ((quot, a), (c, quot))
    elif abs(a) >= abs(c):
        # b = 0 and ac = 0 up to roundoff: a s^2 with a double root at (0 : 1)
        roots_xy = ((0.0, 1.0), (0.0, 1.0))
    else:
        roots_xy = ((1.0, 0.0), (1.0, 0.0))
    out = []
    for x0, y0 in roots_xy:
        s, t = y0, -x0
        norm = max(abs(s), abs(t))
        s, t = s / norm, t / norm
        if isinstance(s, complex) and abs(s.imag) < 1e-14 and abs(t.imag) < 1e-14:
            s, t = s.real, t.real
        if not isinstance(s, complex) and (s < 0 or (s == 0 and t < 0)):
            s, t = -s, -t
        out.append((s, t))
    return tuple(out)


def _curve_point_normalized(curve: CurveParam, s, t):
    values = np.array([complex(v) for v in curve.point(s, t)])
    values = values / np.linalg.norm(values)
    if np.max(np.abs(values.imag)) < 1e-10:
        return tuple(float(v) for v in _canonical_real(values.real))
    pivot = values[int(np.argmax(np.abs(values)))]
    values = values * (abs(pivot) / pivot)
    return tuple(complex(v) for v in values)


def _random_combination(rows: Sequence[MultiPoly], rng: random.Random) -> MultiPoly:
    zero = MultiPoly.zero(PAIR_VARS)
    for _ in range(20):
        combo = sum((row * rng.randint(-5, 5) for row in rows), zero)
        if not combo.is_zero():
            return combo
    return zero


def _elimination_variable(p: MultiPoly, q: MultiPoly) -> str:
    best, best_score = PAIR_VARS[0], (-1, 0.0)
    for v in PAIR_VARS:
        dp = len(p.coefficients_in(v)) - 1
        dq = len(q.coefficients_in(v)) - 1
        lead = p.coefficients_in(v)[-1]
        weight = sum(abs(float(c)) for c in lead.terms.values()) if lead.terms else 0.0
        score = (dp + dq, weight)
        if score > best_score:
            best, best_score = v, score
    return best


def _binary_form_root_pairs(res: MultiPoly) -> list[tuple[complex, complex]]:
    """Projective roots of a binary form, as (value of var1, value of var2)."""
    var_m, var_n = res.variables
    degree = res.total_degree()
    coeffs = [Fraction(0)] * (degree + 1)
    for e, c in res.terms.items():
        coeffs[e[res.variables.index(var_m)]] = c
    top = max(abs(c) for c in coeffs)
    floats = [float(c / top) for c in coeffs]
    pairs: list[tuple[complex, complex]] = []
    if coeffs[degree] == 0:
        pairs.append((1.0 + 0.0j, 0.0 + 0.0j))
    descending = list(reversed(floats))
    leading = next((i for i, c in enumerate(descending) if c != 0.0), degree)
    poly = descending[leading:]
    if len(poly) > 1:
        for root in np.roots(poly):
            pairs.append((complex(root), 1.0 + 0.0j))
    return pairs


def _resultant_of(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    from .multipoly import resultant

    return resultant(p, q, var)


def solve_secants(system: Sequence[MultiPoly], tol: float = 1e-8, *,
                  curve: CurveParam | None = None, pm: PluckerMap | None = None,
                  seed: int = 0) -> tuple[list[SecantSolution], int]:
    """All isolated solutions (a : b : c) of the secant system through u.

    Returns the real solutions as SecantSolution records plus the number of
    verified nonreal solutions.  Elimination uses the resultant of two random
    integer combinations of the four rows; spurious intersections of the two
    combinations are discarded by checking residuals of all four rows.
    """
    rows = [p if isinstance(p, MultiPoly) else MultiPoly(PAIR_VARS, p) for p in system]
    nonzero = [p for p in rows if not p.is_zero()]
    if not nonzero:
        raise DegenerateQuery("all four equations vanish identically")
    prepared = [_prepare_row(p) for p in nonzero]
    gradients = [_gradient_rows(p) for p in nonzero]
    rng = random.Random(seed)

    candidates: list[np.ndarray] = []
    # projective unit points never appear in chart-based rooting; test exactly
    for k in range(3):
        unit = {v: int(i == k) for i, v in enumerate(PAIR_VARS)}
        if all(p.evaluate(unit) == 0 for p in nonzero):
            candidates.append(np.eye(3)[k].astype(complex))

    solved = False
    for _ in range(MAX_ELIMINATION_RETRIES):
        p = _random_combination(nonzero, rng)
        q = _random_combination(nonzero, rng)
        if p.is_zero() or q.is_zero():
            continue
        var = _elimination_variable(p, q)
        res = _resultant_of(p, q, var)
        if res.is_zero():
            continue
        if res.is_constant():
            solved = True  # no solutions away from the unit points
            break
        keep = [v for v in PAIR_VARS if v != var]
        v_index = PAIR_VARS.index(var)
        for m0, n0 in _binary_form_root_pairs(res):
            assignment = {keep[0]: m0, keep[1]: n0}
            v_values: list = []
            for source in (p, q):
                coeffs_v = [c.evaluate(assignment) for c in source.coefficients_in(var)]
                scale = max(abs(c) for c in coeffs_v)
                if scale == 0 or all(abs(c / scale) <= 1e-12 for c in coeffs_v):
                    continue
                descending = [c / scale for c in reversed(coeffs_v)]
                lead = next(i for i, c in enumerate(descending) if abs(c) > 1e-12)
                if len(descending) - lead >= 2:
                    v_values = list(np.roots(descending[lead:]))
                if lead > 0:
                    v_values.append(None)  # eliminated variable dominant: unit point
                break
            for v0 in v_values:
                point = np.zeros(3, dtype=complex)
                if v0 is None:
                    point[v_index] = 1.0
                else:
                    point[[i for i in range(3) if i != v_index]] = (m0, n0)
                    point[v_index] = v0
                norm = np.linalg.norm(point)
                if norm == 0:
                    continue
                candidates.append(point / norm)
        solved = True
        break
    if not solved:
        raise ResultantIdenticallyZero(
            "every elimination collapsed; the query point may lie on the curve")

    verified: list[tuple[np.ndarray, float, int]] = []
    for cand in candidates:
        point = _polish(prepared, gradients, cand)
        residual = max(abs(_eval_prepared(row, point)) for row in prepared)
        if residual > max(tol, 1e-7):
            continue
        for i, (existing, res_old, mult) in enumerate(verified):
            if _projective_match(existing, point):
                verified[i] = (existing if res_old <= residual else point,
                               min(res_old, residual), mult + 1)
                break
        else:
            verified.append((point, residual, 1))

    solutions: list[SecantSolution] = []
    nonreal = 0
    for point, residual, mult in verified:
        pivot = point[int(np.argmax(np.abs(point)))]
        aligned = point * (abs(pivot) / pivot)
        if np.max(np.abs(aligned.imag)) > 1e-7:
            nonreal += 1
            continue
        abc = _canonical_real(aligned)
        a, b, c = (float(v) for v in abc)
        disc = b * b - 4.0 * a * c
        dead_zone = DISC_DEAD_ZONE_SCALE * (a * a + b * b + c * c)
        if disc > dead_zone:
            contact = TWO_REAL_POINTS
        elif disc < -dead_zone:
            contact = CONJUGATE_POINTS
        else:
            contact = TANGENT_CONTACT
        roots = _quadric_parameter_points(a, b, c)
        curve_points = tuple(_curve_point_normalized(curve, s, t) for s, t in roots) if curve else ()
        line_norm = None
        if pm is not None:
            line_norm = float(np.linalg.norm([float(v) for v in pm.evaluate((a, b, c))]))
        solutions.append(SecantSolution((a, b, c), disc, contact, roots,
                                        curve_points, residual, line_norm, mult))
    solutions.sort(key=lambda s: s.abc)
    return solutions, nonreal


def _on_curve(curve: CurveParam, u: Sequence[Fraction]) -> bool:
    """Exact test for u proportional to some (possibly complex) curve point."""
    common: UniPoly | None = None
    infinity = True
    for i, j in INDEX_PAIRS:
        coeffs = [curve.F[i][k] * u[j] - curve.F[j][k] * u[i] for k in range(curve.d + 1)]
        if all(c == 0 for c in coeffs):
            continue
        infinity = infinity and coeffs[0] == 0
        poly = UniPoly(list(reversed(coeffs)))
        common = poly if common is None else poly_gcd(common, poly)
        if common.degree == 0 and not infinity:
            return False
    if common is None:
        return True  # u is proportional to every curve point difference: on a line curve
    return infinity or common.degree >= 1


@dataclass(frozen=True)
class PointClassification:
    """Real-rank verdict for one query point with its secant evidence."""

    label: str
    witness: SecantSolution | None
    solutions: tuple[SecantSolution, ...]
    nonreal_count: int

    @property
    def real_secants(self) -> int:
        return len(self.solutions)

    @property
    def two_real_point_secants(self) -> int:
        return sum(1 for s in self.solutions if s.contact == TWO_REAL_POINTS)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "witness": self.witness.to_json() if self.witness else None,
            "solutions": [s.to_json() for s in self.solutions],
            "nonreal_count": self.nonreal_count,
        }


def classify_point(curve: CurveParam, u, tol: float = 1e-8, *, seed: int = 0) -> PointClassification:
    """REAL_RANK_LE_2 iff some real secant line through u has a genuinely
    positive quadric discriminant (two real curve points) and nonzero line
    coordinates; otherwise REAL_RANK_GE_3."""
    uu = [as_fraction(c) for c in u]
    if all(c == 0 for c in uu):
        raise DegenerateQuery("query point must be nonzero")
    if _on_curve(curve, uu):
        raise DegenerateQuery("query point lies on the curve")
    pm = plucker_map(curve)
    system = secant_system(pm, uu)
    solutions, nonreal = solve_secants(system, tol, curve=curve, pm=pm, seed=seed)
    witness = next((s for s in solutions
                    if s.contact == TWO_REAL_POINTS and s.line_norm > LINE_NORM_FLOOR), None)
    label = REAL_RANK_LE_2 if witness is not None else REAL_RANK_GE_3
    return PointClassification(label, witness, tuple(solutions), nonreal)


@dataclass(frozen=True)
class PathSample:
    t: float
    label: str
    real_secants: int
    two_real_point_secants: int
    min_discriminant: float


@dataclass(frozen=True)
class PathTransition:
    t_star: float
    kind: str
    rank_before: int
    rank_after: int
    surface: str | None = None


@dataclass(frozen=True)
class PathReport:
    """Classification samples along a segment plus localized transitions."""

    samples: tuple[PathSample, ...]
    transitions: tuple[PathTransition, ...]

    def to_json(self) -> dict:
        return {
            "samples": [vars(s) | {} for s in self.samples],
            "transitions": [vars(t) | {} for t in self.transitions],
        }

    def to_csv(self) -> str:
        lines = ["t,min_discriminant,real_secants,two_real_point_secants"]
        for s in self.samples:
            lines.append(f"{s.t!r},{s.min_discriminant!r},{s.real_secants},{s.two_real_point_secants}")
        return "\n".join(lines) + "\n"


def _rank_of(label: str) -> int:
    return 2 if label == REAL_RANK_LE_2 else 3


def _path_point(path, t: Fraction) -> list[Fraction]:
    return [c0 + c1 * t for c0, c1 in path]


def _sample(curve: CurveParam, path, t: Fraction, tol: float, seed: int) -> PathSample:
    pc = classify_point(curve, _path_point(path, t), tol, seed=seed)
    discs = [s.discriminant for s in pc.solutions]
    return PathSample(float(t), pc.label, pc.real_secants, pc.two_real_point_secants,
                      min(discs) if discs else math.nan)


def _bisect_change(curve: CurveParam, path, lo: Fraction, hi: Fraction,
                   lo_label: str, tol: float, seed: int) -> float:
    while hi - lo > BISECTION_WIDTH:
        mid = (lo + hi) / 2
        if classify_point(curve, _path_point(path, mid), tol, seed=seed).label == lo_label:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def _fixture_polynomial(poly: MultiPoly, path) -> UniPoly:
    t = MultiPoly.variable("t", ("t",))
    replacements = {v: t * c1 + MultiPoly.constant(c0, ("t",))
                    for v, (c0, c1) in zip(POINT_VARS, path)}
    return UniPoly.from_multipoly(poly.substitute(replacements), "t")


def scan_path(curve: CurveParam, path, interval=(0, 1), nsamples: int = 21,
              fixtures: Mapping[str, MultiPoly] | None = None, tol: float = 1e-8,
              *, seed: int = 0, workers: int = 1) -> PathReport:
    """Classify u(t) = path(t) along the interval and localize every change.

    Classification changes are bisected to width 1e-12.  When boundary-surface
    fixture polynomials are supplied (keyed by kind), each localized change is
    matched to the fixture root it crosses and reported at that root's
    high-precision value; fixture roots that do not change the classification
    are reported too, flagged NO_RANK_CHANGE.

    Samples are independent, so `workers` threads may classify them in
    parallel; the report is identical for any worker count.
    """
    if nsamples < 2:
        raise ValueError("need at least two samples")
    path = tuple((as_fraction(c0), as_fraction(c1)) for c0, c1 in path)
    lo, hi = (as_fraction(v) for v in interval)
    if hi <= lo:
        raise ValueError("empty interval")
    ts = [lo + (hi - lo) * k / (nsamples - 1) for k in range(nsamples)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(lambda t: _sample(curve, path, t, tol, seed), ts))
    else:
        samples = [_sample(curve, path, t, tol, seed) for t in ts]

    changes: list[tuple[float, int, int]] = []
    for (ta, sa), (tb, sb) in zip(zip(ts, samples), zip(ts[1:], samples[1:])):
        if sa.label != sb.label:
            t_star = _bisect_change(curve, path, ta, tb, sa.label, tol, seed)
            changes.append((t_star, _rank_of(sa.label), _rank_of(sb.label)))

    fixture_roots: list[tuple[float, str]] = []
    for kind, poly in (fixtures or {}).items():
        along = _fixture_polynomial(poly, path)
        if along.is_zero():
            continue
        for root, _mult in real_roots(along, lo, hi, tol=1e-13):
            fixture_roots.append((root, kind))

    transitions: list[PathTransition] = []
    matched: set[int] = set()
    for t_star, rank_before, rank_after in changes:
        best = None
        for idx, (root, kind) in enumerate(fixture_roots):
            if idx in matched or abs(root - t_star) > FIXTURE_MATCH_WINDOW:
                continue
            if best is None or abs(root - t_star) < abs(fixture_roots[best][0] - t_star):
                best = idx
        if best is None:
            transitions.append(PathTransition(t_star, UNLABELED, rank_before, rank_after))
        else:
            matched.add(best)
            root, kind = fixture_roots[best]
            transitions.append(PathTransition(root, kind, rank_before, rank_after, kind))
    probe = min((hi - lo) / (8 * (nsamples - 1)), Fraction(1, 10 ** 7))
    for idx, (root, kind) in enumerate(fixture_roots):
        if idx in matched:
            continue
        left = classify_point(curve, _path_point(path, as_fraction(root) - probe), tol, seed=seed)
        right = classify_point(curve, _path_point(path, as_fraction(root) + probe), tol, seed=seed)
        rank_before, rank_after = _rank_of(left.label), _rank_of(right.label)
        label = kind if rank_before != rank_after else NO_RANK_CHANGE
        transitions.append(PathTransition(root, label, rank_before, rank_after, kind))
    transitions.sort(key=lambda tr: tr.t_star)
    return PathReport(tuple(samples), tuple(transitions))


MONOMIAL_QUARTIC = CurveParam(4, (
    (1, 0, 0, 0, 0),
    (0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1),
))

# ruled sextic surfaces bounding the real rank two region of the monomial
# quartic: contact locus of tangent lines, and of the edge (bitangent) lines
TANGENTIAL_SEXTIC = MultiPoly(POINT_VARS, {
    (0, 3, 3, 0): 16, (2, 0, 4, 0): -27, (1, 2, 2, 1): 6,
    (0, 4, 0, 2): -27, (2, 1, 1, 2): 48, (3, 0, 0, 3): -16,
})
EDGE_SEXTIC = MultiPoly(POINT_VARS, {
    (0, 3, 3, 0): 32, (2, 0, 4, 0): -27, (1, 2, 2, 1): -6,
    (0, 4, 0, 2): -27, (2, 1, 1, 2): 24, (3, 0, 0, 3): 4,
})
MONOMIAL_QUARTIC_FIXTURES = {TANGENTIAL: TANGENTIAL_SEXTIC, EDGE: EDGE_SEXTIC}

# a segment that crosses both boundary surfaces twice, with exactly one
# tangential crossing and one edge crossing changing the real rank
CROSSING_PATH = ((84, -74), (13, 59), (62, -19), (-38, -10))
