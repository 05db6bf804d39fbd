"""Fuchsian holonomy of a Fenchel-Nielsen point.

Chart convention (identifier ``CHART``): upper half-plane, and every cuff frame
is a matrix F with the frame sitting at F(i) looking along F(i*R+). In the
frame's own coordinates the cuff is the imaginary axis traversed upward and
the pants lies to the left.

* ``D(s) = diag(e^{s/2}, e^{-s/2})`` moves a frame forward by s;
* ``R(phi)`` rotates it counterclockwise by phi;
* inside a pants with half-cuffs h_j and seams s01, s12, s20 (the doubled
  right-angled hexagon), ``F_{j+1} = F_j D(h_j) L D(s_{j,j+1}) L`` with
  ``L = R(pi/2)``, so each frame rests at the foot of the seam from cuff j-1;
* a gluing with twist tau = l theta / 2pi crosses with ``D(sigma - tau) R(pi)``,
  where sigma aligns zero twist with the seams the dual curve follows.

Increasing tau is the left twist: the first derivative of length is
``+sum cos theta`` with theta measured counterclockwise from the cuff to the
crossing curve.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegeneracyError, NonHyperbolicError, UnsupportedError, ValidationError
from .hypertrig import pants_seams
from .surface import (BOUNDARY, CurveClass, FNPoint, Letter, PantsDecomposition, Slot,
                      dual_route, letter_source)

CHART = "uhp-cuff-frame/v1"

_I2 = np.eye(2)


def translation(s: float) -> np.ndarray:
    if abs(s) > 1400.0:
        raise DegeneracyError(f"translation by {s!r} overflows double precision")
    e = math.exp(s / 2.0)
    return np.array([[e, 0.0], [0.0, 1.0 / e]])


def rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi / 2.0), math.sin(phi / 2.0)
    return np.array([[c, s], [-s, c]])


_LEFT = rotation(math.pi / 2.0)
_HALF_TURN = rotation(math.pi)


def sl2_inverse(M: np.ndarray) -> np.ndarray:
    """Inverse of a determinant-one matrix (its adjugate)."""
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])


def sl2_normalize(M: np.ndarray) -> np.ndarray:
    """Rescale to determinant one, removing accumulated rounding in the determinant."""
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    return M / math.sqrt(det)


def matrix_length(M: np.ndarray) -> float:
    """Translation length of a hyperbolic determinant-one matrix.

    Short translations use tr^2 - 4 = (a - d)^2 + 4bc, which avoids the
    cancellation in arccosh(|tr|/2). Long ones use the trace directly, whose
    rounding grows only linearly with the entries.
    """
    if not np.isfinite(M).all():
        raise DegeneracyError("matrix entries overflowed double precision")
    a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    half = abs(a + d) / 2.0
    if half >= 2.0:
        return 2.0 * math.acosh(half)
    disc = (a - d) ** 2 + 4.0 * b * c
    if not disc > 0.0:
        raise NonHyperbolicError(f"|trace| = {abs(a + d)!r} is not hyperbolic")
    return 2.0 * math.asinh(math.sqrt(disc) / 2.0)


def mobius(M: np.ndarray, z: float) -> float:
    """Action on the extended real line (infinity as math.inf)."""
    a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    if math.isinf(z):
        return a / c if c != 0.0 else math.inf
    den = c * z + d
    return (a * z + b) / den if den != 0.0 else math.inf


@dataclass(frozen=True)
class GeodesicAxis:
    """Oriented axis from the repelling to the attracting fixed point."""

    repelling: float
    attracting: float
    length: float

    def __post_init__(self):
        if self.repelling == self.attracting:
            raise DegeneracyError("axis endpoints coincide")

    @property
    def endpoints(self) -> tuple[float, float]:
        return (self.repelling, self.attracting)

    @classmethod
    def of(cls, M: np.ndarray) -> "GeodesicAxis":
        length = matrix_length(M)
        a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
        r = math.sqrt((a - d) ** 2 + 4.0 * b * c)
        if c == 0.0:
            z_fin = b / (d - a)
            # z -> (a/d) z + ..., infinity attracts when |a| > |d|
            return cls(z_fin, math.inf, length) if abs(a) > abs(d) else cls(math.inf, z_fin, length)
        # roots of c z^2 + (d - a) z - b, in the cancellation-free form
        q = -0.5 * ((d - a) + math.copysign(r, d - a))
        z1 = q / c
        z2 = -b / q if q != 0.0 else ((a - d) - r) / (2.0 * c)
        # a fixed point attracts when |c z + d| > 1
        if abs(c * z1 + d) > 1.0:
            return cls(z2, z1, length)
        return cls(z1, z2, length)


def _crosses_imaginary(u: float, v: float) -> bool:
    return not (math.isinf(u) or math.isinf(v)) and u * v < 0.0


def angle_with_imaginary_axis(u: float, v: float) -> tuple[float, float]:
    """(cos, sin) of the angle from the upward imaginary axis to the line (u, v)."""
    if not _crosses_imaginary(u, v):
        raise DegeneracyError("geodesic does not cross the reference axis transversally")
    w = abs(v - u)
    return -(u + v) / w, 2.0 * math.sqrt(-u * v) / w


def axis_distance(p: float, q: float) -> float:
    """Distance between the imaginary axis and the geodesic with endpoints p, q."""
    if math.isinf(p) or math.isinf(q) or p == 0.0 or q == 0.0:
        raise DegeneracyError("geodesics share an endpoint at 0 or infinity")
    if p * q < 0.0:
        raise DegeneracyError("geodesics intersect; no orthogonal arc")
    return math.acosh(abs(q + p) / abs(q - p))


@dataclass(frozen=True)
class IntersectionPoint:
    angle: float
    cos: float
    sin: float
    subarcs: tuple[float, ...]


@dataclass
class Holonomy:
    """Letter matrices, tree transports and generators for one FNPoint.

    ``conjugator`` changes the chart of every public matrix (generators and
    word matrices) without touching the internal frames.
    """

    point: FNPoint
    frames: dict[int, tuple[np.ndarray, ...]]  # F0, F1, F2 and the step F1^-1 F2
    sigma: tuple[float, ...]
    conjugator: np.ndarray = field(default_factory=lambda: _I2.copy())
    chart: str = CHART
    _cache: dict = field(default_factory=dict, repr=False)
    _tree: tuple | None = field(default=None, repr=False)

    @property
    def decomposition(self) -> PantsDecomposition:
        return self.point.decomposition

    @property
    def transports(self) -> dict[Slot, np.ndarray]:
        """Matrix taking each cuff frame's coordinates to those of frame (0, 0)."""
        return self._spanning_tree()[0]

    def transport_inverse(self, slot: Slot) -> np.ndarray:
        return self._spanning_tree()[2][slot]

    @property
    def tree_gluings(self) -> frozenset:
        return self._spanning_tree()[1]

    def _spanning_tree(self):
        if self._tree is not None:
            return self._tree
        dec = self.decomposition
        # each transport is kept with an inverse built from exact letter inverses
        # in reverse order; inverting the product itself would lose accuracy
        root = {0: (_I2, _I2)}
        tree = set()
        queue = [0]

        def step(pair, a):
            M = self.letter_matrix(a)
            return pair[0] @ M, sl2_inverse(M) @ pair[1]

        while queue:
            P = queue.pop(0)
            for g, (a, b) in enumerate(dec.gluings):
                for side, (src, dst) in enumerate(((a, b), (b, a))):
                    if src[0] != P or dst[0] in root:
                        continue
                    T = root[P]
                    if src[1]:
                        T = step(T, ("w", P, 0, src[1]))
                    T = step(T, ("x", g, side))
                    if dst[1]:
                        T = step(T, ("w", dst[0], dst[1], 0))
                    root[dst[0]] = T
                    tree.add(g)
                    queue.append(dst[0])
        transports, inverses = {}, {}
        for P, T in root.items():
            for j in range(3):
                pair = step(T, ("w", P, 0, j)) if j else T
                transports[(P, j)], inverses[(P, j)] = pair
        self._tree = (transports, frozenset(tree), inverses)
        return self._tree

    def with_point(self, q: FNPoint) -> "Holonomy":
        """Holonomy of q, which must differ from this point in twists only.

        Frames and non-crossing letters are shared; only crossing letters of
        gluings whose twist changed are recomputed.
        """
        if q.decomposition is not self.point.decomposition and q.decomposition != self.point.decomposition:
            raise ValidationError("points live on different decompositions")
        if q.lengths != self.point.lengths:
            raise ValidationError("with_point needs identical lengths")
        changed = {g for g in range(len(q.twists)) if q.twists[g] != self.point.twists[g]}
        cache = {a: M for a, M in self._cache.items() if not (a[0] == "x" and a[1] in changed)}
        return Holonomy(q, self.frames, self.sigma, self.conjugator, self.chart, cache)

    # -- letters and words -------------------------------------------------

    def letter_matrix(self, a: Letter) -> np.ndarray:
        M = self._cache.get(a)
        if M is not None:
            return M
        if a[0] == "c":
            M = translation(a[3] * self.point.slot_length((a[1], a[2])))
        elif a[0] == "w":
            # products of the elementary steps, never F_j^-1 F_k, which would
            # reintroduce rounding of order |F|^2
            F = self.frames[a[1]]
            j, k = sorted(a[2:])
            M = F[3] if (j, k) == (1, 2) else F[k]
            if a[2] > a[3]:
                M = sl2_inverse(M)
        elif a[0] == "x":
            g = a[1]
            M = translation(self.sigma[g] - self.point.twist_length(g)) @ _HALF_TURN
        else:
            raise ValidationError(f"malformed letter {a!r}")
        self._cache[a] = M
        return M

    def local_matrix(self, word: Sequence[Letter]) -> np.ndarray:
        """Product of letter matrices in the coordinates of the word's first frame."""
        M = _I2
        with np.errstate(over="ignore", invalid="ignore"):
            for a in word:
                M = M @ self.letter_matrix(a)
        return M

    def word_matrix(self, c: CurveClass | Sequence[Letter]) -> np.ndarray:
        """Holonomy of a closed word, transported to the base frame and chart."""
        word = c.word if isinstance(c, CurveClass) else tuple(c)
        if not word:
            return _I2.copy()
        src = letter_source(self.decomposition, word[0])
        M = self.transports[src] @ self.local_matrix(word) @ self.transport_inverse(src)
        return self.conjugator @ M @ sl2_inverse(self.conjugator)

    def conjugate(self, A: np.ndarray) -> "Holonomy":
        A = np.asarray(A, dtype=float)
        det = np.linalg.det(A)
        if not det > 0:
            raise ValidationError("chart change must have positive determinant")
        A = A / math.sqrt(det)
        return Holonomy(self.point, self.frames, self.sigma, A @ self.conjugator,
                        self.chart + "+conj", self._cache, self._tree)

    # -- generators and relators ------------------------------------------

    def generators(self) -> dict[str, np.ndarray]:
        """Cuff loops ``gamma[P,j]`` plus ``loop[g]`` for gluings off the spanning tree."""
        dec = self.decomposition
        out = {}
        for p in range(len(dec.pants)):
            for j in range(3):
                out[f"gamma[{p},{j}]"] = self.word_matrix((("c", p, j, 1),))
        for g in range(dec.n_interior):
            if g not in self.tree_gluings:
                out[f"loop[{g}]"] = self._gluing_loop(g)
        return out

    def _gluing_loop(self, g: int) -> np.ndarray:
        a, b = self.decomposition.gluings[g]
        M = self.transports[a] @ self.letter_matrix(("x", g, 0)) @ self.transport_inverse(b)
        return self.conjugator @ M @ sl2_inverse(self.conjugator)

    def relator_residuals(self) -> list[float]:
        """Distance from +-I of every relator: one per pants, one per gluing.

        Each relator is evaluated in its own local frame. That is a conjugate of
        the same relator in generator form and avoids the growth of transport
        matrices along long chains of pants.
        """
        dec = self.decomposition
        res = []
        for p in range(len(dec.pants)):
            word = [("w", p, 0, 2), ("c", p, 2, 1), ("w", p, 2, 1), ("c", p, 1, 1),
                    ("w", p, 1, 0), ("c", p, 0, 1)]
            res.append(_pm_identity_residual(self.local_matrix(word)))
        for g, (a, b) in enumerate(dec.gluings):
            word = [("x", g, 0), ("c", b[0], b[1], 1), ("x", g, 1), ("c", a[0], a[1], 1)]
            res.append(_pm_identity_residual(self.local_matrix(word)))
        return res

    def generators_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["name", "m00", "m01", "m10", "m11"])
        for name, M in self.generators().items():
            out.writerow([name] + [f"{x:.17g}" for x in M.ravel()])
        return buf.getvalue()


def _pm_identity_residual(M: np.ndarray) -> float:
    return float(min(np.abs(M - _I2).max(), np.abs(M + _I2).max()))


def _port_offset(point: FNPoint, slot: Slot, toward: int) -> float:
    p, j = slot
    if toward == (j - 1) % 3:
        return 0.0
    return point.slot_length(slot) / 2.0


def holonomy_rep(p: FNPoint) -> Holonomy:
    dec = p.decomposition
    if dec.n_punctures:
        raise UnsupportedError("holonomy of punctured pants (parabolic cuffs) is not supported")
    frames = {}
    for P in range(len(dec.pants)):
        l = [p.slot_length((P, j)) for j in range(3)]
        s01, s12, s20 = pants_seams(*l)
        F0 = _I2
        F1 = F0 @ translation(l[0] / 2) @ _LEFT @ translation(s01) @ _LEFT
        step12 = translation(l[1] / 2) @ _LEFT @ translation(s12) @ _LEFT
        with np.errstate(over="ignore", invalid="ignore"):
            F2 = F1 @ step12
        if not (np.isfinite(F1).all() and np.isfinite(F2).all()):
            raise DegeneracyError(f"frames of pants {P} overflow double precision")
        frames[P] = (F0, F1, F2, step12)
    sigma = []
    for g, (a, b) in enumerate(dec.gluings):
        ma, mb = dual_route(dec, g)
        sigma.append(_port_offset(p, a, ma) + _port_offset(p, b, mb))
    return Holonomy(p, frames, tuple(sigma))


# ---------------------------------------------------------------------------
# Queries


def _as_rep(x) -> Holonomy:
    return x if isinstance(x, Holonomy) else holonomy_rep(x)


def curve_length(rep: Holonomy, c: CurveClass) -> float:
    if not c.is_closed:
        raise ValidationError("curve_length needs a closed class")
    if not c.word:
        raise ValidationError("empty word")
    if len(c.word) == 1 and c.word[0][0] == "c":
        _, P, j, n = c.word[0]
        return abs(n) * rep.point.slot_length((P, j))
    return matrix_length(rep.local_matrix(c.word))


def _decomposition_gluing(rep: Holonomy, a: CurveClass) -> int | None:
    if not (a.is_closed and len(a.word) == 1 and a.word[0][0] == "c" and abs(a.word[0][3]) == 1):
        raise UnsupportedError("first class must be a decomposition curve")
    _, P, j, _ = a.word[0]
    gs = rep.decomposition.gluing_of_slot((P, j))
    return None if gs is None else gs[0]


def _height_on_axis(A: np.ndarray, p: float, q: float) -> float:
    p2, q2 = mobius(A, p), mobius(A, q)
    if math.isinf(p2) or math.isinf(q2) or p2 * q2 >= 0.0:
        raise DegeneracyError("lift does not cross the curve axis")
    return math.sqrt(-p2 * q2)


def intersection_data(rep: Holonomy, a: CurveClass, b: CurveClass) -> list[IntersectionPoint]:
    """Angles where b crosses the decomposition curve a, and the subarcs of b."""
    g = _decomposition_gluing(rep, a)
    if g is None or not b.is_closed:
        return []
    word = b.word
    pos = [k for k, x in enumerate(word) if x[0] == "x" and x[1] == g]
    if not pos:
        return []
    if len(pos) > 2:
        raise UnsupportedError(f"{len(pos)} intersection points; only 1 or 2 supported")
    rotated = [word[k:] + word[:k] for k in pos]
    mats = [rep.local_matrix(w) for w in rotated]
    length = matrix_length(mats[0])
    angles = []
    for M in mats:
        ax = GeodesicAxis.of(M)
        cs, sn = angle_with_imaginary_axis(ax.repelling, ax.attracting)
        angles.append((math.atan2(sn, cs), cs, sn))
    if len(pos) == 1:
        ang, cs, sn = angles[0]
        return [IntersectionPoint(ang, cs, sn, (length,))]
    # distance along b's axis between the cuff lift at crossing 1 and at crossing 2
    ax = GeodesicAxis.of(mats[0])
    u, v = ax.endpoints
    if math.isinf(u) or math.isinf(v):
        raise DegeneracyError("curve axis ends at infinity in the crossing chart")
    A = np.array([[1.0, -u], [1.0, -v]])  # u -> 0, v -> infinity
    W = rep.local_matrix(rotated[0][: pos[1] - pos[0]])
    h1 = _height_on_axis(A, 0.0, math.inf)
    h2 = _height_on_axis(A, mobius(W, 0.0), mobius(W, math.inf))
    l1 = abs(math.log(h2 / h1))
    sub = (l1, length - l1)
    return [IntersectionPoint(ang, cs, sn, sub) for ang, cs, sn in angles]


def ortho_arc_length(rep: Holonomy, arc: CurveClass) -> float:
    """Length of the orthogeodesic in the class of a boundary-to-boundary arc."""
    if arc.is_closed:
        raise ValidationError("ortho_arc_length needs an arc class")
    dec = rep.decomposition
    for s in (arc.start, arc.end):
        if dec.pants[s[0]][s[1]] != BOUNDARY:
            raise ValidationError(f"arc endpoint {s} is not a boundary slot")
    W = rep.local_matrix(arc.word)
    return axis_distance(mobius(W, 0.0), mobius(W, math.inf))
