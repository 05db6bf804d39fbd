"""Pants decompositions, Fenchel-Nielsen points and curve classes.

Curves are stored as words in a groupoid whose objects are *cuff frames*
``(pants, slot)``: a unit tangent frame sitting on cuff ``slot`` of ``pants``
at the foot of the seam coming from the previous slot, pointing along the cuff
with the pants on its left. Three kinds of letter move between frames:

``("c", P, j, n)``
    go ``n`` times around cuff ``j`` of pants ``P`` (frame (P, j) to itself);
``("w", P, j, k)``
    cross the front right-angled hexagon of ``P`` from frame (P, j) to (P, k);
``("x", g, s)``
    cross gluing ``g`` starting from its side ``s`` (0 or 1).

A closed curve is a composable cyclic word, an arc is a composable word from a
boundary frame to a boundary frame. Free reduction merges ``w`` chains, adds
``c`` exponents and cancels ``x`` back-and-forth; the canonical form is the
least rotation of the word or of its inverse.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import UnsupportedError, ValidationError

GLUED = "glued"
BOUNDARY = "boundary"
PUNCTURE = "puncture"
SLOT_KINDS = (GLUED, BOUNDARY, PUNCTURE)

Slot = tuple[int, int]
Letter = tuple


# ---------------------------------------------------------------------------
# Decompositions


@dataclass(frozen=True)
class Curve:
    """Decomposition curve: an interior gluing or a boundary slot."""

    index: int
    interior: bool
    gluing: int | None = None
    slot: Slot | None = None

    @property
    def frame(self) -> Slot:
        return self.slot


@dataclass(frozen=True)
class PantsDecomposition:
    pants: tuple[tuple[str, str, str], ...]
    gluings: tuple[tuple[Slot, Slot], ...]
    name: str = ""
    curves: tuple[Curve, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pants = tuple(tuple(str(k) for k in p) for p in self.pants)
        gluings = tuple((tuple(map(int, a)), tuple(map(int, b))) for a, b in self.gluings)
        object.__setattr__(self, "pants", pants)
        object.__setattr__(self, "gluings", gluings)
        self._validate()
        curves = [Curve(g, True, gluing=g, slot=a) for g, (a, _) in enumerate(gluings)]
        for slot in self.boundary_slots:
            curves.append(Curve(len(curves), False, slot=slot))
        object.__setattr__(self, "curves", tuple(curves))

    def _validate(self):
        if not self.pants:
            raise ValidationError("decomposition has no pants")
        for p, kinds in enumerate(self.pants):
            if len(kinds) != 3:
                raise ValidationError(f"pants {p} must have exactly 3 slots")
            for k in kinds:
                if k not in SLOT_KINDS:
                    raise ValidationError(f"pants {p}: unknown slot kind {k!r}")
        seen: dict[Slot, int] = {}
        for g, (a, b) in enumerate(self.gluings):
            if a == b:
                raise ValidationError(f"gluing {g} glues slot {a} to itself")
            for s in (a, b):
                p, j = s
                if not (0 <= p < len(self.pants) and 0 <= j < 3):
                    raise ValidationError(f"gluing {g} references missing slot {s}")
                if self.pants[p][j] != GLUED:
                    raise ValidationError(f"gluing {g} uses {self.pants[p][j]} slot {s}")
                if s in seen:
                    raise ValidationError(f"slot {s} glued twice (gluings {seen[s]} and {g})")
                seen[s] = g
        for p, kinds in enumerate(self.pants):
            for j, k in enumerate(kinds):
                if k == GLUED and (p, j) not in seen:
                    raise ValidationError(f"dangling glued slot {(p, j)}")
        # connectivity of the gluing graph
        parent = list(range(len(self.pants)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (p, _), (q, _) in self.gluings:
            parent[find(p)] = find(q)
        if len({find(p) for p in range(len(self.pants))}) != 1:
            raise ValidationError("gluing graph is disconnected")
        twice_genus = 2 - self.euler_characteristic - self.n_boundary - self.n_punctures
        if twice_genus < 0 or twice_genus % 2:
            raise ValidationError("inconsistent Euler characteristic")

    # -- topology -----------------------------------------------------------

    @property
    def euler_characteristic(self) -> int:
        return -len(self.pants)

    @property
    def boundary_slots(self) -> tuple[Slot, ...]:
        return tuple((p, j) for p, kinds in enumerate(self.pants)
                     for j, k in enumerate(kinds) if k == BOUNDARY)

    @property
    def puncture_slots(self) -> tuple[Slot, ...]:
        return tuple((p, j) for p, kinds in enumerate(self.pants)
                     for j, k in enumerate(kinds) if k == PUNCTURE)

    @property
    def n_boundary(self) -> int:
        return len(self.boundary_slots)

    @property
    def n_punctures(self) -> int:
        return len(self.puncture_slots)

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic - self.n_boundary - self.n_punctures) // 2

    @property
    def n_interior(self) -> int:
        return len(self.gluings)

    @property
    def n_curves(self) -> int:
        return len(self.curves)

    def is_interior(self, i: int) -> bool:
        return self.curve(i).interior

    def curve(self, i: int) -> Curve:
        if not 0 <= i < len(self.curves):
            raise ValidationError(f"curve index {i} out of range 0..{len(self.curves) - 1}")
        return self.curves[i]

    def curve_of_slot(self, slot: Slot) -> int:
        """Index of the decomposition curve carried by a cuff slot."""
        for g, (a, b) in enumerate(self.gluings):
            if slot in (a, b):
                return g
        for c in self.curves[self.n_interior:]:
            if c.slot == slot:
                return c.index
        raise ValidationError(f"slot {slot} carries no geodesic curve (puncture?)")

    def partner(self, g: int, side: int) -> Slot:
        return self.gluings[g][1 - side]

    def gluing_of_slot(self, slot: Slot) -> tuple[int, int] | None:
        for g, (a, b) in enumerate(self.gluings):
            if slot == a:
                return g, 0
            if slot == b:
                return g, 1
        return None


def build_decomposition(spec) -> PantsDecomposition:
    """Build a decomposition from a preset name or a ``{"pants", "gluings"}`` mapping."""
    if isinstance(spec, PantsDecomposition):
        return spec
    if isinstance(spec, str):
        return preset(spec)
    try:
        pants = spec["pants"]
        gluings = spec.get("gluings", [])
    except (TypeError, KeyError) as exc:
        raise ValidationError(f"decomposition spec needs 'pants' and 'gluings': {exc}") from None
    try:
        gl = tuple((tuple(a), tuple(b)) for a, b in gluings)
    except (TypeError, ValueError):
        raise ValidationError("each gluing must be a pair of [pants, slot] pairs") from None
    return PantsDecomposition(tuple(tuple(p) for p in pants), gl, name=spec.get("name", ""))


def ladder(k: int) -> PantsDecomposition:
    """Chain of 2k pants truncating the infinite ladder surface.

    Pants A_m = 2m and B_m = 2m+1 are glued along slots 0 and 1 (two rungs),
    B_m slot 2 to A_{m+1} slot 2; the two ends are boundary curves.
    """
    if k < 1:
        raise ValidationError("ladder needs k >= 1")
    pants, gluings = [], []
    for m in range(k):
        a, b = 2 * m, 2 * m + 1
        pants += [[GLUED, GLUED, GLUED], [GLUED, GLUED, GLUED]]
        gluings += [((a, 0), (b, 0)), ((a, 1), (b, 1))]
        if m > 0:
            gluings.append(((a - 1, 2), (a, 2)))
    pants[0][2] = BOUNDARY
    pants[-1][2] = BOUNDARY
    return PantsDecomposition(tuple(map(tuple, pants)), tuple(gluings), name=f"ladder-{k}")


_PRESETS: dict[str, Callable[[], PantsDecomposition]] = {
    "pants": lambda: PantsDecomposition(((BOUNDARY,) * 3,), (), name="pants"),
    "one-holed-torus": lambda: PantsDecomposition(
        ((GLUED, GLUED, BOUNDARY),), (((0, 0), (0, 1)),), name="one-holed-torus"),
    "four-holed-sphere": lambda: PantsDecomposition(
        ((BOUNDARY, BOUNDARY, GLUED), (BOUNDARY, BOUNDARY, GLUED)),
        (((0, 2), (1, 2)),), name="four-holed-sphere"),
    # two one-holed tori joined along a separating curve
    "genus-2": lambda: PantsDecomposition(
        ((GLUED,) * 3, (GLUED,) * 3),
        (((0, 0), (0, 1)), ((0, 2), (1, 2)), ((1, 0), (1, 1))), name="genus-2"),
    "genus-2-theta": lambda: PantsDecomposition(
        ((GLUED,) * 3, (GLUED,) * 3),
        (((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 2), (1, 2))), name="genus-2-theta"),
}

PRESET_NAMES = tuple(_PRESETS) + ("ladder-<k>",)


def preset(name: str) -> PantsDecomposition:
    if name in _PRESETS:
        return _PRESETS[name]()
    if name.startswith("ladder-"):
        try:
            k = int(name.split("-", 1)[1])
        except ValueError:
            raise ValidationError(f"bad ladder preset {name!r}") from None
        return ladder(k)
    raise ValidationError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")


def double_surface(decomp: PantsDecomposition) -> PantsDecomposition:
    """Glue two copies of the surface along corresponding boundary curves."""
    bslots = decomp.boundary_slots
    if not bslots:
        raise ValidationError("surface has no boundary to double along")
    n = len(decomp.pants)
    pants = [tuple(GLUED if k == BOUNDARY else k for k in p) for p in decomp.pants]
    gluings = list(decomp.gluings)
    gluings += [((a[0] + n, a[1]), (b[0] + n, b[1])) for a, b in decomp.gluings]
    gluings += [((p, j), (p + n, j)) for p, j in bslots]
    name = f"double({decomp.name})" if decomp.name else "double"
    return PantsDecomposition(tuple(pants + pants), tuple(gluings), name=name)


# ---------------------------------------------------------------------------
# Coordinates


@dataclass(frozen=True)
class FNPoint:
    """Fenchel-Nielsen coordinates: lengths per curve, twist angles per interior curve."""

    decomposition: PantsDecomposition
    lengths: tuple[float, ...]
    twists: tuple[float, ...]

    def twist_length(self, i: int) -> float:
        """Twist of interior curve i in length units, l * theta / (2 pi)."""
        return self.lengths[i] * self.twists[i] / (2.0 * math.pi)

    def slot_length(self, slot: Slot) -> float:
        return self.lengths[self.decomposition.curve_of_slot(slot)]

    def replace(self, lengths=None, twists=None) -> "FNPoint":
        return make_fn_point(self.decomposition,
                             self.lengths if lengths is None else lengths,
                             self.twists if twists is None else twists)


def make_fn_point(decomp: PantsDecomposition, lengths: Sequence[float],
                  twists: Sequence[float] | None = None) -> FNPoint:
    lengths = tuple(float(x) for x in lengths)
    twists = tuple(float(x) for x in (twists if twists is not None else [0.0] * decomp.n_interior))
    if len(lengths) != decomp.n_curves:
        raise ValidationError(f"expected {decomp.n_curves} lengths, got {len(lengths)}")
    if len(twists) > decomp.n_interior:
        raise ValidationError("twist supplied for a boundary curve "
                              f"({len(twists)} twists, {decomp.n_interior} interior curves)")
    if len(twists) < decomp.n_interior:
        raise ValidationError(f"expected {decomp.n_interior} twists, got {len(twists)}")
    for i, l in enumerate(lengths):
        if not (math.isfinite(l) and l > 0):
            raise ValidationError(f"length of curve {i} must be positive and finite, got {l!r}")
    for i, t in enumerate(twists):
        if not math.isfinite(t):
            raise ValidationError(f"twist of curve {i} must be finite, got {t!r}")
    return FNPoint(decomp, lengths, twists)


# ---------------------------------------------------------------------------
# Boundedness


class Boundedness(str, enum.Enum):
    SHIGA = "shiga"
    UPPER_BOUNDED_ONLY = "upper-bounded-only"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class ShigaBounds:
    delta: float
    M: float

    def __post_init__(self):
        if not (0 < self.delta <= self.M and math.isfinite(self.M)):
            raise ValidationError(f"need 0 < delta <= M, got delta={self.delta}, M={self.M}")


@dataclass(frozen=True)
class RuleFamily:
    """Length family given by a rule k -> l_k with closed-form inf and sup."""

    rule: Callable[[int], float] | None = None
    inf: float | None = None
    sup: float | None = None

    @classmethod
    def geometric(cls, ratio: float = 0.5, start: int = 1) -> "RuleFamily":
        """l_k = ratio**k for k >= start, 0 < ratio < 1."""
        return cls(lambda k: ratio ** k, inf=0.0, sup=ratio ** start)


def boundedness_check(lengths, bounds: ShigaBounds) -> Boundedness:
    if isinstance(lengths, RuleFamily):
        if lengths.inf is None or lengths.sup is None:
            raise ValidationError("rule family has no computable inf/sup")
        lo, hi = lengths.inf, lengths.sup
    else:
        vals = [float(x) for x in lengths]
        if not vals:
            raise ValidationError("empty length family")
        lo, hi = min(vals), max(vals)
    if hi <= bounds.M:
        return Boundedness.SHIGA if bounds.delta <= lo else Boundedness.UPPER_BOUNDED_ONLY
    return Boundedness.UNBOUNDED


# ---------------------------------------------------------------------------
# Words


def letter_source(decomp: PantsDecomposition, a: Letter) -> Slot:
    if a[0] in ("c", "w"):
        return (a[1], a[2])
    return decomp.gluings[a[1]][a[2]]


def letter_target(decomp: PantsDecomposition, a: Letter) -> Slot:
    if a[0] == "c":
        return (a[1], a[2])
    if a[0] == "w":
        return (a[1], a[3])
    return decomp.gluings[a[1]][1 - a[2]]


def invert_letter(a: Letter) -> Letter:
    if a[0] == "c":
        return ("c", a[1], a[2], -a[3])
    if a[0] == "w":
        return ("w", a[1], a[3], a[2])
    return ("x", a[1], 1 - a[2])


def invert_word(word: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple(invert_letter(a) for a in reversed(word))


_EMPTY = ()


def _combine(a: Letter, b: Letter):
    """Merge two adjacent letters: a letter, the empty tuple, or None if they don't merge."""
    if a[0] == "c" and b[0] == "c" and a[1:3] == b[1:3]:
        n = a[3] + b[3]
        return ("c", a[1], a[2], n) if n else _EMPTY
    if a[0] == "w" and b[0] == "w" and a[1] == b[1] and a[3] == b[2]:
        return ("w", a[1], a[2], b[3]) if a[2] != b[3] else _EMPTY
    if a[0] == "x" and b[0] == "x" and a[1] == b[1] and a[2] != b[2]:
        return _EMPTY
    return None


def reduce_word(word: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for a in word:
        if a[0] == "c" and a[3] == 0:
            continue
        while stack:
            r = _combine(stack[-1], a)
            if r is None:
                break
            stack.pop()
            if r is _EMPTY:
                a = None
                break
            a = r
        if a is not None:
            stack.append(a)
    return tuple(stack)


def cyclic_reduce(word: Iterable[Letter]) -> tuple[Letter, ...]:
    w = reduce_word(word)
    while len(w) > 1:
        r = _combine(w[-1], w[0])
        if r is None:
            break
        w = reduce_word(((r,) if r is not _EMPTY else ()) + w[1:-1])
    return w


def _slide_cuffs(decomp: PantsDecomposition, word: tuple[Letter, ...], closed: bool):
    """Move one cuff power that follows a crossing to before it; None if there is none.

    Both sides of a gluing carry the same curve with opposite orientations, so
    ``x(g,s) c(Q,k,n) = c(P,j,-n) x(g,s)``. Keeping cuff powers on the source
    side makes the normal form unique within twist orbits.
    """
    n = len(word)
    stop = n if closed else n - 1
    for i in range(stop):
        a, b = word[i], word[(i + 1) % n]
        if a[0] == "x" and b[0] == "c" and n > 1:
            p, j = decomp.gluings[a[1]][a[2]]
            moved = ("c", p, j, -b[3])
            if closed and i == n - 1:
                return (a,) + word[1:n - 1] + (moved,) if n > 2 else (moved, a)
            return word[:i] + (moved, a) + word[i + 2:]
    return None


def normalize_word(decomp: PantsDecomposition, word: Iterable[Letter], closed: bool):
    """Free (cyclic if closed) reduction with cuff powers slid before crossings."""
    red = cyclic_reduce if closed else reduce_word
    w = red(word)
    for _ in range(4 * len(w) * len(w) + 8):
        nxt = _slide_cuffs(decomp, w, closed)
        if nxt is None:
            break
        w = red(nxt)
    if closed and len(w) == 1 and w[0][0] == "c":
        gs = decomp.gluing_of_slot((w[0][1], w[0][2]))
        if gs is not None and gs[1] == 1:
            p, j = decomp.gluings[gs[0]][0]
            w = (("c", p, j, -w[0][3]),)
    return w


def check_composable(decomp: PantsDecomposition, word: Sequence[Letter], closed: bool):
    for a in word:
        _check_letter(decomp, a)
    for a, b in zip(word, word[1:]):
        if letter_target(decomp, a) != letter_source(decomp, b):
            raise ValidationError(f"letters {a} and {b} do not compose")
    if closed and word and letter_target(decomp, word[-1]) != letter_source(decomp, word[0]):
        raise ValidationError("closed word does not return to its starting frame")


def _check_letter(decomp: PantsDecomposition, a: Letter):
    n = len(decomp.pants)
    if a[0] == "c" and len(a) == 4 and 0 <= a[1] < n and 0 <= a[2] < 3:
        if decomp.pants[a[1]][a[2]] == PUNCTURE:
            raise UnsupportedError("words around punctures are not hyperbolic")
        return
    if a[0] == "w" and len(a) == 4 and 0 <= a[1] < n and 0 <= a[2] < 3 and 0 <= a[3] < 3 \
            and a[2] != a[3]:
        return
    if a[0] == "x" and len(a) == 3 and 0 <= a[1] < decomp.n_interior and a[2] in (0, 1):
        return
    raise ValidationError(f"malformed letter {a!r}")


def _canonical_closed(word: tuple[Letter, ...]) -> tuple[Letter, ...]:
    best = None
    for w in (word, invert_word(word)):
        for i in range(len(w)):
            r = w[i:] + w[:i]
            if best is None or r < best:
                best = r
    return best


@dataclass(frozen=True)
class CurveClass:
    """Free homotopy class of a closed curve, or homotopy class of an arc rel boundary.

    Build through :func:`closed_curve` / :func:`arc_class` so the word is stored
    in canonical form; equality is then word equality.
    """

    kind: str
    word: tuple[Letter, ...]
    start: Slot | None = None
    end: Slot | None = None

    @property
    def is_closed(self) -> bool:
        return self.kind == "closed"

    def crossings(self, g: int) -> int:
        """Number of crossings of gluing g; the geometric intersection number for
        decomposition curves, duals and their twist orbits."""
        return sum(1 for a in self.word if a[0] == "x" and a[1] == g)

    def __str__(self):
        return " ".join(_fmt_letter(a) for a in self.word) or "<empty>"


def _fmt_letter(a: Letter) -> str:
    if a[0] == "c":
        return f"c{a[1]}.{a[2]}^{a[3]}"
    if a[0] == "w":
        return f"w{a[1]}:{a[2]}>{a[3]}"
    return f"x{a[1]}/{a[2]}"


def closed_curve(decomp: PantsDecomposition, word: Sequence[Letter]) -> CurveClass:
    word = tuple(tuple(a) for a in word)
    check_composable(decomp, word, closed=True)
    red = normalize_word(decomp, word, closed=True)
    if not red:
        raise ValidationError("word reduces to the trivial curve")
    return CurveClass("closed", _canonical_closed(red))


def arc_class(decomp: PantsDecomposition, start: Slot, word: Sequence[Letter], end: Slot) -> CurveClass:
    word = tuple(tuple(a) for a in word)
    bset = set(decomp.boundary_slots)
    if start not in bset or end not in bset:
        raise ValidationError("arc endpoints must lie on boundary slots")
    check_composable(decomp, word, closed=False)
    if word and (letter_source(decomp, word[0]) != start or letter_target(decomp, word[-1]) != end):
        raise ValidationError("arc word does not run from start to end frame")
    if not word and start != end:
        raise ValidationError("empty arc word needs start == end")
    red = list(normalize_word(decomp, word, closed=False))
    # endpoints slide freely along the boundary
    while red and red[0][0] == "c":
        red.pop(0)
    while red and red[-1][0] == "c":
        red.pop()
    red = tuple(red)
    if not red:
        raise ValidationError("arc is inessential (homotopic into the boundary)")
    inv = invert_word(red)
    if (inv, end) < (red, start):
        red, start, end = inv, end, start
    return CurveClass("arc", red, start, end)


def decomposition_curve(decomp: PantsDecomposition, i: int) -> CurveClass:
    c = decomp.curve(i)
    p, j = c.slot
    return CurveClass("closed", _canonical_closed((("c", p, j, 1),)))


def dual_route(decomp: PantsDecomposition, g: int) -> tuple[int, int]:
    """Slots the dual of interior curve g turns toward on each side of the gluing.

    Self-glued (handle) case: each side points at the partner slot. Otherwise
    the dual goes around the least other slot of each pants.
    """
    (p, j), (q, k) = decomp.gluings[g]
    if p == q:
        return k, j
    return min(m for m in range(3) if m != j), min(m for m in range(3) if m != k)


def dual_curve(decomp: PantsDecomposition, i: int) -> CurveClass:
    """Closed curve meeting curve i once (handle) or twice and missing the others."""
    c = decomp.curve(i)
    if not c.interior:
        raise ValidationError(f"curve {i} is a boundary curve; it has no dual")
    g = c.gluing
    (p, j), (q, k) = decomp.gluings[g]
    mp, mq = dual_route(decomp, g)
    if p == q:
        word = [("x", g, 0), ("w", p, k, j)]
    else:
        word = [("x", g, 0), ("w", q, k, mq), ("c", q, mq, 1), ("w", q, mq, k),
                ("x", g, 1), ("w", p, j, mp), ("c", p, mp, 1), ("w", p, mp, j)]
    return closed_curve(decomp, word)


def dehn_twist_class(decomp: PantsDecomposition, c: CurveClass, about: int, n: int) -> CurveClass:
    """Image of c under the n-th power of the positive Dehn twist about curve ``about``.

    Positive is the direction of increasing Fenchel-Nielsen twist: the length of
    the image at twist tau equals the length of c at twist tau + n * l.
    """
    if not c.is_closed:
        raise UnsupportedError("Dehn twists act on closed classes only")
    curve = decomp.curve(about)
    if n == 0 or not curve.interior or c.crossings(curve.gluing) == 0:
        return c
    out = []
    for a in c.word:
        if a[0] == "x" and a[1] == curve.gluing:
            p, j = decomp.gluings[a[1]][a[2]]
            out.append(("c", p, j, -n))
        out.append(a)
    return closed_curve(decomp, out)


def intersection_number(c: CurveClass, decomp: PantsDecomposition, i: int) -> int:
    curve = decomp.curve(i)
    return c.crossings(curve.gluing) if curve.interior else 0


def enumerate_curves(decomp: PantsDecomposition, K: int) -> tuple[CurveClass, ...]:
    """Seeds (decomposition curves and their duals) closed under up to K twists."""
    if K < 0:
        raise ValidationError("budget K must be >= 0")
    seeds = [decomposition_curve(decomp, i) for i in range(decomp.n_curves)]
    seeds += [dual_curve(decomp, i) for i in range(decomp.n_interior)]
    found = dict.fromkeys(seeds)
    frontier = deque((s, 0) for s in found)
    while frontier:
        c, depth = frontier.popleft()
        if depth == K:
            continue
        for i in range(decomp.n_interior):
            if c.crossings(i) == 0:
                continue
            for n in (1, -1):
                d = dehn_twist_class(decomp, c, i, n)
                if d not in found:
                    found[d] = None
                    frontier.append((d, depth + 1))
    return tuple(sorted(found, key=lambda c: c.word))


def enumerate_arcs(decomp: PantsDecomposition, K: int) -> tuple[CurveClass, ...]:
    """Essential simple arcs: seams, arcs around a cuff, and arcs crossing one
    gluing with up to K twists inserted at the crossing."""
    if K < 0:
        raise ValidationError("budget K must be >= 0")
    bslots = decomp.boundary_slots
    found: dict[CurveClass, None] = {}

    def add(start, word, end):
        try:
            found[arc_class(decomp, start, word, end)] = None
        except ValidationError:
            pass

    for (p, j) in bslots:
        for (q, k) in bslots:
            if q == p and k > j:
                add((p, j), [("w", p, j, k)], (p, k))
        m = min(s for s in range(3) if s != j)
        add((p, j), [("w", p, j, m), ("c", p, m, 1), ("w", p, m, j)], (p, j))
        for m in range(3):
            if m == j:
                continue
            gs = decomp.gluing_of_slot((p, m))
            if gs is None:
                continue
            g, side = gs
            q, mq = decomp.partner(g, side)
            for (r, k) in bslots:
                if r != q:
                    continue
                for n in range(-K, K + 1):
                    add((p, j), [("w", p, j, m), ("c", p, m, n), ("x", g, side), ("w", q, mq, k)], (q, k))
    return tuple(sorted(found, key=lambda c: (c.word, c.start, c.end)))
