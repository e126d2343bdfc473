"""Affine Weyl group acting on h by exact integer affine maps.

Points of h are written in simple-coroot coordinates ``c`` (``x = sum c_j
alpha_j^vee``), so ``alpha_i(x) = (A^T c)_i`` and the coroot lattice is Z^l.
An element ``w`` is stored as the affine map ``x -> M x + t`` of ``w`` together
with the map of ``w^-1`` and one reduced word with ``w = s_word[0] s_word[1] ...``.

Affine roots are pairs ``(alpha, k)`` standing for ``alpha + k delta``; they
act on h as ``x -> alpha(x) + k``. Affine weights are triples (finite part,
level, delta coefficient).
"""

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import floor, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from cdsw_shared.errors import CheckFailure, InternalError, UsageError
from cdsw_shared.observability import ObservabilityContext, log_event
from cdsw_shared.rational import format_rational

from .cartan import Root, RootSystem
from .linalg import determinant, inverse

Matrix = Tuple[Tuple[int, ...], ...]
Vector = Tuple[int, ...]
AffineRoot = Tuple[Root, int]
Word = Tuple[int, ...]


# affine maps ---------------------------------------------------------------------


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _compose(
    first: Tuple[Matrix, Vector], second: Tuple[Matrix, Vector]
) -> Tuple[Matrix, Vector]:
    """The map ``first o second``."""
    m1, t1 = first
    m2, t2 = second
    n = len(m1)
    matrix = tuple(
        tuple(sum(m1[i][k] * m2[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )
    translation = tuple(sum(m1[i][k] * t2[k] for k in range(n)) + t1[i] for i in range(n))
    return matrix, translation


def _apply(affine: Tuple[Matrix, Vector], point: Sequence) -> Tuple[Fraction, ...]:
    matrix, translation = affine
    n = len(matrix)
    return tuple(
        sum((matrix[i][k] * Fraction(point[k]) for k in range(n)), Fraction(0)) + translation[i]
        for i in range(n)
    )


@lru_cache(maxsize=None)
def simple_reflections(rs: RootSystem) -> Tuple[Tuple[Matrix, Vector], ...]:
    """Affine maps of s_0, s_1, ..., s_l on h (index 0 is the affine reflection)."""
    n = rs.rank
    a = rs.cartan
    maps: List[Tuple[Matrix, Vector]] = []

    # s_0(x) = x - (theta(x) - 1) theta^vee
    theta_row = [sum(a[j][i] * rs.highest_root[i] for i in range(n)) for j in range(n)]
    comarks = rs.comarks
    m0 = tuple(
        tuple((1 if i == j else 0) - comarks[i] * theta_row[j] for j in range(n)) for i in range(n)
    )
    maps.append((m0, tuple(comarks)))

    # s_i(x) = x - alpha_i(x) alpha_i^vee
    for i in range(n):
        mi = tuple(
            tuple((1 if r == j else 0) - (a[j][i] if r == i else 0) for j in range(n))
            for r in range(n)
        )
        maps.append((mi, tuple(0 for _ in range(n))))
    return tuple(maps)


@lru_cache(maxsize=None)
def _root_row(rs: RootSystem, root: Root) -> Vector:
    """alpha as an integer functional on coroot coordinates, i.e. A^T applied to alpha."""
    n = rs.rank
    a = rs.cartan
    return tuple(sum(root[i] * a[j][i] for i in range(n)) for j in range(n))


def _dot(row: Sequence[int], point: Sequence[int]) -> int:
    return sum(c * p for c, p in zip(row, point))


def root_value(rs: RootSystem, root: Sequence[int], point: Sequence) -> Fraction:
    """alpha(x) for a root in simple-root coordinates and x in coroot coordinates."""
    row = _root_row(rs, tuple(root))
    return sum((c * Fraction(p) for c, p in zip(row, point) if c), Fraction(0))


@lru_cache(maxsize=None)
def fundamental_coweights(rs: RootSystem) -> Tuple[Tuple[Fraction, ...], ...]:
    """varpi_i^vee in coroot coordinates, i.e. the columns of (A^T)^-1."""
    inv = inverse([[rs.cartan[j][i] for j in range(rs.rank)] for i in range(rs.rank)])
    return tuple(tuple(inv[r][i] for r in range(rs.rank)) for i in range(rs.rank))


@lru_cache(maxsize=None)
def alcove_vertices(rs: RootSystem) -> Tuple[Tuple[Fraction, ...], ...]:
    """Vertices 0 and varpi_i^vee / a_i of the fundamental alcove C."""
    zero = tuple(Fraction(0) for _ in range(rs.rank))
    return (zero,) + tuple(
        tuple(c / mark for c in coweight)
        for coweight, mark in zip(fundamental_coweights(rs), rs.marks)
    )


@lru_cache(maxsize=None)
def _scaled_alcove(rs: RootSystem) -> Tuple[int, Tuple[Vector, ...]]:
    """Common denominator D of the vertices of C, and the vertices times D."""
    vertices = alcove_vertices(rs)
    denom = lcm(*(c.denominator for vertex in vertices for c in vertex))
    return denom, tuple(tuple(int(c * denom) for c in vertex) for vertex in vertices)


@lru_cache(maxsize=None)
def _wall_rows(rs: RootSystem) -> Tuple[Tuple[Vector, ...], Vector]:
    """Integer rows of alpha_1, ..., alpha_l and theta."""
    simple = tuple(_root_row(rs, tuple(rs.simple_root(i))) for i in range(rs.rank))
    return simple, _root_row(rs, tuple(rs.highest_root))


def _scaled_image(affine: Tuple[Matrix, Vector], vertex: Vector, denom: int) -> Vector:
    """D f(x) for an integer affine map f and a vertex given as D x."""
    matrix, translation = affine
    return tuple(_dot(row, vertex) + denom * t for row, t in zip(matrix, translation))


def _vertex_position(rs: RootSystem, image: Vector) -> Tuple[bool, bool]:
    """(dominant, theta <= 2) for a point given as D x."""
    simple, theta = _wall_rows(rs)
    denom, _ = _scaled_alcove(rs)
    dominant = all(_dot(row, image) >= 0 for row in simple)
    return dominant, _dot(theta, image) <= 2 * denom


def alcove_barycenter(rs: RootSystem) -> Tuple[Fraction, ...]:
    """Barycenter of C; no affine root hyperplane passes through it."""
    vertices = alcove_vertices(rs)
    count = len(vertices)
    return tuple(sum(v[i] for v in vertices) / count for i in range(rs.rank))


# elements ------------------------------------------------------------------------


@dataclass(frozen=True)
class AlcovePosition:
    """Where w^-1 C lies: in the dominant chamber, and in 2C."""

    dominant: bool
    in_double: bool


@dataclass(frozen=True)
class AffWeylElt:
    """An affine Weyl group element with its affine maps and a reduced word."""

    rs: RootSystem
    matrix: Matrix
    translation: Vector
    inverse_matrix: Matrix
    inverse_translation: Vector
    length: int
    word: Word

    @property
    def key(self) -> Tuple[Matrix, Vector]:
        """Identity of the element as an affine map."""
        return self.matrix, self.translation

    @property
    def affine(self) -> Tuple[Matrix, Vector]:
        """The map x -> M x + t of w."""
        return self.matrix, self.translation

    @property
    def inverse_affine(self) -> Tuple[Matrix, Vector]:
        """The map of w^-1."""
        return self.inverse_matrix, self.inverse_translation

    def apply(self, point: Sequence) -> Tuple[Fraction, ...]:
        """w(x) for x in coroot coordinates."""
        return _apply(self.affine, point)

    def apply_inverse(self, point: Sequence) -> Tuple[Fraction, ...]:
        """w^-1(x)."""
        return _apply(self.inverse_affine, point)

    @cached_property
    def scaled_vertex_images(self) -> Tuple[Vector, ...]:
        """Vertices of w^-1 C times the common denominator of the vertices of C."""
        denom, vertices = _scaled_alcove(self.rs)
        return tuple(_scaled_image(self.inverse_affine, v, denom) for v in vertices)

    def word_text(self) -> str:
        """Reduced word printed as ``[0,2,1]``."""
        return "[" + ",".join(str(i) for i in self.word) + "]"

    def __repr__(self) -> str:
        return f"AffWeylElt({self.rs.name}, {self.word_text()})"

    def times(self, i: int) -> "AffWeylElt":
        """w s_i (the length is recomputed, the word is only appended)."""
        s = simple_reflections(self.rs)[i]
        matrix, translation = _compose(self.affine, s)
        inv_matrix, inv_translation = _compose(s, self.inverse_affine)
        return _make(self.rs, matrix, translation, inv_matrix, inv_translation, self.word + (i,))


def _make(
    rs: RootSystem,
    matrix: Matrix,
    translation: Vector,
    inv_matrix: Matrix,
    inv_translation: Vector,
    word: Word,
    length: Optional[int] = None,
) -> AffWeylElt:
    if length is None:
        length = separating_hyperplanes((matrix, translation), rs)
    return AffWeylElt(
        rs=rs,
        matrix=matrix,
        translation=translation,
        inverse_matrix=inv_matrix,
        inverse_translation=inv_translation,
        length=length,
        word=word,
    )


def identity(rs: RootSystem) -> AffWeylElt:
    """The identity element."""
    n = rs.rank
    zero = tuple(0 for _ in range(n))
    return _make(rs, _identity(n), zero, _identity(n), zero, (), length=0)


def parse_word(rs: RootSystem, word: Sequence[int]) -> Word:
    """
    Validate a word over {0, ..., l}.

    Raises:
        UsageError: If a letter is out of range
    """
    letters = tuple(int(i) for i in word)
    for i in letters:
        if not 0 <= i <= rs.rank:
            raise UsageError(f"letter {i} is not a simple reflection of {rs.name} (0..{rs.rank})")
    return letters


def from_word(rs: RootSystem, word: Sequence[int]) -> AffWeylElt:
    """
    The element s_word[0] s_word[1] ... .

    The length is the separating-hyperplane count, so a non-reduced word gives
    an element whose length is shorter than the word.
    """
    letters = parse_word(rs, word)
    reflections = simple_reflections(rs)
    n = rs.rank
    zero = tuple(0 for _ in range(n))
    forward = (_identity(n), zero)
    backward = (_identity(n), zero)
    for i in letters:
        forward = _compose(forward, reflections[i])
        backward = _compose(reflections[i], backward)
    return _make(rs, forward[0], forward[1], backward[0], backward[1], letters)


def separating_hyperplanes(affine: Tuple[Matrix, Vector], rs: RootSystem) -> int:
    """Number of affine root hyperplanes separating C from its image under ``affine``."""
    image = _apply(affine, alcove_barycenter(rs))
    return sum(abs(floor(root_value(rs, root, image))) for root in rs.positive_roots)


def alcove_position(w: AffWeylElt) -> AlcovePosition:
    """
    Locate the closed alcove w^-1 C by testing the images of its vertices.

    Boundary points count as inside.
    """
    dominant = True
    in_double = True
    for image in w.scaled_vertex_images:
        vertex_dominant, below_wall = _vertex_position(w.rs, image)
        dominant = dominant and vertex_dominant
        in_double = in_double and vertex_dominant and below_wall
    return AlcovePosition(dominant=dominant, in_double=in_double)


def enumerate_aff2(rs: RootSystem) -> List[AffWeylElt]:
    """
    All w with w^-1 C inside 2C, by breadth-first search over alcoves.

    The walk runs over v = w^-1 by right multiplication v -> v s_i, which moves
    the alcove v C across the wall opposite its vertex v(x_i) and keeps every
    other vertex. Only that vertex is tested against the walls of 2C, in
    integer coordinates scaled by the common denominator of the vertices of C.
    The reduced word of w is the reversed path.

    Returns:
        The elements sorted by (length, word)
    """
    context = {"type": rs.type_letter, "rank": rs.rank}
    reflections = simple_reflections(rs)
    denom, vertices = _scaled_alcove(rs)
    n = rs.rank
    zero = tuple(0 for _ in range(n))
    start = (_identity(n), zero)

    with ObservabilityContext("enumerate_aff2", context) as obs:
        # v-map -> (w-map, path, depth)
        seen: Dict[Tuple[Matrix, Vector], Tuple[Tuple[Matrix, Vector], Word, int]] = {
            start: (start, (), 0)
        }
        queue = deque([start])
        while queue:
            v = queue.popleft()
            w, path, depth = seen[v]
            for i, s in enumerate(reflections):
                nv = _compose(v, s)
                if nv in seen:
                    continue
                dominant, below_wall = _vertex_position(rs, _scaled_image(nv, vertices[i], denom))
                if not (dominant and below_wall):
                    continue
                seen[nv] = (_compose(s, w), path + (i,), depth + 1)
                queue.append(nv)

        elements = [
            _make(rs, w[0], w[1], v[0], v[1], tuple(reversed(path)), length=depth)
            for v, (w, path, depth) in seen.items()
        ]
    elements.sort(key=lambda e: (e.length, e.word))
    log_event(
        "aff2_enumerated",
        {**context, "count": len(elements), "duration_ms": obs.duration_ms},
    )
    return elements


# affine roots --------------------------------------------------------------------


def reflect_affine_root(rs: RootSystem, i: int, beta: AffineRoot) -> AffineRoot:
    """s_i applied to the affine root alpha + k delta."""
    alpha, k = beta
    if i == 0:
        theta = rs.highest_root
        c = rs.coroot_pairing(alpha, theta)
        if c.denominator != 1:
            raise InternalError(f"non-integral pairing <{alpha}, theta^vee> = {c}")
        c = int(c)
        return tuple(a - c * t for a, t in zip(alpha, theta)), k + c
    reflected = rs.reflect(i - 1, alpha)
    return tuple(int(a) for a in reflected), k


def is_positive_affine_root(beta: AffineRoot) -> bool:
    """k > 0, or k = 0 and alpha > 0."""
    alpha, k = beta
    if k > 0:
        return True
    if k < 0:
        return False
    return any(alpha) and all(a >= 0 for a in alpha)


def inversion_set(w: AffWeylElt) -> List[AffineRoot]:
    """
    Positive affine roots beta with w(beta) negative.

    For a reduced word s_i1 ... s_ik these are alpha_ik, s_ik alpha_ik-1, ...,
    s_ik ... s_i2 alpha_i1.

    Raises:
        InternalError: If the word of ``w`` is not reduced
    """
    rs = w.rs
    word = w.word
    found: List[AffineRoot] = []
    for position in range(len(word) - 1, -1, -1):
        beta = _simple_affine_root(rs, word[position])
        for j in range(position + 1, len(word)):
            beta = reflect_affine_root(rs, word[j], beta)
        if not is_positive_affine_root(beta) or beta in found:
            raise InternalError(f"word {list(word)} of {rs.name} is not reduced")
        found.append(beta)
    return found


def _simple_affine_root(rs: RootSystem, i: int) -> AffineRoot:
    if i == 0:
        return tuple(-t for t in rs.highest_root), 1
    return rs.simple_root(i - 1), 0


# affine weights ------------------------------------------------------------------


@dataclass(frozen=True)
class AffineWeight:
    """lambda + k Lambda_0 + m delta, with lambda in simple-root coordinates."""

    finite: Tuple[Fraction, ...]
    level: Fraction
    delta: Fraction

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(
            finite=tuple(a + b for a, b in zip(self.finite, other.finite)),
            level=self.level + other.level,
            delta=self.delta + other.delta,
        )

    def __neg__(self) -> "AffineWeight":
        return AffineWeight(tuple(-a for a in self.finite), -self.level, -self.delta)

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return self + (-other)

    def at_d(self) -> Fraction:
        """Evaluation at d, the delta coefficient."""
        return self.delta

    def at_center(self) -> Fraction:
        """Evaluation at the canonical central element, the level."""
        return self.level

    def fundamental_coordinates(self, rs: RootSystem) -> Tuple[Fraction, ...]:
        """Finite part in the fundamental weight basis."""
        return rs.dynkin_labels(self.finite)

    def coroot_value(self, rs: RootSystem, i: int) -> Fraction:
        """lambda(alpha_i^vee) for i in 0..l."""
        if i == 0:
            return self.level - rs.coroot_pairing(self.finite, rs.highest_root)
        return rs.pairing(self.finite, i - 1)

    def to_json(self) -> dict:
        """Rationals as 'p/q'."""
        return {
            "finite": [format_rational(c) for c in self.finite],
            "level": format_rational(self.level),
            "delta": format_rational(self.delta),
        }


def affine_weight(finite: Sequence, level=0, delta=0) -> AffineWeight:
    """Build an AffineWeight from any exact rationals."""
    return AffineWeight(
        finite=tuple(Fraction(c) for c in finite), level=Fraction(level), delta=Fraction(delta)
    )


def simple_affine_root_weight(rs: RootSystem, i: int) -> AffineWeight:
    """alpha_i as an affine weight; alpha_0 = delta - theta."""
    alpha, k = _simple_affine_root(rs, i)
    return affine_weight(alpha, 0, k)


def rho_hat(rs: RootSystem, delta=0) -> AffineWeight:
    """rho + h Lambda_0 + delta * delta, which takes the value 1 on every simple coroot."""
    return affine_weight(rs.rho, rs.dual_coxeter_number, delta)


def reflect_weight(rs: RootSystem, i: int, weight: AffineWeight) -> AffineWeight:
    """s_i(lambda) = lambda - lambda(alpha_i^vee) alpha_i."""
    value = weight.coroot_value(rs, i)
    root = simple_affine_root_weight(rs, i)
    return AffineWeight(
        finite=tuple(a - value * b for a, b in zip(weight.finite, root.finite)),
        level=weight.level,
        delta=weight.delta - value * root.delta,
    )


def weight_action(w: AffWeylElt, weight: AffineWeight) -> AffineWeight:
    """w(lambda) for w = s_word[0] ... s_word[-1]."""
    for i in reversed(w.word):
        weight = reflect_weight(w.rs, i, weight)
    return weight


def inverse_weight_action(w: AffWeylElt, weight: AffineWeight) -> AffineWeight:
    """w^-1(lambda)."""
    for i in w.word:
        weight = reflect_weight(w.rs, i, weight)
    return weight


def d_degree(u: AffWeylElt, v: AffWeylElt, w: AffWeylElt, rho_shift: int = 0) -> int:
    """
    (u^-1 rho + v^-1 rho - w^-1 rho - rho)(d) with rho = rho_hat.

    Args:
        u, v, w: Affine Weyl group elements of the same root system
        rho_shift: Multiple of delta added to rho_hat; the result does not depend on it

    Raises:
        UsageError: If the elements belong to different root systems
    """
    rs = u.rs
    if v.rs != rs or w.rs != rs:
        raise UsageError("d_degree needs elements of one root system")
    rho = rho_hat(rs, rho_shift)
    total = (
        inverse_weight_action(u, rho)
        + inverse_weight_action(v, rho)
        - inverse_weight_action(w, rho)
        - rho
    )
    if total.level != 0:
        raise InternalError(f"unbalanced level {total.level} in d_degree")
    value = total.at_d()
    if value.denominator != 1:
        raise InternalError(f"non-integral d-degree {value}")
    return int(value)


# checks --------------------------------------------------------------------------


def rho_defect(u: AffWeylElt) -> AffineWeight:
    """rho_hat - u^-1 rho_hat."""
    rho = rho_hat(u.rs)
    return rho - inverse_weight_action(u, rho)


def check_rho_identities(u: AffWeylElt) -> dict:
    """
    Check that rho_hat - u^-1 rho_hat has delta coefficient l(u) and integral finite part.

    Raises:
        CheckFailure: Naming u and the offending value
    """
    defect = rho_defect(u)
    if defect.delta != u.length:
        raise CheckFailure(
            f"delta coefficient {defect.delta} differs from l(u) = {u.length}",
            {"u": list(u.word), "delta": format_rational(defect.delta), "length": u.length},
        )
    if any(c.denominator != 1 for c in defect.finite):
        raise CheckFailure(
            "finite part of rho_hat - u^-1 rho_hat is outside the root lattice",
            {"u": list(u.word), "finite": [format_rational(c) for c in defect.finite]},
        )
    return {"u": list(u.word), "length": u.length, "finite": [int(c) for c in defect.finite]}


def check_all_rho_identities(elements: Sequence[AffWeylElt]) -> dict:
    """check_rho_identities over a list of elements."""
    for u in elements:
        check_rho_identities(u)
    return {"checked": len(elements)}


def check_d_degree_vanishing(elements: Sequence[AffWeylElt]) -> dict:
    """
    d^w_{u,v} = 0 for all u, v, w in the list with l(w) = l(u) + l(v).

    Raises:
        CheckFailure: With the first triple of nonzero degree
    """
    if not elements:
        return {"triples": 0}
    rs = elements[0].rs
    rho = rho_hat(rs)
    coefficient = {e.key: inverse_weight_action(e, rho).delta for e in elements}
    by_length: Dict[int, List[AffWeylElt]] = {}
    for e in elements:
        by_length.setdefault(e.length, []).append(e)

    triples = 0
    for u in elements:
        for v in elements:
            for w in by_length.get(u.length + v.length, []):
                triples += 1
                value = coefficient[u.key] + coefficient[v.key] - coefficient[w.key]
                if value != 0:
                    raise CheckFailure(
                        "nonzero d-degree for a length-additive triple",
                        {
                            "u": list(u.word),
                            "v": list(v.word),
                            "w": list(w.word),
                            "d_degree": format_rational(value),
                        },
                    )
    return {"triples": triples}


def _simplex_volume(vertices: Sequence[Sequence[Fraction]]) -> Fraction:
    """Unnormalized volume |det(v_i - v_0)| in coroot coordinates."""
    base = vertices[0]
    edges = [[a - b for a, b in zip(v, base)] for v in vertices[1:]]
    return abs(determinant(edges))


def check_alcove_geometry(elements: Sequence[AffWeylElt]) -> dict:
    """
    Check lengths and the metric behaviour of each element.

    For every element: the BFS length, the separating-hyperplane count and the
    size of the inversion set agree; the linear part is unimodular and
    preserves the form on h; and the image of C has the volume of C.

    Raises:
        CheckFailure: Naming the element and the violated property
    """
    if not elements:
        return {"checked": 0}
    rs = elements[0].rs
    gram = rs.coroot_gram
    n = rs.rank
    vertices = alcove_vertices(rs)
    volume = _simplex_volume(vertices)

    for e in elements:
        witness = {"w": list(e.word), "length": e.length}
        hyperplanes = separating_hyperplanes(e.affine, rs)
        inversions = len(inversion_set(e))
        if not (hyperplanes == inversions == e.length):
            raise CheckFailure(
                "length computations disagree",
                {**witness, "hyperplanes": hyperplanes, "inversions": inversions},
            )
        m = e.matrix
        if abs(determinant(m)) != 1:
            raise CheckFailure("linear part is not unimodular", witness)
        for i in range(n):
            for j in range(n):
                value = sum(
                    m[a][i] * gram[a][b] * m[b][j] for a in range(n) for b in range(n)
                )
                if value != gram[i][j]:
                    raise CheckFailure("linear part does not preserve the form", witness)
        image_volume = _simplex_volume([e.apply_inverse(v) for v in vertices])
        if image_volume != volume:
            raise CheckFailure(
                "alcove volume not preserved",
                {**witness, "volume": format_rational(image_volume)},
            )
    return {"checked": len(elements), "alcove_volume": format_rational(volume)}


def length_series(elements: Sequence[AffWeylElt]) -> List[int]:
    """Coefficients of sum_w q^l(w)."""
    counts = Counter(e.length for e in elements)
    top = max(counts) if counts else 0
    return [counts.get(k, 0) for k in range(top + 1)]


def aff2_to_json(rs: RootSystem, elements: Sequence[AffWeylElt]) -> dict:
    """JSON export with words, lengths, inversion sets and the vertices of w^-1 C."""
    denom, _ = _scaled_alcove(rs)
    return {
        "type": rs.type_letter,
        "rank": rs.rank,
        "count": len(elements),
        "length_series": length_series(elements),
        "elements": [
            {
                "word": list(e.word),
                "length": e.length,
                "inversions": [[list(alpha), k] for alpha, k in inversion_set(e)],
                "vertices": [
                    [format_rational(Fraction(c, denom)) for c in image]
                    for image in e.scaled_vertex_images
                ],
            }
            for e in elements
        ],
    }
