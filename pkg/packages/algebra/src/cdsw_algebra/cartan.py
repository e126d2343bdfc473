"""Root systems of the simple Lie algebras.

Roots are integer vectors in simple-root coordinates. The Cartan matrix follows
the Bourbaki numbering with ``A[i][j] = <alpha_i^vee, alpha_j>``, and the
bilinear form is normalized so that long roots (in particular the highest root)
have squared length 2.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Sequence, Tuple

from cdsw_shared.constants import RANK_BOUNDS
from cdsw_shared.errors import InternalError, UsageError
from cdsw_shared.rational import format_rational

Root = Tuple[int, ...]


def validate_type(type_letter: str, rank: int) -> Tuple[str, int]:
    """
    Check that (type, rank) names a simple Lie algebra.

    Raises:
        UsageError: If the pair is not a valid simple type
    """
    letter = str(type_letter).upper()
    if letter not in RANK_BOUNDS:
        raise UsageError(f"unknown Cartan type {type_letter!r}")
    try:
        rank = int(rank)
    except (TypeError, ValueError):
        raise UsageError(f"rank must be an integer, got {rank!r}") from None
    low, high = RANK_BOUNDS[letter]
    if rank < low or (high is not None and rank > high):
        upper = "" if high is None else f"..{high}"
        raise UsageError(f"type {letter} needs rank in {low}{upper or '+'}, got {rank}")
    return letter, rank


def cartan_matrix(type_letter: str, rank: int) -> Tuple[Tuple[int, ...], ...]:
    """Cartan matrix of a simple type in Bourbaki numbering."""
    letter, n = validate_type(type_letter, rank)
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2

    def link(i: int, j: int) -> None:
        # 1-based node labels
        a[i - 1][j - 1] = -1
        a[j - 1][i - 1] = -1

    if letter in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if letter == "B":
            a[n - 1][n - 2] = -2
        elif letter == "C":
            a[n - 2][n - 1] = -2
    elif letter == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        link(n - 2, n)
    elif letter == "E":
        link(1, 3)
        link(2, 4)
        for i in range(3, n):
            link(i, i + 1)
    elif letter == "F":
        link(1, 2)
        link(2, 3)
        link(3, 4)
        a[2][1] = -2
    elif letter == "G":
        a[0][1] = -3
        a[1][0] = -1
    return tuple(tuple(row) for row in a)


def _root_lengths(cartan: Sequence[Sequence[int]]) -> Tuple[Fraction, ...]:
    """Squared lengths of the simple roots, longest equal to 2."""
    n = len(cartan)
    d: List[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i][j] != 0 and d[j] is None:
                # d_i A_ij = d_j A_ji
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                stack.append(j)
    top = max(d)
    return tuple(2 * x / top for x in d)


@dataclass(frozen=True)
class RootSystem:
    """Root system of a simple Lie algebra with its normalized form."""

    type_letter: str
    rank: int
    cartan: Tuple[Tuple[int, ...], ...]
    root_lengths: Tuple[Fraction, ...]
    positive_roots: Tuple[Root, ...]
    _index: Dict[Root, int] = field(repr=False, compare=False)

    @property
    def name(self) -> str:
        """Short name such as 'A2'."""
        return f"{self.type_letter}{self.rank}"

    # form ------------------------------------------------------------------

    @cached_property
    def gram(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Gram matrix (alpha_i, alpha_j) of the normalized form."""
        n = self.rank
        return tuple(
            tuple(self.root_lengths[i] * self.cartan[i][j] / 2 for j in range(n))
            for i in range(n)
        )

    @cached_property
    def coroot_gram(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Gram matrix (alpha_i^vee, alpha_j^vee) of the induced form on h."""
        g = self.gram
        d = self.root_lengths
        n = self.rank
        return tuple(tuple(4 * g[i][j] / (d[i] * d[j]) for j in range(n)) for i in range(n))

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        """(u, v) for weights given in simple-root coordinates."""
        g = self.gram
        return sum(
            (Fraction(u[i]) * g[i][j] * v[j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def norm2(self, u: Sequence) -> Fraction:
        """Squared length (u, u)."""
        return self.inner(u, u)

    def pairing(self, u: Sequence, i: int) -> Fraction:
        """<u, alpha_i^vee> for u in simple-root coordinates."""
        return sum((Fraction(u[j]) * self.cartan[i][j] for j in range(self.rank)), Fraction(0))

    def coroot_pairing(self, u: Sequence, beta: Sequence) -> Fraction:
        """<u, beta^vee> = 2(u, beta)/(beta, beta)."""
        return 2 * self.inner(u, beta) / self.norm2(beta)

    # roots -----------------------------------------------------------------

    def simple_root(self, i: int) -> Root:
        """alpha_i as a coordinate vector (0-based index)."""
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def is_root(self, v: Sequence[int]) -> bool:
        """Whether v (simple-root coordinates) is a root."""
        v = tuple(int(c) for c in v)
        if v in self._index:
            return True
        return tuple(-c for c in v) in self._index

    def is_positive(self, v: Sequence[int]) -> bool:
        """Whether v is a positive root."""
        return tuple(int(c) for c in v) in self._index

    def root_index(self, v: Sequence[int]) -> int:
        """Index of a positive root in ``positive_roots``."""
        return self._index[tuple(int(c) for c in v)]

    def height(self, v: Sequence[int]) -> int:
        """Sum of coordinates."""
        return int(sum(v))

    def reflect(self, i: int, v: Sequence) -> Tuple:
        """Simple reflection s_i applied to v."""
        k = self.pairing(v, i)
        out = list(v)
        out[i] = out[i] - k
        return tuple(int(c) if Fraction(c).denominator == 1 else Fraction(c) for c in out)

    @property
    def highest_root(self) -> Root:
        """theta, the unique root of maximal height."""
        return self.positive_roots[-1]

    @property
    def marks(self) -> Tuple[int, ...]:
        """Coefficients a_i of theta."""
        return self.highest_root

    @cached_property
    def comarks(self) -> Tuple[int, ...]:
        """Coefficients a_i^vee of theta^vee in simple coroots."""
        return tuple(
            int(a * d / 2) for a, d in zip(self.marks, self.root_lengths)
        )

    @cached_property
    def rho(self) -> Tuple[Fraction, ...]:
        """Half the sum of the positive roots."""
        return tuple(
            Fraction(sum(root[i] for root in self.positive_roots), 2) for i in range(self.rank)
        )

    @cached_property
    def dual_coxeter_number(self) -> int:
        """h = <rho, theta^vee> + 1."""
        theta = self.highest_root
        value = self.coroot_pairing(self.rho, theta) + 1
        if value.denominator != 1:
            raise InternalError(f"non-integral dual Coxeter number {value} for {self.name}")
        return int(value)

    @cached_property
    def exponents(self) -> List[int]:
        """Exponents, the conjugate partition of the root-height multiplicities."""
        counts = Counter(self.height(r) for r in self.positive_roots)
        top = max(counts)
        result: List[int] = []
        for k in range(1, top + 1):
            result.extend([k] * (counts[k] - counts.get(k + 1, 0)))
        return sorted(result)

    @property
    def invariant_degrees(self) -> List[int]:
        """Degrees m_i + 1 of the basic invariant polynomials."""
        return [m + 1 for m in self.exponents]

    # representations ---------------------------------------------------------

    def is_dominant_integral(self, weight: Sequence) -> bool:
        """Whether <weight, alpha_i^vee> is a nonnegative integer for all i."""
        for i in range(self.rank):
            k = self.pairing(weight, i)
            if k < 0 or k.denominator != 1:
                return False
        return True

    def weyl_dim(self, weight: Sequence) -> int:
        """
        Dimension of the irreducible module with highest weight ``weight``.

        Args:
            weight: Dominant integral weight in simple-root coordinates

        Raises:
            UsageError: If the weight is not dominant integral
        """
        weight = tuple(Fraction(c) for c in weight)
        if len(weight) != self.rank or not self.is_dominant_integral(weight):
            raise UsageError(f"{weight} is not a dominant integral weight of {self.name}")
        rho = self.rho
        shifted = tuple(w + r for w, r in zip(weight, rho))
        numerator = Fraction(1)
        denominator = Fraction(1)
        for root in self.positive_roots:
            numerator *= self.inner(shifted, root)
            denominator *= self.inner(rho, root)
        value = numerator / denominator
        if value.denominator != 1:
            raise InternalError(f"non-integral Weyl dimension {value}")
        return int(value)

    def dynkin_labels(self, weight: Sequence) -> Tuple[Fraction, ...]:
        """Coordinates <weight, alpha_i^vee> in the fundamental weight basis."""
        return tuple(self.pairing(weight, i) for i in range(self.rank))

    # checks ------------------------------------------------------------------

    def validate(self) -> None:
        """
        Assert the structural invariants of the root system.

        Raises:
            InternalError: If any invariant fails
        """
        theta = self.highest_root
        if self.norm2(theta) != 2:
            raise InternalError(f"(theta, theta) = {self.norm2(theta)} for {self.name}")
        if any(c < 0 for root in self.positive_roots for c in root):
            raise InternalError("positive root with a negative coordinate")
        exps = self.exponents
        if exps[0] != 1 or sum(exps) != len(self.positive_roots):
            raise InternalError(f"bad exponents {exps} for {self.name}")
        roots = set(self.positive_roots) | {tuple(-c for c in r) for r in self.positive_roots}
        for i in range(self.rank):
            image = {tuple(self.reflect(i, r)) for r in roots}
            if image != roots:
                raise InternalError(f"s_{i + 1} does not permute the roots of {self.name}")
            for u in self.positive_roots:
                for v in (self.simple_root(j) for j in range(self.rank)):
                    if self.inner(self.reflect(i, u), self.reflect(i, v)) != self.inner(u, v):
                        raise InternalError(f"form not invariant under s_{i + 1}")

    def to_json(self) -> dict:
        """JSON document of the root data (rationals as 'p/q')."""
        return {
            "type": self.type_letter,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "root_lengths": [format_rational(d) for d in self.root_lengths],
            "positive_roots": [list(r) for r in self.positive_roots],
            "highest_root": list(self.highest_root),
            "marks": list(self.marks),
            "rho": [format_rational(c) for c in self.rho],
            "exponents": self.exponents,
            "dual_coxeter_number": self.dual_coxeter_number,
        }


def _positive_roots(cartan: Sequence[Sequence[int]]) -> List[Root]:
    """
    Close the simple roots under root strings, height by height.

    The result is sorted by height and, within a height, by descending
    coordinates, so A2 gives (1,0), (0,1), (1,1).
    """
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        next_layer = []
        for beta in layer:
            for i in range(n):
                if beta == simple[i]:
                    continue
                # p = how far the alpha_i-string extends below beta
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * cartan[i][j] for j in range(n))
                q = p - pairing
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        next_layer.append(up)
        layer = next_layer
    return sorted(found, key=lambda r: (sum(r), tuple(-c for c in r)))


@lru_cache(maxsize=None)
def build_root_system(type_letter: str, rank: int) -> RootSystem:
    """
    Build the root system of a simple Lie algebra.

    Args:
        type_letter: One of A-G
        rank: Rank within the valid range of the type

    Returns:
        The root system with positive roots ordered by (height, coordinates)

    Raises:
        UsageError: If (type, rank) is not a valid simple type
    """
    letter, rank = validate_type(type_letter, rank)
    cartan = cartan_matrix(letter, rank)
    roots = tuple(_positive_roots(cartan))
    return RootSystem(
        type_letter=letter,
        rank=rank,
        cartan=cartan,
        root_lengths=_root_lengths(cartan),
        positive_roots=roots,
        _index={r: k for k, r in enumerate(roots)},
    )


def dual_coxeter_number(rs: RootSystem) -> int:
    """Dual Coxeter number of a root system."""
    return rs.dual_coxeter_number


def exponents(rs: RootSystem) -> List[int]:
    """Exponents of a root system."""
    return rs.exponents


def weyl_dim(rs: RootSystem, weight: Sequence) -> int:
    """Weyl dimension of the irreducible module of highest weight ``weight``."""
    return rs.weyl_dim(weight)
