"""The bigraded exterior algebra R = wedge(g1 + g2) with exact sparse arithmetic.

A monomial is a 2N-bit mask: bits 0..N-1 are the g1 slots, bits N..2N-1 the g2
slots, both in Lie-algebra basis order. A monomial stands for the wedge of its
slots in increasing bit order.
"""

import random
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from cdsw_shared.constants import MAX_SLOTS_PER_COPY
from cdsw_shared.errors import UsageError
from cdsw_shared.rational import format_rational

from .cartan import Root
from .chevalley import LieAlgebra, LieElement
from .linalg import determinant, inverse

# a dual-basis pair ({e_i}, {f_i}) given as vectors in the Chevalley basis
Frame = Sequence[Tuple[LieElement, LieElement]]

# copy index -> (slot copy of [x, e_i], slot copy of f_i)
_COPY_SLOTS = {1: (0, 0), 2: (1, 1), 3: (0, 1)}


def wedge_sign(m1: int, m2: int) -> int:
    """Sign of m1 ^ m2 relative to the sorted monomial m1 | m2 (masks disjoint)."""
    crossings = 0
    rest = m2
    while rest:
        low = rest & -rest
        j = low.bit_length() - 1
        crossings += (m1 >> (j + 1)).bit_count()
        rest ^= low
    return -1 if crossings & 1 else 1


class ExtElement:
    """Sparse element of R: monomial mask -> nonzero Fraction."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[int, Fraction]] = None):
        """
        Create an element.

        Args:
            n: Slots per copy (dim g)
            terms: Monomial mask -> coefficient; zero coefficients are dropped
        """
        self.n = n
        self.terms: Dict[int, Fraction] = {
            m: Fraction(c) for m, c in (terms or {}).items() if c != 0
        }

    def __repr__(self) -> str:
        return f"ExtElement(n={self.n}, terms={len(self.terms)})"

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __iter__(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "ExtElement") -> "ExtElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return ExtElement(self.n, out)

    def __neg__(self) -> "ExtElement":
        return ExtElement(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def __mul__(self, scalar) -> "ExtElement":
        scalar = Fraction(scalar)
        return ExtElement(self.n, {m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def bidegree_of(self, mask: int) -> Tuple[int, int]:
        """(popcount of the g1 half, popcount of the g2 half)."""
        low = (1 << self.n) - 1
        return (mask & low).bit_count(), (mask >> self.n).bit_count()

    @property
    def bidegree(self) -> Optional[Tuple[int, int]]:
        """Common bidegree of all terms, or None if inhomogeneous or zero."""
        degrees = {self.bidegree_of(m) for m in self.terms}
        if len(degrees) == 1:
            return next(iter(degrees))
        return None


class ExteriorAlgebra:
    """R = wedge(g1 + g2) attached to a Chevalley-basis Lie algebra."""

    def __init__(self, lie: LieAlgebra):
        """
        Attach the exterior algebra to a Lie algebra.

        Raises:
            UsageError: If dim g exceeds the slots of one machine word
        """
        if lie.dim > MAX_SLOTS_PER_COPY:
            raise UsageError(
                f"dim g = {lie.dim} exceeds {MAX_SLOTS_PER_COPY} slots per copy ({lie.rs.name})"
            )
        self.lie = lie
        self.n = lie.dim
        self._ad_cache: Dict[Tuple[Tuple[int, Fraction], ...], Dict[int, LieElement]] = {}
        self._weight_groups: Dict[int, Dict[Root, List[int]]] = {}

    # construction ------------------------------------------------------------

    def zero(self) -> ExtElement:
        """The zero element."""
        return ExtElement(self.n)

    def one(self) -> ExtElement:
        """The unit (empty monomial)."""
        return ExtElement(self.n, {0: Fraction(1)})

    def slot(self, copy: int, index: int) -> int:
        """Bit position of basis element ``index`` in copy 1 or 2."""
        if copy not in (1, 2):
            raise UsageError(f"copy must be 1 or 2, got {copy}")
        return (copy - 1) * self.n + index

    def monomial(self, slots: Iterable[Tuple[int, int]]) -> ExtElement:
        """Wedge of basis elements given as (copy, index) in the given order."""
        result = self.one()
        for copy, index in slots:
            result = self.wedge(result, self.vector(copy, {index: Fraction(1)}))
        return result

    def vector(self, copy: int, x: LieElement) -> ExtElement:
        """A Lie element placed in degree one of copy 1 or 2."""
        return ExtElement(self.n, {1 << self.slot(copy, i): c for i, c in x.items()})

    # grading -----------------------------------------------------------------

    def mask_weight(self, mask: int) -> Root:
        """Sum of the weights of the occupied slots."""
        total = [0] * self.lie.rank
        rest = mask
        while rest:
            low = rest & -rest
            slot = (low.bit_length() - 1) % self.n
            for k, c in enumerate(self.lie.weights[slot]):
                total[k] += c
            rest ^= low
        return tuple(total)

    def bidegree(self, mask: int) -> Tuple[int, int]:
        """Bidegree of a monomial."""
        low = (1 << self.n) - 1
        return (mask & low).bit_count(), (mask >> self.n).bit_count()

    def monomials(self, p: int, q: int, weight: Optional[Root] = None) -> List[int]:
        """All masks of bidegree (p, q), optionally of one weight, ascending."""
        if p < 0 or q < 0 or p > self.n or q > self.n:
            return []
        by_weight_low = self._masks_by_weight(p)
        by_weight_high = self._masks_by_weight(q)
        out: List[int] = []
        for w1, lows in by_weight_low.items():
            for w2, highs in by_weight_high.items():
                if weight is not None and tuple(a + b for a, b in zip(w1, w2)) != tuple(weight):
                    continue
                for lo in lows:
                    for hi in highs:
                        out.append(lo | (hi << self.n))
        return sorted(out)

    def _masks_by_weight(self, degree: int) -> Dict[Root, List[int]]:
        cached = self._weight_groups.get(degree)
        if cached is not None:
            return cached
        groups: Dict[Root, List[int]] = {}
        for combo in combinations(range(self.n), degree):
            mask = 0
            for i in combo:
                mask |= 1 << i
            groups.setdefault(self.mask_weight(mask), []).append(mask)
        self._weight_groups[degree] = groups
        return groups

    def component_weights(self, p: int, q: int) -> List[Root]:
        """Weights occurring in R^{p,q}, sorted."""
        if p < 0 or q < 0 or p > self.n or q > self.n:
            return []
        found = {
            tuple(a + b for a, b in zip(w1, w2))
            for w1 in self._masks_by_weight(p)
            for w2 in self._masks_by_weight(q)
        }
        return sorted(found)

    def weight_components(self, a: ExtElement) -> Dict[Root, ExtElement]:
        """Split an element into weight-homogeneous parts."""
        parts: Dict[Root, Dict[int, Fraction]] = {}
        for m, c in a.terms.items():
            parts.setdefault(self.mask_weight(m), {})[m] = c
        return {w: ExtElement(self.n, t) for w, t in parts.items()}

    # products ----------------------------------------------------------------

    def wedge(self, a: ExtElement, b: ExtElement) -> ExtElement:
        """a ^ b."""
        out: Dict[int, Fraction] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                if m1 & m2:
                    continue
                m = m1 | m2
                value = out.get(m, Fraction(0)) + wedge_sign(m1, m2) * c1 * c2
                if value:
                    out[m] = value
                else:
                    out.pop(m, None)
        return ExtElement(self.n, out)

    def power(self, a: ExtElement, k: int) -> ExtElement:
        """a ^ a ^ ... ^ a (k factors); the unit for k = 0."""
        result = self.one()
        for _ in range(k):
            result = self.wedge(result, a)
        return result

    def _pair(self, left_copy: int, u: LieElement, right_copy: int, v: LieElement) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, a in u.items():
            s = left_copy * self.n + i
            for j, b in v.items():
                t = right_copy * self.n + j
                if s == t:
                    continue
                m = (1 << s) | (1 << t)
                sign = 1 if s < t else -1
                out[m] = out.get(m, Fraction(0)) + sign * a * b
        return out

    def _standard_frame(self) -> List[Tuple[LieElement, LieElement]]:
        return [({i: Fraction(1)}, self.lie.dual[i]) for i in range(self.n)]

    def c_embed(self, copy: int, x: LieElement, frame: Optional[Frame] = None) -> ExtElement:
        """
        Image of x under c_1, c_2 (sum [x,e_i] ^ f_i in one copy) or c_3 (across copies).

        Args:
            copy: 1, 2 or 3
            x: Lie element
            frame: Optional dual-basis pair replacing the standard one

        Raises:
            UsageError: If copy is not 1, 2 or 3
        """
        if copy not in _COPY_SLOTS:
            raise UsageError(f"copy index must be 1, 2 or 3, got {copy}")
        left, right = _COPY_SLOTS[copy]
        total: Dict[int, Fraction] = {}
        for e, f in frame or self._standard_frame():
            bracket = self.lie.bracket(x, e)
            if not bracket:
                continue
            for m, c in self._pair(left, bracket, right, f).items():
                total[m] = total.get(m, Fraction(0)) + c
        return ExtElement(self.n, total)

    def build_S(self, frame: Optional[Frame] = None) -> ExtElement:
        """S = sum e_i (copy 1) ^ f_i (copy 2)."""
        total: Dict[int, Fraction] = {}
        for e, f in frame or self._standard_frame():
            for m, c in self._pair(0, e, 1, f).items():
                total[m] = total.get(m, Fraction(0)) + c
        return ExtElement(self.n, total)

    # action ------------------------------------------------------------------

    def _ad_columns(self, x: LieElement) -> Dict[int, LieElement]:
        key = tuple(sorted(x.items()))
        columns = self._ad_cache.get(key)
        if columns is None:
            columns = self.lie.ad(x)
            self._ad_cache[key] = columns
        return columns

    def diag_act(self, x: LieElement, a: ExtElement) -> ExtElement:
        """Diagonal adjoint action of x, extended to R as a derivation."""
        if not x:
            return self.zero()
        columns = self._ad_columns(x)
        out: Dict[int, Fraction] = {}
        for mask, coefficient in a.terms.items():
            bits = mask
            while bits:
                low = bits & -bits
                s = low.bit_length() - 1
                bits ^= low
                copy, k = divmod(s, self.n)
                rest = mask ^ low
                for j, c in columns[k].items():
                    t = copy * self.n + j
                    if rest >> t & 1:
                        continue
                    lo, hi = (s, t) if s < t else (t, s)
                    between = rest & ((1 << hi) - (1 << (lo + 1))) if hi > lo else 0
                    sign = -1 if between.bit_count() & 1 else 1
                    m = rest | (1 << t)
                    value = out.get(m, Fraction(0)) + sign * c * coefficient
                    if value:
                        out[m] = value
                    else:
                        out.pop(m, None)
        return ExtElement(self.n, out)

    # frames ------------------------------------------------------------------

    def random_frame(self, rng: random.Random, spread: int = 2) -> List[Tuple[LieElement, LieElement]]:
        """
        A random dual-basis pair: e' = P e and f' = P^{-T} f for invertible integer P.

        Args:
            rng: Seeded random generator
            spread: Entries of P are drawn from [-spread, spread]
        """
        n = self.n
        while True:
            p = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
            if determinant(p) != 0:
                break
        p_inv = inverse(p)
        frame = []
        for k in range(n):
            e = {j: Fraction(p[k][j]) for j in range(n) if p[k][j]}
            f: LieElement = {}
            for j in range(n):
                weight = p_inv[j][k]
                if not weight:
                    continue
                for idx, c in self.lie.dual[j].items():
                    f[idx] = f.get(idx, Fraction(0)) + weight * c
            frame.append((e, {i: c for i, c in f.items() if c}))
        return frame

    # text ----------------------------------------------------------------------

    def slot_name(self, slot: int) -> str:
        """Name of a slot, e.g. 'h1(2)'."""
        copy, index = divmod(slot, self.n)
        return f"{self.lie.basis_name(index)}({copy + 1})"

    def to_text(self, a: ExtElement) -> str:
        """Stable text form such as '+1/2·h1(1)^h1(2) -1·e1(1)^f1(2)'."""
        if not a:
            return "0"
        parts = []
        for mask, c in a:
            sign = "-" if c < 0 else "+"
            slots = [i for i in range(2 * self.n) if mask >> i & 1]
            body = "^".join(self.slot_name(s) for s in slots) or "1"
            parts.append(f"{sign}{format_rational(abs(c))}·{body}")
        return " ".join(parts)


def component_dimension(n: int, p: int, q: int) -> int:
    """dim R^{p,q} = C(n,p) C(n,q)."""
    return comb(n, p) * comb(n, q)
