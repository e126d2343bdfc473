"""Chevalley-basis Lie algebra of a root system with exact structure constants.

Basis order: positive roots in root-system order, then h_1..h_l, then the
negative roots mirrored, so the index of x_{-alpha} is ``N - 1 - index(x_alpha)``.
Lie elements are sparse ``{basis index: Fraction}`` dicts.
"""

import hashlib
import json
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from cdsw_shared.errors import InternalError, UsageError
from cdsw_shared.rational import format_rational

from .cartan import Root, RootSystem, build_root_system
from .linalg import inverse

LieElement = Dict[int, Fraction]


def _neg(v: Root) -> Root:
    return tuple(-c for c in v)


def _add(u: Root, v: Root) -> Root:
    return tuple(a + b for a, b in zip(u, v))


class LieAlgebra:
    """Simple Lie algebra in a Chevalley basis.

    Structure constants are integers; the invariant form is normalized so the
    highest root has squared length 2.
    """

    def __init__(self, rs: RootSystem):
        """
        Build the Lie algebra of a root system.

        Args:
            rs: The root system
        """
        self.rs = rs
        self.rank = rs.rank
        self.num_positive = len(rs.positive_roots)
        self.dim = 2 * self.num_positive + self.rank

        positives = list(rs.positive_roots)
        zero = tuple(0 for _ in range(self.rank))
        self.weights: Tuple[Root, ...] = tuple(
            positives + [zero] * self.rank + [_neg(r) for r in reversed(positives)]
        )
        self._root_to_index: Dict[Root, int] = {
            w: i for i, w in enumerate(self.weights) if any(w)
        }

        self._positive_constants = self._compute_positive_constants()
        self.structure: Dict[Tuple[int, int], Dict[int, int]] = self._build_structure()
        self.gram = self._build_gram()
        self.dual = self._build_dual()

    # naming --------------------------------------------------------------------

    def is_cartan(self, i: int) -> bool:
        """Whether basis element i is some h_j."""
        return self.num_positive <= i < self.num_positive + self.rank

    def cartan_index(self, j: int) -> int:
        """Basis index of h_j (0-based j)."""
        return self.num_positive + j

    def root_index(self, root: Root) -> int:
        """Basis index of x_root for a positive or negative root."""
        return self._root_to_index[tuple(root)]

    def simple_raising(self, i: int) -> int:
        """Basis index of e_i = x_{alpha_i}."""
        return self.root_index(self.rs.simple_root(i))

    def simple_lowering(self, i: int) -> int:
        """Basis index of f_i = x_{-alpha_i}."""
        return self.root_index(_neg(self.rs.simple_root(i)))

    def mirror(self, i: int) -> int:
        """Index of the element paired with i by the form."""
        if self.is_cartan(i):
            return i
        return self.dim - 1 - i

    def basis_name(self, i: int) -> str:
        """Readable name: e1, f2, h1, e[1,1], f[1,2]."""
        if self.is_cartan(i):
            return f"h{i - self.num_positive + 1}"
        weight = self.weights[i]
        letter = "e" if i < self.num_positive else "f"
        coords = [abs(c) for c in weight]
        if sum(coords) == 1:
            return f"{letter}{coords.index(1) + 1}"
        return f"{letter}[{','.join(str(c) for c in coords)}]"

    # structure constants -------------------------------------------------------

    def _compute_positive_constants(self) -> Dict[Tuple[Root, Root], int]:
        """N_{a,b} for positive roots a, b with a + b a root."""
        rs = self.rs
        constants: Dict[Tuple[Root, Root], int] = {}
        for gamma in rs.positive_roots:
            if rs.height(gamma) < 2:
                continue
            # extraspecial pair: least simple root zeta with gamma - zeta a root
            zeta = eta = None
            for i in range(rs.rank):
                candidate = tuple(c - (1 if j == i else 0) for j, c in enumerate(gamma))
                if rs.is_positive(candidate):
                    zeta, eta = rs.simple_root(i), candidate
                    break
            if zeta is None:
                raise InternalError(f"no extraspecial pair for {gamma}")
            p = 0
            down = eta
            while True:
                down = tuple(a - b for a, b in zip(down, zeta))
                if rs.is_root(down):
                    p += 1
                else:
                    break
            n_extra = p + 1
            constants[(zeta, eta)] = n_extra
            constants[(eta, zeta)] = -n_extra

            norm_gamma = rs.norm2(gamma)
            for alpha in rs.positive_roots:
                beta = tuple(a - b for a, b in zip(gamma, alpha))
                if not rs.is_positive(beta):
                    continue
                if (alpha, beta) in constants:
                    continue
                if alpha == eta and beta == zeta:
                    continue
                total = Fraction(0)
                beta_minus_zeta = tuple(a - b for a, b in zip(beta, zeta))
                if rs.is_root(beta_minus_zeta):
                    total += Fraction(
                        self._n(constants, beta, _neg(zeta)) * self._n(constants, alpha, _neg(eta)),
                    ) / rs.norm2(beta_minus_zeta)
                alpha_minus_zeta = tuple(a - b for a, b in zip(alpha, zeta))
                if rs.is_root(alpha_minus_zeta):
                    total += Fraction(
                        self._n(constants, _neg(zeta), alpha) * self._n(constants, beta, _neg(eta)),
                    ) / rs.norm2(alpha_minus_zeta)
                value = norm_gamma * total / n_extra
                if value.denominator != 1 or value == 0:
                    raise InternalError(f"bad structure constant N{alpha},{beta} = {value}")
                constants[(alpha, beta)] = int(value)
                constants[(beta, alpha)] = -int(value)
        return constants

    def _n(self, positive: Dict[Tuple[Root, Root], int], a: Root, b: Root) -> int:
        """N_{a,b} for arbitrary roots, reduced to positive pairs already known."""
        rs = self.rs
        s = _add(a, b)
        if not any(s) or not rs.is_root(s):
            return 0
        a_pos = rs.is_positive(a)
        b_pos = rs.is_positive(b)
        if a_pos and b_pos:
            return positive[(a, b)]
        if not a_pos and not b_pos:
            return -positive[(_neg(a), _neg(b))]
        if not a_pos:
            return -self._n(positive, b, a)
        # a > 0 > b
        if rs.is_positive(s):
            value = -rs.norm2(s) / rs.norm2(a) * self._n(positive, _neg(b), s)
        else:
            value = rs.norm2(s) / rs.norm2(b) * self._n(positive, _neg(s), a)
        if value.denominator != 1:
            raise InternalError(f"non-integral N{a},{b} = {value}")
        return int(value)

    def structure_constant(self, a: Root, b: Root) -> int:
        """N_{a,b} with [x_a, x_b] = N_{a,b} x_{a+b}."""
        return self._n(self._positive_constants, tuple(a), tuple(b))

    def coroot(self, root: Root) -> Dict[int, Fraction]:
        """h_root = [x_root, x_-root] in the h_j coordinates."""
        rs = self.rs
        norm = rs.norm2(root)
        out: Dict[int, Fraction] = {}
        for j, c in enumerate(root):
            if c:
                out[self.cartan_index(j)] = c * rs.root_lengths[j] / norm
        return out

    def _build_structure(self) -> Dict[Tuple[int, int], Dict[int, int]]:
        rs = self.rs
        table: Dict[Tuple[int, int], Dict[int, int]] = {}
        for i in range(self.dim):
            for j in range(self.dim):
                out: Dict[int, int] = {}
                wi, wj = self.weights[i], self.weights[j]
                ci, cj = self.is_cartan(i), self.is_cartan(j)
                if ci and cj:
                    pass
                elif ci:
                    k = int(rs.pairing(wj, i - self.num_positive))
                    if k:
                        out[j] = k
                elif cj:
                    k = int(rs.pairing(wi, j - self.num_positive))
                    if k:
                        out[i] = -k
                else:
                    s = _add(wi, wj)
                    if not any(s):
                        for idx, c in self.coroot(wi).items():
                            if c.denominator != 1:
                                raise InternalError(f"non-integral coroot of {wi}")
                            out[idx] = int(c)
                    elif rs.is_root(s):
                        out[self.root_index(s)] = self.structure_constant(wi, wj)
                if out:
                    table[(i, j)] = out
        return table

    # form and dual basis -------------------------------------------------------

    def _build_gram(self) -> Dict[Tuple[int, int], Fraction]:
        rs = self.rs
        gram: Dict[Tuple[int, int], Fraction] = {}
        coroot_gram = rs.coroot_gram
        for a in range(self.rank):
            for b in range(self.rank):
                if coroot_gram[a][b]:
                    gram[(self.cartan_index(a), self.cartan_index(b))] = coroot_gram[a][b]
        for i in range(self.num_positive):
            value = 2 / rs.norm2(self.weights[i])
            gram[(i, self.mirror(i))] = value
            gram[(self.mirror(i), i)] = value
        return gram

    def _build_dual(self) -> Dict[int, LieElement]:
        rs = self.rs
        dual: Dict[int, LieElement] = {}
        for i in range(self.dim):
            if not self.is_cartan(i):
                dual[i] = {self.mirror(i): 1 / self.gram[(i, self.mirror(i))]}
        inv = inverse(rs.coroot_gram)
        for a in range(self.rank):
            dual[self.cartan_index(a)] = {
                self.cartan_index(b): inv[b][a] for b in range(self.rank) if inv[b][a]
            }
        return dual

    def form(self, x: LieElement, y: LieElement) -> Fraction:
        """Normalized invariant form <x, y>."""
        total = Fraction(0)
        for i, a in x.items():
            for j, b in y.items():
                g = self.gram.get((i, j))
                if g:
                    total += a * b * g
        return total

    # brackets ------------------------------------------------------------------

    def basis_element(self, i: int, coefficient: Fraction = Fraction(1)) -> LieElement:
        """The basis vector i as a sparse element."""
        return {i: Fraction(coefficient)}

    def bracket_basis(self, i: int, j: int) -> Dict[int, int]:
        """[b_i, b_j] as a sparse integer vector."""
        return self.structure.get((i, j), {})

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        """[x, y] for sparse elements."""
        out: LieElement = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.structure.get((i, j), {}).items():
                    value = out.get(k, Fraction(0)) + a * b * c
                    if value:
                        out[k] = value
                    else:
                        out.pop(k, None)
        return out

    def ad(self, x: LieElement) -> Dict[int, LieElement]:
        """ad(x) as columns: basis index j -> [x, b_j]."""
        return {j: self.bracket(x, {j: Fraction(1)}) for j in range(self.dim)}

    def weight_of(self, x: LieElement) -> Optional[Root]:
        """Common weight of a weight-homogeneous element, else None."""
        weights = {self.weights[i] for i in x}
        if len(weights) == 1:
            return next(iter(weights))
        return None

    # checks --------------------------------------------------------------------

    def jacobi_residual(self, i: int, j: int, k: int) -> LieElement:
        """[b_i,[b_j,b_k]] + [b_j,[b_k,b_i]] + [b_k,[b_i,b_j]]."""
        bi, bj, bk = ({n: Fraction(1)} for n in (i, j, k))
        out: LieElement = {}
        for term in (
            self.bracket(bi, self.bracket(bj, bk)),
            self.bracket(bj, self.bracket(bk, bi)),
            self.bracket(bk, self.bracket(bi, bj)),
        ):
            for n, c in term.items():
                value = out.get(n, Fraction(0)) + c
                if value:
                    out[n] = value
                else:
                    out.pop(n, None)
        return out

    def casimir_scalar(self) -> Optional[Fraction]:
        """Scalar by which sum_i ad(e_i) ad(f_i) acts on g, or None if not scalar."""
        scalar: Optional[Fraction] = None
        for j in range(self.dim):
            out: LieElement = {}
            for i in range(self.dim):
                inner = self.bracket(self.dual[i], {j: Fraction(1)})
                for k, c in self.bracket({i: Fraction(1)}, inner).items():
                    out[k] = out.get(k, Fraction(0)) + c
            out = {k: c for k, c in out.items() if c}
            if set(out) != {j}:
                return None
            if scalar is None:
                scalar = out[j]
            elif out[j] != scalar:
                return None
        return scalar

    def validate(self) -> None:
        """
        Assert Jacobi, form invariance, duality and the Casimir scalar.

        Raises:
            InternalError: If any identity fails
        """
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if self.jacobi_residual(i, j, k):
                        raise InternalError(f"Jacobi fails on ({i},{j},{k}) in {self.rs.name}")
        for i in range(n):
            bi = {i: Fraction(1)}
            for j in range(n):
                bj = {j: Fraction(1)}
                bracket_ij = self.bracket(bi, bj)
                for k in range(n):
                    bk = {k: Fraction(1)}
                    if self.form(bracket_ij, bk) + self.form(bj, self.bracket(bi, bk)):
                        raise InternalError(f"form not invariant on ({i},{j},{k})")
                expected = Fraction(1) if i == j else Fraction(0)
                if self.form(bi, self.dual[j]) != expected:
                    raise InternalError(f"dual basis broken at ({i},{j})")
        if self.casimir_scalar() != 2 * self.rs.dual_coxeter_number:
            raise InternalError(f"Casimir is not 2h on {self.rs.name}")

    # serialization -------------------------------------------------------------

    def structure_triples(self) -> List[List[int]]:
        """Nonzero constants as [i, j, k, c] with [b_i, b_j] = sum c b_k."""
        return [
            [i, j, k, c]
            for (i, j), out in sorted(self.structure.items())
            for k, c in sorted(out.items())
        ]

    @property
    def content_hash(self) -> str:
        """sha256 of the basis and structure-constant table."""
        payload = json.dumps(
            {
                "type": self.rs.type_letter,
                "rank": self.rank,
                "weights": [list(w) for w in self.weights],
                "structure": self.structure_triples(),
            },
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def to_json(self) -> dict:
        """JSON document of the algebra (rationals as 'p/q')."""
        return {
            "root_system": self.rs.to_json(),
            "basis": [self.basis_name(i) for i in range(self.dim)],
            "structure": self.structure_triples(),
            "gram": [[i, j, format_rational(v)] for (i, j), v in sorted(self.gram.items())],
            "dual": {
                self.basis_name(i): {self.basis_name(k): format_rational(c) for k, c in d.items()}
                for i, d in self.dual.items()
            },
            "content_hash": self.content_hash,
        }


def chevalley_lie_algebra(root_system: RootSystem | str, rank: Optional[int] = None) -> LieAlgebra:
    """
    Build (and memoize) the Chevalley-basis Lie algebra of a root system.

    Accepts either a RootSystem or a type letter with its rank.

    Raises:
        UsageError: If a type letter comes without a rank, or a RootSystem with a different rank
    """
    if isinstance(root_system, RootSystem):
        if rank is not None and rank != root_system.rank:
            raise UsageError(f"rank {rank} given with the root system {root_system.name}")
        return _lie_algebra(root_system)
    if rank is None:
        raise UsageError(f"type {root_system} needs a rank")
    return _lie_algebra(build_root_system(root_system, rank))


@lru_cache(maxsize=None)
def _lie_algebra(rs: RootSystem) -> LieAlgebra:
    return LieAlgebra(rs)
