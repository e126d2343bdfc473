"""Defining representations of the classical Lie algebras and their trace invariants.

The simple generators are written down as matrix units; every other Chevalley
basis element is produced by brackets divided by the structure constants of
the abstract algebra, so the representation matches its signs exactly.
"""

from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import factorial
from typing import Dict, List, Sequence, Tuple

from cdsw_shared.errors import CheckFailure, InternalError, UsageError
from cdsw_shared.rational import to_fraction
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import SDM

from .chevalley import LieAlgebra, LieElement
from .linalg import trace

CLASSICAL_TYPES = ("A", "B", "C", "D")


def _unit_sum(size: int, entries: Sequence[Tuple[int, int, int]]) -> DomainMatrix:
    """sum c E_{a,b} with 1-based (a, b)."""
    rep: Dict[int, Dict[int, object]] = {}
    for a, b, c in entries:
        row = rep.setdefault(a - 1, {})
        row[b - 1] = row.get(b - 1, QQ(0)) + QQ(c)
    return DomainMatrix.from_rep(SDM(rep, (size, size), QQ))


def _commutator(x: DomainMatrix, y: DomainMatrix) -> DomainMatrix:
    return x.matmul(y) - y.matmul(x)


def _simple_generators(type_letter: str, rank: int) -> Tuple[int, List[DomainMatrix], List[DomainMatrix]]:
    """Matrix size and the images of e_i, f_i (0-based i)."""
    n = rank
    raising: List[DomainMatrix] = []
    lowering: List[DomainMatrix] = []
    if type_letter == "A":
        size = n + 1
        for i in range(1, n + 1):
            raising.append(_unit_sum(size, [(i, i + 1, 1)]))
            lowering.append(_unit_sum(size, [(i + 1, i, 1)]))
        return size, raising, lowering

    size = {"B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[type_letter]
    mirror = size + 1
    for i in range(1, n):
        entries = [(i, i + 1, 1), (mirror - i - 1, mirror - i, -1)]
        raising.append(_unit_sum(size, entries))
        lowering.append(_unit_sum(size, [(b, a, c) for a, b, c in entries]))
    if type_letter == "C":
        last = [(n, n + 1, 1)]
        raising.append(_unit_sum(size, last))
        lowering.append(_unit_sum(size, [(n + 1, n, 1)]))
    elif type_letter == "B":
        last = [(n, n + 1, 1), (n + 1, n + 2, -1)]
        raising.append(_unit_sum(size, last))
        lowering.append(_unit_sum(size, [(b, a, 2 * c) for a, b, c in last]))
    else:
        last = [(n - 1, n + 1, 1), (n, n + 2, -1)]
        raising.append(_unit_sum(size, last))
        lowering.append(_unit_sum(size, [(b, a, c) for a, b, c in last]))
    return size, raising, lowering


class DefiningRepresentation:
    """Matrices of every Chevalley basis element in the defining representation."""

    def __init__(self, lie: LieAlgebra):
        """
        Build the representation.

        Args:
            lie: A Lie algebra of classical type

        Raises:
            UsageError: For exceptional types
            InternalError: If the generators do not satisfy the Cartan relations
        """
        rs = lie.rs
        if rs.type_letter not in CLASSICAL_TYPES:
            raise UsageError(f"no defining representation for exceptional type {rs.name}")
        self.lie = lie
        self.size, raising, lowering = _simple_generators(rs.type_letter, rs.rank)

        matrices: Dict[int, DomainMatrix] = {}
        for i in range(rs.rank):
            matrices[lie.simple_raising(i)] = raising[i]
            matrices[lie.simple_lowering(i)] = lowering[i]
            matrices[lie.cartan_index(i)] = _commutator(raising[i], lowering[i])

        for root in rs.positive_roots:
            if rs.height(root) == 1:
                continue
            simple, rest = self._split(root)
            for sign in (1, -1):
                a = tuple(sign * c for c in simple)
                b = tuple(sign * c for c in rest)
                n_ab = lie.structure_constant(a, b)
                if n_ab == 0:
                    raise InternalError(f"zero structure constant splitting {root}")
                product = _commutator(
                    matrices[lie.root_index(a)], matrices[lie.root_index(b)]
                )
                matrices[lie.root_index(tuple(sign * c for c in root))] = product * QQ(1, n_ab)
        self.matrices = matrices
        self._check_cartan_relations()

    def _split(self, root) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        rs = self.lie.rs
        for i in range(rs.rank):
            rest = tuple(c - (1 if k == i else 0) for k, c in enumerate(root))
            if rs.is_positive(rest):
                return rs.simple_root(i), rest
        raise InternalError(f"root {root} has no simple predecessor")

    def _check_cartan_relations(self) -> None:
        lie = self.lie
        rs = lie.rs
        for i in range(rs.rank):
            h = self.matrices[lie.cartan_index(i)]
            for j in range(rs.rank):
                e = self.matrices[lie.simple_raising(j)]
                expected = e * QQ(rs.cartan[i][j])
                if not (_commutator(h, e) - expected).is_zero_matrix:
                    raise InternalError(f"[h_{i + 1}, e_{j + 1}] != A_ij e_{j + 1} in {rs.name}")

    def matrix(self, x: LieElement) -> DomainMatrix:
        """Image of a Lie element."""
        out = DomainMatrix.zeros((self.size, self.size), QQ).to_sparse()
        for i, c in x.items():
            c = to_fraction(c)
            out = out + self.matrices[i] * QQ(c.numerator, c.denominator)
        return out

    def validate(self) -> None:
        """
        Check the representation on every pair of basis elements.

        Raises:
            InternalError: If some bracket is not preserved
        """
        lie = self.lie
        for i in range(lie.dim):
            for j in range(i + 1, lie.dim):
                left = _commutator(self.matrices[i], self.matrices[j])
                right = self.matrix({k: Fraction(c) for k, c in lie.bracket_basis(i, j).items()})
                if not (left - right).is_zero_matrix:
                    raise InternalError(
                        f"bracket of {lie.basis_name(i)}, {lie.basis_name(j)} not preserved"
                    )


class InvariantForm:
    """A symmetric g-invariant multilinear form evaluated on basis indices."""

    degree: int

    def evaluate(self, indices: Sequence[int]) -> Fraction:
        """Value on basis elements."""
        raise NotImplementedError

    def __call__(self, *elements: LieElement) -> Fraction:
        """Multilinear extension to arbitrary Lie elements."""
        if len(elements) != self.degree:
            raise UsageError(f"form of degree {self.degree} got {len(elements)} arguments")
        total = Fraction(0)
        for combo in _expand(elements):
            indices, coefficient = combo
            total += coefficient * self.evaluate(indices)
        return total


def _expand(elements: Sequence[LieElement]):
    """All (index tuple, coefficient product) terms of a multilinear expansion."""
    terms = [((), Fraction(1))]
    for x in elements:
        terms = [
            (indices + (i,), coefficient * to_fraction(c))
            for indices, coefficient in terms
            for i, c in x.items()
            if c
        ]
    return terms


class NormalizedForm(InvariantForm):
    """The invariant form with (theta, theta) = 2."""

    degree = 2

    def __init__(self, lie: LieAlgebra):
        """Wrap the Gram table of the algebra."""
        self.lie = lie

    def evaluate(self, indices: Sequence[int]) -> Fraction:
        """<x_i, x_j>."""
        i, j = indices
        return self.lie.gram.get((i, j), Fraction(0))


class TracePower(InvariantForm):
    """(1/m!) sum over orderings of tr(X_1 ... X_m) in the defining representation."""

    def __init__(self, lie: LieAlgebra, degree: int):
        """
        Build the symmetrized trace of a given degree.

        Raises:
            UsageError: For exceptional types or degree below 2
        """
        if degree < 2:
            raise UsageError(f"trace invariants need degree >= 2, got {degree}")
        self.lie = lie
        self.degree = degree
        self.representation = DefiningRepresentation(lie)
        self._memo: Dict[Tuple[int, ...], Fraction] = {}

    def evaluate(self, indices: Sequence[int]) -> Fraction:
        """Symmetrized trace on basis elements."""
        key = tuple(sorted(indices))
        value = self._memo.get(key)
        if value is None:
            weight = [0] * self.lie.rank
            for i in key:
                for k, c in enumerate(self.lie.weights[i]):
                    weight[k] += c
            if any(weight):
                value = Fraction(0)
            else:
                matrices = self.representation.matrices
                total = Fraction(0)
                for order in set(permutations(key)):
                    product = matrices[order[0]]
                    for i in order[1:]:
                        product = product.matmul(matrices[i])
                    total += to_fraction(trace(product))
                # set() drops repeated orderings; each appears prod(mult!) times
                multiplicity = 1
                for i in set(key):
                    multiplicity *= factorial(key.count(i))
                value = total * multiplicity / factorial(self.degree)
            self._memo[key] = value
        return value


def invariant_form(lie: LieAlgebra, degree: int) -> InvariantForm:
    """The built-in invariant of a given degree: the normalized form or a trace power."""
    if degree == 2:
        return NormalizedForm(lie)
    return TracePower(lie, degree)


def check_form_invariance(form: InvariantForm) -> dict:
    """
    Check P([x, y_1], y_2, ...) + ... + P(y_1, ..., [x, y_m]) = 0.

    x runs over the simple raising and lowering elements, which generate g;
    the y's run over all multisets of basis elements.

    Raises:
        CheckFailure: With the first failing tuple
    """
    lie = form.lie
    generators = [lie.simple_raising(i) for i in range(lie.rank)] + [
        lie.simple_lowering(i) for i in range(lie.rank)
    ]
    checked = 0
    for indices in combinations_with_replacement(range(lie.dim), form.degree):
        weight = [0] * lie.rank
        for i in indices:
            for k, c in enumerate(lie.weights[i]):
                weight[k] += c
        for x in generators:
            total_weight = [a + b for a, b in zip(weight, lie.weights[x])]
            if any(total_weight):
                continue
            total = Fraction(0)
            for position in range(form.degree):
                args = [{i: Fraction(1)} for i in indices]
                args[position] = lie.bracket({x: Fraction(1)}, args[position])
                if args[position]:
                    total += form(*args)
            checked += 1
            if total != 0:
                raise CheckFailure(
                    "invariant form is not ad-invariant",
                    {
                        "x": lie.basis_name(x),
                        "arguments": [lie.basis_name(i) for i in indices],
                        "value": str(total),
                    },
                )
    return {"degree": form.degree, "checked": checked}
