"""Abelian ideals of a Borel subalgebra and their affine Weyl group partners.

An abelian ideal is a set of positive roots closed upward (adding a simple
root stays inside when the sum is a root) in which no two roots sum to a root.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from cdsw_shared.errors import CheckFailure
from cdsw_shared.observability import ObservabilityContext, log_event

from .affweyl import AffWeylElt, enumerate_aff2, inversion_set, rho_defect
from .cartan import Root, RootSystem


@dataclass(frozen=True)
class AbelianIdeal:
    """An abelian ideal as sorted indices into ``RootSystem.positive_roots``."""

    roots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        """Number of root spaces."""
        return len(self.roots)

    def root_vectors(self, rs: RootSystem) -> List[Root]:
        """The roots of the ideal."""
        return [rs.positive_roots[i] for i in self.roots]

    def weight_sum(self, rs: RootSystem) -> Root:
        """Sum of the roots, the highest weight of the wedge of the ideal."""
        total = [0] * rs.rank
        for root in self.root_vectors(rs):
            for k, c in enumerate(root):
                total[k] += c
        return tuple(total)

    def is_ideal(self, rs: RootSystem) -> bool:
        """Closed under adding simple roots."""
        members = set(self.roots)
        for i in self.roots:
            root = rs.positive_roots[i]
            for j in range(rs.rank):
                raised = tuple(c + (1 if k == j else 0) for k, c in enumerate(root))
                if rs.is_positive(raised) and rs.root_index(raised) not in members:
                    return False
        return True

    def is_abelian(self, rs: RootSystem) -> bool:
        """No two roots of the ideal sum to a root."""
        roots = self.root_vectors(rs)
        for a in range(len(roots)):
            for b in range(a, len(roots)):
                if rs.is_positive(tuple(x + y for x, y in zip(roots[a], roots[b]))):
                    return False
        return True

    def to_json(self, rs: RootSystem) -> dict:
        """Root indices and root vectors."""
        return {"roots": list(self.roots), "vectors": [list(r) for r in self.root_vectors(rs)]}


def _covers(rs: RootSystem, index: int) -> List[int]:
    root = rs.positive_roots[index]
    out = []
    for j in range(rs.rank):
        raised = tuple(c + (1 if k == j else 0) for k, c in enumerate(root))
        if rs.is_positive(raised):
            out.append(rs.root_index(raised))
    return out


def enumerate_abelian_ideals(rs: RootSystem) -> List[AbelianIdeal]:
    """
    All abelian ideals of the Borel subalgebra.

    Roots are decided from the top of the root poset down. A root may join
    only if every root covering it already has, and only if it sums to a root
    with no member.

    Returns:
        Ideals sorted by (dimension, roots)
    """
    context = {"type": rs.type_letter, "rank": rs.rank}
    with ObservabilityContext("enumerate_abelian_ideals", context) as obs:
        order = sorted(
            range(len(rs.positive_roots)),
            key=lambda i: (-rs.height(rs.positive_roots[i]), i),
        )
        covers = {i: _covers(rs, i) for i in order}
        states: List[FrozenSet[int]] = [frozenset()]
        for index in order:
            root = rs.positive_roots[index]
            extended: List[FrozenSet[int]] = []
            for state in states:
                extended.append(state)
                if not all(c in state for c in covers[index]):
                    continue
                if any(
                    rs.is_positive(tuple(x + y for x, y in zip(root, rs.positive_roots[m])))
                    for m in state
                ):
                    continue
                extended.append(state | {index})
            states = extended
        ideals = sorted(
            (AbelianIdeal(tuple(sorted(s))) for s in states), key=lambda I: (I.dim, I.roots)
        )
    log_event(
        "abelian_ideals_enumerated",
        {**context, "count": len(ideals), "duration_ms": obs.duration_ms},
    )
    return ideals


def dimension_series(ideals: Sequence[AbelianIdeal]) -> List[int]:
    """Coefficients of sum_I q^|I|."""
    counts = Counter(I.dim for I in ideals)
    top = max(counts) if counts else 0
    return [counts.get(k, 0) for k in range(top + 1)]


def ideal_of(w: AffWeylElt) -> FrozenSet[int]:
    """Positive roots alpha with delta - alpha in the inversion set of w."""
    rs = w.rs
    out = set()
    for alpha, k in inversion_set(w):
        negated = tuple(-c for c in alpha)
        if k == 1 and rs.is_positive(negated):
            out.add(rs.root_index(negated))
    return frozenset(out)


def zeta_map(
    rs: RootSystem,
    ideals: Optional[Sequence[AbelianIdeal]] = None,
    elements: Optional[Sequence[AffWeylElt]] = None,
) -> Dict[AbelianIdeal, AffWeylElt]:
    """
    The correspondence I -> w matching I with the roots alpha where delta - alpha inverts w.

    Raises:
        CheckFailure: If some ideal has no partner, two share one, or a length
            differs from the dimension
    """
    ideals = list(ideals) if ideals is not None else enumerate_abelian_ideals(rs)
    elements = list(elements) if elements is not None else enumerate_aff2(rs)
    by_set: Dict[FrozenSet[int], AffWeylElt] = {}
    for w in elements:
        key = ideal_of(w)
        if key in by_set:
            raise CheckFailure(
                "two elements match the same root set",
                {"w1": list(by_set[key].word), "w2": list(w.word), "roots": sorted(key)},
            )
        by_set[key] = w

    mapping: Dict[AbelianIdeal, AffWeylElt] = {}
    for ideal in ideals:
        w = by_set.get(frozenset(ideal.roots))
        if w is None:
            raise CheckFailure(
                "no element of Aff2 matches the ideal",
                {"ideal": [list(r) for r in ideal.root_vectors(rs)]},
            )
        if w.length != ideal.dim:
            raise CheckFailure(
                "length of zeta(I) differs from dim I",
                {"ideal": list(ideal.roots), "w": list(w.word), "length": w.length},
            )
        mapping[ideal] = w
    if len(mapping) != len(elements):
        raise CheckFailure(
            "zeta is not surjective",
            {"ideals": len(mapping), "elements": len(elements)},
        )
    return mapping


def zeta(ideal: AbelianIdeal, rs: RootSystem) -> AffWeylElt:
    """The element of Aff2 matched with one ideal."""
    return zeta_map(rs)[ideal]


@dataclass(frozen=True)
class XiBounds:
    """Ideals whose roots are all non-orthogonal to theta, with the bounds on them."""

    xi_o: List[AbelianIdeal]
    max_dim: int
    dim_z: int
    dual_coxeter_number: int

    def to_json(self) -> dict:
        """Summary numbers."""
        return {
            "xi_o_count": len(self.xi_o),
            "max_dim_xi_o": self.max_dim,
            "dim_z": self.dim_z,
            "h": self.dual_coxeter_number,
        }


def xi_o_and_bounds(
    rs: RootSystem,
    ideals: Optional[Sequence[AbelianIdeal]] = None,
    mapping: Optional[Dict[AbelianIdeal, AffWeylElt]] = None,
) -> XiBounds:
    """
    Filter ideals by (alpha, theta) != 0 and bound their dimension by h - 1.

    Raises:
        CheckFailure: If some ideal in the filtered set exceeds h - 1
    """
    ideals = list(ideals) if ideals is not None else enumerate_abelian_ideals(rs)
    theta = rs.highest_root
    xi_o = [
        I for I in ideals if all(rs.inner(root, theta) != 0 for root in I.root_vectors(rs))
    ]
    h = rs.dual_coxeter_number
    max_dim = max(I.dim for I in xi_o)
    if mapping is not None:
        dim_z = max(mapping[I].length for I in xi_o)
    else:
        dim_z = max_dim
    if max_dim > h - 1 or dim_z > h - 1:
        worst = max(xi_o, key=lambda I: I.dim)
        raise CheckFailure(
            f"ideal of dimension {max_dim} exceeds h - 1 = {h - 1}",
            {"ideal": [list(r) for r in worst.root_vectors(rs)], "h": h},
        )
    return XiBounds(xi_o=xi_o, max_dim=max_dim, dim_z=dim_z, dual_coxeter_number=h)


def check_ideal_axioms(rs: RootSystem, ideals: Sequence[AbelianIdeal]) -> dict:
    """
    Every ideal is an upward-closed abelian set and there are 2^l of them.

    Raises:
        CheckFailure: On the first violation
    """
    for I in ideals:
        if not I.is_ideal(rs) or not I.is_abelian(rs):
            raise CheckFailure(
                "enumerated set is not an abelian ideal",
                {"ideal": [list(r) for r in I.root_vectors(rs)]},
            )
    if len(ideals) != 2**rs.rank:
        raise CheckFailure(
            f"{len(ideals)} abelian ideals, expected {2 ** rs.rank}",
            {"count": len(ideals), "expected": 2**rs.rank},
        )
    return {"count": len(ideals), "dimension_series": dimension_series(ideals)}


def check_weight_identity(rs: RootSystem, mapping: Dict[AbelianIdeal, AffWeylElt]) -> dict:
    """
    For u = zeta(I), rho_hat - u^-1 rho_hat = |I| delta - sum I.

    Raises:
        CheckFailure: Naming the ideal whose weight differs
    """
    for ideal, u in mapping.items():
        defect = rho_defect(u)
        expected = tuple(-c for c in ideal.weight_sum(rs))
        if defect.finite != tuple(expected) or defect.delta != ideal.dim:
            raise CheckFailure(
                "rho_hat - u^-1 rho_hat differs from |I| delta - sum I",
                {
                    "ideal": list(ideal.roots),
                    "u": list(u.word),
                    "finite": [str(c) for c in defect.finite],
                    "delta": str(defect.delta),
                },
            )
    return {"checked": len(mapping)}


def abelian_to_json(
    rs: RootSystem,
    ideals: Sequence[AbelianIdeal],
    mapping: Optional[Dict[AbelianIdeal, AffWeylElt]] = None,
    bounds: Optional[XiBounds] = None,
) -> dict:
    """JSON export: ideals, zeta images as words, and the per-type summary."""
    out = {
        "type": rs.type_letter,
        "rank": rs.rank,
        "count": len(ideals),
        "dimension_series": dimension_series(ideals),
        "ideals": [
            {
                **I.to_json(rs),
                **({"zeta": list(mapping[I].word)} if mapping is not None else {}),
            }
            for I in ideals
        ],
    }
    if bounds is not None:
        out["summary"] = bounds.to_json()
    return out
