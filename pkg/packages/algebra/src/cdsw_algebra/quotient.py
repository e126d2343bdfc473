"""Quotients of the exterior algebra by ideals generated by adjoint copies.

Three algebras are handled:
- ``A`` = R / <C1 + C2 + C3>
- ``B`` = R / <C1 + C2>
- ``KostantSingle`` = wedge(g) / <d(g)>, the single-copy quotient

An ideal component of bidegree (p, q) is spanned by c_i(x) ^ m with m running
over monomials of the complementary bidegree. The span is row-reduced one
weight block at a time; canonical forms use the non-pivot monomials in mask
order as the complement.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from cdsw_shared.cache import ResultCache
from cdsw_shared.constants import AlgebraKind
from cdsw_shared.errors import CheckFailure, ResourceBudgetExceeded, UsageError
from cdsw_shared.models import BlockRecord, Budget, ComponentRecord
from cdsw_shared.observability import ObservabilityContext, log_event, log_metrics

from .abelian import AbelianIdeal, enumerate_abelian_ideals
from .cartan import Root
from .chevalley import LieAlgebra
from .exterior import ExtElement, ExteriorAlgebra, wedge_sign
from .linalg import Echelon, echelon, rank

# copies generating each ideal
_COPIES = {
    AlgebraKind.A: (1, 2, 3),
    AlgebraKind.B: (1, 2),
    AlgebraKind.KOSTANT: (1,),
}

# bidegree of c_i(x)
_GENERATOR_BIDEGREE = {1: (2, 0), 2: (0, 2), 3: (1, 1)}


@dataclass
class WeightBlock:
    """Row-reduced ideal span inside one weight space of R^{p,q}."""

    weight: Root
    masks: Tuple[int, ...]
    echelon: Echelon
    _columns: Dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._columns = {m: i for i, m in enumerate(self.masks)}

    @property
    def size(self) -> int:
        """Number of monomials in the block."""
        return len(self.masks)

    @property
    def rank(self) -> int:
        """Rank of the ideal inside the block."""
        return self.echelon.rank

    @property
    def quotient_dim(self) -> int:
        """Dimension of the block of the quotient."""
        return self.size - self.rank

    @property
    def complement(self) -> List[int]:
        """Non-pivot masks, ascending."""
        pivots = set(self.echelon.pivots)
        return [m for i, m in enumerate(self.masks) if i not in pivots]

    def column(self, mask: int) -> int:
        """Column index of a monomial."""
        return self._columns[mask]

    def to_record(self) -> BlockRecord:
        """Serializable form of the block."""
        return BlockRecord(
            weight=list(self.weight),
            size=self.size,
            rank=self.rank,
            denominator=str(self.echelon.denominator),
            pivots=list(self.echelon.pivots),
            rows=[[(c, str(v)) for c, v in sorted(row.items())] for row in self.echelon.rows],
        )

    @classmethod
    def from_record(cls, record: BlockRecord, masks: Sequence[int]) -> "WeightBlock":
        """Rebuild a block from its record and the recomputed monomial list."""
        return cls(
            weight=tuple(record.weight),
            masks=tuple(masks),
            echelon=Echelon(
                ncols=len(masks),
                denominator=int(record.denominator),
                pivots=tuple(record.pivots),
                rows=tuple({int(c): int(v) for c, v in row} for row in record.rows),
            ),
        )


@dataclass
class ComponentBasis:
    """Ideal component of one bidegree, block by block."""

    p: int
    q: int
    blocks: Dict[Root, WeightBlock] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        """Sum of the block ranks (computed blocks only)."""
        return sum(b.rank for b in self.blocks.values())

    @property
    def size(self) -> int:
        """Sum of the block sizes (computed blocks only)."""
        return sum(b.size for b in self.blocks.values())

    @property
    def quotient_dim(self) -> int:
        """Dimension of the quotient over the computed blocks."""
        return self.size - self.rank


@dataclass(frozen=True)
class Reduction:
    """Canonical coordinates of an element modulo an ideal component."""

    coordinates: Dict[int, Fraction]
    is_zero: bool

    def to_element(self, n: int) -> ExtElement:
        """The canonical representative."""
        return ExtElement(n, self.coordinates)


class QuotientAlgebra:
    """One of the quotient algebras A, B or KostantSingle of a Lie algebra."""

    def __init__(
        self,
        lie: LieAlgebra,
        kind: AlgebraKind | str,
        budget: Optional[Budget] = None,
        cache: Optional[ResultCache] = None,
    ):
        """
        Set up the quotient.

        Args:
            lie: Chevalley-basis Lie algebra
            kind: A, B or KostantSingle
            budget: Resource limits (defaults apply when None)
            cache: On-disk cache of component records (None disables caching)
        """
        try:
            self.kind = AlgebraKind(kind)
        except ValueError:
            raise UsageError(f"unknown algebra {kind!r}") from None
        self.lie = lie
        self.ext = ExteriorAlgebra(lie)
        self.budget = budget or Budget()
        self.cache = cache if (cache is not None and self.budget.use_cache) else None
        self.copies = _COPIES[self.kind]
        self._generators: Optional[Dict[int, List[Tuple[Root, ExtElement]]]] = None
        self._components: Dict[Tuple[int, int], ComponentBasis] = {}
        self._records: Dict[Tuple[int, int], ComponentRecord] = {}
        self._dirty: set = set()
        self._content_hash = lie.content_hash

    @property
    def name(self) -> str:
        """Algebra name as used in cache keys."""
        return self.kind.value

    # generators ----------------------------------------------------------------

    @property
    def generators(self) -> Dict[int, List[Tuple[Root, ExtElement]]]:
        """c_i(x_beta) for every copy i and basis element beta, with weights."""
        if self._generators is None:
            gens: Dict[int, List[Tuple[Root, ExtElement]]] = {}
            for copy in self.copies:
                gens[copy] = [
                    (self.lie.weights[b], self.ext.c_embed(copy, {b: Fraction(1)}))
                    for b in range(self.lie.dim)
                ]
            self._generators = gens
        return self._generators

    def _check_bidegree(self, p: int, q: int) -> None:
        if p < 0 or q < 0:
            raise UsageError(f"bidegree must be nonnegative, got ({p},{q})")
        if self.kind == AlgebraKind.KOSTANT and q != 0:
            raise UsageError("the single-copy quotient only has bidegrees (p, 0)")

    # cache ---------------------------------------------------------------------

    def _record(self, p: int, q: int) -> ComponentRecord:
        key = (p, q)
        record = self._records.get(key)
        if record is None:
            rs = self.lie.rs
            if self.cache is not None:
                record = self.cache.get(
                    rs.type_letter, rs.rank, self.name, p, q, self._content_hash
                )
            if record is None:
                record = ComponentRecord(
                    type=rs.type_letter,
                    rank=rs.rank,
                    algebra=self.kind,
                    p=p,
                    q=q,
                    content_hash=self._content_hash,
                )
            self._records[key] = record
        return record

    def flush(self) -> None:
        """Write every modified component record to the cache."""
        if self.cache is None:
            self._dirty.clear()
            return
        for key in sorted(self._dirty):
            self.cache.put(self._records[key])
        self._dirty.clear()

    # components ----------------------------------------------------------------

    def _component(self, p: int, q: int) -> ComponentBasis:
        key = (p, q)
        if key not in self._components:
            self._components[key] = ComponentBasis(p=p, q=q)
        return self._components[key]

    def block(self, p: int, q: int, weight: Root) -> WeightBlock:
        """
        Row-reduced ideal span in the weight-``weight`` block of R^{p,q}.

        Raises:
            ResourceBudgetExceeded: If the block has more monomials than the budget
        """
        self._check_bidegree(p, q)
        weight = tuple(weight)
        component = self._component(p, q)
        if weight in component.blocks:
            return component.blocks[weight]

        masks = self.ext.monomials(p, q, weight)
        label = f"{self.name}({p},{q})@{ComponentRecord.weight_key(weight)}"
        if len(masks) > self.budget.max_block_dim:
            raise ResourceBudgetExceeded(
                f"block {label} has {len(masks)} monomials, budget {self.budget.max_block_dim}",
                {label: len(masks)},
            )

        record = self._record(p, q)
        key = ComponentRecord.weight_key(weight)
        stored = record.blocks.get(key)
        if stored is not None and stored.size == len(masks):
            block = WeightBlock.from_record(stored, masks)
        else:
            block = self._eliminate(p, q, weight, masks)
            record.blocks[key] = block.to_record()
            self._dirty.add((p, q))
        component.blocks[weight] = block
        return block

    def _eliminate(self, p: int, q: int, weight: Root, masks: List[int]) -> WeightBlock:
        columns = {m: i for i, m in enumerate(masks)}
        context = {
            "type": self.lie.rs.type_letter,
            "rank": self.lie.rs.rank,
            "algebra": self.name,
            "bidegree": [p, q],
            "weight": list(weight),
        }
        with ObservabilityContext("block_elimination", context) as obs:
            rows: List[Dict[int, Fraction]] = []
            if masks:
                for copy in self.copies:
                    gp, gq = _GENERATOR_BIDEGREE[copy]
                    cp, cq = p - gp, q - gq
                    if cp < 0 or cq < 0:
                        continue
                    for gen_weight, generator in self.generators[copy]:
                        need = tuple(a - b for a, b in zip(weight, gen_weight))
                        for m in self.ext.monomials(cp, cq, need):
                            row: Dict[int, Fraction] = {}
                            for gm, gc in generator.terms.items():
                                if gm & m:
                                    continue
                                col = columns[gm | m]
                                value = row.get(col, Fraction(0)) + wedge_sign(gm, m) * gc
                                if value:
                                    row[col] = value
                                else:
                                    row.pop(col, None)
                            if row:
                                rows.append(row)
            reduced = echelon(rows, len(masks))
        log_metrics(
            "block_reduced",
            {
                "duration_ms": obs.duration_ms,
                "size": len(masks),
                "spanning_rows": len(rows),
                "rank": reduced.rank,
            },
            context,
        )
        return WeightBlock(weight=weight, masks=tuple(masks), echelon=reduced)

    def component_basis(self, p: int, q: int) -> ComponentBasis:
        """
        Every weight block of the ideal component of bidegree (p, q).

        Raises:
            ResourceBudgetExceeded: If some block exceeds the budget
        """
        self._check_bidegree(p, q)
        try:
            for weight in self.ext.component_weights(p, q):
                self.block(p, q, weight)
        finally:
            self.flush()
        return self._component(p, q)

    def unblocked_rank(self, p: int, q: int) -> int:
        """Rank of the whole ideal component from one elimination without blocking."""
        self._check_bidegree(p, q)
        masks = self.ext.monomials(p, q)
        columns = {m: i for i, m in enumerate(masks)}
        rows: List[Dict[int, Fraction]] = []
        for copy in self.copies:
            gp, gq = _GENERATOR_BIDEGREE[copy]
            for _, generator in self.generators[copy]:
                for m in self.ext.monomials(p - gp, q - gq):
                    product = self.ext.wedge(generator, ExtElement(self.ext.n, {m: Fraction(1)}))
                    if product:
                        rows.append({columns[k]: c for k, c in product.terms.items()})
        return rank(rows, len(masks))

    # reduction -----------------------------------------------------------------

    def reduce(self, elem: ExtElement, p: int, q: int) -> Reduction:
        """
        Canonical coordinates of ``elem`` modulo the ideal component (p, q).

        Raises:
            UsageError: If elem has a term outside bidegree (p, q)
        """
        self._check_bidegree(p, q)
        if not elem:
            return Reduction(coordinates={}, is_zero=True)
        for mask in elem.terms:
            if self.ext.bidegree(mask) != (p, q):
                raise UsageError(
                    f"element is not homogeneous of bidegree ({p},{q}): "
                    f"term of bidegree {self.ext.bidegree(mask)}"
                )
        coordinates: Dict[int, Fraction] = {}
        try:
            for weight, part in self.ext.weight_components(elem).items():
                block = self.block(p, q, weight)
                vector = {block.column(m): c for m, c in part.terms.items()}
                for col, c in block.echelon.reduce(vector).items():
                    coordinates[block.masks[col]] = c
        finally:
            self.flush()
        ordered = dict(sorted(coordinates.items()))
        return Reduction(coordinates=ordered, is_zero=not ordered)

    # invariants ----------------------------------------------------------------

    def invariant_dim(self, p: int, q: int) -> int:
        """
        Dimension of the g-invariants of the quotient component (p, q).

        Invariants have weight zero, so only the weight-zero block is used; they
        are the joint kernel of the simple raising and lowering operators.
        """
        self._check_bidegree(p, q)
        record = self._record(p, q)
        if record.invariant_dim is not None:
            return record.invariant_dim

        rank_ = self.lie.rank
        zero = tuple(0 for _ in range(rank_))
        try:
            if p > self.ext.n or q > self.ext.n:
                dim = 0
            else:
                source = self.block(p, q, zero)
                sources = source.complement
                if not sources:
                    dim = 0
                else:
                    dim = self._kernel_dim(p, q, sources)
            record.invariant_dim = dim
            self._dirty.add((p, q))
        finally:
            self.flush()
        log_event(
            "invariant_dim_computed",
            {"algebra": self.name, "bidegree": [p, q], "dim": dim},
            level="DEBUG",
        )
        return dim

    def _kernel_dim(self, p: int, q: int, sources: List[int]) -> int:
        offsets: Dict[Tuple[int, int], int] = {}
        rows: List[Dict[int, Fraction]] = [dict() for _ in sources]
        offset = 0
        for i in range(self.lie.rank):
            for x_index in (self.lie.simple_raising(i), self.lie.simple_lowering(i)):
                target_weight = self.lie.weights[x_index]
                target = self.block(p, q, target_weight)
                offsets[(i, x_index)] = offset
                x = {x_index: Fraction(1)}
                for r, mask in enumerate(sources):
                    image = self.ext.diag_act(x, ExtElement(self.ext.n, {mask: Fraction(1)}))
                    if not image:
                        continue
                    vector = {target.column(m): c for m, c in image.terms.items()}
                    for col, c in target.echelon.reduce(vector).items():
                        rows[r][offset + col] = c
                offset += target.size
        return len(sources) - rank(rows, offset)

    def quotient_dim(self, p: int, q: int) -> int:
        """Dimension of the quotient component (p, q) over all weights."""
        return self.component_basis(p, q).quotient_dim

    def weight_multiplicities(self, p: int, q: int) -> Counter:
        """Weight multiset of the quotient component (p, q)."""
        component = self.component_basis(p, q)
        return Counter({w: b.quotient_dim for w, b in component.blocks.items() if b.quotient_dim})

    # S ---------------------------------------------------------------------------

    def s_power(self, k: int) -> ExtElement:
        """S^k in R."""
        return self.ext.power(self.ext.build_S(), k)

    def s_power_order(self, max_k: int) -> Optional[int]:
        """Least k <= max_k with S^k = 0 in the quotient, or None."""
        s = self.ext.build_S()
        power = self.ext.one()
        for k in range(1, max_k + 1):
            power = self.ext.wedge(power, s)
            if self.reduce(power, k, k).is_zero:
                log_event("s_power_vanishes", {"algebra": self.name, "k": k}, level="DEBUG")
                return k
        return None


# verification workflows ----------------------------------------------------------


def verify_part_i(quotient: QuotientAlgebra, max_total_degree: int) -> dict:
    """
    Check that the invariants of A are spanned by powers of S up to a total degree.

    Off-diagonal components carry no invariants, and the (k, k) component
    carries exactly the line of S^k while S^k is nonzero.

    Raises:
        CheckFailure: Naming the first bidegree where the dimension is wrong
    """
    if quotient.kind != AlgebraKind.A:
        raise UsageError("verify_part_i runs on algebra A")
    order = quotient.s_power_order(max_total_degree // 2)
    diagonal: List[int] = []
    off_diagonal: Dict[str, int] = {}
    for n in range(max_total_degree + 1):
        for p in range(n + 1):
            q = n - p
            dim = quotient.invariant_dim(p, q)
            if p != q:
                off_diagonal[f"{p},{q}"] = dim
                if dim != 0:
                    raise CheckFailure(
                        f"invariants in off-diagonal bidegree ({p},{q})",
                        {"p": p, "q": q, "expected": 0, "actual": dim},
                    )
                continue
            expected = 1 if order is None or p < order else 0
            diagonal.append(dim)
            if dim != expected:
                raise CheckFailure(
                    f"diagonal bidegree ({p},{p}) has {dim} invariants, expected {expected}",
                    {"p": p, "q": q, "expected": expected, "actual": dim, "s_power_order": order},
                )
    return {
        "max_total_degree": max_total_degree,
        "diagonal": diagonal,
        "off_diagonal_zero": True,
        "s_power_order": order,
    }


@dataclass(frozen=True)
class InvariantSeries:
    """Invariant dimensions of B by bidegree and their half-degree series."""

    series: List[int]
    bigraded: Dict[Tuple[int, int], int]

    @property
    def total(self) -> int:
        """Sum of the series."""
        return sum(self.series)


def graded_invariant_series(quotient: QuotientAlgebra, max_total_degree: int) -> InvariantSeries:
    """
    Coefficients of sum_n dim (B^n)^g q^{n/2} up to a total degree.

    Raises:
        CheckFailure: If an odd total degree carries invariants
    """
    series = [0] * (max_total_degree // 2 + 1)
    bigraded: Dict[Tuple[int, int], int] = {}
    for n in range(max_total_degree + 1):
        total = 0
        for p in range(n + 1):
            dim = quotient.invariant_dim(p, n - p)
            bigraded[(p, n - p)] = dim
            total += dim
        if n % 2:
            if total:
                raise CheckFailure(
                    f"odd total degree {n} carries {total} invariants",
                    {"n": n, "dims": {f"{p},{n - p}": bigraded[(p, n - p)] for p in range(n + 1)}},
                )
            continue
        series[n // 2] = total
    while len(series) > 1 and series[-1] == 0:
        series.pop()
    return InvariantSeries(series=series, bigraded=bigraded)


def kostant_quotient_check(
    quotient: QuotientAlgebra, ideals: Optional[Sequence[AbelianIdeal]] = None
) -> dict:
    """
    Compare wedge(g)/<d(g)> with the abelian-ideal decomposition.

    Checks per degree p that the dimension equals sum_{|I|=p} dim V(sum I), that
    the weight multiset is symmetric under negation, and that the wedge of the
    root vectors of every abelian ideal I survives in the quotient.

    Raises:
        CheckFailure: On the first violated identity
    """
    if quotient.kind != AlgebraKind.KOSTANT:
        raise UsageError("kostant_quotient_check runs on the single-copy quotient")
    lie = quotient.lie
    rs = lie.rs
    ideals = list(ideals) if ideals is not None else enumerate_abelian_ideals(rs)

    expected = [0] * (lie.dim + 1)
    for ideal in ideals:
        expected[ideal.dim] += rs.weyl_dim(ideal.weight_sum(rs))

    dims: List[int] = []
    for p in range(lie.dim + 1):
        multiplicities = quotient.weight_multiplicities(p, 0)
        dim = sum(multiplicities.values())
        dims.append(dim)
        if dim != expected[p]:
            raise CheckFailure(
                f"degree {p} of the quotient has dimension {dim}, expected {expected[p]}",
                {"degree": p, "actual": dim, "expected": expected[p]},
            )
        for weight, mult in multiplicities.items():
            mirrored = tuple(-c for c in weight)
            if multiplicities.get(mirrored, 0) != mult:
                raise CheckFailure(
                    f"weight multiset of degree {p} is not symmetric",
                    {"degree": p, "weight": list(weight), "multiplicity": mult},
                )

    for ideal in ideals:
        mask = 0
        for r in ideal.roots:
            mask |= 1 << lie.root_index(rs.positive_roots[r])
        top = ExtElement(lie.dim, {mask: Fraction(1)})
        if quotient.reduce(top, ideal.dim, 0).is_zero:
            raise CheckFailure(
                "top wedge of an abelian ideal vanishes in the quotient",
                {"ideal": [list(rs.positive_roots[r]) for r in ideal.roots]},
            )

    return {
        "dims": dims,
        "expected": expected,
        "total": sum(dims),
        "ideals": len(ideals),
        "self_dual": True,
    }
