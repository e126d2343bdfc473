"""Checks run by the cdsw CLI, and their grouping into verification suites.

Every check is a ``check_handler`` function of ``(type_letter, rank, **params)``
returning ``(details, info)``; the decorator turns it into a Report.
"""

from collections import Counter
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from cdsw_algebra.abelian import (
    abelian_to_json,
    check_ideal_axioms,
    check_weight_identity,
    dimension_series,
    enumerate_abelian_ideals,
    xi_o_and_bounds,
    zeta_map,
)
from cdsw_algebra.affweyl import (
    aff2_to_json,
    check_alcove_geometry,
    check_all_rho_identities,
    check_d_degree_vanishing,
    d_degree,
    enumerate_aff2,
    from_word,
    length_series,
)
from cdsw_algebra.cartan import build_root_system
from cdsw_algebra.chevalley import chevalley_lie_algebra
from cdsw_algebra.defining import check_form_invariance, invariant_form
from cdsw_algebra.loopcocycle import check_closed_form, cocycle_check
from cdsw_algebra.quotient import (
    QuotientAlgebra,
    graded_invariant_series,
    kostant_quotient_check,
    verify_part_i,
)
from cdsw_shared.cache import ResultCache
from cdsw_shared.constants import (
    DUAL_COXETER_TABLE,
    MAX_SLOTS_PER_COPY,
    AlgebraKind,
    CheckStatus,
    Suite,
)
from cdsw_shared.errors import CheckFailure, ResourceBudgetExceeded
from cdsw_shared.models import Budget, Report
from cdsw_shared.observability import ObservabilityContext, check_handler, log_event

# types where the S-power statements are theorems
CLASSICAL = "ABCD"

# Jacobi and form checks of the Chevalley basis are cubic in dim g
MAX_VALIDATED_DIM = 60


# shared state --------------------------------------------------------------------


@lru_cache(maxsize=None)
def aff2_elements(type_letter: str, rank: int):
    """Aff'_2(W) of a type, memoized."""
    return enumerate_aff2(build_root_system(type_letter, rank))


@lru_cache(maxsize=None)
def abelian_ideals(type_letter: str, rank: int):
    """Abelian ideals of a type, memoized."""
    return enumerate_abelian_ideals(build_root_system(type_letter, rank))


@lru_cache(maxsize=None)
def get_quotient(
    type_letter: str,
    rank: int,
    kind: str,
    max_block_dim: int,
    cache_dir: Optional[str],
    use_cache: bool,
) -> QuotientAlgebra:
    """
    One shared QuotientAlgebra per (type, algebra, budget, cache).

    Raises:
        ResourceBudgetExceeded: If g does not fit the bitmask monomials
    """
    lie = chevalley_lie_algebra(type_letter, rank)
    if lie.dim > MAX_SLOTS_PER_COPY:
        raise ResourceBudgetExceeded(
            f"dim g = {lie.dim} exceeds {MAX_SLOTS_PER_COPY} exterior slots",
            {f"{type_letter}{rank}:dim_g": lie.dim},
        )
    budget = Budget(max_block_dim=max_block_dim, use_cache=use_cache)
    cache = ResultCache(cache_dir) if use_cache else None
    return QuotientAlgebra(lie, kind, budget=budget, cache=cache)


def _quotient(type_letter: str, rank: int, kind: AlgebraKind, params: dict) -> QuotientAlgebra:
    return get_quotient(
        type_letter,
        rank,
        kind.value,
        params["max_block_dim"],
        params.get("cache_dir"),
        params.get("use_cache", True),
    )


# combinatorial checks ------------------------------------------------------------


@check_handler("cartan")
def cartan_check(type_letter: str, rank: int) -> Tuple[dict, bool]:
    """Root data, dual Coxeter number against the table, Chevalley basis identities."""
    rs = build_root_system(type_letter, rank)
    rs.validate()
    expected = DUAL_COXETER_TABLE[rs.type_letter](rs.rank)
    if rs.dual_coxeter_number != expected:
        raise CheckFailure(
            f"dual Coxeter number {rs.dual_coxeter_number}, table says {expected}",
            {"computed": rs.dual_coxeter_number, "table": expected},
        )
    lie = chevalley_lie_algebra(rs)
    validated = lie.dim <= MAX_VALIDATED_DIM
    if validated:
        lie.validate()
    return {
        "dim": lie.dim,
        "positive_roots": len(rs.positive_roots),
        "highest_root": list(rs.highest_root),
        "comarks": list(rs.comarks),
        "h": rs.dual_coxeter_number,
        "exponents": rs.exponents,
        "invariant_degrees": rs.invariant_degrees,
        "chevalley_validated": validated,
        "content_hash": lie.content_hash,
    }, False


@check_handler("aff2")
def aff2_check(type_letter: str, rank: int, list_elements: bool = False) -> Tuple[dict, bool]:
    """#Aff'_2(W) = 2^l, with the length series."""
    rs = build_root_system(type_letter, rank)
    elements = aff2_elements(rs.type_letter, rs.rank)
    if len(elements) != 2**rs.rank:
        raise CheckFailure(
            f"{len(elements)} alcoves in 2C, expected {2 ** rs.rank}",
            {"count": len(elements), "expected": 2**rs.rank},
        )
    details = {"count": len(elements), "length_series": length_series(elements)}
    if list_elements:
        details["export"] = aff2_to_json(rs, elements)
    return details, False


@check_handler("alcove_geometry")
def alcove_geometry_check(type_letter: str, rank: int) -> Tuple[dict, bool]:
    """Three length computations agree; the maps are isometries preserving volume."""
    elements = aff2_elements(type_letter, rank)
    return check_alcove_geometry(elements), False


@check_handler("rho_identities")
def rho_identities_check(type_letter: str, rank: int) -> Tuple[dict, bool]:
    """rho_hat - u^-1 rho_hat = l(u) delta + (root lattice) on Aff'_2(W)."""
    elements = aff2_elements(type_letter, rank)
    return check_all_rho_identities(elements), False


@check_handler("d_degree_vanishing")
def d_degree_check(type_letter: str, rank: int) -> Tuple[dict, bool]:
    """d^w_{u,v} = 0 whenever l(w) = l(u) + l(v) inside Aff'_2(W)."""
    elements = aff2_elements(type_letter, rank)
    return check_d_degree_vanishing(elements), False


@check_handler("abelian")
def abelian_check(type_letter: str, rank: int, list_ideals: bool = False) -> Tuple[dict, bool]:
    """Peterson's count, zeta, the weight identity and the bound on Xi°."""
    rs = build_root_system(type_letter, rank)
    ideals = abelian_ideals(rs.type_letter, rs.rank)
    elements = aff2_elements(rs.type_letter, rs.rank)
    details = check_ideal_axioms(rs, ideals)
    lengths = length_series(elements)
    if details["dimension_series"] != lengths:
        raise CheckFailure(
            "dimensions of ideals and lengths in Aff'_2 differ",
            {"dimension_series": details["dimension_series"], "length_series": lengths},
        )
    mapping = zeta_map(rs, ideals, elements)
    check_weight_identity(rs, mapping)
    bounds = xi_o_and_bounds(rs, ideals, mapping)
    details.update(bounds.to_json())
    if list_ideals:
        details["export"] = abelian_to_json(rs, ideals, mapping, bounds)
    return details, False


@check_handler("zeta")
def zeta_check(type_letter: str, rank: int) -> Tuple[dict, bool]:
    """The correspondence between abelian ideals and Aff'_2(W)."""
    rs = build_root_system(type_letter, rank)
    ideals = abelian_ideals(rs.type_letter, rs.rank)
    mapping = zeta_map(rs, ideals, aff2_elements(rs.type_letter, rs.rank))
    return {
        "count": len(mapping),
        "zeta": [
            {
                "ideal": [list(r) for r in ideal.root_vectors(rs)],
                "word": list(w.word),
                "length": w.length,
            }
            for ideal, w in mapping.items()
        ],
    }, False


@check_handler("ddegree")
def ddegree_value(
    type_letter: str, rank: int, u: List[int], v: List[int], w: List[int]
) -> Tuple[dict, bool]:
    """d^w_{u,v} for three words."""
    rs = build_root_system(type_letter, rank)
    elements = [from_word(rs, word) for word in (u, v, w)]
    value = d_degree(*elements)
    return {
        "d_degree": value,
        "lengths": [e.length for e in elements],
    }, False


# algebraic checks ----------------------------------------------------------------


@check_handler("part_i")
def part_i_check(type_letter: str, rank: int, **params) -> Tuple[dict, bool]:
    """Invariants of A are the powers of S, up to a total degree."""
    quotient = _quotient(type_letter, rank, AlgebraKind.A, params)
    max_degree = params["max_total_degree"]
    if type_letter not in CLASSICAL:
        dims = {
            f"{p},{n - p}": quotient.invariant_dim(p, n - p)
            for n in range(max_degree + 1)
            for p in range(n + 1)
        }
        return {"partial": True, "invariant_dims": dims}, True
    return verify_part_i(quotient, max_degree), False


@check_handler("s_power_order")
def s_power_check(type_letter: str, rank: int, **params) -> Tuple[dict, bool]:
    """Least k with S^k = 0 in A, expected to be h."""
    quotient = _quotient(type_letter, rank, AlgebraKind.A, params)
    h = quotient.lie.rs.dual_coxeter_number
    max_k = params.get("max_k") or params["max_total_degree"] // 2
    order = quotient.s_power_order(max_k)
    details = {"s_power_order": order, "h": h, "max_k": max_k}
    if order is not None and order < h and type_letter in CLASSICAL:
        raise CheckFailure(f"S^{order} vanishes before S^h", {"order": order, "h": h})
    if order is None:
        # only S^1..S^max_k are known to be nonzero
        return details, True
    if type_letter in CLASSICAL and order != h:
        raise CheckFailure(f"S-power order {order} differs from h = {h}", {"order": order, "h": h})
    return details, type_letter not in CLASSICAL


@check_handler("invariant_dim")
def invariant_dim_value(
    type_letter: str, rank: int, algebra: str, p: int, q: int, **params
) -> Tuple[dict, bool]:
    """Invariant and quotient dimensions of one bidegree."""
    quotient = _quotient(type_letter, rank, AlgebraKind(algebra), params)
    return {
        "invariant_dim": quotient.invariant_dim(p, q),
        "quotient_dim": quotient.quotient_dim(p, q),
    }, False


@check_handler("invariant_series")
def invariant_series_check(type_letter: str, rank: int, **params) -> Tuple[dict, bool]:
    """
    Invariants of B by bidegree against the abelian ideals.

    Off-diagonal bidegrees carry none and (p, p) carries one per ideal of
    dimension p; the total is 2^l once every bidegree is covered.
    """
    quotient = _quotient(type_letter, rank, AlgebraKind.B, params)
    max_degree = params["max_total_degree"]
    result = graded_invariant_series(quotient, max_degree)
    ideal_series = dimension_series(abelian_ideals(type_letter, rank))
    for (p, q), dim in sorted(result.bigraded.items()):
        expected = 0 if p != q else (ideal_series[p] if p < len(ideal_series) else 0)
        if dim != expected:
            raise CheckFailure(
                f"dim (B^{{{p},{q}}})^g = {dim}, expected {expected}",
                {"p": p, "q": q, "actual": dim, "expected": expected},
            )
    complete = max_degree >= 2 * (len(ideal_series) - 1)
    if complete and result.total != 2**rank:
        raise CheckFailure(
            f"total invariant dimension {result.total} differs from 2^l",
            {"series": result.series, "expected_total": 2**rank},
        )
    return {
        "series": result.series,
        "total": result.total,
        "complete": complete,
        "bigraded": {f"{p},{q}": d for (p, q), d in sorted(result.bigraded.items())},
    }, False


@check_handler("quotient_consistency")
def quotient_consistency_check(type_letter: str, rank: int, **params) -> Tuple[dict, bool]:
    """A has no more invariants than B; blocked and unblocked ranks agree on small components."""
    qa = _quotient(type_letter, rank, AlgebraKind.A, params)
    qb = _quotient(type_letter, rank, AlgebraKind.B, params)
    max_degree = min(params["max_total_degree"], 4)
    compared = 0
    for n in range(max_degree + 1):
        for p in range(n + 1):
            a, b = qa.invariant_dim(p, n - p), qb.invariant_dim(p, n - p)
            compared += 1
            if a > b:
                raise CheckFailure(
                    "A has more invariants than B",
                    {"p": p, "q": n - p, "A": a, "B": b},
                )
    unblocked = 0
    if qa.lie.dim <= 8:
        for n in range(min(max_degree, 3) + 1):
            for p in range(n + 1):
                blocked = qa.component_basis(p, n - p).rank
                full = qa.unblocked_rank(p, n - p)
                unblocked += 1
                if blocked != full:
                    raise CheckFailure(
                        "blocked and unblocked ranks differ",
                        {"p": p, "q": n - p, "blocked": blocked, "unblocked": full},
                    )
    return {"compared_bidegrees": compared, "unblocked_checks": unblocked}, False


@check_handler("kostant_quotient")
def kostant_check(type_letter: str, rank: int, **params) -> Tuple[dict, bool]:
    """wedge(g)/<d(g)> against the abelian-ideal decomposition."""
    quotient = _quotient(type_letter, rank, AlgebraKind.KOSTANT, params)
    return kostant_quotient_check(quotient, abelian_ideals(type_letter, rank)), False


# cocycle checks ------------------------------------------------------------------


@check_handler("form_invariance")
def form_invariance_check(type_letter: str, rank: int) -> Tuple[dict, bool]:
    """ad-invariance of the normalized form and, for classical types, the cubic trace."""
    lie = chevalley_lie_algebra(type_letter, rank)
    degrees = [2] + ([3] if type_letter in CLASSICAL else [])
    results = [check_form_invariance(invariant_form(lie, m)) for m in degrees]
    return {"forms": results}, False


@check_handler("cocycle_closed_form")
def closed_form_check(type_letter: str, rank: int, max_power: int = 5) -> Tuple[dict, bool]:
    """phi(x t^n, y t^-n) = -2n <x, y>."""
    return check_closed_form(chevalley_lie_algebra(type_letter, rank), max_power), False


@check_handler("cocycle")
def cocycle_relative_check(
    type_letter: str, rank: int, d: int = 1, samples: int = 100, seed: int = 0
) -> Tuple[dict, bool]:
    """
    Relative cocycle identities of phi_P on random samples.

    Constant-loop values for d >= 2 make the report info, with the witness in details.
    """
    lie = chevalley_lie_algebra(type_letter, rank)
    details = cocycle_check(lie, d, samples, seed)
    return details, details["constant_loop_violations"] > 0


# cross-module --------------------------------------------------------------------


@check_handler("poincare_series")
def poincare_check(type_letter: str, rank: int, **params) -> Tuple[dict, bool]:
    """Invariants of B, lengths in Aff'_2(W) and dimensions of ideals give one series."""
    quotient = _quotient(type_letter, rank, AlgebraKind.B, params)
    max_degree = params["max_total_degree"]
    lengths = length_series(aff2_elements(type_letter, rank))
    dims = dimension_series(abelian_ideals(type_letter, rank))
    computed = graded_invariant_series(quotient, max_degree).series
    width = max_degree // 2 + 1

    def pad(series: List[int]) -> List[int]:
        return (list(series) + [0] * width)[:width]

    complete = width >= len(lengths)
    if not (pad(computed) == pad(lengths) == pad(dims)):
        raise CheckFailure(
            "Poincare series disagree",
            {"invariants": computed, "lengths": lengths, "ideals": dims},
        )
    return {"series": lengths, "invariants": computed, "complete": complete}, not complete


# suites --------------------------------------------------------------------------


def _combinatorial(type_letter: str, rank: int, options: dict) -> List[Report]:
    return [
        cartan_check(type_letter, rank),
        aff2_check(type_letter, rank),
        alcove_geometry_check(type_letter, rank),
        rho_identities_check(type_letter, rank),
        d_degree_check(type_letter, rank),
        abelian_check(type_letter, rank),
    ]


def _algebraic(type_letter: str, rank: int, options: dict) -> List[Report]:
    params = {
        "max_total_degree": options["max_total_degree"],
        "max_block_dim": options["max_block_dim"],
        "cache_dir": options.get("cache_dir"),
        "use_cache": options.get("use_cache", True),
    }
    return [
        part_i_check(type_letter, rank, **params),
        s_power_check(type_letter, rank, **params),
        invariant_series_check(type_letter, rank, **params),
        quotient_consistency_check(type_letter, rank, **params),
        kostant_check(type_letter, rank, **params),
    ]


def _cocycle(type_letter: str, rank: int, options: dict) -> List[Report]:
    samples = options.get("samples", 100)
    seed = options.get("seed", 0)
    reports = [
        form_invariance_check(type_letter, rank),
        closed_form_check(type_letter, rank),
        cocycle_relative_check(type_letter, rank, d=1, samples=samples, seed=seed),
    ]
    if type_letter in CLASSICAL:
        reports.append(cocycle_relative_check(type_letter, rank, d=2, samples=samples, seed=seed))
    return reports


def _full(type_letter: str, rank: int, options: dict) -> List[Report]:
    reports = (
        _combinatorial(type_letter, rank, options)
        + _algebraic(type_letter, rank, options)
        + _cocycle(type_letter, rank, options)
    )
    reports.append(
        poincare_check(
            type_letter,
            rank,
            max_total_degree=options["max_total_degree"],
            max_block_dim=options["max_block_dim"],
            cache_dir=options.get("cache_dir"),
            use_cache=options.get("use_cache", True),
        )
    )
    return reports


SUITES: Dict[Suite, Callable[[str, int, dict], List[Report]]] = {
    Suite.COMBINATORIAL: _combinatorial,
    Suite.ALGEBRAIC: _algebraic,
    Suite.COCYCLE: _cocycle,
    Suite.FULL: _full,
}


def summarize(suite: Suite, type_letter: str, rank: int, reports: List[Report]) -> Report:
    """Aggregate report of a suite: fails if any member failed."""
    counts = Counter(r.status for r in reports)
    failed = [r.check for r in reports if r.failed]
    return Report(
        check=f"suite:{suite.value}",
        type=type_letter,
        rank=rank,
        params={"suite": suite.value},
        status=CheckStatus.FAIL if failed else CheckStatus.PASS,
        details={"checks": [r.check for r in reports], "statuses": dict(counts)},
        witness={"failed": failed} if failed else None,
        wall_time_ms=sum(r.wall_time_ms for r in reports),
    )


def verify_suite(suite: Suite | str, type_letter: str, rank: int, **options) -> List[Report]:
    """
    Run a suite and append its aggregate report.

    Args:
        suite: combinatorial, algebraic, cocycle or full
        type_letter: Cartan type
        rank: Rank
        **options: max_total_degree, max_block_dim, cache_dir, use_cache, seed, samples

    Returns:
        Member reports followed by the aggregate
    """
    suite = Suite(suite)
    context = {"suite": suite.value, "type": type_letter, "rank": rank}
    with ObservabilityContext("verify_suite", context):
        reports = SUITES[suite](type_letter, rank, options)
    aggregate = summarize(suite, type_letter, rank, reports)
    log_event("suite_completed", {**context, "status": aggregate.status})
    return reports + [aggregate]
