"""Relative cocycles of the loop algebra g (x) C[t, 1/t] built from invariant forms.

For an invariant symmetric form P of degree d + 1 the 2d-cochain is

    phi_P(v_0, ..., v_{2d-1}) = sum over permutations s of sign(s) *
        Res P(v_s0, [v_s1, v_s2], ..., [v_s(2d-3), v_s(2d-2)], d v_s(2d-1))

where P is extended t-linearly and Res takes the coefficient of dt/t.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from cdsw_shared.errors import CheckFailure, UsageError
from cdsw_shared.observability import ObservabilityContext, log_event
from cdsw_shared.rational import Rational, format_rational, to_fraction

from .chevalley import LieAlgebra, LieElement
from .defining import InvariantForm, invariant_form

LoopTerm = Tuple[int, int]


@dataclass
class LoopElement:
    """Finite sum of x_i (x) t^n, keyed by (basis index, power)."""

    terms: Dict[LoopTerm, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: to_fraction(c) for k, c in self.terms.items() if c}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[LoopTerm, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __add__(self, other: "LoopElement") -> "LoopElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return LoopElement(out)

    def __mul__(self, scalar: Rational) -> "LoopElement":
        s = to_fraction(scalar)
        return LoopElement({k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def shift(self, power: int) -> "LoopElement":
        """Multiply by t^power."""
        return LoopElement({(i, n + power): c for (i, n), c in self.terms.items()})

    def is_constant(self) -> bool:
        """Whether the element lies in g (x) 1."""
        return all(n == 0 for _, n in self.terms)

    def single_terms(self) -> List["LoopElement"]:
        """One element per term."""
        return [LoopElement({k: c}) for k, c in self]

    def to_json(self, lie: LieAlgebra) -> Dict[str, str]:
        """Terms as ``"e1*t^-2": "3/2"``."""
        return {f"{lie.basis_name(i)}*t^{n}": format_rational(c) for (i, n), c in self}


def loop(x: LieElement, power: int = 0) -> LoopElement:
    """x (x) t^power."""
    return LoopElement({(i, power): c for i, c in x.items()})


def loop_bracket(lie: LieAlgebra, a: LoopElement, b: LoopElement) -> LoopElement:
    """[x t^m, y t^n] = [x, y] t^(m + n), extended bilinearly."""
    out: Dict[LoopTerm, Fraction] = {}
    for (i, m), c1 in a.terms.items():
        for (j, n), c2 in b.terms.items():
            for k, s in lie.bracket_basis(i, j).items():
                key = (k, m + n)
                out[key] = out.get(key, Fraction(0)) + c1 * c2 * s
    return LoopElement(out)


@dataclass
class OneForm:
    """Q(t) dt as a map from powers of t to coefficients."""

    coefficients: Dict[int, Fraction] = field(default_factory=dict)

    def add(self, power: int, value: Fraction) -> None:
        """Add value * t^power dt."""
        if value:
            self.coefficients[power] = self.coefficients.get(power, Fraction(0)) + value


def residue(form: OneForm) -> Fraction:
    """Coefficient of t^-1 dt."""
    return to_fraction(form.coefficients.get(-1, Fraction(0)))


def _permutation_sign(order: Sequence[int]) -> int:
    sign = 1
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                sign = -sign
    return sign


class LoopCocycle:
    """phi_P for one invariant form P on a Lie algebra."""

    def __init__(self, lie: LieAlgebra, form: InvariantForm):
        """
        Attach the cochain to a form.

        Args:
            lie: The Lie algebra
            form: Symmetric invariant form of degree d + 1 >= 2
        """
        if form.degree < 2:
            raise UsageError(f"invariant form of degree {form.degree} gives no cocycle")
        self.lie = lie
        self.form = form
        self.d = form.degree - 1
        self.arity = 2 * self.d
        self._orders = [(order, _permutation_sign(order)) for order in permutations(range(self.arity))]

    def _integrand(self, args: Sequence[LoopElement], out: OneForm) -> None:
        """Add P(a_0, [a_1, a_2], ..., d a_last) to a one-form."""
        lie = self.lie
        slots = [args[0]]
        for k in range(1, self.arity - 1, 2):
            slots.append(loop_bracket(lie, args[k], args[k + 1]))
        last = args[-1]
        if any(not s for s in slots) or not last:
            return
        terms: List[Tuple[Tuple[int, ...], int, Fraction]] = [((), 0, Fraction(1))]
        for slot in slots:
            terms = [
                (indices + (i,), power + n, c * value)
                for indices, power, c in terms
                for (i, n), value in slot.terms.items()
            ]
        for (i, n), value in last.terms.items():
            if n == 0:
                continue
            for indices, power, c in terms:
                # d(x t^n) = n x t^(n-1) dt
                out.add(power + n - 1, c * value * n * self.form.evaluate(indices + (i,)))

    def __call__(self, *args: LoopElement) -> Fraction:
        """
        Evaluate phi_P.

        Raises:
            UsageError: If the number of arguments is not 2d
        """
        if len(args) != self.arity:
            raise UsageError(f"phi_P of degree {self.form.degree} takes {self.arity} arguments, got {len(args)}")
        if any(not a for a in args):
            return Fraction(0)
        out = OneForm()
        for order, sign in self._orders:
            part = OneForm()
            self._integrand([args[k] for k in order], part)
            for power, value in part.coefficients.items():
                out.add(power, sign * value)
        return residue(out)

    def evaluate_by_terms(self, *args: LoopElement) -> Fraction:
        """Evaluate by expanding every argument into single terms first."""
        if len(args) != self.arity:
            raise UsageError(f"phi_P takes {self.arity} arguments, got {len(args)}")
        total = Fraction(0)
        expansions: List[List[LoopElement]] = [[]]
        for a in args:
            expansions = [prefix + [t] for prefix in expansions for t in a.single_terms()]
        for combo in expansions:
            total += self(*combo)
        return total


def phi_P(form: InvariantForm, *args: LoopElement) -> Fraction:
    """phi_P(v_0, ..., v_{2d-1}) for the form's Lie algebra."""
    return LoopCocycle(form.lie, form)(*args)


def coboundary(cocycle: LoopCocycle, args: Sequence[LoopElement]) -> Fraction:
    """(d phi)(v_0, ..., v_2d) = sum_{i<j} (-1)^(i+j) phi([v_i, v_j], v_0, ..., ^i, ..., ^j, ...)."""
    total = Fraction(0)
    for i in range(len(args)):
        for j in range(i + 1, len(args)):
            rest = [a for k, a in enumerate(args) if k not in (i, j)]
            bracket = loop_bracket(cocycle.lie, args[i], args[j])
            value = cocycle(bracket, *rest)
            total += value if (i + j) % 2 == 0 else -value
    return total


def invariance_defect(cocycle: LoopCocycle, x: LieElement, args: Sequence[LoopElement]) -> Fraction:
    """sum_i phi(v_0, ..., [x, v_i], ..., v_{2d-1})."""
    constant = loop(x)
    total = Fraction(0)
    for i in range(len(args)):
        moved = list(args)
        moved[i] = loop_bracket(cocycle.lie, constant, args[i])
        total += cocycle(*moved)
    return total


def random_loop_element(
    lie: LieAlgebra, rng: random.Random, max_power: int = 3, max_terms: int = 2
) -> LoopElement:
    """Sparse element with 1..max_terms terms, powers in [-max_power, max_power]."""
    terms: Dict[LoopTerm, Fraction] = {}
    while not terms:
        for _ in range(rng.randint(1, max_terms)):
            key = (rng.randrange(lie.dim), rng.randint(-max_power, max_power))
            coefficient = rng.choice([-2, -1, 1, 2, 3])
            terms[key] = terms.get(key, Fraction(0)) + coefficient
        terms = {k: c for k, c in terms.items() if c}
    return LoopElement(terms)


def random_loop_arguments(
    lie: LieAlgebra, rng: random.Random, count: int, max_power: int = 3, max_terms: int = 2
) -> List[LoopElement]:
    """
    ``count`` random elements. The first term of the last one cancels the powers
    of the first terms of the others, so their product has a residue.
    """
    args = [random_loop_element(lie, rng, max_power, max_terms) for _ in range(count)]
    if count < 2:
        return args
    lead = sum(min(e.terms)[1] for e in args[:-1])
    last = dict(args[-1].terms)
    (index, _), coefficient = min(last.items())
    del last[min(last)]
    last[(index, -lead)] = coefficient
    args[-1] = LoopElement(last)
    return args


def random_lie_element(lie: LieAlgebra, rng: random.Random) -> LieElement:
    """Single basis element with a small nonzero coefficient."""
    return {rng.randrange(lie.dim): Fraction(rng.choice([-1, 1, 2]))}


def check_closed_form(lie: LieAlgebra, max_power: int = 5) -> dict:
    """
    phi(x t^n, y t^-n) = -2n <x, y> for the normalized form and all basis pairs.

    Raises:
        CheckFailure: With the first failing (x, y, n)
    """
    cocycle = LoopCocycle(lie, invariant_form(lie, 2))
    checked = 0
    for n in range(-max_power, max_power + 1):
        for i in range(lie.dim):
            for j in range(lie.dim):
                value = cocycle(loop({i: Fraction(1)}, n), loop({j: Fraction(1)}, -n))
                expected = -2 * n * lie.gram.get((i, j), Fraction(0))
                checked += 1
                if value != expected:
                    raise CheckFailure(
                        "closed form of phi for the normalized form fails",
                        {
                            "x": lie.basis_name(i),
                            "y": lie.basis_name(j),
                            "n": n,
                            "value": format_rational(value),
                            "expected": format_rational(expected),
                        },
                    )
    return {"checked": checked, "max_power": max_power}


def cocycle_check(
    lie: LieAlgebra,
    d: int,
    samples: int,
    seed: int = 0,
    form: Optional[InvariantForm] = None,
) -> dict:
    """
    Check on seeded random samples that phi_P is a relative cocycle.

    Per sample: phi is g-invariant, is closed under the Chevalley-Eilenberg
    differential, is alternating, and agrees with its term-by-term evaluation.
    It must vanish when an argument is a constant loop for d = 1; for d >= 2
    the integrand is not exact on constant loops, and nonzero values are
    counted in ``constant_loop_violations`` with the first one as
    ``constant_loop_witness``.

    Args:
        lie: The Lie algebra
        d: Half the cochain degree; P has degree d + 1
        samples: Number of random samples
        seed: Seed of the sample generator
        form: Invariant form to use (defaults to the built-in one of degree d + 1)

    Raises:
        CheckFailure: With the sample that violates an identity
    """
    if d < 1:
        raise UsageError(f"d must be at least 1, got {d}")
    form = form or invariant_form(lie, d + 1)
    if form.degree != d + 1:
        raise UsageError(f"form of degree {form.degree} does not match d = {d}")
    cocycle = LoopCocycle(lie, form)
    rng = random.Random(seed)
    context = {"type": lie.rs.type_letter, "rank": lie.rank, "d": d, "samples": samples}
    nonzero = 0
    constant_violations = 0
    constant_witness: Optional[dict] = None

    def fail(message: str, sample: int, elements: Sequence[LoopElement], **extra) -> None:
        raise CheckFailure(
            message,
            {
                "seed": seed,
                "sample": sample,
                "arguments": [e.to_json(lie) for e in elements],
                **extra,
            },
        )

    with ObservabilityContext("cocycle_check", context):
        for sample in range(samples):
            args = random_loop_arguments(lie, rng, cocycle.arity)
            value = cocycle(*args)
            if value:
                nonzero += 1

            relative = list(args)
            relative[rng.randrange(cocycle.arity)] = loop(random_lie_element(lie, rng))
            constant_value = cocycle(*relative)
            if constant_value != 0:
                if d == 1:
                    fail("phi does not vanish on a constant loop", sample, relative)
                constant_violations += 1
                if constant_witness is None:
                    constant_witness = {
                        "sample": sample,
                        "arguments": [e.to_json(lie) for e in relative],
                        "value": format_rational(constant_value),
                    }

            x = random_lie_element(lie, rng)
            defect = invariance_defect(cocycle, x, args)
            if defect != 0:
                fail(
                    "phi is not g-invariant",
                    sample,
                    args,
                    x={lie.basis_name(i): format_rational(c) for i, c in x.items()},
                    defect=format_rational(defect),
                )

            extended = args + [random_loop_element(lie, rng)]
            boundary = coboundary(cocycle, extended)
            if boundary != 0:
                fail("d phi does not vanish", sample, extended, value=format_rational(boundary))

            if cocycle.arity >= 2:
                repeated = [args[0], args[0]] + args[2:]
                if cocycle(*repeated) != 0:
                    fail("phi is not alternating", sample, repeated)

            if cocycle.evaluate_by_terms(*args) != value:
                fail("term-by-term evaluation differs", sample, args)

    if constant_violations:
        log_event(
            "constant_loop_defect",
            {**context, "violations": constant_violations, "witness": constant_witness},
        )
    return {
        "d": d,
        "form_degree": form.degree,
        "samples": samples,
        "seed": seed,
        "nonzero_values": nonzero,
        "constant_loop_violations": constant_violations,
        "constant_loop_witness": constant_witness,
    }
