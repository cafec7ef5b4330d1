"""Characteristic numbers of rational curves with one cusp.

Two elimination routes produce the same numbers:

* ``count``            the full recursion: multiplying the cusp family by the
                       square of the degree turns it into a sum of marked-node
                       counts, two-component joins, and cusp counts with fewer
                       tangencies; dividing back must be exact.
* ``count_incidence``  a direct elimination available when every condition is
                       a plain incidence: two lowest-codimension conditions
                       are traded against the marked point, with unit
                       coefficients throughout and no division at all.

A query is a constraint set whose ``special`` slot holds the codimension of
the linear space the cusp must lie on.  Missing stored data is collected
across the whole expansion before being reported, so one failed query names
every key it would need.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Union

from .constraints import (Constraint, Family, derive_constraints,
                          enumerate_splits, nr_key, rr2_key, select_pq,
                          single_key)
from .errors import (ConsistencyError, FinitenessError,
                     OracleDataMissingError, ValidationError)
from .nodal import NodalOracle


@dataclass(frozen=True)
class ExpansionTerm:
    """One weighted subquery on the eliminated side of the cusp recursion."""

    coefficient: int
    family: Family
    degrees: tuple[int, ...]
    constraints: tuple[Constraint, ...]
    joint: Union[None, int, tuple[int, int]] = None

    def key(self, r: int) -> str:
        if self.family in (Family.N, Family.S):
            return single_key(self.family, r, self.degrees[0], self.constraints[0])
        if self.family is Family.NR:
            d1, d2 = self.degrees
            g1, g2 = self.constraints
            return nr_key(r, d1, g1, d2, g2, self.joint)
        d1, d2 = self.degrees
        g1, g2 = self.constraints
        return rr2_key(r, d1, g1, d2, g2, *self.joint)


class CuspEngine:
    def __init__(self, oracle: Optional[NodalOracle] = None):
        self.oracle = oracle or NodalOracle()
        self._memo: dict[str, int] = {}

    # -- validation common to the public entries ------------------------------

    def _normalize(self, r: int, d: int, delta: Constraint) -> tuple[int, Constraint]:
        if r < 2:
            raise ValidationError("ambient dimension must be at least 2")
        if d < 1:
            raise ValidationError("degree must be positive")
        if delta.incidences and delta.incidences[-1][0] > r:
            raise ValidationError(
                "incidence codimension %d exceeds the ambient dimension"
                % delta.incidences[-1][0])
        delta = delta.with_special(delta.special or 0)
        scale = d ** delta.hyperplanes
        delta = delta.with_hyperplanes(0)
        return scale, delta

    def _check_finite(self, r: int, d: int, delta: Constraint) -> None:
        want = (r + 1) * d - 2
        have = delta.cond()
        if have != want:
            raise FinitenessError(
                "query imposes %d conditions on a %d-dimensional family" % (have, want))

    # -- full recursion --------------------------------------------------------

    def count(self, r: int, d: int, delta: Constraint) -> int:
        scale, delta = self._normalize(r, d, delta)
        if delta.special > r:
            return 0
        self._check_finite(r, d, delta)
        if r == 2 and d <= 2:
            return 0
        return scale * self._count_core(r, d, delta)

    def _count_core(self, r: int, d: int, delta: Constraint) -> int:
        memo_key = single_key(Family.S, r, d, delta)
        hit = self._memo.get(memo_key)
        if hit is not None:
            return hit
        rhs = 0
        missing: list[str] = []
        for term in self.expansion(r, d, delta, _normalized=True):
            try:
                rhs += term.coefficient * self._evaluate(r, term)
            except OracleDataMissingError as exc:
                missing.extend(exc.keys)
        if missing:
            raise OracleDataMissingError(missing)
        if rhs % (d * d):
            raise ConsistencyError(
                "eliminated side %d is not divisible by %d for %s"
                % (rhs, d * d, memo_key))
        value = rhs // (d * d)
        self._memo[memo_key] = value
        return value

    def _evaluate(self, r: int, term: ExpansionTerm) -> int:
        if term.family is Family.N:
            return self.oracle.n_count(r, term.degrees[0], term.constraints[0])
        if term.family is Family.S:
            d, delta = term.degrees[0], term.constraints[0]
            if r == 2 and d <= 2:
                return 0
            return self._count_core(r, d, delta)
        if term.family is Family.NR:
            d1, d2 = term.degrees
            g1, g2 = term.constraints
            return self.oracle.nr_count(r, d1, g1, d2, g2, term.joint)
        d1, d2 = term.degrees
        g1, g2 = term.constraints
        return self.oracle.rr2_count(r, d1, g1, d2, g2, *term.joint)

    def expansion(self, r: int, d: int, delta: Constraint,
                  _normalized: bool = False) -> list[ExpansionTerm]:
        """The eliminated side of ``count`` as explicit weighted subqueries.

        The returned coefficients still carry the degree-squared factor, so
        summing coefficient times subquery value gives d*d times the cusp
        count.  Tangency-reduced cusp subqueries appear as family S terms.
        """
        if not _normalized:
            _, delta = self._normalize(r, d, delta)
            self._check_finite(r, d, delta)
        k = delta.special or 0
        derived = derive_constraints(r, delta)
        terms: list[ExpansionTerm] = []
        for d1 in range(1, d):
            d2 = d - d1
            for g1, g2, mult in enumerate_splits(derived.tilde):
                terms.append(ExpansionTerm(
                    -d2 * d2 * mult, Family.NR, (d1, d2),
                    (g1.with_special(k), g2), 0))
        for l in range(1, derived.m + 1):
            sub = derive_constraints(r, delta, l=l)
            terms.append(ExpansionTerm(
                -comb(delta.tangency, l) * d * d, Family.S, (d,),
                (sub.l_variant,)))
        if derived.prime is not None:
            terms.append(ExpansionTerm(-1, Family.N, (d,), (derived.prime,)))
        for d1 in range(1, d):
            d2 = d - d1
            for g1, g2, mult in enumerate_splits(derived.tilde):
                terms.append(ExpansionTerm(
                    d1 * d2 * mult, Family.RR2, (d1, d2), (g1, g2), (k, 0)))
        terms.append(ExpansionTerm(
            2 * d, Family.N, (d,), (derived.double_prime,)))
        return terms

    # -- direct elimination for incidence-only queries ---------------------------

    def count_incidence(self, r: int, d: int, delta: Constraint) -> int:
        scale, delta = self._normalize(r, d, delta)
        if delta.tangency:
            raise ValidationError(
                "the direct elimination handles plain incidence conditions only")
        if delta.special > r:
            return 0
        self._check_finite(r, d, delta)
        if r == 2 and d <= 2:
            return 0
        k = delta.special
        p, q = select_pq(delta)
        derived = derive_constraints(r, delta, p=p, q=q)
        total = 0
        missing: list[str] = []

        def add(sign: int, fn, *args) -> None:
            nonlocal total
            try:
                total += sign * fn(*args)
            except OracleDataMissingError as exc:
                missing.extend(exc.keys)

        if derived.prime is not None:
            add(-1, self.oracle.n_count, r, d, derived.prime)
        for d1 in range(1, d):
            d2 = d - d1
            for g1, g2, mult in enumerate_splits(derived.tilde):
                add(-mult, self.oracle.nr_count,
                    r, d1, g1.with_special(k),
                    d2, g2.add_incidence(p).add_incidence(q), 0)
                add(mult, self.oracle.rr2_count,
                    r, d1, g1.add_incidence(p), d2, g2.add_incidence(q), k, 0)
        add(1, self.oracle.n_count, r, d, derived.p_variant)
        add(1, self.oracle.n_count, r, d, derived.q_variant)
        if missing:
            raise OracleDataMissingError(missing)
        return scale * total
