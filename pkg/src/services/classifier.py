"""
Decision procedures for the prime, maximal, minimal and principal ideal
classes of a finite ring, with witness extraction

The existential nilpotent x in nil-prime, nil-maximal and nil-minimal is
bound outside the universal quantifier: one x must serve every pair (or
every intermediate ideal) at once.
"""

import logging
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.core.config import Settings, get_settings
from src.core.exceptions import ImproperIdeal, NotNIntegralDomain, RingMismatch, ZeroIdeal
from src.models.schemas import ClassificationReport, PairFallback, Witnesses
from src.services.ideals import (
    Ideal,
    IdealLattice,
    all_ideals,
    ideal_sum,
    nilradical,
    principal,
    zero_ideal,
)
from src.services.rings import FiniteRing
from src.utils.logging_utils import LoggerMixin

logger = logging.getLogger(__name__)

_ROW_CHUNK = 256


class IdealClassifier(LoggerMixin):
    """
    Classifies ideals of one ring

    Principal ideals, P + Nil(R) sums and violating-pair lists are cached per
    classifier; the ideal lattice is built on first use.
    """

    def __init__(self, ring: FiniteRing, settings: Optional[Settings] = None):
        self.ring = ring
        self.settings = settings or get_settings()
        self.nil = nilradical(ring)
        self.nil_elements: Tuple[int, ...] = self.nil.members
        self._principals: Dict[int, Ideal] = {}
        self._widened_principals: Dict[int, Ideal] = {}
        self._violations: Dict[Tuple[int, int], Tuple[np.ndarray, np.ndarray]] = {}

    @cached_property
    def lattice(self) -> IdealLattice:
        return all_ideals(self.ring, self.settings)

    @cached_property
    def unit(self) -> Ideal:
        return self.lattice.unit

    def principal(self, a: int) -> Ideal:
        ideal = self._principals.get(a)
        if ideal is None:
            ideal = principal(self.ring, a)
            self._principals[a] = ideal
        return ideal

    def plus_nil(self, ideal: Ideal) -> Ideal:
        return ideal_sum(ideal, self.nil)

    def _check(self, ideal: Ideal) -> None:
        if ideal.ring is not self.ring:
            raise RingMismatch(f"ideal of {ideal.ring.label} given to the classifier of {self.ring.label}")

    def _require_proper(self, ideal: Ideal) -> None:
        self._check(ideal)
        if not ideal.is_proper():
            raise ImproperIdeal(f"{ideal.label()} is the whole ring {self.ring.label}")

    # Prime family

    def _pairs(self, inside: Ideal, outside: Ideal) -> Tuple[np.ndarray, np.ndarray]:
        """Pairs a <= b with ab in `inside` and neither a nor b in `outside`, ascending"""
        key = (inside.mask, outside.mask)
        cached = self._violations.get(key)
        if cached is not None:
            return cached

        candidates = np.nonzero(~outside.flags)[0]
        firsts, seconds = [], []
        for start in range(0, len(candidates), _ROW_CHUNK):
            rows = candidates[start:start + _ROW_CHUNK]
            products = self.ring.mul_arrays(rows[:, None], candidates[None, :])
            hit = inside.flags[products] & (rows[:, None] <= candidates[None, :])
            row_index, column_index = np.nonzero(hit)
            firsts.append(rows[row_index])
            seconds.append(candidates[column_index])

        empty = np.zeros(0, dtype=np.int64)
        result = (
            np.concatenate(firsts) if firsts else empty,
            np.concatenate(seconds) if seconds else empty,
        )
        self._violations[key] = result
        return result

    def violating_pairs(self, ideal: Ideal) -> List[Tuple[int, int]]:
        """(a, b) with a <= b, ab in P, a and b outside P"""
        self._require_proper(ideal)
        firsts, seconds = self._pairs(ideal, ideal)
        return list(zip(firsts.tolist(), seconds.tolist()))

    def is_prime(self, ideal: Ideal) -> bool:
        self._require_proper(ideal)
        return len(self._pairs(ideal, ideal)[0]) == 0

    def nil_prime_witnesses(self, ideal: Ideal, first_only: bool = False) -> List[int]:
        """
        Every x in Nil(R) such that each violating pair (a, b) has a+x or b+x in P

        Args:
            ideal: A proper ideal
            first_only: Stop after the smallest witness

        Raises:
            ImproperIdeal: If the ideal is the whole ring
        """
        self._require_proper(ideal)
        firsts, seconds = self._pairs(ideal, ideal)
        flags = ideal.flags
        witnesses = []
        for x in self.nil_elements:
            rescued = flags[self.ring.add_arrays(firsts, x)] | flags[self.ring.add_arrays(seconds, x)]
            if rescued.all():
                witnesses.append(x)
                if first_only:
                    break
        return witnesses

    def is_nil_prime(self, ideal: Ideal) -> bool:
        return bool(self.nil_prime_witnesses(ideal, first_only=True))

    def pair_rescuers(self, ideal: Ideal, a: int, b: int) -> List[int]:
        """Nilpotents x with a+x or b+x in the ideal"""
        self._check(ideal)
        add = self.ring.add
        return [x for x in self.nil_elements if add(a, x) in ideal or add(b, x) in ideal]

    def is_n_prime(self, ideal: Ideal) -> bool:
        self._require_proper(ideal)
        return len(self._pairs(ideal, self.plus_nil(ideal))[0]) == 0

    # Maximal family

    def is_maximal(self, ideal: Ideal) -> bool:
        self._require_proper(ideal)
        return len(self.lattice.containing(ideal)) == 2

    def nil_maximal_witnesses(self, ideal: Ideal, first_only: bool = False) -> List[int]:
        """Every x in Nil(R) such that each ideal above M is M, M + Rx or R"""
        self._require_proper(ideal)
        above = self.lattice.containing(ideal)
        witnesses = []
        for x in self.nil_elements:
            allowed = {ideal.mask, ideal_sum(ideal, self.principal(x)).mask, self.unit.mask}
            if all(other.mask in allowed for other in above):
                witnesses.append(x)
                if first_only:
                    break
        return witnesses

    def is_nil_maximal(self, ideal: Ideal) -> bool:
        return bool(self.nil_maximal_witnesses(ideal, first_only=True))

    def is_n_maximal(self, ideal: Ideal) -> bool:
        self._require_proper(ideal)
        widened = self.plus_nil(ideal)
        return all(
            self.plus_nil(other) == self.unit or widened.contains(other)
            for other in self.lattice.containing(ideal)
        )

    # Minimal and principal

    def nil_minimal_witnesses(self, ideal: Ideal, first_only: bool = False) -> List[int]:
        """Every x in Nil(R) such that each ideal J inside I has I = J + Rx or J = Rx"""
        self._check(ideal)
        if ideal.is_zero():
            raise ZeroIdeal(f"nil-minimality is not defined for the zero ideal of {self.ring.label}")
        below = self.lattice.contained_in(ideal)
        witnesses = []
        for x in self.nil_elements:
            rx = self.principal(x)
            if all(ideal_sum(sub, rx) == ideal or sub == rx for sub in below):
                witnesses.append(x)
                if first_only:
                    break
        return witnesses

    def is_nil_minimal(self, ideal: Ideal) -> bool:
        return bool(self.nil_minimal_witnesses(ideal, first_only=True))

    def nil_principal_witness(self, ideal: Ideal) -> Optional[Tuple[int, int]]:
        """Smallest (r, x), ordered by x then r, with x nilpotent and I = Rr + Rx"""
        self._check(ideal)
        for x in self.nil_elements:
            if x not in ideal:
                continue
            rx = self.principal(x)
            for r in ideal.members:
                if ideal_sum(self.principal(r), rx) == ideal:
                    return r, x
        return None

    def n_principal_witness(self, ideal: Ideal) -> Optional[int]:
        """Smallest r with I inside Rr + Nil(R)"""
        self._check(ideal)
        for r in self.ring.elements():
            widened = self._widened_principals.get(r)
            if widened is None:
                widened = self._widened_principals[r] = self.plus_nil(self.principal(r))
            if widened.contains(ideal):
                return r
        return None

    def is_n_principal(self, ideal: Ideal) -> bool:
        return self.n_principal_witness(ideal) is not None

    def nil_distinct(self, first: Ideal, second: Ideal) -> bool:
        self._check(first)
        self._check(second)
        for z in self.nil_elements:
            rz = self.principal(z)
            if ideal_sum(first, rz).contains(second) or ideal_sum(second, rz).contains(first):
                return False
        return True

    # Ring level

    def is_n_integral_domain(self) -> bool:
        return self.is_n_prime(zero_ideal(self.ring))

    def is_n_pid(self) -> bool:
        if not self.is_n_integral_domain():
            raise NotNIntegralDomain(f"the zero ideal of {self.ring.label} is not N-prime")
        return all(self.is_n_principal(ideal) for ideal in self.lattice)

    # Reports

    def classify(self, ideal: Ideal) -> ClassificationReport:
        """
        Run every predicate that applies to the ideal

        Prime-family and maximal-family verdicts are null for R itself and
        nil_minimal is null for the zero ideal. Witness sets are complete for
        rings up to `full_witness_limit` elements and hold the first witness
        above that.
        """
        self._check(ideal)
        full = self.ring.size <= self.settings.full_witness_limit
        limit = self.settings.witness_limit
        complete = full
        verdicts: Dict[str, Optional[bool]] = {}
        witnesses = Witnesses()
        fallbacks: List[PairFallback] = []

        if ideal.is_proper():
            nil_prime = self.nil_prime_witnesses(ideal, first_only=not full)
            nil_maximal = self.nil_maximal_witnesses(ideal, first_only=not full)
            verdicts.update(
                prime=self.is_prime(ideal),
                maximal=self.is_maximal(ideal),
                nil_prime=bool(nil_prime),
                n_prime=self.is_n_prime(ideal),
                nil_maximal=bool(nil_maximal),
                n_maximal=self.is_n_maximal(ideal),
            )
            witnesses.nil_prime = nil_prime
            witnesses.nil_maximal = nil_maximal
            if full and not nil_prime:
                fallbacks = [
                    PairFallback(a=a, b=b, rescuers=self.pair_rescuers(ideal, a, b))
                    for a, b in self.violating_pairs(ideal)
                ]

        if not ideal.is_zero():
            nil_minimal = self.nil_minimal_witnesses(ideal, first_only=not full)
            verdicts["nil_minimal"] = bool(nil_minimal)
            witnesses.nil_minimal = nil_minimal

        if limit is not None:
            for name in ("nil_prime", "nil_maximal", "nil_minimal"):
                values = getattr(witnesses, name)
                if values is not None and len(values) > limit:
                    setattr(witnesses, name, values[:limit])
                    complete = False

        witnesses.nil_principal = self.nil_principal_witness(ideal)
        witnesses.n_principal = self.n_principal_witness(ideal)

        return ClassificationReport(
            ring=self.ring.label,
            generators=list(ideal.generators()),
            members=list(ideal.members),
            proper=ideal.is_proper(),
            nil_principal=witnesses.nil_principal is not None,
            n_principal=witnesses.n_principal is not None,
            witnesses=witnesses,
            witnesses_complete=complete,
            fallbacks=fallbacks,
            **verdicts,
        )


@lru_cache(maxsize=128)
def classifier_for(ring: FiniteRing) -> IdealClassifier:
    return IdealClassifier(ring)


def is_prime(ideal: Ideal) -> bool:
    return classifier_for(ideal.ring).is_prime(ideal)


def is_maximal(ideal: Ideal) -> bool:
    return classifier_for(ideal.ring).is_maximal(ideal)


def violating_pairs(ideal: Ideal) -> List[Tuple[int, int]]:
    return classifier_for(ideal.ring).violating_pairs(ideal)


def nil_prime_witnesses(ideal: Ideal) -> List[int]:
    return classifier_for(ideal.ring).nil_prime_witnesses(ideal)


def is_nil_prime(ideal: Ideal) -> bool:
    return classifier_for(ideal.ring).is_nil_prime(ideal)


def pair_rescuers(ideal: Ideal, a: int, b: int) -> List[int]:
    return classifier_for(ideal.ring).pair_rescuers(ideal, a, b)


def is_n_prime(ideal: Ideal) -> bool:
    return classifier_for(ideal.ring).is_n_prime(ideal)


def nil_maximal_witnesses(ideal: Ideal) -> List[int]:
    return classifier_for(ideal.ring).nil_maximal_witnesses(ideal)


def is_nil_maximal(ideal: Ideal) -> bool:
    return classifier_for(ideal.ring).is_nil_maximal(ideal)


def is_n_maximal(ideal: Ideal) -> bool:
    return classifier_for(ideal.ring).is_n_maximal(ideal)


def nil_minimal_witnesses(ideal: Ideal) -> List[int]:
    return classifier_for(ideal.ring).nil_minimal_witnesses(ideal)


def nil_principal_witness(ideal: Ideal) -> Optional[Tuple[int, int]]:
    return classifier_for(ideal.ring).nil_principal_witness(ideal)


def n_principal_witness(ideal: Ideal) -> Optional[int]:
    return classifier_for(ideal.ring).n_principal_witness(ideal)


def is_n_principal(ideal: Ideal) -> bool:
    return classifier_for(ideal.ring).is_n_principal(ideal)


def nil_distinct(first: Ideal, second: Ideal) -> bool:
    if first.ring is not second.ring:
        raise RingMismatch(f"ideals of {first.ring.label} and {second.ring.label} cannot be compared")
    return classifier_for(first.ring).nil_distinct(first, second)


def is_n_integral_domain(ring: FiniteRing) -> bool:
    return classifier_for(ring).is_n_integral_domain()


def is_n_pid(ring: FiniteRing) -> bool:
    return classifier_for(ring).is_n_pid()


def classify_ideal(ideal: Ideal) -> ClassificationReport:
    return classifier_for(ideal.ring).classify(ideal)
