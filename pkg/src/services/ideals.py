"""
Ideals as membership masks, ideal algebra and lattice enumeration
"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from src.core.config import Settings, get_settings
from src.core.exceptions import RingLabError, RingMismatch, SizeCapExceeded
from src.services.rings import FiniteRing, Projection, check_elements
from src.utils.bitset import flags_from_mask, indices_from_mask, is_subset, mask_from_flags, mask_from_indices, popcount

logger = logging.getLogger(__name__)


class Ideal:
    """
    An ideal of a finite ring, stored as a bit mask over element indices

    Ideals are immutable values. Equality and hashing use the owning ring
    object and the mask, so ideals of different ring objects never compare
    equal even when their members coincide.
    """

    __slots__ = ("ring", "mask", "_members", "_flags")

    def __init__(self, ring: FiniteRing, mask: int):
        self.ring = ring
        self.mask = mask
        self._members: Optional[Tuple[int, ...]] = None
        self._flags: Optional[np.ndarray] = None

    @classmethod
    def from_flags(cls, ring: FiniteRing, flags: np.ndarray) -> "Ideal":
        return cls(ring, mask_from_flags(flags))

    @classmethod
    def from_indices(cls, ring: FiniteRing, indices: Iterable[int]) -> "Ideal":
        return cls(ring, mask_from_indices(indices))

    @property
    def members(self) -> Tuple[int, ...]:
        if self._members is None:
            self._members = tuple(indices_from_mask(self.mask))
        return self._members

    @property
    def flags(self) -> np.ndarray:
        """Boolean membership array (read-only)"""
        if self._flags is None:
            flags = flags_from_mask(self.mask, self.ring.size)
            flags.setflags(write=False)
            self._flags = flags
        return self._flags

    def as_array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, a: int) -> bool:
        return bool((self.mask >> int(a)) & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.ring), self.mask))

    def __repr__(self) -> str:
        return f"Ideal({self.label()} in {self.ring.label})"

    def _same_ring(self, other: "Ideal") -> None:
        if other.ring is not self.ring:
            raise RingMismatch(f"ideals of {self.ring.label} and {other.ring.label} cannot be combined")

    def contains(self, other: "Ideal") -> bool:
        """other is a subset of self"""
        self._same_ring(other)
        return is_subset(other.mask, self.mask)

    def equals(self, other: "Ideal") -> bool:
        self._same_ring(other)
        return self.mask == other.mask

    def is_proper(self) -> bool:
        return self.ring.one not in self

    def is_zero(self) -> bool:
        return self.mask == 1

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return len(self), self.members

    def generators(self) -> Tuple[int, ...]:
        """Greedy ascending generating set; (0,) for the zero ideal"""
        gens: List[int] = []
        current = zero_ideal(self.ring)
        for a in self.members:
            if a in current:
                continue
            current = ideal_sum(current, principal(self.ring, a))
            gens.append(a)
            if current.mask == self.mask:
                break
        return tuple(gens) or (0,)

    def label(self) -> str:
        return "<" + ",".join(str(g) for g in self.generators()) + ">"


def zero_ideal(ring: FiniteRing) -> Ideal:
    return Ideal(ring, 1)


def unit_ideal(ring: FiniteRing) -> Ideal:
    return Ideal(ring, (1 << ring.size) - 1)


def principal(ring: FiniteRing, a: int) -> Ideal:
    """Ra"""
    flags = np.zeros(ring.size, dtype=bool)
    flags[ring.mul_arrays(np.arange(ring.size, dtype=np.int64), a)] = True
    return Ideal.from_flags(ring, flags)


def ideal_sum(first: Ideal, second: Ideal) -> Ideal:
    first._same_ring(second)
    if is_subset(second.mask, first.mask):
        return first
    if is_subset(first.mask, second.mask):
        return second
    # the additive subgroup generated by two ideals is already an ideal
    flags = first.flags.copy()
    _grow_subgroup(first.ring, flags, second.flags)
    return Ideal.from_flags(first.ring, flags)


def _grow_subgroup(ring: FiniteRing, flags: np.ndarray, other: np.ndarray) -> None:
    """Extend the additive subgroup marked in `flags`, in place, until it contains `other`"""
    pending = np.flatnonzero(other & ~flags)
    while pending.size:
        x = int(pending[0])
        base = np.flatnonzero(flags)
        # adjoin the cosets base + kx until kx falls back into base
        step = x
        while not flags[step]:
            flags[ring.add_arrays(base, step)] = True
            step = ring.add(step, x)
        pending = pending[~flags[pending]]


def generate(ring: FiniteRing, gens: Iterable[int]) -> Ideal:
    """
    Smallest ideal containing `gens`

    Raises:
        InvalidElement: If a generator is not an element index of the ring
    """
    current = zero_ideal(ring)
    for g in sorted(set(check_elements(ring, gens))):
        if g not in current:
            current = ideal_sum(current, principal(ring, g))
    return current


def ideal_product(first: Ideal, second: Ideal) -> Ideal:
    first._same_ring(second)
    ring = first.ring
    products = ring.mul_arrays(first.as_array()[:, None], second.as_array()[None, :])
    return generate(ring, np.unique(products).tolist())


def intersect(first: Ideal, second: Ideal) -> Ideal:
    first._same_ring(second)
    return Ideal(first.ring, first.mask & second.mask)


def colon(target: Ideal, divisor: Ideal) -> Ideal:
    """(target : divisor) = {r : r * divisor is inside target}"""
    target._same_ring(divisor)
    ring = target.ring
    rows = ring.mul_arrays(np.arange(ring.size, dtype=np.int64)[:, None], divisor.as_array()[None, :])
    return Ideal.from_flags(ring, target.flags[rows].all(axis=1))


def radical(ideal: Ideal) -> Ideal:
    ring = ideal.ring
    flags = [any(p in ideal for p in ring.power_orbit(a)) for a in ring.elements()]
    return Ideal.from_flags(ring, np.asarray(flags, dtype=bool))


def is_ideal_set(ring: FiniteRing, flags: np.ndarray) -> bool:
    """Membership flags contain zero and are closed under + and ring multiplication"""
    members = np.nonzero(flags)[0]
    if not flags[ring.zero]:
        return False
    if not flags[ring.add_arrays(members[:, None], members[None, :])].all():
        return False
    return bool(flags[ring.mul_arrays(np.arange(ring.size, dtype=np.int64)[:, None], members[None, :])].all())


@lru_cache(maxsize=256)
def nilradical(ring: FiniteRing) -> Ideal:
    flags = np.zeros(ring.size, dtype=bool)
    flags[list(ring.nilpotent_elements)] = True
    if not is_ideal_set(ring, flags):
        raise RingLabError(f"nilpotent elements of {ring.label} are not closed; arithmetic is inconsistent")
    return Ideal.from_flags(ring, flags)


def image(projection: Projection, ideal: Ideal) -> Ideal:
    """f(I) under the projection R -> R/J"""
    if ideal.ring is not projection.source:
        raise RingMismatch(f"ideal of {ideal.ring.label} mapped from {projection.source.label}")
    return Ideal.from_indices(projection.target, np.unique(projection.array[ideal.as_array()]).tolist())


class IdealLattice:
    """
    Every ideal of a ring exactly once, ordered by member count and then
    lexicographically by sorted members
    """

    def __init__(self, ring: FiniteRing, ideals: Iterable[Ideal]):
        self.ring = ring
        self.ideals: Tuple[Ideal, ...] = tuple(sorted(ideals, key=Ideal.sort_key))
        self._by_mask: Dict[int, int] = {ideal.mask: i for i, ideal in enumerate(self.ideals)}

    def __len__(self) -> int:
        return len(self.ideals)

    def __iter__(self) -> Iterator[Ideal]:
        return iter(self.ideals)

    def __contains__(self, ideal: Ideal) -> bool:
        return ideal.ring is self.ring and ideal.mask in self._by_mask

    def find(self, mask: int) -> Optional[Ideal]:
        position = self._by_mask.get(mask)
        return None if position is None else self.ideals[position]

    @property
    def zero(self) -> Ideal:
        return self.ideals[0]

    @property
    def unit(self) -> Ideal:
        return self.ideals[-1]

    def proper(self) -> List[Ideal]:
        return [ideal for ideal in self.ideals if ideal.is_proper()]

    def containing(self, ideal: Ideal) -> List[Ideal]:
        """Ideals I with ideal inside I (ideal itself included)"""
        return [other for other in self.ideals if is_subset(ideal.mask, other.mask)]

    def contained_in(self, ideal: Ideal) -> List[Ideal]:
        """Ideals J inside ideal (ideal itself included)"""
        return [other for other in self.ideals if is_subset(other.mask, ideal.mask)]


def all_ideals(ring: FiniteRing, settings: Optional[Settings] = None) -> IdealLattice:
    """
    Enumerate the ideal lattice by join closure of principal ideals

    Every ideal of a finite ring is a finite sum of principal ideals, so
    joining outward from <0> with principal ideals reaches each one. The
    join I + Ra depends only on the coset a + I, so each reached ideal is
    joined once per coset rather than once per element.

    Raises:
        SizeCapExceeded: If the ring is larger than the configured cap
    """
    settings = settings or get_settings()
    if ring.size > settings.size_cap:
        raise SizeCapExceeded(ring.size, settings.size_cap)
    return _lattice(ring)


@lru_cache(maxsize=256)
def _lattice(ring: FiniteRing) -> IdealLattice:
    principals: Dict[int, Ideal] = {}
    principal_of: List[Ideal] = []
    for a in ring.elements():
        ideal = principal(ring, a)
        principal_of.append(principals.setdefault(ideal.mask, ideal))

    zero = zero_ideal(ring)
    seen: Dict[int, Ideal] = {zero.mask: zero}
    queue: List[Ideal] = [zero]
    while queue:
        current = queue.pop()
        members = current.as_array()
        covered = current.flags.copy()
        outside = np.flatnonzero(~covered)
        while outside.size:
            a = int(outside[0])
            covered[ring.add_arrays(members, a)] = True
            joined = ideal_sum(current, principal_of[a])
            if joined.mask not in seen:
                seen[joined.mask] = joined
                queue.append(joined)
            outside = outside[~covered[outside]]

    lattice = IdealLattice(ring, seen.values())
    logger.debug(f"{ring.label}: {len(lattice)} ideals from {len(principals)} principal ideals")
    return lattice
