"""
Finite commutative rings with identity over canonical element indices

Element encodings are fixed bit-exactly:

    Zn(n)          index = residue
    Product        index = i1 + |R1| * (i2 + |R2| * (...)), leftmost factor least significant
    TruncPoly(n,k) index = sum of c_j * n**j, c_j the coefficient of x**j
    Idealize(n,m)  index = a * m + v for the pair (a, v)
    Quotient       cosets sorted by their smallest parent index, reindexed 0..count-1
"""

import logging
from abc import ABC, abstractmethod
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.core.config import Settings, get_settings
from src.core.exceptions import (
    ImproperIdeal,
    InvalidDescriptor,
    InvalidElement,
    InvalidExponent,
    RingMismatch,
    SizeCapExceeded,
)
from src.models.descriptors import (
    Idealize,
    Product,
    Quotient,
    RingDescriptor,
    TruncPoly,
    Zn,
    structural_size,
    validate_descriptor,
)
from src.utils.logging_utils import LoggerMixin
from src.utils.ring_spec import render

if TYPE_CHECKING:
    from src.services.ideals import Ideal

logger = logging.getLogger(__name__)


class FiniteRing(LoggerMixin, ABC):
    """
    A realized finite commutative ring with identity

    Subclasses supply vectorised structural arithmetic on numpy index arrays;
    this class adds table caching (rings up to `table_cache_limit` elements),
    scalar operations, powers, nilpotency and units. Instances are immutable
    once built and safe to share between workers.
    """

    def __init__(self, descriptor: RingDescriptor, size: int, one: int, table_cache_limit: int):
        self.descriptor = descriptor
        self.size = size
        self.zero = 0
        self.one = one
        self.table_cache_limit = table_cache_limit
        self.caches_tables = size <= table_cache_limit

    @abstractmethod
    def _add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _neg(self, a: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def decode(self, index: int):
        """Structured value of an element (residue, components, coefficients, ...)"""

    @abstractmethod
    def encode(self, value) -> int:
        """Inverse of decode"""

    @property
    def label(self) -> str:
        return render(self.descriptor)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.label}, size={self.size})"

    def elements(self) -> range:
        return range(self.size)

    def check_element(self, a: int) -> int:
        if not 0 <= a < self.size:
            raise InvalidElement(f"element index {a} is outside {self.label} (size {self.size})")
        return a

    # Tables

    def _full_table(self, op) -> np.ndarray:
        idx = np.arange(self.size, dtype=np.int64)
        return np.asarray(op(idx[:, None], idx[None, :]), dtype=np.int64)

    @cached_property
    def _cached_tables(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        self.logger.debug(f"caching arithmetic tables for {self.label}")
        add = self._full_table(self._add)
        mul = self._full_table(self._mul)
        neg = np.asarray(self._neg(np.arange(self.size, dtype=np.int64)), dtype=np.int64)
        for table in (add, mul, neg):
            table.setflags(write=False)
        return add, mul, neg

    @cached_property
    def _scalar_tables(self) -> Tuple[List[List[int]], List[List[int]], List[int]]:
        add, mul, neg = self._cached_tables
        return add.tolist(), mul.tolist(), neg.tolist()

    @property
    def add_table(self) -> np.ndarray:
        if self.caches_tables:
            return self._cached_tables[0]
        return self._full_table(self._add)

    @property
    def mul_table(self) -> np.ndarray:
        if self.caches_tables:
            return self._cached_tables[1]
        return self._full_table(self._mul)

    # Vectorised arithmetic

    def add_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.caches_tables:
            return self._cached_tables[0][a, b]
        return np.asarray(self._add(a, b), dtype=np.int64)

    def mul_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.caches_tables:
            return self._cached_tables[1][a, b]
        return np.asarray(self._mul(a, b), dtype=np.int64)

    def neg_arrays(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.caches_tables:
            return self._cached_tables[2][a]
        return np.asarray(self._neg(a), dtype=np.int64)

    # Scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if self.caches_tables:
            return self._scalar_tables[0][a][b]
        return int(self._add(np.int64(a), np.int64(b)))

    def mul(self, a: int, b: int) -> int:
        if self.caches_tables:
            return self._scalar_tables[1][a][b]
        return int(self._mul(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.caches_tables:
            return self._scalar_tables[2][a]
        return int(self._neg(np.int64(a)))

    def pow(self, a: int, e: int) -> int:
        if e < 1:
            raise InvalidExponent(f"exponent {e} is below 1")
        result, base = None, a
        while e:
            if e & 1:
                result = base if result is None else self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def power_orbit(self, a: int) -> List[int]:
        """a, a^2, a^3, ... up to (not including) the first repeated power"""
        seen = set()
        orbit = []
        power = a
        while power not in seen:
            seen.add(power)
            orbit.append(power)
            power = self.mul(power, a)
        return orbit

    def is_nilpotent(self, a: int) -> bool:
        # the power sequence is eventually periodic; a cycle without zero means never zero
        return self.zero in self.power_orbit(a)

    @cached_property
    def nilpotent_elements(self) -> Tuple[int, ...]:
        return tuple(a for a in self.elements() if self.is_nilpotent(a))

    @cached_property
    def unit_elements(self) -> FrozenSet[int]:
        table = self.mul_table
        return frozenset(int(a) for a in np.nonzero((table == self.one).any(axis=1))[0])

    def units(self) -> FrozenSet[int]:
        return self.unit_elements


class ModularRing(FiniteRing):
    """Z_n"""

    def __init__(self, descriptor: Zn, table_cache_limit: int):
        self.n = descriptor.n
        super().__init__(descriptor, descriptor.n, 1, table_cache_limit)

    def _add(self, a, b):
        return (a + b) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.n

    def neg(self, a: int) -> int:
        return (-a) % self.n

    def decode(self, index: int) -> int:
        return index

    def encode(self, value: int) -> int:
        return value % self.n


class ProductRing(FiniteRing):
    """Direct product with componentwise operations"""

    def __init__(self, descriptor: Product, factors: Sequence[FiniteRing], table_cache_limit: int):
        self.factors = tuple(factors)
        strides = []
        stride = 1
        for factor in self.factors:
            strides.append(stride)
            stride *= factor.size
        self.strides = tuple(strides)
        one = sum(f.one * s for f, s in zip(self.factors, self.strides))
        super().__init__(descriptor, stride, one, table_cache_limit)

    def components(self, a) -> List[np.ndarray]:
        rest = np.asarray(a, dtype=np.int64)
        parts = []
        for factor in self.factors:
            parts.append(rest % factor.size)
            rest = rest // factor.size
        return parts

    def _combine(self, parts) -> np.ndarray:
        total = 0
        for part, stride in zip(parts, self.strides):
            total = total + np.asarray(part, dtype=np.int64) * stride
        return total

    def _add(self, a, b):
        return self._combine(
            f.add_arrays(x, y) for f, x, y in zip(self.factors, self.components(a), self.components(b))
        )

    def _mul(self, a, b):
        return self._combine(
            f.mul_arrays(x, y) for f, x, y in zip(self.factors, self.components(a), self.components(b))
        )

    def _neg(self, a):
        return self._combine(f.neg_arrays(x) for f, x in zip(self.factors, self.components(a)))

    def decode(self, index: int) -> Tuple[int, ...]:
        return tuple(int(p) for p in self.components(index))

    def encode(self, value: Sequence[int]) -> int:
        return int(self._combine(value))


class TruncatedPolynomialRing(FiniteRing):
    """Z_n[x]/(x^k)"""

    def __init__(self, descriptor: TruncPoly, table_cache_limit: int):
        self.n = descriptor.n
        self.k = descriptor.k
        self.weights = tuple(self.n ** j for j in range(self.k))
        super().__init__(descriptor, self.n ** self.k, 1, table_cache_limit)

    def coefficients(self, a) -> List[np.ndarray]:
        a = np.asarray(a, dtype=np.int64)
        return [(a // w) % self.n for w in self.weights]

    def _combine(self, coeffs) -> np.ndarray:
        total = 0
        for c, w in zip(coeffs, self.weights):
            total = total + np.asarray(c, dtype=np.int64) * w
        return total

    def _add(self, a, b):
        return self._combine((x + y) % self.n for x, y in zip(self.coefficients(a), self.coefficients(b)))

    def _mul(self, a, b):
        ca, cb = self.coefficients(a), self.coefficients(b)
        product = []
        for j in range(self.k):
            acc = 0
            for i in range(j + 1):
                acc = acc + ca[i] * cb[j - i]
            product.append(acc % self.n)
        return self._combine(product)

    def _neg(self, a):
        return self._combine((-c) % self.n for c in self.coefficients(a))

    def decode(self, index: int) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.coefficients(index))

    def encode(self, value: Sequence[int]) -> int:
        return int(self._combine([c % self.n for c in value]))

    @property
    def x(self) -> int:
        """Index of the indeterminate (zero when k == 1)"""
        return self.n if self.k > 1 else 0


class IdealizationRing(FiniteRing):
    """Z_n (+) Z_m with (a, v)(b, w) = (ab, (a mod m) w + (b mod m) v)"""

    def __init__(self, descriptor: Idealize, table_cache_limit: int):
        self.n = descriptor.n
        self.m = descriptor.m
        super().__init__(descriptor, self.n * self.m, self.m, table_cache_limit)

    def _split(self, a):
        a = np.asarray(a, dtype=np.int64)
        return a // self.m, a % self.m

    def _add(self, a, b):
        (x, v), (y, w) = self._split(a), self._split(b)
        return ((x + y) % self.n) * self.m + (v + w) % self.m

    def _mul(self, a, b):
        (x, v), (y, w) = self._split(a), self._split(b)
        return ((x * y) % self.n) * self.m + ((x % self.m) * w + (y % self.m) * v) % self.m

    def _neg(self, a):
        x, v = self._split(a)
        return ((-x) % self.n) * self.m + (-v) % self.m

    def decode(self, index: int) -> Tuple[int, int]:
        return index // self.m, index % self.m

    def encode(self, value: Tuple[int, int]) -> int:
        a, v = value
        return (a % self.n) * self.m + v % self.m


class QuotientRing(FiniteRing):
    """R/I with cosets indexed in order of their smallest parent index"""

    def __init__(self, descriptor: Quotient, base: FiniteRing, kernel: "Ideal", table_cache_limit: int):
        self.base = base
        self.kernel = kernel
        members = np.asarray(kernel.members, dtype=np.int64)
        projection = np.full(base.size, -1, dtype=np.int64)
        representatives = []
        for a in base.elements():
            if projection[a] >= 0:
                continue
            projection[base.add_arrays(a, members)] = len(representatives)
            representatives.append(a)
        self.projection = projection
        self.representatives = np.asarray(representatives, dtype=np.int64)
        self.projection.setflags(write=False)
        self.representatives.setflags(write=False)
        super().__init__(descriptor, len(representatives), int(projection[base.one]), table_cache_limit)

    def _add(self, a, b):
        reps = self.representatives
        return self.projection[self.base.add_arrays(reps[a], reps[b])]

    def _mul(self, a, b):
        reps = self.representatives
        return self.projection[self.base.mul_arrays(reps[a], reps[b])]

    def _neg(self, a):
        return self.projection[self.base.neg_arrays(self.representatives[a])]

    def decode(self, index: int) -> int:
        """Smallest parent index of the coset"""
        return int(self.representatives[index])

    def encode(self, value: int) -> int:
        return int(self.projection[value])


class Projection:
    """The surjection R -> R/I on element indices"""

    def __init__(self, source: FiniteRing, target: QuotientRing):
        self.source = source
        self.target = target

    def __call__(self, a: int) -> int:
        return int(self.target.projection[a])

    @property
    def array(self) -> np.ndarray:
        return self.target.projection


def build(d: RingDescriptor, settings: Optional[Settings] = None) -> FiniteRing:
    """
    Realize a descriptor as a ring

    Rings are cached per (descriptor, size cap, table limit), so repeated
    builds of the same expression share one immutable object.

    Raises:
        InvalidDescriptor: If the descriptor breaks a construction rule
        SizeCapExceeded: If the ring would exceed the configured cap
    """
    settings = settings or get_settings()
    return _build_cached(d, settings.size_cap, settings.table_cache_limit)


@lru_cache(maxsize=512)
def _build_cached(d: RingDescriptor, cap: int, table_cache_limit: int) -> FiniteRing:
    validate_descriptor(d)
    structural_size(d, cap)
    ring = _realize(d, cap, table_cache_limit)
    logger.debug(f"built {ring!r}")
    return ring


def _realize(d: RingDescriptor, cap: int, table_cache_limit: int) -> FiniteRing:
    if isinstance(d, Zn):
        return ModularRing(d, table_cache_limit)
    if isinstance(d, TruncPoly):
        return TruncatedPolynomialRing(d, table_cache_limit)
    if isinstance(d, Idealize):
        return IdealizationRing(d, table_cache_limit)
    if isinstance(d, Product):
        factors = [_build_cached(f, cap, table_cache_limit) for f in d.factors]
        size = 1
        for factor in factors:
            size *= factor.size
        if size > cap:
            raise SizeCapExceeded(size, cap)
        return ProductRing(d, factors, table_cache_limit)
    if isinstance(d, Quotient):
        from src.services.ideals import generate

        base = _build_cached(d.base, cap, table_cache_limit)
        bad = [g for g in d.generators if g >= base.size]
        if bad:
            raise InvalidDescriptor(
                f"quotient generator {bad[0]} is not an element of {base.label} (size {base.size})"
            )
        kernel = generate(base, d.generators)
        if not kernel.is_proper():
            raise InvalidDescriptor(f"{render(d)} divides by the whole ring and would be the zero ring")
        return QuotientRing(d, base, kernel, table_cache_limit)
    raise InvalidDescriptor(f"unknown descriptor {d!r}")


def quotient_map(ring: FiniteRing, ideal: "Ideal") -> Tuple[QuotientRing, Projection]:
    """
    R/I together with the projection R -> R/I

    Raises:
        RingMismatch: If the ideal belongs to another ring
        ImproperIdeal: If I = R
    """
    if ideal.ring is not ring:
        raise RingMismatch(f"ideal of {ideal.ring.label} used with {ring.label}")
    if not ideal.is_proper():
        raise ImproperIdeal(f"cannot divide {ring.label} by the whole ring")
    descriptor = Quotient(base=ring.descriptor, generators=ideal.generators())
    quotient = QuotientRing(descriptor, ring, ideal, ring.table_cache_limit)
    return quotient, Projection(ring, quotient)


def units(ring: FiniteRing) -> FrozenSet[int]:
    return ring.units()


def verify_ring_axioms(ring: FiniteRing, settings: Optional[Settings] = None) -> List[str]:
    """
    Check the commutative-ring-with-identity axioms

    Exhaustive over all triples for small rings, a seeded sample of triples
    otherwise.

    Returns:
        Names of the axioms that failed (empty when the ring is sound)
    """
    settings = settings or get_settings()
    n = ring.size
    if n <= settings.exhaustive_axiom_limit:
        idx = np.arange(n, dtype=np.int64)
        a, b, c = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    else:
        rng = np.random.default_rng(settings.random_seed)
        a, b, c = rng.integers(0, n, size=(3, settings.axiom_samples), dtype=np.int64)

    add, mul = ring.add_arrays, ring.mul_arrays
    checks = [
        ("addition is commutative", add(a, b) == add(b, a)),
        ("multiplication is commutative", mul(a, b) == mul(b, a)),
        ("addition is associative", add(add(a, b), c) == add(a, add(b, c))),
        ("multiplication is associative", mul(mul(a, b), c) == mul(a, mul(b, c))),
        ("multiplication distributes over addition", mul(a, add(b, c)) == add(mul(a, b), mul(a, c))),
        ("zero is an additive identity", add(a, ring.zero) == a),
        ("one is a multiplicative identity", mul(a, ring.one) == a),
        ("every element has an additive inverse", add(a, ring.neg_arrays(a)) == ring.zero),
    ]
    failures = [name for name, holds in checks if not np.all(holds)]
    if ring.one == ring.zero:
        failures.append("one differs from zero")
    if failures:
        logger.error(f"{ring.label} fails ring axioms: {failures}")
    return failures


def check_elements(ring: FiniteRing, elements: Iterable[int]) -> List[int]:
    return [ring.check_element(int(a)) for a in elements]
