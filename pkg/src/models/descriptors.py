"""
Ring descriptors: the abstract syntax of a ring expression
"""

from typing import Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field
from typing_extensions import Annotated

from src.core.exceptions import InvalidDescriptor, SizeCapExceeded


class _Descriptor(BaseModel):
    model_config = ConfigDict(frozen=True)


class Zn(_Descriptor):
    """The integers modulo n"""

    kind: Literal["zn"] = "zn"
    n: int


class Product(_Descriptor):
    """Direct product; the leftmost factor is least significant in the encoding"""

    kind: Literal["product"] = "product"
    factors: Tuple["RingDescriptor", ...]


class TruncPoly(_Descriptor):
    """Z_n[x]/(x^k)"""

    kind: Literal["trunc_poly"] = "trunc_poly"
    n: int
    k: int


class Idealize(_Descriptor):
    """Idealization Z_n (+) Z_m with scalar action a.v = (a mod m) v"""

    kind: Literal["idealize"] = "idealize"
    n: int
    m: int


class Quotient(_Descriptor):
    """Quotient of a base ring by the ideal its generators span"""

    kind: Literal["quotient"] = "quotient"
    base: "RingDescriptor"
    generators: Tuple[int, ...]


RingDescriptor = Annotated[
    Union[Zn, Product, TruncPoly, Idealize, Quotient],
    Field(discriminator="kind"),
]

Product.model_rebuild()
Quotient.model_rebuild()


def validate_descriptor(d: "RingDescriptor") -> None:
    """
    Check the structural construction rules of a descriptor

    Quotient generator ranges need the realized base ring and are checked
    when the ring is built.

    Raises:
        InvalidDescriptor: If a rule is violated
    """
    if isinstance(d, Zn):
        if d.n < 2:
            raise InvalidDescriptor(f"Z{d.n}: modulus must be at least 2")
    elif isinstance(d, Product):
        if len(d.factors) < 2:
            raise InvalidDescriptor("a product needs at least two factors")
        for factor in d.factors:
            validate_descriptor(factor)
    elif isinstance(d, TruncPoly):
        if d.n < 2:
            raise InvalidDescriptor(f"Z{d.n}[x]^{d.k}: modulus must be at least 2")
        if d.k < 1:
            raise InvalidDescriptor(f"Z{d.n}[x]^{d.k}: degree bound must be at least 1")
    elif isinstance(d, Idealize):
        if d.n < 2:
            raise InvalidDescriptor(f"Z{d.n}(+)Z{d.m}: ring modulus must be at least 2")
        if d.m < 1:
            raise InvalidDescriptor(f"Z{d.n}(+)Z{d.m}: module order must be positive")
        if d.n % d.m != 0:
            raise InvalidDescriptor(
                f"Z{d.n}(+)Z{d.m}: {d.m} does not divide {d.n}, so the scalar action is not defined"
            )
    elif isinstance(d, Quotient):
        validate_descriptor(d.base)
        if not d.generators:
            raise InvalidDescriptor("a quotient needs at least one generator")
        if any(g < 0 for g in d.generators):
            raise InvalidDescriptor("quotient generators must be non-negative element indices")
    else:
        raise InvalidDescriptor(f"unknown descriptor {d!r}")


def structural_size(d: "RingDescriptor", cap: int) -> Optional[int]:
    """
    Element count of a descriptor, computed without building it

    Returns None for quotients, whose size depends on the realized ideal.

    Raises:
        SizeCapExceeded: As soon as the count provably exceeds `cap`
    """
    if isinstance(d, Zn):
        size = d.n
    elif isinstance(d, Idealize):
        size = d.n * d.m
    elif isinstance(d, TruncPoly):
        size = 1
        for _ in range(d.k):
            size *= d.n
            if size > cap:
                raise SizeCapExceeded(None, cap)
    elif isinstance(d, Product):
        size = 1
        for factor in d.factors:
            factor_size = structural_size(factor, cap)
            if factor_size is None:
                return None
            size *= factor_size
            if size > cap:
                raise SizeCapExceeded(None, cap)
    else:
        return None
    if size > cap:
        raise SizeCapExceeded(size, cap)
    return size
