"""
Ring catalogs: the built-in default and one-expression-per-line files
"""

import logging
from pathlib import Path
from typing import Iterable, List, Optional

from src.core.config import Settings, get_settings
from src.core.exceptions import CatalogError, RingLabError
from src.models.descriptors import Idealize, Product, RingDescriptor, TruncPoly, Zn
from src.services.rings import build
from src.utils.ring_spec import parse

logger = logging.getLogger(__name__)

TRUNCATED_POLYNOMIALS = ((2, 2), (2, 3), (3, 2), (4, 2))
IDEALIZATIONS = ((2, 2), (4, 2), (8, 2), (4, 4), (9, 3))


def default_catalog() -> List[RingDescriptor]:
    """
    Z2..Z64, every Za x Zb for a, b in 2..9, Z2 x Z2 x Z4, four truncated
    polynomial rings and five idealizations, in that order
    """
    catalog: List[RingDescriptor] = [Zn(n=n) for n in range(2, 65)]
    catalog += [Product(factors=(Zn(n=a), Zn(n=b))) for a in range(2, 10) for b in range(2, 10)]
    catalog.append(Product(factors=(Zn(n=2), Zn(n=2), Zn(n=4))))
    catalog += [TruncPoly(n=n, k=k) for n, k in TRUNCATED_POLYNOMIALS]
    catalog += [Idealize(n=n, m=m) for n, m in IDEALIZATIONS]
    return catalog


def parse_catalog(lines: Iterable[str], settings: Optional[Settings] = None) -> List[RingDescriptor]:
    """
    Parse catalog lines; blank lines and text after '#' are ignored

    Each ring is built as it is read, so construction rules and the size
    cap are checked against the line that names the ring.

    Raises:
        CatalogError: Carrying the 1-based line number and the parse or validation error
    """
    settings = settings or get_settings()
    catalog = []
    for number, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            descriptor = parse(text)
            build(descriptor, settings)
        except RingLabError as e:
            raise CatalogError(number, e) from e
        catalog.append(descriptor)
    return catalog


def load_catalog(path: Optional[str] = None, settings: Optional[Settings] = None) -> List[RingDescriptor]:
    """Descriptors from a catalog file, or the default catalog when no path is given"""
    if path is None:
        return default_catalog()
    logger.info(f"loading catalog from {path}")
    catalog = parse_catalog(Path(path).read_text(encoding="utf-8").splitlines(), settings)
    if not catalog:
        raise RingLabError(f"catalog {path} names no rings")
    return catalog
