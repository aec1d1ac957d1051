"""
Ring laboratory service shared by the command line and the HTTP front end
"""

import logging
from typing import List, Optional, Sequence

from src.core.config import Settings, get_settings
from src.core.exceptions import RingLabError
from src.models.descriptors import RingDescriptor
from src.models.schemas import (
    CatalogReport,
    ClassificationReport,
    IdealsReport,
    IdealSummary,
    RingInfo,
    SearchReport,
)
from src.services.catalog import load_catalog, parse_catalog
from src.services.classifier import IdealClassifier
from src.services.ideals import generate
from src.services.rings import FiniteRing, build
from src.services.separators import find_separators
from src.services.theorems import verify_catalog
from src.utils.ring_spec import parse

logger = logging.getLogger(__name__)


class RingLabService:
    """Turns ring expressions into reports"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    def ring(self, text: str) -> FiniteRing:
        """
        Parse and build a ring expression

        Raises:
            ParseError: If the text does not match the grammar
            InvalidDescriptor: If the construction is invalid
            SizeCapExceeded: If the ring is larger than the cap
        """
        try:
            return build(parse(text), self.settings)
        except RingLabError as e:
            logger.error(f"Cannot build ring {text!r}: {e}")
            raise

    def catalog(self, expressions: Optional[Sequence[str]] = None) -> List[RingDescriptor]:
        """Explicit expressions, else the configured catalog file, else the default catalog"""
        if expressions is not None:
            return parse_catalog(expressions, self.settings)
        return load_catalog(self.settings.catalog_path, self.settings)

    def info(self, text: str) -> RingInfo:
        ring = self.ring(text)
        classifier = IdealClassifier(ring, self.settings)
        return RingInfo(
            ring=ring.label,
            size=ring.size,
            zero=ring.zero,
            one=ring.one,
            units_count=len(ring.units()),
            nilradical=list(classifier.nil.members),
            ideal_count=len(classifier.lattice),
            reduced=classifier.nil.is_zero(),
            n_integral_domain=classifier.is_n_integral_domain(),
        )

    def ideals(self, text: str) -> IdealsReport:
        ring = self.ring(text)
        classifier = IdealClassifier(ring, self.settings)
        rows = []
        for ideal in classifier.lattice:
            row = IdealSummary(generators=list(ideal.generators()), members=list(ideal.members))
            if ideal.is_proper():
                row.prime = classifier.is_prime(ideal)
                row.maximal = classifier.is_maximal(ideal)
                row.nil_prime = classifier.is_nil_prime(ideal)
                row.n_prime = classifier.is_n_prime(ideal)
                row.nil_maximal = classifier.is_nil_maximal(ideal)
                row.n_maximal = classifier.is_n_maximal(ideal)
            rows.append(row)
        return IdealsReport(ring=ring.label, ideals=rows)

    def classify(self, text: str, generators: Sequence[int]) -> ClassificationReport:
        ring = self.ring(text)
        try:
            ideal = generate(ring, generators)
            return IdealClassifier(ring, self.settings).classify(ideal)
        except RingLabError as e:
            logger.error(f"Cannot classify {list(generators)} in {ring.label}: {e}")
            raise

    def verify(self, text: Optional[str] = None, expressions: Optional[Sequence[str]] = None) -> CatalogReport:
        """Theorem reports for one ring, or for the catalog when no ring is given"""
        if text is not None:
            self.ring(text)
            descriptors = [parse(text)]
        else:
            descriptors = self.catalog(expressions)
        report = verify_catalog(descriptors, self.settings, self.settings.workers)
        if report.failed:
            logger.error(f"{report.failed} theorem checks failed over {report.rings} rings")
        return report

    def search(self, expressions: Optional[Sequence[str]] = None) -> SearchReport:
        return find_separators(self.catalog(expressions), self.settings)
