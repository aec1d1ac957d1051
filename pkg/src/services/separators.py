"""
Search a catalog for ideals that separate neighbouring ideal classes
"""

import logging
from typing import List, Optional, Sequence, Tuple

from src.core.config import Settings, get_settings
from src.core.exceptions import RingLabError
from src.models.descriptors import RingDescriptor
from src.models.schemas import SearchReport, SeparatorResult
from src.services.classifier import IdealClassifier
from src.services.ideals import Ideal
from src.services.rings import build
from src.utils.logging_utils import log_execution_time

logger = logging.getLogger(__name__)

# (first, second, proper ideals only, skip the zero ideal of an N-integral domain)
SEPARATOR_PAIRS: Tuple[Tuple[str, str, bool, bool], ...] = (
    ("nil_prime", "prime", True, False),
    ("n_prime", "nil_prime", True, True),
    ("n_maximal", "nil_maximal", True, True),
    ("n_principal", "nil_principal", False, False),
)


def _predicates(classifier: IdealClassifier) -> dict:
    return {
        "prime": classifier.is_prime,
        "nil_prime": classifier.is_nil_prime,
        "n_prime": classifier.is_n_prime,
        "nil_maximal": classifier.is_nil_maximal,
        "n_maximal": classifier.is_n_maximal,
        "n_principal": classifier.is_n_principal,
        "nil_principal": lambda ideal: classifier.nil_principal_witness(ideal) is not None,
    }


def _details(classifier: IdealClassifier, ideal: Ideal, first: str) -> dict:
    details = {"nilradical": list(classifier.nil.members)}
    if first == "nil_prime":
        details["nil_prime_witnesses"] = classifier.nil_prime_witnesses(ideal)
    elif first == "n_prime":
        details["widened"] = list(classifier.plus_nil(ideal).members)
        details["violating_pairs"] = len(classifier.violating_pairs(ideal))
    elif first == "n_maximal":
        details["ideals_above"] = [list(other.generators()) for other in classifier.lattice.containing(ideal)]
    elif first == "n_principal":
        details["n_principal_witness"] = classifier.n_principal_witness(ideal)
    return details


@log_execution_time
def find_separators(
    catalog: Sequence[RingDescriptor],
    settings: Optional[Settings] = None,
) -> SearchReport:
    """
    First ideal, in catalog order and then lattice order, for each separator pair

    The zero ideal of an N-integral domain is N-prime and N-maximal because of
    a property of the whole ring (Nil(R) is prime), so it is passed over for
    the N-prime and N-maximal pairs and counted in `ring_level_skipped`.

    Args:
        catalog: Non-empty sequence of ring descriptors, searched in order
        settings: Caps and limits, the application settings by default

    Returns:
        One SeparatorResult per pair, found or not
    """
    settings = settings or get_settings()
    if not catalog:
        raise RingLabError("separator search needs a non-empty catalog")

    pending = list(SEPARATOR_PAIRS)
    results = {}
    skipped = {pair[:2]: 0 for pair in SEPARATOR_PAIRS}
    searched = 0

    for descriptor in catalog:
        if not pending:
            break
        ring = build(descriptor, settings)
        searched += 1
        classifier = IdealClassifier(ring, settings)
        predicates = _predicates(classifier)
        domain = classifier.is_n_integral_domain()

        for first, second, proper_only, skip_zero in list(pending):
            for ideal in classifier.lattice:
                if proper_only and not ideal.is_proper():
                    continue
                if not (predicates[first](ideal) and not predicates[second](ideal)):
                    continue
                if skip_zero and domain and ideal.is_zero():
                    skipped[(first, second)] += 1
                    continue
                logger.info(f"separator {first} and not {second}: {ring.label} {ideal.label()}")
                results[(first, second)] = SeparatorResult(
                    pair=(first, second),
                    found=True,
                    ring=ring.label,
                    ideal=list(ideal.members),
                    generators=list(ideal.generators()),
                    details=_details(classifier, ideal, first),
                )
                pending.remove((first, second, proper_only, skip_zero))
                break

    separators: List[SeparatorResult] = []
    for first, second, _, _ in SEPARATOR_PAIRS:
        result = results.get((first, second)) or SeparatorResult(pair=(first, second), found=False)
        result.ring_level_skipped = skipped[(first, second)]
        separators.append(result)
    return SearchReport(rings_searched=searched, separators=separators)
