"""
Brute-force verification of the nil-prime family of theorems on finite rings
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations_with_replacement, product as cartesian
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.core.config import Settings, get_settings
from src.models.descriptors import RingDescriptor, Zn
from src.models.schemas import CatalogReport, TheoremEntry, TheoremReport
from src.services.classifier import IdealClassifier
from src.services.ideals import (
    Ideal,
    all_ideals,
    colon,
    ideal_product,
    image,
    radical,
)
from src.services.rings import (
    FiniteRing,
    IdealizationRing,
    ProductRing,
    TruncatedPolynomialRing,
    build,
    quotient_map,
)
from src.utils.logging_utils import LoggerMixin, log_execution_time
from src.utils.ring_spec import render

logger = logging.getLogger(__name__)

THEOREM_ORDER = ("T1", "T2", "T3", "T4", "T5", "T6", "T6b", "T7", "T8_T9", "T10", "T11", "T12", "T13")


class _Check:
    """Accumulates instances of one theorem and keeps the first counterexample"""

    def __init__(self, theorem_id: str, name: str):
        self.theorem_id = theorem_id
        self.name = name
        self.instances = 0
        self.counterexample: Optional[Dict[str, Any]] = None
        self.details: Dict[str, Any] = {}

    def hold(self, holds: bool, **payload: Any) -> None:
        self.instances += 1
        if not holds and self.counterexample is None:
            self.counterexample = payload

    def entry(self) -> TheoremEntry:
        if self.counterexample is not None:
            status = "fail"
        elif self.instances:
            status = "pass"
        else:
            status = "vacuous"
        return TheoremEntry(
            id=self.theorem_id,
            name=self.name,
            status=status,
            instances=self.instances,
            counterexample=self.counterexample,
            details=self.details or None,
        )


def _members(ideal: Ideal) -> List[int]:
    return list(ideal.members)


class TheoremVerifier(LoggerMixin):
    """
    Checks every theorem that applies to one ring

    Each tN method returns one TheoremEntry. A theorem whose hypothesis
    never holds in the ring is reported as vacuous, not as a pass.
    """

    def __init__(self, ring: FiniteRing, settings: Optional[Settings] = None):
        self.ring = ring
        self.settings = settings or get_settings()
        self.classifier = IdealClassifier(ring, self.settings)
        self.lattice = all_ideals(ring, self.settings)
        self.proper = self.lattice.proper()
        self.nil = self.classifier.nil
        self._nil_prime: Dict[int, List[int]] = {}

    def nil_prime_witnesses(self, ideal: Ideal) -> List[int]:
        cached = self._nil_prime.get(ideal.mask)
        if cached is None:
            cached = self.classifier.nil_prime_witnesses(ideal)
            self._nil_prime[ideal.mask] = cached
        return cached

    def t1_remark_hierarchy(self) -> TheoremEntry:
        check = _Check("T1", "prime implies nil-prime; nil-prime containing Nil(R) is prime; equal when reduced")
        reduced = self.nil.is_zero()
        for ideal in self.proper:
            prime = self.classifier.is_prime(ideal)
            witnesses = self.nil_prime_witnesses(ideal)
            if prime:
                check.hold(bool(witnesses), ideal=_members(ideal), clause="prime but not nil-prime")
            if witnesses and ideal.contains(self.nil):
                check.hold(prime, ideal=_members(ideal), clause="nil-prime over Nil(R) but not prime")
            if reduced:
                check.hold(
                    bool(witnesses) == prime and witnesses in ([], [0]),
                    ideal=_members(ideal),
                    clause="reduced ring where nil-prime and prime differ",
                    witnesses=witnesses,
                )
        check.details = {"reduced": reduced}
        return check.entry()

    def t2_hierarchy_chain(self) -> TheoremEntry:
        check = _Check("T2", "nil-prime implies N-prime (= P+Nil(R) prime); nil-maximal implies N-maximal")
        classifier = self.classifier
        for ideal in self.proper:
            n_prime = classifier.is_n_prime(ideal)
            if self.nil_prime_witnesses(ideal):
                check.hold(n_prime, ideal=_members(ideal), clause="nil-prime but not N-prime")
            check.hold(
                n_prime == classifier.is_prime(classifier.plus_nil(ideal)),
                ideal=_members(ideal),
                clause="N-prime disagrees with primality of P + Nil(R)",
            )
            if classifier.is_nil_maximal(ideal):
                check.hold(classifier.is_n_maximal(ideal), ideal=_members(ideal), clause="nil-maximal but not N-maximal")
        for ideal in self.lattice:
            if classifier.nil_principal_witness(ideal) is not None:
                check.hold(classifier.is_n_principal(ideal), ideal=_members(ideal), clause="nil-principal but not N-principal")
        return check.entry()

    def t3_radical(self) -> TheoremEntry:
        check = _Check("T3", "the radical of a nil-prime ideal is prime")
        for ideal in self.proper:
            if self.nil_prime_witnesses(ideal):
                root = radical(ideal)
                check.hold(self.classifier.is_prime(root), ideal=_members(ideal), radical=_members(root))
        return check.entry()

    def t4_doubling(self) -> TheoremEntry:
        check = _Check("T4", "2x lies in P for every witness x; 2a or 2b lies in P for every violating pair")
        add = self.ring.add
        for ideal in self.proper:
            witnesses = self.nil_prime_witnesses(ideal)
            if not witnesses:
                continue
            bad_witness = next((x for x in witnesses if add(x, x) not in ideal), None)
            check.hold(bad_witness is None, ideal=_members(ideal), witness=bad_witness)
            bad_pair = next(
                ((a, b) for a, b in self.classifier.violating_pairs(ideal)
                 if add(a, a) not in ideal and add(b, b) not in ideal),
                None,
            )
            check.hold(bad_pair is None, ideal=_members(ideal), pair=list(bad_pair) if bad_pair else None)
        return check.entry()

    def t5_nilmax_implies_nprime(self) -> TheoremEntry:
        check = _Check("T5", "every nil-maximal ideal is N-prime")
        for ideal in self.proper:
            if self.classifier.is_nil_maximal(ideal):
                check.hold(self.classifier.is_n_prime(ideal), ideal=_members(ideal))
        return check.entry()

    def t6_quotient_image(self) -> TheoremEntry:
        """Images of nil-prime ideals (and of their witnesses) under every quotient map R -> R/I with I inside P"""
        check = _Check("T6", "the image of a nil-prime P in R/I is nil-prime, witnesses map to witnesses")
        for ideal in self.proper:
            witnesses = self.nil_prime_witnesses(ideal)
            if not witnesses:
                continue
            for kernel in self.lattice.contained_in(ideal):
                quotient, projection = quotient_map(self.ring, kernel)
                target = image(projection, ideal)
                image_witnesses = set(IdealClassifier(quotient, self.settings).nil_prime_witnesses(target))
                lost = [x for x in witnesses if projection(x) not in image_witnesses]
                check.hold(
                    bool(image_witnesses) and not lost,
                    ideal=_members(ideal),
                    kernel=_members(kernel),
                    image=_members(target),
                    unmapped_witnesses=lost,
                )
        return check.entry()

    def t6b_evaluation(self) -> TheoremEntry:
        """Evaluation at zero, Zn[x]/(x^k) -> Zn, carries nil-prime <P, x> to nil-prime P"""
        ring = self.ring
        check = _Check("T6b", "<P, x> nil-prime in Zn[x]/(x^k) implies P nil-prime in Zn")
        x_ideal = self.classifier.principal(ring.x)
        evaluation, projection = quotient_map(ring, x_ideal)
        target_classifier = IdealClassifier(evaluation, self.settings)
        for ideal in self.proper:
            if not ideal.contains(x_ideal) or not self.nil_prime_witnesses(ideal):
                continue
            target = image(projection, ideal)
            check.hold(
                bool(target_classifier.nil_prime_witnesses(target)),
                ideal=_members(ideal),
                image=_members(target),
            )
        check.details = {"evaluation_ring_size": evaluation.size}
        return check.entry()

    def t7_products(self) -> TheoremEntry:
        """
        Nil-prime ideals of R1 x ... x Rn are exactly the products with one
        nil-prime factor and every other factor whole

        Both directions are tallied separately in the details so either one
        failing is visible on its own.
        """
        ring = self.ring
        check = _Check("T7", "P1 x ... x Pn nil-prime iff one factor nil-prime and the rest whole")
        factor_lattices = [all_ideals(f, self.settings) for f in ring.factors]
        factor_classifiers = [IdealClassifier(f, self.settings) for f in ring.factors]
        components = ring.components(np.arange(ring.size, dtype=np.int64))

        expected = 1
        for lattice in factor_lattices:
            expected *= len(lattice)
        check.hold(
            expected == len(self.lattice),
            clause="ideal count differs from the product of factor ideal counts",
            product_count=expected,
            lattice_count=len(self.lattice),
        )

        forward = backward = 0
        for parts in cartesian(*factor_lattices):
            flags = np.ones(ring.size, dtype=bool)
            for part, component in zip(parts, components):
                flags &= part.flags[component]
            ideal = self.lattice.find(Ideal.from_flags(ring, flags).mask)
            payload = {"factors": [_members(p) for p in parts]}
            if ideal is None:
                check.hold(False, clause="product of factor ideals missing from the lattice", **payload)
                continue
            lhs = ideal.is_proper() and bool(self.nil_prime_witnesses(ideal))
            rhs = any(
                parts[j].is_proper()
                and factor_classifiers[j].is_nil_prime(parts[j])
                and all(not p.is_proper() for i, p in enumerate(parts) if i != j)
                for j in range(len(parts))
            )
            if lhs:
                forward += 1
                check.hold(rhs, clause="nil-prime product without the factor shape", **payload)
            if rhs:
                backward += 1
                check.hold(lhs, clause="factor shape without a nil-prime product", **payload)
        check.details = {"factors": len(ring.factors), "forward_instances": forward, "backward_instances": backward}
        return check.entry()

    def t8_t9_idealization(self) -> TheoremEntry:
        """Homogeneous ideals P (+) N of Zn (+) Zm against nil-primality in Zn"""
        ring = self.ring
        n, m = ring.n, ring.m
        check = _Check("T8_T9", "idealization: witness shape, descent and ascent of nil-primality, Nil law")
        base = build(Zn(n=n), self.settings)
        base_classifier = IdealClassifier(base, self.settings)
        first = np.arange(ring.size, dtype=np.int64) // m
        second = np.arange(ring.size, dtype=np.int64) % m
        submodules = [
            np.asarray([v % e == 0 for v in range(m)], dtype=bool)
            for e in range(1, m + 1) if m % e == 0
        ]

        for base_ideal in all_ideals(base, self.settings):
            base_nil_prime = base_ideal.is_proper() and base_classifier.is_nil_prime(base_ideal)
            for sub in submodules:
                if not all(sub[a % m] for a in base_ideal.members):
                    continue
                homogeneous = Ideal.from_flags(ring, base_ideal.flags[first] & sub[second])
                payload = {"base_ideal": _members(base_ideal), "submodule": np.nonzero(sub)[0].tolist()}
                if not homogeneous.is_proper():
                    continue
                witnesses = self.nil_prime_witnesses(homogeneous)
                whole_module = bool(sub.all())
                if witnesses:
                    check.hold(base_nil_prime, clause="nil-prime P (+) N over a P that is not nil-prime", **payload)
                if whole_module and base_nil_prime:
                    check.hold(bool(witnesses), clause="nil-prime P whose P (+) M is not nil-prime", **payload)
                if whole_module or not witnesses:
                    continue
                outside = [v for v in range(m) if not sub[v]]
                for t in witnesses:
                    x, w = ring.decode(t)
                    check.hold(
                        not sub[w] and x in base_ideal and sub[(2 * w) % m]
                        and all(sub[(2 * v) % m] for v in outside),
                        clause="witness (x, w) of the wrong shape",
                        witness=[x, w],
                        **payload,
                    )

        nil_members = set(self.nil.members)
        law = {a * m + v for a in base_classifier.nil_elements for v in range(m)}
        check.hold(
            nil_members == law,
            clause="Nil(R (+) M) differs from Nil(R) (+) M",
            nilradical=sorted(nil_members),
            expected=sorted(law),
        )
        for ideal in self.proper:
            if not self.classifier.is_prime(ideal):
                continue
            shadow = [a for a in range(n) if a * m in ideal]
            full_module = all(a * m + v in ideal for a in shadow for v in range(m))
            base_prime = base_classifier.is_prime(Ideal.from_indices(base, shadow))
            check.hold(
                full_module and base_prime and len(ideal) == len(shadow) * m,
                clause="prime ideal not of the form P1 (+) M",
                ideal=_members(ideal),
            )
        return check.entry()

    def t10_ideal_product(self) -> TheoremEntry:
        check = _Check("T10", "a product of ideals inside an N-prime P has a factor inside P + Nil(R)")
        ideals = list(self.lattice)
        pair_products: Dict[Tuple[int, int], Ideal] = {}
        for i, j in combinations_with_replacement(range(len(ideals)), 2):
            pair_products[(i, j)] = ideal_product(ideals[i], ideals[j])
        triple_products: Dict[Tuple[int, int, int], Ideal] = {}
        for i, j, k in combinations_with_replacement(range(len(ideals)), 3):
            triple_products[(i, j, k)] = ideal_product(pair_products[(i, j)], ideals[k])

        groups: List[Tuple[Tuple[int, ...], Ideal]] = list(pair_products.items()) + list(triple_products.items())
        for ideal in self.proper:
            if not self.classifier.is_n_prime(ideal):
                continue
            widened = self.classifier.plus_nil(ideal)
            for indices, prod in groups:
                if not ideal.contains(prod):
                    continue
                check.hold(
                    any(widened.contains(ideals[i]) for i in indices),
                    ideal=_members(ideal),
                    factors=[_members(ideals[i]) for i in indices],
                )
        return check.entry()

    def t11_artinian(self) -> TheoremEntry:
        check = _Check("T11", "every N-prime ideal is N-maximal; nil-maximal ideals and their nil-distinctness")
        classifier = self.classifier
        for ideal in self.proper:
            if classifier.is_n_prime(ideal):
                check.hold(classifier.is_n_maximal(ideal), ideal=_members(ideal))
        nil_maximal = [ideal for ideal in self.proper if classifier.is_nil_maximal(ideal)]
        check.details = {
            "nil_maximal_count": len(nil_maximal),
            "nil_maximal": [list(ideal.generators()) for ideal in nil_maximal],
            "nil_distinct": [[classifier.nil_distinct(a, b) for b in nil_maximal] for a in nil_maximal],
        }
        return check.entry()

    def t12_nil_minimal(self) -> TheoremEntry:
        check = _Check("T12", "a nil-minimal I outside Nil(R) is nil-principal and (Nil(R) : I) is maximal")
        classifier = self.classifier
        for ideal in self.proper:
            if ideal.is_zero() or self.nil.contains(ideal) or not classifier.is_nil_minimal(ideal):
                continue
            annihilator = colon(self.nil, ideal)
            check.hold(
                classifier.nil_principal_witness(ideal) is not None and classifier.is_maximal(annihilator),
                ideal=_members(ideal),
                colon=_members(annihilator),
            )
        return check.entry()

    def t13_n_pid(self) -> TheoremEntry:
        check = _Check("T13", "an N-integral domain is an N-PID iff every N-prime ideal is N-principal")
        classifier = self.classifier
        if not classifier.is_n_integral_domain():
            check.details = {"skipped": "the zero ideal is not N-prime, so the ring is not an N-integral domain"}
            return check.entry()
        is_pid = classifier.is_n_pid()
        primes_principal = all(
            classifier.is_n_principal(ideal) for ideal in self.proper if classifier.is_n_prime(ideal)
        )
        check.hold(is_pid == primes_principal, n_pid=is_pid, n_primes_principal=primes_principal)
        check.details = {"n_pid": is_pid}
        return check.entry()

    @log_execution_time
    def verify_all(self) -> TheoremReport:
        """Run every theorem that applies to the ring's shape"""
        entries = [
            self.t1_remark_hierarchy(),
            self.t2_hierarchy_chain(),
            self.t3_radical(),
            self.t4_doubling(),
            self.t5_nilmax_implies_nprime(),
            self.t6_quotient_image(),
        ]
        if isinstance(self.ring, TruncatedPolynomialRing) and self.ring.k > 1:
            entries.append(self.t6b_evaluation())
        if isinstance(self.ring, ProductRing):
            entries.append(self.t7_products())
        if isinstance(self.ring, IdealizationRing):
            entries.append(self.t8_t9_idealization())
        entries.extend([self.t10_ideal_product(), self.t11_artinian(), self.t12_nil_minimal(), self.t13_n_pid()])

        report = TheoremReport(ring=self.ring.label, theorems=entries)
        if report.failed:
            failed = [entry.id for entry in entries if entry.status == "fail"]
            self.logger.error(f"{self.ring.label}: theorem failures {failed}")
        return report


def verify_all(ring: FiniteRing, settings: Optional[Settings] = None) -> TheoremReport:
    return TheoremVerifier(ring, settings).verify_all()


def _verify_descriptor(descriptor: RingDescriptor, settings: Settings) -> TheoremReport:
    return TheoremVerifier(build(descriptor, settings), settings).verify_all()


@log_execution_time
def verify_catalog(
    catalog: Sequence[RingDescriptor],
    settings: Optional[Settings] = None,
    workers: Optional[int] = None,
) -> CatalogReport:
    """
    Verify every ring of a catalog

    Args:
        catalog: Ring descriptors
        settings: Caps and limits, the application settings by default
        workers: Process count; 1 runs serially

    Returns:
        Reports sorted by ring text, with status totals over all entries
    """
    settings = settings or get_settings()
    workers = workers or settings.workers
    unique = {render(d): d for d in catalog}
    descriptors = [unique[text] for text in sorted(unique)]

    if workers > 1 and len(descriptors) > 1:
        logger.info(f"verifying {len(descriptors)} rings on {workers} processes")
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_descriptor, descriptors, [settings] * len(descriptors)))
    else:
        reports = [_verify_descriptor(d, settings) for d in descriptors]

    statuses = [entry.status for report in reports for entry in report.theorems]
    return CatalogReport(
        rings=len(reports),
        passed=statuses.count("pass"),
        failed=statuses.count("fail"),
        vacuous=statuses.count("vacuous"),
        reports=reports,
    )
