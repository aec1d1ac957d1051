"""
Pydantic models for reports and request/response schemas
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

TheoremStatus = Literal["pass", "fail", "vacuous"]


class PairFallback(BaseModel):
    """A violating pair together with the nilpotents that rescue it on their own"""

    a: int = Field(..., description="First factor, outside the ideal")
    b: int = Field(..., description="Second factor, outside the ideal")
    rescuers: List[int] = Field(..., description="x in Nil(R) with a+x or b+x in the ideal")


class Witnesses(BaseModel):
    """Witness payloads of the existential predicates (null when not applicable)"""

    nil_prime: Optional[List[int]] = Field(None, description="All x in Nil(R) serving every violating pair")
    nil_maximal: Optional[List[int]] = Field(None, description="All x in Nil(R) covering every ideal above")
    nil_minimal: Optional[List[int]] = Field(None, description="All x in Nil(R) covering every ideal below")
    nil_principal: Optional[Tuple[int, int]] = Field(None, description="Smallest (r, x) with I = Rr + Rx")
    n_principal: Optional[int] = Field(None, description="Smallest r with I inside Rr + Nil(R)")


class ClassificationReport(BaseModel):
    """Every predicate verdict and witness for one ideal"""

    ring: str = Field(..., description="Rendered ring expression")
    generators: List[int] = Field(..., description="Generating set of the ideal")
    members: List[int] = Field(..., description="Sorted element indices of the ideal")
    proper: bool
    prime: Optional[bool] = None
    maximal: Optional[bool] = None
    nil_prime: Optional[bool] = None
    n_prime: Optional[bool] = None
    nil_maximal: Optional[bool] = None
    n_maximal: Optional[bool] = None
    nil_minimal: Optional[bool] = None
    nil_principal: bool
    n_principal: bool
    witnesses: Witnesses = Field(default_factory=Witnesses)
    witnesses_complete: bool = Field(
        True, description="False when witness sets were cut to the first entry or the witness limit"
    )
    fallbacks: List[PairFallback] = Field(
        default_factory=list,
        description="Per-pair rescuers when no single nilpotent serves every pair",
    )

    @model_validator(mode="after")
    def _witness_matches_verdict(self) -> "ClassificationReport":
        for name in ("nil_prime", "nil_maximal", "nil_minimal"):
            verdict = getattr(self, name)
            witness = getattr(self.witnesses, name)
            if verdict is False and witness:
                raise ValueError(f"{name} is false but has witnesses {witness}")
            if verdict and not witness and self.witnesses_complete:
                raise ValueError(f"{name} is true without a witness")
        if self.nil_principal != (self.witnesses.nil_principal is not None):
            raise ValueError("nil_principal verdict disagrees with its witness")
        if self.n_principal != (self.witnesses.n_principal is not None):
            raise ValueError("n_principal verdict disagrees with its witness")
        return self


class TheoremEntry(BaseModel):
    """Result of one theorem check on one ring"""

    id: str = Field(..., description="Theorem id, e.g. T1 or T8_T9")
    name: str = Field(..., description="Short description of the statement checked")
    status: TheoremStatus
    instances: int = Field(0, ge=0, description="Instances whose hypothesis held and were checked")
    counterexample: Optional[Dict[str, Any]] = None
    details: Optional[Dict[str, Any]] = None

    @model_validator(mode="after")
    def _fail_iff_counterexample(self) -> "TheoremEntry":
        if (self.status == "fail") != (self.counterexample is not None):
            raise ValueError("status 'fail' and a counterexample must come together")
        return self


class TheoremReport(BaseModel):
    ring: str
    theorems: List[TheoremEntry]

    @property
    def failed(self) -> bool:
        return any(entry.status == "fail" for entry in self.theorems)


class CatalogReport(BaseModel):
    """Theorem reports for many rings, sorted by ring text"""

    rings: int
    passed: int
    failed: int
    vacuous: int
    reports: List[TheoremReport]


class SeparatorResult(BaseModel):
    """An ideal satisfying the first predicate and violating the second"""

    pair: Tuple[str, str]
    found: bool
    ring: Optional[str] = None
    ideal: Optional[List[int]] = Field(None, description="Members of the separating ideal")
    generators: Optional[List[int]] = None
    details: Dict[str, Any] = Field(default_factory=dict)
    ring_level_skipped: int = Field(
        0, description="Zero ideals passed over because the property holds for the whole ring"
    )


class SearchReport(BaseModel):
    rings_searched: int
    separators: List[SeparatorResult]


class RingInfo(BaseModel):
    ring: str
    size: int
    zero: int
    one: int
    units_count: int
    nilradical: List[int]
    ideal_count: int
    reduced: bool
    n_integral_domain: bool


class IdealSummary(BaseModel):
    """One lattice row: the ideal and its headline verdicts"""

    generators: List[int]
    members: List[int]
    prime: Optional[bool] = None
    maximal: Optional[bool] = None
    nil_prime: Optional[bool] = None
    n_prime: Optional[bool] = None
    nil_maximal: Optional[bool] = None
    n_maximal: Optional[bool] = None


class IdealsReport(BaseModel):
    ring: str
    ideals: List[IdealSummary]


class RingRequest(BaseModel):
    ring: str = Field(..., description="Ring expression", examples=["Z8", "Z4[x]^2", "Z8 x Z3"])


class ClassifyRequest(RingRequest):
    ideal: List[int] = Field(..., description="Generators as element indices", examples=[[0], [16]])


class VerifyRequest(BaseModel):
    ring: Optional[str] = Field(None, description="Single ring; the catalog is used when omitted")
    catalog: Optional[List[str]] = Field(None, description="Ring expressions replacing the default catalog")


class SearchRequest(BaseModel):
    catalog: Optional[List[str]] = Field(None, description="Ring expressions replacing the default catalog")
