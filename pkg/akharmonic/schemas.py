# Schemas for validation, harmonic and sweep reports

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Dict, List, Optional

from akharmonic.config import REPORT_SCHEMA_VERSION
from akharmonic.models import CheckStatus

# ==================== Validation Schemas ====================

class ValidationEntry(BaseModel):
    check: str
    passed: bool
    witness: Optional[str] = None
    detail: Optional[str] = None


class ValidationReport(BaseModel):
    """Outcome of validating a ManifoldSpec; failures are entries, never exceptions"""
    name: str
    dim: int
    entries: List[ValidationEntry]
    integrable: Optional[bool] = None
    unimodular: Optional[bool] = None
    nijenhuis: Dict[str, str] = Field(default_factory=dict, description="Nonzero N_J(e_i, e_j) by pair")

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def failures(self) -> List[ValidationEntry]:
        return [entry for entry in self.entries if not entry.passed]

# ==================== Check Schemas ====================

class CheckResult(BaseModel):
    id: str
    status: CheckStatus
    witness: Optional[str] = None
    detail: Optional[str] = None
    anchor: Optional[str] = None

    @model_validator(mode="after")
    def _fail_needs_witness(self):
        if self.status == CheckStatus.FAIL and not self.witness:
            raise ValueError(f"failed check {self.id} carries no witness")
        return self

# ==================== Harmonic Report Schemas ====================

class StructureFlags(BaseModel):
    integrable: bool
    almost_kahler: bool
    unimodular: bool


class BettiNumbers(BaseModel):
    b: List[int]
    b_plus: int
    b_minus: int


class HarmonicNumbers(BaseModel):
    """Complex dimensions of the invariant harmonic spaces; pq keys are "p,q" """
    delbar: List[List[int]] = Field(..., description="h^{p,q} of the delbar system, indexed [p][q]")
    del_delbar_pq: Dict[str, int]
    delta_k: List[int]
    delta_deltabar_k: List[int]
    d_pq: Dict[str, int]
    d_dc_k: List[int]
    h_minus_J: int


class HarmonicReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=REPORT_SCHEMA_VERSION, alias="schema-version")
    spec_digest: str = Field(..., alias="spec-digest")
    name: str
    level: str = "invariant-level"
    orientation: int = Field(..., description="Sign of the Pfaffian of the fundamental form")
    flags: StructureFlags
    betti: BettiNumbers
    h: HarmonicNumbers
    checks: List[CheckResult] = Field(default_factory=list)

    def cells(self) -> Dict[str, int]:
        """Every dimension in the report under a flat, stable key"""
        out: Dict[str, int] = {}
        for p, row in enumerate(self.h.delbar):
            for q, value in enumerate(row):
                out[f"delbar[{p},{q}]"] = value
        for key, value in self.h.del_delbar_pq.items():
            out[f"del_delbar_pq[{key}]"] = value
        for k, value in enumerate(self.h.delta_k):
            out[f"delta_k[{k}]"] = value
        for k, value in enumerate(self.h.delta_deltabar_k):
            out[f"delta_deltabar_k[{k}]"] = value
        for key, value in self.h.d_pq.items():
            out[f"d_pq[{key}]"] = value
        for k, value in enumerate(self.h.d_dc_k):
            out[f"d_dc_k[{k}]"] = value
        out["h_minus_J"] = self.h.h_minus_J
        for k, value in enumerate(self.betti.b):
            out[f"b[{k}]"] = value
        out["b_plus"] = self.betti.b_plus
        out["b_minus"] = self.betti.b_minus
        return out

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)

# ==================== Sweep Schemas ====================

class SweepSample(BaseModel):
    value: str
    valid: bool
    error: Optional[str] = None
    report: Optional[HarmonicReport] = None


class SweepResult(BaseModel):
    name: str
    parameter: str
    values: List[str]
    samples: List[SweepSample]
    variation: Dict[str, List[int]] = Field(..., description="Distinct values attained per cell")
    varying: List[str]
    constancy_checked: bool
    checks: List[CheckResult] = Field(default_factory=list)

    @model_validator(mode="after")
    def _enough_samples(self):
        if len(self.samples) < 2:
            raise ValueError("a sweep needs at least two samples")
        return self

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)

# ==================== Verification Schemas ====================

class VerificationReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=REPORT_SCHEMA_VERSION, alias="schema-version")
    spec_digest: str = Field(..., alias="spec-digest")
    name: str
    suites: List[str]
    checks: List[CheckResult]

    def failures(self, strict: bool = False) -> List[CheckResult]:
        """Failed checks; with strict, not-applicable ones count too"""
        bad = {CheckStatus.FAIL, CheckStatus.NOT_APPLICABLE} if strict else {CheckStatus.FAIL}
        return [check for check in self.checks if check.status in bad]

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)
