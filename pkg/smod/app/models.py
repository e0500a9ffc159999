# smod/app/models.py
"""Pydantic models for verification tasks and reports"""
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

THEOREM_IDS = (
    'exactness_1_5', 'rank_1_4', 'ses_2_4', 'kic_2_5', 'projdim_2_6', 'homology_2_7',
    'dsum_3_1', 'subops_3_2', 'gens_3_3', 'anndim_3_4', 'colon_3_6',
    'tor_4_2', 'ext_4_3', 'grade_4_4', 'perfect_4_5',
)


class VerificationTask(BaseModel):
    """One randomized verification campaign"""
    theorem_id: str = Field(..., description="Registered theorem id, e.g. tor_4_2")
    inputs: List[str] = Field(..., min_length=1, description="Input files, in the order the theorem expects")
    trials: int = Field(..., ge=1, description="Number of substitution points to try")
    seed: int = Field(0, description="Seed of the first trial; trial k uses seed + k")
    bound: int = Field(7, ge=1, description="Coordinates are drawn from [-bound, bound]")
    alpha: Optional[List[str]] = Field(None, description="Forced substitution point (rational literals)")

    @field_validator('theorem_id')
    @classmethod
    def known_theorem(cls, value: str) -> str:
        if value not in THEOREM_IDS:
            raise ValueError(f"unknown theorem id: {value}")
        return value


class TrialRecord(BaseModel):
    """Outcome of one trial"""
    model_config = ConfigDict(populate_by_name=True)

    index: int = Field(..., ge=0, description="Trial number")
    alpha: List[str] = Field(..., description="Substitution point as rational literals")
    passed: bool = Field(..., alias="pass", description="Both sides agreed")
    detail: str = Field("", description="What was compared, or why the trial failed")
    cert_good: bool = Field(True, description="Alpha lies outside the certificate's zero set")
    cert_size: int = Field(..., ge=0, description="Number of certificate factors")
    cert_factors: List[str] = Field(default_factory=list, description="Certificate factors as text")
    ms: int = Field(0, ge=0, description="Wall-clock milliseconds (0 unless timing is enabled)")


class Summary(BaseModel):
    """Campaign totals"""
    model_config = ConfigDict(populate_by_name=True)

    passed: int = Field(..., ge=0, alias="pass", description="Trials that passed")
    failed: int = Field(..., ge=0, alias="fail", description="Trials that failed")
    distinct_certificates: int = Field(..., ge=0, description="Distinct certificates seen")


class Report(BaseModel):
    """Verification report written by `smod verify --out`"""
    task: VerificationTask
    trials: List[TrialRecord] = Field(default_factory=list)
    summary: Summary

    @property
    def ok(self) -> bool:
        return self.summary.failed == 0 and self.summary.passed > 0

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


class CorpusEntry(BaseModel):
    """One line of corpus/manifest.json"""
    theorem_id: str = Field(..., description="Theorem id")
    inputs: List[str] = Field(..., description="Input files relative to the corpus directory")
    trials: int = Field(10, ge=1, description="Trials the corpus campaign runs")
    note: str = Field("", description="What the entry exercises")


class CorpusManifest(BaseModel):
    """corpus/manifest.json"""
    entries: List[CorpusEntry] = Field(default_factory=list)


class CommandOutput(BaseModel):
    """JSON written by `--out` for the computation subcommands"""
    command: str = Field(..., description="Subcommand name")
    alpha: Optional[List[str]] = Field(None, description="Substitution point applied to the inputs")
    lines: List[str] = Field(default_factory=list, description="Text printed to standard out")
    cert_factors: List[str] = Field(default_factory=list, description="Certificate factors met on the way")

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)
