"""Pydantic models for computed results and report documents."""

from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

Status = Literal["PASS", "VIOLATION", "N/A"]
ClaimStatus = Literal["MATCH", "MISMATCH", "CLAIMED"]


class SylowCheck(BaseModel):
    """Order of the group generated by one or two Sylow members."""

    primes: list[int]
    measured: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.measured == self.expected


class SylowReport(BaseModel):
    """Result of verifying a Sylow system."""

    group: str
    checks: list[SylowCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[str]:
        return [
            f"<{', '.join(f'G_{p}' for p in c.primes)}> has order {c.measured}, "
            f"expected {c.expected}"
            for c in self.checks
            if not c.passed
        ]


class GroupSummary(BaseModel):
    """Degree, order and prime data of a constructed group."""

    expression: str
    action: str
    degree: int
    order: int
    order_factored: str
    primes: list[int]
    weight: int
    generators: int
    expanded: Optional[str] = None
    sylow: Optional[SylowReport] = None


class BoundEntry(BaseModel):
    """One bound evaluated against the quantity it bounds.

    The value is the exact rational ``numerator/denominator``; ``actual`` is
    h(G) except for the recursive bound on intermediate subset sizes, where
    it is the maximal Hall length for that size.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    inputs: dict[str, str] = Field(default_factory=dict)
    target: str = "h(G)"
    actual: int
    numerator: int = 0
    denominator: int = 1
    status: Status = "PASS"
    note: str = ""

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def floor(self) -> int:
        return self.numerator // self.denominator

    @property
    def slack(self) -> Fraction:
        return self.value - self.actual

    def value_text(self) -> str:
        if self.status == "N/A" and not self.inputs:
            return "-"
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


class LemmaCheck(BaseModel):
    """An arithmetic or structural fact checked over a range of cases."""

    name: str
    checked: int
    failures: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


class BoundReport(BaseModel):
    """Every applicable bound for one group, plus the lemma sweeps."""

    group: str
    h_actual: int
    weight: int
    profile: dict[str, int] = Field(default_factory=dict)
    frak: dict[int, int] = Field(default_factory=dict)
    entries: list[BoundEntry] = Field(default_factory=list)
    lemmas: list[LemmaCheck] = Field(default_factory=list)
    observations: list[str] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict)

    @property
    def violations(self) -> list[BoundEntry]:
        return [e for e in self.entries if e.status == "VIOLATION"]

    @property
    def passed(self) -> bool:
        return not self.violations and all(lemma.passed for lemma in self.lemmas)


class ClaimComparison(BaseModel):
    """A printed formula value set beside the measured one."""

    quantity: str
    formula: str
    claimed: int
    measured: Optional[int] = None

    @property
    def status(self) -> ClaimStatus:
        if self.measured is None:
            return "CLAIMED"
        return "MATCH" if self.measured == self.claimed else "MISMATCH"


class ConjectureReport(BaseModel):
    """Outcome of a factorization harness run; outcomes are data, not verdicts."""

    kind: Literal["trifactorized", "permutable-nilpotent"]
    group: str
    group_order: int
    hypothesis_holds: bool
    hypothesis_notes: list[str] = Field(default_factory=list)
    h_group: int
    h_parts: dict[str, int] = Field(default_factory=dict)
    inequality_rhs: Optional[int] = None
    inequality_holds: Optional[bool] = None
    kegel_applies: bool = False
    kegel_holds: Optional[bool] = None


class ReportDocument(BaseModel):
    """Top-level output of ``check`` and ``example``."""

    tool_version: str
    command: str
    expression: str
    ell: Optional[int] = None
    config: dict[str, object] = Field(default_factory=dict)
    notices: list[str] = Field(default_factory=list)
    summary: Optional[GroupSummary] = None
    report: Optional[BoundReport] = None
    claims: list[ClaimComparison] = Field(default_factory=list)
    arithmetic: list[BoundEntry] = Field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.report is not None and not self.report.passed:
            return 2
        if any(e.status == "VIOLATION" for e in self.arithmetic):
            return 2
        if any(c.status == "MISMATCH" for c in self.claims):
            return 2
        return 0


class ExampleClaim(BaseModel):
    """A printed value of the form slope * ell + intercept.

    ``kind`` says what is measured: a Hall Fitting length (``subset`` lists the
    primes, None meaning all of them), the weight excess Theta - 2 of the
    complement cover, the cover bound (Theta - 2)/(t - 2) of that cover, or the
    three-halls value for the first two primes.
    """

    quantity: str
    kind: Literal["hall", "cover_excess", "cover_bound", "three_halls"] = "hall"
    subset: Optional[list[int]] = None
    slope: int
    intercept: int

    def value(self, ell: int) -> int:
        return self.slope * ell + self.intercept

    def formula(self) -> str:
        if self.slope == 0:
            return str(self.intercept)
        lead = "l" if self.slope == 1 else f"{self.slope}l"
        if self.intercept == 0:
            return lead
        sign = "+" if self.intercept > 0 else "-"
        return f"{lead}{sign}{abs(self.intercept)}"


class ExampleSpec(BaseModel):
    """One entry of the example catalog."""

    id: str
    aliases: list[str] = Field(default_factory=list)
    summary: str
    template: Optional[str] = None
    primes: list[int]
    group_level_max_ell: int = 0
    extended_only: bool = False
    claims: list[ExampleClaim] = Field(default_factory=list)

    def expression(self, ell: int, action: str = "natural") -> str:
        """Expression text at ``ell``; ``{W}`` becomes W or WR by action."""
        if self.template is None:
            raise ValueError(f"example {self.id} has no group expression")
        wreath = "W" if action == "natural" else "WR"
        return self.template.replace("{W}", wreath).replace("{ell}", str(ell))


class CatalogGroup(BaseModel):
    """A named test group given by expression text."""

    name: str
    expression: str
    weight: int
    tiny: bool = False


class InvariantResult(BaseModel):
    """A single computed invariant of a group."""

    expression: str
    quantity: str
    value: int
    notes: list[str] = Field(default_factory=list)


class CoverRow(BaseModel):
    """A cover with its weight and bound, when a profile is known."""

    cover: str
    t: int
    degenerate: bool
    theta: Optional[int] = None
    bound: Optional[str] = None
    problems: list[str] = Field(default_factory=list)


class CoverListing(BaseModel):
    """Covers of a prime set, optionally weighted by a group's Hall profile."""

    ground: str
    expression: Optional[str] = None
    h_actual: Optional[int] = None
    covers: list[CoverRow] = Field(default_factory=list)
