"""Machine-readable results of identity and property checks."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from gtrace.errors import CheckFailure


@dataclass
class CheckReport:
    """
    Counts and witnesses for one check.

    ``nonvacuous`` counts instances whose hypothesis held, so that the conclusion
    was actually tested, and ``vacuous`` those whose hypothesis failed. Every
    attempted instance lands in exactly one of nonvacuous, vacuous and skipped.
    A report passes exactly when ``failures`` is empty.
    """

    check_id: str
    params: Dict[str, Any] = field(default_factory=dict)
    attempted: int = 0
    nonvacuous: int = 0
    vacuous: int = 0
    passes: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    skipped: int = 0
    runtime_ms: Optional[int] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        """``pass`` or ``fail``."""
        return "fail" if self.failures else "pass"

    @property
    def passed(self) -> bool:
        """True when no failure was recorded."""
        return not self.failures

    def record_failure(self, identity: str, witness: Any) -> None:
        """Append a failure with its serialized witness."""
        self.failures.append({"identity": identity, "witness": witness})

    def record(self, error: CheckFailure) -> None:
        """Append a failure raised as CheckFailure."""
        self.record_failure(error.identity, error.witness)

    def merge(self, other: "CheckReport") -> "CheckReport":
        """Add the counts and failures of another report of the same check."""
        self.attempted += other.attempted
        self.nonvacuous += other.nonvacuous
        self.vacuous += other.vacuous
        self.passes += other.passes
        self.skipped += other.skipped
        self.failures.extend(other.failures)
        if other.runtime_ms is not None:
            self.runtime_ms = (self.runtime_ms or 0) + other.runtime_ms
        return self

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        """
        Plain-data view for the JSON emitter.

        :param timings: Include ``runtime_ms``; it is omitted by default so that
            reports are byte-identical for fixed inputs and seed.
        """
        out = {
            "check": self.check_id,
            "params": self.params,
            "attempted": self.attempted,
            "nonvacuous": self.nonvacuous,
            "vacuous": self.vacuous,
            "passes": self.passes,
            "failures": self.failures,
            "skipped": self.skipped,
            "verdict": self.verdict,
        }
        if self.extra:
            out["extra"] = self.extra
        if timings and self.runtime_ms is not None:
            out["runtime_ms"] = self.runtime_ms
        return out
