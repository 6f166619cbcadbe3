"""Solver limits: search budgets, DP state caps, reduction size guards."""
from pydantic import BaseModel, ConfigDict, Field

ORACLE_BUDGET = 16
CMPL_BUDGET = 14
PARIKH_BUDGET = 40
DP_STATE_CAP = 500_000
MAX_GADGET_VERTICES = 100_000


class SolverLimits(BaseModel):
    """Size limits shared by every budgeted operation."""
    model_config = ConfigDict(frozen=True)

    oracle_budget: int = Field(ORACLE_BUDGET, ge=0, description="Max free vertices for oracle_dped / oracle_lcd / oracle_pce")
    cmpl_budget: int = Field(CMPL_BUDGET, ge=0, description="Max word length for oracle_cmpl")
    parikh_budget: int = Field(PARIKH_BUDGET, ge=0, description="Max target sum for decide_parikh_membership")
    dp_state_cap: int = Field(DP_STATE_CAP, ge=1, description="Max live states in one DP layer")
    max_gadget_vertices: int = Field(MAX_GADGET_VERTICES, ge=0, description="Max vertices produced by reduce_mss_to_lcd")


DEFAULT_LIMITS = SolverLimits()

# CLI algorithm name -> the SolverLimits field its --budget option overrides
BUDGET_FIELDS = {
    "oracle": "oracle_budget",
    "cmpl": "cmpl_budget",
    "fpt": "parikh_budget",
    "dp": "dp_state_cap",
    "dlc": "dp_state_cap",
    "approx": "dp_state_cap",
}


def get_limits(budget: int | None = None, algo: str | None = None) -> SolverLimits:
    """Default limits, with `budget` overriding the one field `algo` uses."""
    if budget is None or algo not in BUDGET_FIELDS:
        return DEFAULT_LIMITS
    return DEFAULT_LIMITS.model_copy(update={BUDGET_FIELDS[algo]: budget})


def resolve_limits(limits: SolverLimits | None) -> SolverLimits:
    return limits if limits is not None else DEFAULT_LIMITS
