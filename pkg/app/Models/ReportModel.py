import math
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

# l2 <= l_inf holds exactly in exact arithmetic
NORM_SLACK = 1e-12


class ErrorNorms(BaseModel):
    l_inf: float = Field(ge=0.0)
    l2: float = Field(ge=0.0)

    @field_validator('l_inf', 'l2')
    @classmethod
    def finite(cls, value):
        if not math.isfinite(value):
            raise ValueError('error norms must be finite')
        return value

    @model_validator(mode='after')
    def l2_below_max(self):
        if self.l2 > self.l_inf * (1.0 + NORM_SLACK):
            raise ValueError(f'l2 error {self.l2} exceeds max error {self.l_inf}')
        return self


class RegimeRecord(BaseModel):
    """Errors of EMM and HMM against REF for one epsilon, on the REF mesh."""
    epsilon: float
    t_end: float
    n_x_ref: int
    n_x: int
    n_y: int
    emm_u: ErrorNorms
    emm_du: ErrorNorms
    hmm_u: ErrorNorms
    hmm_du: ErrorNorms
    ref_u_max: float = Field(ge=0.0)
    ref_du_max: float = Field(ge=0.0)
    wall_time: Dict[str, float] = Field(default_factory=dict)
    csv_path: Optional[str] = None

    def relative(self, norms, scale):
        return norms.l_inf / scale if scale > 0.0 else norms.l_inf

    @property
    def emm_u_rel(self):
        return self.relative(self.emm_u, self.ref_u_max)

    @property
    def hmm_u_rel(self):
        return self.relative(self.hmm_u, self.ref_u_max)

    @property
    def emm_du_rel(self):
        return self.relative(self.emm_du, self.ref_du_max)

    @property
    def hmm_du_rel(self):
        return self.relative(self.hmm_du, self.ref_du_max)

    def summary_row(self):
        row = {'epsilon': self.epsilon, 't_end': self.t_end, 'nx_ref': self.n_x_ref,
               'nx': self.n_x, 'ny': self.n_y}
        for name in ('emm_u', 'emm_du', 'hmm_u', 'hmm_du'):
            norms = getattr(self, name)
            row[f'{name}_inf'] = norms.l_inf
            row[f'{name}_l2'] = norms.l2
            row[f'{name}_rel'] = getattr(self, f'{name}_rel')
        return row


class RunReport(BaseModel):
    records: List[RegimeRecord] = Field(default_factory=list)
    summary_path: Optional[str] = None

    def record_for(self, epsilon):
        for record in self.records:
            if math.isclose(record.epsilon, epsilon):
                return record
        raise KeyError(f'no regime for epsilon={epsilon}')


class ConvergenceResult(BaseModel):
    scheme: str
    # 'dx' for spatial studies, 'dt' for temporal self-convergence
    variable: str
    steps: List[float]
    errors: List[float]
    order: float
