"""Wire schemas for the fill/loss endpoints.

These mirror the toolkit's provider protocol exactly: POST ``/v1/fill`` with
``{original, masked, top_n}`` returns ``{slots: [[{token, prob}, ...], ...]}``;
POST ``/v1/loss`` with ``{sentence, position}`` returns ``{loss}``.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class FillRequest(BaseModel):
    original: str
    masked: str
    top_n: int = Field(default=76, ge=1)


class Candidate(BaseModel):
    token: str
    prob: float = Field(gt=0.0, le=1.0)


class FillResponse(BaseModel):
    slots: list[list[Candidate]]


class LossRequest(BaseModel):
    sentence: str
    position: int = Field(ge=0)


class LossResponse(BaseModel):
    loss: float = Field(ge=0.0)


class HealthResponse(BaseModel):
    status: str
    model: str
    mode: str
    single_token_candidates: bool = True
