from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from fusionreps.fusion import fusion_from_spec

settings.register_profile(
    "fixed",
    derandomize=True,
    deadline=None,
    database=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("fixed")

# Saturated instances used across modules (PGL3-3 is the slow stretch case).
SATURATED = ["preset:C4", "preset:C9", "preset:D8", "preset:Q8", "preset:C3xC3",
             "A4", "S3", "S4", "SL2-3", "C5-semidirect-C4", "D10", "A6"]
STRETCH = "PGL3-3"


@lru_cache(maxsize=None)
def fusion(spec: str):
    return fusion_from_spec(spec)


@pytest.fixture(params=SATURATED)
def saturated(request):
    return fusion(request.param)
