"""Seeded verification campaigns."""

from .campaign import (
    SUITES,
    CampaignConfig,
    CampaignReport,
    check_inequality_suite,
    check_invariance_suite,
    check_oracle_suite,
    check_ptolemaeus_suite,
    check_triangle_suite,
    replay,
    run_campaign,
    run_suite,
)
from .checks import check_equivalent_ptolemaean_form, check_ptolemaean_inequality
from .sampling import sample_point, substream

__all__ = [
    "SUITES",
    "CampaignConfig",
    "CampaignReport",
    "check_equivalent_ptolemaean_form",
    "check_inequality_suite",
    "check_invariance_suite",
    "check_oracle_suite",
    "check_ptolemaean_inequality",
    "check_ptolemaeus_suite",
    "check_triangle_suite",
    "replay",
    "run_campaign",
    "run_suite",
    "sample_point",
    "substream",
]
