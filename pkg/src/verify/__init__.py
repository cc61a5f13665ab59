"""
Verify module: experiment runners producing ExperimentReport objects.

Module Structure:
- models: Verdict, ReportRow, ExperimentReport
- replicas: seeded replica fan-out over a process pool
- stats: standard errors, intervals and trend tests
- theorem: U·N → t, single-path mode, fixed-mesh and regular-variation ratios
- lemmas: splitting bound, tail bound, variance bound
- indices: box-counting slopes
- potential_checks: cross-method potential table, q-potential identity
- hausdorff: gauge profile and the growth condition on Φ
- sample_paths: path dumps with a marginal check
"""

from src.verify.models import REPORT_SCHEMA, ExperimentReport, ReportRow, Verdict
from src.verify.replicas import run_replicas
from src.verify.theorem import run_cor1, run_cor2, run_theorem1, run_theorem1_single_path
from src.verify.lemmas import run_lemma3, run_lemma4, run_lemma5
from src.verify.indices import run_indices
from src.verify.potential_checks import run_potential_table, run_q_identity
from src.verify.hausdorff import check_condition_2_4, hausdorff_f, hausdorff_profile
from src.verify.sample_paths import run_simulate_paths

__all__ = [
    "REPORT_SCHEMA",
    "ExperimentReport",
    "ReportRow",
    "Verdict",
    "run_replicas",
    "run_theorem1",
    "run_theorem1_single_path",
    "run_cor1",
    "run_cor2",
    "run_lemma3",
    "run_lemma4",
    "run_lemma5",
    "run_indices",
    "run_potential_table",
    "run_q_identity",
    "hausdorff_f",
    "hausdorff_profile",
    "check_condition_2_4",
    "run_simulate_paths",
]
