"""Exact capacity region and routing plans for layered streaming in P2P overlays."""

from .capacity import FeasibilityReport, check_feasibility, is_feasible, max_scale, required_total_upload
from .errors import Infeasible, LayercastError
from .margins import MarginVector, dominant_subsequence, margins, shell_capacity
from .model import DemandProfile, Instance, demand_profile, load_instance, parse_instance, serialize_instance
from .oracle import enumerate_trees, oracle_feasible
from .plan import TransmissionPlan, plan_from_json, plan_to_json
from .scheduler import schedule
from .verifier import plan_stats, verify_plan

__all__ = [
    "DemandProfile",
    "FeasibilityReport",
    "Infeasible",
    "Instance",
    "LayercastError",
    "MarginVector",
    "TransmissionPlan",
    "check_feasibility",
    "demand_profile",
    "dominant_subsequence",
    "enumerate_trees",
    "is_feasible",
    "load_instance",
    "margins",
    "max_scale",
    "oracle_feasible",
    "parse_instance",
    "plan_from_json",
    "plan_stats",
    "plan_to_json",
    "required_total_upload",
    "schedule",
    "serialize_instance",
    "shell_capacity",
    "verify_plan",
]
