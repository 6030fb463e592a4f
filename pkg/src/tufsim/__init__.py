"""Deterministic cost accounting for multi-role software-update signing.

tufsim replays a calendar of update events against a TUF-style repository
(Root, Timestamp, Snapshot, Target roles, any number of instances each)
and tallies what a worst-case client downloads and verifies: signature
bytes, public-key bytes, and verification effort.  Signature algorithms
are plain parameter sets, so bounded-signature schemes with key rollover
can be compared against conventional ones over identical update schedules.
"""

from .algorithms import (
    SignatureAlgorithm,
    find_algorithm,
    format_algorithm_catalog,
    parse_algorithm_catalog,
)
from .errors import (
    AlgorithmNotFoundError,
    CalendarError,
    CatalogError,
    ConfigurationError,
    TufSimError,
    ValidationError,
)
from .repository import LedgerTotals, Repository, RoleState, RoleType, TickReport
from .runner import (
    AlgorithmAssignment,
    Architecture,
    PerRole,
    RoleSpec,
    RunResult,
    Uniform,
    default_architecture,
    emit_report_csv,
    parse_architecture_csv,
    parse_assignment_csv,
    run_scenario,
    run_sweep,
)
from .schedule import (
    ActionKind,
    Cadence,
    EventCalendar,
    RoleAction,
    Tick,
    generate_poisson_events,
    generate_ticks,
    load_event_dates,
    load_role_actions,
    merge_calendars,
)

__version__ = "0.1.0"

__all__ = [
    "ActionKind",
    "AlgorithmAssignment",
    "AlgorithmNotFoundError",
    "Architecture",
    "Cadence",
    "CalendarError",
    "CatalogError",
    "ConfigurationError",
    "EventCalendar",
    "LedgerTotals",
    "PerRole",
    "Repository",
    "RoleAction",
    "RoleSpec",
    "RoleState",
    "RoleType",
    "RunResult",
    "SignatureAlgorithm",
    "Tick",
    "TickReport",
    "TufSimError",
    "Uniform",
    "ValidationError",
    "default_architecture",
    "emit_report_csv",
    "find_algorithm",
    "format_algorithm_catalog",
    "generate_poisson_events",
    "generate_ticks",
    "load_event_dates",
    "load_role_actions",
    "merge_calendars",
    "parse_algorithm_catalog",
    "parse_architecture_csv",
    "parse_assignment_csv",
    "run_scenario",
    "run_sweep",
]
