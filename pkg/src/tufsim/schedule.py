"""Tick calendars, update-event lists, and scripted role changes.

All values here are immutable after construction.  Update events are
date-granular: several arrivals on one date collapse to a single event,
and under sub-daily cadence an event fires on the first tick of its date.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from datetime import date, timedelta

from .errors import CalendarError
from .repository import RoleType


class Cadence(enum.Enum):
    """How calendar time maps to timestamp ticks."""

    WEEKLY = "weekly"
    DAILY = "daily"
    HOURLY = "hourly"
    MINUTE = "minute"

    @property
    def sub_ticks(self) -> int:
        """Ticks on each included date (weekly includes only every 7th date)."""
        return _SUB_TICKS[self]


_SUB_TICKS = {
    Cadence.WEEKLY: 1,
    Cadence.DAILY: 1,
    Cadence.HOURLY: 24,
    Cadence.MINUTE: 1440,
}


@dataclass(frozen=True)
class Tick:
    """One timestamp-publication instant: a date plus a position within it."""

    date: date
    sub_index: int = 0


class ActionKind(enum.Enum):
    ADD = "add"
    REMOVE = "remove"
    RESERVE = "reserve"


@dataclass(frozen=True)
class RoleAction:
    """A scripted mid-run role change, applied on the first tick of its date.

    kind=ADD uses role_type and algorithm_name (None means the run's
    algorithm assignment supplies one); kind=RESERVE uses flag; kind=REMOVE
    needs the name alone.
    """

    date: date
    kind: ActionKind
    name: str
    role_type: RoleType | None = None
    algorithm_name: str | None = None
    flag: bool | None = None


@dataclass(frozen=True)
class EventCalendar:
    """Update events (a set of date/target pairs) plus scripted role actions."""

    update_events: frozenset[tuple[date, str]] = frozenset()
    role_actions: tuple[RoleAction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "update_events", frozenset(self.update_events))
        object.__setattr__(self, "role_actions", tuple(self.role_actions))


def generate_ticks(start: date, end: date, cadence: Cadence) -> list[Tick]:
    """Build the tick sequence for an inclusive date range.

    Daily yields one tick per date, hourly 24, per-minute 1440; weekly
    yields one tick on the start date and each 7th date after it.
    """
    if start > end:
        raise CalendarError(f"start date {start} is after end date {end}")
    ticks: list[Tick] = []
    if cadence is Cadence.WEEKLY:
        day = start
        while day <= end:
            ticks.append(Tick(day))
            day += timedelta(days=7)
        return ticks
    for offset in range((end - start).days + 1):
        day = start + timedelta(days=offset)
        for sub in range(cadence.sub_ticks):
            ticks.append(Tick(day, sub))
    return ticks


def load_event_dates(csv_text: str, default_target: str) -> EventCalendar:
    """Parse update events from CSV with a `Date` column and optional `Target`.

    Dates are ISO-8601 (YYYY-MM-DD).  Rows without a target bind to
    `default_target`; duplicate (date, target) pairs collapse.
    """
    rows = list(csv.reader(io.StringIO(csv_text)))
    if not rows:
        raise CalendarError("event file is empty; expected a 'Date' header")
    header = [cell.strip() for cell in rows[0]]
    if "Date" not in header:
        raise CalendarError("event file is missing the 'Date' column")
    date_col = header.index("Date")
    target_col = header.index("Target") if "Target" in header else None

    events: set[tuple[date, str]] = set()
    for lineno, row in enumerate(rows[1:], start=2):
        if not any(cell.strip() for cell in row):
            continue
        day = _parse_date(row[date_col].strip() if date_col < len(row) else "", lineno)
        target = default_target
        if target_col is not None and target_col < len(row) and row[target_col].strip():
            target = row[target_col].strip()
        events.add((day, target))
    return EventCalendar(update_events=frozenset(events))


def load_role_actions(csv_text: str) -> EventCalendar:
    """Parse scripted role changes from CSV.

    Columns: `Date,Action,Name,RoleType,Algorithm,Flag` with Action one of
    add/remove/reserve; fields irrelevant to an action stay empty.  An add
    row may leave Algorithm empty to inherit the run's assignment.
    """
    rows = list(csv.reader(io.StringIO(csv_text)))
    if not rows:
        raise CalendarError("action file is empty; expected a header row")
    header = [cell.strip() for cell in rows[0]]
    for column in ("Date", "Action", "Name", "RoleType", "Algorithm", "Flag"):
        if column not in header:
            raise CalendarError(f"action file is missing the '{column}' column")
    index = {name: header.index(name) for name in header}

    def cell(row: list[str], column: str) -> str:
        i = index[column]
        return row[i].strip() if i < len(row) else ""

    actions: list[RoleAction] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not any(c.strip() for c in row):
            continue
        day = _parse_date(cell(row, "Date"), lineno)
        kind_text = cell(row, "Action").lower()
        try:
            kind = ActionKind(kind_text)
        except ValueError:
            raise CalendarError(
                f"row {lineno}: unknown action {kind_text!r}; expected add, remove or reserve"
            ) from None
        name = cell(row, "Name")
        if not name:
            raise CalendarError(f"row {lineno}: action is missing a role name")

        role_type = None
        algorithm_name = None
        flag = None
        if kind is ActionKind.ADD:
            type_text = cell(row, "RoleType")
            try:
                role_type = RoleType(type_text)
            except ValueError:
                raise CalendarError(
                    f"row {lineno}: unknown role type {type_text!r}"
                ) from None
            algorithm_name = cell(row, "Algorithm") or None
        elif kind is ActionKind.RESERVE:
            flag_text = cell(row, "Flag").lower()
            if flag_text not in ("true", "false"):
                raise CalendarError(
                    f"row {lineno}: reserve action needs Flag true or false"
                )
            flag = flag_text == "true"
        actions.append(
            RoleAction(
                date=day,
                kind=kind,
                name=name,
                role_type=role_type,
                algorithm_name=algorithm_name,
                flag=flag,
            )
        )
    return EventCalendar(role_actions=tuple(actions))


def generate_poisson_events(
    rate_per_day: float, start: date, end: date, seed: int, target: str
) -> EventCalendar:
    """Generate update events from a seeded per-day Poisson arrival model.

    Each date in the inclusive range draws an arrival count with mean
    `rate_per_day`; the date carries one event when the draw is >= 1
    (same-day arrivals collapse).  Sampling is inverse-transform on a
    uniform variate from SplitMix64 keyed by (seed, day index), so equal
    inputs reproduce the same calendar on any platform.
    """
    if rate_per_day < 0:
        raise CalendarError("event rate must be non-negative")
    if start > end:
        raise CalendarError(f"start date {start} is after end date {end}")
    events: set[tuple[date, str]] = set()
    for offset in range((end - start).days + 1):
        u = _uniform01(seed, offset)
        if _poisson_draw(u, rate_per_day) >= 1:
            events.add((start + timedelta(days=offset), target))
    return EventCalendar(update_events=frozenset(events))


def merge_calendars(a: EventCalendar, b: EventCalendar) -> EventCalendar:
    """Union of update events; role actions interleaved by date, a before b."""
    actions = sorted(a.role_actions + b.role_actions, key=lambda action: action.date)
    return EventCalendar(
        update_events=a.update_events | b.update_events,
        role_actions=tuple(actions),
    )


def _parse_date(text: str, lineno: int) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise CalendarError(f"row {lineno}: invalid date {text!r}") from None


_MASK64 = 2**64 - 1


def _splitmix64(state: int) -> int:
    """One SplitMix64 output for the given 64-bit state."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _uniform01(seed: int, index: int) -> float:
    """Uniform variate in [0, 1) for stream position `index` under `seed`.

    Two SplitMix64 rounds decorrelate the seed from the index; the top 53
    bits form the double.
    """
    word = _splitmix64((_splitmix64(seed & _MASK64) + index) & _MASK64)
    return (word >> 11) * 2.0**-53


def _poisson_draw(u: float, rate: float) -> int:
    """Inverse-transform Poisson sample: smallest k with CDF(k) > u."""
    term = math.exp(-rate)
    cumulative = term
    k = 0
    while u >= cumulative:
        k += 1
        term *= rate / k
        advanced = cumulative + term
        if advanced == cumulative:  # tail mass below float resolution
            break
        cumulative = advanced
    return k
