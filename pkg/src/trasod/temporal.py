"""Calendar facets of a UTC timestamp: weekday, period of day, month."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone

DAYS = ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday")
MONTHS = (
    "January", "February", "March", "April", "May", "June",
    "July", "August", "September", "October", "November", "December",
)
# (first hour, label); each period runs until the next one starts
PERIODS = ((0, "Night"), (6, "Morning"), (12, "Afternoon"), (18, "Evening"))


@dataclass(frozen=True)
class TimeFacets:
    day_of_week: str
    period_of_day: str
    month: str


def period_of_hour(hour: int) -> str:
    label = PERIODS[0][1]
    for start, name in PERIODS:
        if hour >= start:
            label = name
    return label


def enrich(t: float) -> TimeFacets:
    moment = datetime.fromtimestamp(int(t), tz=timezone.utc)
    return TimeFacets(DAYS[moment.weekday()], period_of_hour(moment.hour), MONTHS[moment.month - 1])
