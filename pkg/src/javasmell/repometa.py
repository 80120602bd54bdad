"""Repository metadata and the developing/established maturity rule.

Developing: commits <= 2000, contributors <= 30, last commit within 9
calendar months of the analysis date, and at most 2 releases. Established:
commits > 2000, contributors > 30, at least 2 releases. The two criteria sets
do not partition the space, so anything else is Unclassified and the
rationale spells out exactly which checks blocked each class.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from enum import Enum


class InvalidMetadata(Exception):
    pass


class MalformedLog(Exception):
    def __init__(self, message, lineno):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Maturity(Enum):
    DEVELOPING = "Developing"
    ESTABLISHED = "Established"
    UNCLASSIFIED = "Unclassified"


@dataclass
class MaturityClass:
    label: Maturity
    rationale: list


@dataclass
class RepoMetadata:
    commits: int
    contributors: int
    releases: int
    last_commit_date: dt.date
    analysis_date: dt.date

    def __post_init__(self):
        if min(self.commits, self.contributors, self.releases) < 0:
            raise InvalidMetadata("counts must be non-negative")
        if self.last_commit_date > self.analysis_date:
            raise InvalidMetadata("last_commit_date is after analysis_date")


def add_months(day: dt.date, months: int) -> dt.date:
    """Calendar-month addition with day-of-month clamping."""
    month_index = day.month - 1 + months
    year = day.year + month_index // 12
    month = month_index % 12 + 1
    # Clamp to the last day of the target month.
    last = (dt.date(year + (month == 12), month % 12 + 1, 1) - dt.timedelta(days=1)).day
    return dt.date(year, month, min(day.day, last))


def classify(meta: RepoMetadata) -> MaturityClass:
    recent = add_months(meta.last_commit_date, 9) >= meta.analysis_date
    dev_checks = [
        ("commits <= 2000", meta.commits <= 2000, meta.commits),
        ("contributors <= 30", meta.contributors <= 30, meta.contributors),
        ("last commit within 9 months", recent, meta.last_commit_date.isoformat()),
        ("releases <= 2", meta.releases <= 2, meta.releases),
    ]
    est_checks = [
        ("commits > 2000", meta.commits > 2000, meta.commits),
        ("contributors > 30", meta.contributors > 30, meta.contributors),
        ("releases >= 2", meta.releases >= 2, meta.releases),
    ]
    rationale = [
        f"developing: {name}: {'pass' if ok else 'fail'} ({value})"
        for name, ok, value in dev_checks
    ] + [
        f"established: {name}: {'pass' if ok else 'fail'} ({value})"
        for name, ok, value in est_checks
    ]
    if all(ok for _, ok, _ in dev_checks):
        return MaturityClass(Maturity.DEVELOPING, rationale)
    if all(ok for _, ok, _ in est_checks):
        return MaturityClass(Maturity.ESTABLISHED, rationale)
    return MaturityClass(Maturity.UNCLASSIFIED, rationale)


def _parse_date(text: str, context: str):
    try:
        return dt.date.fromisoformat(text[:10]) if "T" in text else dt.date.fromisoformat(text)
    except ValueError:
        raise InvalidMetadata(f"{context}: bad ISO-8601 date {text!r}") from None


def load_metadata(path, analysis_date: dt.date | None = None) -> RepoMetadata:
    """Key/value metadata file: commits, contributors, releases,
    last_commit_date, optional analysis_date (defaults to today)."""
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InvalidMetadata(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    try:
        commits = int(values["commits"])
        contributors = int(values["contributors"])
        releases = int(values["releases"])
        last = _parse_date(values["last_commit_date"], "last_commit_date")
    except KeyError as err:
        raise InvalidMetadata(f"missing key {err.args[0]!r} in {path}") from None
    except ValueError:
        raise InvalidMetadata(f"non-integer count in {path}") from None
    if analysis_date is None:
        if "analysis_date" in values:
            analysis_date = _parse_date(values["analysis_date"], "analysis_date")
        else:
            analysis_date = dt.date.today()
    return RepoMetadata(commits, contributors, releases, last, analysis_date)


@dataclass
class GitLogStats:
    commits: int
    contributors: int
    last_commit_date: dt.date | None


def parse_git_log(log_text: str) -> GitLogStats:
    """One commit per line: ISO-8601 date <TAB> author email <TAB> hash.

    Contributors are distinct author emails compared case-insensitively.
    """
    commits = 0
    emails: set = set()
    last: dt.date | None = None
    for lineno, raw in enumerate(log_text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise MalformedLog(f"expected 3 tab-separated fields, got {len(parts)}", lineno)
        date_text, email, commit_hash = parts
        if not email or not commit_hash:
            raise MalformedLog("empty field", lineno)
        try:
            day = dt.date.fromisoformat(date_text[:10])
        except ValueError:
            raise MalformedLog(f"bad date {date_text!r}", lineno) from None
        commits += 1
        emails.add(email.lower())
        last = day if last is None or day > last else last
    return GitLogStats(commits, len(emails), last)
