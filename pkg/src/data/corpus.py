# src/data/corpus.py

import json
from pathlib import Path
from typing import Dict, List, Sequence, Union
import pandas as pd
from pydantic import ValidationError
from data.data_models import AccountRecord, CorpusLoad, LoadIssue, Tweet
from utils.exceptions import DataError
from utils.logger import logger

PathLike = Union[str, Path]
TWEET_CSV_REQUIRED = ["account_id", "text"]
TWEET_CSV_OPTIONAL = ["label", "screen_name", "created_at", "likes", "retweets"]


def _describe(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        where = ".".join(str(p) for p in error["loc"]) or "record"
        parts.append(f"{where}: {error['msg']}")
    return "; ".join(parts)


def _parse_record(raw: bytes) -> Union[AccountRecord, str, None]:
    """The record on one corpus line, None for a blank line, or a message saying what is wrong."""
    try:
        line = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        return f"invalid UTF-8 at byte {exc.start}"
    if not line.strip():
        return None
    try:
        return AccountRecord.model_validate(json.loads(line))
    except json.JSONDecodeError as exc:
        return f"invalid JSON: {exc.msg}"
    except ValidationError as exc:
        return _describe(exc)


def load_corpus(path: PathLike, strict: bool = True) -> CorpusLoad:
    """Reads one AccountRecord per JSONL line, in file order.

    Malformed lines (bad UTF-8 included) and duplicate account ids become issues with 1-based
    line numbers. In strict mode the first issue aborts the load; otherwise offending lines are skipped.
    """
    path = Path(path)
    try:
        lines = path.read_bytes().splitlines()
    except OSError as exc:
        logger.error(f"Cannot read corpus {path}: {exc}")
        raise DataError(f"cannot read corpus {path}: {exc}") from exc

    records: List[AccountRecord] = []
    issues: List[LoadIssue] = []
    seen: Dict[str, int] = {}
    for number, line in enumerate(lines, start=1):
        record = _parse_record(line)
        if record is None:
            continue
        if isinstance(record, str):
            issues.append(LoadIssue(line=number, message=record))
        elif record.account_id in seen:
            message = f"duplicate id {record.account_id!r} (first seen on line {seen[record.account_id]})"
            issues.append(LoadIssue(line=number, message=message))
        else:
            seen[record.account_id] = number
            records.append(record)
        if strict and issues:
            issue = issues[0]
            logger.error(f"{path}: line {issue.line}: {issue.message}")
            raise DataError(f"{path}: line {issue.line}: {issue.message}")

    for issue in issues:
        logger.warning(f"Skipped {path} line {issue.line}: {issue.message}")
    if records:
        counts = [len(r.tweets) for r in records]
        logger.info(
            f"Loaded {len(records)} accounts from {path} "
            f"(tweets per account min {min(counts)}, mean {sum(counts) / len(counts):.1f}, max {max(counts)})"
        )
    return CorpusLoad(records=records, issues=issues)


def write_corpus(records: Sequence[AccountRecord], path: PathLike) -> None:
    """One JSON object per line; absent optional fields are omitted."""
    lines = [
        json.dumps(record.model_dump(mode="json", exclude_none=True), ensure_ascii=False) for record in records
    ]
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    logger.info(f"Wrote {len(records)} accounts to {path}")


def _optional(value: str):
    return value if value != "" else None


def import_tweet_csv(path: PathLike) -> List[AccountRecord]:
    """Groups a per-tweet CSV into accounts, in order of first appearance."""
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise DataError(f"cannot read tweet CSV {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise DataError(f"tweet CSV {path} is not valid UTF-8 (byte offset {exc.start})") from exc
    missing = [c for c in TWEET_CSV_REQUIRED if c not in frame.columns]
    if missing:
        raise DataError(f"tweet CSV {path} is missing column(s): {', '.join(missing)}")
    for column in TWEET_CSV_OPTIONAL:
        if column not in frame.columns:
            frame[column] = ""

    accounts: Dict[str, dict] = {}
    for number, row in enumerate(frame.itertuples(index=False), start=2):
        if not row.account_id:
            raise DataError(f"{path}: line {number}: empty account_id")
        entry = accounts.setdefault(
            row.account_id, {"account_id": row.account_id, "label": None, "screen_name": None, "tweets": []}
        )
        for field in ("label", "screen_name"):
            value = _optional(getattr(row, field))
            if value is None:
                continue
            if entry[field] is not None and entry[field] != value:
                raise DataError(f"{path}: line {number}: conflicting {field} for account {row.account_id!r}")
            entry[field] = value
        try:
            entry["tweets"].append(
                Tweet(
                    text=row.text,
                    created_at=_optional(row.created_at),
                    likes=_optional(row.likes),
                    retweets=_optional(row.retweets),
                )
            )
        except ValidationError as exc:
            raise DataError(f"{path}: line {number}: {_describe(exc)}") from exc
    try:
        records = [AccountRecord.model_validate(entry) for entry in accounts.values()]
    except ValidationError as exc:
        raise DataError(f"tweet CSV {path}: {_describe(exc)}") from exc
    logger.info(f"Imported {len(records)} accounts from {len(frame)} tweets in {path}")
    return records
