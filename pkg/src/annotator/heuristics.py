# src/annotator/heuristics.py

import re
from datetime import datetime
from typing import List, Optional, Sequence, Union
from pydantic import BaseModel, Field
from data.data_models import AccountRecord, AnnotationReport, TokenKind
from lexicon.lexer import tokenize
from lexicon.lexicons import Lexicons
from utils.exceptions import DataError
from utils.logger import logger

_CONSONANT_RUN_RE = re.compile(r"[b-df-hj-np-tv-z]+", re.IGNORECASE)
_ALNUM_STRETCH_RE = re.compile(r"[A-Za-z0-9]+")
_SEGMENT_RE = re.compile(r"[A-Za-z]+|[0-9]+")

Timestamp = Union[datetime, float, int]


class AnnotatorConfig(BaseModel):
    """Screening thresholds; the name rules are tunable, the others follow the manual annotation criteria."""
    digit_fraction: float = Field(default=0.4, ge=0.0, le=1.0)
    consonant_run: int = Field(default=5, ge=1)
    alternation_segments: int = Field(default=4, ge=2)
    url_hashtag_threshold: float = Field(default=0.70, ge=0.0, le=1.0)
    rate_threshold: int = Field(default=15, ge=1)
    window_seconds: float = Field(default=60.0, gt=0.0)


def screen_name_autogen(name: str, config: Optional[AnnotatorConfig] = None) -> bool:
    """True when a screen name looks machine generated (digit-heavy, consonant mash, or letter/digit alternation)."""
    if not name:
        raise DataError("screen name is empty")
    config = config or AnnotatorConfig()
    digits = sum(1 for ch in name if ch.isdigit())
    if digits / len(name) >= config.digit_fraction:
        return True
    if any(len(run) >= config.consonant_run for run in _CONSONANT_RUN_RE.findall(name)):
        return True
    return any(
        len(_SEGMENT_RE.findall(stretch)) >= config.alternation_segments
        for stretch in _ALNUM_STRETCH_RE.findall(name)
    )


def url_hashtag_fraction(account: AccountRecord, lexicons: Lexicons) -> float:
    """Share of URL and hashtag tokens over all tokens of the account."""
    total = 0
    flagged = 0
    for tweet in account.tweets:
        tokens = tokenize(tweet.text, lexicons)
        total += len(tokens)
        flagged += sum(1 for t in tokens if t.kind in (TokenKind.URL, TokenKind.HASHTAG))
    if total == 0:
        raise DataError(f"account {account.account_id}: no tokens to measure")
    return flagged / total


def _seconds(stamp: Timestamp) -> float:
    return stamp.timestamp() if isinstance(stamp, datetime) else float(stamp)


def max_tweet_rate(timestamps: Sequence[Timestamp], window_seconds: float = 60.0) -> int:
    """Most tweets inside any half-open window [t, t + window_seconds)."""
    times: List[float] = sorted(_seconds(t) for t in timestamps)
    best = 0
    left = 0
    for right, current in enumerate(times):
        while current - times[left] >= window_seconds:
            left += 1
        best = max(best, right - left + 1)
    return best


class HeuristicAnnotator:
    """Flags accounts for manual review; it never assigns a label."""

    def __init__(self, lexicons: Lexicons, config: Optional[AnnotatorConfig] = None):
        self.lexicons = lexicons
        self.config = config or AnnotatorConfig()

    def _analyze_name(self, account: AccountRecord) -> bool:
        if not account.screen_name:
            return False
        return screen_name_autogen(account.screen_name, self.config)

    def _analyze_content(self, account: AccountRecord) -> float:
        try:
            return url_hashtag_fraction(account, self.lexicons)
        except DataError:
            logger.warning(f"[{account.account_id}] No tokens available; URL/hashtag fraction set to 0")
            return 0.0

    def _analyze_activity(self, account: AccountRecord) -> int:
        stamps = [t.created_at for t in account.tweets if t.created_at is not None]
        return max_tweet_rate(stamps, self.config.window_seconds)

    def annotate(self, account: AccountRecord) -> AnnotationReport:
        autogen = self._analyze_name(account)
        fraction = self._analyze_content(account)
        rate = self._analyze_activity(account)
        url_flag = fraction > self.config.url_hashtag_threshold
        rate_flag = rate >= self.config.rate_threshold
        report = AnnotationReport(
            account_id=account.account_id,
            autogen_name=autogen,
            url_hashtag_fraction=fraction,
            url_hashtag_flag=url_flag,
            max_rate_per_minute=rate,
            rate_flag=rate_flag,
            flags_fired=sum([autogen, url_flag, rate_flag]),
        )
        logger.debug(f"[{account.account_id}] Annotation flags fired: {report.flags_fired}")
        return report


def annotate(account: AccountRecord, lexicons: Lexicons, config: Optional[AnnotatorConfig] = None) -> AnnotationReport:
    return HeuristicAnnotator(lexicons, config).annotate(account)
