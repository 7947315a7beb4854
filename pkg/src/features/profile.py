# src/features/profile.py

import math
import re
from datetime import datetime
from typing import List, Sequence
from data.data_models import AccountRecord, ProfileFeatureVector, ProfileMetadata, Tweet
from utils.exceptions import DataError
from utils.logger import logger

PROFILE_COLUMNS = [
    "age_days",
    "fav_to_tweets",
    "lists",
    "followers_to_friends",
    "likes_per_tweet",
    "retweets_per_tweet",
    "user_replies",
    "user_retweets",
    "tweet_frequency",
    "urls_count",
]
PROFILE_FIELDS = list(ProfileMetadata.model_fields)

_URL_RE = re.compile(r"https?://\S+", re.IGNORECASE)
SECONDS_PER_DAY = 86400.0


def _is_reply(tweet: Tweet) -> bool:
    return tweet.is_reply if tweet.is_reply is not None else tweet.text.startswith("@")


def _is_retweet(tweet: Tweet) -> bool:
    return tweet.is_retweet if tweet.is_retweet is not None else tweet.text.startswith("RT @")


def _mean(values: List[float]) -> float:
    return math.fsum(values) / len(values) if values else 0.0


def profile_features(meta: ProfileMetadata, tweets: Sequence[Tweet], now: datetime) -> ProfileFeatureVector:
    """Profile-derived features. Ratio denominators are floored at 1 so every output stays finite."""
    if meta.created_at > now:
        raise DataError(f"profile created_at {meta.created_at.isoformat()} is after the reference time {now.isoformat()}")
    age_days = (now - meta.created_at).total_seconds() / SECONDS_PER_DAY
    return ProfileFeatureVector(
        age_days=age_days,
        fav_to_tweets=meta.favourites_count / max(meta.statuses_count, 1),
        lists=float(meta.listed_count),
        followers_to_friends=meta.followers_count / max(meta.friends_count, 1),
        likes_per_tweet=_mean([float(t.likes or 0) for t in tweets]),
        retweets_per_tweet=_mean([float(t.retweets or 0) for t in tweets]),
        user_replies=float(sum(1 for t in tweets if _is_reply(t))),
        user_retweets=float(sum(1 for t in tweets if _is_retweet(t))),
        tweet_frequency=meta.statuses_count / max(age_days, 1.0),
        urls_count=_mean([float(len(_URL_RE.findall(t.text))) for t in tweets]),
    )


def require_profiles(accounts: Sequence[AccountRecord]) -> None:
    """Raises a DataError naming the missing profile fields when any account lacks metadata."""
    missing = [a.account_id for a in accounts if a.profile is None]
    if missing:
        sample = ", ".join(missing[:5])
        raise DataError(
            f"profile metadata missing for {len(missing)} account(s) (e.g. {sample}); "
            f"missing profile fields: {', '.join(PROFILE_FIELDS)}"
        )


def corpus_reference_time(accounts: Sequence[AccountRecord]) -> datetime:
    """Latest timestamp present in the corpus, used as 'now' so results never depend on the wall clock."""
    stamps = [t.created_at for a in accounts for t in a.tweets if t.created_at is not None]
    stamps += [a.profile.created_at for a in accounts if a.profile is not None]
    if not stamps:
        raise DataError("corpus carries no timestamps; pass an explicit reference time")
    return max(stamps)


def extract_profile_features(accounts: Sequence[AccountRecord], now: datetime) -> List[ProfileFeatureVector]:
    require_profiles(accounts)
    vectors = [profile_features(a.profile, a.tweets, now) for a in accounts]
    logger.info(f"Extracted profile features for {len(vectors)} accounts (reference time {now.isoformat()})")
    return vectors
