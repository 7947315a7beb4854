# tests/test_annotator.py

import random
from datetime import timedelta
import pytest
from annotator.heuristics import (
    AnnotatorConfig,
    HeuristicAnnotator,
    annotate,
    max_tweet_rate,
    screen_name_autogen,
    url_hashtag_fraction,
)
from data.data_models import AccountRecord, Tweet
from utils.exceptions import DataError
from conftest import T0


@pytest.mark.parametrize(
    "name, expected",
    [
        ("37Hkyjdytyhjgh", True),
        ("2jo120", True),
        ("a12345678", True),
        ("ab1cd2ef", True),
        ("alice_smith", False),
        ("BarackObama", False),
        ("john_doe_1984", False),
    ],
)
def test_screen_name_autogen(name, expected):
    assert screen_name_autogen(name) is expected


def test_screen_name_autogen_rejects_empty_name():
    with pytest.raises(DataError):
        screen_name_autogen("")


def test_screen_name_thresholds_are_tunable():
    assert screen_name_autogen("bobby9") is False
    assert screen_name_autogen("bobby9", AnnotatorConfig(digit_fraction=0.15)) is True


@pytest.mark.parametrize(
    "texts, fraction, flagged",
    [
        (["#a #b word"], 2 / 3, False),
        (["#a #b #c word"], 0.75, True),
        (["https://t.co/x", "https://t.co/y"], 1.0, True),
        (["just words here"], 0.0, False),
    ],
)
def test_url_hashtag_fraction(lexicons, make_account, texts, fraction, flagged):
    account = make_account("u1", texts)
    assert url_hashtag_fraction(account, lexicons) == pytest.approx(fraction)
    assert annotate(account, lexicons).url_hashtag_flag is flagged


def test_url_hashtag_fraction_needs_tokens(lexicons, make_account):
    with pytest.raises(DataError):
        url_hashtag_fraction(make_account("u1", ["   "]), lexicons)


def test_annotator_handles_account_without_tokens(lexicons, make_account):
    report = annotate(make_account("u1", []), lexicons)
    assert report.url_hashtag_fraction == 0.0
    assert report.flags_fired == 0


def test_max_tweet_rate_examples():
    burst = [T0 + timedelta(seconds=3 * i) for i in range(20)]
    assert max_tweet_rate(burst) == 20
    spaced = [T0 + timedelta(seconds=60 * i) for i in range(20)]
    assert max_tweet_rate(spaced) == 1
    assert max_tweet_rate([]) == 0


def _brute_force_rate(times, window):
    return max((sum(1 for u in times if t <= u < t + window) for t in times), default=0)


def test_max_tweet_rate_matches_brute_force():
    rng = random.Random(7)
    for _ in range(100):
        times = [rng.randint(0, 600) for _ in range(rng.randint(0, 40))]
        assert max_tweet_rate(times, 60.0) == _brute_force_rate(times, 60)


def test_max_tweet_rate_matches_brute_force_on_a_long_timeline():
    rng = random.Random(13)
    times = [rng.randint(0, 36_000) for _ in range(1000)]
    assert max_tweet_rate(times, 60.0) == _brute_force_rate(times, 60)
    bursty = times[:900] + [18_000 + rng.randint(0, 59) for _ in range(100)]
    assert max_tweet_rate(bursty, 60.0) == _brute_force_rate(bursty, 60) >= 100


def test_max_tweet_rate_ignores_input_order():
    times = [5, 100, 1, 30, 61, 2]
    assert max_tweet_rate(times) == max_tweet_rate(sorted(times)) == 4


def test_report_counts_fired_flags(lexicons):
    tweets = [Tweet(text="#deal https://t.co/a", created_at=T0 + timedelta(seconds=2 * i)) for i in range(16)]
    account = AccountRecord(account_id="b1", screen_name="x83920174", tweets=tweets)
    report = HeuristicAnnotator(lexicons).annotate(account)
    assert report.autogen_name and report.url_hashtag_flag and report.rate_flag
    assert report.max_rate_per_minute == 16
    assert report.flags_fired == 3


def test_report_without_screen_name(lexicons, make_account):
    report = annotate(make_account("h1", ["hello there friend"], spacing_seconds=3600), lexicons)
    assert report.autogen_name is False
    assert report.rate_flag is False
    assert report.flags_fired == 0


def test_rate_threshold_is_inclusive(lexicons, make_account):
    account = make_account("b2", ["word"] * 15, spacing_seconds=1)
    assert annotate(account, lexicons).rate_flag is True
    assert annotate(account, lexicons, AnnotatorConfig(rate_threshold=16)).rate_flag is False
