# tests/conftest.py

import json
import logging
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import List, Optional
import numpy as np
import pytest
from data.cache import default_lexicons
from data.data_models import AccountRecord, ProfileMetadata, Tweet
from data.synthetic import default_synth_params, generate_synthetic_corpus
from features.matrix import FeatureMatrix
from utils.logger import LOGGER_NAME, logger

FIXTURES = Path(__file__).parent / "fixtures"
T0 = datetime(2019, 3, 1, tzinfo=timezone.utc)


@pytest.fixture(scope="session")
def lexicons():
    return default_lexicons()


@pytest.fixture(scope="session")
def golden_tweets():
    lines = (FIXTURES / "golden_tweets.jsonl").read_text(encoding="utf-8").splitlines()
    return [json.loads(line) for line in lines if line.strip()]


@pytest.fixture
def botlex_logs(caplog, monkeypatch):
    """caplog for the package logger, which does not propagate to root."""
    monkeypatch.setattr(logger, "propagate", True)
    caplog.set_level(logging.WARNING, logger=LOGGER_NAME)
    return caplog


@pytest.fixture
def make_account():
    """Factory for small hand-built accounts."""
    def _make(
        account_id: str,
        texts: List[str],
        label: Optional[str] = None,
        screen_name: Optional[str] = None,
        profile: bool = False,
        spacing_seconds: int = 600,
    ) -> AccountRecord:
        tweets = [
            Tweet(text=text, created_at=T0 + timedelta(seconds=i * spacing_seconds), likes=i % 3, retweets=i % 2)
            for i, text in enumerate(texts)
        ]
        meta = None
        if profile:
            meta = ProfileMetadata(
                created_at=T0 - timedelta(days=100),
                followers_count=50,
                friends_count=25,
                favourites_count=40,
                listed_count=2,
                statuses_count=200,
            )
        return AccountRecord(account_id=account_id, label=label, screen_name=screen_name, profile=meta, tweets=tweets)

    return _make


@pytest.fixture
def small_corpus(make_account):
    """Six labelled accounts: bots lean on emoticons and hashtags, humans on contractions."""
    humans = [
        make_account(f"h{i}", ["I don't know what you're doing", "we'll see how it goes tomorrow", f"reading chapter {i} tonight"], "human", profile=True)
        for i in range(3)
    ]
    bots = [
        make_account(f"b{i}", [":) :) #deal https://t.co/x", "#win now :D", f"#promo code {i} XD"], "bot", profile=True)
        for i in range(3)
    ]
    return humans + bots


def _separable_matrix(n_per_class: int = 20, d: int = 1, seed: int = 0) -> FeatureMatrix:
    """Feature 0 splits the classes at 0; any other columns are noise."""
    rng = np.random.default_rng(seed)
    rows = rng.normal(size=(2 * n_per_class, d))
    rows[:n_per_class, 0] = rng.uniform(-2.0, -0.5, size=n_per_class)
    rows[n_per_class:, 0] = rng.uniform(0.5, 2.0, size=n_per_class)
    labels = np.array([0] * n_per_class + [1] * n_per_class)
    return FeatureMatrix(feature_names=[f"f{j}" for j in range(d)], rows=rows, labels=labels)


@pytest.fixture
def make_separable():
    return _separable_matrix


@pytest.fixture
def separable():
    return _separable_matrix()


@pytest.fixture(scope="session")
def acceptance_corpus(lexicons):
    return generate_synthetic_corpus(default_synth_params(seed=42), lexicons)
