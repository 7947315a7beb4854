# src/data/synthetic.py

import string
from datetime import datetime, timedelta
from typing import List, Optional, Sequence
import numpy as np
from data.data_models import AccountRecord, ProfileMetadata, SynthClassProfile, SynthParams, TokenKind, Tweet
from lexicon.lexer import tokenize
from lexicon.lexicons import Lexicons
from utils.logger import logger

BURST_LENGTH = 20
BURST_SPACING_SECONDS = 2
URL_PREFIX = "https://t.co/"
_URL_ALPHABET = np.array(list(string.ascii_letters + string.digits))
_LETTERS = string.ascii_lowercase
_SYLLABLES = [c + v for c in "bdfgklmnprstvz" for v in "aeiou"]


def default_synth_params(seed: int = 42) -> SynthParams:
    """Shipped defaults: bots use emoticons, URLs and hashtags more; humans a richer vocabulary and more contractions."""
    human = SynthClassProfile(
        vocabulary_size=900,
        length_mean=12.0,
        length_std=4.0,
        emoticon_rate=0.1,
        contraction_rate=0.15,
        url_hashtag_rate=0.05,
        stopword_rate=0.3,
        mean_interval_seconds=3600.0,
        burst_probability=0.0,
        autogen_name_probability=0.05,
    )
    bot = SynthClassProfile(
        vocabulary_size=300,
        length_mean=12.0,
        length_std=4.0,
        emoticon_rate=0.5,
        contraction_rate=0.02,
        url_hashtag_rate=0.25,
        stopword_rate=0.3,
        mean_interval_seconds=600.0,
        burst_probability=0.3,
        autogen_name_probability=0.4,
    )
    return SynthParams(human=human, bot=bot, n_accounts=100, tweets_per_account=200, seed=seed)


def _single_token_entries(entries: Sequence[str], kind: TokenKind, lexicons: Lexicons) -> List[str]:
    """Sorted lexicon entries that lex back as exactly one token of the given kind."""
    safe = []
    for entry in sorted(entries):
        tokens = tokenize(entry, lexicons)
        if len(tokens) == 1 and tokens[0].kind is kind:
            safe.append(entry)
    return safe


def _vocabulary_word(index: int) -> str:
    # the "zq" prefix keeps synthetic words clear of every stopword and emoticon
    letters = []
    while True:
        index, rest = divmod(index, 26)
        letters.append(_LETTERS[rest])
        if index == 0:
            break
    return "zq" + "".join(reversed(letters))


class SyntheticCorpusGenerator:
    """Token-level generator; all randomness comes from one numpy Generator seeded by SynthParams.seed."""

    def __init__(self, params: SynthParams, lexicons: Lexicons):
        self.params = params
        self.rng = np.random.default_rng(params.seed)
        self.emoticons = _single_token_entries(lexicons.emoticons, TokenKind.EMOTICON, lexicons)
        self.contractions = _single_token_entries(lexicons.contractions, TokenKind.CONTRACTION, lexicons)
        self.stopwords = _single_token_entries(lexicons.stopwords, TokenKind.WORD, lexicons)

    def _account_rate(self, rate: float) -> float:
        """Per-account rate drawn from a Beta centred on the class rate."""
        if rate <= 0.0 or rate >= 1.0:
            return rate
        c = self.params.concentration
        return float(self.rng.beta(rate * c, (1.0 - rate) * c))

    def _slot_token(self, url_rate: float, stopword_rate: float, vocabulary_size: int) -> str:
        if self.rng.random() < url_rate:
            if self.rng.random() < 0.5:
                return URL_PREFIX + "".join(self.rng.choice(_URL_ALPHABET, size=8))
            return "#" + _vocabulary_word(int(self.rng.integers(vocabulary_size)))
        if self.rng.random() < stopword_rate:
            return self.stopwords[int(self.rng.integers(len(self.stopwords)))]
        return _vocabulary_word(int(self.rng.integers(vocabulary_size)))

    def _tweet_text(self, profile: SynthClassProfile, rates: dict) -> str:
        length = max(1, int(round(self.rng.normal(profile.length_mean, profile.length_std))))
        tokens = [
            self._slot_token(rates["url_hashtag"], rates["stopword"], profile.vocabulary_size) for _ in range(length)
        ]
        if self.rng.random() < rates["contraction"]:
            word = self.contractions[int(self.rng.integers(len(self.contractions)))]
            tokens.insert(int(self.rng.integers(len(tokens) + 1)), word)
        if self.rng.random() < rates["emoticon"]:
            face = self.emoticons[int(self.rng.integers(len(self.emoticons)))]
            tokens.insert(int(self.rng.integers(len(tokens) + 1)), face)
        return " ".join(tokens)

    def _timestamps(self, profile: SynthClassProfile, count: int) -> List[datetime]:
        gaps = np.maximum(1, np.rint(self.rng.exponential(profile.mean_interval_seconds, size=count))).astype(int)
        gaps[0] = int(self.rng.integers(0, 30 * 86400))
        if count > 1 and self.rng.random() < profile.burst_probability:
            burst = min(BURST_LENGTH, count)
            start = int(self.rng.integers(1, count - burst + 2)) if count > burst else 1
            gaps[start:start + burst - 1] = BURST_SPACING_SECONDS
        offsets = np.cumsum(gaps)
        return [self.params.start_time + timedelta(seconds=int(s)) for s in offsets]

    def _screen_name(self, profile: SynthClassProfile) -> str:
        if self.rng.random() < profile.autogen_name_probability:
            digits = "".join(str(d) for d in self.rng.integers(0, 10, size=8))
            return self.rng.choice(list(_LETTERS)) + digits
        parts = self.rng.choice(_SYLLABLES, size=int(self.rng.integers(2, 5)))
        return "".join(parts)

    def _profile(self, is_bot: bool) -> ProfileMetadata:
        shift = self.params.profile_signal if is_bot else 0.0

        def lognormal_count(location: float, scale: float) -> int:
            return int(np.rint(np.exp(self.rng.normal(location, scale))))

        age_days = float(np.exp(self.rng.normal(np.log(1000.0) - 0.5 * shift, 0.8)))
        return ProfileMetadata(
            created_at=self.params.start_time - timedelta(days=age_days),
            followers_count=lognormal_count(5.0 - shift, 1.5),
            friends_count=lognormal_count(5.0 + shift, 1.5),
            favourites_count=lognormal_count(6.0 - shift, 1.5),
            listed_count=lognormal_count(1.0 - shift, 1.0),
            statuses_count=lognormal_count(7.0 + shift, 1.5),
        )

    def _account(self, account_id: str, label: str) -> AccountRecord:
        is_bot = label == "bot"
        profile = self.params.bot if is_bot else self.params.human
        rates = {
            "emoticon": self._account_rate(profile.emoticon_rate),
            "contraction": self._account_rate(profile.contraction_rate),
            "url_hashtag": self._account_rate(profile.url_hashtag_rate),
            "stopword": self._account_rate(profile.stopword_rate),
        }
        n = self.params.tweets_per_account
        texts = [self._tweet_text(profile, rates) for _ in range(n)]
        stamps = self._timestamps(profile, n)
        screen_name = self._screen_name(profile)
        if not self.params.include_profile:
            tweets = [Tweet(text=text, created_at=stamp) for text, stamp in zip(texts, stamps)]
            return AccountRecord(account_id=account_id, label=label, screen_name=screen_name, tweets=tweets)
        meta = self._profile(is_bot)
        engagement = float(np.exp(self.rng.normal(0.5 - 0.5 * self.params.profile_signal * is_bot, 0.7)))
        tweets = [
            Tweet(
                text=text,
                created_at=stamp,
                likes=int(self.rng.poisson(engagement)),
                retweets=int(self.rng.poisson(engagement / 2.0)),
                is_reply=bool(self.rng.random() < 0.1),
                is_retweet=bool(self.rng.random() < 0.1),
            )
            for text, stamp in zip(texts, stamps)
        ]
        return AccountRecord(account_id=account_id, label=label, screen_name=screen_name, profile=meta, tweets=tweets)

    def generate(self) -> List[AccountRecord]:
        records = []
        for label, prefix in (("human", "h"), ("bot", "b")):
            for i in range(self.params.n_accounts):
                records.append(self._account(f"synth-{prefix}{i:04d}", label))
        logger.info(
            f"Generated synthetic corpus: {len(records)} accounts x {self.params.tweets_per_account} tweets "
            f"(seed {self.params.seed})"
        )
        return records


def generate_synthetic_corpus(params: SynthParams, lexicons: Optional[Lexicons] = None) -> List[AccountRecord]:
    """Deterministic corpus for the given params; lexicons default to the bundled snapshot."""
    if lexicons is None:
        from data.cache import default_lexicons

        lexicons = default_lexicons()
    return SyntheticCorpusGenerator(params, lexicons).generate()
