# src/features/lexical.py

import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence
from data.data_models import AccountFeatureVector, AccountRecord, Token, TokenKind, TweetFeatures
from lexicon.lexer import tokenize
from lexicon.lexicons import Lexicons, normalize_apostrophes
from utils.exceptions import DataError
from utils.logger import logger
from utils.progress import progress

LEXICAL_COLUMNS = ["avg_ttr", "avg_lexical_diversity", "avg_contraction", "avg_emoticons"]
RATE_COLUMNS = ["contraction_rate", "emoticon_rate"]

_FOLDED_KINDS = {TokenKind.WORD, TokenKind.CONTRACTION, TokenKind.MENTION, TokenKind.HASHTAG}
_NON_CONTENT_KINDS = {TokenKind.URL, TokenKind.MENTION}


def type_key(token: Token) -> str:
    """Vocabulary type of a token: word-like kinds are case-folded, others kept verbatim."""
    if token.kind in _FOLDED_KINDS:
        return normalize_apostrophes(token.text).lower()
    return token.text


def _require_tokens(tokens: Sequence[Token]) -> None:
    if not tokens:
        raise DataError("empty token list: skip empty tweets before computing ratios")


def ttr(tokens: Sequence[Token]) -> float:
    """Distinct types over total tokens, counting every token kind."""
    _require_tokens(tokens)
    return len({type_key(t) for t in tokens}) / len(tokens)


def lexical_diversity(tokens: Sequence[Token], lexicons: Lexicons) -> float:
    """Share of tokens that are neither URLs, mentions nor stopwords."""
    _require_tokens(tokens)
    content = sum(1 for t in tokens if t.kind not in _NON_CONTENT_KINDS and not lexicons.is_stopword(t.text))
    return content / len(tokens)


def contraction_count(tokens: Sequence[Token]) -> int:
    return sum(1 for t in tokens if t.kind is TokenKind.CONTRACTION)


def emoticon_count(tokens: Sequence[Token]) -> int:
    return sum(1 for t in tokens if t.kind is TokenKind.EMOTICON)


def tweet_features(text: str, lexicons: Lexicons) -> Optional[TweetFeatures]:
    """All per-tweet measurements, or None when the tweet has no tokens."""
    tokens = tokenize(text, lexicons)
    if not tokens:
        return None
    return TweetFeatures(
        total_tokens=len(tokens),
        unique_tokens=len({type_key(t) for t in tokens}),
        ttr=ttr(tokens),
        lexical_diversity=lexical_diversity(tokens, lexicons),
        contraction_count=contraction_count(tokens),
        emoticon_count=emoticon_count(tokens),
    )


def account_features(account: AccountRecord, lexicons: Lexicons) -> AccountFeatureVector:
    """Averages the per-tweet features of an account over its non-empty tweets."""
    measured = [f for f in (tweet_features(t.text, lexicons) for t in account.tweets) if f is not None]
    if not measured:
        raise DataError(f"account {account.account_id}: no tweet produced any tokens")
    skipped = len(account.tweets) - len(measured)
    if skipped:
        logger.warning(f"Account {account.account_id}: skipped {skipped} tweet(s) with no tokens")
    n = len(measured)
    return AccountFeatureVector(
        account_id=account.account_id,
        avg_ttr=math.fsum(f.ttr for f in measured) / n,
        avg_lexical_diversity=math.fsum(f.lexical_diversity for f in measured) / n,
        avg_contraction=math.fsum(f.contraction_count for f in measured) / n,
        avg_emoticons=math.fsum(f.emoticon_count for f in measured) / n,
        tweets_used=n,
        contraction_rate=math.fsum(f.contraction_count / f.total_tokens for f in measured) / n,
        emoticon_rate=math.fsum(f.emoticon_count / f.total_tokens for f in measured) / n,
    )


def extract_account_features(
    accounts: Sequence[AccountRecord], lexicons: Lexicons, jobs: int = 1, strict: bool = True
) -> List[Optional[AccountFeatureVector]]:
    """Feature vectors in input order; jobs > 1 spreads accounts over a thread pool.

    An account none of whose tweets yields a token aborts the run in strict mode. In lenient
    mode it is logged and its slot is None.
    """
    progress.begin("Features", total=len(accounts), message="lexical features")

    def featurize(account: AccountRecord) -> Optional[AccountFeatureVector]:
        try:
            vector = account_features(account, lexicons)
        except DataError as exc:
            if strict:
                raise
            logger.warning(f"Dropped {exc}")
            vector = None
        progress.advance("Features")
        return vector

    if jobs <= 1:
        vectors = [featurize(a) for a in accounts]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            vectors = list(pool.map(featurize, accounts))
    usable = sum(1 for v in vectors if v is not None)
    logger.info(f"Extracted lexical features for {usable} of {len(vectors)} accounts")
    return vectors
