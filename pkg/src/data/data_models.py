# src/data/data_models.py

from datetime import datetime, timezone
from enum import Enum
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple
from pydantic import AfterValidator, BaseModel, ConfigDict, Field, model_validator

HUMAN = 0
BOT = 1
LABEL_CODES: Dict[str, int] = {"human": HUMAN, "bot": BOT}
LABEL_NAMES: Dict[int, str] = {code: name for name, code in LABEL_CODES.items()}


def _as_utc(value: datetime) -> datetime:
    """Naive timestamps are read as UTC so that mixed inputs stay comparable."""
    if value.tzinfo is None:
        return value.replace(tzinfo=timezone.utc)
    return value


UtcDatetime = Annotated[datetime, AfterValidator(_as_utc)]


# ==================== Tokens ====================

class TokenKind(str, Enum):
    """Lexical category of a token."""
    WORD = "word"
    URL = "url"
    MENTION = "mention"
    HASHTAG = "hashtag"
    EMOTICON = "emoticon"
    CONTRACTION = "contraction"
    NUMBER = "number"
    PUNCT = "punct"


class Token(BaseModel):
    """A verbatim slice of a tweet; span is a (start, end) UTF-8 byte range into the source text."""
    model_config = ConfigDict(frozen=True)

    text: str
    kind: TokenKind
    span: Tuple[int, int]


# ==================== Corpus ====================

class Tweet(BaseModel):
    """A single tweet as stored in the corpus."""
    text: str
    created_at: Optional[UtcDatetime] = None
    likes: Optional[int] = Field(default=None, ge=0)
    retweets: Optional[int] = Field(default=None, ge=0)
    is_reply: Optional[bool] = None
    is_retweet: Optional[bool] = None


class ProfileMetadata(BaseModel):
    """Account-level metadata used for the profile (F) feature set."""
    created_at: UtcDatetime
    followers_count: int = Field(ge=0)
    friends_count: int = Field(ge=0)
    favourites_count: int = Field(ge=0)
    listed_count: int = Field(ge=0)
    statuses_count: int = Field(ge=0)


class AccountRecord(BaseModel):
    """One account with its optional label, profile and tweets."""
    account_id: str = Field(min_length=1)
    label: Optional[Literal["human", "bot"]] = None
    screen_name: Optional[str] = None
    profile: Optional[ProfileMetadata] = None
    tweets: List[Tweet] = Field(default_factory=list)

    @property
    def label_code(self) -> Optional[int]:
        return LABEL_CODES[self.label] if self.label is not None else None


class LoadIssue(BaseModel):
    """A malformed corpus line, reported with its 1-based line number."""
    line: int
    message: str


class CorpusLoad(BaseModel):
    """Result of loading a corpus file: valid records in file order plus the issues found."""
    records: List[AccountRecord]
    issues: List[LoadIssue] = Field(default_factory=list)


# ==================== Features ====================

class TweetFeatures(BaseModel):
    """Lexical measurements of one non-empty tweet."""
    total_tokens: int = Field(gt=0)
    unique_tokens: int = Field(gt=0)
    ttr: float = Field(gt=0.0, le=1.0)
    lexical_diversity: float = Field(ge=0.0, le=1.0)
    contraction_count: int = Field(ge=0)
    emoticon_count: int = Field(ge=0)


class AccountFeatureVector(BaseModel):
    """Per-account means of the per-tweet lexical features."""
    account_id: str
    avg_ttr: float
    avg_lexical_diversity: float
    avg_contraction: float
    avg_emoticons: float
    tweets_used: int = Field(ge=1)
    contraction_rate: float = 0.0
    emoticon_rate: float = 0.0


class ProfileFeatureVector(BaseModel):
    """Account-metadata features; every ratio uses a guarded denominator."""
    age_days: float
    fav_to_tweets: float
    lists: float
    followers_to_friends: float
    likes_per_tweet: float
    retweets_per_tweet: float
    user_replies: float
    user_retweets: float
    tweet_frequency: float
    urls_count: float


# ==================== Annotation ====================

class AnnotationReport(BaseModel):
    """Screening flags for one account; labelling stays with a human reviewer."""
    account_id: str
    autogen_name: bool
    url_hashtag_fraction: float = Field(ge=0.0, le=1.0)
    url_hashtag_flag: bool
    max_rate_per_minute: int = Field(ge=0)
    rate_flag: bool
    flags_fired: int = Field(ge=0, le=3)

    @model_validator(mode="after")
    def _check_count(self) -> "AnnotationReport":
        fired = sum([self.autogen_name, self.url_hashtag_flag, self.rate_flag])
        if fired != self.flags_fired:
            raise ValueError(f"flags_fired={self.flags_fired} but {fired} flags are set")
        return self


# ==================== Evaluation ====================

class FoldAssignment(BaseModel):
    """Fold index per row, in row order."""
    k: int = Field(ge=2)
    folds: List[int]

    def test_rows(self, fold: int) -> List[int]:
        return [row for row, assigned in enumerate(self.folds) if assigned == fold]

    def train_rows(self, fold: int) -> List[int]:
        return [row for row, assigned in enumerate(self.folds) if assigned != fold]


class FoldMetrics(BaseModel):
    fold: int
    n_test: int
    accuracy: float
    precision: float
    recall: float
    auc: float
    precision_weighted: float
    recall_weighted: float


class MetricSummary(BaseModel):
    accuracy: float
    precision: float
    recall: float
    auc: float
    precision_weighted: float
    recall_weighted: float


class EvalReport(BaseModel):
    """Cross-validation outcome for one dataset / feature set / classifier cell."""
    dataset_tag: str
    classifier: str
    classifier_label: str
    feature_set: str
    feature_names: List[str]
    k: int
    seed: int
    aggregation: str = "macro-over-folds"
    folds: List[FoldMetrics]
    mean: MetricSummary
    provenance: Dict[str, Any] = Field(default_factory=dict)


# ==================== Synthetic corpora ====================

class SynthClassProfile(BaseModel):
    """Generation parameters for one class of synthetic accounts."""
    vocabulary_size: int = Field(gt=0)
    length_mean: float = Field(gt=0.0)
    length_std: float = Field(ge=0.0)
    emoticon_rate: float = Field(ge=0.0, le=1.0)
    contraction_rate: float = Field(ge=0.0, le=1.0)
    url_hashtag_rate: float = Field(ge=0.0, le=1.0)
    stopword_rate: float = Field(ge=0.0, le=1.0)
    mean_interval_seconds: float = Field(default=3600.0, gt=0.0)
    burst_probability: float = Field(default=0.0, ge=0.0, le=1.0)
    autogen_name_probability: float = Field(default=0.0, ge=0.0, le=1.0)


class SynthParams(BaseModel):
    """Complete, seeded description of a synthetic corpus."""
    human: SynthClassProfile
    bot: SynthClassProfile
    n_accounts: int = Field(default=100, ge=0)
    tweets_per_account: int = Field(default=200, ge=1)
    concentration: float = Field(default=50.0, gt=0.0)
    include_profile: bool = False
    profile_signal: float = Field(default=0.0, ge=0.0)
    start_time: UtcDatetime = datetime(2018, 1, 1, tzinfo=timezone.utc)
    seed: int = 42


# ==================== CLI ====================

class RunConfig(BaseModel):
    """Effective command-line configuration, embedded in every report."""
    subcommand: str
    input: Optional[str] = None
    output: Optional[str] = None
    feature_set: Optional[Literal["F", "L", "FL"]] = None
    classifier: Optional[str] = None
    folds: Optional[int] = None
    seed: int = 42
    strict: bool = True
    lexicon_dir: Optional[str] = None
    jobs: int = 1
    include_emoji: bool = True
    dataset_tag: Optional[str] = None
    now: Optional[str] = None
    model: Optional[str] = None
    with_rates: bool = False
    params: Dict[str, Any] = Field(default_factory=dict)
