# src/utils/config.py

import os
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv
from pydantic import BaseModel, Field

VERSION = "0.1.0"

BUNDLED_LEXICON_DIR = Path(__file__).resolve().parent.parent / "lexicon" / "data"

DEFAULT_SEED = 42
DEFAULT_FOLDS = 10
DEFAULT_CLASSIFIER = "random_forest"


class Settings(BaseModel):
    """Environment-driven settings (a local .env file is honoured)."""
    lexicon_dir: Path = BUNDLED_LEXICON_DIR
    log_level: str = "INFO"
    default_seed: int = DEFAULT_SEED
    default_folds: int = Field(default=DEFAULT_FOLDS, ge=2)
    default_classifier: str = DEFAULT_CLASSIFIER


def get_settings(lexicon_dir: Optional[str] = None) -> Settings:
    """Builds settings from the environment; an explicit lexicon_dir wins over BOTLEX_LEXICON_DIR."""
    load_dotenv()
    env_dir = os.getenv("BOTLEX_LEXICON_DIR")
    chosen = lexicon_dir or env_dir
    return Settings(
        lexicon_dir=Path(chosen) if chosen else BUNDLED_LEXICON_DIR,
        log_level=os.getenv("BOTLEX_LOG_LEVEL", "INFO"),
    )
