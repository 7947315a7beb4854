# src/data/cache.py

import threading
from pathlib import Path
from typing import Dict, Optional, Tuple
from lexicon.lexicons import Lexicons, load_lexicon_dir
from utils.config import get_settings


class LexiconCache:
    """In-memory cache of loaded lexicons, keyed by directory and emoji policy."""

    def __init__(self):
        self._lock = threading.Lock()
        self._lexicons: Dict[Tuple[str, bool], Lexicons] = {}

    def get_lexicons(self, directory: Path, include_emoji: bool = True) -> Lexicons:
        """Returns the lexicons of a directory, loading and verifying them on first use."""
        key = (str(Path(directory).resolve()), include_emoji)
        with self._lock:
            if key not in self._lexicons:
                self._lexicons[key] = load_lexicon_dir(Path(directory), include_emoji=include_emoji)
            return self._lexicons[key]

    def clear_cache(self) -> None:
        """Drops every cached lexicon set, e.g. after files on disk changed."""
        with self._lock:
            self._lexicons.clear()


# one cache per process; lexicons are immutable once loaded
_cache_instance = LexiconCache()


def get_cache() -> LexiconCache:
    return _cache_instance


def default_lexicons(lexicon_dir: Optional[str] = None, include_emoji: bool = True) -> Lexicons:
    """Lexicons from an explicit directory, BOTLEX_LEXICON_DIR, or the bundled snapshot."""
    settings = get_settings(lexicon_dir)
    return get_cache().get_lexicons(settings.lexicon_dir, include_emoji=include_emoji)
