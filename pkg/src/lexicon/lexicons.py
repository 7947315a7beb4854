# src/lexicon/lexicons.py

import hashlib
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional
from pydantic import BaseModel, ConfigDict, model_validator
from utils.exceptions import LexiconError
from utils.logger import logger

STOPWORD_FILE = "stopwords.txt"
CONTRACTION_FILE = "contractions.txt"
EMOTICON_FILE = "emoticons.txt"
MANIFEST_FILE = "checksums.tsv"


class Lexicons(BaseModel):
    """Immutable word lists used by the lexer and the lexical features."""
    model_config = ConfigDict(frozen=True)

    stopwords: FrozenSet[str]
    contractions: FrozenSet[str]
    emoticons: FrozenSet[str]
    emoji: FrozenSet[str] = frozenset()
    checksums: Dict[str, str] = {}
    max_emoticon_length: int = 0
    emoticon_starts: FrozenSet[str] = frozenset()

    @model_validator(mode="before")
    @classmethod
    def _derive(cls, data: dict) -> dict:
        if isinstance(data, dict) and data.get("emoticons") is not None:
            emoticons = frozenset(data["emoticons"])
            data = dict(data)
            data.setdefault("emoji", frozenset(e for e in emoticons if not e.isascii()))
            data["max_emoticon_length"] = max((len(e) for e in emoticons), default=0)
            data["emoticon_starts"] = frozenset(e[0] for e in emoticons)
        return data

    def is_stopword(self, text: str) -> bool:
        return text.lower() in self.stopwords

    def is_contraction(self, text: str) -> bool:
        return normalize_apostrophes(text).lower() in self.contractions


def normalize_apostrophes(text: str) -> str:
    return text.replace("’", "'")


def compute_checksum(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def read_manifest(manifest_path: Path) -> Dict[str, str]:
    """Parses 'filename<TAB>sha256-hex' lines."""
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise LexiconError(f"checksum manifest not found: {manifest_path}")
    manifest: Dict[str, str] = {}
    for number, line in enumerate(manifest_path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError(f"{manifest_path}:{number}: expected 'filename<TAB>sha256'")
        manifest[parts[0].strip()] = parts[1].strip().lower()
    return manifest


def write_manifest(paths: Iterable[Path], manifest_path: Path) -> Dict[str, str]:
    """Records checksums for a custom lexicon directory."""
    manifest = {Path(p).name: compute_checksum(Path(p)) for p in paths}
    lines = [f"{name}\t{digest}" for name, digest in sorted(manifest.items())]
    Path(manifest_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


def _read_entries(path: Path, lowercase: bool, manifest: Dict[str, str]) -> List[str]:
    if not path.is_file():
        raise LexiconError(f"lexicon file not found: {path}")
    expected = manifest.get(path.name)
    if expected is None:
        raise LexiconError(f"no checksum recorded for {path.name}")
    actual = compute_checksum(path)
    if actual != expected:
        raise LexiconError(f"checksum mismatch for {path.name}: expected {expected}, got {actual}")
    entries = []
    for line in path.read_text(encoding="utf-8").splitlines():
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        entries.append(entry.lower() if lowercase else entry)
    if not entries:
        raise LexiconError(f"empty lexicon: {path}")
    return entries


def load_lexicons(
    stopword_path: Path,
    contraction_path: Path,
    emoticon_path: Path,
    manifest_path: Optional[Path] = None,
    include_emoji: bool = True,
) -> Lexicons:
    """Loads and verifies the three lexicons; the manifest defaults to checksums.tsv beside the stopword file."""
    stopword_path, contraction_path, emoticon_path = Path(stopword_path), Path(contraction_path), Path(emoticon_path)
    manifest = read_manifest(Path(manifest_path) if manifest_path else stopword_path.parent / MANIFEST_FILE)
    stopwords = _read_entries(stopword_path, lowercase=True, manifest=manifest)
    contractions = [normalize_apostrophes(c) for c in _read_entries(contraction_path, lowercase=True, manifest=manifest)]
    emoticons = _read_entries(emoticon_path, lowercase=False, manifest=manifest)
    if not include_emoji:
        emoticons = [e for e in emoticons if e.isascii()]
        if not emoticons:
            raise LexiconError(f"empty lexicon: {emoticon_path} has no ASCII emoticons")
    checksums = {p.name: manifest[p.name] for p in (stopword_path, contraction_path, emoticon_path)}
    lexicons = Lexicons(
        stopwords=frozenset(stopwords),
        contractions=frozenset(contractions),
        emoticons=frozenset(emoticons),
        checksums=checksums,
    )
    logger.info(
        f"Loaded lexicons: {len(lexicons.stopwords)} stopwords, {len(lexicons.contractions)} contractions, "
        f"{len(lexicons.emoticons)} emoticons ({len(lexicons.emoji)} emoji)"
    )
    return lexicons


def load_lexicon_dir(directory: Path, include_emoji: bool = True) -> Lexicons:
    directory = Path(directory)
    return load_lexicons(
        directory / STOPWORD_FILE,
        directory / CONTRACTION_FILE,
        directory / EMOTICON_FILE,
        manifest_path=directory / MANIFEST_FILE,
        include_emoji=include_emoji,
    )
