# src/lexicon/lexer.py

import re
from itertools import accumulate
from typing import List, Optional, Tuple
from data.data_models import Token, TokenKind
from lexicon.lexicons import Lexicons

_CHUNK_RE = re.compile(r"\S+")
_URL_RE = re.compile(r"https?://", re.IGNORECASE)
_MENTION_RE = re.compile(r"@[A-Za-z0-9_]{1,15}")
_HASHTAG_RE = re.compile(r"#\w+")
_APOSTROPHE_WORD_RE = re.compile(r"['’]?[A-Za-z]+(?:['’][A-Za-z]+)*")
_NUMBER_RE = re.compile(r"\d+(?:[.,]\d+)*")
_WORD_RE = re.compile(r"[^\W\d_]+")
_APOSTROPHES = "'’"


def _match_emoticon(text: str, pos: int, end: int, lexicons: Lexicons) -> Optional[int]:
    """Longest lexicon emoticon starting at pos. Alphanumeric edges must not run into an adjacent letter or digit."""
    if text[pos] not in lexicons.emoticon_starts:
        return None
    longest = min(lexicons.max_emoticon_length, end - pos)
    for length in range(longest, 0, -1):
        candidate = text[pos:pos + length]
        if candidate not in lexicons.emoticons:
            continue
        if candidate[0].isalnum() and pos > 0 and text[pos - 1].isalnum():
            continue
        stop = pos + length
        if candidate[-1].isalnum() and stop < end and text[stop].isalnum():
            continue
        return stop
    return None


def _match_contraction(text: str, pos: int, end: int, lexicons: Lexicons) -> Optional[int]:
    """Longest apostrophe form at pos found in the contraction lexicon; 'dont' never qualifies."""
    found = _APOSTROPHE_WORD_RE.match(text, pos, end)
    if found is None:
        return None
    candidate = found.group()
    cuts = [len(candidate)] + [i for i in range(len(candidate) - 1, 0, -1) if candidate[i] in _APOSTROPHES]
    for cut in cuts:
        piece = candidate[:cut]
        if not any(ch in _APOSTROPHES for ch in piece):
            break
        if lexicons.is_contraction(piece):
            return pos + cut
    return None


def _match_at(text: str, pos: int, end: int, lexicons: Lexicons) -> Optional[Tuple[int, TokenKind]]:
    """Applies the precedence URL > MENTION > HASHTAG > EMOTICON > CONTRACTION > NUMBER > WORD."""
    if _URL_RE.match(text, pos, end):
        return end, TokenKind.URL
    for pattern, kind in ((_MENTION_RE, TokenKind.MENTION), (_HASHTAG_RE, TokenKind.HASHTAG)):
        found = pattern.match(text, pos, end)
        if found:
            return found.end(), kind
    stop = _match_emoticon(text, pos, end, lexicons)
    if stop is not None:
        return stop, TokenKind.EMOTICON
    stop = _match_contraction(text, pos, end, lexicons)
    if stop is not None:
        return stop, TokenKind.CONTRACTION
    for pattern, kind in ((_NUMBER_RE, TokenKind.NUMBER), (_WORD_RE, TokenKind.WORD)):
        found = pattern.match(text, pos, end)
        if found:
            return found.end(), kind
    return None


def _byte_offsets(text: str) -> List[int]:
    """UTF-8 byte offset of every code-point position, plus the end of the text."""
    return [0, *accumulate(len(ch.encode("utf-8")) for ch in text)]


def tokenize(text: str, lexicons: Lexicons) -> List[Token]:
    """Splits a tweet into classified tokens.

    Whitespace only delimits. Inside each whitespace-free chunk the scanner takes the
    highest-precedence match at the current position; characters no rule claims are
    gathered into PUNCT runs. Every non-whitespace character ends up in exactly one token.
    Spans are UTF-8 byte offsets into the tweet.
    """
    offsets = _byte_offsets(text)
    tokens: List[Token] = []

    def emit(start: int, stop: int, kind: TokenKind) -> None:
        tokens.append(Token(text=text[start:stop], kind=kind, span=(offsets[start], offsets[stop])))

    for chunk in _CHUNK_RE.finditer(text):
        pos, end = chunk.start(), chunk.end()
        punct_start = None
        while pos < end:
            matched = _match_at(text, pos, end, lexicons)
            if matched is None:
                if punct_start is None:
                    punct_start = pos
                pos += 1
                continue
            if punct_start is not None:
                emit(punct_start, pos, TokenKind.PUNCT)
                punct_start = None
            stop, kind = matched
            emit(pos, stop, kind)
            pos = stop
        if punct_start is not None:
            emit(punct_start, end, TokenKind.PUNCT)
    return tokens
