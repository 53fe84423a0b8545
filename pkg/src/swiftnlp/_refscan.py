"""Pure-Python scanner.

Regex-driven twin of the compiled ``_scan`` module. It is the fallback when
the extension is not built and the cross-check oracle for it in the tests;
both must produce identical output for every input string.
"""

from __future__ import annotations

import re
import sys
import unicodedata
from functools import lru_cache

WORD, NUMBER, PUNCT, SYMBOL, CONTRACTION, ABBREVIATION = range(6)

PUNCT_CHARS = frozenset(".,;:!?'\"`()[]{}-‘’“”„…")
OPENERS = frozenset("([{<")
CLOSERS = frozenset(["''", "'", ")", "]", "}", "-RRB-", "-RSB-", "-RCB-"])
MXPOST = {"(": "-LRB-", ")": "-RRB-", "[": "-LSB-", "]": "-RSB-", "{": "-LCB-", "}": "-RCB-"}
SINGLE_NORMAL = {
    "“": "``",
    "„": "``",
    "”": "''",
    "‘": "`",
    "’": "'",
    "…": "...",
}


@lru_cache(maxsize=1)
def _mark_class() -> str:
    """Character class body covering every combining mark (category M)."""
    ranges = []
    start = prev = None
    for cp in range(0x80, sys.maxunicode + 1):
        if unicodedata.category(chr(cp))[0] == "M":
            if start is None:
                start = prev = cp
            elif cp == prev + 1:
                prev = cp
            else:
                ranges.append((start, prev))
                start = prev = cp
    if start is not None:
        ranges.append((start, prev))
    return "".join(
        re.escape(chr(a)) if a == b else f"{re.escape(chr(a))}-{re.escape(chr(b))}"
        for a, b in ranges
    )


@lru_cache(maxsize=4)
def _master(split_contractions: bool) -> re.Pattern:
    w = rf"(?:[^\W_]|[{_mark_class()}])"
    suffix = rf"['’](?:[sSmMdD]|[rR][eE]|[vV][eE]|[lL][lL])(?!{w})"
    nt = rf"(?<=[nN])['’][tT](?!{w})"
    if split_contractions:
        apos_join = rf"(?!{suffix})(?!{nt})['’](?={w})"
    else:
        apos_join = rf"['’](?={w})"
    chunk = (
        rf"(?:\.(?=[0-9]))?{w}+"
        rf"(?:(?:[-&/.](?={w})|(?<=[0-9])[,:](?=[0-9])|{apos_join}){w}+)*"
    )
    parts = [
        rf"(?P<chunk>{chunk})",
        r"(?P<dots>\.{2,})",
        r"(?P<dashes>-{2,})",
        r"(?P<bang>[?!]+)",
        r"(?P<btick>``)",
    ]
    if split_contractions:
        parts.append(rf"(?P<suffix>{suffix})")
    parts += [
        r"(?P<dapos>'')",
        r"(?P<char>\S)",
    ]
    return re.compile("|".join(parts), re.DOTALL)


def is_acronym(tok: str) -> bool:
    """True for letters each followed by a period: ``U.S.``, ``e.g.``, ``F.``."""
    n = len(tok)
    if n < 2 or n % 2:
        return False
    for k in range(0, n, 2):
        if not tok[k].isalpha() or tok[k + 1] != ".":
            return False
    return True


def _is_word_char(c: str) -> bool:
    return c.isalnum() or (c >= "\x80" and unicodedata.category(c)[0] == "M")


def _is_number(chunk: str) -> bool:
    if not (chunk[0].isdigit() and chunk[0] < "\x80" or chunk[0] == "."):
        return False
    return all(("0" <= c <= "9") or c in ".,:/-" for c in chunk)


def scan(text: str, abbreviations, mxpost: bool = False,
         split_contractions: bool = True, spans: bool = False):
    """Tokenize ``text``; returns ``(texts, starts, ends, kinds)``.

    ``starts``/``ends``/``kinds`` are ``None`` unless ``spans`` is set.
    """
    texts: list[str] = []
    starts: list[int] | None = [] if spans else None
    ends: list[int] | None = [] if spans else None
    kinds: list[int] | None = [] if spans else None

    def emit(tok, s, e, k):
        texts.append(tok)
        if spans:
            starts.append(s)
            ends.append(e)
            kinds.append(k)

    n = len(text)
    pattern = _master(split_contractions)
    pos = 0
    while True:
        m = pattern.search(text, pos)
        if m is None:
            break
        i, j = m.span()
        group = m.lastgroup
        if group == "chunk":
            chunk = m.group()
            if (split_contractions and chunk[-1] in "nN" and j + 1 < n
                    and text[j] in "'’" and text[j + 1] in "tT"
                    and (j + 2 == n or not _is_word_char(text[j + 2]))):
                if len(chunk) > 1:
                    emit(chunk[:-1], i, j - 1, WORD)
                emit(text[j - 1] + "'" + text[j + 1], j - 1, j + 2, CONTRACTION)
                pos = j + 2
                continue
            if j < n and text[j] == "." and not (j + 1 < n and text[j + 1] == "."):
                cand = chunk + "."
                if cand in abbreviations or is_acronym(cand):
                    emit(cand, i, j + 1, ABBREVIATION)
                    pos = j + 1
                    continue
            emit(chunk, i, j, NUMBER if _is_number(chunk) else WORD)
        elif group == "suffix":
            emit("'" + m.group()[1:], i, j, CONTRACTION)
        elif group in ("dots", "dashes", "bang", "btick", "dapos"):
            emit(m.group(), i, j, PUNCT)
        else:
            c = m.group()
            opening = i == 0 or text[i - 1].isspace() or text[i - 1] in OPENERS
            if c == '"':
                emit("``" if opening else "''", i, j, PUNCT)
            elif c == "'":
                closing = not opening or j == n or text[j].isspace()
                emit("'" if closing else "`", i, j, PUNCT)
            elif c in SINGLE_NORMAL:
                emit(SINGLE_NORMAL[c], i, j, PUNCT)
            elif mxpost and c in MXPOST:
                emit(MXPOST[c], i, j, PUNCT)
            else:
                emit(c, i, j, PUNCT if c in PUNCT_CHARS else SYMBOL)
        pos = j
    return texts, starts, ends, kinds


def _is_bang(tok: str) -> bool:
    return bool(tok) and tok.strip("?!") == ""


def boundaries(texts: list[str], abbreviations) -> list[int]:
    """Exclusive end index of every sentence in a token-text list."""
    out: list[int] = []
    n = len(texts)
    k = 0
    while k < n:
        tok = texts[k]
        term = _is_bang(tok)
        if tok == "." and not term:
            term = True
            if k > 0:
                prev = texts[k - 1]
                if prev in abbreviations or prev + "." in abbreviations or is_acronym(prev):
                    term = False
        k += 1
        if term:
            while k < n and (texts[k] == "." or _is_bang(texts[k]) or texts[k] in CLOSERS):
                k += 1
            out.append(k)
    if n and (not out or out[-1] != n):
        out.append(n)
    return out
