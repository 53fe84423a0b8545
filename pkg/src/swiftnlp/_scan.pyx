# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled single-pass scanner: a hand-written character automaton.

Behaviour is pinned to ``_refscan``; tests assert identical output.
"""

import unicodedata

cdef extern from "Python.h":
    int PyUnicode_KIND(object o)
    void* PyUnicode_DATA(object o)
    Py_UCS4 PyUnicode_READ(int kind, void* data, Py_ssize_t index)
    bint Py_UNICODE_ISSPACE(Py_UCS4 ch)
    bint Py_UNICODE_ISALNUM(Py_UCS4 ch)
    bint Py_UNICODE_ISALPHA(Py_UCS4 ch)

cdef enum:
    K_WORD = 0
    K_NUMBER = 1
    K_PUNCT = 2
    K_SYMBOL = 3
    K_CONTRACTION = 4
    K_ABBREVIATION = 5

cdef dict _MARKS = {}
cdef unicode _PUNCT_CHARS = u".,;:!?'\"`()[]{}-‘’“”„…"
cdef dict _MXPOST = {u"(": u"-LRB-", u")": u"-RRB-", u"[": u"-LSB-",
                     u"]": u"-RSB-", u"{": u"-LCB-", u"}": u"-RCB-"}
cdef frozenset _CLOSERS = frozenset([u"''", u"'", u")", u"]", u"}",
                                     u"-RRB-", u"-RSB-", u"-RCB-"])
cdef unicode OPEN2 = u"``"
cdef unicode CLOSE2 = u"''"
cdef unicode BTICK = u"`"
cdef unicode APOS = u"'"
cdef unicode ELLIPSIS = u"..."
cdef unicode PERIOD = u"."


cdef bint _is_mark(Py_UCS4 c):
    cached = _MARKS.get(c)
    if cached is None:
        cached = unicodedata.category(chr(c))[0] == u"M"
        _MARKS[c] = cached
    return cached


cdef inline bint is_word(Py_UCS4 c):
    if c < 128:
        return (c >= 48 and c <= 57) or (c >= 65 and c <= 90) or (c >= 97 and c <= 122)
    if Py_UNICODE_ISALNUM(c):
        return True
    return _is_mark(c)


cdef inline bint is_digit(Py_UCS4 c):
    return c >= 48 and c <= 57


cdef inline bint is_apos(Py_UCS4 c):
    return c == 39 or c == 0x2019


cdef inline bint is_opener(Py_UCS4 c):
    return c == 40 or c == 91 or c == 123 or c == 60


cdef Py_ssize_t suffix_len(int kind, void* data, Py_ssize_t n, Py_ssize_t j):
    """Letters in a contraction suffix ('s 'm 'd 're 've 'll) after the apostrophe at j."""
    cdef Py_UCS4 a, b
    cdef Py_ssize_t L
    if j + 1 >= n:
        return 0
    a = PyUnicode_READ(kind, data, j + 1)
    if a == 115 or a == 83 or a == 109 or a == 77 or a == 100 or a == 68:
        L = 1
    elif j + 2 < n:
        b = PyUnicode_READ(kind, data, j + 2)
        if (((a == 114 or a == 82) and (b == 101 or b == 69))
                or ((a == 118 or a == 86) and (b == 101 or b == 69))
                or ((a == 108 or a == 76) and (b == 108 or b == 76))):
            L = 2
        else:
            return 0
    else:
        return 0
    if j + 1 + L < n and is_word(PyUnicode_READ(kind, data, j + 1 + L)):
        return 0
    return L


cdef bint nt_at(int kind, void* data, Py_ssize_t n, Py_ssize_t j):
    """Apostrophe at j closes an n't contraction (j-1 is an n, j+1 a t)."""
    cdef Py_UCS4 c
    if j < 1 or j + 1 >= n:
        return False
    c = PyUnicode_READ(kind, data, j - 1)
    if c != 110 and c != 78:
        return False
    c = PyUnicode_READ(kind, data, j + 1)
    if c != 116 and c != 84:
        return False
    return j + 2 == n or not is_word(PyUnicode_READ(kind, data, j + 2))


cpdef bint is_acronym(unicode tok):
    cdef Py_ssize_t n = len(tok), k
    if n < 2 or n % 2:
        return False
    for k in range(0, n, 2):
        if not Py_UNICODE_ISALPHA(tok[k]) or tok[k + 1] != u".":
            return False
    return True


cdef bint is_number(unicode chunk):
    cdef Py_UCS4 c = chunk[0]
    if not (is_digit(c) or c == 46):
        return False
    for c in chunk:
        if not (is_digit(c) or c == 46 or c == 44 or c == 58 or c == 47 or c == 45):
            return False
    return True


cdef class _Out:
    cdef list texts, starts, ends, kinds
    cdef bint spans

    def __cinit__(self, bint spans):
        self.texts = []
        self.spans = spans
        if spans:
            self.starts = []
            self.ends = []
            self.kinds = []

    cdef inline void emit(self, unicode tok, Py_ssize_t s, Py_ssize_t e, int k):
        self.texts.append(tok)
        if self.spans:
            self.starts.append(s)
            self.ends.append(e)
            self.kinds.append(k)


def scan(unicode text, abbreviations, bint mxpost=False,
         bint split_contractions=True, bint spans=False):
    """Tokenize ``text``; returns ``(texts, starts, ends, kinds)``."""
    cdef Py_ssize_t n = len(text)
    cdef Py_ssize_t i = 0, j, r
    cdef int kind = PyUnicode_KIND(text)
    cdef void* data = PyUnicode_DATA(text)
    cdef Py_UCS4 c, c2, prev
    cdef bint opening
    cdef unicode chunk, cand, tok
    cdef _Out out = _Out(spans)

    while i < n:
        c = PyUnicode_READ(kind, data, i)
        if c < 128:
            if c == 32 or (c >= 9 and c <= 13) or (c >= 28 and c <= 31):
                i += 1
                continue
        elif Py_UNICODE_ISSPACE(c):
            i += 1
            continue

        if is_word(c) or (c == 46 and i + 1 < n and is_digit(PyUnicode_READ(kind, data, i + 1))):
            # word/number chunk with internal joiners
            j = i + 1
            while j < n:
                c2 = PyUnicode_READ(kind, data, j)
                if is_word(c2):
                    j += 1
                    continue
                if j + 1 >= n or not is_word(PyUnicode_READ(kind, data, j + 1)):
                    break
                if c2 == 45 or c2 == 38 or c2 == 47 or c2 == 46:
                    j += 1
                elif (c2 == 44 or c2 == 58) and is_digit(PyUnicode_READ(kind, data, j - 1)) \
                        and is_digit(PyUnicode_READ(kind, data, j + 1)):
                    j += 1
                elif is_apos(c2):
                    if split_contractions and (suffix_len(kind, data, n, j) or nt_at(kind, data, n, j)):
                        break
                    j += 1
                else:
                    break
            chunk = text[i:j]
            if split_contractions and j + 1 < n and is_apos(PyUnicode_READ(kind, data, j)) \
                    and nt_at(kind, data, n, j):
                if j - i > 1:
                    out.emit(text[i:j - 1], i, j - 1, K_WORD)
                out.emit(text[j - 1] + APOS + text[j + 1], j - 1, j + 2, K_CONTRACTION)
                i = j + 2
                continue
            if j < n and PyUnicode_READ(kind, data, j) == 46 and not (
                    j + 1 < n and PyUnicode_READ(kind, data, j + 1) == 46):
                cand = text[i:j + 1]
                if cand in abbreviations or is_acronym(cand):
                    out.emit(cand, i, j + 1, K_ABBREVIATION)
                    i = j + 1
                    continue
            out.emit(chunk, i, j, K_NUMBER if is_number(chunk) else K_WORD)
            i = j
            continue

        if c == 46 or c == 45 or c == 63 or c == 33:
            # runs: ..., --, ?!
            j = i + 1
            if c == 63 or c == 33:
                while j < n:
                    c2 = PyUnicode_READ(kind, data, j)
                    if c2 != 63 and c2 != 33:
                        break
                    j += 1
            else:
                while j < n and PyUnicode_READ(kind, data, j) == c:
                    j += 1
            out.emit(text[i:j], i, j, K_PUNCT)
            i = j
            continue

        if c == 96 and i + 1 < n and PyUnicode_READ(kind, data, i + 1) == 96:
            out.emit(OPEN2, i, i + 2, K_PUNCT)
            i += 2
            continue

        if is_apos(c) and split_contractions:
            r = suffix_len(kind, data, n, i)
            if r:
                out.emit(APOS + text[i + 1:i + 1 + r], i, i + 1 + r, K_CONTRACTION)
                i += 1 + r
                continue

        if c == 39 and i + 1 < n and PyUnicode_READ(kind, data, i + 1) == 39:
            out.emit(CLOSE2, i, i + 2, K_PUNCT)
            i += 2
            continue

        if i == 0:
            opening = True
        else:
            prev = PyUnicode_READ(kind, data, i - 1)
            opening = Py_UNICODE_ISSPACE(prev) or is_opener(prev)
        if c == 34:
            out.emit(OPEN2 if opening else CLOSE2, i, i + 1, K_PUNCT)
        elif c == 39:
            if opening and i + 1 < n and not Py_UNICODE_ISSPACE(PyUnicode_READ(kind, data, i + 1)):
                out.emit(BTICK, i, i + 1, K_PUNCT)
            else:
                out.emit(APOS, i, i + 1, K_PUNCT)
        elif c == 0x201C or c == 0x201E:
            out.emit(OPEN2, i, i + 1, K_PUNCT)
        elif c == 0x201D:
            out.emit(CLOSE2, i, i + 1, K_PUNCT)
        elif c == 0x2018:
            out.emit(BTICK, i, i + 1, K_PUNCT)
        elif c == 0x2019:
            out.emit(APOS, i, i + 1, K_PUNCT)
        elif c == 0x2026:
            out.emit(ELLIPSIS, i, i + 1, K_PUNCT)
        else:
            tok = text[i:i + 1]
            if mxpost and tok in _MXPOST:
                out.emit(_MXPOST[tok], i, i + 1, K_PUNCT)
            else:
                out.emit(tok, i, i + 1, K_PUNCT if tok in _PUNCT_CHARS else K_SYMBOL)
        i += 1

    if spans:
        return out.texts, out.starts, out.ends, out.kinds
    return out.texts, None, None, None


cdef inline bint is_bang(unicode tok):
    cdef Py_UCS4 c
    if len(tok) == 0:
        return False
    for c in tok:
        if c != 63 and c != 33:
            return False
    return True


def boundaries(list texts, abbreviations):
    """Exclusive end index of every sentence in a token-text list."""
    cdef list out = []
    cdef Py_ssize_t n = len(texts), k = 0
    cdef unicode tok, prev
    cdef bint term
    while k < n:
        tok = <unicode>texts[k]
        term = False
        if len(tok) == 1:
            if tok == PERIOD:
                term = True
                if k > 0:
                    prev = <unicode>texts[k - 1]
                    if prev in abbreviations or (prev + PERIOD) in abbreviations or is_acronym(prev):
                        term = False
            else:
                term = is_bang(tok)
        elif len(tok) > 1 and (tok[0] == u"?" or tok[0] == u"!"):
            term = is_bang(tok)
        k += 1
        if term:
            while k < n:
                tok = <unicode>texts[k]
                if tok == PERIOD or is_bang(tok) or tok in _CLOSERS:
                    k += 1
                else:
                    break
            out.append(k)
    if n and (not out or out[len(out) - 1] != n):
        out.append(n)
    return out
