"""Identifier/comment preprocessing and TF-IDF term weights."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from nltk.stem.porter import PorterStemmer

from . import stopwords
from .errors import DegenerateVocabularyError

_NON_WORD = re.compile(r"[^A-Za-z0-9]+")
# acronym before a capitalised word, capitalised/lower word, trailing acronym, digit run
_PIECES = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")

_stemmer = PorterStemmer()


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    """Porter stem, re-applied until it stops changing.

    One Porter pass is not idempotent (``compose`` -> ``compos`` -> ``compo``);
    iterating makes every emitted term a fixed point of the stemmer.
    """
    while True:
        shorter = _stemmer.stem(word)
        if shorter == word:
            return word
        word = shorter


def split_words(text: str) -> List[str]:
    """Split on whitespace/punctuation/underscores, then camelCase and digit boundaries.

    >>> split_words("CamelCase")
    ['Camel', 'Case']
    >>> split_words("parseHTTPResponse_v2")
    ['parse', 'HTTP', 'Response', 'v', '2']
    """
    out = []
    for chunk in _NON_WORD.split(text):
        if chunk:
            out.extend(_PIECES.findall(chunk))
    return out


def load_stoplist(path: Optional[Path] = None) -> FrozenSet[str]:
    """Built-in stop list, extended with one lowercase term per line from ``path``."""
    if path is None:
        return stopwords.DEFAULT
    extra = {line.strip().lower() for line in Path(path).read_text(encoding="utf-8").splitlines()}
    extra.discard("")
    return stopwords.DEFAULT | frozenset(extra)


def preprocess(raw_items: Iterable[str], stoplist: FrozenSet[str] = stopwords.DEFAULT) -> Counter:
    """Raw identifiers and comments to a multiset of stemmed terms.

    Pure digit runs and single letters are dropped as noise, before and after
    stemming. The stop list is also applied on both sides of the stemmer, so
    no stop word survives in either form.
    """
    terms: Counter = Counter()
    for item in raw_items:
        for piece in split_words(item):
            word = piece.lower()
            if len(word) < 2 or word.isdigit() or word in stoplist:
                continue
            term = stem(word)
            if len(term) >= 2 and term not in stoplist:
                terms[term] += 1
    return terms


@dataclass(frozen=True)
class TokenDocument:
    class_id: int
    tokens: Counter


def class_documents(facts, stoplist: FrozenSet[str] = stopwords.DEFAULT) -> List[TokenDocument]:
    return [
        TokenDocument(c.id, preprocess(list(c.identifiers) + list(c.comments), stoplist))
        for c in facts.classes
    ]


@dataclass(frozen=True, eq=False)
class TfIdfMatrix:
    terms: Tuple[str, ...]
    weights: np.ndarray
    df: np.ndarray

    @property
    def vocabulary(self) -> Dict[str, int]:
        return {t: k for k, t in enumerate(self.terms)}

    @property
    def n_vocab(self) -> int:
        return len(self.terms)


def build_tfidf(documents: Sequence[TokenDocument]) -> TfIdfMatrix:
    """Raw term count times smoothed idf, ``ln((1 + N) / (1 + df)) + 1``; rows unnormalised.

    Rows follow ``class_id`` order and terms are sorted lexicographically.
    """
    docs = sorted(documents, key=lambda d: d.class_id)
    terms = tuple(sorted({t for d in docs for t, c in d.tokens.items() if c > 0}))
    if not terms:
        raise DegenerateVocabularyError("every class document is empty after preprocessing; no vocabulary")
    column = {t: k for k, t in enumerate(terms)}
    tf = np.zeros((len(docs), len(terms)), dtype=float)
    for row, doc in enumerate(docs):
        for t, c in doc.tokens.items():
            if c > 0:
                tf[row, column[t]] = c
    df = (tf > 0).sum(axis=0)
    n = len(docs)
    idf = np.log((1.0 + n) / (1.0 + df)) + 1.0
    weights = tf * idf
    weights.setflags(write=False)
    df.setflags(write=False)
    return TfIdfMatrix(terms=terms, weights=weights, df=df)
