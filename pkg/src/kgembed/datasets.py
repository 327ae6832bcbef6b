"""Triple dataset loading, description corpora, and corruption statistics.

Triple files are the standard tab-separated `head relation tail` format
distributed with the FB15k / WN18 dataset family. Ids are dense and
assigned in first-seen order over train, then valid, then test, so
reloading a dataset is deterministic.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

Triple = tuple[int, int, int]

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric characters."""
    return _TOKEN_RE.findall(text.lower())


@dataclass
class KnowledgeGraph:
    entity_count: int
    relation_count: int
    train: list[Triple]
    valid: list[Triple]
    test: list[Triple]
    entity_names: list[str]
    relation_names: list[str]
    entity_ids: dict[str, int]
    relation_ids: dict[str, int]
    unseen_entities: int = 0  # entities first seen outside train
    unseen_relations: int = 0
    _known: set[int] = field(default_factory=set, repr=False)
    _tails_of: dict = field(default=None, repr=False)
    _heads_of: dict = field(default=None, repr=False)

    def _key(self, h: int, r: int, t: int) -> int:
        return (h * self.relation_count + r) * self.entity_count + t

    def has_triple(self, h: int, r: int, t: int) -> bool:
        return self._key(h, r, t) in self._known

    @property
    def known_count(self) -> int:
        return len(self._known)

    def _build_filters(self):
        tails, heads = {}, {}
        for split in (self.train, self.valid, self.test):
            for h, r, t in split:
                tails.setdefault((h, r), []).append(t)
                heads.setdefault((r, t), []).append(h)
        self._tails_of = {k: np.array(v, dtype=np.int64) for k, v in tails.items()}
        self._heads_of = {k: np.array(v, dtype=np.int64) for k, v in heads.items()}

    def known_tails(self, h: int, r: int) -> np.ndarray:
        """All tails t with (h, r, t) in any split."""
        if self._tails_of is None:
            self._build_filters()
        return self._tails_of.get((h, r), np.empty(0, dtype=np.int64))

    def known_heads(self, r: int, t: int) -> np.ndarray:
        if self._heads_of is None:
            self._build_filters()
        return self._heads_of.get((r, t), np.empty(0, dtype=np.int64))

    def split(self, name: str) -> list[Triple]:
        try:
            return {"train": self.train, "valid": self.valid, "test": self.test}[name]
        except KeyError:
            raise DataError(f"unknown split: {name}") from None


def _read_triple_file(path: str) -> list[tuple[str, str, str]]:
    rows = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise DataError(f"{path}:{lineno}: expected 3 tab-separated fields")
            rows.append((parts[0], parts[1], parts[2]))
    return rows


def load_dataset(path: str) -> KnowledgeGraph:
    """Load train/valid/test triples from a dataset directory."""
    files = {}
    for split in ("train", "valid", "test"):
        for candidate in (f"{split}.txt", split):
            p = os.path.join(path, candidate)
            if os.path.isfile(p):
                files[split] = p
                break
        else:
            raise DataError(f"missing {split} file in {path}")

    ent_ids: dict[str, int] = {}
    rel_ids: dict[str, int] = {}
    splits: dict[str, list[Triple]] = {}
    unseen_entities = unseen_relations = 0

    for split in ("train", "valid", "test"):
        triples = []
        for h, r, t in _read_triple_file(files[split]):
            for surface in (h, t):
                if surface not in ent_ids:
                    ent_ids[surface] = len(ent_ids)
                    if split != "train":
                        unseen_entities += 1
            if r not in rel_ids:
                rel_ids[r] = len(rel_ids)
                if split != "train":
                    unseen_relations += 1
            triples.append((ent_ids[h], rel_ids[r], ent_ids[t]))
        splits[split] = triples

    train_set = set(splits["train"])
    valid_set = set(splits["valid"])
    test_set = set(splits["test"])
    if train_set & valid_set or train_set & test_set or valid_set & test_set:
        raise DataError(f"splits in {path} are not disjoint")

    ent_names = [""] * len(ent_ids)
    for name, i in ent_ids.items():
        ent_names[i] = name
    rel_names = [""] * len(rel_ids)
    for name, i in rel_ids.items():
        rel_names[i] = name

    kg = KnowledgeGraph(
        entity_count=len(ent_ids),
        relation_count=len(rel_ids),
        train=splits["train"],
        valid=splits["valid"],
        test=splits["test"],
        entity_names=ent_names,
        relation_names=rel_names,
        entity_ids=ent_ids,
        relation_ids=rel_ids,
        unseen_entities=unseen_entities,
        unseen_relations=unseen_relations,
    )
    for h, r, t in kg.train + kg.valid + kg.test:
        kg._known.add(kg._key(h, r, t))
    expected = len(kg.train) + len(kg.valid) + len(kg.test)
    if kg.known_count != expected:
        raise DataError(
            f"duplicate triples within a split in {path}: "
            f"{expected - kg.known_count} repeats")
    return kg


@dataclass
class DescriptionCorpus:
    """Per-entity description tokens (D_e) and name tokens (M_e)."""

    desc_tokens: list[list[str]]
    name_tokens: list[list[str]]
    skipped_unknown: int = 0  # file lines whose surface id is not in the KG
    missing: int = 0  # entities without a description line

    def __len__(self):
        return len(self.desc_tokens)


def load_descriptions(path: str | None, kg: KnowledgeGraph) -> DescriptionCorpus:
    """Read an `entity_surface<TAB>text` file into a corpus.

    Every entity gets an entry; entities absent from the file carry an
    empty token sequence. path=None yields an all-empty corpus (neighbor
    extraction then degrades to topological-only).
    """
    desc = [[] for _ in range(kg.entity_count)]
    skipped = 0
    seen = np.zeros(kg.entity_count, dtype=bool)
    if path is not None:
        try:
            f = open(path, encoding="utf-8")
        except OSError as e:
            raise DataError(f"cannot open description file {path}: {e}") from e
        with f:
            for line in f:
                line = line.rstrip("\n")
                if not line:
                    continue
                surface, _, text = line.partition("\t")
                idx = kg.entity_ids.get(surface)
                if idx is None:
                    skipped += 1
                    continue
                desc[idx] = tokenize(text)
                seen[idx] = True
    names = [tokenize(name) for name in kg.entity_names]
    missing = int(kg.entity_count - seen.sum()) if path is not None else kg.entity_count
    return DescriptionCorpus(desc_tokens=desc, name_tokens=names,
                             skipped_unknown=skipped, missing=missing)


@dataclass
class CorruptionStats:
    """Per-relation head/tail replacement statistics from the train split."""

    tph: np.ndarray  # mean tails per head
    hpt: np.ndarray  # mean heads per tail
    replace_head_prob: np.ndarray


def corruption_stats(kg: KnowledgeGraph) -> CorruptionStats:
    """tph = |triples with r| / |distinct heads under r|, hpt analogous."""
    if not kg.train:
        raise DataError("train split is empty")
    counts = np.zeros(kg.relation_count)
    heads = [set() for _ in range(kg.relation_count)]
    tails = [set() for _ in range(kg.relation_count)]
    for h, r, t in kg.train:
        counts[r] += 1
        heads[r].add(h)
        tails[r].add(t)
    tph = np.zeros(kg.relation_count)
    hpt = np.zeros(kg.relation_count)
    prob = np.full(kg.relation_count, 0.5)  # relations absent from train
    for r in range(kg.relation_count):
        if counts[r] == 0:
            continue
        tph[r] = counts[r] / len(heads[r])
        hpt[r] = counts[r] / len(tails[r])
        prob[r] = tph[r] / (tph[r] + hpt[r])
    return CorruptionStats(tph=tph, hpt=hpt, replace_head_prob=prob)
