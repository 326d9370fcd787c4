"""Synthetic multi-epoch citation corpora.

Epochs are independent cross-sections (fresh target pools each epoch,
matching the yearly-snapshot design), with three per-epoch dials:

* ``refs_per_source``: mean reference-list length (Poisson, min 1);
* ``cross_field_mixing``: probability a reference leaves the source's
  own category pool for a uniformly chosen other category;
* ``attachment_strength`` s: within a pool a target is drawn with
  weight 1 + s * degree, i.e. uniform at s = 0 and increasingly
  rich-get-richer as s grows.

The weight mixture is sampled in O(1): with probability
s*D / (P + s*D) copy the endpoint of a uniformly chosen earlier
citation in the pool (D citations so far, pool size P), else pick
uniformly.  Duplicate references are dropped rather than redrawn, so
realized list lengths can fall slightly below the Poisson draw.

The generated files are exactly the corpus TSV formats, so synthetic
data flows through the real pipeline unchanged.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass

from .corpus import CitationRecord, PaperRecord
from .errors import ConfigurationError
from .rng import derive_seed, generator


@dataclass(frozen=True)
class SynthConfig:
    epochs: int
    sources_per_epoch: int
    targets_pool: int  # pool size per category, fresh each epoch
    categories: int
    refs_per_source: tuple[float, ...]
    attachment_strength: tuple[float, ...]
    cross_field_mixing: tuple[float, ...]
    master_seed: int
    base_year: int = 2000

    def __post_init__(self):
        if self.epochs < 1:
            raise ConfigurationError("epochs must be >= 1")
        if self.sources_per_epoch < 1 or self.targets_pool < 1 or self.categories < 1:
            raise ConfigurationError("sources, pool size and categories must be >= 1")
        for name in ("refs_per_source", "attachment_strength", "cross_field_mixing"):
            value = tuple(float(v) for v in getattr(self, name))
            object.__setattr__(self, name, value)
            if len(value) != self.epochs:
                raise ConfigurationError(f"{name} must list one value per epoch")
        if any(r <= 0 for r in self.refs_per_source):
            raise ConfigurationError("refs_per_source means must be positive")
        if any(s < 0 for s in self.attachment_strength):
            raise ConfigurationError("attachment_strength must be >= 0")
        if any(not 0.0 <= m <= 1.0 for m in self.cross_field_mixing):
            raise ConfigurationError("cross_field_mixing must lie in [0, 1]")

    @classmethod
    def from_json(cls, path) -> "SynthConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        try:
            return cls(**raw)
        except TypeError as exc:
            raise ConfigurationError(f"{path}: {exc}") from None

    def to_dict(self) -> dict:
        return asdict(self)


def _category_label(c: int) -> str:
    return f"cat{c:02d}"


def generate_epoch(config: SynthConfig, epoch_index: int) -> tuple[list[PaperRecord], list[CitationRecord]]:
    """One epoch's papers and citations, deterministic under the seed."""
    if not 0 <= epoch_index < config.epochs:
        raise ConfigurationError(f"epoch_index {epoch_index} out of range")
    seed = derive_seed(config.master_seed, epoch_index)
    rng = random.Random(seed)
    ref_counts = generator(derive_seed(seed, 1)).poisson(
        config.refs_per_source[epoch_index], size=config.sources_per_epoch
    )
    mixing = config.cross_field_mixing[epoch_index]
    strength = config.attachment_strength[epoch_index]
    year = config.base_year + epoch_index
    k = config.categories
    pool_size = config.targets_pool

    # per-category growth state: total degree and the endpoint list used
    # for O(1) degree-proportional draws
    degree_total = [0] * k
    endpoints: list[list[int]] = [[] for _ in range(k)]

    papers: list[PaperRecord] = []
    citations: list[CitationRecord] = []
    seen_targets: dict[str, int] = {}  # target id -> category, insertion ordered

    for i in range(config.sources_per_epoch):
        source_id = f"e{epoch_index}s{i}"
        cat = rng.randrange(k)
        papers.append(PaperRecord(source_id, year, (_category_label(cat),)))
        refs: set[str] = set()
        for _ in range(max(1, int(ref_counts[i]))):
            if k > 1 and rng.random() < mixing:
                other = rng.randrange(k - 1)
                pool = other if other < cat else other + 1
            else:
                pool = cat
            weight_mass = strength * degree_total[pool]
            if weight_mass > 0 and rng.random() < weight_mass / (pool_size + weight_mass):
                local = endpoints[pool][rng.randrange(len(endpoints[pool]))]
            else:
                local = rng.randrange(pool_size)
            target_id = f"e{epoch_index}c{pool}t{local}"
            if target_id in refs:
                continue
            refs.add(target_id)
            citations.append(CitationRecord(source_id, target_id))
            degree_total[pool] += 1
            endpoints[pool].append(local)
            if target_id not in seen_targets:
                seen_targets[target_id] = pool

    for target_id, pool in seen_targets.items():
        papers.append(PaperRecord(target_id, year - 1, (_category_label(pool),)))
    return papers, citations


def generate_series(config: SynthConfig):
    """All epochs plus a manifest describing the run."""
    corpora = [generate_epoch(config, e) for e in range(config.epochs)]
    manifest = {
        "config": config.to_dict(),
        "epochs": [
            {
                "epoch": e,
                "year": config.base_year + e,
                "papers": len(papers),
                "citations": len(citations),
            }
            for e, (papers, citations) in enumerate(corpora)
        ],
    }
    return corpora, manifest
