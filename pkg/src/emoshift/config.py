"""Run configuration: presets, resource paths, flat config files.

Four named presets cover the selection/retrieval combinations the
library is built around:

* ``Bf+WN``: brute-force selection, lexical-database retrieval
* ``At+WN``: salient selection (k=2, p=2), lexical-database retrieval
* ``At+Un``: salient selection (k=2, p=2), plain embedding retrieval
  with u=150 candidates
* ``At+In``: salient selection (k=3, p=2), emotion-informed retrieval
  with u=100 neighbours filtered to v=25

Resource files are declared in a RunConfig, either programmatically or
via a flat ``key = value`` text file; ``load_resources`` turns the
declaration into the loaded bundle the pipeline consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .embeddings import load_centroids, load_embeddings
from .emolex import LexiconScorer, build_centroids, load_nrc
from .emotions import EMOTIONS
from .errors import DataError, ResourceError
from .ngram import load_model, train
from .pipeline import PipelineConfig, Resources
from .scoring import ObjectiveWeights, load_linear_scorer, train_linear_scorer
from .text import POSLexicon, tokenize
from .wndb import load_wndb

PRESETS = {
    "Bf+WN": dict(selection="brute_force", k=1, p=1, retrieval="wordnet"),
    "At+WN": dict(selection="salient", k=2, p=2, retrieval="wordnet"),
    "At+Un": dict(selection="salient", k=2, p=2, retrieval="uninformed", u=150),
    "At+In": dict(selection="salient", k=3, p=2, retrieval="informed", u=100, v=25),
}

PRESET_ORDER = ("Bf+WN", "At+WN", "At+Un", "At+In")

_PRESET_ALIASES = {name.lower().replace("+", ""): name for name in PRESETS}
_PRESET_ALIASES["custom"] = "custom"


def canonical_preset(name: str) -> str:
    key = name.strip().lower().replace("+", "").replace("-", "").replace("_", "")
    if key not in _PRESET_ALIASES:
        raise DataError(
            f"unknown preset {name!r}; expected one of "
            f"{', '.join(PRESET_ORDER)} or custom"
        )
    return _PRESET_ALIASES[key]


@dataclass(frozen=True)
class RunConfig:
    """Resource paths plus run parameters for the CLI and the harness."""

    embeddings: str | None = None
    wndb: str | None = None
    nrc: str | None = None
    centroids: str | None = None
    lm: str | None = None
    lm_corpus: str | None = None
    lm_order: int = 3
    lm_k: float = 0.01
    scorer: str | None = None
    scorer_corpus: str | None = None
    pos_lexicon: str | None = None
    preset: str = "At+In"
    selection: str = "salient"
    k: int = 2
    p: int = 2
    retrieval: str = "wordnet"
    u: int = 150
    v: int = 25
    weights: ObjectiveWeights = field(default_factory=ObjectiveWeights)
    targets: tuple[str, ...] = EMOTIONS
    out: str | None = None
    top_n: int = 10
    max_variations: int = 50_000
    include_identity: bool = True
    tagged: bool = False
    deterministic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "preset", canonical_preset(self.preset))
        for t in self.targets:
            if t not in EMOTIONS:
                raise DataError(f"unknown target emotion {t!r}")
        if not self.deterministic:
            raise DataError("non-deterministic mode is not supported")

    def pipeline_config(self, weights: ObjectiveWeights | None = None) -> PipelineConfig:
        """Expand the preset (or custom fields) into a PipelineConfig."""
        if self.preset == "custom":
            params = dict(
                selection=self.selection, k=self.k, p=self.p,
                retrieval=self.retrieval, u=self.u, v=self.v,
            )
        else:
            params = dict(PRESETS[self.preset])
        return PipelineConfig(
            weights=weights if weights is not None else self.weights,
            max_variations=self.max_variations,
            include_identity=self.include_identity,
            **{k: v for k, v in params.items()},
        )

    def with_preset(self, preset: str) -> "RunConfig":
        return replace(self, preset=canonical_preset(preset))


_BOOL_KEYS = {"include_identity", "tagged", "deterministic"}
_INT_KEYS = {"lm_order", "k", "p", "u", "v", "top_n", "max_variations"}
_FLOAT_KEYS = {"lm_k"}


def parse_config_file(path) -> dict:
    """Read a flat ``key = value`` file into a mapping.

    Blank lines and ``#`` comments are skipped. Values keep their raw
    string form except for known integer, float and boolean keys.
    """
    mapping: dict = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ResourceError(f"cannot open config file: {exc}", path=path)
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ResourceError(
                    "expected 'key = value'", path=path, line=lineno
                )
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            try:
                mapping[key] = _coerce_value(key, value)
            except (ValueError, DataError) as exc:
                raise ResourceError(str(exc), path=path, line=lineno)
    return mapping


def _coerce_value(key: str, value: str):
    if key in _BOOL_KEYS:
        lowered = value.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"cannot parse boolean from {value!r}")
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    if key in ("lambda", "weights"):
        return ObjectiveWeights.parse(value)
    if key == "targets":
        return tuple(t.strip() for t in value.split(",") if t.strip())
    return value


def config_from_mapping(mapping: dict) -> RunConfig:
    mapping = dict(mapping)
    if "lambda" in mapping:
        mapping["weights"] = mapping.pop("lambda")
    known = set(RunConfig.__dataclass_fields__)
    unknown = sorted(set(mapping) - known)
    if unknown:
        raise DataError(f"unknown config key(s): {', '.join(unknown)}")
    return RunConfig(**mapping)


def load_run_config(path) -> RunConfig:
    return config_from_mapping(parse_config_file(path))


def load_labeled_corpus(path):
    """Parse an ``emotion<TAB>text`` training corpus for the scorer."""
    examples = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ResourceError(f"cannot open labeled corpus: {exc}", path=path)
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            emotion, sep, text = line.partition("\t")
            emotion = emotion.strip().lower()
            if not sep or emotion not in EMOTIONS or not text.strip():
                raise ResourceError(
                    "expected 'emotion<TAB>text'", path=path, line=lineno
                )
            examples.append((tokenize(text).surfaces, emotion))
    if not examples:
        raise ResourceError("labeled corpus is empty", path=path)
    return examples


def load_resources(config: RunConfig) -> Resources:
    """Load every resource the configured run needs.

    Raises ResourceError with a named cause when a required resource is
    not declared or fails to load.
    """
    if not config.embeddings:
        raise ResourceError("no embedding file configured (key: embeddings)")
    store = load_embeddings(config.embeddings)

    lexicon = load_nrc(config.nrc) if config.nrc else None

    pipeline = config.pipeline_config()
    db = None
    if pipeline.retrieval == "wordnet" or config.wndb:
        if not config.wndb:
            raise ResourceError(
                f"preset {config.preset} needs a lexical database "
                "(key: wndb)"
            )
        db = load_wndb(config.wndb)

    centroids = None
    if config.centroids:
        centroids = load_centroids(config.centroids)
    elif pipeline.retrieval == "informed" or lexicon is not None:
        if lexicon is None:
            raise ResourceError(
                f"preset {config.preset} needs an emotion lexicon "
                "(key: nrc) or exported centroids (key: centroids)"
            )
        centroids = build_centroids(lexicon, store)

    if config.lm:
        lm = load_model(config.lm)
    elif config.lm_corpus:
        lm = train(config.lm_corpus, order=config.lm_order, k=config.lm_k)
    else:
        raise ResourceError(
            "no language model configured (key: lm or lm_corpus)"
        )

    if config.scorer:
        scorer = load_linear_scorer(config.scorer, store)
    elif config.scorer_corpus:
        scorer = train_linear_scorer(load_labeled_corpus(config.scorer_corpus), store)
    elif lexicon is not None:
        scorer = LexiconScorer(lexicon)
    else:
        raise ResourceError(
            "no emotion scorer configured (key: scorer, scorer_corpus, "
            "or nrc for the lexicon fallback)"
        )

    pos_lexicon = POSLexicon.load(config.pos_lexicon) if config.pos_lexicon else None

    return Resources(
        store=store, lm=lm, scorer=scorer, db=db,
        centroids=centroids, pos_lexicon=pos_lexicon,
    )
