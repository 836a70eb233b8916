"""Batch evaluation, best-worst-scaling packaging, and rank agreement.

The automatic evaluation transfers every corpus sentence to every
configured target emotion using only the emotion term of the objective,
then aggregates the best variation's target-emotion probability into
per-emotion means and an overall mean per configuration.

The human-evaluation side packages one output per configuration into
anonymized four-item tuples for best-worst annotation, aggregates the
annotations into (#best - #worst) / appearances scores, and measures
inter-annotator agreement with Spearman rank correlation. Target
emotions for the tuples are assigned round-robin rather than randomly,
a documented deviation that keeps every artifact reproducible.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .config import PRESET_ORDER, RunConfig, load_resources
from .emotions import EMOTION_ABBREV, EMOTIONS
from .errors import DataError, EmoshiftError, ResourceError
from .pipeline import Resources, Variation, transfer
from .scoring import EMO_ONLY
from .text import parse_tagged

log = logging.getLogger(__name__)

# The bundled challenge suite: six sentences typed by how they express
# an internal state (Ex: explicit mention, BR: bodily reaction,
# Ap: event appraisal).
CHALLENGE_SENTENCES = (
    ("1", "i am happy", "Ex"),
    ("2", "i am sad", "Ex"),
    ("3", "tears are running over my face", "BR"),
    ("4", "i was trembling", "BR"),
    ("5", "my son was standing close to the street", "Ap"),
    ("6", "my grandmother died", "Ap"),
)


def variation_record(
    input_text: str, target: str, preset: str, variation: Variation
) -> dict:
    """The line-delimited record for one scored variation."""
    scores = variation.scores
    return {
        "input": input_text,
        "target": target,
        "preset": preset,
        "output": variation.text,
        "emo": scores.emo,
        "sim": scores.sim,
        "flu": scores.flu,
        "total": scores.total,
        "substitutions": [
            {"position": pos, "original": orig, "replacement": repl}
            for pos, (orig, repl) in sorted(variation.substitutions.items())
        ],
    }


def dump_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True)


def read_corpus(path, tagged: bool = False):
    """Sentences from a one-per-line text file (optionally pre-tagged)."""
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ResourceError(f"cannot open corpus: {exc}", path=path)
    with fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise ResourceError("corpus is empty", path=path)
    if tagged:
        return [parse_tagged(line) for line in lines]
    return lines


@dataclass
class EvalReport:
    """Per-configuration, per-target-emotion aggregate scores."""

    targets: tuple[str, ...]
    means: dict[str, dict[str, float]] = field(default_factory=dict)
    input_means: dict[str, dict[str, float]] = field(default_factory=dict)
    overall: dict[str, float] = field(default_factory=dict)
    failures: dict[str, int] = field(default_factory=dict)
    no_candidates: dict[str, int] = field(default_factory=dict)

    def add_configuration(self, name, per_emotion, per_emotion_input,
                          failures, no_candidates):
        self.means[name] = dict(per_emotion)
        self.input_means[name] = dict(per_emotion_input)
        self.overall[name] = sum(per_emotion.values()) / len(per_emotion)
        self.failures[name] = failures
        self.no_candidates[name] = no_candidates

    def merge(self, other: "EvalReport") -> "EvalReport":
        if other.targets != self.targets:
            raise DataError("cannot merge reports over different targets")
        for name in other.means:
            self.means[name] = other.means[name]
            self.input_means[name] = other.input_means[name]
            self.overall[name] = other.overall[name]
            self.failures[name] = other.failures[name]
            self.no_candidates[name] = other.no_candidates[name]
        return self

    def to_tsv(self) -> str:
        """One row per configuration, one column per emotion plus m."""
        header = ["configuration"] + [EMOTION_ABBREV[e] for e in self.targets] + ["m"]
        lines = ["\t".join(header)]
        ordered = [n for n in PRESET_ORDER if n in self.means]
        ordered += [n for n in self.means if n not in PRESET_ORDER]
        for name in ordered:
            cells = [name]
            cells += [f"{self.means[name][e]:.4f}" for e in self.targets]
            cells.append(f"{self.overall[name]:.4f}")
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"


def evaluate_batch(
    corpus_path,
    config: RunConfig,
    resources: Resources | None = None,
    out_fh=None,
) -> EvalReport:
    """Transfer every corpus sentence to every target, emotion-only.

    The objective is forced to the emotion term alone, mirroring an
    automatic evaluation that measures transfer potential. Per-item
    records are streamed to ``out_fh`` (or the config's output path)
    as they are produced; per-sentence failures are logged, counted,
    and excluded from the means.
    """
    if resources is None:
        resources = load_resources(config)
    sentences = read_corpus(corpus_path, tagged=config.tagged)
    targets = tuple(config.targets)
    if not targets:
        raise DataError("no target emotions configured")
    pipeline = config.pipeline_config(weights=EMO_ONLY)

    owns_fh = False
    if out_fh is None and config.out:
        out_fh = open(config.out, "w", encoding="utf-8")
        owns_fh = True
    try:
        # fsum keeps the means exactly invariant under corpus reordering
        scores = {e: [] for e in targets}
        input_scores = {e: [] for e in targets}
        failures = 0
        no_candidates = 0
        for sentence in sentences:
            for target in targets:
                try:
                    result = transfer(sentence, target, pipeline, resources)
                except EmoshiftError as exc:
                    text = sentence if isinstance(sentence, str) else sentence.text
                    log.warning("skipping %r -> %s: %s", text, target, exc)
                    failures += 1
                    continue
                if result.n_generated == 0:
                    no_candidates += 1
                if result.best is None:
                    continue
                scores[target].append(result.best.scores.emo)
                input_scores[target].append(result.input_scores.emo)
                if out_fh is not None:
                    text = sentence if isinstance(sentence, str) else sentence.text
                    record = variation_record(text, target, config.preset,
                                              result.best)
                    out_fh.write(dump_record(record) + "\n")
        missing = [e for e in targets if not scores[e]]
        if missing:
            raise DataError(
                f"no sentence could be evaluated for target(s): "
                f"{', '.join(missing)}"
            )
        per_emotion = {e: math.fsum(scores[e]) / len(scores[e]) for e in targets}
        per_emotion_input = {
            e: math.fsum(input_scores[e]) / len(input_scores[e]) for e in targets
        }
    finally:
        if owns_fh:
            out_fh.close()
    report = EvalReport(targets=targets)
    report.add_configuration(
        config.preset, per_emotion, per_emotion_input, failures, no_candidates
    )
    return report


def round_robin_targets(n: int) -> list[str]:
    """Deterministic target assignment for n annotation items."""
    return [EMOTIONS[i % len(EMOTIONS)] for i in range(n)]


@dataclass(frozen=True)
class BWSTuple:
    """One annotation item: four outputs behind pseudonymous keys."""

    input: str
    target: str
    items: dict[str, str]
    configs: dict[str, str]

    def __post_init__(self):
        if set(self.items) != set(self.configs):
            raise DataError("item keys and config keys differ")
        if len(self.items) != 4:
            raise DataError("a tuple must hold exactly four items")


@dataclass
class BWSResult:
    dimension: str
    scores: dict[str, float]
    best_counts: dict[str, int]
    worst_counts: dict[str, int]
    appearances: dict[str, int]


def pseudonym_keys(config_names) -> dict[str, str]:
    """Stable pseudonymous key per configuration (sorted order)."""
    return {name: f"sys{i + 1}" for i, name in enumerate(sorted(config_names))}


def bws_pack(inputs, outputs_by_config: dict, n_items: int) -> list[BWSTuple]:
    """Package per-configuration outputs into annotation tuples.

    ``outputs_by_config`` maps each of exactly four configuration names
    to a list of output texts aligned with ``inputs``; entry i of every
    list must answer input i for the round-robin target of item i.
    Raises DataError on a missing or None output (incomplete quadruple).
    """
    names = sorted(outputs_by_config)
    if len(names) != 4:
        raise DataError(
            f"best-worst packaging needs exactly 4 configurations, "
            f"got {len(names)}"
        )
    inputs = list(inputs)
    if n_items > len(inputs):
        raise DataError(
            f"asked for {n_items} items but only {len(inputs)} inputs given"
        )
    keys = pseudonym_keys(names)
    targets = round_robin_targets(n_items)
    tuples = []
    for i in range(n_items):
        items = {}
        for name in names:
            outputs = outputs_by_config[name]
            if i >= len(outputs) or outputs[i] is None:
                raise DataError(
                    f"incomplete quadruple at item {i}: configuration "
                    f"{name!r} has no output"
                )
            items[keys[name]] = outputs[i]
        tuples.append(
            BWSTuple(
                input=inputs[i] if isinstance(inputs[i], str) else inputs[i].text,
                target=targets[i],
                items=items,
                configs={keys[name]: name for name in names},
            )
        )
    return tuples


def bws_score(tuples, annotations, dimension: str = "emotion") -> BWSResult:
    """Aggregate best/worst picks into per-configuration scores.

    ``annotations`` is a sequence of (best_key, worst_key) pairs aligned
    with ``tuples``. The score of a configuration is
    (#best - #worst) / #appearances, in [-1, 1].
    """
    tuples = list(tuples)
    annotations = list(annotations)
    if len(annotations) != len(tuples):
        raise DataError(
            f"{len(tuples)} tuples but {len(annotations)} annotations"
        )
    if not tuples:
        raise DataError("nothing to score")
    best_counts: dict[str, int] = {}
    worst_counts: dict[str, int] = {}
    appearances: dict[str, int] = {}
    for tup, (best, worst) in zip(tuples, annotations):
        if best == worst:
            raise DataError(f"best and worst are both {best!r}")
        for key in (best, worst):
            if key not in tup.items:
                raise DataError(f"annotation references unknown key {key!r}")
        for key, name in tup.configs.items():
            appearances[name] = appearances.get(name, 0) + 1
        best_counts[tup.configs[best]] = best_counts.get(tup.configs[best], 0) + 1
        worst_counts[tup.configs[worst]] = worst_counts.get(tup.configs[worst], 0) + 1
    scores = {
        name: (best_counts.get(name, 0) - worst_counts.get(name, 0)) / n
        for name, n in appearances.items()
    }
    return BWSResult(
        dimension=dimension,
        scores=scores,
        best_counts={n: best_counts.get(n, 0) for n in appearances},
        worst_counts={n: worst_counts.get(n, 0) for n in appearances},
        appearances=appearances,
    )


def spearman(ranking_a, ranking_b) -> float:
    """Spearman rank correlation with average-rank tie handling."""
    a = np.asarray(list(ranking_a), dtype=np.float64)
    b = np.asarray(list(ranking_b), dtype=np.float64)
    if a.shape != b.shape:
        raise DataError(
            f"rankings differ in length: {a.shape[0]} vs {b.shape[0]}"
        )
    if a.shape[0] < 2:
        raise DataError("need at least two values per ranking")
    if np.all(a == a[0]) or np.all(b == b[0]):
        raise DataError("correlation undefined for a constant ranking")
    rho = stats.spearmanr(a, b)[0]
    return float(rho)


@dataclass
class ChallengeRow:
    id: str
    kind: str
    input: str
    target: str
    output: str | None
    scores: object = None
    error: str | None = None


@dataclass
class ChallengeReport:
    rows: list[ChallengeRow]

    def to_text(self) -> str:
        lines = []
        header = f"{'ID':<3} {'Type':<4} {'Target':<9} Output"
        lines.append(header)
        lines.append("-" * len(header))
        last_id = None
        for row in self.rows:
            if row.id != last_id:
                if last_id is not None:
                    lines.append("")
                lines.append(f"{row.id:<3} {row.kind:<4} {'input':<9} {row.input}")
                last_id = row.id
            if row.error is not None:
                body = f"<failed: {row.error}>"
            else:
                body = row.output
                if row.scores is not None:
                    body += (
                        f"   [emo={row.scores.emo:.3f} sim={row.scores.sim:.3f}"
                        f" flu={row.scores.flu:.3f} total={row.scores.total:.3f}]"
                    )
            lines.append(f"{'':<3} {'':<4} {row.target:<9} {body}")
        return "\n".join(lines) + "\n"


def run_challenge_suite(
    config: RunConfig, resources: Resources | None = None
) -> ChallengeReport:
    """Transfer the six bundled challenge sentences to all six targets.

    Always yields 36 rows; a row carries either the best output with
    its score breakdown or the error that prevented the transfer.
    """
    if resources is None:
        resources = load_resources(config)
    pipeline = config.pipeline_config()
    rows = []
    for sid, text, kind in CHALLENGE_SENTENCES:
        for target in EMOTIONS:
            try:
                result = transfer(text, target, pipeline, resources)
                best = result.best
                if best is None:
                    rows.append(ChallengeRow(sid, kind, text, target, None,
                                             error="no candidates"))
                else:
                    rows.append(ChallengeRow(sid, kind, text, target,
                                             best.text, best.scores))
            except EmoshiftError as exc:
                rows.append(ChallengeRow(sid, kind, text, target, None,
                                         error=str(exc)))
    return ChallengeReport(rows)
