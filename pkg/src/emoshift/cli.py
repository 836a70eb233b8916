"""Command-line interface.

Verbs:

* ``transfer``   rewrite one sentence towards a target emotion
* ``eval``       batch automatic evaluation over a corpus
* ``bws-pack``   package outputs into best-worst annotation tuples
* ``bws-score``  aggregate best-worst annotations
* ``spearman``   rank correlation between two score lists
* ``challenge``  run the bundled challenge-sentence suite

Exit codes: 0 success, 1 usage error, 2 resource error, 3 data error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import evaluate
from .config import (
    PRESET_ORDER,
    RunConfig,
    canonical_preset,
    config_from_mapping,
    load_resources,
    parse_config_file,
)
from .emotions import EMOTIONS
from .errors import DataError, EmoshiftError, ResourceError
from .pipeline import transfer
from .scoring import ObjectiveWeights
from .text import parse_tagged


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped onto exit code 1."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


_RESOURCE_KEYS = (
    "embeddings", "wndb", "nrc", "centroids", "lm", "lm_corpus",
    "scorer", "scorer_corpus", "pos_lexicon",
)


def _add_resource_args(parser):
    parser.add_argument("--config", help="flat key = value config file")
    for key in _RESOURCE_KEYS:
        parser.add_argument(f"--{key.replace('_', '-')}", dest=key,
                            help=f"path for the {key} resource")
    parser.add_argument("--preset", help="Bf+WN, At+WN, At+Un, At+In or custom")
    parser.add_argument("--lambda", dest="lambda_", metavar="E,S,F",
                        help="objective weights, e.g. 0.4,0.4,0.2")
    parser.add_argument("--max-variations", type=int, dest="max_variations")
    parser.add_argument("--no-identity", action="store_true",
                        help="exclude the unmodified sentence from the pool")
    parser.add_argument("--tagged", action="store_true",
                        help="input lines are token/TAG pairs")


def _build_config(args, **extra) -> RunConfig:
    mapping = {}
    if args.config:
        mapping.update(parse_config_file(args.config))
    for key in _RESOURCE_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            mapping[key] = value
    if getattr(args, "preset", None):
        mapping["preset"] = args.preset
    if getattr(args, "lambda_", None):
        mapping["weights"] = ObjectiveWeights.parse(args.lambda_)
    if getattr(args, "max_variations", None):
        mapping["max_variations"] = args.max_variations
    if getattr(args, "no_identity", False):
        mapping["include_identity"] = False
    if getattr(args, "tagged", False):
        mapping["tagged"] = True
    mapping.update(extra)
    return config_from_mapping(mapping)


def _emit(lines, out_path):
    text = "".join(line + "\n" for line in lines)
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_transfer(args) -> int:
    extra = {}
    if args.targets:
        extra["targets"] = tuple(t.strip() for t in args.targets.split(","))
    config = _build_config(args, **extra)
    resources = load_resources(config)
    pipeline = config.pipeline_config()
    raw = parse_tagged(args.text) if config.tagged else args.text
    lines = []
    for target in (config.targets if args.targets else (args.target,)):
        result = transfer(raw, target, pipeline, resources, top_n=args.top)
        if result.no_candidates:
            lines.append(evaluate.dump_record(
                {"input": result.sentence.text, "target": target,
                 "preset": config.preset, "no_candidates": True}
            ))
            continue
        for variation in result.variations:
            record = evaluate.variation_record(
                result.sentence.text, target, config.preset, variation
            )
            lines.append(evaluate.dump_record(record))
    _emit(lines, args.out)
    return 0


def _cmd_eval(args) -> int:
    config = _build_config(
        args,
        targets=tuple(t.strip() for t in args.targets.split(","))
        if args.targets else EMOTIONS,
    )
    presets = (
        [canonical_preset(p) for p in args.presets.split(",")]
        if args.presets else [config.preset]
    )
    report = None
    with open(args.out, "w", encoding="utf-8") as out_fh:
        for preset in presets:
            cfg = config.with_preset(preset)
            resources = load_resources(cfg)
            part = evaluate.evaluate_batch(args.corpus, cfg, resources,
                                           out_fh=out_fh)
            report = part if report is None else report.merge(part)
    sys.stdout.write(report.to_tsv())
    if args.table:
        with open(args.table, "w", encoding="utf-8") as fh:
            fh.write(report.to_tsv())
    return 0


def _cmd_bws_pack(args) -> int:
    config = _build_config(args)
    n = args.n
    inputs = evaluate.read_corpus(args.corpus, tagged=config.tagged)[:n]
    if len(inputs) < n:
        raise DataError(
            f"corpus has only {len(inputs)} usable lines, need {n}"
        )
    targets = evaluate.round_robin_targets(n)
    outputs_by_config = {}
    for preset in PRESET_ORDER:
        cfg = config.with_preset(preset)
        resources = load_resources(cfg)
        pipeline = cfg.pipeline_config()
        outputs = []
        for raw, target in zip(inputs, targets):
            result = transfer(raw, target, pipeline, resources, top_n=1)
            outputs.append(result.best.text if result.best else None)
        outputs_by_config[preset] = outputs
    tuples = evaluate.bws_pack(inputs, outputs_by_config, n)
    with open(args.out, "w", encoding="utf-8") as fh:
        for tup in tuples:
            fh.write(json.dumps(
                {"input": tup.input, "target": tup.target, "items": tup.items},
                sort_keys=True,
            ) + "\n")
    key_map = {key: name for key, name in tuples[0].configs.items()}
    with open(args.keys, "w", encoding="utf-8") as fh:
        json.dump(key_map, fh, sort_keys=True, indent=2)
        fh.write("\n")
    sys.stdout.write(f"wrote {len(tuples)} tuples to {args.out}\n")
    return 0


def _read_bws_tuples(tuples_path, keys_path):
    with open(keys_path, encoding="utf-8") as fh:
        key_map = json.load(fh)
    tuples = []
    with open(tuples_path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            raw = json.loads(line)
            tuples.append(evaluate.BWSTuple(
                input=raw["input"], target=raw["target"],
                items=raw["items"], configs=dict(key_map),
            ))
    return tuples


def _read_annotations(path):
    annotations = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) == 3:  # index, best, worst
                parts = parts[1:]
            if len(parts) != 2:
                raise DataError(
                    f"bad annotation line {lineno}: expected "
                    "'[index<TAB>]best<TAB>worst'"
                )
            annotations.append((parts[0], parts[1]))
    return annotations


def _cmd_bws_score(args) -> int:
    tuples = _read_bws_tuples(args.tuples, args.keys)
    annotations = _read_annotations(args.annotations)
    result = evaluate.bws_score(tuples, annotations, dimension=args.dimension)
    lines = [f"dimension\t{result.dimension}"]
    for name in sorted(result.scores):
        lines.append(
            f"{name}\tbest={result.best_counts[name]}"
            f"\tworst={result.worst_counts[name]}"
            f"\tappearances={result.appearances[name]}"
            f"\tscore={result.scores[name]:.4f}"
        )
    _emit(lines, args.out)
    return 0


def _cmd_spearman(args) -> int:
    def parse_values(text):
        try:
            return [float(x) for x in text.replace(",", " ").split()]
        except ValueError:
            raise DataError(f"cannot parse ranking values from {text!r}")

    rho = evaluate.spearman(parse_values(args.a), parse_values(args.b))
    sys.stdout.write(f"{rho:.6f}\n")
    return 0


def _cmd_challenge(args) -> int:
    config = _build_config(args)
    resources = load_resources(config)
    report = evaluate.run_challenge_suite(config, resources)
    sys.stdout.write(report.to_text())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_text())
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="emoshift",
                     description="Emotion style transfer by lexical substitution")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("transfer", parents=[], help="transfer one sentence")
    _add_resource_args(p)
    p.add_argument("--text", required=True, help="the input sentence")
    p.add_argument("--target", choices=EMOTIONS, help="target emotion")
    p.add_argument("--targets", help="comma-separated targets (overrides --target)")
    p.add_argument("--top", type=int, default=5, help="how many variations to report")
    p.add_argument("--out", help="also write records to this file")
    p.set_defaults(func=_cmd_transfer)

    p = sub.add_parser("eval", help="batch automatic evaluation")
    _add_resource_args(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--targets", help="comma-separated target emotions")
    p.add_argument("--presets", help="comma-separated configurations to compare")
    p.add_argument("--out", required=True, help="per-item records (JSONL)")
    p.add_argument("--table", help="also write the TSV summary here")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("bws-pack", help="package best-worst annotation tuples")
    _add_resource_args(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--n", type=int, required=True, help="number of tuples")
    p.add_argument("--out", required=True, help="annotator tuples (JSONL)")
    p.add_argument("--keys", required=True, help="key -> configuration map (JSON)")
    p.set_defaults(func=_cmd_bws_pack)

    p = sub.add_parser("bws-score", help="aggregate best-worst annotations")
    p.add_argument("--tuples", required=True)
    p.add_argument("--keys", required=True)
    p.add_argument("--annotations", required=True,
                   help="TSV: [index<TAB>]best_key<TAB>worst_key per tuple")
    p.add_argument("--dimension", choices=("emotion", "similarity"),
                   default="emotion")
    p.add_argument("--out", help="also write the result here")
    p.set_defaults(func=_cmd_bws_score)

    p = sub.add_parser("spearman", help="Spearman rank correlation")
    p.add_argument("--a", required=True, help="comma-separated values")
    p.add_argument("--b", required=True, help="comma-separated values")
    p.set_defaults(func=_cmd_spearman)

    p = sub.add_parser("challenge", help="run the challenge-sentence suite")
    _add_resource_args(p)
    p.add_argument("--out", help="also write the table here")
    p.set_defaults(func=_cmd_challenge)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_help()
            return 1
        if args.command == "transfer" and not (args.target or args.targets):
            raise _UsageError("transfer: --target or --targets is required")
        return args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2
    except (DataError, EmoshiftError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
