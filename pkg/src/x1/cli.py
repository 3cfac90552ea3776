"""Command-line surface: step1/step2 pipelines, eval harness, guard, replay.

Configuration precedence is flags > config file > defaults. Every artifact
a subcommand writes is stamped with the manifest's run id, and a manifest
JSON is written next to the outputs so a run can be replayed bit-for-bit
against recorded fixtures.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Sequence

from . import step1, step2
from .datasets import (
    file_sha256,
    question_from_json,
    question_to_json,
    read_jsonl,
    write_jsonl,
)
from .domain import DatasetSource
from .errors import GatewayError, X1Error
from .gateway import Gateway
from .guard import DEFAULT_BLOCK_SIZE, truncate_text
from .harness import (
    aggregate_metrics,
    read_samples,
    run_benchmark,
    write_metric_tables,
    write_samples,
)
from .languages import TRANSLATION_TARGETS, canonical_language
from .manifest import RunManifest, endpoint_from_json
from .metrics import (
    benefit_harm,
    mean_at_k,
    mixing_benefit_report,
    native_thinking_rate,
    spearman_correlation,
    win_tie_lose,
)
from .step1 import HeuristicScorer, PluginScorer, SeedTrace

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ENDPOINT = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 64, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _load_manifest(args: argparse.Namespace, command: Sequence[str]) -> RunManifest:
    """flags > config file > defaults."""
    manifest = RunManifest(command=list(command))
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
        manifest = RunManifest.from_json(cfg)
        manifest.command = list(command)
    if getattr(args, "seed", None) is not None:
        manifest.seed = args.seed
    if getattr(args, "guard_block", None) is not None:
        manifest.guard_block = args.guard_block
    if getattr(args, "threshold", None) is not None:
        manifest.quality_threshold = args.threshold
    if getattr(args, "parallelism", None) is not None:
        manifest.parallelism = args.parallelism
    if getattr(args, "endpoint", None):
        with open(args.endpoint, encoding="utf-8") as fh:
            data = json.load(fh)
        for name, ep in data.get("endpoints", data).items():
            manifest.endpoints[name] = endpoint_from_json(ep)
    return manifest


def _gateway(manifest: RunManifest, record_to: str | None = None) -> Gateway:
    return Gateway(guard_block=manifest.guard_block, record_to=record_to)


def _require_endpoint(manifest: RunManifest, name: str):
    if name not in manifest.endpoints:
        raise X1Error(f"config defines no {name!r} endpoint")
    return manifest.endpoints[name]


def _stamp_manifest(manifest: RunManifest, out: str | Path, *datasets: str | Path) -> None:
    for path in datasets:
        manifest.dataset_hashes[str(path)] = file_sha256(path)
    out = Path(out)
    target = out / "manifest.json" if out.is_dir() else out.with_suffix(out.suffix + ".manifest.json")
    manifest.save(target)


# --- step1 ----------------------------------------------------------------


def _cmd_step1_collect(args, argv) -> int:
    manifest = _load_manifest(args, argv)
    backbone = _require_endpoint(manifest, "backbone")
    source = DatasetSource(name=args.source_name, path=args.questions)
    from .datasets import load_dataset

    questions = load_dataset(source)
    if args.limit:
        questions = questions[: args.limit]
    seeds = step1.collect_seed_traces(
        backbone, questions, _gateway(manifest), manifest.parallelism, manifest.seed
    )
    write_jsonl(args.out, (
        {"question": question_to_json(s.question), "trace": s.trace, "answer": s.answer,
         "meta": {"run_id": manifest.run_id}}
        for s in seeds
    ))
    _stamp_manifest(manifest, args.out, args.questions)
    print(f"collected {len(seeds)} seed traces -> {args.out}")
    return EXIT_OK


def _read_seeds(path: str) -> list[SeedTrace]:
    return [
        SeedTrace(question=question_from_json(row["question"]), trace=row["trace"], answer=row["answer"])
        for row in read_jsonl(path)
    ]


def _cmd_step1_translate(args, argv) -> int:
    manifest = _load_manifest(args, argv)
    backbone = _require_endpoint(manifest, "backbone")
    seeds = _read_seeds(args.seeds)
    targets = (
        [canonical_language(t.strip()) for t in args.targets.split(",")]
        if args.targets else list(TRANSLATION_TARGETS)
    )
    cands = step1.translate_traces(
        backbone, seeds, targets, _gateway(manifest), manifest.parallelism, manifest.seed
    )
    write_jsonl(args.out, (
        {"seed_id": c.seed_id, "target": c.target.name, "text": c.text,
         "meta": {"run_id": manifest.run_id}}
        for c in cands
    ))
    _stamp_manifest(manifest, args.out, args.seeds)
    print(f"translated {len(cands)} candidates -> {args.out}")
    return EXIT_OK


def _read_candidates(path: str) -> list[step1.TranslatedTrace]:
    return [
        step1.TranslatedTrace(
            seed_id=row["seed_id"],
            target=canonical_language(row["target"]),
            text=row["text"],
            quality=row.get("quality"),
            kept=bool(row.get("kept", False)),
        )
        for row in read_jsonl(path)
    ]


def _cmd_step1_filter(args, argv) -> int:
    manifest = _load_manifest(args, argv)
    cands = _read_candidates(getattr(args, "in"))
    seeds = _read_seeds(args.seeds)
    scorer = PluginScorer(args.scorer_cmd.split()) if args.scorer == "plugin" else HeuristicScorer()
    try:
        scored = step1.filter_quality(cands, scorer, manifest.quality_threshold, seeds)
    finally:
        if isinstance(scorer, PluginScorer):
            scorer.close()
    write_jsonl(args.out, (
        {"seed_id": c.seed_id, "target": c.target.name, "text": c.text,
         "quality": c.quality, "kept": c.kept, "meta": {"run_id": manifest.run_id}}
        for c in scored
    ))
    kept = sum(c.kept for c in scored)
    _stamp_manifest(manifest, args.out, getattr(args, "in"))
    print(f"kept {kept}/{len(scored)} at threshold {manifest.quality_threshold} -> {args.out}")
    return EXIT_OK


def _cmd_step1_emit(args, argv) -> int:
    manifest = _load_manifest(args, argv)
    scored = _read_candidates(getattr(args, "in"))
    seeds = _read_seeds(args.seeds)
    summary = step1.emit_step1_dataset(
        scored, seeds, args.out, run_id=manifest.run_id, audit=args.audit
    )
    _stamp_manifest(manifest, args.out, getattr(args, "in"))
    print(f"emitted {summary.total} records ({summary.discarded} discarded) -> {args.out}")
    return EXIT_OK


# --- step2 ----------------------------------------------------------------


def _cmd_step2_pair(args, argv) -> int:
    manifest = _load_manifest(args, argv)
    backbone = _require_endpoint(manifest, "backbone")
    surface = _require_endpoint(manifest, "surface")
    source = DatasetSource(name=args.source_name, path=args.questions, scenario=args.scenario)
    from .datasets import load_dataset

    questions = load_dataset(source)
    if args.limit:
        questions = questions[: args.limit]
    gateway = _gateway(manifest)
    pivot = canonical_language(args.fallback_pivot) if args.fallback_pivot else None
    rows = []
    skipped = 0
    last_gateway_error: GatewayError | None = None
    for q in questions:
        try:
            pair = step2.generate_pair(backbone, surface, q, gateway, manifest.seed, pivot)
        except X1Error as exc:
            if isinstance(exc, GatewayError):
                last_gateway_error = exc
            log.warning("pair %s skipped: %s", q.id, exc)
            skipped += 1
            continue
        rows.append({**step2.pair_to_json(pair), "meta": {"run_id": manifest.run_id}})
    if not rows and last_gateway_error is not None:
        raise last_gateway_error  # nothing but endpoint failures: exit 2, not "success"
    write_jsonl(args.out, rows)
    _stamp_manifest(manifest, args.out, args.questions)
    print(f"paired {len(rows)} questions ({skipped} skipped) -> {args.out}")
    return EXIT_OK


def _cmd_step2_judge(args, argv) -> int:
    manifest = _load_manifest(args, argv)
    gateway = _gateway(manifest)
    judge = manifest.endpoints.get("judge")
    rows = []
    for row in read_jsonl(args.pairs):
        pair = step2.pair_from_json(row)
        scoring = args.scoring or pair.question.scenario
        verdict = step2.identify_advantageous(pair, scoring, judge, gateway, manifest.seed)
        rows.append({**step2.verdict_to_json(verdict), "meta": {"run_id": manifest.run_id}})
    write_jsonl(args.out, rows)
    _stamp_manifest(manifest, args.out, args.pairs)
    print(f"judged {len(rows)} pairs -> {args.out}")
    return EXIT_OK


def _cmd_step2_emit(args, argv) -> int:
    manifest = _load_manifest(args, argv)
    verdicts = [step2.verdict_from_json(row) for row in read_jsonl(getattr(args, "in"))]
    summary = step2.emit_step2_datasets(
        verdicts, args.out, run_id=manifest.run_id, awareness_ratio=args.awareness_ratio
    )
    _stamp_manifest(manifest, args.out, getattr(args, "in"))
    print(
        f"emitted {summary.total} wins ({summary.discarded} ties discarded) -> "
        f"{Path(args.out) / 'step2_sft.jsonl'}"
    )
    return EXIT_OK


# --- eval -------------------------------------------------------------------


def _cmd_eval_run(args, argv) -> int:
    manifest = _load_manifest(args, argv)
    endpoint = _require_endpoint(manifest, args.endpoint_name)
    source = DatasetSource(name=args.source_name, path=args.source, scenario=args.scenario)
    results = run_benchmark(
        endpoint, source, runs=args.runs, gateway=_gateway(manifest),
        base_seed=manifest.seed, parallelism=manifest.parallelism,
    )
    run_dir = Path(args.out) / manifest.run_id
    write_samples(results, run_dir / "samples.jsonl")
    metrics = aggregate_metrics(results)
    metrics["run_id"] = manifest.run_id
    with open(run_dir / "metrics.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(metrics, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")
    write_metric_tables(metrics, run_dir / "tables")
    _stamp_manifest(manifest, run_dir, args.source)
    print(f"{len(results)} samples -> {run_dir}")
    return EXIT_OK


def _cmd_eval_aggregate(args, argv) -> int:
    manifest = _load_manifest(args, argv)
    results = read_samples(args.results)
    metrics = aggregate_metrics(results)
    metrics["run_id"] = manifest.run_id
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "metrics.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(metrics, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")
    write_metric_tables(metrics, out / "tables")
    print(f"metrics -> {out / 'metrics.json'}")
    return EXIT_OK


def _cmd_eval_analyze(args, argv) -> int:
    base = read_samples(args.base)
    alt = read_samples(args.alt)
    if args.metric == "wtl":
        rates = win_tie_lose(base, alt)
        report: dict[str, Any] = {
            "win": rates.win, "tie_correct": rates.tie_correct,
            "tie_incorrect": rates.tie_incorrect, "lose": rates.lose,
        }
    elif args.metric == "benefit":
        b = benefit_harm(base, alt)
        report = {"benefit_rate": b.benefit_rate, "harm_rate": b.harm_rate, "net_benefit": b.net_benefit}
    elif args.metric == "mixing":
        m = mixing_benefit_report(base, alt)
        report = {
            bucket: {**asdict(getattr(m, bucket)), "net_benefit": getattr(m, bucket).net_benefit}
            for bucket in ("increased", "decreased", "unchanged")
        }
    elif args.metric == "native-freq":
        # native-thinking frequency (alt) vs. base accuracy, per language subset
        base_table = mean_at_k(base)
        by_lang: dict[str, list] = {}
        for r in alt:
            lang = r.language
            by_lang.setdefault(lang.name if lang else "unknown", []).append(r)
        rows = {
            name: {
                "native_thinking_rate": native_thinking_rate(rs),
                "base_accuracy": base_table.per_language.get(name),
            }
            for name, rs in sorted(by_lang.items())
            if base_table.per_language.get(name) is not None
        }
        report = {"per_language": rows}
        if len(rows) >= 2:
            report["spearman"] = spearman_correlation(
                [v["native_thinking_rate"] for v in rows.values()],
                [v["base_accuracy"] for v in rows.values()],
            )
    else:  # pragma: no cover - argparse choices guard this
        raise X1Error(f"unknown metric {args.metric}")
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK


# --- guard / replay ------------------------------------------------------------


def _cmd_guard(args, argv) -> int:
    text = Path(getattr(args, "in")).read_text(encoding="utf-8") if getattr(args, "in") else sys.stdin.read()
    kept, truncated = truncate_text(text, args.prompt_len, args.block_size)
    if args.out:
        Path(args.out).write_text(kept, encoding="utf-8")
    else:
        sys.stdout.write(kept)
        if not kept.endswith("\n"):
            sys.stdout.write("\n")
    report = {
        "kept_chars": len(kept),
        "input_chars": len(text),
        "truncated": truncated,
        "block_size": args.block_size,
    }
    print(json.dumps(report, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def _cmd_replay(args, argv) -> int:
    manifest = RunManifest.load(args.manifest)
    if not manifest.command:
        raise X1Error("manifest records no command to replay")
    log.info("replaying: %s", " ".join(manifest.command))
    return main(manifest.command)


# --- wiring ----------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="run config JSON (a saved manifest)")
    p.add_argument("--endpoint", help="endpoints JSON file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--guard-block", type=int, default=None, dest="guard_block")
    p.add_argument("--parallelism", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="x1", description="Adaptive multilingual reasoning data pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    s1 = sub.add_parser("step1", help="surface-reasoner dataset pipeline")
    s1sub = s1.add_subparsers(dest="subcommand", required=True)

    p = s1sub.add_parser("collect", help="collect seed traces from the backbone")
    _add_common(p)
    p.add_argument("--questions", required=True)
    p.add_argument("--source-name", default="custom")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_step1_collect)

    p = s1sub.add_parser("translate", help="self-translate seed traces")
    _add_common(p)
    p.add_argument("--seeds", required=True)
    p.add_argument("--targets", help="comma-separated language tags (default: the 30 targets)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_step1_translate)

    p = s1sub.add_parser("filter", help="quality-gate translations")
    _add_common(p)
    p.add_argument("--in", required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--scorer", choices=["heuristic", "plugin"], default="heuristic")
    p.add_argument("--scorer-cmd", help="plugin scorer command line")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_step1_filter)

    p = s1sub.add_parser("emit", help="emit the step-1 SFT dataset")
    _add_common(p)
    p.add_argument("--in", required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--audit", help="JSONL for discarded translations")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_step1_emit)

    s2 = sub.add_parser("step2", help="adaptive-reasoner dataset pipeline")
    s2sub = s2.add_subparsers(dest="subcommand", required=True)

    p = s2sub.add_parser("pair", help="generate default/contrast trajectory pairs")
    _add_common(p)
    p.add_argument("--questions", required=True)
    p.add_argument("--source-name", default="custom")
    p.add_argument("--scenario", choices=["math", "culture"], default=None)
    p.add_argument("--fallback-pivot", help="pivot for English-prompt math items")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_step2_pair)

    p = s2sub.add_parser("judge", help="score pairs and pick winners")
    _add_common(p)
    p.add_argument("--pairs", required=True)
    p.add_argument("--scoring", choices=["math", "culture"], default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_step2_judge)

    p = s2sub.add_parser("emit", help="emit SFT + awareness + DPO files")
    _add_common(p)
    p.add_argument("--in", required=True)
    p.add_argument("--awareness-ratio", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_step2_emit)

    ev = sub.add_parser("eval", help="benchmark harness")
    evsub = ev.add_subparsers(dest="subcommand", required=True)

    p = evsub.add_parser("run", help="run a benchmark")
    _add_common(p)
    p.add_argument("--source", required=True)
    p.add_argument("--source-name", default="custom")
    p.add_argument("--scenario", choices=["math", "culture"], default=None)
    p.add_argument("--endpoint-name", default="backbone")
    p.add_argument("--runs", type=int, default=3)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_eval_run)

    p = evsub.add_parser("aggregate", help="recompute metrics from samples")
    _add_common(p)
    p.add_argument("--results", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_eval_aggregate)

    p = evsub.add_parser("analyze", help="compare two sample files")
    p.add_argument("--metric", choices=["wtl", "benefit", "mixing", "native-freq"], required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--alt", required=True)
    p.set_defaults(func=_cmd_eval_analyze)

    p = sub.add_parser("guard", help="repetition-truncate a text stream")
    p.add_argument("--block-size", type=int, default=DEFAULT_BLOCK_SIZE)
    p.add_argument("--prompt-len", type=int, default=0)
    p.add_argument("--in", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_guard)

    p = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=_cmd_replay)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except GatewayError as exc:
        print(f"endpoint failure: {exc}", file=sys.stderr)
        return EXIT_ENDPOINT
    except (X1Error, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
