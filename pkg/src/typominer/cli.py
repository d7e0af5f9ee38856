"""Pipeline subcommands over JSONL streams.

Every stage is file-to-file and deterministic; each run that writes files
also writes a `<output>.manifest.json` recording inputs, resolved config,
and in/out counts (the manifest carries the only volatile fields, so data
files are byte-stable across reruns).

Exit codes: 0 success, 1 usage, 2 data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import glob
import hashlib
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from . import charlm, classifier, langid
from .align import frequency_table, render_atom_text
from .corpus import (
    CATEGORIES,
    CommitRecord,
    Edit,
    EditSide,
    ParseError,
    ParseWarnings,
    ValidationError,
    nfc,
    parse_commit,
    parse_utc,
    serialize_commit,
)
from .harvest import (
    EligibilityConfig,
    HarvestStats,
    harvest,
    read_repo_list,
    write_repo_list,
)
from .extract import (
    ExtractConfig,
    ExtractStats,
    GitError,
    discover_repos,
    extract_repo,
    open_repo,
)
from .features import MissingModelError, featurize, featurize_with_models
from .metrics import corpus_stats, precision_recall_fbeta, score_system

log = logging.getLogger(__name__)

class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--workers", type=int, default=1, help="worker threads for per-edit stages")
    parser.add_argument("--seed", type=int, default=0, help="seed for seeded operations")
    parser.add_argument("--config", type=str, default=None, help="key=value config file; flags win")
    parser.add_argument("--quiet", action="store_true", help="only warnings and errors on stderr")


def build_parser() -> tuple[_Parser, argparse._SubParsersAction]:
    parser = _Parser(prog="typominer", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("harvest", help="filter an event dump down to eligible repositories")
    p.add_argument("--dump", nargs="+", required=True, help="event-dump .jsonl files or globs")
    p.add_argument("--out", required=True)
    p.add_argument("--min-stars", type=int, default=50)
    p.add_argument("--min-size-bytes", type=int, default=1_000_000)
    p.add_argument("--max-size-bytes", type=int, default=1_000_000_000)
    p.add_argument("--license", action="append", default=None,
                   help="allowed license id (repeatable); default: the permissive set")
    p.add_argument("--window-start", type=str, default=None)
    p.add_argument("--window-end", type=str, default=None)
    p.add_argument("--event-kind", action="append", default=None,
                   help="required event kind (repeatable)")
    _add_common(p)

    p = sub.add_parser("extract", help="mine typo commits from repositories or diff sets")
    p.add_argument("--repos", default=None,
                   help="directory of repositories, one repository, or a file listing paths")
    p.add_argument("--diff-dir", default=None, help="directory of diff-set repositories")
    p.add_argument("--out", required=True)
    p.add_argument("--eligible", default=None, help="eligible-repos.jsonl to restrict extraction")
    p.add_argument("--keyword", default="typo")
    p.add_argument("--case-sensitive", action="store_true")
    p.add_argument("--max-edits", type=int, default=10)
    _add_common(p)

    p = sub.add_parser("langfilter", help="drop code-like and language-mismatched edits")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--profiles", required=True, help="directory of *.profile.json files")
    p.add_argument("--code-threshold", type=float, default=langid.DEFAULT_CODE_THRESHOLD)
    p.add_argument("--confidence-floor", type=float, default=langid.DEFAULT_CONFIDENCE_FLOOR)
    _add_common(p)

    p = sub.add_parser("featurize", help="attach perplexities and classifier features to edits")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--models", required=True, help="directory of <lang>.lm model files")
    _add_common(p)

    p = sub.add_parser("train-classifier", help="fit logistic-regression weights from annotations")
    p.add_argument("--annotations", required=True, help="TSV of (src, tgt, category)")
    p.add_argument("--models", required=True)
    p.add_argument("--lang", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-iter", type=int, default=classifier.DEFAULT_MAX_ITER)
    p.add_argument("--tol", type=float, default=classifier.DEFAULT_TOL)
    _add_common(p)

    p = sub.add_parser("classify", help="label every featurized edit with a typo-ness score")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    _add_common(p)

    p = sub.add_parser("cv", help="10-fold cross-validation over annotated edits")
    p.add_argument("--annotations", required=True)
    p.add_argument("--models", required=True)
    p.add_argument("--lang", required=True)
    p.add_argument("--k", type=int, default=10)
    _add_common(p)

    p = sub.add_parser("atomic-stats", help="most frequent atomic edits per language")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--top", type=int, default=30)
    p.add_argument("--typo-only", action="store_true")
    p.add_argument("--out", default=None, help="TSV output; pretty table goes to stdout")
    _add_common(p)

    p = sub.add_parser("stats", help="per-language corpus statistics")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", default=None, help="TSV output; pretty table goes to stdout")
    _add_common(p)

    p = sub.add_parser("eval", help="score system corrections against gold edits per category")
    p.add_argument("--gold", required=True, help="TSV of (id, category, src, tgt)")
    p.add_argument("--system", required=True, help="TSV of (id, hypothesis)")
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--out", default=None, help="TSV output; pretty table goes to stdout")
    _add_common(p)

    p = sub.add_parser("train-lm", help="train a character language model from text")
    p.add_argument("--text", nargs="+", required=True, help="training text files")
    p.add_argument("--out", required=True, help="output .lm file")
    p.add_argument("--order", type=int, default=charlm.DEFAULT_ORDER)
    p.add_argument("--min-chars", type=int, default=charlm.MIN_TRAIN_CHARS)
    _add_common(p)

    p = sub.add_parser("train-profiles", help="train language-id profiles from per-language text")
    p.add_argument("--corpus", action="append", required=True, metavar="LANG=FILE",
                   help="language corpus (repeatable)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--order", type=int, default=langid.PROFILE_ORDER)
    p.add_argument("--min-chars", type=int, default=langid.MIN_PROFILE_CHARS)
    _add_common(p)

    return parser, sub


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip().strip('"')
    return values


def _apply_config(subparser: argparse.ArgumentParser, values: dict[str, str]) -> None:
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, raw in values.items():
        dest = key.replace("-", "_")
        action = actions.get(dest)
        if action is None:
            raise UsageError(f"unknown config key: {key}")
        if isinstance(action, argparse._StoreTrueAction):
            defaults[dest] = raw.lower() in ("1", "true", "yes")
        elif action.nargs in ("+", "*") or isinstance(action, argparse._AppendAction):
            items = raw.split()
            defaults[dest] = [action.type(i) for i in items] if action.type else items
        elif action.type is not None:
            defaults[dest] = action.type(raw)
        else:
            defaults[dest] = raw
    subparser.set_defaults(**defaults)


def _write_manifest(out_path, args, inputs, outputs, counts) -> None:
    config = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("command",) and not k.startswith("_")
    }
    config = {k: (list(v) if isinstance(v, (list, tuple)) else v) for k, v in config.items()}
    blob = json.dumps(config, sort_keys=True, default=str).encode("utf-8")
    manifest = {
        "tool": "typominer",
        "subcommand": args.command,
        "inputs": sorted(str(p) for p in inputs),
        "outputs": sorted(str(p) for p in outputs),
        "config": json.loads(blob.decode("utf-8")),
        "config_sha256": hashlib.sha256(blob).hexdigest(),
        "counts": counts,
        "created_at": datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
    }
    Path(f"{out_path}.manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _read_records(path) -> tuple[list[CommitRecord], ParseWarnings]:
    warnings = ParseWarnings()
    with open(path, "r", encoding="utf-8") as fp:
        records = [parse_commit(line.rstrip("\n"), warnings) for line in fp if line.strip()]
    if warnings.unknown_keys:
        log.warning("%s: ignored %d unknown keys", path, warnings.unknown_keys)
    return records, warnings


def _write_records(path, records) -> int:
    with open(path, "w", encoding="utf-8", newline="\n") as fp:
        n = 0
        for rec in records:
            fp.write(serialize_commit(rec))
            fp.write("\n")
            n += 1
    return n


def _map_edits(records, fn, workers: int):
    """Apply fn to every edit, keeping record structure and order; records
    whose edits all map to None are dropped."""
    all_edits = [(ri, edit) for ri, rec in enumerate(records) for edit in rec.edits]
    if workers > 1 and all_edits:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            mapped = list(pool.map(lambda item: fn(item[1]), all_edits))
    else:
        mapped = [fn(edit) for _, edit in all_edits]
    out = []
    pos = 0
    for rec in records:
        kept = [e for e in mapped[pos : pos + len(rec.edits)] if e is not None]
        pos += len(rec.edits)
        if kept:
            out.append(CommitRecord(repo=rec.repo, commit=rec.commit,
                                    message=rec.message, edits=kept))
    return out


def _cmd_harvest(args) -> int:
    paths = []
    for pattern in args.dump:
        matched = sorted(glob.glob(pattern))
        paths.extend(matched if matched else [pattern])
    cfg_kwargs = {
        "min_stars": args.min_stars,
        "min_size_bytes": args.min_size_bytes,
        "max_size_bytes": args.max_size_bytes,
    }
    if args.license:
        cfg_kwargs["allowed_licenses"] = frozenset(l.lower() for l in args.license)
    if args.window_start:
        cfg_kwargs["window_start"] = parse_utc(args.window_start)
    if args.window_end:
        cfg_kwargs["window_end"] = parse_utc(args.window_end)
    if args.event_kind:
        cfg_kwargs["required_event_kinds"] = frozenset(args.event_kind)
    cfg = EligibilityConfig(**cfg_kwargs)
    stats = HarvestStats()
    repos = harvest(paths, cfg, stats)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fp:
        write_repo_list(fp, repos)
    counts = {
        "events_read": stats.events_read,
        "malformed_lines": stats.malformed_lines,
        "eligible_events": stats.eligible_events,
        "repos_out": len(repos),
    }
    _write_manifest(args.out, args, paths, [args.out], counts)
    log.info("harvest: %d events -> %d eligible repositories", stats.events_read, len(repos))
    return 0


def _eligible_names(path) -> set[str]:
    with open(path, "r", encoding="utf-8") as fp:
        return {meta.full_name for meta in read_repo_list(fp)}


def _name_matches(repo_name: str, eligible: set[str]) -> bool:
    if repo_name in eligible:
        return True
    # origin URLs: compare the trailing owner/name path
    tail = "/".join(repo_name.rstrip("/").removesuffix(".git").split("/")[-2:])
    return tail in eligible


def _cmd_extract(args) -> int:
    if not args.repos and not args.diff_dir:
        raise UsageError("extract needs --repos and/or --diff-dir")
    repo_paths: list[Path] = []
    inputs: list[str] = []
    for root in (args.repos, args.diff_dir):
        if not root:
            continue
        inputs.append(root)
        root_path = Path(root)
        if root_path.is_file():
            listed = [Path(line.strip()) for line in root_path.read_text(encoding="utf-8").splitlines()
                      if line.strip()]
            repo_paths.extend(listed)
        else:
            repo_paths.extend(discover_repos(root_path))
    eligible = _eligible_names(args.eligible) if args.eligible else None
    if args.eligible:
        inputs.append(args.eligible)
    cfg = ExtractConfig(keyword=args.keyword, case_sensitive=args.case_sensitive,
                        max_edits=args.max_edits)
    stats = ExtractStats()
    n_out = 0
    skipped_repos = 0
    with open(args.out, "w", encoding="utf-8", newline="\n") as fp:
        for repo_path in repo_paths:
            try:
                repo = open_repo(repo_path)
                if eligible is not None and not _name_matches(repo.name, eligible):
                    log.info("skipping ineligible repository %s", repo.name)
                    continue
                for rec in extract_repo(repo, cfg=cfg, stats=stats):
                    fp.write(serialize_commit(rec))
                    fp.write("\n")
                    n_out += 1
            except GitError as exc:
                skipped_repos += 1
                log.error("skipping %s: %s", repo_path, exc)
    counts = {
        "repos_seen": len(repo_paths),
        "repos_failed": skipped_repos,
        "commits_seen": stats.commits_seen,
        "commits_matched": stats.commits_matched,
        "records_out": n_out,
        "commits_skipped_merge": stats.commits_skipped_merge,
        "commits_skipped_size": stats.commits_skipped_size,
        "commits_skipped_error": stats.commits_skipped_error,
        "files_skipped": stats.files_skipped,
        "lines_dropped": stats.lines_dropped,
    }
    _write_manifest(args.out, args, inputs, [args.out], counts)
    log.info("extract: %d commits -> %d records", stats.commits_seen, n_out)
    return 0


def _cmd_langfilter(args) -> int:
    profiles = langid.load_profiles(args.profiles)
    records, _ = _read_records(args.inp)
    edits_in = sum(len(r.edits) for r in records)
    out = _map_edits(
        records,
        lambda e: langid.filter_edit(e, profiles, code_threshold=args.code_threshold,
                                     confidence_floor=args.confidence_floor),
        args.workers,
    )
    n = _write_records(args.out, out)
    edits_out = sum(len(r.edits) for r in out)
    counts = {"records_in": len(records), "records_out": n,
              "edits_in": edits_in, "edits_out": edits_out,
              "edits_dropped": edits_in - edits_out}
    _write_manifest(args.out, args, [args.inp, args.profiles], [args.out], counts)
    log.info("langfilter: %d/%d edits kept", edits_out, edits_in)
    return 0


def _cmd_featurize(args) -> int:
    models = charlm.load_models(args.models)
    records, _ = _read_records(args.inp)

    def fn(edit):
        try:
            _, annotated = featurize_with_models(edit, models)
            return annotated
        except MissingModelError:
            return edit  # skipped with a warning; counted below

    out = _map_edits(records, fn, args.workers)
    n = _write_records(args.out, out)
    skipped = sum(1 for rec in out for e in rec.edits if e.features is None)
    if skipped:
        log.warning("%d edits had no matching language model and were left unfeaturized",
                    skipped)
    counts = {"records_in": len(records), "records_out": n,
              "edits_skipped_no_model": skipped}
    _write_manifest(args.out, args, [args.inp, args.models], [args.out], counts)
    return 0


def _read_annotations(path) -> list[tuple[str, str, str]]:
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fp:
        for lineno, row in enumerate(csv.reader(fp, delimiter="\t"), 1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise ValidationError("annotations", f"{path}:{lineno}: expected 3 columns")
            src, tgt, category = row
            if category not in CATEGORIES:
                raise ValidationError(
                    "category", f"{path}:{lineno}: {category!r} not in {CATEGORIES}"
                )
            rows.append((src, tgt, category))
    return rows


def _examples_from_annotations(path, model) -> list[classifier.LabeledExample]:
    examples = []
    for src, tgt, category in _read_annotations(path):
        edit = Edit(src=EditSide(text=nfc(src)), tgt=EditSide(text=nfc(tgt)))
        fv, _ = featurize(edit, model)
        examples.append(classifier.LabeledExample(fv, classifier.label_from_category(category)))
    return examples


def _model_for_lang(models_dir, lang):
    models = charlm.load_models(models_dir)
    if lang not in models:
        raise ValidationError("lang", f"no model for {lang!r} in {models_dir}")
    return models[lang]


def _cmd_train_classifier(args) -> int:
    model = _model_for_lang(args.models, args.lang)
    examples = _examples_from_annotations(args.annotations, model)
    weights = classifier.train(examples, max_iter=args.max_iter, tol=args.tol,
                               trained_on=Path(args.annotations).name, seed=args.seed)
    weights.save(args.out)
    counts = {"examples": len(examples),
              "positives": sum(e.label for e in examples)}
    _write_manifest(args.out, args, [args.annotations, args.models], [args.out], counts)
    log.info("train-classifier: fitted on %d examples", len(examples))
    return 0


def _cmd_classify(args) -> int:
    weights = classifier.ClassifierWeights.load(args.weights)
    records, _ = _read_records(args.inp)
    skipped: list = []
    labeled = classifier.label_corpus(records, weights, threshold=args.threshold,
                                      skipped=skipped)
    n = _write_records(args.out, labeled)
    counts = {"records": n, "edits_unlabeled": len(skipped)}
    _write_manifest(args.out, args, [args.inp, args.weights], [args.out], counts)
    return 0


def _cmd_cv(args) -> int:
    model = _model_for_lang(args.models, args.lang)
    examples = _examples_from_annotations(args.annotations, model)
    p, r, f1 = classifier.cross_validate(examples, k=args.k, seed=args.seed)
    print("precision\trecall\tf1")
    print(f"{p:.3f}\t{r:.3f}\t{f1:.3f}")
    return 0


def _cmd_atomic_stats(args) -> int:
    records, _ = _read_records(args.inp)
    tables = frequency_table(records, top_n=args.top, typo_only=args.typo_only)
    rows = [(lang, src, tgt, count)
            for lang, table in tables.items() for src, tgt, count in table]
    tsv_lines = ["lang\tsrc\ttgt\tcount"]
    tsv_lines += [f"{lang}\t{src}\t{tgt}\t{count}" for lang, src, tgt, count in rows]
    pretty = ["lang  src -> tgt  (count)"]
    pretty += [
        f"{lang:>8}  {render_atom_text(src)} -> {render_atom_text(tgt)}  ({count})"
        for lang, src, tgt, count in rows
    ]
    if args.out:
        Path(args.out).write_text("\n".join(tsv_lines) + "\n", encoding="utf-8")
        print("\n".join(pretty))
        _write_manifest(args.out, args, [args.inp], [args.out], {"rows": len(rows)})
    else:
        print("\n".join(tsv_lines))
    return 0


def _stats_cell(value: int | None) -> str:
    return "---" if value is None else str(value)


def _pretty_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    def fmt(cells):
        return "  ".join(c.rjust(w) if i else c.ljust(w)
                         for i, (c, w) in enumerate(zip(cells, widths)))
    return "\n".join([fmt(header), *(fmt(r) for r in rows)]) + "\n"


def _cmd_stats(args) -> int:
    records, _ = _read_records(args.inp)
    report = corpus_stats(records)
    header = ["lang", "n_commits", "n_typo_edits", "n_all_edits", "n_chars"]
    rows = [
        [row.lang, str(row.n_commits), _stats_cell(row.n_typo_edits),
         str(row.n_all_edits), str(row.n_chars)]
        for row in [*report.rows, report.total]
    ]
    tsv = "\n".join("\t".join(cells) for cells in [header, *rows]) + "\n"
    if args.out:
        Path(args.out).write_text(tsv, encoding="utf-8")
        print(_pretty_table(header, rows), end="")
        _write_manifest(args.out, args, [args.inp], [args.out],
                        {"records": len(records), "languages": len(report.rows)})
    else:
        print(tsv, end="")
    return 0


def _read_tsv(path, n_cols: int, what: str) -> list[list[str]]:
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fp:
        for lineno, row in enumerate(csv.reader(fp, delimiter="\t"), 1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != n_cols:
                raise ValidationError(what, f"{path}:{lineno}: expected {n_cols} columns")
            rows.append(row)
    return rows


def _cmd_eval(args) -> int:
    gold = [tuple(r) for r in _read_tsv(args.gold, 4, "gold")]
    system = {r[0]: r[1] for r in _read_tsv(args.system, 2, "system")}
    by_category = score_system(gold, system)
    header = ["category", "n_gold", "tp", "fp", "fn", "precision", "recall", "f"]
    rows = []
    for category, counts in by_category.items():
        p, r, f = precision_recall_fbeta(counts, args.beta)
        rows.append([category, str(counts.tp + counts.fn), str(counts.tp),
                     str(counts.fp), str(counts.fn),
                     f"{p:.3f}", f"{r:.3f}", f"{f:.3f}"])
    tsv = "\n".join("\t".join(cells) for cells in [header, *rows]) + "\n"
    if args.out:
        Path(args.out).write_text(tsv, encoding="utf-8")
        print(_pretty_table(header, rows), end="")
        _write_manifest(args.out, args, [args.gold, args.system], [args.out],
                        {"gold_edits": len(gold), "categories": len(by_category)})
    else:
        print(tsv, end="")
    return 0


def _cmd_train_lm(args) -> int:
    def lines():
        for path in args.text:
            with open(path, "r", encoding="utf-8") as fp:
                yield from fp

    model = charlm.train_lm(lines(), order=args.order, min_chars=args.min_chars)
    model.save(args.out)
    counts = {"alphabet": len(model.alphabet)}
    _write_manifest(args.out, args, list(args.text), [args.out], counts)
    return 0


def _cmd_train_profiles(args) -> int:
    corpora = {}
    for spec_arg in args.corpus:
        if "=" not in spec_arg:
            raise UsageError(f"--corpus expects LANG=FILE, got {spec_arg!r}")
        lang, path = spec_arg.split("=", 1)
        corpora[lang] = path
    profiles = langid.train_profiles(corpora, order=args.order, min_chars=args.min_chars)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    for profile in profiles:
        out_path = out_dir / f"{profile.lang}.profile.json"
        profile.save(out_path)
        outputs.append(out_path)
    _write_manifest(out_dir / "profiles", args, list(corpora.values()), outputs,
                    {"languages": len(profiles)})
    return 0


_HANDLERS = {
    "harvest": _cmd_harvest,
    "extract": _cmd_extract,
    "langfilter": _cmd_langfilter,
    "featurize": _cmd_featurize,
    "train-classifier": _cmd_train_classifier,
    "classify": _cmd_classify,
    "cv": _cmd_cv,
    "atomic-stats": _cmd_atomic_stats,
    "stats": _cmd_stats,
    "eval": _cmd_eval,
    "train-lm": _cmd_train_lm,
    "train-profiles": _cmd_train_profiles,
}


def run(argv) -> int:
    """Parse argv and run one subcommand; returns the process exit code."""
    parser, sub = build_parser()
    try:
        ns, _ = parser.parse_known_args(argv)
        if getattr(ns, "config", None):
            _apply_config(sub.choices[ns.command], _load_config_file(ns.config))
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except UsageError as exc:
        print(f"typominer: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"typominer: i/o error: {exc}", file=sys.stderr)
        return 3
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"typominer {args.command}: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, ParseError, GitError, langid.ProfileError,
            charlm.InsufficientDataError, classifier.TrainingError,
            json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"typominer {args.command}: data error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"typominer {args.command}: i/o error: {exc}", file=sys.stderr)
        return 3


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
