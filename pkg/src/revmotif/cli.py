"""Command-line pipeline: fetch -> network -> census -> SRP -> analysis -> reports.

Per-article null-model seeds are derived from the single run seed as the
first 8 bytes (big-endian) of ``blake2b(f"{seed}:{article_id}")``, so every
article's result is independent of processing order and worker count.
Per-article results are cached under ``<out>/cache/`` keyed by a hash of the
article's revisions and the null-model settings.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import hashlib
import json
import logging
import os
import platform
import sys
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .analysis import (
    GROUPS,
    SrpMatrix,
    external_correlates,
    pairwise_pearson,
    pca_fit,
    pca_project,
)
from .census import CONNECTED_CODES, TRIAD_CODES, TriadCensus, triad_census
from .errors import DataError, InsufficientDataError, RevmotifError
from .graph import build_revision_network
from .ingest import (
    DEFAULT_BATCH_LIMIT,
    DEFAULT_DELAY,
    ArticleMetadata,
    FetchCheckpoint,
    HostThrottle,
    Label,
    RevisionLog,
    compute_metadata,
    default_endpoint,
    fetch_revisions,
    filter_editors,
    load_fixtures,
    log_to_dict,
)
from .nullmodel import DEFAULT_EPSILON, DEFAULT_SAMPLES, NullModelConfig
from .srp import DEFAULT_CUTOFF, SrpProfile, article_srp_details, significant_motifs

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

log = logging.getLogger("revmotif")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERICAL = 0, 1, 2, 3
CACHE_VERSION = 1
FIGURES = ("srp_profiles", "srp_means", "pca2d", "pca3d", "covariates")
OUTPUT_FILES = (
    "census.csv",
    "srp.csv",
    "motifs.json",
    "pca.json",
    "projection.csv",
    "correlates.csv",
    "manifest.json",
)


class UsageError(RevmotifError):
    exit_code = EXIT_USAGE


class StageError(RevmotifError):
    """Failure inside a named pipeline stage."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", EXIT_DATA)
        super().__init__(f"[{stage}] {cause}")


@contextlib.contextmanager
def stage(name: str):
    try:
        yield
    except StageError:
        raise
    except (RevmotifError, OSError, ValueError) as exc:
        raise StageError(name, exc) from exc


@dataclass(frozen=True)
class PipelineConfig:
    input: str | None = None
    out: str = "revmotif-out"
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    epsilon: float = DEFAULT_EPSILON
    cutoff: float = DEFAULT_CUTOFF
    pca_k: int = 2
    pca_mode: str = "covariance"
    workers: int = 1
    exclude_editors: str | None = None

    def __post_init__(self):
        if self.pca_k not in (2, 3):
            raise DataError("pca_k must be 2 or 3")
        if self.workers < 1:
            raise DataError("workers must be >= 1")
        if self.cutoff <= 0:
            raise DataError("cutoff must be positive")
        NullModelConfig(self.samples, self.seed, self.epsilon)

    @property
    def null(self) -> NullModelConfig:
        return NullModelConfig(self.samples, self.seed, self.epsilon)


def article_seed(seed: int, article_id: str) -> int:
    digest = hashlib.blake2b(f"{seed}:{article_id}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _fmt(x: Any) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return "" if x is None else str(x)


def _write_csv(path: Path, header: Sequence[str], rows) -> int:
    n = 0
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])
            n += 1
    return n


def _write_json(path: Path, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def _read_csv(path: Path) -> list[dict[str, str]]:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


# -- per-article work -------------------------------------------------------


@dataclass
class ArticleResult:
    article_id: str
    label: str
    status: str  # processed | excluded | failed
    reason: str = ""
    n: int = 0
    m: int = 0
    metadata: dict | None = None
    census: list[int] | None = None
    ensemble_mean: list[float] | None = None
    ensemble_std: list[float] | None = None
    delta: list[float] | None = None
    srp: list[float] | None = None
    degenerate: bool = False


def _cache_key(lg: RevisionLog, null: NullModelConfig, pattern: str | None) -> str:
    payload = json.dumps(
        {
            "v": CACHE_VERSION,
            "log": log_to_dict(lg),
            "samples": null.samples,
            "seed": null.seed,
            "epsilon": null.epsilon,
            "exclude": pattern,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def process_article(lg: RevisionLog, config: PipelineConfig, cache_dir: str | None = None) -> ArticleResult:
    """Network, census and SRP of one article. Never raises for bad data."""
    res = ArticleResult(lg.article_id, lg.label.value, "processed")
    try:
        lg = filter_editors(lg, config.exclude_editors)
        if not lg.events:
            raise InsufficientDataError("insufficient data: no revisions left")
        net = build_revision_network(lg)
        res.n, res.m = net.n, net.m
        res.metadata = asdict(compute_metadata(lg))
        if net.n < 3:
            res.status, res.reason = "excluded", "insufficient for motif analysis"
            return res
        null = replace(config.null, seed=article_seed(config.seed, lg.article_id))
        cache_file = None
        if cache_dir is not None:
            cache_file = Path(cache_dir) / f"{_cache_key(lg, null, config.exclude_editors)}.json"
            if cache_file.exists():
                cached = json.loads(cache_file.read_text(encoding="utf-8"))
                for key in ("census", "ensemble_mean", "ensemble_std", "delta", "srp", "degenerate"):
                    setattr(res, key, cached[key])
                if res.degenerate:
                    res.status, res.reason = "excluded", "degenerate profile"
                return res
        detail = article_srp_details(net, null)
        res.census = list(detail.census.counts)
        res.ensemble_mean = detail.ensemble.mean.tolist()
        res.ensemble_std = detail.ensemble.std.tolist()
        res.delta = detail.delta.values.tolist()
        res.srp = detail.profile.values.tolist()
        res.degenerate = detail.profile.degenerate
        if cache_file is not None:
            tmp = cache_file.with_suffix(".tmp")
            tmp.write_text(json.dumps({
                "census": res.census, "ensemble_mean": res.ensemble_mean,
                "ensemble_std": res.ensemble_std, "delta": res.delta,
                "srp": res.srp, "degenerate": res.degenerate,
            }), encoding="utf-8")
            os.replace(tmp, cache_file)
        if res.degenerate:
            res.status, res.reason = "excluded", "degenerate profile"
    except RevmotifError as exc:
        res.status = "excluded" if isinstance(exc, InsufficientDataError) else "failed"
        res.reason = str(exc)
    except Exception as exc:  # noqa: BLE001 - one bad article must not kill the batch
        res.status, res.reason = "failed", f"{type(exc).__name__}: {exc}"
    return res


def _process_all(logs: list[RevisionLog], config: PipelineConfig, cache_dir: str) -> list[ArticleResult]:
    if config.workers > 1 and len(logs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(process_article, logs, [config] * len(logs),
                                 [cache_dir] * len(logs), chunksize=4))
    return [process_article(lg, config, cache_dir) for lg in logs]


# -- run ------------------------------------------------------------------------


def _versions() -> dict[str, str]:
    return {"revmotif": __version__, "numpy": np.__version__, "python": platform.python_version()}


def cmd_run(config: PipelineConfig) -> dict[str, Path]:
    """Full pipeline over a fixture; returns the written output paths."""
    if not config.input:
        raise UsageError("no input fixture given")
    out = Path(config.out)
    with stage("load"):
        logs = load_fixtures(config.input)
        out.mkdir(parents=True, exist_ok=True)
        cache_dir = out / "cache"
        cache_dir.mkdir(exist_ok=True)

    with stage("srp"):
        results = _process_all(logs, config, str(cache_dir))
    processed = [r for r in results if r.status == "processed"]
    with_census = [r for r in results if r.census is not None]
    paths = {name: out / name for name in OUTPUT_FILES}

    with stage("report"):
        _write_csv(paths["census.csv"], ["article_id", *TRIAD_CODES],
                   ([r.article_id, *r.census] for r in with_census))
        _write_csv(paths["srp.csv"], ["article_id", "label", *CONNECTED_CODES, "degenerate"],
                   ([r.article_id, r.label, *r.srp, int(r.degenerate)] for r in with_census))
        _write_csv(out / "articles.csv",
                   ["article_id", "label", "status", "n", "m", "editor_count", "age_days",
                    "edit_rate", "age_zero"],
                   ([r.article_id, r.label, r.status, r.n, r.m,
                     *((r.metadata[k] for k in ("editor_count", "age_days", "edit_rate"))
                       if r.metadata else ("", "", "")),
                     int(r.metadata["age_zero"]) if r.metadata else ""]
                    for r in results))

    matrix = SrpMatrix.from_profiles(
        (r.article_id, r.label, SrpProfile(np.array(r.srp), r.degenerate)) for r in processed
    )
    with stage("motifs"):
        motifs: dict[str, Any] = {"cutoff": config.cutoff, "groups": {}, "pearson": {}}
        for group in GROUPS:
            sub = matrix.subset(group)
            profiles = [SrpProfile(v) for v in sub.values]
            motifs["groups"][group] = (
                significant_motifs(profiles, config.cutoff).to_dict() if profiles else None
            )
            try:
                motifs["pearson"][group] = asdict(pairwise_pearson(sub))
            except InsufficientDataError as exc:
                motifs["pearson"][group] = {"skipped": str(exc)}
        _write_json(paths["motifs.json"], motifs)

    k = config.pca_k
    pcs = [f"pc{j + 1}" for j in range(k)]
    coords = []
    with stage("pca"):
        if len(matrix) >= 2:
            fit = pca_fit(matrix, mode=config.pca_mode)
            coords = pca_project(fit, matrix, k)
            _write_json(paths["pca.json"], {"status": "ok", **fit.to_dict()})
        else:
            _write_json(paths["pca.json"], {
                "status": "skipped",
                "reason": f"{len(matrix)} usable profiles; PCA needs at least 2",
            })
        _write_csv(paths["projection.csv"], ["article_id", "label", *pcs],
                   ([p.article_id, p.label, *p.coords] for p in coords))

    with stage("correlates"):
        meta = {r.article_id: ArticleMetadata(**r.metadata) for r in processed if r.metadata}
        report = external_correlates(coords, meta)
        _write_csv(paths["correlates.csv"], ["group", "component", "covariate", "r", "n", "note"],
                   ([c.group, c.component, c.covariate, c.r, c.n, c.note] for c in report.rows))
        _write_csv(out / "correlates_bins.csv",
                   ["group", "component", "covariate", "bin", "count", "covariate_lo",
                    "covariate_hi", "covariate_mean", "component_mean"],
                   ([b.group, b.component, b.covariate, b.bin, b.count, b.covariate_lo,
                     b.covariate_hi, b.covariate_mean, b.component_mean] for b in report.bins))

    with stage("manifest"):
        manifest = {
            "versions": _versions(),
            "seed": config.seed,
            "config": {k2: v for k2, v in asdict(config).items() if k2 not in ("out", "workers")},
            "seed_rule": "blake2b(f'{seed}:{article_id}', digest_size=8), big-endian",
            "articles": len(results),
            "processed": [r.article_id for r in processed],
            "excluded": [{"article_id": r.article_id, "reason": r.reason}
                         for r in results if r.status == "excluded"],
            "failed": [{"article_id": r.article_id, "stage": "srp", "error": r.reason}
                       for r in results if r.status == "failed"],
            "outputs": list(OUTPUT_FILES) + ["articles.csv", "correlates_bins.csv"],
        }
        _write_json(paths["manifest.json"], manifest)
    log.info("%d articles: %d processed, %d excluded, %d failed", len(results), len(processed),
             len(manifest["excluded"]), len(manifest["failed"]))
    return paths


# -- fetch ----------------------------------------------------------------------


def read_titles(path: str | os.PathLike) -> list[tuple[str, Label]]:
    """``title`` or ``title<TAB>label`` per line; ``#`` starts a comment."""
    titles = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            title, _, label = line.partition("\t")
            try:
                titles.append((title.strip(), Label(label.strip() or Label.NON_CONTROVERSIAL)))
            except ValueError:
                raise DataError(f"{path}:{lineno}: unknown label {label!r}") from None
    if not titles:
        raise DataError("no input titles")
    return titles


def cmd_fetch(
    titles_file: str | os.PathLike,
    output: str | os.PathLike,
    *,
    endpoint: str | None = None,
    batch_limit: int = DEFAULT_BATCH_LIMIT,
    delay: float = DEFAULT_DELAY,
    workers: int = 1,
    retries: int = 1,
) -> list[str]:
    """Fetch every title into a JSON Lines fixture, resumably.

    Finished titles are recorded in ``<output>.checkpoint``; a rerun only
    fetches the rest. Titles that fail are retried ``retries`` more times;
    the ones still failing are returned.
    """
    titles = read_titles(titles_file)
    output = Path(output)
    ckpt = FetchCheckpoint.open(str(output) + ".checkpoint")
    if not ckpt.done and output.exists() and output.stat().st_size:
        raise DataError(f"{output} exists but has no checkpoint; move it or pick another --output")
    seen_ids = set()
    if output.exists():
        with open(output, encoding="utf-8") as fh:
            seen_ids = {json.loads(ln)["article_id"] for ln in fh if ln.strip()}
    throttle = HostThrottle(delay)
    endpoint = endpoint or default_endpoint()

    def fetch(item):
        title, label = item
        try:
            return fetch_revisions(title, endpoint, batch_limit, label=label, throttle=throttle)
        except RevmotifError as exc:
            return exc

    todo = [t for t in titles if t[0] not in ckpt.done]
    for attempt in range(retries + 1):
        if not todo:
            break
        failed = []
        with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool, \
                open(output, "a", encoding="utf-8") as fh:
            for item, res in zip(todo, pool.map(fetch, todo)):
                if isinstance(res, Exception):
                    log.warning("fetch %r failed (attempt %d): %s", item[0], attempt + 1, res)
                    failed.append(item)
                    continue
                if res.article_id in seen_ids:
                    log.warning("%r resolves to an already fetched page; skipped", item[0])
                else:
                    seen_ids.add(res.article_id)
                    fh.write(json.dumps(log_to_dict(res), ensure_ascii=False, sort_keys=True) + "\n")
                    fh.flush()
                ckpt.mark(item[0])
        todo = failed
    return [t for t, _ in todo]


# -- plot data ------------------------------------------------------------------


def cmd_plotdata(bundle: str | os.PathLike, figure: str) -> tuple[list[str], list[list[Any]]]:
    """Tidy rows for one figure from a finished run directory."""
    if figure not in FIGURES:
        raise UsageError(f"unknown figure {figure!r}; valid: {', '.join(FIGURES)}")
    bundle = Path(bundle)
    if not (bundle / "manifest.json").exists():
        raise DataError(f"{bundle} is not a run output directory")

    if figure in ("srp_profiles", "srp_means"):
        rows = [r for r in _read_csv(bundle / "srp.csv") if r["degenerate"] == "0"]
        if figure == "srp_profiles":
            return ["article_id", "label", "triad", "srp"], [
                [r["article_id"], r["label"], c, float(r[c])] for r in rows for c in CONNECTED_CODES
            ]
        out = []
        for group in GROUPS:
            sub = [r for r in rows if group == "all" or r["label"] == group]
            if not sub:
                continue
            for c in CONNECTED_CODES:
                v = np.array([float(r[c]) for r in sub])
                out.append([group, c, float(v.mean()), float(v.std()), len(sub)])
        return ["group", "triad", "mean", "sd", "n"], out

    proj = _read_csv(bundle / "projection.csv")
    if figure in ("pca2d", "pca3d"):
        k = 2 if figure == "pca2d" else 3
        cols = [f"pc{j + 1}" for j in range(k)]
        if proj and cols[-1] not in proj[0]:
            raise DataError(f"{figure} needs a run with --pca-k {k}")
        return ["article_id", "label", *cols], [
            [r["article_id"], r["label"], *(float(r[c]) for c in cols)] for r in proj
        ]

    meta = {r["article_id"]: r for r in _read_csv(bundle / "articles.csv")}
    pcs = [c for c in (proj[0].keys() if proj else []) if c.startswith("pc")]
    out = []
    for r in proj:
        m = meta.get(r["article_id"])
        if m is None or m["editor_count"] == "":
            continue
        for pc in pcs:
            for cov in ("editor_count", "age_days", "edit_rate"):
                out.append([r["article_id"], r["label"], pc.upper(), float(r[pc]), cov, float(m[cov])])
    return ["article_id", "label", "component", "value", "covariate", "covariate_value"], out


# -- argument parsing -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


GLOBAL_KEYS = {
    "seed": int, "null_samples": int, "epsilon": float, "cutoff": float,
    "pca_k": int, "pca_mode": str, "workers": int, "out": str, "exclude_editors": str,
}


def _add_globals(p: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    g = p.add_argument_group("pipeline options")
    g.add_argument("--config", default=S, help="TOML file with defaults for these options")
    g.add_argument("--seed", type=int, default=S, help="run seed (default 0)")
    g.add_argument("--null-samples", type=int, default=S,
                   help=f"random graphs per article (default {DEFAULT_SAMPLES})")
    g.add_argument("--epsilon", type=float, default=S,
                   help=f"ratio regulariser (default {DEFAULT_EPSILON:g})")
    g.add_argument("--cutoff", type=float, default=S,
                   help=f"motif significance cutoff (default {DEFAULT_CUTOFF})")
    g.add_argument("--pca-k", type=int, choices=(2, 3), default=S, help="projected components")
    g.add_argument("--pca-mode", choices=("covariance", "correlation"), default=S)
    g.add_argument("--workers", type=int, default=S, help="parallel worker processes")
    g.add_argument("--out", default=S, help="output directory (default revmotif-out)")
    g.add_argument("--exclude-editors", default=S, metavar="REGEX",
                   help="drop revisions by editors matching REGEX (e.g. bots)")
    g.add_argument("-v", "--verbose", action="count", default=S)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="revmotif", description=__doc__.splitlines()[0])
    _add_globals(parser)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fetch", help="download revision histories into a fixture")
    _add_globals(p)
    p.add_argument("titles", help="file with one title (optionally TAB label) per line")
    p.add_argument("-o", "--output", default="fixture.jsonl")
    p.add_argument("--endpoint", default=None, help="API endpoint (env REVMOTIF_API_ENDPOINT)")
    p.add_argument("--batch-limit", type=int, default=DEFAULT_BATCH_LIMIT)
    p.add_argument("--delay", type=float, default=DEFAULT_DELAY,
                   help="politeness delay per host in seconds (default 0.2)")

    p = sub.add_parser("run", help="full analysis of a fixture")
    _add_globals(p)
    p.add_argument("fixture")

    p = sub.add_parser("plotdata", help="emit plot-ready CSV from a run directory")
    _add_globals(p)
    p.add_argument("bundle")
    p.add_argument("figure", choices=FIGURES)
    p.add_argument("-o", "--output", default=None, help="file to write (default stdout)")

    for name, what in (("census", "triad census"), ("srp", "subgraph ratio profile")):
        p = sub.add_parser(name, help=f"{what} of one article (debugging)")
        _add_globals(p)
        p.add_argument("fixture")
        p.add_argument("--article", default=None, help="article_id (default: every article)")

    p = sub.add_parser("synth", help="write a synthetic demo fixture")
    _add_globals(p)
    p.add_argument("output")
    p.add_argument("--count", type=int, default=40)
    return parser


def resolve_config(args: argparse.Namespace, fixture: str | None = None) -> PipelineConfig:
    values: dict[str, Any] = {}
    if getattr(args, "config", None):
        with open(args.config, "rb") as fh:
            raw = tomllib.load(fh)
        for key, val in raw.items():
            key = key.replace("-", "_")
            if key not in GLOBAL_KEYS:
                raise UsageError(f"unknown config key {key!r}")
            values[key] = GLOBAL_KEYS[key](val)
    for key in GLOBAL_KEYS:
        if hasattr(args, key):
            values[key] = getattr(args, key)
    if "null_samples" in values:
        values["samples"] = values.pop("null_samples")
    return PipelineConfig(input=fixture, **values)


def _select(logs: list[RevisionLog], article: str | None) -> list[RevisionLog]:
    if article is None:
        return logs
    chosen = [lg for lg in logs if lg.article_id == article]
    if not chosen:
        raise DataError(f"article {article!r} not in fixture")
    return chosen


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(
        level=logging.WARNING - 10 * min(getattr(args, "verbose", 0), 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = resolve_config(args, getattr(args, "fixture", None))
        if args.command == "run":
            paths = cmd_run(config)
            print(f"wrote {len(paths)} reports to {config.out}")
        elif args.command == "fetch":
            with stage("fetch"):
                failed = cmd_fetch(args.titles, args.output, endpoint=args.endpoint,
                                   batch_limit=args.batch_limit, delay=args.delay,
                                   workers=config.workers)
            if failed:
                print(f"error [fetch]: {len(failed)} titles failed: {', '.join(failed)}",
                      file=sys.stderr)
                return EXIT_DATA
        elif args.command == "plotdata":
            with stage("plotdata"):
                header, rows = cmd_plotdata(args.bundle, args.figure)
            with contextlib.ExitStack() as stack:
                fh = sys.stdout
                if args.output is not None:
                    fh = stack.enter_context(open(args.output, "w", encoding="utf-8", newline=""))
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(header)
                w.writerows([_fmt(x) for x in row] for row in rows)
        elif args.command == "census":
            with stage("census"):
                logs = _select(load_fixtures(config.input), args.article)
                w = csv.writer(sys.stdout, lineterminator="\n")
                w.writerow(["article_id", *TRIAD_CODES])
                for lg in logs:
                    lg = filter_editors(lg, config.exclude_editors)
                    c = triad_census(build_revision_network(lg)) if lg.events else TriadCensus((0,) * 16)
                    w.writerow([lg.article_id, *c.counts])
        elif args.command == "srp":
            with stage("srp"):
                logs = _select(load_fixtures(config.input), args.article)
                for lg in logs:
                    res = process_article(lg, config)
                    print(json.dumps(asdict(res)))
        elif args.command == "synth":
            from .ingest import dump_fixtures
            from .synthetic import synthetic_fixture

            n = dump_fixtures(synthetic_fixture(args.count, config.seed), args.output)
            print(f"wrote {n} synthetic articles to {args.output}")
    except StageError as exc:
        print(f"error [{exc.stage}]: {exc.cause}", file=sys.stderr)
        return exc.exit_code
    except RevmotifError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
