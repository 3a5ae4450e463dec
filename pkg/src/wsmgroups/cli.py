"""Command line entry point: corpus runs, cache checks and group inspection."""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path

from .characters import DEFAULT_CHAR_BOUND, CharacterTable, character_table
from .corpus import CorpusError, GroupSpec, build_source, default_corpus, parse_corpus, write_corpus
from .groups import DEFAULT_INDEX_BOUND, GroupError, PermGroup
from .lattice import DEFAULT_LATTICE_BOUND, SubgroupLattice
from .verify import (
    FAIL,
    PASS,
    SKIPPED,
    THEOREMS,
    GroupContext,
    VerificationReport,
    converse_exhibits,
    verify_group,
    verify_lemma_4_1,
    verify_remark_supersolvable,
)

log = logging.getLogger("wsmgroups")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
CACHE_FORMAT = 1


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    lattice_bound: int = DEFAULT_LATTICE_BOUND
    char_bound: int = DEFAULT_CHAR_BOUND
    index_bound: int = DEFAULT_INDEX_BOUND
    jobs: int = 1
    theorems: tuple[str, ...] = THEOREMS
    out: str | None = None
    cache: str | None = None
    timings: bool = False

    def __post_init__(self):
        for name in ("lattice_bound", "char_bound", "index_bound", "jobs"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        unknown = [t for t in self.theorems if t not in THEOREMS]
        if unknown:
            raise ConfigError(f"unknown theorem id(s): {', '.join(unknown)}; choose from {', '.join(THEOREMS)}")

    def report_view(self) -> dict:
        """The config as echoed in the report (no paths, so reports compare across machines)."""
        return {
            "lattice_bound": self.lattice_bound,
            "char_bound": self.char_bound,
            "index_bound": self.index_bound,
            "theorems": list(self.theorems),
        }


# -- cache ------------------------------------------------------------------


def _digest(payload) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


class Cache:
    """One JSON file per (group id, stage), written atomically.

    Entries carry a sha256 of their payload; anything that fails to parse or
    verify is discarded with a warning and recomputed by the caller.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path(self, group_id: str, stage: str) -> Path:
        return self.root / f"{group_id}.{stage}.json"

    def load(self, group_id: str, stage: str):
        p = self.path(group_id, stage)
        if not p.exists():
            return None
        try:
            entry = json.loads(p.read_text())
            if entry.get("format") != CACHE_FORMAT or entry.get("group_id") != group_id:
                raise ValueError("header mismatch")
            if _digest(entry["payload"]) != entry.get("sha256"):
                raise ValueError("checksum mismatch")
            return entry["payload"]
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("discarding corrupt cache entry %s (%s)", p.name, exc)
            p.unlink(missing_ok=True)
            return None

    def store(self, group_id: str, stage: str, payload) -> None:
        entry = {"format": CACHE_FORMAT, "group_id": group_id, "stage": stage,
                 "sha256": _digest(payload), "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=f".{group_id}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, self.path(group_id, stage))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def discard(self, group_id: str, stage: str) -> None:
        self.path(group_id, stage).unlink(missing_ok=True)


def load_lattice(G: PermGroup, cache: Cache | None, bound: int) -> tuple[SubgroupLattice, bool]:
    if cache is not None:
        data = cache.load(G.id, "lattice")
        if data is not None:
            try:
                return SubgroupLattice.from_data(G, data), True
            except (ValueError, KeyError, TypeError) as exc:
                log.warning("discarding cached lattice for %s (%s)", G.name, exc)
                cache.discard(G.id, "lattice")
    L = SubgroupLattice(G, bound)
    if cache is not None:
        cache.store(G.id, "lattice", L.to_data())
    return L, False


def load_table(G: PermGroup, L: SubgroupLattice | None, cache: Cache | None, bound: int) -> tuple[CharacterTable, bool]:
    src = L.table if L is not None else G
    if cache is not None:
        data = cache.load(G.id, "table")
        if data is not None:
            try:
                return CharacterTable.from_data(src, data), True
            except (ValueError, KeyError, TypeError) as exc:
                log.warning("discarding cached character table for %s (%s)", G.name, exc)
                cache.discard(G.id, "table")
    T = character_table(src, bound)
    if cache is not None:
        cache.store(G.id, "table", T.to_data())
    return T, False


# -- one group ---------------------------------------------------------------


def process_group(spec: GroupSpec, config: RunConfig) -> tuple[dict, list[VerificationReport]]:
    timings: dict[str, float] = {}
    t = time.perf_counter()
    G = spec.build()
    timings["build"] = time.perf_counter() - t
    cache = Cache(config.cache) if config.cache else None
    ctx = GroupContext(G, config.lattice_bound, config.char_bound, index_bound=config.index_bound)
    record: dict = {"name": spec.name, "id": G.id, "order": G.order, "degree": G.degree}
    if G.order <= config.lattice_bound:
        t = time.perf_counter()
        ctx.lattice, _ = load_lattice(G, cache, config.lattice_bound)
        timings["lattice"] = time.perf_counter() - t
        record["lattice"] = {"subgroups": len(ctx.lattice), "classes": len(ctx.lattice.classes)}
    else:
        ctx.lattice = None
    if G.order <= config.char_bound:
        t = time.perf_counter()
        ctx.table, _ = load_table(G, ctx.lattice, cache, config.char_bound)
        timings["table"] = time.perf_counter() - t
        record["classes"] = len(ctx.table.classes)
    else:
        ctx.table = None
    reports = verify_group(ctx, config.theorems)
    for r in reports:
        r.group = spec.name
        timings[r.theorem] = r.seconds
    record["verdicts"] = [{k: v for k, v in r.to_json().items() if k != "witnesses"} for r in reports]
    record["witnesses"] = [{"theorem": r.theorem, **w} for r in reports for w in r.witnesses]
    if config.timings:
        record["timings"] = {k: round(v, 4) for k, v in timings.items()}
    return record, reports


# -- a whole run ---------------------------------------------------------------


def _tally(records: list[dict], extra: list[VerificationReport]) -> dict:
    counts: dict[str, dict[str, int]] = {}
    for rec in records:
        for v in rec["verdicts"]:
            c = counts.setdefault(v["theorem"], {PASS: 0, FAIL: 0, SKIPPED: 0})
            c[v["verdict"]] += 1
    for r in extra:
        c = counts.setdefault(r.theorem, {PASS: 0, FAIL: 0, SKIPPED: 0})
        c[r.verdict] += 1
    return {k: counts[k] for k in sorted(counts)}


def run(config: RunConfig, specs: list[GroupSpec]) -> tuple[dict, int]:
    """Verify every group; returns the report and the exit code."""
    work = partial(process_group, config=config)
    if config.jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(work, specs, chunksize=1))
    else:
        results = [work(s) for s in specs]
    results.sort(key=lambda rr: (rr[0]["id"], rr[0]["name"]))
    records = [rec for rec, _ in results]

    corpus_reports = []
    if "remark_supersolvable" in config.theorems and records:
        corpus_reports.append(verify_remark_supersolvable([r for _, reps in results for r in reps]))
    if "lemma_4_1" in config.theorems and records:
        corpus_reports.append(verify_lemma_4_1(converse_exhibits(), group="S3 on GF(2)^2"))
    corpus = [{"group": r.group, **r.to_json(config.timings)} for r in corpus_reports]
    report = {
        "config": config.report_view(),
        "groups": records,
        "corpus": corpus,
        "summary": _tally(records, corpus_reports),
    }
    failed = any(v["verdict"] == FAIL for rec in records for v in rec["verdicts"]) or any(
        r.verdict == FAIL for r in corpus_reports
    )
    return report, EXIT_FAIL if failed else EXIT_OK


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


# -- verify-cache ---------------------------------------------------------------


def verify_cache(config: RunConfig, specs: list[GroupSpec]) -> tuple[dict, int]:
    """Recompute every cached stage and compare it field by field."""
    cache = Cache(config.cache)
    rows = []
    bad = 0
    for spec in specs:
        G = spec.build()
        row = {"name": spec.name, "id": G.id}
        L = None
        if G.order <= config.lattice_bound:
            data = cache.load(G.id, "lattice")
            L = SubgroupLattice(G, config.lattice_bound)
            row["lattice"] = "missing" if data is None else ("ok" if data == json.loads(json.dumps(L.to_data())) else "mismatch")
        if G.order <= config.char_bound:
            data = cache.load(G.id, "table")
            T = character_table(L.table if L is not None else G, config.char_bound)
            row["table"] = "missing" if data is None else ("ok" if data == json.loads(json.dumps(T.to_data())) else "mismatch")
        bad += sum(1 for v in row.values() if v == "mismatch")
        rows.append(row)
    return {"entries": rows, "mismatches": bad}, EXIT_FAIL if bad else EXIT_OK


# -- show -------------------------------------------------------------------------


def show_group(G: PermGroup, lattice_bound: int, char_bound: int, out=None) -> None:
    pr = partial(print, file=out or sys.stdout)
    pr(f"{G.name or G.id}: order {G.order}, degree {G.degree}")
    pr("generators: " + ", ".join(str(g) for g in G.generators))
    pr(f"solvable: {G.is_solvable()}")
    if G.order <= lattice_bound:
        L = SubgroupLattice(G, lattice_bound)
        from .verify import is_wsm

        pr(f"subgroups: {len(L)} in {len(L.classes)} conjugacy classes")
        pr(f"Frattini order {L.orders[L.frattini()]}, Fitting order {L.orders[L.fitting()]}")
        pr(f"supersolvable: {L.is_supersolvable()}, WSM: {is_wsm(L)}")
        pr("class  order  size  normal  position")
        for c, members in enumerate(L.classes):
            h = members[0]
            pos = "-" if h == L.top else L.classify_chain_position(h).value
            pr(f"{c:5d}  {L.orders[h]:5d}  {len(members):4d}  {str(L.is_normal(h)):6s}  {pos}")
        cs = L.chief_series()
        pr("chief factors: " + ", ".join(
            f"{f.order}{'' if f.non_frattini else ' (Frattini)'}" for f in cs.factors))
    if G.order <= char_bound:
        T = character_table(G, char_bound)
        pr("character table:")
        pr("  sizes  " + "  ".join(str(s) for s in T.classes.sizes))
        for i, row in enumerate(T.rows):
            pr(f"  X.{i + 1}  " + "  ".join(str(v.minimal()) for v in row))


# -- argument handling --------------------------------------------------------------


def _load_specs(args) -> list[GroupSpec]:
    if args.corpus:
        return parse_corpus(args.corpus)
    return default_corpus()


def _config(args) -> RunConfig:
    theorems = tuple(t.strip() for t in args.theorems.split(",") if t.strip()) if args.theorems else THEOREMS
    return RunConfig(
        lattice_bound=args.lattice_bound,
        char_bound=args.char_bound,
        index_bound=args.index_bound,
        jobs=args.jobs,
        theorems=theorems,
        out=getattr(args, "out", None),
        cache=args.cache,
        timings=getattr(args, "timings", False),
    )


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    p = Path(path)
    if p.parent != Path(""):
        p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wsmgroups", description="Check WSM-group results on a corpus of permutation groups.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, cache_required=False):
        p.add_argument("--corpus", help="JSONL corpus file (default: the builtin corpus)")
        p.add_argument("--theorems", help=f"comma separated subset of {','.join(THEOREMS)}")
        p.add_argument("--lattice-bound", type=int, default=DEFAULT_LATTICE_BOUND)
        p.add_argument("--char-bound", type=int, default=DEFAULT_CHAR_BOUND)
        p.add_argument("--index-bound", type=int, default=DEFAULT_INDEX_BOUND)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--cache", required=cache_required, help="cache directory")

    p = sub.add_parser("run", help="verify every corpus group and write a JSON report")
    common(p)
    p.add_argument("--out", help="report path (default: stdout)")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (makes reports non-reproducible)")

    p = sub.add_parser("verify-cache", help="recompute cached lattices and tables and compare")
    common(p, cache_required=True)
    p.add_argument("--out")

    p = sub.add_parser("show", help="print one group's lattice and character table")
    p.add_argument("group", nargs="?", help='constructor expression such as "sym(4)", or a name in --corpus')
    p.add_argument("--corpus")
    p.add_argument("--lattice-bound", type=int, default=DEFAULT_LATTICE_BOUND)
    p.add_argument("--char-bound", type=int, default=DEFAULT_CHAR_BOUND)

    p = sub.add_parser("corpus", help="write the builtin corpus as JSONL")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--max-order", type=int, default=200)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "corpus":
            specs = default_corpus(args.max_order)
            if args.out:
                write_corpus(specs, args.out)
            else:
                for s in specs:
                    sys.stdout.write(json.dumps(s.to_json()) + "\n")
            return EXIT_OK
        if args.command == "show":
            if args.corpus:
                specs = {s.name: s for s in parse_corpus(args.corpus)}
                if args.group not in specs:
                    raise ConfigError(f"no group named {args.group!r} in {args.corpus}")
                G = specs[args.group].build()
            elif args.group:
                G = build_source(args.group)
            else:
                raise ConfigError("show needs a group expression or --corpus with a name")
            show_group(G, args.lattice_bound, args.char_bound)
            return EXIT_OK
        config = _config(args)
        specs = _load_specs(args)
        if args.command == "run":
            report, code = run(config, specs)
        else:
            report, code = verify_cache(config, specs)
        _write(dump_report(report), args.out)
        return code
    except (ConfigError, CorpusError, GroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
