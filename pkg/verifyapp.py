"""
Command-line entry point.

    python verifyapp.py gen --family cyclic:5 --connection "+1,-1" -o c5.json
    python verifyapp.py verify c5.json
    python verifyapp.py corpus --dir graphs/ --format csv
    python verifyapp.py corpus --builtin --workers 4

Exit codes: 0 success, 1 a graph violates the spectral interval, 2 usage or
input error.
"""
import argparse
import dataclasses
import glob
import json
import multiprocessing as mp
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import pandas as pd

from corpus_builder import circulant, complete_bipartite, complete_graph, generate_corpus, petersen, write_corpus
from spectralTools.coverTool import bvn_decompose, verify_cover
from spectralTools.errors import GraphFormatError, GraphToolError, TooLarge
from spectralTools.expansionTool import cheeger_sandwich_check, expansion_profile
from spectralTools.graphCore import Multigraph, dumps_graph, load_graph, validate_regular
from spectralTools.helper import (
    BUDGET_AUT,
    BUDGET_GROUP,
    BUDGET_SUBSETS,
    AUT_ORDER_CAP,
    SUBCOMMAND_LABELS,
    WORKERS,
    Budgets,
)
from spectralTools.reportCache import ReportCache
from spectralTools.spectrumTool import characteristic_polynomial, normalized_spectrum, spectral_multiplicities
from spectralTools.symmetryTool import (
    PermGroup,
    automorphism_group,
    cayley_graph,
    condition1_holds,
    is_vertex_transitive,
    transitivity_order,
)
from verifier import CSV_COLUMNS, BoundReport, verify_theorem1

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

SUBCOMMANDS = list(SUBCOMMAND_LABELS)


class InputError(Exception):
    """An input problem tied to a file (or '-') and an operation."""

    def __init__(self, source: str, op: str, message: str):
        super().__init__(f"{source}: {op}: {message}")


@dataclass
class RunConfig:
    subcommand: str
    inputs: List[str] = field(default_factory=list)
    family: Optional[str] = None
    connection: Optional[str] = None
    directory: Optional[str] = None
    builtin: bool = False
    builtin_dir: Optional[str] = None
    budgets: Budgets = field(default_factory=Budgets)
    output_format: str = "json"
    workers: int = WORKERS
    output: Optional[str] = None

    def validate(self) -> "RunConfig":
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        self.budgets.validate()
        if self.workers < 1:
            raise ValueError(f"--workers must be >= 1, got {self.workers}")
        if self.output_format == "csv" and self.subcommand not in ("verify", "corpus"):
            raise ValueError("--format csv is only available for verify and corpus")
        return self


def _load(path: str) -> Multigraph:
    try:
        return load_graph(path)
    except GraphToolError as e:
        raise InputError(path, e.op or "load_graph", str(e))
    except json.JSONDecodeError as e:
        raise InputError(path, "load_graph", f"invalid JSON ({e})")
    except OSError as e:
        raise InputError(path, "load_graph", e.strerror or str(e))


def build_family(family: str, connection: Optional[str]) -> Multigraph:
    """Named families (cycle:n, complete:n, petersen, circulant:n, complete-bipartite:a,b) or a Cayley group spec."""
    name, _, argument = family.partition(":")
    name = name.strip().lower()
    try:
        if name == "cycle":
            return circulant(int(argument), [1])
        if name == "complete":
            return complete_graph(int(argument))
        if name == "petersen":
            return petersen()
        if name == "circulant":
            if not connection:
                raise GraphFormatError("circulant needs --connection with its jumps, e.g. '1,2'", op="gen")
            return circulant(int(argument), [int(s) for s in connection.split(",")])
        if name == "complete-bipartite":
            a, b = (int(x) for x in argument.split(","))
            return complete_bipartite(a, b)
    except ValueError as e:
        if isinstance(e, GraphToolError):
            raise
        raise GraphFormatError(f"bad family argument in {family!r}", op="gen")
    if not connection:
        raise GraphFormatError(f"Cayley family {family!r} needs --connection", op="gen")
    return cayley_graph(family, connection)


def _verify_job(job: Tuple[str, Multigraph, Budgets, Optional[PermGroup]]) -> Tuple[Optional[BoundReport], Optional[Tuple[str, str]]]:
    graph_id, g, budgets, certificate = job
    try:
        return verify_theorem1(g, graph_id, budgets, certificate), None
    except GraphToolError as e:
        return None, (e.op or "verify_theorem1", str(e))


def run_corpus(items: List[Tuple[str, Multigraph, Optional[PermGroup]]], budgets: Budgets, workers: int = 1, cache: Optional[ReportCache] = None) -> List[BoundReport]:
    """
    Verify every item, in input order regardless of worker scheduling.

    Structurally identical graphs are verified once per cache; later copies
    reuse the first report under their own id. Without a cache each call
    starts from an empty one.
    """
    cache = cache if cache is not None else ReportCache()
    jobs = []
    pending = {}
    plan = []
    for graph_id, g, certificate in items:
        cached = cache.get(g, budgets)
        if cached is not None:
            plan.append((graph_id, cached["report"], cached["graph_id"]))
            continue
        key = cache.key(g, budgets)
        if key not in pending:
            pending[key] = len(jobs)
            jobs.append((graph_id, g, budgets, certificate))
        plan.append((graph_id, pending[key], None))

    if workers > 1 and len(jobs) > 1:
        with mp.Pool(min(workers, len(jobs))) as p:
            results = p.map(_verify_job, jobs)
    else:
        results = [_verify_job(job) for job in jobs]

    for job, (_, error) in zip(jobs, results):
        if error:
            raise InputError(job[0], *error)
    for index in pending.values():
        cache.add(jobs[index][1], budgets, results[index][0], jobs[index][0])

    reports = []
    for graph_id, source, first_id in plan:
        if isinstance(source, int):
            report, first_id = results[source][0], jobs[source][0]
        else:
            report = source
        if first_id != graph_id:
            report = dataclasses.replace(report, graph_id=graph_id, notes=report.notes + [f"same graph as {first_id}"])
        reports.append(report)
    return reports


def render_reports(reports: List[BoundReport], output_format: str, single: bool = False) -> str:
    if output_format == "csv":
        df = pd.DataFrame([r.csv_row() for r in reports], columns=CSV_COLUMNS)
        return df.to_csv(index=False, lineterminator="\n")
    if single and len(reports) == 1:
        return json.dumps(reports[0].to_dict(), indent=2, ensure_ascii=False) + "\n"
    return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _dump(documents: List[dict]) -> str:
    payload = documents[0] if len(documents) == 1 else documents
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _gen(config: RunConfig) -> int:
    if config.builtin_dir:
        df = write_corpus(config.builtin_dir)
        print(f"✅ {len(df)} graphs written to '{config.builtin_dir}/'", file=sys.stderr)
        return EXIT_OK
    if not config.family:
        raise ValueError("gen needs --family or --builtin DIR")
    try:
        g = build_family(config.family, config.connection)
    except GraphToolError as e:
        raise InputError(config.family, e.op or "gen", str(e))
    _emit(dumps_graph(g) + "\n", config.output)
    if config.output:
        print(f"✅ {SUBCOMMAND_LABELS['gen']}: wrote {config.output} (n={g.n})", file=sys.stderr)
    return EXIT_OK


def _per_file(config: RunConfig, analyse) -> int:
    if not config.inputs:
        raise ValueError(f"{config.subcommand} needs at least one graph file")
    documents = []
    for path in config.inputs:
        g = _load(path)
        try:
            documents.append({"file": path, **analyse(g)})
        except GraphToolError as e:
            raise InputError(path, e.op or config.subcommand, str(e))
    _emit(_dump(documents), config.output)
    return EXIT_OK


def _spectrum(g: Multigraph, config: RunConfig) -> dict:
    summary = normalized_spectrum(g)
    return {
        **summary.to_dict(),
        "multiplicities": [[float(f"{value:.15g}"), count] for value, count in spectral_multiplicities(summary)],
        "characteristic_polynomial": characteristic_polynomial(g),
    }


def _cheeger(g: Multigraph, config: RunConfig) -> dict:
    d = validate_regular(g)
    profile = expansion_profile(g, config.budgets.subsets)
    summary = normalized_spectrum(g, d)
    return {**profile.to_dict(), "cheeger_sandwich": cheeger_sandwich_check(profile, summary, d)}


def _aut(g: Multigraph, config: RunConfig) -> dict:
    group = automorphism_group(g, config.budgets.aut, config.budgets.aut_order)
    transitive, parts = is_vertex_transitive(group)
    document = {
        **group.to_dict(),
        "vertex_transitive": transitive,
        "orbits": [part.to_list() for part in parts],
        "transitivity_order": None,
        "condition1": None,
    }
    if transitive:
        document["transitivity_order"] = transitivity_order(group)
        try:
            document["condition1"] = condition1_holds(group, config.budgets.group)
        except TooLarge as e:
            print(f"[Aut] ⚠️ {e.describe()}", file=sys.stderr)
    return document


def _bvn(g: Multigraph, config: RunConfig) -> dict:
    cover = bvn_decompose(g)
    return {"d": cover.d, "permutations": cover.to_list(), "verified": verify_cover(g, cover)}


ANALYSES = {"spectrum": _spectrum, "cheeger": _cheeger, "aut": _aut, "bvn": _bvn}


def _verify(config: RunConfig) -> int:
    if config.subcommand == "corpus":
        if config.builtin:
            items = [(e.graph_id, e.graph, e.certificate) for e in generate_corpus()]
        elif config.directory:
            paths = sorted(glob.glob(os.path.join(config.directory, "*.json")))
            if not paths:
                raise InputError(config.directory, "corpus", "no *.json graph files found")
            items = [(os.path.splitext(os.path.basename(p))[0], _load(p), None) for p in paths]
        else:
            items = [(os.path.splitext(os.path.basename(p))[0], _load(p), None) for p in config.inputs]
        if not items:
            raise ValueError("corpus needs --dir DIR, --builtin or graph files")
    else:
        if not config.inputs:
            raise ValueError("verify needs at least one graph file")
        items = [(path, _load(path), None) for path in config.inputs]

    cache = ReportCache()
    reports = run_corpus(items, config.budgets, config.workers, cache)
    _emit(render_reports(reports, config.output_format, single=config.subcommand == "verify"), config.output)

    violated = [r.graph_id for r in reports if r.violated]
    incomplete = [r.graph_id for r in reports if not r.complete]
    if incomplete:
        print(f"⚠️ budget exceeded, partial reports: {', '.join(incomplete)}", file=sys.stderr)
    if violated:
        print(f"❌ THEOREM 1 VIOLATED on: {', '.join(violated)}", file=sys.stderr)
        return EXIT_VIOLATION
    print(f"✅ {SUBCOMMAND_LABELS[config.subcommand]}: {len(reports)} reports, cache {cache.stats()}", file=sys.stderr)
    return EXIT_OK


def run(config: RunConfig) -> int:
    try:
        config.validate()
        if config.subcommand == "gen":
            return _gen(config)
        if config.subcommand in ANALYSES:
            analysis = ANALYSES[config.subcommand]
            return _per_file(config, lambda g: analysis(g, config))
        return _verify(config)
    except InputError as e:
        print(f"❌ {e}", file=sys.stderr)
    except GraphToolError as e:
        print(f"❌ -: {e.describe()}", file=sys.stderr)
    except ValueError as e:
        print(f"❌ {config.subcommand}: {e}", file=sys.stderr)
    except OSError as e:
        print(f"❌ {e.filename or '-'}: {config.subcommand}: {e.strerror or e}", file=sys.stderr)
    return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Spectral interval verification for vertex-transitive graphs")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-subsets", type=int, default=BUDGET_SUBSETS, help="vertex cap for exhaustive expansion search")
    common.add_argument("--budget-aut", type=int, default=BUDGET_AUT, help="vertex cap for automorphism search")
    common.add_argument("--budget-group", type=int, default=BUDGET_GROUP, help="element cap for index-two subgroup analysis")
    common.add_argument("--format", dest="output_format", choices=["json", "csv"], default="json")
    common.add_argument("--workers", type=int, default=WORKERS)
    common.add_argument("-o", "--output", default=None, help="output path (stdout when omitted)")

    sub = parser.add_subparsers(dest="subcommand", required=True)
    gen = sub.add_parser("gen", parents=[common], help=SUBCOMMAND_LABELS["gen"])
    gen.add_argument("--family", help="cycle:n, complete:n, petersen, circulant:n, complete-bipartite:a,b or a group spec")
    gen.add_argument("--connection", help="connection set (group tokens) or circulant jumps")
    gen.add_argument("--builtin", dest="builtin_dir", metavar="DIR", help="write the built-in corpus to DIR")
    for name in ("spectrum", "cheeger", "aut", "bvn", "verify"):
        p = sub.add_parser(name, parents=[common], help=SUBCOMMAND_LABELS[name])
        p.add_argument("inputs", nargs="+", metavar="FILE")
    corpus = sub.add_parser("corpus", parents=[common], help=SUBCOMMAND_LABELS["corpus"])
    corpus.add_argument("inputs", nargs="*", metavar="FILE")
    corpus.add_argument("--dir", dest="directory")
    corpus.add_argument("--builtin", action="store_true", help="verify the built-in corpus")
    return parser


def parse_config(argv: Optional[List[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        subcommand=args.subcommand,
        inputs=list(getattr(args, "inputs", []) or []),
        family=getattr(args, "family", None),
        connection=getattr(args, "connection", None),
        directory=getattr(args, "directory", None),
        builtin=getattr(args, "builtin", False) is True,
        builtin_dir=getattr(args, "builtin_dir", None),
        budgets=Budgets(args.budget_subsets, args.budget_aut, args.budget_group, AUT_ORDER_CAP),
        output_format=args.output_format,
        workers=args.workers,
        output=args.output,
    )


def main(argv: Optional[List[str]] = None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
