"""Command-line front end: build a family of groups, run named suites, emit a report.

    deformcat --groups C2 C3 --ell generic --tasks ssc gamma
    deformcat explain ssc
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .algebra import LambdaAlgebra
from .groups import DEFAULT_ORDER_CAP, direct_product
from .poset import CACHE_ENV, LatticeCache
from .scalars import EllError, EllSpec, SpecializationError, ell
from .suites import DEFAULT_MAX_PAIRS, TASKS, run_suite

log = logging.getLogger("deformcat")

SCHEMA_VERSION = 1

GROUP_HELP = (
    "group specs: Cn (cyclic of order n), Dn (dihedral of ORDER n, so D8 has 8 elements), "
    "Sn (symmetric), Q8, V4, products joined by 'x' (C2xC3), or @path to a table document"
)

ELL_HELP = (
    "ell spec: 'generic' (independent indeterminates l_p at primes p), 'unit' (ell = 1), "
    "'power:d' (ell(n) = n^d) or 'assign:2=3,3=1/2' (values at primes)"
)


@dataclass
class RunConfig:
    groups: List[str]
    ell: str = "generic"
    tasks: List[str] = field(default_factory=lambda: ["all"])
    output: str = "-"
    format: str = "json"
    cache_dir: Optional[str] = None
    seed: int = 0
    order_cap: int = DEFAULT_ORDER_CAP
    max_pairs: int = DEFAULT_MAX_PAIRS

    def task_list(self) -> List[str]:
        out: List[str] = []
        for t in self.tasks:
            names = list(TASKS) if t == "all" else [t]
            for n in names:
                if n not in TASKS:
                    raise ValueError(f"unknown task {n!r}; valid tasks: {', '.join(list(TASKS) + ['all'])}")
                if n not in out:
                    out.append(n)
        return out

    def to_dict(self) -> Dict[str, object]:
        return {
            "groups": list(self.groups),
            "ell": self.ell,
            "tasks": self.task_list(),
            "seed": self.seed,
            "order_cap": self.order_cap,
            "max_pairs": self.max_pairs,
        }


class ConfigError(Exception):
    pass


def build_context(cfg: RunConfig) -> LambdaAlgebra:
    try:
        spec = EllSpec.parse(cfg.ell)
    except (EllError, ValueError) as e:
        raise ConfigError(f"bad ell spec {cfg.ell!r}: {e}") from e
    try:
        alg = LambdaAlgebra(cfg.groups, spec, order_cap=cfg.order_cap)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    # every prime dividing a member order must have a value
    for G in alg.groups:
        try:
            ell(G.order, spec)
        except (SpecializationError, EllError) as e:
            raise ConfigError(f"ell spec {cfg.ell!r} cannot evaluate at {G.name}: {e}") from e
    return alg


def run(cfg: RunConfig) -> Dict[str, object]:
    """Execute the configured tasks in order and return the report document."""
    tasks = cfg.task_list()
    old_env = os.environ.get(CACHE_ENV)
    if cfg.cache_dir:
        os.environ[CACHE_ENV] = cfg.cache_dir
    try:
        alg = build_context(cfg)
        results = []
        for name in tasks:
            log.info("running %s", name)
            try:
                res = run_suite(name, alg, seed=cfg.seed, max_pairs=cfg.max_pairs)
                results.append({"task": name, "ok": bool(res["ok"]), "result": res})
            except Exception as e:  # a task error is a failed suite, not a crash
                log.exception("task %s raised", name)
                results.append({"task": name, "ok": False, "error": f"{type(e).__name__}: {e}"})
        if cfg.cache_dir:
            cache = LatticeCache(cfg.cache_dir)
            for F in alg.groups:
                for G in alg.groups:
                    cache.store(direct_product(F, G))
    finally:
        if cfg.cache_dir:
            if old_env is None:
                os.environ.pop(CACHE_ENV, None)
            else:
                os.environ[CACHE_ENV] = old_env
    return {
        "schema_version": SCHEMA_VERSION,
        "config": cfg.to_dict(),
        "context": {"groups": list(alg.names), "orders": [G.order for G in alg.groups], "dim": alg.dim},
        "tasks": results,
        "ok": all(r["ok"] for r in results),
    }


def render(report: Dict[str, object], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    lines = [
        f"groups: {', '.join(report['context']['groups'])}  ell: {report['config']['ell']}  dim: {report['context']['dim']}"
    ]
    for r in report["tasks"]:
        status = "PASS" if r["ok"] else "FAIL"
        extra = ""
        if "error" in r:
            extra = f"  error: {r['error']}"
        elif r["task"] == "ssc":
            extra = f"  verdict: {r['result']['verdict']} via {r['result']['certificate']}"
        elif r["task"] == "trivial":
            extra = f"  certificate: {r['result']['certificate']}"
        lines.append(f"{status} {r['task']}{extra}")
    lines.append("all suites passed" if report["ok"] else "some suites failed")
    return "\n".join(lines) + "\n"


def explain(task: str) -> str:
    if task == "all":
        return "all: runs every task in order: " + ", ".join(TASKS) + "\n"
    if task not in TASKS:
        raise KeyError(f"unknown task {task!r}; valid tasks: {', '.join(list(TASKS) + ['all'])}")
    return f"{task}: {TASKS[task].summary}\n"


def _run_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="deformcat",
        description="Verify structure of the twisted subgroup-category algebra and the deformed "
        "biset category on a family of small groups. Use 'deformcat explain TASK' for task details.",
    )
    p.add_argument("--groups", nargs="+", required=True, metavar="SPEC", help=GROUP_HELP)
    p.add_argument("--ell", default="generic", help=ELL_HELP)
    p.add_argument("--tasks", nargs="+", default=["all"], metavar="TASK",
                   help=f"tasks to run in order: {', '.join(list(TASKS) + ['all'])}")
    p.add_argument("--output", default="-", help="report path, '-' for standard output")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV),
                   help=f"directory for cached subgroup lattices (default: ${CACHE_ENV})")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks and evaluation points")
    p.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP, help="largest allowed group order")
    p.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS,
                   help="pair loops beyond this size are sampled with the seed")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "explain":
        ep = argparse.ArgumentParser(prog="deformcat explain", description="Describe what a task checks.")
        ep.add_argument("task")
        a = ep.parse_args(argv[1:])
        try:
            sys.stdout.write(explain(a.task))
        except KeyError as e:
            sys.stderr.write(f"deformcat: {e.args[0]}\n")
            return 2
        return 0
    parser = _run_parser()
    a = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(name)s: %(message)s")
    cfg = RunConfig(
        groups=a.groups, ell=a.ell, tasks=a.tasks, output=a.output, format=a.format,
        cache_dir=a.cache_dir, seed=a.seed, order_cap=a.order_cap, max_pairs=a.max_pairs,
    )
    try:
        cfg.task_list()
    except ValueError as e:
        parser.error(str(e))
    try:
        report = run(cfg)
    except ConfigError as e:
        sys.stderr.write(f"deformcat: {e}\n")
        return 2
    text = render(report, cfg.format)
    if cfg.output == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
