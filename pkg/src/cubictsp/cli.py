"""``cubictsp`` command line.

Exit codes: 0 success, 1 bad input, 2 invariant breach.  Errors are also
reported on stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import cubic3, oracle
from .certify import AlphaCertificate, check_certificate, check_component_bound
from .errors import CubicTSPError, InputError, InvalidFactor, InvariantBreach
from .factor import TwoFactor, check_in_graph, initial_two_factor
from .gen import FIXTURES, RNG_NAME, fixture, random_cubic_bipartite, random_cubic_with_diamonds
from .graph import Graph, format_edge_list, parse_edge_list, validate_cubic_bipartite
from .improve import MIN_NODES, run_local_improvement
from .reduce4 import reduce_all
from .tour import solve_bipartite, tour_length

SCHEMA = 1
SEED_ENV = "CUBIC_TSP_SEED"


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    subcommand: str
    inputs: list = field(default_factory=list)
    fixture: Optional[str] = None
    seed: Optional[int] = None
    debug_invariants: bool = False
    trace: bool = False
    provider: str = "tree"
    output: Optional[str] = None
    jobs: int = 1


def rational(x) -> dict:
    x = Fraction(x)
    return {"exact": f"{x.numerator}/{x.denominator}", "decimal": float(x)}


def _emit(obj, output: Optional[str]) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_graph(path: str) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def _graph_from(cfg: RunConfig) -> tuple[str, Graph]:
    if cfg.fixture is not None:
        return cfg.fixture, fixture(cfg.fixture).graph
    if len(cfg.inputs) != 1:
        raise UsageError("expected exactly one --input")
    return cfg.inputs[0], _load_graph(cfg.inputs[0])


def _labels(g: Graph):
    return g.labels if g.labels is not None else tuple(range(g.n))


def _internal(g: Graph):
    labels = _labels(g)
    lookup = {lab: i for i, lab in enumerate(labels)}

    def conv(x):
        if x not in lookup:
            raise InputError(f"unknown node label {x!r}")
        return lookup[x]

    return conv


def _seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer") from None


# subcommands --------------------------------------------------------------

def solve_payload(name: str, g: Graph, debug: bool = False, trace: bool = False) -> dict:
    def tracer(move):
        sys.stderr.write(json.dumps(move.to_json(g.labels)) + "\n")

    res = solve_bipartite(g, debug=debug, trace=tracer if trace else None)
    lab = _labels(g)
    cert = None
    check = None
    if res.certificate is not None:
        cert = res.certificate.to_json()
        check = check_certificate(res.certificate).to_json()
    return {
        "schema": SCHEMA,
        "instance": name,
        "n": res.n,
        "reduced_n": res.reduced_n,
        "components_f1": res.components_f1,
        "components_f2": res.components_f2,
        "chosen": res.chosen,
        "components": res.components,
        "moves": len([m for m in res.moves if m.kind != "blocked"]),
        "blocked": list(res.blocked),
        "factor": res.factor.to_json(lab),
        "tour": res.tour.to_json(lab),
        "tour_length": res.tour.length,
        "bound_5n4": rational(res.bound_5n4()),
        "certificate": cert,
        "certificate_check": check,
    }


def _solve_path(args) -> dict:
    path, debug = args
    return solve_payload(path, _load_graph(path), debug=debug)


def cmd_solve(cfg: RunConfig) -> dict:
    if cfg.fixture is None and len(cfg.inputs) > 1:
        work = [(p, cfg.debug_invariants) for p in cfg.inputs]
        if cfg.jobs > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                results = list(pool.map(_solve_path, work))
        else:
            results = [_solve_path(w) for w in work]
        return {"schema": SCHEMA, "results": results}
    name, g = _graph_from(cfg)
    return solve_payload(name, g, debug=cfg.debug_invariants, trace=cfg.trace)


def cmd_two_factor(cfg: RunConfig, which: str) -> dict:
    _, g = _graph_from(cfg)
    lab = _labels(g)
    if which == "initial":
        f = initial_two_factor(g)
    elif which == "best":
        f = solve_bipartite(g, debug=cfg.debug_invariants).factor
    else:
        validate_cubic_bipartite(g)
        if g.n < MIN_NODES:
            raise InputError(f"F2 is only defined for graphs with at least {MIN_NODES} nodes")
        f = run_local_improvement(g, initial_two_factor(g), debug=cfg.debug_invariants).f2
    out = {"schema": SCHEMA, "which": which, "components": f.components}
    out.update(f.to_json(lab))
    return out


def cmd_reduce(cfg: RunConfig, edge_list_out: Optional[str]) -> dict:
    _, g = _graph_from(cfg)
    validate_cubic_bipartite(g)
    h, stack = reduce_all(g)
    text = format_edge_list(h)
    if edge_list_out:
        with open(edge_list_out, "w") as fh:
            fh.write(text)
    return {
        "schema": SCHEMA,
        "n": g.n,
        "reduced_n": h.n,
        "edge_list": text,
        "records": [r.to_json() for r in stack],
    }


def cmd_verify(cfg: RunConfig, factor_path: Optional[str], solution_path: Optional[str]) -> dict:
    _, g = _graph_from(cfg)
    conv = _internal(g)
    out: dict = {"schema": SCHEMA, "ok": True}
    if factor_path is None and solution_path is None:
        raise UsageError("verify needs --factor and/or --solution")
    if factor_path is not None:
        with open(factor_path) as fh:
            data = json.load(fh)
        f = TwoFactor.from_cycles([[conv(x) for x in c] for c in data["cycles"]], g.n)
        check_in_graph(g, f)
        rep = check_component_bound(f, g.n)
        out["factor"] = {"components": f.components, "limit": rep.limit, "within_bound": rep.ok}
    if solution_path is not None:
        with open(solution_path) as fh:
            sol = json.load(fh)
        order = [conv(x) for x in sol["tour"]]
        if sorted(order) != list(range(g.n)):
            raise InvalidFactor("tour is not a permutation of the nodes")
        length = tour_length(g, order)
        if length != sol["tour_length"]:
            raise InvariantBreach(f"recomputed tour length {length} != reported {sol['tour_length']}")
        bound = Fraction(5 * g.n, 4) - 2
        entry = {"tour_length": length, "bound_5n4": rational(bound)}
        if g.n >= 16 and length > bound:
            raise InvariantBreach(f"tour length {length} exceeds 5n/4 - 2")
        if sol.get("certificate") is not None:
            rep = check_certificate(AlphaCertificate.from_json(sol["certificate"]))
            entry["certificate"] = rep.to_json()
        out["solution"] = entry
    return out


def cmd_oracle(cfg: RunConfig, what: str, nodes) -> dict:
    name, g = _graph_from(cfg)
    lab = _labels(g)
    if what == "two-factors":
        factors = list(oracle.enumerate_two_factors(g))
        rep = oracle.OracleReport(name, what, len(factors),
                                  [f.to_json(lab)["cycles"] for f in factors])
    elif what == "min-cover":
        k, f = oracle.min_cycle_cover_components(g)
        rep = oracle.OracleReport(name, what, k, f.to_json(lab)["cycles"])
    elif what == "tsp":
        rep = oracle.OracleReport(name, what, oracle.exact_tsp(g))
    else:
        if not nodes or len(nodes) != 4:
            raise UsageError("--nodes needs exactly four node labels")
        conv = _internal(g)
        s = [conv(int(x)) for x in nodes]
        rep = oracle.OracleReport(name, what, oracle.is_potential_4cycle_exact(g, s), list(nodes))
    return {"schema": SCHEMA, **rep.to_json()}


def cmd_bounds(n: int, b: Optional[str]) -> dict:
    comb = cubic3.combined_bound(n)
    bb = comb.b_star if b is None else Fraction(b)
    return {
        "schema": SCHEMA,
        "n": n,
        "b": rational(bb),
        "bound_cls": rational(cubic3.bound_cls(n, bb)),
        "bound_ms": rational(cubic3.bound_ms(n, bb)),
        "combined": {
            "b_star": rational(comb.b_star),
            "coefficient": rational(comb.coefficient),
            "bound": rational(comb.coefficient * n),
        },
    }


def cmd_cubic3(cfg: RunConfig) -> dict:
    name, g = _graph_from(cfg)
    res = cubic3.solve_cubic(g, provider=cfg.provider)
    lab = _labels(g)
    return {
        "schema": SCHEMA,
        "instance": name,
        "n": res.n,
        "b": res.b,
        "gadgets": [[lab[v] for v in q.nodes] for q in res.family],
        "contracted_n": res.contracted_n,
        "provider": res.provider,
        "contracted_edges": res.contracted_edges,
        "lifted_edges": res.lifted_edges,
        "gadget_deltas": res.deltas,
        "tour": res.tour.to_json(lab),
        "tour_length": res.tour.length,
        "bound_cls": rational(cubic3.bound_cls(res.n, res.b)),
        "bound_ms": rational(cubic3.bound_ms(res.n, res.b)),
    }


def cmd_generate(kind: str, half_n: Optional[int], n: Optional[int], diamonds: int, seed: int,
                 output: Optional[str], within_factor: bool = False) -> Optional[dict]:
    if kind == "bipartite":
        if half_n is None:
            raise UsageError("--half-n is required for bipartite instances")
        g = random_cubic_bipartite(half_n, seed)
    else:
        if n is None:
            raise UsageError("--n is required for cubic-diamonds instances")
        g = random_cubic_with_diamonds(n, diamonds, seed, within_factor=within_factor)
    text = format_edge_list(g)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
        return {"schema": SCHEMA, "rng": RNG_NAME, "seed": seed, "n": g.n, "output": output}
    sys.stdout.write(text)
    return None


def cmd_fixture(name: str) -> dict:
    fx = fixture(name)
    g = fx.graph
    lab = _labels(g)
    known = {}
    for key, val in fx.known.items():
        if key.endswith("cycles"):
            known[key] = [[lab[v] for v in c] for c in val]
        elif key == "hamilton":
            known[key] = [lab[v] for v in val]
        elif key == "matching":
            known[key] = [[lab[u], lab[v]] for u, v in val]
        else:
            known[key] = val
    return {
        "schema": SCHEMA,
        "name": fx.name,
        "bipartite": fx.bipartite,
        "n": g.n,
        "edges": [[lab[u], lab[v]] for u, v in g.edge_list()],
        "known": known,
    }


# parser -------------------------------------------------------------------

def _add_source(p: argparse.ArgumentParser, many: bool = False) -> None:
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--input", nargs="+" if many else 1, metavar="PATH",
                     help="edge-list file (first line 'n m', then 'u v' per edge, 0-based)")
    grp.add_argument("--fixture", choices=sorted(FIXTURES))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubictsp", description="Graph-TSP on cubic and cubic bipartite graphs.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="tour via improved 2-factor (cubic bipartite)")
    _add_source(s, many=True)
    s.add_argument("--debug-invariants", action="store_true")
    s.add_argument("--trace", action="store_true", help="one JSON line per move on stderr")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--output")

    s = sub.add_parser("two-factor", help="emit a 2-factor as JSON cycles")
    _add_source(s)
    s.add_argument("--which", choices=["initial", "f2", "best"], default="best")
    s.add_argument("--debug-invariants", action="store_true")
    s.add_argument("--output")

    s = sub.add_parser("reduce", help="contract 4-cycles; emit graph and record stack")
    _add_source(s)
    s.add_argument("--edge-list-out")
    s.add_argument("--output")

    s = sub.add_parser("verify", help="re-check a 2-factor or a solve output")
    _add_source(s)
    s.add_argument("--factor")
    s.add_argument("--solution")
    s.add_argument("--output")

    s = sub.add_parser("oracle", help="exhaustive answers for small graphs")
    _add_source(s)
    s.add_argument("--what", choices=["two-factors", "min-cover", "tsp", "potential4"], required=True)
    s.add_argument("--nodes", nargs="*")
    s.add_argument("--output")

    s = sub.add_parser("bounds", help="exact tour bounds for general cubic graphs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--b", help="gadget node count (rational allowed); default n/1459")
    s.add_argument("--output")

    s = sub.add_parser("cubic3", help="chorded 4-cycle pipeline on cubic graphs")
    s.add_argument("action", choices=["solve"])
    _add_source(s)
    s.add_argument("--provider", choices=sorted(cubic3.PROVIDERS), default="tree")
    s.add_argument("--output")

    s = sub.add_parser("generate", help="seeded random instance as an edge list")
    s.add_argument("--kind", choices=["bipartite", "cubic-diamonds"], default="bipartite")
    s.add_argument("--half-n", type=int)
    s.add_argument("--n", type=int, help="base cubic graph size for cubic-diamonds")
    s.add_argument("--diamonds", type=int, default=1)
    s.add_argument("--within-factor", action="store_true",
                   help="plant diamonds on edges of one 2-factor of the base graph")
    s.add_argument("--seed", type=int)
    s.add_argument("--output")

    s = sub.add_parser("fixture", help="dump a named fixture with its known data")
    s.add_argument("name", choices=sorted(FIXTURES))
    s.add_argument("--output")
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.subcommand)
    cfg.inputs = list(getattr(ns, "input", None) or [])
    cfg.fixture = getattr(ns, "fixture", None)
    cfg.seed = getattr(ns, "seed", None)
    cfg.debug_invariants = getattr(ns, "debug_invariants", False)
    cfg.trace = getattr(ns, "trace", False)
    cfg.provider = getattr(ns, "provider", "tree")
    cfg.output = getattr(ns, "output", None)
    cfg.jobs = getattr(ns, "jobs", 1)
    return cfg


def run(argv) -> tuple[Optional[dict], Optional[str]]:
    """Dispatch ``argv``; return the JSON payload and where it should go."""
    ns = build_parser().parse_args(argv)
    cfg = _config(ns)
    cmd = cfg.subcommand
    if cmd == "solve":
        return cmd_solve(cfg), cfg.output
    if cmd == "two-factor":
        return cmd_two_factor(cfg, ns.which), cfg.output
    if cmd == "reduce":
        return cmd_reduce(cfg, ns.edge_list_out), cfg.output
    if cmd == "verify":
        return cmd_verify(cfg, ns.factor, ns.solution), cfg.output
    if cmd == "oracle":
        return cmd_oracle(cfg, ns.what, ns.nodes), cfg.output
    if cmd == "bounds":
        return cmd_bounds(ns.n, ns.b), cfg.output
    if cmd == "cubic3":
        return cmd_cubic3(cfg), cfg.output
    if cmd == "generate":
        # the edge list itself goes to --output; only the summary is JSON
        return cmd_generate(ns.kind, ns.half_n, ns.n, ns.diamonds, _seed(ns.seed), ns.output, ns.within_factor), None
    return cmd_fixture(ns.name), cfg.output


def _fail(exc: BaseException, code: int) -> int:
    sys.stderr.write(json.dumps({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}) + "\n")
    return code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        out, dest = run(argv)
        if out is not None:
            _emit(out, dest)
    except InvariantBreach as exc:
        return _fail(exc, 2)
    except (CubicTSPError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        return _fail(exc, 1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
