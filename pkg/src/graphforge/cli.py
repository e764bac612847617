"""Command-line front-end: generate, eval, sweep, attack, bench.

All randomness flows from one --seed per invocation; repeating a command
with the same seed reproduces byte-identical output files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import evaluate
from .evaluate import (
    AttackConfig,
    Dataset,
    Strategy,
    _seed_from,
    compare,
    dcsbm_strategy,
    dv_attack,
    experiment_csv,
    random_guess_rate,
    run_experiment,
    sgf_strategy,
    trajanovski_strategy,
)
from .forge import ForgeConfig, edge_probabilities, forge, normalized_entropy
from .generators import (
    GIRVAN_COMMUNITIES,
    GIRVAN_NODES,
    GIRVAN_P_IN,
    GIRVAN_P_OUT,
    LancichinettiConfig,
    PlantedPartitionConfig,
    lancichinetti,
    planted_partition,
)
from .graph import Graph, load_attributes, load_edge_list, write_edge_list

SWEEP_CSV_HEADER = "alpha,modularity_ratio,entropy,attack_rate"

_CONFIG_KEYS = {"strategies", "preset", "runs", "graphs", "seed", "output_dir",
                "nodes", "communities", "p_in", "p_out", "mean_degree",
                "mean_community_size", "mixing"}


def _read_graph(path: str) -> Graph:
    return load_edge_list(Path(path).read_text())


def _write_text(directory: str, name: str, text: str) -> Path:
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    target = out_dir / name
    target.write_text(text)
    return target


def _parse_alphas(spec: str) -> list[float]:
    """Either a single decimal or a start:stop:step grid (stop inclusive)."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:stop:step, got {spec!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        alphas = []
        k = 0
        while True:
            a = round(start + k * step, 9)
            if a > stop + 1e-9:
                break
            alphas.append(min(a, 1.0))
            k += 1
        return alphas
    return [float(spec)]


def _parse_strategies(spec: str, rule: str, logistic_k: float, transformation: str) -> list[Strategy]:
    out: list[Strategy] = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if token.startswith("sgf:"):
            alpha = float(token.split(":", 1)[1])
            out.append(sgf_strategy(alpha, rule=rule, logistic_k=logistic_k,
                                    transformation=transformation))
        elif token == "dcsbm":
            out.append(dcsbm_strategy())
        elif token == "trajanovski":
            out.append(trajanovski_strategy())
        else:
            raise ValueError(f"unknown strategy {token!r} (use sgf:<alpha>, dcsbm, trajanovski)")
    if not out:
        raise ValueError("no strategies given")
    return out


def _preset_dataset(args) -> Dataset:
    count = args.graphs
    seed = args.seed
    if args.preset == "girvan":
        graphs = [
            planted_partition(PlantedPartitionConfig(
                n=GIRVAN_NODES, communities=GIRVAN_COMMUNITIES,
                p_in=args.p_in if args.p_in is not None else GIRVAN_P_IN,
                p_out=args.p_out if args.p_out is not None else GIRVAN_P_OUT,
                seed=_seed_from(seed, 100, i)))[0]
            for i in range(count)
        ]
        return Dataset(name="girvan", graphs=tuple(graphs))
    if args.preset == "planted":
        if args.p_in is None or args.p_out is None:
            raise ValueError("preset 'planted' requires --p-in and --p-out")
        nodes = args.nodes if args.nodes is not None else 128
        graphs = [
            planted_partition(PlantedPartitionConfig(
                n=nodes, communities=args.communities,
                p_in=args.p_in, p_out=args.p_out,
                seed=_seed_from(seed, 100, i)))[0]
            for i in range(count)
        ]
        return Dataset(name="planted", graphs=tuple(graphs))
    if args.preset == "lancichinetti":
        graphs = [
            lancichinetti(LancichinettiConfig(
                n=args.nodes if args.nodes is not None else 1000,
                mean_degree=args.mean_degree,
                mean_community_size=args.mean_community_size,
                mixing=args.mixing,
                seed=_seed_from(seed, 100, i)))[0]
            for i in range(count)
        ]
        return Dataset(name="lancichinetti", graphs=tuple(graphs))
    raise ValueError(f"unknown preset {args.preset!r}")


def _cmd_generate(args) -> int:
    graph = _read_graph(args.input)
    cfg = ForgeConfig(alpha=args.alpha, rule=args.rule, logistic_k=args.logistic_k,
                      transformation=args.transformation, seed=args.seed)
    out = forge(graph, cfg)
    target = _write_text(args.output_dir, "generated.el", write_edge_list(out))
    print(target)
    return 0


def _cmd_eval(args) -> int:
    graph = _read_graph(args.input)
    generated = _read_graph(args.generated)
    if args.attrs:
        graph = load_attributes(Path(args.attrs).read_text(), graph)
    report = compare(graph, generated, args.seed)
    lines = ["metric,value"]
    for metric, value in report.as_items():
        lines.append(f"{metric},{evaluate._fmt(value)}")
    target = _write_text(args.output_dir, "metrics.csv", "\n".join(lines) + "\n")
    print(target)
    return 0


def _cmd_sweep(args) -> int:
    graph = _read_graph(args.input)
    alphas = _parse_alphas(args.alphas)
    attack_cfg_base = args.seed_fraction
    lines = [SWEEP_CSV_HEADER]
    for ai, alpha in enumerate(alphas):
        cfg = ForgeConfig(alpha=alpha, rule=args.rule, logistic_k=args.logistic_k,
                          transformation=args.transformation, seed=0)
        entropy = normalized_entropy(edge_probabilities(graph, cfg)).normalized
        ratios: list[float] = []
        rates: list[float] = []
        for run in range(args.runs):
            run_cfg = ForgeConfig(alpha=alpha, rule=args.rule, logistic_k=args.logistic_k,
                                  transformation=args.transformation,
                                  seed=_seed_from(args.seed, ai, run, 0))
            out = forge(graph, run_cfg)
            report = compare(graph, out, _seed_from(args.seed, ai, run, 1))
            if report.modularity_ratio is not None:
                ratios.append(report.modularity_ratio)
            rates.append(dv_attack(graph, out, AttackConfig(
                seed_fraction=args.seed_fraction,
                seed=_seed_from(args.seed, ai, run, 2))))
        ratio = sum(ratios) / len(ratios) if ratios else None
        rate = sum(rates) / len(rates)
        lines.append(f"{alpha:g},{evaluate._fmt(ratio)},{evaluate._fmt(entropy)},{evaluate._fmt(rate)}")
    target = _write_text(args.output_dir, "sweep.csv", "\n".join(lines) + "\n")
    print(target)
    return 0


def _cmd_attack(args) -> int:
    original = _read_graph(args.input)
    anonymized = _read_graph(args.generated)
    rate = dv_attack(original, anonymized,
                     AttackConfig(seed_fraction=args.seed_fraction, seed=args.seed))
    print(f"identification_rate {rate!r}")
    print(f"random_guess_rate {random_guess_rate(original.n, args.seed_fraction)!r}")
    return 0


def _apply_config_file(args) -> None:
    """Overlay a JSON experiment-design file onto the parsed args.

    Config values take precedence over flags; unknown keys are rejected.
    """
    raw = json.loads(Path(args.config).read_text())
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for key, value in raw.items():
        setattr(args, key, value)


def _cmd_bench(args) -> int:
    if args.config:
        _apply_config_file(args)
    strategies = _parse_strategies(args.strategies, args.rule, args.logistic_k,
                                   args.transformation)
    dataset = _preset_dataset(args)
    rows = run_experiment(strategies, [dataset], args.runs, args.seed)
    target = _write_text(args.output_dir, f"bench_{dataset.name}.csv", experiment_csv(rows))
    print(target)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphforge",
        description="Generate random graphs preserving community structure, "
                    "and evaluate them against baselines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="input edge-list file")
        p.add_argument("--output-dir", default=".", help="directory for output files")
        p.add_argument("--seed", type=int, default=0, help="master RNG seed")

    p = sub.add_parser("generate", help="forge one graph from an input edge list")
    common(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--rule", choices=["logistic", "truncate", "scale"], default="truncate")
    p.add_argument("--logistic-k", type=float, default=6.0)
    p.add_argument("--transformation", choices=["modularity", "adjacency"], default="modularity")

    p = sub.add_parser("eval", help="compare an input graph against a generated one")
    common(p)
    p.add_argument("--generated", required=True, help="generated edge-list file")
    p.add_argument("--attrs", help="node attribute CSV for the input graph")

    p = sub.add_parser("sweep", help="alpha sweep: modularity ratio, entropy, attack rate")
    common(p)
    p.add_argument("--alphas", required=True, help="decimal or start:stop:step grid")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--rule", choices=["logistic", "truncate", "scale"], default="truncate")
    p.add_argument("--logistic-k", type=float, default=6.0)
    p.add_argument("--transformation", choices=["modularity", "adjacency"], default="modularity")
    p.add_argument("--seed-fraction", type=float, default=0.05)

    p = sub.add_parser("attack", help="distance-vector de-anonymization rate")
    common(p)
    p.add_argument("--generated", required=True)
    p.add_argument("--seed-fraction", type=float, default=0.05)

    p = sub.add_parser("bench", help="run strategies against a preset dataset")
    common(p, needs_input=False)
    p.add_argument("--preset", choices=["girvan", "planted", "lancichinetti"], default="girvan")
    p.add_argument("--strategies", default="sgf:0.9,dcsbm",
                   help="comma list: sgf:<alpha>, dcsbm, trajanovski")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--graphs", type=int, default=10, help="graphs per preset dataset")
    p.add_argument("--rule", choices=["logistic", "truncate", "scale"], default="truncate")
    p.add_argument("--logistic-k", type=float, default=6.0)
    p.add_argument("--transformation", choices=["modularity", "adjacency"], default="modularity")
    p.add_argument("--nodes", type=int, default=None,
                   help="node count for planted (default 128) / lancichinetti (default 1000)")
    p.add_argument("--communities", type=int, default=4)
    p.add_argument("--p-in", type=float, default=None, dest="p_in")
    p.add_argument("--p-out", type=float, default=None, dest="p_out")
    p.add_argument("--mean-degree", type=float, default=16.0)
    p.add_argument("--mean-community-size", type=float, default=64.0)
    p.add_argument("--mixing", type=float, default=0.1)
    p.add_argument("--config", help="JSON experiment-design file; its values take precedence")

    return parser


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "generate": _cmd_generate,
        "eval": _cmd_eval,
        "sweep": _cmd_sweep,
        "attack": _cmd_attack,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
