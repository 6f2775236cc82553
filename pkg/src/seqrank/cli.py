"""Command-line entry point.

Subcommands: sample, aggregate, enumerate, determine, kemeny, realize,
reduce, axioms, experiment.  Exit status 0 on success, 1 on domain or
resource errors (one-line reason on stderr), 2 on usage errors.
Randomized subcommands require an explicit seed; resolved tie-break
orders are echoed to stderr for reproducibility.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import axioms as axioms_mod
from . import determination, experiments, kemeny, majority, reductions
from .core import Profile, Ranking, parse_profile, serialize_profile
from .errors import ResourceLimitError
from .rules import Rule, enumerate_selected, parse_rule, run_rule
from .sampling import (
    MallowsParams,
    generator,
    random_ranking,
    sample_euclidean,
    sample_impartial_culture,
    sample_mallows,
)


def _read_profile(path: str) -> Profile:
    return parse_profile(Path(path).read_text())


def _format_ranking(r: Ranking) -> str:
    return " ".join(str(c) for c in r.order)


def _resolve_tie(args, m: int) -> Ranking:
    if getattr(args, "tiebreak", None):
        tie = Ranking(int(x) for x in args.tiebreak.split(","))
        if tie.m != m:
            raise ValueError(f"tie-break order must cover all {m} candidates")
    elif getattr(args, "tiebreak_seed", None) is not None:
        tie = random_ranking(m, generator(args.tiebreak_seed))
    else:
        tie = Ranking(range(m))
    print(f"tiebreak: {_format_ranking(tie)}", file=sys.stderr)
    return tie


def _cmd_sample(args) -> int:
    if args.model == "mallows":
        if args.norm_phi is None:
            raise ValueError("--norm-phi is required for the mallows model")
        prof = sample_mallows(MallowsParams(args.m, args.norm_phi), args.n, args.seed)
    elif args.model == "euclidean":
        if args.dim is None:
            raise ValueError("--dim is required for the euclidean model")
        prof = sample_euclidean(args.dim, args.m, args.n, args.seed)
    else:
        prof = sample_impartial_culture(args.m, args.n, args.seed)
    text = serialize_profile(prof, comment=f"model={args.model} m={args.m} n={args.n} seed={args.seed}")
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_aggregate(args) -> int:
    profile = _read_profile(args.profile)
    rule = parse_rule(args.rule)
    tie = _resolve_tie(args, profile.m)
    print(_format_ranking(run_rule(rule, profile, tie)))
    return 0


def _cmd_enumerate(args) -> int:
    profile = _read_profile(args.profile)
    rule = parse_rule(args.rule)
    selected = sorted(enumerate_selected(rule, profile, bound=args.bound))
    if args.limit is not None:
        selected = selected[: args.limit]
    for r in selected:
        print(_format_ranking(r))
    return 0


def _cmd_determine(args) -> int:
    profile = _read_profile(args.profile)
    rule = parse_rule(args.rule)
    query = determination.DeterminationQuery(rule, args.candidate, args.position, args.mode)
    if args.algo in ("auto", "brute") and profile.m <= 24:
        answer, witness = determination.decide_with_witness(profile, query)
    else:
        answer = determination.decide(profile, query, algo=args.algo)
        witness = None
        if answer:
            _, witness = determination.decide_with_witness(profile, query)
    if answer:
        print("YES")
        if witness is not None:
            print("witness: " + " ".join(str(c) for c in witness))
    else:
        print("NO")
    return 0


def _cmd_kemeny(args) -> int:
    profile = _read_profile(args.profile)
    selected, optimum = kemeny.kemeny_rankings(profile)
    print(f"optimum {optimum}")
    out = sorted(selected)
    if args.limit is not None:
        out = out[: args.limit]
    for r in out:
        print(_format_ranking(r))
    return 0


def _cmd_realize(args) -> int:
    text = Path(args.input).read_text()
    if args.mode == "mcgarvey":
        prof = majority.mcgarvey_realize(majority.parse_graph(text))
    else:
        prof = majority.bilevel_realize(majority.parse_bilevel(text))
    out = serialize_profile(prof, comment=f"realized mode={args.mode} from {args.input}")
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return 0


def _cmd_reduce(args) -> int:
    text = Path(args.input).read_text()
    k = None
    if args.type == "stv-sat":
        profile, d = reductions.stv_from_sat(reductions.parse_sat(text))
    elif args.type == "stv-vc":
        graph, t = reductions.parse_graph_instance(text)
        if t is None:
            raise ValueError("instance file must carry a 't <size>' line")
        profile, d = reductions.stv_from_cubic_vc(graph, t)
    elif args.type == "coombs-clique":
        graph, kk = reductions.parse_graph_instance(text)
        if kk is None:
            raise ValueError("instance file must carry a 'k <size>' line")
        profile, d = reductions.coombs_from_regular_clique(graph, kk)
    elif args.type == "baldwin-vc":
        graph, t = reductions.parse_graph_instance(text)
        if t is None:
            raise ValueError("instance file must carry a 't <size>' line")
        profile, d = reductions.baldwin8_from_cubic_vc(graph, t)
    else:
        inst = reductions.parse_hitting_set(text)
        profile, d, k = reductions.seqwi_veto_topk_from_hitting_set(inst)
    note = f"reduction type={args.type} designated={d}" + (f" k={k}" if k else "")
    out = serialize_profile(profile, comment=note)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    print(f"designated {d}" + (f"\nk {k}" if k else ""))
    return 0


def _cmd_axioms(args) -> int:
    rule = parse_rule(args.rule)
    if args.search:
        if args.seed is None:
            print("error: --search requires an explicit --seed", file=sys.stderr)
            raise SystemExit(2)
        witness = axioms_mod.search_counterexample(
            args.axiom, rule, m_max=args.m_max, n_max=args.n_max, budget=args.budget, seed=args.seed
        )
        if witness is None:
            print("NO-VIOLATION")
        else:
            print("VIOLATION")
            profiles = witness if isinstance(witness, tuple) else (witness,)
            for part in profiles:
                if isinstance(part, Profile):
                    sys.stdout.write(serialize_profile(part))
                else:
                    print(f"clones: {sorted(part)}")
        return 0
    witnesses = [_read_profile(p) for p in args.check]
    arity = axioms_mod.ARITY[args.axiom]
    if arity == 2:
        if len(witnesses) != 2:
            raise ValueError("this axiom needs two profile files")
        witness = tuple(witnesses)
    elif arity == "clones":
        if len(witnesses) != 1 or not args.clones:
            raise ValueError("this axiom needs one profile file and --clones")
        witness = (witnesses[0], frozenset(int(x) for x in args.clones.split(",")))
    else:
        if len(witnesses) != 1:
            raise ValueError("this axiom needs one profile file")
        witness = witnesses[0]
    result = axioms_mod.check_axiom_instance(args.axiom, rule, witness)
    print("HOLDS" if result.holds else f"VIOLATED: {result.detail}")
    return 0


def _cmd_experiment(args) -> int:
    config = experiments.ExperimentConfig.from_json(Path(args.config).read_text())
    if args.threads is not None:
        from dataclasses import replace

        config = replace(config, threads=args.threads)
    written = experiments.run_experiment(config, args.output)
    for family, path in written.items():
        print(f"{family}: {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqrank", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a synthetic profile")
    p.add_argument("--model", choices=("mallows", "euclidean", "ic"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--norm-phi", type=float, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("aggregate", help="run one rule resolutely")
    p.add_argument("--rule", required=True)
    p.add_argument("--tiebreak", help="comma-separated candidate priority order")
    p.add_argument("--tiebreak-seed", type=int, default=None)
    p.add_argument("profile")
    p.set_defaults(func=_cmd_aggregate)

    p = sub.add_parser("enumerate", help="list every selected ranking")
    p.add_argument("--rule", required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("profile")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("determine", help="position determination query")
    p.add_argument("--rule", required=True)
    p.add_argument("--candidate", type=int, required=True)
    p.add_argument("--position", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "topk"), default="exact")
    p.add_argument("--algo", choices=("auto", "dp", "stv", "bottomlist", "brute"), default="auto")
    p.add_argument("profile")
    p.set_defaults(func=_cmd_determine)

    p = sub.add_parser("kemeny", help="exact Kemeny rankings")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("profile")
    p.set_defaults(func=_cmd_kemeny)

    p = sub.add_parser("realize", help="profile from a majority graph")
    p.add_argument("--mode", choices=("mcgarvey", "bilevel"), required=True)
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("reduce", help="hardness-reduction profile from an instance")
    p.add_argument(
        "--type",
        choices=("stv-sat", "stv-vc", "coombs-clique", "baldwin-vc", "seqwiveto-hs"),
        required=True,
    )
    p.add_argument("--input", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("axioms", help="check or search one axiom for one rule")
    p.add_argument("--axiom", choices=axioms_mod.AXIOMS, required=True)
    p.add_argument("--rule", required=True)
    p.add_argument("--search", action="store_true")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--check", nargs="*", default=[], help="witness profile files")
    p.add_argument("--clones", help="comma-separated clone candidate ids")
    p.set_defaults(func=_cmd_axioms)

    p = sub.add_parser("experiment", help="run a configured sweep to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ResourceLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
