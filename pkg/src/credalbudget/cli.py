"""Command-line front end.

Commands: matrix, maximality, solve, decide, oracle, graph, experiment,
examples. Problems come from JSON files (or matrix CSV re-ingested as a
precomputed problem). Exit codes: 0 success, 1 malformed input, 2 infeasible
credal set, 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .bench import (
    consistency_aggregate,
    consistency_record_rows,
    negativity_aggregate,
    negativity_record_rows,
    run_consistency_trials,
    run_negativity_trials,
    write_csv,
)
from .budget import (
    Criterion,
    budgeted_rule,
    domination_graph_dot,
    oracle_solve,
    solve_greedy,
    solve_maximin,
    solve_minimax,
)
from .errors import GuardExceededError, InfeasibleCredalError, ProblemFormatError
from .gen import GenConfig
from .instances import builtin_instances, verify_instance
from .problemio import load_problem
from .regret import NEG_INFINITY, maximal_acts, matrix_to_csv

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INFEASIBLE = 2
EXIT_GUARD = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are malformed input: exit 1
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_MALFORMED)


def _table_value(value: float) -> str:
    if value == NEG_INFINITY:
        return "-inf"
    text = f"{value:.2f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _cell_value(value: float) -> str:
    text = f"{value:.2f}"
    if text == "-0.00":
        text = "0.00"
    return text[:-1] if text.endswith("0") else text  # 1-2 decimals


def _data_value(value: float):
    return "-inf" if value == NEG_INFINITY else round(value, 6)


def _name_set(names) -> str:
    return "{" + ", ".join(names) + "}"


def _print_table(rows: list[list[str]]) -> None:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    for row in rows:
        print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())


def _emit_matrix(matrix, fmt: str) -> None:
    if fmt == "csv":
        sys.stdout.write(matrix_to_csv(matrix))
    elif fmt == "json":
        print(
            json.dumps(
                {
                    "acts": list(matrix.names),
                    "matrix": [
                        [round(float(v), 6) for v in row] for row in matrix.entries
                    ],
                },
                indent=2,
            )
        )
    else:
        head = [""] + list(matrix.names)
        rows = [head]
        for j in range(matrix.n):
            row = [matrix.names[j]]
            for i in range(matrix.n):
                row.append("-" if i == j else _cell_value(matrix.entries[i, j]))
            rows.append(row)
        _print_table(rows)


def _emit_names(names, fmt: str, key: str) -> None:
    if fmt == "csv":
        print(",".join(names))
    elif fmt == "json":
        print(json.dumps({key: list(names)}, indent=2))
    else:
        print(_name_set(names))


def _emit_solution(solution, names, fmt: str) -> None:
    chosen = [names[i] for i in solution.subset]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["subset", "value", "criterion", "tie_count", "tie_break"])
        writer.writerow(
            [" ".join(chosen), _data_value(solution.value), solution.criterion.value,
             solution.tie_count, solution.tie_break]
        )
        sys.stdout.write(buf.getvalue())
    elif fmt == "json":
        print(
            json.dumps(
                {
                    "subset": chosen,
                    "value": _data_value(solution.value),
                    "criterion": solution.criterion.value,
                    "tie_count": solution.tie_count,
                    "tie_break": solution.tie_break,
                },
                indent=2,
            )
        )
    else:
        line = f"{_name_set(chosen)}  value {_table_value(solution.value)}"
        if solution.criterion in (Criterion.ORACLE_MINIMAX, Criterion.ORACLE_MAXIMIN):
            line += f"  ties {solution.tie_count}"
        print(line)


def _add_common(sub, *, with_k: bool, criteria=None) -> None:
    sub.add_argument("--problem", "-p", required=True, help="problem file (.json or matrix .csv)")
    sub.add_argument(
        "--format", "-f", choices=("table", "csv", "json"), default="table", dest="fmt"
    )
    if with_k:
        sub.add_argument("--k", type=int, required=True, help="budget (>= 1)")
    if criteria:
        sub.add_argument("--criterion", choices=criteria, default=criteria[0])
        sub.add_argument("--tie-break", choices=("lex", "seeded"), default="lex")
        sub.add_argument("--seed", type=int, default=None, help="seed for --tie-break seeded")


def build_parser() -> _Parser:
    parser = _Parser(prog="credalbudget", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    _add_common(commands.add_parser("matrix", help="print the pairwise regret table"), with_k=False)
    _add_common(commands.add_parser("maximality", help="print the undominated acts"), with_k=False)
    _add_common(
        commands.add_parser("solve", help="optimal size-k subset for a criterion"),
        with_k=True,
        criteria=("minimax", "maximin", "greedy-minimax", "greedy-maximin"),
    )
    _add_common(
        commands.add_parser("decide", help="apply the k-budgeted decision rule"),
        with_k=True,
        criteria=("minimax", "maximin"),
    )
    _add_common(
        commands.add_parser("oracle", help="brute-force optimum with tie count"),
        with_k=True,
        criteria=("minimax", "maximin"),
    )

    graph = commands.add_parser("graph", help="export the domination graph as DOT")
    graph.add_argument("--problem", "-p", required=True)
    graph.add_argument("--alpha", type=float, required=True, help="cover level")
    graph.add_argument("--output", "-o", default=None, help="write DOT here instead of stdout")

    exp = commands.add_parser("experiment", help="run a randomized experiment protocol")
    exp.add_argument("--protocol", choices=("consistency", "negativity"), required=True)
    exp.add_argument("--trials", type=int, default=None, help="default: 100 consistency, 50 negativity")
    exp.add_argument("--seed", type=int, default=0)
    exp.add_argument("--out-dir", default="experiments")
    exp.add_argument("--acts", type=int, default=20)
    exp.add_argument("--states", type=int, default=5)
    exp.add_argument("--vertices", type=int, default=20)
    exp.add_argument("--target-dm", type=int, default=6, help="consistency protocol only")
    exp.add_argument("--k-min", type=int, default=2, help="consistency protocol only")
    exp.add_argument("--k-max", type=int, default=6, help="consistency protocol only")
    exp.add_argument("--dm-sizes", default="2,5,10", help="negativity protocol only")
    exp.add_argument("--offsets", default="0,1,2,3", help="negativity protocol only")

    examples = commands.add_parser("examples", help="verify bundled instances")
    examples.add_argument("--only", default=None, help="verify a single instance")
    examples.add_argument("--dump", default=None, help="write bundled problem files to a directory")

    return parser


def _cmd_matrix(args) -> int:
    _emit_matrix(load_problem(args.problem).regret_matrix(), args.fmt)
    return EXIT_OK


def _cmd_maximality(args) -> int:
    matrix = load_problem(args.problem).regret_matrix()
    names = [matrix.names[i] for i in maximal_acts(matrix)]
    _emit_names(names, args.fmt, "maximality")
    return EXIT_OK


def _require_k(args) -> int:
    if args.k < 1:
        raise ProblemFormatError(f"k: must be >= 1, got {args.k}")
    return args.k


def _cmd_solve(args) -> int:
    matrix = load_problem(args.problem).regret_matrix()
    k = _require_k(args)
    crit = Criterion(args.criterion)
    if crit is Criterion.MINIMAX:
        solution = solve_minimax(matrix, k, tie_break=args.tie_break, seed=args.seed)
    elif crit is Criterion.MAXIMIN:
        solution = solve_maximin(matrix, k, tie_break=args.tie_break, seed=args.seed)
    else:
        solution = solve_greedy(matrix, k, crit, tie_break=args.tie_break, seed=args.seed)
    _emit_solution(solution, matrix.names, args.fmt)
    return EXIT_OK


def _cmd_decide(args) -> int:
    matrix = load_problem(args.problem).regret_matrix()
    chosen = budgeted_rule(
        matrix, _require_k(args), Criterion(args.criterion),
        tie_break=args.tie_break, seed=args.seed,
    )
    _emit_names([matrix.names[i] for i in chosen], args.fmt, "decision")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    matrix = load_problem(args.problem).regret_matrix()
    solution = oracle_solve(matrix, _require_k(args), Criterion(args.criterion))
    _emit_solution(solution, matrix.names, args.fmt)
    return EXIT_OK


def _cmd_graph(args) -> int:
    matrix = load_problem(args.problem).regret_matrix()
    dot = domination_graph_dot(matrix, args.alpha)
    if args.output:
        Path(args.output).write_text(dot)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def _cmd_experiment(args) -> int:
    out_dir = Path(args.out_dir)
    if args.protocol == "consistency":
        trials = 100 if args.trials is None else args.trials
        config = GenConfig(
            n_acts=args.acts,
            n_states=args.states,
            n_vertices=args.vertices,
            target_dm=args.target_dm,
            seed=0,
        )
        records = run_consistency_trials(trials, config, range(args.k_min, args.k_max + 1), args.seed)
        trial_rows = consistency_record_rows(records)
        agg_rows = consistency_aggregate(records)
    else:
        trials = 50 if args.trials is None else args.trials
        dm_sizes = [int(x) for x in args.dm_sizes.split(",") if x]
        offsets = [int(x) for x in args.offsets.split(",") if x]
        records = run_negativity_trials(
            trials, dm_sizes, offsets, args.seed,
            n_acts=args.acts, n_states=args.states, n_vertices=args.vertices,
        )
        trial_rows = negativity_record_rows(records)
        agg_rows = negativity_aggregate(records)
    trials_path = out_dir / f"{args.protocol}_trials.csv"
    agg_path = out_dir / f"{args.protocol}_aggregate.csv"
    write_csv(trials_path, trial_rows)
    write_csv(agg_path, agg_rows)
    header = list(agg_rows[0].keys())
    _print_table([header] + [[str(r[c]) for c in header] for r in agg_rows])
    print(f"wrote {trials_path} and {agg_path}")
    return EXIT_OK


def _cmd_examples(args) -> int:
    instances = builtin_instances()
    if args.only is not None:
        if args.only not in instances:
            raise ProblemFormatError(
                f"instance: unknown name {args.only!r}; choose from {sorted(instances)}"
            )
        instances = {args.only: instances[args.only]}
    if args.dump:
        dump_dir = Path(args.dump)
        dump_dir.mkdir(parents=True, exist_ok=True)
        for name, inst in instances.items():
            path = dump_dir / f"{name}.json"
            path.write_text(json.dumps(inst.problem, indent=2) + "\n")
            print(f"wrote {path}")
    failed = False
    for name, inst in instances.items():
        issues = verify_instance(inst)
        if issues:
            failed = True
            print(f"{name}: MISMATCH")
            for issue in issues:
                print(f"  {issue}")
        else:
            print(f"{name}: ok")
    return EXIT_MALFORMED if failed else EXIT_OK


_HANDLERS = {
    "matrix": _cmd_matrix,
    "maximality": _cmd_maximality,
    "solve": _cmd_solve,
    "decide": _cmd_decide,
    "oracle": _cmd_oracle,
    "graph": _cmd_graph,
    "experiment": _cmd_experiment,
    "examples": _cmd_examples,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except InfeasibleCredalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ProblemFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
