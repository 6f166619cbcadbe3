"""
Command line: solve, verify, reduce and generate path-coloring instances.

  path-coloring solve --algo greedy --in inst.txt --out sol.txt
  path-coloring verify --in inst.txt --coloring sol.txt
  path-coloring reduce lcd-dped --in lcd.txt --out dped.txt
  path-coloring gen dped --seed 7 --n 12 --c 3 --d 1 --p 2

Exit codes: 0 feasible / valid, 1 infeasible / invalid, 2 error.
"""
import argparse
import logging
import sys
from pathlib import Path

from path_coloring.approx import solve_approx
from path_coloring.config import SolverLimits, get_limits
from path_coloring.errors import PathColoringError, PositionOutOfRange
from path_coloring.generators import random_dped, random_lcd, random_mss, random_non_alternating_lcd, random_pce
from path_coloring.greedy import solve_greedy
from path_coloring.instance_io import (
    parse_coloring,
    parse_word,
    read_instance,
    serialize_coloring,
    serialize_instance,
    serialize_word,
)
from path_coloring.models import CmplInstance, DPEDInstance, LCDInstance, MssInstance, UnitIntervalPce, kind_of
from path_coloring.oracle import oracle_cmpl, oracle_dped, oracle_lcd, oracle_pce
from path_coloring.parikh import (
    build_cmpl_automaton,
    decide_parikh_membership,
    dped_automaton,
    dump_nfa,
    solve_dped_fpt,
)
from path_coloring.reductions import (
    concatenate_paths,
    reduce_dpe_to_dped,
    reduce_lcd_to_dped,
    reduce_mss_to_lcd,
    reduce_pce_to_dpe,
)
from path_coloring.verify import dped_violation, lcd_violation, word_violation
from path_coloring.window_dp import solve_dlc_dp, solve_dped_dp

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2

ALGORITHMS = ("oracle", "greedy", "dp", "dlc", "approx", "fpt")

# algorithm -> instance types it accepts
ACCEPTS = {
    "oracle": (DPEDInstance, LCDInstance, CmplInstance, UnitIntervalPce),
    "greedy": (DPEDInstance,),
    "dp": (DPEDInstance,),
    "dlc": (LCDInstance,),
    "approx": (DPEDInstance,),
    "fpt": (DPEDInstance, CmplInstance),
}

REDUCTIONS = {
    "mss-lcd": (MssInstance, reduce_mss_to_lcd),
    "lcd-dped": (LCDInstance, reduce_lcd_to_dped),
    "dpe-dped": (DPEDInstance, reduce_dpe_to_dped),
    "pce-dpe": (UnitIntervalPce, reduce_pce_to_dpe),
}


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")


def _solve_word(instance: CmplInstance, algo: str, limits: SolverLimits, dump: Path | None) -> tuple[int, ...] | None:
    if algo == "oracle":
        return oracle_cmpl(instance.nfa, instance.query.target, instance.query.constraints, limits)
    try:
        product, target = build_cmpl_automaton(instance.nfa, instance.query)
    except PositionOutOfRange as e:
        logger.info("solve: %s", e)
        return None
    if dump is not None:
        dump.write_text(dump_nfa(product), encoding="utf-8")
    word = decide_parikh_membership(product, target, limits)
    if word is None:
        return None
    return tuple(letter for letter in word if letter <= instance.nfa.alphabet_size)


def cmd_solve(args: argparse.Namespace) -> int:
    instance = read_instance(args.input)
    if not isinstance(instance, ACCEPTS[args.algo]):
        raise PathColoringError(f"--algo {args.algo} does not take {kind_of(instance).value} instances")
    if args.dump_automaton is not None and args.algo != "fpt":
        raise PathColoringError("--dump-automaton needs --algo fpt")
    limits = get_limits(args.budget, "cmpl" if args.algo == "oracle" and isinstance(instance, CmplInstance) else args.algo)

    if isinstance(instance, CmplInstance):
        word = _solve_word(instance, args.algo, limits, args.dump_automaton)
        if word is None:
            logger.info("solve: no word meets the query")
            return EXIT_NO
        _emit(serialize_word(word), args.output)
        return EXIT_OK

    if args.algo == "approx":
        coloring, report = solve_approx(instance, limits)
        comments = [f"achieved_error {report.achieved_error}", f"bound {report.bound}"]
        comments += [f"deviation {color} {dev}" for color, dev in enumerate(report.deviations, start=1)]
        comments.append(f"bound_applies {'yes' if report.bound_applies else 'no'}")
        logger.info("solve: approximation error %d, bound %d", report.achieved_error, report.bound)
        _emit(serialize_coloring(coloring, comments), args.output)
        return EXIT_OK

    if args.algo == "fpt" and args.dump_automaton is not None:
        single = instance if instance.topology.is_single_path else concatenate_paths(instance)[0]
        product, _ = dped_automaton(single)
        args.dump_automaton.write_text(dump_nfa(product), encoding="utf-8")
    if args.algo == "oracle":
        solvers = {DPEDInstance: oracle_dped, LCDInstance: oracle_lcd, UnitIntervalPce: oracle_pce}
        coloring = solvers[type(instance)](instance, limits)
    elif args.algo == "greedy":
        coloring = solve_greedy(instance)
    elif args.algo == "dp":
        coloring = solve_dped_dp(instance, limits)
    elif args.algo == "dlc":
        coloring = solve_dlc_dp(instance, limits)
    else:
        coloring = solve_dped_fpt(instance, limits)
    if coloring is None:
        logger.info("solve: %s reports infeasible", args.algo)
        return EXIT_NO
    logger.info("solve: %s found a coloring of %d vertices", args.algo, coloring.n)
    _emit(serialize_coloring(coloring), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    instance = read_instance(args.input)
    text = args.coloring.read_text(encoding="utf-8")
    if isinstance(instance, DPEDInstance):
        problem = dped_violation(instance, parse_coloring(text))
    elif isinstance(instance, LCDInstance):
        problem = lcd_violation(instance, parse_coloring(text))
    elif isinstance(instance, CmplInstance):
        problem = word_violation(instance, parse_word(text))
    else:
        raise PathColoringError(f"cannot verify {kind_of(instance).value} solutions")
    if problem:
        print(f"invalid: {problem}")
        return EXIT_NO
    print("valid")
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    source_type, reduce = REDUCTIONS[args.reduction]
    instance = read_instance(args.input)
    if not isinstance(instance, source_type):
        raise PathColoringError(f"{args.reduction} needs a {source_type.__name__}, got {kind_of(instance).value}")
    image = reduce(instance)
    logger.info("reduce: %s produced a %s instance", args.reduction, kind_of(image).value)
    _emit(serialize_instance(image), args.output)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "dped":
        instance = random_dped(args.seed, args.n, args.c, args.d, args.p, end=args.end)
    elif args.kind == "lcd" and args.non_alternating:
        instance = random_non_alternating_lcd(args.seed, args.n, args.c)
    elif args.kind == "lcd":
        instance = random_lcd(args.seed, args.n, args.c, args.d, args.list_size, with_demands=not args.no_demands)
    elif args.kind == "mss":
        instance = random_mss(args.seed, args.c, args.n)
    else:
        instance = random_pce(args.seed, args.n, args.c, args.p)
    _emit(serialize_instance(instance), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="path-coloring", description="Distance coloring of paths with precoloring and demands.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="Solve an instance")
    solve.add_argument("--algo", choices=ALGORITHMS, required=True)
    solve.add_argument("--in", dest="input", type=Path, required=True)
    solve.add_argument("--out", dest="output", type=Path, help="Solution file (default: stdout)")
    solve.add_argument("--budget", type=int, help="Override the size limit of the chosen algorithm")
    solve.add_argument("--dump-automaton", type=Path, help="fpt: write the automaton as a transition list")
    solve.set_defaults(run=cmd_solve)

    verify = commands.add_parser("verify", help="Check a solution against an instance")
    verify.add_argument("--in", dest="input", type=Path, required=True)
    verify.add_argument("--coloring", type=Path, required=True)
    verify.set_defaults(run=cmd_verify)

    reduce = commands.add_parser("reduce", help="Transform an instance by a hardness reduction")
    reduce.add_argument("reduction", choices=sorted(REDUCTIONS))
    reduce.add_argument("--in", dest="input", type=Path, required=True)
    reduce.add_argument("--out", dest="output", type=Path)
    reduce.set_defaults(run=cmd_reduce)

    gen = commands.add_parser("gen", help="Generate a seeded random instance")
    gen.add_argument("kind", choices=("dped", "lcd", "mss", "pce"))
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--n", type=int, required=True, help="Vertices (mss: items, pce: intervals)")
    gen.add_argument("--c", type=int, required=True, help="Colors (mss: dimension)")
    gen.add_argument("--d", type=int, default=1)
    gen.add_argument("--p", type=int, default=0, help="Precolored vertices")
    gen.add_argument("--end", action="store_true", help="dped: precolor only a prefix and a suffix")
    gen.add_argument("--non-alternating", action="store_true", help="lcd: non-alternating lists, normalized ends")
    gen.add_argument("--list-size", type=int, default=2, help="lcd: maximum random list size")
    gen.add_argument("--no-demands", action="store_true", help="lcd: emit a distance list coloring instance")
    gen.add_argument("--out", dest="output", type=Path)
    gen.set_defaults(run=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%H:%M:%S",
    )
    try:
        return args.run(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
