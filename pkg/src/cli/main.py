"""
TreeTen - Command line entry point

    python -m src.cli build    --target laguerre --tree binary-tree --L 16
    python -m src.cli compress --target weierstrass --L 16 --seed 1
    python -m src.cli tci      --target multinormal --tree comb --chi-list 4,8,16 --seed 1
    python -m src.cli fredholm --target fredholm-ex1 --L 10 --seed 1
    python -m src.cli mi       --target planewaves --L 8 --seed 1

Exit codes: 0 ok, 2 configuration or topology error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from src.cli.commands import COMMANDS, run_command
from src.cli.config import RunConfig, build_run_config, load_config_document
from src.utils.errors import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, TreetenError, exit_code_for
from src.utils.logging_config import setup_logging

logger = logging.getLogger(__name__)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config document; flags override its fields")
    p.add_argument("--target", help="benchmark name, builder expression, direct:<expr> or tci:<name>")
    p.add_argument("--tree", help="named tree generator (path-sequential, path-interleaved, binary-tree, comb, coupled-binary, star, bident)")
    p.add_argument("--tree-spec", dest="tree_spec", help="JSON tree spec document")
    p.add_argument("--L", type=int, help="binary digits per variable")
    p.add_argument("--n", type=int, help="number of variables for builder expressions")
    p.add_argument("--chi-list", dest="chi_list", help="bond dimensions, '1,2,4' or '[1, 2, 4]'")
    p.add_argument("--tol", type=float)
    p.add_argument("--sweeps", type=int)
    p.add_argument("--iters", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--exact", action="store_true", default=None, help="exact partial trace for mi")
    p.add_argument("--out", help="output directory")
    p.add_argument("--log-level", dest="log_level", help="overrides LOG_LEVEL")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treeten", description="Tree tensor networks for quantized functions")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        _add_common(sub.add_parser(name))
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    document: Dict[str, Any] = load_config_document(args.config) if args.config else {}
    fields = set(RunConfig.model_fields) - {"command", "fredholm"}
    overrides = {k: v for k, v in vars(args).items() if k in fields}
    overrides["command"] = args.command
    return build_run_config(document, overrides)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(level=args.log_level)
    try:
        config = config_from_args(args)
        run_command(config)
    except TreetenError as e:
        print(f"treeten {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return exit_code_for(e)
    except (ArithmeticError, MemoryError) as e:
        print(f"treeten {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as e:
        print(f"treeten {args.command}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    logger.info(f"✅ {args.command} finished, results in {config.out_dir}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
