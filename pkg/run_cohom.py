"""Command line interface for toric line bundle cohomology.

Subcommands ``info``, ``cohom``, ``table`` and ``verify`` read a fan JSON
file; settings come from YAML with optional overrides on the command line.
Exit codes: 0 success, 1 verification mismatch, 2 input error.

Negative values may follow ``--divisor`` or ``--box`` as a separate token
(``--divisor -3,0,0``) or attached with ``=``.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from tqdm.auto import tqdm

from toric_cohom.core.algorithm import CohomologyEngine, SRSet, USRSizeError
from toric_cohom.core.box import default_box, parse_box
from toric_cohom.core.config_loader import deep_update, load_config
from toric_cohom.core.fan import Fan, FanFormatError, load_fan, validate
from toric_cohom.core.logger import setup_logger
from toric_cohom.core.oracle import Oracle, verify
from toric_cohom.core.reporting import (
    cohomology_record,
    dumps,
    format_cohomology,
    format_info,
    format_report,
    info_record,
    report_record,
    table_frame,
    write_json,
)
from toric_cohom.core.simplicial import ComplexSizeError, mask_of

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2

VALUE_FLAGS = ("--divisor", "--box")
NEGATIVE_VALUE = re.compile(r"^-\d[\d,:-]*$")


def attach_negative_values(argv: Sequence[str]) -> List[str]:
    """Join ``--divisor -3,0,0`` into ``--divisor=-3,0,0`` so argparse takes it as a value."""
    out: List[str] = []
    for token in argv:
        if out and out[-1] in VALUE_FLAGS and NEGATIVE_VALUE.match(token):
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Path to YAML config (defaults are built in).")
    common.add_argument("--json", action="store_true", help="Machine-readable output.")
    common.add_argument("--out", help="Also write the JSON record to this path.")
    common.add_argument(
        "--log-file",
        dest="log_file",
        help="Override paths.log_file; an empty string disables the file log.",
    )
    common.add_argument("--log-level", dest="log_level", help="Override logging.level.")
    common.add_argument(
        "--progress",
        choices=["off", "on"],
        default="off",
        help="Progress bars for table rows and verified classes.",
    )
    common.add_argument("--usr-cap", dest="usr_cap", type=int, help="Override algorithm.usr_cap.")
    common.add_argument(
        "--no-dual-filter",
        dest="no_dual_filter",
        action="store_true",
        help="Sum over all of U_SR instead of the dual-filtered subset.",
    )
    common.add_argument(
        "--sr",
        help='Replace the SR generators, e.g. "0,1;1,2" (diagnostic negative control).',
    )

    p = argparse.ArgumentParser(prog="toric-cohom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    info = sub.add_parser("info", parents=[common], help="Fan diagnostics, SR data and Lambda_I homology.")
    info.add_argument("fan", help="Fan JSON file.")

    cohom = sub.add_parser("cohom", parents=[common], help="h^i of one line bundle.")
    cohom.add_argument("fan", help="Fan JSON file.")
    cohom.add_argument("--divisor", required=True, help="Coefficients a_0,...,a_{n-1} of the divisor.")
    cohom.add_argument("--explain", action="store_true", help="Show the per-I breakdown.")

    table = sub.add_parser("table", parents=[common], help="h-vectors over a box of divisors.")
    table.add_argument("fan", help="Fan JSON file.")
    table.add_argument(
        "--box",
        required=True,
        help='Inclusive ranges "lo:hi[,lo:hi...]" for the leading coefficients; the rest stay 0.',
    )

    ver = sub.add_parser("verify", parents=[common], help="Compare the algorithm with the oracle on a box.")
    ver.add_argument("fan", help="Fan JSON file.")
    ver.add_argument("--box", help='"lo:hi" for every coordinate, or one range per ray. Default [-(d+2), d+1].')

    argv = sys.argv[1:] if argv is None else argv
    return p.parse_args(attach_negative_values(argv))


def parse_divisor(text: str, n: int) -> List[int]:
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"divisor must be comma-separated integers, got {text!r}") from exc
    if len(values) != n:
        raise ValueError(f"divisor has {len(values)} coefficients, fan has {n} rays")
    return values


def parse_sr(text: str, n: int) -> SRSet:
    try:
        gens = [mask_of(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise ValueError(f'--sr must be like "0,1;1,2", got {text!r}') from exc
    if any(g >> n for g in gens):
        raise ValueError(f"--sr uses a ray index outside 0..{n - 1}")
    return SRSet(n, tuple(gens))


def load_checked(path: str) -> Fan:
    fan = load_fan(path)
    diag = validate(fan)
    if not diag.ok:
        raise FanFormatError(f"{fan.name}: invalid fan: " + "; ".join(diag.messages))
    return fan


def build_engine(fan: Fan, cfg: Dict[str, Any], args: argparse.Namespace) -> CohomologyEngine:
    sr = parse_sr(args.sr, fan.n_rays) if args.sr else None
    return CohomologyEngine(
        fan,
        usr_cap=cfg["algorithm"]["usr_cap"],
        dual_filter=cfg["algorithm"]["dual_filter"],
        sr=sr,
    )


def emit(args: argparse.Namespace, cfg: Dict[str, Any], record: Any, text: str) -> None:
    if args.json:
        print(dumps(record, indent=cfg["output"]["indent"]))
    else:
        print(text)
    if args.out:
        write_json(Path(args.out), record)


def cmd_info(args: argparse.Namespace, cfg: Dict[str, Any]) -> int:
    fan = load_fan(args.fan)
    diag = validate(fan)
    if not diag.ok:
        for msg in diag.messages:
            print(f"invalid fan {fan.name}: {msg}", file=sys.stderr)
        return EXIT_INPUT
    engine = build_engine(fan, cfg, args)
    record = info_record(engine, diag)
    emit(args, cfg, record, format_info(record))
    return EXIT_OK


def cmd_cohom(args: argparse.Namespace, cfg: Dict[str, Any]) -> int:
    fan = load_checked(args.fan)
    divisor = parse_divisor(args.divisor, fan.n_rays)
    engine = build_engine(fan, cfg, args)
    vec = engine.cohomology(divisor)
    record = cohomology_record(vec)
    if args.explain:
        anchor = engine.group.particular_preimage(vec.divisor_class)
        record["anchor"] = anchor
        record["character"] = engine.group.principal_witness([a - b for a, b in zip(divisor, anchor)])
    emit(args, cfg, record, format_cohomology(record, explain=args.explain))
    return EXIT_OK


def cmd_table(args: argparse.Namespace, cfg: Dict[str, Any]) -> int:
    fan = load_checked(args.fan)
    box = parse_box(args.box).padded(fan.n_rays)
    engine = build_engine(fan, cfg, args)
    divisors = list(box.points())
    rows = engine.cohomology_many(
        tqdm(
            divisors,
            desc=f"{fan.name} rows",
            unit="row",
            dynamic_ncols=True,
            disable=args.progress == "off",
            mininterval=0.2,
            smoothing=0.1,
        )
    )
    frame = table_frame(rows, fan.n_rays, fan.dim)
    text = frame.to_string(index=False) if len(frame) else "(empty table)"
    emit(args, cfg, [cohomology_record(v) for v in rows], text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, cfg: Dict[str, Any]) -> int:
    fan = load_checked(args.fan)
    ocfg = cfg["oracle"]
    if args.box:
        box = parse_box(args.box).broadcast(fan.n_rays)
    else:
        box = default_box(fan.n_rays, fan.dim, ocfg["box_lo_offset"], ocfg["box_hi_offset"])
    engine = build_engine(fan, cfg, args)
    oracle = Oracle(fan, max_points=ocfg["max_points"])
    report = verify(fan, box, engine=engine, oracle=oracle, progress=args.progress == "on")
    record = report_record(report)
    emit(args, cfg, record, format_report(record))
    return EXIT_OK if report.ok else EXIT_MISMATCH


COMMANDS = {
    "info": cmd_info,
    "cohom": cmd_cohom,
    "table": cmd_table,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    # Override via CLI (CLI > YAML > defaults)
    overrides: Dict[str, Dict[str, Any]] = {"algorithm": {}, "paths": {}, "logging": {}}
    if args.log_file is not None:
        overrides["paths"]["log_file"] = args.log_file or None
    if args.log_level:
        overrides["logging"]["level"] = args.log_level
    if args.usr_cap is not None:
        if args.usr_cap <= 0:
            print("error: --usr-cap must be positive", file=sys.stderr)
            return EXIT_INPUT
        overrides["algorithm"]["usr_cap"] = args.usr_cap
    if args.no_dual_filter:
        overrides["algorithm"]["dual_filter"] = False
    cfg = deep_update(cfg, overrides)

    logger = setup_logger(cfg["paths"]["log_file"], cfg["logging"]["level"])
    logger.info("=== TORIC-COHOM RUN START ===")
    logger.info(f"command={args.command} fan={args.fan} dual_filter={cfg['algorithm']['dual_filter']}")

    try:
        code = COMMANDS[args.command](args, cfg)
    except (FileNotFoundError, ValueError, USRSizeError, ComplexSizeError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    logger.info(f"=== TORIC-COHOM RUN DONE (exit {code}) ===")
    return code


if __name__ == "__main__":  # pragma: no cover - CLI entry
    sys.exit(main())
