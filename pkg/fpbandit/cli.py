"""Command line front end: analyze, simulate, lowerbound and constants"""

import json
import logging
import os
import sys
from argparse import ArgumentParser, Namespace
from typing import Any, Dict, Iterable, List, Optional

from fpbandit.analysis import (
    StructuralReport,
    analyze,
    constants,
    episode_sum,
    episode_sum_bound,
    regret_upper_bound,
    ucb_log_coefficient,
)
from fpbandit.common.exceptions import FpBanditError
from fpbandit.common.logging_ import Logger
from fpbandit.common.utils import to_builtin
from fpbandit.lowerbound import lower_bound
from fpbandit.models import Environment, load_instance
from fpbandit.policies import POLICY_NAMES
from fpbandit.settings import ExperimentConfig, LoggerSettings
from fpbandit.simulation import run_batch, scaled_regret

PARSE_ERROR_EXIT_CODE = 2


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("instance", nargs="?", help="instance JSON file")
    common.add_argument(
        "--config", help="experiment config JSON, flags override its values"
    )
    common.add_argument(
        "--true", dest="true_parameter", help="name of the true parameter"
    )
    common.add_argument("--seed", type=int, help="base seed (unsigned 64-bit)")
    common.add_argument("--out", help="output path prefix")
    common.add_argument(
        "--quiet", action="store_true", help="only log warnings and errors"
    )
    common.add_argument("--log-file", help="also write the log to this file")

    parser = ArgumentParser(
        prog="fpbandit", description="FP-UCB toolkit for finitely parameterized bandits"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser(
        "analyze",
        parents=[common],
        help="optimal arms, confusion sets, gaps and constants",
    )

    simulate = commands.add_parser(
        "simulate", parents=[common], help="Monte-Carlo regret curves"
    )
    simulate.add_argument(
        "--algos", help=f"comma separated policies among {', '.join(POLICY_NAMES)}"
    )
    simulate.add_argument("-T", "--horizon", type=int, help="steps per run")
    simulate.add_argument("-R", "--runs", type=int, help="runs per policy")
    simulate.add_argument("--workers", type=int, help="worker processes")
    simulate.add_argument(
        "--scaled",
        action="store_true",
        default=None,
        help="also write regret / log t to <out>_scaled.csv, needs --out",
    )
    simulate.add_argument("--tensorboard", help="tensorboard log directory")

    bound = commands.add_parser(
        "lowerbound", parents=[common], help="asymptotic regret lower bound"
    )
    bound.add_argument("--resolution", type=float, help="bisection tolerance")

    constant = commands.add_parser(
        "constants", parents=[common], help="constants of the FP-UCB regret bound"
    )
    constant.add_argument(
        "-T", "--horizon", type=int, help="evaluate the bound at this horizon"
    )
    constant.add_argument(
        "--partial-sums",
        type=int,
        metavar="K",
        help="evaluate the episode sums up to episode K against their closed form",
    )
    return parser


def load_config(args: Namespace) -> ExperimentConfig:
    """Read the config file if any, resolve its instance path, then apply the flags"""
    if args.config is not None:
        with open(args.config) as f:
            config = ExperimentConfig.from_dict(json.load(f))
        if config.instance is not None and not os.path.isabs(config.instance):
            config.instance = os.path.join(
                os.path.dirname(os.path.abspath(args.config)), config.instance
            )
    else:
        config = ExperimentConfig()

    overrides = {
        "instance": args.instance,
        "true_parameter": args.true_parameter,
        "seed": args.seed,
        "output": args.out,
        "horizon": getattr(args, "horizon", None),
        "runs": getattr(args, "runs", None),
        "workers": getattr(args, "workers", None),
        "scaled": getattr(args, "scaled", None),
        "resolution": getattr(args, "resolution", None),
        "tensorboard_log_path": getattr(args, "tensorboard", None),
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(config, key, value)
    algos = getattr(args, "algos", None)
    if algos is not None:
        config.policies = [name.strip() for name in algos.split(",") if name.strip()]
    if config.instance is None:
        raise ValueError("no instance given, pass a file or a --config naming one")
    return config


def _arms(arms: Iterable[int]) -> str:
    return "{" + ", ".join(f"arm {arm + 1}" for arm in arms) + "}"


def _parameters(env: Environment, thetas: Iterable[int]) -> str:
    return "{" + ", ".join(env.params.names[theta] for theta in thetas) + "}"


def _write_json(path: str, data: Any) -> None:
    with open(path, "w") as f:
        json.dump(to_builtin(data), f, indent=2)
        f.write("\n")


def render_report(env: Environment, report: StructuralReport) -> List[str]:
    lines = [
        f"parameters: {len(env.params)}, arms: {env.arm_count}, "
        f"family: {env.params.reward_family.value}",
        f"true parameter: {env.true_name}, means {list(env.true_means)}",
        f"regime: {report.regime.value} regret",
        f"A = {_arms(report.candidate_arms)}",
        f"a*(theta_o) = arm {report.true_best_arm + 1}",
        f"B(theta_o) = {_parameters(env, report.confusion_parameters)}",
        f"C(theta_o) = {_arms(report.confusion_arms)}",
    ]
    lines += [f"Delta(arm {arm + 1}) = {gap:.6g}" for arm, gap in report.gaps.items()]
    lines += [
        f"beta(arm {arm + 1}) = {beta:.6g}" for arm, beta in report.separations.items()
    ]
    if report.ambiguous_parameters:
        lines.append(
            "warning: several optimal arms for "
            f"{_parameters(env, report.ambiguous_parameters)}, the smallest index is used"
        )
    return lines


def cmd_analyze(config: ExperimentConfig, logger: Logger) -> int:
    env = load_instance(config.instance, config.true_parameter, config.seed)
    report = analyze(env.params, env.true_parameter)
    bound_constants = constants(report, env.params)
    lines = render_report(env, report)
    lines += [
        f"D1 = {bound_constants.D1:.6g}",
        f"D2 = {bound_constants.D2:.6g}",
        f"log coefficient = {bound_constants.log_coefficient:.6g}",
    ]
    lines += [
        f"C(arm {arm + 1}) = {value:.6g}" for arm, value in bound_constants.C_i.items()
    ]
    print("\n".join(lines))
    if config.output is not None:
        _write_json(
            f"{config.output}.json", {"report": report, "constants": bound_constants}
        )
        logger.info(f"Analysis written to {config.output}.json")
    return 0


def cmd_constants(
    config: ExperimentConfig,
    logger: Logger,
    horizon: Optional[int] = None,
    partial_sums: Optional[int] = None,
) -> int:
    env = load_instance(config.instance, config.true_parameter, config.seed)
    report = analyze(env.params, env.true_parameter)
    bound_constants = constants(report, env.params)
    output: Dict[str, Any] = {
        "true_parameter": env.true_name,
        "constants": bound_constants,
        "ucb_log_coefficient": ucb_log_coefficient(report),
    }
    if horizon is not None:
        output["horizon"] = horizon
        output["regret_upper_bound"] = regret_upper_bound(bound_constants, horizon)
    if partial_sums is not None:
        output["episode_sums"] = {
            (arm, theta): {
                "alpha": report.alpha1[theta],
                "partial_sum": episode_sum(
                    report.alpha1[theta], bound_constants.candidate_count, partial_sums
                ),
                "bound": episode_sum_bound(
                    report.alpha1[theta], bound_constants.candidate_count
                ),
            }
            for arm, theta in bound_constants.k_theta
        }
    print(json.dumps(to_builtin(output), indent=2))
    if config.output is not None:
        _write_json(f"{config.output}.json", output)
        logger.info(f"Constants written to {config.output}.json")
    return 0


def cmd_simulate(config: ExperimentConfig, logger: Logger) -> int:
    if config.scaled and config.output is None:
        raise ValueError("--scaled writes a second table and needs --out")
    env = load_instance(config.instance, config.true_parameter, config.seed)
    result = run_batch(
        env,
        config.policies,
        config.horizon,
        config.runs,
        base_seed=config.seed,
        checkpoint_settings=config.checkpoints,
        workers=config.workers,
        logger=logger,
    )
    summary = result.summary()
    summary["instance"] = os.path.basename(config.instance)
    summary["true_parameter"] = env.true_name

    if config.scaled:
        for policy, (steps, values) in scaled_regret(result).items():
            logger.write_curve(f"ScaledRegret/{policy}", steps, values)
    if config.output is None:
        result.to_frame().to_csv(sys.stdout, index=False, float_format="%.10g")
        return 0

    result.to_csv(f"{config.output}.csv")
    if config.scaled:
        result.scaled_frame().to_csv(
            f"{config.output}_scaled.csv", index=False, float_format="%.10g"
        )
    _write_json(f"{config.output}.json", summary)
    logger.info(f"Regret curves written to {config.output}.csv")
    print(json.dumps(to_builtin(summary), indent=2))
    return 0


def cmd_lowerbound(config: ExperimentConfig, logger: Logger) -> int:
    env = load_instance(config.instance, config.true_parameter, config.seed)
    report = analyze(env.params, env.true_parameter)
    result = lower_bound(env.params, report, resolution=config.resolution)
    coefficient = constants(report, env.params).log_coefficient
    output = {
        "true_parameter": env.true_name,
        "value": result.value,
        "allocation": result.allocation,
        "kl_table": {
            (arm, env.params.names[theta]): value
            for (arm, theta), value in result.kl_table.items()
        },
        "resolution": result.resolution,
        "bracket": result.bracket,
        "certificate": result.certificate,
        "warnings": result.warnings,
        "log_coefficient": coefficient,
        "ratio_to_log_coefficient": (
            result.value / coefficient if coefficient > 0 else None
        ),
    }
    print(json.dumps(to_builtin(output), indent=2))
    if config.output is not None:
        _write_json(f"{config.output}.json", output)
        logger.info(f"Lower bound written to {config.output}.json")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = LoggerSettings(
        log_file=args.log_file,
        stream_handler_level=logging.WARNING if args.quiet else logging.INFO,
    )
    logger = Logger(**settings.filter_none())
    try:
        config = load_config(args)
        logger.tensorboard_log_path = config.tensorboard_log_path
        if args.command == "analyze":
            return cmd_analyze(config, logger)
        if args.command == "simulate":
            return cmd_simulate(config, logger)
        if args.command == "lowerbound":
            return cmd_lowerbound(config, logger)
        return cmd_constants(config, logger, args.horizon, args.partial_sums)
    except json.JSONDecodeError as e:
        logger.error(f"malformed JSON: {e.msg} at line {e.lineno}, column {e.colno}")
        return PARSE_ERROR_EXIT_CODE
    except FpBanditError as e:
        logger.error(str(e))
        return e.exit_code
    except (OSError, ValueError) as e:
        logger.error(str(e))
        return 1
    finally:
        logger.close()


if __name__ == "__main__":
    sys.exit(main())
