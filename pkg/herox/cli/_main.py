import argparse
import logging
import sys
from typing import Optional, Sequence

from ..config import add_config_flags, ConfigError, load_config, overrides_from_args
from ..image import ImageReadError
from ..recognition import ClassifierError, RoiType
from ..synth import ManifestError
from . import _commands as commands


logger = logging.getLogger("herox")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat 'section.key = value' config file")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    common.add_argument("--jobs", type=int, help="frame-level worker threads (runtime.jobs)")
    common.add_argument("-o", "--output", help="write JSON here instead of standard output")
    add_config_flags(common)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="herox", description="Hero blood-bar detection and recognition."
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("detect", parents=[common], help="detect blood bars and camps")
    p.add_argument("frames", nargs="+", help="frame images")
    p.set_defaults(handler=commands.cmd_detect)

    p = sub.add_parser("recognize", parents=[common], help="detect and name heroes")
    p.add_argument("frames", nargs="+", help="frame images")
    p.set_defaults(handler=commands.cmd_recognize)

    p = sub.add_parser("video-summary", parents=[common], help="accumulate heroes over a frame directory")
    p.add_argument("directory", help="directory of frames, in lexicographic order")
    p.add_argument("--stride", type=int, help="sample every N-th frame (dataset.every_n_frames)")
    p.set_defaults(handler=commands.cmd_video_summary)

    p = sub.add_parser("overlay", parents=[common], help="draw detections onto a frame")
    p.add_argument("frame", help="frame image")
    p.add_argument("detections", help="JSON written by 'detect'")
    p.set_defaults(handler=commands.cmd_overlay)

    p = sub.add_parser("bench", parents=[common], help="precision, recall and latency on a corpus")
    p.add_argument("corpus", help="corpus directory with manifest.json")
    p.set_defaults(handler=commands.cmd_bench)

    p = sub.add_parser("calibrate", parents=[common], help="score threshold from a corpus")
    p.add_argument("corpus", help="corpus directory with manifest.json")
    p.set_defaults(handler=commands.cmd_calibrate)

    p = sub.add_parser("render-corpus", parents=[common], help="render a synthetic corpus")
    p.add_argument("out_dir", help="output directory")
    p.add_argument("--count", type=int, default=200, help="number of scenes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-bars", type=int, default=10)
    p.add_argument("--empty-probability", type=float, default=0.1)
    p.add_argument("--dims", help="frame sizes, e.g. 1280x720,1920x1080")
    p.set_defaults(handler=commands.cmd_render_corpus)

    p = sub.add_parser("extract-samples", parents=[common], help="auto-label leading-hero crops")
    p.add_argument("directory", help="directory of frames of one video")
    p.add_argument("--label", required=True, help="hero name of the video's player")
    p.add_argument("--out-dir", required=True, help="sample output directory")
    p.add_argument("--every-n-frames", type=int, help="frame stride (dataset.every_n_frames)")
    p.set_defaults(handler=commands.cmd_extract_samples)

    p = sub.add_parser("train-reference", parents=[common], help="train a reference classifier")
    p.add_argument("sample_dirs", nargs="+", help="directories written by 'extract-samples'")
    p.add_argument("--roi-type", choices=[r.value for r in RoiType], default="appearance")
    p.add_argument("--output-model", required=True, help="model file to write")
    p.add_argument("--no-split", action="store_true", help="train on every sample")
    p.set_defaults(handler=commands.cmd_train_reference)

    p = sub.add_parser("export-template", parents=[common], help="write the template PNG pair")
    p.add_argument("out_dir", help="output directory")
    p.set_defaults(handler=commands.cmd_export_template)
    return parser


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line; returns the exit status.

    0 on success, 1 when a command fails at run time (unreadable input,
    classifier or manifest errors), 2 for usage and configuration errors.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    overrides = overrides_from_args(args)
    if args.jobs is not None:
        overrides["runtime.jobs"] = str(args.jobs)
    try:
        config = load_config(args.config, overrides)
        return args.handler(args, config)
    except ConfigError as e:
        print(f"herox: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ImageReadError, ClassifierError, ManifestError, OSError, ValueError) as e:
        print(f"herox {args.command}: {e}", file=sys.stderr)
        return EXIT_FAILURE
