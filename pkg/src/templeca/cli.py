"""Command-line entry point: ``templeca {grow,scan,analyze,classify,convert}``.

Exit codes: 0 success, 1 usage error, 2 unreadable or invalid input,
3 internal failure.  Every run that writes a file also writes a JSON run
manifest beside it (or to ``--manifest``).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .formats import (
    FormatError,
    PlanDocument,
    export_obj,
    export_pbm,
    export_slices,
    parse_pbm,
    parse_plan_text,
    parse_slices,
    render_plan_text,
)
from .growth import ClipMode, GrowthConfig, grow_tower
from .morphometrics import (
    box_counting_dimension,
    classify_rule,
    elevation_profile,
    ratio_signature,
    segment_profile,
)
from .plans import SHIPPED, load_plan
from .rule_codec import RULE_SPACE_SIZE, decode_rule
from .rulescan import scan_rules

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    inputs: list[tuple[str, str]] = field(default_factory=list)
    parameters: dict[str, str] = field(default_factory=dict)
    tool_version: str = __version__

    def add_input(self, path: str, data: bytes) -> None:
        self.inputs.append((path, "sha256:" + hashlib.sha256(data).hexdigest()))

    def to_json(self) -> str:
        d = asdict(self)
        d["inputs"] = [{"path": p, "digest": h} for p, h in self.inputs]
        return json.dumps(d, indent=2, sort_keys=True) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        raise UsageError(message)


def fmt_real(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _read_bytes(path: str, manifest: RunManifest) -> bytes:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    manifest.add_input(path, data)
    return data


def _plan_kind(path: str) -> Optional[str]:
    suffix = Path(path).suffix.lower()
    if suffix == ".pbm":
        return "pbm"
    if suffix in (".txt", ".plan"):
        return "plan"
    return None


def _load_plan(path: str, manifest: RunManifest, kind: Optional[str] = None) -> PlanDocument:
    name = Path(path).stem if Path(path).suffix == ".txt" else path
    if not Path(path).exists() and name in SHIPPED:
        doc = load_plan(name)
        manifest.add_input(f"<shipped:{name}>", render_plan_text(doc.layer).encode())
        return doc
    data = _read_bytes(path, manifest)
    kind = kind or _plan_kind(path) or "plan"
    try:
        if kind == "pbm":
            return parse_pbm(data, source_name=path)
        return parse_plan_text(data.decode("utf-8"), source_name=path)
    except UnicodeDecodeError:
        raise InputError(f"{path}: plan text is not valid UTF-8") from None


def _load_tower(path: str, manifest: RunManifest):
    data = _read_bytes(path, manifest)
    try:
        return parse_slices(data.decode("utf-8"))
    except UnicodeDecodeError:
        raise InputError(f"{path}: slice file is not valid UTF-8") from None


def _rule_code(value: str) -> int:
    try:
        code = int(value)
    except ValueError:
        raise UsageError(f"--rule must be an integer, got {value!r}") from None
    if not 0 <= code < RULE_SPACE_SIZE:
        raise UsageError(f"--rule must be in 0..{RULE_SPACE_SIZE - 1}, got {code}")
    return code


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _growth_config(args) -> GrowthConfig:
    return GrowthConfig(max_layers=args.max_layers, clip_mode=ClipMode(args.clip.upper()))


def _add_growth_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-layers", type=_positive, default=64)
    p.add_argument("--clip", choices=["bbox", "mask"], default="bbox")


def cmd_grow(args, manifest: RunManifest) -> dict[str, str | bytes]:
    code = _rule_code(args.rule)
    plan = _load_plan(args.plan, manifest).layer
    tower = grow_tower(plan, decode_rule(code), _growth_config(args))
    outputs: dict[str, str | bytes] = {}
    if args.out:
        outputs[args.out] = export_slices(tower)
    if args.obj:
        outputs[args.obj] = export_obj(tower)
    period = "" if tower.period is None else f" period={tower.period}"
    print(
        f"rule={code} height={tower.height} termination={tower.termination.value}"
        f"{period} population={tower.population}"
    )
    return outputs


def cmd_scan(args, manifest: RunManifest) -> dict[str, str | bytes]:
    plan = _load_plan(args.plan, manifest).layer
    target = _load_tower(args.target, manifest)
    if plan.shape != target.frame:
        raise InputError(f"plan frame {plan.shape} does not match target frame {target.frame}")
    results = scan_rules(
        plan, target, args.metric.upper(), _growth_config(args),
        top_n=args.top, threads=args.threads, profile_kind=args.profile.upper(),
    )
    lines = ["rank,rule_code,score,height,termination"]
    for rank, r in enumerate(results, start=1):
        lines.append(f"{rank},{r.rule_code},{fmt_real(r.score)},{r.height},{r.termination.value}")
    return _emit("\n".join(lines) + "\n", args.out)


def cmd_analyze(args, manifest: RunManifest) -> dict[str, str | bytes]:
    if not 0 <= args.tolerance < 0.5:
        raise UsageError(f"--tolerance must be in [0, 0.5), got {args.tolerance}")
    if args.max_exp is not None and args.max_exp < 2:
        raise UsageError(f"--max-exp must be >= 2, got {args.max_exp}")
    tower = _load_tower(args.tower, manifest)
    want_profile = args.profile is not None or not (args.ratio or args.boxdim)
    kind = (args.profile or "extent").upper()
    profile = elevation_profile(tower, kind)
    lines = []
    if want_profile:
        lines.append("layer,value")
        lines += [f"{k},{v}" for k, v in enumerate(profile.values)]
    if args.ratio:
        runs = [n for _, n in segment_profile(profile, args.min_plateau)]
        sig = ratio_signature(runs, args.tolerance)
        lines.append(f"ratio,{sig if sig is not None else 'NO_RATIO'}")
    if args.boxdim:
        max_exp = args.max_exp
        if max_exp is None:
            extent = max(tower.height, *tower.frame)
            max_exp = max(2, math.ceil(math.log2(extent)))
        est = box_counting_dimension(tower, max_exp)
        lines.append(f"boxdim,{fmt_real(est.slope)},{fmt_real(est.r_squared)}")
    return _emit("\n".join(lines) + "\n", args.out)


def cmd_classify(args, manifest: RunManifest) -> dict[str, str | bytes]:
    if (args.rule is None) == (not args.all):
        raise UsageError("give exactly one of --rule or --all")
    codes = range(RULE_SPACE_SIZE) if args.all else [_rule_code(args.rule)]
    plan = _load_plan(args.plan, manifest).layer
    lines = []
    for code in codes:
        rep = classify_rule(plan, decode_rule(code), args.horizon)
        period = "-" if rep.period is None else str(rep.period)
        lines.append(f"{code},{rep.behavior.value},{rep.transient},{period}")
    return _emit("\n".join(lines) + "\n", args.out)


def cmd_convert(args, manifest: RunManifest) -> dict[str, str | bytes]:
    src = args.src_format or _plan_kind(args.input)
    dst = args.dst_format or _plan_kind(args.output)
    if src is None:
        raise UsageError(f"cannot infer format of {args.input}; pass --from plan|pbm")
    if dst is None:
        raise UsageError(f"cannot infer format of {args.output}; pass --to plan|pbm")
    data = _read_bytes(args.input, manifest)
    if src == "pbm":
        doc = parse_pbm(data, source_name=args.input)
    else:
        doc = parse_plan_text(data.decode("utf-8", errors="strict"), source_name=args.input)
    out = export_pbm(doc.layer) if dst == "pbm" else render_plan_text(doc.layer)
    return {args.output: out}


def _emit(text: str, out: Optional[str]) -> dict[str, str | bytes]:
    if out:
        return {out: text}
    sys.stdout.write(text)
    return {}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="templeca", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"templeca {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("grow", help="grow a tower from a plan")
    p.add_argument("--plan", required=True)
    p.add_argument("--rule", required=True)
    _add_growth_flags(p)
    p.add_argument("--out", help="slice file to write")
    p.add_argument("--obj", help="OBJ mesh to write")

    p = sub.add_parser("scan", help="rank all rules against a target tower")
    p.add_argument("--plan", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--metric", choices=["iou", "profile"], default="iou")
    p.add_argument("--profile", choices=["extent", "population"], default="extent",
                   help="profile kind for --metric profile")
    p.add_argument("--top", type=_positive, default=10)
    p.add_argument("--threads", type=_positive, default=1)
    _add_growth_flags(p)
    p.add_argument("--out")

    p = sub.add_parser("analyze", help="measure a tower")
    p.add_argument("--tower", required=True)
    p.add_argument("--profile", choices=["extent", "population"])
    p.add_argument("--ratio", action="store_true")
    p.add_argument("--tolerance", type=float, default=0.0)
    p.add_argument("--min-plateau", type=_positive, default=1)
    p.add_argument("--boxdim", action="store_true")
    p.add_argument("--max-exp", type=int)
    p.add_argument("--out")

    p = sub.add_parser("classify", help="limit-point / limit-cycle class of rules")
    p.add_argument("--plan", required=True)
    p.add_argument("--rule")
    p.add_argument("--all", action="store_true")
    p.add_argument("--horizon", type=_positive, default=256)
    p.add_argument("--out")

    p = sub.add_parser("convert", help="convert between plan text and plain PBM")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--from", dest="src_format", choices=["plan", "pbm"])
    p.add_argument("--to", dest="dst_format", choices=["plan", "pbm"])

    for action in sub.choices.values():
        action.add_argument("--manifest", help="write the run manifest here")
    return parser


COMMANDS = {
    "grow": cmd_grow,
    "scan": cmd_scan,
    "analyze": cmd_analyze,
    "classify": cmd_classify,
    "convert": cmd_convert,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        manifest = RunManifest(
            command=args.command,
            parameters={k: str(v) for k, v in sorted(vars(args).items()) if k != "command"},
        )
        outputs = COMMANDS[args.command](args, manifest)
    except UsageError as exc:
        print(f"templeca: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, FormatError, ValueError) as exc:
        print(f"templeca: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover
        print(f"templeca: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL

    try:
        for path, content in outputs.items():
            mode = "wb" if isinstance(content, bytes) else "w"
            with open(path, mode, **({} if mode == "wb" else {"newline": "\n"})) as fh:
                fh.write(content)
        target = args.manifest or (next(iter(outputs)) + ".manifest.json" if outputs else None)
        if target:
            Path(target).write_text(manifest.to_json())
    except OSError as exc:
        print(f"templeca: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
