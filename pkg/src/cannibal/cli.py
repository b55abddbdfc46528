"""Command-line runner for the verification checks.

    cannibal --check stab.i-homomorphism --format json
    python -m cannibal --config run.cfg --jobs 4

Exit status is 0 when every selected check passes, 1 when any fails and 2
for usage errors (bad flags, unknown check ids, invalid configuration).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import REGISTRY, Config, run_checks
from .errors import InvalidConfig, UnknownCheckId

# config-file key -> (Config field or option name, converter)
CONFIG_KEYS = {
    "precision-2adic": ("N", int),
    "u1-order": ("M", int),
    "series-cap": ("cap", int),
    "q-order": ("Q", int),
    "x-degree": ("Dx", int),
    "seed": ("seed", int),
    "jobs": ("jobs", int),
    "format": ("format", str),
    "check": ("check", lambda v: [c.strip() for c in v.split(",") if c.strip()]),
}

DEFAULTS = {"N": 12, "M": 8, "cap": 10, "Q": 6, "Dx": 9, "seed": 0, "jobs": 1, "format": "text", "check": None}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cannibal", description="Run exact verification checks.")
    p.add_argument("--precision-2adic", dest="N", type=int, metavar="N", help="2-adic precision (default 12)")
    p.add_argument("--u1-order", dest="M", type=int, metavar="M", help="u1-adic order (default 8)")
    p.add_argument("--series-cap", dest="cap", type=int, metavar="D", help="power series cap (default 10)")
    p.add_argument("--q-order", dest="Q", type=int, metavar="Q", help="q-expansion order (default 6)")
    p.add_argument("--x-degree", dest="Dx", type=int, metavar="DX", help="x-degree of q-expansions (default 9)")
    p.add_argument("--check", action="append", metavar="ID", help="check id, repeatable (default all)")
    p.add_argument("--format", choices=("text", "json"), help="report format (default text)")
    p.add_argument("--seed", type=int, help="seed for sampled checks (default 0)")
    p.add_argument("--jobs", type=int, help="worker processes (default 1)")
    p.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--config", metavar="FILE", help="flat key=value file, overridden by flags")
    p.add_argument("--list", action="store_true", help="list check ids and exit")
    return p


def read_config_file(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidConfig(f"cannot read {path}: {exc}") from exc
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise InvalidConfig(f"{path}:{lineno}: unknown key {key!r}")
        name, conv = CONFIG_KEYS[key]
        try:
            out[name] = conv(value)
        except ValueError as exc:
            raise InvalidConfig(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return out


def resolve_settings(args: argparse.Namespace) -> dict:
    settings = dict(DEFAULTS)
    if args.config:
        settings.update(read_config_file(args.config))
    for name in DEFAULTS:
        value = getattr(args, name, None)
        if value is not None:
            settings[name] = value
    if settings["format"] not in ("text", "json"):
        raise InvalidConfig(f"format must be text or json, got {settings['format']!r}")
    if settings["jobs"] < 1:
        raise InvalidConfig("jobs must be at least 1")
    return settings


def format_text(reports) -> str:
    width = max(len(r.check_id) for r in reports)
    lines = [f"{'check':<{width}}  status  details"]
    for r in reports:
        lines.append(f"{r.check_id:<{width}}  {r.status:<6}  {r.details}")
    passed = sum(r.status == "pass" for r in reports)
    lines.append(f"{passed}/{len(reports)} passed")
    return "\n".join(lines) + "\n"


def format_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.list:
            for cid in sorted(REGISTRY):
                print(f"{cid:<22} {REGISTRY[cid].description}")
            return 0
        s = resolve_settings(args)
        cfg = Config(N=s["N"], M=s["M"], cap=s["cap"], Q=s["Q"], Dx=s["Dx"], seed=s["seed"])
        reports = run_checks(s["check"], cfg, jobs=s["jobs"])
    except (UsageError, InvalidConfig) as exc:
        print(f"cannibal: error: {exc}", file=sys.stderr)
        return 2
    except UnknownCheckId as exc:
        print(f"cannibal: error: unknown check id {exc.args[0]!r}", file=sys.stderr)
        return 2

    text = format_json(reports) if s["format"] == "json" else format_text(reports)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.status == "pass" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
