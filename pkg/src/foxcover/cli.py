"""Command-line entry point; every mode prints one JSON report on stdout."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

import jsonschema

from . import __version__, btz
from .cover import (
    ConfigError,
    is_galoisian,
    orbit_counts,
    parse_config,
    quotient_levels,
    universal_action,
    universal_levels,
)
from .fiber import OVERFLOW, FiberError, bonding_fiber_sizes, classify_fiber, fiber_report
from .homotopy import separating_level
from .words import Word

log = logging.getLogger("foxcover")

MODES = ("fiber", "classify", "galois-check", "almost-homotopic", "btz-verify")
EXIT_OK, EXIT_INTERNAL, EXIT_SCHEMA = 0, 1, 2


class SchemaViolation(Exception):
    pass


def load_schema(name: str) -> dict:
    return json.loads(resources.files("foxcover").joinpath("schemas", name).read_text())


@dataclass
class RunConfig:
    mode: str
    config_path: str | None = None
    depth: int = 4
    cap: int = 50
    word_cap: int = 4
    thread_cap: int = 10_000
    seed: int | None = None
    samples: int = 100_000
    w1: str | None = None
    w2: str | None = None
    sequence: str | None = None

    def validate(self) -> None:
        if self.mode not in MODES:
            raise SchemaViolation(f"mode: unknown mode {self.mode!r}")
        for name in ("depth", "cap", "word_cap", "thread_cap", "samples"):
            if getattr(self, name) < 1:
                raise SchemaViolation(f"--{name.replace('_', '-')}: must be >= 1")


def _read_config(path: str | None) -> dict:
    if path is None:
        raise SchemaViolation("--config: required for this mode")
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaViolation(f"--config: cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    errors = sorted(
        jsonschema.Draft202012Validator(load_schema("config.schema.json")).iter_errors(data),
        key=lambda e: list(e.absolute_path),
    )
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaViolation(f"{path}: field {where}: {e.message}")
    return data


def _parse_json_arg(flag: str, text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"{flag}: not valid JSON: {exc.msg}") from None


def _parse_word(flag: str, text: str) -> Word:
    raw = _parse_json_arg(flag, text)
    if not isinstance(raw, list):
        raise SchemaViolation(f"{flag}: expected a JSON array of signed generator indices")
    try:
        return Word(raw)
    except ValueError as exc:
        raise SchemaViolation(f"{flag}: {exc}") from None


def _build(cfg_data: dict, rc: RunConfig):
    try:
        cfg, q = parse_config(cfg_data)
        cfg.check_depth(rc.depth)
    except (ConfigError, ValueError) as exc:
        raise SchemaViolation(f"{rc.config_path}: {exc}") from None
    return cfg, q


def _fiber(rc: RunConfig, cfg_data: dict) -> dict:
    cfg, q = _build(cfg_data, rc)
    if q is None:
        system = universal_levels(cfg, rc.depth, rc.word_cap)
        orbits = orbit_counts(system, universal_action(system))
    else:
        system, action = quotient_levels(cfg, q, rc.depth)
        orbits = orbit_counts(system, action)
    seq = bonding_fiber_sizes(system, rc.cap, [c == 1 for c in orbits])
    rep = fiber_report(system, seq, thread_cap=rc.thread_cap, size_cap=rc.thread_cap)
    rep["stationary_from"] = classify_fiber(seq).stationary_from if seq else None
    return rep


def _classify(rc: RunConfig, cfg_data: dict | None) -> dict:
    if rc.sequence is not None:
        seq = _parse_json_arg("--sequence", rc.sequence)
        if not isinstance(seq, list) or not seq or not all(
            v == OVERFLOW or (isinstance(v, int) and not isinstance(v, bool) and v >= 0) for v in seq
        ):
            raise SchemaViolation('--sequence: expected a non-empty list of counts or "OVERFLOW"')
    else:
        seq = _fiber(rc, cfg_data)["n_sequence"]
        if not seq:
            raise SchemaViolation("--depth: need depth >= 2 to observe bonding maps")
    cls = classify_fiber(seq)
    return {"n_sequence": list(cls.n_sequence), "verdict": cls.verdict.value, "stationary_from": cls.stationary_from}


def _galois(rc: RunConfig, cfg_data: dict) -> dict:
    cfg, q = _build(cfg_data, rc)
    rep = is_galoisian(cfg, q, rc.depth, word_length_cap=rc.word_cap, sample_cap=rc.cap)
    return rep.to_json(thread_cap=rc.thread_cap, size_cap=rc.thread_cap)


def _almost_homotopic(rc: RunConfig, cfg_data: dict) -> dict:
    cfg, q = _build(cfg_data, rc)
    if rc.w1 is None or rc.w2 is None:
        raise SchemaViolation("--w1/--w2: both words are required")
    w1, w2 = _parse_word("--w1", rc.w1), _parse_word("--w2", rc.w2)
    for flag, w in (("--w1", w1), ("--w2", w2)):
        try:
            cfg.check_word(w)
        except ValueError as exc:
            raise SchemaViolation(f"{flag}: {exc}") from None
    sep = separating_level(w1, w2, cfg, rc.depth, q)
    return {
        "w1": w1.to_json(),
        "w2": w2.to_json(),
        "equivalent_up_to_depth": rc.depth if sep is None else sep - 1,
        "separating_level": sep,
    }


def run(rc: RunConfig) -> tuple[int, dict]:
    """Execute one mode; returns the exit code and the report (or an error report)."""
    base = {"mode": rc.mode, "version": __version__, "seed": rc.seed, "input": None}
    try:
        rc.validate()
        cfg_data = None
        if rc.mode != "btz-verify" and not (rc.mode == "classify" and rc.sequence is not None):
            cfg_data = _read_config(rc.config_path)
        base["input"] = cfg_data
        if rc.mode == "fiber":
            body = _fiber(rc, cfg_data)
        elif rc.mode == "classify":
            body = _classify(rc, cfg_data)
        elif rc.mode == "galois-check":
            body = _galois(rc, cfg_data)
        elif rc.mode == "almost-homotopic":
            body = _almost_homotopic(rc, cfg_data)
        else:
            seed = 42 if rc.seed is None else rc.seed
            base["seed"] = seed
            body = btz.verify(samples=rc.samples, seed=seed)
    except SchemaViolation as exc:
        log.debug("schema violation: %s", exc)
        return EXIT_SCHEMA, {**base, "error": str(exc)}
    except (FiberError, AssertionError) as exc:
        log.exception("internal invariant failure")
        return EXIT_INTERNAL, {**base, "error": f"internal invariant failure: {exc}"}
    base["parameters"] = {
        "depth": rc.depth, "cap": rc.cap, "word_cap": rc.word_cap,
        "thread_cap": rc.thread_cap, "samples": rc.samples,
    }
    return EXIT_OK, {**base, **body}


def _summary(report: dict) -> str:
    keys = ("verdict", "galois_verdict", "level_sizes", "n_sequence", "separating_level", "parabolic_check")
    parts = [f"{k}={report[k]}" for k in keys if k in report]
    return f"[{report['mode']}] " + (" ".join(parts) or report.get("error", "ok"))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="foxcover", description=__doc__)
    p.add_argument("--version", action="version", version=f"foxcover {__version__}")
    sub = p.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        sp = sub.add_parser(mode)
        sp.add_argument("--config", dest="config_path")
        sp.add_argument("--depth", type=int, default=4)
        sp.add_argument("--cap", type=int, default=50, help="bonding-fiber overflow cap")
        sp.add_argument("--word-cap", type=int, default=4, help="word length cap for universal levels")
        sp.add_argument("--thread-cap", type=int, default=10_000)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--pretty", action="store_true", help="indent JSON and print a summary on stderr")
        if mode == "almost-homotopic":
            sp.add_argument("--w1")
            sp.add_argument("--w2")
        if mode == "classify":
            sp.add_argument("--sequence", help='JSON list, e.g. [2,2,"OVERFLOW"]')
        if mode == "btz-verify":
            sp.add_argument("--samples", type=int, default=100_000)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("FOXCOVER_LOG", "WARNING").upper(), stream=sys.stderr)
    args = vars(build_parser().parse_args(argv))
    pretty = args.pop("pretty")
    rc = RunConfig(**args)
    code, report = run(rc)
    print(json.dumps(report, indent=2 if pretty else None, sort_keys=pretty))
    if pretty or code:
        print(_summary(report), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
