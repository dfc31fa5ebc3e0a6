"""Command-line front end.

    blockpencil classify PENCIL.json [--p P --n N] [--out REPORT.json]
    blockpencil construct {realize,cover,example31,baer,extremal} --p P --n N
                          [--input FILE] [--out FILE] [--verify]
    blockpencil verify CHECK [--pencil FILE | --p P --n N | --q Q]
                       [--samples K] [--seed S] [--degree D] [--out FILE]

Exit codes: 0 success, 2 input error, 3 theorem-check failure, 4 resource guard.
JSON goes to ``--out`` (or stdout when absent); the human-readable summary
goes to stdout, or stderr when stdout carries the JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable

from .blocking import check_size_bounds, classify, incidence_profile
from .constructions import (baer_partition, cover_from_json, example31_pencil, extremal_pencil,
                            partition_from_json, realize_cover, realize_partition)
from .errors import BlockPencilError, FieldError, SizeBoundError
from .gf import GF, field_create, prime_power
from .pencil import (Pencil, PencilReport, all_member_points, check_prime_bound, check_prop32, check_thm12,
                     classify_pencil, induced_partition)
from .plane import plane_for
from .poly import DEFAULT_TERM_GUARD
from .sampling import base_point_free_pencils, make_rng, random_partition, random_point_set

EXIT_OK, EXIT_INPUT, EXIT_CHECK, EXIT_GUARD = 0, 2, 3, 4

CONSTRUCTIONS = ("realize", "cover", "example31", "baer", "extremal")
CHECKS = ("prop32", "thm12", "prime-bound", "lemma41-identities", "size-bounds", "realize-roundtrip")


class CheckFailed(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    name: str | None = None
    path: str | None = None
    p: int | None = None
    n: int | None = None
    q: int | None = None
    seed: int = 0
    samples: int = 20
    degree: int = 2
    term_guard: int = DEFAULT_TERM_GUARD
    out: str | None = None
    verify: bool = False

    def field(self, required: bool = True) -> GF | None:
        if self.q is not None:
            p, n = prime_power(self.q)
            if (self.p, self.n) not in ((None, None), (p, n)):
                raise FieldError(f"--q {self.q} disagrees with --p {self.p} --n {self.n}")
            return field_create(p, n)
        if self.p is None:
            if required:
                raise FieldError("a field is required: pass --p/--n or --q")
            return None
        return field_create(self.p, self.n or 1)


# -- output --------------------------------------------------------------------------

class Output:
    def __init__(self, path: str | None):
        self.path = path
        self.summary = sys.stdout if path else sys.stderr

    def say(self, text: str = "") -> None:
        print(text, file=self.summary)

    def emit(self, payload: dict) -> None:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FieldError(f"cannot read {path}: {exc}") from exc


def _load_pencil(cfg: RunConfig) -> Pencil:
    obj = _load_json(cfg.path)
    try:
        return Pencil.from_json(obj, cfg.field(required=False), term_guard=cfg.term_guard)
    except (KeyError, TypeError) as exc:
        raise FieldError(f"malformed pencil file: {exc}") from exc


def summarize_report(rep: PencilReport, out: Output) -> None:
    out.say(f"q = {rep.q}, degree = {rep.d}, base-locus F_q-points = {rep.base_locus_size}")
    out.say(f"{'member':>12}  {'points':>6}  class")
    for rec in rep.members:
        s, t = rec.param
        out.say(f"{f'[{s}:{t}]':>12}  {rec.count:>6}  {rec.blocking.kind.value}")
    out.say(f"blocking m = {rep.m}, nonblocking = {rep.nonblocking}")
    for name, chk in rep.checks.items():
        extra = f" ({chk.detail})" if chk.detail else ""
        out.say(f"  {name:<12} {chk.status:<8} required {chk.required}, actual {chk.actual}{extra}")


# -- commands --------------------------------------------------------------------------

def cmd_classify(cfg: RunConfig) -> dict:
    out = Output(cfg.out)
    rep = classify_pencil(_load_pencil(cfg))
    summarize_report(rep, out)
    payload = rep.to_json()
    out.emit(payload)
    if not rep.ok:
        raise CheckFailed("a theorem check failed")
    return payload


def cmd_construct(cfg: RunConfig) -> dict:
    out = Output(cfg.out)
    ctx = cfg.field()
    if cfg.name in ("realize", "cover"):
        if not cfg.path:
            raise FieldError(f"construct {cfg.name} needs --input FILE")
        obj = _load_json(cfg.path)
        plane = plane_for(ctx)
        if cfg.name == "realize":
            pencil = realize_partition(partition_from_json(obj, plane))
        else:
            pencil = realize_cover(cover_from_json(obj, plane))
    elif cfg.name == "example31":
        pencil = example31_pencil(ctx)
    elif cfg.name == "extremal":
        pencil = extremal_pencil(ctx)
    elif cfg.name == "baer":
        parts = baer_partition(ctx)
        out.say(f"{len(parts)} Baer subplanes of sizes {[len(S) for S in parts]}")
        payload = {"q": ctx.q, "field": ctx.to_dict(), "parts": [S.to_json() for S in parts]}
        if cfg.verify:
            kinds = [classify(S).kind.value for S in parts]
            out.say(f"classes: {kinds}")
        out.emit(payload)
        return payload
    else:
        raise FieldError(f"unknown construction {cfg.name!r}")
    out.say(f"{cfg.name}: pencil of degree {pencil.degree} over {ctx}")
    payload = pencil.to_json()
    out.emit(payload)
    if cfg.verify:
        rep = classify_pencil(pencil)
        summarize_report(rep, out)
        if not rep.ok:
            raise CheckFailed("a theorem check failed")
    return payload


def _tally(results: list[dict]) -> dict[str, int]:
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in results:
        counts[r["status"]] += 1
    return counts


def _pencil_check(name: str) -> Callable[[PencilReport], object]:
    return {"prop32": check_prop32, "thm12": check_thm12, "prime-bound": check_prime_bound}[name]


def cmd_verify(cfg: RunConfig) -> dict:
    out = Output(cfg.out)
    payload: dict = {"check": cfg.name}
    results: list[dict] = []
    if cfg.path:
        pencil = _load_pencil(cfg)
        rep = classify_pencil(pencil, run_checks=False)
        payload.update(q=rep.q, d=rep.d, nonblocking=rep.nonblocking, source=cfg.path)
        results.append(_verify_one(cfg.name, pencil, rep))
    else:
        ctx = cfg.field()
        plane = plane_for(ctx)
        rng = make_rng(cfg.seed)
        payload.update(q=ctx.q, seed=cfg.seed, samples=cfg.samples, generator="numpy PCG64")
        if cfg.name == "lemma41-identities":
            for _ in range(cfg.samples):
                prof = incidence_profile(random_point_set(plane, rng))
                ids = prof.identities()
                results.append({"status": "pass" if all(ids.values()) else "fail",
                                "N": prof.N, "t": list(prof.t), "identities": ids})
        elif cfg.name == "size-bounds":
            for _ in range(cfg.samples):
                S = random_point_set(plane, rng)
                sb = check_size_bounds(S)
                status = "skipped" if sb.kind.value != "nontrivial" else ("pass" if sb.ok else "fail")
                results.append({"status": status, **sb.to_json()})
        elif cfg.name == "thm12":
            payload["degree"] = cfg.degree
            for pencil in base_point_free_pencils(ctx, cfg.degree, cfg.samples, rng):
                results.append(_verify_one(cfg.name, pencil, classify_pencil(pencil, run_checks=False)))
        else:
            for _ in range(cfg.samples):
                part = random_partition(plane, rng)
                pencil = realize_partition(part)
                if cfg.name == "realize-roundtrip":
                    ok = induced_partition(pencil) == part and pencil.degree == 3 * (ctx.q - 1)
                    results.append({"status": "pass" if ok else "fail", "sizes": part.sizes()})
                else:
                    results.append(_verify_one(cfg.name, pencil, classify_pencil(pencil, run_checks=False)))
    counts = _tally(results)
    payload.update(results=results, **counts)
    payload["status"] = "fail" if counts["fail"] else ("pass" if counts["pass"] else "skipped")
    out.say(f"verify {cfg.name}: {counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped")
    if cfg.path and results:
        r = results[0]
        out.say(f"  {r['status']}: nonblocking {r.get('actual')} {r.get('required', '')} {r.get('detail', '')}".rstrip())
    out.emit(payload)
    if counts["fail"]:
        raise CheckFailed(f"{counts['fail']} check(s) failed")
    return payload


def _verify_one(name: str, pencil: Pencil, rep: PencilReport) -> dict:
    if name in ("prop32", "thm12", "prime-bound"):
        try:
            res = _pencil_check(name)(rep)
        except BlockPencilError as exc:
            return {"status": "skipped", "detail": str(exc), "actual": rep.nonblocking}
        return res.to_json()
    if name == "size-bounds":
        reps = classify_pencil(pencil, run_checks=False).size_bounds
        ok = all(sb.ok for sb in reps)
        return {"status": "pass" if ok else "fail", "members": [sb.to_json() for sb in reps]}
    if name == "realize-roundtrip":
        raise FieldError("realize-roundtrip runs on random partitions; drop --pencil")
    if name == "lemma41-identities":
        results = [incidence_profile(S).identities() for S in all_member_points(pencil)]
        ok = all(all(r.values()) for r in results)
        return {"status": "pass" if ok else "fail", "members": results}
    raise FieldError(f"unknown check {name!r}")  # pragma: no cover


# -- argument parsing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blockpencil",
                                 description="Blocking members of pencils of plane curves over GF(q).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="field characteristic")
    common.add_argument("--n", type=int, help="extension degree (default 1)")
    common.add_argument("--q", type=int, help="field order, alternative to --p/--n")
    common.add_argument("--term-guard", type=int, default=DEFAULT_TERM_GUARD)
    common.add_argument("--out", help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify the members of a pencil file")
    c.add_argument("pencil")

    c = sub.add_parser("construct", parents=[common], help="build a pencil or partition")
    c.add_argument("name", choices=CONSTRUCTIONS)
    c.add_argument("--input", help="partition or cover file (realize / cover)")
    c.add_argument("--verify", action="store_true", help="classify the result")

    c = sub.add_parser("verify", parents=[common], help="run a theorem check")
    c.add_argument("name", choices=CHECKS)
    c.add_argument("--pencil", help="pencil file; otherwise a seeded random suite runs")
    c.add_argument("--samples", type=int, default=20)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--degree", type=int, default=2, help="degree of random pencils (thm12)")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    path = getattr(ns, "pencil", None) or getattr(ns, "input", None)
    return RunConfig(command=ns.command, name=getattr(ns, "name", None), path=path,
                     p=ns.p, n=ns.n, q=ns.q, seed=getattr(ns, "seed", 0),
                     samples=getattr(ns, "samples", 20), degree=getattr(ns, "degree", 2),
                     term_guard=ns.term_guard, out=ns.out, verify=getattr(ns, "verify", False))


COMMANDS = {"classify": cmd_classify, "construct": cmd_construct, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        COMMANDS[cfg.command](cfg)
    except CheckFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except SizeBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (BlockPencilError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
