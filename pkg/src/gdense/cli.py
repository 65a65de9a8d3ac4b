"""Command line interface.

Every command writes one JSON report (stdout or ``--output``). Exit codes:
0 success, 1 domain error (structured error report), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, fields
from typing import Sequence

from . import __version__
from .cache import Cache, CacheMismatch
from .io import (
    InputError,
    dumps,
    is_builtin_input,
    load_algebra,
    load_complex,
    load_fan,
    load_form,
    load_quiver,
    parse_int_vector,
    quiver_to_json,
    write_atomic,
)
from .sampling import SAMPLERS

log = logging.getLogger("gdense")

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    threads: int = 1
    cache_dir: str | None = None
    output: str | None = None
    format: str = "json"
    verify_cache: bool = False
    quiver: str | None = None
    sequence: tuple[int, ...] | None = None
    depth: int | None = None
    samples: int | None = None
    sampler: str | None = None
    budget: int | None = None
    max_seeds: int | None = None
    pairs: int | None = None
    algebra: str | None = None
    x: str | None = None
    y: str | None = None
    shift: int | None = None
    complex: str | None = None
    u: str | None = None
    h: str | None = None
    power: int | None = None
    g: tuple[int, ...] | None = None
    trials: int | None = None
    coeff_range: int | None = None
    form: str | None = None
    fan: str | None = None
    k: int | None = None

    # flags that change where results go, not what they are
    _PLUMBING = ("cache_dir", "output", "threads", "verify_cache", "format")

    def provenance(self) -> dict:
        d = asdict(self)
        for name in self._PLUMBING:
            d.pop(name, None)
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items() if v is not None}


# --- argument parsing ------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _int_vector(text: str) -> tuple[int, ...]:
    try:
        return parse_int_vector(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sequence(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    return _int_vector(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=_nonnegative, default=d(0), help="master random seed")
    p.add_argument("--threads", type=_positive, default=d(1))
    p.add_argument("--cache-dir", default=d(None))
    p.add_argument("--output", "-o", default=d(None), help="report path (default: stdout)")
    p.add_argument("--format", choices=["json"], default=d("json"))
    p.add_argument("--verify-cache", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="gdense", description="cluster g-vector fans, 2-term complexes, scattering")
    top.add_argument("--version", action="version", version=f"gdense {__version__}")
    _global_flags(top, suppress=False)
    sub = top.add_subparsers(dest="cmd", parser_class=_Parser)

    def leaf(parent, name, help_):
        p = parent.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        return p

    def quiver_arg(p):
        p.add_argument("--quiver", "-q", required=True, help="builtin name or quiver file")

    p = leaf(sub, "mutate", "mutate a quiver along a sequence of vertices")
    quiver_arg(p)
    p.add_argument("--sequence", type=_sequence, default=(), help="comma separated vertices")

    for name in ("class", "classify"):
        p = leaf(sub, name, "explore the mutation class" if name == "class" else "name the mutation type")
        quiver_arg(p)
        p.add_argument("--budget", type=_positive, default=100_000, help="max classes explored")

    for name in ("fan", "density", "halfspace"):
        p = leaf(sub, name, f"{name} report for the g-vector fan")
        quiver_arg(p)
        p.add_argument("--depth", type=_nonnegative, required=True)
        p.add_argument("--max-seeds", type=_positive, default=None)
        if name != "halfspace":
            p.add_argument("--samples", type=_positive, default=10_000)
            p.add_argument("--sampler", choices=SAMPLERS, default=None)
        if name == "fan":
            p.add_argument("--pairs", type=_positive, default=20_000,
                           help="cone pairs checked for validity (sampled beyond this)")

    alg = sub.add_parser("alg", help="2-term complexes over a path algebra")
    asub = alg.add_subparsers(dest="alg_cmd", parser_class=_Parser)
    for name in ("hom", "presilt", "cyl", "gdecomp"):
        p = leaf(asub, name, f"alg {name}")
        p.add_argument("--algebra", "-a", required=True, help="builtin name or algebra JSON")
        if name == "hom":
            p.add_argument("--x", required=True)
            p.add_argument("--y", required=True)
            p.add_argument("--shift", type=int, choices=[0, 1], default=1)
        elif name == "presilt":
            p.add_argument("--complex", "-c", required=True)
        elif name == "cyl":
            p.add_argument("--u", required=True)
            p.add_argument("--h", required=True)
            p.add_argument("--power", "-m", type=_positive, default=1)
        else:
            p.add_argument("--g", type=_int_vector, required=True)
            p.add_argument("--trials", type=_positive, default=5)
            p.add_argument("--coeff-range", type=_positive, default=100)

    sc = sub.add_parser("scatter", help="scattering diagrams in log coordinates")
    ssub = sc.add_subparsers(dest="scatter_cmd", parser_class=_Parser)
    p = leaf(ssub, "complete", "consistent completion in rank 2")
    p.add_argument("--form", required=True, help="form JSON, quiver JSON, or inline 'a,b;c,d'")
    p.add_argument("--order", "-k", type=_positive, required=True)
    p = leaf(ssub, "attach", "dilogarithm walls on the facets of a fan")
    p.add_argument("--fan", required=True, help="fan JSON file")
    p.add_argument("--form", required=True)
    p.add_argument("--order", "-k", type=_positive, required=True)
    return top


_INPUT_KINDS = {
    "quiver": "quiver", "algebra": "algebra", "x": "complex", "y": "complex",
    "complex": "complex", "u": "complex", "h": "complex", "form": "form", "fan": "fan",
}


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Validated configuration; raises UsageError naming the offending flag."""
    parser = build_parser()
    ns = parser.parse_args(list(argv))
    if ns.cmd is None:
        raise UsageError("gdense: a command is required")
    command = ns.cmd
    if command in ("alg", "scatter"):
        subcmd = getattr(ns, f"{command}_cmd", None)
        if subcmd is None:
            raise UsageError(f"gdense {command}: a subcommand is required")
        command = f"{command}-{subcmd}"
    values = vars(ns)
    if "order" in values:
        values["k"] = values.pop("order")
    known = {f.name for f in fields(RunConfig)}
    cfg = RunConfig(command=command, **{k: v for k, v in values.items() if k in known and k != "command"})
    for name, kind in _INPUT_KINDS.items():
        spec = getattr(cfg, name)
        if spec is None or is_builtin_input(kind, spec):
            continue
        if not os.path.exists(spec):
            raise UsageError(f"gdense {command}: --{name.replace('_', '-')}: no such file {spec!r}")
    return cfg


# --- execution ------------------------------------------------------------------------


def _seedset(cfg: RunConfig, cache: Cache, B):
    from .seeds import SeedSet, enumerate_seeds

    payload = {"matrix": B.to_list(), "depth": cfg.depth, "max_seeds": cfg.max_seeds}
    entry = cache.fetch("seedset", payload, lambda: enumerate_seeds(B, cfg.depth, cfg.max_seeds).to_dict())
    return SeedSet.from_dict(json.loads(entry.text), B), entry


def _cmd_mutate(cfg, cache):
    from .quiver import canonical_form

    B = load_quiver(cfg.quiver)
    if any(not 0 <= k < B.n for k in cfg.sequence):
        raise ValueError(f"mutation sequence {list(cfg.sequence)} out of range for n={B.n}")
    M = B
    for k in cfg.sequence:
        M = M.mutate(k)
    return {
        "input": quiver_to_json(B),
        "sequence": list(cfg.sequence),
        "matrix": M.to_list(),
        "quiver": quiver_to_json(M),
        "canonical_form": canonical_form(M).to_list(),
    }


def _cmd_class(cfg, cache):
    from .quiver import canonical_form, mutation_class

    B = load_quiver(cfg.quiver)
    key = {"canonical": canonical_form(B).to_list(), "budget": cfg.budget}

    def compute():
        rep = mutation_class(B, cfg.budget)
        d = rep.to_dict()
        d["finite"] = rep.finite == "finite"
        d["status"] = rep.finite
        return d

    entry = cache.fetch("mutation-class", key, compute)
    out = json.loads(entry.text)
    out["canonical_form"] = key["canonical"]
    return out


def _cmd_classify(cfg, cache):
    from .quiver import classify

    B = load_quiver(cfg.quiver)
    return {"label": classify(B, cfg.budget), "n": B.n}


def _fan_inputs(cfg, cache):
    from .fan import fan_from_seeds

    B = load_quiver(cfg.quiver)
    S, entry = _seedset(cfg, cache, B)
    return B, S, fan_from_seeds(S)


def _seed_summary(S) -> dict:
    return {"count": len(S), "depth": S.depth, "complete": S.complete, "truncated": S.truncated}


def _cmd_fan(cfg, cache):
    from .fan import coverage, fan_is_valid

    B, S, F = _fan_inputs(cfg, cache)
    return {
        "seeds": _seed_summary(S),
        "fan": F.to_dict(),
        "cones": len(F.cones),
        "rays": [list(r) for r in F.rays()],
        "validity": fan_is_valid(F, cfg.pairs, cfg.seed).to_dict(),
        "coverage": coverage(F, cfg.samples, cfg.sampler).to_dict(),
    }


def _cmd_density(cfg, cache):
    from .fan import coverage, inside_kronecker_gap

    B, S, F = _fan_inputs(cfg, cache)
    out = {
        "seeds": _seed_summary(S),
        "cones": len(F.cones),
        "coverage": coverage(F, cfg.samples, cfg.sampler).to_dict(),
    }
    if B.n == 2 and abs(B.entries[0][1]) >= 2:
        m = abs(B.entries[0][1])
        out["kronecker_m"] = m
        out["rays_in_limit_cone"] = sum(inside_kronecker_gap(r, m) for r in F.rays())
    return out


def _cmd_halfspace(cfg, cache):
    from .fan import halfspace_detect

    B, S, F = _fan_inputs(cfg, cache)
    v = halfspace_detect(F)
    rays = F.rays()
    out = {"seeds": _seed_summary(S), "rays": len(rays), "normal": list(v) if v else None}
    if v:
        dots = [sum(a * b for a, b in zip(v, r)) for r in rays]
        out["verified"] = all(x <= 0 for x in dots)
        out["max_dot"] = max(dots)
    return out


def _cmd_alg_hom(cfg, cache):
    from .complexes import hom_complexes

    A = load_algebra(cfg.algebra)
    X, Y = load_complex(A, cfg.x), load_complex(A, cfg.y)
    return {"algebra": A.name, "hom": hom_complexes(X, Y, cfg.shift).to_dict()}


def _cmd_alg_presilt(cfg, cache):
    from .complexes import hom_complexes

    A = load_algebra(cfg.algebra)
    X = load_complex(A, cfg.complex)
    d = hom_complexes(X, X, 1).quotient_dim
    return {"algebra": A.name, "g_vector": list(X.g_vector()), "self_ext": d, "presilting": d == 0}


def _cmd_alg_cyl(cfg, cache):
    from .complexes import cylinder_power, hom_complexes, is_presilting

    A = load_algebra(cfg.algebra)
    U, H = load_complex(A, cfg.u), load_complex(A, cfg.h)
    d = hom_complexes(U, H, 1).quotient_dim
    C = cylinder_power(U, H, cfg.power)
    return {
        "algebra": A.name,
        "d": d,
        "power": cfg.power,
        "g_vector": list(C.g_vector()),
        "presilting": is_presilting(C),
        "complex": C.to_dict(),
    }


def _cmd_alg_gdecomp(cfg, cache):
    from .decompose import generic_decomposition

    A = load_algebra(cfg.algebra)
    res = generic_decomposition(A, cfg.g, cfg.trials, cfg.seed, cfg.coeff_range)
    return {"algebra": A.name, "g": list(cfg.g), **res.to_dict()}


def _cmd_scatter_complete(cfg, cache):
    from .scatter import complete_rank2, loop_product

    L = load_form(cfg.form)
    walls = complete_rank2(L, cfg.k)
    n_init = L.n
    return {
        "lattice": L.to_dict(),
        "order": cfg.k,
        "inserted": len(walls) - n_init,
        "loop_product_zero": loop_product(walls, cfg.k).is_zero(),
        "walls": [w.to_dict() for w in walls],
    }


def _cmd_scatter_attach(cfg, cache):
    from .scatter import attach_fan_functions

    F = load_fan(cfg.fan)
    L = load_form(cfg.form)
    if L.n != F.ambient_dim:
        raise ValueError(f"form has rank {L.n}, fan lives in dimension {F.ambient_dim}")
    walls = attach_fan_functions(F, L, cfg.k)
    return {
        "lattice": L.to_dict(),
        "order": cfg.k,
        "faces": len(F.facet_map()),
        "skipped": len(F.facet_map()) - len(walls),
        "walls": [w.to_dict() for w in walls],
    }


COMMANDS = {
    "mutate": _cmd_mutate,
    "class": _cmd_class,
    "classify": _cmd_classify,
    "fan": _cmd_fan,
    "density": _cmd_density,
    "halfspace": _cmd_halfspace,
    "alg-hom": _cmd_alg_hom,
    "alg-presilt": _cmd_alg_presilt,
    "alg-cyl": _cmd_alg_cyl,
    "alg-gdecomp": _cmd_alg_gdecomp,
    "scatter-complete": _cmd_scatter_complete,
    "scatter-attach": _cmd_scatter_attach,
}


def _report(cfg: RunConfig, body: dict, ok: bool = True) -> dict:
    return {
        "tool": "gdense",
        "version": __version__,
        "command": cfg.command,
        "config": cfg.provenance(),
        "ok": ok,
        ("result" if ok else "error"): body,
    }


def _emit(cfg: RunConfig, report: dict) -> None:
    text = dumps(report)
    if cfg.output:
        write_atomic(cfg.output, text)
    else:
        sys.stdout.write(text)


def execute(cfg: RunConfig) -> int:
    cache = Cache(cfg.cache_dir, __version__, verify=cfg.verify_cache)
    try:
        body = COMMANDS[cfg.command](cfg, cache)
    except (ValueError, ArithmeticError, CacheMismatch, OSError) as exc:
        log.debug("domain error", exc_info=True)
        _emit(cfg, _report(cfg, {"type": type(exc).__name__, "message": str(exc)}, ok=False))
        return EXIT_DOMAIN
    _emit(cfg, _report(cfg, body))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("GDENSE_LOG", "WARNING"), format="%(levelname)s %(message)s")
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    return execute(cfg)
