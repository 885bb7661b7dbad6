"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 inconsistent
deck.  Errors go to stderr as `error:<kind> <message>`.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from dataclasses import dataclass
from math import comb
from typing import List, Optional, Sequence

from .caterpillar import (
    Caterpillar,
    InvalidSpine,
    enumerate_caterpillars,
    format_caterpillars,
    parse_spine,
)
from .deck import (
    InconsistentDeck,
    SizeMismatch,
    TooLargeForExhaustive,
    decks_equal,
    dump_deck,
    full_deck,
    load_deck,
)
from .patterns import DeckOracle, IllegalQuery, count_induced, parse_pattern
from .reconstruct import CaseFallthrough, reconstruct_with_state
from .verify import (
    BRUTE_MAX_N,
    bruteforce_reconstruct,
    certify_sharpness,
    collision_search,
    report_tsv,
    roundtrip_sweep,
    sample_caterpillar,
)

THREADS_ENV = "CATRECON_THREADS"
DEFAULT_BUDGET = 50_000_000


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: List[int]
    m: Optional[int]
    seed: int
    samples: Optional[int]
    mode: str
    threads: int
    budget: int
    out: Optional[str]


def parse_range(text: str) -> List[int]:
    """'6..14', '48,50,55' or a mix like '6..8,12'."""
    out: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError("bad --n value %r" % text)
    if not out:
        raise UsageError("empty --n value")
    return out


def _threads(flag: Optional[int]) -> int:
    if flag is not None:
        return max(1, flag)
    env = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise UsageError("%s must be an integer" % THREADS_ENV)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="catrecon", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command")

    def common(p, need_n=False):
        p.add_argument("--n", required=need_n, help="vertex count, list or range a..b")
        p.add_argument("--m", type=int, help="card size bound")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int)
        p.add_argument("--mode", choices=("strict", "permissive"), default="strict")
        p.add_argument("--threads", type=int, help="overrides $%s" % THREADS_ENV)
        p.add_argument("--budget-subsets", type=int, default=DEFAULT_BUDGET,
                       help="cap on vertex subsets an exhaustive deck may visit")
        p.add_argument("--out", help="write the main output here instead of stdout")
        return p

    common(sub.add_parser("gen", help="enumerate or sample caterpillars"), need_n=True)
    p = common(sub.add_parser("deck", help="write the exhaustive m-deck of a caterpillar"))
    p.add_argument("--host", required=True, help="spine like 3,2,3 or P7")
    p = common(sub.add_parser("count", help="induced copies of a pattern"))
    p.add_argument("--host", help="spine like 3,2,3")
    p.add_argument("--deck", help="deck file to answer from instead of a host")
    p.add_argument("--pattern", required=True, help="e.g. baton:2,3,3 or path:4")
    p = common(sub.add_parser("reconstruct", help="reconstruct from a hidden caterpillar or a deck"))
    p.add_argument("--hidden", help="spine of the hidden caterpillar")
    p.add_argument("--deck", help="deck file (n <= %d)" % BRUTE_MAX_N)
    p = common(sub.add_parser("verify", help="seeded round trips"), need_n=True)
    p.add_argument("--exhaustive", action="store_true", help="every caterpillar of each n")
    common(sub.add_parser("sharpness", help="certify the spider pair"), need_n=True)
    common(sub.add_parser("search", help="collision search over all caterpillars"), need_n=True)
    common(sub.add_parser("bench", help="time counting and deck building"), need_n=True)
    return ap


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _single_n(cfg: RunConfig) -> int:
    if len(cfg.n) != 1:
        raise UsageError("%s takes a single --n" % cfg.command)
    return cfg.n[0]


def _check_m(n: int, m: Optional[int], default: int) -> int:
    if m is None:
        return default
    if not 1 <= m <= (n + 2) // 2:
        raise UsageError("--m must lie in 1..%d for n=%d" % ((n + 2) // 2, n))
    return m


def _check_budget(n: int, m: int, budget: int) -> None:
    visits = sum(comb(n, k) for k in range(1, m + 1))
    if visits > budget:
        raise TooLargeForExhaustive("deck needs %d subsets, budget is %d" % (visits, budget))


def _host(text: Optional[str], flag: str) -> Caterpillar:
    if not text:
        raise UsageError("%s is required" % flag)
    return parse_spine(text)


def cmd_gen(cfg: RunConfig, args) -> int:
    n = _single_n(cfg)
    if cfg.samples is None:
        cats = list(enumerate_caterpillars(n))
    else:
        rng = random.Random("%d:%d" % (cfg.seed, n))
        cats = [sample_caterpillar(n, rng) for _ in range(cfg.samples)]
    _write(cfg, format_caterpillars(cats))
    return 0


def cmd_deck(cfg: RunConfig, args) -> int:
    g = _host(args.host, "--host")
    m = _check_m(g.n, cfg.m, (g.n + 2) // 2)
    _check_budget(g.n, m, cfg.budget)
    _write(cfg, dump_deck(full_deck(g, m, cfg.threads)))
    return 0


def cmd_count(cfg: RunConfig, args) -> int:
    p = parse_pattern(args.pattern)
    if args.deck:
        with open(args.deck) as fh:
            d = load_deck(fh.read())
        o = DeckOracle(d.n, deck=d, max_card=d.m)
        value = o.query(p)
    else:
        value = count_induced(_host(args.host, "--host or --deck"), p)
    _write(cfg, "%d\n" % value)
    return 0


def cmd_reconstruct(cfg: RunConfig, args) -> int:
    if bool(args.hidden) == bool(args.deck):
        raise UsageError("give exactly one of --hidden and --deck")
    deck = None
    if args.deck:
        with open(args.deck) as fh:
            deck = load_deck(fh.read())
        if deck.n > BRUTE_MAX_N:
            raise UsageError("deck files are supported for n <= %d" % BRUTE_MAX_N)
        n = deck.n
        o = DeckOracle(n, deck=deck)
    else:
        g = _host(args.hidden, "--hidden")
        n = g.n
        o = DeckOracle(n, hidden=g)
    if cfg.mode == "strict" and n < 48:
        raise UsageError("strict mode needs n >= 48; use --mode permissive")
    case = ""
    try:
        got, state = reconstruct_with_state(n, o, cfg.mode)
        case = state.case or (state.trail[0] if state.trail else "")
    except CaseFallthrough as exc:
        if cfg.mode != "permissive" or n > BRUTE_MAX_N:
            raise
        if deck is None:
            deck = full_deck(g, o.max_card)
        found = bruteforce_reconstruct(deck)
        if len(found) != 1:
            raise InconsistentDeck("%d caterpillars share this deck" % len(found)) from exc
        got, case = found[0], "bruteforce"
    if args.deck and not decks_equal(full_deck(got, deck.m), deck):
        raise InconsistentDeck("the answer's deck differs from the input deck")
    text = "%s\n# n=%d queries=%d largest=%d max_card=%d case=%s\n" % (
        got.text(), n, len(o.query_log), o.largest_query(), o.max_card, case or "-")
    _write(cfg, text)
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    samples = 100 if cfg.samples is None else cfg.samples
    rows = roundtrip_sweep(cfg.n, samples, cfg.seed, cfg.mode, cfg.threads,
                           exhaustive=args.exhaustive, fallback=cfg.mode == "permissive")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(report_tsv(rows))
    bad = [t for t in rows if not t.ok]
    for n in sorted({t.n for t in rows}):
        mine = [t for t in rows if t.n == n]
        print("n=%d ok=%d/%d" % (n, sum(t.ok for t in mine), len(mine)))
    for t in bad:
        print("FAIL n=%d spine=%s %s" % (t.n, t.spine, t.error), file=sys.stderr)
        for line in t.log:
            print("  query %s" % line, file=sys.stderr)
    if bad:
        raise VerificationFailed("%d of %d round trips failed" % (len(bad), len(rows)))
    return 0


def cmd_sharpness(cfg: RunConfig, args) -> int:
    lines = []
    failed = 0
    for n in cfg.n:
        res = certify_sharpness(n)
        g, h = res.pair
        good = res.equal and res.distinguished_at == res.k + 1
        failed += not good
        lines.append("n=%d k=%d pair=%s|%s equal=%s distinguished_at=%s\n" % (
            n, res.k, g.text(), h.text(), "yes" if res.equal else "no",
            res.distinguished_at if res.distinguished_at is not None else "-"))
    _write(cfg, "".join(lines))
    if failed:
        raise VerificationFailed("%d sharpness certificates failed" % failed)
    return 0


def cmd_search(cfg: RunConfig, args) -> int:
    n = _single_n(cfg)
    m = cfg.m if cfg.m is not None else n // 2 + 1
    if not 1 <= m <= n:
        raise UsageError("--m must lie in 1..n")
    if n > BRUTE_MAX_N:
        raise TooLargeForExhaustive("collision search is capped at n=%d" % BRUTE_MAX_N)
    rep = collision_search(n, m)
    _write(cfg, "# n=%d m=%d collisions=%d\n" % (n, m, rep.collisions) + rep.text())
    return 0


def cmd_bench(cfg: RunConfig, args) -> int:
    """Timings are reported, so this is the one command whose output varies."""
    n = _single_n(cfg)
    m = cfg.m if cfg.m is not None else (n + 2) // 2
    rng = random.Random("%d:%d" % (cfg.seed, n))
    hosts = [sample_caterpillar(n, rng) for _ in range(cfg.samples or 20)]
    pats = [sample_caterpillar(rng.randint(3, max(3, m)), rng) for _ in range(20)]
    t0 = time.perf_counter()
    for g in hosts:
        for p in pats:
            count_induced(g, p)
    per = (time.perf_counter() - t0) / (len(hosts) * len(pats))
    lines = ["count_induced n=%d patterns<=%d mean_us=%.1f\n" % (n, m, per * 1e6)]
    try:
        _check_budget(n, m, cfg.budget)
        t0 = time.perf_counter()
        full_deck(hosts[0], m, cfg.threads)
        lines.append("full_deck n=%d m=%d seconds=%.3f\n" % (n, m, time.perf_counter() - t0))
    except TooLargeForExhaustive as exc:
        lines.append("full_deck n=%d m=%d skipped (%s)\n" % (n, m, exc))
    _write(cfg, "".join(lines))
    return 0


COMMANDS = {
    "gen": cmd_gen,
    "deck": cmd_deck,
    "count": cmd_count,
    "reconstruct": cmd_reconstruct,
    "verify": cmd_verify,
    "sharpness": cmd_sharpness,
    "search": cmd_search,
    "bench": cmd_bench,
}


def _fail(kind: str, msg: str, code: int) -> int:
    print("error:%s %s" % (kind, msg), file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its message
        if exc.code in (0, None):
            return 0
        print("error:usage bad arguments", file=sys.stderr)
        return 2
    if args.command is None:
        ap.print_usage(sys.stderr)
        return _fail("usage", "missing subcommand", 2)
    try:
        cfg = RunConfig(args.command, parse_range(args.n) if args.n else [], args.m,
                        args.seed, args.samples, args.mode, _threads(args.threads),
                        args.budget_subsets, args.out)
        return COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        return _fail("usage", str(exc), 2)
    except InconsistentDeck as exc:
        return _fail("inconsistent-deck", str(exc), 3)
    except VerificationFailed as exc:
        return _fail("verification", str(exc), 1)
    except CaseFallthrough as exc:
        return _fail("fallthrough", str(exc), 1)
    except TooLargeForExhaustive as exc:
        return _fail("budget", str(exc), 2)
    except (InvalidSpine, SizeMismatch, IllegalQuery, ValueError) as exc:
        return _fail("usage", "%s: %s" % (type(exc).__name__, exc), 2)
    except OSError as exc:
        return _fail("io", str(exc), 2)


if __name__ == "__main__":
    sys.exit(main())
