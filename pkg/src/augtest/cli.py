"""Command-line interface.

Subcommands: gen (instance generators), test (single tester runs),
search (accuracy-level search), sweep (experiment harness), ingest
(key-count chunks to .dist files).  Exit codes: 0 success, 2 config or
parse error, 3 tester precondition violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import harness, ingest
from .dist import Distribution, load_dist, save_dist
from .errors import (
    AugtestError,
    ConfigError,
    DuplicateKey,
    FormatError,
    MalformedLine,
    NotNormalized,
)
from .instances import (
    closeness_lb_instance,
    hard_closeness_instance,
    interpolated_predictor,
    uniformity_lb_triple,
)
from .oracles import DistOracle
from .rng import Rng
from .search import SampleComplexityFn, search_test
from .testers import (
    augmented_closeness_test,
    augmented_identity_test,
    closeness_sample_budget,
    standard_closeness_sampleflat,
)

_PARSE_ERRORS = (ConfigError, FormatError, MalformedLine, DuplicateKey, NotNormalized)


def _write_meta(path, metadata: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_gen(args) -> int:
    if args.family == "hard-closeness":
        pair = hard_closeness_instance(args.n)
        save_dist(pair.p, args.out_p)
        save_dist(pair.q, args.out_q)
        _write_meta(args.out_meta or Path(args.out_p).with_suffix(".meta.json"), pair.metadata)
    elif args.family == "hint":
        p = load_dist(args.p)
        save_dist(interpolated_predictor(p, args.beta), args.out)
    elif args.family == "uniformity-lb":
        triple = uniformity_lb_triple(args.n, args.eps, args.d, args.alpha, Rng(args.seed))
        save_dist(triple.phat, f"{args.out_prefix}.phat.dist")
        save_dist(triple.p_bullet, f"{args.out_prefix}.bullet.dist")
        save_dist(triple.p_diamond, f"{args.out_prefix}.diamond.dist")
        _write_meta(f"{args.out_prefix}.meta.json", triple.metadata)
    elif args.family == "closeness-lb":
        pair = closeness_lb_instance(args.n, args.eps, args.alpha, Rng(args.seed))
        save_dist(pair.phat, f"{args.out_prefix}.phat.dist")
        save_dist(pair.p_plus, f"{args.out_prefix}.plus.dist")
        save_dist(pair.p_minus, f"{args.out_prefix}.minus.dist")
        _write_meta(f"{args.out_prefix}.meta.json", pair.metadata)
    return 0


def _cmd_test(args) -> int:
    rng = Rng(args.seed)
    p = load_dist(args.p)
    hint = load_dist(args.hint)
    if args.problem == "closeness":
        q = load_dist(args.q)
        report = augmented_closeness_test(
            hint, DistOracle(p), DistOracle(q), args.alpha, args.eps, rng
        )
    else:
        q = load_dist(args.q)
        report = augmented_identity_test(q, hint, DistOracle(p), args.alpha, args.eps, rng)
    print(report.to_json())
    return 0


def _cmd_search(args) -> int:
    rng = Rng(args.seed)
    p = load_dist(args.p)
    q = load_dist(args.q)
    hint = load_dist(args.hint)
    n = p.n
    eps = args.eps

    f = SampleComplexityFn(lambda a, d: closeness_sample_budget(n, a, eps, d))
    tester = lambda a, d, r: augmented_closeness_test(hint, DistOracle(p), DistOracle(q), a, eps, r)
    standard = lambda d, r: standard_closeness_sampleflat(
        DistOracle(p), DistOracle(q), n, eps, d, r
    )
    report = search_test(tester, f, standard, args.delta, rng)
    print(report.to_json())
    return 0


def _cmd_sweep(args) -> int:
    cfg = harness.SweepConfig.from_json(args.config)
    if cfg.kind == "beta":
        records, rows = harness.beta_sweep(cfg)
        header = harness.BETA_SUMMARY_HEADER
    else:
        records, rows = harness.run_sweep(cfg)
        header = harness.SUMMARY_HEADER
    harness.write_trials_csv(records, args.out_trials)
    harness.write_summary_csv(rows, args.out_summary, header)
    return 0


def _cmd_ingest(args) -> int:
    chunk_files = sorted(p for p in Path(args.input).iterdir() if p.is_file())
    if not chunk_files:
        raise ConfigError(f"no chunk files under {args.input}")
    if not 0 <= args.chunk_index < len(chunk_files):
        raise ConfigError(f"chunk index {args.chunk_index} outside 0..{len(chunk_files) - 1}")

    keymap_path = Path(args.keymap)
    keymap = ingest.load_keymap(keymap_path) if keymap_path.exists() else ingest.KeyMap()
    if args.final_n is None:
        # first pass: learn the full key universe so all chunks share a domain
        for path in chunk_files:
            with open(path, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.rstrip("\n")
                    if line:
                        key, _ = ingest.parse_chunk_line(line)
                        keymap.index(key)
        final_n = keymap.n
    else:
        final_n = args.final_n

    with open(chunk_files[args.chunk_index], "r", encoding="utf-8") as fh:
        dist = ingest.ingest_chunk(fh, keymap, final_n)
    save_dist(dist, args.out)
    ingest.save_keymap(keymap, keymap_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="augtest")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate benchmark instances")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    g = gen_sub.add_parser("hard-closeness")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out-p", required=True)
    g.add_argument("--out-q", required=True)
    g.add_argument("--out-meta", default=None)
    g = gen_sub.add_parser("hint")
    g.add_argument("--p", required=True)
    g.add_argument("--beta", type=float, required=True)
    g.add_argument("--out", required=True)
    g = gen_sub.add_parser("uniformity-lb")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--eps", type=float, required=True)
    g.add_argument("--d", type=float, required=True)
    g.add_argument("--alpha", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out-prefix", required=True)
    g = gen_sub.add_parser("closeness-lb")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--eps", type=float, required=True)
    g.add_argument("--alpha", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out-prefix", required=True)
    gen.set_defaults(func=_cmd_gen)

    test = sub.add_parser("test", help="run one augmented tester")
    test_sub = test.add_subparsers(dest="problem", required=True)
    for problem in ("closeness", "identity"):
        t = test_sub.add_parser(problem)
        t.add_argument("--p", required=True)
        t.add_argument("--q", required=True)
        t.add_argument("--hint", required=True)
        t.add_argument("--alpha", type=float, required=True)
        t.add_argument("--eps", type=float, required=True)
        t.add_argument("--seed", type=int, default=0)
    test.set_defaults(func=_cmd_test)

    search = sub.add_parser("search", help="accuracy-level search")
    search_sub = search.add_subparsers(dest="problem", required=True)
    s = search_sub.add_parser("closeness")
    s.add_argument("--p", required=True)
    s.add_argument("--q", required=True)
    s.add_argument("--hint", required=True)
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    search.set_defaults(func=_cmd_search)

    sweep = sub.add_parser("sweep", help="run the experiment harness")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--out-trials", required=True)
    sweep.add_argument("--out-summary", required=True)
    sweep.set_defaults(func=_cmd_sweep)

    ing = sub.add_parser("ingest", help="key-count chunks to a .dist file")
    ing.add_argument("--input", required=True)
    ing.add_argument("--chunk-index", type=int, required=True)
    ing.add_argument("--out", required=True)
    ing.add_argument("--keymap", required=True)
    ing.add_argument("--final-n", type=int, default=None)
    ing.set_defaults(func=_cmd_ingest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AugtestError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
