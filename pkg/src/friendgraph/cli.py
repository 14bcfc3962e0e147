"""Command-line entry point: ``friendgraph <command> [options]``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .model import DatasetError, file_digest, load_dataset, write_dataset

log = logging.getLogger("friendgraph")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=None,
                   help="random seed (analyses default to 0; generate defaults to the preset's)")
    p.add_argument("--out", default=".", help="output directory (default .)")
    p.add_argument("--format", choices=("json", "tsv"), default="json",
                   help="output format for analysis commands")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _tables(p: argparse.ArgumentParser, policy_default="strict"):
    p.add_argument("--users", required=True, help="users table (CSV)")
    p.add_argument("--edges", required=True, help="edges table (CSV)")
    p.add_argument("--policy", choices=("strict", "stub"), default=policy_default,
                   help="how to treat edge endpoints missing from the users table")


def _paths(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="BFS from every node")
    g.add_argument("--sample", type=int, metavar="K", help="BFS from K seeded random sources")


def _load(args):
    ds, diags = load_dataset(args.users, args.edges, args.policy)
    for d in diags:
        log.warning("%s", d)
    return ds


def _out(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _path_mode(args, n):
    from .report import EXACT_LIMIT
    if args.sample:
        return "sampled", args.sample
    if n > EXACT_LIMIT and not args.exact:
        raise SystemExit(f"graph has {n} nodes (> {EXACT_LIMIT}); pass --exact or --sample K")
    return "exact", None


def cmd_generate(args):
    from .synth import generate_community, load_config, load_preset, write_config
    over = {"seed": args.seed, "n_users": args.n_users}
    cfg = load_config(args.config, **over) if args.config else load_preset(args.preset, **over)
    ds = generate_community(cfg)
    out = _out(args)
    write_dataset(ds, out / "users.csv", out / "edges.csv")
    write_config(cfg, out / "config.yaml")
    print(f"wrote {ds.n_users} users and {ds.n_edges} edges to {out}")


def cmd_serve_mock(args):
    from .mocknet import serve_mock
    ds = _load(args)
    svc = serve_mock(ds, args.page_size, args.token, args.host, args.port)
    print(f"serving {len(svc.listed)} users on {svc.url} ({svc.index.pages} pages)", flush=True)
    try:
        svc._thread.join()
    except KeyboardInterrupt:
        pass
    finally:
        svc.close()


def cmd_crawl(args):
    from .mocknet import CrawlSession, crawl
    out = _out(args)
    session = CrawlSession(args.url, args.token, rate_limit=args.rate,
                           max_retries=args.retries, concurrency=args.concurrency)
    ck = args.checkpoint or out / "crawl.checkpoint.jsonl"
    ds = crawl(session, args.policy, checkpoint=ck)
    write_dataset(ds, out / "users.csv", out / "edges.csv")
    print(f"crawled {ds.n_users} users and {ds.n_edges} edges "
          f"({session.requests_sent} requests) into {out}")


def cmd_demography(args):
    from .demog import FAMILIES, demography_report, family_tsv
    rep = demography_report(_load(args))
    out = _out(args)
    if args.format == "json":
        (out / "demography.json").write_text(json.dumps(rep.to_dict(), indent=2) + "\n")
    else:
        for fam in FAMILIES:
            (out / f"demography_{fam}.tsv").write_text(family_tsv(rep, fam))
    print(f"demography of {rep.n_total} users written to {out}")


def cmd_preferences(args):
    from .report import _agediff_dict, _mixing_dict, _tsv
    from .prefs import age_difference_histogram, gender_mixing, single_single_share, status_mixing
    ds = _load(args)
    gm, sm, ah = gender_mixing(ds), status_mixing(ds), age_difference_histogram(ds)
    doc = {"gender": _mixing_dict(gm), "status": _mixing_dict(sm), "age_difference": _agediff_dict(ah)}
    doc["status"]["single_single_share"] = single_single_share(sm)
    out = _out(args)
    if args.format == "json":
        (out / "preferences.json").write_text(json.dumps(doc, indent=2) + "\n")
    else:
        for kind in ("gender", "status"):
            mix = doc[kind]
            (out / f"{kind}_mixing.tsv").write_text(_tsv(
                ["pair", "observed", "expected", "ratio"],
                [[k, v, mix["expected"][k], mix["ratio"][k]] for k, v in mix["pairs"].items()]))
        (out / "age_difference.tsv").write_text(
            _tsv(["age_difference", "edges"], list(enumerate(ah.bins))))
    print(f"preferences over {ds.n_edges} edges written to {out}")


def cmd_topology(args):
    from .report import analyze_topology, plot_tables
    ds = _load(args)
    mode, k = _path_mode(args, ds.n_users)
    topo = analyze_topology(ds, mode, k, args.seed or 0, trials=args.trials)
    out = _out(args)
    doc = topo.to_dict()
    if args.format == "json":
        (out / "topology.json").write_text(json.dumps(doc, indent=2) + "\n")
    tables = plot_tables({"demography": {"families": {}, "by_age": []},
                          "preferences": {
                              "gender": {"pairs": {}, "expected": {}, "ratio": {}},
                              "status": {"pairs": {}, "expected": {}, "ratio": {}},
                              "age_difference": {"bins": []}},
                          "topology": doc})
    for name in ("degree_distribution.tsv", "degree_fit.tsv", "robustness.tsv"):
        (out / name).write_text(tables[name])
    p = doc["paths"]
    msg = f"topology of {topo.nodes} nodes written to {out}"
    if p:
        msg += f"; avg path {p['avg']:.3f} (max {p['max']}, {p['mode']})"
    if doc["power_law"]:
        msg += f"; lambda {doc['power_law']['lambda']:.3f}"
    print(msg)


def cmd_report(args):
    from .report import build_report, emit_plot_data
    ds = _load(args)
    mode, k = _path_mode(args, ds.n_users)
    inputs = {"users": file_digest(args.users), "edges": file_digest(args.edges)}
    text = build_report(ds, seed=args.seed or 0, mode=mode, sample=k, trials=args.trials, inputs=inputs)
    out = _out(args)
    (out / "report.json").write_text(text, encoding="utf-8", newline="\n")
    emit_plot_data(text, out / "plots")
    print(f"report written to {out / 'report.json'}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="friendgraph", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    p = sub.add_parser("generate", parents=[common], help="generate a synthetic community")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--preset", default="losbanos2008")
    src.add_argument("--config", help="YAML generator config")
    p.add_argument("--n-users", type=int)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("serve-mock", parents=[common], help="serve a dataset as a mock profile site")
    _tables(p)
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--token", required=True, help="session cookie value to accept")
    p.add_argument("--page-size", type=int, default=10)
    p.set_defaults(func=cmd_serve_mock)

    p = sub.add_parser("crawl", parents=[common], help="crawl a mock profile site")
    p.add_argument("--url", required=True)
    p.add_argument("--token", required=True)
    p.add_argument("--rate", type=float, default=10.0, help="max requests per second")
    p.add_argument("--retries", type=int, default=3)
    p.add_argument("--concurrency", type=int, default=4)
    p.add_argument("--checkpoint", help="checkpoint file (default OUT/crawl.checkpoint.jsonl)")
    p.add_argument("--policy", choices=("strict", "stub"), default="stub")
    p.set_defaults(func=cmd_crawl)

    p = sub.add_parser("demography", parents=[common], help="user tallies by attribute")
    _tables(p)
    p.set_defaults(func=cmd_demography)

    p = sub.add_parser("preferences", parents=[common], help="friendship mixing patterns")
    _tables(p)
    p.set_defaults(func=cmd_preferences)

    for name, fn, helptext in (("topology", cmd_topology, "network metrics"),
                               ("report", cmd_report, "run every analysis")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        _tables(p)
        _paths(p)
        p.add_argument("--trials", type=int, default=5, help="random-removal repetitions")
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except DatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
