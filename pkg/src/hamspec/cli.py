"""Experiment harness and command-line interface.

Subcommands: encode, filter, pseudo, extract, oracle, check-profile, run,
bench. The `run` verdict is data, not a test result: MATCH / MISMATCH /
INCONCLUSIVE all exit 0; only operational failures exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import extraction, filter_pipeline, grid, schedule, walk_oracle
from .graph import Graph, GraphParseError, load_graph
from .numerics import (
    NormalizedSeries,
    PrecisionComplex,
    series_from_text,
    series_to_text,
    to_decimal,
)
from .schedule import PipelineProfile, ProfileError, desk_profile

VERDICT_MATCH = "MATCH"
VERDICT_MISMATCH = "MISMATCH"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"
VERDICT_UNVERIFIED = "UNVERIFIED"


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class RunReport:
    graph_file: str
    n: int
    edge_count: int
    profile: PipelineProfile
    schedule_digest: dict
    oracle: dict | None
    extraction: dict
    verdict: str
    timings_ms: dict = field(default_factory=dict)

    def to_json_dict(self, timings: bool = True) -> dict:
        d = {
            "graph": {"file": self.graph_file, "n": self.n, "edges": self.edge_count},
            "profile": {
                "n": self.profile.n,
                "n_d": self.profile.n_d,
                "n_d1": self.profile.n_d1,
                "r_1": self.profile.r_1,
                "r_mu": self.profile.r_mu,
                "c": self.profile.c,
                "p_1": self.profile.p_1,
                "p_2": self.profile.p_2,
            },
            "schedule": self.schedule_digest,
            "oracle": self.oracle,
            "extraction": self.extraction,
            "verdict": self.verdict,
        }
        if timings:
            d["timings_ms"] = self.timings_ms
        return d

    def to_text(self, timings: bool = True) -> str:
        lines = [
            f"[graph] file={self.graph_file} n={self.n} edges={self.edge_count}",
            "[profile] "
            + " ".join(
                f"{k}={v}"
                for k, v in (
                    ("n", self.profile.n),
                    ("n_d", self.profile.n_d),
                    ("n_d1", self.profile.n_d1),
                    ("r_1", self.profile.r_1),
                    ("r_mu", self.profile.r_mu),
                    ("c", self.profile.c),
                    ("p_1", self.profile.p_1),
                    ("p_2", self.profile.p_2),
                )
            ),
            "[schedule] " + " ".join(f"{k}={v}" for k, v in self.schedule_digest.items()),
        ]
        if self.oracle is None:
            lines.append("[oracle] omitted (n above oracle limit)")
        else:
            lines.append("[oracle] " + " ".join(f"{k}={v}" for k, v in self.oracle.items()))
        lines.append(
            "[extraction] " + " ".join(f"{k}={v}" for k, v in self.extraction.items())
        )
        lines.append(f"[verdict] {self.verdict}")
        if timings:
            lines.append(
                "[timings] " + " ".join(f"{k}={v:.1f}" for k, v in self.timings_ms.items())
            )
        return "\n".join(lines) + "\n"


def _cplx_digest(z: PrecisionComplex, digits: int = 25) -> dict:
    return {"re": to_decimal(z.re, digits), "im": to_decimal(z.im, digits)}


def _schedule_digest(sched: schedule.StepSchedule) -> dict:
    d = {"alpha": to_decimal(sched.alpha), "beta": to_decimal(sched.beta)}
    for sp in range(1, len(sched.times)):
        d[f"r{sp}"] = to_decimal(sched.times[sp])
    return d


def _resolve_profile(args, n: int | None) -> PipelineProfile:
    if getattr(args, "profile", None):
        return schedule.load_profile(args.profile, n=n)
    if n is None:
        raise ProfileError("no profile file and no graph to take n from")
    return desk_profile(n)


def run_experiment(
    graph_path: str,
    profile: PipelineProfile,
    oracle_limit: int = walk_oracle.DEFAULT_ORACLE_LIMIT,
    threads: int = 1,
    dump_dir: str | None = None,
) -> RunReport:
    """encode -> schedule -> filter -> pseudo-steps -> extract -> verdict."""
    timings = {}

    def staged(stage, fn):
        t0 = time.perf_counter()
        try:
            out = fn()
        except Exception as exc:
            raise StageError(stage, exc) from exc
        timings[f"{stage}_ms"] = (time.perf_counter() - t0) * 1000.0
        return out

    g = staged("parse", lambda: load_graph(graph_path))

    oracle_block = None
    if g.n <= oracle_limit:

        def oracle_stage():
            n_p = walk_oracle.total_walks(g, oracle_limit)
            directed = walk_oracle.count_hamiltonian_paths(g, oracle_limit)
            return {
                "n_p": n_p,
                "n_h_directed": directed,
                "n_h_undirected": directed // 2 if g.n > 1 else 1,
            }

        oracle_block = staged("oracle", oracle_stage)

    f_series = staged("encode", lambda: grid.grid_series(g, profile, threads=threads))
    sched = staged("schedule", lambda: schedule.build_schedule(profile))

    dump = None
    if dump_dir:
        os.makedirs(dump_dir, exist_ok=True)

        def dump(sp, series, _dir=dump_dir):
            with open(os.path.join(_dir, f"step_{sp:03d}.series"), "w") as fh:
                fh.write(series_to_text(series))

    o_series = staged(
        "filter", lambda: filter_pipeline.run_pipeline(f_series, sched, profile, dump=dump)
    )
    phi01, phi11 = staged(
        "pseudo", lambda: filter_pipeline.run_pseudo_steps(sched, profile)
    )

    singular = False
    try:
        result = staged(
            "extract",
            lambda: extraction.extract_nh(o_series, phi01, phi11, sched, profile.p_2),
        )
    except StageError as exc:
        if isinstance(exc.cause, extraction.SingularSystemError):
            singular = True
            result = None
        else:
            raise

    if result is None:
        ext_block = {"error": "singular-system"}
        flags = ("singular",)
    else:
        ext_block = {
            "k0_re": to_decimal(result.k0.re, 25),
            "k0_im": to_decimal(result.k0.im, 25),
            "z1_re": to_decimal(result.z1.re, 25),
            "z1_im": to_decimal(result.z1.im, 25),
            "n_h_rounded": result.n_h_rounded,
            "round_distance": to_decimal(result.round_distance),
            "imag_magnitude": to_decimal(result.imag_magnitude),
            "residual0": to_decimal(result.residual0),
            "residual1": to_decimal(result.residual1),
            "flags": ",".join(result.flags) or "none",
        }
        flags = result.flags

    if oracle_block is None:
        verdict = VERDICT_UNVERIFIED
    elif singular or flags:
        verdict = VERDICT_INCONCLUSIVE
    elif result.n_h_rounded == oracle_block["n_h_directed"]:
        verdict = VERDICT_MATCH
    else:
        verdict = VERDICT_MISMATCH

    return RunReport(
        graph_file=os.path.basename(graph_path),
        n=g.n,
        edge_count=g.edge_count(),
        profile=profile,
        schedule_digest=_schedule_digest(sched),
        oracle=oracle_block,
        extraction=ext_block,
        verdict=verdict,
        timings_ms=timings,
    )


def scaling_benchmark(n_values, oracle_limit: int = walk_oracle.DEFAULT_ORACLE_LIMIT):
    """Wall-clock per stage on complete graphs K_n with the desk profile."""
    rows = []
    for n in n_values:
        g = Graph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])
        profile = desk_profile(n)
        row = {"n": n}
        t0 = time.perf_counter()
        walk_oracle.walk_spectrum(g, max(oracle_limit, n))
        row["oracle_ms"] = (time.perf_counter() - t0) * 1000.0
        t0 = time.perf_counter()
        f_series = grid.grid_series(g, profile)
        row["encode_ms"] = (time.perf_counter() - t0) * 1000.0
        t0 = time.perf_counter()
        sched = schedule.build_schedule(profile)
        row["schedule_ms"] = (time.perf_counter() - t0) * 1000.0
        t0 = time.perf_counter()
        filter_pipeline.run_pipeline(f_series, sched, profile)
        row["filter_ms"] = (time.perf_counter() - t0) * 1000.0
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_encode(args) -> int:
    g = load_graph(args.graph)
    profile = _resolve_profile(args, g.n)
    series = grid.grid_series(g, profile, threads=args.threads)
    text = series_to_text(series)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_filter(args) -> int:
    with open(args.series) as fh:
        f_series = series_from_text(fh.read())
    profile = _resolve_profile(args, args.n)
    sched = schedule.build_schedule(profile)
    dump = None
    if args.dump_steps:
        os.makedirs(args.dump_steps, exist_ok=True)

        def dump(sp, series, _dir=args.dump_steps):
            with open(os.path.join(_dir, f"step_{sp:03d}.series"), "w") as fh:
                fh.write(series_to_text(series))

    out = filter_pipeline.run_pipeline(f_series, sched, profile, dump=dump)
    text = series_to_text(out)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_pseudo(args) -> int:
    profile = _resolve_profile(args, args.n)
    sched = schedule.build_schedule(profile)
    phi01, phi11 = filter_pipeline.run_pseudo_steps(sched, profile)
    pair = NormalizedSeries([phi01, phi11], profile.p_2)
    text = series_to_text(pair)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_extract(args) -> int:
    with open(args.series) as fh:
        o_series = series_from_text(fh.read())
    with open(args.pseudo) as fh:
        pair = series_from_text(fh.read())
    if pair.degree_bound != 1:
        print("error: pseudo file must hold exactly two coefficients", file=sys.stderr)
        return 1
    profile = _resolve_profile(args, args.n)
    sched = schedule.build_schedule(profile)
    try:
        result = extraction.extract_nh(
            o_series, pair.coeffs[0], pair.coeffs[1], sched, profile.p_2
        )
    except extraction.SingularSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"k0_re={to_decimal(result.k0.re, 25)}")
    print(f"k0_im={to_decimal(result.k0.im, 25)}")
    print(f"z1_re={to_decimal(result.z1.re, 25)}")
    print(f"z1_im={to_decimal(result.z1.im, 25)}")
    print(f"n_h_rounded={result.n_h_rounded}")
    print(f"round_distance={to_decimal(result.round_distance)}")
    print(f"flags={','.join(result.flags) or 'none'}")
    return 0


def _cmd_oracle(args) -> int:
    g = load_graph(args.graph)
    n_p = walk_oracle.total_walks(g, args.oracle_limit)
    directed = walk_oracle.count_hamiltonian_paths(g, args.oracle_limit)
    undirected = directed // 2 if g.n > 1 else 1
    print(f"n_p={n_p}")
    print(f"n_h_directed={directed}")
    print(f"n_h_undirected={undirected}")
    if args.spectrum:
        spectrum = walk_oracle.walk_spectrum(g, args.oracle_limit)
        for wn in sorted(spectrum):
            print(f"{wn} {spectrum[wn]}")
    return 0


def _cmd_check_profile(args) -> int:
    profile = schedule.load_profile(args.profile, n=args.n)
    constraints = schedule.validate_profile(profile)
    for c in constraints:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.name} slack={c.slack:.6g} ({c.detail})")
    print("profile", "OK" if schedule.profile_ok(constraints) else "INVALID")
    return 0


def _cmd_run(args) -> int:
    try:
        n = load_graph(args.graph).n
    except (GraphParseError, OSError) as exc:
        raise StageError("parse", exc) from exc
    profile = _resolve_profile(args, n)
    report = run_experiment(
        args.graph,
        profile,
        oracle_limit=args.oracle_limit,
        threads=args.threads,
        dump_dir=args.dump_steps,
    )
    timings = not args.no_timings
    if args.json:
        text = json.dumps(report.to_json_dict(timings=timings), indent=2) + "\n"
    else:
        text = report.to_text(timings=timings)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def _cmd_bench(args) -> int:
    lo, _, hi = args.n_range.partition(":")
    n_values = list(range(int(lo), int(hi) + 1)) if hi else [int(lo)] if lo else []
    rows = scaling_benchmark(n_values, oracle_limit=args.oracle_limit)
    print(f"{'n':>3} {'oracle_ms':>12} {'encode_ms':>12} {'schedule_ms':>12} {'filter_ms':>12}")
    for row in rows:
        print(
            f"{row['n']:>3} {row['oracle_ms']:>12.1f} {row['encode_ms']:>12.1f} "
            f"{row['schedule_ms']:>12.1f} {row['filter_ms']:>12.1f}"
        )
    return 0


def _add_common(sub, profile=True, threads=False, out=True):
    if profile:
        sub.add_argument("--profile", help="profile file (key=value lines)")
    if out:
        sub.add_argument("--out", help="write output to this file")
    if threads:
        sub.add_argument(
            "--threads", type=int, default=1, help="worker threads (never changes results)"
        )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hamspec",
        description="Count Hamiltonian paths by frequency encoding plus filter cascade, "
        "with brute-force oracles for verification.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="graph file -> encoded series file")
    p.add_argument("graph")
    _add_common(p, threads=True)
    p.set_defaults(fn=_cmd_encode)

    p = sub.add_parser("filter", help="series file -> filtered series file")
    p.add_argument("series")
    p.add_argument("--n", type=int, help="vertex count for the default profile")
    p.add_argument("--dump-steps", help="directory for per-step series dumps")
    _add_common(p)
    p.set_defaults(fn=_cmd_filter)

    p = sub.add_parser("pseudo", help="emit the decay-channel pair as a 2-line series file")
    p.add_argument("--n", type=int, help="vertex count for the default profile")
    _add_common(p)
    p.set_defaults(fn=_cmd_pseudo)

    p = sub.add_parser("extract", help="solve the two-channel system from files")
    p.add_argument("series", help="filtered output series file")
    p.add_argument("pseudo", help="pseudo pair series file")
    p.add_argument("--n", type=int, help="vertex count for the default profile")
    _add_common(p, out=False)
    p.set_defaults(fn=_cmd_extract)

    p = sub.add_parser("oracle", help="exact walk counts by enumeration")
    p.add_argument("graph")
    p.add_argument("--spectrum", action="store_true", help="print the full spectrum")
    p.add_argument("--oracle-limit", type=int, default=walk_oracle.DEFAULT_ORACLE_LIMIT)
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("check-profile", help="validate a profile in log2 domain")
    p.add_argument("profile")
    p.add_argument("--n", type=int, help="vertex count override")
    p.set_defaults(fn=_cmd_check_profile)

    p = sub.add_parser("run", help="full experiment with verdict report")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--no-timings", action="store_true", help="omit the timings block")
    p.add_argument("--dump-steps", help="directory for per-step series dumps")
    p.add_argument("--oracle-limit", type=int, default=walk_oracle.DEFAULT_ORACLE_LIMIT)
    _add_common(p, threads=True)
    p.set_defaults(fn=_cmd_run)

    p = sub.add_parser("bench", help="stage timings over a range of n (complete graphs)")
    p.add_argument("--n-range", default="3:5", help="inclusive range lo:hi")
    p.add_argument("--oracle-limit", type=int, default=walk_oracle.DEFAULT_ORACLE_LIMIT)
    p.set_defaults(fn=_cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GraphParseError, ProfileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        walk_oracle.OracleLimitError,
        filter_pipeline.DegenerateScheduleError,
        schedule.NoRootError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
