"""Command-line front end.

Every computation and every identity check is a subcommand; verification
subcommands exit 1 on the first mismatch (naming the offending
coefficient) and 2 on usage errors, so the tool slots into CI pipelines.
JSON output carries ``"schema": 1`` and serializes big integers as
strings.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import bijection, core, diagram, lineups, oracle, polynomials, series
from .core import Partition, Profile, parse_cylindric, parse_profile
from .rings import QQ, QuadraticField
from .slices import ShrinkMode, decompose as slice_decompose, shrink, slice_shape

SCHEMA = 1


def _emit(args, payload: dict, text_lines: list[str], csv_rows: list[list] | None = None):
    if args.format == "json":
        payload["schema"] = SCHEMA
        print(json.dumps(payload, indent=2))
    elif args.format == "csv" and csv_rows is not None:
        for row in csv_rows:
            print(",".join(str(x) for x in row))
    else:
        for line in text_lines:
            print(line)


def _partitions_from(args) -> list[core.CylindricPartition]:
    profile = parse_profile(args.profile) if args.profile else None
    if args.partition == "-":
        texts = [line.strip() for line in sys.stdin if line.strip()]
    else:
        texts = [args.partition]
    return [parse_cylindric(t, profile) for t in texts]


def cmd_enumerate(args) -> int:
    profile = parse_profile(args.profile)
    found = oracle.enumerate_by_weight(profile, args.order)
    lines = [cp.to_text() for cp in found]
    _emit(args, {"command": "enumerate", "profile": list(profile.parts),
                 "order": args.order, "partitions": lines},
          lines, [[t] for t in lines])
    return 0


def cmd_count(args) -> int:
    profile = parse_profile(args.profile)
    ts = oracle.count_series(profile, args.order)
    _emit(args, {"command": "count", "profile": list(profile.parts),
                 **ts.to_json()},
          [str(ts)], [[i, c] for i, c in enumerate(ts.coeffs)])
    return 0


def cmd_borodin(args) -> int:
    profile = parse_profile(args.profile)
    ts = series.borodin_product(profile, args.order)
    _emit(args, {"command": "borodin", "profile": list(profile.parts),
                 **ts.to_json()},
          [str(ts)], [[i, c] for i, c in enumerate(ts.coeffs)])
    return 0


def cmd_decompose(args) -> int:
    for cp in _partitions_from(args):
        mu, beta = bijection.pivot_decompose(cp)
        line = f"beta={beta.to_text() or '-'} mu={mu or '-'}"
        _emit(args, {"command": "decompose", "input": cp.to_json(),
                     "beta": beta.to_text(), "mu": [str(p) for p in mu.parts]},
              [line])
    return 0


def cmd_reconstruct(args) -> int:
    profile = parse_profile(args.profile)
    beta = bijection.LabeledDistinctPartition.parse(args.beta or "")
    mu_parts = tuple(int(p) for p in args.mu.split(",") if p.strip()) if args.mu else ()
    mu = Partition(tuple(sorted(mu_parts, reverse=True)))
    cp = bijection.pivot_reconstruct(mu, beta, profile)
    _emit(args, {"command": "reconstruct", "result": cp.to_json()}, [cp.to_text()])
    return 0


def cmd_slices(args) -> int:
    for cp in _partitions_from(args):
        chain = slice_decompose(cp)
        lines = [f"{s.weight}^{slice_shape(s)} x{mult} [{','.join(map(str, s.lengths))}]"
                 for s, mult in chain.entries]
        _emit(args, {"command": "slices", "input": cp.to_json(),
                     "chain": [{"lengths": list(s.lengths), "multiplicity": m,
                                "shape": list(slice_shape(s).parts)}
                               for s, m in chain.entries]},
              lines)
    return 0


def cmd_shrink(args) -> int:
    mode = ShrinkMode.EXACT if args.mode == "exact" else ShrinkMode.AT_MOST
    for cp in _partitions_from(args):
        chain = slice_decompose(cp)
        tight, side = shrink(chain, mode)
        lines = [f"tight: {'; '.join(str(list(t.lengths)) for t in tight)}",
                 f"side:  {side or '-'}"]
        _emit(args, {"command": "shrink", "mode": args.mode,
                     "tight": [list(t.lengths) for t in tight],
                     "side": [str(p) for p in side.parts]},
              lines)
    return 0


def cmd_stg(args) -> int:
    profile = parse_profile(args.profile) if args.profile else None
    rank = profile.rank if profile else args.rank
    level = profile.level if profile else args.level
    if rank is None or level is None:
        print("stg needs --profile or both --rank and --level", file=sys.stderr)
        return 2
    graph = diagram.build_graph(rank, level, profile)
    order, mat, sizes = diagram.adjacency_matrix(graph)
    power = diagram.matrix_power(mat, rank)
    blocks = diagram.diagonal_blocks(power, sizes)
    payload = {
        "command": "stg", "rank": rank, "level": level,
        "nodes": [list(s.parts) for s in order],
        "class_sizes": sizes,
        "adjacency": mat,
        "rank_power_blocks": blocks,
        "block_char_polys": [[str(c) for c in diagram.char_poly(b).coeffs]
                             for b in blocks],
    }
    _emit(args, payload, [graph.to_adjacency_text()])
    return 0


def cmd_path_counts(args) -> int:
    profile = parse_profile(args.profile)
    table = diagram.path_counts(profile, args.order)
    lines = [f"a_{n} = {v}" for n, v in enumerate(table.totals)]
    _emit(args, {"command": "path-counts", "profile": list(profile.parts),
                 "totals": [str(v) for v in table.totals],
                 "by_shape": [{str(s): str(v) for s, v in layer}
                              for layer in table.by_shape]},
          lines, [[n, v] for n, v in enumerate(table.totals)])
    return 0


def cmd_distinct_gf(args) -> int:
    profile = parse_profile(args.profile)
    ts = diagram.distinct_gf(profile, args.order)
    _emit(args, {"command": "distinct-gf", "profile": list(profile.parts),
                 **ts.to_json()},
          [str(ts)], [[i, c] for i, c in enumerate(ts.coeffs)])
    return 0


def builtin_closed_form(profile: Profile):
    """The worked closed forms: residual polynomial plus weighted products."""
    key = profile.parts
    if key == (1, 1, 1):
        return QQ, [(Fraction(3, 2), 2, 0)], [Fraction(-1, 2)]
    if key == (2, 0, 0):
        K = QuadraticField(5)
        s = K.sqrt()
        return K, [((1 + s * Fraction(1, 5)) * Fraction(1, 2), (1 + s) * Fraction(1, 2), 0),
                   ((1 - s * Fraction(1, 5)) * Fraction(1, 2), (1 - s) * Fraction(1, 2), 0)], []
    if key == (4, 0):
        K = QuadraticField(3)
        s = K.sqrt()
        return K, [((2 + s) * Fraction(1, 6), s, 0),
                   ((2 - s) * Fraction(1, 6), -s, 0)], [Fraction(1, 3)]
    return None


def cmd_verify_closed_form(args) -> int:
    profile = parse_profile(args.profile)
    preset = builtin_closed_form(profile)
    if preset is None:
        print(f"no built-in closed form for {profile}; "
              f"known profiles: 1,1,1  2,0,0  4,0", file=sys.stderr)
        return 2
    ring, combination, residual = preset
    report = diagram.verify_closed_form(profile, combination, residual,
                                        args.order, ring=ring)
    _emit(args, {"command": "verify-closed-form", "profile": list(profile.parts),
                 "ok": report.ok and report.irrational_ok,
                 "first_mismatch": report.first_mismatch},
          [str(report)])
    return 0 if report.ok and report.irrational_ok else 1


_POLY_KINDS = {
    "P": polynomials.parts_at_most_poly,
    "Peq": polynomials.largest_part_exact_poly,
    "Ptilde": polynomials.pivot_lineup_poly,
    "Qtilde": polynomials.pivot_corrected_poly,
}


def cmd_poly(args) -> int:
    profile = parse_profile(args.profile)
    fn = _POLY_KINDS[args.kind]
    fam = polynomials.family(profile.rank, profile.level)
    methods = {"P": fam.parts_at_most, "Peq": fam.largest_part_exact,
               "Ptilde": fam.pivot_lineup, "Qtilde": fam.pivot_corrected}
    rows = [["rank", "level", "n", "shape", "value_at_1", "min_coefficient"]]
    for n in range(args.n + 1):
        for sh in fam.shapes:
            poly = methods[args.kind](n, sh)
            mn = min(poly.coeffs) if poly.coeffs else 0
            rows.append([profile.rank, profile.level, n, f"({'-'.join(map(str, sh.parts))})",
                         poly(1), mn])
    poly = fn(profile, args.n)
    _emit(args, {"command": f"poly {args.kind}", "profile": list(profile.parts),
                 "n": args.n, "coeffs": [str(c) for c in poly.coeffs]},
          [f"{args.kind}[n={args.n}] = {poly}"], rows)
    return 0


def cmd_functional_eq(args) -> int:
    profile = parse_profile(args.profile)
    ok, detail = polynomials.check_functional_equation(profile, args.order)
    _emit(args, {"command": "functional-eq", "profile": list(profile.parts),
                 "order": args.order, "ok": ok, "detail": detail},
          [detail])
    return 0 if ok else 1


def cmd_lineups(args) -> int:
    profile = parse_profile(args.profile)
    if args.kind == "mll":
        found = lineups.enumerate_minimal_loose(args.n, profile)
    else:
        found = lineups.enumerate_minimal_jammed(args.n, profile)
    lines = [l.to_text() for l in found]
    _emit(args, {"command": "lineups", "profile": list(profile.parts),
                 "kind": args.kind, "n": args.n, "lineups": lines},
          lines, [[t] for t in lines])
    return 0


def cmd_lemma_check(args) -> int:
    profile = parse_profile(args.profile)
    report = lineups.lemma_check(args.n, profile, args.order)
    _emit(args, {"command": "lemma-check", "profile": list(profile.parts),
                 "n": args.n, "order": args.order, "ok": report.ok},
          [str(report)])
    return 0 if report.ok else 1


def cmd_qconj_check(args) -> int:
    profile = parse_profile(args.profile)
    report = lineups.qconj_genfunc_check(profile, args.order, args.n)
    _emit(args, {"command": "qconj-check", "profile": list(profile.parts),
                 "n_max": args.n, "order": args.order, "ok": report.ok},
          [str(report)])
    return 0 if report.ok else 1


def _verify_all_tasks(profile: Profile, order: int, seed: int):
    """(name, callable) pairs; each callable returns (ok, detail)."""
    rng = random.Random(seed)

    def borodin_vs_oracle():
        a = oracle.count_series(profile, order)
        b = series.borodin_product(profile, order)
        bad = next((i for i in range(order + 1) if a.coeffs[i] != b.coeffs[i]), None)
        return bad is None, ("counts match the infinite product" if bad is None
                             else f"first mismatch at q^{bad}: {a.coeffs[bad]} vs {b.coeffs[bad]}")

    def distinct_vs_oracle():
        a = oracle.count_distinct_series(profile, order)
        b = diagram.distinct_gf(profile, order)
        bad = next((i for i in range(order + 1) if a.coeffs[i] != b.coeffs[i]), None)
        return bad is None, ("distinct-part counts match the path-count series"
                             if bad is None else f"first mismatch at q^{bad}")

    def bijection_roundtrip():
        pool = oracle.enumerate_by_weight(profile, min(order, 10))
        sample = pool if len(pool) <= 400 else rng.sample(pool, 400)
        for cp in sample:
            mu, beta = bijection.pivot_decompose(cp)
            if bijection.pivot_reconstruct(mu, beta, profile) != cp:
                return False, f"roundtrip broke on {cp.to_text()}"
        return True, f"pivot roundtrip on {len(sample)} partitions"

    def slices_roundtrip():
        pool = oracle.enumerate_by_weight(profile, min(order, 10))
        sample = pool if len(pool) <= 400 else rng.sample(pool, 400)
        from .slices import recompose
        for cp in sample:
            if recompose(slice_decompose(cp)) != cp:
                return False, f"slice roundtrip broke on {cp.to_text()}"
        return True, f"slice roundtrip on {len(sample)} partitions"

    def tight_packing_roundtrip():
        from .slices import expand
        pool = [cp for cp in oracle.enumerate_by_weight(profile, min(order, 10))
                if not cp.is_empty]
        sample = pool if len(pool) <= 300 else rng.sample(pool, 300)
        for cp in sample:
            chain = slice_decompose(cp)
            for mode in ShrinkMode:
                tight, side = shrink(chain, mode)
                if chain.weight != sum(t.weight for t in tight) + side.weight:
                    return False, f"weight bookkeeping broke on {cp.to_text()}"
                regrown = expand(tight, side, mode)
                if [s.lengths for s in regrown] != \
                        [s.lengths for s in chain.expanded()]:
                    return False, f"tight packing broke on {cp.to_text()}"
        return True, f"tight packing roundtrip on {len(sample)} partitions"

    def bounded_polys():
        for n in range(min(4, order) + 1):
            a = polynomials.parts_at_most_series(profile, n, order)
            b = oracle.count_max_at_most(profile, n, order)
            if a.coeffs != b.coeffs:
                return False, f"parts<= {n} numerator mismatch"
            a = polynomials.largest_part_exact_series(profile, n, order)
            b = oracle.count_max_exactly(profile, n, order)
            if a.coeffs != b.coeffs:
                return False, f"largest={n} numerator mismatch"
        return True, "bounded-part numerators match the oracle"

    def two_variable():
        F = polynomials.f_truncated(profile, order)
        if F.at_z_one().coeffs != series.borodin_product(profile, order).coeffs:
            return False, "z=1 specialization disagrees with the product"
        if F.coeffs != oracle.count_bivariate(profile, order).coeffs:
            return False, "largest-part refinement disagrees with the oracle"
        return True, "two-variable series matches oracle and product"

    def functional_eq():
        return polynomials.check_functional_equation(profile, min(order, 10))

    def lemma():
        rep = lineups.lemma_check(2, profile, min(order, 12))
        return rep.ok, str(rep)

    def qconj():
        rep = lineups.qconj_genfunc_check(profile, min(order, 10), 2)
        return rep.ok, str(rep)

    return [
        ("count-vs-product", borodin_vs_oracle),
        ("distinct-vs-oracle", distinct_vs_oracle),
        ("bijection-roundtrip", bijection_roundtrip),
        ("slices-roundtrip", slices_roundtrip),
        ("tight-packing-roundtrip", tight_packing_roundtrip),
        ("bounded-polynomials", bounded_polys),
        ("two-variable-series", two_variable),
        ("functional-equation", functional_eq),
        ("pivot-chain-lemma", lemma),
        ("pivot-genfunc", qconj),
    ]


def cmd_verify_all(args) -> int:
    profile = parse_profile(args.profile)
    tasks = _verify_all_tasks(profile, args.order, args.seed)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(lambda t: (t[0], *t[1]()), tasks))
    else:
        results = [(name, *fn()) for name, fn in tasks]
    results.sort(key=lambda r: r[0])
    lines = [f"[{'pass' if ok else 'FAIL'}] {name}: {detail}"
             for name, ok, detail in results]
    all_ok = all(ok for _, ok, _ in results)
    _emit(args, {"command": "verify-all", "profile": list(profile.parts),
                 "order": args.order, "ok": all_ok,
                 "checks": [{"name": n, "ok": ok, "detail": d}
                            for n, ok, d in results]},
          lines)
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cylpart",
        description="Exact computations and identity checks for cylindric partitions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, profile=True, order=None, n=None):
        if profile:
            p.add_argument("--profile", help="comma separated, e.g. 1,2,0")
        if order is not None:
            p.add_argument("--order", type=int, default=order,
                           help="truncation order / weight bound")
        if n is not None:
            p.add_argument("--n", type=int, default=n)
        p.add_argument("--format", choices=["text", "json", "csv"], default="text")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("enumerate", help="dump all partitions up to a weight")
    common(p, order=8); p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("count", help="counts by weight from the enumerator")
    common(p, order=12); p.set_defaults(fn=cmd_count)

    p = sub.add_parser("borodin", help="counts by weight from the infinite product")
    common(p, order=12); p.set_defaults(fn=cmd_borodin)

    p = sub.add_parser("decompose", help="split into (mu, beta)")
    p.add_argument("partition", help="rows like '5,4|8,2|7,5,1', or - for stdin")
    common(p); p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("reconstruct", help="rebuild from --beta and --mu")
    p.add_argument("--beta", default="", help="e.g. 15^(2,1),11^(3,2)")
    p.add_argument("--mu", default="", help="comma separated parts")
    common(p); p.set_defaults(fn=cmd_reconstruct)

    p = sub.add_parser("slices", help="slice chain with multiplicities")
    p.add_argument("partition")
    common(p); p.set_defaults(fn=cmd_slices)

    p = sub.add_parser("shrink", help="tight packing and side partition")
    p.add_argument("partition")
    p.add_argument("--mode", choices=["at_most", "exact"], default="at_most")
    common(p); p.set_defaults(fn=cmd_shrink)

    p = sub.add_parser("stg", help="shape transition graph and matrices")
    p.add_argument("--rank", type=int)
    p.add_argument("--level", type=int)
    common(p); p.set_defaults(fn=cmd_stg)

    p = sub.add_parser("path-counts", help="chain counts out of the empty slice")
    common(p, order=12); p.set_defaults(fn=cmd_path_counts)

    p = sub.add_parser("distinct-gf", help="distinct-parts generating function")
    common(p, order=12); p.set_defaults(fn=cmd_distinct_gf)

    p = sub.add_parser("verify-closed-form", help="check a built-in closed form")
    common(p, order=25); p.set_defaults(fn=cmd_verify_closed_form)

    p = sub.add_parser("poly", help="polynomial numerators")
    p.add_argument("kind", choices=sorted(_POLY_KINDS))
    common(p, n=3); p.set_defaults(fn=cmd_poly)

    p = sub.add_parser("functional-eq", help="two-variable functional equation")
    common(p, order=10); p.set_defaults(fn=cmd_functional_eq)

    p = sub.add_parser("lineups", help="enumerate minimal lineups")
    p.add_argument("--kind", choices=["mll", "mjl"], default="mll")
    common(p, n=2); p.set_defaults(fn=cmd_lineups)

    p = sub.add_parser("lemma-check", help="pivot-chain counting identity")
    common(p, order=12, n=2); p.set_defaults(fn=cmd_lemma_check)

    p = sub.add_parser("qconj-check", help="pivot generating-function identity")
    common(p, order=10, n=2); p.set_defaults(fn=cmd_qconj_check)

    p = sub.add_parser("verify-all", help="run every cross-check for a profile")
    common(p, order=12); p.set_defaults(fn=cmd_verify_all)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (core.CylpartError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
