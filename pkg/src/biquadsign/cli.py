"""Command-line entry point: ``biquadsign <command> ...``.

Mathematical disagreements are reported as data and never change the exit
status; only bad arguments (2) and I/O failures (1) do.
"""

from __future__ import annotations

import argparse
import sys

from . import counts, cyclo, jacobsthal, perm
from .arith import PrimeContext, is_primitive_root
from .checks import CHECKS, DEFAULT_SEED, verify_prime
from .scan import CLASS_FILTERS, ScanConfig, ScanReport, default_workers, report_summarize, run_scan


def _context(p: int, need_mod8: bool = True) -> PrimeContext:
    ctx = PrimeContext.of(p)
    if need_mod8:
        ctx.require_mod8()
    return ctx


def _record_line(r) -> str:
    extra = "".join(f" {k}={getattr(r, k)}" for k in ("g", "t", "m") if getattr(r, k) is not None)
    status = "ok  " if r.passed else "FAIL"
    return f"{status} {r.check:<18} {r.case}{extra}: expected {r.expected}, actual {r.actual}"


def cmd_verify(args) -> int:
    records = verify_prime(args.prime, all_roots=args.all_roots, exhaustive=args.exhaustive, seed=args.seed)
    for r in records:
        print(_record_line(r))
    bad = sum(not r.passed for r in records)
    print(f"p={args.prime}: {len(records) - bad}/{len(records)} records agree")
    return 0


def cmd_scan(args) -> int:
    checks = tuple(CHECKS) if args.checks is None else tuple(c.strip() for c in args.checks.split(",") if c.strip())
    config = ScanConfig(min_p=args.min, max_p=args.max, class_filter=args.filter, checks=checks,
                        roots_mode=args.roots, workers=args.workers, output_path=args.out,
                        output_format=args.format, seed=args.seed, exhaustive=args.exhaustive,
                        per_value=args.per_value)
    report: ScanReport = run_scan(config)
    print(report_summarize(report))
    return 0


def cmd_jacobsthal(args) -> int:
    ctx = _context(args.prime, need_mod8=False)
    res = jacobsthal.jacobsthal(args.m, args.k, ctx)
    print(f"p={res.p} k={res.k} m={res.m}")
    print(f"phi_{res.k}(m) = {res.phi}")
    print(f"psi_{res.k}(m) = {res.psi}")
    if args.k == 2:
        print(f"closed form phi_2(m) = {jacobsthal.phi2_closed(res.m, ctx)}")
    return 0


def cmd_counts(args) -> int:
    ctx = _context(args.prime)
    p = ctx.p
    sp = counts.sign_params(ctx, ctx.generator)
    print(f"p={p} a={ctx.a} b={ctx.b} iota={ctx.iota}")
    print(f"A_p={sp.A_p} B_p={sp.B_p} d_p={sp.d_p} lambda={sp.lam} epsilon={sp.epsilon_count}")
    print(f"beta={sp.beta} gamma={sp.gamma} delta={sp.delta} mu={sp.mu} (g={sp.g})")
    if args.t is not None:
        t = args.t % p
        n = counts.n_counts(ctx)
        try:
            closed = counts.n_sum_closed(t, ctx)
        except counts.ClosedFormError as exc:
            closed = str(exc)
        print(f"N(t)={n[t]} N(-t)={n[(p - t) % p]} closed form of the sum={closed}")
        print(f"S_1..S_4 = {counts.proof_sums(t, ctx)}, closed = {counts.proof_sums_closed(t, ctx)}")
    if args.m is not None:
        rec = counts.rm_record(args.m, ctx)
        print(rec)
        print(f"#A_m closed={counts.a_m_size_closed(rec.m, ctx)}"
              f" chi4 sum closed={counts.quartic_sum_over_Am_closed(rec.m, ctx)}"
              f" quartic count closed={counts.quartic_count_in_Am_closed(rec.m, ctx)}")
        for case, expected, actual in counts.rm_identities(rec.m, ctx):
            print(f"{'ok  ' if expected == actual else 'FAIL'} {case}: {expected} vs {actual}")
    return 0


def cmd_perm(args) -> int:
    ctx = _context(args.prime)
    print(f"p={ctx.p} case: {perm.lemma23_case(ctx)}")
    rho = perm.sgn_rho_direct(ctx)
    print(f"sgn(rho)={rho:+d} predicted={perm.theorem_b_predict(ctx):+d}")
    if args.all_roots:
        roots = ctx.roots
    else:
        roots = (ctx.generator if args.root is None else args.root,)
        if not is_primitive_root(roots[0], ctx.p):
            raise ValueError(f"{roots[0]} is not a primitive root mod {ctx.p}")
    direct = perm.tau_signs(ctx) if args.all_roots else {}
    for g in roots:
        rec = perm.sign_record(ctx, g, direct.get(g))
        print(f"g={g} sgn(tau)={rec.direct_sign:+d} published={rec.published_prediction:+d}"
              f" recomposed={rec.recomposed_prediction:+d} W_p closed form {'holds' if rec.lemma23_W_check else 'fails'}")
    if args.print_sequences:
        seqs = perm.build_sequences(ctx, roots[0])
        print("d:", " ".join(map(str, seqs.seq_d)))
        print(f"e (g={roots[0]}):", " ".join(map(str, seqs.seq_e)))
        print("f:", " ".join(map(str, seqs.seq_f)))
    return 0


def cmd_cyclo(args) -> int:
    if args.n is not None:
        pz = cyclo.p_closed(args.n)
        print(f"n={args.n} P(zeta) = {pz.value():.12g} (i^{pz.phase} * n^(n/2)); P(zeta)^2 = {pz.square()}")
        if args.n <= cyclo.NUMERIC_MAX_N:
            print(f"numeric P(zeta) = {cyclo.p_eval_numeric(args.n, 1, args.n):.12g}")
        return 0
    ctx = _context(args.prime)
    g = ctx.generator if args.root is None else args.root
    print(f"p={ctx.p} g={g}")
    print(f"G(g) = {cyclo.g_poly_value(ctx, g)}")
    print(f"direct product = {cyclo.denominator_product(ctx, g)}")
    print(f"floor(p/16) form = {cyclo.denominator_floor_variant(ctx, g)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biquadsign", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run every check for one prime")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--all-roots", action="store_true")
    p.add_argument("--exhaustive", action="store_true", help="enumerate every t and m")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="run checks over a range of primes")
    p.add_argument("--min", type=int, default=17)
    p.add_argument("--max", type=int, default=10_000)
    p.add_argument("--filter", choices=sorted(CLASS_FILTERS), default="1mod8")
    p.add_argument("--checks", help="comma-separated check names (default: all)")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--roots", choices=("first", "all"), default="first")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--per-value", action="store_true", help="one record per t or m")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("jacobsthal", help="phi_k(m) and psi_k(m)")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_jacobsthal)

    p = sub.add_parser("counts", help="sign parameters, N(t) and r_m records")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("perm", help="signs of tau_p(g) and rho_p")
    p.add_argument("--prime", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--root", type=int)
    group.add_argument("--all-roots", action="store_true")
    p.add_argument("--print-sequences", action="store_true")
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("cyclo", help="Vandermonde product at roots of unity")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int)
    group.add_argument("--prime", type=int)
    p.add_argument("--root", type=int)
    p.set_defaults(func=cmd_cyclo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 0) is None:
        try:
            args.workers = default_workers()
        except ValueError as exc:
            parser.error(str(exc))
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
