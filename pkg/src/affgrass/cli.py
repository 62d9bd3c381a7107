"""Command-line driver: every check and enumeration as a subcommand with a JSON report.

Exit status is 0 when every check passes, 1 on any mismatch, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import nilpotent as nz
from . import symfun
from .demazure import independence_check
from .exact import RandomSource
from .partitions import as_partition, dominance_leq, partitions
from .schubert import plucker_table, random_points
from .straighten import (
    Straightener,
    all_shuffles,
    bumped_lands_correctly,
    degree_one_ideal_generators,
    degree_two_check,
    form_to_json,
    shuffle,
    shuffle_conjecture_probe,
    straighten,
)
from .weyl import (
    all_labels,
    chain_element,
    count_formulas,
    enumerate_admissible,
    is_admissible,
    reduced_chain,
    z_stratification,
)

DEFAULT_SEED = 20240101
SCHEMA = 1


def env_cap() -> int:
    return int(os.environ.get("AFFGRASS_ENUM_CAP", "200000"))


def check(name: str, ok: bool, **details) -> dict:
    return {"name": name, "pass": bool(ok), **details}


# ---- individual checks ----------------------------------------------------


def check_counts(n: int, s: int, cap: int) -> dict:
    rows = count_formulas(n, s, cap)
    bad = [r for r in rows if r["enumerated"] != r["predicted"]]
    return check(f"counts[n={n},s={s}]", not bad, positions=len(rows), mismatches=bad)


def check_shuffles(n: int, s: int, rng: RandomSource, points: int = 50) -> dict:
    top = chain_element(n, s, 1)
    rels = all_shuffles(n, s)
    tables = [plucker_table(pt) for pt in random_points(top, points, rng)]
    bad = []
    for rel in rels:
        for k, t in enumerate(tables):
            if rel.evaluate(t) != 0:
                bad.append({"relation": rel.to_json(), "point": k})
                break
    return check(f"shuffle_vanishing[n={n},s={s}]", not bad, relations=len(rels), points=points, failures=bad)


def check_straightening(n: int, s: int, rng: RandomSource) -> dict:
    st = Straightener(n, s)
    top = st.top
    pts = random_points(top, top.dimension + 5, rng)
    tables = [plucker_table(p) for p in pts]
    labels = [lab for lab in all_labels(n, s * n) if not st.vanishes(lab) and not is_admissible(lab, n, s * n)]
    bad = []
    for lab in labels:
        exp = st.expand(lab)
        if not all(is_admissible(t, n, s * n) for t in exp):
            bad.append({"input": list(lab), "reason": "non-admissible term"})
            continue
        for t in tables:
            if t.get(lab, 0) != sum(c * t.get(a, 0) for a, c in exp.items()):
                bad.append({"input": list(lab), "reason": "value mismatch"})
                break
    return check(f"straightening[n={n},s={s}]", not bad, labels=len(labels), points=len(pts), failures=bad)


def check_basis(n: int, s: int, rng: RandomSource, cap: int) -> dict:
    certs = []
    for phi in reduced_chain(n, s):
        cert = independence_check(phi, rng.fork(f"basis:{phi.position}"), cap=cap)
        certs.append(cert.to_json())
    ok = all(c["valid"] and c.get("spanning", True) for c in certs)
    summary = [{k: c[k] for k in ("phi", "rank", "expected", "valid", "spanning")} for c in certs]
    return check(f"basis[n={n},s={s}]", ok, certificates=summary)


def check_degree_two(n: int, s: int, rng: RandomSource, cap: int) -> dict:
    chain = reduced_chain(n, s)
    bad = []
    tested = 0
    for phi in chain:
        strat = z_stratification(phi, cap)
        if strat.r2 is None:
            continue
        for S in strat.z:
            tested += 1
            sub = rng.fork(f"deg2:{phi.position}:{S}")
            if not degree_two_check(phi, S, sub, cap=cap) or not bumped_lands_correctly(phi, S, chain):
                bad.append({"phi": phi.position, "S": list(S)})
    return check(f"degree_two[n={n},s={s}]", not bad, pairs=tested, failures=bad)


def check_orbit_order(n: int) -> dict:
    bad = []
    for nu in partitions(n):
        J = nz.jordan_matrix(nu)
        for mu in partitions(n):
            closure, _ = nz.orbit_membership(J, mu)
            if closure != dominance_leq(nu, mu):
                bad.append({"nu": list(nu), "mu": list(mu)})
    return check(f"orbit_order[n={n}]", not bad, pairs=len(partitions(n)) ** 2, failures=bad)


def check_filtration(n: int, max_m: int, rng: RandomSource) -> dict:
    reports = []
    for mu in partitions(n):
        for m in range(1, max_m + 1):
            reports.append(nz.conjecture_check(mu, m, rng.fork(f"filt:{mu}:{m}")))
    common = set(("rows", "cols"))
    for r in reports:
        common &= set(r["matching_conventions"])
    return check(f"filtration[n={n},m<={max_m}]", bool(common), conventions=sorted(common), cases=reports)


def check_cutout(n: int, rng: RandomSource, points: int = 30) -> dict:
    reports = [nz.cutout_check(mu, rng.fork(f"cut:{mu}"), points) for mu in partitions(n)]
    return check(
        f"cutout[n={n}]",
        all(r["pass"] for r in reports),
        cases=[{k: r[k] for k in ("mu", "generators", "failures", "pass")} for r in reports],
    )


def check_kostka(n: int) -> dict:
    res = symfun.oracle_pair(n)
    return check(
        f"kostka_oracle[n={n}]",
        "cocharge-conj" in res["passing"],
        convention="cocharge-conj",
        passing=res["passing"],
        mismatches=res["mismatches"],
    )


def check_level_one(n: int, rng: RandomSource, max_degree: int = 6) -> dict:
    reports = [symfun.level_one_check(mu, max_degree, rng.fork(f"lvl:{mu}")) for mu in partitions(n)]
    return check(f"level_one[n={n}]", all(r["pass"] for r in reports), cases=reports)


def check_probe(n: int, s: int, rng: RandomSource, samples: int) -> dict:
    res = shuffle_conjecture_probe(n, s, rng, samples)
    # reported, not asserted
    probe = {k: v for k, v in res.items() if k != "pass"}
    return check(f"shuffle_probe[n={n},s={s}]", True, asserted=False, classified_correctly=res["pass"], **probe)


# ---- report plumbing -------------------------------------------------------


def report(command: str, args: argparse.Namespace, checks: list[dict], data=None) -> dict:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out", "command")}
    out = {"schema": SCHEMA, "command": command, "config": config}
    if data is not None:
        out["data"] = data
    out["checks"] = sorted(checks, key=lambda c: c["name"])
    out["pass"] = all(c["pass"] for c in checks)
    return out


def parse_mu(text: str) -> tuple[int, ...]:
    try:
        return as_partition(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def cmd_admissible(args):
    phi = chain_element(args.n, args.s, args.tau)
    tuples = enumerate_admissible(phi, args.cap)
    return [], {"phi": phi.to_json(), "tuples": [list(t) for t in tuples], "count": len(tuples)}


def cmd_chain(args):
    chain = reduced_chain(args.n, args.s)
    return [], {"chain": [phi.to_json() for phi in chain]}


def cmd_shuffle(args):
    rel = shuffle(args.base, args.level, args.n, args.s * args.n)
    return [], rel.to_json()


def cmd_straighten(args):
    res = straighten(args.label, args.n, args.s, rng=RandomSource(args.seed))
    return [check("straighten", res.verified)], res.to_json()


def cmd_ideal_gens(args):
    phi = chain_element(args.n, args.s, args.tau)
    gens = degree_one_ideal_generators(phi)
    return [], {"phi": phi.to_json(), "generators": [form_to_json(g) for g in gens]}


def cmd_basis_check(args):
    rng = RandomSource(args.seed)
    phi = chain_element(args.n, args.s, args.tau)
    cert = independence_check(phi, rng, cap=args.cap)
    data = cert.to_json()
    return [check(f"basis[tau={args.tau}]", cert.valid and cert.spanning)], data


def cmd_counts(args):
    return [check_counts(args.n, args.s, args.cap)], None


def cmd_orbit_member(args):
    rng = RandomSource(args.seed)
    pt = nz.random_orbit_point(args.mu, rng, integral=True)
    closure, exact = nz.orbit_membership(pt, args.mu)
    data = {"mu": list(args.mu), "matrix": [[str(x) for x in r] for r in pt.matrix.tolist()],
            "in_closure": closure, "in_open_orbit": exact}
    return [check("orbit_member", exact)], data


def cmd_lusztig(args):
    rng = RandomSource(args.seed)
    pt = nz.random_orbit_point(args.mu, rng, integral=True)
    L = nz.lusztig_embed(pt)
    ok = L.bottom_minor() == 1 and L.shift_pattern_holds()
    data = {"mu": list(args.mu), "matrix": [[str(x) for x in r] for r in L.matrix.tolist()]}
    return [check("lusztig", ok)], data


def cmd_filtration(args):
    res = nz.filtration(args.mu, args.m, RandomSource(args.seed))
    return [], {"mu": list(args.mu), "m": args.m, "filtration_dim": res.dimension,
                "by_degree": {str(k): v for k, v in res.by_degree.items()}}


def cmd_conjecture(args):
    if args.n is not None and sum(args.mu) != args.n:
        raise argparse.ArgumentTypeError("mu must be a partition of n")
    res = nz.conjecture_check(args.mu, args.m, RandomSource(args.seed), convention=args.convention)
    return [check("conjecture", res["match"])], res


def cmd_orbit_equations(args):
    gens = nz.orbit_equation_spaces(args.mu)
    return [], {"mu": list(args.mu), "generators": [
        {"name": g.name, "polynomial": nz.format_polynomial(g.to_polynomial())} for g in gens]}


def cmd_cutout(args):
    res = nz.cutout_check(args.mu, RandomSource(args.seed))
    return [check("cutout", res["pass"])], res


def cmd_kostka(args):
    poly = symfun.kostka_foulkes(args.lam, args.mu)
    data = {"lambda": list(args.lam), "mu": list(args.mu), "convention": "charge", **poly.to_json(),
            "text": str(poly)}
    return [], data


def cmd_bmu_character(args):
    chars = symfun.b_mu_graded_character(args.mu, args.max_degree)
    data = {"mu": list(args.mu), "degrees": [c.to_json() for c in chars]}
    return [], data


def cmd_level_one(args):
    res = symfun.level_one_check(args.mu, args.max_degree, RandomSource(args.seed))
    return [check("level_one", res["pass"])], res


def cmd_verify_all(args):
    n, s = args.n, args.s
    rng = RandomSource(args.seed)
    checks = [
        check_counts(n, s, args.cap),
        check_shuffles(n, s, rng.fork("shuffle")),
        check_basis(n, s, rng.fork("basis"), args.cap),
        check_degree_two(n, s, rng.fork("deg2"), args.cap),
        check_orbit_order(n),
        check_filtration(n, 2, rng.fork("filtration")),
        check_cutout(n, rng.fork("cutout")),
        check_kostka(n),
        check_probe(n, s, rng.fork("probe"), args.samples),
    ]
    if s == 1:
        checks.append(check_straightening(n, s, rng.fork("straighten")))
    if n <= 3:
        checks.append(check_level_one(n, rng.fork("level")))
    return checks, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affgrass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *opts):
        p = sub.add_parser(name)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
        for o in opts:
            o(p)
        p.set_defaults(func=func)
        return p

    ns = lambda p: (p.add_argument("--n", type=int, required=True), p.add_argument("--s", type=int, default=1))
    cap = lambda p: p.add_argument("--cap", type=int, default=env_cap())
    tau = lambda p: p.add_argument("--tau", type=int, default=1, help="chain position")
    mu = lambda p: p.add_argument("--mu", type=parse_mu, required=True, help="comma separated parts")
    deg = lambda p: p.add_argument("--max-degree", type=int, default=6)
    ints = lambda name: (lambda p: p.add_argument(name, type=lambda t: tuple(int(x) for x in t.split(",")), required=True))

    add("admissible", cmd_admissible, ns, tau, cap)
    add("chain", cmd_chain, ns)
    add("shuffle", cmd_shuffle, ns, ints("--base"), lambda p: p.add_argument("--level", type=int, required=True))
    add("straighten", cmd_straighten, ns, ints("--label"))
    add("ideal-gens", cmd_ideal_gens, ns, tau)
    add("basis-check", cmd_basis_check, ns, tau, cap)
    add("counts", cmd_counts, ns, cap)
    add("orbit-member", cmd_orbit_member, mu)
    add("lusztig", cmd_lusztig, mu)
    add("filtration", cmd_filtration, mu, lambda p: p.add_argument("--m", type=int, required=True))
    add(
        "conjecture",
        cmd_conjecture,
        mu,
        lambda p: p.add_argument("--m", type=int, required=True),
        lambda p: p.add_argument("--n", type=int, default=None),
        lambda p: p.add_argument("--convention", choices=("rows", "cols"), default="rows"),
    )
    add("orbit-equations", cmd_orbit_equations, mu)
    add("cutout", cmd_cutout, mu)
    add("kostka", cmd_kostka, mu, lambda p: p.add_argument("--lam", type=parse_mu, required=True))
    add("bmu-character", cmd_bmu_character, mu, deg)
    add("level-one", cmd_level_one, mu, deg)
    add("verify-all", cmd_verify_all, ns, cap, lambda p: p.add_argument("--samples", type=int, default=200))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        checks, data = args.func(args)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    doc = report(args.command, args, checks, data)
    text = json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if doc["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
