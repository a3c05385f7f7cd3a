"""Command line front end.

Every command emits a machine-readable certificate: the inputs, the exact
values of both sides of each verified law (as canonical scalar strings), and
a verdict.  Exit status 0 means every certificate passed, 1 means some law
failed, 2 means the request itself was invalid.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .rootdata import build_root_system, ConfigurationError, vadd, vneg
from .coeffs import SymbolicDomain, RationalDomain, DomainError
from . import laurent as lx
from . import daha
from . import macdonald as mac
from . import modular as modmod


class CliError(ValueError):
    pass


def _parse_system(s: str):
    s = s.strip().upper()
    if len(s) < 2 or not s[0].isalpha():
        raise CliError(f"bad system {s!r}; expected e.g. A2, B2, G2")
    try:
        return s[0], int(s[1:])
    except ValueError:
        raise CliError(f"bad system rank in {s!r}")


def _parse_weight(rs, s: str, name: str):
    try:
        b = tuple(int(x) for x in s.split(","))
    except ValueError:
        raise CliError(f"--{name} must be comma-separated integers")
    if len(b) != rs.rank:
        raise CliError(f"--{name} needs {rs.rank} coordinates for {rs.label}{rs.rank}")
    if not rs.anti_dominant(b):
        hint = tuple(rs.to_anti_dominant(b))
        raise CliError(
            f"--{name}={s} is not anti-dominant; try {','.join(map(str, hint))}")
    return b


def _parse_k(rs, s: str) -> dict:
    parts = [int(x) for x in s.split(",")] if s else [1]
    if len(parts) == 1:
        return {nu: parts[0] for nu in rs.nu_classes}
    if len(parts) != len(rs.nu_classes):
        raise CliError(f"--k needs 1 or {len(rs.nu_classes)} integers")
    return dict(zip(rs.nu_classes, parts))


def _domain_for(rs, args):
    mode = getattr(args, "mode", "symbolic")
    if mode == "symbolic":
        return SymbolicDomain(rs)
    if mode == "qk":
        return SymbolicDomain(rs, t_pins=_parse_k(rs, getattr(args, "k", "1")))
    if mode == "rational":
        rng = random.Random(getattr(args, "seed", 0))
        return sample_rational_domain(rs, rng)
    raise CliError(f"unknown mode {mode!r}")


def sample_rational_domain(rs, rng: random.Random) -> RationalDomain:
    """Random exact rational specialization avoiding tiny degenerate values."""
    def frac():
        while True:
            num = rng.randint(2, 9)
            den = rng.randint(2, 9)
            if num != den:
                return Fraction(num, den)

    for _ in range(64):
        try:
            return RationalDomain(rs, frac(), {nu: frac() for nu in rs.nu_classes})
        except DomainError:
            continue
    raise CliError("could not sample a usable rational specialization")


def _emit(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True)
    if fmt == "csv":
        rows = payload.get("certificates", [])
        lines = ["id,status"]
        for r in rows:
            lines.append(f"{r.get('law', r.get('relation', '?'))},{r['status']}")
        return "\n".join(lines)
    lines = [f"{k}: {v}" for k, v in sorted(payload.items())
             if k != "certificates"]
    for r in payload.get("certificates", []):
        lines.append(f"  {r.get('law', r.get('relation', '?'))}: {r['status']}")
    return "\n".join(lines)


def _status(certs) -> int:
    return 0 if all(c["status"] == "pass" for c in certs) else 1


def _cache_dir():
    return os.environ.get("DAHAPOLY_CACHE",
                          os.path.join(os.path.expanduser("~"), ".cache", "dahapoly"))


def _cache_fetch(key: str):
    path = os.path.join(_cache_dir(), key + ".json")
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    return None


def _cache_store(key: str, payload: dict):
    try:
        os.makedirs(_cache_dir(), exist_ok=True)
        path = os.path.join(_cache_dir(), key + ".json")
        with open(path, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
    except OSError:
        pass  # caching is best-effort


def _config_key(parts: dict) -> str:
    blob = json.dumps(parts, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------------
# Commands.
# ---------------------------------------------------------------------------


def cmd_roots_show(args) -> tuple[dict, int]:
    lab, rank = _parse_system(args.system)
    rs = build_root_system(lab, rank)
    return rs.to_json(), 0


def cmd_daha_verify(args) -> tuple[dict, int]:
    lab, rank = _parse_system(args.system)
    rs = build_root_system(lab, rank)
    dom = _domain_for(rs, args)
    rep = daha.verify_defining_relations(dom, cap=args.cap)
    payload = {"command": "daha verify", "system": args.system.upper(),
               "cap": args.cap, "certificates": rep}
    return payload, _status(rep)


def cmd_mac(args) -> tuple[dict, int]:
    lab, rank = _parse_system(args.system)
    rs = build_root_system(lab, rank)
    sub = args.mac_command
    cache_parts = {"cmd": sub, "system": args.system.upper(),
                   "mode": args.mode, "k": args.k, "b": args.b, "c": args.c,
                   "a": args.a, "seed": args.seed, "classes": args.classes}
    key = _config_key(cache_parts)
    if not args.no_cache:
        hit = _cache_fetch(key)
        if hit is not None:
            return hit, _status(hit.get("certificates", []))
    dom = _domain_for(rs, args)
    table = mac.MacdonaldTable(dom)
    certs = []
    payload = {"command": f"mac {sub}", "system": args.system.upper(),
               "mode": args.mode, "certificates": certs}

    if sub == "poly":
        b = _parse_weight(rs, args.b, "b")
        p = table.poly(b)
        payload["polynomial"] = lx.poly_json(dom, p)
        payload["principal_value"] = dom.render(table.principal_value(b))
        certs.append({"law": "eigenfunction", "status":
                      "pass" if table.eigen_check(b) else "fail"})
    elif sub == "eval":
        b = _parse_weight(rs, args.b, "b")
        direct = table.principal_value(b)
        formula = mac.evaluation_formula(dom, b)
        certs.append({"law": "evaluation-product", "status":
                      "pass" if direct == formula else "fail",
                      "direct": dom.render(direct), "formula": dom.render(formula)})
    elif sub == "norm":
        if args.mode != "qk":
            raise CliError("mac norm needs --mode qk (constant terms need t = q^k)")
        b = _parse_weight(rs, args.b, "b")
        k = _parse_k(rs, args.k)
        pairing = mac.MuPairing(dom, k)
        p = table.poly(b)
        direct = pairing.pair(p, p)
        formula = mac.norm_formula(dom, b)
        certs.append({"law": "norm-product", "status":
                      "pass" if direct == formula else "fail",
                      "direct": dom.render(direct), "formula": dom.render(formula)})
    elif sub == "duality":
        b = _parse_weight(rs, args.b, "b")
        c = _parse_weight(rs, args.c, "c")
        cert = mac.duality_certificate(table, b, c)
        certs.append({"law": "duality-symmetry", "status":
                      "pass" if cert["ok"] else "fail",
                      "lhs": dom.render(cert["lhs"]),
                      "pairing": dom.render(cert["mid"]),
                      "rhs": dom.render(cert["rhs"])})
    elif sub == "pieri":
        a = _parse_weight(rs, args.a, "a")
        b = _parse_weight(rs, args.b, "b")
        r1 = mac.pieri_operator_route(table, a, b)
        r2 = mac.pieri_direct_route(table, a, b)
        same = set(r1) == set(r2) and all(r1[kk] == r2[kk] for kk in r1)
        certs.append({"law": "recurrence-coefficients", "status":
                      "pass" if same else "fail",
                      "expansion": {",".join(map(str, kk)): dom.render(v)
                                    for kk, v in sorted(r1.items())}})
    elif sub == "shift":
        b = _parse_weight(rs, args.b, "b")
        classes = rs.nu_classes if args.classes == "all" else \
            [Fraction(x) for x in args.classes.split(";")]
        cert = mac.shift_certificate(dom, classes, b)
        certs.append({"law": "shift-ladder", "status":
                      "pass" if cert["shift_ok"] else "fail"})
        if cert["key_ok"] is not None:
            certs.append({"law": "ladder-principal-values", "status":
                          "pass" if cert["key_ok"] else "fail",
                          "lhs": dom.render(cert["key_lhs"]),
                          "rhs": dom.render(cert["key_rhs"])})
    elif sub == "gauss":
        b = _parse_weight(rs, args.b, "b")
        cert = mac.gaussian_eigen_certificate(table, b)
        certs.append({"law": "gaussian-eigenfunction", "status":
                      "pass" if cert["ok"] else "fail",
                      "constant": dom.render(cert["constant"])})
    else:
        raise CliError(f"unknown mac subcommand {sub!r}")

    code = _status(certs)
    if not args.no_cache and code == 0:
        _cache_store(key, payload)
    return payload, code


def cmd_modular(args) -> tuple[dict, int]:
    lab, rank = _parse_system(args.system)
    rs = build_root_system(lab, rank)
    k = _parse_k(rs, args.k)
    try:
        md = modmod.ModularData(rs, args.N, k)
    except modmod.ModularError as exc:
        raise CliError(str(exc))
    if args.mod_command == "build":
        payload = {"command": "modular build",
                   "system": args.system.upper(), "N": args.N,
                   "spectrum_size": md.size,
                   "spectrum": [list(b) for b in md.beta]}
        return payload, 0
    if args.mod_command == "export":
        return modmod.export_modular(md), 0
    rep = modmod.verify_modular(md)
    if all(v == 1 for v in md.k.values()):
        oracle = modmod.character_oracle_matrix(md)
        ok = all(oracle[i][j] == md.pi_matrix[i][j]
                 for i in range(md.size) for j in range(md.size))
        rep.append({"law": "character-oracle", "status":
                    "pass" if ok else "fail", "detail": "t = q"})
    payload = {"command": "modular verify", "system": args.system.upper(),
               "N": args.N, "spectrum_size": md.size, "certificates": rep}
    return payload, _status(rep)


# ---------------------------------------------------------------------------
# Suites.
# ---------------------------------------------------------------------------


def _suite_daha(seed: int, max_rank: int, cap: int):
    jobs = []
    for lab, rank in [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3)]:
        if rank > max_rank:
            continue
        jobs.append(("daha", f"{lab}{rank}",
                     {"system": f"{lab}{rank}", "cap": min(cap, 2 if rank > 2 else cap)}))
    return jobs


def _suite_macdonald(seed: int, max_rank: int):
    jobs = []
    for lab, rank in [("A", 1), ("A", 2), ("B", 2)]:
        if rank > max_rank:
            continue
        sysname = f"{lab}{rank}"
        b = "-1" + ",0" * (rank - 1)
        c = ("0," * (rank - 1) + "-1") if rank > 1 else "-1"
        jobs.append(("mac-duality", sysname, {"system": sysname, "b": b, "c": c}))
        jobs.append(("mac-eval", sysname, {"system": sysname, "b": b}))
    return jobs


def _suite_modular(seed: int, max_rank: int):
    grid = [("A1", 3, "1"), ("A1", 5, "1")]
    if max_rank >= 2:
        grid.append(("A2", 4, "1"))
    return [("modular", s, {"system": s, "N": n, "k": k}) for s, n, k in grid]


def run_suite(name: str, seed: int = 0, max_rank: int = 2, cap: int = 2,
              jobs: int = 1) -> dict:
    if name not in ("daha", "macdonald", "modular", "all"):
        raise CliError(f"unknown suite {name!r}")
    items = []
    if name in ("daha", "all"):
        items += _suite_daha(seed, max_rank, cap)
    if name in ("macdonald", "all"):
        items += _suite_macdonald(seed, max_rank)
    if name in ("modular", "all"):
        items += _suite_modular(seed, max_rank)

    def run_item(item):
        kind, label, kwargs = item
        ns = argparse.Namespace(mode="symbolic", k="1", seed=seed, b=None,
                                c=None, a=None, classes="all", no_cache=True,
                                cap=cap)
        for key, val in kwargs.items():
            setattr(ns, key, val)
        if kind == "daha":
            payload, code = cmd_daha_verify(ns)
        elif kind == "mac-duality":
            ns.mac_command = "duality"
            payload, code = cmd_mac(ns)
        elif kind == "mac-eval":
            ns.mac_command = "eval"
            payload, code = cmd_mac(ns)
        else:
            ns.mod_command = "verify"
            ns.N = kwargs["N"]
            payload, code = cmd_modular(ns)
        return {"item": f"{kind}:{label}", "exit": code,
                "n_checks": len(payload.get("certificates", [])),
                "failures": [c for c in payload.get("certificates", [])
                             if c["status"] != "pass"]}

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_item, items))
    else:
        results = [run_item(it) for it in items]
    status = 0 if all(r["exit"] == 0 for r in results) else 1
    return {"suite": name, "seed": seed, "max_rank": max_rank,
            "results": results, "status": "pass" if status == 0 else "fail"}, status


# ---------------------------------------------------------------------------
# Argument parsing.
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dahapoly",
                                 description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, weights=()):
        p.add_argument("--system", required=True, help="e.g. A1, A2, B2, G2")
        p.add_argument("--mode", default="symbolic",
                       choices=["symbolic", "qk", "rational"])
        p.add_argument("--k", default="1", help="integers k_nu for t = q^k modes")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", default="json", choices=["json", "csv", "text"])
        p.add_argument("--no-cache", action="store_true")
        for w in ("b", "c", "a"):
            p.add_argument(f"--{w}", default=None,
                           help=f"weight {w} as comma-separated coordinates"
                           if w in weights else argparse.SUPPRESS)

    roots = sub.add_parser("roots", help="root system data")
    roots_sub = roots.add_subparsers(dest="roots_command", required=True)
    show = roots_sub.add_parser("show")
    show.add_argument("--system", required=True)
    show.add_argument("--format", default="json", choices=["json", "csv", "text"])

    macp = sub.add_parser("mac", help="Macdonald polynomial certificates")
    macp.add_argument("mac_command",
                      choices=["poly", "eval", "norm", "duality", "pieri",
                               "shift", "gauss"])
    common(macp, weights=("b", "c", "a"))
    macp.add_argument("--classes", default="all",
                      help="length classes for shift operators")

    dah = sub.add_parser("daha", help="defining relation verification")
    dah.add_argument("daha_command", choices=["verify"])
    common(dah)
    dah.add_argument("--cap", type=int, default=2)

    modp = sub.add_parser("modular", help="roots-of-unity modular data")
    modp.add_argument("mod_command", choices=["build", "verify", "export"])
    common(modp)
    modp.add_argument("--N", type=int, required=True)

    suite = sub.add_parser("suite", help="verification suites")
    suite.add_argument("suite_name",
                       choices=["daha", "macdonald", "modular", "all"])
    suite.add_argument("--seed", type=int, default=0)
    suite.add_argument("--max-rank", type=int, default=2)
    suite.add_argument("--cap", type=int, default=2)
    suite.add_argument("--jobs", type=int, default=1)
    suite.add_argument("--format", default="json", choices=["json", "csv", "text"])
    return ap


def _join_weight_args(argv):
    """Let '--b -1,0' parse: merge weight flags with negative-looking values."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--b", "--c", "--a") and i + 1 < len(argv):
            nxt = argv[i + 1]
            if nxt.startswith("-") and all(ch.isdigit() or ch in ",-" for ch in nxt[1:]):
                out.append(f"{tok}={nxt}")
                i += 2
                continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _join_weight_args(list(argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    fmt = getattr(args, "format", "json")
    try:
        if args.command == "roots":
            payload, code = cmd_roots_show(args)
        elif args.command == "mac":
            payload, code = cmd_mac(args)
        elif args.command == "daha":
            payload, code = cmd_daha_verify(args)
        elif args.command == "modular":
            payload, code = cmd_modular(args)
        elif args.command == "suite":
            payload, code = run_suite(args.suite_name, args.seed,
                                      args.max_rank, args.cap, args.jobs)
        else:
            raise CliError(f"unknown command {args.command!r}")
    except (CliError, ConfigurationError, DomainError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        return 2
    print(_emit(payload, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
