"""Command-line interface.

Subcommands:
  zeta       truncated Euler product of zeta_{F_q(t)} against the closed form
  gamma      local factors (gamma, L, eps) of a pair given as JSON
  verify     fe | rh | axioms verification reports

Exit codes: 0 pass, 1 verification failure, 2 oracle mismatch, 3 input error,
4 missing pairing data.  Flags override LFUNC_-prefixed environment variables,
which override the defaults.  Reports are deterministic for a fixed seed and
configuration, carry "schema": "lfunc/1", and echo the seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .errors import (LfuncError, MissingFormalPairing, MissingLiftData,
                     SchemaError)
from .ffbase import FqPoly, Place, infinite_place, make_field
from .globalfield import (GlobalPair, GrossenChar, global_L, verify_fe,
                          verify_rh, zeta_closed_coeffs_int,
                          zeta_euler_coeffs_int)
from .qseries import QRat
from .repsys import L_general, eps_general, gamma, tree_from_json
from .tate import AddChar, std_psi

SCHEMA = "lfunc/1"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ORACLE = 2
EXIT_INPUT = 3
EXIT_MISSING = 4


@dataclass
class RunConfig:
    q: int = 3
    dmax: int = 3
    degree_bound: int = 8
    tol: float = 1e-9
    seed: int = 42
    fmt: str = "json"
    n_cases: int = 200

    @staticmethod
    def from_args(args: argparse.Namespace) -> "RunConfig":
        def pick(flag, env, default, cast):
            if flag is not None:
                return cast(flag)
            v = os.environ.get(env)
            return cast(v) if v is not None else default

        cfg = RunConfig(
            q=pick(args.q, "LFUNC_Q", 3, int),
            dmax=pick(args.dmax, "LFUNC_DMAX", 3, int),
            degree_bound=pick(args.degree_bound, "LFUNC_DEGREE_BOUND", 8, int),
            tol=pick(args.tol, "LFUNC_TOL", 1e-9, float),
            seed=pick(args.seed, "LFUNC_SEED", 42, int),
            fmt=pick(args.format, "LFUNC_FORMAT", "json", str),
            n_cases=pick(getattr(args, "cases", None), "LFUNC_CASES", 200, int),
        )
        if not (0 < cfg.tol <= 1e-3):
            raise SchemaError("tolerance must lie in (0, 1e-3]")
        if cfg.degree_bound > 24:
            raise SchemaError("degree bound must be <= 24")
        if cfg.fmt not in ("json", "tsv"):
            raise SchemaError("format must be json or tsv")
        return cfg

    def field(self):
        # q may be a prime power: factor it as p^f
        q = self.q
        p = 2
        while p * p <= q:
            if q % p == 0:
                break
            p += 1
        if q % p:
            p = q
        f = 0
        qq = q
        while qq > 1:
            if qq % p:
                raise SchemaError(f"q = {q} is not a prime power")
            qq //= p
            f += 1
        return make_field(p, f)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for k, v in sorted(report.items()):
            if isinstance(v, (list, dict)):
                continue
            print(f"{k}\t{v}")


def cmd_zeta(cfg: RunConfig) -> int:
    field = cfg.field()
    D = cfg.degree_bound
    euler = zeta_euler_coeffs_int(field, D)
    closed = zeta_closed_coeffs_int(field, D)
    euler_full = _series_mul_geometric(euler)
    closed_full = zeta_closed_coeffs_int(field, D, include_infinite=True)
    ok = euler == closed and euler_full == closed_full
    report = {"schema": SCHEMA, "check": "zeta", "q": field.q,
              "degree_bound": D, "seed": cfg.seed,
              "euler_finite": euler, "closed_finite": closed,
              "euler_with_infinity": euler_full,
              "closed_with_infinity": closed_full,
              "match": ok}
    _emit(report, cfg.fmt)
    return EXIT_PASS if ok else EXIT_ORACLE


def _series_mul_geometric(coeffs: list[int]) -> list[int]:
    # multiply by the infinite-place factor 1/(1-T)
    out, acc = [], 0
    for c in coeffs:
        acc += c
        out.append(acc)
    return out


def _load_pair_document(path: str) -> tuple:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read pair JSON: {exc}")
    try:
        fld = doc["field"]
        field = make_field(int(fld["p"]), int(fld.get("f", 1)))
        pl = doc["place"]
        place = (infinite_place(field) if pl.get("inf")
                 else Place(field, FqPoly(field, pl["poly"])))
        psi = std_psi(place)
        psi_doc = doc.get("psi")
        if psi_doc:
            unit = FqPoly(field, psi_doc.get("twist_unit", [1]))
            psi = psi.twisted(unit, int(psi_doc.get("level", 0)))
        tau = tree_from_json(doc["tau"], place)
        pi = tree_from_json(doc["pi"], place)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed pair document: {exc}")
    return field, place, psi, tau, pi


def cmd_gamma(cfg: RunConfig, input_path: str) -> int:
    field, place, psi, tau, pi = _load_pair_document(input_path)
    g = gamma(tau, pi, psi)
    L = L_general(tau, pi, psi)
    eps = eps_general(tau, pi, psi)
    mono, coeff, k = eps.is_monomial()
    report = {"schema": SCHEMA, "check": "gamma", "q": field.q, "seed": cfg.seed,
              "gamma": g.to_json(), "L": L.to_json(), "eps": eps.to_json(),
              "eps_is_monomial": bool(mono),
              "eps_monomial": {"coeff": [coeff.real, coeff.imag], "tpow": k}}
    _emit(report, cfg.fmt)
    return EXIT_PASS


def cmd_verify(cfg: RunConfig, kind: str, input_path: str | None) -> int:
    from .corpus import isobaric_instance, run_axiom_suite, run_fe_rh_corpus
    field = cfg.field()
    if kind == "axioms":
        report = run_axiom_suite(field, seed=cfg.seed, n_cases=cfg.n_cases,
                                 tol=cfg.tol)
        report["schema"] = SCHEMA
        _emit(report, cfg.fmt)
        return EXIT_PASS if report["pass"] else EXIT_FAIL

    if input_path:
        try:
            with open(input_path) as fh:
                doc = json.load(fh)
            tau = GrossenChar.from_json(doc["tau"])
            pi = GrossenChar.from_json(doc["pi"])
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise SchemaError(f"malformed corpus document: {exc}")
        pair = GlobalPair(tau.field, tau, pi)
        if kind == "fe":
            report = verify_fe(pair, tol=cfg.tol)
        else:
            report = verify_rh(global_L(pair), tol=max(cfg.tol, 1e-8))
        report.update({"schema": SCHEMA, "seed": cfg.seed})
        if kind == "rh" and cfg.fmt == "tsv":
            _emit_zero_table(report)
        else:
            _emit(report, cfg.fmt)
        return EXIT_PASS if report["pass"] else EXIT_FAIL

    # builtin corpus: all quadratic-character pairs plus the isobaric instance
    report = run_fe_rh_corpus(field, cfg.dmax, fe_tol=cfg.tol,
                              rh_tol=max(cfg.tol, 1e-8))
    iso = verify_fe(isobaric_instance(field), tol=cfg.tol)
    report["isobaric_instance"] = {"form": iso["form"],
                                   "max_residual": iso["max_residual"],
                                   "pass": iso["pass"]}
    report.update({"schema": SCHEMA, "seed": cfg.seed})
    if kind == "fe":
        ok = report["max_fe_residual"] < cfg.tol and iso["pass"]
    else:
        ok = report["max_rh_deviation"] < max(cfg.tol, 1e-8)
    report["pass"] = bool(ok)
    _emit(report, cfg.fmt)
    return EXIT_PASS if ok else EXIT_FAIL


def _emit_zero_table(report: dict) -> None:
    print("re_s\tim_s\tabs_T\tdeviation")
    for row in report.get("zeros", []):
        print(f"{row['re_s']!r}\t{row['im_s']!r}\t{row['abs_T']!r}"
              f"\t{row['deviation']!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lfunc",
        description="L-functions, gamma- and epsilon-factors over F_q(t)")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=None,
                        help="cardinality of the constant field (prime power)")
    common.add_argument("--dmax", type=int, default=None,
                        help="max degree of places / conductors")
    common.add_argument("--degree-bound", dest="degree_bound", type=int,
                        default=None, help="series truncation degree (<= 24)")
    common.add_argument("--tol", type=float, default=None,
                        help="verification tolerance, in (0, 1e-3]")
    common.add_argument("--seed", type=int, default=None, help="RNG seed")
    common.add_argument("--format", choices=("json", "tsv"), default=None)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("zeta", parents=[common],
                   help="Euler product vs closed form of zeta_{F_q(t)}")
    g = sub.add_parser("gamma", parents=[common],
                       help="local factors of a pair document")
    g.add_argument("--input", required=True, help="pair JSON path")
    v = sub.add_parser("verify", parents=[common],
                       help="run a verification suite")
    v.add_argument("kind", choices=("fe", "rh", "axioms"))
    v.add_argument("--input", default=None, help="optional corpus pair JSON")
    v.add_argument("--cases", type=int, default=None,
                   help="cases per property for the axiom suite")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        if args.command == "zeta":
            return cmd_zeta(cfg)
        if args.command == "gamma":
            return cmd_gamma(cfg, args.input)
        if args.command == "verify":
            return cmd_verify(cfg, args.kind, args.input)
        raise SchemaError(f"unknown command {args.command!r}")
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MissingFormalPairing, MissingLiftData) as exc:
        print(f"missing data: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except LfuncError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
