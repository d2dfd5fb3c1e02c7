"""Command-line front end.

Exit codes: 0 everything verified, 1 a claim was violated, 2 usage error.

Examples:
  rktrace info --m 2 --k 1
  rktrace verify --m 3 --k 1 --modulus 0xd
  rktrace export --what distribution --m 3 --k 1 --format csv
  rktrace sss deal --m 2 --k 1 --secret 1 --seed 7 --out shares.json
  rktrace sss reconstruct --m 2 --k 1 --shares shares.json --coalition 1,2,3
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from rktrace import analysis, sss
from rktrace.errors import GuardrailError, ReducibleModulusError
from rktrace.gray import BinaryWord
from rktrace.trace_code import CodeParameters, TraceCode, default_workers, predicted_distribution

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    m: int
    k: int
    modulus_override: Optional[int] = None
    threads: int = 1
    format: str = "json"
    seed: Optional[int] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        if args.m < 1 or args.k < 1:
            raise UsageError("m >= 1 and k >= 1 required")
        modulus = None
        if args.modulus is not None:
            try:
                modulus = int(args.modulus, 16)
            except ValueError:
                raise UsageError(f"modulus must be a hex mask, got {args.modulus!r}") from None
        return cls(args.m, args.k, modulus, args.threads or default_workers(), args.format, args.seed)

    def require_theorem_range(self) -> None:
        if self.m < 2:
            raise UsageError("m ≥ 2 required")

    def code(self) -> TraceCode:
        try:
            code = TraceCode.build(self.m, self.k, self.modulus_override)
            code.check_enumerable()
        except (GuardrailError, ReducibleModulusError) as exc:
            raise UsageError(str(exc)) from None
        return code


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# commands ------------------------------------------------------------------


def cmd_info(cfg: RunConfig, args) -> int:
    cfg.require_theorem_range()
    p = CodeParameters(cfg.m, cfg.k)
    opt = analysis.is_distance_optimal(p.N, p.K, p.d)
    direct, closed = analysis.griesmer_gap(cfg.m, cfg.k)
    report = {
        "m": cfg.m,
        "k": cfg.k,
        "n": p.n,
        "N": p.N,
        "K": p.K,
        "w1": p.w1,
        "w2": p.w2,
        "distribution": predicted_distribution(cfg.m, cfg.k).to_json(),
        "optimal": opt.optimal,
        "griesmer": opt.to_json(),
        "gap_identity": {"direct": direct, "closed_form": closed, "holds": direct == closed},
        "minimality_margin": analysis.minimality_margin(cfg.m, cfg.k),
    }
    if cfg.format == "json":
        _emit(_dump(report), args.out)
    else:
        lines = [f"{key}={report[key]}" for key in ("m", "k", "n", "N", "K", "w1", "w2", "optimal")]
        lines.append("weights " + " ".join(f"{e['weight']}:{e['frequency']}" for e in report["distribution"]))
        lines.append(f"gap_identity direct={direct} closed_form={closed}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    cfg.require_theorem_range()
    code = cfg.code()
    claims = analysis.verify_all(code, workers=cfg.threads)
    ok = all(c.ok for c in claims)
    dist = next((c.details.get("distribution") for c in claims if c.claim == "weight_distribution"), None)
    report = {
        "m": cfg.m,
        "k": cfg.k,
        "modulus": hex(code.ring.field.modulus),
        "n": code.n,
        "N": code.N,
        "K": code.K,
        "distribution": dist,
        "matches_prediction": dist is not None,
        "claims": [c.to_json() for c in claims],
        "all_verified": ok,
    }
    if cfg.format == "json":
        _emit(_dump(report), args.out)
    else:
        lines = [f"{'PASS' if c.ok else 'FAIL'} {c.claim} ({c.elapsed:.3f}s)" for c in claims]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def _bits_csv(bits: int, length: int) -> str:
    return ",".join(str((bits >> j) & 1) for j in range(length))


def cmd_export(cfg: RunConfig, args) -> int:
    code = cfg.code()
    what = args.what
    if what == "matrix":
        rows = code.binary_generator_matrix()
        if cfg.format == "csv":
            text = "".join(_bits_csv(r, code.N) + "\n" for r in rows)
        elif cfg.format == "json":
            text = _dump({"m": cfg.m, "k": cfg.k, "N": code.N, "K": code.K,
                          "rows": [BinaryWord(r, code.N).to_hex() for r in rows]})
        else:
            text = "".join(BinaryWord(r, code.N).to_hex() + "\n" for r in rows)
    elif what == "codewords":
        words = code.gray_codewords()
        if cfg.format == "csv":
            text = "".join(_bits_csv(w, code.N) + "\n" for w in words)
        elif cfg.format == "json":
            text = _dump({"m": cfg.m, "k": cfg.k, "N": code.N,
                          "codewords": [{"a": code.ring.from_encoding(e).to_text(), "gray": BinaryWord(w, code.N).to_hex()}
                                        for e, w in enumerate(words)]})
        else:
            text = "".join(BinaryWord(w, code.N).to_hex() + "\n" for w in words)
    else:
        dist = code.weight_distribution(workers=cfg.threads)
        if cfg.format == "json":
            matches = cfg.m >= 2 and dist == predicted_distribution(cfg.m, cfg.k)
            text = _dump({"m": cfg.m, "k": cfg.k, "n": code.n, "N": code.N, "K": code.K,
                          "distribution": dist.to_json(), "matches_prediction": matches})
        else:
            sep = "," if cfg.format == "csv" else " "
            text = "".join(f"{w}{sep}{f}\n" for w, f in dist.rows())
    _emit(text, args.out)
    return EXIT_OK


def _parse_coalition(text: str) -> List[int]:
    if not text.strip():
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"coalition must be a comma-separated list of integers, got {text!r}") from None


def cmd_sss(cfg: RunConfig, args) -> int:
    cfg.require_theorem_range()
    cfg.code()
    seed = cfg.seed if cfg.seed is not None else 0
    scheme = sss.build_scheme(cfg.m, cfg.k, seed=seed, secret_position=args.secret_position,
                              modulus=cfg.modulus_override)
    if args.action == "access":
        acc = sss.minimal_access_sets(scheme)
        if cfg.format == "json":
            _emit(_dump(acc.to_json()), args.out)
        else:
            lines = [" ".join(map(str, s)) for s in acc.minimal_sets]
            lines.append("dictators: " + " ".join(map(str, acc.dictators)))
            _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    if args.action == "deal":
        if args.secret is None:
            raise UsageError("deal needs --secret")
        shares = sss.deal(scheme, args.secret)
        _emit(_dump(sss.share_file(scheme, seed, shares)), args.out)
        return EXIT_OK
    # reconstruct
    if not args.shares:
        raise UsageError("reconstruct needs --shares")
    try:
        meta, shares = sss.load_share_file(Path(args.shares).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if (meta["m"], meta["k"], meta["secret_position"]) != (cfg.m, cfg.k, args.secret_position):
        raise UsageError("share file was dealt for different parameters")
    coalition = _parse_coalition(args.coalition or "")
    try:
        secret = sss.reconstruct(scheme, coalition, shares)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    if cfg.format == "json":
        _emit(_dump({"coalition": sorted(set(coalition)), "authorized": secret is not None, "secret": secret}), args.out)
    else:
        _emit(("unauthorized" if secret is None else str(secret)) + "\n", args.out)
    return EXIT_OK


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, required=True, help="field extension degree")
    common.add_argument("--k", type=int, required=True, help="number of nilpotent generators")
    common.add_argument("--modulus", help="irreducible modulus as a hex bit mask, e.g. 0xb")
    common.add_argument("--threads", type=int, default=0, help="worker processes (default: all cores)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="write output here instead of stdout")

    ap = argparse.ArgumentParser(prog="rktrace", description="Two-Lee-weight trace codes over R_k.")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="closed-form parameters, no enumeration")
    sub.add_parser("verify", parents=[common], help="exhaustively check every claim")
    p_exp = sub.add_parser("export", parents=[common], help="write matrix, codewords or distribution")
    p_exp.add_argument("--what", choices=("matrix", "codewords", "distribution"), default="distribution")
    p_sss = sub.add_parser("sss", parents=[common], help="Massey secret sharing")
    p_sss.add_argument("action", choices=("access", "deal", "reconstruct"))
    p_sss.add_argument("--secret", type=int, choices=(0, 1))
    p_sss.add_argument("--shares", help="share file from 'sss deal'")
    p_sss.add_argument("--coalition", help="comma-separated participant ids")
    p_sss.add_argument("--secret-position", type=int, default=0)
    return ap


COMMANDS = {"info": cmd_info, "verify": cmd_verify, "export": cmd_export, "sss": cmd_sss}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
