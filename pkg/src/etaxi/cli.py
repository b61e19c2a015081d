"""Command-line runner: ``etaxi verify|character|table``.

Exit codes: 0 pass, 1 mathematical mismatch, 2 configuration or window error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import characters as ch
from . import verify as vf
from .config import ConfigError, RunConfig, load_config
from .fock import enumerate_basis
from .scalars import hurwitz_zeta_negative

EXIT_PASS, EXIT_MISMATCH, EXIT_ERROR = 0, 1, 2

VERIFY_SUITES = (
    "virasoro",
    "virasoro-alpha",
    "dq",
    "v-algebra",
    "iom",
    "jordan",
    "primary-w3",
    "expansion",
    "convention-independence",
    "anticommutators",
    "jacobi",
)
CHARACTERS = ("iom", "w3", "general", "d0t", "d0k")
TABLES = ("iom-eigenvalues", "d0-eigenvalues", "shifts")


def run_suite(name: str, cfg: RunConfig) -> vf.RelationReport:
    conv = cfg.convention(name)
    n, lvl = cfg.max_index, cfg.level
    if name == "virasoro":
        return vf.verify_virasoro(n, lvl, conv)
    if name == "virasoro-alpha":
        return vf.verify_virasoro_alpha(max_index=n, level=lvl, convention=conv)
    if name == "dq":
        return vf.verify_dq_algebra(n, lvl, cfg.ring, conv, order=cfg.hbar_order)
    if name == "v-algebra":
        sign = 1 if cfg.v_sign == "stated" else -1
        return vf.verify_v_algebra(2, n, lvl, conv, structure_sign=sign)
    if name == "iom":
        return vf.verify_involution_and_eigenvalues(n, lvl, conv)
    if name == "jordan":
        return vf.verify_jordan(lvl, n, cfg.delta_T, conv)
    if name == "primary-w3":
        return vf.verify_primary_w3(n, n, lvl, conv)
    if name == "expansion":
        return vf.verify_expansion(n, lvl, cfg.hbar_order, conv)
    if name == "convention-independence":
        return vf.verify_convention_independence(n, lvl)
    if name == "anticommutators":
        return vf.verify_anticommutators(cfg.sector_obj(), n, lvl)
    if name == "jacobi":
        return vf.verify_jacobi(level=lvl, convention=conv)
    raise ConfigError(f"unknown suite {name!r}")


def report_text(rep: vf.RelationReport) -> str:
    lines = [f"suite {rep.suite}: {rep.status} ({rep.checked} checks, {len(rep.failures)} failures)"]
    for k, v in sorted(rep.parameters.items()):
        lines.append(f"  {k} = {vf.fmt(v)}")
    for k, v in sorted(rep.results.items()):
        lines.append(f"  result {k} = {v}")
    for f in rep.failures[:20]:
        lines.append(f"  FAIL {f['instance']} at {f['state']}: expected {f['expected']}, got {f['actual']}")
    lines.extend(f"  note: {n}" for n in rep.notes)
    return "\n".join(lines) + "\n"


def cmd_verify(name: str, cfg: RunConfig) -> tuple[int, str]:
    rep = run_suite(name, cfg)
    if cfg.format == "csv":
        raise ConfigError("relation reports are JSON or text")
    body = report_text(rep) if cfg.format == "text" else rep.to_json() + "\n"
    code = {"pass": EXIT_PASS, "fail": EXIT_MISMATCH}.get(rep.status, EXIT_ERROR)
    return code, body


def character_pair(name: str, cfg: RunConfig) -> tuple[dict, ch.MonomialSeries, ch.MonomialSeries]:
    sector = cfg.sector_obj()
    if name in ("iom", "w3", "general"):
        K = {"iom": 2, "w3": 3}.get(name, cfg.vars)
        spec = ch.CharacterSpec(sector, cfg.L, K, cfg.normalize or name == "w3", cfg.regularize)
        meta = {"sector": sector.tag, "L": spec.L, "K": K, "normalize": spec.normalize, "regularize": spec.regularize}
        return meta, ch.char_bruteforce(spec), ch.char_product(spec)
    if name == "d0t":
        brute, prod = ch.char_D0t(cfg.t, sector, cfg.L)
        meta = {"sector": sector.tag, "L": cfg.L, "t": str(cfg.t)}
        if cfg.t * cfg.t != 1:
            meta["continuum_prefactor_exponent"] = str(ch.continuum_prefactor(cfg.t, sector))
        return meta, brute, prod
    if name == "d0k":
        base = ch.char_bruteforce(ch.CharacterSpec(sector, cfg.L, cfg.k + 1))
        meta = {"sector": sector.tag, "L": cfg.L, "k": cfg.k}
        return meta, ch.char_D0k_direct(cfg.k, sector, cfg.L), ch.char_D0k_specialize(cfg.k, base)
    raise ConfigError(f"unknown character {name!r}")


def cmd_character(name: str, cfg: RunConfig) -> tuple[int, str]:
    meta, brute, prod = character_pair(name, cfg)
    match = brute == prod
    if cfg.format == "csv":
        if brute.nvars != 1:
            raise ConfigError("CSV output is only for single-variable series")
        body = "# bruteforce\n" + brute.to_csv() + "# product\n" + prod.to_csv() + f"# match,{str(match).lower()}\n"
    elif cfg.format == "text":
        body = f"character {name} {json.dumps(meta, sort_keys=True)}\n  trace:   {brute}\n  product: {prod}\n  match={str(match).lower()}\n"
    else:
        doc = {"character": name, "spec": meta, "bruteforce": brute.to_records(), "product": prod.to_records(), "match": match}
        body = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return (EXIT_PASS if match else EXIT_MISMATCH), body


def table_rows(what: str, cfg: RunConfig) -> tuple[list[str], list[list[str]]]:
    if what == "shifts":
        header = ["n", "NS", "R"]
        rows = []
        for n in range(1, max(cfg.max_index, 1) + 1):
            m = 2 * n - 1
            rows.append([str(n), str(hurwitz_zeta_negative(m, 1)), str(hurwitz_zeta_negative(m, Fraction(1, 2)))])
        return header, rows
    basis = enumerate_basis(cfg.sector_obj(), cfg.level, zero_modes=False)
    header = ["diagram", "level", "charge"]
    if what == "iom-eigenvalues":
        header += [f"I_{i}" for i in range(cfg.vars)]
    header.append("D_0(q)")
    rows = []
    for s in basis.states:
        row = [str(s), str(s.level), str(s.charge)]
        if what == "iom-eigenvalues":
            row += [str(ch.iom_eigenvalue(s, i)) for i in range(cfg.vars)]
        row.append(ch.d0q_eigenvalue_string(s))
        rows.append(row)
    return header, rows


def cmd_table(what: str, cfg: RunConfig) -> tuple[int, str]:
    if what not in TABLES:
        raise ConfigError(f"unknown table {what!r}")
    header, rows = table_rows(what, cfg)
    if cfg.format == "json":
        body = json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"
    elif cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        body = buf.getvalue()
    else:
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        body = "\n".join(lines) + "\n"
    return EXIT_PASS, body


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value config file (default: $ETAXI_CONFIG)")
    common.add_argument("--sector", choices=["NS", "R", "ns", "r"])
    common.add_argument("--level", help="truncation level (rational)")
    common.add_argument("--max-index", type=int, dest="max_index")
    common.add_argument("--vars", type=int)
    common.add_argument("--L", type=int, dest="L")
    common.add_argument("--t", help="deformation parameter as p/q")
    common.add_argument("--k", type=int, help="hbar order for the d0k character")
    common.add_argument("--lambda", dest="lam", help="zero-mode ordering parameter: 0, 1/2 or 1")
    common.add_argument("--zero-mode", dest="zero_mode", choices=["auto", "lambda", "omit", "bare"])
    common.add_argument("--delta-T", dest="delta_T")
    common.add_argument("--hbar-order", type=int, dest="hbar_order")
    common.add_argument("--ring", choices=["laurent", "rational", "hbar"])
    common.add_argument("--symbolic", action="store_true", help="shorthand for --ring laurent")
    common.add_argument("--v-sign", dest="v_sign", choices=["stated", "realized"])
    common.add_argument("--normalize", action="store_true", default=None)
    common.add_argument("--regularize", action="store_true", default=None)
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--out", help="output path (default: stdout)")

    parser = argparse.ArgumentParser(prog="etaxi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", parents=[common], help="run a relation suite")
    p.add_argument("name", choices=VERIFY_SUITES)
    p = sub.add_parser("character", parents=[common], help="brute-force trace versus product formula")
    p.add_argument("name", choices=CHARACTERS)
    p = sub.add_parser("table", parents=[common], help="eigenvalue and shift tables")
    p.add_argument("name", choices=TABLES)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    keys = (
        "sector", "level", "max_index", "vars", "L", "t", "k", "lam", "zero_mode", "delta_T",
        "hbar_order", "ring", "v_sign", "normalize", "regularize", "format", "out",
    )
    overrides = {k: getattr(args, k) for k in keys}
    if args.symbolic:
        overrides["ring"] = "laurent"
    if overrides["sector"]:
        overrides["sector"] = overrides["sector"].upper()
    try:
        cfg = load_config(args.config, overrides)
        handler = {"verify": cmd_verify, "character": cmd_character, "table": cmd_table}[args.command]
        code, body = handler(args.name, cfg)
    except ConfigError as exc:
        print(f"etaxi: configuration error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
