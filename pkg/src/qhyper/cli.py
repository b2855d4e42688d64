"""Command-line front end: reproduces the three study figures as CSV (with
exact-rational sidecars), runs the certified verification battery, and emits
a structured report with rendered matplotlib figures.

Outputs are deterministic: identical configuration yields byte-identical CSV.
Every numeric value is computed exactly; decimal rendering (round half to
even, `--digits` places) happens only at the output boundary, and each CSV is
accompanied by a `.exact` sidecar holding the same grid as `p/r` tokens.

Exit codes: 0 all certified checks pass; 1 a certified inequality failed
(witness printed); 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import characters, contfrac, idempotents, recurrence
from .fourier import plancherel_check, qlimit_identity
from .hypergroup import check_property_P, linearization_table, lql_hypergroup
from .scalar import QParam

COMMANDS = ("fig1", "fig2", "fig3", "verify", "report")

DEFAULTS = {
    "q": "2/3",
    "n_max": 19,
    "k_extra": 7,
    "depth": 80,
    "series_n": 9,
    "digits": 12,
    "out": "out",
}

_CONFIG_KEYS = set(DEFAULTS)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: QParam
    n_max: int
    k_extra: int
    depth: int
    series_n: int
    digits: int
    out: Path


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def _build_config(args: argparse.Namespace) -> RunConfig:
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(_read_config_file(args.config))
    for key in _CONFIG_KEYS:
        flag_value = getattr(args, key)
        if flag_value is not None:
            merged[key] = flag_value

    try:
        q = QParam.parse(str(merged["q"]))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid q: {exc}") from exc

    def as_int(key: str, minimum: int, maximum: int | None = None) -> int:
        try:
            value = int(merged[key])
        except ValueError as exc:
            raise ConfigError(f"invalid integer for {key}: {merged[key]!r}") from exc
        if value < minimum or (maximum is not None and value > maximum):
            bound = f">= {minimum}" if maximum is None else f"in [{minimum}, {maximum}]"
            raise ConfigError(f"{key} must be {bound}, got {value}")
        return value

    return RunConfig(
        command=args.command,
        q=q,
        n_max=as_int("n_max", 0),
        k_extra=as_int("k_extra", 0),
        depth=as_int("depth", 1),
        series_n=as_int("series_n", 0),
        digits=as_int("digits", 1, 50),
        out=Path(merged["out"]),
    )


def _thread_count() -> int:
    raw = os.environ.get("QHYPER_THREADS")
    if raw is None:
        return 1
    try:
        count = int(raw)
    except ValueError as exc:
        raise ConfigError(f"QHYPER_THREADS must be an integer, got {raw!r}") from exc
    if count < 1:
        raise ConfigError(f"QHYPER_THREADS must be >= 1, got {count}")
    return count


def _map_ordered(fn, items):
    """Apply fn over items, in parallel when QHYPER_THREADS > 1, preserving order."""
    count = _thread_count()
    items = list(items)
    if count <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(fn, items))


def format_decimal(x: Fraction, digits: int) -> str:
    """Exact fixed-point rendering with round-half-even; no floating point."""
    negative = x < 0
    num, den = abs(x.numerator), x.denominator
    scale = 10**digits
    quot, rem = divmod(num * scale, den)
    double = 2 * rem
    if double > den or (double == den and quot % 2 == 1):
        quot += 1
    sign = "-" if negative and quot else ""
    ipart, fpart = divmod(quot, scale)
    return f"{sign}{ipart}.{fpart:0{digits}d}"


def format_exact(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _write_grid(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _emit(
    out_dir: Path,
    stem: str,
    header: list[str],
    kinds: list[str],
    rows: list[list[Fraction]],
    digits: int,
) -> list[Path]:
    """Write `<stem>.csv` (decimal columns per `kinds`: 'int' or 'dec') and the
    `.exact` sidecar with one p/r token per cell on the same grid."""
    rendered = []
    for row in rows:
        cells = []
        for kind, value in zip(kinds, row):
            if kind == "int":
                assert value.denominator == 1
                cells.append(str(value.numerator))
            else:
                cells.append(format_decimal(value, digits))
        rendered.append(cells)
    csv_path = out_dir / f"{stem}.csv"
    _write_grid(csv_path, header, rendered)
    exact_path = out_dir / f"{stem}.exact"
    _write_grid(exact_path, header, [[format_exact(v) for v in row] for row in rows])
    return [csv_path, exact_path]


# ---------------------------------------------------------------------------
# figure data


FIG1_HEADER = ["n", "l1_lo", "l1_hi", "l2sq", "ratio_lo", "ratio_hi", "C_lo", "C_hi"]
FIG1_KINDS = ["int"] + ["dec"] * 7

FIG2_HEADER = ["n", "k", "ratio_abs", "envelope", "sign", "K", "abs_alpha"]
FIG2_KINDS = ["int", "int", "dec", "dec", "int", "int", "dec"]

FIG3_HEADER = ["N", "residual_lo", "residual_hi"]
FIG3_KINDS = ["int", "dec", "dec"]


def fig1_data(cfg: RunConfig):
    report = characters.verify_norm_chain(cfg.q, cfg.n_max, mapper=_map_ordered)
    bound = report.bound
    rows = []
    for row in report.rows:
        ratio = row.ratio()
        rows.append(
            [
                Fraction(row.n),
                row.l1.lo,
                row.l1.hi,
                row.l2_sq,
                ratio.lo,
                ratio.hi,
                bound.lo,
                bound.hi,
            ]
        )
    return report, rows


def fig2_data(cfg: RunConfig):
    report = characters.verify_decay(cfg.q, cfg.n_max, cfg.k_extra)
    rows = []
    for row in report.rows:
        rows.append(
            [
                Fraction(row.n),
                Fraction(row.k),
                row.abs_ratio,
                row.envelope,
                Fraction(row.sign),
                Fraction(report.K),
                abs(row.alpha_k),
            ]
        )
    return report, rows


def fig3_data(cfg: RunConfig):
    curve = idempotents.residual_curve(cfg.q, 1, cfg.series_n)
    rows = [[Fraction(n), enc.lo, enc.hi] for n, enc in enumerate(curve)]
    decreasing = all(curve[i + 1].hi < curve[i].hi for i in range(len(curve) - 1))
    certified = all(
        enc.hi <= idempotents.span_tail_envelope(cfg.q, 1, n) for n, enc in enumerate(curve)
    )
    return curve, rows, decreasing, certified


# ---------------------------------------------------------------------------
# verification battery


class CheckResult:
    def __init__(self, name: str, ok: bool, detail: str) -> None:
        self.name = name
        self.ok = ok
        self.detail = detail


def _fmt(x: Fraction, digits: int = 6) -> str:
    return format_decimal(x, digits)


def run_battery(cfg: RunConfig) -> list[CheckResult]:
    q = cfg.q
    results: list[CheckResult] = []
    K = characters.k_threshold(q)

    bound = characters.norm_ratio_bound(q)
    trivial_floor = q.q**-K / (1 - q.q)
    results.append(
        CheckResult(
            "constant-enclosure",
            bound.lo > trivial_floor and bound.width < Fraction(1, 10**12),
            f"C in [{_fmt(bound.lo)}, {_fmt(bound.hi)}], K={K}",
        )
    )

    chain = characters.verify_norm_chain(q, cfg.n_max, mapper=_map_ordered)
    detail = f"n <= {cfg.n_max}: l2^2 < l1.lo and l1.hi < C.hi*l2^2"
    if not chain.ok:
        detail = f"witness n={chain.violations[0][0]}: {chain.violations[0][1]}"
    results.append(CheckResult("norm-chain", chain.ok, detail))

    decay = characters.verify_decay(q, min(cfg.n_max, 9), cfg.k_extra)
    detail = f"{len(decay.rows)} (n,k) cells, K={decay.K}"
    if not decay.ok:
        detail = f"witness {decay.first_violation}"
    results.append(CheckResult("character-decay", decay.ok, detail))

    lemma = contfrac.verify_lemma22(q, min(cfg.n_max, 9), K + max(cfg.k_extra, 10))
    detail = f"{len(lemma.rows)} cells: A > 4, B > 1/(2q) and proof-internal bounds"
    if not lemma.ok:
        detail = f"witness {lemma.violations[0]}"
    results.append(CheckResult("cf-coefficients", lemma.ok, detail))

    def psi_cell(cell):
        n, k = cell
        value = contfrac.character_ratio(q, n, k)
        enc = contfrac.psi(q, n, k, depth=cfg.depth)
        ok = enc.contains(value) and contfrac.WORPITZKY_INTERVAL.encloses(enc)
        return (n, k, ok)

    cells = [(n, k) for n in range(min(cfg.n_max, 9) + 1) for k in range(K, K + 9)]
    psi_results = _map_ordered(psi_cell, cells)
    bad = [(n, k) for n, k, ok in psi_results if not ok]
    detail = f"{len(cells)} enclosures at depth {cfg.depth}, all inside [2/3, 2]"
    if bad:
        detail = f"witness (n,k)={bad[0]}"
    results.append(CheckResult("cf-character-identity", not bad, detail))

    M = min(cfg.n_max, 30)
    prov = lql_hypergroup(q).provider
    prop = check_property_P(prov, M)
    detail = f"g(m,n;k) >= 0 for m <= n <= {M}"
    if not prop.ok:
        detail = f"witness g{prop.witness[:3]} = {prop.witness[3]}"
    sums_ok = True
    table = linearization_table(prov)
    for m in range(M + 1):
        for n in range(m, M + 1):
            row = table.row(m, n)
            if sum(row.values()) != 1 or row.get(n - m, 0) <= 0 or row.get(n + m, 0) <= 0:
                sums_ok = False
                detail = f"row (m,n)=({m},{n}) fails normalization/endpoints"
                break
        if not sums_ok:
            break
    results.append(CheckResult("linearization-nonneg", prop.ok and sums_ok, detail))

    table_enc = idempotents.fourier_delta_table(q, 6)
    widths = max(e.width for row in table_enc for e in row)
    delta_ok = all(
        table_enc[m][n].contains(1 if m == n else 0) for m in range(7) for n in range(7)
    ) and widths < Fraction(1, 10**10)
    results.append(
        CheckResult(
            "idempotent-fourier",
            delta_ok,
            f"e_n^ encloses delta_mn for m,n <= 6, max width {_fmt(widths, 12)}",
        )
    )

    orth = idempotents.orthogonality_check(q, 0, 1, 8)
    results.append(
        CheckResult(
            "idempotent-orthogonality",
            orth.ok and orth.max_product_width < Fraction(1, 10**10),
            f"e_0 * e_1: products enclose 0, sup bound {_fmt(orth.linf_bound, 12)}",
        )
    )

    curve = idempotents.residual_curve(q, 1, cfg.series_n)
    decreasing = all(curve[i + 1].hi < curve[i].hi for i in range(len(curve) - 1))
    certified = all(
        enc.hi <= idempotents.span_tail_envelope(q, 1, n) for n, enc in enumerate(curve)
    )
    shape = "monotone" if decreasing else "non-monotone"
    results.append(
        CheckResult(
            "idempotent-span-residuals",
            certified,
            f"residuals below certified envelope for N <= {cfg.series_n} ({shape} window)",
        )
    )

    hg = lql_hypergroup(q)
    samples = [
        hg.epsilon(0),
        hg.epsilon(1),
        hg.hseq({0: Fraction(1, 2), 2: Fraction(-1, 3), 5: Fraction(2, 7)}),
    ]
    plancherel_ok = True
    for f in samples:
        lhs, rhs = plancherel_check(f, 12)
        if not rhs.contains(lhs):
            plancherel_ok = False
    results.append(
        CheckResult("plancherel", plancherel_ok, "||f||_2^2 inside truncated spectral enclosure")
    )

    cross_ok = True
    for n in range(21):
        for m in range(7):
            x = 1 - q.q**m
            if prov.poly(n, x) != recurrence.eval_poly_phi(q, n, x):
                cross_ok = False
    hw = hg.haar
    for n in range(201):
        if hw.value(n) != recurrence.lql_haar_closed(q, n):
            cross_ok = False
    for n in range(101):
        if hw.partial_sum(n) != recurrence.lql_haar_partial_closed(q, n):
            cross_ok = False
    results.append(
        CheckResult(
            "eval-crosscheck",
            cross_ok,
            "recurrence vs hypergeometric eval; Haar recursion vs closed forms",
        )
    )

    qrep = qlimit_identity(q, 12)
    results.append(
        CheckResult(
            "qlimit-identities",
            qrep.identities_ok,
            f"finite diagonal identities exact to n=12; tail rule: {qrep.tail_rule}",
        )
    )

    return results


# ---------------------------------------------------------------------------
# figure rendering (report path)


def render_figures(cfg: RunConfig, fig1_rows, fig2_rows, fig3_rows) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = []
    qf = float(cfg.q.q)

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    ns = [int(r[0]) for r in fig1_rows]
    ratios = [float(r[5]) for r in fig1_rows]
    c_hi = float(fig1_rows[0][7])
    axes[0].plot(ns, ratios, "o-", ms=4)
    axes[0].axhline(c_hi, color="tab:red", lw=1, label="certified bound")
    axes[0].set_xlabel("n")
    axes[0].set_ylabel("l1 / l2^2")
    axes[0].legend()
    xs = [1 - qf**n for n in ns]
    axes[1].plot(xs, ratios, "o", ms=4)
    axes[1].axhline(c_hi, color="tab:red", lw=1)
    axes[1].set_xlabel("x = 1 - q^n")
    fig.suptitle(f"character norm ratios, q={cfg.q}")
    fig.tight_layout()
    path = cfg.out / "fig1.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    out.append(path)

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    by_n: dict[int, list] = {}
    for r in fig2_rows:
        by_n.setdefault(int(r[0]), []).append(r)
    for n, rows in sorted(by_n.items()):
        ks = [int(r[1]) for r in rows]
        axes[0].plot(ks, [float(r[2]) for r in rows], "o-", ms=3, label=f"n={n}")
        axes[1].semilogy(ks, [float(r[6]) for r in rows], "o", ms=3)
    axes[0].axhline(4.0, color="tab:red", lw=1)
    axes[0].set_xlabel("k")
    axes[0].set_ylabel("|ratio|")
    first_n = min(by_n)
    env_rows = by_n[first_n]
    axes[1].semilogy(
        [int(r[1]) for r in env_rows], [float(r[3]) for r in env_rows], "-", color="tab:red"
    )
    axes[1].set_xlabel("k")
    axes[1].set_ylabel("|alpha(n+k)| vs envelope")
    fig.suptitle(f"character decay, q={cfg.q}")
    fig.tight_layout()
    path = cfg.out / "fig2.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    out.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    ns = [int(r[0]) for r in fig3_rows]
    ax.semilogy(ns, [float(r[2]) for r in fig3_rows], "o-", ms=4)
    ax.set_xlabel("N")
    ax.set_ylabel("l1 residual (upper bound)")
    ax.set_title(f"idempotent-span approximation of epsilon_1, q={cfg.q}")
    fig.tight_layout()
    path = cfg.out / "fig3.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    out.append(path)

    return out


# ---------------------------------------------------------------------------
# commands


def _cmd_fig1(cfg: RunConfig) -> int:
    report, rows = fig1_data(cfg)
    files = _emit(cfg.out, "fig1", FIG1_HEADER, FIG1_KINDS, rows, cfg.digits)
    for path in files:
        print(f"wrote {path}")
    if not report.ok:
        n, msg = report.violations[0]
        print(f"FAIL norm-chain at n={n}: {msg}", file=sys.stderr)
        return 1
    return 0


def _cmd_fig2(cfg: RunConfig) -> int:
    report, rows = fig2_data(cfg)
    files = _emit(cfg.out, "fig2", FIG2_HEADER, FIG2_KINDS, rows, cfg.digits)
    for path in files:
        print(f"wrote {path}")
    if not report.ok:
        print(f"FAIL character-decay: witness {report.first_violation}", file=sys.stderr)
        return 1
    return 0


def _cmd_fig3(cfg: RunConfig) -> int:
    _, rows, decreasing, certified = fig3_data(cfg)
    files = _emit(cfg.out, "fig3", FIG3_HEADER, FIG3_KINDS, rows, cfg.digits)
    for path in files:
        print(f"wrote {path}")
    if not decreasing:
        # monotone decay is a data property of moderate q, not a certificate
        print("note: residual upper bounds are not monotone on this window")
    if not certified:
        print("FAIL span residual exceeds its certified envelope", file=sys.stderr)
        return 1
    return 0


def _cmd_verify(cfg: RunConfig) -> int:
    results = run_battery(cfg)
    failures = 0
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} {res.name}: {res.detail}")
        if not res.ok:
            failures += 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


def _cmd_report(cfg: RunConfig) -> int:
    rep1, rows1 = fig1_data(cfg)
    rep2, rows2 = fig2_data(cfg)
    _, rows3, _, certified3 = fig3_data(cfg)
    files = []
    files += _emit(cfg.out, "fig1", FIG1_HEADER, FIG1_KINDS, rows1, cfg.digits)
    files += _emit(cfg.out, "fig2", FIG2_HEADER, FIG2_KINDS, rows2, cfg.digits)
    files += _emit(cfg.out, "fig3", FIG3_HEADER, FIG3_KINDS, rows3, cfg.digits)
    files += render_figures(cfg, rows1, rows2, rows3)

    results = run_battery(cfg)
    results.append(CheckResult("fig1-chain", rep1.ok, "norm chain behind fig1"))
    results.append(CheckResult("fig2-decay", rep2.ok, "decay suite behind fig2"))
    results.append(
        CheckResult("fig3-envelope", certified3, "residuals below the certified envelope")
    )

    payload = {
        "config": {
            "q": str(cfg.q),
            "n_max": cfg.n_max,
            "k_extra": cfg.k_extra,
            "depth": cfg.depth,
            "series_n": cfg.series_n,
            "digits": cfg.digits,
        },
        "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results],
        "files": sorted(str(p) for p in files),
    }
    report_path = cfg.out / "report.json"
    with open(report_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    files.append(report_path)

    failures = 0
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} {res.name}: {res.detail}")
        if not res.ok:
            failures += 1
    for path in files:
        print(f"wrote {path}")
    return 0 if failures == 0 else 1


_DISPATCH = {
    "fig1": _cmd_fig1,
    "fig2": _cmd_fig2,
    "fig3": _cmd_fig3,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhyper",
        description="exact verification toolkit for little q-Legendre hypergroups",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--q", help="rational base parameter p/r with 0 < p < r")
        p.add_argument("--n-max", dest="n_max", help="spectral sweep bound")
        p.add_argument("--k-extra", dest="k_extra", help="decay indices beyond the threshold K")
        p.add_argument("--depth", help="continued-fraction truncation depth")
        p.add_argument("--series-n", dest="series_n", help="span-approximation order bound")
        p.add_argument("--digits", help="decimal places in CSV output (1..50)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--config", help="flat key=value config file (flags win)")
    return parser


def run(cfg: RunConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    return _DISPATCH[cfg.command](cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _build_config(args)
        return run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
