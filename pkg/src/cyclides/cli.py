"""Command-line front end.

    cyclides compute --R 2 --rho 0.5
    cyclides sweep --R 1.4142135624 --points 101 --format csv
    cyclides verify
    cyclides classify --x 0.3 --y 0 --z 0 --R 2
    cyclides nonunique --R 2 --v 0.9

Exit codes: 0 success, 1 failed verification, 2 usage or domain error.
The worker count for sweeps and verify comes from ``CYCLIDES_WORKERS``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from .errors import CyclideError, DomainError
from .geometry import alpha_to_R, canonicalize, classify_center
from .iso import area_closed, find_iso_matches, iso_full_domain, volume_closed
from .quadrature import InvertedTorusIntegrand, QuadratureSpec, area_oracle, volume_oracle
from .verify import run_all

WORKERS_ENV = "CYCLIDES_WORKERS"
ORACLE_SKIP_BAND = 1e-3  # oracle skipped within this fraction of R-1 from the round sphere


@dataclass
class RunConfig:
    tolerance: float = 1e-10
    n_angular: int = 256
    n_radial: int = 64
    fmt: str = "csv"
    points: int = 201
    workers: int = 1

    def __post_init__(self):
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance}")
        if self.n_angular < 8 or self.n_angular % 2:
            raise DomainError(f"n-angular must be an even integer >= 8, got {self.n_angular}")
        if self.n_radial < 4:
            raise DomainError(f"n-radial must be >= 4, got {self.n_radial}")
        if self.points < 2:
            raise DomainError(f"points must be >= 2, got {self.points}")
        if self.workers < 1:
            raise DomainError(f"worker count must be >= 1, got {self.workers}")
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"unknown format {self.fmt!r}")

    def quadrature(self) -> QuadratureSpec:
        return QuadratureSpec(self.n_angular, self.n_radial, self.tolerance)


@dataclass
class OutputRecord:
    R: float
    rho: float
    shape: str = ""
    area_closed: float | None = None
    area_oracle: float | None = None
    volume_closed: float | None = None
    volume_oracle: float | None = None
    iso_closed: float | None = None
    iso_oracle: float | None = None
    rel_errors: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: v for k, v in d.items() if v is not None and v != {}}


def _shape_label(shape) -> str:
    if shape.is_round_sphere:
        return "round sphere"
    return f"R={shape.R!r} rho={shape.rho!r}"


def cmd_compute(R: float, rho: float, config: RunConfig) -> OutputRecord:
    """Closed forms and, away from the round sphere, the quadrature oracle.

    Centers inside the solid torus are reported through their canonical dual
    pair, which is the same shape up to similarity.
    """
    shape = canonicalize(R, rho)
    rec = OutputRecord(R, rho, _shape_label(shape), iso_closed=iso_full_domain(R, rho))
    if shape.is_round_sphere:
        return rec
    Rc, rhoc = shape.R, shape.rho
    rec.area_closed = area_closed(Rc, rhoc)
    rec.volume_closed = volume_closed(Rc, rhoc)
    if abs(rhoc - (Rc - 1.0)) <= ORACLE_SKIP_BAND * (Rc - 1.0):
        return rec
    spec = InvertedTorusIntegrand(Rc, rhoc)
    q = config.quadrature()
    rec.area_oracle = area_oracle(spec, q)
    rec.volume_oracle = volume_oracle(spec, q)
    rec.iso_oracle = 6.0 * math.sqrt(math.pi) * rec.volume_oracle / rec.area_oracle**1.5
    rec.rel_errors = {
        "area": abs(rec.area_closed / rec.area_oracle - 1.0),
        "volume": abs(rec.volume_closed / rec.volume_oracle - 1.0),
        "iso": abs(rec.iso_closed / rec.iso_oracle - 1.0),
    }
    return rec


def cmd_sweep(R: float, config: RunConfig) -> list[dict]:
    """Isoperimetric ratio on an even grid of ``[0, sqrt(R^2-1)]``, in grid order."""
    if not R > 1.0:
        raise DomainError(f"R must exceed 1, got {R!r}")
    s = math.sqrt(R * R - 1.0)
    n = config.points
    rhos = [s * i / (n - 1) for i in range(n)]
    rhos[-1] = s
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        values = list(pool.map(lambda r: iso_full_domain(R, r), rhos))
    return [{"index": i, "rho": r, "iso": v} for i, (r, v) in enumerate(zip(rhos, values))]


def cmd_classify(x: float, y: float, z: float, R: float) -> dict:
    rho = classify_center((x, y, z), R, strict=True)
    shape = canonicalize(R, rho)
    out = {"R": R, "rho_family": rho, "shape": _shape_label(shape), "iso": iso_full_domain(R, rho)}
    if not shape.is_round_sphere:
        out.update(canonical_R=shape.R, canonical_rho=shape.rho)
    return out


def cmd_nonunique(R: float, v: float) -> list[dict]:
    rows = []
    for rho in find_iso_matches(R, v):
        shape = canonicalize(R, rho)
        m = shape.maxwell
        rows.append(
            {
                "rho": rho,
                "canonical_R": shape.R,
                "canonical_rho": shape.rho,
                "iso": iso_full_domain(R, rho),
                "maxwell_a": m.a,
                "maxwell_f": m.f,
                "maxwell_l_minus_a": m.l_minus_a,
            }
        )
    return rows


def cmd_verify(config: RunConfig) -> tuple[int, list[dict]]:
    results = run_all(config.tolerance, config.n_angular, config.n_radial, config.workers)
    # timings go to stderr so the report itself is reproducible
    print(f"verify: {sum(r.seconds for r in results):.2f} s", file=sys.stderr)
    records = [{k: v for k, v in r.to_dict().items() if k != "seconds"} for r in results]
    return (0 if all(r.passed for r in results) else 1), records


# --- output ----------------------------------------------------------------


def _flatten(rec: dict) -> dict:
    flat = {}
    for k, v in rec.items():
        if isinstance(v, dict):
            flat.update({f"{k}_{kk}": vv for kk, vv in v.items()})
        else:
            flat[k] = v
    return flat


def render(records: list[dict], header: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"config": header, "records": records}, indent=2) + "\n"
    buf = io.StringIO()
    for k, v in header.items():
        buf.write(f"# {k}={v}\n")
    rows = [_flatten(r) for r in records]
    columns: list[str] = []
    for row in rows:
        columns += [c for c in row if c not in columns]
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


# --- argument parsing ------------------------------------------------------


def _add_radius(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--R", type=float, help="major radius of the torus (minor radius 1)")
    g.add_argument("--alpha", type=float, help="Clifford torus parameter, converted by R = csc(alpha)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="run tolerance (default 1e-10)")
    common.add_argument("--n-angular", type=int, default=256)
    common.add_argument("--n-radial", type=int, default=64)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="cyclides", description="Isoperimetric ratios of toroidal Dupin cyclides."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="area, volume and iso ratio of one cyclide")
    _add_radius(p)
    p.add_argument("--rho", type=float, required=True)

    p = sub.add_parser("sweep", parents=[common], help="iso ratio over rho in [0, sqrt(R^2-1)]")
    _add_radius(p)
    p.add_argument("--points", type=int, default=201)

    sub.add_parser("verify", parents=[common], help="run every invariant suite")

    p = sub.add_parser("classify", parents=[common], help="shape of the inversion about a point")
    _add_radius(p)
    for axis in ("--x", "--y", "--z"):
        p.add_argument(axis, type=float, required=True)

    p = sub.add_parser("nonunique", parents=[common], help="two distinct shapes with iso ratio v")
    _add_radius(p)
    p.add_argument("--v", type=float, required=True)
    return parser


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            tolerance=args.tol,
            n_angular=args.n_angular,
            n_radial=args.n_radial,
            fmt=args.format,
            points=getattr(args, "points", 201),
            workers=_workers(),
        )
        R = None
        if args.command != "verify":
            R = alpha_to_R(args.alpha) if args.alpha is not None else args.R
        header = {"command": args.command, **asdict(config)}
        if R is not None:
            header["R"] = R

        code = 0
        if args.command == "compute":
            records = [cmd_compute(R, args.rho, config).to_dict()]
        elif args.command == "sweep":
            records = cmd_sweep(R, config)
        elif args.command == "classify":
            header.update(x=args.x, y=args.y, z=args.z)
            records = [cmd_classify(args.x, args.y, args.z, R)]
        elif args.command == "nonunique":
            header["v"] = args.v
            records = cmd_nonunique(R, args.v)
        else:
            code, records = cmd_verify(config)
    except (CyclideError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"cyclides {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2

    _emit(render(records, header, config.fmt), args.out)
    if code:
        failed = [r["name"] for r in records if not r["passed"]]
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
