"""Command line entry points.

Three subcommands:

``verify``    run the seeded self-check suites and report residuals
``transform`` apply a stored global transformation to a stored object
``basis``     build an orthonormal or regular basis from four stored wedges

Exit status: 0 on success, 1 when a verify check fails, 2 for usage
problems including unreadable or malformed input files.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .algebra import Bivector5, FiveForm, FiveVector, FourVector, MetricH
from .bases import REFERENCE_BASIS, classify_basis, orthonormal_basis_for, regular_basis_for
from .errors import KindMismatch, PentavecError
from .fileio import Record, read_record, transform_from_payload, write_record
from .grids import FieldOnGrid, SCHEMES
from .numerics import invert, max_norm
from .poincare import (
    GeneratorTensor,
    ParamTensor,
    transform_generator_tensor,
    transform_orthonormal,
    transform_param_tensor,
    transform_parallel,
)
from .stress_energy import transform_moment_field
from .suites import SUITE_NAMES, SuiteOptions, run_suites
from . import algebra


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pentavec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run self-check suites")
    verify.add_argument("suite", nargs="?", default="all", choices=("all",) + SUITE_NAMES)
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--tol", type=float, default=None, help="override every residual gate")
    verify.add_argument("--kappa", type=float, default=1.0)
    verify.add_argument("--grid", type=int, default=17, metavar="N", help="base grid resolution")
    verify.add_argument("--scheme", choices=tuple(SCHEMES), default="central2")
    verify.add_argument("--basis", choices=("O", "P"), default=None, help="restrict frame checks")
    verify.add_argument("--format", choices=("human", "machine"), default="human")
    verify.add_argument("--jobs", type=int, default=1, help="suites to run concurrently")

    transform = sub.add_parser("transform", help="apply a stored transformation to a stored object")
    transform.add_argument("input")
    transform.add_argument("transform")
    transform.add_argument("-o", "--output", required=True)
    transform.add_argument("--basis", choices=("O", "P"), default=None, help="frame override for vectors and forms")
    transform.add_argument("--kappa", type=float, default=None)

    basis = sub.add_parser("basis", help="build a basis from four stored wedge bivectors")
    basis.add_argument("input")
    basis.add_argument("-o", "--output", required=True)
    basis.add_argument("--mode", choices=("orthonormal", "regular"), required=True)
    basis.add_argument("--negate-direction", action="store_true")
    return parser


# ----------------------------------------------------------------- verify

def _format_gate(check) -> str:
    op = ">=" if check.mode == "at-least" else "<="
    return f"{op} {check.gate:g}"


def _cmd_verify(args) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    options = SuiteOptions(
        seed=args.seed,
        tol=args.tol,
        kappa=args.kappa,
        grid_n=args.grid,
        scheme=args.scheme,
        basis=args.basis,
    )
    reports = run_suites(names, options, jobs=max(1, args.jobs))
    failed = False
    for report in reports:
        if args.format == "machine":
            for check in report.checks:
                status = "pass" if check.passed else "fail"
                print(f"{report.name}.{check.name} {check.value:.6g} {check.gate:.6g} {status}")
        else:
            verdict = "PASS" if report.passed else "FAIL"
            print(f"suite {report.name}: {verdict} ({len(report.checks)} checks)")
            for check in report.checks:
                status = "pass" if check.passed else "FAIL"
                print(f"  {check.name:<40} {check.value:>12.4g}  {_format_gate(check):>12}  {status}")
        failed = failed or not report.passed
    if args.format == "human":
        print("overall:", "FAIL" if failed else "PASS")
    return 1 if failed else 0


# -------------------------------------------------------------- transform

def _frame_for(record: Record, override: str | None) -> str:
    frame = override or record.basis
    if frame not in ("O", "P"):
        raise KindMismatch(
            f"kind {record.kind!r} needs a frame: set a basis header or pass --basis"
        )
    return frame


def _kappa_for(record: Record, override: float | None) -> float:
    if override is not None:
        return override
    if record.kappa is not None:
        return record.kappa
    return 1.0


def _transform_record(record: Record, t, basis_override, kappa_override) -> Record:
    kappa = _kappa_for(record, kappa_override)
    if record.kind in ("five_vector", "five_form"):
        frame = _frame_for(record, basis_override)
        obj = (FiveVector if record.kind == "five_vector" else FiveForm)(record.payload)
        moved = transform_orthonormal(obj, t) if frame == "O" else transform_parallel(obj, t, kappa)
        return Record(record.kind, moved.components, basis=frame, kappa=record.kappa)
    if record.kind == "five_vector_field":
        frame = _frame_for(record, basis_override)
        out = np.empty_like(record.payload)
        out[..., :4] = np.einsum("ab,...b->...a", t.lam, record.payload[..., :4])
        if frame == "O":
            out[..., 4] = record.payload[..., 4]
        else:
            a_low = algebra.ETA4 @ t.a
            out[..., 4] = record.payload[..., 4] - kappa * np.einsum(
                "a,...a->...", a_low, out[..., :4]
            )
        return Record(record.kind, out, basis=frame, kappa=record.kappa, grid=record.grid)
    if record.kind == "param_tensor":
        moved = transform_param_tensor(ParamTensor(record.payload), t)
        return Record(record.kind, moved.matrix, kappa=record.kappa)
    if record.kind == "generator_tensor":
        moved = transform_generator_tensor(GeneratorTensor(record.payload), t)
        return Record(record.kind, moved.matrix, kappa=record.kappa)
    if record.kind == "theta_field":
        moved = np.einsum("mn,...nb,bt->...mt", t.lam, record.payload, invert(t.lam))
        return Record(record.kind, moved, basis=record.basis, kappa=record.kappa, grid=record.grid)
    if record.kind == "moment_field":
        if record.basis != "P":
            raise KindMismatch(
                "moment_field transforms in the parallel frame; convert to basis P first"
            )
        field = FieldOnGrid(grid=record.grid, values=record.payload, basis="P")
        moved = transform_moment_field(field, t, kappa)
        return Record(record.kind, moved.values, basis="P", kappa=record.kappa, grid=record.grid)
    raise KindMismatch(f"kind {record.kind!r} has no transformation law")


def _cmd_transform(args) -> int:
    record = read_record(args.input)
    t_record = read_record(args.transform)
    if t_record.kind != "poincare_transform":
        raise KindMismatch(
            f"transform file must hold a poincare_transform, got {t_record.kind!r}"
        )
    t = transform_from_payload(t_record.payload)
    out = _transform_record(record, t, args.basis, args.kappa)
    write_record(args.output, out)
    print(f"wrote {args.output}")
    return 0


# ------------------------------------------------------------------ basis

def _wedges_from_record(record: Record) -> list:
    if record.kind == "four_basis_bivectors":
        return [Bivector5(record.payload[i]) for i in range(4)]
    if record.kind == "four_basis_components":
        return [
            algebra.bivector_from_four(
                FourVector(record.payload[i], basis_id="reference"), REFERENCE_BASIS
            )
            for i in range(4)
        ]
    raise KindMismatch(
        "basis construction needs four_basis_bivectors or four_basis_components, "
        f"got {record.kind!r}"
    )


def _cmd_basis(args) -> int:
    record = read_record(args.input)
    wedges = _wedges_from_record(record)
    h = MetricH.reference()
    build = orthonormal_basis_for if args.mode == "orthonormal" else regular_basis_for
    basis = build(wedges, h, negate_direction=args.negate_direction)

    flags = classify_basis(basis, h)
    wedge_resid = 0.0
    for mu in range(4):
        recon = algebra.wedge(
            FiveVector(basis.matrix[:, mu]), FiveVector(basis.matrix[:, 4])
        )
        wedge_resid = max(wedge_resid, max_norm(recon.matrix - wedges[mu].matrix))
    gram = basis.matrix.T @ h.matrix @ basis.matrix
    if args.mode == "orthonormal":
        gram_resid = max_norm(gram - np.diag([1.0, -1.0, -1.0, -1.0, 1.0]))
    else:
        gram_resid = max(abs(gram[4, 4] - 1.0), float(np.max(np.abs(gram[:4, 4]))))

    flag = "O" if args.mode == "orthonormal" else "regular"
    write_record(args.output, Record("basis", basis.matrix, basis=flag))
    print(f"mode: {args.mode}")
    print(
        "flags: standard={} regular={} orthonormal={}".format(
            *("yes" if f else "no" for f in (flags.standard, flags.regular, flags.orthonormal))
        )
    )
    print(f"gram residual: {gram_resid:.3g}")
    print(f"wedge residual: {wedge_resid:.3g}")
    print(f"wrote {args.output}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"verify": _cmd_verify, "transform": _cmd_transform, "basis": _cmd_basis}
    try:
        return handlers[args.command](args)
    except PentavecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
