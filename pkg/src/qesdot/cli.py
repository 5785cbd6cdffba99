"""Command-line interface: ``qesdot {solve,table,verify,scan,constants}``.

Exit codes: 0 success, 1 verification failure, 2 no QES field, 3 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import units
from .algebra import eta_values
from .oracle import ConvergenceFailure, OracleConfig, solve_radial, verify_radial
from .spectrum import TABLE_CALIBRATION, NoQesField, QesSolution, qes_points, table_point
from .units import MaterialParams, derive_scales, material, tesla_to_cyclotron

EXIT_OK, EXIT_VERIFY, EXIT_NO_FIELD, EXIT_INPUT = 0, 1, 2, 3
VERIFY_TOL = 1e-5


class InvalidInput(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    material: str | tuple[float, float] = "gaas"
    omega0_meV: float = 4.0
    mode: str = "physical"
    output_format: str = "csv"
    jmax: int = 5
    mmax: int = 2

    def params(self) -> MaterialParams:
        try:
            if isinstance(self.material, str):
                return material(self.material, self.omega0_meV)
            return MaterialParams(*self.material, self.omega0_meV)
        except ValueError as exc:
            raise InvalidInput(str(exc)) from None


# -- config -------------------------------------------------------------------

_CONFIG_KEYS = {"material", "omega0_mev", "mode", "mstar", "epsilon", "format", "jmax", "mmax"}


def read_config_file(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInput(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise InvalidInput(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Defaults < config file < command-line flags."""
    file_vals = read_config_file(args.config) if args.config else {}

    def pick(flag, key, cast):
        if flag is not None:
            return flag
        if key in file_vals:
            try:
                return cast(file_vals[key])
            except ValueError:
                raise InvalidInput(f"bad value for {key}: {file_vals[key]!r}") from None
        return None

    mstar = pick(args.mstar, "mstar", float)
    eps = pick(args.epsilon, "epsilon", float)
    name = pick(args.material, "material", str)
    if (mstar is None) != (eps is None):
        raise InvalidInput("--mstar and --epsilon must be given together")
    mat: str | tuple[float, float] = (mstar, eps) if mstar is not None else (name or "gaas")

    cfg = RunConfig(
        material=mat,
        omega0_meV=_or(pick(args.omega0_mev, "omega0_mev", float), RunConfig.omega0_meV),
        mode=_or(pick(args.mode, "mode", str), RunConfig.mode),
        output_format=_or(pick(args.format, "format", str), RunConfig.output_format),
        jmax=_or(pick(args.jmax, "jmax", int), RunConfig.jmax),
        mmax=_or(pick(args.mmax, "mmax", int), RunConfig.mmax),
    )
    if cfg.mode not in ("physical", "paper"):
        raise InvalidInput(f"mode must be physical or paper, got {cfg.mode!r}")
    if cfg.output_format not in ("csv", "json"):
        raise InvalidInput(f"format must be csv or json, got {cfg.output_format!r}")
    if cfg.jmax < 1 or cfg.mmax < 0:
        raise InvalidInput("jmax must be >= 1 and mmax >= 0")
    if cfg.mode == "physical":
        cfg.params()  # validates the material
    return cfg


def _or(value, default):
    return default if value is None else value


# -- rendering ----------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".6g")
    if isinstance(value, (list, tuple)):
        return " ".join(_fmt(v) for v in value)
    return str(value)


def render(rows: list[dict], fmt: str, columns: list[str] | None = None) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if columns is None:
        columns = list(rows[0]) if rows else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def parse_json_solutions(text: str) -> list[QesSolution]:
    return [QesSolution.from_dict(d) for d in json.loads(text) if d.get("status") == "ok"]


SOLVE_COLUMNS = [
    "j", "m", "n_r", "status", "eta", "omega_ha", "omega_c_ha", "e_r_ha",
    "omega_mev", "omega_c_mev", "e_r_mev", "b_tesla", "dot_size_nm", "coeffs",
]
TABLE_SOLVE_COLUMNS = ["j", "m", "n_r", "status", "eta", "omega", "omega_c", "e_r"]


def _no_field_row(exc: NoQesField) -> dict:
    return {
        "j": exc.j, "m": exc.m, "n_r": exc.n_r, "status": "no-qes-field",
        "eta": exc.eta, "omega": exc.omega, "omega0": exc.omega0,
    }


def solve_rows(j: int, m: int, cfg: RunConfig) -> list[dict]:
    rows = []
    if cfg.mode == "paper":
        for branch in eta_values(j, abs(m)):
            try:
                row = asdict(table_point(j, m, branch.n_r))
                row["status"] = "ok"
            except NoQesField as exc:
                row = _no_field_row(exc)
            rows.append(row)
        return rows
    for item in qes_points(j, m, cfg.params()):
        if isinstance(item, NoQesField):
            row = _no_field_row(item)
            row["omega_ha"] = row.pop("omega")
            row["omega0_ha"] = row.pop("omega0")
        else:
            row = {"status": "ok", **item.to_dict()}
        rows.append(row)
    return rows


# -- commands -----------------------------------------------------------------


def _check_j(j: int) -> None:
    if j is None or j < 1:
        raise InvalidInput(f"-j must be >= 1, got {j}")


def cmd_solve(j: int, m: int, cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    _check_j(j)
    rows = solve_rows(j, m, cfg)
    cols = TABLE_SOLVE_COLUMNS if cfg.mode == "paper" else SOLVE_COLUMNS
    out.write(render(rows, cfg.output_format, cols))
    return EXIT_OK if any(r["status"] == "ok" for r in rows) else EXIT_NO_FIELD


TABLE_COLUMNS = ["j", "m", "n_r", "omega_c", "e_r"]


def table_rows(cfg: RunConfig) -> list[dict]:
    """All branches j <= jmax, 0 <= m <= mmax, in table units or meV."""
    rows = []
    for j in range(1, cfg.jmax + 1):
        for m in range(cfg.mmax + 1):
            for row in solve_rows(j, m, cfg):
                if cfg.mode == "physical" and row["status"] == "ok":
                    row["omega_c"] = row["omega_c_mev"]
                    row["e_r"] = row["e_r_mev"]
                rows.append(row)
    return rows


def cmd_table(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    rows = table_rows(cfg)
    if cfg.output_format == "json":
        out.write(render(rows, "json"))
    else:
        cols = TABLE_COLUMNS if cfg.mode == "paper" else TABLE_COLUMNS + ["status", "b_tesla"]
        out.write(render(rows, "csv", cols))
    return EXIT_OK if any(r["status"] == "ok" for r in rows) else EXIT_NO_FIELD


VERIFY_COLUMNS = [
    "j", "m", "n_r", "eta", "omega_ha", "predicted", "oracle", "abs_diff",
    "index", "richardson_error", "field_status", "result",
]


def verify_rows(j: int, m: int, cfg: RunConfig, oracle: OracleConfig = OracleConfig()) -> list[dict]:
    # the radial identity holds at any QES frequency; field feasibility is reported alongside
    feasible = {}
    if cfg.mode == "physical":
        for item in qes_points(j, m, cfg.params()):
            feasible[item.n_r] = "no-qes-field" if isinstance(item, NoQesField) else "ok"
    rows = []
    for branch in eta_values(j, abs(m)):
        omega = 1.0 / (2.0 * branch.value)
        rep = verify_radial(j, m, branch.n_r, omega, oracle)
        rows.append({
            "j": j, "m": m, "n_r": branch.n_r, "eta": branch.value, "omega_ha": omega,
            **asdict(rep),
            "field_status": feasible.get(branch.n_r, "n/a"),
            "result": "PASS" if rep.abs_diff <= VERIFY_TOL else "FAIL",
        })
    return rows


def cmd_verify(j: int, m: int, cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    _check_j(j)
    rows = verify_rows(j, m, cfg)
    out.write(render(rows, cfg.output_format, VERIFY_COLUMNS))
    return EXIT_OK if all(r["result"] == "PASS" for r in rows) else EXIT_VERIFY


def scan_rows(j: int, m: int, b_min: float, b_max: float, b_steps: int, cfg: RunConfig,
              n_states: int = 4) -> list[dict]:
    if cfg.mode != "physical":
        raise InvalidInput("scan runs in physical mode only")
    if b_steps < 0 or b_min < 0:
        raise InvalidInput("b-steps and b-min must be nonnegative")
    params = cfg.params()
    scales = derive_scales(params)
    if b_steps == 0 or b_min > b_max:
        return []
    fields = [b_min] if b_steps == 1 else [b_min + (b_max - b_min) * i / (b_steps - 1) for i in range(b_steps)]
    step = (b_max - b_min) / (b_steps - 1) if b_steps > 1 else 0.0

    # flag the row nearest to every QES field inside the scanned range
    markers: dict[int, int] = {}
    for item in qes_points(j, m, params):
        if isinstance(item, NoQesField):
            continue
        i = min(range(len(fields)), key=lambda k: abs(fields[k] - item.b_tesla))
        if abs(fields[i] - item.b_tesla) <= step / 2 * (1 + 1e-12) or math.isclose(fields[i], item.b_tesla):
            markers[i] = item.n_r

    oracle = OracleConfig(n_states=n_states)
    rows = []
    for i, b in enumerate(fields):
        omega_c = tesla_to_cyclotron(b, params) / scales.hartree_meV
        omega = math.hypot(scales.omega0_ha, omega_c / 2)
        row = {
            "b_tesla": b,
            "omega_mev": omega * scales.hartree_meV,
            "omega_c_mev": omega_c * scales.hartree_meV,
        }
        eps = solve_radial(m, omega, oracle).eigenvalues if omega > 0 else [None] * n_states
        for n, e in enumerate(eps):
            row[f"eps_{n}_mev"] = None if e is None else e * scales.hartree_meV
        row["qes"] = i in markers
        row["qes_n_r"] = markers.get(i)
        rows.append(row)
    return rows


def cmd_scan(j: int, m: int, b_min: float, b_max: float, b_steps: int, cfg: RunConfig,
             out=None) -> int:
    out = out or sys.stdout
    _check_j(j)
    rows = scan_rows(j, m, b_min, b_max, b_steps, cfg)
    n_states = 4
    cols = ["b_tesla", "omega_mev", "omega_c_mev"] + [f"eps_{n}_mev" for n in range(n_states)] + ["qes", "qes_n_r"]
    out.write(render(rows, cfg.output_format, cols))
    return EXIT_OK


def constants_rows() -> list[dict]:
    cal = TABLE_CALIBRATION
    return [
        {"name": "hartree_mev", "value": units.HARTREE_MEV, "source": "CODATA 2018"},
        {"name": "bohr_nm", "value": units.BOHR_NM, "source": "CODATA 2018"},
        {"name": "hbar_ev_s", "value": units.HBAR_EV_S, "source": "CODATA 2018"},
        {"name": "e_over_m0", "value": units.E_OVER_M0, "source": "CODATA 2018"},
        {"name": "hbar_e_over_m0_mev_per_t", "value": units.HBAR_E_OVER_M0_MEV_PER_T, "source": "derived"},
        {"name": "table_lambda_sq", "value": cal.lambda_sq, "source": cal.provenance},
        {"name": "table_omega0", "value": cal.omega0, "source": "published table confinement, table units"},
    ]


def cmd_constants(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    rows = constants_rows()
    if cfg.output_format == "csv":
        # full precision here; these are the inputs everything else is built from
        rows = [{**r, "value": repr(r["value"])} for r in rows]
    out.write(render(rows, cfg.output_format, ["name", "value", "source"]))
    return EXIT_OK


# -- entry point --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--material", help="preset name (gaas)")
    common.add_argument("--mstar", type=float, help="effective mass ratio m*/m0")
    common.add_argument("--epsilon", type=float, help="dielectric constant")
    common.add_argument("--omega0-mev", dest="omega0_mev", type=float, help="confinement energy in meV")
    common.add_argument("--mode", choices=["physical", "paper"])
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--jmax", type=int)
    common.add_argument("--mmax", type=int)

    jm = _Parser(add_help=False)
    jm.add_argument("-j", type=int, required=True)
    jm.add_argument("-m", type=int, default=0)

    parser = _Parser(prog="qesdot", description="Quasi-exact spectra of two electrons in a quantum dot.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("solve", parents=[common, jm], help="QES points for one (j, m)")
    sub.add_parser("table", parents=[common], help="all QES points up to jmax, mmax")
    sub.add_parser("verify", parents=[common, jm], help="check QES energies against the oracle")
    scan = sub.add_parser("scan", parents=[common, jm], help="oracle spectrum over a field range")
    scan.add_argument("--b-min", dest="b_min", type=float, default=0.0)
    scan.add_argument("--b-max", dest="b_max", type=float, default=10.0)
    scan.add_argument("--b-steps", dest="b_steps", type=int, default=101)
    sub.add_parser("constants", parents=[common], help="physical constants and calibration")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse reports bad flags this way
        return int(exc.code or 0)
    try:
        cfg = build_run_config(args)
        if args.command == "solve":
            return cmd_solve(args.j, args.m, cfg, out)
        if args.command == "table":
            return cmd_table(cfg, out)
        if args.command == "verify":
            return cmd_verify(args.j, args.m, cfg, out)
        if args.command == "scan":
            return cmd_scan(args.j, args.m, args.b_min, args.b_max, args.b_steps, cfg, out)
        return cmd_constants(cfg, out)
    except (InvalidInput, ValueError) as exc:
        print(f"qesdot: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConvergenceFailure as exc:
        print(f"qesdot: oracle did not converge: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
