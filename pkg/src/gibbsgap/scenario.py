"""Scenario files: load, run, report, and generate.

A scenario is a JSON document (``"schema": 1``) describing one experiment:
a Y-representation, conditioning points, a cost table, a reference
measure, a list of tilt parameters, an X-marginal, named conditional
families, and a list of identity checks (``"pairs"``).  Every check is run
once per tilt parameter, in declaration order, and the outcome is a report
with one record per (check, lambda).

Numeric scenario fields may be JSON numbers or decimal strings
(``"0.1"``); strings go through ordinary round-to-nearest float parsing,
so weights can be stated exactly in decimal.  Family rows and ``p_x`` are
normalized to probabilities at load time; the reference is taken as-is
(sigma-finite references are legitimate).

A check passes when its discrepancy is within tolerance.  A check that
declares ``"expect": "error:Name"`` passes exactly when running it raises
that error — designed-violation scenarios exit 0.  Tolerance defaults to
1e-10 for finite supports and 1e-6 for grids; a per-check ``tolerance``
beats the runner-level override, which beats the default.

Report JSON is schema-stable (``"schema": 1``): records carry the check
name, the identity tag, lambda, direct and closed-form values, the term
table, discrepancy, tolerance and status.  All numbers are serialized with
17 significant digits; non-finite values become the strings ``"inf"``,
``"-inf"``, ``"nan"``.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .errors import GibbsGapError, ScenarioError
from .divergences import kl
from .gaps import (
    expected_gap_closed_form,
    expected_gap_relative,
    gap_closed_form,
    gap_closed_form_relative,
    gap_mixture_reference,
    gibbs_marginal_gap,
    marginal_gap,
)
from .gibbs import (
    CostTable,
    free_energy_identities,
    gibbs_tilt,
    log_partition,
    variational_oracle,
)
from .measures import (
    ConditionalFamily,
    FiniteMeasure,
    GridDensity,
    Measure,
    atom_masses,
    counting_measure,
    expectation,
    lebesgue_grid,
    make_finite_measure,
    make_grid_density,
)

__all__ = [
    "Scenario",
    "Check",
    "load_scenario",
    "run_scenario",
    "run_scenario_file",
    "render_text",
    "render_json",
    "generate_scenarios",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1

#: Default check tolerances by Y-representation.
DEFAULT_TOL_FINITE = 1e-10
DEFAULT_TOL_GRID = 1e-6

_IDENTITY_TAGS = {
    "gap_closed_form": "gap-common-reference",
    "gap_closed_form_relative": "gap-relative-reference",
    "gap_mixture_reference": "gap-mixture-reference",
    "expected_gap_closed_form": "expected-gap-common-reference",
    "expected_gap_relative": "expected-gap-relative-reference",
    "marginal_gap": "marginal-gap-information",
    "gibbs_marginal_gap": "gibbs-marginal-gap",
    "free_energy_identities": "free-energy",
    "variational_oracle": "variational-optimum",
}


@dataclass(frozen=True)
class Check:
    """One identity check: an operation name plus its scenario arguments."""

    op: str
    params: dict[str, Any]
    tolerance: Optional[float] = None
    expect_error: Optional[str] = None
    label: Optional[str] = None


@dataclass(frozen=True)
class Scenario:
    """A fully constructed scenario, ready to run."""

    name: str
    cost: CostTable
    reference: Measure
    lambdas: tuple[float, ...]
    p_x: FiniteMeasure
    families: dict[str, ConditionalFamily]
    checks: tuple[Check, ...]
    is_grid: bool


# ---------------------------------------------------------------------------
# loading


def _num(value, where: str) -> float:
    """Accept JSON numbers or decimal strings; reject everything else."""
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ScenarioError(f"{where}: expected a number, got {value!r}")
    try:
        return float(value)
    except ValueError:
        raise ScenarioError(f"{where}: cannot parse {value!r} as a number") from None


def _num_list(values, where: str) -> list[float]:
    if not isinstance(values, list) or not values:
        raise ScenarioError(f"{where}: expected a non-empty list of numbers")
    return [_num(v, f"{where}[{i}]") for i, v in enumerate(values)]


def _num_matrix(values, where: str) -> list[list[float]]:
    if not isinstance(values, list) or not values:
        raise ScenarioError(f"{where}: expected a non-empty list of rows")
    return [_num_list(row, f"{where}[{i}]") for i, row in enumerate(values)]


def _points(values, where: str) -> list[list[float]]:
    """Points may be scalars or coordinate lists; normalize to vectors."""
    if not isinstance(values, list) or not values:
        raise ScenarioError(f"{where}: expected a non-empty list of points")
    out = []
    for i, v in enumerate(values):
        if isinstance(v, list):
            out.append(_num_list(v, f"{where}[{i}]"))
        else:
            out.append([_num(v, f"{where}[{i}]")])
    return out


def load_scenario(path) -> Scenario:
    """Parse and validate a scenario file.

    Raises :class:`~gibbsgap.errors.ScenarioError` for anything wrong with
    the input — JSON syntax, schema shape, or measure construction — so the
    caller can map every input problem to exit code 2.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ScenarioError(f"cannot read {path}: {e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: top level must be an object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise ScenarioError(f"{path}: unsupported schema {doc.get('schema')!r} (want {SCHEMA_VERSION})")
    try:
        return _build_scenario(doc)
    except ScenarioError:
        raise
    except GibbsGapError as e:
        raise ScenarioError(f"{path}: {type(e).__name__}: {e}") from e
    except (KeyError, TypeError, ValueError) as e:
        raise ScenarioError(f"{path}: malformed scenario: {e}") from e


def _build_scenario(doc: dict) -> Scenario:
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise ScenarioError("scenario needs a non-empty string 'name'")

    has_support = "y_support" in doc
    has_grid = "y_grid" in doc
    if has_support == has_grid:
        raise ScenarioError("exactly one of 'y_support' / 'y_grid' must be present")

    x_points = _points(doc["x_points"], "x_points") if "x_points" in doc else None
    if x_points is None:
        raise ScenarioError("scenario needs 'x_points'")
    cost_rows = _num_matrix(doc["cost"], "cost") if "cost" in doc else None
    if cost_rows is None:
        raise ScenarioError("scenario needs 'cost'")

    if has_support:
        y_support = _points(doc["y_support"], "y_support")
        n_y = len(y_support)
        cost = CostTable.on_support(x_points, y_support, cost_rows)

        def member(row, where):
            if len(row) != n_y:
                raise ScenarioError(f"{where}: {len(row)} weights for {n_y} support points")
            return make_finite_measure(y_support, row, normalize=True)

        def reference_from(raw):
            if raw == "counting":
                return counting_measure(y_support)
            if raw == "lebesgue":
                raise ScenarioError("'lebesgue' reference requires a 'y_grid' scenario")
            vals = _num_list(raw, "reference")
            if len(vals) != n_y:
                raise ScenarioError(f"reference: {len(vals)} weights for {n_y} support points")
            return make_finite_measure(y_support, vals)

    else:
        g = doc["y_grid"]
        if not isinstance(g, dict):
            raise ScenarioError("'y_grid' must be an object with lo/hi/n_cells")
        lo = _num(g.get("lo"), "y_grid.lo")
        hi = _num(g.get("hi"), "y_grid.hi")
        n_y = g.get("n_cells")
        if not isinstance(n_y, int) or n_y < 1:
            raise ScenarioError("y_grid.n_cells must be a positive integer")
        cost = CostTable.on_grid(x_points, lo, hi, n_y, cost_rows)

        def member(row, where):
            if len(row) != n_y:
                raise ScenarioError(f"{where}: {len(row)} values for {n_y} cells")
            return make_grid_density(lo, hi, row, normalize=True)

        def reference_from(raw):
            if raw == "lebesgue":
                return lebesgue_grid(lo, hi, n_y)
            if raw == "counting":
                raise ScenarioError("'counting' reference requires a 'y_support' scenario")
            vals = _num_list(raw, "reference")
            if len(vals) != n_y:
                raise ScenarioError(f"reference: {len(vals)} values for {n_y} cells")
            return make_grid_density(lo, hi, vals)

    if "reference" not in doc:
        raise ScenarioError("scenario needs 'reference'")
    reference = reference_from(doc["reference"])

    lambdas = tuple(_num_list(doc.get("lambdas"), "lambdas"))
    for i, lam in enumerate(lambdas):
        if not math.isfinite(lam) or abs(lam) < 1e-12:
            raise ScenarioError(f"lambdas[{i}]: tilt parameters must satisfy |lam| >= 1e-12")

    p_x_vals = _num_list(doc.get("p_x"), "p_x")
    if len(p_x_vals) != len(x_points):
        raise ScenarioError(f"p_x: {len(p_x_vals)} weights for {len(x_points)} x points")
    p_x = make_finite_measure(x_points, p_x_vals, normalize=True)

    families_doc = doc.get("families", {})
    if not isinstance(families_doc, dict):
        raise ScenarioError("'families' must be an object of name -> rows")
    families: dict[str, ConditionalFamily] = {}
    for fam_name, rows in families_doc.items():
        rows = _num_matrix(rows, f"families.{fam_name}")
        if len(rows) != len(x_points):
            raise ScenarioError(
                f"families.{fam_name}: {len(rows)} rows for {len(x_points)} x points"
            )
        members = tuple(
            member(row, f"families.{fam_name}[{k}]") for k, row in enumerate(rows)
        )
        families[fam_name] = ConditionalFamily(x_points=x_points, members=members)

    checks_doc = doc.get("pairs")
    if not isinstance(checks_doc, list) or not checks_doc:
        raise ScenarioError("scenario needs a non-empty 'pairs' list of checks")
    checks = tuple(_parse_check(c, i, families) for i, c in enumerate(checks_doc))

    return Scenario(
        name=name,
        cost=cost,
        reference=reference,
        lambdas=lambdas,
        p_x=p_x,
        families=families,
        checks=checks,
        is_grid=not has_support,
    )


_CHECK_KEYS = {
    "op", "name", "tolerance", "expect",
    "x_index", "p1", "p2", "direction", "alpha",
    "family", "family1", "family2", "iters", "seed",
}


def _parse_check(c, index: int, families: dict) -> Check:
    where = f"pairs[{index}]"
    if not isinstance(c, dict):
        raise ScenarioError(f"{where}: each check must be an object")
    op = c.get("op")
    if op not in _IDENTITY_TAGS:
        raise ScenarioError(f"{where}: unknown op {op!r}")
    unknown = set(c) - _CHECK_KEYS
    if unknown:
        raise ScenarioError(f"{where}: unknown keys {sorted(unknown)}")
    for key in ("p1", "p2", "family", "family1", "family2"):
        if key in c and c[key] not in families:
            raise ScenarioError(f"{where}: unknown family {c[key]!r} in '{key}'")
    expect = None
    if "expect" in c:
        raw = c["expect"]
        if not (isinstance(raw, str) and raw.startswith("error:") and len(raw) > 6):
            raise ScenarioError(f"{where}: 'expect' must look like 'error:ErrorName'")
        expect = raw[len("error:"):]
    tolerance = None
    if "tolerance" in c:
        tolerance = _num(c["tolerance"], f"{where}.tolerance")
        if not tolerance > 0:
            raise ScenarioError(f"{where}: tolerance must be positive")
    params = {k: c[k] for k in c if k not in ("op", "name", "tolerance", "expect")}
    label = c.get("name")
    if label is not None and not isinstance(label, str):
        raise ScenarioError(f"{where}: 'name' must be a string")
    return Check(op=op, params=params, tolerance=tolerance, expect_error=expect, label=label)


# ---------------------------------------------------------------------------
# running


def _member_at(scn: Scenario, fam: str, x_index: int) -> Measure:
    return scn.families[fam][x_index]


def _run_op(scn: Scenario, check: Check, lam: float) -> dict[str, Any]:
    """Execute one op; return direct/closed_form/discrepancy/terms."""
    p = check.params
    op = check.op

    def x_index() -> int:
        xi = p.get("x_index", 0)
        if not isinstance(xi, int) or not (0 <= xi < scn.cost.n_x):
            raise ScenarioError(f"x_index {xi!r} out of range for {scn.cost.n_x} points")
        return xi

    if op == "gap_closed_form":
        dec = gap_closed_form(
            scn.cost, x_index(),
            _member_at(scn, p["p1"], x_index()), _member_at(scn, p["p2"], x_index()),
            scn.reference, lam,
        )
    elif op == "gap_closed_form_relative":
        dec = gap_closed_form_relative(
            scn.cost, x_index(),
            _member_at(scn, p["p1"], x_index()), _member_at(scn, p["p2"], x_index()),
            p.get("direction", "P2-ref"), lam,
        )
    elif op == "gap_mixture_reference":
        dec = gap_mixture_reference(
            scn.cost, x_index(),
            _member_at(scn, p["p1"], x_index()), _member_at(scn, p["p2"], x_index()),
            _num(p.get("alpha", 0.5), "alpha"), lam,
        )
    elif op == "expected_gap_closed_form":
        dec = expected_gap_closed_form(
            scn.cost, scn.families[p["family1"]], scn.families[p["family2"]],
            scn.p_x, scn.reference, lam,
        )
    elif op == "expected_gap_relative":
        dec = expected_gap_relative(
            scn.cost, scn.families[p["family1"]], scn.families[p["family2"]],
            scn.p_x, p.get("direction", "P2-ref"), lam,
        )
    elif op == "marginal_gap":
        dec = marginal_gap(scn.cost, scn.families[p["family"]], scn.p_x, scn.reference, lam)
    elif op == "gibbs_marginal_gap":
        dec = gibbs_marginal_gap(scn.cost, scn.reference, lam, scn.p_x)
    elif op == "free_energy_identities":
        xi = x_index()
        g = gibbs_tilt(scn.cost, scn.reference, lam, xi)
        split = free_energy_identities(g, scn.cost, scn.reference, xi)
        terms = {"via_gibbs": split.via_gibbs, "log_partition": g.log_partition}
        if split.via_reference is not None:
            terms["via_reference"] = split.via_reference
        return {
            "direct": split.free_energy,
            "closed_form": split.via_gibbs,
            "discrepancy": split.max_discrepancy,
            "terms": terms,
            "note": "reference side skipped (non-probability reference)"
            if split.reference_skipped else None,
        }
    elif op == "variational_oracle":
        xi = x_index()
        iters = p.get("iters", 800)
        seed = p.get("seed", 0)
        if not isinstance(iters, int) or iters < 1:
            raise ScenarioError(f"iters must be a positive integer, got {iters!r}")
        if not isinstance(seed, int):
            raise ScenarioError(f"seed must be an integer, got {seed!r}")
        opt = variational_oracle(scn.cost, scn.reference, lam, xi, iters=iters, seed=seed)
        free_energy = -log_partition(scn.cost, scn.reference, xi, -lam) / lam
        objective = expectation(scn.cost.row(xi), opt) + kl(opt, scn.reference) / lam
        g = gibbs_tilt(scn.cost, scn.reference, lam, xi).measure
        tv = 0.5 * float(np.abs(atom_masses(opt) - atom_masses(g)).sum())
        return {
            "direct": objective,
            "closed_form": free_energy,
            "discrepancy": abs(objective - free_energy),
            "terms": {"objective": objective, "total_variation": tv},
            "note": None,
        }
    else:  # unreachable: op validated at load time
        raise ScenarioError(f"unknown op {op!r}")

    return {
        "direct": dec.direct,
        "closed_form": dec.closed_form,
        "discrepancy": dec.discrepancy,
        "terms": dict(dec.terms),
        "note": None,
    }


def _default_label(check: Check) -> str:
    parts = [
        f"{k}={v}" for k, v in check.params.items()
        if k in ("x_index", "p1", "p2", "direction", "alpha", "family", "family1", "family2")
    ]
    return f"{check.op}({', '.join(parts)})" if parts else check.op


def run_scenario(scn: Scenario, tolerance: Optional[float] = None) -> dict[str, Any]:
    """Run every (check, lambda) pair; return the report as a plain dict."""
    t0 = time.perf_counter()
    records = []
    n_pass = 0
    for check in scn.checks:
        tol = check.tolerance if check.tolerance is not None else (
            tolerance if tolerance is not None else
            (DEFAULT_TOL_GRID if scn.is_grid else DEFAULT_TOL_FINITE)
        )
        label = check.label or _default_label(check)
        for lam in scn.lambdas:
            rec: dict[str, Any] = {
                "check": label,
                "identity": _IDENTITY_TAGS[check.op],
                "lambda": lam,
                "tolerance": tol,
                "direct": None,
                "closed_form": None,
                "discrepancy": None,
                "terms": {},
                "error": None,
                "note": None,
            }
            try:
                out = _run_op(scn, check, lam)
            except ScenarioError:
                raise  # bad check arguments are input errors, not check outcomes
            except GibbsGapError as e:
                err_name = type(e).__name__
                rec["error"] = err_name
                rec["note"] = str(e)
                if check.expect_error is not None:
                    if err_name == check.expect_error:
                        rec["status"] = "expected-error"
                    else:
                        rec["status"] = "fail"
                        rec["note"] = (
                            f"expected {check.expect_error}, got {err_name}: {e}"
                        )
                else:
                    rec["status"] = "unexpected-error"
            else:
                rec.update(out)
                if check.expect_error is not None:
                    rec["status"] = "fail"
                    rec["note"] = f"expected {check.expect_error}, but no error was raised"
                elif rec["discrepancy"] <= tol:
                    rec["status"] = "pass"
                else:
                    rec["status"] = "fail"
            if rec["status"] in ("pass", "expected-error"):
                n_pass += 1
            records.append(rec)
    total = len(records)
    return {
        "schema": SCHEMA_VERSION,
        "scenario": scn.name,
        "records": records,
        "summary": {"total": total, "passed": n_pass, "failed": total - n_pass},
        "wall_time_s": time.perf_counter() - t0,
    }


def run_scenario_file(path, tolerance: Optional[float] = None) -> tuple[dict[str, Any], int]:
    """Load + run; return ``(report, exit_code)`` with 0 pass / 1 fail.

    Input problems raise :class:`ScenarioError`; the CLI maps those to
    exit code 2.
    """
    report = run_scenario(load_scenario(path), tolerance=tolerance)
    return report, (0 if report["summary"]["failed"] == 0 else 1)


# ---------------------------------------------------------------------------
# rendering


def _fmt17(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _to_json(value, indent: int) -> str:
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(k))}: {_to_json(v, indent + 2)}"
            for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{inner}{_to_json(v, indent + 2)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, float):
        return _fmt17(value)
    if isinstance(value, int):
        return str(value)
    return json.dumps(value)


def render_json(report: dict[str, Any]) -> str:
    """Serialize a report with 17-significant-digit numbers."""
    return _to_json(report, 0) + "\n"


def render_text(report: dict[str, Any]) -> str:
    """Human-readable report: one block per record plus a summary line."""
    lines = [f"scenario: {report['scenario']}"]
    for rec in report["records"]:
        status = rec["status"].upper()
        lines.append(
            f"[{status:>16}] {rec['check']}  lambda={rec['lambda']:g}  "
            f"identity={rec['identity']}"
        )
        if rec["error"] is not None:
            lines.append(f"{'':18} error={rec['error']}: {rec['note']}")
        elif rec["direct"] is not None:
            lines.append(
                f"{'':18} direct={rec['direct']:.17g}  closed={rec['closed_form']:.17g}"
            )
            lines.append(
                f"{'':18} discrepancy={rec['discrepancy']:.3e}  tolerance={rec['tolerance']:g}"
            )
            for k, v in rec["terms"].items():
                lines.append(f"{'':22} {k} = {v:.17g}")
            if rec["note"]:
                lines.append(f"{'':18} note: {rec['note']}")
    s = report["summary"]
    lines.append(
        f"summary: {s['passed']}/{s['total']} passed, {s['failed']} failed "
        f"({report['wall_time_s']:.3f}s)"
    )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# generation


_GENERATE_LAMBDAS = (0.5, -0.5, 1.0, -1.0, 2.0, -2.0)


def generate_scenarios(seed: int, nx: int, ny: int, count: int, out_dir) -> list[Path]:
    """Write ``count`` random scenario files; byte-identical per seed.

    Costs are uniform on [-1, 1], tilt parameters are drawn from
    ``{±0.5, ±1, ±2}``, and all weights are strictly positive so every
    absolute-continuity hypothesis holds and every check is expected to
    pass.  A single ``random.Random(seed)`` drives everything, so equal
    arguments reproduce equal bytes.
    """
    if nx < 1 or ny < 1 or count < 1:
        raise ValueError("nx, ny and count must all be >= 1")
    rng = random.Random(seed)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for i in range(count):
        doc = _generate_one(rng, f"generated-{seed}-{i:03d}", nx, ny)
        path = out_dir / f"scenario-{seed:04d}-{i:03d}.json"
        path.write_text(json.dumps(doc, indent=2) + "\n")
        paths.append(path)
    return paths


def _positive_row(rng: random.Random, n: int, normalize: bool) -> list[float]:
    row = [rng.uniform(0.05, 1.0) for _ in range(n)]
    if normalize:
        total = math.fsum(row)
        row = [w / total for w in row]
    return row


def _generate_one(rng: random.Random, name: str, nx: int, ny: int) -> dict[str, Any]:
    reference_kind = rng.choice(("counting", "sigma-finite", "probability"))
    if reference_kind == "counting":
        reference: Any = "counting"
    else:
        reference = _positive_row(rng, ny, normalize=reference_kind == "probability")
    lambdas = rng.sample(_GENERATE_LAMBDAS, k=min(2, len(_GENERATE_LAMBDAS)))
    doc: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "name": name,
        "y_support": [[float(j)] for j in range(ny)],
        "x_points": [[float(j)] for j in range(nx)],
        "cost": [[rng.uniform(-1.0, 1.0) for _ in range(ny)] for _ in range(nx)],
        "reference": reference,
        "lambdas": lambdas,
        "p_x": _positive_row(rng, nx, normalize=True),
        "families": {
            "f1": [_positive_row(rng, ny, normalize=True) for _ in range(nx)],
            "f2": [_positive_row(rng, ny, normalize=True) for _ in range(nx)],
        },
        "pairs": [
            {"op": "free_energy_identities", "x_index": rng.randrange(nx)},
            {
                "op": "variational_oracle",
                "x_index": rng.randrange(nx),
                "iters": 800,
                "seed": rng.randrange(2**31),
            },
            {"op": "gap_closed_form", "x_index": rng.randrange(nx), "p1": "f1", "p2": "f2"},
            {
                "op": "gap_closed_form_relative",
                "x_index": rng.randrange(nx),
                "p1": "f1",
                "p2": "f2",
                "direction": "P2-ref",
            },
            {
                "op": "gap_closed_form_relative",
                "x_index": rng.randrange(nx),
                "p1": "f1",
                "p2": "f2",
                "direction": "P1-ref",
            },
            {
                "op": "gap_mixture_reference",
                "x_index": rng.randrange(nx),
                "p1": "f1",
                "p2": "f2",
                "alpha": rng.choice((0.25, 0.5, 0.75)),
            },
            {"op": "expected_gap_closed_form", "family1": "f1", "family2": "f2"},
            {
                "op": "expected_gap_relative",
                "family1": "f1",
                "family2": "f2",
                "direction": rng.choice(("P2-ref", "P1-ref")),
            },
            {"op": "marginal_gap", "family": "f1"},
            {"op": "gibbs_marginal_gap"},
        ],
    }
    return doc
