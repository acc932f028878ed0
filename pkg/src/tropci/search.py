"""Randomized campaigns over g (with f the standard plane): certify each
instance, assemble the curve, run the structural checks, and classify the
skeleton. Reports are deterministic functions of the configuration."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from .curve import (
    components_and_betti,
    count_cells,
    curve_genus,
    expected_counts,
    expected_genus,
    intersection_curve,
    verify_origin_exclusion,
)
from .dual_complex import RAY_DIRECTIONS, ray_intersections
from .errors import TropError
from .quarter_planes import (
    QuarterPlane,
    check_area_half,
    enclosed_cycle_domains,
    faces_closed,
    marked_subcomplex,
    restrict_to_quarter_plane,
    staircase_coefficients_ok,
    staircase_functions,
    staircase_unique_max_ok,
    staircase_ur_relations_ok,
    support_connected,
    u_r_disjoint,
    verify_kprime_shape,
)
from .skeleton import Genus3Class, classify_genus3, skeletonize
from .subdivision import Verdict, certify_smooth_ci
from .trop_core import TropPoly, format_rational, full_support, standard_plane

SCHEMA_VERSION = 1
STYLES = ("integer", "rational", "concave")
SHIFT_SPREAD = 8


@dataclass(frozen=True)
class SearchConfig:
    seed: int
    attempts: int
    degree: int = 4
    bound: int = 30
    style: str = "integer"
    denominator: int = 97
    require: str = "smooth"
    quota: int | None = None

    def __post_init__(self):
        if self.attempts <= 0:
            raise ValueError("attempts must be positive")
        if self.bound <= 0:
            raise ValueError("bound must be positive")
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if self.style not in STYLES:
            raise ValueError(f"style must be one of {STYLES}")
        if self.require not in ("smooth", "weak"):
            raise ValueError("require must be 'smooth' or 'weak'")
        if self.denominator < 1:
            raise ValueError("denominator must be positive")
        n_terms = len(full_support(3, self.degree))
        if self.style == "rational" and self.denominator <= n_terms:
            raise ValueError(f"rational style needs denominator > {n_terms} for distinct perturbations")
        if self.quota is not None and self.quota <= 0:
            raise ValueError("quota must be positive")


def generate_instance(cfg: SearchConfig, offset: int) -> TropPoly:
    """g of full support in degree ``cfg.degree``, seeded by seed + offset.

    integer: uniform integers in [-B, B].
    rational: the same plus distinct perturbations i/k.
    concave: -B * |a|^2 on homogeneous exponents plus uniform noise in [-B, B]
    with denominator k, then a random translation of size up to 8B so V(g)
    meets the plane in varied positions. The quadratic part biases the lift
    toward unimodular triangulations.
    """
    rng = random.Random(cfg.seed + offset)
    support = full_support(3, cfg.degree)
    B, k = cfg.bound, cfg.denominator
    if cfg.style == "integer":
        coefs = [Fraction(rng.randint(-B, B)) for _ in support]
    elif cfg.style == "rational":
        base = [rng.randint(-B, B) for _ in support]
        ticks = rng.sample(range(1, k), len(support))
        coefs = [b + Fraction(i, k) for b, i in zip(base, ticks)]
    else:
        shift = [Fraction(rng.randint(-SHIFT_SPREAD * B * k, SHIFT_SPREAD * B * k), k) for _ in range(3)]
        coefs = []
        for e in support:
            sq = sum(a * a for a in e) + (cfg.degree - sum(e)) ** 2
            noise = Fraction(rng.randint(-B * k, B * k), k)
            coefs.append(-B * sq + noise + sum(a * t for a, t in zip(e, shift)))
    return TropPoly(3, dict(zip(support, coefs)))


def _per_ray_counts(g: TropPoly) -> dict[str, int]:
    return {ray: len(ray_intersections(g, ray).params) for ray in RAY_DIRECTIONS}


def structural_checks(g: TropPoly, curve) -> tuple[dict[str, bool], dict]:
    """Structural checks for a certified instance (f standard plane).

    Returns the pass/fail vector and side data (ray counts, (s, t), interior
    lattice point total)."""
    checks: dict[str, bool] = {}
    info: dict = {}
    m = g.degree
    checks["origin_excluded"] = verify_origin_exclusion(g)
    top = max(g.terms.items(), key=lambda kv: kv[1])[0]
    expected = {"X": top[0], "Y": top[1], "Z": top[2], "W": m - sum(top)}
    counts = _per_ray_counts(g)
    info["ray_counts"] = counts
    checks["ray_counts"] = counts == expected and sum(counts.values()) == m
    on_rays = Counter(lab for lab in curve.labels if lab in RAY_DIRECTIONS)
    checks["curve_matches_ray_traces"] = all(on_rays.get(r, 0) == counts[r] for r in RAY_DIRECTIONS)

    ok = dict.fromkeys(
        ["no_axis_vertices", "kprime_closed_connected", "staircase_monotone_concave",
         "staircase_unique_max", "staircase_ur_relations", "u_r_disjoint", "kprime_shape", "area_half"],
        True,
    )
    interior_total = 0
    for q in QuarterPlane:
        p, _ = restrict_to_quarter_plane(g, q)
        try:
            k = marked_subcomplex(p, m)
        except TropError:
            ok["no_axis_vertices"] = False
            continue
        ok["kprime_closed_connected"] &= (
            faces_closed(k) and support_connected(k) and (0, 0) in k.marked_vertices
        )
        try:
            st = staircase_functions(k)
        except TropError:
            for key in ("staircase_monotone_concave", "staircase_unique_max", "staircase_ur_relations",
                        "u_r_disjoint", "kprime_shape"):
                ok[key] = False
        else:
            ok["staircase_monotone_concave"] &= staircase_coefficients_ok(p, st)
            ok["staircase_unique_max"] &= staircase_unique_max_ok(p, st)
            ok["staircase_ur_relations"] &= staircase_ur_relations_ok(st)
            ok["u_r_disjoint"] &= u_r_disjoint(st, m)
            ok["kprime_shape"] &= verify_kprime_shape(k, st)
        ok["area_half"] &= check_area_half(k)
        interior_total += len(enclosed_cycle_domains(k))
    checks.update(ok)

    topo = components_and_betti(curve)
    info["s"], info["t"], info["interior_points"] = topo.s, topo.t, interior_total
    checks["st_constraint"] = topo.allowed and topo.t == interior_total
    checks["count_formulas"] = count_cells(curve) == expected_counts(curve.d, curve.e)
    try:
        genus = curve_genus(curve)
    except TropError:
        genus = -1
    info["genus"] = genus
    checks["genus"] = genus == expected_genus(curve.d, curve.e)
    checks["trivalent"] = curve.is_trivalent()
    return checks, info


def run_instance(cfg: SearchConfig, offset: int) -> dict:
    g = generate_instance(cfg, offset)
    f = standard_plane()
    rec: dict = {"offset": offset}
    try:
        cert = certify_smooth_ci(f, g)
    except TropError as exc:
        rec.update(verdict="Error", error=f"{type(exc).__name__}: {exc}")
        return rec
    rec["verdict"] = cert.verdict.value
    accepted = cert.verdict is Verdict.SMOOTH or (
        cfg.require == "weak" and cert.verdict is Verdict.WEAKLY_SMOOTH_ONLY
    )
    rec["certified"] = accepted
    if not accepted:
        return rec
    rec["g"] = g.to_json()
    try:
        curve = intersection_curve(f, g, cert)
        checks, info = structural_checks(g, curve)
    except TropError as exc:
        rec["error"] = f"{type(exc).__name__}: {exc}"
        return rec
    skel = skeletonize(curve)
    cls = classify_genus3(skel)
    rec.update(
        counts=list(count_cells(curve)),
        genus=info["genus"],
        s=info["s"],
        t=info["t"],
        interior_points=info["interior_points"],
        ray_counts=info["ray_counts"],
        skeleton=skel.to_json(),
        skeleton_class=cls.value,
        checks=checks,
    )
    return rec


@dataclass
class RunReport:
    config: dict
    records: list[dict]
    aggregate: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "config": self.config,
            "records": self.records,
            "aggregate": self.aggregate,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "RunReport":
        data = json.loads(text)
        return cls(data["config"], data["records"], data["aggregate"], data["schema_version"])


def _aggregate(records: list[dict]) -> dict:
    certified = [r for r in records if r.get("certified")]
    hist = Counter(r.get("skeleton_class", "Error") for r in certified)
    verdicts = Counter(r["verdict"] for r in records)
    failed = [r["offset"] for r in certified if "error" in r or not all(r.get("checks", {}).values())]
    lollipops = [r["offset"] for r in certified if r.get("skeleton_class") == Genus3Class.LOLLIPOP.value]
    return {
        "attempts_run": len(records),
        "certified": len(certified),
        "acceptance_rate": format_rational(Fraction(len(certified), len(records))) if records else "0",
        "verdicts": dict(sorted(verdicts.items())),
        "class_histogram": dict(sorted(hist.items())),
        "lollipop_offsets": lollipops,
        "zero_lollipops": not lollipops,
        "finding": (
            f"FINDING: lollipop skeleton on certified instances at offsets {lollipops}" if lollipops else None
        ),
        "check_failures": failed,
        "all_checks_pass": not failed,
    }


def run_search(cfg: SearchConfig, workers: int = 1, progress: Callable[[dict], None] | None = None) -> RunReport:
    """Run offsets 0..attempts-1, stopping after ``quota`` certified instances.

    With several workers the offsets are processed in batches and merged in
    offset order, so the report does not depend on scheduling."""
    records: list[dict] = []
    n_cert = 0

    def take(rec):
        nonlocal n_cert
        records.append(rec)
        n_cert += bool(rec.get("certified"))
        if progress:
            progress(rec)
        return cfg.quota is not None and n_cert >= cfg.quota

    if workers <= 1:
        for off in range(cfg.attempts):
            if take(run_instance(cfg, off)):
                break
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            batch = 4 * workers
            done = False
            for start in range(0, cfg.attempts, batch):
                offs = list(range(start, min(start + batch, cfg.attempts)))
                for rec in pool.map(run_instance, [cfg] * len(offs), offs):
                    if take(rec):
                        done = True
                        break
                if done:
                    break
    return RunReport(asdict(cfg), records, _aggregate(records))
