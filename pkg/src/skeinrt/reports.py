"""Suite runner and deterministic JSON reports."""
from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

import jsonschema

from .cyclotomic import CycloElement, ctx_new
from .recoupling import FORMULA_VERSION, cache_dir

SCHEMA_VERSION = 1
TIMING_KEYS = ("seconds", "elapsed_ms", "timing")

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "kind", "payload"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"type": "string"},
        "payload": {},
        "timing": {"type": "object"},
    },
}

SUITE_SCHEMA = {
    "type": "object",
    "required": ["checks", "passed"],
    "properties": {
        "passed": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "anchor", "status", "mode", "witness"],
                "properties": {
                    "id": {"type": "string"},
                    "anchor": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "skipped"]},
                    "mode": {"enum": ["exact", "numeric", "modular", "mixed"]},
                },
            },
        },
    },
}


def to_jsonable(x: Any) -> Any:
    """Exact values become strings: rationals as 'n/d', cyclotomic elements as coefficient lists."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return float(f"{x:.12g}")
    if isinstance(x, complex):
        return [to_jsonable(x.real), to_jsonable(x.imag)]
    if isinstance(x, CycloElement):
        return {"order": x.field.order, "coeffs": [to_jsonable(c) for c in x.coeffs]}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return to_jsonable(x.to_dict())
    if hasattr(x, "item"):
        return to_jsonable(x.item())
    return str(x)


def split_timing(payload: Any) -> tuple[Any, dict]:
    """Move timing fields out of the payload, recursively, keyed by path."""
    timing: dict[str, Any] = {}

    def walk(x, path):
        if isinstance(x, dict):
            out = {}
            for k, v in x.items():
                if k in TIMING_KEYS:
                    timing[f"{path}/{k}" if path else k] = v
                else:
                    out[k] = walk(v, f"{path}/{k}" if path else k)
            return out
        if isinstance(x, list):
            return [walk(v, f"{path}/{i}") for i, v in enumerate(x)]
        return x

    return walk(payload, ""), timing


def make_report(kind: str, payload: Any) -> dict:
    body, timing = split_timing(to_jsonable(payload))
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": body, "timing": timing}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


def content_without_timing(report: dict) -> str:
    r = dict(report)
    r.pop("timing", None)
    return json.dumps(r, sort_keys=True)


def validate_report(report: dict) -> None:
    jsonschema.validate(report, REPORT_SCHEMA)
    if report["kind"] == "paper-suite":
        jsonschema.validate(report["payload"], SUITE_SCHEMA)


def emit_report(report: dict, path: str | os.PathLike) -> Path:
    path = Path(path)
    try:
        path.write_text(dumps(report))
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
    return path


# ---------------------------------------------------------------------------
# cached genericity scans

def cached_scan(p: int, mode: str = "certified", use_cache: bool = True) -> dict:
    """Scan report as a dict; cached on disk under a formula-versioned name."""
    from .genericity import scan_level

    path = cache_dir() / f"scan-{FORMULA_VERSION}-p{p}-{mode}.json"
    if use_cache and path.exists():
        try:
            data = json.loads(path.read_text())
            if data.get("p") == p:
                data["cached"] = True
                return data
        except (OSError, ValueError):
            pass
    rep = scan_level(ctx_new(p), mode).to_dict()
    rep["cached"] = False
    if use_cache:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(rep, sort_keys=True))
        except OSError:
            pass
    return rep


# ---------------------------------------------------------------------------
# the suite

@dataclass
class CheckResult:
    id: str
    anchor: str
    status: str
    mode: str
    witness: Any = None
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "status": self.status, "mode": self.mode,
                "witness": self.witness, "elapsed_ms": round(self.elapsed_ms, 1)}


@dataclass
class PaperSuiteResult:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _run(result: PaperSuiteResult, cid: str, anchor: str, mode: str, fn: Callable[[], tuple[bool | None, Any]]):
    t0 = time.perf_counter()
    try:
        ok, witness = fn()
        status = "skipped" if ok is None else ("pass" if ok else "fail")
    except Exception as exc:  # recorded, never aborts the suite
        status, witness = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    result.checks.append(CheckResult(cid, anchor, status, mode, to_jsonable(witness),
                                     (time.perf_counter() - t0) * 1000))


def run_paper_suite(levels: Sequence[int] | None = None, max_genus: int = 3, use_cache: bool = True,
                    poly=None, jobs: int = 1) -> PaperSuiteResult:
    """All module checks in dependency order; failures are recorded, never raised."""
    from . import certify, genericity, genus1, graphs, homology, qnum, recoupling

    levels = list(range(6, 52, 2)) if levels is None else sorted(set(levels))
    res = PaperSuiteResult()
    if not levels:
        return res
    poly = poly or genericity.PPolynomial()

    def field_selftest():
        bad = []
        for p in levels:
            c = ctx_new(p)
            A = c.A()
            if not (A * c.A(2 * p - 1) == c.one() and c.A(p) == -c.one()):
                bad.append(p)
        return not bad, {"bad_levels": bad}
    _run(res, "cyclotomic.selftest", "root of unity A of order 2p", "exact", field_selftest)

    def qnum_ids():
        bad = []
        for p in levels:
            qc = qnum.exact_constants(ctx_new(p))
            for n in range(p + 1):
                if qc.qint(n).is_zero() != ((2 * n) % p == 0):
                    bad.append((p, n))
        return not bad, {"bad": bad}
    _run(res, "qnum.vanishing", "[n] = 0 iff p divides 2n", "exact", qnum_ids)

    def omega_chars():
        bad = {}
        for p in range(6, 202, 2):
            if graphs.level_shape(p):
                b = graphs.check_omega_characterization(p)
                if b:
                    bad[p] = b[:3]
        return not bad, {"bad": bad}
    _run(res, "graphs.omega", "twist coincidences at levels 2r^2, 4r, 2r1r2", "exact", omega_chars)

    def lemma_ab(which):
        def run():
            bad = []
            for p in [q for q in levels if q % 4 == 0 and q <= 32]:
                ctx = ctx_new(p)
                tab = recoupling.table(ctx)
                k = ctx.k
                for a in range(k + 1):
                    for b in range(k + 1):
                        if which == "A":
                            if not tab.admissible(a, k - a, b):
                                continue
                            want = (-1) ** ((b + k) // 2 + a)
                            if tab.lemmaA_F(a, b) != ctx.const(want):
                                bad.append((p, a, b))
                        else:
                            for c in range(k + 1):
                                if tab.admissible(a, b, c) and tab.admissible(k - a, k - b, c):
                                    if tab.lemmaB_product(a, b, c) != ctx.one():
                                        bad.append((p, a, b, c))
            return not bad, {"bad": bad[:10], "count": len(bad)}
        return run
    _run(res, "recoupling.lemmaA", "ribbon sign law F(a,b)", "exact", lemma_ab("A"))
    _run(res, "recoupling.lemmaB", "trivial ribbon colored k", "exact", lemma_ab("B"))

    def families():
        bad = []
        for p in [q for q in levels if q % 4 == 0 and q <= 28]:
            ctx = ctx_new(p)
            fam = genericity.family_members(ctx)
            for kind, members in fam.items():
                for w in members:
                    if not recoupling.tet_value(qnum.exact_constants(ctx), recoupling.wheel_to_edges(*w)).is_zero():
                        bad.append((p, kind, w))
        return not bad, {"bad": bad}
    _run(res, "genericity.families", "null 6j families Type I and Type II", "exact", families)

    def scans():
        out = {}
        if jobs > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(jobs) as ex:
                reps = list(ex.map(cached_scan, levels, ["certified"] * len(levels), [use_cache] * len(levels)))
        else:
            reps = [cached_scan(p, "certified", use_cache) for p in levels]
        for p, rep in zip(levels, reps):
            out[p] = {"generic": rep["generic"], "zero_types": rep["zero_types"]}
        return all(v["generic"] for v in out.values()), out
    _run(res, "genericity.scan", "no vanishing outside the two families, p <= 50", "mixed", scans)

    def genus1_cyc():
        bad = {}
        for p in levels + [q for q in range(52, 62, 2) if levels and max(levels) >= 50]:
            ctx = ctx_new(p)
            kr = genus1.krylov_analysis(genus1.rt_generators(ctx), [1] + [0] * ctx.max_color)
            if kr.cyclic != genus1.predicted_cyclic(p):
                bad[p] = {"cyclic": kr.cyclic, "dim": kr.dim, "total": kr.total, "method": kr.method}
        return not bad, {"mismatches": bad}
    _run(res, "genus1.cyclicity", "genus-one cyclicity trichotomy", "mixed", genus1_cyc)

    def genus1_comm():
        want = {18: 1, 50: 1, 12: 2, 20: 2, 28: 2, 30: 4, 42: 4}
        got = {p: genus1.commutant_dim(genus1.rt_generators(ctx_new(p))) for p in want if p in levels}
        bad = {p: (got[p], want[p]) for p in got if got[p] != want[p]}
        return not bad, {"got": got, "mismatches": bad}
    _run(res, "genus1.commutant", "summand counts of the odd Weil module", "exact", genus1_comm)

    def psi():
        out = {p: genus1.psi_equivalence(ctx_new(p)).to_dict() for p in (6, 10, 14, 18) if p in levels}
        return all(v["found"] for v in out.values()), out
    _run(res, "genus1.psi", "odd Weil module is projectively the RT module", "numeric", psi)

    def certs():
        out = {}
        for p in (12, 18, 50):
            if p not in levels:
                continue
            for g in range(2, min(max_genus, 3) + 1):
                G = graphs.fly_eyes(g)
                rs = certify.certify_graph(ctx_new(p), G)
                out[f"{p}/g{g}"] = {"classes": len(rs), "failed": [r.key for r in rs if not r.passes]}
        vand = all(certify.vandermonde_invertible(ctx_new(p), i)
                   for p in range(6, 62, 2) for i in range(p // 2 - 1))
        out["vandermonde_all_p_le_60"] = vand
        return vand and all(not v["failed"] for k, v in out.items() if isinstance(v, dict)), out
    _run(res, "certify.classes", "full-rank pairing system per twist class", "exact", certs)

    def homol():
        ids = homology.displayed_identities()
        dims = {g: homology.sp_fixed_subspace(g).dim for g in range(1, min(max_genus, 3) + 1)}
        item2 = {g: homology.lemma_item2_check(g).passes for g in (2, 3) if g <= max_genus}
        ok = all(d["equals_display"] and d["in_ideal"] for d in ids) and all(v == 2 for v in dims.values()) \
            and all(item2.values())
        return ok, {"identities": ids, "fixed_dims": dims, "item2": item2}
    _run(res, "homology.checks", "fixed vectors Span(1, P) and phi.w - w in I", "exact", homol)

    def poly_checks():
        vals = {f"{a},{b}": abs(genericity.eval_P_roots(a, b, poly=poly)[1])
                for a, b in genericity.CHECKED_ROOT_PAIRS}
        return all(v > 1e-6 for v in vals.values()) and poly.verify(), {"abs_values": vals,
                                                                        "checksum_ok": poly.verify()}
    _run(res, "genericity.P_values", "four nonvanishing evaluations of P", "exact", poly_checks)

    def ga():
        if 42 not in levels:
            return None, {"reason": "level 42 not requested"}
        ctx = ctx_new(42)
        D = genericity.lemmaGA_D(ctx, 12)
        rec = genericity.lemmaGA_reconcile(ctx, 12, 3, 7, poly)
        return (not D.is_zero()) and rec.matches and poly.verify(), {"D_nonzero": not D.is_zero(),
                                                                    "reconciliation": rec.to_dict()}
    _run(res, "genericity.lemmaGA", "D factors as prefactor times P(A1, A2)", "mixed", ga)
    return res
