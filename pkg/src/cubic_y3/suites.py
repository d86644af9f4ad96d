"""Verification suites: each yields :class:`CheckResult` records comparing an
expected value with an exactly computed one."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from importlib import resources
from typing import Callable, Iterator

from . import chowring, ivhs, lines, nslattice, periods
from .polyring import CubicSurface, fermat_form, hessian_det, random_smooth_cubics

SUITES = ("chow", "fermat", "generic", "abelian", "ivhs")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    check: str
    expected: str
    computed: str
    passed: bool
    millis: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass
class Options:
    surface: CubicSurface | None = None
    random: bool = False
    seed: int = 7
    count: int = 5


def _fmt(x) -> str:
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(y) for y in x) + "]"
    return str(x)


class _Recorder:
    def __init__(self, suite: str) -> None:
        self.suite = suite
        self.t = time.perf_counter()

    def check(self, name: str, expected, computed) -> CheckResult:
        now = time.perf_counter()
        ms = int((now - self.t) * 1000)
        self.t = now
        e, c = _fmt(expected), _fmt(computed)
        return CheckResult(self.suite, name, e, c, e == c, ms)


def load_fixture(name: str) -> dict:
    return json.loads(resources.files("cubic_y3.data").joinpath(name).read_text())


def chow_suite(opts: Options) -> Iterator[CheckResult]:
    r = _Recorder("chow")
    yield r.check("class of Y3", "6s^2t + 15st^2 + 6t^3", str(chowring.class_of_Y3()))
    inv = chowring.verify_numeric_invariants()
    yield r.check("K^2", 6, inv.K2)
    yield r.check("(Y_inf)^2", -81, inv.Yinf_self)


def fermat_suite(opts: Options) -> Iterator[CheckResult]:
    r = _Recorder("fermat")
    F = fermat_form()
    L = lines.fermat_lines()
    yield r.check("line count", 27, len(set(L)))
    yield r.check("lines lie on surface", True, all(ln.lies_on(F) for ln in L))
    inc = lines.eckardt_points(L)
    yield r.check("Eckardt points", 18, len(inc.eckardt))
    yield r.check("Eckardt points per line", [2], sorted({len(v) for v in inc.eckardt_on_line.values()}))
    yield r.check("lines met by each line", [10], sorted({len(inc.neighbors(i)) for i in range(27)}))
    yield r.check("Hessian", "(1296)*x0*x1*x2*x3", str(hessian_det(F)))
    model = nslattice.build_gram(inc, with_d=True)
    full = nslattice.full_lattice(model)
    sub = nslattice.line_and_eckardt_lattice(model)
    fi = full.invariants()
    si = sub.invariants()
    yield r.check("NS rank", 44, fi.rank)
    yield r.check("NS determinant", -(3**12), fi.determinant)
    yield r.check("NS signature", (1, 43), fi.signature)
    yield r.check("span without D determinant", -(2**2) * 3**12, si.determinant)
    yield r.check("index of span without D", [2], nslattice.quotient_torsion(full, sub))
    yield r.check("overlattice law (full, without D)", True, nslattice.overlattice_law(full, sub))
    yield from _relation_checks(r, model)
    X = CubicSurface(F)
    H = hessian_det(F)
    pts = lines.fermat_sample_points()
    yield r.check(
        f"branch consistency on {len(pts)} sample points",
        True,
        all(lines.branch_consistency(X, p, H) for p in pts),
    )


def _relation_checks(r: _Recorder, model: nslattice.GramModel) -> Iterator[CheckResult]:
    rep = nslattice.verify_relations(model)
    yield r.check("rel1 in radical", True, rep.rel1)
    yield r.check("rel2 in radical", True, rep.rel2)
    yield r.check("multiplicity identity", True, rep.multiplicities)
    g = model.gens
    e = model.inc.eckardt_on_line[0]
    j = g.E(e[0]) if e else g.Lm(model.inc.neighbors(0)[0])
    bad = model.with_entry(g.Lp(0), j, 2)
    yield r.check("corrupted Gram breaks rel2", False, nslattice.verify_relations(bad).rel2)


def generic_suite(opts: Options) -> Iterator[CheckResult]:
    r = _Recorder("generic")
    inc = lines.generic_incidence()
    yield r.check("meeting pairs", 135, inc.edge_count())
    yield r.check("tritangent triangles", 45, len(inc.triangles()))
    model = nslattice.build_gram(inc)
    ns0 = nslattice.line_lattice(model)
    i0 = ns0.invariants()
    yield r.check("NS0 rank", 28, i0.rank)
    yield r.check("NS0 determinant", -(3**14) * 5, i0.determinant)
    yield r.check("NS0 signature", (1, 27), i0.signature)
    prim = nslattice.prim_plus_Lplus(model)
    lp = nslattice.lplus_lattice(model)
    pi = prim.invariants()
    yield r.check("prim + L+ rank", 27, pi.rank)
    yield r.check("prim + L+ determinant", -(3**15), pi.determinant)
    yield r.check("sum Z L+ determinant", -(3**27), lp.invariants().determinant)
    yield r.check("(prim + L+) / sum Z L+", [3] * 6, nslattice.quotient_torsion(prim, lp))
    full = nslattice.full_phi_plus_Lplus(model)
    fi = full.invariants()
    yield r.check("phi* H2 + L+ determinant", -(3**14) * 5, fi.determinant)
    yield r.check("phi* H2 + L+ signature", (1, 27), fi.signature)
    h_lp = nslattice.SpannedLattice(
        model, [nslattice.hyperplane_pullback(model, inc.triangles()[0])] + lp.generators
    )
    yield r.check("[phi* H2 + L+ : Z phi*h + sum Z L+] finite", True, 0 not in nslattice.quotient_torsion(full, h_lp))
    pairs = [(prim, lp), (full, ns0), (ns0, full), (full, h_lp), (ns0, h_lp)]
    yield r.check(
        "overlattice law on every pair",
        True,
        all(nslattice.overlattice_law(M, A) for M, A in pairs),
    )
    yield from _relation_checks(r, model)


def abelian_suite(opts: Options) -> Iterator[CheckResult]:
    r = _Recorder("abelian")
    yield r.check("deg(theta^5/5!)", 1, periods.theta5_degree())
    yield r.check("cup(theta, theta)", 20, periods.cup(periods.theta(), periods.theta()))
    yield r.check("cup(tau, tau)", 5, periods.cup(periods.tau(), periods.tau()))
    lat = periods.h2S_lattice()
    yield r.check("H2 lattice rank", 45, lat.rank)
    inv = periods.galois_invariants().invariants()
    yield r.check("fixed lattice rank", 25, inv.rank)
    yield r.check("fixed lattice determinant", 3**10, inv.determinant)
    yield r.check("fixed lattice signature", (9, 16), inv.signature)
    model = periods.model_invariants(periods.invariant_model())
    yield r.check("fixed lattice SNF = block model SNF", model.invariant_factors, inv.invariant_factors)
    for j in range(1, 5):
        yield r.check(f"pair (0,{j}) Gram", [[2, 1], [1, 2]], periods.explicit_pair_gram(0, j))
    for i in range(1, 5):
        for j in range(i + 1, 5):
            yield r.check(f"pair ({i},{j}) Gram", [[-2, -1], [-1, -2]], periods.explicit_pair_gram(i, j))
    prim = periods.prim_invariants()
    yield r.check("prim rank", 24, prim.rank)
    yield r.check("prim determinant", 5 * 3**10, prim.determinant)
    yield r.check("prim signature", (8, 16), prim.signature)
    pmodel = periods.model_invariants(periods.prim_model())
    yield r.check("prim SNF = block model SNF", pmodel.invariant_factors, prim.invariant_factors)
    ns0 = nslattice.line_lattice(nslattice.build_gram(lines.generic_incidence())).invariants()
    for line in periods.scaling_bridge_report(ns0.determinant):
        yield r.check(line.check, line.expected, line.computed)
    fano = load_fixture("fano_ns_fermat.json")
    yield r.check("external NS(S) rank = fixed lattice rank", fano["rank"], inv.rank)


def _ivhs_surface_checks(r: _Recorder, name: str, F) -> Iterator[CheckResult]:
    rep = ivhs.ivhs_report(F)
    yield r.check(f"{name}: smooth", True, rep.smooth)
    yield r.check(f"{name}: rank nu", 16, rep.rank_nu)
    yield r.check(f"{name}: rank nu1", 64, rep.rank_nu1)
    yield r.check(f"{name}: rank delta1", 80, rep.rank_delta1)
    yield r.check(f"{name}: ivhs rank", 16, rep.ivhs_rank)
    nu1 = ivhs.build_nu1(F)
    tn = ivhs.build_one_tensor_nu(F)
    yield r.check(f"{name}: delta1 . (1 (x) nu) == nu1", True, (ivhs._delta1() @ tn).matrix == nu1.matrix)
    alpha = ivhs.build_alpha()
    beta = ivhs.build_beta(F)
    na = nu1 @ alpha
    yield r.check(f"{name}: nu1 . alpha == beta (entrywise)", True, na.matrix == beta.matrix)
    yield r.check(
        f"{name}: nu1 . alpha == beta . T",
        True,
        na.matrix == (beta @ ivhs.alpha_to_beta_transform()).matrix,
    )
    yield r.check(f"{name}: nu1(im alpha) == im beta", True, ivhs.same_image(na, beta))


def ivhs_suite(opts: Options) -> Iterator[CheckResult]:
    r = _Recorder("ivhs")
    if opts.surface is not None:
        surfaces = [("surface", opts.surface.F)]
    elif opts.random:
        surfaces = []
    else:
        surfaces = [("fermat", fermat_form())]
    if opts.random:
        for k, X in enumerate(random_smooth_cubics(opts.seed, opts.count)):
            surfaces.append((f"random seed {opts.seed} #{k}", X.F))
    for name, F in surfaces:
        yield from _ivhs_surface_checks(r, name, F)
    if not opts.random and opts.surface is None:
        F = fermat_form()
        q = ivhs.quotient_dims_report(F)
        yield r.check("fermat: tangent quotient dim", 15, q["tangent_quotient"])
        yield r.check("fermat: normal quotient dim", 39, q["normal_quotient"])
        yield r.check("fermat: coker nu dim", 4, q["coker_nu"])


RUNNERS: dict[str, Callable[[Options], Iterator[CheckResult]]] = {
    "chow": chow_suite,
    "fermat": fermat_suite,
    "generic": generic_suite,
    "abelian": abelian_suite,
    "ivhs": ivhs_suite,
}


def run_suites(selector: str, opts: Options | None = None) -> list[CheckResult]:
    opts = opts or Options()
    names = SUITES if selector == "all" else (selector,)
    out: list[CheckResult] = []
    for name in names:
        out.extend(RUNNERS[name](opts))
    return out
