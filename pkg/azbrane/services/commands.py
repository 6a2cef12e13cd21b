"""
Command dispatch shared by the CLI, the HTTP routes and the scenario runner.

Each command validates its payload with a pydantic model, calls the
services and returns a JSON-ready dict.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Type

from pydantic import BaseModel, ValidationError

from .. import models
from ..config import DEFAULT_SEED, WEYL_DEGREE_CAP
from ..errors import AzbraneError, DomainError, MalformedInput
from ..utils.logger import get_logger
from . import azumaya_point as ap
from . import codec
from . import higgsing as hg
from . import kahler_forms as kf
from . import orbit_poset as op
from . import torus_abrane as ta

logger = get_logger(__name__)


@dataclass(frozen=True)
class Command:
    name: str
    model: Type[BaseModel]
    handler: Callable[[Any], dict]
    summary: str


COMMANDS: Dict[str, Command] = {}


def command(name: str, model: Type[BaseModel], summary: str):
    def register(fn: Callable[[Any], dict]):
        COMMANDS[name] = Command(name, model, fn, summary)
        return fn

    return register


def parse(name: str, payload: Any) -> BaseModel:
    if name not in COMMANDS:
        raise MalformedInput(f"unknown command {name!r}")
    try:
        return COMMANDS[name].model.model_validate(payload)
    except ValidationError as e:
        raise MalformedInput(f"invalid payload for {name}: {e.errors(include_url=False)}")


def execute(name: str, payload: Any, seed: Optional[int] = None, degree_bound: Optional[int] = None) -> dict:
    """Validate and run one command. Flag overrides apply only where the payload has the field."""
    payload = dict(payload) if isinstance(payload, dict) else payload
    request = parse(name, payload)
    if seed is not None and "seed" in type(request).model_fields:
        request = request.model_copy(update={"seed": seed})
    if degree_bound is not None and "degree_bound" in type(request).model_fields:
        request = request.model_copy(update={"degree_bound": degree_bound})
    logger.debug("running %s", name)
    try:
        return COMMANDS[name].handler(request)
    except AzbraneError:
        raise
    except ValidationError as e:
        raise MalformedInput(f"invalid payload for {name}: {e.errors(include_url=False)}")
    except (ArithmeticError, ValueError) as e:
        logger.error("%s failed: %s", name, e)
        raise DomainError(f"{name}: {e}") from e


# ====================== Output shapes ======================
def _support_out(s: ap.SupportLengthData) -> list:
    return [{"point": codec.point_out(p), "length": length} for p, length in s.entries]


def _jordan_out(j: op.JordanData) -> list:
    return [{"point": codec.point_out(p), "partition": list(parts)} for p, parts in j.entries]


def _branch_out(report: hg.BranchReport) -> dict:
    out = {
        "case": report.case,
        "eigenvalues": [str(nu) for nu in report.eigenvalues],
        "kernel_ideal": codec.unipoly_out(report.kernel_ideal),
        "components": [
            {"eigenvalue": str(c.eigenvalue), "kernel": [codec.unipoly_out(v) for v in c.kernel]}
            for c in report.components
        ],
        "char_poly_matches": report.char_poly_matches,
    }
    if report.case == "b":
        out["scalar"] = report.scalar
        out["filtered"] = report.filtered
    return out


def _morphism_out(phi: ta.AzCircleMorphism) -> dict:
    return {
        "tau": str(phi.geometry.tau),
        "rank": phi.rank,
        "components": [
            {
                "d": c.d,
                "class": c.klass.to_json(),
                "wrap": c.wrap,
                "offset": str(c.offset),
                "fiber_rank": c.fiber_rank,
            }
            for c in phi.components
        ],
    }


def _cycle_out(cycle: ta.WeightedCycle) -> dict:
    return {
        "terms": [
            {"class": t.klass.to_json(), "offset": str(t.offset), "wraps": t.wraps, "multiplicity": t.multiplicity}
            for t in cycle.terms
        ],
        "points": [{"offset": str(o), "length": length} for o, length in cycle.point_part],
        "total_class": cycle.total_class().to_json(),
        "total_rank": cycle.total_rank(),
    }


# ====================== Azumaya points ======================
@command("rep-check", models.RepCheckRequest, "commuting tuple satisfies the relators")
def rep_check(req: models.RepCheckRequest) -> dict:
    pres = req.presentation.to_domain() if req.presentation else None
    return {"ok": ap.rep_check(req.point.to_domain(), pres)}


@command("image", models.PointRequest, "image ideal of the morphism")
def image(req: models.PointRequest) -> dict:
    t = req.point.to_domain()
    out = {"ideal": [codec.multipoly_out(h) for h in ap.vanishing_ideal(t, req.degree_bound)]}
    if t.arity == 1:
        out["generator"] = codec.unipoly_out(ap.image_ideal_univar(t))
    return out


@command("support", models.PointRequest, "support-length data")
def support(req: models.PointRequest) -> dict:
    return {"support": _support_out(ap.support_length(req.point.to_domain()))}


@command("pushforward", models.PointRequest, "push-forward module with filtration ranks")
def pushforward(req: models.PointRequest) -> dict:
    module = ap.pushforward(req.point.to_domain())
    return {
        "entries": [
            {
                "point": codec.point_out(e.point),
                "length": e.length,
                "filtration_ranks": list(e.filtration_ranks),
                "partition": list(e.partition),
            }
            for e in module.entries
        ]
    }


@command("surrogate", models.PointRequest, "basis of the surrogate algebra")
def surrogate(req: models.PointRequest) -> dict:
    algebra = ap.surrogate_algebra(req.point.to_domain())
    return {
        "dimension": algebra.dimension,
        "standard_monomials": [list(e) for e in algebra.standard_monomials],
    }


@command("hilbert-chow", models.MatrixRequest, "characteristic polynomial and root multiset")
def hilbert_chow(req: models.MatrixRequest) -> dict:
    result = ap.hilbert_chow(codec.matrix_in(req.matrix))
    return {
        "char_poly": codec.unipoly_out(result.char_poly),
        "roots": codec.roots_out(result.roots) if result.split else None,
    }


@command("conjugate", models.ConjugateRequest, "GL_r conjugacy of two points")
def conjugate(req: models.ConjugateRequest) -> dict:
    t1, t2 = req.left.to_domain(), req.right.to_domain()
    seed = DEFAULT_SEED if req.seed is None else req.seed
    status = ap.conjugacy_status(t1, t2, seed=seed)
    return {
        "status": status.value,
        "conjugate": status is ap.ConjugacyStatus.CONJUGATE,
        "intertwiner_dimension": len(ap.intertwiner_space(t1, t2)),
    }


# ====================== Orbits ======================
@command("jordan", models.MatrixRequest, "Jordan-form data of one matrix")
def jordan(req: models.MatrixRequest) -> dict:
    data = op.jordan_data(ap.RepPoint.single(codec.matrix_in(req.matrix)))
    return {"jordan": _jordan_out(data), "filtration_ranks": _filtration_out(data)}


def _filtration_out(data: op.JordanData) -> list:
    return [{"point": codec.point_out(p), "ranks": list(r)} for p, r in op.filtration_ranks(data)]


@command("orbit-compare", models.OrbitCompareRequest, "closure order between two orbits")
def orbit_compare(req: models.OrbitCompareRequest) -> dict:
    left, right = req.labels()
    return {
        "left_precedes_right": op.precede(left.jordan, right.jordan),
        "right_precedes_left": op.precede(right.jordan, left.jordan),
    }


@command("orbit-extremes", models.OrbitExtremesRequest, "maximal and minimal orbits over a support")
def orbit_extremes(req: models.OrbitExtremesRequest) -> dict:
    s = req.to_domain()
    maximal, minimal = op.maximal_orbit(s), op.minimal_orbit(s)
    return {
        "maximal": _jordan_out(maximal.jordan),
        "minimal": _jordan_out(minimal.jordan),
        "orbit_count": len(op.orbits_over(s)),
    }


# ====================== Higgsing ======================
@command("higgsing", models.HiggsingRequest, "fundamental solutions and branch report")
def higgsing(req: models.HiggsingRequest) -> dict:
    problem = req.to_domain()
    solution = hg.solve(problem, [codec.scalar_in(b) for b in req.bhat])
    residual = hg.ode_residual(problem, solution.b)
    report = hg.classify_deformation(problem, solution)
    return {
        "solvable": True,
        "fundamental_solutions": [codec.polymatrix_out(b) for b in hg.fundamental_solutions(problem)],
        "B": codec.polymatrix_out(solution.b),
        "B0": codec.matrix_out(solution.b0),
        "residual_zero": residual.is_zero(),
        "branch": _branch_out(report),
    }


@command("spectral-curve", models.SpectralCurveRequest, "det(lambda - phi) and containment checks")
def spectral_curve(req: models.SpectralCurveRequest) -> dict:
    phi = codec.polymatrix_in(req.phi, req.vars)
    curve = hg.spectral_curve(phi)
    return {
        "vars": list(curve.variables),
        "curve": codec.multipoly_out(curve),
        "containment": [
            {"point": codec.point_out([codec.scalar_in(c) for c in p]),
             "eigenvalues": [str(ev) for ev in hg.spectral_containment(phi, p)]}
            for p in req.points
        ],
    }


@command("weyl-check", models.WeylCheckRequest, "[d, z] = 1 on the truncated module")
def weyl_check(req: models.WeylCheckRequest) -> dict:
    w = hg.WeylTrunc(req.cap or WEYL_DEGREE_CAP, req.rank)
    return {"cap": w.cap, "rank": w.rank, "ok": hg.weyl_commutator_check(w)}


# ====================== Torus ======================
@command("torus-class", models.MorphismIn, "total surrogate class")
def torus_class(req: models.MorphismIn) -> dict:
    surrogate_class, _ = ta.total_class(req.to_domain())
    return {"surrogate": surrogate_class.to_json()}


@command("torus-cycle", models.MorphismIn, "weighted push-forward cycle")
def torus_cycle(req: models.MorphismIn) -> dict:
    phi = req.to_domain()
    return {"cycle": _cycle_out(ta.pushforward_cycle(phi)), "special_lagrangian": ta.is_special_lagrangian(phi)}


@command("torus-amalgamate", models.TorusPairRequest, "direct sum of two morphisms")
def torus_amalgamate(req: models.TorusPairRequest) -> dict:
    phi = ta.amalgamate(req.left.to_domain(), req.right.to_domain())
    return {"morphism": _morphism_out(phi), "surrogate": ta.total_class(phi)[0].to_json()}


@command("torus-slag", models.TorusSlagRequest, "special Lagrangian representative of a class")
def torus_slag(req: models.TorusSlagRequest) -> dict:
    target, geometry = req.to_domain()
    phi = ta.slag_representative(target, geometry)
    return {"morphism": _morphism_out(phi), "special_lagrangian": ta.is_special_lagrangian(phi)}


@command("torus-cancel", models.TorusPairRequest, "amalgamate and deform to the sLag representative")
def torus_cancel(req: models.TorusPairRequest) -> dict:
    phi = ta.cancel(req.left.to_domain(), req.right.to_domain())
    return {"morphism": _morphism_out(phi), "cycle": _cycle_out(ta.pushforward_cycle(phi))}


@command("torus-merge", models.MorphismIn, "recombine components into the sLag representative")
def torus_merge(req: models.MorphismIn) -> dict:
    phi = ta.merge_components(req.to_domain())
    return {"morphism": _morphism_out(phi), "surrogate": ta.total_class(phi)[0].to_json()}


@command("torus-validate-profile", models.MorphismIn, "junction condition of an orbit profile")
def torus_validate_profile(req: models.MorphismIn) -> dict:
    phi = req.to_domain()
    return {"valid": ta.validate_profile(phi), "intervals": list(ta.profile_report(phi))}


# ====================== Kahler forms ======================
@command("kahler-trace", models.KahlerTraceRequest, "trace form of a formal s-form")
def kahler_trace(req: models.KahlerTraceRequest) -> dict:
    return {"trace_form": kf.trace_form(req.form.to_domain()).to_json()}


@command("kahler-pullback", models.KahlerPullbackRequest, "pull back a classical form along phi")
def kahler_pullback(req: models.KahlerPullbackRequest) -> dict:
    phi = req.phi.to_domain()
    if req.function is not None:
        form = kf.differential(codec.multipoly_in(req.function, phi.target_variables))
    elif req.form is not None:
        form = req.classical_form()
    else:
        raise MalformedInput("give either `form` or `function`")
    pulled = kf.pullback_tensor(phi, form)
    return {"degree": pulled.degree, "terms": len(pulled.terms), "trace_form": kf.trace_form(pulled).to_json()}
