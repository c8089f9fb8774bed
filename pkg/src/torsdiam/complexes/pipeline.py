"""Net -> nerve -> homology, with the bounds it is supposed to respect."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping

from .. import hyperbolic
from ..errors import ConstantTableMissing
from .gabber import DEGREES, hadamard_gabber_constant
from .homology import HomologyProfile, homology
from .metric import FiniteMetricSpace
from .nerve import Net, build_net, cech_nerve, covers
from .simplicial import SimplicialComplex

MODEL_EULER = {"flat-torus": 0, "round-sphere": 2, "projective-plane": 1}


def default_preset(r: float) -> tuple[float, float]:
    """(separation, radius) = (r/4, r/2) for a scale r such as the injectivity radius."""
    return r / 4, r / 2


@dataclass
class PipelineResult:
    net: Net
    complex: SimplicialComplex
    homology: HomologyProfile
    report: dict = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "centers": len(self.net.centers),
            "f_vector": self.complex.f_vector(),
            "max_degree": self.complex.max_degree,
            "truncated": self.complex.truncated,
            "homology": self.homology.to_json(),
            "report": self.report,
            "flags": self.flags,
        }


def nerve_pipeline(
    space: FiniteMetricSpace,
    s: float,
    radius: float,
    *,
    max_dim: int = 2,
    gabber_table: Mapping | str | None = None,
    threads: int = 1,
) -> PipelineResult:
    net = build_net(space, s)
    flags = []
    if radius < s:
        warnings.warn("radius below the net separation: maximality no longer implies a cover",
                      stacklevel=2)
    if not covers(net, radius):
        flags.append("cover not verified")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        cx = cech_nerve(net, radius, max_dim)
    if cx.truncated:
        flags.append("dimension cap reached")
    h = homology(cx, threads)
    V = len(net.centers)
    report: dict = {"centers": V, "max_degree": cx.max_degree, "euler_nerve": cx.euler_characteristic()}

    n, vol = space.dimension, space.volume
    if n is not None and n >= 2 and vol is not None:
        # the hyperbolic comparisons; finite models are not hyperbolic, so these are reported, not enforced
        r = 4 * s
        net_bound = hyperbolic.net_size_bound(n, vol, r)
        deg_bound = hyperbolic.degree_bound(n, r)
        report.update(net_size_bound=net_bound, within_net_size_bound=V <= net_bound,
                      degree_bound=deg_bound, within_degree_bound=cx.max_degree <= deg_bound)
    if space.model in MODEL_EULER and not cx.truncated:
        report["euler_model"] = MODEL_EULER[space.model]
        report["euler_matches"] = report["euler_nerve"] == MODEL_EULER[space.model]

    tors = {}
    for p in range(1, h.trusted_up_to + 1):
        tors[str(p)] = {"log_torsion": h.log_torsion(p), "ratio": h.log_torsion(p) / V}
    report["torsion"] = tors
    if gabber_table == "hadamard":
        # certified fallback when no scanned table is supplied
        gabber_table = {cx.max_degree: {p: hadamard_gabber_constant(cx.max_degree, p) for p in DEGREES}}
    if gabber_table is not None:
        try:
            cap, c = hyperbolic.lookup_gabber_constant(gabber_table, cx.max_degree)
        except ConstantTableMissing:
            flags.append("no Gabber constant for this degree")
        else:
            report["gabber"] = {"degree_cap": cap, "constant": c,
                                "bound": c * V,
                                "satisfied": all(t["log_torsion"] <= c * V for t in tors.values())}
    return PipelineResult(net, cx, h, report, flags)
