"""Integral simplicial homology."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .._parallel import parallel_map
from .simplicial import SimplicialComplex, boundary_columns
from .snf import SmithResult, smith_from_columns


@dataclass(frozen=True)
class DegreeHomology:
    betti: int
    torsion: tuple[int, ...]

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion)


@dataclass(frozen=True)
class HomologyProfile:
    degrees: tuple[DegreeHomology, ...]
    trusted_up_to: int

    def betti(self, p: int) -> int:
        return self.degrees[p].betti if p < len(self.degrees) else 0

    def torsion(self, p: int) -> tuple[int, ...]:
        return self.degrees[p].torsion if p < len(self.degrees) else ()

    def log_torsion(self, p: int) -> float:
        return math.fsum(math.log(d) for d in self.torsion(p))

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * h.betti for p, h in enumerate(self.degrees))

    def to_json(self) -> dict:
        return {
            "trusted_up_to": self.trusted_up_to,
            "degrees": {str(p): {"betti": h.betti, "torsion": [str(d) for d in h.torsion]}
                        for p, h in enumerate(self.degrees)},
        }


def _smith_of(args) -> SmithResult:
    c, p = args
    return smith_from_columns(boundary_columns(c, p))


def boundary_smith(c: SimplicialComplex, threads: int = 1) -> dict[int, SmithResult]:
    top = c.dim
    results = parallel_map(_smith_of, [(c, p) for p in range(1, top + 1)], threads)
    return dict(zip(range(1, top + 1), results))


def homology(c: SimplicialComplex, threads: int = 1) -> HomologyProfile:
    """Betti numbers and torsion coefficients in every degree up to dim c.

    b_p = #p-simplices - rank d_p - rank d_{p+1}; the torsion of H_p is
    given by the invariant factors > 1 of d_{p+1}. For a complex cut at
    ``max_dim`` the top degree is not trustworthy.
    """
    top = c.dim
    snf = boundary_smith(c, threads)
    degrees = []
    for p in range(top + 1):
        rank_p = snf[p].rank if p >= 1 else 0
        nxt = snf.get(p + 1)
        rank_next = nxt.rank if nxt else 0
        degrees.append(DegreeHomology(c.count(p) - rank_p - rank_next, nxt.torsion if nxt else ()))
    return HomologyProfile(tuple(degrees), top - 1 if c.truncated else top)
