"""Small triangulations with known homology, used as a regression corpus."""
from __future__ import annotations

from .simplicial import SimplicialComplex

RP2_FACETS = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
]


def circle() -> SimplicialComplex:
    return SimplicialComplex.from_facets([(0, 1), (1, 2), (0, 2)])


def simplex_boundary(k: int = 3) -> SimplicialComplex:
    """Boundary of the k-simplex, a (k-1)-sphere."""
    verts = range(k + 1)
    return SimplicialComplex.from_facets([tuple(v for v in verts if v != skip) for skip in verts])


def sphere() -> SimplicialComplex:
    return simplex_boundary(3)


def projective_plane() -> SimplicialComplex:
    """Six-vertex minimal triangulation of RP^2 (the hemi-icosahedron)."""
    return SimplicialComplex.from_facets(RP2_FACETS)


def grid_surface(m: int, twist: bool = False) -> SimplicialComplex:
    """m x m grid on the unit square, top glued to bottom and left to right.

    With ``twist`` the left/right gluing reverses orientation, giving a
    Klein bottle instead of a torus. Needs m >= 3 to stay simplicial.
    """
    def vid(i, j):
        i %= 2 * m if twist else m
        if i >= m:
            i -= m
            j = -j
        return i * m + (j % m)

    facets = []
    for i in range(m):
        for j in range(m):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            facets += [(a, b, d), (a, c, d)]
    return SimplicialComplex.from_facets(facets, m * m)


def projective_grid(m: int = 4) -> SimplicialComplex:
    """RP^2 as an m x m grid on a square with antipodal boundary points glued.

    Independent of the six-vertex triangulation; m^2 + 1 vertices. Boundary
    points are labelled by their position on the boundary cycle mod 2m.
    The two corner squares that the gluing swaps take the other diagonal,
    otherwise their all-boundary triangles coincide. Needs m >= 3.
    """
    def vid(i, j):
        if 0 < i < m and 0 < j < m:
            return 2 * m + (i - 1) * (m - 1) + (j - 1)
        if j == 0:
            pos = i
        elif i == m:
            pos = m + j
        elif j == m:
            pos = 3 * m - i
        else:
            pos = 4 * m - j
        return pos % (2 * m)

    facets = []
    for i in range(m):
        for j in range(m):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            if (i, j) in ((0, m - 1), (m - 1, 0)):
                facets += [(a, b, c), (b, c, d)]
            else:
                facets += [(a, b, d), (a, c, d)]
    return SimplicialComplex.from_facets(facets, m * m + 1)


def torus() -> SimplicialComplex:
    return grid_surface(3)


def klein_bottle() -> SimplicialComplex:
    return grid_surface(3, twist=True)


CORPUS = {
    "circle": circle,
    "sphere": sphere,
    "torus": torus,
    "projective-plane": projective_plane,
    "klein-bottle": klein_bottle,
}
