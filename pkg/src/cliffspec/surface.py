"""
Isosurface extraction of ``{D = 0}``.

Pipeline: :func:`bounding_box` -> :func:`sample` -> :func:`extract` -> :func:`export`.
Mesh vertices live on grid edges (one per sign-changing edge, shared by all
cells touching that edge) and are bisected along the edge until the residual
is tiny. Connected components are counted over shared vertices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from ._mc_tables import TRI_TABLE
from .errors import InternalConsistencyError, PreconditionError, ValidationError
from .quartic import D_reduced, QuarticInvariants, growth_radius

MAX_SAMPLES = 10**9
MAX_BOX_DOUBLINGS = 40
VERTEX_TOL = 1e-10
MERGE_DIST = 1e-9
MAX_EDGE_BISECTIONS = 200

# corner offsets (di, dj, dk) in Bourke numbering
_CORNERS = np.array([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0),
                     (0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)])
# cube edge -> (corner where the lattice edge starts, axis)
_EDGES = ((0, 0), (1, 1), (3, 0), (0, 1),
          (4, 0), (5, 1), (7, 0), (4, 1),
          (0, 2), (1, 2), (2, 2), (3, 2))

_TRI = np.full((256, 15), -1, dtype=np.int64)
for _case, _row in enumerate(TRI_TABLE):
    _TRI[_case, :len(_row)] = _row

_DIRECTIONS = np.array([(i, j, k) for i in (-1, 0, 1) for j in (-1, 0, 1) for k in (-1, 0, 1)
                        if (i, j, k) != (0, 0, 0)], dtype=float)
_DIRECTIONS /= np.linalg.norm(_DIRECTIONS, axis=1)[:, None]


class Box(NamedTuple):
    lo: np.ndarray
    hi: np.ndarray

    def contains(self, pts, slack: float = 0.0) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        return np.all((pts >= self.lo - slack) & (pts <= self.hi + slack), axis=-1)


@dataclass(frozen=True)
class ScalarField:
    """D sampled on a lattice; ``values`` is flat with x varying fastest."""

    bbox: Box
    dims: tuple[int, int, int]
    values: np.ndarray

    def axes(self) -> list[np.ndarray]:
        return [np.linspace(self.bbox.lo[d], self.bbox.hi[d], self.dims[d]) for d in range(3)]

    def grid(self) -> np.ndarray:
        """Values as an array indexed ``[k, j, i]`` (z, y, x)."""
        nx, ny, nz = self.dims
        return self.values.reshape(nz, ny, nx)


@dataclass(frozen=True)
class TriangleMesh:
    vertices: np.ndarray
    triangles: np.ndarray
    components: int
    residuals: np.ndarray
    warning: str | None = None

    @property
    def is_empty(self) -> bool:
        return len(self.triangles) == 0


class MeshFormat(str, enum.Enum):
    OBJ = "obj"
    PLY = "ply"
    CSV = "csv"


def bounding_box(inv: QuarticInvariants, center) -> Box:
    """Cube around ``center`` containing the zero set of D.

    The half-width starts at the growth radius (beyond which D > 0) and is
    doubled until D is also positive at 26 probes on the inscribed sphere.
    """
    center = np.asarray(center, dtype=float)
    cinv = inv.centered()
    # the growth radius makes containment rigorous; probing alone can miss lobes
    R = max(np.sqrt(max(2.0 * inv.lambda0 - inv.beta, 0.0)) + 1.0, growth_radius(inv))
    for _ in range(MAX_BOX_DOUBLINGS):
        if np.all(D_reduced(cinv, R * _DIRECTIONS) > 0.0):
            return Box(center - R, center + R)
        R *= 2.0
    raise InternalConsistencyError("no positive shell found for the bounding box")


def sample(inv: QuarticInvariants, center, bbox: Box, dims) -> ScalarField:
    dims = tuple(int(n) for n in dims)
    if len(dims) != 3 or min(dims) < 2:
        raise PreconditionError(f"need three dims >= 2, got {dims}")
    if np.prod(dims, dtype=object) > MAX_SAMPLES:
        raise PreconditionError(f"{dims} exceeds {MAX_SAMPLES} samples")
    center = np.asarray(center, dtype=float)
    bbox = Box(np.asarray(bbox.lo, dtype=float), np.asarray(bbox.hi, dtype=float))
    cinv = inv.centered()
    nx, ny, nz = dims
    xs, ys, zs = (np.linspace(bbox.lo[d], bbox.hi[d], dims[d]) - center[d] for d in range(3))
    Y, X = np.meshgrid(ys, xs, indexing="ij")
    out = np.empty((nz, ny, nx))
    pts = np.empty((ny, nx, 3))
    pts[..., 0] = X
    pts[..., 1] = Y
    for k, z in enumerate(zs):
        pts[..., 2] = z
        out[k] = D_reduced(cinv, pts)
    return ScalarField(bbox, dims, out.ravel())


def _merge_close(verts: np.ndarray) -> np.ndarray:
    """Representative index for every vertex, merging points within MERGE_DIST."""
    n = len(verts)
    pairs = cKDTree(verts).query_pairs(MERGE_DIST, output_type="ndarray")
    if len(pairs) == 0:
        return np.arange(n)
    g = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    _, labels = connected_components(g, directed=False)
    rep = np.full(labels.max() + 1, n)
    np.minimum.at(rep, labels, np.arange(n))
    return rep[labels]


def _count_components(n_vertices: int, triangles: np.ndarray) -> int:
    if len(triangles) == 0:
        return 0
    rows = np.concatenate([triangles[:, 0], triangles[:, 1]])
    cols = np.concatenate([triangles[:, 1], triangles[:, 2]])
    g = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n_vertices, n_vertices))
    n_comp, _ = connected_components(g, directed=False)
    return int(n_comp)


def extract(field: ScalarField, inv: QuarticInvariants, center) -> TriangleMesh:
    """Marching cubes at level 0 with edge-bisected vertices."""
    center = np.asarray(center, dtype=float)
    cinv = inv.centered()
    tol = VERTEX_TOL * inv.scale
    nx, ny, nz = field.dims
    V = field.grid()
    inside = V < 0.0

    cube = np.zeros((nz - 1, ny - 1, nx - 1), dtype=np.int64)
    for v, (di, dj, dk) in enumerate(_CORNERS):
        cube |= inside[dk:dk + nz - 1, dj:dj + ny - 1, di:di + nx - 1].astype(np.int64) << v
    kk, jj, ii = np.nonzero((cube != 0) & (cube != 255))
    if len(kk) == 0:
        return TriangleMesh(np.empty((0, 3)), np.empty((0, 3), dtype=np.int64), 0, np.empty(0),
                            warning="no sign change on the grid: the spectrum, if any, consists of "
                                    "isolated points not resolved by marching cubes")

    cases = cube[kk, jj, ii]
    edge_ids = np.empty((len(kk), 12), dtype=np.int64)
    for e, (corner, axis) in enumerate(_EDGES):
        di, dj, dk = _CORNERS[corner]
        lattice = ((kk + dk) * ny + (jj + dj)) * nx + (ii + di)
        edge_ids[:, e] = 3 * lattice + axis

    rows = _TRI[cases].reshape(len(kk), 5, 3)
    valid = rows[:, :, 0] >= 0
    cell_idx, slot = np.nonzero(valid)
    local = rows[cell_idx, slot]
    tri_edges = np.take_along_axis(edge_ids[cell_idx], local, axis=1)

    uniq, inverse = np.unique(tri_edges, return_inverse=True)
    triangles = inverse.reshape(-1, 3)
    verts, resid = _refine_edges(uniq, field, cinv, center, tol)

    rep = _merge_close(verts)
    triangles = rep[triangles]
    keep = ((triangles[:, 0] != triangles[:, 1]) & (triangles[:, 1] != triangles[:, 2])
            & (triangles[:, 0] != triangles[:, 2]))
    triangles = triangles[keep]
    used = np.unique(triangles)
    remap = np.full(len(verts), -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    triangles = remap[triangles]
    verts, resid = verts[used], resid[used]

    return TriangleMesh(verts, triangles, _count_components(len(verts), triangles), resid)


def _refine_edges(edge_ids: np.ndarray, field: ScalarField, cinv: QuarticInvariants,
                  center: np.ndarray, tol: float):
    nx, ny, _ = field.dims
    axes = field.axes()
    lattice, axis = np.divmod(edge_ids, 3)
    k, rem = np.divmod(lattice, nx * ny)
    j, i = np.divmod(rem, nx)
    idx0 = np.stack([i, j, k], axis=1)
    idx1 = idx0.copy()
    idx1[np.arange(len(axis)), axis] += 1

    def coords(idx):
        return np.stack([axes[d][idx[:, d]] for d in range(3)], axis=1)

    p0, p1 = coords(idx0), coords(idx1)
    grid = field.grid()
    d0 = grid[idx0[:, 2], idx0[:, 1], idx0[:, 0]]
    # orient every edge from its inside (D < 0) end to its outside end
    swap = d0 >= 0.0
    neg = np.where(swap[:, None], p1, p0)
    pos = np.where(swap[:, None], p0, p1)

    def D(p):
        return D_reduced(cinv, p - center)

    s_lo = np.zeros(len(edge_ids))
    s_hi = np.ones(len(edge_ids))
    d_hi = D(pos)
    best_s = np.where(d_hi == 0.0, 1.0, 0.5)
    done = d_hi == 0.0
    for _ in range(MAX_EDGE_BISECTIONS):
        todo = ~done
        if not todo.any():
            break
        mid = 0.5 * (s_lo + s_hi)
        pm = neg + mid[:, None] * (pos - neg)
        dm = D(pm)
        hit = todo & (np.abs(dm) <= tol)
        best_s[hit] = mid[hit]
        done |= hit
        stuck = todo & ~hit & ((mid == s_lo) | (mid == s_hi))
        best_s[stuck] = mid[stuck]
        done |= stuck
        go_right = todo & ~done & (dm < 0.0)
        go_left = todo & ~done & (dm >= 0.0)
        s_lo = np.where(go_right, mid, s_lo)
        s_hi = np.where(go_left, mid, s_hi)
    best_s[~done] = 0.5 * (s_lo[~done] + s_hi[~done])

    verts = neg + best_s[:, None] * (pos - neg)
    resid = D(verts)
    if np.any(np.abs(resid) > tol):
        raise InternalConsistencyError(
            f"edge refinement left residual {np.max(np.abs(resid)):.3e} > {tol:.3e}")
    return verts, resid


def spectrum_mesh(inv: QuarticInvariants, center=None, resolution: int = 96) -> TriangleMesh:
    """Bounding box, sampling and extraction in one call."""
    center = inv.center if center is None else center
    box = bounding_box(inv, center)
    field = sample(inv, center, box, (resolution,) * 3)
    return extract(field, inv, center)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def export(mesh: TriangleMesh, fmt) -> bytes:
    try:
        fmt = MeshFormat(str(fmt.value if isinstance(fmt, MeshFormat) else fmt).lower())
    except ValueError:
        raise ValidationError(f"unknown mesh format {fmt!r}") from None
    nv, nt = len(mesh.vertices), len(mesh.triangles)
    lines: list[str] = []
    if fmt is MeshFormat.OBJ:
        lines += ["# cliffspec zero set of the localizer determinant",
                  f"# vertices {nv}", f"# faces {nt}"]
        lines += [f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in mesh.vertices]
        lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.triangles]
    elif fmt is MeshFormat.PLY:
        lines += ["ply", "format ascii 1.0", "comment cliffspec zero set of the localizer determinant",
                  f"element vertex {nv}", "property double x", "property double y", "property double z",
                  f"element face {nt}", "property list uchar int vertex_indices", "end_header"]
        lines += [f"{_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in mesh.vertices]
        lines += [f"3 {a} {b} {c}" for a, b, c in mesh.triangles]
    else:
        lines.append("x,y,z,D")
        lines += [f"{_fmt(x)},{_fmt(y)},{_fmt(z)},{_fmt(r)}"
                  for (x, y, z), r in zip(mesh.vertices, mesh.residuals)]
    return ("\n".join(lines) + "\n").encode("ascii")
