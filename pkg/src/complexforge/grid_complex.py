"""Cubical de Rham complexes on voxel domains.

Cells are addressed by doubled integer coordinates (X, Y, Z) in
[0, 2n]: an odd coordinate means the cell extends along that axis, so the
voxel (i, j, k) is the 3-cell (2i+1, 2j+1, 2k+1).  Cells of each dimension
are numbered in lexicographic order of their coordinates.  D_k maps
k-cochains to (k+1)-cochains (coboundary = transposed cubical boundary).

``bc="dirichlet"`` keeps only the cells that avoid the topological
boundary of the occupied region (the relative cochain complex).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import DegenerateComplex, DomainFormatError, EmptyDomain, ZeroOperator
from .fa_toolbox import (
    ComplexPair, LinearOp, TOL_RANK, friedrichs_constant, harmonic_basis,
)
from .rational_linalg import exact_rank

RM_DIM = 6
BC_MODES = ("natural", "dirichlet")


class VoxelDomain:
    """Occupancy grid of nx * ny * nz unit voxels, indexed ``occ[i, j, k]``."""

    def __init__(self, nx: int, ny: int, nz: int, occupancy=None):
        if min(nx, ny, nz) < 1:
            raise DomainFormatError("grid dimensions must be positive")
        self.shape = (int(nx), int(ny), int(nz))
        if occupancy is None:
            occ = np.ones(self.shape, dtype=bool)
        else:
            occ = np.asarray(occupancy, dtype=bool)
            if occ.ndim == 1:
                if occ.size != nx * ny * nz:
                    raise DomainFormatError(
                        f"occupancy has {occ.size} entries, expected {nx * ny * nz}")
                occ = occ.reshape(self.shape)
            if occ.shape != self.shape:
                raise DomainFormatError(f"occupancy shape {occ.shape} != {self.shape}")
        if not occ.any():
            raise EmptyDomain("no occupied voxel")
        self.occupancy = occ.copy()
        self.occupancy.setflags(write=False)

    @property
    def nx(self):
        return self.shape[0]

    @property
    def ny(self):
        return self.shape[1]

    @property
    def nz(self):
        return self.shape[2]

    @classmethod
    def solid(cls, nx, ny, nz) -> "VoxelDomain":
        return cls(nx, ny, nz)

    def reflected(self, axis: int) -> "VoxelDomain":
        return VoxelDomain(*self.shape, np.flip(self.occupancy, axis=axis))

    def padded(self) -> np.ndarray:
        return np.pad(self.occupancy, 1, constant_values=False)

    def to_text(self) -> str:
        lines = [f"{self.nx} {self.ny} {self.nz}"]
        blocks = []
        for k in range(self.nz):
            blocks.append("\n".join(
                "".join("1" if self.occupancy[i, j, k] else "0" for i in range(self.nx))
                for j in range(self.ny)))
        return "\n".join(lines) + "\n" + "\n\n".join(blocks) + "\n"

    def __eq__(self, other):
        return (isinstance(other, VoxelDomain) and self.shape == other.shape
                and bool(np.array_equal(self.occupancy, other.occupancy)))

    def __repr__(self):
        return f"VoxelDomain{self.shape}[{int(self.occupancy.sum())} occupied]"


def parse_voxel_text(text: str) -> VoxelDomain:
    """Parse ``nx ny nz`` then nz blocks of ny lines of nx 0/1 characters."""
    lines = text.splitlines()
    if not lines:
        raise DomainFormatError("empty voxel file")
    try:
        nx, ny, nz = (int(t) for t in lines[0].split())
    except ValueError:
        raise DomainFormatError(f"bad header {lines[0]!r}; expected 'nx ny nz'") from None
    if min(nx, ny, nz) < 1:
        raise DomainFormatError("grid dimensions must be positive")
    rows = [ln.strip() for ln in lines[1:]]
    blocks, cur = [], []
    for ln in rows:
        if ln:
            cur.append(ln)
        elif cur:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    if len(blocks) != nz:
        raise DomainFormatError(f"expected {nz} blocks, found {len(blocks)}")
    occ = np.zeros((nx, ny, nz), dtype=bool)
    for k, block in enumerate(blocks):
        if len(block) != ny:
            raise DomainFormatError(f"block {k}: expected {ny} lines, found {len(block)}")
        for j, ln in enumerate(block):
            if len(ln) != nx or set(ln) - {"0", "1"}:
                raise DomainFormatError(f"block {k} line {j}: expected {nx} characters of 0/1")
            occ[:, j, k] = [c == "1" for c in ln]
    return VoxelDomain(nx, ny, nz, occ)


def read_voxel_file(path) -> VoxelDomain:
    return parse_voxel_text(Path(path).read_text())


@dataclass
class CubicalComplex:
    """Cells per dimension plus integer coboundary matrices D0, D1, D2."""

    cells: tuple              # 4 lists of doubled-coordinate triples
    incidence: tuple          # (D0, D1, D2) as scipy CSR int8
    bc_mode: str
    domain: VoxelDomain = field(repr=False)

    @property
    def counts(self) -> tuple:
        return tuple(len(c) for c in self.cells)

    @property
    def degenerate(self) -> bool:
        return any(n == 0 for n in self.counts)

    def D(self, k: int) -> sp.csr_matrix:
        """Coboundary k -> k+1; k = -1 and k = 3 give the empty maps."""
        if k == -1:
            return sp.csr_matrix((self.counts[0], 0), dtype=np.int8)
        if k == 3:
            return sp.csr_matrix((0, self.counts[3]), dtype=np.int8)
        return self.incidence[k]

    def euler_characteristic(self) -> int:
        n = self.counts
        return n[0] - n[1] + n[2] - n[3]

    def pair(self, k: int) -> ComplexPair:
        """Level-k piece C^{k-1} -> C^k -> C^{k+1} as a ComplexPair."""
        return ComplexPair(LinearOp(self.D(k - 1).toarray()), LinearOp(self.D(k).toarray()))

    def boundary_of_boundary_zero(self) -> bool:
        return all((self.D(k + 1) @ self.D(k)).count_nonzero() == 0 for k in range(2))


def _cell_dim(c) -> int:
    return (c[0] & 1) + (c[1] & 1) + (c[2] & 1)


def _voxels_touching(cell) -> list:
    """Voxel indices (i, j, k) whose closure contains the cell."""
    ranges = []
    for x in cell:
        ranges.append([x // 2] if x & 1 else [x // 2 - 1, x // 2])
    return list(itertools.product(*ranges))


def build_cubical_complex(domain: VoxelDomain, bc_mode: str = "natural") -> CubicalComplex:
    """Cubical complex of the occupied voxels.

    ``natural`` keeps every face of every occupied voxel; ``dirichlet``
    additionally drops cells touching an unoccupied (or outside) voxel.
    """
    if bc_mode == "full_dirichlet":
        bc_mode = "dirichlet"
    if bc_mode not in BC_MODES:
        raise ValueError(f"bc_mode must be one of {BC_MODES}")
    occ = domain.occupancy
    if not occ.any():
        raise EmptyDomain("no occupied voxel")
    padded = domain.padded()  # index shift by +1

    cellset = set()
    for i, j, k in zip(*np.nonzero(occ)):
        base = (2 * int(i), 2 * int(j), 2 * int(k))
        for d in itertools.product(range(3), repeat=3):
            cellset.add((base[0] + d[0], base[1] + d[1], base[2] + d[2]))

    if bc_mode == "dirichlet":
        cellset = {
            c for c in cellset
            if all(padded[v[0] + 1, v[1] + 1, v[2] + 1] for v in _voxels_touching(c))
        }

    by_dim = [[], [], [], []]
    for c in sorted(cellset):
        by_dim[_cell_dim(c)].append(c)
    index = [{c: n for n, c in enumerate(cs)} for cs in by_dim]

    mats = []
    for k in range(3):
        rows, cols, vals = [], [], []
        # D_k = transpose of boundary on (k+1)-cells
        for r, cell in enumerate(by_dim[k + 1]):
            axes = [a for a in range(3) if cell[a] & 1]
            for m, a in enumerate(axes):
                sign = 1 if m % 2 == 0 else -1
                for step, s in ((1, sign), (-1, -sign)):
                    face = list(cell)
                    face[a] += step
                    col = index[k].get(tuple(face))
                    if col is not None:
                        rows.append(r)
                        cols.append(col)
                        vals.append(s)
        mats.append(sp.csr_matrix(
            (np.array(vals, dtype=np.int8), (rows, cols)),
            shape=(len(by_dim[k + 1]), len(by_dim[k])), dtype=np.int8))
    return CubicalComplex(tuple(by_dim), tuple(mats), bc_mode, domain)


def betti_numbers(cx: CubicalComplex, exact: bool = True, tol_rank: float = TOL_RANK) -> tuple:
    """(b0, b1, b2, b3) of the cochain complex, b_k = dim N(D_k) - rank D_{k-1}."""
    if exact:
        ranks = [exact_rank(cx.D(k)) for k in range(3)]
    else:
        from .fa_toolbox import numerical_rank
        ranks = [numerical_rank(cx.D(k).toarray(), tol_rank) for k in range(3)]
    ranks = [0] + ranks + [0]  # D_{-1}, D0, D1, D2, D3
    n = cx.counts
    return tuple(n[k] - ranks[k + 1] - ranks[k] for k in range(4))


def dirichlet_neumann_fields(domain: VoxelDomain, k: int, kind: str,
                             tol_rank: float = TOL_RANK) -> np.ndarray:
    """Basis (columns) of discrete Dirichlet or Neumann fields of index k.

    Neumann fields of index k are the harmonic k-cochains of the natural
    complex; Dirichlet fields of index k are the harmonic (3-k)-cochains
    of the boundary-condition complex.  Either way the dimension is b_k.
    """
    if kind not in ("dirichlet", "neumann"):
        raise ValueError("kind must be 'dirichlet' or 'neumann'")
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    if kind == "neumann":
        cx, level = build_cubical_complex(domain, "natural"), k
    else:
        cx, level = build_cubical_complex(domain, "dirichlet"), 3 - k
        if cx.counts[level] == 0:
            raise DegenerateComplex(
                f"boundary conditions left no {level}-cells in {domain!r}")
    return harmonic_basis(cx.pair(level), tol_rank)


@dataclass
class TopologyReport:
    betti: tuple
    dirichlet_dim: int
    neumann_dim: int
    elasticity_dirichlet_dim: int
    elasticity_neumann_dim: int
    boundary_connected: bool
    no_handles: bool
    topologically_trivial: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["betti"] = list(self.betti)
        return d


def _harmonic_dim(domain, k, kind, tol_rank) -> int:
    try:
        return int(dirichlet_neumann_fields(domain, k, kind, tol_rank).shape[1])
    except DegenerateComplex:
        return 0


def elasticity_dims(domain: VoxelDomain, tol_rank: float = TOL_RANK) -> TopologyReport:
    """Betti numbers plus Dirichlet/Neumann dimensions, times dim RM for elasticity.

    Dirichlet vector fields count boundary components minus one (b2);
    Neumann vector fields count handles (b1).
    """
    betti = betti_numbers(build_cubical_complex(domain, "natural"))
    dirichlet = _harmonic_dim(domain, 2, "dirichlet", tol_rank)
    neumann = _harmonic_dim(domain, 1, "neumann", tol_rank)
    return TopologyReport(
        betti=betti,
        dirichlet_dim=dirichlet,
        neumann_dim=neumann,
        elasticity_dirichlet_dim=RM_DIM * dirichlet,
        elasticity_neumann_dim=RM_DIM * neumann,
        boundary_connected=betti[2] == 0,
        no_handles=betti[1] == 0,
        topologically_trivial=betti[1] == 0 and betti[2] == 0,
    )


def poincare_constant_grid(domain: VoxelDomain, k: int, bc_mode: str = "natural",
                           tol_rank: float = TOL_RANK) -> float:
    """Friedrichs constant of D_k on the unweighted cochains."""
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1 or 2")
    cx = build_cubical_complex(domain, bc_mode)
    D = cx.D(k)
    if D.shape[0] == 0 or D.shape[1] == 0 or D.count_nonzero() == 0:
        raise ZeroOperator(f"D{k} is empty in {bc_mode} mode")
    return friedrichs_constant(LinearOp(D.toarray()), tol_rank)


def grid_report(domain: VoxelDomain, bc_mode: str = "natural",
                tol_rank: float = TOL_RANK) -> dict:
    """Everything the CLI prints for a voxel domain."""
    cx = build_cubical_complex(domain, bc_mode)
    topo = elasticity_dims(domain, tol_rank)
    betti_bc = betti_numbers(cx)
    harmonic = []
    for level in range(4):
        if cx.counts[level] == 0:
            harmonic.append(0)
        else:
            harmonic.append(int(harmonic_basis(cx.pair(level), tol_rank).shape[1]))
    poincare = {}
    for k in range(3):
        try:
            poincare[str(k)] = poincare_constant_grid(domain, k, bc_mode, tol_rank)
        except ZeroOperator:
            poincare[str(k)] = None
    euler = cx.euler_characteristic()
    betti_euler = betti_bc[0] - betti_bc[1] + betti_bc[2] - betti_bc[3]
    return {
        "shape": list(domain.shape),
        "bc": bc_mode,
        "cell_counts": list(cx.counts),
        "betti": list(betti_bc),
        "harmonic_dims": harmonic,
        "topology": topo.to_dict(),
        "poincare_constants": poincare,
        "euler": {"cells": euler, "betti": betti_euler, "match": euler == betti_euler},
        "boundary_of_boundary_zero": cx.boundary_of_boundary_zero(),
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


# -- reference geometries

def solid_cube(n: int = 3) -> VoxelDomain:
    return VoxelDomain.solid(n, n, n)


def tunnel_cube(n: int = 3) -> VoxelDomain:
    """n^3 block with the central column along z removed (a solid torus)."""
    occ = np.ones((n, n, n), dtype=bool)
    occ[n // 2, n // 2, :] = False
    return VoxelDomain(n, n, n, occ)


def shell_cube(n: int = 3) -> VoxelDomain:
    """n^3 block with the central voxel removed (a spherical shell)."""
    occ = np.ones((n, n, n), dtype=bool)
    occ[n // 2, n // 2, n // 2] = False
    return VoxelDomain(n, n, n, occ)
