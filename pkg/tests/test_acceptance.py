"""Acceptance criteria, one test per criterion.

The terminal summary (see conftest.py) prints a PASS/FAIL line for each.
"""
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

import oracle
from complexforge.elasticity import (
    RM_DIM, as_rigid_motion, decompose_div_domain, decompose_rotrot_domain,
    potential_div_sym, potential_rot_rot_t, potential_sym_grad, rigid_motion_basis,
)
from complexforge.exact_poly import (
    IDENTITY_ARITY, IDENTITY_IDS, FieldSampler, PolyScalarField as S,
    PolyTensorField as Tn, PolyVectorField as V, cutting_div, cutting_rotrot_residual,
    dumps, residual_is_zero, rot_rot_t, sym_grad, tensor_div, verify_appendix_identity,
)
from complexforge.exact_poly.identities import SYMMETRIC_ONLY
from complexforge.fa_toolbox import (
    ComplexPair, InnerProductSpace, LinearOp, friedrichs_extremal, harmonic_basis,
    helmholtz_split, kernel_basis,
)
from complexforge.grid_complex import (
    VoxelDomain, betti_numbers, build_cubical_complex, elasticity_dims, shell_cube,
    solid_cube, tunnel_cube,
)
from complexforge.rational_linalg import exact_rank

TRIALS = 100


def samplers(seed, n=TRIALS, degree=4):
    return (FieldSampler(seed=f"{seed}:{t}", degree=degree, terms=4) for t in range(n))


def test_criterion_1_tensor_identities_and_cutoff_rules():
    t0 = time.perf_counter()
    failures = []
    for t, s in enumerate(samplers("identities")):
        u, v, M, phi = s.scalar(), s.vector(), s.tensor(), s.scalar()
        Msym = (M + M.T) / 2
        args = {"u": u, "v": v}
        for ident in IDENTITY_IDS:
            arity = IDENTITY_ARITY[ident]
            arg = args.get(arity, Msym if ident in SYMMETRIC_ONLY else M)
            if not residual_is_zero(verify_appendix_identity(ident, **{arity: arg})):
                failures.append((t, ident))
        if not cutting_div(phi, M).is_zero():
            failures.append((t, "cutting_div"))
        if not cutting_rotrot_residual(phi, Msym).is_zero():
            failures.append((t, "cutting_rotrot"))
    elapsed = time.perf_counter() - t0
    assert failures == []
    assert elapsed < 60, f"identity suite took {elapsed:.1f}s"


def test_criterion_2_complex_properties():
    for s in samplers("complex"):
        assert rot_rot_t(sym_grad(s.vector())).is_zero()
        assert tensor_div(rot_rot_t(s.symmetric_tensor())).is_zero()


def test_criterion_3_potential_round_trips():
    for s in samplers("roundtrip"):
        M = sym_grad(s.vector())
        assert sym_grad(potential_sym_grad(M)) == M
        N = rot_rot_t(s.symmetric_tensor())
        assert rot_rot_t(potential_rot_rot_t(N)) == N
        v = s.vector()
        assert tensor_div(potential_div_sym(v)) == v


def _hand_landmark():
    # (|x|^2 I - x x^T) / 6 written out monomial by monomial
    sq = [(2, 0, 0), (0, 2, 0), (0, 0, 2)]
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            if i == j:
                row.append(S({sq[k]: Fraction(1, 6) for k in range(3) if k != i}))
            else:
                m = tuple(int(a == i) + int(a == j) for a in range(3))
                row.append(S({m: Fraction(-1, 6)}))
        rows.append(row)
    return Tn(rows)


def test_criterion_4_landmark_value():
    P = potential_rot_rot_t(Tn.identity())
    assert dumps(P) == dumps(_hand_landmark())
    assert rot_rot_t(P) == Tn.identity()
    assert oracle.ten_from_sym(oracle.RotRotT(oracle.to_sym(P))) == Tn.identity()


def test_criterion_5_regular_decompositions():
    for s in samplers("decompose"):
        M = s.symmetric_tensor()
        a = decompose_rotrot_domain(M)
        assert a.residual_zero and a.smooth_part.is_symmetric()
        assert a.smooth_part + sym_grad(a.potential_part) == M
        b = decompose_div_domain(M)
        assert b.residual_zero and b.smooth_part.is_symmetric()
        assert b.smooth_part + rot_rot_t(b.potential_part) == M


def test_criterion_6_rigid_motion_gauge():
    basis = rigid_motion_basis()
    assert RM_DIM == 6 == len(basis)
    monos = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    coeff_matrix = [[r[i].coeff(m) for i in range(3) for m in monos] for r in basis]
    assert exact_rank(coeff_matrix) == 6
    for s in samplers("gauge", n=50):
        w = s.vector()
        diff = potential_sym_grad(sym_grad(w)) - w
        coeffs = as_rigid_motion(diff)
        assert coeffs is not None
        recon = V.zero()
        for c, r in zip(coeffs, basis):
            recon = recon + r * c
        assert recon == diff


def _toy_pairs():
    rng = np.random.default_rng(0)
    toy = ComplexPair(LinearOp([[1.0], [0.0]]), LinearOp([[0.0, 1.0]]))
    zero = ComplexPair(LinearOp.zero(3, 0), LinearOp.zero(0, 3))
    g = rng.standard_normal((4, 4))
    h1 = InnerProductSpace(4, g @ g.T + 4 * np.eye(4))
    weighted = ComplexPair(
        LinearOp(np.array([[1.0], [1.0], [0.0], [0.0]]), InnerProductSpace(1), h1),
        LinearOp(np.array([[0.0, 0.0, 1.0, 0.0]]), h1, InnerProductSpace(1)))
    return {"toy": toy, "zero_maps": zero, "weighted": weighted}


def _grid_pairs():
    out = {}
    for name, d in (("solid", solid_cube()), ("tunnel", tunnel_cube()), ("shell", shell_cube())):
        for mode in ("natural", "dirichlet"):
            cx = build_cubical_complex(d, mode)
            for k in range(4):
                if cx.counts[k]:
                    out[f"{name}-{mode}-{k}"] = cx.pair(k)
    return out


def test_criterion_7_topology_suite():
    t0 = time.perf_counter()
    expected = {"solid": (solid_cube(), (1, 0, 0, 0)),
                "tunnel": (tunnel_cube(), (1, 1, 0, 0)),
                "shell": (shell_cube(), (1, 0, 1, 0))}
    for name, (domain, betti) in expected.items():
        cx = build_cubical_complex(domain)
        assert betti_numbers(cx, exact=True) == betti, name
        for k in range(4):
            assert harmonic_basis(cx.pair(k)).shape[1] == betti[k], (name, k)
    assert elasticity_dims(tunnel_cube()).elasticity_neumann_dim == 6
    assert elasticity_dims(shell_cube()).elasticity_dirichlet_dim == 6
    assert time.perf_counter() - t0 < 120


@pytest.mark.parametrize("name,pair", list({**_toy_pairs(), **_grid_pairs()}.items()))
def test_criterion_8_helmholtz(name, pair):
    rng = np.random.default_rng(8)
    h1 = pair.h1
    for _ in range(TRIALS):
        x = rng.standard_normal(pair.dims[1])
        split = helmholtz_split(pair, x)
        parts = split.parts()
        xn = h1.norm(x)
        assert h1.norm(x - sum(parts)) <= 1e-10 * xn
        for i in range(3):
            for j in range(i + 1, 3):
                assert abs(h1.inner(parts[i], parts[j])) <= 1e-10 * xn ** 2


def _friedrichs_ops():
    ops = {"path3": LinearOp([[-1.0, 1.0, 0.0], [0.0, -1.0, 1.0]])}
    for name, d in (("bar", VoxelDomain(3, 1, 1)), ("tunnel", tunnel_cube())):
        cx = build_cubical_complex(d)
        for k in range(3):
            ops[f"{name}-D{k}"] = LinearOp(cx.D(k).toarray())
    return ops


def test_criterion_9_friedrichs_path_graph_value():
    c, _ = friedrichs_extremal(_friedrichs_ops()["path3"])
    lam = 2 * (1 - np.cos(np.pi / 3))
    assert abs(c - 1.0) <= 1e-10
    assert abs(c - 1 / np.sqrt(lam)) <= 1e-10


@pytest.mark.parametrize("name", list(_friedrichs_ops()))
def test_criterion_9_friedrichs_sampled_bound(name):
    op = _friedrichs_ops()[name]
    c, _ = friedrichs_extremal(op)
    K = kernel_basis(op)
    rng = np.random.default_rng(9)
    xs = rng.standard_normal((10_000, op.shape[1]))
    if K.size:
        xs = xs - (xs @ K) @ K.T  # project onto N(D)^perp
    ratios = np.linalg.norm(xs, axis=1) / np.linalg.norm(xs @ op.matrix.T, axis=1)
    assert ratios.max() <= c + 1e-9


def test_criterion_10_determinism(tmp_path):
    vox = tmp_path / "tunnel.txt"
    vox.write_text(tunnel_cube().to_text())
    commands = [
        ["verify", "identities", "--degree", "4", "--trials", "20", "--seed", "7"],
        ["verify", "potentials", "--degree", "3", "--trials", "10", "--seed", "11"],
        ["grid", "--in", str(vox), "--seed", "1"],
        ["helmholtz", "--grid", str(vox), "--trials", "20", "--seed", "5"],
    ]
    for argv in commands:
        runs = [subprocess.run([sys.executable, "-m", "complexforge", *argv, "--no-timestamp"],
                               capture_output=True) for _ in range(2)]
        assert runs[0].returncode == 0, runs[0].stderr.decode()
        assert runs[0].stdout == runs[1].stdout
