"""Smoke tests for the vbsgraph extension module."""

import math

import numpy as np

import vbsgraph as vg


def test_parse_and_spins():
    parsed = vg.parse_graph("e 0 1 1\ne 1 2 1\n")
    g = parsed.graph
    assert g.vertices == [0, 1, 2]
    assert [e.multiplicity for e in g.edges] == [1, 1]
    assert g.connected
    assert vg.infer_spins(g) == [1, 2, 1]
    ok, residual = vg.check_uniqueness(g, [1, 2, 1])
    assert ok and not residual.any()


def test_chain_spectrum_matches_closed_form():
    parsed = vg.parse_graph(
        "e 0 1 1\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\n"
    )
    g = parsed.graph
    cut = vg.cut_graph(g, [2, 3])
    psi = vg.vbs_schwinger(g)
    rho = vg.density_matrix(psi, cut)
    assert rho.shape == (9, 9)
    assert abs(np.trace(rho) - 1.0) < 1e-12

    spec = vg.spectrum(rho)
    lam0, lam1 = vg.basic_chain_eigenvalues(2)
    assert str(lam0) == "1/3" and str(lam1) == "2/9"
    assert abs(spec.eigenvalues[0] - lam0.value()) < 1e-10
    for i in range(1, 4):
        assert abs(spec.eigenvalues[i] - lam1.value()) < 1e-10
    assert spec.support_dim == 4
    assert vg.degeneracy_formula(cut) == 4

    ent = vg.entropies(spec, [1.0, 2.0], vg.degeneracy_formula(cut))
    expected = -(1 / 3) * math.log(1 / 3) - (2 / 3) * math.log(2 / 9)
    assert abs(ent.von_neumann - expected) < 1e-10


def test_theorem_and_ground_space():
    parsed = vg.parse_graph("e 0 1 1\ne 0 2 1\ne 0 3 1\n")
    g = parsed.graph
    cut = vg.cut_graph(g, [0, 1])
    psi = vg.vbs_schwinger(g)
    report = vg.verify_theorem(g, cut, psi)
    assert report.verdict
    assert report.degeneracy == 3 == report.nullity

    hb = vg.block_hamiltonian(g, cut)
    dim, basis = vg.nullity(hb)
    assert dim == 3
    assert np.allclose(basis.conj().T @ basis, np.eye(3), atol=1e-12)

    members = vg.ground_space_basis(g, cut)
    assert len(members) == 3
    for v in members:
        assert np.linalg.norm(hb @ v) < 1e-10


def test_constructions_agree():
    parsed = vg.parse_graph("e 0 1 1\ne 1 2 1\ne 0 2 1\n")
    g = parsed.graph
    a = vg.vbs_schwinger(g)
    b = vg.vbs_symmetrized(g)
    overlap = abs(np.vdot(a.amplitudes, b.amplitudes)) / (a.norm() * b.norm())
    assert abs(overlap - 1.0) < 1e-10

    h = vg.full_hamiltonian(g)
    assert np.linalg.norm(h @ a.amplitudes) / a.norm() < 1e-10


def test_partition_and_coherent():
    parsed = vg.parse_graph("e 0 1 1\n")
    g = parsed.graph
    est = vg.mc_partition(g, 100000, 11)
    assert abs(est.mean - 2.0) < 5 * est.standard_error
    repeat = vg.mc_partition(g, 100000, 11, threads=2)
    assert repeat.mean == est.mean

    psi = vg.coherent_state(1, 0.0, 0.0)
    assert abs(psi[0] - 1.0) < 1e-14
    assert vg.identity_resolution_quadrature(4) < 1e-12


def test_errors_are_typed():
    try:
        vg.parse_graph("e 0 0 1\n")
    except vg.VbsError as err:
        assert "SelfLoop" in str(err)
    else:
        raise AssertionError("self-loop must raise")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
    print("smoke tests passed")
