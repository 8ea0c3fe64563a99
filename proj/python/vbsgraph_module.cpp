#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vbs/closed_form.hpp"
#include "vbs/coherent.hpp"
#include "vbs/density.hpp"

namespace py = pybind11;
using namespace vbs;

namespace {

SpinAssignment spins_or_inferred(const MultiGraph& g,
                                 const std::optional<std::vector<int>>& twice_spins) {
    if (!twice_spins) return infer_spins(g);
    if (twice_spins->size() != g.vertex_count())
        throw Error(Errc::DimensionMismatch, "one doubled spin per vertex expected");
    SpinAssignment s;
    s.twice_spin.assign(twice_spins->begin(), twice_spins->end());
    return s;
}

SparseOp to_sparse(const Eigen::MatrixXcd& dense) {
    std::vector<Eigen::Triplet<cplx>> trips;
    for (Eigen::Index j = 0; j < dense.cols(); ++j)
        for (Eigen::Index i = 0; i < dense.rows(); ++i)
            if (dense(i, j) != cplx(0, 0))
                trips.emplace_back(static_cast<int>(i), static_cast<int>(j), dense(i, j));
    SparseOp s(dense.rows(), dense.cols());
    s.setFromTriplets(trips.begin(), trips.end());
    return s;
}

}  // namespace

PYBIND11_MODULE(vbsgraph, m) {
    m.doc() = "AKLT models on multigraphs: VBS states, block density matrices, "
              "entanglement spectra, and the coherent-state partition function.";

    py::register_exception<Error>(m, "VbsError");

    py::class_<Edge>(m, "Edge")
        .def_readonly("a", &Edge::a)
        .def_readonly("b", &Edge::b)
        .def_readonly("multiplicity", &Edge::multiplicity)
        .def("__repr__", [](const Edge& e) {
            return "Edge(" + std::to_string(e.a) + ", " + std::to_string(e.b) + ", M=" +
                   std::to_string(e.multiplicity) + ")";
        });

    py::class_<MultiGraph>(m, "MultiGraph")
        .def_readonly("vertices", &MultiGraph::vertices)
        .def_readonly("edges", &MultiGraph::edges)
        .def_readonly("connected", &MultiGraph::connected)
        .def("degree", &MultiGraph::degree)
        .def("multiplicity_sum", &MultiGraph::multiplicity_sum);

    py::class_<ParsedGraph>(m, "ParsedGraph")
        .def_readonly("graph", &ParsedGraph::graph)
        .def_readonly("default_block", &ParsedGraph::default_block)
        .def_readonly("spin_overrides", &ParsedGraph::spin_overrides);

    py::class_<Cut>(m, "Cut")
        .def_readonly("block", &Cut::block)
        .def_readonly("environment", &Cut::environment)
        .def_readonly("cut_edges", &Cut::cut_edges)
        .def_readonly("boundary_block", &Cut::boundary_block)
        .def_readonly("boundary_env", &Cut::boundary_env)
        .def_property_readonly("L", &Cut::boundary_size)
        .def_property_readonly("n_b", &Cut::block_size);

    py::class_<BasisIndexer>(m, "BasisIndexer")
        .def_property_readonly("dim", &BasisIndexer::dim)
        .def_property_readonly("vertices", &BasisIndexer::vertices)
        .def("twice_spin", &BasisIndexer::twice_spin)
        .def("local_dim", &BasisIndexer::local_dim)
        .def("digit", &BasisIndexer::digit)
        .def("twice_m", &BasisIndexer::twice_m);

    py::class_<StateVector>(m, "StateVector")
        .def_readonly("indexer", &StateVector::indexer)
        .def_property_readonly("amplitudes",
                               [](const StateVector& s) { return s.amplitudes; })
        .def_property_readonly("dim", &StateVector::dim)
        .def("norm", &StateVector::norm)
        .def("squared_norm", &StateVector::squared_norm);

    py::class_<DensitySpectrum>(m, "DensitySpectrum")
        .def_readonly("eigenvalues", &DensitySpectrum::eigenvalues)
        .def_readonly("eigenvectors", &DensitySpectrum::eigenvectors)
        .def_readonly("zero_threshold", &DensitySpectrum::zero_threshold)
        .def_readonly("support_dim", &DensitySpectrum::support_dim);

    py::class_<EntropyReport>(m, "EntropyReport")
        .def_readonly("von_neumann", &EntropyReport::von_neumann)
        .def_readonly("renyi", &EntropyReport::renyi)
        .def_readonly("saturation", &EntropyReport::saturation);

    py::class_<TheoremReport>(m, "TheoremReport")
        .def_readonly("max_edge_residual", &TheoremReport::max_edge_residual)
        .def_readonly("hb_rho_residual", &TheoremReport::hb_rho_residual)
        .def_readonly("max_eigvec_residual", &TheoremReport::max_eigvec_residual)
        .def_readonly("support_dim", &TheoremReport::support_dim)
        .def_readonly("degeneracy", &TheoremReport::degeneracy)
        .def_readonly("nullity", &TheoremReport::null_dim)
        .def_readonly("dim", &TheoremReport::dim)
        .def_readonly("verdict", &TheoremReport::verdict);

    py::class_<PartitionEstimate>(m, "PartitionEstimate")
        .def_readonly("mean", &PartitionEstimate::mean)
        .def_readonly("standard_error", &PartitionEstimate::standard_error)
        .def_readonly("sample_count", &PartitionEstimate::sample_count)
        .def_readonly("seed", &PartitionEstimate::seed);

    py::class_<Rational>(m, "Rational")
        .def_property_readonly("num", &Rational::num)
        .def_property_readonly("den", &Rational::den)
        .def("value", &Rational::value)
        .def("__str__", &Rational::str)
        .def("__repr__", [](const Rational& r) { return "Rational(" + r.str() + ")"; });

    m.def("parse_graph", &parse_graph, py::arg("text"),
          "Parse the line-oriented graph format (e/v/block/spin directives).");
    m.def(
        "infer_spins",
        [](const MultiGraph& g) { return infer_spins(g).twice_spin; }, py::arg("graph"),
        "Doubled spins 2S_l = sum of incident multiplicities.");
    m.def(
        "check_uniqueness",
        [](const MultiGraph& g, const std::vector<int>& twice_spins) {
            SpinAssignment s;
            s.twice_spin.assign(twice_spins.begin(), twice_spins.end());
            auto uc = check_uniqueness(g, s);
            return py::make_tuple(uc.unique, uc.residual);
        },
        py::arg("graph"), py::arg("twice_spins"));
    m.def("cut_graph", &cut_graph, py::arg("graph"), py::arg("block"));
    m.def("degeneracy_formula", &degeneracy_formula, py::arg("cut"));

    m.def(
        "vbs_schwinger",
        [](const MultiGraph& g, const std::optional<std::vector<int>>& twice_spins) {
            return vbs_schwinger(g, spins_or_inferred(g, twice_spins));
        },
        py::arg("graph"), py::arg("twice_spins") = std::nullopt,
        "VBS ground state via the Schwinger boson expansion (unnormalized).");
    m.def(
        "vbs_symmetrized", [](const MultiGraph& g) { return vbs_symmetrized(g); },
        py::arg("graph"), "VBS state via singlets and vertex symmetrization (all M = 1).");

    m.def(
        "density_matrix",
        [](const StateVector& state, const Cut& cut) { return density_matrix(state, cut).rho; },
        py::arg("state"), py::arg("cut"), "Reduced density matrix of the block, unit trace.");
    m.def(
        "spectrum", [](const Eigen::MatrixXcd& rho) { return spectrum(rho); }, py::arg("rho"));
    m.def(
        "entropies",
        [](const DensitySpectrum& spec, const std::vector<double>& alphas, long deg) {
            return entropies(spec, alphas, deg);
        },
        py::arg("spectrum"), py::arg("alphas"), py::arg("degeneracy") = 0);

    m.def(
        "full_hamiltonian",
        [](const MultiGraph& g, const std::optional<std::vector<int>>& twice_spins) {
            const SpinAssignment s = spins_or_inferred(g, twice_spins);
            const BasisIndexer ix = BasisIndexer::for_graph(g, s);
            return Eigen::MatrixXcd(full_hamiltonian(g, s, {}, ix));
        },
        py::arg("graph"), py::arg("twice_spins") = std::nullopt,
        "Dense AKLT Hamiltonian with unit projector weights.");
    m.def(
        "block_hamiltonian",
        [](const MultiGraph& g, const Cut& cut,
           const std::optional<std::vector<int>>& twice_spins) {
            return Eigen::MatrixXcd(
                block_hamiltonian(g, cut, spins_or_inferred(g, twice_spins), {}).op);
        },
        py::arg("graph"), py::arg("cut"), py::arg("twice_spins") = std::nullopt);
    m.def(
        "nullity",
        [](const Eigen::MatrixXcd& h) {
            auto ns = nullity(to_sparse(h));
            return py::make_tuple(ns.dimension, ns.basis);
        },
        py::arg("hamiltonian"), "Zero-energy space dimension and an orthonormal basis.");
    m.def(
        "ground_space_basis",
        [](const MultiGraph& g, const Cut& cut,
           const std::optional<std::vector<int>>& twice_spins) {
            auto basis = ground_space_basis(g, cut, spins_or_inferred(g, twice_spins));
            std::vector<Eigen::VectorXcd> out;
            for (const auto& st : basis.states) out.push_back(st.amplitudes);
            return out;
        },
        py::arg("graph"), py::arg("cut"), py::arg("twice_spins") = std::nullopt,
        "Boundary-monomial ground states of the block Hamiltonian (normalized).");
    m.def(
        "verify_theorem",
        [](const MultiGraph& g, const Cut& cut, const StateVector& state,
           const std::optional<std::vector<int>>& twice_spins) {
            return verify_theorem(g, cut, spins_or_inferred(g, twice_spins), {}, state);
        },
        py::arg("graph"), py::arg("cut"), py::arg("state"),
        py::arg("twice_spins") = std::nullopt);

    m.def("basic_chain_eigenvalues",
          [](int n_b) {
              auto ev = basic_chain_eigenvalues(n_b);
              return py::make_tuple(ev.lambda0, ev.lambda1);
          },
          py::arg("n_b"), "Exact (Lambda_0, Lambda_1) for the spin-1 chain block.");
    m.def("lambda_ls", &lambda_ls, py::arg("l"), py::arg("spin"));
    m.def("lambda_lm", &lambda_lm, py::arg("l"), py::arg("multiplicity"));

    m.def("coherent_state", &coherent_state, py::arg("twice_spin"), py::arg("theta"),
          py::arg("phi"));
    m.def("identity_resolution_quadrature", &identity_resolution_quadrature,
          py::arg("twice_spin"));
    m.def(
        "mc_partition",
        [](const MultiGraph& g, std::size_t samples, std::uint64_t seed,
           const std::optional<std::vector<int>>& twice_spins, int threads) {
            return mc_partition(g, spins_or_inferred(g, twice_spins), samples, seed, threads);
        },
        py::arg("graph"), py::arg("samples"), py::arg("seed"),
        py::arg("twice_spins") = std::nullopt, py::arg("threads") = 0,
        "Monte Carlo estimate of Tr|VBS><VBS| from the classical edge weights.");
}
