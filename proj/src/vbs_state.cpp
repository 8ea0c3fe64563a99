#include "vbs/vbs_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace vbs {

namespace {

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

struct EdgeExpander {
    const std::vector<Edge>& edges;
    std::vector<int> pos_a, pos_b;   // endpoint positions in the vertex list
    std::vector<int> total;          // per-vertex occupation totals
    std::vector<int> n_a, n_b;       // running occupations
    std::map<std::vector<int>, double>* terms;

    // Chooses the split p of each singlet power; p factors put a' on the
    // edge's first endpoint. Branches exceeding any vertex total are pruned.
    void walk(std::size_t e, double coeff) {
        if (e == edges.size()) {
            (*terms)[n_a] += coeff;
            return;
        }
        const int m = edges[e].multiplicity;
        const int ia = pos_a[e], ib = pos_b[e];
        for (int p = 0; p <= m; ++p) {
            const int da = p, db = m - p;
            n_a[ia] += da;
            n_b[ia] += db;
            n_b[ib] += da;
            n_a[ib] += db;
            const bool fits = n_a[ia] <= total[ia] && n_b[ia] <= total[ia] &&
                              n_a[ib] <= total[ib] && n_b[ib] <= total[ib];
            if (fits) {
                const double sign = (db % 2 == 0) ? 1.0 : -1.0;
                walk(e + 1, coeff * sign * binomial(m, p));
            }
            n_a[ia] -= da;
            n_b[ia] -= db;
            n_b[ib] -= da;
            n_a[ib] -= db;
        }
    }
};

}  // namespace

int SchwingerExpansion::vertex_pos(VertexId v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return -1;
    return static_cast<int>(it - vertices.begin());
}

SchwingerExpansion expand_singlet_product(const std::vector<VertexId>& vertices,
                                          const std::vector<Edge>& edges) {
    SchwingerExpansion ex;
    ex.vertices = vertices;
    std::sort(ex.vertices.begin(), ex.vertices.end());
    const std::size_t n = ex.vertices.size();
    ex.occupation_total.assign(n, 0);

    EdgeExpander walker{edges, {}, {}, {}, {}, {}, &ex.terms};
    for (const Edge& e : edges) {
        const int ia = ex.vertex_pos(e.a);
        const int ib = ex.vertex_pos(e.b);
        if (ia < 0 || ib < 0)
            throw Error(Errc::DimensionMismatch, "edge endpoint outside expansion vertex set");
        walker.pos_a.push_back(ia);
        walker.pos_b.push_back(ib);
        ex.occupation_total[static_cast<std::size_t>(ia)] += e.multiplicity;
        ex.occupation_total[static_cast<std::size_t>(ib)] += e.multiplicity;
    }
    walker.total = ex.occupation_total;
    walker.n_a.assign(n, 0);
    walker.n_b.assign(n, 0);
    walker.walk(0, 1.0);
    return ex;
}

StateVector map_to_spin_basis(const SchwingerExpansion& ex, const BasisIndexer& ix) {
    const std::size_t n = ex.vertices.size();
    if (static_cast<std::size_t>(ix.site_count()) != n)
        throw Error(Errc::DimensionMismatch, "indexer site count mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (ix.vertex(static_cast<int>(i)) != ex.vertices[i] ||
            ix.twice_spin(static_cast<int>(i)) != ex.occupation_total[i])
            throw Error(Errc::DimensionMismatch,
                        "indexer spins must equal the expansion occupation totals");
    }

    StateVector psi = zero_state(ix);
    std::vector<int> digits(n);
    for (const auto& [n_a, coeff] : ex.terms) {
        double weight = coeff;
        for (std::size_t i = 0; i < n; ++i) {
            const int nb = ex.occupation_total[i] - n_a[i];
            digits[i] = nb;  // d = S - m = n_b
            weight *= std::sqrt(factorial(n_a[i]) * factorial(nb));
        }
        psi.amplitudes(static_cast<Eigen::Index>(ix.index_of(digits))) += weight;
    }
    return psi;
}

StateVector vbs_schwinger(const MultiGraph& g, const SpinAssignment& s,
                          const NumericPolicy& policy) {
    const UniquenessCheck uc = check_uniqueness(g, s);
    if (!uc.unique)
        throw Error(Errc::UniquenessViolated,
                    "VBS construction requires the uniqueness condition 2S = I*M");
    const BasisIndexer ix = BasisIndexer::for_graph(g, s, policy);
    StateVector psi = map_to_spin_basis(expand_singlet_product(g.vertices, g.edges), ix);
    fix_phase(psi);
    return psi;
}

StateVector vbs_symmetrized(const MultiGraph& g, const NumericPolicy& policy) {
    for (const Edge& e : g.edges)
        if (e.multiplicity != 1)
            throw Error(Errc::NotBasicModel,
                        "symmetrized construction is defined for the basic model (all M = 1)");

    // One virtual spin-1/2 slot per (vertex, incident edge), vertex-major in
    // canonical order. Little-endian over slots, digit 1 = down.
    const std::size_t nv = g.vertex_count();
    std::vector<std::vector<std::size_t>> edge_slots(g.edge_count());  // [edge] -> slot of (a), (b)
    std::vector<int> z(nv, 0);
    std::vector<std::size_t> slot_base(nv, 0);
    for (std::size_t j = 0; j < g.edges.size(); ++j) {
        z[static_cast<std::size_t>(g.vertex_index(g.edges[j].a))]++;
        z[static_cast<std::size_t>(g.vertex_index(g.edges[j].b))]++;
    }
    std::size_t total_slots = 0;
    for (std::size_t i = 0; i < nv; ++i) {
        slot_base[i] = total_slots;
        total_slots += static_cast<std::size_t>(z[i]);
    }
    if (total_slots >= 63 || (std::size_t(1) << total_slots) > (policy.force ? SIZE_MAX : policy.dim_guard))
        throw Error(Errc::DimensionGuard, "virtual spin space exceeds the dimension guard");

    std::vector<int> slot_cursor(nv, 0);
    for (std::size_t j = 0; j < g.edges.size(); ++j) {
        const std::size_t ia = static_cast<std::size_t>(g.vertex_index(g.edges[j].a));
        const std::size_t ib = static_cast<std::size_t>(g.vertex_index(g.edges[j].b));
        edge_slots[j] = {slot_base[ia] + static_cast<std::size_t>(slot_cursor[ia]++),
                         slot_base[ib] + static_cast<std::size_t>(slot_cursor[ib]++)};
    }

    // Product of singlets: 2^E nonzero amplitudes in the virtual space.
    const std::size_t vdim = std::size_t(1) << total_slots;
    Eigen::VectorXcd virt = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(vdim));
    const double amp = std::pow(1.0 / std::sqrt(2.0), static_cast<double>(g.edge_count()));
    const std::size_t combos = std::size_t(1) << g.edge_count();
    for (std::size_t mask = 0; mask < combos; ++mask) {
        std::size_t index = 0;
        int sign = 1;
        for (std::size_t j = 0; j < g.edge_count(); ++j) {
            if (mask & (std::size_t(1) << j)) {
                index |= std::size_t(1) << edge_slots[j][1];  // up at a, down at b
            } else {
                index |= std::size_t(1) << edge_slots[j][0];  // down at a, up at b
                sign = -sign;
            }
        }
        virt(static_cast<Eigen::Index>(index)) += sign * amp;
    }

    // Symmetrize each vertex: contract its z slots down to the spin-S space.
    // Dims are little-endian: [physical 0..i-1, virtual i..nv-1].
    Eigen::VectorXcd cur = std::move(virt);
    std::size_t pre_dim = 1;
    std::size_t post_dim = vdim;
    for (std::size_t i = 0; i < nv; ++i) {
        const int zi = z[i];
        const std::size_t local = std::size_t(1) << zi;
        const int pdim = zi + 1;
        post_dim /= local;

        // P[d, c] = sqrt(n_up! n_down! / (2S)!) with d = popcount(c)
        Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(pdim, static_cast<Eigen::Index>(local));
        const double norm = std::sqrt(factorial(zi));
        for (std::size_t c = 0; c < local; ++c) {
            const int down = std::popcount(c);
            proj(down, static_cast<Eigen::Index>(c)) =
                std::sqrt(factorial(zi - down) * factorial(down)) / norm;
        }

        Eigen::VectorXcd next =
            Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pre_dim * pdim * post_dim));
        for (std::size_t post = 0; post < post_dim; ++post) {
            for (std::size_t c = 0; c < local; ++c) {
                const std::size_t src_base = pre_dim * (c + local * post);
                const int d = std::popcount(c);
                const double w = proj(d, static_cast<Eigen::Index>(c));
                const std::size_t dst_base = pre_dim * (static_cast<std::size_t>(d) +
                                                        static_cast<std::size_t>(pdim) * post);
                for (std::size_t pre = 0; pre < pre_dim; ++pre)
                    next(static_cast<Eigen::Index>(dst_base + pre)) +=
                        w * cur(static_cast<Eigen::Index>(src_base + pre));
            }
        }
        cur = std::move(next);
        pre_dim *= static_cast<std::size_t>(pdim);
    }

    SpinAssignment s = infer_spins(g);
    StateVector psi;
    psi.indexer = BasisIndexer::for_graph(g, s, policy);
    psi.amplitudes = std::move(cur);
    fix_phase(psi);
    return psi;
}

BlockVbs block_vbs(const MultiGraph& g, const Cut& cut, const SpinAssignment& s,
                   const NumericPolicy& policy) {
    std::vector<Edge> internal;
    for (const Edge& e : g.edges)
        if (cut.in_block(e.a) && cut.in_block(e.b)) internal.push_back(e);

    BlockVbs out;
    out.empty_product = internal.empty();
    out.expansion = expand_singlet_product(cut.block, internal);

    // internal occupation + cut multiplicity must reproduce 2S at each vertex
    for (std::size_t i = 0; i < out.expansion.vertices.size(); ++i) {
        const VertexId v = out.expansion.vertices[i];
        if (out.expansion.occupation_total[i] + cut.cut_multiplicity(v) != s.at(g, v))
            throw Error(Errc::UniquenessViolated,
                        "block occupations inconsistent with the spin at vertex " +
                            std::to_string(v));
    }

    std::vector<TwiceSpin> sub_spins(out.expansion.occupation_total.begin(),
                                     out.expansion.occupation_total.end());
    BasisIndexer sub_ix(out.expansion.vertices, sub_spins, policy);
    out.state = map_to_spin_basis(out.expansion, sub_ix);
    fix_phase(out.state);
    return out;
}

GroundSpaceBasis ground_space_basis(const MultiGraph& g, const Cut& cut,
                                    const SpinAssignment& s, const NumericPolicy& policy) {
    if (cut.block.size() < 2)
        throw Error(Errc::BlockTooSmall, "ground space basis needs N_b >= 2");

    const BlockVbs bv = block_vbs(g, cut, s, policy);
    GroundSpaceBasis out;
    out.indexer = BasisIndexer::for_subset(g, s, cut.block, policy);
    out.boundary_vertices = cut.boundary_block;

    const std::size_t nb = out.boundary_vertices.size();
    std::vector<int> deficit(nb), bpos(nb);
    std::size_t member_count = 1;
    for (std::size_t i = 0; i < nb; ++i) {
        deficit[i] = cut.cut_multiplicity(out.boundary_vertices[i]);
        bpos[i] = bv.expansion.vertex_pos(out.boundary_vertices[i]);
        member_count *= static_cast<std::size_t>(deficit[i]) + 1;
    }

    const std::size_t n = bv.expansion.vertices.size();
    std::vector<int> powers(nb, 0);
    std::vector<int> digits(n);
    for (std::size_t member = 0; member < member_count; ++member) {
        // decode mixed-radix member id into per-boundary-vertex a' powers
        std::size_t rem = member;
        for (std::size_t i = 0; i < nb; ++i) {
            powers[i] = static_cast<int>(rem % (static_cast<std::size_t>(deficit[i]) + 1));
            rem /= static_cast<std::size_t>(deficit[i]) + 1;
        }

        StateVector psi = zero_state(out.indexer);
        for (const auto& [n_a, coeff] : bv.expansion.terms) {
            double weight = coeff;
            for (std::size_t i = 0; i < n; ++i) {
                int na = n_a[i];
                int nb_occ = bv.expansion.occupation_total[i] - n_a[i];
                for (std::size_t bi = 0; bi < nb; ++bi) {
                    if (bpos[bi] == static_cast<int>(i)) {
                        na += powers[bi];
                        nb_occ += deficit[bi] - powers[bi];
                    }
                }
                digits[i] = nb_occ;
                weight *= std::sqrt(factorial(na) * factorial(nb_occ));
            }
            psi.amplitudes(static_cast<Eigen::Index>(out.indexer.index_of(digits))) += weight;
        }
        const double nrm = psi.norm();
        if (nrm > 0.0) psi.amplitudes /= nrm;
        fix_phase(psi);
        out.states.push_back(std::move(psi));
        out.boundary_powers.push_back(powers);
    }
    return out;
}

}  // namespace vbs
