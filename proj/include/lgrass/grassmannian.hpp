#pragma once

#include "lgrass/forms.hpp"

#include <string>
#include <vector>

namespace lgrass {

// A constant-rank family of subspaces F_w, one basis matrix per graph
// vertex.
struct LinkedSubbundle {
    int r = 0;
    std::vector<Mat> bases; // per vertex, t x r

    void validate(const PrelinkedDiagram& d) const {
        if (int(bases.size()) != d.graph.size())
            throw ValidationError("subbundle needs one basis per graph vertex");
        for (int w = 0; w < d.graph.size(); ++w)
            if (bases[w].rows() != d.dims[w] || bases[w].cols() != r)
                throw ValidationError("subbundle basis shape mismatch at " +
                                      md_str(d.graph.vertices[w]));
    }
};

inline bool is_linked_subbundle(const LinkedSubbundle& f, const PrelinkedDiagram& d) {
    f.validate(d);
    for (int w = 0; w < d.graph.size(); ++w)
        if (rank(f.bases[w]) != f.r) return false;
    for (size_t e = 0; e < d.maps.size(); ++e) {
        const auto& edge = d.graph.edges[e];
        if (!solve(f.bases[edge.head], d.maps[e] * f.bases[edge.tail]))
            return false;
    }
    return true;
}

// The rank-r diagram induced on the subbundle, with edge maps written in
// the subbundle bases.
inline PrelinkedDiagram restricted_diagram(const LinkedSubbundle& f,
                                           const PrelinkedDiagram& d) {
    f.validate(d);
    PrelinkedDiagram r;
    r.graph = d.graph;
    r.dims.assign(d.graph.size(), f.r);
    r.s = d.s;
    for (size_t e = 0; e < d.maps.size(); ++e) {
        const auto& edge = d.graph.edges[e];
        auto sol = solve(f.bases[edge.head], d.maps[e] * f.bases[edge.tail]);
        if (!sol)
            throw ValidationError("edge " + std::to_string(e) +
                                  " does not preserve the subbundle");
        r.maps.push_back(*sol);
    }
    return r;
}

inline bool is_isotropic(const LinkedSubbundle& f, const LinkedForm& form,
                         const PrelinkedDiagram& d) {
    f.validate(d);
    for (int w = 0; w < d.graph.size(); ++w)
        for (int wp = 0; wp < d.graph.size(); ++wp)
            if (!(f.bases[w].transpose() * form.pairing(w, wp) * f.bases[wp]).is_zero())
                return false;
    return true;
}

// Tangent dimension of the subbundle locus at a simple point.
inline long lg_tangent_dimension(const LinkedSubbundle& f, const PrelinkedDiagram& d,
                                 uint64_t seed = 0) {
    PrelinkedDiagram restricted = restricted_diagram(f, d);
    auto simplicity = is_simple(restricted, seed);
    if (simplicity.status != SimplicityStatus::Simple)
        throw ValidationError("tangent dimension requires a simple point: " +
                              simplicity.evidence);
    WDecomposition dec = w_decomposition(simplicity.cert, restricted);
    long total = 0;
    int t = d.uniform_dim();
    for (int rw : dec.ranks) total += long(rw) * (t - f.r);
    if (total != long(f.r) * (t - f.r))
        throw MathCheckError("tangent dimension disagrees with r(t-r)");
    return total;
}

// Everything needed to express tangent vectors at an internally simple
// isotropic point: the induced rank-r diagram, a witness decomposition
// supported on internally closed vertices, and complements of F_w.
struct TangentFrame {
    PrelinkedDiagram restricted;
    WDecomposition dec;
    std::vector<Mat> complements; // per vertex, t x (t - r)
};

inline TangentFrame make_tangent_frame(const LinkedSubbundle& f,
                                       const PrelinkedDiagram& d, const Multidegree& m,
                                       uint64_t seed = 0) {
    TangentFrame frame;
    frame.restricted = restricted_diagram(f, d);
    auto simplicity = is_internally_simple(frame.restricted, m, seed);
    if (simplicity.status != SimplicityStatus::Simple)
        throw ValidationError("subbundle is not internally simple: " +
                              simplicity.evidence);
    frame.dec = w_decomposition(simplicity.cert, frame.restricted);
    int t = d.uniform_dim();
    for (int w = 0; w < d.graph.size(); ++w) {
        if (seed == 0) {
            frame.complements.push_back(complement_basis(f.bases[w], t));
        } else {
            Rng rng(seed + w);
            for (;;) {
                Mat c = rng.matrix(t, t - f.r);
                Mat full = f.bases[w];
                full.append_columns(c);
                if (invertible(full)) {
                    frame.complements.push_back(c);
                    break;
                }
            }
        }
    }
    return frame;
}

// Per-vertex maps W_w -> E_w/F_w, written against the frame's complement
// bases; phi[w] is (t - r) x dec.ranks[w].
struct TangentVector {
    std::vector<Mat> phi;
};

inline TangentVector zero_tangent_vector(const TangentFrame& frame,
                                         const PrelinkedDiagram& d) {
    TangentVector v;
    int codim = d.uniform_dim() - frame.restricted.uniform_dim();
    for (int w = 0; w < d.graph.size(); ++w)
        v.phi.emplace_back(codim, frame.dec.ranks[w]);
    return v;
}

// The pairing that a tangent vector induces on the decomposition
// subspaces: lift each phi through the complement and pair against the
// ambient form on both sides.
inline Mat tangent_pairing_on_w(const TangentVector& v, const LinkedSubbundle& f,
                                const TangentFrame& frame, const LinkedForm& form,
                                const PrelinkedDiagram& d) {
    const LinkedGraph& g = d.graph;
    int n = g.size();
    int r = 0;
    std::vector<int> offset(n, 0);
    for (int w = 0; w < n; ++w) {
        offset[w] = r;
        r += frame.dec.ranks[w];
    }
    Mat out(r, r);
    for (int u = 0; u < n; ++u) {
        if (frame.dec.ranks[u] == 0) continue;
        Mat ambient_u = f.bases[u] * frame.dec.basis[u];
        Mat lift_u = frame.complements[u] * v.phi[u];
        for (int up = 0; up < n; ++up) {
            if (frame.dec.ranks[up] == 0) continue;
            Mat ambient_up = f.bases[up] * frame.dec.basis[up];
            Mat lift_up = frame.complements[up] * v.phi[up];
            Mat block = lift_u.transpose() * form.pairing(u, up) * ambient_up +
                        ambient_u.transpose() * form.pairing(u, up) * lift_up;
            for (int i = 0; i < block.rows(); ++i)
                for (int j = 0; j < block.cols(); ++j)
                    out(offset[u] + i, offset[up] + j) = block(i, j);
        }
    }
    return out;
}

// The alternating form on the subbundle induced by a tangent vector.
inline LinkedForm induced_form(const TangentVector& v, const LinkedSubbundle& f,
                               const TangentFrame& frame, const LinkedForm& form,
                               const PrelinkedDiagram& d) {
    if (!is_isotropic(f, form, d))
        throw ValidationError("induced form requires an isotropic subbundle");
    Mat on_w = tangent_pairing_on_w(v, f, frame, form, d);
    return extend_from_restriction(frame.restricted, frame.dec, on_w, form.m,
                                   FormKind::Alternating);
}

struct TangentMapRank {
    long rank = 0;
    bool surjective = false;
};

// Exact rank of the map from tangent vectors to alternating forms on the
// subbundle, in the coordinates of the restriction isomorphism.
inline TangentMapRank tangent_map_rank(const LinkedSubbundle& f, const LinkedForm& form,
                                       const PrelinkedDiagram& d, const Multidegree& m,
                                       uint64_t seed = 0) {
    if (!is_linked_subbundle(f, d))
        throw ValidationError("tangent map requires a linked subbundle");
    if (!is_isotropic(f, form, d))
        throw ValidationError("tangent map requires an isotropic subbundle");
    TangentFrame frame = make_tangent_frame(f, d, m, seed);
    int t = d.uniform_dim();
    int n = d.graph.size();
    int codim = t - f.r;

    int rtotal = 0;
    std::vector<int> offset(n, 0);
    for (int w = 0; w < n; ++w) {
        offset[w] = rtotal;
        rtotal += frame.dec.ranks[w];
    }
    long target_dim = long(f.r) * (f.r - 1) / 2;

    std::vector<std::pair<int, int>> coords; // strict lower triangle of the W pairing
    for (int i = 0; i < rtotal; ++i)
        for (int j = 0; j < i; ++j) coords.emplace_back(i, j);

    Mat map(int(coords.size()), 0);
    for (int w = 0; w < n; ++w)
        for (int a = 0; a < codim; ++a)
            for (int b = 0; b < frame.dec.ranks[w]; ++b) {
                TangentVector v = zero_tangent_vector(frame, d);
                v.phi[w](a, b) = 1;
                Mat on_w = tangent_pairing_on_w(v, f, frame, form, d);
                Mat column(int(coords.size()), 1);
                for (size_t c = 0; c < coords.size(); ++c)
                    column(int(c), 0) = on_w(coords[c].first, coords[c].second);
                map.append_columns(column);
            }

    TangentMapRank result;
    result.rank = rank(map);
    result.surjective = result.rank == target_dim;
    return result;
}

struct LagVerdict {
    long equations = 0;
    long rank = 0;
    bool surjective = false;
    bool internally_symplectic = false;
    bool internally_simple = false;
    bool smooth_of_expected_codim = false;
};

// Local certificate at an isotropic simple point: equation count from the
// restriction isomorphism, and smoothness of expected codimension via
// tangent-map surjectivity under the symplectic hypotheses.
inline LagVerdict lag_local_verdict(const LinkedSubbundle& f, const LinkedForm& form,
                                    const PrelinkedDiagram& d, const Multidegree& m,
                                    uint64_t seed = 0) {
    if (!is_linked_subbundle(f, d))
        throw ValidationError("verdict requires a linked subbundle");
    if (!is_isotropic(f, form, d))
        throw ValidationError("verdict requires an isotropic subbundle");
    PrelinkedDiagram restricted = restricted_diagram(f, d);
    auto simplicity = is_simple(restricted, seed);
    if (simplicity.status != SimplicityStatus::Simple)
        throw ValidationError("verdict requires a simple point: " + simplicity.evidence);

    LagVerdict verdict;
    verdict.equations = long(f.r) * (f.r - 1) / 2;
    verdict.internally_symplectic = is_internally_symplectic(form, d);
    verdict.internally_simple =
        is_internally_simple(restricted, m, seed).status == SimplicityStatus::Simple;
    if (verdict.internally_simple) {
        auto tm = tangent_map_rank(f, form, d, m, seed);
        verdict.rank = tm.rank;
        verdict.surjective = tm.surjective;
    }
    verdict.smooth_of_expected_codim =
        verdict.internally_symplectic && verdict.internally_simple && verdict.surjective;
    return verdict;
}

} // namespace lgrass
