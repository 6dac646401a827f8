#pragma once

#include "lgrass/linked_graph.hpp"
#include "lgrass/matrix.hpp"
#include "lgrass/rng.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lgrass {

struct PrelinkedDiagram {
    LinkedGraph graph;
    std::vector<int> dims;  // ambient rank per graph vertex
    std::vector<Mat> maps;  // per graph edge, dims[head] x dims[tail]
    Rat s;

    void validate() const {
        if (int(dims.size()) != graph.size())
            throw ValidationError("diagram needs one dimension per graph vertex");
        if (maps.size() != graph.edges.size())
            throw ValidationError("diagram needs one matrix per graph edge");
        for (size_t e = 0; e < maps.size(); ++e) {
            const auto& edge = graph.edges[e];
            if (maps[e].rows() != dims[edge.head] || maps[e].cols() != dims[edge.tail])
                throw ValidationError("map on edge " + std::to_string(e) +
                                      " has the wrong shape");
        }
    }

    int uniform_dim() const {
        for (int t : dims)
            if (t != dims[0]) throw ValidationError("diagram dimensions are not uniform");
        return dims.empty() ? 0 : dims[0];
    }
};

inline Mat f_path(const PrelinkedDiagram& d, const DirectedPath& p) {
    Mat m = Mat::identity(d.dims[p.tail]);
    for (int e : p.edges) m = d.maps[e] * m;
    return m;
}

// The map along any minimal path from w to wp; well-defined when the
// diagram is prelinked.
inline Mat f_composite(const PrelinkedDiagram& d, int w, int wp) {
    if (w == wp) return Mat::identity(d.dims[w]);
    return f_path(d, minimal_path(d.graph, w, wp));
}

struct CheckReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string message) {
        ok = false;
        violations.push_back(std::move(message));
    }
};

namespace detail {

inline std::string path_str(const LinkedGraph& g, const DirectedPath& p) {
    std::string s = md_str(g.vertices[p.tail]);
    int at = p.tail;
    for (int e : p.edges) {
        at = g.edges[e].head;
        s += "->" + md_str(g.vertices[at]);
    }
    return s;
}

} // namespace detail

// Verifies f_{P'} = s^c f_P for all same-endpoint path pairs up to length
// diameter(G) + |V(Gamma)|, comparing each path against a minimal-length
// representative of its endpoint class.
inline CheckReport check_prelinked(const PrelinkedDiagram& d) {
    d.validate();
    CheckReport report;
    int period = d.graph.data.tree.size();
    int maxlen = int(graph_diameter(d.graph)) + period;
    auto paths = enumerate_paths(d.graph, maxlen);

    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int i = 0; i < int(paths.size()); ++i)
        groups[{paths[i].tail, paths[i].head(d.graph)}].push_back(i);

    for (auto& [endpoints, members] : groups) {
        int rep = members[0];
        for (int i : members)
            if (paths[i].length() < paths[rep].length()) rep = i;
        Mat base = f_path(d, paths[rep]);
        for (int i : members) {
            if (i == rep) continue;
            int diff = paths[i].length() - paths[rep].length();
            if (diff % period != 0) {
                report.fail("paths " + detail::path_str(d.graph, paths[rep]) + " and " +
                            detail::path_str(d.graph, paths[i]) +
                            " have a length difference that is not a multiple of " +
                            std::to_string(period));
                continue;
            }
            Mat expected = base.scaled(rat_pow(d.s, diff / period));
            if (f_path(d, paths[i]) != expected)
                report.fail("composite along " + detail::path_str(d.graph, paths[i]) +
                            " is not s^" + std::to_string(diff / period) +
                            " times the one along " +
                            detail::path_str(d.graph, paths[rep]));
        }
    }
    return report;
}

enum class SimplicityStatus { Simple, NotSimple, Indeterminate };

struct SimplicityCertificate {
    std::vector<std::pair<int, Mat>> witnesses; // (vertex, ambient column vector)
};

struct WDecomposition {
    std::vector<Mat> basis; // per vertex, t x ranks[w]
    std::vector<int> ranks;
};

struct SimplicityResult {
    SimplicityStatus status = SimplicityStatus::Indeterminate;
    SimplicityCertificate cert;
    std::string evidence;
};

namespace detail {

inline std::optional<Mat> reachable_composite(const PrelinkedDiagram& d, int w, int wp) {
    if (w == wp) return Mat::identity(d.dims[w]);
    if (!graph_distance(d.graph, w, wp)) return std::nullopt;
    return f_composite(d, w, wp);
}

// Assembles, for each vertex w, the square matrix whose column blocks are
// f_{u,w} applied to the candidate bases; the candidate is a valid witness
// system exactly when all of these are invertible.
inline std::optional<SimplicityCertificate>
try_candidate(const PrelinkedDiagram& d, const std::vector<Mat>& cand) {
    int n = d.graph.size();
    for (int w = 0; w < n; ++w) {
        Mat m(d.dims[w], 0);
        for (int u = 0; u < n; ++u) {
            if (cand[u].cols() == 0) continue;
            auto f = reachable_composite(d, u, w);
            if (!f) return std::nullopt;
            m.append_columns(*f * cand[u]);
        }
        if (!invertible(m)) return std::nullopt;
    }
    SimplicityCertificate cert;
    for (int u = 0; u < n; ++u)
        for (int j = 0; j < cand[u].cols(); ++j)
            cert.witnesses.emplace_back(u, cand[u].column(j));
    return cert;
}

} // namespace detail

// Searches for a witness system placing all witnesses at allowed vertices.
inline SimplicityResult simplicity_search(const PrelinkedDiagram& d,
                                          const std::vector<bool>& allowed,
                                          uint64_t seed = 0, int budget = 64) {
    d.validate();
    int t = d.uniform_dim();
    int n = d.graph.size();
    SimplicityResult result;

    std::vector<Mat> arrivals;
    std::vector<int> deficit(n, 0);
    long total_deficit = 0;
    for (int w = 0; w < n; ++w) {
        Mat a(t, 0);
        for (int u = 0; u < n; ++u) {
            if (u == w) continue;
            if (auto f = detail::reachable_composite(d, u, w)) a.append_columns(*f);
        }
        arrivals.push_back(a);
        deficit[w] = t - rank(a);
        total_deficit += deficit[w];
        if (deficit[w] > 0 && !allowed[w]) {
            result.status = SimplicityStatus::NotSimple;
            result.evidence = "vertex " + md_str(d.graph.vertices[w]) + " needs " +
                              std::to_string(deficit[w]) +
                              " witness directions but cannot host witnesses";
            return result;
        }
    }
    if (total_deficit > t) {
        result.status = SimplicityStatus::NotSimple;
        result.evidence = "arriving images leave " + std::to_string(total_deficit) +
                          " directions uncovered, more than the " + std::to_string(t) +
                          " available witnesses";
        return result;
    }
    std::vector<int> hosts;
    for (int w = 0; w < n; ++w)
        if (allowed[w]) hosts.push_back(w);
    if (hosts.empty() && t > 0) {
        result.status = SimplicityStatus::NotSimple;
        result.evidence = "no vertex may host witnesses";
        return result;
    }

    int tries = 0;
    auto attempt = [&](const std::vector<Mat>& cand) -> bool {
        ++tries;
        if (auto cert = detail::try_candidate(d, cand)) {
            result.status = SimplicityStatus::Simple;
            result.cert = *cert;
            return true;
        }
        return false;
    };

    std::vector<Mat> canonical(n, Mat(t, 0));
    for (int w = 0; w < n; ++w)
        if (deficit[w] > 0) canonical[w] = complement_basis(arrivals[w], t);

    long extra = t - total_deficit;
    // Deterministic candidates: extras at the first allowed vertex, then
    // spread round-robin.
    for (int spread = 0; spread < 2 && tries < budget; ++spread) {
        std::vector<Mat> cand = canonical;
        long remaining = extra;
        size_t h = 0;
        while (remaining > 0) {
            int w = hosts[h % hosts.size()];
            h += spread ? 1 : 0;
            if (cand[w].cols() < t) {
                Mat fill = complement_basis(cand[w], t);
                cand[w].append_columns(fill.column(0));
                --remaining;
            } else if (!spread) {
                ++h;
            }
        }
        if (attempt(cand)) return result;
    }

    Rng rng(seed * 0x9e3779b97f4a7c15ull + 1);
    while (tries < budget) {
        std::vector<int> ranks = deficit;
        for (long i = 0; i < extra; ++i) {
            int w = hosts[rng.below(hosts.size())];
            while (ranks[w] >= t) w = hosts[rng.below(hosts.size())];
            ++ranks[w];
        }
        std::vector<Mat> cand(n, Mat(t, 0));
        for (int w = 0; w < n; ++w)
            if (ranks[w] > 0) cand[w] = rng.full_rank_matrix(t, ranks[w]);
        if (attempt(cand)) return result;
    }
    result.status = SimplicityStatus::Indeterminate;
    result.evidence = "no witness system found within the retry budget";
    return result;
}

inline SimplicityResult is_simple(const PrelinkedDiagram& d, uint64_t seed = 0,
                                  int budget = 64) {
    return simplicity_search(d, std::vector<bool>(d.graph.size(), true), seed, budget);
}

// Vertices whose complementary multidegree 2m - w is again a graph vertex.
inline std::vector<bool> internal_support(const LinkedGraph& g, const Multidegree& m) {
    std::vector<bool> s(g.size(), false);
    for (int w = 0; w < g.size(); ++w)
        s[w] = g.find_vertex(md_sub(md_scale(2, m), g.vertices[w])) >= 0;
    return s;
}

inline SimplicityResult is_internally_simple(const PrelinkedDiagram& d,
                                             const Multidegree& m, uint64_t seed = 0,
                                             int budget = 64) {
    d.graph.data.require_hd(m);
    return simplicity_search(d, internal_support(d.graph, m), seed, budget);
}

// Rebuilds the subspace decomposition from a certificate, re-verifying the
// direct-sum condition from scratch.
inline WDecomposition w_decomposition(const SimplicityCertificate& cert,
                                      const PrelinkedDiagram& d) {
    d.validate();
    int t = d.uniform_dim();
    int n = d.graph.size();
    WDecomposition dec;
    dec.basis.assign(n, Mat(t, 0));
    for (const auto& [w, v] : cert.witnesses) {
        if (w < 0 || w >= n || v.rows() != t || v.cols() != 1)
            throw ValidationError("certificate witness does not match the diagram");
        dec.basis[w].append_columns(v);
    }
    long total = 0;
    for (int w = 0; w < n; ++w) {
        dec.ranks.push_back(dec.basis[w].cols());
        total += dec.ranks.back();
    }
    if (total != t)
        throw ValidationError("certificate witness count differs from the diagram rank");
    if (!detail::try_candidate(d, dec.basis))
        throw ValidationError("certificate does not verify against this diagram");
    return dec;
}

inline bool verify_certificate(const PrelinkedDiagram& d,
                               const SimplicityCertificate& cert) {
    try {
        w_decomposition(cert, d);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

} // namespace lgrass
