#pragma once

#include "lgrass/prelinked.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace lgrass {

enum class FormKind { Bilinear, Alternating, Symmetric };

inline std::string form_kind_name(FormKind k) {
    switch (k) {
        case FormKind::Bilinear: return "bilinear";
        case FormKind::Alternating: return "alternating";
        case FormKind::Symmetric: return "symmetric";
    }
    return "?";
}

// A family of pairing matrices B_{w,w'} indexed by ordered vertex pairs,
// with <x,y>_{w,w'} = x^T B_{w,w'} y.
struct LinkedForm {
    Multidegree m;
    int nv = 0;
    std::vector<Mat> pairings; // row-major over (w, w')

    LinkedForm() = default;
    LinkedForm(Multidegree index, const std::vector<int>& dims)
        : m(std::move(index)), nv(int(dims.size())) {
        for (int w = 0; w < nv; ++w)
            for (int wp = 0; wp < nv; ++wp)
                pairings.emplace_back(dims[w], dims[wp]);
    }

    Mat& pairing(int w, int wp) { return pairings[size_t(w) * nv + wp]; }
    const Mat& pairing(int w, int wp) const { return pairings[size_t(w) * nv + wp]; }

    LinkedForm plus(const LinkedForm& o, const Rat& c) const {
        LinkedForm r = *this;
        for (size_t i = 0; i < r.pairings.size(); ++i)
            r.pairings[i] = r.pairings[i] + o.pairings[i].scaled(c);
        return r;
    }

    bool is_zero() const {
        for (const auto& p : pairings)
            if (!p.is_zero()) return false;
        return true;
    }
};

// 1 iff moving the first argument along the edge strictly increases the
// midpoint distance to m. For the second-argument rule, swap w and wp.
inline int step_delta(const LinkedGraph& g, int w, int wp, int edge,
                      const Multidegree& m) {
    if (edge < 0 || edge >= int(g.edges.size()))
        throw ValidationError("edge index out of range");
    if (g.edges[edge].tail != w)
        throw ValidationError("edge does not start at the given first argument");
    long before = midpoint_distance(g.data, g.vertices[w], g.vertices[wp], m);
    long after =
        midpoint_distance(g.data, g.vertices[g.edges[edge].head], g.vertices[wp], m);
    return after > before ? 1 : 0;
}

// Closed-form compatibility exponent for applying path P on the first
// argument and P' on the second.
inline long path_delta(const LinkedGraph& g, const DirectedPath& p,
                       const DirectedPath& pp, const Multidegree& m) {
    p.validate(g);
    pp.validate(g);
    long period = g.data.tree.size();
    long heads =
        midpoint_distance(g.data, g.vertices[p.head(g)], g.vertices[pp.head(g)], m);
    long tails = midpoint_distance(g.data, g.vertices[p.tail], g.vertices[pp.tail], m);
    long num = p.length() + pp.length() + heads - tails;
    if (num % period != 0)
        throw MathCheckError("path compatibility exponent is not integral");
    long delta = num / period;
    if (delta < 0) throw MathCheckError("path compatibility exponent is negative");
    return delta;
}

// Sum of per-step exponents along one interleaving of P and P'. The
// interleaving is a 0/1 sequence: 0 advances P (first argument), 1
// advances P'.
inline long interleaved_delta_sum(const LinkedGraph& g, const DirectedPath& p,
                                  const DirectedPath& pp, const std::vector<int>& order,
                                  const Multidegree& m) {
    if (int(order.size()) != p.length() + pp.length())
        throw ValidationError("interleaving length mismatch");
    long sum = 0;
    int at = p.tail, atp = pp.tail;
    size_t i = 0, ip = 0;
    for (int side : order) {
        if (side == 0) {
            int e = p.edges.at(i++);
            sum += step_delta(g, at, atp, e, m);
            at = g.edges[e].head;
        } else {
            int e = pp.edges.at(ip++);
            sum += step_delta(g, atp, at, e, m);
            atp = g.edges[e].head;
        }
    }
    return sum;
}

namespace detail {

inline void all_interleavings(int n, int np, std::vector<int>& cur,
                              const std::function<void(const std::vector<int>&)>& emit) {
    if (n == 0 && np == 0) {
        emit(cur);
        return;
    }
    if (n > 0) {
        cur.push_back(0);
        all_interleavings(n - 1, np, cur, emit);
        cur.pop_back();
    }
    if (np > 0) {
        cur.push_back(1);
        all_interleavings(n, np - 1, cur, emit);
        cur.pop_back();
    }
}

} // namespace detail

// Checks that per-step exponent sums match the closed form: exhaustively
// over all interleavings for short path pairs, by seeded sampling beyond.
inline CheckReport check_delta_additivity(const LinkedGraph& g, const Multidegree& m,
                                          int exhaustive_total = 6, int samples = 100,
                                          uint64_t seed = 0) {
    CheckReport report;
    int period = g.data.tree.size();
    int maxlen = int(graph_diameter(g)) + period;
    auto paths = enumerate_paths(g, maxlen);

    auto check_pair = [&](const DirectedPath& p, const DirectedPath& pp,
                          const std::vector<int>& order) {
        long expected = path_delta(g, p, pp, m);
        long got = interleaved_delta_sum(g, p, pp, order, m);
        if (got != expected)
            report.fail("per-step exponent sum " + std::to_string(got) + " != " +
                        std::to_string(expected) + " for paths " +
                        detail::path_str(g, p) + " and " + detail::path_str(g, pp));
    };

    std::vector<std::pair<int, int>> longer;
    for (int i = 0; i < int(paths.size()); ++i)
        for (int j = 0; j < int(paths.size()); ++j) {
            int total = paths[i].length() + paths[j].length();
            if (total <= exhaustive_total) {
                std::vector<int> cur;
                detail::all_interleavings(paths[i].length(), paths[j].length(), cur,
                                          [&](const std::vector<int>& order) {
                                              check_pair(paths[i], paths[j], order);
                                          });
            } else {
                longer.emplace_back(i, j);
            }
        }

    Rng rng(seed + 0x51ed2701);
    for (int k = 0; k < samples && !longer.empty(); ++k) {
        auto [i, j] = longer[rng.below(longer.size())];
        std::vector<int> order(paths[i].length(), 0);
        order.insert(order.end(), paths[j].length(), 1);
        for (size_t a = order.size(); a > 1; --a)
            std::swap(order[a - 1], order[rng.below(a)]);
        check_pair(paths[i], paths[j], order);
    }
    return report;
}

// Verifies both edge-action identities of a linked form against the
// diagram, plus the additivity of the exponent calculus.
inline CheckReport check_compatibility(const LinkedForm& f, const PrelinkedDiagram& d) {
    d.validate();
    const LinkedGraph& g = d.graph;
    if (f.nv != g.size() || int(f.m.size()) != g.data.tree.size())
        throw ValidationError("form and diagram are on different graphs");
    for (int w = 0; w < g.size(); ++w)
        for (int wp = 0; wp < g.size(); ++wp)
            if (f.pairing(w, wp).rows() != d.dims[w] ||
                f.pairing(w, wp).cols() != d.dims[wp])
                throw ValidationError("pairing shape mismatch at a vertex pair");

    CheckReport report;
    for (int w = 0; w < g.size(); ++w)
        for (int wp = 0; wp < g.size(); ++wp) {
            for (int e : g.out[w]) {
                int h = g.edges[e].head;
                Rat factor = rat_pow(d.s, step_delta(g, w, wp, e, f.m));
                if (d.maps[e].transpose() * f.pairing(h, wp) !=
                    f.pairing(w, wp).scaled(factor))
                    report.fail("first-argument rule fails at pair (" +
                                md_str(g.vertices[w]) + "," + md_str(g.vertices[wp]) +
                                ") along edge " + std::to_string(e));
            }
            for (int e : g.out[wp]) {
                int h = g.edges[e].head;
                Rat factor = rat_pow(d.s, step_delta(g, wp, w, e, f.m));
                if (f.pairing(w, h) * d.maps[e] != f.pairing(w, wp).scaled(factor))
                    report.fail("second-argument rule fails at pair (" +
                                md_str(g.vertices[w]) + "," + md_str(g.vertices[wp]) +
                                ") along edge " + std::to_string(e));
            }
        }

    CheckReport additivity = check_delta_additivity(g, f.m);
    for (auto& v : additivity.violations) report.fail(std::move(v));
    return report;
}

inline bool is_alternating(const LinkedForm& f) {
    for (int w = 0; w < f.nv; ++w)
        for (int wp = 0; wp < f.nv; ++wp)
            if (!(f.pairing(w, wp) + f.pairing(wp, w).transpose()).is_zero())
                return false;
    return true;
}

struct FormModuleBasis {
    FormKind kind = FormKind::Bilinear;
    std::vector<LinkedForm> basis;
};

namespace detail {

inline long expected_form_dimension(FormKind kind, long t) {
    switch (kind) {
        case FormKind::Bilinear: return t * t;
        case FormKind::Alternating: return t * (t - 1) / 2;
        case FormKind::Symmetric: return t * (t + 1) / 2;
    }
    return 0;
}

} // namespace detail

// Solves the homogeneous system of all compatibility constraints over the
// pairing entries and returns a canonical basis of the solution space.
inline FormModuleBasis form_module_basis(const PrelinkedDiagram& d, const Multidegree& m,
                                         FormKind kind, uint64_t seed = 0) {
    d.validate();
    d.graph.data.require_hd(m);
    auto simplicity = is_simple(d, seed);
    if (simplicity.status != SimplicityStatus::Simple)
        throw ValidationError("form module rank is only guaranteed on simple diagrams: " +
                              simplicity.evidence);

    const LinkedGraph& g = d.graph;
    int n = g.size();
    int t = d.uniform_dim();
    int unknowns = n * n * t * t;
    auto var = [&](int w, int wp, int i, int j) {
        return ((w * n + wp) * t + i) * t + j;
    };

    std::vector<std::vector<Rat>> rows;
    auto new_row = [&]() -> std::vector<Rat>& {
        rows.emplace_back(unknowns, Rat(0));
        return rows.back();
    };

    for (int w = 0; w < n; ++w)
        for (int wp = 0; wp < n; ++wp) {
            for (int e : g.out[w]) {
                int h = g.edges[e].head;
                Rat factor = rat_pow(d.s, step_delta(g, w, wp, e, m));
                for (int i = 0; i < t; ++i)
                    for (int j = 0; j < t; ++j) {
                        auto& row = new_row();
                        for (int k = 0; k < t; ++k)
                            row[var(h, wp, k, j)] += d.maps[e](k, i);
                        row[var(w, wp, i, j)] -= factor;
                    }
            }
            for (int e : g.out[wp]) {
                int h = g.edges[e].head;
                Rat factor = rat_pow(d.s, step_delta(g, wp, w, e, m));
                for (int i = 0; i < t; ++i)
                    for (int j = 0; j < t; ++j) {
                        auto& row = new_row();
                        for (int k = 0; k < t; ++k)
                            row[var(w, h, i, k)] += d.maps[e](k, j);
                        row[var(w, wp, i, j)] -= factor;
                    }
            }
            if (kind != FormKind::Bilinear) {
                Rat sign = kind == FormKind::Alternating ? 1 : -1;
                for (int i = 0; i < t; ++i)
                    for (int j = 0; j < t; ++j) {
                        auto& row = new_row();
                        row[var(w, wp, i, j)] += 1;
                        row[var(wp, w, j, i)] += sign;
                    }
            }
        }

    Mat system(int(rows.size()), unknowns);
    for (int r = 0; r < int(rows.size()); ++r)
        for (int c = 0; c < unknowns; ++c) system(r, c) = rows[r][c];
    Mat kernel = kernel_basis(system);

    FormModuleBasis result;
    result.kind = kind;
    for (int col = 0; col < kernel.cols(); ++col) {
        LinkedForm f(m, d.dims);
        for (int w = 0; w < n; ++w)
            for (int wp = 0; wp < n; ++wp)
                for (int i = 0; i < t; ++i)
                    for (int j = 0; j < t; ++j)
                        f.pairing(w, wp)(i, j) = kernel(var(w, wp, i, j), col);
        result.basis.push_back(std::move(f));
    }

    long expected = detail::expected_form_dimension(kind, t);
    if (long(result.basis.size()) != expected)
        throw MathCheckError("compatible " + form_kind_name(kind) + " forms have dimension " +
                             std::to_string(result.basis.size()) + ", expected " +
                             std::to_string(expected));
    return result;
}

// The pairing matrix on the direct sum of the decomposition subspaces,
// blocks ordered by vertex.
inline Mat restrict_form(const LinkedForm& f, const PrelinkedDiagram& d,
                         const WDecomposition& dec) {
    int r = 0;
    std::vector<int> offset(d.graph.size(), 0);
    for (int w = 0; w < d.graph.size(); ++w) {
        offset[w] = r;
        r += dec.ranks[w];
    }
    Mat out(r, r);
    for (int u = 0; u < d.graph.size(); ++u)
        for (int up = 0; up < d.graph.size(); ++up) {
            if (dec.ranks[u] == 0 || dec.ranks[up] == 0) continue;
            Mat block = dec.basis[u].transpose() * f.pairing(u, up) * dec.basis[up];
            for (int i = 0; i < block.rows(); ++i)
                for (int j = 0; j < block.cols(); ++j)
                    out(offset[u] + i, offset[up] + j) = block(i, j);
        }
    return out;
}

// Builds the unique compatible form restricting to the given pairing on
// the decomposition subspaces, by twisting with s^delta along minimal
// paths from the supports.
inline LinkedForm extend_from_restriction(const PrelinkedDiagram& d,
                                          const WDecomposition& dec, const Mat& on_w,
                                          const Multidegree& m, FormKind kind) {
    d.validate();
    d.graph.data.require_hd(m);
    const LinkedGraph& g = d.graph;
    int n = g.size();
    int t = d.uniform_dim();

    int r = 0;
    std::vector<int> offset(n, 0);
    std::vector<int> support;
    for (int w = 0; w < n; ++w) {
        offset[w] = r;
        r += dec.ranks[w];
        if (dec.ranks[w] > 0) support.push_back(w);
    }
    if (on_w.rows() != r || on_w.cols() != r)
        throw ValidationError("restricted pairing has the wrong size");
    if (kind == FormKind::Alternating && !(on_w + on_w.transpose()).is_zero())
        throw ValidationError("restricted pairing is not alternating");
    if (kind == FormKind::Symmetric && !(on_w - on_w.transpose()).is_zero())
        throw ValidationError("restricted pairing is not symmetric");

    std::vector<std::vector<DirectedPath>> path(n); // support index -> to each vertex
    std::vector<Mat> mw(n), mw_invt(n);
    for (int w = 0; w < n; ++w) {
        Mat mat(t, 0);
        std::vector<DirectedPath> ps;
        for (int u : support) {
            DirectedPath p = u == w ? DirectedPath{w, {}} : minimal_path(g, u, w);
            ps.push_back(p);
            mat.append_columns(f_path(d, p) * dec.basis[u]);
        }
        if (!invertible(mat))
            throw ValidationError("decomposition does not span the diagram at " +
                                  md_str(g.vertices[w]));
        path[w] = std::move(ps);
        mw[w] = mat;
        mw_invt[w] = inverse(mat).transpose();
    }

    LinkedForm f(m, d.dims);
    for (int w = 0; w < n; ++w)
        for (int wp = 0; wp < n; ++wp) {
            Mat twisted(t, t);
            int row = 0;
            for (size_t a = 0; a < support.size(); ++a) {
                int col = 0;
                for (size_t b = 0; b < support.size(); ++b) {
                    Rat factor = rat_pow(d.s, path_delta(g, path[w][a], path[wp][b], m));
                    for (int i = 0; i < dec.ranks[support[a]]; ++i)
                        for (int j = 0; j < dec.ranks[support[b]]; ++j)
                            twisted(row + i, col + j) =
                                factor * on_w(offset[support[a]] + i,
                                              offset[support[b]] + j);
                    col += dec.ranks[support[b]];
                }
                row += dec.ranks[support[a]];
            }
            f.pairing(w, wp) = mw_invt[w] * twisted * inverse(mw[wp]);
        }
    return f;
}

// Nondegeneracy on every complementary pair w + w' = 2m.
inline bool is_internally_symplectic(const LinkedForm& f, const PrelinkedDiagram& d) {
    const LinkedGraph& g = d.graph;
    Multidegree target = md_scale(2, f.m);
    for (int w = 0; w < g.size(); ++w) {
        int wp = g.find_vertex(md_sub(target, g.vertices[w]));
        if (wp < 0) continue;
        if (rank(f.pairing(w, wp)) != std::min(d.dims[w], d.dims[wp])) return false;
    }
    return true;
}

// Number of local defining equations of the isotropy locus at a simple
// point of the given rank.
inline long isotropy_equation_count(const PrelinkedDiagram& d, FormKind kind,
                                    uint64_t seed = 0) {
    auto simplicity = is_simple(d, seed);
    if (simplicity.status != SimplicityStatus::Simple)
        throw ValidationError("equation count is only defined at simple points: " +
                              simplicity.evidence);
    return detail::expected_form_dimension(kind, d.uniform_dim());
}

// Every pairing factors through the complementary vertex: whenever
// 2m - w is a vertex, B_{w,w'} = B_{w,2m-w} f_P for P minimal from w' to
// 2m - w.
inline CheckReport check_complementary_factorization(const LinkedForm& f,
                                                     const PrelinkedDiagram& d) {
    CheckReport report;
    const LinkedGraph& g = d.graph;
    Multidegree target = md_scale(2, f.m);
    for (int w = 0; w < g.size(); ++w) {
        int comp = g.find_vertex(md_sub(target, g.vertices[w]));
        if (comp < 0) continue;
        for (int wp = 0; wp < g.size(); ++wp) {
            if (!graph_distance(g, wp, comp)) continue;
            if (f.pairing(w, wp) != f.pairing(w, comp) * f_composite(d, wp, comp))
                report.fail("pairing at (" + md_str(g.vertices[w]) + "," +
                            md_str(g.vertices[wp]) +
                            ") does not factor through the complementary vertex");
        }
    }
    return report;
}

} // namespace lgrass
