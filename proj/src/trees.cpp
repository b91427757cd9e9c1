#include "afinv/trees.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace trees {

namespace {

std::vector<std::vector<int>> adjacency(int vertices, const std::vector<Edge>& edges) {
    std::vector<std::vector<int>> adj(vertices);
    for (const Edge& e : edges) {
        if (e.first < 0 || e.first >= vertices || e.second < 0 || e.second >= vertices)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.first == e.second)
            throw std::invalid_argument("self loop is not a tree edge");
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    return adj;
}

void check_tree(int vertices, const std::vector<std::vector<int>>& adj) {
    // |E| = vertices-1 is checked by the caller; connectedness makes it a tree
    std::vector<char> seen(vertices, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    if (count != vertices)
        throw std::invalid_argument("edge list is disconnected or cyclic");
}

std::vector<int> find_centroids(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<int> size(n, 0);
    // subtree sizes from root 0
    std::function<void(int, int)> dfs = [&](int v, int parent) {
        size[v] = 1;
        for (int w : adj[v])
            if (w != parent) {
                dfs(w, v);
                size[v] += size[w];
            }
    };
    dfs(0, -1);
    int best = n + 1;
    std::vector<int> cs;
    std::function<void(int, int)> dfs2 = [&](int v, int parent) {
        int heaviest = n - size[v];
        for (int w : adj[v])
            if (w != parent) {
                heaviest = std::max(heaviest, size[w]);
                dfs2(w, v);
            }
        if (heaviest < best) {
            best = heaviest;
            cs.assign(1, v);
        } else if (heaviest == best) {
            cs.push_back(v);
        }
    };
    dfs2(0, -1);
    return cs;
}

std::string rooted_code(int root, const std::vector<std::vector<int>>& adj) {
    std::function<std::string(int, int)> enc = [&](int v, int parent) {
        std::vector<std::string> kids;
        for (int w : adj[v])
            if (w != parent)
                kids.push_back(enc(w, v));
        std::sort(kids.begin(), kids.end());
        std::string out = "(";
        for (const std::string& k : kids)
            out += k;
        return out + ")";
    };
    return enc(root, -1);
}

}  // namespace

std::string canonical_code(int vertices, const std::vector<Edge>& edges) {
    if (vertices < 1)
        throw std::invalid_argument("tree needs at least one vertex");
    if (static_cast<int>(edges.size()) != vertices - 1)
        throw std::invalid_argument("a tree on p vertices has p-1 edges");
    auto adj = adjacency(vertices, edges);
    check_tree(vertices, adj);
    std::string best;
    for (int c : find_centroids(vertices, adj)) {
        std::string code = rooted_code(c, adj);
        if (best.empty() || code < best)
            best = code;
    }
    return best;
}

TreeShape decode(const std::string& code) {
    TreeShape shape;
    shape.code = code;
    shape.vertices = 0;
    std::vector<int> stack;
    for (char c : code) {
        if (c == '(') {
            int v = shape.vertices++;
            if (!stack.empty())
                shape.edges.emplace_back(stack.back(), v);
            stack.push_back(v);
        } else if (c == ')') {
            if (stack.empty())
                throw std::invalid_argument("unbalanced tree code");
            stack.pop_back();
        } else {
            throw std::invalid_argument("tree code may contain only parentheses");
        }
    }
    if (!stack.empty() || shape.vertices == 0)
        throw std::invalid_argument("unbalanced tree code");
    return shape;
}

int degree(const TreeShape& shape, int v) {
    int d = 0;
    for (const Edge& e : shape.edges)
        if (e.first == v || e.second == v)
            ++d;
    return d;
}

std::vector<int> degree_profile(const TreeShape& shape) {
    std::vector<int> deg(shape.vertices, 0);
    for (const Edge& e : shape.edges) {
        ++deg[e.first];
        ++deg[e.second];
    }
    std::sort(deg.rbegin(), deg.rend());
    return deg;
}

namespace {
Rational eps_factor(int deg) {
    return deg == 0 ? Rational(1) : Rational(-deg);
}
}  // namespace

TreeTerm graft(const TreeTerm& t1, int v1, const TreeTerm& t2, int v2) {
    const int p1 = t1.shape.vertices;
    if (v1 < 0 || v1 >= p1 || v2 < 0 || v2 >= t2.shape.vertices)
        throw std::invalid_argument("graft vertex out of range");
    std::vector<Edge> edges = t1.shape.edges;
    for (const Edge& e : t2.shape.edges)
        edges.emplace_back(e.first + p1, e.second + p1);
    edges.emplace_back(v1, p1 + v2);
    int p = p1 + t2.shape.vertices;

    TreeTerm out;
    out.coeff = t1.coeff * t2.coeff * eps_factor(degree(t1.shape, v1)) *
                eps_factor(degree(t2.shape, v2));
    out.shape = decode(canonical_code(p, edges));
    return out;
}

namespace {

int g_layer_cap = 8;
std::uint64_t g_budget = 10'000'000;

std::vector<QLayer> g_layers;  // built sequentially under g_mutex
std::mutex g_mutex;

QLayer build_layer(int m) {
    QLayer layer;
    layer.order = m;
    std::map<std::string, TreeTerm> acc;
    const Rational norm(1, 2 * m);
    for (int i = 0; i + 1 <= m; ++i) {
        const QLayer& li = g_layers[i];
        const QLayer& lj = g_layers[m - 1 - i];
        for (const auto& [c1, t1] : li.terms) {
            for (const auto& [c2, t2] : lj.terms) {
                for (int v1 = 0; v1 < t1.shape.vertices; ++v1) {
                    for (int v2 = 0; v2 < t2.shape.vertices; ++v2) {
                        TreeTerm g = graft(t1, v1, t2, v2);
                        g.coeff *= norm;
                        auto it = acc.find(g.shape.code);
                        if (it == acc.end())
                            acc.emplace(g.shape.code, std::move(g));
                        else
                            it->second.coeff += g.coeff;
                    }
                }
            }
        }
    }
    for (auto& [code, term] : acc)
        if (term.coeff != 0)
            layer.terms.emplace(code, std::move(term));
    return layer;
}

}  // namespace

int layer_cap() { return g_layer_cap; }

void set_layer_cap(int cap) {
    if (cap < 1 || cap > 12)
        throw std::invalid_argument("layer cap must lie in [1, 12]");
    g_layer_cap = cap;
}

const QLayer& q_layer(int m) {
    if (m < 0)
        throw std::invalid_argument("layer order must be >= 0");
    if (m > g_layer_cap)
        throw std::invalid_argument("layer order exceeds the configured cap (" +
                                    std::to_string(g_layer_cap) + ")");
    std::lock_guard<std::mutex> lock(g_mutex);
    if (g_layers.empty()) {
        QLayer p;
        p.order = 0;
        TreeTerm unit;
        unit.coeff = Rational(1);
        unit.shape = decode("()");
        p.terms.emplace(unit.shape.code, std::move(unit));
        g_layers.push_back(std::move(p));
    }
    while (static_cast<int>(g_layers.size()) <= m)
        g_layers.push_back(build_layer(static_cast<int>(g_layers.size())));
    return g_layers[m];
}

Rational coefficient_sum(const QLayer& layer) {
    Rational s = 0;
    for (const auto& [code, term] : layer.terms)
        s += term.coeff;
    return s;
}

std::uint64_t labeling_budget() { return g_budget; }

void set_labeling_budget(std::uint64_t budget) { g_budget = budget; }

namespace {

// Shared per-point data for labeling sums.
struct EvalContext {
    int nplanes;
    std::vector<Real> lam;     // lambda_h
    std::vector<Real> invf;    // 1/f_h(z)
    std::vector<std::vector<Real>> dots;  // <u_h, u_k>

    EvalContext(const hyper::Arrangement& arr, const Vec& z) : nplanes(arr.size()) {
        lam.reserve(nplanes);
        invf.reserve(nplanes);
        for (const hyper::Hyperplane& h : arr.planes()) {
            Real f = hyper::linear_form(h, z);
            if (f == 0)
                throw std::domain_error("point lies on a hyperplane");
            lam.push_back(h.weight);
            invf.push_back(1 / f);
        }
        dots.assign(nplanes, std::vector<Real>(nplanes));
        for (int a = 0; a < nplanes; ++a)
            for (int b = 0; b < nplanes; ++b)
                dots[a][b] = num::dot(arr.plane(a).normal, arr.plane(b).normal);
    }
};

void check_budget(int nplanes, int vertices) {
    long double need = std::pow(static_cast<long double>(nplanes), vertices);
    if (need > static_cast<long double>(g_budget)) {
        std::ostringstream msg;
        msg << "labeling sum needs " << static_cast<double>(need)
            << " terms, budget is " << g_budget;
        throw std::runtime_error(msg.str());
    }
}

// Walks every labeling of the shape's vertices by hyperplane indices and
// calls sink(labeling, value) for the nonzero terms.
template <typename Sink>
void for_each_labeling(const EvalContext& ctx, const TreeShape& shape, Sink&& sink) {
    const int p = shape.vertices;
    std::vector<int> lab(p, 0);
    while (true) {
        Real value = ctx.lam[lab[0]];
        for (int v = 1; v < p; ++v)
            value *= ctx.lam[lab[v]];
        for (const Edge& e : shape.edges) {
            const Real& d = ctx.dots[lab[e.first]][lab[e.second]];
            if (d == 0) {
                value = 0;
                break;
            }
            value *= d * ctx.invf[lab[e.first]] * ctx.invf[lab[e.second]];
        }
        if (value != 0)
            sink(lab, value);
        int v = 0;
        while (v < p && ++lab[v] == ctx.nplanes)
            lab[v++] = 0;
        if (v == p)
            break;
    }
}

}  // namespace

Real evaluate_layer(const QLayer& layer, const hyper::Arrangement& arr, const Vec& z) {
    if (layer.order < 1)
        throw std::invalid_argument("layer 0 is the logarithmic potential; use hyper::potential");
    EvalContext ctx(arr, z);
    check_budget(ctx.nplanes, layer.order + 1);
    Real total = 0;
    for (const auto& [code, term] : layer.terms) {
        Real shape_sum = 0;
        for_each_labeling(ctx, term.shape,
                          [&](const std::vector<int>&, const Real& v) { shape_sum += v; });
        total += num::to_real(term.coeff) * shape_sum;
    }
    return total;
}

Vec evaluate_layer_gradient(const QLayer& layer, const hyper::Arrangement& arr, const Vec& z) {
    if (layer.order < 1)
        throw std::invalid_argument("layer 0 gradient is hyper::grad_potential");
    EvalContext ctx(arr, z);
    check_budget(ctx.nplanes, layer.order + 1);
    const int n = arr.dim();
    Vec grad(n, Real(0));
    for (const auto& [code, term] : layer.terms) {
        std::vector<int> deg(term.shape.vertices, 0);
        for (const Edge& e : term.shape.edges) {
            ++deg[e.first];
            ++deg[e.second];
        }
        Vec shape_grad(n, Real(0));
        for_each_labeling(ctx, term.shape, [&](const std::vector<int>& lab, const Real& v) {
            // d/dz_i of f_h^{-d} pulls down -d u_{h,i}/f_h per vertex
            for (int w = 0; w < term.shape.vertices; ++w) {
                Real factor = -deg[w] * ctx.invf[lab[w]] * v;
                const Vec& u = arr.plane(lab[w]).normal;
                for (int i = 0; i < n; ++i)
                    shape_grad[i] += factor * u[i];
            }
        });
        Real c = num::to_real(term.coeff);
        for (int i = 0; i < n; ++i)
            grad[i] += c * shape_grad[i];
    }
    return grad;
}

std::vector<Vec> evaluate_layer_hessian(const QLayer& layer, const hyper::Arrangement& arr,
                                        const Vec& z) {
    if (layer.order < 1)
        throw std::invalid_argument("layer 0 Hessian is hyper::potential_hessian");
    EvalContext ctx(arr, z);
    check_budget(ctx.nplanes, layer.order + 1);
    const int n = arr.dim();
    std::vector<Vec> hess(n, Vec(n, Real(0)));
    Vec g(n);
    for (const auto& [code, term] : layer.terms) {
        std::vector<int> deg(term.shape.vertices, 0);
        for (const Edge& e : term.shape.edges) {
            ++deg[e.first];
            ++deg[e.second];
        }
        std::vector<Vec> shape_hess(n, Vec(n, Real(0)));
        for_each_labeling(ctx, term.shape, [&](const std::vector<int>& lab, const Real& v) {
            // T_ij = T (g_i g_j + sum_v d_v u_{v,i} u_{v,j} / f_v^2)
            std::fill(g.begin(), g.end(), Real(0));
            for (int w = 0; w < term.shape.vertices; ++w) {
                Real factor = -deg[w] * ctx.invf[lab[w]];
                const Vec& u = arr.plane(lab[w]).normal;
                for (int i = 0; i < n; ++i)
                    g[i] += factor * u[i];
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    shape_hess[i][j] += v * g[i] * g[j];
            for (int w = 0; w < term.shape.vertices; ++w) {
                Real factor = deg[w] * ctx.invf[lab[w]] * ctx.invf[lab[w]] * v;
                const Vec& u = arr.plane(lab[w]).normal;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        shape_hess[i][j] += factor * u[i] * u[j];
            }
        });
        Real c = num::to_real(term.coeff);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                hess[i][j] += c * shape_hess[i][j];
    }
    return hess;
}

std::vector<TableRow> coefficient_table(int m_max) {
    std::vector<TableRow> rows;
    for (int m = 1; m <= m_max; ++m) {
        const QLayer& layer = q_layer(m);
        for (const auto& [code, term] : layer.terms)
            rows.push_back({m, code, term.coeff, degree_profile(term.shape)});
    }
    return rows;
}

std::string to_dot(const QLayer& layer) {
    std::ostringstream out;
    int idx = 0;
    for (const auto& [code, term] : layer.terms) {
        out << "graph q" << layer.order << "_" << idx++ << " {\n";
        out << "  label=\"" << term.coeff << "\";\n";
        if (term.shape.edges.empty())
            out << "  0;\n";
        for (const Edge& e : term.shape.edges)
            out << "  " << e.first << " -- " << e.second << ";\n";
        out << "}\n";
    }
    return out.str();
}

}  // namespace trees
