#include "leech/dynkin.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "leech/errors.hpp"

namespace leech {

namespace {

// Classifies one connected component given its induced edge lists.
// adj contains single edges only; ndouble counts double edges inside.
DynkinComponent classify_component(const std::vector<int>& nodes,
                                   const std::vector<std::vector<int>>& adj, int ndouble) {
    DynkinComponent comp;
    comp.nodes = nodes;
    const int n = static_cast<int>(nodes.size());

    if (ndouble > 0) {
        if (n == 2 && ndouble == 1) {
            comp.letter = 'a';
            comp.k = 1;
            comp.extended = true;  // A1: two nodes joined by a double edge
            return comp;
        }
        throw unknown_diagram("double edge in a component of size " + std::to_string(n));
    }

    std::map<int, int> degree_of;  // node -> degree
    int nedges = 0;
    for (int v : nodes) {
        degree_of[v] = static_cast<int>(adj[v].size());
        nedges += degree_of[v];
    }
    nedges /= 2;

    std::vector<int> degs;
    for (auto& [v, d] : degree_of) degs.push_back(d);
    int maxdeg = *std::max_element(degs.begin(), degs.end());

    if (nedges == n) {
        // The only cyclic diagram is the extended A_k (a (k+1)-cycle).
        if (maxdeg != 2) throw unknown_diagram("cycle with a branch node");
        comp.letter = 'a';
        comp.k = n - 1;
        comp.extended = true;
        return comp;
    }
    if (nedges != n - 1) throw unknown_diagram("component is not a tree or a cycle");

    if (maxdeg <= 2) {  // path
        comp.letter = 'a';
        comp.k = n;
        comp.extended = false;
        return comp;
    }

    auto leaf_neighbors = [&](int v) {
        int c = 0;
        for (int u : adj[v])
            if (degree_of[u] == 1) ++c;
        return c;
    };

    std::vector<int> branch;  // nodes of degree >= 3
    for (int v : nodes)
        if (degree_of[v] >= 3) branch.push_back(v);

    if (branch.size() == 1) {
        int b = branch[0];
        if (degree_of[b] == 4) {
            if (n == 5 && leaf_neighbors(b) == 4) {
                comp.letter = 'd';
                comp.k = 4;
                comp.extended = true;  // D4: a 4-star
                return comp;
            }
            throw unknown_diagram("degree-4 node outside extended D4");
        }
        // One trivalent node: arm lengths decide among d/e and extended E.
        std::vector<int> arms;
        for (int u : adj[b]) {
            int len = 1, prev = b, cur = u;
            while (degree_of[cur] == 2) {
                for (int w : adj[cur])
                    if (w != prev) {
                        prev = cur;
                        cur = w;
                        break;
                    }
                ++len;
            }
            if (degree_of[cur] != 1) throw unknown_diagram("two branch nodes on one arm");
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        auto is = [&](int a, int b2, int c) { return arms[0] == a && arms[1] == b2 && arms[2] == c; };
        if (arms[0] == 1 && arms[1] == 1) {
            comp.letter = 'd';
            comp.k = n;
            comp.extended = false;
            return comp;
        }
        if (is(1, 2, 2) && n == 6) { comp.letter = 'e'; comp.k = 6; comp.extended = false; return comp; }
        if (is(1, 2, 3) && n == 7) { comp.letter = 'e'; comp.k = 7; comp.extended = false; return comp; }
        if (is(1, 2, 4) && n == 8) { comp.letter = 'e'; comp.k = 8; comp.extended = false; return comp; }
        if (is(2, 2, 2) && n == 7) { comp.letter = 'e'; comp.k = 6; comp.extended = true; return comp; }
        if (is(1, 3, 3) && n == 8) { comp.letter = 'e'; comp.k = 7; comp.extended = true; return comp; }
        if (is(1, 2, 5) && n == 9) { comp.letter = 'e'; comp.k = 8; comp.extended = true; return comp; }
        throw unknown_diagram("unrecognized trivalent tree");
    }
    if (branch.size() == 2) {
        // Extended D_k: a path with a fork at each end.
        for (int b : branch) {
            if (degree_of[b] != 3) throw unknown_diagram("branch degree above 3");
            if (leaf_neighbors(b) < 2) throw unknown_diagram("fork without two leaves");
        }
        int leaves = 0;
        for (int v : nodes)
            if (degree_of[v] == 1) ++leaves;
        if (leaves != 4) throw unknown_diagram("two-fork tree without 4 leaves");
        comp.letter = 'd';
        comp.k = n - 1;
        comp.extended = true;
        return comp;
    }
    throw unknown_diagram("more than two branch nodes");
}

}  // namespace

bool DynkinGraph::all_extended() const {
    return std::all_of(components.begin(), components.end(),
                       [](const DynkinComponent& c) { return c.extended; });
}

bool DynkinGraph::all_ordinary() const {
    return std::all_of(components.begin(), components.end(),
                       [](const DynkinComponent& c) { return !c.extended; });
}

std::string type_string_of(std::vector<DynkinComponent> comps) {
    // Order: e before d before a, then larger subscript first; equal tokens
    // merge into an exponent.
    auto rank = [](const DynkinComponent& c) {
        int letter = c.letter == 'e' ? 2 : (c.letter == 'd' ? 1 : 0);
        return std::tuple(letter, c.k, c.extended);
    };
    std::sort(comps.begin(), comps.end(),
              [&](const DynkinComponent& x, const DynkinComponent& y) { return rank(x) > rank(y); });
    std::ostringstream os;
    for (std::size_t i = 0; i < comps.size();) {
        std::size_t j = i;
        while (j < comps.size() && comps[j] == comps[i]) ++j;
        if (i) os << ' ';
        os << comps[i].token();
        if (j - i > 1) os << '^' << (j - i);
        i = j;
    }
    return os.str();
}

std::string DynkinGraph::type_string() const { return type_string_of(components); }

DynkinGraph dynkin_classify_dist(const std::vector<std::vector<int>>& dist2) {
    const int n = static_cast<int>(dist2.size());
    DynkinGraph g;
    g.n = n;
    g.dist2 = dist2;

    std::vector<std::vector<int>> adj(n), adj_all(n);
    std::vector<int> dbl(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int d = dist2[i][j];
            if (d != 4 && d != 6 && d != 8)
                throw unknown_diagram("pairwise squared distance " + std::to_string(d) +
                                      " outside {4,6,8}");
            if (d == 6) {
                adj[i].push_back(j);
                adj[j].push_back(i);
                adj_all[i].push_back(j);
                adj_all[j].push_back(i);
            } else if (d == 8) {
                adj_all[i].push_back(j);
                adj_all[j].push_back(i);
                ++dbl[i];
            }
        }

    std::vector<int> comp_id(n, -1);
    for (int start = 0; start < n; ++start) {
        if (comp_id[start] >= 0) continue;
        std::vector<int> stack{start}, nodes;
        comp_id[start] = start;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            nodes.push_back(v);
            for (int u : adj_all[v])
                if (comp_id[u] < 0) {
                    comp_id[u] = start;
                    stack.push_back(u);
                }
        }
        std::sort(nodes.begin(), nodes.end());
        int ndouble = 0;
        for (int v : nodes) ndouble += dbl[v];
        g.components.push_back(classify_component(nodes, adj, ndouble));
    }
    std::sort(g.components.begin(), g.components.end(),
              [](const DynkinComponent& a, const DynkinComponent& b) {
                  return a.nodes < b.nodes;
              });
    return g;
}

DynkinGraph dynkin_classify(const LatticeModel& model, const std::vector<LatticeVector>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<std::vector<int>> d(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int64_t q = model.dist2_ll(pts[i], pts[j]);
            d[i][j] = d[j][i] = static_cast<int>(q);
        }
    return dynkin_classify_dist(d);
}

std::vector<DynkinComponent> parse_type(const std::string& s) {
    std::vector<DynkinComponent> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        std::size_t caret = tok.find('^');
        int mult = 1;
        std::string base = tok;
        if (caret != std::string::npos) {
            mult = std::stoi(tok.substr(caret + 1));
            base = tok.substr(0, caret);
        }
        if (base.empty() || mult <= 0) throw bad_format("bad type token: " + tok);
        char c = base[0];
        DynkinComponent comp;
        comp.extended = (c == 'A' || c == 'D' || c == 'E');
        comp.letter = static_cast<char>(std::tolower(c));
        if (comp.letter != 'a' && comp.letter != 'd' && comp.letter != 'e')
            throw bad_format("bad type letter in: " + tok);
        try {
            comp.k = std::stoi(base.substr(1));
        } catch (...) {
            throw bad_format("bad type subscript in: " + tok);
        }
        if (comp.k <= 0) throw bad_format("bad type subscript in: " + tok);
        for (int i = 0; i < mult; ++i) out.push_back(comp);
    }
    return out;
}

bool same_type(const std::vector<DynkinComponent>& a, const std::vector<DynkinComponent>& b) {
    auto key = [](const DynkinComponent& c) { return std::tuple(c.letter, c.k, c.extended); };
    std::vector<std::tuple<char, int, bool>> ka, kb;
    for (const auto& c : a) ka.push_back(key(c));
    for (const auto& c : b) kb.push_back(key(c));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

bool same_type(const std::string& a, const std::string& b) {
    return same_type(parse_type(a), parse_type(b));
}

}  // namespace leech
