#include "impsel/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "impsel/rng.hpp"
#include "json.hpp"

namespace impsel {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 1) throw std::domain_error("graph: vertex count must be positive");
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::out_of_range("graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("graph: self-loop not allowed");
        if (i > 0 && edges[i] == edges[i - 1])
            throw std::invalid_argument("graph: duplicate edge");
    }
    edges_ = std::move(edges);
    in_.assign(static_cast<std::size_t>(n) + 1, {});
    out_.assign(static_cast<std::size_t>(n) + 1, {});
    for (auto [u, v] : edges_) {
        out_[static_cast<std::size_t>(u)].push_back(v);
        in_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& l : in_) std::sort(l.begin(), l.end());
    // out_ lists are already sorted because edges_ is.
}

std::size_t Graph::check(int v) const {
    if (v < 1 || v > n_) throw std::out_of_range("graph: vertex out of range");
    return static_cast<std::size_t>(v);
}

bool Graph::has_edge(int u, int v) const {
    const auto& outs = out_neighbors(u);
    return std::binary_search(outs.begin(), outs.end(), v);
}

VertexSubset VertexSubset::all(int n) {
    VertexSubset s(n);
    for (int v = 1; v <= n; ++v) s.add(v);
    return s;
}

std::string class_name(GraphClass c) {
    switch (c) {
        case GraphClass::All: return "all";
        case GraphClass::NoAbstention: return "no-abstention";
        case GraphClass::OutdegreeExactlyOne: return "outdegree-one";
    }
    return "?";
}

GraphClass class_from_name(std::string_view name) {
    if (name == "all") return GraphClass::All;
    if (name == "no-abstention") return GraphClass::NoAbstention;
    if (name == "outdegree-one") return GraphClass::OutdegreeExactlyOne;
    throw std::invalid_argument("unknown graph class: " + std::string(name));
}

int indegree_from(const Graph& g, const VertexSubset& s, int i) {
    int count = 0;
    for (int src : g.in_neighbors(i))
        if (s.contains(src)) ++count;
    return count;
}

int max_indegree(const Graph& g) {
    int best = 0;
    for (int v = 1; v <= g.vertex_count(); ++v) best = std::max(best, g.indegree(v));
    return best;
}

int outdegree(const Graph& g, int i) {
    return static_cast<int>(g.out_neighbors(i).size());
}

bool in_class(const Graph& g, GraphClass c) {
    switch (c) {
        case GraphClass::All: return true;
        case GraphClass::NoAbstention:
            for (int v = 1; v <= g.vertex_count(); ++v)
                if (outdegree(g, v) < 1) return false;
            return true;
        case GraphClass::OutdegreeExactlyOne:
            for (int v = 1; v <= g.vertex_count(); ++v)
                if (outdegree(g, v) != 1) return false;
            return true;
    }
    return false;
}

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;  // blank
}

}  // namespace

Graph parse_graph(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    int n = -1;
    std::vector<Edge> edges;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_comment_or_blank(line)) continue;
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n) || n < 1)
                throw ParseError(ParseError::Kind::BadVertexCount,
                                 "line " + std::to_string(lineno) + ": bad vertex count");
            std::string rest;
            if (ls >> rest)
                throw ParseError(ParseError::Kind::BadVertexCount,
                                 "line " + std::to_string(lineno) + ": trailing tokens after vertex count");
            continue;
        }
        int u, v;
        std::string rest;
        if (!(ls >> u >> v) || (ls >> rest))
            throw ParseError(ParseError::Kind::MalformedLine,
                             "line " + std::to_string(lineno) + ": expected 'u v'");
        if (u == v)
            throw ParseError(ParseError::Kind::SelfLoop,
                             "line " + std::to_string(lineno) + ": self-loop " + std::to_string(u));
        if (u < 1 || u > n || v < 1 || v > n)
            throw ParseError(ParseError::Kind::VertexOutOfRange,
                             "line " + std::to_string(lineno) + ": vertex out of range 1.." + std::to_string(n));
        Edge e{u, v};
        if (std::find(edges.begin(), edges.end(), e) != edges.end())
            throw ParseError(ParseError::Kind::DuplicateEdge,
                             "line " + std::to_string(lineno) + ": duplicate edge " +
                                 std::to_string(u) + " " + std::to_string(v));
        edges.push_back(e);
    }
    if (n < 0) throw ParseError(ParseError::Kind::MissingHeader, "missing vertex-count line");
    return Graph(n, std::move(edges));
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream os;
    os << g.vertex_count() << "\n";
    for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
    return os.str();
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    auto arr = nlohmann::json::array();
    for (auto [u, v] : g.edges()) arr.push_back({u, v});
    j["edges"] = std::move(arr);
    return j.dump();
}

Graph graph_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(ParseError::Kind::MalformedLine, std::string("bad json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw ParseError(ParseError::Kind::MissingHeader, "json graph needs fields 'n' and 'edges'");
    int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError(ParseError::Kind::MalformedLine, "json edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    try {
        return Graph(n, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(ParseError::Kind::DuplicateEdge, e.what());
    } catch (const std::out_of_range& e) {
        throw ParseError(ParseError::Kind::VertexOutOfRange, e.what());
    }
}

namespace {

// Mutual nomination pairs (first,first+1), (first+2,first+3), ...
void add_pairs(std::vector<Edge>& edges, int first, int last) {
    for (int v = first; v + 1 <= last; v += 2) {
        edges.emplace_back(v, v + 1);
        edges.emplace_back(v + 1, v);
    }
}

Graph fixed_gadget(int n, std::vector<Edge> edges, std::optional<int> given,
                   std::string_view name) {
    if (given && *given != n)
        throw std::invalid_argument("gadget " + std::string(name) + " has fixed size " +
                                    std::to_string(n));
    return Graph(n, std::move(edges));
}

int require_n(std::optional<int> n, std::string_view name) {
    if (!n) throw std::invalid_argument("gadget " + std::string(name) + " needs n");
    return *n;
}

}  // namespace

const std::vector<std::string>& gadget_names() {
    static const std::vector<std::string> names = {
        "upper_left", "upper_right", "perm_up",
        "oneplus3_a", "oneplus3_b",
        "oneplus4_a", "oneplus4_b", "oneplus4_c",
        "oneplus5_a", "oneplus5_b", "oneplus5_c", "oneplus5_d", "oneplus5_e", "oneplus5_f",
        "oneplus7_a", "oneplus7_b", "oneplus7_c", "oneplus7_d", "oneplus7_e",
        "single_edge", "cycle_plus", "pair_matching",
    };
    return names;
}

Graph gen_gadget(std::string_view name, std::optional<int> n) {
    // Two-vertex pair certifying that no impartial mechanism beats 1/2: the
    // mutual cycle, and the cycle with vertex 1's outgoing edge removed.
    if (name == "upper_left") return fixed_gadget(2, {{1, 2}, {2, 1}}, n, name);
    if (name == "upper_right") return fixed_gadget(2, {{2, 1}}, n, name);
    // Four vertices, hub 2 nominated by everyone; two mutual pairs 1-2, 3-4
    // plus 3,4 nominating the hub. Permutation mechanism reaches exactly 2/3 here.
    if (name == "perm_up")
        return fixed_gadget(4, {{1, 2}, {2, 1}, {3, 2}, {4, 2}, {3, 4}, {4, 3}}, n, name);
    if (name == "oneplus3_a") return fixed_gadget(3, {{1, 2}, {2, 1}, {3, 1}, {3, 2}}, n, name);
    if (name == "oneplus3_b") return fixed_gadget(3, {{1, 3}, {2, 1}, {3, 1}, {3, 2}}, n, name);
    if (name == "oneplus4_a" || name == "oneplus4_b" || name == "oneplus4_c") {
        int size = n.value_or(4);
        if (size < 4 || size % 2 != 0)
            throw std::invalid_argument("oneplus4 gadgets need even n >= 4");
        std::vector<Edge> edges;
        if (name == "oneplus4_a") edges = {{1, 2}, {2, 1}, {3, 4}, {4, 3}};
        else if (name == "oneplus4_b") edges = {{1, 2}, {2, 1}, {3, 4}, {4, 1}, {4, 2}};
        else edges = {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {4, 2}};
        add_pairs(edges, 5, size);
        return Graph(size, std::move(edges));
    }
    if (name == "oneplus5_a") return fixed_gadget(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}}, n, name);
    if (name == "oneplus5_b") return fixed_gadget(5, {{1, 2}, {2, 3}, {3, 2}, {4, 5}, {5, 1}}, n, name);
    if (name == "oneplus5_c") return fixed_gadget(5, {{1, 2}, {2, 3}, {3, 2}, {4, 3}, {5, 1}}, n, name);
    if (name == "oneplus5_d")
        return fixed_gadget(5, {{1, 2}, {1, 3}, {2, 3}, {3, 2}, {4, 5}, {5, 1}}, n, name);
    if (name == "oneplus5_e") return fixed_gadget(5, {{1, 2}, {2, 4}, {3, 2}, {4, 3}, {5, 1}}, n, name);
    if (name == "oneplus5_f")
        return fixed_gadget(5, {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 1}}, n, name);
    if (name == "oneplus7_a" || name == "oneplus7_b" || name == "oneplus7_c" ||
        name == "oneplus7_d" || name == "oneplus7_e") {
        int size = n.value_or(7);
        if (size < 7 || size % 2 == 0)
            throw std::invalid_argument("oneplus7 gadgets need odd n >= 7");
        std::vector<Edge> edges;
        if (name == "oneplus7_a")
            edges = {{1, 2}, {2, 1}, {3, 4}, {4, 3}, {5, 7}, {7, 6}, {6, 5}};
        else if (name == "oneplus7_b")
            edges = {{1, 2}, {2, 1}, {3, 1}, {3, 2}, {4, 3}, {5, 7}, {7, 6}, {6, 5}};
        else if (name == "oneplus7_c")
            edges = {{1, 2}, {2, 1}, {3, 4}, {4, 3}, {5, 3}, {5, 4}, {7, 6}, {6, 5}};
        else if (name == "oneplus7_d")
            edges = {{1, 2}, {2, 4}, {4, 3}, {3, 1}, {3, 2}, {5, 7}, {7, 6}, {6, 5}};
        else
            edges = {{1, 2}, {2, 1}, {3, 4}, {4, 7}, {5, 3}, {5, 4}, {6, 5}, {7, 6}};
        add_pairs(edges, 8, size);
        return Graph(size, std::move(edges));
    }
    if (name == "single_edge") {
        int size = require_n(n, name);
        if (size < 2) throw std::invalid_argument("single_edge needs n >= 2");
        return Graph(size, {{1, 2}});
    }
    if (name == "cycle_plus") {
        int size = require_n(n, name);
        if (size < 3) throw std::invalid_argument("cycle_plus needs n >= 3");
        std::vector<Edge> edges;
        for (int i = 1; i <= size - 2; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(size - 1, 1);
        edges.emplace_back(size, 1);
        return Graph(size, std::move(edges));
    }
    if (name == "pair_matching") {
        int size = require_n(n, name);
        if (size < 2 || size % 2 != 0)
            throw std::invalid_argument("pair_matching needs even n >= 2");
        std::vector<Edge> edges;
        add_pairs(edges, 1, size);
        return Graph(size, std::move(edges));
    }
    throw std::invalid_argument("unknown gadget: " + std::string(name));
}

Graph gen_random(int n, double edge_prob, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("gen_random: n must be positive");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
        throw std::domain_error("gen_random: edge_prob must be in [0,1]");
    std::vector<Edge> edges;
    if (edge_prob > 0.0) {
        Prng rng(seed);
        // Threshold comparison on the raw 64-bit draw keeps the result exactly
        // reproducible; prob 1 short-circuits to avoid threshold overflow.
        const long double scale = 18446744073709551616.0L;  // 2^64
        auto threshold = static_cast<std::uint64_t>(
            std::min(scale - 1.0L, std::floor(static_cast<long double>(edge_prob) * scale)));
        for (int u = 1; u <= n; ++u)
            for (int v = 1; v <= n; ++v) {
                if (u == v) continue;
                if (edge_prob >= 1.0 || rng.next_u64() <= threshold) edges.emplace_back(u, v);
            }
    }
    return Graph(n, std::move(edges));
}

Graph gen_random_functional(int n, std::uint64_t seed) {
    if (n < 2) throw std::domain_error("gen_random_functional: n must be at least 2");
    Prng rng(seed);
    std::vector<Edge> edges;
    for (int u = 1; u <= n; ++u) {
        auto t = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n - 1)));
        int target = (t < u - 1) ? t + 1 : t + 2;  // skip u itself
        edges.emplace_back(u, target);
    }
    return Graph(n, std::move(edges));
}

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

GraphEnumerator::GraphEnumerator(int n, GraphClass c, const Guards& guards) : n_(n), class_(c) {
    if (n < 1) throw std::domain_error("enumerate_graphs: n must be positive");
    int limit = 0;
    double estimate = 0;
    switch (c) {
        case GraphClass::All:
            limit = guards.max_enum_all_n;
            estimate = std::pow(2.0, n * (n - 1));
            break;
        case GraphClass::NoAbstention:
            limit = guards.max_enum_no_abstention_n;
            estimate = std::pow(std::pow(2.0, n - 1) - 1.0, n);
            break;
        case GraphClass::OutdegreeExactlyOne:
            limit = guards.max_enum_outdegree_one_n;
            estimate = std::pow(static_cast<double>(n - 1), n);
            break;
    }
    if (n > limit)
        throw SizeGuardError("enumerate_graphs: n=" + std::to_string(n) + " exceeds guard " +
                                 std::to_string(limit) + " for class " + class_name(c) +
                                 " (about " + std::to_string(estimate) + " graphs)",
                             estimate);
    if (c == GraphClass::OutdegreeExactlyOne && n < 2)
        throw std::domain_error("enumerate_graphs: outdegree-one needs n >= 2");
    // Hard caps keep the 64-bit index space valid even with raised guards.
    int hard_cap = (c == GraphClass::OutdegreeExactlyOne) ? 16 : 8;
    if (n > hard_cap)
        throw std::invalid_argument("enumerate_graphs: n=" + std::to_string(n) +
                                    " exceeds the 64-bit index space for class " + class_name(c));
    switch (c) {
        case GraphClass::All: total_ = ipow(2, n * (n - 1)); break;
        case GraphClass::NoAbstention: total_ = ipow(ipow(2, n - 1) - 1, n); break;
        case GraphClass::OutdegreeExactlyOne: total_ = ipow(static_cast<std::uint64_t>(n - 1), n); break;
    }
}

Graph GraphEnumerator::at(std::uint64_t index) const {
    if (index >= total_) throw std::out_of_range("enumerate_graphs: index out of range");
    std::vector<Edge> edges;
    switch (class_) {
        case GraphClass::All: {
            int bit = 0;
            for (int u = 1; u <= n_; ++u)
                for (int v = 1; v <= n_; ++v) {
                    if (u == v) continue;
                    if ((index >> bit) & 1ULL) edges.emplace_back(u, v);
                    ++bit;
                }
            break;
        }
        case GraphClass::OutdegreeExactlyOne: {
            // Vertex 1 owns the most significant digit.
            std::uint64_t radix = static_cast<std::uint64_t>(n_ - 1);
            std::uint64_t rest = index;
            std::vector<int> digit(static_cast<std::size_t>(n_) + 1, 0);
            for (int u = n_; u >= 1; --u) {
                digit[static_cast<std::size_t>(u)] = static_cast<int>(rest % radix);
                rest /= radix;
            }
            for (int u = 1; u <= n_; ++u) {
                int t = digit[static_cast<std::size_t>(u)];
                int target = (t < u - 1) ? t + 1 : t + 2;
                edges.emplace_back(u, target);
            }
            break;
        }
        case GraphClass::NoAbstention: {
            std::uint64_t radix = ipow(2, n_ - 1) - 1;
            std::uint64_t rest = index;
            std::vector<std::uint64_t> digit(static_cast<std::size_t>(n_) + 1, 0);
            for (int u = n_; u >= 1; --u) {
                digit[static_cast<std::size_t>(u)] = rest % radix;
                rest /= radix;
            }
            for (int u = 1; u <= n_; ++u) {
                std::uint64_t mask = digit[static_cast<std::size_t>(u)] + 1;  // nonempty subset
                int b = 0;
                for (int v = 1; v <= n_; ++v) {
                    if (v == u) continue;
                    if ((mask >> b) & 1ULL) edges.emplace_back(u, v);
                    ++b;
                }
            }
            break;
        }
    }
    return Graph(n_, std::move(edges));
}

std::optional<Graph> GraphEnumerator::next() {
    if (cursor_ >= total_) return std::nullopt;
    return at(cursor_++);
}

}  // namespace impsel
