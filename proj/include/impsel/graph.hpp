#ifndef IMPSEL_GRAPH_HPP
#define IMPSEL_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "impsel/guards.hpp"

namespace impsel {

using Edge = std::pair<int, int>;

struct ParseError : std::runtime_error {
    enum class Kind { MissingHeader, BadVertexCount, MalformedLine, SelfLoop, DuplicateEdge, VertexOutOfRange };
    ParseError(Kind kind_, const std::string& what) : std::runtime_error(what), kind(kind_) {}
    Kind kind;
};

// Loop-free directed nomination graph on vertices 1..n. Immutable after
// construction; the edge set is kept sorted and both adjacency directions are
// indexed so subset-indegree queries cost O(deg) in enumeration inner loops.
class Graph {
public:
    Graph() = default;
    // Validates: endpoints in 1..n, no loops, no duplicates. Edges are stored
    // sorted lexicographically regardless of input order.
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& in_neighbors(int v) const { return in_[check(v)]; }
    const std::vector<int>& out_neighbors(int v) const { return out_[check(v)]; }
    bool has_edge(int u, int v) const;
    int indegree(int v) const { return static_cast<int>(in_neighbors(v).size()); }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    std::size_t check(int v) const;

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> in_, out_;  // index 0 unused
};

// Subset of 1..n with O(1) membership, used for indegree-from-subset queries.
class VertexSubset {
public:
    explicit VertexSubset(int n) : n_(n), bits_(static_cast<std::size_t>(n) / 64 + 1, 0) {}
    static VertexSubset none(int n) { return VertexSubset(n); }
    static VertexSubset all(int n);

    int universe_size() const { return n_; }
    void add(int v) { bits_[idx(v)] |= bit(v); }
    void remove(int v) { bits_[idx(v)] &= ~bit(v); }
    bool contains(int v) const { return v >= 1 && v <= n_ && (bits_[idx(v)] & bit(v)) != 0; }

private:
    std::size_t idx(int v) const { return static_cast<std::size_t>(v) / 64; }
    static std::uint64_t bit(int v) { return 1ULL << (v % 64); }
    int n_;
    std::vector<std::uint64_t> bits_;
};

enum class GraphClass { All, NoAbstention, OutdegreeExactlyOne };

std::string class_name(GraphClass c);
GraphClass class_from_name(std::string_view name);

// Indegree of vertex i counting only edges whose source lies in s.
int indegree_from(const Graph& g, const VertexSubset& s, int i);
// Maximum indegree over all vertices; 0 for edgeless graphs.
int max_indegree(const Graph& g);
int outdegree(const Graph& g, int i);
bool in_class(const Graph& g, GraphClass c);

// Edge-list text format: first non-comment line is n, then one "u v" line per
// edge; lines starting with '#' are ignored. parse_graph(serialize_graph(g)) == g.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

// JSON alternative: {"n": int, "edges": [[u,v], ...]}, edges sorted on output.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(std::string_view text);

// Named instance generators. The catalog covers the adversarial gadgets that
// certify upper bounds plus the parameterized worst-case families; vertex
// numbering for each gadget is fixed and documented in the README so outputs
// are stable. Parameterized families: single_edge(n>=2), cycle_plus(n>=3),
// pair_matching(even n>=2), oneplus4_{a,b,c}(even n>=4, padded with mutual
// pairs), oneplus7_{a..e}(odd n>=7, padded with mutual pairs).
Graph gen_gadget(std::string_view name, std::optional<int> n = std::nullopt);
const std::vector<std::string>& gadget_names();

// Independent coin flip per ordered pair (lexicographic order, one draw per
// pair when 0 < edge_prob < 1); deterministic given the seed.
Graph gen_random(int n, double edge_prob, std::uint64_t seed);
// Every vertex nominates exactly one uniformly random other vertex.
Graph gen_random_functional(int n, std::uint64_t seed);

// Exhaustive labeled enumeration of a graph class at size n, in a documented
// canonical order with random access by index:
//   All:                 bit b of the index holds the b-th ordered pair in
//                        lexicographic order ((1,2),...,(1,n),(2,1),...);
//                        indices run 0 .. 2^(n(n-1))-1 ascending.
//   OutdegreeExactlyOne: mixed-radix digits base (n-1), vertex 1 most
//                        significant; digit d picks the (d+1)-th smallest
//                        non-self target.
//   NoAbstention:        mixed-radix digits base 2^(n-1)-1, vertex 1 most
//                        significant; digit d encodes non-self target subset
//                        mask d+1 (bit b = b-th smallest non-self vertex).
class GraphEnumerator {
public:
    GraphEnumerator(int n, GraphClass c, const Guards& guards = {});

    std::uint64_t total() const { return total_; }
    Graph at(std::uint64_t index) const;
    // Streaming interface; yields each graph exactly once in canonical order.
    std::optional<Graph> next();

private:
    int n_;
    GraphClass class_;
    std::uint64_t total_;
    std::uint64_t cursor_ = 0;
};

}  // namespace impsel

#endif
