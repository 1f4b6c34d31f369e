#include "kpath/graph.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kpath/errors.hpp"

namespace kpath {

Graph::Graph(std::vector<std::uint64_t> offsets, std::vector<vertex_t> targets)
    : offsets_(std::move(offsets)), targets_(std::move(targets)) {
    if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != targets_.size())
        throw std::invalid_argument("CSR offsets malformed");
    if (!std::is_sorted(offsets_.begin(), offsets_.end()))
        throw std::invalid_argument("CSR offsets not monotone");
    const std::size_t n = offsets_.size() - 1;
    for (vertex_t u : targets_)
        if (u >= n) throw std::invalid_argument("CSR target out of range");
}

EdgeList parse_edge_list(std::istream& in) {
    EdgeList out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#' || line[first] == '%') continue;

        std::istringstream tokens(line);
        std::array<std::uint64_t, 2> ids{};
        for (int i = 0; i < 2; ++i) {
            std::string tok;
            if (!(tokens >> tok))
                throw parse_error("line " + std::to_string(line_no) +
                                  ": expected two integer tokens");
            std::size_t consumed = 0;
            try {
                ids[i] = std::stoull(tok, &consumed);
            } catch (const std::exception&) {
                consumed = 0;
            }
            if (consumed != tok.size() || tok[0] == '-')
                throw parse_error("line " + std::to_string(line_no) +
                                  ": not a vertex id: '" + tok + "'");
            if (ids[i] > std::numeric_limits<vertex_t>::max() || ids[i] == kNoVertex)
                throw parse_error("line " + std::to_string(line_no) + ": vertex id out of range");
        }
        std::string extra;
        if (tokens >> extra)
            throw parse_error("line " + std::to_string(line_no) + ": trailing token '" + extra +
                              "'");
        out.edges.emplace_back(static_cast<vertex_t>(ids[0]), static_cast<vertex_t>(ids[1]));
    }
    return out;
}

Graph build_graph(const EdgeList& list, const IngestOptions& opts) {
    std::vector<std::pair<vertex_t, vertex_t>> edges = list.edges;
    if (opts.drop_self_loops)
        std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    if (opts.dedup_parallel_edges)
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::uint64_t n = list.declared_vertex_count.value_or(0);
    for (const auto& [v, u] : edges) n = std::max<std::uint64_t>(n, std::max(v, u) + 1ull);

    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (const auto& [v, u] : edges) ++offsets[v + 1];
    for (std::size_t i = 1; i <= n; ++i) offsets[i] += offsets[i - 1];

    std::vector<vertex_t> targets(edges.size());
    // edges are sorted by (from, to), so a linear fill keeps successor lists ascending
    for (std::size_t i = 0; i < edges.size(); ++i) targets[i] = edges[i].second;
    return Graph(std::move(offsets), std::move(targets));
}

Graph reverse(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (vertex_t u : g.targets()) ++offsets[u + 1];
    for (std::size_t i = 1; i <= n; ++i) offsets[i] += offsets[i - 1];

    std::vector<vertex_t> targets(g.edge_count());
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    // visiting sources in ascending order keeps each reversed list sorted
    for (vertex_t v = 0; v < n; ++v)
        for (vertex_t u : g.successors(v)) targets[cursor[u]++] = v;
    return Graph(std::move(offsets), std::move(targets));
}

std::pair<Graph, SubgraphMapping> induced_subgraph(const Graph& g,
                                                   std::span<const vertex_t> keep) {
    SubgraphMapping map;
    map.new_to_old.assign(keep.begin(), keep.end());
    std::sort(map.new_to_old.begin(), map.new_to_old.end());
    map.new_to_old.erase(std::unique(map.new_to_old.begin(), map.new_to_old.end()),
                         map.new_to_old.end());
    for (vertex_t v : map.new_to_old)
        if (v >= g.vertex_count()) throw std::invalid_argument("keep set vertex out of range");

    map.old_to_new.assign(g.vertex_count(), kNoVertex);
    for (vertex_t nv = 0; nv < map.new_to_old.size(); ++nv)
        map.old_to_new[map.new_to_old[nv]] = nv;

    const std::size_t n = map.new_to_old.size();
    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (vertex_t nv = 0; nv < n; ++nv)
        for (vertex_t u : g.successors(map.new_to_old[nv]))
            if (map.old_to_new[u] != kNoVertex) ++offsets[nv + 1];
    for (std::size_t i = 1; i <= n; ++i) offsets[i] += offsets[i - 1];

    std::vector<vertex_t> targets(offsets[n]);
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    // old successor lists are sorted and old_to_new is monotone, so new lists stay sorted
    for (vertex_t nv = 0; nv < n; ++nv)
        for (vertex_t u : g.successors(map.new_to_old[nv]))
            if (map.old_to_new[u] != kNoVertex) targets[cursor[nv]++] = map.old_to_new[u];

    return {Graph(std::move(offsets), std::move(targets)), std::move(map)};
}

namespace {

constexpr char kMagic[4] = {'K', 'P', 'E', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

std::uint64_t get_u64(std::istream& in) {
    char buf[8];
    in.read(buf, 8);
    if (!in) throw parse_error("CSR cache truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

std::vector<std::uint64_t> get_u64_array(std::istream& in, std::size_t count) {
    std::vector<char> buf(count * 8);
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!in) throw parse_error("CSR cache truncated");
    std::vector<std::uint64_t> vals(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i * 8 + b]))
                 << (8 * b);
        vals[i] = v;
    }
    return vals;
}

}  // namespace

void write_binary_csr(std::ostream& out, const Graph& g) {
    out.write(kMagic, 4);
    put_u64(out, g.vertex_count());
    put_u64(out, g.edge_count());
    for (std::uint64_t o : g.offsets()) put_u64(out, o);
    for (vertex_t t : g.targets()) put_u64(out, t);
    if (!out) throw std::runtime_error("CSR cache write failed");
}

Graph read_binary_csr(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw parse_error("not a KPE1 CSR cache (bad magic)");
    const std::uint64_t n = get_u64(in);
    const std::uint64_t m = get_u64(in);
    if (n >= kNoVertex || m > (std::uint64_t{1} << 40))
        throw parse_error("CSR cache header sizes implausible");
    std::vector<std::uint64_t> offsets = get_u64_array(in, n + 1);
    const std::vector<std::uint64_t> raw_targets = get_u64_array(in, m);
    std::vector<vertex_t> targets(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (raw_targets[i] >= n) throw parse_error("CSR cache target out of range");
        targets[i] = static_cast<vertex_t>(raw_targets[i]);
    }
    try {
        return Graph(std::move(offsets), std::move(targets));
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("CSR cache invalid: ") + e.what());
    }
}

Graph load_graph_file(const std::string& path, const IngestOptions& opts) {
    std::ifstream bin(path, std::ios::binary);
    if (!bin) throw std::runtime_error("cannot open graph file: " + path);
    char magic[4] = {};
    bin.read(magic, 4);
    if (bin && std::memcmp(magic, kMagic, 4) == 0) {
        bin.seekg(0);
        return read_binary_csr(bin);
    }
    std::ifstream text(path);
    return build_graph(parse_edge_list(text), opts);
}

}  // namespace kpath
