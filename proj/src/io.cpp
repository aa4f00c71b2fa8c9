#include "surfex/io.hpp"

#include <json.hpp>

#include "surfex/error.hpp"

namespace surfex {

namespace {

void put_order(std::string& out, std::size_t n) {
    if (n <= 62) {
        out.push_back(char(63 + n));
    } else if (n <= 258047) {
        out.push_back(char(126));
        for (int shift = 12; shift >= 0; shift -= 6) out.push_back(char(63 + ((n >> shift) & 63)));
    } else {
        out.append(2, char(126));
        for (int shift = 30; shift >= 0; shift -= 6) out.push_back(char(63 + ((n >> shift) & 63)));
    }
}

} // namespace

std::string to_graph6(const Graph& g) {
    const std::size_t n = g.order();
    if (n > graph6_max_order) {
        throw ScaleRefusal("graph6 output refused for order " + std::to_string(n));
    }
    std::string out;
    put_order(out, n);
    const std::size_t bits = n * (n - (n > 0)) / 2;
    std::string body((bits + 5) / 6, char(0));
    std::size_t k = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i, ++k) {
            if (g.has_edge(i, j)) body[k / 6] |= char(1 << (5 - k % 6));
        }
    }
    for (char& c : body) c = char(c + 63);
    return out + body;
}

Graph from_graph6(std::string_view text) {
    std::size_t pos = 0;
    constexpr std::string_view header = ">>graph6<<";
    if (text.substr(0, header.size()) == header) pos = header.size();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

    auto byte = [&](std::size_t at) -> unsigned {
        if (at >= text.size()) throw ParseError("graph6: truncated input", at);
        auto c = static_cast<unsigned char>(text[at]);
        if (c < 63 || c > 126) throw ParseError("graph6: byte outside 63..126", at);
        return c - 63U;
    };

    std::size_t n = byte(pos);
    if (n < 63) {
        pos += 1;
    } else if (byte(pos + 1) < 63) {
        n = 0;
        for (std::size_t i = 1; i <= 3; ++i) n = (n << 6) | byte(pos + i);
        pos += 4;
    } else {
        n = 0;
        for (std::size_t i = 2; i <= 7; ++i) n = (n << 6) | byte(pos + i);
        pos += 8;
    }
    if (n > graph6_max_order) throw ScaleRefusal("graph6 input order " + std::to_string(n) + " refused");

    const std::size_t bits = n * (n - (n > 0)) / 2;
    const std::size_t len = (bits + 5) / 6;
    if (text.size() != pos + len) {
        throw ParseError("graph6: expected " + std::to_string(len) + " data bytes",
                         std::min(text.size(), pos + len));
    }
    std::vector<Edge> edges;
    std::size_t k = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i, ++k) {
            if ((byte(pos + k / 6) >> (5 - k % 6)) & 1U) edges.emplace_back(i, j);
        }
    }
    if (len > 0 && bits % 6 != 0) {
        unsigned pad_mask = (1U << (6 - bits % 6)) - 1;
        if (byte(pos + len - 1) & pad_mask) throw ParseError("graph6: non-zero padding bits", pos + len - 1);
    }
    return Graph::from_edges(n, std::move(edges));
}

std::string to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.order();
    auto& arr = j["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges()) arr.push_back({e.u, e.v});
    return j.dump();
}

Graph graph_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("graph json: ") + err.what(), err.byte);
    }
    if (!j.contains("n") || !j.contains("edges")) throw PreconditionError("graph json needs n and edges");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw PreconditionError("graph json: edge must be a pair");
        edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    return Graph::from_edges(j.at("n").get<std::size_t>(), std::move(edges));
}

} // namespace surfex
