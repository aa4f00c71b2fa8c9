// surfex command-line driver.
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "surfex/canonical.hpp"
#include "surfex/construction.hpp"
#include "surfex/degseq.hpp"
#include "surfex/embedding.hpp"
#include "surfex/extremal.hpp"
#include "surfex/families.hpp"
#include "surfex/io.hpp"
#include "surfex/spectral.hpp"
#include "surfex/walks.hpp"

using namespace surfex;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int schema_version = 1;

struct Common {
    double tol = 1e-10;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    std::string format = "json";
    std::string out;
};

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

// Rounded to 12 significant digits so the JSON text is stable.
double r12(double x) { return std::stod(fmt(x)); }

std::size_t resolve_threads(std::size_t flag) {
    if (flag) return flag;
    if (const char* env = std::getenv("SURFEX_THREADS")) {
        if (std::size_t t = std::strtoul(env, nullptr, 10)) return t;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw PreconditionError("cannot open " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit(const Common& c, const ojson& j) {
    Sink s(c.out);
    s.os() << j.dump(2) << "\n";
}

// CSV with a leading schema_version column.
void emit_csv(const Common& c, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
    Sink s(c.out);
    auto& os = s.os();
    os << "schema_version";
    for (const auto& h : header) os << "," << h;
    os << "\n";
    for (const auto& r : rows) {
        os << schema_version;
        for (const auto& x : r) os << "," << x;
        os << "\n";
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::size_t> split_sizes(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) out.push_back(std::stoul(tok));
    return out;
}

// "file:PATH" (graph6 or JSON), "family:args" or a bare graph6 string.
Graph parse_graph(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) return from_graph6(spec);
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "file") {
        std::string text = read_file(rest);
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') return graph_from_json(text);
        return from_graph6(text);
    }
    auto a = split_sizes(rest);
    auto need = [&](std::size_t k) {
        if (a.size() != k) throw PreconditionError("family " + kind + " takes " + std::to_string(k) + " argument(s)");
    };
    if (kind == "path") { need(1); return path_graph(a[0]); }
    if (kind == "cycle") { need(1); return cycle_graph(a[0]); }
    if (kind == "complete") { need(1); return complete_graph(a[0]); }
    if (kind == "empty") { need(1); return empty_graph(a[0]); }
    if (kind == "bipartite") { need(2); return complete_bipartite(a[0], a[1]); }
    if (kind == "star") { need(1); return star_graph(a[0]); }
    if (kind == "k2path") { need(1); return k2_join_path(a[0]); }
    if (kind == "k2cycle") { need(1); return k2_join_cycle(a[0]); }
    if (kind == "split") { need(1); return complete_split(a[0]); }
    if (kind == "pendant") { need(2); return kr_pendant(a[0], a[1]).graph; }
    if (kind == "k2pendant") { need(2); return k2_join(kr_pendant(a[0], a[1] - 2)).graph; }
    if (kind == "ex") { need(2); return construct_ex(a[0], a[1]).graph; }
    throw PreconditionError("unknown graph family '" + kind + "'");
}

std::string degree_string(const Graph& g) { return g.degree_sequence().to_string(); }

// ---------------------------------------------------------------- construct

void cmd_construct(const Common& c, std::size_t n, std::size_t gamma) {
    ConstructionTrace t = construct_ex(n, gamma);
    const std::string g6 = to_graph6(t.graph);
    if (!c.out.empty() && c.format == "json") {
        std::ofstream(c.out + ".g6") << g6 << "\n";
        std::ofstream(c.out + ".json") << t.to_json() << "\n";
        std::cerr << "wrote " << c.out << ".g6 and " << c.out << ".json\n";
        return;
    }
    if (c.format == "csv") {
        emit_csv(c, {"n", "gamma", "e", "graph6"},
                 {{std::to_string(n), std::to_string(gamma), std::to_string(t.graph.size()), g6}});
        return;
    }
    Sink s(c.out);
    s.os() << t.to_json() << "\n";
}

// ---------------------------------------------------------------------- rho

Graph graph_or_construct(const std::string& spec, std::size_t n, std::size_t gamma) {
    if (!spec.empty()) return parse_graph(spec);
    if (n == 0) throw PreconditionError("give --graph or --n/--gamma");
    return construct_ex(n, gamma).graph;
}

void cmd_rho(const Common& c, const Graph& g, bool perron, std::size_t max_iter) {
    SpectralOptions o;
    o.tol = c.tol;
    if (max_iter) o.max_iterations = max_iter;
    SpectralResult r = spectral_radius(g, o);
    if (c.format == "csv") {
        emit_csv(c, {"n", "e", "rho", "residual", "iterations"},
                 {{std::to_string(g.order()), std::to_string(g.size()), fmt(r.rho), fmt(r.residual),
                   std::to_string(r.iterations)}});
        return;
    }
    ojson j;
    j["schema_version"] = schema_version;
    j["n"] = g.order();
    j["e"] = g.size();
    j["rho"] = r12(r.rho);
    j["residual"] = r12(r.residual);
    j["iterations"] = r.iterations;
    j["shift"] = r12(r.shift);
    if (perron) {
        std::vector<double> x;
        for (double v : r.perron) x.push_back(r12(v));
        j["perron"] = x;
    }
    emit(c, j);
}

// ------------------------------------------------------------------- bounds

struct BoundsRow {
    std::size_t n, gamma;
    double rho;
    BoundEnvelope env;
};

void cmd_bounds(const Common& c, const std::vector<std::size_t>& ns, const std::vector<std::size_t>& gammas) {
    std::vector<std::pair<std::size_t, std::size_t>> grid;
    for (std::size_t g : gammas) {
        for (std::size_t n : ns) grid.emplace_back(n, g);
    }
    std::vector<BoundsRow> rows(grid.size());
    auto work = [&](std::size_t k) {
        auto [n, g] = grid[k];
        SpectralOptions o;
        o.tol = c.tol;
        rows[k] = {n, g, spectral_radius(construct_ex(n, g).graph, o).rho, bounds(n, g)};
    };
    // Static striping keeps the output order independent of scheduling.
    const std::size_t t = std::min(resolve_threads(c.threads), std::max<std::size_t>(grid.size(), 1));
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < t; ++w) {
        pool.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t k = w; k < grid.size(); k += t) work(k);
        }));
    }
    for (auto& f : pool) f.get();

    std::vector<std::vector<std::string>> csv;
    ojson arr = ojson::array();
    for (const auto& r : rows) {
        const bool inside = r.env.lower < r.rho && r.rho < r.env.upper;
        const bool above = r.n >= r.env.n_threshold;
        csv.push_back({std::to_string(r.n), std::to_string(r.gamma), fmt(r.rho), fmt(r.env.rho0), fmt(r.env.lower),
                       fmt(r.env.upper), fmt(r.env.ellingham_zha), inside ? "1" : "0", above ? "1" : "0"});
        ojson j;
        j["n"] = r.n;
        j["gamma"] = r.gamma;
        j["rho"] = r12(r.rho);
        j["rho0"] = r12(r.env.rho0);
        j["lower"] = r12(r.env.lower);
        j["upper"] = r12(r.env.upper);
        j["ellingham_zha"] = r12(r.env.ellingham_zha);
        j["inside"] = inside;
        j["above_threshold"] = above;
        arr.push_back(j);
    }
    if (c.format == "csv") {
        emit_csv(c, {"n", "gamma", "rho", "rho0", "lower", "upper", "ellingham_zha", "inside", "above_threshold"}, csv);
        return;
    }
    ojson j;
    j["schema_version"] = schema_version;
    j["rows"] = arr;
    emit(c, j);
}

// -------------------------------------------------------------------- walks

void cmd_walks(const Common& c, const Graph& h, std::size_t L) {
    WalkProfile p = walk_counts(h, L);
    if (c.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t l = 1; l <= L; ++l) rows.push_back({std::to_string(l), p.exact[l - 1].str()});
        emit_csv(c, {"l", "walks"}, rows);
        return;
    }
    ojson j;
    j["schema_version"] = schema_version;
    j["n"] = h.order();
    j["L"] = L;
    j["walks"] = ojson::parse(p.to_json());
    j["w2_w3_identities"] = check_w2_w3(h);
    emit(c, j);
}

// -------------------------------------------------------------------- zhang

void cmd_zhang(const Common& c, const std::vector<std::string>& specs, bool check) {
    std::vector<ZhangPart> parts;
    for (const auto& s : specs) {
        auto colon = s.find(':');
        ZhangPart p;
        p.n = std::stoul(s.substr(0, colon));
        p.h = colon == std::string::npos ? empty_graph(p.n) : parse_graph(s.substr(colon + 1));
        if (p.h.order() > p.n) throw PreconditionError("part graph larger than its part: " + s);
        parts.push_back(std::move(p));
    }
    if (parts.size() < 2) throw PreconditionError("zhang needs at least two parts");
    ZhangResult z = zhang_solve(parts, std::min(c.tol, 1e-12));
    ojson j;
    j["schema_version"] = schema_version;
    j["parts"] = parts.size();
    j["rho"] = r12(z.rho);
    j["low"] = r12(z.low);
    j["high"] = r12(z.high);
    j["bisections"] = z.bisections;
    std::string eig;
    if (check) {
        Graph g;
        for (const auto& p : parts) {
            Graph padded = p.h.order() == p.n ? p.h : disjoint_union(p.h, empty_graph(p.n - p.h.order()));
            g = g.order() == 0 ? padded : join(g, padded);
        }
        SpectralOptions o;
        o.tol = c.tol;
        const double r = spectral_radius(g, o).rho;
        j["eigensolver"] = r12(r);
        eig = fmt(r);
    }
    if (c.format == "csv") {
        emit_csv(c, {"parts", "rho", "low", "high", "bisections", "eigensolver"},
                 {{std::to_string(parts.size()), fmt(z.rho), fmt(z.low), fmt(z.high), std::to_string(z.bisections), eig}});
        return;
    }
    emit(c, j);
}

// ------------------------------------------------------------------ compare

void cmd_compare(const Common& c, const Graph& h1, const Graph& h2, std::size_t lmax) {
    WalkComparison w = walk_compare(h1, h2, lmax);
    SpectralOptions o;
    o.tol = std::min(c.tol, 1e-12);
    const Graph k2 = complete_graph(2);
    const double r1 = spectral_radius(join(k2, h1), o).rho;
    const double r2 = spectral_radius(join(k2, h2), o).rho;
    const int eig = r1 > r2 ? 1 : (r1 < r2 ? -1 : 0);
    const bool agree = w.equal ? true : w.sign == eig;
    if (c.format == "csv") {
        emit_csv(c, {"equal", "inconclusive", "k", "sign", "rho1", "rho2", "agree"},
                 {{w.equal ? "1" : "0", w.inconclusive ? "1" : "0", std::to_string(w.k), std::to_string(w.sign),
                   fmt(r1), fmt(r2), agree ? "1" : "0"}});
        return;
    }
    ojson j;
    j["schema_version"] = schema_version;
    j["equal"] = w.equal;
    j["inconclusive"] = w.inconclusive;
    j["k"] = w.k;
    j["sign"] = w.sign;
    j["rho1"] = r12(r1);
    j["rho2"] = r12(r2);
    j["agree"] = agree;
    emit(c, j);
}

// -------------------------------------------------------------------- genus

void cmd_genus(const Common& c, const Graph& g, bool orientable_only, double max_schemes,
               const std::string& method, const std::string& cert) {
    ojson j;
    j["schema_version"] = schema_version;
    j["n"] = g.order();
    j["e"] = g.size();
    j["floor"] = euler_genus_floor(g);
    EmbeddingScheme scheme;
    if (method == "triangulation") {
        auto t = find_triangulation(g);
        j["triangulable"] = t.has_value();
        if (t) {
            FaceTrace ft = trace_faces(*t);
            j["genus"] = ft.genus;
            j["orientable"] = ft.orientable;
            scheme = *t;
        }
    } else {
        GenusLimits lim;
        lim.max_schemes = max_schemes;
        lim.seed = c.seed;
        GenusResult r = min_euler_genus(g, orientable_only, lim);
        j["genus"] = r.genus;
        j["orientable"] = r.orientable;
        j["exhaustive"] = r.exhaustive;
        j["schemes_examined"] = static_cast<std::uint64_t>(r.schemes_examined);
        scheme = r.certificate;
    }
    if (!cert.empty() && scheme.order() > 0) std::ofstream(cert) << scheme.to_json() << "\n";
    if (c.format == "csv") {
        std::vector<std::string> header, row;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() == "schema_version") continue;
            header.push_back(it.key());
            row.push_back(it->is_boolean() ? (it->get<bool>() ? "1" : "0") : it->dump());
        }
        emit_csv(c, header, {row});
        return;
    }
    emit(c, j);
}

// --------------------------------------------------------- verify-embedding

ojson trace_json(const EmbeddingScheme& s) {
    FaceTrace t = trace_faces(s);
    std::size_t total = 0;
    std::map<std::size_t, std::size_t> lengths;
    for (const auto& f : t.faces) {
        total += f.size();
        ++lengths[f.size()];
    }
    ojson j;
    j["n"] = s.order();
    j["e"] = s.graph().size();
    j["f"] = t.f;
    j["genus"] = t.genus;
    j["orientable"] = t.orientable;
    j["face_length_sum"] = total;
    ojson hist = ojson::object();
    for (auto [len, k] : lengths) hist[std::to_string(len)] = k;
    j["face_lengths"] = hist;
    return j;
}

ojson facecount_json(const EmbeddingScheme& s, Vertex u1, Vertex u2) {
    TriangulationReport r = verify_triangulation_facecounts(s, u1, u2);
    ojson j;
    j["faces_avoiding"] = r.faces_avoiding;
    j["expected_avoiding"] = r.expected_avoiding;
    j["private_ok"] = r.private_ok;
    j["wheels_ok"] = r.wheels_ok;
    j["non_wheel"] = r.non_wheel;
    ojson bad = ojson::array();
    for (const auto& p : r.private_faces) {
        if (p.observed != p.expected) bad.push_back({{"v", p.v}, {"observed", p.observed}, {"expected", p.expected}});
    }
    j["private_mismatches"] = bad;
    j["ok"] = r.ok();
    return j;
}

void cmd_verify(const Common& c, const std::string& path, const std::vector<Vertex>& dom) {
    EmbeddingScheme s = EmbeddingScheme::from_json(read_file(path));
    ojson j;
    j["schema_version"] = schema_version;
    j["file"] = path;
    j.update(trace_json(s));
    if (dom.size() == 2) j["facecounts"] = facecount_json(s, dom[0], dom[1]);
    emit(c, j);
}

// ------------------------------------------------------------------- splice

void cmd_splice(const Common& c, std::size_t n, std::size_t gamma, const std::string& scheme_out) {
    ExtremalCandidate x = build_extremal_candidates(n, gamma);
    if (!scheme_out.empty()) std::ofstream(scheme_out) << x.scheme.to_json() << "\n";
    ojson j;
    j["schema_version"] = schema_version;
    j["gamma"] = gamma;
    j["graph6"] = to_graph6(x.graph);
    j["dominating"] = {x.u1, x.u2};
    j.update(trace_json(x.scheme));
    j["facecounts"] = facecount_json(x.scheme, x.u1, x.u2);
    SpectralOptions o;
    o.tol = c.tol;
    j["rho"] = r12(spectral_radius(x.graph, o).rho);
    emit(c, j);
}

// ------------------------------------------------------------------- search

std::string flags_of(std::initializer_list<std::pair<bool, const char*>> fs) {
    std::string s;
    for (auto [on, name] : fs) {
        if (!on) continue;
        if (!s.empty()) s += "|";
        s += name;
    }
    return s;
}

void stream_rows(const Common& c, const std::vector<std::vector<std::string>>& rows) {
    if (c.format == "csv") {
        emit_csv(c, {"graph6", "rho", "e", "degrees", "flags"}, rows);
        return;
    }
    ojson arr = ojson::array();
    for (const auto& r : rows) {
        arr.push_back({{"graph6", r[0]}, {"rho", r12(std::stod(r[1]))}, {"e", std::stoul(r[2])},
                       {"degrees", r[3]}, {"flags", r[4]}});
    }
    ojson j;
    j["schema_version"] = schema_version;
    j["rows"] = arr;
    emit(c, j);
}

void cmd_search_planar(const Common& c, std::size_t n, std::size_t limit) {
    auto ranked = spex_bruteforce(n);
    const Graph target = n >= 3 ? k2_join_path(n) : complete_graph(n);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < ranked.size() && (limit == 0 || k < limit); ++k) {
        const Graph& g = ranked[k].graph;
        rows.push_back({to_graph6(g), fmt(ranked[k].rho), std::to_string(g.size()), degree_string(g),
                        flags_of({{k == 0, "argmax"}, {isomorphic(g, target), "k2_join_path"},
                                  {n >= 3 && g.size() == 3 * n - 6, "maximal"}})});
    }
    stream_rows(c, rows);
}

void cmd_search_sweep(const Common& c, std::size_t n, std::size_t gamma, std::size_t window, std::size_t keep) {
    SweepOptions o;
    o.window = window;
    o.keep = keep;
    SweepResult r = candidate_sweep(n, gamma, o);
    const Graph k2 = complete_graph(2);
    std::vector<std::vector<std::string>> rows;
    auto row = [&](const SweepCandidate& s, std::string flags) {
        Graph g = join(k2, s.inner);
        rows.push_back({to_graph6(canonical_graph(g)), fmt(s.rho), std::to_string(g.size()), degree_string(s.inner),
                        std::move(flags)});
    };
    for (const auto& s : r.rejected) row(s, "minor");
    if (r.best) row(*r.best, flags_of({{true, "minor_free"}, {r.best->embeddable, "embeddable"},
                                       {r.best_is_pendant_clique, "pendant_clique"}, {true, "best"}}));
    if (r.embedded && (!r.best || r.embedded->rho != r.best->rho || !r.best->embeddable)) {
        row(*r.embedded, flags_of({{true, "minor_free"}, {true, "embeddable"},
                                   {r.embedded_is_pendant_clique, "pendant_clique"}, {true, "best_embedded"}}));
    }
    std::cerr << "chord sets " << r.chord_sets << ", ranked " << r.ranked << ", minor tests " << r.minor_tests
              << ", minor-free but not embeddable " << r.not_embeddable << "\n";
    stream_rows(c, rows);
}

// ------------------------------------------------------------------- w3max

std::vector<std::size_t> parse_degrees(const std::string& s) {
    // "4,4,3,3,2*12,1,1"
    std::vector<std::size_t> d;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto star = tok.find('*');
        std::size_t v = std::stoul(tok.substr(0, star));
        std::size_t k = star == std::string::npos ? 1 : std::stoul(tok.substr(star + 1));
        d.insert(d.end(), k, v);
    }
    return d;
}

void cmd_w3max(const Common& c, const std::string& degrees, int which, std::size_t n, const std::string& realize,
               std::size_t restarts) {
    W3SearchOptions o;
    o.seed = c.seed;
    o.restarts = restarts;
    if (realize == "connected") o.realizations = W3SearchOptions::Realizations::connected;
    else if (realize == "no-isolated-edge") o.realizations = W3SearchOptions::Realizations::no_isolated_edge;
    else if (realize != "all") throw PreconditionError("unknown realization class " + realize);

    std::optional<W3Case> wc;
    DegreeSequence pi;
    if (which) {
        wc = w3_case(which, n);
        pi = wc->pi;
    } else {
        auto d = parse_degrees(degrees);
        std::sort(d.rbegin(), d.rend());
        pi = DegreeSequence(std::move(d));
    }
    if (!is_graphical(pi)) throw PreconditionError("degree sequence " + pi.to_string() + " is not graphical");
    W3SearchResult r = max_w3_degseq(pi, o);
    ojson j;
    j["schema_version"] = schema_version;
    j["degrees"] = pi.to_string();
    j["w3"] = r.w3;
    j["exhaustive"] = r.exhaustive;
    j["realizations"] = realize;
    j["witness_graph6"] = to_graph6(r.witness);
    if (wc) {
        j["tabulated"] = wc->tabulated;
        j["match"] = r.w3 == wc->tabulated;
    }
    emit(c, j);
}

// ------------------------------------------------------------------- report

void cmd_report(const Common& c, std::size_t n, std::size_t gamma) {
    SpectralOptions o;
    o.tol = c.tol;
    ojson j;
    j["schema_version"] = schema_version;
    j["n"] = n;
    j["gamma"] = gamma;

    ConstructionTrace t = construct_ex(n, gamma);
    const double rho = spectral_radius(t.graph, o).rho;
    BoundEnvelope env = bounds(n, gamma);
    ojson con;
    con["e"] = t.graph.size();
    con["expected_e"] = 3 * (n - 2 + gamma);
    con["witness_ok"] = t.witness.holds_in(t.graph);
    con["surgeries"] = t.surgery_log.size();
    con["rho"] = r12(rho);
    con["inside_sandwich"] = env.lower < rho && rho < env.upper;
    con["below_ellingham_zha"] = rho < env.ellingham_zha;
    if (n <= minor_max_host) con["k3_minor_free"] = !has_minor(t.graph, complete_bipartite(3, 2 * gamma + 3));
    j["construction"] = con;

    ojson b;
    b["rho0"] = r12(env.rho0);
    b["lower"] = r12(env.lower);
    b["upper"] = r12(env.upper);
    b["ellingham_zha"] = r12(env.ellingham_zha);
    b["n_threshold"] = env.n_threshold;
    j["bounds"] = b;

    if ((gamma == 1 || gamma == 2) && n >= gamma + 5) {
        ExtremalCandidate x = build_extremal_candidates(n, gamma);
        ojson e = trace_json(x.scheme);
        e["rho"] = r12(spectral_radius(x.graph, o).rho);
        e["facecounts"] = facecount_json(x.scheme, x.u1, x.u2);
        e["beats_construction"] = e["rho"].get<double>() > con["rho"].get<double>();
        j["pendant_clique"] = e;
    }
    emit(c, j);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral extremal graphs on surfaces"};
    app.require_subcommand(1);
    Common c;
    std::size_t n = 0, gamma = 0;
    std::string graph;

    auto common = [&](CLI::App* sub, bool with_out = true) {
        sub->add_option("--tol", c.tol, "relative residual tolerance")->capture_default_str();
        sub->add_option("--seed", c.seed, "seed for randomized procedures")->capture_default_str();
        sub->add_option("--threads", c.threads, "worker threads (default: $SURFEX_THREADS or all cores)");
        sub->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
        if (with_out) sub->add_option("--out", c.out, "output path (default stdout)");
    };
    const char* graph_help = "graph6 string, file:PATH or family:args (complete:5, bipartite:3:3, k2pendant:5:30, ex:20:2, ...)";

    auto* construct = app.add_subcommand("construct", "member of EX(n, gamma) with its construction trace");
    common(construct);
    construct->add_option("--n", n)->required();
    construct->add_option("--gamma", gamma)->required();

    auto* rho = app.add_subcommand("rho", "spectral radius by power iteration");
    common(rho);
    bool perron = false;
    rho->add_option("--graph", graph, graph_help);
    rho->add_option("--n", n);
    rho->add_option("--gamma", gamma);
    rho->add_flag("--perron", perron, "include the Perron vector");
    std::size_t max_iter = 0;
    rho->add_option("--max-iter", max_iter, "iteration cap (default: library setting)");

    auto* bnd = app.add_subcommand("bounds", "rho of the construction against the bound envelope");
    common(bnd);
    std::vector<std::size_t> ns, gammas;
    bnd->add_option("--n", ns)->required()->delimiter(',');
    bnd->add_option("--gamma", gammas)->required()->delimiter(',');

    auto* walks = app.add_subcommand("walks", "exact walk counts w^(1..L)");
    common(walks);
    std::size_t L = 10;
    walks->add_option("--graph", graph, graph_help)->required();
    walks->add_option("--L", L)->capture_default_str();

    auto* zhang = app.add_subcommand("zhang", "spectral radius of a complete multipartite frame");
    common(zhang);
    std::vector<std::string> parts;
    bool check = false;
    zhang->add_option("--part", parts, "N or N:GRAPH, repeated")->required();
    zhang->add_flag("--check", check, "cross-check against the eigensolver");

    auto* compare = app.add_subcommand("compare", "walk-profile ordering of K2 join H1 vs K2 join H2");
    common(compare);
    std::vector<std::string> pair;
    std::size_t lmax = 40;
    compare->add_option("--graph", pair, graph_help)->required()->expected(2);
    compare->add_option("--lmax", lmax)->capture_default_str();

    auto* genus = app.add_subcommand("genus", "minimum Euler genus");
    common(genus);
    bool orientable_only = false;
    double max_schemes = 1e9;
    std::string method = "search", cert;
    genus->add_option("--graph", graph, graph_help)->required();
    genus->add_flag("--orientable", orientable_only);
    genus->add_option("--max-schemes", max_schemes)->capture_default_str();
    genus->add_option("--method", method)->check(CLI::IsMember({"search", "triangulation"}))->capture_default_str();
    genus->add_option("--certificate", cert, "write the best scheme here");

    auto* verify = app.add_subcommand("verify-embedding", "trace the faces of a scheme file");
    common(verify);
    std::string scheme_path;
    std::vector<Vertex> dom;
    verify->add_option("scheme", scheme_path)->required();
    verify->add_option("--dominating", dom, "u* u**: also check face counts")->expected(2);

    auto* splice = app.add_subcommand("splice", "pendant-clique candidate with a spliced triangulation");
    common(splice);
    std::string scheme_out;
    splice->add_option("--n", n)->required();
    splice->add_option("--gamma", gamma)->required()->check(CLI::Range(1, 2));
    splice->add_option("--scheme", scheme_out, "write the scheme JSON here");

    auto* search = app.add_subcommand("search", "planar brute force or chord sweep");
    common(search);
    std::string mode = "planar";
    std::size_t window = 0, keep = 2000, limit = 0;
    search->add_option("--mode", mode)->check(CLI::IsMember({"planar", "sweep"}))->capture_default_str();
    search->add_option("--n", n)->required();
    search->add_option("--gamma", gamma);
    search->add_option("--window", window, "sweep: confine chords to this many path vertices");
    search->add_option("--keep", keep)->capture_default_str();
    search->add_option("--limit", limit, "planar: rows to print (0 = all)");

    auto* w3 = app.add_subcommand("w3max", "largest w^(3) over realizations of a degree sequence");
    common(w3);
    std::string degrees, realize = "all";
    int which = 0;
    std::size_t restarts = 200;
    auto* dopt = w3->add_option("--degrees", degrees, "e.g. 4,4,3,3,2*12,1,1");
    w3->add_option("--case", which, "tabulated case 1..4 (needs --n)")->excludes(dopt);
    w3->add_option("--n", n);
    w3->add_option("--realizations", realize)
        ->check(CLI::IsMember({"all", "connected", "no-isolated-edge"}))
        ->capture_default_str();
    w3->add_option("--restarts", restarts)->capture_default_str();

    auto* report = app.add_subcommand("report", "construction, bounds and pendant-clique summary");
    common(report);
    report->add_option("--n", n)->required();
    report->add_option("--gamma", gamma)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ErrorKind::precondition);
    }

    try {
        if (*construct) cmd_construct(c, n, gamma);
        else if (*rho) cmd_rho(c, graph_or_construct(graph, n, gamma), perron, max_iter);
        else if (*bnd) cmd_bounds(c, ns, gammas);
        else if (*walks) cmd_walks(c, parse_graph(graph), L);
        else if (*zhang) cmd_zhang(c, parts, check);
        else if (*compare) cmd_compare(c, parse_graph(pair[0]), parse_graph(pair[1]), lmax);
        else if (*genus) cmd_genus(c, parse_graph(graph), orientable_only, max_schemes, method, cert);
        else if (*verify) cmd_verify(c, scheme_path, dom);
        else if (*splice) cmd_splice(c, n, gamma, scheme_out);
        else if (*search) {
            if (mode == "planar") cmd_search_planar(c, n, limit);
            else cmd_search_sweep(c, n, gamma, window, keep);
        } else if (*w3) {
            if (!which && degrees.empty()) throw PreconditionError("give --degrees or --case");
            cmd_w3max(c, degrees, which, n, realize, restarts);
        } else if (*report) cmd_report(c, n, gamma);
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << " (last estimate " << fmt(e.best_estimate()) << ")\n";
        return static_cast<int>(e.kind());
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number: " << e.what() << "\n";
        return static_cast<int>(ErrorKind::precondition);
    } catch (const std::out_of_range& e) {
        std::cerr << "error: value out of range: " << e.what() << "\n";
        return static_cast<int>(ErrorKind::precondition);
    }
    return 0;
}
