#include "qmut/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "qmut/isomorphism.hpp"

namespace qmut {

using json = nlohmann::ordered_json;

namespace {

std::string line_column(std::string_view bytes, std::size_t offset) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < bytes.size(); ++i) {
        if (bytes[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return fmt::format("line {}, column {}", line, column);
}

int integer_field(const nlohmann::json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw LoadError(where, fmt::format("missing field \"{}\"", key));
    if (!it->is_number_integer()) throw LoadError(where + "." + key, "expected an integer");
    return it->get<int>();
}

}  // namespace

std::string save_quiver(const ColoredQuiver& q, DocumentMode mode) {
    std::string out = "{\n";
    out += "  \"version\": 1,\n";
    out += fmt::format("  \"m\": {},\n", q.m());
    out += "  \"vertices\": [";
    for (Vertex v = 0; v < q.n(); ++v) {
        if (v) out += ", ";
        out += nlohmann::json(q.name(v)).dump();
    }
    out += "],\n";
    out += fmt::format("  \"mode\": \"{}\",\n", mode == DocumentMode::Full ? "full" : "half");
    std::vector<Arrow> arrows = mode == DocumentMode::Full ? q.arrows() : q.half_arrows();
    out += "  \"arrows\": [";
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        const Arrow& a = arrows[i];
        out += i ? ",\n    " : "\n    ";
        out += fmt::format("{{\"from\": {}, \"to\": {}, \"color\": {}, \"count\": {}}}", a.from, a.to, a.color,
                           a.count);
    }
    out += arrows.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

ColoredQuiver load_quiver_unchecked(std::string_view bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        throw LoadError(line_column(bytes, at), "malformed JSON");
    }
    if (!doc.is_object()) throw LoadError("document", "expected a JSON object");
    int version = integer_field(doc, "version", "document");
    if (version != 1) throw LoadError("version", fmt::format("unsupported version {}", version));
    int m = integer_field(doc, "m", "document");
    if (m < 1 || m > 255) throw LoadError("m", fmt::format("m = {} out of range 1..255", m));

    auto vit = doc.find("vertices");
    if (vit == doc.end()) throw LoadError("document", "missing field \"vertices\"");
    if (!vit->is_array()) throw LoadError("vertices", "expected an array of names");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vit->size(); ++i) {
        if (!(*vit)[i].is_string()) throw LoadError(fmt::format("vertices[{}]", i), "expected a string");
        names.push_back((*vit)[i].get<std::string>());
    }
    const int n = static_cast<int>(names.size());
    if (n < 1) throw LoadError("vertices", "at least one vertex is required");
    if (n > 64) throw LoadError("vertices", "at most 64 vertices are supported");
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
        throw LoadError("vertices", "vertex names must be distinct");

    DocumentMode mode = DocumentMode::Full;
    if (auto mit = doc.find("mode"); mit != doc.end()) {
        if (!mit->is_string()) throw LoadError("mode", "expected \"full\" or \"half\"");
        std::string s = mit->get<std::string>();
        if (s == "half") mode = DocumentMode::Half;
        else if (s != "full") throw LoadError("mode", fmt::format("unknown mode \"{}\"", s));
    }

    auto ait = doc.find("arrows");
    if (ait == doc.end()) throw LoadError("document", "missing field \"arrows\"");
    if (!ait->is_array()) throw LoadError("arrows", "expected an array");

    ColoredQuiver q(m, n);
    std::set<std::tuple<int, int, int>> records;
    std::set<std::pair<int, int>> pairs;
    for (std::size_t r = 0; r < ait->size(); ++r) {
        const std::string where = fmt::format("arrows[{}]", r);
        const auto& rec = (*ait)[r];
        if (!rec.is_object()) throw LoadError(where, "expected an object");
        int from = integer_field(rec, "from", where);
        int to = integer_field(rec, "to", where);
        int color = integer_field(rec, "color", where);
        int count = integer_field(rec, "count", where);
        if (from < 0 || from >= n) throw LoadError(where + ".from", fmt::format("vertex {} out of range", from));
        if (to < 0 || to >= n) throw LoadError(where + ".to", fmt::format("vertex {} out of range", to));
        if (color < 0 || color > m) throw LoadError(where + ".color", fmt::format("color {} out of range", color));
        if (count < 1 || count > 255) throw LoadError(where + ".count", fmt::format("count {} out of range", count));
        if (from == to) throw LoadError(where, fmt::format("loop at vertex {}", from));
        if (!records.emplace(from, to, color).second)
            throw LoadError(where, fmt::format("duplicate record ({}, {}, {})", from, to, color));
        if (mode == DocumentMode::Half) {
            if (!pairs.emplace(std::min(from, to), std::max(from, to)).second)
                throw LoadError(where, fmt::format("pair {{{}, {}}} listed twice in half mode", from, to));
            q.add_multiplicity(from, to, color, count);
            q.add_multiplicity(to, from, m - color, count);
        } else {
            q.add_multiplicity(from, to, color, count);
        }
    }
    q.set_names(std::move(names));
    return q;
}

ColoredQuiver load_quiver(std::string_view bytes) {
    ColoredQuiver q = load_quiver_unchecked(bytes);
    require_valid(q);
    return q;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(fmt::format("cannot open {}", path));
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", path));
    out << contents;
}

std::string export_dot(const ColoredQuiver& q, const ClassCertificate* cert) {
    auto quoted = [](const std::string& s) { return nlohmann::json(s).dump(); };
    std::string out = "digraph quiver {\n";
    out += fmt::format("  graph [label={}];\n", quoted(fmt::format("m = {}", q.m())));
    out += "  node [shape=circle];\n";
    for (Vertex v = 0; v < q.n(); ++v) {
        bool central = cert && cert->is_central(v);
        bool peripheral = cert && cert->peripheral(v);
        std::string style;
        if (central) style = ", color=red, fontcolor=red, penwidth=2";
        else if (peripheral) style = ", color=blue, fontcolor=blue";
        out += fmt::format("  {} [label={}{}];\n", v, quoted(q.name(v)), style);
    }
    auto central_pair = [&](Vertex a, Vertex b) {
        if (!cert) return false;
        const CentralCycle& c = cert->cycle;
        for (int i = 0; i < c.l; ++i) {
            Vertex x = c.vertices[i], y = c.vertices[(i + 1) % c.l];
            if ((x == a && y == b) || (x == b && y == a)) return true;
        }
        return false;
    };
    for (const Arrow& a : q.half_arrows()) {
        const bool emphasis = central_pair(a.from, a.to);
        const std::string style = emphasis ? ", color=red, penwidth=2" : "";
        if (a.count == 1) {
            out += fmt::format("  {} -> {} [label=\"{}\"{}];\n", a.from, a.to, a.color, style);
        } else {
            for (int t = 0; t < a.count; ++t)
                out += fmt::format("  {} -> {} [label=\"{}\"{}];\n", a.from, a.to, a.color, style);
            // Skew partners of a double pair.
            for (int t = 0; t < a.count; ++t)
                out += fmt::format("  {} -> {} [label=\"{}\"{}];\n", a.to, a.from, q.m() - a.color, style);
        }
    }
    out += "}\n";
    return out;
}

json to_json(const std::vector<Arrow>& arrows) {
    json out = json::array();
    for (const Arrow& a : arrows) out.push_back({{"from", a.from}, {"to", a.to}, {"color", a.color}, {"count", a.count}});
    return out;
}

void write_class_archive(std::ostream& out, const MutationClass& cls) {
    for (const auto& [digest, member] : cls.members) {
        json line;
        line["digest"] = digest;
        line["arrows"] = to_json(member.form.arrows);
        out << line.dump() << '\n';
    }
    json summary;
    summary["summary"] = {{"m", cls.m},
                          {"n", cls.n},
                          {"seed", cls.seed_digest},
                          {"members", cls.size()},
                          {"edges", cls.edges.size()},
                          {"exhausted", cls.exhausted}};
    out << summary.dump() << '\n';
}

ClassArchive read_class_archive(std::istream& in) {
    ClassArchive archive;
    std::string text;
    int line_no = 0;
    bool summary_seen = false;
    std::size_t declared = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (text.empty()) continue;
        const std::string where = fmt::format("line {}", line_no);
        if (summary_seen) throw LoadError(where, "record after the summary");
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error&) {
            throw LoadError(where, "malformed JSON");
        }
        if (auto s = rec.find("summary"); s != rec.end()) {
            archive.m = integer_field(*s, "m", where);
            archive.n = integer_field(*s, "n", where);
            archive.seed_digest = s->value("seed", "");
            declared = s->value("members", std::size_t{0});
            archive.exhausted = s->value("exhausted", false);
            summary_seen = true;
            continue;
        }
        if (!rec.contains("digest") || !rec["digest"].is_string() || !rec.contains("arrows"))
            throw LoadError(where, "expected {\"digest\", \"arrows\"}");
        std::vector<Arrow> arrows;
        for (const auto& a : rec["arrows"])
            arrows.push_back({integer_field(a, "from", where), integer_field(a, "to", where),
                              integer_field(a, "color", where), integer_field(a, "count", where)});
        archive.members.emplace(rec["digest"].get<std::string>(), std::move(arrows));
    }
    if (!summary_seen) throw LoadError("end of archive", "missing summary record");
    if (declared != archive.members.size())
        throw LoadError("summary", fmt::format("declares {} members, found {}", declared, archive.members.size()));
    for (const auto& [digest, arrows] : archive.members)
        if (encode_digest(archive.m, archive.n, arrows) != digest)
            throw LoadError("member " + digest, "digest does not match arrows");
    return archive;
}

json to_json(const std::vector<Violation>& violations) {
    json out = json::array();
    for (const Violation& v : violations)
        out.push_back({{"kind", to_string(v.kind)}, {"i", v.i}, {"j", v.j}, {"c", v.c}, {"message", v.message}});
    return out;
}

json to_json(const CentralCycle& cycle) {
    return {{"vertices", cycle.vertices}, {"colors", cycle.colors}, {"l", cycle.l}, {"h", cycle.h}};
}

json to_json(const ClassCertificate& cert) {
    json peripherals = json::array();
    for (const Peripheral& p : cert.peripherals)
        peripherals.push_back({{"w", p.w},
                               {"boundary_index", p.boundary_index},
                               {"triangle", p.triangle},
                               {"triangle_color", p.triangle_color},
                               {"tag", to_string(p.tag)},
                               {"component", p.component},
                               {"n_w", p.n_w}});
    return {{"m", cert.m},
            {"cycle", to_json(cert.cycle)},
            {"boundary_cliques", cert.boundary_cliques},
            {"peripherals", peripherals},
            {"x_p", cert.x_p},
            {"x_q", cert.x_q},
            {"p", cert.p},
            {"q", cert.q}};
}

json to_json(const ClassVerdict& verdict) {
    json out = {{"member", verdict.member}, {"failed", verdict.failed}, {"detail", verdict.detail}};
    out["certificate"] = verdict.certificate ? to_json(*verdict.certificate) : json(nullptr);
    return out;
}

json to_json(const Verdict& verdict) {
    return {{"member", verdict.member}, {"failed", verdict.failed}, {"detail", verdict.detail}};
}

json to_json(const NormalizationTrace& trace) {
    json stages = json::array();
    for (const Stage& s : trace.stages)
        stages.push_back({{"tag", to_string(s.tag)},
                          {"focus", s.focus},
                          {"mutations", s.mutations},
                          {"relabeling", s.relabeling},
                          {"fixed", s.fixed},
                          {"before", s.before},
                          {"after", s.after}});
    return {{"m", trace.m}, {"p", trace.p}, {"q", trace.q}, {"stages", stages}};
}

NormalizationTrace trace_from_json(std::string_view bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError(line_column(bytes, e.byte > 0 ? e.byte - 1 : 0), "malformed JSON");
    }
    NormalizationTrace trace;
    trace.m = integer_field(doc, "m", "trace");
    trace.p = integer_field(doc, "p", "trace");
    trace.q = integer_field(doc, "q", "trace");
    if (!doc.contains("stages") || !doc["stages"].is_array()) throw LoadError("trace", "missing stage list");
    for (std::size_t i = 0; i < doc["stages"].size(); ++i) {
        const std::string where = fmt::format("stages[{}]", i);
        const auto& s = doc["stages"][i];
        auto tag = stage_tag_from_string(s.value("tag", ""));
        if (!tag) throw LoadError(where + ".tag", "unknown stage tag");
        try {
            trace.stages.push_back({*tag, integer_field(s, "focus", where),
                                    s.at("mutations").get<std::vector<Vertex>>(),
                                    s.at("relabeling").get<std::vector<Vertex>>(),
                                    s.value("fixed", std::vector<Vertex>{}), s.at("before").get<std::string>(),
                                    s.at("after").get<std::string>()});
        } catch (const nlohmann::json::exception& e) {
            throw LoadError(where, e.what());
        }
    }
    return trace;
}

json to_json(const TheoremReport& report) {
    return {{"p", report.p},
            {"q", report.q},
            {"m", report.m},
            {"bfs_count", report.bfs_size},
            {"generated_count", report.structural_size},
            {"bfs_exhausted", report.bfs_exhausted},
            {"only_in_bfs", report.only_in_bfs},
            {"only_in_generated", report.only_in_structural},
            {"symmetric_difference", report.only_in_bfs.size() + report.only_in_structural.size()},
            {"agrees", report.agrees()}};
}

json to_json(const ClassStatistics& stats) {
    json cycles = json::array(), peripherals = json::array(), arrows = json::array();
    for (const auto& [lh, count] : stats.central_cycles)
        cycles.push_back({{"l", lh.first}, {"h", lh.second}, {"members", count}});
    for (const auto& [pq, count] : stats.peripheral_counts)
        peripherals.push_back({{"W_p", pq.first}, {"W_q", pq.second}, {"members", count}});
    for (const auto& [k, count] : stats.arrow_counts) arrows.push_back({{"arrows", k}, {"members", count}});
    return {{"members", stats.members},
            {"edges", stats.edges},
            {"max_depth", stats.max_depth},
            {"central_cycles", cycles},
            {"peripherals", peripherals},
            {"arrow_counts", arrows},
            {"certificate_failures", stats.certificate_failures}};
}

json to_json(const BastianParameters& params) {
    json comps = json::array();
    for (const PeripheralCount& c : params.components)
        comps.push_back({{"w", c.w},
                         {"tag", to_string(c.tag)},
                         {"n_w", c.n_w},
                         {"outside", c.outside},
                         {"triangles", c.triangles},
                         {"consistent", c.consistent()}});
    return {{"r1p", params.r1p},   {"r2p", params.r2p},   {"r1pp", params.r1pp},
            {"r2pp", params.r2pp}, {"s1p", params.s1p},   {"s2p", params.s2p},
            {"s1pp", params.s1pp}, {"s2pp", params.s2pp}, {"reflected", params.reflected},
            {"p", params.p},       {"q", params.q},       {"recovered_p", params.recovered_p()},
            {"recovered_q", params.recovered_q()},        {"components", comps},
            {"holds", params.holds()}};
}

json to_json(const ZeroPartReport& report) {
    json comps = json::array();
    for (const ZeroPartComponent& c : report.components)
        comps.push_back({{"vertices", c.vertices},
                         {"arrows", c.arrows},
                         {"chi", c.chi},
                         {"oriented_cycles", c.oriented_cycles},
                         {"cycles", c.cycles},
                         {"has_delta", c.has_delta},
                         {"central_survives", c.central_survives},
                         {"a", c.a},
                         {"b", c.b},
                         {"c", c.c},
                         {"d", c.d},
                         {"e", c.e}});
    return {{"m", report.m}, {"member", report.member}, {"components", comps}, {"passes", report.passes()}};
}

}  // namespace qmut
