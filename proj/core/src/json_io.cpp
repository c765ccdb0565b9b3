#include "soficlab/json_io.hpp"

#include <algorithm>

namespace soficlab {

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string base64_encode(const std::string& bytes) {
    static const char* alphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 3 <= bytes.size()) {
        std::uint32_t v = ((std::uint32_t)(unsigned char)bytes[i] << 16) |
                          ((std::uint32_t)(unsigned char)bytes[i + 1] << 8) |
                          (std::uint32_t)(unsigned char)bytes[i + 2];
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back(alphabet[v & 63]);
        i += 3;
    }
    std::size_t rest = bytes.size() - i;
    if (rest == 1) {
        std::uint32_t v = (std::uint32_t)(unsigned char)bytes[i] << 16;
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out += "==";
    } else if (rest == 2) {
        std::uint32_t v = ((std::uint32_t)(unsigned char)bytes[i] << 16) |
                          ((std::uint32_t)(unsigned char)bytes[i + 1] << 8);
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out += "=";
    }
    return out;
}

Json monoid_to_json(const MonoidSpec& m) {
    Json rules = Json::array();
    for (const auto& rule : m.rules()) {
        rules.push_back(Json::array(
            {m.word_to_string(rule.lhs),
             rule.rhs.empty() ? std::string("") : m.word_to_string(rule.rhs)}));
    }
    return Json{{"name", m.name()},
                {"generators", m.generators()},
                {"rules", rules},
                {"has_identity", m.has_identity()}};
}

MonoidSpec monoid_from_json(const Json& j) {
    if (!j.is_object()) throw DomainError("monoid JSON must be an object");
    std::string name = j.at("name").get<std::string>();
    std::vector<std::string> generators = j.at("generators").get<std::vector<std::string>>();
    bool has_identity = j.at("has_identity").get<bool>();
    std::uint64_t budget = j.value("normalization_budget", MonoidSpec::kDefaultBudget);

    // Words in rules are parsed against a rule-free spec with the same
    // generators.
    MonoidSpec alphabet(name, generators, {}, has_identity, budget);
    std::vector<RewriteRule> rules;
    for (const auto& rule : j.at("rules")) {
        if (!rule.is_array() || rule.size() != 2) {
            throw DomainError("each rule must be a [lhs, rhs] pair");
        }
        rules.push_back({alphabet.parse_word(rule[0].get<std::string>()),
                         alphabet.parse_word(rule[1].get<std::string>())});
    }
    return MonoidSpec(name, generators, rules, has_identity, budget);
}

Json graph_to_json(const LabeledDigraph& g) {
    Json j;
    j["n"] = g.n();
    j["root"] = nullptr;
    j["metric_mode"] = nullptr;
    j["radius"] = nullptr;
    if (g.has_vertex_labels()) {
        Json labels = Json::object();
        for (std::uint32_t v = 0; v < g.n(); ++v) {
            labels[std::to_string(v)] = (*g.vertex_labels())[v];
        }
        j["vertex_labels"] = labels;
    } else {
        j["vertex_labels"] = nullptr;
    }
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        edges.push_back(Json::array({e.src, g.label(e.label), e.dst}));
    }
    j["edges"] = edges;
    return j;
}

Json ball_to_json(const RootedBall& b) {
    Json j = graph_to_json(b.graph);
    j["root"] = b.root;
    j["metric_mode"] = to_string(b.metric_mode);
    j["radius"] = b.radius;
    return j;
}

LabeledDigraph graph_from_json(const Json& j) {
    std::uint32_t n = j.at("n").get<std::uint32_t>();
    std::vector<LabeledDigraph::EdgeTriple> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) throw DomainError("edge must be [src, label, dst]");
        edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::string>(),
                           e[2].get<std::uint32_t>());
    }
    std::optional<std::vector<std::string>> vlabels;
    if (j.contains("vertex_labels") && !j.at("vertex_labels").is_null()) {
        std::vector<std::string> labels(n);
        for (const auto& [key, value] : j.at("vertex_labels").items()) {
            std::size_t v = std::stoul(key);
            if (v >= n) throw DomainError("vertex label index out of range");
            labels[v] = value.get<std::string>();
        }
        vlabels = std::move(labels);
    }
    return LabeledDigraph(n, edges, std::move(vlabels));
}

RootedBall ball_from_json(const Json& j) {
    LabeledDigraph g = graph_from_json(j);
    if (j.at("root").is_null() || j.at("metric_mode").is_null()) {
        throw DomainError("ball JSON requires root and metric_mode");
    }
    std::uint32_t root = j.at("root").get<std::uint32_t>();
    if (root >= g.n()) throw DomainError("ball root out of range");
    MetricMode mode = metric_mode_from_string(j.at("metric_mode").get<std::string>());
    std::uint32_t radius = 0;
    if (j.contains("radius") && !j.at("radius").is_null()) {
        radius = j.at("radius").get<std::uint32_t>();
    }
    return RootedBall{std::move(g), root, radius, mode};
}

Json action_to_json(const FiniteAction& a) {
    Json j;
    j["n"] = a.n();
    if (a.monoid().builtin() != MonoidSpec::Builtin::none) {
        j["monoid"] = a.monoid().name();
    } else {
        j["monoid"] = monoid_to_json(a.monoid());
    }
    Json k_list = Json::array();
    Json tables = Json::object();
    for (std::size_t i = 0; i < a.K().size(); ++i) {
        std::string name = a.monoid().word_to_string(a.K()[i]);
        k_list.push_back(name);
        tables[name] = a.table(i);
    }
    j["K"] = k_list;
    j["tables"] = tables;
    return j;
}

FiniteAction action_from_json(const Json& j) {
    if (!j.is_object()) throw DomainError("action JSON must be an object");
    std::uint32_t n = j.at("n").get<std::uint32_t>();
    MonoidSpec m = j.at("monoid").is_string()
                       ? MonoidSpec::from_name(j.at("monoid").get<std::string>())
                       : monoid_from_json(j.at("monoid"));
    std::vector<Word> K;
    std::vector<Table> tables;
    for (const auto& name : j.at("K")) {
        std::string text = name.get<std::string>();
        Word w = m.parse_word(text);
        K.push_back(w);
        const Json& table = j.at("tables").at(text);
        if (!table.is_array()) throw DomainError("table for " + text + " must be an array");
        Table t;
        for (const auto& entry : table) {
            if (!entry.is_number_unsigned() || entry.get<std::uint64_t>() >= n) {
                throw DomainError("table entry out of range for " + text);
            }
            t.push_back(entry.get<std::uint32_t>());
        }
        tables.push_back(std::move(t));
    }
    return FiniteAction(std::move(m), n, std::move(K), std::move(tables));
}

Json defect_report_to_json(const DefectReport& r) {
    return Json{{"eps_mult", r.eps_mult.to_string()},
                {"eps_identity", r.eps_identity.to_string()},
                {"eps_separation", r.eps_separation.to_string()},
                {"eps_overall", r.eps_overall.to_string()}};
}

Json pattern_measure_to_json(const PatternMeasure& pm) {
    Json arr = Json::array();
    for (const auto& [canon, entry] : pm.entries) {
        arr.push_back(Json{{"pattern_canon", base64_encode(canon)},
                           {"pattern_pretty", ball_to_json(entry.pretty)},
                           {"mass", entry.mass.to_string()}});
    }
    return arr;
}

}  // namespace soficlab
