#include "ofd/serialize.hpp"

#include <algorithm>
#include <sstream>

#include "ofd/error.hpp"

namespace ofd {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

ojson ofd_to_json(const std::vector<std::string>& schema, const Ofd& d) {
    ojson lhs = ojson::array();
    for (AttrIndex a : d.lhs) lhs.push_back(schema.at(a));
    ojson o;
    o["lhs"] = std::move(lhs);
    o["rhs"] = schema.at(d.rhs);
    o["kind"] = d.kind.name();
    if (d.kind.is_inheritance()) o["theta"] = d.kind.theta;
    o["support"] = d.support.value_or(1.0);
    return o;
}

ojson ofds_to_json(const std::vector<std::string>& schema, const std::vector<Ofd>& ofds) {
    ojson out = ojson::array();
    for (const auto& d : ofds) out.push_back(ofd_to_json(schema, d));
    return out;
}

std::string ofds_to_text(const std::vector<std::string>& schema, const std::vector<Ofd>& ofds) {
    std::ostringstream out;
    for (const auto& d : ofds) {
        out << '[';
        bool first = true;
        for (AttrIndex a : d.lhs) {
            out << (first ? "" : ", ") << schema.at(a);
            first = false;
        }
        out << "] -> " << schema.at(d.rhs) << ' ' << d.kind.name();
        if (d.kind.is_inheritance()) out << " theta=" << d.kind.theta;
        out << " support=" << json(d.support.value_or(1.0)).dump() << '\n';
    }
    return out.str();
}

ojson stats_to_json(const DiscoveryResult& result, OfdKind kind) {
    ojson levels = ojson::array();
    for (const auto& s : result.per_level)
        levels.push_back({{"level", s.level},
                          {"candidates", s.candidates},
                          {"ofds", s.ofds},
                          {"elapsed_seconds", s.elapsed_seconds}});
    ojson o{{"kind", kind.name()}};
    if (kind.is_inheritance()) o["theta"] = kind.theta;
    o["levels"] = std::move(levels);
    o["total_ofds"] = result.ofds.size();
    return o;
}

namespace {

AttrIndex index_of(const std::vector<std::string>& schema, const json& name) {
    if (!name.is_string()) throw InferenceError("attribute names must be strings");
    const auto& s = name.get_ref<const std::string&>();
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (schema[i] == s) return static_cast<AttrIndex>(i);
    throw InferenceError("unknown attribute '" + s + "'");
}

OfdKind kind_of(const json& o) {
    const auto kind = o.at("kind").get<std::string>();
    if (kind == "synonym") return OfdKind::synonym();
    if (kind == "inheritance") {
        const auto theta = o.at("theta").get<long long>();
        if (theta < 0) throw InferenceError("theta must be non-negative");
        return OfdKind::inheritance(static_cast<std::uint32_t>(theta));
    }
    throw InferenceError("unknown dependency kind '" + kind + "'");
}

}  // namespace

std::vector<OfdSet> parse_ofd_sets(std::string_view text, const std::vector<std::string>& schema) {
    std::vector<OfdSet> sets;
    try {
        const json doc = json::parse(text);
        if (!doc.is_array()) throw InferenceError("OFD document must be an array");
        for (const auto& o : doc) {
            if (!o.is_object()) throw InferenceError("each dependency must be an object");
            const OfdKind kind = kind_of(o);
            Dependency d;
            for (const auto& name : o.at("lhs")) d.lhs = d.lhs.with(index_of(schema, name));
            const auto& rhs = o.at("rhs");
            if (rhs.is_array()) {
                for (const auto& name : rhs) d.rhs = d.rhs.with(index_of(schema, name));
            } else {
                d.rhs = AttrSet::single(index_of(schema, rhs));
            }
            if (o.contains("support")) d.support = o.at("support").get<double>();

            auto it = std::find_if(sets.begin(), sets.end(), [&](const OfdSet& m) { return m.kind == kind; });
            if (it == sets.end()) {
                sets.push_back({schema, kind, {}});
                it = std::prev(sets.end());
            }
            it->deps.push_back(d);
        }
    } catch (const json::exception& e) {
        throw InferenceError(std::string("malformed OFD document: ") + e.what());
    }
    for (const auto& m : sets) m.validate();
    return sets;
}

OfdSet parse_ofd_set(std::string_view text, const std::vector<std::string>& schema, OfdKind fallback) {
    auto sets = parse_ofd_sets(text, schema);
    if (sets.empty()) return {schema, fallback, {}};
    if (sets.size() > 1) throw InferenceError("OFD document mixes dependency kinds");
    return std::move(sets.front());
}

}  // namespace ofd
